//! Named families of dense Lee-metric lattice codes, the doubling construction
//! for distance-4 codes, and the packing-density table.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::analyzer::{self, DensityDoc};
use crate::error::{Error, Result};
use crate::intlat::{decimal, nominal_density, rational_string, IntMatrix, Lattice};

fn ratio(p: u64, q: u64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn require_multiple(d: u64, k: u64, family: &str) -> Result<()> {
    if d == 0 || !d.is_multiple_of(k) {
        return Err(Error::InvalidParameter(format!(
            "{} needs a positive distance divisible by {}, got {}",
            family, k, d
        )));
    }
    Ok(())
}

/// Minkowski's densest octahedron packing, scaled by `d/6`:
/// a `(3, d, 19d^3/108, 19d/3)` code of density 18/19.
pub fn minkowski3(d: u64) -> Result<Lattice> {
    require_multiple(d, 6, "minkowski3")?;
    Lattice::from_rows(&[[1, -2, 3], [-2, 3, 1], [3, 1, -2]])?.scaled(&ratio(d, 6))
}

/// The displayed four-dimensional generator `[1 0 1 4; 0 1 0 7; 0 0 1 23; 0 0 0 74]`
/// scaled by `d/6`. Its true parameters are reported by [`dim4_reconciliation`].
pub fn dim4(d: u64) -> Result<Lattice> {
    require_multiple(d, 6, "dim4")?;
    Lattice::from_rows(&[[1, 0, 1, 4], [0, 1, 0, 7], [0, 0, 1, 23], [0, 0, 0, 74]])?.scaled(&ratio(d, 6))
}

/// The diameter perfect `(2, d, d^2/2, d)` code spanned by `(d/2, d/2)` and `(d/2, -d/2)`.
pub fn n2_perfect(d: u64) -> Result<Lattice> {
    require_multiple(d, 2, "n2_perfect")?;
    Lattice::from_rows(&[[1, 1], [1, -1]])?.scaled(&ratio(d, 2))
}

/// `G_n = [[I_{n-1}, B], [0, 4n]]` with `B^T = [3 5 ... 2n-1]`, a diameter perfect
/// `(n, 4, 4n, 4n)` code.
pub fn gn(n: usize) -> Result<Lattice> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("G_n needs n >= 2, got {}", n)));
    }
    let mut m = IntMatrix::identity(n);
    for i in 0..n - 1 {
        m[(i, n - 1)] = BigInt::from(2 * i + 3);
    }
    m[(n - 1, n - 1)] = BigInt::from(4 * n);
    Lattice::new(m)
}

/// `{(x, y) : x + y in L, sum(x) even}` for a distance-4 lattice `L`: twice the length,
/// twice the volume, distance still 4.
pub fn double(lat: &Lattice) -> Result<Lattice> {
    match analyzer::min_distance(lat, 4) {
        Ok(md) if md.d == 4 => {}
        Ok(md) => return Err(Error::InvalidParameter(format!("doubling needs minimum distance 4, got {}", md.d))),
        Err(Error::Inconclusive { .. }) => {
            return Err(Error::InvalidParameter("doubling needs minimum distance 4, got more".into()))
        }
        Err(e) => return Err(e),
    }
    let b = lat.basis()?;
    let n = b.rows();
    let mut g = IntMatrix::zeros(2 * n, 2 * n);
    // rows (u, -u) for u running over a basis of the even-sum lattice D_n
    for k in 0..n {
        let mut u = vec![0i64; n];
        if k == 0 {
            u[0] = 2;
        } else {
            u[k] = 1;
            u[k - 1] = -1;
        }
        for c in 0..n {
            g[(k, c)] = BigInt::from(u[c]);
            g[(k, n + c)] = BigInt::from(-u[c]);
        }
    }
    for r in 0..n {
        for c in 0..n {
            g[(n + r, n + c)] = b[(r, c)].clone();
        }
    }
    Lattice::new(g)
}

/// `G_n` scaled by `d/4`: an `(n, d, 4n (d/4)^n, nd)` code.
pub fn scaled_diameter_code(n: usize, d: u64) -> Result<Lattice> {
    require_multiple(d, 4, "scaled_diameter_code")?;
    gn(n)?.scaled(&ratio(d, 4))
}

/// The Golomb-Welch perfect single-error-correcting code
/// `{x : sum_i i x_i = 0 (mod 2n+1)}`.
pub fn gw_perfect(n: usize) -> Result<Lattice> {
    if n < 1 {
        return Err(Error::InvalidParameter("gw_perfect needs n >= 1".into()));
    }
    let p = 2 * n as i64 + 1;
    let mut m = IntMatrix::identity(n);
    m[(0, 0)] = BigInt::from(p);
    for i in 1..n {
        // e_{i+1} - (i+1) e_1
        m[(i, 0)] = BigInt::from(-(i as i64 + 1));
    }
    Lattice::new(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimedParams {
    pub volume_expr: &'static str,
    pub volume: String,
    pub q_expr: &'static str,
    pub q: String,
    pub density: &'static str,
}

/// Oracle-derived parameters of [`dim4`] next to the parameters claimed for it.
#[derive(Clone, Debug, Serialize)]
pub struct Dim4Report {
    pub n: usize,
    pub scale_d: u64,
    pub d: u64,
    pub witness: Vec<i64>,
    pub volume: String,
    pub volume_expr: String,
    pub period: Vec<String>,
    pub q: String,
    pub density: DensityDoc,
    pub density_identity_holds: bool,
    pub claimed: ClaimedParams,
    pub note: String,
}

pub fn dim4_reconciliation(d: u64) -> Result<Dim4Report> {
    let lat = dim4(d)?;
    let md = analyzer::min_distance_auto(&lat, d)?;
    let params = lat.params(md.d)?;
    let period = lat.period()?;
    let d4 = num_traits::pow(BigRational::from_integer(BigInt::from(d)), 4);
    let claimed_volume = ratio(13, 216) * &d4;
    let claimed_q = ratio(37 * d, 3);
    let claimed_density = ratio(9, 13);
    let coeff = BigRational::from_integer(params.volume.clone()) / &d4;
    let fact4 = BigInt::from(24);
    let identity = &params.density * BigRational::from_integer(fact4 * &params.volume)
        == BigRational::from_integer(num_traits::pow(BigInt::from(md.d), 4));

    let mut diffs = Vec::new();
    if BigRational::from_integer(params.volume.clone()) != claimed_volume {
        diffs.push(format!(
            "volume is {} = {}*d^4 by determinant, claimed 13/216*d^4 = {}",
            params.volume,
            rational_string(&coeff),
            claimed_volume
        ));
    }
    if params.density != claimed_density {
        diffs.push(format!(
            "density is {} = {}, claimed 9/13 = {}; 9/13 would need volume 78*(d/6)^4",
            rational_string(&params.density),
            decimal(&params.density, 6),
            decimal(&claimed_density, 6)
        ));
    }
    if BigRational::from_integer(params.q.clone()) != claimed_q {
        diffs.push(format!("alphabet is {}, claimed 37d/3 = {}", params.q, claimed_q));
    } else {
        diffs.push(format!("alphabet {} agrees with 37d/3", params.q));
    }
    if md.d != d {
        diffs.push(format!("minimum distance is {}, not the nominal {}", md.d, d));
    }

    Ok(Dim4Report {
        n: 4,
        scale_d: d,
        d: md.d,
        witness: md.witness,
        volume: params.volume.to_string(),
        volume_expr: format!("{}*d^4", rational_string(&coeff)),
        period: period.per_axis.iter().map(|m| m.to_string()).collect(),
        q: params.q.to_string(),
        density: DensityDoc::new(&params.density),
        density_identity_holds: identity,
        claimed: ClaimedParams {
            volume_expr: "13/216*d^4",
            volume: claimed_volume.to_string(),
            q_expr: "37d/3",
            q: claimed_q.to_string(),
            density: "9/13",
        },
        note: diffs.join("; "),
    })
}

/// Published lower bounds on the densest lattice packing of the cross-polytope.
/// These come from lattices that are not practical codes and are never computed here.
pub fn survey_lower_bound(n: usize) -> Option<BigRational> {
    match n {
        2 => Some(BigRational::one()),
        3 => Some(ratio(18, 19)),
        4 => Some(ratio(512, 621)),
        5 => Some(ratio(1600, 2343)),
        6 => Some(ratio(38416, 71595)),
        _ => None,
    }
}

pub const MAX_TABLE_N: usize = 12;

#[derive(Clone, Debug)]
struct Candidate {
    name: String,
    lattice: Lattice,
    d: u64,
    /// Power of `d` the volume scales with; one more than `n` after puncturing.
    degree: usize,
}

impl Candidate {
    fn new(name: impl Into<String>, lattice: Lattice, d: u64) -> Self {
        let degree = lattice.dim();
        Candidate { name: name.into(), lattice, d, degree }
    }

    fn density(&self) -> Result<BigRational> {
        Ok(nominal_density(self.lattice.dim(), self.d, &self.lattice.index()?))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityRow {
    pub n: usize,
    pub construction: String,
    pub d: u64,
    pub volume_expr: String,
    pub q: String,
    pub density_rational: String,
    pub density_decimal: String,
    #[serde(skip)]
    pub density: BigRational,
    #[serde(skip)]
    pub lattice: Lattice,
}

fn direct_candidates(n: usize) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    match n {
        2 => out.push(Candidate::new("n2_perfect(2)", n2_perfect(2)?, 2)),
        3 => out.push(Candidate::new("minkowski3(6)", minkowski3(6)?, 6)),
        4 => {
            let lat = dim4(6)?;
            let d = analyzer::min_distance_auto(&lat, 6)?.d;
            out.push(Candidate::new("dim4(6)", lat, d));
        }
        _ => {}
    }
    out.push(Candidate::new(format!("scaled_diameter_code({},4)", n), scaled_diameter_code(n, 4)?, 4));
    Ok(out)
}

fn pick_best(cands: Vec<Candidate>) -> Result<Candidate> {
    let mut best: Option<(BigRational, Candidate)> = None;
    for c in cands {
        let dens = c.density()?;
        if best.as_ref().is_none_or(|(b, _)| dens > *b) {
            best = Some((dens, c));
        }
    }
    Ok(best.expect("at least one candidate").1)
}

/// Densest code of each length `2..=n_max` among the direct constructions,
/// Kronecker products of shorter table entries, and puncturing of the next length.
pub fn density_table(n_max: usize) -> Result<Vec<DensityRow>> {
    if !(2..=MAX_TABLE_N).contains(&n_max) {
        return Err(Error::InvalidParameter(format!("density table covers 2 <= n <= {}, got {}", MAX_TABLE_N, n_max)));
    }
    let top = (n_max + 1).min(MAX_TABLE_N);
    let mut best: Vec<Option<Candidate>> = vec![None; top + 1];
    for n in 2..=top {
        let mut cands = direct_candidates(n)?;
        for a in (2..n).take_while(|a| a * a <= n).filter(|a| n % a == 0) {
            let (x, y) = (best[a].as_ref().unwrap(), best[n / a].as_ref().unwrap());
            cands.push(Candidate::new(
                format!("kronecker({},{})", x.name, y.name),
                x.lattice.kronecker(&y.lattice),
                x.d * y.d,
            ));
        }
        best[n] = Some(pick_best(cands)?);
    }

    let mut rows = Vec::new();
    for n in 2..=n_max {
        let mut chosen = best[n].clone().unwrap();
        if n < top {
            let parent = best[n + 1].as_ref().unwrap();
            if let Ok(p) = parent.lattice.canonical().and_then(|c| c.puncture()) {
                let punctured = Candidate {
                    name: format!("puncture({})", parent.name),
                    lattice: p,
                    d: parent.d,
                    degree: parent.degree,
                };
                if punctured.density()? > chosen.density()? {
                    chosen = punctured;
                }
            }
        }
        let volume = chosen.lattice.index()?;
        let coeff = BigRational::new(volume, num_traits::pow(BigInt::from(chosen.d), chosen.degree));
        let density = chosen.density()?;
        rows.push(DensityRow {
            n,
            construction: chosen.name.clone(),
            d: chosen.d,
            volume_expr: format!("{}*d^{}", rational_string(&coeff), chosen.degree),
            q: chosen.lattice.period()?.lcm.to_string(),
            density_rational: rational_string(&density),
            density_decimal: decimal(&density, 6),
            density,
            lattice: chosen.lattice,
        });
    }
    Ok(rows)
}

pub fn density_csv(rows: &[DensityRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "construction", "d", "volume_expr", "q", "density_rational", "density_decimal"])
        .map_err(|e| Error::Inconsistency(e.to_string()))?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.construction.clone(),
            r.d.to_string(),
            r.volume_expr.clone(),
            r.q.clone(),
            r.density_rational.clone(),
            r.density_decimal.clone(),
        ])
        .map_err(|e| Error::Inconsistency(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Inconsistency(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// True when `density * n! * v == d^n`.
pub fn density_identity(row: &DensityRow) -> Result<bool> {
    let fact: BigInt = (1..=row.n as u64).map(BigInt::from).product();
    let v = row.lattice.index()?;
    let lhs = &row.density * BigRational::from_integer(fact * v);
    Ok(!lhs.is_zero() && lhs == BigRational::from_integer(num_traits::pow(BigInt::from(row.d), row.n)))
}
