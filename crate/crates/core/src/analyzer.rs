//! Minimum distance, coset leaders, covering radius, packing density and
//! bound certification for lattice codes.
//!
//! All searches walk `Z^n` in weight shells of increasing Manhattan weight and,
//! within a shell, in lexicographic order. That order makes every result
//! deterministic: the reported witness of the minimum distance and every coset
//! leader is the lexicographically smallest vector among those of least weight.

use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlat::{decimal, rational_string, CodeParams, HnfReducer, Lattice};
use crate::metric::{self, Shape};

/// Default bound on the number of cosets a table may hold.
pub const DEFAULT_COSET_CAP: u64 = 1_000_000;

/// Upper limit for the automatic cap doubling of [`min_distance_auto`].
pub const HARD_DISTANCE_CAP: u64 = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDistance {
    pub d: u64,
    /// Lexicographically smallest nonzero lattice vector of weight `d`.
    pub witness: Vec<i64>,
}

/// Minimum Manhattan weight of a nonzero lattice vector, searching weights up to `cap`.
pub fn min_distance(lat: &Lattice, cap: u64) -> Result<MinDistance> {
    let reducer = HnfReducer::new(lat)?;
    min_distance_with(&reducer, cap)
}

pub(crate) fn min_distance_with(reducer: &HnfReducer, cap: u64) -> Result<MinDistance> {
    for w in 1..=cap {
        if let ControlFlow::Break(witness) = visit_lattice_shell(reducer, w, |p| ControlFlow::Break(p.to_vec())) {
            return Ok(MinDistance { d: w, witness });
        }
    }
    Err(Error::Inconclusive { cap })
}

/// Starts from `2 * expected + 1` and doubles the cap on inconclusive searches,
/// up to [`HARD_DISTANCE_CAP`].
pub fn min_distance_auto(lat: &Lattice, expected: u64) -> Result<MinDistance> {
    let reducer = HnfReducer::new(lat)?;
    let mut cap = (2 * expected + 1).min(HARD_DISTANCE_CAP);
    let mut searched = 0;
    loop {
        // shells below `searched` are already known to be empty
        for w in searched + 1..=cap {
            if let ControlFlow::Break(witness) = visit_lattice_shell(&reducer, w, |p| ControlFlow::Break(p.to_vec())) {
                return Ok(MinDistance { d: w, witness });
            }
        }
        searched = cap;
        if cap >= HARD_DISTANCE_CAP {
            return Err(Error::Inconclusive { cap });
        }
        cap = (cap * 2).min(HARD_DISTANCE_CAP);
    }
}

/// Visits the lattice vectors of weight exactly `w` in lexicographic order.
///
/// Coordinates are fixed left to right; with an upper-triangular basis the
/// k-th coordinate of a lattice vector is determined modulo the k-th pivot by
/// the earlier ones, so only that residue class is tried.
pub fn visit_lattice_shell<B>(
    reducer: &HnfReducer,
    w: u64,
    mut f: impl FnMut(&[i64]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let n = reducer.dim();
    let mut x = vec![0i64; n];
    let mut offs = vec![0i128; (n + 1) * n];
    lattice_shell_rec(reducer, 0, w as i64, &mut x, &mut offs, &mut f)
}

fn lattice_shell_rec<B>(
    reducer: &HnfReducer,
    k: usize,
    rem: i64,
    x: &mut [i64],
    offs: &mut [i128],
    f: &mut impl FnMut(&[i64]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let n = x.len();
    let p = reducer.pivot(k) as i128;
    let target = (-offs[k * n + k]).rem_euclid(p);
    let last = k == n - 1;
    let candidates: Box<dyn Iterator<Item = i64>> = if last {
        if rem == 0 {
            Box::new(std::iter::once(0))
        } else {
            Box::new([-rem, rem].into_iter())
        }
    } else {
        let lo = -(rem as i128);
        let start = lo + (target - lo).rem_euclid(p);
        Box::new((start..=rem as i128).step_by(p as usize).map(|v| v as i64))
    };
    for v in candidates {
        if (v as i128 - target).rem_euclid(p) != 0 {
            continue;
        }
        x[k] = v;
        if last {
            f(x)?;
            continue;
        }
        let a = (v as i128 + offs[k * n + k]) / p;
        let row = reducer.row(k);
        let (cur, next) = offs.split_at_mut((k + 1) * n);
        let cur = &cur[k * n..];
        for c in k + 1..n {
            next[c] = cur[c] - a * row[c] as i128;
        }
        lattice_shell_rec(reducer, k + 1, rem - v.abs(), x, offs, f)?;
    }
    ControlFlow::Continue(())
}

/// The quotient `Z^n / L` with one minimum-weight leader per coset.
#[derive(Clone, Debug)]
pub struct CosetTable {
    reducer: HnfReducer,
    divisors: Vec<BigInt>,
    leaders: Vec<i64>,
    weights: Vec<u64>,
    rho: u64,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.reducer.dim()
    }

    /// Elementary divisors of the lattice basis; the quotient is `⊕ Z_{s_i}`.
    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Covering radius, the largest leader weight.
    pub fn rho(&self) -> u64 {
        self.rho
    }

    pub fn leader(&self, coset: usize) -> &[i64] {
        let n = self.dim();
        &self.leaders[coset * n..(coset + 1) * n]
    }

    pub fn leader_weight(&self, coset: usize) -> u64 {
        self.weights[coset]
    }

    pub fn leaders(&self) -> impl Iterator<Item = &[i64]> {
        self.leaders.chunks(self.dim())
    }

    pub fn coset_of(&self, x: &[i64]) -> usize {
        self.reducer.coset_index(x) as usize
    }

    pub fn leader_of(&self, x: &[i64]) -> &[i64] {
        self.leader(self.coset_of(x))
    }

    /// Splits `x = c + s` with `c` in the lattice and `s` the leader of `x`'s coset.
    pub fn decompose(&self, x: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let s = self.leader_of(x).to_vec();
        let c = x.iter().zip(&s).map(|(a, b)| a - b).collect();
        (c, s)
    }

    pub fn reducer(&self) -> &HnfReducer {
        &self.reducer
    }
}

pub fn coset_table(lat: &Lattice, cap: u64) -> Result<CosetTable> {
    let reducer = HnfReducer::new(lat)?;
    let volume = reducer.index();
    if volume > cap {
        return Err(Error::CapExceeded { what: "lattice volume", size: volume.to_string(), cap });
    }
    let n = reducer.dim();
    let cosets = volume as usize;
    let mut leaders = vec![0i64; cosets * n];
    let mut weights = vec![u64::MAX; cosets];
    let origin = reducer.coset_index(&vec![0; n]) as usize;
    weights[origin] = 0;
    let mut filled = 1usize;
    let mut rho = 0;
    let mut w = 0;
    while filled < cosets {
        w += 1;
        let _ = metric::visit_shell::<()>(n, w, |p| {
            let idx = reducer.coset_index(p) as usize;
            if weights[idx] == u64::MAX {
                weights[idx] = w;
                leaders[idx * n..(idx + 1) * n].copy_from_slice(p);
                filled += 1;
                if filled == cosets {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        rho = w;
    }
    let divisors = lat.basis()?.snf()?;
    Ok(CosetTable { reducer, divisors, leaders, weights, rho })
}

pub fn covering_radius(lat: &Lattice, cap: u64) -> Result<u64> {
    Ok(coset_table(lat, cap)?.rho())
}

/// `d^n / (n! v)`.
pub fn packing_density(p: &CodeParams) -> BigRational {
    crate::intlat::nominal_density(p.n, p.d, &p.volume)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    Perfect,
    DiameterPerfect,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// The shape whose size bounds the volume from below.
    pub reference: Shape,
    pub reference_size: BigUint,
    /// Volume minus the reference size.
    pub slack: BigInt,
}

/// Compares the volume with the sphere-packing bound (odd `d`) or the
/// code-anticode bound against `S'_{n,R}` (even `d`).
pub fn certify(lat: &Lattice, d: u64) -> Result<Certificate> {
    if d == 0 {
        return Err(Error::InvalidParameter("minimum distance must be positive".into()));
    }
    let n = lat.dim() as u32;
    let volume = lat.index()?;
    let reference = if d % 2 == 1 {
        Shape::LeeSphere { n, r: ((d - 1) / 2) as u32 }
    } else {
        Shape::OddAnticode { n, r: ((d - 2) / 2) as u32 }
    };
    let reference_size = reference.size();
    let slack = &volume - BigInt::from(reference_size.clone());
    if slack < BigInt::from(0) {
        return Err(Error::Inconsistency(format!(
            "volume {} is below the bound {} for d = {}",
            volume, reference_size, d
        )));
    }
    let kind = match (slack == BigInt::from(0), reference) {
        // radius-0 balls are single points; only Z^n attains that bound and it corrects nothing
        _ if d == 1 => CertificateKind::None,
        (false, _) => CertificateKind::None,
        (true, Shape::LeeSphere { .. }) => CertificateKind::Perfect,
        (true, Shape::OddAnticode { .. }) => CertificateKind::DiameterPerfect,
    };
    Ok(Certificate { kind, reference, reference_size, slack })
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityDoc {
    pub rational: String,
    pub decimal: String,
}

impl DensityDoc {
    pub fn new(r: &BigRational) -> Self {
        DensityDoc { rational: rational_string(r), decimal: decimal(r, 6) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundDoc {
    pub shape: &'static str,
    pub radius: u32,
    pub size: String,
    pub note: &'static str,
}

/// Machine-readable analysis of a lattice code. Field order is the output key order.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub d: u64,
    pub witness: Vec<i64>,
    pub volume: String,
    pub period: Vec<String>,
    pub q: String,
    pub density: DensityDoc,
    pub covering_radius: Option<u64>,
    pub bound: BoundDoc,
    pub certificate: CertificateKind,
    pub slack: String,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub min_dist_cap: u64,
    pub coset_cap: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { min_dist_cap: 64, coset_cap: DEFAULT_COSET_CAP }
    }
}

pub fn analyze(lat: &Lattice, opts: AnalyzeOptions) -> Result<AnalysisReport> {
    let md = min_distance(lat, opts.min_dist_cap)?;
    let params = lat.params(md.d)?;
    let period = lat.period()?;
    let covering_radius = match coset_table(lat, opts.coset_cap) {
        Ok(t) => Some(t.rho()),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let cert = certify(lat, md.d)?;
    let bound = match cert.reference {
        Shape::LeeSphere { r, .. } => BoundDoc {
            shape: "lee_sphere",
            radius: r,
            size: cert.reference_size.to_string(),
            note: "sphere-packing bound",
        },
        Shape::OddAnticode { r, .. } => BoundDoc {
            shape: "odd_anticode",
            radius: r,
            size: cert.reference_size.to_string(),
            note: "code-anticode bound relative to the conjectured maximum anticode",
        },
    };
    Ok(AnalysisReport {
        n: params.n,
        d: md.d,
        witness: md.witness,
        volume: params.volume.to_string(),
        period: period.per_axis.iter().map(|m| m.to_string()).collect(),
        q: params.q.to_string(),
        density: DensityDoc::new(&params.density),
        covering_radius,
        bound,
        certificate: cert.kind,
        slack: cert.slack.to_string(),
    })
}
