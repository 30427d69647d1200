//! The Hadamard transformation `T(x) = H x / sqrt(n)` of `R^n` and its discrete
//! counterpart `T_{d^2}` on `Z^{d^2}`, which moves Lee spheres into small boxes.
//!
//! `T` is an involution only when `H H = n I`, which for a Hadamard matrix means
//! `H` is symmetric. Everything here insists on that.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::analyzer::{self, CosetTable};
use crate::error::{Error, Result};
use crate::hadamard::HadamardMatrix;
use crate::intlat::{IntMatrix, Lattice};
use crate::metric;

/// An exact vector `numerators / sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalVector {
    numerators: Vec<BigInt>,
    radicand: u64,
}

impl RadicalVector {
    pub fn new(numerators: Vec<BigInt>, radicand: u64) -> Result<Self> {
        if radicand == 0 {
            return Err(Error::InvalidParameter("radicand must be positive".into()));
        }
        Ok(RadicalVector { numerators, radicand })
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    fn exact_root(&self) -> Option<u64> {
        let s = self.radicand.sqrt();
        (s * s == self.radicand).then_some(s)
    }

    /// Rational coordinates, when the radicand is a perfect square.
    pub fn to_rationals(&self) -> Option<Vec<BigRational>> {
        let s = BigInt::from(self.exact_root()?);
        Some(self.numerators.iter().map(|v| BigRational::new(v.clone(), s.clone())).collect())
    }

    /// Integer coordinates, when the radicand is a perfect square dividing every numerator.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        let s = BigInt::from(self.exact_root()?);
        self.numerators
            .iter()
            .map(|v| {
                let (q, r) = v.div_rem(&s);
                if r.is_zero() {
                    q.to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    /// `|x_j| <= bound`, decided as `num_j^2 <= bound^2 * radicand`.
    pub fn abs_le(&self, j: usize, bound: &BigRational) -> bool {
        if bound.is_negative() {
            return false;
        }
        let lhs = BigRational::from_integer(&self.numerators[j] * &self.numerators[j]);
        lhs <= bound * bound * BigRational::from_integer(BigInt::from(self.radicand))
    }
}

fn h_times(rows: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    rows.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn check_length(h: &HadamardMatrix, x: &[i64]) -> Result<()> {
    if x.len() != h.order() {
        return Err(Error::Dimension(format!(
            "point of length {} for a Hadamard matrix of order {}",
            x.len(),
            h.order()
        )));
    }
    Ok(())
}

fn require_symmetric(h: &HadamardMatrix) -> Result<()> {
    if h.is_symmetric() {
        Ok(())
    } else {
        Err(Error::Asymmetric(format!(
            "order {} matrix has H != H^T, so H H = {} I fails and T is not an involution",
            h.order(),
            h.order()
        )))
    }
}

/// `T(x) = H x / sqrt(n)`.
pub fn t_apply(h: &HadamardMatrix, x: &[i64]) -> Result<RadicalVector> {
    check_length(h, x)?;
    let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
    let hx = h.matrix().transpose().left_mul_vec(&x)?;
    RadicalVector::new(hx, h.order() as u64)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvolutionReport {
    pub samples: usize,
    pub failures: Vec<Vec<i64>>,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `H (H x) = n x` exactly, which is `T(T(x)) = x`.
pub fn check_involution_continuous(h: &HadamardMatrix, samples: &[Vec<i64>]) -> Result<InvolutionReport> {
    require_symmetric(h)?;
    let rows = h.sign_rows();
    let n = h.order() as i64;
    let mut report = InvolutionReport::default();
    for x in samples {
        check_length(h, x)?;
        report.samples += 1;
        let back = h_times(&rows, &h_times(&rows, x));
        if back.iter().zip(x).any(|(b, v)| *b != n * v) {
            report.failures.push(x.clone());
        }
    }
    Ok(report)
}

/// Image extent of the Lee sphere `S_{n,R}` under `x -> H x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousBox {
    pub radius: u32,
    pub points: usize,
    /// `max_x |(H x)_j|` for each axis `j`.
    pub per_axis: Vec<u64>,
    pub max_abs: u64,
    /// A sphere point attaining `max_abs`.
    pub witness: Vec<i64>,
}

impl ContinuousBox {
    /// `T` maps the sphere into the cube of half-width `R / sqrt(n)`.
    pub fn within_bound(&self) -> bool {
        self.max_abs <= self.radius as u64
    }
}

/// Enumerates the integer points of `S_{n,R}` and measures `|(H x)_j|`. Since every
/// entry of `H` is ±1, `|(H x)_j| <= |x|_1 <= R` always; the scan confirms it and
/// finds a point attaining the maximum.
pub fn continuous_box(h: &HadamardMatrix, radius: u32, cap: u64) -> Result<ContinuousBox> {
    let n = h.order();
    let rows = h.sign_rows();
    let sphere = metric::enumerate_sphere(n, radius, &vec![0; n], cap)?;
    let mut per_axis = vec![0u64; n];
    let mut max_abs = 0;
    let mut witness = vec![0; n];
    for x in &sphere {
        let hx = h_times(&rows, x);
        for (j, v) in hx.iter().enumerate() {
            let a = v.unsigned_abs();
            per_axis[j] = per_axis[j].max(a);
            if a > max_abs {
                max_abs = a;
                witness = x.clone();
            }
        }
    }
    let b = ContinuousBox { radius, points: sphere.len(), per_axis, max_abs, witness };
    if !b.within_bound() {
        return Err(Error::Inconsistency(format!("|(Hx)_j| reached {} on a sphere of radius {}", b.max_abs, radius)));
    }
    Ok(b)
}

fn square_root_order(h: &HadamardMatrix) -> Result<u64> {
    let n = h.order() as u64;
    let d = n.sqrt();
    if d * d != n || d < 2 {
        return Err(Error::InvalidParameter(format!("order {} is not the square of an integer d >= 2", n)));
    }
    Ok(d)
}

/// `{x in Z^{d^2} : H x = 0 (mod d)}`, the points `T` sends back into the integers.
pub fn invariant_code(h: &HadamardMatrix) -> Result<Lattice> {
    let d = square_root_order(h)?;
    let n = h.order();
    // rows of [[H^T, I], [d I, 0]] span {(x H^T + d y, x)}; the HNF rows whose first
    // block vanishes span the x with x H^T = 0 (mod d)
    let ht = h.matrix().transpose();
    let mut m = IntMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            m[(r, c)] = ht[(r, c)].clone();
        }
        m[(r, n + r)] = BigInt::from(1);
        m[(n + r, r)] = BigInt::from(d);
    }
    let hnf = m.hnf()?;
    let mut data = Vec::with_capacity(n * n);
    for r in n..2 * n {
        debug_assert!(hnf.row(r)[..n].iter().all(|v| v.is_zero()));
        data.extend(hnf.row(r)[n..].iter().cloned());
    }
    Lattice::new(IntMatrix::new(n, n, data)?)?.canonical()
}

/// A symmetric Hadamard matrix of order `d^2`, its code and coset leaders.
#[derive(Clone, Debug)]
pub struct TransformSpec {
    h: HadamardMatrix,
    rows: Vec<Vec<i64>>,
    d: u64,
    code: Lattice,
    table: CosetTable,
}

impl TransformSpec {
    pub fn new(h: HadamardMatrix) -> Result<Self> {
        Self::with_cap(h, analyzer::DEFAULT_COSET_CAP)
    }

    pub fn with_cap(h: HadamardMatrix, coset_cap: u64) -> Result<Self> {
        require_symmetric(&h)?;
        let d = square_root_order(&h)?;
        let code = invariant_code(&h)?;
        let table = analyzer::coset_table(&code, coset_cap)?;
        let rows = h.sign_rows();
        Ok(TransformSpec { h, rows, d, code, table })
    }

    pub fn hadamard(&self) -> &HadamardMatrix {
        &self.h
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn code(&self) -> &Lattice {
        &self.code
    }

    pub fn leaders(&self) -> &CosetTable {
        &self.table
    }

    pub fn rho(&self) -> u64 {
        self.table.rho()
    }

    /// `T(c) = H c / d` for a codeword `c`.
    pub fn t_code(&self, c: &[i64]) -> Result<Vec<i64>> {
        let d = self.d as i64;
        h_times(&self.rows, c)
            .into_iter()
            .map(|v| {
                if v % d == 0 {
                    Ok(v / d)
                } else {
                    Err(Error::Inconsistency(format!("H c is not divisible by {} for c = {:?}", d, c)))
                }
            })
            .collect()
    }

    /// Checks that `T` maps each generator of the code to a codeword.
    pub fn check_closure(&self) -> Result<()> {
        let basis = self.code.basis()?;
        for row in basis.to_i64_rows().expect("small entries") {
            let image = self.t_code(&row)?;
            if !self.table.reducer().contains(&image) {
                return Err(Error::Inconsistency(format!("T({:?}) = {:?} leaves the code", row, image)));
            }
        }
        Ok(())
    }
}

/// `T_{d^2}(p) = T(c) + s` where `p = c + s`, `c` a codeword and `s` a coset leader.
pub fn discrete_transform(spec: &TransformSpec, p: &[i64]) -> Result<Vec<i64>> {
    if p.len() != spec.len() {
        return Err(Error::Dimension(format!("point of length {} for a transform on Z^{}", p.len(), spec.len())));
    }
    let (c, s) = spec.table.decompose(p);
    let tc = spec.t_code(&c)?;
    Ok(tc.iter().zip(&s).map(|(a, b)| a + b).collect())
}

/// Round-trips every sample; any mismatch is an error.
pub fn check_involution_discrete(spec: &TransformSpec, samples: &[Vec<i64>]) -> Result<usize> {
    for p in samples {
        let once = discrete_transform(spec, p)?;
        let twice = discrete_transform(spec, &once)?;
        if &twice != p {
            return Err(Error::Inconsistency(format!("T(T({:?})) = {:?} via {:?}", p, twice, once)));
        }
    }
    Ok(samples.len())
}

/// Per-axis extent of the image of a Lee sphere under `T_{d^2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteBox {
    pub radius: u32,
    pub d: u64,
    pub rho: u64,
    pub points: usize,
    /// `max - min + 1` of each image coordinate.
    pub extents: Vec<u64>,
    /// `2 ceil((R + rho)/d) + 2 rho + 1`.
    pub bound: u64,
}

impl DiscreteBox {
    pub fn within_bound(&self) -> bool {
        self.extents.iter().all(|&e| e <= self.bound)
    }
}

pub fn sphere_box_bound(radius: u64, rho: u64, d: u64) -> u64 {
    2 * (radius + rho).div_ceil(d) + 2 * rho + 1
}

pub fn discrete_box(spec: &TransformSpec, radius: u32, center: &[i64], cap: u64) -> Result<DiscreteBox> {
    let n = spec.len();
    let sphere = metric::enumerate_sphere(n, radius, center, cap)?;
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for p in &sphere {
        let img = discrete_transform(spec, p)?;
        for (j, v) in img.into_iter().enumerate() {
            lo[j] = lo[j].min(v);
            hi[j] = hi[j].max(v);
        }
    }
    let extents = lo.iter().zip(&hi).map(|(a, b)| (b - a) as u64 + 1).collect();
    let b = DiscreteBox {
        radius,
        d: spec.d,
        rho: spec.rho(),
        points: sphere.len(),
        extents,
        bound: sphere_box_bound(radius as u64, spec.rho(), spec.d),
    };
    if !b.within_bound() {
        return Err(Error::Inconsistency(format!(
            "sphere of radius {} about {:?} maps to extents {:?}, bound {}",
            radius, center, b.extents, b.bound
        )));
    }
    Ok(b)
}
