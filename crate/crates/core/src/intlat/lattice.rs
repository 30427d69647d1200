use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// The lattice spanned by the rows of `scale * gen`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gen: IntMatrix,
    scale: BigRational,
}

/// Per-coordinate periods `m_i` (smallest positive `m_i` with `m_i e_i` in the lattice)
/// and their least common multiple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Period {
    pub per_axis: Vec<BigInt>,
    pub lcm: BigInt,
}

/// The `(n, d, v, q)` parameters of a lattice code together with its nominal
/// packing density `d^n / (n! v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub d: u64,
    pub volume: BigInt,
    pub q: BigInt,
    pub density: BigRational,
}

impl CodeParams {
    pub fn new(n: usize, d: u64, volume: BigInt, q: BigInt) -> Result<Self> {
        if d == 0 || !volume.is_positive() || !q.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "code parameters must be positive (d={}, v={}, q={})",
                d, volume, q
            )));
        }
        let density = nominal_density(n, d, &volume);
        Ok(CodeParams { n, d, volume, q, density })
    }
}

/// `d^n / (n! v)` as an exact rational.
pub fn nominal_density(n: usize, d: u64, volume: &BigInt) -> BigRational {
    let num = num_traits::pow(BigInt::from(d), n);
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    BigRational::new(num, fact * volume)
}

/// Renders a rational with a fixed number of decimal places, rounding half away from zero.
pub fn decimal(r: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = r.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{}{}", sign, int)
    } else {
        format!("{}{}.{:0>width$}", sign, int, frac, width = places)
    }
}

/// `p/q`, always with an explicit denominator.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Lattice {
    /// Lattice generated by the rows of `gen`; rows must be linearly independent.
    pub fn new(gen: IntMatrix) -> Result<Self> {
        Lattice::with_scale(gen, BigRational::one())
    }

    pub fn with_scale(gen: IntMatrix, scale: BigRational) -> Result<Self> {
        if !gen.is_square() {
            return Err(Error::Dimension(format!("generator must be square, got {}x{}", gen.rows(), gen.cols())));
        }
        if !scale.is_positive() {
            return Err(Error::InvalidParameter(format!("scale must be positive, got {}", scale)));
        }
        if gen.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Lattice { gen, scale })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Lattice::new(IntMatrix::from_rows(rows)?)
    }

    /// `Z^n` itself.
    pub fn integer(n: usize) -> Self {
        Lattice { gen: IntMatrix::identity(n), scale: BigRational::one() }
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &IntMatrix {
        &self.gen
    }

    pub fn scale(&self) -> &BigRational {
        &self.scale
    }

    /// The scaled generator as an integer matrix; fails unless the lattice lies in `Z^n`.
    pub fn basis(&self) -> Result<IntMatrix> {
        if self.scale.is_one() {
            return Ok(self.gen.clone());
        }
        let numer = self.scale.numer();
        let denom = self.scale.denom();
        let mut data = Vec::with_capacity(self.gen.entries().len());
        for v in self.gen.entries() {
            let p = v * numer;
            if !p.is_multiple_of(denom) {
                return Err(Error::Integrality(format!("{} * {} is not an integer", self.scale, v)));
            }
            data.push(p / denom);
        }
        IntMatrix::new(self.gen.rows(), self.gen.cols(), data)
    }

    pub fn is_integral(&self) -> bool {
        self.basis().is_ok()
    }

    /// `|det(gen)| * scale^n`.
    pub fn volume(&self) -> BigRational {
        let det = self.gen.det().expect("generator is square").abs();
        BigRational::from_integer(det) * num_traits::pow(self.scale.clone(), self.dim())
    }

    /// Volume of an integral lattice, i.e. its index in `Z^n`.
    pub fn index(&self) -> Result<BigInt> {
        Ok(self.basis()?.det()?.abs())
    }

    pub fn hnf(&self) -> Result<IntMatrix> {
        self.basis()?.hnf()
    }

    /// Same lattice, with its Hermite normal form as generator and unit scale.
    pub fn canonical(&self) -> Result<Lattice> {
        Ok(Lattice { gen: self.hnf()?, scale: BigRational::one() })
    }

    /// Multiplies every lattice vector by `f`.
    pub fn scaled(&self, f: &BigRational) -> Result<Lattice> {
        if !f.is_positive() {
            return Err(Error::InvalidParameter(format!("scale factor must be positive, got {}", f)));
        }
        Ok(Lattice { gen: self.gen.clone(), scale: &self.scale * f })
    }

    /// Like [`Lattice::scaled`] but insists the result is a sublattice of `Z^n`.
    pub fn scaled_integral(&self, f: &BigRational) -> Result<Lattice> {
        let out = self.scaled(f)?;
        out.basis()?;
        Ok(out)
    }

    pub fn contains(&self, x: &[BigInt]) -> Result<bool> {
        let h = self.hnf()?;
        if x.len() != h.rows() {
            return Err(Error::Dimension(format!(
                "point of length {} in a lattice of dimension {}",
                x.len(),
                h.rows()
            )));
        }
        Ok(hnf_solve(&h, x).is_some())
    }

    pub fn contains_i64(&self, x: &[i64]) -> Result<bool> {
        let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.contains(&x)
    }

    /// Periods read off the rational inverse of the HNF: `m_i e_i` is in the lattice
    /// exactly when `m_i` clears the denominators of row `i` of `H^-1`.
    pub fn period(&self) -> Result<Period> {
        let h = self.hnf()?;
        let inv = upper_triangular_inverse(&h);
        let per_axis: Vec<BigInt> =
            inv.iter().map(|row| row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))).collect();
        let lcm = per_axis.iter().fold(BigInt::one(), |acc, m| acc.lcm(m));
        Ok(Period { per_axis, lcm })
    }

    /// The `(n, d, v, q)` parameters of the Lee code over `Z_q` obtained by reducing
    /// modulo the period; `d` must be supplied (see the analyzer for computing it).
    #[doc(alias = "reduce_mod_period")]
    pub fn params(&self, d: u64) -> Result<CodeParams> {
        let v = self.index()?;
        let q = self.period()?.lcm;
        CodeParams::new(self.dim(), d, v, q)
    }

    /// Lattice generated by the Kronecker product of the two generators.
    pub fn kronecker(&self, other: &Lattice) -> Lattice {
        Lattice { gen: self.gen.kronecker(&other.gen), scale: &self.scale * &other.scale }
    }

    /// Shortens the code on its first coordinate by deleting the first row and column
    /// of the generator. The integer basis must have a 1 in position (1,1) and zeros
    /// below it, which the Hermite normal form provides whenever possible.
    pub fn puncture(&self) -> Result<Lattice> {
        let b = self.basis()?;
        if b.rows() < 2 {
            return Err(Error::Structure("cannot puncture a one-dimensional lattice".into()));
        }
        if !b[(0, 0)].is_one() {
            return Err(Error::Structure(format!("entry (1,1) is {}, expected 1", b[(0, 0)])));
        }
        if let Some(r) = (1..b.rows()).find(|&r| !b[(r, 0)].is_zero()) {
            return Err(Error::Structure(format!("row {} has a nonzero first entry", r + 1)));
        }
        Lattice::new(b.drop_first_row_col()?)
    }
}

/// Coefficients `a` with `a H = x` for an upper-triangular `H`, if they are integral.
pub(crate) fn hnf_solve(h: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.rows();
    let mut residual: Vec<BigInt> = x.to_vec();
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        let (a, rem) = residual[k].div_rem(&h[(k, k)]);
        if !rem.is_zero() {
            return None;
        }
        if !a.is_zero() {
            for c in k..n {
                residual[c] -= &a * &h[(k, c)];
            }
        }
        coeffs.push(a);
    }
    Some(coeffs)
}

fn upper_triangular_inverse(h: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = h.rows();
    let mut inv = vec![vec![BigRational::zero(); n]; n];
    // solve H X = I column by column with back substitution
    #[allow(clippy::needless_range_loop)]
    for col in 0..n {
        for i in (0..n).rev() {
            let mut acc = if i == col { BigRational::one() } else { BigRational::zero() };
            for k in i + 1..n {
                if !h[(i, k)].is_zero() {
                    acc -= BigRational::from_integer(h[(i, k)].clone()) * &inv[k][col];
                }
            }
            inv[i][col] = acc / BigRational::from_integer(h[(i, i)].clone());
        }
    }
    inv
}

/// Upper-triangular HNF basis held in machine words, for hot membership and
/// coset-reduction loops over short integer vectors.
#[derive(Clone, Debug)]
pub struct HnfReducer {
    n: usize,
    h: Vec<Vec<i64>>,
    index: u64,
}

impl HnfReducer {
    pub fn new(lat: &Lattice) -> Result<Self> {
        let h = lat.hnf()?;
        let index = h.det()?;
        let index = index.to_u64().filter(|&v| v < (1u64 << 62)).ok_or_else(|| Error::CapExceeded {
            what: "lattice volume",
            size: index.to_string(),
            cap: 1u64 << 62,
        })?;
        // every HNF entry lies in [0, pivot) and pivots divide the index
        let h = h.to_i64_rows().expect("entries bounded by the index");
        Ok(HnfReducer { n: h.len(), h, index })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of cosets of the lattice in `Z^n`.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn pivot(&self, k: usize) -> i64 {
        self.h[k][k]
    }

    pub(crate) fn row(&self, k: usize) -> &[i64] {
        &self.h[k]
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        debug_assert_eq!(x.len(), self.n);
        let mut residual: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        for k in 0..self.n {
            let p = self.h[k][k] as i128;
            if residual[k] % p != 0 {
                return false;
            }
            let a = residual[k] / p;
            if a != 0 {
                for (r, &hc) in residual[k..].iter_mut().zip(&self.h[k][k..]) {
                    *r -= a * hc as i128;
                }
            }
        }
        true
    }

    /// Canonical representative of the coset `x + L`, with `0 <= r_k < pivot_k`.
    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        debug_assert_eq!(x.len(), self.n);
        let mut residual: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        for k in 0..self.n {
            let p = self.h[k][k] as i128;
            let a = residual[k].div_euclid(p);
            if a != 0 {
                for (r, &hc) in residual[k..].iter_mut().zip(&self.h[k][k..]) {
                    *r -= a * hc as i128;
                }
            }
        }
        residual.into_iter().map(|v| v as i64).collect()
    }

    /// Mixed-radix index in `0..index()` of the coset containing `x`.
    pub fn coset_index(&self, x: &[i64]) -> u64 {
        let r = self.reduce(x);
        r.iter().enumerate().fold(0u64, |acc, (k, &v)| acc * self.h[k][k] as u64 + v as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bigv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn minkowski() -> Lattice {
        Lattice::from_rows(&[[1, -2, 3], [-2, 3, 1], [3, 1, -2]]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_generators() {
        assert_eq!(Lattice::from_rows(&[[1, 2], [2, 4]]), Err(Error::Singular));
        assert!(matches!(Lattice::new(IntMatrix::from_rows(&[[1, 2, 3]]).unwrap()), Err(Error::Dimension(_))));
    }

    #[test]
    fn contains_examples() {
        assert!(minkowski().contains(&bigv(&[0, 0, 0])).unwrap());
        assert!(minkowski().contains(&bigv(&[1, -2, 3])).unwrap());
        let even = Lattice::from_rows(&[[1, 1, 0, 0], [1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]]).unwrap();
        assert!(!even.contains(&bigv(&[1, 0, 0, 0])).unwrap());
        assert!(even.contains(&bigv(&[1, 1, 1, 1])).unwrap());
        assert!(matches!(even.contains(&bigv(&[1, 1])), Err(Error::Dimension(_))));
    }

    #[test]
    fn period_examples() {
        let z = Lattice::integer(3).period().unwrap();
        assert_eq!(z.per_axis, bigv(&[1, 1, 1]));
        assert_eq!(z.lcm, BigInt::from(1));

        let g3 = Lattice::from_rows(&[[1, 0, 3], [0, 1, 5], [0, 0, 12]]).unwrap();
        let p = g3.period().unwrap();
        assert_eq!(p.per_axis, bigv(&[4, 12, 12]));
        assert_eq!(p.lcm, BigInt::from(12));

        assert_eq!(minkowski().period().unwrap().lcm, BigInt::from(38));
    }

    #[test]
    fn period_matches_brute_force_multiples() {
        for lat in [
            minkowski(),
            Lattice::from_rows(&[[1, 0, 1, 4], [0, 1, 0, 7], [0, 0, 1, 23], [0, 0, 0, 74]]).unwrap(),
            Lattice::from_rows(&[[2, 1], [1, 3]]).unwrap(),
        ] {
            let p = lat.period().unwrap();
            let n = lat.dim();
            for i in 0..n {
                let first = (1i64..)
                    .find(|&m| {
                        let mut e = vec![0i64; n];
                        e[i] = m;
                        lat.contains_i64(&e).unwrap()
                    })
                    .unwrap();
                assert_eq!(BigInt::from(first), p.per_axis[i]);
            }
        }
    }

    #[test]
    fn params_examples() {
        let g6 = Lattice::from_rows(&[
            [1, 0, 0, 0, 0, 3],
            [0, 1, 0, 0, 0, 5],
            [0, 0, 1, 0, 0, 7],
            [0, 0, 0, 1, 0, 9],
            [0, 0, 0, 0, 1, 11],
            [0, 0, 0, 0, 0, 24],
        ])
        .unwrap();
        let p = g6.params(4).unwrap();
        assert_eq!((p.n, p.d, p.volume.clone(), p.q.clone()), (6, 4, BigInt::from(24), BigInt::from(24)));
        let z2 = Lattice::integer(2).params(1).unwrap();
        assert_eq!((z2.n, z2.d, z2.volume, z2.q), (2, 1, BigInt::from(1), BigInt::from(1)));
    }

    #[test]
    fn kronecker_volume() {
        let n2 = Lattice::from_rows(&[[1, 1], [1, -1]]).unwrap();
        let k = n2.kronecker(&minkowski());
        assert_eq!(k.dim(), 6);
        assert_eq!(k.index().unwrap(), BigInt::from(11552));
        let one = Lattice::integer(1);
        assert_eq!(one.kronecker(&minkowski()).canonical(), minkowski().canonical());
    }

    #[test]
    fn puncture_examples() {
        let g3 = Lattice::from_rows(&[[1, 0, 3], [0, 1, 5], [0, 0, 12]]).unwrap();
        let p = g3.puncture().unwrap();
        assert_eq!(p.generator(), &IntMatrix::from_rows(&[[1, 5], [0, 12]]).unwrap());
        assert_eq!(p.index().unwrap(), BigInt::from(12));
        assert_eq!(Lattice::integer(4).puncture().unwrap().generator(), &IntMatrix::identity(3));
        assert!(matches!(minkowski().puncture(), Err(Error::Structure(_))));
        assert!(minkowski().canonical().unwrap().puncture().is_ok());
    }

    #[test]
    fn scale_examples() {
        let mk = minkowski();
        assert_eq!(mk.scaled(&BigRational::one()).unwrap(), mk);
        let twice = mk.scaled_integral(&BigRational::from_integer(BigInt::from(2))).unwrap();
        assert_eq!(twice.index().unwrap(), BigInt::from(304));
        assert_eq!(twice.volume(), BigRational::from_integer(BigInt::from(304)));
        let half = mk.scaled(&BigRational::new(BigInt::from(1), BigInt::from(2))).unwrap();
        assert!(matches!(half.basis(), Err(Error::Integrality(_))));
        assert!(matches!(
            mk.scaled_integral(&BigRational::new(BigInt::from(1), BigInt::from(2))),
            Err(Error::Integrality(_))
        ));
        assert!(mk.scaled(&BigRational::zero()).is_err());
    }

    #[test]
    fn reducer_agrees_with_exact_membership() {
        let lat = minkowski();
        let r = HnfReducer::new(&lat).unwrap();
        assert_eq!(r.index(), 38);
        for x in -3..=3 {
            for y in -3..=3 {
                for z in -3..=3 {
                    let v = [x, y, z];
                    assert_eq!(r.contains(&v), lat.contains_i64(&v).unwrap());
                    let red = r.reduce(&v);
                    let diff: Vec<i64> = v.iter().zip(&red).map(|(a, b)| a - b).collect();
                    assert!(r.contains(&diff));
                    assert!(r.coset_index(&v) < 38);
                }
            }
        }
    }

    #[test]
    fn decimal_rendering() {
        let r = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        assert_eq!(decimal(&r(648, 1805), 6), "0.359003");
        assert_eq!(decimal(&r(18, 19), 6), "0.947368");
        assert_eq!(decimal(&r(1, 1), 6), "1.000000");
        assert_eq!(decimal(&r(-1, 3), 3), "-0.333");
        assert_eq!(rational_string(&r(4096, 35280)), "256/2205");
    }
}
