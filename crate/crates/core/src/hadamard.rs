//! Hadamard matrices and the lattice codes built from them.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::intlat::{IntMatrix, Lattice};

/// A ±1 matrix with `H H^T = n I`, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardMatrix {
    matrix: IntMatrix,
}

impl HadamardMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension("a Hadamard matrix is square".into()));
        }
        if let Some(v) = matrix.entries().iter().find(|v| v.abs() != BigInt::one()) {
            return Err(Error::InvalidParameter(format!("entry {} is not ±1", v)));
        }
        let n = matrix.rows();
        let gram = matrix.mul(&matrix.transpose())?;
        if gram != IntMatrix::identity(n).scaled(&BigInt::from(n)) {
            return Err(Error::InvalidParameter(format!("H H^T != {} I", n)));
        }
        Ok(HadamardMatrix { matrix })
    }

    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.is_symmetric()
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| self.matrix[(0, i)].is_one() && self.matrix[(i, 0)].is_one())
    }

    /// Entries as `i64` rows.
    pub fn sign_rows(&self) -> Vec<Vec<i64>> {
        self.matrix.to_i64_rows().expect("±1 entries")
    }

    /// Negates columns to make the first row +1, then rows to make the first column +1.
    pub fn normalize(&self) -> HadamardMatrix {
        let n = self.order();
        let mut m = self.matrix.clone();
        for c in 0..n {
            if m[(0, c)].is_negative() {
                for r in 0..n {
                    let v = -&m[(r, c)];
                    m[(r, c)] = v;
                }
            }
        }
        for r in 0..n {
            if m[(r, 0)].is_negative() {
                for c in 0..n {
                    let v = -&m[(r, c)];
                    m[(r, c)] = v;
                }
            }
        }
        HadamardMatrix { matrix: m }
    }
}

/// Sylvester's doubling construction, order `2^k`; symmetric and normalized.
pub fn sylvester(k: u32) -> HadamardMatrix {
    let mut m = IntMatrix::identity(1);
    for _ in 0..k {
        let h = m.rows();
        let mut next = IntMatrix::zeros(2 * h, 2 * h);
        for r in 0..h {
            for c in 0..h {
                let v = &m[(r, c)];
                next[(r, c)] = v.clone();
                next[(r, c + h)] = v.clone();
                next[(r + h, c)] = v.clone();
                next[(r + h, c + h)] = -v;
            }
        }
        m = next;
    }
    HadamardMatrix { matrix: m }
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Paley's quadratic-residue construction of order `q + 1`, normalized.
pub fn paley(q: u64) -> Result<HadamardMatrix> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(Error::InvalidParameter(format!("Paley order needs a prime q = 3 (mod 4), got {}", q)));
    }
    let qn = q as usize;
    let mut residue = vec![false; qn];
    for x in 1..q {
        residue[((x * x) % q) as usize] = true;
    }
    let chi = |a: i64| -> i64 {
        let a = a.rem_euclid(q as i64) as usize;
        match a {
            0 => 0,
            _ if residue[a] => 1,
            _ => -1,
        }
    };
    let n = qn + 1;
    let mut rows = vec![vec![0i64; n]; n];
    rows[0][1..].fill(1);
    for row in rows.iter_mut().skip(1) {
        row[0] = -1;
    }
    for i in 0..qn {
        for j in 0..qn {
            rows[i + 1][j + 1] = chi(j as i64 - i as i64);
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] += 1;
    }
    let h = HadamardMatrix::new(IntMatrix::from_rows(&rows)?)?;
    Ok(h.normalize())
}

/// The lattice generated by the rows of `h`: length `n`, distance `n`, volume `n^{n/2}`.
pub fn hadamard_code(h: &HadamardMatrix) -> Lattice {
    Lattice::new(h.matrix.clone()).expect("Hadamard matrices are nonsingular")
}

/// The 0/1 upper-triangular matrix `H_i` of order `2^i`, with
/// `H_{i+1} = [[H_i, H_i], [0, H_i]]`.
pub fn h_matrix(i: u32) -> Result<IntMatrix> {
    if i < 2 {
        return Err(Error::InvalidParameter(format!("H_i needs i >= 2, got {}", i)));
    }
    let mut m = IntMatrix::from_rows(&[[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]])?;
    for _ in 2..i {
        let h = m.rows();
        let mut next = IntMatrix::zeros(2 * h, 2 * h);
        for r in 0..h {
            for c in 0..h {
                next[(r, c)] = m[(r, c)].clone();
                next[(r, c + h)] = m[(r, c)].clone();
                next[(r + h, c + h)] = m[(r, c)].clone();
            }
        }
        m = next;
    }
    Ok(m)
}

/// `G(i, j)`: rows of `H_i` whose sum `2^l` is below `2^j` are multiplied by `2^{j-l}`.
pub fn g_matrix(i: u32, j: u32) -> Result<Lattice> {
    if j < 2 {
        return Err(Error::InvalidParameter(format!("G(i, j) needs j >= 2, got {}", j)));
    }
    let h = h_matrix(i)?;
    let target = BigInt::one() << j;
    let mut g = h.clone();
    for r in 0..h.rows() {
        let sum: BigInt = h.row(r).iter().sum();
        if sum < target {
            let factor = &target / &sum;
            for c in 0..h.cols() {
                g[(r, c)] = &h[(r, c)] * &factor;
            }
        }
    }
    Lattice::new(g)
}

/// `prod_{r=0}^{min(i,j)} 2^{(j-r) C(i,r)}`.
pub fn g_volume_formula(i: u32, j: u32) -> BigInt {
    let exp: u64 = (0..=i.min(j)).map(|r| (j - r) as u64 * binomial(i as u64, r as u64)).sum();
    BigInt::one() << exp
}
