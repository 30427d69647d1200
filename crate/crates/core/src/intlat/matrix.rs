use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix must have at least one row and column".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries do not fill a {}x{} matrix", data.len(), rows, cols)));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from machine-integer rows, which must all have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {} has {} entries, expected {}", i, r.len(), cols)));
            }
            data.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix::new(rows.len(), cols, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.cols)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * &other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.rows {
            return Err(Error::Dimension(format!("vector of length {} against {} rows", x.len(), self.rows)));
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(self.row(r)) {
                *o += xr * m;
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * k).collect() }
    }

    /// Kronecker product: block (i, j) of the result is `self[i][j] * other`.
    pub fn kronecker(&self, other: &IntMatrix) -> IntMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = IntMatrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Submatrix with the first row and first column removed.
    pub fn drop_first_row_col(&self) -> Result<IntMatrix> {
        if self.rows < 2 || self.cols < 2 {
            return Err(Error::Dimension("nothing left after removing first row and column".into()));
        }
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 1..self.rows {
            data.extend(self.row(r)[1..].iter().cloned());
        }
        IntMatrix::new(self.rows - 1, self.cols - 1, data)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self[(r, c)] == self[(c, r)]))
    }

    /// Entries as `i64` rows when every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.row_iter().map(|r| r.iter().map(|v| v.to_i64()).collect()).collect()
    }

    fn require_square(&self, op: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!("{} needs a square matrix, got {}x{}", op, self.rows, self.cols)))
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        self.require_square("det")?;
        let n = self.rows;
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if negate { -d } else { d })
    }

    /// Row-style Hermite normal form of a nonsingular square matrix.
    ///
    /// The result generates the same lattice and is upper triangular with a
    /// positive diagonal; every entry above a pivot lies in `[0, pivot)`.
    pub fn hnf(&self) -> Result<IntMatrix> {
        self.require_square("hnf")?;
        let n = self.rows;
        let mut a = self.clone();
        for k in 0..n {
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let p = a[(k, k)].clone();
                let b = a[(i, k)].clone();
                let eg = p.extended_gcd(&b);
                let (g, s, t) = (eg.gcd, eg.x, eg.y);
                let pg = &p / &g;
                let bg = &b / &g;
                for c in k..n {
                    let rk = a[(k, c)].clone();
                    let ri = a[(i, c)].clone();
                    a[(k, c)] = &s * &rk + &t * &ri;
                    a[(i, c)] = &pg * &ri - &bg * &rk;
                }
            }
            if a[(k, k)].is_zero() {
                return Err(Error::Singular);
            }
            if a[(k, k)].is_negative() {
                for c in k..n {
                    let v = -&a[(k, c)];
                    a[(k, c)] = v;
                }
            }
            let pivot = a[(k, k)].clone();
            for r in 0..k {
                let q = a[(r, k)].div_floor(&pivot);
                if q.is_zero() {
                    continue;
                }
                for c in k..n {
                    let v = &a[(r, c)] - &q * &a[(k, c)];
                    a[(r, c)] = v;
                }
            }
        }
        Ok(a)
    }

    /// Elementary divisors `s_1 | s_2 | ... | s_n` of a nonsingular square matrix.
    pub fn snf(&self) -> Result<Vec<BigInt>> {
        self.require_square("snf")?;
        let n = self.rows;
        let mut a = self.clone();
        for t in 0..n {
            loop {
                // smallest nonzero entry of the trailing block becomes the pivot
                let mut best: Option<(usize, usize)> = None;
                for r in t..n {
                    for c in t..n {
                        let v = &a[(r, c)];
                        if v.is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(br, bc)| v.abs() < a[(br, bc)].abs()) {
                            best = Some((r, c));
                        }
                    }
                }
                let (pr, pc) = best.ok_or(Error::Singular)?;
                a.swap_rows(t, pr);
                a.swap_cols(t, pc);
                let pivot = a[(t, t)].clone();
                let mut clean = true;
                for r in t + 1..n {
                    let q = a[(r, t)].div_floor(&pivot);
                    if !q.is_zero() {
                        for c in t..n {
                            let v = &a[(r, c)] - &q * &a[(t, c)];
                            a[(r, c)] = v;
                        }
                    }
                    clean &= a[(r, t)].is_zero();
                }
                for c in t + 1..n {
                    let q = a[(t, c)].div_floor(&pivot);
                    if !q.is_zero() {
                        for r in t..n {
                            let v = &a[(r, c)] - &q * &a[(r, t)];
                            a[(r, c)] = v;
                        }
                    }
                    clean &= a[(t, c)].is_zero();
                }
                if clean {
                    break;
                }
            }
        }
        let mut diag: Vec<BigInt> = (0..n).map(|i| a[(i, i)].abs()).collect();
        // diag(a, b) is equivalent to diag(gcd, lcm); repeat until the chain divides
        for i in 0..n {
            for j in i + 1..n {
                let g = diag[i].gcd(&diag[j]);
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
        Ok(diag)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>())).finish()
    }
}
