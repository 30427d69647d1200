//! Manhattan and Lee distances, Lee spheres and the odd-diameter anticodes
//! `S'_{n,R}`, with closed-form sizes and enumerators that serve as oracles.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::One;

use crate::error::{Error, Result};

pub type Point = Vec<i64>;

/// Default cap on the number of points an enumerator will materialize.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// A shape family indexed by dimension and radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `S_{n,R}`, diameter `2R`.
    LeeSphere { n: u32, r: u32 },
    /// `S'_{n,R}`, diameter `2R + 1`.
    OddAnticode { n: u32, r: u32 },
}

impl Shape {
    pub fn size(&self) -> BigUint {
        match *self {
            Shape::LeeSphere { n, r } => lee_sphere_size(n, r),
            Shape::OddAnticode { n, r } => anticode_size_odd(n, r),
        }
    }

    pub fn diameter(&self) -> u64 {
        match *self {
            Shape::LeeSphere { r, .. } => 2 * r as u64,
            Shape::OddAnticode { r, .. } => 2 * r as u64 + 1,
        }
    }
}

fn check_len(x: &[i64], y: &[i64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!("points of length {} and {}", x.len(), y.len())));
    }
    Ok(())
}

pub fn manhattan_dist(x: &[i64], y: &[i64]) -> Result<u64> {
    check_len(x, y)?;
    Ok(x.iter().zip(y).map(|(a, b)| (a - b).unsigned_abs()).sum())
}

pub fn weight(x: &[i64]) -> u64 {
    x.iter().map(|v| v.unsigned_abs()).sum()
}

/// Lee distance over `Z_m`; coordinates are taken modulo `m`.
pub fn lee_dist(x: &[i64], y: &[i64], m: u64) -> Result<u64> {
    check_len(x, y)?;
    if m < 2 {
        return Err(Error::InvalidParameter(format!("Lee modulus must be at least 2, got {}", m)));
    }
    let m = m as i128;
    Ok(x.iter()
        .zip(y)
        .map(|(&a, &b)| {
            let diff = (a as i128 - b as i128).rem_euclid(m);
            diff.min(m - diff) as u64
        })
        .sum())
}

fn binom(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    binomial(BigUint::from(n), BigUint::from(k))
}

/// `|S_{n,R}| = sum_{i=0}^{min(n,R)} 2^i C(n,i) C(R,i)`.
pub fn lee_sphere_size(n: u32, r: u32) -> BigUint {
    (0..=n.min(r)).map(|i| (BigUint::one() << i) * binom(n, i) * binom(r, i)).sum()
}

/// `|S'_{n,R}| = sum_{i=0}^{min(n-1,R)} 2^{i+1} C(n-1,i) C(R+1,i+1)`.
pub fn anticode_size_odd(n: u32, r: u32) -> BigUint {
    assert!(n >= 1, "dimension must be positive");
    (0..=(n - 1).min(r)).map(|i| (BigUint::one() << (i + 1)) * binom(n - 1, i) * binom(r + 1, i + 1)).sum()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl RecurrenceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `|S_{n,R}| = |S_{n-1,R}| + |S'_{n,R-1}|` and
/// `|S'_{n,R}| = |S_{n-1,R}| + |S_{n,R}|` over `2 <= n <= n_max`, `1 <= R <= r_max`,
/// plus the one-dimensional base cases.
pub fn check_anticode_recurrences(n_max: u32, r_max: u32) -> RecurrenceReport {
    let mut report = RecurrenceReport::default();
    for r in 0..=r_max {
        report.checked += 1;
        if lee_sphere_size(1, r) != BigUint::from(2 * r + 1) {
            report.violations.push(format!("|S_(1,{})| != {}", r, 2 * r + 1));
        }
        if anticode_size_odd(1, r) != BigUint::from(2 * r + 2) {
            report.violations.push(format!("|S'_(1,{})| != {}", r, 2 * r + 2));
        }
    }
    for n in 1..=n_max {
        if lee_sphere_size(n, 0) != BigUint::one() {
            report.violations.push(format!("|S_({},0)| != 1", n));
        }
    }
    for n in 2..=n_max {
        for r in 1..=r_max {
            report.checked += 1;
            let lhs = lee_sphere_size(n, r);
            let rhs = lee_sphere_size(n - 1, r) + anticode_size_odd(n, r - 1);
            if lhs != rhs {
                report.violations.push(format!(
                    "|S_({n},{r})| = {lhs} but |S_({},{r})| + |S'_({n},{})| = {rhs}",
                    n - 1,
                    r - 1
                ));
            }
            let lhs = anticode_size_odd(n, r);
            let rhs = lee_sphere_size(n - 1, r) + lee_sphere_size(n, r);
            if lhs != rhs {
                report
                    .violations
                    .push(format!("|S'_({n},{r})| = {lhs} but |S_({},{r})| + |S_({n},{r})| = {rhs}", n - 1));
            }
        }
    }
    report
}

fn require_within_cap(size: BigUint, cap: u64, what: &'static str) -> Result<()> {
    if size > BigUint::from(cap) {
        return Err(Error::CapExceeded { what, size: size.to_string(), cap });
    }
    Ok(())
}

/// Grows `seed` by `rounds` rounds of unit-neighbor closure.
fn neighbor_closure(seed: BTreeSet<Point>, rounds: u32) -> BTreeSet<Point> {
    let mut all = seed.clone();
    let mut frontier: Vec<Point> = seed.into_iter().collect();
    for _ in 0..rounds {
        let mut next = Vec::new();
        for p in &frontier {
            for k in 0..p.len() {
                for step in [-1, 1] {
                    let mut q = p.clone();
                    q[k] += step;
                    if !all.contains(&q) {
                        all.insert(q.clone());
                        next.push(q);
                    }
                }
            }
        }
        frontier = next;
    }
    all
}

/// All points of `Z^n` within Manhattan distance `r` of `center`, found by
/// breadth-first search.
pub fn enumerate_sphere(n: usize, r: u32, center: &[i64], cap: u64) -> Result<BTreeSet<Point>> {
    if center.len() != n {
        return Err(Error::Dimension(format!("center of length {} in dimension {}", center.len(), n)));
    }
    require_within_cap(lee_sphere_size(n as u32, r), cap, "Lee sphere size")?;
    Ok(neighbor_closure(BTreeSet::from([center.to_vec()]), r))
}

/// `S'_{n,R}` grown from the adjacent pair `{0, e_1}`.
pub fn enumerate_anticode_odd(n: usize, r: u32, cap: u64) -> Result<BTreeSet<Point>> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    require_within_cap(anticode_size_odd(n as u32, r), cap, "anticode size")?;
    let origin = vec![0; n];
    let mut e1 = vec![0; n];
    e1[0] = 1;
    Ok(neighbor_closure(BTreeSet::from([origin, e1]), r))
}

/// Largest pairwise Manhattan distance in a point set.
pub fn diameter<'a>(points: impl IntoIterator<Item = &'a Point>) -> u64 {
    let pts: Vec<&Point> = points.into_iter().collect();
    let mut best = 0;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            best = best.max(a.iter().zip(b.iter()).map(|(x, y)| (x - y).unsigned_abs()).sum());
        }
    }
    best
}

/// Visits every point of `Z^n` with Manhattan weight exactly `w`, in
/// lexicographic order, until `f` breaks.
pub fn visit_shell<B>(n: usize, w: u64, mut f: impl FnMut(&[i64]) -> ControlFlow<B>) -> ControlFlow<B> {
    assert!(n >= 1, "dimension must be positive");
    let mut buf = vec![0i64; n];
    shell_rec(&mut buf, 0, w as i64, &mut f)
}

fn shell_rec<B>(buf: &mut [i64], k: usize, rem: i64, f: &mut impl FnMut(&[i64]) -> ControlFlow<B>) -> ControlFlow<B> {
    let n = buf.len();
    if k == n - 1 {
        if rem == 0 {
            buf[k] = 0;
            return f(buf);
        }
        buf[k] = -rem;
        f(buf)?;
        buf[k] = rem;
        return f(buf);
    }
    for v in -rem..=rem {
        buf[k] = v;
        shell_rec(buf, k + 1, rem - v.abs(), f)?;
    }
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        assert_eq!(manhattan_dist(&[1, 2, 3], &[1, 2, 3]).unwrap(), 0);
        assert_eq!(manhattan_dist(&[1, 2, 3], &[3, 0, 3]).unwrap(), 4);
        assert!(manhattan_dist(&[1], &[1, 2]).is_err());
        assert_eq!(lee_dist(&[0], &[4], 5).unwrap(), 1);
        assert_eq!(lee_dist(&[0, 0], &[2, 3], 4).unwrap(), 3);
        assert!(matches!(lee_dist(&[0], &[1], 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn sphere_sizes() {
        for n in 1..6 {
            assert_eq!(lee_sphere_size(n, 0), BigUint::one());
        }
        for r in 0..10 {
            assert_eq!(lee_sphere_size(1, r), BigUint::from(2 * r + 1));
        }
        assert_eq!(lee_sphere_size(3, 1), BigUint::from(7u32));
        assert_eq!(lee_sphere_size(2, 1), BigUint::from(5u32));
        assert_eq!(lee_sphere_size(3, 2), BigUint::from(25u32));
    }

    #[test]
    fn anticode_sizes() {
        for n in 1..8 {
            assert_eq!(anticode_size_odd(n, 0), BigUint::from(2u32));
            assert_eq!(anticode_size_odd(n, 1), BigUint::from(4 * n));
        }
        for r in 0..10 {
            assert_eq!(anticode_size_odd(1, r), BigUint::from(2 * r + 2));
        }
        assert_eq!(anticode_size_odd(2, 1), lee_sphere_size(1, 1) + lee_sphere_size(2, 1));
        assert_eq!(anticode_size_odd(2, 1), BigUint::from(8u32));
    }

    #[test]
    fn recurrences_hold() {
        let rep = check_anticode_recurrences(4, 4);
        assert!(rep.holds(), "{:?}", rep.violations);
        assert!(rep.checked > 0);
    }

    #[test]
    fn sphere_enumeration() {
        let s = enumerate_sphere(1, 2, &[0], DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]);
        assert_eq!(enumerate_sphere(2, 1, &[0, 0], DEFAULT_ENUM_CAP).unwrap().len(), 5);
        let shifted = enumerate_sphere(2, 1, &[5, -3], DEFAULT_ENUM_CAP).unwrap();
        assert!(shifted.iter().all(|p| manhattan_dist(p, &[5, -3]).unwrap() <= 1));
        assert!(matches!(enumerate_sphere(3, 5, &[0, 0, 0], 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn anticode_enumeration() {
        let a = enumerate_anticode_odd(3, 0, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(a.into_iter().collect::<Vec<_>>(), vec![vec![0, 0, 0], vec![1, 0, 0]]);
        assert_eq!(enumerate_anticode_odd(2, 1, DEFAULT_ENUM_CAP).unwrap().len(), 8);
        for n in 1..=4usize {
            for r in 0..=3u32 {
                let a = enumerate_anticode_odd(n, r, DEFAULT_ENUM_CAP).unwrap();
                assert_eq!(diameter(&a), 2 * r as u64 + 1);
            }
        }
    }

    #[test]
    fn shell_is_lexicographic_and_complete() {
        let mut seen = Vec::new();
        let _ = visit_shell::<()>(3, 2, |p| {
            seen.push(p.to_vec());
            ControlFlow::Continue(())
        });
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert_eq!(BigUint::from(seen.len()), lee_sphere_size(3, 2) - lee_sphere_size(3, 1));
        assert!(seen.iter().all(|p| weight(p) == 2));
    }

    #[test]
    fn shapes() {
        assert_eq!(Shape::LeeSphere { n: 3, r: 2 }.diameter(), 4);
        assert_eq!(Shape::OddAnticode { n: 3, r: 2 }.size(), BigUint::from(38u32));
    }
}
