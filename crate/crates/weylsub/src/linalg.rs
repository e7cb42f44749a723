//! Small exact linear-algebra kernel over `BigRational` / `BigInt`.
//!
//! Sizes here are tiny (matrices up to the ambient rank, at most 8), so plain
//! fraction-free-ish Gaussian elimination is plenty. Integer lattice work
//! (kernels, index computations) goes through a row Hermite normal form with
//! a unimodular transform.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn is_int(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Exact floor of a rational.
pub fn floor_rat(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Exact ceiling of a rational.
pub fn ceil_rat(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}

/// Euclidean remainder of `x` modulo the positive integer `m`: result in `[0, m)`.
pub fn rem_euclid_rat(x: &Rat, m: &BigInt) -> Rat {
    debug_assert!(m.is_positive());
    let q = floor_rat(&(x / Rat::from(m.clone())));
    x - Rat::from(q * m)
}

/// Dense rational matrix as rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<Rat>>,
}

impl Mat {
    pub fn new(a: Vec<Vec<Rat>>) -> Self {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        debug_assert!(a.iter().all(|r| r.len() == cols));
        Mat { rows, cols, a }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            a: vec![vec![Rat::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.a[i][i] = Rat::one();
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Rat>]) -> Self {
        if cols.is_empty() {
            return Mat::zero(0, 0);
        }
        let rows = cols[0].len();
        let mut m = Mat::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.a[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(v.len(), self.cols);
        self.a
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.a.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
                Some(p) => p,
                None => return Rat::zero(),
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= p.clone();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..n {
                    let sub = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &sub;
                }
            }
        }
        det
    }

    /// Row-reduce in place; returns pivot columns.
    fn row_echelon(a: &mut Vec<Vec<Rat>>) -> Vec<usize> {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let pivot = match (row..rows).find(|&r| !a[r][col].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            a.swap(pivot, row);
            let p = a[row][col].clone();
            for c in col..cols {
                a[row][c] = &a[row][c] / &p;
            }
            for r in 0..rows {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in col..cols {
                        let sub = &factor * &a[row][c];
                        a[r][c] = &a[r][c] - &sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut a = self.a.clone();
        Mat::row_echelon(&mut a).len()
    }

    /// Solve `self · x = b` exactly. Returns `None` when inconsistent.
    /// For underdetermined systems an arbitrary particular solution is
    /// returned (free variables set to zero).
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        debug_assert_eq!(b.len(), self.rows);
        let mut a: Vec<Vec<Rat>> = self
            .a
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                r.push(bi.clone());
                r
            })
            .collect();
        let pivots = Mat::row_echelon(&mut a);
        // Inconsistent if a pivot lands in the augmented column.
        if pivots.iter().any(|&c| c == self.cols) {
            return None;
        }
        // Rows of the form (0 ... 0 | nonzero) are inconsistent too.
        for r in &a {
            if r[..self.cols].iter().all(|x| x.is_zero()) && !r[self.cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = a[i][self.cols].clone();
        }
        Some(x)
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = self
            .a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                for j in 0..n {
                    r.push(if i == j { Rat::one() } else { Rat::zero() });
                }
                r
            })
            .collect();
        let pivots = Mat::row_echelon(&mut a);
        if pivots.len() != n {
            return None;
        }
        let inv = a.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(Mat::new(inv))
    }

    /// Basis of the rational kernel `{x : self · x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut a = self.a.clone();
        let pivots = Mat::row_echelon(&mut a);
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][f].clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Scale a rational vector to a primitive integer vector (clears denominators,
/// divides by the gcd). The sign is normalised so the first nonzero entry is
/// positive.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    ints
}

/// Row Hermite-style reduction of an integer matrix, tracking a unimodular
/// transform `u` with `u · m = h`. Returns `(h, u)`.
pub fn row_hnf(m: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut h = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        // Euclidean elimination in this column below `row`.
        loop {
            let mut nonzero: Vec<usize> = (row..rows).filter(|&r| !h[r][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            nonzero.sort_by_key(|&r| h[r][col].abs());
            let p = nonzero[0];
            h.swap(row, p);
            u.swap(row, p);
            if nonzero.len() == 1 {
                break;
            }
            let pivot = h[row][col].clone();
            for r in row + 1..rows {
                if h[r][col].is_zero() {
                    continue;
                }
                let q = div_round_to_zero(&h[r][col], &pivot);
                if !q.is_zero() {
                    for c in 0..cols {
                        let sub = &q * &h[row][c];
                        h[r][c] = &h[r][c] - sub;
                    }
                    for c in 0..rows {
                        let sub = &q * &u[row][c];
                        u[r][c] = &u[r][c] - sub;
                    }
                }
            }
        }
        if !h[row][col].is_zero() {
            if h[row][col].is_negative() {
                for c in 0..cols {
                    h[row][c] = -h[row][c].clone();
                }
                for c in 0..rows {
                    u[row][c] = -u[row][c].clone();
                }
            }
            row += 1;
        }
    }
    (h, u)
}

fn div_round_to_zero(a: &BigInt, b: &BigInt) -> BigInt {
    a / b
}

/// Basis of the integer kernel `{x ∈ Z^rows : xᵀ · m = 0}` of an integer
/// matrix, i.e. the integer row vectors annihilating `m` on the left.
pub fn integer_left_kernel(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let (h, u) = row_hnf(m);
    let mut out = Vec::new();
    for (row, hr) in h.iter().enumerate() {
        if hr.iter().all(|x| x.is_zero()) {
            out.push(u[row].clone());
        }
    }
    out
}
