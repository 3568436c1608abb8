//! Exact integer linear algebra: fraction-free rank and determinants, Smith
//! normal form with recorded unimodular transforms, and primitive kernel
//! bases.  Everything downstream that needs linear algebra -- matching
//! equations, homology, vertex tests -- comes through here, so no floating
//! point can leak into a decision.
//!
//! Matrices are dense and, by numerical-software standards, small (a few
//! hundred rows at most); the implementations favour transparency over
//! asymptotics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>, // row-major
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> IntMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Literal matrices in tests and fixtures.  Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix literal");
        IntMatrix::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: impl Into<BigInt>) {
        self.data[i * self.cols + j] = x.into();
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self.at(i, k) * rhs.at(k, j)).sum()
        })
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let x = self.at(i, j) - q * self.at(k, j);
            self.set(i, j, x);
        }
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            let x = self.at(i, j) - q * self.at(i, k);
            self.set(i, j, x);
        }
    }

    /// col_dst += col_src
    fn col_add(&mut self, dst: usize, src: usize) {
        for i in 0..self.rows {
            let x = self.at(i, dst) + self.at(i, src);
            self.set(i, dst, x);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -self.at(i, j);
            self.set(i, j, x);
        }
    }

    /// Rank over the rationals, by Bareiss fraction-free elimination.  Every
    /// intermediate entry is a minor of the input, so the divisions below are
    /// exact and coefficients stay polynomial in size.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.at(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            for i in r + 1..a.rows {
                for j in c + 1..a.cols {
                    let num = a.at(r, c) * a.at(i, j) - a.at(i, c) * a.at(r, j);
                    a.set(i, j, num / &prev);
                }
                a.set(i, c, BigInt::zero());
            }
            prev = a.at(r, c).clone();
            r += 1;
        }
        r
    }

    /// Rank over the field Z/p (p an odd prime fitting a machine word).
    /// Always a lower bound on the rational rank; used as a cheap first pass
    /// before exact elimination.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let reduce = |x: &BigInt| -> u64 {
            let m = x % p;
            let m = if m.is_negative() { m + p } else { m };
            u64::try_from(m).expect("residue fits u64")
        };
        let mut a: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(reduce).collect())
            .collect();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, pr);
            let inv = mod_inverse(a[r][c], p);
            for i in r + 1..self.rows {
                if a[i][c] == 0 {
                    continue;
                }
                let factor = mul_mod(a[i][c], inv, p);
                for j in c..self.cols {
                    let sub = mul_mod(factor, a[r][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
            r += 1;
        }
        r
    }

    /// Determinant of a square matrix, again by Bareiss.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut neg = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.at(i, k).is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(k, p);
                neg = !neg;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j);
                    a.set(i, j, num / &prev);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        if neg {
            -prev
        } else {
            prev
        }
    }

    /// Smith normal form.  Returns the positive invariant factors d1 | d2 |
    /// ... | dr together with unimodular transforms satisfying
    /// `u * self * v = diag(factors)`.
    ///
    /// Pivots are chosen with minimal magnitude to keep coefficient growth in
    /// check; the remainder left by an inexact quotient becomes the next,
    /// strictly smaller pivot, so each position terminates.
    pub fn smith_normal_form(&self) -> Snf {
        let mut d = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let steps = self.rows.min(self.cols);
        for k in 0..steps {
            let Some((pi, pj)) = d.min_nonzero_from(k) else {
                break;
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            'clear: loop {
                for i in k + 1..d.rows {
                    if d.at(i, k).is_zero() {
                        continue;
                    }
                    let q = d.at(i, k) / d.at(k, k);
                    if !q.is_zero() {
                        d.row_sub(i, k, &q);
                        u.row_sub(i, k, &q);
                    }
                    if !d.at(i, k).is_zero() {
                        d.swap_rows(k, i);
                        u.swap_rows(k, i);
                        continue 'clear;
                    }
                }
                for j in k + 1..d.cols {
                    if d.at(k, j).is_zero() {
                        continue;
                    }
                    let q = d.at(k, j) / d.at(k, k);
                    if !q.is_zero() {
                        d.col_sub(j, k, &q);
                        v.col_sub(j, k, &q);
                    }
                    if !d.at(k, j).is_zero() {
                        d.swap_cols(k, j);
                        v.swap_cols(k, j);
                        continue 'clear;
                    }
                }
                // The pivot must divide everything that is left, or the
                // diagonal would not be a divisor chain.  Folding a bad
                // column into column k shrinks the eventual pivot gcd.
                for i in k + 1..d.rows {
                    for j in k + 1..d.cols {
                        if !(d.at(i, j) % d.at(k, k)).is_zero() {
                            d.col_add(k, j);
                            v.col_add(k, j);
                            continue 'clear;
                        }
                    }
                }
                break;
            }
            if d.at(k, k).is_negative() {
                d.negate_row(k);
                u.negate_row(k);
            }
        }
        let factors = (0..steps)
            .map(|k| d.at(k, k))
            .take_while(|x| !x.is_zero())
            .cloned()
            .collect();
        Snf { factors, u, v }
    }

    /// Lattice basis of the integer kernel: the trailing columns of the SNF
    /// column transform.  Each vector is primitive (any column of a
    /// unimodular matrix is) with its first nonzero entry positive.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let snf = self.smith_normal_form();
        let r = snf.factors.len();
        (r..self.cols)
            .map(|j| {
                let mut col: Vec<BigInt> =
                    (0..self.cols).map(|i| snf.v.at(i, j).clone()).collect();
                if col
                    .iter()
                    .find(|x| !x.is_zero())
                    .is_some_and(|x| x.is_negative())
                {
                    for x in &mut col {
                        *x = -&*x;
                    }
                }
                col
            })
            .collect()
    }

    /// First minimal-magnitude nonzero entry of the trailing block, scanning
    /// row-major for determinism.
    fn min_nonzero_from(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let x = self.at(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.magnitude() < self.at(bi, bj).magnitude()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub factors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(p)) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Greatest common divisor of the entries; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Scale a vector down to its primitive representative.  Zero vectors pass
/// through unchanged.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v {
        *x /= &g;
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
