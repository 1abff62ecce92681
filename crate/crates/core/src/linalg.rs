//! Exact integer linear algebra: dense matrices, Smith and Hermite forms,
//! and reduction of unimodular alternating forms to the standard one.
//!
//! All arithmetic is checked. An entry that leaves `i64` panics rather than
//! wrapping, so every returned value is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

const OVERFLOW: &str = "integer overflow: value exceeds i64";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("form is not alternating")]
    NotAlternating,
    #[error("form is degenerate or not unimodular (gcd {0})")]
    NotUnimodular(i64),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
}

#[inline]
fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect(OVERFLOW)
}

/// Extended gcd: returns (d, s, t) with s*a + t*b = d >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (narrow(r0), narrow(s0), narrow(t0))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<i64>]) -> Self {
        Mat::from_rows(cols).transpose()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self[(i, k)] as i128 * other[(k, j)] as i128;
                }
                out[(i, j)] = narrow(acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| narrow(self.row(i).iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum()))
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).expect(OVERFLOW))
            .collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Entrywise reduction into `0..m`.
    pub fn reduce_mod(&self, m: i64) -> Mat {
        assert!(m > 0);
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.rem_euclid(m)).collect() }
    }

    /// Product reduced into `0..m`.
    pub fn mul_mod(&self, other: &Mat, m: i64) -> Mat {
        self.reduce_mod(m).mul(&other.reduce_mod(m)).reduce_mod(m)
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.rows)
    }

    /// Exact determinant by fraction-free elimination over big integers.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == -self[(j, i)]))
    }
}

/// The standard alternating form on Z^{2g} in interleaved order x1,y1,x2,y2,...
/// with <x_i, y_i> = 1.
pub fn standard_j(g: usize) -> Mat {
    let mut j = Mat::zeros(2 * g, 2 * g);
    for i in 0..g {
        j[(2 * i, 2 * i + 1)] = 1;
        j[(2 * i + 1, 2 * i)] = -1;
    }
    j
}

/// <u, v> for the standard form in interleaved coordinates.
pub fn symp_pair(u: &[i64], v: &[i64]) -> i64 {
    debug_assert_eq!(u.len(), v.len());
    let mut acc: i128 = 0;
    for i in (0..u.len()).step_by(2) {
        acc += u[i] as i128 * v[i + 1] as i128 - u[i + 1] as i128 * v[i] as i128;
    }
    narrow(acc)
}

/// Bilinear form u^T M v.
pub fn bilinear(m: &Mat, u: &[i64], v: &[i64]) -> i64 {
    let mv = m.mul_vec(v);
    narrow(u.iter().zip(&mv).map(|(&a, &b)| a as i128 * b as i128).sum())
}

pub fn vec_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).expect(OVERFLOW)).collect()
}

pub fn vec_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y).expect(OVERFLOW)).collect()
}

pub fn vec_scale(k: i64, a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| x.checked_mul(k).expect(OVERFLOW)).collect()
}

/// a + k*b
pub fn vec_axpy(a: &[i64], k: i64, b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| narrow(*x as i128 + k as i128 * *y as i128)).collect()
}

/// Nonzero invariant factors of an integer matrix (Smith normal form diagonal).
pub fn smith_diagonal(m: &Mat) -> Vec<i64> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a: Vec<Vec<i128>> = (0..rows).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // divisibility condition for the rest of the block
                let p = a[t][t];
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(narrow(a[t][t].abs()));
        t += 1;
    }
    diag
}

/// A sublattice of Z^n kept in reduced row echelon (Hermite) form.
#[derive(Clone, Debug)]
pub struct LatticeSpan {
    dim: usize,
    rows: BTreeMap<usize, Vec<i64>>,
}

impl LatticeSpan {
    pub fn new(dim: usize) -> Self {
        LatticeSpan { dim, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Vec<i64>> {
        self.rows.values().cloned().collect()
    }

    /// Adds a vector; returns whether the lattice grew.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        let mut changed = false;
        while let Some(p) = v.iter().position(|&x| x != 0) {
            match self.rows.get_mut(&p) {
                None => {
                    if v[p] < 0 {
                        v = vec_scale(-1, &v);
                    }
                    self.rows.insert(p, v);
                    changed = true;
                    break;
                }
                Some(r) => {
                    if v[p] % r[p] == 0 {
                        v = vec_axpy(&v, -(v[p] / r[p]), r);
                    } else {
                        let (d, s, t) = ext_gcd(r[p], v[p]);
                        let new: Vec<i64> =
                            r.iter().zip(&v).map(|(&x, &y)| narrow(s as i128 * x as i128 + t as i128 * y as i128)).collect();
                        let (rp, vp) = (r[p] / d, v[p] / d);
                        let other: Vec<i64> =
                            r.iter().zip(&v).map(|(&x, &y)| narrow(rp as i128 * y as i128 - vp as i128 * x as i128)).collect();
                        *r = new;
                        v = other;
                        changed = true;
                    }
                }
            }
        }
        if changed {
            self.reduce();
        }
        changed
    }

    fn reduce(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for (k, &p) in pivots.iter().enumerate().rev() {
            let pr = self.rows[&p].clone();
            for &q in &pivots[..k] {
                let row = self.rows.get_mut(&q).unwrap();
                let f = row[p].div_euclid(pr[p]);
                if f != 0 {
                    *row = vec_axpy(row, -f, &pr);
                }
            }
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut v = v.to_vec();
        while let Some(p) = v.iter().position(|&x| x != 0) {
            match self.rows.get(&p) {
                Some(r) if v[p] % r[p] == 0 => v = vec_axpy(&v, -(v[p] / r[p]), r),
                _ => return false,
            }
        }
        true
    }

    /// Index in Z^n when of full rank (product of pivots), else None.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() < self.dim {
            return None;
        }
        Some(self.rows.iter().map(|(&p, r)| BigInt::from(r[p])).product())
    }

    /// Invariant factors of the lattice inside Z^n.
    pub fn elementary_divisors(&self) -> Vec<i64> {
        if self.rows.is_empty() {
            return Vec::new();
        }
        smith_diagonal(&Mat::from_rows(&self.basis()))
    }
}

/// Reduces a unimodular alternating form `m` to the standard one.
///
/// Returns `p` with `p^T m p = standard_j(n/2)`; the columns of `p` are the
/// new basis vectors (x1, y1, x2, y2, ...) written in the old coordinates.
pub fn symplectic_reduce(m: &Mat) -> Result<Mat, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.nrows(), m.ncols()));
    }
    if !m.is_antisymmetric() {
        return Err(LinalgError::NotAlternating);
    }
    let n = m.nrows();
    if n % 2 == 1 {
        return Err(LinalgError::NotUnimodular(0));
    }
    let form = |u: &[i64], v: &[i64]| bilinear(m, u, v);
    let mut pool: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(n);
    while !pool.is_empty() {
        let e = pool.remove(0);
        let k = loop {
            let vals: Vec<i64> = pool.iter().map(|b| form(&e, b)).collect();
            let Some(k) = (0..vals.len()).filter(|&i| vals[i] != 0).min_by_key(|&i| vals[i].abs()) else {
                return Err(LinalgError::NotUnimodular(0));
            };
            if vals.iter().enumerate().all(|(i, &v)| i == k || v % vals[k] == 0) {
                if vals[k].abs() != 1 {
                    return Err(LinalgError::NotUnimodular(vals[k].abs()));
                }
                break k;
            }
            let bk = pool[k].clone();
            for (i, b) in pool.iter_mut().enumerate() {
                if i != k {
                    let q = vals[i].div_euclid(vals[k]);
                    if q != 0 {
                        *b = vec_axpy(b, -q, &bk);
                    }
                }
            }
        };
        let mut f = pool.remove(k);
        if form(&e, &f) < 0 {
            f = vec_scale(-1, &f);
        }
        for b in pool.iter_mut() {
            let be = form(b, &e);
            let bf = form(b, &f);
            *b = vec_axpy(&vec_axpy(b, be, &f), -bf, &e);
        }
        out.push(e);
        out.push(f);
    }
    let p = Mat::from_cols(&out);
    debug_assert_eq!(p.transpose().mul(m).mul(&p), standard_j(n / 2));
    Ok(p)
}

/// One solution of `a x = b` over GF(2), or `None` when inconsistent.
pub fn solve_gf2(a: &[Vec<u8>], b: &[u8]) -> Option<Vec<u8>> {
    let n = a.first().map_or(0, Vec::len);
    let mut rows: Vec<(Vec<u8>, u8)> = a.iter().zip(b).map(|(r, &y)| (r.iter().map(|x| x & 1).collect(), y & 1)).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..n {
        let Some(p) = (top..rows.len()).find(|&i| rows[i].0[col] == 1) else { continue };
        rows.swap(top, p);
        let (pr, py) = rows[top].clone();
        for (i, (r, y)) in rows.iter_mut().enumerate() {
            if i != top && r[col] == 1 {
                for (x, z) in r.iter_mut().zip(&pr) {
                    *x ^= z;
                }
                *y ^= py;
            }
        }
        pivots.push(col);
        top += 1;
    }
    if rows[top..].iter().any(|(_, y)| *y == 1) {
        return None;
    }
    let mut x = vec![0u8; n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i].1;
    }
    Some(x)
}

/// Returns |det| == 1 for a square matrix.
pub fn is_unimodular(m: &Mat) -> bool {
    m.is_square() && m.det().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(12, -18), 6);
        let (d, s, t) = ext_gcd(240, 46);
        assert_eq!(d, 2);
        assert_eq!(240 * s + 46 * t, 2);
        assert_eq!(gcd_all(&[0, 0]), 0);
    }

    #[test]
    fn det_matches_cofactor() {
        let m = Mat::from_rows(&[vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]]);
        // 2*(3*-2-4*5) - (-1)*(1*-2-0) + 0 = -52 - 2
        assert_eq!(m.det(), BigInt::from(-54));
        assert_eq!(Mat::identity(4).det(), BigInt::one());
        let sing = Mat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(sing.det().is_zero());
    }

    #[test]
    fn smith_known() {
        let m = Mat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_diagonal(&m), vec![2, 6, 12]);
        assert_eq!(smith_diagonal(&Mat::zeros(2, 3)), Vec::<i64>::new());
    }

    #[test]
    fn lattice_span_index() {
        let mut l = LatticeSpan::new(2);
        assert!(l.insert(&[2, 0]));
        assert!(l.insert(&[0, 3]));
        assert_eq!(l.index(), Some(BigInt::from(6)));
        assert!(l.insert(&[1, 1]));
        assert!(!l.insert(&[3, 3]));
        assert!(l.contains(&[1, 4]));
        assert!(!l.insert(&[0, 1]));
        assert_eq!(l.index(), Some(BigInt::one()));
        assert_eq!(l.elementary_divisors(), vec![1, 1]);
    }

    #[test]
    fn reduce_standard_and_shuffled() {
        let j = standard_j(2);
        let p = symplectic_reduce(&j).unwrap();
        assert_eq!(p.transpose().mul(&j).mul(&p), j);
        // a unimodular form in a scrambled basis
        let b = Mat::from_rows(&[vec![1, 2, 0, 1], vec![0, 1, 3, 0], vec![0, 0, 1, 0], vec![1, 0, 0, 2]]);
        let m = b.transpose().mul(&j).mul(&b);
        let p = symplectic_reduce(&m).unwrap();
        assert_eq!(p.transpose().mul(&m).mul(&p), j);
        let bad = Mat::from_rows(&[vec![0, 2], vec![-2, 0]]);
        assert_eq!(symplectic_reduce(&bad), Err(LinalgError::NotUnimodular(2)));
    }

    #[test]
    fn pow_and_mod() {
        let t = Mat::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(t.pow(5), Mat::from_rows(&[vec![1, 5], vec![0, 1]]));
        assert!(t.pow(3).reduce_mod(3).is_identity());
        assert_eq!(symp_pair(&[1, 0], &[0, 1]), 1);
    }
}
