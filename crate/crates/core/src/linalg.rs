//! Small dense matrices over a [`Scalar`] field, exact elimination and
//! floating-point rank/exponential routines.

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_traits::Zero;

use crate::scalar::{Complex64, Scalar};

/// How small a singular value must be to count as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RankThreshold {
    /// `sigma <= tol * sigma_max`.
    Relative(f64),
    /// `sigma <= tol * max(1, sigma_max)`; the floor keeps all-zero rows at rank 0.
    Floored(f64),
}

impl RankThreshold {
    pub fn cutoff(self, sigma_max: f64) -> f64 {
        match self {
            RankThreshold::Relative(tol) => tol * sigma_max,
            RankThreshold::Floored(tol) => tol * sigma_max.max(1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).fold(S::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone()))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a.clone(), b.clone())).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Row echelon form by fraction-free (Bareiss) elimination.
///
/// Returns the echelon matrix and the pivot column of each nonzero row.
/// Every update divides by the previous pivot, which is exact in a field.
pub fn echelon<S: Scalar>(m: &Mat<S>) -> (Mat<S>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut prev = S::one();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows)
            .filter(|&i| !a[(i, col)].is_zero())
            .max_by(|&i, &k| a[(i, col)].modulus().total_cmp(&a[(k, col)].modulus()))
        else {
            continue;
        };
        a.swap_rows(row, p);
        let piv = a[(row, col)].clone();
        for i in row + 1..a.rows {
            let f = a[(i, col)].clone();
            for j in col..a.cols {
                let v = (piv.clone() * a[(i, j)].clone() - f.clone() * a[(row, j)].clone()) / prev.clone();
                a[(i, j)] = v;
            }
        }
        prev = piv;
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Basis of the right null space, one vector per free column.
pub fn nullspace<S: Scalar>(m: &Mat<S>) -> Vec<Vec<S>> {
    let (e, pivots) = echelon(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![S::zero(); m.cols];
            x[f] = S::one();
            for (k, &pc) in pivots.iter().enumerate().rev() {
                let sum = (pc + 1..m.cols).fold(S::zero(), |acc, j| acc + e[(k, j)].clone() * x[j].clone());
                x[pc] = -sum / e[(k, pc)].clone();
            }
            x
        })
        .collect()
}

/// Solves the square system `a x = b` by Gaussian elimination with
/// largest-modulus pivoting. `None` when `a` is singular.
pub fn solve<S: Scalar>(a: &Mat<S>, b: &[S]) -> Option<Vec<S>> {
    let n = a.rows;
    assert_eq!(a.cols, n, "solve needs a square matrix");
    let mut aug = Mat::from_fn(n, n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    for col in 0..n {
        let p = (col..n)
            .filter(|&i| !aug[(i, col)].is_zero())
            .max_by(|&i, &k| aug[(i, col)].modulus().total_cmp(&aug[(k, col)].modulus()))?;
        aug.swap_rows(col, p);
        let piv = aug[(col, col)].clone();
        for i in 0..n {
            if i == col || aug[(i, col)].is_zero() {
                continue;
            }
            let f = aug[(i, col)].clone() / piv.clone();
            for j in col..=n {
                let v = aug[(i, j)].clone() - f.clone() * aug[(col, j)].clone();
                aug[(i, j)] = v;
            }
        }
    }
    Some((0..n).map(|i| aug[(i, n)].clone() / aug[(i, i)].clone()).collect())
}

pub fn inverse<S: Scalar>(a: &Mat<S>) -> Option<Mat<S>> {
    let n = a.rows;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![S::zero(); n];
        e[j] = S::one();
        cols.push(solve(a, &e)?);
    }
    Some(Mat::from_fn(n, n, |i, j| cols[j][i].clone()))
}

fn to_nalgebra(m: &Mat<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows, m.cols, |i, j| m[(i, j)])
}

/// Singular values in descending order.
pub fn singular_values(m: &Mat<Complex64>) -> Vec<f64> {
    if m.rows == 0 || m.cols == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = to_nalgebra(m).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn numerical_rank(m: &Mat<Complex64>, threshold: RankThreshold) -> usize {
    let s = singular_values(m);
    let cutoff = threshold.cutoff(s.first().copied().unwrap_or(0.0));
    s.iter().filter(|&&v| v > cutoff).count()
}

/// Orthonormal basis of the numerical column space.
pub fn svd_column_basis(m: &Mat<Complex64>, threshold: RankThreshold) -> Vec<Vec<Complex64>> {
    if m.rows == 0 || m.cols == 0 {
        return Vec::new();
    }
    let svd = to_nalgebra(m).svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let sigma = &svd.singular_values;
    let smax = sigma.iter().copied().fold(0.0, f64::max);
    let cutoff = threshold.cutoff(smax);
    let mut order: Vec<usize> = (0..sigma.len()).filter(|&k| sigma[k] > cutoff).collect();
    order.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]));
    order.into_iter().map(|k| u.column(k).iter().copied().collect()).collect()
}

/// Matrix exponential by scaling and squaring with a degree-18 Taylor
/// polynomial on the scaled matrix (norm at most 1/2).
pub fn expm(a: &Mat<Complex64>) -> Mat<Complex64> {
    const ORDER: usize = 18;
    let n = a.rows;
    let norm1 = (0..n).map(|j| (0..n).map(|i| a[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max);
    let squarings = if norm1 > 0.5 { (norm1 / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = a.scale(&Complex64::new(0.5f64.powi(squarings), 0.0));

    // Horner form of sum_k A^k / k!
    let mut result = Mat::identity(n);
    for k in (1..=ORDER).rev() {
        result = Mat::identity(n).add(&scaled.matmul(&result).scale(&Complex64::new(1.0 / k as f64, 0.0)));
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

/// `exp(a)` for a nilpotent matrix, as the terminating power series.
/// Exact in exact mode. Returns `None` if `a` is not nilpotent.
pub fn nilpotent_exp<S: Scalar>(a: &Mat<S>) -> Option<Mat<S>> {
    let n = a.rows;
    let mut result = Mat::identity(n);
    let mut term = Mat::identity(n);
    for k in 1..=n {
        term = term.matmul(a).scale(&(S::one() / S::from_i64(k as i64)));
        if term.is_zero() {
            return Some(result);
        }
        result = result.add(&term);
    }
    if term.matmul(a).is_zero() {
        Some(result)
    } else {
        None
    }
}
