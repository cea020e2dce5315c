//! Scalar fields used throughout the crate.
//!
//! Two arithmetic modes share one code path: exact Gaussian rationals for
//! structural identities, and complex double precision for sampling. The
//! mode is carried by the type parameter, so mixing modes inside one
//! computation is a type error.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive, Zero};

use crate::liealg::{LieAlgebra, Tables};
use crate::linalg::{self, Mat, RankThreshold};

pub use num_complex::Complex64;

pub type Rational = BigRational;

/// Gaussian rational `p + q i` with `p, q` rational.
pub type Exact = Complex<BigRational>;

pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static + Num + Neg<Output = Self> {
    /// True for exact arithmetic; rank decisions then ignore tolerances.
    const EXACT: bool;

    fn from_exact(z: &Exact) -> Self;

    fn modulus(&self) -> f64;

    fn to_c64(&self) -> Complex64;

    /// The precomputed structure tables of `alg` in this mode.
    fn tables(alg: &LieAlgebra) -> &Tables<Self>;

    fn rank(m: &Mat<Self>, threshold: RankThreshold) -> usize;

    /// A basis of the column space: pivot columns in exact mode, left
    /// singular vectors in floating mode.
    fn column_basis(m: &Mat<Self>, threshold: RankThreshold) -> Vec<Vec<Self>>;

    fn from_i64(v: i64) -> Self {
        Self::from_exact(&exact_int(v))
    }

    fn from_rational(q: &Rational) -> Self {
        Self::from_exact(&Complex::new(q.clone(), Rational::zero()))
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn exact_int(v: i64) -> Exact {
    Complex::new(Rational::from_integer(BigInt::from(v)), Rational::zero())
}

pub fn exact_real(q: Rational) -> Exact {
    Complex::new(q, Rational::zero())
}

fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn from_exact(z: &Exact) -> Self {
        z.clone()
    }

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn tables(alg: &LieAlgebra) -> &Tables<Self> {
        alg.exact_tables()
    }

    fn rank(m: &Mat<Self>, _threshold: RankThreshold) -> usize {
        linalg::echelon(m).1.len()
    }

    fn column_basis(m: &Mat<Self>, _threshold: RankThreshold) -> Vec<Vec<Self>> {
        let (_, pivots) = linalg::echelon(m);
        pivots.into_iter().map(|j| m.column(j)).collect()
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_exact(z: &Exact) -> Self {
        z.to_c64()
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn tables(alg: &LieAlgebra) -> &Tables<Self> {
        alg.float_tables()
    }

    fn rank(m: &Mat<Self>, threshold: RankThreshold) -> usize {
        linalg::numerical_rank(m, threshold)
    }

    fn column_basis(m: &Mat<Self>, threshold: RankThreshold) -> Vec<Vec<Self>> {
        linalg::svd_column_basis(m, threshold)
    }
}
