//! Fundamental adjoint invariants as trace powers in the defining
//! realization, with closed-form Killing-dual gradients.

use crate::error::{Error, Result};
use crate::liealg::{AlgebraElement, LieAlgebra};
use crate::linalg::Mat;
use crate::rootdata::CartanType;
use crate::scalar::Scalar;

/// The `r` generators `p_k(x) = trace(X^k)` of the invariant polynomials.
///
/// Type `A_r` uses `k = 2, ..., r+1`; types `B_r` and `C_r` use the even
/// powers `k = 2, 4, ..., 2r`.
#[derive(Debug, Clone)]
pub struct InvariantSystem<'a> {
    algebra: &'a LieAlgebra,
    degrees: Vec<usize>,
}

impl<'a> InvariantSystem<'a> {
    pub fn new(algebra: &'a LieAlgebra) -> Self {
        let r = algebra.rank();
        let degrees = match algebra.cartan_type() {
            CartanType::A => (2..=r + 1).collect(),
            CartanType::B | CartanType::C => (1..=r).map(|k| 2 * k).collect(),
        };
        InvariantSystem { algebra, degrees }
    }

    pub fn algebra(&self) -> &'a LieAlgebra {
        self.algebra
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Sum of the degrees, which equals `(n + r) / 2`.
    pub fn ell(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.degrees.len() {
            Ok(())
        } else {
            Err(Error::Index { index: i, len: self.degrees.len() })
        }
    }

    /// `[I, X, X^2, ..., X^max]`.
    fn powers<S: Scalar>(&self, x: &AlgebraElement<S>, max: usize) -> Vec<Mat<S>> {
        let m = self.algebra.to_matrix(x);
        let mut out = vec![Mat::identity(m.rows())];
        for k in 1..=max {
            out.push(out[k - 1].matmul(&m));
        }
        out
    }

    /// `f_i(x)` (zero-based `i`).
    pub fn eval<S: Scalar>(&self, i: usize, x: &AlgebraElement<S>) -> Result<S> {
        self.check_index(i)?;
        let d = self.degrees[i];
        Ok(self.powers(x, d)[d].trace())
    }

    /// All `f_i(x)`.
    pub fn values<S: Scalar>(&self, x: &AlgebraElement<S>) -> Vec<S> {
        let p = self.powers(x, self.max_degree());
        self.degrees.iter().map(|&d| p[d].trace()).collect()
    }

    /// The Killing-dual gradient of `f_i` at `x`: the unique `v` with
    /// `kappa(v, w) = d/dt f_i(x + t w)` for all `w`.
    pub fn gradient<S: Scalar>(&self, i: usize, x: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
        self.check_index(i)?;
        let d = self.degrees[i];
        let p = self.powers(x, d - 1);
        Ok(self.gradient_from_power(d, &p[d - 1]))
    }

    /// All gradients at `x`, sharing the matrix powers.
    pub fn gradients<S: Scalar>(&self, x: &AlgebraElement<S>) -> Vec<AlgebraElement<S>> {
        let p = self.powers(x, self.max_degree() - 1);
        self.degrees.iter().map(|&d| self.gradient_from_power(d, &p[d - 1])).collect()
    }

    // d/dt trace((X + tW)^d) = d * trace(X^{d-1} W)
    fn gradient_from_power<S: Scalar>(&self, d: usize, power: &Mat<S>) -> AlgebraElement<S> {
        let factor = S::from_i64(d as i64);
        let covector: Vec<S> = self.algebra.trace_pairing(power).into_iter().map(|c| c * factor.clone()).collect();
        self.algebra.killing_dual(&covector)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RankThreshold;
    use crate::scalar::{exact_int, Complex64, Exact};

    fn exact(coords: &[i64]) -> AlgebraElement<Exact> {
        AlgebraElement::new(coords.iter().map(|&v| exact_int(v)).collect())
    }

    #[test]
    fn degrees_and_ell() {
        for (ty, rank, degrees) in [
            (CartanType::A, 1, vec![2]),
            (CartanType::A, 2, vec![2, 3]),
            (CartanType::A, 4, vec![2, 3, 4, 5]),
            (CartanType::B, 3, vec![2, 4, 6]),
            (CartanType::C, 2, vec![2, 4]),
        ] {
            let g = LieAlgebra::new(ty, rank).unwrap();
            let s = InvariantSystem::new(&g);
            assert_eq!(s.degrees(), degrees.as_slice());
            assert_eq!(2 * s.ell(), g.dim() + g.rank());
        }
    }

    #[test]
    fn sl2_values() {
        let g = LieAlgebra::new(CartanType::A, 1).unwrap();
        let s = InvariantSystem::new(&g);
        assert_eq!(s.eval(0, &exact(&[0, 0, 1])).unwrap(), exact_int(2));
        assert_eq!(s.eval(0, &exact(&[1, 0, 0])).unwrap(), exact_int(0));
        assert!(matches!(s.eval(1, &exact(&[1, 0, 0])), Err(Error::Index { .. })));
    }

    #[test]
    fn sl3_values_match_direct_matrix_powers() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let s = InvariantSystem::new(&g);
        let sys = g.root_system();
        // e_a1 + e_a2 + e_-a1 + e_-a2
        let mut coords = vec![0; g.dim()];
        for &k in &sys.simple_roots {
            coords[k] = 1;
            coords[sys.negative_of(k)] = 1;
        }
        let x = exact(&coords);
        // [[0,1,0],[1,0,1],[0,1,0]] built by hand
        let mut m = Mat::<Exact>::zeros(3, 3);
        for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
            m[(i, j)] = exact_int(1);
        }
        assert_eq!(g.to_matrix(&x), m);
        let m2 = m.matmul(&m);
        assert_eq!(s.eval(0, &x).unwrap(), m2.trace());
        assert_eq!(s.eval(1, &x).unwrap(), m2.matmul(&m).trace());
        assert_eq!(s.eval(0, &x).unwrap(), exact_int(4));
        assert_eq!(s.eval(1, &x).unwrap(), exact_int(0));
    }

    #[test]
    fn sl2_gradient_pairs_as_twice_trace() {
        let g = LieAlgebra::new(CartanType::A, 1).unwrap();
        let s = InvariantSystem::new(&g);
        let h = exact(&[0, 0, 1]);
        let grad = s.gradient(0, &h).unwrap();
        let hm = g.to_matrix(&h);
        for k in 0..3 {
            let v = AlgebraElement::unit(3, k);
            let expect = hm.matmul(&g.to_matrix(&v)).trace() * exact_int(2);
            assert_eq!(g.killing(&grad, &v), expect);
        }
    }

    #[test]
    fn gradient_vanishes_at_zero() {
        for ty in [CartanType::A, CartanType::B, CartanType::C] {
            let g = LieAlgebra::new(ty, 2).unwrap();
            let s = InvariantSystem::new(&g);
            let zero = AlgebraElement::<Exact>::zero(g.dim());
            for grad in s.gradients(&zero) {
                assert!(grad.is_zero());
            }
        }
    }

    #[test]
    fn gradients_lie_in_the_centralizer() {
        for ty in [CartanType::A, CartanType::B, CartanType::C] {
            let g = LieAlgebra::new(ty, 2).unwrap();
            let s = InvariantSystem::new(&g);
            let x = exact(&(0..g.dim() as i64).map(|v| (v * 7 + 3) % 5 - 2).collect::<Vec<_>>());
            for grad in s.gradients(&x) {
                assert!(g.bracket(&x, &grad).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn gradient_rank_drops_off_the_regular_set() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let s = InvariantSystem::new(&g);
        let ch = g.chevalley();
        // diag(1, 1, -2)
        let x = &ch.coroot::<Exact>(0) + &ch.coroot::<Exact>(1).scale(&exact_int(2));
        let rows: Vec<Vec<Exact>> = s.gradients(&x).into_iter().map(AlgebraElement::into_coords).collect();
        assert!(Exact::rank(&Mat::from_rows(&rows), RankThreshold::Relative(0.0)) < 2);

        // diag(1, 2, -3) is regular
        let x = &ch.coroot::<Exact>(0) + &ch.coroot::<Exact>(1).scale(&exact_int(3));
        let rows: Vec<Vec<Exact>> = s.gradients(&x).into_iter().map(AlgebraElement::into_coords).collect();
        assert_eq!(Exact::rank(&Mat::from_rows(&rows), RankThreshold::Relative(0.0)), 2);
    }

    #[test]
    fn homogeneity() {
        let g = LieAlgebra::new(CartanType::C, 2).unwrap();
        let s = InvariantSystem::new(&g);
        let x = exact(&(0..g.dim() as i64).map(|v| v % 3 - 1).collect::<Vec<_>>());
        let t = exact_int(3);
        let tx = x.scale(&t);
        for (i, &d) in s.degrees().iter().enumerate() {
            let lhs = s.eval(i, &tx).unwrap();
            let rhs = s.eval(i, &x).unwrap() * exact_int(3i64.pow(d as u32));
            assert_eq!(lhs, rhs);
        }
        let xf = x.to_float();
        let vals = s.values(&xf);
        assert!((vals[1] - s.eval(1, &x).unwrap().to_c64()).norm() < 1e-12);
        let _: Vec<Complex64> = vals;
    }
}
