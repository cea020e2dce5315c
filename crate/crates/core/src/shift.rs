//! The Mishchenko-Fomenko family of a regular shift `a`: the coefficients
//! `f_ij` of `f_i(x + lambda a) = sum_j f_ij(x) lambda^j + f_i(a) lambda^{d_i}`.
//!
//! Coefficients are recovered numerically rather than symbolically: the
//! polynomial `lambda -> f_i(x + lambda a) - f_i(a) lambda^{d_i}` has degree
//! below `d_i`, so its values at the integer nodes `0, ..., d_i - 1`
//! determine it through an inverse Vandermonde matrix. Gradients go
//! through the same solve, since `grad_x f_i(x + lambda a) = (grad f_i)(x + lambda a)`
//! and the leading term is constant in `x`.

use crate::error::{Error, Result};
use crate::invariants::InvariantSystem;
use crate::liealg::{AlgebraElement, LieAlgebra};
use crate::linalg::{self, Mat, RankThreshold};
use crate::scalar::{exact_int, Exact, Scalar};

#[derive(Debug, Clone)]
pub struct MfFamily<'a, S> {
    invariants: InvariantSystem<'a>,
    shift: AlgebraElement<S>,
    /// `f_i(a)`, the coefficient of `lambda^{d_i}`.
    leading: Vec<S>,
    /// Inverse Vandermonde matrix on nodes `0..d` for each distinct degree `d`, indexed by `d`.
    solvers: Vec<Option<Mat<S>>>,
    generators: Vec<(usize, usize)>,
}

fn inverse_vandermonde<S: Scalar>(d: usize) -> Mat<S> {
    let v = Mat::<Exact>::from_fn(d, d, |node, j| exact_int((node as i64).pow(j as u32)));
    linalg::inverse(&v).expect("Vandermonde matrix on distinct nodes is invertible").map(S::from_exact)
}

impl<'a, S: Scalar> MfFamily<'a, S> {
    /// Builds the family; fails with a domain error if `shift` is not
    /// regular at `tolerance` (exactly, in exact mode).
    pub fn new(invariants: InvariantSystem<'a>, shift: AlgebraElement<S>, tolerance: f64) -> Result<Self> {
        let algebra = invariants.algebra();
        if shift.dim() != algebra.dim() {
            return Err(Error::Dimension { expected: algebra.dim(), actual: shift.dim() });
        }
        if !algebra.is_regular(&shift, tolerance) {
            return Err(Error::Domain(format!(
                "shift is not regular (centralizer dimension {} > rank {})",
                algebra.kernel_dim(&shift, tolerance),
                algebra.rank()
            )));
        }
        let leading = invariants.values(&shift);
        let mut solvers = vec![None; invariants.max_degree() + 1];
        for &d in invariants.degrees() {
            if solvers[d].is_none() {
                solvers[d] = Some(inverse_vandermonde(d));
            }
        }
        let generators =
            invariants.degrees().iter().enumerate().flat_map(|(i, &d)| (0..d).map(move |j| (i, j))).collect();
        Ok(MfFamily { invariants, shift, leading, solvers, generators })
    }

    pub fn algebra(&self) -> &'a LieAlgebra {
        self.invariants.algebra()
    }

    pub fn invariants(&self) -> &InvariantSystem<'a> {
        &self.invariants
    }

    pub fn shift(&self) -> &AlgebraElement<S> {
        &self.shift
    }

    /// Index pairs `(i, j)` with `0 <= j < d_i`, in evaluation order.
    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    /// Number of generators, `sum d_i = (n + r) / 2`.
    pub fn ell(&self) -> usize {
        self.generators.len()
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        let degrees = self.invariants.degrees();
        if i >= degrees.len() {
            return Err(Error::Index { index: i, len: degrees.len() });
        }
        if j >= degrees[i] {
            return Err(Error::Index { index: j, len: degrees[i] });
        }
        Ok(())
    }

    fn solver(&self, i: usize) -> &Mat<S> {
        self.solvers[self.invariants.degrees()[i]].as_ref().expect("solver built for every degree")
    }

    fn node(&self, x: &AlgebraElement<S>, lambda: usize) -> AlgebraElement<S> {
        x + &self.shift.scale(&S::from_i64(lambda as i64))
    }

    /// `f_i(x + lambda a) - f_i(a) lambda^{d_i}` at `lambda = 0..d_i`.
    fn reduced_values(&self, i: usize, x: &AlgebraElement<S>) -> Result<Vec<S>> {
        let d = self.invariants.degrees()[i];
        (0..d)
            .map(|lambda| {
                let v = self.invariants.eval(i, &self.node(x, lambda))?;
                let lead = self.leading[i].clone() * S::from_i64((lambda as i64).pow(d as u32));
                Ok(v - lead)
            })
            .collect()
    }

    /// `f_ij(x)`.
    pub fn eval(&self, i: usize, j: usize, x: &AlgebraElement<S>) -> Result<S> {
        self.check(i, j)?;
        let g = self.reduced_values(i, x)?;
        Ok(self.solver(i).row(j).into_iter().zip(g).fold(S::zero(), |acc, (w, v)| acc + w * v))
    }

    /// All generator values at `x`, in [`generators`](Self::generators) order.
    pub fn values(&self, x: &AlgebraElement<S>) -> Result<Vec<S>> {
        let mut out = Vec::with_capacity(self.ell());
        for (i, &d) in self.invariants.degrees().iter().enumerate() {
            let g = self.reduced_values(i, x)?;
            let solver = self.solver(i);
            out.extend(solver.mul_vec(&g).into_iter().take(d));
        }
        Ok(out)
    }

    /// Killing-dual gradient of `f_ij` at `x`.
    pub fn gradient(&self, i: usize, j: usize, x: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
        self.check(i, j)?;
        let d = self.invariants.degrees()[i];
        let grads =
            (0..d).map(|lambda| self.invariants.gradient(i, &self.node(x, lambda))).collect::<Result<Vec<_>>>()?;
        let weights = self.solver(i).row(j);
        Ok(AlgebraElement::combination(self.algebra().dim(), weights.into_iter().zip(grads)))
    }

    /// Gradients of every generator at `x`, in [`generators`](Self::generators) order.
    pub fn gradients(&self, x: &AlgebraElement<S>) -> Vec<AlgebraElement<S>> {
        let n = self.algebra().dim();
        let at_nodes: Vec<Vec<AlgebraElement<S>>> =
            (0..self.invariants.max_degree()).map(|lambda| self.invariants.gradients(&self.node(x, lambda))).collect();
        self.generators
            .iter()
            .map(|&(i, j)| {
                let weights = self.solver(i).row(j);
                AlgebraElement::combination(
                    n,
                    weights.into_iter().enumerate().map(|(lambda, w)| (w, at_nodes[lambda][i].clone())),
                )
            })
            .collect()
    }

    /// Rank of the `ell x n` matrix of generator gradients at `x`;
    /// singular values at most `tolerance * max(1, sigma_max)` count as zero.
    pub fn ambient_rank(&self, x: &AlgebraElement<S>, tolerance: f64) -> usize {
        let rows: Vec<Vec<S>> = self.gradients(x).into_iter().map(AlgebraElement::into_coords).collect();
        S::rank(&Mat::from_rows(&rows), RankThreshold::Floored(tolerance))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanType;
    use crate::scalar::Complex64;

    fn exact(coords: &[i64]) -> AlgebraElement<Exact> {
        AlgebraElement::new(coords.iter().map(|&v| exact_int(v)).collect())
    }

    #[test]
    fn generator_counts() {
        let sl2 = LieAlgebra::new(CartanType::A, 1).unwrap();
        let fam = MfFamily::new(InvariantSystem::new(&sl2), exact(&[1, 0, 0]), 0.0).unwrap();
        assert_eq!(fam.generators(), &[(0, 0), (0, 1)]);
        assert_eq!(fam.ell(), 2);

        for (ty, rank) in [(CartanType::A, 2), (CartanType::A, 4), (CartanType::B, 3), (CartanType::C, 2)] {
            let g = LieAlgebra::new(ty, rank).unwrap();
            let inv = InvariantSystem::new(&g);
            let ch = g.chevalley();
            // sum of simple root vectors is regular nilpotent
            let a = AlgebraElement::combination(
                g.dim(),
                g.root_system().simple_roots.iter().map(|&k| (exact_int(1), ch.root_vector::<Exact>(k))),
            );
            let fam = MfFamily::new(inv, a, 0.0).unwrap();
            assert_eq!(fam.ell(), g.ell());
            assert_eq!(fam.ell() - g.rank(), g.half_orbit_dim());
        }
    }

    #[test]
    fn rejects_non_regular_shift() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let ch = g.chevalley();
        let a = &ch.coroot::<Exact>(0) + &ch.coroot::<Exact>(1).scale(&exact_int(2));
        assert!(matches!(MfFamily::new(InvariantSystem::new(&g), a.clone(), 0.0), Err(Error::Domain(_))));
        assert!(matches!(MfFamily::new(InvariantSystem::new(&g), a.to_float(), 1e-8), Err(Error::Domain(_))));
    }

    #[test]
    fn sl2_linear_coefficient() {
        // x = beta e + gamma f + alpha h, f_11(x) = 2 gamma
        let g = LieAlgebra::new(CartanType::A, 1).unwrap();
        let fam = MfFamily::new(InvariantSystem::new(&g), exact(&[1, 0, 0]), 0.0).unwrap();
        let x = exact(&[5, -3, 2]);
        assert_eq!(fam.eval(0, 1, &x).unwrap(), exact_int(-6));
        assert_eq!(fam.eval(0, 0, &x).unwrap(), fam.invariants().eval(0, &x).unwrap());
        assert!(matches!(fam.eval(0, 2, &x), Err(Error::Index { .. })));

        // f_11 is linear, so its gradient does not depend on x
        let g1 = fam.gradient(0, 1, &x).unwrap();
        let g2 = fam.gradient(0, 1, &exact(&[0, 7, 1])).unwrap();
        assert_eq!(g1, g2);
        for k in 0..3 {
            let v = AlgebraElement::unit(3, k);
            let expect = g.to_matrix(&exact(&[1, 0, 0])).matmul(&g.to_matrix(&v)).trace() * exact_int(2);
            assert_eq!(g.killing(&g1, &v), expect);
        }
    }

    #[test]
    fn reconstruction_off_the_nodes() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let inv = InvariantSystem::new(&g);
        let a = exact(&[1, 2, 0, -1, 1, 0, 3, -2]);
        let fam = MfFamily::new(inv.clone(), a.clone(), 0.0).unwrap();
        let x = exact(&[0, 1, -2, 3, 1, 1, -1, 2]);
        let lambda = exact_int(7);
        for (i, &d) in inv.degrees().iter().enumerate() {
            let mut sum = inv.eval(i, &a).unwrap() * exact_int(7i64.pow(d as u32));
            let mut power = exact_int(1);
            for j in 0..d {
                sum += fam.eval(i, j, &x).unwrap() * power.clone();
                power *= lambda.clone();
            }
            assert_eq!(sum, inv.eval(i, &(&x + &a.scale(&lambda))).unwrap());
        }
        let values = fam.values(&x).unwrap();
        for (k, &(i, j)) in fam.generators().iter().enumerate() {
            assert_eq!(values[k], fam.eval(i, j, &x).unwrap());
            assert_eq!(fam.gradients(&x)[k], fam.gradient(i, j, &x).unwrap());
        }
        assert_eq!(fam.gradient(1, 0, &x).unwrap(), inv.gradient(1, &x).unwrap());
    }

    #[test]
    fn ambient_rank_examples() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let a = exact(&[1, 2, 0, -1, 1, 0, 3, -2]);
        let fam = MfFamily::new(InvariantSystem::new(&g), a, 0.0).unwrap();
        let x = exact(&[0, 1, -2, 3, 1, 1, -1, 2]);
        assert_eq!(fam.ambient_rank(&x, 0.0), 5);
        let ch = g.chevalley();
        let z = &ch.coroot::<Exact>(0) + &ch.coroot::<Exact>(1).scale(&exact_int(2));
        assert!(fam.ambient_rank(&z, 0.0) < 5);

        let sl2 = LieAlgebra::new(CartanType::A, 1).unwrap();
        let a = AlgebraElement::<Complex64>::unit(3, 0);
        let fam = MfFamily::new(InvariantSystem::new(&sl2), a.clone(), 1e-8).unwrap();
        assert!(fam.ambient_rank(&-&a, 1e-8) < 2);
    }
}
