//! Lie algebra arithmetic: brackets, adjoint operators, the Killing form,
//! regularity, and motion along adjoint orbits.

use std::collections::HashMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, RankThreshold};
use crate::rootdata::{self, CartanType, ChevalleyBasis, RootSystem};
use crate::scalar::{exact_int, Complex64, Exact, Scalar};

/// Coordinates of an element of `g` in the Chevalley basis of its algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<S> {
    coords: Vec<S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn new(coords: Vec<S>) -> Self {
        AlgebraElement { coords }
    }

    pub fn zero(n: usize) -> Self {
        AlgebraElement { coords: vec![S::zero(); n] }
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut x = Self::zero(n);
        x.coords[k] = S::one();
        x
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scale(&self, s: &S) -> Self {
        AlgebraElement { coords: self.coords.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    /// Euclidean norm of the coordinate vector.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.modulus().powi(2)).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_float(&self) -> AlgebraElement<Complex64> {
        AlgebraElement { coords: self.coords.iter().map(Scalar::to_c64).collect() }
    }

    /// Linear combination `sum_k c_k v_k`.
    pub fn combination(n: usize, terms: impl IntoIterator<Item = (S, Self)>) -> Self {
        terms.into_iter().fold(Self::zero(n), |acc, (c, v)| &acc + &v.scale(&c))
    }
}

impl<S: Scalar> Add for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;

    fn add(self, rhs: Self) -> AlgebraElement<S> {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        AlgebraElement { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

impl<S: Scalar> Sub for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;

    fn sub(self, rhs: Self) -> AlgebraElement<S> {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        AlgebraElement { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.clone() - b.clone()).collect() }
    }
}

impl<S: Scalar> Neg for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;

    fn neg(self) -> AlgebraElement<S> {
        AlgebraElement { coords: self.coords.iter().map(|c| -c.clone()).collect() }
    }
}

/// Precomputed structure data in one arithmetic mode.
#[derive(Debug, Clone)]
pub struct Tables<S> {
    /// Nonzero entries `(row, col, value)` of each basis matrix.
    pub basis: Vec<Vec<(usize, usize, S)>>,
    /// `coord_k(X) = sum w * X[row][col]` over `coord_weights[k]`.
    pub coord_weights: Vec<Vec<(usize, usize, S)>>,
    /// Sparse `c_ij^k`: entry `i * n + j` lists `(k, c_ij^k)`.
    pub structure: Vec<Vec<(usize, S)>>,
    pub killing: Mat<S>,
    pub killing_inv: Mat<S>,
}

impl Tables<Exact> {
    fn convert<T: Scalar>(&self) -> Tables<T> {
        let triples = |v: &Vec<Vec<(usize, usize, Exact)>>| {
            v.iter().map(|e| e.iter().map(|(i, j, x)| (*i, *j, T::from_exact(x))).collect()).collect()
        };
        Tables {
            basis: triples(&self.basis),
            coord_weights: triples(&self.coord_weights),
            structure: self.structure.iter().map(|e| e.iter().map(|(k, x)| (*k, T::from_exact(x))).collect()).collect(),
            killing: self.killing.map(T::from_exact),
            killing_inv: self.killing_inv.map(T::from_exact),
        }
    }
}

/// A classical simple Lie algebra with its defining realization.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    basis: ChevalleyBasis,
    exact: Tables<Exact>,
    float: Tables<Complex64>,
}

type Sparse = HashMap<(usize, usize), Exact>;

fn sparse_commutator(a: &[(usize, usize, Exact)], b: &[(usize, usize, Exact)]) -> Sparse {
    let mut out: Sparse = HashMap::new();
    for (i, k, x) in a {
        for (k2, j, y) in b {
            if k == k2 {
                *out.entry((*i, *j)).or_insert_with(Exact::zero) += x.clone() * y.clone();
            }
        }
    }
    for (i, k, y) in b {
        for (k2, j, x) in a {
            if k == k2 {
                *out.entry((*i, *j)).or_insert_with(Exact::zero) -= y.clone() * x.clone();
            }
        }
    }
    out
}

impl LieAlgebra {
    pub fn new(ty: CartanType, rank: usize) -> Result<Self> {
        let system = rootdata::build_root_system(ty, rank)?;
        let basis = rootdata::chevalley_basis(&system)?;
        let n = basis.dimension();
        let nroots = system.roots.len();

        let mats = basis.basis_matrices();
        let sparse_basis: Vec<Vec<(usize, usize, Exact)>> = mats
            .iter()
            .map(|m| {
                let mut e = Vec::new();
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        if !m[(i, j)].is_zero() {
                            e.push((i, j, m[(i, j)].clone()));
                        }
                    }
                }
                e
            })
            .collect();

        // Root coordinates read a single entry; Cartan coordinates solve a
        // triangular system on the first r diagonal entries.
        let mut coord_weights: Vec<Vec<(usize, usize, Exact)>> = Vec::with_capacity(n);
        for (k, root) in system.roots.iter().enumerate() {
            let (p, q) = root.position;
            coord_weights.push(vec![(p, q, exact_int(1) / mats[k][(p, q)].clone())]);
        }
        let diag = Mat::from_fn(rank, rank, |p, l| basis.coroot_matrices[l][(p, p)].clone());
        let diag_inv =
            linalg::inverse(&diag).ok_or_else(|| Error::Construction("Cartan coordinates not solvable".into()))?;
        for l in 0..rank {
            coord_weights.push(
                (0..rank).filter(|&p| !diag_inv[(l, p)].is_zero()).map(|p| (p, p, diag_inv[(l, p)].clone())).collect(),
            );
        }
        let mut by_position: HashMap<(usize, usize), Vec<(usize, Exact)>> = HashMap::new();
        for (k, w) in coord_weights.iter().enumerate() {
            for (p, q, v) in w {
                by_position.entry((*p, *q)).or_default().push((k, v.clone()));
            }
        }

        let mut structure = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let c = sparse_commutator(&sparse_basis[i], &sparse_basis[j]);
                let mut coords: HashMap<usize, Exact> = HashMap::new();
                for (pos, v) in c {
                    if let Some(ws) = by_position.get(&pos) {
                        for (k, w) in ws {
                            *coords.entry(*k).or_insert_with(Exact::zero) += w.clone() * v.clone();
                        }
                    }
                }
                let mut entries: Vec<(usize, Exact)> = coords.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                entries.sort_by_key(|(k, _)| *k);
                structure.push(entries);
            }
        }

        let killing = killing_matrix(&system, n, &structure);
        let killing_inv =
            linalg::inverse(&killing).ok_or_else(|| Error::Construction("Killing form is degenerate".into()))?;
        debug_assert_eq!(nroots + rank, n);

        let exact = Tables { basis: sparse_basis, coord_weights, structure, killing, killing_inv };
        let float = exact.convert();
        let alg = LieAlgebra { basis, exact, float };

        for (k, m) in mats.iter().enumerate() {
            if alg.from_matrix::<Exact>(m) != AlgebraElement::unit(n, k) {
                return Err(Error::Construction(format!("coordinate map fails on basis element {k}")));
            }
        }
        Ok(alg)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.basis.system.cartan_type
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.basis.dimension()
    }

    /// Rank `r`.
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// `(n + r) / 2`, the number of Mishchenko-Fomenko generators.
    pub fn ell(&self) -> usize {
        (self.dim() + self.rank()) / 2
    }

    /// `(n - r) / 2`, half the dimension of a regular orbit.
    pub fn half_orbit_dim(&self) -> usize {
        (self.dim() - self.rank()) / 2
    }

    /// Size `N` of the defining matrices.
    pub fn defining_dim(&self) -> usize {
        self.basis.system.defining_dim()
    }

    pub fn chevalley(&self) -> &ChevalleyBasis {
        &self.basis
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.basis.system
    }

    pub fn exact_tables(&self) -> &Tables<Exact> {
        &self.exact
    }

    pub fn float_tables(&self) -> &Tables<Complex64> {
        &self.float
    }

    pub fn tables<S: Scalar>(&self) -> &Tables<S> {
        S::tables(self)
    }

    fn check_dim<S: Scalar>(&self, x: &AlgebraElement<S>) -> Result<()> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.dim(), actual: x.dim() })
        }
    }

    /// Defining-realization matrix of `x`.
    pub fn to_matrix<S: Scalar>(&self, x: &AlgebraElement<S>) -> Mat<S> {
        let n = self.defining_dim();
        let mut m = Mat::<S>::zeros(n, n);
        for (c, entries) in x.coords().iter().zip(&self.tables::<S>().basis) {
            if c.is_zero() {
                continue;
            }
            for (i, j, v) in entries {
                m[(*i, *j)] = m[(*i, *j)].clone() + c.clone() * v.clone();
            }
        }
        m
    }

    /// Coordinates of a matrix assumed to lie in the realization.
    pub fn from_matrix<S: Scalar>(&self, m: &Mat<S>) -> AlgebraElement<S> {
        AlgebraElement::new(
            self.tables::<S>()
                .coord_weights
                .iter()
                .map(|w| w.iter().fold(S::zero(), |acc, (i, j, v)| acc + v.clone() * m[(*i, *j)].clone()))
                .collect(),
        )
    }

    /// Like [`from_matrix`](Self::from_matrix) but re-expands the result and
    /// fails if it does not reproduce `m` (relative `tolerance`; exact in exact mode).
    pub fn from_matrix_checked<S: Scalar>(&self, m: &Mat<S>, tolerance: f64) -> Result<AlgebraElement<S>> {
        let x = self.from_matrix(m);
        let diff = self.to_matrix(&x).sub(m);
        let ok = if S::EXACT { diff.is_zero() } else { diff.max_modulus() <= tolerance * m.max_modulus().max(1.0) };
        if ok {
            Ok(x)
        } else {
            Err(Error::Construction(format!(
                "matrix is not in the {}{} realization (residual {:.3e})",
                self.cartan_type(),
                self.rank(),
                diff.max_modulus()
            )))
        }
    }

    pub fn bracket<S: Scalar>(&self, x: &AlgebraElement<S>, y: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let n = self.dim();
        let structure = &self.tables::<S>().structure;
        let mut out = vec![S::zero(); n];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi.clone() * yj.clone();
                for (k, c) in &structure[i * n + j] {
                    out[*k] = out[*k].clone() + xy.clone() * c.clone();
                }
            }
        }
        Ok(AlgebraElement::new(out))
    }

    /// Matrix of `ad_x` in the Chevalley basis; column `j` is `[x, b_j]`.
    pub fn ad_matrix<S: Scalar>(&self, x: &AlgebraElement<S>) -> Mat<S> {
        let n = self.dim();
        let structure = &self.tables::<S>().structure;
        let mut m = Mat::<S>::zeros(n, n);
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in &structure[i * n + j] {
                    m[(*k, j)] = m[(*k, j)].clone() + xi.clone() * c.clone();
                }
            }
        }
        m
    }

    pub fn killing<S: Scalar>(&self, x: &AlgebraElement<S>, y: &AlgebraElement<S>) -> S {
        let k = &self.tables::<S>().killing;
        let ky = k.mul_vec(y.coords());
        x.coords().iter().zip(ky).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    /// The element `v` with `kappa(v, b_m) = covector[m]` for every basis element.
    pub fn killing_dual<S: Scalar>(&self, covector: &[S]) -> AlgebraElement<S> {
        AlgebraElement::new(self.tables::<S>().killing_inv.mul_vec(covector))
    }

    /// `trace(Y b_m)` for every basis matrix `b_m`.
    pub fn trace_pairing<S: Scalar>(&self, y: &Mat<S>) -> Vec<S> {
        self.tables::<S>()
            .basis
            .iter()
            .map(|entries| entries.iter().fold(S::zero(), |acc, (i, j, v)| acc + y[(*j, *i)].clone() * v.clone()))
            .collect()
    }

    /// `dim ker(ad_x)`, exact in exact mode, else counting singular values
    /// at most `tolerance * sigma_max`.
    pub fn kernel_dim<S: Scalar>(&self, x: &AlgebraElement<S>, tolerance: f64) -> usize {
        self.dim() - S::rank(&self.ad_matrix(x), RankThreshold::Relative(tolerance))
    }

    pub fn is_regular<S: Scalar>(&self, x: &AlgebraElement<S>, tolerance: f64) -> bool {
        self.kernel_dim(x, tolerance) == self.rank()
    }

    /// `exp(Y) X exp(-Y)` computed in the defining realization.
    pub fn orbit_push(
        &self,
        x: &AlgebraElement<Complex64>,
        y: &AlgebraElement<Complex64>,
    ) -> Result<AlgebraElement<Complex64>> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let ym = self.to_matrix(y);
        let g = linalg::expm(&ym);
        let g_inv = linalg::expm(&ym.scale(&Complex64::new(-1.0, 0.0)));
        let pushed = g.matmul(&self.to_matrix(x)).matmul(&g_inv);
        self.from_matrix_checked(&pushed, 1e-9)
    }

    /// Conjugation by the root-group element `exp(t e_alpha)`, exact in exact mode.
    pub fn root_push<S: Scalar>(&self, x: &AlgebraElement<S>, root: usize, t: &S) -> Result<AlgebraElement<S>> {
        self.check_dim(x)?;
        let e = self.to_matrix(&self.basis.root_vector::<S>(root)).scale(t);
        let nilpotent = || Error::Construction(format!("root vector {root} is not nilpotent"));
        let g = linalg::nilpotent_exp(&e).ok_or_else(nilpotent)?;
        let g_inv = linalg::nilpotent_exp(&e.scale(&-S::one())).ok_or_else(nilpotent)?;
        let pushed = g.matmul(&self.to_matrix(x)).matmul(&g_inv);
        self.from_matrix_checked(&pushed, 1e-9)
    }

    /// A basis of `T_x O = image(ad_x)`: orthonormal in floating mode,
    /// pivot columns of `ad_x` in exact mode.
    pub fn tangent_basis<S: Scalar>(&self, x: &AlgebraElement<S>, tolerance: f64) -> Result<Vec<AlgebraElement<S>>> {
        self.check_dim(x)?;
        let basis = S::column_basis(&self.ad_matrix(x), RankThreshold::Relative(tolerance));
        let expected = self.dim() - self.rank();
        if basis.len() != expected {
            return Err(Error::Domain(format!(
                "tangent space has dimension {} instead of {expected}: point is not regular at tolerance {tolerance:e}",
                basis.len()
            )));
        }
        Ok(basis.into_iter().map(AlgebraElement::new).collect())
    }

    /// Structure constants as `{n, r, type, constants: [[i, j, k, num, den], ...]}`.
    pub fn structure_constants_json(&self) -> serde_json::Value {
        let n = self.dim();
        let mut constants = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in &self.exact.structure[i * n + j] {
                    let big = |v: &num_bigint::BigInt| v.to_i64().map_or_else(|| json!(v.to_string()), |v| json!(v));
                    constants.push(json!([i, j, k, big(c.re.numer()), big(c.re.denom())]));
                }
            }
        }
        json!({
            "n": n,
            "r": self.rank(),
            "type": self.cartan_type().to_string(),
            "constants": constants,
        })
    }
}

/// `trace(ad_i ad_j)`, skipping pairs whose weights do not cancel.
fn killing_matrix(system: &RootSystem, n: usize, structure: &[Vec<(usize, Exact)>]) -> Mat<Exact> {
    let weights = rootdata::coordinate_weights(system);
    let lookup = |i: usize, m: usize, k: usize| -> Option<&Exact> {
        structure[i * n + m].iter().find(|(kk, _)| *kk == k).map(|(_, v)| v)
    };
    Mat::from_fn(n, n, |i, j| {
        let cancels = weights[i].iter().zip(&weights[j]).all(|(a, b)| a + b == 0);
        if !cancels {
            return Exact::zero();
        }
        // (ad_i ad_j)_{mm} = sum_k (ad_i)_{mk} (ad_j)_{km} = sum_k c_ik^m c_jm^k
        let mut acc = Exact::zero();
        for m in 0..n {
            for (k, cjm) in &structure[j * n + m] {
                if let Some(cik) = lookup(i, *k, m) {
                    acc += cik.clone() * cjm.clone();
                }
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::exact_int;

    fn sl2() -> LieAlgebra {
        LieAlgebra::new(CartanType::A, 1).unwrap()
    }

    fn elem(coords: &[i64]) -> AlgebraElement<Exact> {
        AlgebraElement::new(coords.iter().map(|&v| exact_int(v)).collect())
    }

    // sl2 basis order: e, f, h0
    #[test]
    fn sl2_bracket_relations() {
        let g = sl2();
        let (e, f, h) = (elem(&[1, 0, 0]), elem(&[0, 1, 0]), elem(&[0, 0, 1]));
        assert_eq!(g.bracket(&e, &f).unwrap(), h);
        assert_eq!(g.bracket(&h, &e).unwrap(), e.scale(&exact_int(2)));
        assert_eq!(g.bracket(&h, &f).unwrap(), f.scale(&exact_int(-2)));
        let x = elem(&[3, -2, 5]);
        assert!(g.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn bracket_rejects_wrong_dimension() {
        let g = sl2();
        let bad = elem(&[1, 0]);
        assert!(matches!(g.bracket(&bad, &elem(&[1, 0, 0])), Err(Error::Dimension { .. })));
    }

    #[test]
    fn sl2_ad_matrices() {
        let g = sl2();
        let ad_h = g.ad_matrix(&elem(&[0, 0, 1]));
        let mut expect = Mat::zeros(3, 3);
        expect[(0, 0)] = exact_int(2);
        expect[(1, 1)] = exact_int(-2);
        assert_eq!(ad_h, expect);
        assert!(g.ad_matrix(&elem(&[0, 0, 0])).is_zero());

        let ad_e = g.ad_matrix(&elem(&[1, 0, 0]));
        assert_eq!(Exact::rank(&ad_e, RankThreshold::Relative(0.0)), 2);
        assert!(ad_e.matmul(&ad_e).matmul(&ad_e).is_zero());
        assert!(!ad_e.matmul(&ad_e).is_zero());
    }

    #[test]
    fn sl2_killing_values() {
        let g = sl2();
        let (e, f, h) = (elem(&[1, 0, 0]), elem(&[0, 1, 0]), elem(&[0, 0, 1]));
        assert_eq!(g.killing(&h, &h), exact_int(8));
        assert_eq!(g.killing(&e, &e), exact_int(0));
        assert_eq!(g.killing(&e, &f), exact_int(4));
    }

    #[test]
    fn killing_is_proportional_to_trace_form() {
        // kappa = 2N tr (A), (N-2) tr (B), (N+2) tr (C)
        for (ty, rank) in [(CartanType::A, 3), (CartanType::B, 2), (CartanType::C, 3)] {
            let g = LieAlgebra::new(ty, rank).unwrap();
            let nn = g.defining_dim() as i64;
            let factor = match ty {
                CartanType::A => 2 * nn,
                CartanType::B => nn - 2,
                CartanType::C => nn + 2,
            };
            let n = g.dim();
            for i in 0..n {
                for j in 0..n {
                    let bi = g.to_matrix(&AlgebraElement::<Exact>::unit(n, i));
                    let bj = g.to_matrix(&AlgebraElement::<Exact>::unit(n, j));
                    let tr = bi.matmul(&bj).trace() * exact_int(factor);
                    assert_eq!(g.exact_tables().killing[(i, j)], tr, "{ty}{rank} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn basis_matrices_preserve_the_form() {
        for ty in [CartanType::B, CartanType::C] {
            let g = LieAlgebra::new(ty, 3).unwrap();
            let nn = g.defining_dim();
            let form = Mat::from_fn(nn, nn, |i, j| {
                if i + j != nn - 1 {
                    exact_int(0)
                } else if ty == CartanType::C && i >= nn / 2 {
                    exact_int(-1)
                } else {
                    exact_int(1)
                }
            });
            for k in 0..g.dim() {
                let x = g.to_matrix(&AlgebraElement::<Exact>::unit(g.dim(), k));
                let lhs = x.transpose().matmul(&form).add(&form.matmul(&x));
                assert!(lhs.is_zero(), "{ty}: basis element {k}");
            }
        }
    }

    #[test]
    fn regularity_examples() {
        let g = sl2();
        assert!(g.is_regular(&elem(&[1, 0, 0]), 1e-8));
        assert!(!g.is_regular(&elem(&[0, 0, 0]), 1e-8));
        assert!(!g.is_regular(&AlgebraElement::<Complex64>::zero(3), 1e-8));

        let sl3 = LieAlgebra::new(CartanType::A, 2).unwrap();
        // diag(1,1,-2) = h1 + 2 h2
        let n = sl3.dim();
        let mut x = AlgebraElement::<Exact>::zero(n);
        let ch = sl3.chevalley();
        x = &x + &ch.coroot(0);
        x = &x + &ch.coroot::<Exact>(1).scale(&exact_int(2));
        let m = sl3.to_matrix(&x);
        assert_eq!(m[(0, 0)], exact_int(1));
        assert_eq!(m[(1, 1)], exact_int(1));
        assert_eq!(m[(2, 2)], exact_int(-2));
        assert_eq!(sl3.kernel_dim(&x, 0.0), 4);
        assert!(!sl3.is_regular(&x, 0.0));
        assert!(!sl3.is_regular(&x.to_float(), 1e-8));
    }

    #[test]
    fn tangent_basis_examples() {
        let g = sl2();
        let h = elem(&[0, 0, 1]);
        let t = g.tangent_basis(&h, 1e-8).unwrap();
        assert_eq!(t.len(), 2);
        // image of ad_h is span{e, f}: no Cartan component
        assert!(t.iter().all(|v| v.coords()[2].is_zero()));

        let e = elem(&[1, 0, 0]);
        let t = g.tangent_basis(&e, 1e-8).unwrap();
        assert!(t.iter().all(|v| v.coords()[1].is_zero()));

        assert!(matches!(g.tangent_basis(&elem(&[0, 0, 0]), 1e-8), Err(Error::Domain(_))));
    }

    #[test]
    fn orbit_push_identity_and_invariance() {
        let g = sl2();
        let e = elem(&[1, 0, 0]).to_float();
        let f = elem(&[0, 1, 0]).to_float();
        let zero = AlgebraElement::<Complex64>::zero(3);
        let same = g.orbit_push(&e, &zero).unwrap();
        assert!((&same - &e).norm() < 1e-15);

        let pushed = g.orbit_push(&e, &f).unwrap();
        let tr2 = |x: &AlgebraElement<Complex64>| {
            let m = g.to_matrix(x);
            m.matmul(&m).trace()
        };
        assert!((tr2(&pushed) - tr2(&e)).norm() < 1e-12);
        assert!((&pushed - &e).norm() > 0.1);
    }

    #[test]
    fn root_push_is_exact_conjugation() {
        let g = LieAlgebra::new(CartanType::C, 2).unwrap();
        let n = g.dim();
        let x = AlgebraElement::new((0..n as i64).map(|v| exact_int(v % 5 - 2)).collect());
        let y = g.root_push(&x, 3, &exact_int(2)).unwrap();
        let back = g.root_push(&y, 3, &exact_int(-2)).unwrap();
        assert_eq!(back, x);
        let m = g.to_matrix(&x);
        let my = g.to_matrix(&y);
        assert_eq!(m.matmul(&m).trace(), my.matmul(&my).trace());
    }

    #[test]
    fn structure_constants_export() {
        let v = sl2().structure_constants_json();
        assert_eq!(v["n"], 3);
        assert_eq!(v["r"], 1);
        assert_eq!(v["type"], "A");
        // [e, f] = h, [h, e] = 2e, ... : six nonzero constants
        assert_eq!(v["constants"].as_array().unwrap().len(), 6);
    }
}
