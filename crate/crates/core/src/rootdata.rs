//! Root systems and Chevalley-type bases for the classical types A, B, C,
//! read off from their defining matrix realizations.
//!
//! Realizations:
//! - `A_r`: traceless `(r+1) x (r+1)` matrices.
//! - `B_r`: `(2r+1) x (2r+1)` matrices antisymmetric with respect to the
//!   anti-diagonal form, `X_ij = -X_{j'i'}` with `p' = N-1-p`.
//! - `C_r`: `2r x 2r` matrices preserving the form with anti-diagonal
//!   entries `+1` (upper half) and `-1` (lower half), so that
//!   `X_ij = -e_i e_j X_{j'i'}` with `e_p = +1` for `p < r`, `-1` otherwise.
//!
//! In all three the diagonal matrices form a Cartan subalgebra and the
//! upper-triangular part is the positive Borel `b+`, a coordinate subspace.

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::AlgebraElement;
use crate::linalg::{self, Mat};
use crate::scalar::{exact_int, Exact, Rational, Scalar};

pub const MAX_RANK: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            other => Err(Error::Config(format!("unsupported type '{other}' (expected A, B or C)"))),
        }
    }
}

impl CartanType {
    /// Size `N` of the defining matrices.
    pub fn defining_dim(self, rank: usize) -> usize {
        match self {
            CartanType::A => rank + 1,
            CartanType::B => 2 * rank + 1,
            CartanType::C => 2 * rank,
        }
    }

    /// Sign `s` with `X_ij = s * X_{j'i'}` for members of the realization.
    fn mirror_sign(self, rank: usize, i: usize, j: usize) -> i64 {
        let e = |p: usize| if p < rank { 1 } else { -1 };
        match self {
            CartanType::A => 0,
            CartanType::B => -1,
            CartanType::C => -e(i) * e(j),
        }
    }

    /// Dimension of the epsilon space the roots live in.
    fn epsilon_dim(self, rank: usize) -> usize {
        match self {
            CartanType::A => rank + 1,
            CartanType::B | CartanType::C => rank,
        }
    }

    /// Weight of the diagonal entry `p` as a vector in epsilon coordinates.
    fn diagonal_weight(self, rank: usize, p: usize) -> Vec<i64> {
        let dim = self.epsilon_dim(rank);
        let n = self.defining_dim(rank);
        let mut w = vec![0; dim];
        match self {
            CartanType::A => w[p] = 1,
            CartanType::B | CartanType::C => {
                if p < rank {
                    w[p] = 1;
                } else if p >= n - rank {
                    w[n - 1 - p] = -1;
                }
            }
        }
        w
    }
}

/// Nonzero entries of the realization element attached to position `(i, j)`.
fn position_entries(ty: CartanType, rank: usize, i: usize, j: usize) -> Vec<(usize, usize, i64)> {
    let n = ty.defining_dim(rank);
    if ty == CartanType::A {
        return vec![(i, j, 1)];
    }
    let (mi, mj) = (n - 1 - j, n - 1 - i);
    let s = ty.mirror_sign(rank, i, j);
    if (mi, mj) == (i, j) {
        if s == 1 {
            vec![(i, j, 1)]
        } else {
            Vec::new()
        }
    } else {
        vec![(i, j, 1), (mi, mj, s)]
    }
}

fn entries_matrix(n: usize, entries: &[(usize, usize, i64)]) -> Mat<Exact> {
    let mut m = Mat::zeros(n, n);
    for &(i, j, v) in entries {
        m[(i, j)] = exact_int(v);
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the basis of simple roots.
    pub coords: Vec<i64>,
    /// A matrix entry carrying this root space in the defining realization.
    pub position: (usize, usize),
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// Positive roots first (by height), then their negatives in the same order.
    pub roots: Vec<Root>,
    pub positive_roots: Vec<usize>,
    pub negative_roots: Vec<usize>,
    /// Simple roots in Dynkin order, as indices into `roots`.
    pub simple_roots: Vec<usize>,
    /// `cartan_matrix[a][b] = alpha_a(h_b)`.
    pub cartan_matrix: Vec<Vec<i64>>,
}

impl RootSystem {
    /// Dimension `n = r + |roots|` of the algebra.
    pub fn dimension(&self) -> usize {
        self.rank + self.roots.len()
    }

    pub fn defining_dim(&self) -> usize {
        self.cartan_type.defining_dim(self.rank)
    }

    /// Index of `-alpha`.
    pub fn negative_of(&self, root: usize) -> usize {
        let half = self.positive_roots.len();
        if root < half {
            root + half
        } else {
            root - half
        }
    }

    /// Index of the root with the given simple-root coordinates.
    pub fn find(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.coords == coords)
    }
}

pub fn build_root_system(ty: CartanType, rank: usize) -> Result<RootSystem> {
    if !(1..=MAX_RANK).contains(&rank) {
        return Err(Error::Config(format!("rank {rank} out of range 1..={MAX_RANK}")));
    }
    let n = ty.defining_dim(rank);
    let eps = |i: usize, j: usize| -> Vec<i64> {
        let (a, b) = (ty.diagonal_weight(rank, i), ty.diagonal_weight(rank, j));
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    };

    // Simple roots sit at (k, k+1) in all three realizations.
    let simple_eps: Vec<Vec<i64>> = (0..rank).map(|k| eps(k, k + 1)).collect();
    let square = Mat::from_fn(rank, rank, |c, k| exact_int(simple_eps[k][c]));
    let to_simple = |e: &[i64]| -> Result<Vec<i64>> {
        let rhs: Vec<Exact> = e[..rank].iter().map(|&v| exact_int(v)).collect();
        let sol =
            linalg::solve(&square, &rhs).ok_or_else(|| Error::Construction("simple roots are dependent".into()))?;
        sol.iter().map(exact_to_i64).collect()
    };

    let mut positives = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if position_entries(ty, rank, i, j).is_empty() {
                continue;
            }
            // one representative per mirror pair
            let mirror = (n - 1 - j, n - 1 - i);
            if ty != CartanType::A && mirror < (i, j) {
                continue;
            }
            positives.push(Root { coords: to_simple(&eps(i, j))?, position: (i, j) });
        }
    }
    positives.sort_by_key(|r| (r.height(), r.position));
    if !positives.iter().all(Root::is_positive) {
        return Err(Error::Construction("upper-triangular root is not positive".into()));
    }

    let negatives: Vec<Root> = positives
        .iter()
        .map(|r| Root { coords: r.coords.iter().map(|c| -c).collect(), position: (r.position.1, r.position.0) })
        .collect();
    let half = positives.len();
    let simple_roots = (0..rank)
        .map(|k| {
            positives
                .iter()
                .position(|r| r.position == (k, k + 1))
                .ok_or_else(|| Error::Construction(format!("simple root {k} missing")))
        })
        .collect::<Result<Vec<_>>>()?;

    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let cartan_matrix = (0..rank)
        .map(|a| {
            (0..rank).map(|b| 2 * dot(&simple_eps[a], &simple_eps[b]) / dot(&simple_eps[b], &simple_eps[b])).collect()
        })
        .collect();

    let mut roots = positives;
    roots.extend(negatives);
    Ok(RootSystem {
        cartan_type: ty,
        rank,
        roots,
        positive_roots: (0..half).collect(),
        negative_roots: (half..2 * half).collect(),
        simple_roots,
        cartan_matrix,
    })
}

fn exact_to_i64(z: &Exact) -> Result<i64> {
    if !z.im.is_zero() || !z.re.is_integer() {
        return Err(Error::Construction(format!("expected an integer, got {z}")));
    }
    z.re.to_integer().to_i64().ok_or_else(|| Error::Construction("integer overflow".into()))
}

/// Root vectors, simple coroots and Borel subspaces of one algebra.
///
/// Coordinates of the algebra are ordered as the roots of the system
/// (positive, then negative), followed by the `r` simple coroots.
#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    pub system: RootSystem,
    /// `e_alpha` in the defining realization, indexed like `system.roots`.
    pub root_matrices: Vec<Mat<Exact>>,
    /// Simple coroots `h_alpha = [e_alpha, e_-alpha]`, in simple-root order.
    pub coroot_matrices: Vec<Mat<Exact>>,
    /// `root_values[a][l] = alpha_a(h_l)`.
    pub root_values: Vec<Vec<i64>>,
    pub borel_plus: Vec<usize>,
    pub borel_minus: Vec<usize>,
}

impl ChevalleyBasis {
    pub fn dimension(&self) -> usize {
        self.system.dimension()
    }

    pub fn rank(&self) -> usize {
        self.system.rank
    }

    /// Coordinate index of the simple coroot `h_l`.
    pub fn coroot_coordinate(&self, l: usize) -> usize {
        self.system.roots.len() + l
    }

    /// Coordinate indices of the Cartan subalgebra.
    pub fn cartan_coordinates(&self) -> std::ops::Range<usize> {
        self.system.roots.len()..self.dimension()
    }

    /// All basis elements as defining-realization matrices, in coordinate order.
    pub fn basis_matrices(&self) -> Vec<Mat<Exact>> {
        self.root_matrices.iter().chain(&self.coroot_matrices).cloned().collect()
    }

    /// `alpha(x)` for the Cartan part of `x` (the root-vector coordinates are ignored).
    pub fn root_value<S: Scalar>(&self, root: usize, x: &AlgebraElement<S>) -> S {
        let base = self.system.roots.len();
        self.root_values[root]
            .iter()
            .enumerate()
            .fold(S::zero(), |acc, (l, &v)| acc + S::from_i64(v) * x.coords()[base + l].clone())
    }

    pub fn root_vector<S: Scalar>(&self, root: usize) -> AlgebraElement<S> {
        AlgebraElement::unit(self.dimension(), root)
    }

    pub fn coroot<S: Scalar>(&self, l: usize) -> AlgebraElement<S> {
        AlgebraElement::unit(self.dimension(), self.coroot_coordinate(l))
    }
}

pub fn chevalley_basis(system: &RootSystem) -> Result<ChevalleyBasis> {
    let ty = system.cartan_type;
    let rank = system.rank;
    let n = system.defining_dim();
    let half = system.positive_roots.len();
    let mut root_matrices = vec![Mat::zeros(n, n); system.roots.len()];

    for &k in &system.positive_roots {
        let (i, j) = system.roots[k].position;
        let e = entries_matrix(n, &position_entries(ty, rank, i, j));
        let f = entries_matrix(n, &position_entries(ty, rank, j, i));
        let h = e.commutator(&f);
        // alpha(H) = H_ii - H_jj on diagonal H
        let value = h[(i, i)].clone() - h[(j, j)].clone();
        if value.is_zero() {
            return Err(Error::Construction(format!("degenerate root pair at {:?}", (i, j))));
        }
        let f = f.scale(&(exact_int(2) / value));
        root_matrices[k] = e;
        root_matrices[k + half] = f;
    }

    let coroot_matrices: Vec<Mat<Exact>> = system
        .simple_roots
        .iter()
        .map(|&s| root_matrices[s].commutator(&root_matrices[system.negative_of(s)]))
        .collect();

    let root_values = system
        .roots
        .iter()
        .map(|root| {
            let (i, j) = root.position;
            coroot_matrices
                .iter()
                .map(|h| exact_to_i64(&(h[(i, i)].clone() - h[(j, j)].clone())))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    for (a, &s) in system.simple_roots.iter().enumerate() {
        if root_values[s] != system.cartan_matrix[a] {
            return Err(Error::Construction(format!(
                "coroot pairing {:?} disagrees with Cartan matrix row {:?}",
                root_values[s], system.cartan_matrix[a]
            )));
        }
    }

    let cartan = (system.roots.len()..system.dimension()).collect::<Vec<_>>();
    let borel_plus = system.positive_roots.iter().copied().chain(cartan.iter().copied()).collect();
    let borel_minus = system.negative_roots.iter().copied().chain(cartan).collect();

    Ok(ChevalleyBasis { system: system.clone(), root_matrices, coroot_matrices, root_values, borel_plus, borel_minus })
}

/// True iff `x` lies in `b+` up to `tolerance` (exactly, in exact mode).
pub fn borel_membership<S: Scalar>(basis: &ChevalleyBasis, x: &AlgebraElement<S>, tolerance: f64) -> bool {
    let outside = basis.system.negative_roots.iter().map(|&k| &x.coords()[k]);
    if S::EXACT {
        outside.into_iter().all(Zero::is_zero)
    } else {
        outside.map(|c| c.modulus().powi(2)).sum::<f64>().sqrt() <= tolerance
    }
}

/// Weight of each basis coordinate in simple-root coordinates (zero on the Cartan).
pub fn coordinate_weights(system: &RootSystem) -> Vec<Vec<i64>> {
    system.roots.iter().map(|r| r.coords.clone()).chain((0..system.rank).map(|_| vec![0; system.rank])).collect()
}

/// `alpha(h)` as an exact rational, for `h` given in coroot coordinates.
pub fn pair_root(basis: &ChevalleyBasis, root: usize, coroot_coords: &[Rational]) -> Rational {
    basis.root_values[root]
        .iter()
        .zip(coroot_coords)
        .fold(Rational::zero(), |acc, (&v, c)| acc + c * Rational::from_integer(v.into()))
}
