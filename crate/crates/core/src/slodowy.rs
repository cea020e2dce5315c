//! The principal sl2-triple attached to the standard Borel pair, its
//! Slodowy slice `xi + ker(ad_eta)`, and the slice/orbit intersection.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::invariants::InvariantSystem;
use crate::liealg::{AlgebraElement, LieAlgebra};
use crate::linalg::{self, Mat, RankThreshold};
use crate::rootdata;
use crate::sampling;
use crate::scalar::{exact_int, exact_real, Complex64, Exact, Rational, Scalar};

/// `(xi, h, eta)` with `[h, xi] = 2 xi`, `[h, eta] = -2 eta`, `[xi, eta] = h`.
///
/// `h` is the Cartan element with `alpha(h) = -2` on every simple root,
/// `-h = sum c_alpha h_alpha`, `xi = sum e_-alpha` and `eta = sum c_alpha e_alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Triple {
    pub xi: AlgebraElement<Exact>,
    pub h: AlgebraElement<Exact>,
    pub eta: AlgebraElement<Exact>,
    /// `c_alpha`, in simple-root order.
    pub coefficients: Vec<Rational>,
}

pub fn principal_sl2(algebra: &LieAlgebra) -> Result<Sl2Triple> {
    let basis = algebra.chevalley();
    let system = algebra.root_system();
    let r = algebra.rank();
    let n = algebra.dim();

    // alpha_k(h) = sum_l x_l alpha_k(h_l) = -2
    let cartan = Mat::from_fn(r, r, |k, l| exact_int(system.cartan_matrix[k][l]));
    let x = linalg::solve(&cartan, &vec![exact_int(-2); r])
        .ok_or_else(|| Error::Construction("Cartan matrix is singular".into()))?;
    let coefficients: Vec<Rational> = x.iter().map(|v| -v.re.clone()).collect();

    let h = AlgebraElement::combination(n, x.iter().enumerate().map(|(l, v)| (v.clone(), basis.coroot(l))));
    let xi = AlgebraElement::combination(
        n,
        system.simple_roots.iter().map(|&s| (exact_int(1), basis.root_vector(system.negative_of(s)))),
    );
    let eta = AlgebraElement::combination(
        n,
        system.simple_roots.iter().zip(&coefficients).map(|(&s, c)| (exact_real(c.clone()), basis.root_vector(s))),
    );
    let triple = Sl2Triple { xi, h, eta, coefficients };
    check_triple(algebra, &triple)?;
    Ok(triple)
}

fn check_triple(algebra: &LieAlgebra, t: &Sl2Triple) -> Result<()> {
    let fail = |what: &str| Err(Error::Construction(format!("principal triple: {what}")));
    if algebra.bracket(&t.h, &t.xi)? != t.xi.scale(&exact_int(2)) {
        return fail("[h, xi] != 2 xi");
    }
    if algebra.bracket(&t.h, &t.eta)? != t.eta.scale(&exact_int(-2)) {
        return fail("[h, eta] != -2 eta");
    }
    if algebra.bracket(&t.xi, &t.eta)? != t.h {
        return fail("[xi, eta] != h");
    }
    let basis = algebra.chevalley();
    if !algebra.root_system().simple_roots.iter().all(|&s| basis.root_value(s, &t.h) == exact_int(-2)) {
        return fail("alpha(h) != -2 on a simple root");
    }
    let minus_h = AlgebraElement::combination(
        algebra.dim(),
        t.coefficients.iter().enumerate().map(|(l, c)| (exact_real(c.clone()), basis.coroot(l))),
    );
    if minus_h != -&t.h {
        return fail("-h != sum c_alpha h_alpha");
    }
    if !algebra.is_regular(&t.xi, 0.0) {
        return fail("xi is not regular");
    }
    Ok(())
}

/// `ad_h` eigenvalue of each basis coordinate (`alpha(h)` on root vectors, 0 on the Cartan).
pub fn grading(algebra: &LieAlgebra, triple: &Sl2Triple) -> Result<Vec<i64>> {
    let basis = algebra.chevalley();
    let roots = (0..algebra.root_system().roots.len()).map(|k| {
        let v = basis.root_value(k, &triple.h);
        if v.im.is_zero() && v.re.is_integer() {
            i64::try_from(v.re.to_integer()).map_err(|_| Error::Construction("grade overflow".into()))
        } else {
            Err(Error::Construction(format!("non-integral grade {v}")))
        }
    });
    roots.chain((0..algebra.rank()).map(|_| Ok(0))).collect()
}

/// The affine slice `xi + ker(ad_eta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlodowySlice {
    pub base: AlgebraElement<Exact>,
    /// Homogeneous basis of `ker(ad_eta)`, by decreasing `ad_h` eigenvalue.
    pub kernel_basis: Vec<AlgebraElement<Exact>>,
    /// `ad_h` eigenvalue of each kernel basis vector.
    pub grades: Vec<i64>,
}

impl SlodowySlice {
    pub fn dim(&self) -> usize {
        self.kernel_basis.len()
    }

    /// `xi + sum t_k w_k` in floating point.
    pub fn point(&self, params: &[Complex64]) -> AlgebraElement<Complex64> {
        let n = self.base.dim();
        let offset =
            AlgebraElement::combination(n, params.iter().zip(&self.kernel_basis).map(|(t, w)| (*t, w.to_float())));
        &self.base.to_float() + &offset
    }
}

pub fn slodowy_slice(algebra: &LieAlgebra, triple: &Sl2Triple) -> Result<SlodowySlice> {
    let n = algebra.dim();
    let grades = grading(algebra, triple)?;
    let ad_eta = algebra.ad_matrix(&triple.eta);

    // ad_eta lowers the grade by 2, so its kernel splits over the grade spaces.
    let mut levels: Vec<i64> = grades.clone();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();
    let mut kernel_basis = Vec::new();
    let mut kernel_grades = Vec::new();
    for level in levels {
        let coords: Vec<usize> = (0..n).filter(|&k| grades[k] == level).collect();
        let block = Mat::from_fn(n, coords.len(), |i, j| ad_eta[(i, coords[j])].clone());
        for v in linalg::nullspace(&block) {
            let mut full = vec![Exact::zero(); n];
            for (c, &k) in v.into_iter().zip(&coords) {
                full[k] = c;
            }
            kernel_basis.push(AlgebraElement::new(full));
            kernel_grades.push(level);
        }
    }

    let kernel_dim = n - Exact::rank(&ad_eta, RankThreshold::Relative(0.0));
    if kernel_dim != algebra.rank() || kernel_basis.len() != kernel_dim {
        return Err(Error::Construction(format!(
            "ker(ad_eta) has dimension {kernel_dim} (graded basis {}), expected {}",
            kernel_basis.len(),
            algebra.rank()
        )));
    }
    for w in &kernel_basis {
        if !algebra.bracket(&triple.eta, w)?.is_zero() {
            return Err(Error::Construction("kernel vector not annihilated by ad_eta".into()));
        }
        if !rootdata::borel_membership(algebra.chevalley(), w, 0.0) {
            return Err(Error::Construction("ker(ad_eta) is not contained in b+".into()));
        }
    }
    Ok(SlodowySlice { base: triple.xi.clone(), kernel_basis, grades: kernel_grades })
}

/// Outcome of checking the `ad_h` spectrum on `b+` and on `ker(ad_eta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCheck {
    /// Distinct eigenvalues of `ad_h` on `b+`, decreasing.
    pub borel_eigenvalues: Vec<i64>,
    /// Eigenvalue of each kernel basis vector.
    pub kernel_eigenvalues: Vec<i64>,
    pub passed: bool,
}

pub fn ad_h_eigen_check(algebra: &LieAlgebra, triple: &Sl2Triple, slice: &SlodowySlice) -> Result<EigenCheck> {
    let grades = grading(algebra, triple)?;
    let n = algebra.dim();
    let mut passed = true;

    let mut borel_eigenvalues = Vec::new();
    for &k in &algebra.chevalley().borel_plus {
        let b = AlgebraElement::<Exact>::unit(n, k);
        passed &= algebra.bracket(&triple.h, &b)? == b.scale(&exact_int(grades[k]));
        borel_eigenvalues.push(grades[k]);
    }
    borel_eigenvalues.sort_unstable_by(|a, b| b.cmp(a));
    borel_eigenvalues.dedup();

    for (w, &g) in slice.kernel_basis.iter().zip(&slice.grades) {
        passed &= algebra.bracket(&triple.h, w)? == w.scale(&exact_int(g));
    }
    passed &= borel_eigenvalues.iter().chain(&slice.grades).all(|&g| g <= 0);
    Ok(EigenCheck { borel_eigenvalues, kernel_eigenvalues: slice.grades.clone(), passed })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOptions {
    /// Independent starts that must all converge.
    pub starts: usize,
    pub max_iterations: usize,
    /// Extra starts allowed to replace divergent ones.
    pub max_restarts: usize,
    /// Bound on `max_i |f_i(s) - c_i| / max(1, |c_i|)`.
    pub residual_tol: f64,
    /// Bound on the relative spread of the converged parameter vectors.
    pub agreement_tol: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { starts: 10, max_iterations: 100, max_restarts: 10, residual_tol: 1e-10, agreement_tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceIntersection {
    pub point: AlgebraElement<Complex64>,
    /// Slice parameters `t` with `point = xi + sum t_k w_k`.
    pub parameters: Vec<Complex64>,
    pub residual: f64,
    /// Largest relative distance between the parameters found from different starts.
    pub spread: f64,
    pub converged_starts: usize,
    pub failed_starts: usize,
}

struct NewtonRun {
    params: Vec<Complex64>,
    residual: f64,
}

fn scaled_residual(values: &[Complex64], targets: &[Complex64]) -> f64 {
    values.iter().zip(targets).map(|(v, c)| (v - c).norm() / c.norm().max(1.0)).fold(0.0, f64::max)
}

fn newton(
    invariants: &InvariantSystem,
    slice: &SlodowySlice,
    kernel: &[AlgebraElement<Complex64>],
    targets: &[Complex64],
    start: Vec<Complex64>,
    max_iterations: usize,
) -> NewtonRun {
    let algebra = invariants.algebra();
    let r = kernel.len();
    let mut t = start;
    let mut s = slice.point(&t);
    let mut values = invariants.values(&s);
    let mut residual = scaled_residual(&values, targets);
    for _ in 0..max_iterations {
        if residual == 0.0 {
            break;
        }
        let grads = invariants.gradients(&s);
        let jac = Mat::from_fn(r, r, |i, k| algebra.killing(&grads[i], &kernel[k]));
        let rhs: Vec<Complex64> = values.iter().zip(targets).map(|(v, c)| c - v).collect();
        let Some(step) = linalg::solve(&jac, &rhs) else {
            break;
        };
        // halve the step until the residual decreases
        let mut scale = 1.0;
        let mut improved = None;
        for _ in 0..40 {
            let trial: Vec<Complex64> = t.iter().zip(&step).map(|(a, d)| a + d * scale).collect();
            let trial_s = slice.point(&trial);
            let trial_values = invariants.values(&trial_s);
            let trial_residual = scaled_residual(&trial_values, targets);
            if trial_residual < residual {
                improved = Some((trial, trial_s, trial_values, trial_residual));
                break;
            }
            scale *= 0.5;
        }
        let Some((nt, ns, nv, nr)) = improved else {
            break;
        };
        t = nt;
        s = ns;
        values = nv;
        residual = nr;
    }
    NewtonRun { params: t, residual }
}

/// Finds the point of the slice on the regular orbit with invariant values
/// `targets`, running damped Newton from `options.starts` seeded starts and
/// requiring them to agree.
pub fn intersect_orbit(
    invariants: &InvariantSystem,
    slice: &SlodowySlice,
    targets: &[Complex64],
    seed: u64,
    options: &NewtonOptions,
) -> Result<SliceIntersection> {
    let r = slice.dim();
    if targets.len() != invariants.len() {
        return Err(Error::Dimension { expected: invariants.len(), actual: targets.len() });
    }
    let kernel: Vec<AlgebraElement<Complex64>> = slice.kernel_basis.iter().map(AlgebraElement::to_float).collect();

    let mut runs: Vec<NewtonRun> = Vec::new();
    let mut failed = 0;
    let mut stream = 0u64;
    while runs.len() < options.starts {
        let mut rng = sampling::rng(sampling::sub_seed(seed, stream));
        stream += 1;
        let start = sampling::gaussian_vector(r, &mut rng);
        let run = newton(invariants, slice, &kernel, targets, start, options.max_iterations);
        if run.residual <= options.residual_tol {
            runs.push(run);
        } else {
            failed += 1;
            if failed > options.max_restarts {
                return Err(Error::Solver(format!(
                    "Newton failed from {failed} starts (best residual {:.3e})",
                    run.residual
                )));
            }
        }
    }

    let first = &runs[0];
    let scale = first.params.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let spread = runs
        .iter()
        .flat_map(|run| run.params.iter().zip(&first.params).map(|(a, b)| (a - b).norm()))
        .fold(0.0, f64::max)
        / scale;
    if spread > options.agreement_tol {
        return Err(Error::Solver(format!(
            "starts converged to different slice points (relative spread {spread:.3e})"
        )));
    }
    Ok(SliceIntersection {
        point: slice.point(&first.params),
        parameters: first.params.clone(),
        residual: runs.iter().map(|r| r.residual).fold(0.0, f64::max),
        spread,
        converged_starts: runs.len(),
        failed_starts: failed,
    })
}
