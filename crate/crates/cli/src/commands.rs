use std::fs;
use std::time::Instant;

use argshift::sampling;
use argshift::slodowy::{self, NewtonOptions};
use argshift::verifier::{self, AlgebraDescriptor, ShiftSpec, StructuralCheck, TrialRecord};
use argshift::{Campaign, Complex64, InvariantSystem, LieAlgebra, MfFamily, Verdict};
use serde::Serialize;

use crate::report::{pair, Config, Report};
use crate::{AlgebraArgs, CliError, PlainArgs, ProbeSingularArgs, SampledArgs, SelftestArgs, SliceArgs, VerifyArgs};

fn algebra(args: &AlgebraArgs) -> Result<LieAlgebra, CliError> {
    Ok(LieAlgebra::new(args.cartan_type, args.rank as usize)?)
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn label(g: &LieAlgebra) -> String {
    format!("{}{}", g.cartan_type(), g.rank())
}

#[derive(Serialize)]
struct VerifyDetails {
    shift: verifier::ShiftDescriptor,
    orbit: verifier::OrbitDescriptor,
    degenerate: Option<TrialRecord>,
    skipped: usize,
}

pub fn verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let g = algebra(&args.algebra)?;
    let campaign = Campaign {
        shift: ShiftSpec::Kind(args.shift),
        orbit: args.orbit,
        trials: args.trials,
        seed: args.common.seed,
        tolerance: args.common.tolerance,
        mode: args.mode,
        include_degenerate: !args.no_degenerate,
    };
    let report = verifier::verify_completeness(&g, &campaign)?;

    let expected = g.half_orbit_dim();
    let passing = report.trials.iter().filter(|t| t.passed()).count();
    let mut summary = vec![format!(
        "{} shift={} orbit={} mode={}: {passing}/{} trials with restricted rank {expected}",
        label(&g),
        args.shift,
        args.orbit,
        args.mode,
        report.trials.len()
    )];
    if let Some(d) = &report.degenerate {
        summary.push(format!("parallel-shift trial: rank {} (expected {expected})", d.rank));
    }
    summary.push(format!("skipped orbit points: {}", report.skipped));
    summary.push(format!("verdict: {}", status(report.verdict == Verdict::Pass)));

    let mut config = Config::new("verify", &args.algebra, &args.common);
    config.shift = Some(args.shift.to_string());
    config.orbit = Some(args.orbit.to_string());
    config.trials = Some(args.trials);
    config.mode = Some(args.mode.to_string());
    let details = VerifyDetails {
        shift: report.shift,
        orbit: report.orbit,
        degenerate: report.degenerate,
        skipped: report.skipped,
    };
    let passed = report.verdict == Verdict::Pass;
    Report::new(config, report.algebra, report.trials, details, passed).emit(&args.common, started, &summary)
}

#[derive(Serialize)]
struct Sl2Details {
    coefficients: Vec<String>,
    h_diagonal: Vec<String>,
    kernel_grades: Vec<i64>,
    borel_eigenvalues: Vec<i64>,
}

const SL2_CHECKS: [&str; 9] = [
    "[h, xi] = 2 xi",
    "[h, eta] = -2 eta",
    "[xi, eta] = h",
    "alpha(h) = -2 on simple roots",
    "c_alpha > 0",
    "xi regular",
    "dim ker(ad_eta) = r",
    "ker(ad_eta) in b+",
    "ad_h eigenvalues non-positive",
];

pub fn sl2(args: &PlainArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let g = algebra(&args.algebra)?;
    let t = slodowy::principal_sl2(&g)?;
    let slice = slodowy::slodowy_slice(&g, &t)?;
    let eigen = slodowy::ad_h_eigen_check(&g, &t, &slice)?;
    let checks: Vec<StructuralCheck> =
        verifier::structural_checks(&g)?.into_iter().filter(|c| SL2_CHECKS.contains(&c.name)).collect();

    let hm = g.to_matrix(&t.h);
    let details = Sl2Details {
        coefficients: t.coefficients.iter().map(|c| c.to_string()).collect(),
        h_diagonal: (0..hm.rows()).map(|i| hm[(i, i)].re.to_string()).collect(),
        kernel_grades: slice.grades.clone(),
        borel_eigenvalues: eigen.borel_eigenvalues,
    };
    let mut summary: Vec<String> =
        details.coefficients.iter().enumerate().map(|(k, c)| format!("c_alpha{} = {c}", k + 1)).collect();
    summary.push(format!("h = diag({})", details.h_diagonal.join(", ")));
    for c in &checks {
        summary.push(format!("{}: {}", c.name, status(c.passed)));
    }
    let containment = checks.iter().any(|c| c.name == "ker(ad_eta) in b+" && c.passed);
    summary.push(format!("Lemma containment: {}", status(containment)));
    let passed = checks.iter().all(|c| c.passed);
    let config = Config::new("sl2", &args.algebra, &args.common);
    Report::new(config, AlgebraDescriptor::of(&g), checks, details, passed).emit(&args.common, started, &summary)
}

#[derive(Serialize)]
struct SliceTrial {
    invariant_values: Vec<[f64; 2]>,
    parameters: Vec<[f64; 2]>,
    residual: f64,
    spread: f64,
    converged_starts: usize,
    failed_starts: usize,
    /// Coordinate distance from the returned point to `xi`.
    distance_to_xi: f64,
}

#[derive(Serialize)]
struct SliceDetails {
    residual_tol: f64,
    agreement_tol: f64,
}

pub fn slice(args: &SliceArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let g = algebra(&args.algebra)?;
    let inv = InvariantSystem::new(&g);
    let t = slodowy::principal_sl2(&g)?;
    let slice = slodowy::slodowy_slice(&g, &t)?;
    let xi = t.xi.to_float();
    let options = NewtonOptions { starts: args.starts, ..NewtonOptions::default() };
    let tol = args.common.tolerance;

    let targets: Vec<Vec<Complex64>> = if args.zero {
        vec![vec![Complex64::new(0.0, 0.0); inv.len()]]
    } else {
        (0..args.orbits as u64)
            .map(|k| {
                let mut rng = sampling::rng(sampling::sub_seed(args.common.seed, k));
                let x = verifier::regular_sample::<Complex64>(&g, args.orbit, &mut rng, tol)?;
                Ok(inv.values(&x))
            })
            .collect::<argshift::Result<_>>()?
    };
    let solve_seed = sampling::sub_seed(args.common.seed, u64::MAX);
    let mut trials = Vec::with_capacity(targets.len());
    for (k, target) in targets.iter().enumerate() {
        let hit = slodowy::intersect_orbit(&inv, &slice, target, sampling::sub_seed(solve_seed, k as u64), &options)?;
        trials.push(SliceTrial {
            invariant_values: target.iter().copied().map(pair).collect(),
            parameters: hit.parameters.iter().copied().map(pair).collect(),
            residual: hit.residual,
            spread: hit.spread,
            converged_starts: hit.converged_starts,
            failed_starts: hit.failed_starts,
            distance_to_xi: (&hit.point - &xi).norm(),
        });
    }
    let passed = trials.iter().all(|t| {
        t.residual <= options.residual_tol && t.spread <= options.agreement_tol && t.converged_starts == options.starts
    });
    let mut summary: Vec<String> = trials
        .iter()
        .enumerate()
        .map(|(k, t)| {
            format!(
                "target {k}: residual {:.2e}, spread {:.2e}, {}/{} starts agree, |s - xi| = {:.3e}",
                t.residual,
                t.spread,
                t.converged_starts,
                t.converged_starts + t.failed_starts,
                t.distance_to_xi
            )
        })
        .collect();
    summary.push(format!("verdict: {}", status(passed)));

    let mut config = Config::new("slice", &args.algebra, &args.common);
    config.orbit = Some(if args.zero { "zero".into() } else { args.orbit.to_string() });
    config.trials = Some(targets.len());
    config.samples = Some(args.starts);
    let details = SliceDetails { residual_tol: options.residual_tol, agreement_tol: options.agreement_tol };
    Report::new(config, AlgebraDescriptor::of(&g), trials, details, passed).emit(&args.common, started, &summary)
}

#[derive(Serialize)]
struct SingularDetails {
    ell: usize,
    deficient: usize,
    generic_samples: usize,
    generic_full: usize,
}

/// Fraction of random points that must reach full ambient rank.
const GENERIC_PASS_RATE: f64 = 0.95;

pub fn probe_singular(args: &ProbeSingularArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let g = algebra(&args.algebra)?;
    let tol = args.common.tolerance;
    let seed = args.common.seed;
    let mut rng = sampling::rng(sampling::sub_seed(seed, 1));
    let a = verifier::regular_sample::<Complex64>(&g, args.shift, &mut rng, tol)?;
    let family = MfFamily::new(InvariantSystem::new(&g), a, tol)?;
    let probe =
        verifier::probe_singular_inclusion(&family, args.samples, args.generic, sampling::sub_seed(seed, 2), tol)?;

    let generic_ok = probe.generic_full as f64 >= GENERIC_PASS_RATE * probe.generic_samples as f64;
    let passed = probe.all_deficient() && generic_ok;
    let summary = vec![
        format!(
            "{}: {}/{} points of g_sing + C a have ambient rank < {}",
            label(&g),
            probe.deficient,
            probe.samples.len(),
            probe.ell
        ),
        format!("{}/{} random points have full ambient rank {}", probe.generic_full, probe.generic_samples, probe.ell),
        format!("verdict: {}", status(passed)),
    ];
    let mut config = Config::new("probe-singular", &args.algebra, &args.common);
    config.shift = Some(args.shift.to_string());
    config.samples = Some(args.samples);
    let details = SingularDetails {
        ell: probe.ell,
        deficient: probe.deficient,
        generic_samples: probe.generic_samples,
        generic_full: probe.generic_full,
    };
    Report::new(config, AlgebraDescriptor::of(&g), probe.samples, details, passed).emit(&args.common, started, &summary)
}

pub fn probe_slice_regularity(args: &SampledArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let g = algebra(&args.algebra)?;
    let t = slodowy::principal_sl2(&g)?;
    let probe = verifier::probe_slice_regularity(&g, &t, args.samples, args.common.seed, args.common.tolerance);
    let passed = probe.regular == probe.samples;
    let summary = vec![
        format!("{}: {}/{} points of xi + b+ are regular", label(&g), probe.regular, probe.samples),
        format!("verdict: {}", status(passed)),
    ];
    let mut config = Config::new("probe-slice-regularity", &args.algebra, &args.common);
    config.samples = Some(args.samples);
    Report::new(config, AlgebraDescriptor::of(&g), vec![probe], (), passed).emit(&args.common, started, &summary)
}

pub fn selftest(args: &SelftestArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let g = algebra(&args.algebra)?;
    if let Some(path) = &args.dump_constants {
        let json =
            serde_json::to_string_pretty(&g.structure_constants_json()).map_err(|e| CliError::Usage(e.to_string()))?;
        fs::write(path, json + "\n")?;
    }
    let checks = verifier::structural_checks(&g)?;
    let passed = checks.iter().all(|c| c.passed);
    let mut summary: Vec<String> = checks.iter().map(|c| format!("{}: {}", c.name, status(c.passed))).collect();
    summary.push(format!("verdict: {}", status(passed)));
    let config = Config::new("selftest", &args.algebra, &args.common);
    Report::new(config, AlgebraDescriptor::of(&g), checks, (), passed).emit(&args.common, started, &summary)
}
