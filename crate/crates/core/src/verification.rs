//! Named residual suites over the matrix identities and the zeta-function
//! checks, producing one [`ResidualReport`] per identity instance.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cone_model::{catalog, ConeStructure, CATALOG_NAMES};
use crate::error::{Error, Result};
use crate::gamma_matrices::{cone_gamma_matrix, cosine_block, det_formula_check, gamma_matrix, phase_matrix, ThetaParams};
use crate::matrix::{wrap_angle, ComplexMatrix, LogDet};
use crate::sign_algebra::{digit_order, digit_times, hadamard, permutation_w, sign_order, Side};
use crate::structured_factors::{
    completion_eigenvalues, decomposition_rhs, decomposition_with, factored_gamma_matrix, AngleScale, GeneratorWord,
};
use crate::zeta_numeric::chart::Chart;
use crate::zeta_numeric::functional_equation::{
    completion_residual, distribution_vector, fe_distribution_residual, fe_residual, local_from_distribution,
    local_vector_closed, relation_residual,
};
use crate::zeta_numeric::invariance::measure_invariance_check;
use crate::zeta_numeric::local_zeta::{
    local_zeta_quadrature, orbit_integral_levels, sym2_matrix_coordinate_integral, zeta_distribution_direct,
};
use crate::zeta_numeric::test_function::{TestFunction, Term};

pub const DECOMPOSITION_TOLERANCE: f64 = 1e-11;
pub const GAMMA_MATRIX_TOLERANCE: f64 = 1e-10;
pub const DET_TOLERANCE: f64 = 1e-8;
pub const DET_ZERO_TOLERANCE: f64 = 1e-9;
pub const THETA_DRIFT_TOLERANCE: f64 = 1e-10;
pub const COMPLETION_TOLERANCE: f64 = 1e-12;
/// Residual a negative control must exceed.
pub const CONTROL_THRESHOLD: f64 = 1e-2;

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub identity_name: String,
    pub params: serde_json::Value,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub wall_time: f64,
    /// Negative control: passes when the residual exceeds the tolerance.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub control: bool,
}

impl ResidualReport {
    pub fn new(name: &str, params: serde_json::Value, residual: f64, tolerance: f64, wall_time: f64) -> Self {
        Self {
            identity_name: name.to_string(),
            params,
            residual,
            tolerance,
            passed: residual.is_finite() && residual <= tolerance,
            wall_time,
            control: false,
        }
    }

    /// Turns the report into a negative control with the given threshold.
    pub fn as_control(mut self, threshold: f64) -> Self {
        self.control = true;
        self.tolerance = threshold;
        self.passed = self.residual.is_finite() && self.residual > threshold;
        self
    }
}

/// `max |a - b| / (1 + max(max |a|, max |b|))`.
pub fn normalized_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.max_abs_diff(b) / (1.0 + a.max_abs().max(b.max_abs()))
}

fn elapsed(start: Instant) -> f64 {
    start.elapsed().as_secs_f64()
}

fn theta_json(theta: &ThetaParams) -> serde_json::Value {
    theta.iter().map(|(k, j, v)| json!([k, j, v])).collect()
}

/// `J^(r-1) C_r J^(r-1)` against the assembled factor product.
pub fn decomposition_residual(
    r: usize,
    alpha: &[Complex64],
    theta: &ThetaParams,
    reading: GeneratorWord,
    scale: AngleScale,
) -> Result<f64> {
    let j = hadamard(r - 1)?;
    let lhs = j.sandwich(&cosine_block(r, alpha, theta)?);
    let rhs = decomposition_with(r, alpha, theta, reading, scale)?.assembled();
    Ok(normalized_residual(&lhs, &rhs))
}

pub fn verify_decomposition(r: usize, alpha: &[Complex64], theta: &ThetaParams) -> Result<ResidualReport> {
    let start = Instant::now();
    let j = hadamard(r - 1)?;
    let lhs = j.sandwich(&cosine_block(r, alpha, theta)?);
    let rhs = decomposition_rhs(r, alpha, theta)?.assembled();
    Ok(ResidualReport::new(
        "decomposition",
        json!({"r": r, "alpha": alpha, "theta": theta_json(theta)}),
        normalized_residual(&lhs, &rhs),
        DECOMPOSITION_TOLERANCE,
        elapsed(start),
    ))
}

/// `J Ã J` against the factored gamma matrix at `alpha = s sigma - p/2`,
/// `theta = n/2`; also checks the digit-indexed statement
/// `W_sigma Z(Ã z*) = A W_sigma* Z*(z*)` on a fixed vector `z*`, with the
/// distributions formed by sign combinations.
pub fn verify_gamma_matrix(cone: &ConeStructure, s: &[Complex64]) -> Result<ResidualReport> {
    let start = Instant::now();
    let r = cone.rank();
    let alpha = cone.alpha_from_s(s);
    let theta = ThetaParams::from_cone(cone);
    let a_tilde = cone_gamma_matrix(cone, s)?;
    let factored = factored_gamma_matrix(r, &alpha, &theta)?.assembled();
    let j = hadamard(r)?;
    let conj = normalized_residual(&j.sandwich(&a_tilde), &factored);

    let entry = crate::cone_model::CatalogEntry {
        cone: cone.clone(),
        chart: None,
        measure_exponents: cone.measure_exponents().0,
        dual_measure_exponents: cone.measure_exponents().1,
    };
    let n = 1 << r;
    let z_star: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new((0.7 * i as f64 + 0.2).cos(), (1.3 * i as f64).sin()))
        .collect();
    let z = a_tilde.matvec(&z_star);
    let lhs = permutation_w(cone, Side::Primal)?.matvec(&distribution_vector(&entry, Side::Primal, &z)?);
    let rhs = factored.matvec(&permutation_w(cone, Side::Dual)?.matvec(&distribution_vector(&entry, Side::Dual, &z_star)?));
    let scale = 1.0 + lhs.iter().chain(&rhs).map(|v| v.norm()).fold(0.0, f64::max);
    let dist = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale;

    Ok(ResidualReport::new(
        "gamma-matrix",
        json!({"cone": cone.name(), "s": s, "alpha": alpha}),
        conj.max(dist),
        GAMMA_MATRIX_TOLERANCE,
        elapsed(start),
    ))
}

pub fn verify_det(r: usize, alpha: &[Complex64], theta: &ThetaParams) -> Result<ResidualReport> {
    let start = Instant::now();
    let cmp = det_formula_check(r, alpha, theta)?;
    let (name, tol) = if cmp.is_degenerate() {
        ("determinant-zero", DET_ZERO_TOLERANCE)
    } else {
        ("determinant", DET_TOLERANCE)
    };
    Ok(ResidualReport::new(
        name,
        json!({"r": r, "alpha": alpha, "theta": theta_json(theta)}),
        cmp.residual,
        tol,
        elapsed(start),
    ))
}

/// `|det(theta) / det(theta_ref) - 1|` over the given parameter sets.
pub fn verify_theta_invariance(r: usize, alpha: &[Complex64], thetas: &[ThetaParams]) -> Result<ResidualReport> {
    let start = Instant::now();
    let dets: Vec<LogDet> = thetas
        .iter()
        .map(|t| gamma_matrix(r, alpha, t).map(|m| m.log_det()))
        .collect::<Result<_>>()?;
    let drift = match dets.first() {
        Some(LogDet::Finite { log_abs: l0, arg: a0 }) => dets
            .iter()
            .map(|d| match d {
                LogDet::Finite { log_abs, arg } => {
                    (Complex64::new(log_abs - l0, wrap_angle(arg - a0)).exp() - 1.0).norm()
                }
                LogDet::Zero => 1.0,
            })
            .fold(0.0, f64::max),
        _ => f64::INFINITY,
    };
    Ok(ResidualReport::new(
        "determinant-theta-drift",
        json!({"r": r, "alpha": alpha, "theta_sets": thetas.len()}),
        drift,
        THETA_DRIFT_TOLERANCE,
        elapsed(start),
    ))
}

/// Off-diagonal mass and eigenvalue match of `J A(alpha; n/2) J` for a cone
/// meeting the completion condition.
pub fn verify_completion(cone: &ConeStructure, alpha: &[Complex64]) -> Result<[ResidualReport; 2]> {
    let start = Instant::now();
    let m = cone.completion_condition().ok_or(Error::ConditionNotSatisfied)?;
    let r = cone.rank();
    let a = phase_matrix(r, alpha, &ThetaParams::from_cone(cone))?;
    let conj = hadamard(r)?.sandwich(&a);
    let scale = 1.0 + conj.max_abs();
    let off = conj.max_off_diagonal() / scale;
    let expected = completion_eigenvalues(r, alpha, m)?;
    let diag = conj
        .diag()
        .iter()
        .zip(&expected)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / scale;
    let params = json!({"cone": cone.name(), "alpha": alpha, "m": m});
    let t = elapsed(start);
    Ok([
        ResidualReport::new("completion-off-diagonal", params.clone(), off, COMPLETION_TOLERANCE, t),
        ResidualReport::new("completion-eigenvalues", params, diag, COMPLETION_TOLERANCE, t),
    ])
}

/// Complex vector with `Re` in `[-3, 3]` away from integers by at least
/// `1e-3` and `Im` in `[-3, 3]`.
pub fn sample_alpha(rng: &mut impl Rng, r: usize) -> Vec<Complex64> {
    (0..r)
        .map(|_| {
            let re = loop {
                let x: f64 = rng.random_range(-3.0..3.0);
                if (x - x.round()).abs() >= 1e-3 {
                    break x;
                }
            };
            Complex64::new(re, rng.random_range(-3.0..3.0))
        })
        .collect()
}

pub fn sample_theta(rng: &mut impl Rng, r: usize) -> ThetaParams {
    let mut theta = ThetaParams::zeros(r);
    for k in 2..=r {
        for j in 1..k {
            theta.set(k, j, rng.random_range(-2.0..2.0));
        }
    }
    theta
}

/// Identity families runnable as one sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Decomposition,
    GammaMatrix,
    Determinant,
    Completion,
    Fe,
    Quadrature,
    Invariance,
    Distribution,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Decomposition,
        Suite::GammaMatrix,
        Suite::Determinant,
        Suite::Completion,
        Suite::Fe,
        Suite::Quadrature,
        Suite::Invariance,
        Suite::Distribution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Decomposition => "decomposition",
            Suite::GammaMatrix => "gamma-matrix",
            Suite::Determinant => "determinant",
            Suite::Completion => "completion",
            Suite::Fe => "fe",
            Suite::Quadrature => "quadrature",
            Suite::Invariance => "invariance",
            Suite::Distribution => "distribution",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Sweep selection. Unset `cone`/`r` mean the suite's default range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    #[serde(default)]
    pub cone: Option<String>,
    #[serde(default)]
    pub r: Option<usize>,
    #[serde(default = "default_count")]
    pub count: usize,
    #[serde(default)]
    pub seed: u64,
    /// Overrides the tolerance of every non-control report.
    #[serde(default)]
    pub tol: Option<f64>,
}

fn default_count() -> usize {
    10
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            cone: None,
            r: None,
            count: default_count(),
            seed: 0,
            tol: None,
        }
    }
}

fn ranks(config: &SuiteConfig, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    match config.r {
        Some(r) => vec![r],
        None => default.collect(),
    }
}

fn cones(config: &SuiteConfig, default: &[&str]) -> Vec<String> {
    match &config.cone {
        Some(c) => vec![c.clone()],
        None => default.iter().map(|s| s.to_string()).collect(),
    }
}

fn collect(results: Vec<Result<Vec<ResidualReport>>>) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Runs a suite. Sample points are drawn sequentially from the seeded
/// generator and then evaluated in parallel; reports keep sample order.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<ResidualReport>> {
    if config.count == 0 {
        return Err(Error::Parse("count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut reports = match config.suite {
        Suite::Decomposition => decomposition_suite(config, &mut rng)?,
        Suite::GammaMatrix => gamma_matrix_suite(config, &mut rng)?,
        Suite::Determinant => determinant_suite(config, &mut rng)?,
        Suite::Completion => completion_suite(config, &mut rng)?,
        Suite::Fe => fe_suite(config, &mut rng)?,
        Suite::Quadrature => quadrature_suite(config)?,
        Suite::Invariance => invariance_suite(config)?,
        Suite::Distribution => distribution_suite(config)?,
    };
    if let Some(tol) = config.tol {
        for r in reports.iter_mut().filter(|r| !r.control) {
            r.tolerance = tol;
            r.passed = r.residual.is_finite() && r.residual <= tol;
        }
    }
    Ok(reports)
}

fn decomposition_suite(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    for r in ranks(config, 2..=6) {
        let points: Vec<(Vec<Complex64>, ThetaParams)> =
            (0..config.count).map(|_| (sample_alpha(rng, r), sample_theta(rng, r))).collect();
        let results: Vec<Result<ResidualReport>> = points
            .par_iter()
            .map(|(a, t)| verify_decomposition(r, a, t))
            .collect();
        for rep in results {
            out.push(rep?);
        }
        out.extend(decomposition_controls(r, &points)?);
    }
    Ok(out)
}

/// Negative controls for the decomposition: the literal `exp(theta X)` angle
/// and, from rank 4 on where the two words differ, the literal `I_2` counts.
/// Each report carries the worst residual of the sweep, the quantity the
/// sweep is judged by, so the control passes when the sweep would fail.
pub fn decomposition_controls(r: usize, points: &[(Vec<Complex64>, ThetaParams)]) -> Result<Vec<ResidualReport>> {
    let mut variants = vec![("decomposition-control-angle", GeneratorWord::Adopted, AngleScale::Unscaled)];
    if r >= 4 {
        variants.push(("decomposition-control-word", GeneratorWord::LiteralCounts, AngleScale::HalfPi));
    }
    variants
        .into_iter()
        .map(|(name, word, scale)| {
            let start = Instant::now();
            let residuals: Vec<f64> = points
                .par_iter()
                .map(|(a, t)| decomposition_residual(r, a, t, word, scale))
                .collect::<Result<_>>()?;
            let max = residuals.iter().copied().fold(0.0, f64::max);
            let min = residuals.iter().copied().fold(f64::INFINITY, f64::min);
            let params = json!({"r": r, "points": points.len(), "min_residual": min});
            Ok(ResidualReport::new(name, params, max, CONTROL_THRESHOLD, elapsed(start)).as_control(CONTROL_THRESHOLD))
        })
        .collect()
}

fn gamma_matrix_suite(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<ResidualReport>> {
    let mut jobs = Vec::new();
    for name in cones(config, &CATALOG_NAMES) {
        let cone = catalog(&name)?.cone;
        for _ in 0..config.count {
            let s = cone.s_from_alpha(&sample_alpha(rng, cone.rank()));
            jobs.push((cone.clone(), s));
        }
    }
    jobs.par_iter().map(|(c, s)| verify_gamma_matrix(c, s)).collect()
}

fn determinant_suite(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    for r in ranks(config, 2..=4) {
        let points: Vec<_> = (0..config.count)
            .map(|_| {
                let alpha = sample_alpha(rng, r);
                let thetas: Vec<ThetaParams> = (0..3).map(|_| sample_theta(rng, r)).collect();
                let mut integer = alpha.clone();
                let pick = rng.random_range(0..r);
                integer[pick] = Complex64::new(rng.random_range(1i32..=3) as f64, 0.0);
                (alpha, thetas, integer)
            })
            .collect();
        let results: Vec<Result<Vec<ResidualReport>>> = points
            .par_iter()
            .map(|(alpha, thetas, integer)| {
                Ok(vec![
                    verify_det(r, alpha, &thetas[0])?,
                    verify_theta_invariance(r, alpha, thetas)?,
                    verify_det(r, integer, &thetas[1])?,
                ])
            })
            .collect();
        out.extend(collect(results)?);
    }
    Ok(out)
}

fn completion_suite(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<ResidualReport>> {
    let mut jobs = Vec::new();
    for name in cones(config, &["orthant2", "orthant3", "quat4"]) {
        let cone = catalog(&name)?.cone;
        if cone.completion_condition().is_none() {
            return Err(Error::ConditionNotSatisfied);
        }
        for _ in 0..config.count {
            jobs.push((cone.clone(), sample_alpha(rng, cone.rank())));
        }
    }
    let results: Vec<Result<Vec<ResidualReport>>> = jobs
        .par_iter()
        .map(|(c, a)| verify_completion(c, a).map(Vec::from))
        .collect();
    collect(results)
}

/// Hermite-Gaussian test functions of mixed parity on an orthant chart.
pub fn fe_test_functions(rank: usize) -> Vec<TestFunction> {
    let chart = Chart::orthant(rank);
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let pattern = |base: &[u32]| -> Vec<u32> { (0..rank).map(|j| base[j % base.len()]).collect() };
    vec![
        TestFunction::gaussian(chart),
        TestFunction::hermite(chart, pattern(&[1, 0, 2])).expect("valid index"),
        TestFunction::new(
            chart,
            vec![
                Term { coeff: c(0.5, 0.0), index: pattern(&[0, 1]) },
                Term { coeff: c(0.3, 0.2), index: pattern(&[3, 2, 1]) },
                Term { coeff: c(-0.1, 0.4), index: pattern(&[2, 2, 0]) },
            ],
        )
        .expect("valid indices"),
    ]
}

fn fe_suite(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Vec<ResidualReport>> {
    let mut jobs = Vec::new();
    for name in cones(config, &["orthant2", "orthant3"]) {
        let entry = catalog(&name)?;
        let r = entry.cone.rank();
        for _ in 0..config.count {
            let s = entry.cone.s_from_alpha(&sample_alpha(rng, r));
            for f in fe_test_functions(r) {
                jobs.push((entry.clone(), f, s.clone()));
            }
        }
    }
    let results: Vec<Result<Vec<ResidualReport>>> = jobs
        .par_iter()
        .map(|(e, f, s)| {
            Ok(vec![
                fe_residual(e, f, s)?,
                fe_distribution_residual(e, f, s)?,
                completion_residual(e, f, s)?,
            ])
        })
        .collect();
    collect(results)
}

/// Mesh spacings for the sym2 self-convergence check.
pub const SYM2_MESH: [f64; 5] = [0.5, 0.25, 0.125, 0.0625, 0.03125];

/// Interior points of the sym2 convergence region `Re s > (0, 3/2)`.
pub const SYM2_POINTS: [[(f64, f64); 2]; 5] = [
    [(1.0, 0.0), (2.0, 0.0)],
    [(0.5, 0.0), (1.8, 0.0)],
    [(1.2, 0.5), (2.2, -0.3)],
    [(0.3, -0.4), (2.5, 0.6)],
    [(2.0, 0.0), (1.7, 0.2)],
];

pub fn to_complex_points(p: &[(f64, f64)]) -> Vec<Complex64> {
    p.iter().map(|&(a, b)| Complex64::new(a, b)).collect()
}

/// Mesh-halving self-convergence of the sym2 quadrature and agreement with
/// the matrix-coordinate integral at one point.
pub fn sym2_quadrature_reports(s: &[Complex64]) -> Result<Vec<ResidualReport>> {
    let start = Instant::now();
    let entry = catalog("sym2")?;
    let f = TestFunction::gaussian(Chart::symmetric_two());
    let levels = orbit_integral_levels(&entry, &[1, 1], &f, s, &SYM2_MESH)?;
    let finest = levels[4];
    let err = |q: Complex64| (q - finest).norm();
    // successive-level errors measured against the finest level
    let ratio = if err(levels[2]) == 0.0 { f64::INFINITY } else { err(levels[1]) / err(levels[2]) };
    let params = json!({"cone": "sym2", "s": s, "mesh": SYM2_MESH, "levels": levels});
    let self_conv = ResidualReport::new("quadrature-self-convergence", params.clone(), err(levels[3]), 1e-7, elapsed(start));
    // passes when the error drops at least 4x per halving
    let order = ResidualReport::new("quadrature-refinement-ratio", params, 4.0 / ratio, 1.0, elapsed(start));
    let cross_start = Instant::now();
    let cross = sym2_matrix_coordinate_integral(&entry, &f, s, 1e-9)?;
    let cross_res = (cross.value - finest).norm() / finest.norm().max(1e-300);
    Ok(vec![
        self_conv,
        order,
        ResidualReport::new(
            "quadrature-cross-check",
            json!({"cone": "sym2", "s": s, "group": finest, "matrix": cross.value}),
            cross_res,
            1e-5,
            elapsed(cross_start),
        ),
    ])
}

pub fn vinberg_quadrature_report(s: &[Complex64]) -> Result<ResidualReport> {
    let start = Instant::now();
    let entry = catalog("vinberg3")?;
    let f = TestFunction::gaussian(Chart::vinberg());
    let z = local_zeta_quadrature(&entry, &[1, 1, 1], &f, s, 1e-4)?;
    Ok(ResidualReport::new(
        "quadrature-self-convergence",
        json!({"cone": "vinberg3", "s": s, "value": z.value}),
        z.error_estimate / z.value.norm().max(1.0),
        1e-4,
        elapsed(start),
    ))
}

/// Deep interior point of the vinberg3 convergence region.
pub const VINBERG_POINT: [(f64, f64); 3] = [(3.0, 0.0), (3.0, 0.0), (3.0, 0.0)];

fn quadrature_suite(config: &SuiteConfig) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    for name in cones(config, &["sym2", "vinberg3"]) {
        match name.as_str() {
            "sym2" => {
                for p in SYM2_POINTS.iter().take(config.count.min(SYM2_POINTS.len())) {
                    out.extend(sym2_quadrature_reports(&to_complex_points(p))?);
                }
            }
            "vinberg3" => out.push(vinberg_quadrature_report(&to_complex_points(&VINBERG_POINT))?),
            other => return Err(Error::UnsupportedCone(format!("no quadrature suite for {other}"))),
        }
    }
    Ok(out)
}

fn invariance_suite(config: &SuiteConfig) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    for name in cones(config, &["orthant2", "sym2", "vinberg3"]) {
        let entry = catalog(&name)?;
        let trials = if name == "vinberg3" { 1 } else { config.count.min(3) };
        out.push(measure_invariance_check(&entry, trials, config.seed, None)?);
        if name == "sym2" {
            out.push(measure_invariance_check(&entry, trials, config.seed, Some(&[1.0, 1.0]))?);
        }
    }
    Ok(out)
}

/// Sign-combination round trip and the local/distribution relation on closed-form
/// orthant vectors, plus the direct sign-weighted integral on orthant2.
fn distribution_suite(config: &SuiteConfig) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    for name in cones(config, &["orthant2", "orthant3"]) {
        let entry = catalog(&name)?;
        let r = entry.cone.rank();
        let s: Vec<Complex64> = (0..r).map(|j| Complex64::new(1.5 + 0.1 * j as f64, 0.2)).collect();
        for f in fe_test_functions(r) {
            let start = Instant::now();
            let local = local_vector_closed(&entry, &f, &s)?;
            let mut worst = 0.0f64;
            for side in [Side::Primal, Side::Dual] {
                let dist = distribution_vector(&entry, side, &local)?;
                let back = local_from_distribution(&entry, side, &dist)?;
                let trip = back.iter().zip(&local).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                worst = worst.max(trip).max(relation_residual(&entry, side, &local)?);
            }
            out.push(ResidualReport::new(
                "distribution-round-trip",
                json!({"cone": name, "s": s, "f": f.terms}),
                worst,
                1e-13,
                elapsed(start),
            ));
        }
        if r == 2 {
            let f = TestFunction::hermite(Chart::orthant(2), vec![1, 0])?;
            let s = [Complex64::new(1.5, 0.0), Complex64::new(1.5, 0.0)];
            out.extend(direct_integral_reports(&entry, &f, &s)?);
        }
    }
    Ok(out)
}

/// Direct sign-weighted integrals against the sign combinations for
/// every digit vector.
pub fn direct_integral_reports(
    entry: &crate::cone_model::CatalogEntry,
    f: &TestFunction,
    s: &[Complex64],
) -> Result<Vec<ResidualReport>> {
    let r = entry.cone.rank();
    let local = local_vector_closed(entry, f, s)?;
    let combos = distribution_vector(entry, Side::Primal, &local)?;
    digit_order(r)?
        .iter()
        .zip(combos)
        .map(|(d, combo)| {
            let start = Instant::now();
            let direct = zeta_distribution_direct(entry, d.entries(), f, s, 1e-11)?;
            Ok(ResidualReport::new(
                "distribution-direct",
                json!({"cone": entry.cone.name(), "a": d.entries(), "s": s, "combination": combo, "direct": direct.value}),
                (direct.value - combo).norm(),
                1e-8,
                elapsed(start),
            ))
        })
        .collect()
}

/// Whether the two permutation matrices of a cone differ.
pub fn permutations_differ(cone: &ConeStructure) -> Result<bool> {
    Ok(permutation_w(cone, Side::Primal)? != permutation_w(cone, Side::Dual)?)
}

/// `b = a sigma mod 2` images listed in digit order, for display.
pub fn permutation_images(cone: &ConeStructure, side: Side) -> Result<Vec<Vec<u8>>> {
    let sigma = match side {
        Side::Primal => cone.sigma(),
        Side::Dual => cone.sigma_star(),
    };
    Ok(digit_order(cone.rank())?
        .iter()
        .map(|d| digit_times(d.entries(), sigma))
        .collect())
}

/// Number of sign vectors, for summaries.
pub fn orbit_count(r: usize) -> Result<usize> {
    Ok(sign_order(r)?.len())
}
