//! End-to-end functional equations on the orthant charts, where both sides
//! are finite gamma expressions and so hold for every `s` off the poles.

use std::time::Instant;

use num_complex::Complex64;
use serde_json::json;

use super::chart::Chart;
use super::local_zeta::local_zeta_closed;
use super::test_function::TestFunction;
use crate::cone_model::{CatalogEntry, OrbitChart};
use crate::error::{Error, Result};
use crate::gamma_matrices::{cone_gamma_matrix, ThetaParams};
use crate::matrix::ComplexMatrix;
use crate::sign_algebra::{digit_order, digit_times, hadamard, permutation_w, sign_order, Side};
use crate::structured_factors::{completion_scaling, epsilon_factor, factored_gamma_matrix};
use crate::verification::ResidualReport;

pub const FE_TOLERANCE: f64 = 1e-9;

fn multiplier(entry: &CatalogEntry, side: Side) -> &Vec<Vec<i64>> {
    match side {
        Side::Primal => entry.cone.sigma(),
        Side::Dual => entry.cone.sigma_star(),
    }
}

/// Sign combination `Z_a = sum_eps eps^{a sigma} Z_eps` for every digit
/// vector `a` in digit order; `local` is in sign order.
pub fn distribution_vector(entry: &CatalogEntry, side: Side, local: &[Complex64]) -> Result<Vec<Complex64>> {
    let r = entry.cone.rank();
    let signs = sign_order(r)?;
    if local.len() != signs.len() {
        return Err(Error::Shape {
            what: "local zeta vector length",
            expected: signs.len(),
            got: local.len(),
        });
    }
    let sigma = multiplier(entry, side);
    Ok(digit_order(r)?
        .iter()
        .map(|d| {
            let image = digit_times(d.entries(), sigma);
            signs
                .iter()
                .zip(local)
                .map(|(e, z)| z * f64::from(e.power(&image)))
                .sum()
        })
        .collect())
}

/// Inverse of [`distribution_vector`]: `Z_eps = 2^{-r/2} J W Z_a`.
pub fn local_from_distribution(entry: &CatalogEntry, side: Side, dist: &[Complex64]) -> Result<Vec<Complex64>> {
    let r = entry.cone.rank();
    let j = hadamard(r)?;
    let w = permutation_w(&entry.cone, side)?;
    let scale = 2f64.powf(-(r as f64) / 2.0);
    Ok(j.matvec(&w.matvec(dist)).into_iter().map(|z| z * scale).collect())
}

/// `max |2^{r/2} J Z_eps - W Z_a|` for the given local vector, with `Z_a`
/// formed by [`distribution_vector`].
pub fn relation_residual(entry: &CatalogEntry, side: Side, local: &[Complex64]) -> Result<f64> {
    let r = entry.cone.rank();
    let dist = distribution_vector(entry, side, local)?;
    let lhs: Vec<Complex64> = hadamard(r)?
        .matvec(local)
        .into_iter()
        .map(|z| z * 2f64.powf(r as f64 / 2.0))
        .collect();
    let rhs = permutation_w(&entry.cone, side)?.matvec(&dist);
    Ok(max_abs_diff(&lhs, &rhs))
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `max |lhs - rhs| / max(max |lhs|, max |rhs|)`.
pub fn relative_residual(lhs: &[Complex64], rhs: &[Complex64]) -> f64 {
    let scale = lhs.iter().chain(rhs).map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    max_abs_diff(lhs, rhs) / scale
}

fn orthant_chart(entry: &CatalogEntry) -> Result<Chart> {
    let chart = Chart::of_entry(entry)?;
    if chart.kind != OrbitChart::Orthant {
        return Err(Error::UnsupportedCone(format!(
            "functional equation checks need closed forms on both sides; {} has none",
            chart.name()
        )));
    }
    Ok(chart)
}

/// Sign-ordered closed-form local zeta vector.
pub fn local_vector_closed(entry: &CatalogEntry, f: &TestFunction, s: &[Complex64]) -> Result<Vec<Complex64>> {
    sign_order(entry.cone.rank())?
        .iter()
        .map(|e| local_zeta_closed(entry, e.entries(), f, s).map(|z| z.value))
        .collect()
}

/// Local vectors on both sides: `(Z(F f*; s), Z*(f*; tau(s)))`. The dual of
/// an orthant is the orthant with the same invariants and measure.
pub fn fe_local_vectors(entry: &CatalogEntry, f_star: &TestFunction, s: &[Complex64]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    orthant_chart(entry)?;
    let f = f_star.fourier()?;
    let lhs = local_vector_closed(entry, &f, s)?;
    let dual = local_vector_closed(entry, f_star, &entry.cone.tau(s))?;
    Ok((lhs, dual))
}

fn params(entry: &CatalogEntry, f_star: &TestFunction, s: &[Complex64]) -> serde_json::Value {
    json!({
        "cone": entry.cone.name(),
        "s": s,
        "f_star": f_star.terms,
    })
}

fn report(name: &str, params: serde_json::Value, residual: f64, start: Instant) -> ResidualReport {
    ResidualReport::new(name, params, residual, FE_TOLERANCE, start.elapsed().as_secs_f64())
}

/// `Z(F f*; s) = (Gamma_Omega(s sigma) / (2 pi)^{|s sigma|}) A(s sigma - p/2; n/2) Z*(f*; tau(s))`
/// with sign-indexed vectors.
pub fn fe_residual(entry: &CatalogEntry, f_star: &TestFunction, s: &[Complex64]) -> Result<ResidualReport> {
    let start = Instant::now();
    let (lhs, dual) = fe_local_vectors(entry, f_star, s)?;
    let rhs = cone_gamma_matrix(&entry.cone, s)?.matvec(&dual);
    Ok(report("fe", params(entry, f_star, s), relative_residual(&lhs, &rhs), start))
}

/// Digit-indexed form `W_sigma Z(F f*; s) = A(s sigma - p/2) W_sigma* Z*(f*; tau(s))`
/// with the factored gamma matrix on the right.
pub fn fe_distribution_residual(entry: &CatalogEntry, f_star: &TestFunction, s: &[Complex64]) -> Result<ResidualReport> {
    let start = Instant::now();
    let (local, dual_local) = fe_local_vectors(entry, f_star, s)?;
    let cone = &entry.cone;
    let dist = distribution_vector(entry, Side::Primal, &local)?;
    let dual = distribution_vector(entry, Side::Dual, &dual_local)?;
    let lhs = permutation_w(cone, Side::Primal)?.matvec(&dist);
    let factored = factored_gamma_matrix(cone.rank(), &cone.alpha_from_s(s), &ThetaParams::from_cone(cone))?;
    let rhs = factored.assembled().matvec(&permutation_w(cone, Side::Dual)?.matvec(&dual));
    Ok(report(
        "fe-distribution",
        params(entry, f_star, s),
        relative_residual(&lhs, &rhs),
        start,
    ))
}

/// Completed form `Psi(F f*; s) = E Psi*(f*; tau(s))` with
/// `Psi = Lambda(s sigma - p/2) J Z` and `Psi* = Lambda(tau(s) sigma* - q/2) J Z*`.
pub fn completion_residual(entry: &CatalogEntry, f_star: &TestFunction, s: &[Complex64]) -> Result<ResidualReport> {
    let start = Instant::now();
    let cone = &entry.cone;
    let m = cone.completion_condition().ok_or(Error::ConditionNotSatisfied)?;
    let (local, dual_local) = fe_local_vectors(entry, f_star, s)?;
    let (psi, psi_star) = completed_vectors(entry, s, &local, &dual_local)?;
    let rhs = epsilon_factor(cone.rank(), m)?.matvec(&psi_star);
    Ok(report(
        "fe-completion",
        params(entry, f_star, s),
        relative_residual(&psi, &rhs),
        start,
    ))
}

/// `(Psi, Psi*)` from sign-ordered local vectors on both sides.
pub fn completed_vectors(
    entry: &CatalogEntry,
    s: &[Complex64],
    local: &[Complex64],
    dual_local: &[Complex64],
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let cone = &entry.cone;
    let r = cone.rank();
    let j = hadamard(r)?;
    let (_, q, _) = cone.derived_vectors();
    let dual_alpha: Vec<Complex64> = cone
        .s_sigma_star(&cone.tau(s))
        .into_iter()
        .zip(q.to_f64())
        .map(|(a, qk)| a - 0.5 * qk)
        .collect();
    let lam: ComplexMatrix = completion_scaling(r, &cone.alpha_from_s(s))?;
    let lam_star = completion_scaling(r, &dual_alpha)?;
    Ok((lam.matvec(&j.matvec(local)), lam_star.matvec(&j.matvec(dual_local))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone_model::catalog;
    use crate::zeta_numeric::test_function::Term;

    fn cz(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mixed(chart: Chart) -> TestFunction {
        let r = chart.rank;
        let mut a = vec![0; r];
        a[0] = 1;
        let mut b = vec![2; r];
        b[r - 1] = 3;
        TestFunction::new(
            chart,
            vec![
                Term { coeff: cz(0.5, 0.0), index: a },
                Term { coeff: cz(0.3, -0.2), index: b },
            ],
        )
        .unwrap()
    }

    #[test]
    fn gaussian_rank_two_example() {
        let entry = catalog("orthant2").unwrap();
        let g = TestFunction::gaussian(Chart::orthant(2));
        let s = [cz(0.6, 0.0), cz(1.3, 0.0)];
        assert!(fe_residual(&entry, &g, &s).unwrap().residual <= 1e-10);
        assert!(fe_distribution_residual(&entry, &g, &s).unwrap().residual <= 1e-10);
        assert!(completion_residual(&entry, &g, &[cz(0.7, 0.0), cz(1.1, 0.0)]).unwrap().residual <= 1e-10);
    }

    #[test]
    fn mixed_parity_rank_three() {
        let entry = catalog("orthant3").unwrap();
        let f = TestFunction::hermite(Chart::orthant(3), vec![1, 0, 2]).unwrap();
        let s = [cz(0.4, 0.7), cz(-1.3, 0.2), cz(2.2, -1.1)];
        let (lhs, _) = fe_local_vectors(&entry, &f, &s).unwrap();
        assert!(lhs.iter().all(|z| z.norm() > 1e-6), "all components non-degenerate");
        assert!(fe_residual(&entry, &f, &s).unwrap().residual <= 1e-9);
        assert!(fe_distribution_residual(&entry, &f, &s).unwrap().residual <= 1e-9);
        let f = mixed(Chart::orthant(3));
        assert!(completion_residual(&entry, &f, &s).unwrap().residual <= 1e-9);
    }

    #[test]
    fn sign_combination_round_trip_and_relation() {
        for name in ["orthant2", "orthant3", "sym2", "vinberg3", "quat4"] {
            let entry = catalog(name).unwrap();
            let n = 1 << entry.cone.rank();
            let local: Vec<Complex64> = (0..n).map(|i| cz((i as f64 * 0.37).sin(), (i as f64).cos())).collect();
            for side in [Side::Primal, Side::Dual] {
                let dist = distribution_vector(&entry, side, &local).unwrap();
                let back = local_from_distribution(&entry, side, &dist).unwrap();
                assert!(max_abs_diff(&back, &local) < 1e-13, "{name}");
                assert!(relation_residual(&entry, side, &local).unwrap() < 1e-13, "{name}");
            }
        }
    }

    #[test]
    fn odd_weight_components_vanish_for_even_functions() {
        let entry = catalog("orthant2").unwrap();
        let f = TestFunction::hermite(Chart::orthant(2), vec![2, 4]).unwrap();
        let s = [cz(0.3, 0.5), cz(1.7, 0.0)];
        let local = local_vector_closed(&entry, &f, &s).unwrap();
        let dist = distribution_vector(&entry, Side::Primal, &local).unwrap();
        for (d, z) in digit_order(2).unwrap().iter().zip(&dist) {
            if d.weight() % 2 == 1 {
                assert!(z.norm() < 1e-12);
            }
        }
        let (psi, _) = completed_vectors(&entry, &s, &local, &local).unwrap();
        for (d, z) in digit_order(2).unwrap().iter().zip(&psi) {
            if d.weight() % 2 == 1 {
                assert!(z.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn non_orthant_charts_are_rejected() {
        let entry = catalog("sym2").unwrap();
        let g = TestFunction::gaussian(Chart::symmetric_two());
        assert!(matches!(
            fe_residual(&entry, &g, &[cz(2.0, 0.0), cz(2.0, 0.0)]),
            Err(Error::UnsupportedCone(_))
        ));
    }
}
