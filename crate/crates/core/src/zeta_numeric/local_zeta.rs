//! Local zeta functions `Z_eps(f; s) = int_{O_eps} prod_j |Delta_j(x)|^{s_j} f(x) dmu(x)`
//! with `dmu = prod_j |Delta_j|^{-m_j} dx`, and their sign combinations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::chart::Chart;
use super::test_function::{hermite_coefficients, TestFunction};
use super::{Component, LocalZetaValue, Method};
use crate::cone_model::{CatalogEntry, OrbitChart};
use crate::error::{Error, Result};
use crate::quadrature::{half_line_mesh, integrate, line_mesh};
use crate::sign_algebra::sign_order;
use crate::special_functions::log_gamma;

/// Required distance of `Re s` from the boundary of the convergence region.
pub const CONVERGENCE_MARGIN: f64 = 0.1;

/// Range of the exp-sinh variable for the diagonal group parameters.
pub const DIAGONAL_RANGE: (f64, f64) = (-3.0, 1.5);
/// Half width of the trapezoid range for the off-diagonal parameters.
pub const OFF_DIAGONAL_HALF_WIDTH: f64 = 3.0;

/// `int_0^inf x^{s-1} psi_n(x) dx = sum_k h_{n,k} (2 pi)^{k/2} (1/2) pi^{-(s+k)/2} Gamma((s+k)/2)`.
pub fn mellin_hermite(n: u32, s: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &c) in hermite_coefficients(n).iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let kf = k as f64;
        let arg = (s + kf) * 0.5;
        let log = log_gamma(arg)? + 0.5 * kf * (2.0 * PI).ln() - arg * PI.ln();
        acc += 0.5 * c * log.exp();
    }
    Ok(acc)
}

fn check_same_chart(chart: &Chart, f: &TestFunction) -> Result<()> {
    if *chart != f.chart {
        return Err(Error::UnsupportedCone(format!(
            "test function lives on {} but the cone chart is {}",
            f.chart.name(),
            chart.name()
        )));
    }
    Ok(())
}

fn check_sign(r: usize, eps: &[i8]) -> Result<()> {
    if eps.len() != r || eps.iter().any(|&e| e != 1 && e != -1) {
        return Err(Error::Shape {
            what: "sign vector length",
            expected: r,
            got: eps.len(),
        });
    }
    Ok(())
}

/// Closed form on orthant charts, valid for all `s` away from gamma poles.
pub fn local_zeta_closed(entry: &CatalogEntry, eps: &[i8], f: &TestFunction, s: &[Complex64]) -> Result<LocalZetaValue> {
    let chart = Chart::of_entry(entry)?;
    if chart.kind != OrbitChart::Orthant {
        return Err(Error::UnsupportedCone(format!("closed forms need an orthant, got {}", chart.name())));
    }
    check_same_chart(&chart, f)?;
    check_sign(chart.rank, eps)?;
    let mut value = Complex64::new(0.0, 0.0);
    for t in &f.terms {
        let mut p = t.coeff;
        for (j, &n) in t.index.iter().enumerate() {
            let sign = if eps[j] < 0 && n % 2 == 1 { -1.0 } else { 1.0 };
            p *= mellin_hermite(n, s[j])? * sign;
        }
        value += p;
    }
    Ok(LocalZetaValue {
        value,
        component: Component::Sign(eps.to_vec()),
        s: s.to_vec(),
        method: Method::ClosedForm,
        error_estimate: 0.0,
    })
}

/// `(Z_eps(f; s))_eps` in sign order, by closed form on orthants and by
/// quadrature elsewhere.
pub fn local_zeta_vector(entry: &CatalogEntry, f: &TestFunction, s: &[Complex64]) -> Result<Vec<LocalZetaValue>> {
    let r = entry.cone.rank();
    sign_order(r)?
        .iter()
        .map(|e| local_zeta(entry, e.entries(), f, s))
        .collect()
}

pub fn local_zeta(entry: &CatalogEntry, eps: &[i8], f: &TestFunction, s: &[Complex64]) -> Result<LocalZetaValue> {
    match entry.chart {
        Some(OrbitChart::Orthant) => local_zeta_closed(entry, eps, f, s),
        _ => local_zeta_quadrature(entry, eps, f, s, DEFAULT_QUADRATURE_TOL),
    }
}

pub const DEFAULT_QUADRATURE_TOL: f64 = 1e-9;

/// `Z_a = sum_eps eps^{a sigma} Z_eps`.
pub fn zeta_distribution(entry: &CatalogEntry, a: &[u8], f: &TestFunction, s: &[Complex64]) -> Result<LocalZetaValue> {
    let locals = local_zeta_vector(entry, f, s)?;
    let values: Vec<Complex64> = locals.iter().map(|z| z.value).collect();
    let value = distribution_component(entry, a, &values)?;
    let method = locals.first().map(|z| z.method).unwrap_or(Method::ClosedForm);
    Ok(LocalZetaValue {
        value,
        component: Component::Digit(a.to_vec()),
        s: s.to_vec(),
        method,
        error_estimate: locals.iter().map(|z| z.error_estimate).sum(),
    })
}

/// One sign combination of a sign-ordered vector of local zeta values.
pub fn distribution_component(entry: &CatalogEntry, a: &[u8], local: &[Complex64]) -> Result<Complex64> {
    let r = entry.cone.rank();
    if a.len() != r {
        return Err(Error::Shape {
            what: "digit vector length",
            expected: r,
            got: a.len(),
        });
    }
    let image = crate::sign_algebra::digit_times(a, entry.cone.sigma());
    Ok(sign_order(r)?
        .iter()
        .zip(local)
        .map(|(e, z)| z * f64::from(e.power(&image)))
        .sum())
}

fn convergence_check(entry: &CatalogEntry, s: &[Complex64]) -> Result<()> {
    let bound = entry.measure_exponents.to_f64();
    if s.iter().zip(&bound).any(|(z, b)| z.re <= b + CONVERGENCE_MARGIN) {
        return Err(Error::OutsideConvergence {
            s: s.to_vec(),
            bound,
            margin: CONVERGENCE_MARGIN,
        });
    }
    Ok(())
}

/// Direct integral of `prod_j omega^{(s_j, a_j)}(Delta_j(x)) f(x) dmu(x)` over
/// the whole space for orthant charts, where `omega^{(s, a)}(y) = |y|^s sgn(y)^a`.
/// Each coordinate half-line is integrated after `x = +-u^2` by nested
/// adaptive Gauss-Kronrod.
pub fn zeta_distribution_direct(entry: &CatalogEntry, a: &[u8], f: &TestFunction, s: &[Complex64], tol: f64) -> Result<LocalZetaValue> {
    let chart = Chart::of_entry(entry)?;
    if chart.kind != OrbitChart::Orthant {
        return Err(Error::UnsupportedCone("direct integrals are implemented for orthants".into()));
    }
    check_same_chart(&chart, f)?;
    convergence_check(entry, s)?;
    let r = chart.rank;
    let m = entry.measure_exponents.to_f64();
    let upper = 3.0;
    let mut total = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for e in sign_order(r)? {
        let signs: Vec<f64> = e.entries().iter().map(|&x| f64::from(x)).collect();
        let mut x = vec![0.0; r];
        let est = nested(r, 0, &mut x, &mut |x: &[f64]| {
            // x holds the substituted u values; map back to the orthant point
            let point: Vec<f64> = x.iter().zip(&signs).map(|(u, sg)| sg * u * u).collect();
            let delta = chart.invariants(&point);
            let mut w = f.eval(&point);
            for j in 0..r {
                let d = delta[j];
                let omega = (s[j] * d.abs().ln()).exp() * if a[j] == 1 && d < 0.0 { -1.0 } else { 1.0 };
                w *= omega * d.abs().powf(-m[j]) * 2.0 * x[j];
            }
            w
        }, upper, tol)?;
        total += est.0;
        error += est.1;
    }
    Ok(LocalZetaValue {
        value: total,
        component: Component::Digit(a.to_vec()),
        s: s.to_vec(),
        method: Method::Quadrature,
        error_estimate: error,
    })
}

fn nested(
    dims: usize,
    level: usize,
    x: &mut [f64],
    g: &mut dyn FnMut(&[f64]) -> Complex64,
    upper: f64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let mut inner_error = 0.0f64;
    let mut failure = None;
    let est = integrate(
        |u| {
            x[level] = u;
            if level + 1 == dims {
                g(x)
            } else {
                let mut copy = x.to_vec();
                match nested(dims, level + 1, &mut copy, g, upper, tol) {
                    Ok((v, e)) => {
                        inner_error = inner_error.max(e);
                        v
                    }
                    Err(err) => {
                        failure = Some(err);
                        Complex64::new(0.0, 0.0)
                    }
                }
            }
        },
        0.0,
        upper,
        tol,
        tol,
        4000,
    )?;
    if let Some(err) = failure {
        return Err(err);
    }
    Ok((est.value, est.error + inner_error * upper))
}

/// Group-coordinate integral over the orbit `eps`, trapezoid in the
/// exp-sinh variable for each diagonal parameter and on a symmetric interval
/// for each off-diagonal parameter, all with spacing `h`.
pub fn orbit_integral(entry: &CatalogEntry, eps: &[i8], f: &TestFunction, s: &[Complex64], h: f64) -> Result<Complex64> {
    orbit_integral_with(entry, eps, f, s, h, None)
}

/// As [`orbit_integral`], with the measure exponents optionally overridden.
pub fn orbit_integral_with(
    entry: &CatalogEntry,
    eps: &[i8],
    f: &TestFunction,
    s: &[Complex64],
    h: f64,
    exponents: Option<&[f64]>,
) -> Result<Complex64> {
    let chart = Chart::of_entry(entry)?;
    check_same_chart(&chart, f)?;
    let r = chart.rank;
    check_sign(r, eps)?;
    let m: Vec<f64> = match exponents {
        Some(m) => m.to_vec(),
        None => entry.measure_exponents.to_f64(),
    };
    let sigma = entry.cone.sigma();
    // exponent of t_k in prod_j |Delta_j|^{s_j - m_j}
    let t_power: Vec<Complex64> = (0..r)
        .map(|k| (0..r).map(|j| (s[j] - m[j]) * (2 * sigma[j][k]) as f64).sum())
        .collect();
    let diag = half_line_mesh(h, DIAGONAL_RANGE.0, DIAGONAL_RANGE.1);
    let off = line_mesh(h, OFF_DIAGONAL_HALF_WIDTH);
    let q = chart.off_diagonal_count();
    let signs: Vec<f64> = eps.iter().map(|&e| f64::from(e)).collect();
    let nd = diag.len();
    let no = off.len();
    let inner_count = nd.pow((r - 1) as u32);
    let partial: Vec<Complex64> = (0..nd)
        .into_par_iter()
        .map(|i0| {
            let mut t = vec![0.0; r];
            let mut l = vec![0.0; q];
            let mut x = vec![0.0; chart.dimension()];
            let mut acc = Complex64::new(0.0, 0.0);
            for rest in 0..inner_count {
                let mut idx = rest;
                let mut weight = diag[i0].1;
                t[0] = diag[i0].0;
                for tk in t.iter_mut().skip(1) {
                    let (node, w) = diag[idx % nd];
                    idx /= nd;
                    *tk = node;
                    weight *= w;
                }
                let log_power: Complex64 = t.iter().zip(&t_power).map(|(tk, p)| p * tk.ln()).sum();
                let factor = log_power.exp() * weight * chart.jacobian(&t);
                if factor.norm() == 0.0 {
                    continue;
                }
                let mut inner = Complex64::new(0.0, 0.0);
                for li in 0..no.pow(q as u32) {
                    let mut idx = li;
                    let mut lw = 1.0;
                    for lk in l.iter_mut() {
                        let (node, w) = off[idx % no];
                        idx /= no;
                        *lk = node;
                        lw *= w;
                    }
                    chart.orbit_point_into(&signs, &t, &l, &mut x);
                    inner += f.eval(&x) * lw;
                }
                acc += inner * factor;
            }
            acc
        })
        .collect();
    Ok(partial.into_iter().sum())
}

/// Values of [`orbit_integral`] for each spacing in `hs`.
pub fn orbit_integral_levels(entry: &CatalogEntry, eps: &[i8], f: &TestFunction, s: &[Complex64], hs: &[f64]) -> Result<Vec<Complex64>> {
    hs.iter().map(|&h| orbit_integral(entry, eps, f, s, h)).collect()
}

/// Spacings tried by [`local_zeta_quadrature`], coarse to fine.
pub fn mesh_levels(chart: &Chart) -> Vec<f64> {
    match chart.kind {
        OrbitChart::Vinberg => vec![0.25, 0.125],
        _ => vec![0.5, 0.25, 0.125, 0.0625, 0.03125],
    }
}

/// Local zeta value by group-coordinate quadrature, refining the mesh until
/// two successive levels agree to `tol` (relative to `max(1, |Z|)`).
pub fn local_zeta_quadrature(entry: &CatalogEntry, eps: &[i8], f: &TestFunction, s: &[Complex64], tol: f64) -> Result<LocalZetaValue> {
    let chart = Chart::of_entry(entry)?;
    check_sign(chart.rank, eps)?;
    if !chart.orbit_decays(eps) {
        return Err(Error::UnsupportedCone(format!(
            "orbit {eps:?} of {} is not covered by the group-coordinate quadrature",
            chart.name()
        )));
    }
    convergence_check(entry, s)?;
    let mut prev: Option<Complex64> = None;
    let mut last_error = f64::INFINITY;
    for h in mesh_levels(&chart) {
        let q = orbit_integral(entry, eps, f, s, h)?;
        if let Some(p) = prev {
            last_error = (q - p).norm();
            if last_error <= tol * q.norm().max(1.0) {
                return Ok(LocalZetaValue {
                    value: q,
                    component: Component::Sign(eps.to_vec()),
                    s: s.to_vec(),
                    method: Method::Quadrature,
                    error_estimate: last_error,
                });
            }
        }
        prev = Some(q);
    }
    Err(Error::QuadratureNonConvergence {
        estimate: last_error,
        tolerance: tol,
    })
}

/// `Z_{(1,1)}(f; s)` on the symmetric 2x2 chart computed in the matrix
/// coordinates: `a > 0`, `b` free, `c = b^2/a + w^2`, so that
/// `Delta_2 = a w^2` and `dc = 2 w dw`. Nested adaptive Gauss-Kronrod.
pub fn sym2_matrix_coordinate_integral(entry: &CatalogEntry, f: &TestFunction, s: &[Complex64], tol: f64) -> Result<LocalZetaValue> {
    let chart = Chart::of_entry(entry)?;
    if chart.kind != OrbitChart::SymmetricTwo {
        return Err(Error::UnsupportedCone("matrix-coordinate check is for sym2".into()));
    }
    check_same_chart(&chart, f)?;
    convergence_check(entry, s)?;
    let m = entry.measure_exponents.to_f64();
    let mut failure: Option<Error> = None;
    let mut worst = 0.0f64;
    let outer = integrate(
        |a| {
            if a == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let b_max = (2.0 * a.sqrt()).min(3.0);
            let mid = integrate(
                |b| {
                    let c0 = b * b / a;
                    let inner = integrate(
                        |w| {
                            let x = [a, b, c0 + w * w];
                            let d1 = a;
                            let d2 = a * w * w;
                            if d2 == 0.0 {
                                return Complex64::new(0.0, 0.0);
                            }
                            let power = ((s[0] - m[0]) * d1.ln() + (s[1] - m[1]) * d2.ln()).exp();
                            f.eval(&x) * power * 2.0 * w
                        },
                        0.0,
                        2.5,
                        tol * 1e-2,
                        tol * 1e-2,
                        2000,
                    );
                    match inner {
                        Ok(e) => {
                            worst = worst.max(e.error);
                            e.value
                        }
                        Err(err) => {
                            failure = Some(err);
                            Complex64::new(0.0, 0.0)
                        }
                    }
                },
                -b_max,
                b_max,
                tol * 1e-1,
                tol * 1e-1,
                2000,
            );
            match mid {
                Ok(e) => {
                    worst = worst.max(e.error);
                    e.value
                }
                Err(err) => {
                    failure = Some(err);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        0.0,
        3.0,
        tol,
        tol,
        2000,
    )?;
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(LocalZetaValue {
        value: outer.value,
        component: Component::Sign(vec![1, 1]),
        s: s.to_vec(),
        method: Method::Quadrature,
        error_estimate: outer.error + worst,
    })
}
