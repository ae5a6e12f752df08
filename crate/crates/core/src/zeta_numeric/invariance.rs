//! Numerical check that `prod_j |Delta_j|^{-m_j} dx` is invariant under the
//! triangular group: `int g(h x) dmu(x) = int g(x) dmu(x)` for bumps `g`
//! supported inside the cone.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::chart::{Chart, GroupElement};
use crate::cone_model::{CatalogEntry, OrbitChart};
use crate::error::{Error, Result};
use crate::quadrature::composite_gauss_legendre;
use crate::verification::ResidualReport;

pub const INVARIANCE_TOLERANCE: f64 = 1e-6;

/// Support radius of the bump; the Gaussian width is `BUMP_RADIUS / 8.5`.
pub const BUMP_RADIUS: f64 = 0.4;
const WIDTHS_PER_RADIUS: f64 = 8.5;

/// Bump centre, well inside the cone.
pub fn bump_center(chart: &Chart) -> Vec<f64> {
    match chart.kind {
        OrbitChart::Orthant => {
            let mut c = vec![1.0; chart.rank];
            c[chart.rank - 1] = 1.5;
            c
        }
        OrbitChart::SymmetricTwo => vec![2.0, 0.3, 1.5],
        OrbitChart::Vinberg => vec![2.0, 1.5, 1.8, 0.3, -0.2],
    }
}

/// Gauss-Legendre panels and order per axis.
fn grid(chart: &Chart) -> (usize, usize) {
    match chart.dimension() {
        0..=3 => (6, 10),
        _ => (4, 7),
    }
}

fn bump(center: &[f64], x: &[f64]) -> f64 {
    let w = BUMP_RADIUS / WIDTHS_PER_RADIUS;
    let d2: f64 = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
    if d2 >= BUMP_RADIUS * BUMP_RADIUS {
        0.0
    } else {
        (-d2 / (2.0 * w * w)).exp()
    }
}

fn density(chart: &Chart, m: &[f64], x: &[f64]) -> f64 {
    chart
        .invariants(x)
        .iter()
        .zip(m)
        .map(|(d, mj)| d.abs().powf(-mj))
        .product()
}

/// `int g(h x) dmu(x)` over the bounding box of `h^{-1}(ball)`.
fn pulled_back_integral(chart: &Chart, h: &GroupElement, m: &[f64], center: &[f64]) -> f64 {
    let inv = chart.inverse(h);
    let mat = chart.action_matrix(&inv);
    let mid = chart.act(&inv, center);
    let (panels, order) = grid(chart);
    let axes: Vec<Vec<(f64, f64)>> = mat
        .iter()
        .zip(&mid)
        .map(|(row, c)| {
            let half = BUMP_RADIUS * row.iter().map(|v| v * v).sum::<f64>().sqrt();
            composite_gauss_legendre(c - half, c + half, panels, order)
        })
        .collect();
    let n = axes[0].len();
    let dim = axes.len();
    let inner = n.pow((dim - 1) as u32);
    let partial: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i0| {
            let mut x = vec![0.0; dim];
            let mut acc = 0.0;
            for rest in 0..inner {
                let mut idx = rest;
                x[0] = axes[0][i0].0;
                let mut w = axes[0][i0].1;
                for k in 1..dim {
                    let (node, wk) = axes[k][idx % n];
                    idx /= n;
                    x[k] = node;
                    w *= wk;
                }
                let g = bump(center, &chart.act(h, &x));
                if g != 0.0 {
                    acc += w * g * density(chart, m, &x);
                }
            }
            acc
        })
        .collect();
    partial.into_iter().sum()
}

/// `|int g(h x) dmu - int g dmu| / |int g dmu|` with the given measure
/// exponents `m`.
pub fn invariance_deviation(chart: &Chart, h: &GroupElement, m: &[f64]) -> Result<f64> {
    if m.len() != chart.rank {
        return Err(Error::Shape {
            what: "measure exponent length",
            expected: chart.rank,
            got: m.len(),
        });
    }
    let center = bump_center(chart);
    let identity = GroupElement {
        t: vec![1.0; chart.rank],
        l: vec![0.0; chart.off_diagonal_count()],
    };
    let base = pulled_back_integral(chart, &identity, m, &center);
    let moved = pulled_back_integral(chart, h, m, &center);
    Ok((moved - base).abs() / base.abs())
}

/// Random group element near the identity.
pub fn sample_group_element(chart: &Chart, rng: &mut impl Rng) -> GroupElement {
    let (t_range, l_range) = match chart.kind {
        OrbitChart::Vinberg => ((0.9, 1.1), 0.15),
        _ => ((0.7, 1.4), 0.4),
    };
    GroupElement {
        t: (0..chart.rank).map(|_| rng.random_range(t_range.0..t_range.1)).collect(),
        l: (0..chart.off_diagonal_count())
            .map(|_| rng.random_range(-l_range..l_range))
            .collect(),
    }
}

/// Maximum deviation over `trials` random group elements, with the cone's
/// measure exponents unless `exponents` overrides them.
pub fn measure_invariance_check(
    entry: &CatalogEntry,
    trials: usize,
    seed: u64,
    exponents: Option<&[f64]>,
) -> Result<ResidualReport> {
    let start = Instant::now();
    let chart = Chart::of_entry(entry)?;
    let m = match exponents {
        Some(m) => m.to_vec(),
        None => entry.measure_exponents.to_f64(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let h = sample_group_element(&chart, &mut rng);
        worst = worst.max(invariance_deviation(&chart, &h, &m)?);
    }
    let name = if exponents.is_some() { "invariance-control" } else { "invariance" };
    let mut report = ResidualReport::new(
        name,
        json!({"cone": entry.cone.name(), "trials": trials, "seed": seed, "exponents": m}),
        worst,
        INVARIANCE_TOLERANCE,
        start.elapsed().as_secs_f64(),
    );
    if exponents.is_some() {
        report = report.as_control(1e-2);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone_model::catalog;

    #[test]
    fn orthant_scaling_invariance() {
        let chart = Chart::orthant(2);
        let h = GroupElement {
            t: vec![1.2, 0.8],
            l: vec![],
        };
        assert!(invariance_deviation(&chart, &h, &[1.0, 1.0]).unwrap() <= 1e-8);
    }

    #[test]
    fn sym2_example_and_control() {
        let entry = catalog("sym2").unwrap();
        let chart = Chart::symmetric_two();
        let h = GroupElement {
            t: vec![1.3, 0.7],
            l: vec![0.4],
        };
        let m = entry.measure_exponents.to_f64();
        assert!(invariance_deviation(&chart, &h, &m).unwrap() <= 1e-6);
        assert!(invariance_deviation(&chart, &h, &[1.0, 1.0]).unwrap() > 1e-2);
    }
}
