//! Coordinates, invariants and group actions for the catalog cones that
//! carry an explicit orbit parametrization.
//!
//! * orthant of rank `r`: `x in R^r`, `Delta_j = x_j`, `h` acts by
//!   `x_j -> t_j^2 x_j`.
//! * symmetric 2x2 matrices `[[a, b], [b, c]]` with coordinates `(a, b, c)`,
//!   `Delta = (a, ac - b^2)`, `h = [[t1, 0], [l, t2]]` acts by `x -> h x h^T`.
//! * Vinberg cone: coordinates `(x1, x2, x3, y, z)` for the pair of blocks
//!   `[[x1, y], [y, x2]]`, `[[x1, z], [z, x3]]`, `Delta = (x1, x1 x2 - y^2,
//!   x1 x3 - z^2)`, each block transformed by its own lower-triangular
//!   factor sharing `t1`.

use serde::{Deserialize, Serialize};

use crate::cone_model::{catalog, CatalogEntry, ConeStructure, OrbitChart};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub kind: OrbitChart,
    pub rank: usize,
}

/// Element of the triangular group in chart coordinates: diagonal entries
/// `t` (positive) and off-diagonal entries `l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub t: Vec<f64>,
    pub l: Vec<f64>,
}

impl Chart {
    pub fn orthant(rank: usize) -> Self {
        Self {
            kind: OrbitChart::Orthant,
            rank,
        }
    }

    pub fn symmetric_two() -> Self {
        Self {
            kind: OrbitChart::SymmetricTwo,
            rank: 2,
        }
    }

    pub fn vinberg() -> Self {
        Self {
            kind: OrbitChart::Vinberg,
            rank: 3,
        }
    }

    pub fn of_entry(entry: &CatalogEntry) -> Result<Self> {
        let rank = entry.cone.rank();
        match entry.chart {
            Some(OrbitChart::Orthant) => Ok(Self::orthant(rank)),
            Some(OrbitChart::SymmetricTwo) => Ok(Self::symmetric_two()),
            Some(OrbitChart::Vinberg) => Ok(Self::vinberg()),
            None => Err(Error::UnsupportedCone(format!(
                "{} has no orbit parametrization",
                entry.cone.name().unwrap_or("cone")
            ))),
        }
    }

    /// Catalog cone together with its chart.
    pub fn catalog(name: &str) -> Result<(CatalogEntry, Self)> {
        let entry = catalog(name)?;
        let chart = Self::of_entry(&entry)?;
        Ok((entry, chart))
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            OrbitChart::Orthant => self.rank,
            OrbitChart::SymmetricTwo => 3,
            OrbitChart::Vinberg => 5,
        }
    }

    /// Number of off-diagonal group parameters.
    pub fn off_diagonal_count(&self) -> usize {
        self.dimension() - self.rank
    }

    /// Coordinate weights `w` in `<x, y> = sum_i w_i x_i y_i`; also used to
    /// scale the Hermite functions of test functions.
    pub fn weights(&self) -> Vec<f64> {
        match self.kind {
            OrbitChart::Orthant => vec![1.0; self.rank],
            OrbitChart::SymmetricTwo => vec![1.0, 2.0, 1.0],
            OrbitChart::Vinberg => vec![1.0, 1.0, 1.0, 2.0, 2.0],
        }
    }

    /// Whether the chart declares the inner product used by the Fourier
    /// transform. The Vinberg cone is not self-dual and its chart does not.
    pub fn has_inner_product(&self) -> bool {
        !matches!(self.kind, OrbitChart::Vinberg)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            OrbitChart::Orthant => "orthant",
            OrbitChart::SymmetricTwo => "sym2",
            OrbitChart::Vinberg => "vinberg3",
        }
    }

    /// Basic relative invariants at `x`.
    pub fn invariants(&self, x: &[f64]) -> Vec<f64> {
        match self.kind {
            OrbitChart::Orthant => x.to_vec(),
            OrbitChart::SymmetricTwo => vec![x[0], x[0] * x[2] - x[1] * x[1]],
            OrbitChart::Vinberg => vec![x[0], x[0] * x[1] - x[3] * x[3], x[0] * x[2] - x[4] * x[4]],
        }
    }

    /// `h . c_eps`, where `c_eps` is the base point with diagonal entries
    /// `eps` and zero off-diagonal entries.
    pub fn orbit_point(&self, eps: &[f64], t: &[f64], l: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.dimension()];
        self.orbit_point_into(eps, t, l, &mut x);
        x
    }

    pub fn orbit_point_into(&self, eps: &[f64], t: &[f64], l: &[f64], x: &mut [f64]) {
        match self.kind {
            OrbitChart::Orthant => {
                for j in 0..self.rank {
                    x[j] = eps[j] * t[j] * t[j];
                }
            }
            OrbitChart::SymmetricTwo => {
                x[0] = eps[0] * t[0] * t[0];
                x[1] = eps[0] * t[0] * l[0];
                x[2] = eps[0] * l[0] * l[0] + eps[1] * t[1] * t[1];
            }
            OrbitChart::Vinberg => {
                x[0] = eps[0] * t[0] * t[0];
                x[3] = eps[0] * t[0] * l[0];
                x[1] = eps[0] * l[0] * l[0] + eps[1] * t[1] * t[1];
                x[4] = eps[0] * t[0] * l[1];
                x[2] = eps[0] * l[1] * l[1] + eps[2] * t[2] * t[2];
            }
        }
    }

    /// `|det d(h . c_eps) / d(t, l)|`.
    pub fn jacobian(&self, t: &[f64]) -> f64 {
        match self.kind {
            OrbitChart::Orthant => t.iter().map(|&x| 2.0 * x).product(),
            OrbitChart::SymmetricTwo => 4.0 * t[0] * t[0] * t[1],
            OrbitChart::Vinberg => 8.0 * t[0].powi(3) * t[1] * t[2],
        }
    }

    /// Linear action of `h` on `V`.
    pub fn act(&self, h: &GroupElement, x: &[f64]) -> Vec<f64> {
        let t = &h.t;
        let l = &h.l;
        let block = |t1: f64, lo: f64, t2: f64, a: f64, b: f64, c: f64| {
            (
                t1 * t1 * a,
                t1 * lo * a + t1 * t2 * b,
                lo * lo * a + 2.0 * lo * t2 * b + t2 * t2 * c,
            )
        };
        match self.kind {
            OrbitChart::Orthant => x.iter().zip(t).map(|(v, s)| s * s * v).collect(),
            OrbitChart::SymmetricTwo => {
                let (a, b, c) = block(t[0], l[0], t[1], x[0], x[1], x[2]);
                vec![a, b, c]
            }
            OrbitChart::Vinberg => {
                let (x1, y, x2) = block(t[0], l[0], t[1], x[0], x[3], x[1]);
                let (_, z, x3) = block(t[0], l[1], t[2], x[0], x[4], x[2]);
                vec![x1, x2, x3, y, z]
            }
        }
    }

    pub fn inverse(&self, h: &GroupElement) -> GroupElement {
        let t: Vec<f64> = h.t.iter().map(|x| 1.0 / x).collect();
        let l = match self.kind {
            OrbitChart::Orthant => vec![],
            OrbitChart::SymmetricTwo => vec![-h.l[0] / (h.t[0] * h.t[1])],
            OrbitChart::Vinberg => vec![-h.l[0] / (h.t[0] * h.t[1]), -h.l[1] / (h.t[0] * h.t[2])],
        };
        GroupElement { t, l }
    }

    /// Matrix of the action of `h` in chart coordinates, row-major.
    pub fn action_matrix(&self, h: &GroupElement) -> Vec<Vec<f64>> {
        let n = self.dimension();
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                self.act(h, &e)
            })
            .collect();
        (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect()
    }

    /// Orbit index of `x`: the sign vector `eps` whose pattern
    /// `prod_k eps_k^{sigma_jk}` matches the signs of the invariants.
    pub fn orbit_of(&self, cone: &ConeStructure, x: &[f64]) -> Option<Vec<i8>> {
        let signs: Vec<i8> = self
            .invariants(x)
            .iter()
            .map(|&d| if d > 0.0 { 1 } else if d < 0.0 { -1 } else { 0 })
            .collect();
        if signs.contains(&0) {
            return None;
        }
        let r = self.rank;
        let sigma = cone.sigma();
        (0..1u32 << r)
            .map(|bits| (0..r).map(|k| if bits >> k & 1 == 0 { 1i8 } else { -1 }).collect::<Vec<i8>>())
            .find(|eps| {
                (0..r).all(|j| {
                    let pattern = (0..r).fold(1i8, |acc, k| if sigma[j][k] % 2 == 1 { acc * eps[k] } else { acc });
                    pattern == signs[j]
                })
            })
    }

    /// Whether the group-coordinate integrand over the orbit `eps` decays in
    /// every direction of the parameter space. True for the orthant and for
    /// the two definite orbits of the other charts.
    pub fn orbit_decays(&self, eps: &[i8]) -> bool {
        matches!(self.kind, OrbitChart::Orthant) || eps.iter().all(|&e| e == eps[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(m: &[Vec<f64>]) -> f64 {
        // Laplace expansion, adequate for n <= 5
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * det(&minor)
            })
            .sum()
    }

    fn jacobian_fd(chart: &Chart, eps: &[f64], t: &[f64], l: &[f64]) -> f64 {
        let n = chart.dimension();
        let r = chart.rank;
        let mut params: Vec<f64> = t.iter().chain(l).copied().collect();
        let mut cols = Vec::new();
        for i in 0..n {
            let h = 1e-6;
            params[i] += h;
            let xp = chart.orbit_point(eps, &params[..r], &params[r..]);
            params[i] -= 2.0 * h;
            let xm = chart.orbit_point(eps, &params[..r], &params[r..]);
            params[i] += h;
            cols.push(xp.iter().zip(&xm).map(|(a, b)| (a - b) / (2.0 * h)).collect::<Vec<f64>>());
        }
        let m: Vec<Vec<f64>> = (0..n).map(|rr| (0..n).map(|c| cols[c][rr]).collect()).collect();
        det(&m).abs()
    }

    #[test]
    fn jacobians_match_finite_differences() {
        let cases = [
            (Chart::orthant(2), vec![1.3, 0.6], vec![]),
            (Chart::symmetric_two(), vec![1.3, 0.7], vec![0.4]),
            (Chart::vinberg(), vec![1.1, 0.8, 1.4], vec![0.3, -0.5]),
        ];
        for (chart, t, l) in cases {
            let eps = vec![1.0; chart.rank];
            let fd = jacobian_fd(&chart, &eps, &t, &l);
            assert!((fd - chart.jacobian(&t)).abs() < 1e-7 * fd, "{}", chart.name());
        }
    }

    #[test]
    fn invariants_scale_by_characters() {
        // Delta_j(h . c_eps) = prod_k t_k^{2 sigma_jk} * Delta_j(c_eps)
        for name in ["orthant2", "sym2", "vinberg3"] {
            let (entry, chart) = Chart::catalog(name).unwrap();
            let sigma = entry.cone.sigma();
            let t: Vec<f64> = (0..chart.rank).map(|k| 0.7 + 0.3 * k as f64).collect();
            let l: Vec<f64> = (0..chart.off_diagonal_count()).map(|k| 0.4 - 0.3 * k as f64).collect();
            for bits in 0..1u32 << chart.rank {
                let eps: Vec<f64> = (0..chart.rank).map(|k| if bits >> k & 1 == 0 { 1.0 } else { -1.0 }).collect();
                let x = chart.orbit_point(&eps, &t, &l);
                let d = chart.invariants(&x);
                let base = chart.invariants(&chart.orbit_point(&eps, &vec![1.0; chart.rank], &vec![0.0; l.len()]));
                for j in 0..chart.rank {
                    let chi: f64 = (0..chart.rank).map(|k| t[k].powi(2 * sigma[j][k] as i32)).product();
                    assert!((d[j] - chi * base[j]).abs() < 1e-13, "{name}");
                }
                let eps_i: Vec<i8> = eps.iter().map(|&e| e as i8).collect();
                assert_eq!(chart.orbit_of(&entry.cone, &x), Some(eps_i));
            }
        }
    }

    #[test]
    fn action_is_a_homomorphism_on_orbit_points() {
        let chart = Chart::symmetric_two();
        let h = GroupElement {
            t: vec![1.3, 0.7],
            l: vec![0.4],
        };
        let x = chart.orbit_point(&[1.0, 1.0], &[0.9, 1.2], &[-0.2]);
        let back = chart.act(&chart.inverse(&h), &chart.act(&h, &x));
        for (a, b) in back.iter().zip(&x) {
            assert!((a - b).abs() < 1e-14);
        }
        let v = Chart::vinberg();
        let g = GroupElement {
            t: vec![1.2, 0.9, 1.1],
            l: vec![0.3, -0.2],
        };
        let y = v.orbit_point(&[1.0, 1.0, 1.0], &[0.8, 1.1, 0.7], &[0.5, 0.1]);
        let back = v.act(&v.inverse(&g), &v.act(&g, &y));
        for (a, b) in back.iter().zip(&y) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
