//! The sign-indexed phase matrix, its cosine and sine blocks, the Gindikin
//! gamma function and the full gamma matrix of the functional equation.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cone_model::ConeStructure;
use crate::error::{Error, Result};
use crate::matrix::{wrap_angle, ComplexMatrix, LogDet};
use crate::sign_algebra::{sign_order, SignVector};
use crate::special_functions::{c_half, log_gamma, log_gamma_prefactor, pole_distance, sin_pi_full, POLE_PROXIMITY};

/// Real parameters `theta_kj` for `1 <= j < k <= r`; `theta = n / 2` recovers
/// the cone case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaParams {
    rank: usize,
    values: Vec<Vec<f64>>,
}

impl ThetaParams {
    pub fn zeros(rank: usize) -> Self {
        Self::uniform(rank, 0.0)
    }

    pub fn uniform(rank: usize, v: f64) -> Self {
        Self {
            rank,
            values: (0..rank).map(|k| vec![v; k]).collect(),
        }
    }

    pub fn from_fn(rank: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self {
            rank,
            values: (0..rank).map(|k| (0..k).map(|j| f(k + 1, j + 1)).collect()).collect(),
        }
    }

    /// `theta_kj = n_kj / 2`.
    pub fn from_cone(cone: &ConeStructure) -> Self {
        Self::from_fn(cone.rank(), |k, j| f64::from(cone.structure_constant(k, j)) / 2.0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `theta_kj`, 1-based with `j < k`.
    pub fn get(&self, k: usize, j: usize) -> f64 {
        self.values[k - 1][j - 1]
    }

    pub fn set(&mut self, k: usize, j: usize, v: f64) {
        self.values[k - 1][j - 1] = v;
    }

    /// `(k, j, theta_kj)` in row order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().enumerate().map(move |(j, &v)| (k + 1, j + 1, v)))
    }
}

fn check(r: usize, alpha: &[Complex64], theta: &ThetaParams) -> Result<()> {
    if r < 2 {
        return Err(Error::RankTooSmall { got: r, min: 2 });
    }
    if alpha.len() != r {
        return Err(Error::Shape {
            what: "alpha length",
            expected: r,
            got: alpha.len(),
        });
    }
    if theta.rank() != r {
        return Err(Error::Shape {
            what: "theta rank",
            expected: r,
            got: theta.rank(),
        });
    }
    Ok(())
}

/// `sum_j eps_j delta_j alpha_j + sum_{j<k} eps_j delta_k theta_kj`.
fn phase(eps: &SignVector, delta: &SignVector, alpha: &[Complex64], theta: &ThetaParams) -> Complex64 {
    let r = alpha.len();
    let mut z = Complex64::new(0.0, 0.0);
    for j in 0..r {
        z += alpha[j] * (eps.get(j) * delta.get(j));
    }
    let mut t = 0.0;
    for k in 2..=r {
        for j in 1..k {
            t += eps.get(j - 1) * delta.get(k - 1) * theta.get(k, j);
        }
    }
    z + t
}

fn phase_table(r: usize, alpha: &[Complex64], theta: &ThetaParams, half: bool) -> Result<(Vec<SignVector>, Vec<Complex64>)> {
    check(r, alpha, theta)?;
    let mut signs = sign_order(r)?;
    if half {
        signs.truncate(1 << (r - 1));
    }
    let n = signs.len();
    let mut table = Vec::with_capacity(n * n);
    for e in &signs {
        for d in &signs {
            table.push(phase(e, d, alpha, theta));
        }
    }
    Ok((signs, table))
}

/// Phase matrix with entry `exp((pi i / 2) phase(eps, delta))`, rows and
/// columns in sign order.
pub fn phase_matrix(r: usize, alpha: &[Complex64], theta: &ThetaParams) -> Result<ComplexMatrix> {
    let (signs, table) = phase_table(r, alpha, theta, false)?;
    let n = signs.len();
    Ok(ComplexMatrix::from_fn(n, |i, j| {
        (Complex64::i() * FRAC_PI_2 * table[i * n + j]).exp()
    }))
}

/// `c(phase(eps, delta))` over sign vectors with `eps_1 = delta_1 = 1`.
pub fn cosine_block(r: usize, alpha: &[Complex64], theta: &ThetaParams) -> Result<ComplexMatrix> {
    let (signs, table) = phase_table(r, alpha, theta, true)?;
    let n = signs.len();
    Ok(ComplexMatrix::from_fn(n, |i, j| c_half(table[i * n + j])))
}

/// `s(phase(eps, delta))` over sign vectors with `eps_1 = delta_1 = 1`.
pub fn sine_block(r: usize, alpha: &[Complex64], theta: &ThetaParams) -> Result<ComplexMatrix> {
    let (signs, table) = phase_table(r, alpha, theta, true)?;
    let n = signs.len();
    Ok(ComplexMatrix::from_fn(n, |i, j| crate::special_functions::s_half(table[i * n + j])))
}

/// `log Gamma_Omega(alpha) = ((n - r)/2) log 2 pi + sum_j log Gamma(alpha_j - p_j/2)`.
pub fn log_gindikin_gamma(cone: &ConeStructure, alpha: &[Complex64]) -> Result<Complex64> {
    let (p, _, _) = cone.derived_vectors();
    let shifted: Vec<Complex64> = alpha.iter().zip(p.to_f64()).map(|(a, pk)| a - 0.5 * pk).collect();
    let extra = (cone.dimension() - cone.rank()) as f64 / 2.0;
    let mut acc = Complex64::new(extra * (2.0 * PI).ln(), 0.0);
    for z in shifted {
        acc += log_gamma(z)?;
    }
    Ok(acc)
}

pub fn gindikin_gamma(cone: &ConeStructure, alpha: &[Complex64]) -> Result<Complex64> {
    log_gindikin_gamma(cone, alpha).map(|l| l.exp())
}

/// `(Gamma(alpha) / (2 pi)^{|alpha|}) * phase_matrix(alpha, theta)`.
pub fn gamma_matrix(r: usize, alpha: &[Complex64], theta: &ThetaParams) -> Result<ComplexMatrix> {
    let pref = log_gamma_prefactor(alpha)?.exp();
    Ok(phase_matrix(r, alpha, theta)?.scale(pref))
}

/// Coefficient matrix of the functional equation of the local zeta functions
/// of `cone`: `Gamma_Omega(s sigma) / (2 pi)^{|s sigma|}` times the phase matrix
/// at `alpha = s sigma - p/2`, `theta = n/2`.
pub fn cone_gamma_matrix(cone: &ConeStructure, s: &[Complex64]) -> Result<ComplexMatrix> {
    let ss = cone.s_sigma(s);
    let total: Complex64 = ss.iter().sum();
    let pref = (log_gindikin_gamma(cone, &ss)? - total * (2.0 * PI).ln()).exp();
    let alpha = cone.alpha_from_s(s);
    Ok(phase_matrix(cone.rank(), &alpha, &ThetaParams::from_cone(cone))?.scale(pref))
}

/// Outcome of comparing the numerical determinant of the gamma matrix with
/// `(Gamma(alpha)/(2 pi)^{|alpha|})^{2^r} (prod_j 2 sin pi alpha_j)^{2^{r-1}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DetComparison {
    pub numeric: LogDet,
    /// `None` when some `alpha_j` is an integer and the closed form vanishes.
    pub closed_form: Option<(f64, f64)>,
    /// Relative residual, or the absolute determinant in the degenerate case.
    pub residual: f64,
}

impl DetComparison {
    pub fn is_degenerate(&self) -> bool {
        self.closed_form.is_none()
    }
}

/// Log-magnitude and argument of the closed-form determinant; `None` if it
/// vanishes.
pub fn det_closed_form(r: usize, alpha: &[Complex64]) -> Result<Option<(f64, f64)>> {
    let pref = log_gamma_prefactor(alpha)?;
    let mut sines = Complex64::new(0.0, 0.0);
    for &a in alpha {
        let s = sin_pi_full(a) * 2.0;
        if s == Complex64::new(0.0, 0.0) {
            return Ok(None);
        }
        sines += Complex64::new(s.norm().ln(), s.arg());
    }
    let full = pref * (1u64 << r) as f64 + sines * (1u64 << (r - 1)) as f64;
    Ok(Some((full.re, wrap_angle(full.im))))
}

pub fn det_formula_check(r: usize, alpha: &[Complex64], theta: &ThetaParams) -> Result<DetComparison> {
    check(r, alpha, theta)?;
    for &a in alpha {
        let d = (a - a.re.round()).norm();
        if d > 0.0 && d < POLE_PROXIMITY {
            return Err(Error::NearPole { z: a, distance: d });
        }
        if pole_distance(a) < POLE_PROXIMITY {
            return Err(Error::NearPole {
                z: a,
                distance: pole_distance(a),
            });
        }
    }
    let numeric = gamma_matrix(r, alpha, theta)?.log_det();
    let closed_form = det_closed_form(r, alpha)?;
    let residual = match (closed_form, numeric) {
        (None, det) => det.value().norm(),
        (Some(_), LogDet::Zero) => 1.0,
        (Some((la, aa)), LogDet::Finite { log_abs, arg }) => {
            let delta = Complex64::new(log_abs - la, wrap_angle(arg - aa));
            (delta.exp() - 1.0).norm()
        }
    };
    Ok(DetComparison {
        numeric,
        closed_form,
        residual,
    })
}
