//! Diagonal factors, rotation generators and rotations from which the
//! Hadamard-conjugated gamma matrix is assembled, plus the completion
//! scaling and unit-phase factor used when the gamma matrix diagonalizes.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma_matrices::ThetaParams;
use crate::matrix::ComplexMatrix;
use crate::sign_algebra::{digit_order, kron_word};
use crate::special_functions::{c_half, log_gamma, s_half};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_rank(r: usize) -> Result<()> {
    if r < 2 {
        Err(Error::RankTooSmall { got: r, min: 2 })
    } else {
        Ok(())
    }
}

fn check_pair(r: usize, k: usize, j: usize) -> Result<()> {
    check_rank(r)?;
    if !(1 <= j && j < k && k <= r) {
        return Err(Error::IndexOutOfRange(format!("pair ({k}, {j}) for rank {r}")));
    }
    Ok(())
}

fn diag_entries(r: usize, j: usize, alpha: Complex64) -> Vec<Complex64> {
    match (r, j) {
        (2, 1) => vec![c_half(alpha), s_half(alpha)],
        (2, 2) => vec![c_half(alpha), -s_half(alpha)],
        (_, 1) => {
            let half = 1 << (r - 2);
            let mut v = vec![c_half(alpha); half];
            v.extend(std::iter::repeat_n(s_half(alpha), half));
            v
        }
        (_, 2) => {
            let mut v = diag_entries(r - 1, 1, alpha);
            v.extend(diag_entries(r - 1, 1, alpha + 1.0));
            v
        }
        _ => {
            let inner = diag_entries(r - 1, j - 1, alpha);
            let mut v = inner.clone();
            v.extend(inner);
            v
        }
    }
}

/// Diagonal factor of size `2^(r-1)` attached to variable `j`.
pub fn diag_factor(r: usize, j: usize, alpha: Complex64) -> Result<ComplexMatrix> {
    check_rank(r)?;
    if !(1..=r).contains(&j) {
        return Err(Error::IndexOutOfRange(format!("variable {j} for rank {r}")));
    }
    Ok(ComplexMatrix::diagonal(&diag_entries(r, j, alpha)))
}

fn rot2() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]])
}

fn swap2() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

fn word(identity_left: usize, swaps: usize, identity_right: usize) -> ComplexMatrix {
    let i2 = ComplexMatrix::identity(2);
    let a2 = swap2();
    let r2 = rot2();
    let mut factors: Vec<&ComplexMatrix> = Vec::new();
    factors.extend(std::iter::repeat_n(&i2, identity_left));
    factors.extend(std::iter::repeat_n(&a2, swaps));
    factors.push(&r2);
    factors.extend(std::iter::repeat_n(&i2, identity_right));
    kron_word(&factors)
}

/// Which Kronecker word defines the rotation generator for the pair `(k, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorWord {
    /// `(r-k)` identities, `(k-j-1)` swaps, one rotation, `(j-1)` identities.
    Adopted,
    /// `(r-k-j+1)` identities and `(k-2)` swaps ahead of the rotation. Only
    /// constructible when `r - k - j + 1 >= 0`; otherwise the adopted word
    /// is used.
    LiteralCounts,
}

/// How the rotation angle enters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AngleScale {
    /// `cos(pi theta / 2) I + sin(pi theta / 2) X`.
    HalfPi,
    /// `cos(theta) I + sin(theta) X`.
    Unscaled,
}

/// Real skew-symmetric generator with square `-I`, of size `2^(r-1)`.
pub fn rotation_generator(r: usize, k: usize, j: usize) -> Result<ComplexMatrix> {
    generator_with(r, k, j, GeneratorWord::Adopted)
}

pub fn generator_with(r: usize, k: usize, j: usize, reading: GeneratorWord) -> Result<ComplexMatrix> {
    check_pair(r, k, j)?;
    let adopted = || word(r - k, k - j - 1, j - 1);
    Ok(match reading {
        GeneratorWord::Adopted => adopted(),
        GeneratorWord::LiteralCounts => match (r + 1).checked_sub(k + j) {
            Some(left) => word(left, k - 2, j - 1),
            None => adopted(),
        },
    })
}

/// `exp((pi/2) theta X)` for the generator of the pair `(k, j)`.
pub fn rotation(r: usize, k: usize, j: usize, theta: f64) -> Result<ComplexMatrix> {
    rotation_with(r, k, j, theta, GeneratorWord::Adopted, AngleScale::HalfPi)
}

pub fn rotation_with(
    r: usize,
    k: usize,
    j: usize,
    theta: f64,
    reading: GeneratorWord,
    scale: AngleScale,
) -> Result<ComplexMatrix> {
    let x = generator_with(r, k, j, reading)?;
    let (c, s) = match scale {
        AngleScale::HalfPi => (c_half(theta.into()), s_half(theta.into())),
        AngleScale::Unscaled => (Complex64::new(theta.cos(), 0.0), Complex64::new(theta.sin(), 0.0)),
    };
    Ok(ComplexMatrix::identity(x.size()).scale(c).add(&x.scale(s)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorLabel {
    Scalar { value: Complex64 },
    BlockPhase,
    Diagonal { j: usize, alpha: Complex64 },
    Rotation { k: usize, j: usize, theta: f64 },
}

impl std::fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FactorLabel::Scalar { value } => write!(f, "scalar {}", fmt_complex(*value)),
            FactorLabel::BlockPhase => write!(f, "block-phase"),
            FactorLabel::Diagonal { j, alpha } => write!(f, "diagonal j={j} alpha={}", fmt_complex(*alpha)),
            FactorLabel::Rotation { k, j, theta } => write!(f, "rotation k={k} j={j} theta={theta}"),
        }
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub label: FactorLabel,
    #[serde(flatten)]
    pub matrix: ComplexMatrix,
}

/// Ordered product `f_1 f_2 ... f_n` of labeled factors, with the product
/// cached at construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorProduct {
    factors: Vec<Factor>,
    #[serde(skip)]
    product: Option<ComplexMatrix>,
}

impl FactorProduct {
    pub fn new(factors: Vec<Factor>) -> Self {
        let size = factors.first().map(|f| f.matrix.size()).unwrap_or(0);
        assert!(factors.iter().all(|f| f.matrix.size() == size), "factor sizes differ");
        let product = factors
            .iter()
            .fold(ComplexMatrix::identity(size), |acc, f| acc.matmul(&f.matrix));
        Self {
            factors,
            product: Some(product),
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn assembled(&self) -> ComplexMatrix {
        match &self.product {
            Some(p) => p.clone(),
            None => FactorProduct::new(self.factors.clone()).assembled(),
        }
    }
}

/// Factors of `2^(r-1) a_r a_{r-1} ... a_1` with
/// `a_j = P_{r,j} ... P_{j+1,j} D_j(alpha_j)`, built with the given readings.
pub fn decomposition_with(
    r: usize,
    alpha: &[Complex64],
    theta: &ThetaParams,
    reading: GeneratorWord,
    scale: AngleScale,
) -> Result<FactorProduct> {
    check_rank(r)?;
    check_len(r, alpha)?;
    let scalar = Complex64::new((1u64 << (r - 1)) as f64, 0.0);
    let mut factors = vec![Factor {
        label: FactorLabel::Scalar { value: scalar },
        matrix: ComplexMatrix::identity(1 << (r - 1)).scale(scalar),
    }];
    for j in (1..=r).rev() {
        for k in (j + 1..=r).rev() {
            let t = theta.get(k, j);
            factors.push(Factor {
                label: FactorLabel::Rotation { k, j, theta: t },
                matrix: rotation_with(r, k, j, t, reading, scale)?,
            });
        }
        factors.push(Factor {
            label: FactorLabel::Diagonal { j, alpha: alpha[j - 1] },
            matrix: diag_factor(r, j, alpha[j - 1])?,
        });
    }
    Ok(FactorProduct::new(factors))
}

/// Factorization of the Hadamard conjugate of the cosine block.
pub fn decomposition_rhs(r: usize, alpha: &[Complex64], theta: &ThetaParams) -> Result<FactorProduct> {
    decomposition_with(r, alpha, theta, GeneratorWord::Adopted, AngleScale::HalfPi)
}

fn check_len(r: usize, alpha: &[Complex64]) -> Result<()> {
    if alpha.len() != r {
        return Err(Error::Shape {
            what: "alpha length",
            expected: r,
            got: alpha.len(),
        });
    }
    Ok(())
}

/// `Gamma(a) / (2 pi)^a`.
fn gamma_weight(a: Complex64) -> Result<Complex64> {
    Ok((log_gamma(a)? - a * (2.0 * PI).ln()).exp())
}

/// Factorization of `J^(r) * gamma_matrix * J^(r)`: a block-phase factor
/// `2^r blockdiag(I, iI)` followed by doubled rotations and gamma-weighted
/// doubled diagonals, the first variable's diagonal carrying the shift
/// `alpha_1 - 1` in its lower block.
pub fn factored_gamma_matrix(r: usize, alpha: &[Complex64], theta: &ThetaParams) -> Result<FactorProduct> {
    check_rank(r)?;
    check_len(r, alpha)?;
    let half = 1usize << (r - 1);
    let id = ComplexMatrix::identity(half);
    let phase = ComplexMatrix::block_diag(&id, &id.scale(Complex64::i())).scale(Complex64::new((2 * half) as f64, 0.0));
    let mut factors = vec![Factor {
        label: FactorLabel::BlockPhase,
        matrix: phase,
    }];
    for j in (1..=r).rev() {
        for k in (j + 1..=r).rev() {
            let t = theta.get(k, j);
            let p = rotation(r, k, j, t)?;
            factors.push(Factor {
                label: FactorLabel::Rotation { k, j, theta: t },
                matrix: ComplexMatrix::block_diag(&p, &p),
            });
        }
        let a = alpha[j - 1];
        let upper = diag_factor(r, j, a)?;
        let lower = if j == 1 { diag_factor(r, 1, a - 1.0)? } else { upper.clone() };
        factors.push(Factor {
            label: FactorLabel::Diagonal { j, alpha: a },
            matrix: ComplexMatrix::block_diag(&upper, &lower).scale(gamma_weight(a)?),
        });
    }
    Ok(FactorProduct::new(factors))
}

/// Diagonal scaling with entry `pi^{|alpha|/2} / Gamma((alpha + a)/2)` at
/// digit `a`, in digit order.
pub fn completion_scaling(r: usize, alpha: &[Complex64]) -> Result<ComplexMatrix> {
    check_len(r, alpha)?;
    let total: Complex64 = alpha.iter().sum();
    let base = total * 0.5 * PI.ln();
    let mut diag = Vec::with_capacity(1 << r);
    for d in digit_order(r)? {
        let mut l = base;
        for (a, &bit) in alpha.iter().zip(d.entries()) {
            l -= log_gamma((a + f64::from(bit)) * 0.5)?;
        }
        diag.push(l.exp());
    }
    Ok(ComplexMatrix::diagonal(&diag))
}

/// `(-1)^m diag(i^{|a|})` in digit order.
pub fn epsilon_factor(r: usize, m: u8) -> Result<ComplexMatrix> {
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let powers = [ONE, Complex64::i(), -ONE, -Complex64::i()];
    let diag: Vec<Complex64> = digit_order(r)?
        .iter()
        .map(|d| powers[d.weight() % 4] * sign)
        .collect();
    Ok(ComplexMatrix::diagonal(&diag))
}

/// Eigenvalues `(-1)^m 2^r i^{|a|} prod_j c(alpha_j - a_j)` of the phase
/// matrix on the columns `k_a`, in digit order.
pub fn completion_eigenvalues(r: usize, alpha: &[Complex64], m: u8) -> Result<Vec<Complex64>> {
    check_len(r, alpha)?;
    let eps = epsilon_factor(r, m)?.diag();
    let scale = (1u64 << r) as f64;
    Ok(digit_order(r)?
        .iter()
        .zip(eps)
        .map(|(d, e)| {
            let prod: Complex64 = alpha
                .iter()
                .zip(d.entries())
                .map(|(a, &bit)| c_half(a - f64::from(bit)))
                .product();
            e * scale * prod
        })
        .collect())
}
