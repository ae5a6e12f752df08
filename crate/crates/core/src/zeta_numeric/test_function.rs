//! Finite sums of tensor-product Hermite functions
//! `psi_n(x) = H_n(sqrt(2 pi) x) exp(-pi x^2)` in chart coordinates.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::chart::Chart;
use crate::error::{Error, Result};

/// Highest Hermite degree accepted in a term.
pub const MAX_DEGREE: u32 = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Complex64,
    pub index: Vec<u32>,
}

/// `f(x) = sum coeff * prod_i psi_{n_i}(sqrt(w_i) x_i)` with the chart weights `w`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub chart: Chart,
    pub terms: Vec<Term>,
}

/// Coefficients of the physicists' Hermite polynomial `H_n`, lowest degree first.
pub fn hermite_coefficients(n: u32) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 2.0];
    for k in 1..n as usize {
        // H_{k+1} = 2x H_k - 2k H_{k-1}
        let mut next = vec![0.0; k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= 2.0 * k as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `psi_n(x)`.
pub fn hermite_function(n: u32, x: f64) -> f64 {
    let y = (2.0 * PI).sqrt() * x;
    let (mut h0, mut h1) = (1.0, 2.0 * y);
    let h = match n {
        0 => h0,
        _ => {
            for k in 1..n {
                let h2 = 2.0 * y * h1 - 2.0 * k as f64 * h0;
                h0 = h1;
                h1 = h2;
            }
            h1
        }
    };
    h * (-PI * x * x).exp()
}

impl TestFunction {
    pub fn new(chart: Chart, terms: Vec<Term>) -> Result<Self> {
        let dim = chart.dimension();
        for t in &terms {
            if t.index.len() != dim {
                return Err(Error::Shape {
                    what: "Hermite multi-index length",
                    expected: dim,
                    got: t.index.len(),
                });
            }
            if let Some(&n) = t.index.iter().find(|&&n| n > MAX_DEGREE) {
                return Err(Error::IndexOutOfRange(format!("Hermite degree {n} exceeds {MAX_DEGREE}")));
            }
        }
        Ok(Self { chart, terms })
    }

    pub fn gaussian(chart: Chart) -> Self {
        Self::hermite(chart, vec![0; chart.dimension()]).expect("zero index is valid")
    }

    pub fn hermite(chart: Chart, index: Vec<u32>) -> Result<Self> {
        Self::new(
            chart,
            vec![Term {
                coeff: Complex64::new(1.0, 0.0),
                index,
            }],
        )
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().flat_map(|t| t.index.iter().copied()).max().unwrap_or(0)
    }

    /// `true` if every term has only even degrees, so `f(-x_i) = f(x)` in
    /// each coordinate separately.
    pub fn is_even_in_each_coordinate(&self) -> bool {
        self.terms.iter().all(|t| t.index.iter().all(|n| n % 2 == 0))
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let w = self.chart.weights();
        let dim = x.len();
        let top = self.max_degree() as usize;
        let mut exponent = 0.0;
        // h[i][n] = H_n(sqrt(2 pi w_i) x_i)
        let mut h = vec![[0.0f64; MAX_DEGREE as usize + 1]; dim];
        for i in 0..dim {
            let u = w[i].sqrt() * x[i];
            exponent += u * u;
            let y = (2.0 * PI).sqrt() * u;
            h[i][0] = 1.0;
            if top >= 1 {
                h[i][1] = 2.0 * y;
            }
            for k in 1..top {
                h[i][k + 1] = 2.0 * y * h[i][k] - 2.0 * k as f64 * h[i][k - 1];
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let p: f64 = t.index.iter().enumerate().map(|(i, &n)| h[i][n as usize]).product();
            acc += t.coeff * p;
        }
        acc * (-PI * exponent).exp()
    }

    /// Fourier transform with kernel `exp(2 pi i <x, y>)` for the chart inner
    /// product; each `psi_n(sqrt(w) y)` maps to `(i^n / sqrt w) psi_n(sqrt(w) x)`.
    pub fn fourier(&self) -> Result<Self> {
        if !self.chart.has_inner_product() {
            return Err(Error::MissingInnerProduct(self.chart.name().to_string()));
        }
        let w = self.chart.weights();
        let powers = [
            Complex64::new(1.0, 0.0),
            Complex64::i(),
            Complex64::new(-1.0, 0.0),
            -Complex64::i(),
        ];
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let phase: Complex64 = t
                    .index
                    .iter()
                    .zip(&w)
                    .map(|(&n, wi)| powers[(n % 4) as usize] / wi.sqrt())
                    .product();
                Term {
                    coeff: t.coeff * phase,
                    index: t.index.clone(),
                }
            })
            .collect();
        Ok(Self {
            chart: self.chart,
            terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    #[test]
    fn hermite_polynomials() {
        assert_eq!(hermite_coefficients(0), vec![1.0]);
        assert_eq!(hermite_coefficients(1), vec![0.0, 2.0]);
        assert_eq!(hermite_coefficients(2), vec![-2.0, 0.0, 4.0]);
        assert_eq!(hermite_coefficients(3), vec![0.0, -12.0, 0.0, 8.0]);
        assert_eq!(hermite_coefficients(4), vec![12.0, 0.0, -48.0, 0.0, 16.0]);
        for n in 0..=6 {
            let c = hermite_coefficients(n);
            let x: f64 = 0.37;
            let y = (2.0 * PI).sqrt() * x;
            let poly: f64 = c.iter().enumerate().map(|(k, a)| a * y.powi(k as i32)).sum();
            assert!((poly * (-PI * x * x).exp() - hermite_function(n, x)).abs() < 1e-12);
        }
    }

    // 1-d Fourier transform by adaptive quadrature with the +2 pi i kernel
    fn transform_1d(n: u32, w: f64, x: f64) -> Complex64 {
        let half = 7.0 / w.sqrt();
        integrate(
            |y| hermite_function(n, w.sqrt() * y) * (Complex64::i() * 2.0 * PI * w * x * y).exp(),
            -half,
            half,
            1e-13,
            0.0,
            4000,
        )
        .unwrap()
        .value
    }

    #[test]
    fn fourier_phase_matches_numerical_transform() {
        for n in 0..=5 {
            for &w in &[1.0f64, 2.0] {
                for &x in &[0.0, 0.3, -0.8] {
                    let expect = Complex64::i().powu(n) / w.sqrt() * hermite_function(n, w.sqrt() * x);
                    let got = transform_1d(n, w, x);
                    assert!((got - expect).norm() < 1e-10, "n={n} w={w} x={x}: {got} vs {expect}");
                }
            }
        }
    }

    #[test]
    fn gaussian_transforms() {
        let g = TestFunction::gaussian(Chart::orthant(2));
        assert_eq!(g.fourier().unwrap(), g);
        let s = TestFunction::gaussian(Chart::symmetric_two());
        let fs = s.fourier().unwrap();
        assert!((fs.terms[0].coeff - Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        let odd = TestFunction::hermite(Chart::orthant(2), vec![1, 0]).unwrap();
        assert_eq!(odd.fourier().unwrap().terms[0].coeff, Complex64::i());
        assert!(matches!(
            TestFunction::gaussian(Chart::vinberg()).fourier(),
            Err(Error::MissingInnerProduct(_))
        ));
    }

    #[test]
    fn eval_matches_product_of_hermite_functions() {
        let f = TestFunction::new(
            Chart::symmetric_two(),
            vec![
                Term {
                    coeff: Complex64::new(0.5, -1.0),
                    index: vec![1, 2, 0],
                },
                Term {
                    coeff: Complex64::new(2.0, 0.0),
                    index: vec![0, 0, 3],
                },
            ],
        )
        .unwrap();
        let x = [0.3, -0.2, 0.9];
        let r2 = 2f64.sqrt();
        let expect = Complex64::new(0.5, -1.0) * hermite_function(1, x[0]) * hermite_function(2, r2 * x[1]) * hermite_function(0, x[2])
            + 2.0 * hermite_function(0, x[0]) * hermite_function(0, r2 * x[1]) * hermite_function(3, x[2]);
        assert!((f.eval(&x) - expect).norm() < 1e-14);
        assert!(TestFunction::hermite(Chart::orthant(2), vec![1]).is_err());
        assert!(TestFunction::hermite(Chart::orthant(2), vec![9, 0]).is_err());
    }

    #[test]
    fn sym2_fourier_by_coordinate_integral() {
        // F[exp(-pi tr(y^2))](x) at x = (0.2, 0.1, -0.3) with kernel
        // exp(2 pi i (a a' + 2 b b' + c c')), as a product of three 1-d transforms
        let x = [0.2, 0.1, -0.3];
        let w = [1.0, 2.0, 1.0];
        let mut value = Complex64::new(1.0, 0.0);
        for i in 0..3 {
            value *= integrate(
                |y| (-PI * w[i] * y * y).exp() * (Complex64::i() * 2.0 * PI * w[i] * x[i] * y).exp(),
                -7.0,
                7.0,
                1e-14,
                0.0,
                2000,
            )
            .unwrap()
            .value;
        }
        let f = TestFunction::gaussian(Chart::symmetric_two()).fourier().unwrap();
        assert!((f.eval(&x) - value).norm() < 1e-12);
    }
}
