//! One-dimensional quadrature rules: adaptive Gauss-Kronrod (7/15),
//! Gauss-Legendre nodes, and trapezoid meshes for the whole line and for the
//! half line after an exp-sinh substitution.

use std::collections::BinaryHeap;
use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

fn kronrod(f: &mut impl FnMut(f64) -> Complex64, a: f64, b: f64) -> Estimate {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += s * WGK[i];
        if i % 2 == 1 {
            g += s * WG[i / 2];
        }
    }
    Estimate {
        value: k * h,
        error: ((k - g) * h).norm(),
    }
}

struct Piece {
    a: f64,
    b: f64,
    est: Estimate,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Globally adaptive Gauss-Kronrod on `[a, b]`, bisecting the piece with the
/// largest error until the summed error is within `max(abs_tol, rel_tol |I|)`.
pub fn integrate(
    mut f: impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_pieces: usize,
) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
        });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(&mut f, a, b);
    let mut total = first;
    heap.push(Piece { a, b, est: first });
    while total.error > abs_tol.max(rel_tol * total.value.norm()) {
        if heap.len() >= max_pieces {
            return Err(Error::QuadratureNonConvergence {
                estimate: total.error,
                tolerance: abs_tol.max(rel_tol * total.value.norm()),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        let left = kronrod(&mut f, worst.a, m);
        let right = kronrod(&mut f, m, worst.b);
        total.value += left.value + right.value - worst.est.value;
        heap.push(Piece { a: worst.a, b: m, est: left });
        heap.push(Piece { a: m, b: worst.b, est: right });
        // recompute to avoid drift in the running error
        total.error = heap.iter().map(|p| p.est.error).sum();
    }
    total.value = heap.iter().map(|p| p.est.value).sum();
    Ok(total)
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre nodes on `[a, b]` with `panels` equal panels.
pub fn composite_gauss_legendre(a: f64, b: f64, panels: usize, order: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        for (xi, wi) in x.iter().zip(&w) {
            out.push((lo + 0.5 * width * (xi + 1.0), 0.5 * width * wi));
        }
    }
    out
}

/// Trapezoid nodes with spacing `h` on `[-half_width, half_width]`.
pub fn line_mesh(h: f64, half_width: f64) -> Vec<(f64, f64)> {
    let n = (half_width / h).round() as i64;
    (-n..=n).map(|k| (k as f64 * h, h)).collect()
}

/// Nodes for `int_0^inf g(t) dt` after `t = exp((pi/2) sinh v)`, trapezoid in
/// `v` over `[v_min, v_max]` with spacing `h`. Weights include `dt/dv`.
pub fn half_line_mesh(h: f64, v_min: f64, v_max: f64) -> Vec<(f64, f64)> {
    let lo = (v_min / h).floor() as i64;
    let hi = (v_max / h).ceil() as i64;
    (lo..=hi)
        .map(|k| {
            let v = k as f64 * h;
            let t = (std::f64::consts::FRAC_PI_2 * v.sinh()).exp();
            (t, h * t * std::f64::consts::FRAC_PI_2 * v.cosh())
        })
        .collect()
}
