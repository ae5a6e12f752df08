//! Dense square complex matrices.
//!
//! Sizes in this crate never exceed `2^10`, so plain row-major storage with
//! naive multiplication is all that is needed.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    size: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            entries: vec![ZERO; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        Self { size, entries }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let size = rows.len();
        Self::from_fn(size, |i, j| {
            assert_eq!(rows[i].len(), size, "non-square row {i}");
            Complex64::new(rows[i][j], 0.0)
        })
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// `blockdiag(a, b)`; both blocks must have equal size.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        assert_eq!(a.size, b.size, "block_diag operands differ in size");
        let n = a.size;
        let mut m = Self::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = a[(i, j)];
                m[(n + i, n + j)] = b[(i, j)];
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.size).map(|i| self[(i, i)]).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.size).map(|i| self[(i, j)]).collect()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            size: self.size,
            entries: self.entries.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |i, j| self[(j, i)])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        Self {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        Self {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "matmul size mismatch");
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.entries[k * n..(k + 1) * n];
                let dst = &mut out.entries[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.size);
        let n = self.size;
        (0..n)
            .map(|i| {
                self.entries[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self * other * self`, the conjugation used throughout for symmetric
    /// involutions such as the Hadamard matrices.
    pub fn sandwich(&self, other: &Self) -> Self {
        self.matmul(other).matmul(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.size, other.size);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.size;
        let mut m = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m = m.max(self[(i, j)].norm());
                }
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Determinant in logarithmic form via LU with partial pivoting.
    pub fn log_det(&self) -> LogDet {
        let n = self.size;
        let mut a = self.entries.clone();
        let mut log_abs = 0.0;
        let mut arg = 0.0;
        for col in 0..n {
            let (piv, piv_abs) = (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if piv_abs == 0.0 {
                return LogDet::Zero;
            }
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                arg += std::f64::consts::PI;
            }
            let p = a[col * n + col];
            log_abs += piv_abs.ln();
            arg += p.arg();
            for r in col + 1..n {
                let factor = a[r * n + col] / p;
                if factor == ZERO {
                    continue;
                }
                for j in col + 1..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= factor * v;
                }
            }
        }
        LogDet::Finite {
            log_abs,
            arg: wrap_angle(arg),
        }
    }
}

/// Determinant as `exp(log_abs + i arg)`, or exactly zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LogDet {
    Zero,
    Finite { log_abs: f64, arg: f64 },
}

impl LogDet {
    pub fn value(&self) -> Complex64 {
        match *self {
            LogDet::Zero => ZERO,
            LogDet::Finite { log_abs, arg } => Complex64::from_polar(log_abs.exp(), arg),
        }
    }

    pub fn log_abs(&self) -> f64 {
        match *self {
            LogDet::Zero => f64::NEG_INFINITY,
            LogDet::Finite { log_abs, .. } => log_abs,
        }
    }
}

/// Maps an angle into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    use std::f64::consts::PI;
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.size + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.size + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}
