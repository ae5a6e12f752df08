//! Complex gamma function and the half-angle trigonometric helpers
//! `c(z) = cos(pi z / 2)`, `s(z) = sin(pi z / 2)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Below this distance from a pole the identity checks refuse to evaluate.
pub const POLE_PROXIMITY: f64 = 1e-6;

const LN_2PI: f64 = 1.837_877_066_409_345_5;

// B_{2k} / (2k (2k - 1)) for k = 1..=10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

const STIRLING_START: f64 = 15.0;

/// `true` for `0, -1, -2, ...`.
pub fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Distance from `z` to the nearest non-positive integer.
pub fn pole_distance(z: Complex64) -> f64 {
    let n = z.re.round().min(0.0);
    (z - n).norm()
}

/// `log Gamma(z)`, continued analytically from the positive axis with the cut
/// along the negative real axis. Uses upward recurrence to `Re z >= 15`
/// followed by the Stirling series.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole(z));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Internal(format!("log_gamma of non-finite {z}")));
    }
    let shift = (STIRLING_START - z.re).ceil().max(0.0) as usize;
    let mut w = z;
    let mut log_abs = 0.0;
    let mut arg = 0.0;
    for _ in 0..shift {
        log_abs += w.norm().ln();
        arg += w.arg();
        w += 1.0;
    }
    Ok(stirling(w) - Complex64::new(log_abs, arg))
}

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * LN_2PI + series
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(|l| l.exp())
}

/// `1 / Gamma(z)`, zero at the poles of `Gamma`.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// `sum_j log Gamma(alpha_j)`.
pub fn log_gamma_sum(alpha: &[Complex64]) -> Result<Complex64> {
    alpha.iter().try_fold(Complex64::new(0.0, 0.0), |acc, &a| Ok(acc + log_gamma(a)?))
}

/// `log(Gamma(alpha) / (2 pi)^{|alpha|})` with `Gamma(alpha) = prod_j Gamma(alpha_j)`.
pub fn log_gamma_prefactor(alpha: &[Complex64]) -> Result<Complex64> {
    let total: Complex64 = alpha.iter().sum();
    Ok(log_gamma_sum(alpha)? - total * LN_2PI)
}

// (cos pi x, sin pi x), exact at multiples of 1/2
fn cos_sin_pi(x: f64) -> (f64, f64) {
    let n = (2.0 * x).round();
    let f = x - 0.5 * n;
    let (s, c) = (PI * f).sin_cos();
    match (n as i64).rem_euclid(4) {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

fn cos_pi(z: Complex64) -> Complex64 {
    let (c, s) = cos_sin_pi(z.re);
    let y = PI * z.im;
    Complex64::new(c * y.cosh(), -s * y.sinh())
}

fn sin_pi(z: Complex64) -> Complex64 {
    let (c, s) = cos_sin_pi(z.re);
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

/// `cos(pi z / 2)`.
pub fn c_half(z: Complex64) -> Complex64 {
    cos_pi(z * 0.5)
}

/// `sin(pi z / 2)`.
pub fn s_half(z: Complex64) -> Complex64 {
    sin_pi(z * 0.5)
}

/// `sin(pi z)`, exact zeros at integers.
pub fn sin_pi_full(z: Complex64) -> Complex64 {
    sin_pi(z)
}

/// Both sides of `Gamma(z) c(z - a) = (2^z sqrt(pi) / 2) Gamma((z + a)/2) / Gamma((1 - z + a)/2)`.
pub fn gamma_c_sides(z: Complex64, a: u8) -> Result<(Complex64, Complex64)> {
    let a = f64::from(a & 1);
    let lhs_pole = pole_distance(z);
    let rhs_pole = pole_distance((z + a) * 0.5) * 2.0;
    let distance = lhs_pole.min(rhs_pole);
    if distance < POLE_PROXIMITY {
        return Err(Error::NearPole { z, distance });
    }
    let lhs = gamma(z)? * c_half(z - a);
    let prefactor = (z * std::f64::consts::LN_2).exp() * PI.sqrt() * 0.5;
    let rhs = prefactor * gamma((z + a) * 0.5)? * reciprocal_gamma((1.0 - z + a) * 0.5);
    Ok((lhs, rhs))
}

/// `|L - R| / (|L| + |R| + 1)` for the sides of [`gamma_c_sides`].
pub fn gamma_c_identity_residual(z: Complex64, a: u8) -> Result<f64> {
    let (l, r) = gamma_c_sides(z, a)?;
    Ok((l - r).norm() / (l.norm() + r.norm() + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cz(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_special_values() {
        assert!(log_gamma(cz(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!(log_gamma(cz(2.0, 0.0)).unwrap().norm() < 1e-14);
        let half = log_gamma(cz(0.5, 0.0)).unwrap();
        assert!((half - cz(0.5 * PI.ln(), 0.0)).norm() < 1e-14);
        let ten = log_gamma(cz(10.0, 0.0)).unwrap();
        assert!((ten.re - 362_880f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn poles_are_flagged() {
        for n in 0..5 {
            assert!(matches!(log_gamma(cz(-(n as f64), 0.0)), Err(Error::Pole(_))));
            assert_eq!(reciprocal_gamma(cz(-(n as f64), 0.0)), cz(0.0, 0.0));
        }
        assert!(log_gamma(cz(-1.0, 1e-9)).is_ok());
    }

    #[test]
    fn negative_axis_branch() {
        // Gamma(-1/2) = -2 sqrt(pi): imaginary part of the continuation is -pi
        // just above the cut and the real part is log(2 sqrt(pi))
        let l = log_gamma(cz(-0.5, 1e-300)).unwrap();
        assert!((l.re - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
        assert!((l.im + PI).abs() < 1e-14);
        let g = gamma(cz(-0.5, 0.0)).unwrap();
        assert!((g - cz(-2.0 * PI.sqrt(), 0.0)).norm() < 1e-13);
    }

    #[test]
    fn half_angle_values() {
        assert_eq!(c_half(cz(0.0, 0.0)), cz(1.0, 0.0));
        assert_eq!(s_half(cz(0.0, 0.0)), cz(0.0, 0.0));
        assert_eq!(c_half(cz(1.0, 0.0)), cz(0.0, 0.0));
        assert_eq!(s_half(cz(2.0, 0.0)).re, 0.0);
        assert_eq!(c_half(cz(2.0, 0.0)), cz(-1.0, 0.0));
        let z = cz(0.37, -0.8);
        assert!((c_half(z) - (z * PI / 2.0).cos()).norm() < 1e-15);
        assert!((s_half(z) - (z * PI / 2.0).sin()).norm() < 1e-15);
    }

    #[test]
    fn gamma_c_identity_at_simple_points() {
        assert!(gamma_c_identity_residual(cz(1.0, 0.0), 0).unwrap() <= 1e-13);
        assert!(gamma_c_identity_residual(cz(2.3, 0.9), 1).unwrap() <= 1e-12);
        assert!(matches!(
            gamma_c_identity_residual(cz(-2.0, 1e-8), 0),
            Err(Error::NearPole { .. })
        ));
    }

    fn arb_z(radius: f64) -> impl Strategy<Value = Complex64> {
        (-radius..radius, -radius..radius).prop_map(|(a, b)| cz(a, b))
    }

    fn away_from_integers(z: Complex64) -> bool {
        (z.re - z.re.round()).abs() > 1e-3 || z.im.abs() > 1e-3
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn s_is_shifted_c(z in arb_z(10.0)) {
            prop_assert!((s_half(z) - c_half(z - 1.0)).norm() <= 1e-14 * (1.0 + s_half(z).norm()));
        }

        #[test]
        fn c_parity_rule(z in arb_z(5.0), a in 0u8..2, neg in any::<bool>()) {
            let e = if neg { -1.0 } else { 1.0 };
            let af = f64::from(a);
            let lhs = c_half(z * e - af);
            let rhs = c_half(z - af) * if neg && a == 1 { -1.0 } else { 1.0 };
            prop_assert!((lhs - rhs).norm() <= 1e-13 * (1.0 + lhs.norm()));
        }

        #[test]
        fn reflection(z in arb_z(6.0)) {
            prop_assume!(away_from_integers(z));
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * sin_pi_full(z) / PI;
            prop_assert!((lhs - 1.0).norm() <= 1e-12);
        }

        #[test]
        fn duplication(z in arb_z(6.0)) {
            prop_assume!(away_from_integers(z) && away_from_integers(z * 0.5) && away_from_integers((z + 1.0) * 0.5));
            let lhs = gamma(z).unwrap();
            let rhs = (z * std::f64::consts::LN_2).exp() / (2.0 * PI.sqrt())
                * gamma(z * 0.5).unwrap()
                * gamma((z + 1.0) * 0.5).unwrap();
            prop_assert!(rel(lhs, rhs) <= 1e-12);
        }

        #[test]
        fn recurrence(z in arb_z(20.0)) {
            prop_assume!(away_from_integers(z));
            let a = log_gamma(z + 1.0).unwrap();
            let b = log_gamma(z).unwrap() + z.ln();
            // equal modulo 2 pi i
            let d = a - b;
            let k = (d.im / (2.0 * PI)).round();
            prop_assert!((d - cz(0.0, 2.0 * PI * k)).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }
}
