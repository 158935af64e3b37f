//! Sine and cosine integrals in the tail convention
//! si(x) = −∫_x^∞ sin t/t dt = Si(x) − π/2 and ci(x) = −∫_x^∞ cos t/t dt.

use crate::error::{Error, Result};
use crate::quadrature::{GAUSS10_NODES, GAUSS10_WEIGHTS};
use crate::scalar::Real;

/// Upper end of the power-series branch.
pub const SERIES_MAX: f64 = 4.0;
/// Lower end of the asymptotic branch.
pub const ASYMPTOTIC_MIN: f64 = 24.0;

/// si(x) for finite x.
pub fn sin_integral_si<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::domain("sin_integral_si", format!("non-finite argument {x}")));
    }
    let ax = x.abs();
    let big_si = if ax <= T::lit(SERIES_MAX) {
        si_series(ax)
    } else if ax < T::lit(ASYMPTOTIC_MIN) {
        si_panels(ax)
    } else {
        if x > T::zero() {
            return Ok(asymptotic(ax).0);
        }
        asymptotic(ax).0 + T::FRAC_PI_2()
    };
    let signed = if x < T::zero() { -big_si } else { big_si };
    Ok(signed - T::FRAC_PI_2())
}

/// ci(x) for x > 0.
pub fn cos_integral_ci<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("cos_integral_ci", format!("argument {x} must be positive and finite")));
    }
    Ok(if x <= T::lit(SERIES_MAX) {
        ci_series(x)
    } else if x < T::lit(ASYMPTOTIC_MIN) {
        ci_panels(x)
    } else {
        asymptotic(x).1
    })
}

/// Conventional Si(x) = ∫0^x sin t/t dt by its power series (x ≥ 0, small).
pub fn si_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for k in 1..200 {
        let kf = T::lit(k as f64);
        term = -term * x2 / ((T::lit(2.0) * kf) * (T::lit(2.0) * kf + T::one()));
        let contrib = term / (T::lit(2.0) * kf + T::one());
        sum = sum + contrib;
        if contrib.abs() < T::epsilon() * T::lit(1e-2) * sum.abs() {
            break;
        }
    }
    sum
}

/// ci(x) = γ + ln x + Σ (−1)^k x^{2k}/(2k·(2k)!) (x > 0, small).
pub fn ci_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let mut term = T::one();
    let mut sum = T::zero();
    for k in 1..200 {
        let kf = T::lit(k as f64);
        term = -term * x2 / ((T::lit(2.0) * kf - T::one()) * (T::lit(2.0) * kf));
        let contrib = term / (T::lit(2.0) * kf);
        sum = sum + contrib;
        if contrib.abs() < T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    T::euler_gamma() + x.ln() + sum
}

fn panel_sum<T: Real, F: Fn(T) -> T>(x: T, f: F) -> T {
    let n = x.ceil().to_usize().unwrap_or(1).max(1);
    let h = x / T::lit(n as f64);
    let half = h / T::lit(2.0);
    let mut total = T::zero();
    for p in 0..n {
        let mid = h * T::lit(p as f64) + half;
        let mut acc = T::zero();
        for (node, weight) in GAUSS10_NODES.iter().zip(GAUSS10_WEIGHTS.iter()) {
            let dx = half * T::lit(*node);
            acc = acc + T::lit(*weight) * (f(mid - dx) + f(mid + dx));
        }
        total = total + acc * half;
    }
    total
}

/// Si(x) by 10-point Gauss–Legendre panels of unit width (moderate x ≥ 0).
pub fn si_panels<T: Real>(x: T) -> T {
    panel_sum(x, |t| t.sin() / t)
}

/// ci(x) as γ + ln x + ∫0^x (cos t − 1)/t dt on Gauss–Legendre panels.
pub fn ci_panels<T: Real>(x: T) -> T {
    T::euler_gamma() + x.ln() + panel_sum(x, |t| (t.cos() - T::one()) / t)
}

/// `(si(x), ci(x))` from the auxiliary f/g asymptotic series (large x > 0).
pub fn asymptotic<T: Real>(x: T) -> (T, T) {
    let x2 = x * x;
    let mut fterm = x.recip();
    let mut gterm = x2.recip();
    let mut f = fterm;
    let mut g = gterm;
    let tol = T::epsilon() * T::lit(1e-2);
    for k in 1..100 {
        let kf = T::lit(k as f64);
        let two_k = T::lit(2.0) * kf;
        let nf = -fterm * (two_k - T::one()) * two_k / x2;
        let ng = -gterm * two_k * (two_k + T::one()) / x2;
        if nf.abs() > fterm.abs() || ng.abs() > gterm.abs() {
            break;
        }
        fterm = nf;
        gterm = ng;
        f = f + fterm;
        g = g + gterm;
        if fterm.abs() < tol * f.abs() && gterm.abs() < tol * g.abs() {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    (-f * c - g * s, f * s - g * c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn si_tends_to_minus_half_pi() {
        let v = sin_integral_si(1e-10_f64).unwrap();
        assert!((v + std::f64::consts::FRAC_PI_2).abs() < 1e-9);
        assert_eq!(sin_integral_si(0.0_f64).unwrap(), -std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn si_is_consistent_for_negative_arguments() {
        let a = sin_integral_si(7.5_f64).unwrap();
        let b = sin_integral_si(-7.5_f64).unwrap();
        assert!((a + b + std::f64::consts::PI).abs() < 1e-13);
        let a = sin_integral_si(40.0_f64).unwrap();
        let b = sin_integral_si(-40.0_f64).unwrap();
        assert!((a + b + std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn ci_rejects_nonpositive() {
        assert!(cos_integral_ci(0.0_f64).is_err());
        assert!(cos_integral_ci(-1.0_f64).is_err());
    }
}
