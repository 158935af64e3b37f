//! Exponential integral E1 on the principal branch, and the entire
//! function Ein(z) = ∫0^z (1 − e^{−t})/t dt = E1(z) + ln z + γ.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Modulus at or below which the power series is used.
pub const E1_CROSSOVER: f64 = 4.0;
const MAX_ITER: usize = 20_000;

fn check_domain<T: Real>(z: Complex<T>) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("exp_integral_e1", format!("non-finite argument {z}")));
    }
    if z.im == T::zero() && z.re <= T::zero() {
        return Err(Error::domain(
            "exp_integral_e1",
            format!("argument {z} is zero or on the branch cut"),
        ));
    }
    Ok(())
}

/// E1(z) = ∫_z^∞ e^{−t}/t dt for z ≠ 0, |arg z| < π.
pub fn exp_integral_e1<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    check_domain(z)?;
    if z.norm() <= T::lit(E1_CROSSOVER) {
        Ok(e1_series(z))
    } else {
        Ok(e1_continued_fraction(z))
    }
}

/// Real-argument convenience wrapper, x > 0.
pub fn exp_integral_e1_real<T: Real>(x: T) -> Result<T> {
    Ok(exp_integral_e1(Complex::new(x, T::zero()))?.re)
}

/// Ein(z) by its everywhere-convergent power series.
pub fn ein_series<T: Real>(z: Complex<T>) -> Complex<T> {
    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = Complex::new(T::zero(), T::zero());
    for n in 1..MAX_ITER {
        let nf = T::lit(n as f64);
        term = -term * z / nf;
        let contrib = term / nf;
        sum = sum - contrib;
        if contrib.norm() <= T::epsilon() * T::lit(1e-2) * sum.norm() {
            break;
        }
    }
    sum
}

/// Ein(z), entire; the series is used for small |z|, E1 otherwise.
pub fn ein<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if z.norm() <= T::lit(E1_CROSSOVER) {
        return Ok(ein_series(z));
    }
    let e1 = exp_integral_e1(z)?;
    Ok(e1 + z.ln() + Complex::new(T::euler_gamma(), T::zero()))
}

/// E1 by the ascending series −γ − ln z + Ein(z).
pub fn e1_series<T: Real>(z: Complex<T>) -> Complex<T> {
    ein_series(z) - z.ln() - Complex::new(T::euler_gamma(), T::zero())
}

/// E1 by the modified-Lentz continued fraction (valid for large |z|).
pub fn e1_continued_fraction<T: Real>(z: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let tiny = T::min_positive_value().sqrt();
    let two = Complex::new(T::lit(2.0), T::zero());
    let mut b = z + one;
    let mut c = Complex::new(tiny.recip(), T::zero());
    let mut d = one / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = Complex::new(-T::lit((i * i) as f64), T::zero());
        b = b + two;
        d = an * d + b;
        if d.norm() < tiny {
            d = Complex::new(tiny, T::zero());
        }
        d = one / d;
        c = b + an / c;
        if c.norm() < tiny {
            c = Complex::new(tiny, T::zero());
        }
        let del = c * d;
        h = h * del;
        if (del - one).norm() < T::epsilon() {
            break;
        }
    }
    h * (-z).exp()
}
