//! Order-zero Bessel functions J0, Y0 and the Macdonald function K0.
//!
//! Each function has a small-argument and a large-argument evaluator,
//! both public so that their overlap can be checked directly.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Below this argument J0 and Y0 use the backward-recurrence evaluators.
pub const JY_CROSSOVER: f64 = 25.0;
/// Below this argument K0 uses its power series.
pub const K0_CROSSOVER: f64 = 2.0;

const TINY_X: f64 = 1e-6;
const MAX_ITER: usize = 10_000;

/// J0(x) for finite x. Even in x.
pub fn bessel_j0<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::domain("bessel_j0", format!("non-finite argument {x}")));
    }
    let x = x.abs();
    if x < T::lit(JY_CROSSOVER) {
        Ok(j0_recurrence(x))
    } else {
        Ok(hankel(x).0)
    }
}

/// Y0(x) (Neumann function N0) for x > 0.
pub fn bessel_y0<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("bessel_y0", format!("argument {x} must be positive and finite")));
    }
    if x < T::lit(JY_CROSSOVER) {
        Ok(y0_recurrence(x))
    } else {
        Ok(hankel(x).1)
    }
}

/// K0(x) for x > 0; underflows to zero for very large x.
pub fn bessel_k0<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || x.is_nan() {
        return Err(Error::domain("bessel_k0", format!("argument {x} must be positive")));
    }
    if x.is_infinite() {
        return Ok(T::zero());
    }
    if x <= T::lit(K0_CROSSOVER) {
        Ok(k0_series(x))
    } else {
        Ok(k0_continued_fraction(x))
    }
}

/// Miller backward recurrence returning `(J0, Σ_{k≥1} (−1)^k J_{2k}(x)/k)`.
fn miller<T: Real>(x: T) -> (T, T) {
    let xf = x.as_f64();
    let mut n = (1.2 * xf + 30.0).ceil() as usize;
    n += n % 2;
    let big = T::max_value().sqrt();
    let two = T::lit(2.0);
    let mut j_next = T::zero();
    let mut j_cur = T::min_positive_value().sqrt();
    let mut norm = T::zero();
    let mut alt = T::zero();
    for m in (1..=n).rev() {
        if m % 2 == 0 {
            let k = m / 2;
            norm = norm + two * j_cur;
            let term = j_cur / T::lit(k as f64);
            alt = if k % 2 == 0 { alt + term } else { alt - term };
        }
        let j_prev = two * T::lit(m as f64) / x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        if j_cur.abs() > big {
            let scale = big.recip();
            j_cur = j_cur * scale;
            j_next = j_next * scale;
            norm = norm * scale;
            alt = alt * scale;
        }
    }
    norm = norm + j_cur;
    (j_cur / norm, alt / norm)
}

/// J0 by normalized backward recurrence (valid for moderate x).
pub fn j0_recurrence<T: Real>(x: T) -> T {
    let x = x.abs();
    if x < T::lit(TINY_X) {
        return T::one() - x * x / T::lit(4.0);
    }
    miller(x).0
}

/// Y0 from the Neumann series over even-order J's (valid for moderate x > 0).
pub fn y0_recurrence<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let log_term = (x / two).ln() + T::euler_gamma();
    if x < T::lit(TINY_X) {
        let q = x * x / T::lit(4.0);
        return T::FRAC_2_PI() * (log_term * (T::one() - q) + q);
    }
    let (j0, alt) = miller(x);
    T::FRAC_2_PI() * (log_term * j0 - two * alt)
}

/// Hankel asymptotic expansion returning `(J0, Y0)` (valid for large x).
pub fn hankel<T: Real>(x: T) -> (T, T) {
    let eps = T::epsilon() * T::lit(1e-2);
    let eight_x = T::lit(8.0) * x;
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    let mut last = T::infinity();
    for k in 1..200 {
        let odd = T::lit((2 * k - 1) as f64);
        term = term * odd * odd / (T::lit(k as f64) * eight_x);
        if term > last || term < eps {
            break;
        }
        last = term;
        match k % 4 {
            0 => p = p + term,
            1 => q = q - term,
            2 => p = p - term,
            _ => q = q + term,
        }
    }
    let chi = x - T::FRAC_PI_4();
    let amp = (T::FRAC_2_PI() / x).sqrt();
    let (s, c) = chi.sin_cos();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// K0 by its ascending series (valid for small x > 0).
pub fn k0_series<T: Real>(x: T) -> T {
    let y = x * x / T::lit(4.0);
    let mut term = T::one();
    let mut i0 = T::one();
    let mut harmonic = T::zero();
    let mut tail = T::zero();
    for k in 1..MAX_ITER {
        let kf = T::lit(k as f64);
        term = term * y / (kf * kf);
        harmonic = harmonic + kf.recip();
        i0 = i0 + term;
        tail = tail + term * harmonic;
        if term < T::epsilon() * i0 * T::lit(1e-2) {
            break;
        }
    }
    -((x / T::lit(2.0)).ln() + T::euler_gamma()) * i0 + tail
}

/// K0 by Steed's continued fraction (Temme's CF2); accurate for x ≳ 1.
pub fn k0_continued_fraction<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let quarter = T::lit(0.25);
    let mut b = two * (T::one() + x);
    let mut d = b.recip();
    let mut delh = d;
    let mut q1 = T::zero();
    let mut q2 = T::one();
    let mut a = -quarter;
    let mut c = quarter;
    let mut q = c;
    let mut s = T::one() + q * delh;
    for i in 2..MAX_ITER {
        let fi = T::lit(i as f64);
        a = a - two * (fi - T::one());
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = (b + a * d).recip();
        delh = (b * d - T::one()) * delh;
        let dels = q * delh;
        s = s + dels;
        if (dels / s).abs() < T::epsilon() {
            break;
        }
    }
    (T::PI() / (two * x)).sqrt() * (-x).exp() / s
}
