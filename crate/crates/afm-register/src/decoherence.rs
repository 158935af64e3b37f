//! One-qubit nonadiabatic decoherence: the time-resolved rate R⊥(Δb_k, τ)
//! by quadrature and in closed form, its τ → ∞ limit, the frequency shift
//! and the longitudinal relaxation rate.
//!
//! Rates are in units of 3a²/2π; see [`ModelParams::hyperfine_scale`].

use num_complex::Complex;

use crate::coupling::self_energy;
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::quadrature::{integrate_with, IntegrationResult, KernelSpec, QuadConfig};
use crate::scalar::Real;
use crate::specfun::{cos_integral_ci, ein, sin_integral_si};

/// Y(x, τ) = [x sin(xτ) e^{−sτ} + s(1 − cos(xτ) e^{−sτ})]/(x² + s²).
pub fn rate_kernel_y<T: Real>(x: T, tau: T, s: T) -> T {
    rate_kernel_y_damped(x, tau, s, (-s * tau).exp())
}

/// [`rate_kernel_y`] with a precomputed damping factor e^{−sτ}.
#[inline]
pub fn rate_kernel_y_damped<T: Real>(x: T, tau: T, s: T, damping: T) -> T {
    let (sn, cs) = (x * tau).sin_cos();
    (x * sn * damping + s * (T::one() - cs * damping)) / (x * x + s * s)
}

/// Bound on the integral of the oscillatory part of Y against (c + ξ).
pub(crate) fn transient_bound<T: Real>(tau: T, params: &ModelParams<T>) -> T {
    let (s, upper) = (params.s(), params.upper_limit());
    (-s * tau).exp() * (params.prefactor() + upper) * T::lit(2.0) * (upper / s).asinh()
}

/// Whether the e^{−sτ} part of Y is negligible against `tol·max(1, scale)`.
pub(crate) fn transient_negligible<T: Real>(tau: T, params: &ModelParams<T>, tol: T, scale: T) -> bool {
    transient_bound(tau, params) < T::lit(0.01) * tol * scale.abs().max(T::one())
}

/// Numeric R⊥(Δb_k, τ) by quadrature with the default tolerance.
pub fn decoherence_rate_numeric<T: Real>(delta_b_k: T, tau: T, params: &ModelParams<T>) -> Result<T> {
    Ok(decoherence_rate_numeric_with(delta_b_k, tau, params, &QuadConfig::default())?.value)
}

/// Numeric R⊥(Δb_k, τ) with an explicit configuration and error estimate.
pub fn decoherence_rate_numeric_with<T: Real>(
    delta_b_k: T,
    tau: T,
    params: &ModelParams<T>,
    cfg: &QuadConfig<T>,
) -> Result<IntegrationResult<T>> {
    if !(tau >= T::zero()) || !tau.is_finite() {
        return Err(Error::domain("decoherence_rate_numeric", format!("tau = {tau} must be finite and ≥ 0")));
    }
    if tau == T::zero() {
        return Ok(IntegrationResult {
            value: T::zero(),
            abs_error_estimate: T::zero(),
            subdivisions: 0,
        });
    }
    let (s, c, upper) = (params.s(), params.prefactor(), params.upper_limit());
    let limit = rate_limit_exact(delta_b_k, params);
    if transient_negligible(tau, params, cfg.tol, limit) {
        return Ok(IntegrationResult {
            value: limit,
            abs_error_estimate: transient_bound(tau, params),
            subdivisions: 0,
        });
    }
    let damping = (-s * tau).exp();
    let integrand = |xi: T| (c + xi) * rate_kernel_y_damped(xi + delta_b_k, tau, s, damping);
    let hint = KernelSpec::new().with_peak(-delta_b_k, s).with_oscillation(tau);
    let cfg = cfg.for_panels(hint.oscillation_panels(T::zero(), upper));
    integrate_with(integrand, T::zero(), upper, &cfg, &hint)
}

/// Exact τ → ∞ limit of the numeric rate, s∫(c+ξ)/((ξ+Δ)² + s²) dξ, for any Δ.
pub fn rate_limit_exact<T: Real>(delta: T, params: &ModelParams<T>) -> T {
    let (s, c, upper) = (params.s(), params.prefactor(), params.upper_limit());
    let hi = upper + delta;
    let atan_part = (c - delta) * ((hi / s).atan() - (delta / s).atan());
    let log_part = s / T::lit(2.0) * ((hi * hi + s * s) / (delta * delta + s * s)).ln();
    atan_part + log_part
}

fn closed_form_domain<T: Real>(func: &'static str, delta_b_k: T, tau: T) -> Result<()> {
    if !(delta_b_k > T::zero()) {
        return Err(Error::domain(func, format!("closed forms need Δb_k > 0, got {delta_b_k}")));
    }
    if !(tau >= T::zero()) || !tau.is_finite() {
        return Err(Error::domain(func, format!("tau = {tau} must be finite and ≥ 0")));
    }
    Ok(())
}

/// Closed-form R⊥ through the complex exponential integral:
/// Re{i(c − Δ − is)[Ein(t2) − Ein(t1)]} + e^{−sτ}[cos Δτ − cos (U+Δ)τ]/τ,
/// with t1 = (s − iΔ)τ, t2 = (s − i(U+Δ))τ and Ein(z) = E1(z) + ln z + γ.
pub fn decoherence_rate_closed<T: Real>(delta_b_k: T, tau: T, params: &ModelParams<T>) -> Result<T> {
    closed_form_domain("decoherence_rate_closed", delta_b_k, tau)?;
    if tau == T::zero() {
        return Ok(T::zero());
    }
    let (s, c, upper) = (params.s(), params.prefactor(), params.upper_limit());
    let hi = upper + delta_b_k;
    let t1 = Complex::new(s * tau, -delta_b_k * tau);
    let t2 = Complex::new(s * tau, -hi * tau);
    let diff = ein(t2)? - ein(t1)?;
    let pre = Complex::new(s, c - delta_b_k);
    let main = (pre * diff).re;
    let tail = (-s * tau).exp() * ((delta_b_k * tau).cos() - (hi * tau).cos()) / tau;
    Ok(main + tail)
}

/// Explicit si/ci form of R⊥, first order in s (valid for Δb_k ≫ s).
pub fn decoherence_rate_explicit<T: Real>(delta_b_k: T, tau: T, params: &ModelParams<T>) -> Result<T> {
    closed_form_domain("decoherence_rate_explicit", delta_b_k, tau)?;
    if tau == T::zero() {
        return Ok(T::zero());
    }
    let (s, c, upper) = (params.s(), params.prefactor(), params.upper_limit());
    let d = delta_b_k;
    let hi = upper + d;
    let damping = (-s * tau).exp();
    let si_diff = sin_integral_si(hi * tau)? - sin_integral_si(d * tau)?;
    let cos_diff = (d * tau).cos() - (hi * tau).cos();
    let ci_diff = cos_integral_ci(d * tau)? - cos_integral_ci(hi * tau)?;
    let oscillating = ((c - d) * si_diff + cos_diff / tau) * damping;
    let inverse_sq = s
        * (c - d)
        * (upper / (d * hi) - ((d * tau).cos() / d - (hi * tau).cos() / hi - tau * si_diff) * damping);
    let inverse = s * ((hi / d).ln() + ci_diff * damping);
    Ok(oscillating + inverse_sq + inverse)
}

/// τ → ∞ rate and the matching decoherence time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceTime<T> {
    /// s·{(c − Δ)U/(Δ(U + Δ)) + ln((U + Δ)/Δ)} in units of 3a²/2π.
    pub rate: T,
    /// T_D in seconds, when ω_E is known.
    pub t_d_seconds: Option<T>,
}

/// Asymptotic rate s·{(c − Δ)U/(Δ(U + Δ)) + ln((U + Δ)/Δ)} and T_D.
pub fn decoherence_time<T: Real>(delta_b_k: T, params: &ModelParams<T>) -> Result<DecoherenceTime<T>> {
    if !(delta_b_k > T::zero()) {
        return Err(Error::domain("decoherence_time", format!("Δb_k = {delta_b_k} must be positive")));
    }
    let (s, c, upper) = (params.s(), params.prefactor(), params.upper_limit());
    let hi = upper + delta_b_k;
    let rate = s * ((c - delta_b_k) * upper / (delta_b_k * hi) + (hi / delta_b_k).ln());
    let t_d_seconds = params
        .omega_e()
        .map(|w| (w * params.hyperfine_scale() * rate).recip());
    Ok(DecoherenceTime { rate, t_d_seconds })
}

/// Im dΓ⊥/dτ at τ → ∞, −(3a²/2π)·V(Δb_k, 0).
pub fn frequency_shift<T: Real>(delta_b_k: T, params: &ModelParams<T>) -> Result<T> {
    Ok(-params.hyperfine_scale() * self_energy(delta_b_k, params)?)
}

/// Longitudinal relaxation rate; identical to the transverse rate.
pub fn longitudinal_rate<T: Real>(delta_b_k: T, tau: T, params: &ModelParams<T>) -> Result<T> {
    decoherence_rate_numeric(delta_b_k, tau, params)
}

/// Rates sampled on a τ-grid with their τ → ∞ limit.
#[derive(Debug, Clone, PartialEq)]
pub struct RateSeries<T> {
    pub tau_grid: Vec<T>,
    pub rates: Vec<T>,
    pub asymptote: T,
}

/// Checks that a τ-grid is positive and strictly ascending.
pub fn validate_tau_grid<T: Real>(taus: &[T]) -> Result<()> {
    if taus.iter().any(|t| !(*t > T::zero()) || !t.is_finite()) {
        return Err(Error::domain("tau grid", "entries must be positive and finite"));
    }
    if taus.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("tau grid", "entries must be strictly ascending"));
    }
    Ok(())
}

/// Numeric rate on a τ-grid; the asymptote is the exact Lorentzian limit.
pub fn rate_series<T: Real>(delta_b_k: T, taus: &[T], params: &ModelParams<T>) -> Result<RateSeries<T>> {
    validate_tau_grid(taus)?;
    let rates = taus
        .iter()
        .map(|t| decoherence_rate_numeric(delta_b_k, *t, params))
        .collect::<Result<Vec<_>>>()?;
    Ok(RateSeries {
        tau_grid: taus.to_vec(),
        rates,
        asymptote: rate_limit_exact(delta_b_k, params),
    })
}
