//! Two-qubit correlation decoherence and concurrence damping of the
//! triplet Bell state.
//!
//! Rates are in units of 3a²/2π, as in [`crate::decoherence`].

use crate::coupling::radial_wavenumber;
use crate::decoherence::{
    decoherence_rate_numeric_with, rate_kernel_y_damped, rate_limit_exact, transient_bound, transient_negligible,
    validate_tau_grid,
};
use crate::error::{Error, Result};
use crate::model::{ModelParams, QubitPairGeometry};
use crate::quadrature::{integrate_with, IntegrationResult, KernelSpec, QuadConfig};
use crate::scalar::Real;
use crate::specfun::bessel_j0;

/// Points of the internal τ-grid used by [`concurrence`].
pub const DEFAULT_GRID_POINTS: usize = 96;

/// Diagnostic view of the pair's density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairState<T> {
    pub g_zz: T,
    pub g_plus_minus_mag: T,
    pub concurrence: T,
}

impl<T: Real> PairState<T> {
    /// The initial triplet: G_zz = −1, |G+−| = 2, C = 1.
    pub fn triplet() -> Self {
        Self::from_decrement(T::zero())
    }

    /// State after a total decrement Γ, with G_zz = −e^{−Γ} and |G+−| = 2e^{−Γ}.
    pub fn from_decrement(gamma: T) -> Self {
        let decay = (-gamma).exp();
        let g_zz = -decay;
        let g_plus_minus_mag = T::lit(2.0) * decay;
        Self {
            g_zz,
            g_plus_minus_mag,
            concurrence: wootters(g_zz, g_plus_minus_mag),
        }
    }
}

/// C = max(½|G+−| − ½(1 + G_zz), 0).
pub fn wootters<T: Real>(g_zz: T, g_plus_minus_mag: T) -> T {
    let half = T::lit(0.5);
    (half * g_plus_minus_mag - half * (T::one() + g_zz)).max(T::zero())
}

fn check_tau<T: Real>(func: &'static str, tau: T) -> Result<()> {
    if !(tau >= T::zero()) || !tau.is_finite() {
        return Err(Error::domain(func, format!("tau = {tau} must be finite and ≥ 0")));
    }
    Ok(())
}

fn correlation_hint<T: Real>(delta_mid: T, tau: T, r: T, params: &ModelParams<T>) -> KernelSpec<T> {
    KernelSpec::new()
        .with_peak(-delta_mid, params.s())
        .with_oscillation(tau + (T::lit(24.0) * params.b_c()).sqrt() * r)
}

fn j0_factor<T: Real>(xi: T, r: T, b_c: T) -> T {
    if r > T::zero() {
        bessel_j0(radial_wavenumber(xi, b_c) * r).unwrap_or_else(|_| T::nan())
    } else {
        T::one()
    }
}

/// τ → ∞ correlation rate, s∫(c+ξ)·J0(...)/((ξ + Δ_mid)² + s²) dξ.
pub fn correlation_limit<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> Result<T> {
    Ok(correlation_limit_with(geom, params, &QuadConfig::default())?.value)
}

/// [`correlation_limit`] with an explicit configuration.
pub fn correlation_limit_with<T: Real>(
    geom: &QubitPairGeometry<T>,
    params: &ModelParams<T>,
    cfg: &QuadConfig<T>,
) -> Result<IntegrationResult<T>> {
    let (s, c, b_c, upper) = (params.s(), params.prefactor(), params.b_c(), params.upper_limit());
    let r = geom.separation_f();
    let delta = geom.midpoint_detuning(params);
    if r == T::zero() {
        return Ok(IntegrationResult {
            value: rate_limit_exact(delta, params),
            abs_error_estimate: T::zero(),
            subdivisions: 0,
        });
    }
    let integrand = |xi: T| {
        let x = xi + delta;
        s * (c + xi) * j0_factor(xi, r, b_c) / (x * x + s * s)
    };
    let hint = correlation_hint(delta, T::zero(), r, params);
    let cfg = cfg.for_panels(hint.oscillation_panels(T::zero(), upper));
    integrate_with(integrand, T::zero(), upper, &cfg, &hint)
}

/// Correlation part R⊥(Δb_k, l−k, τ) of the pair decoherence rate.
pub fn correlation_rate<T: Real>(geom: &QubitPairGeometry<T>, tau: T, params: &ModelParams<T>) -> Result<T> {
    Ok(correlation_rate_with(geom, tau, params, &QuadConfig::default())?.value)
}

/// [`correlation_rate`] with an explicit configuration and error estimate.
pub fn correlation_rate_with<T: Real>(
    geom: &QubitPairGeometry<T>,
    tau: T,
    params: &ModelParams<T>,
    cfg: &QuadConfig<T>,
) -> Result<IntegrationResult<T>> {
    check_tau("correlation_rate", tau)?;
    if tau == T::zero() {
        return Ok(IntegrationResult {
            value: T::zero(),
            abs_error_estimate: T::zero(),
            subdivisions: 0,
        });
    }
    let (s, c, b_c, upper) = (params.s(), params.prefactor(), params.b_c(), params.upper_limit());
    let r = geom.separation_f();
    let delta = geom.midpoint_detuning(params);
    if transient_bound(tau, params) < T::lit(0.01) * cfg.tol {
        let limit = correlation_limit_with(geom, params, cfg)?;
        if transient_negligible(tau, params, cfg.tol, limit.value) {
            return Ok(limit);
        }
    }
    let damping = (-s * tau).exp();
    let integrand = |xi: T| (c + xi) * rate_kernel_y_damped(xi + delta, tau, s, damping) * j0_factor(xi, r, b_c);
    let hint = correlation_hint(delta, tau, r, params);
    let cfg = cfg.for_panels(hint.oscillation_panels(T::zero(), upper));
    integrate_with(integrand, T::zero(), upper, &cfg, &hint)
}

/// Correlation part of the longitudinal rate; the same kernel as [`correlation_rate`].
pub fn longitudinal_correlation_rate<T: Real>(
    geom: &QubitPairGeometry<T>,
    tau: T,
    params: &ModelParams<T>,
) -> Result<T> {
    correlation_rate(geom, tau, params)
}

/// The three contributions to RΣ⊥ at one τ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairRate<T> {
    pub site_k: T,
    pub site_l: T,
    pub correlation: T,
}

impl<T: Real> PairRate<T> {
    pub fn total(&self) -> T {
        self.site_k + self.site_l + self.correlation
    }
}

/// RΣ⊥ split into R⊥(Δb_k, τ), R⊥(Δb_l, τ) and the correlation part.
pub fn pair_rate_parts<T: Real>(geom: &QubitPairGeometry<T>, tau: T, params: &ModelParams<T>) -> Result<PairRate<T>> {
    check_tau("pair_rate_total", tau)?;
    let cfg = QuadConfig::default();
    Ok(PairRate {
        site_k: decoherence_rate_numeric_with(geom.delta_b_k(), tau, params, &cfg)?.value,
        site_l: decoherence_rate_numeric_with(geom.delta_b_l(params), tau, params, &cfg)?.value,
        correlation: correlation_rate_with(geom, tau, params, &cfg)?.value,
    })
}

/// RΣ⊥ = R⊥(Δb_k, τ) + R⊥(Δb_l, τ) + R⊥(Δb_k, l−k, τ).
pub fn pair_rate_total<T: Real>(geom: &QubitPairGeometry<T>, tau: T, params: &ModelParams<T>) -> Result<T> {
    Ok(pair_rate_parts(geom, tau, params)?.total())
}

/// τ → ∞ limit of RΣ⊥, three Lorentzians with s² kept in every denominator.
pub fn pair_rate_asymptote<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> Result<T> {
    let site_k = rate_limit_exact(geom.delta_b_k(), params);
    let site_l = rate_limit_exact(geom.delta_b_l(params), params);
    Ok(site_k + site_l + correlation_limit(geom, params)?)
}

/// Concurrence and its rates on a τ-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceSeries<T> {
    pub tau_grid: Vec<T>,
    /// RΣ⊥ at each τ.
    pub rate_total: Vec<T>,
    /// Γ = (3a²/2π)∫0^τ RΣ⊥, trapezoidal from τ = 0.
    pub decrement: Vec<T>,
    pub concurrence: Vec<T>,
    /// −(9a²/2π)·RΣ⊥, the printed concurrence-damping rate.
    pub dc_dtau_printed: Vec<T>,
    /// −(9a²/2π)·RΣ⊥, the printed logarithmic damping rate.
    pub dlnc_dtau_printed: Vec<T>,
    /// −(3/2)e^{−Γ}(3a²/2π)·RΣ⊥, the derivative of C(τ) itself.
    pub dc_dtau: Vec<T>,
    /// τ at which Γ reaches ln 3, interpolated on the grid.
    pub disentanglement_time: Option<T>,
}

/// Builds the concurrence series from rates already sampled on `taus`.
pub fn concurrence_from_rates<T: Real>(taus: &[T], rates: &[T], params: &ModelParams<T>) -> Result<ConcurrenceSeries<T>> {
    validate_tau_grid(taus)?;
    if taus.len() != rates.len() {
        return Err(Error::Config(format!("{} τ values but {} rates", taus.len(), rates.len())));
    }
    let scale = params.hyperfine_scale();
    let half = T::lit(0.5);
    let three = T::lit(3.0);
    let mut decrement = Vec::with_capacity(taus.len());
    let (mut prev_tau, mut prev_rate, mut gamma) = (T::zero(), T::zero(), T::zero());
    for (&tau, &rate) in taus.iter().zip(rates) {
        gamma = gamma + half * (tau - prev_tau) * (rate + prev_rate) * scale;
        decrement.push(gamma);
        prev_tau = tau;
        prev_rate = rate;
    }
    let concurrence = decrement
        .iter()
        .map(|g| PairState::from_decrement(*g).concurrence)
        .collect();
    let printed = rates.iter().map(|r| -three * scale * *r).collect::<Vec<_>>();
    let dc_dtau = rates
        .iter()
        .zip(&decrement)
        .map(|(r, g)| -T::lit(1.5) * (-*g).exp() * scale * *r)
        .collect();
    Ok(ConcurrenceSeries {
        tau_grid: taus.to_vec(),
        rate_total: rates.to_vec(),
        disentanglement_time: disentanglement_time(taus, &decrement),
        decrement,
        concurrence,
        dc_dtau_printed: printed.clone(),
        dlnc_dtau_printed: printed,
        dc_dtau,
    })
}

fn disentanglement_time<T: Real>(taus: &[T], decrement: &[T]) -> Option<T> {
    let target = T::lit(3.0).ln();
    let (mut t0, mut g0) = (T::zero(), T::zero());
    for (&t1, &g1) in taus.iter().zip(decrement) {
        if g1 >= target && g0 < target {
            return Some(t0 + (t1 - t0) * (target - g0) / (g1 - g0));
        }
        t0 = t1;
        g0 = g1;
    }
    None
}

/// Concurrence series for one geometry, rates evaluated serially.
pub fn concurrence_series<T: Real>(
    geom: &QubitPairGeometry<T>,
    taus: &[T],
    params: &ModelParams<T>,
) -> Result<ConcurrenceSeries<T>> {
    validate_tau_grid(taus)?;
    let rates = taus
        .iter()
        .map(|t| pair_rate_total(geom, *t, params))
        .collect::<Result<Vec<_>>>()?;
    concurrence_from_rates(taus, &rates, params)
}

/// C(τ) with Γ accumulated on a geometric grid over (0, τ].
pub fn concurrence<T: Real>(geom: &QubitPairGeometry<T>, tau: T, params: &ModelParams<T>) -> Result<T> {
    check_tau("concurrence", tau)?;
    if tau == T::zero() {
        return Ok(T::one());
    }
    let n = DEFAULT_GRID_POINTS;
    let start = tau * T::lit(1e-6);
    let ratio = (tau / start).ln() / T::lit((n - 1) as f64);
    let mut taus: Vec<T> = (0..n).map(|i| start * (ratio * T::lit(i as f64)).exp()).collect();
    taus[n - 1] = tau;
    let series = concurrence_series(geom, &taus, params)?;
    Ok(series.concurrence[n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_params() -> ModelParams<f64> {
        ModelParams::from_critical_field(0.5, 0.49, 2e-5, 1e-5).unwrap()
    }

    #[test]
    fn triplet_state() {
        let st = PairState::<f64>::triplet();
        assert_eq!((st.g_zz, st.g_plus_minus_mag, st.concurrence), (-1.0, 2.0, 1.0));
        let gone = PairState::from_decrement(3.0_f64.ln());
        assert!(gone.concurrence.abs() < 1e-15);
        assert_eq!(PairState::from_decrement(5.0_f64).concurrence, 0.0);
    }

    #[test]
    fn concurrence_at_zero() {
        let g = QubitPairGeometry::with_detuning(3e-3, 200);
        assert_eq!(concurrence(&g, 0.0, &reference_params()).unwrap(), 1.0);
    }

    #[test]
    fn disentanglement_interpolation() {
        let taus = [1.0, 2.0, 3.0];
        let dec = [0.5, 1.0, 1.5];
        let t = disentanglement_time(&taus, &dec).unwrap();
        assert!((t - (2.0 + (3.0_f64.ln() - 1.0) / 0.5)).abs() < 1e-14);
        assert!(disentanglement_time(&taus, &[0.1, 0.2, 0.3]).is_none());
    }

    #[test]
    fn mismatched_rates_rejected() {
        assert!(concurrence_from_rates(&[1.0, 2.0], &[1.0], &reference_params()).is_err());
        assert!(concurrence_from_rates(&[2.0, 1.0], &[1.0, 1.0], &reference_params()).is_err());
    }
}
