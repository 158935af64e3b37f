//! Indirect inter-qubit coupling V(Δb_k, l − k): exact quadrature,
//! Macdonald/Neumann asymptotics, logarithmic limits, self-energy and
//! the dipole comparison.
//!
//! Values are in the normalized units 2π/(3a²)·U; multiply by
//! [`ModelParams::hyperfine_scale`] to recover U(k, l).

use crate::error::{Error, Result};
use crate::model::{turning_point_params, ModelParams, QubitPairGeometry, Regime};
use crate::quadrature::{integrate_with, KernelSpec, QuadConfig};
use crate::scalar::Real;
use crate::specfun::{bessel_j0, bessel_k0, bessel_y0};

const HBAR: f64 = 1.054_571_817e-34;
const MU0_OVER_4PI: f64 = 1e-7;

/// Which formula produced a coupling value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CouplingRegime {
    ExactQuadrature,
    Macdonald,
    Neumann,
    LogGapped,
    LogOscillatory,
}

impl std::fmt::Display for CouplingRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CouplingRegime::ExactQuadrature => "exact",
            CouplingRegime::Macdonald => "macdonald",
            CouplingRegime::Neumann => "neumann",
            CouplingRegime::LogGapped => "log_gapped",
            CouplingRegime::LogOscillatory => "log_oscillatory",
        })
    }
}

/// A coupling value with the formula and argument that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingResult<T> {
    pub value: T,
    pub regime: CouplingRegime,
    /// μ for gapped, ν for oscillatory midpoints.
    pub mu_or_nu: T,
    /// μ|l − k| or ν|l − k|.
    pub argument: T,
    /// Set near the turning point where second-order theory is not trusted.
    pub perturbation_theory_unreliable: bool,
    /// Quadrature error estimate (zero for closed forms).
    pub abs_error: T,
}

fn mu_or_nu<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> (T, T, Regime) {
    let (mu_sq, regime) = turning_point_params(geom, params);
    let m = mu_sq.abs().sqrt();
    (mu_sq, m, regime)
}

/// Argument of J0 in the exact kernel: sqrt(12((ξ + b_C)² − b_C²)).
pub fn radial_wavenumber<T: Real>(xi: T, b_c: T) -> T {
    (T::lit(12.0) * ((xi + b_c) * (xi + b_c) - b_c * b_c)).max(T::zero()).sqrt()
}

/// Exact V by quadrature with the default tolerance.
pub fn coupling_exact<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> Result<CouplingResult<T>> {
    coupling_exact_with(geom, params, &QuadConfig::default())
}

/// Exact V by quadrature under an explicit configuration.
pub fn coupling_exact_with<T: Real>(
    geom: &QubitPairGeometry<T>,
    params: &ModelParams<T>,
    cfg: &QuadConfig<T>,
) -> Result<CouplingResult<T>> {
    let (_, m, regime) = mu_or_nu(geom, params);
    let r = geom.separation_f();
    let delta = geom.midpoint_detuning(params);
    let (b_c, s, c) = (params.b_c(), params.s(), params.prefactor());
    let upper = params.upper_limit();
    let integrand = |xi: T| {
        let x = xi + delta;
        let bessel = if r > T::zero() {
            bessel_j0(radial_wavenumber(xi, b_c) * r).unwrap_or_else(|_| T::nan())
        } else {
            T::one()
        };
        (c + xi) * x * bessel / (x * x + s * s)
    };
    let mut hint = KernelSpec::new().with_peak(-delta, s);
    if r > T::zero() {
        hint = hint.with_oscillation((T::lit(24.0) * b_c).sqrt() * r);
    }
    let cfg = cfg.for_panels(hint.oscillation_panels(T::zero(), upper));
    let res = integrate_with(integrand, T::zero(), upper, &cfg, &hint)?;
    Ok(CouplingResult {
        value: res.value,
        regime: CouplingRegime::ExactQuadrature,
        mu_or_nu: m,
        argument: m * r,
        perturbation_theory_unreliable: regime == Regime::TurningPoint,
        abs_error: res.abs_error_estimate,
    })
}

fn closed<T: Real>(value: T, regime: CouplingRegime, m: T, r: T, tp: Regime) -> CouplingResult<T> {
    CouplingResult {
        value,
        regime,
        mu_or_nu: m,
        argument: m * r,
        perturbation_theory_unreliable: tp == Regime::TurningPoint,
        abs_error: T::zero(),
    }
}

fn require_gapped<T: Real>(mu_sq: T, func: &str) -> Result<()> {
    if mu_sq > T::zero() {
        Ok(())
    } else {
        Err(Error::Regime(format!("{func} needs μ² > 0, got {mu_sq}")))
    }
}

fn require_oscillatory<T: Real>(mu_sq: T, func: &str) -> Result<()> {
    if mu_sq < T::zero() {
        Ok(())
    } else {
        Err(Error::Regime(format!("{func} needs μ² < 0, got {mu_sq}")))
    }
}

fn require_separated<T: Real>(r: T, func: &str) -> Result<()> {
    if r > T::zero() {
        Ok(())
    } else {
        Err(Error::Regime(format!("{func} needs l > k")))
    }
}

/// Gapped form 2(sqrt(1+b_C²)+b_C)·K0(μ|l−k|).
pub fn coupling_macdonald<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> Result<CouplingResult<T>> {
    let (mu_sq, mu, tp) = mu_or_nu(geom, params);
    let r = geom.separation_f();
    require_gapped(mu_sq, "coupling_macdonald")?;
    require_separated(r, "coupling_macdonald")?;
    let v = T::lit(2.0) * params.prefactor() * bessel_k0(mu * r)?;
    Ok(closed(v, CouplingRegime::Macdonald, mu, r, tp))
}

/// Far-field form 2(sqrt(1+b_C²)+b_C)·sqrt(π/(2μ|l−k|))·exp(−μ|l−k|).
pub fn macdonald_far_field<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> Result<T> {
    let (mu_sq, mu, _) = mu_or_nu(geom, params);
    let r = geom.separation_f();
    require_gapped(mu_sq, "macdonald_far_field")?;
    require_separated(r, "macdonald_far_field")?;
    let x = mu * r;
    Ok(T::lit(2.0) * params.prefactor() * (T::PI() / (T::lit(2.0) * x)).sqrt() * (-x).exp())
}

/// Oscillatory form −2(sqrt(1+b_C²)+b_C)·(π/2)·Y0(ν|l−k|).
pub fn coupling_neumann<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> Result<CouplingResult<T>> {
    let (mu_sq, nu, tp) = mu_or_nu(geom, params);
    let r = geom.separation_f();
    require_oscillatory(mu_sq, "coupling_neumann")?;
    require_separated(r, "coupling_neumann")?;
    let v = -params.prefactor() * T::PI() * bessel_y0(nu * r)?;
    Ok(closed(v, CouplingRegime::Neumann, nu, r, tp))
}

/// Large-argument sine form of [`coupling_neumann`],
/// −2(sqrt(1+b_C²)+b_C)·sqrt(π/(2ν|l−k|))·sin(ν|l−k| − π/4).
pub fn neumann_sine_asymptote<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> Result<T> {
    let (mu_sq, nu, _) = mu_or_nu(geom, params);
    let r = geom.separation_f();
    require_oscillatory(mu_sq, "neumann_sine_asymptote")?;
    require_separated(r, "neumann_sine_asymptote")?;
    let x = nu * r;
    Ok(-T::lit(2.0) * params.prefactor() * (T::PI() / (T::lit(2.0) * x)).sqrt() * (x - T::FRAC_PI_4()).sin())
}

/// Envelope 2(sqrt(1+b_C²)+b_C)·sqrt(π/(2x)) of the far-field forms at x = μ|l−k| or ν|l−k|.
pub fn far_field_envelope<T: Real>(x: T, params: &ModelParams<T>) -> T {
    T::lit(2.0) * params.prefactor() * (T::PI() / (T::lit(2.0) * x)).sqrt()
}

/// Matching asymptotic form: Macdonald when μ² > 0, Neumann when μ² < 0.
pub fn coupling_asymptotic<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> Result<CouplingResult<T>> {
    let (mu_sq, _) = turning_point_params(geom, params);
    if mu_sq > T::zero() {
        coupling_macdonald(geom, params)
    } else if mu_sq < T::zero() {
        coupling_neumann(geom, params)
    } else {
        Err(Error::Regime("asymptotic coupling diverges at μ² = 0".into()))
    }
}

/// Gapped logarithmic limit 2(sqrt(1+b_C²)+b_C)·(ln(2/(μ|l−k|)) − C).
pub fn coupling_log_gapped<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> Result<CouplingResult<T>> {
    let (mu_sq, mu, tp) = mu_or_nu(geom, params);
    let r = geom.separation_f();
    require_gapped(mu_sq, "coupling_log_gapped")?;
    require_separated(r, "coupling_log_gapped")?;
    let v = T::lit(2.0) * params.prefactor() * ((T::lit(2.0) / (mu * r)).ln() - T::euler_gamma());
    Ok(closed(v, CouplingRegime::LogGapped, mu, r, tp))
}

/// Oscillatory logarithmic limit 2(sqrt(1+b_C²)+b_C)·(ln(2/(ν|l−k|)) − C).
pub fn coupling_log_oscillatory<T: Real>(
    geom: &QubitPairGeometry<T>,
    params: &ModelParams<T>,
) -> Result<CouplingResult<T>> {
    let (mu_sq, nu, tp) = mu_or_nu(geom, params);
    let r = geom.separation_f();
    require_oscillatory(mu_sq, "coupling_log_oscillatory")?;
    require_separated(r, "coupling_log_oscillatory")?;
    let v = T::lit(2.0) * params.prefactor() * ((T::lit(2.0) / (nu * r)).ln() - T::euler_gamma());
    Ok(closed(v, CouplingRegime::LogOscillatory, nu, r, tp))
}

/// Separation at which the n-th zero sqrt(24 b_C g (l−k)³/2) = (n + 1/4)π is predicted.
pub fn predicted_zero_separation<T: Real>(n: u32, params: &ModelParams<T>) -> Result<T> {
    if !(params.g() > T::zero()) {
        return Err(Error::domain("predicted_zero_separation", "needs g > 0"));
    }
    let phase = (T::lit(n as f64) + T::lit(0.25)) * T::PI();
    Ok((phase * phase / (T::lit(12.0) * params.b_c() * params.g())).cbrt())
}

/// Self-energy V(Δb_k, 0) in the s → 0 limit.
pub fn self_energy<T: Real>(delta_b_k: T, params: &ModelParams<T>) -> Result<T> {
    if !(delta_b_k > T::zero()) {
        return Err(Error::domain("self_energy", format!("Δb_k = {delta_b_k} must be positive")));
    }
    let upper = params.upper_limit();
    Ok((params.prefactor() - delta_b_k) * ((upper + delta_b_k) / delta_b_k).ln() + upper)
}

/// U(k, l) from a normalized coupling value.
pub fn physical_coupling<T: Real>(value: T, params: &ModelParams<T>) -> T {
    value * params.hyperfine_scale()
}

/// Dipolar ratio D = γ_I B_I/(γ_S B_E) with B_I = (μ0/4π)γ_I ħ/a_x³.
pub fn dipole_constant<T: Real>(params: &ModelParams<T>, a_x_nm: T) -> Result<T> {
    if !(a_x_nm > T::zero()) {
        return Err(Error::domain("dipole_constant", format!("a_x = {a_x_nm} nm must be positive")));
    }
    let b_e = params
        .exchange_field()
        .ok_or_else(|| Error::Config("dipole ratio needs the exchange field B_E".into()))?;
    let gamma_i = params.gamma_ratio() * T::lit(crate::model::GAMMA_S);
    let a_x = a_x_nm * T::lit(1e-9);
    let b_i = T::lit(MU0_OVER_4PI) * gamma_i * T::lit(HBAR) / (a_x * a_x * a_x);
    Ok(params.gamma_ratio() * b_i / b_e)
}

/// R^{5/2}·e^{−R}.
pub fn dipole_envelope<T: Real>(r: T) -> T {
    r.powf(T::lit(2.5)) * (-r).exp()
}

/// Ratio of the dipole to the indirect interaction in the gapped regime.
pub fn dipole_ratio<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>, a_x_nm: T) -> Result<T> {
    let (_, mu, regime) = mu_or_nu(geom, params);
    if regime != Regime::Gapped {
        return Err(Error::Regime(format!("dipole_ratio needs the gapped regime, got {regime}")));
    }
    let r = mu * geom.separation_f();
    require_separated(r, "dipole_ratio")?;
    let d = dipole_constant(params, a_x_nm)?;
    let a2 = params.a() * params.a();
    Ok((T::lit(2.0) * T::PI()).sqrt() * d * mu * mu * mu
        / (T::lit(3.0) * a2 * params.prefactor() * dipole_envelope(r)))
}
