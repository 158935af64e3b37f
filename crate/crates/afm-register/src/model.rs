//! Dimensionless model parameters, magnon spectrum, transformation
//! coefficients, spin contraction and register geometry.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, KernelSpec};
use crate::scalar::Real;

/// Gyromagnetic ratio of the electron spin, rad/(s·T).
pub const GAMMA_S: f64 = 175.88e9;

/// Critical (spin-flop) field b_C = sqrt(2 b_A + b_A²) for 0 < b_A < 1.
pub fn critical_field<T: Real>(b_a: T) -> Result<T> {
    if !(b_a > T::zero() && b_a < T::one()) {
        return Err(Error::domain("critical_field", format!("b_A = {b_a} outside (0, 1)")));
    }
    Ok((T::lit(2.0) * b_a + b_a * b_a).sqrt())
}

/// Dimensionless constants of the antiferromagnet and the register.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    b_a: T,
    b_c: T,
    b: T,
    g: T,
    s: T,
    a: T,
    gamma_ratio: T,
    omega_e: Option<T>,
    exchange_field: Option<T>,
}

impl<T: Real> ModelParams<T> {
    /// Builds parameters from the anisotropy field b_A.
    pub fn new(b_a: T, b: T, g: T, s: T) -> Result<Self> {
        let b_c = critical_field(b_a)?;
        Self::build(b_a, b_c, b, g, s)
    }

    /// Builds parameters from the critical field b_C directly.
    pub fn from_critical_field(b_c: T, b: T, g: T, s: T) -> Result<Self> {
        if !(b_c > T::zero()) {
            return Err(Error::domain("ModelParams", format!("b_C = {b_c} must be positive")));
        }
        let b_a = (T::one() + b_c * b_c).sqrt() - T::one();
        if b_a >= T::one() {
            return Err(Error::domain("ModelParams", format!("b_C = {b_c} implies b_A ≥ 1")));
        }
        Self::build(b_a, b_c, b, g, s)
    }

    fn build(b_a: T, b_c: T, b: T, g: T, s: T) -> Result<Self> {
        if !(b > T::zero() && b < b_c) {
            return Err(Error::domain("ModelParams", format!("b = {b} outside (0, b_C = {b_c})")));
        }
        if !(g >= T::zero()) || !g.is_finite() {
            return Err(Error::domain("ModelParams", format!("g = {g} must be non-negative")));
        }
        if !(s > T::zero()) || !s.is_finite() {
            return Err(Error::domain("ModelParams", format!("s = {s} must be positive")));
        }
        if s > T::lit(0.1) * (b_c - b) {
            log::warn!(
                "magnon damping s = {s} is not small against b_C − b = {}; adiabatic switching is questionable",
                b_c - b
            );
        }
        Ok(Self {
            b_a,
            b_c,
            b,
            g,
            s,
            a: T::lit(1e-3),
            gamma_ratio: T::lit(1e-3),
            omega_e: None,
            exchange_field: None,
        })
    }

    /// Sets the hyperfine constant a = A/ω_E.
    pub fn with_hyperfine(mut self, a: T) -> Result<Self> {
        if !(a > T::zero()) {
            return Err(Error::domain("ModelParams", format!("a = {a} must be positive")));
        }
        self.a = a;
        Ok(self)
    }

    /// Sets γ_I/γ_S.
    pub fn with_gamma_ratio(mut self, ratio: T) -> Result<Self> {
        if !(ratio > T::zero()) {
            return Err(Error::domain("ModelParams", format!("gamma ratio {ratio} must be positive")));
        }
        self.gamma_ratio = ratio;
        Ok(self)
    }

    /// Sets the exchange angular frequency ω_E in rad/s.
    pub fn with_omega_e(mut self, omega_e: T) -> Result<Self> {
        if !(omega_e > T::zero()) {
            return Err(Error::Config(format!("omega_E = {omega_e} must be positive")));
        }
        self.omega_e = Some(omega_e);
        Ok(self)
    }

    /// Sets the exchange field B_E in tesla.
    pub fn with_exchange_field(mut self, b_e: T) -> Result<Self> {
        if !(b_e > T::zero()) {
            return Err(Error::Config(format!("B_E = {b_e} must be positive")));
        }
        self.exchange_field = Some(b_e);
        Ok(self)
    }

    /// Replaces the magnon damping, keeping everything else.
    pub fn with_damping(self, s: T) -> Result<Self> {
        let mut p = Self::build(self.b_a, self.b_c, self.b, self.g, s)?;
        p.a = self.a;
        p.gamma_ratio = self.gamma_ratio;
        p.omega_e = self.omega_e;
        p.exchange_field = self.exchange_field;
        Ok(p)
    }

    /// Replaces the field gradient, keeping everything else.
    pub fn with_gradient(self, g: T) -> Result<Self> {
        let mut p = Self::build(self.b_a, self.b_c, self.b, g, self.s)?;
        p.a = self.a;
        p.gamma_ratio = self.gamma_ratio;
        p.omega_e = self.omega_e;
        p.exchange_field = self.exchange_field;
        Ok(p)
    }

    pub fn b_a(&self) -> T {
        self.b_a
    }
    pub fn b_c(&self) -> T {
        self.b_c
    }
    pub fn b(&self) -> T {
        self.b
    }
    pub fn g(&self) -> T {
        self.g
    }
    pub fn s(&self) -> T {
        self.s
    }
    pub fn a(&self) -> T {
        self.a
    }
    pub fn gamma_ratio(&self) -> T {
        self.gamma_ratio
    }
    pub fn omega_e(&self) -> Option<T> {
        self.omega_e
    }
    pub fn exchange_field(&self) -> Option<T> {
        self.exchange_field
    }

    /// Top of the band, sqrt(1 + b_C²).
    pub fn band_top(&self) -> T {
        (T::one() + self.b_c * self.b_c).sqrt()
    }

    /// Coupling prefactor sqrt(1 + b_C²) + b_C.
    pub fn prefactor(&self) -> T {
        self.band_top() + self.b_c
    }

    /// Upper limit of the ξ integrals, sqrt(b_C² + π²/12) − b_C.
    pub fn upper_limit(&self) -> T {
        (self.b_c * self.b_c + T::PI() * T::PI() / T::lit(12.0)).sqrt() - self.b_c
    }

    /// Gap of the lower magnon branch, b_C − b.
    pub fn gap(&self) -> T {
        self.b_c - self.b
    }

    /// Converts a normalized coupling or rate to physical units, ×3a²/2π.
    pub fn hyperfine_scale(&self) -> T {
        T::lit(3.0) * self.a * self.a / (T::lit(2.0) * T::PI())
    }
}

/// Magnon energy E(q⊥) = sqrt(b_C² + q⊥²/12).
pub fn magnon_energy<T: Real>(q_perp_sq: T, params: &ModelParams<T>) -> Result<T> {
    if !(q_perp_sq >= T::zero()) {
        return Err(Error::domain("magnon_energy", format!("q⊥² = {q_perp_sq} must be non-negative")));
    }
    Ok((params.b_c * params.b_c + q_perp_sq / T::lit(12.0)).sqrt())
}

/// Zeeman-split branches `(E + b, E − b)`.
pub fn magnon_branches<T: Real>(q_perp_sq: T, params: &ModelParams<T>) -> Result<(T, T)> {
    let e = magnon_energy(q_perp_sq, params)?;
    Ok((e + params.b, e - params.b))
}

/// A point of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint<T> {
    pub q_perp_sq: T,
    pub energy: T,
}

impl<T: Real> SpectralPoint<T> {
    pub fn new(q_perp_sq: T, params: &ModelParams<T>) -> Result<Self> {
        Ok(Self {
            q_perp_sq,
            energy: magnon_energy(q_perp_sq, params)?,
        })
    }
}

/// Transformation-coefficient magnitudes `(u², v²)` at energy E ≥ b_C.
pub fn coeff_magnitudes<T: Real>(energy: T, params: &ModelParams<T>) -> Result<(T, T)> {
    if !(energy >= params.b_c) {
        return Err(Error::domain("coeff_magnitudes", format!("E = {energy} below the gap {}", params.b_c)));
    }
    if !(params.g > T::zero()) {
        return Err(Error::domain("coeff_magnitudes", "normalization requires g > 0"));
    }
    let ratio = params.band_top() / energy;
    let denom = T::lit(4.0) * T::PI() * params.g;
    Ok(((ratio + T::one()) / denom, (ratio - T::one()) / denom))
}

/// Spin contraction ψ, by quadrature over the disk |q⊥| ≤ π.
pub fn spin_contraction<T: Real>(params: &ModelParams<T>) -> Result<T> {
    let top = params.band_top();
    let integrand = |q: T| {
        let e = (params.b_c * params.b_c + q * q / T::lit(12.0)).sqrt();
        q * (top - e) / (T::lit(2.0) * e)
    };
    let cfg_tol = T::lit(1e-12).max(T::epsilon() * T::lit(100.0));
    let r = integrate(integrand, T::zero(), T::PI(), cfg_tol, &KernelSpec::new())?;
    let psi = r.value / (T::lit(2.0) * T::PI());
    if psi >= T::lit(0.5) {
        return Err(Error::domain("spin_contraction", format!("ψ = {psi} violates ψ < 1/2")));
    }
    Ok(psi)
}

/// Coupling regime by the sign of μ² at the midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Gapped,
    TurningPoint,
    Oscillatory,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Gapped => "gapped",
            Regime::TurningPoint => "turning_point",
            Regime::Oscillatory => "oscillatory",
        })
    }
}

/// Two qubit sites and the local detuning of the first one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitPairGeometry<T> {
    k: i64,
    l: i64,
    period: u32,
    delta_b_k: T,
}

impl<T: Real> QubitPairGeometry<T> {
    /// Sites `k ≤ l` in a chain of period `period`; Δb_k = b_C − b − g·k.
    pub fn new(k: i64, l: i64, period: u32, params: &ModelParams<T>) -> Result<Self> {
        if l < k {
            return Err(Error::domain("QubitPairGeometry", format!("l = {l} < k = {k}")));
        }
        let delta_b_k = params.b_c - params.b - params.g * T::lit(k as f64);
        Ok(Self {
            k,
            l,
            period,
            delta_b_k,
        })
    }

    /// Geometry fixed by the detuning Δb_k and the separation l − k.
    pub fn with_detuning(delta_b_k: T, separation: u32) -> Self {
        Self {
            k: 0,
            l: separation as i64,
            period: 100,
            delta_b_k,
        }
    }

    /// Same geometry with Δb_k shifted by `shift`.
    pub fn shifted(&self, shift: T) -> Self {
        Self {
            delta_b_k: self.delta_b_k + shift,
            ..*self
        }
    }

    pub fn with_period(mut self, period: u32) -> Self {
        self.period = period;
        self
    }

    pub fn k(&self) -> i64 {
        self.k
    }
    pub fn l(&self) -> i64 {
        self.l
    }
    pub fn period(&self) -> u32 {
        self.period
    }
    pub fn delta_b_k(&self) -> T {
        self.delta_b_k
    }
    pub fn separation(&self) -> u64 {
        (self.l - self.k) as u64
    }
    pub fn separation_f(&self) -> T {
        T::lit((self.l - self.k) as f64)
    }

    /// Detuning of the second qubit, Δb_l = Δb_k − g(l − k).
    pub fn delta_b_l(&self, params: &ModelParams<T>) -> T {
        self.delta_b_k - params.g * self.separation_f()
    }

    /// Midpoint detuning Δb_k − g(l − k)/2.
    pub fn midpoint_detuning(&self, params: &ModelParams<T>) -> T {
        self.delta_b_k - params.g * self.separation_f() / T::lit(2.0)
    }

    /// Separation 2Δb_k/g at which the midpoint reaches the critical field.
    pub fn turning_point_separation(&self, params: &ModelParams<T>) -> Option<T> {
        if params.g > T::zero() {
            Some(T::lit(2.0) * self.delta_b_k / params.g)
        } else {
            None
        }
    }

    /// Turning-point separation in units of the chain period.
    pub fn turning_point_index(&self, params: &ModelParams<T>) -> Option<T> {
        self.turning_point_separation(params)
            .map(|r| r / T::lit(self.period as f64))
    }
}

/// μ² = 24 b_C (Δb_k − g(l−k)/2) and the regime it implies.
pub fn turning_point_params<T: Real>(geom: &QubitPairGeometry<T>, params: &ModelParams<T>) -> (T, Regime) {
    let scale = T::lit(24.0) * params.b_c;
    let mu_sq = scale * geom.midpoint_detuning(params);
    let regime = if mu_sq.abs() < scale * params.s {
        Regime::TurningPoint
    } else if mu_sq > T::zero() {
        Regime::Gapped
    } else {
        Regime::Oscillatory
    };
    (mu_sq, regime)
}

/// A dimensionless quantity tagged with its physical dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity<T> {
    Time(T),
    Field(T),
    Rate(T),
}

/// Converts a tagged dimensionless quantity to SI (s, T, 1/s).
pub fn to_physical<T: Real>(params: &ModelParams<T>, quantity: Quantity<T>) -> Result<T> {
    let omega = || {
        params
            .omega_e
            .ok_or_else(|| Error::Config("omega_E is not set".into()))
    };
    match quantity {
        Quantity::Time(tau) => Ok(tau / omega()?),
        Quantity::Rate(r) => Ok(r * omega()?),
        Quantity::Field(b) => params
            .exchange_field
            .map(|be| b * be)
            .ok_or_else(|| Error::Config("exchange field B_E is not set".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_params() -> ModelParams<f64> {
        ModelParams::from_critical_field(0.5, 0.49, 2e-5, 1e-5).unwrap()
    }

    #[test]
    fn critical_field_examples() {
        assert_eq!(critical_field(0.25_f64).unwrap(), 0.75);
        assert!(critical_field(0.0_f64).is_err());
        assert!(critical_field(1.0_f64).is_err());
        assert!(critical_field(1e-12_f64).unwrap() < 2e-6);
    }

    #[test]
    fn from_critical_field_round_trips() {
        let p = reference_params();
        assert!((critical_field(p.b_a()).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn constructor_validates() {
        assert!(ModelParams::from_critical_field(0.5, 0.6, 2e-5, 1e-5).is_err());
        assert!(ModelParams::from_critical_field(0.5, 0.4, -1.0, 1e-5).is_err());
        assert!(ModelParams::from_critical_field(0.5, 0.4, 2e-5, 0.0).is_err());
    }

    #[test]
    fn energy_and_branches() {
        let p = reference_params();
        assert_eq!(magnon_energy(0.0, &p).unwrap(), 0.5);
        assert!((magnon_energy(12.0, &p).unwrap() - 1.25_f64.sqrt()).abs() < 1e-15);
        assert!(magnon_energy(-1.0, &p).is_err());
        let (up, down) = magnon_branches(0.0, &p).unwrap();
        assert!((up - 0.99).abs() < 1e-15 && (down - 0.01).abs() < 1e-15);
    }

    #[test]
    fn coefficients_at_band_edges() {
        let p = reference_params();
        let (_, v2) = coeff_magnitudes(p.band_top(), &p).unwrap();
        assert!(v2.abs() < 1e-12);
        let (u2, _) = coeff_magnitudes(0.5, &p).unwrap();
        let want = (1.25_f64.sqrt() / 0.5 + 1.0) / (4.0 * std::f64::consts::PI * 2e-5);
        assert!((u2 / want - 1.0).abs() < 1e-14);
        assert!(coeff_magnitudes(0.49, &p).is_err());
    }

    #[test]
    fn turning_point_example() {
        let p = reference_params();
        let g = QubitPairGeometry::with_detuning(3e-3, 100);
        let (mu_sq, regime) = turning_point_params(&g, &p);
        assert!((mu_sq - 0.024).abs() < 1e-15);
        assert_eq!(regime, Regime::Gapped);
        let g = QubitPairGeometry::with_detuning(1e-3, 100);
        assert_eq!(turning_point_params(&g, &p).1, Regime::TurningPoint);
        assert_eq!(g.turning_point_separation(&p).unwrap(), 100.0);
        assert_eq!(g.turning_point_index(&p).unwrap(), 1.0);
    }

    #[test]
    fn geometry_from_sites() {
        let p = reference_params();
        let g = QubitPairGeometry::new(10, 60, 100, &p).unwrap();
        assert!((g.delta_b_k() - (0.01 - 2e-4)).abs() < 1e-15);
        let mid = p.b_c() - p.b() - p.g() * 35.0;
        assert!((g.midpoint_detuning(&p) - mid).abs() < 1e-15);
        assert!(QubitPairGeometry::new(5, 4, 100, &p).is_err());
    }

    #[test]
    fn physical_conversion() {
        let p = reference_params();
        assert!(to_physical(&p, Quantity::Time(1.0)).is_err());
        let w = 2.0 * std::f64::consts::PI * 1e11;
        let p = p.with_omega_e(w).unwrap().with_exchange_field(35.0).unwrap();
        assert!((to_physical(&p, Quantity::Time(1.0)).unwrap() - 1.0 / w).abs() < 1e-25);
        assert!((to_physical(&p, Quantity::Rate(1e-6)).unwrap() - 6.283_185_307e5).abs() < 1e-3);
        assert_eq!(to_physical(&p, Quantity::Field(1.0)).unwrap(), 35.0);
    }
}
