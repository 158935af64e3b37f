//! Antiferromagnetic-resonance driving: Rabi dynamics of the magnon
//! vacuum and the microwave-induced change of the indirect coupling.

use crate::coupling::coupling_exact_with;
use crate::error::{Error, Result};
use crate::model::{turning_point_params, ModelParams, QubitPairGeometry, Regime};
use crate::quadrature::QuadConfig;
use crate::scalar::Real;

/// Circularly polarized microwave drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams<T> {
    b_perp: T,
    omega: T,
}

impl<T: Real> DriveParams<T> {
    /// Amplitude b⊥ (units of B_E) and frequency ω (units of ω_E).
    pub fn new(b_perp: T, omega: T) -> Result<Self> {
        if !(b_perp > T::zero()) || !b_perp.is_finite() {
            return Err(Error::domain("DriveParams", format!("b_perp = {b_perp} must be positive")));
        }
        if !omega.is_finite() {
            return Err(Error::domain("DriveParams", format!("omega = {omega} must be finite")));
        }
        Ok(Self { b_perp, omega })
    }

    pub fn b_perp(&self) -> T {
        self.b_perp
    }
    pub fn omega(&self) -> T {
        self.omega
    }

    /// Detuning b_C − b − ω from the uniform-mode resonance.
    pub fn detuning(&self, params: &ModelParams<T>) -> T {
        params.gap() - self.omega
    }

    /// Logs a warning when the resonance approximation is doubtful.
    pub fn check_resonance(&self, params: &ModelParams<T>) -> bool {
        let ok = self.detuning(params).abs() <= T::lit(0.1) * self.omega.abs();
        if !ok {
            log::warn!(
                "drive at omega = {} is far from resonance (detuning {}); two-level truncation is questionable",
                self.omega,
                self.detuning(params)
            );
        }
        ok
    }
}

/// |B|² = π b⊥² b_C / sqrt(1 + b_C²).
pub fn coupling_strength_sq<T: Real>(drive: &DriveParams<T>, params: &ModelParams<T>) -> T {
    T::PI() * drive.b_perp * drive.b_perp * params.b_c() / params.band_top()
}

/// Two-level Rabi problem fixed by a detuning and |B|².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rabi<T> {
    pub detuning: T,
    pub coupling_sq: T,
}

impl<T: Real> Rabi<T> {
    pub fn new(detuning: T, coupling_sq: T) -> Self {
        Self { detuning, coupling_sq }
    }

    pub fn from_drive(drive: &DriveParams<T>, params: &ModelParams<T>) -> Self {
        Self::new(drive.detuning(params), coupling_strength_sq(drive, params))
    }

    /// Ω = sqrt(detuning² + 4|B|²).
    pub fn frequency(&self) -> T {
        (self.detuning * self.detuning + T::lit(4.0) * self.coupling_sq).sqrt()
    }

    /// Full contrast 4|B|²/Ω².
    pub fn contrast(&self) -> T {
        let omega = self.frequency();
        if omega == T::zero() {
            return T::zero();
        }
        T::lit(4.0) * self.coupling_sq / (omega * omega)
    }

    /// |c1(τ)|² = (4|B|²/Ω²)·sin²(Ωτ/2).
    pub fn excited_probability(&self, tau: T) -> T {
        let s = (self.frequency() * tau / T::lit(2.0)).sin();
        self.contrast() * s * s
    }

    /// |c0(τ)|² = 1 − |c1(τ)|².
    pub fn ground_probability(&self, tau: T) -> T {
        T::one() - self.excited_probability(tau)
    }

    /// Smallest |c0|² reached over a period.
    pub fn min_ground_probability(&self) -> T {
        T::one() - self.contrast()
    }
}

/// Ω(ω) = sqrt((b_C − b − ω)² + 4|B|²).
pub fn rabi_frequency<T: Real>(drive: &DriveParams<T>, params: &ModelParams<T>) -> T {
    Rabi::from_drive(drive, params).frequency()
}

/// |c0(τ)|² of the magnon vacuum under the drive.
pub fn ground_state_probability<T: Real>(tau: T, drive: &DriveParams<T>, params: &ModelParams<T>) -> Result<T> {
    if !(tau >= T::zero()) {
        return Err(Error::domain("ground_state_probability", format!("tau = {tau} must be non-negative")));
    }
    Ok(Rabi::from_drive(drive, params).ground_probability(tau))
}

/// Options for [`afr_coupling_shift`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftOptions<T> {
    /// Omit the (sqrt(1+b_C²)+b_C) factor of the prefactor, which V already carries.
    pub drop_duplicated_prefactor: bool,
    pub quad: QuadConfig<T>,
}

impl<T: Real> Default for ShiftOptions<T> {
    fn default() -> Self {
        Self {
            drop_duplicated_prefactor: false,
            quad: QuadConfig::default(),
        }
    }
}

/// Microwave-induced change of the coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfrShift<T> {
    pub value: T,
    pub rabi_frequency: T,
    /// True when the ±Ω shifted detunings fall in different regimes or at a turning point.
    pub crosses_turning_point: bool,
}

/// ΔV = −(2|B|² c/Ω²)·[V(Δb_k) − ½V(Δb_k − Ω) − ½V(Δb_k + Ω)], each V exact.
pub fn afr_coupling_shift<T: Real>(
    geom: &QubitPairGeometry<T>,
    params: &ModelParams<T>,
    drive: &DriveParams<T>,
) -> Result<AfrShift<T>> {
    afr_coupling_shift_with(geom, params, drive, &ShiftOptions::default())
}

/// [`afr_coupling_shift`] with explicit options.
pub fn afr_coupling_shift_with<T: Real>(
    geom: &QubitPairGeometry<T>,
    params: &ModelParams<T>,
    drive: &DriveParams<T>,
    opts: &ShiftOptions<T>,
) -> Result<AfrShift<T>> {
    let rabi = Rabi::from_drive(drive, params);
    let omega = rabi.frequency();
    let half = T::lit(0.5);
    let geoms = [*geom, geom.shifted(-omega), geom.shifted(omega)];
    let regimes: Vec<Regime> = geoms.iter().map(|g| turning_point_params(g, params).1).collect();
    let crosses = regimes.iter().any(|r| *r == Regime::TurningPoint) || regimes.iter().any(|r| *r != regimes[0]);
    if crosses {
        log::warn!("AFR shift at separation {} mixes coupling regimes", geom.separation());
    }
    if omega == T::zero() {
        return Ok(AfrShift {
            value: T::zero(),
            rabi_frequency: omega,
            crosses_turning_point: crosses,
        });
    }
    let v0 = coupling_exact_with(&geoms[0], params, &opts.quad)?.value;
    let vm = coupling_exact_with(&geoms[1], params, &opts.quad)?.value;
    let vp = coupling_exact_with(&geoms[2], params, &opts.quad)?.value;
    let factor = if opts.drop_duplicated_prefactor {
        T::one()
    } else {
        params.prefactor()
    };
    let pre = T::lit(2.0) * rabi.coupling_sq * factor / (omega * omega);
    Ok(AfrShift {
        value: -pre * (v0 - half * vm - half * vp),
        rabi_frequency: omega,
        crosses_turning_point: crosses,
    })
}

/// Microwave frequencies ω± = b_C − b ± sqrt((Δb_k − g(l−k)/2)² − 4|B|²), if real.
pub fn tuning_frequencies<T: Real>(
    geom: &QubitPairGeometry<T>,
    params: &ModelParams<T>,
    drive: &DriveParams<T>,
) -> Option<(T, T)> {
    tuning_frequencies_for(geom.midpoint_detuning(params), params.gap(), coupling_strength_sq(drive, params))
}

/// [`tuning_frequencies`] from the midpoint detuning, the gap b_C − b and |B|².
pub fn tuning_frequencies_for<T: Real>(midpoint: T, gap: T, coupling_sq: T) -> Option<(T, T)> {
    let disc = midpoint * midpoint - T::lit(4.0) * coupling_sq;
    if disc < T::zero() {
        return None;
    }
    let root = disc.sqrt();
    Some((gap + root, gap - root))
}

/// Bounds on the plate thickness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateBounds<T> {
    /// Lower bound on N_z = d/a_z.
    pub n_z_min: T,
    /// Upper bound on N_z.
    pub n_z_max: T,
    pub d_min_nm: T,
    pub d_max_nm: T,
}

/// (π/sqrt(6 b_C), π·sqrt(1/(6 b_C Δω0))) and their thickness in nm.
pub fn plate_thickness_bounds<T: Real>(params: &ModelParams<T>, afr_width: T, a_z_nm: T) -> Result<PlateBounds<T>> {
    if !(afr_width > T::zero()) {
        return Err(Error::domain("plate_thickness_bounds", format!("AFR width {afr_width} must be positive")));
    }
    if afr_width >= params.b_c() {
        return Err(Error::domain(
            "plate_thickness_bounds",
            format!("AFR width {afr_width} must be below b_C = {}", params.b_c()),
        ));
    }
    if !(a_z_nm > T::zero()) {
        return Err(Error::domain("plate_thickness_bounds", format!("a_z = {a_z_nm} must be positive")));
    }
    let six_bc = T::lit(6.0) * params.b_c();
    let n_z_min = T::PI() / six_bc.sqrt();
    let n_z_max = T::PI() * (six_bc * afr_width).recip().sqrt();
    Ok(PlateBounds {
        n_z_min,
        n_z_max,
        d_min_nm: n_z_min * a_z_nm,
        d_max_nm: n_z_max * a_z_nm,
    })
}
