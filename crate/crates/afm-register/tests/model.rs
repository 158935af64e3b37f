use afm_register::model::*;
use afm_register::{ModelParams, QubitPairGeometry, Regime};
use proptest::prelude::*;
use std::f64::consts::PI;

fn reference_params() -> ModelParams<f64> {
    ModelParams::from_critical_field(0.5, 0.49, 2e-5, 1e-5).unwrap()
}

/// ψ by a midpoint Riemann sum over a polar grid on |q⊥| ≤ π.
fn psi_riemann(b_c: f64, n_q: usize, n_phi: usize) -> f64 {
    let top = (1.0 + b_c * b_c).sqrt();
    let (dq, dphi) = (PI / n_q as f64, 2.0 * PI / n_phi as f64);
    let mut total = 0.0;
    for _ in 0..n_phi {
        let mut ring = 0.0;
        for i in 0..n_q {
            let q = (i as f64 + 0.5) * dq;
            let e = (b_c * b_c + q * q / 12.0).sqrt();
            ring += (top - e) / (2.0 * e) * q * dq;
        }
        total += ring * dphi;
    }
    total / (4.0 * PI * PI)
}

#[test]
fn critical_field_examples() {
    let b_c = critical_field(3.3_f64 / 35.0).unwrap();
    assert!((b_c * 35.0 - 15.5).abs() < 0.1, "B_C = {} T", b_c * 35.0);
    assert!((critical_field(0.25_f64).unwrap() - 0.75).abs() < 1e-15);
    assert!(critical_field(1e-12_f64).unwrap() < 2e-6);
    assert!(critical_field(1.0_f64).is_err());
    assert!(critical_field(0.0_f64).is_err());
}

#[test]
fn constructor_rejects_invalid_fields() {
    assert!(ModelParams::from_critical_field(0.5, 0.5, 2e-5, 1e-5).is_err());
    assert!(ModelParams::from_critical_field(0.5, 0.0, 2e-5, 1e-5).is_err());
    assert!(ModelParams::from_critical_field(0.5, 0.4, -1.0, 1e-5).is_err());
    assert!(ModelParams::from_critical_field(0.5, 0.4, 2e-5, 0.0).is_err());
    assert!(ModelParams::from_critical_field(1.8, 0.4, 2e-5, 1e-5).is_err());
}

#[test]
fn energy_examples() {
    let p = reference_params();
    assert_eq!(magnon_energy(0.0, &p).unwrap(), 0.5);
    assert!((magnon_energy(12.0, &p).unwrap() - 1.25_f64.sqrt()).abs() < 1e-15);
    assert!(magnon_energy(-1.0, &p).is_err());
    let (up, down) = magnon_branches(0.0, &p).unwrap();
    assert!((up - 0.99).abs() < 1e-15 && (down - 0.01).abs() < 1e-15);
    for b in [0.49_f64, 0.499, 0.4999999] {
        let q = ModelParams::from_critical_field(0.5, b, 2e-5, 1e-9).unwrap();
        let (_, lower) = magnon_branches(0.0, &q).unwrap();
        assert!((lower - (0.5 - b)).abs() < 1e-15);
    }
}

#[test]
fn coefficient_examples() {
    let p = reference_params();
    let (u2, v2) = coeff_magnitudes(p.band_top(), &p).unwrap();
    assert_eq!(v2, 0.0);
    assert!((u2 - 1.0 / (2.0 * PI * 2e-5)).abs() < 1e-9 * u2);
    let (u2, _) = coeff_magnitudes(0.5, &p).unwrap();
    let want = (1.25_f64.sqrt() / 0.5 + 1.0) / (4.0 * PI * 2e-5);
    assert!((u2 - want).abs() < 1e-12 * want);
    assert!(coeff_magnitudes(0.49, &p).is_err());
    assert!(coeff_magnitudes(0.6, &p.with_gradient(0.0).unwrap()).is_err());
}

#[test]
fn spin_contraction_matches_riemann_sum() {
    let p = reference_params();
    let psi = spin_contraction(&p).unwrap();
    let oracle = psi_riemann(0.5, 1000, 1000);
    assert!((psi - oracle).abs() < 1e-6 * oracle, "{psi} vs {oracle}");
    assert!(psi < 0.5);
}

#[test]
fn spin_contraction_shrinks_toward_flat_band() {
    let mut last = f64::INFINITY;
    for b_c in [0.1, 0.5, 1.0, 1.5, 1.7] {
        let p = ModelParams::from_critical_field(b_c, 0.5 * b_c, 2e-5, 1e-6).unwrap();
        let psi = spin_contraction(&p).unwrap();
        assert!(psi < last, "b_C={b_c}: {psi}");
        last = psi;
    }
}

#[test]
fn geometry_detunings() {
    let p = reference_params();
    let g = QubitPairGeometry::new(7, 57, 100, &p).unwrap();
    assert!((g.delta_b_k() - (0.01 - 2e-5 * 7.0)).abs() < 1e-17);
    let want_mid = 0.5 - 0.49 - 2e-5 * (57.0 + 7.0) / 2.0;
    assert!((g.midpoint_detuning(&p) - want_mid).abs() < 1e-16);
    assert!((g.delta_b_l(&p) - (0.01 - 2e-5 * 57.0)).abs() < 1e-16);
    assert!(QubitPairGeometry::new(5, 4, 100, &p).is_err());
}

#[test]
fn turning_point_examples() {
    let p = reference_params();
    let g = QubitPairGeometry::with_detuning(1e-3, 100);
    assert!((g.turning_point_separation(&p).unwrap() - 100.0).abs() < 1e-9);
    assert!((g.turning_point_index(&p).unwrap() - 1.0).abs() < 1e-11);
    let (mu_sq, regime) = turning_point_params(&g, &p);
    assert!(mu_sq.abs() < 1e-15);
    assert_eq!(regime, Regime::TurningPoint);
    let (mu_sq, regime) = turning_point_params(&QubitPairGeometry::with_detuning(3e-3, 100), &p);
    assert!((mu_sq - 0.024).abs() < 1e-15);
    assert_eq!(regime, Regime::Gapped);
    assert!(QubitPairGeometry::with_detuning(1e-3, 10).turning_point_separation(&p.with_gradient(0.0).unwrap()).is_none());
}

#[test]
fn regime_crosses_turning_point_once_at_twice_detuning_over_gradient() {
    let p = reference_params();
    for (d, at) in [(1e-3, 100u32), (3e-3, 300)] {
        let regimes: Vec<Regime> = (1..=2 * at)
            .map(|r| turning_point_params(&QubitPairGeometry::with_detuning(d, r), &p).1)
            .collect();
        let switches = regimes.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(switches, 2, "d={d}");
        assert_eq!(regimes[at as usize - 1], Regime::TurningPoint);
        assert_eq!(regimes[at as usize - 2], Regime::Gapped);
        assert_eq!(regimes[at as usize], Regime::Oscillatory);
    }
}

#[test]
fn physical_units() {
    let w = 2.0 * PI * 1e11;
    let p = reference_params().with_omega_e(w).unwrap().with_exchange_field(35.0).unwrap();
    assert!((to_physical(&p, Quantity::Time(1.0)).unwrap() - 1.0 / w).abs() < 1e-27);
    assert!((to_physical(&p, Quantity::Rate(1e-6)).unwrap() - 6.283185307e5).abs() < 1e-3);
    assert!((to_physical(&p, Quantity::Field(0.443)).unwrap() - 15.5).abs() < 0.01);
    assert!(to_physical(&reference_params(), Quantity::Time(1.0)).is_err());
    assert!(to_physical(&reference_params(), Quantity::Field(1.0)).is_err());
}

#[test]
fn f32_params() {
    let p = ModelParams::from_critical_field(0.5_f32, 0.49, 2e-5, 1e-5).unwrap();
    assert!((p.upper_limit() - 0.535_599_8).abs() < 1e-6);
    assert!((spin_contraction(&p).unwrap() - spin_contraction(&reference_params()).unwrap() as f32).abs() < 1e-5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn critical_field_identity(b_a in 1e-6..0.999_f64) {
        let b_c = critical_field(b_a).unwrap();
        prop_assert!(((1.0 + b_a).powi(2) - 1.0 - b_c * b_c).abs() < 1e-14);
        let p = ModelParams::new(b_a, 0.5 * b_c, 2e-5, 1e-3 * b_c).unwrap();
        prop_assert!((p.b_c() - b_c).abs() == 0.0);
    }

    #[test]
    fn energy_monotone(q1 in 0.0..PI * PI, q2 in 0.0..PI * PI) {
        let p = reference_params();
        let (lo, hi) = if q1 < q2 { (q1, q2) } else { (q2, q1) };
        let (e_lo, e_hi) = (magnon_energy(lo, &p).unwrap(), magnon_energy(hi, &p).unwrap());
        prop_assert!(e_lo >= 0.5);
        if hi > lo {
            prop_assert!(e_hi > e_lo);
        }
    }

    #[test]
    fn coefficient_unitarity(b_c in 0.05..1.7_f64, frac in 0.0..1.0_f64, g in 1e-7..1e-2_f64) {
        let p = ModelParams::from_critical_field(b_c, 0.5 * b_c, g, 1e-7).unwrap();
        let e = b_c + frac * (p.band_top() - b_c);
        let (u2, v2) = coeff_magnitudes(e, &p).unwrap();
        let want = 1.0 / (2.0 * PI * g);
        prop_assert!((u2 - v2 - want).abs() <= 1e-12 * want);
        prop_assert!(v2 >= 0.0);
    }

    #[test]
    fn midpoint_identity(k in 0i64..500, gap in 0i64..500, b in 0.3..0.499_f64) {
        let p = ModelParams::from_critical_field(0.5, b, 2e-5, 1e-7).unwrap();
        let g = QubitPairGeometry::new(k, k + gap, 100, &p).unwrap();
        let want = 0.5 - b - 2e-5 * (2 * k + gap) as f64 / 2.0;
        prop_assert!((g.midpoint_detuning(&p) - want).abs() < 1e-15);
    }
}
