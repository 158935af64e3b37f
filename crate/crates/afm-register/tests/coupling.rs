use afm_register::coupling::*;
use afm_register::quadrature::{integrate_with, KernelSpec, QuadConfig};
use afm_register::specfun::{bessel_j0, bessel_k0};
use afm_register::{ModelParams, QubitPairGeometry, Regime};
use proptest::prelude::*;

const EULER: f64 = 0.577_215_664_901_532_9;

fn reference_params() -> ModelParams<f64> {
    ModelParams::from_critical_field(0.5, 0.49, 2e-5, 1e-5).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn self_energy_matches_exact_at_small_damping() {
    let p = reference_params().with_damping(1e-8).unwrap();
    for d in [1e-3, 3e-3, 1e-2] {
        let exact = coupling_exact(&QubitPairGeometry::with_detuning(d, 0), &p).unwrap().value;
        let closed = self_energy(d, &p).unwrap();
        assert!(rel(exact, closed) < 1e-5, "d={d}: {exact} vs {closed}");
    }
}

#[test]
fn self_energy_at_band_edge() {
    let p = reference_params();
    let u = p.upper_limit();
    let want = (p.prefactor() - u) * 2f64.ln() + u;
    assert!(rel(self_energy(u, &p).unwrap(), want) < 1e-15);
}

#[test]
fn exact_kernel_is_real_part_of_complex_lorentzian() {
    let p = reference_params();
    let g = QubitPairGeometry::with_detuning(3e-3, 150);
    let delta = g.midpoint_detuning(&p);
    let (c, s, b_c) = (p.prefactor(), p.s(), p.b_c());
    let f = |xi: f64| {
        let z = num_complex::Complex::new(xi + delta, s).inv();
        (c + xi) * z.re * bessel_j0(radial_wavenumber(xi, b_c) * 150.0).unwrap()
    };
    let hint = KernelSpec::new().with_oscillation((24.0 * b_c).sqrt() * 150.0);
    let cfg = QuadConfig::default().for_panels(hint.oscillation_panels(0.0, p.upper_limit()));
    let want = integrate_with(f, 0.0, p.upper_limit(), &cfg, &hint).unwrap().value;
    let got = coupling_exact(&g, &p).unwrap().value;
    assert!((got - want).abs() < 1e-8, "{got} vs {want}");
}

#[test]
fn depends_only_on_detuning_and_separation() {
    let p = reference_params();
    let a = QubitPairGeometry::new(10, 60, 100, &p).unwrap();
    let b = QubitPairGeometry::with_detuning(a.delta_b_k(), 50);
    let p2 = ModelParams::from_critical_field(0.5, 0.49 - 2e-5 * 7.0, 2e-5, 1e-5).unwrap();
    let c = QubitPairGeometry::new(17, 67, 100, &p2).unwrap();
    let va = coupling_exact(&a, &p).unwrap().value;
    let vb = coupling_exact(&b, &p).unwrap().value;
    let vc = coupling_exact(&c, &p2).unwrap().value;
    assert!((va - vb).abs() <= 1e-12 * va.abs());
    assert!((a.delta_b_k() - c.delta_b_k()).abs() < 1e-15);
    assert!((va - vc).abs() <= 1e-12 * va.abs().max(1.0), "{va} vs {vc}");
}

#[test]
fn gapped_decay_is_monotone_while_macdonald_dominates() {
    let p = reference_params();
    for d in [1e-3, 3e-3] {
        let v = |r: u32| coupling_exact(&QubitPairGeometry::with_detuning(d, r), &p).unwrap();
        let mac = |r: u32| coupling_macdonald(&QubitPairGeometry::with_detuning(d, r), &p).unwrap();
        for r in 1..(d / 2e-5) as u32 - 10 {
            let m = mac(r);
            if m.value > 0.05 {
                assert!(v(r).value > 0.0, "d={d} r={r}");
            }
            if m.argument > 1.0 && mac(r + 2).value > 0.05 && mac(r + 2).value < m.value {
                assert!(v(r + 2).value < v(r).value, "d={d} r={r}");
            }
        }
    }
}

#[test]
fn zone_edge_term_alternates_with_parity() {
    let p = reference_params();
    let residual = |r: u32| {
        let g = QubitPairGeometry::with_detuning(3e-3, r);
        coupling_exact(&g, &p).unwrap().value - coupling_macdonald(&g, &p).unwrap().value
    };
    for r in 30..50 {
        assert!(residual(r).signum() != residual(r + 1).signum(), "r={r}");
        assert!(residual(r).abs() < 3e-3);
    }
}

#[test]
fn oscillatory_regime_changes_sign() {
    let p = reference_params();
    let signs: Vec<bool> = (120..400)
        .map(|r| coupling_exact(&QubitPairGeometry::with_detuning(1e-3, r), &p).unwrap().value > 0.0)
        .collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    assert!(changes >= 3, "{changes}");
}

#[test]
fn coupling_curve_shape() {
    let p = reference_params();
    let v = |r: u32| coupling_exact(&QubitPairGeometry::with_detuning(1e-3, r), &p).unwrap();
    assert!(v(10).value > v(50).value && v(50).value > v(64).value);
    assert!(v(90).value > v(70).value, "rises toward the turning point as μ shrinks");
    assert!(v(100).perturbation_theory_unreliable);
    assert_eq!(v(100).regime, CouplingRegime::ExactQuadrature);
}

#[test]
fn zero_sequence_within_one_site() {
    let p = reference_params();
    let values: Vec<f64> = (1..=200)
        .map(|r| coupling_exact(&QubitPairGeometry::with_detuning(0.0, r), &p).unwrap().value)
        .collect();
    let crossings: Vec<f64> = values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].signum() != w[1].signum())
        .map(|(i, _)| i as f64 + 1.5)
        .collect();
    for n in 3..=6 {
        let want = predicted_zero_separation(n, &p).unwrap();
        let nearest = crossings.iter().map(|c| (c - want).abs()).fold(f64::INFINITY, f64::min);
        assert!(nearest <= 1.0, "n={n}: predicted {want}, crossings {crossings:?}");
    }
}

#[test]
fn macdonald_is_k0_and_far_field_close_at_two_and_a_half() {
    let p = reference_params();
    let mu = (24.0_f64 * 0.5 * (3e-3 - 1e-3)).sqrt();
    let g = QubitPairGeometry::with_detuning(3e-3, 100);
    let m = coupling_macdonald(&g, &p).unwrap();
    assert!(rel(m.value, 2.0 * p.prefactor() * bessel_k0(mu * 100.0).unwrap()) < 1e-14);
    assert!(rel(m.mu_or_nu, mu) < 1e-14);

    let p_ff = reference_params().with_gradient(0.0).unwrap();
    let mu_ff = 2.5 / 50.0;
    let d = mu_ff * mu_ff / 12.0;
    let g = QubitPairGeometry::with_detuning(d, 50);
    let k0 = coupling_macdonald(&g, &p_ff).unwrap();
    assert!((k0.argument - 2.5).abs() < 1e-12);
    let far = macdonald_far_field(&g, &p_ff).unwrap();
    assert!(rel(far, k0.value) < 0.05, "{far} vs {}", k0.value);
}

#[test]
fn log_limits_include_euler_constant() {
    let p = reference_params().with_gradient(0.0).unwrap();
    let mu = 0.01_f64 / 10.0;
    let g = QubitPairGeometry::with_detuning(mu * mu / 12.0, 10);
    let k0 = coupling_macdonald(&g, &p).unwrap().value;
    let log = coupling_log_gapped(&g, &p).unwrap().value;
    assert!(rel(log, k0) < 0.02);
    assert!(rel(log, 2.0 * p.prefactor() * ((200.0f64).ln() - EULER)) < 1e-12);

    let g = QubitPairGeometry::with_detuning(-mu * mu / 12.0, 10);
    let y0 = coupling_neumann(&g, &p).unwrap().value;
    let log = coupling_log_oscillatory(&g, &p).unwrap().value;
    assert!(rel(log, y0) < 0.02, "{log} vs {y0}");
}

#[test]
fn log_growth_near_vanishing_gap() {
    let mut prev = 0.0;
    for gap in [1e-3_f64, 1e-4, 1e-5, 1e-6] {
        let p = ModelParams::from_critical_field(0.5, 0.5 - gap, 0.0, 1e-9).unwrap();
        let g = QubitPairGeometry::with_detuning(gap, 3);
        let exact: f64 = coupling_exact(&g, &p).unwrap().value;
        let log = coupling_log_gapped(&g, &p).unwrap().value;
        assert!(exact > prev);
        prev = exact;
        if gap <= 1e-5 {
            assert!((exact - log).abs() < 0.2 * log.abs(), "gap={gap}: {exact} vs {log}");
        }
    }
}

#[test]
fn sine_asymptote_at_nu_r_ten() {
    let p = reference_params().with_gradient(0.0).unwrap();
    let nu = 10.0 / 40.0;
    let g = QubitPairGeometry::with_detuning(-nu * nu / 12.0, 40);
    let y0 = coupling_neumann(&g, &p).unwrap();
    assert!((y0.argument - 10.0).abs() < 1e-12);
    let sine = neumann_sine_asymptote(&g, &p).unwrap();
    let envelope = far_field_envelope(10.0, &p);
    assert!((sine - y0.value).abs() / envelope < 0.03);
    assert!(sine.signum() == y0.value.signum());
}

#[test]
fn zero_prediction_formula() {
    let p = reference_params();
    for n in 0..8 {
        let r = predicted_zero_separation(n, &p).unwrap();
        let phase = (24.0 * 0.5 * 2e-5 * r * r * r / 2.0).sqrt();
        assert!(rel(phase, (n as f64 + 0.25) * std::f64::consts::PI) < 1e-12);
    }
    assert!(predicted_zero_separation(3, &reference_params().with_gradient(0.0).unwrap()).is_err());
}

#[test]
fn dipole_envelope_maximum() {
    let at = dipole_envelope(2.5_f64);
    assert!(rel(at, 2.5f64.powf(2.5) * (-2.5f64).exp()) < 1e-15);
    assert!(dipole_envelope(2.49_f64) < at && dipole_envelope(2.51_f64) < at);
    assert!(rel(at, 0.78) < 0.05);
}

#[test]
fn dipole_constant_order_of_magnitude() {
    let p = reference_params().with_exchange_field(35.0).unwrap();
    let d = dipole_constant(&p, 1.0).unwrap();
    assert!(d > 1e-11 && d < 1e-9, "{d}");
    assert!(dipole_constant(&reference_params(), 1.0).is_err());
}

#[test]
fn dipole_ratio_vanishes_with_mu_at_fixed_argument() {
    let base = reference_params()
        .with_gradient(0.0)
        .unwrap()
        .with_damping(1e-9)
        .unwrap()
        .with_exchange_field(35.0)
        .unwrap();
    let ratio = |mu: f64| {
        let r = (2.5 / mu).round() as u32;
        let mu = 2.5 / r as f64;
        dipole_ratio(&QubitPairGeometry::with_detuning(mu * mu / 12.0, r), &base, 1.0).unwrap()
    };
    assert!(ratio(0.01) < ratio(0.1) && ratio(0.1) < ratio(0.5));
    assert!(rel(ratio(0.01) / ratio(0.1), 1e-3) < 1e-9);
}

#[test]
fn turning_point_flag_and_physical_units() {
    let p = reference_params();
    let g = QubitPairGeometry::with_detuning(1e-3, 100);
    let r = coupling_exact(&g, &p).unwrap();
    assert!(r.perturbation_theory_unreliable);
    assert_eq!(afm_register::model::turning_point_params(&g, &p).1, Regime::TurningPoint);
    assert!(coupling_asymptotic(&g, &p).is_err());
    let u = physical_coupling(r.value, &p);
    assert!(rel(u, r.value * 3e-6 / (2.0 * std::f64::consts::PI)) < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn regime_tag_matches_sign(d in -3e-3..5e-3_f64, r in 1u32..400) {
        let p = reference_params();
        let g = QubitPairGeometry::with_detuning(d, r);
        let mu_sq = 24.0 * 0.5 * g.midpoint_detuning(&p);
        if mu_sq > 0.0 {
            prop_assert_eq!(coupling_macdonald(&g, &p).unwrap().regime, CouplingRegime::Macdonald);
            prop_assert!(coupling_neumann(&g, &p).is_err());
        } else if mu_sq < 0.0 {
            prop_assert_eq!(coupling_neumann(&g, &p).unwrap().regime, CouplingRegime::Neumann);
            prop_assert!(coupling_macdonald(&g, &p).is_err());
        }
    }
}
