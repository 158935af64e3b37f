//! Sweep commands and the self-check suite.

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};
use afm_register::afr::{afr_coupling_shift, coupling_strength_sq, tuning_frequencies, DriveParams, Rabi};
use afm_register::coupling::{coupling_asymptotic, coupling_exact, self_energy};
use afm_register::decoherence::{
    decoherence_rate_closed, decoherence_rate_explicit, decoherence_rate_numeric, decoherence_time, rate_limit_exact,
};
use afm_register::entanglement::{concurrence, concurrence_from_rates, correlation_rate, pair_rate_asymptote, pair_rate_parts};
use afm_register::model::{coeff_magnitudes, critical_field, turning_point_params};
use afm_register::{Error, QubitPairGeometry, Regime};
use rayon::prelude::*;

/// Maps `f` over `items` on a pool of `jobs` threads (0 = all cores); output keeps input order.
pub fn par_map<I, R, F>(jobs: usize, items: &[I], f: F) -> CliResult<Vec<R>>
where
    I: Sync,
    R: Send,
    F: Fn(&I) -> CliResult<R> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::config(format!("thread pool: {e}")))?;
    pool.install(|| items.par_iter().map(&f).collect())
}

fn geometry(delta: f64, sep: u32, cfg: &RunConfig) -> QubitPairGeometry<f64> {
    QubitPairGeometry::with_detuning(delta, sep).with_period(cfg.period)
}

/// V_exact against the matching asymptotic form over l − k.
pub fn cmd_coupling(cfg: &RunConfig) -> CliResult<Table> {
    let p = cfg.model()?;
    let deltas = cfg.deltas_or(&[1e-3, 3e-3]);
    let seps = cfg.separations_or(None)?;
    if seps.iter().all(|r| *r == 0) {
        let mut t = Table::new(vec!["delta_bk", "l_minus_k", "self_energy"]);
        for d in deltas {
            t.rows.push(vec![d.into(), 0u32.into(), self_energy(d, &p)?.into()]);
        }
        return Ok(t);
    }
    let grid: Vec<(f64, u32)> = deltas.iter().flat_map(|d| seps.iter().map(move |r| (*d, *r))).collect();
    let rows = par_map(cfg.jobs, &grid, |&(d, r)| {
        let g = geometry(d, r, cfg);
        let (mu_sq, regime) = turning_point_params(&g, &p);
        let exact = coupling_exact(&g, &p)?.value;
        let asym = if r == 0 {
            None
        } else {
            match coupling_asymptotic(&g, &p) {
                Ok(v) => Some(v.value),
                Err(Error::Regime(_)) => None,
                Err(e) => return Err(e.into()),
            }
        };
        Ok(vec![
            d.into(),
            r.into(),
            exact.into(),
            asym.into(),
            asym.map(|a| exact - a).into(),
            regime.to_string().into(),
            mu_sq.abs().sqrt().into(),
        ])
    })?;
    let mut t = Table::new(vec!["delta_bk", "l_minus_k", "V_exact", "V_asymptotic", "difference", "regime", "mu_or_nu"]);
    t.rows = rows;
    Ok(t)
}

/// R⊥(Δb_k, τ) by quadrature and closed form, with the τ → ∞ value.
pub fn cmd_decoherence(cfg: &RunConfig) -> CliResult<Table> {
    let p = cfg.model()?;
    if cfg.physical && p.omega_e().is_none() {
        return Err(CliError::config("field `omega_e`: required with --physical"));
    }
    let deltas = cfg.deltas_or(&[-3e-3, 1e-3, 3e-3]);
    let taus = cfg.tau_grid()?;
    let grid: Vec<(f64, f64)> = deltas.iter().flat_map(|d| taus.iter().map(move |t| (*d, *t))).collect();
    let rows = par_map(cfg.jobs, &grid, |&(d, tau)| {
        let numeric = decoherence_rate_numeric(d, tau, &p)?;
        let (closed, asym, t_d) = if d > 0.0 {
            let dt = decoherence_time(d, &p)?;
            (Some(decoherence_rate_closed(d, tau, &p)?), dt.rate, dt.t_d_seconds)
        } else {
            (None, rate_limit_exact(d, &p), None)
        };
        let mut row: Vec<Cell> = vec![d.into(), tau.into(), numeric.into(), closed.into(), asym.into()];
        if cfg.physical {
            row.push(t_d.into());
        }
        Ok(row)
    })?;
    let mut cols = vec!["delta_bk", "tau", "R_numeric", "R_closed", "asymptote"];
    if cfg.physical {
        cols.push("T_D_seconds");
    }
    let mut t = Table::new(cols);
    t.rows = rows;
    Ok(t)
}

/// Correlation rate, total pair rate and concurrence near the turning point.
pub fn cmd_concurrence(cfg: &RunConfig) -> CliResult<Table> {
    let p = cfg.model()?;
    let deltas = cfg.deltas_or(&[3e-3]);
    let seps = cfg.separations_or(Some(&[200, 299, 300, 301]))?;
    let taus = cfg.tau_grid()?;
    let mut t = Table::new(vec!["delta_bk", "l_minus_k", "tau", "R_corr", "R_sigma", "C", "asymptote"]);
    for d in &deltas {
        for r in &seps {
            let g = geometry(*d, *r, cfg);
            let parts = par_map(cfg.jobs, &taus, |&tau| Ok(pair_rate_parts(&g, tau, &p)?))?;
            let totals: Vec<f64> = parts.iter().map(|x| x.total()).collect();
            let series = concurrence_from_rates(&taus, &totals, &p)?;
            let asym = pair_rate_asymptote(&g, &p)?;
            for (i, tau) in taus.iter().enumerate() {
                t.rows.push(vec![
                    (*d).into(),
                    (*r).into(),
                    (*tau).into(),
                    parts[i].correlation.into(),
                    totals[i].into(),
                    series.concurrence[i].into(),
                    asym.into(),
                ]);
            }
        }
    }
    Ok(t)
}

/// Rabi frequency, contrast and the AFR-induced coupling change over a ω sweep.
pub fn cmd_afr(cfg: &RunConfig) -> CliResult<Table> {
    let p = cfg.model()?;
    let b_perp = cfg
        .b_perp
        .ok_or_else(|| CliError::config("field `b_perp`: the afr command needs a drive amplitude"))?;
    let probe = DriveParams::new(b_perp, p.gap()).map_err(|e| CliError::config(e.to_string()))?;
    let b_abs = coupling_strength_sq(&probe, &p).sqrt();
    let omegas: Vec<f64> = match cfg.omega {
        Some(w) => vec![w],
        None => {
            let lo = cfg.omega_start.unwrap_or(p.gap() - 5.0 * b_abs);
            let hi = cfg.omega_stop.unwrap_or(p.gap() + 5.0 * b_abs);
            let n = cfg.omega_points.max(1);
            if n == 1 {
                vec![lo]
            } else {
                (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
            }
        }
    };
    let deltas = cfg.deltas_or(&[3e-3]);
    let seps = cfg.separations_or(Some(&[50, 100, 150, 200]))?;
    let mut grid = Vec::new();
    for d in &deltas {
        for w in &omegas {
            for r in &seps {
                grid.push((*d, *w, *r));
            }
        }
    }
    let rows = par_map(cfg.jobs, &grid, |&(d, w, r)| {
        let drive = DriveParams::new(b_perp, w).map_err(|e| CliError::config(e.to_string()))?;
        let rabi = Rabi::from_drive(&drive, &p);
        let g = geometry(d, r, cfg);
        let shift = afr_coupling_shift(&g, &p, &drive)?;
        let (plus, minus) = match tuning_frequencies(&g, &p, &drive) {
            Some((a, b)) => (Some(a), Some(b)),
            None => (None, None),
        };
        Ok(vec![
            d.into(),
            w.into(),
            r.into(),
            rabi.frequency().into(),
            rabi.min_ground_probability().into(),
            shift.value.into(),
            shift.crosses_turning_point.into(),
            plus.into(),
            minus.into(),
        ])
    })?;
    let mut t = Table::new(vec![
        "delta_bk",
        "omega",
        "l_minus_k",
        "Omega",
        "min_ground_prob",
        "Delta_V",
        "crosses_turning_point",
        "omega_plus",
        "omega_minus",
    ]);
    t.rows = rows;
    Ok(t)
}

/// One self-check outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Fast oracle checks of the model invariants.
pub fn selfcheck(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let p = cfg.model()?;
    let mut out = Vec::new();

    let b_c = critical_field(3.3_f64 / 35.0)?;
    out.push(check("critical field FeCO3", (b_c * 35.0 - 15.5).abs() < 0.1, format!("B_C = {:.3} T", b_c * 35.0)));

    let mut worst: f64 = 0.0;
    for i in 0..=20 {
        let e = p.b_c() + (p.band_top() - p.b_c()) * i as f64 / 20.0;
        let (u2, v2) = coeff_magnitudes(e, &p)?;
        worst = worst.max(rel(u2 - v2, 1.0 / (2.0 * std::f64::consts::PI * p.g())));
    }
    out.push(check("unitarity u2 - v2", worst < 1e-12, format!("max rel {worst:.2e}")));

    let switch_at = |d: f64| {
        (1..2000u32).find(|r| turning_point_params(&QubitPairGeometry::with_detuning(d, *r), &p).1 != Regime::Gapped)
    };
    let expect = |d: f64| (2.0 * d / p.g()).round() as u32;
    let ok = [1e-3, 3e-3].iter().all(|d| switch_at(*d) == Some(expect(*d)));
    out.push(check("turning point location", ok, format!("{:?} {:?}", switch_at(1e-3), switch_at(3e-3))));

    let tight = p.with_damping(1e-8)?;
    let d = 3e-3;
    let exact = coupling_exact(&QubitPairGeometry::with_detuning(d, 0), &tight)?.value;
    let closed = self_energy(d, &tight)?;
    out.push(check("self-energy closed form", rel(exact, closed) < 1e-5, format!("rel {:.2e}", rel(exact, closed))));

    let mut worst: f64 = 0.0;
    for tau in [1e2, 1e4, 1e6] {
        let n = decoherence_rate_numeric(d, tau, &p)?;
        worst = worst
            .max(rel(decoherence_rate_closed(d, tau, &p)?, n))
            .max(rel(decoherence_rate_explicit(d, tau, &p)?, n));
    }
    out.push(check("decoherence forms agree", worst < 1e-4, format!("max rel {worst:.2e}")));

    let drive = DriveParams::new(1e-3, p.gap())?;
    let b = coupling_strength_sq(&drive, &p).sqrt();
    let rabi = Rabi::from_drive(&drive, &p);
    let floor = rabi.ground_probability(std::f64::consts::PI / (2.0 * b));
    out.push(check("Rabi full contrast", floor < 1e-10, format!("|c0|^2 = {floor:.2e}")));

    let g0 = QubitPairGeometry::with_detuning(d, 0);
    let (a, single) = (correlation_rate(&g0, 1e3, &p)?, decoherence_rate_numeric(d, 1e3, &p)?);
    out.push(check("correlation degeneracy", rel(a, single) < 1e-9, format!("rel {:.2e}", rel(a, single))));

    let c0 = concurrence(&QubitPairGeometry::with_detuning(d, 200), 0.0, &p)?;
    out.push(check("C(0) = 1", c0 == 1.0, format!("{c0}")));
    Ok(out)
}

/// Runs a command by name.
pub fn run(command: &str, cfg: &RunConfig) -> CliResult<Table> {
    match command {
        "coupling" => cmd_coupling(cfg),
        "decoherence" => cmd_decoherence(cfg),
        "concurrence" => cmd_concurrence(cfg),
        "afr" => cmd_afr(cfg),
        other => Err(CliError::config(format!("unknown command `{other}`"))),
    }
}
