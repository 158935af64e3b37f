use afm_register_cli::{run, selfcheck, CliResult, Format, RunConfig};
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "afmreg", version, about = "Antiferromagnet-mediated nuclear-spin register: sweeps and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Overrides,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Exact and asymptotic coupling over l − k.
    Coupling,
    /// One-qubit decoherence rate over τ.
    Decoherence,
    /// Pair rates and concurrence over τ.
    Concurrence,
    /// Rabi dynamics and AFR coupling shift over a frequency sweep.
    Afr,
    /// Oracle checks of the model invariants.
    Selfcheck,
}

#[derive(Args)]
struct Overrides {
    /// Config file, flat key = value or a JSON object.
    #[arg(long, global = true)]
    config: Option<String>,
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[arg(long = "b-c2", global = true)]
    b_c2: Option<f64>,
    #[arg(long, global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    g: Option<f64>,
    #[arg(long, global = true)]
    s: Option<f64>,
    #[arg(long, global = true)]
    period: Option<u32>,
    #[arg(long, global = true)]
    a2: Option<f64>,
    /// ω_E in rad/s.
    #[arg(long = "omega-e", global = true)]
    omega_e: Option<f64>,
    /// B_E in tesla.
    #[arg(long = "exchange-field", global = true)]
    exchange_field: Option<f64>,
    #[arg(long = "delta-bk", global = true, value_delimiter = ',', allow_hyphen_values = true)]
    delta_bk: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',')]
    separation: Option<Vec<u32>>,
    #[arg(long = "sep-start", global = true)]
    sep_start: Option<u32>,
    #[arg(long = "sep-stop", global = true)]
    sep_stop: Option<u32>,
    #[arg(long = "b-perp", global = true)]
    b_perp: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    omega: Option<f64>,
    #[arg(long = "omega-start", global = true, allow_hyphen_values = true)]
    omega_start: Option<f64>,
    #[arg(long = "omega-stop", global = true)]
    omega_stop: Option<f64>,
    #[arg(long = "omega-points", global = true)]
    omega_points: Option<usize>,
    #[arg(long = "tau-start", global = true)]
    tau_start: Option<f64>,
    #[arg(long = "tau-stop", global = true)]
    tau_stop: Option<f64>,
    #[arg(long = "tau-points", global = true)]
    tau_points: Option<usize>,
    /// Log (true) or linear (false) τ spacing.
    #[arg(long = "tau-log", global = true)]
    tau_log: Option<bool>,
    /// Add physical-unit columns (needs --omega-e).
    #[arg(long, global = true)]
    physical: bool,
}

macro_rules! apply {
    ($cfg:ident, $o:ident; $($f:ident),*) => {
        $( if let Some(v) = $o.$f.clone() { $cfg.$f = v; } )*
    };
}

macro_rules! apply_opt {
    ($cfg:ident, $o:ident; $($f:ident),*) => {
        $( if $o.$f.is_some() { $cfg.$f = $o.$f.clone(); } )*
    };
}

fn resolve(o: &Overrides) -> CliResult<RunConfig> {
    let mut cfg = match &o.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::default(),
    };
    apply!(cfg, o; format, jobs, b_c2, g, s, period, a2, sep_start, sep_stop, omega_points, tau_start, tau_stop, tau_points, tau_log);
    apply_opt!(cfg, o; out, b, omega_e, exchange_field, delta_bk, separation, b_perp, omega, omega_start, omega_stop);
    cfg.physical |= o.physical;
    Ok(cfg)
}

fn emit(text: &str, out: Option<&str>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: &Cli) -> CliResult<bool> {
    let cfg = resolve(&cli.opts)?;
    let name = match cli.command {
        Command::Coupling => "coupling",
        Command::Decoherence => "decoherence",
        Command::Concurrence => "concurrence",
        Command::Afr => "afr",
        Command::Selfcheck => {
            let checks = selfcheck(&cfg)?;
            let mut text = String::new();
            for c in &checks {
                text.push_str(&format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail));
            }
            emit(&text, cfg.out.as_deref())?;
            return Ok(checks.iter().all(|c| c.pass));
        }
    };
    log::info!("running {name} with {}", cfg.resolved_json());
    let table = run(name, &cfg)?;
    emit(&table.render(cfg.format, &cfg.resolved_json()), cfg.out.as_deref())?;
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("afmreg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
