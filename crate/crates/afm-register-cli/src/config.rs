//! Run configuration: defaults, key=value or JSON ingestion, validation.

use crate::error::{CliError, CliResult};
use afm_register::ModelParams64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Everything a command needs. Unset optional fields fall back to per-command defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub b_c2: f64,
    /// Applied field; b_C − 0.01 when unset.
    pub b: Option<f64>,
    pub g: f64,
    pub s: f64,
    /// Chain period L.
    pub period: u32,
    /// Hyperfine constant squared, a².
    pub a2: f64,
    /// ω_E in rad/s, needed for physical units.
    pub omega_e: Option<f64>,
    /// B_E in tesla.
    pub exchange_field: Option<f64>,

    pub delta_bk: Option<Vec<f64>>,
    /// Explicit l − k values; overrides `sep_start..=sep_stop`.
    pub separation: Option<Vec<u32>>,
    pub sep_start: u32,
    pub sep_stop: u32,

    pub b_perp: Option<f64>,
    pub omega: Option<f64>,
    pub omega_start: Option<f64>,
    pub omega_stop: Option<f64>,
    pub omega_points: usize,

    pub tau_start: f64,
    pub tau_stop: f64,
    pub tau_points: usize,
    pub tau_log: bool,

    pub physical: bool,
    pub format: Format,
    #[serde(skip_serializing)]
    pub jobs: usize,
    #[serde(skip_serializing)]
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            b_c2: 0.25,
            b: None,
            g: 2e-5,
            s: 1e-5,
            period: 100,
            a2: 1e-6,
            omega_e: None,
            exchange_field: None,
            delta_bk: None,
            separation: None,
            sep_start: 1,
            sep_stop: 400,
            b_perp: None,
            omega: None,
            omega_start: None,
            omega_stop: None,
            omega_points: 41,
            tau_start: 1e2,
            tau_stop: 1e7,
            tau_points: 50,
            tau_log: true,
            physical: false,
            format: Format::Csv,
            jobs: 0,
            out: None,
        }
    }
}

fn parse_scalar(raw: &str) -> Value {
    let raw = raw.trim();
    if let Ok(v) = serde_json::from_str::<Value>(raw) {
        return v;
    }
    if raw.contains(',') {
        let items: Vec<Value> = raw.split(',').map(parse_scalar).collect();
        return Value::Array(items);
    }
    Value::String(raw.trim_matches('"').to_string())
}

fn overlay(base: &Map<String, Value>, key: &str, value: Value) -> CliResult<Map<String, Value>> {
    let attempt = |v: Value| {
        let mut map = base.clone();
        map.insert(key.to_string(), v);
        serde_json::from_value::<RunConfig>(Value::Object(map.clone())).map(|_| map)
    };
    match attempt(value.clone()) {
        Ok(map) => Ok(map),
        // A lone number is accepted where a list is expected.
        Err(e) if !value.is_array() => attempt(Value::Array(vec![value]))
            .map_err(|_| CliError::config(format!("field `{key}`: {e}"))),
        Err(e) => Err(CliError::config(format!("field `{key}`: {e}"))),
    }
}

fn defaults_map() -> Map<String, Value> {
    match serde_json::to_value(RunConfig::default()) {
        Ok(Value::Object(m)) => m,
        _ => Map::new(),
    }
}

impl RunConfig {
    /// Parses flat `key = value` text or a single JSON object.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut map = defaults_map();
        if text.trim_start().starts_with('{') {
            let obj: Map<String, Value> = serde_json::from_str(text)
                .map_err(|e| CliError::config(format!("line {}, column {}: {e}", e.line(), e.column())))?;
            for (k, v) in obj {
                map = overlay(&map, &k.replace('-', "_"), v)?;
            }
        } else {
            for (n, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| CliError::config(format!("line {}: expected key = value", n + 1)))?;
                let key = k.trim().replace('-', "_");
                map = overlay(&map, &key, parse_scalar(v))
                    .map_err(|e| CliError::config(format!("line {}: {}", n + 1, e.to_string().trim_start_matches("config error: "))))?;
            }
        }
        serde_json::from_value(Value::Object(map)).map_err(|e| CliError::config(e.to_string()))
    }

    pub fn from_path(path: &str) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::config(format!("{path}: {e}")))?;
        Self::parse(&text)
    }

    pub fn b_c(&self) -> f64 {
        self.b_c2.sqrt()
    }

    pub fn model(&self) -> CliResult<ModelParams64> {
        if !(self.b_c2 > 0.0) {
            return Err(CliError::config(format!("field `b_c2`: {} must be positive", self.b_c2)));
        }
        if !(self.a2 > 0.0) {
            return Err(CliError::config(format!("field `a2`: {} must be positive", self.a2)));
        }
        let b_c = self.b_c();
        let b = self.b.unwrap_or(b_c - 0.01);
        let build = || -> afm_register::Result<ModelParams64> {
            let mut p = ModelParams64::from_critical_field(b_c, b, self.g, self.s)?.with_hyperfine(self.a2.sqrt())?;
            if let Some(w) = self.omega_e {
                p = p.with_omega_e(w)?;
            }
            if let Some(be) = self.exchange_field {
                p = p.with_exchange_field(be)?;
            }
            Ok(p)
        };
        build().map_err(|e| CliError::config(e.to_string()))
    }

    pub fn deltas_or(&self, default: &[f64]) -> Vec<f64> {
        self.delta_bk.clone().unwrap_or_else(|| default.to_vec())
    }

    pub fn separations_or(&self, default: Option<&[u32]>) -> CliResult<Vec<u32>> {
        if let Some(list) = &self.separation {
            return Ok(list.clone());
        }
        if let Some(d) = default {
            return Ok(d.to_vec());
        }
        if self.sep_stop < self.sep_start {
            return Err(CliError::config(format!(
                "field `sep_stop`: {} below sep_start {}",
                self.sep_stop, self.sep_start
            )));
        }
        Ok((self.sep_start..=self.sep_stop).collect())
    }

    /// τ grid, log- or linearly spaced, strictly increasing and positive.
    pub fn tau_grid(&self) -> CliResult<Vec<f64>> {
        let (a, b, n) = (self.tau_start, self.tau_stop, self.tau_points);
        if n == 0 {
            return Err(CliError::config("field `tau_points`: must be at least 1"));
        }
        if !(a > 0.0) || !(b >= a) || !b.is_finite() {
            return Err(CliError::config(format!("fields `tau_start`/`tau_stop`: need 0 < {a} ≤ {b}")));
        }
        if n == 1 {
            return Ok(vec![a]);
        }
        let last = (n - 1) as f64;
        let grid: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 / last;
                if self.tau_log {
                    a * (b / a).powf(t)
                } else {
                    a + (b - a) * t
                }
            })
            .collect();
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(CliError::config("tau grid is not strictly increasing"));
        }
        Ok(grid)
    }

    /// Resolved parameters as one JSON line, for the CSV header.
    pub fn resolved_json(&self) -> String {
        let mut full = self.clone();
        full.b = Some(self.b.unwrap_or(self.b_c() - 0.01));
        serde_json::to_string(&full).unwrap_or_default()
    }
}
