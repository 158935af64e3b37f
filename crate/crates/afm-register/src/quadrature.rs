//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature with
//! peak- and oscillation-aware initial subdivision.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Positive Gauss–Legendre 10-point nodes.
pub const GAUSS10_NODES: [f64; 5] = [
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.148_874_338_981_631_210_884_826_001_129_720,
];

/// Gauss–Legendre 10-point weights matching [`GAUSS10_NODES`].
pub const GAUSS10_WEIGHTS: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Kronrod 21-point abscissae (non-negative half, centre last).
pub const KRONROD21_NODES: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

/// Kronrod 21-point weights matching [`KRONROD21_NODES`].
pub const KRONROD21_WEIGHTS: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_056_050,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Default subdivision cap.
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 20_000;

const PEAK_OFFSETS: [f64; 10] = [0.0, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1e3, 3e3, 1e4];
const MAX_OSCILLATION_PANELS: usize = 4_000_000;

/// Structural hints that guide the initial subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KernelSpec<T> {
    /// Centre of a Lorentzian-like peak.
    pub peak_location: Option<T>,
    /// Half-width of the peak.
    pub peak_width: Option<T>,
    /// Angular rate of oscillation in the integration variable.
    pub oscillation_rate: Option<T>,
}

impl<T: Real> KernelSpec<T> {
    pub fn new() -> Self {
        Self {
            peak_location: None,
            peak_width: None,
            oscillation_rate: None,
        }
    }

    pub fn with_peak(mut self, location: T, width: T) -> Self {
        self.peak_location = Some(location);
        self.peak_width = Some(width);
        self
    }

    pub fn with_oscillation(mut self, rate: T) -> Self {
        self.oscillation_rate = Some(rate);
        self
    }

    /// Number of oscillation panels this hint produces on `[a, b]`.
    pub fn oscillation_panels(&self, a: T, b: T) -> usize {
        match self.oscillation_rate {
            Some(rate) if rate > T::zero() => {
                let n = ((b - a) * rate / T::PI()).ceil().to_usize().unwrap_or(usize::MAX);
                n.min(MAX_OSCILLATION_PANELS)
            }
            _ => 1,
        }
    }
}

/// Tolerance and subdivision budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig<T> {
    pub tol: T,
    pub max_subdivisions: usize,
}

impl<T: Real> Default for QuadConfig<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-9).max(T::epsilon() * T::lit(100.0)),
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        }
    }
}

impl<T: Real> QuadConfig<T> {
    /// Raises the subdivision cap to accommodate `panels` initial panels.
    pub fn for_panels(mut self, panels: usize) -> Self {
        self.max_subdivisions = self.max_subdivisions.max(DEFAULT_MAX_SUBDIVISIONS + 4 * panels);
        self
    }
}

/// Outcome of a successful integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationResult<T> {
    pub value: T,
    pub abs_error_estimate: T,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for Segment<T> {}

impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

fn rescale_error<T: Real>(err: T, resabs: T, resasc: T) -> T {
    let mut err = err.abs();
    if resasc != T::zero() && err != T::zero() {
        let ratio = (T::lit(200.0) * err / resasc).powf(T::lit(1.5));
        err = resasc * ratio.min(T::one());
    }
    let floor = T::lit(50.0) * T::epsilon() * resabs;
    if resabs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) && floor > err {
        err = floor;
    }
    err
}

fn sample<T: Real, F: Fn(T) -> T>(f: &F, x: T) -> Result<T> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Integrand { at: x.as_f64() })
    }
}

/// One 21-point Kronrod evaluation on `[a, b]` with embedded Gauss error.
fn kronrod21<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Result<Segment<T>> {
    let half = (b - a) / T::lit(2.0);
    let centre = a + half;
    let fc = sample(f, centre)?;
    let mut resg = T::zero();
    let mut resk = T::lit(KRONROD21_WEIGHTS[10]) * fc;
    let mut resabs = resk.abs();
    let mut pairs = [(T::zero(), T::zero()); 10];
    for (j, pair) in pairs.iter_mut().enumerate() {
        let dx = half * T::lit(KRONROD21_NODES[j]);
        let f1 = sample(f, centre - dx)?;
        let f2 = sample(f, centre + dx)?;
        let w = T::lit(KRONROD21_WEIGHTS[j]);
        resk = resk + w * (f1 + f2);
        resabs = resabs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg = resg + T::lit(GAUSS10_WEIGHTS[j / 2]) * (f1 + f2);
        }
        *pair = (f1, f2);
    }
    let mean = resk / T::lit(2.0);
    let mut resasc = T::lit(KRONROD21_WEIGHTS[10]) * (fc - mean).abs();
    for (j, (f1, f2)) in pairs.iter().enumerate() {
        resasc = resasc + T::lit(KRONROD21_WEIGHTS[j]) * ((*f1 - mean).abs() + (*f2 - mean).abs());
    }
    let scale = half.abs();
    let error = rescale_error((resk - resg) * half, resabs * scale, resasc * scale);
    Ok(Segment {
        a,
        b,
        value: resk * half,
        error,
    })
}

/// Initial breakpoints on `[a, b]` derived from the hint, including both ends.
pub fn initial_breakpoints<T: Real>(a: T, b: T, hint: &KernelSpec<T>) -> Vec<T> {
    let mut pts = vec![a, b];
    if let (Some(loc), Some(width)) = (hint.peak_location, hint.peak_width) {
        for off in PEAK_OFFSETS {
            let d = width * T::lit(off);
            pts.push(loc - d);
            pts.push(loc + d);
        }
    }
    let panels = hint.oscillation_panels(a, b);
    if panels > 1 {
        let step = (b - a) / T::lit(panels as f64);
        for j in 1..panels {
            pts.push(a + step * T::lit(j as f64));
        }
    }
    let min_gap = (b - a) * T::lit(1e-13);
    pts.retain(|p| p.is_finite() && *p >= a && *p <= b);
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    let mut out: Vec<T> = Vec::with_capacity(pts.len());
    for p in pts {
        match out.last() {
            Some(last) if p - *last <= min_gap => {}
            _ => out.push(p),
        }
    }
    if let Some(last) = out.last_mut() {
        *last = b;
    }
    out
}

/// Integrates `f` over `[a, b]` to `max(tol, tol·|value|)` with the default cap.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    tol: T,
    hint: &KernelSpec<T>,
) -> Result<IntegrationResult<T>> {
    let cfg = QuadConfig {
        tol,
        ..QuadConfig::default()
    };
    integrate_with(f, a, b, &cfg, hint)
}

/// Integrates `f` over `[a, b]` under an explicit configuration.
pub fn integrate_with<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    cfg: &QuadConfig<T>,
    hint: &KernelSpec<T>,
) -> Result<IntegrationResult<T>> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::domain("integrate", format!("invalid interval [{a}, {b}]")));
    }
    if !(cfg.tol > T::zero()) {
        return Err(Error::domain("integrate", format!("tolerance {} must be positive", cfg.tol)));
    }
    if let (Some(_), Some(w)) = (hint.peak_location, hint.peak_width) {
        if !(w > T::zero()) {
            return Err(Error::domain("integrate", format!("peak width {w} must be positive")));
        }
    }

    let pts = initial_breakpoints(a, b, hint);
    let mut heap = BinaryHeap::with_capacity(pts.len() * 2);
    let mut value = T::zero();
    let mut error = T::zero();
    for w in pts.windows(2) {
        let seg = kronrod21(&f, w[0], w[1])?;
        value = value + seg.value;
        error = error + seg.error;
        heap.push(seg);
    }
    let mut frozen: Vec<Segment<T>> = Vec::new();
    let min_width = T::epsilon() * T::lit(64.0) * a.abs().max(b.abs()).max(T::min_positive_value());

    loop {
        let target = cfg.tol.max(cfg.tol * value.abs());
        if error <= target {
            let (v, e) = exact_totals(&heap, &frozen);
            value = v;
            error = e;
            if error <= cfg.tol.max(cfg.tol * value.abs()) {
                return Ok(IntegrationResult {
                    value,
                    abs_error_estimate: error,
                    subdivisions: heap.len() + frozen.len(),
                });
            }
        }
        let count = heap.len() + frozen.len();
        let worst = match heap.pop() {
            Some(seg) if count < cfg.max_subdivisions => seg,
            other => {
                if let Some(seg) = other {
                    heap.push(seg);
                }
                let (v, e) = exact_totals(&heap, &frozen);
                return Err(Error::Convergence {
                    estimate: v.as_f64(),
                    abs_error: e.as_f64(),
                    subdivisions: count,
                });
            }
        };
        let mid = worst.a + (worst.b - worst.a) / T::lit(2.0);
        if worst.b - worst.a <= min_width || mid <= worst.a || mid >= worst.b {
            frozen.push(worst);
            continue;
        }
        let left = kronrod21(&f, worst.a, mid)?;
        let right = kronrod21(&f, mid, worst.b)?;
        value = value - worst.value + left.value + right.value;
        error = error - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
    }
}

fn exact_totals<T: Real>(heap: &BinaryHeap<Segment<T>>, frozen: &[Segment<T>]) -> (T, T) {
    let mut segs: Vec<&Segment<T>> = heap.iter().chain(frozen.iter()).collect();
    segs.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(Ordering::Equal));
    segs.iter().fold((T::zero(), T::zero()), |(v, e), s| (v + s.value, e + s.error))
}
