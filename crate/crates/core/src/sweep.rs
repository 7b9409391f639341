//! Grid sweeps over planes of the qutrit rate space, written as CSV.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::capacity::{capacity, Quantity};
use crate::channel::RateVector3;
use crate::degradability::{classify, TriVerdict};

pub const CSV_HEADER: &str = "g1,g2,g3,quantity,value_lo,value_hi,status,method";
pub const NON_CPTP: &str = "non-CPTP";
pub const CLASSIFIED: &str = "Classified";
pub const DEFAULT_STEP: f64 = 0.01;

/// A two-dimensional slice of the rate space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Plane {
    /// One rate held fixed; `coord` is 0, 1 or 2 for g1, g2, g3.
    Fixed { coord: usize, value: f64 },
    /// `g2 + g3 = 1`.
    SumOne,
}

impl FromStr for Plane {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact.to_ascii_lowercase();
        if compact == "g2+g3=1" || compact == "g3+g2=1" {
            return Ok(Plane::SumOne);
        }
        let (lhs, rhs) = compact
            .split_once('=')
            .ok_or_else(|| format!("plane `{s}` must look like g2=0 or g2+g3=1"))?;
        let coord = match lhs {
            "g1" => 0,
            "g2" => 1,
            "g3" => 2,
            _ => return Err(format!("unknown coordinate `{lhs}` in plane `{s}`")),
        };
        let value: f64 = rhs
            .parse()
            .map_err(|_| format!("plane value `{rhs}` is not a number"))?;
        if !(0.0..=1.0).contains(&value) {
            return Err(format!("plane value {value} is outside [0, 1]"));
        }
        Ok(Plane::Fixed { coord, value })
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Plane::Fixed { coord, value } => write!(f, "g{}={}", coord + 1, value),
            Plane::SumOne => write!(f, "g2+g3=1"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepQuantity {
    Capacity(Quantity),
    Classify,
}

impl SweepQuantity {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepQuantity::Capacity(q) => q.as_str(),
            SweepQuantity::Classify => "classify",
        }
    }
}

impl FromStr for SweepQuantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "q" => Ok(SweepQuantity::Capacity(Quantity::Q)),
            "cp" => Ok(SweepQuantity::Capacity(Quantity::Cp)),
            "qe" => Ok(SweepQuantity::Capacity(Quantity::Qe)),
            "classify" => Ok(SweepQuantity::Classify),
            other => Err(format!("unknown quantity `{other}` (expected q, cp, qe or classify)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub plane: Plane,
    pub step: f64,
    pub quantities: Vec<SweepQuantity>,
    pub tol: f64,
}

impl SweepConfig {
    pub fn new(plane: Plane, step: f64, quantities: Vec<SweepQuantity>, tol: f64) -> Result<Self, String> {
        if !(step > 0.0 && step <= 0.5) {
            return Err(format!("step {step} must lie in (0, 0.5]"));
        }
        if quantities.is_empty() {
            return Err("at least one quantity is required".into());
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(format!("tolerance {tol} must be positive"));
        }
        Ok(Self {
            plane,
            step,
            quantities,
            tol,
        })
    }
}

/// One output row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub g: [f64; 3],
    pub quantity: SweepQuantity,
    pub value_lo: Option<f64>,
    pub value_hi: Option<f64>,
    pub status: String,
    pub method: String,
}

impl SweepRecord {
    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(format_g9).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            format_g9(self.g[0]),
            format_g9(self.g[1]),
            format_g9(self.g[2]),
            self.quantity.as_str(),
            opt(self.value_lo),
            opt(self.value_hi),
            self.status,
            self.method
        )
    }
}

/// `%.9g`-style formatting: nine significant digits, trailing zeros
/// removed, exponent form outside `[1e-5, 1e9)`. Non-finite input is a bug.
pub fn format_g9(x: f64) -> String {
    assert!(x.is_finite(), "refusing to serialize non-finite value {x}");
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let m = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn axis(step: f64) -> Vec<f64> {
    let n = (1.0 / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|k| ((k as f64 * step) * 1e12).round() / 1e12)
        .collect()
}

/// Grid points of a plane in lexicographic `(g1, g2, g3)` order, including
/// points outside the CPTP region.
pub fn grid_points(plane: Plane, step: f64) -> Vec<[f64; 3]> {
    let ax = axis(step);
    let mut out = Vec::with_capacity(ax.len() * ax.len());
    match plane {
        Plane::Fixed { coord, value } => {
            let free: Vec<usize> = (0..3).filter(|&k| k != coord).collect();
            for &a in &ax {
                for &b in &ax {
                    let mut g = [0.0; 3];
                    g[coord] = value;
                    g[free[0]] = a;
                    g[free[1]] = b;
                    out.push(g);
                }
            }
        }
        Plane::SumOne => {
            for &g1 in &ax {
                for &g2 in &ax {
                    let g3 = ((1.0 - g2) * 1e12).round() / 1e12;
                    out.push([g1, g2, g3]);
                }
            }
        }
    }
    out
}

pub fn evaluate_point(g: [f64; 3], quantity: SweepQuantity, tol: f64) -> SweepRecord {
    let rates = match RateVector3::new(g[0], g[1], g[2]) {
        Ok(r) => r,
        Err(_) => {
            return SweepRecord {
                g,
                quantity,
                value_lo: None,
                value_hi: None,
                status: NON_CPTP.into(),
                method: String::new(),
            }
        }
    };
    match quantity {
        SweepQuantity::Capacity(q) => {
            let est = capacity(&rates, q);
            SweepRecord {
                g,
                quantity,
                value_lo: Some(est.lower),
                value_hi: est.upper,
                status: est.status.as_str().into(),
                method: est.method.tag().into(),
            }
        }
        SweepQuantity::Classify => {
            let r = classify(&rates, tol);
            let flag = |b: bool| if b { 1.0 } else { 0.0 };
            SweepRecord {
                g,
                quantity,
                value_lo: Some(flag(r.degradable.is_yes())),
                value_hi: match r.antidegradable {
                    TriVerdict::Yes => Some(1.0),
                    TriVerdict::No => Some(0.0),
                    TriVerdict::Unknown => None,
                },
                status: CLASSIFIED.into(),
                method: "classify".into(),
            }
        }
    }
}

/// Worker count from `MADCAP_WORKERS`, defaulting to the available cores.
pub fn worker_count() -> usize {
    std::env::var("MADCAP_WORKERS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Evaluates every grid point and quantity in a bounded pool; the result is
/// in grid order whatever the completion order.
pub fn run_sweep(cfg: &SweepConfig) -> Vec<SweepRecord> {
    let jobs: Vec<([f64; 3], SweepQuantity)> = grid_points(cfg.plane, cfg.step)
        .into_iter()
        .flat_map(|g| cfg.quantities.iter().map(move |&q| (g, q)))
        .collect();
    let tol = cfg.tol;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .expect("thread pool");
    pool.install(|| {
        jobs.par_iter()
            .map(|&(g, q)| evaluate_point(g, q, tol))
            .collect()
    })
}

pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut s = String::with_capacity(64 * (records.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&r.to_csv_row());
        s.push('\n');
    }
    s
}
