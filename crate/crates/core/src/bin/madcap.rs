//! Command-line front end: point queries, plane sweeps and figure data.
//!
//! Exit codes: 0 ok, 1 usage, 2 rates outside the CPTP region, 3 I/O.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use madcap::capacity::{capacity, Quantity, Status};
use madcap::channel::{validate_rates, RateVector3};
use madcap::degradability::{classify, CHOI_TOL};
use madcap::figures::{figure, FIGURE_IDS};
use madcap::sweep::{run_sweep, to_csv, Plane, SweepConfig, SweepQuantity, DEFAULT_STEP};

const EXIT_USAGE: u8 = 1;
const EXIT_NON_CPTP: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "madcap", version, about = "Capacities and degradability of qutrit amplitude damping channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report degradability and antidegradability as JSON.
    Classify {
        #[command(flatten)]
        rates: RateArgs,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Report Q, C_p or Q_E with its status and method as JSON.
    Capacity {
        #[command(flatten)]
        rates: RateArgs,
        #[arg(short = 'q', long = "q", value_parser = parse_quantity)]
        quantity: Option<Quantity>,
    },
    /// Evaluate a plane of rate vectors and write CSV.
    Sweep {
        /// e.g. g2=0, g1=1, g2+g3=1
        #[arg(long)]
        plane: Option<String>,
        #[arg(long)]
        step: Option<f64>,
        /// q, cp, qe or classify; repeat or separate by commas
        #[arg(short = 'q', long = "q", value_delimiter = ',')]
        quantities: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Write the CSV tables behind a figure (ids 2 to 10).
    Figure {
        id: u32,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RateArgs {
    #[arg(long, allow_negative_numbers = true)]
    g1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    g2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    g3: Option<f64>,
    /// JSON file with {"g1","g2","g3"} or {"d": 3, "rates": {"j,i": value}}
    #[arg(long)]
    config: Option<PathBuf>,
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    match s.parse::<SweepQuantity>()? {
        SweepQuantity::Capacity(q) => Ok(q),
        SweepQuantity::Classify => Err("use the classify subcommand".into()),
    }
}

/// Everything a config file may carry; flags override it.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    g1: Option<f64>,
    g2: Option<f64>,
    g3: Option<f64>,
    d: Option<usize>,
    rates: Option<BTreeMap<String, f64>>,
    q: Option<String>,
    quantities: Option<Vec<String>>,
    plane: Option<String>,
    step: Option<f64>,
    out: Option<PathBuf>,
    tol: Option<f64>,
}

enum Failure {
    Usage(String),
    NonCptp(String),
    Io(String),
}

type Outcome = Result<(), Failure>;

fn read_config(path: &Path) -> Result<FileConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))
}

/// Qutrit rates from a `{"d": 3, "rates": {"j,i": v}}` block.
fn rates_from_map(d: usize, map: &BTreeMap<String, f64>) -> Result<[Option<f64>; 3], Failure> {
    let mut entries = Vec::new();
    for (key, &value) in map {
        let (j, i) = key
            .split_once(',')
            .and_then(|(j, i)| Some((j.trim().parse().ok()?, i.trim().parse().ok()?)))
            .ok_or_else(|| Failure::Usage(format!("rate key `{key}` must look like \"j,i\"")))?;
        entries.push(((j, i), value));
    }
    validate_rates(d, &entries).map_err(|v| Failure::NonCptp(v.to_string()))?;
    if d != 3 {
        return Err(Failure::Usage(format!(
            "classification and capacities are available for d = 3 only (got d = {d})"
        )));
    }
    let mut g = [Some(0.0); 3];
    for ((j, i), v) in entries {
        let k = match (j, i) {
            (1, 0) => 0,
            (2, 1) => 1,
            _ => 2,
        };
        g[k] = Some(v);
    }
    Ok(g)
}

fn resolve_rates(args: &RateArgs) -> Result<RateVector3, Failure> {
    let cfg = match &args.config {
        Some(p) => read_config(p)?,
        None => FileConfig::default(),
    };
    let mut base = [cfg.g1, cfg.g2, cfg.g3];
    if let Some(map) = &cfg.rates {
        base = rates_from_map(cfg.d.unwrap_or(3), map)?;
    }
    let pick = |flag: Option<f64>, file: Option<f64>, name: &str| {
        flag.or(file)
            .ok_or_else(|| Failure::Usage(format!("missing --{name}")))
    };
    let g1 = pick(args.g1, base[0], "g1")?;
    let g2 = pick(args.g2, base[1], "g2")?;
    let g3 = pick(args.g3, base[2], "g3")?;
    RateVector3::new(g1, g2, g3).map_err(|e| Failure::NonCptp(e.to_string()))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_classify(rates: &RateArgs, tol: Option<f64>) -> Outcome {
    let g = resolve_rates(rates)?;
    let file_tol = match &rates.config {
        Some(p) => read_config(p)?.tol,
        None => None,
    };
    let tol = tol.or(file_tol).unwrap_or(CHOI_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Usage(format!("tolerance {tol} must be positive")));
    }
    let report = classify(&g, tol);
    print_json(&serde_json::to_value(&report).expect("serializable"));
    Ok(())
}

fn cmd_capacity(rates: &RateArgs, quantity: Option<Quantity>) -> Outcome {
    let g = resolve_rates(rates)?;
    let quantity = match quantity {
        Some(q) => q,
        None => {
            let from_file = match &rates.config {
                Some(p) => read_config(p)?.q,
                None => None,
            };
            match from_file {
                Some(s) => parse_quantity(&s).map_err(Failure::Usage)?,
                None => Quantity::Q,
            }
        }
    };
    let est = capacity(&g, quantity);
    let mut out = json!({
        "g": g.as_array(),
        "quantity": quantity.as_str(),
        "status": est.status.as_str(),
        "method": est.method.tag(),
        "argmax": est.argmax.map(|p| p.as_array()),
    });
    match est.status {
        Status::Interval => out["interval"] = json!([est.lower, est.upper]),
        _ => out["value"] = json!(est.lower),
    }
    if let Some(c) = &est.caveat {
        out["caveat"] = json!(c);
    }
    print_json(&out);
    Ok(())
}

fn cmd_sweep(
    plane: Option<String>,
    step: Option<f64>,
    quantities: Vec<String>,
    out: Option<PathBuf>,
    tol: Option<f64>,
    config: Option<PathBuf>,
) -> Outcome {
    let cfg = match &config {
        Some(p) => read_config(p)?,
        None => FileConfig::default(),
    };
    let plane_text = plane
        .or(cfg.plane)
        .ok_or_else(|| Failure::Usage("missing --plane".into()))?;
    let plane: Plane = plane_text.parse().map_err(Failure::Usage)?;
    let names = if !quantities.is_empty() {
        quantities
    } else if let Some(list) = cfg.quantities {
        list
    } else if let Some(q) = cfg.q {
        vec![q]
    } else {
        vec!["q".into()]
    };
    let quantities = names
        .iter()
        .map(|s| s.parse::<SweepQuantity>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::Usage)?;
    let sweep = SweepConfig::new(
        plane,
        step.or(cfg.step).unwrap_or(DEFAULT_STEP),
        quantities,
        tol.or(cfg.tol).unwrap_or(CHOI_TOL),
    )
    .map_err(Failure::Usage)?;
    let csv = to_csv(&run_sweep(&sweep));
    match out.or(cfg.out) {
        Some(path) => std::fs::write(&path, csv)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn cmd_figure(id: u32, out: &Path) -> Outcome {
    let tables = figure(id).ok_or_else(|| {
        Failure::Usage(format!("unknown figure id {id}; known ids: {FIGURE_IDS:?}"))
    })?;
    std::fs::create_dir_all(out)
        .map_err(|e| Failure::Io(format!("cannot create {}: {e}", out.display())))?;
    for t in tables {
        let path = out.join(t.file_name());
        std::fs::write(&path, t.to_csv())
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Classify { rates, tol } => cmd_classify(&rates, tol),
        Command::Capacity { rates, quantity } => cmd_capacity(&rates, quantity),
        Command::Sweep {
            plane,
            step,
            quantities,
            out,
            tol,
            config,
        } => cmd_sweep(plane, step, quantities, out, tol, config),
        Command::Figure { id, out } => cmd_figure(id, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::NonCptp(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NON_CPTP)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
