//! `magic-pareto`: reproducible CSV output for the magic/entanglement frontiers.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use magic_pareto::catalogs::{self, CatalogEntry};
use magic_pareto::experiments::clifford::{build_clifford_group, clifford_orbit};
use magic_pareto::experiments::{build_histogram_with, frontier_oracle, HistogramPlan, Mode, OracleConfig};
use magic_pareto::export::{fmt17, write_catalog, write_histogram, write_orbit, ORACLE_HEADER};
use magic_pareto::frontiers::{m2_max, m2_min, Branch};
use magic_pareto::measures::{concurrence, m2_direct, zero_pattern, ExpectationTable, ZERO_TOL};
use magic_pareto::params::{angles_to_state, WhartonAngles};
use magic_pareto::state::{PauliString, StateVector};
use magic_pareto::verify::{run_all, Scale};
use magic_pareto::C64;

const TOOL: &str = concat!("magic-pareto ", env!("CARGO_PKG_VERSION"));

#[derive(Parser)]
#[command(name = "magic-pareto", version, about = "Magic versus entanglement frontiers of two-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Concurrence, magic and the 16 Pauli expectations of one state.
    Measure {
        /// Amplitudes a,b,c,d of |00>,|01>,|10>,|11>, e.g. `0.5,0,0,0.5+0.5i`.
        #[arg(long, conflicts_with = "angles", required_unless_present = "angles", allow_hyphen_values = true)]
        state: Option<String>,
        /// Angles theta1,phi1,theta2,phi2,chi,gamma in radians.
        #[arg(long, allow_hyphen_values = true)]
        angles: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Frontier values at a concurrence.
    Frontier {
        #[arg(long)]
        delta: f64,
        /// Evaluate a single branch curve instead of both frontiers.
        #[arg(long)]
        branch: Option<Branch>,
        #[command(flatten)]
        output: Output,
    },
    /// Every extremal state of a branch at concurrence angle chi.
    Catalog {
        #[arg(long)]
        branch: Branch,
        #[arg(long)]
        chi: f64,
        #[command(flatten)]
        output: Output,
    },
    /// 2D histogram of (concurrence, magic) over Haar-random states.
    Sample {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        bins: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = magic_pareto::experiments::haar::DEFAULT_PARTITIONS)]
        partitions: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Brute-force extremal magic at fixed concurrence.
    Oracle {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = 24)]
        grid: usize,
        #[arg(long, default_value_t = 200)]
        iterations: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Clifford orbit of the first catalog state on a row.
    Orbit {
        #[arg(long)]
        branch: Branch,
        #[arg(long)]
        chi: f64,
        #[arg(long)]
        row: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run every acceptance check and report pass/fail.
    VerifyAll {
        /// Reduced sample counts.
        #[arg(long)]
        fast: bool,
    },
}

enum Failure {
    Domain(String),
    Verification(usize),
}

impl From<magic_pareto::Error> for Failure {
    fn from(e: magic_pareto::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("i/o: {e}"))
    }
}

fn open(output: &Output) -> Result<Box<dyn Write>, Failure> {
    Ok(match &output.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::Domain(format!("cannot create {}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn header(out: &mut dyn Write, command: &str, seed: Option<u64>, params: &[(&str, String)]) -> io::Result<()> {
    let seed = seed.map_or_else(|| "none".to_string(), |s| s.to_string());
    let params: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "# tool={TOOL} command={command} seed={seed} {}", params.join(" "))
}

fn parse_list<T: FromStr>(text: &str, len: usize, what: &str) -> Result<Vec<T>, Failure> {
    let items: Vec<&str> = text.split(',').map(str::trim).collect();
    if items.len() != len {
        return Err(Failure::Domain(format!("{what} needs {len} comma-separated values, got {}", items.len())));
    }
    items
        .iter()
        .map(|s| s.parse::<T>().map_err(|_| Failure::Domain(format!("cannot parse {s:?} in {what}"))))
        .collect()
}

fn measure(state: Option<String>, angles: Option<String>, output: Output) -> Result<(), Failure> {
    let (s, source) = match (state, angles) {
        (Some(text), _) => {
            let amps: Vec<C64> = parse_list(&text, 4, "--state")?;
            (StateVector::new(amps[0], amps[1], amps[2], amps[3])?, ("state", text))
        }
        (None, Some(text)) => {
            let a: Vec<f64> = parse_list(&text, 6, "--angles")?;
            (angles_to_state(&WhartonAngles::new(a[0], a[1], a[2], a[3], a[4], a[5])?), ("angles", text))
        }
        (None, None) => unreachable!("clap requires one of --state or --angles"),
    };
    let table = ExpectationTable::of_state(&s);
    let zeros: Vec<String> = zero_pattern(&table, ZERO_TOL).zeros().iter().map(ToString::to_string).collect();
    let mut out = open(&output)?;
    header(&mut *out, "measure", None, &[(source.0, format!("\"{}\"", source.1))])?;
    let names: Vec<String> = PauliString::ALL.iter().map(ToString::to_string).collect();
    writeln!(out, "delta,m2,zeros,{}", names.join(","))?;
    let values: Vec<String> = table.values.iter().map(|v| fmt17(*v)).collect();
    writeln!(out, "{},{},{},{}", fmt17(concurrence(&s)), fmt17(m2_direct(&s)), zeros.join("|"), values.join(","))?;
    out.flush()?;
    Ok(())
}

fn frontier(delta: f64, branch: Option<Branch>, output: Output) -> Result<(), Failure> {
    let mut out = open(&output)?;
    match branch {
        Some(b) => {
            let m2 = b.curve(delta)?;
            header(&mut *out, "frontier", None, &[("delta", fmt17(delta)), ("branch", b.to_string())])?;
            writeln!(out, "delta,branch,m2")?;
            writeln!(out, "{},{b},{}", fmt17(delta), fmt17(m2))?;
        }
        None => {
            let (hi, lo) = (m2_max(delta)?, m2_min(delta)?);
            header(&mut *out, "frontier", None, &[("delta", fmt17(delta))])?;
            writeln!(out, "delta,branch,m2_max,m2_min")?;
            writeln!(out, "{},{},{},{}", fmt17(delta), hi.branch, fmt17(hi.m2), fmt17(lo.m2))?;
        }
    }
    out.flush()?;
    Ok(())
}

fn catalog(branch: Branch, chi: f64, output: Output) -> Result<(), Failure> {
    let entries = catalogs::catalog(branch, chi)?;
    let mut out = open(&output)?;
    header(&mut *out, "catalog", None, &[("branch", branch.to_string()), ("chi", fmt17(chi))])?;
    write_catalog(&mut out, &entries)?;
    out.flush()?;
    Ok(())
}

fn sample(plan: HistogramPlan, output: Output) -> Result<(), Failure> {
    if plan.bins == 0 || plan.partitions == 0 {
        return Err(Failure::Domain("--bins and --partitions must be positive".into()));
    }
    let h = build_histogram_with(&plan);
    let mut out = open(&output)?;
    write_histogram(&mut out, &h, &TOOL.replace(' ', "-"))?;
    out.flush()?;
    Ok(())
}

fn oracle(delta: f64, cfg: OracleConfig, output: Output) -> Result<(), Failure> {
    let r = frontier_oracle(delta, &cfg)?;
    let analytic = match cfg.mode {
        Mode::Maximize => m2_max(delta)?.m2,
        Mode::Minimize => m2_min(delta)?.m2,
    };
    let mut out = open(&output)?;
    header(
        &mut *out,
        "oracle",
        None,
        &[
            ("delta", fmt17(delta)),
            ("mode", cfg.mode.to_string()),
            ("grid", cfg.coarse_grid_points_per_angle.to_string()),
            ("iterations", cfg.refine_iterations.to_string()),
            ("tolerance", fmt17(cfg.refine_tolerance)),
        ],
    )?;
    writeln!(out, "{ORACLE_HEADER}")?;
    writeln!(out, "{}", magic_pareto::export::oracle_row(&r, analytic))?;
    out.flush()?;
    Ok(())
}

/// Catalog entries of every branch that exists at one of the given concurrences.
fn catalogs_at(deltas: &[f64]) -> Vec<CatalogEntry> {
    let mut all = Vec::new();
    for d in deltas {
        for b in Branch::ALL {
            if let Ok(mut c) = catalogs::catalog(b, d.clamp(0.0, 1.0).asin()) {
                all.append(&mut c);
            }
        }
    }
    all
}

fn orbit(branch: Branch, chi: f64, row: usize, output: Output) -> Result<(), Failure> {
    let entries = catalogs::catalog(branch, chi)?;
    let seed = entries
        .iter()
        .find(|e| e.row == row)
        .ok_or_else(|| Failure::Domain(format!("branch {branch} has no row {row}")))?;
    let group = build_clifford_group()?;
    let states = clifford_orbit(&seed.state(), &group);
    let mut deltas: Vec<f64> = Vec::new();
    for s in &states {
        let d = concurrence(s);
        if !deltas.iter().any(|x| (x - d).abs() < 1e-9) {
            deltas.push(d);
        }
    }
    let known = catalogs_at(&deltas);
    let mut out = open(&output)?;
    header(
        &mut *out,
        "orbit",
        None,
        &[("branch", branch.to_string()), ("chi", fmt17(chi)), ("row", row.to_string()), ("size", states.len().to_string())],
    )?;
    write_orbit(&mut out, &states, &known)?;
    out.flush()?;
    Ok(())
}

fn verify_all(fast: bool) -> Result<(), Failure> {
    let scale = if fast { Scale::Fast } else { Scale::Full };
    let mut out = io::stdout().lock();
    header(&mut out, "verify-all", Some(magic_pareto::verify::SEED), &[("scale", if fast { "fast" } else { "full" }.into())])?;
    let outcomes = run_all(scale);
    for o in &outcomes {
        writeln!(out, "{o}")?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    writeln!(out, "{} of {} checks passed", outcomes.len() - failed, outcomes.len())?;
    out.flush()?;
    if failed > 0 {
        return Err(Failure::Verification(failed));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Measure { state, angles, output } => measure(state, angles, output),
        Command::Frontier { delta, branch, output } => frontier(delta, branch, output),
        Command::Catalog { branch, chi, output } => catalog(branch, chi, output),
        Command::Sample { n, bins, seed, partitions, output } => {
            sample(HistogramPlan { n, bins, seed, partitions }, output)
        }
        Command::Oracle { delta, mode, grid, iterations, tolerance, output } => {
            let cfg = OracleConfig {
                coarse_grid_points_per_angle: grid,
                refine_iterations: iterations,
                refine_tolerance: tolerance,
                mode,
            };
            oracle(delta, cfg, output)
        }
        Command::Orbit { branch, chi, row, output } => orbit(branch, chi, row, output),
        Command::VerifyAll { fast } => verify_all(fast),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(n)) => {
            eprintln!("error: {n} verification check(s) failed");
            ExitCode::from(1)
        }
    }
}
