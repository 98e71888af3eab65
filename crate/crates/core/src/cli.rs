//! Command-line front end. Tables go to stdout (or files under `--out`),
//! human-readable diagnostics to stderr.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::config::{ConfigFile, CONFIG_ENV};
use crate::eigensolve::solve_energy;
use crate::error::{Error, Result};
use crate::model::{parse_state_label, Radius, StateSpec, System};
use crate::pipeline::{evaluate_state, ComputeSettings};
use crate::reproduce::{reproduce, Target};
use crate::sweep::{fisher_row, key_columns, run_sweep, Output, StateRequest, SweepRequest, FISHER_HEADER};
use crate::table::{format_value, Delimiter, Table};

#[derive(Debug, Parser)]
#[command(name = "chofisher", version, about = "Fisher information of confined and free oscillators and the spherical box")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy of one state.
    Energy(SingleArgs),
    /// Moments, Fisher information and bounds of one state.
    Fisher(SingleArgs),
    /// Rows over states, frequencies and radii.
    Sweep(SweepArgs),
    /// Regenerate a reference table or figure.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    /// Gauss-Legendre order per panel.
    #[arg(long)]
    pub quad_order: Option<usize>,
    /// Momentum cutoff.
    #[arg(long)]
    pub pmax: Option<f64>,
    #[arg(long, default_value = "csv")]
    pub format: Delimiter,
    /// Write files here instead of printing tables.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SingleArgs {
    #[arg(long, default_value = "cho")]
    pub system: System,
    /// Spectroscopic label such as 1s or 2p.
    #[arg(long)]
    pub state: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub m: i32,
    #[arg(long, conflicts_with = "omega2")]
    pub omega: Option<f64>,
    #[arg(long)]
    pub omega2: Option<f64>,
    /// Confinement radius, or `inf`.
    #[arg(long)]
    pub rc: Option<Radius>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "cho")]
    pub system: System,
    /// Repeatable; `2p` or `2p:1` for m = 1.
    #[arg(long = "state")]
    pub states: Vec<StateRequest>,
    /// Comma-separated radii; `inf` allowed.
    #[arg(long, value_delimiter = ',')]
    pub rc: Vec<Radius>,
    /// `lo:hi:n`, n radii evenly spaced in log r_c.
    #[arg(long)]
    pub rc_log: Option<String>,
    #[arg(long, value_delimiter = ',', conflicts_with = "omega2")]
    pub omega: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub omega2: Vec<f64>,
    /// Subset of energy,I_r,I_p,I_t,bounds,residual,moments.
    #[arg(long, value_delimiter = ',')]
    pub outputs: Vec<Output>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// table1..table4, fig1, fig2 or all.
    #[arg(long)]
    pub target: String,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

/// Defaults, then the config file, then flags.
fn settings(numeric: &NumericArgs) -> Result<ComputeSettings> {
    let mut s = ComputeSettings::default();
    if let Some(cfg) = ConfigFile::from_env().map_err(|e| match e {
        Error::Io(io) => Error::Parse(format!("{CONFIG_ENV}: {io}")),
        other => other,
    })? {
        cfg.apply(&mut s);
    }
    if let Some(q) = numeric.quad_order {
        s.order = q;
        s.transform.p_order = q;
    }
    if let Some(p) = numeric.pmax {
        s.transform.p_max = Some(p);
    }
    if s.order < 2 || s.panels == 0 {
        return Err(Error::Parse("quadrature order must be at least 2".into()));
    }
    s.transform.validate()?;
    Ok(s)
}

fn omega_of(omega: Option<f64>, omega2: Option<f64>) -> Result<Option<f64>> {
    match (omega, omega2) {
        (Some(w), _) => Ok(Some(w)),
        (None, Some(w2)) if w2 > 0.0 => Ok(Some(w2.sqrt())),
        (None, Some(w2)) => Err(Error::InvalidState(format!("omega^2 must be positive, got {w2}"))),
        (None, None) => Ok(None),
    }
}

impl SingleArgs {
    pub fn spec(&self) -> Result<StateSpec> {
        let (n_r, l) = parse_state_label(&self.state)?;
        let omega = omega_of(self.omega, self.omega2)?;
        if self.system == System::Pisb && omega.is_some_and(|w| w != 1.0) {
            return Err(Error::Parse("the spherical box takes no frequency".into()));
        }
        let radius = match (self.rc, self.system) {
            (Some(r), _) => r,
            (None, System::Fho) => Radius::Unconfined,
            (None, _) => return Err(Error::Parse("--rc is required for confined systems".into())),
        };
        StateSpec::new(self.system, n_r, l, self.m, omega.unwrap_or(1.0), radius)
    }
}

/// `lo:hi:n` as n log-spaced radii, endpoints exact.
pub fn parse_log_range(s: &str) -> Result<Vec<Radius>> {
    let bad = || Error::Parse(format!("expected lo:hi:n, got `{s}`"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else { return Err(bad()) };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || n == 0 {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![Radius::Finite(lo)]);
    }
    let span = (hi / lo).ln();
    Ok((0..n)
        .map(|i| match i {
            0 => Radius::Finite(lo),
            _ if i + 1 == n => Radius::Finite(hi),
            _ => Radius::Finite(lo * (span * i as f64 / (n - 1) as f64).exp()),
        })
        .collect())
}

impl SweepArgs {
    pub fn request(&self) -> Result<SweepRequest> {
        let mut radii = self.rc.clone();
        if let Some(r) = &self.rc_log {
            radii.extend(parse_log_range(r)?);
        }
        if radii.is_empty() {
            radii.push(match self.system {
                System::Fho => Radius::Unconfined,
                _ => return Err(Error::Parse("give --rc or --rc-log".into())),
            });
        }
        let omegas = if !self.omega2.is_empty() {
            self.omega2
                .iter()
                .map(|&w2| omega_of(None, Some(w2)).map(|w| w.unwrap_or(1.0)))
                .collect::<Result<_>>()?
        } else if !self.omega.is_empty() {
            self.omega.clone()
        } else {
            vec![1.0]
        };
        if self.system == System::Pisb && omegas.iter().any(|&w| w != 1.0) {
            return Err(Error::Parse("the spherical box takes no frequency".into()));
        }
        let request = SweepRequest {
            system: self.system,
            states: self.states.clone(),
            radii,
            omegas,
            outputs: if self.outputs.is_empty() {
                Output::DEFAULT.to_vec()
            } else {
                self.outputs.clone()
            },
        };
        // Validation before any computation.
        request.specs()?;
        Ok(request)
    }
}

fn emit(table: &Table, numeric: &NumericArgs, stem: &str) -> Result<()> {
    match &numeric.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("{stem}.{}", numeric.format.extension()));
            table.write(&path, numeric.format)?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(table.render(numeric.format).as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_energy(args: &SingleArgs) -> Result<()> {
    let spec = args.spec()?;
    settings(&args.numeric)?;
    let level = solve_energy(&spec)?;
    eprintln!(
        "{} {} E = {}  bracket [{:e}, {:e}]  residual {:.2e}  iterations {}",
        spec.system,
        spec.label(),
        format_value(level.energy),
        level.bracket.0,
        level.bracket.1,
        level.residual,
        level.iterations
    );
    let mut header: Vec<String> = FISHER_HEADER[..7].iter().map(|s| s.to_string()).collect();
    header.extend(["energy", "residual", "iterations"].map(String::from));
    let mut table = Table::new(header);
    let mut row = key_columns(&spec);
    row.push(format_value(level.energy));
    row.push(format_value(level.residual));
    row.push(level.iterations.to_string());
    table.push(row);
    emit(&table, &args.numeric, "energy")
}

fn cmd_fisher(args: &SingleArgs) -> Result<()> {
    let spec = args.spec()?;
    let s = settings(&args.numeric)?;
    let report = evaluate_state(&spec, &s)?;
    let f = &report.fisher;
    eprintln!(
        "{} {} m={}  E = {}\n  I_r = {}  (energy route {})\n  I_p = {}  (position route {})\n  I_t = {}  in [{}, {}]\n  route residual {:.2e}  norm residuals r {:.1e} p {:.1e}  p_max {}",
        spec.system,
        spec.label(),
        spec.m,
        format_value(report.level.energy),
        format_value(f.i_r),
        format_value(f.i_r_energy_route),
        format_value(f.i_p),
        format_value(f.i_p_energy_route),
        format_value(f.i_t),
        format_value(f.bound_low),
        format_value(f.bound_high),
        f.route_residual,
        report.position_norm_residual,
        report.momentum_norm_residual,
        format_value(report.p_max)
    );
    let mut table = Table::new(FISHER_HEADER);
    table.push(fisher_row(&report));
    emit(&table, &args.numeric, "fisher")
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let request = args.request()?;
    let s = settings(&args.numeric)?;
    let table = run_sweep(&request, &s)?;
    emit(&table, &args.numeric, "sweep")
}

fn write_meta(dir: &Path, target: Target, files: &[String], s: &ComputeSettings, seconds: f64) -> Result<()> {
    let meta = serde_json::json!({
        "target": target.as_str(),
        "files": files,
        "package_version": env!("CARGO_PKG_VERSION"),
        "quad_order": s.order,
        "panels": s.panels,
        "p_order": s.transform.p_order,
        "p_max": s.transform.p_max,
        "tail_tolerance": s.transform.tail_tolerance,
        "max_doublings": s.transform.max_doublings,
        "wall_seconds": seconds,
        "generated_unix": std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    });
    let text = serde_json::to_string_pretty(&meta).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    std::fs::write(dir.join(format!("{target}.meta.json")), text + "\n")?;
    Ok(())
}

fn cmd_reproduce(args: &ReproduceArgs) -> Result<()> {
    let targets: Vec<Target> = if args.target.eq_ignore_ascii_case("all") {
        Target::ALL.to_vec()
    } else {
        vec![args.target.parse()?]
    };
    let s = settings(&args.numeric)?;
    for target in targets {
        let start = Instant::now();
        let artifacts = reproduce(target, &s, args.numeric.format)?;
        match &args.numeric.out {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                for a in &artifacts {
                    std::fs::write(dir.join(&a.file_name), &a.contents)?;
                    eprintln!("wrote {}", dir.join(&a.file_name).display());
                }
                let names: Vec<String> = artifacts.iter().map(|a| a.file_name.clone()).collect();
                write_meta(dir, target, &names, &s, start.elapsed().as_secs_f64())?;
            }
            None => {
                // Tables only; SVGs need a directory.
                let mut out = std::io::stdout().lock();
                for a in artifacts.iter().filter(|a| !a.file_name.ends_with(".svg")) {
                    out.write_all(a.contents.as_bytes())?;
                }
            }
        }
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Energy(a) => cmd_energy(a),
        Command::Fisher(a) => cmd_fisher(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Reproduce(a) => cmd_reproduce(a),
    }
}

/// Parse, run and map failures to exit codes.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("chofisher").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn omega_flags_are_exclusive() {
        let r = Cli::try_parse_from(["chofisher", "energy", "--state", "1s", "--omega", "1", "--omega2", "1", "--rc", "1"]);
        assert!(r.is_err());
    }

    #[test]
    fn omega2_is_squared_frequency() {
        let Command::Energy(a) = parse(&["energy", "--state", "1p", "--omega2", "4", "--rc", "1"]).command else {
            panic!()
        };
        assert_eq!(a.spec().unwrap().omega, 2.0);
    }

    #[test]
    fn free_oscillator_needs_no_radius() {
        let Command::Fisher(a) = parse(&["fisher", "--system", "fho", "--state", "1f", "--m", "-3"]).command else {
            panic!()
        };
        let spec = a.spec().unwrap();
        assert_eq!((spec.radius, spec.m), (Radius::Unconfined, -3));
    }

    #[test]
    fn log_range() {
        let r = parse_log_range("0.1:10:3").unwrap();
        assert_eq!(r[0], Radius::Finite(0.1));
        assert!((r[1].finite().unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(r[2], Radius::Finite(10.0));
        assert!(parse_log_range("1:0.5:3").is_err());
        assert!(parse_log_range("1:2").is_err());
    }

    #[test]
    fn sweep_validates_before_computing() {
        let Command::Sweep(a) = parse(&["sweep", "--state", "1s:1", "--rc", "0.1"]).command else {
            panic!()
        };
        assert_eq!(a.request().unwrap_err().exit_code(), 2);
    }
}
