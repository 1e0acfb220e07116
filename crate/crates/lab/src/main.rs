use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use milburn_core::par::{with_jobs, Exec};
use milburn_lab::config::ConfigPatch;
use milburn_lab::error::{LabError, Result};
use milburn_lab::events::{detect_events, DEATH_TOL};
use milburn_lab::output::write_text;
use milburn_lab::run::{run_scenario, steady_report};
use milburn_lab::sweep::{sweep, sweep_csv, Axis};
use milburn_lab::{figures, report, spectrum_csv, steady_csv};

/// Two-qubit Heisenberg XYZ model with DM interaction under intrinsic
/// decoherence.
#[derive(Debug, Parser)]
#[command(name = "milburn-lab", version)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Config file (flat key = value or JSON); flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// prod00 | prod01 | prod10 | prod11 | bell-phi | bell-psi | raw
    #[arg(long, global = true)]
    scenario: Option<String>,
    /// Mixing probability of the initial state.
    #[arg(long, global = true)]
    p: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    jp: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    jm: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    jz: Option<f64>,
    /// DM interaction strength D.
    #[arg(long, global = true, allow_hyphen_values = true)]
    dm: Option<f64>,
    /// Uniform field B.
    #[arg(long, global = true, allow_hyphen_values = true)]
    field: Option<f64>,
    /// Field inhomogeneity.
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, global = true)]
    gamma: Option<f64>,
    /// spectral | xclosed | kraus | ode
    #[arg(long, global = true)]
    engine: Option<String>,
    #[arg(long, global = true)]
    t_max: Option<f64>,
    #[arg(long, global = true)]
    dt_sample: Option<f64>,
    #[arg(long, global = true)]
    ode_dt: Option<f64>,
    /// Comma list of correlations, elements, purity.
    #[arg(long, global = true)]
    outputs: Option<String>,
    /// csv | json
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues and eigenvectors of the Hamiltonian.
    Spectrum,
    /// Sample the correlation measures along a trajectory.
    Evolve {
        /// Print death, revival, period and envelope to stderr as JSON.
        #[arg(long)]
        events: bool,
    },
    /// Long-time state and its measures.
    Steady {
        /// Also compare steady values quoted in the literature.
        #[arg(long)]
        reference: bool,
    },
    /// Steady and event columns over a parameter grid.
    Sweep {
        /// Axis `name=v1,v2,…`; repeat for more axes.
        #[arg(long = "grid", required = true)]
        grid: Vec<String>,
    },
    /// Regenerate the CSV series of one figure.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        n: u8,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Resolve and check the configuration, then print it.
    Validate,
}

impl Global {
    fn patch(&self) -> Result<ConfigPatch> {
        let base = match &self.config {
            Some(path) => ConfigPatch::from_file(path)?,
            None => ConfigPatch::default(),
        };
        let mut top = ConfigPatch::default();
        let nums = [
            ("p", self.p),
            ("jp", self.jp),
            ("jm", self.jm),
            ("jz", self.jz),
            ("dm", self.dm),
            ("field", self.field),
            ("lambda", self.lambda),
            ("gamma", self.gamma),
            ("t_max", self.t_max),
            ("dt_sample", self.dt_sample),
            ("ode_dt", self.ode_dt),
        ];
        for (k, v) in nums {
            if let Some(v) = v {
                top.set(k, &format!("{v:?}"))?;
            }
        }
        let texts = [
            ("scenario", &self.scenario),
            ("engine", &self.engine),
            ("outputs", &self.outputs),
            ("format", &self.format),
        ];
        for (k, v) in texts {
            if let Some(v) = v {
                top.set(k, v)?;
            }
        }
        top.out_path = self.out.clone();
        Ok(base.overlay(top))
    }
}

fn execute(cli: &Cli, exec: Exec) -> Result<()> {
    let patch = cli.global.patch()?;
    match &cli.command {
        Command::Spectrum => {
            let cfg = patch.resolve()?;
            write_text(&spectrum_csv(&cfg.params)?, cfg.out_path.as_deref())
        }
        Command::Evolve { events } => {
            let cfg = patch.resolve()?;
            let r = run_scenario(&cfg, exec)?;
            write_text(&r.render(&cfg)?, cfg.out_path.as_deref())?;
            if *events {
                let steady = steady_report(&cfg).ok().map(|(_, m)| m.min_hs);
                let rep = detect_events(&r.samples, DEATH_TOL, steady);
                let text = serde_json::to_string(&rep).map_err(|e| LabError::Config(e.to_string()))?;
                eprintln!("{text}");
            }
            Ok(())
        }
        Command::Steady { reference } => {
            let cfg = patch.resolve()?;
            let (st, m) = steady_report(&cfg)?;
            let mut text = steady_csv(&st, &m);
            if *reference {
                text.push('\n');
                text.push_str(&report::render_reference_report()?);
            }
            write_text(&text, cfg.out_path.as_deref())
        }
        Command::Sweep { grid } => {
            let axes: Vec<Axis> = grid.iter().map(|g| Axis::parse(g)).collect::<Result<_>>()?;
            // Check the non-grid part of the config once, up front.
            patch.resolve()?;
            let rows = sweep(&patch, &axes, exec)?;
            write_text(&sweep_csv(&axes, &rows)?, patch.out_path.as_deref())
        }
        Command::Figure { n, out_dir } => {
            for path in figures::write_figure(*n, out_dir, exec)? {
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::Validate => {
            let cfg = patch.resolve()?;
            let text = serde_json::to_string_pretty(&cfg).map_err(|e| LabError::Config(e.to_string()))?;
            write_text(&(text + "\n"), None)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let jobs = cli.global.jobs;
    match with_jobs(jobs, || execute(&cli, Exec::default())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
