use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hecke_cli::{cmd_commute, cmd_convolve, cmd_nice, cmd_orbits, cmd_satake, cmd_sl2, cmd_volume, exit_code, JobConfig};
use hecke_core::Error;

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact local Hecke algebra computations")]
struct Cli {
    /// TOML file with the same keys as the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    job: JobArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct JobArgs {
    #[arg(long, global = true)]
    ring: Option<String>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Vec<String>,
    #[arg(long, global = true)]
    sigma: Vec<String>,
    #[arg(long, global = true)]
    mode: Option<String>,
    #[arg(long, global = true)]
    jmax: Option<u32>,
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true)]
    max_points: Option<u64>,
    #[arg(long, global = true)]
    max_level: Option<u32>,
}

impl From<JobArgs> for JobConfig {
    fn from(a: JobArgs) -> Self {
        JobConfig {
            ring: a.ring,
            n: a.n,
            lambda: a.lambda,
            sigma: a.sigma,
            mode: a.mode,
            jmax: a.jmax,
            jobs: a.jobs,
            out: a.out,
            max_points: a.max_points,
            max_level: a.max_level,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// K-orbit table of a Schubert closure or a window.
    Orbits {
        #[arg(long)]
        window: Option<u32>,
        /// Print `rep,size` rows instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Convolve the h-elements (or closure indicators) of the given coweights.
    Convolve {
        #[arg(long)]
        indicator: bool,
    },
    /// Pairwise commutators of the generators, or a big-algebra witness search.
    Commute {
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 1)]
        window: u32,
    },
    /// Per-point volumes in exact, resolution or counting mode.
    Volume,
    /// The generators h^lam_N and their transports.
    Satake,
    Sl2 {
        #[command(subcommand)]
        action: Sl2Cmd,
    },
    Nice {
        #[command(subcommand)]
        action: NiceCmd,
    },
}

#[derive(Subcommand)]
enum Sl2Cmd {
    Check {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        p: Option<u32>,
    },
}

#[derive(Subcommand)]
enum NiceCmd {
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        attempts: usize,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    let file = match &cli.config {
        Some(p) => JobConfig::load(p)?,
        None => JobConfig::default(),
    };
    let cfg = file.merge(cli.job.into());
    cfg.validate()?;
    if let Some(j) = cfg.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| Error::Parse(e.to_string()))?;
    }
    if let Some(m) = cfg.max_points {
        std::env::set_var("HECKE_GUARD_POINTS", m.to_string());
    }
    let value = match cli.cmd {
        Cmd::Orbits { window, csv } => {
            let (v, table) = cmd_orbits(&cfg, window)?;
            if csv {
                let mut s = String::from("rep,size\n");
                for row in &table.orbits {
                    s.push_str(&format!("\"{}\",{}\n", row.rep, row.size));
                }
                return emit(&cfg, s);
            }
            v
        }
        Cmd::Convolve { indicator } => cmd_convolve(&cfg, indicator)?,
        Cmd::Commute { witness, window } => cmd_commute(&cfg, witness, window)?,
        Cmd::Volume => cmd_volume(&cfg)?,
        Cmd::Satake => cmd_satake(&cfg)?,
        Cmd::Sl2 { action: Sl2Cmd::Check { ty, p } } => cmd_sl2(&ty, p)?,
        Cmd::Nice { action: NiceCmd::Search { q, ty, d, seed, attempts } } => {
            cmd_nice(q, cfg.n.unwrap_or(2) as u32, ty.as_deref(), d, seed, attempts)?
        }
    };
    emit(&cfg, serde_json::to_string_pretty(&value).expect("serializable") + "\n")
}

fn emit(cfg: &JobConfig, s: String) -> Result<(), Error> {
    match &cfg.out {
        Some(path) => std::fs::write(path, s).map_err(|e| Error::Parse(format!("writing {path}: {e}"))),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
