use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use howe_cli::config::{apply_config, parse_scalar, read_grid};
use howe_cli::jobs::{self, all_jobs, Outcome, Settings};
use howe_cli::report::Report;
use howe_core::dual_pairs::{DualPairRow, RhoConvention};
use howe_core::stringy::Statistics;
use howe_core::{Coordinates, PoissonAlgebraSpec};
use rayon::prelude::*;
use serde::Deserialize;

#[derive(Parser)]
#[command(name = "howe", version, about = "Exact verification of Poisson superalgebra, dual pair and Virasoro computations")]
struct Cli {
    /// Directory for report.json, report.md and timings.json.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Half-width M of the semi-infinite window [−M, M).
    #[arg(long, global = true)]
    window: Option<i64>,
    /// Worker threads for independent jobs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// `key = value` file presetting window, seed, instances, jobs and grid.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the JSON report on stdout instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coords {
    Theta,
    Xi,
}

impl From<Coords> for Coordinates {
    fn from(c: Coords) -> Self {
        match c {
            Coords::Theta => Coordinates::Theta,
            Coords::Xi => Coordinates::XiEtaTheta,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Stat {
    Fermi,
    Bose,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Half,
    Doubled,
}

#[derive(Clone, Copy, ValueEnum)]
enum RhoConv {
    Printed,
    Koszul,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate {F, G} in po(2n|m).
    Bracket {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, value_enum, default_value = "xi")]
        coords: Coords,
        /// JSON file with fields n, m, coordinates, f, g and optional expect.
        #[arg(long, conflicts_with_all = ["f", "g"])]
        input: Option<PathBuf>,
        f: Option<String>,
        g: Option<String>,
        #[arg(long)]
        expect: Option<String>,
    },
    /// Quantize F with θ ↦ c(θ̂ + ∂θ), Q ↦ multiplication, P ↦ ħ∂.
    Quantize {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value = "1")]
        hbar: String,
        f: String,
    },
    /// Vacuum weight of the spinor representation of o(2k) or o(2k+1).
    Spinor {
        #[arg(long, default_value = "o")]
        algebra: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        odd: bool,
    },
    /// Principal sl(2) weight on the vacuum.
    Principal {
        #[arg(long = "N")]
        n: usize,
    },
    Lefschetz {
        #[arg(long)]
        n: usize,
    },
    Harmonics {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 6)]
        imax: usize,
    },
    Bernstein {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        hbar: String,
    },
    Hyperkahler {
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// One of sp2-sp2-in-o4, o3-osp12-in-osp36, sp2-pe3-in-pe6, osp22-pe1-in-spe4.
    Dualpair {
        #[arg(long)]
        row: String,
    },
    Sergeev {
        #[arg(long, default_values = ["0", "1", "1/2"])]
        lambda: Vec<String>,
    },
    Rho {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "printed")]
        convention: RhoConv,
    },
    /// (c, h) of a semi-infinite realization of F_(λ,μ).
    VirWeights {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum)]
        stat: Stat,
        #[arg(long, value_enum)]
        construction: Construction,
        /// Vacuum charge of the doubled construction.
        #[arg(long, default_value_t = 1)]
        charge: i64,
    },
    /// n = 0 column of the Spin/Osc weight table, calibrated at (1, 0).
    Table43 {
        /// File with one `λ,μ` per line.
        #[arg(long)]
        grid: Option<PathBuf>,
    },
    /// Run every verification job.
    VerifyAll,
}

#[derive(Deserialize)]
struct BracketInput {
    n: usize,
    m: usize,
    #[serde(default = "default_coords")]
    coordinates: Coordinates,
    f: String,
    g: String,
    expect: Option<String>,
}

fn default_coords() -> Coordinates {
    Coordinates::XiEtaTheta
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> Result<bool> {
    let mut settings = Settings::default();
    let mut threads = None;
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        threads = apply_config(&text, &mut settings)?;
    }
    if let Some(w) = cli.window {
        settings.window = w;
    }
    threads = cli.jobs.or(threads);

    let (name, outcomes, timings) = match cli.command {
        Command::VerifyAll => {
            let (outcomes, timings) = run_all(&settings, threads)?;
            ("verify-all".to_string(), outcomes, timings)
        }
        cmd => {
            let start = Instant::now();
            let (name, outcomes) = single(cmd, &settings)?;
            let ms = start.elapsed().as_millis();
            (name.clone(), outcomes, vec![(name, ms)])
        }
    };
    let report = Report::new(&name, outcomes);
    if let Some(dir) = &cli.out {
        report.write(dir, &timings).with_context(|| format!("writing reports to {}", dir.display()))?;
    }
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.summary());
    }
    Ok(report.passed)
}

fn run_all(settings: &Settings, threads: Option<usize>) -> Result<(Vec<Outcome>, Vec<(String, u128)>)> {
    let jobs = all_jobs();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(1)).build()?;
    let results: Vec<(String, Vec<Outcome>, u128)> = pool.install(|| {
        jobs.par_iter()
            .map(|j| {
                let start = Instant::now();
                let out = (j.run)(settings);
                (j.id.clone(), out, start.elapsed().as_millis())
            })
            .collect()
    });
    let mut outcomes = Vec::new();
    let mut timings = Vec::new();
    for (id, out, ms) in results {
        outcomes.extend(out);
        timings.push((id, ms));
    }
    Ok((outcomes, timings))
}

fn single(cmd: Command, settings: &Settings) -> Result<(String, Vec<Outcome>)> {
    Ok(match cmd {
        Command::Bracket { n, m, coords, input, f, g, expect } => {
            let (spec, f, g, expect) = match input {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let b: BracketInput = serde_json::from_str(&text).context("parsing bracket input")?;
                    (PoissonAlgebraSpec::new(b.n, b.m, b.coordinates), b.f, b.g, b.expect.or(expect))
                }
                None => {
                    let (Some(f), Some(g)) = (f, g) else { bail!("bracket needs F and G or --input") };
                    (PoissonAlgebraSpec::new(n, m, coords.into()), f, g, expect)
                }
            };
            ("bracket".into(), vec![jobs::bracket(spec, &f, &g, expect.as_deref())])
        }
        Command::Quantize { n, m, hbar, f } => {
            let spec = PoissonAlgebraSpec::new(n, m, Coordinates::XiEtaTheta);
            ("quantize".into(), vec![jobs::quantize(spec, &parse_scalar(&hbar)?, &f)])
        }
        Command::Spinor { algebra, k, odd } => {
            if algebra != "o" {
                bail!("only --algebra o is supported");
            }
            ("spinor".into(), vec![jobs::spinor(k, odd)])
        }
        Command::Principal { n } => ("principal".into(), vec![jobs::principal(n)]),
        Command::Lefschetz { n } => ("lefschetz".into(), vec![jobs::lefschetz(n, n <= 2)]),
        Command::Harmonics { d, imax } => ("harmonics".into(), vec![jobs::harmonics(d, imax, (d <= 4).then_some(imax.min(3)))]),
        Command::Bernstein { n, hbar } => ("bernstein".into(), vec![jobs::bernstein(n, &parse_scalar(&hbar)?)]),
        Command::Hyperkahler { n } => ("hyperkahler".into(), vec![jobs::hyperkahler(n)]),
        Command::Dualpair { row } => {
            let Some(r) = DualPairRow::parse(&row) else {
                let ids: Vec<_> = DualPairRow::ALL.iter().map(|r| r.id()).collect();
                bail!("unknown row `{row}`; choose one of {}", ids.join(", "))
            };
            ("dualpair".into(), vec![jobs::dual_pair(r)])
        }
        Command::Sergeev { lambda } => {
            let ls = lambda.iter().map(|l| parse_scalar(l)).collect::<Result<Vec<_>>>()?;
            ("sergeev".into(), vec![jobs::sergeev(settings.seed, &ls)])
        }
        Command::Rho { r, s, n, convention } => {
            let conv = match convention {
                RhoConv::Printed => RhoConvention::Printed,
                RhoConv::Koszul => RhoConvention::Koszul,
            };
            ("rho".into(), vec![jobs::rho(r, s, n, conv)])
        }
        Command::VirWeights { lambda, mu, stat, construction, charge } => {
            let stat = match stat {
                Stat::Fermi => Statistics::Fermionic,
                Stat::Bose => Statistics::Bosonic,
            };
            let half = matches!(construction, Construction::Half);
            let o = jobs::vir_weights(&parse_scalar(&lambda)?, &parse_scalar(&mu)?, stat, half, charge, settings.window);
            ("vir-weights".into(), vec![o])
        }
        Command::Table43 { grid } => {
            let grid = match grid {
                Some(p) => read_grid(&p)?,
                None => settings.grid.clone(),
            };
            ("table43".into(), vec![jobs::table43(&grid, settings.window)])
        }
        Command::VerifyAll => unreachable!("handled by run_all"),
    })
}
