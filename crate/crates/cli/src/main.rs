use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use blindshape::analysis::io::read_samples;
use blindshape::estimator::QdDenominator;
use blindshape::pipeline::{
    analyze_stage, estimate_stage, run_oracle, run_pipeline, simulate_stage, write_manifest,
    write_report, write_run, write_samples_file, write_trace_file, OracleKind, OracleParams,
    RunConfig, MANIFEST_FILE, PRESETS,
};
use blindshape::simulator::io::{read_traces, RunManifest};

const OUT_ENV: &str = "BLINDSHAPE_OUT";
/// Written artifacts are fine but no shape could be assembled.
const NO_SHAPE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "blindshape",
    version,
    about = "Estimate a hidden convex polygon from location-blind distance traces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Simulate, analyze and estimate in one go.
    Run(RunArgs),
    /// Write the manifest and the trace CSV for a scenario.
    Simulate(RunArgs),
    /// Turn a trace CSV into a samples CSV.
    Analyze {
        #[arg(long)]
        traces: PathBuf,
        /// Defaults to manifest.json beside the traces.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Config whose analysis section is used; fleet and noise come from the manifest.
        #[arg(long)]
        config: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Turn a samples CSV into a report and histograms.
    Estimate {
        #[arg(long)]
        samples: PathBuf,
        /// Defaults to manifest.json beside the samples.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Config whose estimator section is used; fleet and noise come from the manifest.
        #[arg(long)]
        config: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run one of the validation oracles.
    Oracle(OracleArgs),
    /// List the bundled scenario presets, or print one.
    Presets { name: Option<String> },
}

#[derive(Args)]
struct OutArg {
    /// Output directory. Falls back to the config, then $BLINDSHAPE_OUT, then ./out.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Preset name or path to a config JSON.
    config: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "n-sensors")]
    n_sensors: Option<usize>,
    #[command(flatten)]
    out: OutArg,
    /// Also write traces.csv.
    #[arg(long)]
    write_traces: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// measure1, measure2, qd-mc or route-uniformity.
    kind: OracleKind,
    #[arg(long)]
    seed: Option<u64>,
    /// Parameter sets, lines or routes. Defaults per oracle.
    #[arg(long)]
    trials: Option<usize>,
    /// Edge lengths for qd-mc.
    #[arg(long = "lambda", value_delimiter = ',')]
    lambdas: Vec<f64>,
    /// Vertex angles for qd-mc.
    #[arg(long = "gamma", value_delimiter = ',')]
    gammas: Vec<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    theta_max: Option<f64>,
    /// Use the half-swath normalizer instead of the full one.
    #[arg(long)]
    half_swath: bool,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
}

fn out_dir(flag: &Option<PathBuf>, cfg: Option<&RunConfig>) -> PathBuf {
    flag.clone()
        .or_else(|| cfg.and_then(|c| c.output.dir.clone()))
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn load_config(args: &RunArgs) -> Result<(RunConfig, Option<PathBuf>)> {
    let (mut cfg, base) = RunConfig::preset_or_load(&args.config)?;
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(n) = args.n_sensors {
        cfg.fleet.n_s = n;
    }
    if args.write_traces {
        cfg.output.write_traces = true;
    }
    Ok((cfg, base))
}

fn read_manifest(explicit: &Option<PathBuf>, beside: &Path) -> Result<RunManifest> {
    let path = explicit.clone().unwrap_or_else(|| {
        beside
            .parent()
            .unwrap_or(Path::new("."))
            .join(MANIFEST_FILE)
    });
    let f = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
    RunManifest::read(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
}

fn tuning(name_or_path: &Option<String>) -> Result<Option<RunConfig>> {
    name_or_path
        .as_deref()
        .map(|s| RunConfig::preset_or_load(s).map(|(c, _)| c))
        .transpose()
        .map_err(Into::into)
}

fn print_files(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn shape_status(ok: bool, err: Option<&str>) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: {}", err.unwrap_or("no consistent shape"));
        ExitCode::from(NO_SHAPE)
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn real_main() -> Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::Run(args) => {
            let (cfg, base) = load_config(&args)?;
            let dir = out_dir(&args.out.out, Some(&cfg));
            let out = run_pipeline(&cfg, base.as_deref())?;
            print_files(&write_run(&dir, &cfg, &out)?);
            let r = &out.report;
            Ok(shape_status(
                r.succeeded(),
                r.estimate.shape_error.as_deref(),
            ))
        }
        Cmd::Simulate(args) => {
            let (cfg, base) = load_config(&args)?;
            let dir = out_dir(&args.out.out, Some(&cfg));
            let target = cfg.validate(base.as_deref())?;
            let traces = simulate_stage(&cfg, &target)?;
            let mut files = write_manifest(&dir, &cfg, &traces)?;
            files.push(write_trace_file(&dir, &traces)?);
            print_files(&files);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Analyze {
            traces,
            manifest,
            config,
            out,
        } => {
            let m = read_manifest(&manifest, &traces)?;
            let cfg = RunConfig::from_manifest(&m, tuning(&config)?.as_ref());
            let f = File::open(&traces).with_context(|| format!("opening {}", traces.display()))?;
            let tr = read_traces(BufReader::new(f), m.fleet.dt)
                .with_context(|| format!("reading {}", traces.display()))?;
            let (samples, diag) = analyze_stage(&cfg, &tr);
            let dir = out_dir(&out.out, None);
            std::fs::create_dir_all(&dir)?;
            print_files(&[write_samples_file(&dir, &samples)?]);
            println!(
                "{} traces, {} whole-edge, {} vertex, {} edge+vertex samples",
                diag.traces,
                samples.whole.len(),
                samples.vertices.len(),
                samples.edge_vertices.len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Estimate {
            samples,
            manifest,
            config,
            out,
        } => {
            let m = read_manifest(&manifest, &samples)?;
            let cfg = RunConfig::from_manifest(&m, tuning(&config)?.as_ref());
            let f =
                File::open(&samples).with_context(|| format!("opening {}", samples.display()))?;
            let s = read_samples(BufReader::new(f))
                .with_context(|| format!("reading {}", samples.display()))?;
            let report = estimate_stage(&cfg, &s, None);
            let dir = out_dir(&out.out, None);
            print_files(&write_report(&dir, &report)?);
            Ok(shape_status(
                report.succeeded(),
                report.estimate.shape_error.as_deref(),
            ))
        }
        Cmd::Oracle(a) => {
            let mut p = OracleParams::default();
            if let Some(s) = a.seed {
                p.seed = s;
            }
            p.trials = a.trials.unwrap_or(0);
            if !a.lambdas.is_empty() {
                p.lambdas = a.lambdas;
            }
            p.gammas = a.gammas;
            if let Some(r) = a.r_max {
                p.r_max = r;
            }
            if let Some(t) = a.theta_max {
                p.theta_max = t;
            }
            if a.half_swath {
                p.denominator = QdDenominator::HalfSwath;
            }
            let report = run_oracle(a.kind, &p);
            if a.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::Presets { name } => {
            match name {
                None => {
                    for (n, _) in PRESETS {
                        println!("{n}");
                    }
                }
                Some(n) => match PRESETS.iter().find(|(p, _)| *p == n) {
                    Some((_, text)) => print!("{text}"),
                    None => bail!("unknown preset '{n}'"),
                },
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
