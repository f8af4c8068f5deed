use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use outerplanar::bijection::{
    certify, count_by_branch, count_well_bicoloured, enumerate_well_bicoloured_bounded, psi, trace_faces,
    DEFAULT_EXHAUSTIVE_BOUND,
};
use outerplanar::experiments::verify::{exhaustive_suite, random_suite, statistical_suite, CheckResult};
use outerplanar::experiments::{
    diameter_ratio, estimate_limit_ratio, estimate_transitions, manifest_json, many_to_one, profile_csv,
    ratio_profile, ratios_csv, transitions_csv, write_outputs, Experiment, ExperimentConfig,
};
use outerplanar::geodesic::{distance_to_root, restricted_move_distance, trace};
use outerplanar::oracle::bfs_distances;
use outerplanar::sampling::{
    sample_cut, sample_gw, sample_uniform_plane_tree, sample_well_bicoloured, RngStream, WellBicolouredMethod,
};
use outerplanar::{ColouredPlaneTree, Error};

const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser)]
#[command(name = "outerplanar", version, about = "Well bicoloured trees, outerplanar maps and map distances")]
struct Cli {
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample random trees, one per line.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Tree size (spine length for `cut`).
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "rejection")]
        method: WellBicolouredMethod,
        /// Abort a sample once it exceeds this many vertices.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Print the outerplanar map of a tree.
    Psi {
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value = "json")]
        format: MapFormat,
    },
    /// Map distance from a vertex to the root.
    Distance {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_enum, default_value = "trace")]
        via: Via,
    },
    /// Step-by-step run of the geodesic algorithm: `i state height case`.
    Trace {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        vertex: usize,
    },
    /// List every well bicoloured tree with `n` vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BOUND)]
        bound: usize,
    },
    /// Number of well bicoloured trees (equivalently outerplanar maps).
    Count {
        #[arg(long)]
        n: u64,
        /// One line `d count` per rightmost-branch length.
        #[arg(long)]
        by_branch: bool,
    },
    /// Face structure and outerplanarity certificate of a tree's map.
    Faces {
        #[arg(long)]
        tree: String,
    },
    /// Empirical transition matrix of the algorithm's states.
    Markov(ExperimentArgs),
    /// Distance over height ratios.
    Ratio {
        #[command(flatten)]
        common: ExperimentArgs,
        #[arg(long, value_enum, default_value = "limit")]
        mode: RatioMode,
        /// Profile sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
    },
    /// Map diameter over tree diameter.
    Diameter {
        #[command(flatten)]
        common: ExperimentArgs,
        /// `exact` or `estimate`.
        #[arg(long)]
        diameter: Option<String>,
    },
    /// Run the exhaustive and statistical check suites.
    Verify {
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BOUND)]
        bound: usize,
        /// Needed unless `--exhaustive-only` is given.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        exhaustive_only: bool,
        /// Skip the long statistical experiments but keep the random checks.
        #[arg(long)]
        skip_statistical: bool,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// Flat `key = value` file; flags given here take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    replicates: Option<u64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    method: Option<WellBicolouredMethod>,
    #[arg(long)]
    budget: Option<usize>,
    /// Directory for CSV files and the run manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Gw,
    Uniform,
    WellBicoloured,
    Cut,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Trace,
    Bfs,
    Moves,
}

#[derive(Clone, Copy, ValueEnum)]
enum RatioMode {
    Limit,
    Profile,
    ManyToOne,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<String, Failure>;

fn exit_code(e: &Error) -> u8 {
    match e.root_cause() {
        Error::Parse { .. }
        | Error::VertexOutOfRange(..)
        | Error::NotWellBicoloured
        | Error::SameVertex(_)
        | Error::TargetOfWhite(_)
        | Error::Io(_) => EXIT_INPUT,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::ZeroSize | Error::InvalidArgument(_) | Error::BoundExceeded { .. } => EXIT_USAGE,
        _ => 1,
    }
}

fn parse_tree(text: &str) -> Result<ColouredPlaneTree, Error> {
    text.parse()
}

fn experiment_config(kind: Experiment, a: &ExperimentArgs) -> Result<ExperimentConfig, Error> {
    let mut cfg = ExperimentConfig::defaults(kind, a.seed);
    if let Some(path) = &a.config {
        cfg.apply_text(&std::fs::read_to_string(path)?)?;
    }
    cfg.seed = a.seed;
    if let Some(n) = a.n {
        cfg.n = n;
    }
    if let Some(r) = a.replicates {
        cfg.replicates = r;
    }
    if let Some(t) = a.tolerance {
        cfg.tolerance = t;
    }
    if let Some(m) = a.method {
        cfg.method = m;
    }
    if a.budget.is_some() {
        cfg.budget = a.budget;
    }
    Ok(cfg)
}

fn finish(cfg: &ExperimentConfig, out: &Option<PathBuf>, files: Vec<(&str, String)>, summary: serde_json::Value) -> Outcome {
    let names: Vec<&str> = files.iter().map(|(n, _)| *n).collect();
    let manifest = manifest_json(cfg, &names, summary.clone());
    if let Some(dir) = out {
        let mut all = files;
        all.push(("manifest.json", manifest));
        write_outputs(dir, &all)?;
    }
    Ok(serde_json::to_string_pretty(&summary).expect("serialisable") + "\n")
}

fn report(checks: &[CheckResult]) -> (String, bool) {
    let mut text = String::new();
    for c in checks {
        let _ = writeln!(text, "{c}");
    }
    (text, checks.iter().all(|c| c.passed))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Generate { kind, n, count, seed, method, budget } => {
            let mut out = format!("# generate kind={} n={n} count={count} seed={seed}", kind_name(kind));
            if matches!(kind, Kind::WellBicoloured) {
                let _ = write!(out, " method={method}");
            }
            if let Some(b) = budget {
                let _ = write!(out, " budget={b}");
            }
            out.push('\n');
            for i in 0..count {
                let mut rng = RngStream::new(seed, i).rng();
                let tree = match kind {
                    Kind::Gw => sample_gw(&mut rng, budget)?,
                    Kind::Uniform => sample_uniform_plane_tree(n, &mut rng)?,
                    Kind::WellBicoloured => sample_well_bicoloured(n, method, &mut rng)?,
                    Kind::Cut => {
                        let cut = sample_cut(n, &mut rng, budget)?;
                        let _ = writeln!(out, "# tip={}", cut.tip);
                        cut.tree
                    }
                };
                let _ = writeln!(out, "{tree}");
            }
            Ok(out)
        }
        Command::Psi { tree, format } => {
            let map = psi(&parse_tree(&tree)?)?;
            Ok(match format {
                MapFormat::Json => map.to_json() + "\n",
                MapFormat::Csv => map.to_edge_csv(),
            })
        }
        Command::Distance { tree, vertex, via } => {
            let t = parse_tree(&tree)?;
            let x = t.check(vertex)?;
            let d = match via {
                Via::Trace => distance_to_root(&t, x)?,
                Via::Bfs => {
                    if !t.is_well_bicoloured() {
                        return Err(Error::NotWellBicoloured.into());
                    }
                    bfs_distances(&psi(&t)?, 0).dist[x.0] as usize
                }
                Via::Moves => restricted_move_distance(&t, x)?,
            };
            Ok(format!("{d}\n"))
        }
        Command::Trace { tree, vertex } => {
            let t = parse_tree(&tree)?;
            let x = t.check(vertex)?;
            Ok(trace(&t, x)?.dump())
        }
        Command::Enumerate { n, bound } => {
            let mut out = String::new();
            for t in enumerate_well_bicoloured_bounded(n, bound)? {
                let _ = writeln!(out, "{t}");
            }
            Ok(out)
        }
        Command::Count { n, by_branch } => {
            if by_branch {
                let mut out = String::new();
                for d in 1..n {
                    let _ = writeln!(out, "{d} {}", count_by_branch(n, d)?);
                }
                Ok(out)
            } else {
                Ok(format!("{}\n", count_well_bicoloured(n)?))
            }
        }
        Command::Faces { tree } => {
            let map = psi(&parse_tree(&tree)?)?;
            let faces: Vec<Vec<usize>> = trace_faces(&map).iter().map(|f| f.vertices().collect()).collect();
            let cert = certify(&map);
            let doc = json!({
                "vertices": cert.vertices,
                "edges": cert.edges,
                "faces": cert.faces,
                "outer_face_degree": cert.outer_face_degree,
                "connected": cert.connected,
                "euler_holds": cert.euler_holds,
                "outer_face_covers_all": cert.outer_face_covers_all,
                "valid": cert.is_valid(),
                "face_vertices": faces,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("serialisable") + "\n")
        }
        Command::Markov(a) => {
            let cfg = experiment_config(Experiment::Markov, &a)?;
            cfg.validate()?;
            let s = estimate_transitions(&cfg)?;
            let summary = json!({
                "transitions": s.total,
                "max_matrix_deviation": s.max_matrix_deviation(),
                "max_initial_deviation": s.max_initial_deviation(),
                "structural_zeros_hold": s.structural_zeros_hold(),
            });
            finish(&cfg, &a.out, vec![("transitions.csv", transitions_csv(&s))], summary)
        }
        Command::Ratio { common, mode, sizes } => match mode {
            RatioMode::Limit => {
                let cfg = experiment_config(Experiment::Ratio, &common)?;
                cfg.validate()?;
                let s = estimate_limit_ratio(&cfg)?;
                let summary = json!({
                    "n": s.n,
                    "replicates": s.replicates,
                    "mean_ratio": s.mean_ratio,
                    "std_ratio": s.std_ratio,
                    "quantiles": s.quantiles,
                    "fraction_off_by_0.1": s.fraction_outside(7.0 / 9.0, 0.1),
                });
                finish(&cfg, &common.out, vec![("ratios.csv", ratios_csv(s.n, &s.ratios))], summary)
            }
            RatioMode::Profile => {
                let mut cfg = experiment_config(Experiment::Profile, &common)?;
                if let Some(sizes) = sizes {
                    cfg.sizes = sizes;
                }
                cfg.validate()?;
                let p = ratio_profile(&cfg)?;
                let summary = json!({
                    "median_deviation": p.median_deviation,
                    "deep_ratio_mean": p.deep_ratio_mean,
                    "deviation_decreasing": p.deviation_decreasing(),
                });
                finish(&cfg, &common.out, vec![("profile.csv", profile_csv(&p.rows))], summary)
            }
            RatioMode::ManyToOne => {
                let cfg = experiment_config(Experiment::ManyToOne, &common)?;
                cfg.validate()?;
                let m = many_to_one(&cfg)?;
                let summary = json!({
                    "n": m.n,
                    "cap": m.cap,
                    "replicates": m.replicates,
                    "cut_mean": m.cut_mean,
                    "cut_se": m.cut_se,
                    "tree_mean": m.tree_mean,
                    "tree_se": m.tree_se,
                    "z": m.z_score(),
                });
                finish(&cfg, &common.out, Vec::new(), summary)
            }
        },
        Command::Diameter { common, diameter } => {
            let mut cfg = experiment_config(Experiment::Diameter, &common)?;
            if let Some(mode) = diameter {
                cfg.diameter = mode.parse()?;
            }
            cfg.validate()?;
            let d = diameter_ratio(&cfg)?;
            let summary = json!({
                "n": d.n,
                "mode": d.mode,
                "mean_ratio": d.mean_ratio,
                "std_ratio": d.std_ratio,
            });
            finish(&cfg, &common.out, vec![("ratios.csv", ratios_csv(d.n, &d.ratios))], summary)
        }
        Command::Verify { bound, seed, exhaustive_only, skip_statistical } => {
            let mut checks = exhaustive_suite(bound)?;
            if !exhaustive_only {
                let seed = seed.ok_or_else(|| {
                    Failure::Usage("--seed is required unless --exhaustive-only is given".into())
                })?;
                checks.extend(random_suite(seed)?);
                if !skip_statistical {
                    checks.extend(statistical_suite(seed)?);
                }
            }
            let (text, ok) = report(&checks);
            if ok {
                Ok(text)
            } else {
                Err(Failure::Verify(text))
            }
        }
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Gw => "gw",
        Kind::Uniform => "uniform",
        Kind::WellBicoloured => "well-bicoloured",
        Kind::Cut => "cut",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => Err(Failure::Usage(format!("cannot start {t} threads: {e}"))),
        },
        None => run(cli.command),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify(report)) => {
            print!("{report}");
            eprintln!("error: verification failed");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&"w(".parse::<ColouredPlaneTree>().unwrap_err()), EXIT_INPUT);
        assert_eq!(exit_code(&Error::BudgetExceeded { budget: 1 }), EXIT_BUDGET);
        let tagged = Error::Replicate { replicate: 2, source: Box::new(Error::BudgetExceeded { budget: 1 }) };
        assert_eq!(exit_code(&tagged), EXIT_BUDGET);
        assert_eq!(exit_code(&Error::BoundExceeded { n: 9, bound: 8 }), EXIT_USAGE);
    }
}
