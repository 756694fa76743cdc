//! Command-line driver: sequence generation, Plancherel sampling, merge
//! batches, maximum search, exhaustive tables, difference analysis, and
//! limit fits. All outputs are deterministic functions of the configuration;
//! progress chatter goes to stderr only.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use youngdim::analysis::{
    diff_csv, differences, fit_csv, fit_limit, fmt_real, level_report, level_report_csv,
    samples_csv,
};
use youngdim::config::{derive_stream_seed, RunConfig};
use youngdim::diagram::{Diagram, Mode};
use youngdim::growth::{merge_experiment, plancherel_sample, GrowthSequence};
use youngdim::io::{
    best_sequence_csv, level_max_table_csv, merge_batch_csv, sequence_from_str, sequence_to_string,
};
use youngdim::search::{exhaustive_max_with_cap, improved_search};

#[derive(Parser)]
#[command(name = "youngdim", version, about = "Young/Schur graph growth and dimension experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Config file (key=value); flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Graph mode: standard | strict.
    #[arg(long)]
    mode: Option<Mode>,
    /// Target size in boxes.
    #[arg(long)]
    target: Option<u64>,
    /// Base RNG seed; per-purpose streams derive from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Grow a greedy sequence and persist it with per-level samples.
    Greedy {
        #[command(flatten)]
        common: Common,
        /// Start partition, e.g. "5,4,2,1"; empty = graph root.
        #[arg(long, default_value = "")]
        start: String,
        /// Resume from a sequence file instead of starting fresh.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Sample a Plancherel-process diagram of the target size.
    Plancherel {
        #[command(flatten)]
        common: Common,
    },
    /// Run a batch of merge experiments between Plancherel pairs.
    Merge {
        #[command(flatten)]
        common: Common,
        /// Number of pairs.
        #[arg(long, default_value_t = 100)]
        pairs: u64,
        /// Budget of added boxes per sequence.
        #[arg(long, default_value_t = 1000)]
        budget: u64,
    },
    /// Multi-start improvement search for maximum-dimension diagrams.
    Search {
        #[command(flatten)]
        common: Common,
        /// Seed partitions (repeatable); default: the empty diagram.
        #[arg(long)]
        start: Vec<String>,
        /// Plancherel samples per restart batch.
        #[arg(long)]
        seeds: Option<usize>,
        /// Restart level factor in (0,1).
        #[arg(long)]
        restart: Option<f64>,
        /// Perturbation depth for restart samples.
        #[arg(long)]
        perturb: Option<u32>,
        /// Restart sweeps.
        #[arg(long)]
        sweeps: Option<u32>,
    },
    /// Exhaustive maximum table by dynamic programming.
    Exhaustive {
        #[command(flatten)]
        common: Common,
        /// Highest level to compute.
        #[arg(long)]
        nmax: u64,
        /// Override the DP capacity bound.
        #[arg(long)]
        max_dp: Option<u64>,
    },
    /// Finite-difference analysis of a persisted sequence.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Sequence file to analyze.
        #[arg(long)]
        input: PathBuf,
        /// Report window "lo:hi"; default [N/5, N].
        #[arg(long)]
        window: Option<String>,
    },
    /// Least-squares fit of c(n) ~ C + a/sqrt(n).
    Fit {
        #[command(flatten)]
        common: Common,
        /// Samples CSV (n,c) or sequence file.
        #[arg(long)]
        input: PathBuf,
        /// Fit window "lo:hi"; default [N/5, N].
        #[arg(long)]
        window: Option<String>,
    },
}

struct CliError {
    code: &'static str,
    message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

type CliResult<T> = Result<T, CliError>;

trait Ctx<T> {
    fn ctx(self, code: &'static str) -> CliResult<T>;
}

impl<T, E: std::fmt::Display> Ctx<T> for Result<T, E> {
    fn ctx(self, code: &'static str) -> CliResult<T> {
        self.map_err(|e| CliError::new(code, e.to_string()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ERROR:{}:{}", e.code, e.message);
            ExitCode::FAILURE
        }
    }
}

fn load_config(common: &Common) -> CliResult<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &common.config {
        let text = fs::read_to_string(path).ctx("IO")?;
        cfg.apply(&text).ctx("CONFIG")?;
    }
    if let Some(mode) = common.mode {
        cfg.mode = mode;
    }
    if let Some(target) = common.target {
        cfg.target = target;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.out_dir = out.clone();
    }
    cfg.validate().ctx("CONFIG")?;
    Ok(cfg)
}

fn parse_window(flag: &Option<String>, default: (u64, u64)) -> CliResult<(u64, u64)> {
    match flag {
        None => Ok(default),
        Some(text) => {
            let (lo, hi) = text
                .split_once(':')
                .ok_or_else(|| CliError::new("ARG", format!("window must be lo:hi, got {text:?}")))?;
            let lo = lo.parse().ctx("ARG")?;
            let hi = hi.parse().ctx("ARG")?;
            Ok((lo, hi))
        }
    }
}

fn write_out(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).ctx("IO")?;
    let path = dir.join(name);
    let tmp = dir.join(format!("{name}.tmp"));
    fs::write(&tmp, contents).ctx("IO")?;
    fs::rename(&tmp, &path).ctx("IO")?;
    eprintln!("wrote {}", path.display());
    Ok(path)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::Greedy { common, start, resume } => cmd_greedy(&common, &start, resume.as_deref()),
        Cmd::Plancherel { common } => cmd_plancherel(&common),
        Cmd::Merge { common, pairs, budget } => cmd_merge(&common, pairs, budget),
        Cmd::Search { common, start, seeds, restart, perturb, sweeps } => {
            cmd_search(&common, &start, seeds, restart, perturb, sweeps)
        }
        Cmd::Exhaustive { common, nmax, max_dp } => cmd_exhaustive(&common, nmax, max_dp),
        Cmd::Analyze { common, input, window } => cmd_analyze(&common, &input, &window),
        Cmd::Fit { common, input, window } => cmd_fit(&common, &input, &window),
    }
}

/// Grows greedily in chunks of 10^4 boxes, checkpointing the sequence file
/// after every chunk so long runs survive interruption and stay resumable.
fn cmd_greedy(common: &Common, start: &str, resume: Option<&Path>) -> CliResult<()> {
    let cfg = load_config(common)?;
    let deadline = Instant::now() + std::time::Duration::from_secs(cfg.max_minutes * 60);
    let mut seq = match resume {
        Some(path) => {
            let text = fs::read_to_string(path).ctx("IO")?;
            let seq = sequence_from_str(&text).ctx("FORMAT")?;
            if seq.mode() != cfg.mode {
                return Err(CliError::new(
                    "ARG",
                    format!("resume file is {} mode, config says {}", seq.mode(), cfg.mode),
                ));
            }
            seq
        }
        None => {
            let initial: Diagram = start.parse().ctx("FORMAT")?;
            GrowthSequence::new(initial, cfg.mode).ctx("ARG")?
        }
    };
    if seq.size() > cfg.target {
        return Err(CliError::new(
            "ARG",
            format!("start size {} exceeds target {}", seq.size(), cfg.target),
        ));
    }
    let name = format!("greedy_{}_{}.seq", cfg.mode, cfg.target);
    while seq.size() < cfg.target {
        let next = (seq.size() + 10_000).min(cfg.target);
        seq.grow_greedy_to(next).ctx("INTERNAL")?;
        write_out(&cfg.out_dir, &name, &sequence_to_string(&seq))?;
        if Instant::now() > deadline && seq.size() < cfg.target {
            return Err(CliError::new(
                "CAP",
                format!(
                    "max_minutes={} exceeded at size {}; checkpoint kept, resume with --resume",
                    cfg.max_minutes,
                    seq.size()
                ),
            ));
        }
    }
    write_out(&cfg.out_dir, &name, &sequence_to_string(&seq))?;
    let csv_name = format!("greedy_{}_{}_samples.csv", cfg.mode, cfg.target);
    write_out(&cfg.out_dir, &csv_name, &samples_csv(&seq))?;
    if seq.tie_count() > 0 {
        eprintln!("greedy ties broken toward smaller columns: {}", seq.tie_count());
    }
    Ok(())
}

fn cmd_plancherel(common: &Common) -> CliResult<()> {
    let cfg = load_config(common)?;
    let stream = derive_stream_seed(cfg.seed, "plancherel", 0);
    let d = plancherel_sample(cfg.mode, cfg.target, stream);
    let name = format!("plancherel_{}_{}_{}.txt", cfg.mode, cfg.target, cfg.seed);
    write_out(&cfg.out_dir, &name, &format!("{d}\n"))?;
    Ok(())
}

fn cmd_merge(common: &Common, pairs: u64, budget: u64) -> CliResult<()> {
    if pairs < 1 {
        return Err(CliError::new("ARG", "pairs must be >= 1"));
    }
    if budget < 1 {
        return Err(CliError::new("ARG", "budget must be >= 1"));
    }
    let cfg = load_config(common)?;
    let mut results = Vec::with_capacity(pairs as usize);
    for i in 0..pairs {
        let a = plancherel_sample(cfg.mode, cfg.target, derive_stream_seed(cfg.seed, "merge-a", i));
        let b = plancherel_sample(cfg.mode, cfg.target, derive_stream_seed(cfg.seed, "merge-b", i));
        let (na, nb) = (a.size(), b.size());
        let r = merge_experiment(a, b, cfg.mode, budget).ctx("INTERNAL")?;
        eprintln!(
            "pair {i}: merged_at={:?} steps=({}, {})",
            r.merged_at_size, r.steps_a, r.steps_b
        );
        results.push((na, nb, r));
    }
    let name = format!("merge_{}_{}x{}_{}.csv", cfg.mode, pairs, cfg.target, cfg.seed);
    write_out(&cfg.out_dir, &name, &merge_batch_csv(&results))?;
    Ok(())
}

fn cmd_search(
    common: &Common,
    start: &[String],
    seeds: Option<usize>,
    restart: Option<f64>,
    perturb: Option<u32>,
    sweeps: Option<u32>,
) -> CliResult<()> {
    let mut cfg = load_config(common)?;
    if let Some(v) = seeds {
        cfg.seed_count = v;
    }
    if let Some(v) = restart {
        cfg.restart_factor = v;
    }
    if let Some(v) = perturb {
        cfg.perturb_depth = v;
    }
    if let Some(v) = sweeps {
        cfg.sweeps = v;
    }
    cfg.validate().ctx("CONFIG")?;
    let seed_diagrams: Vec<Diagram> = if start.is_empty() {
        vec![Diagram::empty()]
    } else {
        start
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()
            .ctx("FORMAT")?
    };
    let best = improved_search(&seed_diagrams, cfg.target, cfg.mode, &cfg.search_config())
        .ctx("ARG")?;
    let name = format!("search_{}_{}.csv", cfg.mode, cfg.target);
    write_out(&cfg.out_dir, &name, &best_sequence_csv(&best))?;
    Ok(())
}

fn cmd_exhaustive(common: &Common, nmax: u64, max_dp: Option<u64>) -> CliResult<()> {
    let cfg = load_config(common)?;
    let cap = max_dp.or(cfg.max_dp_level).unwrap_or(match cfg.mode {
        Mode::Standard => youngdim::search::DEFAULT_DP_CAP_STANDARD,
        Mode::Strict => youngdim::search::DEFAULT_DP_CAP_STRICT,
    });
    let table = exhaustive_max_with_cap(nmax, cfg.mode, cap).ctx("CAPACITY")?;
    let csv = level_max_table_csv(&table).ctx("INTERNAL")?;
    let name = format!("exhaustive_{}_{}.csv", cfg.mode, nmax);
    write_out(&cfg.out_dir, &name, &csv)?;
    Ok(())
}

fn cmd_analyze(common: &Common, input: &Path, window: &Option<String>) -> CliResult<()> {
    let cfg = load_config(common)?;
    let text = fs::read_to_string(input).ctx("IO")?;
    let seq = sequence_from_str(&text).ctx("FORMAT")?;
    let series = differences(&seq).ctx("ARG")?;
    let n_max = seq.size();
    let report_window = parse_window(window, ((n_max / 5).max(2), n_max))?;
    let report = level_report(&series, report_window).ctx("ARG")?;
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sequence".into());
    write_out(&cfg.out_dir, &format!("{stem}_diffs.csv"), &diff_csv(&series))?;
    write_out(&cfg.out_dir, &format!("{stem}_levels.csv"), &level_report_csv(&report))?;
    eprintln!(
        "window [{}, {}]: s in [{:.6}, {:.6}], deepest fall at row {}",
        report.window.0, report.window.1, report.global_min, report.global_max, report.argmin_row
    );
    Ok(())
}

/// Accepts either a samples CSV (header `n,c`) or a sequence file (replayed).
fn read_c_series(text: &str) -> CliResult<Vec<(u64, f64)>> {
    let first = text.lines().next().unwrap_or_default();
    if first == "n,c" {
        let mut points = Vec::new();
        for (i, line) in text.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let (n, c) = line
                .split_once(',')
                .ok_or_else(|| CliError::new("FORMAT", format!("line {}: not n,c", i + 1)))?;
            points.push((n.parse().ctx("FORMAT")?, c.parse().ctx("FORMAT")?));
        }
        Ok(points)
    } else if first.starts_with("standard;") || first.starts_with("strict;") {
        let seq = sequence_from_str(text).ctx("FORMAT")?;
        Ok(seq.samples().iter().filter(|s| s.n > 0).map(|s| (s.n, s.c)).collect())
    } else {
        Err(CliError::new("FORMAT", "input is neither a samples CSV nor a sequence file"))
    }
}

fn cmd_fit(common: &Common, input: &Path, window: &Option<String>) -> CliResult<()> {
    let cfg = load_config(common)?;
    let text = fs::read_to_string(input).ctx("IO")?;
    let points = read_c_series(&text)?;
    let n_max = points.iter().map(|p| p.0).max().unwrap_or(0);
    let fit_window = parse_window(window, ((n_max / 5).max(2), n_max))?;
    let fit = fit_limit(&points, fit_window).ctx("ARG")?;
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".into());
    write_out(&cfg.out_dir, &format!("{stem}_fit.csv"), &fit_csv(&points, &fit))?;
    let mut line = String::new();
    let _ = write!(
        line,
        "C={};a={};rms={};window={}:{}",
        fmt_real(fit.limit),
        fmt_real(fit.coeff),
        fmt_real(fit.rms),
        fit.window.0,
        fit.window.1
    );
    println!("{line}");
    Ok(())
}
