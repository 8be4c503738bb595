use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use psrl::automata::{
    evaluate_prefix, is_pseudo_stochastic, reduce, series_sum, WeightedAutomaton,
};
use psrl::baselines::{alergia_infer, mdi_infer, DEFAULT_ALPHA, DEFAULT_GAMMA};
use psrl::dees::{dees_infer, DeesConfig, EpsilonPolicy};
use psrl::evalkit::{sample_from, Sample};
use psrl::experiment::{run_experiment, write_csv, ExperimentSpec, Measure};
use psrl::psl::pr_evaluate;
use psrl::rng::GENERATOR;
use psrl::{Error, Result};

#[derive(Parser)]
#[command(
    name = "psrl",
    version,
    about = "Multiplicity automata and stochastic language learners"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Automaton utilities.
    #[command(subcommand)]
    Ma(MaCmd),
    /// Learn an automaton from a sample file.
    Infer(InferArgs),
    /// Experiment harness.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Subcommand)]
enum MaCmd {
    /// Decide whether the series is a pseudo-stochastic language.
    Check { file: PathBuf },
    /// Value of a word, or its p_r probability with --pr.
    Eval {
        file: PathBuf,
        word: String,
        #[arg(long)]
        pr: bool,
    },
    /// Prefix mass r(uΣ*), or p_r(uΣ*) with --pr.
    Prefix {
        file: PathBuf,
        word: String,
        #[arg(long)]
        pr: bool,
    },
    /// Sum of the series over all words.
    Sum { file: PathBuf },
    /// Minimal equivalent automaton.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a sample (p_r for automata that are not probabilistic).
    Sample {
        file: PathBuf,
        #[arg(short, long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InferArgs {
    /// dees, alergia or mdi.
    algo: String,
    sample: PathBuf,
    /// DEES tolerance, ALERGIA alpha or MDI gamma.
    #[arg(long)]
    param: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// DEES only: write the decision trace here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Run a built-in experiment or the learning-curve protocol on --target.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// exp-pa-fig3, exp-nonrational-fig2 or exp-random-pa.
    #[arg(required_unless_present = "target")]
    spec: Option<String>,
    #[arg(long, conflicts_with = "spec")]
    target: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    gamma: f64,
    /// Compare on all words up to this length instead of the default measure.
    #[arg(long)]
    max_len: Option<usize>,
    /// Override the number of trials per cell.
    #[arg(long)]
    trials: Option<usize>,
    /// Record wall time; the CSV is then no longer reproducible.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("psrl: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Ma(c) => ma(c),
        Cmd::Infer(a) => infer(a),
        Cmd::Experiment(ExperimentCmd::Run(a)) => experiment(a),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ma(cmd: MaCmd) -> Result<()> {
    match cmd {
        MaCmd::Check { file } => {
            let c = is_pseudo_stochastic(&WeightedAutomaton::read_ma(file)?)?;
            println!("verdict {}", c.verdict);
            println!("reduced_dimension {}", c.reduced_dimension);
            println!("spectral_radius {}", c.spectral_radius_value);
            match c.series_total {
                Some(s) => println!("series_sum {s}"),
                None => println!("series_sum diverges"),
            }
        }
        MaCmd::Eval { file, word, pr } => {
            let a = WeightedAutomaton::read_ma(file)?;
            let w = a.alphabet().parse_word(&word)?;
            let v = if pr {
                pr_evaluate(&a, &w)?.0
            } else {
                a.evaluate(&w)
            };
            println!("{v}");
        }
        MaCmd::Prefix { file, word, pr } => {
            let a = WeightedAutomaton::read_ma(file)?;
            let w = a.alphabet().parse_word(&word)?;
            let v = if pr {
                pr_evaluate(&a, &w)?.1
            } else {
                evaluate_prefix(&a, &w)?
            };
            println!("{v}");
        }
        MaCmd::Sum { file } => println!("{}", series_sum(&WeightedAutomaton::read_ma(file)?)?),
        MaCmd::Reduce { file, out } => {
            let r = reduce(&WeightedAutomaton::read_ma(file)?);
            emit(&r.to_ma_string(), out.as_deref())?;
        }
        MaCmd::Sample { file, n, seed, out } => {
            let s = sample_from(&WeightedAutomaton::read_ma(file)?, n, seed)?;
            emit(&s.to_sample_string(), out.as_deref())?;
        }
    }
    Ok(())
}

fn infer(args: InferArgs) -> Result<()> {
    let sample = Sample::read(&args.sample)?;
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if args.trace.is_some() && args.algo != "dees" {
        return Err(Error::Malformed("--trace only applies to dees".into()));
    }
    let model = match args.algo.as_str() {
        "dees" => {
            let mut cfg = DeesConfig::default();
            if let Some(e) = args.param {
                cfg.epsilon_policy = EpsilonPolicy::Fixed(e);
            }
            let (model, trace) = dees_infer(&sample, &cfg)?;
            if let Some(p) = &args.trace {
                std::fs::write(p, trace.render(sample.alphabet()))?;
            }
            model
        }
        "alergia" => alergia_infer(&sample, args.param.unwrap_or(DEFAULT_ALPHA))?,
        "mdi" => mdi_infer(&sample, args.param.unwrap_or(DEFAULT_GAMMA))?,
        other => return Err(Error::Malformed(format!("unknown algorithm {other:?}"))),
    };
    emit(&model.to_ma_string(), args.out.as_deref())
}

fn experiment(args: RunArgs) -> Result<()> {
    let mut spec = match (&args.spec, &args.target) {
        (_, Some(path)) => {
            let id = path
                .file_stem()
                .map_or("target".into(), |s| s.to_string_lossy().into_owned());
            let a = WeightedAutomaton::read_ma(path)?;
            ExperimentSpec::custom(&id, a, args.alpha, args.gamma)
        }
        (Some(name), None) => ExperimentSpec::builtin(name, args.alpha, args.gamma, args.seed)?,
        (None, None) => return Err(Error::Malformed("no experiment given".into())),
    };
    if let Some(l) = args.max_len {
        spec.measure = Measure::Truncated(l);
    }
    if let Some(t) = args.trials {
        spec.trials = t;
    }
    let rows = run_experiment(&spec, args.seed, args.timing)?;
    write_csv(&rows, BufWriter::new(File::create(&args.out)?))?;

    let mut meta = args.out.clone().into_os_string();
    meta.push(".meta");
    std::fs::write(
        meta,
        format!(
            "experiment {}\nseed {}\ngenerator {GENERATOR}\nrows {}\n",
            spec.id,
            args.seed,
            rows.len()
        ),
    )?;
    Ok(())
}
