//! Experiment harness: learners × sample sizes × trials against fixed
//! targets, one CSV row per run.

use std::io::{Read, Write};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, WeightedAutomaton};
use crate::baselines::{alergia_infer, mdi_infer, DEFAULT_ALPHA, DEFAULT_GAMMA};
use crate::dees::{dees_infer, DeesConfig};
use crate::error::{Error, Result};
use crate::evalkit::{
    d1_on_support_with, d1_truncated_with, random_pa, sample_from, Sample, Series,
};
use crate::rng::derive_seed;

pub const FIG2_MA: &str = include_str!("../fixtures/fig2.ma");
pub const FIG3B_MA: &str = include_str!("../fixtures/fig3b.ma");

/// Names of the built-in experiments.
pub const BUILTIN: [&str; 3] = ["exp-pa-fig3", "exp-nonrational-fig2", "exp-random-pa"];

pub const CSV_HEADER: &str = "experiment,target,algo,param,n,trial,states,d1,seconds";

/// One learner run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub target: String,
    pub algo: String,
    /// ALERGIA's alpha, MDI's gamma, or the tolerance DEES used.
    pub param: f64,
    pub n: usize,
    pub trial: usize,
    pub states: usize,
    pub d1: f64,
    /// Wall time of the learner; 0 when timing is disabled.
    pub seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algo {
    Dees,
    Alergia(f64),
    Mdi(f64),
}

impl Algo {
    pub fn name(&self) -> &'static str {
        match self {
            Algo::Dees => "dees",
            Algo::Alergia(_) => "alergia",
            Algo::Mdi(_) => "mdi",
        }
    }

    pub fn parse(name: &str, alpha: f64, gamma: f64) -> Result<Self> {
        match name {
            "dees" => Ok(Algo::Dees),
            "alergia" => Ok(Algo::Alergia(alpha)),
            "mdi" => Ok(Algo::Mdi(gamma)),
            other => Err(Error::Malformed(format!("unknown algorithm {other:?}"))),
        }
    }

    /// Learns from `sample`; returns the model and the parameter used.
    pub fn learn(&self, sample: &Sample) -> Result<(WeightedAutomaton, f64)> {
        match *self {
            Algo::Dees => {
                let cfg = DeesConfig::default();
                let eps = cfg.epsilon_policy.epsilon(sample.len());
                Ok((dees_infer(sample, &cfg)?.0, eps))
            }
            Algo::Alergia(alpha) => Ok((alergia_infer(sample, alpha)?, alpha)),
            Algo::Mdi(gamma) => Ok((mdi_infer(sample, gamma)?, gamma)),
        }
    }
}

/// How the distance between target and model is estimated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    /// All words up to the given length.
    Truncated(usize),
    /// Distinct words of this many draws from the target.
    Support(usize),
}

#[derive(Debug, Clone)]
pub struct Target {
    pub id: String,
    pub automaton: WeightedAutomaton,
    /// Compare models against `p_r` of the target rather than its raw series.
    pub target_pr: bool,
    /// Sample sizes to use for this target.
    pub sizes: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub id: String,
    pub targets: Vec<Target>,
    pub algos: Vec<Algo>,
    pub trials: usize,
    pub measure: Measure,
}

fn parse_fixture(text: &str) -> WeightedAutomaton {
    WeightedAutomaton::from_ma_str(text).expect("bundled fixture parses")
}

/// Sample sizes of the learning-curve experiments.
pub const GRID_SIZES: [usize; 6] = [100, 500, 1000, 2000, 5000, 10000];
/// Draws used to build a generated support.
pub const SUPPORT_DRAWS: usize = 50_000;
/// Truncation length for small alphabets.
pub const TRUNCATION: usize = 15;

fn default_measure(a: &WeightedAutomaton) -> Measure {
    if a.alphabet().len() <= 2 {
        Measure::Truncated(TRUNCATION)
    } else {
        Measure::Support(SUPPORT_DRAWS)
    }
}

impl ExperimentSpec {
    /// A built-in experiment by name, with baseline parameters `alpha` and
    /// `gamma`. `root_seed` only matters for `exp-random-pa`, whose targets
    /// are random.
    pub fn builtin(name: &str, alpha: f64, gamma: f64, root_seed: u64) -> Result<Self> {
        let all = vec![Algo::Dees, Algo::Alergia(alpha), Algo::Mdi(gamma)];
        match name {
            "exp-pa-fig3" => Ok(ExperimentSpec {
                id: name.into(),
                targets: vec![Target {
                    id: "fig3b".into(),
                    automaton: parse_fixture(FIG3B_MA),
                    target_pr: false,
                    sizes: GRID_SIZES.to_vec(),
                }],
                algos: all,
                trials: 10,
                measure: Measure::Truncated(TRUNCATION),
            }),
            "exp-nonrational-fig2" => Ok(ExperimentSpec {
                id: name.into(),
                targets: vec![Target {
                    id: "fig2".into(),
                    automaton: parse_fixture(FIG2_MA),
                    target_pr: true,
                    sizes: GRID_SIZES.to_vec(),
                }],
                algos: all,
                trials: 10,
                measure: Measure::Support(SUPPORT_DRAWS),
            }),
            "exp-random-pa" => {
                let abc = Alphabet::new(["a", "b", "c"]).expect("valid alphabet");
                let targets = (2..=25)
                    .map(|n| {
                        Ok(Target {
                            id: format!("random-pa-{n}"),
                            automaton: random_pa(n, &abc, 0.15, derive_seed(root_seed, n as u64))?,
                            target_pr: false,
                            sizes: vec![300 * n],
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(ExperimentSpec {
                    id: name.into(),
                    targets,
                    algos: vec![Algo::Dees, Algo::Alergia(alpha)],
                    trials: 5,
                    measure: Measure::Support(SUPPORT_DRAWS),
                })
            }
            other => Err(Error::Malformed(format!("unknown experiment {other:?}"))),
        }
    }

    /// The learning-curve protocol applied to an arbitrary target.
    pub fn custom(id: &str, target: WeightedAutomaton, alpha: f64, gamma: f64) -> Self {
        ExperimentSpec {
            id: "custom".into(),
            measure: default_measure(&target),
            targets: vec![Target {
                id: id.into(),
                automaton: target,
                target_pr: false,
                sizes: GRID_SIZES.to_vec(),
            }],
            algos: vec![Algo::Dees, Algo::Alergia(alpha), Algo::Mdi(gamma)],
            trials: 10,
        }
    }

    pub fn default_builtin(name: &str, root_seed: u64) -> Result<Self> {
        ExperimentSpec::builtin(name, DEFAULT_ALPHA, DEFAULT_GAMMA, root_seed)
    }

    /// Number of rows [`run_experiment`] produces.
    pub fn num_runs(&self) -> usize {
        let cells: usize = self.targets.iter().map(|t| t.sizes.len()).sum();
        cells * self.trials * self.algos.len()
    }
}

/// Learner models are compared through `p_r` when they are pseudo-stochastic.
/// If `p_r` cannot be evaluated along the way, the raw series is used.
fn model_distance(
    target: &Series,
    model: &WeightedAutomaton,
    support: Option<&Sample>,
    max_len: usize,
) -> Result<f64> {
    let k = model.alphabet().len();
    let run = |m: &Series| match support {
        Some(s) => d1_on_support_with(target, m, s),
        None => d1_truncated_with(target, m, k, max_len),
    };
    let m = Series::pr_or_raw(model);
    match run(&m) {
        Err(Error::DegenerateNormalizer { .. }) if m.is_pr() => run(&Series::Raw(model.clone())),
        r => r,
    }
}

/// Runs every (target, size, trial, algorithm) cell. All algorithms of a
/// cell see the same sample, drawn from the stream
/// `derive_seed(derive_seed(derive_seed(root, target), n), trial)`.
/// With `timing` off the `seconds` column is 0 and the output is a
/// function of the spec and seed alone.
pub fn run_experiment(
    spec: &ExperimentSpec,
    root_seed: u64,
    timing: bool,
) -> Result<Vec<ExperimentRecord>> {
    let mut rows = Vec::with_capacity(spec.num_runs());
    for (ti, t) in spec.targets.iter().enumerate() {
        let tseed = derive_seed(root_seed, ti as u64);
        let target = Series::new(&t.automaton, t.target_pr)?;
        let (support, max_len) = match spec.measure {
            Measure::Truncated(l) => (None, l),
            Measure::Support(draws) => (
                Some(sample_from(
                    &t.automaton,
                    draws,
                    derive_seed(tseed, u64::MAX),
                )?),
                0,
            ),
        };
        for &n in &t.sizes {
            for trial in 0..spec.trials {
                let seed = derive_seed(derive_seed(tseed, n as u64), trial as u64);
                let sample = sample_from(&t.automaton, n, seed)?;
                for algo in &spec.algos {
                    let start = Instant::now();
                    let (model, param) = algo.learn(&sample)?;
                    let seconds = if timing {
                        start.elapsed().as_secs_f64()
                    } else {
                        0.0
                    };
                    let d1 = model_distance(&target, &model, support.as_ref(), max_len)?;
                    rows.push(ExperimentRecord {
                        experiment: spec.id.clone(),
                        target: t.id.clone(),
                        algo: algo.name().into(),
                        param,
                        n,
                        trial,
                        states: model.num_states(),
                        d1,
                        seconds,
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize()
        .map(|row| row.map_err(|e| Error::Malformed(e.to_string())))
        .collect()
}
