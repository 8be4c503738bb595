//! DEES: inference of a prefix-closed multiplicity automaton from a sample.
//!
//! States are words. Each frontier word `v = ux` is either expressed as a
//! linear combination of the residuals of the current states (an LP
//! feasibility test on empirical residuals, tolerance `ε`) or promoted to a
//! new state.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::automata::{is_pseudo_stochastic, Alphabet, PslCertificate, WeightedAutomaton, Word};
use crate::error::{Error, Result};
use crate::evalkit::{EmpiricalDistribution, Sample};
use crate::numkit::{lp_feasible, ConstraintSystem, FeasibilityResult};

/// How the tolerance `ε` of the residual systems is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonPolicy {
    Fixed(f64),
    /// `ε = |S|^(-1/3)`.
    SizePower,
}

impl EpsilonPolicy {
    pub fn epsilon(&self, sample_size: usize) -> f64 {
        match *self {
            EpsilonPolicy::Fixed(e) => e,
            EpsilonPolicy::SizePower => (sample_size as f64).powf(-1.0 / 3.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeesConfig {
    pub epsilon_policy: EpsilonPolicy,
    /// Inference stops with [`Error::StateCapExceeded`] past this many states.
    pub max_states: usize,
    pub witness: WitnessPolicy,
}

/// Which solution of a feasible residual system becomes the transition
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessPolicy {
    /// The basic solution returned by the feasibility test at tolerance `ε`.
    Vertex,
    /// A solution at the smallest tolerance `ε' ≤ ε` for which the system
    /// stays feasible, located by bisection to relative precision 1e-6.
    Tightest,
}

impl Default for DeesConfig {
    fn default() -> Self {
        DeesConfig {
            epsilon_policy: EpsilonPolicy::SizePower,
            max_states: 200,
            witness: WitnessPolicy::Tightest,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    NewState,
    /// LP witness, one coefficient per state in state order.
    Combination(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub frontier: Word,
    /// States the frontier word was tested against, in order.
    pub states: Vec<Word>,
    pub system: ConstraintSystem,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeesTrace {
    pub epsilon: f64,
    pub decisions: Vec<Decision>,
    /// Pseudo-stochastic check of the output; `None` when undecided.
    pub certificate: Option<PslCertificate>,
}

impl DeesTrace {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("dees-trace v1\n");
        let _ = writeln!(out, "epsilon {}", self.epsilon);
        for d in &self.decisions {
            let _ = write!(
                out,
                "step {} vars={} rows={} ",
                alphabet.render(&d.frontier),
                d.system.num_vars,
                d.system.abs_rows.len()
            );
            match &d.outcome {
                Outcome::NewState => out.push_str("new-state\n"),
                Outcome::Combination(alpha) => {
                    out.push_str("combination");
                    for (u, a) in d.states.iter().zip(alpha) {
                        let _ = write!(out, " {}={}", alphabet.render(u), a);
                    }
                    out.push('\n');
                }
            }
        }
        match &self.certificate {
            Some(c) => {
                let total = c.series_total.map_or("none".to_string(), |t| t.to_string());
                let _ = writeln!(
                    out,
                    "psl verdict={} radius={} total={}",
                    c.verdict, c.spectral_radius_value, total
                );
            }
            None => out.push_str("psl undecided\n"),
        }
        out
    }
}

fn node_of(dist: &EmpiricalDistribution, u: &Word) -> Result<usize> {
    dist.node(u)
        .filter(|&n| dist.node_prefix_count(n) > 0)
        .ok_or(Error::ZeroPrefixMass {
            prefix_len: u.len(),
        })
}

/// The residual system `I(Q, v, S, ε)` with one row per distinct factor of
/// the sample words (`ε` included) and the equality `Σ X_u = 1`. Variables
/// follow the order of `q`.
pub fn build_constraint_system(
    q: &[Word],
    v: &Word,
    dist: &EmpiricalDistribution,
    epsilon: f64,
) -> Result<ConstraintSystem> {
    let nodes = q
        .iter()
        .map(|u| node_of(dist, u))
        .collect::<Result<Vec<_>>>()?;
    let vn = node_of(dist, v)?;
    let residual = |n: usize, w: &Word| {
        dist.node_from(n, w.symbols())
            .map_or(0.0, |m| dist.node_prefix_count(m) as f64)
            / dist.node_prefix_count(n) as f64
    };
    let mut sys = ConstraintSystem::new(q.len());
    for w in dist.factors() {
        let coeffs = nodes.iter().map(|&n| residual(n, &w)).collect();
        sys.push_abs(coeffs, residual(vn, &w), epsilon);
    }
    sys.push_eq(vec![1.0; q.len()], 1.0);
    Ok(sys)
}

/// Same feasibility problem as [`build_constraint_system`] restricted to the
/// rows with a nonzero coefficient or target: the suffixes `w` for which some
/// `uw` with `u ∈ q ∪ {v}` is a sample prefix. Other rows read `0 ≤ ε`.
fn support_system(
    q_nodes: &[usize],
    v_node: usize,
    dist: &EmpiricalDistribution,
    epsilon: f64,
) -> ConstraintSystem {
    let k = dist.alphabet().len();
    let mut starts: Vec<Option<usize>> = q_nodes.iter().map(|&n| Some(n)).collect();
    starts.push(Some(v_node));
    let denom: Vec<f64> = starts
        .iter()
        .map(|n| dist.node_prefix_count(n.unwrap()) as f64)
        .collect();
    let mut sys = ConstraintSystem::new(q_nodes.len());
    let mut queue = VecDeque::from([starts]);
    while let Some(tuple) = queue.pop_front() {
        let vals: Vec<f64> = tuple
            .iter()
            .zip(&denom)
            .map(|(n, d)| n.map_or(0.0, |m| dist.node_prefix_count(m) as f64) / d)
            .collect();
        let (target, coeffs) = vals.split_last().expect("v is present");
        sys.push_abs(coeffs.to_vec(), *target, epsilon);
        for x in 0..k {
            let next: Vec<Option<usize>> = tuple
                .iter()
                .map(|n| n.and_then(|m| dist.child(m, x)))
                .collect();
            if next.iter().any(Option::is_some) {
                queue.push_back(next);
            }
        }
    }
    sys.push_eq(vec![1.0; q_nodes.len()], 1.0);
    sys
}

fn with_bound(system: &ConstraintSystem, bound: f64) -> ConstraintSystem {
    let mut s = system.clone();
    s.abs_rows.iter_mut().for_each(|r| r.bound = bound);
    s
}

const BISECTION_STEPS: usize = 20;

fn solve(system: &ConstraintSystem, policy: WitnessPolicy) -> Result<FeasibilityResult> {
    let first = lp_feasible(system)?;
    let (WitnessPolicy::Tightest, FeasibilityResult::Feasible(w)) = (policy, &first) else {
        return Ok(first);
    };
    let mut best = w.clone();
    let mut hi = system.abs_rows.iter().map(|r| r.bound).fold(0.0, f64::max);
    let mut lo = 0.0;
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        match lp_feasible(&with_bound(system, mid))? {
            FeasibilityResult::Feasible(w) => {
                best = w;
                hi = mid;
            }
            FeasibilityResult::Infeasible => lo = mid,
        }
    }
    Ok(FeasibilityResult::Feasible(best))
}

/// Runs DEES on `sample`.
pub fn dees_infer(sample: &Sample, config: &DeesConfig) -> Result<(WeightedAutomaton, DeesTrace)> {
    let dist = sample.empirical()?;
    if config.max_states == 0 {
        return Err(Error::Malformed("max_states must be at least 1".into()));
    }
    if let EpsilonPolicy::Fixed(e) = config.epsilon_policy {
        if !(e > 0.0 && e.is_finite()) {
            return Err(Error::Malformed(format!(
                "epsilon must be positive, got {e}"
            )));
        }
    }
    let epsilon = config.epsilon_policy.epsilon(dist.total());
    let alphabet = sample.alphabet().clone();
    let k = alphabet.len();
    let total = dist.total() as f64;
    let mass = |n: usize| dist.node_prefix_count(n) as f64 / total;

    let root = dist.root();
    let mut states = vec![Word::empty()];
    let mut nodes = vec![root];
    let mut term = vec![dist.node_word_count(root) as f64 / total];
    let mut trans = BTreeMap::new();
    let mut frontier: BTreeSet<(Word, usize)> = (0..k)
        .filter_map(|x| dist.child(root, x).map(|c| (Word::new(vec![x]), c)))
        .collect();
    let mut decisions = Vec::new();

    while let Some((v, vn)) = frontier.pop_first() {
        let (u, x) = v.split_last().expect("frontier words are nonempty");
        let ui = states
            .iter()
            .position(|s| *s == u)
            .expect("parent is a state");
        let un = nodes[ui];
        let ratio = mass(vn) / mass(un);

        let system = support_system(&nodes, vn, &dist, epsilon);
        let outcome = match solve(&system, config.witness)? {
            FeasibilityResult::Infeasible => {
                if states.len() == config.max_states {
                    return Err(Error::StateCapExceeded {
                        cap: config.max_states,
                    });
                }
                let vi = states.len();
                states.push(v.clone());
                nodes.push(vn);
                term.push(dist.node_word_count(vn) as f64 / dist.node_prefix_count(vn) as f64);
                trans.insert((ui, x, vi), ratio);
                for y in 0..k {
                    if let Some(c) = dist.child(vn, y) {
                        frontier.insert((v.child(y), c));
                    }
                }
                Outcome::NewState
            }
            FeasibilityResult::Feasible(alpha) => {
                for (wi, a) in alpha.iter().enumerate() {
                    trans.insert((ui, x, wi), a * ratio);
                }
                Outcome::Combination(alpha)
            }
        };
        decisions.push(Decision {
            frontier: v,
            states: states[..system.num_vars].to_vec(),
            system,
            outcome,
        });
    }

    let mut init = vec![0.0; states.len()];
    init[0] = 1.0;
    let names = states.iter().map(|w| alphabet.render(w)).collect();
    let a = WeightedAutomaton::new(alphabet, names, init, term, trans)?;
    let certificate = is_pseudo_stochastic(&a).ok();
    Ok((
        a,
        DeesTrace {
            epsilon,
            decisions,
            certificate,
        },
    ))
}
