use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use super::walk::{for_each_word, PrefixWalk};
use crate::automata::{is_pseudo_stochastic, reduce, tail_masses, Symbol, WeightedAutomaton, Word};
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// Generated words longer than this abort sampling.
pub const MAX_SAMPLE_LEN: usize = 1_000_000;

/// Clamped masses at one prefix of a p_r computation.
#[derive(Debug, Clone, PartialEq)]
pub struct PrunedStep {
    pub prefix: Word,
    /// `Max(r(u), 0)`.
    pub stop_mass: f64,
    /// `Max(r(uxΣ*), 0)` per symbol.
    pub branch_masses: Vec<f64>,
    /// Sum of the clamped masses (`λ_u`).
    pub normalizer: f64,
    /// `p_r(uΣ*)`.
    pub cumulative: f64,
}

/// Evaluator for the stochastic language `p_r` attached to a
/// pseudo-stochastic series `r`.
///
/// Tail masses are computed once. When the given automaton has `ρ ≥ 1` but
/// its series is pseudo-stochastic, the reduced representation is used.
#[derive(Debug, Clone)]
pub struct PrEvaluator {
    automaton: WeightedAutomaton,
    tails: Vec<f64>,
}

/// Cursor of [`PrEvaluator`] along a prefix `u`.
#[derive(Debug, Clone)]
pub struct PrCursor {
    forward: Vec<f64>,
    /// `p_r(uΣ*)`.
    cumulative: f64,
    /// `p_r(u)`.
    value: f64,
    /// `p_r(uxΣ*)` per symbol.
    children: Vec<f64>,
}

impl PrCursor {
    pub fn prefix_value(&self) -> f64 {
        self.cumulative
    }

    pub fn p_value(&self) -> f64 {
        self.value
    }
}

impl PrEvaluator {
    pub fn new(a: &WeightedAutomaton) -> Result<Self> {
        if !is_pseudo_stochastic(a)?.verdict {
            return Err(Error::NotPseudoStochastic);
        }
        let (automaton, tails) = match tail_masses(a) {
            Ok(s) => (a.clone(), s),
            Err(Error::SpectralRadiusNotLtOne | Error::Undecided { .. }) => {
                let r = reduce(a);
                let s = tail_masses(&r)?;
                (r, s)
            }
            Err(e) => return Err(e),
        };
        Ok(PrEvaluator { automaton, tails })
    }

    /// The representation the evaluator works on.
    pub fn automaton(&self) -> &WeightedAutomaton {
        &self.automaton
    }

    pub fn alphabet_len(&self) -> usize {
        self.automaton.alphabet().len()
    }

    /// Clamped `(stop, per-symbol branch)` masses for forward weights `e`.
    pub fn masses(&self, e: &[f64]) -> (f64, Vec<f64>) {
        let a = &self.automaton;
        let stop = a.termination(e).max(0.0);
        let branches = (0..a.alphabet().len())
            .map(|x| {
                let mut m = 0.0;
                for &(p, q, w) in a.edges(x) {
                    m += e[p] * w * self.tails[q];
                }
                m.max(0.0)
            })
            .collect();
        (stop, branches)
    }

    fn cursor(&self, forward: Vec<f64>, cumulative: f64, depth: usize) -> Result<PrCursor> {
        let k = self.alphabet_len();
        if cumulative == 0.0 {
            return Ok(PrCursor {
                forward: Vec::new(),
                cumulative: 0.0,
                value: 0.0,
                children: vec![0.0; k],
            });
        }
        let (stop, branches) = self.masses(&forward);
        let sigma = stop + branches.iter().sum::<f64>();
        if sigma <= 0.0 {
            return Err(Error::DegenerateNormalizer { prefix_len: depth });
        }
        Ok(PrCursor {
            value: cumulative * stop / sigma,
            children: branches.iter().map(|b| cumulative * b / sigma).collect(),
            forward,
            cumulative,
        })
    }

    /// `(p_r(u), p_r(uΣ*))`; `(0, 0)` when `u` leaves the pruned set.
    pub fn evaluate(&self, u: &Word) -> Result<(f64, f64)> {
        let mut c = self.root()?;
        let mut depth = 0;
        for &x in u.symbols() {
            if c.cumulative == 0.0 {
                return Ok((0.0, 0.0));
            }
            depth += 1;
            c = self.child_at(&c, x, depth)?;
        }
        Ok((c.value, c.cumulative))
    }

    fn child_at(&self, c: &PrCursor, x: Symbol, depth: usize) -> Result<PrCursor> {
        if c.cumulative == 0.0 {
            return self.cursor(Vec::new(), 0.0, depth);
        }
        self.cursor(self.automaton.step(&c.forward, x), c.children[x], depth)
    }

    /// One [`PrunedStep`] per prefix of `u` (including `u`) still inside the
    /// pruned set.
    pub fn trace(&self, u: &Word) -> Result<Vec<PrunedStep>> {
        let mut steps = Vec::with_capacity(u.len() + 1);
        let mut e = self.automaton.init().to_vec();
        let mut cumulative = 1.0;
        for i in 0..=u.len() {
            let (stop, branches) = self.masses(&e);
            let normalizer = stop + branches.iter().sum::<f64>();
            steps.push(PrunedStep {
                prefix: u.prefix(i),
                stop_mass: stop,
                branch_masses: branches.clone(),
                normalizer,
                cumulative,
            });
            if i == u.len() {
                break;
            }
            if normalizer <= 0.0 {
                return Err(Error::DegenerateNormalizer { prefix_len: i });
            }
            let x = u.symbols()[i];
            cumulative *= branches[x] / normalizer;
            if cumulative == 0.0 {
                break;
            }
            e = self.automaton.step(&e, x);
        }
        Ok(steps)
    }

    /// Draws one word with probability `p_r(word)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Word> {
        let mut e = self.automaton.init().to_vec();
        let mut word = Vec::new();
        loop {
            let (stop, branches) = self.masses(&e);
            let weights = std::iter::once(stop).chain(branches.iter().copied());
            let dist = WeightedIndex::new(weights).map_err(|_| Error::DegenerateNormalizer {
                prefix_len: word.len(),
            })?;
            match dist.sample(rng) {
                0 => return Ok(Word::new(word)),
                i => {
                    if word.len() == MAX_SAMPLE_LEN {
                        return Err(Error::LengthCapExceeded {
                            cap: MAX_SAMPLE_LEN,
                        });
                    }
                    word.push(i - 1);
                    e = self.automaton.step(&e, i - 1);
                }
            }
        }
    }
}

impl PrefixWalk for PrEvaluator {
    type Cursor = PrCursor;

    fn root(&self) -> Result<PrCursor> {
        self.cursor(self.automaton.init().to_vec(), 1.0, 0)
    }

    fn child(&self, c: &PrCursor, x: Symbol) -> Result<PrCursor> {
        // depth only feeds error messages
        self.child_at(c, x, 0)
    }

    fn value(&self, c: &PrCursor) -> f64 {
        c.value
    }
}

/// `(p_r(u), p_r(uΣ*))` for the series computed by `a`.
pub fn pr_evaluate(a: &WeightedAutomaton, u: &Word) -> Result<(f64, f64)> {
    PrEvaluator::new(a)?.evaluate(u)
}

/// One word drawn from `p_r`, deterministic in `seed`.
pub fn pr_sample(a: &WeightedAutomaton, seed: u64) -> Result<Word> {
    PrEvaluator::new(a)?.sample(&mut rng_from_seed(seed))
}

/// Truncated comparison of `r` with `p_r` over the words of length `≤ L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NrMass {
    /// `Σ_{r(u) ≤ 0} |r(u)|`.
    pub nr_truncated: f64,
    /// `Σ |r(u) − p_r(u)|`.
    pub d1_r_pr_truncated: f64,
    /// `Σ (r(u) − p_r(u))`.
    pub residual_gap: f64,
}

pub fn nr_mass(a: &WeightedAutomaton, max_len: usize) -> Result<NrMass> {
    let pr = PrEvaluator::new(a)?;
    let mut out = NrMass {
        nr_truncated: 0.0,
        d1_r_pr_truncated: 0.0,
        residual_gap: 0.0,
    };
    let walk = (a, &pr);
    for_each_word(&walk, a.alphabet().len(), max_len, |_, c| {
        let r = a.value(&c.0);
        let p = c.1.value;
        if r <= 0.0 {
            out.nr_truncated += -r;
        }
        out.d1_r_pr_truncated += (r - p).abs();
        out.residual_gap += r - p;
    })?;
    Ok(out)
}
