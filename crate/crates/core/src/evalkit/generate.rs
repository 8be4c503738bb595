use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use super::sample::Sample;
use crate::automata::{validate_pa, Alphabet, WeightedAutomaton, Word};
use crate::error::{Error, Result};
use crate::psl::{PrEvaluator, MAX_SAMPLE_LEN};
use crate::rng::{derive_seed, rng_from_seed};

/// Lower bound on the raw stop weight drawn by [`random_pa`].
pub const STOP_FLOOR: f64 = 0.01;

/// Stop-or-step sampler for a probabilistic automaton.
#[derive(Debug, Clone)]
pub struct PaSampler {
    initial: WeightedIndex<f64>,
    // per state: choice 0 stops, choice i > 0 takes moves[q][i - 1]
    choices: Vec<WeightedIndex<f64>>,
    moves: Vec<Vec<(usize, usize)>>,
}

impl PaSampler {
    pub fn new(a: &WeightedAutomaton) -> Result<Self> {
        if !validate_pa(a) {
            return Err(Error::Malformed("automaton is not a PA".into()));
        }
        let n = a.num_states();
        let clamp = |w: f64| w.max(0.0);
        let initial = WeightedIndex::new(a.init().iter().map(|&w| clamp(w)))
            .map_err(|e| Error::Malformed(e.to_string()))?;
        let mut weights: Vec<Vec<f64>> = a.term().iter().map(|&t| vec![clamp(t)]).collect();
        let mut moves = vec![Vec::new(); n];
        for ((p, x, q), w) in a.transitions() {
            weights[p].push(clamp(w));
            moves[p].push((x, q));
        }
        let choices = weights
            .into_iter()
            .map(|w| WeightedIndex::new(w).map_err(|e| Error::Malformed(e.to_string())))
            .collect::<Result<_>>()?;
        Ok(PaSampler {
            initial,
            choices,
            moves,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Word> {
        let mut q = self.initial.sample(rng);
        let mut word = Vec::new();
        loop {
            match self.choices[q].sample(rng) {
                0 => return Ok(Word::new(word)),
                i => {
                    if word.len() == MAX_SAMPLE_LEN {
                        return Err(Error::LengthCapExceeded {
                            cap: MAX_SAMPLE_LEN,
                        });
                    }
                    let (x, next) = self.moves[q][i - 1];
                    word.push(x);
                    q = next;
                }
            }
        }
    }
}

/// `n` independent draws from `a`. A probabilistic automaton is walked
/// directly; any other pseudo-stochastic automaton is sampled through `p_r`.
/// Draw `i` uses the stream `derive_seed(seed, i)`.
pub fn sample_from(a: &WeightedAutomaton, n: usize, seed: u64) -> Result<Sample> {
    let mut words = Vec::with_capacity(n);
    if validate_pa(a) {
        let s = PaSampler::new(a)?;
        for i in 0..n {
            words.push(s.sample(&mut rng_from_seed(derive_seed(seed, i as u64)))?);
        }
    } else {
        let pr = PrEvaluator::new(a)?;
        for i in 0..n {
            words.push(pr.sample(&mut rng_from_seed(derive_seed(seed, i as u64)))?);
        }
    }
    Sample::new(a.alphabet().clone(), words)
}

/// Random probabilistic automaton with every state reachable.
///
/// State `q0` is initial. Each later state hangs off a uniformly chosen
/// earlier state by a uniformly chosen symbol; every other triple is then
/// added with probability `density`. Stop and transition weights of a state
/// are independent uniforms, the stop weight floored at [`STOP_FLOOR`],
/// normalized to sum to 1.
pub fn random_pa(
    n_states: usize,
    alphabet: &Alphabet,
    density: f64,
    seed: u64,
) -> Result<WeightedAutomaton> {
    if n_states == 0 {
        return Err(Error::Malformed("need at least one state".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Malformed(format!(
            "density {density} outside [0, 1]"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let k = alphabet.len();
    let mut edges = BTreeMap::new();
    for q in 1..n_states {
        let p = rng.gen_range(0..q);
        let x = rng.gen_range(0..k);
        edges.insert((p, x, q), 0.0);
    }
    for p in 0..n_states {
        for x in 0..k {
            for q in 0..n_states {
                let add = rng.gen_bool(density);
                if add {
                    edges.entry((p, x, q)).or_insert(0.0);
                }
            }
        }
    }
    let mut term = Vec::with_capacity(n_states);
    for p in 0..n_states {
        let stop = rng.gen::<f64>().max(STOP_FLOOR);
        let mut total = stop;
        for (_, w) in edges.range_mut((p, 0, 0)..(p + 1, 0, 0)) {
            *w = rng.gen::<f64>();
            total += *w;
        }
        for (_, w) in edges.range_mut((p, 0, 0)..(p + 1, 0, 0)) {
            *w /= total;
        }
        term.push(stop / total);
    }
    let mut init = vec![0.0; n_states];
    init[0] = 1.0;
    WeightedAutomaton::new(
        alphabet.clone(),
        (0..n_states).map(|i| format!("q{i}")).collect(),
        init,
        term,
        edges,
    )
}
