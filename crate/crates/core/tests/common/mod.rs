#![allow(dead_code)]

pub mod oracles;

use std::collections::BTreeMap;
use std::path::PathBuf;

use proptest::prelude::*;
use psrl::automata::{Alphabet, AutomatonBuilder, WeightedAutomaton, Word};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> WeightedAutomaton {
    WeightedAutomaton::read_ma(fixture_path(&format!("{name}.ma"))).unwrap()
}

pub fn word(a: &WeightedAutomaton, w: &str) -> Word {
    a.alphabet().parse_word(w).unwrap()
}

/// One state, `φ(a) = 1 − stop`, `τ = stop`.
pub fn geometric(stop: f64) -> WeightedAutomaton {
    let mut b = AutomatonBuilder::new(Alphabet::new(["a"]).unwrap());
    b.add_state("q", 1.0, stop);
    b.add_transition(0, 0, 0, 1.0 - stop);
    b.build().unwrap()
}

pub fn alphabet(k: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c"].into_iter().take(k)).unwrap()
}

/// Raw material for a random automaton.
#[derive(Debug, Clone)]
pub struct RawMa {
    pub k: usize,
    pub init: Vec<f64>,
    pub term: Vec<f64>,
    pub trans: Vec<((usize, usize, usize), f64)>,
}

impl RawMa {
    /// The automaton with transition weights rescaled so that the letter-summed
    /// matrix has absolute row sums at most `bound` (so `ρ ≤ bound`).
    pub fn build(&self, bound: f64) -> WeightedAutomaton {
        let n = self.init.len();
        let mut rows = vec![0.0; n];
        for &((p, _, _), w) in &self.trans {
            rows[p] += f64::abs(w);
        }
        let max = rows.iter().cloned().fold(0.0, f64::max);
        let scale = if max > bound { bound / max } else { 1.0 };
        let mut edges = BTreeMap::new();
        for &(key, w) in &self.trans {
            *edges.entry(key).or_insert(0.0) += w * scale;
        }
        WeightedAutomaton::new(
            alphabet(self.k),
            (0..n).map(|i| format!("q{i}")).collect(),
            self.init.clone(),
            self.term.clone(),
            edges,
        )
        .unwrap()
    }
}

/// Automata with 1..=max_states states over 1..=3 letters, weights in [−1, 1].
pub fn raw_ma(max_states: usize) -> impl Strategy<Value = RawMa> {
    (1..=max_states, 1usize..=3).prop_flat_map(|(n, k)| {
        (
            Just(k),
            prop::collection::vec(-1.0f64..1.0, n),
            prop::collection::vec(-1.0f64..1.0, n),
            prop::collection::vec(((0..n, 0..k, 0..n), -1.0f64..1.0), 0..=(2 * n * k)),
        )
            .prop_map(|(k, init, term, trans)| RawMa {
                k,
                init,
                term,
                trans,
            })
    })
}

/// Random probabilistic automata: nonnegative weights normalized per state.
pub fn raw_pa(max_states: usize) -> impl Strategy<Value = WeightedAutomaton> {
    (1..=max_states, 1usize..=3).prop_flat_map(|(n, k)| {
        (
            prop::collection::vec(0.05f64..1.0, n),
            prop::collection::vec(0.1f64..1.0, n),
            prop::collection::vec(((0..n, 0..k, 0..n), 0.0f64..1.0), 0..=(2 * n * k)),
        )
            .prop_map(move |(init, stop, trans)| {
                let mut edges: BTreeMap<(usize, usize, usize), f64> = BTreeMap::new();
                for (key, w) in trans {
                    *edges.entry(key).or_insert(0.0) += w;
                }
                let mut out = vec![0.0; n];
                for (&(p, _, _), &w) in &edges {
                    out[p] += w;
                }
                let total: Vec<f64> = (0..n).map(|p| out[p] + stop[p]).collect();
                for ((p, _, _), w) in edges.iter_mut() {
                    *w /= total[*p];
                }
                let term = (0..n).map(|p| stop[p] / total[p]).collect();
                let z: f64 = init.iter().sum();
                WeightedAutomaton::new(
                    alphabet(k),
                    (0..n).map(|i| format!("q{i}")).collect(),
                    init.iter().map(|x| x / z).collect(),
                    term,
                    edges,
                )
                .unwrap()
            })
    })
}

/// Sum of `r(u)` over words of length at most `max_len`.
pub fn partial_sum(a: &WeightedAutomaton, max_len: usize) -> f64 {
    a.alphabet()
        .words_up_to(max_len)
        .iter()
        .map(|w| a.evaluate(w))
        .sum()
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}
