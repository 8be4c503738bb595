use std::collections::{BTreeMap, HashSet};

use super::word::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::numkit::Matrix;

/// Transition key: `(source, symbol, target)`.
pub type TransKey = (usize, Symbol, usize);

/// Multiplicity automaton with real initial, transition and final weights.
///
/// Absent transitions carry weight 0. Values are immutable once built; use
/// [`AutomatonBuilder`] or [`WeightedAutomaton::new`] to construct one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedAutomaton {
    alphabet: Alphabet,
    states: Vec<String>,
    init: Vec<f64>,
    term: Vec<f64>,
    trans: BTreeMap<TransKey, f64>,
    // per symbol: (source, target, weight)
    edges: Vec<Vec<(usize, usize, f64)>>,
}

impl WeightedAutomaton {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        init: Vec<f64>,
        term: Vec<f64>,
        trans: BTreeMap<TransKey, f64>,
    ) -> Result<Self> {
        let n = states.len();
        if init.len() != n || term.len() != n {
            return Err(Error::Malformed(
                "init/final vectors must have one entry per state".into(),
            ));
        }
        let mut seen = HashSet::with_capacity(n);
        for s in &states {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::Malformed(format!("invalid state name {s:?}")));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::Malformed(format!("duplicate state {s:?}")));
            }
        }
        if init.iter().chain(&term).any(|v| !v.is_finite()) {
            return Err(Error::Malformed("weights must be finite".into()));
        }
        let mut edges = vec![Vec::new(); alphabet.len()];
        let mut kept = BTreeMap::new();
        for (&(p, x, q), &w) in &trans {
            if p >= n || q >= n || x >= alphabet.len() {
                return Err(Error::Malformed(format!(
                    "transition ({p}, {x}, {q}) out of range"
                )));
            }
            if !w.is_finite() {
                return Err(Error::Malformed("weights must be finite".into()));
            }
            if w != 0.0 {
                kept.insert((p, x, q), w);
                edges[x].push((p, q, w));
            }
        }
        Ok(WeightedAutomaton {
            alphabet,
            states,
            init,
            term,
            trans: kept,
            edges,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn init(&self) -> &[f64] {
        &self.init
    }

    pub fn term(&self) -> &[f64] {
        &self.term
    }

    pub fn transitions(&self) -> impl Iterator<Item = (TransKey, f64)> + '_ {
        self.trans.iter().map(|(k, v)| (*k, *v))
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.len()
    }

    pub fn weight(&self, src: usize, x: Symbol, dst: usize) -> f64 {
        self.trans.get(&(src, x, dst)).copied().unwrap_or(0.0)
    }

    /// Transitions labelled `x` as `(source, target, weight)`.
    pub fn edges(&self, x: Symbol) -> &[(usize, usize, f64)] {
        &self.edges[x]
    }

    pub fn letter_matrix(&self, x: Symbol) -> Matrix {
        let n = self.num_states();
        let mut m = Matrix::zeros(n, n);
        for &(p, q, w) in &self.edges[x] {
            m.set(p, q, w);
        }
        m
    }

    /// `M_Σ[i][j] = Σ_x φ(q_i, x, q_j)`.
    pub fn letter_sum_matrix(&self) -> Matrix {
        let n = self.num_states();
        let mut m = Matrix::zeros(n, n);
        for (&(p, _, q), &w) in &self.trans {
            m.add_to(p, q, w);
        }
        m
    }

    /// Row vector `e · M_x`.
    pub fn step(&self, e: &[f64], x: Symbol) -> Vec<f64> {
        let mut out = vec![0.0; self.num_states()];
        for &(p, q, w) in &self.edges[x] {
            out[q] += e[p] * w;
        }
        out
    }

    /// Column vector `M_x · s`.
    pub fn step_back(&self, s: &[f64], x: Symbol) -> Vec<f64> {
        let mut out = vec![0.0; self.num_states()];
        for &(p, q, w) in &self.edges[x] {
            out[p] += w * s[q];
        }
        out
    }

    /// Forward weights `ι · M_w`.
    pub fn forward(&self, w: &Word) -> Vec<f64> {
        w.symbols()
            .iter()
            .fold(self.init.clone(), |e, &x| self.step(&e, x))
    }

    pub fn termination(&self, e: &[f64]) -> f64 {
        e.iter().zip(&self.term).map(|(a, b)| a * b).sum()
    }

    /// `r_A(w) = ι · M_{w_1} ··· M_{w_n} · τ`.
    pub fn evaluate(&self, w: &Word) -> f64 {
        self.termination(&self.forward(w))
    }

    /// Same automaton with every initial weight multiplied by `c`.
    pub fn scale_init(&self, c: f64) -> Result<Self> {
        let init = self.init.iter().map(|v| v * c).collect();
        WeightedAutomaton::new(
            self.alphabet.clone(),
            self.states.clone(),
            init,
            self.term.clone(),
            self.trans.clone(),
        )
    }

    /// Same automaton with every final weight multiplied by `c`.
    pub fn scale_term(&self, c: f64) -> Result<Self> {
        let term = self.term.iter().map(|v| v * c).collect();
        WeightedAutomaton::new(
            self.alphabet.clone(),
            self.states.clone(),
            self.init.clone(),
            term,
            self.trans.clone(),
        )
    }
}

/// Incremental construction of a [`WeightedAutomaton`]. Repeated transitions
/// on the same triple accumulate.
#[derive(Debug, Clone)]
pub struct AutomatonBuilder {
    alphabet: Alphabet,
    states: Vec<String>,
    init: Vec<f64>,
    term: Vec<f64>,
    trans: BTreeMap<TransKey, f64>,
}

impl AutomatonBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        AutomatonBuilder {
            alphabet,
            states: Vec::new(),
            init: Vec::new(),
            term: Vec::new(),
            trans: BTreeMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_state(&mut self, name: impl Into<String>, init: f64, term: f64) -> usize {
        self.states.push(name.into());
        self.init.push(init);
        self.term.push(term);
        self.states.len() - 1
    }

    pub fn set_term(&mut self, q: usize, term: f64) {
        self.term[q] = term;
    }

    pub fn add_transition(&mut self, src: usize, x: Symbol, dst: usize, w: f64) -> &mut Self {
        *self.trans.entry((src, x, dst)).or_insert(0.0) += w;
        self
    }

    /// Convenience for hand-written fixtures: looks states and symbols up by name.
    pub fn add_named(&mut self, src: &str, x: &str, dst: &str, w: f64) -> Result<&mut Self> {
        let find = |name: &str| {
            self.states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::Malformed(format!("unknown state {name:?}")))
        };
        let (p, q) = (find(src)?, find(dst)?);
        let x = self
            .alphabet
            .symbol(x)
            .ok_or_else(|| Error::Malformed(format!("unknown symbol {x:?}")))?;
        Ok(self.add_transition(p, x, q, w))
    }

    pub fn build(self) -> Result<WeightedAutomaton> {
        WeightedAutomaton::new(self.alphabet, self.states, self.init, self.term, self.trans)
    }
}
