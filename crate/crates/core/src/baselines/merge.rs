use std::collections::{BTreeMap, HashSet};

use super::fpta::FreqPrefixTree;
use crate::automata::{Alphabet, Symbol, WeightedAutomaton, Word};
use crate::error::Result;

#[derive(Debug, Clone)]
enum Change {
    Stop(usize, usize),
    Edge(usize, Symbol, Option<(usize, usize)>),
    Parent(usize, Option<(usize, Symbol)>),
}

/// Deterministic automaton with integer frequencies, the working state of
/// red-blue merging. Starts as a copy of a prefix tree.
#[derive(Debug, Clone)]
pub(crate) struct FreqAutomaton {
    alphabet: Alphabet,
    prefix: Vec<Word>,
    stop: Vec<usize>,
    // (target, count) per state and symbol
    edges: Vec<Vec<Option<(usize, usize)>>>,
    parent: Vec<Option<(usize, Symbol)>>,
    log: Vec<Change>,
}

/// Statistics of one fold, for merge criteria.
#[derive(Debug, Default)]
pub(crate) struct FoldReport {
    /// Log-likelihood contribution of the touched states before the fold.
    pub before: f64,
    /// States absorbed by the fold.
    pub removed: usize,
    touched: Vec<usize>,
}

fn xlogx_ratio(c: usize, n: usize) -> f64 {
    if c == 0 {
        0.0
    } else {
        c as f64 * (c as f64 / n as f64).ln()
    }
}

impl FreqAutomaton {
    pub fn from_tree(t: &FreqPrefixTree) -> Self {
        let n = t.len();
        let mut parent = vec![None; n];
        let mut edges = Vec::with_capacity(n);
        for (i, node) in t.nodes().iter().enumerate() {
            let row = node
                .children
                .iter()
                .enumerate()
                .map(|(x, c)| {
                    c.map(|c| {
                        parent[c] = Some((i, x));
                        (c, t.nodes()[c].pass)
                    })
                })
                .collect();
            edges.push(row);
        }
        FreqAutomaton {
            alphabet: t.alphabet().clone(),
            prefix: t.nodes().iter().map(|n| n.prefix.clone()).collect(),
            stop: t.nodes().iter().map(|n| n.stop).collect(),
            edges,
            parent,
            log: Vec::new(),
        }
    }

    pub fn pass(&self, q: usize) -> usize {
        self.stop[q]
            + self.edges[q]
                .iter()
                .flatten()
                .map(|&(_, c)| c)
                .sum::<usize>()
    }

    pub fn stop(&self, q: usize) -> usize {
        self.stop[q]
    }

    pub fn edge(&self, q: usize, x: Symbol) -> Option<(usize, usize)> {
        self.edges[q][x]
    }

    pub fn symbols(&self) -> usize {
        self.alphabet.len()
    }

    /// Sample log-likelihood contributed by state `q`.
    pub fn log_likelihood(&self, q: usize) -> f64 {
        let n = self.pass(q);
        xlogx_ratio(self.stop[q], n)
            + self.edges[q]
                .iter()
                .flatten()
                .map(|&(_, c)| xlogx_ratio(c, n))
                .sum::<f64>()
    }

    fn set_stop(&mut self, q: usize, v: usize) {
        self.log.push(Change::Stop(q, self.stop[q]));
        self.stop[q] = v;
    }

    fn set_edge(&mut self, q: usize, x: Symbol, v: Option<(usize, usize)>) {
        self.log.push(Change::Edge(q, x, self.edges[q][x]));
        self.edges[q][x] = v;
    }

    /// Redirects the tree edge into `blue` to `red` and folds the subtree of
    /// `blue` into `red`, adding counts.
    pub fn merge(&mut self, red: usize, blue: usize) -> FoldReport {
        self.log.clear();
        let (p, x) = self.parent[blue].expect("blue states have a parent");
        let (_, c) = self.edges[p][x].expect("parent edge exists");
        self.set_edge(p, x, Some((red, c)));
        let mut report = FoldReport::default();
        let mut seen = HashSet::new();
        self.fold(red, blue, &mut report, &mut seen);
        report
    }

    fn fold(&mut self, r: usize, b: usize, rep: &mut FoldReport, seen: &mut HashSet<usize>) {
        if seen.insert(r) {
            rep.before += self.log_likelihood(r);
            rep.touched.push(r);
        }
        rep.before += self.log_likelihood(b);
        rep.removed += 1;
        self.set_stop(r, self.stop[r] + self.stop[b]);
        for x in 0..self.symbols() {
            match (self.edges[r][x], self.edges[b][x]) {
                (_, None) => {}
                (None, Some(e)) => {
                    self.set_edge(r, x, Some(e));
                    self.log.push(Change::Parent(e.0, self.parent[e.0]));
                    self.parent[e.0] = Some((r, x));
                }
                (Some((tr, cr)), Some((tb, cb))) => {
                    self.set_edge(r, x, Some((tr, cr + cb)));
                    self.fold(tr, tb, rep, seen);
                }
            }
        }
    }

    /// Log-likelihood of the touched states after the fold.
    pub fn after(&self, rep: &FoldReport) -> f64 {
        rep.touched.iter().map(|&q| self.log_likelihood(q)).sum()
    }

    /// Reverts the most recent [`FreqAutomaton::merge`].
    pub fn undo(&mut self) {
        while let Some(c) = self.log.pop() {
            match c {
                Change::Stop(q, v) => self.stop[q] = v,
                Change::Edge(q, x, v) => self.edges[q][x] = v,
                Change::Parent(q, v) => self.parent[q] = v,
            }
        }
    }

    /// Red-blue merging. Blue states are taken in length-lexicographic order
    /// of their prefixes and tried against red states in promotion order;
    /// `try_merge` either merges and returns `true` or leaves the automaton
    /// unchanged and returns `false`.
    pub fn red_blue<F>(&mut self, mut try_merge: F) -> Vec<usize>
    where
        F: FnMut(&mut FreqAutomaton, usize, usize) -> bool,
    {
        let mut red = vec![0];
        let mut is_red = vec![false; self.stop.len()];
        is_red[0] = true;
        loop {
            let blue = red
                .iter()
                .flat_map(|&q| self.edges[q].iter().flatten().map(|&(t, _)| t))
                .filter(|&t| !is_red[t])
                .min_by(|&a, &b| self.prefix[a].cmp(&self.prefix[b]));
            let Some(b) = blue else { break };
            let merged = red.iter().any(|&r| try_merge(self, r, b));
            if !merged {
                is_red[b] = true;
                red.push(b);
            }
        }
        red
    }

    /// Normalizes the frequencies of the given states into a deterministic
    /// probabilistic automaton with `states[0]` initial.
    pub fn to_pda(&self, states: &[usize]) -> Result<WeightedAutomaton> {
        let mut index = vec![usize::MAX; self.stop.len()];
        for (i, &q) in states.iter().enumerate() {
            index[q] = i;
        }
        let mut term = Vec::with_capacity(states.len());
        let mut trans = BTreeMap::new();
        for (i, &q) in states.iter().enumerate() {
            let n = self.pass(q) as f64;
            term.push(self.stop[q] as f64 / n);
            for (x, e) in self.edges[q].iter().enumerate() {
                if let Some((t, c)) = *e {
                    trans.insert((i, x, index[t]), c as f64 / n);
                }
            }
        }
        let mut init = vec![0.0; states.len()];
        init[0] = 1.0;
        WeightedAutomaton::new(
            self.alphabet.clone(),
            states
                .iter()
                .map(|&q| self.alphabet.render(&self.prefix[q]))
                .collect(),
            init,
            term,
            trans,
        )
    }
}
