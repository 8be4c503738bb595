use crate::automata::{Alphabet, Symbol, WeightedAutomaton, Word};
use crate::error::Result;
use crate::evalkit::Sample;

#[derive(Debug, Clone, PartialEq)]
pub struct FptaNode {
    pub prefix: Word,
    /// Number of sample words having `prefix` as a prefix.
    pub pass: usize,
    /// Number of sample words equal to `prefix`.
    pub stop: usize,
    pub children: Vec<Option<usize>>,
}

/// Frequency prefix tree acceptor. Node 0 is `ε`; nodes are stored in
/// length-lexicographic order of their prefixes.
#[derive(Debug, Clone, PartialEq)]
pub struct FreqPrefixTree {
    alphabet: Alphabet,
    nodes: Vec<FptaNode>,
}

impl FreqPrefixTree {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[FptaNode] {
        &self.nodes
    }

    pub fn find(&self, u: &Word) -> Option<&FptaNode> {
        let mut n = 0;
        for &x in u.symbols() {
            n = self.nodes[n].children[x]?;
        }
        Some(&self.nodes[n])
    }

    /// Count of the transition from `node` by `x` (its child's pass count).
    pub fn child_count(&self, node: usize, x: Symbol) -> usize {
        self.nodes[node].children[x].map_or(0, |c| self.nodes[c].pass)
    }

    /// The tree as a deterministic probabilistic automaton with relative
    /// frequencies as weights. It computes the empirical distribution.
    pub fn to_pa(&self) -> Result<WeightedAutomaton> {
        let mut trans = std::collections::BTreeMap::new();
        let mut term = Vec::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            let pass = n.pass as f64;
            term.push(n.stop as f64 / pass);
            for (x, c) in n.children.iter().enumerate() {
                if let Some(c) = *c {
                    trans.insert((i, x, c), self.nodes[c].pass as f64 / pass);
                }
            }
        }
        let mut init = vec![0.0; self.nodes.len()];
        init[0] = 1.0;
        WeightedAutomaton::new(
            self.alphabet.clone(),
            self.nodes
                .iter()
                .map(|n| self.alphabet.render(&n.prefix))
                .collect(),
            init,
            term,
            trans,
        )
    }
}

/// Builds the frequency prefix tree acceptor of `sample`.
pub fn build_fpta(sample: &Sample) -> Result<FreqPrefixTree> {
    let dist = sample.empirical()?;
    let prefixes = dist.prefixes();
    let mut index = vec![usize::MAX; dist.num_prefixes()];
    for (i, (_, n)) in prefixes.iter().enumerate() {
        index[*n] = i;
    }
    let k = sample.alphabet().len();
    let nodes = prefixes
        .into_iter()
        .map(|(w, n)| FptaNode {
            prefix: w,
            pass: dist.node_prefix_count(n),
            stop: dist.node_word_count(n),
            children: (0..k).map(|x| dist.child(n, x).map(|c| index[c])).collect(),
        })
        .collect();
    Ok(FreqPrefixTree {
        alphabet: sample.alphabet().clone(),
        nodes,
    })
}
