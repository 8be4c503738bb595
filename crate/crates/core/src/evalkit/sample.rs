use std::fmt::Write as _;
use std::path::Path;

use crate::automata::{parse_header, Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::psl::PrefixWalk;

/// A multiset of words over an alphabet, kept in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    alphabet: Alphabet,
    words: Vec<Word>,
}

impl Sample {
    pub fn new(alphabet: Alphabet, words: Vec<Word>) -> Result<Self> {
        let k = alphabet.len();
        if let Some(w) = words.iter().find(|w| w.symbols().iter().any(|&x| x >= k)) {
            return Err(Error::Malformed(format!(
                "word {:?} uses symbols outside the alphabet",
                w.symbols()
            )));
        }
        Ok(Sample { alphabet, words })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Sample {
            alphabet,
            words: Vec::new(),
        }
    }

    /// Builds a sample from `(word, multiplicity)` pairs written in the
    /// compact notation of [`Alphabet::parse_word`].
    pub fn from_counts(alphabet: Alphabet, counts: &[(&str, usize)]) -> Result<Self> {
        let mut words = Vec::new();
        for &(w, c) in counts {
            let w = alphabet.parse_word(w)?;
            words.extend(std::iter::repeat(w).take(c));
        }
        Sample::new(alphabet, words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn push(&mut self, w: Word) -> Result<()> {
        if w.symbols().iter().any(|&x| x >= self.alphabet.len()) {
            return Err(Error::Malformed(
                "word uses symbols outside the alphabet".into(),
            ));
        }
        self.words.push(w);
        Ok(())
    }

    /// Distinct words in length-lexicographic order.
    pub fn distinct(&self) -> Vec<Word> {
        let mut ws = self.words.clone();
        ws.sort();
        ws.dedup();
        ws
    }

    pub fn empirical(&self) -> Result<EmpiricalDistribution> {
        EmpiricalDistribution::new(self)
    }

    /// Parses the `sample v1` format: header, alphabet line, then one word
    /// per line as whitespace-separated symbols. A blank line is `ε`.
    pub fn from_sample_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let alphabet = parse_header(&mut lines, "sample v1")?;
        let mut words = Vec::new();
        for (n, line) in lines {
            let w = line
                .split_whitespace()
                .map(|tok| {
                    alphabet.symbol(tok).ok_or_else(|| Error::Parse {
                        line: n,
                        msg: format!("unknown symbol {tok:?}"),
                    })
                })
                .collect::<Result<Vec<Symbol>>>()?;
            words.push(Word::new(w));
        }
        Sample::new(alphabet, words)
    }

    pub fn to_sample_string(&self) -> String {
        let mut out = String::from("sample v1\n");
        let _ = writeln!(out, "alphabet {}", self.alphabet.symbols().join(" "));
        for w in &self.words {
            let toks: Vec<&str> = w.symbols().iter().map(|&x| self.alphabet.name(x)).collect();
            let _ = writeln!(out, "{}", toks.join(" "));
        }
        out
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Sample::from_sample_str(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_sample_string())?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Node {
    word_count: usize,
    prefix_count: usize,
    children: Vec<Option<usize>>,
}

/// Prefix tree of a sample with word and prefix counts, giving `P_S(u)` and
/// `P_S(uΣ*)`.
#[derive(Debug, Clone)]
pub struct EmpiricalDistribution {
    alphabet: Alphabet,
    total: usize,
    nodes: Vec<Node>,
}

impl EmpiricalDistribution {
    pub fn new(sample: &Sample) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::EmptySample);
        }
        let k = sample.alphabet().len();
        let leaf = || Node {
            word_count: 0,
            prefix_count: 0,
            children: vec![None; k],
        };
        let mut nodes = vec![leaf()];
        for w in sample.words() {
            let mut n = 0;
            nodes[0].prefix_count += 1;
            for &x in w.symbols() {
                n = match nodes[n].children[x] {
                    Some(c) => c,
                    None => {
                        nodes.push(leaf());
                        let c = nodes.len() - 1;
                        nodes[n].children[x] = Some(c);
                        c
                    }
                };
                nodes[n].prefix_count += 1;
            }
            nodes[n].word_count += 1;
        }
        Ok(EmpiricalDistribution {
            alphabet: sample.alphabet().clone(),
            total: sample.len(),
            nodes,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// `|S|`.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Number of distinct prefixes, `ε` included.
    pub fn num_prefixes(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> usize {
        0
    }

    /// Node reached from `node` by `x`, if that prefix occurs.
    pub fn child(&self, node: usize, x: Symbol) -> Option<usize> {
        self.nodes[node].children[x]
    }

    pub fn node(&self, u: &Word) -> Option<usize> {
        self.node_from(0, u.symbols())
    }

    pub fn node_from(&self, start: usize, suffix: &[Symbol]) -> Option<usize> {
        suffix.iter().try_fold(start, |n, &x| self.child(n, x))
    }

    pub fn node_word_count(&self, node: usize) -> usize {
        self.nodes[node].word_count
    }

    pub fn node_prefix_count(&self, node: usize) -> usize {
        self.nodes[node].prefix_count
    }

    pub fn word_count(&self, u: &Word) -> usize {
        self.node(u).map_or(0, |n| self.nodes[n].word_count)
    }

    pub fn prefix_count(&self, u: &Word) -> usize {
        self.node(u).map_or(0, |n| self.nodes[n].prefix_count)
    }

    /// `P_S(u)`.
    pub fn p(&self, u: &Word) -> f64 {
        self.word_count(u) as f64 / self.total as f64
    }

    /// `P_S(uΣ*)`.
    pub fn p_prefix(&self, u: &Word) -> f64 {
        self.prefix_count(u) as f64 / self.total as f64
    }

    /// Every stored prefix with its node, in length-lexicographic order.
    pub fn prefixes(&self) -> Vec<(Word, usize)> {
        let mut out = vec![(Word::empty(), 0)];
        let mut i = 0;
        while i < out.len() {
            let (w, n) = out[i].clone();
            for (x, c) in self.nodes[n].children.iter().enumerate() {
                if let Some(c) = *c {
                    out.push((w.child(x), c));
                }
            }
            i += 1;
        }
        out
    }

    /// Distinct sample words, in length-lexicographic order.
    pub fn support(&self) -> Vec<Word> {
        self.prefixes()
            .into_iter()
            .filter(|&(_, n)| self.nodes[n].word_count > 0)
            .map(|(w, _)| w)
            .collect()
    }

    /// Distinct factors of the sample words, `ε` included, in
    /// length-lexicographic order.
    pub fn factors(&self) -> Vec<Word> {
        let mut out: Vec<Word> = Vec::new();
        for w in self.support() {
            let s = w.symbols();
            for i in 0..=s.len() {
                for j in i..=s.len() {
                    out.push(Word::new(s[i..j].to_vec()));
                }
            }
        }
        out.push(Word::empty());
        out.sort();
        out.dedup();
        out
    }
}

impl PrefixWalk for EmpiricalDistribution {
    type Cursor = Option<usize>;

    fn root(&self) -> Result<Option<usize>> {
        Ok(Some(0))
    }

    fn child(&self, c: &Option<usize>, x: Symbol) -> Result<Option<usize>> {
        Ok(c.and_then(|n| self.child(n, x)))
    }

    fn value(&self, c: &Option<usize>) -> f64 {
        c.map_or(0.0, |n| self.nodes[n].word_count as f64 / self.total as f64)
    }
}
