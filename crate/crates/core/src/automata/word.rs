use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
pub type Symbol = usize;

/// Ordered, duplicate-free list of symbol names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Malformed("alphabet must be nonempty".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::Malformed(format!("invalid symbol name {s:?}")));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, x: Symbol) -> &str {
        &self.symbols[x]
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Compact rendering: `ε` for the empty word, juxtaposed symbols when
    /// every symbol is one character, dot-separated otherwise.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { "." };
        w.symbols()
            .iter()
            .map(|&x| self.symbols[x].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a word written either as whitespace-separated symbols or in the
    /// compact form produced by [`Alphabet::render`]. `ε` and the empty string
    /// denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let lookup = |tok: &str| {
            self.symbol(tok)
                .ok_or_else(|| Error::Malformed(format!("unknown symbol {tok:?}")))
        };
        let parts: Vec<Symbol> = if text.contains(char::is_whitespace) {
            text.split_whitespace().map(lookup).collect::<Result<_>>()?
        } else if let Some(x) = self.symbol(text) {
            vec![x]
        } else if self.single_char() {
            let mut buf = [0u8; 4];
            text.chars()
                .map(|c| lookup(c.encode_utf8(&mut buf)))
                .collect::<Result<_>>()?
        } else {
            text.split('.').map(lookup).collect::<Result<_>>()?
        };
        Ok(Word(parts))
    }

    /// Every word of length at most `max_len`, in length-lexicographic order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut start = 0;
        for _ in 0..max_len {
            let end = out.len();
            for i in start..end {
                for x in 0..self.len() {
                    let w = out[i].child(x);
                    out.push(w);
                }
            }
            start = end;
        }
        out
    }
}

/// A finite word over an alphabet, stored as symbol indices.
///
/// Words order length-lexicographically: shorter words first, ties broken by
/// the alphabet's declared symbol order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `x`.
    pub fn child(&self, x: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(x);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Splits `ux` into `(u, x)`; `None` for the empty word.
    pub fn split_last(&self) -> Option<(Word, Symbol)> {
        let (&x, rest) = self.0.split_last()?;
        Some((Word(rest.to_vec()), x))
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Number of occurrences of `x`.
    pub fn count(&self, x: Symbol) -> usize {
        self.0.iter().filter(|&&y| y == x).count()
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
