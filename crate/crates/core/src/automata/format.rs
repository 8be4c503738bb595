//! Line-oriented text format for multiplicity automata.
//!
//! ```text
//! ma v1
//! alphabet a b
//! state q0 init=1 final=1/4
//! trans q0 a q0 3/4
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Numbers are decimal
//! literals or integer fractions `p/q`. State order fixes index order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::ma::WeightedAutomaton;
use super::word::Alphabet;
use crate::error::{Error, Result};

/// Parses a weight: a decimal literal or an integer fraction `p/q`.
pub fn parse_number(tok: &str) -> Result<f64> {
    let bad = || Error::Malformed(format!("invalid number {tok:?}"));
    let v = if let Some((p, q)) = tok.split_once('/') {
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        p as f64 / q as f64
    } else {
        tok.parse::<f64>().map_err(|_| bad())?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    magic: &str,
) -> Result<Alphabet> {
    let parse_err = |line, msg: String| Error::Parse { line, msg };
    match lines.next() {
        Some((_, l)) if l == magic => {}
        Some((n, l)) => return Err(parse_err(n, format!("expected `{magic}`, found `{l}`"))),
        None => return Err(parse_err(0, format!("missing `{magic}` header"))),
    }
    let (n, l) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing alphabet line".into()))?;
    let mut toks = l.split_whitespace();
    if toks.next() != Some("alphabet") {
        return Err(parse_err(n, "expected `alphabet <sym> ...`".into()));
    }
    Alphabet::new(toks).map_err(|e| parse_err(n, e.to_string()))
}

impl WeightedAutomaton {
    pub fn from_ma_str(text: &str) -> Result<Self> {
        let mut lines = significant_lines(text);
        let alphabet = parse_header(&mut lines, "ma v1")?;
        let mut states = Vec::new();
        let mut init = Vec::new();
        let mut term = Vec::new();
        let mut trans = BTreeMap::new();

        for (n, line) in lines {
            let err = |msg: String| Error::Parse { line: n, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "state" => {
                    if !trans.is_empty() {
                        return Err(err("state declared after transitions".into()));
                    }
                    if toks.len() != 4 {
                        return Err(err("expected `state <name> init=<num> final=<num>`".into()));
                    }
                    let i = toks[2]
                        .strip_prefix("init=")
                        .ok_or_else(|| err("missing init=".into()))?;
                    let f = toks[3]
                        .strip_prefix("final=")
                        .ok_or_else(|| err("missing final=".into()))?;
                    states.push(toks[1].to_string());
                    init.push(parse_number(i).map_err(|e| err(e.to_string()))?);
                    term.push(parse_number(f).map_err(|e| err(e.to_string()))?);
                }
                "trans" => {
                    if toks.len() != 5 {
                        return Err(err("expected `trans <src> <sym> <dst> <num>`".into()));
                    }
                    let find = |name: &str| {
                        states
                            .iter()
                            .position(|s| s == name)
                            .ok_or_else(|| err(format!("unknown state {name:?}")))
                    };
                    let p = find(toks[1])?;
                    let q = find(toks[3])?;
                    let x = alphabet
                        .symbol(toks[2])
                        .ok_or_else(|| err(format!("unknown symbol {:?}", toks[2])))?;
                    let w = parse_number(toks[4]).map_err(|e| err(e.to_string()))?;
                    if trans.insert((p, x, q), w).is_some() {
                        return Err(err("duplicate transition".into()));
                    }
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        WeightedAutomaton::new(alphabet, states, init, term, trans)
    }

    /// Serializes in the `ma v1` format. Weights use the shortest decimal
    /// representation that reads back to the same `f64`.
    pub fn to_ma_string(&self) -> String {
        let mut out = String::from("ma v1\n");
        let _ = writeln!(out, "alphabet {}", self.alphabet().symbols().join(" "));
        for (i, name) in self.state_names().iter().enumerate() {
            let _ = writeln!(
                out,
                "state {name} init={} final={}",
                self.init()[i],
                self.term()[i]
            );
        }
        let names = self.state_names();
        for ((p, x, q), w) in self.transitions() {
            let _ = writeln!(
                out,
                "trans {} {} {} {}",
                names[p],
                self.alphabet().name(x),
                names[q],
                w
            );
        }
        out
    }

    pub fn read_ma(path: impl AsRef<Path>) -> Result<Self> {
        WeightedAutomaton::from_ma_str(&std::fs::read_to_string(path)?)
    }

    pub fn write_ma(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_ma_string())?;
        Ok(())
    }
}
