use super::sample::Sample;
use crate::automata::{is_pseudo_stochastic, Symbol, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::psl::{for_each_word, PrCursor, PrEvaluator, PrefixWalk};

/// A word function derived from an automaton: its raw series `r`, or `p_r`.
#[derive(Debug, Clone)]
pub enum Series {
    Raw(WeightedAutomaton),
    Pr(PrEvaluator),
}

#[derive(Debug, Clone)]
pub enum SeriesCursor {
    Raw(Vec<f64>),
    Pr(PrCursor),
}

impl Series {
    pub fn new(a: &WeightedAutomaton, use_pr: bool) -> Result<Self> {
        Ok(if use_pr {
            Series::Pr(PrEvaluator::new(a)?)
        } else {
            Series::Raw(a.clone())
        })
    }

    /// `p_r` when `a` is pseudo-stochastic, the raw series otherwise.
    pub fn pr_or_raw(a: &WeightedAutomaton) -> Self {
        match is_pseudo_stochastic(a) {
            Ok(c) if c.verdict => match PrEvaluator::new(a) {
                Ok(pr) => Series::Pr(pr),
                Err(_) => Series::Raw(a.clone()),
            },
            _ => Series::Raw(a.clone()),
        }
    }

    pub fn is_pr(&self) -> bool {
        matches!(self, Series::Pr(_))
    }

    pub fn alphabet_len(&self) -> usize {
        match self {
            Series::Raw(a) => a.alphabet().len(),
            Series::Pr(p) => p.alphabet_len(),
        }
    }
}

impl PrefixWalk for Series {
    type Cursor = SeriesCursor;

    fn root(&self) -> Result<SeriesCursor> {
        Ok(match self {
            Series::Raw(a) => SeriesCursor::Raw(a.root()?),
            Series::Pr(p) => SeriesCursor::Pr(p.root()?),
        })
    }

    fn child(&self, c: &SeriesCursor, x: Symbol) -> Result<SeriesCursor> {
        Ok(match (self, c) {
            (Series::Raw(a), SeriesCursor::Raw(e)) => SeriesCursor::Raw(a.child(e, x)?),
            (Series::Pr(p), SeriesCursor::Pr(e)) => SeriesCursor::Pr(p.child(e, x)?),
            _ => unreachable!("cursor from a different series"),
        })
    }

    fn value(&self, c: &SeriesCursor) -> f64 {
        match (self, c) {
            (Series::Raw(a), SeriesCursor::Raw(e)) => a.value(e),
            (Series::Pr(p), SeriesCursor::Pr(e)) => p.value(e),
            _ => unreachable!("cursor from a different series"),
        }
    }
}

/// `Σ_{|u| ≤ L} |f(u) − g(u)|` for any two word functions over `symbols`
/// letters.
pub fn d1_truncated_with<A, B>(f: &A, g: &B, symbols: usize, max_len: usize) -> Result<f64>
where
    A: PrefixWalk,
    B: PrefixWalk,
{
    let pair = (f, g);
    let mut total = 0.0;
    for_each_word(&pair, symbols, max_len, |_, c| total += pair.value(c).abs())?;
    Ok(total)
}

fn check_alphabets(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::Malformed("automata use different alphabets".into()));
    }
    Ok(())
}

/// Truncated D1 distance between `a` and `b`; `use_pr[i]` selects `p_r`
/// instead of the raw series on side `i`.
pub fn d1_truncated(
    a: &WeightedAutomaton,
    b: &WeightedAutomaton,
    max_len: usize,
    use_pr: [bool; 2],
) -> Result<f64> {
    check_alphabets(a, b)?;
    let f = Series::new(a, use_pr[0])?;
    let g = Series::new(b, use_pr[1])?;
    d1_truncated_with(&f, &g, a.alphabet().len(), max_len)
}

/// `Σ |f(u) − g(u)|` over the distinct words of `support`.
pub fn d1_on_support_with<A, B>(f: &A, g: &B, support: &Sample) -> Result<f64>
where
    A: PrefixWalk,
    B: PrefixWalk,
{
    let pair = (f, g);
    let mut total = 0.0;
    for w in support.distinct() {
        total += pair.value_of(&w)?.abs();
    }
    Ok(total)
}

/// D1 distance restricted to the distinct words of `support`.
pub fn d1_on_support(
    a: &WeightedAutomaton,
    b: &WeightedAutomaton,
    support: &Sample,
    use_pr: [bool; 2],
) -> Result<f64> {
    check_alphabets(a, b)?;
    let f = Series::new(a, use_pr[0])?;
    let g = Series::new(b, use_pr[1])?;
    d1_on_support_with(&f, &g, support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{Alphabet, AutomatonBuilder};

    fn geometric(stop: f64) -> WeightedAutomaton {
        let mut b = AutomatonBuilder::new(Alphabet::new(["a"]).unwrap());
        b.add_state("q", 1.0, stop);
        b.add_transition(0, 0, 0, 1.0 - stop);
        b.build().unwrap()
    }

    #[test]
    fn geometric_closed_form() {
        let (a, b) = (geometric(0.5), geometric(1.0 / 3.0));
        let expect: f64 = (0..=10)
            .map(|k| (0.5f64.powi(k + 1) - (2.0f64 / 3.0).powi(k) / 3.0).abs())
            .sum();
        for flags in [[false, false], [true, true], [true, false]] {
            let d = d1_truncated(&a, &b, 10, flags).unwrap();
            assert!((d - expect).abs() < 1e-12, "{flags:?}: {d} vs {expect}");
        }
        assert_eq!(d1_truncated(&a, &a, 10, [false, false]).unwrap(), 0.0);
    }

    #[test]
    fn support_variant() {
        let (a, b) = (geometric(0.5), geometric(1.0 / 3.0));
        let ab = a.alphabet().clone();
        assert_eq!(
            d1_on_support(&a, &b, &Sample::empty(ab.clone()), [false, false]).unwrap(),
            0.0
        );
        let all = Sample::new(ab.clone(), ab.words_up_to(6)).unwrap();
        let s = d1_on_support(&a, &b, &all, [false, false]).unwrap();
        let t = d1_truncated(&a, &b, 6, [false, false]).unwrap();
        assert!((s - t).abs() < 1e-12);
    }

    #[test]
    fn alphabet_mismatch() {
        let mut b = AutomatonBuilder::new(Alphabet::new(["b"]).unwrap());
        b.add_state("q", 1.0, 1.0);
        let other = b.build().unwrap();
        assert!(d1_truncated(&geometric(0.5), &other, 3, [false, false]).is_err());
    }
}
