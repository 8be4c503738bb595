//! State-merging baselines over the frequency prefix tree: ALERGIA and MDI.

mod fpta;
mod merge;

pub use fpta::{build_fpta, FptaNode, FreqPrefixTree};

use crate::automata::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::evalkit::Sample;
use merge::FreqAutomaton;

/// Default ALERGIA confidence parameter.
pub const DEFAULT_ALPHA: f64 = 0.05;
/// Default MDI divergence-per-state threshold.
pub const DEFAULT_GAMMA: f64 = 0.0005;

/// Hoeffding bound `(√(1/n₁) + √(1/n₂)) · √(ln(2/α)/2)`.
pub fn hoeffding_bound(n1: usize, n2: usize, alpha: f64) -> f64 {
    let s = (1.0 / n1 as f64).sqrt() + (1.0 / n2 as f64).sqrt();
    s * ((2.0 / alpha).ln() / 2.0).sqrt()
}

/// Frequency test of ALERGIA: stop and per-symbol frequencies within the
/// Hoeffding bound, recursively on common successors. A state never
/// reached counts as compatible with anything.
fn compatible(fa: &FreqAutomaton, r: usize, b: usize, alpha: f64) -> bool {
    let (n1, n2) = (fa.pass(r), fa.pass(b));
    if n1 == 0 || n2 == 0 {
        return true;
    }
    let bound = hoeffding_bound(n1, n2, alpha);
    let differs =
        |f1: usize, f2: usize| (f1 as f64 / n1 as f64 - f2 as f64 / n2 as f64).abs() > bound;
    if differs(fa.stop(r), fa.stop(b)) {
        return false;
    }
    for x in 0..fa.symbols() {
        let (er, eb) = (fa.edge(r, x), fa.edge(b, x));
        let count = |e: Option<(usize, usize)>| e.map_or(0, |(_, c)| c);
        if differs(count(er), count(eb)) {
            return false;
        }
    }
    for x in 0..fa.symbols() {
        if let (Some((tr, _)), Some((tb, _))) = (fa.edge(r, x), fa.edge(b, x)) {
            if !compatible(fa, tr, tb, alpha) {
                return false;
            }
        }
    }
    true
}

fn start(sample: &Sample) -> Result<FreqAutomaton> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(FreqAutomaton::from_tree(&build_fpta(sample)?))
}

/// ALERGIA with confidence parameter `alpha ∈ (0, 1]`. Returns a
/// deterministic probabilistic automaton.
pub fn alergia_infer(sample: &Sample, alpha: f64) -> Result<WeightedAutomaton> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Malformed(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let mut fa = start(sample)?;
    let red = fa.red_blue(|fa, r, b| {
        if compatible(fa, r, b, alpha) {
            fa.merge(r, b);
            true
        } else {
            false
        }
    });
    fa.to_pda(&red)
}

/// MDI with threshold `gamma ≥ 0`: a merge is kept when the increase of the
/// divergence from the sample distribution, per state removed, is below
/// `gamma`.
pub fn mdi_infer(sample: &Sample, gamma: f64) -> Result<WeightedAutomaton> {
    if !(gamma >= 0.0) {
        return Err(Error::Malformed(format!(
            "gamma must be nonnegative, got {gamma}"
        )));
    }
    let mut fa = start(sample)?;
    let total = sample.len() as f64;
    let red = fa.red_blue(|fa, r, b| {
        let rep = fa.merge(r, b);
        let divergence = ((rep.before - fa.after(&rep)) / total).max(0.0);
        if divergence / (rep.removed as f64) < gamma {
            true
        } else {
            fa.undo();
            false
        }
    });
    fa.to_pda(&red)
}
