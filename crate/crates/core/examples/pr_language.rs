//! The stochastic language p_r attached to a series that takes negative
//! values: point and prefix probabilities, the clamped masses behind them,
//! sampling, and the negative mass diagnostics.

use psrl::automata::WeightedAutomaton;
use psrl::psl::{nr_mass, PrEvaluator};
use psrl::rng::rng_from_seed;

fn main() -> psrl::Result<()> {
    let a = WeightedAutomaton::from_ma_str(include_str!("../fixtures/fig2.ma"))?;
    let ab = a.alphabet().clone();
    let pr = PrEvaluator::new(&a)?;

    for w in ["", "a", "b", "bbbb", "bbbbbb"] {
        let u = ab.parse_word(w)?;
        let (p, prefix) = pr.evaluate(&u)?;
        println!(
            "{:>7}  r = {:>+.6}  p_r = {:.6}  p_r(uΣ*) = {:.6}",
            ab.render(&u),
            a.evaluate(&u),
            p,
            prefix
        );
    }

    println!("\nclamped masses along bbb:");
    for step in pr.trace(&ab.parse_word("bbb")?)? {
        println!(
            "  {:>4}  stop {:.5}  branches {:.5?}  λ {:.5}",
            ab.render(&step.prefix),
            step.stop_mass,
            step.branch_masses,
            step.normalizer
        );
    }

    let mut rng = rng_from_seed(42);
    let draws: Vec<String> = (0..8)
        .map(|_| pr.sample(&mut rng).map(|w| ab.render(&w)))
        .collect::<psrl::Result<_>>()?;
    println!("\ndraws: {}", draws.join(" "));

    for l in [8, 12, 16] {
        let m = nr_mass(&a, l)?;
        println!(
            "L={l:>2}  N_r {:.3e}  D1(r, p_r) {:.3e}  gap {:+.3e}",
            m.nr_truncated, m.d1_r_pr_truncated, m.residual_gap
        );
    }
    Ok(())
}
