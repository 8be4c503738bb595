//! Parse an automaton, evaluate words and prefix masses, sum the series and
//! reduce it.

use psrl::automata::{evaluate_prefix, reduce, series_sum, WeightedAutomaton};

fn main() -> psrl::Result<()> {
    let a = WeightedAutomaton::from_ma_str(include_str!("../fixtures/fig1c.ma"))?;
    let ab = a.alphabet().clone();

    for w in ["", "a", "aa", "aaa"] {
        let u = ab.parse_word(w)?;
        println!(
            "{:>4}  r = {:<22} r(uΣ*) = {}",
            ab.render(&u),
            a.evaluate(&u),
            evaluate_prefix(&a, &u)?
        );
    }
    println!("r(Σ*) = {}", series_sum(&a)?);

    // Two copies of the same state collapse under reduction.
    let doubled = WeightedAutomaton::from_ma_str(
        "ma v1\nalphabet a\n\
         state p init=1/2 final=1/2\nstate q init=1/2 final=1/2\n\
         trans p a p 1/2\ntrans q a q 1/2\n",
    )?;
    let r = reduce(&doubled);
    println!(
        "\n{} states reduce to {}:",
        doubled.num_states(),
        r.num_states()
    );
    print!("{}", r.to_ma_string());
    Ok(())
}
