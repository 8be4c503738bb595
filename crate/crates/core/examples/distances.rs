//! D1 estimates between a random probabilistic automaton and the empirical
//! distributions of growing samples.

use psrl::automata::Alphabet;
use psrl::evalkit::{d1_on_support_with, d1_truncated_with, random_pa, sample_from, Series};

fn main() -> psrl::Result<()> {
    let abc = Alphabet::new(["a", "b", "c"])?;
    let target = random_pa(6, &abc, 0.15, 2024)?;
    println!(
        "{} states, {} transitions",
        target.num_states(),
        target.num_transitions()
    );

    let t = Series::new(&target, false)?;
    let support = sample_from(&target, 50_000, 1)?;
    for n in [100, 1000, 10_000] {
        let emp = sample_from(&target, n, 2)?.empirical()?;
        println!(
            "n={n:<6} truncated(L=6) {:.4}  on support {:.4}",
            d1_truncated_with(&t, &emp, 3, 6)?,
            d1_on_support_with(&t, &emp, &support)?
        );
    }
    Ok(())
}
