//! Decide whether a multiplicity automaton computes a pseudo-stochastic
//! language, with the evidence behind the verdict.

use psrl::automata::{is_pda, is_pseudo_stochastic, validate_pa, WeightedAutomaton};

fn main() -> psrl::Result<()> {
    let fixtures = [
        ("fig1c", include_str!("../fixtures/fig1c.ma")),
        ("fig2", include_str!("../fixtures/fig2.ma")),
        ("fig3b", include_str!("../fixtures/fig3b.ma")),
        ("signs", include_str!("../fixtures/signs.ma")),
        ("geometric", include_str!("../fixtures/geometric.ma")),
    ];
    println!(
        "{:<10} {:>5} {:>5} {:>8} {:>6} {:>10}",
        "", "pa", "pda", "verdict", "dim", "radius"
    );
    for (name, text) in fixtures {
        let a = WeightedAutomaton::from_ma_str(text)?;
        let c = is_pseudo_stochastic(&a)?;
        println!(
            "{name:<10} {:>5} {:>5} {:>8} {:>6} {:>10.6}  total {:?}",
            validate_pa(&a),
            is_pda(&a),
            c.verdict,
            c.reduced_dimension,
            c.spectral_radius_value,
            c.series_total
        );
    }

    // Doubling the final weights doubles the total mass.
    let a = WeightedAutomaton::from_ma_str(include_str!("../fixtures/geometric.ma"))?;
    let c = is_pseudo_stochastic(&a.scale_term(2.0)?)?;
    println!(
        "\ngeometric with doubled stops: verdict {} total {:?}",
        c.verdict, c.series_total
    );
    Ok(())
}
