//! ALERGIA and MDI on a sample from a two-state probabilistic automaton.

use psrl::automata::WeightedAutomaton;
use psrl::baselines::{alergia_infer, build_fpta, mdi_infer, DEFAULT_ALPHA, DEFAULT_GAMMA};
use psrl::evalkit::{d1_truncated, sample_from};

fn main() -> psrl::Result<()> {
    let target = WeightedAutomaton::from_ma_str(
        "ma v1\nalphabet a b\n\
         state p init=1 final=0.3\nstate q init=0 final=0.5\n\
         trans p a q 0.5\ntrans p b p 0.2\ntrans q a p 0.1\ntrans q b q 0.4\n",
    )?;
    for n in [200, 2000, 20000] {
        let s = sample_from(&target, n, 9)?;
        let tree = build_fpta(&s)?;
        let alergia = alergia_infer(&s, DEFAULT_ALPHA)?;
        let mdi = mdi_infer(&s, DEFAULT_GAMMA)?;
        println!(
            "n={n:<6} prefix tree {:>5} nodes | alergia {} states, D1 {:.4} | mdi {} states, D1 {:.4}",
            tree.len(),
            alergia.num_states(),
            d1_truncated(&target, &alergia, 12, [false, false])?,
            mdi.num_states(),
            d1_truncated(&target, &mdi, 12, [false, false])?,
        );
    }
    Ok(())
}
