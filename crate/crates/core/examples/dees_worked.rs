//! DEES on a four-word sample, printing every residual test it ran.

use psrl::dees::{dees_infer, DeesConfig, Outcome, WitnessPolicy};
use psrl::evalkit::Sample;

fn main() -> psrl::Result<()> {
    let sample = Sample::from_sample_str(include_str!("../fixtures/worked.sample"))?;
    let ab = sample.alphabet().clone();

    for witness in [WitnessPolicy::Vertex, WitnessPolicy::Tightest] {
        let cfg = DeesConfig {
            witness,
            ..Default::default()
        };
        let (model, trace) = dees_infer(&sample, &cfg)?;
        println!("== {witness:?} (ε = {:.4})", trace.epsilon);
        for d in &trace.decisions {
            let tested: Vec<String> = d.states.iter().map(|q| ab.render(q)).collect();
            match &d.outcome {
                Outcome::NewState => {
                    println!("{:>4} vs {:?}: new state", ab.render(&d.frontier), tested)
                }
                Outcome::Combination(x) => {
                    println!(
                        "{:>4} vs {:?}: coefficients {:.4?}",
                        ab.render(&d.frontier),
                        tested,
                        x
                    )
                }
            }
        }
        print!("{}", model.to_ma_string());
        println!();
    }
    Ok(())
}
