//! A reduced run of the three-learner protocol on the two-state target with
//! irrational parameters, written as CSV to stdout.

use psrl::experiment::{run_experiment, write_csv, ExperimentSpec};

fn main() -> psrl::Result<()> {
    let mut spec = ExperimentSpec::default_builtin("exp-pa-fig3", 0)?;
    spec.targets[0].sizes = vec![500, 5000];
    spec.trials = 3;
    let rows = run_experiment(&spec, 1, false)?;
    write_csv(&rows, std::io::stdout())
}
