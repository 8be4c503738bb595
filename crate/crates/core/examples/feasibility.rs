//! The numeric kernels: absolute-value feasibility systems and spectral
//! radii.

use psrl::numkit::{lp_feasible, spectral_radius, ConstraintSystem, Matrix};

fn main() -> psrl::Result<()> {
    // |x - y| ≤ 0.1, |x + y - 1| ≤ 0.05, x + 2y = 1.5
    let mut sys = ConstraintSystem::new(2);
    sys.push_abs(vec![1.0, -1.0], 0.0, 0.1);
    sys.push_abs(vec![1.0, 1.0], 1.0, 0.05);
    sys.push_eq(vec![1.0, 2.0], 1.5);
    let res = lp_feasible(&sys)?;
    println!("feasible {} witness {:?}", res.is_feasible(), res.witness());

    sys.push_abs(vec![1.0, 0.0], 2.0, 0.5);
    println!("with x ≈ 2: feasible {}", lp_feasible(&sys)?.is_feasible());

    let rotation = Matrix::from_rows(&[[0.0, -0.9], [0.9, 0.0]])?;
    let jordan = Matrix::from_rows(&[[0.5, 1.0, 0.0], [0.0, 0.5, 1.0], [0.0, 0.0, 0.5]])?;
    println!("ρ(rotation) = {}", spectral_radius(&rotation)?);
    println!("ρ(jordan)   = {}", spectral_radius(&jordan)?);
    Ok(())
}
