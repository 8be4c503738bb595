//! Dense linear algebra and LP feasibility kernels.

mod eigen;
mod linsolve;
mod matrix;
mod simplex;

pub use eigen::{
    eigenvalues, is_spectral_radius_lt_one, spectral_radius, DEFLATION_TOL, MAX_ITERATIONS,
    RADIUS_MARGIN,
};
pub use linsolve::{solve_linear, PIVOT_TOL};
pub use matrix::Matrix;
pub use simplex::{
    lp_feasible, AbsRow, ConstraintSystem, EqRow, FeasibilityResult, FEASIBILITY_TOL, WITNESS_TOL,
};
