//! Phase-one simplex for feasibility of absolute-value and equality systems.
//!
//! Free variables are split as `x = x+ - x-`, every `|t - c.x| <= eps` row
//! becomes the pair `c.x <= t + eps`, `c.x >= t - eps`, and artificial
//! variables are minimized. The entering column has the most negative reduced
//! cost, except during long runs of degenerate pivots, where Bland's rule
//! takes over to rule out cycling. Large systems are solved by
//! row generation: a working subset of rows is solved, the witness is checked
//! against the rest, and the most violated rows are added until none remain.

use crate::error::{Error, Result};

/// Phase-one optimum below which the system is declared feasible.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Tolerance used when checking a witness against the full system.
pub const WITNESS_TOL: f64 = 1e-9;
const PIVOT_EPS: f64 = 1e-12;
const ROW_BLOCK: usize = 48;
const MAX_PIVOTS: usize = 100_000;
/// Degenerate pivots in a row after which Bland's rule takes over.
const STALL_LIMIT: usize = 50;

/// `|target - coeffs . x| <= bound`
#[derive(Debug, Clone, PartialEq)]
pub struct AbsRow {
    pub coeffs: Vec<f64>,
    pub target: f64,
    pub bound: f64,
}

/// `coeffs . x = value`
#[derive(Debug, Clone, PartialEq)]
pub struct EqRow {
    pub coeffs: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstraintSystem {
    pub num_vars: usize,
    pub abs_rows: Vec<AbsRow>,
    pub eq_rows: Vec<EqRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FeasibilityResult {
    Feasible(Vec<f64>),
    Infeasible,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[f64]> {
        match self {
            FeasibilityResult::Feasible(w) => Some(w),
            FeasibilityResult::Infeasible => None,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl ConstraintSystem {
    pub fn new(num_vars: usize) -> Self {
        ConstraintSystem {
            num_vars,
            ..Default::default()
        }
    }

    pub fn push_abs(&mut self, coeffs: Vec<f64>, target: f64, bound: f64) {
        self.abs_rows.push(AbsRow {
            coeffs,
            target,
            bound,
        });
    }

    pub fn push_eq(&mut self, coeffs: Vec<f64>, value: f64) {
        self.eq_rows.push(EqRow { coeffs, value });
    }

    pub fn validate(&self) -> Result<()> {
        for r in &self.abs_rows {
            if r.coeffs.len() != self.num_vars {
                return Err(Error::Malformed("abs row has wrong arity".into()));
            }
            if !(r.bound >= 0.0) || !r.bound.is_finite() {
                return Err(Error::Malformed(format!("invalid bound {}", r.bound)));
            }
            if !r.target.is_finite() || r.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::Malformed("non-finite abs row".into()));
            }
        }
        for r in &self.eq_rows {
            if r.coeffs.len() != self.num_vars {
                return Err(Error::Malformed("equality row has wrong arity".into()));
            }
            if !r.value.is_finite() || r.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::Malformed("non-finite equality row".into()));
            }
        }
        Ok(())
    }

    /// Amount by which abs row `i` is violated at `x` (0 when satisfied).
    pub fn abs_violation(&self, i: usize, x: &[f64]) -> f64 {
        let r = &self.abs_rows[i];
        ((r.target - dot(&r.coeffs, x)).abs() - r.bound).max(0.0)
    }

    /// Largest violation over all rows at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let abs = (0..self.abs_rows.len()).map(|i| self.abs_violation(i, x));
        let eq = self
            .eq_rows
            .iter()
            .map(|r| (dot(&r.coeffs, x) - r.value).abs());
        abs.chain(eq).fold(0.0, f64::max)
    }

    pub fn is_satisfied_by(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.num_vars && self.max_violation(x) <= tol
    }
}

/// Decides whether `system` has a solution; returns one when it does.
pub fn lp_feasible(system: &ConstraintSystem) -> Result<FeasibilityResult> {
    system.validate()?;
    let rows = system.abs_rows.len();
    if rows <= 2 * ROW_BLOCK {
        let all: Vec<usize> = (0..rows).collect();
        return solve_subset(system, &all);
    }

    // Start from the rows with the heaviest coefficients.
    let mut order: Vec<usize> = (0..rows).collect();
    let weight = |i: usize| {
        let r = &system.abs_rows[i];
        r.coeffs.iter().map(|c| c.abs()).sum::<f64>() + r.target.abs()
    };
    order.sort_by(|&a, &b| weight(b).total_cmp(&weight(a)).then(a.cmp(&b)));
    let mut active = vec![false; rows];
    let mut working: Vec<usize> = order.iter().copied().take(ROW_BLOCK).collect();
    for &i in &working {
        active[i] = true;
    }

    loop {
        working.sort_unstable();
        let res = solve_subset(system, &working)?;
        let FeasibilityResult::Feasible(x) = &res else {
            return Ok(res);
        };
        let mut violated: Vec<(usize, f64)> = (0..rows)
            .filter(|&i| !active[i])
            .map(|i| (i, system.abs_violation(i, x)))
            .filter(|&(_, v)| v > WITNESS_TOL)
            .collect();
        if violated.is_empty() {
            return Ok(res);
        }
        violated.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        for &(i, _) in violated.iter().take(ROW_BLOCK) {
            active[i] = true;
            working.push(i);
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Relation {
    Le,
    Ge,
    Eq,
}

fn solve_subset(system: &ConstraintSystem, abs_idx: &[usize]) -> Result<FeasibilityResult> {
    let n = system.num_vars;
    let mut cons: Vec<(&[f64], Relation, f64)> = Vec::with_capacity(2 * abs_idx.len() + 1);
    for &i in abs_idx {
        let r = &system.abs_rows[i];
        cons.push((&r.coeffs, Relation::Le, r.target + r.bound));
        cons.push((&r.coeffs, Relation::Ge, r.target - r.bound));
    }
    for r in &system.eq_rows {
        cons.push((&r.coeffs, Relation::Eq, r.value));
    }
    if cons.is_empty() {
        return Ok(FeasibilityResult::Feasible(vec![0.0; n]));
    }

    let m = cons.len();
    let num_slack = cons.iter().filter(|c| c.1 != Relation::Eq).count();
    // normalized relation after making the right-hand side nonnegative
    let normalized: Vec<(f64, Relation)> = cons
        .iter()
        .map(|&(_, rel, rhs)| {
            if rhs < 0.0 {
                let flipped = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (-1.0, flipped)
            } else {
                (1.0, rel)
            }
        })
        .collect();
    let num_art = normalized
        .iter()
        .filter(|(_, r)| *r != Relation::Le)
        .count();
    let slack0 = 2 * n;
    let art0 = slack0 + num_slack;
    let cols = art0 + num_art;
    let width = cols + 1;

    let mut t = vec![0.0; m * width];
    let mut basis = vec![0usize; m];
    let mut is_art = vec![false; cols];
    let (mut next_slack, mut next_art) = (slack0, art0);
    for (i, (&(coeffs, rel, rhs), &(sign, nrel))) in cons.iter().zip(&normalized).enumerate() {
        let row = &mut t[i * width..(i + 1) * width];
        for (j, c) in coeffs.iter().enumerate() {
            row[j] = sign * c;
            row[n + j] = -sign * c;
        }
        row[cols] = sign * rhs;
        if rel != Relation::Eq {
            // the slack sign follows the original relation, scaled by the row sign
            let s = if rel == Relation::Le { 1.0 } else { -1.0 };
            row[next_slack] = sign * s;
            if nrel == Relation::Le {
                basis[i] = next_slack;
            }
            next_slack += 1;
        }
        if nrel != Relation::Le {
            row[next_art] = 1.0;
            is_art[next_art] = true;
            basis[i] = next_art;
            next_art += 1;
        }
    }

    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost = vec![0.0; width];
    for i in 0..m {
        if is_art[basis[i]] {
            for j in 0..width {
                if j == cols || !is_art[j] {
                    cost[j] -= t[i * width + j];
                }
            }
        }
    }

    let mut pivots = 0usize;
    let mut stalled = 0usize;
    loop {
        let enter = if stalled < STALL_LIMIT {
            (0..cols)
                .filter(|&j| cost[j] < -PIVOT_EPS)
                .min_by(|&a, &b| cost[a].total_cmp(&cost[b]))
        } else {
            (0..cols).find(|&j| cost[j] < -PIVOT_EPS)
        };
        let Some(enter) = enter else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let a = t[i * width + enter];
            if a > PIVOT_EPS {
                let ratio = t[i * width + cols] / a;
                let better = match leave {
                    None => true,
                    Some(l) => {
                        ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[i] < basis[l])
                    }
                };
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        // phase one is bounded below by zero, so some row always qualifies
        let Some(r) = leave else { break };
        if best > PIVOT_EPS {
            stalled = 0;
        } else {
            stalled += 1;
        }
        pivot(&mut t, &mut cost, width, m, r, enter);
        basis[r] = enter;
        pivots += 1;
        if pivots > MAX_PIVOTS {
            return Err(Error::NoConvergence { iterations: pivots });
        }
    }

    let infeasibility = -cost[cols];
    if infeasibility > FEASIBILITY_TOL {
        return Ok(FeasibilityResult::Infeasible);
    }
    let mut x = vec![0.0; n];
    for i in 0..m {
        let b = basis[i];
        let v = t[i * width + cols];
        if b < n {
            x[b] += v;
        } else if b < 2 * n {
            x[b - n] -= v;
        }
    }
    Ok(FeasibilityResult::Feasible(x))
}

fn pivot(t: &mut [f64], cost: &mut [f64], width: usize, m: usize, r: usize, c: usize) {
    let p = t[r * width + c];
    for j in 0..width {
        t[r * width + j] /= p;
    }
    t[r * width + c] = 1.0;
    let (before, rest) = t.split_at_mut(r * width);
    let (prow, after) = rest.split_at_mut(width);
    for row in before.chunks_mut(width).chain(after.chunks_mut(width)) {
        let f = row[c];
        if f != 0.0 {
            for (x, y) in row.iter_mut().zip(prow.iter()) {
                *x -= f * y;
            }
            row[c] = 0.0;
        }
    }
    let f = cost[c];
    if f != 0.0 {
        for (x, y) in cost.iter_mut().zip(prow.iter()) {
            *x -= f * y;
        }
        cost[c] = 0.0;
    }
    debug_assert!(m * width == t.len());
}
