use std::collections::{BTreeMap, VecDeque};

use super::ma::WeightedAutomaton;
use super::word::Word;
use crate::error::{Error, Result};
use crate::numkit::{is_spectral_radius_lt_one, solve_linear, spectral_radius, Matrix};

/// Tolerance on `|r(Σ*) − 1|` for the pseudo-stochastic verdict.
pub const SERIES_TOTAL_TOL: f64 = 1e-6;
/// Relative rank tolerance used by [`reduce`].
pub const RANK_TOL: f64 = 1e-9;
/// Tolerance used by [`validate_pa`] and [`is_pda`].
pub const PA_TOL: f64 = 1e-9;

/// Evidence gathered by [`is_pseudo_stochastic`].
#[derive(Debug, Clone, PartialEq)]
pub struct PslCertificate {
    /// State count of the reduced representation.
    pub reduced_dimension: usize,
    /// Spectral radius of the reduced letter-summed matrix.
    pub spectral_radius_value: f64,
    /// `r(Σ*)`, present only when the spectral radius is below 1.
    pub series_total: Option<f64>,
    pub verdict: bool,
}

/// Per-state tail masses `s_q = r_{A,q}(Σ*)`, the solution of `s = τ + M_Σ s`.
///
/// Fails with [`Error::SpectralRadiusNotLtOne`] unless `ρ(M_Σ) < 1`;
/// [`Error::Undecided`] is passed through for borderline inputs.
pub fn tail_masses(a: &WeightedAutomaton) -> Result<Vec<f64>> {
    let n = a.num_states();
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = a.letter_sum_matrix();
    if !is_spectral_radius_lt_one(&m)? {
        return Err(Error::SpectralRadiusNotLtOne);
    }
    let mut lhs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { 1.0 } else { 0.0 };
            lhs.push(id - m[(i, j)]);
        }
    }
    solve_linear(&Matrix::new(n, n, lhs)?, a.term())
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// `r_A(uΣ*) = ι · M_u · s`.
pub fn evaluate_prefix(a: &WeightedAutomaton, u: &Word) -> Result<f64> {
    let s = tail_masses(a)?;
    Ok(dot(&a.forward(u), &s))
}

/// `r_A(Σ*) = ι · s`.
pub fn series_sum(a: &WeightedAutomaton) -> Result<f64> {
    let s = tail_masses(a)?;
    Ok(dot(a.init(), &s))
}

/// Restricts `a` to the given states, in the given order.
fn restrict(a: &WeightedAutomaton, keep: &[usize]) -> WeightedAutomaton {
    let mut new_index = vec![usize::MAX; a.num_states()];
    for (k, &q) in keep.iter().enumerate() {
        new_index[q] = k;
    }
    let trans: BTreeMap<_, _> = a
        .transitions()
        .filter(|&((p, _, q), _)| new_index[p] != usize::MAX && new_index[q] != usize::MAX)
        .map(|((p, x, q), w)| ((new_index[p], x, new_index[q]), w))
        .collect();
    WeightedAutomaton::new(
        a.alphabet().clone(),
        keep.iter().map(|&q| a.state_names()[q].clone()).collect(),
        keep.iter().map(|&q| a.init()[q]).collect(),
        keep.iter().map(|&q| a.term()[q]).collect(),
        trans,
    )
    .expect("restriction of a valid automaton is valid")
}

/// Removes states that are not both accessible and co-accessible in the
/// support graph. The series is unchanged.
pub fn trim(a: &WeightedAutomaton) -> WeightedAutomaton {
    let n = a.num_states();
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    for ((p, _, q), _) in a.transitions() {
        succ[p].push(q);
        pred[q].push(p);
    }
    let reach = |seeds: Vec<usize>, adj: &[Vec<usize>]| {
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = seeds.into_iter().collect();
        for &q in &queue {
            seen[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &r in &adj[q] {
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        seen
    };
    let fwd = reach((0..n).filter(|&q| a.init()[q] != 0.0).collect(), &succ);
    let bwd = reach((0..n).filter(|&q| a.term()[q] != 0.0).collect(), &pred);
    let keep: Vec<usize> = (0..n).filter(|&q| fwd[q] && bwd[q]).collect();
    restrict(a, &keep)
}

/// Orthonormal basis of the smallest subspace containing `start` and closed
/// under every map in `apply`.
fn invariant_basis<F>(start: &[f64], symbols: usize, apply: F) -> Vec<Vec<f64>>
where
    F: Fn(&[f64], usize) -> Vec<f64>,
{
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let push = |basis: &mut Vec<Vec<f64>>, v: Vec<f64>| -> bool {
        let scale = dot(&v, &v).sqrt().max(1.0);
        let mut w = v;
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for b in basis.iter() {
                let c = dot(&w, b);
                w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= c * bi);
            }
        }
        let norm = dot(&w, &w).sqrt();
        if norm > RANK_TOL * scale {
            w.iter_mut().for_each(|wi| *wi /= norm);
            basis.push(w);
            true
        } else {
            false
        }
    };
    push(&mut basis, start.to_vec());
    let mut i = 0;
    while i < basis.len() {
        for x in 0..symbols {
            let v = apply(&basis[i], x);
            push(&mut basis, v);
        }
        i += 1;
    }
    basis
}

fn numbered_states(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("q{i}")).collect()
}

/// Reduced representation of the series of `a`: a forward (reachable) basis
/// of `span{ι·M_u}` followed by a backward (observable) basis of
/// `span{M_u·τ}`. States are renamed `q0, q1, ...`.
pub fn reduce(a: &WeightedAutomaton) -> WeightedAutomaton {
    let k = a.alphabet().len();

    let fwd = invariant_basis(a.init(), k, |v, x| a.step(v, x));
    let mut trans = BTreeMap::new();
    for (i, b) in fwd.iter().enumerate() {
        for x in 0..k {
            let img = a.step(b, x);
            for (j, c) in fwd.iter().enumerate() {
                trans.insert((i, x, j), dot(&img, c));
            }
        }
    }
    let mid = WeightedAutomaton::new(
        a.alphabet().clone(),
        numbered_states(fwd.len()),
        fwd.iter().map(|b| dot(a.init(), b)).collect(),
        fwd.iter().map(|b| dot(b, a.term())).collect(),
        trans,
    )
    .expect("projected automaton is valid");

    let bwd = invariant_basis(mid.term(), k, |v, x| mid.step_back(v, x));
    let mut trans = BTreeMap::new();
    for (j, c) in bwd.iter().enumerate() {
        for x in 0..k {
            let img = mid.step_back(c, x);
            for (i, b) in bwd.iter().enumerate() {
                trans.insert((i, x, j), dot(b, &img));
            }
        }
    }
    WeightedAutomaton::new(
        a.alphabet().clone(),
        numbered_states(bwd.len()),
        bwd.iter().map(|c| dot(mid.init(), c)).collect(),
        bwd.iter().map(|c| dot(c, mid.term())).collect(),
        trans,
    )
    .expect("projected automaton is valid")
}

/// Decides whether `a` computes a pseudo-stochastic language: reduce, then
/// require `ρ < 1` on the reduced form and `r(Σ*) = 1`.
pub fn is_pseudo_stochastic(a: &WeightedAutomaton) -> Result<PslCertificate> {
    let r = reduce(a);
    if r.num_states() == 0 {
        return Ok(PslCertificate {
            reduced_dimension: 0,
            spectral_radius_value: 0.0,
            series_total: Some(0.0),
            verdict: false,
        });
    }
    let m = r.letter_sum_matrix();
    let rho = spectral_radius(&m)?;
    let series_total = if is_spectral_radius_lt_one(&m)? {
        Some(series_sum(&r)?)
    } else {
        None
    };
    let verdict = series_total.is_some_and(|t| (t - 1.0).abs() <= SERIES_TOTAL_TOL);
    Ok(PslCertificate {
        reduced_dimension: r.num_states(),
        spectral_radius_value: rho,
        series_total,
        verdict,
    })
}

/// Checks the probabilistic-automaton conditions: weights in `[0, 1]`,
/// `Σ ι = 1` and `τ(q) + φ(q, Σ, Q) = 1` for every state.
pub fn validate_pa(a: &WeightedAutomaton) -> bool {
    let in_unit = |w: f64| (-PA_TOL..=1.0 + PA_TOL).contains(&w);
    if !a.init().iter().chain(a.term()).all(|&w| in_unit(w)) {
        return false;
    }
    if (a.init().iter().sum::<f64>() - 1.0).abs() > PA_TOL {
        return false;
    }
    let mut out = a.term().to_vec();
    for ((p, _, _), w) in a.transitions() {
        if !in_unit(w) {
            return false;
        }
        out[p] += w;
    }
    out.iter().all(|m| (m - 1.0).abs() <= PA_TOL)
}

/// [`validate_pa`] plus a deterministic support: one initial state and at
/// most one successor per `(state, symbol)`.
pub fn is_pda(a: &WeightedAutomaton) -> bool {
    if !validate_pa(a) {
        return false;
    }
    if a.init().iter().filter(|&&w| w > PA_TOL).count() != 1 {
        return false;
    }
    let mut targets = BTreeMap::new();
    for ((p, x, _), w) in a.transitions() {
        if w > PA_TOL {
            *targets.entry((p, x)).or_insert(0usize) += 1;
        }
    }
    targets.values().all(|&c| c == 1)
}
