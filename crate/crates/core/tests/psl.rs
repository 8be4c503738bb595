mod common;

use std::collections::HashMap;

use common::*;
use proptest::prelude::*;
use psrl::automata::{evaluate_prefix, Word};
use psrl::psl::{nr_mass, pr_evaluate, pr_sample, PrEvaluator};
use psrl::rng::{derive_seed, rng_from_seed};
use psrl::Error;

#[test]
fn evaluation_examples() {
    let s = fixture("signs");
    assert_eq!(pr_evaluate(&s, &Word::empty()).unwrap(), (0.5, 1.0));
    assert_eq!(pr_evaluate(&s, &word(&s, "a")).unwrap(), (0.25, 0.5));
    assert_eq!(pr_evaluate(&s, &word(&s, "b")).unwrap(), (0.0, 0.0));

    let a = fixture("fig1c");
    let (p, pre) = pr_evaluate(&a, &Word::empty()).unwrap();
    assert!((p - 1.0 / 6.0).abs() < 1e-12 && (pre - 1.0).abs() < 1e-12);
    let (p, pre) = pr_evaluate(&a, &word(&a, "a")).unwrap();
    assert!((p - 1.0 / 3.0).abs() < 1e-12 && (pre - 5.0 / 6.0).abs() < 1e-12);

    let g = geometric(0.5);
    assert_eq!(pr_evaluate(&g, &word(&g, "aa")).unwrap().0, 0.125);
}

#[test]
fn rejects_series_that_are_not_pseudo_stochastic() {
    let a = fixture("fig1c").scale_term(2.0).unwrap();
    assert_eq!(
        pr_evaluate(&a, &Word::empty()),
        Err(Error::NotPseudoStochastic)
    );
    assert_eq!(pr_sample(&a, 0), Err(Error::NotPseudoStochastic));
    assert_eq!(nr_mass(&a, 3), Err(Error::NotPseudoStochastic));
}

#[test]
fn trace_steps_are_consistent() {
    let a = fixture("fig2");
    let pr = PrEvaluator::new(&a).unwrap();
    let u = word(&a, "abbab");
    let steps = pr.trace(&u).unwrap();
    assert_eq!(steps.len(), 6);
    for (i, s) in steps.iter().enumerate() {
        assert_eq!(s.prefix, u.prefix(i));
        let sum = s.stop_mass + s.branch_masses.iter().sum::<f64>();
        assert!((sum - s.normalizer).abs() <= 1e-12);
        assert!(s.stop_mass >= 0.0 && s.branch_masses.iter().all(|&m| m >= 0.0));
        assert!(s.cumulative > 0.0 && s.cumulative <= 1.0);
        let (_, pre) = pr.evaluate(&s.prefix).unwrap();
        assert!((pre - s.cumulative).abs() <= 1e-12);
    }
}

#[test]
fn sampler_examples() {
    let s = fixture("signs");
    for seed in 0..200 {
        let w = pr_sample(&s, seed).unwrap();
        assert_eq!(w.count(1), 0, "seed {seed}");
    }
    assert_eq!(pr_sample(&s, 5).unwrap(), pr_sample(&s, 5).unwrap());

    let n = 100_000;
    for (name, stop) in [("geometric", 0.5), ("fig1c", 1.0 / 6.0)] {
        let a = fixture(name);
        let pr = PrEvaluator::new(&a).unwrap();
        let mut rng = rng_from_seed(17);
        let eps = (0..n)
            .filter(|_| pr.sample(&mut rng).unwrap().is_empty())
            .count();
        let freq = eps as f64 / n as f64;
        let sd = (stop * (1.0 - stop) / n as f64).sqrt();
        assert!((freq - stop).abs() <= 3.0 * sd, "{name}: {freq} vs {stop}");
    }
}

#[test]
fn padded_representation_is_reduced_first() {
    let a = psrl::automata::WeightedAutomaton::from_ma_str(
        "ma v1\nalphabet a\nstate p init=1 final=1/2\nstate q init=0 final=1\n\
         trans p a p 1/2\ntrans q a q 2\n",
    )
    .unwrap();
    for k in 0..6 {
        let u = Word::new(vec![0; k]);
        let (p, _) = pr_evaluate(&a, &u).unwrap();
        assert!((p - 0.5f64.powi(k as i32 + 1)).abs() < 1e-12);
    }
}

#[test]
fn normalization_on_fixtures() {
    for name in ["fig1c", "fig2", "fig3b", "signs", "geometric"] {
        let a = fixture(name);
        let pr = PrEvaluator::new(&a).unwrap();
        let k = a.alphabet().len();
        let max_len = if k == 1 { 6 } else { 5 };
        for u in a.alphabet().words_up_to(max_len) {
            let (p, pre) = pr.evaluate(&u).unwrap();
            if pre == 0.0 {
                continue;
            }
            let children: f64 = (0..k).map(|x| pr.evaluate(&u.child(x)).unwrap().1).sum();
            assert!((pre - p - children).abs() <= 1e-9, "{name} {u:?}");
        }
    }
}

#[test]
fn pruning_on_fixtures() {
    for name in ["fig2", "signs", "fig3b"] {
        let a = fixture(name);
        let pr = PrEvaluator::new(&a).unwrap();
        for u in a.alphabet().words_up_to(6) {
            let (p, pre) = pr.evaluate(&u).unwrap();
            if evaluate_prefix(&a, &u).unwrap() <= 0.0 {
                assert_eq!((p, pre), (0.0, 0.0), "{name} {u:?}");
            }
            let r = a.evaluate(&u);
            if pre > 0.0 && r >= 0.0 {
                assert!(r >= p - 1e-12, "{name} {u:?}: r {r} < p_r {p}");
            }
        }
    }
}

#[test]
fn nr_mass_examples() {
    let g = nr_mass(&geometric(0.5), 10).unwrap();
    assert_eq!((g.nr_truncated, g.d1_r_pr_truncated), (0.0, 0.0));
    assert!(g.residual_gap.abs() < 1e-15);

    assert_eq!(nr_mass(&fixture("signs"), 2).unwrap().nr_truncated, 3.0);

    let m = nr_mass(&fixture("fig2"), 12).unwrap();
    assert!(m.nr_truncated > 0.0);
    let lhs = m.d1_r_pr_truncated - 2.0 * m.nr_truncated;
    assert!(
        (lhs - m.residual_gap).abs() < 1e-12,
        "{lhs} vs {}",
        m.residual_gap
    );

    assert!(matches!(
        nr_mass(&fixture("fig2"), 30),
        Err(Error::EnumerationTooLarge { .. })
    ));
}

#[test]
fn residual_gap_shrinks() {
    // the gap is exactly 0 until the first pruned prefix, so the comparison
    // starts past that length
    for name in ["fig1c", "fig2", "fig3b", "geometric"] {
        let a = fixture(name);
        let gaps: Vec<f64> = [8, 12, 16]
            .iter()
            .map(|&l| nr_mass(&a, l).unwrap().residual_gap.abs())
            .collect();
        assert!(
            gaps[1] <= gaps[0] + 1e-12 && gaps[2] <= gaps[1] + 1e-12,
            "{name}: {gaps:?}"
        );
    }
}

/// Upper 10⁻³ quantile of χ² with `df` degrees of freedom (Wilson–Hilferty).
fn chi2_critical(df: f64) -> f64 {
    let z = 3.090_232;
    let h = 2.0 / (9.0 * df);
    df * (1.0 - h + z * h.sqrt()).powi(3)
}

#[test]
fn sampler_matches_evaluator_chi_squared() {
    for name in ["fig2", "fig3b", "signs"] {
        let a = fixture(name);
        let pr = PrEvaluator::new(&a).unwrap();
        let cells = a.alphabet().words_up_to(3);
        let probs: Vec<f64> = cells.iter().map(|w| pr.evaluate(w).unwrap().0).collect();
        let overflow = 1.0 - probs.iter().sum::<f64>();

        let n = 100_000;
        let mut counts: HashMap<Word, usize> = HashMap::new();
        let mut long = 0usize;
        for i in 0..n {
            let w = pr.sample(&mut rng_from_seed(derive_seed(99, i))).unwrap();
            if w.len() <= 3 {
                *counts.entry(w).or_default() += 1;
            } else {
                long += 1;
            }
        }
        let mut stat = 0.0;
        let mut df = -1.0;
        for (w, &p) in cells.iter().zip(&probs) {
            let obs = counts.get(w).copied().unwrap_or(0) as f64;
            if p == 0.0 {
                assert_eq!(obs, 0.0, "{name}: pruned word {w:?} was drawn");
                continue;
            }
            let exp = p * n as f64;
            stat += (obs - exp).powi(2) / exp;
            df += 1.0;
        }
        if overflow > 1e-12 {
            let exp = overflow * n as f64;
            stat += (long as f64 - exp).powi(2) / exp;
            df += 1.0;
        }
        assert!(stat <= chi2_critical(df), "{name}: χ² {stat} on {df} df");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pa_is_a_fixpoint(a in raw_pa(4)) {
        let pr = PrEvaluator::new(&a).unwrap();
        let max_len = match a.alphabet().len() { 1 => 8, 2 => 8, _ => 6 };
        for u in a.alphabet().words_up_to(max_len) {
            prop_assert!((pr.evaluate(&u).unwrap().0 - a.evaluate(&u)).abs() <= 1e-9);
        }
        let m = nr_mass(&a, 4).unwrap();
        prop_assert_eq!(m.nr_truncated, 0.0);
        prop_assert!(m.d1_r_pr_truncated <= 1e-9);
    }

    #[test]
    fn sampling_is_deterministic_in_seed(seed in any::<u64>()) {
        let a = fixture("fig2");
        prop_assert_eq!(pr_sample(&a, seed).unwrap(), pr_sample(&a, seed).unwrap());
    }
}
