mod common;

use common::*;
use proptest::prelude::*;
use psrl::automata::{trim, validate_pa, Alphabet, Word};
use psrl::evalkit::{
    d1_on_support, d1_on_support_with, d1_truncated, random_pa, sample_from, Sample, Series,
};
use psrl::psl::{nr_mass, PrEvaluator};

fn worked() -> Sample {
    Sample::read(fixture_path("worked.sample")).unwrap()
}

#[test]
fn empirical_examples() {
    let s = worked();
    let d = s.empirical().unwrap();
    let w = |t: &str| s.alphabet().parse_word(t).unwrap();
    assert_eq!(d.p_prefix(&w("a")), 5.0 / 6.0);
    assert_eq!(d.p_prefix(&w("aa")), 0.5);
    assert_eq!(d.p_prefix(&w("aaa")), 1.0 / 6.0);
    assert_eq!(d.p(&w("")), 1.0 / 6.0);
    assert_eq!(d.p(&w("a")), 1.0 / 3.0);

    let ab = Alphabet::new(["a", "b"]).unwrap();
    let d = Sample::from_counts(ab.clone(), &[("ab", 1)])
        .unwrap()
        .empirical()
        .unwrap();
    assert_eq!(d.p_prefix(&Word::new(vec![0])), 1.0);
    assert_eq!(d.p_prefix(&Word::new(vec![0, 1])), 1.0);
    assert_eq!(d.p(&Word::new(vec![0])), 0.0);
}

#[test]
fn sample_file_format() {
    let s = worked();
    assert_eq!(s.len(), 60);
    assert_eq!(s.words().iter().filter(|w| w.is_empty()).count(), 10);
    let text = std::fs::read_to_string(fixture_path("worked.sample")).unwrap();
    assert_eq!(s.to_sample_string(), text);

    // whitespace-only lines are ε too
    let t = Sample::from_sample_str("sample v1\nalphabet x y\n   \ny x\n").unwrap();
    assert_eq!(t.words(), &[Word::empty(), Word::new(vec![1, 0])]);
}

#[test]
fn sample_from_examples() {
    assert!(sample_from(&geometric(0.5), 0, 1).unwrap().is_empty());

    let n = 100_000;
    let s = sample_from(&geometric(0.5), n, 4).unwrap();
    let eps = s.words().iter().filter(|w| w.is_empty()).count() as f64 / n as f64;
    assert!((eps - 0.5).abs() <= 3.0 * (0.25 / n as f64).sqrt());

    let a = fixture("fig2");
    let p = PrEvaluator::new(&a)
        .unwrap()
        .evaluate(&Word::empty())
        .unwrap()
        .0;
    let n = 10_000;
    let s = sample_from(&a, n, 4).unwrap();
    let eps = s.words().iter().filter(|w| w.is_empty()).count() as f64 / n as f64;
    assert!(
        (eps - p).abs() <= 3.0 * (p * (1.0 - p) / n as f64).sqrt(),
        "{eps} vs {p}"
    );
}

#[test]
fn d1_examples() {
    let a = fixture("fig2");
    assert_eq!(d1_truncated(&a, &a, 8, [false, false]).unwrap(), 0.0);

    let (g, h) = (geometric(0.5), geometric(1.0 / 3.0));
    let want: f64 = (0..=10)
        .map(|k| (0.5f64.powi(k + 1) - (2.0f64 / 3.0).powi(k) / 3.0).abs())
        .sum();
    assert!((d1_truncated(&g, &h, 10, [false, false]).unwrap() - want).abs() < 1e-12);

    // raw series against its own p_r agrees with the psl diagnostic
    let d = d1_truncated(&a, &a, 12, [false, true]).unwrap();
    let m = nr_mass(&a, 12).unwrap();
    assert!((d - m.d1_r_pr_truncated).abs() < 1e-12);
}

#[test]
fn d1_on_support_examples() {
    let a = fixture("fig3b");
    let ab = a.alphabet().clone();
    let b = fixture("fig2");
    assert_eq!(
        d1_on_support(&a, &b, &Sample::empty(ab.clone()), [false, false]).unwrap(),
        0.0
    );

    let (g, h) = (geometric(0.4), geometric(0.6));
    let all = Sample::new(g.alphabet().clone(), g.alphabet().words_up_to(5)).unwrap();
    let s = d1_on_support(&g, &h, &all, [false, false]).unwrap();
    let t = d1_truncated(&g, &h, 5, [false, false]).unwrap();
    assert!((s - t).abs() < 1e-12);

    // duplicates in the support count once
    let twice = Sample::new(g.alphabet().clone(), [all.words(), all.words()].concat()).unwrap();
    assert_eq!(d1_on_support(&g, &h, &twice, [false, false]).unwrap(), s);

    // a generated support restricted to short words is a subset of the
    // truncated index set
    let support = sample_from(&a, 5000, 8).unwrap();
    let short = Sample::new(
        ab,
        support
            .words()
            .iter()
            .filter(|w| w.len() <= 12)
            .cloned()
            .collect(),
    )
    .unwrap();
    let on_support = d1_on_support(&a, &b, &short, [false, true]).unwrap();
    let truncated = d1_truncated(&a, &b, 12, [false, true]).unwrap();
    assert!(on_support <= truncated + 1e-9);
}

#[test]
fn random_pa_examples() {
    let abc = Alphabet::new(["a", "b", "c"]).unwrap();
    let one = random_pa(1, &abc, 0.0, 3).unwrap();
    assert_eq!(one.term(), &[1.0]);
    assert_eq!(one.num_transitions(), 0);

    let big = random_pa(25, &abc, 0.15, 3).unwrap();
    assert!(validate_pa(&big));
    assert_eq!(trim(&big).num_states(), 25);
    assert_eq!(big, random_pa(25, &abc, 0.15, 3).unwrap());
    assert_ne!(big, random_pa(25, &abc, 0.15, 4).unwrap());
}

#[test]
fn d1_is_a_pseudometric_on_fixtures() {
    let one = vec![fixture("fig1c"), fixture("geometric"), geometric(0.3)];
    let two = ["fig2", "fig3b", "signs"].map(fixture).to_vec();
    for set in [one, two] {
        for x in &set {
            for y in &set {
                let dxy = d1_truncated(x, y, 6, [false, false]).unwrap();
                assert_eq!(dxy, d1_truncated(y, x, 6, [false, false]).unwrap());
                for z in &set {
                    let dxz = d1_truncated(x, z, 6, [false, false]).unwrap();
                    let dzy = d1_truncated(z, y, 6, [false, false]).unwrap();
                    assert!(dxy <= dxz + dzy + 1e-12);
                }
            }
        }
    }
}

#[test]
fn empirical_distribution_converges() {
    let abc = Alphabet::new(["a", "b", "c"]).unwrap();
    let target = random_pa(5, &abc, 0.15, 11).unwrap();
    let t = Series::new(&target, false).unwrap();
    let support = sample_from(&target, 20_000, 1).unwrap();
    let medians: Vec<f64> = [100, 1000, 10_000]
        .iter()
        .map(|&n| {
            median(
                (0..10)
                    .map(|trial| {
                        let emp = sample_from(&target, n, 100 + trial)
                            .unwrap()
                            .empirical()
                            .unwrap();
                        d1_on_support_with(&t, &emp, &support).unwrap()
                    })
                    .collect(),
            )
        })
        .collect();
    assert!(
        medians[0] > medians[1] && medians[1] > medians[2],
        "{medians:?}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prefix_count_recurrence(words in prop::collection::vec(prop::collection::vec(0usize..3, 0..6), 1..40)) {
        let s = Sample::new(
            Alphabet::new(["a", "b", "c"]).unwrap(),
            words.into_iter().map(Word::new).collect(),
        ).unwrap();
        let d = s.empirical().unwrap();
        prop_assert_eq!(d.prefix_count(&Word::empty()), s.len());
        for (u, _) in d.prefixes() {
            let children: usize = (0..3).map(|x| d.prefix_count(&u.child(x))).sum();
            prop_assert_eq!(d.prefix_count(&u), d.word_count(&u) + children);
        }
    }

    #[test]
    fn sample_text_round_trip(words in prop::collection::vec(prop::collection::vec(0usize..2, 0..5), 0..20)) {
        let s = Sample::new(
            Alphabet::new(["x", "yy"]).unwrap(),
            words.into_iter().map(Word::new).collect(),
        ).unwrap();
        prop_assert_eq!(Sample::from_sample_str(&s.to_sample_string()).unwrap(), s);
    }

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>()) {
        let a = fixture("fig3b");
        prop_assert_eq!(sample_from(&a, 20, seed).unwrap(), sample_from(&a, 20, seed).unwrap());
    }
}
