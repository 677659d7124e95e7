mod common;

use std::collections::BTreeMap;

use common::{arb_dense, random_strategy};
use parrep_core::game::{game_value, strategy_value, tensor_power, ProductEvent};
use parrep_core::lab::{
    check_dependency_breaking, decay_curve, heuristic_value_search, joint_questions_and_r, mc_win_estimate,
    pinsker_check, repeat_strategy, space_c_exact, space_c_sample, space_p_exact, space_p_sample, DecayConfig,
    DecayMethod, Distribution, HeuristicConfig,
};
use parrep_core::rng::Stream;
use parrep_core::zoo;
use parrep_core::Rational;
use proptest::prelude::*;

const SMALL: HeuristicConfig = HeuristicConfig { restarts: 4, steps: 40, base_budget: 1 << 16 };

/// Every atom's empirical frequency lies within 4σ of its exact probability.
fn within_four_sigma<K: Ord + Clone + std::fmt::Debug>(exact: &Distribution<K>, samples: &[K]) {
    assert!(exact.total().is_one());
    let mut counts: BTreeMap<&K, u64> = BTreeMap::new();
    for s in samples {
        *counts.entry(s).or_default() += 1;
    }
    let n = samples.len() as f64;
    for (k, p) in exact.atoms() {
        let p = p.to_f64();
        let f = counts.get(k).copied().unwrap_or(0) as f64 / n;
        let sigma = (p * (1.0 - p) / n).sqrt();
        assert!((f - p).abs() <= 4.0 * sigma, "{k:?}: frequency {f}, probability {p}");
    }
    assert!(counts.keys().all(|k| exact.atoms().contains_key(*k)), "sample outside the support");
}

#[test]
fn sampled_spaces_match_exact_laws() {
    let g = zoo::anti_correlation();
    for n in [1, 2] {
        within_four_sigma(&space_p_exact(&g, n).unwrap(), &space_p_sample(&g, n, 100_000, 11).unwrap());
        within_four_sigma(&space_c_exact(&g, n).unwrap(), &space_c_sample(&g, n, 100_000, 12).unwrap());
    }
}

#[test]
fn sampling_is_seed_deterministic() {
    let g = zoo::anti_correlation();
    assert_eq!(space_p_sample(&g, 3, 500, 4).unwrap(), space_p_sample(&g, 3, 500, 4).unwrap());
    let t = tensor_power(&g, 2).unwrap();
    let s = repeat_strategy(&g, 2, &game_value(&g).unwrap().1);
    let a = mc_win_estimate(&g, 2, &s, 20_000, 9).unwrap();
    assert_eq!(a, mc_win_estimate(&g, 2, &s, 20_000, 9).unwrap());
    let exact = strategy_value(&t, &s).unwrap().to_f64();
    assert!((a.estimate - exact).abs() <= a.radius);
}

#[test]
fn joint_law_of_r_sums_to_one() {
    for (name, g) in zoo::catalog() {
        let joint = joint_questions_and_r(&g, 2).unwrap();
        assert!(joint.total().is_one(), "{name}");
    }
}

#[test]
fn decay_curve_invariants() {
    let g = zoo::ghz_game();
    let cfg = DecayConfig { heuristic: SMALL, ..DecayConfig::default() };
    let curve = decay_curve(&g, 3, &cfg, 0).unwrap();
    assert_eq!(curve.points.iter().map(|p| p.n).collect::<Vec<_>>(), [1, 2, 3]);
    for w in curve.points.windows(2) {
        if let (Some(a), Some(b)) = (&w[0].exact_value, &w[1].exact_value) {
            assert!(b <= a);
        }
    }
    for p in &curve.points {
        match p.method {
            DecayMethod::Exact => assert_eq!(p.exact_value.as_ref(), Some(&p.lower_bound)),
            DecayMethod::Heuristic => assert!(p.exact_value.is_none()),
        }
        assert_eq!(p.witness_digest.len(), 64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn factorization_under_random_product_events(game in 0usize..6, n in 1usize..=2, seed in any::<u64>()) {
        let (name, g) = zoo::catalog().swap_remove(game);
        let mut rng = Stream::new(seed, 0);
        let sets: Vec<Vec<bool>> =
            g.question_sizes().iter().map(|&q| (0..q.pow(n as u32)).map(|_| rng.below(4) > 0).collect()).collect();
        let Ok(e) = ProductEvent::new(&g, n, sets) else { return Ok(()) };
        let r = check_dependency_breaking(&g, n, &e).unwrap();
        prop_assert!(r.holds, "{}: {:?}", name, r.first_failure);
    }

    #[test]
    fn heuristic_never_beats_exact(d in arb_dense(2..=3, 2, 2), n in 1usize..=2, seed in any::<u64>()) {
        let g = d.game();
        let t = tensor_power(&g, n).unwrap();
        let Ok((exact, _)) = game_value(&t) else { return Ok(()) };
        let (v, s) = heuristic_value_search(&g, n, &SMALL, seed).unwrap();
        prop_assert!(v <= exact);
        prop_assert_eq!(strategy_value(&t, &s).unwrap(), v.clone());
        prop_assert!(v >= game_value(&g).unwrap().0.pow(n as u32));
        prop_assert_eq!(heuristic_value_search(&g, n, &SMALL, seed).unwrap().0, v);
    }

    #[test]
    fn pinsker_form_holds(
        sizes in proptest::collection::vec(2usize..=3, 1..=4),
        seed in any::<u64>(),
    ) {
        let mut rng = Stream::new(seed, 0);
        let marginals: Vec<Vec<Rational>> = sizes
            .iter()
            .map(|&s| {
                let w: Vec<i64> = (0..s).map(|_| 1 + rng.below(9) as i64).collect();
                let total: i64 = w.iter().sum();
                w.iter().map(|&x| Rational::new(x, total)).collect()
            })
            .collect();
        let keep = rng.next_u64();
        let event = move |v: &[usize]| {
            let code = v.iter().fold(0usize, |acc, &x| acc * 3 + x);
            code == 0 || keep >> (code % 64) & 1 == 1
        };
        let report = pinsker_check(&marginals, &event).unwrap();
        prop_assert!(report.pass, "{:?}", report);
    }

    #[test]
    fn repeated_strategy_scores_the_power(d in arb_dense(2..=3, 2, 2), seed in any::<u64>()) {
        let g = d.game();
        let s = random_strategy(&g, seed);
        let t = tensor_power(&g, 2).unwrap();
        let v = strategy_value(&g, &s).unwrap();
        prop_assert_eq!(strategy_value(&t, &repeat_strategy(&g, 2, &s)).unwrap(), &v * &v);
    }
}
