//! Monte-Carlo estimates of the winning probability of a strategy for
//! `G^⊗n`, sampled coordinate by coordinate from the base game.

use rayon::prelude::*;
use serde::Serialize;

use super::WeightedSampler;
use crate::error::{Error, Result};
use crate::game::{check_repeated_strategy, Game, ProductStrategy};
use crate::rng::Stream;

/// Failure probability of the reported confidence interval.
pub const HOEFFDING_DELTA: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    /// Hoeffding radius `sqrt(ln(2/δ) / 2T)` at `δ = 0.01`.
    pub radius: f64,
    pub wins: u64,
    pub trials: u64,
}

/// Estimates `Pr[win every coordinate]` for `s`, a strategy of `G^⊗n`.
/// Trial `t` uses stream `t` of `seed`, so the result does not depend on
/// the number of worker threads.
pub fn mc_win_estimate(g: &Game, n: usize, s: &ProductStrategy, trials: u64, seed: u64) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::argument("trials", "must be positive"));
    }
    if n == 0 {
        return Err(Error::argument("n", "repetition count must be positive"));
    }
    check_repeated_strategy(g, n, s)?;
    let base = g.support();
    let sampler = WeightedSampler::new(&base.iter().map(|p| p.weight().clone()).collect::<Vec<_>>())?;
    let k = g.players();
    let qs = g.question_sizes();
    let asz = g.answer_sizes();
    let shifts: Vec<Vec<usize>> = (0..k).map(|j| (0..n).map(|i| asz[j].pow((n - 1 - i) as u32)).collect()).collect();
    let wins: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = Stream::new(seed, t);
            let pts: Vec<usize> = (0..n).map(|_| sampler.draw(&mut rng)).collect();
            let answers: Vec<usize> = (0..k)
                .map(|j| s.answer(j, pts.iter().fold(0, |acc, &p| acc * qs[j] + base[p].question()[j])))
                .collect();
            let won = pts.iter().enumerate().all(|(i, &p)| {
                let a: Vec<usize> = (0..k).map(|j| answers[j] / shifts[j][i] % asz[j]).collect();
                base[p].wins_at(g.answer_index(&a))
            });
            u64::from(won)
        })
        .sum();
    Ok(McEstimate {
        estimate: wins as f64 / trials as f64,
        radius: ((2.0 / HOEFFDING_DELTA).ln() / (2.0 * trials as f64)).sqrt(),
        wins,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{binary_alphabet, tensor_power};
    use crate::rational::Rational;
    use crate::zoo;

    #[test]
    fn always_winning_game() {
        let g = Game::from_predicate(
            vec![binary_alphabet(); 2],
            vec![binary_alphabet(); 2],
            vec![(vec![0, 0], Rational::new(1, 2)), (vec![1, 1], Rational::new(1, 2))],
            |_, _| true,
        )
        .unwrap();
        let s = ProductStrategy::constant_zero(&tensor_power(&g, 2).unwrap());
        let e = mc_win_estimate(&g, 2, &s, 500, 3).unwrap();
        assert_eq!(e.estimate, 1.0);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let g = zoo::anti_correlation();
        let s = ProductStrategy::new(&g, vec![vec![1, 1], vec![0, 0], vec![0, 0]]).unwrap();
        let a = mc_win_estimate(&g, 1, &s, 2000, 11).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| mc_win_estimate(&g, 1, &s, 2000, 11).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_input() {
        let g = zoo::anti_correlation();
        let s = ProductStrategy::constant_zero(&g);
        assert_eq!(mc_win_estimate(&g, 1, &s, 0, 0).unwrap_err().kind(), "invalid_argument");
        assert_eq!(mc_win_estimate(&g, 2, &s, 10, 0).unwrap_err().kind(), "alphabet_mismatch");
    }
}
