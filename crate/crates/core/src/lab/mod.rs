//! Experiments beyond exhaustive search: Monte-Carlo estimates, heuristic
//! lower bounds, correlated sampling spaces, the dependency-breaking
//! variable, distance diagnostics, and decay curves.

mod decay;
mod dependency;
mod diagnostics;
mod dist;
mod heuristic;
mod montecarlo;
mod spaces;

pub use decay::{decay_curve, DecayConfig, DecayCurve, DecayMethod, DecayPoint, CSV_COLUMNS};
pub use dependency::{
    check_dependency_breaking, dependency_breaking_sample, joint_questions_and_r, FactorizationReport, QuestionTuples,
    RCoordinate,
};
pub use diagnostics::{
    l1_embedding_diagnostic, pinsker_bound, pinsker_check, pinsker_suite, DiagnosticReport, EmbeddingReport,
    PinskerCase, PinskerSuite,
};
pub use dist::{product_of, Distribution};
pub use heuristic::{heuristic_value_search, repeat_strategy, HeuristicConfig};
pub use montecarlo::{mc_win_estimate, McEstimate, HOEFFDING_DELTA};
pub use spaces::{
    space_c_exact, space_c_sample, space_p_exact, space_p_sample, spaces_report, CAtom, ConditionalEntry, PAtom,
    PairEntry, SpacesReport, SPACE_C_MAX_N, SPACE_P_MAX_N,
};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rng::Stream;

/// Draws indices with exact rational probabilities, scaled to integers.
#[derive(Debug, Clone)]
pub(crate) struct WeightedSampler {
    cumulative: Vec<u64>,
}

impl WeightedSampler {
    pub(crate) fn new(weights: &[Rational]) -> Result<Self> {
        let too_big = || Error::Unsupported("weight denominators too large for sampling".into());
        let mut scale: u128 = 1;
        for w in weights {
            let d = w.denom_u128().filter(|&d| d <= u64::MAX as u128).ok_or_else(too_big)?;
            scale = num_integer::Integer::lcm(&scale, &d);
            if scale > u64::MAX as u128 {
                return Err(too_big());
            }
        }
        let mut acc: u64 = 0;
        let mut cumulative = Vec::with_capacity(weights.len());
        for w in weights {
            acc += w.scaled_u128(scale).ok_or_else(too_big)? as u64;
            cumulative.push(acc);
        }
        if acc == 0 {
            return Err(Error::ZeroProbability);
        }
        Ok(WeightedSampler { cumulative })
    }

    pub(crate) fn draw(&self, rng: &mut Stream) -> usize {
        let r = rng.below(*self.cumulative.last().expect("nonempty"));
        self.cumulative.partition_point(|&c| c <= r)
    }
}

/// Per-coordinate supports as `(value, probability)` lists, expanded to the
/// product over coordinates in lexicographic order.
pub(crate) fn product_tuples<T: Clone>(coords: &[Vec<(T, Rational)>]) -> Vec<(Vec<T>, Rational)> {
    let mut out: Vec<(Vec<T>, Rational)> = vec![(Vec::new(), Rational::one())];
    for c in coords {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for (prefix, p) in &out {
            for (v, q) in c {
                let mut t = prefix.clone();
                t.push(v.clone());
                next.push((t, p * q));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_frequencies() {
        let s = WeightedSampler::new(&[Rational::new(1, 3), Rational::zero(), Rational::new(2, 3)]).unwrap();
        let mut rng = Stream::new(7, 0);
        let mut counts = [0usize; 3];
        for _ in 0..30_000 {
            counts[s.draw(&mut rng)] += 1;
        }
        assert_eq!(counts[1], 0);
        assert!((counts[0] as f64 / 30_000.0 - 1.0 / 3.0).abs() < 0.02);
    }

    #[test]
    fn product_tuples_order() {
        let bit = vec![(0u8, Rational::new(1, 2)), (1u8, Rational::new(1, 2))];
        let t = product_tuples(&[bit.clone(), bit]);
        assert_eq!(
            t.iter().map(|x| x.0.clone()).collect::<Vec<_>>(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert!(t.iter().all(|x| x.1 == Rational::new(1, 4)));
    }
}
