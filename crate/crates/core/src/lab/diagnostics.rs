//! Exact L1 distances between conditioned and unconditioned marginals.
//!
//! For a product distribution `P_V = P_{V_1} × … × P_{V_n}` and an event `W`,
//! super-additivity of relative entropy and Pinsker's inequality give
//! `(1/n) Σ_i ‖P_{V_i|W} − P_{V_i}‖₁ ≤ sqrt((2 ln 2 / n) · log₂(1/P(W)))`.
//! That bound is asserted; the quantities around the dependency-breaking
//! variable carry unspecified constants and are only reported.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{dependency::player_question, joint_questions_and_r, product_tuples, Distribution, RCoordinate};
use crate::error::{Error, Result};
use crate::game::{Game, ProductEvent};
use crate::rational::Rational;

const PINSKER_ATOM_BUDGET: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticReport {
    pub per_coordinate: Vec<Rational>,
    pub average: Rational,
    pub bound: Option<f64>,
    /// True when no bound applies.
    pub pass: bool,
}

impl DiagnosticReport {
    fn new(per_coordinate: Vec<Rational>, bound: Option<f64>) -> Self {
        let n = per_coordinate.len().max(1);
        let average = &per_coordinate.iter().sum::<Rational>() / &Rational::from_integer(n as i64);
        let pass = bound.is_none_or(|b| average.to_f64() <= b * (1.0 + 1e-12) + 1e-15);
        DiagnosticReport { per_coordinate, average, bound, pass }
    }
}

/// `ln(1/p)` without underflow for tiny `p`.
fn ln_inverse(p: &Rational) -> f64 {
    let bits = |v: &num_bigint::BigInt| -> f64 {
        let b = v.bits();
        let shift = b.saturating_sub(60);
        let top: f64 = num_traits::ToPrimitive::to_f64(&(v >> shift)).unwrap_or(f64::MAX);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    };
    bits(&p.denom()) - bits(&p.numer())
}

/// `sqrt((2 ln 2 / n) · log₂(1/p))`.
pub fn pinsker_bound(p: &Rational, n: usize) -> f64 {
    let log2 = ln_inverse(p) / std::f64::consts::LN_2;
    ((2.0 * std::f64::consts::LN_2 / n as f64) * log2.max(0.0)).sqrt()
}

/// Compares `(1/n) Σ ‖P_{V_i|W} − P_{V_i}‖₁` with [`pinsker_bound`].
/// `marginals[i]` is the law of `V_i` over `0..len`.
pub fn pinsker_check(marginals: &[Vec<Rational>], event: &dyn Fn(&[usize]) -> bool) -> Result<DiagnosticReport> {
    let n = marginals.len();
    if n == 0 {
        return Err(Error::argument("marginals", "need at least one coordinate"));
    }
    for (i, m) in marginals.iter().enumerate() {
        if m.iter().any(Rational::is_negative) || !m.iter().sum::<Rational>().is_one() {
            return Err(Error::argument(format!("marginals[{i}]"), "not a probability distribution"));
        }
    }
    let atoms = marginals.iter().try_fold(1u128, |acc, m| acc.checked_mul(m.len() as u128)).unwrap_or(u128::MAX);
    if atoms > PINSKER_ATOM_BUDGET {
        return Err(Error::budget("product distribution atoms", atoms, PINSKER_ATOM_BUDGET));
    }
    let coords: Vec<Vec<(usize, Rational)>> =
        marginals.iter().map(|m| m.iter().cloned().enumerate().filter(|(_, p)| !p.is_zero()).collect()).collect();
    let joint: Distribution<Vec<usize>> = product_tuples(&coords).into_iter().collect();
    let pw = joint.event_probability(|v| event(v));
    let conditioned = joint.condition(|v| event(v))?;
    let per = (0..n)
        .map(|i| {
            let reference: Distribution<usize> = coords[i].iter().cloned().collect();
            conditioned.marginal(|v| v[i]).l1_distance(&reference)
        })
        .collect();
    Ok(DiagnosticReport::new(per, Some(pinsker_bound(&pw, n))))
}

/// One randomized instance of [`pinsker_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PinskerCase {
    pub case: u64,
    pub n: usize,
    pub event_probability: Rational,
    pub average: Rational,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PinskerSuite {
    pub cases: Vec<PinskerCase>,
    pub violations: usize,
}

/// Random product distributions with `1..=n_max` coordinates over 2 to 4
/// values (integer weights 1 to 9) and random nonempty events, each atom of
/// the product kept with probability 1/2. Case `c` uses stream `c`.
pub fn pinsker_suite(n_max: usize, cases: u64, seed: u64) -> Result<PinskerSuite> {
    if n_max == 0 {
        return Err(Error::argument("n", "must be positive"));
    }
    let run = |c: u64| -> Result<PinskerCase> {
        let mut rng = crate::rng::Stream::new(seed, c);
        let n = 1 + rng.below_usize(n_max);
        let marginals: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                let w: Vec<i64> = (0..2 + rng.below_usize(3)).map(|_| 1 + rng.below(9) as i64).collect();
                let total: i64 = w.iter().sum();
                w.iter().map(|&x| Rational::new(x, total)).collect()
            })
            .collect();
        let radix =
            crate::game::Radix::new(&marginals.iter().map(Vec::len).collect::<Vec<_>>()).expect("at most 4^n atoms");
        let mut keep: Vec<bool> = (0..radix.total()).map(|_| rng.below(2) == 1).collect();
        if !keep.iter().any(|&b| b) {
            let i = rng.below_usize(keep.len());
            keep[i] = true;
        }
        let event = |v: &[usize]| keep[radix.encode(v)];
        let report = pinsker_check(&marginals, &event)?;
        let coords: Vec<Vec<(usize, Rational)>> =
            marginals.iter().map(|m| m.iter().cloned().enumerate().collect()).collect();
        let event_probability: Rational =
            product_tuples(&coords).into_iter().filter(|(v, _)| event(v)).map(|(_, p)| p).sum();
        Ok(PinskerCase {
            case: c,
            n,
            event_probability,
            bound: report.bound.expect("pinsker_check always sets a bound"),
            pass: report.pass,
            average: report.average,
        })
    };
    let cases = (0..cases).into_par_iter().map(run).collect::<Result<Vec<_>>>()?;
    let violations = cases.iter().filter(|c| !c.pass).count();
    Ok(PinskerSuite { cases, violations })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingReport {
    pub n: usize,
    pub event_probability: Rational,
    pub inverse_probability: f64,
    pub log2_inverse_probability: f64,
    /// `‖P_{X_i|E} − P_{X_i}‖₁`, with the Pinsker bound.
    pub marginal: DiagnosticReport,
    /// `E_{x_i ∼ P_{X_i|E}} ‖P_{R_{-i}|x_i,E} − P_{R_{-i}|E}‖₁`.
    pub r_given_x: DiagnosticReport,
    /// Per player `j`: `E_{r_{-i} ∼ P_{R_{-i}|E^j}} ‖P_{X_i|r_{-i},E^j} − P_{X_i}‖₁`.
    pub per_player: Vec<DiagnosticReport>,
}

type Atom = (Vec<Vec<usize>>, Vec<RCoordinate>);

/// `Σ_group P(group) · ‖law of value in group − reference(group)‖₁` under a
/// normalized `d`.
fn grouped_l1<G: Ord + Clone, V: Ord + Clone>(
    d: &Distribution<Atom>,
    group: impl Fn(&Atom) -> G,
    value: impl Fn(&Atom) -> V,
    reference: impl Fn(&G) -> Distribution<V>,
) -> Result<Rational> {
    let mut groups: BTreeMap<G, Distribution<V>> = BTreeMap::new();
    for (a, w) in d.atoms() {
        groups.entry(group(a)).or_default().add(value(a), w);
    }
    let mut total = Rational::zero();
    for (gk, masses) in &groups {
        let mass = masses.total();
        total += &(&mass * &masses.condition(|_| true)?.l1_distance(&reference(gk)));
    }
    Ok(total)
}

fn r_without(r: &[RCoordinate], i: usize) -> Vec<RCoordinate> {
    r.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, v)| v.clone()).collect()
}

/// Exact embedding quantities for the event `e` on `G^⊗n`.
pub fn l1_embedding_diagnostic(g: &Game, n: usize, e: &ProductEvent) -> Result<EmbeddingReport> {
    if e.n() != n {
        return Err(Error::mismatch("event", format!("event is over {} coordinates, expected {n}", e.n())));
    }
    let joint = joint_questions_and_r(g, n)?;
    let k = g.players();
    let in_e = |a: &Atom| e.contains(&(0..k).map(|j| player_question(g, &a.0, j)).collect::<Vec<_>>());
    let pe = joint.event_probability(in_e);
    let cond = joint.condition(in_e)?;
    let q: Distribution<Vec<usize>> = g.support_questions().into_iter().collect();

    let mut marginal = Vec::with_capacity(n);
    let mut r_given_x = Vec::with_capacity(n);
    for i in 0..n {
        marginal.push(cond.marginal(|a| a.0[i].clone()).l1_distance(&q));
        let r_law = cond.marginal(|a| r_without(&a.1, i));
        r_given_x.push(grouped_l1(&cond, |a| a.0[i].clone(), |a| r_without(&a.1, i), |_| r_law.clone())?);
    }
    let per_player = (0..k)
        .map(|j| {
            let cj = joint.condition(|a| e.sets()[j][player_question(g, &a.0, j)])?;
            let per = (0..n)
                .map(|i| grouped_l1(&cj, |a| r_without(&a.1, i), |a| a.0[i].clone(), |_| q.clone()))
                .collect::<Result<Vec<_>>>()?;
            Ok(DiagnosticReport::new(per, None))
        })
        .collect::<Result<Vec<_>>>()?;
    let inv = ln_inverse(&pe);
    Ok(EmbeddingReport {
        n,
        inverse_probability: inv.exp(),
        log2_inverse_probability: inv / std::f64::consts::LN_2,
        marginal: DiagnosticReport::new(marginal, Some(pinsker_bound(&pe, n))),
        r_given_x: DiagnosticReport::new(r_given_x, None),
        per_player,
        event_probability: pe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn bit() -> Vec<Rational> {
        vec![q(1, 2), q(1, 2)]
    }

    #[test]
    fn pinsker_examples() {
        let full = pinsker_check(&[bit()], &|_| true).unwrap();
        assert_eq!(full.average, Rational::zero());
        assert_eq!(full.bound, Some(0.0));
        assert!(full.pass);

        let one = pinsker_check(&[bit()], &|v| v[0] == 0).unwrap();
        assert_eq!(one.average, Rational::one());
        assert!((one.bound.unwrap() - (2.0 * 2f64.ln()).sqrt()).abs() < 1e-12);

        let four = pinsker_check(&vec![bit(); 4], &|v| v[0] == 0).unwrap();
        assert_eq!(four.average, q(1, 4));
        assert_eq!(four.per_coordinate, vec![Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()]);
        assert!((four.bound.unwrap() - (2.0 * 2f64.ln() / 4.0).sqrt()).abs() < 1e-12);
        assert!(four.pass);
    }

    #[test]
    fn small_suite_has_no_violations() {
        let s = pinsker_suite(3, 40, 1).unwrap();
        assert_eq!(s.cases.len(), 40);
        assert_eq!(s.violations, 0);
        assert_eq!(s, pinsker_suite(3, 40, 1).unwrap());
    }

    #[test]
    fn pinsker_rejects_null_event() {
        assert_eq!(pinsker_check(&[bit()], &|_| false).unwrap_err().kind(), "zero_probability");
    }

    #[test]
    fn tiny_probabilities_keep_precision() {
        let p = Rational::from_big(num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(2).pow(2000)));
        assert!((ln_inverse(&p) - 2000.0 * 2f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn full_event_has_zero_distances() {
        let g = zoo::anti_correlation();
        let r = l1_embedding_diagnostic(&g, 2, &ProductEvent::full(&g, 2)).unwrap();
        assert!(r.event_probability.is_one());
        assert!(r.marginal.per_coordinate.iter().all(Rational::is_zero));
        assert!(r.r_given_x.per_coordinate.iter().all(Rational::is_zero));
        assert!(r.per_player.iter().all(|p| p.average.is_zero()));
    }

    #[test]
    fn pinned_first_coordinate() {
        let g = zoo::anti_correlation();
        let e = ProductEvent::from_predicates(&g, 2, |j, x| j != 0 || x[0] == 1).unwrap();
        let r = l1_embedding_diagnostic(&g, 2, &e).unwrap();
        assert!(r.marginal.per_coordinate[0].is_positive());
        assert!(r.marginal.per_coordinate[1].is_zero());
        assert!(r.marginal.pass);
        assert_eq!(r.event_probability, q(2, 3));
    }
}
