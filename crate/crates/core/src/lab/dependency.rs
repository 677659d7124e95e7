//! The dependency-breaking variable `R = (R_1, …, R_n)`: per coordinate a
//! uniformly chosen player `D_i` and the questions `M_i` of everyone else.
//! Given `x_i` and `r_{-i}`, the players' inputs are independent, also after
//! conditioning on a product event.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{product_of, product_tuples, Distribution};
use crate::error::{Error, Result};
use crate::game::{Game, ProductEvent};
use crate::rational::Rational;
use crate::rng::Stream;

const JOINT_ATOM_BUDGET: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RCoordinate {
    /// The player whose question is hidden.
    pub d: usize,
    /// The other players' questions, in player order.
    pub m: Vec<usize>,
}

impl RCoordinate {
    fn of(question: &[usize], d: usize) -> Self {
        RCoordinate { d, m: question.iter().enumerate().filter(|&(j, _)| j != d).map(|(_, &q)| q).collect() }
    }
}

/// `x` holds one question tuple per coordinate.
pub type QuestionTuples = Vec<Vec<usize>>;

/// Draws `R` for a fixed input `x`, which must lie in the support of `Q^n`.
pub fn dependency_breaking_sample(g: &Game, n: usize, x: &[Vec<usize>], seed: u64) -> Result<Vec<RCoordinate>> {
    if x.len() != n {
        return Err(Error::mismatch("x", format!("expected {n} coordinates, got {}", x.len())));
    }
    let support = g.support_questions();
    if !x.iter().all(|q| support.iter().any(|(s, _)| s == q)) {
        return Err(Error::ZeroProbability);
    }
    let mut rng = Stream::new(seed, 0);
    Ok(x.iter().map(|q| RCoordinate::of(q, rng.below_usize(g.players()))).collect())
}

/// Exact joint law of `(X, R)` under `Q^n`.
pub fn joint_questions_and_r(g: &Game, n: usize) -> Result<Distribution<(QuestionTuples, Vec<RCoordinate>)>> {
    if n == 0 {
        return Err(Error::argument("n", "repetition count must be positive"));
    }
    let k = g.players();
    let per_player = Rational::new(1, k as i64);
    let coord: Vec<((Vec<usize>, RCoordinate), Rational)> = g
        .support_questions()
        .into_iter()
        .flat_map(|(q, w)| {
            let w = &w * &per_player;
            (0..k).map(move |d| ((q.clone(), RCoordinate::of(&q, d)), w.clone()))
        })
        .collect();
    let atoms = (coord.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if atoms > JOINT_ATOM_BUDGET {
        return Err(Error::budget("joint law of (X, R)", atoms, JOINT_ATOM_BUDGET));
    }
    Ok(product_tuples(&vec![coord; n]).into_iter().map(|(t, w)| (t.into_iter().unzip(), w)).collect())
}

/// Player `j`'s repeated question index, coordinate 1 most significant.
pub(crate) fn player_question(g: &Game, x: &[Vec<usize>], j: usize) -> usize {
    x.iter().fold(0, |acc, q| acc * g.question_sizes()[j] + q[j])
}

fn without(r: &[RCoordinate], i: usize) -> Vec<RCoordinate> {
    r.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, v)| v.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub n: usize,
    /// Number of `(i, x_i, r_{-i})` with `P(x_i, r_{-i}, E) > 0`.
    pub conditionings_checked: usize,
    pub holds: bool,
    pub first_failure: Option<String>,
}

/// Checks exactly that `P_{X|x_i, r_{-i}, E}` equals
/// `Π_j P_{X^j | r_{-i}, x_i^j, E^j}` for every coordinate and conditioning.
pub fn check_dependency_breaking(g: &Game, n: usize, e: &ProductEvent) -> Result<FactorizationReport> {
    if e.n() != n {
        return Err(Error::mismatch("event", format!("event is over {} coordinates, expected {n}", e.n())));
    }
    let joint = joint_questions_and_r(g, n)?;
    let k = g.players();
    let players = |x: &QuestionTuples| -> Vec<usize> { (0..k).map(|j| player_question(g, x, j)).collect() };
    let mut checked = 0;
    for i in 0..n {
        // Unnormalized masses of X^j given (j, x_i^j, r_{-i}) and X^j ∈ E^j.
        let mut factors: BTreeMap<(usize, usize, Vec<RCoordinate>), Distribution<usize>> = BTreeMap::new();
        // Unnormalized masses of X given (x_i, r_{-i}) and E.
        let mut lhs: BTreeMap<(Vec<usize>, Vec<RCoordinate>), Distribution<Vec<usize>>> = BTreeMap::new();
        for ((x, r), w) in joint.atoms() {
            let pq = players(x);
            let r_rest = without(r, i);
            for j in 0..k {
                if e.sets()[j][pq[j]] {
                    factors.entry((j, x[i][j], r_rest.clone())).or_default().add(pq[j], w);
                }
            }
            if e.contains(&pq) {
                lhs.entry((x[i].clone(), r_rest)).or_default().add(pq, w);
            }
        }
        for ((xi, r_rest), d) in &lhs {
            checked += 1;
            let left = d.condition(|_| true)?;
            let parts =
                (0..k).map(|j| factors[&(j, xi[j], r_rest.clone())].condition(|_| true)).collect::<Result<Vec<_>>>()?;
            if left != product_of(&parts) {
                return Ok(FactorizationReport {
                    n,
                    conditionings_checked: checked,
                    holds: false,
                    first_failure: Some(format!("coordinate {}, x_i = {xi:?}, r_-i = {r_rest:?}", i + 1)),
                });
            }
        }
    }
    Ok(FactorizationReport { n, conditionings_checked: checked, holds: true, first_failure: None })
}
