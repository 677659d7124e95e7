//! The non-signaling value as a linear program.
//!
//! Variables are `p(a|x)` for every question tuple `x` of the full product
//! `X^1 × … × X^k` (not only the support) and every answer tuple `a`, at
//! index `x·|A| + a`. Each `p(·|x)` is a distribution, and for each player
//! subset `J` the marginal on `a^J` may depend on `x^J` only. The objective
//! is the winning probability on the support.

use std::collections::BTreeMap;

use super::{simplex_solve, LinearProgram, Relation};
use crate::error::{Error, Result};
use crate::game::{Game, Radix};
use crate::rational::Rational;

pub const DEFAULT_NS_VARIABLE_BUDGET: usize = 200_000;

/// Which player subsets receive explicit marginal constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NsConstraints {
    /// Only the `k` subsets of size `k − 1`; the others follow.
    #[default]
    KMinusOneSubsets,
    AllProperSubsets,
}

#[derive(Debug, Clone)]
pub struct NsOptions {
    pub constraints: NsConstraints,
    /// Maximum number of LP variables `|X|·|A|`.
    pub budget: usize,
}

impl Default for NsOptions {
    fn default() -> Self {
        NsOptions { constraints: NsConstraints::default(), budget: DEFAULT_NS_VARIABLE_BUDGET }
    }
}

/// Conditional answer distributions `p(a|x)` over the full question product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsStrategy {
    questions: Radix,
    answers: Radix,
    /// `table[x][a]`.
    table: Vec<Vec<Rational>>,
}

/// Projection of a mixed-radix tuple onto the players in `mask`.
fn project(radix: &Radix, index: usize, mask: usize) -> Vec<usize> {
    (0..radix.sizes().len()).filter(|j| mask >> j & 1 == 1).map(|j| radix.digit(index, j)).collect()
}

/// Indices grouped by their projection onto `mask`, each group ascending.
fn groups(radix: &Radix, mask: usize) -> Vec<Vec<usize>> {
    let mut m: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for i in 0..radix.total() {
        m.entry(project(radix, i, mask)).or_default().push(i);
    }
    m.into_values().collect()
}

fn subsets(k: usize, mode: NsConstraints) -> Vec<usize> {
    let full = (1usize << k) - 1;
    match mode {
        NsConstraints::KMinusOneSubsets if k >= 2 => (0..k).map(|j| full & !(1 << j)).collect(),
        NsConstraints::KMinusOneSubsets => Vec::new(),
        NsConstraints::AllProperSubsets => (1..full).collect(),
    }
}

impl NsStrategy {
    pub fn table(&self) -> &[Vec<Rational>] {
        &self.table
    }

    pub fn probability(&self, x: &[usize], a: &[usize]) -> &Rational {
        &self.table[self.questions.encode(x)][self.answers.encode(a)]
    }

    /// Winning probability on `g`.
    pub fn value(&self, g: &Game) -> Rational {
        let mut total = Rational::zero();
        for p in g.support() {
            let row = &self.table[self.questions.encode(p.question())];
            let win: Rational = row.iter().zip(p.wins()).filter(|(_, &w)| w).map(|(v, _)| v).sum();
            total += &(p.weight() * &win);
        }
        total
    }

    /// Exact check: every row is a distribution and every proper subset's
    /// marginal is independent of the other players' questions.
    pub fn is_valid(&self) -> bool {
        let rows_ok =
            self.table.iter().all(|row| row.iter().all(|v| !v.is_negative()) && row.iter().sum::<Rational>().is_one());
        if !rows_ok {
            return false;
        }
        let k = self.questions.sizes().len();
        subsets(k, NsConstraints::AllProperSubsets).into_iter().all(|mask| {
            let marginal = |x: usize| -> BTreeMap<Vec<usize>, Rational> {
                let mut m: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
                for (a, v) in self.table[x].iter().enumerate() {
                    *m.entry(project(&self.answers, a, mask)).or_default() += v;
                }
                m
            };
            groups(&self.questions, mask).iter().all(|g| {
                let first = marginal(g[0]);
                g[1..].iter().all(|&x| marginal(x) == first)
            })
        })
    }
}

/// Builds the non-signaling program of `g`.
pub fn build_ns_lp(g: &Game, options: &NsOptions) -> Result<LinearProgram> {
    let xr = Radix::new(g.question_sizes())
        .ok_or_else(|| Error::budget("non-signaling LP variables", "more than usize", options.budget))?;
    let ar = g.answer_radix().clone();
    let na = ar.total();
    let nvars = xr.total().saturating_mul(na);
    if nvars > options.budget {
        return Err(Error::budget("non-signaling LP variables", nvars, options.budget));
    }
    let var = |x: usize, a: usize| x * na + a;
    let mut lp = LinearProgram::new(nvars);
    let one = Rational::one();
    for x in 0..xr.total() {
        lp.add((0..na).map(|a| (var(x, a), one.clone())).collect(), Relation::Eq, Rational::one());
    }
    for mask in subsets(g.players(), options.constraints) {
        let answer_groups = groups(&ar, mask);
        for qg in groups(&xr, mask) {
            for pair in qg.windows(2) {
                for ag in &answer_groups {
                    let mut coeffs: Vec<(usize, Rational)> =
                        ag.iter().map(|&a| (var(pair[0], a), one.clone())).collect();
                    coeffs.extend(ag.iter().map(|&a| (var(pair[1], a), -Rational::one())));
                    lp.add(coeffs, Relation::Eq, Rational::zero());
                }
            }
        }
    }
    let mut objective: BTreeMap<usize, Rational> = BTreeMap::new();
    for p in g.support() {
        let x = xr.encode(p.question());
        for (a, &w) in p.wins().iter().enumerate() {
            if w {
                *objective.entry(var(x, a)).or_default() += p.weight();
            }
        }
    }
    lp.objective = objective.into_iter().collect();
    Ok(lp)
}

pub fn ns_value(g: &Game) -> Result<(Rational, NsStrategy)> {
    ns_value_with(g, &NsOptions::default())
}

pub fn ns_value_with(g: &Game, options: &NsOptions) -> Result<(Rational, NsStrategy)> {
    let lp = build_ns_lp(g, options)?;
    let sol = simplex_solve(&lp)?;
    let questions = Radix::new(g.question_sizes()).expect("checked while building");
    let na = g.answer_radix().total();
    let table = sol.primal.chunks(na).map(<[Rational]>::to_vec).collect();
    let strategy = NsStrategy { questions, answers: g.answer_radix().clone(), table };
    if !strategy.is_valid() || strategy.value(g) != sol.optimum {
        return Err(Error::Internal("non-signaling witness failed verification".into()));
    }
    Ok((sol.optimum, strategy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{binary_alphabet, game_value, numeric_alphabet};
    use crate::zoo;

    #[test]
    fn anti_correlation_program_size() {
        let lp = build_ns_lp(&zoo::anti_correlation(), &NsOptions::default()).unwrap();
        assert_eq!(lp.num_vars, 64);
    }

    #[test]
    fn anti_correlation_value() {
        let (v, s) = ns_value(&zoo::anti_correlation()).unwrap();
        assert_eq!(v, Rational::new(2, 3));
        assert!(s.is_valid());
    }

    #[test]
    fn ghz_has_a_perfect_box() {
        let (v, _) = ns_value(&zoo::ghz_game()).unwrap();
        assert!(v.is_one());
    }

    #[test]
    fn single_player_matches_classical() {
        let g = Game::from_predicate(
            vec![binary_alphabet()],
            vec![numeric_alphabet(3)],
            vec![(vec![0], Rational::new(1, 2)), (vec![1], Rational::new(1, 2))],
            |q, a| q[0] == 0 && a[0] == 2,
        )
        .unwrap();
        assert_eq!(ns_value(&g).unwrap().0, game_value(&g).unwrap().0);
    }

    #[test]
    fn formulations_agree() {
        let all = NsOptions { constraints: NsConstraints::AllProperSubsets, ..Default::default() };
        for g in [zoo::anti_correlation(), zoo::five_point_example(), zoo::four_point_and_default()] {
            assert_eq!(ns_value(&g).unwrap().0, ns_value_with(&g, &all).unwrap().0);
        }
    }

    #[test]
    fn budget_refusal() {
        let opts = NsOptions { budget: 10, ..Default::default() };
        assert_eq!(ns_value_with(&zoo::anti_correlation(), &opts).unwrap_err().kind(), "budget_exceeded");
    }
}
