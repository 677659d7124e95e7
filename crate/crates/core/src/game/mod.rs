//! k-player games, product strategies, repetition, and value-preserving
//! transformations.
//!
//! A [`Game`] stores its query distribution as a list of support points. Each
//! point carries its question tuple, a positive weight, and a dense win table
//! over answer tuples. Answer tuples are indexed in mixed radix with player 0
//! most significant, so the index order is the lexicographic order of answer
//! tuples.
//!
//! A question tuple may appear more than once when the referee holds private
//! randomness (different win tables for the same questions). Each copy is
//! distinguished by a `scenario` label. Ordinary games have scenario 0
//! everywhere.

mod format;
mod repetition;
mod search;
mod strategy;
mod transform;

pub use format::{GameDescription, StrategyDescription, SupportEntry, WinEntry};
pub(crate) use repetition::check_repeated_strategy;
pub use repetition::{
    condition_game, coordinate_game, coordinate_game_value, coordinate_value, tensor_power, tensor_power_with,
    ProductEvent, TensorBudget,
};
pub(crate) use search::integer_weights;
pub use search::{game_value, game_value_with, strategy_space_size, SearchConfig, DEFAULT_STRATEGY_BUDGET};
pub use strategy::{strategy_value, ProductStrategy};
pub use transform::{normalize_determined, normalize_determined_in_order, uniformize};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Mixed-radix index helpers for tuples over per-player alphabets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radix {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl Radix {
    pub fn new(sizes: &[usize]) -> Option<Self> {
        let mut strides = vec![0; sizes.len()];
        let mut total: usize = 1;
        for j in (0..sizes.len()).rev() {
            strides[j] = total;
            total = total.checked_mul(sizes[j])?;
        }
        Some(Radix { sizes: sizes.to_vec(), strides, total })
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        for j in 0..self.sizes.len() {
            out[j] = index / self.strides[j];
            index %= self.strides[j];
        }
        out
    }

    pub fn digit(&self, index: usize, j: usize) -> usize {
        (index / self.strides[j]) % self.sizes[j]
    }
}

/// One atom of the query distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportPoint {
    question: Vec<usize>,
    scenario: u64,
    weight: Rational,
    wins: Vec<bool>,
}

impl SupportPoint {
    pub fn new(question: Vec<usize>, scenario: u64, weight: Rational, wins: Vec<bool>) -> Self {
        SupportPoint { question, scenario, weight, wins }
    }

    pub fn question(&self) -> &[usize] {
        &self.question
    }

    pub fn scenario(&self) -> u64 {
        self.scenario
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    /// Win table indexed by answer-tuple index.
    pub fn wins(&self) -> &[bool] {
        &self.wins
    }

    pub fn wins_at(&self, answer_index: usize) -> bool {
        self.wins[answer_index]
    }
}

/// A validated k-player game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    questions: Vec<Vec<String>>,
    answers: Vec<Vec<String>>,
    question_radix: Radix,
    answer_radix: Radix,
    support: Vec<SupportPoint>,
}

fn check_alphabets(kind: &str, alphabets: &[Vec<String>]) -> Result<()> {
    for (j, alphabet) in alphabets.iter().enumerate() {
        if alphabet.is_empty() {
            return Err(Error::InvalidGame { path: format!("{kind}[{j}]"), message: "empty alphabet".into() });
        }
        let mut seen = std::collections::HashSet::new();
        for (i, s) in alphabet.iter().enumerate() {
            if !seen.insert(s) {
                return Err(Error::InvalidGame {
                    path: format!("{kind}[{j}][{i}]"),
                    message: format!("duplicate symbol {s:?}"),
                });
            }
        }
    }
    Ok(())
}

impl Game {
    /// Builds a game from explicit support points. Zero-weight points are
    /// dropped; the remaining weights must be nonnegative and sum to 1.
    pub fn new(questions: Vec<Vec<String>>, answers: Vec<Vec<String>>, points: Vec<SupportPoint>) -> Result<Self> {
        let k = questions.len();
        if k == 0 {
            return Err(Error::InvalidGame { path: "players".into(), message: "need at least one player".into() });
        }
        if answers.len() != k {
            return Err(Error::InvalidGame {
                path: "answers".into(),
                message: format!("expected {k} answer alphabets, got {}", answers.len()),
            });
        }
        check_alphabets("questions", &questions)?;
        check_alphabets("answers", &answers)?;
        let qsizes: Vec<usize> = questions.iter().map(Vec::len).collect();
        let asizes: Vec<usize> = answers.iter().map(Vec::len).collect();
        let question_radix =
            Radix::new(&qsizes).ok_or_else(|| Error::budget("question tuple count", "more than usize", usize::MAX))?;
        let answer_radix =
            Radix::new(&asizes).ok_or_else(|| Error::budget("answer tuple count", "more than usize", usize::MAX))?;

        let mut total = Rational::zero();
        let mut kept = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            if p.question.len() != k {
                return Err(Error::InvalidGame {
                    path: format!("support[{i}].q"),
                    message: format!("expected {k} questions, got {}", p.question.len()),
                });
            }
            for (j, &q) in p.question.iter().enumerate() {
                if q >= qsizes[j] {
                    return Err(Error::IndexOutOfRange {
                        path: format!("support[{i}].q[{j}]"),
                        index: q,
                        limit: qsizes[j],
                    });
                }
            }
            if p.weight.is_negative() {
                return Err(Error::InvalidGame { path: format!("support[{i}].w"), message: "negative weight".into() });
            }
            if p.wins.len() != answer_radix.total() {
                return Err(Error::InvalidGame {
                    path: format!("support[{i}]"),
                    message: format!("win table has {} entries, expected {}", p.wins.len(), answer_radix.total()),
                });
            }
            total += &p.weight;
            if !p.weight.is_zero() {
                kept.push(p);
            }
        }
        if !total.is_one() {
            return Err(Error::WeightSum { sum: total });
        }
        if kept.is_empty() {
            return Err(Error::EmptySupport);
        }
        kept.sort_by(|a, b| a.question.cmp(&b.question).then(a.scenario.cmp(&b.scenario)));
        for w in kept.windows(2) {
            if w[0].question == w[1].question && w[0].scenario == w[1].scenario {
                return Err(Error::InvalidGame {
                    path: "support".into(),
                    message: format!("duplicate support entry for question {:?}", w[0].question),
                });
            }
        }
        Ok(Game { questions, answers, question_radix, answer_radix, support: kept })
    }

    /// Builds a game whose win table is given by a predicate on
    /// `(question indices, answer indices)`.
    pub fn from_predicate(
        questions: Vec<Vec<String>>,
        answers: Vec<Vec<String>>,
        distribution: Vec<(Vec<usize>, Rational)>,
        predicate: impl Fn(&[usize], &[usize]) -> bool,
    ) -> Result<Self> {
        let asizes: Vec<usize> = answers.iter().map(Vec::len).collect();
        let radix = Radix::new(&asizes).ok_or_else(|| Error::budget("answer tuple count", "overflow", usize::MAX))?;
        let points = distribution
            .into_iter()
            .map(|(q, w)| {
                let wins = (0..radix.total()).map(|ai| predicate(&q, &radix.decode(ai))).collect();
                SupportPoint::new(q, 0, w, wins)
            })
            .collect();
        Game::new(questions, answers, points)
    }

    pub fn players(&self) -> usize {
        self.questions.len()
    }

    pub fn question_alphabets(&self) -> &[Vec<String>] {
        &self.questions
    }

    pub fn answer_alphabets(&self) -> &[Vec<String>] {
        &self.answers
    }

    pub fn question_sizes(&self) -> &[usize] {
        self.question_radix.sizes()
    }

    pub fn answer_sizes(&self) -> &[usize] {
        self.answer_radix.sizes()
    }

    pub fn question_radix(&self) -> &Radix {
        &self.question_radix
    }

    pub fn answer_radix(&self) -> &Radix {
        &self.answer_radix
    }

    pub fn support(&self) -> &[SupportPoint] {
        &self.support
    }

    /// Distinct question tuples with positive probability, with their total
    /// mass, in lexicographic order.
    pub fn support_questions(&self) -> Vec<(Vec<usize>, Rational)> {
        let mut out: Vec<(Vec<usize>, Rational)> = Vec::new();
        for p in &self.support {
            match out.last_mut() {
                Some((q, w)) if *q == p.question => *w += &p.weight,
                _ => out.push((p.question.clone(), p.weight.clone())),
            }
        }
        out
    }

    /// True when no question tuple carries more than one referee scenario.
    pub fn is_deterministic_referee(&self) -> bool {
        self.support.windows(2).all(|w| w[0].question != w[1].question)
    }

    /// Marginal probability of each question of player `j`.
    pub fn question_marginal(&self, j: usize) -> Vec<Rational> {
        let mut m = vec![Rational::zero(); self.question_sizes()[j]];
        for p in &self.support {
            m[p.question[j]] += &p.weight;
        }
        m
    }

    pub fn answer_index(&self, answers: &[usize]) -> usize {
        self.answer_radix.encode(answers)
    }

    /// Returns the game with the same alphabets and win tables but a new list
    /// of weights, one per current support point (zeros drop the point).
    pub(crate) fn reweighted(&self, weights: Vec<Rational>) -> Result<Game> {
        let points = self
            .support
            .iter()
            .zip(weights)
            .map(|(p, w)| SupportPoint::new(p.question.clone(), p.scenario, w, p.wins.clone()))
            .collect();
        Game::new(self.questions.clone(), self.answers.clone(), points)
    }

    pub(crate) fn with_win_tables(&self, tables: Vec<Vec<bool>>) -> Game {
        let support = self
            .support
            .iter()
            .zip(tables)
            .map(|(p, wins)| SupportPoint::new(p.question.clone(), p.scenario, p.weight.clone(), wins))
            .collect();
        Game { support, ..self.clone() }
    }

    /// Looks up the index of `symbol` in player `j`'s question alphabet.
    pub fn question_symbol_index(&self, j: usize, symbol: &str) -> Option<usize> {
        self.questions.get(j)?.iter().position(|s| s == symbol)
    }

    pub fn answer_symbol_index(&self, j: usize, symbol: &str) -> Option<usize> {
        self.answers.get(j)?.iter().position(|s| s == symbol)
    }

    /// Checks whether answers `a` win on the support point `p`.
    pub fn wins(&self, point: usize, answers: &[usize]) -> bool {
        self.support[point].wins[self.answer_index(answers)]
    }

    /// Groups support point indices by player `j`'s question.
    pub(crate) fn points_by_question(&self, j: usize) -> BTreeMap<usize, Vec<usize>> {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, p) in self.support.iter().enumerate() {
            m.entry(p.question[j]).or_default().push(i);
        }
        m
    }
}

/// Alphabet `{"0", "1", ..., "n-1"}`.
pub fn numeric_alphabet(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Alphabet `{"0", "1"}`.
pub fn binary_alphabet() -> Vec<String> {
    numeric_alphabet(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial(weights: &[(i64, i64)]) -> Result<Game> {
        let dist = weights.iter().enumerate().map(|(i, &(n, d))| (vec![i], Rational::new(n, d))).collect();
        Game::from_predicate(vec![numeric_alphabet(weights.len())], vec![binary_alphabet()], dist, |_, a| a[0] == 0)
    }

    #[test]
    fn radix_round_trip() {
        let r = Radix::new(&[2, 3, 4]).unwrap();
        assert_eq!(r.total(), 24);
        for i in 0..24 {
            assert_eq!(r.encode(&r.decode(i)), i);
        }
        assert_eq!(r.encode(&[1, 0, 0]), 12);
        assert_eq!(r.digit(23, 1), 2);
    }

    #[test]
    fn weight_sum_is_checked() {
        match trivial(&[(1, 2), (1, 2), (1, 6)]) {
            Err(Error::WeightSum { sum }) => assert_eq!(sum.to_string(), "7/6"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_weights_are_stripped() {
        let g = trivial(&[(1, 2), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.support().len(), 2);
        assert_eq!(g.support()[1].question(), &[2]);
    }

    #[test]
    fn empty_support_rejected() {
        let g = Game::new(vec![binary_alphabet()], vec![binary_alphabet()], vec![]);
        assert!(matches!(g, Err(Error::WeightSum { .. })));
        let g = Game::new(
            vec![binary_alphabet()],
            vec![binary_alphabet()],
            vec![SupportPoint::new(vec![0], 0, Rational::zero(), vec![true, true])],
        );
        assert!(matches!(g, Err(Error::WeightSum { .. }) | Err(Error::EmptySupport)));
    }

    #[test]
    fn duplicate_symbols_rejected() {
        let g = Game::from_predicate(
            vec![vec!["a".into(), "a".into()]],
            vec![binary_alphabet()],
            vec![(vec![0], Rational::one())],
            |_, _| true,
        );
        assert_eq!(g.unwrap_err().kind(), "invalid_game");
    }
}
