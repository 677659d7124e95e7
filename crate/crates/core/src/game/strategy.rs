use super::Game;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One deterministic answer table per player, indexed by question index.
///
/// The derived `Ord` compares the concatenated tables (player 0 first,
/// questions in alphabet order); this is the encoding behind "smallest
/// optimal strategy".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductStrategy {
    tables: Vec<Vec<usize>>,
}

impl ProductStrategy {
    /// Checks the table shapes and answer ranges against `g`.
    pub fn new(g: &Game, tables: Vec<Vec<usize>>) -> Result<Self> {
        if tables.len() != g.players() {
            return Err(Error::mismatch("strategy", format!("expected {} players, got {}", g.players(), tables.len())));
        }
        for (j, t) in tables.iter().enumerate() {
            if t.len() != g.question_sizes()[j] {
                return Err(Error::mismatch(
                    format!("strategy[{j}]"),
                    format!("expected {} entries, got {}", g.question_sizes()[j], t.len()),
                ));
            }
            if let Some((q, &a)) = t.iter().enumerate().find(|(_, &a)| a >= g.answer_sizes()[j]) {
                return Err(Error::IndexOutOfRange {
                    path: format!("strategy[{j}][{q}]"),
                    index: a,
                    limit: g.answer_sizes()[j],
                });
            }
        }
        Ok(ProductStrategy { tables })
    }

    /// Every player answers with its first symbol on every question.
    pub fn constant_zero(g: &Game) -> Self {
        ProductStrategy { tables: g.question_sizes().iter().map(|&n| vec![0; n]).collect() }
    }

    pub(crate) fn from_tables_unchecked(tables: Vec<Vec<usize>>) -> Self {
        ProductStrategy { tables }
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn answer(&self, player: usize, question: usize) -> usize {
        self.tables[player][question]
    }

    pub fn answers_for(&self, question: &[usize]) -> Vec<usize> {
        question.iter().enumerate().map(|(j, &q)| self.tables[j][q]).collect()
    }

    /// Flat encoding: the concatenation of all tables.
    pub fn encoding(&self) -> Vec<usize> {
        self.tables.concat()
    }

    fn compatible(&self, g: &Game) -> Result<()> {
        ProductStrategy::new(g, self.tables.clone()).map(|_| ())
    }
}

/// Exact winning probability of `s` in `g`.
pub fn strategy_value(g: &Game, s: &ProductStrategy) -> Result<Rational> {
    s.compatible(g)?;
    Ok(g.support().iter().filter(|p| p.wins_at(g.answer_index(&s.answers_for(p.question())))).map(|p| p.weight()).sum())
}
