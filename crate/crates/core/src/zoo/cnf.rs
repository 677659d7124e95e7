//! Random 3-CNF games: the referee samples one of `m` clauses and sends the
//! clause's three variables to the three players, who win when their bits
//! satisfy it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{binary_alphabet, game_value, Game, SupportPoint};
use crate::rational::Rational;
use crate::rng::Stream;
use crate::structure::{classify_connectivity, Connectivity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Literal {
    /// Zero-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn satisfied_by(&self, bit: usize) -> bool {
        (bit == 1) == self.positive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    pub variables: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    /// Draws `m` clauses uniformly with replacement from the `(2d)^3` ordered
    /// literal triples. Each literal is `u = below(2d)` on stream 0 of
    /// `seed`, with variable `u / 2` and positive polarity when `u` is even.
    pub fn sample(d: usize, m: usize, seed: u64) -> Self {
        let mut rng = Stream::new(seed, 0);
        let clauses = (0..m)
            .map(|_| {
                [(); 3].map(|_| {
                    let u = rng.below(2 * d as u64) as usize;
                    Literal { var: u / 2, positive: u % 2 == 0 }
                })
            })
            .collect();
        CnfFormula { variables: d, clauses }
    }

    /// The game with clause `r` drawn with probability `1/m`. Clauses over the
    /// same variable triple with different literals become separate referee
    /// scenarios of one question; identical clauses are merged.
    pub fn to_game(&self) -> Result<Game> {
        let d = self.variables;
        let m = self.clauses.len();
        if d == 0 || m == 0 {
            return Err(Error::InvalidGame { path: "formula".into(), message: "need d >= 1 and m >= 1".into() });
        }
        // (triple) -> distinct win tables in first-seen order, with counts.
        let mut groups: BTreeMap<Vec<usize>, Vec<(Vec<bool>, i64)>> = BTreeMap::new();
        for clause in &self.clauses {
            let q: Vec<usize> = clause.iter().map(|l| l.var).collect();
            let wins: Vec<bool> =
                (0..8usize).map(|a| (0..3).any(|j| clause[j].satisfied_by(a >> (2 - j) & 1))).collect();
            let entry = groups.entry(q).or_default();
            match entry.iter_mut().find(|(w, _)| *w == wins) {
                Some((_, c)) => *c += 1,
                None => entry.push((wins, 1)),
            }
        }
        let points = groups
            .into_iter()
            .flat_map(|(q, tables)| {
                tables.into_iter().enumerate().map(move |(s, (wins, count))| {
                    SupportPoint::new(q.clone(), s as u64, Rational::new(count, m as i64), wins)
                })
            })
            .collect();
        let vars: Vec<String> = (1..=d).map(|v| format!("x{v}")).collect();
        Game::new(vec![vars; 3], vec![binary_alphabet(); 3], points)
    }
}

/// Samples a formula and builds its game.
pub fn random_3cnf_game(d: usize, m: usize, seed: u64) -> Result<(CnfFormula, Game)> {
    let f = CnfFormula::sample(d, m, seed);
    let g = f.to_game()?;
    Ok((f, g))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnfTrial {
    pub seed: u64,
    pub connected: bool,
    pub playerwise_connected: bool,
    pub value: Option<Rational>,
}

/// Connectivity of one sampled game, and its exact value when asked.
pub fn cnf_trial(d: usize, m: usize, seed: u64, with_value: bool) -> Result<CnfTrial> {
    let (_, g) = random_3cnf_game(d, m, seed)?;
    let c = classify_connectivity(&g);
    let value = if with_value { Some(game_value(&g)?.0) } else { None };
    Ok(CnfTrial {
        seed,
        connected: c == Connectivity::Connected,
        playerwise_connected: c != Connectivity::NotPlayerwiseConnected,
        value,
    })
}

/// [`cnf_trial`] for seeds `0..seeds`, in parallel, in seed order.
pub fn cnf_trials(d: usize, m: usize, seeds: u64, with_value: bool) -> Result<Vec<CnfTrial>> {
    (0..seeds).into_par_iter().map(|s| cnf_trial(d, m, s, with_value)).collect()
}
