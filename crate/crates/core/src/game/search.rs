//! Exact game value by branch-and-bound.
//!
//! The answer tables of players `0..k-1` are enumerated depth first in the
//! order of the strategy encoding (player major, questions ascending, answers
//! ascending). The last player always plays its exact best response, taking
//! the smallest maximizing answer, so the first optimal leaf reached is the
//! lexicographically smallest optimal strategy.
//!
//! Weights are scaled to integers by the lcm of their denominators, which
//! keeps the inner loop in `u128` arithmetic.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{Game, ProductStrategy};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default cap on the number of product strategies, `2^30`.
pub const DEFAULT_STRATEGY_BUDGET: u128 = 1 << 30;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Refuse games whose strategy count `Π_j |A^j|^{|X^j|}` exceeds this.
    pub budget: u128,
    /// Split the top of the tree across the rayon pool.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_STRATEGY_BUDGET, parallel: true }
    }
}

/// `Π_j |A^j|^{|X^j|}`, or `None` when it does not fit in `u128`.
pub fn strategy_space_size(g: &Game) -> Option<u128> {
    let mut total: u128 = 1;
    for (&nq, &na) in g.question_sizes().iter().zip(g.answer_sizes()) {
        let per = (na as u128).checked_pow(u32::try_from(nq).ok()?)?;
        total = total.checked_mul(per)?;
    }
    Some(total)
}

pub fn game_value(g: &Game) -> Result<(Rational, ProductStrategy)> {
    game_value_with(g, &SearchConfig::default())
}

pub fn game_value_with(g: &Game, config: &SearchConfig) -> Result<(Rational, ProductStrategy)> {
    match strategy_space_size(g) {
        Some(n) if n <= config.budget => {}
        Some(n) => return Err(Error::budget("exhaustive strategy search", n, config.budget)),
        None => return Err(Error::budget("exhaustive strategy search", "more than 2^128", config.budget)),
    }
    let problem = Problem::new(g)?;
    let (value, tables) = problem.solve(config.parallel);
    let value = Rational::from_big(BigRational::new(BigInt::from(value), BigInt::from(problem.total)));
    Ok((value, ProductStrategy::from_tables_unchecked(tables)))
}

/// Scales the weights of `g` to integers with a common denominator.
pub(crate) fn integer_weights(g: &Game) -> Result<(Vec<u128>, u128)> {
    let too_big = || Error::Unsupported("weight denominators too large for exact integer search".into());
    let mut scale: u128 = 1;
    for p in g.support() {
        let d = p.weight().denom_u128().ok_or_else(too_big)?;
        let gcd = scale.gcd(&d);
        scale = (scale / gcd).checked_mul(d).ok_or_else(too_big)?;
    }
    let weights =
        g.support().iter().map(|p| p.weight().scaled_u128(scale).ok_or_else(too_big)).collect::<Result<Vec<_>>>()?;
    Ok((weights, scale))
}

struct Problem<'a> {
    g: &'a Game,
    weights: Vec<u128>,
    total: u128,
    /// Decision variables `(player, question)`, in encoding order.
    vars: Vec<(usize, usize)>,
    domain: Vec<usize>,
    /// `decided[v]`: points whose non-last answers are all fixed once
    /// variable `v` is assigned. `decided[0]` holds points with no variables.
    decided: Vec<Vec<usize>>,
    /// Mass still undecided after variables `0..v` are assigned.
    open_mass: Vec<u128>,
    point_vars: Vec<Vec<usize>>,
    point_slot: Vec<usize>,
    last_questions: Vec<usize>,
    nc: usize,
    last: usize,
}

struct Best {
    value: u128,
    assign: Vec<usize>,
}

impl<'a> Problem<'a> {
    fn new(g: &'a Game) -> Result<Self> {
        let (weights, total) = integer_weights(g)?;
        let k = g.players();
        let last = k - 1;
        let mut var_of = vec![vec![usize::MAX; 0]; k];
        let mut vars = Vec::new();
        for j in 0..last {
            var_of[j] = vec![usize::MAX; g.question_sizes()[j]];
            let mut used = vec![false; g.question_sizes()[j]];
            for p in g.support() {
                used[p.question()[j]] = true;
            }
            for (q, u) in used.into_iter().enumerate() {
                if u {
                    var_of[j][q] = vars.len();
                    vars.push((j, q));
                }
            }
        }
        let domain = vars.iter().map(|&(j, _)| g.answer_sizes()[j]).collect();
        let mut last_questions: Vec<usize> = g.support().iter().map(|p| p.question()[last]).collect();
        last_questions.sort_unstable();
        last_questions.dedup();

        let mut decided = vec![Vec::new(); vars.len() + 1];
        let mut point_vars = Vec::new();
        let mut point_slot = Vec::new();
        for (i, p) in g.support().iter().enumerate() {
            let pv: Vec<usize> = (0..last).map(|j| var_of[j][p.question()[j]]).collect();
            let at = pv.iter().map(|&v| v + 1).max().unwrap_or(0);
            decided[at].push(i);
            point_vars.push(pv);
            point_slot.push(last_questions.binary_search(&p.question()[last]).expect("question is listed"));
        }
        let mut open_mass = vec![0u128; vars.len() + 1];
        let mut open = total;
        for v in 0..=vars.len() {
            open -= decided[v].iter().map(|&i| weights[i]).sum::<u128>();
            open_mass[v] = open;
        }
        Ok(Problem {
            g,
            weights,
            total,
            vars,
            domain,
            decided,
            open_mass,
            point_vars,
            point_slot,
            last_questions,
            nc: g.answer_sizes()[last],
            last,
        })
    }

    fn apply(&self, level: usize, assign: &[usize], mass: &mut [u128], add: bool) {
        let strides = self.g.answer_radix().strides();
        for &i in &self.decided[level] {
            let p = &self.g.support()[i];
            let base: usize = self.point_vars[i].iter().enumerate().map(|(j, &v)| assign[v] * strides[j]).sum();
            let row = &p.wins()[base..base + self.nc];
            let slot = &mut mass[self.point_slot[i] * self.nc..(self.point_slot[i] + 1) * self.nc];
            let w = self.weights[i];
            for (m, &win) in slot.iter_mut().zip(row) {
                if win {
                    if add {
                        *m += w;
                    } else {
                        *m -= w;
                    }
                }
            }
        }
    }

    fn response_value(&self, mass: &[u128]) -> u128 {
        mass.chunks(self.nc).map(|c| *c.iter().max().expect("nonempty answers")).sum()
    }

    fn dfs(
        &self,
        v: usize,
        assign: &mut Vec<usize>,
        mass: &mut Vec<u128>,
        best: &mut Option<Best>,
        global: &AtomicU64,
    ) {
        if v == self.vars.len() {
            let value = self.response_value(mass);
            if best.as_ref().map_or(true, |b| value > b.value) {
                *best = Some(Best { value, assign: assign.clone() });
                if let Ok(x) = u64::try_from(value + 1) {
                    global.fetch_max(x, Ordering::Relaxed);
                }
            }
            return;
        }
        for a in 0..self.domain[v] {
            assign[v] = a;
            self.apply(v + 1, assign, mass, true);
            let bound = self.response_value(mass) + self.open_mass[v + 1];
            let local_prune = best.as_ref().is_some_and(|b| bound <= b.value);
            let global_best = global.load(Ordering::Relaxed) as u128;
            let global_prune = global_best > 0 && bound < global_best - 1;
            if !local_prune && !global_prune {
                self.dfs(v + 1, assign, mass, best, global);
            }
            self.apply(v + 1, assign, mass, false);
        }
        assign[v] = 0;
    }

    /// Runs the search from a fixed assignment of the first `prefix.len()`
    /// variables.
    fn run_prefix(&self, prefix: &[usize], global: &AtomicU64) -> Option<Best> {
        let mut assign = vec![0; self.vars.len()];
        let mut mass = vec![0u128; self.last_questions.len() * self.nc];
        self.apply(0, &assign, &mut mass, true);
        for (v, &a) in prefix.iter().enumerate() {
            assign[v] = a;
            self.apply(v + 1, &assign, &mut mass, true);
        }
        let mut best = None;
        self.dfs(prefix.len(), &mut assign, &mut mass, &mut best, global);
        best
    }

    fn solve(&self, parallel: bool) -> (u128, Vec<Vec<usize>>) {
        let global = AtomicU64::new(0);
        // Enough prefixes to keep the pool busy, but each still a real subtree.
        let mut depth = 0;
        let mut count: usize = 1;
        if parallel {
            while depth < self.vars.len() && count < 256 {
                count *= self.domain[depth];
                depth += 1;
            }
        }
        let prefixes: Vec<Vec<usize>> = (0..count)
            .map(|mut idx| {
                let mut p = vec![0; depth];
                for v in (0..depth).rev() {
                    p[v] = idx % self.domain[v];
                    idx /= self.domain[v];
                }
                p
            })
            .collect();
        let results: Vec<Option<Best>> = if parallel && prefixes.len() > 1 {
            prefixes.par_iter().map(|p| self.run_prefix(p, &global)).collect()
        } else {
            prefixes.iter().map(|p| self.run_prefix(p, &global)).collect()
        };
        let mut winner: Option<Best> = None;
        for b in results.into_iter().flatten() {
            if winner.as_ref().map_or(true, |w| b.value > w.value) {
                winner = Some(b);
            }
        }
        let winner = winner.expect("some subtree reaches the optimum");
        (winner.value, self.tables(&winner.assign))
    }

    fn tables(&self, assign: &[usize]) -> Vec<Vec<usize>> {
        let mut tables: Vec<Vec<usize>> = self.g.question_sizes().iter().map(|&n| vec![0; n]).collect();
        for (v, &(j, q)) in self.vars.iter().enumerate() {
            tables[j][q] = assign[v];
        }
        let mut mass = vec![0u128; self.last_questions.len() * self.nc];
        for level in 0..=self.vars.len() {
            self.apply(level, assign, &mut mass, true);
        }
        for (slot, &z) in self.last_questions.iter().enumerate() {
            let row = &mass[slot * self.nc..(slot + 1) * self.nc];
            let top = *row.iter().max().expect("nonempty answers");
            tables[self.last][z] = row.iter().position(|&m| m == top).expect("max is attained");
        }
        tables
    }
}
