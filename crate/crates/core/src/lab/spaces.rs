//! The two correlated probability spaces over repeated inputs of a
//! 3-player game, with players 0, 1, 2 in the roles of `X`, `Y`, `Z`.
//!
//! `P`: draw `Y ∼ Q_Y^n`, then `(X, Z)` and `(X̃, Z̃)` independently from
//! `Q^n_{XZ|Y}`.
//!
//! `C`: draw `X ∼ Q_X^n` and a set `S` holding each coordinate with
//! probability 1/4; copy `X̃_i = X_i` on `S` and draw `X̃_i ∼ Q_X` fresh
//! elsewhere; finally draw `(Ỹ, Z̃) ∼ Q^n_{YZ|X}(·|X̃)`.
//!
//! Both are products over coordinates, so the exact joints are built from a
//! per-coordinate table.

use serde::Serialize;

use super::{product_of, product_tuples, Distribution, WeightedSampler};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::Rational;
use crate::rng::Stream;

pub const SPACE_P_MAX_N: usize = 6;
pub const SPACE_C_MAX_N: usize = 4;
const ATOM_BUDGET: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PAtom {
    pub x: Vec<usize>,
    pub z: Vec<usize>,
    pub x_tilde: Vec<usize>,
    pub z_tilde: Vec<usize>,
    pub y: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CAtom {
    pub x: Vec<usize>,
    pub s: Vec<bool>,
    pub x_tilde: Vec<usize>,
    pub y_tilde: Vec<usize>,
    pub z_tilde: Vec<usize>,
}

fn check_three_players(g: &Game) -> Result<()> {
    if g.players() != 3 {
        return Err(Error::Unsupported(format!("correlated spaces need 3 players, got {}", g.players())));
    }
    Ok(())
}

fn check_exact(n: usize, max: usize, per_coordinate: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::argument("n", "repetition count must be positive"));
    }
    if n > max {
        return Err(Error::budget("exact correlated space", format!("n = {n}"), format!("n <= {max}")));
    }
    let atoms = (per_coordinate as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if atoms > ATOM_BUDGET {
        return Err(Error::budget("exact correlated space atoms", atoms, ATOM_BUDGET));
    }
    Ok(())
}

/// `Q(·, ·, ·)` as a list of positive-mass question triples.
fn triples(g: &Game) -> Vec<([usize; 3], Rational)> {
    g.support_questions().into_iter().map(|(q, w)| ([q[0], q[1], q[2]], w)).collect()
}

/// Conditional law of the two players other than `given` when `given` is asked `v`.
fn conditional(g: &Game, given: usize, v: usize) -> Vec<([usize; 3], Rational)> {
    let mass = &g.question_marginal(given)[v];
    triples(g).into_iter().filter(|(q, _)| q[given] == v).map(|(q, w)| (q, &w / mass)).collect()
}

fn marginal_atoms(g: &Game, j: usize) -> Vec<(usize, Rational)> {
    g.question_marginal(j).into_iter().enumerate().filter(|(_, w)| !w.is_zero()).collect()
}

/// One coordinate of `P` as `(x, z, x̃, z̃, y)`.
fn p_coordinate(g: &Game) -> Vec<([usize; 5], Rational)> {
    let mut out = Vec::new();
    for (y, py) in marginal_atoms(g, 1) {
        let c = conditional(g, 1, y);
        for (a, pa) in &c {
            for (b, pb) in &c {
                out.push(([a[0], a[2], b[0], b[2], y], &(&py * pa) * pb));
            }
        }
    }
    out
}

/// One coordinate of `C` as `(x, s, x̃, ỹ, z̃)`, with `s` as 0/1.
fn c_coordinate(g: &Game) -> Vec<([usize; 5], Rational)> {
    let qx = marginal_atoms(g, 0);
    let in_s = Rational::new(1, 4);
    let out_s = Rational::new(3, 4);
    let mut out = Vec::new();
    for (x, px) in &qx {
        let mut tilde: Vec<(usize, usize, Rational)> = vec![(1, *x, px * &in_s)];
        tilde.extend(qx.iter().map(|(xt, pt)| (0, *xt, &(px * &out_s) * pt)));
        for (s, xt, w) in tilde {
            for (q, pq) in conditional(g, 0, xt) {
                out.push(([*x, s, xt, q[1], q[2]], &w * &pq));
            }
        }
    }
    out
}

fn column(t: &[[usize; 5]], c: usize) -> Vec<usize> {
    t.iter().map(|a| a[c]).collect()
}

fn p_atom(t: &[[usize; 5]]) -> PAtom {
    PAtom { x: column(t, 0), z: column(t, 1), x_tilde: column(t, 2), z_tilde: column(t, 3), y: column(t, 4) }
}

fn c_atom(t: &[[usize; 5]]) -> CAtom {
    CAtom {
        x: column(t, 0),
        s: t.iter().map(|a| a[1] == 1).collect(),
        x_tilde: column(t, 2),
        y_tilde: column(t, 3),
        z_tilde: column(t, 4),
    }
}

/// Exact joint law of `P` for `n ≤ 6`.
pub fn space_p_exact(g: &Game, n: usize) -> Result<Distribution<PAtom>> {
    check_three_players(g)?;
    let coord = p_coordinate(g);
    check_exact(n, SPACE_P_MAX_N, coord.len())?;
    Ok(product_tuples(&vec![coord; n]).into_iter().map(|(t, w)| (p_atom(&t), w)).collect())
}

/// Exact joint law of `C` for `n ≤ 4`.
pub fn space_c_exact(g: &Game, n: usize) -> Result<Distribution<CAtom>> {
    check_three_players(g)?;
    let coord = c_coordinate(g);
    check_exact(n, SPACE_C_MAX_N, coord.len())?;
    Ok(product_tuples(&vec![coord; n]).into_iter().map(|(t, w)| (c_atom(&t), w)).collect())
}

fn sample_with<A>(
    coord: Vec<([usize; 5], Rational)>,
    n: usize,
    samples: u64,
    seed: u64,
    build: fn(&[[usize; 5]]) -> A,
) -> Result<Vec<A>> {
    if n == 0 {
        return Err(Error::argument("n", "repetition count must be positive"));
    }
    let sampler = WeightedSampler::new(&coord.iter().map(|c| c.1.clone()).collect::<Vec<_>>())?;
    Ok((0..samples)
        .map(|s| {
            let mut rng = Stream::new(seed, s);
            let t: Vec<[usize; 5]> = (0..n).map(|_| coord[sampler.draw(&mut rng)].0).collect();
            build(&t)
        })
        .collect())
}

/// Independent draws from `P`; sample `s` uses stream `s` of `seed`.
pub fn space_p_sample(g: &Game, n: usize, samples: u64, seed: u64) -> Result<Vec<PAtom>> {
    check_three_players(g)?;
    sample_with(p_coordinate(g), n, samples, seed, p_atom)
}

pub fn space_c_sample(g: &Game, n: usize, samples: u64, seed: u64) -> Result<Vec<CAtom>> {
    check_three_players(g)?;
    sample_with(c_coordinate(g), n, samples, seed, c_atom)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairEntry {
    pub x: usize,
    pub x_tilde: usize,
    pub probability: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionalEntry {
    pub x: usize,
    pub x_tilde: usize,
    pub y: usize,
    pub probability: Rational,
}

/// Exact facts about `P` and `C` at a given `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpacesReport {
    pub n: usize,
    /// Law of `(X_1, X̃_1)` under `P`.
    pub p_pair: Vec<PairEntry>,
    /// `P[Y_1 = y | X_1 = x, X̃_1 = x̃]`.
    pub y_given_pair: Vec<ConditionalEntry>,
    /// The pairs `(X_i, X̃_i)` are independent and identically distributed under `P`.
    pub p_pairs_iid: bool,
    pub c_pair: Vec<PairEntry>,
    pub s_probability: Rational,
    /// `C_{X,X̃} = P_{X,X̃}`.
    pub c_matches_p: bool,
    /// `C_{X̃,Ỹ,Z̃} = Q^n`.
    pub c_tilde_matches_q: bool,
    /// `P_{X̃,Y,Z̃} = Q^n`.
    pub p_tilde_matches_q: bool,
}

type Triple = (usize, usize, usize);

fn zip_triples(a: &[usize], b: &[usize], c: &[usize]) -> Vec<Triple> {
    a.iter().zip(b).zip(c).map(|((&a, &b), &c)| (a, b, c)).collect()
}

fn pair_table(d: &Distribution<(usize, usize)>) -> Vec<PairEntry> {
    d.atoms().iter().map(|(&(x, x_tilde), p)| PairEntry { x, x_tilde, probability: p.clone() }).collect()
}

pub fn spaces_report(g: &Game, n: usize) -> Result<SpacesReport> {
    let p = space_p_exact(g, n)?;
    let c = space_c_exact(g, n)?;
    let q_one: Distribution<Triple> = triples(g).into_iter().map(|(q, w)| ((q[0], q[1], q[2]), w)).collect();
    let q_n = product_of(&vec![q_one; n]);

    let p_pairs = p.marginal(|a| a.x.iter().copied().zip(a.x_tilde.iter().copied()).collect::<Vec<_>>());
    let coords: Vec<Distribution<(usize, usize)>> = (0..n).map(|i| p_pairs.marginal(|v| v[i])).collect();
    let p_pairs_iid = coords.iter().all(|d| *d == coords[0]) && product_of(&coords) == p_pairs;

    let mut y_given_pair = Vec::new();
    for &(x, x_tilde) in coords[0].atoms().keys() {
        let cond = p.condition(|a| a.x[0] == x && a.x_tilde[0] == x_tilde)?;
        for (y, probability) in cond.marginal(|a| a.y[0]).atoms() {
            y_given_pair.push(ConditionalEntry { x, x_tilde, y: *y, probability: probability.clone() });
        }
    }

    let c_pairs = c.marginal(|a| a.x.iter().copied().zip(a.x_tilde.iter().copied()).collect::<Vec<_>>());
    let c_first = c_pairs.marginal(|v| v[0]);
    Ok(SpacesReport {
        n,
        p_pair: pair_table(&coords[0]),
        y_given_pair,
        p_pairs_iid,
        c_pair: pair_table(&c_first),
        s_probability: c.event_probability(|a| a.s[0]),
        c_matches_p: c_pairs == p_pairs,
        c_tilde_matches_q: c.marginal(|a| zip_triples(&a.x_tilde, &a.y_tilde, &a.z_tilde)) == q_n,
        p_tilde_matches_q: p.marginal(|a| zip_triples(&a.x_tilde, &a.y, &a.z_tilde)) == q_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn pair_table_of_anti_correlation() {
        let r = spaces_report(&zoo::anti_correlation(), 2).unwrap();
        let probs: Vec<Rational> = r.p_pair.iter().map(|e| e.probability.clone()).collect();
        assert_eq!(probs, vec![q(1, 6), q(1, 6), q(1, 6), q(1, 2)]);
        let y1 = r.y_given_pair.iter().find(|e| e.x == 1 && e.x_tilde == 1 && e.y == 1).unwrap();
        assert_eq!(y1.probability, q(1, 3));
        assert!(r.p_pairs_iid && r.c_matches_p && r.c_tilde_matches_q && r.p_tilde_matches_q);
        assert_eq!(r.c_pair, r.p_pair);
        assert_eq!(r.s_probability, q(1, 4));
    }

    #[test]
    fn x_marginals_are_q_x() {
        let p = space_p_exact(&zoo::anti_correlation(), 3).unwrap();
        assert!(p.total().is_one());
        assert_eq!(p.event_probability(|a| a.x == vec![1, 1, 1]), q(8, 27));
        assert_eq!(p.event_probability(|a| a.x_tilde == vec![0, 1, 0]), q(2, 27));
    }

    #[test]
    fn limits() {
        let g = zoo::anti_correlation();
        assert_eq!(space_p_exact(&g, 7).unwrap_err().kind(), "budget_exceeded");
        assert_eq!(space_c_exact(&g, 5).unwrap_err().kind(), "budget_exceeded");
        let two = crate::zoo::hw1_canonical(1).unwrap();
        if two.players() != 3 {
            assert_eq!(space_p_exact(&two, 1).unwrap_err().kind(), "unsupported");
        }
    }

    #[test]
    fn samples_are_seeded() {
        let g = zoo::anti_correlation();
        assert_eq!(space_c_sample(&g, 3, 50, 8).unwrap(), space_c_sample(&g, 3, 50, 8).unwrap());
        assert_ne!(space_p_sample(&g, 3, 50, 8).unwrap(), space_p_sample(&g, 3, 50, 9).unwrap());
    }
}
