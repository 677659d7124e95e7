//! Games on the Hamming-weight-one support `{(1,0,0),(0,1,0),(0,0,1)}` and
//! the restricted two-player game of the four-point AND analysis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{binary_alphabet, game_value, normalize_determined, Game, ProductStrategy};
use crate::rational::Rational;
use crate::structure::{self, CubeSymmetry, HW1_POINTS};

/// `G_k`: answers `{0,1}^k`, `{0,1}^k`, `[k]`; on `(0,0,1)` win iff
/// `a ∧ b = 0^k`, on `(0,1,0)` iff `a_c = 1`, on `(1,0,0)` iff `b_c = 1`.
///
/// Bit strings are written with bit 1 first, so string index `i` of
/// `a` is `a_{i+1}`.
pub fn hw1_canonical(k: usize) -> Result<Game> {
    if k == 0 || k > 12 {
        return Err(Error::Unsupported(format!("hw1_canonical needs 1 <= k <= 12, got {k}")));
    }
    let strings: Vec<String> =
        (0..1usize << k).map(|v| (0..k).map(|i| if v >> (k - 1 - i) & 1 == 1 { '1' } else { '0' }).collect()).collect();
    let labels: Vec<String> = (1..=k).map(|c| c.to_string()).collect();
    let bit = |v: usize, c: usize| v >> (k - 1 - c) & 1 == 1;
    let w = Rational::new(1, 3);
    let dist =
        HW1_POINTS.iter().map(|&p| ((0..3).map(|j| structure::bit(p, j) as usize).collect(), w.clone())).collect();
    Game::from_predicate(
        vec![binary_alphabet(); 3],
        vec![strings.clone(), strings, labels],
        dist,
        move |q, a| match q {
            [0, 0, 1] => a[0] & a[1] == 0,
            [0, 1, 0] => bit(a[0], a[2]),
            [1, 0, 0] => bit(a[1], a[2]),
            _ => unreachable!("support is fixed"),
        },
    )
}

/// A cube symmetry moving the support onto `{(1,0,0),(0,1,0),(0,0,1)}`,
/// followed by answer-bit flips of the relabeled players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hw1Relabeling {
    pub symmetry: CubeSymmetry,
    pub answer_flip: [bool; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hw1Case {
    /// After relabeling, the table on `(0,0,1)` has an all-zero row `a = 1`.
    Case1(Hw1Relabeling),
    /// After relabeling, all three tables are the inequality predicate.
    Case2(Hw1Relabeling),
}

/// `tables[t][u][v]`: the predicate on the point whose 1-player is `t`, as a
/// function of the other two players' answers in player order.
fn frame_tables(h: &Game) -> [[[bool; 2]; 2]; 3] {
    let mut out = [[[false; 2]; 2]; 3];
    for (t, &p) in HW1_POINTS.iter().enumerate() {
        let q: Vec<usize> = (0..3).map(|j| structure::bit(p, j) as usize).collect();
        let pi = h.support().iter().position(|s| s.question() == q.as_slice()).expect("frame support");
        let others: Vec<usize> = (0..3).filter(|&j| j != t).collect();
        for u in 0..2 {
            for v in 0..2 {
                let mut a = [0usize; 3];
                a[others[0]] = u;
                a[others[1]] = v;
                out[t][u][v] = h.wins(pi, &a);
            }
        }
    }
    out
}

fn flipped(tables: &[[[bool; 2]; 2]; 3], flip: [bool; 3]) -> [[[bool; 2]; 2]; 3] {
    let mut out = *tables;
    for t in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&j| j != t).collect();
        for u in 0..2 {
            for v in 0..2 {
                out[t][u][v] = tables[t][u ^ flip[others[0]] as usize][v ^ flip[others[1]] as usize];
            }
        }
    }
    out
}

/// Classifies a binary-answer game on a Hamming-weight-one support with
/// value below 1. The predicate is normalized first, so the tables only see
/// the two players receiving 0. Relabelings are searched with symmetries in
/// enumeration order and answer-flip masks `0..8` (player 0 the high bit);
/// Case 1 is tried before Case 2.
pub fn hw1_binary_case(g: &Game) -> Result<Hw1Case> {
    let points = structure::support_points(g)?;
    if g.answer_sizes().iter().any(|&n| n != 2) {
        return Err(Error::Unsupported("expected binary answers".into()));
    }
    if !g.is_deterministic_referee() {
        return Err(Error::Unsupported("referee randomness is not supported here".into()));
    }
    let frames: Vec<CubeSymmetry> =
        CubeSymmetry::all().into_iter().filter(|s| s.apply_set(&points) == HW1_POINTS_SORTED).collect();
    if frames.is_empty() {
        return Err(Error::Unsupported("support is not in the Hamming-weight-one class".into()));
    }
    let (value, _) = game_value(g)?;
    if value.is_one() {
        return Err(Error::ValueOne("no case distinction applies".into()));
    }
    let normal = normalize_determined(g);
    let candidates: Vec<(Hw1Relabeling, [[[bool; 2]; 2]; 3])> = frames
        .iter()
        .flat_map(|sym| {
            let tables = frame_tables(&sym.apply_game(&normal).expect("binary 3-player game"));
            (0..8u8).map(move |m| {
                let flip = [m & 4 != 0, m & 2 != 0, m & 1 != 0];
                (Hw1Relabeling { symmetry: *sym, answer_flip: flip }, flipped(&tables, flip))
            })
        })
        .collect();
    if let Some((r, _)) = candidates.iter().find(|(_, t)| !t[2][1][0] && !t[2][1][1]) {
        return Ok(Hw1Case::Case1(*r));
    }
    let inequality = |t: &[[bool; 2]; 2]| (0..2).all(|u| (0..2).all(|v| t[u][v] == (u != v)));
    if let Some((r, _)) = candidates.iter().find(|(_, t)| t.iter().all(inequality)) {
        return Ok(Hw1Case::Case2(*r));
    }
    Err(Error::Internal("value below 1 but neither case applies".into()))
}

const HW1_POINTS_SORTED: [u8; 3] = [0b001, 0b010, 0b100];

/// Translates a strategy for `g^⊗n` into one for `G_k^⊗n` with
/// `k = max(|A|, |B|, |C|)`:
/// `f_k(x)_i = (V((0,1,0), (f(x)_i, ·, c)))_c`,
/// `g_k(y)_i = (V((1,0,0), (·, g(y)_i, c)))_c`, `h_k = h`.
///
/// `g` must be supported exactly on `{(1,0,0),(0,1,0),(0,0,1)}` and have
/// value below 1; its predicate is normalized before reading the tables.
/// Returns the target game `G_k` together with the strategy.
pub fn translate_hw1_strategy(g: &Game, n: usize, s: &ProductStrategy) -> Result<(Game, ProductStrategy)> {
    if structure::support_points(g)? != HW1_POINTS_SORTED || !g.is_deterministic_referee() {
        return Err(Error::Unsupported("expected support {(1,0,0),(0,1,0),(0,0,1)}".into()));
    }
    let (value, _) = game_value(g)?;
    if value.is_one() {
        return Err(Error::ValueOne("the translation needs value below 1".into()));
    }
    let sizes = g.answer_sizes();
    let k = *sizes.iter().max().expect("three players");
    let target = hw1_canonical(k)?;
    let h = normalize_determined(g);
    let at = |q: [usize; 3]| h.support().iter().position(|p| p.question() == q).expect("fixed support");
    let (p010, p100) = (at([0, 1, 0]), at([1, 0, 0]));
    // Bit string (as an index of {0,1}^k) encoding c ↦ V(·) over c ∈ [k].
    let encode =
        |win: &dyn Fn(usize) -> bool| (0..k).fold(0usize, |acc, c| acc << 1 | (c < sizes[2] && win(c)) as usize);
    let a_bits: Vec<usize> = (0..sizes[0]).map(|a| encode(&|c| h.wins(p010, &[a, 0, c]))).collect();
    let b_bits: Vec<usize> = (0..sizes[1]).map(|b| encode(&|c| h.wins(p100, &[0, b, c]))).collect();

    if s.tables().len() != 3 || s.tables().iter().any(|t| t.len() != 1usize << n) {
        return Err(Error::mismatch("strategy", format!("expected tables for the {n}-fold game")));
    }
    let recode = |answer: usize, base: usize, map: &dyn Fn(usize) -> usize, new_base: usize| -> Result<usize> {
        let mut digits = Vec::with_capacity(n);
        let mut a = answer;
        for _ in 0..n {
            digits.push(a % base);
            a /= base;
        }
        if a != 0 {
            return Err(Error::IndexOutOfRange { path: "strategy".into(), index: answer, limit: base.pow(n as u32) });
        }
        Ok(digits.iter().rev().fold(0, |acc, &d| acc * new_base + map(d)))
    };
    let tk = 1usize << k;
    let tables = vec![
        s.tables()[0].iter().map(|&a| recode(a, sizes[0], &|d| a_bits[d], tk)).collect::<Result<Vec<_>>>()?,
        s.tables()[1].iter().map(|&b| recode(b, sizes[1], &|d| b_bits[d], tk)).collect::<Result<Vec<_>>>()?,
        s.tables()[2].iter().map(|&c| recode(c, sizes[2], &|d| d, k)).collect::<Result<Vec<_>>>()?,
    ];
    let target_n = crate::game::tensor_power(&target, n)?;
    let out = ProductStrategy::new(&target_n, tables)?;
    Ok((target, out))
}

/// Two-player game on `{(0,0),(0,1),(1,0)}` (uniform) won iff
/// `V((x,y,0),(a,b,c0))`, and `a ∈ a_set` when `x = 1`, and `b ∈ b_set`
/// when `y = 1`. `v` is a 3-player game containing the points
/// `(0,0,0),(0,1,0),(1,0,0)`; answers are indices of its alphabets.
pub fn restricted_two_player(v: &Game, c0: usize, a_set: &[usize], b_set: &[usize]) -> Result<Game> {
    structure::support_points(v)?;
    if !v.is_deterministic_referee() {
        return Err(Error::Unsupported("referee randomness is not supported here".into()));
    }
    let sizes = v.answer_sizes();
    if c0 >= sizes[2] {
        return Err(Error::IndexOutOfRange { path: "c0".into(), index: c0, limit: sizes[2] });
    }
    for (name, set, limit) in [("a_set", a_set, sizes[0]), ("b_set", b_set, sizes[1])] {
        if let Some(&x) = set.iter().find(|&&x| x >= limit) {
            return Err(Error::IndexOutOfRange { path: name.into(), index: x, limit });
        }
    }
    let mut lookup = std::collections::HashMap::new();
    for (x, y) in [(0, 0), (0, 1), (1, 0)] {
        let pi = v
            .support()
            .iter()
            .position(|p| p.question() == [x, y, 0])
            .ok_or_else(|| Error::Unsupported(format!("source game lacks question ({x},{y},0)")))?;
        lookup.insert((x, y), pi);
    }
    let w = Rational::new(1, 3);
    let dist = [(0, 0), (0, 1), (1, 0)].iter().map(|&(x, y)| (vec![x, y], w.clone())).collect();
    let alph = v.answer_alphabets();
    Game::from_predicate(vec![binary_alphabet(); 2], vec![alph[0].clone(), alph[1].clone()], dist, |q, a| {
        v.wins(lookup[&(q[0], q[1])], &[a[0], a[1], c0])
            && (q[0] != 1 || a_set.contains(&a[0]))
            && (q[1] != 1 || b_set.contains(&a[1]))
    })
}
