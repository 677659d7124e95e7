//! Value-preserving rewrites: uniform reweighting and predicate
//! normalization on determining inputs.

use std::collections::BTreeMap;

use super::Game;
use crate::rational::Rational;

/// Same alphabets and predicate, query mass spread uniformly over the
/// distinct support questions. Referee scenarios sharing a question keep
/// their relative weights.
pub fn uniformize(g: &Game) -> Game {
    let questions = g.support_questions();
    let share = Rational::new(1, questions.len() as i64);
    let mass: BTreeMap<&[usize], &Rational> = questions.iter().map(|(q, w)| (q.as_slice(), w)).collect();
    let weights = g.support().iter().map(|p| &(&share * p.weight()) / mass[p.question()]).collect();
    g.reweighted(weights).expect("uniform weights are valid")
}

/// The `(player, question)` pairs whose question alone pins down the whole
/// support question, in lexicographic order. Questions carrying several
/// referee scenarios are skipped.
fn determining_pairs(g: &Game) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 0..g.players() {
        for (q, points) in g.points_by_question(j) {
            if points.len() == 1 {
                out.push((j, q));
            }
        }
    }
    out
}

/// Normalization on determining inputs: whenever player `j`'s question `y^j` determines
/// the full question `y`, replace `V(y, a)` by the max over `a^j` with `a^{-j}`
/// fixed. Repeats in lexicographic `(player, question)` order until nothing
/// changes.
pub fn normalize_determined(g: &Game) -> Game {
    normalize_determined_in_order(g, &determining_pairs(g))
}

/// As [`normalize_determined`], visiting determining pairs in the given order.
/// Pairs that do not determine their support question are ignored.
pub fn normalize_determined_in_order(g: &Game, order: &[(usize, usize)]) -> Game {
    let valid = determining_pairs(g);
    let mut tables: Vec<Vec<bool>> = g.support().iter().map(|p| p.wins().to_vec()).collect();
    let radix = g.answer_radix();
    loop {
        let mut changed = false;
        for &(j, q) in order {
            if !valid.contains(&(j, q)) {
                continue;
            }
            let Some(pi) = g.support().iter().position(|p| p.question()[j] == q) else { continue };
            let t = &mut tables[pi];
            let stride = radix.strides()[j];
            let size = radix.sizes()[j];
            for idx in 0..t.len() {
                if radix.digit(idx, j) != 0 {
                    continue;
                }
                let any = (0..size).any(|a| t[idx + a * stride]);
                for a in 0..size {
                    let cell = &mut t[idx + a * stride];
                    if *cell != any {
                        *cell = any;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    g.with_win_tables(tables)
}
