//! Named games, the canonical Hamming-weight-one family, and random 3-CNF
//! games.

mod cnf;
mod hw1;

pub use cnf::{cnf_trial, cnf_trials, random_3cnf_game, CnfFormula, CnfTrial, Literal};
pub use hw1::{hw1_binary_case, hw1_canonical, restricted_two_player, translate_hw1_strategy, Hw1Case, Hw1Relabeling};

use crate::error::{Error, Result};
use crate::game::{binary_alphabet, Game};
use crate::rational::Rational;
use crate::structure::{self, CubeSymmetry};

/// Uniform distribution over `points` (cube points `x·4+y·2+z`), binary
/// answers, and the given predicate on `(questions, answers)`.
pub fn binary3_game(points: &[u8], predicate: impl Fn(&[usize], &[usize]) -> bool) -> Result<Game> {
    let mut pts: Vec<u8> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.is_empty() {
        return Err(Error::EmptySupport);
    }
    if let Some(&p) = pts.iter().find(|&&p| p >= 8) {
        return Err(Error::IndexOutOfRange { path: "support".into(), index: p as usize, limit: 8 });
    }
    let w = Rational::new(1, pts.len() as i64);
    let dist = pts.iter().map(|&p| ((0..3).map(|j| structure::bit(p, j) as usize).collect(), w.clone())).collect();
    Game::from_predicate(vec![binary_alphabet(); 3], vec![binary_alphabet(); 3], dist, predicate)
}

/// Two random players receive 1 and must answer differently; the player
/// receiving 0 is ignored. Win iff `xa + yb + zc = 1`.
pub fn anti_correlation() -> Game {
    binary3_game(&[0b011, 0b101, 0b110], |q, a| (0..3).map(|j| q[j] * a[j]).sum::<usize>() == 1)
        .expect("valid constant game")
}

/// Global input flip of a binary 3-player game (the map between the
/// weight-two and weight-one presentations of the anti-correlation support).
pub fn flip_inputs(g: &Game) -> Result<Game> {
    CubeSymmetry { perm: [0, 1, 2], flip: [true; 3] }.apply_game(g)
}

/// GHZ: even-parity inputs, win iff `a ⊕ b ⊕ c = x ∨ y ∨ z`.
pub fn ghz_game() -> Game {
    ghz_support_game(|q, a| (a[0] ^ a[1] ^ a[2]) == (q[0] | q[1] | q[2])).expect("valid constant game")
}

/// Uniform on the even-parity points with an arbitrary binary predicate.
pub fn ghz_support_game(v: impl Fn(&[usize], &[usize]) -> bool) -> Result<Game> {
    binary3_game(&structure::GHZ_POINTS, v)
}

/// Uniform on `{(0,0,0),(1,0,0),(0,1,0),(1,1,1)}`, i.e. `z = x ∧ y`.
pub fn four_point_and_game(v: impl Fn(&[usize], &[usize]) -> bool) -> Result<Game> {
    binary3_game(&structure::FOUR_POINT_AND_POINTS, v)
}

/// Four-point AND game in which every player must output `z`; value 3/4.
pub fn four_point_and_default() -> Game {
    four_point_and_game(|q, a| a.iter().all(|&x| x == q[2])).expect("valid constant game")
}

/// Win iff `(a + b + c = 1) ⇔ (x + y + z ≠ 3)` on the five-point support.
pub fn five_point_example() -> Game {
    binary3_game(&structure::FIVE_POINT_POINTS, |q, a| (a.iter().sum::<usize>() == 1) == (q.iter().sum::<usize>() != 3))
        .expect("valid constant game")
}

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 6] =
    ["anti-correlation", "anti-correlation-flipped", "ghz", "four-point-and", "five-point", "hw1-canonical"];

/// Looks up a zoo game by name; `k` parameterizes `hw1-canonical`.
pub fn by_name(name: &str, k: usize) -> Result<Game> {
    match name {
        "anti-correlation" => Ok(anti_correlation()),
        "anti-correlation-flipped" => flip_inputs(&anti_correlation()),
        "ghz" => Ok(ghz_game()),
        "four-point-and" => Ok(four_point_and_default()),
        "five-point" => Ok(five_point_example()),
        "hw1-canonical" => hw1_canonical(k),
        other => Err(Error::Unsupported(format!("unknown zoo game {other:?}; known: {}", NAMES.join(", ")))),
    }
}

/// Every named game with its label, including `G_1` and `G_2`.
pub fn catalog() -> Vec<(String, Game)> {
    vec![
        ("anti-correlation".into(), anti_correlation()),
        ("ghz".into(), ghz_game()),
        ("four-point-and".into(), four_point_and_default()),
        ("five-point".into(), five_point_example()),
        ("hw1-canonical-1".into(), hw1_canonical(1).expect("k >= 1")),
        ("hw1-canonical-2".into(), hw1_canonical(2).expect("k >= 1")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::game_value;

    #[test]
    fn anti_correlation_wins() {
        let g = anti_correlation();
        assert_eq!(g.support().len(), 3);
        let p = g.support().iter().position(|p| p.question() == [1, 1, 0]).unwrap();
        assert!(g.wins(p, &[1, 0, 0]) && g.wins(p, &[1, 0, 1]));
        assert!(!g.wins(p, &[1, 1, 0]));
    }

    #[test]
    fn values_of_named_games() {
        assert_eq!(game_value(&ghz_game()).unwrap().0, Rational::new(3, 4));
        assert_eq!(game_value(&four_point_and_default()).unwrap().0, Rational::new(3, 4));
        assert!(game_value(&ghz_support_game(|_, _| true).unwrap()).unwrap().0.is_one());
        assert!(game_value(&four_point_and_game(|_, _| true).unwrap()).unwrap().0.is_one());
        assert!(game_value(&five_point_example()).unwrap().0 < Rational::one());
    }

    #[test]
    fn five_point_predicate() {
        let g = five_point_example();
        let p = g.support().iter().position(|p| p.question() == [1, 1, 1]).unwrap();
        assert!(!g.wins(p, &[1, 0, 0]));
        assert!(g.wins(p, &[1, 1, 0]));
    }

    #[test]
    fn catalog_round_trips() {
        for (name, g) in catalog() {
            assert_eq!(Game::from_json(&g.to_json()).unwrap(), g, "{name}");
        }
        assert!(by_name("nope", 1).is_err());
    }

    #[test]
    fn flipped_presentation_has_weight_one_support() {
        let g = flip_inputs(&anti_correlation()).unwrap();
        let s = structure::support_points(&g).unwrap();
        assert_eq!(s, vec![0b001, 0b010, 0b100]);
        assert_eq!(game_value(&g).unwrap().0, Rational::new(2, 3));
    }
}
