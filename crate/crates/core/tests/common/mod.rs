//! Brute-force oracles that share no code with the library's search or
//! repetition: games are integer weights plus a win closure or bit table,
//! and values come from enumerating every profile of answer tables.

#![allow(dead_code)]

use parrep_core::Rational;

pub type Triple = [usize; 3];

/// A 3-player game in the rawest form: `(question, integer weight)` pairs,
/// a common weight denominator, and a predicate.
pub struct RawGame<F: Fn(&Triple, &Triple) -> bool> {
    pub questions: Triple,
    pub answers: Triple,
    pub support: Vec<(Triple, u64)>,
    pub denominator: u64,
    pub win: F,
}

fn all_tables(questions: usize, answers: usize) -> Vec<Vec<usize>> {
    let count = answers.pow(questions as u32);
    (0..count)
        .map(|mut s| {
            (0..questions)
                .map(|_| {
                    let a = s % answers;
                    s /= answers;
                    a
                })
                .collect()
        })
        .collect()
}

/// Maximum over every triple of deterministic answer tables.
pub fn brute_value<F: Fn(&Triple, &Triple) -> bool>(g: &RawGame<F>) -> Rational {
    let [na, nb, nc] = g.answers;
    // wins[point][a][b][c]
    let wins: Vec<Vec<bool>> = g
        .support
        .iter()
        .map(|(q, _)| {
            let mut t = vec![false; na * nb * nc];
            for a in 0..na {
                for b in 0..nb {
                    for c in 0..nc {
                        t[(a * nb + b) * nc + c] = (g.win)(q, &[a, b, c]);
                    }
                }
            }
            t
        })
        .collect();
    let tables: Vec<Vec<Vec<usize>>> = (0..3).map(|j| all_tables(g.questions[j], g.answers[j])).collect();
    let mut best = 0u64;
    let mut partial = vec![0usize; g.support.len()];
    for ta in &tables[0] {
        for tb in &tables[1] {
            for (k, (q, _)) in g.support.iter().enumerate() {
                partial[k] = (ta[q[0]] * nb + tb[q[1]]) * nc;
            }
            for tc in &tables[2] {
                let mut total = 0;
                for (k, (q, w)) in g.support.iter().enumerate() {
                    if wins[k][partial[k] + tc[q[2]]] {
                        total += w;
                    }
                }
                best = best.max(total);
            }
        }
    }
    Rational::new(best as i64, g.denominator as i64)
}

/// The anti-correlation support: two random players get 1.
pub const ANTI_POINTS: [Triple; 3] = [[0, 1, 1], [1, 0, 1], [1, 1, 0]];

pub fn anti_wins(q: &Triple, a: &Triple) -> bool {
    q[0] * a[0] + q[1] * a[1] + q[2] * a[2] == 1
}

pub const GHZ_POINTS: [Triple; 4] = [[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]];

pub fn ghz_wins(q: &Triple, a: &Triple) -> bool {
    (a[0] ^ a[1] ^ a[2]) == (q[0] | q[1] | q[2])
}

/// The `n`-fold repetition of a uniform binary game, built directly: player
/// `j`'s question and answer are `n`-bit numbers, coordinate 1 in the top bit.
pub fn repeated_binary(
    points: &[Triple],
    n: usize,
    win: impl Fn(&Triple, &Triple) -> bool,
) -> RawGame<impl Fn(&Triple, &Triple) -> bool> {
    let size = 1usize << n;
    let mut support = Vec::new();
    for combo in 0..points.len().pow(n as u32) {
        let mut q = [0; 3];
        let mut c = combo;
        let mut coords = Vec::with_capacity(n);
        for _ in 0..n {
            coords.push(points[c % points.len()]);
            c /= points.len();
        }
        coords.reverse();
        for p in &coords {
            for j in 0..3 {
                q[j] = q[j] * 2 + p[j];
            }
        }
        support.push((q, 1));
    }
    let bit = move |v: usize, i: usize| (v >> (n - 1 - i)) & 1;
    RawGame {
        questions: [size; 3],
        answers: [size; 3],
        denominator: support.len() as u64,
        support,
        win: move |q: &Triple, a: &Triple| {
            (0..n)
                .all(|i| win(&[bit(q[0], i), bit(q[1], i), bit(q[2], i)], &[bit(a[0], i), bit(a[1], i), bit(a[2], i)]))
        },
    }
}

/// Weight-two anti-correlation, repeated `n` times.
pub fn anti_correlation_oracle(n: usize) -> Rational {
    brute_value(&repeated_binary(&ANTI_POINTS, n, anti_wins))
}

pub fn ghz_oracle() -> Rational {
    brute_value(&repeated_binary(&GHZ_POINTS, 1, ghz_wins))
}

/// A dense random game: weights and win bits over every question tuple,
/// player 0 most significant in both question and answer indices.
#[derive(Debug, Clone)]
pub struct Dense {
    pub questions: Vec<usize>,
    pub answers: Vec<usize>,
    pub weights: Vec<u8>,
    pub wins: Vec<bool>,
}

fn digits(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for j in (0..sizes.len()).rev() {
        out[j] = index % sizes[j];
        index /= sizes[j];
    }
    out
}

fn number(digits: &[usize], sizes: &[usize]) -> usize {
    digits.iter().zip(sizes).fold(0, |acc, (&d, &s)| acc * s + d)
}

impl Dense {
    fn answer_count(&self) -> usize {
        self.answers.iter().product()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    pub fn game(&self) -> parrep_core::Game {
        use parrep_core::game::numeric_alphabet;
        let total = self.total_weight() as i64;
        let dist = self
            .weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(qi, &w)| (digits(qi, &self.questions), Rational::new(w as i64, total)))
            .collect();
        let na = self.answer_count();
        parrep_core::Game::from_predicate(
            self.questions.iter().map(|&n| numeric_alphabet(n)).collect(),
            self.answers.iter().map(|&n| numeric_alphabet(n)).collect(),
            dist,
            |q, a| self.wins[number(q, &self.questions) * na + number(a, &self.answers)],
        )
        .expect("generated games are valid")
    }

    /// Exhaustive value over all profiles of answer tables, and whether some
    /// profile wins every support question.
    pub fn oracle(&self) -> (Rational, bool) {
        let k = self.questions.len();
        let tables: Vec<Vec<Vec<usize>>> = (0..k).map(|j| all_tables(self.questions[j], self.answers[j])).collect();
        let counts: Vec<usize> = tables.iter().map(Vec::len).collect();
        let profiles: usize = counts.iter().product();
        let na = self.answer_count();
        let mut best = 0u64;
        for p in 0..profiles {
            let pick = digits(p, &counts);
            let mut total = 0u64;
            for (qi, &w) in self.weights.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let q = digits(qi, &self.questions);
                let a: Vec<usize> = (0..k).map(|j| tables[j][pick[j]][q[j]]).collect();
                if self.wins[qi * na + number(&a, &self.answers)] {
                    total += w as u64;
                }
            }
            best = best.max(total);
        }
        let total = self.total_weight();
        (Rational::new(best as i64, total as i64), best == total)
    }
}

/// Random dense games with `players` players and alphabet sizes up to the
/// given bounds. Each win bit is set with probability 1/4, 1/2 or 3/4.
pub fn arb_dense(
    players: std::ops::RangeInclusive<usize>,
    max_questions: usize,
    max_answers: usize,
) -> impl proptest::strategy::Strategy<Value = Dense> {
    use proptest::collection::vec;
    use proptest::prelude::*;
    players
        .prop_flat_map(move |k| (vec(1..=max_questions, k), vec(1..=max_answers, k), 1u8..=3))
        .prop_flat_map(|(qs, as_, bias)| {
            let nq: usize = qs.iter().product();
            let na: usize = as_.iter().product();
            (Just(qs), Just(as_), vec(0u8..4, nq), vec((0u8..4).prop_map(move |r| r < bias), nq * na))
        })
        .prop_filter_map("empty support", |(questions, answers, weights, wins)| {
            let d = Dense { questions, answers, weights, wins };
            (d.total_weight() > 0).then_some(d)
        })
}

/// Random answer tables for `g` drawn from `seed`.
pub fn random_strategy(g: &parrep_core::Game, seed: u64) -> parrep_core::ProductStrategy {
    let mut rng = parrep_core::rng::Stream::new(seed, 0);
    let tables = g
        .question_sizes()
        .iter()
        .zip(g.answer_sizes())
        .map(|(&nq, &na)| (0..nq).map(|_| rng.below_usize(na)).collect())
        .collect();
    parrep_core::ProductStrategy::new(g, tables).expect("tables fit the alphabets")
}
