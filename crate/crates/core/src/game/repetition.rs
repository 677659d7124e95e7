//! Parallel repetition, per-coordinate values, and conditioning on product
//! events.
//!
//! In `G^⊗n` a player's question (or answer) is an n-tuple of base symbols,
//! indexed in base `|X^j|` with coordinate 1 most significant. Its symbol is
//! the base symbols joined by `,`.

use super::{search, Game, ProductStrategy, Radix, SupportPoint};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Size limits for building repeated games.
#[derive(Debug, Clone)]
pub struct TensorBudget {
    /// Cap on `|support|^n · |answer tuples|^n`, the total win-table size.
    pub max_cells: u128,
}

impl Default for TensorBudget {
    fn default() -> Self {
        TensorBudget { max_cells: 1 << 27 }
    }
}

pub(crate) fn pow_checked(base: usize, n: usize) -> Option<usize> {
    base.checked_pow(u32::try_from(n).ok()?)
}

fn product_alphabet(alphabet: &[String], n: usize) -> Vec<String> {
    let radix = Radix::new(&vec![alphabet.len(); n]).expect("size checked by caller");
    (0..radix.total())
        .map(|i| radix.decode(i).iter().map(|&d| alphabet[d].as_str()).collect::<Vec<_>>().join(","))
        .collect()
}

/// Calls `f` on every n-tuple of support point indices, in lexicographic order.
pub(crate) fn for_each_point_tuple(support_len: usize, n: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; n];
    loop {
        f(&idx);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < support_len {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Index of the repeated question (or answer) built from per-coordinate digits.
pub(crate) fn tuple_index(digits: impl Iterator<Item = usize>, base: usize) -> usize {
    digits.fold(0, |acc, d| acc * base + d)
}

/// For every answer-tuple index of `G^⊗n`, the base answer-tuple index seen
/// by each coordinate: `table[i][t]`.
fn coordinate_answer_indices(g: &Game, n: usize, tensor: &Radix) -> Vec<Vec<usize>> {
    let k = g.players();
    let asizes = g.answer_sizes();
    let bstrides = g.answer_radix().strides();
    let mut table = vec![vec![0usize; tensor.total()]; n];
    for t in 0..tensor.total() {
        let alpha = tensor.decode(t);
        for j in 0..k {
            let mut a = alpha[j];
            for i in (0..n).rev() {
                table[i][t] += (a % asizes[j]) * bstrides[j];
                a /= asizes[j];
            }
        }
    }
    table
}

/// Builds `G^⊗n`; with `only` set, the predicate checks that coordinate alone.
fn build(g: &Game, n: usize, budget: &TensorBudget, only: Option<usize>) -> Result<Game> {
    if n == 0 {
        return Err(Error::InvalidGame { path: "n".into(), message: "repetition count must be positive".into() });
    }
    let overflow = |what: &str| Error::budget(format!("{n}-fold {what}"), "more than usize", usize::MAX);
    for &s in g.question_sizes() {
        pow_checked(s, n).ok_or_else(|| overflow("question alphabet"))?;
    }
    let asizes: Vec<usize> = g
        .answer_sizes()
        .iter()
        .map(|&s| pow_checked(s, n).ok_or_else(|| overflow("answer alphabet")))
        .collect::<Result<_>>()?;
    let tensor = Radix::new(&asizes).ok_or_else(|| overflow("answer tuple count"))?;
    let points = pow_checked(g.support().len(), n).ok_or_else(|| overflow("support"))?;
    let cells = (points as u128).saturating_mul(tensor.total() as u128);
    if cells > budget.max_cells {
        return Err(Error::budget(format!("{n}-fold repetition win tables"), cells, budget.max_cells));
    }

    let coord = coordinate_answer_indices(g, n, &tensor);
    let scenarios = g.support().iter().map(|p| p.scenario()).max().unwrap_or(0) as usize + 1;
    let base = g.support();
    let k = g.players();
    let mut out = Vec::with_capacity(points);
    for_each_point_tuple(base.len(), n, |tuple| {
        let question: Vec<usize> =
            (0..k).map(|j| tuple_index(tuple.iter().map(|&p| base[p].question()[j]), g.question_sizes()[j])).collect();
        let scenario = tuple_index(tuple.iter().map(|&p| base[p].scenario() as usize), scenarios) as u64;
        let weight = tuple.iter().fold(Rational::one(), |acc, &p| &acc * base[p].weight());
        let wins = (0..tensor.total())
            .map(|t| match only {
                Some(i) => base[tuple[i]].wins_at(coord[i][t]),
                None => tuple.iter().enumerate().all(|(i, &p)| base[p].wins_at(coord[i][t])),
            })
            .collect();
        out.push(SupportPoint::new(question, scenario, weight, wins));
    });
    let qa = g.question_alphabets().iter().map(|a| product_alphabet(a, n)).collect();
    let aa = g.answer_alphabets().iter().map(|a| product_alphabet(a, n)).collect();
    Game::new(qa, aa, out)
}

/// `G^⊗n` under the default [`TensorBudget`].
pub fn tensor_power(g: &Game, n: usize) -> Result<Game> {
    build(g, n, &TensorBudget::default(), None)
}

pub fn tensor_power_with(g: &Game, n: usize, budget: &TensorBudget) -> Result<Game> {
    build(g, n, budget, None)
}

fn check_coordinate(n: usize, i: usize) -> Result<usize> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { path: "i".into(), index: i, limit: n });
    }
    Ok(i - 1)
}

/// The game on `X^n` won whenever coordinate `i` (1-based) is won.
pub fn coordinate_game(g: &Game, n: usize, i: usize) -> Result<Game> {
    let i = check_coordinate(n, i)?;
    build(g, n, &TensorBudget::default(), Some(i))
}

/// `max_s Pr[V(x_i, s(x)_i) = 1]`, by exhaustive search.
pub fn coordinate_game_value(g: &Game, n: usize, i: usize) -> Result<(Rational, ProductStrategy)> {
    search::game_value(&coordinate_game(g, n, i)?)
}

pub(crate) fn check_repeated_strategy(g: &Game, n: usize, s: &ProductStrategy) -> Result<()> {
    if s.tables().len() != g.players() {
        return Err(Error::mismatch("strategy", format!("expected {} players", g.players())));
    }
    for j in 0..g.players() {
        let nq = pow_checked(g.question_sizes()[j], n).unwrap_or(usize::MAX);
        let na = pow_checked(g.answer_sizes()[j], n).unwrap_or(usize::MAX);
        if s.tables()[j].len() != nq {
            return Err(Error::mismatch(format!("strategy[{j}]"), format!("expected {nq} entries")));
        }
        if let Some(&a) = s.tables()[j].iter().find(|&&a| a >= na) {
            return Err(Error::IndexOutOfRange { path: format!("strategy[{j}]"), index: a, limit: na });
        }
    }
    Ok(())
}

/// `Pr_{x∼Q^⊗n}[V(x_i, s(x)_i) = 1]` for a strategy of `G^⊗n`; `i` is 1-based.
pub fn coordinate_value(g: &Game, n: usize, i: usize, s: &ProductStrategy) -> Result<Rational> {
    let i = check_coordinate(n, i)?;
    check_repeated_strategy(g, n, s)?;
    let base = g.support();
    let k = g.players();
    let shift: Vec<usize> = (0..k).map(|j| g.answer_sizes()[j].pow((n - 1 - i) as u32)).collect();
    let mut total = Rational::zero();
    for_each_point_tuple(base.len(), n, |tuple| {
        let p = &base[tuple[i]];
        let a: Vec<usize> = (0..k)
            .map(|j| {
                let q = tuple_index(tuple.iter().map(|&t| base[t].question()[j]), g.question_sizes()[j]);
                (s.answer(j, q) / shift[j]) % g.answer_sizes()[j]
            })
            .collect();
        if p.wins_at(g.answer_index(&a)) {
            total += &tuple.iter().fold(Rational::one(), |acc, &t| &acc * base[t].weight());
        }
    });
    Ok(total)
}

/// `E = E^1 × … × E^k` over the questions of `G^⊗n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductEvent {
    n: usize,
    sets: Vec<Vec<bool>>,
}

impl ProductEvent {
    /// `sets[j][q]` says whether repeated question `q` of player `j` is in
    /// `E^j`. Fails with `zero_probability` when `P(E) = 0`.
    pub fn new(g: &Game, n: usize, sets: Vec<Vec<bool>>) -> Result<Self> {
        if sets.len() != g.players() {
            return Err(Error::mismatch("event", format!("expected {} player sets", g.players())));
        }
        for (j, s) in sets.iter().enumerate() {
            let nq = pow_checked(g.question_sizes()[j], n).unwrap_or(usize::MAX);
            if s.len() != nq {
                return Err(Error::mismatch(format!("event[{j}]"), format!("expected {nq} entries, got {}", s.len())));
            }
        }
        let e = ProductEvent { n, sets };
        if e.probability(g).is_zero() {
            return Err(Error::ZeroProbability);
        }
        Ok(e)
    }

    /// Builds `E^j` from per-player membership predicates on the base
    /// question tuple `(x_1^j, …, x_n^j)`.
    pub fn from_predicates(g: &Game, n: usize, pred: impl Fn(usize, &[usize]) -> bool) -> Result<Self> {
        let sets = (0..g.players())
            .map(|j| {
                let radix = Radix::new(&vec![g.question_sizes()[j]; n]).expect("sizes are small");
                (0..radix.total()).map(|q| pred(j, &radix.decode(q))).collect()
            })
            .collect();
        ProductEvent::new(g, n, sets)
    }

    pub fn full(g: &Game, n: usize) -> Self {
        let sets = (0..g.players())
            .map(|j| vec![true; pow_checked(g.question_sizes()[j], n).expect("sizes are small")])
            .collect();
        ProductEvent { n, sets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<bool>] {
        &self.sets
    }

    pub fn contains(&self, question: &[usize]) -> bool {
        question.iter().enumerate().all(|(j, &q)| self.sets[j][q])
    }

    /// `P(E)` under `Q^⊗n`.
    pub fn probability(&self, g: &Game) -> Rational {
        let base = g.support();
        let mut total = Rational::zero();
        for_each_point_tuple(base.len(), self.n, |tuple| {
            let q: Vec<usize> = (0..g.players())
                .map(|j| tuple_index(tuple.iter().map(|&t| base[t].question()[j]), g.question_sizes()[j]))
                .collect();
            if self.contains(&q) {
                total += &tuple.iter().fold(Rational::one(), |acc, &t| &acc * base[t].weight());
            }
        });
        total
    }
}

/// `G^⊗n` with its query distribution conditioned on `e`.
pub fn condition_game(g: &Game, n: usize, e: &ProductEvent) -> Result<Game> {
    if e.n != n {
        return Err(Error::mismatch("event", format!("event is over {} coordinates, expected {n}", e.n)));
    }
    let pe = e.probability(g);
    if pe.is_zero() {
        return Err(Error::ZeroProbability);
    }
    let t = tensor_power(g, n)?;
    let weights = t
        .support()
        .iter()
        .map(|p| if e.contains(p.question()) { p.weight() / &pe } else { Rational::zero() })
        .collect();
    t.reweighted(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::strategy_value;
    use crate::zoo;

    #[test]
    fn power_one_is_isomorphic() {
        let g = zoo::anti_correlation();
        assert_eq!(tensor_power(&g, 1).unwrap(), g);
    }

    #[test]
    fn anti_correlation_square() {
        let g = tensor_power(&zoo::anti_correlation(), 2).unwrap();
        assert_eq!(g.support().len(), 9);
        assert!(g.support().iter().all(|p| p.weight() == &Rational::new(1, 9)));
        assert_eq!(g.question_alphabets()[0], vec!["0,0", "0,1", "1,0", "1,1"]);
    }

    #[test]
    fn coordinate_value_of_repeated_optimum() {
        let g = zoo::anti_correlation();
        // Player 0 answers 1, the others 0, in both coordinates.
        let s = ProductStrategy::new(&tensor_power(&g, 2).unwrap(), vec![vec![3; 4], vec![0; 4], vec![0; 4]]).unwrap();
        assert_eq!(coordinate_value(&g, 2, 1, &s).unwrap(), Rational::new(2, 3));
        assert_eq!(coordinate_value(&g, 2, 2, &s).unwrap(), Rational::new(2, 3));
        assert_eq!(strategy_value(&tensor_power(&g, 2).unwrap(), &s).unwrap(), Rational::new(4, 9));
        assert_eq!(coordinate_value(&g, 2, 3, &s).unwrap_err().kind(), "index_out_of_range");
    }

    #[test]
    fn coordinate_value_n1_is_strategy_value() {
        let g = zoo::ghz_game();
        let s = ProductStrategy::new(&g, vec![vec![0, 1], vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(coordinate_value(&g, 1, 1, &s).unwrap(), strategy_value(&g, &s).unwrap());
    }

    #[test]
    fn full_event_keeps_distribution() {
        let g = zoo::anti_correlation();
        let e = ProductEvent::full(&g, 2);
        assert_eq!(condition_game(&g, 2, &e).unwrap(), tensor_power(&g, 2).unwrap());
    }

    #[test]
    fn disjoint_event_is_rejected() {
        let g = zoo::anti_correlation();
        let e = ProductEvent::from_predicates(&g, 2, |j, _| j != 0);
        assert!(matches!(e, Err(Error::ZeroProbability)));
    }
}
