//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! and strategies as lists of `{question: answer}` dicts, one per player.

use parrep_core::game::{self, SearchConfig};
use parrep_core::lab::{self, DecayConfig, HeuristicConfig};
use parrep_core::structure::{classify_binary3, classify_connectivity};
use parrep_core::{lp, zoo, Error, ProductStrategy, Rational};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(parrep, ParrepError, PyException, "Raised for every toolkit error; `args[0]` is the error kind.");

fn err(e: Error) -> PyErr {
    ParrepError::new_err((e.kind(), e.to_string()))
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

type StrategyDict = game::StrategyDescription;

fn strategy_dict(g: &parrep_core::Game, s: &ProductStrategy) -> StrategyDict {
    s.to_description(g)
}

fn strategy_from(g: &parrep_core::Game, desc: StrategyDict) -> PyResult<ProductStrategy> {
    ProductStrategy::from_description(g, &desc).map_err(err)
}

/// An immutable, validated game.
#[pyclass(frozen, module = "parrep")]
#[derive(Clone)]
struct Game {
    inner: parrep_core::Game,
}

#[pymethods]
impl Game {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parrep_core::Game::from_json(text).map(|inner| Game { inner }).map_err(err)
    }

    /// Canonical JSON, byte-identical to the CLI's.
    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn players(&self) -> usize {
        self.inner.players()
    }

    #[getter]
    fn questions(&self) -> Vec<Vec<String>> {
        self.inner.question_alphabets().to_vec()
    }

    #[getter]
    fn answers(&self) -> Vec<Vec<String>> {
        self.inner.answer_alphabets().to_vec()
    }

    /// `[(question symbols, Fraction weight)]`, one entry per support question.
    fn support<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Vec<String>, Bound<'py, PyAny>)>> {
        let g = &self.inner;
        g.support_questions()
            .iter()
            .map(|(q, w)| {
                let symbols = q.iter().enumerate().map(|(j, &x)| g.question_alphabets()[j][x].clone()).collect();
                Ok((symbols, fraction(py, w)?))
            })
            .collect()
    }

    fn tensor_power(&self, n: usize) -> PyResult<Game> {
        game::tensor_power(&self.inner, n).map(|inner| Game { inner }).map_err(err)
    }

    fn __eq__(&self, other: &Game) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Game(players={}, support={})", self.inner.players(), self.inner.support().len())
    }
}

#[pyfunction]
fn zoo_names() -> Vec<&'static str> {
    zoo::NAMES.to_vec()
}

#[pyfunction]
#[pyo3(signature = (name, k = 1))]
fn zoo_game(name: &str, k: usize) -> PyResult<Game> {
    zoo::by_name(name, k).map(|inner| Game { inner }).map_err(err)
}

#[pyfunction]
fn random_3cnf_game(d: usize, m: usize, seed: u64) -> PyResult<Game> {
    zoo::random_3cnf_game(d, m, seed).map(|(_, inner)| Game { inner }).map_err(err)
}

/// Exact value and the lexicographically smallest optimal strategy.
#[pyfunction]
#[pyo3(signature = (g, budget = game::DEFAULT_STRATEGY_BUDGET))]
fn game_value<'py>(py: Python<'py>, g: &Game, budget: u128) -> PyResult<(Bound<'py, PyAny>, StrategyDict)> {
    let cfg = SearchConfig { budget, ..SearchConfig::default() };
    let (v, s) = py.detach(|| game::game_value_with(&g.inner, &cfg)).map_err(err)?;
    Ok((fraction(py, &v)?, strategy_dict(&g.inner, &s)))
}

#[pyfunction]
fn strategy_value<'py>(py: Python<'py>, g: &Game, strategy: StrategyDict) -> PyResult<Bound<'py, PyAny>> {
    let s = strategy_from(&g.inner, strategy)?;
    fraction(py, &game::strategy_value(&g.inner, &s).map_err(err)?)
}

/// Certified lower bound on `val(G^⊗n)` from local search.
#[pyfunction]
#[pyo3(signature = (g, n, restarts = 32, steps = 2000, seed = 0))]
fn heuristic_value<'py>(
    py: Python<'py>,
    g: &Game,
    n: usize,
    restarts: u64,
    steps: u64,
    seed: u64,
) -> PyResult<(Bound<'py, PyAny>, StrategyDict)> {
    let cfg = HeuristicConfig { restarts, steps, ..HeuristicConfig::default() };
    let (v, s) = py.detach(|| lab::heuristic_value_search(&g.inner, n, &cfg, seed)).map_err(err)?;
    let t = game::tensor_power(&g.inner, n).map_err(err)?;
    Ok((fraction(py, &v)?, strategy_dict(&t, &s)))
}

#[pyfunction]
fn ns_value<'py>(py: Python<'py>, g: &Game) -> PyResult<Bound<'py, PyAny>> {
    let (v, _) = py.detach(|| lp::ns_value(&g.inner)).map_err(err)?;
    fraction(py, &v)
}

/// `{"connectivity": ..., "tag": ... or None}`.
#[pyfunction]
fn classify<'py>(py: Python<'py>, g: &Game) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("connectivity", classify_connectivity(&g.inner).name())?;
    match classify_binary3(&g.inner) {
        Ok(c) => d.set_item("tag", c.tag.name())?,
        Err(Error::Unsupported(_)) => d.set_item("tag", py.None())?,
        Err(e) => return Err(err(e)),
    }
    Ok(d)
}

/// The decay curve as CSV text.
#[pyfunction]
#[pyo3(signature = (g, n_max, seed = 0))]
fn decay_curve(py: Python<'_>, g: &Game, n_max: usize, seed: u64) -> PyResult<String> {
    let curve = py.detach(|| lab::decay_curve(&g.inner, n_max, &DecayConfig::default(), seed)).map_err(err)?;
    Ok(curve.to_csv())
}

/// `(estimate, Hoeffding radius)` for a strategy of `G^⊗n`.
#[pyfunction]
#[pyo3(signature = (g, n, strategy, trials, seed = 0))]
fn mc_win_estimate(g: &Game, n: usize, strategy: StrategyDict, trials: u64, seed: u64) -> PyResult<(f64, f64)> {
    let t = game::tensor_power(&g.inner, n).map_err(err)?;
    let s = strategy_from(&t, strategy)?;
    let e = lab::mc_win_estimate(&g.inner, n, &s, trials, seed).map_err(err)?;
    Ok((e.estimate, e.radius))
}

/// Number of violations in a randomized Pinsker suite.
#[pyfunction]
#[pyo3(signature = (n_max = 5, cases = 1000, seed = 0))]
fn pinsker_violations(py: Python<'_>, n_max: usize, cases: u64, seed: u64) -> PyResult<usize> {
    py.detach(|| lab::pinsker_suite(n_max, cases, seed)).map(|s| s.violations).map_err(err)
}

#[pymodule]
fn parrep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ParrepError", m.py().get_type::<ParrepError>())?;
    m.add("FORMAT_VERSION", parrep_core::FORMAT_VERSION)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Game>()?;
    m.add_function(wrap_pyfunction!(zoo_names, m)?)?;
    m.add_function(wrap_pyfunction!(zoo_game, m)?)?;
    m.add_function(wrap_pyfunction!(random_3cnf_game, m)?)?;
    m.add_function(wrap_pyfunction!(game_value, m)?)?;
    m.add_function(wrap_pyfunction!(strategy_value, m)?)?;
    m.add_function(wrap_pyfunction!(heuristic_value, m)?)?;
    m.add_function(wrap_pyfunction!(ns_value, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(decay_curve, m)?)?;
    m.add_function(wrap_pyfunction!(mc_win_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(pinsker_violations, m)?)?;
    Ok(())
}
