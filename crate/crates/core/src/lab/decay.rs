//! Value of `G^⊗n` as a function of `n`: exact while exhaustive search fits
//! the budget, a heuristic lower bound after that.

use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{heuristic_value_search, HeuristicConfig};
use crate::error::{Error, Result};
use crate::game::{game_value_with, strategy_space_size, tensor_power_with, Game, SearchConfig, TensorBudget};
use crate::rational::Rational;

pub const CSV_COLUMNS: [&str; 6] = ["n", "exact_value", "lower_bound", "method", "witness_digest", "runtime_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecayMethod {
    Exact,
    Heuristic,
}

impl DecayMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DecayMethod::Exact => "exact",
            DecayMethod::Heuristic => "heuristic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayPoint {
    pub n: usize,
    pub exact_value: Option<Rational>,
    pub lower_bound: Rational,
    pub method: DecayMethod,
    /// SHA-256 of the witness strategy JSON on `G^⊗n`.
    pub witness_digest: String,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayCurve {
    pub points: Vec<DecayPoint>,
    /// Why the curve ends before `n_max`, if it does.
    pub stopped: Option<String>,
}

impl DecayCurve {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).expect("in-memory write");
        for p in &self.points {
            w.write_record([
                p.n.to_string(),
                p.exact_value.as_ref().map(Rational::to_string).unwrap_or_default(),
                p.lower_bound.to_string(),
                p.method.as_str().to_string(),
                p.witness_digest.clone(),
                p.runtime_ms.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Debug, Clone, Default)]
pub struct DecayConfig {
    pub search: SearchConfig,
    pub heuristic: HeuristicConfig,
    pub tensor: TensorBudget,
}

/// One point per `n` in `1..=n_max`. A budget refusal ends the curve and is
/// recorded in `stopped` rather than returned as an error.
pub fn decay_curve(g: &Game, n_max: usize, cfg: &DecayConfig, seed: u64) -> Result<DecayCurve> {
    if n_max == 0 {
        return Err(Error::argument("n_max", "must be positive"));
    }
    let mut points = Vec::new();
    for n in 1..=n_max {
        let start = Instant::now();
        let step = (|| {
            let t = tensor_power_with(g, n, &cfg.tensor)?;
            let exact = strategy_space_size(&t).is_some_and(|s| s <= cfg.search.budget);
            let (value, s, method) = if exact {
                let (v, s) = game_value_with(&t, &cfg.search)?;
                (v, s, DecayMethod::Exact)
            } else {
                let (v, s) = heuristic_value_search(g, n, &cfg.heuristic, seed)?;
                (v, s, DecayMethod::Heuristic)
            };
            let digest = hex::encode(Sha256::digest(s.to_json(&t).as_bytes()));
            Ok::<_, Error>((value, method, digest))
        })();
        match step {
            Ok((value, method, witness_digest)) => points.push(DecayPoint {
                n,
                exact_value: (method == DecayMethod::Exact).then(|| value.clone()),
                lower_bound: value,
                method,
                witness_digest,
                runtime_ms: start.elapsed().as_millis() as u64,
            }),
            Err(e) if matches!(e, Error::BudgetExceeded { .. } | Error::Unsupported(_)) => {
                return Ok(DecayCurve { points, stopped: Some(format!("n = {n}: {e}")) });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(DecayCurve { points, stopped: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{binary_alphabet, game_value};
    use crate::zoo;

    fn small() -> DecayConfig {
        DecayConfig {
            heuristic: HeuristicConfig { restarts: 4, steps: 100, ..Default::default() },
            ..Default::default()
        }
    }

    #[test]
    fn anti_correlation_two_points() {
        let c = decay_curve(&zoo::anti_correlation(), 2, &small(), 0).unwrap();
        assert_eq!(c.points.len(), 2);
        assert_eq!(c.points[0].exact_value, Some(Rational::new(2, 3)));
        assert!(c.points.iter().all(|p| p.method == DecayMethod::Exact));
        let v1 = game_value(&zoo::anti_correlation()).unwrap().0;
        for p in &c.points {
            assert!(p.lower_bound >= v1.pow(p.n as u32));
            assert_eq!(p.witness_digest.len(), 64);
        }
    }

    #[test]
    fn always_winning_game() {
        let g = Game::from_predicate(
            vec![binary_alphabet(); 2],
            vec![binary_alphabet(); 2],
            vec![(vec![0, 1], Rational::one())],
            |_, _| true,
        )
        .unwrap();
        let c = decay_curve(&g, 3, &small(), 0).unwrap();
        assert!(c.points[..2].iter().all(|p| p.exact_value == Some(Rational::one())));
        // n = 3 is past the exhaustive budget; the repeated baseline still wins.
        assert_eq!(c.points[2].method, DecayMethod::Heuristic);
        assert!(c.points[2].lower_bound.is_one());
    }

    #[test]
    fn csv_layout() {
        let c = decay_curve(&zoo::anti_correlation(), 1, &small(), 0).unwrap();
        let text = c.to_csv();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
        assert!(lines.next().unwrap().starts_with("1,2/3,2/3,exact,"));
    }

    #[test]
    fn budget_stops_the_curve() {
        let cfg = DecayConfig { tensor: TensorBudget { max_cells: 1000 }, ..small() };
        let c = decay_curve(&zoo::anti_correlation(), 4, &cfg, 0).unwrap();
        assert!(c.stopped.is_some());
        assert!(c.points.len() < 4);
    }
}
