//! The external JSON format for games and strategies.
//!
//! Struct fields are declared in alphabetical order so serialization emits
//! sorted keys without a post-processing pass.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Game, ProductStrategy, SupportPoint};
use crate::error::{Error, Result};
use crate::rational::Rational;

fn is_zero(s: &u64) -> bool {
    *s == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportEntry {
    pub q: Vec<String>,
    /// Referee scenario label; omitted when 0.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub s: u64,
    pub w: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WinEntry {
    pub a: Vec<String>,
    pub q: Vec<String>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub s: u64,
}

/// Raw, unvalidated game record as it appears on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDescription {
    pub answers: Vec<Vec<String>>,
    pub players: usize,
    pub questions: Vec<Vec<String>>,
    pub support: Vec<SupportEntry>,
    pub win: Vec<WinEntry>,
}

/// Per-player `{question: answer}` maps.
pub type StrategyDescription = Vec<BTreeMap<String, String>>;

fn lookup(alphabets: &[HashMap<&str, usize>], symbols: &[String], path: &str) -> Result<Vec<usize>> {
    if symbols.len() != alphabets.len() {
        return Err(Error::InvalidGame {
            path: path.to_string(),
            message: format!("expected {} symbols, got {}", alphabets.len(), symbols.len()),
        });
    }
    symbols
        .iter()
        .enumerate()
        .map(|(j, s)| {
            alphabets[j]
                .get(s.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownSymbol { path: format!("{path}[{j}]"), symbol: s.clone() })
        })
        .collect()
}

fn index_maps(alphabets: &[Vec<String>]) -> Vec<HashMap<&str, usize>> {
    alphabets.iter().map(|a| a.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()).collect()
}

impl GameDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { path: String::new(), message: e.to_string() })
    }

    /// Canonical JSON: sorted keys, pretty-printed, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("game descriptions always serialize");
        s.push('\n');
        s
    }

    /// Checks every invariant and builds a [`Game`]. Win entries whose
    /// question tuple is off the support are ignored.
    pub fn validate(&self) -> Result<Game> {
        let k = self.players;
        if k == 0 {
            return Err(Error::InvalidGame { path: "players".into(), message: "need at least one player".into() });
        }
        if self.questions.len() != k {
            return Err(Error::InvalidGame {
                path: "questions".into(),
                message: format!("expected {k} alphabets, got {}", self.questions.len()),
            });
        }
        if self.answers.len() != k {
            return Err(Error::InvalidGame {
                path: "answers".into(),
                message: format!("expected {k} alphabets, got {}", self.answers.len()),
            });
        }
        let qmaps = index_maps(&self.questions);
        let amaps = index_maps(&self.answers);
        let asizes: Vec<usize> = self.answers.iter().map(Vec::len).collect();
        let radix = super::Radix::new(&asizes)
            .ok_or_else(|| Error::budget("answer tuple count", "more than usize", usize::MAX))?;

        let mut points = Vec::with_capacity(self.support.len());
        let mut slot: HashMap<(Vec<usize>, u64), usize> = HashMap::new();
        for (i, e) in self.support.iter().enumerate() {
            let q = lookup(&qmaps, &e.q, &format!("support[{i}].q"))?;
            let w: Rational = e.w.trim().parse().map_err(|err: crate::rational::ParseRationalError| Error::Parse {
                path: format!("support[{i}].w"),
                message: err.to_string(),
            })?;
            if slot.insert((q.clone(), e.s), i).is_some() {
                return Err(Error::InvalidGame {
                    path: format!("support[{i}]"),
                    message: "duplicate support entry".into(),
                });
            }
            points.push(SupportPoint::new(q, e.s, w, vec![false; radix.total()]));
        }
        for (i, e) in self.win.iter().enumerate() {
            let q = lookup(&qmaps, &e.q, &format!("win[{i}].q"))?;
            let a = lookup(&amaps, &e.a, &format!("win[{i}].a"))?;
            if let Some(&p) = slot.get(&(q, e.s)) {
                points[p].wins[radix.encode(&a)] = true;
            }
        }
        Game::new(self.questions.clone(), self.answers.clone(), points)
    }
}

impl Game {
    pub fn from_json(text: &str) -> Result<Game> {
        GameDescription::from_json(text)?.validate()
    }

    pub fn to_description(&self) -> GameDescription {
        let sym = |alph: &[Vec<String>], idx: &[usize]| -> Vec<String> {
            idx.iter().enumerate().map(|(j, &i)| alph[j][i].clone()).collect()
        };
        let mut support = Vec::new();
        let mut win = Vec::new();
        for p in self.support() {
            let q = sym(&self.questions, p.question());
            support.push(SupportEntry { q: q.clone(), s: p.scenario(), w: p.weight().to_string() });
            for (ai, &ok) in p.wins().iter().enumerate() {
                if ok {
                    let a = sym(&self.answers, &self.answer_radix().decode(ai));
                    win.push(WinEntry { a, q: q.clone(), s: p.scenario() });
                }
            }
        }
        GameDescription {
            answers: self.answers.clone(),
            players: self.players(),
            questions: self.questions.clone(),
            support,
            win,
        }
    }

    pub fn to_json(&self) -> String {
        self.to_description().to_json()
    }
}

impl ProductStrategy {
    pub fn to_description(&self, g: &Game) -> StrategyDescription {
        self.tables()
            .iter()
            .enumerate()
            .map(|(j, t)| {
                t.iter()
                    .enumerate()
                    .map(|(q, &a)| (g.question_alphabets()[j][q].clone(), g.answer_alphabets()[j][a].clone()))
                    .collect()
            })
            .collect()
    }

    pub fn from_description(g: &Game, desc: &StrategyDescription) -> Result<Self> {
        if desc.len() != g.players() {
            return Err(Error::mismatch("strategy", format!("expected {} players, got {}", g.players(), desc.len())));
        }
        let mut tables = Vec::with_capacity(desc.len());
        for (j, map) in desc.iter().enumerate() {
            let mut t = Vec::with_capacity(g.question_sizes()[j]);
            for q in &g.question_alphabets()[j] {
                let a = map.get(q).ok_or_else(|| {
                    Error::mismatch(format!("strategy[{j}]"), format!("no answer for question {q:?}"))
                })?;
                let ai = g
                    .answer_symbol_index(j, a)
                    .ok_or_else(|| Error::UnknownSymbol { path: format!("strategy[{j}][{q:?}]"), symbol: a.clone() })?;
                t.push(ai);
            }
            if let Some(extra) = map.keys().find(|q| g.question_symbol_index(j, q).is_none()) {
                return Err(Error::UnknownSymbol { path: format!("strategy[{j}]"), symbol: extra.clone() });
            }
            tables.push(t);
        }
        ProductStrategy::new(g, tables)
    }

    pub fn to_json(&self, g: &Game) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_description(g)).expect("strategies always serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ANTI: &str = r#"{
        "players": 3,
        "questions": [["0","1"],["0","1"],["0","1"]],
        "answers": [["0","1"],["0","1"],["0","1"]],
        "support": [
            {"q": ["0","1","1"], "w": "1/3"},
            {"q": ["1","0","1"], "w": "1/3"},
            {"q": ["1","1","0"], "w": "1/3"}
        ],
        "win": [
            {"q": ["0","1","1"], "a": ["0","0","1"]},
            {"q": ["0","1","1"], "a": ["1","0","1"]},
            {"q": ["0","1","1"], "a": ["0","1","0"]},
            {"q": ["0","1","1"], "a": ["1","1","0"]},
            {"q": ["0","0","0"], "a": ["0","0","0"]}
        ]
    }"#;

    #[test]
    fn parses_and_drops_off_support_wins() {
        let g = Game::from_json(ANTI).unwrap();
        assert_eq!(g.support().len(), 3);
        assert!(g.support().iter().all(|p| p.weight() == &Rational::new(1, 3)));
        assert_eq!(g.to_description().win.len(), 4);
    }

    #[test]
    fn canonical_round_trip() {
        let g = Game::from_json(ANTI).unwrap();
        let text = g.to_json();
        let g2 = Game::from_json(&text).unwrap();
        assert_eq!(g, g2);
        assert_eq!(text, g2.to_json());
        let keys: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim()).collect();
        assert!(keys[0].starts_with("\"answers\""));
    }

    #[test]
    fn unknown_symbol_has_path() {
        let bad = ANTI.replace(r#"{"q": ["1","0","1"], "w": "1/3"}"#, r#"{"q": ["1","2","1"], "w": "1/3"}"#);
        let e = Game::from_json(&bad).unwrap_err();
        assert_eq!(e.kind(), "unknown_symbol");
        assert_eq!(e.path(), "support[1].q[1]");
    }

    #[test]
    fn bad_weight_is_parse_error() {
        let bad = ANTI.replacen("1/3", "one third", 1);
        let e = Game::from_json(&bad).unwrap_err();
        assert_eq!(e.path(), "support[0].w");
    }

    #[test]
    fn weights_normalized_to_lowest_terms() {
        let g = Game::from_json(&ANTI.replace("1/3", "2/6")).unwrap();
        assert!(g.to_json().contains("\"1/3\""));
    }

    #[test]
    fn strategy_round_trip() {
        let g = Game::from_json(ANTI).unwrap();
        let s = ProductStrategy::new(&g, vec![vec![1, 1], vec![0, 0], vec![0, 1]]).unwrap();
        let d = s.to_description(&g);
        assert_eq!(d[0]["0"], "1");
        assert_eq!(ProductStrategy::from_description(&g, &d).unwrap(), s);
        let mut missing = d.clone();
        missing[2].remove("1");
        assert_eq!(ProductStrategy::from_description(&g, &missing).unwrap_err().kind(), "alphabet_mismatch");
    }
}
