use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::Path;

use parrep_core::game::ProductEvent;
use parrep_core::game::{
    coordinate_value, game_value_with, strategy_space_size, strategy_value, tensor_power, SearchConfig,
    StrategyDescription,
};
use parrep_core::lab::{
    decay_curve, heuristic_value_search, l1_embedding_diagnostic, mc_win_estimate, pinsker_suite, space_c_sample,
    space_p_sample, spaces_report, DecayConfig, HeuristicConfig,
};
use parrep_core::lp::{ns_value_with, NsOptions};
use parrep_core::structure::{classify_binary3, classify_connectivity, connection_graph, Connectivity};
use parrep_core::zoo;
use parrep_core::{Error, Game, ProductStrategy, Rational};
use serde_json::{json, Value};

use crate::args::{Command, Diag, Format, Method, SearchArgs};

/// Failures, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: the input was understood but the operation failed.
    Domain(Error),
    /// Exit 1: a file could not be read.
    Io { path: String, message: String },
    /// Exit 2: the command line itself is wrong.
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn payload(&self) -> Value {
        let (kind, path, message) = match self {
            CliError::Domain(e) => (e.kind().to_string(), e.path().to_string(), e.to_string()),
            CliError::Io { path, message } => ("io".into(), path.clone(), message.clone()),
            CliError::Usage(m) => ("usage".into(), String::new(), m.clone()),
        };
        json!({ "error": { "kind": kind, "path": path, "message": message } })
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command prints on stdout.
pub enum Output {
    Json(Value),
    /// Already formatted text (canonical game JSON, CSV).
    Text(String),
}

fn read_text(path: &Path) -> CliResult<String> {
    let shown = path.display().to_string();
    let io = |e: std::io::Error| CliError::Io { path: shown.clone(), message: e.to_string() };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

fn read_game(path: &Path) -> CliResult<Game> {
    Ok(Game::from_json(&read_text(path)?)?)
}

fn json_of<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn strategy_json(g: &Game, s: &ProductStrategy) -> Value {
    json_of(&s.to_description(g))
}

fn heuristic_config(s: &SearchArgs) -> HeuristicConfig {
    HeuristicConfig { restarts: s.restarts, steps: s.steps, ..HeuristicConfig::default() }
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn json_only(format: Format, command: &str) -> CliResult<()> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("`{command}` has no CSV output"))),
    }
}

pub fn run(command: &Command, format: Format, seed: u64) -> CliResult<Output> {
    match command {
        Command::Validate(input) => {
            json_only(format, "validate")?;
            Ok(Output::Text(read_game(&input.path())?.to_json()))
        }
        Command::Value { input, n, method, search } => {
            json_only(format, "value")?;
            value(&read_game(&input.path())?, *n, *method, search, seed)
        }
        Command::NsValue { input, check_invariance, n, budget } => {
            json_only(format, "ns-value")?;
            ns(&read_game(&input.path())?, *check_invariance, *n, *budget)
        }
        Command::Classify(input) => {
            json_only(format, "classify")?;
            classify(&read_game(&input.path())?)
        }
        Command::Repeat { input, n, strategy, trials } => {
            json_only(format, "repeat")?;
            repeat(&read_game(&input.path())?, *n, strategy.as_deref(), *trials, seed)
        }
        Command::Decay { input, n_max, search } => {
            let g = read_game(&input.path())?;
            let cfg = DecayConfig {
                search: SearchConfig { budget: search.budget, ..SearchConfig::default() },
                heuristic: heuristic_config(search),
                ..DecayConfig::default()
            };
            let curve = decay_curve(&g, *n_max, &cfg, seed)?;
            if let Some(reason) = &curve.stopped {
                log::warn!("decay curve stopped early: {reason}");
            }
            Ok(match format {
                Format::Csv => Output::Text(curve.to_csv()),
                Format::Json => Output::Json(json_of(&curve)),
            })
        }
        Command::Zoo { name, k } => {
            json_only(format, "zoo")?;
            match name {
                None => Ok(Output::Json(json!({ "games": zoo::NAMES }))),
                Some(name) => Ok(Output::Text(zoo::by_name(name, *k)?.to_json())),
            }
        }
        Command::Cnf { d, m, seeds, value, emit_game } => cnf(*d, *m, *seeds, *value, *emit_game, seed, format),
        Command::Diag(d) => diag(d, format, seed),
    }
}

fn value(g: &Game, n: usize, method: Method, search: &SearchArgs, seed: u64) -> CliResult<Output> {
    let t = tensor_power(g, n)?;
    let config = SearchConfig { budget: search.budget, ..SearchConfig::default() };
    let exact = match method {
        Method::Exact => true,
        Method::Heuristic => false,
        Method::Auto => strategy_space_size(&t).is_some_and(|s| s <= search.budget),
    };
    let (v, s) = if exact {
        game_value_with(&t, &config)?
    } else {
        heuristic_value_search(g, n, &heuristic_config(search), seed)?
    };
    let mut out = json!({
        "value": v,
        "n": n,
        "method": if exact { "exact" } else { "heuristic" },
        "strategy": strategy_json(&t, &s),
    });
    if !exact {
        out["lower_bound"] = json!(true);
    }
    Ok(Output::Json(out))
}

fn ns_box(g: &Game, table: &[Vec<Rational>]) -> Value {
    let sym = |alph: &[Vec<String>], idx: &[usize]| -> Vec<String> {
        idx.iter().enumerate().map(|(j, &i)| alph[j][i].clone()).collect()
    };
    let rows: Vec<Value> = table
        .iter()
        .enumerate()
        .map(|(x, row)| {
            let dist: Vec<Value> = row
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(a, p)| json!({ "a": sym(g.answer_alphabets(), &g.answer_radix().decode(a)), "p": p }))
                .collect();
            json!({ "q": sym(g.question_alphabets(), &g.question_radix().decode(x)), "dist": dist })
        })
        .collect();
    Value::Array(rows)
}

fn ns(g: &Game, check_invariance: bool, n: usize, budget: usize) -> CliResult<Output> {
    let opts = NsOptions { budget, ..NsOptions::default() };
    let (v, s) = ns_value_with(g, &opts)?;
    if !check_invariance {
        return Ok(Output::Json(json!({ "optimum": v, "witness": ns_box(g, s.table()) })));
    }
    let (vn, _) = ns_value_with(&tensor_power(g, n)?, &opts)?;
    Ok(Output::Json(json!({ "optimum": v, "n": n, "repeated_optimum": vn, "equal": v == vn })))
}

fn classify(g: &Game) -> CliResult<Output> {
    let graph = connection_graph(g);
    let components: Vec<Vec<Vec<String>>> = graph
        .components
        .iter()
        .map(|c| {
            c.iter()
                .map(|&v| {
                    graph.vertices[v].iter().enumerate().map(|(j, &q)| g.question_alphabets()[j][q].clone()).collect()
                })
                .collect()
        })
        .collect();
    let connectivity = classify_connectivity(g);
    let mut out = json!({
        "connectivity": connectivity.name(),
        "playerwise": connectivity != Connectivity::NotPlayerwiseConnected,
        "components": components,
    });
    match classify_binary3(g) {
        Ok(c) => {
            out["tag"] = json!(c.tag.name());
            out["witness"] = json_of(&c.witness);
        }
        Err(Error::Unsupported(reason)) => {
            out["tag"] = Value::Null;
            out["note"] = json!(reason);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Output::Json(out))
}

fn repeat(g: &Game, n: usize, strategy: Option<&Path>, trials: u64, seed: u64) -> CliResult<Output> {
    let Some(path) = strategy else {
        if trials > 0 {
            return Err(CliError::Usage("--trials needs --strategy".into()));
        }
        return Ok(Output::Text(tensor_power(g, n)?.to_json()));
    };
    let t = tensor_power(g, n)?;
    let desc: StrategyDescription = serde_json::from_str(&read_text(path)?)
        .map_err(|e| Error::Parse { path: "strategy".into(), message: e.to_string() })?;
    let s = ProductStrategy::from_description(&t, &desc)?;
    let coordinates = (1..=n).map(|i| coordinate_value(g, n, i, &s)).collect::<Result<Vec<_>, _>>()?;
    let mut out = json!({ "n": n, "value": strategy_value(&t, &s)?, "coordinates": coordinates });
    if trials > 0 {
        out["monte_carlo"] = json_of(&mc_win_estimate(g, n, &s, trials, seed)?);
    }
    Ok(Output::Json(out))
}

fn cnf(d: usize, m: usize, seeds: u64, with_value: bool, emit: bool, seed: u64, format: Format) -> CliResult<Output> {
    if emit {
        json_only(format, "cnf --emit-game")?;
        let (_, g) = zoo::random_3cnf_game(d, m, seed)?;
        return Ok(Output::Text(g.to_json()));
    }
    if seeds == 0 {
        return Err(CliError::Usage("--seeds must be positive".into()));
    }
    let rows = {
        use rayon::prelude::*;
        (seed..seed.saturating_add(seeds))
            .into_par_iter()
            .map(|s| zoo::cnf_trial(d, m, s, with_value))
            .collect::<Result<Vec<_>, _>>()?
    };
    let frac = |f: &dyn Fn(&zoo::CnfTrial) -> bool| rows.iter().filter(|r| f(r)).count() as f64 / rows.len() as f64;
    Ok(match format {
        Format::Csv => Output::Text(csv_text(
            &["d", "m", "seed", "connected", "playerwise_connected", "value"],
            rows.iter().map(|r| {
                vec![
                    d.to_string(),
                    m.to_string(),
                    r.seed.to_string(),
                    r.connected.to_string(),
                    r.playerwise_connected.to_string(),
                    r.value.as_ref().map(Rational::to_string).unwrap_or_default(),
                ]
            }),
        )),
        Format::Json => Output::Json(json!({
            "d": d,
            "m": m,
            "connected_fraction": frac(&|r| r.connected),
            "playerwise_fraction": frac(&|r| r.playerwise_connected),
            "trials": json_of(&rows),
        })),
    })
}

/// Parses `P:C:V` into (player, 0-based coordinate, question symbol).
fn parse_pin(g: &Game, n: usize, pin: &str) -> CliResult<(usize, usize, usize)> {
    let bad = |m: String| CliError::Usage(format!("--pin {pin:?}: {m}"));
    let parts: Vec<&str> = pin.splitn(3, ':').collect();
    let [p, c, v] = parts[..] else {
        return Err(bad("expected PLAYER:COORD:SYMBOL".into()));
    };
    let p: usize = p.parse().map_err(|_| bad("bad player".into()))?;
    let c: usize = c.parse().map_err(|_| bad("bad coordinate".into()))?;
    if p >= g.players() {
        return Err(bad(format!("player must be below {}", g.players())));
    }
    if c == 0 || c > n {
        return Err(bad(format!("coordinate must be in 1..={n}")));
    }
    let v = g.question_symbol_index(p, v).ok_or_else(|| bad(format!("unknown question symbol {v:?}")))?;
    Ok((p, c - 1, v))
}

fn diag(d: &Diag, format: Format, seed: u64) -> CliResult<Output> {
    match d {
        Diag::Pinsker { n, cases } => {
            let suite = pinsker_suite(*n, *cases, seed)?;
            Ok(match format {
                Format::Csv => Output::Text(csv_text(
                    &["case", "n", "event_probability", "average", "bound", "pass"],
                    suite.cases.iter().map(|c| {
                        vec![
                            c.case.to_string(),
                            c.n.to_string(),
                            c.event_probability.to_string(),
                            c.average.to_string(),
                            c.bound.to_string(),
                            c.pass.to_string(),
                        ]
                    }),
                )),
                Format::Json => {
                    let worst = suite
                        .cases
                        .iter()
                        .filter(|c| c.bound > 0.0)
                        .map(|c| c.average.to_f64() / c.bound)
                        .fold(0.0, f64::max);
                    Output::Json(json!({
                        "cases": suite.cases.len(),
                        "violations": suite.violations,
                        "max_ratio": worst,
                    }))
                }
            })
        }
        Diag::Embedding { input, n, pins } => {
            json_only(format, "diag embedding")?;
            let g = read_game(&input.path())?;
            let pins = pins.iter().map(|p| parse_pin(&g, *n, p)).collect::<CliResult<Vec<_>>>()?;
            let e = ProductEvent::from_predicates(&g, *n, |j, x| pins.iter().all(|&(p, c, v)| p != j || x[c] == v))?;
            Ok(Output::Json(json_of(&l1_embedding_diagnostic(&g, *n, &e)?)))
        }
        Diag::Spaces { game, n, samples } => {
            json_only(format, "diag spaces")?;
            let g = match game {
                Some(p) => read_game(p)?,
                None => zoo::anti_correlation(),
            };
            let mut out = json_of(&spaces_report(&g, *n)?);
            if *samples > 0 {
                let p = space_p_sample(&g, *n, *samples, seed)?;
                let c = space_c_sample(&g, *n, *samples, seed)?;
                let mut pairs: BTreeMap<String, u64> = BTreeMap::new();
                for a in &p {
                    *pairs.entry(format!("{},{}", a.x[0], a.x_tilde[0])).or_default() += 1;
                }
                let in_s = c.iter().filter(|a| a.s[0]).count() as f64 / *samples as f64;
                out["sampled"] = json!({
                    "samples": samples,
                    "p_pair_frequency": pairs
                        .into_iter()
                        .map(|(k, v)| (k, json!(v as f64 / *samples as f64)))
                        .collect::<serde_json::Map<_, _>>(),
                    "s_frequency": in_s,
                });
            }
            Ok(Output::Json(out))
        }
    }
}
