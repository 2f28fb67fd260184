//! Batch experiments: a corpus, a parameter grid and a list of methods in, a
//! CSV report and a JSON summary out.
//!
//! The spec file holds `key = value` lines; `#` starts a comment. List
//! values are whitespace separated.
//!
//! | key | default | meaning |
//! |-----|---------|---------|
//! | `families` | (none) | any of `abelian small semidirect` |
//! | `specs` | (none) | group specs; `cfpair:n` adds both groups |
//! | `min_order`, `max_order` | 1, 64 | corpus order range |
//! | `pairs` | `both` | `equal-order`, `twins` or `both` |
//! | `twins` | 1 | relabelled twins per group |
//! | `methods` | `wl` | any of `wl auto abelian semisimple oracle canon` |
//! | `k` | 1 | WL dimensions |
//! | `version` | `II` | any of `I II III` (wl only) |
//! | `rounds` | 0 | round limits, 0 = until stable (wl only) |
//! | `counting` | `true` | any of `true false` (wl only) |
//! | `mode` | `auto` | `auto`, `exact` or `fingerprint` |
//! | `oracle` | `true` | compute the oracle verdict for each pair |
//! | `seed` | 0 | seed for twin relabellings |
//! | `budget` | 2^27 | WL tuple records per row |
//! | `time_per_pair` | (none) | seconds; later rows of a slow pair are skipped |
//! | `timings` | `false` | fill the `wall_ms` column |
//! | `output`, `summary` | `<stem>.csv`, `<stem>.json` | next to the experiment file |

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wlgroup::group::Elem;
use wlgroup::iso::{abelian_corpus, oracle_isomorphic, semidirect_corpus, small_corpus, verify_isomorphism, OracleConfig, Status};
use wlgroup::wl::{check_budget, WlConfig, Version, DEFAULT_BUDGET};
use wlgroup::{CayleyTable, Error};

use crate::catalog::Catalog;
use crate::cli::{MethodArg, ModeArg, VersionArg};
use crate::commands::{budget_from_env, decide, wl_run};
use crate::exit::{CliError, CliResult, CONTRADICTION};
use crate::spec::GroupSpec;

pub const CSV_VERSION: &str = "wlgroup-report v1";
pub const COLUMNS: [&str; 14] = [
    "pair", "first", "second", "order", "method", "k", "version", "counting", "max_rounds", "verdict", "rounds_used",
    "oracle", "agreement", "wall_ms",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    EqualOrder,
    Twins,
    Both,
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub families: Vec<String>,
    pub specs: Vec<GroupSpec>,
    pub min_order: usize,
    pub max_order: usize,
    pub pairs: PairKind,
    pub twins: usize,
    pub methods: Vec<MethodArg>,
    pub k: Vec<usize>,
    pub versions: Vec<VersionArg>,
    pub rounds: Vec<u32>,
    pub counting: Vec<bool>,
    pub mode: ModeArg,
    pub oracle: bool,
    pub seed: u64,
    pub budget: u64,
    pub time_per_pair: Option<f64>,
    pub timings: bool,
    pub output: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            families: Vec::new(),
            specs: Vec::new(),
            min_order: 1,
            max_order: 64,
            pairs: PairKind::Both,
            twins: 1,
            methods: vec![MethodArg::Wl],
            k: vec![1],
            versions: vec![VersionArg::II],
            rounds: vec![0],
            counting: vec![true],
            mode: ModeArg::Auto,
            oracle: true,
            seed: 0,
            budget: DEFAULT_BUDGET,
            time_per_pair: None,
            timings: false,
            output: None,
            summary: None,
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { position: line, message: message.into() }
}

fn list<T>(line: usize, value: &str, f: impl Fn(&str) -> Option<T>) -> wlgroup::Result<Vec<T>> {
    value
        .split_whitespace()
        .map(|w| f(w).ok_or_else(|| parse_err(line, format!("invalid value {w:?}"))))
        .collect()
}

fn one<T>(line: usize, value: &str, f: impl Fn(&str) -> Option<T>) -> wlgroup::Result<T> {
    f(value.trim()).ok_or_else(|| parse_err(line, format!("invalid value {:?}", value.trim())))
}

fn boolean(s: &str) -> Option<bool> {
    match s {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

fn method(s: &str) -> Option<MethodArg> {
    <MethodArg as clap::ValueEnum>::from_str(s, true).ok()
}

fn version(s: &str) -> Option<VersionArg> {
    <VersionArg as clap::ValueEnum>::from_str(s, false).ok()
}

impl ExperimentSpec {
    /// Parses the key=value text; positions in errors are line numbers.
    pub fn parse(text: &str) -> wlgroup::Result<ExperimentSpec> {
        let mut s = ExperimentSpec::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| parse_err(line, "expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "families" => {
                    s.families = list(line, value, |w| {
                        ["abelian", "small", "semidirect"].contains(&w).then(|| w.to_string())
                    })?
                }
                "specs" => {
                    s.specs = value
                        .split_whitespace()
                        .map(|w| {
                            w.parse::<GroupSpec>().map_err(|e| match e {
                                Error::Parse { message, position } => {
                                    parse_err(line, format!("spec {w:?}, column {position}: {message}"))
                                }
                                other => other,
                            })
                        })
                        .collect::<wlgroup::Result<_>>()?
                }
                "min_order" => s.min_order = one(line, value, |w| w.parse().ok())?,
                "max_order" => s.max_order = one(line, value, |w| w.parse().ok())?,
                "pairs" => {
                    s.pairs = one(line, value, |w| match w {
                        "equal-order" => Some(PairKind::EqualOrder),
                        "twins" => Some(PairKind::Twins),
                        "both" => Some(PairKind::Both),
                        _ => None,
                    })?
                }
                "twins" => s.twins = one(line, value, |w| w.parse().ok())?,
                "methods" => s.methods = list(line, value, method)?,
                "k" => s.k = list(line, value, |w| w.parse().ok().filter(|&k| k >= 1))?,
                "version" => s.versions = list(line, value, version)?,
                "rounds" => s.rounds = list(line, value, |w| w.parse().ok())?,
                "counting" => s.counting = list(line, value, boolean)?,
                "mode" => s.mode = one(line, value, |w| <ModeArg as clap::ValueEnum>::from_str(w, true).ok())?,
                "oracle" => s.oracle = one(line, value, boolean)?,
                "seed" => s.seed = one(line, value, |w| w.parse().ok())?,
                "budget" => s.budget = one(line, value, |w| w.parse().ok())?,
                "time_per_pair" => s.time_per_pair = Some(one(line, value, |w| w.parse().ok().filter(|&t: &f64| t > 0.0))?),
                "timings" => s.timings = one(line, value, boolean)?,
                "output" => s.output = Some(PathBuf::from(value)),
                "summary" => s.summary = Some(PathBuf::from(value)),
                _ => return Err(parse_err(line, format!("unknown key {key:?}"))),
            }
        }
        for (name, empty) in [("methods", s.methods.is_empty()), ("k", s.k.is_empty())] {
            if empty {
                return Err(parse_err(0, format!("{name} must not be empty")));
            }
        }
        Ok(s)
    }

    /// Corpus groups in spec order, deduplicated by name and filtered by order.
    pub fn corpus(&self, catalog: &Catalog) -> wlgroup::Result<Vec<CayleyTable>> {
        let mut out: Vec<CayleyTable> = Vec::new();
        let mut push = |t: CayleyTable| {
            if (self.min_order..=self.max_order).contains(&t.order()) && !out.iter().any(|x| x.label() == t.label()) {
                out.push(t);
            }
        };
        for f in &self.families {
            let named = match f.as_str() {
                "abelian" => abelian_corpus(self.max_order),
                "small" => small_corpus(self.max_order),
                _ => semidirect_corpus().into_iter().flat_map(|p| [p.first, p.second]).collect(),
            };
            for g in named {
                push(g.table.with_label(g.name));
            }
        }
        for s in &self.specs {
            for t in s.build_all(catalog)? {
                push(t);
            }
        }
        Ok(out)
    }
}

/// The pair to compare plus, for twins, the known isomorphism.
struct Pair {
    id: usize,
    first: usize,
    second: CayleyTable,
    second_name: String,
    witness: Option<Vec<Elem>>,
}

fn twin(g: &CayleyTable, seed: u64, group: usize, index: usize) -> (CayleyTable, Vec<Elem>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((group as u64) << 32) ^ index as u64);
    let mut rest: Vec<Elem> = (1..g.order() as Elem).collect();
    rest.shuffle(&mut rng);
    let perm: Vec<Elem> = std::iter::once(0).chain(rest).collect();
    (g.relabel(&perm).expect("fixes the identity"), perm)
}

fn build_pairs(spec: &ExperimentSpec, groups: &[CayleyTable]) -> Vec<Pair> {
    let mut pairs = Vec::new();
    if spec.pairs != PairKind::Twins {
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                if groups[i].order() == groups[j].order() {
                    let second = groups[j].clone();
                    let second_name = second.label().to_string();
                    pairs.push(Pair { id: 0, first: i, second, second_name, witness: None });
                }
            }
        }
    }
    if spec.pairs != PairKind::EqualOrder {
        for (i, g) in groups.iter().enumerate() {
            for t in 0..spec.twins {
                let (second, perm) = twin(g, spec.seed, i, t);
                let second_name = format!("{}~{t}", g.label());
                pairs.push(Pair { id: 0, first: i, second, second_name, witness: Some(perm) });
            }
        }
    }
    for (id, p) in pairs.iter_mut().enumerate() {
        p.id = id;
    }
    pairs
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub pair: usize,
    pub first: String,
    pub second: String,
    pub order: usize,
    pub method: String,
    pub k: Option<usize>,
    pub version: Option<String>,
    pub counting: Option<bool>,
    pub max_rounds: Option<u32>,
    pub verdict: String,
    pub rounds_used: Option<u32>,
    pub oracle: String,
    pub agreement: String,
    pub wall_ms: Option<f64>,
}

impl ReportRow {
    fn grid_key(&self) -> String {
        let mut key = self.method.clone();
        if let Some(k) = self.k {
            key.push_str(&format!(" k={k}"));
        }
        if let Some(v) = &self.version {
            key.push_str(&format!(" version={v}"));
        }
        if let Some(c) = self.counting {
            key.push_str(if c { " counting" } else { " count-free" });
        }
        if let Some(r) = self.max_rounds {
            key.push_str(&format!(" rounds={r}"));
        }
        key
    }

    fn record(&self) -> Vec<String> {
        let opt = |o: Option<String>| o.unwrap_or_default();
        vec![
            self.pair.to_string(),
            self.first.clone(),
            self.second.clone(),
            self.order.to_string(),
            self.method.clone(),
            opt(self.k.map(|k| k.to_string())),
            opt(self.version.clone()),
            opt(self.counting.map(|c| c.to_string())),
            opt(self.max_rounds.map(|r| r.to_string())),
            self.verdict.clone(),
            opt(self.rounds_used.map(|r| r.to_string())),
            self.oracle.clone(),
            self.agreement.clone(),
            opt(self.wall_ms.map(|t| format!("{t:.3}"))),
        ]
    }
}

/// A verdict and its agreement with the oracle: `agree`, `incomplete`
/// (WL did not separate a non-isomorphic pair), `contradiction` or `n/a`.
fn agreement(verdict: &str, oracle: &str) -> &'static str {
    match (verdict, oracle) {
        (v, _) if v.starts_with("skipped") => "n/a",
        (_, "n/a") => "n/a",
        ("distinguished", "isomorphic") | ("non_isomorphic", "isomorphic") | ("isomorphic", "non_isomorphic") => {
            "contradiction"
        }
        ("indistinguishable", "non_isomorphic") => "incomplete",
        _ => "agree",
    }
}

fn oracle_verdict(g: &CayleyTable, pair: &Pair, enabled: bool) -> String {
    if let Some(w) = &pair.witness {
        return if verify_isomorphism(g, &pair.second, w) { "isomorphic" } else { "n/a" }.into();
    }
    if !enabled {
        return "n/a".into();
    }
    match oracle_isomorphic(g, &pair.second, &OracleConfig::default()).map(|v| v.decided()) {
        Ok(Some(true)) => "isomorphic".into(),
        Ok(Some(false)) => "non_isomorphic".into(),
        _ => "n/a".into(),
    }
}

fn skipped(e: &Error) -> String {
    match e {
        Error::MemoryBudget { .. } => "skipped:budget".into(),
        _ => "skipped:unsupported".into(),
    }
}

fn run_pair(spec: &ExperimentSpec, groups: &[CayleyTable], pair: &Pair) -> Vec<ReportRow> {
    let g = &groups[pair.first];
    let h = &pair.second;
    let oracle = oracle_verdict(g, pair, spec.oracle);
    let base = ReportRow {
        pair: pair.id,
        first: g.label().to_string(),
        second: pair.second_name.clone(),
        order: g.order(),
        method: String::new(),
        k: None,
        version: None,
        counting: None,
        max_rounds: None,
        verdict: String::new(),
        rounds_used: None,
        oracle: oracle.clone(),
        agreement: String::new(),
        wall_ms: None,
    };
    let mut rows = Vec::new();
    for &m in &spec.methods {
        match m {
            MethodArg::Wl => {
                for &k in &spec.k {
                    for &v in &spec.versions {
                        for &counting in &spec.counting {
                            for &r in &spec.rounds {
                                rows.push(ReportRow {
                                    method: "wl".into(),
                                    k: Some(k),
                                    version: Some(v.name().into()),
                                    counting: Some(counting),
                                    max_rounds: Some(r),
                                    ..base.clone()
                                });
                            }
                        }
                    }
                }
            }
            MethodArg::Auto | MethodArg::Canon => {
                for &k in &spec.k {
                    rows.push(ReportRow { method: m.name().into(), k: Some(k), ..base.clone() });
                }
            }
            _ => rows.push(ReportRow { method: m.name().into(), ..base.clone() }),
        }
    }
    let started = Instant::now();
    for row in &mut rows {
        let over = spec.time_per_pair.is_some_and(|t| started.elapsed().as_secs_f64() > t);
        let t0 = Instant::now();
        let (verdict, rounds) = if over {
            ("skipped:time".to_string(), None)
        } else if row.method == "wl" {
            let k = row.k.expect("wl rows carry k");
            let v = version(row.version.as_deref().expect("wl rows carry a version")).expect("known version");
            let vertices = if v == VersionArg::III { g.order() + 4 * g.order() * g.order() } else { g.order() };
            let mut cfg = WlConfig::new(k, Version::II)
                .counting(row.counting == Some(true))
                .mode(spec.mode.resolve(k))
                .budget(spec.budget);
            if let Some(r) = row.max_rounds.filter(|&r| r > 0) {
                cfg = cfg.rounds(r);
            }
            let result = if g.order() != h.order() {
                Ok(None)
            } else {
                check_budget(&[vertices, vertices], k, spec.budget).and_then(|_| wl_run(g, h, v, &cfg).map(Some))
            };
            match result {
                Ok(None) => ("distinguished".into(), Some(1)),
                Ok(Some(r)) if r.distinguished => ("distinguished".into(), r.distinguished_at),
                Ok(Some(r)) => ("indistinguishable".into(), Some(r.rounds_used)),
                Err(e) => (skipped(&e), None),
            }
        } else {
            let m = method(&row.method).expect("known method");
            match decide(g, h, m, row.k.unwrap_or(3), spec.budget) {
                Ok(v) => match v.status {
                    Status::Isomorphic { .. } => ("isomorphic".into(), None),
                    Status::NonIsomorphic { .. } => ("non_isomorphic".into(), None),
                    Status::WlIndistinguishable { rounds, .. } => ("indistinguishable".into(), Some(rounds)),
                },
                Err(e) => (skipped(&e), None),
            }
        };
        row.agreement = agreement(&verdict, &oracle).to_string();
        row.verdict = verdict;
        row.rounds_used = rounds;
        if spec.timings {
            row.wall_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
        }
    }
    rows
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub rows: usize,
    pub agree: usize,
    pub incomplete: usize,
    pub contradiction: usize,
    pub no_oracle: usize,
    pub skipped: usize,
    /// `agree / (agree + incomplete + contradiction)`, absent when no row
    /// could be compared.
    pub agreement_rate: Option<f64>,
}

impl Tally {
    fn add(&mut self, row: &ReportRow) {
        self.rows += 1;
        if row.verdict.starts_with("skipped") {
            self.skipped += 1;
        }
        match row.agreement.as_str() {
            "agree" => self.agree += 1,
            "incomplete" => self.incomplete += 1,
            "contradiction" => self.contradiction += 1,
            _ if !row.verdict.starts_with("skipped") => self.no_oracle += 1,
            _ => {}
        }
        let judged = self.agree + self.incomplete + self.contradiction;
        self.agreement_rate = (judged > 0).then(|| self.agree as f64 / judged as f64);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub schema: &'static str,
    pub seed: u64,
    pub groups: usize,
    pub pairs: usize,
    pub overall: Tally,
    pub grid: BTreeMap<String, Tally>,
    pub csv: PathBuf,
}

pub struct Outcome {
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

/// Runs every pair on the worker pool; rows come back in spec order.
pub fn run(spec: &ExperimentSpec, catalog: &Catalog, csv: PathBuf) -> wlgroup::Result<Outcome> {
    let groups = spec.corpus(catalog)?;
    let pairs = build_pairs(spec, &groups);
    let rows: Vec<ReportRow> =
        wlgroup::par::map_range(pairs.len(), |i| run_pair(spec, &groups, &pairs[i])).into_iter().flatten().collect();
    let mut overall = Tally::default();
    let mut grid: BTreeMap<String, Tally> = BTreeMap::new();
    for r in &rows {
        overall.add(r);
        grid.entry(r.grid_key()).or_default().add(r);
    }
    let summary =
        Summary { schema: "wlgroup.summary/1", seed: spec.seed, groups: groups.len(), pairs: pairs.len(), overall, grid, csv };
    Ok(Outcome { rows, summary })
}

pub fn write_csv(path: &Path, seed: u64, rows: &[ReportRow]) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::io(path.display(), e);
    let mut file = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    use std::io::Write;
    writeln!(file, "# {CSV_VERSION} seed={seed}").map_err(io)?;
    let mut w = csv::Writer::from_writer(file);
    let csv_err = |e: csv::Error| CliError::new(crate::exit::IO, "io", format!("{}: {e}", path.display()));
    w.write_record(COLUMNS).map_err(csv_err)?;
    for r in rows {
        w.write_record(r.record()).map_err(csv_err)?;
    }
    w.flush().map_err(io)
}

fn beside(spec_path: &Path, ext: &str) -> PathBuf {
    let stem = spec_path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "experiment".into());
    spec_path.with_file_name(format!("{stem}.{ext}"))
}

fn relative_to(spec_path: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        spec_path.parent().unwrap_or(Path::new("")).join(p)
    }
}

/// The `experiment` subcommand. Returns the exit code: 0, or the
/// contradiction code once the report has been written.
pub fn command(
    spec_path: &Path,
    out: Option<PathBuf>,
    summary: Option<PathBuf>,
    budget_flag: Option<u64>,
    catalog: &Catalog,
    json: bool,
) -> CliResult<u8> {
    let text = std::fs::read_to_string(spec_path).map_err(|e| CliError::io(spec_path.display(), e))?;
    let mut spec = ExperimentSpec::parse(&text).map_err(|e| CliError::from(e).in_context(spec_path.display()))?;
    if let Some(b) = budget_flag.or(budget_from_env()?) {
        spec.budget = b;
    }
    let csv = out.unwrap_or_else(|| spec.output.as_deref().map(|p| relative_to(spec_path, p)).unwrap_or_else(|| beside(spec_path, "csv")));
    let summary_path =
        summary.unwrap_or_else(|| spec.summary.as_deref().map(|p| relative_to(spec_path, p)).unwrap_or_else(|| beside(spec_path, "json")));
    let outcome = run(&spec, catalog, csv.clone())?;
    write_csv(&csv, spec.seed, &outcome.rows)?;
    let text = serde_json::to_string_pretty(&outcome.summary).expect("serializable");
    std::fs::write(&summary_path, format!("{text}\n")).map_err(|e| CliError::io(summary_path.display(), e))?;
    let s = &outcome.summary;
    if json {
        println!("{}", serde_json::to_string(s).expect("serializable"));
    } else {
        println!(
            "{} rows over {} pairs: {} agree, {} incomplete, {} contradictions, {} skipped",
            s.overall.rows, s.pairs, s.overall.agree, s.overall.incomplete, s.overall.contradiction, s.overall.skipped
        );
        println!("{}", csv.display());
        println!("{}", summary_path.display());
    }
    if s.overall.contradiction > 0 {
        eprintln!("error: {} oracle contradictions", s.overall.contradiction);
        return Ok(CONTRADICTION);
    }
    Ok(0)
}
