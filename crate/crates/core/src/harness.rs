//! Batch runs over parameter grids, with CSV and JSON reports.
//!
//! A config is a JSON object. Every parameter key takes a scalar or a list, and
//! a run evaluates the Cartesian product of the lists. Rationals are integers or
//! `"num/den"` strings. Missing keys fall back to per-command defaults.

use std::cmp::Ordering;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exceptional_constructions::{
    certify_lower_bound, construct_marstrand_witness, construct_oberlin_rectangle, u_families_disjoint,
    ExceptionalWitness,
};
use crate::flag_geometry::LinearSubspace;
use crate::fp_linalg::PrimeField;
use crate::furstenberg_constructions::{construct_2d, construct_general, report, UPPER_CONSTANT};
use crate::indices::{
    classify_marstrand_type, compare_scaled_power, fmt_rational, furstenberg_index, marstrand_index, parse_rational,
    Rational,
};
use crate::lemma_verifier::{
    check_closed_form_2d_with, check_index_properties_with, check_recursion_f1_with, check_recursion_f2_with,
    check_recursion_m_with, CheckOutcome, CounterexampleReport, GridSpec, Mutation,
};
use crate::projections::count_small_projection_subspaces;

/// `#A >= SIZE_CONSTANT * p^a` for exceptional witnesses.
pub const SIZE_CONSTANT: (i64, i64) = (1, 25);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Index,
    Lemmas,
    Construct,
    Exceptional,
    Count,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Index => "index",
            Command::Lemmas => "lemmas",
            Command::Construct => "construct",
            Command::Exceptional => "exceptional",
            Command::Count => "count",
        }
    }

    fn default_upper(&self) -> Rational {
        match self {
            Command::Count => Rational::from_integer(4),
            _ => Rational::from_integer(UPPER_CONSTANT),
        }
    }

    fn default_lower(&self) -> Rational {
        match self {
            Command::Count => Rational::new(1, 4),
            _ => Rational::new(1, 25),
        }
    }

    /// Parameters used when the config omits a key.
    fn defaults(&self) -> Value {
        match self {
            Command::Index => serde_json::json!({"s": "1/2", "t": 1, "n": 2, "k": 1}),
            Command::Lemmas => serde_json::json!({"lemma": "recursion_m", "n": 4, "k": 2, "step": "1/4"}),
            Command::Construct => serde_json::json!({"s": "1/2", "t": 1, "n": 2, "k": 1, "p": [29, 61, 101]}),
            Command::Exceptional => serde_json::json!({"a": "3/2", "s": 1, "n": 2, "k": 1, "p": [41, 101]}),
            Command::Count => serde_json::json!({"n": 3, "k": [1, 2, 3], "m": [1, 2, 3], "l": [0, 1, 2, 3], "p": [2, 3]}),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "index" => Command::Index,
            "lemmas" => Command::Lemmas,
            "construct" => Command::Construct,
            "exceptional" => Command::Exceptional,
            "count" => Command::Count,
            other => return Err(Error::Config(format!("unknown command {other:?}"))),
        })
    }
}

/// Grid checks runnable by the `lemmas` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaCheck {
    RecursionF1,
    RecursionF2,
    RecursionM,
    IndexProperties,
    ClosedForm2d,
}

impl LemmaCheck {
    pub fn name(&self) -> &'static str {
        match self {
            LemmaCheck::RecursionF1 => "recursion_f1",
            LemmaCheck::RecursionF2 => "recursion_f2",
            LemmaCheck::RecursionM => "recursion_m",
            LemmaCheck::IndexProperties => "index_properties",
            LemmaCheck::ClosedForm2d => "closed_form_2d",
        }
    }
}

impl FromStr for LemmaCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "recursion_f1" => LemmaCheck::RecursionF1,
            "recursion_f2" => LemmaCheck::RecursionF2,
            "recursion_m" => LemmaCheck::RecursionM,
            "index_properties" => LemmaCheck::IndexProperties,
            "closed_form_2d" => LemmaCheck::ClosedForm2d,
            other => return Err(Error::Config(format!("unknown lemma {other:?}"))),
        })
    }
}

fn parse_mutation(text: &str) -> Result<Mutation> {
    match text {
        "none" => Ok(Mutation::None),
        "flip" => Ok(Mutation::Flip),
        "unclamped_type3" => Ok(Mutation::UnclampedType3),
        _ => match text.strip_prefix("tighten:") {
            Some(d) => Ok(Mutation::Tighten(parse_rational(d)?)),
            None => Err(Error::Config(format!("unknown mutation {text:?}"))),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub s: Vec<Rational>,
    pub t: Vec<Rational>,
    pub a: Vec<Rational>,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub m: Vec<usize>,
    pub l: Vec<usize>,
    pub primes: Vec<u64>,
    pub lemmas: Vec<LemmaCheck>,
    pub mutation: Mutation,
    pub step: Rational,
    pub upper_constant: Rational,
    pub lower_constant: Rational,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "command",
    "s",
    "t",
    "a",
    "n",
    "k",
    "m",
    "l",
    "p",
    "primes",
    "lemma",
    "mutation",
    "step",
    "upper_constant",
    "lower_constant",
    "jobs",
    "out",
];

fn keyed(key: &str, e: Error) -> Error {
    Error::Config(format!("key {key:?}: {e}"))
}

fn as_list(v: &Value) -> Vec<&Value> {
    match v {
        Value::Array(xs) => xs.iter().collect(),
        x => vec![x],
    }
}

fn rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(x) => x
            .as_i64()
            .map(Rational::from_integer)
            .ok_or_else(|| Error::Parse(format!("rationals must be num/den, got {x}"))),
        other => Err(Error::Parse(format!("rationals must be num/den, got {other}"))),
    }
}

fn integer_value(v: &Value) -> Result<u64> {
    v.as_u64().ok_or_else(|| Error::Parse(format!("expected a nonnegative integer, got {v}")))
}

fn string_value(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| Error::Parse(format!("expected a string, got {v}")))
}

struct Lookup<'a> {
    given: &'a Map<String, Value>,
    defaults: Value,
}

impl Lookup<'_> {
    fn get(&self, key: &str) -> Option<&Value> {
        self.given.get(key).or_else(|| self.defaults.get(key))
    }

    fn list<T>(&self, key: &str, f: impl Fn(&Value) -> Result<T>) -> Result<Vec<T>> {
        match self.get(key) {
            None => Ok(Vec::new()),
            Some(v) => as_list(v).into_iter().map(|x| f(x).map_err(|e| keyed(key, e))).collect(),
        }
    }

    fn scalar<T>(&self, key: &str, f: impl Fn(&Value) -> Result<T>) -> Result<Option<T>> {
        self.get(key).map(|v| f(v).map_err(|e| keyed(key, e))).transpose()
    }
}

/// Parse a config that names its own command.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    parse_config_with(text, None)
}

/// Parse a config; `command` fills in or must agree with the `command` key.
pub fn parse_config_with(text: &str, command: Option<Command>) -> Result<ExperimentConfig> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
    let given = root
        .as_object()
        .ok_or_else(|| Error::Config("config must be a JSON object".into()))?;
    if let Some(key) = given.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(Error::Config(format!("unknown key {key:?}")));
    }
    let named = given
        .get("command")
        .map(|v| string_value(v).and_then(Command::from_str).map_err(|e| keyed("command", e)))
        .transpose()?;
    let command = match (named, command) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Config(format!("key \"command\": config says {a}, invocation says {b}")))
        }
        (Some(c), _) | (None, Some(c)) => c,
        (None, None) => return Err(Error::Config("missing key \"command\"".into())),
    };
    if given.contains_key("p") && given.contains_key("primes") {
        return Err(Error::Config("give either \"p\" or \"primes\", not both".into()));
    }
    let look = Lookup {
        given,
        defaults: command.defaults(),
    };
    let usize_list = |key: &str| look.list(key, |v| integer_value(v).map(|x| x as usize));
    let prime_key = if given.contains_key("primes") { "primes" } else { "p" };
    let primes = look.list(prime_key, |v| {
        let p = integer_value(v)?;
        PrimeField::new(p)?;
        Ok(p)
    })?;
    let step = look.scalar("step", rational_value)?.unwrap_or(Rational::new(1, 4));
    if step <= Rational::from_integer(0) {
        return Err(keyed("step", Error::Parse("grid step must be positive".into())));
    }
    Ok(ExperimentConfig {
        command,
        s: look.list("s", rational_value)?,
        t: look.list("t", rational_value)?,
        a: look.list("a", rational_value)?,
        n: usize_list("n")?,
        k: usize_list("k")?,
        m: usize_list("m")?,
        l: usize_list("l")?,
        primes,
        lemmas: look.list("lemma", |v| string_value(v).and_then(LemmaCheck::from_str))?,
        mutation: look.scalar("mutation", |v| string_value(v).and_then(parse_mutation))?.unwrap_or_default(),
        step,
        upper_constant: look.scalar("upper_constant", rational_value)?.unwrap_or(command.default_upper()),
        lower_constant: look.scalar("lower_constant", rational_value)?.unwrap_or(command.default_lower()),
        jobs: look.scalar("jobs", |v| integer_value(v).map(|x| x as usize))?,
        out: look.scalar("out", |v| string_value(v).map(PathBuf::from))?,
    })
}

/// One CSV line plus its verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub fields: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub cases: usize,
    pub passes: usize,
    pub fails: usize,
    pub wall_ms: u128,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: Command,
    pub header: Vec<&'static str>,
    pub rows: Vec<Row>,
    /// Only filled by the `lemmas` command.
    pub counterexamples: Vec<CounterexampleReport>,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn summary(&self) -> Summary {
        let passes = self.rows.iter().filter(|r| r.pass).count();
        Summary {
            cases: self.rows.len(),
            passes,
            fails: self.rows.len() - passes,
            wall_ms: self.wall_ms,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn csv_bytes(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(&r.fields).map_err(io)?;
        }
        w.into_inner().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn counterexample_bytes(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CounterexampleReport::CSV_HEADER).map_err(io)?;
        for c in &self.counterexamples {
            w.write_record(c.csv_record()).map_err(io)?;
        }
        w.into_inner().map_err(|e| Error::Io(e.to_string()))
    }

    /// Write `<command>.csv`, `summary.json` and, for `lemmas`, `counterexamples.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(io)?;
        fs::write(dir.join(format!("{}.csv", self.command)), self.csv_bytes()?).map_err(io)?;
        if self.command == Command::Lemmas {
            fs::write(dir.join("counterexamples.csv"), self.counterexample_bytes()?).map_err(io)?;
        }
        let json = serde_json::to_string_pretty(&self.summary()).map_err(io)?;
        fs::write(dir.join("summary.json"), json + "\n").map_err(io)
    }
}

fn io(e: impl fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn header(command: Command) -> Vec<&'static str> {
    match command {
        Command::Index => vec!["index", "s", "t", "a", "n", "k", "value", "type", "pass", "error"],
        Command::Lemmas => vec!["lemma", "n", "k", "step", "checked", "counterexamples", "pass", "error"],
        Command::Construct => vec![
            "s", "t", "n", "k", "p", "branch", "size", "target", "ratio", "valid", "upper_ok", "lower_ok", "pass",
            "error",
        ],
        Command::Exceptional => vec![
            "a",
            "s",
            "n",
            "k",
            "p",
            "type",
            "branch",
            "size",
            "claimed",
            "certified",
            "target",
            "size_ok",
            "lower_ok",
            "disjoint",
            "pass",
            "error",
        ],
        Command::Count => vec!["n", "k", "m", "l", "p", "count", "exponent", "pass", "error"],
    }
}

#[derive(Clone, Debug)]
enum Case {
    F { s: Rational, t: Rational, n: usize, k: usize },
    M { a: Rational, s: Rational, n: usize, k: usize },
    Lemma { check: LemmaCheck, n: usize, k: usize },
    Construct { s: Rational, t: Rational, n: usize, k: usize, p: u64 },
    Exceptional { a: Rational, s: Rational, n: usize, k: usize, p: u64 },
    Count { n: usize, k: usize, m: usize, l: usize, p: u64 },
}

fn cases(cfg: &ExperimentConfig) -> Vec<Case> {
    let mut out = Vec::new();
    match cfg.command {
        Command::Index => {
            for &s in &cfg.s {
                for &t in &cfg.t {
                    for &n in &cfg.n {
                        for &k in &cfg.k {
                            out.push(Case::F { s, t, n, k });
                        }
                    }
                }
            }
            for &a in &cfg.a {
                for &s in &cfg.s {
                    for &n in &cfg.n {
                        for &k in &cfg.k {
                            out.push(Case::M { a, s, n, k });
                        }
                    }
                }
            }
        }
        Command::Lemmas => {
            for &check in &cfg.lemmas {
                let mut seen = Vec::new();
                for &n in &cfg.n {
                    for &k in &cfg.k {
                        let key = match check {
                            LemmaCheck::RecursionF1 => (0, k),
                            LemmaCheck::ClosedForm2d => (2, 1),
                            _ => (n, k),
                        };
                        if !seen.contains(&key) {
                            seen.push(key);
                            out.push(Case::Lemma {
                                check,
                                n: key.0,
                                k: key.1,
                            });
                        }
                    }
                }
            }
        }
        Command::Construct => {
            for &s in &cfg.s {
                for &t in &cfg.t {
                    for &n in &cfg.n {
                        for &k in &cfg.k {
                            for &p in &cfg.primes {
                                out.push(Case::Construct { s, t, n, k, p });
                            }
                        }
                    }
                }
            }
        }
        Command::Exceptional => {
            for &a in &cfg.a {
                for &s in &cfg.s {
                    for &n in &cfg.n {
                        for &k in &cfg.k {
                            for &p in &cfg.primes {
                                out.push(Case::Exceptional { a, s, n, k, p });
                            }
                        }
                    }
                }
            }
        }
        Command::Count => {
            for &n in &cfg.n {
                for &k in &cfg.k {
                    for &m in &cfg.m {
                        for &l in &cfg.l {
                            if !count_hypotheses(n, k, m, l) {
                                continue;
                            }
                            for &p in &cfg.primes {
                                out.push(Case::Count { n, k, m, l, p });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// `1 <= k <= n`, `m <= n`, `l <= min(k, m)` and `m - l <= n - k`.
pub fn count_hypotheses(n: usize, k: usize, m: usize, l: usize) -> bool {
    (1..=n).contains(&k) && m <= n && l <= k.min(m) && m - l <= n - k
}

/// `k(n-k) - (k-l)(m-l)`.
pub fn count_exponent(n: usize, k: usize, m: usize, l: usize) -> i64 {
    (k * (n - k)) as i64 - ((k - l) * (m - l)) as i64
}

fn q(r: Rational) -> String {
    fmt_rational(r)
}

fn failed(mut fields: Vec<String>, width: usize, e: Error) -> Row {
    fields.resize(width - 2, String::new());
    fields.push("false".into());
    fields.push(e.to_string());
    Row { fields, pass: false }
}

fn evaluate(cfg: &ExperimentConfig, case: &Case) -> (Row, Vec<CounterexampleReport>) {
    let width = header(cfg.command).len();
    let b = |x: bool| x.to_string();
    match *case {
        Case::F { s, t, n, k } => {
            let keys = vec!["F".into(), q(s), q(t), String::new(), n.to_string(), k.to_string()];
            match furstenberg_index(s, t, n, k) {
                Ok(v) => {
                    let mut f = keys;
                    f.extend([v.to_string(), String::new(), b(true), String::new()]);
                    (Row { fields: f, pass: true }, Vec::new())
                }
                Err(e) => (failed(keys, width, e), Vec::new()),
            }
        }
        Case::M { a, s, n, k } => {
            let keys = vec!["M".into(), q(s), String::new(), q(a), n.to_string(), k.to_string()];
            match marstrand_index(a, s, n, k).and_then(|v| Ok((v, classify_marstrand_type(a, s, n, k)?))) {
                Ok((v, kind)) => {
                    let mut f = keys;
                    f.extend([v.to_string(), kind.number().to_string(), b(true), String::new()]);
                    (Row { fields: f, pass: true }, Vec::new())
                }
                Err(e) => (failed(keys, width, e), Vec::new()),
            }
        }
        Case::Lemma { check, n, k } => {
            let show = |x: usize| if x == 0 { String::new() } else { x.to_string() };
            let keys = vec![check.name().into(), show(n), k.to_string(), q(cfg.step)];
            match run_lemma(cfg, check, n, k) {
                Ok(o) => {
                    let pass = o.is_clean();
                    let mut f = keys;
                    f.extend([
                        o.checked.to_string(),
                        o.counterexamples.len().to_string(),
                        b(pass),
                        String::new(),
                    ]);
                    (Row { fields: f, pass }, o.counterexamples)
                }
                Err(e) => (failed(keys, width, e), Vec::new()),
            }
        }
        Case::Construct { s, t, n, k, p } => {
            let keys = vec![q(s), q(t), n.to_string(), k.to_string(), p.to_string()];
            let built = if (n, k) == (2, 1) {
                construct_2d(s, t, p)
            } else {
                construct_general(s, t, n, k, p)
            };
            match built.and_then(|f| Ok((f.branch.clone(), report(&f, cfg.upper_constant)?))) {
                Ok((branch, r)) => {
                    let pass = r.passed();
                    let mut f = keys;
                    f.extend([
                        branch,
                        r.size.to_string(),
                        q(r.target),
                        format!("{}/{}", r.ratio.numer(), r.ratio.denom()),
                        b(r.valid),
                        b(r.upper_ok),
                        b(r.lower_ok),
                        b(pass),
                        String::new(),
                    ]);
                    (Row { fields: f, pass }, Vec::new())
                }
                Err(e) => (failed(keys, width, e), Vec::new()),
            }
        }
        Case::Exceptional { a, s, n, k, p } => {
            let keys = vec![q(a), q(s), n.to_string(), k.to_string(), p.to_string()];
            match build_witness(a, s, n, k, p) {
                Ok(w) => {
                    let (row, pass) = witness_fields(&w, cfg.lower_constant);
                    let mut f = keys;
                    f.extend(row);
                    (Row { fields: f, pass }, Vec::new())
                }
                Err(e) => (failed(keys, width, e), Vec::new()),
            }
        }
        Case::Count { n, k, m, l, p } => {
            let keys = vec![n.to_string(), k.to_string(), m.to_string(), l.to_string(), p.to_string()];
            let counted = PrimeField::new(p).and_then(|field| {
                let w = LinearSubspace::coordinate(field, n, 0..m);
                count_small_projection_subspaces(&w, k, l)
            });
            match counted {
                Ok(c) => {
                    let e = Rational::from_integer(count_exponent(n, k, m, l));
                    let upper = compare_scaled_power(&c, cfg.upper_constant, p, e) != Ordering::Greater;
                    let lower = compare_scaled_power(&c, cfg.lower_constant, p, e) != Ordering::Less;
                    let pass = upper && lower;
                    let mut f = keys;
                    f.extend([c.to_string(), q(e), b(pass), String::new()]);
                    (Row { fields: f, pass }, Vec::new())
                }
                Err(e) => (failed(keys, width, e), Vec::new()),
            }
        }
    }
}

fn run_lemma(cfg: &ExperimentConfig, check: LemmaCheck, n: usize, k: usize) -> Result<CheckOutcome> {
    let mu = cfg.mutation;
    match check {
        LemmaCheck::RecursionF1 => check_recursion_f1_with(k, &GridSpec::new(cfg.step, Vec::new())?, mu),
        LemmaCheck::RecursionF2 => check_recursion_f2_with(n, k, &GridSpec::new(cfg.step, Vec::new())?, mu),
        LemmaCheck::RecursionM => check_recursion_m_with(n, k, &GridSpec::new(cfg.step, Vec::new())?, mu),
        LemmaCheck::IndexProperties => check_index_properties_with(&GridSpec::new(cfg.step, vec![(n, k)])?, mu),
        LemmaCheck::ClosedForm2d => check_closed_form_2d_with(cfg.step, mu),
    }
}

/// The planar rectangle when `(n, k) = (2, 1)` and `s` lies in `(a/2, min(1, a)]`, else the typed witness.
pub fn build_witness(a: Rational, s: Rational, n: usize, k: usize, p: u64) -> Result<ExceptionalWitness> {
    let one = Rational::from_integer(1);
    if (n, k) == (2, 1) && s > a / 2 && s <= one.min(a) {
        construct_oberlin_rectangle(a, s, p)
    } else {
        construct_marstrand_witness(a, s, n, k, p)
    }
}

fn witness_fields(w: &ExceptionalWitness, c: Rational) -> (Vec<String>, bool) {
    let (num, den) = SIZE_CONSTANT;
    let size_ok =
        compare_scaled_power(&w.set_a.cardinality(), Rational::new(num, den), w.p, w.params.a) != Ordering::Less;
    let lower_ok = certify_lower_bound(w, c);
    let disjoint = u_families_disjoint(w);
    let pass = size_ok && lower_ok && disjoint;
    let fields = vec![
        w.params.kind.number().to_string(),
        w.branch.clone(),
        w.set_a.len().to_string(),
        w.claimed_directions.len().to_string(),
        w.certified_count.to_string(),
        w.target().to_string(),
        size_ok.to_string(),
        lower_ok.to_string(),
        disjoint.to_string(),
        pass.to_string(),
        String::new(),
    ];
    (fields, pass)
}

/// Evaluate every case; rows come back in case order whatever the thread count.
pub fn run(cfg: &ExperimentConfig) -> Result<RunReport> {
    let started = Instant::now();
    let list = cases(cfg);
    let work = || -> Vec<(Row, Vec<CounterexampleReport>)> { list.par_iter().map(|c| evaluate(cfg, c)).collect() };
    let results = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Config(format!("key \"jobs\": {e}")))?
            .install(work),
        None => work(),
    };
    let mut rows = Vec::with_capacity(results.len());
    let mut counterexamples = Vec::new();
    for (row, cx) in results {
        rows.push(row);
        counterexamples.extend(cx);
    }
    Ok(RunReport {
        command: cfg.command,
        header: header(cfg.command),
        rows,
        counterexamples,
        wall_ms: started.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_config() {
        let c = parse_config(r#"{"command":"index","s":"1/2","t":"1","n":2,"k":1}"#).unwrap();
        assert_eq!(c.command, Command::Index);
        assert_eq!(c.s, vec![Rational::new(1, 2)]);
        assert_eq!(c.t, vec![Rational::from_integer(1)]);
    }

    #[test]
    fn decimal_is_rejected() {
        let e = parse_config(r#"{"command":"index","s":"0.5"}"#).unwrap_err().to_string();
        assert!(e.contains("rationals must be num/den") && e.contains("\"s\""), "{e}");
        let e = parse_config(r#"{"command":"index","s":0.5}"#).unwrap_err().to_string();
        assert!(e.contains("rationals must be num/den"), "{e}");
    }

    #[test]
    fn composite_prime_is_rejected() {
        let e = parse_config(r#"{"command":"construct","p":9}"#).unwrap_err().to_string();
        assert!(e.contains("9 is not prime"), "{e}");
    }

    #[test]
    fn unknown_key_is_named() {
        let e = parse_config(r#"{"command":"index","q":1}"#).unwrap_err().to_string();
        assert!(e.contains("\"q\""), "{e}");
    }

    #[test]
    fn index_row_value() {
        let c = parse_config(r#"{"command":"index","s":"1/2","t":"1","n":2,"k":1}"#).unwrap();
        let r = run(&c).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].fields[6], "5/4");
        assert!(r.all_passed());
    }

    #[test]
    fn count_rows_skip_bad_hypotheses() {
        let c = parse_config(r#"{"command":"count","n":2,"k":[1,2],"m":[0,1,2],"l":[0,1,2],"p":2}"#).unwrap();
        let r = run(&c).unwrap();
        assert!(r.rows.iter().all(|row| row.fields.len() == header(Command::Count).len()));
        assert!(r.all_passed(), "{:?}", r.rows);
    }
}
