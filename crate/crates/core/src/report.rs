//! Run configuration and reports for the verification suites.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::operad::{AxiomCheck, CheckMode, DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_SEED};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?} (text, json, csv)"))),
        }
    }
}

/// Parameters of one suite run. Suite-specific parameters left unset take
/// the suite's defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub suite: String,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub max_arity: Option<usize>,
    pub target: Option<String>,
    pub monoid: Option<String>,
    pub z2set: Option<String>,
    pub case: Option<String>,
    pub samples: Option<u64>,
    pub seed: u64,
    pub exhaustive_limit: u64,
    pub simplex_budget: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn new(suite: &str) -> RunConfig {
        RunConfig {
            suite: suite.to_string(),
            family: None,
            n: None,
            k: None,
            m: None,
            max_arity: None,
            target: None,
            monoid: None,
            z2set: None,
            case: None,
            samples: None,
            seed: DEFAULT_SEED,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            simplex_budget: crate::complex::DEFAULT_SIMPLEX_BUDGET,
            format: Format::Text,
        }
    }

    /// Sets one parameter from its textual form. Keys match the CLI flags,
    /// with `-` or `_` accepted.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let int = |v: &str| -> Result<u64> {
            let v = v.trim().replace('_', "");
            let parsed = match v.strip_prefix("0x").or_else(|| v.strip_prefix("0X")) {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => v.parse(),
            };
            parsed.map_err(|_| Error::Parse(format!("{key} = {v:?} is not a non-negative integer")))
        };
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "suite" => self.suite = value.to_string(),
            "family" => self.family = Some(value.to_string()),
            "n" => self.n = Some(int(value)? as usize),
            "k" => self.k = Some(int(value)? as usize),
            "m" => self.m = Some(int(value)? as usize),
            "max_arity" => self.max_arity = Some(int(value)? as usize),
            "target" => self.target = Some(value.to_string()),
            "monoid" => self.monoid = Some(value.to_string()),
            "z2set" => self.z2set = Some(value.to_string()),
            "case" => self.case = Some(value.to_string()),
            "samples" => self.samples = Some(int(value)?),
            "seed" => self.seed = int(value)?,
            "exhaustive_limit" => self.exhaustive_limit = int(value)?,
            "simplex_budget" => self.simplex_budget = int(value)?,
            "format" => self.format = value.parse()?,
            other => return Err(Error::Parse(format!("unknown configuration key {other:?}"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_config_str(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", no + 1)))?;
            self.set(key, value.trim().trim_matches('"'))?;
        }
        Ok(())
    }

    pub fn apply_config_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.apply_config_str(&text)
    }

    /// The parameters that were set, for the report header.
    pub fn params(&self) -> BTreeMap<String, Value> {
        let mut out = BTreeMap::new();
        let mut put = |k: &str, v: Value| {
            out.insert(k.to_string(), v);
        };
        macro_rules! opt {
            ($field:ident) => {
                if let Some(v) = &self.$field {
                    put(stringify!($field), serde_json::json!(v));
                }
            };
        }
        opt!(family);
        opt!(n);
        opt!(k);
        opt!(m);
        opt!(max_arity);
        opt!(target);
        opt!(monoid);
        opt!(z2set);
        opt!(case);
        opt!(samples);
        put("seed", serde_json::json!(self.seed));
        put("exhaustive_limit", serde_json::json!(self.exhaustive_limit));
        put("simplex_budget", serde_json::json!(self.simplex_budget));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

/// One check in a report. Checks that are not `required` document
/// expected failures (a counterexample) or extra observations; they do not
/// affect the exit status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<CheckMode>,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, ok: bool) -> CheckResult {
        CheckResult {
            name: name.into(),
            status: Status::of(ok),
            required: true,
            mode: None,
            cases: 1,
            detail: None,
            witness: None,
        }
    }

    pub fn optional(mut self) -> Self {
        self.required = false;
        self
    }

    pub fn cases(mut self, cases: u64) -> Self {
        self.cases = cases;
        self
    }

    pub fn mode(mut self, mode: CheckMode) -> Self {
        self.mode = Some(mode);
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    pub fn witness_if(self, cond: bool, w: impl FnOnce() -> String) -> Self {
        if cond {
            self.witness(w())
        } else {
            self
        }
    }

    pub fn witness_opt(mut self, w: Option<String>) -> Self {
        if w.is_some() {
            self.witness = w;
        }
        self
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> CheckResult {
        CheckResult {
            status: Status::Skipped,
            cases: 0,
            ..CheckResult::new(name, true).detail(why)
        }
    }

    pub fn failed(&self) -> bool {
        self.required && self.status == Status::Fail
    }
}

impl From<AxiomCheck> for CheckResult {
    fn from(c: AxiomCheck) -> CheckResult {
        CheckResult {
            name: c.name,
            status: Status::of(c.passed),
            required: true,
            mode: Some(c.mode),
            cases: c.cases,
            detail: None,
            witness: c.witness,
        }
    }
}

/// A table for CSV output, e.g. Betti numbers by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub tool_version: String,
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub checks: Vec<CheckResult>,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(cfg: &RunConfig) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            suite: cfg.suite.clone(),
            params: cfg.params(),
            status: Status::Pass,
            checks: Vec::new(),
            data: Value::Object(Default::default()),
            table: None,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
        self.refresh_status();
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckResult>) {
        self.checks.extend(checks);
        self.refresh_status();
    }

    pub fn set_data(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.data {
            map.insert(key.to_string(), value);
        }
    }

    fn refresh_status(&mut self) {
        self.status = Status::of(!self.checks.iter().any(CheckResult::failed));
    }

    /// True iff every required check passed or was skipped.
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// JSON with the timing fields cleared, for reproducibility checks.
    pub fn to_json_without_timings(&self) -> String {
        let mut r = self.clone();
        r.timings_ms.clear();
        r.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{} {} | suite {} | {}", self.tool, self.tool_version, self.suite, params.join(" "));
        for c in &self.checks {
            let mode = match c.mode {
                Some(CheckMode::Exhaustive) => "exhaustive".to_string(),
                Some(CheckMode::Sampled { samples, seed }) => format!("sampled {samples}, seed {seed:#x}"),
                None => String::new(),
            };
            let tag = if c.required { "" } else { " (informational)" };
            let _ = write!(out, "{} {}{tag}: {} cases", c.status.label(), c.name, c.cases);
            if !mode.is_empty() {
                let _ = write!(out, " [{mode}]");
            }
            let _ = writeln!(out);
            if let Some(d) = &c.detail {
                let _ = writeln!(out, "    {d}");
            }
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "    witness: {w}");
            }
        }
        if let Some(t) = &self.table {
            let _ = writeln!(out, "{}", t.columns.join("\t"));
            for row in &t.rows {
                let _ = writeln!(out, "{}", row.join("\t"));
            }
        }
        let _ = writeln!(out, "{}", if self.passed() { "RESULT pass" } else { "RESULT fail" });
        out
    }

    /// The table if the suite produced one, else one row per check.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        match &self.table {
            Some(t) => {
                w.write_record(&t.columns).map_err(io)?;
                for row in &t.rows {
                    w.write_record(row).map_err(io)?;
                }
            }
            None => {
                w.write_record(["check", "status", "required", "cases", "witness"]).map_err(io)?;
                for c in &self.checks {
                    let status = format!("{:?}", c.status).to_lowercase();
                    w.write_record([
                        c.name.as_str(),
                        status.as_str(),
                        if c.required { "true" } else { "false" },
                        c.cases.to_string().as_str(),
                        c.witness.as_deref().unwrap_or(""),
                    ])
                    .map_err(io)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Json => Ok(self.to_json() + "\n"),
            Format::Csv => self.to_csv(),
        }
    }
}
