//! Experiment runner: configuration, seeded censuses over `G(n, p)`, and
//! CSV/JSON emission.
//!
//! Trial `i` of every census samples its graph with seed
//! `derive_seed(master_seed, i)`, independent of the trial count, so a
//! census with more trials extends one with fewer. Records come back in
//! `(n, trial)` order regardless of how the worker pool schedules them.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, BoundRow, SweepGrid};
use crate::error::{Error, Result};
use crate::exact::{
    independence_number, is_hamiltonian, longest_path_length, max_matching_size, vertex_connectivity,
    HAMILTON_VERTEX_LIMIT, LONGEST_PATH_VERTEX_LIMIT,
};
use crate::graph::{EdgeSet, Graph};
use crate::posa::{booster_augment, extract_sparse_expander, max_expander_k, ExpanderParams, Ratio};
use crate::properties::{check_property, CheckContext, CheckMode, Mode, PropertyId, SearchOptions};
use crate::random::{derive_seed, desk_scale_d0, sample_gnp, GnpParams, SparsificationParams};
use crate::resilience::{global_resilience, Method, Property, DEFAULT_ORACLE_BUDGET};
use crate::stats::Proportion;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    ResilienceCensus,
    PropertyCensus,
    PipelineTrace,
    BoundsSweep,
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('-', "_").as_str() {
            "resilience_census" | "resilience" => Ok(ExperimentKind::ResilienceCensus),
            "property_census" | "properties" => Ok(ExperimentKind::PropertyCensus),
            "pipeline_trace" | "pipeline" => Ok(ExperimentKind::PipelineTrace),
            "bounds_sweep" | "bounds" => Ok(ExperimentKind::BoundsSweep),
            other => Err(Error::InvalidArgument(format!("unknown experiment kind {other:?}"))),
        }
    }
}

/// How `p` is chosen for each `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PRule {
    Fixed(f64),
    /// `p = (ln n + ln ln n + c) / n`
    ThresholdPlus(f64),
}

impl PRule {
    pub fn evaluate(&self, n: usize) -> Result<f64> {
        let p = match *self {
            PRule::Fixed(p) => p,
            PRule::ThresholdPlus(c) => {
                if n < 2 {
                    return Err(Error::InvalidArgument(format!("threshold rule needs n >= 2, got {n}")));
                }
                let x = n as f64;
                (x.ln() + x.ln().ln() + c) / x
            }
        };
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("p rule {self} gives p = {p} at n = {n}, outside [0, 1]")));
        }
        Ok(p)
    }
}

impl fmt::Display for PRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PRule::Fixed(p) => write!(f, "{p}"),
            PRule::ThresholdPlus(c) if *c < 0.0 => write!(f, "threshold{c}"),
            PRule::ThresholdPlus(c) => write!(f, "threshold+{c}"),
        }
    }
}

impl FromStr for PRule {
    type Err = Error;

    /// Either a number or `threshold+C` / `threshold-C`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("malformed p rule {s:?} (expected a number or threshold+C)"));
        if let Some(rest) = s.strip_prefix("threshold") {
            let c: f64 = match rest.strip_prefix('+') {
                Some(c) => c.trim().parse().map_err(|_| bad())?,
                None if rest.starts_with('-') => rest.parse().map_err(|_| bad())?,
                None if rest.is_empty() => 0.0,
                None => return Err(bad()),
            };
            if !c.is_finite() {
                return Err(bad());
            }
            return Ok(PRule::ThresholdPlus(c));
        }
        let p: f64 = s.parse().map_err(|_| bad())?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("p = {p} outside [0, 1]")));
        }
        Ok(PRule::Fixed(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?} (expected csv or json)"))),
        }
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('-', "_").as_str() {
            "hamiltonicity" | "ham" => Ok(Property::Hamiltonicity),
            "perfect_matching" | "pm" => Ok(Property::PerfectMatching),
            other => Err(Error::InvalidArgument(format!("unknown property {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n: Vec<usize>,
    pub p_rule: PRule,
    pub trials: u64,
    pub seed: u64,
    pub oracle_budget: u64,
    pub subset_budget: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    /// Resilience census target property.
    pub property: Property,
    /// Property census checkers.
    pub properties: Vec<PropertyId>,
    /// `d0 = max(3, ceil(d0_coefficient · np))` unless `d0` is set.
    pub d0_coefficient: f64,
    pub d0: Option<usize>,
    /// Pipeline: sparsification draws per trial.
    pub retries: usize,
    /// Pipeline: expander target `(k, 2)`; `None` means `ceil(n/4)`.
    pub expander_k: Option<usize>,
    /// Bounds sweep grid.
    pub bounds_n_max: u64,
    pub bounds_p_denominator: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            kind: ExperimentKind::ResilienceCensus,
            n: vec![12],
            p_rule: PRule::Fixed(0.5),
            trials: 100,
            seed: 0,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
            subset_budget: crate::posa::DEFAULT_SUBSET_BUDGET,
            out: None,
            format: OutputFormat::Csv,
            property: Property::Hamiltonicity,
            properties: PropertyId::ALL.to_vec(),
            d0_coefficient: 0.1,
            d0: None,
            retries: 20,
            expander_k: None,
            bounds_n_max: 60,
            bounds_p_denominator: 20,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{key}: cannot parse {value:?}")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_num(key, s))
        .collect()
}

impl ExperimentConfig {
    /// Sets one `key = value` entry. Keys match the CLI flag names with
    /// `-` or `_` separators.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().trim_start_matches("--").replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "kind" => self.kind = value.parse()?,
            "n" => self.n = parse_list("n", value)?,
            "p" | "p_rule" => self.p_rule = value.parse()?,
            "trials" => self.trials = parse_num(&key, value)?,
            "seed" => self.seed = parse_num(&key, value)?,
            "budget_oracle" | "oracle_budget" => self.oracle_budget = parse_num(&key, value)?,
            "budget_subsets" | "subset_budget" => self.subset_budget = parse_num(&key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            "property" => self.property = value.parse()?,
            "properties" => {
                self.properties = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(str::parse)
                    .collect::<Result<_>>()?
            }
            "d0_c" | "d0_coefficient" => self.d0_coefficient = parse_num(&key, value)?,
            "d0" => self.d0 = Some(parse_num(&key, value)?),
            "retries" => self.retries = parse_num(&key, value)?,
            "expander_k" => self.expander_k = Some(parse_num(&key, value)?),
            "bounds_n_max" => self.bounds_n_max = parse_num(&key, value)?,
            "bounds_p_denominator" => self.bounds_p_denominator = parse_num(&key, value)?,
            other => return Err(Error::InvalidArgument(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Parses a flat `key = value` file; blank lines and `#` comments are
    /// skipped.
    pub fn parse_text(text: &str, base: ExperimentConfig) -> Result<Self> {
        let mut cfg = base;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected key = value, got {line:?}"),
            })?;
            cfg.set(key, value).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_text(&text, ExperimentConfig::default())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.oracle_budget == 0 || self.subset_budget == 0 {
            return bad("budgets must be positive".into());
        }
        if self.kind == ExperimentKind::BoundsSweep {
            return self.bounds_grid().validate();
        }
        if self.n.is_empty() {
            return bad("n list is empty".into());
        }
        for &n in &self.n {
            self.p_rule.evaluate(n)?;
        }
        if !(self.d0_coefficient > 0.0 && self.d0_coefficient.is_finite()) {
            return bad(format!("d0 coefficient must be positive, got {}", self.d0_coefficient));
        }
        if self.d0 == Some(0) {
            return bad("d0 must be at least 1".into());
        }
        if self.kind == ExperimentKind::PipelineTrace && self.retries == 0 {
            return bad("retries must be at least 1".into());
        }
        if self.expander_k == Some(0) {
            return bad("expander_k must be at least 1".into());
        }
        if self.kind == ExperimentKind::PropertyCensus && self.properties.is_empty() {
            return bad("property list is empty".into());
        }
        Ok(())
    }

    pub fn bounds_grid(&self) -> SweepGrid {
        SweepGrid {
            n_max: self.bounds_n_max,
            p_denominator: self.bounds_p_denominator,
        }
    }

    fn d0_for(&self, np: f64) -> usize {
        self.d0.unwrap_or_else(|| desk_scale_d0(np, self.d0_coefficient))
    }

    /// Every `(n, p, trial)` in output order.
    fn jobs(&self) -> Result<Vec<(usize, f64, u64)>> {
        let mut out = Vec::new();
        for &n in &self.n {
            let p = self.p_rule.evaluate(n)?;
            out.extend((0..self.trials).map(|i| (n, p, i)));
        }
        Ok(out)
    }
}

/// `sparse` when `p <= n^-0.4`, else `dense`.
pub fn regime(n: usize, p: f64) -> &'static str {
    if p <= (n as f64).powf(-0.4) {
        "sparse"
    } else {
        "dense"
    }
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    BudgetExceeded,
    TooLarge,
    DomainError,
    MinDegreeBelowTwo,
    NoExpander,
}

fn status_of(e: &Error) -> Option<Status> {
    match e {
        Error::BudgetExceeded { .. } => Some(Status::BudgetExceeded),
        Error::TooLarge { .. } => Some(Status::TooLarge),
        Error::Domain(_) => Some(Status::DomainError),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResilienceRecord {
    pub trial: u64,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub regime: &'static str,
    pub property: Property,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub has_property: Option<bool>,
    pub r_g: Option<usize>,
    /// `max(0, δ-1)` for Hamiltonicity, `δ` for perfect matchings.
    pub predicted: usize,
    pub equality: Option<bool>,
    pub method: Option<Method>,
    pub oracle_calls: Option<u64>,
    pub status: Status,
    pub runtime_ms: f64,
}

impl ResilienceRecord {
    /// `r_g <= predicted` and `r_g = 0` iff the property fails.
    pub fn invariant_holds(&self) -> bool {
        match (self.r_g, self.has_property) {
            (Some(r), Some(has)) => r <= self.predicted && ((r == 0) == !has),
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResilienceSummary {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub completed: u64,
    pub budget_exceeded: u64,
    pub invariant_violations: u64,
    /// Fraction of completed trials with `r_g` equal to the prediction.
    pub equality: Proportion,
}

/// Predicted resilience: `max(0, δ-1)` for Hamiltonicity, `δ` for perfect
/// matchings.
pub fn predicted_resilience(g: &Graph, property: Property) -> usize {
    match property {
        Property::Hamiltonicity => g.min_degree().saturating_sub(1),
        Property::PerfectMatching => g.min_degree(),
    }
}

fn resilience_trial(cfg: &ExperimentConfig, n: usize, p: f64, trial: u64) -> Result<ResilienceRecord> {
    let seed = derive_seed(cfg.seed, trial);
    let g = sample_gnp(&GnpParams::new(n, p, seed)?)?;
    let start = Instant::now();
    let predicted = predicted_resilience(&g, cfg.property);
    let mut rec = ResilienceRecord {
        trial,
        seed,
        n,
        p,
        regime: regime(n, p),
        property: cfg.property,
        m: g.m(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        has_property: None,
        r_g: None,
        predicted,
        equality: None,
        method: None,
        oracle_calls: None,
        status: Status::Ok,
        runtime_ms: 0.0,
    };
    match global_resilience(&g, cfg.property, cfg.oracle_budget) {
        Ok(r) => {
            rec.has_property = Some(r.value > 0);
            rec.equality = Some(r.value == predicted);
            rec.r_g = Some(r.value);
            rec.method = Some(r.method);
            rec.oracle_calls = Some(r.oracle_calls);
        }
        Err(e) => match status_of(&e) {
            Some(s) => {
                rec.status = s;
                rec.has_property = cfg.property.holds(&g).ok();
            }
            None => return Err(e),
        },
    }
    rec.runtime_ms = elapsed_ms(start);
    Ok(rec)
}

fn summarize_resilience(cfg: &ExperimentConfig, records: &[ResilienceRecord]) -> Result<Vec<ResilienceSummary>> {
    let mut out = Vec::new();
    for &n in &cfg.n {
        let p = cfg.p_rule.evaluate(n)?;
        let rows: Vec<&ResilienceRecord> = records.iter().filter(|r| r.n == n).collect();
        let completed = rows.iter().filter(|r| r.r_g.is_some()).count() as u64;
        let equal = rows.iter().filter(|r| r.equality == Some(true)).count() as u64;
        out.push(ResilienceSummary {
            n,
            p,
            trials: rows.len() as u64,
            completed,
            budget_exceeded: rows.iter().filter(|r| r.status == Status::BudgetExceeded).count() as u64,
            invariant_violations: rows.iter().filter(|r| !r.invariant_holds()).count() as u64,
            equality: Proportion::new(equal, completed),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct Census<R, S> {
    pub records: Vec<R>,
    pub summary: S,
}

/// Exact resilience of every sampled graph. Per-trial budget or size
/// errors become marker rows and never abort the census.
pub fn run_resilience_census(cfg: &ExperimentConfig) -> Result<Census<ResilienceRecord, Vec<ResilienceSummary>>> {
    cfg.validate()?;
    let records = cfg
        .jobs()?
        .into_par_iter()
        .map(|(n, p, i)| resilience_trial(cfg, n, p, i))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize_resilience(cfg, &records)?;
    Ok(Census { records, summary })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyRecord {
    pub trial: u64,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub regime: &'static str,
    pub d0: usize,
    pub property: PropertyId,
    pub holds: Option<bool>,
    pub mode: Option<Mode>,
    pub vacuous: Option<bool>,
    pub samples_checked: Option<u64>,
    pub status: Status,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertySummary {
    pub n: usize,
    pub p: f64,
    pub property: PropertyId,
    pub checked: u64,
    pub errors: u64,
    pub sampled: u64,
    pub vacuous: u64,
    pub holds: Proportion,
}

fn check_context(cfg: &ExperimentConfig, n: usize, p: f64, search_seed: u64) -> CheckContext {
    let np = n as f64 * p;
    CheckContext {
        np,
        d0: cfg.d0_for(np),
        search: SearchOptions {
            mode: CheckMode::Auto,
            subset_budget: cfg.subset_budget,
            seed: search_seed,
            ..SearchOptions::default()
        },
    }
}

fn property_trial(cfg: &ExperimentConfig, n: usize, p: f64, trial: u64) -> Result<Vec<PropertyRecord>> {
    let seed = derive_seed(cfg.seed, trial);
    let g = sample_gnp(&GnpParams::new(n, p, seed)?)?;
    let ctx = check_context(cfg, n, p, derive_seed(cfg.seed, trial));
    let mut out = Vec::with_capacity(cfg.properties.len());
    for &id in &cfg.properties {
        let start = Instant::now();
        let mut rec = PropertyRecord {
            trial,
            seed,
            n,
            p,
            regime: regime(n, p),
            d0: ctx.d0,
            property: id,
            holds: None,
            mode: None,
            vacuous: None,
            samples_checked: None,
            status: Status::Ok,
            runtime_ms: 0.0,
        };
        match check_property(id, &g, &ctx) {
            Ok(r) => {
                rec.holds = Some(r.holds);
                rec.mode = Some(r.mode);
                rec.vacuous = Some(r.vacuous);
                rec.samples_checked = Some(r.samples_checked);
            }
            Err(e) => rec.status = status_of(&e).ok_or(e)?,
        }
        rec.runtime_ms = elapsed_ms(start);
        out.push(rec);
    }
    Ok(out)
}

/// Every configured checker on every sampled graph, with per-`(n, property)`
/// success fractions. Matches `estimate_probability` trial for trial.
pub fn run_property_census(cfg: &ExperimentConfig) -> Result<Census<PropertyRecord, Vec<PropertySummary>>> {
    cfg.validate()?;
    let per_trial = cfg
        .jobs()?
        .into_par_iter()
        .map(|(n, p, i)| property_trial(cfg, n, p, i))
        .collect::<Result<Vec<_>>>()?;
    let records: Vec<PropertyRecord> = per_trial.into_iter().flatten().collect();
    let mut summary = Vec::new();
    for &n in &cfg.n {
        let p = cfg.p_rule.evaluate(n)?;
        for &id in &cfg.properties {
            let rows: Vec<&PropertyRecord> = records.iter().filter(|r| r.n == n && r.property == id).collect();
            let checked = rows.iter().filter(|r| r.holds.is_some()).count() as u64;
            let held = rows.iter().filter(|r| r.holds == Some(true)).count() as u64;
            summary.push(PropertySummary {
                n,
                p,
                property: id,
                checked,
                errors: rows.len() as u64 - checked,
                sampled: rows.iter().filter(|r| r.mode == Some(Mode::Sampled)).count() as u64,
                vacuous: rows.iter().filter(|r| r.vacuous == Some(true)).count() as u64,
                holds: Proportion::new(held, checked),
            });
        }
    }
    Ok(Census { records, summary })
}

/// `δ(G) - 2` edges at the lowest-labeled minimum-degree vertex: all but
/// the edges to its two lowest-labeled neighbours.
pub fn pipeline_removal_set(g: &Graph) -> Result<EdgeSet> {
    let v = g
        .min_degree_vertex()
        .ok_or_else(|| Error::InvalidArgument("graph has no vertices".into()))?;
    if g.degree(v) < 2 {
        return Err(Error::InvalidArgument("removal set needs δ(G) >= 2".into()));
    }
    EdgeSet::from_pairs(g.neighbors(v).iter().skip(2).map(|w| (v, w)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineRecord {
    pub trial: u64,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub m: usize,
    pub min_degree: usize,
    pub h_edges: usize,
    pub d0: usize,
    pub expander_k: usize,
    pub gamma0_edges: Option<usize>,
    pub initial_longest_path: Option<usize>,
    pub booster_steps: Option<usize>,
    /// Longest path lengths after each booster, `>`-separated.
    pub path_trace: String,
    pub final_edges: Option<usize>,
    pub cycle_found: bool,
    pub cycle_valid: bool,
    /// Exact verdict on `G \ H`, when within solver limits.
    pub exact_hamiltonian: Option<bool>,
    pub status: Status,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineSummary {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub cycles: Proportion,
    pub invalid_cycles: u64,
    /// Trials where the pipeline failed although `G \ H` is Hamiltonian.
    pub missed: u64,
}

/// Settings for one pipeline run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineSettings {
    pub d0: usize,
    pub expander_k: usize,
    pub retries: usize,
    pub subset_budget: u64,
    pub seed: u64,
}

/// The sparse-regime pipeline on one graph: `H` from
/// [`pipeline_removal_set`], a sparse `(k, 2)`-expander of `G \ H`, then
/// booster augmentation.
pub fn run_pipeline_once(g: &Graph, settings: &PipelineSettings) -> Result<PipelineRecord> {
    let start = Instant::now();
    let mut rec = PipelineRecord {
        trial: 0,
        seed: settings.seed,
        n: g.n(),
        p: f64::NAN,
        m: g.m(),
        min_degree: g.min_degree(),
        h_edges: 0,
        d0: settings.d0,
        expander_k: settings.expander_k,
        gamma0_edges: None,
        initial_longest_path: None,
        booster_steps: None,
        path_trace: String::new(),
        final_edges: None,
        cycle_found: false,
        cycle_valid: false,
        exact_hamiltonian: None,
        status: Status::Ok,
        runtime_ms: 0.0,
    };
    if g.min_degree() < 2 {
        rec.status = Status::MinDegreeBelowTwo;
        rec.exact_hamiltonian = Some(false);
        rec.runtime_ms = elapsed_ms(start);
        return Ok(rec);
    }
    let h = pipeline_removal_set(g)?;
    rec.h_edges = h.len();
    let base = g.remove_edges(&h)?;
    if base.n() <= HAMILTON_VERTEX_LIMIT {
        rec.exact_hamiltonian = Some(is_hamiltonian(&base)?.is_some());
    }
    let target = ExpanderParams::new(settings.expander_k, Ratio::integer(2)?)?;
    let sparsify = SparsificationParams::new(settings.d0, settings.seed)?;
    let gamma0 = match extract_sparse_expander(g, &h, &sparsify, &target, settings.retries, settings.subset_budget) {
        Ok(Some(gamma0)) => gamma0,
        Ok(None) => {
            rec.status = Status::NoExpander;
            rec.runtime_ms = elapsed_ms(start);
            return Ok(rec);
        }
        Err(e) => {
            rec.status = status_of(&e).ok_or(e)?;
            rec.runtime_ms = elapsed_ms(start);
            return Ok(rec);
        }
    };
    rec.gamma0_edges = Some(gamma0.m());
    match booster_augment(g, &h, &gamma0, g.n()) {
        Ok(out) => {
            rec.initial_longest_path = Some(out.initial_longest_path);
            rec.booster_steps = Some(out.steps.len());
            rec.path_trace = std::iter::once(out.initial_longest_path)
                .chain(out.steps.iter().map(|s| s.longest_path_after))
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(">");
            rec.final_edges = Some(out.graph.m());
            if let Some(cycle) = out.cycle {
                rec.cycle_found = true;
                rec.cycle_valid = cycle.validate(&base);
            }
        }
        Err(e) => rec.status = status_of(&e).ok_or(e)?,
    }
    rec.runtime_ms = elapsed_ms(start);
    Ok(rec)
}

fn pipeline_trial(cfg: &ExperimentConfig, n: usize, p: f64, trial: u64) -> Result<PipelineRecord> {
    let seed = derive_seed(cfg.seed, trial);
    let g = sample_gnp(&GnpParams::new(n, p, seed)?)?;
    let settings = PipelineSettings {
        d0: cfg.d0_for(n as f64 * p),
        expander_k: cfg.expander_k.unwrap_or(n.div_ceil(4)).max(1),
        retries: cfg.retries,
        subset_budget: cfg.subset_budget,
        seed,
    };
    let mut rec = run_pipeline_once(&g, &settings)?;
    rec.trial = trial;
    rec.p = p;
    Ok(rec)
}

/// The sparse pipeline on every sampled graph, cross-checked against the
/// exact Hamiltonicity of `G \ H`.
pub fn run_pipeline_trace(cfg: &ExperimentConfig) -> Result<Census<PipelineRecord, Vec<PipelineSummary>>> {
    cfg.validate()?;
    // trials stay sequential: expander extraction already fans out its draws
    let records = cfg
        .jobs()?
        .into_iter()
        .map(|(n, p, i)| pipeline_trial(cfg, n, p, i))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = Vec::new();
    for &n in &cfg.n {
        let p = cfg.p_rule.evaluate(n)?;
        let rows: Vec<&PipelineRecord> = records.iter().filter(|r| r.n == n).collect();
        let ok = rows.iter().filter(|r| r.cycle_found && r.cycle_valid).count() as u64;
        summary.push(PipelineSummary {
            n,
            p,
            trials: rows.len() as u64,
            cycles: Proportion::new(ok, rows.len() as u64),
            invalid_cycles: rows.iter().filter(|r| r.cycle_found && !r.cycle_valid).count() as u64,
            missed: rows
                .iter()
                .filter(|r| !r.cycle_found && r.exact_hamiltonian == Some(true))
                .count() as u64,
        });
    }
    Ok(Census { records, summary })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsSummary {
    pub checks: u64,
    pub violations: u64,
}

/// Every tail-bound check on the configured grid.
pub fn run_bounds_sweep(cfg: &ExperimentConfig) -> Result<Census<BoundRow, BoundsSummary>> {
    cfg.validate()?;
    let checks = bounds::sweep(&cfg.bounds_grid())?;
    let records: Vec<BoundRow> = checks.par_iter().map(|c| c.row()).collect();
    let violations = records.iter().filter(|r| !r.holds).count() as u64;
    Ok(Census {
        summary: BoundsSummary {
            checks: records.len() as u64,
            violations,
        },
        records,
    })
}

/// Per-graph statistics for the `analyze` command. Expensive invariants
/// are `None` when the graph exceeds the solver's limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphAnalysis {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub connected: bool,
    pub components: usize,
    pub hamiltonian: Option<bool>,
    pub hamilton_cycle: Option<Vec<usize>>,
    pub longest_path: Option<usize>,
    pub max_matching: usize,
    pub independence_number: Option<usize>,
    pub vertex_connectivity: usize,
    pub chvatal_erdos: Option<bool>,
    pub max_expander_k: Option<usize>,
}

pub fn analyze_graph(g: &Graph, subset_budget: u64) -> Result<GraphAnalysis> {
    let ham = if g.n() <= HAMILTON_VERTEX_LIMIT {
        Some(is_hamiltonian(g)?)
    } else {
        None
    };
    let alpha = independence_number(g).ok();
    let kappa = vertex_connectivity(g);
    Ok(GraphAnalysis {
        n: g.n(),
        m: g.m(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        connected: g.is_connected(),
        components: g.components().len(),
        hamiltonian: ham.as_ref().map(|w| w.is_some()),
        hamilton_cycle: ham.flatten().map(|w| w.order),
        longest_path: if g.n() <= LONGEST_PATH_VERTEX_LIMIT {
            Some(longest_path_length(g)?)
        } else {
            None
        },
        max_matching: max_matching_size(g),
        independence_number: alpha,
        vertex_connectivity: kappa,
        chvatal_erdos: alpha.map(|a| a < kappa),
        max_expander_k: (g.n() <= 64).then(|| max_expander_k(g, Ratio::integer(2).expect("positive"), subset_budget)),
    })
}

/// Writes records as CSV with a header row.
pub fn write_csv<T: Serialize, W: Write>(records: &[T], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in records {
        out.serialize(r).map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidArgument(format!("csv serialization: {other:?}")),
    }
}

#[derive(Serialize)]
struct Sidecar<'a, S: Serialize> {
    version: &'static str,
    config: &'a ExperimentConfig,
    summary: &'a S,
}

#[derive(Serialize)]
struct JsonOutput<'a, R: Serialize, S: Serialize> {
    version: &'static str,
    config: &'a ExperimentConfig,
    summary: &'a S,
    records: &'a [R],
}

/// Path of the JSON sidecar written next to a CSV output.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Emits a census: CSV plus a JSON sidecar (config, version, summary), or
/// a single JSON document. Without an output path, writes to `stdout`.
pub fn emit<R: Serialize, S: Serialize>(
    cfg: &ExperimentConfig,
    census: &Census<R, S>,
    stdout: &mut dyn Write,
) -> Result<()> {
    match (&cfg.out, cfg.format) {
        (Some(path), OutputFormat::Csv) => {
            write_csv(&census.records, BufWriter::new(File::create(path)?))?;
            let sidecar = Sidecar {
                version: VERSION,
                config: cfg,
                summary: &census.summary,
            };
            let f = BufWriter::new(File::create(sidecar_path(path))?);
            serde_json::to_writer_pretty(f, &sidecar).map_err(|e| Error::Io(e.into()))?;
        }
        (None, OutputFormat::Csv) => write_csv(&census.records, &mut *stdout)?,
        (out, OutputFormat::Json) => {
            let doc = JsonOutput {
                version: VERSION,
                config: cfg,
                summary: &census.summary,
                records: &census.records,
            };
            let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Io(e.into()))?;
            match out {
                Some(path) => std::fs::write(path, text + "\n")?,
                None => writeln!(stdout, "{text}")?,
            }
        }
    }
    Ok(())
}

/// Reads an edge-list graph from a file, or `stdin` for `-`.
pub fn read_graph(path: &Path) -> Result<Graph> {
    if path.as_os_str() == "-" {
        Graph::read_edge_list(std::io::stdin().lock())
    } else {
        Graph::read_edge_list(BufReader::new(File::open(path)?))
    }
}

/// Reads a `key = value` config file when given, else the defaults.
pub fn load_config(path: Option<&Path>) -> Result<ExperimentConfig> {
    match path {
        Some(p) => {
            let reader = BufReader::new(File::open(p)?);
            let text: String = reader.lines().collect::<std::io::Result<Vec<_>>>()?.join("\n");
            ExperimentConfig::parse_text(&text, ExperimentConfig::default())
        }
        None => Ok(ExperimentConfig::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_rules() {
        assert_eq!("0.25".parse::<PRule>().unwrap(), PRule::Fixed(0.25));
        assert_eq!("threshold+4".parse::<PRule>().unwrap(), PRule::ThresholdPlus(4.0));
        assert_eq!("threshold-1.5".parse::<PRule>().unwrap(), PRule::ThresholdPlus(-1.5));
        assert!("threshold*2".parse::<PRule>().is_err());
        assert!("1.5".parse::<PRule>().is_err());
        assert!("bogus".parse::<PRule>().is_err());
        let p = PRule::ThresholdPlus(4.0).evaluate(16).unwrap();
        let want = (16f64.ln() + 16f64.ln().ln() + 4.0) / 16.0;
        assert!((p - want).abs() < 1e-15);
        assert!(PRule::ThresholdPlus(100.0).evaluate(16).is_err());
    }

    #[test]
    fn config_file_and_overrides() {
        let text = "# census\nkind = resilience_census\nn = 8, 10\np = threshold+2\ntrials = 5\nseed = 7\n";
        let mut cfg = ExperimentConfig::parse_text(text, ExperimentConfig::default()).unwrap();
        assert_eq!(cfg.n, vec![8, 10]);
        assert_eq!(cfg.trials, 5);
        cfg.set("--trials", "9").unwrap();
        assert_eq!(cfg.trials, 9);
        cfg.validate().unwrap();

        let err = ExperimentConfig::parse_text("trials\n", ExperimentConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let mut cfg = ExperimentConfig::default();
        cfg.set("trials", "0").unwrap();
        assert!(cfg.validate().is_err());
        assert!(cfg.set("frobnicate", "1").is_err());
    }

    #[test]
    fn complete_graph_census_row() {
        let cfg = ExperimentConfig {
            n: vec![7],
            p_rule: PRule::Fixed(1.0),
            trials: 1,
            ..ExperimentConfig::default()
        };
        let census = run_resilience_census(&cfg).unwrap();
        let row = &census.records[0];
        assert_eq!(row.r_g, Some(5));
        assert_eq!(row.equality, Some(true));
        assert!(row.invariant_holds());
        assert_eq!(census.summary[0].equality.fraction, 1.0);
    }

    #[test]
    fn census_is_deterministic_and_prefix_stable() {
        let mut cfg = ExperimentConfig {
            n: vec![9],
            p_rule: PRule::Fixed(0.5),
            trials: 6,
            seed: 11,
            ..ExperimentConfig::default()
        };
        let strip = |c: &Census<ResilienceRecord, Vec<ResilienceSummary>>| {
            c.records
                .iter()
                .map(|r| ResilienceRecord { runtime_ms: 0.0, ..r.clone() })
                .collect::<Vec<_>>()
        };
        let a = strip(&run_resilience_census(&cfg).unwrap());
        let b = strip(&run_resilience_census(&cfg).unwrap());
        assert_eq!(a, b);
        cfg.trials = 3;
        let c = strip(&run_resilience_census(&cfg).unwrap());
        assert_eq!(&a[..3], &c[..]);
    }

    #[test]
    fn pipeline_on_cycle_with_spanning_path() {
        // C_8 with H = ∅ from a spanning path: one booster closes the cycle
        let c8 = Graph::cycle(8);
        let path = c8.remove_edges(&EdgeSet::from_pairs([(0, 7)]).unwrap()).unwrap();
        let out = booster_augment(&c8, &EdgeSet::new(), &path, 8).unwrap();
        assert_eq!(out.steps.len(), 1);
        assert!(out.cycle.unwrap().validate(&c8));
    }

    #[test]
    fn removal_set_size() {
        let g = Graph::complete(6);
        let h = pipeline_removal_set(&g).unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(g.remove_edges(&h).unwrap().degree(0), 2);
        assert!(pipeline_removal_set(&Graph::path(4)).is_err());
    }

    #[test]
    fn pipeline_trace_runs() {
        let cfg = ExperimentConfig {
            kind: ExperimentKind::PipelineTrace,
            n: vec![10],
            p_rule: PRule::Fixed(0.7),
            trials: 3,
            d0: Some(6),
            ..ExperimentConfig::default()
        };
        let census = run_pipeline_trace(&cfg).unwrap();
        assert_eq!(census.records.len(), 3);
        for r in &census.records {
            if r.cycle_found {
                assert!(r.cycle_valid);
                assert_eq!(r.exact_hamiltonian, Some(true));
            }
        }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let cfg = ExperimentConfig {
            kind: ExperimentKind::BoundsSweep,
            bounds_n_max: 3,
            bounds_p_denominator: 2,
            ..ExperimentConfig::default()
        };
        let census = run_bounds_sweep(&cfg).unwrap();
        assert_eq!(census.summary.violations, 0);
        let mut buf = Vec::new();
        emit(&cfg, &census, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("inequality,n,k,l,p,lhs,rhs,holds\n"));
        assert_eq!(text.lines().count() as u64, census.summary.checks + 1);
    }

    #[test]
    fn property_census_summary_matches_rows() {
        let cfg = ExperimentConfig {
            kind: ExperimentKind::PropertyCensus,
            n: vec![20],
            p_rule: PRule::Fixed(0.5),
            trials: 4,
            properties: vec![PropertyId::P1, PropertyId::Q1],
            ..ExperimentConfig::default()
        };
        let census = run_property_census(&cfg).unwrap();
        assert_eq!(census.records.len(), 8);
        for s in &census.summary {
            let held = census
                .records
                .iter()
                .filter(|r| r.property == s.property && r.holds == Some(true))
                .count() as u64;
            assert_eq!(s.holds.successes, held);
        }
    }
}
