//! Experiment configuration and its flat `key = value` file format.
//!
//! Keys match the long command-line flags without the leading dashes:
//!
//! ```text
//! # paired comparison on the ZDT family
//! name = zdt
//! problem = zdt1, zdt2, zdt3
//! mode = both
//! runs = 20
//! gens = 600
//! seed = 7
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use moea_core::benchmarks::DEFAULT_FRONT_COUNT;
use moea_core::{CrowdingMode, IndicatorConfig, ProblemKind, VariationConfig};

use crate::error::{HarnessError, Result};

/// Environment variable that overrides the default output root.
pub const OUTPUT_ENV: &str = "MOEA_BENCH_DIR";

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub problems: Vec<ProblemKind>,
    pub modes: Vec<CrowdingMode>,
    pub runs: usize,
    pub pop: usize,
    pub generations: usize,
    pub base_seed: u64,
    pub variation: VariationConfig,
    pub indicators: IndicatorConfig,
    pub front_count: usize,
    pub out_dir: PathBuf,
    pub jobs: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            name: "experiment".to_string(),
            problems: ProblemKind::ALL.to_vec(),
            modes: CrowdingMode::BOTH.to_vec(),
            runs: 50,
            pop: 50,
            generations: 600,
            base_seed: 1,
            variation: VariationConfig::default(),
            indicators: IndicatorConfig::default(),
            front_count: DEFAULT_FRONT_COUNT,
            out_dir: default_output_root(),
            jobs: default_jobs(),
        }
    }
}

pub fn default_output_root() -> PathBuf {
    std::env::var_os(OUTPUT_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| HarnessError::Config(format!("{key} = {value}: {e}")))
}

pub fn parse_problems(value: &str) -> Result<Vec<ProblemKind>> {
    if value.trim().eq_ignore_ascii_case("all") {
        return Ok(ProblemKind::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let kind: ProblemKind = part.parse()?;
        if !out.contains(&kind) {
            out.push(kind);
        }
    }
    if out.is_empty() {
        return Err(HarnessError::Config("no problem selected".into()));
    }
    Ok(out)
}

pub fn parse_modes(value: &str) -> Result<Vec<CrowdingMode>> {
    match value.trim().to_ascii_lowercase().as_str() {
        "both" => Ok(CrowdingMode::BOTH.to_vec()),
        other => Ok(vec![other.parse()?]),
    }
}

fn modes_key(modes: &[CrowdingMode]) -> &'static str {
    match modes {
        [CrowdingMode::Initial] => "initial",
        [CrowdingMode::Improved] => "improved",
        _ => "both",
    }
}

impl ExperimentConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "name" => self.name = value.to_string(),
            "problem" => self.problems = parse_problems(value)?,
            "mode" => self.modes = parse_modes(value)?,
            "runs" => self.runs = parse_num(key, value)?,
            "pop" => self.pop = parse_num(key, value)?,
            "gens" => self.generations = parse_num(key, value)?,
            "seed" => self.base_seed = parse_num(key, value)?,
            "eta-m" => self.variation.eta_m = parse_num(key, value)?,
            "pc" => self.variation.p_crossover = parse_num(key, value)?,
            "pm" => self.variation.p_mutation = parse_num(key, value)?,
            "q" => self.indicators.q = parse_num(key, value)?,
            "sigma-fraction" => self.indicators.sigma_fraction = parse_num(key, value)?,
            "front-count" => self.front_count = parse_num(key, value)?,
            "out" => self.out_dir = PathBuf::from(value),
            "jobs" => self.jobs = parse_num(key, value)?,
            other => return Err(HarnessError::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Apply every setting of a config file's text.
    pub fn apply_text(&mut self, path: &Path, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| HarnessError::Malformed {
                path: path.to_path_buf(),
                message: format!("line {}: expected `key = value`", lineno + 1),
            })?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        self.apply_text(path, &text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(HarnessError::Config(format!(
                "experiment name `{}` must be a plain file name",
                self.name
            )));
        }
        if self.runs < 1 {
            return Err(HarnessError::Config("runs must be at least 1".into()));
        }
        if self.pop < 4 {
            return Err(HarnessError::Config("pop must be at least 4".into()));
        }
        if self.generations < 1 {
            return Err(HarnessError::Config("gens must be at least 1".into()));
        }
        if self.front_count < 2 {
            return Err(HarnessError::Config("front-count must be at least 2".into()));
        }
        if self.jobs < 1 {
            return Err(HarnessError::Config("jobs must be at least 1".into()));
        }
        if self.problems.is_empty() || self.modes.is_empty() {
            return Err(HarnessError::Config("select at least one problem and mode".into()));
        }
        self.variation.validate()?;
        self.indicators.validate()?;
        Ok(())
    }

    /// Every setting that influences the records, in config-file syntax.
    /// Output location and parallelism are left out.
    pub fn snapshot(&self) -> String {
        let problems: Vec<&str> = self.problems.iter().map(|p| p.slug()).collect();
        let mut s = String::new();
        writeln!(s, "name = {}", self.name).unwrap();
        writeln!(s, "problem = {}", problems.join(", ")).unwrap();
        writeln!(s, "mode = {}", modes_key(&self.modes)).unwrap();
        writeln!(s, "runs = {}", self.runs).unwrap();
        writeln!(s, "pop = {}", self.pop).unwrap();
        writeln!(s, "gens = {}", self.generations).unwrap();
        writeln!(s, "seed = {}", self.base_seed).unwrap();
        writeln!(s, "eta-m = {}", self.variation.eta_m).unwrap();
        writeln!(s, "pc = {}", self.variation.p_crossover).unwrap();
        writeln!(s, "pm = {}", self.variation.p_mutation).unwrap();
        writeln!(s, "q = {}", self.indicators.q).unwrap();
        writeln!(s, "sigma-fraction = {}", self.indicators.sigma_fraction).unwrap();
        writeln!(s, "front-count = {}", self.front_count).unwrap();
        s
    }
}
