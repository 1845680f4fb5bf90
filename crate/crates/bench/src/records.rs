//! Run and pair records and their CSV files.
//!
//! Three files per experiment live under `results/`:
//!
//! | file                  | columns                                              |
//! |-----------------------|------------------------------------------------------|
//! | `<name>.csv`          | problem, mode, run, seed, eta_m, gd, sp, m2star      |
//! | `<name>.pairs.csv`    | problem, run, c_initial_improved, c_improved_initial |
//! | `<name>.timing.csv`   | problem, mode, run, duration_ms                      |
//!
//! Reals are written as `{:.16e}`, which round-trips exactly. Wall-clock
//! durations sit in their own file so that the record files depend only on
//! the configuration.

use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use moea_core::pointfile::format_value;
use moea_core::{CrowdingMode, ProblemKind};

use crate::error::{HarnessError, Result};

pub const RUN_HEADER: [&str; 8] = ["problem", "mode", "run", "seed", "eta_m", "gd", "sp", "m2star"];
pub const PAIR_HEADER: [&str; 4] = ["problem", "run", "c_initial_improved", "c_improved_initial"];
pub const TIMING_HEADER: [&str; 4] = ["problem", "mode", "run", "duration_ms"];

/// Indicator values of one run's final non-dominated set.
///
/// `sp` and `m2star` are NaN when the set has a single member.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub problem: ProblemKind,
    pub mode: CrowdingMode,
    pub run: usize,
    pub seed: u64,
    pub eta_m: f64,
    pub gd: f64,
    pub sp: f64,
    pub m2star: f64,
}

/// Coverage in both directions between the two modes' sets of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedRecord {
    pub problem: ProblemKind,
    pub run: usize,
    pub c_initial_improved: f64,
    pub c_improved_initial: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingRecord {
    pub problem: ProblemKind,
    pub mode: CrowdingMode,
    pub run: usize,
    pub duration_ms: u128,
}

impl RunRecord {
    pub fn key(&self) -> (ProblemKind, CrowdingMode, usize) {
        (self.problem, self.mode, self.run)
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.problem.slug().to_string(),
            self.mode.to_string(),
            self.run.to_string(),
            self.seed.to_string(),
            format_value(self.eta_m),
            format_value(self.gd),
            format_value(self.sp),
            format_value(self.m2star),
        ]
    }
}

impl PairedRecord {
    pub fn key(&self) -> (ProblemKind, usize) {
        (self.problem, self.run)
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.problem.slug().to_string(),
            self.run.to_string(),
            format_value(self.c_initial_improved),
            format_value(self.c_improved_initial),
        ]
    }
}

impl TimingRecord {
    fn row(&self) -> Vec<String> {
        vec![
            self.problem.slug().to_string(),
            self.mode.to_string(),
            self.run.to_string(),
            self.duration_ms.to_string(),
        ]
    }
}

/// Paths of one experiment's files under an output root.
#[derive(Debug, Clone)]
pub struct Layout {
    root: PathBuf,
    name: String,
}

impl Layout {
    pub fn new(root: impl Into<PathBuf>, name: impl Into<String>) -> Self {
        Self {
            root: root.into(),
            name: name.into(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn results_dir(&self) -> PathBuf {
        self.root.join("results")
    }

    pub fn fronts_dir(&self) -> PathBuf {
        self.root.join("fronts")
    }

    pub fn runs_csv(&self) -> PathBuf {
        self.results_dir().join(format!("{}.csv", self.name))
    }

    pub fn pairs_csv(&self) -> PathBuf {
        self.results_dir().join(format!("{}.pairs.csv", self.name))
    }

    pub fn timing_csv(&self) -> PathBuf {
        self.results_dir().join(format!("{}.timing.csv", self.name))
    }

    pub fn config_snapshot(&self) -> PathBuf {
        self.results_dir().join(format!("{}.config", self.name))
    }

    pub fn set_path(&self, problem: ProblemKind, mode: CrowdingMode, run: usize) -> PathBuf {
        self.results_dir()
            .join(&self.name)
            .join(format!("{}_{}_{}.set", problem.slug(), mode, run))
    }
}

/// Append-only CSV file that writes its header when created.
pub struct Appender {
    path: PathBuf,
    writer: csv::Writer<File>,
}

impl Appender {
    pub fn open(path: &Path, header: &[&str]) -> Result<Self> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| HarnessError::io(path, e))?;
        let fresh = file.metadata().map_err(|e| HarnessError::io(path, e))?.len() == 0;
        let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        if fresh {
            writer.write_record(header).map_err(|e| HarnessError::csv(path, e))?;
        }
        let mut appender = Self {
            path: path.to_path_buf(),
            writer,
        };
        appender.flush()?;
        Ok(appender)
    }

    fn write(&mut self, row: Vec<String>) -> Result<()> {
        self.writer.write_record(&row).map_err(|e| HarnessError::csv(&self.path, e))
    }

    pub fn flush(&mut self) -> Result<()> {
        self.writer.flush().map_err(|e| HarnessError::io(&self.path, e))
    }
}

/// The three appenders of one experiment.
pub struct RecordWriter {
    runs: Appender,
    pairs: Appender,
    timing: Appender,
}

impl RecordWriter {
    pub fn open(layout: &Layout) -> Result<Self> {
        Ok(Self {
            runs: Appender::open(&layout.runs_csv(), &RUN_HEADER)?,
            pairs: Appender::open(&layout.pairs_csv(), &PAIR_HEADER)?,
            timing: Appender::open(&layout.timing_csv(), &TIMING_HEADER)?,
        })
    }

    pub fn run(&mut self, record: &RunRecord) -> Result<()> {
        self.runs.write(record.row())
    }

    pub fn pair(&mut self, record: &PairedRecord) -> Result<()> {
        self.pairs.write(record.row())
    }

    pub fn timing(&mut self, record: &TimingRecord) -> Result<()> {
        self.timing.write(record.row())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.runs.flush()?;
        self.pairs.flush()?;
        self.timing.flush()
    }
}

fn malformed(path: &Path, line: u64, message: impl std::fmt::Display) -> HarnessError {
    HarnessError::Malformed {
        path: path.to_path_buf(),
        message: format!("line {line}: {message}"),
    }
}

/// Read every row of a CSV with the given header. A missing file reads as
/// empty.
fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<(u64, csv::StringRecord)>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(HarnessError::io(path, e)),
    };
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let found = reader.headers().map_err(|e| HarnessError::csv(path, e))?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(malformed(path, 1, format!("unexpected header `{}`", found.iter().collect::<Vec<_>>().join(","))));
    }
    let mut rows = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| HarnessError::csv(path, e))?;
        if row.len() != header.len() {
            return Err(malformed(path, i as u64 + 2, format!("expected {} fields", header.len())));
        }
        rows.push((i as u64 + 2, row));
    }
    Ok(rows)
}

fn field<T: std::str::FromStr>(path: &Path, line: u64, row: &csv::StringRecord, i: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    row[i].parse().map_err(|e| malformed(path, line, format!("field `{}`: {e}", &row[i])))
}

pub fn read_runs(path: &Path) -> Result<Vec<RunRecord>> {
    read_rows(path, &RUN_HEADER)?
        .into_iter()
        .map(|(line, row)| {
            Ok(RunRecord {
                problem: field(path, line, &row, 0)?,
                mode: field(path, line, &row, 1)?,
                run: field(path, line, &row, 2)?,
                seed: field(path, line, &row, 3)?,
                eta_m: field(path, line, &row, 4)?,
                gd: field(path, line, &row, 5)?,
                sp: field(path, line, &row, 6)?,
                m2star: field(path, line, &row, 7)?,
            })
        })
        .collect()
}

pub fn read_pairs(path: &Path) -> Result<Vec<PairedRecord>> {
    read_rows(path, &PAIR_HEADER)?
        .into_iter()
        .map(|(line, row)| {
            Ok(PairedRecord {
                problem: field(path, line, &row, 0)?,
                run: field(path, line, &row, 1)?,
                c_initial_improved: field(path, line, &row, 2)?,
                c_improved_initial: field(path, line, &row, 3)?,
            })
        })
        .collect()
}

pub fn read_timing(path: &Path) -> Result<Vec<TimingRecord>> {
    read_rows(path, &TIMING_HEADER)?
        .into_iter()
        .map(|(line, row)| {
            Ok(TimingRecord {
                problem: field(path, line, &row, 0)?,
                mode: field(path, line, &row, 1)?,
                run: field(path, line, &row, 2)?,
                duration_ms: field(path, line, &row, 3)?,
            })
        })
        .collect()
}

/// Every record of one experiment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Records {
    pub runs: Vec<RunRecord>,
    pub pairs: Vec<PairedRecord>,
}

impl Records {
    pub fn load(layout: &Layout) -> Result<Self> {
        Ok(Self {
            runs: read_runs(&layout.runs_csv())?,
            pairs: read_pairs(&layout.pairs_csv())?,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty() && self.pairs.is_empty()
    }

    pub fn extend(&mut self, other: Records) {
        self.runs.extend(other.runs);
        self.pairs.extend(other.pairs);
    }
}

/// Names of all experiments with a run file under `root/results`.
pub fn experiment_names(root: &Path) -> Result<Vec<String>> {
    let dir = root.join("results");
    let entries = match std::fs::read_dir(&dir) {
        Ok(e) => e,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(HarnessError::io(&dir, e)),
    };
    let mut names = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| HarnessError::io(&dir, e))?;
        let file_name = entry.file_name();
        let Some(file_name) = file_name.to_str() else { continue };
        if let Some(stem) = file_name.strip_suffix(".csv") {
            if !stem.ends_with(".pairs") && !stem.ends_with(".timing") {
                names.push(stem.to_string());
            }
        }
    }
    names.sort();
    Ok(names)
}

/// Write `contents` to `path` unless it already exists; an existing file
/// must hold the same contents.
pub fn write_or_match(path: &Path, contents: &str) -> Result<()> {
    match std::fs::read_to_string(path) {
        Ok(existing) if existing == contents => Ok(()),
        Ok(_) => Err(HarnessError::ConfigMismatch { path: path.to_path_buf() }),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            if let Some(dir) = path.parent() {
                std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
            }
            let mut f = File::create(path).map_err(|e| HarnessError::io(path, e))?;
            f.write_all(contents.as_bytes()).map_err(|e| HarnessError::io(path, e))
        }
        Err(e) => Err(HarnessError::io(path, e)),
    }
}
