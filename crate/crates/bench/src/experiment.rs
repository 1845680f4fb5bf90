//! Paired-run orchestration.
//!
//! One task is a `(problem, run)` pair. It runs every configured mode from
//! the same seed, so the modes start from identical populations, and it
//! scores each final non-dominated set. Workers pull tasks from a shared
//! counter; a single collector writes their results in task order, so the
//! files do not depend on the number of workers.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use moea_core::benchmarks::{reference_front_cached, Problem, ReferenceFront};
use moea_core::indicators::{coverage, gd, niche_count, spacing};
use moea_core::{pointfile, CrowdingMode, IndicatorConfig, Nsga2, ProblemKind, RngStream, SolutionSet};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::records::{write_or_match, Layout, PairedRecord, RecordWriter, Records, RunRecord, TimingRecord};

/// Indicator values of one final set: GD, SP and M2*.
///
/// SP and M2* need two points; a singleton set scores NaN for both.
pub fn score(set: &SolutionSet, front: &ReferenceFront, cfg: &IndicatorConfig) -> Result<(f64, f64, f64)> {
    let g = gd(set, front, cfg)?;
    if set.len() < 2 {
        return Ok((g, f64::NAN, f64::NAN));
    }
    Ok((g, spacing(set)?, niche_count(set, cfg)?))
}

/// Everything one task produces, before it is written out.
#[derive(Debug)]
pub struct TaskOutput {
    pub sets: Vec<(CrowdingMode, SolutionSet)>,
    pub runs: Vec<RunRecord>,
    pub pair: Option<PairedRecord>,
    pub timing: Vec<TimingRecord>,
}

/// Run every configured mode of one `(problem, run)` task and score it.
pub fn run_task(cfg: &ExperimentConfig, kind: ProblemKind, run: usize, front: &ReferenceFront) -> Result<TaskOutput> {
    let problem = Problem::new(kind);
    let mut out = TaskOutput {
        sets: Vec::new(),
        runs: Vec::new(),
        pair: None,
        timing: Vec::new(),
    };
    for &mode in &cfg.modes {
        let started = Instant::now();
        let mut rng = RngStream::for_run(cfg.base_seed, run as u64);
        let nsga = Nsga2::new(problem.clone(), cfg.pop, cfg.generations, mode, cfg.variation.clone())?;
        let population = nsga.run(&mut rng)?;
        let set = SolutionSet::new(population.first_front())?;
        let (g, sp, m2) = score(&set, front, &cfg.indicators)?;
        out.runs.push(RunRecord {
            problem: kind,
            mode,
            run,
            seed: rng.seed(),
            eta_m: cfg.variation.eta_m,
            gd: g,
            sp,
            m2star: m2,
        });
        out.timing.push(TimingRecord {
            problem: kind,
            mode,
            run,
            duration_ms: started.elapsed().as_millis(),
        });
        out.sets.push((mode, set));
    }
    let find = |mode| out.sets.iter().find(|(m, _)| *m == mode).map(|(_, s)| s);
    if let (Some(initial), Some(improved)) = (find(CrowdingMode::Initial), find(CrowdingMode::Improved)) {
        out.pair = Some(PairedRecord {
            problem: kind,
            run,
            c_initial_improved: coverage(initial, improved)?,
            c_improved_initial: coverage(improved, initial)?,
        });
    }
    Ok(out)
}

/// Load or generate, and cache, the reference front of every configured problem.
pub fn load_fronts(cfg: &ExperimentConfig, layout: &Layout) -> Result<HashMap<ProblemKind, ReferenceFront>> {
    let dir = layout.fronts_dir();
    cfg.problems
        .iter()
        .map(|&kind| Ok((kind, reference_front_cached(kind, cfg.front_count, &dir)?)))
        .collect()
}

fn pool_size(jobs: usize, tasks: usize) -> usize {
    jobs.clamp(1, tasks.max(1))
}

/// Run or resume the experiment described by `cfg` and return its records.
///
/// Tasks whose records already exist are skipped, and rows already on disk
/// are never rewritten. The configuration is stored next to the records on
/// the first call; a later call with a different configuration under the
/// same name is refused.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Records> {
    cfg.validate()?;
    let layout = Layout::new(&cfg.out_dir, &cfg.name);
    write_or_match(&layout.config_snapshot(), &cfg.snapshot())?;

    let existing = Records::load(&layout)?;
    let have_runs: HashSet<_> = existing.runs.iter().map(RunRecord::key).collect();
    let have_pairs: HashSet<_> = existing.pairs.iter().map(PairedRecord::key).collect();
    let paired = cfg.modes.len() == 2;
    let done = |kind: ProblemKind, run: usize| {
        cfg.modes.iter().all(|&m| have_runs.contains(&(kind, m, run))) && (!paired || have_pairs.contains(&(kind, run)))
    };

    let tasks: Vec<(ProblemKind, usize)> = cfg
        .problems
        .iter()
        .flat_map(|&kind| (0..cfg.runs).map(move |run| (kind, run)))
        .filter(|&(kind, run)| !done(kind, run))
        .collect();
    if tasks.is_empty() {
        return Ok(existing);
    }

    let fronts = load_fronts(cfg, &layout)?;
    let mut writer = RecordWriter::open(&layout)?;
    let next = AtomicUsize::new(0);
    let workers = pool_size(cfg.jobs, tasks.len());

    std::thread::scope(|scope| -> Result<()> {
        let (tx, rx) = mpsc::channel::<(usize, Result<TaskOutput>)>();
        for _ in 0..workers {
            let tx = tx.clone();
            let (tasks, fronts, next) = (&tasks, &fronts, &next);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(kind, run)) = tasks.get(i) else { break };
                let result = run_task(cfg, kind, run, &fronts[&kind]);
                let failed = result.is_err();
                if tx.send((i, result)).is_err() || failed {
                    // Stop handing out work once anything went wrong.
                    next.store(tasks.len(), Ordering::Relaxed);
                    break;
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut expected = 0;
        for (i, result) in rx {
            pending.insert(i, result);
            while let Some(result) = pending.remove(&expected) {
                let output = match result {
                    Ok(o) => o,
                    Err(e) => {
                        next.store(tasks.len(), Ordering::Relaxed);
                        return Err(e);
                    }
                };
                persist(&layout, &mut writer, output, &have_runs, &have_pairs)?;
                expected += 1;
            }
        }
        if expected < tasks.len() {
            return Err(HarnessError::WorkerPanic);
        }
        Ok(())
    })?;

    Records::load(&layout)
}

fn persist(
    layout: &Layout,
    writer: &mut RecordWriter,
    output: TaskOutput,
    have_runs: &HashSet<(ProblemKind, CrowdingMode, usize)>,
    have_pairs: &HashSet<(ProblemKind, usize)>,
) -> Result<()> {
    for ((mode, set), record) in output.sets.iter().zip(&output.runs) {
        pointfile::write_points(&layout.set_path(record.problem, *mode, record.run), set.points())?;
    }
    for (record, timing) in output.runs.iter().zip(&output.timing) {
        if !have_runs.contains(&record.key()) {
            writer.run(record)?;
            writer.timing(timing)?;
        }
    }
    if let Some(pair) = &output.pair {
        if !have_pairs.contains(&pair.key()) {
            writer.pair(pair)?;
        }
    }
    writer.flush()
}

/// Re-read a persisted final set.
pub fn load_set(layout: &Layout, problem: ProblemKind, mode: CrowdingMode, run: usize) -> Result<SolutionSet> {
    let points = pointfile::read_points(&layout.set_path(problem, mode, run))?;
    Ok(SolutionSet::new(points)?)
}

/// Recompute a run record's indicators from its persisted set.
pub fn recompute(layout: &Layout, record: &RunRecord, front: &ReferenceFront, cfg: &IndicatorConfig) -> Result<(f64, f64, f64)> {
    score(&load_set(layout, record.problem, record.mode, record.run)?, front, cfg)
}

/// Generate and cache the reference fronts of `problems` under `root/fronts`.
pub fn generate_fronts(root: &Path, problems: &[ProblemKind], count: usize) -> Result<Vec<std::path::PathBuf>> {
    let dir = root.join("fronts");
    problems
        .iter()
        .map(|&kind| {
            reference_front_cached(kind, count, &dir)?;
            Ok(moea_core::benchmarks::front_path(&dir, kind, count))
        })
        .collect()
}
