//! Summary statistics and the four comparison tables.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use moea_core::{CrowdingMode, ProblemKind};

use crate::records::{Records, RunRecord};
use crate::stats::{mean, median, SignCounts};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub mean: f64,
    pub median: f64,
    pub n: usize,
}

impl Stat {
    pub fn of(values: &[f64]) -> Self {
        Self {
            mean: mean(values),
            median: median(values),
            n: values.iter().filter(|v| !v.is_nan()).count(),
        }
    }
}

/// Which side the medians favor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Favors {
    Improved,
    Initial,
    Tie,
    Undecided,
}

impl fmt::Display for Favors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Favors::Improved => "improved",
            Favors::Initial => "initial",
            Favors::Tie => "tie",
            Favors::Undecided => "-",
        })
    }
}

/// Whether smaller or larger values of a metric are better.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Lower,
    Higher,
}

impl Goal {
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Goal::Lower => a < b,
            Goal::Higher => a > b,
        }
    }
}

fn favors(goal: Goal, initial: f64, improved: f64) -> Favors {
    if initial.is_nan() || improved.is_nan() {
        Favors::Undecided
    } else if goal.better(improved, initial) {
        Favors::Improved
    } else if goal.better(initial, improved) {
        Favors::Initial
    } else {
        Favors::Tie
    }
}

/// One metric compared between the modes on one problem.
///
/// `counts` tallies runs where the improved mode beat the initial one
/// (wins) against the reverse; `p_value` is the one-sided sign test for
/// the improved mode being better.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub initial: Stat,
    pub improved: Stat,
    pub favors: Favors,
    pub counts: SignCounts,
    pub p_value: f64,
}

impl Comparison {
    fn build(goal: Goal, initial: &[f64], improved: &[f64], paired: &[(f64, f64)]) -> Self {
        let (initial, improved) = (Stat::of(initial), Stat::of(improved));
        // Pairs are (improved, initial).
        let counts = SignCounts::tally(paired.iter().copied(), |a, b| goal.better(a, b));
        Self {
            favors: favors(goal, initial.median, improved.median),
            p_value: counts.p_value(),
            initial,
            improved,
            counts,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSummary {
    pub problem: ProblemKind,
    pub gd: Comparison,
    pub sp: Comparison,
    pub m2star: Comparison,
    /// `initial` holds C(initial, improved) and `improved` holds
    /// C(improved, initial).
    pub coverage: Comparison,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Summary {
    pub problems: Vec<ProblemSummary>,
}

impl Summary {
    pub fn get(&self, problem: ProblemKind) -> Option<&ProblemSummary> {
        self.problems.iter().find(|p| p.problem == problem)
    }
}

fn metric_comparison(runs: &[&RunRecord], goal: Goal, metric: impl Fn(&RunRecord) -> f64) -> Comparison {
    let by_mode = |mode| -> BTreeMap<usize, f64> {
        runs.iter().filter(|r| r.mode == mode).map(|r| (r.run, metric(r))).collect()
    };
    let initial = by_mode(CrowdingMode::Initial);
    let improved = by_mode(CrowdingMode::Improved);
    let paired: Vec<(f64, f64)> = improved
        .iter()
        .filter_map(|(run, &b)| initial.get(run).map(|&a| (b, a)))
        .collect();
    Comparison::build(
        goal,
        &initial.values().copied().collect::<Vec<_>>(),
        &improved.values().copied().collect::<Vec<_>>(),
        &paired,
    )
}

/// Aggregate records per problem, in the canonical problem order.
pub fn summarize(records: &Records) -> Summary {
    let mut problems: Vec<ProblemKind> = records
        .runs
        .iter()
        .map(|r| r.problem)
        .chain(records.pairs.iter().map(|p| p.problem))
        .collect();
    problems.sort();
    problems.dedup();

    let problems = problems
        .into_iter()
        .map(|problem| {
            let runs: Vec<&RunRecord> = records.runs.iter().filter(|r| r.problem == problem).collect();
            let pairs: Vec<(f64, f64)> = records
                .pairs
                .iter()
                .filter(|p| p.problem == problem)
                .map(|p| (p.c_improved_initial, p.c_initial_improved))
                .collect();
            let c_ii: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            let c_ir: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            ProblemSummary {
                problem,
                gd: metric_comparison(&runs, Goal::Lower, |r| r.gd),
                sp: metric_comparison(&runs, Goal::Lower, |r| r.sp),
                m2star: metric_comparison(&runs, Goal::Higher, |r| r.m2star),
                coverage: Comparison::build(Goal::Higher, &c_ii, &c_ir, &pairs),
            }
        })
        .collect();
    Summary { problems }
}

fn num(v: f64) -> String {
    if v.is_nan() {
        "-".to_string()
    } else {
        format!("{v:.4e}")
    }
}

fn table(out: &mut String, title: &str, left: &str, right: &str, rows: &[(ProblemKind, &Comparison)]) {
    writeln!(out, "{title}").unwrap();
    writeln!(
        out,
        "{:<8} {:>11} {:>11} {:>11} {:>11} {:>9} {:>7} {:>10}",
        "problem",
        format!("{left} mean"),
        format!("{left} med"),
        format!("{right} mean"),
        format!("{right} med"),
        "favors",
        "w/l",
        "p"
    )
    .unwrap();
    for (problem, c) in rows {
        writeln!(
            out,
            "{:<8} {:>11} {:>11} {:>11} {:>11} {:>9} {:>7} {:>10}",
            problem.name(),
            num(c.initial.mean),
            num(c.initial.median),
            num(c.improved.mean),
            num(c.improved.median),
            c.favors.to_string(),
            format!("{}/{}", c.counts.wins, c.counts.losses),
            format!("{:.3e}", c.p_value),
        )
        .unwrap();
    }
    writeln!(out).unwrap();
}

/// Render the GD, coverage, SP and M2* tables as plain text.
///
/// "w/l" counts runs where the improved mode did better / worse, and `p`
/// is the one-sided sign test for the improved mode being better.
pub fn render(summary: &Summary) -> String {
    let mut out = String::new();
    let rows = |f: fn(&ProblemSummary) -> &Comparison| -> Vec<(ProblemKind, &Comparison)> {
        summary.problems.iter().map(|p| (p.problem, f(p))).collect()
    };
    table(&mut out, "Table 1. Generational distance (lower is better)", "init", "impr", &rows(|p| &p.gd));
    table(
        &mut out,
        "Table 2. Coverage: C(init, impr) vs C(impr, init) (higher right column favors improved)",
        "C(i,I)",
        "C(I,i)",
        &rows(|p| &p.coverage),
    );
    table(&mut out, "Table 3. Spacing (lower is better)", "init", "impr", &rows(|p| &p.sp));
    table(&mut out, "Table 4. Niche count M2* (higher is better)", "init", "impr", &rows(|p| &p.m2star));
    out
}
