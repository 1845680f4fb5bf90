//! The acceptance suite behind `moea-bench verify` and the `acceptance`
//! test target.
//!
//! Criteria 1-3 and 8 are exact or oracle checks. Criteria 4-6 run paired
//! experiments and check the direction of the differences between the two
//! crowding modes. Criterion 7 drives the CLI twice with different worker
//! counts and compares the record files byte for byte.

use std::fmt;
use std::path::Path;

use moea_core::benchmarks::{reference_front_cached, DEFAULT_FRONT_COUNT};
use moea_core::indicators::{coverage, gd, niche_count, spacing};
use moea_core::nsga2::{crowding_distances, fast_nondominated_sort, Normalization};
use moea_core::{CrowdingMode, IndicatorConfig, ProblemKind, RngStream, SolutionSet};

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::experiment::{load_set, run_experiment};
use crate::oracles;
use crate::records::{Layout, Records};
use crate::report::{summarize, Summary};

/// Base seed of every acceptance experiment. Fixed once, never tuned.
pub const ACCEPTANCE_SEED: u64 = 1;

/// Front size used for the SCH convergence check. With the default 1000
/// samples the spacing between front points alone puts GD near 1e-5.
pub const SCH_FRONT_COUNT: usize = 1_000_000;

const C_PROBLEMS: [ProblemKind; 4] = [ProblemKind::Zdt1, ProblemKind::Zdt2, ProblemKind::Zdt3, ProblemKind::Zdt6];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scale {
    pub runs: usize,
    pub sort_instances: usize,
    pub indicator_instances: usize,
}

impl Scale {
    pub fn full() -> Self {
        Self {
            runs: 20,
            sort_instances: 1000,
            indicator_instances: 200,
        }
    }

    pub fn quick() -> Self {
        Self {
            runs: 8,
            sort_instances: 200,
            indicator_instances: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

fn result(id: u8, name: &'static str, passed: bool, detail: String) -> CriterionResult {
    CriterionResult { id, name, passed, detail }
}

fn random_points(rng: &mut RngStream, n: usize, m: usize, discrete: bool) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            (0..m)
                .map(|_| if discrete { rng.below(5) as f64 } else { rng.uniform() * 10.0 - 5.0 })
                .collect()
        })
        .collect()
}

/// 1. Fast non-dominated sort against repeated peeling.
pub fn sort_matches_oracle(instances: usize) -> CriterionResult {
    let mut rng = RngStream::new(ACCEPTANCE_SEED);
    let mut mismatches = 0;
    for i in 0..instances {
        let n = 1 + rng.below(64);
        let m = 2 + rng.below(2);
        // Every other instance draws from a coarse grid to force ties.
        let pts = random_points(&mut rng, n, m, i % 2 == 0);
        if fast_nondominated_sort(&pts).fronts != oracles::peel_fronts(&pts) {
            mismatches += 1;
        }
    }
    result(
        1,
        "sort vs peeling oracle",
        mismatches == 0,
        format!("{mismatches} mismatches in {instances} instances (N <= 64, m in {{2,3}})"),
    )
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// 2. GD, coverage, spacing and niche count against brute force.
pub fn indicators_match_oracles(instances: usize) -> CriterionResult {
    const TOL: f64 = 1e-9;
    let mut rng = RngStream::new(ACCEPTANCE_SEED.wrapping_add(1));
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for i in 0..instances {
        let m = 2 + rng.below(2);
        let (n1, n2, nf) = (2 + rng.below(19), 2 + rng.below(19), 1 + rng.below(50));
        let s1 = random_points(&mut rng, n1, m, false);
        let s2 = random_points(&mut rng, n2, m, false);
        let front_pts = random_points(&mut rng, nf, m, false);
        let q = 1 + rng.below(3) as u32;
        let cfg = IndicatorConfig {
            q,
            ..IndicatorConfig::default()
        };

        let set1 = SolutionSet::from_rows(&s1).expect("nonempty");
        let set2 = SolutionSet::from_rows(&s2).expect("nonempty");
        let front = moea_core::ReferenceFront::new(
            front_pts.iter().map(|p| p.clone().into()).collect(),
            moea_core::benchmarks::FrontSource::Generated,
        )
        .expect("nonempty");

        let checks = [
            ("gd", gd(&set1, &front, &cfg).unwrap(), oracles::gd(&s1, &front_pts, q)),
            ("coverage", coverage(&set1, &set2).unwrap(), oracles::coverage(&s1, &s2)),
            ("coverage", coverage(&set2, &set1).unwrap(), oracles::coverage(&s2, &s1)),
            ("spacing", spacing(&set1).unwrap(), oracles::spacing(&s1)),
            (
                "niche count",
                niche_count(&set1, &cfg).unwrap(),
                oracles::niche_count(&s1, cfg.sigma_fraction),
            ),
        ];
        for (name, got, want) in checks {
            if want != 0.0 {
                worst = worst.max((got - want).abs() / want.abs());
            }
            if !rel_close(got, want, TOL) {
                failures.push(format!("{name} on instance {i}: {got} vs {want}"));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{instances} instances, worst relative error {worst:.1e} (tolerance 1e-9)")
    } else {
        format!("{} disagreements, first: {}", failures.len(), failures[0])
    };
    result(2, "indicators vs brute-force oracles", failures.is_empty(), detail)
}

const BOX_A: [f64; 2] = [0.0, 2.0];
const BOX_B: [f64; 2] = [2.0, 0.0];

/// Crowding of `probe` between A = (0, 2) and B = (2, 0), unnormalized.
///
/// Probes that share a coordinate with A or B tie in that objective's sort;
/// they are placed so the index tie-break keeps them between A and B.
fn box_crowding(probe: [f64; 2], mode: CrowdingMode) -> f64 {
    if probe[0] == 0.0 || probe[1] == 0.0 {
        crowding_distances(&[BOX_A, BOX_B, probe], mode, Normalization::None)[2]
    } else {
        crowding_distances(&[probe, BOX_A, BOX_B], mode, Normalization::None)[0]
    }
}

/// 3. Flat plane under the initial mode, slope under the improved mode.
pub fn flat_plane_and_slope() -> CriterionResult {
    let mut problems = Vec::new();
    for i in 0..=20 {
        for j in 0..=20 {
            let probe = [i as f64 / 10.0, j as f64 / 10.0];
            if probe == BOX_A || probe == BOX_B {
                continue;
            }
            let d = box_crowding(probe, CrowdingMode::Initial);
            if d != 4.0 {
                problems.push(format!("initial crowding {d} at {probe:?}"));
            }
        }
    }
    let origin = box_crowding([0.0, 0.0], CrowdingMode::Improved);
    let corner = box_crowding([2.0, 2.0], CrowdingMode::Improved);
    if origin != 4.0 {
        problems.push(format!("improved crowding {origin} at (0,0)"));
    }
    if corner != 0.0 {
        problems.push(format!("improved crowding {corner} at (2,2)"));
    }
    let diagonal: Vec<f64> = (0..=20)
        .map(|k| {
            let t = k as f64 / 10.0;
            box_crowding([t, t], CrowdingMode::Improved)
        })
        .collect();
    if let Some(k) = diagonal.windows(2).position(|w| w[1] >= w[0]) {
        problems.push(format!("improved crowding not decreasing at diagonal step {k}"));
    }
    let detail = if problems.is_empty() {
        "initial = 4 at 439 grid probes; improved 4 at (0,0), 0 at (2,2), strictly decreasing over 21 diagonal points".to_string()
    } else {
        problems.join("; ")
    };
    result(3, "crowding flat plane vs slope", problems.is_empty(), detail)
}

/// Summaries of the paired experiments used by criteria 4-6 and 8.
pub struct Experiments {
    pub zdt: Summary,
    pub sch: Summary,
    pub zdt_layout: Layout,
    pub sch_layout: Layout,
    pub zdt_records: Records,
    pub sch_records: Records,
}

pub fn run_experiments(scale: Scale, workdir: &Path, jobs: usize) -> Result<Experiments> {
    let base = ExperimentConfig {
        runs: scale.runs,
        base_seed: ACCEPTANCE_SEED,
        out_dir: workdir.to_path_buf(),
        jobs,
        ..ExperimentConfig::default()
    };
    let zdt_cfg = ExperimentConfig {
        name: "acceptance-zdt".into(),
        problems: C_PROBLEMS.to_vec(),
        ..base.clone()
    };
    let sch_cfg = ExperimentConfig {
        name: "acceptance-sch".into(),
        problems: vec![ProblemKind::Sch],
        front_count: SCH_FRONT_COUNT,
        ..base
    };
    let zdt_records = run_experiment(&zdt_cfg)?;
    let sch_records = run_experiment(&sch_cfg)?;
    Ok(Experiments {
        zdt: summarize(&zdt_records),
        sch: summarize(&sch_records),
        zdt_layout: Layout::new(workdir, zdt_cfg.name),
        sch_layout: Layout::new(workdir, sch_cfg.name),
        zdt_records,
        sch_records,
    })
}

/// 4. Improved-mode sets cover initial-mode sets more than the reverse.
pub fn coverage_direction(ex: &Experiments) -> CriterionResult {
    let mut ok = true;
    let mut parts = Vec::new();
    for kind in C_PROBLEMS {
        let Some(s) = ex.zdt.get(kind) else {
            ok = false;
            parts.push(format!("{}: no records", kind.name()));
            continue;
        };
        let c = &s.coverage;
        let (lo, hi) = (c.initial.median, c.improved.median);
        let ratio = hi / lo;
        let pass = hi > lo && c.p_value < 0.05 && ratio > 1.2;
        ok &= pass;
        parts.push(format!(
            "{} C(impr,init) {hi:.3} vs C(init,impr) {lo:.3}, ratio {ratio:.2}, w/l {}/{}, p {:.1e}{}",
            kind.name(),
            c.counts.wins,
            c.counts.losses,
            c.p_value,
            if pass { "" } else { " <- fails" }
        ));
    }
    result(4, "C-metric direction on ZDT1/2/3/6", ok, parts.join("; "))
}

/// 5. Convergence thresholds and GD direction.
pub fn gd_convergence(ex: &Experiments) -> CriterionResult {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut threshold = |summary: &Summary, kind: ProblemKind, limit: f64| match summary.get(kind) {
        Some(s) => {
            let (a, b) = (s.gd.initial.median, s.gd.improved.median);
            let pass = a < limit && b < limit;
            ok &= pass;
            parts.push(format!(
                "{} median GD init {a:.2e} / impr {b:.2e} (< {limit:.0e}){}",
                kind.name(),
                if pass { "" } else { " <- fails" }
            ));
        }
        None => {
            ok = false;
            parts.push(format!("{}: no records", kind.name()));
        }
    };
    threshold(&ex.sch, ProblemKind::Sch, 1e-6);
    threshold(&ex.zdt, ProblemKind::Zdt1, 5e-3);

    let mut smaller = 0;
    for kind in [ProblemKind::Zdt2, ProblemKind::Zdt3, ProblemKind::Zdt6] {
        let Some(s) = ex.zdt.get(kind) else {
            ok = false;
            continue;
        };
        let (a, b) = (s.gd.initial.median, s.gd.improved.median);
        let within = b <= 1.5 * a;
        ok &= within;
        if b < a {
            smaller += 1;
        }
        parts.push(format!(
            "{} impr/init {:.2}{}",
            kind.name(),
            b / a,
            if within { "" } else { " <- above 1.5" }
        ));
    }
    ok &= smaller >= 2;
    parts.push(format!("improved smaller on {smaller}/3"));
    result(5, "GD convergence and direction", ok, parts.join("; "))
}

/// 6. The improved mode does not spread its sets worse.
pub fn distribution_not_worse(ex: &Experiments) -> CriterionResult {
    let mut ok = true;
    let mut parts = Vec::new();
    for kind in [ProblemKind::Zdt1, ProblemKind::Zdt2, ProblemKind::Zdt3] {
        let Some(s) = ex.zdt.get(kind) else {
            ok = false;
            continue;
        };
        let sp = s.sp.improved.median / s.sp.initial.median;
        let m2 = s.m2star.improved.median / s.m2star.initial.median;
        let pass = sp <= 2.0 && m2 >= 0.9;
        ok &= pass;
        parts.push(format!(
            "{} SP impr/init {sp:.2} (<= 2), M2* impr/init {m2:.3} (>= 0.9){}",
            kind.name(),
            if pass { "" } else { " <- fails" }
        ));
    }
    result(6, "SP and M2* not degraded on ZDT1-3", ok, parts.join("; "))
}

/// 7. Record files do not depend on the worker count.
pub fn determinism(workdir: &Path) -> Result<CriterionResult> {
    let mut outputs = Vec::new();
    for jobs in ["1", "4"] {
        let dir = workdir.join(format!("jobs-{jobs}"));
        let args = [
            "moea-bench", "run", "--problem", "zdt1", "--runs", "3", "--seed", "42", "--jobs", jobs, "--out",
        ];
        let mut argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        argv.push(dir.display().to_string());
        let code = crate::cli::run(argv, &mut std::io::sink(), &mut std::io::sink());
        let layout = Layout::new(&dir, "experiment");
        let read = |p: std::path::PathBuf| std::fs::read(&p).unwrap_or_default();
        outputs.push((code, read(layout.runs_csv()), read(layout.pairs_csv())));
    }
    let (a, b) = (&outputs[0], &outputs[1]);
    let ok = a.0 == 0 && b.0 == 0 && !a.1.is_empty() && a.1 == b.1 && a.2 == b.2;
    let detail = format!(
        "exit codes {} / {}, run records {} / {} bytes, {}",
        a.0,
        b.0,
        a.1.len(),
        b.1.len(),
        if a.1 == b.1 && a.2 == b.2 { "identical" } else { "different" }
    );
    Ok(result(7, "--jobs 1 vs --jobs 4 byte-identical records", ok, detail))
}

/// 8. Niche-count bounds on every produced set; GD of each front against itself.
pub fn bounds(ex: &Experiments, workdir: &Path) -> Result<CriterionResult> {
    let cfg = IndicatorConfig::default();
    let mut sets = 0;
    let mut problems = Vec::new();
    for (layout, records) in [(&ex.zdt_layout, &ex.zdt_records), (&ex.sch_layout, &ex.sch_records)] {
        for r in &records.runs {
            let set = load_set(layout, r.problem, r.mode, r.run)?;
            sets += 1;
            if set.len() < 2 {
                continue;
            }
            let m2 = niche_count(&set, &cfg)?;
            if !(0.0..=set.len() as f64).contains(&m2) {
                problems.push(format!("M2* {m2} for |S| = {}", set.len()));
            }
        }
    }
    let fronts = workdir.join("fronts");
    for kind in ProblemKind::ALL {
        let front = reference_front_cached(kind, DEFAULT_FRONT_COUNT, &fronts)?;
        let as_set = SolutionSet::new(front.points().to_vec())?;
        let g = gd(&as_set, &front, &cfg)?;
        if g != 0.0 {
            problems.push(format!("GD of the {} front against itself is {g}", kind.name()));
        }
    }
    let ok = problems.is_empty();
    let detail = if ok {
        format!("0 <= M2* <= |S| on {sets} sets; GD(front, front) = 0 on all 9 problems")
    } else {
        problems.join("; ")
    };
    Ok(result(8, "M2* bounds and GD of the front itself", ok, detail))
}

/// Run every criterion in order, reporting each as soon as it is known.
pub fn run_all(
    scale: Scale,
    workdir: &Path,
    jobs: usize,
    report: &mut dyn FnMut(&CriterionResult),
) -> Result<Vec<CriterionResult>> {
    let mut out = Vec::new();
    let mut push = |r: CriterionResult, out: &mut Vec<CriterionResult>| {
        report(&r);
        out.push(r);
    };
    push(sort_matches_oracle(scale.sort_instances), &mut out);
    push(indicators_match_oracles(scale.indicator_instances), &mut out);
    push(flat_plane_and_slope(), &mut out);
    let ex = run_experiments(scale, workdir, jobs)?;
    push(coverage_direction(&ex), &mut out);
    push(gd_convergence(&ex), &mut out);
    push(distribution_not_worse(&ex), &mut out);
    push(determinism(workdir)?, &mut out);
    push(bounds(&ex, workdir)?, &mut out);
    Ok(out)
}
