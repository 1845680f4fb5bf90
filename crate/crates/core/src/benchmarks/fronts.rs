use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use super::problems::{objective_map, zdt6_f1, ProblemKind};
use crate::error::{Error, Result};
use crate::pointfile;
use crate::types::ObjectiveVector;

/// Samples per problem used when a front has to be generated numerically.
pub const GRID_SAMPLES: usize = 1_000_000;

/// Default number of reference-front points.
pub const DEFAULT_FRONT_COUNT: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontSource {
    /// Sampled from a closed-form parametrization of the front.
    Analytic,
    /// Dense sampling followed by non-dominated filtering and downsampling.
    Generated,
}

/// Sampled true Pareto front, kept sorted by the first objective.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront {
    points: Vec<ObjectiveVector>,
    source: FrontSource,
}

impl ReferenceFront {
    pub fn new(mut points: Vec<ObjectiveVector>, source: FrontSource) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::contract("reference front is empty"));
        };
        let m = first.len();
        if let Some(bad) = points.iter().find(|p| p.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.len(),
            });
        }
        points.sort_by(|a, b| lex_cmp(a, b));
        Ok(Self { points, source })
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn source(&self) -> FrontSource {
        self.source
    }

    pub fn dimension(&self) -> usize {
        self.points[0].len()
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

pub fn front_source(kind: ProblemKind) -> FrontSource {
    match kind {
        ProblemKind::Pol | ProblemKind::Kur | ProblemKind::Zdt3 => FrontSource::Generated,
        _ => FrontSource::Analytic,
    }
}

/// Build the reference front for `kind` with `count` points, in memory.
pub fn reference_front(kind: ProblemKind, count: usize) -> Result<ReferenceFront> {
    if count < 2 {
        return Err(Error::contract("reference front needs at least 2 points"));
    }
    let points: Vec<ObjectiveVector> = match kind {
        ProblemKind::Sch => linspace(0.0, 2.0, count)
            .map(|x| vec![x * x, (x - 2.0).powi(2)].into())
            .collect(),
        ProblemKind::Fon => {
            let c = 1.0 / 3f64.sqrt();
            linspace(-c, c, count)
                .map(|t| {
                    let f1 = 1.0 - (-3.0 * (t - c).powi(2)).exp();
                    let f2 = 1.0 - (-3.0 * (t + c).powi(2)).exp();
                    vec![f1, f2].into()
                })
                .collect()
        }
        ProblemKind::Zdt1 | ProblemKind::Zdt4 => linspace(0.0, 1.0, count)
            .map(|f1| vec![f1, 1.0 - f1.sqrt()].into())
            .collect(),
        ProblemKind::Zdt2 => linspace(0.0, 1.0, count)
            .map(|f1| vec![f1, 1.0 - f1 * f1].into())
            .collect(),
        ProblemKind::Zdt6 => linspace(zdt6_min_f1(), 1.0, count)
            .map(|f1| vec![f1, 1.0 - f1 * f1].into())
            .collect(),
        ProblemKind::Zdt3 => {
            let samples = GRID_SAMPLES.max(100 * count);
            let dense: Vec<[f64; 2]> = linspace(0.0, 1.0, samples)
                .map(|f1| [f1, 1.0 - f1.sqrt() - f1 * (10.0 * std::f64::consts::PI * f1).sin()])
                .collect();
            thin_front(dense, count)
        }
        ProblemKind::Pol | ProblemKind::Kur => thin_front(grid_front(kind, count), count),
    };
    ReferenceFront::new(points, front_source(kind))
}

/// Path of the cached front file for `kind` under `dir`.
pub fn front_path(dir: &Path, kind: ProblemKind, count: usize) -> PathBuf {
    dir.join(format!("{}_{}.front", kind.slug(), count))
}

/// Load the front from `dir` if present, otherwise build it and persist it.
pub fn reference_front_cached(kind: ProblemKind, count: usize, dir: &Path) -> Result<ReferenceFront> {
    let path = front_path(dir, kind, count);
    if path.exists() {
        let points = pointfile::read_points(&path)?;
        return ReferenceFront::new(points, front_source(kind));
    }
    let front = reference_front(kind, count)?;
    pointfile::write_points(&path, front.points())?;
    Ok(front)
}

fn linspace(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(move |i| if i + 1 == count { hi } else { lo + step * i as f64 })
}

/// Non-dominated images of a regular grid over the decision box with about
/// `GRID_SAMPLES` points, refined locally until the front is dense enough.
fn grid_front(kind: ProblemKind, count: usize) -> Vec<[f64; 2]> {
    let bounds = kind.bounds();
    let n = bounds.len();
    let per_axis = (GRID_SAMPLES as f64).powf(1.0 / n as f64).round() as usize;
    let axes: Vec<Vec<f64>> = bounds
        .iter()
        .map(|b| linspace(b.lower, b.upper, per_axis).collect())
        .collect();
    let total = per_axis.pow(n as u32);
    let mut samples = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let x: Vec<f64> = axes
            .iter()
            .map(|axis| {
                let v = axis[rem % per_axis];
                rem /= per_axis;
                v
            })
            .collect();
        let (f1, f2) = objective_map(kind, &x);
        samples.push(([f1, f2], x));
    }
    let mut front = nondominated_2d(samples);

    // A coarse grid can miss most of a curved front in three dimensions.
    // Resample a finer grid around each surviving cell until the filtered
    // front holds comfortably more points than requested.
    let mut step: Vec<f64> = bounds.iter().map(|b| b.width() / (per_axis - 1) as f64).collect();
    let offsets_per_axis: usize = 7;
    for _ in 0..REFINE_ROUNDS {
        if front.len() >= 2 * count {
            break;
        }
        let mut samples = front.clone();
        for (_, center) in &front {
            let cells = offsets_per_axis.pow(n as u32);
            for flat in 0..cells {
                let mut rem = flat;
                let x: Vec<f64> = center
                    .iter()
                    .zip(&step)
                    .zip(&bounds)
                    .map(|((&c, &h), b)| {
                        let k = (rem % offsets_per_axis) as f64;
                        rem /= offsets_per_axis;
                        let t = k / (offsets_per_axis - 1) as f64 * 2.0 - 1.0;
                        b.clamp(c + t * h)
                    })
                    .collect();
                let (f1, f2) = objective_map(kind, &x);
                samples.push(([f1, f2], x));
            }
        }
        front = nondominated_2d(samples);
        for h in &mut step {
            *h /= 3.0;
        }
    }
    front.into_iter().map(|(f, _)| f).collect()
}

const REFINE_ROUNDS: usize = 12;

/// Non-dominated filter followed by greedy farthest-point downsampling.
fn thin_front(points: Vec<[f64; 2]>, count: usize) -> Vec<ObjectiveVector> {
    let front: Vec<[f64; 2]> = nondominated_2d(points.into_iter().map(|p| (p, ())).collect())
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    farthest_point_subset(&front, count)
        .into_iter()
        .map(|p| ObjectiveVector::new(p.to_vec()))
        .collect()
}

/// Strictly non-dominated, duplicate-free subset of a 2-objective cloud,
/// sorted by the first objective. Each point carries a payload along.
pub(crate) fn nondominated_2d<T>(mut points: Vec<([f64; 2], T)>) -> Vec<([f64; 2], T)> {
    points.sort_by(|(a, _), (b, _)| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut best = f64::INFINITY;
    let mut out = Vec::new();
    for (p, payload) in points {
        if p[1] < best {
            best = p[1];
            out.push((p, payload));
        }
    }
    out
}

/// Greedy max-min selection of `count` points, seeded with the first point.
fn farthest_point_subset(points: &[[f64; 2]], count: usize) -> Vec<[f64; 2]> {
    if points.len() <= count {
        return points.to_vec();
    }
    let dist2 = |a: &[f64; 2], b: &[f64; 2]| (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2);
    let mut nearest: Vec<f64> = points.iter().map(|p| dist2(p, &points[0])).collect();
    let mut chosen = vec![0usize];
    while chosen.len() < count {
        let (next, _) = nearest
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("points is nonempty");
        chosen.push(next);
        for (d, p) in nearest.iter_mut().zip(points) {
            *d = d.min(dist2(p, &points[next]));
        }
    }
    chosen.sort_unstable();
    chosen.into_iter().map(|i| points[i]).collect()
}

/// Smallest attainable ZDT6 first objective, located by a grid scan over
/// `x1` refined with golden-section search.
pub fn zdt6_min_f1() -> f64 {
    let steps = 10_000;
    let (best, _) = (0..=steps)
        .map(|i| i as f64 / steps as f64)
        .map(|x| (x, zdt6_f1(x)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let h = 1.0 / steps as f64;
    let (mut lo, mut hi) = ((best - h).max(0.0), (best + h).min(1.0));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let a = hi - ratio * (hi - lo);
        let b = lo + ratio * (hi - lo);
        if zdt6_f1(a) < zdt6_f1(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    zdt6_f1(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::dominates_unchecked;
    use crate::Problem;

    fn mutually_nondominated(front: &ReferenceFront) -> bool {
        let pts = front.points();
        pts.iter()
            .all(|a| pts.iter().all(|b| !dominates_unchecked(a, b)))
    }

    #[test]
    fn sch_three_points() {
        let front = reference_front(ProblemKind::Sch, 3).unwrap();
        let pts: Vec<Vec<f64>> = front.points().iter().map(|p| p.to_vec()).collect();
        assert_eq!(pts, vec![vec![0.0, 4.0], vec![1.0, 1.0], vec![4.0, 0.0]]);
    }

    #[test]
    fn zdt1_identity() {
        for count in [2, 17, 1000] {
            let front = reference_front(ProblemKind::Zdt1, count).unwrap();
            assert_eq!(front.len(), count);
            for p in front.points() {
                assert!((p[1] - (1.0 - p[0].sqrt())).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn zdt6_min_matches_known_value() {
        assert!((zdt6_min_f1() - 0.280_775_319_1).abs() < 1e-9);
    }

    #[test]
    fn count_below_two_rejected() {
        assert!(reference_front(ProblemKind::Zdt1, 1).is_err());
    }

    #[test]
    fn every_front_is_mutually_nondominated() {
        for kind in ProblemKind::ALL {
            let front = reference_front(kind, 1000).unwrap();
            assert!(mutually_nondominated(&front), "{kind}");
            assert!(front.len() >= 1000, "{kind}: {} points", front.len());
        }
    }

    #[test]
    fn analytic_fronts_are_attainable() {
        // The front of SCH is the image of x in [0, 2].
        let sch = Problem::new(ProblemKind::Sch);
        let f = sch.evaluate(&[0.5]).unwrap();
        let front = reference_front(ProblemKind::Sch, 5).unwrap();
        assert_eq!(front.points()[1].to_vec(), f.to_vec());

        // ZDT3 points come from x1 = f1 with all tail variables zero.
        let zdt3 = Problem::new(ProblemKind::Zdt3);
        let front = reference_front(ProblemKind::Zdt3, 1000).unwrap();
        for p in front.points().iter().step_by(97) {
            let mut x = vec![0.0; 30];
            x[0] = p[0];
            let f = zdt3.evaluate(&x).unwrap();
            assert!((f[1] - p[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let built = reference_front_cached(ProblemKind::Zdt2, 50, dir.path()).unwrap();
        let path = front_path(dir.path(), ProblemKind::Zdt2, 50);
        assert!(path.ends_with("zdt2_50.front"));
        assert!(path.exists());
        let loaded = reference_front_cached(ProblemKind::Zdt2, 50, dir.path()).unwrap();
        assert_eq!(built, loaded);
    }

    #[test]
    fn filter_drops_duplicates_and_dominated() {
        let pts = [[1.0, 1.0], [1.0, 1.0], [2.0, 2.0], [0.0, 3.0], [1.0, 2.0]];
        let out = nondominated_2d(pts.iter().enumerate().map(|(i, p)| (*p, i)).collect());
        assert_eq!(out, vec![([0.0, 3.0], 3), ([1.0, 1.0], 0)]);
    }
}
