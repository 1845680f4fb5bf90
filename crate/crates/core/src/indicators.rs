//! Quality indicators for approximation sets in objective space.
//!
//! * [`gd`]: generational distance to a sampled reference front,
//!   `(sum d_i^q)^(1/q) / |S|` with `d_i` the Euclidean distance from point
//!   `i` to its nearest front sample.
//! * [`coverage`]: share of `S2` weakly dominated by some member of `S1`.
//! * [`spacing`]: sample standard deviation of nearest-neighbor Manhattan
//!   distances inside `S`.
//! * [`niche_count`]: pairs farther apart than a niche radius `sigma`,
//!   scaled by `1 / (|S| - 1)`; `sigma` is a fraction of the largest
//!   pairwise Euclidean distance in `S`.

use crate::benchmarks::ReferenceFront;
use crate::dominance::weakly_dominates_unchecked;
use crate::error::{Error, Result};
use crate::types::ObjectiveVector;

/// Nonempty set of equal-length objective vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    points: Vec<ObjectiveVector>,
}

impl SolutionSet {
    pub fn new(points: Vec<ObjectiveVector>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::contract("solution set is empty"));
        };
        let m = first.len();
        if let Some(bad) = points.iter().find(|p| p.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.len(),
            });
        }
        Ok(Self { points })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(rows.iter().map(|r| ObjectiveVector::new(r.as_ref().to_vec())).collect())
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

    pub fn dimension(&self) -> usize {
        self.points[0].len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorConfig {
    /// Norm exponent of GD.
    pub q: u32,
    /// Niche radius as a fraction of the largest pairwise distance.
    pub sigma_fraction: f64,
}

impl Default for IndicatorConfig {
    fn default() -> Self {
        Self {
            q: 2,
            sigma_fraction: 0.10,
        }
    }
}

impl IndicatorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q == 0 {
            return Err(Error::contract("GD exponent q must be positive"));
        }
        if !(self.sigma_fraction > 0.0 && self.sigma_fraction < 1.0) {
            return Err(Error::contract(format!(
                "sigma fraction {} outside (0, 1)",
                self.sigma_fraction
            )));
        }
        Ok(())
    }
}

fn same_dimension(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Euclidean distance from `p` to the nearest point of `front`.
///
/// The front is sorted by its first objective, so the scan walks outwards
/// from `p`'s position and stops once the first-objective gap alone
/// exceeds the best distance found.
pub fn distance_to_front(p: &[f64], front: &ReferenceFront) -> f64 {
    let pts = front.points();
    let start = pts.partition_point(|q| q[0] < p[0]);
    let mut best = f64::INFINITY;
    for q in pts[start..].iter() {
        let gap = q[0] - p[0];
        if gap * gap > best {
            break;
        }
        best = best.min(squared_distance(p, q));
    }
    for q in pts[..start].iter().rev() {
        let gap = p[0] - q[0];
        if gap * gap > best {
            break;
        }
        best = best.min(squared_distance(p, q));
    }
    best.sqrt()
}

/// Generational distance of `s` to the sampled reference front.
pub fn gd(s: &SolutionSet, front: &ReferenceFront, cfg: &IndicatorConfig) -> Result<f64> {
    if front.is_empty() {
        return Err(Error::contract("reference front is empty"));
    }
    same_dimension(front.dimension(), s.dimension())?;
    cfg.validate()?;
    let q = f64::from(cfg.q);
    let sum: f64 = s
        .points()
        .iter()
        .map(|p| distance_to_front(p, front).powf(q))
        .sum();
    Ok(sum.powf(1.0 / q) / s.len() as f64)
}

/// Fraction of `s2` weakly dominated by at least one member of `s1`.
pub fn coverage(s1: &SolutionSet, s2: &SolutionSet) -> Result<f64> {
    same_dimension(s1.dimension(), s2.dimension())?;
    let covered = s2
        .points()
        .iter()
        .filter(|b| s1.points().iter().any(|a| weakly_dominates_unchecked(a, b)))
        .count();
    Ok(covered as f64 / s2.len() as f64)
}

fn manhattan(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Nearest-neighbor Manhattan distance of every member, excluding itself.
pub fn nearest_manhattan(s: &SolutionSet) -> Vec<f64> {
    let pts = s.points();
    (0..pts.len())
        .map(|i| {
            pts.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| manhattan(&pts[i], q))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// Spacing: spread of the nearest-neighbor distances around their mean.
pub fn spacing(s: &SolutionSet) -> Result<f64> {
    if s.len() < 2 {
        return Err(Error::contract("spacing needs at least two points"));
    }
    let d = nearest_manhattan(s);
    let n = d.len() as f64;
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(var.sqrt())
}

/// Largest pairwise Euclidean distance in `s`.
pub fn diameter(s: &SolutionSet) -> f64 {
    let pts = s.points();
    let mut best = 0.0f64;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            best = best.max(squared_distance(a, b));
        }
    }
    best.sqrt()
}

/// Niche count: ordered pairs farther apart than `sigma`, over `|S| - 1`.
/// Ranges over `[0, |S|]`.
pub fn niche_count(s: &SolutionSet, cfg: &IndicatorConfig) -> Result<f64> {
    if s.len() < 2 {
        return Err(Error::contract("niche count needs at least two points"));
    }
    cfg.validate()?;
    let sigma = cfg.sigma_fraction * diameter(s);
    let sigma2 = sigma * sigma;
    let pts = s.points();
    let mut pairs = 0usize;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            if squared_distance(a, b) > sigma2 {
                pairs += 1;
            }
        }
    }
    // Each unordered pair counts once for each endpoint.
    Ok((2 * pairs) as f64 / (s.len() - 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::FrontSource;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn set(rows: &[[f64; 2]]) -> SolutionSet {
        SolutionSet::from_rows(rows).unwrap()
    }

    fn front(rows: &[[f64; 2]]) -> ReferenceFront {
        ReferenceFront::new(
            rows.iter().map(|r| ObjectiveVector::new(r.to_vec())).collect(),
            FrontSource::Analytic,
        )
        .unwrap()
    }

    #[test]
    fn empty_set_rejected() {
        assert!(SolutionSet::new(Vec::new()).is_err());
    }

    #[test]
    fn gd_subset_of_front_is_zero() {
        let f = front(&[[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]]);
        let s = set(&[[0.5, 0.5], [1.0, 0.0]]);
        assert_eq!(gd(&s, &f, &IndicatorConfig::default()).unwrap(), 0.0);
    }

    #[test]
    fn gd_hand_values() {
        let f = front(&[[0.0, 0.0]]);
        let s = set(&[[0.0, 3.0], [0.0, 4.0]]);
        assert_abs_diff_eq!(gd(&s, &f, &IndicatorConfig::default()).unwrap(), 2.5, epsilon = 1e-15);
        let q1 = IndicatorConfig { q: 1, ..Default::default() };
        assert_abs_diff_eq!(gd(&s, &f, &q1).unwrap(), 3.5, epsilon = 1e-15);
    }

    #[test]
    fn gd_dimension_mismatch() {
        let f = front(&[[0.0, 0.0]]);
        let s = SolutionSet::from_rows(&[[0.0, 1.0, 2.0]]).unwrap();
        assert!(gd(&s, &f, &IndicatorConfig::default()).is_err());
    }

    #[test]
    fn coverage_examples() {
        let s = set(&[[1.0, 1.0], [2.0, 0.0]]);
        assert_eq!(coverage(&s, &s).unwrap(), 1.0);
        assert_eq!(coverage(&set(&[[0.0, 0.0]]), &s).unwrap(), 1.0);
        assert_eq!(coverage(&set(&[[0.0, 2.0]]), &s).unwrap(), 0.0);
    }

    #[test]
    fn coverage_is_not_complementary() {
        let a = set(&[[0.0, 0.0]]);
        let b = set(&[[0.0, 0.0]]);
        assert_eq!(coverage(&a, &b).unwrap() + coverage(&b, &a).unwrap(), 2.0);
    }

    #[test]
    fn spacing_examples() {
        assert_eq!(spacing(&set(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])).unwrap(), 0.0);
        let sp = spacing(&set(&[[0.0, 0.0], [0.0, 1.0], [0.0, 3.0]])).unwrap();
        assert_abs_diff_eq!(sp, (1.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert!(spacing(&set(&[[0.0, 0.0]])).is_err());
    }

    #[test]
    fn spacing_duplicate_has_zero_neighbor_distance() {
        let s = set(&[[0.0, 0.0], [0.0, 0.0], [5.0, 5.0]]);
        assert_eq!(nearest_manhattan(&s), vec![0.0, 0.0, 10.0]);
    }

    #[test]
    fn niche_count_examples() {
        // No two points within a tenth of the diameter: every point counts
        // all others, giving |S|.
        let spread = set(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]);
        assert_eq!(niche_count(&spread, &IndicatorConfig::default()).unwrap(), 4.0);

        let cluster = set(&[[1.0, 1.0], [1.0, 1.0], [1.0, 1.0]]);
        assert_eq!(niche_count(&cluster, &IndicatorConfig::default()).unwrap(), 0.0);

        // sigma = 1; (0,0)-(0,1) is exactly sigma apart and does not count.
        let s = set(&[[0.0, 0.0], [0.0, 1.0], [0.0, 10.0]]);
        assert_eq!(niche_count(&s, &IndicatorConfig::default()).unwrap(), 2.0);
        assert!(niche_count(&set(&[[0.0, 0.0]]), &IndicatorConfig::default()).is_err());
    }

    fn points(max: usize) -> impl Strategy<Value = Vec<[f64; 2]>> {
        prop::collection::vec(prop::array::uniform2(-5.0f64..5.0), 2..max)
    }

    proptest! {
        #[test]
        fn gd_translation_invariant(s in points(12), f in points(12), shift in prop::array::uniform2(-3.0f64..3.0)) {
            let cfg = IndicatorConfig::default();
            let moved = |rows: &[[f64; 2]]| rows.iter().map(|r| [r[0] + shift[0], r[1] + shift[1]]).collect::<Vec<_>>();
            let a = gd(&set(&s), &front(&f), &cfg).unwrap();
            let b = gd(&set(&moved(&s)), &front(&moved(&f)), &cfg).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
        }

        #[test]
        fn coverage_monotone_in_first_argument(a in points(8), extra in points(4), b in points(8)) {
            let base = coverage(&set(&a), &set(&b)).unwrap();
            let mut grown = a.clone();
            grown.extend(extra);
            prop_assert!(coverage(&set(&grown), &set(&b)).unwrap() >= base);
            prop_assert!((0.0..=1.0).contains(&base));
        }

        #[test]
        fn spacing_permutation_and_translation_invariant(s in points(12), shift in prop::array::uniform2(-3.0f64..3.0)) {
            let a = spacing(&set(&s)).unwrap();
            let mut rev = s.clone();
            rev.reverse();
            let moved: Vec<[f64; 2]> = s.iter().map(|r| [r[0] + shift[0], r[1] + shift[1]]).collect();
            prop_assert!((a - spacing(&set(&rev)).unwrap()).abs() <= 1e-12);
            prop_assert!((a - spacing(&set(&moved)).unwrap()).abs() <= 1e-9);
        }

        #[test]
        fn niche_count_scale_invariant(s in points(12), scale in prop_oneof![Just(0.5f64), Just(2.0), Just(4.0), Just(0.25)]) {
            // Powers of two scale exactly, so the strict comparison is unaffected.
            let cfg = IndicatorConfig::default();
            let scaled: Vec<[f64; 2]> = s.iter().map(|r| [r[0] * scale, r[1] * scale]).collect();
            let a = niche_count(&set(&s), &cfg).unwrap();
            prop_assert_eq!(a, niche_count(&set(&scaled), &cfg).unwrap());
            prop_assert!(a >= 0.0 && a <= s.len() as f64);
        }
    }
}
