//! Mating selection and variation: binary tournament, convex crossover and
//! polynomial mutation.

use std::cmp::Ordering;

use crate::benchmarks::{Bounds, Problem};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::types::{DecisionVector, Individual, Population};

/// How a tournament picks its winner among the drawn candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WinnerRule {
    /// Lower rank wins; equal rank is decided by larger crowding distance.
    #[default]
    CrowdedComparison,
    /// Lower rank wins; crowding is ignored.
    RankOnly,
}

/// Parameters shared by all variation operators.
///
/// `p_mutation` gates each variable independently: every coordinate of a
/// child is perturbed with that probability.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationConfig {
    pub p_crossover: f64,
    pub p_mutation: f64,
    pub tournament_k: usize,
    pub eta_m: f64,
    pub winner: WinnerRule,
}

impl Default for VariationConfig {
    fn default() -> Self {
        Self {
            p_crossover: 0.9,
            p_mutation: 0.1,
            tournament_k: 2,
            eta_m: 20.0,
            winner: WinnerRule::CrowdedComparison,
        }
    }
}

impl VariationConfig {
    pub fn validate(&self) -> Result<()> {
        let unit = 0.0..=1.0;
        if !unit.contains(&self.p_crossover) {
            return Err(Error::contract(format!(
                "crossover probability {} outside [0, 1]",
                self.p_crossover
            )));
        }
        if !unit.contains(&self.p_mutation) {
            return Err(Error::contract(format!(
                "mutation probability {} outside [0, 1]",
                self.p_mutation
            )));
        }
        if self.tournament_k < 2 {
            return Err(Error::contract("tournament size must be at least 2"));
        }
        if !(self.eta_m > 0.0 && self.eta_m.is_finite()) {
            return Err(Error::contract(format!(
                "mutation index {} must be positive",
                self.eta_m
            )));
        }
        Ok(())
    }
}

/// Crowded-comparison order: `Less` means `a` is preferred.
pub fn crowded_cmp(a: &Individual, b: &Individual) -> Ordering {
    let rank = a.rank().cmp(&b.rank());
    rank.then_with(|| {
        let ca = a.crowding().unwrap_or(0.0);
        let cb = b.crowding().unwrap_or(0.0);
        cb.total_cmp(&ca)
    })
}

fn winner_cmp(rule: WinnerRule, a: &Individual, b: &Individual) -> Ordering {
    match rule {
        WinnerRule::CrowdedComparison => crowded_cmp(a, b),
        WinnerRule::RankOnly => a.rank().cmp(&b.rank()),
    }
}

/// Draw `tournament_k` distinct members uniformly and return the winner.
/// Candidates tied under the winner rule are picked between uniformly.
pub fn tournament_select<'a>(
    pop: &'a Population,
    cfg: &VariationConfig,
    rng: &mut RngStream,
) -> Result<&'a Individual> {
    let members = pop.members();
    if members.len() < cfg.tournament_k {
        return Err(Error::contract(format!(
            "tournament of size {} over {} members",
            cfg.tournament_k,
            members.len()
        )));
    }
    if members
        .iter()
        .any(|m| m.rank().is_none() || m.crowding().is_none())
    {
        return Err(Error::contract(
            "tournament requires rank and crowding annotations",
        ));
    }

    let drawn = rand::seq::index::sample(rng, members.len(), cfg.tournament_k);
    let mut best: Vec<usize> = Vec::with_capacity(cfg.tournament_k);
    for idx in drawn.iter() {
        match best.first() {
            None => best.push(idx),
            Some(&b) => match winner_cmp(cfg.winner, &members[idx], &members[b]) {
                Ordering::Less => {
                    best.clear();
                    best.push(idx);
                }
                Ordering::Equal => best.push(idx),
                Ordering::Greater => {}
            },
        }
    }
    let pick = if best.len() == 1 {
        best[0]
    } else {
        best[rng.below(best.len())]
    };
    Ok(&members[pick])
}

/// Per-variable convex combination: `c1 = l*p1 + (1-l)*p2`,
/// `c2 = (1-l)*p1 + l*p2`, with `l = lambdas[i]` for variable `i`.
pub fn convex_combine(
    p1: &[f64],
    p2: &[f64],
    lambdas: &[f64],
) -> Result<(DecisionVector, DecisionVector)> {
    if p1.len() != p2.len() || p1.len() != lambdas.len() {
        return Err(Error::DimensionMismatch {
            expected: p1.len(),
            found: if p2.len() != p1.len() { p2.len() } else { lambdas.len() },
        });
    }
    let (c1, c2) = p1
        .iter()
        .zip(p2)
        .zip(lambdas)
        .map(|((&a, &b), &l)| (l * a + (1.0 - l) * b, (1.0 - l) * a + l * b))
        .unzip();
    Ok((DecisionVector::new(c1), DecisionVector::new(c2)))
}

/// With probability `p_crossover` mix the parents with fresh per-variable
/// weights; otherwise return copies.
pub fn convex_crossover(
    p1: &DecisionVector,
    p2: &DecisionVector,
    cfg: &VariationConfig,
    rng: &mut RngStream,
) -> Result<(DecisionVector, DecisionVector)> {
    if p1.len() != p2.len() {
        return Err(Error::DimensionMismatch {
            expected: p1.len(),
            found: p2.len(),
        });
    }
    if !rng.chance(cfg.p_crossover) {
        return Ok((p1.clone(), p2.clone()));
    }
    let lambdas: Vec<f64> = (0..p1.len()).map(|_| rng.uniform()).collect();
    convex_combine(p1, p2, &lambdas)
}

/// Polynomial perturbation for a uniform draw `u` in `[0, 1)`, as a
/// fraction of the variable range. Zero at `u = 0.5`, within `[-1, 1]`.
pub fn polynomial_delta(u: f64, eta_m: f64) -> f64 {
    let exponent = 1.0 / (eta_m + 1.0);
    if u < 0.5 {
        (2.0 * u).powf(exponent) - 1.0
    } else {
        1.0 - (2.0 * (1.0 - u)).powf(exponent)
    }
}

/// Mutate one variable with a given draw, clamping into `bounds`.
/// A degenerate interval leaves the value unchanged.
pub fn mutate_value(value: f64, bounds: Bounds, u: f64, eta_m: f64) -> f64 {
    let width = bounds.width();
    if width <= 0.0 {
        return value;
    }
    bounds.clamp(value + polynomial_delta(u, eta_m) * width)
}

pub fn polynomial_mutation(
    x: &DecisionVector,
    bounds: &[Bounds],
    cfg: &VariationConfig,
    rng: &mut RngStream,
) -> Result<DecisionVector> {
    if x.len() != bounds.len() {
        return Err(Error::DimensionMismatch {
            expected: bounds.len(),
            found: x.len(),
        });
    }
    let out = x
        .iter()
        .zip(bounds)
        .map(|(&v, &b)| {
            if rng.chance(cfg.p_mutation) {
                let u = rng.uniform();
                mutate_value(v, b, u, cfg.eta_m)
            } else {
                v
            }
        })
        .collect();
    Ok(DecisionVector::new(out))
}

fn clamp_into(x: DecisionVector, bounds: &[Bounds]) -> DecisionVector {
    let mut v = x.into_inner();
    for (xi, b) in v.iter_mut().zip(bounds) {
        *xi = b.clamp(*xi);
    }
    DecisionVector::new(v)
}

/// Produce `|pop|` evaluated children by tournament, crossover and mutation.
pub fn make_offspring(
    pop: &Population,
    problem: &Problem,
    cfg: &VariationConfig,
    rng: &mut RngStream,
) -> Result<Population> {
    let n = pop.len();
    let mut children = Vec::with_capacity(n + 1);
    while children.len() < n {
        let a = tournament_select(pop, cfg, rng)?;
        let b = tournament_select(pop, cfg, rng)?;
        let (c1, c2) = convex_crossover(a.x(), b.x(), cfg, rng)?;
        for c in [c1, c2] {
            // Convex weights keep children inside the box up to rounding.
            let c = clamp_into(c, problem.bounds());
            let c = polynomial_mutation(&c, problem.bounds(), cfg, rng)?;
            children.push(Individual::new(problem, c)?);
        }
    }
    children.truncate(n);
    Population::from_members(pop.capacity(), children)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::ProblemKind;
    use crate::types::ObjectiveVector;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn annotated(rank: usize, crowding: f64, tag: f64) -> Individual {
        let mut ind = Individual::from_parts(
            DecisionVector::new(vec![tag]),
            ObjectiveVector::new(vec![tag, -tag]),
        );
        ind.set_rank(rank);
        ind.set_crowding(crowding);
        ind
    }

    fn pop_of(members: Vec<Individual>) -> Population {
        Population::from_members(members.len(), members).unwrap()
    }

    #[test]
    fn default_config() {
        let cfg = VariationConfig::default();
        assert_eq!(cfg.p_crossover, 0.9);
        assert_eq!(cfg.p_mutation, 0.1);
        assert_eq!(cfg.tournament_k, 2);
        assert_eq!(cfg.eta_m, 20.0);
        cfg.validate().unwrap();
    }

    #[test]
    fn invalid_configs() {
        let bad = [
            VariationConfig { p_crossover: 1.5, ..Default::default() },
            VariationConfig { p_mutation: -0.1, ..Default::default() },
            VariationConfig { tournament_k: 1, ..Default::default() },
            VariationConfig { eta_m: 0.0, ..Default::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn lower_rank_wins() {
        let pop = pop_of(vec![annotated(0, 0.1, 0.0), annotated(1, f64::INFINITY, 1.0)]);
        let cfg = VariationConfig::default();
        let mut rng = RngStream::new(3);
        for _ in 0..50 {
            assert_eq!(tournament_select(&pop, &cfg, &mut rng).unwrap().rank(), Some(0));
        }
    }

    #[test]
    fn larger_crowding_breaks_rank_tie() {
        let pop = pop_of(vec![annotated(1, f64::INFINITY, 0.0), annotated(1, 0.4, 1.0)]);
        let cfg = VariationConfig::default();
        let mut rng = RngStream::new(4);
        for _ in 0..50 {
            let w = tournament_select(&pop, &cfg, &mut rng).unwrap();
            assert_eq!(w.crowding(), Some(f64::INFINITY));
        }
    }

    #[test]
    fn rank_only_rule_ignores_crowding() {
        let pop = pop_of(vec![annotated(1, f64::INFINITY, 0.0), annotated(1, 0.4, 1.0)]);
        let cfg = VariationConfig { winner: WinnerRule::RankOnly, ..Default::default() };
        let mut rng = RngStream::new(5);
        let wins = (0..2000)
            .filter(|_| tournament_select(&pop, &cfg, &mut rng).unwrap().crowding() == Some(0.4))
            .count();
        assert!((800..1200).contains(&wins), "{wins}");
    }

    #[test]
    fn full_tie_is_fair() {
        let pop = pop_of(vec![annotated(0, 1.0, 0.0), annotated(0, 1.0, 1.0)]);
        let cfg = VariationConfig::default();
        let mut rng = RngStream::new(11);
        let trials = 10_000;
        let first = (0..trials)
            .filter(|_| tournament_select(&pop, &cfg, &mut rng).unwrap().x()[0] == 0.0)
            .count();
        let freq = first as f64 / trials as f64;
        assert!((freq - 0.5).abs() <= 0.05, "{freq}");
    }

    #[test]
    fn unannotated_population_rejected() {
        let sch = Problem::new(ProblemKind::Sch);
        let members = vec![
            Individual::new(&sch, vec![0.0].into()).unwrap(),
            Individual::new(&sch, vec![1.0].into()).unwrap(),
        ];
        let pop = pop_of(members);
        let err = tournament_select(&pop, &VariationConfig::default(), &mut RngStream::new(0));
        assert!(matches!(err, Err(Error::Contract(_))));
    }

    #[test]
    fn tournament_needs_k_members() {
        let pop = pop_of(vec![annotated(0, 1.0, 0.0)]);
        assert!(tournament_select(&pop, &VariationConfig::default(), &mut RngStream::new(0)).is_err());
    }

    #[test]
    fn convex_endpoints_and_midpoint() {
        let p1 = [1.0, -2.0, 3.0];
        let p2 = [4.0, 5.0, -6.0];
        let (c1, c2) = convex_combine(&p1, &p2, &[0.0; 3]).unwrap();
        assert_eq!(&*c1, &p2);
        assert_eq!(&*c2, &p1);
        let (c1, c2) = convex_combine(&p1, &p2, &[0.5; 3]).unwrap();
        assert_eq!(&*c1, &[2.5, 1.5, -1.5]);
        assert_eq!(c1, c2);
    }

    #[test]
    fn convex_quarter_weight() {
        let (c1, c2) = convex_combine(&[0.0], &[2.0], &[0.25]).unwrap();
        assert_eq!(&*c1, &[1.5]);
        assert_eq!(&*c2, &[0.5]);
    }

    #[test]
    fn crossover_length_mismatch() {
        let err = convex_crossover(
            &vec![0.0].into(),
            &vec![0.0, 1.0].into(),
            &VariationConfig::default(),
            &mut RngStream::new(0),
        );
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn crossover_disabled_copies_parents() {
        let cfg = VariationConfig { p_crossover: 0.0, ..Default::default() };
        let p1: DecisionVector = vec![0.1, 0.2].into();
        let p2: DecisionVector = vec![0.7, 0.9].into();
        let (c1, c2) = convex_crossover(&p1, &p2, &cfg, &mut RngStream::new(9)).unwrap();
        assert_eq!((c1, c2), (p1, p2));
    }

    #[test]
    fn mutation_gate_closed_is_identity() {
        let cfg = VariationConfig { p_mutation: 0.0, ..Default::default() };
        let x: DecisionVector = vec![0.3; 30].into();
        let bounds = ProblemKind::Zdt1.bounds();
        let y = polynomial_mutation(&x, &bounds, &cfg, &mut RngStream::new(1)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn delta_at_midpoint_is_zero() {
        assert_eq!(polynomial_delta(0.5, 20.0), 0.0);
        assert_eq!(mutate_value(0.3, Bounds::new(0.0, 1.0), 0.5, 20.0), 0.3);
    }

    #[test]
    fn hand_evaluated_mutation() {
        // delta = 1 - (2 * 0.1)^(1/21) = 0.073783...
        let expected = 0.5 + (1.0 - 0.2f64.powf(1.0 / 21.0));
        let got = mutate_value(0.5, Bounds::new(0.0, 1.0), 0.9, 20.0);
        assert_abs_diff_eq!(got, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(got, 0.573_78, epsilon = 1e-5);
    }

    #[test]
    fn degenerate_bounds_leave_value() {
        assert_eq!(mutate_value(2.0, Bounds::new(2.0, 2.0), 0.99, 20.0), 2.0);
    }

    #[test]
    fn offspring_without_variation_are_copies() {
        let sch = Problem::new(ProblemKind::Sch);
        let mut members: Vec<Individual> = [0.0, 1.0]
            .iter()
            .map(|&v| Individual::new(&sch, vec![v].into()).unwrap())
            .collect();
        for m in &mut members {
            m.set_rank(0);
            m.set_crowding(f64::INFINITY);
        }
        let pop = pop_of(members);
        let cfg = VariationConfig { p_crossover: 0.0, p_mutation: 0.0, ..Default::default() };
        let kids = make_offspring(&pop, &sch, &cfg, &mut RngStream::new(8)).unwrap();
        assert_eq!(kids.len(), 2);
        for k in &kids {
            assert!(pop.iter().any(|p| p.x() == k.x() && p.f() == k.f()));
            assert_eq!(k.rank(), None);
        }
    }

    fn random_annotated_pop(problem: &Problem, n: usize, rng: &mut RngStream) -> Population {
        let members = (0..n)
            .map(|i| {
                let x = problem
                    .bounds()
                    .iter()
                    .map(|b| b.lower + rng.uniform() * b.width())
                    .collect::<Vec<_>>();
                let mut ind = Individual::new(problem, x.into()).unwrap();
                ind.set_rank(i % 3);
                ind.set_crowding(rng.uniform());
                ind
            })
            .collect();
        Population::from_members(n, members).unwrap()
    }

    #[test]
    fn offspring_count_and_replay() {
        let zdt1 = Problem::new(ProblemKind::Zdt1);
        for n in [50, 7] {
            let pop = random_annotated_pop(&zdt1, n, &mut RngStream::new(2));
            let cfg = VariationConfig::default();
            let a = make_offspring(&pop, &zdt1, &cfg, &mut RngStream::new(77)).unwrap();
            let b = make_offspring(&pop, &zdt1, &cfg, &mut RngStream::new(77)).unwrap();
            assert_eq!(a.len(), n);
            assert_eq!(a, b);
        }
    }

    proptest! {
        #[test]
        fn offspring_respect_bounds(seed in any::<u64>(), pick in 0usize..9) {
            let problem = Problem::new(ProblemKind::ALL[pick]);
            let mut rng = RngStream::new(seed);
            let pop = random_annotated_pop(&problem, 10, &mut rng);
            let cfg = VariationConfig { p_mutation: 0.5, ..Default::default() };
            let kids = make_offspring(&pop, &problem, &cfg, &mut rng).unwrap();
            for k in &kids {
                prop_assert!(problem.check_bounds(k.x()).is_ok());
            }
        }

        #[test]
        fn winner_never_crowded_dominated(
            seed in any::<u64>(),
            specs in prop::collection::vec((0usize..3, 0u8..4), 2..12),
        ) {
            let members: Vec<Individual> = specs
                .iter()
                .enumerate()
                .map(|(i, &(r, c))| {
                    let crowd = if c == 3 { f64::INFINITY } else { f64::from(c) };
                    annotated(r, crowd, i as f64)
                })
                .collect();
            let pop = pop_of(members);
            // Every member is drawn, so the winner must not lose to any of them.
            let cfg = VariationConfig { tournament_k: pop.len(), ..Default::default() };
            let w = tournament_select(&pop, &cfg, &mut RngStream::new(seed)).unwrap();
            for other in &pop {
                prop_assert_ne!(crowded_cmp(other, w), Ordering::Less);
            }
        }
    }
}
