mod common;

use moea_core::nsga2::{environmental_select, fast_nondominated_sort};
use moea_core::{CrowdingMode, DecisionVector, Individual, ObjectiveVector, Population};
use proptest::prelude::*;

fn points(max_n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..=3).prop_flat_map(move |m| {
        prop_oneof![
            prop::collection::vec(prop::collection::vec(0u8..4, m), 1..=max_n)
                .prop_map(|v| v.into_iter().map(|p| p.into_iter().map(f64::from).collect()).collect()),
            prop::collection::vec(prop::collection::vec(-10.0f64..10.0, m), 1..=max_n),
        ]
    })
}

fn population(pts: &[Vec<f64>]) -> Population {
    // The decision vector carries the member's original index.
    let members = pts
        .iter()
        .enumerate()
        .map(|(i, f)| Individual::from_parts(DecisionVector::new(vec![i as f64]), ObjectiveVector::new(f.clone())))
        .collect();
    Population::from_members(pts.len() / 2, members).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn fast_sort_equals_peeling(pts in points(64)) {
        prop_assert_eq!(fast_nondominated_sort(&pts).fronts, common::peel(&pts));
    }

    #[test]
    fn ranks_satisfy_the_dominance_contract(pts in points(40)) {
        let ranks = fast_nondominated_sort(&pts).ranks();
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                if common::dominates(&pts[i], &pts[j]) {
                    prop_assert!(ranks[i] < ranks[j]);
                }
            }
            if ranks[i] > 0 {
                prop_assert!((0..pts.len()).any(|j| ranks[j] == ranks[i] - 1 && common::dominates(&pts[j], &pts[i])));
            }
        }
    }

    #[test]
    fn environmental_selection_matches_oracle(
        pts in prop::collection::vec(prop::collection::vec(0u8..5, 2), 8)
            .prop_map(|v| v.into_iter().map(|p| p.into_iter().map(f64::from).collect::<Vec<f64>>()).collect::<Vec<_>>()),
        improved in any::<bool>(),
    ) {
        let mode = if improved { CrowdingMode::Improved } else { CrowdingMode::Initial };
        let survivors = environmental_select(population(&pts), 4, mode).unwrap();
        let mut got: Vec<usize> = survivors.iter().map(|m| m.x()[0] as usize).collect();
        got.sort_unstable();
        prop_assert_eq!(got, common::select(&pts, 4, improved));
        prop_assert!(survivors.iter().all(|m| m.rank().is_some() && m.crowding().is_some()));
    }

    #[test]
    fn environmental_selection_matches_oracle_continuous(
        pts in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), 20),
        improved in any::<bool>(),
    ) {
        let mode = if improved { CrowdingMode::Improved } else { CrowdingMode::Initial };
        let survivors = environmental_select(population(&pts), 10, mode).unwrap();
        let mut got: Vec<usize> = survivors.iter().map(|m| m.x()[0] as usize).collect();
        got.sort_unstable();
        prop_assert_eq!(got, common::select(&pts, 10, improved));
    }
}
