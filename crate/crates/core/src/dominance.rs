//! Pareto dominance for minimization.
//!
//! Comparisons use exact floating-point ordering; there is no epsilon.

use crate::error::{Error, Result};

fn check_len(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

/// `a` dominates `b`: no worse in every objective and strictly better in one.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_len(a, b)?;
    Ok(dominates_unchecked(a, b))
}

/// `a` weakly dominates `b`: no worse in every objective. Reflexive.
pub fn weakly_dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_len(a, b)?;
    Ok(weakly_dominates_unchecked(a, b))
}

pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

pub(crate) fn weakly_dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Indices of the points not dominated by any other point of the slice.
/// Duplicates of a non-dominated point are all kept.
pub fn nondominated_indices<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            !points
                .iter()
                .any(|q| dominates_unchecked(q.as_ref(), points[i].as_ref()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dominance_examples() {
        assert!(dominates(&[1.0, 2.0], &[2.0, 3.0]).unwrap());
        assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
        assert!(!dominates(&[1.0, 3.0], &[3.0, 1.0]).unwrap());
        assert!(!dominates(&[3.0, 1.0], &[1.0, 3.0]).unwrap());
    }

    #[test]
    fn weak_dominance_examples() {
        assert!(weakly_dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
        assert!(weakly_dominates(&[1.0, 2.0], &[2.0, 2.0]).unwrap());
        assert!(!weakly_dominates(&[2.0, 1.0], &[1.0, 2.0]).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(
            dominates(&[1.0], &[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        ));
        assert!(weakly_dominates(&[1.0, 2.0, 3.0], &[1.0]).is_err());
    }

    #[test]
    fn nondominated_keeps_duplicates() {
        let pts = vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![2.0, 2.0], vec![0.0, 3.0]];
        assert_eq!(nondominated_indices(&pts), vec![0, 1, 3]);
    }

    fn small_vec(m: usize) -> impl Strategy<Value = Vec<f64>> {
        // Small integer grid so ties and equal vectors actually occur.
        prop::collection::vec((0i32..4).prop_map(f64::from), m)
    }

    proptest! {
        #[test]
        fn dominance_is_a_strict_partial_order(
            a in small_vec(3), b in small_vec(3), c in small_vec(3)
        ) {
            prop_assert!(!dominates(&a, &a).unwrap());
            if dominates(&a, &b).unwrap() {
                prop_assert!(!dominates(&b, &a).unwrap());
                prop_assert!(weakly_dominates(&a, &b).unwrap());
                if dominates(&b, &c).unwrap() {
                    prop_assert!(dominates(&a, &c).unwrap());
                }
            }
        }

        #[test]
        fn weak_dominance_is_a_preorder(
            a in small_vec(2), b in small_vec(2), c in small_vec(2)
        ) {
            prop_assert!(weakly_dominates(&a, &a).unwrap());
            if weakly_dominates(&a, &b).unwrap() && weakly_dominates(&b, &c).unwrap() {
                prop_assert!(weakly_dominates(&a, &c).unwrap());
            }
        }
    }
}
