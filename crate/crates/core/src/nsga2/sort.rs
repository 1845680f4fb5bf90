use crate::dominance::dominates_unchecked;

/// Partition of a population into non-dominated fronts.
///
/// `fronts[0]` holds the indices of rank-0 members, `fronts[1]` rank 1 and
/// so on. Indices inside each front are ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RankPartition {
    pub fronts: Vec<Vec<usize>>,
}

impl RankPartition {
    pub fn len(&self) -> usize {
        self.fronts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fronts.is_empty()
    }

    /// Rank of every member, indexed like the sorted input.
    pub fn ranks(&self) -> Vec<usize> {
        let n = self.fronts.iter().map(Vec::len).sum();
        let mut ranks = vec![0; n];
        for (r, front) in self.fronts.iter().enumerate() {
            for &i in front {
                ranks[i] = r;
            }
        }
        ranks
    }

    pub fn front_sizes(&self) -> Vec<usize> {
        self.fronts.iter().map(Vec::len).collect()
    }
}

/// Fast non-dominated sorting with `O(m N^2)` dominance checks.
pub fn fast_nondominated_sort<P: AsRef<[f64]>>(points: &[P]) -> RankPartition {
    let n = points.len();
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];

    for p in 0..n {
        for q in (p + 1)..n {
            let (a, b) = (points[p].as_ref(), points[q].as_ref());
            if dominates_unchecked(a, b) {
                dominated_by_me[p].push(q);
                domination_count[q] += 1;
            } else if dominates_unchecked(b, a) {
                dominated_by_me[q].push(p);
                domination_count[p] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by_me[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    RankPartition { fronts }
}
