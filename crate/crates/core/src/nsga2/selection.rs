use super::crowding::{crowding_distances, CrowdingMode, Normalization};
use super::sort::{fast_nondominated_sort, RankPartition};
use crate::error::{Error, Result};
use crate::types::{Individual, Population};

/// Sort `pop`, writing each member's rank. Crowding is left untouched.
pub fn assign_ranks(pop: &mut Population) -> RankPartition {
    let partition = fast_nondominated_sort(pop.members());
    let members = pop.members_mut();
    for (rank, front) in partition.fronts.iter().enumerate() {
        for &i in front {
            members[i].set_rank(rank);
        }
    }
    partition
}

/// Reduce a merged parent+offspring population to `capacity` members.
///
/// Whole fronts are admitted in rank order while they fit. The first front
/// that does not fit is ranked by crowding distance (computed over that
/// whole front) in descending order, ties broken by member position, and
/// cut to fill exactly `capacity` slots. Survivors keep their rank and the
/// crowding distance of the front they were evaluated in.
pub fn environmental_select(
    mut merged: Population,
    capacity: usize,
    mode: CrowdingMode,
) -> Result<Population> {
    if merged.len() < capacity {
        return Err(Error::contract(format!(
            "cannot select {capacity} survivors from {} members",
            merged.len()
        )));
    }
    let partition = assign_ranks(&mut merged);
    let mut slots: Vec<Option<Individual>> = merged.into_members().into_iter().map(Some).collect();
    let mut survivors = Vec::with_capacity(capacity);

    for front in &partition.fronts {
        let remaining = capacity - survivors.len();
        if remaining == 0 {
            break;
        }
        let objectives: Vec<&[f64]> = front
            .iter()
            .map(|&i| slots[i].as_ref().expect("each index used once").f().as_ref())
            .collect();
        let crowding = crowding_distances(&objectives, mode, Normalization::Range);

        let mut chosen: Vec<usize> = (0..front.len()).collect();
        if front.len() > remaining {
            chosen.sort_by(|&a, &b| crowding[b].total_cmp(&crowding[a]).then(a.cmp(&b)));
            chosen.truncate(remaining);
            chosen.sort_unstable();
        }
        for pos in chosen {
            let mut ind = slots[front[pos]].take().expect("each index used once");
            ind.set_crowding(crowding[pos]);
            survivors.push(ind);
        }
    }
    Population::from_members(capacity, survivors)
}
