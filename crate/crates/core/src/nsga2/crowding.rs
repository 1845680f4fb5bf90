use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Which crowding-distance accumulation a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrowdingMode {
    /// Gap between the two sort-neighbors: `f[n+1] - f[n-1]`.
    Initial,
    /// Gap between the individual and its upper neighbor: `f[n+1] - f[n]`.
    Improved,
}

impl CrowdingMode {
    pub const BOTH: [CrowdingMode; 2] = [CrowdingMode::Initial, CrowdingMode::Improved];

    pub fn as_str(self) -> &'static str {
        match self {
            CrowdingMode::Initial => "initial",
            CrowdingMode::Improved => "improved",
        }
    }
}

impl fmt::Display for CrowdingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CrowdingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "initial" => Ok(CrowdingMode::Initial),
            "improved" => Ok(CrowdingMode::Improved),
            other => Err(Error::Contract(format!("unknown crowding mode `{other}`"))),
        }
    }
}

/// Denominator used for each objective's gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Divide by `f_max - f_min` over the front; an objective with zero
    /// range contributes nothing to interior members.
    #[default]
    Range,
    /// Raw objective gaps.
    None,
}

/// Crowding distance of every member of `front`, in input order.
///
/// Per objective, members are ordered by value with ties broken by input
/// position. The first and last members of that order get `+inf`; every
/// other member accumulates its gap according to `mode`. Fronts of one or
/// two members are all boundary.
pub fn crowding_distances<P: AsRef<[f64]>>(
    front: &[P],
    mode: CrowdingMode,
    normalization: Normalization,
) -> Vec<f64> {
    let len = front.len();
    let mut dist = vec![0.0; len];
    if len <= 2 {
        dist.fill(f64::INFINITY);
        return dist;
    }
    let m = front[0].as_ref().len();
    let mut order: Vec<usize> = (0..len).collect();
    for k in 0..m {
        let value = |i: usize| front[i].as_ref()[k];
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)).then(a.cmp(&b)));
        let (first, last) = (order[0], order[len - 1]);
        dist[first] = f64::INFINITY;
        dist[last] = f64::INFINITY;

        let denom = match normalization {
            Normalization::Range => value(last) - value(first),
            Normalization::None => 1.0,
        };
        if denom == 0.0 {
            continue;
        }
        for pos in 1..len - 1 {
            let i = order[pos];
            let upper = value(order[pos + 1]);
            let lower = match mode {
                CrowdingMode::Initial => value(order[pos - 1]),
                CrowdingMode::Improved => value(i),
            };
            dist[i] += (upper - lower) / denom;
        }
    }
    dist
}

/// Range-normalized crowding with the neighbor-gap accumulation.
pub fn crowding_initial<P: AsRef<[f64]>>(front: &[P]) -> Vec<f64> {
    crowding_distances(front, CrowdingMode::Initial, Normalization::Range)
}

/// Range-normalized crowding with the own-to-upper-neighbor accumulation.
pub fn crowding_improved<P: AsRef<[f64]>>(front: &[P]) -> Vec<f64> {
    crowding_distances(front, CrowdingMode::Improved, Normalization::Range)
}
