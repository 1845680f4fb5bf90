#![allow(dead_code)]

pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
}

/// Fronts by repeated peeling, indices ascending within each front.
pub fn peel(points: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !left.is_empty() {
        let front: Vec<usize> = left
            .iter()
            .copied()
            .filter(|&i| left.iter().all(|&j| !dominates(&points[j], &points[i])))
            .collect();
        left.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

/// Crowding of the members of `front` (indices into `points`), range
/// normalized, with sort ties broken by position in `front`.
pub fn crowding(points: &[Vec<f64>], front: &[usize], improved: bool) -> Vec<f64> {
    let n = front.len();
    let mut d = vec![0.0; n];
    for k in 0..points[front[0]].len() {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| points[front[a]][k].total_cmp(&points[front[b]][k]).then(a.cmp(&b)));
        let lo = points[front[order[0]]][k];
        let hi = points[front[order[n - 1]]][k];
        d[order[0]] = f64::INFINITY;
        d[order[n - 1]] = f64::INFINITY;
        if hi == lo {
            continue;
        }
        for s in 1..n.saturating_sub(1) {
            let next = points[front[order[s + 1]]][k];
            let here = if improved {
                points[front[order[s]]][k]
            } else {
                points[front[order[s - 1]]][k]
            };
            d[order[s]] += (next - here) / (hi - lo);
        }
    }
    d
}

/// Survivor indices (ascending) of environmental selection.
pub fn select(points: &[Vec<f64>], capacity: usize, improved: bool) -> Vec<usize> {
    let mut chosen = Vec::new();
    for front in peel(points) {
        if chosen.len() + front.len() <= capacity {
            chosen.extend(front);
            continue;
        }
        let d = crowding(points, &front, improved);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| d[b].total_cmp(&d[a]).then(front[a].cmp(&front[b])));
        let need = capacity - chosen.len();
        chosen.extend(order[..need].iter().map(|&i| front[i]));
        break;
    }
    chosen.sort_unstable();
    chosen
}
