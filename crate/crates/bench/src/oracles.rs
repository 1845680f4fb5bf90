//! Brute-force reference implementations, written for clarity rather than
//! speed and sharing no code with the library routines they check.

fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Repeatedly peel off the members no remaining member dominates.
/// Each front lists indices in ascending order.
pub fn peel_fronts(points: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let front: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| !remaining.iter().any(|&j| dominates(&points[j], &points[i])))
            .collect();
        remaining.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

/// GD against every front point, without pruning.
pub fn gd(set: &[Vec<f64>], front: &[Vec<f64>], q: u32) -> f64 {
    let total: f64 = set
        .iter()
        .map(|p| {
            let d = front.iter().map(|r| euclid(p, r)).fold(f64::INFINITY, f64::min);
            d.powi(q as i32)
        })
        .sum();
    total.powf(1.0 / f64::from(q)) / set.len() as f64
}

/// Share of `b` that some member of `a` is no worse than in every objective.
pub fn coverage(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mut covered = 0;
    for y in b {
        if a.iter().any(|x| x.iter().zip(y).all(|(u, v)| u <= v)) {
            covered += 1;
        }
    }
    covered as f64 / b.len() as f64
}

/// Spacing with the two-pass sample variance.
pub fn spacing(set: &[Vec<f64>]) -> f64 {
    let n = set.len();
    let mut d = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let m: f64 = set[i].iter().zip(&set[j]).map(|(x, y)| (x - y).abs()).sum();
                d[i] = d[i].min(m);
            }
        }
    }
    let mean = d.iter().sum::<f64>() / n as f64;
    let ss: f64 = d.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n as f64 - 1.0)).sqrt()
}

/// Niche count: for every member, the number of others strictly farther
/// than `sigma_fraction` times the largest pairwise distance; summed and
/// divided by `|S| - 1`.
pub fn niche_count(set: &[Vec<f64>], sigma_fraction: f64) -> f64 {
    let n = set.len();
    let mut diam = 0.0f64;
    for a in set {
        for b in set {
            diam = diam.max(euclid(a, b));
        }
    }
    let sigma = sigma_fraction * diam;
    let mut total = 0usize;
    for i in 0..n {
        total += (0..n).filter(|&j| j != i && euclid(&set[i], &set[j]) > sigma).count();
    }
    total as f64 / (n - 1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peeling_small_case() {
        let pts = vec![vec![1.0, 1.0], vec![0.0, 2.0], vec![2.0, 2.0], vec![3.0, 3.0], vec![1.0, 1.0]];
        assert_eq!(peel_fronts(&pts), vec![vec![0, 1, 4], vec![2], vec![3]]);
    }

    #[test]
    fn hand_values() {
        let front = vec![vec![0.0, 0.0]];
        assert_eq!(gd(&[vec![3.0, 4.0], vec![0.0, 0.0]], &front, 2), 2.5);
        let s = vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![0.0, 10.0]];
        assert_eq!(niche_count(&s, 0.1), 2.0);
        assert_eq!(coverage(&s[..1], &s), 1.0);
        assert_eq!(coverage(&s[2..], &s), 1.0 / 3.0);
    }
}
