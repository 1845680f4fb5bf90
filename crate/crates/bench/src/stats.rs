use statrs::distribution::{Binomial, DiscreteCDF};

/// Mean of the non-NaN values, or NaN if there are none.
pub fn mean(values: &[f64]) -> f64 {
    let finite: Vec<f64> = values.iter().copied().filter(|v| !v.is_nan()).collect();
    if finite.is_empty() {
        return f64::NAN;
    }
    finite.iter().sum::<f64>() / finite.len() as f64
}

/// Median of the non-NaN values, or NaN if there are none.
pub fn median(values: &[f64]) -> f64 {
    let mut v: Vec<f64> = values.iter().copied().filter(|v| !v.is_nan()).collect();
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Outcome of a paired comparison: how many pairs favor each side.
/// Ties and pairs with a NaN are dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SignCounts {
    pub wins: u64,
    pub losses: u64,
    pub ties: u64,
}

impl SignCounts {
    /// Count pairs where `better(a, b)` holds (wins) against pairs where
    /// `better(b, a)` holds (losses).
    pub fn tally(pairs: impl IntoIterator<Item = (f64, f64)>, better: impl Fn(f64, f64) -> bool) -> Self {
        let mut c = SignCounts::default();
        for (a, b) in pairs {
            if a.is_nan() || b.is_nan() {
                continue;
            }
            if better(a, b) {
                c.wins += 1;
            } else if better(b, a) {
                c.losses += 1;
            } else {
                c.ties += 1;
            }
        }
        c
    }

    /// One-sided sign-test p-value for "wins are more likely than losses".
    pub fn p_value(&self) -> f64 {
        sign_test(self.wins, self.losses)
    }
}

/// One-sided exact sign test: P(X >= wins) for X ~ Binomial(wins + losses, 1/2).
pub fn sign_test(wins: u64, losses: u64) -> f64 {
    let n = wins + losses;
    if n == 0 || wins == 0 {
        return 1.0;
    }
    let dist = Binomial::new(0.5, n).expect("p = 0.5 is a valid probability");
    dist.sf(wins - 1).clamp(0.0, 1.0)
}
