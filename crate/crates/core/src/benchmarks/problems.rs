use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::types::ObjectiveVector;

/// Closed interval `[lower, upper]` for one decision variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub const fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, value: f64) -> bool {
        value >= self.lower && value <= self.upper
    }

    pub fn clamp(&self, value: f64) -> f64 {
        value.clamp(self.lower, self.upper)
    }
}

/// The nine two-objective test problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    Sch,
    Fon,
    Pol,
    Kur,
    Zdt1,
    Zdt2,
    Zdt3,
    Zdt4,
    Zdt6,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 9] = [
        ProblemKind::Sch,
        ProblemKind::Fon,
        ProblemKind::Pol,
        ProblemKind::Kur,
        ProblemKind::Zdt1,
        ProblemKind::Zdt2,
        ProblemKind::Zdt3,
        ProblemKind::Zdt4,
        ProblemKind::Zdt6,
    ];

    /// Upper-case display name, e.g. `ZDT1`.
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Sch => "SCH",
            ProblemKind::Fon => "FON",
            ProblemKind::Pol => "POL",
            ProblemKind::Kur => "KUR",
            ProblemKind::Zdt1 => "ZDT1",
            ProblemKind::Zdt2 => "ZDT2",
            ProblemKind::Zdt3 => "ZDT3",
            ProblemKind::Zdt4 => "ZDT4",
            ProblemKind::Zdt6 => "ZDT6",
        }
    }

    /// Lower-case slug used in file names and on the command line.
    pub fn slug(self) -> &'static str {
        match self {
            ProblemKind::Sch => "sch",
            ProblemKind::Fon => "fon",
            ProblemKind::Pol => "pol",
            ProblemKind::Kur => "kur",
            ProblemKind::Zdt1 => "zdt1",
            ProblemKind::Zdt2 => "zdt2",
            ProblemKind::Zdt3 => "zdt3",
            ProblemKind::Zdt4 => "zdt4",
            ProblemKind::Zdt6 => "zdt6",
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            ProblemKind::Sch => 1,
            ProblemKind::Fon | ProblemKind::Kur => 3,
            ProblemKind::Pol => 2,
            ProblemKind::Zdt1 | ProblemKind::Zdt2 | ProblemKind::Zdt3 => 30,
            ProblemKind::Zdt4 | ProblemKind::Zdt6 => 10,
        }
    }

    pub fn bounds(self) -> Vec<Bounds> {
        let n = self.dimension();
        match self {
            ProblemKind::Sch => vec![Bounds::new(-1e3, 1e3)],
            ProblemKind::Fon => vec![Bounds::new(-4.0, 4.0); n],
            ProblemKind::Pol => vec![Bounds::new(-PI, PI); n],
            ProblemKind::Kur => vec![Bounds::new(-5.0, 5.0); n],
            ProblemKind::Zdt1 | ProblemKind::Zdt2 | ProblemKind::Zdt3 | ProblemKind::Zdt6 => {
                vec![Bounds::new(0.0, 1.0); n]
            }
            ProblemKind::Zdt4 => {
                let mut b = vec![Bounds::new(-5.0, 5.0); n];
                b[0] = Bounds::new(0.0, 1.0);
                b
            }
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

/// A benchmark problem: objective map plus variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    kind: ProblemKind,
    bounds: Vec<Bounds>,
}

impl Problem {
    pub fn new(kind: ProblemKind) -> Self {
        Self {
            kind,
            bounds: kind.bounds(),
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(Self::new(name.parse()?))
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// Decision dimension `n`.
    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    /// Objective dimension `m`; two for every problem here.
    pub fn objectives(&self) -> usize {
        2
    }

    pub fn bounds(&self) -> &[Bounds] {
        &self.bounds
    }

    pub fn check_bounds(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.bounds.len() {
            return Err(Error::DimensionMismatch {
                expected: self.bounds.len(),
                found: x.len(),
            });
        }
        for (index, (&value, b)) in x.iter().zip(&self.bounds).enumerate() {
            if !b.contains(value) {
                return Err(Error::OutOfBounds {
                    index,
                    value,
                    lower: b.lower,
                    upper: b.upper,
                });
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<ObjectiveVector> {
        self.check_bounds(x)?;
        let (f1, f2) = objective_map(self.kind, x);
        Ok(ObjectiveVector::new(vec![f1, f2]))
    }
}

/// Evaluate the named problem at `x`.
pub fn evaluate_problem(name: &str, x: &[f64]) -> Result<ObjectiveVector> {
    Problem::by_name(name)?.evaluate(x)
}

/// Objective map without bounds checks.
pub(crate) fn objective_map(kind: ProblemKind, x: &[f64]) -> (f64, f64) {
    match kind {
        ProblemKind::Sch => sch(x[0]),
        ProblemKind::Fon => fon(x),
        ProblemKind::Pol => pol(x[0], x[1]),
        ProblemKind::Kur => kur(x),
        ProblemKind::Zdt1 => {
            let g = zdt_g_linear(x);
            (x[0], g * (1.0 - (x[0] / g).sqrt()))
        }
        ProblemKind::Zdt2 => {
            let g = zdt_g_linear(x);
            (x[0], g * (1.0 - (x[0] / g).powi(2)))
        }
        ProblemKind::Zdt3 => {
            let g = zdt_g_linear(x);
            let r = x[0] / g;
            (x[0], g * (1.0 - r.sqrt() - r * (10.0 * PI * x[0]).sin()))
        }
        ProblemKind::Zdt4 => {
            let rest = &x[1..];
            let g = 1.0
                + 10.0 * rest.len() as f64
                + rest
                    .iter()
                    .map(|v| v * v - 10.0 * (4.0 * PI * v).cos())
                    .sum::<f64>();
            (x[0], g * (1.0 - (x[0] / g).sqrt()))
        }
        ProblemKind::Zdt6 => {
            let f1 = zdt6_f1(x[0]);
            let rest = &x[1..];
            let mean = rest.iter().sum::<f64>() / rest.len() as f64;
            let g = 1.0 + 9.0 * mean.powf(0.25);
            (f1, g * (1.0 - (f1 / g).powi(2)))
        }
    }
}

fn sch(x: f64) -> (f64, f64) {
    (x * x, (x - 2.0).powi(2))
}

fn fon(x: &[f64]) -> (f64, f64) {
    let c = 1.0 / 3f64.sqrt();
    let s1: f64 = x.iter().map(|v| (v - c).powi(2)).sum();
    let s2: f64 = x.iter().map(|v| (v + c).powi(2)).sum();
    (1.0 - (-s1).exp(), 1.0 - (-s2).exp())
}

fn pol(x1: f64, x2: f64) -> (f64, f64) {
    let (s1, c1) = 1f64.sin_cos();
    let (s2, c2) = 2f64.sin_cos();
    let a1 = 0.5 * s1 - 2.0 * c1 + s2 - 1.5 * c2;
    let a2 = 1.5 * s1 - c1 + 2.0 * s2 - 0.5 * c2;
    let b1 = 0.5 * x1.sin() - 2.0 * x1.cos() + x2.sin() - 1.5 * x2.cos();
    let b2 = 1.5 * x1.sin() - x1.cos() + 2.0 * x2.sin() - 0.5 * x2.cos();
    (
        1.0 + (a1 - b1).powi(2) + (a2 - b2).powi(2),
        (x1 + 3.0).powi(2) + (x2 + 1.0).powi(2),
    )
}

fn kur(x: &[f64]) -> (f64, f64) {
    let f1 = x
        .windows(2)
        .map(|w| -10.0 * (-0.2 * (w[0] * w[0] + w[1] * w[1]).sqrt()).exp())
        .sum();
    let f2 = x
        .iter()
        .map(|v| v.abs().powf(0.8) + 5.0 * v.powi(3).sin())
        .sum();
    (f1, f2)
}

/// `g = 1 + 9 * sum(x[1..]) / (n - 1)` shared by ZDT1-3.
fn zdt_g_linear(x: &[f64]) -> f64 {
    let rest = &x[1..];
    1.0 + 9.0 * rest.iter().sum::<f64>() / rest.len() as f64
}

pub(crate) fn zdt6_f1(x1: f64) -> f64 {
    1.0 - (-4.0 * x1).exp() * (6.0 * PI * x1).sin().powi(6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn parse_is_case_insensitive() {
        assert_eq!("zdt1".parse::<ProblemKind>().unwrap(), ProblemKind::Zdt1);
        assert_eq!("Sch".parse::<ProblemKind>().unwrap(), ProblemKind::Sch);
        assert!(matches!(
            "zdt5".parse::<ProblemKind>(),
            Err(Error::UnknownProblem(_))
        ));
    }

    #[test]
    fn dimensions_and_bounds() {
        let expect = [
            (ProblemKind::Sch, 1),
            (ProblemKind::Fon, 3),
            (ProblemKind::Pol, 2),
            (ProblemKind::Kur, 3),
            (ProblemKind::Zdt1, 30),
            (ProblemKind::Zdt2, 30),
            (ProblemKind::Zdt3, 30),
            (ProblemKind::Zdt4, 10),
            (ProblemKind::Zdt6, 10),
        ];
        for (kind, n) in expect {
            assert_eq!(Problem::new(kind).dimension(), n, "{kind}");
        }
        let zdt4 = ProblemKind::Zdt4.bounds();
        assert_eq!(zdt4[0], Bounds::new(0.0, 1.0));
        assert_eq!(zdt4[1], Bounds::new(-5.0, 5.0));
        assert_eq!(ProblemKind::Sch.bounds()[0], Bounds::new(-1000.0, 1000.0));
    }

    #[test]
    fn zdt2_on_front() {
        let mut x = vec![0.0; 30];
        x[0] = 0.5;
        let f = evaluate_problem("zdt2", &x).unwrap();
        assert_eq!(&*f, &[0.5, 0.75]);
    }

    #[test]
    fn zdt4_origin() {
        let f = evaluate_problem("ZDT4", &[0.0; 10]).unwrap();
        assert_eq!(f[0], 0.0);
        assert_abs_diff_eq!(f[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn fon_optimum() {
        let c = 1.0 / 3f64.sqrt();
        let f = evaluate_problem("fon", &[c, c, c]).unwrap();
        assert_eq!(f[0], 0.0);
        assert_abs_diff_eq!(f[1], 1.0 - (-4.0f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn pol_reference_points() {
        // At x = (1, 2) the B terms equal the A terms, so f1 = 1.
        let f = evaluate_problem("pol", &[1.0, 2.0]).unwrap();
        assert_abs_diff_eq!(f[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f[1], 25.0, epsilon = 1e-12);
    }

    #[test]
    fn kur_origin() {
        let f = evaluate_problem("kur", &[0.0; 3]).unwrap();
        assert_abs_diff_eq!(f[0], -20.0, epsilon = 1e-12);
        assert_eq!(f[1], 0.0);
    }

    #[test]
    fn zdt6_on_front() {
        let mut x = vec![0.0; 10];
        x[0] = 0.5;
        let f = evaluate_problem("zdt6", &x).unwrap();
        let f1 = 1.0 - (-2.0f64).exp() * (3.0 * PI).sin().powi(6);
        assert_abs_diff_eq!(f[0], f1, epsilon = 1e-15);
        assert_abs_diff_eq!(f[1], 1.0 - f1 * f1, epsilon = 1e-15);
    }

    #[test]
    fn zdt3_tail_zero_gives_unit_g() {
        let mut x = vec![0.0; 30];
        x[0] = 0.3;
        let f = evaluate_problem("zdt3", &x).unwrap();
        let expect = 1.0 - 0.3f64.sqrt() - 0.3 * (3.0 * PI).sin();
        assert_abs_diff_eq!(f[1], expect, epsilon = 1e-15);
    }

    #[test]
    fn all_problems_finite_on_box_corners_and_center() {
        for kind in ProblemKind::ALL {
            let p = Problem::new(kind);
            let lo: Vec<f64> = p.bounds().iter().map(|b| b.lower).collect();
            let hi: Vec<f64> = p.bounds().iter().map(|b| b.upper).collect();
            let mid: Vec<f64> = p.bounds().iter().map(|b| 0.5 * (b.lower + b.upper)).collect();
            for x in [lo, hi, mid] {
                let f = p.evaluate(&x).unwrap();
                assert!(f.iter().all(|v| v.is_finite()), "{kind} at {x:?}");
            }
        }
    }

    #[test]
    fn wrong_dimension_rejected() {
        assert!(matches!(
            evaluate_problem("sch", &[0.0, 1.0]),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        ));
    }
}
