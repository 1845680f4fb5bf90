use std::ops::Deref;

use crate::benchmarks::Problem;
use crate::error::{Error, Result};

/// Point in decision space.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionVector(Vec<f64>);

impl DecisionVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for DecisionVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for DecisionVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

/// Point in objective space. Every objective is minimized.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for ObjectiveVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for ObjectiveVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

/// Apply the problem's objective map to `x`.
pub fn evaluate(problem: &Problem, x: &DecisionVector) -> Result<ObjectiveVector> {
    problem.evaluate(x)
}

/// A decision vector together with its cached objectives and the
/// annotations written by sorting and crowding.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    x: DecisionVector,
    f: ObjectiveVector,
    rank: Option<usize>,
    crowding: Option<f64>,
}

impl Individual {
    /// Evaluate `x` on `problem` and wrap the result.
    pub fn new(problem: &Problem, x: DecisionVector) -> Result<Self> {
        let f = problem.evaluate(&x)?;
        Ok(Self::from_parts(x, f))
    }

    /// Wrap an already-evaluated pair. The caller guarantees `f` is the
    /// objective image of `x`.
    pub fn from_parts(x: DecisionVector, f: ObjectiveVector) -> Self {
        Self {
            x,
            f,
            rank: None,
            crowding: None,
        }
    }

    pub fn x(&self) -> &DecisionVector {
        &self.x
    }

    pub fn f(&self) -> &ObjectiveVector {
        &self.f
    }

    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    pub fn crowding(&self) -> Option<f64> {
        self.crowding
    }

    pub fn set_rank(&mut self, rank: usize) {
        self.rank = Some(rank);
    }

    pub fn set_crowding(&mut self, crowding: f64) {
        debug_assert!(crowding >= 0.0, "crowding must be nonnegative");
        self.crowding = Some(crowding);
    }

    pub fn clear_annotations(&mut self) {
        self.rank = None;
        self.crowding = None;
    }
}

impl AsRef<[f64]> for Individual {
    fn as_ref(&self) -> &[f64] {
        &self.f
    }
}

/// Ordered multiset of individuals with a nominal capacity `N`.
///
/// It may temporarily hold up to `2N` members (parents merged with
/// offspring); environmental selection brings it back to exactly `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    members: Vec<Individual>,
    capacity: usize,
}

impl Population {
    pub fn new(capacity: usize) -> Self {
        Self {
            members: Vec::with_capacity(2 * capacity),
            capacity,
        }
    }

    pub fn from_members(capacity: usize, members: Vec<Individual>) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::contract("population capacity must be positive"));
        }
        if members.len() > 2 * capacity {
            return Err(Error::contract(format!(
                "{} members exceed twice the capacity {}",
                members.len(),
                capacity
            )));
        }
        Ok(Self { members, capacity })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn push(&mut self, individual: Individual) -> Result<()> {
        if self.members.len() >= 2 * self.capacity {
            return Err(Error::contract("population is full (2N members)"));
        }
        self.members.push(individual);
        Ok(())
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn members_mut(&mut self) -> &mut [Individual] {
        &mut self.members
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Individual> {
        self.members.iter()
    }

    /// Concatenate `other` after `self` (parents first, offspring second).
    pub fn merge(mut self, other: Population) -> Result<Population> {
        if self.members.len() + other.members.len() > 2 * self.capacity {
            return Err(Error::contract("merged population exceeds 2N members"));
        }
        self.members.extend(other.members);
        Ok(self)
    }

    /// Objective vectors of the rank-0 members, in population order.
    pub fn first_front(&self) -> Vec<ObjectiveVector> {
        self.members
            .iter()
            .filter(|ind| ind.rank == Some(0))
            .map(|ind| ind.f.clone())
            .collect()
    }
}

impl<'a> IntoIterator for &'a Population {
    type Item = &'a Individual;
    type IntoIter = std::slice::Iter<'a, Individual>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
