use super::crowding::CrowdingMode;
use super::selection::environmental_select;
use crate::benchmarks::Problem;
use crate::error::{Error, Result};
use crate::operators::{make_offspring, VariationConfig};
use crate::rng::RngStream;
use crate::types::{DecisionVector, Individual, Population};

/// Hook into the generation loop. Both methods default to no-ops.
pub trait Observer {
    /// Called once with the random initial parents and offspring.
    fn on_start(&mut self, _parents: &Population, _offspring: &Population) {}

    /// Called after each environmental selection, `generation` counting from 1.
    fn on_generation(&mut self, _generation: usize, _population: &Population) {}
}

impl Observer for () {}

/// Observer that keeps a full snapshot of every generation.
#[derive(Debug, Default, Clone)]
pub struct History {
    pub initial: Option<(Population, Population)>,
    pub generations: Vec<Population>,
}

impl Observer for History {
    fn on_start(&mut self, parents: &Population, offspring: &Population) {
        self.initial = Some((parents.clone(), offspring.clone()));
    }

    fn on_generation(&mut self, _generation: usize, population: &Population) {
        self.generations.push(population.clone());
    }
}

/// One configured NSGA-II run.
#[derive(Debug, Clone)]
pub struct Nsga2 {
    pub problem: Problem,
    pub capacity: usize,
    pub generations: usize,
    pub mode: CrowdingMode,
    pub variation: VariationConfig,
}

impl Nsga2 {
    pub fn new(
        problem: Problem,
        capacity: usize,
        generations: usize,
        mode: CrowdingMode,
        variation: VariationConfig,
    ) -> Result<Self> {
        variation.validate()?;
        if capacity < variation.tournament_k {
            return Err(Error::contract(format!(
                "population size {capacity} is smaller than the tournament size {}",
                variation.tournament_k
            )));
        }
        if generations == 0 {
            return Err(Error::contract("at least one generation is required"));
        }
        Ok(Self {
            problem,
            capacity,
            generations,
            mode,
            variation,
        })
    }

    fn random_population(&self, rng: &mut RngStream) -> Result<Population> {
        let mut pop = Population::new(self.capacity);
        for _ in 0..self.capacity {
            let x: Vec<f64> = self
                .problem
                .bounds()
                .iter()
                .map(|b| b.lower + rng.uniform() * b.width())
                .collect();
            pop.push(Individual::new(&self.problem, DecisionVector::new(x))?)?;
        }
        Ok(pop)
    }

    /// Uniformly random parents and offspring for the first generation.
    /// Depends only on the problem, the capacity and the stream.
    pub fn initialize(&self, rng: &mut RngStream) -> Result<(Population, Population)> {
        let parents = self.random_population(rng)?;
        let offspring = self.random_population(rng)?;
        Ok((parents, offspring))
    }

    pub fn run(&self, rng: &mut RngStream) -> Result<Population> {
        self.run_observed(rng, &mut ())
    }

    /// Run the generation loop and return the final annotated population.
    /// Its rank-0 members are the final non-dominated set.
    pub fn run_observed(&self, rng: &mut RngStream, observer: &mut dyn Observer) -> Result<Population> {
        let (mut parents, mut offspring) = self.initialize(rng)?;
        observer.on_start(&parents, &offspring);
        for generation in 1..=self.generations {
            let merged = parents.merge(offspring)?;
            parents = environmental_select(merged, self.capacity, self.mode)?;
            observer.on_generation(generation, &parents);
            offspring = if generation < self.generations {
                make_offspring(&parents, &self.problem, &self.variation, rng)?
            } else {
                Population::new(self.capacity)
            };
        }
        Ok(parents)
    }
}

/// Convenience wrapper around [`Nsga2::run`].
pub fn run(
    problem: &Problem,
    capacity: usize,
    generations: usize,
    mode: CrowdingMode,
    variation: &VariationConfig,
    rng: &mut RngStream,
) -> Result<Population> {
    Nsga2::new(problem.clone(), capacity, generations, mode, variation.clone())?.run(rng)
}
