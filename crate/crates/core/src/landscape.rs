//! The landscape triplet (S, V, f) and the deterministic best-improvement
//! hill climber used by every downstream module.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::neighborhood::Neighborhood;
use crate::space::{BitString, Permutation, Representation, Solution};

/// Default cap on `|S|` for anything that enumerates the whole space.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Maximize,
    Minimize,
}

impl Direction {
    /// True when `a` is strictly better than `b`. Exact comparison, no epsilon.
    #[inline]
    pub fn is_better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::Maximize => a > b,
            Direction::Minimize => a < b,
        }
    }

    /// The worse of the two infinities, a neutral start for "best so far".
    pub fn worst(self) -> f64 {
        match self {
            Direction::Maximize => f64::NEG_INFINITY,
            Direction::Minimize => f64::INFINITY,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Maximize => f.write_str("maximize"),
            Direction::Minimize => f.write_str("minimize"),
        }
    }
}

/// A fitness landscape. `fitness` must be a pure function of the solution.
pub trait Landscape: Sync {
    fn neighborhood(&self) -> Neighborhood;

    fn direction(&self) -> Direction;

    /// Fitness of a solution already known to match [`Landscape::neighborhood`].
    fn fitness(&self, s: &Solution) -> f64;

    fn evaluate(&self, s: &Solution) -> Result<f64> {
        self.neighborhood().check(s)?;
        Ok(self.fitness(s))
    }

    fn search_space_size(&self) -> Option<u128> {
        self.neighborhood().space_size()
    }

    /// Short human-readable identity of the instance, used as provenance.
    fn describe(&self) -> String {
        let nb = self.neighborhood();
        format!("{} length={}", nb.representation(), nb.len())
    }

    /// Hooks for enumeration loops that already hold the unwrapped point.
    /// Implementors may override to skip the enum round trip.
    fn fitness_of_bits(&self, b: &BitString) -> f64 {
        self.fitness(&Solution::Binary(b.clone()))
    }

    fn fitness_of_permutation(&self, p: &Permutation) -> f64 {
        self.fitness(&Solution::Permutation(p.clone()))
    }
}

impl<L: Landscape + ?Sized> Landscape for &L {
    fn neighborhood(&self) -> Neighborhood {
        (**self).neighborhood()
    }
    fn direction(&self) -> Direction {
        (**self).direction()
    }
    fn fitness(&self, s: &Solution) -> f64 {
        (**self).fitness(s)
    }
    fn fitness_of_bits(&self, b: &BitString) -> f64 {
        (**self).fitness_of_bits(b)
    }
    fn fitness_of_permutation(&self, p: &Permutation) -> f64 {
        (**self).fitness_of_permutation(p)
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

/// Counts fitness evaluations against an optional limit, and stops handing
/// out values once a fitness at least as good as the target has been seen.
#[derive(Clone, Debug)]
pub struct EvaluationBudget {
    direction: Direction,
    limit: Option<u64>,
    target: Option<f64>,
    used: u64,
    best: f64,
    target_hit_at: Option<u64>,
}

impl EvaluationBudget {
    pub fn unlimited(direction: Direction) -> Self {
        EvaluationBudget {
            direction,
            limit: None,
            target: None,
            used: 0,
            best: direction.worst(),
            target_hit_at: None,
        }
    }

    pub fn new(direction: Direction, limit: u64, target: Option<f64>) -> Self {
        EvaluationBudget {
            limit: Some(limit),
            target,
            ..Self::unlimited(direction)
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn best(&self) -> f64 {
        self.best
    }

    pub fn reached_target(&self) -> bool {
        self.target_hit_at.is_some()
    }

    /// Evaluation count at which the target was reached.
    pub fn target_hit_at(&self) -> Option<u64> {
        self.target_hit_at
    }

    /// True once no further evaluation will be granted.
    pub fn is_spent(&self) -> bool {
        self.reached_target() || self.limit.is_some_and(|l| self.used >= l)
    }

    /// Evaluates `s`, or returns `None` if the budget is spent.
    pub fn evaluate<L: Landscape + ?Sized>(&mut self, landscape: &L, s: &Solution) -> Option<f64> {
        if self.is_spent() {
            return None;
        }
        let f = landscape.fitness(s);
        self.used += 1;
        if self.direction.is_better(f, self.best) {
            self.best = f;
        }
        if self.target.is_some_and(|t| !self.direction.is_better(t, f)) {
            self.target_hit_at = Some(self.used);
        }
        Some(f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClimbOutcome {
    pub optimum: Solution,
    pub fitness: f64,
    /// Neighbor evaluations; the start's own fitness is not counted.
    pub evaluations: u64,
    pub steps: u64,
    /// False when the budget ran out before a local optimum was confirmed.
    pub completed: bool,
}

/// `h(s)`: best-improvement hill climbing to a local optimum.
///
/// Each iteration scans the full neighborhood in canonical order, keeps the
/// first neighbor of best fitness, and moves only on strict improvement.
pub fn hill_climb<L: Landscape + ?Sized>(start: &Solution, landscape: &L) -> Result<ClimbOutcome> {
    landscape.neighborhood().check(start)?;
    let fitness = landscape.fitness(start);
    let mut budget = EvaluationBudget::unlimited(landscape.direction());
    Ok(climb_within(landscape, start.clone(), fitness, &mut budget))
}

/// Hill climbing that charges every neighbor evaluation to `budget`.
pub fn climb_within<L: Landscape + ?Sized>(
    landscape: &L,
    mut current: Solution,
    mut fitness: f64,
    budget: &mut EvaluationBudget,
) -> ClimbOutcome {
    let nb = landscape.neighborhood();
    let dir = landscape.direction();
    let start_used = budget.used();
    let mut steps = 0;
    loop {
        let mut best = None;
        let mut aborted = false;
        for mv in nb.moves() {
            mv.apply(&mut current);
            let f = budget.evaluate(landscape, &current);
            mv.apply(&mut current);
            let Some(f) = f else {
                aborted = true;
                break;
            };
            if best.is_none_or(|(_, bf)| dir.is_better(f, bf)) {
                best = Some((mv, f));
            }
        }
        // Take the best neighbor seen so far even on an aborted scan.
        let improved = match best {
            Some((mv, f)) if dir.is_better(f, fitness) => {
                mv.apply(&mut current);
                fitness = f;
                steps += 1;
                true
            }
            _ => false,
        };
        if aborted || !improved {
            return ClimbOutcome {
                optimum: current,
                fitness,
                evaluations: budget.used() - start_used,
                steps,
                completed: !aborted,
            };
        }
    }
}

/// True when no neighbor of `s` is strictly better.
pub fn is_local_optimum<L: Landscape + ?Sized>(s: &Solution, landscape: &L) -> Result<bool> {
    let nb = landscape.neighborhood();
    let dir = landscape.direction();
    let f = landscape.evaluate(s)?;
    Ok(nb
        .neighbors(s)?
        .iter()
        .all(|t| !dir.is_better(landscape.fitness(t), f)))
}

/// Fitness of every point of the space, indexed by rank.
#[derive(Clone, Debug)]
pub struct FitnessTable {
    nb: Neighborhood,
    direction: Direction,
    values: Vec<f64>,
    description: String,
}

const TABLE_CHUNK: u64 = 1 << 12;

impl FitnessTable {
    pub fn build<L: Landscape + ?Sized>(landscape: &L) -> Result<Self> {
        Self::build_with_budget(landscape, DEFAULT_ENUMERATION_BUDGET)
    }

    pub fn build_with_budget<L: Landscape + ?Sized>(landscape: &L, budget: u64) -> Result<Self> {
        let nb = landscape.neighborhood();
        let size = check_enumerable(&nb, budget)?;
        let mut values = vec![0.0; size as usize];
        values
            .par_chunks_mut(TABLE_CHUNK as usize)
            .enumerate()
            .for_each(|(c, chunk)| {
                let start = c as u64 * TABLE_CHUNK;
                match nb.representation() {
                    Representation::Binary => {
                        for (k, slot) in chunk.iter_mut().enumerate() {
                            let b = BitString::unrank(start + k as u64, nb.len());
                            *slot = landscape.fitness_of_bits(&b);
                        }
                    }
                    Representation::Permutation => {
                        let mut p = Permutation::unrank(start, nb.len());
                        for (k, slot) in chunk.iter_mut().enumerate() {
                            if k > 0 {
                                p.advance();
                            }
                            *slot = landscape.fitness_of_permutation(&p);
                        }
                    }
                }
            });
        Ok(FitnessTable {
            nb,
            direction: landscape.direction(),
            values,
            description: landscape.describe(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, rank: u64) -> f64 {
        self.values[rank as usize]
    }
}

impl Landscape for FitnessTable {
    fn neighborhood(&self) -> Neighborhood {
        self.nb
    }

    fn direction(&self) -> Direction {
        self.direction
    }

    fn fitness(&self, s: &Solution) -> f64 {
        self.values[s.rank() as usize]
    }

    fn describe(&self) -> String {
        self.description.clone()
    }
}

/// `|S|` if it is within `budget`, otherwise a diagnostic naming the need.
pub fn check_enumerable(nb: &Neighborhood, budget: u64) -> Result<u64> {
    let required = nb.space_size().unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(required as u64)
}
