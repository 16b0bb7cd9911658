//! Iterated local search with greedy acceptance, and expected running time
//! over independent restarts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::landscape::{climb_within, EvaluationBudget, Landscape};

pub const DEFAULT_PERTURBATION_STRENGTH: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IlsConfig {
    /// `FE_max`: every fitness evaluation counts, including climbing scans.
    pub max_evaluations: u64,
    /// Number of distinct random moves applied per perturbation.
    pub perturbation_strength: usize,
    /// Fitness of the known global optimum.
    pub target_fitness: Option<f64>,
}

impl IlsConfig {
    /// `FE_max = ceil(|S| / 5)`, strength 2, no target yet.
    pub fn for_landscape<L: Landscape + ?Sized>(landscape: &L) -> Result<Self> {
        let size = landscape
            .search_space_size()
            .ok_or_else(|| Error::invalid("search space size does not fit in 128 bits"))?;
        let max = size.div_ceil(5).min(u64::MAX as u128) as u64;
        Ok(IlsConfig {
            max_evaluations: max,
            perturbation_strength: DEFAULT_PERTURBATION_STRENGTH,
            target_fitness: None,
        })
    }

    pub fn with_target(self, target: f64) -> Self {
        IlsConfig {
            target_fitness: Some(target),
            ..self
        }
    }

    pub fn validate(&self) -> Result<f64> {
        if self.max_evaluations == 0 {
            return Err(Error::invalid("evaluation budget must be at least 1"));
        }
        if self.perturbation_strength == 0 {
            return Err(Error::invalid("perturbation strength must be at least 1"));
        }
        self.target_fitness
            .ok_or_else(|| Error::invalid("iterated local search needs a target fitness"))
    }
}

/// Evaluations charged to each part of the search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhaseCounts {
    pub initial: u64,
    pub local_search: u64,
    /// Evaluations of freshly perturbed solutions.
    pub perturbation: u64,
}

impl PhaseCounts {
    pub fn total(&self) -> u64 {
        self.initial + self.local_search + self.perturbation
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunResult {
    pub success: bool,
    pub evaluations_used: u64,
    pub best_fitness: f64,
    pub phases: PhaseCounts,
}

/// Random start, climb, then perturb-and-climb until the target is reached
/// or the budget runs out. A new local optimum replaces the current one only
/// if strictly better.
pub fn run_ils<L: Landscape + ?Sized>(
    landscape: &L,
    config: &IlsConfig,
    seed: u64,
    run_index: u64,
) -> Result<RunResult> {
    let target = config.validate()?;
    let nb = landscape.neighborhood();
    let dir = landscape.direction();
    if config.perturbation_strength > nb.max_disjoint_moves() {
        return Err(Error::invalid(format!(
            "perturbation strength {} exceeds the {} disjoint moves available",
            config.perturbation_strength,
            nb.max_disjoint_moves()
        )));
    }
    let mut rng = run_rng(seed, run_index);

    let mut budget = EvaluationBudget::new(dir, config.max_evaluations, Some(target));
    let mut phases = PhaseCounts::default();
    let start = nb.random_solution(&mut rng);
    let start_fitness = budget
        .evaluate(landscape, &start)
        .expect("a fresh budget grants one evaluation");
    phases.initial = 1;

    let first = climb_within(landscape, start, start_fitness, &mut budget);
    phases.local_search += first.evaluations;
    let (mut current, mut fitness) = (first.optimum, first.fitness);
    while !budget.is_spent() {
        let mut candidate = current.clone();
        for mv in nb.random_disjoint_moves(config.perturbation_strength, &mut rng)? {
            mv.apply(&mut candidate);
        }
        let Some(f) = budget.evaluate(landscape, &candidate) else {
            break;
        };
        phases.perturbation += 1;
        let out = climb_within(landscape, candidate, f, &mut budget);
        phases.local_search += out.evaluations;
        if dir.is_better(out.fitness, fitness) {
            current = out.optimum;
            fitness = out.fitness;
        }
    }
    Ok(RunResult {
        success: budget.reached_target(),
        evaluations_used: budget.used(),
        best_fitness: budget.best(),
        phases,
    })
}

/// The RNG of run `run_index`: ChaCha8 seeded with `seed`, on stream `run_index`.
pub fn run_rng(seed: u64, run_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run_index);
    rng
}

/// `runs` independent runs, indices `0..runs`, in index order.
pub fn run_restarts<L: Landscape + ?Sized>(
    landscape: &L,
    config: &IlsConfig,
    seed: u64,
    runs: u64,
) -> Result<Vec<RunResult>> {
    if runs == 0 {
        return Err(Error::invalid("at least one restart is required"));
    }
    (0..runs)
        .into_par_iter()
        .map(|i| run_ils(landscape, config, seed, i))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErtEstimate {
    pub success_rate: f64,
    pub mean_success_evaluations: Option<f64>,
    /// `None` when no run succeeded (infinite expectation).
    pub ert: Option<f64>,
    pub runs: usize,
    pub successes: usize,
}

/// `ERT = mean successful evaluations + ((1 - p_s) / p_s) * FE_max`.
pub fn estimate_ert(results: &[RunResult], max_evaluations: u64) -> Result<ErtEstimate> {
    if results.is_empty() {
        return Err(Error::invalid(
            "cannot estimate running time from zero runs",
        ));
    }
    let successes: Vec<u64> = results
        .iter()
        .filter(|r| r.success)
        .map(|r| r.evaluations_used)
        .collect();
    let runs = results.len();
    let rate = successes.len() as f64 / runs as f64;
    let mean_success = (!successes.is_empty())
        .then(|| successes.iter().sum::<u64>() as f64 / successes.len() as f64);
    Ok(ErtEstimate {
        success_rate: rate,
        mean_success_evaluations: mean_success,
        ert: mean_success.map(|m| m + (1.0 - rate) / rate * max_evaluations as f64),
        runs,
        successes: successes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::enumerate_basins;
    use crate::landscape::FitnessTable;
    use crate::nk::NkInstance;
    use crate::qap::QapInstance;
    use rand::Rng;

    fn global_best(nk: &NkInstance) -> f64 {
        enumerate_basins(nk)
            .unwrap()
            .global_optimum()
            .unwrap()
            .fitness
    }

    #[test]
    fn unimodal_landscape_succeeds_in_first_climb() {
        let nk = NkInstance::generate(10, 0, 3).unwrap();
        let cfg = IlsConfig::for_landscape(&nk)
            .unwrap()
            .with_target(global_best(&nk));
        for run in 0..20 {
            let r = run_ils(&nk, &cfg, 9, run).unwrap();
            assert!(r.success);
            assert!(r.evaluations_used <= 10 * 11);
            assert_eq!(r.phases.perturbation, 0);
        }
    }

    #[test]
    fn single_evaluation_budget() {
        let nk = NkInstance::generate(10, 5, 3).unwrap();
        let cfg = IlsConfig {
            max_evaluations: 1,
            perturbation_strength: 2,
            target_fitness: Some(2.0),
        };
        let r = run_ils(&nk, &cfg, 1, 0).unwrap();
        assert!(!r.success);
        assert_eq!(r.evaluations_used, 1);
    }

    #[test]
    fn configuration_errors() {
        let nk = NkInstance::generate(8, 2, 1).unwrap();
        let cfg = IlsConfig::for_landscape(&nk).unwrap();
        assert_eq!(cfg.max_evaluations, 52);
        assert!(run_ils(&nk, &cfg, 1, 0).is_err());
        let zero = IlsConfig {
            max_evaluations: 0,
            ..cfg.with_target(1.0)
        };
        assert!(run_ils(&nk, &zero, 1, 0).is_err());
        let too_strong = IlsConfig {
            perturbation_strength: 9,
            ..cfg.with_target(1.0)
        };
        assert!(run_ils(&nk, &too_strong, 1, 0).is_err());
    }

    #[test]
    fn phases_account_for_every_evaluation() {
        let nk = NkInstance::generate(12, 6, 4).unwrap();
        let table = FitnessTable::build(&nk).unwrap();
        let cfg = IlsConfig {
            max_evaluations: 900,
            perturbation_strength: 2,
            target_fitness: Some(global_best(&nk)),
        };
        for r in run_restarts(&table, &cfg, 5, 50).unwrap() {
            assert_eq!(r.phases.total(), r.evaluations_used);
            assert_eq!(r.phases.initial, 1);
            assert!(r.evaluations_used <= 900);
            if r.success {
                assert_eq!(r.best_fitness, cfg.target_fitness.unwrap());
            } else {
                assert_eq!(r.evaluations_used, 900);
            }
        }
    }

    #[test]
    fn runs_are_reproducible_and_independent_of_workers() {
        let q = QapInstance::generate_uniform(7, 2).unwrap();
        let best = enumerate_basins(&q)
            .unwrap()
            .global_optimum()
            .unwrap()
            .fitness;
        let cfg = IlsConfig::for_landscape(&q).unwrap().with_target(best);
        let serial = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_restarts(&q, &cfg, 77, 40).unwrap());
        let wide = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run_restarts(&q, &cfg, 77, 40).unwrap());
        assert_eq!(serial, wide);
        assert_eq!(run_ils(&q, &cfg, 77, 3).unwrap(), serial[3]);
    }

    #[test]
    fn harder_landscapes_succeed_less_often() {
        let rate = |k: usize| {
            let mut successes = 0;
            for seed in 0..10 {
                let nk = NkInstance::generate(10, k, 500 + seed).unwrap();
                let table = FitnessTable::build(&nk).unwrap();
                let cfg = IlsConfig {
                    max_evaluations: 150,
                    perturbation_strength: 2,
                    target_fitness: Some(global_best(&nk)),
                };
                successes += run_restarts(&table, &cfg, seed, 20)
                    .unwrap()
                    .iter()
                    .filter(|r| r.success)
                    .count();
            }
            successes as f64 / 200.0
        };
        let (easy, hard) = (rate(3), rate(8));
        assert!(easy > hard, "K=3 rate {easy}, K=8 rate {hard}");
    }

    #[test]
    fn ert_closed_forms() {
        let run = |success, evals| RunResult {
            success,
            evaluations_used: evals,
            best_fitness: 0.0,
            phases: PhaseCounts::default(),
        };
        let all = estimate_ert(&[run(true, 100), run(true, 100)], 1000).unwrap();
        assert_eq!(all.ert, Some(100.0));
        let half = estimate_ert(&[run(true, 100), run(false, 1000)], 1000).unwrap();
        assert_eq!(half.ert, Some(1100.0));
        let none = estimate_ert(&[run(false, 1000)], 1000).unwrap();
        assert_eq!(none.ert, None);
        assert_eq!(none.success_rate, 0.0);
        assert!(estimate_ert(&[], 10).is_err());
    }

    #[test]
    fn ert_matches_analytic_expectation_on_simulated_runs() {
        // Successes cost a fixed 200 evaluations, so the estimator's only
        // randomness is the success count.
        let p = 0.3;
        let fe_max = 1000u64;
        let runs = 10_000;
        let mut rng = run_rng(42, 0);
        let results: Vec<RunResult> = (0..runs)
            .map(|_| {
                let success = rng.random::<f64>() < p;
                RunResult {
                    success,
                    evaluations_used: if success { 200 } else { fe_max },
                    best_fitness: 0.0,
                    phases: PhaseCounts::default(),
                }
            })
            .collect();
        let est = estimate_ert(&results, fe_max).unwrap().ert.unwrap();
        let analytic = 200.0 + (1.0 - p) / p * fe_max as f64;
        // Delta method: d/dp of (1-p)/p * FE_max is -FE_max/p^2.
        let se = fe_max as f64 / (p * p) * (p * (1.0 - p) / runs as f64).sqrt();
        assert!(
            (est - analytic).abs() < 3.0 * se,
            "{est} vs {analytic} (se {se})"
        );
    }
}
