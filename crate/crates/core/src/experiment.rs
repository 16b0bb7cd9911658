//! Experiment descriptions and ensemble pipelines: per-instance analysis,
//! the NK and QAP summary tables, and running-time studies.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extract::{
    basin_interior_fractions, basin_transition_lon, basins_from_table, escape_lon, BasinMap,
};
use crate::ils::{estimate_ert, run_restarts, ErtEstimate, IlsConfig, RunResult};
use crate::landscape::{Direction, FitnessTable, Landscape, DEFAULT_ENUMERATION_BUDGET};
use crate::metrics::{build_report, detect_communities, MetricsReport, ReportOptions};
use crate::network::{EdgeModel, LocalOptimaNetwork};
use crate::problem::ProblemSpec;
use crate::qap::QapClass;
use crate::stats::{spearman, summarize, EnsembleSummary};

/// XORed into an instance seed to seed its search runs, keeping them off the
/// streams that generated the instance.
pub const SEARCH_SEED_SALT: u64 = 0x696c_735f_7275_6e73;

pub fn search_seed(instance_seed: u64) -> u64 {
    instance_seed ^ SEARCH_SEED_SALT
}

/// Seed of the `index`-th instance of an ensemble.
pub fn instance_seed(base_seed: u64, index: usize) -> u64 {
    base_seed.wrapping_add(index as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Generate,
    Extract,
    Metrics,
    Communities,
    Ils,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::Generate,
        Stage::Extract,
        Stage::Metrics,
        Stage::Communities,
        Stage::Ils,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Generate => "generate",
            Stage::Extract => "extract",
            Stage::Metrics => "metrics",
            Stage::Communities => "communities",
            Stage::Ils => "ils",
        }
    }

    /// Stages whose outputs this stage consumes.
    pub fn requires(self) -> &'static [Stage] {
        match self {
            Stage::Generate => &[],
            Stage::Extract | Stage::Ils => &[Stage::Generate],
            Stage::Metrics | Stage::Communities => &[Stage::Extract],
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Stage::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown stage {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub problem: ProblemSpec,
    pub base_seed: u64,
    pub instances: usize,
    pub edge_models: Vec<EdgeModel>,
    pub stages: Vec<Stage>,
    pub output_dir: PathBuf,
}

impl ExperimentSpec {
    /// Rejects empty ensembles, missing edge models, and stage lists that
    /// skip a prerequisite.
    pub fn validate(&self) -> Result<()> {
        self.problem.validate()?;
        if self.instances == 0 {
            return Err(Error::invalid("an experiment needs at least one instance"));
        }
        if self.stages.is_empty() {
            return Err(Error::invalid("an experiment needs at least one stage"));
        }
        for stage in &self.stages {
            for need in stage.requires() {
                if !self.stages.contains(need) {
                    return Err(Error::invalid(format!(
                        "stage {stage} requires stage {need}"
                    )));
                }
            }
        }
        if self.stages.contains(&Stage::Extract) && self.edge_models.is_empty() {
            return Err(Error::invalid("extraction needs at least one edge model"));
        }
        Ok(())
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.instances)
            .map(|i| instance_seed(self.base_seed, i))
            .collect()
    }

    /// Everything that determines the outputs, one `key=value` per line.
    /// The output directory is left out so relocated runs hash equally.
    pub fn canonical(&self) -> String {
        let mut stages = self.stages.clone();
        stages.sort();
        stages.dedup();
        let join = |items: Vec<String>| items.join(",");
        format!(
            "problem={}\nbase_seed={}\ninstances={}\nedges={}\nstages={}\n",
            self.problem.canonical(),
            self.base_seed,
            self.instances,
            join(self.edge_models.iter().map(|m| m.to_string()).collect()),
            join(stages.iter().map(|s| s.to_string()).collect()),
        )
    }
}

pub fn build_network<L: Landscape + ?Sized>(
    landscape: &L,
    bm: &BasinMap,
    model: EdgeModel,
) -> Result<LocalOptimaNetwork> {
    match model {
        EdgeModel::BasinTransition => basin_transition_lon(landscape, bm),
        EdgeModel::Escape {
            distance,
            normalized,
        } => escape_lon(landscape, bm, distance, normalized),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub edge_models: Vec<EdgeModel>,
    pub report: ReportOptions,
    pub communities: bool,
}

impl AnalysisOptions {
    pub fn new(edge_models: Vec<EdgeModel>) -> Self {
        AnalysisOptions {
            edge_models,
            report: ReportOptions::default(),
            communities: false,
        }
    }

    /// Skips the all-pairs mean path length, which the summary tables do
    /// not report and which dominates the cost of mid-sized networks.
    pub fn without_mean_path(self) -> Self {
        AnalysisOptions {
            report: ReportOptions {
                max_nodes_for_mean_path: 0,
                ..self.report
            },
            ..self
        }
    }

    pub fn with_communities(self) -> Self {
        AnalysisOptions {
            communities: true,
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NetworkAnalysis {
    pub model: EdgeModel,
    pub report: MetricsReport,
    pub modularity: Option<f64>,
}

/// Landscape-level facts plus one report per requested edge model.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceAnalysis {
    pub seed: u64,
    pub optimum_count: usize,
    /// Global optimum basin size over the search space size.
    pub global_basin_fraction: f64,
    /// Mean over optima of the fraction of basin members that are interior.
    pub interior_mean: f64,
    /// Spearman coefficient between optimum fitness and basin size, with
    /// fitness oriented so that better is larger.
    pub fitness_basin_spearman: Option<f64>,
    pub networks: Vec<NetworkAnalysis>,
}

impl InstanceAnalysis {
    pub fn network(&self, model: EdgeModel) -> Option<&NetworkAnalysis> {
        self.networks.iter().find(|n| n.model == model)
    }
}

/// Analysis of a landscape whose basins are already enumerated.
pub fn analyze_basins<L: Landscape + ?Sized>(
    landscape: &L,
    bm: &BasinMap,
    seed: u64,
    options: &AnalysisOptions,
) -> Result<InstanceAnalysis> {
    let global = bm
        .global_optimum()
        .ok_or_else(|| Error::invalid("landscape has no local optima"))?;
    let sign = match landscape.direction() {
        Direction::Maximize => 1.0,
        Direction::Minimize => -1.0,
    };
    let fitness: Vec<f64> = bm.optima().iter().map(|o| sign * o.fitness).collect();
    let sizes: Vec<f64> = bm.optima().iter().map(|o| o.basin_size as f64).collect();
    let networks = options
        .edge_models
        .iter()
        .map(|&model| {
            let net = build_network(landscape, bm, model)?;
            Ok(NetworkAnalysis {
                model,
                report: build_report(&net, &options.report),
                modularity: options
                    .communities
                    .then(|| detect_communities(&net).modularity),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InstanceAnalysis {
        seed,
        optimum_count: bm.optimum_count(),
        global_basin_fraction: global.basin_size as f64 / bm.space_size() as f64,
        interior_mean: basin_interior_fractions(bm).mean,
        fitness_basin_spearman: if fitness.len() < 2 {
            None
        } else {
            spearman(&fitness, &sizes)?
        },
        networks,
    })
}

/// Tabulates, enumerates and analyzes one landscape.
pub fn analyze_landscape<L: Landscape + ?Sized>(
    landscape: &L,
    seed: u64,
    options: &AnalysisOptions,
) -> Result<InstanceAnalysis> {
    let table = FitnessTable::build_with_budget(landscape, DEFAULT_ENUMERATION_BUDGET)?;
    let bm = basins_from_table(&table);
    analyze_basins(&table, &bm, seed, options)
}

/// One analysis per seed, in seed order; instances run in parallel.
pub fn analyze_ensemble(
    problem: &ProblemSpec,
    seeds: &[u64],
    options: &AnalysisOptions,
) -> Result<Vec<InstanceAnalysis>> {
    seeds
        .par_iter()
        .map(|&seed| analyze_landscape(&problem.instantiate(seed)?, seed, options))
        .collect()
}

/// Restarted iterated local search on one instance, targeting its global
/// optimum, together with the instance's network analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct RunningTimeStudy {
    pub seed: u64,
    pub config: IlsConfig,
    pub runs: Vec<RunResult>,
    pub estimate: ErtEstimate,
    pub analysis: InstanceAnalysis,
}

pub fn running_time_study<L: Landscape + ?Sized>(
    landscape: &L,
    seed: u64,
    restarts: u64,
    options: &AnalysisOptions,
) -> Result<RunningTimeStudy> {
    let table = FitnessTable::build_with_budget(landscape, DEFAULT_ENUMERATION_BUDGET)?;
    let bm = basins_from_table(&table);
    let target = bm
        .global_optimum()
        .ok_or_else(|| Error::invalid("landscape has no local optima"))?
        .fitness;
    let config = IlsConfig::for_landscape(&table)?.with_target(target);
    let runs = run_restarts(&table, &config, search_seed(seed), restarts)?;
    let estimate = estimate_ert(&runs, config.max_evaluations)?;
    let analysis = analyze_basins(&table, &bm, seed, options)?;
    Ok(RunningTimeStudy {
        seed,
        config,
        runs,
        estimate,
        analysis,
    })
}

pub fn running_time_ensemble(
    problem: &ProblemSpec,
    seeds: &[u64],
    restarts: u64,
    options: &AnalysisOptions,
) -> Result<Vec<RunningTimeStudy>> {
    seeds
        .par_iter()
        .map(|&seed| running_time_study(&problem.instantiate(seed)?, seed, restarts, options))
        .collect()
}

/// Summary of the values that are present; `None` when none are.
fn summarize_present(values: impl Iterator<Item = Option<f64>>) -> Result<Option<EnsembleSummary>> {
    let present: Vec<f64> = values.flatten().collect();
    if present.is_empty() {
        Ok(None)
    } else {
        summarize(&present).map(Some)
    }
}

fn report_values<'a>(
    analyses: &'a [InstanceAnalysis],
    model: EdgeModel,
) -> impl Iterator<Item = &'a MetricsReport> + 'a {
    analyses
        .iter()
        .filter_map(move |a| a.network(model).map(|n| &n.report))
}

/// Edge models of the NK summary table, in column order.
pub const NK_TABLE_MODELS: [EdgeModel; 3] = [
    EdgeModel::BasinTransition,
    EdgeModel::Escape {
        distance: 1,
        normalized: true,
    },
    EdgeModel::Escape {
        distance: 2,
        normalized: true,
    },
];

/// One row of the NK summary table: optima count, edge density in percent,
/// and mean path length to the global optimum, per edge model.
#[derive(Clone, Debug, PartialEq)]
pub struct NkTableRow {
    pub n: usize,
    pub k: usize,
    pub optima: EnsembleSummary,
    pub density_percent: Vec<EnsembleSummary>,
    pub optimum_path: Vec<Option<EnsembleSummary>>,
}

pub fn nk_table_row(n: usize, k: usize, analyses: &[InstanceAnalysis]) -> Result<NkTableRow> {
    let optima: Vec<f64> = analyses.iter().map(|a| a.optimum_count as f64).collect();
    let mut density_percent = Vec::new();
    let mut optimum_path = Vec::new();
    for model in NK_TABLE_MODELS {
        let density: Vec<f64> = report_values(analyses, model)
            .map(|r| r.edge_density_percent)
            .collect();
        density_percent.push(summarize(&density)?);
        optimum_path.push(summarize_present(
            report_values(analyses, model).map(|r| r.optimum_path_length()),
        )?);
    }
    Ok(NkTableRow {
        n,
        k,
        optima: summarize(&optima)?,
        density_percent,
        optimum_path,
    })
}

/// The NK ensemble at `(n, k)` and its table row.
pub fn reproduce_nk_row(
    n: usize,
    k: usize,
    seeds: &[u64],
) -> Result<(NkTableRow, Vec<InstanceAnalysis>)> {
    let analyses = analyze_ensemble(
        &ProblemSpec::Nk { n, k },
        seeds,
        &AnalysisOptions::new(NK_TABLE_MODELS.to_vec()).without_mean_path(),
    )?;
    Ok((nk_table_row(n, k, &analyses)?, analyses))
}

fn mean_sd(s: &EnsembleSummary, decimals: usize) -> String {
    match s.standard_deviation {
        Some(sd) => format!("{:.*} ({:.*})", decimals, s.mean, decimals, sd),
        None => format!("{:.*}", decimals, s.mean),
    }
}

fn mean_sd_opt(s: &Option<EnsembleSummary>, decimals: usize) -> String {
    s.as_ref()
        .map_or_else(|| "-".to_string(), |s| mean_sd(s, decimals))
}

fn format_grid(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:>w$}"))
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    out
}

/// Columns: K, N_v, D_edge (%) for basin/esc-1/esc-2, L_opt for the same.
/// Cells read `mean (sd)`.
pub fn format_nk_table(rows: &[NkTableRow]) -> String {
    let header: Vec<String> = [
        "K",
        "N_v",
        "D_edge% basin",
        "D_edge% esc1",
        "D_edge% esc2",
        "L_opt basin",
        "L_opt esc1",
        "L_opt esc2",
    ]
    .map(String::from)
    .to_vec();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut cells = vec![r.k.to_string(), mean_sd(&r.optima, 1)];
            cells.extend(r.density_percent.iter().map(|s| mean_sd(s, 3)));
            cells.extend(r.optimum_path.iter().map(|s| mean_sd_opt(s, 1)));
            cells
        })
        .collect();
    format_grid(&header, &body)
}

/// One cell group of the QAP summary table: a class at one size.
#[derive(Clone, Debug, PartialEq)]
pub struct QapTableCell {
    pub class: QapClass,
    pub n: usize,
    pub optima: EnsembleSummary,
    /// `N_e / N_v^2`, as a fraction.
    pub density: EnsembleSummary,
    pub weighted_clustering: EnsembleSummary,
    pub disparity: Option<EnsembleSummary>,
}

pub fn qap_table_cell(
    class: QapClass,
    n: usize,
    analyses: &[InstanceAnalysis],
) -> Result<QapTableCell> {
    let model = EdgeModel::BasinTransition;
    let collect = |f: fn(&MetricsReport) -> f64| -> Vec<f64> {
        report_values(analyses, model).map(f).collect()
    };
    let optima: Vec<f64> = analyses.iter().map(|a| a.optimum_count as f64).collect();
    Ok(QapTableCell {
        class,
        n,
        optima: summarize(&optima)?,
        density: summarize(&collect(|r| r.edge_density))?,
        weighted_clustering: summarize(&collect(|r| r.mean_weighted_clustering))?,
        disparity: summarize_present(report_values(analyses, model).map(|r| r.mean_disparity))?,
    })
}

pub fn qap_problem(class: QapClass, n: usize) -> Result<ProblemSpec> {
    match class {
        QapClass::Uniform => Ok(ProblemSpec::QapUniform { n }),
        QapClass::RealLike => Ok(ProblemSpec::QapRealLike { n }),
        QapClass::External => Err(Error::invalid(
            "external instances have no generator to build an ensemble from",
        )),
    }
}

/// The QAP ensemble for `class` at size `n`, with community detection on
/// the basin-transition networks.
pub fn reproduce_qap_cell(
    class: QapClass,
    n: usize,
    seeds: &[u64],
) -> Result<(QapTableCell, Vec<InstanceAnalysis>)> {
    let analyses = analyze_ensemble(
        &qap_problem(class, n)?,
        seeds,
        &AnalysisOptions::new(vec![EdgeModel::BasinTransition]).with_communities(),
    )?;
    Ok((qap_table_cell(class, n, &analyses)?, analyses))
}

/// Metric rows (N_v, D_edge, C^w, Y2), a line per class within each, and a
/// column per size.
pub fn format_qap_table(cells: &[QapTableCell]) -> String {
    let mut sizes: Vec<usize> = cells.iter().map(|c| c.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut classes: Vec<QapClass> = Vec::new();
    for c in cells {
        if !classes.contains(&c.class) {
            classes.push(c.class);
        }
    }
    let mut header = vec!["metric".to_string(), "class".to_string()];
    header.extend(sizes.iter().map(|n| n.to_string()));
    type Cell = fn(&QapTableCell) -> String;
    let metrics: [(&str, Cell); 4] = [
        ("N_v", |c| mean_sd(&c.optima, 3)),
        ("D_edge", |c| mean_sd(&c.density, 3)),
        ("C^w", |c| mean_sd(&c.weighted_clustering, 3)),
        ("Y2", |c| mean_sd_opt(&c.disparity, 3)),
    ];
    let mut body = Vec::new();
    for (name, cell) in metrics {
        for &class in &classes {
            let mut row = vec![name.to_string(), class.to_string()];
            for &n in &sizes {
                row.push(
                    cells
                        .iter()
                        .find(|c| c.class == class && c.n == n)
                        .map_or_else(|| "-".to_string(), cell),
                );
            }
            body.push(row);
        }
    }
    format_grid(&header, &body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::enumerate_basins;
    use crate::nk::NkInstance;

    fn spec(stages: Vec<Stage>) -> ExperimentSpec {
        ExperimentSpec {
            problem: ProblemSpec::Nk { n: 10, k: 2 },
            base_seed: 40,
            instances: 3,
            edge_models: vec![EdgeModel::BasinTransition],
            stages,
            output_dir: PathBuf::from("out"),
        }
    }

    #[test]
    fn stage_dependencies_are_enforced() {
        use Stage::*;
        assert!(spec(vec![Generate, Extract, Metrics]).validate().is_ok());
        assert!(spec(vec![Generate, Ils]).validate().is_ok());
        assert!(spec(vec![Metrics]).validate().is_err());
        assert!(spec(vec![Generate, Metrics]).validate().is_err());
        assert!(spec(vec![Extract]).validate().is_err());
        assert!(spec(vec![Ils]).validate().is_err());
        assert!(spec(vec![Generate, Extract, Communities])
            .validate()
            .is_ok());
        assert!(spec(vec![]).validate().is_err());
        let mut no_models = spec(vec![Generate, Extract]);
        no_models.edge_models.clear();
        assert!(no_models.validate().is_err());
    }

    #[test]
    fn canonical_text_ignores_stage_order_and_output_dir() {
        use Stage::*;
        let a = spec(vec![Generate, Extract]);
        let mut b = spec(vec![Extract, Generate, Extract]);
        b.output_dir = PathBuf::from("elsewhere");
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.seeds(), vec![40, 41, 42]);
        assert!(a.canonical().contains("problem=nk N=10 K=2\n"));
    }

    #[test]
    fn search_seed_differs_from_instance_seed() {
        for s in [0, 1, 7, u64::MAX] {
            assert_ne!(search_seed(s), s);
            assert_eq!(search_seed(search_seed(s)), s);
        }
    }

    #[test]
    fn analysis_matches_direct_pipeline() {
        let nk = NkInstance::generate(10, 3, 11).unwrap();
        let opts = AnalysisOptions::new(NK_TABLE_MODELS.to_vec()).with_communities();
        let a = analyze_landscape(&nk, 11, &opts).unwrap();
        let bm = enumerate_basins(&nk).unwrap();
        assert_eq!(a.optimum_count, bm.optimum_count());
        let go = bm.global_optimum().unwrap();
        assert_eq!(a.global_basin_fraction, go.basin_size as f64 / 1024.0);
        let direct = build_report(
            &basin_transition_lon(&nk, &bm).unwrap(),
            &ReportOptions::default(),
        );
        assert_eq!(
            a.network(EdgeModel::BasinTransition).unwrap().report,
            direct
        );
        assert_eq!(a.networks.len(), 3);
        assert!(a.networks.iter().all(|n| n.modularity.is_some()));
    }

    #[test]
    fn spearman_is_oriented_towards_better_fitness() {
        // With minimization, lower cost should still count as "better".
        let qap = crate::qap::QapInstance::generate_uniform(6, 4).unwrap();
        let a = analyze_landscape(&qap, 4, &AnalysisOptions::new(vec![])).unwrap();
        let bm = enumerate_basins(&qap).unwrap();
        let cost: Vec<f64> = bm.optima().iter().map(|o| o.fitness).collect();
        let size: Vec<f64> = bm.optima().iter().map(|o| o.basin_size as f64).collect();
        let raw = spearman(&cost, &size).unwrap();
        assert_eq!(a.fitness_basin_spearman, raw.map(|r| -r));
    }

    #[test]
    fn ensembles_come_back_in_seed_order() {
        let seeds = [5, 3, 9];
        let out = analyze_ensemble(
            &ProblemSpec::Nk { n: 8, k: 2 },
            &seeds,
            &AnalysisOptions::new(vec![EdgeModel::BasinTransition]),
        )
        .unwrap();
        assert_eq!(out.iter().map(|a| a.seed).collect::<Vec<_>>(), seeds);
    }

    #[test]
    fn nk_row_and_table_layout() {
        let seeds: Vec<u64> = (0..4).collect();
        let (row, analyses) = reproduce_nk_row(10, 2, &seeds).unwrap();
        assert_eq!(analyses.len(), 4);
        let counts: Vec<f64> = analyses.iter().map(|a| a.optimum_count as f64).collect();
        assert_eq!(row.optima.mean, counts.iter().sum::<f64>() / 4.0);
        assert_eq!(row.density_percent.len(), 3);
        let text = format_nk_table(&[row]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("L_opt esc2"));
        assert!(lines[1].trim_start().starts_with("2 "));
    }

    #[test]
    fn qap_cells_and_table_layout() {
        let seeds: Vec<u64> = (0..3).collect();
        let (uni, _) = reproduce_qap_cell(QapClass::Uniform, 5, &seeds).unwrap();
        let (real, analyses) = reproduce_qap_cell(QapClass::RealLike, 5, &seeds).unwrap();
        assert!(analyses.iter().all(|a| a.networks[0].modularity.is_some()));
        let text = format_qap_table(&[real, uni]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 4 * 2);
        assert!(lines[1].contains("N_v") && lines[1].contains("real-like"));
        assert!(lines[2].contains("uniform"));
        assert!(reproduce_qap_cell(QapClass::External, 5, &seeds).is_err());
    }

    #[test]
    fn running_time_study_targets_the_global_optimum() {
        let nk = NkInstance::generate(10, 2, 8).unwrap();
        let study = running_time_study(&nk, 8, 20, &AnalysisOptions::new(vec![])).unwrap();
        let bm = enumerate_basins(&nk).unwrap();
        assert_eq!(
            study.config.target_fitness,
            Some(bm.global_optimum().unwrap().fitness)
        );
        assert_eq!(study.config.max_evaluations, 1024u64.div_ceil(5));
        assert_eq!(study.runs.len(), 20);
        assert_eq!(study.estimate.runs, 20);
        let again = running_time_study(&nk, 8, 20, &AnalysisOptions::new(vec![])).unwrap();
        assert_eq!(study, again);
    }
}
