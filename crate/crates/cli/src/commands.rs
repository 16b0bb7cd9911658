use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use lon_core::experiment::{
    build_network, format_nk_table, format_qap_table, instance_seed, reproduce_nk_row,
    reproduce_qap_cell, search_seed, ExperimentSpec, InstanceAnalysis, Stage, NK_TABLE_MODELS,
};
use lon_core::export::{
    histogram_csvs, network_to_string, opt, read_pajek, report_csv_header, report_csv_row,
    report_text, write_basins_csv,
};
use lon_core::ils::{estimate_ert, run_restarts, IlsConfig};
use lon_core::stats::{
    correlation_p_value, multiple_regression, pearson_and_fit, spearman, EnsembleSummary,
};
use lon_core::{
    basins_from_table, build_report, detect_communities, EdgeModel, FitnessTable,
    LocalOptimaNetwork, ProblemInstance, ProblemKind, ProblemSpec, QapClass, ReportOptions,
};
use rayon::prelude::*;

use crate::output::{comment_block, sha256_hex, OutputSet, Provenance};
use crate::{
    Command, CorrelateArgs, ExtractArgs, GenerateArgs, IlsArgs, MetricsArgs, ProblemArgs,
    Table2Args, Table3Args,
};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Generate(a) => generate(a),
        Command::Extract(a) => extract(a),
        Command::Metrics(a) => metrics(a),
        Command::Communities(a) => communities(a),
        Command::Ils(a) => ils(a),
        Command::Correlate(a) => correlate(a),
        Command::ReproduceTable2(a) => table2(a),
        Command::ReproduceTable3(a) => table3(a),
    }
}

fn experiment(a: &ProblemArgs, edge_models: Vec<EdgeModel>, stages: Vec<Stage>) -> Result<ExperimentSpec> {
    if a.problem != ProblemKind::QapFile && a.instance.is_some() {
        bail!("--instance only applies to --problem qap-file");
    }
    if a.problem == ProblemKind::QapFile && a.instances > 1 {
        bail!("--problem qap-file reads a single instance; drop --instances");
    }
    let spec = ExperimentSpec {
        problem: ProblemSpec::from_parts(a.problem, a.n, a.k, a.instance.clone())?,
        base_seed: a.seed,
        instances: a.instances as usize,
        edge_models,
        stages,
        output_dir: a.out.out.clone(),
    };
    spec.validate()?;
    Ok(spec)
}

/// File stem for one instance, e.g. `nk-N18-K2-s7`.
fn instance_label(problem: &ProblemSpec, seed: u64) -> String {
    match problem {
        ProblemSpec::Nk { n, k } => format!("nk-N{n}-K{k}-s{seed}"),
        ProblemSpec::QapUniform { n } => format!("qap-uniform-n{n}-s{seed}"),
        ProblemSpec::QapRealLike { n } => format!("qap-reallike-n{n}-s{seed}"),
        ProblemSpec::QapFile { path } => format!(
            "qap-file-{}",
            path.file_stem().map_or("instance".into(), |s| s.to_string_lossy())
        ),
    }
}

fn instantiate_all(spec: &ExperimentSpec) -> Result<Vec<(u64, ProblemInstance)>> {
    spec.seeds()
        .into_par_iter()
        .map(|seed| Ok((seed, spec.problem.instantiate(seed)?)))
        .collect()
}

fn finish(out: OutputSet) {
    for path in out.commit() {
        println!("wrote {}", path.display());
    }
}

fn generate(a: GenerateArgs) -> Result<()> {
    let spec = experiment(&a.problem, Vec::new(), vec![Stage::Generate])?;
    let prov = Provenance::new(&spec.canonical());
    let instances = instantiate_all(&spec)?;
    let mut out = OutputSet::create(&spec.output_dir)?;
    for (seed, inst) in &instances {
        let header = prov.for_seed(*seed).join("\n");
        let name = format!(
            "{}.{}",
            instance_label(&spec.problem, *seed),
            inst.file_extension()
        );
        out.write(&name, &inst.to_text(Some(&header)))?;
    }
    finish(out);
    Ok(())
}

/// One instance's basins and networks, one per requested edge model.
struct Extraction {
    seed: u64,
    label: String,
    basins_csv: String,
    networks: Vec<LocalOptimaNetwork>,
}

fn extract_all(spec: &ExperimentSpec, prov: &Provenance) -> Result<Vec<Extraction>> {
    spec.seeds()
        .into_par_iter()
        .map(|seed| {
            let inst = spec.problem.instantiate(seed)?;
            let table = FitnessTable::build(&inst)?;
            let bm = basins_from_table(&table);
            let networks = spec
                .edge_models
                .iter()
                .map(|&m| build_network(&table, &bm, m))
                .collect::<lon_core::Result<Vec<_>>>()?;
            let mut basins_csv = Vec::new();
            write_basins_csv(&bm, &prov.for_seed(seed), &mut basins_csv)?;
            Ok(Extraction {
                seed,
                label: instance_label(&spec.problem, seed),
                basins_csv: String::from_utf8(basins_csv)?,
                networks,
            })
        })
        .collect()
}

fn extract(a: ExtractArgs) -> Result<()> {
    if a.formats.is_empty() {
        bail!("--formats needs at least one format");
    }
    let spec = experiment(&a.problem, a.edges.models(), vec![Stage::Generate, Stage::Extract])?;
    let formats: Vec<&str> = a.formats.iter().map(|f| f.name()).collect();
    let prov = Provenance::new(&format!("{}formats={}\n", spec.canonical(), formats.join(",")));
    let extractions = extract_all(&spec, &prov)?;
    let mut out = OutputSet::create(&spec.output_dir)?;
    for x in &extractions {
        let header = prov.for_seed(x.seed);
        out.write(&format!("{}.basins.csv", x.label), &x.basins_csv)?;
        for net in &x.networks {
            for &format in &a.formats {
                let name = format!("{}.{}.{}", x.label, net.model(), format.extension());
                out.write(&name, &network_to_string(net, format, &header))?;
            }
        }
    }
    finish(out);
    Ok(())
}

/// A network to measure and the name its outputs are filed under.
struct Labeled {
    label: String,
    seed: Option<u64>,
    net: LocalOptimaNetwork,
}

/// Networks named on the command line, or extracted from generated
/// instances, with the provenance of the run.
fn metric_inputs(a: &MetricsArgs, stage: Stage) -> Result<(Vec<Labeled>, Provenance, Vec<String>, PathBuf)> {
    if a.network.is_empty() {
        let spec = experiment(
            &a.problem,
            a.edges.models(),
            vec![Stage::Generate, Stage::Extract, stage],
        )?;
        let prov = Provenance::new(&format!(
            "{}max_path_nodes={}\n",
            spec.canonical(),
            a.max_path_nodes
        ));
        let labeled = extract_all(&spec, &prov)?
            .into_iter()
            .flat_map(|x| {
                let (label, seed) = (x.label, x.seed);
                x.networks.into_iter().map(move |net| Labeled {
                    label: label.clone(),
                    seed: Some(seed),
                    net,
                })
            })
            .collect();
        let header = prov.for_seeds(&spec.seeds());
        return Ok((labeled, prov, header, spec.output_dir));
    }
    let mut canonical = format!("stage={stage}\nmax_path_nodes={}\n", a.max_path_nodes);
    let mut labeled = Vec::new();
    for path in &a.network {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read network {}", path.display()))?;
        let net = read_pajek(&text).with_context(|| format!("in {}", path.display()))?;
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let _ = writeln!(canonical, "input={name} sha256={}", sha256_hex(text.as_bytes()));
        let suffix = format!(".{}.net", net.model());
        let label = name
            .strip_suffix(&suffix)
            .or_else(|| name.strip_suffix(".net"))
            .unwrap_or(&name)
            .to_string();
        labeled.push(Labeled {
            label,
            seed: None,
            net,
        });
    }
    let prov = Provenance::new(&canonical);
    let header = prov.for_inputs();
    Ok((labeled, prov, header, a.problem.out.out.clone()))
}

fn file_header(prov: &Provenance, item: &Labeled) -> Vec<String> {
    match item.seed {
        Some(seed) => prov.for_seed(seed),
        None => prov.for_inputs(),
    }
}

fn metrics(a: MetricsArgs) -> Result<()> {
    let (inputs, prov, header, dir) = metric_inputs(&a, Stage::Metrics)?;
    let options = ReportOptions {
        max_nodes_for_mean_path: a.max_path_nodes,
        ..ReportOptions::default()
    };
    let reports: Vec<_> = inputs
        .par_iter()
        .map(|item| build_report(&item.net, &options))
        .collect();
    let (_, columns) = report_csv_header()
        .split_once(',')
        .map(|(l, rest)| (l.to_string(), rest.to_string()))
        .expect("report has columns");
    let mut csv = comment_block(&header);
    let _ = writeln!(csv, "label,model,{columns}");
    let mut out = OutputSet::create(&dir)?;
    for (item, report) in inputs.iter().zip(&reports) {
        let row = report_csv_row(&item.label, report);
        let (label, rest) = row.split_once(',').expect("report row has columns");
        let _ = writeln!(csv, "{label},{},{rest}", item.net.model());
        for (stem, body) in histogram_csvs(&report.distributions, &file_header(&prov, item)) {
            out.write(&format!("{}.{}.{stem}.csv", item.label, item.net.model()), &body)?;
        }
    }
    out.write("metrics.csv", &csv)?;
    if let [(item, report)] = &inputs.iter().zip(&reports).collect::<Vec<_>>()[..] {
        println!("{} ({})", item.label, item.net.model());
        print!("{}", report_text(report));
    }
    finish(out);
    Ok(())
}

fn communities(a: MetricsArgs) -> Result<()> {
    let (inputs, prov, header, dir) = metric_inputs(&a, Stage::Communities)?;
    let partitions: Vec<_> = inputs
        .par_iter()
        .map(|item| detect_communities(&item.net))
        .collect();
    let mut summary = comment_block(&header);
    summary.push_str("label,model,nodes,communities,modularity\n");
    let mut out = OutputSet::create(&dir)?;
    for (item, p) in inputs.iter().zip(&partitions) {
        let model = item.net.model();
        let _ = writeln!(
            summary,
            "{},{model},{},{},{}",
            item.label,
            item.net.node_count(),
            p.community_count(),
            p.modularity
        );
        let mut body = comment_block(&file_header(&prov, item));
        let _ = writeln!(body, "# modularity: {}", p.modularity);
        body.push_str("node,rank,community\n");
        for (node, &c) in item.net.nodes().iter().zip(&p.assignment) {
            let _ = writeln!(body, "{},{},{c}", node.id, node.rank);
        }
        out.write(&format!("{}.{model}.communities.csv", item.label), &body)?;
        println!(
            "{} ({model}): {} communities, Q = {}",
            item.label,
            p.community_count(),
            p.modularity
        );
    }
    out.write("communities.csv", &summary)?;
    finish(out);
    Ok(())
}

fn ils(a: IlsArgs) -> Result<()> {
    let spec = experiment(&a.problem, Vec::new(), vec![Stage::Generate, Stage::Ils])?;
    let budget = a.max_evaluations.map_or("default".to_string(), |m| m.to_string());
    let prov = Provenance::new(&format!(
        "{}restarts={}\nstrength={}\nmax_evaluations={budget}\n",
        spec.canonical(),
        a.restarts,
        a.strength
    ));
    // Instances run one after another; the restarts of each are parallel.
    let studies = spec
        .seeds()
        .into_iter()
        .map(|seed| {
            let inst = spec.problem.instantiate(seed)?;
            let table = FitnessTable::build(&inst)?;
            let bm = basins_from_table(&table);
            let target = bm
                .global_optimum()
                .context("landscape has no local optima")?
                .fitness;
            let mut config = IlsConfig::for_landscape(&table)?.with_target(target);
            config.perturbation_strength = a.strength;
            if let Some(m) = a.max_evaluations {
                config.max_evaluations = m;
            }
            let runs = run_restarts(&table, &config, search_seed(seed), a.restarts)?;
            let estimate = estimate_ert(&runs, config.max_evaluations)?;
            Ok((seed, config, runs, estimate))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = OutputSet::create(&spec.output_dir)?;
    let mut ert = comment_block(&prov.for_seeds(&spec.seeds()));
    ert.push_str(
        "label,seed,target_fitness,max_evaluations,strength,runs,successes,success_rate,mean_success_evaluations,ert\n",
    );
    for (seed, config, runs, e) in &studies {
        let label = instance_label(&spec.problem, *seed);
        let mut body = comment_block(&prov.for_seed(*seed));
        body.push_str("run,success,evaluations,best_fitness,initial,local_search,perturbation\n");
        for (i, r) in runs.iter().enumerate() {
            let _ = writeln!(
                body,
                "{i},{},{},{},{},{},{}",
                r.success,
                r.evaluations_used,
                r.best_fitness,
                r.phases.initial,
                r.phases.local_search,
                r.phases.perturbation
            );
        }
        out.write(&format!("{label}.runs.csv"), &body)?;
        let _ = writeln!(
            ert,
            "{label},{seed},{},{},{},{},{},{},{},{}",
            config.target_fitness.expect("target is set"),
            config.max_evaluations,
            config.perturbation_strength,
            e.runs,
            e.successes,
            e.success_rate,
            opt(e.mean_success_evaluations),
            opt(e.ert)
        );
        println!(
            "{label}: {}/{} successes, ERT {}",
            e.successes,
            e.runs,
            e.ert.map_or("infinite".to_string(), |v| format!("{v:.1}"))
        );
    }
    out.write("ert.csv", &ert)?;
    finish(out);
    Ok(())
}

/// Rows of a CSV file with `#` comments, keyed by column name.
fn read_table(path: &Path) -> Result<(String, Vec<HashMap<String, String>>)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let rows = reader
        .records()
        .map(|rec| {
            let rec = rec.with_context(|| format!("malformed row in {}", path.display()))?;
            Ok(headers
                .iter()
                .zip(rec.iter())
                .map(|(h, v)| (h.to_string(), v.to_string()))
                .collect())
        })
        .collect::<Result<Vec<HashMap<_, _>>>>()?;
    Ok((text, rows))
}

fn column<'a>(row: &'a HashMap<String, String>, name: &str, path: &Path) -> Result<&'a str> {
    row.get(name)
        .map(String::as_str)
        .with_context(|| format!("{} has no column {name:?}", path.display()))
}

fn correlate(a: CorrelateArgs) -> Result<()> {
    if a.column.is_empty() {
        bail!("--column needs at least one metrics column");
    }
    let (metrics_text, metric_rows) = read_table(&a.metrics)?;
    let (ert_text, ert_rows) = read_table(&a.ert)?;
    let model = a.model.to_string();
    let columns = a.column.join(",");
    let prov = Provenance::new(&format!(
        "stage=correlate\nmetrics_sha256={}\nert_sha256={}\nmodel={model}\ncolumns={columns}\n",
        sha256_hex(metrics_text.as_bytes()),
        sha256_hex(ert_text.as_bytes()),
    ));
    let mut ert_by_label = HashMap::new();
    for row in &ert_rows {
        let value = column(row, "ert", &a.ert)?;
        ert_by_label.insert(
            column(row, "label", &a.ert)?.to_string(),
            value.parse::<f64>().ok(),
        );
    }
    // Instances with every requested column and a finite ERT.
    let mut kept: Vec<(String, Vec<f64>, f64)> = Vec::new();
    let mut dropped = 0usize;
    for row in &metric_rows {
        if column(row, "model", &a.metrics)? != model {
            continue;
        }
        let label = column(row, "label", &a.metrics)?;
        let values = a
            .column
            .iter()
            .map(|c| Ok(column(row, c, &a.metrics)?.parse::<f64>().ok()))
            .collect::<Result<Option<Vec<f64>>>>()?
            .filter(|v| v.iter().all(|x| x.is_finite()));
        match (values, ert_by_label.get(label).copied().flatten()) {
            (Some(v), Some(e)) if e.is_finite() && e > 0.0 => kept.push((label.to_string(), v, e)),
            _ => dropped += 1,
        }
    }
    if kept.len() < 3 {
        bail!(
            "only {} instances have {columns} ({model}) and a finite ERT; need at least 3",
            kept.len()
        );
    }
    let y: Vec<f64> = kept.iter().map(|k| k.2.ln()).collect();
    let predictors: Vec<Vec<f64>> = (0..a.column.len())
        .map(|c| kept.iter().map(|k| k.1[c]).collect())
        .collect();

    let header = comment_block(&prov.for_inputs());
    let mut summary = header.clone();
    summary.push_str("column,model,response,pairs,dropped,r,r_squared,slope,intercept,p_value,spearman\n");
    for (name, x) in a.column.iter().zip(&predictors) {
        let fit = pearson_and_fit(x, &y).with_context(|| format!("fitting ln(ERT) on {name}"))?;
        let p = correlation_p_value(fit.r, fit.sample_count)?;
        let _ = writeln!(
            summary,
            "{name},{model},ln_ert,{},{dropped},{},{},{},{},{p},{}",
            kept.len(),
            fit.r,
            fit.r_squared,
            fit.slope,
            fit.intercept,
            opt(spearman(x, &y)?)
        );
        println!(
            "ln(ERT) vs {name} ({model}): r = {:.4}, p = {p:.3e}, n = {}, dropped {dropped}",
            fit.r,
            kept.len()
        );
    }
    let mut joined = header.clone();
    let _ = writeln!(joined, "label,{columns},ert,ln_ert");
    for (label, v, e) in &kept {
        let cells: Vec<String> = v.iter().map(f64::to_string).collect();
        let _ = writeln!(joined, "{label},{},{e},{}", cells.join(","), e.ln());
    }
    let mut out = OutputSet::create(&a.out.out)?;
    out.write("correlation.csv", &summary)?;
    out.write("correlation.pairs.csv", &joined)?;
    if predictors.len() > 1 {
        let fit = multiple_regression(&predictors, &y)?;
        let mut body = header;
        let _ = writeln!(body, "term,coefficient");
        let _ = writeln!(body, "intercept,{}", fit.coefficients[0]);
        for (name, c) in a.column.iter().zip(&fit.coefficients[1..]) {
            let _ = writeln!(body, "{name},{c}");
        }
        let _ = writeln!(body, "# r_squared: {}", fit.r_squared);
        out.write("correlation.multiple.csv", &body)?;
        println!("ln(ERT) on {columns}: R^2 = {:.4}", fit.r_squared);
    }
    finish(out);
    Ok(())
}

fn seeds_from(base: u64, count: u64) -> Vec<u64> {
    (0..count as usize).map(|i| instance_seed(base, i)).collect()
}

fn summary_cells(s: &EnsembleSummary) -> String {
    format!("{},{}", s.mean, opt(s.standard_deviation))
}

fn optional_cells(s: &Option<EnsembleSummary>) -> String {
    s.as_ref().map_or(",".to_string(), summary_cells)
}

fn network_value(a: &InstanceAnalysis, model: EdgeModel, f: fn(&lon_core::MetricsReport) -> Option<f64>) -> String {
    opt(a.network(model).and_then(|n| f(&n.report)))
}

fn table2(a: Table2Args) -> Result<()> {
    if a.k.is_empty() {
        bail!("--K needs at least one value");
    }
    let seeds = seeds_from(a.seed, a.instances);
    let mut canonical = String::new();
    for &k in &a.k {
        let spec = ExperimentSpec {
            problem: ProblemSpec::Nk { n: a.n, k },
            base_seed: a.seed,
            instances: seeds.len(),
            edge_models: NK_TABLE_MODELS.to_vec(),
            stages: vec![Stage::Generate, Stage::Extract, Stage::Metrics],
            output_dir: a.out.out.clone(),
        };
        spec.validate()?;
        canonical.push_str(&spec.canonical());
    }
    let prov = Provenance::new(&canonical);

    let models: Vec<String> = NK_TABLE_MODELS.iter().map(|m| m.to_string()).collect();
    let mut rows = Vec::new();
    let mut summary = String::from("K,N,instances,optima_mean,optima_sd");
    for kind in ["density_percent", "optimum_path"] {
        for m in &models {
            let _ = write!(summary, ",{kind}_{m}_mean,{kind}_{m}_sd");
        }
    }
    summary.push('\n');
    let mut per_instance = String::from("K,seed,optima,global_basin_fraction,fitness_basin_spearman");
    for kind in ["density_percent", "optimum_path"] {
        for m in &models {
            let _ = write!(per_instance, ",{kind}_{m}");
        }
    }
    per_instance.push('\n');

    for &k in &a.k {
        let start = Instant::now();
        let (row, analyses) = reproduce_nk_row(a.n, k, &seeds)?;
        eprintln!(
            "K={k}: {} instances in {:.1}s",
            seeds.len(),
            start.elapsed().as_secs_f64()
        );
        let _ = write!(summary, "{k},{},{},{}", a.n, seeds.len(), summary_cells(&row.optima));
        for s in &row.density_percent {
            let _ = write!(summary, ",{}", summary_cells(s));
        }
        for s in &row.optimum_path {
            let _ = write!(summary, ",{}", optional_cells(s));
        }
        summary.push('\n');
        for an in &analyses {
            let _ = write!(
                per_instance,
                "{k},{},{},{},{}",
                an.seed,
                an.optimum_count,
                an.global_basin_fraction,
                opt(an.fitness_basin_spearman)
            );
            for m in NK_TABLE_MODELS {
                let _ = write!(per_instance, ",{}", network_value(an, m, |r| Some(r.edge_density_percent)));
            }
            for m in NK_TABLE_MODELS {
                let _ = write!(per_instance, ",{}", network_value(an, m, |r| r.optimum_path_length()));
            }
            per_instance.push('\n');
        }
        rows.push(row);
    }

    let header = comment_block(&prov.for_seeds(&seeds));
    let table = format_nk_table(&rows);
    let mut out = OutputSet::create(&a.out.out)?;
    out.write("table2.txt", &format!("{header}{table}"))?;
    out.write("table2.csv", &format!("{header}{summary}"))?;
    out.write("table2.instances.csv", &format!("{header}{per_instance}"))?;
    print!("{table}");
    finish(out);
    Ok(())
}

fn table3(a: Table3Args) -> Result<()> {
    if a.sizes.is_empty() || a.classes.is_empty() {
        bail!("--sizes and --classes need at least one value each");
    }
    let seeds = seeds_from(a.seed, a.instances);
    let mut canonical = String::new();
    for &class in &a.classes {
        for &n in &a.sizes {
            let spec = ExperimentSpec {
                problem: lon_core::experiment::qap_problem(class.into(), n)?,
                base_seed: a.seed,
                instances: seeds.len(),
                edge_models: vec![EdgeModel::BasinTransition],
                stages: vec![Stage::Generate, Stage::Extract, Stage::Metrics, Stage::Communities],
                output_dir: a.out.out.clone(),
            };
            spec.validate()?;
            canonical.push_str(&spec.canonical());
        }
    }
    let prov = Provenance::new(&canonical);

    let mut cells = Vec::new();
    let mut summary = String::from(
        "class,n,instances,optima_mean,optima_sd,edge_density_mean,edge_density_sd,weighted_clustering_mean,weighted_clustering_sd,disparity_mean,disparity_sd\n",
    );
    let mut per_instance =
        String::from("class,n,seed,optima,edge_density,weighted_clustering,disparity,modularity\n");
    for &class in &a.classes {
        let class = QapClass::from(class);
        for &n in &a.sizes {
            let start = Instant::now();
            let (cell, analyses) = reproduce_qap_cell(class, n, &seeds)?;
            eprintln!(
                "{class} n={n}: {} instances in {:.1}s",
                seeds.len(),
                start.elapsed().as_secs_f64()
            );
            let _ = writeln!(
                summary,
                "{class},{n},{},{},{},{},{}",
                seeds.len(),
                summary_cells(&cell.optima),
                summary_cells(&cell.density),
                summary_cells(&cell.weighted_clustering),
                optional_cells(&cell.disparity)
            );
            for an in &analyses {
                let basin = an.network(EdgeModel::BasinTransition);
                let _ = writeln!(
                    per_instance,
                    "{class},{n},{},{},{},{},{},{}",
                    an.seed,
                    an.optimum_count,
                    network_value(an, EdgeModel::BasinTransition, |r| Some(r.edge_density)),
                    network_value(an, EdgeModel::BasinTransition, |r| Some(r.mean_weighted_clustering)),
                    network_value(an, EdgeModel::BasinTransition, |r| r.mean_disparity),
                    opt(basin.and_then(|b| b.modularity))
                );
            }
            cells.push(cell);
        }
    }

    let header = comment_block(&prov.for_seeds(&seeds));
    let table = format_qap_table(&cells);
    let mut out = OutputSet::create(&a.out.out)?;
    out.write("table3.txt", &format!("{header}{table}"))?;
    out.write("table3.csv", &format!("{header}{summary}"))?;
    out.write("table3.instances.csv", &format!("{header}{per_instance}"))?;
    print!("{table}");
    finish(out);
    Ok(())
}
