//! Statistics of local optima networks.
//!
//! Self-loops are stored in every network, but each metric states whether it
//! uses them; [`SELF_LOOP_POLICY`] lists the choice per metric.

mod communities;
mod distributions;
mod paths;

pub use communities::{detect_communities, modularity, CommunityPartition};
pub use distributions::{
    degree_and_weight_distributions, DegreeHistogram, Distributions, LogBin, LogHistogram,
    DEFAULT_BINS_PER_DECADE,
};
pub use paths::{
    distances_to, mean_path_length, path_to_global_optimum, shortest_paths, DistanceTable,
    OptimumPathSummary, PathSummary,
};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::LocalOptimaNetwork;

/// How each reported metric treats self-loops.
pub const SELF_LOOP_POLICY: &[(&str, &str)] = &[
    ("edge_count", "included"),
    ("edge_density", "included"),
    ("degree", "excluded"),
    ("clustering", "excluded"),
    ("weighted_clustering", "excluded"),
    ("strength", "excluded"),
    ("disparity", "excluded"),
    ("shortest_paths", "excluded"),
    ("self_loop_mean_weight", "only self-loops"),
    ("off_diagonal_mean_weight", "excluded"),
    ("weight_distributions", "excluded"),
    ("communities", "excluded"),
];

fn check_node(net: &LocalOptimaNetwork, node: u32) -> Result<()> {
    if net.contains(node) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "node {node} not in a network of {} nodes",
            net.node_count()
        )))
    }
}

fn non_loop_out(net: &LocalOptimaNetwork, node: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
    net.out_edges(node)
        .iter()
        .filter(move |e| e.target != node)
        .map(|e| (e.target, e.weight))
}

pub fn out_degree(net: &LocalOptimaNetwork, node: u32) -> usize {
    non_loop_out(net, node).count()
}

/// `s_i = sum_{j != i} w_ij`.
pub fn strength(net: &LocalOptimaNetwork, node: u32) -> f64 {
    non_loop_out(net, node).map(|(_, w)| w).sum()
}

/// Self-loop-free adjacency in both directions plus the undirected,
/// unweighted projection.
struct Adjacency {
    out: Vec<Vec<(u32, f64)>>,
    incoming: Vec<Vec<u32>>,
    undirected: Vec<Vec<u32>>,
}

/// Per-worker dense scratch, left zeroed between nodes.
struct Scratch {
    weight_to: Vec<f64>,
    mark: Vec<bool>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            weight_to: vec![0.0; n],
            mark: vec![false; n],
        }
    }
}

impl Adjacency {
    fn new(net: &LocalOptimaNetwork) -> Self {
        let n = net.node_count();
        let mut out = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut undirected = vec![Vec::new(); n];
        for e in net.edges().iter().filter(|e| e.source != e.target) {
            out[e.source as usize].push((e.target, e.weight));
            incoming[e.target as usize].push(e.source);
            undirected[e.source as usize].push(e.target);
            undirected[e.target as usize].push(e.source);
        }
        for list in &mut undirected {
            list.sort_unstable();
            list.dedup();
        }
        Adjacency {
            out,
            incoming,
            undirected,
        }
    }

    fn clustering(&self, i: u32, scratch: &mut Scratch) -> f64 {
        let nbrs = &self.undirected[i as usize];
        let k = nbrs.len();
        if k < 2 {
            return 0.0;
        }
        for &j in nbrs {
            scratch.mark[j as usize] = true;
        }
        // Each linked neighbor pair is seen once from either end.
        let ends: usize = nbrs
            .iter()
            .map(|&j| {
                self.undirected[j as usize]
                    .iter()
                    .filter(|&&h| scratch.mark[h as usize])
                    .count()
            })
            .sum();
        for &j in nbrs {
            scratch.mark[j as usize] = false;
        }
        ends as f64 / (k * (k - 1)) as f64
    }

    fn weighted_clustering(&self, i: u32, scratch: &mut Scratch) -> f64 {
        let out = &self.out[i as usize];
        let k = out.len();
        let s: f64 = out.iter().map(|e| e.1).sum();
        if k < 2 || s <= 0.0 {
            return 0.0;
        }
        for &(h, w) in out {
            scratch.weight_to[h as usize] = w;
        }
        for &h in &self.incoming[i as usize] {
            scratch.mark[h as usize] = true;
        }
        let mut sum = 0.0;
        for &(j, w_ij) in out {
            for &(h, _) in &self.out[j as usize] {
                if h != i && scratch.mark[h as usize] {
                    sum += (w_ij + scratch.weight_to[h as usize]) / 2.0;
                }
            }
        }
        for &(h, _) in out {
            scratch.weight_to[h as usize] = 0.0;
        }
        for &h in &self.incoming[i as usize] {
            scratch.mark[h as usize] = false;
        }
        sum / (s * (k - 1) as f64)
    }
}

/// `2e / (k(k-1))` on the undirected projection; 0 when `k < 2`.
pub fn clustering_coefficient(net: &LocalOptimaNetwork, node: u32) -> Result<f64> {
    check_node(net, node)?;
    Ok(Adjacency::new(net).clustering(node, &mut Scratch::new(net.node_count())))
}

/// `(1 / (s_i (k_i - 1))) * sum_{j,h} ((w_ij + w_ih) / 2) a_ij a_jh a_hi`
/// over the directed out-adjacency, with `j`, `h` distinct and different
/// from `i`. Zero when `k_i < 2` or `s_i = 0`.
pub fn weighted_clustering(net: &LocalOptimaNetwork, node: u32) -> Result<f64> {
    check_node(net, node)?;
    Ok(Adjacency::new(net).weighted_clustering(node, &mut Scratch::new(net.node_count())))
}

/// `Y2(i) = sum_{j != i} (w_ij / s_i)^2`; `None` without out-edges.
pub fn disparity(net: &LocalOptimaNetwork, node: u32) -> Result<Option<f64>> {
    check_node(net, node)?;
    Ok(disparity_unchecked(net, node))
}

fn disparity_unchecked(net: &LocalOptimaNetwork, i: u32) -> Option<f64> {
    let s = strength(net, i);
    (s > 0.0).then(|| non_loop_out(net, i).map(|(_, w)| (w / s).powi(2)).sum())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReportOptions {
    /// Networks with more nodes skip the all-pairs mean path length.
    pub max_nodes_for_mean_path: usize,
    pub bins_per_decade: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_nodes_for_mean_path: 2000,
            bins_per_decade: DEFAULT_BINS_PER_DECADE,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub node_count: usize,
    pub edge_count: usize,
    /// `N_e / N_v^2`.
    pub edge_density: f64,
    /// `edge_density * 100`.
    pub edge_density_percent: f64,
    pub mean_out_degree: f64,
    pub mean_clustering: f64,
    pub mean_weighted_clustering: f64,
    /// Mean of `Y2` over nodes with at least one out-edge.
    pub mean_disparity: Option<f64>,
    pub disparity: Vec<Option<f64>>,
    pub mean_strength: f64,
    /// `None` when no pair is connected or the network exceeds
    /// [`ReportOptions::max_nodes_for_mean_path`].
    pub mean_path: Option<PathSummary>,
    pub path_to_optimum: Option<OptimumPathSummary>,
    /// Mean `w_ii` over all nodes, counting a missing self-loop as 0.
    pub self_loop_mean_weight: f64,
    /// Mean `w_ij` over existing edges with `j != i`.
    pub off_diagonal_mean_weight: Option<f64>,
    pub distributions: Distributions,
}

impl MetricsReport {
    pub fn mean_path_length(&self) -> Option<f64> {
        self.mean_path.and_then(|p| p.mean)
    }

    pub fn optimum_path_length(&self) -> Option<f64> {
        self.path_to_optimum.map(|p| p.mean)
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

pub fn build_report(net: &LocalOptimaNetwork, options: &ReportOptions) -> MetricsReport {
    let n = net.node_count();
    let ids = 0..n as u32;
    let adjacency = Adjacency::new(net);
    let (clustering, weighted): (Vec<f64>, Vec<f64>) = (0..n as u32)
        .into_par_iter()
        .map_init(
            || Scratch::new(n),
            |scratch, i| {
                (
                    adjacency.clustering(i, scratch),
                    adjacency.weighted_clustering(i, scratch),
                )
            },
        )
        .unzip();
    let disparity: Vec<Option<f64>> = ids.clone().map(|i| disparity_unchecked(net, i)).collect();
    let self_loops = net.edges().iter().filter(|e| e.source == e.target);
    let off_diagonal = net.edges().iter().filter(|e| e.source != e.target);
    let edge_density = if n == 0 {
        0.0
    } else {
        net.edge_count() as f64 / (n as f64 * n as f64)
    };
    MetricsReport {
        node_count: n,
        edge_count: net.edge_count(),
        edge_density,
        edge_density_percent: edge_density * 100.0,
        mean_out_degree: mean(ids.clone().map(|i| out_degree(net, i) as f64)).unwrap_or(0.0),
        mean_clustering: mean(clustering.into_iter()).unwrap_or(0.0),
        mean_weighted_clustering: mean(weighted.into_iter()).unwrap_or(0.0),
        mean_disparity: mean(disparity.iter().flatten().copied()),
        disparity,
        mean_strength: mean(ids.clone().map(|i| strength(net, i))).unwrap_or(0.0),
        mean_path: (n <= options.max_nodes_for_mean_path).then(|| mean_path_length(net)),
        path_to_optimum: path_to_global_optimum(net),
        self_loop_mean_weight: if n == 0 {
            0.0
        } else {
            self_loops.map(|e| e.weight).sum::<f64>() / n as f64
        },
        off_diagonal_mean_weight: mean(off_diagonal.map(|e| e.weight)),
        distributions: degree_and_weight_distributions(net, options.bins_per_decade),
    }
}
