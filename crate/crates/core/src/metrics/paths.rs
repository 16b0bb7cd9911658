//! Shortest paths with edge length `1 / w_ij`. Self-loops are ignored.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::network::LocalOptimaNetwork;

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    node: u32,
}

impl Eq for Entry {}

impl Ord for Entry {
    // Reversed so the max-heap pops the nearest node; ties by lower id.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Adjacency with reciprocal lengths, self-loops removed.
struct LengthGraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    lengths: Vec<f64>,
}

impl LengthGraph {
    fn forward(net: &LocalOptimaNetwork) -> Self {
        Self::from_edges(
            net.node_count(),
            net.edges().iter().map(|e| (e.source, e.target, e.weight)),
        )
    }

    fn reversed(net: &LocalOptimaNetwork) -> Self {
        Self::from_edges(
            net.node_count(),
            net.edges().iter().map(|e| (e.target, e.source, e.weight)),
        )
    }

    fn from_edges(n: usize, edges: impl Iterator<Item = (u32, u32, f64)>) -> Self {
        let mut list: Vec<(u32, u32, f64)> = edges.filter(|(s, t, _)| s != t).collect();
        list.sort_by_key(|&(s, t, _)| (s, t));
        let mut offsets = vec![0usize; n + 1];
        for &(s, _, _) in &list {
            offsets[s as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        LengthGraph {
            offsets,
            targets: list.iter().map(|e| e.1).collect(),
            lengths: list.iter().map(|e| 1.0 / e.2).collect(),
        }
    }

    fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    fn dijkstra(&self, source: u32) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.node_count()];
        let mut heap = BinaryHeap::new();
        dist[source as usize] = 0.0;
        heap.push(Entry {
            dist: 0.0,
            node: source,
        });
        while let Some(Entry { dist: d, node }) = heap.pop() {
            let u = node as usize;
            if d > dist[u] {
                continue;
            }
            for k in self.offsets[u]..self.offsets[u + 1] {
                let v = self.targets[k] as usize;
                let nd = d + self.lengths[k];
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Entry {
                        dist: nd,
                        node: v as u32,
                    });
                }
            }
        }
        dist
    }
}

/// All-pairs distances, `f64::INFINITY` where no path exists.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<f64>,
}

impl DistanceTable {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, from: u32, to: u32) -> f64 {
        self.dist[from as usize * self.n + to as usize]
    }

    pub fn row(&self, from: u32) -> &[f64] {
        let i = from as usize;
        &self.dist[i * self.n..(i + 1) * self.n]
    }
}

/// One Dijkstra per source, sources processed in parallel.
pub fn shortest_paths(net: &LocalOptimaNetwork) -> DistanceTable {
    let g = LengthGraph::forward(net);
    let n = net.node_count();
    let rows: Vec<Vec<f64>> = (0..n as u32)
        .into_par_iter()
        .map(|s| g.dijkstra(s))
        .collect();
    DistanceTable {
        n,
        dist: rows.concat(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSummary {
    /// Mean over ordered pairs `i != j` with a finite path; `None` if none.
    pub mean: Option<f64>,
    pub reachable_pairs: u64,
    pub unreachable_pairs: u64,
}

/// Average shortest path length over reachable ordered pairs, without
/// materializing the full table.
pub fn mean_path_length(net: &LocalOptimaNetwork) -> PathSummary {
    let g = LengthGraph::forward(net);
    let n = net.node_count();
    let per_source: Vec<(f64, u64)> = (0..n as u32)
        .into_par_iter()
        .map(|s| {
            let d = g.dijkstra(s);
            d.iter()
                .enumerate()
                .filter(|&(t, x)| t != s as usize && x.is_finite())
                .fold((0.0, 0u64), |(sum, c), (_, x)| (sum + x, c + 1))
        })
        .collect();
    let (sum, reachable) = per_source
        .iter()
        .fold((0.0, 0u64), |(a, b), &(s, c)| (a + s, b + c));
    let pairs = (n as u64) * (n as u64).saturating_sub(1);
    PathSummary {
        mean: (reachable > 0).then(|| sum / reachable as f64),
        reachable_pairs: reachable,
        unreachable_pairs: pairs - reachable,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimumPathSummary {
    pub global_optimum: u32,
    /// Mean distance from every other node that can reach the optimum.
    pub mean: f64,
    pub reachable: u64,
    pub unreachable: u64,
    /// Set for a one-node network, whose empty mean is reported as 0.
    pub trivial: bool,
}

/// `L_opt`: mean shortest distance from the other nodes to the global
/// optimum. `None` for an empty network or when no node reaches it.
pub fn path_to_global_optimum(net: &LocalOptimaNetwork) -> Option<OptimumPathSummary> {
    let target = net.global_optimum()?;
    if net.node_count() == 1 {
        return Some(OptimumPathSummary {
            global_optimum: target,
            mean: 0.0,
            reachable: 0,
            unreachable: 0,
            trivial: true,
        });
    }
    distances_to(net, target).and_then(|d| {
        let finite: Vec<f64> = d
            .iter()
            .enumerate()
            .filter(|&(i, x)| i != target as usize && x.is_finite())
            .map(|(_, &x)| x)
            .collect();
        let reachable = finite.len() as u64;
        (reachable > 0).then(|| OptimumPathSummary {
            global_optimum: target,
            mean: finite.iter().sum::<f64>() / reachable as f64,
            reachable,
            unreachable: (net.node_count() as u64 - 1) - reachable,
            trivial: false,
        })
    })
}

/// Distance from every node to `target`, via one search on the reversed graph.
pub fn distances_to(net: &LocalOptimaNetwork, target: u32) -> Option<Vec<f64>> {
    net.contains(target)
        .then(|| LengthGraph::reversed(net).dijkstra(target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::testing::graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_edge_reciprocal() {
        let g = graph(2, &[(0, 1, 0.5)]);
        let t = shortest_paths(&g);
        assert_eq!(t.get(0, 1), 2.0);
        assert_eq!(t.get(1, 0), f64::INFINITY);
        let s = mean_path_length(&g);
        assert_eq!(s.mean, Some(2.0));
        assert_eq!((s.reachable_pairs, s.unreachable_pairs), (1, 1));
    }

    #[test]
    fn unit_three_cycle_both_ways() {
        let g = graph(
            3,
            &[
                (0, 1, 1.0),
                (1, 2, 1.0),
                (2, 0, 1.0),
                (1, 0, 1.0),
                (2, 1, 1.0),
                (0, 2, 1.0),
            ],
        );
        assert_eq!(mean_path_length(&g).mean, Some(1.0));
    }

    #[test]
    fn self_loops_do_not_shorten_paths() {
        let g = graph(2, &[(0, 0, 0.9), (0, 1, 0.1)]);
        assert!((shortest_paths(&g).get(0, 1) - 10.0).abs() < 1e-12);
    }

    /// Floyd-Warshall over the same reciprocal lengths.
    fn floyd_warshall(n: usize, edges: &[(u32, u32, f64)]) -> Vec<f64> {
        let mut d = vec![f64::INFINITY; n * n];
        for i in 0..n {
            d[i * n + i] = 0.0;
        }
        for &(s, t, w) in edges {
            if s != t {
                let x = &mut d[s as usize * n + t as usize];
                *x = x.min(1.0 / w);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i * n + k] + d[k * n + j];
                    if via < d[i * n + j] {
                        d[i * n + j] = via;
                    }
                }
            }
        }
        d
    }

    #[test]
    fn matches_floyd_warshall_on_random_digraphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..20 {
            let n = 30;
            let mut edges = Vec::new();
            for s in 0..n {
                for t in 0..n {
                    if rng.random::<f64>() < 0.1 {
                        edges.push((s, t, rng.random_range(0.01..1.0)));
                    }
                }
            }
            let g = graph(n, &edges);
            let table = shortest_paths(&g);
            let oracle = floyd_warshall(n as usize, &edges);
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = (table.get(i, j), oracle[(i * n + j) as usize]);
                    assert!(
                        a == b || (a - b).abs() <= 1e-9 * b,
                        "d({i},{j}) = {a}, oracle {b}"
                    );
                }
            }
            // Reverse search agrees with the forward table column.
            let to = distances_to(&g, 7).unwrap();
            for i in 0..n {
                let (a, b) = (to[i as usize], table.get(i, 7));
                assert!(a == b || (a - b).abs() <= 1e-9 * b);
            }
        }
    }

    #[test]
    fn optimum_path_conventions() {
        let single = graph(1, &[(0, 0, 1.0)]);
        let s = path_to_global_optimum(&single).unwrap();
        assert!(s.trivial);
        assert_eq!(s.mean, 0.0);

        // Fitness equals id, so node 2 is the global optimum.
        let g = graph(3, &[(0, 2, 0.5), (1, 0, 1.0)]);
        let s = path_to_global_optimum(&g).unwrap();
        assert_eq!(s.global_optimum, 2);
        assert_eq!(s.mean, (2.0 + 3.0) / 2.0);
        assert_eq!(s.unreachable, 0);

        let cut = graph(3, &[(2, 0, 0.5)]);
        assert_eq!(path_to_global_optimum(&cut), None);
    }
}
