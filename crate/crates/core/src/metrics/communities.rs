//! Agglomerative greedy modularity maximization.
//!
//! The directed network is first projected to an undirected weighted graph
//! with `w'_ij = (w_ij + w_ji) / 2` and self-loops dropped. Starting from
//! singletons, the pair of adjacent communities with the largest modularity
//! gain is merged until no adjacent pair remains; the partition with the
//! highest modularity along that sequence is returned. Equal gains merge the
//! lexicographically smallest id pair first, and the surviving community
//! keeps the smaller id.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use crate::network::LocalOptimaNetwork;

#[derive(Clone, Debug, PartialEq)]
pub struct CommunityPartition {
    /// Community per node; communities are numbered by their smallest node.
    pub assignment: Vec<u32>,
    pub modularity: f64,
}

impl CommunityPartition {
    pub fn community_count(&self) -> usize {
        self.assignment
            .iter()
            .map(|&c| c as usize + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.community_count()];
        for &c in &self.assignment {
            sizes[c as usize] += 1;
        }
        sizes
    }
}

/// Undirected pairs `(i, j, w')` with `i < j`, sorted.
fn project(net: &LocalOptimaNetwork) -> Vec<(u32, u32, f64)> {
    let mut halves: Vec<(u32, u32, f64)> = net
        .edges()
        .iter()
        .filter(|e| e.source != e.target)
        .map(|e| {
            (
                e.source.min(e.target),
                e.source.max(e.target),
                e.weight / 2.0,
            )
        })
        .collect();
    halves.sort_by_key(|&(i, j, _)| (i, j));
    let mut out: Vec<(u32, u32, f64)> = Vec::with_capacity(halves.len());
    for (i, j, w) in halves {
        match out.last_mut() {
            Some(last) if (last.0, last.1) == (i, j) => last.2 += w,
            _ => out.push((i, j, w)),
        }
    }
    out
}

/// Modularity of `assignment` on the undirected projection of `net`.
/// Zero when the projection has no edges.
pub fn modularity(net: &LocalOptimaNetwork, assignment: &[u32]) -> f64 {
    assert_eq!(assignment.len(), net.node_count());
    let pairs = project(net);
    let total: f64 = pairs.iter().map(|p| p.2).sum();
    if total <= 0.0 {
        return 0.0;
    }
    let communities = assignment
        .iter()
        .map(|&c| c as usize + 1)
        .max()
        .unwrap_or(0);
    let mut inside = vec![0.0; communities];
    let mut degree = vec![0.0; communities];
    for &(i, j, w) in &pairs {
        let (ci, cj) = (assignment[i as usize], assignment[j as usize]);
        if ci == cj {
            inside[ci as usize] += w;
        }
        degree[ci as usize] += w;
        degree[cj as usize] += w;
    }
    inside
        .iter()
        .zip(&degree)
        .map(|(&e, &a)| e / total - (a / (2.0 * total)).powi(2))
        .sum()
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    gain: f64,
    i: u32,
    j: u32,
    version_i: u32,
    version_j: u32,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| (other.i, other.j).cmp(&(self.i, self.j)))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn detect_communities(net: &LocalOptimaNetwork) -> CommunityPartition {
    let n = net.node_count();
    let pairs = project(net);
    let total: f64 = pairs.iter().map(|p| p.2).sum();
    if n == 0 || total <= 0.0 {
        return CommunityPartition {
            assignment: (0..n as u32).collect(),
            modularity: 0.0,
        };
    }

    // e[c][d]: fraction of edge ends joining c and d; a[c]: fraction at c.
    let mut e: Vec<BTreeMap<u32, f64>> = vec![BTreeMap::new(); n];
    let mut a = vec![0.0f64; n];
    for &(i, j, w) in &pairs {
        let x = w / (2.0 * total);
        e[i as usize].insert(j, x);
        e[j as usize].insert(i, x);
        a[i as usize] += x;
        a[j as usize] += x;
    }
    let mut alive = vec![true; n];
    let mut version = vec![0u32; n];
    let mut heap = BinaryHeap::new();
    let candidate = |i: u32, j: u32, x: f64, a: &[f64], version: &[u32]| {
        let (i, j) = (i.min(j), i.max(j));
        Candidate {
            gain: 2.0 * (x - a[i as usize] * a[j as usize]),
            i,
            j,
            version_i: version[i as usize],
            version_j: version[j as usize],
        }
    };
    for i in 0..n {
        for (&j, &x) in e[i].range(i as u32 + 1..) {
            heap.push(candidate(i as u32, j, x, &a, &version));
        }
    }

    let mut q: f64 = -a.iter().map(|x| x * x).sum::<f64>();
    let mut best_q = q;
    let mut merges: Vec<(u32, u32)> = Vec::new();
    let mut best_len = 0;
    while let Some(c) = heap.pop() {
        let (i, j) = (c.i as usize, c.j as usize);
        if !alive[i] || !alive[j] || version[i] != c.version_i || version[j] != c.version_j {
            continue;
        }
        q += c.gain;
        merges.push((c.i, c.j));
        let absorbed = std::mem::take(&mut e[j]);
        for (&k, &x) in &absorbed {
            let k = k as usize;
            e[k].remove(&c.j);
            if k == i {
                continue;
            }
            *e[i].entry(k as u32).or_insert(0.0) += x;
            *e[k].entry(c.i).or_insert(0.0) += x;
        }
        a[i] += a[j];
        a[j] = 0.0;
        alive[j] = false;
        version[i] += 1;
        for (&k, &x) in &e[i] {
            heap.push(candidate(c.i, k, x, &a, &version));
        }
        if q > best_q {
            best_q = q;
            best_len = merges.len();
        }
    }

    let mut parent: Vec<u32> = (0..n as u32).collect();
    for &(keep, gone) in &merges[..best_len] {
        parent[gone as usize] = keep;
    }
    // Survivors have smaller ids than what they absorbed, so one ascending
    // pass resolves every chain.
    for v in 0..n {
        let p = parent[v] as usize;
        parent[v] = parent[p];
    }
    let mut label = vec![u32::MAX; n];
    let mut next = 0;
    let assignment: Vec<u32> = parent
        .iter()
        .map(|&root| {
            let slot = &mut label[root as usize];
            if *slot == u32::MAX {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect();
    let modularity = modularity(net, &assignment);
    CommunityPartition {
        assignment,
        modularity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::testing::{graph, undirected};

    fn two_cliques() -> LocalOptimaNetwork {
        let mut pairs = Vec::new();
        for base in [0, 5] {
            for i in 0..5 {
                for j in i + 1..5 {
                    pairs.push((base + i, base + j));
                }
            }
        }
        pairs.push((4, 5));
        undirected(10, &pairs)
    }

    #[test]
    fn two_cliques_split_at_the_bridge() {
        let net = two_cliques();
        let p = detect_communities(&net);
        assert_eq!(p.assignment, vec![0, 0, 0, 0, 0, 1, 1, 1, 1, 1]);
        assert!(p.modularity > 0.3);

        let mut best = f64::NEG_INFINITY;
        for mask in 0u32..1 << 10 {
            let assignment: Vec<u32> = (0..10).map(|v| (mask >> v) & 1).collect();
            best = best.max(modularity(&net, &assignment));
        }
        assert!(
            (p.modularity - best).abs() <= 1e-12,
            "{} vs {best}",
            p.modularity
        );
    }

    #[test]
    fn modularity_by_hand() {
        // Single edge, both ends together: Q = 1 - 1 = 0; apart: -1/2.
        let net = undirected(2, &[(0, 1)]);
        assert_eq!(modularity(&net, &[0, 0]), 0.0);
        assert_eq!(modularity(&net, &[0, 1]), -0.5);
    }

    #[test]
    fn degenerate_networks() {
        let single = graph(1, &[(0, 0, 1.0)]);
        let p = detect_communities(&single);
        assert_eq!(p.assignment, vec![0]);
        assert_eq!(p.modularity, 0.0);

        let isolated = graph(3, &[]);
        assert_eq!(detect_communities(&isolated).modularity, 0.0);
    }

    #[test]
    fn complete_uniform_graph_has_no_structure() {
        let mut pairs = Vec::new();
        for i in 0..8 {
            for j in i + 1..8 {
                pairs.push((i, j));
            }
        }
        let p = detect_communities(&undirected(8, &pairs));
        assert!(p.modularity.abs() < 0.05, "Q = {}", p.modularity);
    }

    #[test]
    fn directed_weights_are_averaged() {
        let net = graph(2, &[(0, 1, 0.2), (1, 0, 0.6), (1, 1, 0.4)]);
        let pairs = project(&net);
        assert_eq!(pairs, vec![(0, 1, 0.4)]);
    }

    #[test]
    fn power_of_two_scaling_keeps_partition() {
        let net = two_cliques().scaled(0.125).unwrap();
        let p = detect_communities(&net);
        assert_eq!(p, detect_communities(&two_cliques()));
    }
}
