//! Brute-force oracles shared by the integration tests and the acceptance
//! harness. Each recomputes a quantity from its definition, independently
//! of the library's optimized paths.

#![allow(dead_code)]

use lon_core::{
    hill_climb, BasinMap, Direction, EdgeModel, Landscape, LocalOptimaNetwork, LonEdge, LonNode,
    Solution,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank of the optimum reached from every solution, one climb each.
pub fn climb_oracle<L: Landscape>(l: &L) -> Vec<u64> {
    let nb = l.neighborhood();
    (0..nb.space_size().unwrap() as u64)
        .map(|r| hill_climb(&nb.unrank(r), l).unwrap().optimum.rank())
        .collect()
}

/// Dense `w_ij = (1/|b_i|) sum_{s in b_i} sum_{s' in b_j} p(s -> s')`, by a
/// double loop over the whole space.
pub fn transition_oracle<L: Landscape>(l: &L, bm: &BasinMap) -> Vec<Vec<f64>> {
    let nb = l.neighborhood();
    let size = nb.space_size().unwrap() as u64;
    let k = bm.optimum_count();
    let solutions: Vec<Solution> = (0..size).map(|r| nb.unrank(r)).collect();
    let mut w = vec![vec![0.0; k]; k];
    for (r, s) in solutions.iter().enumerate() {
        let i = bm.optimum_of(r as u64) as usize;
        for (t, other) in solutions.iter().enumerate() {
            let p = nb.transition_probability(s, other).unwrap();
            if p > 0.0 {
                w[i][bm.optimum_of(t as u64) as usize] += p;
            }
        }
    }
    for (i, row) in w.iter_mut().enumerate() {
        let basin = bm.optima()[i].basin_size as f64;
        row.iter_mut().for_each(|x| *x /= basin);
    }
    w
}

/// Minimum number of moves between two solutions: Hamming distance for bit
/// strings, `n - cycles(p^-1 q)` for permutations under exchange.
pub fn move_distance(a: &Solution, b: &Solution) -> usize {
    match (a, b) {
        (Solution::Binary(x), Solution::Binary(y)) => x
            .bits()
            .iter()
            .zip(y.bits())
            .filter(|(u, v)| u != v)
            .count(),
        (Solution::Permutation(x), Solution::Permutation(y)) => {
            let (x, y) = (x.values(), y.values());
            let n = x.len();
            let mut where_x = vec![0; n];
            for (pos, &v) in x.iter().enumerate() {
                where_x[v] = pos;
            }
            let map: Vec<usize> = y.iter().map(|&v| where_x[v]).collect();
            let mut seen = vec![false; n];
            let mut cycles = 0;
            for start in 0..n {
                if !seen[start] {
                    cycles += 1;
                    let mut c = start;
                    while !seen[c] {
                        seen[c] = true;
                        c = map[c];
                    }
                }
            }
            n - cycles
        }
        _ => panic!("mixed representations"),
    }
}

/// Dense escape weights: for each optimum, the basins of every solution
/// within `distance` moves, as counts or divided by the ball size.
pub fn escape_oracle<L: Landscape>(
    l: &L,
    bm: &BasinMap,
    distance: usize,
    normalize: bool,
) -> Vec<Vec<f64>> {
    let nb = l.neighborhood();
    let size = nb.space_size().unwrap() as u64;
    let k = bm.optimum_count();
    let mut w = vec![vec![0.0; k]; k];
    for o in bm.optima() {
        let mut ball = 0.0;
        for r in 0..size {
            if move_distance(&o.representative, &nb.unrank(r)) <= distance {
                w[o.id as usize][bm.optimum_of(r) as usize] += 1.0;
                ball += 1.0;
            }
        }
        if normalize {
            w[o.id as usize].iter_mut().for_each(|x| *x /= ball);
        }
    }
    w
}

/// Dense weight matrix of a network.
pub fn dense(net: &LocalOptimaNetwork) -> Vec<Vec<f64>> {
    let n = net.node_count();
    let mut w = vec![vec![0.0; n]; n];
    for e in net.edges() {
        w[e.source as usize][e.target as usize] = e.weight;
    }
    w
}

/// Random weighted digraph with self-loops allowed and edge probability
/// `density`; node fitness equals the node id.
pub fn random_network(n: u32, density: f64, seed: u64) -> LocalOptimaNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = (0..n)
        .map(|id| LonNode {
            id,
            rank: id as u64,
            fitness: id as f64,
            basin_size: None,
        })
        .collect();
    let mut edges = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if rng.random_bool(density) {
                edges.push(LonEdge {
                    source: s,
                    target: t,
                    weight: rng.random_range(0.01..1.0),
                });
            }
        }
    }
    LocalOptimaNetwork::new(
        nodes,
        edges,
        EdgeModel::BasinTransition,
        Direction::Maximize,
        "random",
    )
    .unwrap()
}

/// Weighted clustering by enumerating every ordered pair `(j, h)`:
/// `(1 / (s_i (k_i - 1))) sum ((w_ij + w_ih) / 2) a_ij a_jh a_hi`, self-loops
/// ignored.
pub fn weighted_clustering_oracle(net: &LocalOptimaNetwork, i: u32) -> f64 {
    let w = dense(net);
    let n = w.len();
    let i = i as usize;
    let a = |x: usize, y: usize| x != y && w[x][y] > 0.0;
    let k = (0..n).filter(|&j| a(i, j)).count();
    let s: f64 = (0..n).filter(|&j| j != i).map(|j| w[i][j]).sum();
    if k < 2 || s <= 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    for j in 0..n {
        for h in 0..n {
            if j != i && h != i && a(i, j) && a(j, h) && a(h, i) {
                sum += (w[i][j] + w[i][h]) / 2.0;
            }
        }
    }
    sum / (s * (k - 1) as f64)
}

/// All-pairs shortest paths with lengths `1 / w`, self-loops ignored.
pub fn floyd_warshall(net: &LocalOptimaNetwork) -> Vec<Vec<f64>> {
    let n = net.node_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in net.edges().iter().filter(|e| e.source != e.target) {
        let (s, t) = (e.source as usize, e.target as usize);
        d[s][t] = d[s][t].min(1.0 / e.weight);
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Relative closeness for sums computed in different orders.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
