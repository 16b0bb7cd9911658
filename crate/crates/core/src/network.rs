//! The local optima network: a directed weighted graph over local optima.

use std::fmt;

use crate::error::{Error, Result};
use crate::landscape::Direction;

#[derive(Clone, Debug, PartialEq)]
pub struct LonNode {
    /// Dense id; equals the node's index in [`LocalOptimaNetwork::nodes`].
    pub id: u32,
    /// Rank of the optimum's solution in its search space.
    pub rank: u64,
    pub fitness: f64,
    pub basin_size: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LonEdge {
    pub source: u32,
    pub target: u32,
    pub weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeModel {
    BasinTransition,
    Escape { distance: u32, normalized: bool },
}

impl fmt::Display for EdgeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeModel::BasinTransition => f.write_str("basin-transition"),
            EdgeModel::Escape {
                distance,
                normalized,
            } => write!(
                f,
                "escape-{distance}{}",
                if *normalized { "" } else { "-raw" }
            ),
        }
    }
}

impl std::str::FromStr for EdgeModel {
    type Err = Error;

    /// Accepts `basin`, `basin-transition`, `escape-<D>` and `escape-<D>-raw`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "basin" || s == "basin-transition" {
            return Ok(EdgeModel::BasinTransition);
        }
        let rest = s
            .strip_prefix("escape-")
            .ok_or_else(|| Error::invalid(format!("unknown edge model {s:?}")))?;
        let (d, normalized) = match rest.strip_suffix("-raw") {
            Some(d) => (d, false),
            None => (rest, true),
        };
        let distance: u32 = d
            .parse()
            .map_err(|_| Error::invalid(format!("bad escape distance in {s:?}")))?;
        if distance == 0 {
            return Err(Error::invalid("escape distance must be positive"));
        }
        Ok(EdgeModel::Escape {
            distance,
            normalized,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalOptimaNetwork {
    nodes: Vec<LonNode>,
    edges: Vec<LonEdge>,
    offsets: Vec<usize>,
    model: EdgeModel,
    direction: Direction,
    provenance: String,
}

impl LocalOptimaNetwork {
    /// Validates and stores a network; edges are sorted by `(source, target)`.
    pub fn new(
        nodes: Vec<LonNode>,
        mut edges: Vec<LonEdge>,
        model: EdgeModel,
        direction: Direction,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if let Some((i, n)) = nodes.iter().enumerate().find(|(i, n)| n.id as usize != *i) {
            return Err(Error::invalid(format!("node at index {i} has id {}", n.id)));
        }
        let count = nodes.len() as u32;
        for e in &edges {
            if e.source >= count || e.target >= count {
                return Err(Error::invalid(format!(
                    "edge {}->{} references a missing node",
                    e.source, e.target
                )));
            }
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(Error::invalid(format!(
                    "edge {}->{} has non-positive weight {}",
                    e.source, e.target, e.weight
                )));
            }
        }
        edges.sort_by_key(|e| (e.source, e.target));
        if let Some(w) = edges
            .windows(2)
            .find(|w| (w[0].source, w[0].target) == (w[1].source, w[1].target))
        {
            return Err(Error::invalid(format!(
                "duplicate edge {}->{}",
                w[0].source, w[0].target
            )));
        }
        let mut offsets = vec![0usize; nodes.len() + 1];
        for e in &edges {
            offsets[e.source as usize + 1] += 1;
        }
        for i in 0..nodes.len() {
            offsets[i + 1] += offsets[i];
        }
        Ok(LocalOptimaNetwork {
            nodes,
            edges,
            offsets,
            model,
            direction,
            provenance: provenance.into(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Stored edges, self-loops included.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[LonNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[LonEdge] {
        &self.edges
    }

    /// Out-edges of `node`, sorted by target, self-loop included.
    pub fn out_edges(&self, node: u32) -> &[LonEdge] {
        let i = node as usize;
        &self.edges[self.offsets[i]..self.offsets[i + 1]]
    }

    /// `w_ij`, zero when the edge is absent.
    pub fn weight(&self, source: u32, target: u32) -> f64 {
        let out = self.out_edges(source);
        out.binary_search_by_key(&target, |e| e.target)
            .map_or(0.0, |k| out[k].weight)
    }

    pub fn model(&self) -> EdgeModel {
        self.model
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn contains(&self, node: u32) -> bool {
        (node as usize) < self.nodes.len()
    }

    /// Best-fitness node; ties go to the lowest id.
    pub fn global_optimum(&self) -> Option<u32> {
        let dir = self.direction;
        self.nodes
            .iter()
            .fold(None::<&LonNode>, |best, n| match best {
                Some(b) if !dir.is_better(n.fitness, b.fitness) => Some(b),
                _ => Some(n),
            })
            .map(|n| n.id)
    }

    /// Same graph with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .map(|e| LonEdge {
                weight: e.weight * factor,
                ..*e
            })
            .collect();
        Self::new(
            self.nodes.clone(),
            edges,
            self.model,
            self.direction,
            self.provenance.clone(),
        )
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;

    /// Network from `(source, target, weight)` triples; fitness = id.
    pub fn graph(n: u32, edges: &[(u32, u32, f64)]) -> LocalOptimaNetwork {
        let nodes = (0..n)
            .map(|id| LonNode {
                id,
                rank: id as u64,
                fitness: id as f64,
                basin_size: Some(1),
            })
            .collect();
        let edges = edges
            .iter()
            .map(|&(source, target, weight)| LonEdge {
                source,
                target,
                weight,
            })
            .collect();
        LocalOptimaNetwork::new(
            nodes,
            edges,
            EdgeModel::BasinTransition,
            Direction::Maximize,
            "test",
        )
        .unwrap()
    }

    /// Undirected graph given as a list of pairs, unit weights both ways.
    pub fn undirected(n: u32, pairs: &[(u32, u32)]) -> LocalOptimaNetwork {
        let edges: Vec<(u32, u32, f64)> = pairs
            .iter()
            .flat_map(|&(a, b)| [(a, b, 1.0), (b, a, 1.0)])
            .collect();
        graph(n, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::testing::graph;
    use super::*;

    #[test]
    fn adjacency_lookup() {
        let g = graph(3, &[(2, 0, 0.5), (0, 1, 0.25), (0, 0, 0.75)]);
        assert_eq!(g.out_edges(0).len(), 2);
        assert_eq!(g.weight(0, 1), 0.25);
        assert_eq!(g.weight(1, 0), 0.0);
        assert_eq!(g.weight(2, 0), 0.5);
        assert!(g.out_edges(1).is_empty());
        assert_eq!(g.global_optimum(), Some(2));
    }

    #[test]
    fn rejects_malformed_graphs() {
        let node = |id| LonNode {
            id,
            rank: 0,
            fitness: 0.0,
            basin_size: None,
        };
        let e = |s, t, w| LonEdge {
            source: s,
            target: t,
            weight: w,
        };
        let m = EdgeModel::BasinTransition;
        let d = Direction::Maximize;
        assert!(LocalOptimaNetwork::new(vec![node(1)], vec![], m, d, "").is_err());
        assert!(LocalOptimaNetwork::new(vec![node(0)], vec![e(0, 1, 1.0)], m, d, "").is_err());
        assert!(LocalOptimaNetwork::new(vec![node(0)], vec![e(0, 0, 0.0)], m, d, "").is_err());
        assert!(
            LocalOptimaNetwork::new(vec![node(0)], vec![e(0, 0, 1.0), e(0, 0, 2.0)], m, d, "")
                .is_err()
        );
    }

    #[test]
    fn edge_model_names() {
        for m in [
            EdgeModel::BasinTransition,
            EdgeModel::Escape {
                distance: 2,
                normalized: true,
            },
            EdgeModel::Escape {
                distance: 1,
                normalized: false,
            },
        ] {
            assert_eq!(m.to_string().parse::<EdgeModel>().unwrap(), m);
        }
        assert_eq!(
            "basin".parse::<EdgeModel>().unwrap(),
            EdgeModel::BasinTransition
        );
        assert!("escape-0".parse::<EdgeModel>().is_err());
        assert!("teleport".parse::<EdgeModel>().is_err());
    }
}
