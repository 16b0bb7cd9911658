//! Exhaustive basin enumeration and construction of local optima networks
//! under the basin-transition and escape-edge models.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::landscape::{
    check_enumerable, Direction, FitnessTable, Landscape, DEFAULT_ENUMERATION_BUDGET,
};
use crate::neighborhood::{Neighborhood, RankNeighbors};
use crate::network::{EdgeModel, LocalOptimaNetwork, LonEdge, LonNode};
use crate::space::Solution;

const CHUNK: usize = 1 << 12;
const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq)]
pub struct OptimumRecord {
    pub id: u32,
    pub rank: u64,
    pub representative: Solution,
    pub fitness: f64,
    pub basin_size: u64,
}

/// Total assignment of every solution to the local optimum its climb reaches.
#[derive(Clone, Debug)]
pub struct BasinMap {
    nb: Neighborhood,
    direction: Direction,
    description: String,
    assignment: Vec<u32>,
    optima: Vec<OptimumRecord>,
    interior_counts: Vec<u64>,
    /// Per optimum i, `(j, #{(s, s') : s in b_i, s' in N(s) cap b_j})` by
    /// ascending j.
    transitions: Vec<Vec<(u32, u64)>>,
}

impl BasinMap {
    pub fn neighborhood(&self) -> Neighborhood {
        self.nb
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Provenance string of the landscape this map was computed from.
    pub fn description(&self) -> &str {
        &self.description
    }

    /// Optimum id per solution rank.
    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn optimum_of(&self, rank: u64) -> u32 {
        self.assignment[rank as usize]
    }

    /// Optima sorted by representative rank; `optima()[i].id == i`.
    pub fn optima(&self) -> &[OptimumRecord] {
        &self.optima
    }

    pub fn optimum_count(&self) -> usize {
        self.optima.len()
    }

    /// Per optimum, the number of basin members whose whole neighborhood
    /// lies in the same basin.
    pub fn interior_counts(&self) -> &[u64] {
        &self.interior_counts
    }

    pub fn space_size(&self) -> u64 {
        self.assignment.len() as u64
    }

    /// Best optimum; ties go to the lowest id.
    pub fn global_optimum(&self) -> Option<&OptimumRecord> {
        let dir = self.direction;
        self.optima.iter().fold(None, |best, o| match best {
            Some(b) if !dir.is_better(o.fitness, b.fitness) => Some(b),
            _ => Some(o),
        })
    }

    fn nodes(&self) -> Vec<LonNode> {
        self.optima
            .iter()
            .map(|o| LonNode {
                id: o.id,
                rank: o.rank,
                fitness: o.fitness,
                basin_size: Some(o.basin_size),
            })
            .collect()
    }

    /// Rejects a landscape this map was not computed from.
    fn check_matches<L: Landscape + ?Sized>(&self, landscape: &L) -> Result<()> {
        if landscape.neighborhood() != self.nb || landscape.direction() != self.direction {
            return Err(Error::invalid(format!(
                "basin map of {} does not belong to {}",
                self.description,
                landscape.describe()
            )));
        }
        if let Some(o) = self
            .optima
            .iter()
            .find(|o| landscape.fitness(&o.representative) != o.fitness)
        {
            return Err(Error::invalid(format!(
                "optimum {} has fitness {} in the basin map but {} in {}",
                o.id,
                o.fitness,
                landscape.fitness(&o.representative),
                landscape.describe()
            )));
        }
        Ok(())
    }
}

pub fn enumerate_basins<L: Landscape + ?Sized>(landscape: &L) -> Result<BasinMap> {
    enumerate_basins_with_budget(landscape, DEFAULT_ENUMERATION_BUDGET)
}

/// Refuses spaces larger than `budget` solutions.
pub fn enumerate_basins_with_budget<L: Landscape + ?Sized>(
    landscape: &L,
    budget: u64,
) -> Result<BasinMap> {
    let nb = landscape.neighborhood();
    check_enumerable(&nb, budget.min(u32::MAX as u64))?;
    let table = FitnessTable::build_with_budget(landscape, budget)?;
    Ok(basins_from_table(&table))
}

/// Basins of a landscape whose fitness values are already tabulated.
pub fn basins_from_table(table: &FitnessTable) -> BasinMap {
    let nb = table.neighborhood();
    let dir = table.direction();
    let values = table.values();
    assert!(values.len() < UNSET as usize, "space too large for u32 ids");

    // One climbing step per solution: the first best neighbor if it is a
    // strict improvement, otherwise the solution itself.
    let mut next = vec![0u32; values.len()];
    next.par_chunks_mut(CHUNK).enumerate().for_each_init(
        || (RankNeighbors::new(nb), Vec::new()),
        |(rn, buf), (c, chunk)| {
            for (k, slot) in chunk.iter_mut().enumerate() {
                let r = (c * CHUNK + k) as u64;
                rn.fill(r, buf);
                let mut best: Option<(u64, f64)> = None;
                for &t in buf.iter() {
                    let f = values[t as usize];
                    if best.is_none_or(|(_, bf)| dir.is_better(f, bf)) {
                        best = Some((t, f));
                    }
                }
                *slot = match best {
                    Some((t, f)) if dir.is_better(f, values[r as usize]) => t as u32,
                    _ => r as u32,
                };
            }
        },
    );

    // Follow each trajectory once; every solution on it inherits the root.
    let mut root = vec![UNSET; values.len()];
    let mut path = Vec::new();
    for r in 0..values.len() {
        let mut x = r;
        while root[x] == UNSET && next[x] as usize != x {
            path.push(x);
            x = next[x] as usize;
        }
        let target = if root[x] == UNSET { x as u32 } else { root[x] };
        root[x] = target;
        for s in path.drain(..) {
            root[s] = target;
        }
    }

    // Ids in ascending representative rank; `next` is reused as rank -> id.
    let mut optima = Vec::new();
    for r in 0..values.len() {
        if next[r] as usize == r {
            let id = optima.len() as u32;
            next[r] = id;
            optima.push(OptimumRecord {
                id,
                rank: r as u64,
                representative: nb.unrank(r as u64),
                fitness: values[r],
                basin_size: 0,
            });
        }
    }
    let assignment: Vec<u32> = root.iter().map(|&o| next[o as usize]).collect();
    drop(next);
    drop(root);
    for &b in &assignment {
        optima[b as usize].basin_size += 1;
    }

    let (transitions, interior_counts) = count_transitions(nb, &assignment, &optima);

    BasinMap {
        nb,
        direction: dir,
        description: table.describe(),
        assignment,
        optima,
        interior_counts,
        transitions,
    }
}

/// Solution ranks grouped by basin: `members[offsets[i]..offsets[i + 1]]`,
/// ascending within each basin.
fn group_by_basin(assignment: &[u32], optima: &[OptimumRecord]) -> (Vec<usize>, Vec<u32>) {
    let mut offsets = vec![0usize; optima.len() + 1];
    for o in optima {
        offsets[o.id as usize + 1] = o.basin_size as usize;
    }
    for i in 0..optima.len() {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut members = vec![0u32; assignment.len()];
    for (r, &b) in assignment.iter().enumerate() {
        members[fill[b as usize]] = r as u32;
        fill[b as usize] += 1;
    }
    (offsets, members)
}

/// Largest optimum count for which transitions are tallied in a dense
/// matrix per worker during a rank-ordered sweep.
const DENSE_TRANSITION_LIMIT: usize = 1 << 10;

/// One sweep over every (solution, neighbor) pair: neighbor counts between
/// basins, and the number of interior members per basin.
fn count_transitions(
    nb: Neighborhood,
    assignment: &[u32],
    optima: &[OptimumRecord],
) -> (Vec<Vec<(u32, u64)>>, Vec<u64>) {
    if optima.len() <= DENSE_TRANSITION_LIMIT {
        count_transitions_dense(nb, assignment, optima.len())
    } else {
        count_transitions_grouped(nb, assignment, optima)
    }
}

fn count_transitions_dense(
    nb: Neighborhood,
    assignment: &[u32],
    k: usize,
) -> (Vec<Vec<(u32, u64)>>, Vec<u64>) {
    let (counts, interior) = assignment
        .par_chunks(CHUNK)
        .enumerate()
        .fold(
            || {
                (
                    vec![0u64; k * k],
                    vec![0u64; k],
                    RankNeighbors::new(nb),
                    Vec::new(),
                )
            },
            |(mut counts, mut interior, mut rn, mut buf), (c, chunk)| {
                for (offset, &i) in chunk.iter().enumerate() {
                    rn.fill((c * CHUNK + offset) as u64, &mut buf);
                    let row = &mut counts[i as usize * k..(i as usize + 1) * k];
                    let mut inside = true;
                    for &t in buf.iter() {
                        let j = assignment[t as usize];
                        inside &= j == i;
                        row[j as usize] += 1;
                    }
                    interior[i as usize] += inside as u64;
                }
                (counts, interior, rn, buf)
            },
        )
        .map(|(counts, interior, _, _)| (counts, interior))
        .reduce(
            || (vec![0u64; k * k], vec![0u64; k]),
            |(mut c1, mut i1), (c2, i2)| {
                c1.iter_mut().zip(&c2).for_each(|(a, b)| *a += b);
                i1.iter_mut().zip(&i2).for_each(|(a, b)| *a += b);
                (c1, i1)
            },
        );
    let rows = counts
        .chunks(k.max(1))
        .take(k)
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(j, &n)| (j as u32, n))
                .collect()
        })
        .collect();
    (rows, interior)
}

fn count_transitions_grouped(
    nb: Neighborhood,
    assignment: &[u32],
    optima: &[OptimumRecord],
) -> (Vec<Vec<(u32, u64)>>, Vec<u64>) {
    let (offsets, members) = group_by_basin(assignment, optima);
    (0..optima.len())
        .into_par_iter()
        .map_init(
            || {
                (
                    RankNeighbors::new(nb),
                    Vec::new(),
                    RowCounter::new(optima.len()),
                )
            },
            |(rn, buf, counter), i| {
                let mut interior = 0;
                for &s in &members[offsets[i]..offsets[i + 1]] {
                    rn.fill(s as u64, buf);
                    let mut inside = true;
                    for &t in buf.iter() {
                        let j = assignment[t as usize];
                        inside &= j as usize == i;
                        counter.add(j);
                    }
                    interior += inside as u64;
                }
                (counter.drain(), interior)
            },
        )
        .unzip()
}

/// Sparse counter over optimum ids, reset between rows.
struct RowCounter {
    counts: Vec<u64>,
    touched: Vec<u32>,
}

impl RowCounter {
    fn new(len: usize) -> Self {
        RowCounter {
            counts: vec![0; len],
            touched: Vec::new(),
        }
    }

    fn add(&mut self, id: u32) {
        if self.counts[id as usize] == 0 {
            self.touched.push(id);
        }
        self.counts[id as usize] += 1;
    }

    /// `(id, count)` in ascending id order; leaves the counter empty.
    fn drain(&mut self) -> Vec<(u32, u64)> {
        self.touched.sort_unstable();
        let out = self
            .touched
            .iter()
            .map(|&id| (id, std::mem::take(&mut self.counts[id as usize])))
            .collect();
        self.touched.clear();
        out
    }
}

/// `w_ij = (1/#b_i) * sum over s in b_i, s' in b_j of p(s -> s')`.
///
/// Computed from integer neighbor counts so every row sums to 1 up to the
/// rounding of a single division per edge.
pub fn basin_transition_lon<L: Landscape + ?Sized>(
    landscape: &L,
    bm: &BasinMap,
) -> Result<LocalOptimaNetwork> {
    bm.check_matches(landscape)?;
    let moves = bm.nb.size() as f64;
    let edges: Vec<LonEdge> = bm
        .optima
        .iter()
        .zip(&bm.transitions)
        .flat_map(|(o, row)| {
            let size = o.basin_size as f64;
            row.iter().map(move |&(j, count)| LonEdge {
                source: o.id,
                target: j,
                weight: count as f64 / (moves * size),
            })
        })
        .collect();
    LocalOptimaNetwork::new(
        bm.nodes(),
        edges,
        EdgeModel::BasinTransition,
        bm.direction,
        bm.description.clone(),
    )
}

/// `w_ij = #{s : d(s, LO_i) <= D and h(s) = LO_j}`, divided by the size of
/// the D-ball when `normalize` is set.
pub fn escape_lon<L: Landscape + ?Sized>(
    landscape: &L,
    bm: &BasinMap,
    distance: u32,
    normalize: bool,
) -> Result<LocalOptimaNetwork> {
    if distance == 0 {
        return Err(Error::invalid("escape distance must be at least 1"));
    }
    bm.check_matches(landscape)?;
    let nb = bm.nb;
    let rows: Vec<Vec<LonEdge>> = bm
        .optima
        .par_iter()
        .map_init(
            || {
                (
                    RankNeighbors::new(nb),
                    Vec::new(),
                    RowCounter::new(bm.optima.len()),
                )
            },
            |(rn, buf, counter), o| {
                let ball = ball_ranks(rn, buf, o.rank, distance);
                for &s in &ball {
                    counter.add(bm.assignment[s as usize]);
                }
                let scale = if normalize { ball.len() as f64 } else { 1.0 };
                counter
                    .drain()
                    .into_iter()
                    .map(|(j, count)| LonEdge {
                        source: o.id,
                        target: j,
                        weight: count as f64 / scale,
                    })
                    .collect()
            },
        )
        .collect();
    LocalOptimaNetwork::new(
        bm.nodes(),
        rows.concat(),
        EdgeModel::Escape {
            distance,
            normalized: normalize,
        },
        bm.direction,
        bm.description.clone(),
    )
}

/// All ranks within `depth` moves of `center`, by breadth-first closure.
fn ball_ranks(rn: &mut RankNeighbors, buf: &mut Vec<u64>, center: u64, depth: u32) -> Vec<u64> {
    let mut seen = HashSet::from([center]);
    let mut ball = vec![center];
    let mut frontier = vec![center];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &s in &frontier {
            rn.fill(s, buf);
            for &t in buf.iter() {
                if seen.insert(t) {
                    next.push(t);
                }
            }
        }
        ball.extend_from_slice(&next);
        frontier = next;
    }
    ball
}

#[derive(Clone, Debug, PartialEq)]
pub struct InteriorFractions {
    pub per_optimum: Vec<f64>,
    pub mean: f64,
}

/// `interior_count / basin_size` for each optimum, and their average.
pub fn basin_interior_fractions(bm: &BasinMap) -> InteriorFractions {
    let per_optimum: Vec<f64> = bm
        .optima
        .iter()
        .map(|o| bm.interior_counts[o.id as usize] as f64 / o.basin_size as f64)
        .collect();
    let mean = if per_optimum.is_empty() {
        0.0
    } else {
        per_optimum.iter().sum::<f64>() / per_optimum.len() as f64
    };
    InteriorFractions { per_optimum, mean }
}
