//! Empirical degree and weight distributions.
//!
//! Degrees exclude self-loops. `P_out(w)` is taken over the weights of all
//! edges `w_ij` with `j != i`; `P_in(w)` over node in-strengths, the total
//! weight `sum_{j != i} w_ji` arriving at each node. Weights are binned on a
//! log scale: bin `b` covers `[10^(b/d), 10^((b+1)/d))` for `d` bins per decade.

use crate::network::LocalOptimaNetwork;

pub const DEFAULT_BINS_PER_DECADE: u32 = 5;

/// `probabilities[k]` = fraction of nodes with degree `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeHistogram {
    pub probabilities: Vec<f64>,
}

impl DegreeHistogram {
    fn from_degrees(degrees: &[usize]) -> Self {
        let max = degrees.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0u64; max + 1];
        for &k in degrees {
            counts[k] += 1;
        }
        let total = degrees.len().max(1) as f64;
        DegreeHistogram {
            probabilities: counts.iter().map(|&c| c as f64 / total).collect(),
        }
    }

    /// `P(K >= k)` for each `k`.
    pub fn ccdf(&self) -> Vec<f64> {
        tail_sums(&self.probabilities)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogBin {
    pub lower: f64,
    pub upper: f64,
    pub count: u64,
    pub probability: f64,
    /// Fraction of values at or above `lower`.
    pub ccdf: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogHistogram {
    pub bins_per_decade: u32,
    /// Contiguous bins from the smallest to the largest occupied one.
    pub bins: Vec<LogBin>,
    pub sample_count: u64,
}

impl LogHistogram {
    /// Non-positive values are ignored.
    pub fn new(values: &[f64], bins_per_decade: u32) -> Self {
        assert!(bins_per_decade > 0);
        let d = bins_per_decade as f64;
        let index = |v: f64| (v.log10() * d).floor() as i64;
        let positive: Vec<f64> = values.iter().copied().filter(|&v| v > 0.0).collect();
        let (Some(lo), Some(hi)) = (
            positive.iter().map(|&v| index(v)).min(),
            positive.iter().map(|&v| index(v)).max(),
        ) else {
            return LogHistogram {
                bins_per_decade,
                bins: Vec::new(),
                sample_count: 0,
            };
        };
        let mut counts = vec![0u64; (hi - lo + 1) as usize];
        for &v in &positive {
            counts[(index(v) - lo) as usize] += 1;
        }
        let total = positive.len() as f64;
        let probs: Vec<f64> = counts.iter().map(|&c| c as f64 / total).collect();
        let tails = tail_sums(&probs);
        let bins = (lo..=hi)
            .zip(counts.iter().zip(probs.iter().zip(&tails)))
            .map(|(b, (&count, (&probability, &ccdf)))| LogBin {
                lower: 10f64.powf(b as f64 / d),
                upper: 10f64.powf((b + 1) as f64 / d),
                count,
                probability,
                ccdf,
            })
            .collect();
        LogHistogram {
            bins_per_decade,
            bins,
            sample_count: positive.len() as u64,
        }
    }
}

fn tail_sums(p: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    let mut acc = 0.0;
    for k in (0..p.len()).rev() {
        acc += p[k];
        out[k] = acc;
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Distributions {
    pub in_degree: DegreeHistogram,
    pub out_degree: DegreeHistogram,
    pub in_weight: LogHistogram,
    pub out_weight: LogHistogram,
}

pub fn degree_and_weight_distributions(
    net: &LocalOptimaNetwork,
    bins_per_decade: u32,
) -> Distributions {
    let n = net.node_count();
    let mut in_deg = vec![0usize; n];
    let mut out_deg = vec![0usize; n];
    let mut in_strength = vec![0.0f64; n];
    let mut off_diagonal = Vec::with_capacity(net.edge_count());
    for e in net.edges().iter().filter(|e| e.source != e.target) {
        out_deg[e.source as usize] += 1;
        in_deg[e.target as usize] += 1;
        in_strength[e.target as usize] += e.weight;
        off_diagonal.push(e.weight);
    }
    Distributions {
        in_degree: DegreeHistogram::from_degrees(&in_deg),
        out_degree: DegreeHistogram::from_degrees(&out_deg),
        in_weight: LogHistogram::new(&in_strength, bins_per_decade),
        out_weight: LogHistogram::new(&off_diagonal, bins_per_decade),
    }
}
