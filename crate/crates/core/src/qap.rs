//! Quadratic assignment instances: uniform and real-like generators, QAPLIB
//! text I/O, and the permutation cost `C(π) = Σ_i Σ_j a_ij · b_{π(i)π(j)}`.

use std::fmt;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::landscape::{Direction, Landscape};
use crate::neighborhood::Neighborhood;
use crate::space::{Permutation, Solution, MAX_PERMUTATION_LEN};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QapClass {
    Uniform,
    RealLike,
    External,
}

impl QapClass {
    pub fn as_str(self) -> &'static str {
        match self {
            QapClass::Uniform => "uniform",
            QapClass::RealLike => "real-like",
            QapClass::External => "external",
        }
    }
}

impl fmt::Display for QapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Generator constants. Defaults: uniform entries on `1..=99`; real-like
/// points in a 100×100 square, flow sparsity 0.65, flow magnitudes
/// `round(10^U[0, 2])`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub uniform_max: i64,
    pub square_side: f64,
    pub zero_flow_probability: f64,
    pub flow_exponent_max: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            uniform_max: 99,
            square_side: 100.0,
            zero_flow_probability: 0.65,
            flow_exponent_max: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QapInstance {
    n: usize,
    /// Row-major `n × n` distance matrix A.
    distances: Vec<i64>,
    /// Row-major `n × n` flow matrix B.
    flows: Vec<i64>,
    class: QapClass,
    seed: Option<u64>,
}

impl QapInstance {
    pub fn new(n: usize, distances: Vec<i64>, flows: Vec<i64>, class: QapClass) -> Result<Self> {
        if n == 0 || n > MAX_PERMUTATION_LEN {
            return Err(Error::invalid(format!(
                "n must lie in 1..={MAX_PERMUTATION_LEN}, got {n}"
            )));
        }
        for (name, m) in [("distance", &distances), ("flow", &flows)] {
            if m.len() != n * n {
                return Err(Error::invalid(format!(
                    "{name} matrix has {} entries, expected {}",
                    m.len(),
                    n * n
                )));
            }
            if let Some(v) = m.iter().find(|&&v| v < 0) {
                return Err(Error::invalid(format!(
                    "{name} matrix holds negative entry {v}"
                )));
            }
        }
        Ok(QapInstance {
            n,
            distances,
            flows,
            class,
            seed: None,
        })
    }

    pub fn generate_uniform(n: usize, seed: u64) -> Result<Self> {
        Self::generate_uniform_with(n, seed, &GeneratorConfig::default())
    }

    pub fn generate_uniform_with(n: usize, seed: u64, cfg: &GeneratorConfig) -> Result<Self> {
        check_generated_size(n)?;
        let draw = |stream: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let mut m = vec![0i64; n * n];
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        m[i * n + j] = rng.random_range(1..=cfg.uniform_max);
                    }
                }
            }
            m
        };
        let mut inst = Self::new(n, draw(0), draw(1), QapClass::Uniform)?;
        inst.seed = Some(seed);
        Ok(inst)
    }

    pub fn generate_real_like(n: usize, seed: u64) -> Result<Self> {
        Self::generate_real_like_with(n, seed, &GeneratorConfig::default())
    }

    pub fn generate_real_like_with(n: usize, seed: u64, cfg: &GeneratorConfig) -> Result<Self> {
        check_generated_size(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                (
                    rng.random::<f64>() * cfg.square_side,
                    rng.random::<f64>() * cfg.square_side,
                )
            })
            .collect();
        let mut distances = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
                    distances[i * n + j] = dx.hypot(dy).round() as i64;
                }
            }
        }
        rng.set_stream(1);
        let mut flows = vec![0i64; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = if rng.random::<f64>() < cfg.zero_flow_probability {
                    0
                } else {
                    10f64
                        .powf(rng.random::<f64>() * cfg.flow_exponent_max)
                        .round() as i64
                };
                flows[i * n + j] = v;
                flows[j * n + i] = v;
            }
        }
        let mut inst = Self::new(n, distances, flows, QapClass::RealLike)?;
        inst.seed = Some(seed);
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> QapClass {
        self.class
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn distance(&self, i: usize, j: usize) -> i64 {
        self.distances[i * self.n + j]
    }

    pub fn flow(&self, i: usize, j: usize) -> i64 {
        self.flows[i * self.n + j]
    }

    pub fn distances(&self) -> &[i64] {
        &self.distances
    }

    pub fn flows(&self) -> &[i64] {
        &self.flows
    }

    pub fn cost(&self, p: &Permutation) -> Result<i64> {
        if p.len() != self.n {
            return Err(Error::invalid(format!(
                "permutation of length {} used with an n={} instance",
                p.len(),
                self.n
            )));
        }
        Ok(self.cost_unchecked(p.values()))
    }

    #[inline]
    fn cost_unchecked(&self, p: &[usize]) -> i64 {
        let n = self.n;
        let mut total = 0i64;
        for i in 0..n {
            let a_row = &self.distances[i * n..(i + 1) * n];
            let b_row = &self.flows[p[i] * n..(p[i] + 1) * n];
            for j in 0..n {
                total += a_row[j] * b_row[p[j]];
            }
        }
        total
    }

    /// QAPLIB layout: `n`, blank line, matrix A, blank line, matrix B.
    /// An optional comment is emitted as leading `#` lines, which
    /// [`QapInstance::from_qaplib`] skips.
    pub fn to_qaplib(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            for line in c.lines() {
                writeln!(out, "# {line}").unwrap();
            }
        }
        writeln!(out, "{}", self.n).unwrap();
        for m in [&self.distances, &self.flows] {
            out.push('\n');
            for row in m.chunks(self.n) {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}", cells.join(" ")).unwrap();
            }
        }
        out
    }

    pub fn from_qaplib(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'))
            .flat_map(|(ln, line)| {
                line.split_whitespace().map(move |tok| {
                    let col = tok.as_ptr() as usize - line.as_ptr() as usize + 1;
                    (ln + 1, col, tok)
                })
            });
        let (ln, col, tok) = tokens
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty input: expected instance size"))?;
        let n: usize = tok
            .parse()
            .map_err(|_| Error::parse(ln, col, format!("instance size {tok:?} is not a count")))?;
        if n == 0 || n > MAX_PERMUTATION_LEN {
            return Err(Error::parse(
                ln,
                col,
                format!("instance size must lie in 1..={MAX_PERMUTATION_LEN}, got {n}"),
            ));
        }
        let mut read_matrix = |name: &str| -> Result<Vec<i64>> {
            (0..n * n)
                .map(|k| {
                    let (ln, col, tok) = tokens.next().ok_or_else(|| {
                        Error::parse(
                            ln,
                            col,
                            format!("truncated {name} matrix: {k} of {} entries present", n * n),
                        )
                    })?;
                    match tok.parse::<i64>() {
                        Ok(v) if v >= 0 => Ok(v),
                        Ok(v) => Err(Error::parse(ln, col, format!("negative {name} entry {v}"))),
                        Err(_) => Err(Error::parse(ln, col, format!("non-numeric token {tok:?}"))),
                    }
                })
                .collect()
        };
        let distances = read_matrix("distance")?;
        let flows = read_matrix("flow")?;
        if let Some((ln, col, tok)) = tokens.next() {
            return Err(Error::parse(
                ln,
                col,
                format!("unexpected trailing token {tok:?}"),
            ));
        }
        Self::new(n, distances, flows, QapClass::External)
    }
}

fn check_generated_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "generated instances need n >= 2, got {n}"
        )));
    }
    Ok(())
}

impl Landscape for QapInstance {
    fn neighborhood(&self) -> Neighborhood {
        Neighborhood::pairwise_exchange(self.n)
    }

    fn direction(&self) -> Direction {
        Direction::Minimize
    }

    fn fitness(&self, s: &Solution) -> f64 {
        match s {
            Solution::Permutation(p) => self.fitness_of_permutation(p),
            Solution::Binary(_) => panic!("QAP landscapes are defined on permutations"),
        }
    }

    fn fitness_of_permutation(&self, p: &Permutation) -> f64 {
        self.cost_unchecked(p.values()) as f64
    }

    fn describe(&self) -> String {
        match self.seed {
            Some(seed) => format!("qap-{} n={} seed={seed}", self.class.as_str(), self.n),
            None => format!("qap-{} n={}", self.class.as_str(), self.n),
        }
    }
}
