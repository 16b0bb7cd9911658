//! Kauffman NK landscapes under the random neighborhood model.
//!
//! Instances are reproducible from `(N, K, seed)`. Row `i` (its links and its
//! contribution table) is drawn from a ChaCha8 generator seeded with `seed`
//! and switched to stream `i`: first `K` distinct link loci sampled from the
//! other `N - 1` loci (stored ascending), then `2^(K+1)` uniform values in
//! `[0, 1)`.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::landscape::{Direction, Landscape};
use crate::neighborhood::Neighborhood;
use crate::space::{BitString, Solution};

/// Longest bit string supported, bounded by the `u64` rank.
pub const MAX_NK_LEN: usize = 63;

#[derive(Clone, Debug, PartialEq)]
pub struct NkInstance {
    n: usize,
    k: usize,
    links: Vec<Vec<usize>>,
    tables: Vec<Vec<f64>>,
    seed: u64,
}

impl NkInstance {
    pub fn generate(n: usize, k: usize, seed: u64) -> Result<Self> {
        check_shape(n, k)?;
        let mut links = Vec::with_capacity(n);
        let mut tables = Vec::with_capacity(n);
        for i in 0..n {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let mut row: Vec<usize> = sample(&mut rng, n - 1, k)
                .into_iter()
                .map(|x| if x >= i { x + 1 } else { x })
                .collect();
            row.sort_unstable();
            links.push(row);
            tables.push(
                (0..1usize << (k + 1))
                    .map(|_| rng.random::<f64>())
                    .collect(),
            );
        }
        Ok(NkInstance {
            n,
            k,
            links,
            tables,
            seed,
        })
    }

    /// Builds an instance from explicit parts, checking every invariant.
    pub fn from_parts(
        n: usize,
        k: usize,
        links: Vec<Vec<usize>>,
        tables: Vec<Vec<f64>>,
        seed: u64,
    ) -> Result<Self> {
        check_shape(n, k)?;
        if links.len() != n || tables.len() != n {
            return Err(Error::invalid(format!(
                "expected {n} link rows and {n} table rows, got {} and {}",
                links.len(),
                tables.len()
            )));
        }
        for (i, row) in links.iter().enumerate() {
            let mut sorted = row.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if row.len() != k || sorted.len() != k || row.iter().any(|&l| l >= n || l == i) {
                return Err(Error::invalid(format!(
                    "link row {i} must hold {k} distinct loci other than {i}: {row:?}"
                )));
            }
        }
        for (i, row) in tables.iter().enumerate() {
            if row.len() != 1 << (k + 1) || row.iter().any(|v| !(0.0..1.0).contains(v)) {
                return Err(Error::invalid(format!(
                    "table row {i} must hold {} values in [0, 1)",
                    1usize << (k + 1)
                )));
            }
        }
        Ok(NkInstance {
            n,
            k,
            links,
            tables,
            seed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn links(&self) -> &[Vec<usize>] {
        &self.links
    }

    pub fn tables(&self) -> &[Vec<f64>] {
        &self.tables
    }

    /// Table index of locus `i`: `(s_i, s_{i_1}, ..., s_{i_K})` packed with
    /// `s_i` as the most significant bit.
    #[inline]
    pub fn contribution_index(&self, i: usize, bit: impl Fn(usize) -> bool) -> usize {
        self.links[i]
            .iter()
            .fold(bit(i) as usize, |acc, &l| (acc << 1) | bit(l) as usize)
    }

    /// Φ(s), the mean of the per-locus contributions.
    pub fn fitness_bits(&self, s: &BitString) -> Result<f64> {
        if s.len() != self.n {
            return Err(Error::invalid(format!(
                "bit string of length {} used with an N={} instance",
                s.len(),
                self.n
            )));
        }
        Ok(self.phi(|i| s.get(i)))
    }

    #[inline]
    fn phi(&self, bit: impl Fn(usize) -> bool + Copy) -> f64 {
        let sum: f64 = (0..self.n)
            .map(|i| self.tables[i][self.contribution_index(i, bit)])
            .sum();
        sum / self.n as f64
    }

    /// Serializes to the line-based text format: an `NK <N> <K> <seed>`
    /// header, `N` link rows, then `N` table rows. Lines before the header
    /// starting with `#` are comments.
    pub fn to_text(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            for line in c.lines() {
                writeln!(out, "# {line}").unwrap();
            }
        }
        writeln!(out, "NK {} {} {}", self.n, self.k, self.seed).unwrap();
        for row in &self.links {
            let cells: Vec<String> = row.iter().map(|l| l.to_string()).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
        for row in &self.tables {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .skip_while(|(_, l)| l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing NK header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "NK" {
            return Err(Error::parse(
                hline,
                1,
                "expected header `NK <N> <K> <seed>`",
            ));
        }
        let n: usize = parse_field(fields[1], hline, header)?;
        let k: usize = parse_field(fields[2], hline, header)?;
        let seed: u64 = parse_field(fields[3], hline, header)?;
        check_shape(n, k).map_err(|e| Error::parse(hline, 1, e.to_string()))?;

        let mut read_rows = |what: &str| -> Result<Vec<(usize, Vec<String>)>> {
            (0..n)
                .map(|i| {
                    lines
                        .next()
                        .map(|(ln, l)| (ln, l.split_whitespace().map(String::from).collect()))
                        .ok_or_else(|| {
                            Error::parse(
                                hline + 1,
                                1,
                                format!("truncated input: missing {what} row {i}"),
                            )
                        })
                })
                .collect()
        };
        let link_rows = read_rows("link")?;
        let table_rows = read_rows("table")?;

        let links = link_rows
            .iter()
            .map(|(ln, cells)| {
                cells
                    .iter()
                    .map(|c| {
                        c.parse::<usize>()
                            .map_err(|e| Error::parse(*ln, 1, format!("{c:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let tables = table_rows
            .iter()
            .map(|(ln, cells)| {
                cells
                    .iter()
                    .map(|c| {
                        c.parse::<f64>()
                            .map_err(|e| Error::parse(*ln, 1, format!("{c:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(n, k, links, tables, seed)
            .map_err(|e| Error::parse(hline, 1, e.to_string()))
    }
}

fn parse_field<T: std::str::FromStr>(field: &str, line: usize, text: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let column = text.find(field).map_or(1, |c| c + 1);
    field
        .parse()
        .map_err(|e: T::Err| Error::parse(line, column, format!("{field:?}: {e}")))
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if n == 0 || n > MAX_NK_LEN {
        return Err(Error::invalid(format!(
            "N must lie in 1..={MAX_NK_LEN}, got {n}"
        )));
    }
    if k >= n {
        return Err(Error::invalid(format!(
            "K must lie in 0..={}, got {k}",
            n - 1
        )));
    }
    Ok(())
}

impl Landscape for NkInstance {
    fn neighborhood(&self) -> Neighborhood {
        Neighborhood::bit_flip(self.n)
    }

    fn direction(&self) -> Direction {
        Direction::Maximize
    }

    fn fitness(&self, s: &Solution) -> f64 {
        match s {
            Solution::Binary(b) => self.fitness_of_bits(b),
            Solution::Permutation(_) => panic!("NK landscapes are defined on bit strings"),
        }
    }

    fn fitness_of_bits(&self, b: &BitString) -> f64 {
        let bits = b.bits();
        self.phi(|i| bits[i])
    }

    fn describe(&self) -> String {
        format!("nk N={} K={} seed={}", self.n, self.k, self.seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::hill_climb;

    #[test]
    fn rejects_bad_epistasis() {
        assert!(matches!(
            NkInstance::generate(5, 5, 1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(NkInstance::generate(0, 0, 1).is_err());
        assert!(NkInstance::generate(5, 4, 1).is_ok());
    }

    #[test]
    fn instance_invariants() {
        for (n, k) in [(18, 0), (18, 2), (18, 17), (7, 3)] {
            let inst = NkInstance::generate(n, k, 42).unwrap();
            for (i, row) in inst.links().iter().enumerate() {
                assert_eq!(row.len(), k);
                assert!(!row.contains(&i));
                assert!(row.windows(2).all(|w| w[0] < w[1]));
            }
            for row in inst.tables() {
                assert_eq!(row.len(), 1 << (k + 1));
                assert!(row.iter().all(|v| (0.0..1.0).contains(v)));
            }
        }
    }

    #[test]
    fn seeds_reproduce_instances() {
        let a = NkInstance::generate(12, 5, 77).unwrap();
        let b = NkInstance::generate(12, 5, 77).unwrap();
        let c = NkInstance::generate(12, 5, 78).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn exhaustive_fitness_matches_table_oracle() {
        let inst = NkInstance::generate(4, 1, 9).unwrap();
        for r in 0..16u64 {
            let s = BitString::unrank(r, 4);
            // Re-read each table entry by hand: index = 2 * s_i + s_link.
            let mut sum = 0.0;
            for i in 0..4 {
                let link = inst.links()[i][0];
                let idx = 2 * s.get(i) as usize + s.get(link) as usize;
                sum += inst.tables()[i][idx];
            }
            assert_eq!(inst.fitness_bits(&s).unwrap(), sum / 4.0);
        }
    }

    #[test]
    fn k_zero_is_additive() {
        let inst = NkInstance::generate(9, 0, 3).unwrap();
        for r in 0..512u64 {
            let s = BitString::unrank(r, 9);
            for j in 0..9 {
                let mut t = s.clone();
                t.flip(j);
                let expected = (inst.tables()[j][t.get(j) as usize]
                    - inst.tables()[j][s.get(j) as usize])
                    / 9.0;
                let got = inst.fitness_bits(&t).unwrap() - inst.fitness_bits(&s).unwrap();
                assert!((got - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn fitness_in_unit_interval_and_length_checked() {
        let inst = NkInstance::generate(10, 3, 5).unwrap();
        for r in 0..1024 {
            let f = inst.fitness_bits(&BitString::unrank(r, 10)).unwrap();
            assert!((0.0..1.0).contains(&f));
        }
        assert!(inst.fitness_bits(&BitString::zeros(9)).is_err());
    }

    #[test]
    fn k_zero_has_single_optimum() {
        for n in [1, 5, 12] {
            let inst = NkInstance::generate(n, 0, n as u64).unwrap();
            let nb = inst.neighborhood();
            let mut optima: Vec<u64> = (0..1u64 << n)
                .map(|r| hill_climb(&nb.unrank(r), &inst).unwrap().optimum.rank())
                .collect();
            optima.sort();
            optima.dedup();
            assert_eq!(optima.len(), 1);
        }
    }

    #[test]
    fn text_round_trip_is_exact() {
        for k in [0, 3] {
            let inst = NkInstance::generate(6, k, 1234).unwrap();
            let text = inst.to_text(Some("generated for a test"));
            assert!(text.starts_with("# generated for a test\nNK 6"));
            assert_eq!(NkInstance::from_text(&text).unwrap(), inst);
        }
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        match NkInstance::from_text("NK 3 1 0\n1\n0\n") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("truncated")),
            other => panic!("{other:?}"),
        }
        match NkInstance::from_text("NK 2 1 0\n1\nx\n0.5 0.5 0.5 0.5\n0.1 0.1 0.1 0.1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(NkInstance::from_text("").is_err());
        assert!(NkInstance::from_text("QAP 1 2 3").is_err());
    }
}
