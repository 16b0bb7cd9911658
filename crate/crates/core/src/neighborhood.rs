//! Move operators: single bit-flip on bit strings and pairwise exchange on
//! permutations, with a fixed canonical neighbor order.

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::space::{
    factorials, lehmer_unrank, next_permutation, space_size, BitString, Permutation,
    Representation, Solution, MAX_PERMUTATION_LEN,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveOperator {
    BitFlip,
    PairwiseExchange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Flip(usize),
    Exchange(usize, usize),
}

impl Move {
    /// Applies the move in place. Both moves are involutions, so applying the
    /// same move twice restores the solution.
    pub fn apply(&self, s: &mut Solution) {
        match (self, s) {
            (Move::Flip(i), Solution::Binary(b)) => b.flip(*i),
            (Move::Exchange(i, j), Solution::Permutation(p)) => p.swap(*i, *j),
            (mv, s) => panic!("{mv:?} does not apply to a {} solution", s.representation()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    operator: MoveOperator,
    len: usize,
}

impl Neighborhood {
    pub fn bit_flip(len: usize) -> Self {
        Neighborhood {
            operator: MoveOperator::BitFlip,
            len,
        }
    }

    pub fn pairwise_exchange(len: usize) -> Self {
        Neighborhood {
            operator: MoveOperator::PairwiseExchange,
            len,
        }
    }

    pub fn operator(&self) -> MoveOperator {
        self.operator
    }

    /// Solution length `N`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn representation(&self) -> Representation {
        match self.operator {
            MoveOperator::BitFlip => Representation::Binary,
            MoveOperator::PairwiseExchange => Representation::Permutation,
        }
    }

    /// `|V(s)|`: `N` for bit-flip, `N(N-1)/2` for pairwise exchange.
    pub fn size(&self) -> usize {
        match self.operator {
            MoveOperator::BitFlip => self.len,
            MoveOperator::PairwiseExchange => self.len * self.len.saturating_sub(1) / 2,
        }
    }

    /// `|S|`: `2^N` or `N!`.
    pub fn space_size(&self) -> Option<u128> {
        space_size(self.representation(), self.len)
    }

    pub fn moves(&self) -> impl Iterator<Item = Move> + '_ {
        let n = self.len;
        let flips = (self.operator == MoveOperator::BitFlip)
            .then(|| (0..n).map(Move::Flip))
            .into_iter()
            .flatten();
        let swaps = (self.operator == MoveOperator::PairwiseExchange)
            .then(|| (0..n).flat_map(move |i| (i + 1..n).map(move |j| Move::Exchange(i, j))))
            .into_iter()
            .flatten();
        flips.chain(swaps)
    }

    pub fn check(&self, s: &Solution) -> Result<()> {
        if s.representation() != self.representation() {
            return Err(Error::invalid(format!(
                "{} solution used with a {} neighborhood",
                s.representation(),
                self.representation()
            )));
        }
        if s.len() != self.len {
            return Err(Error::invalid(format!(
                "solution length {} does not match neighborhood length {}",
                s.len(),
                self.len
            )));
        }
        Ok(())
    }

    /// All neighbors of `s` in canonical order: ascending flipped index, or
    /// ascending `(i, j)` for exchanges.
    pub fn neighbors(&self, s: &Solution) -> Result<Vec<Solution>> {
        self.check(s)?;
        Ok(self
            .moves()
            .map(|mv| {
                let mut t = s.clone();
                mv.apply(&mut t);
                t
            })
            .collect())
    }

    pub fn is_neighbor(&self, s: &Solution, other: &Solution) -> Result<bool> {
        self.check(s)?;
        self.check(other)?;
        Ok(match (s, other) {
            (Solution::Binary(a), Solution::Binary(b)) => {
                a.bits()
                    .iter()
                    .zip(b.bits())
                    .filter(|(x, y)| x != y)
                    .count()
                    == 1
            }
            (Solution::Permutation(a), Solution::Permutation(b)) => {
                let diff: Vec<usize> = (0..self.len)
                    .filter(|&i| a.values()[i] != b.values()[i])
                    .collect();
                diff.len() == 2
                    && a.values()[diff[0]] == b.values()[diff[1]]
                    && a.values()[diff[1]] == b.values()[diff[0]]
            }
            _ => unreachable!("checked above"),
        })
    }

    /// `p(s -> s2)` under uniform selection of one random neighbor.
    pub fn transition_probability(&self, s: &Solution, other: &Solution) -> Result<f64> {
        Ok(if self.is_neighbor(s, other)? {
            1.0 / self.size() as f64
        } else {
            0.0
        })
    }

    pub fn rank(&self, s: &Solution) -> Result<u64> {
        self.check(s)?;
        Ok(s.rank())
    }

    pub fn unrank(&self, rank: u64) -> Solution {
        match self.operator {
            MoveOperator::BitFlip => BitString::unrank(rank, self.len).into(),
            MoveOperator::PairwiseExchange => Permutation::unrank(rank, self.len).into(),
        }
    }

    pub fn random_solution<R: Rng + ?Sized>(&self, rng: &mut R) -> Solution {
        match self.operator {
            MoveOperator::BitFlip => {
                BitString::new((0..self.len).map(|_| rng.random::<bool>()).collect()).into()
            }
            MoveOperator::PairwiseExchange => {
                let mut v: Vec<usize> = (0..self.len).collect();
                rand::seq::SliceRandom::shuffle(&mut v[..], rng);
                Permutation::new(v).expect("shuffle of identity").into()
            }
        }
    }

    /// Largest number of moves that can touch pairwise-distinct positions.
    pub fn max_disjoint_moves(&self) -> usize {
        match self.operator {
            MoveOperator::BitFlip => self.len,
            MoveOperator::PairwiseExchange => self.len / 2,
        }
    }

    /// `strength` moves touching pairwise-distinct positions, so the result
    /// lies at move distance exactly `strength` from the start.
    pub fn random_disjoint_moves<R: Rng + ?Sized>(
        &self,
        strength: usize,
        rng: &mut R,
    ) -> Result<Vec<Move>> {
        match self.operator {
            MoveOperator::BitFlip => {
                if strength > self.len {
                    return Err(Error::invalid(format!(
                        "cannot flip {strength} distinct bits of a length-{} string",
                        self.len
                    )));
                }
                Ok(sample(rng, self.len, strength)
                    .into_iter()
                    .map(Move::Flip)
                    .collect())
            }
            MoveOperator::PairwiseExchange => {
                if 2 * strength > self.len {
                    return Err(Error::invalid(format!(
                        "cannot apply {strength} disjoint exchanges to a length-{} permutation",
                        self.len
                    )));
                }
                let positions = sample(rng, self.len, 2 * strength).into_vec();
                Ok(positions
                    .chunks(2)
                    .map(|c| Move::Exchange(c[0].min(c[1]), c[0].max(c[1])))
                    .collect())
            }
        }
    }
}

/// Computes neighbor ranks directly in rank space, without materializing
/// neighbor solutions. Holds scratch buffers; one per worker. Consecutive
/// ranks are cheapest: the permutation is advanced instead of unranked.
pub(crate) struct RankNeighbors {
    nb: Neighborhood,
    perm: Vec<usize>,
    /// Rank currently held in `perm`.
    current: Option<u64>,
    /// `weight[k]` = (n - 1 - k)!, the place value of Lehmer digit k.
    weight: Vec<i64>,
}

impl RankNeighbors {
    pub(crate) fn new(nb: Neighborhood) -> Self {
        let n = nb.len();
        assert!(
            nb.operator() == MoveOperator::BitFlip || n <= MAX_PERMUTATION_LEN,
            "permutation length {n} exceeds rankable range"
        );
        let weight = match nb.operator() {
            MoveOperator::BitFlip => Vec::new(),
            MoveOperator::PairwiseExchange => {
                let f = factorials(n);
                (0..n).map(|k| f[n - 1 - k] as i64).collect()
            }
        };
        RankNeighbors {
            nb,
            perm: vec![0; n],
            current: None,
            weight,
        }
    }

    /// Fills `out` with the ranks of all neighbors of `rank`, in canonical order.
    pub(crate) fn fill(&mut self, rank: u64, out: &mut Vec<u64>) {
        out.clear();
        let n = self.nb.len();
        match self.nb.operator() {
            MoveOperator::BitFlip => out.extend((0..n).map(|j| rank ^ (1u64 << j))),
            MoveOperator::PairwiseExchange => {
                let advanced =
                    self.current.is_some_and(|c| c + 1 == rank) && next_permutation(&mut self.perm);
                if !advanced && self.current != Some(rank) {
                    lehmer_unrank(rank, &mut self.perm);
                }
                self.current = Some(rank);
                self.fill_exchange(rank, out);
            }
        }
    }

    fn fill_exchange(&self, rank: u64, out: &mut Vec<u64>) {
        let n = self.nb.len();
        let p = &self.perm[..n];
        let w = &self.weight[..n];
        // after[k]: set of values at positions > k, one bit per value.
        let mut after = [0u32; MAX_PERMUTATION_LEN];
        let mut seen = 0u32;
        for k in (0..n).rev() {
            after[k] = seen;
            seen |= 1 << p[k];
        }
        let below = |set: u32, v: usize| (set & ((1u32 << v) - 1)).count_ones() as i64;
        let mut digit = [0i64; MAX_PERMUTATION_LEN];
        for k in 0..n {
            digit[k] = below(after[k], p[k]);
        }
        let base = rank as i64;
        for i in 0..n {
            let a = p[i];
            for j in i + 1..n {
                let b = p[j];
                // Lehmer digits after the swap: position i now holds b and
                // position j holds a; digits between shift by one when their
                // value lies strictly between a and b.
                let new_i = below(after[i], b) + (a < b) as i64;
                let new_j = below(after[j], a);
                let mut delta = (new_i - digit[i]) * w[i] + (new_j - digit[j]) * w[j];
                let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                let mut between = 0;
                for k in i + 1..j {
                    between += w[k] * (p[k] > lo && p[k] < hi) as i64;
                }
                delta += sign * between;
                out.push((base + delta) as u64);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Solution {
        BitString::parse(s).unwrap().into()
    }

    fn perm(v: &[usize]) -> Solution {
        Permutation::new(v.to_vec()).unwrap().into()
    }

    #[test]
    fn bit_flip_neighbors_of_zero_string() {
        let nb = Neighborhood::bit_flip(3);
        let got = nb.neighbors(&bits("000")).unwrap();
        assert_eq!(got, vec![bits("100"), bits("010"), bits("001")]);
    }

    #[test]
    fn exchange_neighbors_of_identity() {
        let nb = Neighborhood::pairwise_exchange(3);
        let got = nb.neighbors(&perm(&[0, 1, 2])).unwrap();
        assert_eq!(
            got,
            vec![perm(&[1, 0, 2]), perm(&[2, 1, 0]), perm(&[0, 2, 1])]
        );
        assert_eq!(got.len(), 3 * 2 / 2);
    }

    #[test]
    fn eighteen_bit_neighborhood() {
        let nb = Neighborhood::bit_flip(18);
        let s = nb.unrank(123_456);
        let ns = nb.neighbors(&s).unwrap();
        assert_eq!(ns.len(), 18);
        let mut ranks: Vec<u64> = ns.iter().map(|t| t.rank()).collect();
        ranks.sort();
        ranks.dedup();
        assert_eq!(ranks.len(), 18);
        assert!(!ranks.contains(&123_456));
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let nb = Neighborhood::bit_flip(4);
        assert!(matches!(
            nb.neighbors(&bits("000")),
            Err(Error::InvalidArgument(_))
        ));
        assert!(nb.neighbors(&perm(&[0, 1, 2, 3])).is_err());
    }

    #[test]
    fn transition_probabilities() {
        let nb = Neighborhood::bit_flip(18);
        let s = nb.unrank(5);
        let t = nb.unrank(5 ^ (1 << 7));
        assert_eq!(nb.transition_probability(&s, &t).unwrap(), 1.0 / 18.0);
        assert_eq!(nb.transition_probability(&s, &s).unwrap(), 0.0);
        let two_away = nb.unrank(5 ^ 0b11000);
        assert_eq!(nb.transition_probability(&s, &two_away).unwrap(), 0.0);

        let nb = Neighborhood::pairwise_exchange(9);
        let s = nb.unrank(1000);
        let mut t = s.clone();
        Move::Exchange(2, 7).apply(&mut t);
        assert_eq!(nb.transition_probability(&s, &t).unwrap(), 1.0 / 36.0);
        assert_eq!(nb.transition_probability(&s, &s).unwrap(), 0.0);
        let mixed = nb.transition_probability(&s, &bits("000000000"));
        assert!(mixed.is_err());
    }

    #[test]
    fn neighbor_relation_is_symmetric() {
        for nb in [
            Neighborhood::bit_flip(5),
            Neighborhood::pairwise_exchange(4),
        ] {
            let total = nb.space_size().unwrap() as u64;
            for r in 0..total {
                let s = nb.unrank(r);
                for t in nb.neighbors(&s).unwrap() {
                    assert!(nb.is_neighbor(&t, &s).unwrap());
                }
            }
        }
    }

    #[test]
    fn rank_space_neighbors_match_materialized_neighbors() {
        for nb in [
            Neighborhood::bit_flip(7),
            Neighborhood::pairwise_exchange(1),
            Neighborhood::pairwise_exchange(2),
            Neighborhood::pairwise_exchange(6),
        ] {
            let mut rn = RankNeighbors::new(nb);
            let mut out = Vec::new();
            let total = nb.space_size().unwrap() as u64;
            for r in 0..total {
                rn.fill(r, &mut out);
                let expected: Vec<u64> = nb
                    .neighbors(&nb.unrank(r))
                    .unwrap()
                    .iter()
                    .map(Solution::rank)
                    .collect();
                assert_eq!(out, expected, "rank {r} of {nb:?}");
            }
        }
    }

    #[test]
    fn rank_space_neighbors_in_any_visiting_order() {
        let nb = Neighborhood::pairwise_exchange(7);
        let total = nb.space_size().unwrap() as u64;
        let mut rn = RankNeighbors::new(nb);
        let mut out = Vec::new();
        // Repeats, jumps backwards, and the wrap at the last permutation.
        for r in [5, 5, 6, 7, 3, 4, total - 2, total - 1, 0, 1, 2, 2000, 2001] {
            rn.fill(r, &mut out);
            let expected: Vec<u64> = nb
                .neighbors(&nb.unrank(r))
                .unwrap()
                .iter()
                .map(Solution::rank)
                .collect();
            assert_eq!(out, expected, "rank {r}");
        }
    }

    #[test]
    fn disjoint_moves_reach_exact_distance() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let nb = Neighborhood::pairwise_exchange(8);
        for _ in 0..200 {
            let moves = nb.random_disjoint_moves(3, &mut rng).unwrap();
            let mut touched: Vec<usize> = moves
                .iter()
                .flat_map(|m| match m {
                    Move::Exchange(i, j) => vec![*i, *j],
                    Move::Flip(_) => unreachable!(),
                })
                .collect();
            touched.sort();
            touched.dedup();
            assert_eq!(touched.len(), 6);
        }
        assert!(nb.random_disjoint_moves(5, &mut rng).is_err());
    }
}
