//! Points of a search space and their dense integer ranks.
//!
//! Bit strings rank as the base-2 value of the string with position 0 as the
//! least significant bit. Permutations rank by their Lehmer code read in the
//! factorial number system, which coincides with lexicographic order.

use std::fmt;

use crate::error::{Error, Result};

/// Largest permutation length whose factorial fits in a `u64`.
pub const MAX_PERMUTATION_LEN: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    Binary,
    Permutation,
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Binary => f.write_str("binary"),
            Representation::Permutation => f.write_str("permutation"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![false; len])
    }

    /// Parses a string of `0`/`1` characters, position 0 first.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::invalid(format!("'{other}' is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }

    pub fn rank(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    pub fn unrank(rank: u64, len: usize) -> Self {
        BitString((0..len).map(|i| (rank >> i) & 1 == 1).collect())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A bijection on `0..n` stored as the image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v >= n || seen[v] {
                return Err(Error::invalid(format!(
                    "{values:?} is not a permutation of 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn swap(&mut self, i: usize, j: usize) {
        self.0.swap(i, j);
    }

    pub fn rank(&self) -> u64 {
        lehmer_rank(&self.0)
    }

    pub fn unrank(rank: u64, n: usize) -> Self {
        let mut values = vec![0; n];
        lehmer_unrank(rank, &mut values);
        Permutation(values)
    }

    /// Steps to the lexicographic successor (rank + 1); false at the end.
    pub(crate) fn advance(&mut self) -> bool {
        next_permutation(&mut self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Solution {
    Binary(BitString),
    Permutation(Permutation),
}

impl Solution {
    pub fn representation(&self) -> Representation {
        match self {
            Solution::Binary(_) => Representation::Binary,
            Solution::Permutation(_) => Representation::Permutation,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Solution::Binary(b) => b.len(),
            Solution::Permutation(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> u64 {
        match self {
            Solution::Binary(b) => b.rank(),
            Solution::Permutation(p) => p.rank(),
        }
    }

    pub fn as_bits(&self) -> Option<&BitString> {
        match self {
            Solution::Binary(b) => Some(b),
            Solution::Permutation(_) => None,
        }
    }

    pub fn as_permutation(&self) -> Option<&Permutation> {
        match self {
            Solution::Permutation(p) => Some(p),
            Solution::Binary(_) => None,
        }
    }
}

impl From<BitString> for Solution {
    fn from(b: BitString) -> Self {
        Solution::Binary(b)
    }
}

impl From<Permutation> for Solution {
    fn from(p: Permutation) -> Self {
        Solution::Permutation(p)
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solution::Binary(b) => b.fmt(f),
            Solution::Permutation(p) => p.fmt(f),
        }
    }
}

/// `n!` for `n <= 20`.
pub fn factorial(n: usize) -> u64 {
    assert!(n <= MAX_PERMUTATION_LEN, "{n}! overflows u64");
    (1..=n as u64).product()
}

/// `0!, 1!, ..., (n-1)!`, indexed by the number of trailing positions.
pub(crate) fn factorials(n: usize) -> Vec<u64> {
    (0..n.max(1)).map(factorial).collect()
}

/// Number of points in the space, or `None` when it does not fit in 128 bits.
pub fn space_size(repr: Representation, n: usize) -> Option<u128> {
    match repr {
        Representation::Binary => 1u128.checked_shl(n as u32),
        Representation::Permutation => (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)),
    }
}

pub(crate) fn lehmer_rank(p: &[usize]) -> u64 {
    let n = p.len();
    let mut rank = 0u64;
    for i in 0..n {
        let smaller_after = p[i + 1..].iter().filter(|&&v| v < p[i]).count() as u64;
        rank = rank * (n - i) as u64 + smaller_after;
    }
    rank
}

pub(crate) fn lehmer_unrank(mut rank: u64, out: &mut [usize]) {
    let n = out.len();
    assert!(n <= MAX_PERMUTATION_LEN);
    let mut digits = [0usize; MAX_PERMUTATION_LEN];
    for i in (0..n).rev() {
        let radix = (n - i) as u64;
        digits[i] = (rank % radix) as usize;
        rank /= radix;
    }
    let mut pool = [0usize; MAX_PERMUTATION_LEN];
    for (v, slot) in pool.iter_mut().enumerate().take(n) {
        *slot = v;
    }
    let mut remaining = n;
    for (slot, &d) in out.iter_mut().zip(&digits[..n]) {
        *slot = pool[d];
        pool.copy_within(d + 1..remaining, d);
        remaining -= 1;
    }
}

/// Advances `p` to its lexicographic successor; false at the last permutation.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
