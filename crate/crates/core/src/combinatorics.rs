//! Exact counts (binomial, Stirling, Bell, `D(n,j,k)`) and exhaustive
//! enumeration of set partitions and partial partitions.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::{Block, PartialPartition};
use crate::limits;
use crate::{Error, Result};

/// Binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binomial(n: usize, k: isize) -> BigUint {
    if k < 0 || k as usize > n {
        return BigUint::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Stirling number of the second kind `S(n, k)`; zero for `k < 0` or `k > n`.
pub fn stirling2(n: usize, k: isize) -> BigUint {
    if k < 0 || k as usize > n {
        return BigUint::zero();
    }
    stirling2_row(n).swap_remove(k as usize)
}

/// `[S(n,0), …, S(n,n)]`.
pub fn stirling2_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for k in 1..=m {
            let mut v = row[k - 1].clone();
            if k < m {
                v += &row[k] * k;
            }
            next[k] = v;
        }
        row = next;
    }
    row
}

pub fn bell(n: usize) -> BigUint {
    stirling2_row(n).into_iter().sum()
}

/// Number of partitions of `[n]` with `j` blocks, exactly `k` of them
/// non-singleton:
///
/// `D(n,j,k) = C(n, j-k) · Σ_{i=0}^{n-(j-k)} (-1)^{n-(j-k)-i} C(n-(j-k), i) S(i, j+i-n)`.
///
/// Stirling terms with negative second argument vanish, so the sum needs no
/// explicit lower bound.
pub fn d_count(n: usize, j: isize, k: isize) -> BigUint {
    if j < 0 || k < 0 || k > j {
        return BigUint::zero();
    }
    let singles = j - k;
    if singles > n as isize {
        return BigUint::zero();
    }
    let m = n - singles as usize;
    let mut sum = BigInt::zero();
    for i in 0..=m {
        let s = stirling2(i, j + i as isize - n as isize);
        if s.is_zero() {
            continue;
        }
        let term = BigInt::from(binomial(m, i as isize) * s);
        if (m - i).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    debug_assert!(!sum.is_negative());
    binomial(n, singles) * sum.magnitude()
}

/// Lexicographic restricted growth strings of length `len`: `a[0] = 0` and
/// `a[i] <= 1 + max(a[..i])`. Each string encodes one set partition.
#[derive(Debug, Clone)]
pub struct RestrictedGrowthStrings {
    current: Vec<usize>,
    /// `prefix_max[i] = max(a[..=i])`
    prefix_max: Vec<usize>,
    done: bool,
}

impl RestrictedGrowthStrings {
    pub fn new(len: usize) -> Self {
        RestrictedGrowthStrings {
            current: vec![0; len],
            prefix_max: vec![0; len],
            done: false,
        }
    }
}

impl Iterator for RestrictedGrowthStrings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let len = self.current.len();
        // Advance: rightmost position that can still grow.
        let mut i = len;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] <= self.prefix_max[i - 1] {
                self.current[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.current[i]);
                for t in i + 1..len {
                    self.current[t] = 0;
                    self.prefix_max[t] = self.prefix_max[i];
                }
                break;
            }
        }
        Some(out)
    }
}

fn partition_from_rgs(ground: &[u32], rgs: &[usize]) -> PartialPartition {
    let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
    let mut masks = vec![0u32; blocks];
    for (&e, &b) in ground.iter().zip(rgs) {
        masks[b] |= 1 << (e - 1);
    }
    let mut blocks: Vec<Block> = masks
        .into_iter()
        .map(|m| Block::from_bits(m).expect("restricted growth strings use every label"))
        .collect();
    blocks.sort_unstable();
    PartialPartition::from_sorted_unchecked(blocks)
}

/// Partitions of an explicit ground set, in restricted-growth-string order
/// with respect to the given element order.
pub struct SetPartitions {
    ground: Vec<u32>,
    strings: RestrictedGrowthStrings,
}

impl SetPartitions {
    pub fn new(ground: &[u32]) -> Result<Self> {
        limits::check_n(ground.len())?;
        let mut ground = ground.to_vec();
        ground.sort_unstable();
        ground.dedup();
        if let Some(&bad) = ground.iter().find(|&&e| e == 0 || e as usize > limits::HARD_MAX_N) {
            return Err(Error::InvalidBlock(format!("element {bad} cannot be encoded")));
        }
        let strings = RestrictedGrowthStrings::new(ground.len());
        Ok(SetPartitions { ground, strings })
    }
}

impl Iterator for SetPartitions {
    type Item = PartialPartition;

    fn next(&mut self) -> Option<PartialPartition> {
        let rgs = self.strings.next()?;
        Some(partition_from_rgs(&self.ground, &rgs))
    }
}

pub fn enumerate_set_partitions(ground: &[u32]) -> Result<Vec<PartialPartition>> {
    Ok(SetPartitions::new(ground)?.collect())
}

pub(crate) fn set_partitions_of_n(n: usize) -> Result<Vec<PartialPartition>> {
    let ground: Vec<u32> = (1..=n as u32).collect();
    enumerate_set_partitions(&ground)
}

/// Every partial partition of `[n]`, ordered by subset bit mask ascending and
/// then by restricted-growth-string order within each subset.
pub struct PartialPartitions {
    n: usize,
    next_mask: u64,
    inner: Option<SetPartitions>,
}

impl PartialPartitions {
    pub fn new(n: usize) -> Result<Self> {
        limits::check_n(n)?;
        Ok(PartialPartitions { n, next_mask: 0, inner: None })
    }
}

impl Iterator for PartialPartitions {
    type Item = PartialPartition;

    fn next(&mut self) -> Option<PartialPartition> {
        loop {
            if let Some(p) = self.inner.as_mut().and_then(Iterator::next) {
                return Some(p);
            }
            if self.next_mask >= 1u64 << self.n {
                return None;
            }
            let mask = self.next_mask;
            self.next_mask += 1;
            let ground: Vec<u32> = (0..self.n as u32)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| i + 1)
                .collect();
            self.inner = Some(SetPartitions::new(&ground).expect("subset of a checked ground set"));
        }
    }
}

/// Partial partitions of `[n]`, optionally only those with exactly
/// `size_filter` blocks.
pub fn enumerate_partial_partitions(n: usize, size_filter: Option<usize>) -> Result<Vec<PartialPartition>> {
    Ok(PartialPartitions::new(n)?
        .filter(|p| size_filter.is_none_or(|j| p.len() == j))
        .collect())
}

/// `D_{n,j,k}`: partitions of `[n]` with `j` blocks, `k` of them non-singleton.
pub fn enumerate_d_njk(n: usize, j: usize, k: usize) -> Result<Vec<PartialPartition>> {
    Ok(set_partitions_of_n(n)?
        .into_iter()
        .filter(|p| p.len() == j && p.non_singleton_count() == k)
        .collect())
}

/// Converts a count known to be small; saturates otherwise.
pub fn count_to_u64(c: &BigUint) -> u64 {
    c.to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn u(c: BigUint) -> u64 {
        count_to_u64(&c)
    }

    /// Pascal's triangle, built independently of the multiplicative formula.
    fn pascal(n: usize) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![1u64]];
        for m in 1..=n {
            let prev = &rows[m - 1];
            let mut row = vec![1u64; m + 1];
            for k in 1..m {
                row[k] = prev[k - 1] + prev[k];
            }
            rows.push(row);
        }
        rows
    }

    /// Explicit formula `S(n,k) = (1/k!) Σ (-1)^i C(k,i) (k-i)^n`.
    fn stirling_explicit(n: u32, k: u32) -> i128 {
        let mut sum = 0i128;
        let mut fact = 1i128;
        for i in 1..=k as i128 {
            fact *= i;
        }
        for i in 0..=k {
            let c = pascal(k as usize)[k as usize][i as usize] as i128;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sum += sign * c * ((k - i) as i128).pow(n);
        }
        sum / fact
    }

    #[test]
    fn binomial_values() {
        assert_eq!(u(binomial(4, 2)), pascal(4)[4][2]);
        assert_eq!(u(binomial(4, 2)), 6);
        for n in 0..10 {
            assert_eq!(u(binomial(n, 0)), 1);
        }
        assert_eq!(u(binomial(3, 5)), 0);
        assert_eq!(u(binomial(3, -1)), 0);
        let tri = pascal(20);
        for (n, row) in tri.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(u(binomial(n, k as isize)), v);
            }
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(u(stirling2(4, 2)), 7);
        for n in 0..8 {
            assert_eq!(u(stirling2(n, n as isize)), 1);
        }
        assert_eq!(u(stirling2(5, -1)), 0);
        assert_eq!(u(stirling2(0, 0)), 1);
        assert_eq!(u(stirling2(3, 0)), 0);
        for n in 0..=12u32 {
            for k in 0..=n {
                assert_eq!(u(stirling2(n as usize, k as isize)) as i128, stirling_explicit(n, k));
            }
        }
    }

    #[test]
    fn bell_values() {
        assert_eq!(u(bell(0)), 1);
        assert_eq!(u(bell(4)), 15);
        assert_eq!(u(bell(8)), 4140);
        assert_eq!(u(bell(5)), enumerate_set_partitions(&[1, 2, 3, 4, 5]).unwrap().len() as u64);
        // Beyond u64 range everything stays exact.
        assert_eq!(bell(30).to_string(), "846749014511809332450147");
    }

    #[test]
    fn d_count_anchors() {
        assert_eq!(u(d_count(4, 2, 2)), 3);
        assert_eq!(u(d_count(4, 3, 1)), 6);
        for n in 0..8 {
            assert_eq!(u(d_count(n, n as isize, 0)), 1);
        }
        assert_eq!(u(d_count(6, 3, 3)), 15);
        assert_eq!(u(d_count(4, 1, 2)), 0);
        assert_eq!(u(d_count(4, -1, 0)), 0);
        assert_eq!(u(d_count(4, 6, 0)), 0);
    }

    #[test]
    fn d_count_reduction_identity() {
        for n in 0..=10usize {
            for j in 0..=n as isize {
                for k in 0..=j {
                    let rhs = binomial(n, j - k) * d_count(n - (j - k) as usize, k, k);
                    assert_eq!(d_count(n, j, k), rhs, "({n},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn set_partitions_small() {
        let two = enumerate_set_partitions(&[1, 2]).unwrap();
        assert_eq!(two, vec![PartialPartition::parse("12").unwrap(), PartialPartition::parse("1,2").unwrap()]);
        assert_eq!(enumerate_set_partitions(&[]).unwrap(), vec![PartialPartition::empty()]);
        assert_eq!(enumerate_set_partitions(&[1, 2, 3, 4, 5]).unwrap().len(), 52);
    }

    #[test]
    fn rgs_order_is_lexicographic() {
        let all: Vec<_> = RestrictedGrowthStrings::new(4).collect();
        assert_eq!(all.len(), 15);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.first().unwrap(), &vec![0, 0, 0, 0]);
        assert_eq!(all.last().unwrap(), &vec![0, 1, 2, 3]);
        assert_eq!(RestrictedGrowthStrings::new(0).count(), 1);
    }

    #[test]
    fn partial_partitions_small() {
        let d2 = enumerate_partial_partitions(2, None).unwrap();
        let names: Vec<String> = d2.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["∅", "1", "2", "12", "1,2"]);
        assert_eq!(enumerate_partial_partitions(3, None).unwrap().len(), 15);
        assert_eq!(enumerate_partial_partitions(4, Some(2)).unwrap().len(), 25);
        for n in 0..=8 {
            let all = enumerate_partial_partitions(n, None).unwrap();
            assert_eq!(all.len() as u64, u(bell(n + 1)), "n={n}");
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }

    #[test]
    fn d_njk_sets() {
        let names: Vec<String> = enumerate_d_njk(4, 2, 2).unwrap().iter().map(|p| p.to_string()).collect();
        let mut names = names;
        names.sort();
        assert_eq!(names, ["12,34", "13,24", "14,23"]);
        assert_eq!(enumerate_d_njk(4, 1, 1).unwrap(), vec![PartialPartition::parse("1234").unwrap()]);
        let six = enumerate_d_njk(6, 3, 3).unwrap();
        assert_eq!(six.len(), 15);
        assert!(six.iter().all(|p| p.blocks().iter().all(|b| b.len() == 2)));
    }

    #[test]
    fn enumeration_respects_ceiling() {
        let big: Vec<u32> = (1..=20).collect();
        assert!(enumerate_set_partitions(&big).is_err());
        assert!(PartialPartitions::new(33).is_err());
    }
}
