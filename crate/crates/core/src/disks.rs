//! Disk vectors of a cyclic factor group.
//!
//! A cyclic index sequence `(i_1, ..., i_k)` is a disk sequence when the
//! product of the corresponding syllables is trivial, i.e. the exponent sum
//! vanishes (modulo `N` for a finite factor). Its disk vector records how often
//! each ordered pair `(i_j, i_{j+1})` occurs, cyclically.
//!
//! A disk sequence is irreducible when no proper cyclically consecutive block
//! already has vanishing sum. With prefix sums `s_0 = 0, s_1, ..., s_{k-1}`
//! this is the same as asking that the prefix sums be pairwise distinct, which
//! is what the enumeration below exploits.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::words::FactorOrder;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiskVector {
    sequence: Vec<usize>,
    pair_counts: Vec<u32>,
    dim: usize,
}

impl DiskVector {
    /// Builds the pair-count vector of a cyclic sequence of 0-based indices
    /// into `0..dim`. Does not check the disk condition.
    pub fn from_sequence(sequence: Vec<usize>, dim: usize) -> Result<Self> {
        if sequence.is_empty() {
            return Err(Error::InvalidArgument("empty disk sequence".into()));
        }
        if let Some(&bad) = sequence.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: dim,
            });
        }
        let mut pair_counts = vec![0u32; dim * dim];
        let k = sequence.len();
        for j in 0..k {
            pair_counts[sequence[j] * dim + sequence[(j + 1) % k]] += 1;
        }
        Ok(Self {
            sequence,
            pair_counts,
            dim,
        })
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// Row-major `dim × dim` pair counts.
    pub fn pair_counts(&self) -> &[u32] {
        &self.pair_counts
    }

    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.pair_counts[i * self.dim + j]
    }

    /// Sequence length `k`, which equals the sum of all pair counts.
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entrywise `self ≤ other`.
    pub fn dominated_by(&self, other: &DiskVector) -> bool {
        self.pair_counts
            .iter()
            .zip(&other.pair_counts)
            .all(|(a, b)| a <= b)
    }
}

fn check_indices(seq: &[usize], len: usize) -> Result<()> {
    match seq.iter().find(|&&i| i >= len) {
        Some(&index) => Err(Error::IndexOutOfRange { index, len }),
        None => Ok(()),
    }
}

/// Whether the syllables indexed by `seq` multiply to the identity.
pub fn is_disk_sequence(seq: &[usize], exponents: &[i64], order: FactorOrder) -> Result<bool> {
    if seq.is_empty() {
        return Err(Error::InvalidArgument("empty disk sequence".into()));
    }
    check_indices(seq, exponents.len())?;
    let sum: i64 = seq.iter().map(|&i| exponents[i]).sum();
    Ok(order.normalize(sum) == 0)
}

/// Whether no proper nonempty cyclically consecutive block of `seq` has
/// vanishing exponent sum. Assumes `seq` is a disk sequence.
pub fn is_irreducible(seq: &[usize], exponents: &[i64], order: FactorOrder) -> bool {
    let mut seen = std::collections::HashSet::with_capacity(seq.len());
    let mut sum = 0i64;
    for &i in seq {
        if !seen.insert(order.normalize(sum)) {
            return false;
        }
        sum += exponents[i];
    }
    true
}

/// Default enumeration bound: `N` for finite order, `2·(P+Q)` otherwise, where
/// `P` and `Q` are the total positive and negative exponent mass.
pub fn default_k_max(exponents: &[i64], order: FactorOrder) -> usize {
    match order {
        FactorOrder::Finite(n) => n as usize,
        FactorOrder::Infinite => {
            let mass: i64 = exponents.iter().map(|e| e.abs()).sum();
            (2 * mass).max(2) as usize
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskEnumeration {
    pub disks: Vec<DiskVector>,
    pub k_max: usize,
    /// Length bound actually used.
    pub effective_bound: usize,
    /// True when the list provably contains every irreducible disk vector.
    /// Always false for infinite order, where only a downstream saturation
    /// check can vouch for the bound.
    pub complete: bool,
}

/// All irreducible disk vectors of length at most the effective bound,
/// deduplicated by pair counts and sorted by `(length, sequence)`.
pub fn enumerate_irreducible(
    exponents: &[i64],
    order: FactorOrder,
    k_max: usize,
) -> DiskEnumeration {
    let k_max = k_max.max(1);
    match order {
        FactorOrder::Finite(n) => {
            let n = n as usize;
            let effective = k_max.min(n);
            let disks = enumerate_finite(exponents, n as i64, effective);
            let complete = effective == n || disks == enumerate_finite(exponents, n as i64, n);
            DiskEnumeration {
                disks,
                k_max,
                effective_bound: effective,
                complete,
            }
        }
        FactorOrder::Infinite => DiskEnumeration {
            disks: enumerate_infinite(exponents, k_max),
            k_max,
            effective_bound: k_max,
            complete: false,
        },
    }
}

/// Like [`enumerate_irreducible`] but fails when a finite-order enumeration
/// was cut short by `k_max`.
pub fn enumerate_checked(
    exponents: &[i64],
    order: FactorOrder,
    k_max: usize,
) -> Result<DiskEnumeration> {
    let found = enumerate_irreducible(exponents, order, k_max);
    if order.is_finite() && !found.complete {
        return Err(Error::BoundTooSmall {
            k_max,
            detail: format!("irreducible disk vectors of length up to {order} exist"),
        });
    }
    Ok(found)
}

fn collect(found: HashMap<Vec<u32>, Vec<usize>>, dim: usize) -> Vec<DiskVector> {
    let mut disks: Vec<DiskVector> = found
        .into_values()
        .map(|seq| DiskVector::from_sequence(seq, dim).expect("indices in range"))
        .collect();
    disks.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.sequence.cmp(&b.sequence))
    });
    disks
}

fn record(found: &mut HashMap<Vec<u32>, Vec<usize>>, seq: &[usize], dim: usize) {
    let mut counts = vec![0u32; dim * dim];
    let k = seq.len();
    for j in 0..k {
        counts[seq[j] * dim + seq[(j + 1) % k]] += 1;
    }
    found
        .entry(counts)
        .and_modify(|existing| {
            if seq < existing.as_slice() {
                *existing = seq.to_vec();
            }
        })
        .or_insert_with(|| seq.to_vec());
}

// Every cyclic class has a rotation starting at its smallest index, so the
// search fixes the first index and only appends indices at least as large.
fn enumerate_finite(exponents: &[i64], n: i64, bound: usize) -> Vec<DiskVector> {
    let dim = exponents.len();
    let residues: Vec<usize> = exponents.iter().map(|e| e.rem_euclid(n) as usize).collect();
    let mut found = HashMap::new();
    let mut seq = Vec::with_capacity(bound);
    let mut seen = vec![false; n as usize];

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        residues: &[usize],
        n: usize,
        bound: usize,
        first: usize,
        sum: usize,
        seq: &mut Vec<usize>,
        seen: &mut [bool],
        found: &mut HashMap<Vec<u32>, Vec<usize>>,
    ) {
        for i in first..residues.len() {
            let next = (sum + residues[i]) % n;
            if next == 0 {
                seq.push(i);
                record(found, seq, residues.len());
                seq.pop();
                continue;
            }
            if seen[next] || seq.len() + 1 >= bound {
                continue;
            }
            seen[next] = true;
            seq.push(i);
            dfs(residues, n, bound, first, next, seq, seen, found);
            seq.pop();
            seen[next] = false;
        }
    }

    for first in 0..dim {
        let r = residues[first];
        if r == 0 {
            record(&mut found, &[first], dim);
            continue;
        }
        if bound < 2 {
            continue;
        }
        seen[0] = true;
        seen[r] = true;
        seq.push(first);
        dfs(
            &residues, n as usize, bound, first, r, &mut seq, &mut seen, &mut found,
        );
        seq.pop();
        seen[r] = false;
        seen[0] = false;
    }
    collect(found, dim)
}

// Rotating a sequence to start at its minimal prefix sum makes every other
// prefix sum strictly positive; the search only builds such rotations.
fn enumerate_infinite(exponents: &[i64], bound: usize) -> Vec<DiskVector> {
    let dim = exponents.len();
    let max_down = exponents.iter().filter(|&&e| e < 0).map(|e| -e).max();
    let max_up = exponents.iter().filter(|&&e| e > 0).copied().max();
    let (Some(max_down), Some(max_up)) = (max_down, max_up) else {
        return Vec::new();
    };
    let mut steps: Vec<i64> = exponents.to_vec();
    steps.sort_unstable();
    steps.dedup();

    let ceiling = (bound as i64) * max_up.min(max_down);
    let mut search = InfiniteSearch {
        exponents,
        steps,
        bound,
        ceiling,
        visited: vec![false; ceiling as usize + 1],
        seq: Vec::with_capacity(bound),
        found: HashMap::new(),
        queue: VecDeque::new(),
        dist: vec![u32::MAX; ceiling as usize + 1],
    };
    search.dfs(0);
    collect(search.found, dim)
}

struct InfiniteSearch<'a> {
    exponents: &'a [i64],
    steps: Vec<i64>,
    bound: usize,
    // prefix sums never exceed this: the walk must come back down within
    // the remaining steps, and go up at most as far.
    ceiling: i64,
    visited: Vec<bool>,
    seq: Vec<usize>,
    found: HashMap<Vec<u32>, Vec<usize>>,
    queue: VecDeque<i64>,
    dist: Vec<u32>,
}

impl InfiniteSearch<'_> {
    fn dfs(&mut self, sum: i64) {
        for i in 0..self.exponents.len() {
            let next = sum + self.exponents[i];
            if next == 0 {
                if !self.seq.is_empty() {
                    self.seq.push(i);
                    record(&mut self.found, &self.seq, self.exponents.len());
                    self.seq.pop();
                }
                continue;
            }
            // steps still available after this one
            let remaining = self.bound - self.seq.len() - 1;
            if next < 0 || next > self.ceiling || self.visited[next as usize] || remaining == 0 {
                continue;
            }
            if !self.can_return(next, remaining) {
                continue;
            }
            self.visited[next as usize] = true;
            self.seq.push(i);
            self.dfs(next);
            self.seq.pop();
            self.visited[next as usize] = false;
        }
    }

    /// Breadth-first search for a path from `from` back to 0 through unvisited
    /// positive values in at most `budget` steps. A relaxation of the real
    /// constraint, so pruning on failure is sound.
    fn can_return(&mut self, from: i64, budget: usize) -> bool {
        for d in self.dist.iter_mut() {
            *d = u32::MAX;
        }
        self.queue.clear();
        self.dist[from as usize] = 0;
        self.queue.push_back(from);
        while let Some(x) = self.queue.pop_front() {
            let d = self.dist[x as usize];
            if d as usize >= budget {
                continue;
            }
            for &e in &self.steps {
                let y = x + e;
                if y == 0 {
                    return true;
                }
                if y < 0 || y > self.ceiling {
                    continue;
                }
                let yu = y as usize;
                if self.visited[yu] || self.dist[yu] != u32::MAX {
                    continue;
                }
                self.dist[yu] = d + 1;
                self.queue.push_back(y);
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: FactorOrder = FactorOrder::Infinite;

    fn counts(disks: &[DiskVector]) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = disks.iter().map(|d| d.pair_counts().to_vec()).collect();
        v.sort();
        v
    }

    #[test]
    fn disk_condition_examples() {
        assert!(is_disk_sequence(&[0, 1], &[1, -1], INF).unwrap());
        assert!(!is_disk_sequence(&[0], &[1, -1], INF).unwrap());
        assert!(is_disk_sequence(&[0, 0], &[1, 1], FactorOrder::Finite(2)).unwrap());
        assert_eq!(
            is_disk_sequence(&[0, 2], &[1, -1], INF),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        );
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&[0, 1], &[1, -1], INF));
        assert!(!is_irreducible(&[0, 1, 0, 1], &[1, -1], INF));
        assert!(is_irreducible(&[0, 0, 0], &[1, 2], FactorOrder::Finite(3)));
        // the block (1, 2) wraps around the end
        assert!(!is_irreducible(&[1, 0, 0, 1], &[1, -1], INF));
    }

    #[test]
    fn commutator_over_integers_has_one_disk() {
        let e = enumerate_irreducible(&[1, -1], INF, 6);
        assert_eq!(counts(&e.disks), vec![vec![0, 1, 1, 0]]);
        assert!(!e.complete);
    }

    #[test]
    fn order_two_disks() {
        let e = enumerate_irreducible(&[1, 1], FactorOrder::Finite(2), 2);
        assert_eq!(
            counts(&e.disks),
            vec![vec![0, 0, 0, 2], vec![0, 1, 1, 0], vec![2, 0, 0, 0]]
        );
        assert!(e.complete);
    }

    #[test]
    fn order_three_disks() {
        let e = enumerate_irreducible(&[1, 2], FactorOrder::Finite(3), 3);
        assert_eq!(
            counts(&e.disks),
            vec![vec![0, 0, 0, 3], vec![0, 1, 1, 0], vec![3, 0, 0, 0]]
        );
    }

    #[test]
    fn finite_truncation_is_detected() {
        let e = enumerate_irreducible(&[1, 2], FactorOrder::Finite(3), 2);
        assert_eq!(e.effective_bound, 2);
        assert!(!e.complete);
        assert!(matches!(
            enumerate_checked(&[1, 2], FactorOrder::Finite(3), 2),
            Err(Error::BoundTooSmall { .. })
        ));
        let e = enumerate_irreducible(&[1, 3], FactorOrder::Finite(4), 2);
        assert_eq!(e.disks.len(), 1);
        assert!(!e.complete);
        assert_eq!(
            enumerate_irreducible(&[1, 3], FactorOrder::Finite(4), 4)
                .disks
                .len(),
            3
        );
        // a^2 has order 2, so nothing is lost by stopping at length 2
        let e = enumerate_irreducible(&[2, 2], FactorOrder::Finite(4), 2);
        assert!(e.complete);
    }

    #[test]
    fn long_disks_exist_over_the_integers() {
        // +2 ... +2, -1, -2 ... -2, -1 never revisits a partial sum
        let e = enumerate_irreducible(&[1, 2, -1, -2], INF, 12);
        assert!(e.disks.iter().any(|d| d.len() == 12));
        let longer = enumerate_irreducible(&[1, 2, -1, -2], INF, 24);
        assert!(longer.disks.len() > e.disks.len());
    }

    #[test]
    fn default_bounds() {
        assert_eq!(default_k_max(&[1, -1], INF), 4);
        assert_eq!(default_k_max(&[1, 1, 1, -3], INF), 12);
        assert_eq!(default_k_max(&[1, 2], FactorOrder::Finite(5)), 5);
    }

    #[test]
    fn no_disks_without_both_signs() {
        assert!(enumerate_irreducible(&[1, 2], INF, 10).disks.is_empty());
    }
}
