//! Cheapest disk vectors under per-pair costs.
//!
//! A disk sequence is a closed walk in the graph whose states are pairs
//! `(index, exponent sum so far)`, sums taken mod `N` for finite order. With
//! nonnegative costs a cheapest closed walk can be taken simple, so for finite
//! order walks of length `L·N` already reach the minimum over all disks. For
//! infinite order the state space is unbounded and the caller picks a length.

use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::words::FactorOrder;

/// The walk length that makes pricing complete for finite order, or `k_max`.
pub fn walk_bound(dim: usize, order: FactorOrder, k_max: usize) -> usize {
    match order {
        FactorOrder::Finite(n) => dim * n as usize,
        FactorOrder::Infinite => k_max.max(1),
    }
}

type State = (usize, i64);

/// For each index `i`, the cheapest disk sequence of length at most `max_len`
/// whose least index is `i`, with its cost `Σ costs[a·L + b]` over cyclically
/// consecutive pairs `(a, b)`. Costs must be nonnegative.
pub fn cheapest_disks<T: Scalar>(
    costs: &[T],
    exponents: &[i64],
    order: FactorOrder,
    max_len: usize,
) -> Vec<(Vec<usize>, T)> {
    let dim = exponents.len();
    debug_assert_eq!(costs.len(), dim * dim);
    let step = exponents.iter().map(|e| e.abs()).max().unwrap_or(0);
    let norm = |s: i64| order.normalize(s);
    let mut out = Vec::new();

    for start in 0..dim {
        let mut layer: BTreeMap<State, T> = BTreeMap::new();
        layer.insert((start, 0), T::zero());
        // back[t] maps a state at walk length t + 2 to its predecessor
        let mut back: Vec<BTreeMap<State, State>> = Vec::new();
        let mut best: Option<(T, usize, State)> = None;

        for t in 1..=max_len {
            let mut next: BTreeMap<State, T> = BTreeMap::new();
            let mut links = BTreeMap::new();
            for (&(j, s), c) in &layer {
                let s2 = norm(s + exponents[j]);
                if s2 == 0 {
                    let total = c.clone() + costs[j * dim + start].clone();
                    if best.as_ref().is_none_or(|(b, _, _)| total < *b) {
                        best = Some((total, t, (j, s)));
                    }
                }
                if t == max_len {
                    continue;
                }
                if !order.is_finite() && s2.abs() > (max_len - t) as i64 * step {
                    continue;
                }
                for k in start..dim {
                    let cost = c.clone() + costs[j * dim + k].clone();
                    let key = (k, s2);
                    if next.get(&key).is_none_or(|old| cost < *old) {
                        next.insert(key, cost);
                        links.insert(key, (j, s));
                    }
                }
            }
            back.push(links);
            if next.is_empty() {
                break;
            }
            layer = next;
        }

        if let Some((cost, len, mut state)) = best {
            let mut seq = vec![state.0];
            for t in (1..len).rev() {
                state = back[t - 1][&state];
                seq.push(state.0);
            }
            seq.reverse();
            debug_assert_eq!(seq[0], start);
            out.push((seq, cost));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn cost_of(seq: &[usize], costs: &[Q], dim: usize) -> Q {
        (0..seq.len()).fold(Q::from_int(0), |acc, k| {
            acc + costs[seq[k] * dim + seq[(k + 1) % seq.len()]].clone()
        })
    }

    #[test]
    fn uniform_costs_find_shortest_disks() {
        let ones = vec![Q::from_int(1); 4];
        let found = cheapest_disks(&ones, &[1, -1], FactorOrder::Infinite, 6);
        assert_eq!(found, vec![(vec![0, 1], Q::from_int(2))]);
        // in Z/3 with exponents (1, 1) the index-1 walk must close on its own
        let found = cheapest_disks(&ones, &[1, 1], FactorOrder::Finite(3), 6);
        assert_eq!(found[1], (vec![1, 1, 1], Q::from_int(3)));
        assert_eq!(found[0].1, Q::from_int(3));
    }

    #[test]
    fn reducible_walk_can_be_cheapest() {
        // exponents 2 mod 4; only the 3-cycle 0 → 1 → 2 → 0 is free
        let mut costs = vec![Q::from_int(1); 9];
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            costs[a * 3 + b] = Q::from_int(0);
        }
        let found = cheapest_disks(&costs, &[2, 2, 2], FactorOrder::Finite(4), 12);
        assert_eq!(found[0], (vec![0, 1, 2, 0, 1, 2], Q::from_int(0)));
    }

    #[test]
    fn reported_costs_match_sequences() {
        let costs: Vec<Q> = (0..9).map(|k| Q::ratio(k % 4, 3)).collect();
        for order in [FactorOrder::Finite(5), FactorOrder::Infinite] {
            for (seq, cost) in cheapest_disks(&costs, &[2, -1, 3], order, 15) {
                assert_eq!(cost, cost_of(&seq, &costs, 3));
                let sum: i64 = seq.iter().map(|&i| [2, -1, 3][i]).sum();
                assert_eq!(order.normalize(sum), 0);
            }
        }
    }
}
