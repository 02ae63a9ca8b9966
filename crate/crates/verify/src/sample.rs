//! Seeded random instances for the acceptance criteria.

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::RngExt;
use sclkit::{AlternatingWord, FactorOrder, Matrix, Rational, StochasticMatrix};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Exponents of one factor: `len − 1` drawn from `pool`, the last chosen to
/// close the sum, retried until the closing exponent is also in `pool`. Gives
/// up after a few tries, since some lengths can never close.
fn closing_exponents(
    rng: &mut StdRng,
    pool: &[i64],
    order: FactorOrder,
    len: usize,
) -> Option<Vec<i64>> {
    for _ in 0..64 {
        let mut e: Vec<i64> = (0..len - 1)
            .map(|_| pool[rng.random_range(0..pool.len())])
            .collect();
        let last = -e.iter().sum::<i64>();
        let fits = match order {
            FactorOrder::Finite(_) => pool
                .iter()
                .find(|&&p| order.normalize(p - last) == 0)
                .copied(),
            FactorOrder::Infinite => pool.contains(&last).then_some(last),
        };
        if let Some(last) = fits {
            e.push(last);
            return Some(e);
        }
    }
    None
}

/// An alternating word in `Z/N * Z/N` with `2 ≤ L ≤ max_len`, every exponent a
/// generator of `Z/N` so each letter has order exactly `N`.
pub fn torsion_word(rng: &mut StdRng, n: u32, max_len: usize) -> AlternatingWord {
    let order = FactorOrder::Finite(n);
    let pool: Vec<i64> = (1..n as i64).filter(|&e| gcd(e, n as i64) == 1).collect();
    loop {
        let len = rng.random_range(2..=max_len);
        // for even N every generator is odd, so odd lengths never close up
        let Some(a) = closing_exponents(rng, &pool, order, len) else {
            continue;
        };
        let Some(b) = closing_exponents(rng, &pool, order, len) else {
            continue;
        };
        return AlternatingWord::new(a, b, order, order).expect("exponents are nonzero");
    }
}

/// An alternating word in `Z * Z` with `2 ≤ L ≤ max_len` and exponents in
/// `{±1, ±2}`, lying in the commutator subgroup.
pub fn free_word(rng: &mut StdRng, max_len: usize) -> AlternatingWord {
    let pool = [-2, -1, 1, 2];
    let order = FactorOrder::Infinite;
    loop {
        let len = rng.random_range(2..=max_len);
        let Some(a) = closing_exponents(rng, &pool, order, len) else {
            continue;
        };
        let Some(b) = closing_exponents(rng, &pool, order, len) else {
            continue;
        };
        return AlternatingWord::new(a, b, order, order).expect("exponents are nonzero");
    }
}

/// A rational doubly stochastic matrix: a convex combination of a few random
/// permutation matrices with random integer weights.
pub fn stochastic(rng: &mut StdRng, dim: usize) -> Matrix {
    let parts = rng.random_range(1..=4);
    let weights: Vec<i64> = (0..parts).map(|_| rng.random_range(1..=6)).collect();
    let total: i64 = weights.iter().sum();
    let mut entries = vec![Rational::zero(); dim * dim];
    for w in weights {
        let mut perm: Vec<usize> = (0..dim).collect();
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            entries[i * dim + j] += Rational::new(w.into(), total.into());
        }
    }
    StochasticMatrix::new(dim, entries).expect("convex combination of permutations")
}

/// Nonnegative entrywise increments, each a multiple of `1/5` up to `2/5`.
pub fn bump(rng: &mut StdRng, dim: usize) -> Vec<Rational> {
    (0..dim * dim)
        .map(|_| Rational::new(rng.random_range(0..=2i64).into(), 5.into()))
        .collect()
}

/// A mixing weight in `[0, 1]` with denominator 6.
pub fn weight(rng: &mut StdRng) -> Rational {
    let k: i64 = rng.random_range(0..=6);
    if k == 6 {
        Rational::one()
    } else {
        Rational::new(k.into(), 6.into())
    }
}

/// Exponents for one factor of order drawn from `{2, ..., 6, ∞}`, all nontrivial.
pub fn factor(rng: &mut StdRng, dim: usize) -> (Vec<i64>, FactorOrder) {
    let n = rng.random_range(2..=7u32);
    if n == 7 {
        let exps = (0..dim)
            .map(|_| [-2, -1, 1, 2][rng.random_range(0..4)])
            .collect();
        (exps, FactorOrder::Infinite)
    } else {
        let exps = (0..dim).map(|_| rng.random_range(1..n as i64)).collect();
        (exps, FactorOrder::Finite(n))
    }
}
