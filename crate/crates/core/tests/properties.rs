use std::collections::BTreeSet;

use num_traits::{One, Zero};
use proptest::prelude::*;
use sclkit::bounds::gap_for_order;
use sclkit::polytope::StochasticMatrix;
use sclkit::*;

type Q = Rational;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn order_strategy() -> impl Strategy<Value = FactorOrder> {
    prop_oneof![
        (2u32..=6).prop_map(FactorOrder::Finite),
        Just(FactorOrder::Infinite),
    ]
}

fn signature_strategy() -> impl Strategy<Value = FactorSignature> {
    prop::collection::vec(order_strategy(), 1..=3)
        .prop_map(|orders| FactorSignature::new(orders).unwrap())
}

fn raw_word(sig: FactorSignature) -> impl Strategy<Value = (FactorSignature, Vec<Letter>)> {
    let k = sig.len();
    let letter = (0..k, prop_oneof![-3i64..=-1, 1i64..=3]).prop_map(|(f, e)| Letter::new(f, e));
    prop::collection::vec(letter, 0..12).prop_map(move |letters| (sig.clone(), letters))
}

fn signed_word() -> impl Strategy<Value = (FactorSignature, Vec<Letter>)> {
    signature_strategy().prop_flat_map(raw_word)
}

fn residues(w: &ReducedWord) -> Vec<i64> {
    let sig = w.signature();
    let mut sums = vec![0; sig.len()];
    for l in w.letters() {
        sums[l.factor] += l.exponent;
    }
    sums.iter()
        .enumerate()
        .map(|(f, &s)| sig.order(f).normalize(s))
        .collect()
}

fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len()
        && (a.is_empty()
            || (0..a.len()).any(|r| (0..a.len()).all(|t| a[(t + r) % a.len()] == b[t])))
}

fn close_up(order: FactorOrder, mut e: Vec<i64>) -> Option<Vec<i64>> {
    let last = -e.iter().sum::<i64>();
    let last = if order.is_finite() {
        order.normalize(last)
    } else {
        last
    };
    if last == 0 || (!order.is_finite() && last.abs() > 2) {
        return None;
    }
    e.push(last);
    Some(e)
}

/// Alternating words of length `2..=max_len` in the commutator subgroup. Free
/// exponents stay within ±2 to keep disk enumeration small.
fn alternating(order: FactorOrder, max_len: usize) -> impl Strategy<Value = AlternatingWord> {
    let range = match order {
        FactorOrder::Finite(n) => 1..n as i64,
        FactorOrder::Infinite => 1..3,
    };
    let signed = prop_oneof![range.clone(), range.prop_map(|e| -e)];
    (2..=max_len)
        .prop_flat_map(move |dim| {
            let part = prop::collection::vec(signed.clone(), dim - 1);
            (part.clone(), part)
        })
        .prop_filter_map("closing exponent is trivial", move |(a, b)| {
            let (a, b) = (close_up(order, a)?, close_up(order, b)?);
            Some(AlternatingWord::new(a, b, order, order).unwrap())
        })
}

/// A rational doubly stochastic matrix as a convex combination of permutations.
fn stochastic(dim: usize) -> impl Strategy<Value = StochasticMatrix<Q>> {
    let perm = Just((0..dim).collect::<Vec<usize>>()).prop_shuffle();
    prop::collection::vec((perm, 1i64..=7), 1..=4).prop_map(move |terms| {
        let total: i64 = terms.iter().map(|t| t.1).sum();
        let mut entries = vec![Q::zero(); dim * dim];
        for (p, w) in terms {
            for (i, &j) in p.iter().enumerate() {
                entries[i * dim + j] += q(w, total);
            }
        }
        StochasticMatrix::new(dim, entries).unwrap()
    })
}

/// Brute force: every cyclic index sequence of length `1..=max_len` whose
/// exponent sum vanishes, optionally restricted to irreducible ones.
fn brute_force_disks(
    exps: &[i64],
    order: FactorOrder,
    max_len: usize,
    irreducible_only: bool,
) -> Vec<DiskVector> {
    let dim = exps.len();
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut seq = vec![0usize; len];
        loop {
            let sum: i64 = seq.iter().map(|&i| exps[i]).sum();
            if order.normalize(sum) == 0 {
                let prefix: Vec<i64> = (0..len)
                    .map(|k| order.normalize(seq[..k].iter().map(|&i| exps[i]).sum()))
                    .collect();
                let distinct = prefix.iter().collect::<BTreeSet<_>>().len() == len;
                if distinct || !irreducible_only {
                    out.push(DiskVector::from_sequence(seq.clone(), dim).unwrap());
                }
            }
            let mut k = 0;
            while k < len && seq[k] == dim - 1 {
                seq[k] = 0;
                k += 1;
            }
            if k == len {
                break;
            }
            seq[k] += 1;
        }
    }
    out
}

fn count_set(disks: &[DiskVector]) -> BTreeSet<Vec<u32>> {
    disks.iter().map(|d| d.pair_counts().to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_round_trip((sig, letters) in signed_word()) {
        let w = ReducedWord::from_letters(&letters, &sig).unwrap();
        let again = parse_word(&w.to_string(), &sig).unwrap();
        prop_assert_eq!(again, w);
    }

    #[test]
    fn cyclic_reduction_is_idempotent_and_keeps_residues((sig, letters) in signed_word()) {
        let w = ReducedWord::from_letters(&letters, &sig).unwrap();
        let c = cyclically_reduce(&w);
        prop_assert_eq!(cyclically_reduce(&c), c.clone());
        prop_assert_eq!(residues(&c), residues(&w));
        prop_assert!(c.len() <= w.len());
    }

    #[test]
    fn decomposition_flattens_to_a_rotation((sig, letters) in signed_word(), shift in 0usize..12) {
        let c = cyclically_reduce(&ReducedWord::from_letters(&letters, &sig).unwrap());
        if let Ok(alt) = syllable_decomposition(&c) {
            prop_assert!(is_rotation(alt.to_reduced_word().letters(), c.letters()));
            // conjugating by a rotation gives the same canonical form
            let n = c.len();
            let rotated: Vec<Letter> = (0..n).map(|t| c.letters()[(t + shift) % n]).collect();
            let r = ReducedWord::from_letters(&rotated, &sig).unwrap();
            prop_assert_eq!(syllable_decomposition(&r).unwrap(), alt);
        }
    }

    #[test]
    fn pair_counts_are_rotation_invariant(seq in prop::collection::vec(0usize..4, 1..10), shift in 0usize..10) {
        let n = seq.len();
        let rotated: Vec<usize> = (0..n).map(|t| seq[(t + shift) % n]).collect();
        let a = DiskVector::from_sequence(seq, 4).unwrap();
        let b = DiskVector::from_sequence(rotated, 4).unwrap();
        prop_assert_eq!(a.pair_counts(), b.pair_counts());
        prop_assert_eq!(a.pair_counts().iter().sum::<u32>() as usize, n);
    }

    #[test]
    fn finite_enumeration_matches_brute_force(
        n in 2u32..=5,
        exps in prop::collection::vec(1i64..5, 1..=3),
    ) {
        let order = FactorOrder::Finite(n);
        prop_assume!(exps.iter().all(|e| e % n as i64 != 0));
        let found = enumerate_irreducible(&exps, order, n as usize);
        prop_assert!(found.complete);
        let brute = brute_force_disks(&exps, order, n as usize, true);
        prop_assert_eq!(count_set(&found.disks), count_set(&brute));
        // every irreducible disk has length at most N, so a larger bound adds nothing
        let wide = enumerate_irreducible(&exps, order, 2 * n as usize);
        prop_assert_eq!(wide.disks, found.disks);
    }

    #[test]
    fn infinite_enumeration_matches_brute_force(
        exps in prop::collection::vec(prop_oneof![-2i64..=-1, 1i64..=2], 2..=3),
        k in 1usize..=7,
    ) {
        let found = enumerate_irreducible(&exps, FactorOrder::Infinite, k);
        let brute = brute_force_disks(&exps, FactorOrder::Infinite, k, true);
        prop_assert_eq!(count_set(&found.disks), count_set(&brute));
        for d in &found.disks {
            prop_assert!(is_disk_sequence(d.sequence(), &exps, FactorOrder::Infinite).unwrap());
        }
    }

    #[test]
    fn pricing_reaches_every_disk(
        n in 2u32..=4,
        exps in prop::collection::vec(1i64..4, 2..=3),
        seed in any::<u64>(),
    ) {
        let order = FactorOrder::Finite(n);
        let dim = exps.len();
        prop_assume!(dim * n as usize <= 9);
        prop_assume!(exps.iter().all(|e| e % n as i64 != 0));
        let all = brute_force_disks(&exps, order, dim * n as usize, false);
        let v = sample_stochastic(dim, seed);
        let priced = kappa_complete(&v, &exps, order, 0).unwrap().objective;
        let brute = kappa(&v, &all).unwrap().objective;
        prop_assert_eq!(priced, brute);
    }

    #[test]
    fn alternating_words_print_and_parse_back(
        w in prop_oneof![
            (2u32..=6).prop_flat_map(|n| alternating(FactorOrder::Finite(n), 5)),
            alternating(FactorOrder::Infinite, 5),
        ]
    ) {
        let back = AlternatingWord::parse(&w.to_string(), &w.signature()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn phi_properties(v in (2usize..=5).prop_flat_map(stochastic)) {
        let mut w = v.clone();
        for _ in 0..2 * v.dim() {
            w = w.phi();
            prop_assert!(w.is_doubly_stochastic());
        }
        prop_assert_eq!(w, v.clone());
        let mut a: Vec<Q> = v.entries().to_vec();
        let mut b: Vec<Q> = v.phi().entries().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn kappa_is_monotone_and_concave(
        (v, w) in (2usize..=3).prop_flat_map(|d| (stochastic(d), stochastic(d))),
        exps in prop::collection::vec(1i64..4, 3),
        bump in prop::collection::vec(0i64..3, 9),
        lambda in 0i64..=6,
    ) {
        let dim = v.dim();
        let order = FactorOrder::Finite(4);
        let disks = enumerate_irreducible(&exps[..dim], order, 4).disks;
        let kv = kappa(&v, &disks).unwrap().objective;
        let kw = kappa(&w, &disks).unwrap().objective;

        let bigger: Vec<Q> = v.entries().iter().zip(&bump).map(|(x, b)| x + q(*b, 5)).collect();
        let bigger = StochasticMatrix::from_entries_unchecked(dim, bigger).unwrap();
        prop_assert!(kappa(&bigger, &disks).unwrap().objective >= kv.clone());

        let l = q(lambda, 6);
        let mixed = v.mix(&l, &w).unwrap();
        let km = kappa(&mixed, &disks).unwrap().objective;
        prop_assert!(km >= l.clone() * kv + (Q::one() - l) * kw);
    }

    #[test]
    fn claim_bounds_kappa(
        v in (2usize..=4).prop_flat_map(stochastic),
        n in 2u32..=6,
        exps in prop::collection::vec(1i64..6, 4),
    ) {
        let dim = v.dim();
        let order = FactorOrder::Finite(n);
        let exps: Vec<i64> = exps[..dim].iter().map(|e| order.normalize(*e)).collect();
        prop_assume!(exps.iter().all(|&e| e != 0));
        let min_order = exps.iter().map(|&e| order.element_order(e)).min().unwrap();
        let k = kappa_complete(&v, &exps, order, 0).unwrap();
        prop_assert!(k.objective <= kappa_claim_bound(&v, min_order));
        let joint = kappa_claim_bound(&v, min_order) + kappa_claim_bound(&v.phi(), min_order);
        prop_assert!(joint <= Q::from_integer((dim as i64 - 1).into()) + min_order.reciprocal::<Q>() * q(2, 1));
    }

    #[test]
    fn scl_respects_the_gap(w in (2u32..=5).prop_flat_map(|n| alternating(FactorOrder::Finite(n), 3))) {
        let r = compute_scl::<Q>(&w, &SclOptions::default()).unwrap();
        prop_assert!(r.exact);
        prop_assert!(r.value >= refine_bound::<Q>(&w).unwrap());
        prop_assert!(verify_certificate(&r).is_valid());
    }

    #[test]
    fn free_scl_respects_the_gap(w in alternating(FactorOrder::Infinite, 3)) {
        let r = compute_scl::<Q>(&w, &SclOptions::default()).unwrap();
        prop_assert!(r.value >= q(1, 2));
        prop_assert!(verify_certificate(&r).is_valid());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scl_is_homogeneous(w in (2u32..=4).prop_flat_map(|n| alternating(FactorOrder::Finite(n), 2))) {
        let square = AlternatingWord::new(
            [w.exp_a(), w.exp_a()].concat(),
            [w.exp_b(), w.exp_b()].concat(),
            w.order_a(),
            w.order_b(),
        )
        .unwrap();
        let one = compute_scl::<Q>(&w, &SclOptions::default()).unwrap().value;
        let two = compute_scl::<Q>(&square, &SclOptions::default()).unwrap().value;
        prop_assert_eq!(two, one * q(2, 1));
    }
}

fn sample_stochastic(dim: usize, seed: u64) -> StochasticMatrix<Q> {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &bytes);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    stochastic(dim).new_tree(&mut runner).unwrap().current()
}

#[test]
fn powers_of_commutators() {
    let scl = |text: &str, orders: &str| {
        let sig = FactorSignature::parse(orders).unwrap();
        compute_scl::<Q>(
            &AlternatingWord::parse(text, &sig).unwrap(),
            &SclOptions::default(),
        )
        .unwrap()
        .value
    };
    assert_eq!(scl("abABabAB", "inf,inf"), q(1, 1));
    assert_eq!(scl("a^2b^3A^2B^3", "inf,inf"), q(1, 2));
    assert_eq!(
        scl("abAB", "inf,inf"),
        gap_for_order::<Q>(FactorOrder::Infinite)
    );
}
