//! Closed-form lower bounds: the torsion-aware gap `1/2 − 1/N`, its
//! multi-factor form, commutator length of products of powers, and the gap of
//! a free product.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::polytope::StochasticMatrix;
use crate::scalar::Scalar;
use crate::words::{
    cyclically_reduce, require_commutator, AlternatingWord, FactorOrder, FactorSignature,
    ReducedWord,
};

/// `1/2 − 1/N`, where `1/∞ = 0`.
pub fn gap_for_order<T: Scalar>(order: FactorOrder) -> T {
    T::ratio(1, 2) - order.reciprocal::<T>()
}

/// `1/2 − 1/N` for `N` the least order of any `a_i` or `b_i`; a lower bound for
/// scl of every alternating word in the commutator subgroup.
pub fn refine_bound<T: Scalar>(w: &AlternatingWord) -> Result<T> {
    require_commutator(w)?;
    Ok(gap_for_order(w.min_order()))
}

/// The gap bound for a word in a free product of any number of cyclic
/// factors. The factors the word avoids retract away, and the bound is driven
/// by the least order among the letters that remain.
pub fn multi_factor_bound<T: Scalar>(w: &ReducedWord, sig: &FactorSignature) -> Result<T> {
    if w.signature() != sig {
        return Err(Error::InvalidSignature(format!(
            "word is over ({}) but the query names ({sig})",
            w.signature()
        )));
    }
    let w = cyclically_reduce(w);
    let factors = w.factors();
    match factors.len() {
        0 => return Err(Error::DegenerateCase("the trivial word".into())),
        1 => return Err(Error::ConjugateIntoFactor(factors[0])),
        _ => {}
    }
    let mut sums = vec![0i64; sig.len()];
    for l in w.letters() {
        sums[l.factor] += l.exponent;
    }
    let residues: Vec<i64> = sums
        .iter()
        .enumerate()
        .map(|(f, &s)| sig.order(f).normalize(s))
        .collect();
    if residues.iter().any(|&r| r != 0) {
        return Err(Error::NotInCommutatorSubgroup { residues });
    }
    let order = w
        .letters()
        .iter()
        .map(|l| sig.order(l.factor).element_order(l.exponent))
        .min()
        .expect("word has letters");
    Ok(gap_for_order(order))
}

/// A product of `m = powers.len()` conjugates of `g^{n_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClBoundQuery {
    pub powers: Vec<i64>,
}

impl ClBoundQuery {
    pub fn new(powers: Vec<i64>) -> Result<Self> {
        if powers.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one power is needed".into(),
            ));
        }
        Ok(Self { powers })
    }

    pub fn m(&self) -> usize {
        self.powers.len()
    }

    pub fn power_sum(&self) -> i64 {
        self.powers.iter().sum()
    }
}

/// `scl(g)·|Σ n_i| − m/2 + 1`, a lower bound for the commutator length of the
/// product.
pub fn cl_lower_bound<T: Scalar>(q: &ClBoundQuery, scl: &T) -> Result<T> {
    if q.m() == 1 && q.powers[0] == 0 {
        return Err(Error::DegenerateCase(
            "a single zeroth power is the identity".into(),
        ));
    }
    if scl.is_neg() {
        return Err(Error::InvalidArgument(format!(
            "scl cannot be negative, got {scl}"
        )));
    }
    Ok(scl.clone() * T::from_int(q.power_sum().abs()) - T::ratio(q.m() as i64, 2) + T::one())
}

/// `Σ(n_i − 1) − ⌊(2/N)·Σ n_i⌋`, a lower bound for `2·cl − 2`.
pub fn cl_version_bound(q: &ClBoundQuery, order: FactorOrder) -> i64 {
    let excess: i64 = q.powers.iter().map(|n| n - 1).sum();
    let floor = match order {
        FactorOrder::Infinite => 0,
        FactorOrder::Finite(n) => Integer::div_floor(&(2 * q.power_sum()), &(n as i64)),
    };
    excess - floor
}

/// The gap of `A * B` when `A` and `B` have gap `C` and no torsion of order
/// below `N`: `min(C, 1/2 − 1/N)`.
pub fn product_gap<T: Scalar>(c: &T, order: FactorOrder) -> Result<T> {
    if !c.is_pos() {
        return Err(Error::InvalidArgument(format!(
            "gap must be positive, got {c}"
        )));
    }
    if let FactorOrder::Finite(n) = order {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "order must be at least 3, got {n}"
            )));
        }
    }
    Ok(T::min_of(c.clone(), gap_for_order(order)))
}

/// `(1/N)·Σ_{i≥j} v_ij + (1 − 1/N)·Σ_{i<j} v_ij`, an upper bound for κ on `v`
/// over a factor whose letters have order at least `N`.
pub fn kappa_claim_bound<T: Scalar>(v: &StochasticMatrix<T>, order: FactorOrder) -> T {
    let r = order.reciprocal::<T>();
    r.clone() * v.lower_mass() + (T::one() - r) * v.strictly_upper_mass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;
    use num_rational::BigRational;

    type Q = BigRational;

    fn alt(text: &str, orders: &str) -> AlternatingWord {
        AlternatingWord::parse(text, &FactorSignature::parse(orders).unwrap()).unwrap()
    }

    #[test]
    fn refine_examples() {
        assert_eq!(
            refine_bound::<Q>(&alt("abAB", "2,3")).unwrap(),
            Q::from_int(0)
        );
        assert_eq!(
            refine_bound::<Q>(&alt("abAB", "inf,inf")).unwrap(),
            Q::ratio(1, 2)
        );
        assert_eq!(
            refine_bound::<Q>(&alt("abAB", "4,6")).unwrap(),
            Q::ratio(1, 4)
        );
        // a^2 has order 2 in Z/4
        assert_eq!(
            refine_bound::<Q>(&alt("a^2ba^2B", "4,inf")).unwrap(),
            Q::from_int(0)
        );
        assert!(matches!(
            refine_bound::<Q>(&alt("ab", "inf,inf")),
            Err(Error::NotInCommutatorSubgroup { .. })
        ));
    }

    #[test]
    fn multi_factor_examples() {
        let sig = FactorSignature::free(3).unwrap();
        let w = parse_word("abcABC", &sig).unwrap();
        assert_eq!(multi_factor_bound::<Q>(&w, &sig).unwrap(), Q::ratio(1, 2));
        let w = parse_word("aaA", &sig).unwrap();
        assert_eq!(
            multi_factor_bound::<Q>(&w, &sig),
            Err(Error::ConjugateIntoFactor(0))
        );
        let w = parse_word("baBcAC", &sig).unwrap();
        assert!(multi_factor_bound::<Q>(&w, &sig).is_ok());

        let sig = FactorSignature::parse("3,inf,5").unwrap();
        let w = parse_word("abcABC", &sig).unwrap();
        assert_eq!(multi_factor_bound::<Q>(&w, &sig).unwrap(), Q::ratio(1, 6));
        let w = parse_word("abcbc", &sig).unwrap();
        assert!(matches!(
            multi_factor_bound::<Q>(&w, &sig),
            Err(Error::NotInCommutatorSubgroup { .. })
        ));
    }

    #[test]
    fn cl_examples() {
        let half = Q::ratio(1, 2);
        let q = |p: Vec<i64>| ClBoundQuery::new(p).unwrap();
        assert_eq!(cl_lower_bound(&q(vec![1]), &half).unwrap(), Q::from_int(1));
        for n in 1..8 {
            assert_eq!(
                cl_lower_bound(&q(vec![n]), &half).unwrap(),
                Q::ratio(n + 1, 2)
            );
        }
        assert_eq!(
            cl_lower_bound(&q(vec![1, -1]), &half).unwrap(),
            Q::from_int(0)
        );
        assert!(matches!(
            cl_lower_bound(&q(vec![0]), &half),
            Err(Error::DegenerateCase(_))
        ));
        assert!(ClBoundQuery::new(vec![]).is_err());

        assert_eq!(cl_version_bound(&q(vec![5]), FactorOrder::Infinite), 4);
        assert_eq!(cl_version_bound(&q(vec![1]), FactorOrder::Finite(2)), -1);
        assert_eq!(cl_version_bound(&q(vec![2, 2]), FactorOrder::Finite(3)), 0);
    }

    #[test]
    fn product_gap_examples() {
        let f = |c: Q, n| product_gap(&c, FactorOrder::Finite(n)).unwrap();
        assert_eq!(f(Q::from_int(1), 4), Q::ratio(1, 4));
        assert_eq!(f(Q::ratio(1, 24), 3), Q::ratio(1, 24));
        assert_eq!(f(Q::ratio(1, 6), 3), Q::ratio(1, 6));
        assert!(product_gap(&Q::from_int(0), FactorOrder::Finite(4)).is_err());
        assert!(product_gap(&Q::from_int(1), FactorOrder::Finite(2)).is_err());
    }

    #[test]
    fn claim_bound_examples() {
        let id = StochasticMatrix::<Q>::identity(2);
        assert_eq!(
            kappa_claim_bound(&id, FactorOrder::Finite(2)),
            Q::from_int(1)
        );
        for l in 1..5 {
            let id = StochasticMatrix::<Q>::identity(l);
            assert_eq!(
                kappa_claim_bound(&id, FactorOrder::Infinite),
                Q::from_int(0)
            );
        }
        let anti = StochasticMatrix::<Q>::permutation(&[1, 0]);
        assert_eq!(
            kappa_claim_bound(&anti, FactorOrder::Infinite),
            Q::from_int(1)
        );
    }
}
