//! Words in free products of cyclic groups.
//!
//! Generators are single letters: factor `k` of a signature is generated by the
//! `k`-th lowercase letter (`a`, `b`, `c`, ...); the uppercase letter is its
//! inverse. Tokens may carry an integer exponent, as in `a^3` or `B^-2`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Order of a cyclic factor group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorOrder {
    Finite(u32),
    Infinite,
}

impl FactorOrder {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        match text {
            "inf" | "Inf" | "INF" | "∞" | "infinity" => Ok(FactorOrder::Infinite),
            _ => {
                let n: u32 = text
                    .parse()
                    .map_err(|_| Error::InvalidSignature(format!("'{text}' is not an order")))?;
                if n < 2 {
                    return Err(Error::InvalidSignature(format!(
                        "finite order must be at least 2, got {n}"
                    )));
                }
                Ok(FactorOrder::Finite(n))
            }
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, FactorOrder::Finite(_))
    }

    /// Reduces an exponent into `0..N` for finite order; identity otherwise.
    pub fn normalize(self, exponent: i64) -> i64 {
        match self {
            FactorOrder::Finite(n) => exponent.rem_euclid(n as i64),
            FactorOrder::Infinite => exponent,
        }
    }

    /// Order of the element `x^exponent` where `x` generates this factor.
    pub fn element_order(self, exponent: i64) -> FactorOrder {
        match self {
            FactorOrder::Finite(n) => {
                let e = exponent.rem_euclid(n as i64);
                FactorOrder::Finite((n as i64 / e.gcd(&(n as i64))) as u32)
            }
            FactorOrder::Infinite => FactorOrder::Infinite,
        }
    }

    /// `1/N`, with `1/∞ = 0`.
    pub fn reciprocal<T: Scalar>(self) -> T {
        match self {
            FactorOrder::Finite(n) => T::ratio(1, n as i64),
            FactorOrder::Infinite => T::zero(),
        }
    }
}

impl fmt::Display for FactorOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorOrder::Finite(n) => write!(f, "{n}"),
            FactorOrder::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorSignature {
    orders: Vec<FactorOrder>,
}

impl FactorSignature {
    pub fn new(orders: Vec<FactorOrder>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidSignature("no factors".into()));
        }
        if orders.len() > 26 {
            return Err(Error::InvalidSignature("at most 26 factors".into()));
        }
        if let Some(bad) = orders
            .iter()
            .find(|o| matches!(o, FactorOrder::Finite(n) if *n < 2))
        {
            return Err(Error::InvalidSignature(format!("order {bad} below 2")));
        }
        Ok(Self { orders })
    }

    /// Free group of the given rank.
    pub fn free(rank: usize) -> Result<Self> {
        Self::new(vec![FactorOrder::Infinite; rank])
    }

    /// Parses a comma-separated order list such as `"inf,3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let orders = text
            .split(',')
            .map(FactorOrder::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[FactorOrder] {
        &self.orders
    }

    pub fn order(&self, factor: usize) -> FactorOrder {
        self.orders[factor]
    }

    pub fn generator(factor: usize) -> char {
        (b'a' + factor as u8) as char
    }

    pub fn factor_of(&self, letter: char) -> Result<usize> {
        let lower = letter.to_ascii_lowercase();
        if !lower.is_ascii_lowercase() {
            return Err(Error::UnknownGenerator(letter));
        }
        let factor = (lower as u8 - b'a') as usize;
        if factor >= self.orders.len() {
            return Err(Error::UnknownGenerator(letter));
        }
        Ok(factor)
    }
}

impl fmt::Display for FactorSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, order) in self.orders.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{order}")?;
        }
        Ok(())
    }
}

/// A power of one factor's generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub factor: usize,
    pub exponent: i64,
}

impl Letter {
    pub fn new(factor: usize, exponent: i64) -> Self {
        Self { factor, exponent }
    }

    pub fn inverse(self) -> Self {
        Self::new(self.factor, -self.exponent)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = FactorSignature::generator(self.factor);
        match self.exponent {
            1 => write!(f, "{g}"),
            -1 => write!(f, "{}", g.to_ascii_uppercase()),
            e if e < 0 => write!(f, "{}^{}", g.to_ascii_uppercase(), -e),
            e => write!(f, "{g}^{e}"),
        }
    }
}

/// Tokenizes `text` without any reduction. Exponents keep their written sign,
/// so `A^2` becomes exponent `-2`.
pub fn parse_tokens(text: &str, sig: &FactorSignature) -> Result<Vec<Letter>> {
    let bytes = text.as_bytes();
    let mut letters = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && (bytes[*i] as char).is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() {
            break;
        }
        let c = bytes[i] as char;
        if !c.is_ascii_alphabetic() {
            return Err(Error::Syntax {
                position: i,
                message: format!("expected a generator letter, found '{c}'"),
            });
        }
        let factor = sig.factor_of(c)?;
        let sign = if c.is_ascii_uppercase() { -1 } else { 1 };
        i += 1;
        skip_ws(&mut i);
        let mut exponent = 1i64;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            skip_ws(&mut i);
            let mut negative = false;
            if i < bytes.len() && bytes[i] == b'-' {
                negative = true;
                i += 1;
                skip_ws(&mut i);
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(Error::Syntax {
                    position: start,
                    message: "expected digits after '^'".into(),
                });
            }
            exponent = text[start..i].parse().map_err(|_| Error::Syntax {
                position: start,
                message: "exponent out of range".into(),
            })?;
            if negative {
                exponent = -exponent;
            }
        }
        letters.push(Letter::new(factor, sign * exponent));
    }
    Ok(letters)
}

/// A freely reduced word: adjacent letters lie in distinct factors and every
/// exponent is nontrivial (in `1..N` for finite order `N`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    letters: Vec<Letter>,
    cyclic: bool,
    signature: FactorSignature,
}

impl ReducedWord {
    /// Reduces an arbitrary letter sequence.
    pub fn from_letters(letters: &[Letter], signature: &FactorSignature) -> Result<Self> {
        let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
        for letter in letters {
            if letter.factor >= signature.len() {
                return Err(Error::UnknownGenerator(FactorSignature::generator(
                    letter.factor,
                )));
            }
            let order = signature.order(letter.factor);
            match stack.last_mut() {
                Some(top) if top.factor == letter.factor => {
                    top.exponent = order.normalize(top.exponent + letter.exponent);
                    if top.exponent == 0 {
                        stack.pop();
                    }
                }
                _ => {
                    let e = order.normalize(letter.exponent);
                    if e != 0 {
                        stack.push(Letter::new(letter.factor, e));
                    }
                }
            }
        }
        let mut word = Self {
            letters: stack,
            cyclic: false,
            signature: signature.clone(),
        };
        word.cyclic = word.is_cyclically_reduced();
        Ok(word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn signature(&self) -> &FactorSignature {
        &self.signature
    }

    /// True when the first and last letters lie in distinct factors.
    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(first), Some(last)) => self.letters.len() == 1 || first.factor != last.factor,
            _ => true,
        }
    }

    /// Distinct factors used, in increasing order.
    pub fn factors(&self) -> Vec<usize> {
        let mut used: Vec<usize> = self.letters.iter().map(|l| l.factor).collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    /// Expands every letter into unit steps (`a^3` becomes `a a a`), using the
    /// shortest signed representative for finite orders. This is the letter
    /// sequence whose length is the word length `|g|` in a free group.
    pub fn unit_letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for letter in &self.letters {
            let e = match self.signature.order(letter.factor) {
                FactorOrder::Finite(n) if letter.exponent > n as i64 / 2 => {
                    letter.exponent - n as i64
                }
                _ => letter.exponent,
            };
            let step = Letter::new(letter.factor, e.signum());
            out.extend(std::iter::repeat_n(step, e.unsigned_abs() as usize));
        }
        out
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.letters {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Parses and freely reduces a word.
pub fn parse_word(text: &str, sig: &FactorSignature) -> Result<ReducedWord> {
    let tokens = parse_tokens(text, sig)?;
    ReducedWord::from_letters(&tokens, sig)
}

/// Conjugates `w` until its first and last letters lie in distinct factors.
pub fn cyclically_reduce(w: &ReducedWord) -> ReducedWord {
    let relinearized = ReducedWord::from_letters(&w.letters, &w.signature)
        .expect("letters of a reduced word belong to its signature");
    let mut letters = std::collections::VecDeque::from(relinearized.letters);
    while letters.len() >= 2
        && letters.front().map(|l| l.factor) == letters.back().map(|l| l.factor)
    {
        let last = letters.pop_back().unwrap();
        let order = w.signature.order(last.factor);
        let first = letters.front_mut().unwrap();
        first.exponent = order.normalize(first.exponent + last.exponent);
        if first.exponent == 0 {
            letters.pop_front();
        }
    }
    ReducedWord {
        letters: letters.into(),
        cyclic: true,
        signature: w.signature.clone(),
    }
}

/// `g = a_1 b_1 ... a_L b_L` in `A * B`, stored as its two exponent sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlternatingWord {
    exp_a: Vec<i64>,
    exp_b: Vec<i64>,
    order_a: FactorOrder,
    order_b: FactorOrder,
    generators: (usize, usize),
}

impl AlternatingWord {
    /// Builds `a^{exp_a[0]} b^{exp_b[0]} ...` over factors `a`, `b`.
    /// Exponents are normalized, any that vanish are rejected, and the pairs
    /// are rotated to a canonical start, so the word printed back parses to
    /// the same value.
    pub fn new(
        exp_a: Vec<i64>,
        exp_b: Vec<i64>,
        order_a: FactorOrder,
        order_b: FactorOrder,
    ) -> Result<Self> {
        Self::with_generators(exp_a, exp_b, order_a, order_b, (0, 1))
    }

    pub fn with_generators(
        exp_a: Vec<i64>,
        exp_b: Vec<i64>,
        order_a: FactorOrder,
        order_b: FactorOrder,
        generators: (usize, usize),
    ) -> Result<Self> {
        if exp_a.is_empty() {
            return Err(Error::NotAlternating);
        }
        if exp_a.len() != exp_b.len() {
            return Err(Error::OddSyllables);
        }
        let exp_a: Vec<i64> = exp_a.into_iter().map(|e| order_a.normalize(e)).collect();
        let exp_b: Vec<i64> = exp_b.into_iter().map(|e| order_b.normalize(e)).collect();
        if exp_a.iter().chain(&exp_b).any(|&e| e == 0) {
            return Err(Error::InvalidArgument(
                "syllable exponent is trivial in its factor".into(),
            ));
        }
        let (exp_a, exp_b) = canonical_rotation(exp_a, exp_b);
        Ok(Self {
            exp_a,
            exp_b,
            order_a,
            order_b,
            generators,
        })
    }

    /// Parses, reduces, cyclically reduces, and decomposes `text`.
    pub fn parse(text: &str, sig: &FactorSignature) -> Result<Self> {
        syllable_decomposition(&cyclically_reduce(&parse_word(text, sig)?))
    }

    /// Number of `(a_i, b_i)` syllable pairs.
    pub fn len(&self) -> usize {
        self.exp_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exp_a.is_empty()
    }

    pub fn exp_a(&self) -> &[i64] {
        &self.exp_a
    }

    pub fn exp_b(&self) -> &[i64] {
        &self.exp_b
    }

    pub fn order_a(&self) -> FactorOrder {
        self.order_a
    }

    pub fn order_b(&self) -> FactorOrder {
        self.order_b
    }

    pub fn generators(&self) -> (usize, usize) {
        self.generators
    }

    /// Minimal order of the letters of factor A.
    pub fn min_order_a(&self) -> FactorOrder {
        min_element_order(self.order_a, &self.exp_a)
    }

    pub fn min_order_b(&self) -> FactorOrder {
        min_element_order(self.order_b, &self.exp_b)
    }

    /// Minimal order over all `a_i` and `b_i`.
    pub fn min_order(&self) -> FactorOrder {
        self.min_order_a().min(self.min_order_b())
    }

    /// The signature over both generators, as used for printing and parsing.
    pub fn signature(&self) -> FactorSignature {
        let size = self.generators.0.max(self.generators.1) + 1;
        let mut orders = vec![FactorOrder::Infinite; size];
        orders[self.generators.0] = self.order_a;
        orders[self.generators.1] = self.order_b;
        FactorSignature::new(orders).expect("orders validated at construction")
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.exp_a
            .iter()
            .zip(&self.exp_b)
            .flat_map(|(&a, &b)| {
                [
                    Letter::new(self.generators.0, a),
                    Letter::new(self.generators.1, b),
                ]
            })
            .collect()
    }

    pub fn to_reduced_word(&self) -> ReducedWord {
        ReducedWord {
            letters: self.letters(),
            cyclic: true,
            signature: self.signature(),
        }
    }
}

impl fmt::Display for AlternatingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in self.letters() {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

fn min_element_order(order: FactorOrder, exponents: &[i64]) -> FactorOrder {
    exponents
        .iter()
        .map(|&e| order.element_order(e))
        .min()
        .unwrap_or(order)
}

// Positive exponents sort before negative ones, each by magnitude.
fn exponent_key(e: i64) -> (bool, u64) {
    (e < 0, e.unsigned_abs())
}

/// Rotates the syllable pairs to the least starting point under
/// [`exponent_key`], so conjugate words get identical exponent lists.
fn canonical_rotation(exp_a: Vec<i64>, exp_b: Vec<i64>) -> (Vec<i64>, Vec<i64>) {
    let l = exp_a.len();
    let key = |shift: usize| -> Vec<((bool, u64), (bool, u64))> {
        (0..l)
            .map(|k| {
                let i = (shift + k) % l;
                (exponent_key(exp_a[i]), exponent_key(exp_b[i]))
            })
            .collect()
    };
    let best = (0..l).min_by_key(|&s| key(s)).unwrap_or(0);
    let rotate = |e: &[i64]| (0..l).map(|k| e[(best + k) % l]).collect();
    (rotate(&exp_a), rotate(&exp_b))
}

/// Splits a cyclically reduced two-factor word into `a_1 b_1 ... a_L b_L`.
pub fn syllable_decomposition(w: &ReducedWord) -> Result<AlternatingWord> {
    let w = if w.is_cyclic() {
        w.clone()
    } else {
        cyclically_reduce(w)
    };
    let factors = w.factors();
    match factors.len() {
        0 | 1 => return Err(Error::NotAlternating),
        2 => {}
        n => return Err(Error::WrongFactorCount(n)),
    }
    let letters = w.letters();
    if letters.len() % 2 != 0 {
        return Err(Error::OddSyllables);
    }
    let (fa, fb) = (factors[0], factors[1]);
    let start = usize::from(letters[0].factor != fa);
    let rotated: Vec<Letter> = letters[start..]
        .iter()
        .chain(&letters[..start])
        .copied()
        .collect();
    let exp_a = rotated.iter().step_by(2).map(|l| l.exponent).collect();
    let exp_b = rotated
        .iter()
        .skip(1)
        .step_by(2)
        .map(|l| l.exponent)
        .collect();
    let sig = w.signature();
    AlternatingWord::with_generators(exp_a, exp_b, sig.order(fa), sig.order(fb), (fa, fb))
}

/// Per-factor exponent sums, reduced modulo the factor order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub residue_a: i64,
    pub residue_b: i64,
}

impl Abelianization {
    /// For cyclic factors this is exactly membership in `[G, G]`.
    pub fn in_commutator_subgroup(&self) -> bool {
        self.residue_a == 0 && self.residue_b == 0
    }
}

pub fn abelianization_check(w: &AlternatingWord) -> Abelianization {
    Abelianization {
        residue_a: w.order_a.normalize(w.exp_a.iter().sum()),
        residue_b: w.order_b.normalize(w.exp_b.iter().sum()),
    }
}

/// Returns an error unless `w` lies in the commutator subgroup.
pub fn require_commutator(w: &AlternatingWord) -> Result<()> {
    let ab = abelianization_check(w);
    if ab.in_commutator_subgroup() {
        Ok(())
    } else {
        Err(Error::NotInCommutatorSubgroup {
            residues: vec![ab.residue_a, ab.residue_b],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(text: &str) -> FactorSignature {
        FactorSignature::parse(text).unwrap()
    }

    fn letters(w: &ReducedWord) -> Vec<(usize, i64)> {
        w.letters().iter().map(|l| (l.factor, l.exponent)).collect()
    }

    #[test]
    fn parses_commutator() {
        let w = parse_word("abAB", &sig("inf,inf")).unwrap();
        assert_eq!(letters(&w), vec![(0, 1), (1, 1), (0, -1), (1, -1)]);
        assert!(w.is_cyclic());
    }

    #[test]
    fn inverse_pair_cancels() {
        assert!(parse_word("aA", &sig("inf,inf")).unwrap().is_empty());
    }

    #[test]
    fn torsion_cancels() {
        assert!(parse_word("aa", &sig("2,inf")).unwrap().is_empty());
    }

    #[test]
    fn exponents_and_whitespace() {
        let s = sig("inf,inf");
        let w = parse_word(" a^3 b A ^ -2 B^2 ", &s).unwrap();
        assert_eq!(letters(&w), vec![(0, 3), (1, 1), (0, 2), (1, -2)]);
        assert_eq!(w.to_string(), "a^3ba^2B^2");
        let cascade = parse_word("abBA b", &s).unwrap();
        assert_eq!(letters(&cascade), vec![(1, 1)]);
    }

    #[test]
    fn syntax_errors() {
        let s = sig("inf,inf");
        assert!(matches!(parse_word("a^", &s), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("a1", &s), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("a^-", &s), Err(Error::Syntax { .. })));
        assert_eq!(parse_word("abc", &s), Err(Error::UnknownGenerator('c')));
        assert_eq!(parse_word("aC", &s), Err(Error::UnknownGenerator('C')));
    }

    #[test]
    fn finite_exponents_normalize() {
        let w = parse_word("A b^-1", &sig("3,4")).unwrap();
        assert_eq!(letters(&w), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn cyclic_reduction_examples() {
        let s = sig("inf,inf");
        let w = cyclically_reduce(&parse_word("abA", &s).unwrap());
        assert_eq!(letters(&w), vec![(1, 1)]);

        let w = parse_word("abaB", &s).unwrap();
        assert_eq!(cyclically_reduce(&w), w);

        let raw = [
            Letter::new(0, 1),
            Letter::new(1, 1),
            Letter::new(1, -1),
            Letter::new(0, 1),
        ];
        let s3 = sig("3,inf");
        let w = ReducedWord::from_letters(&raw, &s3).unwrap();
        assert_eq!(letters(&cyclically_reduce(&w)), vec![(0, 2)]);
    }

    #[test]
    fn cyclic_reduction_merges_ends() {
        let s = sig("inf,inf");
        let w = parse_word("a^2 b a", &s).unwrap();
        assert!(!w.is_cyclic());
        let c = cyclically_reduce(&w);
        assert_eq!(letters(&c), vec![(0, 3), (1, 1)]);
        assert!(
            cyclically_reduce(&parse_word("abA^2", &s).unwrap())
                .letters()
                .len()
                == 2
        );
    }

    #[test]
    fn decomposes_commutator() {
        let w = AlternatingWord::parse("abAB", &sig("inf,inf")).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.exp_a(), &[1, -1]);
        assert_eq!(w.exp_b(), &[1, -1]);
    }

    #[test]
    fn decomposes_a_long_word() {
        let w = AlternatingWord::parse("abaBaBAAAb", &sig("inf,inf")).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.exp_a(), &[1, 1, 1, -3]);
        assert_eq!(w.exp_b(), &[1, -1, -1, 1]);
    }

    #[test]
    fn canonical_rotation_is_conjugation_invariant() {
        let s = sig("inf,inf");
        let a = AlternatingWord::parse("abaBaBAAAb", &s).unwrap();
        let b = AlternatingWord::parse("BAAAbabaBa", &s).unwrap();
        let c = AlternatingWord::parse("baBaBAAAba", &s).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn decomposition_errors() {
        let s = sig("inf,inf");
        assert_eq!(AlternatingWord::parse("a", &s), Err(Error::NotAlternating));
        assert_eq!(AlternatingWord::parse("aA", &s), Err(Error::NotAlternating));
        assert_eq!(
            AlternatingWord::parse("abc", &sig("inf,inf,inf")),
            Err(Error::WrongFactorCount(3))
        );
    }

    #[test]
    fn abelianization_examples() {
        let ab = abelianization_check(&AlternatingWord::parse("abAB", &sig("inf,inf")).unwrap());
        assert_eq!((ab.residue_a, ab.residue_b), (0, 0));
        assert!(ab.in_commutator_subgroup());

        let ab = abelianization_check(&AlternatingWord::parse("ab", &sig("2,3")).unwrap());
        assert_eq!((ab.residue_a, ab.residue_b), (1, 1));
        assert!(!ab.in_commutator_subgroup());

        let w = AlternatingWord::parse("abaBaBAAAb", &sig("inf,inf")).unwrap();
        assert!(abelianization_check(&w).in_commutator_subgroup());
    }

    #[test]
    fn element_orders() {
        assert_eq!(
            FactorOrder::Finite(4).element_order(2),
            FactorOrder::Finite(2)
        );
        assert_eq!(
            FactorOrder::Finite(6).element_order(-1),
            FactorOrder::Finite(6)
        );
        let w = AlternatingWord::new(
            vec![1, -1],
            vec![2, 4],
            FactorOrder::Finite(4),
            FactorOrder::Finite(6),
        )
        .unwrap();
        assert_eq!(w.min_order_a(), FactorOrder::Finite(4));
        assert_eq!(w.min_order_b(), FactorOrder::Finite(3));
        assert_eq!(w.min_order(), FactorOrder::Finite(3));
    }

    #[test]
    fn order_parsing() {
        assert_eq!(FactorOrder::parse("inf").unwrap(), FactorOrder::Infinite);
        assert_eq!(FactorOrder::parse(" 5 ").unwrap(), FactorOrder::Finite(5));
        assert!(FactorOrder::parse("1").is_err());
        assert!(FactorOrder::parse("x").is_err());
        assert_eq!(sig("inf,3").to_string(), "inf,3");
    }

    #[test]
    fn unit_letter_expansion() {
        let w = parse_word("abaBaBAAAb", &sig("inf,inf")).unwrap();
        assert_eq!(w.len(), 8);
        assert_eq!(w.unit_letters().len(), 10);
    }
}
