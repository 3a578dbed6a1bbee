//! Coefficient rings for path generating series.
//!
//! Three instances are provided: arbitrary-precision integers ([`BigInt`])
//! for exact counting, `f64` for weighted sums, and [`WordSum`] — formal
//! integer combinations of arc-label words, whose product is concatenation.
//! Multiplication is never assumed commutative; the word ring relies on it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring `{0}` does not support exact integer division")]
    DivisionUnsupported(&'static str),
    #[error("element is not divisible by {0}")]
    NotDivisible(u64),
}

/// Element of an associative unital ring with an integer action.
///
/// `mul` is order-sensitive: implementations must compute `self * rhs`
/// left-to-right. Exact division by a positive integer is an optional
/// capability advertised through [`RingElement::SUPPORTS_EXACT_DIV`].
pub trait RingElement: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const RING_NAME: &'static str;
    const SUPPORTS_EXACT_DIV: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Element times a (signed) big integer.
    fn scale(&self, k: &BigInt) -> Self;
    /// Exact division by a positive integer, checked where the ring allows it.
    fn div_exact(&self, k: u64) -> Result<Self, RingError>;

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn sub_assign(&mut self, rhs: &Self) {
        let neg = rhs.neg();
        self.add_assign(&neg);
    }

    /// Zero test used on quantities that cancel by construction.
    ///
    /// Exact rings test exact equality; the float ring tolerates the
    /// rounding residue left behind by catastrophic cancellation.
    fn cancels_to_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Ring elements that can serve as arc weights of a parsed graph.
pub trait EdgeWeight: RingElement {
    /// Weight of the arc `src -> dst` given the optional third token of an
    /// edge-list line.
    ///
    /// Numeric rings ignore the endpoints: a missing token means ring one.
    /// The word ring attaches the arc's own label; a token, when present,
    /// is an integer coefficient scaling that label.
    fn arc_weight(src: usize, dst: usize, token: Option<&str>) -> Result<Self, String>;
}

impl RingElement for BigInt {
    const RING_NAME: &'static str = "bigint";
    const SUPPORTS_EXACT_DIV: bool = true;

    fn zero() -> Self {
        BigInt::from(0)
    }

    fn one() -> Self {
        BigInt::from(1)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn scale(&self, k: &BigInt) -> Self {
        self * k
    }

    fn div_exact(&self, k: u64) -> Result<Self, RingError> {
        let d = BigInt::from(k);
        let (q, r) = num_integer::Integer::div_rem(self, &d);
        if !Zero::is_zero(&r) {
            return Err(RingError::NotDivisible(k));
        }
        Ok(q)
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl EdgeWeight for BigInt {
    fn arc_weight(_src: usize, _dst: usize, token: Option<&str>) -> Result<Self, String> {
        match token {
            None => Ok(BigInt::from(1)),
            Some(t) => t
                .parse::<BigInt>()
                .map_err(|_| format!("`{t}` is not a decimal integer")),
        }
    }
}

impl RingElement for f64 {
    const RING_NAME: &'static str = "float";
    const SUPPORTS_EXACT_DIV: bool = true;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn scale(&self, k: &BigInt) -> Self {
        self * k.to_f64().unwrap_or(f64::NAN)
    }

    fn div_exact(&self, k: u64) -> Result<Self, RingError> {
        Ok(self / k as f64)
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn cancels_to_zero(&self) -> bool {
        self.abs() <= 1e-9
    }
}

impl EdgeWeight for f64 {
    fn arc_weight(_src: usize, _dst: usize, token: Option<&str>) -> Result<Self, String> {
        match token {
            None => Ok(1.0),
            Some(t) => match t.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("`{t}` is not a finite decimal number")),
            },
        }
    }
}

/// An arc label: the ordered endpoint pair of the arc it names.
pub type Letter = (u32, u32);

/// A word over the arc alphabet; path monomials are contiguous words.
pub type Word = Vec<Letter>;

/// Finite formal sum of words with big-integer coefficients.
///
/// Canonical form: words keyed in sorted order, zero coefficients absent.
/// The product concatenates words and is therefore non-commutative; the
/// empty word is the multiplicative unit. Exact integer division is not
/// supported — rotated cycle words stay distinct and cannot be merged.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WordSum {
    terms: BTreeMap<Word, BigInt>,
}

impl WordSum {
    pub fn letter(src: usize, dst: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(src as u32, dst as u32)], BigInt::from(1));
        WordSum { terms }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    /// Sum of all coefficients; with unit arc labels this is the number of
    /// paths the element aggregates.
    pub fn coefficient_total(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn insert_term(&mut self, word: Word, coeff: BigInt) {
        if Zero::is_zero(&coeff) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }
}

/// Renders a contiguous word as its vertex itinerary, e.g. `0>1>2`.
pub fn render_word(word: &Word) -> String {
    if word.is_empty() {
        return "<empty>".to_string();
    }
    let mut out = String::new();
    out.push_str(&word[0].0.to_string());
    let mut prev_dst = word[0].0;
    for &(src, dst) in word {
        if src != prev_dst {
            // Not a contiguous path product; spell the break out.
            out.push('|');
            out.push_str(&src.to_string());
        }
        out.push('>');
        out.push_str(&dst.to_string());
        prev_dst = dst;
    }
    out
}

impl fmt::Debug for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (word, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*{}", coeff, render_word(word))?;
        }
        Ok(())
    }
}

impl RingElement for WordSum {
    const RING_NAME: &'static str = "word";
    const SUPPORTS_EXACT_DIV: bool = false;

    fn zero() -> Self {
        WordSum::default()
    }

    fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), BigInt::from(1));
        WordSum { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = WordSum::default();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut word = Word::with_capacity(wa.len() + wb.len());
                word.extend_from_slice(wa);
                word.extend_from_slice(wb);
                out.insert_term(word, ca * cb);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        WordSum {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    fn scale(&self, k: &BigInt) -> Self {
        if Zero::is_zero(k) {
            return WordSum::default();
        }
        WordSum {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    fn div_exact(&self, _k: u64) -> Result<Self, RingError> {
        Err(RingError::DivisionUnsupported(Self::RING_NAME))
    }

    fn add_assign(&mut self, rhs: &Self) {
        for (word, coeff) in &rhs.terms {
            self.insert_term(word.clone(), coeff.clone());
        }
    }
}

impl EdgeWeight for WordSum {
    fn arc_weight(src: usize, dst: usize, token: Option<&str>) -> Result<Self, String> {
        let letter = WordSum::letter(src, dst);
        match token {
            None => Ok(letter),
            Some(t) => {
                let k = t
                    .parse::<BigInt>()
                    .map_err(|_| format!("`{t}` is not a decimal integer coefficient"))?;
                Ok(letter.scale(&k))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_bigint(rng: &mut StdRng) -> BigInt {
        BigInt::from(rng.gen_range(-50i64..=50))
    }

    fn random_float(rng: &mut StdRng) -> f64 {
        rng.gen_range(-4i32..=4) as f64 * 0.5
    }

    fn random_word_sum(rng: &mut StdRng) -> WordSum {
        let mut acc = WordSum::zero();
        for _ in 0..rng.gen_range(0..4) {
            let len = rng.gen_range(0..3);
            let word: Word = (0..len)
                .map(|_| (rng.gen_range(0..3u32), rng.gen_range(0..3u32)))
                .collect();
            acc.add_assign(&WordSum { terms: [(word, BigInt::from(rng.gen_range(-3i64..=3)))].into_iter().filter(|(_, c)| !Zero::is_zero(c)).collect() });
        }
        acc
    }

    fn check_ring_laws<R: RingElement>(samples: &[R], exact: bool) {
        for a in samples {
            assert_eq!(a.add(&R::zero()), *a);
            assert_eq!(a.mul(&R::one()), *a);
            assert_eq!(R::one().mul(a), *a);
            assert!(a.add(&a.neg()).is_zero());
            assert_eq!(a.scale(&BigInt::from(3)), a.add(a).add(a));
        }
        for a in samples {
            for b in samples {
                assert_eq!(a.add(b), b.add(a));
                for c in samples {
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                    if exact {
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                        assert_eq!(b.add(c).mul(a), b.mul(a).add(&c.mul(a)));
                    }
                }
            }
        }
    }

    #[test]
    fn bigint_ring_laws() {
        let mut rng = StdRng::seed_from_u64(1);
        let samples: Vec<BigInt> = (0..8).map(|_| random_bigint(&mut rng)).collect();
        check_ring_laws(&samples, true);
    }

    #[test]
    fn float_ring_laws() {
        let mut rng = StdRng::seed_from_u64(2);
        // Halved small integers keep float arithmetic exact, so the full laws apply.
        let samples: Vec<f64> = (0..8).map(|_| random_float(&mut rng)).collect();
        check_ring_laws(&samples, true);
    }

    #[test]
    fn word_ring_laws() {
        let mut rng = StdRng::seed_from_u64(3);
        let samples: Vec<WordSum> = (0..6).map(|_| random_word_sum(&mut rng)).collect();
        check_ring_laws(&samples, true);
    }

    #[test]
    fn word_product_concatenates_and_is_noncommutative() {
        let a = WordSum::letter(0, 1);
        let b = WordSum::letter(1, 2);
        let ab = a.mul(&b);
        assert_eq!(ab.term_count(), 1);
        let (word, coeff) = ab.terms().next().unwrap();
        assert_eq!(word, &vec![(0, 1), (1, 2)]);
        assert_eq!(coeff, &BigInt::from(1));
        assert_ne!(ab, b.mul(&a));
    }

    #[test]
    fn word_cancellation_normalizes() {
        let a = WordSum::letter(0, 1);
        let diff = a.add(&a.neg());
        assert!(diff.is_zero());
        assert_eq!(diff.term_count(), 0);
    }

    #[test]
    fn bigint_exact_division() {
        let six = BigInt::from(6);
        assert_eq!(six.div_exact(3).unwrap(), BigInt::from(2));
        assert_eq!(six.div_exact(4), Err(RingError::NotDivisible(4)));
        assert!(BigInt::SUPPORTS_EXACT_DIV);
        assert!(!WordSum::SUPPORTS_EXACT_DIV);
        assert!(WordSum::one().div_exact(2).is_err());
    }

    #[test]
    fn render_word_itineraries() {
        assert_eq!(render_word(&vec![(0, 1), (1, 2)]), "0>1>2");
        assert_eq!(render_word(&vec![(0, 1), (1, 0)]), "0>1>0");
        assert_eq!(render_word(&vec![(2, 2)]), "2>2");
    }

    #[test]
    fn arc_weight_parsing() {
        assert_eq!(BigInt::arc_weight(0, 1, None).unwrap(), BigInt::from(1));
        assert_eq!(BigInt::arc_weight(0, 1, Some("-7")).unwrap(), BigInt::from(-7));
        assert!(BigInt::arc_weight(0, 1, Some("1.5")).is_err());
        assert_eq!(f64::arc_weight(0, 1, Some("0.25")).unwrap(), 0.25);
        assert!(f64::arc_weight(0, 1, Some("nan")).is_err());
        assert_eq!(WordSum::arc_weight(0, 1, None).unwrap(), WordSum::letter(0, 1));
        assert_eq!(
            WordSum::arc_weight(0, 1, Some("2")).unwrap(),
            WordSum::letter(0, 1).scale(&BigInt::from(2))
        );
    }
}
