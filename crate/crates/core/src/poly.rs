//! Truncated polynomial arithmetic in the formal variable `z`, and matrix
//! algebra over such polynomials restricted to a vertex subset.
//!
//! Everything is capped at a fixed degree `L`: operations neither produce
//! nor inspect higher degrees. `(I - zW)^m` is expanded by the binomial
//! theorem with big-integer coefficients instead of repeated multiplication,
//! because the exponent can be as large as the graph while only `L + 1`
//! coefficients matter.

use num_bigint::BigInt;

use thiserror::Error;

use crate::graph::LocalMatrix;
use crate::ring::RingElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("degree cap mismatch: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("operands restrict different vertex subsets")]
    SubsetMismatch,
    #[error("binomial expansion needs a zero constant term in every entry")]
    ConstantTermNotZero,
}

/// Exact binomial coefficient, zero whenever `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::from(0);
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Polynomial in `z` truncated at a fixed cap: coefficients for degrees
/// `0..=cap`, nothing above.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncPoly<R> {
    coeffs: Vec<R>,
}

impl<R: RingElement> TruncPoly<R> {
    pub fn zero(cap: usize) -> Self {
        TruncPoly {
            coeffs: vec![R::zero(); cap + 1],
        }
    }

    pub fn constant(cap: usize, value: R) -> Self {
        let mut p = TruncPoly::zero(cap);
        p.coeffs[0] = value;
        p
    }

    /// The monomial `value * z^degree`; degrees beyond the cap vanish.
    pub fn monomial(cap: usize, degree: usize, value: R) -> Self {
        let mut p = TruncPoly::zero(cap);
        if degree <= cap {
            p.coeffs[degree] = value;
        }
        p
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> &R {
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, degree: usize, value: R) {
        self.coeffs[degree] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        assert_eq!(self.cap(), rhs.cap(), "cap mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_assign(b);
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncPoly {
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// Truncated product. The coefficient of `z^d` is the convolution
    /// `sum a_i * b_j` over `i + j = d <= cap`, with factors kept in order.
    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cap() != rhs.cap() {
            return Err(AlgebraError::CapMismatch(self.cap(), rhs.cap()));
        }
        let cap = self.cap();
        let mut out = Self::zero(cap);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(cap + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j].add_assign(&a.mul(b));
            }
        }
        Ok(out)
    }
}

/// Square matrix of truncated polynomials over a subset's local index space.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalPolyMatrix<R> {
    index_map: Vec<usize>,
    cap: usize,
    entries: Vec<TruncPoly<R>>,
}

impl<R: RingElement> LocalPolyMatrix<R> {
    pub fn zero(index_map: Vec<usize>, cap: usize) -> Self {
        let k = index_map.len();
        LocalPolyMatrix {
            index_map,
            cap,
            entries: vec![TruncPoly::zero(cap); k * k],
        }
    }

    /// Identity on the subset's local coordinates.
    pub fn identity(index_map: Vec<usize>, cap: usize) -> Self {
        let k = index_map.len();
        let mut m = LocalPolyMatrix::zero(index_map, cap);
        for i in 0..k {
            m.entries[i * k + i] = TruncPoly::constant(cap, R::one());
        }
        m
    }

    /// Lifts a weight matrix `W` to the polynomial matrix `zW`.
    pub fn z_times(weights: &LocalMatrix<R>, cap: usize) -> Self {
        let k = weights.dim();
        let mut m = LocalPolyMatrix::zero(weights.index_map().to_vec(), cap);
        for i in 0..k {
            for j in 0..k {
                let w = weights.entry(i, j);
                if !w.is_zero() {
                    m.entries[i * k + j] = TruncPoly::monomial(cap, 1, w.clone());
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.index_map.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncPoly<R> {
        &self.entries[i * self.dim() + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TruncPoly::is_zero)
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        assert_eq!(self.index_map, rhs.index_map);
        assert_eq!(self.cap, rhs.cap);
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            a.add_assign(b);
        }
    }

    pub fn add_scaled(&mut self, rhs: &Self, k: &BigInt) {
        assert_eq!(self.index_map, rhs.index_map);
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            if !b.is_zero() {
                a.add_assign(&b.scale(k));
            }
        }
    }

    /// Matrix product with truncated polynomial entries, factor order kept.
    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cap != rhs.cap {
            return Err(AlgebraError::CapMismatch(self.cap, rhs.cap));
        }
        if self.index_map != rhs.index_map {
            return Err(AlgebraError::SubsetMismatch);
        }
        let k = self.dim();
        let mut out = LocalPolyMatrix::zero(self.index_map.clone(), self.cap);
        for i in 0..k {
            for t in 0..k {
                let a = self.entry(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = rhs.entry(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * k + j].add_assign(&a.mul(b)?);
                }
            }
        }
        Ok(out)
    }

    /// `self^e`; the zeroth power is the restricted identity.
    pub fn pow(&self, e: usize) -> Result<Self, AlgebraError> {
        let mut result = LocalPolyMatrix::identity(self.index_map.clone(), self.cap);
        for _ in 0..e {
            if result.is_zero() {
                break;
            }
            result = result.mul(self)?;
        }
        Ok(result)
    }

    /// `(I - self)^m`, valid only when every entry has a zero constant term
    /// (the `zW` shape), so that degree `d` output needs only `j <= d`
    /// powers and truncating the binomial series is sound.
    pub fn identity_minus_pow(&self, m: usize) -> Result<Self, AlgebraError> {
        let j_max = m.min(self.cap);
        self.identity_minus_pow_capped(m, j_max)
    }

    /// Like [`Self::identity_minus_pow`] but with an explicit bound on the
    /// expansion index, for callers that will right-shift degrees afterwards.
    pub(crate) fn identity_minus_pow_capped(
        &self,
        m: usize,
        j_max: usize,
    ) -> Result<Self, AlgebraError> {
        let k = self.dim();
        for i in 0..k {
            for j in 0..k {
                if !self.entry(i, j).coeff(0).is_zero() {
                    return Err(AlgebraError::ConstantTermNotZero);
                }
            }
        }
        let mut acc = LocalPolyMatrix::identity(self.index_map.clone(), self.cap);
        let mut power = LocalPolyMatrix::identity(self.index_map.clone(), self.cap);
        for j in 1..=j_max.min(m) {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            let mut coeff = binomial(m as u64, j as i64);
            if j % 2 == 1 {
                coeff = -coeff;
            }
            acc.add_scaled(&power, &coeff);
        }
        Ok(acc)
    }

    pub fn diagonal(&self) -> Vec<TruncPoly<R>> {
        (0..self.dim()).map(|i| self.entry(i, i).clone()).collect()
    }
}

/// Converts a big integer to the ring via the integer action on one.
pub fn ring_from_int<R: RingElement>(k: &BigInt) -> R {
    R::one().scale(k)
}

/// Sign `(-1)^parity` as a big integer.
pub fn alternating_sign(parity: usize) -> BigInt {
    if parity % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// Float rendering helper used by reports: shortest form with 17 significant
/// digits, enough to round-trip any `f64`.
pub fn float_repr(x: f64) -> String {
    format!("{:.16e}", x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, restrict, Graph, VertexSet};
    use crate::ring::WordSum;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn poly(cap: usize, coeffs: &[i64]) -> TruncPoly<BigInt> {
        let mut p = TruncPoly::zero(cap);
        for (d, &c) in coeffs.iter().enumerate() {
            p.set_coeff(d, int(c));
        }
        p
    }

    #[test]
    fn binomial_values_and_conventions() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(4, -1), int(0));
        assert_eq!(binomial(4, 5), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(60, 30), "118264581564861424".parse().unwrap());
    }

    #[test]
    fn poly_mul_truncates() {
        let one_plus_z = poly(1, &[1, 1]);
        let sq = one_plus_z.mul(&one_plus_z).unwrap();
        assert_eq!(sq, poly(1, &[1, 2]));

        let a = poly(3, &[2, 0, 5]);
        assert_eq!(a.mul(&poly(3, &[1])).unwrap(), a);

        assert_eq!(
            poly(1, &[1]).mul(&poly(2, &[1])),
            Err(AlgebraError::CapMismatch(1, 2))
        );
    }

    #[test]
    fn word_poly_mul_concatenates() {
        let cap = 2;
        let a = TruncPoly::monomial(cap, 1, WordSum::letter(0, 1));
        let b = TruncPoly::monomial(cap, 1, WordSum::letter(1, 2));
        let ab = a.mul(&b).unwrap();
        let expected = {
            let mut w = WordSum::letter(0, 1);
            w = RingElement::mul(&w, &WordSum::letter(1, 2));
            w
        };
        assert_eq!(ab.coeff(2), &expected);
        assert!(ab.coeff(0).is_zero() && ab.coeff(1).is_zero());
    }

    fn triangle_zw(cap: usize) -> LocalPolyMatrix<BigInt> {
        let g: Graph<BigInt> = parse_edge_list("0 1\n1 2\n2 0\n", true).unwrap();
        let w = restrict(&g, &VertexSet::new([0, 1, 2])).unwrap();
        LocalPolyMatrix::z_times(&w, cap)
    }

    #[test]
    fn mat_mul_examples() {
        // Single arc: W^2 = 0.
        let g: Graph<BigInt> = parse_edge_list("0 1\n", true).unwrap();
        let zw = LocalPolyMatrix::z_times(&restrict(&g, &VertexSet::new([0, 1])).unwrap(), 3);
        assert!(zw.mul(&zw).unwrap().is_zero());

        let zw3 = triangle_zw(2);
        let id = LocalPolyMatrix::identity(zw3.index_map().to_vec(), 2);
        assert_eq!(zw3.mul(&id).unwrap(), zw3);

        // (zW)^2 of the 3-cycle is z^2 times the double-step permutation.
        let sq = zw3.mul(&zw3).unwrap();
        for (i, j) in [(0, 2), (1, 0), (2, 1)] {
            assert_eq!(sq.entry(i, j).coeff(2), &int(1));
        }
        for i in 0..3 {
            assert!(sq.entry(i, i).is_zero());
        }
    }

    #[test]
    fn mat_pow_examples() {
        let zw = triangle_zw(3);
        let id = LocalPolyMatrix::identity(zw.index_map().to_vec(), 3);
        assert_eq!(zw.pow(0).unwrap(), id);

        // A 3-cycle returns to the identity at z^3.
        let cubed = zw.pow(3).unwrap();
        for i in 0..3 {
            assert_eq!(cubed.entry(i, i).coeff(3), &int(1));
        }

        let g: Graph<BigInt> = parse_edge_list("0 1\n", true).unwrap();
        let nil = LocalPolyMatrix::z_times(&restrict(&g, &VertexSet::new([0, 1])).unwrap(), 4);
        assert!(nil.pow(2).unwrap().is_zero());
    }

    #[test]
    fn identity_minus_pow_examples() {
        let zw = triangle_zw(3);
        let id = LocalPolyMatrix::identity(zw.index_map().to_vec(), 3);
        assert_eq!(zw.identity_minus_pow(0).unwrap(), id);

        // m = 1 is I - A.
        let linear = zw.identity_minus_pow(1).unwrap();
        let mut expected = id.clone();
        for i in 0..3 {
            for j in 0..3 {
                if !zw.entry(i, j).is_zero() {
                    assert_eq!(linear.entry(i, j).coeff(1), &int(-1));
                }
            }
        }
        expected.add_scaled(&zw, &int(-1));
        assert_eq!(linear, expected);

        // Scalar case: a 1x1 self-loop of weight w at cap 2, cubed.
        let g: Graph<BigInt> = parse_edge_list("0 0 2\n", true).unwrap();
        let zw = LocalPolyMatrix::z_times(&restrict(&g, &VertexSet::singleton(0)).unwrap(), 2);
        let m3 = zw.identity_minus_pow(3).unwrap();
        // (1 - 2z)^3 = 1 - 6z + 12z^2 (z^3 truncated).
        assert_eq!(m3.entry(0, 0), &poly(2, &[1, -6, 12]));

        // Nonzero constant term is rejected.
        let bad = LocalPolyMatrix::<BigInt>::identity(vec![0], 2);
        assert_eq!(
            bad.identity_minus_pow(2),
            Err(AlgebraError::ConstantTermNotZero)
        );
    }

    #[test]
    fn pow_is_additive_on_random_matrices() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let k = rng.gen_range(1..4usize);
            let cap = rng.gen_range(1..5usize);
            let mut m = LocalPolyMatrix::<BigInt>::zero((0..k).collect(), cap);
            for i in 0..k {
                for j in 0..k {
                    if rng.gen_bool(0.6) {
                        let mut p = TruncPoly::zero(cap);
                        for d in 1..=cap {
                            p.set_coeff(d, int(rng.gen_range(-2..=2)));
                        }
                        m.entries[i * k + j] = p;
                    }
                }
            }
            let i = rng.gen_range(0..4usize);
            let j = rng.gen_range(0..4usize);
            let lhs = m.pow(i + j).unwrap();
            let rhs = m.pow(i).unwrap().mul(&m.pow(j).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn identity_minus_pow_is_multiplicative() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..15 {
            let k = rng.gen_range(1..3usize);
            let cap = rng.gen_range(1..4usize);
            let mut a = LocalPolyMatrix::<BigInt>::zero((0..k).collect(), cap);
            for i in 0..k {
                for j in 0..k {
                    let mut p = TruncPoly::zero(cap);
                    for d in 1..=cap {
                        p.set_coeff(d, int(rng.gen_range(-2..=2)));
                    }
                    a.entries[i * k + j] = p;
                }
            }
            let m = rng.gen_range(0..6usize);
            let m2 = rng.gen_range(0..6usize);
            let prod = a
                .identity_minus_pow(m)
                .unwrap()
                .mul(&a.identity_minus_pow(m2).unwrap())
                .unwrap();
            assert_eq!(prod, a.identity_minus_pow(m + m2).unwrap());
        }
    }

    #[test]
    fn word_matrix_powers_enumerate_walks() {
        // Entry (i, j) of (zW)^k in the word ring is exactly the sum of the
        // length-k walk words from i to j.
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..8 {
            let n = rng.gen_range(2..=4usize);
            let mut arcs = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if rng.gen_bool(0.5) {
                        arcs.push((u, v, WordSum::letter(u, v)));
                    }
                }
            }
            let g = Graph::new(n, crate::graph::Orientation::Directed, arcs).unwrap();
            let zw =
                LocalPolyMatrix::z_times(&restrict(&g, &VertexSet::new(0..n)).unwrap(), 4);
            for k in 1..=4usize {
                let p = zw.pow(k).unwrap();
                for i in 0..n {
                    for j in 0..n {
                        // Direct enumeration of every length-k stop sequence
                        // from i to j, encoded in base n.
                        let mut expected = WordSum::zero();
                        for code in 0..n.pow(k as u32 - 1) {
                            let mut stops = vec![i];
                            let mut c = code;
                            for _ in 0..k - 1 {
                                stops.push(c % n);
                                c /= n;
                            }
                            stops.push(j);
                            let mut word = WordSum::one();
                            let mut ok = true;
                            for t in 0..k {
                                if g.weight_between(stops[t], stops[t + 1]).is_some() {
                                    word = RingElement::mul(
                                        &word,
                                        &WordSum::letter(stops[t], stops[t + 1]),
                                    );
                                } else {
                                    ok = false;
                                    break;
                                }
                            }
                            if ok {
                                expected.add_assign(&word);
                            }
                        }
                        assert_eq!(p.entry(i, j).coeff(k), &expected, "({i},{j}) k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn float_repr_has_17_significant_digits() {
        assert_eq!(float_repr(1.0), "1.0000000000000000e0");
        assert_eq!(float_repr(0.1), "1.0000000000000001e-1");
    }
}
