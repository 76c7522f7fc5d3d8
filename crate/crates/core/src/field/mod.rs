//! Exact arithmetic in GF(q) and GF(q^p) for prime q.
//!
//! Elements of GF(q^p) are dense coordinate vectors over the polynomial
//! basis `{1, x, ..., x^(p-1)}`. The prime subfield GF(q) sits inside as the
//! vectors `(c, 0, ..., 0)`. A [`Field`] is cheap to clone and carries the
//! modulus plus a precomputed matrix for the q-power (Frobenius) map.
//!
//! ```
//! use srfc_core::field::Field;
//!
//! let gf8 = Field::new(2, 3).unwrap();
//! assert_eq!(gf8.modulus(), &[1, 1, 0, 1]); // x^3 + x + 1
//! let x = gf8.generator();
//! let x2 = gf8.mul(&x, &x);
//! assert_eq!(gf8.mul(&x, &x2).coeffs(), &[1, 1, 0]); // x^3 = x + 1
//! ```

mod linalg;
pub(crate) mod poly;

pub use linalg::{matrix_rank, solve_linear, solve_linear_in, LinearSolution};

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported base-field characteristic (exclusive).
pub const MAX_BASE: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("q = {0} is not prime")]
    NotPrime(u64),
    #[error("q = {0} is too large; base fields must satisfy q < 65536")]
    BaseTooLarge(u64),
    #[error("extension degree p must be at least 1")]
    ZeroDegree,
    #[error("modulus must be a monic irreducible polynomial of degree {degree} over GF({q})")]
    InvalidModulus { q: u32, degree: usize },
    #[error("no irreducible polynomial of degree {p} found over GF({q})")]
    NoIrreducible { q: u32, p: usize },
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("element {0:?} does not belong to GF({1}^{2})")]
    ForeignElement(Vec<u32>, u32, usize),
    #[error("matrix and right-hand side dimensions disagree")]
    DimensionMismatch,
}

/// An element of GF(q^p), stored as its p coordinates over GF(q).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<u32>);

impl Element {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

struct Inner {
    q: u32,
    p: usize,
    /// p + 1 coefficients, constant term first, leading 1.
    modulus: Vec<u32>,
    /// `frob[i][j]` is coordinate i of (x^j)^q.
    frob: Vec<Vec<u32>>,
}

/// The field GF(q^p) together with its representation.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

/// Serialized form: `{q, p, modulus: [c0..cp]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldSpec {
    pub q: u32,
    pub p: usize,
    pub modulus: Vec<u32>,
}

impl Field {
    /// Builds GF(q^p) using the lexicographically smallest monic irreducible
    /// modulus, comparing coefficient vectors from the x^(p-1) term down to
    /// the constant term.
    pub fn new(q: u32, p: usize) -> Result<Self, FieldError> {
        check_base(q)?;
        if p == 0 {
            return Err(FieldError::ZeroDegree);
        }
        // Counting upward in base q with the constant term as the least
        // significant digit visits candidates in exactly that order.
        let mut low = vec![0u32; p];
        loop {
            let mut candidate = low.clone();
            candidate.push(1);
            if poly::is_irreducible(&candidate, q) {
                return Ok(Self::from_parts(q, candidate));
            }
            let mut i = 0;
            loop {
                if i == p {
                    return Err(FieldError::NoIrreducible { q, p });
                }
                low[i] += 1;
                if low[i] < q {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
        }
    }

    /// Builds GF(q^p) from an explicit modulus (constant term first).
    pub fn with_modulus(q: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        check_base(q)?;
        if modulus.len() < 2 {
            return Err(FieldError::ZeroDegree);
        }
        let degree = modulus.len() - 1;
        let monic = modulus[degree] == 1;
        if !monic || modulus.iter().any(|&c| c >= q) || !poly::is_irreducible(&modulus, q) {
            return Err(FieldError::InvalidModulus { q, degree });
        }
        Ok(Self::from_parts(q, modulus))
    }

    fn from_parts(q: u32, modulus: Vec<u32>) -> Self {
        let p = modulus.len() - 1;
        let x_q = poly::pow_rem(&[0, 1], q as u64, &modulus, q);
        let mut frob = vec![vec![0u32; p]; p];
        let mut col = poly::rem(&[1], &modulus, q);
        for j in 0..p {
            for (i, &c) in col.iter().enumerate() {
                frob[i][j] = c;
            }
            col = poly::mul_rem(&col, &x_q, &modulus, q);
        }
        Field(Arc::new(Inner { q, p, modulus, frob }))
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn p(&self) -> usize {
        self.0.p
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { q: self.q(), p: self.p(), modulus: self.modulus().to_vec() }
    }

    /// q^p, when it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.q() as u128).checked_pow(self.p() as u32)
    }

    /// log2 of the field size, i.e. the information content of one symbol.
    pub fn symbol_bits(&self) -> f64 {
        self.p() as f64 * (self.q() as f64).log2()
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.p()])
    }

    pub fn one(&self) -> Element {
        self.base(1)
    }

    /// Embeds `c mod q` from the prime subfield.
    pub fn base(&self, c: u32) -> Element {
        let mut v = vec![0; self.p()];
        v[0] = c % self.q();
        Element(v)
    }

    /// The class of x, a root of the modulus. For p = 1 this is a base
    /// element (the negated constant term).
    pub fn generator(&self) -> Element {
        self.monomial(1)
    }

    /// x^d reduced modulo the field modulus.
    pub fn monomial(&self, d: usize) -> Element {
        let mut m = vec![0u32; d + 1];
        m[d] = 1;
        self.reduce_poly(&m)
    }

    fn reduce_poly(&self, coeffs: &[u32]) -> Element {
        let mut v = poly::rem(coeffs, self.modulus(), self.q());
        v.resize(self.p(), 0);
        Element(v)
    }

    /// Validates coordinates and wraps them as an element.
    pub fn element(&self, coeffs: Vec<u32>) -> Result<Element, FieldError> {
        if coeffs.len() != self.p() || coeffs.iter().any(|&c| c >= self.q()) {
            return Err(FieldError::ForeignElement(coeffs, self.q(), self.p()));
        }
        Ok(Element(coeffs))
    }

    pub fn contains(&self, a: &Element) -> bool {
        a.0.len() == self.p() && a.0.iter().all(|&c| c < self.q())
    }

    /// True for elements of the embedded prime subfield.
    pub fn is_base(&self, a: &Element) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    /// Element whose coordinates are the base-q digits of `index`.
    pub fn from_index(&self, mut index: u128) -> Element {
        let q = self.q() as u128;
        let coeffs = (0..self.p())
            .map(|_| {
                let d = (index % q) as u32;
                index /= q;
                d
            })
            .collect();
        Element(coeffs)
    }

    pub fn index_of(&self, a: &Element) -> u128 {
        let q = self.q() as u128;
        a.0.iter().rev().fold(0u128, |acc, &c| acc * q + c as u128)
    }

    /// All q^p elements in index order. Panics if the field is too large to
    /// enumerate in a `u64` range.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let order = self.order().and_then(|o| u64::try_from(o).ok()).expect("field too large to enumerate");
        (0..order).map(move |i| self.from_index(i as u128))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        let q = self.q();
        Element((0..self.p()).map(|_| rng.random_range(0..q)).collect())
    }

    #[inline]
    fn check(&self, a: &Element) {
        assert!(self.contains(a), "element {a:?} used with GF({}^{})", self.q(), self.p());
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.check(a);
        self.check(b);
        let q = self.q();
        Element(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % q).collect())
    }

    pub fn add_assign(&self, acc: &mut Element, b: &Element) {
        self.check(b);
        let q = self.q();
        for (x, &y) in acc.0.iter_mut().zip(&b.0) {
            *x = (*x + y) % q;
        }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.check(a);
        self.check(b);
        let q = self.q();
        Element(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + q - y) % q).collect())
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.check(a);
        let q = self.q();
        Element(a.0.iter().map(|&x| (q - x) % q).collect())
    }

    /// Multiplies by a scalar from the prime subfield.
    pub fn scale(&self, c: u32, a: &Element) -> Element {
        self.check(a);
        let q = self.q();
        Element(a.0.iter().map(|&x| poly::mul_mod_q(x, c % q, q)).collect())
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.check(a);
        self.check(b);
        let p = self.p();
        let q = self.q() as u64;
        let mut buf = vec![0u64; 2 * p - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                buf[i + j] += x as u64 * y as u64;
            }
        }
        let m = self.modulus();
        for d in (p..2 * p - 1).rev() {
            let c = buf[d] % q;
            if c == 0 {
                continue;
            }
            // x^d = x^(d-p) * x^p and x^p = -(m_0 + ... + m_(p-1) x^(p-1))
            for i in 0..p {
                buf[d - p + i] += c * ((q - m[i] as u64) % q);
            }
        }
        Element(buf[..p].iter().map(|&c| (c % q) as u32).collect())
    }

    pub fn inv(&self, a: &Element) -> Result<Element, FieldError> {
        self.check(a);
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let inv = poly::inv_rem(&a.0, self.modulus(), self.q()).ok_or(FieldError::ZeroInverse)?;
        Ok(self.reduce_poly(&inv))
    }

    pub fn div(&self, a: &Element, b: &Element) -> Result<Element, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Element, mut exp: u128) -> Element {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// a^(q^e). The q-power map is GF(q)-linear, so each application is a
    /// matrix-vector product with the precomputed Frobenius matrix; after p
    /// applications it is the identity.
    pub fn frobenius(&self, a: &Element, e: usize) -> Element {
        self.check(a);
        let mut cur = a.clone();
        for _ in 0..e % self.p() {
            cur = self.frobenius_once(&cur);
        }
        cur
    }

    fn frobenius_once(&self, a: &Element) -> Element {
        let q = self.q() as u64;
        let out = self
            .0
            .frob
            .iter()
            .map(|row| {
                let s: u64 = row.iter().zip(&a.0).map(|(&f, &c)| f as u64 * c as u64).sum();
                (s % q) as u32
            })
            .collect();
        Element(out)
    }

    /// Returns `[a, a^q, a^(q^2), ..., a^(q^(count-1))]`.
    pub fn frobenius_ladder(&self, a: &Element, count: usize) -> Vec<Element> {
        self.check(a);
        let mut out = Vec::with_capacity(count);
        let mut cur = a.clone();
        for _ in 0..count {
            let next = self.frobenius_once(&cur);
            out.push(cur);
            cur = next;
        }
        out
    }

    /// Dimension over GF(q) of the span of `elems`.
    pub fn subfield_rank<'a>(&self, elems: impl IntoIterator<Item = &'a Element>) -> usize {
        let mut basis = SubfieldBasis::new(self);
        for e in elems {
            basis.insert(e);
        }
        basis.rank()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.q() == other.q() && self.modulus() == other.modulus())
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.q(), self.p(), self.modulus())
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let spec = FieldSpec::deserialize(d)?;
        if spec.modulus.len() != spec.p + 1 {
            return Err(serde::de::Error::custom("modulus length must be p + 1"));
        }
        Field::with_modulus(spec.q, spec.modulus).map_err(serde::de::Error::custom)
    }
}

fn check_base(q: u32) -> Result<(), FieldError> {
    if !poly::is_prime(q as u64) {
        return Err(FieldError::NotPrime(q as u64));
    }
    if q >= MAX_BASE {
        return Err(FieldError::BaseTooLarge(q as u64));
    }
    Ok(())
}

/// Incremental echelon basis of a GF(q)-subspace of GF(q^p).
///
/// Each stored row has a unit pivot and is zero at the pivots of rows
/// inserted before it, so a candidate reduced by the rows in insertion order
/// ends with zeros at every pivot.
#[derive(Clone, Debug)]
pub struct SubfieldBasis {
    q: u32,
    rows: Vec<(usize, Vec<u32>)>,
}

impl SubfieldBasis {
    pub fn new(field: &Field) -> Self {
        SubfieldBasis { q: field.q(), rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let q = self.q;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = (*x + q - poly::mul_mod_q(c, r, q)) % q;
            }
        }
        v
    }

    /// True if `e` lies in the current span.
    pub fn spans(&self, e: &Element) -> bool {
        self.reduce(e.coeffs()).iter().all(|&c| c == 0)
    }

    /// Adds `e`; returns whether the rank grew.
    pub fn insert(&mut self, e: &Element) -> bool {
        let mut v = self.reduce(e.coeffs());
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = poly::inv_mod_q(v[pivot], self.q);
        for x in v.iter_mut() {
            *x = poly::mul_mod_q(*x, inv, self.q);
        }
        self.rows.push((pivot, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive trial division: f is irreducible iff no monic polynomial of
    /// degree 1..=deg/2 divides it.
    fn irreducible_by_trial_division(f: &[u32], q: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let mut low = vec![0u32; d];
            loop {
                let mut g = low.clone();
                g.push(1);
                if poly::rem(f, &g, q).is_empty() {
                    return false;
                }
                let mut i = 0;
                while i < d {
                    low[i] += 1;
                    if low[i] < q {
                        break;
                    }
                    low[i] = 0;
                    i += 1;
                }
                if i == d {
                    break;
                }
            }
        }
        true
    }

    fn smallest_by_trial_division(q: u32, p: usize) -> Vec<u32> {
        let mut low = vec![0u32; p];
        loop {
            let mut f = low.clone();
            f.push(1);
            if irreducible_by_trial_division(&f, q) {
                return f;
            }
            let mut i = 0;
            while i < p {
                low[i] += 1;
                if low[i] < q {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn gf8_modulus_is_x3_x_1() {
        let f = Field::new(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn modulus_matches_trial_division_oracle() {
        for (q, p) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 8), (3, 2), (3, 3), (3, 4), (5, 3), (7, 2), (11, 3), (13, 2)] {
            let f = Field::new(q, p).unwrap();
            assert_eq!(f.modulus(), smallest_by_trial_division(q, p).as_slice(), "GF({q}^{p})");
        }
    }

    #[test]
    fn rabin_agrees_with_trial_division_on_all_small_polys() {
        for (q, p) in [(2, 4), (3, 3), (5, 2)] {
            let total = (q as usize).pow(p as u32);
            for idx in 0..total {
                let mut f: Vec<u32> = (0..p).map(|i| ((idx / (q as usize).pow(i as u32)) % q as usize) as u32).collect();
                f.push(1);
                assert_eq!(poly::is_irreducible(&f, q), irreducible_by_trial_division(&f, q), "{f:?} over GF({q})");
            }
        }
    }

    #[test]
    fn degree_one_field_is_prime_field() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        let a = f.base(3);
        let b = f.base(5);
        assert_eq!(f.mul(&a, &b), f.base(1));
        assert_eq!(f.inv(&a).unwrap(), f.base(5));
    }

    #[test]
    fn rejects_non_prime_and_bad_modulus() {
        assert_eq!(Field::new(4, 2).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Field::new(1, 2).unwrap_err(), FieldError::NotPrime(1));
        assert_eq!(Field::new(5, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(Field::with_modulus(2, vec![1, 0, 1]), Err(FieldError::InvalidModulus { .. })));
        assert!(Field::with_modulus(2, vec![1, 1, 1]).is_ok());
    }

    #[test]
    fn large_field_construction() {
        let f = Field::new(13, 20).unwrap();
        assert_eq!(f.p(), 20);
        assert!(poly::is_irreducible(f.modulus(), 13));
    }

    #[test]
    fn reduction_example_gf8() {
        let f = Field::new(2, 3).unwrap();
        let x = f.generator();
        let x2 = f.monomial(2);
        assert_eq!(f.mul(&x, &x2), f.element(vec![1, 1, 0]).unwrap());
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.inv(&f.zero()).unwrap_err(), FieldError::ZeroInverse);
    }

    #[test]
    #[should_panic]
    fn mixed_field_operands_panic() {
        let a = Field::new(2, 3).unwrap();
        let b = Field::new(2, 4).unwrap();
        a.add(&a.one(), &b.one());
    }

    #[test]
    fn foreign_element_rejected() {
        let f = Field::new(3, 2).unwrap();
        assert!(f.element(vec![1, 3]).is_err());
        assert!(f.element(vec![1]).is_err());
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for (q, p) in [(2, 3), (3, 2), (5, 2), (2, 4)] {
            let f = Field::new(q, p).unwrap();
            let all: Vec<Element> = f.elements().collect();
            for a in &all {
                assert_eq!(f.add(a, &f.zero()), *a);
                assert_eq!(f.mul(a, &f.one()), *a);
                assert_eq!(f.add(a, &f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
                }
                for b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in all.iter().step_by(3) {
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn axioms_randomized_large_field() {
        let f = Field::new(13, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            if !a.is_zero() {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn multiplicative_group_order() {
        let f = Field::new(3, 3).unwrap();
        for a in f.elements().filter(|a| !a.is_zero()) {
            assert_eq!(f.pow(&a, 26), f.one());
        }
    }

    #[test]
    fn frobenius_examples() {
        let f = Field::new(2, 3).unwrap();
        let x = f.generator();
        assert_eq!(f.frobenius(&x, 0), x);
        assert_eq!(f.frobenius(&x, 1), f.monomial(2));
        assert_eq!(f.frobenius(&x, 3), x);
    }

    #[test]
    fn frobenius_matches_powering_and_fixes_subfield() {
        for (q, p) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = Field::new(q, p).unwrap();
            let mut fixed = 0;
            for a in f.elements() {
                let fa = f.frobenius(&a, 1);
                assert_eq!(fa, f.pow(&a, q as u128));
                if fa == a {
                    fixed += 1;
                    assert!(f.is_base(&a));
                }
            }
            assert_eq!(fixed, q);
        }
    }

    #[test]
    fn frobenius_additive() {
        let f = Field::new(3, 3).unwrap();
        let all: Vec<Element> = f.elements().collect();
        for a in &all {
            for b in &all {
                assert_eq!(f.frobenius(&f.add(a, b), 1), f.add(&f.frobenius(a, 1), &f.frobenius(b, 1)));
            }
        }
    }

    #[test]
    fn subfield_rank_examples() {
        let f = Field::new(2, 3).unwrap();
        let one = f.one();
        let x = f.generator();
        let one_x = f.add(&one, &x);
        assert_eq!(f.subfield_rank([&one, &x, &one_x]), 2);
        assert_eq!(f.subfield_rank([] as [&Element; 0]), 0);
        assert_eq!(f.subfield_rank([&f.zero()]), 0);
        assert_eq!(f.subfield_rank([&one, &x, &f.monomial(2)]), 3);
    }

    #[test]
    fn index_round_trip() {
        let f = Field::new(3, 4).unwrap();
        for i in 0..81u128 {
            assert_eq!(f.index_of(&f.from_index(i)), i);
        }
    }

    proptest! {
        #[test]
        fn subfield_rank_permutation_invariant_and_monotone(seed in any::<u64>(), count in 0usize..8) {
            let f = Field::new(3, 4).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let elems: Vec<Element> = (0..count).map(|i| {
                // mix random and dependent elements
                if i % 3 == 2 { f.base(2) } else { f.random(&mut rng) }
            }).collect();
            let r = f.subfield_rank(&elems);
            prop_assert!(r <= count.min(f.p()));
            let mut rev = elems.clone();
            rev.reverse();
            prop_assert_eq!(f.subfield_rank(&rev), r);
            let mut ext = elems.clone();
            ext.push(f.random(&mut rng));
            prop_assert!(f.subfield_rank(&ext) >= r);
        }
    }
}
