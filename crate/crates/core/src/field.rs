//! Exact arithmetic in GF(p^m) and the word-level digit maps.
//!
//! A field element is stored packed as a single integer `sum a_j * p^(j-1)`
//! in `[0, q-1]`, where `(a_1, ..., a_m)` are the coordinates with respect to
//! the basis `1, b, ..., b^(m-1)` and `b` is a root of the defining
//! irreducible polynomial. The coefficient list is the canonical external
//! view; the packed integer is the internal encoding and the key used by
//! every deduplication set in the crate.
//!
//! Indices in this module (coordinates of words, digit positions) are
//! 0-based. External formats (code files, rendered output) are 1-based.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported field size. Keeps every table desk-scale.
pub const MAX_FIELD_SIZE: u128 = 1 << 16;

/// Build multiplication/inverse lookup tables only for fields this small.
const TABLE_LIMIT: u32 = 256;

/// Default irreducible polynomials (ascending coefficients, monic) for all
/// prime powers p^m <= 128 with m >= 2: the lexicographically least monic
/// irreducible of each degree. For m = 1 the default is X - 1.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 0, 1, 1]),
    (2, 4, &[1, 0, 0, 1, 1]),
    (2, 5, &[1, 0, 0, 1, 0, 1]),
    (2, 6, &[1, 0, 0, 0, 0, 1, 1]),
    (2, 7, &[1, 0, 0, 0, 0, 0, 1, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 0, 2, 1]),
    (3, 4, &[1, 0, 1, 1, 1]),
    (5, 2, &[1, 1, 1]),
    (5, 3, &[1, 0, 1, 1]),
    (7, 2, &[1, 0, 1]),
    (11, 2, &[1, 0, 1]),
];

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic irreducible of degree m, ascending coefficients, length m + 1.
    modulus: Vec<u32>,
    /// pows[j] = p^j for j in 0..=m.
    pows: Vec<u32>,
    /// Dense q*q multiplication table for small fields.
    mul_table: Option<Vec<u16>>,
    /// inv_table[a] for a in 1..q.
    inv_table: Option<Vec<u16>>,
}

/// A finite field GF(p^m) with an explicit irreducible modulus.
///
/// Cheap to clone; all state is immutable and shared.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldSpec(p={}, m={}, f={:?})",
            self.0.p, self.0.m, self.0.modulus
        )
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus
    }
}
impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.m.hash(state);
        self.0.modulus.hash(state);
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder test f mod g == 0 over Z_p, both ascending, g monic.
fn divides(g: &[u32], f: &[u32], p: u32) -> bool {
    let dg = g.len() - 1;
    let mut r: Vec<u32> = f.to_vec();
    while r.len() > dg {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - dg;
            for (j, &gj) in g.iter().enumerate() {
                let sub = (lead as u64 * gj as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

/// Exhaustive trial division by every monic polynomial of degree 1..=m/2.
/// Exact and cheap at the field sizes this crate supports.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        // X divides f
        return false;
    }
    for d in 1..=(m / 2) {
        let count = (p as u64).pow(d as u32);
        let mut g = vec![0u32; d + 1];
        g[d] = 1;
        for idx in 0..count {
            let mut t = idx;
            for gj in g.iter_mut().take(d) {
                *gj = (t % p as u64) as u32;
                t /= p as u64;
            }
            if divides(&g, f, p) {
                return false;
            }
        }
    }
    true
}

/// The shipped default modulus for (p, m), if any.
pub fn default_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    if m == 1 {
        return Some(vec![p - 1, 1]);
    }
    DEFAULT_MODULI
        .iter()
        .find(|&&(tp, tm, _)| tp == p && tm == m)
        .map(|&(_, _, f)| f.to_vec())
}

impl FieldSpec {
    /// GF(p^m) with the shipped default modulus. Errors when no default is
    /// shipped for (p, m); supply one via [`FieldSpec::with_modulus`] then.
    pub fn new(p: u32, m: u32) -> Result<FieldSpec> {
        match default_modulus(p, m) {
            Some(f) => FieldSpec::with_modulus(p, m, &f),
            None => Err(Error::DegreeMismatch {
                expected: m as usize + 1,
                got: 0,
            }),
        }
    }

    /// GF(p^m) defined by an explicit monic irreducible `f` of degree m,
    /// ascending coefficients. `f` is validated by exhaustive factor search.
    pub fn with_modulus(p: u32, m: u32, f: &[u32]) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                got: f.len(),
            });
        }
        let q128 = (p as u128).checked_pow(m).filter(|&q| q <= MAX_FIELD_SIZE);
        let q = match q128 {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge((p as u128).saturating_pow(m))),
        };
        if f.len() != m as usize + 1 {
            return Err(Error::DegreeMismatch {
                expected: m as usize + 1,
                got: f.len(),
            });
        }
        let modulus: Vec<u32> = f.iter().map(|&c| c % p).collect();
        if modulus[m as usize] != 1 {
            return Err(Error::DegreeMismatch {
                expected: m as usize + 1,
                got: f.len(),
            });
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::NotIrreducible(modulus, p));
        }
        let mut pows = Vec::with_capacity(m as usize + 1);
        let mut acc = 1u32;
        for _ in 0..=m {
            pows.push(acc);
            acc = acc.saturating_mul(p);
        }
        let mut inner = FieldInner {
            p,
            m,
            q,
            modulus,
            pows,
            mul_table: None,
            inv_table: None,
        };
        if q <= TABLE_LIMIT {
            let mut table = vec![0u16; (q as usize) * (q as usize)];
            for a in 0..q {
                for b in a..q {
                    let prod = mul_raw(&inner, a, b) as u16;
                    table[(a * q + b) as usize] = prod;
                    table[(b * q + a) as usize] = prod;
                }
            }
            let mut inv = vec![0u16; q as usize];
            for a in 1..q {
                for b in 1..q {
                    if table[(a * q + b) as usize] == 1 {
                        inv[a as usize] = b as u16;
                        break;
                    }
                }
            }
            inner.mul_table = Some(table);
            inner.inv_table = Some(inv);
        }
        Ok(FieldSpec(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn m(&self) -> u32 {
        self.0.m
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// All field elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// Canonical representative of a prime-field multiple `k * 1` in [0, p-1].
    pub fn residue(&self, k: u64) -> u32 {
        (k % self.0.p as u64) as u32
    }

    /// j-th base-p digit of a packed element (0-based j).
    #[inline]
    pub fn digit(&self, a: u32, j: u32) -> u32 {
        (a / self.0.pows[j as usize]) % self.0.p
    }

    /// Coefficient list (a_1, ..., a_m) of a packed element.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        (0..self.0.m).map(|j| self.digit(a, j)).collect()
    }

    /// Packed element from a coefficient list; coefficients reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.0.m as usize {
            return Err(Error::LengthMismatch {
                expected: self.0.m as usize,
                got: coeffs.len(),
            });
        }
        Ok(coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| (c % self.0.p) * self.0.pows[j])
            .sum())
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if inner.p == 2 {
            return a ^ b;
        }
        let mut out = 0u32;
        for j in 0..inner.m as usize {
            let da = (a / inner.pows[j]) % inner.p;
            let db = (b / inner.pows[j]) % inner.p;
            out += ((da + db) % inner.p) * inner.pows[j];
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let inner = &*self.0;
        if inner.p == 2 {
            return a;
        }
        let mut out = 0u32;
        for j in 0..inner.m as usize {
            let da = (a / inner.pows[j]) % inner.p;
            out += ((inner.p - da) % inner.p) * inner.pows[j];
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.mul_table {
            Some(t) => t[(a * self.0.q + b) as usize] as u32,
            None => mul_raw(&self.0, a, b),
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        match &self.0.inv_table {
            Some(t) => t[a as usize] as u32,
            None => {
                // Fermat: a^(q-2)
                let mut e = self.0.q - 2;
                let mut base = a;
                let mut acc = 1u32;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = mul_raw(&self.0, acc, base);
                    }
                    base = mul_raw(&self.0, base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    /// Render an element as a polynomial in the root `b`, e.g. "1+2b+b^2".
    pub fn element_string(&self, a: u32) -> String {
        if a == 0 {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for j in 0..self.0.m {
            let c = self.digit(a, j);
            if c == 0 {
                continue;
            }
            let var = match j {
                0 => String::new(),
                1 => "b".to_string(),
                _ => format!("b^{j}"),
            };
            let part = match (c, j) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}{var}"),
            };
            parts.push(part);
        }
        parts.join("+")
    }
}

/// Schoolbook polynomial product of packed elements, reduced mod the modulus.
fn mul_raw(inner: &FieldInner, a: u32, b: u32) -> u32 {
    let p = inner.p as u64;
    let m = inner.m as usize;
    if m == 1 {
        return ((a as u64 * b as u64) % p) as u32;
    }
    let mut prod = vec![0u64; 2 * m - 1];
    for i in 0..m {
        let da = (a / inner.pows[i]) % inner.p;
        if da == 0 {
            continue;
        }
        for j in 0..m {
            let db = (b / inner.pows[j]) % inner.p;
            prod[i + j] += da as u64 * db as u64;
        }
    }
    for c in prod.iter_mut() {
        *c %= p;
    }
    // reduce degree >= m terms by the monic modulus
    for idx in (m..2 * m - 1).rev() {
        let c = prod[idx];
        if c == 0 {
            continue;
        }
        prod[idx] = 0;
        for (j, &fj) in inner.modulus.iter().take(m).enumerate() {
            let t = (c * fj as u64) % p;
            prod[idx - m + j] = (prod[idx - m + j] + p - t) % p;
        }
    }
    let mut out = 0u32;
    for (j, &c) in prod.iter().take(m).enumerate() {
        out += (c as u32) * inner.pows[j];
    }
    out
}

/// A vector in F_q^n. Immutable; the Hamming weight is cached at
/// construction.
#[derive(Clone)]
pub struct Word {
    spec: FieldSpec,
    entries: Vec<u32>,
    weight: u32,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.entries)
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.entries == other.entries
    }
}
impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.hash(state);
        self.entries.hash(state);
    }
}

impl Word {
    pub fn new(spec: FieldSpec, entries: Vec<u32>) -> Result<Word> {
        if entries.iter().any(|&e| e >= spec.q()) {
            return Err(Error::SpecMismatch);
        }
        let weight = entries.iter().filter(|&&e| e != 0).count() as u32;
        Ok(Word {
            spec,
            entries,
            weight,
        })
    }

    pub fn zero(spec: FieldSpec, n: usize) -> Word {
        Word {
            spec,
            entries: vec![0; n],
            weight: 0,
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
    pub fn is_zero(&self) -> bool {
        self.weight == 0
    }

    /// Cached Hamming weight.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Support: 0-based coordinates with a nonzero entry.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Generalized support: 0-based pairs (i, j) with the j-th base-p digit
    /// of coordinate i nonzero, sorted i-major.
    pub fn generalized_support(&self) -> Vec<(usize, usize)> {
        let m = self.spec.m();
        let mut out = Vec::new();
        for (i, &e) in self.entries.iter().enumerate() {
            for j in 0..m {
                if self.spec.digit(e, j) != 0 {
                    out.push((i, j as usize));
                }
            }
        }
        out
    }

    /// Concatenated base-p digit expansion, length n*m: position
    /// i*m + j holds the j-th digit of coordinate i.
    pub fn digits(&self) -> Vec<u32> {
        let m = self.spec.m();
        let mut out = Vec::with_capacity(self.entries.len() * m as usize);
        for &e in &self.entries {
            for j in 0..m {
                out.push(self.spec.digit(e, j));
            }
        }
        out
    }

    /// Word from a natural-number tuple of length n*m; every digit is
    /// reduced mod p.
    pub fn from_digits(spec: FieldSpec, n: usize, digits: &[u32]) -> Result<Word> {
        let m = spec.m() as usize;
        if digits.len() != n * m {
            return Err(Error::LengthMismatch {
                expected: n * m,
                got: digits.len(),
            });
        }
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let coeffs: Vec<u32> = digits[i * m..(i + 1) * m].to_vec();
            entries.push(spec.from_coeffs(&coeffs)?);
        }
        Word::new(spec, entries)
    }

    fn check_compatible(&self, other: &Word) -> Result<()> {
        if self.spec != other.spec || self.entries.len() != other.entries.len() {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.spec.add(a, b))
            .collect();
        Word::new(self.spec.clone(), entries)
    }

    pub fn sub(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.spec.sub(a, b))
            .collect();
        Word::new(self.spec.clone(), entries)
    }

    /// Copy of the word with coordinate i (0-based) zeroed.
    pub fn zeroed_at(&self, i: usize) -> Word {
        let mut entries = self.entries.clone();
        entries[i] = 0;
        let weight = entries.iter().filter(|&&e| e != 0).count() as u32;
        Word {
            spec: self.spec.clone(),
            entries,
            weight,
        }
    }

    /// Packed key: sum entries[i] * q^i. Unique per word of a fixed length.
    pub fn packed(&self) -> u128 {
        let q = self.spec.q() as u128;
        let mut acc = 0u128;
        for &e in self.entries.iter().rev() {
            acc = acc * q + e as u128;
        }
        acc
    }

    /// Inverse of [`Word::packed`].
    pub fn unpack(spec: FieldSpec, n: usize, mut key: u128) -> Word {
        let q = spec.q() as u128;
        let mut entries = Vec::with_capacity(n);
        for _ in 0..n {
            entries.push((key % q) as u32);
            key /= q;
        }
        let weight = entries.iter().filter(|&&e| e != 0).count() as u32;
        Word {
            spec,
            entries,
            weight,
        }
    }

    /// Deterministic total order used only for stable output listings:
    /// weight, then packed key. Not the weight-compatible order.
    pub fn cmp_stable(&self, other: &Word) -> Ordering {
        (self.weight, self.packed()).cmp(&(other.weight, other.packed()))
    }
}

/// True iff a natural tuple is a reduced digit expansion: every entry < p.
/// Equivalently, re-expanding the word it denotes reproduces the tuple.
pub fn digits_reduced(spec: &FieldSpec, digits: &[u32]) -> bool {
    digits.iter().all(|&d| d < spec.p())
}

/// The n*m canonical generators: the word with a single nonzero digit at
/// (i, j), i.e. `b^j` at coordinate i. Listed i-major, j-minor.
pub fn canonical_generators(spec: &FieldSpec, n: usize) -> Vec<Word> {
    let m = spec.m() as usize;
    let mut out = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            let mut entries = vec![0u32; n];
            entries[i] = spec.digit_power(j as u32);
            out.push(Word {
                spec: spec.clone(),
                entries,
                weight: 1,
            });
        }
    }
    out
}

impl FieldSpec {
    /// Packed value of b^j for j < m, i.e. p^j.
    #[inline]
    pub fn digit_power(&self, j: u32) -> u32 {
        self.0.pows[j as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf4() -> FieldSpec {
        FieldSpec::with_modulus(2, 2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn constructs_prime_field() {
        let f = FieldSpec::with_modulus(2, 1, &[1, 1]).unwrap();
        assert_eq!(f.q(), 2);
    }

    #[test]
    fn constructs_gf4_with_default() {
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_reducible_modulus() {
        // 1 + X^2 = (1 + X)^2 over Z_2
        let err = FieldSpec::with_modulus(2, 2, &[1, 0, 1]).unwrap_err();
        assert!(matches!(err, Error::NotIrreducible(_, 2)));
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(
            FieldSpec::with_modulus(4, 1, &[1, 1]).unwrap_err(),
            Error::NotPrime(4)
        );
    }

    #[test]
    fn rejects_wrong_degree() {
        assert!(matches!(
            FieldSpec::with_modulus(2, 2, &[1, 1]).unwrap_err(),
            Error::DegreeMismatch { .. }
        ));
    }

    #[test]
    fn default_moduli_are_lex_least_irreducibles() {
        for &(p, m, f) in DEFAULT_MODULI {
            assert!(is_irreducible(f, p), "table entry ({p},{m}) reducible");
            // no lexicographically smaller monic irreducible exists
            let total = (p as u64).pow(m);
            'search: for idx in 0..total {
                let mut cand = vec![0u32; m as usize + 1];
                let mut t = idx;
                for j in (0..m as usize).rev() {
                    cand[j] = (t % p as u64) as u32;
                    t /= p as u64;
                }
                cand[m as usize] = 1;
                if cand.as_slice() == f {
                    break 'search;
                }
                assert!(
                    !is_irreducible(&cand, p),
                    "({p},{m}): {cand:?} is irreducible and smaller than {f:?}"
                );
            }
        }
    }

    #[test]
    fn residue_examples() {
        assert_eq!(FieldSpec::new(3, 1).unwrap().residue(2), 2);
        assert_eq!(FieldSpec::new(2, 1).unwrap().residue(1), 1);
        assert_eq!(FieldSpec::new(5, 1).unwrap().residue(0), 0);
    }

    #[test]
    fn digit_expansion_gf4() {
        // v = (b, 1+b) over GF(4): digits (0,1,1,1)
        let f = gf4();
        let v = Word::new(f, vec![2, 3]).unwrap();
        assert_eq!(v.digits(), vec![0, 1, 1, 1]);
    }

    #[test]
    fn digit_expansion_zero_and_prime() {
        let f = FieldSpec::new(3, 1).unwrap();
        let z = Word::zero(f.clone(), 4);
        assert_eq!(z.digits(), vec![0; 4]);
        let v = Word::new(f, vec![2, 1]).unwrap();
        assert_eq!(v.digits(), vec![2, 1]);
    }

    #[test]
    fn word_from_digits_reduces_mod_p() {
        let f = FieldSpec::new(2, 1).unwrap();
        let w = Word::from_digits(f.clone(), 2, &[1, 1]).unwrap();
        assert_eq!(w.entries(), &[1, 1]);
        let w = Word::from_digits(f.clone(), 1, &[2]).unwrap();
        assert_eq!(w.entries(), &[0]);
        let g4 = gf4();
        let w = Word::from_digits(g4, 1, &[1, 1]).unwrap();
        assert_eq!(w.entries(), &[3]); // 1 + b
        assert!(matches!(
            Word::from_digits(f, 2, &[1]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn reduced_digit_tuples() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert!(digits_reduced(&f2, &[1, 0, 1]));
        assert!(!digits_reduced(&f2, &[2, 0]));
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert!(digits_reduced(&f3, &[2, 2]));
    }

    #[test]
    fn generalized_support_examples() {
        let f = gf4();
        let v = Word::new(f.clone(), vec![2, 3]).unwrap(); // (b, 1+b)
        assert_eq!(v.generalized_support(), vec![(0, 1), (1, 0), (1, 1)]);
        assert!(Word::zero(f, 2).generalized_support().is_empty());
        let f3 = FieldSpec::new(3, 1).unwrap();
        let v = Word::new(f3, vec![0, 2, 0]).unwrap();
        assert_eq!(v.generalized_support(), vec![(1, 0)]);
    }

    #[test]
    fn canonical_generator_counts_and_supports() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let gens = canonical_generators(&f2, 3);
        let entries: Vec<_> = gens.iter().map(|g| g.entries().to_vec()).collect();
        assert_eq!(entries, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);

        let g4 = canonical_generators(&gf4(), 1);
        assert_eq!(
            g4.iter().map(|g| g.entries()[0]).collect::<Vec<_>>(),
            vec![1, 2] // 1 and b
        );

        let f9 = FieldSpec::new(3, 2).unwrap();
        let gens = canonical_generators(&f9, 2);
        assert_eq!(gens.len(), 4);
        for (idx, g) in gens.iter().enumerate() {
            assert_eq!(g.weight(), 1);
            assert_eq!(g.generalized_support(), vec![(idx / 2, idx % 2)]);
        }
    }

    #[test]
    fn word_arithmetic_examples() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        let a = Word::new(f3.clone(), vec![1, 2]).unwrap();
        let b = Word::new(f3.clone(), vec![2, 2]).unwrap();
        assert_eq!(a.add(&b).unwrap().entries(), &[0, 1]);
        assert!(a.sub(&a).unwrap().is_zero());

        let g4 = gf4();
        let v = Word::new(g4, vec![2, 1]).unwrap(); // (b, 1)
        assert_eq!(v.zeroed_at(0).entries(), &[0, 1]);

        let f2 = FieldSpec::new(2, 1).unwrap();
        let w = Word::zero(f2, 2);
        assert!(matches!(a.add(&w), Err(Error::SpecMismatch)));
    }

    #[test]
    fn weight_equals_support_size() {
        let g4 = gf4();
        for key in 0..16u128 {
            let w = Word::unpack(g4.clone(), 2, key);
            assert_eq!(w.weight() as usize, w.support().len());
            let gen_coords: std::collections::HashSet<usize> =
                w.generalized_support().iter().map(|&(i, _)| i).collect();
            assert_eq!(w.weight() as usize, gen_coords.len());
            assert_eq!(Word::unpack(g4.clone(), 2, w.packed()), w);
        }
    }

    #[test]
    fn element_rendering() {
        let g4 = gf4();
        let strings: Vec<_> = (0..4).map(|a| g4.element_string(a)).collect();
        assert_eq!(strings, vec!["0", "1", "b", "1+b"]);
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.element_string(7), "1+2b");
    }

    fn small_fields() -> Vec<FieldSpec> {
        let mut out = vec![];
        for &(p, m) in &[(2u32, 1u32), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (5, 2)] {
            out.push(FieldSpec::new(p, m).unwrap());
        }
        out
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for f in small_fields() {
            let q = f.q();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "inv failed in {f:?} for {a}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms_random_triples(which in 0usize..7, a in 0u32..65536, b in 0u32..65536, c in 0u32..65536) {
            let f = small_fields()[which].clone();
            let q = f.q();
            let (a, b, c) = (a % q, b % q, c % q);
            // associativity
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            // commutativity
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            // distributivity
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }

        #[test]
        fn digit_roundtrip(which in 0usize..7, key in 0u128..1_000_000, n in 1usize..6) {
            let f = small_fields()[which].clone();
            let space = (f.q() as u128).pow(n as u32);
            let w = Word::unpack(f.clone(), n, key % space);
            // re-assembling the digit expansion reproduces the word
            let back = Word::from_digits(f.clone(), n, &w.digits()).unwrap();
            prop_assert_eq!(&back, &w);
            // digit tuples of words are always reduced
            prop_assert!(digits_reduced(&f, &w.digits()));
        }
    }
}
