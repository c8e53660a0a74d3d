//! Admissible orders on digit tuples, the induced weight-compatible order on
//! words, and the digitwise containment relations.
//!
//! An admissible order is a total order on natural tuples with the zero
//! tuple least and translation invariance: a < b implies a + c < b + c.
//! The weight-compatible order on words compares Hamming weights first and
//! breaks ties by the admissible order on digit expansions; it is total and
//! returns `Equal` only for identical words.

use std::cmp::{Ordering, Reverse};

use crate::field::Word;
use crate::{Error, Result};

/// Tie-breaking admissible order on digit tuples. Coordinate significance is
/// fixed left to right: position 0 (coordinate 1, digit 1) is most
/// significant.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum OrderSpec {
    #[default]
    Lex,
    DegLex,
    DegRevLex,
}

impl OrderSpec {
    pub fn name(&self) -> &'static str {
        match self {
            OrderSpec::Lex => "lex",
            OrderSpec::DegLex => "deglex",
            OrderSpec::DegRevLex => "degrevlex",
        }
    }

    pub fn parse(s: &str) -> Option<OrderSpec> {
        match s {
            "lex" => Some(OrderSpec::Lex),
            "deglex" => Some(OrderSpec::DegLex),
            "degrevlex" => Some(OrderSpec::DegRevLex),
            _ => None,
        }
    }
}

fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

fn cmp_degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| {
        // equal degree: rightmost differing position, larger digit is smaller
        for (x, y) in a.iter().zip(b.iter()).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    })
}

/// Compare two natural tuples under the chosen admissible order.
pub fn cmp_tuples(a: &[u32], b: &[u32], spec: OrderSpec) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(match spec {
        OrderSpec::Lex => cmp_lex(a, b),
        OrderSpec::DegLex => {
            let da: u64 = a.iter().map(|&x| x as u64).sum();
            let db: u64 = b.iter().map(|&x| x as u64).sum();
            da.cmp(&db).then_with(|| cmp_lex(a, b))
        }
        OrderSpec::DegRevLex => cmp_degrevlex(a, b),
    })
}

/// Weight-compatible comparison of words: Hamming weight first, ties broken
/// by the admissible order on digit expansions. `Equal` only for equal words.
pub fn cmp_words(x: &Word, y: &Word, spec: OrderSpec) -> Result<Ordering> {
    if x.spec() != y.spec() || x.len() != y.len() {
        return Err(Error::SpecMismatch);
    }
    Ok(x.weight()
        .cmp(&y.weight())
        .then_with(|| cmp_tuples(&x.digits(), &y.digits(), spec).expect("equal lengths")))
}

/// Digitwise containment: every digit of x's expansion is at most y's.
pub fn digit_le(x: &Word, y: &Word) -> Result<bool> {
    if x.spec() != y.spec() || x.len() != y.len() {
        return Err(Error::SpecMismatch);
    }
    let m = x.spec().m();
    for (&a, &b) in x.entries().iter().zip(y.entries().iter()) {
        for j in 0..m {
            if x.spec().digit(a, j) > y.spec().digit(b, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Containment in the additive monoid: x is digitwise below y and the
/// supports of x and y - x are disjoint. Equivalently every coordinate of x
/// is zero or equal to y's coordinate. Reflexive; over GF(2) it coincides
/// with [`digit_le`].
pub fn covered_by(x: &Word, y: &Word) -> Result<bool> {
    if !digit_le(x, y)? {
        return Ok(false);
    }
    let diff = y.sub(x)?;
    let sx = x.support();
    let sdiff = diff.support();
    Ok(sx.iter().all(|i| !sdiff.contains(i)))
}

/// Weight-compatible comparison on raw entry slices of the same field and
/// length, avoiding word construction in scan loops. Agrees with
/// [`cmp_words`] on valid inputs.
pub(crate) fn cmp_entries(
    spec: &crate::field::FieldSpec,
    a: &[u32],
    b: &[u32],
    order: OrderSpec,
) -> Ordering {
    let wa = a.iter().filter(|&&e| e != 0).count();
    let wb = b.iter().filter(|&&e| e != 0).count();
    wa.cmp(&wb).then_with(|| cmp_entry_digits(spec, a, b, order))
}

fn digit_sum(spec: &crate::field::FieldSpec, a: &[u32]) -> u64 {
    let m = spec.m();
    a.iter()
        .map(|&e| (0..m).map(|j| spec.digit(e, j) as u64).sum::<u64>())
        .sum()
}

fn cmp_entry_digits(
    spec: &crate::field::FieldSpec,
    a: &[u32],
    b: &[u32],
    order: OrderSpec,
) -> Ordering {
    let m = spec.m();
    let lex = |a: &[u32], b: &[u32]| {
        for (&x, &y) in a.iter().zip(b) {
            for j in 0..m {
                match spec.digit(x, j).cmp(&spec.digit(y, j)) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
        }
        Ordering::Equal
    };
    match order {
        OrderSpec::Lex => lex(a, b),
        OrderSpec::DegLex => digit_sum(spec, a)
            .cmp(&digit_sum(spec, b))
            .then_with(|| lex(a, b)),
        OrderSpec::DegRevLex => digit_sum(spec, a).cmp(&digit_sum(spec, b)).then_with(|| {
            for (&x, &y) in a.iter().zip(b).rev() {
                for j in (0..m).rev() {
                    match spec.digit(x, j).cmp(&spec.digit(y, j)) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
            }
            Ordering::Equal
        }),
    }
}

/// Precomputed, `Ord`-comparable sort key realizing an admissible order on a
/// fixed digit tuple. Two keys built with the same [`OrderSpec`] compare
/// exactly as [`cmp_tuples`] does.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AdmKey {
    Lex(Vec<u32>),
    DegLex(u64, Vec<u32>),
    DegRevLex(u64, Vec<Reverse<u32>>),
}

impl AdmKey {
    pub fn new(digits: &[u32], spec: OrderSpec) -> AdmKey {
        match spec {
            OrderSpec::Lex => AdmKey::Lex(digits.to_vec()),
            OrderSpec::DegLex => {
                AdmKey::DegLex(digits.iter().map(|&d| d as u64).sum(), digits.to_vec())
            }
            OrderSpec::DegRevLex => AdmKey::DegRevLex(
                digits.iter().map(|&d| d as u64).sum(),
                digits.iter().rev().map(|&d| Reverse(d)).collect(),
            ),
        }
    }
}
