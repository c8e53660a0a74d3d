//! The error taxonomy of a code under a weight-compatible order:
//! correctable and uncorrectable errors, their minimal/maximal elements
//! under coordinatewise containment, larger halves, and trial sets.
//!
//! A word is correctable when it is the least element of its coset; the
//! correctable set is monotone under [`crate::order::covered_by`]. Trial
//! sets are candidate codeword sets characterized three ways (the defining
//! biconditional, witness intersection on minimal uncorrectable errors, and
//! larger-half coverage); all three are checked independently and reported
//! so disagreements surface as test failures rather than silent results.

use std::collections::HashSet;

use crate::code::{CosetTable, LinearCode};
use crate::field::Word;
use crate::leaders::LeaderSet;
use crate::order::{cmp_entries, cmp_words, OrderSpec};
use crate::scan::{fold_indices, Caps, DenseSet, Exec};
use crate::{Error, Result};

/// Exhaustive classification of the word space into correctable (least in
/// coset) and uncorrectable errors, with the extremal sets under
/// coordinatewise containment.
#[derive(Clone, Debug)]
pub struct ErrorClassification {
    correctable: DenseSet,
    correctable_words: Vec<Word>,
    minimal_uncorrectable: Vec<Word>,
    minimal_keys: HashSet<u128>,
    maximal_correctable: Vec<Word>,
    order: OrderSpec,
}

impl ErrorClassification {
    pub fn order(&self) -> OrderSpec {
        self.order
    }

    /// |E0| = number of cosets.
    pub fn correctable_count(&self) -> u64 {
        self.correctable.len()
    }

    /// |E1| = q^n - |E0|.
    pub fn uncorrectable_count(&self) -> u64 {
        self.correctable.universe() - self.correctable.len()
    }

    pub fn is_correctable_key(&self, key: u64) -> bool {
        self.correctable.contains(key)
    }

    pub fn is_correctable(&self, y: &Word) -> bool {
        self.correctable.contains(y.packed() as u64)
    }

    /// The correctable errors, ascending under the order.
    pub fn correctable_words(&self) -> &[Word] {
        &self.correctable_words
    }

    /// Minimal uncorrectable errors, ascending under the order.
    pub fn minimal_uncorrectable(&self) -> &[Word] {
        &self.minimal_uncorrectable
    }

    pub fn is_minimal_uncorrectable_key(&self, key: u128) -> bool {
        self.minimal_keys.contains(&key)
    }

    /// Maximal correctable errors, ascending under the order.
    pub fn maximal_correctable(&self) -> &[Word] {
        &self.maximal_correctable
    }
}

/// Proper predecessors of the word under coordinatewise containment are the
/// restrictions to proper subsets of its support; fold over bit masks.
fn any_proper_predecessor_outside(
    entries: &[u32],
    support: &[usize],
    pows: &[u64],
    e0: &DenseSet,
) -> bool {
    let w = support.len();
    let contributions: Vec<u64> = support.iter().map(|&i| entries[i] as u64 * pows[i]).collect();
    let full = (1u64 << w) - 1;
    for mask in 0..full {
        let mut key = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            key += contributions[b];
            bits &= bits - 1;
        }
        if !e0.contains(key) {
            return true;
        }
    }
    false
}

/// Classify every word of the space. The correctable set is read off the
/// coset table (the least leader of each coset); the extremal sets are
/// computed by direct containment scans.
pub fn classify_errors(
    code: &LinearCode,
    table: &CosetTable,
    order: OrderSpec,
    caps: &Caps,
    exec: Exec,
) -> Result<ErrorClassification> {
    let total = caps.admit_words(code.word_space())?;
    if table.len() as u128 != code.coset_count() {
        return Err(Error::InternalInconsistency(
            "classification requires a complete coset table".into(),
        ));
    }

    let mut correctable = DenseSet::new(total);
    let mut correctable_words = Vec::with_capacity(table.len());
    for (_, rec) in table.iter() {
        let canonical = rec.canonical();
        correctable.insert(canonical.packed() as u64);
        correctable_words.push(canonical.clone());
    }
    correctable_words.sort_by(|a, b| cmp_words(a, b, order).expect("same spec"));

    let n = code.len();
    let q = code.spec().q() as u64;
    let mut pows = Vec::with_capacity(n);
    let mut acc = 1u64;
    for _ in 0..n {
        pows.push(acc);
        acc = acc.saturating_mul(q);
    }

    // minimal uncorrectable: every proper predecessor is correctable
    let e0 = &correctable;
    let minimal_keys_vec = fold_indices(
        total,
        exec,
        Vec::<u64>::new,
        |mut acc, range| {
            let mut entries = vec![0u32; n];
            for key in range {
                if e0.contains(key) {
                    continue;
                }
                code.unpack_key_into(key, &mut entries);
                let support: Vec<usize> =
                    (0..n).filter(|&i| entries[i] != 0).collect();
                if !any_proper_predecessor_outside(&entries, &support, &pows, e0) {
                    acc.push(key);
                }
            }
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );

    // maximal correctable: no proper successor is correctable
    let maximal_keys: Vec<u64> = correctable_words
        .iter()
        .filter(|x| {
            let base = x.packed() as u64;
            let free: Vec<usize> = (0..n).filter(|&i| x.entries()[i] == 0).collect();
            let mut assignment = vec![0u64; free.len()];
            loop {
                // next nonzero assignment over the free coordinates
                let mut pos = 0;
                loop {
                    if pos == free.len() {
                        return true; // exhausted: maximal
                    }
                    assignment[pos] += 1;
                    if assignment[pos] < q {
                        break;
                    }
                    assignment[pos] = 0;
                    pos += 1;
                }
                let key = base
                    + assignment
                        .iter()
                        .zip(&free)
                        .map(|(&v, &i)| v * pows[i])
                        .sum::<u64>();
                if e0.contains(key) {
                    return false;
                }
            }
        })
        .map(|x| x.packed() as u64)
        .collect();

    let mut minimal_uncorrectable: Vec<Word> = minimal_keys_vec
        .into_iter()
        .map(|k| code.word_from_key(k as u128))
        .collect();
    minimal_uncorrectable.sort_by(|a, b| cmp_words(a, b, order).expect("same spec"));
    let minimal_keys = minimal_uncorrectable.iter().map(|w| w.packed()).collect();

    let mut maximal_correctable: Vec<Word> = maximal_keys
        .into_iter()
        .map(|k| code.word_from_key(k as u128))
        .collect();
    maximal_correctable.sort_by(|a, b| cmp_words(a, b, order).expect("same spec"));

    Ok(ErrorClassification {
        correctable,
        correctable_words,
        minimal_uncorrectable,
        minimal_keys,
        maximal_correctable,
        order,
    })
}

/// Codewords whose subtraction strictly lowers y in the order. Empty exactly
/// when y is correctable. Sorted ascending under the order.
pub fn reducing_codewords(
    code: &LinearCode,
    y: &Word,
    order: OrderSpec,
    caps: &Caps,
) -> Result<Vec<Word>> {
    if y.spec() != code.spec() || y.len() != code.len() {
        return Err(Error::SpecMismatch);
    }
    let total = caps.admit_words(code.codeword_count())?;
    let spec = code.spec().clone();
    let mut out = Vec::new();
    for msg in 0..total {
        let cw = code.codeword_from_msg(msg);
        let diff: Vec<u32> = y
            .entries()
            .iter()
            .zip(&cw)
            .map(|(&a, &b)| spec.sub(a, b))
            .collect();
        if cmp_entries(&spec, &diff, y.entries(), order) == std::cmp::Ordering::Less {
            out.push(Word::new(spec.clone(), cw)?);
        }
    }
    out.sort_by(|a, b| cmp_words(a, b, order).expect("same spec"));
    Ok(out)
}

/// Larger halves of a nonzero codeword: the minimal words u covered by c
/// (coordinatewise) with u - c strictly below u. Sorted ascending.
pub fn larger_halves(code: &LinearCode, c: &Word, order: OrderSpec) -> Result<Vec<Word>> {
    if c.spec() != code.spec() || c.len() != code.len() {
        return Err(Error::SpecMismatch);
    }
    if c.is_zero() {
        return Err(Error::ZeroCodeword);
    }
    let spec = code.spec().clone();
    let support = c.support();
    let w = support.len();

    // words covered by c are its restrictions to subsets of the support
    let mut qualifying: HashSet<u64> = HashSet::new();
    for mask in 1u64..(1 << w) {
        let mut u = vec![0u32; c.len()];
        for (b, &i) in support.iter().enumerate() {
            if mask & (1 << b) != 0 {
                u[i] = c.entries()[i];
            }
        }
        let diff: Vec<u32> = u
            .iter()
            .zip(c.entries())
            .map(|(&a, &b)| spec.sub(a, b))
            .collect();
        if cmp_entries(&spec, &diff, &u, order) == std::cmp::Ordering::Less {
            qualifying.insert(mask);
        }
    }

    let minimal: Vec<u64> = qualifying
        .iter()
        .copied()
        .filter(|&mask| {
            // no qualifying proper submask
            let mut sub = (mask - 1) & mask;
            loop {
                if sub == 0 {
                    return true;
                }
                if qualifying.contains(&sub) {
                    return false;
                }
                sub = (sub - 1) & mask;
            }
        })
        .collect();

    let mut out: Vec<Word> = minimal
        .into_iter()
        .map(|mask| {
            let mut u = vec![0u32; c.len()];
            for (b, &i) in support.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    u[i] = c.entries()[i];
                }
            }
            Word::new(spec.clone(), u).expect("valid entries")
        })
        .collect();
    out.sort_by(|a, b| cmp_words(a, b, order).expect("same spec"));
    Ok(out)
}

/// The three independent trial-set characterizations. They provably agree;
/// a disagreement observed here is a defect, so callers assert agreement
/// rather than trusting any single flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialSetCheck {
    /// Defining biconditional: y correctable iff y stays at or below y + c
    /// for every candidate c.
    pub definition: bool,
    /// Every minimal uncorrectable error has a reducing candidate.
    pub witness: bool,
    /// Minimal uncorrectable errors are covered by candidate larger halves.
    pub larger_half_cover: bool,
}

impl TrialSetCheck {
    pub fn agree(&self) -> bool {
        self.definition == self.witness && self.witness == self.larger_half_cover
    }

    pub fn is_trial_set(&self) -> bool {
        self.definition
    }
}

/// Evaluate all three trial-set characterizations for a candidate set of
/// nonzero codewords.
pub fn check_trial_set(
    code: &LinearCode,
    cls: &ErrorClassification,
    set: &[Word],
    order: OrderSpec,
    caps: &Caps,
    exec: Exec,
) -> Result<TrialSetCheck> {
    let total = caps.admit_words(code.word_space())?;
    let spec = code.spec().clone();
    for c in set {
        if c.spec() != &spec || c.len() != code.len() {
            return Err(Error::SpecMismatch);
        }
        if c.is_zero() {
            return Err(Error::ZeroCodeword);
        }
        if code.syndrome_key_of(c)? != 0 {
            return Err(Error::SpecMismatch); // not a codeword of this code
        }
    }
    let set_entries: Vec<&[u32]> = set.iter().map(|w| w.entries()).collect();
    let n = code.len();

    // The biconditional compares y against its translate by each candidate.
    // Subtraction keeps the three characterizations consistent for q > 2:
    // the witness set and the larger halves are subtraction-based, and a
    // candidate set need not be closed under negation. Adding instead would
    // test the negated candidate set. Over GF(2) the two coincide.
    let definition = crate::scan::all(total, exec, |key| {
        let mut entries = vec![0u32; n];
        code.unpack_key_into(key, &mut entries);
        let stays_low = set_entries.iter().all(|c| {
            let diff: Vec<u32> = entries
                .iter()
                .zip(c.iter())
                .map(|(&a, &b)| spec.sub(a, b))
                .collect();
            cmp_entries(&spec, &diff, &entries, order) != std::cmp::Ordering::Less
        });
        stays_low == cls.is_correctable_key(key)
    });

    let witness = cls.minimal_uncorrectable().iter().all(|y| {
        set_entries.iter().any(|c| {
            let diff: Vec<u32> = y
                .entries()
                .iter()
                .zip(c.iter())
                .map(|(&a, &b)| spec.sub(a, b))
                .collect();
            cmp_entries(&spec, &diff, y.entries(), order) == std::cmp::Ordering::Less
        })
    });

    let mut half_keys: HashSet<u128> = HashSet::new();
    for c in set {
        for u in larger_halves(code, c, order)? {
            half_keys.insert(u.packed());
        }
    }
    let larger_half_cover = cls
        .minimal_uncorrectable()
        .iter()
        .all(|y| half_keys.contains(&y.packed()));

    Ok(TrialSetCheck {
        definition,
        witness,
        larger_half_cover,
    })
}

/// Filter the leader codewords down to those with a minimal-uncorrectable
/// larger half whose correction lands in the correctable set; the result is
/// still a trial set (verified before returning).
pub fn trial_set_from_leaders(
    code: &LinearCode,
    cls: &ErrorClassification,
    leaders: &LeaderSet,
    order: OrderSpec,
    caps: &Caps,
    exec: Exec,
) -> Result<Vec<Word>> {
    let spec = code.spec().clone();
    let kept: Vec<Word> = leaders
        .words()
        .iter()
        .filter(|c| {
            larger_halves(code, c, order)
                .expect("leader codewords are nonzero")
                .iter()
                .any(|u| {
                    cls.is_minimal_uncorrectable_key(u.packed())
                        && cls.is_correctable(&u.sub(c).expect("same spec"))
                })
        })
        .cloned()
        .collect();
    let _ = spec;
    let check = check_trial_set(code, cls, &kept, order, caps, exec)?;
    if !check.is_trial_set() {
        return Err(Error::NotTrialSet);
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::brute_force_coset_table;
    use crate::field::FieldSpec;
    use crate::ideal::build_ideal;
    use crate::leaders::leader_codewords;

    fn repetition3() -> LinearCode {
        let f2 = FieldSpec::new(2, 1).unwrap();
        LinearCode::new(f2, vec![vec![1, 1, 1]]).unwrap()
    }

    fn tetracode() -> LinearCode {
        let f3 = FieldSpec::new(3, 1).unwrap();
        LinearCode::new(f3, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap()
    }

    fn classification(code: &LinearCode) -> ErrorClassification {
        let table =
            brute_force_coset_table(code, OrderSpec::Lex, &Caps::default(), Exec::Auto).unwrap();
        classify_errors(code, &table, OrderSpec::Lex, &Caps::default(), Exec::Sequential).unwrap()
    }

    fn word(code: &LinearCode, entries: &[u32]) -> Word {
        Word::new(code.spec().clone(), entries.to_vec()).unwrap()
    }

    #[test]
    fn repetition_classification() {
        let code = repetition3();
        let cls = classification(&code);
        assert_eq!(cls.correctable_count(), 4);
        assert_eq!(cls.uncorrectable_count(), 4);
        let e0: Vec<Vec<u32>> = cls
            .correctable_words()
            .iter()
            .map(|w| w.entries().to_vec())
            .collect();
        assert_eq!(
            e0,
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        // zero is always correctable
        assert!(cls.is_correctable(&code.zero_word()));

        let m1: Vec<Vec<u32>> = cls
            .minimal_uncorrectable()
            .iter()
            .map(|w| w.entries().to_vec())
            .collect();
        assert_eq!(m1, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn reducing_codewords_examples() {
        let code = repetition3();
        let caps = Caps::default();
        assert!(reducing_codewords(&code, &code.zero_word(), OrderSpec::Lex, &caps)
            .unwrap()
            .is_empty());
        let got = reducing_codewords(&code, &word(&code, &[1, 1, 0]), OrderSpec::Lex, &caps)
            .unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].entries(), &[1, 1, 1]);
    }

    #[test]
    fn reducing_codewords_empty_iff_correctable() {
        for code in [repetition3(), tetracode()] {
            let cls = classification(&code);
            for key in 0..code.word_space() {
                let y = code.word_from_key(key);
                let empty = reducing_codewords(&code, &y, OrderSpec::Lex, &Caps::default())
                    .unwrap()
                    .is_empty();
                assert_eq!(empty, cls.is_correctable(&y), "mismatch at {y:?}");
            }
        }
    }

    #[test]
    fn larger_halves_examples() {
        let code = repetition3();
        let ones = word(&code, &[1, 1, 1]);
        let halves = larger_halves(&code, &ones, OrderSpec::Lex).unwrap();
        let got: Vec<Vec<u32>> = halves.iter().map(|w| w.entries().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        for u in &halves {
            assert!(ones.weight() <= 2 * u.weight());
            assert!(2 * u.weight() <= ones.weight() + 2);
        }
        assert!(matches!(
            larger_halves(&code, &code.zero_word(), OrderSpec::Lex),
            Err(Error::ZeroCodeword)
        ));
    }

    #[test]
    fn larger_halves_are_uncorrectable() {
        for code in [repetition3(), tetracode()] {
            let cls = classification(&code);
            let caps = Caps::default();
            for cw in code.codewords(&caps).unwrap() {
                if cw.is_zero() {
                    continue;
                }
                for u in larger_halves(&code, &cw, OrderSpec::Lex).unwrap() {
                    assert!(!cls.is_correctable(&u), "{u:?} should be uncorrectable");
                    assert!(cw.weight() <= 2 * u.weight());
                    assert!(2 * u.weight() <= cw.weight() + 2);
                }
            }
        }
    }

    #[test]
    fn trial_set_checks_repetition() {
        let code = repetition3();
        let cls = classification(&code);
        let caps = Caps::default();
        let ones = word(&code, &[1, 1, 1]);
        let check = check_trial_set(&code, &cls, &[ones], OrderSpec::Lex, &caps, Exec::Sequential)
            .unwrap();
        assert!(check.agree() && check.is_trial_set());

        // the empty set is not a trial set: vacuously every word passes the
        // biconditional's right side but uncorrectable words exist
        let check =
            check_trial_set(&code, &cls, &[], OrderSpec::Lex, &caps, Exec::Sequential).unwrap();
        assert!(check.agree() && !check.is_trial_set());
    }

    #[test]
    fn leader_codewords_form_trial_set() {
        for code in [repetition3(), tetracode()] {
            let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
            let cls = classify_errors(
                &code,
                reg.table(),
                OrderSpec::Lex,
                &Caps::default(),
                Exec::Sequential,
            )
            .unwrap();
            let set = leader_codewords(&reg, false).unwrap();
            let check = check_trial_set(
                &code,
                &cls,
                set.words(),
                OrderSpec::Lex,
                &Caps::default(),
                Exec::Sequential,
            )
            .unwrap();
            assert!(check.agree() && check.is_trial_set());
        }
    }

    #[test]
    fn filtered_trial_set_repetition() {
        let code = repetition3();
        let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
        let cls = classify_errors(
            &code,
            reg.table(),
            OrderSpec::Lex,
            &Caps::default(),
            Exec::Sequential,
        )
        .unwrap();
        let set = leader_codewords(&reg, false).unwrap();
        let trial = trial_set_from_leaders(
            &code,
            &cls,
            &set,
            OrderSpec::Lex,
            &Caps::default(),
            Exec::Sequential,
        )
        .unwrap();
        assert_eq!(trial.len(), 1);
        assert_eq!(trial[0].entries(), &[1, 1, 1]);
    }

    #[test]
    fn monotone_structure_under_coverage() {
        use crate::order::covered_by;
        for code in [repetition3(), tetracode()] {
            let cls = classification(&code);
            for a in 0..code.word_space() {
                let x = code.word_from_key(a);
                for b in 0..code.word_space() {
                    if a == b {
                        continue;
                    }
                    let y = code.word_from_key(b);
                    if covered_by(&x, &y).unwrap() {
                        // uncorrectable propagates upward, correctable downward
                        assert!(
                            !(cls.is_correctable(&y) && !cls.is_correctable(&x)),
                            "monotonicity violated at {x:?} <= {y:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_codeword_candidates() {
        let code = repetition3();
        let cls = classification(&code);
        let not_cw = word(&code, &[1, 1, 0]);
        assert!(matches!(
            check_trial_set(
                &code,
                &cls,
                &[not_cw],
                OrderSpec::Lex,
                &Caps::default(),
                Exec::Sequential
            ),
            Err(Error::SpecMismatch)
        ));
    }
}
