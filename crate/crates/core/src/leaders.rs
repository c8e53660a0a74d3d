//! Leader codewords, test-set decoding, and Voronoi/boundary geometry.
//!
//! A leader codeword is a nonzero codeword of the form v1 + e - v2 where e
//! is a canonical generator extending v1 without digit wrap, v2 is a coset
//! leader, and v1 with the extended coordinate zeroed is a coset leader.
//! The set is computed from the weak order ideal (every eligible v1 + e is a
//! member); the defining triple enumeration over the full word space is kept
//! as an independent route for verification.
//!
//! The geometry operations (Voronoi regions, distance-1 shells, boundaries,
//! zero neighbours) are oracle-grade exhaustive evaluations behind the
//! enumeration cap; they exist to verify structural claims, not to scale.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::code::{CosetTable, LinearCode};
use crate::field::Word;
use crate::ideal::IdealRegistry;
use crate::order::{cmp_words, OrderSpec};
use crate::scan::{find_first, fold_indices, Caps, DenseSet, Exec};
use crate::{Error, Result};

/// Deduplicated leader codewords with optional audit provenance.
#[derive(Clone, Debug)]
pub struct LeaderSet {
    words: Vec<Word>,
    keys: HashSet<u128>,
    provenance: Option<HashMap<u128, Vec<LeaderTriple>>>,
}

/// One witnessing decomposition of a leader codeword: base + generator at
/// `coordinate` minus `leader`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaderTriple {
    pub base: Word,
    pub coordinate: (usize, usize),
    pub leader: Word,
}

impl LeaderSet {
    /// Leader codewords sorted ascending by the weight-compatible order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.keys.contains(&w.packed())
    }

    pub fn contains_key(&self, key: u128) -> bool {
        self.keys.contains(&key)
    }

    pub fn max_weight(&self) -> u32 {
        self.words.iter().map(|w| w.weight()).max().unwrap_or(0)
    }

    /// Witness triples for a leader codeword, in audit mode.
    pub fn provenance_of(&self, w: &Word) -> Option<&[LeaderTriple]> {
        self.provenance
            .as_ref()?
            .get(&w.packed())
            .map(|v| v.as_slice())
    }
}

/// Compute the leader codewords from a completed registry: for every member
/// w with some support coordinate whose removal leaves a coset leader, emit
/// w - v for every coset leader v of w's coset other than w itself.
pub fn leader_codewords(reg: &IdealRegistry, audit: bool) -> Result<LeaderSet> {
    let code = reg.code();
    let table = reg.table();
    let mut keys: HashSet<u128> = HashSet::new();
    let mut words: Vec<Word> = Vec::new();
    let mut provenance = audit.then(HashMap::<u128, Vec<LeaderTriple>>::new);

    for key in reg.member_keys() {
        let w = code.word_from_key(key);
        if w.is_zero() {
            continue;
        }
        let eligible: Vec<usize> = w
            .support()
            .into_iter()
            .filter(|&i| {
                table
                    .is_coset_leader(code, &w.zeroed_at(i))
                    .expect("same spec")
            })
            .collect();
        if eligible.is_empty() {
            continue;
        }
        for v in table.coset_leaders_of(code, &w)? {
            if v == &w {
                continue;
            }
            let c = w.sub(v)?;
            debug_assert!(!c.is_zero());
            if keys.insert(c.packed()) {
                words.push(c.clone());
            }
            if let Some(map) = provenance.as_mut() {
                let triples = map.entry(c.packed()).or_default();
                for &i in &eligible {
                    for (gi, gj) in w.generalized_support() {
                        if gi != i {
                            continue;
                        }
                        let mut base = w.entries().to_vec();
                        base[gi] = code.spec().sub(base[gi], code.spec().digit_power(gj as u32));
                        triples.push(LeaderTriple {
                            base: Word::new(code.spec().clone(), base).expect("valid entries"),
                            coordinate: (gi, gj),
                            leader: v.clone(),
                        });
                    }
                }
            }
        }
    }

    words.sort_by(|a, b| cmp_words(a, b, reg.order()).expect("same spec"));
    if let Some(map) = provenance.as_mut() {
        for triples in map.values_mut() {
            triples.sort_by_key(|t| (t.base.packed(), t.coordinate, t.leader.packed()));
            triples.dedup();
        }
    }
    Ok(LeaderSet {
        words,
        keys,
        provenance,
    })
}

/// Independent route: enumerate every defining triple over the full word
/// space and collect the resulting codewords. Returns sorted packed keys.
pub fn leader_codewords_from_definition(
    code: &LinearCode,
    table: &CosetTable,
    caps: &Caps,
    exec: Exec,
) -> Result<BTreeSet<u128>> {
    let total = caps.admit_words(code.word_space())?;
    let spec = code.spec().clone();
    let (n, m, p) = (code.len(), spec.m() as usize, spec.p());

    let out = fold_indices(
        total,
        exec,
        BTreeSet::<u128>::new,
        |mut acc, range| {
            let mut entries = vec![0u32; n];
            for key in range {
                code.unpack_key_into(key, &mut entries);
                let v1 = code.word_from_key(key as u128);
                for i in 0..n {
                    for j in 0..m {
                        if spec.digit(entries[i], j as u32) >= p - 1 {
                            continue; // digit would wrap
                        }
                        let dropped = v1.zeroed_at(i);
                        if !table.is_coset_leader(code, &dropped).expect("same spec") {
                            continue;
                        }
                        let mut w_entries = entries.clone();
                        w_entries[i] = spec.add(w_entries[i], spec.digit_power(j as u32));
                        let w = Word::new(spec.clone(), w_entries).expect("valid entries");
                        for v2 in table.coset_leaders_of(code, &w).expect("complete table") {
                            if v2 == &w {
                                continue;
                            }
                            acc.insert(w.sub(v2).expect("same spec").packed());
                        }
                    }
                }
            }
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    Ok(out)
}

/// First word that is neither a coset leader nor reducible by the candidate
/// test set; `None` means the set is a test set.
pub fn test_set_counterexample(
    code: &LinearCode,
    table: &CosetTable,
    set: &[Word],
    caps: &Caps,
    exec: Exec,
) -> Result<Option<Word>> {
    let total = caps.admit_words(code.word_space())?;
    for v in set {
        if v.spec() != code.spec() || v.len() != code.len() {
            return Err(Error::SpecMismatch);
        }
    }
    let set_entries: Vec<&[u32]> = set.iter().map(|w| w.entries()).collect();
    let spec = code.spec().clone();
    let n = code.len();

    let failing = find_first(total, exec, |key| {
        let mut entries = vec![0u32; n];
        code.unpack_key_into(key, &mut entries);
        let w = entries.iter().filter(|&&e| e != 0).count() as u32;
        let syn = code.syndrome_key(&entries);
        let coset_weight = table.record(syn).map(|r| r.weight).unwrap_or(0);
        if w == coset_weight {
            return false; // a coset leader: lies in the leader region
        }
        let reducible = set_entries.iter().any(|v| {
            let diff_weight = entries
                .iter()
                .zip(v.iter())
                .filter(|(&a, &b)| spec.sub(a, b) != 0)
                .count() as u32;
            diff_weight < w
        });
        !reducible
    });
    Ok(failing.map(|key| code.word_from_key(key as u128)))
}

/// Convenience wrapper over [`test_set_counterexample`].
pub fn is_test_set(
    code: &LinearCode,
    table: &CosetTable,
    set: &[Word],
    caps: &Caps,
    exec: Exec,
) -> Result<bool> {
    Ok(test_set_counterexample(code, table, set, caps, exec)?.is_none())
}

/// The least set member (under the weight-compatible order) whose
/// subtraction strictly reduces the Hamming weight of y.
pub fn descent_step(y: &Word, set: &[Word], order: OrderSpec) -> Result<Option<Word>> {
    let mut best: Option<&Word> = None;
    for v in set {
        let diff = y.sub(v)?;
        if diff.weight() >= y.weight() {
            continue;
        }
        best = match best {
            None => Some(v),
            Some(b) if cmp_words(v, b, order)? == std::cmp::Ordering::Less => Some(v),
            keep => keep,
        };
    }
    Ok(best.cloned())
}

/// Result of gradient-like decoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoding {
    /// The residual word: a coset leader of y + C.
    pub error: Word,
    /// The decoded codeword y - error.
    pub codeword: Word,
    /// Number of descent steps taken.
    pub steps: u32,
}

/// Iterate weight-reducing subtractions from the test set until none
/// applies. Terminates because each step strictly reduces the weight. Errors
/// with the stalled witness when the residual is not a coset leader, which
/// proves the candidate set is not a test set.
pub fn decode_gradient(
    code: &LinearCode,
    table: &CosetTable,
    y: &Word,
    set: &[Word],
    order: OrderSpec,
) -> Result<Decoding> {
    let mut e = y.clone();
    let mut steps = 0u32;
    while let Some(v) = descent_step(&e, set, order)? {
        let next = e.sub(&v)?;
        debug_assert!(next.weight() < e.weight());
        e = next;
        steps += 1;
    }
    if !table.is_coset_leader(code, &e)? {
        return Err(Error::NotReducible {
            witness: e.entries().to_vec(),
        });
    }
    Ok(Decoding {
        codeword: y.sub(&e)?,
        error: e,
        steps,
    })
}

/// Exact Voronoi membership: d(y, c) <= d(y, c') for every codeword c' != c.
pub fn voronoi_contains(
    code: &LinearCode,
    c: &Word,
    y: &Word,
    caps: &Caps,
    exec: Exec,
) -> Result<bool> {
    if c.spec() != code.spec() || c.len() != code.len() {
        return Err(Error::SpecMismatch);
    }
    let total = caps.admit_words(code.codeword_count())?;
    let d_to_c = y.sub(c)?.weight();
    let y_entries = y.entries().to_vec();
    let c_key = c.packed();
    let spec = code.spec().clone();
    Ok(crate::scan::all(total, exec, |msg| {
        let other = code.codeword_from_msg(msg);
        if code.pack_entries(&other) == c_key {
            return true;
        }
        let d = y_entries
            .iter()
            .zip(&other)
            .filter(|(&a, &b)| spec.sub(a, b) != 0)
            .count() as u32;
        d_to_c <= d
    }))
}

/// Dense set over the packed word space from a word list.
pub fn word_set(code: &LinearCode, words: &[Word], caps: &Caps) -> Result<DenseSet> {
    let universe = caps.admit_words(code.word_space())?;
    let mut set = DenseSet::new(universe);
    for w in words {
        if w.spec() != code.spec() || w.len() != code.len() {
            return Err(Error::SpecMismatch);
        }
        set.insert(w.packed() as u64);
    }
    Ok(set)
}

/// Words of a dense set, ascending by packed key.
pub fn words_of_set(code: &LinearCode, set: &DenseSet) -> Vec<Word> {
    set.iter().map(|k| code.word_from_key(k as u128)).collect()
}

/// The distance-1 shell of a set A: words whose minimum Hamming distance to
/// A is exactly 1 (members of A are at distance 0 and excluded).
pub fn shell(code: &LinearCode, a: &DenseSet, exec: Exec) -> DenseSet {
    let n = code.len();
    let q = code.spec().q() as u64;
    let universe = a.universe();
    if a.is_empty() {
        return DenseSet::new(universe);
    }
    let mut pows = Vec::with_capacity(n);
    let mut acc = 1u64;
    for _ in 0..n {
        pows.push(acc);
        acc = acc.saturating_mul(q);
    }
    DenseSet::from_predicate(universe, exec, |key| {
        if a.contains(key) {
            return false;
        }
        let mut rem = key;
        for i in 0..n {
            let yi = rem % q;
            rem /= q;
            let base = key - yi * pows[i];
            for t in 0..q {
                if t != yi && a.contains(base + t * pows[i]) {
                    return true;
                }
            }
        }
        false
    })
}

/// The boundary of a set: its shell united with the shell of its complement.
pub fn boundary(code: &LinearCode, a: &DenseSet, exec: Exec) -> DenseSet {
    let outer = shell(code, a, exec);
    let inner = shell(code, &a.complement(), exec);
    outer.union(&inner)
}

/// Minimum distance from every word to the code, as a dense table.
fn distance_table(code: &LinearCode, caps: &Caps, exec: Exec) -> Result<Vec<u8>> {
    let total = caps.admit_words(code.word_space())?;
    let cw_count = caps.admit_words(code.codeword_count())?;
    let codewords: Vec<Vec<u32>> = (0..cw_count).map(|m| code.codeword_from_msg(m)).collect();
    let n = code.len();
    let spec = code.spec().clone();
    let table = fold_indices(
        total,
        exec,
        || Vec::<(u64, u8)>::new(),
        |mut acc, range| {
            let mut entries = vec![0u32; n];
            for key in range {
                code.unpack_key_into(key, &mut entries);
                let mut best = u8::MAX;
                for cw in &codewords {
                    let d = entries
                        .iter()
                        .zip(cw)
                        .filter(|(&a, &b)| spec.sub(a, b) != 0)
                        .count() as u8;
                    best = best.min(d);
                    if best == 0 {
                        break;
                    }
                }
                acc.push((key, best));
            }
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    let mut out = vec![0u8; total as usize];
    for (key, d) in table {
        out[key as usize] = d;
    }
    Ok(out)
}

/// Zero neighbours: nonzero codewords whose Voronoi region's boundary meets
/// the boundary of the leader region, by exhaustive evaluation of the
/// defining intersection. Sorted by the given order.
pub fn zero_neighbours(
    code: &LinearCode,
    order: OrderSpec,
    caps: &Caps,
    exec: Exec,
) -> Result<Vec<Word>> {
    let total = caps.admit_words(code.word_space())?;
    let dmin = distance_table(code, caps, exec)?;
    let region_of = |cw: &[u32]| -> DenseSet {
        let spec = code.spec().clone();
        let n = code.len();
        DenseSet::from_predicate(total, exec, |key| {
            let mut entries = vec![0u32; n];
            code.unpack_key_into(key, &mut entries);
            let d = entries
                .iter()
                .zip(cw)
                .filter(|(&a, &b)| spec.sub(a, b) != 0)
                .count() as u8;
            d == dmin[key as usize]
        })
    };

    let zero_boundary = boundary(code, &region_of(&vec![0; code.len()]), exec);
    let cw_count = caps.admit_words(code.codeword_count())?;
    let mut out = Vec::new();
    for msg in 1..cw_count {
        let cw = code.codeword_from_msg(msg);
        if cw.iter().all(|&e| e == 0) {
            continue;
        }
        let b = boundary(code, &region_of(&cw), exec);
        if b.intersects(&zero_boundary) {
            out.push(Word::new(code.spec().clone(), cw)?);
        }
    }
    out.sort_by(|a, b| cmp_words(a, b, order).expect("same spec"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::brute_force_coset_table;
    use crate::field::FieldSpec;
    use crate::ideal::build_ideal;

    fn repetition3() -> LinearCode {
        let f2 = FieldSpec::new(2, 1).unwrap();
        LinearCode::new(f2, vec![vec![1, 1, 1]]).unwrap()
    }

    fn tetracode() -> LinearCode {
        let f3 = FieldSpec::new(3, 1).unwrap();
        LinearCode::new(f3, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap()
    }

    fn word(code: &LinearCode, entries: &[u32]) -> Word {
        Word::new(code.spec().clone(), entries.to_vec()).unwrap()
    }

    #[test]
    fn repetition_leader_codewords() {
        let code = repetition3();
        let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
        let set = leader_codewords(&reg, false).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.words()[0].entries(), &[1, 1, 1]);
    }

    #[test]
    fn definition_route_matches_recipe() {
        for code in [repetition3(), tetracode()] {
            let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
            let recipe = leader_codewords(&reg, false).unwrap();
            let defn = leader_codewords_from_definition(
                &code,
                reg.table(),
                &Caps::default(),
                Exec::Sequential,
            )
            .unwrap();
            let recipe_keys: BTreeSet<u128> =
                recipe.words().iter().map(|w| w.packed()).collect();
            assert_eq!(recipe_keys, defn);
        }
    }

    #[test]
    fn test_set_checks() {
        let code = repetition3();
        let oracle =
            brute_force_coset_table(&code, OrderSpec::Lex, &Caps::default(), Exec::Auto).unwrap();
        let ones = word(&code, &[1, 1, 1]);
        assert!(is_test_set(&code, &oracle, &[ones], &Caps::default(), Exec::Sequential).unwrap());
        // the empty set fails on any non-leader, the least being 110
        let cx = test_set_counterexample(&code, &oracle, &[], &Caps::default(), Exec::Sequential)
            .unwrap()
            .expect("empty set cannot be a test set here");
        assert_eq!(cx.weight(), 2);
    }

    #[test]
    fn descent_and_decode() {
        let code = repetition3();
        let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
        let set = leader_codewords(&reg, false).unwrap();
        let y = word(&code, &[1, 1, 0]);
        let step = descent_step(&y, set.words(), OrderSpec::Lex).unwrap().unwrap();
        assert_eq!(step.entries(), &[1, 1, 1]);
        let dec = decode_gradient(&code, reg.table(), &y, set.words(), OrderSpec::Lex).unwrap();
        assert_eq!(dec.error.entries(), &[0, 0, 1]);
        assert_eq!(dec.codeword.entries(), &[1, 1, 1]);
        assert_eq!(dec.steps, 1);

        // zero word: no step, decodes to itself
        let zero = code.zero_word();
        assert!(descent_step(&zero, set.words(), OrderSpec::Lex).unwrap().is_none());
        let dec = decode_gradient(&code, reg.table(), &zero, set.words(), OrderSpec::Lex).unwrap();
        assert_eq!(dec.steps, 0);
        assert!(dec.error.is_zero() && dec.codeword.is_zero());
    }

    #[test]
    fn decode_word_already_leader() {
        let code = tetracode();
        let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
        let set = leader_codewords(&reg, false).unwrap();
        let y = word(&code, &[1, 0, 0, 0]);
        let dec = decode_gradient(&code, reg.table(), &y, set.words(), OrderSpec::Lex).unwrap();
        assert_eq!(dec.error, y);
        assert!(dec.codeword.is_zero());
    }

    #[test]
    fn voronoi_examples() {
        let code = repetition3();
        let caps = Caps::default();
        let ones = word(&code, &[1, 1, 1]);
        let y = word(&code, &[1, 1, 0]);
        assert!(voronoi_contains(&code, &ones, &y, &caps, Exec::Sequential).unwrap());
        // overlapping regions for the [2,1] code
        let f2 = FieldSpec::new(2, 1).unwrap();
        let c2 = LinearCode::new(f2.clone(), vec![vec![1, 1]]).unwrap();
        let y10 = Word::new(f2.clone(), vec![1, 0]).unwrap();
        let zero = c2.zero_word();
        let ones2 = Word::new(f2, vec![1, 1]).unwrap();
        assert!(voronoi_contains(&c2, &zero, &y10, &caps, Exec::Sequential).unwrap());
        assert!(voronoi_contains(&c2, &ones2, &y10, &caps, Exec::Sequential).unwrap());
    }

    #[test]
    fn leader_region_is_voronoi_region_of_zero() {
        let caps = Caps::default();
        for code in [repetition3(), tetracode()] {
            let oracle =
                brute_force_coset_table(&code, OrderSpec::Lex, &caps, Exec::Auto).unwrap();
            let zero = code.zero_word();
            for key in 0..code.word_space() {
                let y = code.word_from_key(key);
                let in_region =
                    voronoi_contains(&code, &zero, &y, &caps, Exec::Sequential).unwrap();
                let is_leader = oracle.is_coset_leader(&code, &y).unwrap();
                assert_eq!(in_region, is_leader, "mismatch at {y:?}");
            }
        }
    }

    #[test]
    fn shell_of_leader_region() {
        let code = repetition3();
        let caps = Caps::default();
        let oracle = brute_force_coset_table(&code, OrderSpec::Lex, &caps, Exec::Auto).unwrap();
        let leaders: Vec<Word> = oracle
            .iter()
            .flat_map(|(_, r)| r.leaders.iter().cloned())
            .collect();
        let d0 = word_set(&code, &leaders, &caps).unwrap();
        let x = shell(&code, &d0, Exec::Sequential);
        let mut got: Vec<Vec<u32>> = words_of_set(&code, &x)
            .iter()
            .map(|w| w.entries().to_vec())
            .collect();
        got.sort();
        // 111 is at distance 2 from every leader, so only the weight-2 words
        assert_eq!(got, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);

        // empty set has an empty shell
        let empty = DenseSet::new(8);
        assert!(shell(&code, &empty, Exec::Sequential).is_empty());
        // the shell of the full space is empty: every word is at distance 0
        let full = empty.complement();
        assert!(shell(&code, &full, Exec::Sequential).is_empty());
    }

    #[test]
    fn repetition_zero_neighbours() {
        let code = repetition3();
        let z = zero_neighbours(&code, OrderSpec::Lex, &Caps::default(), Exec::Sequential).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].entries(), &[1, 1, 1]);
    }

    #[test]
    fn leader_codewords_within_zero_neighbours() {
        for code in [repetition3(), tetracode()] {
            let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
            let set = leader_codewords(&reg, false).unwrap();
            let z = zero_neighbours(&code, OrderSpec::Lex, &Caps::default(), Exec::Auto).unwrap();
            let zkeys: HashSet<u128> = z.iter().map(|w| w.packed()).collect();
            for w in set.words() {
                assert!(zkeys.contains(&w.packed()), "{w:?} not a zero neighbour");
            }
        }
    }

    #[test]
    fn audit_provenance_reconstructs_leaders() {
        let code = tetracode();
        let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), true).unwrap();
        let set = leader_codewords(&reg, true).unwrap();
        for w in set.words() {
            let triples = set.provenance_of(w).expect("audit provenance present");
            assert!(!triples.is_empty());
            for t in triples {
                // base + generator - leader == w
                let spec = code.spec();
                let mut ext = t.base.entries().to_vec();
                ext[t.coordinate.0] =
                    spec.add(ext[t.coordinate.0], spec.digit_power(t.coordinate.1 as u32));
                let ext = Word::new(spec.clone(), ext).unwrap();
                assert_eq!(&ext.sub(&t.leader).unwrap(), w);
                // the witness conditions hold
                assert!(reg.is_coset_leader(&t.leader).unwrap());
                assert!(reg
                    .is_coset_leader(&t.base.zeroed_at(t.coordinate.0))
                    .unwrap());
            }
        }
    }
}
