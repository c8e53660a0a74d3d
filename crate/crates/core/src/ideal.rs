//! Incremental construction of the weak order ideal of the coset leaders.
//!
//! Starting from the zero word, members are expanded along canonical
//! generators under two criteria:
//!
//! * a member whose weight equals its coset weight (a coset leader) extends
//!   by every wrap-free generator;
//! * a member whose weight exceeds its coset weight by one extends only at
//!   coordinates of its own support, wrap-free, and only when zeroing that
//!   coordinate yields a known coset leader.
//!
//! Processing is best-first under the weight-compatible order, so all words
//! of weight w are handled before any word of weight w + 1. The first member
//! popped for a fresh syndrome therefore fixes that coset's weight and is
//! its least leader, and every coset-leader query issued by the second
//! criterion refers to strictly lighter, already finalized data. The
//! resulting table contains every coset leader of the code; the brute-force
//! oracle table is the independent check.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::code::{CosetRecord, CosetTable, LinearCode};
use crate::order::{AdmKey, OrderSpec};
use crate::scan::Caps;
use crate::{Error, Result};

/// Construction counters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdealStats {
    /// Words popped from the queue (= number of members).
    pub words_processed: u64,
    /// Maximum queue length observed.
    pub queue_peak: usize,
    /// Members retained without expansion (weight >= coset weight + 2).
    pub unexpanded: u64,
}

/// How a member entered the ideal: its first discovered parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub parent: u128,
    /// 0-based (coordinate, digit) of the generator added to the parent.
    pub coordinate: (usize, usize),
    /// 1 or 2: the criterion the parent expanded under.
    pub criterion: u8,
}

/// The computed weak order ideal: member set, per-syndrome coset records,
/// and construction metadata. Immutable once built.
#[derive(Clone, Debug)]
pub struct IdealRegistry {
    code: LinearCode,
    order: OrderSpec,
    members: HashSet<u128>,
    table: CosetTable,
    stats: IdealStats,
    provenance: Option<HashMap<u128, Provenance>>,
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct HeapItem {
    weight: u32,
    key: AdmKey,
    packed: u128,
}

struct BuildRecord {
    weight: u32,
    /// Leaders in pop order, i.e. ascending under the weight-compatible order.
    leaders: Vec<u128>,
    leader_keys: HashSet<u128>,
}

/// Build the weak order ideal of the coset leaders of `code`, producing all
/// coset leaders without enumerating the full word space.
pub fn build_ideal(
    code: &LinearCode,
    order: OrderSpec,
    caps: &Caps,
    audit: bool,
) -> Result<IdealRegistry> {
    caps.admit_cosets(code.coset_count())?;

    let spec = code.spec().clone();
    let (n, m, p) = (code.len(), spec.m() as usize, spec.p());
    let expected_cosets = code.coset_count();

    let mut heap: BinaryHeap<Reverse<HeapItem>> = BinaryHeap::new();
    let mut members: HashSet<u128> = HashSet::new();
    let mut records: HashMap<u128, BuildRecord> = HashMap::new();
    let mut provenance = audit.then(HashMap::new);
    let mut stats = IdealStats::default();

    let zero = code.zero_word();
    members.insert(0);
    heap.push(Reverse(HeapItem {
        weight: 0,
        key: AdmKey::new(&zero.digits(), order),
        packed: 0,
    }));

    let mut entries = vec![0u32; n];
    let mut child_entries = vec![0u32; n];
    let mut drop_entries = vec![0u32; n];
    let mut last_weight = 0u32;

    while let Some(Reverse(item)) = heap.pop() {
        stats.words_processed += 1;
        let w = item.weight;
        if w < last_weight {
            return Err(Error::InternalInconsistency(format!(
                "queue popped weight {w} after weight {last_weight}"
            )));
        }
        last_weight = w;

        let mut key = item.packed;
        let q = spec.q() as u128;
        for e in entries.iter_mut() {
            *e = (key % q) as u32;
            key /= q;
        }
        let syn = code.syndrome_key(&entries);

        let coset_weight;
        let is_leader;
        match records.get_mut(&syn) {
            None => {
                // first member of this coset in pop order: by best-first
                // processing it is the least word of the coset in the ideal,
                // hence a coset leader and the canonical one
                records.insert(
                    syn,
                    BuildRecord {
                        weight: w,
                        leaders: vec![item.packed],
                        leader_keys: HashSet::from([item.packed]),
                    },
                );
                coset_weight = w;
                is_leader = true;
            }
            Some(rec) => {
                if w < rec.weight {
                    return Err(Error::InternalInconsistency(format!(
                        "popped weight {w} below coset weight {}",
                        rec.weight
                    )));
                }
                coset_weight = rec.weight;
                is_leader = w == rec.weight;
                if is_leader {
                    rec.leaders.push(item.packed);
                    rec.leader_keys.insert(item.packed);
                }
            }
        }

        if is_leader {
            // criterion 1: every wrap-free generator extension
            for i in 0..n {
                for j in 0..m {
                    if spec.digit(entries[i], j as u32) < p - 1 {
                        enqueue_child(
                            code, order, &entries, &mut child_entries, i, j, item.packed, 1,
                            &mut members, &mut heap, &mut provenance, &mut stats,
                        );
                    }
                }
            }
        } else if w == coset_weight + 1 {
            // criterion 2: extend only at support coordinates whose removal
            // leaves a known coset leader
            for i in 0..n {
                if entries[i] == 0 {
                    continue;
                }
                drop_entries.copy_from_slice(&entries);
                drop_entries[i] = 0;
                let drop_syn = code.syndrome_key(&drop_entries);
                let drop_key = code.pack_entries(&drop_entries);
                let drop_is_leader = records
                    .get(&drop_syn)
                    .is_some_and(|r| r.leader_keys.contains(&drop_key));
                if !drop_is_leader {
                    continue;
                }
                for j in 0..m {
                    if spec.digit(entries[i], j as u32) < p - 1 {
                        enqueue_child(
                            code, order, &entries, &mut child_entries, i, j, item.packed, 2,
                            &mut members, &mut heap, &mut provenance, &mut stats,
                        );
                    }
                }
            }
        } else {
            // weight >= coset weight + 2: retained as a member, never expanded
            stats.unexpanded += 1;
        }
    }

    if records.len() as u128 != expected_cosets {
        return Err(Error::InternalInconsistency(format!(
            "ideal construction found {} cosets, expected {expected_cosets}",
            records.len()
        )));
    }

    let mut table = std::collections::BTreeMap::new();
    for (syn, rec) in records {
        let leaders: Vec<_> = rec
            .leaders
            .iter()
            .map(|&key| code.word_from_key(key))
            .collect();
        debug_assert!(leaders.windows(2).all(|w| {
            crate::order::cmp_words(&w[0], &w[1], order).unwrap() == std::cmp::Ordering::Less
        }));
        table.insert(syn, CosetRecord::from_sorted(rec.weight, leaders));
    }

    Ok(IdealRegistry {
        code: code.clone(),
        order,
        members,
        table: CosetTable::from_records(table, order),
        stats,
        provenance,
    })
}

#[allow(clippy::too_many_arguments)]
fn enqueue_child(
    code: &LinearCode,
    order: OrderSpec,
    parent: &[u32],
    child: &mut [u32],
    i: usize,
    j: usize,
    parent_key: u128,
    criterion: u8,
    members: &mut HashSet<u128>,
    heap: &mut BinaryHeap<Reverse<HeapItem>>,
    provenance: &mut Option<HashMap<u128, Provenance>>,
    stats: &mut IdealStats,
) {
    let spec = code.spec();
    child.copy_from_slice(parent);
    child[i] = spec.add(child[i], spec.digit_power(j as u32));
    let key = code.pack_entries(child);
    if !members.insert(key) {
        return;
    }
    if let Some(map) = provenance {
        map.insert(
            key,
            Provenance {
                parent: parent_key,
                coordinate: (i, j),
                criterion,
            },
        );
    }
    let weight = child.iter().filter(|&&e| e != 0).count() as u32;
    let word = code.word_from_key(key);
    heap.push(Reverse(HeapItem {
        weight,
        key: AdmKey::new(&word.digits(), order),
        packed: key,
    }));
    stats.queue_peak = stats.queue_peak.max(heap.len());
}

impl IdealRegistry {
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn order(&self) -> OrderSpec {
        self.order
    }

    /// The per-syndrome coset table discovered during construction.
    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn stats(&self) -> &IdealStats {
        &self.stats
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn contains_member_key(&self, key: u128) -> bool {
        self.members.contains(&key)
    }

    pub fn member_keys(&self) -> impl Iterator<Item = u128> + '_ {
        self.members.iter().copied()
    }

    /// First discovered parent of a member, in audit mode.
    pub fn provenance_of(&self, key: u128) -> Option<&Provenance> {
        self.provenance.as_ref()?.get(&key)
    }

    pub fn audit(&self) -> bool {
        self.provenance.is_some()
    }

    /// Membership test in the set of coset leaders.
    pub fn is_coset_leader(&self, y: &crate::field::Word) -> Result<bool> {
        self.table.is_coset_leader(&self.code, y)
    }

    /// All coset leaders of the coset of y.
    pub fn coset_leaders_of(&self, y: &crate::field::Word) -> Result<&[crate::field::Word]> {
        self.table.coset_leaders_of(&self.code, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::brute_force_coset_table;
    use crate::field::{FieldSpec, Word};
    use crate::scan::Exec;

    fn repetition3() -> LinearCode {
        let f2 = FieldSpec::new(2, 1).unwrap();
        LinearCode::new(f2, vec![vec![1, 1, 1]]).unwrap()
    }

    fn tetracode() -> LinearCode {
        let f3 = FieldSpec::new(3, 1).unwrap();
        LinearCode::new(f3, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap()
    }

    #[test]
    fn repetition_registry_matches_oracle() {
        let code = repetition3();
        let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
        let oracle =
            brute_force_coset_table(&code, OrderSpec::Lex, &Caps::default(), Exec::Auto).unwrap();
        assert_eq!(reg.table(), &oracle);
        // descendants beyond the leaders are retained as members
        for entries in [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]] {
            let w = Word::new(code.spec().clone(), entries.to_vec()).unwrap();
            assert!(reg.contains_member_key(w.packed()));
        }
    }

    #[test]
    fn tetracode_registry_matches_oracle_and_exceeds_leaders() {
        let code = tetracode();
        for order in [OrderSpec::Lex, OrderSpec::DegLex, OrderSpec::DegRevLex] {
            let reg = build_ideal(&code, order, &Caps::default(), false).unwrap();
            let oracle =
                brute_force_coset_table(&code, order, &Caps::default(), Exec::Auto).unwrap();
            assert_eq!(reg.table(), &oracle);
            assert_eq!(reg.table().len(), 9);
            assert!(reg.table().iter().all(|(_, r)| r.leaders.len() == 1));
            // the ideal is strictly larger than the leader set
            assert!(reg.member_count() > reg.table().leader_count());
        }
    }

    #[test]
    fn full_space_code_has_single_coset() {
        // C = F_q^n: one coset of weight 0, leaders = {0}
        let f4 = FieldSpec::new(2, 2).unwrap();
        let code = LinearCode::new(f4, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
        assert_eq!(reg.table().len(), 1);
        let (_, rec) = reg.table().iter().next().unwrap();
        assert_eq!(rec.weight, 0);
        assert_eq!(rec.leaders.len(), 1);
        assert!(rec.canonical().is_zero());
        // criterion 1 at 0 enqueues every generator; all land in the single
        // coset at weight 1 > 0, so none are leaders but all are members
        for g in crate::field::canonical_generators(code.spec(), 2) {
            assert!(reg.contains_member_key(g.packed()));
        }
    }

    #[test]
    fn two_leader_coset() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let code = LinearCode::new(f2.clone(), vec![vec![1, 1]]).unwrap();
        let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
        let y = Word::new(f2.clone(), vec![1, 0]).unwrap();
        let leaders = reg.coset_leaders_of(&y).unwrap();
        let mut got: Vec<Vec<u32>> = leaders.iter().map(|w| w.entries().to_vec()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn leader_membership_queries() {
        let code = repetition3();
        let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
        let spec = code.spec().clone();
        let y001 = Word::new(spec.clone(), vec![0, 0, 1]).unwrap();
        let y110 = Word::new(spec.clone(), vec![1, 1, 0]).unwrap();
        assert!(reg.is_coset_leader(&y001).unwrap());
        assert!(!reg.is_coset_leader(&y110).unwrap());
        assert!(reg.is_coset_leader(&Word::zero(spec, 3)).unwrap());
        // CL(110 + C) = {001}
        let leaders = reg.coset_leaders_of(&y110).unwrap();
        assert_eq!(leaders.len(), 1);
        assert_eq!(leaders[0].entries(), &[0, 0, 1]);
    }

    #[test]
    fn audit_provenance_links_members() {
        let code = tetracode();
        let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), true).unwrap();
        assert!(reg.audit());
        for key in reg.member_keys() {
            if key == 0 {
                assert!(reg.provenance_of(key).is_none());
                continue;
            }
            let prov = reg.provenance_of(key).expect("every nonzero member has a parent");
            assert!(reg.contains_member_key(prov.parent));
            assert!(prov.criterion == 1 || prov.criterion == 2);
        }
    }

    #[test]
    fn weak_order_ideal_property() {
        // every nonzero member has a wrap-free predecessor in the set
        for code in [repetition3(), tetracode()] {
            let reg = build_ideal(&code, OrderSpec::Lex, &Caps::default(), false).unwrap();
            let spec = code.spec().clone();
            for key in reg.member_keys() {
                if key == 0 {
                    continue;
                }
                let w = code.word_from_key(key);
                let found = w.generalized_support().iter().any(|&(i, j)| {
                    let mut entries = w.entries().to_vec();
                    entries[i] = spec.sub(entries[i], spec.digit_power(j as u32));
                    let pred = Word::new(spec.clone(), entries).unwrap();
                    reg.contains_member_key(pred.packed())
                });
                assert!(found, "member {w:?} has no predecessor in the ideal");
            }
        }
    }
}
