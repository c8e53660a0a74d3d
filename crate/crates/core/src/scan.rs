//! Exhaustive-scan plumbing: enumeration caps, sequential/parallel chunked
//! folds over packed word ranges, and a dense bit set keyed by packed words.
//!
//! Every sequential code path here is always compiled; the `parallel`
//! feature only adds the rayon dispatch. [`Exec::Auto`] picks rayon when the
//! feature is enabled and the range is large enough to amortize the fork
//! cost, which keeps single-threaded builds and tiny scans on the plain
//! loop. Benches compare the two paths on identical workloads.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::{Error, Result};

/// Work-item count below which forking into rayon costs more than it saves.
pub const PARALLEL_THRESHOLD: u64 = 1 << 13;

/// Items per chunk handed to one worker.
const CHUNK: u64 = 4096;

/// Execution strategy for exhaustive scans.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    /// Plain loop on the calling thread.
    Sequential,
    /// Chunked rayon scan. Falls back to sequential when the crate is built
    /// without the `parallel` feature.
    Parallel,
    /// Parallel when available and the range is large, sequential otherwise.
    #[default]
    Auto,
}

impl Exec {
    fn parallel_for(self, total: u64) -> bool {
        match self {
            Exec::Sequential => false,
            Exec::Parallel => cfg!(feature = "parallel"),
            Exec::Auto => cfg!(feature = "parallel") && total >= PARALLEL_THRESHOLD,
        }
    }
}

/// Enumeration guardrails. Exceeding a cap yields [`Error::TooLarge`] instead
/// of an unbounded scan.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Upper bound on full word-space enumerations (q^n and q^k scans).
    pub word_space: u64,
    /// Upper bound on per-coset structures (q^(n-k) syndromes).
    pub coset_space: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            word_space: 1 << 24,
            coset_space: 1 << 22,
        }
    }
}

impl Caps {
    pub fn uniform(cap: u64) -> Caps {
        Caps {
            word_space: cap,
            coset_space: cap,
        }
    }

    /// Check a word-space-sized enumeration against the cap.
    pub fn admit_words(&self, size: u128) -> Result<u64> {
        admit(size, self.word_space, "")
    }

    /// Check a coset-space-sized structure against the cap.
    pub fn admit_cosets(&self, size: u128) -> Result<u64> {
        admit(size, self.coset_space, "")
    }

    /// Like [`Caps::admit_words`] but the error names the largest admissible
    /// sub-check, for surfaces that can degrade gracefully.
    pub fn admit_words_hint(&self, size: u128, hint: &str) -> Result<u64> {
        admit(size, self.word_space, hint)
    }
}

fn admit(size: u128, cap: u64, hint: &str) -> Result<u64> {
    if size > cap as u128 {
        return Err(Error::TooLarge {
            size,
            cap,
            hint: if hint.is_empty() {
                String::new()
            } else {
                format!("; {hint}")
            },
        });
    }
    Ok(size as u64)
}

fn chunks_of(total: u64) -> impl Iterator<Item = Range<u64>> {
    (0..total.div_ceil(CHUNK)).map(move |c| {
        let lo = c * CHUNK;
        lo..(lo + CHUNK).min(total)
    })
}

/// Fold every index in `0..total` into per-chunk accumulators and merge
/// them. The merge order is unspecified, so `merge` must be associative and
/// commutative for deterministic results.
pub fn fold_indices<T, I, F, R>(total: u64, exec: Exec, identity: I, fold: F, merge: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, Range<u64>) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel_for(total) {
        return chunks_of(total)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|r| fold(identity(), r))
            .reduce(&identity, &merge);
    }
    let _ = &merge;
    fold(identity(), 0..total)
}

/// First index in `0..total` satisfying the predicate, scanning
/// exhaustively. Deterministic in both execution modes.
pub fn find_first<P>(total: u64, exec: Exec, pred: P) -> Option<u64>
where
    P: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel_for(total) {
        return (0..total).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = exec;
    (0..total).find(|&i| pred(i))
}

/// True iff the predicate holds for every index in `0..total`.
pub fn all<P>(total: u64, exec: Exec, pred: P) -> bool
where
    P: Fn(u64) -> bool + Sync + Send,
{
    find_first(total, exec, |i| !pred(i)).is_none()
}

/// Dense bit set over packed word keys `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSet {
    bits: Vec<u64>,
    universe: u64,
    len: u64,
}

impl DenseSet {
    pub fn new(universe: u64) -> DenseSet {
        DenseSet {
            bits: vec![0; universe.div_ceil(64) as usize],
            universe,
            len: 0,
        }
    }

    /// Build by testing every key in the universe, in either execution mode.
    pub fn from_predicate<P>(universe: u64, exec: Exec, pred: P) -> DenseSet
    where
        P: Fn(u64) -> bool + Sync + Send,
    {
        fold_indices(
            universe,
            exec,
            || DenseSet::new(universe),
            |mut set, range| {
                for key in range {
                    if pred(key) {
                        set.insert(key);
                    }
                }
                set
            },
            |a, b| a.union(&b),
        )
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn insert(&mut self, key: u64) {
        let (w, b) = (key / 64, key % 64);
        let mask = 1u64 << b;
        if self.bits[w as usize] & mask == 0 {
            self.bits[w as usize] |= mask;
            self.len += 1;
        }
    }

    #[inline]
    pub fn contains(&self, key: u64) -> bool {
        self.bits[(key / 64) as usize] & (1u64 << (key % 64)) != 0
    }

    pub fn union(mut self, other: &DenseSet) -> DenseSet {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        self.len = self.bits.iter().map(|w| w.count_ones() as u64).sum();
        self
    }

    pub fn intersects(&self, other: &DenseSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    /// Complement within the universe.
    pub fn complement(&self) -> DenseSet {
        let mut out = DenseSet::new(self.universe);
        for (o, &w) in out.bits.iter_mut().zip(&self.bits) {
            *o = !w;
        }
        // clear bits beyond the universe
        let tail = self.universe % 64;
        if tail != 0 {
            if let Some(last) = out.bits.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        out.len = self.universe - self.len;
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.universe).filter(move |&k| self.contains(k))
    }
}
