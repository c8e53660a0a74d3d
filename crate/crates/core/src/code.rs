//! Linear codes over GF(p^m): generator/parity-check matrices, syndromes,
//! and the exhaustive small-instance oracles (coset-leader table, minimum
//! distance, covering radius).
//!
//! The brute-force coset table enumerates the full word space and is the
//! independent oracle every incremental structure is checked against. The
//! scan is partitioned into independent slices merged at the end, so it runs
//! on either execution mode with identical results.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::OnceLock;

use crate::field::{FieldSpec, Word};
use crate::order::{cmp_words, OrderSpec};
use crate::scan::{fold_indices, Caps, Exec};
use crate::{Error, Result};

/// A [n, k] linear code with a row-reduced generator matrix and a derived
/// parity-check matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    spec: FieldSpec,
    n: usize,
    k: usize,
    /// Reduced row echelon form of the input generator, k x n.
    gen: Vec<Vec<u32>>,
    /// Parity-check matrix, (n-k) x n, with G * H^T = 0.
    parity: Vec<Vec<u32>>,
    /// parity transposed: column i of H, length n-k. Scan-friendly layout.
    parity_cols: Vec<Vec<u32>>,
    min_distance: OnceLock<u32>,
}

impl LinearCode {
    /// Build a code from generator rows. The generator is row-reduced; a
    /// rank-deficient input is rejected.
    pub fn new(spec: FieldSpec, rows: Vec<Vec<u32>>) -> Result<LinearCode> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::RankDeficient);
        }
        let n = rows[0].len();
        if n == 0 || k > n {
            return Err(Error::RankDeficient);
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if row.iter().any(|&e| e >= spec.q()) {
                return Err(Error::SpecMismatch);
            }
        }
        // packed word keys must fit u128
        if (spec.q() as u128).checked_pow(n as u32).is_none() {
            return Err(Error::TooLarge {
                size: u128::MAX,
                cap: u64::MAX,
                hint: format!("; word space q^n with q={} n={n} exceeds 2^128", spec.q()),
            });
        }

        let (gen, pivots) = rref(&spec, rows);
        if pivots.len() < k {
            return Err(Error::RankDeficient);
        }

        let mut parity = Vec::with_capacity(n - k);
        for c in 0..n {
            if pivots.contains(&c) {
                continue;
            }
            let mut row = vec![0u32; n];
            row[c] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                row[pc] = spec.neg(gen[i][c]);
            }
            parity.push(row);
        }
        let parity_cols = (0..n)
            .map(|i| parity.iter().map(|row| row[i]).collect())
            .collect();

        let code = LinearCode {
            spec,
            n,
            k,
            gen,
            parity,
            parity_cols,
            min_distance: OnceLock::new(),
        };
        debug_assert!(code.generator_annihilated());
        Ok(code)
    }

    fn generator_annihilated(&self) -> bool {
        self.gen.iter().all(|g| {
            self.parity.iter().all(|h| {
                let dot = g
                    .iter()
                    .zip(h)
                    .fold(0, |acc, (&a, &b)| self.spec.add(acc, self.spec.mul(a, b)));
                dot == 0
            })
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    pub fn dimension(&self) -> usize {
        self.k
    }
    pub fn generator(&self) -> &[Vec<u32>] {
        &self.gen
    }
    pub fn parity_check(&self) -> &[Vec<u32>] {
        &self.parity
    }

    /// q^n as a u128 (fits by construction).
    pub fn word_space(&self) -> u128 {
        (self.spec.q() as u128).pow(self.n as u32)
    }

    /// q^k, the number of codewords.
    pub fn codeword_count(&self) -> u128 {
        (self.spec.q() as u128).pow(self.k as u32)
    }

    /// q^(n-k), the number of cosets.
    pub fn coset_count(&self) -> u128 {
        (self.spec.q() as u128).pow((self.n - self.k) as u32)
    }

    pub fn zero_word(&self) -> Word {
        Word::zero(self.spec.clone(), self.n)
    }

    /// Word of this code's length from a packed key.
    pub fn word_from_key(&self, key: u128) -> Word {
        Word::unpack(self.spec.clone(), self.n, key)
    }

    pub(crate) fn unpack_key_into(&self, mut key: u64, buf: &mut [u32]) {
        let q = self.spec.q() as u64;
        for e in buf.iter_mut() {
            *e = (key % q) as u32;
            key /= q;
        }
    }

    pub(crate) fn pack_entries(&self, entries: &[u32]) -> u128 {
        let q = self.spec.q() as u128;
        let mut acc = 0u128;
        for &e in entries.iter().rev() {
            acc = acc * q + e as u128;
        }
        acc
    }

    /// Syndrome H * y^T of a word of length n.
    pub fn syndrome(&self, y: &Word) -> Result<Word> {
        if y.spec() != &self.spec || y.len() != self.n {
            return Err(Error::SpecMismatch);
        }
        let mut out = vec![0u32; self.n - self.k];
        self.syndrome_into(y.entries(), &mut out);
        Word::new(self.spec.clone(), out)
    }

    pub(crate) fn syndrome_into(&self, y: &[u32], out: &mut [u32]) {
        out.fill(0);
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0 {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let h = self.parity_cols[i][r];
                if h != 0 {
                    *o = self.spec.add(*o, self.spec.mul(h, yi));
                }
            }
        }
    }

    /// Packed syndrome key of a word given by its entries.
    pub(crate) fn syndrome_key(&self, y: &[u32]) -> u128 {
        let mut out = vec![0u32; self.n - self.k];
        self.syndrome_into(y, &mut out);
        self.pack_entries(&out)
    }

    /// Packed syndrome key of a [`Word`].
    pub fn syndrome_key_of(&self, y: &Word) -> Result<u128> {
        if y.spec() != &self.spec || y.len() != self.n {
            return Err(Error::SpecMismatch);
        }
        Ok(self.syndrome_key(y.entries()))
    }

    /// Codeword for a packed message key in [0, q^k).
    pub(crate) fn codeword_from_msg(&self, mut msg: u64) -> Vec<u32> {
        let q = self.spec.q() as u64;
        let mut out = vec![0u32; self.n];
        for row in &self.gen {
            let coef = (msg % q) as u32;
            msg /= q;
            if coef == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                if g != 0 {
                    *o = self.spec.add(*o, self.spec.mul(coef, g));
                }
            }
        }
        out
    }

    /// All q^k codewords, cap-gated.
    pub fn codewords(&self, caps: &Caps) -> Result<Vec<Word>> {
        let total = caps.admit_words(self.codeword_count())?;
        Ok((0..total)
            .map(|msg| {
                Word::new(self.spec.clone(), self.codeword_from_msg(msg)).expect("valid entries")
            })
            .collect())
    }

    /// Exact minimum distance by codeword enumeration. Cached.
    pub fn min_distance(&self, caps: &Caps, exec: Exec) -> Result<u32> {
        if let Some(&d) = self.min_distance.get() {
            return Ok(d);
        }
        let total = caps.admit_words(self.codeword_count())?;
        let d = fold_indices(
            total - 1,
            exec,
            || u32::MAX,
            |acc, range| {
                let mut best = acc;
                for idx in range {
                    let cw = self.codeword_from_msg(idx + 1);
                    let w = cw.iter().filter(|&&e| e != 0).count() as u32;
                    best = best.min(w);
                }
                best
            },
            |a, b| a.min(b),
        );
        Ok(*self.min_distance.get_or_init(|| d))
    }

    /// Error-correction capability t = floor((d-1)/2).
    pub fn error_capability(&self, caps: &Caps, exec: Exec) -> Result<u32> {
        Ok((self.min_distance(caps, exec)? - 1) / 2)
    }
}

/// Reduced row echelon form; returns the reduced rows and pivot columns.
fn rref(spec: &FieldSpec, mut rows: Vec<Vec<u32>>) -> (Vec<Vec<u32>>, Vec<usize>) {
    let k = rows.len();
    let n = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == k {
            break;
        }
        let Some(src) = (r..k).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, src);
        let inv = spec.inv(rows[r][c]);
        for e in rows[r].iter_mut() {
            *e = spec.mul(*e, inv);
        }
        for i in 0..k {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..n {
                    let sub = spec.mul(factor, rows[r][j]);
                    rows[i][j] = spec.sub(rows[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// One coset of the table: its weight, every minimal-weight word, and the
/// least leader under the table's weight-compatible order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetRecord {
    pub weight: u32,
    /// All coset leaders, sorted ascending by the weight-compatible order.
    pub leaders: Vec<Word>,
    leader_keys: HashSet<u128>,
}

impl CosetRecord {
    pub(crate) fn from_sorted(weight: u32, leaders: Vec<Word>) -> CosetRecord {
        let leader_keys = leaders.iter().map(|w| w.packed()).collect();
        CosetRecord {
            weight,
            leaders,
            leader_keys,
        }
    }

    /// The least coset leader under the table's order.
    pub fn canonical(&self) -> &Word {
        &self.leaders[0]
    }

    pub fn contains_leader_key(&self, key: u128) -> bool {
        self.leader_keys.contains(&key)
    }
}

/// Complete per-syndrome coset information, keyed by packed syndrome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    records: BTreeMap<u128, CosetRecord>,
    order: OrderSpec,
}

impl CosetTable {
    pub(crate) fn from_records(records: BTreeMap<u128, CosetRecord>, order: OrderSpec) -> Self {
        CosetTable { records, order }
    }

    pub fn order(&self) -> OrderSpec {
        self.order
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u128, &CosetRecord)> {
        self.records.iter()
    }

    pub fn record(&self, syndrome_key: u128) -> Option<&CosetRecord> {
        self.records.get(&syndrome_key)
    }

    /// Coset weight of the coset a word belongs to.
    pub fn coset_weight(&self, code: &LinearCode, y: &Word) -> Result<u32> {
        let key = code.syndrome_key_of(y)?;
        self.records
            .get(&key)
            .map(|r| r.weight)
            .ok_or_else(|| Error::InternalInconsistency("missing syndrome record".into()))
    }

    /// Membership test in the set of coset leaders.
    pub fn is_coset_leader(&self, code: &LinearCode, y: &Word) -> Result<bool> {
        let key = code.syndrome_key_of(y)?;
        Ok(self
            .records
            .get(&key)
            .is_some_and(|r| r.contains_leader_key(y.packed())))
    }

    /// All coset leaders of the coset of y.
    pub fn coset_leaders_of(&self, code: &LinearCode, y: &Word) -> Result<&[Word]> {
        let key = code.syndrome_key_of(y)?;
        self.records
            .get(&key)
            .map(|r| r.leaders.as_slice())
            .ok_or_else(|| Error::InternalInconsistency("missing syndrome record".into()))
    }

    /// Maximum coset weight, i.e. the covering radius once complete.
    pub fn max_coset_weight(&self) -> u32 {
        self.records.values().map(|r| r.weight).max().unwrap_or(0)
    }

    /// Total number of coset leaders across all cosets.
    pub fn leader_count(&self) -> usize {
        self.records.values().map(|r| r.leaders.len()).sum()
    }
}

#[derive(Clone)]
struct PartialRecord {
    weight: u32,
    leaders: Vec<u64>,
}

/// Independent oracle: enumerate the full word space and record, for every
/// syndrome, the minimal weight, all words attaining it, and the least one
/// under the weight-compatible order.
pub fn brute_force_coset_table(
    code: &LinearCode,
    order: OrderSpec,
    caps: &Caps,
    exec: Exec,
) -> Result<CosetTable> {
    let total = caps.admit_words(code.word_space())?;
    caps.admit_cosets(code.coset_count())?;

    let merged = fold_indices(
        total,
        exec,
        HashMap::<u128, PartialRecord>::new,
        |mut acc, range| {
            let mut buf = vec![0u32; code.len()];
            for key in range {
                code.unpack_key_into(key, &mut buf);
                let w = buf.iter().filter(|&&e| e != 0).count() as u32;
                let syn = code.syndrome_key(&buf);
                match acc.get_mut(&syn) {
                    None => {
                        acc.insert(
                            syn,
                            PartialRecord {
                                weight: w,
                                leaders: vec![key],
                            },
                        );
                    }
                    Some(rec) if w < rec.weight => {
                        rec.weight = w;
                        rec.leaders.clear();
                        rec.leaders.push(key);
                    }
                    Some(rec) if w == rec.weight => rec.leaders.push(key),
                    Some(_) => {}
                }
            }
            acc
        },
        |mut a, b| {
            for (syn, rec) in b {
                match a.get_mut(&syn) {
                    None => {
                        a.insert(syn, rec);
                    }
                    Some(mine) if rec.weight < mine.weight => *mine = rec,
                    Some(mine) if rec.weight == mine.weight => {
                        mine.leaders.extend_from_slice(&rec.leaders)
                    }
                    Some(_) => {}
                }
            }
            a
        },
    );

    let expected = code.coset_count();
    if merged.len() as u128 != expected {
        return Err(Error::InternalInconsistency(format!(
            "oracle found {} syndromes, expected {expected}",
            merged.len()
        )));
    }

    let mut records = BTreeMap::new();
    for (syn, rec) in merged {
        let mut leaders: Vec<Word> = rec
            .leaders
            .into_iter()
            .map(|key| code.word_from_key(key as u128))
            .collect();
        leaders.sort_by(|a, b| cmp_words(a, b, order).expect("same spec"));
        records.insert(syn, CosetRecord::from_sorted(rec.weight, leaders));
    }
    Ok(CosetTable::from_records(records, order))
}

/// Covering radius: the maximum coset weight of a complete table.
pub fn covering_radius(table: &CosetTable) -> u32 {
    table.max_coset_weight()
}

/// Parse the plain-text code file format.
///
/// ```text
/// # comment
/// p m n k
/// f0 f1 ... fm        (only when m > 1; ascending coefficients)
/// g11 ... g1n         (k generator rows, packed elements in [0, q-1])
/// ...
/// ```
pub fn parse_code_file(text: &str) -> Result<LinearCode> {
    let mut lines = Vec::new(); // (line_no, Vec<(col, value)>)
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let data = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut col = 0usize;
        for piece in data.split_whitespace() {
            let at = data[col..].find(piece).expect("piece comes from data") + col;
            col = at + piece.len();
            let value: u64 = piece.parse().map_err(|_| Error::Parse {
                line: line_no,
                col: at + 1,
                msg: format!("expected an integer, found {piece:?}"),
            })?;
            tokens.push((at + 1, value));
        }
        if !tokens.is_empty() {
            lines.push((line_no, tokens));
        }
    }

    let mut it = lines.into_iter();
    let (hdr_line, hdr) = it.next().ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "empty code file".into(),
    })?;
    if hdr.len() != 4 {
        return Err(Error::Parse {
            line: hdr_line,
            col: hdr.first().map_or(1, |t| t.0),
            msg: format!("header must be `p m n k`, found {} values", hdr.len()),
        });
    }
    let (p, m, n, k) = (hdr[0].1, hdr[1].1, hdr[2].1, hdr[3].1);
    if p > u32::MAX as u64 || m == 0 || n == 0 || k == 0 || k > n {
        return Err(Error::Parse {
            line: hdr_line,
            col: hdr[0].0,
            msg: format!("invalid parameters p={p} m={m} n={n} k={k}"),
        });
    }

    let spec = if m == 1 {
        FieldSpec::new(p as u32, 1).map_err(|e| Error::Parse {
            line: hdr_line,
            col: hdr[0].0,
            msg: e.to_string(),
        })?
    } else {
        let (f_line, f_tokens) = it.next().ok_or(Error::Parse {
            line: hdr_line,
            col: 1,
            msg: format!("m = {m} > 1 requires a modulus line with {} coefficients", m + 1),
        })?;
        if f_tokens.len() != m as usize + 1 {
            return Err(Error::Parse {
                line: f_line,
                col: f_tokens.first().map_or(1, |t| t.0),
                msg: format!(
                    "modulus must have {} coefficients, found {}",
                    m + 1,
                    f_tokens.len()
                ),
            });
        }
        let f: Vec<u32> = f_tokens.iter().map(|&(_, v)| v as u32).collect();
        FieldSpec::with_modulus(p as u32, m as u32, &f).map_err(|e| Error::Parse {
            line: f_line,
            col: f_tokens[0].0,
            msg: e.to_string(),
        })?
    };

    let mut rows = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let (r_line, r_tokens) = it.next().ok_or(Error::Parse {
            line: hdr_line,
            col: 1,
            msg: format!("expected {k} generator rows"),
        })?;
        if r_tokens.len() != n as usize {
            return Err(Error::Parse {
                line: r_line,
                col: r_tokens.first().map_or(1, |t| t.0),
                msg: format!("generator row must have {n} entries, found {}", r_tokens.len()),
            });
        }
        let mut row = Vec::with_capacity(n as usize);
        for &(col, v) in &r_tokens {
            if v >= spec.q() as u64 {
                return Err(Error::Parse {
                    line: r_line,
                    col,
                    msg: format!("entry {v} out of range for q = {}", spec.q()),
                });
            }
            row.push(v as u32);
        }
        rows.push(row);
    }
    if let Some((line, tokens)) = it.next() {
        return Err(Error::Parse {
            line,
            col: tokens.first().map_or(1, |t| t.0),
            msg: "unexpected trailing data".into(),
        });
    }

    LinearCode::new(spec, rows)
}
