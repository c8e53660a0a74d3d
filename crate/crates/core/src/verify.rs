//! Per-code verification suite: every structural claim the crate relies on,
//! checked exhaustively against the brute-force oracles for one code.
//!
//! Each check produces a pass/fail line with a short detail string; side
//! observations that are reported rather than asserted (they may legitimately
//! be empty or nonempty) are collected as notes. The report renders to a
//! deterministic byte string for a fixed (code, order, caps, seed).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{brute_force_coset_table, CosetTable, LinearCode};
use crate::errors::{
    check_trial_set, classify_errors, larger_halves, reducing_codewords, trial_set_from_leaders,
    ErrorClassification,
};
use crate::field::Word;
use crate::ideal::{build_ideal, IdealRegistry};
use crate::leaders::{
    boundary, decode_gradient, leader_codewords, leader_codewords_from_definition, shell,
    test_set_counterexample, voronoi_contains, word_set, LeaderSet,
};
use crate::order::{cmp_words, covered_by, digit_le, OrderSpec};
use crate::scan::{Caps, DenseSet, Exec};
use crate::Result;

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Full verification report for one code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub min_distance: u32,
    pub error_capability: u32,
    pub covering_radius: u32,
    pub order: OrderSpec,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    /// Observations reported without a pass/fail judgement.
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Deterministic plain-text rendering, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "verify {} [n={}, k={}] over GF({}), d={}, t={}, rho={}, order={}, seed={}\n",
            self.label,
            self.n,
            self.k,
            self.q,
            self.min_distance,
            self.error_capability,
            self.covering_radius,
            self.order.name(),
            self.seed,
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  {} {:<34} {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "result: {} ({passed}/{} checks)\n",
            if self.all_passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        ));
        out
    }
}

struct Ctx<'a> {
    code: &'a LinearCode,
    order: OrderSpec,
    caps: &'a Caps,
    exec: Exec,
    oracle: CosetTable,
    registry: IdealRegistry,
    leaders: LeaderSet,
    cls: ErrorClassification,
    rho: u32,
}

/// Run the complete verification suite on one code.
pub fn verify_code(
    code: &LinearCode,
    label: &str,
    order: OrderSpec,
    caps: &Caps,
    seed: u64,
    exec: Exec,
) -> Result<VerifyReport> {
    // the suite needs full word-space oracles; suggest what still fits
    caps.admit_words_hint(
        code.word_space(),
        &format!(
            "the incremental coset table alone remains admissible (q^(n-k) = {} <= {})",
            code.coset_count(),
            caps.coset_space
        ),
    )?;

    let oracle = brute_force_coset_table(code, order, caps, exec)?;
    let registry = build_ideal(code, order, caps, false)?;
    let leaders = leader_codewords(&registry, false)?;
    let cls = classify_errors(code, &oracle, order, caps, exec)?;
    let rho = oracle.max_coset_weight();
    let ctx = Ctx {
        code,
        order,
        caps,
        exec,
        oracle,
        registry,
        leaders,
        cls,
        rho,
    };

    let mut checks = Vec::new();
    let mut notes = Vec::new();
    checks.push(subword_closure(&ctx));
    checks.push(ancestor_weight_bound(&ctx));
    checks.push(support_drop_membership(&ctx));
    checks.push(leader_completeness(&ctx));
    checks.push(weak_ideal_closure(&ctx));
    checks.push(containment_implies_order(&ctx));
    checks.push(leader_codewords_test_set(&ctx)?);
    checks.push(leader_codeword_weight_bound(&ctx));
    checks.push(boundary_contact(&ctx, &mut notes)?);
    checks.push(boundary_converse(&ctx)?);
    checks.push(construction_route_equivalence(&ctx)?);
    checks.push(containment_monotonicity(&ctx, &mut notes));
    checks.push(reduction_set_characterization(&ctx)?);
    checks.push(larger_half_weight_sandwich(&ctx)?);
    checks.push(characterization_agreement(&ctx, seed)?);
    checks.push(trial_set_filter(&ctx)?);
    checks.push(error_region_structure(&ctx)?);
    checks.push(decode_weight_soundness(&ctx)?);

    Ok(VerifyReport {
        label: label.to_string(),
        n: code.len(),
        k: code.dimension(),
        q: code.spec().q(),
        min_distance: code.min_distance(caps, exec)?,
        error_capability: code.error_capability(caps, exec)?,
        covering_radius: ctx.rho,
        order,
        seed,
        checks,
        notes,
    })
}

fn result(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed,
        detail,
    }
}

/// Every restriction of a coset leader to part of its support is a leader.
fn subword_closure(ctx: &Ctx) -> CheckResult {
    let mut pairs = 0u64;
    let mut ok = true;
    'outer: for (_, rec) in ctx.oracle.iter() {
        for x in &rec.leaders {
            let support = x.support();
            for mask in 0u64..(1 << support.len()) {
                let mut entries = vec![0u32; x.len()];
                for (b, &i) in support.iter().enumerate() {
                    if mask & (1 << b) != 0 {
                        entries[i] = x.entries()[i];
                    }
                }
                let sub = Word::new(x.spec().clone(), entries).expect("valid entries");
                pairs += 1;
                if !ctx
                    .oracle
                    .is_coset_leader(ctx.code, &sub)
                    .expect("same spec")
                {
                    ok = false;
                    break 'outer;
                }
            }
        }
    }
    result(
        "subword_closure",
        ok,
        format!("{pairs} leader restrictions checked"),
    )
}

/// Rewriting one coordinate of a partial coset leader exceeds its own coset
/// weight by at most one.
fn ancestor_weight_bound(ctx: &Ctx) -> CheckResult {
    let q = ctx.code.spec().q();
    let mut pairs = 0u64;
    let mut ok = true;
    'outer: for (_, rec) in ctx.oracle.iter() {
        for x in &rec.leaders {
            let support = x.support();
            for &i in &support {
                let rest: Vec<usize> = support.iter().copied().filter(|&s| s != i).collect();
                for mask in 0u64..(1 << rest.len()) {
                    for t in 0..q {
                        let mut entries = vec![0u32; x.len()];
                        for (b, &s) in rest.iter().enumerate() {
                            if mask & (1 << b) != 0 {
                                entries[s] = x.entries()[s];
                            }
                        }
                        entries[i] = t;
                        let xp = Word::new(x.spec().clone(), entries).expect("valid entries");
                        let cw = ctx
                            .oracle
                            .coset_weight(ctx.code, &xp)
                            .expect("complete table");
                        pairs += 1;
                        if xp.weight() > cw + 1 {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    result(
        "ancestor_weight_bound",
        ok,
        format!("{pairs} single-coordinate rewrites checked"),
    )
}

/// Every word that becomes a coset leader after zeroing one coordinate is a
/// member of the ideal.
fn support_drop_membership(ctx: &Ctx) -> CheckResult {
    let total = ctx.code.word_space() as u64;
    let mut misses = 0u64;
    let mut hits = 0u64;
    for key in 0..total {
        let w = ctx.code.word_from_key(key as u128);
        let eligible = (0..ctx.code.len()).any(|i| {
            ctx.oracle
                .is_coset_leader(ctx.code, &w.zeroed_at(i))
                .expect("same spec")
        });
        if eligible {
            hits += 1;
            if !ctx.registry.contains_member_key(key as u128) {
                misses += 1;
            }
        }
    }
    result(
        "support_drop_membership",
        misses == 0,
        format!("{hits} eligible words, {misses} missing from the ideal"),
    )
}

/// The incremental table equals the brute-force table exactly.
fn leader_completeness(ctx: &Ctx) -> CheckResult {
    let equal = ctx.registry.table() == &ctx.oracle;
    result(
        "leader_completeness",
        equal,
        format!(
            "{} cosets, {} leaders in both tables",
            ctx.oracle.len(),
            ctx.oracle.leader_count()
        ),
    )
}

/// Every nonzero member has a wrap-free predecessor in the member set.
fn weak_ideal_closure(ctx: &Ctx) -> CheckResult {
    let spec = ctx.code.spec().clone();
    let mut orphans = 0u64;
    let mut members = 0u64;
    for key in ctx.registry.member_keys() {
        if key == 0 {
            continue;
        }
        members += 1;
        let w = ctx.code.word_from_key(key);
        let found = w.generalized_support().iter().any(|&(i, j)| {
            let mut entries = w.entries().to_vec();
            entries[i] = spec.sub(entries[i], spec.digit_power(j as u32));
            let pred = Word::new(spec.clone(), entries).expect("valid entries");
            ctx.registry.contains_member_key(pred.packed())
        });
        if !found {
            orphans += 1;
        }
    }
    result(
        "weak_ideal_closure",
        orphans == 0,
        format!("{members} nonzero members, {orphans} without predecessor"),
    )
}

/// Digitwise containment implies strict order, over all comparable pairs.
fn containment_implies_order(ctx: &Ctx) -> CheckResult {
    let spec = ctx.code.spec().clone();
    let (n, m, p) = (ctx.code.len(), spec.m() as usize, spec.p());
    let total = ctx.code.word_space() as u64;
    let mut pairs = 0u64;
    let mut ok = true;
    let mut digits = vec![0u32; n * m];
    'outer: for key in 0..total {
        let w = ctx.code.word_from_key(key as u128);
        let wd = w.digits();
        // enumerate all digit tuples componentwise below wd
        digits.fill(0);
        loop {
            if digits != wd {
                let v = Word::from_digits(spec.clone(), n, &digits).expect("length n*m");
                pairs += 1;
                if cmp_words(&v, &w, ctx.order).expect("same spec") != std::cmp::Ordering::Less {
                    ok = false;
                    break 'outer;
                }
            }
            // next tuple below wd (mixed radix with per-position limit)
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] <= wd[pos] && digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
    result(
        "containment_implies_order",
        ok,
        format!("{pairs} contained pairs checked"),
    )
}

/// The leader codewords form a test set.
fn leader_codewords_test_set(ctx: &Ctx) -> Result<CheckResult> {
    let cx = test_set_counterexample(
        ctx.code,
        &ctx.oracle,
        ctx.leaders.words(),
        ctx.caps,
        ctx.exec,
    )?;
    Ok(result(
        "leader_codewords_test_set",
        cx.is_none(),
        match cx {
            None => format!("{} leader codewords reduce every word", ctx.leaders.len()),
            Some(w) => format!("counterexample {:?}", w.entries()),
        },
    ))
}

/// Leader codeword weights stay within twice the covering radius plus one.
fn leader_codeword_weight_bound(ctx: &Ctx) -> CheckResult {
    let max = ctx.leaders.max_weight();
    let bound = 2 * ctx.rho + 1;
    result(
        "leader_codeword_weight_bound",
        max <= bound,
        format!("max weight {max} <= {bound}"),
    )
}

fn voronoi_region(ctx: &Ctx, cw: &Word) -> Result<DenseSet> {
    let total = ctx.code.word_space() as u64;
    let mut set = DenseSet::new(total);
    for key in 0..total {
        let y = ctx.code.word_from_key(key as u128);
        if voronoi_contains(ctx.code, cw, &y, ctx.caps, Exec::Sequential)? {
            set.insert(key);
        }
    }
    Ok(set)
}

/// Every leader codeword's region (or its shell) meets the shell of the
/// leader region; those passing the stronger region-only test are noted.
fn boundary_contact(ctx: &Ctx, notes: &mut Vec<String>) -> Result<CheckResult> {
    let zero_region = voronoi_region(ctx, &ctx.code.zero_word())?;
    let zero_shell = shell(ctx.code, &zero_region, ctx.exec);
    let mut ok = true;
    let mut weak_only = Vec::new();
    for w in ctx.leaders.words() {
        let region = voronoi_region(ctx, w)?;
        let strong = zero_shell.intersects(&region);
        let contact = strong || zero_shell.intersects(&shell(ctx.code, &region, ctx.exec));
        if !contact {
            ok = false;
            break;
        }
        if !strong {
            weak_only.push(format!("{:?}", w.entries()));
        }
    }
    if weak_only.is_empty() {
        notes.push("every leader codeword's region meets the leader-region shell directly".into());
    } else {
        notes.push(format!(
            "leader codewords touching only through their shell: {}",
            weak_only.join(", ")
        ));
    }
    Ok(result(
        "boundary_contact",
        ok,
        format!("{} leader codewords checked", ctx.leaders.len()),
    ))
}

/// Any codeword whose region meets the leader-region shell is a leader
/// codeword.
fn boundary_converse(ctx: &Ctx) -> Result<CheckResult> {
    let zero_region = voronoi_region(ctx, &ctx.code.zero_word())?;
    let zero_shell = shell(ctx.code, &zero_region, ctx.exec);
    let mut checked = 0u64;
    let mut ok = true;
    for msg in 1..ctx.code.codeword_count() as u64 {
        let cw = Word::new(
            ctx.code.spec().clone(),
            ctx.code.codeword_from_msg(msg),
        )?;
        if cw.is_zero() {
            continue;
        }
        checked += 1;
        let region = voronoi_region(ctx, &cw)?;
        if zero_shell.intersects(&region) && !ctx.leaders.contains(&cw) {
            ok = false;
            break;
        }
    }
    Ok(result(
        "boundary_converse",
        ok,
        format!("{checked} nonzero codewords checked"),
    ))
}

/// The member-based computation of leader codewords equals the defining
/// triple enumeration over the full word space.
fn construction_route_equivalence(ctx: &Ctx) -> Result<CheckResult> {
    let by_definition =
        leader_codewords_from_definition(ctx.code, &ctx.oracle, ctx.caps, ctx.exec)?;
    let by_recipe: std::collections::BTreeSet<u128> =
        ctx.leaders.words().iter().map(|w| w.packed()).collect();
    let equal = by_definition == by_recipe;
    Ok(result(
        "construction_route_equivalence",
        equal,
        format!(
            "{} by recipe, {} by definition",
            by_recipe.len(),
            by_definition.len()
        ),
    ))
}

/// Correctability is monotone under coordinatewise containment; digitwise
/// containment alone does not sustain it for q > 2, which is reported.
fn containment_monotonicity(ctx: &Ctx, notes: &mut Vec<String>) -> CheckResult {
    let total = ctx.code.word_space() as u64;
    let mut ok = true;
    let mut digit_violation: Option<(Word, Word)> = None;
    'outer: for b in 0..total {
        let y = ctx.code.word_from_key(b as u128);
        if !ctx.cls.is_correctable_key(b) {
            continue;
        }
        // y correctable: every word covered by y must be correctable
        for a in 0..total {
            if a == b {
                continue;
            }
            let x = ctx.code.word_from_key(a as u128);
            if covered_by(&x, &y).expect("same spec") && !ctx.cls.is_correctable_key(a) {
                ok = false;
                break 'outer;
            }
        }
    }
    if ctx.code.spec().q() > 2 {
        'search: for b in 0..total {
            let y = ctx.code.word_from_key(b as u128);
            if !ctx.cls.is_correctable_key(b) {
                continue;
            }
            for a in 0..total {
                if a == b {
                    continue;
                }
                let x = ctx.code.word_from_key(a as u128);
                if digit_le(&x, &y).expect("same spec")
                    && !covered_by(&x, &y).expect("same spec")
                    && !ctx.cls.is_correctable_key(a)
                {
                    digit_violation = Some((x, y));
                    break 'search;
                }
            }
        }
        match &digit_violation {
            Some((x, y)) => notes.push(format!(
                "digitwise containment alone is not monotone here: {:?} uncorrectable below correctable {:?}",
                x.entries(),
                y.entries()
            )),
            None => notes.push(
                "no digitwise-containment monotonicity violation found for this code".into(),
            ),
        }
    }
    result(
        "containment_monotonicity",
        ok,
        "correctable set closed downward, uncorrectable upward".into(),
    )
}

/// A word has no reducing codeword exactly when it is correctable.
fn reduction_set_characterization(ctx: &Ctx) -> Result<CheckResult> {
    let total = ctx.code.word_space() as u64;
    let mut ok = true;
    for key in 0..total {
        let y = ctx.code.word_from_key(key as u128);
        let empty = reducing_codewords(ctx.code, &y, ctx.order, ctx.caps)?.is_empty();
        if empty != ctx.cls.is_correctable_key(key) {
            ok = false;
            break;
        }
    }
    Ok(result(
        "reduction_set_characterization",
        ok,
        format!("{total} words checked"),
    ))
}

/// Larger halves sit in the uncorrectable set and obey the weight sandwich.
fn larger_half_weight_sandwich(ctx: &Ctx) -> Result<CheckResult> {
    let mut halves = 0u64;
    let mut ok = true;
    'outer: for msg in 1..ctx.code.codeword_count() as u64 {
        let cw = Word::new(ctx.code.spec().clone(), ctx.code.codeword_from_msg(msg))?;
        if cw.is_zero() {
            continue;
        }
        for u in larger_halves(ctx.code, &cw, ctx.order)? {
            halves += 1;
            let sandwich = cw.weight() <= 2 * u.weight() && 2 * u.weight() <= cw.weight() + 2;
            if !sandwich || ctx.cls.is_correctable(&u) {
                ok = false;
                break 'outer;
            }
        }
    }
    Ok(result(
        "larger_half_weight_sandwich",
        ok,
        format!("{halves} larger halves checked"),
    ))
}

/// The three trial-set characterizations agree on the leader codewords, the
/// filtered set, and seeded random candidate sets.
fn characterization_agreement(ctx: &Ctx, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonzero: Vec<Word> = ctx
        .code
        .codewords(ctx.caps)?
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    let mut candidates: Vec<Vec<Word>> = vec![ctx.leaders.words().to_vec()];
    for _ in 0..100 {
        let size = rng.random_range(1..=nonzero.len());
        let mut pool = nonzero.clone();
        let mut set = Vec::with_capacity(size);
        for _ in 0..size {
            let at = rng.random_range(0..pool.len());
            set.push(pool.swap_remove(at));
        }
        candidates.push(set);
    }
    let mut agreements = 0u64;
    let mut ok = true;
    for set in &candidates {
        let check = check_trial_set(ctx.code, &ctx.cls, set, ctx.order, ctx.caps, ctx.exec)?;
        if check.agree() {
            agreements += 1;
        } else {
            ok = false;
        }
    }
    Ok(result(
        "characterization_agreement",
        ok,
        format!("{agreements}/{} candidate sets agree on all three routes", candidates.len()),
    ))
}

/// The filtered leader set is a trial set, stays within the leader
/// codewords, and each retained codeword has its witness.
fn trial_set_filter(ctx: &Ctx) -> Result<CheckResult> {
    let trial = trial_set_from_leaders(
        ctx.code,
        &ctx.cls,
        &ctx.leaders,
        ctx.order,
        ctx.caps,
        ctx.exec,
    )?;
    let within = trial.iter().all(|c| ctx.leaders.contains(c));
    let mut witnessed = true;
    for c in &trial {
        let has = larger_halves(ctx.code, c, ctx.order)?.iter().any(|u| {
            ctx.cls.is_minimal_uncorrectable_key(u.packed())
                && ctx
                    .cls
                    .is_correctable(&u.sub(c).expect("same spec"))
        });
        if !has {
            witnessed = false;
        }
    }
    let check = check_trial_set(ctx.code, &ctx.cls, &trial, ctx.order, ctx.caps, ctx.exec)?;
    Ok(result(
        "trial_set_filter",
        within && witnessed && check.agree() && check.is_trial_set(),
        format!("{} of {} leader codewords retained", trial.len(), ctx.leaders.len()),
    ))
}

/// Structural facts about the correctable set and the leader region:
/// exactly one least element per coset, all of them leaders, unique leaders
/// at or below the error capability, and the leader region equal to the
/// Voronoi region of zero.
fn error_region_structure(ctx: &Ctx) -> Result<CheckResult> {
    let count_ok = ctx.cls.correctable_count() as u128 == ctx.code.coset_count();
    let mut leaders_ok = true;
    for w in ctx.cls.correctable_words() {
        if !ctx.oracle.is_coset_leader(ctx.code, w)? {
            leaders_ok = false;
        }
    }
    let t = ctx.code.error_capability(ctx.caps, ctx.exec)?;
    let unique_ok = ctx
        .oracle
        .iter()
        .all(|(_, rec)| rec.weight > t || rec.leaders.len() == 1);

    let zero_region = voronoi_region(ctx, &ctx.code.zero_word())?;
    let leader_words: Vec<Word> = ctx
        .oracle
        .iter()
        .flat_map(|(_, r)| r.leaders.iter().cloned())
        .collect();
    let leader_set = word_set(ctx.code, &leader_words, ctx.caps)?;
    let region_ok = zero_region == leader_set;

    Ok(result(
        "error_region_structure",
        count_ok && leaders_ok && unique_ok && region_ok,
        format!(
            "{} correctable errors, one per coset; leader region matches",
            ctx.cls.correctable_count()
        ),
    ))
}

/// Gradient decoding with the leader codewords always lands on a word of
/// exactly the coset weight.
fn decode_weight_soundness(ctx: &Ctx) -> Result<CheckResult> {
    let total = ctx.code.word_space() as u64;
    let mut ok = true;
    for key in 0..total {
        let y = ctx.code.word_from_key(key as u128);
        let dec = decode_gradient(ctx.code, ctx.registry.table(), &y, ctx.leaders.words(), ctx.order)?;
        let cw = ctx.oracle.coset_weight(ctx.code, &y)?;
        if dec.error.weight() != cw || ctx.code.syndrome_key_of(&dec.codeword)? != 0 {
            ok = false;
            break;
        }
    }
    Ok(result(
        "decode_weight_soundness",
        ok,
        format!("{total} words decoded to coset weight"),
    ))
}

/// Boundary of a set equals its shell united with its complement's shell —
/// exposed for reuse by the CLI and tests.
pub fn boundary_of_leader_region(code: &LinearCode, table: &CosetTable, caps: &Caps, exec: Exec) -> Result<DenseSet> {
    let leaders: Vec<Word> = table
        .iter()
        .flat_map(|(_, r)| r.leaders.iter().cloned())
        .collect();
    let set = word_set(code, &leaders, caps)?;
    Ok(boundary(code, &set, exec))
}

/// Verify every corpus code; stops at the first error.
pub fn verify_all(order: OrderSpec, caps: &Caps, seed: u64, exec: Exec) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    for (name, code) in crate::corpus::all() {
        out.push(verify_code(&code, name, order, caps, seed, exec)?);
    }
    Ok(out)
}

/// Convenience: the error raised when the suite cannot run under the caps.
pub fn ensure_verifiable(code: &LinearCode, caps: &Caps) -> Result<()> {
    caps.admit_words_hint(
        code.word_space(),
        &format!(
            "the incremental coset table alone remains admissible (q^(n-k) = {} <= {})",
            code.coset_count(),
            caps.coset_space
        ),
    )?;
    Ok(())
}
