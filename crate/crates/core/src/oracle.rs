//! Brute-force enumeration of contingency tables and independent checks of
//! the closed-form results in [`crate::bounds`].
//!
//! The enumerator generates every valid table of a given shape over a range
//! of object counts, in a deterministic order, and finds the exact minimum
//! adjusted Rand index by direct search. It deliberately shares no formula
//! with the closed-form bound it is used to check: the scanner recomputes
//! pair counts from raw sums of squares in machine integers, and agreement
//! with the `PairCounts` route is itself covered by tests.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::Zero;
use rayon::prelude::*;

use crate::bounds::{self, SumSquaresInstance};
use crate::error::{Error, Result};
use crate::ratio::ExactRatio;
use crate::table::ContingencyTable;

/// Object counts above this are rejected: the scanner's 128-bit arithmetic
/// is exact far beyond it, and no budget could enumerate such spaces anyway.
const MAX_SWEEP_OBJECTS: u64 = 10_000;

/// Search space for table enumeration: every `rows x cols` non-negative
/// integer matrix with no empty row or column and a total in
/// `[max(rows, cols), n_max]`, optionally restricted to 0/1 entries.
#[derive(Clone, Debug)]
pub struct EnumerationSpec {
    rows: usize,
    cols: usize,
    n_min: u64,
    n_max: u64,
    zero_one_only: bool,
}

impl EnumerationSpec {
    /// Validates the shape and sweep range. With `zero_one_only` the upper
    /// end is clamped to `rows * cols`, the most objects a 0/1 table can
    /// hold.
    pub fn new(rows: usize, cols: usize, n_max: u64, zero_one_only: bool) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(
                "table shape needs at least one row and one column".into(),
            ));
        }
        let cells = rows as u128 * cols as u128;
        let n_min = rows.max(cols) as u64;
        let mut n_max = n_max;
        if zero_one_only {
            n_max = n_max.min(cells.min(u64::MAX as u128) as u64);
        }
        if n_max < n_min {
            return Err(Error::InvalidInput(format!(
                "n_max = {n_max} cannot fill {rows} x {cols} non-empty clusters (needs at least {n_min})"
            )));
        }
        if n_max > MAX_SWEEP_OBJECTS {
            return Err(Error::InvalidInput(format!(
                "n_max = {n_max} exceeds the supported sweep limit {MAX_SWEEP_OBJECTS}"
            )));
        }
        Ok(Self {
            rows,
            cols,
            n_min,
            n_max,
            zero_one_only,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Smallest object count swept: `max(rows, cols)`.
    pub fn n_min(&self) -> u64 {
        self.n_min
    }

    /// Largest object count swept (after the 0/1 clamp, if any).
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn zero_one_only(&self) -> bool {
        self.zero_one_only
    }

    fn entry_cap(&self) -> u64 {
        if self.zero_one_only {
            1
        } else {
            u64::MAX
        }
    }

    /// Number of candidate entry vectors the sweep generates, before the
    /// positive-marginal filter. This is what the budget is charged against.
    pub fn candidate_space(&self) -> BigUint {
        let cells = self.rows as u64 * self.cols as u64;
        let mut total = BigUint::zero();
        for n in self.n_min..=self.n_max {
            total += if self.zero_one_only {
                binomial(BigUint::from(cells), BigUint::from(n))
            } else {
                binomial(BigUint::from(n + cells - 1), BigUint::from(cells - 1))
            };
        }
        total
    }
}

/// Execution limits for the oracle.
#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Hard cap on candidate tables; oversized sweeps are refused before
    /// scanning starts, naming the attempted space size.
    pub max_tables: u64,
    /// Worker threads; 1 keeps the whole scan on the calling thread. The
    /// result is identical for any thread count.
    pub threads: usize,
    /// Minimum-attaining tables retained in the result, earliest in
    /// enumeration order first; the total count is always reported.
    pub max_witnesses: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_tables: 100_000_000,
            threads: 1,
            max_witnesses: 4096,
        }
    }
}

/// Outcome of a brute-force minimum search.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Exact minimum adjusted Rand index over the scanned space.
    pub best_ari: ExactRatio,
    /// Tables attaining the minimum, in enumeration order (ascending object
    /// count, lexicographic row-major entries within each count); truncated
    /// to the configured witness cap.
    pub best_tables: Vec<ContingencyTable>,
    /// Total number of minimum-attaining tables found.
    pub witnesses_found: u64,
    /// Valid tables evaluated.
    pub tables_scanned: u64,
    /// Valid tables skipped because their adjusted Rand index is undefined
    /// (zero denominator, e.g. two all-singleton partitions).
    pub undefined_skipped: u64,
    /// Object counts at which the minimum occurs.
    pub n_at_optimum: BTreeSet<u64>,
}

// ---------------------------------------------------------------------------
// Candidate generation

/// Weak compositions of `target` into a fixed number of parts, each at most
/// `cap`, visited in lexicographic order of the part vector.
struct CompositionCursor {
    parts: Vec<u64>,
    cap: u64,
}

impl CompositionCursor {
    /// Positions the cursor on the lexicographically least composition;
    /// `None` when the target does not fit.
    fn new(cells: usize, target: u64, cap: u64) -> Option<Self> {
        if target > cap.saturating_mul(cells as u64) {
            return None;
        }
        let mut parts = vec![0u64; cells];
        pack_right(&mut parts, 0, target, cap);
        Some(Self { parts, cap })
    }

    fn current(&self) -> &[u64] {
        &self.parts
    }

    /// Steps to the next composition in lexicographic order: bump the
    /// rightmost position that can absorb weight from its suffix, then
    /// re-pack the suffix into its least arrangement.
    fn advance(&mut self) -> bool {
        let cells = self.parts.len();
        if cells == 0 {
            return false;
        }
        let mut suffix = self.parts[cells - 1];
        for j in (0..cells - 1).rev() {
            if suffix > 0 && self.parts[j] < self.cap {
                self.parts[j] += 1;
                let moved = suffix - 1;
                pack_right(&mut self.parts, j + 1, moved, self.cap);
                return true;
            }
            suffix += self.parts[j];
        }
        false
    }
}

/// Writes the lexicographically least arrangement of `amount` into
/// `parts[from..]`: zeros first, weight packed against the right edge.
fn pack_right(parts: &mut [u64], from: usize, mut amount: u64, cap: u64) {
    for p in parts[from..].iter_mut() {
        *p = 0;
    }
    let mut i = parts.len();
    while amount > 0 {
        i -= 1;
        let take = amount.min(cap);
        parts[i] = take;
        amount -= take;
    }
}

// ---------------------------------------------------------------------------
// Candidate evaluation

struct TableStats {
    n: u64,
    sum_sq: u128,
    sum_row_sq: u128,
    sum_col_sq: u128,
}

/// Marginals and squared sums in one pass; `None` when some row or column
/// is empty (the candidate is not a valid table).
fn evaluate_candidate(
    entries: &[u64],
    rows: usize,
    cols: usize,
    col_buf: &mut Vec<u64>,
) -> Option<TableStats> {
    col_buf.clear();
    col_buf.resize(cols, 0);
    let mut n = 0u64;
    let mut sum_sq = 0u128;
    let mut sum_row_sq = 0u128;
    for i in 0..rows {
        let mut row_total = 0u64;
        for j in 0..cols {
            let v = entries[i * cols + j];
            row_total += v;
            col_buf[j] += v;
            sum_sq += (v as u128) * (v as u128);
        }
        if row_total == 0 {
            return None;
        }
        n += row_total;
        sum_row_sq += (row_total as u128) * (row_total as u128);
    }
    let mut sum_col_sq = 0u128;
    for &c in col_buf.iter() {
        if c == 0 {
            return None;
        }
        sum_col_sq += (c as u128) * (c as u128);
    }
    Some(TableStats {
        n,
        sum_sq,
        sum_row_sq,
        sum_col_sq,
    })
}

/// Adjusted Rand index of a valid table as an exact fraction with positive
/// denominator; `None` when the index is undefined. Independent of the
/// `PairCounts` code path.
fn ari_fraction(stats: &TableStats) -> Option<(i128, i128)> {
    let n = stats.n as i128;
    let total = n * (n - 1) / 2;
    if total == 0 {
        return None;
    }
    let a = (stats.sum_sq as i128 - n) / 2;
    let b = ((stats.sum_row_sq - stats.sum_sq) / 2) as i128;
    let c = ((stats.sum_col_sq - stats.sum_sq) / 2) as i128;
    let d = total - a - b - c;
    let chance = (a + b) * (a + c) + (c + d) * (b + d);
    let denom = total * total - chance;
    if denom == 0 {
        return None;
    }
    Some((total * (a + d) - chance, denom))
}

/// Exact comparison of fractions with positive denominators.
fn cmp_fraction(x: (i128, i128), y: (i128, i128)) -> Ordering {
    (x.0 * y.1).cmp(&(y.0 * x.1))
}

// ---------------------------------------------------------------------------
// Minimum tracking

struct ScanState {
    best: Option<(i128, i128)>,
    witnesses: Vec<(u64, Vec<u64>)>,
    witnesses_found: u64,
    max_witnesses: usize,
    tables_scanned: u64,
    undefined_skipped: u64,
    n_at_optimum: BTreeSet<u64>,
}

impl ScanState {
    fn new(max_witnesses: usize) -> Self {
        Self {
            best: None,
            witnesses: Vec::new(),
            witnesses_found: 0,
            max_witnesses,
            tables_scanned: 0,
            undefined_skipped: 0,
            n_at_optimum: BTreeSet::new(),
        }
    }

    fn offer(&mut self, n: u64, entries: &[u64], frac: (i128, i128)) {
        let ordering = match self.best {
            None => Ordering::Less,
            Some(best) => cmp_fraction(frac, best),
        };
        match ordering {
            Ordering::Less => {
                self.best = Some(frac);
                self.witnesses.clear();
                self.witnesses.push((n, entries.to_vec()));
                self.witnesses_found = 1;
                self.n_at_optimum.clear();
                self.n_at_optimum.insert(n);
            }
            Ordering::Equal => {
                self.witnesses_found += 1;
                if self.witnesses.len() < self.max_witnesses {
                    self.witnesses.push((n, entries.to_vec()));
                }
                self.n_at_optimum.insert(n);
            }
            Ordering::Greater => {}
        }
    }

    /// Folds in a state that scanned a later slice of the enumeration order.
    fn absorb(&mut self, other: ScanState) {
        self.tables_scanned += other.tables_scanned;
        self.undefined_skipped += other.undefined_skipped;
        let ordering = match (self.best, other.best) {
            (_, None) => return,
            (None, Some(_)) => Ordering::Greater,
            (Some(a), Some(b)) => cmp_fraction(a, b),
        };
        match ordering {
            Ordering::Greater => {
                self.best = other.best;
                self.witnesses = other.witnesses;
                self.witnesses_found = other.witnesses_found;
                self.n_at_optimum = other.n_at_optimum;
            }
            Ordering::Equal => {
                self.witnesses_found += other.witnesses_found;
                for w in other.witnesses {
                    if self.witnesses.len() >= self.max_witnesses {
                        break;
                    }
                    self.witnesses.push(w);
                }
                self.n_at_optimum.extend(other.n_at_optimum);
            }
            Ordering::Less => {}
        }
    }
}

fn scan_candidates(
    mut cursor: CompositionCursor,
    rows: usize,
    cols: usize,
    prefix: &[u64],
    state: &mut ScanState,
) {
    let mut entries = Vec::with_capacity(prefix.len() + cursor.current().len());
    entries.extend_from_slice(prefix);
    entries.extend_from_slice(cursor.current());
    let mut col_buf = Vec::with_capacity(cols);
    loop {
        entries[prefix.len()..].copy_from_slice(cursor.current());
        if let Some(stats) = evaluate_candidate(&entries, rows, cols, &mut col_buf) {
            state.tables_scanned += 1;
            match ari_fraction(&stats) {
                Some(frac) => state.offer(stats.n, &entries, frac),
                None => state.undefined_skipped += 1,
            }
        }
        if !cursor.advance() {
            break;
        }
    }
}

/// Scans one object count on the calling thread.
fn scan_n_serial(spec: &EnumerationSpec, n: u64, state: &mut ScanState) {
    let cells = spec.rows * spec.cols;
    if let Some(cursor) = CompositionCursor::new(cells, n, spec.entry_cap()) {
        scan_candidates(cursor, spec.rows, spec.cols, &[], state);
    }
}

/// Scans one object count in parallel, partitioned by the first row of the
/// table. Task results are merged in first-row lexicographic order, which
/// reproduces the serial enumeration order exactly.
fn scan_n_parallel(spec: &EnumerationSpec, n: u64, max_witnesses: usize) -> ScanState {
    let cap = spec.entry_cap();
    let mut prefixes: Vec<Vec<u64>> = Vec::new();
    // Every remaining row still needs at least one object.
    let heaviest_first_row = n - (spec.rows as u64 - 1);
    for first_row_total in 1..=heaviest_first_row {
        if let Some(mut cursor) = CompositionCursor::new(spec.cols, first_row_total, cap) {
            loop {
                prefixes.push(cursor.current().to_vec());
                if !cursor.advance() {
                    break;
                }
            }
        }
    }
    prefixes.sort();

    let suffix_cells = (spec.rows - 1) * spec.cols;
    let partials: Vec<ScanState> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut state = ScanState::new(max_witnesses);
            let remaining = n - prefix.iter().sum::<u64>();
            if let Some(cursor) = CompositionCursor::new(suffix_cells, remaining, cap) {
                scan_candidates(cursor, spec.rows, spec.cols, prefix, &mut state);
            }
            state
        })
        .collect();

    let mut merged = ScanState::new(max_witnesses);
    for partial in partials {
        merged.absorb(partial);
    }
    merged
}

// ---------------------------------------------------------------------------
// Public operations

/// Lazily yields every valid table in the spec's space, each exactly once,
/// in deterministic order: ascending object count, lexicographic row-major
/// entries within each count.
pub fn enumerate_tables(spec: &EnumerationSpec) -> TableIter {
    TableIter {
        rows: spec.rows,
        cols: spec.cols,
        cap: spec.entry_cap(),
        n_max: spec.n_max,
        next_n: spec.n_min,
        cursor: None,
        col_buf: Vec::new(),
    }
}

pub struct TableIter {
    rows: usize,
    cols: usize,
    cap: u64,
    n_max: u64,
    next_n: u64,
    cursor: Option<CompositionCursor>,
    col_buf: Vec<u64>,
}

impl Iterator for TableIter {
    type Item = ContingencyTable;

    fn next(&mut self) -> Option<ContingencyTable> {
        loop {
            if self.cursor.is_none() {
                if self.next_n > self.n_max {
                    return None;
                }
                self.cursor = CompositionCursor::new(self.rows * self.cols, self.next_n, self.cap);
                self.next_n += 1;
                continue;
            }
            let cursor = self.cursor.as_mut().expect("cursor present");
            let valid =
                evaluate_candidate(cursor.current(), self.rows, self.cols, &mut self.col_buf)
                    .is_some();
            let item = valid.then(|| {
                ContingencyTable::from_dense(self.rows, self.cols, cursor.current().to_vec())
                    .expect("enumerated candidate with positive marginals is a valid table")
            });
            if !cursor.advance() {
                self.cursor = None;
            }
            if item.is_some() {
                return item;
            }
        }
    }
}

/// Finds the exact minimum adjusted Rand index over the spec's space by
/// scanning every valid table. Tables with an undefined index are skipped
/// and counted. Deterministic for any thread count.
pub fn brute_force_min_ari(spec: &EnumerationSpec, config: &OracleConfig) -> Result<OracleResult> {
    if spec.rows.max(spec.cols) < 2 {
        return Err(Error::UndefinedIndex(
            "every 1 x 1 table has an undefined adjusted Rand index".into(),
        ));
    }
    let space = spec.candidate_space();
    if space > BigUint::from(config.max_tables) {
        return Err(Error::BudgetExceeded(format!(
            "sweep would generate {space} candidate tables for {} x {} with n in [{}, {}] (budget {})",
            spec.rows, spec.cols, spec.n_min, spec.n_max, config.max_tables
        )));
    }

    let mut state = ScanState::new(config.max_witnesses);
    if config.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            for n in spec.n_min..=spec.n_max {
                let partial = scan_n_parallel(spec, n, config.max_witnesses);
                state.absorb(partial);
            }
        });
    } else {
        for n in spec.n_min..=spec.n_max {
            scan_n_serial(spec, n, &mut state);
        }
    }

    let (num, den) = state.best.ok_or_else(|| {
        Error::UndefinedIndex("no table in the swept range has a defined adjusted Rand index".into())
    })?;
    let best_tables = state
        .witnesses
        .into_iter()
        .map(|(_, entries)| {
            ContingencyTable::from_dense(spec.rows, spec.cols, entries)
                .expect("witness passed the marginal filter")
        })
        .collect();
    Ok(OracleResult {
        best_ari: ExactRatio::new(num, den)?,
        best_tables,
        witnesses_found: state.witnesses_found,
        tables_scanned: state.tables_scanned,
        undefined_skipped: state.undefined_skipped,
        n_at_optimum: state.n_at_optimum,
    })
}

/// Verdict of checking the closed-form minimum against the brute-force scan.
#[derive(Clone, Debug)]
pub struct BoundVerdict {
    /// All three checks passed: minima agree, the optimum occurs at
    /// `n = rows + cols - 1`, and every witness at that count is a
    /// row/column permutation of the canonical attaining table.
    pub passed: bool,
    pub rows: usize,
    pub cols: usize,
    pub swept_n_min: u64,
    /// The verdict only speaks for object counts up to this bound.
    pub swept_n_max: u64,
    pub zero_one_only: bool,
    pub closed_form_min: ExactRatio,
    pub observed_min: ExactRatio,
    /// `rows + cols - 1`, where the bound is attained.
    pub extremal_n: u64,
    pub tables_scanned: u64,
    pub undefined_skipped: u64,
    pub n_at_optimum: BTreeSet<u64>,
    pub witnesses_found: u64,
    pub witnesses_at_extremal_n: u64,
    /// Failure descriptions; empty on a pass.
    pub diagnostics: Vec<String>,
}

/// Runs the brute-force search and compares it against the closed form:
/// the observed minimum must equal `bounds::min_ari`, the optimum must
/// occur at `n = rows + cols - 1`, and every witness at that object count
/// must be a row/column permutation of `bounds::extremal_table`. A mismatch
/// is a failing verdict, not an error.
pub fn verify_min_ari_bound(spec: &EnumerationSpec, config: &OracleConfig) -> Result<BoundVerdict> {
    let r = spec.rows as u64;
    let s = spec.cols as u64;
    let closed_form_min = bounds::min_ari(r, s)?;
    let extremal_n = r + s - 1;
    if spec.n_max < extremal_n {
        return Err(Error::InvalidInput(format!(
            "sweep must include n = {extremal_n}, where the bound is attained (n_max = {})",
            spec.n_max
        )));
    }
    let result = brute_force_min_ari(spec, config)?;
    let mut diagnostics = Vec::new();

    if result.best_ari != closed_form_min {
        diagnostics.push(format!(
            "observed minimum {} differs from closed form {closed_form_min}",
            result.best_ari
        ));
    }
    if !result.n_at_optimum.contains(&extremal_n) {
        diagnostics.push(format!(
            "optimum not attained at n = {extremal_n} (found at {:?})",
            result.n_at_optimum
        ));
    }

    let canonical = bounds::extremal_table(r, s)?;
    let mut witnesses_at_extremal_n = 0u64;
    for witness in &result.best_tables {
        if witness.total_objects() != extremal_n {
            continue;
        }
        witnesses_at_extremal_n += 1;
        if !is_row_col_permutation(witness, &canonical.witness)? {
            diagnostics.push(format!(
                "witness at n = {extremal_n} is not a permutation of the canonical table:\n{witness}"
            ));
        }
    }
    if witnesses_at_extremal_n == 0 {
        diagnostics.push(format!("no witness found at n = {extremal_n}"));
    }

    Ok(BoundVerdict {
        passed: diagnostics.is_empty(),
        rows: spec.rows,
        cols: spec.cols,
        swept_n_min: spec.n_min,
        swept_n_max: spec.n_max,
        zero_one_only: spec.zero_one_only,
        closed_form_min,
        observed_min: result.best_ari,
        extremal_n,
        tables_scanned: result.tables_scanned,
        undefined_skipped: result.undefined_skipped,
        n_at_optimum: result.n_at_optimum,
        witnesses_found: result.witnesses_found,
        witnesses_at_extremal_n,
        diagnostics,
    })
}

/// Whether `a` can be turned into `b` by permuting rows and columns.
/// Intended for the small tables the oracle produces.
fn is_row_col_permutation(a: &ContingencyTable, b: &ContingencyTable) -> Result<bool> {
    if a.row_count() != b.row_count()
        || a.col_count() != b.col_count()
        || a.total_objects() != b.total_objects()
    {
        return Ok(false);
    }
    // Permute the smaller side; rows are compared as sorted multisets.
    if a.col_count() > a.row_count() {
        return is_row_col_permutation(&a.transpose(), &b.transpose());
    }
    let cols = a.col_count();
    if cols > 10 {
        return Err(Error::BudgetExceeded(
            "permutation check supports at most 10 columns".into(),
        ));
    }
    let mut b_rows = b.to_rows();
    b_rows.sort();
    let a_rows = a.to_rows();
    let found = any_permutation(cols, |perm| {
        let mut permuted: Vec<Vec<u64>> = a_rows
            .iter()
            .map(|row| perm.iter().map(|&j| row[j]).collect())
            .collect();
        permuted.sort();
        permuted == b_rows
    });
    Ok(found)
}

/// Heap's algorithm; stops early when `predicate` holds for some
/// permutation of `0..k`.
fn any_permutation(k: usize, mut predicate: impl FnMut(&[usize]) -> bool) -> bool {
    let mut perm: Vec<usize> = (0..k).collect();
    if predicate(&perm) {
        return true;
    }
    let mut counters = vec![0usize; k];
    let mut i = 0;
    while i < k {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            if predicate(&perm) {
                return true;
            }
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    false
}

/// Verdict of exhaustively checking the sum-of-squares maximizer on an
/// integer instance.
#[derive(Clone, Debug)]
pub struct SumSquaresVerdict {
    pub passed: bool,
    pub part_count: usize,
    pub floor: i64,
    pub total: i64,
    pub closed_form_max: ExactRatio,
    pub observed_max: ExactRatio,
    /// The stated maximizer (everything above the floors in the first part)
    /// attains the observed maximum.
    pub maximizer_attains: bool,
    pub points_enumerated: u64,
    pub diagnostics: Vec<String>,
}

/// Enumerates every integer point with `part_count` coordinates `>= floor`
/// summing to `total`, and checks that the maximum of the sum of squares
/// equals the closed form `(total - (p-1)*floor)^2 + (p-1)*floor^2`.
pub fn verify_sum_squares_bound(
    part_count: usize,
    total: i64,
    floor: i64,
    config: &OracleConfig,
) -> Result<SumSquaresVerdict> {
    if part_count == 0 {
        return Err(Error::InvalidInput("at least one part is required".into()));
    }
    if total.unsigned_abs() > 1_000_000_000 || floor.unsigned_abs() > 1_000_000_000 {
        return Err(Error::InvalidInput(
            "totals and floors are limited to 1e9 in magnitude".into(),
        ));
    }
    let floor_sum = floor
        .checked_mul(part_count as i64)
        .ok_or_else(|| Error::InvalidInput("floor sum overflows".into()))?;
    if total < floor_sum {
        return Err(Error::InvalidInput(format!(
            "total {total} is below the floor sum {floor_sum}"
        )));
    }
    let slack = (total - floor_sum) as u64;
    let points = binomial(
        BigUint::from(slack + part_count as u64 - 1),
        BigUint::from(part_count as u64 - 1),
    );
    if points > BigUint::from(config.max_tables) {
        return Err(Error::BudgetExceeded(format!(
            "instance has {points} integer points (budget {})",
            config.max_tables
        )));
    }

    let floors = vec![ExactRatio::from_integer(floor); part_count];
    let instance = SumSquaresInstance::new(floors, ExactRatio::from_integer(total))?;
    let (_, closed_form_max) = bounds::max_sum_squares(&instance);

    let mut observed: Option<i128> = None;
    let mut points_enumerated = 0u64;
    let mut cursor =
        CompositionCursor::new(part_count, slack, u64::MAX).expect("slack fits its own parts");
    loop {
        points_enumerated += 1;
        let value: i128 = cursor
            .current()
            .iter()
            .map(|&extra| {
                let x = floor as i128 + extra as i128;
                x * x
            })
            .sum();
        if observed.is_none_or(|best| value > best) {
            observed = Some(value);
        }
        if !cursor.advance() {
            break;
        }
    }
    let observed_value = observed.expect("at least one point enumerated");
    let observed_max = ExactRatio::from_integer(observed_value);

    // Value at the stated maximizer: first part carries all the slack.
    let first = total as i128 - (part_count as i128 - 1) * floor as i128;
    let stated = first * first + (part_count as i128 - 1) * (floor as i128) * (floor as i128);
    let maximizer_attains = stated == observed_value;

    let mut diagnostics = Vec::new();
    if observed_max != closed_form_max {
        diagnostics.push(format!(
            "observed maximum {observed_max} differs from closed form {closed_form_max}"
        ));
    }
    if !maximizer_attains {
        diagnostics.push(format!(
            "stated maximizer value {stated} does not attain the observed maximum {observed_value}"
        ));
    }
    Ok(SumSquaresVerdict {
        passed: diagnostics.is_empty(),
        part_count,
        floor,
        total,
        closed_form_max,
        observed_max,
        maximizer_attains,
        points_enumerated,
        diagnostics,
    })
}
