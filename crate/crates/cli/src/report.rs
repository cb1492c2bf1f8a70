//! Report types and rendering.
//!
//! Every numeric field carries the exact fraction in lowest terms; decimal
//! renderings are derived at the configured precision and omitted entirely
//! under `--exact`. The JSON shapes below are the stable machine interface
//! documented in the README.

use ari_core::bounds::{self, BoundReport};
use ari_core::oracle::BoundVerdict;
use ari_core::{ContingencyTable, ExactRatio, PairCounts, Result};
use serde::Serialize;

#[derive(Clone, Copy)]
pub struct RenderOptions {
    pub precision: usize,
    pub exact_only: bool,
}

impl RenderOptions {
    pub fn cell(&self, value: &ExactRatio) -> ValueCell {
        ValueCell {
            exact: value.to_string(),
            decimal: (!self.exact_only).then(|| value.decimal(self.precision)),
        }
    }
}

/// Exact value plus optional decimal rendering.
#[derive(Serialize)]
pub struct ValueCell {
    pub exact: String,
    pub decimal: Option<String>,
}

#[derive(Serialize)]
pub struct PairCountsCell {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub total_pairs: String,
}

impl From<&PairCounts> for PairCountsCell {
    fn from(counts: &PairCounts) -> Self {
        Self {
            a: counts.a.to_string(),
            b: counts.b.to_string(),
            c: counts.c.to_string(),
            d: counts.d.to_string(),
            total_pairs: counts.total_pairs.to_string(),
        }
    }
}

/// Full comparison report for `compare`.
#[derive(Serialize)]
pub struct ComparisonReport {
    pub n: u64,
    pub r: usize,
    pub s: usize,
    pub table: Vec<Vec<u64>>,
    pub pair_counts: PairCountsCell,
    pub rand_index: ValueCell,
    pub expected_rand_index: ValueCell,
    pub adjusted_rand_index: ValueCell,
    pub adjusted_rand_distance: ValueCell,
    pub min_ari: ValueCell,
    pub normalized_ard: ValueCell,
    pub warnings: Vec<String>,
}

pub fn build_comparison(table: &ContingencyTable, opts: &RenderOptions) -> Result<ComparisonReport> {
    let counts = table.pair_counts()?;
    let r = table.row_count() as u64;
    let s = table.col_count() as u64;
    let ri = counts.rand_index()?;
    let expected_ri = counts.expected_rand_index()?;
    let ari = counts.adjusted_rand_index()?;
    let ard = counts.adjusted_rand_distance()?;
    let bound = bounds::min_ari(r, s)?;
    let normalized = bounds::normalized_ard(&counts, r, s)?;
    let mut warnings = Vec::new();
    if normalized.ari_below_minimum {
        warnings.push(format!(
            "adjusted Rand index {ari} lies below the closed-form minimum {bound} for sizes {r} x {s}; the normalized distance exceeds 1"
        ));
    }
    Ok(ComparisonReport {
        n: table.total_objects(),
        r: table.row_count(),
        s: table.col_count(),
        table: table.to_rows(),
        pair_counts: PairCountsCell::from(&counts),
        rand_index: opts.cell(&ri),
        expected_rand_index: opts.cell(&expected_ri),
        adjusted_rand_index: opts.cell(&ari),
        adjusted_rand_distance: opts.cell(&ard),
        min_ari: opts.cell(&bound),
        normalized_ard: opts.cell(&normalized.value),
        warnings,
    })
}

fn cell_text(cell: &ValueCell) -> String {
    match &cell.decimal {
        Some(decimal) => format!("{} ({decimal})", cell.exact),
        None => cell.exact.clone(),
    }
}

pub fn comparison_text(report: &ComparisonReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("objects (n):            {}\n", report.n));
    out.push_str(&format!("sizes (r x s):          {} x {}\n", report.r, report.s));
    out.push_str("table:\n");
    for row in &report.table {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&format!("  {}\n", cells.join(" ")));
    }
    let p = &report.pair_counts;
    out.push_str(&format!(
        "pair counts:            a={} b={} c={} d={} N={}\n",
        p.a, p.b, p.c, p.d, p.total_pairs
    ));
    out.push_str(&format!("rand index:             {}\n", cell_text(&report.rand_index)));
    out.push_str(&format!("expected rand index:    {}\n", cell_text(&report.expected_rand_index)));
    out.push_str(&format!("adjusted rand index:    {}\n", cell_text(&report.adjusted_rand_index)));
    out.push_str(&format!("adjusted rand distance: {}\n", cell_text(&report.adjusted_rand_distance)));
    out.push_str(&format!("min ari (closed form):  {}\n", cell_text(&report.min_ari)));
    out.push_str(&format!("normalized ard:         {}\n", cell_text(&report.normalized_ard)));
    for warning in &report.warnings {
        out.push_str(&format!("warning:                {warning}\n"));
    }
    out
}

/// Report for `bound`.
#[derive(Serialize)]
pub struct BoundOutput {
    pub r: u64,
    pub s: u64,
    pub min_ari: ValueCell,
    /// First-order approximation; absent when `min(r,s) < 2`.
    pub approx_min_ari: Option<ValueCell>,
    /// Object count of the attaining table.
    pub witness_n: u64,
}

pub fn build_bound(r: u64, s: u64, opts: &RenderOptions) -> Result<BoundOutput> {
    let min_ari = bounds::min_ari(r, s)?;
    let approx = if r.min(s) >= 2 {
        Some(opts.cell(&bounds::approx_min_ari(r, s)?))
    } else {
        None
    };
    Ok(BoundOutput {
        r,
        s,
        min_ari: opts.cell(&min_ari),
        approx_min_ari: approx,
        witness_n: r + s - 1,
    })
}

pub fn bound_text(report: &BoundOutput) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "min ari ({} x {}):        {}\n",
        report.r,
        report.s,
        cell_text(&report.min_ari)
    ));
    if let Some(approx) = &report.approx_min_ari {
        out.push_str(&format!("approximation:          {}\n", cell_text(approx)));
    }
    out.push_str(&format!("attained at n:          {}\n", report.witness_n));
    out
}

/// Report for `extremal` (JSON mode; text mode prints the raw table).
#[derive(Serialize)]
pub struct ExtremalOutput {
    pub r: u64,
    pub s: u64,
    pub n: u64,
    pub table: Vec<Vec<u64>>,
    pub pair_counts: PairCountsCell,
    pub min_ari: ValueCell,
}

pub fn build_extremal(report: &BoundReport, opts: &RenderOptions) -> ExtremalOutput {
    ExtremalOutput {
        r: report.rows,
        s: report.cols,
        n: report.witness_n,
        table: report.witness.to_rows(),
        pair_counts: PairCountsCell::from(&report.witness_pair_counts),
        min_ari: opts.cell(&report.min_ari),
    }
}

/// Report for `normalize`.
#[derive(Serialize)]
pub struct NormalizeOutput {
    pub ari: ValueCell,
    pub r: u64,
    pub s: u64,
    pub normalized_ard: ValueCell,
    pub warnings: Vec<String>,
}

pub fn build_normalize(
    ari: &ExactRatio,
    r: u64,
    s: u64,
    opts: &RenderOptions,
) -> Result<NormalizeOutput> {
    let normalized = bounds::normalized_ard_from_ari(ari, r, s)?;
    let mut warnings = Vec::new();
    if normalized.ari_below_minimum {
        let bound = bounds::min_ari(r, s)?;
        warnings.push(format!(
            "ARI {ari} lies below the closed-form minimum {bound} for sizes {r} x {s}; the normalized distance exceeds 1"
        ));
    }
    Ok(NormalizeOutput {
        ari: opts.cell(ari),
        r,
        s,
        normalized_ard: opts.cell(&normalized.value),
        warnings,
    })
}

pub fn normalize_text(report: &NormalizeOutput) -> String {
    let mut out = format!("normalized ard:         {}\n", cell_text(&report.normalized_ard));
    for warning in &report.warnings {
        out.push_str(&format!("warning:                {warning}\n"));
    }
    out
}

/// Report for `verify`.
#[derive(Serialize)]
pub struct VerifyOutput {
    pub verdict: String,
    pub r: usize,
    pub s: usize,
    pub swept_n_min: u64,
    pub swept_n_max: u64,
    pub zero_one_only: bool,
    pub closed_form_min: ValueCell,
    pub observed_min: ValueCell,
    pub extremal_n: u64,
    pub n_at_optimum: Vec<u64>,
    pub tables_scanned: u64,
    pub undefined_skipped: u64,
    pub witnesses_found: u64,
    pub witnesses_at_extremal_n: u64,
    pub diagnostics: Vec<String>,
}

pub fn build_verify(verdict: &BoundVerdict, opts: &RenderOptions) -> VerifyOutput {
    VerifyOutput {
        verdict: if verdict.passed { "PASS" } else { "FAIL" }.to_string(),
        r: verdict.rows,
        s: verdict.cols,
        swept_n_min: verdict.swept_n_min,
        swept_n_max: verdict.swept_n_max,
        zero_one_only: verdict.zero_one_only,
        closed_form_min: opts.cell(&verdict.closed_form_min),
        observed_min: opts.cell(&verdict.observed_min),
        extremal_n: verdict.extremal_n,
        n_at_optimum: verdict.n_at_optimum.iter().copied().collect(),
        tables_scanned: verdict.tables_scanned,
        undefined_skipped: verdict.undefined_skipped,
        witnesses_found: verdict.witnesses_found,
        witnesses_at_extremal_n: verdict.witnesses_at_extremal_n,
        diagnostics: verdict.diagnostics.clone(),
    }
}

pub fn verify_text(report: &VerifyOutput) -> String {
    let mut out = String::new();
    out.push_str(&format!("verdict:                {}\n", report.verdict));
    out.push_str(&format!("sizes (r x s):          {} x {}\n", report.r, report.s));
    out.push_str(&format!(
        "swept n:                {}..={} ({})\n",
        report.swept_n_min,
        report.swept_n_max,
        if report.zero_one_only {
            "0/1 tables"
        } else {
            "full enumeration"
        }
    ));
    out.push_str(&format!(
        "tables scanned:         {} ({} undefined skipped)\n",
        report.tables_scanned, report.undefined_skipped
    ));
    out.push_str(&format!("closed-form min:        {}\n", cell_text(&report.closed_form_min)));
    out.push_str(&format!("observed min:           {}\n", cell_text(&report.observed_min)));
    let optimum: Vec<String> = report.n_at_optimum.iter().map(u64::to_string).collect();
    out.push_str(&format!("optimum at n:           {{{}}}\n", optimum.join(", ")));
    out.push_str(&format!(
        "witnesses:              {} total, {} at n = {}\n",
        report.witnesses_found, report.witnesses_at_extremal_n, report.extremal_n
    ));
    for diagnostic in &report.diagnostics {
        out.push_str(&format!("diagnostic:             {diagnostic}\n"));
    }
    out
}
