//! Closed-form minimum-ARI bound for given cluster counts.
//!
//! For clusterings with `r` and `s` clusters there is an explicit closed-form
//! value of the adjusted Rand index, attained by the table on `r + s - 1`
//! objects with one row of ones, one column of ones and zeroes elsewhere.
//! This module computes that value in exact arithmetic, materializes the
//! attaining table, and uses the value to normalize the adjusted Rand
//! distance onto `[0, 1]`.
//!
//! The closed form is exactly attained for every size pair, and exhaustive
//! search ([`crate::oracle`]) confirms it is the global minimum over all
//! object counts when the sizes are not too far apart. For strongly unequal
//! sizes (empirically, `max(r,s) > 2 (min(r,s) - 1)`) denser tables fall
//! below it; `oracle::verify_min_ari_bound` detects and reports exactly
//! this, and the normalization operations flag inputs beneath the closed
//! form instead of clamping them.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::pair_counts::PairCounts;
use crate::ratio::ExactRatio;
use crate::table::ContingencyTable;

/// Cell cap when materializing a witness table; the bound itself has no
/// size limit.
const MAX_WITNESS_CELLS: u128 = 100_000_000;

/// `C(m, 2)` as an unbounded integer.
fn choose2(m: u128) -> BigInt {
    BigInt::from(m) * BigInt::from(m.saturating_sub(1)) / 2
}

fn validate_sizes(r: u64, s: u64) -> Result<()> {
    if r == 0 || s == 0 {
        return Err(Error::InvalidInput(
            "cluster counts must be at least 1".into(),
        ));
    }
    if r == 1 && s == 1 {
        return Err(Error::UndefinedIndex(
            "the adjusted Rand index is undefined when both clusterings have a single cluster"
                .into(),
        ));
    }
    Ok(())
}

/// Closed-form minimum-ARI bound for two clusterings with `r` and `s`
/// clusters:
///
/// ```text
/// min ARI = [1 - C(r+s-1,2) * {C(r,2)^-1 + C(s,2)^-1} / 2]^-1   if min(r,s) >= 2
/// min ARI = 0                                                   if min(r,s) = 1
/// ```
///
/// Symmetric in `(r, s)`; lies in `[-1/2, 0]`, with `-1/2` only at `(2, 2)`.
/// The value is attained by [`extremal_table`]. For `min(r,s) = 1` it is the
/// true minimum (every such comparison has index exactly 0), and brute-force
/// search confirms global minimality whenever `max(r,s) <= 2 (min(r,s) - 1)`;
/// outside that regime tables with a lower index exist, which
/// [`crate::oracle::verify_min_ari_bound`] reports.
pub fn min_ari(r: u64, s: u64) -> Result<ExactRatio> {
    validate_sizes(r, s)?;
    if r.min(s) == 1 {
        return Ok(ExactRatio::zero());
    }
    let cr = choose2(r as u128);
    let cs = choose2(s as u128);
    let cn = choose2(r as u128 + s as u128 - 1);
    // [1 - cn*(cr+cs)/(2*cr*cs)]^-1 = 2*cr*cs / (2*cr*cs - cn*(cr+cs))
    let twice_prod = BigInt::from(2) * &cr * &cs;
    let denom = &twice_prod - cn * (cr + cs);
    ExactRatio::new(twice_prod, denom)
}

/// The equal-size simplification `min ARI = -r/(3r - 2)` for `r = s >= 2`;
/// tends to `-1/3` as `r` grows.
pub fn min_ari_equal_sizes(r: u64) -> Result<ExactRatio> {
    if r < 2 {
        return Err(Error::InvalidInput(
            "equal-size minimum requires at least 2 clusters".into(),
        ));
    }
    ExactRatio::new(-(r as i128), 3 * r as i128 - 2)
}

/// First-order approximation of the minimum, from `C(m,2) ~ m^2/2`:
/// `-2 r^2 s^2 / (r^4 + 2 r^3 s + 2 r s^3 + s^4)`. Exact rational output;
/// useful for large `r`, `s` where it tracks the exact bound closely.
pub fn approx_min_ari(r: u64, s: u64) -> Result<ExactRatio> {
    if r < 2 || s < 2 {
        return Err(Error::InvalidInput(
            "the approximation requires r >= 2 and s >= 2".into(),
        ));
    }
    let r = BigInt::from(r);
    let s = BigInt::from(s);
    let numer = BigInt::from(-2) * &r * &r * &s * &s;
    let denom = r.pow(4) + 2 * r.pow(3) * &s + 2 * &r * s.pow(3) + s.pow(4);
    ExactRatio::new(numer, denom)
}

/// Minimum-ARI bound for sizes `(r, s)` together with a witness table that
/// attains it.
#[derive(Clone, Debug)]
pub struct BoundReport {
    /// Cluster count of the first clustering (table rows).
    pub rows: u64,
    /// Cluster count of the second clustering (table columns).
    pub cols: u64,
    /// The attainable minimum of the adjusted Rand index.
    pub min_ari: ExactRatio,
    /// Object count of the witness: `r + s - 1` when `min(r,s) >= 2`,
    /// otherwise `max(r,s)`.
    pub witness_n: u64,
    /// The attaining table in canonical form (ones in row 1 and column 1;
    /// every row/column permutation attains the same value).
    pub witness: ContingencyTable,
    pub witness_pair_counts: PairCounts,
}

/// Builds the canonical attaining table for sizes `(r, s)` and checks that
/// its adjusted Rand index equals the closed-form bound.
///
/// For `min(r,s) >= 2` the witness has `n = r + s - 1` objects, first row
/// and first column all ones, zeroes elsewhere; its pair counts are
/// `(0, C(s,2), C(r,2), (r-1)(s-1))`. For `min(r,s) = 1` it is the all-ones
/// row (or column) vector, with index exactly 0.
pub fn extremal_table(r: u64, s: u64) -> Result<BoundReport> {
    validate_sizes(r, s)?;
    let cells = r as u128 * s as u128;
    if cells > MAX_WITNESS_CELLS {
        return Err(Error::BudgetExceeded(format!(
            "witness table would need {cells} cells (limit {MAX_WITNESS_CELLS})"
        )));
    }
    let rows = r as usize;
    let cols = s as usize;
    let (witness_n, entries) = if r.min(s) == 1 {
        (r.max(s), vec![1u64; rows * cols])
    } else {
        let mut entries = vec![0u64; rows * cols];
        entries[..cols].fill(1);
        for i in 0..rows {
            entries[i * cols] = 1;
        }
        (r + s - 1, entries)
    };
    let witness = ContingencyTable::from_dense(rows, cols, entries)?;
    debug_assert_eq!(witness.total_objects(), witness_n);
    let witness_pair_counts = witness.pair_counts()?;
    let bound = min_ari(r, s)?;
    let attained = witness_pair_counts.adjusted_rand_index()?;
    if attained != bound {
        return Err(Error::Internal(format!(
            "witness table attains {attained}, bound is {bound}"
        )));
    }
    Ok(BoundReport {
        rows: r,
        cols: s,
        min_ari: bound,
        witness_n,
        witness,
        witness_pair_counts,
    })
}

/// Normalized adjusted Rand distance plus a range flag for values beneath
/// the closed form.
#[derive(Clone, Debug)]
pub struct NormalizedArd {
    /// `(1 - ARI) / (1 - min ARI(r, s))`.
    pub value: ExactRatio,
    /// Set when the supplied index lies below the closed-form minimum for
    /// the given sizes; the value then exceeds 1. Nothing is clamped.
    pub ari_below_minimum: bool,
}

/// Normalizes a user-supplied adjusted Rand index onto the `[0, 1]` distance
/// scale for clusterings of the stated sizes: `(1 - ari) / (1 - min_ari)`.
/// 0 means perfect agreement, 1 means the closed-form minimum is attained.
pub fn normalized_ard_from_ari(ari: &ExactRatio, r: u64, s: u64) -> Result<NormalizedArd> {
    validate_sizes(r, s)?;
    if ari > &ExactRatio::one() {
        return Err(Error::InvalidInput(format!(
            "adjusted Rand index cannot exceed 1 (got {ari})"
        )));
    }
    let bound = min_ari(r, s)?;
    // 1 - bound >= 1 > 0, so the division is always defined.
    let value = (ExactRatio::one() - ari) / (ExactRatio::one() - &bound);
    Ok(NormalizedArd {
        value,
        ari_below_minimum: ari < &bound,
    })
}

/// Normalized adjusted Rand distance of a comparison given by its pair
/// counts and the true cluster counts `(r, s)`.
///
/// The counts cannot carry full provenance, so the necessary consistency is
/// enforced: the object count implied by the counts must admit `r` and `s`
/// non-empty clusters, and pairs separated in both partitions must vanish
/// exactly when `min(r,s) = 1`. The result lies in `[0, 1]` whenever the
/// closed form is the true minimum for these sizes; otherwise it may exceed
/// 1 with the flag set.
pub fn normalized_ard(counts: &PairCounts, r: u64, s: u64) -> Result<NormalizedArd> {
    validate_sizes(r, s)?;
    let n = counts.object_count();
    if n < r.max(s) {
        return Err(Error::InvalidInput(format!(
            "{n} objects cannot form {r} and {s} non-empty clusters"
        )));
    }
    if (counts.d == 0) != (r.min(s) == 1) {
        return Err(Error::InvalidInput(
            "pair counts are inconsistent with the stated cluster counts".into(),
        ));
    }
    let ari = counts.adjusted_rand_index()?;
    normalized_ard_from_ari(&ari, r, s)
}

/// Table-path normalization: sizes are taken from the table itself, so no
/// consistency mismatch is possible.
pub fn normalized_ard_for_table(table: &ContingencyTable) -> Result<NormalizedArd> {
    normalized_ard(
        &table.pair_counts()?,
        table.row_count() as u64,
        table.col_count() as u64,
    )
}

/// Inputs for the floor-constrained sum-of-squares maximization: amounts
/// `x_i >= floors[i]` with a fixed total, floors sorted non-increasing.
#[derive(Clone, Debug)]
pub struct SumSquaresInstance {
    floors: Vec<ExactRatio>,
    total: ExactRatio,
}

impl SumSquaresInstance {
    pub fn new(floors: Vec<ExactRatio>, total: ExactRatio) -> Result<Self> {
        if floors.is_empty() {
            return Err(Error::InvalidInput("at least one floor is required".into()));
        }
        if floors.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "floors must be sorted in non-increasing order".into(),
            ));
        }
        let floor_sum = floors
            .iter()
            .fold(ExactRatio::zero(), |acc, f| acc + f);
        if total < floor_sum {
            return Err(Error::InvalidInput(
                "total must be at least the sum of the floors".into(),
            ));
        }
        Ok(Self { floors, total })
    }

    pub fn floors(&self) -> &[ExactRatio] {
        &self.floors
    }

    pub fn total(&self) -> &ExactRatio {
        &self.total
    }
}

/// Maximizes the sum of squares over all `x` with `sum x_i = total` and
/// `x_i >= floors[i]`: push everything above the floors into the first
/// coordinate. Returns the maximizer and the maximum value
/// `(total - sum_{i>=2} floors[i])^2 + sum_{i>=2} floors[i]^2`.
pub fn max_sum_squares(instance: &SumSquaresInstance) -> (Vec<ExactRatio>, ExactRatio) {
    let tail = &instance.floors[1..];
    let tail_sum = tail.iter().fold(ExactRatio::zero(), |acc, f| acc + f);
    let first = instance.total.clone() - tail_sum;
    let mut value = &first * &first;
    let mut maximizer = Vec::with_capacity(instance.floors.len());
    maximizer.push(first);
    for floor in tail {
        value = value + floor * floor;
        maximizer.push(floor.clone());
    }
    (maximizer, value)
}
