//! Pair-type tallies and the exact indices computed from them.
//!
//! Every unordered pair of objects falls into one of four categories across
//! two clusterings: together in both (`a`), together only in the first (`b`),
//! together only in the second (`c`), or apart in both (`d`). All Rand-style
//! indices are functions of these four counts.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratio::ExactRatio;
use crate::table::ContingencyTable;

/// The four pair-type counts together with `total_pairs = C(n,2) = a+b+c+d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCounts {
    /// Pairs co-clustered in both partitions.
    pub a: u128,
    /// Pairs co-clustered in the first partition only.
    pub b: u128,
    /// Pairs co-clustered in the second partition only.
    pub c: u128,
    /// Pairs separated in both partitions.
    pub d: u128,
    /// `C(n,2)`, the number of object pairs.
    pub total_pairs: u128,
}

impl ContingencyTable {
    /// Pair counts from the table's entry and marginal sums of squares:
    ///
    /// ```text
    /// a = (S - n) / 2
    /// b = (R - S) / 2
    /// c = (C - S) / 2
    /// d = (S + n^2 - R - C) / 2
    /// ```
    ///
    /// where `S`, `R`, `C` are the sums of squared entries, row totals and
    /// column totals. Each numerator is verified to be even before halving;
    /// a parity failure cannot occur for a valid table and is reported as an
    /// internal error.
    pub fn pair_counts(&self) -> Result<PairCounts> {
        let overflow = || Error::Internal("pair-count arithmetic overflow".into());
        let mut sum_sq: u128 = 0;
        for &value in self.entries() {
            let v = value as u128;
            sum_sq = sum_sq.checked_add(v.checked_mul(v).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
        let square_total = |totals: &[u64]| -> Result<u128> {
            let mut acc: u128 = 0;
            for &t in totals {
                let t = t as u128;
                acc = acc.checked_add(t.checked_mul(t).ok_or_else(overflow)?).ok_or_else(overflow)?;
            }
            Ok(acc)
        };
        let sum_row_sq = square_total(self.row_totals())?;
        let sum_col_sq = square_total(self.col_totals())?;
        let n = self.total_objects() as u128;
        let n_sq = n.checked_mul(n).ok_or_else(overflow)?;

        let halve = |value: u128| -> Result<u128> {
            if !value.is_multiple_of(2) {
                return Err(Error::Internal(
                    "pair-count numerator is odd; table is corrupted".into(),
                ));
            }
            Ok(value / 2)
        };
        let a = halve(sum_sq - n)?;
        let b = halve(sum_row_sq - sum_sq)?;
        let c = halve(sum_col_sq - sum_sq)?;
        let d = halve(
            sum_sq
                .checked_add(n_sq)
                .ok_or_else(overflow)?
                .checked_sub(sum_row_sq + sum_col_sq)
                .ok_or_else(|| Error::Internal("negative pair count".into()))?,
        )?;
        let total_pairs = halve(n_sq - n)?;
        debug_assert_eq!(a + b + c + d, total_pairs);
        Ok(PairCounts {
            a,
            b,
            c,
            d,
            total_pairs,
        })
    }
}

impl PairCounts {
    /// Assembles pair counts from the four categories, checking that their
    /// sum is a triangular number `C(n,2)` for some object count `n`.
    pub fn from_parts(a: u128, b: u128, c: u128, d: u128) -> Result<Self> {
        let total_pairs = a
            .checked_add(b)
            .and_then(|t| t.checked_add(c))
            .and_then(|t| t.checked_add(d))
            .ok_or_else(|| Error::InvalidInput("pair counts overflow".into()))?;
        if object_count_for(total_pairs).is_none() {
            return Err(Error::InvalidInput(format!(
                "{total_pairs} pairs is not C(n,2) for any object count n"
            )));
        }
        Ok(Self {
            a,
            b,
            c,
            d,
            total_pairs,
        })
    }

    /// The object count `n` with `C(n,2) = total_pairs`.
    pub fn object_count(&self) -> u64 {
        object_count_for(self.total_pairs).expect("validated at construction")
    }

    fn require_pairs(&self) -> Result<()> {
        if self.total_pairs == 0 {
            return Err(Error::UndefinedIndex(
                "indices need at least two objects".into(),
            ));
        }
        Ok(())
    }

    /// Rand index `(a + d) / C(n,2)`, the fraction of concordant pairs;
    /// lies in `[0, 1]`.
    pub fn rand_index(&self) -> Result<ExactRatio> {
        self.require_pairs()?;
        ExactRatio::new(self.a + self.d, self.total_pairs)
    }

    /// Expected Rand index under random label assignment with the observed
    /// marginals: `{(a+b)(a+c) + (c+d)(b+d)} / C(n,2)^2`.
    pub fn expected_rand_index(&self) -> Result<ExactRatio> {
        self.require_pairs()?;
        let total = BigInt::from(self.total_pairs);
        ExactRatio::new(self.chance_term(), &total * &total)
    }

    /// Adjusted Rand index, the Rand index corrected for chance agreement:
    ///
    /// ```text
    /// ARI = {N(a+d) - [(a+b)(a+c) + (c+d)(b+d)]} / {N^2 - [(a+b)(a+c) + (c+d)(b+d)]}
    /// ```
    ///
    /// with `N = C(n,2)`. Equal to `(RI - E[RI]) / (1 - E[RI])` whenever the
    /// denominator is non-zero; a zero denominator (in particular the
    /// comparison of two single-cluster partitions) makes the index
    /// undefined.
    pub fn adjusted_rand_index(&self) -> Result<ExactRatio> {
        self.require_pairs()?;
        let total = BigInt::from(self.total_pairs);
        let chance = self.chance_term();
        let denom = &total * &total - &chance;
        if denom.is_zero() {
            return Err(Error::UndefinedIndex(
                "adjusted Rand index has zero denominator for this comparison".into(),
            ));
        }
        let concordant = BigInt::from(self.a + self.d);
        ExactRatio::new(total * concordant - chance, denom)
    }

    /// Adjusted Rand distance `1 - ARI`, computed directly as
    /// `N(b+c) / {(a+b)(b+d) + (a+c)(c+d)}`; undefined exactly when the
    /// adjusted Rand index is.
    pub fn adjusted_rand_distance(&self) -> Result<ExactRatio> {
        self.require_pairs()?;
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        let c = BigInt::from(self.c);
        let d = BigInt::from(self.d);
        let denom = (&a + &b) * (&b + &d) + (&a + &c) * (&c + &d);
        if denom.is_zero() {
            return Err(Error::UndefinedIndex(
                "adjusted Rand distance has zero denominator for this comparison".into(),
            ));
        }
        let total = BigInt::from(self.total_pairs);
        ExactRatio::new(total * (b + c), denom)
    }

    /// `(a+b)(a+c) + (c+d)(b+d)`, the chance-agreement term shared by the
    /// expected and adjusted indices.
    fn chance_term(&self) -> BigInt {
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        let c = BigInt::from(self.c);
        let d = BigInt::from(self.d);
        (&a + &b) * (&a + &c) + (&c + &d) * (&b + &d)
    }
}

/// Inverts `N = n(n-1)/2`; `None` when `N` is not triangular.
fn object_count_for(total_pairs: u128) -> Option<u64> {
    let discriminant = 8u128.checked_mul(total_pairs)?.checked_add(1)?;
    let root = discriminant.isqrt();
    if root * root != discriminant {
        return None;
    }
    let n = root.div_ceil(2);
    if n * (n - 1) / 2 != total_pairs {
        return None;
    }
    u64::try_from(n).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::Clustering;

    /// Independent oracle: classify every object pair directly from two
    /// label vectors, without the sums-of-squares formulas.
    pub(crate) fn pair_counts_by_enumeration(x: &[usize], y: &[usize]) -> PairCounts {
        assert_eq!(x.len(), y.len());
        let n = x.len();
        let (mut a, mut b, mut c, mut d) = (0u128, 0u128, 0u128, 0u128);
        for i in 0..n {
            for j in (i + 1)..n {
                match (x[i] == x[j], y[i] == y[j]) {
                    (true, true) => a += 1,
                    (true, false) => b += 1,
                    (false, true) => c += 1,
                    (false, false) => d += 1,
                }
            }
        }
        PairCounts {
            a,
            b,
            c,
            d,
            total_pairs: (n as u128) * (n as u128 - 1) / 2,
        }
    }

    /// Expands a table into aligned label vectors (row index, column index
    /// per object), for feeding the enumeration oracle.
    pub(crate) fn labels_from_table(t: &ContingencyTable) -> (Vec<usize>, Vec<usize>) {
        let mut x = Vec::new();
        let mut y = Vec::new();
        for i in 0..t.row_count() {
            for j in 0..t.col_count() {
                for _ in 0..t.entry(i, j) {
                    x.push(i);
                    y.push(j);
                }
            }
        }
        (x, y)
    }

    fn golden_table() -> ContingencyTable {
        ContingencyTable::from_rows(&[
            vec![1, 0, 1, 1, 0],
            vec![0, 1, 0, 0, 1],
            vec![1, 0, 1, 0, 1],
            vec![0, 1, 0, 1, 0],
            vec![1, 0, 1, 0, 1],
        ])
        .unwrap()
    }

    fn ratio(n: i64, d: i64) -> ExactRatio {
        ExactRatio::new(n, d).unwrap()
    }

    #[test]
    fn golden_table_pair_counts() {
        let counts = golden_table().pair_counts().unwrap();
        assert_eq!((counts.a, counts.b, counts.c, counts.d), (0, 11, 11, 56));
        assert_eq!(counts.total_pairs, 78);
        assert_eq!(counts.object_count(), 13);
    }

    #[test]
    fn identical_partitions_have_no_one_sided_pairs() {
        let diag = ContingencyTable::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        let counts = diag.pair_counts().unwrap();
        assert_eq!((counts.a, counts.b, counts.c, counts.d), (4, 0, 0, 6));
    }

    #[test]
    fn formulas_match_direct_pair_enumeration() {
        let tables = [
            golden_table(),
            ContingencyTable::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap(),
            ContingencyTable::from_rows(&[vec![3, 1, 0], vec![0, 2, 2]]).unwrap(),
            ContingencyTable::from_rows(&[vec![5]]).unwrap(),
            ContingencyTable::from_rows(&[vec![1, 1, 1]]).unwrap(),
        ];
        for table in tables {
            let (x, y) = labels_from_table(&table);
            assert_eq!(
                table.pair_counts().unwrap(),
                pair_counts_by_enumeration(&x, &y),
                "mismatch for table\n{table}"
            );
        }
    }

    #[test]
    fn small_table_counts_from_enumeration() {
        // [[0,1],[1,1]]: three objects, every pair type except `a` once.
        let t = ContingencyTable::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap();
        let counts = t.pair_counts().unwrap();
        assert_eq!((counts.a, counts.b, counts.c, counts.d), (0, 1, 1, 1));
    }

    #[test]
    fn rand_index_values() {
        let golden = golden_table().pair_counts().unwrap();
        assert_eq!(golden.rand_index().unwrap(), ratio(56, 78));

        // Single cluster vs all singletons: no concordant pairs.
        let trivial = ContingencyTable::from_rows(&[vec![1, 1, 1, 1]]).unwrap();
        assert_eq!(
            trivial.pair_counts().unwrap().rand_index().unwrap(),
            ExactRatio::zero()
        );

        let diag = ContingencyTable::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(
            diag.pair_counts().unwrap().rand_index().unwrap(),
            ExactRatio::one()
        );
    }

    #[test]
    fn expected_rand_index_values() {
        let golden = golden_table().pair_counts().unwrap();
        assert_eq!(golden.expected_rand_index().unwrap(), ratio(4610, 6084));

        // Single cluster compared with itself: all pairs concordant by chance.
        let single = ContingencyTable::from_rows(&[vec![4]]).unwrap();
        assert_eq!(
            single.pair_counts().unwrap().expected_rand_index().unwrap(),
            ExactRatio::one()
        );

        // [[0,1],[1,1]]: K = (a+b)(a+c) + (c+d)(b+d) = 1*1 + 2*2 = 5, N = 3.
        // Cross-check: ARI = (RI - E)/(1 - E) = (1/3 - 5/9)/(4/9) = -1/2.
        let t = ContingencyTable::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            t.pair_counts().unwrap().expected_rand_index().unwrap(),
            ratio(5, 9)
        );
    }

    #[test]
    fn adjusted_rand_index_values() {
        let golden = golden_table().pair_counts().unwrap();
        assert_eq!(golden.adjusted_rand_index().unwrap(), ratio(-242, 1474));

        let diag = ContingencyTable::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(
            diag.pair_counts().unwrap().adjusted_rand_index().unwrap(),
            ExactRatio::one()
        );

        let t = ContingencyTable::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            t.pair_counts().unwrap().adjusted_rand_index().unwrap(),
            ratio(-1, 2)
        );
    }

    #[test]
    fn adjusted_rand_distance_values() {
        let golden = golden_table().pair_counts().unwrap();
        let ard = golden.adjusted_rand_distance().unwrap();
        assert_eq!(ard, ratio(1716, 1474));
        let ari = golden.adjusted_rand_index().unwrap();
        assert_eq!(ExactRatio::one() - ari, ard);

        let diag = ContingencyTable::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(
            diag.pair_counts().unwrap().adjusted_rand_distance().unwrap(),
            ExactRatio::zero()
        );

        // One cluster against anything: distance is exactly 1.
        let row = ContingencyTable::from_rows(&[vec![1, 1, 1, 1]]).unwrap();
        assert_eq!(
            row.pair_counts().unwrap().adjusted_rand_distance().unwrap(),
            ExactRatio::one()
        );
    }

    #[test]
    fn undefined_index_cases() {
        // Fewer than two objects.
        let lone = ContingencyTable::from_rows(&[vec![1]]).unwrap();
        let counts = lone.pair_counts().unwrap();
        assert!(matches!(
            counts.rand_index(),
            Err(Error::UndefinedIndex(_))
        ));
        assert!(matches!(
            counts.adjusted_rand_index(),
            Err(Error::UndefinedIndex(_))
        ));

        // Both clusterings a single cluster: zero denominator.
        let single = ContingencyTable::from_rows(&[vec![5]]).unwrap();
        let counts = single.pair_counts().unwrap();
        assert!(counts.rand_index().is_ok());
        assert!(matches!(
            counts.adjusted_rand_index(),
            Err(Error::UndefinedIndex(_))
        ));
        assert!(matches!(
            counts.adjusted_rand_distance(),
            Err(Error::UndefinedIndex(_))
        ));

        // Both clusterings all singletons: the Rand index is trivially 1 but
        // the chance-corrected index degenerates to 0/0.
        let singletons =
            ContingencyTable::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let counts = singletons.pair_counts().unwrap();
        assert!(matches!(
            counts.adjusted_rand_index(),
            Err(Error::UndefinedIndex(_))
        ));
    }

    #[test]
    fn from_parts_validates_triangular_totals() {
        let counts = PairCounts::from_parts(0, 11, 11, 56).unwrap();
        assert_eq!(counts.object_count(), 13);
        assert!(PairCounts::from_parts(1, 1, 1, 1).is_err()); // 4 pairs
        assert_eq!(PairCounts::from_parts(0, 0, 0, 0).unwrap().object_count(), 1);
    }

    #[test]
    fn labels_route_matches_table_route_on_golden_example() {
        let x = Clustering::from_labels(&[0, 1, 0, 0, 1, 2, 2, 2, 3, 3, 4, 4, 4]).unwrap();
        let y = Clustering::from_labels(&[0, 1, 2, 3, 4, 0, 2, 4, 1, 3, 0, 2, 4]).unwrap();
        let t = ContingencyTable::from_labels(&x, &y).unwrap();
        assert_eq!(t, golden_table());
    }
}
