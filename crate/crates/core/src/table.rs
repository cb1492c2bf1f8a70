//! Contingency tables relating two clusterings of the same objects.

use std::fmt;

use crate::clustering::Clustering;
use crate::error::{Error, Result};

/// An `r x s` matrix of co-membership counts with strictly positive row and
/// column totals (no empty clusters) and total object count `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContingencyTable {
    rows: usize,
    cols: usize,
    entries: Vec<u64>, // row-major
    row_totals: Vec<u64>,
    col_totals: Vec<u64>,
    total: u64,
}

impl ContingencyTable {
    /// Cross-tabulates two clusterings of the same objects: entry `(i, j)`
    /// counts the objects in cluster `i` of `x` and cluster `j` of `y`.
    /// Row order follows first appearance of labels in `x`, column order
    /// first appearance in `y`.
    pub fn from_labels(x: &Clustering, y: &Clustering) -> Result<Self> {
        if x.object_count() != y.object_count() {
            return Err(Error::InvalidInput(format!(
                "clusterings label different object counts ({} vs {})",
                x.object_count(),
                y.object_count()
            )));
        }
        let rows = x.cluster_count();
        let cols = y.cluster_count();
        let mut entries = vec![0u64; rows * cols];
        for (&i, &j) in x.assignments().iter().zip(y.assignments()) {
            entries[i * cols + j] += 1;
        }
        Self::from_dense(rows, cols, entries)
    }

    /// Builds a table from explicit rows, validating shape and marginals.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidInput("table has no rows".into()));
        }
        let cols = rows[0].len();
        if cols == 0 {
            return Err(Error::InvalidInput("table has no columns".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    cols
                )));
            }
        }
        let entries: Vec<u64> = rows.iter().flatten().copied().collect();
        Self::from_dense(rows.len(), cols, entries)
    }

    /// Shared constructor: computes marginals and checks every invariant.
    pub(crate) fn from_dense(rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        debug_assert_eq!(entries.len(), rows * cols);
        let mut row_totals = vec![0u64; rows];
        let mut col_totals = vec![0u64; cols];
        let mut total: u64 = 0;
        for i in 0..rows {
            for j in 0..cols {
                let value = entries[i * cols + j];
                row_totals[i] = row_totals[i]
                    .checked_add(value)
                    .ok_or_else(|| Error::InvalidInput("table totals overflow".into()))?;
                col_totals[j] += value;
            }
            total = total
                .checked_add(row_totals[i])
                .ok_or_else(|| Error::InvalidInput("table totals overflow".into()))?;
        }
        if let Some(i) = row_totals.iter().position(|&t| t == 0) {
            return Err(Error::InvalidInput(format!(
                "row {} is empty; clusters must be non-empty",
                i + 1
            )));
        }
        if let Some(j) = col_totals.iter().position(|&t| t == 0) {
            return Err(Error::InvalidInput(format!(
                "column {} is empty; clusters must be non-empty",
                j + 1
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
            row_totals,
            col_totals,
            total,
        })
    }

    /// Number of rows `r` (clusters of the first clustering).
    pub fn row_count(&self) -> usize {
        self.rows
    }

    /// Number of columns `s` (clusters of the second clustering).
    pub fn col_count(&self) -> usize {
        self.cols
    }

    /// Total object count `n`.
    pub fn total_objects(&self) -> u64 {
        self.total
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.cols + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn row_totals(&self) -> &[u64] {
        &self.row_totals
    }

    pub fn col_totals(&self) -> &[u64] {
        &self.col_totals
    }

    /// Entries as owned rows, e.g. for serialization.
    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.cols).map(<[u64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = vec![0u64; self.entries.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.entry(i, j);
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
            row_totals: self.col_totals.clone(),
            col_totals: self.row_totals.clone(),
            total: self.total,
        }
    }

    /// True exactly when no object pair is co-clustered in both partitions,
    /// which for a valid table happens precisely when every entry is 0 or 1.
    pub fn is_a_zero(&self) -> bool {
        self.entries.iter().all(|&v| v <= 1)
    }

    /// True exactly when no object pair is separated in both partitions,
    /// which for a valid table happens precisely when `min(r, s) = 1`.
    pub fn is_d_zero(&self) -> bool {
        self.rows.min(self.cols) == 1
    }
}

impl fmt::Display for ContingencyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.cols).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, value) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{value}")?;
            }
        }
        Ok(())
    }
}
