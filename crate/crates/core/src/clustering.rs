//! Cluster labelings over a fixed set of objects.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A partition of `n >= 1` objects into non-empty clusters.
///
/// Labels are opaque tokens; they are mapped to dense cluster indices in
/// order of first appearance, which fixes the row and column order of
/// contingency tables built from two clusterings. Every index computed from
/// a clustering is invariant under relabeling, so the mapping only matters
/// for reproducible table layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    assignments: Vec<usize>,
    cluster_count: usize,
}

impl Clustering {
    /// Builds a clustering from one label per object. Clusters are non-empty
    /// by construction: a cluster exists exactly when its label occurs.
    pub fn from_labels<T: Eq + Hash>(labels: &[T]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidInput(
                "a clustering needs at least one object".into(),
            ));
        }
        let mut index_of: HashMap<&T, usize> = HashMap::new();
        let mut assignments = Vec::with_capacity(labels.len());
        for label in labels {
            let next = index_of.len();
            let index = *index_of.entry(label).or_insert(next);
            assignments.push(index);
        }
        Ok(Self {
            cluster_count: index_of.len(),
            assignments,
        })
    }

    /// Number of objects `n`.
    pub fn object_count(&self) -> usize {
        self.assignments.len()
    }

    /// Number of clusters (the clustering's size).
    pub fn cluster_count(&self) -> usize {
        self.cluster_count
    }

    /// Dense cluster index of every object, in object order.
    pub fn assignments(&self) -> &[usize] {
        &self.assignments
    }

    /// Cluster sizes in first-appearance order; all are at least 1.
    pub fn cluster_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.cluster_count];
        for &index in &self.assignments {
            sizes[index] += 1;
        }
        sizes
    }
}
