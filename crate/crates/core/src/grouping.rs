//! Duration-sorted, equal-cardinality grouping of a population.
//!
//! Individuals are stably sorted by evaluation duration (ties keep population
//! order) and dealt out in order into `G` contiguous groups. With
//! `N = qG + r`, the first `r` groups receive `q + 1` members and the rest
//! `q`. Group 0 holds the fastest (smallest) programs.

use crate::error::GpError;
use crate::timing::EvalRecord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPartition {
    /// Population indices per group, in ascending duration order.
    groups: Vec<Vec<usize>>,
    /// Group of each population index.
    membership: Vec<usize>,
}

impl GroupPartition {
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group(&self, g: usize) -> &[usize] {
        &self.groups[g]
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Size of the partitioned population.
    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    /// The group holding population index `index`.
    pub fn group_of(&self, index: usize) -> Result<usize, GpError> {
        self.membership.get(index).copied().ok_or_else(|| {
            GpError::InvalidArgument(format!(
                "index {index} is outside a population of {}",
                self.len()
            ))
        })
    }
}

/// Cardinalities of `groups` near-equal slices of `n` items, larger first.
pub fn group_sizes(n: usize, groups: usize) -> Vec<usize> {
    let (q, r) = (n / groups, n % groups);
    (0..groups).map(|g| if g < r { q + 1 } else { q }).collect()
}

/// Partitions positions `0..durations.len()` by their duration.
pub fn partition_by_duration(durations: &[u64], groups: usize) -> Result<GroupPartition, GpError> {
    let n = durations.len();
    if n == 0 {
        return Err(GpError::EmptyPopulation);
    }
    if groups == 0 || groups > n {
        return Err(GpError::InvalidArgument(format!(
            "group count {groups} must be in 1..={n}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    // sort_by_key is stable
    order.sort_by_key(|&i| durations[i]);

    let mut membership = vec![0usize; n];
    let mut result = Vec::with_capacity(groups);
    let mut rest = order.as_slice();
    for (g, size) in group_sizes(n, groups).into_iter().enumerate() {
        let (head, tail) = rest.split_at(size);
        for &i in head {
            membership[i] = g;
        }
        result.push(head.to_vec());
        rest = tail;
    }
    Ok(GroupPartition {
        groups: result,
        membership,
    })
}

/// Partitions a population from its evaluation records. The records must
/// cover indices `0..N` exactly once, in any order.
pub fn partition_by_time(records: &[EvalRecord], groups: usize) -> Result<GroupPartition, GpError> {
    let n = records.len();
    let mut durations = vec![None; n];
    for r in records {
        let slot = durations.get_mut(r.individual_index).ok_or_else(|| {
            GpError::InvalidArgument(format!(
                "record index {} outside population of {n}",
                r.individual_index
            ))
        })?;
        if slot.replace(r.duration).is_some() {
            return Err(GpError::InvalidArgument(format!(
                "duplicate record for index {}",
                r.individual_index
            )));
        }
    }
    let durations: Vec<u64> = durations.into_iter().map(|d| d.expect("covered")).collect();
    partition_by_duration(&durations, groups)
}
