use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::num::NonZeroUsize;

use crate::timing::EvalRecord;

/// Outcome of dispatching evaluation tasks onto identical workers.
#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleReport {
    pub makespan: u64,
    /// Total assigned duration per worker.
    pub busy: Vec<u64>,
    /// Worker chosen for each task, in input order.
    pub assignment: Vec<usize>,
    /// Sum of durations over `makespan × workers`; 0 when nothing ran.
    pub utilization: f64,
}

/// Longest-processing-time-first list scheduling: tasks are taken in
/// decreasing duration (ties by input order) and each goes to the currently
/// least-loaded worker (ties by lowest worker index).
///
/// This only reports a dispatch plan; evolution never consults it.
pub fn schedule_report(durations: &[u64], workers: NonZeroUsize) -> ScheduleReport {
    let w = workers.get();
    let mut order: Vec<usize> = (0..durations.len()).collect();
    order.sort_by_key(|&i| Reverse(durations[i]));

    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = (0..w).map(|k| Reverse((0, k))).collect();
    let mut busy = vec![0u64; w];
    let mut assignment = vec![0usize; durations.len()];
    for i in order {
        let Reverse((load, k)) = heap.pop().expect("non-empty heap");
        let load = load + durations[i];
        busy[k] = load;
        assignment[i] = k;
        heap.push(Reverse((load, k)));
    }
    let makespan = busy.iter().copied().max().unwrap_or(0);
    let total: u64 = durations.iter().sum();
    let utilization = if makespan == 0 {
        0.0
    } else {
        total as f64 / (makespan as f64 * w as f64)
    };
    ScheduleReport {
        makespan,
        busy,
        assignment,
        utilization,
    }
}

pub fn schedule_records(records: &[EvalRecord], workers: NonZeroUsize) -> ScheduleReport {
    let durations: Vec<u64> = records.iter().map(|r| r.duration).collect();
    schedule_report(&durations, workers)
}
