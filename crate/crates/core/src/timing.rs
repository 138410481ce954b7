//! Timed fitness evaluation.
//!
//! The measured evaluation duration is the complexity surrogate consumed by
//! the grouping step. Two timers are available: the monotonic wall clock, and
//! a cost model that charges one unit per node visit (`size × 2^num_bits`),
//! which makes every downstream result reproducible bit for bit.

use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::Instant;

use crate::error::GpError;
use crate::gp::{Evaluation, Evaluator, FitnessCaseTable, Individual};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TimerMode {
    /// Elapsed nanoseconds of the evaluation call.
    WallClock,
    /// Node visits, `size × 2^num_bits`.
    #[default]
    CostModel,
}

impl fmt::Display for TimerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimerMode::WallClock => "wall",
            TimerMode::CostModel => "cost",
        })
    }
}

impl FromStr for TimerMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wall" => Ok(TimerMode::WallClock),
            "cost" => Ok(TimerMode::CostModel),
            other => Err(format!("expected `cost` or `wall`, got `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EvalRecord {
    pub individual_index: usize,
    pub duration: u64,
    pub fitness: u32,
    pub size: usize,
}

impl EvalRecord {
    fn from_cached(index: usize, ind: &Individual, e: Evaluation) -> Self {
        Self {
            individual_index: index,
            duration: e.duration,
            fitness: e.fitness,
            size: ind.size(),
        }
    }
}

fn measure(
    ind: &Individual,
    evaluator: &mut Evaluator<'_>,
    mode: TimerMode,
) -> Result<Evaluation, GpError> {
    match mode {
        TimerMode::CostModel => {
            let before = evaluator.node_visits();
            let fitness = evaluator.evaluate(ind.genome())?;
            Ok(Evaluation {
                fitness,
                duration: evaluator.node_visits() - before,
            })
        }
        TimerMode::WallClock => {
            let start = Instant::now();
            let fitness = evaluator.evaluate(ind.genome())?;
            let elapsed = start.elapsed().as_nanos();
            Ok(Evaluation {
                fitness,
                duration: u64::try_from(elapsed).unwrap_or(u64::MAX),
            })
        }
    }
}

/// Evaluates `ind` and caches the result on it. An individual that is
/// already evaluated is returned from the cache without being re-timed.
pub fn timed_evaluate(
    index: usize,
    ind: &mut Individual,
    table: &FitnessCaseTable,
    mode: TimerMode,
) -> Result<EvalRecord, GpError> {
    let mut evaluator = Evaluator::new(table);
    timed_evaluate_with(index, ind, &mut evaluator, mode)
}

pub(crate) fn timed_evaluate_with(
    index: usize,
    ind: &mut Individual,
    evaluator: &mut Evaluator<'_>,
    mode: TimerMode,
) -> Result<EvalRecord, GpError> {
    if let Some(e) = ind.evaluation() {
        return Ok(EvalRecord::from_cached(index, ind, e));
    }
    let e = measure(ind, evaluator, mode)?;
    ind.mark_evaluated(e);
    Ok(EvalRecord::from_cached(index, ind, e))
}

/// Evaluates every unevaluated member of `pop` on `workers` threads and
/// returns one record per individual, in population order.
///
/// On failure the error names the lowest failing index; individuals that
/// were evaluated before the failure keep their cached results.
pub fn evaluate_population(
    pop: &mut [Individual],
    table: &FitnessCaseTable,
    mode: TimerMode,
    workers: usize,
) -> Result<Vec<EvalRecord>, GpError> {
    if workers == 0 {
        return Err(GpError::InvalidArgument("workers must be at least 1".into()));
    }
    let pending: Vec<(usize, &mut Individual)> = pop
        .iter_mut()
        .enumerate()
        .filter(|(_, ind)| !ind.is_evaluated())
        .collect();

    let mut failures: Vec<(usize, GpError)> = Vec::new();
    if workers == 1 || pending.len() <= 1 {
        let mut evaluator = Evaluator::new(table);
        for (i, ind) in pending {
            if let Err(e) = timed_evaluate_with(i, ind, &mut evaluator, mode) {
                failures.push((i, e));
                break;
            }
        }
    } else {
        let queue = Mutex::new(pending.into_iter());
        let collected = Mutex::new(Vec::new());
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| {
                    let mut evaluator = Evaluator::new(table);
                    loop {
                        let next = queue.lock().unwrap().next();
                        let Some((i, ind)) = next else { break };
                        if let Err(e) = timed_evaluate_with(i, ind, &mut evaluator, mode) {
                            collected.lock().unwrap().push((i, e));
                        }
                    }
                });
            }
        });
        failures = collected.into_inner().unwrap();
    }

    if let Some((index, source)) = failures.into_iter().min_by_key(|(i, _)| *i) {
        return Err(GpError::Evaluation {
            index,
            source: Box::new(source),
        });
    }

    Ok(pop
        .iter()
        .enumerate()
        .map(|(i, ind)| EvalRecord::from_cached(i, ind, ind.evaluation().expect("evaluated")))
        .collect())
}

/// Records of an already-evaluated population, read from the cache.
pub fn cached_records(pop: &[Individual]) -> Result<Vec<EvalRecord>, GpError> {
    pop.iter()
        .enumerate()
        .map(|(i, ind)| {
            ind.evaluation()
                .map(|e| EvalRecord::from_cached(i, ind, e))
                .ok_or(GpError::NotEvaluated(i))
        })
        .collect()
}
