//! Experiment orchestration: the generational loop, replicated runs and
//! cross-run aggregation.

mod config;
mod schedule;
mod stats;

use rayon::prelude::*;

pub use config::{ExperimentConfig, CONFIG_KEYS};
pub use schedule::{schedule_records, schedule_report, ScheduleReport};
pub use stats::{aggregate_stats, mean_sd, AggregateRow, GenerationStats};

use crate::breeding::{group_breed_traced, Lineage};
use crate::error::{EngineError, GpError};
use crate::gp::{build_case_table, ramped_half_and_half, Individual};
use crate::grouping::{partition_by_time, GroupPartition};
use crate::seed::{generation_seed, rng_from_seed, run_seed};
use crate::timing::evaluate_population;

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub config: ExperimentConfig,
    pub run_index: usize,
    pub seed_used: u64,
    /// Generation 0 (the initial population) through `config.generations`.
    pub per_generation: Vec<GenerationStats>,
}

/// What the observer of [`run_one_observed`] sees after each breeding step.
pub struct GenerationEvent<'a> {
    /// The generation just produced.
    pub generation: usize,
    pub parents: &'a [Individual],
    pub partition: &'a GroupPartition,
    pub offspring: &'a [Individual],
    pub lineage: &'a [Lineage],
}

fn at_generation(generation: usize) -> impl FnOnce(GpError) -> EngineError {
    move |source| EngineError::Generation { generation, source }
}

/// Runs one replicate of `config`.
pub fn run_one(config: &ExperimentConfig, run_index: usize) -> Result<RunResult, EngineError> {
    run_one_observed(config, run_index, |_| {})
}

/// [`run_one`] with a hook called after every generation is bred and
/// evaluated.
pub fn run_one_observed<F>(
    config: &ExperimentConfig,
    run_index: usize,
    mut observe: F,
) -> Result<RunResult, EngineError>
where
    F: FnMut(&GenerationEvent<'_>),
{
    config.validate()?;
    let table = build_case_table(config.num_bits as u32).map_err(at_generation(0))?;
    let seed_used = run_seed(config.master_seed, run_index);

    let mut init_rng = rng_from_seed(generation_seed(seed_used, 0));
    let mut pop: Vec<Individual> = ramped_half_and_half(
        config.population_size,
        config.init_depth,
        config.num_bits,
        &mut init_rng,
    )
    .map_err(at_generation(0))?
    .into_iter()
    .map(Individual::new)
    .collect();
    let mut records = evaluate_population(&mut pop, &table, config.timer, config.workers)
        .map_err(at_generation(0))?;

    let mut per_generation = Vec::with_capacity(config.generations + 1);
    per_generation.push(GenerationStats::from_population(0, &pop).map_err(at_generation(0))?);

    for generation in 1..=config.generations {
        let partition = partition_by_time(&records, config.groups).map_err(at_generation(generation))?;
        let outcome = group_breed_traced(
            &pop,
            &partition,
            &config.plan,
            &table,
            config.timer,
            config.workers,
            generation_seed(seed_used, generation),
        )
        .map_err(at_generation(generation))?;
        observe(&GenerationEvent {
            generation,
            parents: &pop,
            partition: &partition,
            offspring: &outcome.offspring,
            lineage: &outcome.lineage,
        });
        pop = outcome.offspring;
        records = crate::timing::cached_records(&pop).map_err(at_generation(generation))?;
        per_generation
            .push(GenerationStats::from_population(generation, &pop).map_err(at_generation(generation))?);
    }

    Ok(RunResult {
        config: config.clone(),
        run_index,
        seed_used,
        per_generation,
    })
}

/// Runs `config.runs` independent replicates, concurrently, returned in run
/// order. The lowest failing run index is reported on error.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<RunResult>, EngineError> {
    config.validate()?;
    let results: Vec<Result<RunResult, EngineError>> = (0..config.runs)
        .into_par_iter()
        .map(|r| run_one(config, r))
        .collect();
    results
        .into_iter()
        .enumerate()
        .map(|(run_index, r)| {
            r.map_err(|e| EngineError::Run {
                run_index,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Per-generation mean and sample SD over runs.
pub fn aggregate(results: &[RunResult]) -> Result<Vec<AggregateRow>, EngineError> {
    let runs: Vec<&[GenerationStats]> = results.iter().map(|r| r.per_generation.as_slice()).collect();
    aggregate_stats(&runs)
}
