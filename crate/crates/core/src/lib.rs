//! Tree-based genetic programming with evaluation-time grouped breeding.
//!
//! Individuals are evaluated on the even-parity benchmark while their
//! evaluation cost is measured. Before each breeding phase the population is
//! sorted by that cost and split into groups of equal cardinality; selection,
//! crossover and evaluation of offspring then happen independently inside each
//! group. Since evaluation cost tracks program size, only programs of similar
//! size recombine, which keeps tree growth in check.
//!
//! The crate is organised bottom-up:
//!
//! - [`gp`]: program trees, the parity fitness table, initialization,
//!   tournament selection and subtree crossover.
//! - [`timing`]: timed evaluation under a wall-clock or a deterministic
//!   cost-model timer, sequentially or on a worker pool.
//! - [`grouping`]: the duration-sorted equal-cardinality partition.
//! - [`breeding`]: the standard breeder and the grouped breeder, in parallel
//!   and sequential-emulation flavours.
//! - [`engine`]: experiment configuration, the generational loop, multi-run
//!   replication, aggregation and the makespan report.
//! - [`report`]: CSV and SVG output.
//! - [`cli`]: the `gpgroup` command-line front end.

pub mod breeding;
pub mod cli;
pub mod engine;
pub mod error;
pub mod gp;
pub mod grouping;
pub mod report;
pub mod seed;
pub mod timing;

pub use breeding::{
    group_breed, group_breed_traced, sequential_emulation_breed, standard_breed, BreedPlan,
    GroupBreedOutcome, Lineage,
};
pub use engine::{
    aggregate, run_experiment, run_one, schedule_report, AggregateRow, ExperimentConfig,
    GenerationStats, RunResult, ScheduleReport,
};
pub use error::{ConfigError, EngineError, GpError};
pub use gp::{
    build_case_table, evaluate, ramped_half_and_half, subtree_crossover, tournament_select,
    FitnessCaseTable, Individual, Primitive, ProgramTree,
};
pub use grouping::{partition_by_time, GroupPartition};
pub use timing::{evaluate_population, timed_evaluate, EvalRecord, TimerMode};
