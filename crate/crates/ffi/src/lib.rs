//! C ABI over the `gpgroup` engine.
//!
//! Objects cross the boundary as opaque handles created by `*_new` / `*_run`
//! functions and released by the matching `*_free`. Every fallible call
//! returns a [`GpgStatus`]; on failure [`gpg_last_error`] describes it.
//! Panics never unwind into C: they are caught and reported as
//! `GPG_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::num::NonZeroUsize;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gpgroup::engine::{aggregate, run_experiment, schedule_report, AggregateRow, ExperimentConfig, RunResult};
use gpgroup::grouping::partition_by_duration;
use gpgroup::report::aggregate_csv;
use gpgroup::{build_case_table, evaluate, ProgramTree};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidConfig = 3,
    Runtime = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Experiment settings. Opaque.
pub struct GpgConfig {
    inner: ExperimentConfig,
}

/// Results of a finished experiment. Opaque.
pub struct GpgExperiment {
    runs: Vec<RunResult>,
    rows: Vec<AggregateRow>,
}

/// Cross-run mean and sample SD for one generation.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GpgAggregateRow {
    pub generation: usize,
    pub best_fitness_mean: f64,
    pub best_fitness_sd: f64,
    pub avg_fitness_mean: f64,
    pub avg_fitness_sd: f64,
    pub avg_size_mean: f64,
    pub avg_size_sd: f64,
    pub avg_duration_mean: f64,
}

/// Statistics of one generation of one run.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GpgGenerationStats {
    pub generation: usize,
    pub best_fitness: u32,
    pub avg_fitness: f64,
    pub avg_size: f64,
    pub avg_duration: f64,
    pub max_size: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let msg = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior NUL"));
}

fn fail(status: GpgStatus, message: impl Into<String>) -> GpgStatus {
    set_error(message);
    status
}

fn guarded(f: impl FnOnce() -> GpgStatus) -> GpgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == GpgStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(GpgStatus::Panic, "internal panic"),
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, GpgStatus> {
    if p.is_null() {
        return Err(fail(GpgStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(GpgStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gpg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread ("" after a success).
/// Valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn gpg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// New config holding the library defaults. `bits` should be set before
/// running. Release with `gpg_config_free`.
#[no_mangle]
pub extern "C" fn gpg_config_new() -> *mut GpgConfig {
    Box::into_raw(Box::new(GpgConfig {
        inner: ExperimentConfig::default(),
    }))
}

/// # Safety
/// `config` must be NULL or a handle from `gpg_config_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gpg_config_free(config: *mut GpgConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Sets one setting using the CLI key names (`bits`, `pop`, `gens`,
/// `groups`, `runs`, `seed`, `timer`, `workers`, `tournament`, `xo-prob`,
/// `max-depth`, `elitism`, `init-min-depth`, `init-max-depth`).
///
/// # Safety
/// `config` must be a live handle; `key` and `value` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn gpg_config_set(
    config: *mut GpgConfig,
    key: *const c_char,
    value: *const c_char,
) -> GpgStatus {
    guarded(|| {
        let Some(config) = config.as_mut() else {
            return fail(GpgStatus::NullPointer, "config is NULL");
        };
        let key = try_status!(c_str(key, "key"));
        let value = try_status!(c_str(value, "value"));
        match config.inner.set(key, value) {
            Ok(()) => GpgStatus::Ok,
            Err(e) => fail(GpgStatus::InvalidConfig, e.to_string()),
        }
    })
}

/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gpg_config_validate(config: *const GpgConfig) -> GpgStatus {
    guarded(|| {
        let Some(config) = config.as_ref() else {
            return fail(GpgStatus::NullPointer, "config is NULL");
        };
        match config.inner.validate() {
            Ok(()) => GpgStatus::Ok,
            Err(e) => fail(GpgStatus::InvalidConfig, e.to_string()),
        }
    })
}

/// Runs every replicate of `config` and stores a new result handle in
/// `*out`. Release it with `gpg_experiment_free`.
///
/// # Safety
/// `config` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gpg_run_experiment(
    config: *const GpgConfig,
    out: *mut *mut GpgExperiment,
) -> GpgStatus {
    guarded(|| {
        let (Some(config), false) = (config.as_ref(), out.is_null()) else {
            return fail(GpgStatus::NullPointer, "config or out is NULL");
        };
        *out = ptr::null_mut();
        if let Err(e) = config.inner.validate() {
            return fail(GpgStatus::InvalidConfig, e.to_string());
        }
        let runs = match run_experiment(&config.inner) {
            Ok(r) => r,
            Err(e) => return fail(GpgStatus::Runtime, e.to_string()),
        };
        let rows = match aggregate(&runs) {
            Ok(r) => r,
            Err(e) => return fail(GpgStatus::Runtime, e.to_string()),
        };
        *out = Box::into_raw(Box::new(GpgExperiment { runs, rows }));
        GpgStatus::Ok
    })
}

/// # Safety
/// `experiment` must be NULL or a handle from `gpg_run_experiment`.
#[no_mangle]
pub unsafe extern "C" fn gpg_experiment_free(experiment: *mut GpgExperiment) {
    if !experiment.is_null() {
        drop(Box::from_raw(experiment));
    }
}

/// Number of aggregate rows (generations + 1); 0 for NULL.
///
/// # Safety
/// `experiment` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gpg_experiment_generation_count(experiment: *const GpgExperiment) -> usize {
    experiment.as_ref().map_or(0, |e| e.rows.len())
}

/// Number of runs; 0 for NULL.
///
/// # Safety
/// `experiment` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gpg_experiment_run_count(experiment: *const GpgExperiment) -> usize {
    experiment.as_ref().map_or(0, |e| e.runs.len())
}

/// # Safety
/// `experiment` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpg_experiment_row(
    experiment: *const GpgExperiment,
    index: usize,
    out: *mut GpgAggregateRow,
) -> GpgStatus {
    guarded(|| {
        let (Some(exp), Some(out)) = (experiment.as_ref(), out.as_mut()) else {
            return fail(GpgStatus::NullPointer, "experiment or out is NULL");
        };
        let Some(r) = exp.rows.get(index) else {
            return fail(GpgStatus::InvalidArgument, format!("row {index} out of range"));
        };
        *out = GpgAggregateRow {
            generation: r.generation,
            best_fitness_mean: r.best_fitness_mean,
            best_fitness_sd: r.best_fitness_sd,
            avg_fitness_mean: r.avg_fitness_mean,
            avg_fitness_sd: r.avg_fitness_sd,
            avg_size_mean: r.avg_size_mean,
            avg_size_sd: r.avg_size_sd,
            avg_duration_mean: r.avg_duration_mean,
        };
        GpgStatus::Ok
    })
}

/// Per-run statistics for generation `generation` of run `run`.
///
/// # Safety
/// `experiment` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpg_experiment_run_stats(
    experiment: *const GpgExperiment,
    run: usize,
    generation: usize,
    out: *mut GpgGenerationStats,
) -> GpgStatus {
    guarded(|| {
        let (Some(exp), Some(out)) = (experiment.as_ref(), out.as_mut()) else {
            return fail(GpgStatus::NullPointer, "experiment or out is NULL");
        };
        let Some(s) = exp.runs.get(run).and_then(|r| r.per_generation.get(generation)) else {
            return fail(
                GpgStatus::InvalidArgument,
                format!("run {run} generation {generation} out of range"),
            );
        };
        *out = GpgGenerationStats {
            generation: s.generation,
            best_fitness: s.best_fitness,
            avg_fitness: s.avg_fitness,
            avg_size: s.avg_size,
            avg_duration: s.avg_duration,
            max_size: s.max_size,
        };
        GpgStatus::Ok
    })
}

/// Writes the aggregate CSV, NUL-terminated, into `buf`. `*needed` receives
/// the byte length including the terminator; when `capacity` is smaller the
/// call returns `GPG_STATUS_BUFFER_TOO_SMALL` and writes nothing. `buf` may be
/// NULL when `capacity` is 0.
///
/// # Safety
/// `buf` must be writable for `capacity` bytes; `needed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gpg_experiment_csv(
    experiment: *const GpgExperiment,
    buf: *mut c_char,
    capacity: usize,
    needed: *mut usize,
) -> GpgStatus {
    guarded(|| {
        let (Some(exp), Some(needed)) = (experiment.as_ref(), needed.as_mut()) else {
            return fail(GpgStatus::NullPointer, "experiment or needed is NULL");
        };
        let csv = aggregate_csv(&exp.rows);
        *needed = csv.len() + 1;
        if capacity < csv.len() + 1 {
            return fail(
                GpgStatus::BufferTooSmall,
                format!("need {} bytes, have {capacity}", csv.len() + 1),
            );
        }
        if buf.is_null() {
            return fail(GpgStatus::NullPointer, "buf is NULL");
        }
        ptr::copy_nonoverlapping(csv.as_ptr(), buf.cast::<u8>(), csv.len());
        *buf.add(csv.len()) = 0;
        GpgStatus::Ok
    })
}

/// Scores an S-expression program such as `(and x0 (nor x1 x2))` on the
/// `num_bits` even-parity table. `out_cost` (may be NULL) receives the
/// cost-model duration, `size × 2^num_bits`.
///
/// # Safety
/// `program` must be a NUL-terminated string and `out_fitness` writable.
#[no_mangle]
pub unsafe extern "C" fn gpg_evaluate_program(
    program: *const c_char,
    num_bits: u32,
    out_fitness: *mut u32,
    out_cost: *mut u64,
) -> GpgStatus {
    guarded(|| {
        let text = try_status!(c_str(program, "program"));
        let Some(out_fitness) = out_fitness.as_mut() else {
            return fail(GpgStatus::NullPointer, "out_fitness is NULL");
        };
        let tree: ProgramTree = match text.parse() {
            Ok(t) => t,
            Err(e) => return fail(GpgStatus::InvalidArgument, e.to_string()),
        };
        let table = match build_case_table(num_bits) {
            Ok(t) => t,
            Err(e) => return fail(GpgStatus::InvalidArgument, e.to_string()),
        };
        match evaluate(&tree, &table) {
            Ok(f) => {
                *out_fitness = f;
                if let Some(c) = out_cost.as_mut() {
                    *c = (tree.size() as u64) << num_bits;
                }
                GpgStatus::Ok
            }
            Err(e) => fail(GpgStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Groups `n` items by duration into `groups` equal-cardinality groups and
/// writes each item's group index to `out_group_of[0..n]`.
///
/// # Safety
/// `durations` must be readable and `out_group_of` writable for `n` items.
#[no_mangle]
pub unsafe extern "C" fn gpg_partition_by_duration(
    durations: *const u64,
    n: usize,
    groups: usize,
    out_group_of: *mut usize,
) -> GpgStatus {
    guarded(|| {
        if durations.is_null() || out_group_of.is_null() {
            return fail(GpgStatus::NullPointer, "durations or out_group_of is NULL");
        }
        let durations = std::slice::from_raw_parts(durations, n);
        let partition = match partition_by_duration(durations, groups) {
            Ok(p) => p,
            Err(e) => return fail(GpgStatus::InvalidArgument, e.to_string()),
        };
        let out = std::slice::from_raw_parts_mut(out_group_of, n);
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = partition.group_of(i).expect("index in range");
        }
        GpgStatus::Ok
    })
}

/// Makespan of longest-first greedy dispatch of `n` durations onto
/// `workers` identical workers.
///
/// # Safety
/// `durations` must be readable for `n` items (may be NULL when `n` is 0).
#[no_mangle]
pub unsafe extern "C" fn gpg_schedule_makespan(
    durations: *const u64,
    n: usize,
    workers: usize,
    out_makespan: *mut u64,
) -> GpgStatus {
    guarded(|| {
        let Some(out) = out_makespan.as_mut() else {
            return fail(GpgStatus::NullPointer, "out_makespan is NULL");
        };
        if durations.is_null() && n > 0 {
            return fail(GpgStatus::NullPointer, "durations is NULL");
        }
        let Some(workers) = NonZeroUsize::new(workers) else {
            return fail(GpgStatus::InvalidArgument, "workers must be at least 1");
        };
        let durations = if n == 0 { &[][..] } else { std::slice::from_raw_parts(durations, n) };
        *out = schedule_report(durations, workers).makespan;
        GpgStatus::Ok
    })
}
