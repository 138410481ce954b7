use std::ffi::{c_char, CStr, CString};
use std::ptr;

use gpgroup_ffi::*;

fn set(cfg: *mut GpgConfig, key: &str, value: &str) -> GpgStatus {
    let (k, v) = (CString::new(key).unwrap(), CString::new(value).unwrap());
    unsafe { gpg_config_set(cfg, k.as_ptr(), v.as_ptr()) }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gpg_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn experiment_round_trip() {
    let cfg = gpg_config_new();
    for (k, v) in [("bits", "4"), ("pop", "32"), ("gens", "4"), ("runs", "3"), ("groups", "4"), ("seed", "5")] {
        assert_eq!(set(cfg, k, v), GpgStatus::Ok, "{k}");
    }
    assert_eq!(unsafe { gpg_config_validate(cfg) }, GpgStatus::Ok);

    let mut exp = ptr::null_mut();
    assert_eq!(unsafe { gpg_run_experiment(cfg, &mut exp) }, GpgStatus::Ok);
    assert!(!exp.is_null());
    unsafe {
        assert_eq!(gpg_experiment_generation_count(exp), 5);
        assert_eq!(gpg_experiment_run_count(exp), 3);

        let mut row: GpgAggregateRow = std::mem::zeroed();
        assert_eq!(gpg_experiment_row(exp, 4, &mut row), GpgStatus::Ok);
        assert_eq!(row.generation, 4);
        assert!(row.best_fitness_mean <= 16.0 && row.avg_size_mean >= 1.0);
        assert_eq!(gpg_experiment_row(exp, 5, &mut row), GpgStatus::InvalidArgument);

        let mut stats: GpgGenerationStats = std::mem::zeroed();
        assert_eq!(gpg_experiment_run_stats(exp, 2, 0, &mut stats), GpgStatus::Ok);
        assert_eq!(stats.generation, 0);
        assert!(stats.max_size >= 1);

        let mut needed = 0usize;
        assert_eq!(
            gpg_experiment_csv(exp, ptr::null_mut(), 0, &mut needed),
            GpgStatus::BufferTooSmall
        );
        let mut buf = vec![0 as c_char; needed];
        assert_eq!(gpg_experiment_csv(exp, buf.as_mut_ptr(), needed, &mut needed), GpgStatus::Ok);
        let csv = CStr::from_ptr(buf.as_ptr()).to_str().unwrap();
        assert!(csv.starts_with("generation,best_fitness_mean"));
        assert_eq!(csv.lines().count(), 6);

        gpg_experiment_free(exp);
        gpg_config_free(cfg);
    }
}

#[test]
fn config_errors_are_reported() {
    let cfg = gpg_config_new();
    assert_eq!(set(cfg, "colour", "blue"), GpgStatus::InvalidConfig);
    assert!(last_error().contains("colour"));
    assert_eq!(set(cfg, "bits", "forty"), GpgStatus::InvalidConfig);
    assert_eq!(set(cfg, "bits", "3"), GpgStatus::Ok);
    assert_eq!(set(cfg, "groups", "100000"), GpgStatus::Ok);
    assert_eq!(unsafe { gpg_config_validate(cfg) }, GpgStatus::InvalidConfig);
    let mut exp = ptr::null_mut();
    assert_eq!(unsafe { gpg_run_experiment(cfg, &mut exp) }, GpgStatus::InvalidConfig);
    assert!(exp.is_null());
    unsafe { gpg_config_free(cfg) };
}

#[test]
fn null_pointers() {
    let key = CString::new("bits").unwrap();
    unsafe {
        assert_eq!(gpg_config_set(ptr::null_mut(), key.as_ptr(), key.as_ptr()), GpgStatus::NullPointer);
        assert_eq!(gpg_config_validate(ptr::null()), GpgStatus::NullPointer);
        assert_eq!(gpg_run_experiment(ptr::null(), ptr::null_mut()), GpgStatus::NullPointer);
        assert_eq!(gpg_experiment_generation_count(ptr::null()), 0);
        let mut f = 0u32;
        assert_eq!(gpg_evaluate_program(ptr::null(), 2, &mut f, ptr::null_mut()), GpgStatus::NullPointer);
        assert_eq!(gpg_schedule_makespan(ptr::null(), 3, 2, &mut 0), GpgStatus::NullPointer);
        gpg_config_free(ptr::null_mut());
        gpg_experiment_free(ptr::null_mut());
    }
}

#[test]
fn evaluate_program() {
    let prog = CString::new("(nor x0 x1)").unwrap();
    let (mut fitness, mut cost) = (0u32, 0u64);
    assert_eq!(
        unsafe { gpg_evaluate_program(prog.as_ptr(), 2, &mut fitness, &mut cost) },
        GpgStatus::Ok
    );
    assert_eq!((fitness, cost), (3, 12));

    let bad = CString::new("(nor x0 x5)").unwrap();
    assert_eq!(
        unsafe { gpg_evaluate_program(bad.as_ptr(), 2, &mut fitness, &mut cost) },
        GpgStatus::InvalidArgument
    );
    let garbage = CString::new("(xor").unwrap();
    assert_eq!(
        unsafe { gpg_evaluate_program(garbage.as_ptr(), 2, &mut fitness, &mut cost) },
        GpgStatus::InvalidArgument
    );
}

#[test]
fn partition_and_schedule() {
    let durations = [5u64, 1, 3, 3, 9, 2, 7];
    let mut group_of = [usize::MAX; 7];
    assert_eq!(
        unsafe { gpg_partition_by_duration(durations.as_ptr(), 7, 3, group_of.as_mut_ptr()) },
        GpgStatus::Ok
    );
    // by (duration, index): 1 5 2 | 3 0 | 6 4
    assert_eq!(group_of, [1, 0, 0, 1, 2, 0, 2]);
    assert_eq!(
        unsafe { gpg_partition_by_duration(durations.as_ptr(), 7, 8, group_of.as_mut_ptr()) },
        GpgStatus::InvalidArgument
    );

    let mut makespan = 0u64;
    assert_eq!(unsafe { gpg_schedule_makespan(durations.as_ptr(), 7, 3, &mut makespan) }, GpgStatus::Ok);
    assert_eq!(makespan, 10);
    assert_eq!(unsafe { gpg_schedule_makespan(ptr::null(), 0, 2, &mut makespan) }, GpgStatus::Ok);
    assert_eq!(makespan, 0);
    assert_eq!(
        unsafe { gpg_schedule_makespan(durations.as_ptr(), 7, 0, &mut makespan) },
        GpgStatus::InvalidArgument
    );
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(gpg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/gpgroup.h")).unwrap();
    for symbol in [
        "GPGROUP_H",
        "typedef struct GpgConfig GpgConfig",
        "typedef struct GpgExperiment GpgExperiment",
        "GPG_STATUS_BUFFER_TOO_SMALL",
        "gpg_config_new",
        "gpg_run_experiment",
        "gpg_experiment_csv",
        "gpg_evaluate_program",
        "gpg_partition_by_duration",
        "gpg_schedule_makespan",
        "size_t",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
}
