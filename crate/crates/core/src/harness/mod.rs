//! Verification harness: check implementations, report assembly, and the
//! suite runner.
//!
//! Checks are independent; the runner may execute them on a small worker
//! pool. Each check derives its own seed stream from (master seed, check
//! name), so the assembled report is byte-identical regardless of worker
//! count.

pub mod checks;
pub mod report;

pub use checks::{
    bound_witness_algebra, check_rng, two_lattice_probe, verify_bound_witness,
    verify_counting, verify_counting_detects_planted_fault, verify_curve_against_oracle,
    verify_global_floor, verify_laguerre_example, verify_overlap_limits, verify_sampling_property,
    verify_unequal_limit,
};
pub use report::{assemble_report, CheckRecord, CheckStatus, LabeledValue, Totals, VerificationReport};

use crate::error::{Error, Result};
use crate::extensions::ExtensionFamily;
use crate::interval::Interval;
use crate::models::momentum::MomentumIntervalModel;

use std::f64::consts::PI;
use std::sync::Mutex;

/// Suite selector names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "all",
    "bound",
    "counting",
    "curve",
    "floor",
    "laguerre",
    "overlap",
    "probe",
    "sampling",
    "unequal",
];

type Task = Box<dyn FnOnce() -> CheckRecord + Send>;

fn suite_tasks(suite: &str, seed: u64) -> Result<Vec<Task>> {
    let momentum_l1 =
        || -> ExtensionFamily { ExtensionFamily::Momentum(MomentumIntervalModel::new(1.0).unwrap()) };
    let momentum_l2 =
        || -> ExtensionFamily { ExtensionFamily::Momentum(MomentumIntervalModel::new(2.0).unwrap()) };

    let mut tasks: Vec<Task> = Vec::new();
    let mut unknown = true;
    let want = |name: &str| suite == "all" || suite == name;

    if want("counting") {
        unknown = false;
        tasks.push(Box::new(move || {
            verify_counting(
                &momentum_l1(),
                1,
                PI - 1e-3,
                Interval::new(-20.0, 20.0).expect("static"),
                10_000,
                seed,
            )
        }));
        tasks.push(Box::new(move || verify_counting_detects_planted_fault(seed)));
        tasks.push(Box::new(move || {
            let f = ExtensionFamily::Laguerre(
                crate::models::laguerre::LaguerreSecondOrderModel::new(2000).expect("static"),
            );
            verify_counting(&f, 2, 1.0, Interval::new(500.0, 7000.0).expect("static"), 2_000, seed)
        }));
    }
    if want("unequal") {
        unknown = false;
        tasks.push(Box::new(|| {
            verify_unequal_limit(&[1e-2, 1e-3, 1e-4, 1e-5], &[0.0, 3.0, 5.0])
        }));
    }
    if want("overlap") {
        unknown = false;
        tasks.push(Box::new(|| {
            verify_overlap_limits(&[1e-2, 1e-3, 1e-4, 1e-5, 1e-6], &[(0.0, 1.0), (2.0, 7.0)])
        }));
    }
    if want("curve") {
        unknown = false;
        tasks.push(Box::new(move || verify_curve_against_oracle(&momentum_l1(), 5)));
        tasks.push(Box::new(move || verify_curve_against_oracle(&momentum_l2(), 5)));
    }
    if want("bound") {
        unknown = false;
        tasks.push(Box::new(move || {
            verify_bound_witness(&momentum_l1(), std::f64::consts::TAU, PI)
        }));
    }
    if want("floor") {
        unknown = false;
        tasks.push(Box::new(verify_global_floor));
    }
    if want("laguerre") {
        unknown = false;
        tasks.push(Box::new(|| verify_laguerre_example(2000)));
    }
    if want("sampling") {
        unknown = false;
        tasks.push(Box::new(verify_sampling_property));
    }
    if want("probe") {
        unknown = false;
        tasks.push(Box::new(move || two_lattice_probe(seed, 50)));
    }

    if unknown {
        return Err(Error::InvalidInput(format!(
            "unknown suite '{suite}'; expected one of {SUITES:?}"
        )));
    }
    Ok(tasks)
}

/// Runs the named suite on up to `workers` threads and assembles the
/// deterministic report.
pub fn run_suite(suite: &str, master_seed: u64, workers: usize) -> Result<VerificationReport> {
    let tasks = suite_tasks(suite, master_seed)?;
    let n = tasks.len();
    let workers = workers.max(1).min(n.max(1));

    let results: Mutex<Vec<Option<CheckRecord>>> = Mutex::new((0..n).map(|_| None).collect());
    let queue: Mutex<Vec<(usize, Task)>> = Mutex::new(tasks.into_iter().enumerate().collect());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let job = queue.lock().expect("queue lock").pop();
                match job {
                    Some((idx, task)) => {
                        let record = task();
                        results.lock().expect("results lock")[idx] = Some(record);
                    }
                    None => break,
                }
            });
        }
    });

    let checks: Vec<CheckRecord> = results
        .into_inner()
        .expect("results")
        .into_iter()
        .map(|r| r.expect("every task ran"))
        .collect();
    Ok(assemble_report(master_seed, checks))
}
