//! Acceptance suite: one test per shipping criterion, each printing a
//! single PASS line with its headline numbers (visible with
//! `cargo test --test acceptance -- --nocapture`).

use defspec_core::extensions::{spectrum_of, ExtensionFamily, Spectrum};
use defspec_core::harness::checks::check_rng;
use defspec_core::harness::{
    verify_counting, verify_counting_detects_planted_fault, verify_unequal_limit, CheckStatus,
};
use defspec_core::models::halfline::{
    gaussian_overlap, gaussian_overlap_quadrature, quasi_overlap, quasi_overlap_limit,
    quasi_overlap_quadrature, quasi_state_moments, HalfLineDerivativeModel,
};
use defspec_core::models::laguerre::{
    bump_corpus, laguerre_entry_oracle, laguerre_uncertainty, LaguerreSecondOrderModel,
};
use defspec_core::models::momentum::{momentum_uncertainty_bracket, MomentumIntervalModel};
use defspec_core::quad::QuadOpts;
use defspec_core::sampling::{reconstruct, reconstruction_error, transform_value, BandlimitedTestFunction};
use defspec_core::spectral::constrained::{constrained_min_bracket, ConstrainedPair};
use defspec_core::spectral::tridiag::{
    eig_sym_tridiagonal, eigvals_sym_tridiagonal, SymMatrix, SymTridiagonal,
};
use defspec_core::uncertainty::{curve_at, envelope_at, global_floor};
use defspec_core::Interval;

use rand::Rng;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

#[test]
fn criterion_01_momentum_floor() {
    let start = Instant::now();
    let f1 = ExtensionFamily::Momentum(MomentumIntervalModel::new(1.0).unwrap());
    let mut worst = 0.0_f64;
    for i in 0..25 {
        let t = -5.0 + 10.0 * i as f64 / 24.0;
        let window = Interval::new(t - 50.0, t + 50.0).unwrap();
        let v = envelope_at(&f1, t, 64, window).unwrap();
        worst = worst.max((v - PI).abs());
    }
    assert!(worst <= 1e-6, "envelope deviates from pi by {worst}");

    let floor1 = global_floor(&f1, Interval::new(0.0, TAU).unwrap(), 33, 64).unwrap();
    assert!(
        (floor1.value - PI).abs() <= 1e-6,
        "global floor {} vs pi",
        floor1.value
    );
    let f2 = ExtensionFamily::Momentum(MomentumIntervalModel::new(2.0).unwrap());
    let floor2 = global_floor(&f2, Interval::new(0.0, PI).unwrap(), 33, 64).unwrap();
    assert!(
        (floor2.value - PI / 2.0).abs() <= 1e-6,
        "global floor {} vs pi/2",
        floor2.value
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "acceptance criterion 1: PASS (envelope dev {worst:.2e}, floors {:.9}/{:.9}, {elapsed:?})",
        floor1.value, floor2.value
    );
}

#[test]
fn criterion_02_oracle_bracket() {
    let start = Instant::now();
    let m = MomentumIntervalModel::new(1.0).unwrap();
    let br = momentum_uncertainty_bracket(&m, 256, 0.0, 512).unwrap();
    assert!(
        br.lo <= PI && PI <= br.hi,
        "bracket [{}, {}] misses pi (raw lo {})",
        br.lo,
        br.hi,
        br.raw.lo
    );
    assert!(br.hi - br.lo <= 0.05, "width {}", br.hi - br.lo);
    assert!(br.hi <= 1.02 * PI, "hi {}", br.hi);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "acceptance criterion 2: PASS (bracket [{:.6}, {:.6}], raw lo {:.6}, width {:.4}, {elapsed:?})",
        br.lo, br.hi, br.raw.lo, br.hi - br.lo
    );
}

fn exhaustive_pair_min(s: &Spectrum, t: f64) -> f64 {
    let slots = s.slots();
    let mut best = f64::INFINITY;
    for i in 0..slots.len() {
        for j in (i + 1)..slots.len() {
            best = best.min(((slots[i] - t).abs() * (slots[j] - t).abs()).sqrt());
        }
    }
    best
}

#[test]
fn criterion_03_curve_formula_equivalence() {
    let mut rng = check_rng(42, "criterion_03");
    // 1000 random spectra of size <= 50 against exhaustive enumeration
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let n: usize = rng.random_range(2..=50);
        let mut eigs = Vec::with_capacity(n);
        let mut x: f64 = rng.random_range(-10.0..10.0);
        for _ in 0..n {
            eigs.push(x);
            x += rng.random_range(0.05..2.0);
        }
        let mult: Vec<usize> = (0..n).map(|_| rng.random_range(1..=2)).collect();
        let span = eigs[n - 1] - eigs[0];
        let window =
            Interval::new(eigs[0] - 5.0 * span - 1.0, eigs[n - 1] + 5.0 * span + 1.0).unwrap();
        let t = rng.random_range(eigs[0]..=eigs[n - 1]);
        let s = Spectrum::new(eigs, mult, window).unwrap();
        let fast = curve_at(&s, t).unwrap();
        let slow = exhaustive_pair_min(&s, t);
        worst = worst.max((fast - slow).abs() / (1.0 + slow));
    }
    assert!(worst <= 1e-12, "curve/enumeration deviation {worst}");

    // 100 random 2x2 unconstrained pairs against the closed form
    let mut worst2 = 0.0_f64;
    for _ in 0..100 {
        let b1: f64 = rng.random_range(-5.0..5.0);
        let gap: f64 = rng.random_range(0.5..3.0);
        let b2 = b1 + gap;
        let t = b1 + rng.random_range(0.1..0.9) * gap;
        let closed = ((t - b1) * (b2 - t)).sqrt();
        let b = SymMatrix::from_fn(2, |i, j| if i == j { if i == 0 { b1 } else { b2 } } else { 0.0 });
        let a = SymMatrix::from_fn(2, |i, j| {
            if i == j {
                let v = if i == 0 { b1 } else { b2 };
                v * v
            } else {
                0.0
            }
        });
        let pair = ConstrainedPair::new(b, a).unwrap();
        let br = constrained_min_bracket(&pair, t, None, 512).unwrap();
        worst2 = worst2.max((br.lo - closed).abs().max((br.hi - closed).abs()));
    }
    assert!(worst2 <= 1e-8, "2x2 oracle deviation {worst2}");
    println!(
        "acceptance criterion 3: PASS (enumeration dev {worst:.2e}, 2x2 oracle dev {worst2:.2e})"
    );
}

#[test]
fn criterion_04_counting_bound() {
    let f = ExtensionFamily::Momentum(MomentumIntervalModel::new(1.0).unwrap());
    // eps = pi - 5e-4 makes the doubled intervals 2*pi - 1e-3 long
    let rec = verify_counting(&f, 1, PI - 5e-4, Interval::new(-20.0, 20.0).unwrap(), 10_000, 42);
    assert_eq!(rec.status, CheckStatus::Pass, "{rec:?}");

    let fault = verify_counting_detects_planted_fault(42);
    assert_eq!(fault.status, CheckStatus::Pass, "{fault:?}");
    println!("acceptance criterion 4: PASS (10^4 intervals clean, planted fault detected)");
}

#[test]
fn criterion_05_unequal_index_limit() {
    let h = HalfLineDerivativeModel;
    let eps_list = [1e-2, 1e-3, 1e-4, 1e-5];
    for &lambda in &[0.0, 3.0, 5.0] {
        let mut last = f64::INFINITY;
        for &eps in &eps_list {
            let m = quasi_state_moments(&h, eps, lambda).unwrap();
            let unc = m.uncertainty();
            assert!(unc < last, "lambda {lambda}: uncertainty not decreasing at eps {eps}");
            last = unc;
            if (eps - 1e-4).abs() < 1e-18 {
                assert!(
                    (m.mean - lambda).abs() <= 0.05,
                    "lambda {lambda}: mean {} at eps 1e-4",
                    m.mean
                );
            }
        }
    }
    let rec = verify_unequal_limit(&eps_list, &[0.0, 3.0, 5.0]);
    assert_eq!(rec.status, CheckStatus::Pass, "{rec:?}");
    println!("acceptance criterion 5: PASS (monotone decrease, means within 0.05 at eps 1e-4)");
}

#[test]
fn criterion_06_overlap_limits() {
    let h = HalfLineDerivativeModel;
    let limit = quasi_overlap_limit(0.0, 1.0);
    let v = quasi_overlap(&h, 1e-6, 0.0, 1.0).unwrap();
    let final_err = (v - limit).norm();
    assert!(final_err <= 5e-3, "final error {final_err}");

    // fitted decay exponent over an eps ladder
    let eps_list = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
    let errs: Vec<f64> = eps_list
        .iter()
        .map(|&e| (quasi_overlap(&h, e, 0.0, 1.0).unwrap() - limit).norm())
        .collect();
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (&e, &err) in eps_list.iter().zip(&errs) {
        let (x, y) = (e.ln(), err.ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let n = eps_list.len() as f64;
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    assert!((slope - 0.5).abs() <= 0.1, "fitted exponent {slope}");

    let g = gaussian_overlap(1e-2, 0.0, 1.0).unwrap().norm();
    assert!(g <= 1e-9, "gaussian magnitude {g}");

    let opts = QuadOpts { rel_tol: 1e-11, ..QuadOpts::default() };
    let cf = quasi_overlap(&h, 0.01, 0.0, 1.0).unwrap();
    let q = quasi_overlap_quadrature(0.01, 0.0, 1.0, opts).unwrap();
    assert!((cf - q).norm() <= 1e-8 * q.norm(), "quasi quadrature disagreement");
    let cg = gaussian_overlap(0.05, 0.0, 1.0).unwrap();
    let qg = gaussian_overlap_quadrature(0.05, 0.0, 1.0, opts).unwrap();
    assert!((cg - qg).norm() <= 1e-8 * qg.norm(), "gaussian quadrature disagreement");
    println!(
        "acceptance criterion 6: PASS (final err {final_err:.2e}, exponent {slope:.3}, gaussian {g:.2e})"
    );
}

#[test]
fn criterion_07_laguerre_example() {
    // all 100 corpus bumps stay above the commutator floor
    let mut min_unc = f64::INFINITY;
    let corpus = bump_corpus();
    assert_eq!(corpus.len(), 100);
    for bump in &corpus {
        let (_, unc) = laguerre_uncertainty(bump).unwrap();
        min_unc = min_unc.min(unc);
    }
    assert!(min_unc >= 1.0 - 1e-4, "corpus minimum {min_unc}");

    // truncated interior spectrum: no unit interval holds more than two
    // eigenvalues (soft check: single self-adjoint realization, trusted
    // interior window only)
    let f = ExtensionFamily::Laguerre(LaguerreSecondOrderModel::new(2000).unwrap());
    let s = spectrum_of(&f, 0.0, Interval::new(0.0, 1e6).unwrap()).unwrap();
    let eigs = s.eigenvalues();
    let mut worst = 0usize;
    let mut j = 0usize;
    for i in 0..eigs.len() {
        if j < i {
            j = i;
        }
        while j + 1 < eigs.len() && eigs[j + 1] <= eigs[i] + 1.0 {
            j += 1;
        }
        worst = worst.max(j - i + 1);
    }
    assert!(worst <= 2, "unit interval with {worst} eigenvalues");

    // matrix entries against the quadrature oracle
    let tri = LaguerreSecondOrderModel::new(24).unwrap().matrix();
    let mut worst_entry = 0.0_f64;
    for n in 0..=20usize {
        for m in n..=(n + 3).min(23) {
            let oracle = laguerre_entry_oracle(m, n).unwrap();
            let stated = if m == n {
                tri.diag()[n]
            } else if m == n + 1 {
                tri.offdiag()[n]
            } else {
                0.0
            };
            worst_entry = worst_entry.max((stated - oracle).abs());
        }
    }
    assert!(worst_entry <= 1e-8, "entry deviation {worst_entry}");
    println!(
        "acceptance criterion 7: PASS (min uncertainty {min_unc:.4}, max unit-interval count {worst}, entry dev {worst_entry:.2e}; truncation caveat: single realization, interior window)"
    );
}

#[test]
fn criterion_08_eigensolver() {
    // free Jacobi matrix at n = 1000 against the closed form
    let n = 1000;
    let m = SymTridiagonal::new(vec![0.0; n], vec![1.0; n - 1]).unwrap();
    let vals = eigvals_sym_tridiagonal(&m).unwrap();
    let mut expected: Vec<f64> = (1..=n)
        .map(|k| 2.0 * (k as f64 * PI / (n as f64 + 1.0)).cos())
        .collect();
    expected.sort_by(f64::total_cmp);
    let mut worst = 0.0_f64;
    for (a, b) in vals.iter().zip(&expected) {
        worst = worst.max((a - b).abs());
    }
    assert!(worst <= 1e-10, "closed-form deviation {worst}");

    // residual and trace invariants on 100 random tridiagonals
    let mut rng = check_rng(42, "criterion_08");
    let tol = 1e-12;
    for _ in 0..100 {
        let n: usize = rng.random_range(2..=40);
        let d: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
        let e: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-5.0..5.0)).collect();
        let m = SymTridiagonal::new(d, e).unwrap();
        let eig = eig_sym_tridiagonal(&m, tol).unwrap();
        let bound = tol * (1.0 + m.inf_norm());
        for (lambda, v) in &eig {
            let mv = m.matvec(v);
            let res: f64 = mv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - lambda * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res <= bound, "residual {res} > {bound}");
        }
        let sum: f64 = eig.iter().map(|(v, _)| v).sum();
        assert!(
            (sum - m.trace()).abs() <= n as f64 * tol * m.inf_norm().max(1.0),
            "trace identity violated"
        );
    }
    println!("acceptance criterion 8: PASS (free Jacobi dev {worst:.2e}, 100 random tridiagonals clean)");
}

#[test]
fn criterion_09_sampling() {
    let profiles = [
        BandlimitedTestFunction::new(vec![1.0], 1.0).unwrap(),
        BandlimitedTestFunction::new(vec![0.0, 1.0], 1.0).unwrap(),
    ];
    let norm_factor = 1.0 / TAU.sqrt();
    let grid: Vec<f64> = (-66..=66).map(|i| TAU * i as f64 / 1.05).collect();
    let mut worst_node = 0.0_f64;
    let mut worst_sup = 0.0_f64;
    let mut worst_sup_raw = 0.0_f64;
    for g in &profiles {
        for theta in [0.0, 1.0, 2.0, 3.0] {
            for k in [-11i64, 0, 5] {
                let lambda_k = TAU * k as f64 - theta;
                let err = (reconstruct(g, theta, (-200, 200), lambda_k).unwrap()
                    - transform_value(g, lambda_k).unwrap())
                .norm();
                worst_node = worst_node.max(err);
            }
            let (sup_raw, _) = reconstruction_error(g, theta, (-200, 200), &grid).unwrap();
            worst_sup_raw = worst_sup_raw.max(sup_raw);
            worst_sup = worst_sup.max(sup_raw * norm_factor);
        }
    }
    assert!(worst_node <= 1e-12, "node error {worst_node}");
    assert!(
        worst_sup <= 1e-3,
        "interior sup error {worst_sup} (raw {worst_sup_raw})"
    );
    println!(
        "acceptance criterion 9: PASS (node err {worst_node:.2e}, sup err {worst_sup:.2e} in transform normalization, raw {worst_sup_raw:.2e})"
    );
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_defspec");
    let base = std::env::temp_dir().join(format!("defspec-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&base);
    std::fs::create_dir_all(&base).unwrap();

    let mut reports = Vec::new();
    for (i, threads) in ["1", "4", "4"].iter().enumerate() {
        let dir = base.join(format!("run{i}"));
        let status = std::process::Command::new(bin)
            .args([
                "verify",
                "--suite",
                "all",
                "--seed",
                "42",
                "--out-dir",
                dir.to_str().unwrap(),
            ])
            .env("DEFSPEC_THREADS", threads)
            .status()
            .expect("spawn defspec");
        assert!(status.success(), "verify run {i} exited {status}");
        reports.push(std::fs::read(dir.join("report.json")).unwrap());
    }
    assert_eq!(reports[0], reports[1], "thread count changed report bytes");
    assert_eq!(reports[1], reports[2], "rerun changed report bytes");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "suite wall time {elapsed:?}");
    let _ = std::fs::remove_dir_all(&base);
    println!(
        "acceptance criterion 10: PASS (byte-identical reports across runs and DEFSPEC_THREADS 1/4, three full suites in {elapsed:?})"
    );
}
