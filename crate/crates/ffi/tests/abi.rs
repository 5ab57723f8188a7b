use std::ffi::CStr;
use std::ptr;

use ridge_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ridge_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn model_roundtrip() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(ridge_model_new(2, &mut m), RidgeStatus::Ok);
        let theta = [1.0, -1.0, 0.5];
        assert_eq!(
            ridge_model_push_unit(m, 0.75, RidgeActivation::Ramp, theta.as_ptr(), 3, 1),
            RidgeStatus::Ok
        );
        assert_eq!(ridge_model_num_terms(m), 1);
        assert!((ridge_model_v(m) - 0.75).abs() < 1e-15);
        let mut y = 0.0;
        let x = [0.5, 0.25];
        assert_eq!(ridge_model_eval(m, x.as_ptr(), 2, &mut y), RidgeStatus::Ok);
        assert!((y - 0.75 * 0.75).abs() < 1e-12);
        ridge_model_free(m);
    }
}

#[test]
fn errors_map_to_status() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(ridge_model_new(2, &mut m), RidgeStatus::Ok);
        let theta = [1.0, 0.0];
        let s = ridge_model_push_unit(m, 1.0, RidgeActivation::Ramp, theta.as_ptr(), 2, 1);
        assert_eq!(s, RidgeStatus::DimensionMismatch);
        assert!(!last_error().is_empty());

        let mut y = 0.0;
        assert_eq!(ridge_model_eval(m, ptr::null(), 2, &mut y), RidgeStatus::NullPointer);
        assert_eq!(
            ridge_model_eval(ptr::null(), [0.0, 0.0].as_ptr(), 2, &mut y),
            RidgeStatus::NullPointer
        );
        ridge_model_free(m);
        ridge_model_free(ptr::null_mut());
        assert!(ridge_model_v(ptr::null()).is_nan());
    }
}

#[test]
fn fit_recovers_constant_unit() {
    // (0·x + 2)₊ has the largest norm in the dictionary, so one greedy step finds it.
    let n = 40;
    let x: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect();
    let y = vec![2.0; n];
    let cfg = RidgeGreedyConfig {
        radius: 2.0,
        activation: RidgeActivation::Ramp,
        m_max: 1,
        lambda: 0.0,
        exponent: 1.0,
        inner: RidgeInner::CoverExhaustive,
        restarts: 4,
        steps: 50,
        cover_m: 2,
        seed: 7,
    };
    unsafe {
        let mut data = ptr::null_mut();
        assert_eq!(
            ridge_dataset_new(x.as_ptr(), n, 1, y.as_ptr(), &mut data),
            RidgeStatus::Ok
        );
        let mut model = ptr::null_mut();
        assert_eq!(
            ridge_fit_lpgp(data, &cfg, &mut model),
            RidgeStatus::Ok,
            "{}",
            last_error()
        );
        let mut out = 0.0;
        assert_eq!(ridge_model_eval(model, [0.3].as_ptr(), 1, &mut out), RidgeStatus::Ok);
        assert!((out - 2.0).abs() < 1e-9, "got {out}");
        ridge_model_free(model);
        ridge_dataset_free(data);
    }
}

#[test]
fn dataset_shape_checked() {
    let x = [0.0; 6];
    let y = [0.0; 3];
    unsafe {
        let mut data = ptr::null_mut();
        assert_eq!(
            ridge_dataset_new(x.as_ptr(), 3, 2, y.as_ptr(), &mut data),
            RidgeStatus::Ok
        );
        ridge_dataset_free(data);
        assert_eq!(
            ridge_dataset_new(x.as_ptr(), 3, 2, ptr::null(), &mut data),
            RidgeStatus::NullPointer
        );
    }
}

#[test]
fn counts_and_penalties() {
    unsafe {
        let mut c = 0u64;
        assert_eq!(ridge_cover_count(2, 2, &mut c), RidgeStatus::Ok);
        assert_eq!(c, 15);
        assert_eq!(ridge_cover_count(1 << 40, 1 << 20, &mut c), RidgeStatus::Size);

        let cfg = RidgePenaltyConfig {
            b: 1.0,
            b_n: 1.0,
            sigma2: 1.0,
            eta: 1.0,
            delta1: 1.0,
            delta2: 1.0,
        };
        let (mut g, mut t) = (0.0, 0.0);
        assert_eq!(ridge_gamma_tau(&cfg, &mut g, &mut t), RidgeStatus::Ok);
        let core_cfg = ridge_core::penalty::PenaltyConfig {
            sigma2: 1.0,
            eta: 1.0,
            ..Default::default()
        };
        let want = ridge_core::penalty::gamma_tau(&core_cfg).unwrap();
        assert_eq!((g, t), want);

        let mut p = 0.0;
        assert_eq!(ridge_pen_nonoise(1.0, 1000, 10, 2.0, g, &mut p), RidgeStatus::Ok);
        assert!(p > 0.0);
        assert_eq!(
            ridge_pen_highdim(1.0, 1000, 10, 2.0, g, 1.0, 0.0, &mut p),
            RidgeStatus::Ok
        );
        assert!(p > 0.0);
        assert_eq!(
            ridge_pen_mixed(1.0, 1000, 10, 2.0, g, 1.0, 1.0, &mut p),
            RidgeStatus::Ok
        );
        assert!(p > 0.0);

        assert_eq!(ridge_truncate(3.0, 1.0), 1.0);
        assert_eq!(ridge_truncate(-3.0, 1.0), -1.0);
        assert_eq!(ridge_truncate(0.5, 1.0), 0.5);
        let y = [0.5, 2.0, -3.0];
        assert_eq!(ridge_tail_tn(y.as_ptr(), 3, 1.0, &mut p), RidgeStatus::Ok);
        assert_eq!(p, ridge_core::penalty::tail_tn(&y, 1.0));
    }
}

#[test]
fn header_declares_exports() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/ridge.h")).unwrap();
    for sym in [
        "ridge_last_error",
        "ridge_model_new",
        "ridge_model_push_unit",
        "ridge_model_eval",
        "ridge_model_free",
        "ridge_dataset_new",
        "ridge_fit_lpgp",
        "ridge_cover_count",
        "ridge_gamma_tau",
        "ridge_pen_moderate",
        "ridge_tail_tn",
        "typedef struct RidgeModelHandle RidgeModelHandle",
        "RIDGE_STATUS_REGIME_INVALID = 5",
    ] {
        assert!(h.contains(sym), "missing {sym}");
    }
}
