//! Values checked against independently computed references (mpmath, 25+ digits)
//! and against each other across the three evaluation methods.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use genairy::quad::{
    head_integral, moment_integral, moment_integral_numeric, tail_integral, v_pm, v_pm_derivative,
    OscillatoryIntegrand, QuadratureConfig,
};
use genairy::series::{initial_values, sign_for, Sign, TaylorModel};

// (n, x, value) from mpmath quadosc on the defining integral.
const GENERALIZED: &[(usize, f64, f64)] = &[
    (4, 0.0, 0.383_506_701_677_839_411_907_587_1),
    (4, 1.0, 0.429_281_829_180_638_068_245_921),
    (4, -3.0, -0.006_139_798_892_086_402_431_033_81),
    (4, 2.5, -0.009_941_651_980_616_840_955_490_018),
    (4, -5.0, -0.002_421_796_454_065_479_987_278_387),
    (4, 5.0, 0.094_108_931_400_282_638_858_761_3),
    (6, 0.0, 0.383_323_750_193_908_053_496_456_4),
    (6, 1.0, 0.220_561_705_458_312_307_251_737_6),
    (6, -3.0, -0.110_869_723_521_836_503_713_478_7),
    (6, 5.0, -0.003_824_956_399_056_554_201_081_956),
    (6, -5.0, 0.005_146_792_223_802_178_811_307_725),
];

// Classical Ai from mpmath.
const AIRY: &[(f64, f64)] = &[
    (1.0, 0.135_292_416_312_881_415_524_147_423_515),
    (-2.0, 0.227_407_428_201_685_575_991_924_436_038),
    (0.5, 0.231_693_606_480_833_489_769_125_254_51),
    (-1.0, 0.535_560_883_292_352_118_799_516_565_639),
    (2.0, 0.034_924_130_423_274_379_135_322_080_791_8),
    (-4.0, -0.070_265_532_949_289_515_099_084_311_631_8),
    (-10.0, 0.040_241_238_486_443_190_689_430_314_029_9),
    (6.0, 9.947_694_360_252_889_570_238_847_668_83e-6),
];

#[test]
fn generalized_values_both_methods() {
    let cfg = QuadratureConfig::default();
    for &(n, x, want) in GENERALIZED {
        let sign = sign_for(n).unwrap();
        let q = v_pm(n, sign, x, &cfg).unwrap().value;
        let s = TaylorModel::for_order(n).unwrap().eval(x).unwrap().value;
        assert!((q - want).abs() < 1e-10, "quad n={n} x={x}: {q} vs {want}");
        assert!(
            (s - want).abs() < 1e-12,
            "series n={n} x={x}: {s} vs {want}"
        );
    }
}

#[test]
fn classical_airy_both_methods() {
    let cfg = QuadratureConfig::default();
    let tm = TaylorModel::for_order(2).unwrap();
    for &(x, want) in AIRY {
        let q = v_pm(2, Sign::Plus, x, &cfg).unwrap().value;
        assert!((q - want).abs() < 1e-10, "quad x={x}");
        if x.abs() <= 4.0 {
            let s = tm.eval(x).unwrap().value;
            assert!((s - want).abs() < 1e-12, "series x={x}");
        }
    }
}

#[test]
fn seed_matches_quadrature_at_origin() {
    let cfg = QuadratureConfig::default();
    for n in [2, 4, 6, 8] {
        let sign = sign_for(n).unwrap();
        let iv = initial_values(n, sign).unwrap();
        for k in 0..n.min(4) {
            let q = v_pm_derivative(n, sign, 0.0, k, &cfg).unwrap().value;
            assert!(
                (q - iv.v[k]).abs() < 1e-9,
                "n={n} k={k}: {q} vs {}",
                iv.v[k]
            );
        }
    }
}

#[test]
fn cross_method_grid() {
    let cfg = QuadratureConfig::default();
    for (n, tol) in [(2usize, 1e-8), (4, 1e-6), (6, 1e-6)] {
        let tm = TaylorModel::for_order(n).unwrap();
        let sign = sign_for(n).unwrap();
        for i in 0..=20 {
            let x = -5.0 + 0.5 * i as f64;
            let s = tm.eval(x).unwrap().value;
            let q = v_pm(n, sign, x, &cfg).unwrap().value;
            assert!((s - q).abs() <= tol, "n={n} x={x}");
        }
    }
}

#[test]
fn moment_identity() {
    let cfg = QuadratureConfig::default();
    for n in [2usize, 4, 6] {
        for k in 0..n {
            let closed = moment_integral(n, k).unwrap();
            let numeric = moment_integral_numeric(n, k, &cfg).unwrap().value;
            assert!((closed - numeric).abs() <= 1e-7, "n={n} k={k}");
        }
        let v0 = v_pm(n, Sign::Plus, 0.0, &cfg).unwrap().value;
        assert!((PI * v0 - moment_integral(n, 0).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn cutoff_independence() {
    let cfg = QuadratureConfig::default();
    for (n, x) in [(2usize, 1.0), (2, -3.0), (4, 2.0), (6, -1.5)] {
        let f = OscillatoryIntegrand::new(n, sign_for(n).unwrap(), x);
        let t = f.cutoff();
        let total = |c: f64| {
            head_integral(&f, c, &cfg).unwrap().value + tail_integral(&f, c, &cfg).unwrap().value
        };
        assert!(
            (total(t) - total(2.0 * t)).abs() <= 2.0 * cfg.abs_tol,
            "n={n} x={x}"
        );
    }
}

#[test]
fn differentiation_under_the_integral() {
    let cfg = QuadratureConfig::with_tol(1e-12);
    let h = 1e-4;
    for (n, x) in [(2usize, 1.0), (2, -2.0), (4, 0.5), (6, -1.0)] {
        let sign = sign_for(n).unwrap();
        let fd = (v_pm(n, sign, x + h, &cfg).unwrap().value
            - v_pm(n, sign, x - h, &cfg).unwrap().value)
            / (2.0 * h);
        let direct = v_pm_derivative(n, sign, x, 1, &cfg).unwrap().value;
        assert!((fd - direct).abs() <= 1e-5, "n={n} x={x}: {fd} vs {direct}");
    }
}
