//! Quadrature rules.
//!
//! Two families are used. Integrands whose endpoint `1/sqrt` singularities
//! have been absorbed by a squared-sine substitution become even,
//! `pi`-periodic smooth functions of the angle; for those the nested
//! trapezoid rule on `[0, pi/2]` converges geometrically and reuses every
//! previous node when refining. General smooth integrands go through a
//! globally adaptive 15-point Gauss–Kronrod rule.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Stopping rule for the nested trapezoid rule.
#[derive(Debug, Clone, Copy)]
pub struct TrapezoidOptions {
    pub rel_tol: f64,
    pub min_level: u32,
    pub max_level: u32,
}

impl Default for TrapezoidOptions {
    fn default() -> Self {
        TrapezoidOptions {
            rel_tol: 1e-13,
            min_level: 3,
            max_level: 18,
        }
    }
}

/// Integral over `[0, pi/2]` of `f`, where `f(theta)` is a smooth function
/// of `sin^2(theta)`.
pub fn squared_sine_trapezoid<F>(f: F, opts: TrapezoidOptions) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut n: usize = 1;
    let mut h = FRAC_PI_2;
    let mut sum = 0.5 * (f(0.0) + f(FRAC_PI_2));
    let mut estimate = sum * h;
    let mut last_change = f64::INFINITY;
    for level in 1..=opts.max_level {
        let mut added = 0.0;
        for k in 0..n {
            added += f((2 * k + 1) as f64 * 0.5 * h);
        }
        sum += added;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        if !next.is_finite() {
            return Err(Error::QuadratureStall {
                tol: opts.rel_tol,
                last_change: f64::NAN,
            });
        }
        last_change = (next - estimate).abs();
        estimate = next;
        if level >= opts.min_level && last_change <= opts.rel_tol * next.abs() {
            return Ok(next);
        }
    }
    Err(Error::QuadratureStall {
        tol: opts.rel_tol,
        last_change: last_change / estimate.abs(),
    })
}

/// Tensor-product version of [`squared_sine_trapezoid`] on `[0, pi/2]^2`.
pub fn squared_sine_trapezoid_2d<F>(f: F, opts: TrapezoidOptions) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let rule = |n: usize| -> f64 {
        let h = FRAC_PI_2 / n as f64;
        let mut total = 0.0;
        for i in 0..=n {
            let wi = if i == 0 || i == n { 0.5 } else { 1.0 };
            let a = i as f64 * h;
            let mut row = 0.0;
            for j in 0..=n {
                let wj = if j == 0 || j == n { 0.5 } else { 1.0 };
                row += wj * f(a, j as f64 * h);
            }
            total += wi * row;
        }
        total * h * h
    };
    let mut n = 1usize << opts.min_level.min(4);
    let mut estimate = rule(n);
    let mut last_change = f64::INFINITY;
    let max_level = opts.max_level.min(11);
    while n < (1usize << max_level) {
        n *= 2;
        let next = rule(n);
        if !next.is_finite() {
            break;
        }
        last_change = (next - estimate).abs();
        estimate = next;
        if last_change <= opts.rel_tol * next.abs() {
            return Ok(next);
        }
    }
    Err(Error::QuadratureStall {
        tol: opts.rel_tol,
        last_change: last_change / estimate.abs(),
    })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod / 7-point Gauss pair: `(integral, error estimate)`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    if !value.is_finite() {
        return Err(Error::QuadratureStall {
            tol: 0.0,
            last_change: f64::NAN,
        });
    }
    Ok((value, err))
}

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        AdaptiveOptions {
            rel_tol: 1e-12,
            abs_tol: 0.0,
            max_intervals: 4000,
        }
    }
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
pub fn adaptive_gk<F>(f: F, a: f64, b: f64, opts: AdaptiveOptions) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let (value, err) = gk15(&f, a, b)?;
    let mut pieces = vec![(a, b, value, err)];
    let mut total = value;
    let mut total_err = err;
    while total_err > opts.abs_tol.max(opts.rel_tol * total.abs()) {
        if pieces.len() >= opts.max_intervals {
            return Err(Error::QuadratureStall {
                tol: opts.rel_tol,
                last_change: total_err / total.abs(),
            });
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, v, e) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid)?;
        let (v2, e2) = gk15(&f, mid, hi)?;
        total += v1 + v2 - v;
        total_err += e1 + e2 - e;
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
        if e1 + e2 >= e && (hi - lo) < 1e-14 * (a.abs() + b.abs()) {
            // refinement no longer helps; interval is at floating-point resolution
            break;
        }
    }
    // resum to shed the drift of the running total
    Ok(pieces.iter().map(|p| p.2).sum())
}
