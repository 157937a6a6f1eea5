//! Bracketed scalar root finding.
//!
//! The solver keeps a sign-changing bracket at all times and takes a secant
//! (regula falsi) step whenever it lands well inside the bracket, falling back
//! to bisection otherwise. A forced bisection happens whenever two consecutive
//! steps fail to halve the bracket, so the worst case is twice bisection.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub xtol_abs: f64,
    pub xtol_rel: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            xtol_abs: 0.0,
            xtol_rel: 4.0 * f64::EPSILON,
            max_iter: 400,
        }
    }
}

/// Root of `f` on `[lo, hi]`; `f(lo)` and `f(hi)` must differ in sign (or
/// one of them vanish).
pub fn solve_bracketed<F>(f: F, lo: f64, hi: f64, opts: RootOptions) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::RootBracketFailure { lo: a, hi: b });
    }

    let mut width_before = b - a;
    let mut slow_steps = 0;
    for _ in 0..opts.max_iter {
        let width = b - a;
        let mid = a + 0.5 * width;
        if width <= opts.xtol_abs + opts.xtol_rel * mid.abs() || mid <= a || mid >= b {
            break;
        }
        let secant = b - fb * (b - a) / (fb - fa);
        let margin = 0.05 * width;
        let x = if slow_steps < 2 && secant > a + margin && secant < b - margin {
            secant
        } else {
            slow_steps = 0;
            mid
        };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if !fx.is_finite() {
            return Err(Error::RootBracketFailure { lo: a, hi: b });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if b - a > 0.5 * width_before {
            slow_steps += 1;
        } else {
            slow_steps = 0;
        }
        width_before = b - a;
    }
    Ok(if fa.abs() <= fb.abs() { a } else { b })
}

/// Adjacent mesh pairs across which `f` changes sign, in mesh order.
/// The mesh must be sorted ascending; non-finite samples break brackets.
pub fn sign_change_brackets<F>(f: F, mesh: &[f64]) -> Vec<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let values: Vec<f64> = mesh.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 0..mesh.len().saturating_sub(1) {
        let (va, vb) = (values[i], values[i + 1]);
        if !(va.is_finite() && vb.is_finite()) {
            continue;
        }
        if va == 0.0 {
            out.push((mesh[i], mesh[i]));
        } else if va.signum() != vb.signum() && vb != 0.0 {
            out.push((mesh[i], mesh[i + 1]));
        }
    }
    if let (Some(&x), Some(&v)) = (mesh.last(), values.last()) {
        if v == 0.0 {
            out.push((x, x));
        }
    }
    out
}

/// `n` points log-spaced between `lo` and `hi` (both positive), inclusive.
pub fn log_mesh(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_root() {
        let r = solve_bracketed(|x| -x * x + 2.0 * x + 1.0, 2.0, 3.0, RootOptions::default())
            .unwrap();
        assert!((r - (1.0 + 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn steep_function_converges() {
        let r = solve_bracketed(|x: f64| (x - 0.3).powi(3) * 1e6, -10.0, 10.0, RootOptions::default())
            .unwrap();
        assert!((r - 0.3).abs() < 1e-5);
    }

    #[test]
    fn rejects_bad_bracket() {
        let e = solve_bracketed(|x| x * x + 1.0, -1.0, 1.0, RootOptions::default()).unwrap_err();
        assert!(matches!(e, Error::RootBracketFailure { .. }));
    }

    #[test]
    fn finds_all_sign_changes() {
        let mesh: Vec<f64> = (0..=100).map(|i| i as f64 * 0.1).collect();
        let br = sign_change_brackets(|x: f64| x.sin(), &mesh);
        // zeros at 0 (exact), pi, 2pi, 3pi
        assert_eq!(br.len(), 4);
    }
}
