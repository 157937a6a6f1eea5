//! Periods of the separated systems, their primitives and the boundary
//! function `f` of the moment-map image.
//!
//! With `tau1(kappa)` the period of the `mu` system on `K1 = -kappa` and
//! `tau2(kappa)` the period of the `nu` system on `K2 = kappa`, the image is
//! the curve `(T1, T2)` with `T1 = int_kappa^{M1/2} tau1`,
//! `T2 = int_{lo}^kappa tau2`. It is the graph of `T2 = f(T1)` with
//! `f' = -tau2/tau1` and `f'' = (d/dkappa W)/tau1`, `W = tau2/tau1`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::numerics::quad::{
    adaptive_gk, squared_sine_trapezoid, squared_sine_trapezoid_2d, AdaptiveOptions,
    TrapezoidOptions,
};
use crate::params::{Component, MassParams};
use crate::potential::critical_summary;
use crate::regularization::{torus_condition, Axis, KappaWindow, SeparatedSystem};

/// Below this oscillation span (in `x` or `y`) the period is replaced by
/// its harmonic limit.
pub const HARMONIC_SWITCH: f64 = 1e-8;

fn period_quadrature() -> TrapezoidOptions {
    TrapezoidOptions {
        rel_tol: 1e-13,
        min_level: 3,
        max_level: 20,
    }
}

/// Period of `sys` at `kappa`.
///
/// The level polynomial is deflated by its turning-point root and the
/// substitution `v = a + (b - a) sin^2(theta)` removes both endpoint
/// square-root singularities.
pub fn tau(sys: &SeparatedSystem, kappa: f64) -> Result<f64> {
    let tp = sys.turning_points(kappa)?;
    if tp.span() < HARMONIC_SWITCH {
        return Ok(sys.harmonic_period());
    }
    let quotient = sys.level_poly(kappa).deflate(tp.root);
    let (lo, span) = (tp.lo, tp.span());
    let integrand: Box<dyn Fn(f64) -> f64> = match (sys.axis, sys.component) {
        (Axis::Mu, _) => Box::new(move |t: f64| {
            let x = lo + span * t.sin().powi(2);
            8.0 / (2.0 * (x + 1.0) * -quotient.eval(x)).sqrt()
        }),
        (Axis::Nu, Component::E) => Box::new(move |t: f64| {
            let y = lo + span * t.sin().powi(2);
            8.0 / (2.0 * (1.0 - y) * -quotient.eval(y)).sqrt()
        }),
        (Axis::Nu, Component::M) => Box::new(move |t: f64| {
            let y = lo + span * t.sin().powi(2);
            8.0 / (2.0 * (1.0 + y) * quotient.eval(y)).sqrt()
        }),
    };
    squared_sine_trapezoid(integrand, period_quadrature())
}

fn z_prefactor(c: f64) -> Result<f64> {
    if !(c < 0.0) {
        return Err(Error::EnergyNonnegative { c });
    }
    Ok(4.0 * (-2.0 * c).sqrt())
}

/// `Q(z) = A z^2 - 2 B z + C` is positive on `[0, 2]`.
fn quadratic_positive(a: f64, b: f64, cc: f64) -> bool {
    let q = |z: f64| a * z * z - 2.0 * b * z + cc;
    if !(q(0.0) > 0.0 && q(2.0) > 0.0) {
        return false;
    }
    if a > 0.0 {
        let zv = b / a;
        if zv > 0.0 && zv < 2.0 {
            return cc - b * b / a > 0.0;
        }
    }
    true
}

/// `4 sqrt(-2c) int_0^2 z^beta Q^(-alpha) dz / sqrt(z (2 - z))` for integer
/// `beta` and half-integer `alpha = k + 1/2`.
fn z_moment(a: f64, b: f64, cc: f64, c: f64, beta: i32, half_power: i32) -> Result<f64> {
    let k = z_prefactor(c)?;
    let v = squared_sine_trapezoid(
        |t: f64| {
            let z = 2.0 * t.sin().powi(2);
            let q = a * z * z - 2.0 * b * z + cc;
            2.0 * z.powi(beta) / q.sqrt().powi(half_power)
        },
        period_quadrature(),
    )?;
    Ok(k * v)
}

/// `tau(A, B) = 4 sqrt(-2c) int_0^2 dz / sqrt(z (2 - z) (A z^2 - 2 B z + C))`.
pub fn tau_abc(a: f64, b: f64, cc: f64, c: f64) -> Result<f64> {
    z_prefactor(c)?;
    if !quadratic_positive(a, b, cc) {
        return Err(Error::RadicandNonpositive {
            m: a.max(0.0).sqrt(),
            c,
            kappa: b,
        });
    }
    z_moment(a, b, cc, c, 0, 1)
}

/// Euler-problem period in Kepler form: `tau_z(M1, c, kappa)` is the `mu`
/// period at `K1 = -kappa` and `tau_z(M2, c, kappa)` the `nu` period at
/// `K2 = kappa`. The quadratic is `M^2 z^2 + 8 c kappa z + 4 c^2`.
pub fn tau_euler_z(m: f64, c: f64, kappa: f64) -> Result<f64> {
    z_prefactor(c)?;
    let (a, b, cc) = euler_abc(m, c, kappa);
    if !quadratic_positive(a, b, cc) {
        return Err(Error::RadicandNonpositive { m, c, kappa });
    }
    z_moment(a, b, cc, c, 0, 1)
}

/// The same integral parameterized by the Euler-integral value `E`, whose
/// quadratic is `M^2 z^2 + 4 c E z + 4 c^2`; on the zero level `E = 2 kappa`.
pub fn tau_kepler_z(m: f64, c: f64, e: f64) -> Result<f64> {
    tau_euler_z(m, c, e / 2.0)
}

/// `(A, B, C) = (M^2, -4 c kappa, 4 c^2)`.
pub fn euler_abc(m: f64, c: f64, kappa: f64) -> (f64, f64, f64) {
    (m * m, -4.0 * c * kappa, 4.0 * c * c)
}

/// `W = tau2(kappa) / tau1(-kappa)` from the Kepler-form periods.
pub fn w_ratio(m1_total: f64, m2_diff: f64, c: f64, kappa: f64) -> Result<f64> {
    Ok(tau_euler_z(m2_diff, c, kappa)? / tau_euler_z(m1_total, c, kappa)?)
}

/// `W` from the elliptic-coordinate periods; valid for any `eps`.
pub fn w_ratio_general(c: f64, params: &MassParams, component: Component, kappa: f64) -> Result<f64> {
    let t1 = tau(&SeparatedSystem::mu(c, *params), kappa)?;
    let t2 = tau(&SeparatedSystem::nu(c, *params, component), kappa)?;
    Ok(t2 / t1)
}

/// `eta = (d tau / dB) / tau`, with the `B` derivative by Richardson-extrapolated
/// central differences.
pub fn eta(a: f64, b: f64, cc: f64, c: f64) -> Result<f64> {
    let t = tau_abc(a, b, cc, c)?;
    let room = (a * cc).sqrt() - b.abs();
    let h = 1e-3 * room.min(1.0 + b.abs()).max(1e-12);
    let d = |h: f64| -> Result<f64> {
        Ok((tau_abc(a, b + h, cc, c)? - tau_abc(a, b - h, cc, c)?) / (2.0 * h))
    };
    let (d1, d2) = (d(h)?, d(h / 2.0)?);
    Ok((4.0 * d2 - d1) / 3.0 / t)
}

/// `eta` with the `B` derivative taken under the integral sign.
pub fn eta_exact(a: f64, b: f64, cc: f64, c: f64) -> Result<f64> {
    let t = tau_abc(a, b, cc, c)?;
    Ok(z_moment(a, b, cc, c, 1, 3)? / t)
}

fn s_admissible(a: f64, b: f64, cc: f64, c: f64) -> Result<f64> {
    let k = z_prefactor(c)?;
    if !(a > 0.0 && cc > 0.0 && b.abs() < (a * cc).sqrt()) {
        return Err(Error::RadicandNonpositive {
            m: a.max(0.0).sqrt(),
            c,
            kappa: b,
        });
    }
    Ok(k)
}

/// `S = d_B tau * d_A tau - d_A d_B tau * tau`, the numerator of `-d_A eta`,
/// evaluated as the double integral
/// `1/2 int int (3x^3/Q(x)^2 - x^2 y/(Q(x) Q(y))) p(x) p(y) dx dy` with
/// `p = 4 sqrt(-2c) / sqrt(x (2 - x) Q(x))`.
pub fn s_check(a: f64, b: f64, cc: f64, c: f64) -> Result<f64> {
    let k = s_admissible(a, b, cc, c)?;
    let q = |z: f64| a * z * z - 2.0 * b * z + cc;
    let v = squared_sine_trapezoid_2d(
        |t1: f64, t2: f64| {
            let x = 2.0 * t1.sin().powi(2);
            let y = 2.0 * t2.sin().powi(2);
            let (qx, qy) = (q(x), q(y));
            let kernel = 3.0 * x.powi(3) / (qx * qx) - x * x * y / (qx * qy);
            kernel * 4.0 / (qx * qy).sqrt()
        },
        TrapezoidOptions {
            rel_tol: 1e-10,
            min_level: 4,
            max_level: 11,
        },
    )?;
    Ok(0.5 * k * k * v)
}

/// `S` from four one-dimensional moments; the factored form of [`s_check`].
pub fn s_factored(a: f64, b: f64, cc: f64, c: f64) -> Result<f64> {
    s_admissible(a, b, cc, c)?;
    let g = |beta, half| z_moment(a, b, cc, c, beta, half);
    Ok(0.5 * (3.0 * g(3, 5)? * g(0, 1)? - g(2, 3)? * g(1, 3)?))
}

/// Primitive of the period along the window: `T1 = int_kappa^{hi} tau1` for
/// the `mu` system, `T2 = int_{lo}^kappa tau2` for the `nu` system.
pub fn t_primitive(sys: &SeparatedSystem, kappa: f64) -> Result<f64> {
    let w = sys.window()?;
    w.check(kappa)?;
    let (a, b) = match sys.axis {
        Axis::Mu => (kappa, w.hi),
        Axis::Nu => (w.lo, kappa),
    };
    segment_integral(sys, a, b)
}

fn segment_integral(sys: &SeparatedSystem, a: f64, b: f64) -> Result<f64> {
    let err = std::cell::Cell::new(None);
    let v = adaptive_gk(
        |k| match tau(sys, k) {
            Ok(t) => t,
            Err(e) => {
                err.set(Some(e));
                f64::NAN
            }
        },
        a,
        b,
        AdaptiveOptions {
            rel_tol: 1e-12,
            abs_tol: 1e-15,
            max_intervals: 2000,
        },
    );
    match err.into_inner() {
        Some(e) => Err(e),
        None => v,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodSample {
    pub kappa: f64,
    pub tau1: f64,
    pub tau2: f64,
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "T2")]
    pub t2: f64,
    pub fprime: f64,
    pub fsecond: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToricProfile {
    pub component: Component,
    pub c: f64,
    pub params: MassParams,
    pub window: KappaWindow,
    /// Ordered by increasing `T1` (decreasing `kappa`).
    pub samples: Vec<PeriodSample>,
    pub warnings: Vec<String>,
}

/// Chebyshev–Lobatto nodes on the window, from `hi` down to `lo`.
pub fn chebyshev_nodes(w: &KappaWindow, n: usize) -> Vec<f64> {
    let mid = 0.5 * (w.lo + w.hi);
    let half = 0.5 * (w.hi - w.lo);
    (0..n)
        .map(|i| {
            if i == 0 {
                w.hi
            } else if i == n - 1 {
                w.lo
            } else {
                mid + half * (PI * i as f64 / (n - 1) as f64).cos()
            }
        })
        .collect()
}

struct Pair {
    mu: SeparatedSystem,
    nu: SeparatedSystem,
}

impl Pair {
    fn ratio(&self, k: f64) -> Result<f64> {
        Ok(tau(&self.nu, k)? / tau(&self.mu, k)?)
    }

    /// `dW/dkappa` at a node: central differences with one Richardson step
    /// in the interior, second-order one-sided stencils at the endpoints.
    fn ratio_slope(&self, k: f64, w: &KappaWindow) -> Result<f64> {
        let h0 = 1e-3 * w.width();
        let room = (k - w.lo).min(w.hi - k);
        if room > 0.0 {
            let h = h0.min(0.5 * room);
            let d = |h: f64| -> Result<f64> { Ok((self.ratio(k + h)? - self.ratio(k - h)?) / (2.0 * h)) };
            let (d1, d2) = (d(h)?, d(h / 2.0)?);
            Ok((4.0 * d2 - d1) / 3.0)
        } else {
            let s = if k <= w.lo { 1.0 } else { -1.0 };
            let h = s * h0;
            let (w0, w1, w2) = (self.ratio(k)?, self.ratio(k + h)?, self.ratio(k + 2.0 * h)?);
            Ok((-3.0 * w0 + 4.0 * w1 - w2) / (2.0 * h))
        }
    }
}

/// Samples the moment-map image at `n` Chebyshev-clustered `kappa` values.
pub fn profile(
    c: f64,
    params: &MassParams,
    component: Component,
    n: usize,
    exec: &Executor,
) -> Result<ToricProfile> {
    if n < 2 {
        return Err(Error::ProfileTooSparse { got: n, need: 2 });
    }
    if !torus_condition(c, params) {
        return Err(Error::LevelInadmissible {
            level: c,
            reason: format!("c must lie below c_crit = {}", params.c_crit()),
        });
    }
    let mut warnings = Vec::new();
    if let Some(c0) = critical_summary(params)?.c0 {
        if c >= c0 {
            warnings.push(format!("c = {c} is not below c0 = {c0}"));
        }
    }
    let pair = Pair {
        mu: SeparatedSystem::mu(c, *params),
        nu: SeparatedSystem::nu(c, *params, component),
    };
    let window = pair.nu.window()?;
    if !(window.width() > 0.0) {
        return Err(Error::LevelInadmissible {
            level: c,
            reason: format!("the {component} window is a single point"),
        });
    }
    let nodes = chebyshev_nodes(&window, n);
    let pointwise: Vec<Result<(f64, f64, f64)>> = exec.map(&nodes, |&k| {
        let t1 = tau(&pair.mu, k)?;
        let t2 = tau(&pair.nu, k)?;
        let slope = pair.ratio_slope(k, &window)?;
        Ok((t1, t2, slope))
    });
    let segments: Vec<usize> = (1..n).collect();
    let integrals: Vec<Result<(f64, f64)>> = exec.map(&segments, |&i| {
        let (a, b) = (nodes[i], nodes[i - 1]);
        Ok((segment_integral(&pair.mu, a, b)?, segment_integral(&pair.nu, a, b)?))
    });
    let pointwise = pointwise.into_iter().collect::<Result<Vec<_>>>()?;
    let integrals = integrals.into_iter().collect::<Result<Vec<_>>>()?;

    let mut t1 = vec![0.0; n];
    for i in 1..n {
        t1[i] = t1[i - 1] + integrals[i - 1].0;
    }
    let mut t2 = vec![0.0; n];
    for i in (0..n - 1).rev() {
        t2[i] = t2[i + 1] + integrals[i].1;
    }
    let samples = (0..n)
        .map(|i| {
            let (tau1, tau2, slope) = pointwise[i];
            PeriodSample {
                kappa: nodes[i],
                tau1,
                tau2,
                t1: t1[i],
                t2: t2[i],
                fprime: -tau2 / tau1,
                fsecond: slope / tau1,
            }
        })
        .collect();
    Ok(ToricProfile {
        component,
        c,
        params: *params,
        window,
        samples,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(m1: f64, m2: f64, eps: f64) -> MassParams {
        MassParams::new(m1, m2, eps).unwrap()
    }

    #[test]
    fn elliptic_and_kepler_forms_agree() {
        let par = p(1.0, 1.0, 0.0);
        let c = -3.0;
        for &k in &[0.05, 0.3, 0.5, 0.7, 0.95] {
            let t1 = tau(&SeparatedSystem::mu(c, par), k).unwrap();
            let tz = tau_euler_z(2.0, c, k).unwrap();
            assert!((t1 - tz).abs() < 1e-10 * tz, "k={k}: {t1} vs {tz}");
        }
        let par = p(1.0, 0.4, 0.0);
        for &k in &[-0.25, 0.0, 0.5] {
            let t2 = tau(&SeparatedSystem::nu(c, par, Component::E), k).unwrap();
            let tz = tau_euler_z(0.6, c, k).unwrap();
            assert!((t2 - tz).abs() < 1e-10 * tz, "k={k}: {t2} vs {tz}");
        }
    }

    #[test]
    fn kepler_form_takes_euler_integral() {
        let a = tau_kepler_z(2.0, -3.0, 0.6).unwrap();
        let b = tau_euler_z(2.0, -3.0, 0.3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn z_form_errors() {
        assert_eq!(tau_euler_z(2.0, 0.5, 0.1).unwrap_err().name(), "EnergyNonnegative");
        assert_eq!(tau_euler_z(2.0, -1.0, 1.5).unwrap_err().name(), "RadicandNonpositive");
        // the quadratic acquires a double root at z = 1 as kappa -> M/2, so
        // the period grows like log(1/delta) but stays finite before the edge
        let near = tau_euler_z(2.0, -1.0, 1.0 - 1e-6).unwrap();
        let far = tau_euler_z(2.0, -1.0, 1.0 - 1e-3).unwrap();
        assert!(near.is_finite() && near > far);
    }

    #[test]
    fn harmonic_limit_at_window_top() {
        let par = p(1.0, 0.5, 0.7);
        let c = par.c_crit() - 1.0;
        let sys = SeparatedSystem::mu(c, par);
        let t = tau(&sys, 0.75 - 1e-6).unwrap();
        let h = 2.0 * PI / sys.curvature().sqrt();
        assert!((t - h).abs() < 1e-3 * h);
        assert_eq!(tau(&sys, 0.75).unwrap(), h);
    }

    #[test]
    fn harmonic_switch_is_continuous() {
        let par = p(1.0, 0.5, 0.0);
        let c = -3.0;
        for sys in [
            SeparatedSystem::mu(c, par),
            SeparatedSystem::nu(c, par, Component::E),
            SeparatedSystem::nu(c, par, Component::M),
        ] {
            let w = sys.window().unwrap();
            let (edge, dir) = match sys.axis {
                Axis::Mu => (w.hi, -1.0),
                Axis::Nu => (w.lo, 1.0),
            };
            let h = sys.harmonic_period();
            // offsets straddling the switch (span ~ 1e-8 in the algebraic variable)
            for i in 0..40 {
                let delta = 1e-11 * 1.3f64.powi(i);
                let t = tau(&sys, edge + dir * delta).unwrap();
                assert!((t - h).abs() < 1e-6 * h, "{:?} delta {delta}: {t} vs {h}", sys.axis);
            }
        }
    }

    #[test]
    fn primitives_vanish_at_lower_limit_and_increase() {
        let par = p(1.0, 0.5, 0.0);
        let mu = SeparatedSystem::mu(-3.0, par);
        let nu = SeparatedSystem::nu(-3.0, par, Component::E);
        assert_eq!(t_primitive(&mu, 0.75).unwrap(), 0.0);
        assert_eq!(t_primitive(&nu, -0.25).unwrap(), 0.0);
        let a = t_primitive(&nu, 0.0).unwrap();
        let b = t_primitive(&nu, 0.3).unwrap();
        assert!(b > a && a > 0.0);
        let a = t_primitive(&mu, 0.0).unwrap();
        let b = t_primitive(&mu, 0.3).unwrap();
        assert!(b < a && b > 0.0);
    }

    #[test]
    fn kepler_primitives_are_complementary() {
        // M1 = M2: the two periods coincide at every kappa, so T1 + T2 is
        // constant along the window
        let par = p(1.0, 0.0, 0.0);
        let mu = SeparatedSystem::mu(-3.0, par);
        let nu = SeparatedSystem::nu(-3.0, par, Component::E);
        let total = t_primitive(&mu, -0.5).unwrap();
        assert!((total - t_primitive(&nu, 0.5).unwrap()).abs() < 1e-8 * total);
        for &k in &[-0.4, -0.1, 0.2, 0.45] {
            let a = t_primitive(&mu, k).unwrap();
            let b = t_primitive(&nu, k).unwrap();
            assert!((a + b - total).abs() < 1e-8 * total, "{a} + {b} vs {total}");
            let t1 = tau(&mu, k).unwrap();
            let t2 = tau(&nu, k).unwrap();
            assert!((t1 - t2).abs() < 1e-10 * t1);
        }
    }

    #[test]
    fn eta_matches_exact_derivative() {
        for &(a, b) in &[(4.0, 1.0), (4.0, 0.0), (9.0, -2.0), (1.0, 0.5)] {
            let (e1, e2) = (eta(a, b, 4.0, -1.0).unwrap(), eta_exact(a, b, 4.0, -1.0).unwrap());
            assert!((e1 - e2).abs() < 1e-8 * e2.abs().max(1e-3), "{e1} vs {e2}");
        }
        let d = eta(4.0, 0.5, 4.0, -1.0).unwrap() - eta(4.0, 0.5, 4.0, -1.0).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn s_examples_positive() {
        let s = s_check(4.0, 1.0, 4.0, -1.0).unwrap();
        let f = s_factored(4.0, 1.0, 4.0, -1.0).unwrap();
        assert!(s > 0.0);
        assert!((s - f).abs() < 1e-8 * f);
        assert!(s_check(4.0, 0.0, 4.0, -1.0).unwrap() > 0.0);
        assert!(s_check(4.0, 5.0, 4.0, -1.0).is_err());
    }

    #[test]
    fn w_ratio_monotonicity() {
        let c = -3.0;
        let grid: Vec<f64> = (0..11).map(|i| -0.2 + 0.05 * i as f64).collect();
        // negative m2: M2 > M1, W decreasing
        let (m1t, m2d) = (0.75, 1.25);
        let ws: Vec<f64> = grid.iter().map(|&k| w_ratio(m1t, m2d, c, k).unwrap()).collect();
        assert!(ws.windows(2).all(|w| w[1] < w[0]));
        // positive masses: M2 < M1, W increasing
        let ws: Vec<f64> = grid.iter().map(|&k| w_ratio(1.5, 0.5, c, k).unwrap()).collect();
        assert!(ws.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(w_ratio(1.0, 1.0, c, 0.1).unwrap(), 1.0);
    }

    #[test]
    fn profile_shape() {
        let par = p(1.0, 0.5, 0.0);
        let prof = profile(-3.0, &par, Component::E, 24, &Executor::sequential()).unwrap();
        let s = &prof.samples;
        assert_eq!(s.len(), 24);
        assert_eq!(s[0].t1, 0.0);
        assert_eq!(s[23].t2, 0.0);
        assert!(s.windows(2).all(|w| w[1].t1 > w[0].t1 && w[1].t2 < w[0].t2));
        for x in s {
            assert_eq!(x.fprime, -x.tau2 / x.tau1);
        }
        let par_prof = profile(-3.0, &par, Component::E, 24, &Executor::new(3)).unwrap();
        assert_eq!(prof, par_prof);
    }

    #[test]
    fn profile_requires_torus_condition() {
        let par = p(1.0, 0.5, 0.0);
        let e = profile(-1.0, &par, Component::E, 16, &Executor::sequential()).unwrap_err();
        assert_eq!(e.name(), "LevelInadmissible");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn dual_formula_across_window(m1 in 0.3..3.0f64, frac in -0.9..0.95f64, margin in 0.05..4.0f64, u in 0.02..0.98f64) {
            let par = p(m1, frac * m1, 0.0);
            let c0 = critical_summary(&par).unwrap().c0.unwrap_or(f64::INFINITY);
            let c = par.c_crit().min(c0) - margin;
            let w = SeparatedSystem::nu(c, par, Component::E).window().unwrap();
            let k = w.lo + u * w.width();
            let t1 = tau(&SeparatedSystem::mu(c, par), k).unwrap();
            let t2 = tau(&SeparatedSystem::nu(c, par, Component::E), k).unwrap();
            let z1 = tau_euler_z(par.total(), c, k).unwrap();
            let z2 = tau_euler_z(par.difference(), c, k).unwrap();
            prop_assert!((t1 - z1).abs() < 1e-8 * z1);
            prop_assert!((t2 - z2).abs() < 1e-8 * z2);
        }

        #[test]
        fn eta_decreasing_in_a(a1 in 0.5..8.0f64, da in 0.1..4.0f64, c in -4.0..-0.2f64, u in -0.9..0.9f64) {
            let cc = 4.0 * c * c;
            let b = u * (a1 * cc).sqrt();
            let e1 = eta(a1, b, cc, c).unwrap();
            let e2 = eta(a1 + da, b, cc, c).unwrap();
            prop_assert!(e2 < e1);
        }
    }
}
