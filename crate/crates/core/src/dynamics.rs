//! Fixed-step symplectic integration of the separated systems, used as an
//! independent oracle for periods and first integrals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{MassParams, PlanePoint};
use crate::potential::eval_v;
use crate::regularization::{cotangent_lift, eval_k, EllipticState, SeparatedSystem};

/// One-degree-of-freedom Hamiltonian `p^2/2 + W(angle)`.
pub trait Potential1D: Sync {
    fn w(&self, a: f64) -> f64;
    fn dw(&self, a: f64) -> f64;
}

impl Potential1D for SeparatedSystem {
    fn w(&self, a: f64) -> f64 {
        self.eval_w(a)
    }
    fn dw(&self, a: f64) -> f64 {
        self.eval_dw(a)
    }
}

/// `W = omega^2 a^2 / 2`, for self-tests.
#[derive(Debug, Clone, Copy)]
pub struct Harmonic {
    pub omega: f64,
}

impl Potential1D for Harmonic {
    fn w(&self, a: f64) -> f64 {
        0.5 * self.omega * self.omega * a * a
    }
    fn dw(&self, a: f64) -> f64 {
        self.omega * self.omega * a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Integrator {
    /// Second-order kick-drift-kick.
    #[default]
    Leapfrog,
    /// Fourth-order triple-jump composition of the leapfrog.
    Yoshida4,
}

impl std::str::FromStr for Integrator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leapfrog" => Ok(Integrator::Leapfrog),
            "yoshida4" => Ok(Integrator::Yoshida4),
            other => Err(Error::InvalidArgument(format!("unknown integrator '{other}'"))),
        }
    }
}

#[inline]
fn kdk<P: Potential1D + ?Sized>(pot: &P, a: &mut f64, p: &mut f64, h: f64) {
    *p -= 0.5 * h * pot.dw(*a);
    *a += h * *p;
    *p -= 0.5 * h * pot.dw(*a);
}

/// Advances `(a, p)` by one step of size `dt`.
pub fn step<P: Potential1D + ?Sized>(pot: &P, method: Integrator, a: &mut f64, p: &mut f64, dt: f64) {
    match method {
        Integrator::Leapfrog => kdk(pot, a, p, dt),
        Integrator::Yoshida4 => {
            let cr = 2f64.cbrt();
            let w1 = 1.0 / (2.0 - cr);
            let w0 = -cr * w1;
            kdk(pot, a, p, w1 * dt);
            kdk(pot, a, p, w0 * dt);
            kdk(pot, a, p, w1 * dt);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub dt: f64,
    pub method: Integrator,
    pub level: f64,
    /// `(angle, momentum)` at times `0, dt, 2 dt, ...`.
    #[serde(skip)]
    pub states: Vec<(f64, f64)>,
    /// Maximum over the run of `|H - level| / max(|level|, level - W(start))`.
    pub max_rel_drift: f64,
}

impl Trajectory {
    pub fn duration(&self) -> f64 {
        self.dt * (self.states.len().saturating_sub(1)) as f64
    }
}

/// Integrates `p^2/2 + W` from `(start, p0)`; `level` is the energy the drift
/// is measured against.
pub fn integrate<P: Potential1D + ?Sized>(
    pot: &P,
    start: (f64, f64),
    level: f64,
    dt: f64,
    n_steps: usize,
    method: Integrator,
) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
    }
    let scale = level.abs().max(level - pot.w(start.0)).max(f64::MIN_POSITIVE);
    let (mut a, mut p) = start;
    let mut states = Vec::with_capacity(n_steps + 1);
    states.push((a, p));
    let mut drift = 0.0f64;
    for _ in 0..n_steps {
        step(pot, method, &mut a, &mut p, dt);
        states.push((a, p));
        let e = 0.5 * p * p + pot.w(a);
        drift = drift.max((e - level).abs() / scale);
    }
    Ok(Trajectory {
        dt,
        method,
        level,
        states,
        max_rel_drift: drift,
    })
}

/// Starts at the bottom of `W` (`at`) with positive momentum on `level`.
pub fn integrate_from_well<P: Potential1D + ?Sized>(
    pot: &P,
    at: f64,
    level: f64,
    dt: f64,
    n_steps: usize,
    method: Integrator,
) -> Result<Trajectory> {
    let gap = level - pot.w(at);
    if gap < 0.0 {
        return Err(Error::LevelInadmissible {
            level,
            reason: format!("level lies {} below the well bottom", -gap),
        });
    }
    integrate(pot, (at, (2.0 * gap).sqrt()), level, dt, n_steps, method)
}

/// Separated system on `K = -kappa` (`mu`) or `K = kappa` (`nu`), started at
/// the well bottom with positive momentum.
pub fn integrate_1dof(
    sys: &SeparatedSystem,
    kappa: f64,
    dt: f64,
    n_steps: usize,
    method: Integrator,
) -> Result<Trajectory> {
    sys.turning_points(kappa).map_err(|e| Error::LevelInadmissible {
        level: sys.level(kappa),
        reason: e.to_string(),
    })?;
    integrate_from_well(sys, sys.well_angle(), sys.level(kappa), dt, n_steps, method)
}

/// `T/2048` with `T` the harmonic period at the well bottom.
pub fn default_dt(sys: &SeparatedSystem) -> f64 {
    sys.harmonic_period() / 2048.0
}

/// Runs `periods` harmonic periods at [`default_dt`], halving the step once
/// if the drift exceeds `drift_tol`.
pub fn integrate_default(
    sys: &SeparatedSystem,
    kappa: f64,
    periods: usize,
    method: Integrator,
    drift_tol: f64,
) -> Result<Trajectory> {
    let dt = default_dt(sys);
    let tr = integrate_1dof(sys, kappa, dt, 2048 * periods, method)?;
    if tr.max_rel_drift <= drift_tol {
        return Ok(tr);
    }
    integrate_1dof(sys, kappa, dt / 2.0, 4096 * periods, method)
}

/// Period from successive downward zero crossings of the momentum,
/// located by linear interpolation and averaged over the run.
pub fn measure_period(traj: &Trajectory) -> Result<f64> {
    let mut crossings = Vec::new();
    for (i, w) in traj.states.windows(2).enumerate() {
        let (p0, p1) = (w[0].1, w[1].1);
        if p0 > 0.0 && p1 <= 0.0 {
            crossings.push((i as f64 + p0 / (p0 - p1)) * traj.dt);
        }
    }
    if crossings.len() < 2 {
        return Err(Error::NoCrossing);
    }
    Ok((crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64)
}

/// Both separated systems advanced with the same fictitious-time step. The
/// `mu` system starts at its well bottom; the `nu` system starts at its
/// turning point, which keeps the pair off the collision fibers at `s = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairedTrajectory {
    pub c: f64,
    pub kappa: f64,
    pub mu: Trajectory,
    pub nu: Trajectory,
}

impl PairedTrajectory {
    pub fn elliptic_state(&self, i: usize) -> EllipticState {
        let (mu, pmu) = self.mu.states[i];
        let (nu, pnu) = self.nu.states[i];
        EllipticState::new(mu, nu, pmu, pnu)
    }
}

pub fn integrate_pair(
    c: f64,
    params: &MassParams,
    component: crate::params::Component,
    kappa: f64,
    dt: f64,
    n_steps: usize,
    method: Integrator,
) -> Result<PairedTrajectory> {
    let mu = SeparatedSystem::mu(c, *params);
    let nu = SeparatedSystem::nu(c, *params, component);
    let mu_traj = integrate_1dof(&mu, kappa, dt, n_steps, method)?;
    let tp = nu.turning_points(kappa)?;
    let start = if nu.well_angle() == 0.0 { tp.angle } else { std::f64::consts::TAU - tp.angle };
    let nu_traj = integrate(&nu, (start, 0.0), kappa, dt, n_steps, method)?;
    Ok(PairedTrajectory {
        c,
        kappa,
        mu: mu_traj,
        nu: nu_traj,
    })
}

/// Euler integral
/// `E = |L|^2 - e1 . (p x L - m1 qt/|qt| + m2 (qt - e1)/|qt - e1|)`
/// in coordinates `qt = q + (1/2, 0)` centered at `e`.
pub fn euler_integral(q: PlanePoint, p: [f64; 2], params: &MassParams) -> Result<f64> {
    if params.eps != 0.0 {
        return Err(params.unsupported("the Euler integral needs eps = 0"));
    }
    let (t1, t2) = (q.q1 + 0.5, q.q2);
    let r1 = t1.hypot(t2);
    let r2 = (t1 - 1.0).hypot(t2);
    if r1 < crate::potential::COLLISION_TOL || r2 < crate::potential::COLLISION_TOL {
        return Err(Error::CenterCollision { q1: q.q1, q2: q.q2 });
    }
    let l = t1 * p[1] - t2 * p[0];
    let v1 = p[1] * l - params.m1 * t1 / r1 + params.m2 * (t1 - 1.0) / r2;
    Ok(l * l - v1)
}

/// `H = |p|^2/2 + V` at a Cartesian state.
pub fn hamiltonian(q: PlanePoint, p: [f64; 2], params: &MassParams) -> Result<f64> {
    Ok(0.5 * (p[0] * p[0] + p[1] * p[1]) + eval_v(q, params)?)
}

/// `(E, K2)` at an elliptic state, with `K2` taken on the energy level
/// `c = H` of the lifted state.
pub fn euler_integral_and_k2(state: &EllipticState, params: &MassParams) -> Result<(f64, f64)> {
    let (q, p) = cotangent_lift(state)?;
    let c = hamiltonian(q, p, params)?;
    let e = euler_integral(q, p, params)?;
    let (_, _, k2) = eval_k(c, params, state);
    Ok((e, k2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KeplerOrbitElements {
    pub a: f64,
    pub e: f64,
    /// Argument of perihelion.
    pub omega: f64,
}

impl KeplerOrbitElements {
    pub fn new(a: f64, e: f64, omega: f64) -> Result<Self> {
        if !(a > 0.0 && (0.0..=1.0).contains(&e) && omega.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "orbit elements need a > 0 and 0 <= e <= 1 (a={a}, e={e})"
            )));
        }
        Ok(KeplerOrbitElements { a, e, omega })
    }

    /// Semi-major axis `a = M/(2|c|)` from the energy.
    pub fn from_energy(m: f64, c: f64, e: f64, omega: f64) -> Result<Self> {
        if !(c < 0.0) {
            return Err(Error::EnergyNonnegative { c });
        }
        Self::new(m / (2.0 * c.abs()), e, omega)
    }
}

/// `M (a (1 - e^2) - e sin(omega))`.
pub fn euler_integral_from_elements(el: &KeplerOrbitElements, m: f64) -> f64 {
    m * (el.a * (1.0 - el.e * el.e) - el.e * el.omega.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentmap::tau;
    use crate::params::Component;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn p(m1: f64, m2: f64, eps: f64) -> MassParams {
        MassParams::new(m1, m2, eps).unwrap()
    }

    #[test]
    fn harmonic_self_test() {
        let h = Harmonic { omega: 1.7 };
        let t = TAU / 1.7;
        for method in [Integrator::Leapfrog, Integrator::Yoshida4] {
            let tr = integrate_from_well(&h, 0.0, 0.5, t / 2048.0, 2048 * 20, method).unwrap();
            let period = measure_period(&tr).unwrap();
            assert!((period - t).abs() < 1e-6 * t, "{method:?}: {period}");
        }
    }

    #[test]
    fn stationary_at_window_top() {
        let sys = SeparatedSystem::mu(-3.0, p(1.0, 0.5, 0.0));
        let tr = integrate_1dof(&sys, 0.75, 0.01, 1000, Integrator::Leapfrog).unwrap();
        assert!(tr.states.iter().all(|&(a, m)| a == 0.0 && m == 0.0));
        assert_eq!(tr.max_rel_drift, 0.0);
        assert_eq!(measure_period(&tr).unwrap_err(), Error::NoCrossing);
    }

    #[test]
    fn nu_stationary_at_window_bottom() {
        let par = p(1.0, 0.5, 0.0);
        let sys = SeparatedSystem::nu(-3.0, par, Component::E);
        let tr = integrate_1dof(&sys, -0.25, 0.01, 500, Integrator::Yoshida4).unwrap();
        assert!(tr.states.iter().all(|&(a, m)| (a - PI).abs() < 1e-12 && m.abs() < 1e-12));
    }

    #[test]
    fn default_step_refines_once() {
        let sys = SeparatedSystem::mu(-3.0, p(1.0, 0.5, 0.3));
        let coarse = integrate_default(&sys, 0.1, 5, Integrator::Leapfrog, 1.0).unwrap();
        assert_eq!(coarse.dt, default_dt(&sys));
        let fine = integrate_default(&sys, 0.1, 5, Integrator::Leapfrog, 0.0).unwrap();
        assert_eq!(fine.dt, default_dt(&sys) / 2.0);
        assert!(fine.max_rel_drift < coarse.max_rel_drift);
    }

    #[test]
    fn near_top_period_is_harmonic() {
        let sys = SeparatedSystem::mu(-3.0, p(1.0, 0.5, 0.4));
        let k = 0.75 - 1e-7;
        let tr = integrate_1dof(&sys, k, default_dt(&sys), 2048 * 10, Integrator::Leapfrog).unwrap();
        let t = measure_period(&tr).unwrap();
        assert!((t - sys.harmonic_period()).abs() < 1e-3 * t);
    }

    #[test]
    fn periods_match_quadrature() {
        let par = p(1.0, 0.5, 0.0);
        let c = -3.0;
        for sys in [SeparatedSystem::mu(c, par), SeparatedSystem::nu(c, par, Component::E)] {
            let k = 0.3;
            let t = tau(&sys, k).unwrap();
            let tr = integrate_1dof(&sys, k, t / 2048.0, 2048 * 20, Integrator::Yoshida4).unwrap();
            let m = measure_period(&tr).unwrap();
            assert!((m - t).abs() < 1e-4 * t);
            assert!(tr.max_rel_drift < 1e-8);
        }
    }

    #[test]
    fn leapfrog_is_second_order() {
        let sys = SeparatedSystem::mu(-3.0, p(1.0, 0.5, 0.3));
        let k = 0.1;
        let t = tau(&sys, k).unwrap();
        let err = |n: usize| {
            let tr = integrate_1dof(&sys, k, t / n as f64, n * 8, Integrator::Leapfrog).unwrap();
            (measure_period(&tr).unwrap() - t).abs()
        };
        let ratio = err(64) / err(128);
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn time_reversible() {
        let sys = SeparatedSystem::nu(-3.0, p(1.0, 0.5, 0.5), Component::E);
        let tr = integrate_1dof(&sys, 0.2, 0.01, 5000, Integrator::Leapfrog).unwrap();
        let &(a, m) = tr.states.last().unwrap();
        let back = integrate(&sys, (a, -m), 0.2, 0.01, 5000, Integrator::Leapfrog).unwrap();
        let &(a0, m0) = back.states.last().unwrap();
        assert!((a0 - PI).abs() < 1e-10 && (m0 + tr.states[0].1).abs() < 1e-10);
    }

    #[test]
    fn circular_kepler_orbit() {
        let par = p(2.0, 0.0, 0.0);
        for &(r, phi) in &[(0.7, 0.3), (2.0, 2.0), (1.3, -1.0)] {
            let (s, c) = f64::sin_cos(phi);
            let q = PlanePoint::new(-0.5 + r * c, r * s);
            let v = (2.0 / r).sqrt();
            let e = euler_integral(q, [-v * s, v * c], &par).unwrap();
            assert!((e - 2.0 * r).abs() < 1e-12);
        }
    }

    #[test]
    fn elements() {
        let el = KeplerOrbitElements::new(1.5, 0.0, 0.3).unwrap();
        assert_eq!(euler_integral_from_elements(&el, 2.0), 3.0);
        let el = KeplerOrbitElements::new(1.5, 1.0, 0.4).unwrap();
        assert!((euler_integral_from_elements(&el, 2.0) + 2.0 * 0.4f64.sin()).abs() < 1e-15);
        let el = KeplerOrbitElements::from_energy(2.0, -1.0, 0.0, 0.0).unwrap();
        assert_eq!(euler_integral_from_elements(&el, 2.0), 2.0);
        assert!(KeplerOrbitElements::new(1.0, 1.5, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn euler_integral_is_twice_k2(mu in 0.05..2.0f64, nu in 0.0..TAU, pmu in -2.0..2.0f64, pnu in -2.0..2.0f64, m1 in 0.2..3.0f64, frac in -0.95..1.0f64) {
            let par = p(m1, frac * m1, 0.0);
            let st = EllipticState::new(mu, nu, pmu, pnu);
            if let Ok((e, k2)) = euler_integral_and_k2(&st, &par) {
                prop_assert!((e - 2.0 * k2).abs() < 1e-10 * (1.0 + e.abs()));
            }
        }
    }
}
