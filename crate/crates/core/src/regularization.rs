//! Elliptic coordinates `q1 = cosh(mu) cos(nu)/2`, `q2 = sinh(mu) sin(nu)/2`
//! and the separated regularized systems.
//!
//! On the level `H = c` the rescaled Hamiltonian
//! `K = (cosh^2 mu - cos^2 nu)/4 * (H - c)` splits as `K1(mu, pmu) + K2(nu, pnu)`
//! with `Ki = p^2/2 + Wi`. Levels are parameterized by `kappa`:
//! `K1 = -kappa`, `K2 = kappa`.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::poly::Poly;
use crate::numerics::roots::{sign_change_brackets, solve_bracketed, RootOptions};
use crate::params::{Component, MassParams, PlanePoint};

/// Lower bound on `cosh^2 mu - cos^2 nu` for the momentum lift.
pub const LIFT_COLLISION_TOL: f64 = 1e-12;

/// Reduces an angle to `[0, 2 pi)`.
pub fn reduce_angle(nu: f64) -> f64 {
    let r = nu.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticState {
    pub mu: f64,
    pub nu: f64,
    pub pmu: f64,
    pub pnu: f64,
}

impl EllipticState {
    pub fn new(mu: f64, nu: f64, pmu: f64, pnu: f64) -> Self {
        EllipticState {
            mu,
            nu: reduce_angle(nu),
            pmu,
            pnu,
        }
    }

    /// Rescaling factor `R = (cosh^2 mu - cos^2 nu)/4` between `K` and `H - c`.
    pub fn time_scale(&self) -> f64 {
        let (ch, cs) = (self.mu.cosh(), self.nu.cos());
        0.25 * (ch * ch - cs * cs)
    }
}

pub fn elliptic_to_cartesian(mu: f64, nu: f64) -> PlanePoint {
    let nu = reduce_angle(nu);
    PlanePoint::new(0.5 * mu.cosh() * nu.cos(), 0.5 * mu.sinh() * nu.sin())
}

/// Cotangent lift of the elliptic covering: `(q, p)` with
/// `p = 2/(cosh^2 mu - cos^2 nu) * (sh c pmu - ch s pnu, ch s pmu + sh c pnu)`.
pub fn cotangent_lift(state: &EllipticState) -> Result<(PlanePoint, [f64; 2])> {
    let (sh, ch) = (state.mu.sinh(), state.mu.cosh());
    let (s, c) = state.nu.sin_cos();
    let gap = ch * ch - c * c;
    if gap < LIFT_COLLISION_TOL {
        return Err(Error::CollisionFiber { gap });
    }
    let k = 2.0 / gap;
    let q = PlanePoint::new(0.5 * ch * c, 0.5 * sh * s);
    let p = [
        k * (sh * c * state.pmu - ch * s * state.pnu),
        k * (ch * s * state.pmu + sh * c * state.pnu),
    ];
    Ok((q, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Mu,
    Nu,
}

/// `W1` as a polynomial in `x = cosh mu`.
fn w1_poly(c: f64, p: &MassParams) -> Poly {
    let e = p.eps / 32.0;
    Poly::new([c / 4.0, -p.total() / 2.0, e - c / 4.0, 0.0, -e])
}

/// `W2` as a polynomial in `y = cos nu`.
fn w2_poly(c: f64, p: &MassParams) -> Poly {
    let e = p.eps / 32.0;
    Poly::new([-c / 4.0, p.difference() / 2.0, c / 4.0 - e, 0.0, e])
}

/// One of the two separated one-degree-of-freedom systems. For the `nu`
/// system the component selects the well (`e` around `nu = pi`, `m` around
/// `nu = 0`); the `mu` system has a single well at `mu = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparatedSystem {
    pub axis: Axis,
    pub component: Component,
    pub c: f64,
    pub params: MassParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KappaWindow {
    pub component: Component,
    pub lo: f64,
    pub hi: f64,
}

impl KappaWindow {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, kappa: f64) -> bool {
        kappa >= self.lo && kappa <= self.hi
    }

    pub fn check(&self, kappa: f64) -> Result<()> {
        if self.contains(kappa) {
            Ok(())
        } else {
            Err(Error::WindowViolation {
                kappa,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }
}

/// `e`: `[-M2/2, M1/2]`, `m`: `[M2/2, M1/2]`.
pub fn kappa_window(component: Component, params: &MassParams) -> Result<KappaWindow> {
    let (m1, m2) = (params.total(), params.difference());
    if m2 < 0.0 {
        return Err(params.unsupported("kappa windows need m1 >= m2"));
    }
    let lo = match component {
        Component::E => -m2 / 2.0,
        Component::M => m2 / 2.0,
    };
    if lo > m1 / 2.0 {
        return Err(params.unsupported("empty kappa window"));
    }
    Ok(KappaWindow {
        component,
        lo,
        hi: m1 / 2.0,
    })
}

/// `eps/8 + c + M1 < 0`, i.e. `c < c_crit`.
pub fn torus_condition(c: f64, params: &MassParams) -> bool {
    params.eps / 8.0 + c + params.total() < 0.0
}

/// Turning point of a separated system at a given `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TurningPoint {
    /// Root in the algebraic variable: `x0 = cosh mu0` or `y0 = cos nu0`.
    pub root: f64,
    /// `mu0 = arccosh x0` or `nu0 = arccos y0`.
    pub angle: f64,
    /// The oscillation interval in the algebraic variable.
    pub lo: f64,
    pub hi: f64,
    /// `|level - W|` at the root.
    pub residual: f64,
}

impl TurningPoint {
    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }
}

/// `(K, K1, K2)` at an elliptic state; regular on collision fibers.
pub fn eval_k(c: f64, params: &MassParams, state: &EllipticState) -> (f64, f64, f64) {
    let k1 = 0.5 * state.pmu * state.pmu + w1_poly(c, params).eval(state.mu.cosh());
    let k2 = 0.5 * state.pnu * state.pnu + w2_poly(c, params).eval(state.nu.cos());
    (k1 + k2, k1, k2)
}

/// State in the chart `x = cosh mu`, `y = cos nu` with `pmu = sinh(mu) px`,
/// `pnu = -sin(nu) py`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XyState {
    pub x: f64,
    pub y: f64,
    pub px: f64,
    pub py: f64,
}

pub fn to_xy_chart(state: &EllipticState) -> Result<XyState> {
    let (sh, sn) = (state.mu.sinh(), state.nu.sin());
    if sh == 0.0 || sn.abs() < 1e-300 || state.nu == 0.0 || state.nu == PI {
        return Err(Error::ChartSingular {
            mu: state.mu,
            nu: state.nu,
        });
    }
    Ok(XyState {
        x: state.mu.cosh(),
        y: state.nu.cos(),
        px: state.pmu / sh,
        py: -state.pnu / sn,
    })
}

/// `(K1, K2)` evaluated in the x-y chart:
/// `K1 = (x^2-1)/2 px^2 + W1(x)`, `K2 = (1-y^2)/2 py^2 + W2(y)`.
pub fn chart_k(c: f64, params: &MassParams, s: &XyState) -> (f64, f64) {
    (
        0.5 * (s.x * s.x - 1.0) * s.px * s.px + w1_poly(c, params).eval(s.x),
        0.5 * (1.0 - s.y * s.y) * s.py * s.py + w2_poly(c, params).eval(s.y),
    )
}

impl SeparatedSystem {
    pub fn mu(c: f64, params: MassParams) -> Self {
        SeparatedSystem {
            axis: Axis::Mu,
            component: Component::E,
            c,
            params,
        }
    }

    pub fn nu(c: f64, params: MassParams, component: Component) -> Self {
        SeparatedSystem {
            axis: Axis::Nu,
            component,
            c,
            params,
        }
    }

    /// The potential as a polynomial in `x = cosh mu` or `y = cos nu`.
    pub fn potential_poly(&self) -> Poly {
        match self.axis {
            Axis::Mu => w1_poly(self.c, &self.params),
            Axis::Nu => w2_poly(self.c, &self.params),
        }
    }

    /// The cubic `f(x) = dW1/dx` or `g(y) = dW2/dy`.
    pub fn cubic(&self) -> Poly {
        self.potential_poly().deriv()
    }

    /// `W1(mu)` or `W2(nu)`.
    pub fn eval_w(&self, angle: f64) -> f64 {
        match self.axis {
            Axis::Mu => self.potential_poly().eval(angle.cosh()),
            Axis::Nu => self.potential_poly().eval(reduce_angle(angle).cos()),
        }
    }

    /// `dW/d(angle)`.
    pub fn eval_dw(&self, angle: f64) -> f64 {
        match self.axis {
            Axis::Mu => self.cubic().eval(angle.cosh()) * angle.sinh(),
            Axis::Nu => {
                let a = reduce_angle(angle);
                -self.cubic().eval(a.cos()) * a.sin()
            }
        }
    }

    /// Well bottom: `mu = 0`, or `nu = pi` (e) / `nu = 0` (m).
    pub fn well_angle(&self) -> f64 {
        match (self.axis, self.component) {
            (Axis::Nu, Component::E) => PI,
            _ => 0.0,
        }
    }

    /// Level of the separated energy at `kappa`: `-kappa` for `mu`, `kappa` for `nu`.
    pub fn level(&self, kappa: f64) -> f64 {
        match self.axis {
            Axis::Mu => -kappa,
            Axis::Nu => kappa,
        }
    }

    /// `level(kappa) - W` as a polynomial in the algebraic variable; positive
    /// inside the well.
    pub fn level_poly(&self, kappa: f64) -> Poly {
        let mut c = self.potential_poly().c.map(|a| -a);
        c[0] += self.level(kappa);
        Poly::new(c)
    }

    /// Second derivative of `W` at the well bottom: `f(1)`, `-g(1)` or `g(-1)`.
    pub fn curvature(&self) -> f64 {
        let cubic = self.cubic();
        match (self.axis, self.component) {
            (Axis::Mu, _) => cubic.eval(1.0),
            (Axis::Nu, Component::E) => cubic.eval(-1.0),
            (Axis::Nu, Component::M) => -cubic.eval(1.0),
        }
    }

    pub fn window(&self) -> Result<KappaWindow> {
        kappa_window(self.component, &self.params)
    }

    /// Harmonic period `2 pi / sqrt(curvature)`.
    pub fn harmonic_period(&self) -> f64 {
        TAU / self.curvature().sqrt()
    }

    /// Local maximum of `W` in `y` on `(-1, 1)` separating the two wells.
    fn nu_barrier(&self) -> Option<f64> {
        let g = self.cubic();
        let mesh: Vec<f64> = (0..=512).map(|i| -1.0 + 2.0 * i as f64 / 512.0).collect();
        sign_change_brackets(|y| g.eval(y), &mesh)
            .into_iter()
            .filter(|&(a, b)| {
                // descending crossing of g, i.e. a maximum of W; exact mesh hits
                // are classified by the slope of g
                if a == b {
                    g.deriv().eval(a) < 0.0
                } else {
                    g.eval(a) > 0.0 && g.eval(b) < 0.0
                }
            })
            .find_map(|(a, b)| {
                if a == b {
                    return Some(a);
                }
                solve_bracketed(|y| g.eval(y), a, b, RootOptions::default()).ok()
            })
            .filter(|&y| y > -1.0 && y < 1.0)
    }

    /// Rim of the `mu` well: the root of `f` in `(1, inf)` when `eps > 0`.
    fn mu_rim(&self) -> Option<f64> {
        let f = self.cubic();
        if self.params.eps == 0.0 || f.eval(1.0) <= 0.0 {
            return None;
        }
        let mut hi = 2.0;
        while f.eval(hi) > 0.0 {
            hi *= 2.0;
            if hi > 1e12 {
                return None;
            }
        }
        solve_bracketed(|x| f.eval(x), 1.0, hi, RootOptions::default()).ok()
    }

    /// Turning point of the oscillation at `kappa`.
    pub fn turning_points(&self, kappa: f64) -> Result<TurningPoint> {
        self.window()?.check(kappa)?;
        let level = self.level(kappa);
        if !(self.curvature() > 0.0) {
            return Err(Error::NoTurningPoint { level });
        }
        let psi_poly = self.level_poly(kappa);
        let psi = |v: f64| psi_poly.eval(v);
        let opts = RootOptions::default();
        let miss = || Error::NoTurningPoint { level };
        let (root, lo, hi) = match (self.axis, self.component) {
            (Axis::Mu, _) => {
                if psi(1.0) <= 0.0 {
                    (1.0, 1.0, 1.0)
                } else {
                    let top = match self.mu_rim() {
                        Some(rim) => {
                            if psi(rim) >= 0.0 {
                                return Err(miss());
                            }
                            rim
                        }
                        None => {
                            let mut top = 2.0;
                            while psi(top) >= 0.0 {
                                top *= 2.0;
                                if top > 1e15 {
                                    return Err(miss());
                                }
                            }
                            top
                        }
                    };
                    let x0 = solve_bracketed(psi, 1.0, top, opts)?;
                    let x0 = psi_poly.polish(x0, 1.0, top);
                    (x0, 1.0, x0)
                }
            }
            (Axis::Nu, Component::E) => {
                if psi(-1.0) <= 0.0 {
                    (-1.0, -1.0, -1.0)
                } else {
                    let top = self.nu_barrier().unwrap_or(1.0);
                    if psi(top) >= 0.0 {
                        return Err(miss());
                    }
                    let y0 = solve_bracketed(psi, -1.0, top, opts)?;
                    let y0 = psi_poly.polish(y0, -1.0, top);
                    (y0, -1.0, y0)
                }
            }
            (Axis::Nu, Component::M) => {
                if psi(1.0) <= 0.0 {
                    (1.0, 1.0, 1.0)
                } else {
                    let bottom = self.nu_barrier().ok_or_else(miss)?;
                    if psi(bottom) >= 0.0 {
                        return Err(miss());
                    }
                    let y0 = solve_bracketed(psi, bottom, 1.0, opts)?;
                    let y0 = psi_poly.polish(y0, bottom, 1.0);
                    (y0, y0, 1.0)
                }
            }
        };
        let angle = match self.axis {
            Axis::Mu => root.max(1.0).acosh(),
            Axis::Nu => root.clamp(-1.0, 1.0).acos(),
        };
        Ok(TurningPoint {
            root,
            angle,
            lo,
            hi,
            residual: psi(root).abs(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::eval_v;
    use proptest::prelude::*;

    fn p(m1: f64, m2: f64, eps: f64) -> MassParams {
        MassParams::new(m1, m2, eps).unwrap()
    }

    #[test]
    fn centers_in_elliptic_coordinates() {
        let m = elliptic_to_cartesian(0.0, 0.0);
        assert_eq!((m.q1, m.q2), (0.5, 0.0));
        let e = elliptic_to_cartesian(0.0, PI);
        assert!((e.q1 + 0.5).abs() < 1e-16 && e.q2.abs() < 1e-16);
        let q = elliptic_to_cartesian(0.7, PI / 2.0);
        assert!(q.q1.abs() < 1e-16 && (q.q2 - 0.7f64.sinh() / 2.0).abs() < 1e-16);
    }

    #[test]
    fn lift_zero_momentum_and_collision() {
        let (_, pp) = cotangent_lift(&EllipticState::new(1.0, 2.0, 0.0, 0.0)).unwrap();
        assert_eq!(pp, [0.0, 0.0]);
        let err = cotangent_lift(&EllipticState::new(0.0, PI, 1.0, 1.0)).unwrap_err();
        assert_eq!(err.name(), "CollisionFiber");
    }

    #[test]
    fn well_values() {
        let par = p(1.3, 0.4, 0.9);
        let c = -3.0;
        let mu = SeparatedSystem::mu(c, par);
        let nu = SeparatedSystem::nu(c, par, Component::E);
        assert!((mu.eval_w(0.0) + par.total() / 2.0).abs() < 1e-15);
        assert!((nu.eval_w(0.0) - par.difference() / 2.0).abs() < 1e-15);
        assert!((nu.eval_w(PI) + par.difference() / 2.0).abs() < 1e-15);
        let (k, _, _) = eval_k(c, &par, &EllipticState::new(0.0, PI, 0.0, 0.0));
        assert!((k + par.total() / 2.0 + par.difference() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn euler_w1_example() {
        let par = p(1.0, 1.0, 0.0);
        let c = -3.0;
        let x = 1f64.cosh();
        let expect = -(c / 4.0) * (x * x - 1.0) - x;
        assert!((SeparatedSystem::mu(c, par).eval_w(1.0) - expect).abs() < 1e-14);
        let (_, k1, _) = eval_k(c, &par, &EllipticState::new(1.0, 0.3, 0.0, 0.0));
        assert!((k1 - expect).abs() < 1e-14);
    }

    #[test]
    fn windows() {
        let par = p(1.0, 0.5, 0.0);
        let e = kappa_window(Component::E, &par).unwrap();
        assert_eq!((e.lo, e.hi), (-0.25, 0.75));
        let m = kappa_window(Component::M, &par).unwrap();
        assert_eq!((m.lo, m.hi), (0.25, 0.75));
        // m2 = 0: M1 = M2, so the m-window shrinks to a point
        let k = kappa_window(Component::E, &p(1.0, 0.0, 1.0)).unwrap();
        assert_eq!((k.lo, k.hi), (-0.5, 0.5));
        let k = kappa_window(Component::M, &p(1.0, 0.0, 1.0)).unwrap();
        assert_eq!((k.lo, k.hi), (0.5, 0.5));
        assert!(kappa_window(Component::E, &p(0.5, 1.0, 1.0)).is_err());
    }

    #[test]
    fn barrier_on_mesh_node() {
        // g(y) = 0.375 - 1.5 y vanishes exactly at the node y = 0.25
        let sys = SeparatedSystem::nu(-3.0, p(1.0, 0.25, 0.0), Component::E);
        let tp = sys.turning_points(0.625).unwrap();
        assert!(tp.root > -1.0 && tp.root < 0.25);
    }

    #[test]
    fn torus_condition_boundary() {
        let par = p(1.0, 0.5, 2.0);
        assert!(torus_condition(-1.5 - 0.25 - 1.0, &par));
        assert!(!torus_condition(par.c_crit(), &par));
        assert!(!torus_condition(-70.0, &p(80.0, 0.0, 8.0)));
    }

    #[test]
    fn turning_point_examples() {
        // eps = 0, c = -3, M1 = 2: 0.75 (x^2 - 1) - x + 0.5 = 0
        let par = p(1.0, 1.0, 0.0);
        let tp = SeparatedSystem::mu(-3.0, par).turning_points(0.5).unwrap();
        let expect = (1.0 + 1.75f64.sqrt()) / 1.5;
        assert!((tp.root - expect).abs() < 1e-13);
        assert!(tp.residual < 1e-12);
        let top = SeparatedSystem::mu(-3.0, par).turning_points(1.0).unwrap();
        assert_eq!((top.root, top.angle), (1.0, 0.0));

        let par = p(1.0, 0.5, 0.0);
        let bottom = SeparatedSystem::nu(-3.0, par, Component::E).turning_points(-0.25).unwrap();
        assert_eq!(bottom.root, -1.0);
        assert!((bottom.angle - PI).abs() < 1e-15);
        let err = SeparatedSystem::mu(-3.0, par).turning_points(0.8).unwrap_err();
        assert_eq!(err.name(), "WindowViolation");
    }

    #[test]
    fn chart_pmu_zero() {
        let s = to_xy_chart(&EllipticState::new(1.0, PI / 2.0, 0.0, 0.3)).unwrap();
        assert_eq!(s.px, 0.0);
        assert_eq!(s.x, 1f64.cosh());
        assert!(s.y.abs() < 1e-16);
        assert!(to_xy_chart(&EllipticState::new(0.0, 1.0, 1.0, 1.0)).is_err());
    }

    proptest! {
        #[test]
        fn covering_identity(mu in 0.01..3.0f64, nu in 0.0..TAU, m1 in 0.1..4.0f64, m2 in -0.5..4.0f64, eps in 0.0..3.0f64) {
            let par = MassParams { m1, m2, eps };
            let q = elliptic_to_cartesian(mu, nu);
            let (ch, cn) = (mu.cosh(), nu.cos());
            // U in elliptic form: 2 m1/(ch + cn) + 2 m2/(ch - cn) + eps/8 (ch^2 + cn^2 - 1)
            let u = 2.0 * m1 / (ch + cn) + 2.0 * m2 / (ch - cn) + eps / 8.0 * (ch * ch + cn * cn - 1.0);
            if let Ok(v) = eval_v(q, &par) {
                prop_assert!((v + u).abs() < 1e-12 * (1.0 + u.abs()));
            }
            let q2 = elliptic_to_cartesian(-mu, TAU - nu);
            prop_assert!((q.q1 - q2.q1).abs() < 1e-14 * (1.0 + q.q1.abs()));
            prop_assert!((q.q2 - q2.q2).abs() < 1e-14 * (1.0 + q.q2.abs()));
        }

        #[test]
        fn chart_consistency(mu in 0.05..2.5f64, nu in 0.05..3.1f64, pmu in -2.0..2.0f64, pnu in -2.0..2.0f64, c in -6.0..-1.0f64) {
            let par = p(1.0, 0.3, 0.0);
            let st = EllipticState::new(mu, nu, pmu, pnu);
            let (_, k1, k2) = eval_k(c, &par, &st);
            let (c1, c2) = chart_k(c, &par, &to_xy_chart(&st).unwrap());
            prop_assert!((k1 - c1).abs() < 1e-12 * (1.0 + k1.abs()));
            prop_assert!((k2 - c2).abs() < 1e-12 * (1.0 + k2.abs()));
        }

        #[test]
        fn nu_periodicity(nu in -10.0..10.0f64) {
            let sys = SeparatedSystem::nu(-3.0, p(1.0, 0.5, 0.7), Component::E);
            prop_assert!((sys.eval_w(nu) - sys.eval_w(nu + TAU)).abs() < 1e-12);
        }

        #[test]
        fn well_curvatures_match_differences(m1 in 0.2..3.0f64, frac in 0.0..1.0f64, eps in 0.0..2.0f64, margin in 0.1..3.0f64) {
            let par = p(m1, frac * m1, eps);
            let c = par.c_crit() - margin;
            let h = 1e-4;
            for sys in [SeparatedSystem::mu(c, par), SeparatedSystem::nu(c, par, Component::E), SeparatedSystem::nu(c, par, Component::M)] {
                let a = sys.well_angle();
                let fd = (sys.eval_w(a + h) - 2.0 * sys.eval_w(a) + sys.eval_w(a - h)) / (h * h);
                prop_assert!((fd - sys.curvature()).abs() < 1e-6 * (1.0 + sys.curvature().abs()));
            }
            prop_assert!((SeparatedSystem::mu(c, par).curvature() + 0.5 * (eps / 8.0 + c + par.total())).abs() < 1e-12);
        }

        #[test]
        fn turning_point_decreases_in_kappa(m1 in 0.2..3.0f64, frac in 0.0..1.0f64, eps in 0.0..2.0f64, margin in 0.1..3.0f64) {
            let par = p(m1, frac * m1, eps);
            let c0 = crate::potential::critical_summary(&par).unwrap().c0.unwrap_or(f64::INFINITY);
            let c = par.c_crit().min(c0) - margin;
            let sys = SeparatedSystem::mu(c, par);
            let w = sys.window().unwrap();
            let mut prev = f64::INFINITY;
            for i in 1..20 {
                let k = w.lo + w.width() * i as f64 / 20.0;
                let tp = sys.turning_points(k).unwrap();
                prop_assert!(tp.root < prev);
                prop_assert!(tp.residual < 1e-12 * (1.0 + tp.root.powi(4) * eps + tp.root * tp.root * c.abs()));
                prev = tp.root;
            }
        }
    }
}
