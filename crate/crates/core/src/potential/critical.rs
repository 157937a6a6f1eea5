//! Critical points of `V` and the thresholds built from them.

use serde::Serialize;

use super::{eval_grad, eval_hessian, eval_v, DEG_TOL, GRAD_TOL};
use crate::error::{Error, Result};
use crate::numerics::roots::{log_mesh, sign_change_brackets, solve_bracketed, RootOptions};
use crate::params::{MassParams, PlanePoint, Regime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalKind {
    Saddle,
    Maximum,
    Minimum,
    Degenerate,
}

impl CriticalKind {
    pub fn from_hessian(det: f64, trace: f64) -> Self {
        if det.abs() < DEG_TOL {
            CriticalKind::Degenerate
        } else if det < 0.0 {
            CriticalKind::Saddle
        } else if trace < 0.0 {
            CriticalKind::Maximum
        } else {
            CriticalKind::Minimum
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CriticalKind::Saddle => "saddle",
            CriticalKind::Maximum => "maximum",
            CriticalKind::Minimum => "minimum",
            CriticalKind::Degenerate => "degenerate",
        }
    }
}

/// Position class of a critical point. Collinear points are labelled by the
/// axis interval they lie in: `L1` between the centers, `L2` beyond `m`,
/// `L3` beyond `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum PointLabel {
    L1,
    L2,
    L3,
    OffAxis,
}

impl PointLabel {
    fn of_axis_point(q1: f64) -> Self {
        if q1 < -0.5 {
            PointLabel::L3
        } else if q1 < 0.5 {
            PointLabel::L1
        } else {
            PointLabel::L2
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PointLabel::L1 => "L1",
            PointLabel::L2 => "L2",
            PointLabel::L3 => "L3",
            PointLabel::OffAxis => "off_axis",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub location: PlanePoint,
    pub value: f64,
    pub kind: CriticalKind,
    pub label: PointLabel,
    pub hessian_det: f64,
    pub hessian_trace: f64,
    pub grad_norm: f64,
}

impl CriticalPoint {
    fn at(location: PlanePoint, label: PointLabel, params: &MassParams) -> Result<Self> {
        let h = eval_hessian(location, params)?;
        let g = eval_grad(location, params)?;
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let trace = h[0][0] + h[1][1];
        Ok(CriticalPoint {
            location,
            value: eval_v(location, params)?,
            kind: CriticalKind::from_hessian(det, trace),
            label,
            hessian_det: det,
            hessian_trace: trace,
            grad_norm: g[0].hypot(g[1]),
        })
    }
}

/// Hypothesis sets of the ordering and threshold results, evaluated on the
/// parameters alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionFlags {
    /// `m1 >= m2 > 0`, `m1 >= eps/2`, `m2 >= 3 eps/8`: `V(L1) < V(L3) < V(L2)`.
    pub ordering_forward: bool,
    /// `m1 >= m2 > 0`, `m1 < 3 eps/8`, `m2 <= 5 eps/24`: `V(L3) < V(L2) < V(L1)`.
    pub ordering_reversed: bool,
    /// `m1 = m2 = m >= eps/2`: `c0 < c_crit`.
    pub equal_masses: bool,
    /// `m2 <= m1 <= 9 m2`, `m1 >= eps/2`, `m2 >= 3 eps/8`, `eps > 0`: `c0 < c_crit`.
    pub comparable_masses: bool,
}

impl ConditionFlags {
    pub fn of(p: &MassParams) -> Self {
        let (m1, m2, eps) = (p.m1, p.m2, p.eps);
        let ordered = m1 >= m2 && m2 > 0.0 && eps > 0.0;
        ConditionFlags {
            ordering_forward: ordered && m1 >= eps / 2.0 && m2 >= 3.0 * eps / 8.0,
            ordering_reversed: ordered && m1 < 3.0 * eps / 8.0 && m2 <= 5.0 * eps / 24.0,
            equal_masses: m1 == m2 && m1 >= eps / 2.0,
            comparable_masses: eps > 0.0
                && m2 > 0.0
                && m2 <= m1
                && m1 <= 9.0 * m2
                && m1 >= eps / 2.0
                && m2 >= 3.0 * eps / 8.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalSummary {
    pub params: MassParams,
    pub points: Vec<CriticalPoint>,
    /// Lowest collinear critical value; `None` when there is no collinear
    /// critical point (Kepler case).
    pub c0: Option<f64>,
    pub c_crit: f64,
    /// Non-degenerate collinear labels sorted by increasing value.
    pub ordering: Vec<PointLabel>,
    pub flags: ConditionFlags,
    /// `c0 < c_crit`, when `c0` exists.
    pub holds: Option<bool>,
}

/// Axis restriction of `dV/dq1`.
fn axis_slope(q1: f64, p: &MassParams) -> f64 {
    let a = q1 + 0.5;
    let b = q1 - 0.5;
    p.m1 * a.signum() / (a * a) + p.m2 * b.signum() / (b * b) - p.eps * q1
}

fn axis_meshes(p: &MassParams) -> Vec<Vec<f64>> {
    let far = log_mesh(1e-9, 1e9, 721);
    let near = log_mesh(1e-9, 0.5, 361);
    let left: Vec<f64> = far.iter().rev().map(|s| -0.5 - s).collect();
    let right: Vec<f64> = far.iter().map(|s| 0.5 + s).collect();
    let mut inner: Vec<f64> = near.iter().map(|s| -0.5 + s).collect();
    inner.extend(near.iter().rev().map(|s| 0.5 - s));
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    if p.m2 == 0.0 {
        // no singularity at m: the inner and right intervals are one
        inner.retain(|&x| x < 0.5);
        inner.extend(right);
        vec![left, inner]
    } else {
        vec![left, inner, right]
    }
}

fn polish_axis(mut x: f64, p: &MassParams) -> Result<f64> {
    for _ in 0..3 {
        let d = axis_slope(x, p);
        let h = eval_hessian(PlanePoint::new(x, 0.0), p)?[0][0];
        let next = x - d / h;
        if !next.is_finite() || axis_slope(next, p).abs() >= d.abs() {
            break;
        }
        x = next;
    }
    Ok(x)
}

fn polish_planar(mut q: PlanePoint, p: &MassParams) -> Result<PlanePoint> {
    for _ in 0..3 {
        let g = eval_grad(q, p)?;
        let h = eval_hessian(q, p)?;
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det == 0.0 {
            break;
        }
        let d1 = (h[1][1] * g[0] - h[0][1] * g[1]) / det;
        let d2 = (h[0][0] * g[1] - h[1][0] * g[0]) / det;
        let next = PlanePoint::new(q.q1 - d1, q.q2 - d2);
        let gn = eval_grad(next, p)?;
        if gn[0].hypot(gn[1]) >= g[0].hypot(g[1]) {
            break;
        }
        q = next;
    }
    Ok(q)
}

/// Off-axis abscissa from the two-circle intersection and the printed
/// closed form `(m1^(2/3) - m2^(2/3)) / (2^(1/2) eps^(2/3))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OffAxisAbscissa {
    pub derived: f64,
    pub printed: f64,
    /// Closed form with the exponent that the circle system actually yields,
    /// `2^(1/3)`.
    pub corrected: f64,
}

pub fn offaxis_abscissa(p: &MassParams) -> OffAxisAbscissa {
    let r1 = (2.0 * p.m1 / p.eps).cbrt();
    let r2 = (2.0 * p.m2 / p.eps).cbrt();
    let num = p.m1.powf(2.0 / 3.0) - p.m2.powf(2.0 / 3.0);
    let e23 = p.eps.powf(2.0 / 3.0);
    OffAxisAbscissa {
        derived: 0.5 * (r1 * r1 - r2 * r2),
        printed: num / (2f64.sqrt() * e23),
        corrected: num / (2f64.cbrt() * e23),
    }
}

/// Off-axis pair from `r1^3 = 2 m1/eps`, `r2^3 = 2 m2/eps`. Empty when the
/// circles do not meet.
fn offaxis_points(p: &MassParams) -> Result<Vec<PlanePoint>> {
    let r1 = (2.0 * p.m1 / p.eps).cbrt();
    let r2 = (2.0 * p.m2 / p.eps).cbrt();
    if !((r1 - r2).abs() < 1.0 && 1.0 < r1 + r2) {
        return Ok(Vec::new());
    }
    let q1 = 0.5 * (r1 * r1 - r2 * r2);
    let h2 = r1 * r1 - (q1 + 0.5) * (q1 + 0.5);
    if h2 <= 0.0 {
        return Ok(Vec::new());
    }
    let upper = polish_planar(PlanePoint::new(q1, h2.sqrt()), p)?;
    Ok(vec![upper, PlanePoint::new(upper.q1, -upper.q2)])
}

/// All critical points of `V`: collinear ones by bracketed solves of the
/// axis slope on each interval, off-axis ones by circle intersection.
pub fn find_critical_points(params: &MassParams) -> Result<Vec<CriticalPoint>> {
    let regime = params.regime()?;
    let mut out = Vec::new();
    let opts = RootOptions::default();
    for mesh in axis_meshes(params) {
        for (lo, hi) in sign_change_brackets(|x| axis_slope(x, params), &mesh) {
            let root = solve_bracketed(|x| axis_slope(x, params), lo, hi, opts)?;
            let root = polish_axis(root, params)?;
            let loc = PlanePoint::new(root, 0.0);
            out.push(CriticalPoint::at(loc, PointLabel::of_axis_point(root), params)?);
        }
    }
    if regime == Regime::Lagrange {
        for loc in offaxis_points(params)? {
            out.push(CriticalPoint::at(loc, PointLabel::OffAxis, params)?);
        }
    }
    for cp in &out {
        let scale = 1.0 + params.m1.abs() + params.m2.abs() + params.eps;
        if cp.grad_norm >= GRAD_TOL * scale {
            return Err(Error::RootBracketFailure {
                lo: cp.location.q1,
                hi: cp.location.q1,
            });
        }
    }
    Ok(out)
}

pub fn critical_summary(params: &MassParams) -> Result<CriticalSummary> {
    let points = find_critical_points(params)?;
    let mut collinear: Vec<&CriticalPoint> = points
        .iter()
        .filter(|cp| cp.label != PointLabel::OffAxis)
        .collect();
    let c0 = collinear.iter().map(|cp| cp.value).reduce(f64::min);
    collinear.retain(|cp| cp.kind != CriticalKind::Degenerate);
    collinear.sort_by(|a, b| a.value.total_cmp(&b.value));
    let c_crit = params.c_crit();
    Ok(CriticalSummary {
        params: *params,
        ordering: collinear.iter().map(|cp| cp.label).collect(),
        points,
        c0,
        c_crit,
        flags: ConditionFlags::of(params),
        holds: c0.map(|c0| c0 < c_crit),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerClosedForm {
    pub location: PlanePoint,
    pub value: f64,
    /// Abscissa and value exactly as stated for the corresponding case,
    /// kept for comparison; they differ from `location`/`value` when
    /// `m2 < 0`.
    pub stated_abscissa: f64,
    pub stated_value: f64,
}

/// Closed-form collinear critical point of the Euler problem.
///
/// For `m2 > 0` it lies between the centers at
/// `1/2 - 1/(sqrt(m1/m2) + 1)` with value `-(sqrt m1 + sqrt m2)^2`. For
/// `m2 < 0` it lies beyond `m` at `1/2 + 1/(s - 1)`, `s = sqrt(-m1/m2)`,
/// with value `-(sqrt m1 - sqrt|m2|)^2`.
pub fn euler_critical_closed_form(params: &MassParams) -> Result<EulerClosedForm> {
    let (m1, m2) = (params.m1, params.m2);
    if params.eps != 0.0 || m1 <= 0.0 {
        return Err(params.unsupported("closed form needs eps = 0 and m1 > 0"));
    }
    if m2 > 0.0 {
        let iota = 0.5 - 1.0 / ((m1 / m2).sqrt() + 1.0);
        let value = -(m1.sqrt() + m2.sqrt()).powi(2);
        Ok(EulerClosedForm {
            location: PlanePoint::new(iota, 0.0),
            value,
            stated_abscissa: iota,
            stated_value: value,
        })
    } else if m2 < 0.0 && m1 > -m2 {
        let s = (-m1 / m2).sqrt();
        Ok(EulerClosedForm {
            location: PlanePoint::new(0.5 + 1.0 / (s - 1.0), 0.0),
            value: -(m1.sqrt() - (-m2).sqrt()).powi(2),
            stated_abscissa: 0.5 + 1.0 / s,
            stated_value: -(m1.sqrt() + (-m2).sqrt()).powi(2),
        })
    } else {
        Err(params.unsupported("closed form needs m2 > 0, or m2 < 0 with m1 > |m2|"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(m1: f64, m2: f64, eps: f64) -> MassParams {
        MassParams::new(m1, m2, eps).unwrap()
    }

    #[test]
    fn symmetric_five_points() {
        let pts = find_critical_points(&p(1.0, 1.0, 1.0)).unwrap();
        assert_eq!(pts.len(), 5);
        let mut xs: Vec<f64> = pts.iter().filter(|c| c.location.q2 == 0.0).map(|c| c.location.q1).collect();
        xs.sort_by(f64::total_cmp);
        assert_eq!(xs.len(), 3, "{xs:?}");
        assert!((xs[0] + 1.428585).abs() < 1e-6 && xs[1].abs() < 1e-12 && (xs[2] - 1.428585).abs() < 1e-6, "{xs:?}");
        let off: Vec<_> = pts.iter().filter(|c| c.label == PointLabel::OffAxis).collect();
        assert_eq!(off.len(), 2);
        assert!(off[0].location.q1.abs() < 1e-12);
        assert!((off[0].location.q2.abs() - 1.1565).abs() < 1e-4);
        for cp in &pts {
            assert!(cp.grad_norm < GRAD_TOL);
            let expect = if cp.label == PointLabel::OffAxis { CriticalKind::Maximum } else { CriticalKind::Saddle };
            assert_eq!(cp.kind, expect);
        }
    }

    #[test]
    fn offaxis_determinant_formula() {
        let par = p(1.7, 0.9, 1.1);
        for cp in find_critical_points(&par).unwrap().iter().filter(|c| c.label == PointLabel::OffAxis) {
            let q = cp.location;
            let r1 = (q.q1 + 0.5).hypot(q.q2);
            let r2 = (q.q1 - 0.5).hypot(q.q2);
            let det = 9.0 * par.m1 * par.m2 * q.q2 * q.q2 / (r1.powi(5) * r2.powi(5));
            assert!((cp.hessian_det - det).abs() < 1e-10 * det);
            let ab = offaxis_abscissa(&par);
            assert!((ab.derived - q.q1).abs() < 1e-12);
            assert!((ab.corrected - q.q1).abs() < 1e-12);
            assert!((ab.printed - q.q1).abs() > 1e-3);
        }
    }

    #[test]
    fn counterexample_thresholds() {
        let s = critical_summary(&p(80.0, 0.0, 8.0)).unwrap();
        assert_eq!(s.points.len(), 2);
        assert!((s.c0.unwrap() + 65.0).abs() < 1e-9);
        assert_eq!(s.c_crit, -81.0);
        assert_eq!(s.holds, Some(false));
        let right = s.points.iter().find(|c| c.location.q1 > 0.0).unwrap();
        assert!((right.location.q1 - 1.835).abs() < 1e-3);
        assert!((right.value + 47.7).abs() < 0.05);
    }

    #[test]
    fn euler_symmetric_and_kepler() {
        let pts = find_critical_points(&p(1.0, 1.0, 0.0)).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].location.q1.abs() < 1e-12);
        assert!((pts[0].value + 4.0).abs() < 1e-12);
        let s = critical_summary(&p(1.0, 0.0, 0.0)).unwrap();
        assert!(s.points.is_empty() && s.c0.is_none() && s.holds.is_none());
    }

    #[test]
    fn equal_masses_summary() {
        let s = critical_summary(&p(1.0, 1.0, 1.0)).unwrap();
        assert!((s.c0.unwrap() + 4.0).abs() < 1e-12);
        assert_eq!(s.c_crit, -2.125);
        assert_eq!(s.holds, Some(true));
        assert!(s.flags.equal_masses);
    }

    #[test]
    fn forward_ordering_example() {
        let s = critical_summary(&p(1.0, 0.5, 1.0)).unwrap();
        assert!(s.flags.ordering_forward);
        assert_eq!(s.ordering, vec![PointLabel::L1, PointLabel::L3, PointLabel::L2]);
    }

    #[test]
    fn negative_mass_closed_form() {
        let par = p(1.0, -0.25, 0.0);
        let cf = euler_critical_closed_form(&par).unwrap();
        assert_eq!(cf.location.q1, 1.5);
        assert!((cf.value + 0.25).abs() < 1e-15);
        assert_eq!(cf.stated_abscissa, 1.0);
        let pts = find_critical_points(&par).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((pts[0].location.q1 - 1.5).abs() < 1e-12);
        assert!((pts[0].value - cf.value).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn closed_form_matches_numeric(m1 in 0.1..10.0f64, frac in 0.02..0.98f64, neg in any::<bool>()) {
            let m2 = if neg { -frac * m1 } else { frac * m1 * 1.0 };
            let par = p(m1, m2, 0.0);
            let cf = euler_critical_closed_form(&par).unwrap();
            let pts = find_critical_points(&par).unwrap();
            prop_assert_eq!(pts.len(), 1);
            prop_assert!((pts[0].location.q1 - cf.location.q1).abs() < 1e-10 * (1.0 + cf.location.q1.abs()));
            prop_assert!((pts[0].value - cf.value).abs() < 1e-10 * (1.0 + cf.value.abs()));
            if !neg {
                prop_assert!(cf.value < -(m1 + m2));
            }
        }

        #[test]
        fn swap_reflects_critical_set(m1 in 0.2..5.0f64, m2 in 0.2..5.0f64, eps in 0.05..3.0f64) {
            let a = find_critical_points(&p(m1, m2, eps)).unwrap();
            let b = find_critical_points(&p(m2, m1, eps)).unwrap();
            prop_assert_eq!(a.len(), b.len());
            for cp in &a {
                let mirror = cp.location.reflect_q1();
                let hit = b.iter().find(|d| d.location.dist(&mirror) < 1e-9);
                prop_assert!(hit.is_some());
                prop_assert!((hit.unwrap().value - cp.value).abs() < 1e-12 * (1.0 + cp.value.abs()));
            }
        }

        #[test]
        fn equal_masses_inner_point_at_origin(m in 0.05..10.0f64, eps in 0.0..5.0f64) {
            let pts = find_critical_points(&p(m, m, eps)).unwrap();
            let inner = pts.iter().find(|c| c.label == PointLabel::L1).unwrap();
            prop_assert!(inner.location.q1.abs() < 1e-12);
        }

        #[test]
        fn critical_points_are_critical(m1 in 0.05..10.0f64, m2 in 0.0..10.0f64, eps in 0.0..5.0f64) {
            for cp in find_critical_points(&p(m1, m2, eps)).unwrap() {
                prop_assert!(cp.grad_norm < GRAD_TOL * (1.0 + m1 + m2 + eps));
                prop_assert_eq!(cp.kind, CriticalKind::from_hessian(cp.hessian_det, cp.hessian_trace));
            }
        }
    }
}
