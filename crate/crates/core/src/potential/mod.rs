//! The potential `V = -U`, `U = m1/r1 + m2/r2 + (eps/2)|q|^2`, its
//! derivatives, critical points, Hill regions and threshold scans.

mod critical;
mod hill;
mod scan;

pub use critical::{
    critical_summary, euler_critical_closed_form, find_critical_points, offaxis_abscissa,
    ConditionFlags, CriticalKind, CriticalPoint, CriticalSummary, EulerClosedForm,
    OffAxisAbscissa, PointLabel,
};
pub use hill::{hill_regions, HillComponent, HillOptions, HillReport};
pub use scan::{scan_conjecture, ParamRange, ScanGrid, ScanRow};

use crate::error::{Error, Result};
use crate::params::{MassParams, PlanePoint, CENTER_E, CENTER_M};

/// Gradient norm below which a point counts as critical.
pub const GRAD_TOL: f64 = 1e-10;
/// `|det Hess|` below which a critical point is reported as degenerate.
pub const DEG_TOL: f64 = 1e-9;
/// Minimum distance to a center for any evaluation.
pub const COLLISION_TOL: f64 = 1e-12;

/// `(dq1, dq2, r)` relative to one center.
type Offset = (f64, f64, f64);

fn center_offsets(q: &PlanePoint) -> Result<(Offset, Offset)> {
    let d1 = (q.q1 - CENTER_E.q1, q.q2);
    let d2 = (q.q1 - CENTER_M.q1, q.q2);
    let r1 = d1.0.hypot(d1.1);
    let r2 = d2.0.hypot(d2.1);
    if r1 < COLLISION_TOL || r2 < COLLISION_TOL {
        return Err(Error::CenterCollision { q1: q.q1, q2: q.q2 });
    }
    Ok(((d1.0, d1.1, r1), (d2.0, d2.1, r2)))
}

/// `U(q) = m1/r1 + m2/r2 + (eps/2)|q|^2`.
pub fn eval_potential(q: PlanePoint, params: &MassParams) -> Result<f64> {
    let ((_, _, r1), (_, _, r2)) = center_offsets(&q)?;
    Ok(params.m1 / r1 + params.m2 / r2 + 0.5 * params.eps * (q.q1 * q.q1 + q.q2 * q.q2))
}

/// `V(q) = -U(q)`, the potential energy appearing in `H = |p|^2/2 + V`.
pub fn eval_v(q: PlanePoint, params: &MassParams) -> Result<f64> {
    eval_potential(q, params).map(|u| -u)
}

/// `(dV/dq1, dV/dq2)`.
pub fn eval_grad(q: PlanePoint, params: &MassParams) -> Result<[f64; 2]> {
    let ((a1, b1, r1), (a2, b2, r2)) = center_offsets(&q)?;
    let k1 = params.m1 / (r1 * r1 * r1);
    let k2 = params.m2 / (r2 * r2 * r2);
    Ok([
        k1 * a1 + k2 * a2 - params.eps * q.q1,
        k1 * b1 + k2 * b2 - params.eps * q.q2,
    ])
}

/// Hessian of `V`, symmetric.
pub fn eval_hessian(q: PlanePoint, params: &MassParams) -> Result<[[f64; 2]; 2]> {
    let ((a1, b1, r1), (a2, b2, r2)) = center_offsets(&q)?;
    let mut h = [[-params.eps, 0.0], [0.0, -params.eps]];
    for (m, a, b, r) in [(params.m1, a1, b1, r1), (params.m2, a2, b2, r2)] {
        let r3 = r * r * r;
        let r5 = r3 * r * r;
        h[0][0] += m * (1.0 / r3 - 3.0 * a * a / r5);
        h[1][1] += m * (1.0 / r3 - 3.0 * b * b / r5);
        h[0][1] -= 3.0 * m * a * b / r5;
    }
    h[1][0] = h[0][1];
    Ok(h)
}
