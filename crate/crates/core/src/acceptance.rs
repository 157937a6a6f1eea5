//! End-to-end acceptance checks. Each criterion is a self-contained,
//! seeded computation returning a pass/fail verdict and a one-line detail.

use std::f64::consts::TAU;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dynamics::{self, Integrator};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::momentmap::{self, tau, tau_euler_z, ToricProfile};
use crate::params::{Component, MassParams};
use crate::potential::{
    critical_summary, euler_critical_closed_form, find_critical_points, CriticalKind, PointLabel,
};
use crate::potential::{hill_regions, HillOptions};
use crate::regularization::{cotangent_lift, eval_k, EllipticState, SeparatedSystem};
use crate::toric::{classify, Convexity, ToricTolerances};

pub const CRITERIA: usize = 15;
/// Samples per profile in the convexity and Lagrange-profile checks.
pub const PROFILE_SAMPLES: usize = 33;
const TIME_BUDGET_S: f64 = 180.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:02} {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

fn name(id: usize) -> &'static str {
    [
        "counterexample",
        "equal-mass-family",
        "euler-closed-forms",
        "collinear-ordering",
        "critical-census",
        "period-oracles",
        "harmonic-limit",
        "strict-monotonicity",
        "euler-convexity",
        "lagrange-profiles",
        "s-positivity",
        "conservation",
        "pullback-identity",
        "hill-counts",
        "budget-determinism",
    ][id - 1]
}

fn rng(id: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + id as u64)
}

fn params(m1: f64, m2: f64, eps: f64) -> Result<MassParams> {
    MassParams::new(m1, m2, eps)
}

type Verdict = Result<(bool, String)>;

fn c01() -> Verdict {
    let t = Instant::now();
    let s = critical_summary(&params(80.0, 0.0, 8.0)?)?;
    let c0 = s.c0.ok_or_else(|| Error::InvalidArgument("no collinear point".into()))?;
    let dt = t.elapsed().as_secs_f64();
    let ok = (c0 + 65.0).abs() < 1e-9 && s.c_crit == -81.0 && s.holds == Some(false) && dt < 1.0;
    Ok((ok, format!("c0={c0:.12} c_crit={} holds={:?}", s.c_crit, s.holds)))
}

fn c02() -> Verdict {
    let mut worst = 0.0f64;
    let mut ok = true;
    let mut cases = 0;
    for &m in &[0.5, 1.0, 2.0, 5.0] {
        for &frac in &[0.0, 0.25, 0.5, 1.0, 2.0] {
            let par = params(m, m, frac * m)?;
            let s = critical_summary(&par)?;
            let inner = s
                .points
                .iter()
                .find(|cp| cp.label == PointLabel::L1)
                .ok_or_else(|| Error::InvalidArgument("missing inner point".into()))?;
            let err = (inner.value + 4.0 * m).abs();
            worst = worst.max(err);
            ok &= inner.location.norm() < 1e-10 && err < 1e-10 && s.holds == Some(true);
            cases += 1;
        }
    }
    Ok((ok, format!("{cases} cases, max |V+4m|={worst:.2e}")))
}

fn c03() -> Verdict {
    let (mut dx, mut dv) = (0.0f64, 0.0f64);
    let mut stated_mismatch = 0;
    let mut cases = 0;
    for i in 0..10 {
        let m1 = 0.5 + 0.5 * i as f64;
        for j in 0..10 {
            // five attracting and five repelling second masses
            let frac = [-0.9, -0.7, -0.5, -0.3, -0.1, 0.1, 0.3, 0.5, 0.7, 0.9][j];
            let par = MassParams::euler(m1, frac * m1)?;
            let cf = euler_critical_closed_form(&par)?;
            let pts = find_critical_points(&par)?;
            let near = pts
                .iter()
                .min_by(|a, b| a.location.dist(&cf.location).total_cmp(&b.location.dist(&cf.location)))
                .ok_or_else(|| Error::InvalidArgument("no critical point".into()))?;
            dx = dx.max(near.location.dist(&cf.location));
            dv = dv.max((near.value - cf.value).abs() / (1.0 + cf.value.abs()));
            if (cf.stated_value - near.value).abs() > 1e-10 || (cf.stated_abscissa - near.location.q1).abs() > 1e-10 {
                stated_mismatch += 1;
            }
            cases += 1;
        }
    }
    Ok((
        dx < 1e-10 && dv < 1e-10,
        format!("{cases} cases, max dx={dx:.2e} dv={dv:.2e}, stated repelling-case form off in {stated_mismatch}"),
    ))
}

fn collinear_values(par: &MassParams) -> Result<Option<[f64; 3]>> {
    let pts = find_critical_points(par)?;
    let val = |l: PointLabel| -> Option<f64> {
        let v: Vec<f64> = pts.iter().filter(|c| c.label == l).map(|c| c.value).collect();
        (v.len() == 1).then(|| v[0])
    };
    Ok(match (val(PointLabel::L1), val(PointLabel::L2), val(PointLabel::L3)) {
        (Some(a), Some(b), Some(c)) => Some([a, b, c]),
        _ => None,
    })
}

fn c04() -> Verdict {
    let mut r = rng(4);
    let (mut fwd, mut rev) = (0, 0);
    for _ in 0..50 {
        let eps: f64 = r.gen_range(0.1..3.0);
        let m2: f64 = r.gen_range(3.0 * eps / 8.0..3.0 * eps / 8.0 + 3.0);
        let m1 = r.gen_range(m2.max(eps / 2.0)..m2.max(eps / 2.0) + 3.0);
        if let Some([l1, l2, l3]) = collinear_values(&params(m1, m2, eps)?)? {
            fwd += (l1 < l3 && l3 < l2) as usize;
        }
    }
    for _ in 0..50 {
        let eps: f64 = r.gen_range(0.1..3.0);
        let m1: f64 = r.gen_range(0.01 * eps..3.0 * eps / 8.0);
        let m2 = r.gen_range(0.0..m1.min(5.0 * eps / 24.0));
        if m2 == 0.0 {
            continue;
        }
        if let Some([l1, l2, l3]) = collinear_values(&params(m1, m2, eps)?)? {
            rev += (l3 < l2 && l2 < l1) as usize;
        }
    }
    Ok((fwd == 50 && rev == 50, format!("forward {fwd}/50, reversed {rev}/50")))
}

fn c05() -> Verdict {
    let mut r = rng(5);
    let (mut good, mut degenerate, mut tried) = (0, 0, 0);
    while good + degenerate < 50 {
        let m1 = r.gen_range(0.05..5.0);
        let m2 = r.gen_range(0.05..5.0);
        let eps = r.gen_range(0.05..5.0);
        let r1 = (2.0f64 * m1 / eps).cbrt();
        let r2 = (2.0f64 * m2 / eps).cbrt();
        tried += 1;
        // off-axis points exist only when the two circles meet
        if !((r1 - r2).abs() < 1.0 && 1.0 < r1 + r2) {
            continue;
        }
        let pts = find_critical_points(&params(m1, m2, eps)?)?;
        if pts.iter().any(|c| c.kind == CriticalKind::Degenerate) {
            degenerate += 1;
            continue;
        }
        let saddles = pts.iter().filter(|c| c.label != PointLabel::OffAxis && c.kind == CriticalKind::Saddle).count();
        let maxima = pts.iter().filter(|c| c.label == PointLabel::OffAxis && c.kind == CriticalKind::Maximum).count();
        if pts.len() == 5 && saddles == 3 && maxima == 2 {
            good += 1;
        } else {
            return Ok((false, format!("m1={m1} m2={m2} eps={eps}: {} points, {saddles} saddles, {maxima} maxima", pts.len())));
        }
    }
    Ok((true, format!("{good} non-degenerate triples with 3 saddles + 2 maxima ({degenerate} degenerate, {tried} drawn)")))
}

fn c06(exec: &Executor) -> Verdict {
    let cases = [(1.0, -1.5), (1.0, -3.0), (2.0, -2.5), (0.5, -4.0), (3.0, -7.0)];
    let jobs: Vec<(f64, f64, f64)> = cases
        .iter()
        .flat_map(|&(m, c)| (1..=9).map(move |i| (m, c, -m / 2.0 + m * i as f64 / 10.0)))
        .collect();
    let out: Vec<Result<(f64, f64)>> = exec.map(&jobs, |&(m, c, k)| {
        let sys = SeparatedSystem::mu(c, MassParams::euler(m, 0.0)?);
        let te = tau(&sys, k)?;
        let tz = tau_euler_z(m, c, k)?;
        let tr = dynamics::integrate_1dof(&sys, k, te / 2048.0, 2048 * 20, Integrator::Yoshida4)?;
        let to = dynamics::measure_period(&tr)?;
        Ok(((te - tz).abs() / te, (te - to).abs() / te))
    });
    let (mut ez, mut eo) = (0.0f64, 0.0f64);
    for o in out {
        let (a, b) = o?;
        ez = ez.max(a);
        eo = eo.max(b);
    }
    Ok((ez < 1e-8 && eo < 1e-4, format!("{} levels, max elliptic/z {ez:.2e}, quadrature/ODE {eo:.2e}", jobs.len())))
}

fn c07() -> Verdict {
    let mut worst = 0.0f64;
    for &(m1, m2, eps, c) in &[(1.0, 0.5, 0.0, -3.0), (1.0, 0.0, 0.0, -2.0), (1.0, 1.0, 1.0, -4.0), (2.0, 0.5, 0.5, -5.0), (1.0, -0.4, 0.0, -2.0)] {
        let par = params(m1, m2, eps)?;
        let sys = SeparatedSystem::mu(c, par);
        let k = sys.window()?.hi - 1e-6;
        let t = tau(&sys, k)?;
        let h = TAU / sys.curvature().sqrt();
        worst = worst.max((t - h).abs() / h);
    }
    Ok((worst < 1e-3, format!("max relative gap to 2pi/sqrt(f(1)) = {worst:.2e}")))
}

const EULER_C: f64 = -3.0;
const EULER_M2: [f64; 6] = [0.25, 0.5, 0.75, -0.1, -0.25, -0.4];

/// Euler profiles at `c = -3`. Where `-3` is not below `c0` there is no
/// separate component around `e`; the entry then carries `None` and a
/// supplementary profile at `c0 - 1/2`.
struct EulerCase {
    m2: f64,
    c0: f64,
    stated: Option<ToricProfile>,
    shifted: Option<ToricProfile>,
}

fn euler_profiles(exec: &Executor) -> Result<Vec<EulerCase>> {
    EULER_M2
        .iter()
        .map(|&m2| {
            let par = MassParams::euler(1.0, m2)?;
            let c0 = critical_summary(&par)?.c0.unwrap_or(f64::INFINITY);
            let run = |c: f64| momentmap::profile(c, &par, Component::E, PROFILE_SAMPLES, exec);
            Ok(if EULER_C < c0 {
                EulerCase { m2, c0, stated: Some(run(EULER_C)?), shifted: None }
            } else {
                EulerCase { m2, c0, stated: None, shifted: Some(run(c0 - 0.5)?) }
            })
        })
        .collect()
}

/// Parameters inside the comparable-mass region; `c` sits below `c0`.
fn lagrange_profiles(exec: &Executor) -> Result<Vec<ToricProfile>> {
    let mut out = Vec::new();
    for &(m1, m2, eps) in &[(1.0, 1.0, 1.0), (2.0, 1.0, 1.0), (3.0, 0.5, 1.0), (1.0, 0.5, 0.8)] {
        let par = params(m1, m2, eps)?;
        let s = critical_summary(&par)?;
        let c = s.c0.unwrap_or(s.c_crit).min(s.c_crit) - 0.5;
        for comp in [Component::E, Component::M] {
            out.push(momentmap::profile(c, &par, comp, PROFILE_SAMPLES, exec)?);
        }
    }
    Ok(out)
}

fn max_interior_fprime(p: &ToricProfile) -> f64 {
    let n = p.samples.len();
    p.samples[1..n - 1].iter().map(|s| s.fprime).fold(f64::NEG_INFINITY, f64::max)
}

fn c08(exec: &Executor) -> Verdict {
    let mut profiles: Vec<ToricProfile> = euler_profiles(exec)?
        .into_iter()
        .flat_map(|e| e.stated.into_iter().chain(e.shifted))
        .collect();
    profiles.extend(lagrange_profiles(exec)?);
    let worst = profiles.iter().map(max_interior_fprime).fold(f64::NEG_INFINITY, f64::max);
    let kepler = momentmap::profile(EULER_C, &MassParams::euler(1.0, 0.0)?, Component::E, PROFILE_SAMPLES, exec)?;
    let dev = kepler.samples.iter().map(|s| (s.fprime + 1.0).abs()).fold(0.0f64, f64::max);
    Ok((
        worst < -1e-9 && dev < 1e-8,
        format!("{} profiles, max interior f'={worst:.4}, single-mass |f'+1| <= {dev:.2e}", profiles.len()),
    ))
}

fn c09(exec: &Executor) -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for e in euler_profiles(exec)? {
        let want = if e.m2 > 0.0 { Convexity::ConcaveToric } else { Convexity::ConvexToric };
        match (&e.stated, &e.shifted) {
            (Some(p), _) => {
                let r = classify(p, ToricTolerances::default())?;
                ok &= r.convexity == want;
                parts.push(format!("m2={}:{}", e.m2, r.convexity.as_str()));
            }
            (None, Some(p)) => {
                ok = false;
                let r = classify(p, ToricTolerances::default())?;
                parts.push(format!(
                    "m2={}:no e-component (c={EULER_C} >= c0={:.4}; at c0-1/2 {})",
                    e.m2,
                    e.c0,
                    r.convexity.as_str()
                ));
            }
            (None, None) => unreachable!(),
        }
    }
    Ok((ok, parts.join(" ")))
}

fn c10(exec: &Executor) -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in lagrange_profiles(exec)? {
        let r = classify(&p, ToricTolerances::default())?;
        ok &= r.monotone;
        parts.push(format!(
            "({},{},{}){}:{}",
            p.params.m1,
            p.params.m2,
            p.params.eps,
            p.component,
            r.convexity.as_str()
        ));
    }
    Ok((ok, format!("all monotone={ok}; f'' sign {}", parts.join(" "))))
}

fn c11(exec: &Executor) -> Verdict {
    let mut r = rng(11);
    let jobs: Vec<(f64, f64, f64)> = (0..20)
        .map(|_| {
            let m = r.gen_range(0.2..3.0);
            let c = r.gen_range(-3.0 * m..-1.05 * m);
            let k = r.gen_range(-0.49 * m..0.49 * m);
            (m, c, k)
        })
        .collect();
    let out: Vec<Result<(f64, f64)>> = exec.map(&jobs, |&(m, c, k)| {
        let (a, b, cc) = momentmap::euler_abc(m, c, k);
        Ok((momentmap::s_check(a, b, cc, c)?, momentmap::s_factored(a, b, cc, c)?))
    });
    let (mut min_s, mut gap) = (f64::INFINITY, 0.0f64);
    for o in out {
        let (s, f) = o?;
        min_s = min_s.min(s);
        gap = gap.max((s - f).abs() / f.abs());
    }
    Ok((min_s > 0.0 && gap < 1e-8, format!("min S={min_s:.4e}, 2-D vs factored {gap:.2e}")))
}

fn c12(exec: &Executor) -> Verdict {
    // K-level drift over 100 periods for both axes
    let cases = [(1.0, 0.5, 0.0, -3.0, 0.2), (1.0, 1.0, 1.0, -4.0, 0.3), (2.0, -0.5, 0.0, -3.0, 0.5)];
    let runs: Vec<(f64, f64, f64, f64, f64, bool)> = cases
        .iter()
        .flat_map(|&(a, b, e, c, k)| [(a, b, e, c, k, true), (a, b, e, c, k, false)])
        .collect();
    let drifts: Vec<Result<f64>> = exec.map(&runs, |&(m1, m2, eps, c, k, on_mu)| {
        let par = params(m1, m2, eps)?;
        let sys = if on_mu { SeparatedSystem::mu(c, par) } else { SeparatedSystem::nu(c, par, Component::E) };
        let t = tau(&sys, k)?;
        Ok(dynamics::integrate_1dof(&sys, k, t / 2048.0, 2048 * 100, Integrator::Yoshida4)?.max_rel_drift)
    });
    let mut drift = 0.0f64;
    for d in drifts {
        drift = drift.max(d?);
    }

    // E along a lifted Euler trajectory
    let par = MassParams::euler(1.0, 0.5)?;
    let (c, k) = (-3.0, 0.2);
    let t = tau(&SeparatedSystem::mu(c, par), k)?;
    let pair = dynamics::integrate_pair(c, &par, Component::E, k, t / 2048.0, 2048 * 20, Integrator::Yoshida4)?;
    let mut e_vals = Vec::new();
    for i in (0..pair.mu.states.len()).step_by(64) {
        let st = pair.elliptic_state(i);
        if let Ok((q, p)) = cotangent_lift(&st) {
            e_vals.push(dynamics::euler_integral(q, p, &par)?);
        }
    }
    let e0 = e_vals[0];
    let e_drift = e_vals.iter().map(|e| (e - e0).abs() / e0.abs()).fold(0.0f64, f64::max);

    // E against K2 at random states
    let mut r = rng(12);
    let mut gap = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let m1 = r.gen_range(0.2..3.0);
        let par = MassParams::euler(m1, r.gen_range(-0.95..1.0) * m1)?;
        let st = EllipticState::new(r.gen_range(0.05..2.0), r.gen_range(0.0..TAU), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        if let Ok((e, k2)) = dynamics::euler_integral_and_k2(&st, &par) {
            gap = gap.max((e - 2.0 * k2).abs() / (1.0 + e.abs()));
            n += 1;
        }
    }
    Ok((
        drift < 1e-8 && e_drift < 1e-8 && gap < 1e-10,
        format!("K drift {drift:.2e}, E drift {e_drift:.2e} (E0={e0:.10}, 2 kappa={}), |E - 2 K2| {gap:.2e}", 2.0 * k),
    ))
}

fn c13() -> Verdict {
    let mut r = rng(13);
    let (mut worst, mut n) = (0.0f64, 0);
    while n < 1000 {
        let eps = if r.gen_bool(0.5) { 0.0 } else { r.gen_range(0.0..3.0) };
        let m1 = r.gen_range(0.1..3.0);
        let m2 = if eps == 0.0 { r.gen_range(-0.95..1.0) * m1 } else { r.gen_range(0.0..3.0) };
        let par = params(m1, m2, eps)?;
        let st = EllipticState::new(r.gen_range(0.01..2.0), r.gen_range(0.0..TAU), r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let c = r.gen_range(-10.0..-0.1);
        let Ok((q, p)) = cotangent_lift(&st) else { continue };
        let Ok(h) = dynamics::hamiltonian(q, p, &par) else { continue };
        let (k, _, _) = eval_k(c, &par, &st);
        worst = worst.max((k - st.time_scale() * (h - c)).abs() / (1.0 + k.abs()));
        n += 1;
    }
    Ok((worst < 1e-12, format!("{n} states, max |K - R(H-c)|/(1+|K|) = {worst:.2e}")))
}

fn c14() -> Verdict {
    let opts = HillOptions::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for &(m1, m2, eps) in &[(1.0, 1.0, 1.0), (2.0, 1.0, 1.0), (1.0, 0.5, 0.8)] {
        let par = params(m1, m2, eps)?;
        let c0 = critical_summary(&par)?.c0.unwrap_or(f64::NAN);
        let rep = hill_regions(&par, c0 - 0.5, 128, &opts)?;
        ok &= rep.component_count == 3 && rep.coarse_count == 3;
        parts.push(format!("({m1},{m2},{eps}):{}", rep.component_count));
    }
    for &(m1, m2) in &[(1.0, -0.4), (2.0, -0.5)] {
        let par = MassParams::euler(m1, m2)?;
        let c0 = critical_summary(&par)?.c0.unwrap_or(f64::NAN);
        let rep = hill_regions(&par, c0 - 0.5, 128, &opts)?;
        let around_e = rep.components.iter().filter(|c| c.contains_e && !c.touches_boundary).count();
        ok &= rep.component_count == 1 && rep.coarse_count == 1 && around_e == 1;
        parts.push(format!("({m1},{m2},0):{}", rep.component_count));
    }
    Ok((ok, format!("component counts {}", parts.join(" "))))
}

fn run_one(id: usize, exec: &Executor) -> Verdict {
    match id {
        1 => c01(),
        2 => c02(),
        3 => c03(),
        4 => c04(),
        5 => c05(),
        6 => c06(exec),
        7 => c07(),
        8 => c08(exec),
        9 => c09(exec),
        10 => c10(exec),
        11 => c11(exec),
        12 => c12(exec),
        13 => c13(),
        14 => c14(),
        _ => Err(Error::InvalidArgument(format!("no criterion {id}"))),
    }
}

fn finish(id: usize, v: Verdict, t: Instant) -> CriterionResult {
    let (passed, detail) = match v {
        Ok(v) => v,
        Err(e) => (false, format!("{}: {e}", e.name())),
    };
    CriterionResult {
        id,
        name: name(id),
        passed,
        detail,
        seconds: t.elapsed().as_secs_f64(),
    }
}

/// Runs criterion `id` in `1..=14`; the budget/determinism criterion only
/// makes sense as part of [`run_all`].
pub fn run_criterion(id: usize, exec: &Executor) -> Result<CriterionResult> {
    if !(1..CRITERIA).contains(&id) {
        return Err(Error::InvalidArgument(format!("criterion must be in 1..={}", CRITERIA - 1)));
    }
    let t = Instant::now();
    Ok(finish(id, run_one(id, exec), t))
}

/// Runs every criterion, calling `report` as each one finishes. The last
/// criterion checks the total time and recomputes the first eleven details
/// with a sequential executor, requiring identical output.
pub fn run_all_with(exec: &Executor, mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let start = Instant::now();
    let mut out = Vec::with_capacity(CRITERIA);
    for id in 1..CRITERIA {
        let r = run_criterion(id, exec).expect("id in range");
        report(&r);
        out.push(r);
    }
    let t = Instant::now();
    let rerun: Vec<String> = (1..=11)
        .filter(|&id| id != 6 && id != 8)
        .map(|id| finish(id, run_one(id, &Executor::sequential()), t).detail)
        .collect();
    let first: Vec<String> = out
        .iter()
        .filter(|r| r.id <= 11 && r.id != 6 && r.id != 8)
        .map(|r| r.detail.clone())
        .collect();
    let total = start.elapsed().as_secs_f64();
    let same = rerun == first;
    let last = CriterionResult {
        id: CRITERIA,
        name: name(CRITERIA),
        passed: total < TIME_BUDGET_S && same,
        detail: format!("suite {total:.1}s of {TIME_BUDGET_S}s budget, rerun identical={same}"),
        seconds: t.elapsed().as_secs_f64(),
    };
    report(&last);
    out.push(last);
    out
}

pub fn run_all(exec: &Executor) -> Vec<CriterionResult> {
    run_all_with(exec, |_| {})
}
