//! Subcommand implementations. Each builds an [`Output`] from the effective
//! configuration.

use serde::Serialize;

use lagrange_core::acceptance;
use lagrange_core::dynamics::{self, Integrator};
use lagrange_core::momentmap::{self, tau, tau_euler_z};
use lagrange_core::potential::{
    critical_summary, hill_regions, scan_conjecture, HillOptions, ParamRange, ScanGrid,
};
use lagrange_core::regularization::{kappa_window, SeparatedSystem};
use lagrange_core::toric::{classify, ToricTolerances};
use lagrange_core::{Component, Executor, MassParams};

use crate::config::RunConfig;
use crate::output::{num, opt, opt_bool, Output, Table};
use crate::CliError;

fn params(cfg: &RunConfig) -> Result<MassParams, CliError> {
    let m1 = cfg.parse_required("m1")?;
    let m2 = cfg.parse_or("m2", 0.0)?;
    let eps = cfg.parse_or("eps", 0.0)?;
    Ok(MassParams::new(m1, m2, eps)?)
}

fn component(cfg: &RunConfig) -> Result<Component, CliError> {
    cfg.parse_or("component", Component::E)
}

fn executor(cfg: &RunConfig) -> Result<Executor, CliError> {
    Ok(Executor::new(cfg.parse_or("workers", 0usize)?))
}

fn b(x: bool) -> String {
    x.to_string()
}

pub fn critical_points(cfg: &RunConfig) -> Result<Output, CliError> {
    let s = critical_summary(&params(cfg)?)?;
    let mut t = Table::new(&[
        "label", "q1", "q2", "value", "kind", "hessian_det", "hessian_trace", "grad_norm",
    ]);
    for p in &s.points {
        t.push(vec![
            p.label.as_str().into(),
            num(p.location.q1),
            num(p.location.q2),
            num(p.value),
            p.kind.as_str().into(),
            num(p.hessian_det),
            num(p.hessian_trace),
            num(p.grad_norm),
        ]);
    }
    Output::new(t, &s)
}

pub fn summary(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = params(cfg)?;
    let s = critical_summary(&p)?;
    let ordering: Vec<&str> = s.ordering.iter().map(|l| l.as_str()).collect();
    let mut t = Table::new(&[
        "m1", "m2", "eps", "c0", "c_crit", "holds", "ordering", "ordering_forward",
        "ordering_reversed", "equal_masses", "comparable_masses",
    ]);
    t.push(vec![
        num(p.m1),
        num(p.m2),
        num(p.eps),
        opt(s.c0),
        num(s.c_crit),
        opt_bool(s.holds),
        ordering.join("<"),
        b(s.flags.ordering_forward),
        b(s.flags.ordering_reversed),
        b(s.flags.equal_masses),
        b(s.flags.comparable_masses),
    ]);
    #[derive(Serialize)]
    struct Summary<'a> {
        c0: Option<f64>,
        c_crit: f64,
        holds: Option<bool>,
        ordering: Vec<&'a str>,
        flags: lagrange_core::potential::ConditionFlags,
    }
    Output::new(
        t,
        &Summary {
            c0: s.c0,
            c_crit: s.c_crit,
            holds: s.holds,
            ordering,
            flags: s.flags,
        },
    )
}

pub fn hill(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_tol(&["max_resolution", "half_width"])?;
    let p = params(cfg)?;
    let c = cfg.parse_required("c")?;
    let n = cfg.parse_or("grid", 256usize)?;
    let mut opts = HillOptions::default();
    if let Some(&r) = cfg.tol.get("max_resolution") {
        opts.max_resolution = r as usize;
    }
    opts.unbounded_half_width = cfg.tol.get("half_width").copied();
    let rep = hill_regions(&p, c, n, &opts)?;
    if let Some(path) = cfg.get("mask") {
        let mut s = String::new();
        for i in 0..rep.resolution {
            let row: Vec<String> = rep.mask[i * rep.resolution..(i + 1) * rep.resolution]
                .iter()
                .map(|l| l.to_string())
                .collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        std::fs::write(path, s).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    }
    eprintln!(
        "# {} components at resolution {} ({} bounded)",
        rep.component_count,
        rep.resolution,
        rep.bounded_count()
    );
    let mut t = Table::new(&["component", "cells", "contains_e", "contains_m", "bounded"]);
    for comp in &rep.components {
        t.push(vec![
            comp.label.to_string(),
            comp.cells.to_string(),
            b(comp.contains_e),
            b(comp.contains_m),
            b(!comp.touches_boundary),
        ]);
    }
    Output::new(t, &rep)
}

fn build_profile(cfg: &RunConfig) -> Result<momentmap::ToricProfile, CliError> {
    let p = params(cfg)?;
    let c = cfg.parse_required("c")?;
    let n = cfg.parse_or("samples", 64usize)?;
    let prof = momentmap::profile(c, &p, component(cfg)?, n, &executor(cfg)?)?;
    for w in &prof.warnings {
        eprintln!("warning: {w}");
    }
    Ok(prof)
}

pub fn profile(cfg: &RunConfig) -> Result<Output, CliError> {
    let prof = build_profile(cfg)?;
    let mut t = Table::new(&["kappa", "tau1", "tau2", "T1", "T2", "fprime", "fsecond"]);
    for s in &prof.samples {
        t.push(
            [s.kappa, s.tau1, s.tau2, s.t1, s.t2, s.fprime, s.fsecond]
                .iter()
                .map(|&x| num(x))
                .collect(),
        );
    }
    Output::new(t, &prof)
}

pub fn classify_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.check_tol(&["mono", "curv", "lin"])?;
    let mut tol = ToricTolerances::default();
    for (k, &v) in &cfg.tol {
        match k.as_str() {
            "mono" => tol.mono = v,
            "curv" => tol.curv = v,
            _ => tol.lin = v,
        }
    }
    let prof = build_profile(cfg)?;
    let r = classify(&prof, tol)?;
    let mut t = Table::new(&[
        "monotone", "convexity", "dynamically_convex", "volume", "fprime_min", "fprime_max",
        "fsecond_min", "fsecond_max", "slope_witnesses", "curvature_witnesses",
    ]);
    t.push(vec![
        b(r.monotone),
        r.convexity.as_str().into(),
        b(r.dynamically_convex),
        num(r.volume),
        num(r.fprime_range.0),
        num(r.fprime_range.1),
        num(r.fsecond_range.0),
        num(r.fsecond_range.1),
        r.slope_witnesses.len().to_string(),
        r.curvature_witnesses.len().to_string(),
    ]);
    Output::new(t, &r)
}

#[derive(Serialize)]
struct EulerRow {
    kappa: f64,
    tau_elliptic: f64,
    tau_z: f64,
    ode_period: f64,
    max_rel_disagreement: f64,
}

/// The `mu` period three ways: elliptic quadrature, the Kepler-form integral
/// and a fourth-order symplectic run over twenty periods.
pub fn euler_periods(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = params(cfg)?;
    if p.eps != 0.0 {
        return Err(p.unsupported("euler-periods needs eps = 0").into());
    }
    let c = cfg.parse_required("c")?;
    let n = cfg.parse_or("samples", 9usize)?;
    let w = kappa_window(Component::E, &p)?;
    let sys = SeparatedSystem::mu(c, p);
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let kappa = w.lo + w.width() * i as f64 / (n + 1) as f64;
        let te = tau(&sys, kappa)?;
        let tz = tau_euler_z(p.total(), c, kappa)?;
        let tr = dynamics::integrate_1dof(&sys, kappa, te / 2048.0, 2048 * 20, Integrator::Yoshida4)?;
        let to = dynamics::measure_period(&tr)?;
        let spread = te.max(tz).max(to) - te.min(tz).min(to);
        rows.push(EulerRow {
            kappa,
            tau_elliptic: te,
            tau_z: tz,
            ode_period: to,
            max_rel_disagreement: spread / te,
        });
    }
    let mut t = Table::new(&["kappa", "tau_elliptic", "tau_z", "ode_period", "max_rel_disagreement"]);
    for r in &rows {
        t.push(
            [r.kappa, r.tau_elliptic, r.tau_z, r.ode_period, r.max_rel_disagreement]
                .iter()
                .map(|&x| num(x))
                .collect(),
        );
    }
    Output::new(t, &rows)
}

pub fn scan(cfg: &RunConfig) -> Result<Output, CliError> {
    let range = |key: &str, default: &str| -> Result<ParamRange, CliError> {
        let s = cfg.get(key).unwrap_or(default);
        s.parse().map_err(|e: lagrange_core::Error| CliError::Usage(e.to_string()))
    };
    cfg.require("m1")?;
    let grid = ScanGrid {
        m1: range("m1", "")?,
        m2: range("m2", "0")?,
        eps: range("eps", "0")?,
    };
    let rows = scan_conjecture(&grid, &executor(cfg)?);
    let mut t = Table::new(&["m1", "m2", "eps", "c0", "c_crit", "holds"]);
    for r in &rows {
        t.push(vec![num(r.m1), num(r.m2), num(r.eps), opt(r.c0), num(r.c_crit), opt_bool(r.holds)]);
    }
    Output::new(t, &rows)
}

#[derive(Serialize)]
struct SimulateSummary {
    axis: &'static str,
    kappa: f64,
    level: f64,
    dt: f64,
    steps: usize,
    period: f64,
    tau: f64,
    period_rel_error: f64,
    max_rel_drift: f64,
}

/// Integrates one separated system at the harmonic default step,
/// refined once when the drift exceeds `--tol drift=` (default `1e-8`).
pub fn simulate(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = params(cfg)?;
    let c = cfg.parse_required("c")?;
    let comp = component(cfg)?;
    let axis = cfg.get("axis").unwrap_or("mu");
    let sys = match axis {
        "mu" => SeparatedSystem::mu(c, p),
        "nu" => SeparatedSystem::nu(c, p, comp),
        other => return Err(CliError::Usage(format!("axis must be mu or nu, got '{other}'"))),
    };
    let w = kappa_window(comp, &p)?;
    let kappa = cfg.parse_or("kappa", 0.5 * (w.lo + w.hi))?;
    let periods = cfg.parse_or("periods", 100usize)?;
    let method: Integrator = cfg
        .get("integrator")
        .unwrap_or("leapfrog")
        .parse()
        .map_err(|e: lagrange_core::Error| CliError::Usage(e.to_string()))?;
    cfg.check_tol(&["drift"])?;
    let drift_tol = cfg.tol.get("drift").copied().unwrap_or(1e-8);
    let t = tau(&sys, kappa)?;
    let tr = dynamics::integrate_default(&sys, kappa, periods, method, drift_tol)?;
    let (dt, steps) = (tr.dt, tr.states.len() - 1);
    let period = dynamics::measure_period(&tr)?;
    let s = SimulateSummary {
        axis: if axis == "mu" { "mu" } else { "nu" },
        kappa,
        level: tr.level,
        dt,
        steps,
        period,
        tau: t,
        period_rel_error: (period - t).abs() / t,
        max_rel_drift: tr.max_rel_drift,
    };
    let mut table = Table::new(&[
        "axis", "kappa", "level", "dt", "steps", "period", "tau", "period_rel_error", "max_rel_drift",
    ]);
    table.push(vec![
        s.axis.into(),
        num(s.kappa),
        num(s.level),
        num(s.dt),
        s.steps.to_string(),
        num(s.period),
        num(s.tau),
        num(s.period_rel_error),
        num(s.max_rel_drift),
    ]);
    Output::new(table, &s)
}

/// Runs the acceptance suite, printing one line per criterion as it
/// finishes. Returns whether every criterion passed.
pub fn verify(cfg: &RunConfig, json: bool) -> Result<(bool, Option<Output>), CliError> {
    let exec = executor(cfg)?;
    let results = acceptance::run_all_with(&exec, |r| {
        if !json {
            println!("{}", r.line());
        }
    });
    let ok = results.iter().all(|r| r.passed);
    let out = if json {
        Some(Output::new(Table::default(), &results)?)
    } else {
        None
    };
    Ok((ok, out))
}
