//! Parameter sweeps of the `c0 < c_crit` threshold comparison.

use serde::{Deserialize, Serialize};

use super::critical_summary;
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::params::MassParams;

/// Evenly spaced values `lo, ..., hi` (`n` of them; `n = 1` gives `lo`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl ParamRange {
    pub fn single(x: f64) -> Self {
        ParamRange { lo: x, hi: x, n: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        match self.n {
            0 => Vec::new(),
            1 => vec![self.lo],
            n => (0..n)
                .map(|i| {
                    if i == n - 1 {
                        self.hi
                    } else {
                        self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        }
    }
}

impl std::str::FromStr for ParamRange {
    type Err = Error;

    /// `x` or `lo:hi:n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad range '{s}', expected X or LO:HI:N"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [x] => Ok(ParamRange::single(x.trim().parse().map_err(|_| bad())?)),
            [lo, hi, n] => {
                let r = ParamRange {
                    lo: lo.trim().parse().map_err(|_| bad())?,
                    hi: hi.trim().parse().map_err(|_| bad())?,
                    n: n.trim().parse().map_err(|_| bad())?,
                };
                if r.n == 0 || !r.lo.is_finite() || !r.hi.is_finite() {
                    return Err(bad());
                }
                Ok(r)
            }
            _ => Err(bad()),
        }
    }
}

/// Cartesian grid of parameters; rows are ordered `m1`-major, `eps`-minor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub m1: ParamRange,
    pub m2: ParamRange,
    pub eps: ParamRange,
}

impl ScanGrid {
    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        let (a, b, e) = (self.m1.values(), self.m2.values(), self.eps.values());
        let mut out = Vec::with_capacity(a.len() * b.len() * e.len());
        for &m1 in &a {
            for &m2 in &b {
                for &eps in &e {
                    out.push((m1, m2, eps));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub m1: f64,
    pub m2: f64,
    pub eps: f64,
    pub c0: Option<f64>,
    pub c_crit: f64,
    pub holds: Option<bool>,
    /// `c0 >= c_crit` with `m2 != 0`.
    pub counterexample: bool,
    pub error: Option<String>,
}

fn scan_row((m1, m2, eps): (f64, f64, f64)) -> ScanRow {
    let c_crit = -eps / 8.0 - (m1 + m2);
    let result = MassParams::new(m1, m2, eps).and_then(|p| critical_summary(&p));
    match result {
        Ok(s) => ScanRow {
            m1,
            m2,
            eps,
            c0: s.c0,
            c_crit,
            holds: s.holds,
            counterexample: s.holds == Some(false) && m2 != 0.0,
            error: None,
        },
        Err(e) => ScanRow {
            m1,
            m2,
            eps,
            c0: None,
            c_crit,
            holds: None,
            counterexample: false,
            error: Some(e.name().to_string()),
        },
    }
}

/// Evaluates every grid point independently; failures are recorded in the
/// row. Row order is the grid order regardless of `exec`.
pub fn scan_conjecture(grid: &ScanGrid, exec: &Executor) -> Vec<ScanRow> {
    exec.map(&grid.points(), |&pt| scan_row(pt))
}
