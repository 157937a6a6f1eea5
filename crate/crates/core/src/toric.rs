//! Classification of a sampled moment-map image as a toric domain.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::momentmap::{PeriodSample, ToricProfile};

/// Minimum number of samples accepted by [`classify`] and [`volume`].
pub const MIN_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ToricTolerances {
    /// Interior slopes must satisfy `f' < -mono`.
    pub mono: f64,
    /// Curvature votes count only beyond `curv`.
    pub curv: f64,
    /// `max |f''| < lin` means linear.
    pub lin: f64,
}

impl Default for ToricTolerances {
    fn default() -> Self {
        ToricTolerances {
            mono: 1e-9,
            curv: 1e-7,
            lin: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convexity {
    /// `f` concave (`f'' < 0`): the domain is convex.
    ConvexToric,
    /// `f` convex (`f'' > 0`).
    ConcaveToric,
    Linear,
    Mixed,
}

impl Convexity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Convexity::ConvexToric => "convex_toric",
            Convexity::ConcaveToric => "concave_toric",
            Convexity::Linear => "linear",
            Convexity::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub index: usize,
    pub kappa: f64,
    pub fprime: f64,
    pub fsecond: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub monotone: bool,
    pub convexity: Convexity,
    /// Same as `monotone`: in dimension four strict monotonicity of the toric
    /// domain is equivalent to dynamical convexity.
    pub dynamically_convex: bool,
    pub volume: f64,
    pub tolerances: ToricTolerances,
    /// Normalized slope and curvature ranges over interior samples.
    pub fprime_range: (f64, f64),
    pub fsecond_range: (f64, f64),
    pub slope_witnesses: Vec<Witness>,
    pub curvature_witnesses: Vec<Witness>,
    /// Interior samples with `|f'| < 1e-6` after normalization.
    pub near_flat: Vec<usize>,
}

fn validate(samples: &[PeriodSample]) -> Result<()> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::ProfileTooSparse {
            got: samples.len(),
            need: MIN_SAMPLES,
        });
    }
    for (i, w) in samples.windows(2).enumerate() {
        if !(w[1].t1 > w[0].t1) {
            return Err(Error::NonMonotoneAbscissa { index: i + 1 });
        }
    }
    Ok(())
}

/// Area under the sampled graph `T2 = f(T1)`: trapezoid rule plus the
/// endpoint-slope correction `h^2 (f'_i - f'_{i+1}) / 12` on each segment,
/// exact for cubics.
pub fn volume_samples(samples: &[PeriodSample]) -> Result<f64> {
    validate(samples)?;
    Ok(samples
        .windows(2)
        .map(|w| {
            let h = w[1].t1 - w[0].t1;
            0.5 * h * (w[0].t2 + w[1].t2) + h * h * (w[0].fprime - w[1].fprime) / 12.0
        })
        .sum())
}

pub fn volume(profile: &ToricProfile) -> Result<f64> {
    volume_samples(&profile.samples)
}

/// Classifies samples ordered by increasing `T1`. Slopes and curvatures are
/// normalized to the unit box `[0, T1max] x [0, T2max]`; the first and last
/// samples (where the image meets the axes) do not vote.
pub fn classify_samples(samples: &[PeriodSample], tol: ToricTolerances) -> Result<ClassificationReport> {
    validate(samples)?;
    let t1max = samples.iter().map(|s| s.t1).fold(0.0f64, f64::max);
    let t2max = samples.iter().map(|s| s.t2).fold(0.0f64, f64::max);
    if !(t1max > 0.0 && t2max > 0.0) {
        return Err(Error::InvalidArgument("profile has a degenerate bounding box".into()));
    }
    let sx = t1max / t2max;
    let n = samples.len();
    let interior: Vec<(usize, Witness)> = (1..n - 1)
        .map(|i| {
            let s = &samples[i];
            (
                i,
                Witness {
                    index: i,
                    kappa: s.kappa,
                    fprime: s.fprime * sx,
                    fsecond: s.fsecond * sx * t1max,
                },
            )
        })
        .collect();

    let slope_witnesses: Vec<Witness> = interior
        .iter()
        .filter(|(_, w)| !(w.fprime < -tol.mono))
        .map(|&(_, w)| w)
        .collect();
    let near_flat = interior
        .iter()
        .filter(|(_, w)| w.fprime.abs() < 1e-6)
        .map(|&(i, _)| i)
        .collect();
    let monotone = slope_witnesses.is_empty();

    let fs: Vec<f64> = interior.iter().map(|(_, w)| w.fsecond).collect();
    let fp: Vec<f64> = interior.iter().map(|(_, w)| w.fprime).collect();
    let range = |v: &[f64]| {
        (
            v.iter().cloned().fold(f64::INFINITY, f64::min),
            v.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        )
    };
    let max_abs = fs.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let convexity = if max_abs < tol.lin {
        Convexity::Linear
    } else if fs.iter().all(|&x| x < -tol.curv) {
        Convexity::ConvexToric
    } else if fs.iter().all(|&x| x > tol.curv) {
        Convexity::ConcaveToric
    } else {
        Convexity::Mixed
    };
    let mut curvature_witnesses = Vec::new();
    if convexity == Convexity::Mixed {
        let by = |pick: fn(f64, f64) -> bool| {
            interior
                .iter()
                .map(|&(_, w)| w)
                .reduce(|a, b| if pick(b.fsecond, a.fsecond) { b } else { a })
        };
        if let Some(w) = by(|x, y| x > y).filter(|w| w.fsecond > tol.curv) {
            curvature_witnesses.push(w);
        }
        if let Some(w) = by(|x, y| x < y).filter(|w| w.fsecond < -tol.curv) {
            curvature_witnesses.push(w);
        }
        if let Some(&(_, w)) = interior.iter().find(|(_, w)| w.fsecond.abs() <= tol.curv) {
            curvature_witnesses.push(w);
        }
    }
    Ok(ClassificationReport {
        monotone,
        convexity,
        dynamically_convex: monotone,
        volume: volume_samples(samples)?,
        tolerances: tol,
        fprime_range: range(&fp),
        fsecond_range: range(&fs),
        slope_witnesses,
        curvature_witnesses,
        near_flat,
    })
}

pub fn classify(profile: &ToricProfile, tol: ToricTolerances) -> Result<ClassificationReport> {
    classify_samples(&profile.samples, tol)
}
