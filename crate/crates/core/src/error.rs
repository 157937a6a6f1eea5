use thiserror::Error;

/// Failures raised anywhere in the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point ({q1}, {q2}) is within collision tolerance of a center")]
    CenterCollision { q1: f64, q2: f64 },

    #[error("parameters m1={m1}, m2={m2}, eps={eps} are outside the supported regimes: {reason}")]
    RegimeUnsupported {
        m1: f64,
        m2: f64,
        eps: f64,
        reason: &'static str,
    },

    #[error("root bracket failure on interval ({lo}, {hi})")]
    RootBracketFailure { lo: f64, hi: f64 },

    #[error("grid too coarse: component count did not stabilize up to resolution {resolution}")]
    GridTooCoarse { resolution: usize },

    #[error("state lies on a collision fiber (cosh^2 mu - cos^2 nu = {gap})")]
    CollisionFiber { gap: f64 },

    #[error("x-y chart is singular at mu={mu}, nu={nu}")]
    ChartSingular { mu: f64, nu: f64 },

    #[error("level {level} does not meet the potential well")]
    NoTurningPoint { level: f64 },

    #[error("kappa={kappa} lies outside the window [{lo}, {hi}]")]
    WindowViolation { kappa: f64, lo: f64, hi: f64 },

    #[error("level {level} is not admissible for integration: {reason}")]
    LevelInadmissible { level: f64, reason: String },

    #[error("trajectory has fewer than two section crossings")]
    NoCrossing,

    #[error("quadrature did not reach tolerance {tol} (last change {last_change})")]
    QuadratureStall { tol: f64, last_change: f64 },

    #[error("radicand of the z-form period vanishes on [0, 2] (M={m}, c={c}, kappa={kappa})")]
    RadicandNonpositive { m: f64, c: f64, kappa: f64 },

    #[error("energy c={c} must be negative")]
    EnergyNonnegative { c: f64 },

    #[error("profile has {got} samples, at least {need} required")]
    ProfileTooSparse { got: usize, need: usize },

    #[error("profile abscissa T1 is not strictly increasing at sample {index}")]
    NonMonotoneAbscissa { index: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable variant name, printed by the CLI on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::CenterCollision { .. } => "CenterCollision",
            Error::RegimeUnsupported { .. } => "RegimeUnsupported",
            Error::RootBracketFailure { .. } => "RootBracketFailure",
            Error::GridTooCoarse { .. } => "GridTooCoarse",
            Error::CollisionFiber { .. } => "CollisionFiber",
            Error::ChartSingular { .. } => "ChartSingular",
            Error::NoTurningPoint { .. } => "NoTurningPoint",
            Error::WindowViolation { .. } => "WindowViolation",
            Error::LevelInadmissible { .. } => "LevelInadmissible",
            Error::NoCrossing => "NoCrossing",
            Error::QuadratureStall { .. } => "QuadratureStall",
            Error::RadicandNonpositive { .. } => "RadicandNonpositive",
            Error::EnergyNonnegative { .. } => "EnergyNonnegative",
            Error::ProfileTooSparse { .. } => "ProfileTooSparse",
            Error::NonMonotoneAbscissa { .. } => "NonMonotoneAbscissa",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
