//! Problem parameters and configuration-plane points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Center `e`, carrying mass `m1`.
pub const CENTER_E: PlanePoint = PlanePoint { q1: -0.5, q2: 0.0 };
/// Center `m`, carrying mass `m2`.
pub const CENTER_M: PlanePoint = PlanePoint { q1: 0.5, q2: 0.0 };

/// Masses of the two fixed centers and the elastic coefficient.
///
/// The combinations `M1 = m1 + m2` and `M2 = m1 - m2` are always recomputed
/// from the masses, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassParams {
    pub m1: f64,
    pub m2: f64,
    pub eps: f64,
}

/// Which of the supported parameter families a [`MassParams`] falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `m1, m2, eps > 0`.
    Lagrange,
    /// `m1, eps > 0`, `m2 = 0`.
    LagrangeSingleMass,
    /// `eps = 0`, `m1 > 0`, `|m2| <= m1`.
    Euler,
}

impl MassParams {
    pub fn new(m1: f64, m2: f64, eps: f64) -> Result<Self> {
        let p = MassParams { m1, m2, eps };
        p.validate()?;
        Ok(p)
    }

    pub fn euler(m1: f64, m2: f64) -> Result<Self> {
        Self::new(m1, m2, 0.0)
    }

    fn validate(&self) -> Result<()> {
        if !(self.m1.is_finite() && self.m2.is_finite() && self.eps.is_finite()) {
            return Err(self.unsupported("non-finite parameter"));
        }
        if self.m1 <= 0.0 {
            return Err(self.unsupported("m1 must be positive"));
        }
        if self.eps < 0.0 {
            return Err(self.unsupported("eps must be non-negative"));
        }
        Ok(())
    }

    pub fn unsupported(&self, reason: &'static str) -> Error {
        Error::RegimeUnsupported {
            m1: self.m1,
            m2: self.m2,
            eps: self.eps,
            reason,
        }
    }

    /// `M1 = m1 + m2`.
    #[inline]
    pub fn total(&self) -> f64 {
        self.m1 + self.m2
    }

    /// `M2 = m1 - m2`.
    #[inline]
    pub fn difference(&self) -> f64 {
        self.m1 - self.m2
    }

    pub fn regime(&self) -> Result<Regime> {
        self.validate()?;
        if self.eps > 0.0 {
            if self.m2 > 0.0 {
                Ok(Regime::Lagrange)
            } else if self.m2 == 0.0 {
                Ok(Regime::LagrangeSingleMass)
            } else {
                Err(self.unsupported("negative m2 is only supported with eps = 0"))
            }
        } else if self.m2.abs() <= self.m1 {
            Ok(Regime::Euler)
        } else {
            Err(self.unsupported("Euler regime requires |m2| <= m1"))
        }
    }

    /// Mirror image under `q1 -> -q1`: the masses trade places.
    pub fn swapped(&self) -> MassParams {
        MassParams {
            m1: self.m2,
            m2: self.m1,
            eps: self.eps,
        }
    }

    /// Threshold `c_crit = -eps/8 - M1` of the torus condition.
    pub fn c_crit(&self) -> f64 {
        -self.eps / 8.0 - self.total()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub q1: f64,
    pub q2: f64,
}

impl PlanePoint {
    pub const fn new(q1: f64, q2: f64) -> Self {
        PlanePoint { q1, q2 }
    }

    pub fn norm(&self) -> f64 {
        self.q1.hypot(self.q2)
    }

    pub fn dist(&self, other: &PlanePoint) -> f64 {
        (self.q1 - other.q1).hypot(self.q2 - other.q2)
    }

    pub fn reflect_q1(&self) -> PlanePoint {
        PlanePoint::new(-self.q1, self.q2)
    }
}

/// Bounded component of the regularized energy surface: around `e` or `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    E,
    M,
}

impl std::str::FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" | "E" => Ok(Component::E),
            "m" | "M" => Ok(Component::M),
            other => Err(Error::InvalidArgument(format!("unknown component '{other}'"))),
        }
    }
}

impl std::fmt::Display for Component {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Component::E => "e",
            Component::M => "m",
        })
    }
}
