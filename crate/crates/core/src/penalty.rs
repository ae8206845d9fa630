//! Sparsity-promoting penalty functions.
//!
//! Each penalty is a symmetric, concave-on-the-positive-axis function
//! `value(x)` with unit slope at the origin, together with a companion
//! `mm_denominator(x)` used by the solver's quadratic surrogate: the
//! surrogate of the penalty at expansion point `v` is
//! `(u^2 - v^2) / (2 * mm_denominator(v)) + value(v)`, which touches the
//! penalty at `u = v` and lies above it everywhere else.
//!
//! The non-convexity parameter `a` bounds the curvature of the penalty
//! (`value'' >= -a` away from zero). [`max_nonconvexity`] returns the
//! largest `a` for which a group-shrinkage objective with `active_count`
//! unit weights per group stays strictly convex.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The four built-in penalty shapes, ordered from weakest to strongest
/// sparsity induction at equal `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PenaltyFamily {
    /// Absolute value; the convex limit of the other three.
    Abs,
    Log,
    Rat,
    Atan,
}

impl PenaltyFamily {
    pub const ALL: [PenaltyFamily; 4] = [
        PenaltyFamily::Abs,
        PenaltyFamily::Log,
        PenaltyFamily::Rat,
        PenaltyFamily::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PenaltyFamily::Abs => "abs",
            PenaltyFamily::Log => "log",
            PenaltyFamily::Rat => "rat",
            PenaltyFamily::Atan => "atan",
        }
    }
}

impl fmt::Display for PenaltyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PenaltyFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abs" => Ok(PenaltyFamily::Abs),
            "log" => Ok(PenaltyFamily::Log),
            "rat" => Ok(PenaltyFamily::Rat),
            "atan" => Ok(PenaltyFamily::Atan),
            other => Err(Error::InvalidParameter(format!(
                "unknown penalty family `{other}` (expected abs, log, rat, or atan)"
            ))),
        }
    }
}

/// A penalty family paired with its non-convexity parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Penalty {
    family: PenaltyFamily,
    a: f64,
}

impl Penalty {
    /// Builds a penalty. `a` must be finite and nonnegative; the `Abs`
    /// family ignores curvature and is normalized to `a = 0`.
    pub fn new(family: PenaltyFamily, a: f64) -> Result<Self> {
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "non-convexity parameter must be finite and nonnegative, got {a}"
            )));
        }
        let a = if family == PenaltyFamily::Abs { 0.0 } else { a };
        Ok(Penalty { family, a })
    }

    pub fn abs() -> Self {
        Penalty {
            family: PenaltyFamily::Abs,
            a: 0.0,
        }
    }

    pub fn log(a: f64) -> Result<Self> {
        Penalty::new(PenaltyFamily::Log, a)
    }

    pub fn rat(a: f64) -> Result<Self> {
        Penalty::new(PenaltyFamily::Rat, a)
    }

    pub fn atan(a: f64) -> Result<Self> {
        Penalty::new(PenaltyFamily::Atan, a)
    }

    pub fn family(&self) -> PenaltyFamily {
        self.family
    }

    pub fn nonconvexity(&self) -> f64 {
        self.a
    }

    /// Penalty value at `x`. Total on the reals; symmetric; zero at zero.
    /// With `a = 0` every family reduces to `|x|`.
    pub fn value(&self, x: f64) -> f64 {
        let xa = x.abs();
        let a = self.a;
        if a == 0.0 {
            return xa;
        }
        match self.family {
            PenaltyFamily::Abs => xa,
            PenaltyFamily::Log => (1.0 + a * xa).ln() / a,
            PenaltyFamily::Rat => xa / (1.0 + a * xa / 2.0),
            PenaltyFamily::Atan => {
                let s3 = 3.0_f64.sqrt();
                // pi/6 written as atan(1/sqrt(3)) so the difference is
                // exactly zero at the origin instead of a ~1e-16 residue
                2.0 / (a * s3) * (((1.0 + 2.0 * a * xa) / s3).atan() - (1.0 / s3).atan())
            }
        }
    }

    /// Denominator of the quadratic surrogate weight at expansion point
    /// `x`; equals `|x| / value'(|x|)` and is zero at zero. The solver
    /// never divides by this at a zero point: its support set keeps every
    /// updated sample strictly away from zero.
    pub fn mm_denominator(&self, x: f64) -> f64 {
        let xa = x.abs();
        let a = self.a;
        match self.family {
            PenaltyFamily::Abs => xa,
            PenaltyFamily::Log => xa * (1.0 + a * xa),
            PenaltyFamily::Rat => {
                let half = 1.0 + a * xa / 2.0;
                xa * half * half
            }
            PenaltyFamily::Atan => xa * (1.0 + a * xa + a * a * xa * xa),
        }
    }
}

/// Largest non-convexity parameter that keeps the group-shrinkage
/// objective strictly convex: `safety / (active_count * lambda)`.
///
/// `safety` in (0, 1]; values below 1 keep a strict margin from the
/// convexity boundary. The default used elsewhere in this crate is 0.99;
/// 1.0 sits exactly on the boundary.
pub fn max_nonconvexity(active_count: usize, lambda: f64, safety: f64) -> Result<f64> {
    if active_count == 0 {
        return Err(Error::InvalidParameter(
            "active count must be at least 1".into(),
        ));
    }
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda must be finite and positive, got {lambda}"
        )));
    }
    if !safety.is_finite() || safety <= 0.0 || safety > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "safety factor must lie in (0, 1], got {safety}"
        )));
    }
    Ok(safety / (active_count as f64 * lambda))
}

/// Default safety margin applied when deriving `a` from the convexity bound.
pub const DEFAULT_SAFETY: f64 = 0.99;
