//! Response functions `F` shared by every model family.
//!
//! Besides the plain distribution function and density, each link exposes
//! `ln F`, `ln (1 - F)` and the log-odds `ln F - ln (1 - F)`. Those stay
//! finite and strictly monotone far into the tails where `F` itself rounds
//! to 0 or 1, which is what the ordinality checks rely on.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::numeric::{expit, ln_1m_exp, softplus};

/// Smallest value `cdf` reports.
pub const CDF_FLOOR: f64 = 1e-300;
/// Largest value `cdf` reports (the largest double below one).
pub const CDF_CEIL: f64 = 1.0 - f64::EPSILON / 2.0;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const NORMAL_ASYMPTOTIC_CUTOFF: f64 = -37.0;

/// A strictly increasing distribution function on the reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Link {
    Logistic,
    /// Standard normal (probit).
    Normal,
    /// `F(x) = exp(-exp(-x))`.
    GumbelMax,
    /// `F(x) = 1 - exp(-exp(x))`, the complementary log-log link.
    GumbelMin,
}

impl Link {
    pub const ALL: [Link; 4] = [Link::Logistic, Link::Normal, Link::GumbelMax, Link::GumbelMin];

    pub fn name(self) -> &'static str {
        match self {
            Link::Logistic => "logistic",
            Link::Normal => "normal",
            Link::GumbelMax => "gumbel-max",
            Link::GumbelMin => "gumbel-min",
        }
    }

    /// True when `F(-x) = 1 - F(x)`.
    pub fn is_symmetric(self) -> bool {
        matches!(self, Link::Logistic | Link::Normal)
    }

    /// Distribution function, clamped to `[CDF_FLOOR, CDF_CEIL]`.
    pub fn cdf(self, x: f64) -> Result<f64> {
        finite(x)?;
        Ok(self.cdf_raw(x).clamp(CDF_FLOOR, CDF_CEIL))
    }

    /// Density `F'(x)`.
    pub fn pdf(self, x: f64) -> Result<f64> {
        finite(x)?;
        Ok(self.density(x))
    }

    /// Unchecked distribution function (no clamping, NaN propagates).
    pub fn cdf_raw(self, x: f64) -> f64 {
        match self {
            Link::Logistic => expit(x),
            Link::Normal => 0.5 * erfc(-x * FRAC_1_SQRT_2),
            Link::GumbelMax => (-(-x).exp()).exp(),
            Link::GumbelMin => -(-x.exp()).exp_m1(),
        }
    }

    /// Unchecked density.
    pub fn density(self, x: f64) -> f64 {
        match self {
            Link::Logistic => {
                let e = (-x.abs()).exp();
                e / ((1.0 + e) * (1.0 + e))
            }
            Link::Normal => (-0.5 * x * x - LN_SQRT_2PI).exp(),
            Link::GumbelMax => (-x - (-x).exp()).exp(),
            Link::GumbelMin => (x - x.exp()).exp(),
        }
    }

    /// `ln F'(x)`, finite where the density itself underflows.
    pub fn ln_density(self, x: f64) -> f64 {
        match self {
            Link::Logistic => -x.abs() - 2.0 * (-x.abs()).exp().ln_1p(),
            Link::Normal => -0.5 * x * x - LN_SQRT_2PI,
            Link::GumbelMax => -x - (-x).exp(),
            Link::GumbelMin => x - x.exp(),
        }
    }

    /// `ln F(x)`, accurate in both tails.
    pub fn ln_cdf(self, x: f64) -> f64 {
        match self {
            Link::Logistic => -softplus(-x),
            Link::Normal => normal_ln_cdf(x),
            Link::GumbelMax => -(-x).exp(),
            Link::GumbelMin => ln_1m_exp(-x.exp()),
        }
    }

    /// `ln (1 - F(x))`, accurate in both tails.
    pub fn ln_sf(self, x: f64) -> f64 {
        match self {
            Link::Logistic => -softplus(x),
            Link::Normal => normal_ln_cdf(-x),
            Link::GumbelMax => ln_1m_exp(-(-x).exp()),
            Link::GumbelMin => -x.exp(),
        }
    }

    /// `ln F(x) - ln (1 - F(x))`; the identity for the logistic link.
    pub fn log_odds(self, x: f64) -> f64 {
        match self {
            Link::Logistic => x,
            _ => self.ln_cdf(x) - self.ln_sf(x),
        }
    }
}

fn normal_ln_cdf(x: f64) -> f64 {
    if x > 0.0 {
        (-0.5 * erfc(x * FRAC_1_SQRT_2)).ln_1p()
    } else if x > NORMAL_ASYMPTOTIC_CUTOFF {
        (0.5 * erfc(-x * FRAC_1_SQRT_2)).ln()
    } else {
        // Mills ratio expansion; erfc underflows past the cutoff.
        let z2 = 1.0 / (x * x);
        let series = 1.0 - z2 * (1.0 - 3.0 * z2 * (1.0 - 5.0 * z2 * (1.0 - 7.0 * z2)));
        -0.5 * x * x - (-x).ln() - LN_SQRT_2PI + series.ln()
    }
}

fn finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(x))
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Link {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "logistic" => Ok(Link::Logistic),
            "normal" => Ok(Link::Normal),
            "gumbel-max" => Ok(Link::GumbelMax),
            "gumbel-min" => Ok(Link::GumbelMin),
            other => Err(Error::UnknownLink(other.to_string())),
        }
    }
}
