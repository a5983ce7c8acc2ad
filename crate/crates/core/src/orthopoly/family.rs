use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::log_gamma;

/// Classical weight functions.
///
/// Jacobi lives on `(0, 1)` with `w(x) = x^α (1−x)^β`; Legendre is the
/// unit weight on `(−1, 1)` and is mapped to other intervals by
/// [`QuadratureRule::on_interval`](super::QuadratureRule::on_interval).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFamily {
    /// `e^{−x²}` on the real line.
    Hermite,
    /// `x^α e^{−x}` on `(0, ∞)`.
    Laguerre { alpha: f64 },
    /// `x^α (1−x)^β` on `(0, 1)`.
    Jacobi { alpha: f64, beta: f64 },
    /// `1` on `(−1, 1)`.
    Legendre,
}

impl WeightFamily {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Hermite => "Hermite",
            Self::Laguerre { .. } => "Laguerre",
            Self::Jacobi { .. } => "Jacobi",
            Self::Legendre => "Legendre",
        }
    }

    /// Check `α, β ≥ 0` (and finite).
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        match *self {
            Self::Laguerre { alpha } if !ok(alpha) => Err(Error::InvalidParameter(format!(
                "Laguerre alpha must be finite and >= 0, got {alpha}"
            ))),
            Self::Jacobi { alpha, beta } if !ok(alpha) || !ok(beta) => Err(Error::InvalidParameter(format!(
                "Jacobi alpha, beta must be finite and >= 0, got ({alpha}, {beta})"
            ))),
            _ => Ok(()),
        }
    }

    /// Endpoints of the support interval.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Self::Hermite => (f64::NEG_INFINITY, f64::INFINITY),
            Self::Laguerre { .. } => (0.0, f64::INFINITY),
            Self::Jacobi { .. } => (0.0, 1.0),
            Self::Legendre => (-1.0, 1.0),
        }
    }

    /// Closed support check; endpoints count as inside.
    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.support();
        x >= lo && x <= hi
    }

    pub(crate) fn check_support(&self, what: &'static str, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            let (lo, hi) = self.support();
            Err(Error::OutOfSupport { what, value: x, lo, hi })
        }
    }

    /// `ln w(x)`; `−∞` where the weight vanishes.
    pub fn log_weight(&self, x: f64) -> f64 {
        fn xlogy(a: f64, y: f64) -> f64 {
            if a == 0.0 {
                0.0
            } else {
                a * y.ln()
            }
        }
        match *self {
            Self::Hermite => -x * x,
            Self::Laguerre { alpha } => xlogy(alpha, x) - x,
            Self::Jacobi { alpha, beta } => xlogy(alpha, x) + xlogy(beta, 1.0 - x),
            Self::Legendre => 0.0,
        }
    }

    pub fn weight(&self, x: f64) -> f64 {
        self.log_weight(x).exp()
    }

    /// `ln ∫ w`.
    pub fn log_zeroth_moment(&self) -> f64 {
        let lg = |v: f64| log_gamma(v).expect("validated parameters give positive arguments");
        match *self {
            Self::Hermite => 0.5 * PI.ln(),
            Self::Laguerre { alpha } => lg(alpha + 1.0),
            Self::Jacobi { alpha, beta } => lg(alpha + 1.0) + lg(beta + 1.0) - lg(alpha + beta + 2.0),
            Self::Legendre => 2f64.ln(),
        }
    }

    pub fn zeroth_moment(&self) -> f64 {
        self.log_zeroth_moment().exp()
    }

    /// Coefficients `(a_j, b_j)` of the orthonormal three-term recurrence
    ///
    /// `b_{j+1} p_{j+1}(x) = (x − a_j) p_j(x) − b_j p_{j−1}(x)`,
    ///
    /// with `b_0 = 0`.
    pub fn recurrence_coeffs(&self, j: usize) -> (f64, f64) {
        let jf = j as f64;
        match *self {
            Self::Hermite => (0.0, (0.5 * jf).sqrt()),
            Self::Laguerre { alpha } => (2.0 * jf + alpha + 1.0, (jf * (jf + alpha)).sqrt()),
            Self::Legendre => (0.0, if j == 0 { 0.0 } else { jf / (4.0 * jf * jf - 1.0).sqrt() }),
            Self::Jacobi { alpha, beta } => {
                // Standard Jacobi on (−1, 1) with u = 2x − 1: the factor (1−u)^a pairs
                // with (1−x)^β and (1+u)^b with x^α.
                let (a, b) = (beta, alpha);
                let s = a + b;
                let diag_u = if j == 0 {
                    (b - a) / (s + 2.0)
                } else {
                    let t = 2.0 * jf + s;
                    (b * b - a * a) / (t * (t + 2.0))
                };
                let off_u = if j == 0 {
                    0.0
                } else if j == 1 {
                    let t = 2.0 + s;
                    (4.0 * (1.0 + a) * (1.0 + b) / (t * t * (t + 1.0))).sqrt()
                } else {
                    let t = 2.0 * jf + s;
                    (4.0 * jf * (jf + a) * (jf + b) * (jf + s) / (t * t * (t + 1.0) * (t - 1.0))).sqrt()
                };
                (0.5 * (1.0 + diag_u), 0.5 * off_u)
            }
        }
    }
}

/// Free-function form of [`WeightFamily::recurrence_coeffs`].
pub fn recurrence_coeffs(family: &WeightFamily, j: usize) -> Result<(f64, f64)> {
    family.validate()?;
    Ok(family.recurrence_coeffs(j))
}
