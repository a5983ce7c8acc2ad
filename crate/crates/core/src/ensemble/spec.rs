use std::fmt;

use crate::error::{Error, Result};
use crate::orthopoly::WeightFamily;

/// The three classical unitary ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ensemble {
    /// Hermite weight.
    Gue,
    /// Laguerre weight (complex Wishart).
    Lue,
    /// Jacobi weight on `(0, 1)` (complex MANOVA).
    Jue,
}

impl Ensemble {
    pub fn name(&self) -> &'static str {
        match self {
            Ensemble::Gue => "gue",
            Ensemble::Lue => "lue",
            Ensemble::Jue => "jue",
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the weight parameters depend on `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParameterMode {
    /// Constant `α` (and `β`). The scaled limits are those of `θ = 1`
    /// (LUE) or `θ = τ = 1/2` (JUE).
    Fixed { alpha: f64, beta: f64 },
    /// LUE: `m/n → θ`, `α = round((θ−1)n)`.
    /// JUE: `m₁/(m₁+m₂) → θ`, `n/(m₁+m₂) → τ`, `α = round(θn/τ − n)`,
    /// `β = round((1−θ)n/τ − n)`.
    Ratio { theta: f64, tau: f64 },
}

/// Ensemble, size and parameter law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub ensemble: Ensemble,
    pub n: usize,
    pub mode: ParameterMode,
}

impl EnsembleSpec {
    pub fn gue(n: usize) -> Result<Self> {
        Self::new(Ensemble::Gue, n, ParameterMode::Fixed { alpha: 0.0, beta: 0.0 })
    }

    pub fn lue_fixed(n: usize, alpha: f64) -> Result<Self> {
        Self::new(Ensemble::Lue, n, ParameterMode::Fixed { alpha, beta: 0.0 })
    }

    pub fn lue_ratio(n: usize, theta: f64) -> Result<Self> {
        Self::new(Ensemble::Lue, n, ParameterMode::Ratio { theta, tau: 0.0 })
    }

    pub fn jue_fixed(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Ensemble::Jue, n, ParameterMode::Fixed { alpha, beta })
    }

    pub fn jue_ratio(n: usize, theta: f64, tau: f64) -> Result<Self> {
        Self::new(Ensemble::Jue, n, ParameterMode::Ratio { theta, tau })
    }

    pub fn new(ensemble: Ensemble, n: usize, mode: ParameterMode) -> Result<Self> {
        let spec = EnsembleSpec { ensemble, n, mode };
        spec.validate()?;
        Ok(spec)
    }

    /// Same parameter law at another size.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.ensemble, n, self.mode)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        match (self.ensemble, self.mode) {
            (Ensemble::Gue, ParameterMode::Ratio { .. }) => {
                return Err(Error::InvalidParameter("GUE has no ratio parameters".into()))
            }
            (Ensemble::Lue, ParameterMode::Ratio { theta, .. }) => {
                if !(theta.is_finite() && theta >= 1.0) {
                    return Err(Error::InvalidParameter(format!("LUE needs theta >= 1, got {theta}")));
                }
            }
            (Ensemble::Jue, ParameterMode::Ratio { theta, tau }) => {
                if !(theta > 0.0 && theta < 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "JUE needs theta in (0, 1), got {theta}"
                    )));
                }
                if !(tau > 0.0 && tau <= 0.5) {
                    return Err(Error::InvalidParameter(format!("JUE needs tau in (0, 1/2], got {tau}")));
                }
            }
            (_, ParameterMode::Fixed { alpha, beta }) => {
                if !(alpha.is_finite() && alpha >= 0.0 && beta.is_finite() && beta >= 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "weight exponents must be finite and >= 0, got ({alpha}, {beta})"
                    )));
                }
            }
        }
        let (alpha, beta) = self.weight_parameters();
        if alpha < 0.0 || beta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "derived weight exponents must be >= 0, got alpha = {alpha}, beta = {beta} at n = {}",
                self.n
            )));
        }
        Ok(())
    }

    /// `(α, β)` of the weight at this `n` (rounded in ratio mode).
    pub fn weight_parameters(&self) -> (f64, f64) {
        let n = self.n as f64;
        match (self.ensemble, self.mode) {
            (Ensemble::Gue, _) => (0.0, 0.0),
            (Ensemble::Lue, ParameterMode::Fixed { alpha, .. }) => (alpha, 0.0),
            (Ensemble::Lue, ParameterMode::Ratio { theta, .. }) => (((theta - 1.0) * n).round() + 0.0, 0.0),
            (Ensemble::Jue, ParameterMode::Fixed { alpha, beta }) => (alpha, beta),
            (Ensemble::Jue, ParameterMode::Ratio { theta, tau }) => (
                (theta * n / tau - n).round() + 0.0,
                ((1.0 - theta) * n / tau - n).round() + 0.0,
            ),
        }
    }

    /// Weight family at this `n`.
    pub fn family(&self) -> WeightFamily {
        let (alpha, beta) = self.weight_parameters();
        match self.ensemble {
            Ensemble::Gue => WeightFamily::Hermite,
            Ensemble::Lue => WeightFamily::Laguerre { alpha },
            Ensemble::Jue => WeightFamily::Jacobi { alpha, beta },
        }
    }

    /// `(θ, τ)` of the limit; fixed parameters give `θ = 1` (LUE) and
    /// `θ = τ = 1/2` (JUE). GUE returns zeros.
    pub fn limit_parameters(&self) -> (f64, f64) {
        match (self.ensemble, self.mode) {
            (Ensemble::Gue, _) => (0.0, 0.0),
            (Ensemble::Lue, ParameterMode::Fixed { .. }) => (1.0, 0.0),
            (Ensemble::Lue, ParameterMode::Ratio { theta, .. }) => (theta, 0.0),
            (Ensemble::Jue, ParameterMode::Fixed { .. }) => (0.5, 0.5),
            (Ensemble::Jue, ParameterMode::Ratio { theta, tau }) => (theta, tau),
        }
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.ensemble, self.n)?;
        match (self.ensemble, self.mode) {
            (Ensemble::Gue, _) => Ok(()),
            (Ensemble::Lue, ParameterMode::Fixed { alpha, .. }) => write!(f, " alpha={alpha}"),
            (Ensemble::Lue, ParameterMode::Ratio { theta, .. }) => write!(f, " theta={theta}"),
            (Ensemble::Jue, ParameterMode::Fixed { alpha, beta }) => write!(f, " alpha={alpha} beta={beta}"),
            (Ensemble::Jue, ParameterMode::Ratio { theta, tau }) => write!(f, " theta={theta} tau={tau}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_rounding() {
        let s = EnsembleSpec::lue_ratio(10, 2.34).unwrap();
        assert_eq!(s.weight_parameters(), (13.0, 0.0));
        // m₁ + m₂ = n/τ = 40, m₁ = 0.3·40 = 12 → α = 2, β = 18
        let j = EnsembleSpec::jue_ratio(10, 0.3, 0.25).unwrap();
        assert_eq!(j.weight_parameters(), (2.0, 18.0));
        assert_eq!(j.family(), WeightFamily::Jacobi { alpha: 2.0, beta: 18.0 });
    }

    #[test]
    fn invariants_enforced() {
        assert!(EnsembleSpec::lue_ratio(10, 0.9).is_err());
        assert!(EnsembleSpec::jue_ratio(10, 0.5, 0.6).is_err());
        assert!(EnsembleSpec::jue_ratio(10, 1.0, 0.25).is_err());
        // θ < τ makes α negative
        assert!(EnsembleSpec::jue_ratio(10, 0.2, 0.5).is_err());
        assert!(EnsembleSpec::lue_fixed(10, -1.0).is_err());
        assert!(EnsembleSpec::gue(0).is_err());
    }

    #[test]
    fn fixed_limits() {
        assert_eq!(EnsembleSpec::lue_fixed(5, 2.0).unwrap().limit_parameters(), (1.0, 0.0));
        assert_eq!(
            EnsembleSpec::jue_fixed(5, 0.0, 1.0).unwrap().limit_parameters(),
            (0.5, 0.5)
        );
    }
}
