use crate::ensemble::{scaling_data, scaling_map, EnsembleSpec, ScalingMap, Zoom};
use crate::error::{Error, Result};
use crate::orthopoly::{gauss_rule, phi_into, WeightFamily};

use super::Kernel;

/// `K_n(x, y) = Σ_{j<n} φ_j(x) φ_j(y)`, optionally seen through a scaling
/// map as `K̃_n(ξ, η) = |σ| K_n(σξ + μ, ση + μ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteKernel {
    spec: EnsembleSpec,
    family: WeightFamily,
    map: Option<ScalingMap>,
}

impl FiniteKernel {
    pub fn new(spec: EnsembleSpec) -> Result<Self> {
        spec.validate()?;
        Ok(FiniteKernel {
            spec,
            family: spec.family(),
            map: None,
        })
    }

    pub fn with_map(spec: EnsembleSpec, map: ScalingMap) -> Result<Self> {
        if map.n != spec.n {
            return Err(Error::InvalidParameter(format!(
                "scaling map built for n = {} used with n = {}",
                map.n, spec.n
            )));
        }
        if !(map.sigma.is_finite() && map.sigma != 0.0 && map.mu.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "degenerate scaling map sigma = {}",
                map.sigma
            )));
        }
        let mut k = Self::new(spec)?;
        k.map = Some(map);
        Ok(k)
    }

    /// Kernel zoomed at `zoom`.
    pub fn scaled(spec: EnsembleSpec, zoom: Zoom) -> Result<Self> {
        let map = scaling_map(&spec, zoom)?;
        Self::with_map(spec, map)
    }

    pub fn spec(&self) -> &EnsembleSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn map(&self) -> Option<&ScalingMap> {
        self.map.as_ref()
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }

    fn phis(&self, what: &'static str, x: f64, out: &mut Vec<f64>) -> Result<()> {
        if !x.is_finite() {
            let (lo, hi) = self.family.support();
            return Err(Error::OutOfSupport { what, value: x, lo, hi });
        }
        self.family.check_support(what, x)?;
        out.clear();
        phi_into(&self.family, x, out, self.spec.n);
        Ok(())
    }

    /// Unscaled `K_n(x, y)`.
    pub fn finite_eval(&self, x: f64, y: f64) -> Result<f64> {
        let mut px = Vec::with_capacity(self.spec.n);
        self.phis("x", x, &mut px)?;
        if x == y {
            return Ok(px.iter().map(|v| v * v).sum());
        }
        let mut py = Vec::with_capacity(self.spec.n);
        self.phis("y", y, &mut py)?;
        Ok(dot(&px, &py))
    }

    /// `K̃_n(ξ, η)`; without a map this is `K_n`.
    pub fn scaled_eval(&self, xi: f64, eta: f64) -> Result<f64> {
        let Some(map) = self.map else {
            return self.finite_eval(xi, eta);
        };
        let (x, y) = (map.apply(xi), map.apply(eta));
        let mut px = Vec::with_capacity(self.spec.n);
        self.phis("sigma*xi + mu", x, &mut px)?;
        let k = if xi == eta {
            px.iter().map(|v| v * v).sum()
        } else {
            let mut py = Vec::with_capacity(self.spec.n);
            self.phis("sigma*eta + mu", y, &mut py)?;
            dot(&px, &py)
        };
        Ok(map.sigma.abs() * k)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

impl Kernel for FiniteKernel {
    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.scaled_eval(x, y)
    }

    /// One `φ` sweep per node, then `m²/2` dot products.
    fn matrix(&self, nodes: &[f64]) -> Result<Vec<f64>> {
        let m = nodes.len();
        let (sigma, mu) = self.map.map_or((1.0, 0.0), |p| (p.sigma, p.mu));
        let mut rows = Vec::with_capacity(m);
        for &xi in nodes {
            let mut r = Vec::with_capacity(self.spec.n);
            self.phis("sigma*xi + mu", sigma * xi + mu, &mut r)?;
            rows.push(r);
        }
        let mut out = vec![0.0; m * m];
        for i in 0..m {
            for j in i..m {
                let v = sigma.abs() * dot(&rows[i], &rows[j]);
                out[i * m + j] = v;
                out[j * m + i] = v;
            }
        }
        Ok(out)
    }
}

/// `tr K_n = Σ_k λ_k/w(x_k) · K_n(x_k, x_k)` on the `n`-point Gauss rule of
/// the weight; exact because `φ_j² / w` has degree `2n − 2`.
pub fn finite_trace(spec: &EnsembleSpec) -> Result<f64> {
    let k = FiniteKernel::new(*spec)?;
    let rule = gauss_rule(k.family(), spec.n)?;
    let reduced = rule.reduced_weights();
    let mut sum = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&reduced) {
        sum += w * k.finite_eval(x, x)?;
    }
    Ok(sum)
}

/// `ρ̃_n(t) = n^{κ−1} K_n(n^κ t, n^κ t)`.
pub fn density(kernel: &FiniteKernel, t: f64) -> Result<f64> {
    let d = scaling_data(kernel.spec())?;
    let n = kernel.n() as f64;
    let x = n.powf(d.kappa) * t;
    Ok(n.powf(d.kappa - 1.0) * kernel.finite_eval(x, x)?)
}

/// `∫ ρ̃_n(t) dt = tr K_n / n`.
pub fn density_mass(spec: &EnsembleSpec) -> Result<f64> {
    Ok(finite_trace(spec)? / spec.n as f64)
}
