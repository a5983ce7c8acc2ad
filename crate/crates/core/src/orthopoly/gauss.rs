use super::family::WeightFamily;
use super::phi::{ln_christoffel_sum, newton_ratio};
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 2000;

/// Gauss rule for a classical weight: `Σ w_k f(x_k) ≈ ∫ f(x) w(x) dx`.
///
/// Weights are kept in log form as well because the Laguerre and Hermite
/// weights of large rules fall below the smallest `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub log_weights: Vec<f64>,
    pub family: WeightFamily,
    pub order: usize,
}

/// Rule for plain integrals `∫ f(x) dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlainRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl PlainRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn try_integrate(&self, mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
        let mut s = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(x)?;
        }
        Ok(s)
    }
}

impl QuadratureRule {
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// `λ_k / w(x_k)`, the weights of the same nodes for `∫ f(x) dx`.
    pub fn reduced_weights(&self) -> Vec<f64> {
        self.nodes
            .iter()
            .zip(&self.log_weights)
            .map(|(&x, &lw)| (lw - self.family.log_weight(x)).exp())
            .collect()
    }

    pub fn plain(&self) -> PlainRule {
        PlainRule {
            nodes: self.nodes.clone(),
            weights: self.reduced_weights(),
        }
    }

    /// Affine image of a Legendre rule on `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> Result<PlainRule> {
        if self.family != WeightFamily::Legendre {
            return Err(Error::Unsupported("on_interval needs a Legendre rule"));
        }
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(Error::InvalidParameter(format!("bad interval [{a}, {b}]")));
        }
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Ok(PlainRule {
            nodes: self.nodes.iter().map(|u| mid + half * u).collect(),
            weights: self.weights.iter().map(|w| half * w).collect(),
        })
    }
}

/// `m`-point Gauss rule: eigenvalues of the Jacobi matrix, one Newton
/// polish on `p_m`, and Christoffel numbers `1 / Σ_{j<m} p_j(x_k)²`.
pub fn gauss_rule(family: &WeightFamily, m: usize) -> Result<QuadratureRule> {
    family.validate()?;
    if m == 0 || m > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "quadrature order must be in 1..={MAX_ORDER}, got {m}"
        )));
    }
    let mut diag = Vec::with_capacity(m);
    let mut off = Vec::with_capacity(m.saturating_sub(1));
    for j in 0..m {
        let (a, _) = family.recurrence_coeffs(j);
        diag.push(a);
        if j + 1 < m {
            off.push(family.recurrence_coeffs(j + 1).1);
        }
    }
    let mut nodes = tridiagonal_eigenvalues(diag, off)?;

    for k in 0..m {
        let x = nodes[k];
        let dx = newton_ratio(family, m, x);
        let gap = gap_at(&nodes, k);
        if dx.is_finite() && dx.abs() < 0.1 * gap {
            nodes[k] = x - dx;
        }
    }
    if matches!(family, WeightFamily::Hermite | WeightFamily::Legendre) {
        for k in 0..m / 2 {
            let v = 0.5 * (nodes[m - 1 - k] - nodes[k]);
            nodes[k] = -v;
            nodes[m - 1 - k] = v;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
    }
    let (lo, hi) = family.support();
    if nodes.windows(2).any(|w| w[0] >= w[1]) || nodes.iter().any(|&x| x <= lo || x >= hi) {
        return Err(Error::EigenFailure(
            "Gauss nodes not strictly ordered inside the support",
        ));
    }

    let log_weights: Vec<f64> = nodes.iter().map(|&x| -ln_christoffel_sum(family, m, x)).collect();
    let weights = log_weights.iter().map(|l| l.exp()).collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        log_weights,
        family: *family,
        order: m,
    })
}

/// `m`-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_legendre(a: f64, b: f64, m: usize) -> Result<PlainRule> {
    gauss_rule(&WeightFamily::Legendre, m)?.on_interval(a, b)
}

fn gap_at(nodes: &[f64], k: usize) -> f64 {
    let left = if k > 0 { nodes[k] - nodes[k - 1] } else { f64::INFINITY };
    let right = if k + 1 < nodes.len() {
        nodes[k + 1] - nodes[k]
    } else {
        f64::INFINITY
    };
    let g = left.min(right);
    if g.is_finite() {
        g
    } else {
        1.0 + nodes[k].abs()
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson shifts, ascending.
pub(crate) fn tridiagonal_eigenvalues(mut d: Vec<f64>, off: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..off.len()].copy_from_slice(&off);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenFailure("tridiagonal QL did not converge"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    if d.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigenFailure("non-finite eigenvalue"));
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}
