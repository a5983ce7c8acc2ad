//! Bessel functions of the first kind J_ν(x) for real order ν ≥ 0 and x ≥ 0.
//!
//! Evaluation picks the first method that is accurate at `(ν, x)`:
//!
//! 1. the ascending series, when its cancellation ratio `Σ|term| / |Σ term|`
//!    stays below [`CANCELLATION_LIMIT`];
//! 2. Hankel's large-argument expansion, when its terms fall below machine
//!    precision before they start to grow (again with bounded cancellation);
//! 3. Miller's backward recurrence on the orders `μ + k` (μ the fractional part
//!    of ν), normalized with the Neumann sum
//!    `(x/2)^μ / Γ(μ+1) = Σ_j (μ+2j) Γ(μ+j) / (j! Γ(μ+1)) J_{μ+2j}(x)`.
//!
//! All three produce the pair `(J_ν, J_{ν+1})` so the derivative follows from
//! `J'_ν = (ν/x) J_ν − J_{ν+1}`.

use std::f64::consts::PI;

use super::gamma::log_gamma;
use crate::error::{Error, Result};

pub const MAX_ORDER: f64 = 50.0;
pub const MAX_ARG: f64 = 1e4;

const CANCELLATION_LIMIT: f64 = 1e3;
const SERIES_MAX_ARG: f64 = 30.0;
const HANKEL_MIN_ARG: f64 = 20.0;

/// J_ν(x) for `0 ≤ ν ≤ 50`, `0 ≤ x ≤ 1e4`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    Ok(pair(nu, x).0)
}

/// J'_ν(x) for `0 ≤ ν ≤ 50`, `0 ≤ x ≤ 1e4`.
///
/// At `x = 0` the derivative is finite except for `0 < ν < 1`, which is
/// reported as a domain error.
pub fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    if x == 0.0 {
        return if nu == 1.0 {
            Ok(0.5)
        } else if nu == 0.0 || nu > 1.0 {
            Ok(0.0)
        } else {
            Err(Error::Domain {
                func: "bessel_j_prime",
                arg: x,
                domain: "x > 0 when 0 < nu < 1",
            })
        };
    }
    let (j, j1) = pair(nu, x);
    Ok(nu / x * j - j1)
}

/// `(J_ν(x), J'_ν(x))` with the same domain as [`bessel_j_prime`].
pub fn bessel_j_and_prime(nu: f64, x: f64) -> Result<(f64, f64)> {
    check(nu, x)?;
    if x == 0.0 {
        return Ok((pair(nu, x).0, bessel_j_prime(nu, x)?));
    }
    let (j, j1) = pair(nu, x);
    Ok((j, nu / x * j - j1))
}

fn check(nu: f64, x: f64) -> Result<()> {
    if !(0.0..=MAX_ORDER).contains(&nu) {
        return Err(Error::Domain {
            func: "bessel_j",
            arg: nu,
            domain: "order in [0, 50]",
        });
    }
    if !(0.0..=MAX_ARG).contains(&x) {
        return Err(Error::Domain {
            func: "bessel_j",
            arg: x,
            domain: "argument in [0, 1e4]",
        });
    }
    Ok(())
}

/// `(J_ν(x), J_{ν+1}(x))`; arguments already validated.
pub(crate) fn pair(nu: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (if nu == 0.0 { 1.0 } else { 0.0 }, 0.0);
    }
    if x <= SERIES_MAX_ARG {
        if let (Some(a), Some(b)) = (series(nu, x), series(nu + 1.0, x)) {
            return (a, b);
        }
    }
    if x >= HANKEL_MIN_ARG {
        if let (Some(a), Some(b)) = (hankel(nu, x), hankel(nu + 1.0, x)) {
            return (a, b);
        }
    }
    miller(nu, x)
}

fn series(nu: f64, x: f64) -> Option<f64> {
    let half = 0.5 * x;
    let lead = (nu * half.ln() - log_gamma(nu + 1.0).ok()?).exp();
    if lead == 0.0 {
        return Some(0.0);
    }
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut abs_sum = 1.0;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        abs_sum += term.abs();
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    if abs_sum > CANCELLATION_LIMIT * sum.abs() {
        return None;
    }
    Some(lead * sum)
}

fn hankel(nu: f64, x: f64) -> Option<f64> {
    let mu4 = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut max_term = 1.0f64;
    let mut last = f64::INFINITY;
    let mut converged = false;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu4 - odd * odd) / (kf * 8.0 * x);
        if term == 0.0 {
            converged = true;
            break;
        }
        let mag = term.abs();
        if mag > last && kf > nu + 1.0 {
            // past the initial growth the series has started to diverge
            break;
        }
        // a_k / x^k enters P (k even) or Q (k odd) with sign (-1)^{floor(k/2)}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        max_term = max_term.max(mag);
        if mag < 1e-17 * (p.abs() + q.abs()) {
            converged = true;
            break;
        }
        last = mag;
    }
    if !converged || max_term > CANCELLATION_LIMIT * (p.abs() + q.abs()) {
        return None;
    }
    // cos(x - φ) and sin(x - φ) with φ = (ν/2 + 1/4) π, expanded so x is never rounded
    let phi = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    Some((2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi))
}

fn miller(nu: f64, x: f64) -> (f64, f64) {
    let n = nu.floor() as usize;
    let mu = nu - n as f64;
    let top = (n as f64 + 1.0).max(x);
    let start = (top + 12.0 * top.cbrt() + 30.0).ceil() as usize;

    let mut f = vec![0.0f64; start + 2];
    f[start] = 1e-300;
    for k in (1..=start).rev() {
        let order = mu + k as f64;
        let v = 2.0 * order / x * f[k] - f[k + 1];
        f[k - 1] = v;
        if v.abs() > 1e250 {
            for entry in &mut f[k - 1..] {
                *entry *= 1e-250;
            }
        }
    }

    // Neumann normalization: e_0 = 1, e_j = (μ + 2j) Γ(μ+j) / (j! Γ(μ+1))
    let mut sum = f[0];
    let mut g = 1.0;
    let mut j = 1;
    while 2 * j <= start {
        if j > 1 {
            g *= (mu + j as f64 - 1.0) / j as f64;
        }
        sum += (mu + 2.0 * j as f64) * g * f[2 * j];
        j += 1;
    }
    let target = if mu == 0.0 {
        1.0
    } else {
        (mu * (0.5 * x).ln() - log_gamma(mu + 1.0).unwrap_or(0.0)).exp()
    };
    let scale = target / sum;
    (scale * f[n], scale * f[n + 1])
}
