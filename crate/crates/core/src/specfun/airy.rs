//! Airy function Ai and its derivative on the real line.
//!
//! Three regions:
//!
//! * `|x| <= 1`: Maclaurin series (a single Taylor step from the origin).
//! * `-9 < x < -1`: Taylor steps of the Airy equation walked out from the
//!   origin. Both solutions oscillate there, so the walk is neutrally stable.
//! * `1 < x < 8.5`: Taylor steps walked *backwards* from `x = 8.5`, where the
//!   asymptotic series is accurate. Ai is the dominant solution in that
//!   direction, so any Bi contamination decays.
//! * `|x| >= 9` (negative) / `x >= 8.5` (positive): the Poincaré asymptotic
//!   expansions, truncated at the smallest term.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Ai(0) = 3^{-2/3} / Γ(2/3)
pub const AI0: f64 = 0.355_028_053_887_817_24;
/// Ai'(0) = -3^{-1/3} / Γ(1/3)
pub const AIP0: f64 = -0.258_819_403_792_806_8;

pub const AIRY_MIN: f64 = -20.0;
pub const AIRY_MAX: f64 = 200.0;

const POS_ASYMPTOTIC: f64 = 8.5;
const NEG_ASYMPTOTIC: f64 = -9.0;
const MAX_STEP: f64 = 0.5;

/// Ai(x) for `x` in `[-20, 200]`.
pub fn airy_ai(x: f64) -> Result<f64> {
    airy_pair(x).map(|(ai, _)| ai)
}

/// Ai'(x) for `x` in `[-20, 200]`.
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    airy_pair(x).map(|(_, aip)| aip)
}

/// `(Ai(x), Ai'(x))` in one evaluation.
pub fn airy_pair(x: f64) -> Result<(f64, f64)> {
    if !(AIRY_MIN..=AIRY_MAX).contains(&x) {
        return Err(Error::Domain {
            func: "airy_ai",
            arg: x,
            domain: "[-20, 200]",
        });
    }
    Ok(if x >= POS_ASYMPTOTIC {
        asymptotic_positive(x)
    } else if x <= NEG_ASYMPTOTIC {
        asymptotic_negative(-x)
    } else if x.abs() <= 1.0 {
        taylor_step(0.0, AI0, AIP0, x)
    } else if x < 0.0 {
        walk(0.0, AI0, AIP0, x)
    } else {
        let (ai, aip) = asymptotic_positive(POS_ASYMPTOTIC);
        walk(POS_ASYMPTOTIC, ai, aip, x)
    })
}

fn walk(from: f64, mut y: f64, mut dy: f64, to: f64) -> (f64, f64) {
    let steps = ((to - from).abs() / MAX_STEP).ceil().max(1.0) as usize;
    let h = (to - from) / steps as f64;
    let mut x0 = from;
    for i in 0..steps {
        let x1 = if i + 1 == steps { to } else { from + h * (i + 1) as f64 };
        (y, dy) = taylor_step(x0, y, dy, x1 - x0);
        x0 = x1;
    }
    (y, dy)
}

/// Advance a solution of `y'' = x y` from `x0` by `h` using its Taylor series.
///
/// With `y(x0 + s) = Σ a_k s^k`, the equation gives
/// `(k+2)(k+1) a_{k+2} = x0 a_k + a_{k-1}`.
fn taylor_step(x0: f64, y0: f64, dy0: f64, h: f64) -> (f64, f64) {
    if h == 0.0 {
        return (y0, dy0);
    }
    // coefficients scaled by h^k: c_k = a_k h^k
    let h2 = h * h;
    let h3 = h2 * h;
    let mut c_prev2 = 0.0; // c_{k-1}
    let mut c_prev1 = y0; // c_k
    let mut c_cur = dy0 * h; // c_{k+1}
    let mut value = y0 + c_cur;
    let mut deriv = dy0; // Σ k c_k / h
    let mut k = 0usize;
    loop {
        // c_{k+2} from c_k and c_{k-1}
        let kf = k as f64;
        let next = (x0 * h2 * c_prev1 + h3 * c_prev2) / ((kf + 2.0) * (kf + 1.0));
        value += next;
        deriv += (kf + 2.0) * next / h;
        c_prev2 = c_prev1;
        c_prev1 = c_cur;
        c_cur = next;
        k += 1;
        let scale = value.abs().max(deriv.abs() * h.abs()).max(f64::MIN_POSITIVE);
        if k > 4 && c_cur.abs() + c_prev1.abs() <= 1e-18 * scale {
            break;
        }
        if k > 200 {
            break;
        }
    }
    (value, deriv)
}

/// Coefficients u_k and v_k of the large-argument expansions.
fn uv(k: usize) -> (f64, f64) {
    let mut u = 1.0;
    for j in 1..=k {
        let jf = j as f64;
        u *= (6.0 * jf - 5.0) * (6.0 * jf - 3.0) * (6.0 * jf - 1.0) / ((2.0 * jf - 1.0) * 216.0 * jf);
    }
    let kf = k as f64;
    let v = if k == 0 {
        1.0
    } else {
        -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u
    };
    (u, v)
}

const MAX_TERMS: usize = 40;

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let mut su = 0.0;
    let mut sv = 0.0;
    let mut last = f64::INFINITY;
    let mut zpow = 1.0;
    let mut sign = 1.0;
    for k in 0..MAX_TERMS {
        let (u, v) = uv(k);
        let tu = sign * u * zpow;
        let tv = sign * v * zpow;
        let size = tu.abs().max(tv.abs());
        if size > last {
            break;
        }
        su += tu;
        sv += tv;
        if size < 1e-17 {
            break;
        }
        last = size;
        zpow /= zeta;
        sign = -sign;
    }
    let quarter = x.sqrt().sqrt();
    let log_pref = -zeta - (2.0 * PI.sqrt()).ln();
    let e = log_pref.exp();
    (e / quarter * su, -e * quarter * sv)
}

fn asymptotic_negative(x: f64) -> (f64, f64) {
    // x > 0 here; returns (Ai(-x), Ai'(-x))
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (mut su_even, mut su_odd, mut sv_even, mut sv_odd) = (0.0, 0.0, 0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut zpow = 1.0;
    for k in 0..MAX_TERMS {
        let (u, v) = uv(k);
        let tu = u * zpow;
        let tv = v * zpow;
        let size = tu.abs().max(tv.abs());
        if size > last {
            break;
        }
        // (-1)^{k/2} for the even and odd subsequences
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            su_even += sign * tu;
            sv_even += sign * tv;
        } else {
            su_odd += sign * tu;
            sv_odd += sign * tv;
        }
        if size < 1e-17 {
            break;
        }
        last = size;
        zpow /= zeta;
    }
    let phase = zeta - FRAC_PI_4;
    let (s, c) = phase.sin_cos();
    let quarter = x.sqrt().sqrt();
    let rpi = 1.0 / PI.sqrt();
    let ai = rpi / quarter * (c * su_even + s * su_odd);
    let aip = rpi * quarter * (s * sv_even - c * sv_odd);
    (ai, aip)
}
