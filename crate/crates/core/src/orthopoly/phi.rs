//! Orthonormal weighted functions `φ_j = w^{1/2} P_j` evaluated by the
//! three-term recurrence on mantissa/exponent pairs.
//!
//! At `x ≈ 4n` (Laguerre) or `x ≈ √(2n)` (Hermite) the factor `w(x)^{1/2}`
//! underflows while `φ_j(x)` itself is of moderate size; carrying a shared
//! binary exponent beside the recurrence mantissas avoids both the underflow
//! of the weight and the overflow of the polynomial.

use std::f64::consts::LN_2;

use super::family::WeightFamily;
use crate::error::{Error, Result};

const RESCALE_BITS: i32 = 300;
const BIG: f64 = 2.037_035_976_334_486e90; // 2^300
const SMALL: f64 = 4.909_093_465_297_727e-91; // 2^-300

/// `mantissa · 2^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub exponent: i32,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled {
        mantissa: 0.0,
        exponent: 0,
    };

    pub fn from_ln(ln_value: f64) -> Self {
        if ln_value == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let exponent = (ln_value / LN_2).floor() as i32;
        Scaled {
            mantissa: (ln_value - exponent as f64 * LN_2).exp(),
            exponent,
        }
    }

    pub fn value(&self) -> f64 {
        ldexp(self.mantissa, self.exponent)
    }

    /// `ln |value|`, finite even when `value()` would under- or overflow.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.exponent as f64 * LN_2
    }

    /// True when the represented number is nonzero but rounds to zero as `f64`.
    pub fn underflows(&self) -> bool {
        self.mantissa != 0.0 && self.value() == 0.0
    }
}

/// `m · 2^e` without intermediate overflow of `2^e`.
pub(crate) fn ldexp(m: f64, e: i32) -> f64 {
    if m == 0.0 || e == 0 {
        return m;
    }
    let half = e / 2;
    m * 2f64.powi(half) * 2f64.powi(e - half)
}

/// Recurrence state for `s · p_j(x)` with a common binary exponent.
pub(crate) struct Recurrence<'a> {
    family: &'a WeightFamily,
    x: f64,
    j: usize,
    prev: f64,
    cur: f64,
    exponent: i32,
}

impl<'a> Recurrence<'a> {
    /// Start at `j = 0` with value `exp(ln_start)`.
    pub(crate) fn new(family: &'a WeightFamily, x: f64, ln_start: f64) -> Self {
        let s = Scaled::from_ln(ln_start);
        Recurrence {
            family,
            x,
            j: 0,
            prev: 0.0,
            cur: s.mantissa,
            exponent: s.exponent,
        }
    }

    pub(crate) fn current(&self) -> Scaled {
        Scaled {
            mantissa: self.cur,
            exponent: self.exponent,
        }
    }

    pub(crate) fn exponent(&self) -> i32 {
        self.exponent
    }

    pub(crate) fn mantissa(&self) -> f64 {
        self.cur
    }

    /// Advance to `j + 1`; returns the exponent shift applied, if any.
    pub(crate) fn advance(&mut self) -> i32 {
        let (a, b) = self.family.recurrence_coeffs(self.j);
        let (_, b_next) = self.family.recurrence_coeffs(self.j + 1);
        let next = ((self.x - a) * self.cur - b * self.prev) / b_next;
        self.prev = self.cur;
        self.cur = next;
        self.j += 1;
        self.renormalize()
    }

    fn renormalize(&mut self) -> i32 {
        let big = self.cur.abs().max(self.prev.abs());
        if big > BIG {
            self.cur *= SMALL;
            self.prev *= SMALL;
            self.exponent += RESCALE_BITS;
            RESCALE_BITS
        } else if big < SMALL && big != 0.0 {
            self.cur *= BIG;
            self.prev *= BIG;
            self.exponent -= RESCALE_BITS;
            -RESCALE_BITS
        } else {
            0
        }
    }
}

fn ln_phi0(family: &WeightFamily, x: f64) -> f64 {
    0.5 * (family.log_weight(x) - family.log_zeroth_moment())
}

fn checked(family: &WeightFamily, x: f64) -> Result<()> {
    family.validate()?;
    if !x.is_finite() {
        return Err(Error::OutOfSupport {
            what: "x",
            value: x,
            lo: family.support().0,
            hi: family.support().1,
        });
    }
    family.check_support("x", x)
}

/// `φ_j(x)` as a mantissa/exponent pair.
pub fn phi_scaled(family: &WeightFamily, j: usize, x: f64) -> Result<Scaled> {
    checked(family, x)?;
    let mut rec = Recurrence::new(family, x, ln_phi0(family, x));
    for _ in 0..j {
        rec.advance();
    }
    Ok(rec.current())
}

/// `φ_j(x) = w(x)^{1/2} P_j(x)` with orthonormal `P_j`.
///
/// Values below the smallest subnormal come back as `0.0`; use
/// [`phi_scaled`] and [`Scaled::underflows`] to detect that case.
pub fn phi(family: &WeightFamily, j: usize, x: f64) -> Result<f64> {
    phi_scaled(family, j, x).map(|s| s.value())
}

/// `[φ_0(x), …, φ_{n−1}(x)]`.
pub fn phi_all(family: &WeightFamily, n: usize, x: f64) -> Result<Vec<f64>> {
    checked(family, x)?;
    let mut out = Vec::with_capacity(n);
    phi_into(family, x, &mut out, n);
    Ok(out)
}

/// Append `φ_0(x) … φ_{n−1}(x)` to `out`; `x` must already be validated.
pub(crate) fn phi_into(family: &WeightFamily, x: f64, out: &mut Vec<f64>, n: usize) {
    if n == 0 {
        return;
    }
    let mut rec = Recurrence::new(family, x, ln_phi0(family, x));
    out.push(rec.current().value());
    for _ in 1..n {
        rec.advance();
        out.push(rec.current().value());
    }
}

/// `ln Σ_{j<m} p_j(x)²` for the orthonormal polynomials (no weight factor).
/// The reciprocal of the sum is the Christoffel number at `x`.
pub(crate) fn ln_christoffel_sum(family: &WeightFamily, m: usize, x: f64) -> f64 {
    let mut rec = Recurrence::new(family, x, -0.5 * family.log_zeroth_moment());
    let mut acc = f64::NEG_INFINITY;
    let mut partial = 0.0f64;
    let mut exponent = rec.exponent();
    for j in 0..m {
        if j > 0 && rec.advance() != 0 {
            acc = log_add(acc, partial.ln() + 2.0 * exponent as f64 * LN_2);
            partial = 0.0;
            exponent = rec.exponent();
        }
        partial += rec.mantissa() * rec.mantissa();
    }
    log_add(acc, partial.ln() + 2.0 * exponent as f64 * LN_2)
}

/// `p_m(x) / p_m'(x)`, the Newton correction for a zero of `p_m`.
pub(crate) fn newton_ratio(family: &WeightFamily, m: usize, x: f64) -> f64 {
    let mut p_prev = 0.0;
    let mut p = 1.0;
    let mut d_prev = 0.0;
    let mut d = 0.0;
    for j in 0..m {
        let (a, b) = family.recurrence_coeffs(j);
        let (_, b_next) = family.recurrence_coeffs(j + 1);
        let p_next = ((x - a) * p - b * p_prev) / b_next;
        let d_next = ((x - a) * d + p - b * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        let big = p.abs().max(d.abs()).max(p_prev.abs()).max(d_prev.abs());
        if big > BIG {
            p *= SMALL;
            p_prev *= SMALL;
            d *= SMALL;
            d_prev *= SMALL;
        }
    }
    p / d
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn low_order_closed_forms() {
        let h = WeightFamily::Hermite;
        assert!((phi(&h, 0, 0.0).unwrap() - PI.powf(-0.25)).abs() < 1e-15);
        assert!((phi(&h, 0, 0.0).unwrap() - 0.751_125_544_464_943).abs() < 1e-14);
        assert_eq!(phi(&h, 1, 0.0).unwrap(), 0.0);
        // φ_1 = √2 x e^{−x²/2} π^{−1/4}
        let x = 0.7;
        let want = 2f64.sqrt() * x * (-0.5 * x * x).exp() * PI.powf(-0.25);
        assert!((phi(&h, 1, x).unwrap() - want).abs() < 1e-15);

        let l = WeightFamily::Laguerre { alpha: 0.0 };
        assert!((phi(&l, 0, 2.0).unwrap() - (-1f64).exp()).abs() < 1e-15);
        assert!((phi(&l, 0, 2.0).unwrap() - 0.367_879_441_171_442).abs() < 1e-14);
        // L_1 = 1 − x up to sign convention: φ_1 = (x − 1) e^{−x/2}
        assert!((phi(&l, 1, 3.0).unwrap() - 2.0 * (-1.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn out_of_support() {
        let l = WeightFamily::Laguerre { alpha: 1.0 };
        assert!(matches!(phi(&l, 3, -0.1), Err(Error::OutOfSupport { .. })));
        let j = WeightFamily::Jacobi { alpha: 0.0, beta: 0.0 };
        assert!(phi(&j, 0, 1.5).is_err());
        assert!(phi(&WeightFamily::Hermite, 0, f64::NAN).is_err());
        assert_eq!(phi(&l, 4, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn far_tail_does_not_underflow() {
        // w^{1/2} = e^{−x/2} ≈ e^{−4000} underflows; φ_j stays O(n^{-1/3})-sized near the edge
        let l = WeightFamily::Laguerre { alpha: 0.0 };
        let n = 2000;
        let s = phi_scaled(&l, n - 1, 4.0 * n as f64).unwrap();
        let v = s.value();
        assert!(v.is_finite() && v != 0.0 && v.abs() < 1.0, "{v}");
        // deep beyond the edge the value genuinely underflows and is flagged
        let deep = phi_scaled(&l, 10, 3000.0).unwrap();
        assert!(deep.underflows());
        assert!(deep.ln_abs().is_finite());
    }

    #[test]
    fn matches_extended_precision() {
        // mpmath at 50 digits from hermite/laguerre/jacobi with explicit normalizations
        let table = [
            (WeightFamily::Hermite, 82, 13.807, 0.0069329440619799716),
            (WeightFamily::Hermite, 101, 5.161, 0.078041047423254955),
            (WeightFamily::Hermite, 18, 4.69, -0.39119996432383871),
            (WeightFamily::Hermite, 24, -2.256, -0.30424145721055226),
            (WeightFamily::Hermite, 14, 5.295, 0.38710609349188117),
            (WeightFamily::Hermite, 54, -11.589, 0.0038695076832163534),
            (WeightFamily::Hermite, 111, -2.933, -0.093741941957406633),
            (WeightFamily::Laguerre { alpha: 0.0 }, 23, 59.088, 0.062359922990202807),
            (
                WeightFamily::Laguerre { alpha: 0.0 },
                144,
                104.035,
                -0.017145513281192609,
            ),
            (
                WeightFamily::Laguerre { alpha: 0.0 },
                161,
                457.888,
                0.020202244361969469,
            ),
            (
                WeightFamily::Laguerre { alpha: 0.0 },
                147,
                392.243,
                -0.014578080977022038,
            ),
            (WeightFamily::Laguerre { alpha: 0.0 }, 56, 22.354, 0.097125216179072835),
            (WeightFamily::Laguerre { alpha: 0.0 }, 74, 146.049, 0.047642568819863095),
            (WeightFamily::Laguerre { alpha: 2.5 }, 30, 79.234, -0.060943683458777034),
            (
                WeightFamily::Jacobi { alpha: 0.5, beta: 2.0 },
                174,
                0.1871,
                0.1918279534184589,
            ),
            (
                WeightFamily::Jacobi { alpha: 0.5, beta: 2.0 },
                146,
                0.6361,
                0.56184648668262546,
            ),
            (
                WeightFamily::Jacobi { alpha: 1.0, beta: 1.0 },
                24,
                0.5468,
                -0.825615419403326,
            ),
            (
                WeightFamily::Jacobi { alpha: 0.0, beta: 0.0 },
                144,
                0.0684,
                1.5228626361278771,
            ),
            (
                WeightFamily::Jacobi { alpha: 0.0, beta: 0.0 },
                127,
                0.6768,
                -1.0078415473504699,
            ),
            (
                WeightFamily::Jacobi { alpha: 1.0, beta: 1.0 },
                198,
                0.3179,
                -0.6013380240300055,
            ),
        ];
        for (fam, j, x, want) in table {
            let got = phi(&fam, j, x).unwrap();
            assert!(
                (got - want).abs() <= 1e-8 * want.abs(),
                "{fam:?} j={j} x={x}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn phi_all_matches_single() {
        let fam = WeightFamily::Jacobi { alpha: 1.5, beta: 0.5 };
        let all = phi_all(&fam, 30, 0.3).unwrap();
        for (j, v) in all.iter().enumerate() {
            assert_eq!(*v, phi(&fam, j, 0.3).unwrap());
        }
    }

    #[test]
    fn christoffel_sum_direct() {
        let fam = WeightFamily::Hermite;
        let x = 0.4;
        let direct: f64 = phi_all(&fam, 12, x).unwrap().iter().map(|p| p * p).sum::<f64>() / fam.weight(x);
        let via = ln_christoffel_sum(&fam, 12, x).exp();
        assert!((direct - via).abs() <= 1e-13 * direct);
    }
}
