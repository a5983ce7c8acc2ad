//! Dyson, Airy and Bessel kernels in closed and integral form.

use std::f64::consts::PI;

use crate::ensemble::Regime;
use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::{airy_pair, bessel_j, bessel_j_and_prime};

use super::Kernel;

const DYSON_SERIES: f64 = 1e-4;
const AIRY_BLEND: f64 = 1e-5;
const BESSEL_BLEND: f64 = 1e-5;

/// The universal limit kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitKernel {
    Dyson,
    Airy,
    Bessel { alpha: f64 },
}

impl LimitKernel {
    /// Limit attached to a scaling regime.
    pub fn for_regime(regime: &Regime) -> Self {
        match *regime {
            Regime::Bulk { .. } => LimitKernel::Dyson,
            Regime::Soft { .. } => LimitKernel::Airy,
            Regime::Hard { alpha, .. } => LimitKernel::Bessel { alpha },
        }
    }

    pub fn name(&self) -> String {
        match self {
            LimitKernel::Dyson => "dyson".into(),
            LimitKernel::Airy => "airy".into(),
            LimitKernel::Bessel { alpha } => format!("bessel({alpha})"),
        }
    }

    /// Closed-form integral form, for cross-checks.
    pub fn eval_integral_form(&self, x: f64, y: f64) -> Result<f64> {
        match *self {
            LimitKernel::Dyson => dyson_integral(x, y),
            LimitKernel::Airy => airy_integral(x, y),
            LimitKernel::Bessel { alpha } => bessel_integral(alpha, x, y),
        }
    }
}

impl Kernel for LimitKernel {
    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        match *self {
            LimitKernel::Dyson => Ok(dyson_eval(x, y)),
            LimitKernel::Airy => airy_eval(x, y),
            LimitKernel::Bessel { alpha } => bessel_eval(alpha, x, y),
        }
    }
}

/// `sin(π(x−y)) / (π(x−y))`.
pub fn dyson_eval(x: f64, y: f64) -> f64 {
    let u = PI * (x - y);
    if (x - y).abs() < DYSON_SERIES {
        let u2 = u * u;
        1.0 - u2 / 6.0 * (1.0 - u2 / 20.0)
    } else {
        u.sin() / u
    }
}

/// `(1/2π) ∫_0^{π²} cos((x−y)√λ)/√λ dλ`, integrated after `λ = u²`.
pub fn dyson_integral(x: f64, y: f64) -> Result<f64> {
    let d = x - y;
    let r = quad::integrate(|u| (d * u).cos(), 0.0, PI, 1e-15, 1e-14)?;
    Ok(r.value / PI)
}

/// `(Ai(x)Ai′(y) − Ai′(x)Ai(y)) / (x − y)`; on and near the diagonal
/// `K(m+h, m−h) = Ai′(m)² − m Ai(m)² − τ(m) h² + O(h⁴)`.
pub fn airy_eval(x: f64, y: f64) -> Result<f64> {
    let d = x - y;
    if d.abs() < AIRY_BLEND {
        let m = 0.5 * (x + y);
        let (a, ap) = airy_pair(m)?;
        let diag = ap * ap - m * a * a;
        if d == 0.0 {
            return Ok(diag);
        }
        let h = 0.5 * d;
        return Ok(diag - airy_trace_from(m, a, ap) * h * h);
    }
    let (ax, apx) = airy_pair(x)?;
    let (ay, apy) = airy_pair(y)?;
    Ok((ax * apy - apx * ay) / d)
}

/// `∫_0^Λ Ai(x+λ) Ai(y+λ) dλ` with `Λ = max(40, 40 − x − y)`; the omitted tail
/// is below `Ai(20)² ~ 1e−27`.
pub fn airy_integral(x: f64, y: f64) -> Result<f64> {
    let upper = 40f64.max(40.0 - x - y);
    let r = quad::try_integrate(
        |l| Ok(airy_pair(x + l)?.0 * airy_pair(y + l)?.0),
        0.0,
        upper,
        1e-14,
        1e-13,
    )?;
    Ok(r.value)
}

/// `τ(s) = ∫_s^∞ K_Airy(x, x) dx = (2s²Ai² − 2s Ai′² − Ai Ai′)/3`.
pub fn airy_trace(s: f64) -> Result<f64> {
    let (a, ap) = airy_pair(s)?;
    Ok(airy_trace_from(s, a, ap))
}

fn airy_trace_from(s: f64, a: f64, ap: f64) -> f64 {
    (2.0 * s * s * a * a - 2.0 * s * ap * ap - a * ap) / 3.0
}

fn check_positive(x: f64, y: f64) -> Result<()> {
    if x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            func: "bessel_eval",
            arg: if x > 0.0 { y } else { x },
            domain: "x, y > 0",
        })
    }
}

/// `(J_α(√x)√y J′_α(√y) − √x J′_α(√x) J_α(√y)) / (2(x − y))`, with a
/// second-order expansion about the smaller argument near the diagonal.
pub fn bessel_eval(alpha: f64, x: f64, y: f64) -> Result<f64> {
    check_positive(x, y)?;
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    let delta = y - x;
    if delta < BESSEL_BLEND * y {
        return bessel_near_diagonal(alpha, x, delta);
    }
    let (sx, sy) = (x.sqrt(), y.sqrt());
    let (jx, jpx) = bessel_j_and_prime(alpha, sx)?;
    let (jy, jpy) = bessel_j_and_prime(alpha, sy)?;
    Ok((jx * sy * jpy - sx * jpx * jy) / (2.0 * (x - y)))
}

/// With `f(z) = J_α(√z)`, `g = 2z f′` and `Q = (α²/z − 1)/4` the Bessel
/// equation reads `g′ = 2Qf`; the numerator `N(y) = f(x)g(y) − g(x)f(y)`
/// vanishes at `y = x` and `K = −N(y)/(2δ)`.
fn bessel_near_diagonal(alpha: f64, x: f64, delta: f64) -> Result<f64> {
    let s = x.sqrt();
    let (j, jp) = bessel_j_and_prime(alpha, s)?;
    let a2 = alpha * alpha;
    let f = j;
    let f1 = jp / (2.0 * s);
    let g = s * jp;
    let q = (a2 / x - 1.0) / 4.0;
    let q1 = -a2 / (4.0 * x * x);
    let q2 = a2 / (2.0 * x * x * x);
    let f2 = (q * f - f1) / x;
    let f3 = (q1 * f + q * f1 - f2) / x - (q * f - f1) / (x * x);
    let g2 = 2.0 * q1 * f + 2.0 * q * f1;
    let g3 = 2.0 * q2 * f + 4.0 * q1 * f1 + 2.0 * q * f2;
    let n1 = 2.0 * q * f * f - 2.0 * x * f1 * f1;
    let n2 = f * g2 - g * f2;
    let n3 = f * g3 - g * f3;
    Ok(-0.5 * (n1 + n2 * delta / 2.0 + n3 * delta * delta / 6.0))
}

/// `¼ ∫_0^1 J_α(√(xλ)) J_α(√(yλ)) dλ`, integrated after `λ = s²`.
pub fn bessel_integral(alpha: f64, x: f64, y: f64) -> Result<f64> {
    check_positive(x, y)?;
    let (sx, sy) = (x.sqrt(), y.sqrt());
    let r = quad::try_integrate(
        |s| Ok(2.0 * s * bessel_j(alpha, s * sx)? * bessel_j(alpha, s * sy)?),
        0.0,
        1.0,
        1e-15,
        1e-13,
    )?;
    Ok(0.25 * r.value)
}

/// `τ_α(s) = ¼ ∫_0^s ∫_0^1 J_α(√(xλ))² dλ dx` by nested adaptive quadrature.
pub fn bessel_trace(alpha: f64, s: f64) -> Result<f64> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::Domain {
            func: "bessel_trace",
            arg: s,
            domain: "s >= 0",
        });
    }
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Bessel order must be >= 0, got {alpha}"
        )));
    }
    let inner = |x: f64| -> Result<f64> {
        let sx = x.sqrt();
        let r = quad::try_integrate(
            |u| {
                let j = bessel_j(alpha, u * sx)?;
                Ok(2.0 * u * j * j)
            },
            0.0,
            1.0,
            1e-15,
            1e-13,
        )?;
        Ok(0.25 * r.value)
    };
    Ok(quad::try_integrate(inner, 0.0, s, 1e-13, 1e-12)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{AI0, AIP0};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dyson_values() {
        assert_eq!(dyson_eval(0.3, 0.3), 1.0);
        assert!((dyson_eval(0.5, 0.0) - 2.0 / PI).abs() < 1e-15);
        assert!((dyson_eval(0.5, 0.0) - std::f64::consts::FRAC_2_PI).abs() < 1e-15);
        // series branch against the closed form at the same point
        let d = DYSON_SERIES * 0.999;
        let u = PI * d;
        assert!((dyson_eval(d, 0.0) - u.sin() / u).abs() < 1e-15);
    }

    #[test]
    fn dyson_integral_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let (x, y): (f64, f64) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            assert!((dyson_eval(x, y) - dyson_integral(x, y).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn airy_diagonal_and_symmetry() {
        let k00 = airy_eval(0.0, 0.0).unwrap();
        assert!((k00 - AIP0 * AIP0).abs() < 1e-15);
        // mpmath: airyai(0, 1)**2
        assert!((k00 - 0.066_987_483_779_663_974).abs() < 1e-16);
        assert_eq!(airy_eval(0.3, 1.7).unwrap(), airy_eval(1.7, 0.3).unwrap());
        // blend against the closed form just outside the threshold
        for m in [-3.0, 0.0, 2.0] {
            let inside = airy_eval(m + 0.49e-5, m - 0.49e-5).unwrap();
            let outside = airy_eval(m + 0.51e-5, m - 0.51e-5).unwrap();
            assert!((inside - outside).abs() < 1e-10, "m = {m}");
        }
    }

    #[test]
    fn airy_integral_form() {
        let pts = [
            (0.0, 1.0),
            (-1.0, 2.0),
            (2.0, 3.0),
            (0.0, 0.0),
            (-2.5, -0.5),
            (1.0, 1.0),
            (-4.0, 3.0),
            (0.5, -1.5),
            (3.0, 5.0),
            (-6.0, -6.5),
        ];
        for (x, y) in pts {
            let a = airy_eval(x, y).unwrap();
            let b = airy_integral(x, y).unwrap();
            assert!((a - b).abs() < 1e-8, "({x}, {y}): {a} vs {b}");
        }
    }

    #[test]
    fn airy_trace_values() {
        let t0 = airy_trace(0.0).unwrap();
        assert!((t0 + AI0 * AIP0 / 3.0).abs() < 1e-16);
        // mpmath: −airyai(0)·airyai(0, 1)/3
        assert!((t0 - 0.030_629_383_078_988_447).abs() < 1e-16);
        for s in [-2.0, 0.0, 1.0] {
            let q = quad::try_integrate(|x| airy_eval(x, x), s, s + 40.0, 1e-14, 1e-13)
                .unwrap()
                .value;
            assert!((q - airy_trace(s).unwrap()).abs() < 1e-7, "s = {s}");
        }
        let mut prev = airy_trace(0.0).unwrap();
        for k in 1..40 {
            let t = airy_trace(0.25 * k as f64).unwrap();
            assert!(t < prev && t > 0.0);
            prev = t;
        }
    }

    #[test]
    fn bessel_integral_form() {
        for alpha in [0.0, 0.5, 1.0, 2.5] {
            for (x, y) in [(1.0, 2.0), (4.0, 9.0), (0.3, 7.0)] {
                let a = bessel_eval(alpha, x, y).unwrap();
                let b = bessel_integral(alpha, x, y).unwrap();
                assert!((a - b).abs() < 1e-9, "alpha {alpha} ({x}, {y}): {a} vs {b}");
            }
        }
    }

    #[test]
    fn bessel_half_order_trig() {
        // J_{1/2}(z) = √(2/(πz)) sin z, J′_{1/2}(z) = √(2/(πz)) (cos z − sin z/(2z));
        // with u = √x, v = √y: √u J(u) = √(2/π) sin u, so
        // K = (sin u (v cos v − sin v/2) − (u cos u − sin u/2) sin v) · (2/π) / (2(x−y)√(uv))
        let (x, y) = (1.0f64, 4.0f64);
        let (u, v) = (x.sqrt(), y.sqrt());
        let num = u.sin() * (v * v.cos() - 0.5 * v.sin()) - (u * u.cos() - 0.5 * u.sin()) * v.sin();
        let want = num * (2.0 / PI) / (2.0 * (x - y) * (u * v).sqrt());
        assert!((bessel_eval(0.5, x, y).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn bessel_near_diagonal_consistency() {
        for alpha in [0.0, 0.5, 1.0, 3.0] {
            for x in [0.05, 1.0, 30.0, 400.0] {
                let d = bessel_eval(alpha, x, x).unwrap();
                let integral = bessel_integral(alpha, x, x).unwrap();
                assert!(
                    (d - integral).abs() < 1e-10 * integral.abs().max(1e-3),
                    "alpha {alpha} x {x}"
                );
            }
        }
        // mpmath at 40 digits, y = x(1 + 1e−5): the expansion branch
        let table = [
            (0.0, 0.05, 0.24689444815058530925),
            (0.0, 1.0, 0.19479276232648381408),
            (0.0, 30.0, 0.02939929877244530383),
            (0.0, 400.0, 0.0080909706490513836784),
            (0.5, 0.05, 0.023489348129980911687),
            (0.5, 1.0, 0.08679548247102820398),
            (0.5, 30.0, 0.031707841036774047655),
            (0.5, 400.0, 0.00780950570389747916),
            (1.0, 0.05, 0.0015495375938351793763),
            (1.0, 1.0, 0.026430269196196614917),
            (1.0, 30.0, 0.028941764305449140056),
            (1.0, 400.0, 0.0078118732544808669301),
            (3.0, 0.05, 3.3739780071533570859e-9),
            (3.0, 1.0, 0.000024537948508002908126),
            (3.0, 30.0, 0.028128118805415601429),
            (3.0, 400.0, 0.0076833337956213532097),
        ];
        for (alpha, x, want) in table {
            let got = bessel_eval(alpha, x, x * (1.0 + 1e-5)).unwrap();
            assert!(
                (got - want).abs() <= 1e-11 * want.abs(),
                "alpha {alpha} x {x}: {got} vs {want}"
            );
        }
        assert_eq!(bessel_eval(1.5, 2.0, 3.0).unwrap(), bessel_eval(1.5, 3.0, 2.0).unwrap());
        assert!(bessel_eval(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn bessel_trace_routes_agree() {
        let s = 10.0;
        let nested = bessel_trace(1.0, s).unwrap();
        let diag = quad::try_integrate(
            |x| if x == 0.0 { Ok(0.0) } else { bessel_eval(1.0, x, x) },
            0.0,
            s,
            1e-13,
            1e-12,
        )
        .unwrap()
        .value;
        assert!((nested - diag).abs() < 1e-8, "{nested} vs {diag}");
        assert_eq!(bessel_trace(1.0, 0.0).unwrap(), 0.0);
        assert!(bessel_trace(0.0, 2.0).unwrap() < bessel_trace(0.0, 3.0).unwrap());
    }
}
