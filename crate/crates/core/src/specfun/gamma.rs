use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k - 1)), k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_MIN: f64 = 15.0;

/// Natural logarithm of the gamma function for `x > 0`.
///
/// Small integers are summed exactly; everything else shifts the argument to
/// at least 15 with the recurrence and finishes with the Stirling series.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            func: "log_gamma",
            arg: x,
            domain: "x > 0",
        });
    }
    if x.fract() == 0.0 && x <= 30.0 {
        let k = x as u32;
        return Ok((2..k).map(|j| (j as f64).ln()).sum());
    }
    let mut y = x;
    let mut prod = 1.0;
    let mut log_shift = 0.0;
    while y < STIRLING_MIN {
        prod *= y;
        if prod > 1e280 {
            log_shift += prod.ln();
            prod = 1.0;
        }
        y += 1.0;
    }
    log_shift += prod.ln();
    Ok(stirling(y) - log_shift)
}

fn stirling(y: f64) -> f64 {
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    (y - 0.5) * y.ln() - y + HALF_LN_2PI + series
}
