use crate::error::{Error, Result};
use crate::orthopoly::WeightFamily;

/// Sturm–Liouville data of a classical weight:
/// `L = −(p u′)′ + q u`, with `w′/w = r/p` and `q = r²/(4p) + r′/2`.
///
/// The `φ_j` are eigenfunctions with eigenvalues `λ_j`, so the spectral
/// projection of `L − λ_n` onto its negative part is `K_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SturmLiouvilleData {
    pub family: WeightFamily,
    /// `p(x) = p[0] + p[1] x + p[2] x²`.
    pub p: [f64; 3],
    /// `r(x) = r[0] + r[1] x`.
    pub r: [f64; 2],
}

impl SturmLiouvilleData {
    pub fn p(&self, x: f64) -> f64 {
        self.p[0] + x * (self.p[1] + x * self.p[2])
    }

    pub fn p_prime(&self, x: f64) -> f64 {
        self.p[1] + 2.0 * self.p[2] * x
    }

    pub fn p_second(&self) -> f64 {
        2.0 * self.p[2]
    }

    pub fn r(&self, x: f64) -> f64 {
        self.r[0] + self.r[1] * x
    }

    pub fn r_prime(&self) -> f64 {
        self.r[1]
    }

    pub fn q(&self, x: f64) -> f64 {
        let r = self.r(x);
        r * r / (4.0 * self.p(x)) + 0.5 * self.r_prime()
    }

    /// `λ_n = −n (r′ + ½ (n+1) p″)`.
    pub fn lambda(&self, n: usize) -> f64 {
        let n = n as f64;
        -n * (self.r_prime() + 0.5 * (n + 1.0) * self.p_second())
    }
}

/// Tricomi's correspondence from the weight to `(p, r, q, λ_n)`.
pub fn tricomi_map(family: &WeightFamily) -> Result<SturmLiouvilleData> {
    family.validate()?;
    let (p, r) = match *family {
        WeightFamily::Hermite => ([1.0, 0.0, 0.0], [0.0, -2.0]),
        WeightFamily::Laguerre { alpha } => ([0.0, 1.0, 0.0], [alpha, -1.0]),
        WeightFamily::Jacobi { alpha, beta } => ([0.0, 1.0, -1.0], [alpha, -(alpha + beta)]),
        WeightFamily::Legendre => {
            return Err(Error::Unsupported(
                "the Tricomi map covers Hermite, Laguerre and Jacobi",
            ))
        }
    };
    Ok(SturmLiouvilleData { family: *family, p, r })
}
