use std::f64::consts::PI;

use super::spec::{Ensemble, EnsembleSpec};
use super::tricomi::tricomi_map;
use crate::error::{Error, Result};
use crate::quad;
use crate::report::Table;

/// Edges closer than this to a support endpoint are snapped onto it.
const EDGE_SNAP: f64 = 1e-12;

/// Which end of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn name(&self) -> &'static str {
        match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        }
    }
}

/// Data of a hard edge `p(0) = 0`, `p′(0) > 0`, `q(x) = γ²/x + O(1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardEdge {
    pub gamma: f64,
    pub p_prime_0: f64,
    /// Bessel index `2γ/√p′(0)`.
    pub alpha_index: f64,
}

/// Scaled limits of the Sturm–Liouville coefficients:
/// `n^{−2κ′} λ_n → ω`, `n^{−2κ′} q_n(n^κ t) → q̃(t)`, `n^{2κ″} p(n^κ t) → p̃(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingData {
    pub ensemble: Ensemble,
    pub theta: f64,
    pub tau: f64,
    pub kappa: f64,
    pub kappa_prime: f64,
    pub kappa_dprime: f64,
    pub omega: f64,
    pub t_minus: f64,
    pub t_plus: f64,
    /// Present when the lower edge sits on the endpoint `0` of the support.
    pub hard_edge: Option<HardEdge>,
    /// JUE only: the endpoint `1`, seen through `x ↦ 1 − x`.
    pub upper_hard_edge: Option<HardEdge>,
}

impl ScalingData {
    pub fn p_tilde(&self, t: f64) -> f64 {
        match self.ensemble {
            Ensemble::Gue => 1.0,
            Ensemble::Lue => t,
            Ensemble::Jue => t * (1.0 - t),
        }
    }

    pub fn q_tilde(&self, t: f64) -> f64 {
        match self.ensemble {
            Ensemble::Gue => t * t,
            Ensemble::Lue => (self.theta - 1.0 - t).powi(2) / (4.0 * t),
            Ensemble::Jue => {
                let l = self.jue_numerator(t);
                l * l / (4.0 * self.tau * self.tau * t * (1.0 - t))
            }
        }
    }

    pub fn q_tilde_prime(&self, t: f64) -> f64 {
        match self.ensemble {
            Ensemble::Gue => 2.0 * t,
            Ensemble::Lue => (t * t - (self.theta - 1.0).powi(2)) / (4.0 * t * t),
            Ensemble::Jue => {
                let l = self.jue_numerator(t);
                let s = t * (1.0 - t);
                (-2.0 * (1.0 - 2.0 * self.tau) * l * s - l * l * (1.0 - 2.0 * t)) / (4.0 * self.tau * self.tau * s * s)
            }
        }
    }

    fn jue_numerator(&self, t: f64) -> f64 {
        self.theta - self.tau - (1.0 - 2.0 * self.tau) * t
    }

    /// Open support of the scaled variable `t`.
    pub fn t_domain(&self) -> (f64, f64) {
        match self.ensemble {
            Ensemble::Gue => (f64::NEG_INFINITY, f64::INFINITY),
            Ensemble::Lue => (0.0, f64::INFINITY),
            Ensemble::Jue => (0.0, 1.0),
        }
    }

    fn in_domain(&self, t: f64) -> bool {
        let (lo, hi) = self.t_domain();
        t > lo && t < hi
    }

    /// `π^{−1} √((ω − q̃)_+ / p̃)`, evaluated from the coefficients.
    pub fn rho_from_coefficients(&self, t: f64) -> f64 {
        if !self.in_domain(t) {
            return 0.0;
        }
        ((self.omega - self.q_tilde(t)).max(0.0) / self.p_tilde(t)).sqrt() / PI
    }

    /// Limit density in factored form: semicircle, Marčenko–Pastur, or the
    /// Wachter law on `(0, 1)`.
    pub fn limit_density(&self, t: f64) -> f64 {
        if !self.in_domain(t) {
            return 0.0;
        }
        let band = ((self.t_plus - t) * (t - self.t_minus)).max(0.0).sqrt();
        match self.ensemble {
            Ensemble::Gue => (2.0 - t * t).max(0.0).sqrt() / PI,
            Ensemble::Lue => band / (2.0 * PI * t),
            Ensemble::Jue => band / (2.0 * PI * self.tau * t * (1.0 - t)),
        }
    }

    pub fn in_bulk(&self, t: f64) -> bool {
        self.in_domain(t) && t > self.t_minus && t < self.t_plus && self.q_tilde(t) < self.omega
    }
}

/// Scaling data for `spec`.
pub fn scaling_data(spec: &EnsembleSpec) -> Result<ScalingData> {
    spec.validate()?;
    let (theta, tau) = spec.limit_parameters();
    let (alpha, beta) = spec.weight_parameters();
    let edge = |g: f64| HardEdge {
        gamma: g,
        p_prime_0: 1.0,
        alpha_index: 2.0 * g,
    };
    let data = match spec.ensemble {
        Ensemble::Gue => ScalingData {
            ensemble: Ensemble::Gue,
            theta,
            tau,
            kappa: 0.5,
            kappa_prime: 0.5,
            kappa_dprime: 0.0,
            omega: 2.0,
            t_minus: -2f64.sqrt(),
            t_plus: 2f64.sqrt(),
            hard_edge: None,
            upper_hard_edge: None,
        },
        Ensemble::Lue => {
            let s = theta.sqrt();
            let t_minus = snap((s - 1.0).powi(2), 0.0);
            ScalingData {
                ensemble: Ensemble::Lue,
                theta,
                tau,
                kappa: 1.0,
                kappa_prime: 0.5,
                kappa_dprime: -0.5,
                omega: 1.0,
                t_minus,
                t_plus: (s + 1.0).powi(2),
                hard_edge: (t_minus == 0.0).then(|| edge(alpha / 2.0)),
                upper_hard_edge: None,
            }
        }
        Ensemble::Jue => {
            let a = (theta * (1.0 - tau)).sqrt();
            let b = (tau * (1.0 - theta)).sqrt();
            let t_minus = snap((a - b).powi(2), 0.0);
            let t_plus = snap((a + b).powi(2), 1.0);
            ScalingData {
                ensemble: Ensemble::Jue,
                theta,
                tau,
                kappa: 0.0,
                kappa_prime: 1.0,
                kappa_dprime: 0.0,
                omega: (1.0 - tau) / tau,
                t_minus,
                t_plus,
                hard_edge: (t_minus == 0.0).then(|| edge(alpha / 2.0)),
                upper_hard_edge: (t_plus == 1.0).then(|| edge(beta / 2.0)),
            }
        }
    };
    Ok(data)
}

fn snap(v: f64, target: f64) -> f64 {
    if (v - target).abs() <= EDGE_SNAP {
        target
    } else {
        v
    }
}

/// Scaling regime with its anchor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    Bulk { t: f64 },
    Soft { side: Side, t_star: f64 },
    Hard { side: Side, alpha: f64 },
}

/// Affine zoom `x = σ ξ + μ`.
///
/// `σ` is negative at lower soft edges and at the reflected JUE upper hard
/// edge, so that `ξ` increases into the spectrum; kernels scale by `|σ|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingMap {
    pub sigma: f64,
    pub mu: f64,
    pub regime: Regime,
    pub n: usize,
}

impl ScalingMap {
    pub fn identity(n: usize) -> Self {
        ScalingMap {
            sigma: 1.0,
            mu: 0.0,
            regime: Regime::Bulk { t: 0.0 },
            n,
        }
    }

    pub fn apply(&self, xi: f64) -> f64 {
        self.sigma * xi + self.mu
    }

    pub fn inverse(&self, x: f64) -> f64 {
        (x - self.mu) / self.sigma
    }
}

/// Requested zoom, resolved against a spec by [`scaling_map`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Zoom {
    Bulk { t: f64 },
    Soft { side: Side },
    Hard { side: Side },
}

/// Scaling map for `zoom` at `spec.n`.
pub fn scaling_map(spec: &EnsembleSpec, zoom: Zoom) -> Result<ScalingMap> {
    match zoom {
        Zoom::Bulk { t } => bulk_map(spec, t),
        Zoom::Soft { side } => soft_map(spec, side),
        Zoom::Hard { side } => hard_map(spec, side),
    }
}

/// Bulk zoom at `t`: `μ = n^κ t`, `σ = n^{κ−1}/ρ̃(t)`.
pub fn bulk_map(spec: &EnsembleSpec, t: f64) -> Result<ScalingMap> {
    let d = scaling_data(spec)?;
    if !t.is_finite() || !d.in_bulk(t) {
        return Err(Error::NotInBulk {
            t,
            lo: d.t_minus,
            hi: d.t_plus,
        });
    }
    let n = spec.n as f64;
    Ok(ScalingMap {
        sigma: n.powf(d.kappa - 1.0) / d.rho_from_coefficients(t),
        mu: n.powf(d.kappa) * t,
        regime: Regime::Bulk { t },
        n: spec.n,
    })
}

/// Soft-edge zoom at `t_∓`: `μ = n^κ t_*`, `σ = n^{κ−2/3} (p̃/q̃′)^{1/3}`.
pub fn soft_map(spec: &EnsembleSpec, side: Side) -> Result<ScalingMap> {
    let d = scaling_data(spec)?;
    let (t_star, hard) = match side {
        Side::Lower => (d.t_minus, d.hard_edge.is_some()),
        Side::Upper => (d.t_plus, d.upper_hard_edge.is_some()),
    };
    if hard {
        return Err(Error::DegenerateEdge { t: t_star });
    }
    let slope = d.q_tilde_prime(t_star);
    if slope == 0.0 || !slope.is_finite() {
        return Err(Error::DegenerateEdge { t: t_star });
    }
    let n = spec.n as f64;
    Ok(ScalingMap {
        sigma: n.powf(d.kappa - 2.0 / 3.0) * (d.p_tilde(t_star) / slope).cbrt(),
        mu: n.powf(d.kappa) * t_star,
        regime: Regime::Soft { side, t_star },
        n: spec.n,
    })
}

/// Hard-edge zoom: `μ = 0`, `σ = p′(0)/(4ω n^{2κ′})`; the JUE upper edge
/// uses `x = 1 − σ ξ` with the roles of `α` and `β` exchanged.
pub fn hard_map(spec: &EnsembleSpec, side: Side) -> Result<ScalingMap> {
    let d = scaling_data(spec)?;
    match (spec.ensemble, side) {
        (Ensemble::Gue, _) => return Err(Error::NoHardEdge("GUE has no hard edge")),
        (Ensemble::Lue, Side::Upper) => return Err(Error::NoHardEdge("LUE has no upper hard edge")),
        _ => {}
    }
    let edge = match side {
        Side::Lower => d.hard_edge,
        Side::Upper => d.upper_hard_edge,
    }
    .ok_or(Error::NoHardEdge("the edge is soft for these parameters"))?;
    let n = spec.n as f64;
    let s = edge.p_prime_0 / (4.0 * d.omega * n.powf(2.0 * d.kappa_prime));
    let (sigma, mu) = match side {
        Side::Lower => (s, 0.0),
        Side::Upper => (-s, 1.0),
    };
    Ok(ScalingMap {
        sigma,
        mu,
        regime: Regime::Hard {
            side,
            alpha: edge.alpha_index,
        },
        n: spec.n,
    })
}

/// `ρ̃(t)` for the ensemble's limit law.
pub fn limit_density(spec: &EnsembleSpec, t: f64) -> Result<f64> {
    Ok(scaling_data(spec)?.limit_density(t))
}

/// `∫ ρ̃ dt` over `[t_−, t_+]`, using `t = t_− + (t_+ − t_−)(1 − cos φ)/2`
/// to absorb the square-root (or inverse square-root) endpoint behaviour.
pub fn limit_mass(spec: &EnsembleSpec) -> Result<f64> {
    let d = scaling_data(spec)?;
    let half = 0.5 * (d.t_plus - d.t_minus);
    let r = quad::integrate(
        |phi| {
            let t = d.t_minus + half * (1.0 - phi.cos());
            d.limit_density(t) * half * phi.sin()
        },
        0.0,
        PI,
        1e-13,
        1e-13,
    )?;
    Ok(r.value)
}

/// Rows `(n, |n^{−2κ′}λ_n − ω|, |n^{−2κ′}q_n(n^κ t) − q̃(t)|, |n^{2κ″}p(n^κ t) − p̃(t)|)`.
pub fn coefficient_convergence_report(spec: &EnsembleSpec, t: f64, n_list: &[usize]) -> Result<Table> {
    let d = scaling_data(spec)?;
    if !d.in_domain(t) {
        let (lo, hi) = d.t_domain();
        return Err(Error::OutOfSupport {
            what: "t",
            value: t,
            lo,
            hi,
        });
    }
    let mut table = Table::new(&["n", "lambda_err", "q_err", "p_err"]);
    for &n in n_list {
        let s = spec.with_n(n)?;
        let sl = tricomi_map(&s.family())?;
        let nf = n as f64;
        let x = nf.powf(d.kappa) * t;
        let scale = nf.powf(-2.0 * d.kappa_prime);
        table.push(vec![
            nf,
            (scale * sl.lambda(n) - d.omega).abs(),
            (scale * sl.q(x) - d.q_tilde(t)).abs(),
            (nf.powf(2.0 * d.kappa_dprime) * sl.p(x) - d.p_tilde(t)).abs(),
        ]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn specs() -> Vec<EnsembleSpec> {
        vec![
            EnsembleSpec::gue(50).unwrap(),
            EnsembleSpec::lue_ratio(50, 1.0).unwrap(),
            EnsembleSpec::lue_ratio(50, 4.0).unwrap(),
            EnsembleSpec::lue_ratio(50, 2.7).unwrap(),
            EnsembleSpec::lue_fixed(50, 1.0).unwrap(),
            EnsembleSpec::jue_ratio(50, 0.5, 0.5).unwrap(),
            EnsembleSpec::jue_ratio(50, 0.45, 0.3).unwrap(),
            EnsembleSpec::jue_ratio(50, 0.6, 0.2).unwrap(),
            EnsembleSpec::jue_fixed(50, 1.0, 2.0).unwrap(),
        ]
    }

    #[test]
    fn exponents_sum_to_one() {
        for s in specs() {
            let d = scaling_data(&s).unwrap();
            assert_eq!(d.kappa + d.kappa_prime + d.kappa_dprime, 1.0);
        }
    }

    #[test]
    fn edges_are_roots() {
        for s in specs() {
            let d = scaling_data(&s).unwrap();
            for (t, dir) in [(d.t_minus, -1.0), (d.t_plus, 1.0)] {
                if d.in_domain(t) {
                    assert!((d.q_tilde(t) - d.omega).abs() <= 1e-10 * d.omega, "{s}: t = {t}");
                    let outside = t + dir * 1e-3;
                    if d.in_domain(outside) {
                        assert!(d.omega - d.q_tilde(outside) < 0.0);
                    }
                    assert!(d.omega - d.q_tilde(t - dir * 1e-3) > 0.0);
                }
            }
        }
    }

    #[test]
    fn q_prime_matches_differences() {
        for s in specs() {
            let d = scaling_data(&s).unwrap();
            let (dlo, dhi) = d.t_domain();
            let (lo, hi) = (d.t_minus.max(dlo + 0.02), d.t_plus.min(dhi - 0.02));
            for k in 0..=20 {
                let t = lo + (hi - lo) * k as f64 / 20.0;
                let h = 1e-5;
                let fd = (d.q_tilde(t + h) - d.q_tilde(t - h)) / (2.0 * h);
                let an = d.q_tilde_prime(t);
                assert!(
                    (fd - an).abs() <= 1e-6 * an.abs().max(1.0),
                    "{s}: t = {t}: {fd} vs {an}"
                );
            }
        }
    }

    #[test]
    fn classical_exponents_and_edges() {
        let g = scaling_data(&EnsembleSpec::gue(3).unwrap()).unwrap();
        assert_eq!((g.kappa, g.kappa_prime, g.kappa_dprime, g.omega), (0.5, 0.5, 0.0, 2.0));
        assert_eq!((g.t_minus, g.t_plus), (-2f64.sqrt(), 2f64.sqrt()));
        let l = scaling_data(&EnsembleSpec::lue_ratio(3, 1.0).unwrap()).unwrap();
        assert_eq!((l.t_minus, l.t_plus), (0.0, 4.0));
        let l4 = scaling_data(&EnsembleSpec::lue_ratio(3, 4.0).unwrap()).unwrap();
        assert_eq!((l4.t_minus, l4.t_plus), (1.0, 9.0));
        let j = scaling_data(&EnsembleSpec::jue_ratio(4, 0.5, 0.5).unwrap()).unwrap();
        assert_eq!((j.t_minus, j.t_plus), (0.0, 1.0));
        assert!(j.hard_edge.is_some() && j.upper_hard_edge.is_some());
    }

    #[test]
    fn factored_density_matches_coefficients() {
        for s in specs() {
            let d = scaling_data(&s).unwrap();
            for k in 1..20 {
                let t = d.t_minus + (d.t_plus - d.t_minus) * k as f64 / 20.0;
                let a = d.limit_density(t);
                let b = d.rho_from_coefficients(t);
                assert!((a - b).abs() <= 1e-12 * a.max(1.0), "{s}: t = {t}");
            }
        }
        let g = EnsembleSpec::gue(1).unwrap();
        assert!((limit_density(&g, 0.0).unwrap() - 2f64.sqrt() / PI).abs() < 1e-15);
        assert_eq!(limit_density(&g, 2f64.sqrt()).unwrap(), 0.0);
    }

    #[test]
    fn unit_mass() {
        for s in specs() {
            let m = limit_mass(&s).unwrap();
            assert!((m - 1.0).abs() < 1e-8, "{s}: {m}");
        }
    }

    #[test]
    fn bulk_identity_and_gue_form() {
        for s in specs() {
            let d = scaling_data(&s).unwrap();
            let t = 0.5 * (d.t_minus + d.t_plus);
            let m = bulk_map(&s, t).unwrap();
            let n = s.n as f64;
            assert!((d.limit_density(t) * m.sigma * n.powf(1.0 - d.kappa) - 1.0).abs() < 1e-12);
        }
        let n = 100.0f64;
        let m = bulk_map(&EnsembleSpec::gue(100).unwrap(), 0.3).unwrap();
        assert!((m.sigma - PI / (n.sqrt() * (2.0f64 - 0.09).sqrt())).abs() < 1e-14);
        assert!((m.mu - 0.3 * n.sqrt()).abs() < 1e-14);
        assert!(matches!(
            bulk_map(&EnsembleSpec::gue(5).unwrap(), 2f64.sqrt()),
            Err(Error::NotInBulk { .. })
        ));
    }

    #[test]
    fn soft_edges() {
        let n = 64usize;
        let nf = n as f64;
        let g = EnsembleSpec::gue(n).unwrap();
        let up = soft_map(&g, Side::Upper).unwrap();
        assert!((up.sigma - 2f64.powf(-0.5) * nf.powf(-1.0 / 6.0)).abs() < 1e-14);
        assert!((up.mu - (2.0 * nf).sqrt()).abs() < 1e-12);
        let lo = soft_map(&g, Side::Lower).unwrap();
        assert!((lo.sigma + up.sigma).abs() < 1e-15 && (lo.mu + up.mu).abs() < 1e-12);

        let l = EnsembleSpec::lue_ratio(n, 4.0).unwrap();
        let m = soft_map(&l, Side::Upper).unwrap();
        let want = nf.powf(1.0 / 3.0) * 4f64.powf(-1.0 / 6.0) * 9f64.powf(2.0 / 3.0);
        assert!((m.sigma - want).abs() <= 1e-12 * want);
        assert!((m.mu - 9.0 * nf).abs() < 1e-9);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let psi: f64 = rng.random_range(0.2..1.2);
            let phi: f64 = rng.random_range(psi + 0.05..PI - psi - 0.05);
            let (theta, tau) = ((phi / 2.0).sin().powi(2), (psi / 2.0).sin().powi(2));
            let s = EnsembleSpec::jue_ratio(n, theta, tau).unwrap();
            for (side, sign) in [(Side::Upper, 1.0), (Side::Lower, -1.0)] {
                let m = soft_map(&s, side).unwrap();
                let t = ((phi + sign * psi) / 2.0).sin().powi(2);
                assert!((m.mu - t).abs() < 1e-12);
                let trig = nf.powf(-2.0 / 3.0)
                    * (tau * tau * (phi + sign * psi).sin().powi(4) / (4.0 * phi.sin() * psi.sin())).cbrt();
                assert!((m.sigma - sign * trig).abs() <= 1e-12 * trig, "{}", m.sigma / trig);
            }
        }
    }

    #[test]
    fn degenerate_and_missing_edges() {
        let l = EnsembleSpec::lue_fixed(10, 0.0).unwrap();
        assert!(matches!(soft_map(&l, Side::Lower), Err(Error::DegenerateEdge { .. })));
        assert!(soft_map(&l, Side::Upper).is_ok());
        let j = EnsembleSpec::jue_fixed(10, 0.0, 0.0).unwrap();
        assert!(matches!(soft_map(&j, Side::Upper), Err(Error::DegenerateEdge { .. })));
        assert!(matches!(
            hard_map(&EnsembleSpec::gue(4).unwrap(), Side::Lower),
            Err(Error::NoHardEdge(_))
        ));
        assert!(hard_map(&EnsembleSpec::lue_ratio(10, 4.0).unwrap(), Side::Lower).is_err());
    }

    #[test]
    fn hard_edges() {
        let n = 40;
        let m = hard_map(&EnsembleSpec::lue_fixed(n, 2.5).unwrap(), Side::Lower).unwrap();
        assert_eq!((m.sigma, m.mu), (1.0 / (4.0 * n as f64), 0.0));
        assert!(matches!(m.regime, Regime::Hard { alpha, .. } if alpha == 2.5));
        let j = EnsembleSpec::jue_fixed(n, 1.0, 3.0).unwrap();
        let lo = hard_map(&j, Side::Lower).unwrap();
        assert_eq!(lo.sigma, 1.0 / (4.0 * (n * n) as f64));
        assert!(matches!(lo.regime, Regime::Hard { alpha, .. } if alpha == 1.0));
        let up = hard_map(&j, Side::Upper).unwrap();
        assert_eq!((up.sigma, up.mu), (-1.0 / (4.0 * (n * n) as f64), 1.0));
        assert!(matches!(up.regime, Regime::Hard { alpha, .. } if alpha == 3.0));
    }

    #[test]
    fn coefficient_errors() {
        let ns = [10, 20, 40, 80];
        // Hermite: λ and p are exact, q carries the −1 of q(x) = x² − 1
        let g = coefficient_convergence_report(&EnsembleSpec::gue(1).unwrap(), 0.7, &ns).unwrap();
        for row in &g.rows {
            assert_eq!(row[1], 0.0);
            assert_eq!(row[3], 0.0);
            assert!((row[2] - 1.0 / row[0]).abs() < 1e-12);
        }
        // integer θ: α = (θ−1)n exactly, so only the −1/2 of q survives
        let l = coefficient_convergence_report(&EnsembleSpec::lue_ratio(1, 3.0).unwrap(), 1.5, &ns).unwrap();
        for row in &l.rows {
            assert_eq!(row[1], 0.0);
            assert!((row[2] - 0.5 / row[0]).abs() < 1e-12);
        }
        // O(1/n) decay; with fixed Jacobi exponents q̃ ≡ 0 and q_n/n² = O(1/n²)
        for (s, q_ratio) in [
            (EnsembleSpec::lue_ratio(1, 2.5).unwrap(), (0.3, 0.7)),
            (EnsembleSpec::jue_ratio(1, 0.5, 0.25).unwrap(), (0.3, 0.7)),
            (EnsembleSpec::jue_fixed(1, 1.0, 2.0).unwrap(), (0.2, 0.3)),
        ] {
            let d = scaling_data(&s).unwrap();
            let t = 0.5 * (d.t_minus + d.t_plus);
            let tab = coefficient_convergence_report(&s, t, &ns).unwrap();
            for (col, (lo, hi)) in [(1, (0.3, 0.7)), (2, q_ratio)] {
                for w in tab.rows.windows(2) {
                    if w[0][col] > 1e-13 {
                        let ratio = w[1][col] / w[0][col];
                        assert!(ratio >= lo && ratio <= hi, "{s} col {col}: {ratio}");
                    }
                }
            }
        }
    }
}
