//! Fredholm determinants `det(I − K|_J)` and traces by Nyström
//! discretization on Gauss–Legendre nodes.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::ensemble::{scaling_map, EnsembleSpec, Zoom};
use crate::error::{Error, Result};
use crate::kernels::{criterion_t_report, grid_max_error, FiniteKernel, Kernel, LimitKernel};
use crate::orthopoly::gauss_legendre;
use crate::report::Table;

/// Airy intervals `(s, ∞)` are cut at `s + AIRY_TRUNCATION`; the neglected
/// trace is `τ(s + 40) < 1e−70`.
pub const AIRY_TRUNCATION: f64 = 40.0;

/// Smallest Nyström order accepted.
pub const MIN_ORDER: usize = 4;

/// `A = [√w_i K(x_i, x_j) √w_j]` on the `m`-point Gauss–Legendre rule of `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct NystromDiscretization {
    pub interval: (f64, f64),
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub matrix: DMatrix<f64>,
}

impl NystromDiscretization {
    pub fn new<K: Kernel + ?Sized>(kernel: &K, interval: (f64, f64), order: usize) -> Result<Self> {
        let (a, b) = interval;
        if order < MIN_ORDER {
            return Err(Error::InvalidParameter(format!(
                "Nystrom order must be >= {MIN_ORDER}, got {order}"
            )));
        }
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(Error::InvalidParameter(format!(
                "interval must be bounded with a <= b, got ({a}, {b})"
            )));
        }
        let rule = gauss_legendre(a, b, order)?;
        let k = kernel.matrix(&rule.nodes)?;
        let sw: Vec<f64> = rule.weights.iter().map(|w| w.sqrt()).collect();
        let mut matrix = DMatrix::zeros(order, order);
        for i in 0..order {
            for j in 0..order {
                let v = k[i * order + j];
                if !v.is_finite() {
                    return Err(Error::NonFinite {
                        x: rule.nodes[i],
                        y: rule.nodes[j],
                    });
                }
                matrix[(i, j)] = sw[i] * v * sw[j];
            }
        }
        Ok(NystromDiscretization {
            interval,
            order,
            nodes: rule.nodes,
            weights: rule.weights,
            matrix,
        })
    }

    /// Eigenvalues of `A`, ascending. Entries below `FLUSH · max|A|` are
    /// zeroed first; the eigensolver's rotations underflow on them.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        const FLUSH: f64 = 1e-100;
        let cut = FLUSH * self.matrix.amax();
        let a = self.matrix.map(|v| if v.abs() < cut { 0.0 } else { v });
        let eig = SymmetricEigen::try_new(a, f64::EPSILON, 10_000)
            .ok_or(Error::EigenFailure("symmetric eigensolve of the Nystrom matrix"))?;
        let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        if ev.iter().any(|v| !v.is_finite()) {
            return Err(Error::EigenFailure("non-finite eigenvalue of the Nystrom matrix"));
        }
        ev.sort_by(f64::total_cmp);
        Ok(ev)
    }

    /// `Π (1 − λ_i)`.
    pub fn det_eigen(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.iter().map(|l| 1.0 - l).product())
    }

    /// `det(I − A)` from an LU factorization.
    pub fn det_lu(&self) -> f64 {
        let id = DMatrix::<f64>::identity(self.order, self.order);
        (id - &self.matrix).lu().determinant()
    }

    /// `tr A = Σ w_i K(x_i, x_i)`.
    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }
}

/// `det(I − K|_J)` via the eigenvalues of the symmetrized Nyström matrix.
pub fn gap_probability<K: Kernel + ?Sized>(kernel: &K, interval: (f64, f64), order: usize) -> Result<f64> {
    NystromDiscretization::new(kernel, interval, order)?.det_eigen()
}

/// `det(I − K|_J)` via LU, the independent route.
pub fn gap_probability_lu<K: Kernel + ?Sized>(kernel: &K, interval: (f64, f64), order: usize) -> Result<f64> {
    Ok(NystromDiscretization::new(kernel, interval, order)?.det_lu())
}

/// `∫_J K(x, x) dx` on the same Gauss–Legendre nodes.
pub fn trace<K: Kernel + ?Sized>(kernel: &K, interval: (f64, f64), order: usize) -> Result<f64> {
    Ok(NystromDiscretization::new(kernel, interval, order)?.trace())
}

/// Gap probability with an order-doubling error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapEstimate {
    pub value: f64,
    pub order: usize,
    /// `|E(m) − E(2m)|`.
    pub doubling_error: f64,
}

pub fn gap_with_estimate<K: Kernel + ?Sized>(kernel: &K, interval: (f64, f64), order: usize) -> Result<GapEstimate> {
    let value = gap_probability(kernel, interval, order)?;
    let fine = gap_probability(kernel, interval, 2 * order)?;
    Ok(GapEstimate {
        value,
        order,
        doubling_error: (value - fine).abs(),
    })
}

fn limit_for(spec: &EnsembleSpec, zoom: Zoom) -> Result<LimitKernel> {
    Ok(LimitKernel::for_regime(&scaling_map(spec, zoom)?.regime))
}

/// Rows `(n, gap_n, gap_limit, abs_diff)` of `det(I − K̃_n|_J)` against the
/// limit-kernel determinant.
pub fn gap_convergence_report(
    spec: &EnsembleSpec,
    zoom: Zoom,
    interval: (f64, f64),
    n_list: &[usize],
    order: usize,
) -> Result<Table> {
    let mut t = Table::new(&["n", "gap_n", "gap_limit", "abs_diff"]);
    let mut limit_value: Option<(LimitKernel, f64)> = None;
    for &n in n_list {
        let s = spec.with_n(n)?;
        let k = FiniteKernel::scaled(s, zoom)?;
        let limit = limit_for(&s, zoom)?;
        let e_lim = match limit_value {
            Some((l, v)) if l == limit => v,
            _ => {
                let v = gap_probability(&limit, interval, order)?;
                limit_value = Some((limit, v));
                v
            }
        };
        let e_n = gap_probability(&k, interval, order)?;
        t.push(vec![n as f64, e_n, e_lim, (e_n - e_lim).abs()]);
    }
    Ok(t)
}

/// Everything the convergence checks look at, per `n`:
/// `(n, grid_error, diag_error, trace_gap, gap_diff)`.
pub fn convergence_report(
    spec: &EnsembleSpec,
    zoom: Zoom,
    interval: (f64, f64),
    grid: &[f64],
    xi0: f64,
    n_list: &[usize],
    order: usize,
) -> Result<Table> {
    if n_list.is_empty() {
        return Err(Error::InvalidParameter("n_list must not be empty".into()));
    }
    let mut t = Table::new(&["n", "grid_error", "diag_error", "trace_gap", "gap_diff"]);
    for &n in n_list {
        t.push(convergence_row(spec, zoom, interval, grid, xi0, n, order)?);
    }
    Ok(t)
}

/// One row of [`convergence_report`].
pub fn convergence_row(
    spec: &EnsembleSpec,
    zoom: Zoom,
    interval: (f64, f64),
    grid: &[f64],
    xi0: f64,
    n: usize,
    order: usize,
) -> Result<Vec<f64>> {
    let s = spec.with_n(n)?;
    let k = FiniteKernel::scaled(s, zoom)?;
    let limit = limit_for(&s, zoom)?;
    let grid_error = grid_max_error(&k, &limit, grid)?;
    let diag_error = (k.eval(xi0, xi0)? - limit.eval(xi0, xi0)?).abs();
    let tr = criterion_t_report(&k, interval, &limit, order)?;
    let e_n = gap_probability(&k, interval, order)?;
    let e_lim = gap_probability(&limit, interval, order)?;
    Ok(vec![n as f64, grid_error, diag_error, tr.gap, (e_n - e_lim).abs()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::Side;
    use crate::kernels::{airy_trace, bessel_trace, FnKernel};
    use crate::report::nonincreasing_with_slack;

    #[test]
    fn zero_kernel_and_empty_interval() {
        let zero = FnKernel(|_: f64, _: f64| 0.0);
        assert_eq!(gap_probability(&zero, (0.0, 3.0), 8).unwrap(), 1.0);
        assert_eq!(gap_probability(&LimitKernel::Dyson, (0.5, 0.5), 8).unwrap(), 1.0);
        assert!(gap_probability(&zero, (0.0, 1.0), 3).is_err());
        assert!(gap_probability(&zero, (1.0, 0.0), 8).is_err());
    }

    #[test]
    fn dyson_small_interval() {
        let g20 = gap_probability(&LimitKernel::Dyson, (0.0, 0.01), 20).unwrap();
        let g40 = gap_probability(&LimitKernel::Dyson, (0.0, 0.01), 40).unwrap();
        assert!((g20 - g40).abs() < 1e-14);
        assert!((g20 - 0.99).abs() <= 1e-4);
    }

    #[test]
    fn dyson_self_consistency() {
        let a = gap_probability(&LimitKernel::Dyson, (0.0, 1.0), 48).unwrap();
        let b = gap_probability(&LimitKernel::Dyson, (0.0, 1.0), 64).unwrap();
        assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn traces() {
        for (a, b) in [(0.0, 1.0), (-2.0, 0.5), (3.0, 7.25)] {
            assert!((trace(&LimitKernel::Dyson, (a, b), 16).unwrap() - (b - a)).abs() < 1e-12);
        }
        let t = trace(&LimitKernel::Airy, (0.0, AIRY_TRUNCATION), 80).unwrap();
        assert!((t - airy_trace(0.0).unwrap()).abs() < 1e-7);
        let b = trace(&LimitKernel::Bessel { alpha: 1.0 }, (0.0, 10.0), 40).unwrap();
        assert!((b - bessel_trace(1.0, 10.0).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn eigen_product_matches_lu() {
        for (k, j) in [
            (LimitKernel::Dyson, (0.0, 2.0)),
            (LimitKernel::Airy, (-2.0, -2.0 + AIRY_TRUNCATION)),
            (LimitKernel::Bessel { alpha: 0.0 }, (0.0, 4.0)),
        ] {
            let d = NystromDiscretization::new(&k, j, 60).unwrap();
            let (e, l) = (d.det_eigen().unwrap(), d.det_lu());
            assert!((e - l).abs() <= 1e-11 * e.abs().max(1e-300), "{k:?}: {e} vs {l}");
            let ev = d.eigenvalues().unwrap();
            assert!(ev[0] >= -1e-8 && ev[ev.len() - 1] <= 1.0 + 1e-8);
            let asym = (&d.matrix - d.matrix.transpose()).abs().max();
            assert!(asym <= 1e-14);
        }
    }

    #[test]
    fn nesting_monotone() {
        let outer = gap_probability(&LimitKernel::Dyson, (-1.0, 1.0), 40).unwrap();
        let inner = gap_probability(&LimitKernel::Dyson, (-0.5, 0.7), 40).unwrap();
        assert!(inner >= outer);
        let big = gap_probability(&LimitKernel::Airy, (-3.0, 37.0), 80).unwrap();
        let small = gap_probability(&LimitKernel::Airy, (-1.0, 37.0), 80).unwrap();
        assert!(small >= big);
    }

    #[test]
    fn gue_bulk_gap_ladder() {
        let spec = EnsembleSpec::gue(1).unwrap();
        let t = gap_convergence_report(&spec, Zoom::Bulk { t: 0.0 }, (-0.5, 0.5), &[25, 50, 100], 24).unwrap();
        assert!(nonincreasing_with_slack(&t.column("abs_diff").unwrap(), 0.1));
        let zero = gap_convergence_report(&spec, Zoom::Bulk { t: 0.0 }, (0.3, 0.3), &[25, 50], 8).unwrap();
        assert!(zero.rows.iter().all(|r| r[1] == 1.0 && r[2] == 1.0));
    }

    #[test]
    fn lue_alpha_zero_smallest_eigenvalue_is_exponential() {
        // P(x_min > t) = e^{−nt} exactly, so the scaled gap is e^{−s/4} for every n.
        let spec = EnsembleSpec::lue_fixed(1, 0.0).unwrap();
        for s in [0.5, 1.0, 3.0] {
            let t = gap_convergence_report(&spec, Zoom::Hard { side: Side::Lower }, (0.0, s), &[5, 25], 24).unwrap();
            for r in &t.rows {
                assert!((r[1] - (-s / 4.0).exp()).abs() < 1e-13, "{r:?}");
                assert!((r[2] - (-s / 4.0).exp()).abs() < 1e-13, "{r:?}");
            }
        }
    }

    #[test]
    fn lue_hard_edge_gap() {
        let spec = EnsembleSpec::lue_fixed(1, 2.0).unwrap();
        let t = gap_convergence_report(&spec, Zoom::Hard { side: Side::Lower }, (0.0, 2.0), &[25, 100], 24).unwrap();
        let d = t.column("abs_diff").unwrap();
        assert!(d[1] < d[0] && d[1] < 1e-2, "{d:?}");
    }
}
