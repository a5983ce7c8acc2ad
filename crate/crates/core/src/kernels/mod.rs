//! Finite projection kernels, their scaled versions, the limit kernels and
//! the trace/diagonal convergence checks that compare them.

mod finite;
mod limit;

pub use finite::{density, density_mass, finite_trace, FiniteKernel};
pub use limit::{
    airy_eval, airy_integral, airy_trace, bessel_eval, bessel_integral, bessel_trace, dyson_eval, dyson_integral,
    LimitKernel,
};

use crate::ensemble::{EnsembleSpec, Zoom};
use crate::error::{Error, Result};
use crate::orthopoly::gauss_legendre;
use crate::report::Table;

/// A symmetric kernel `K(x, y)`.
pub trait Kernel: Sync {
    fn eval(&self, x: f64, y: f64) -> Result<f64>;

    /// Row-major `[K(x_i, x_j)]`, filled from the upper triangle.
    fn matrix(&self, nodes: &[f64]) -> Result<Vec<f64>> {
        let m = nodes.len();
        let mut out = vec![0.0; m * m];
        for i in 0..m {
            for j in i..m {
                let v = self.eval(nodes[i], nodes[j])?;
                out[i * m + j] = v;
                out[j * m + i] = v;
            }
        }
        Ok(out)
    }
}

impl<K: Kernel + ?Sized> Kernel for &K {
    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        (**self).eval(x, y)
    }

    fn matrix(&self, nodes: &[f64]) -> Result<Vec<f64>> {
        (**self).matrix(nodes)
    }
}

/// Adapter for closures.
pub struct FnKernel<F>(pub F);

impl<F: Fn(f64, f64) -> f64 + Sync> Kernel for FnKernel<F> {
    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        Ok((self.0)(x, y))
    }
}

/// Traces of `K̃_n` and of its limit over `J`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceComparison {
    pub trace_n: f64,
    pub trace_limit: f64,
    pub gap: f64,
}

/// `∫_J K̃_n(ξ,ξ) dξ` against `∫_J K(ξ,ξ) dξ` with an `m`-point
/// Gauss–Legendre rule on `J = (a, b)`.
pub fn criterion_t_report(
    kernel: &FiniteKernel,
    interval: (f64, f64),
    limit: &LimitKernel,
    quad_order: usize,
) -> Result<TraceComparison> {
    let (a, b) = interval;
    let rule = gauss_legendre(a, b, quad_order)?;
    let trace_n = rule.try_integrate(|x| kernel.eval(x, x))?;
    let trace_limit = rule.try_integrate(|x| limit.eval(x, x))?;
    Ok(TraceComparison {
        trace_n,
        trace_limit,
        gap: (trace_n - trace_limit).abs(),
    })
}

/// `max_{ξ,η ∈ grid} |K̃_n(ξ,η) − K(ξ,η)|`.
pub fn grid_max_error(kernel: &FiniteKernel, limit: &LimitKernel, grid: &[f64]) -> Result<f64> {
    let kn = kernel.matrix(grid)?;
    let kl = limit.matrix(grid)?;
    let mut worst = 0.0f64;
    for (a, b) in kn.iter().zip(&kl) {
        let e = (a - b).abs();
        if !e.is_finite() {
            return Err(Error::NonFinite { x: *a, y: *b });
        }
        worst = worst.max(e);
    }
    Ok(worst)
}

/// Default 5-point grid for a zoom: centred at 0 for bulk and soft edges,
/// on `(0, 4]` for hard edges where the Bessel kernel lives.
pub fn default_grid(zoom: &Zoom) -> Vec<f64> {
    match zoom {
        Zoom::Bulk { .. } | Zoom::Soft { .. } => vec![-2.0, -1.0, 0.0, 1.0, 2.0],
        Zoom::Hard { .. } => vec![0.5, 1.0, 2.0, 3.0, 4.0],
    }
}

/// Rows `(n, grid_error, diag_error)`: the max grid error and
/// `|K̃_n(ξ₀,ξ₀) − K(ξ₀,ξ₀)|` along `n_list`.
pub fn kernel_convergence_report(
    spec: &EnsembleSpec,
    zoom: Zoom,
    grid: &[f64],
    xi0: f64,
    n_list: &[usize],
) -> Result<Table> {
    let mut t = Table::new(&["n", "grid_error", "diag_error"]);
    for &n in n_list {
        let k = FiniteKernel::scaled(spec.with_n(n)?, zoom)?;
        let limit = LimitKernel::for_regime(&k.map().expect("scaled kernel has a map").regime);
        let g = grid_max_error(&k, &limit, grid)?;
        let d = (k.eval(xi0, xi0)? - limit.eval(xi0, xi0)?).abs();
        t.push(vec![n as f64, g, d]);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::Side;
    use crate::report::nonincreasing_with_slack;

    #[test]
    fn dyson_trace_on_unit_interval() {
        let k = FiniteKernel::scaled(EnsembleSpec::gue(50).unwrap(), Zoom::Bulk { t: 0.0 }).unwrap();
        let r = criterion_t_report(&k, (0.0, 1.0), &LimitKernel::Dyson, 20).unwrap();
        assert!((r.trace_limit - 1.0).abs() < 1e-14);
        assert!(r.gap < 0.05);
    }

    #[test]
    fn gue_bulk_ladder() {
        let spec = EnsembleSpec::gue(1).unwrap();
        let zoom = Zoom::Bulk { t: 0.0 };
        let t = kernel_convergence_report(&spec, zoom, &default_grid(&zoom), 0.0, &[25, 50, 100]).unwrap();
        assert!(nonincreasing_with_slack(&t.column("grid_error").unwrap(), 0.1));
    }

    #[test]
    fn limit_selection() {
        let k = FiniteKernel::scaled(
            EnsembleSpec::lue_fixed(10, 2.0).unwrap(),
            Zoom::Hard { side: Side::Lower },
        )
        .unwrap();
        assert_eq!(
            LimitKernel::for_regime(&k.map().unwrap().regime),
            LimitKernel::Bessel { alpha: 2.0 }
        );
    }

    #[test]
    fn closure_kernel() {
        let k = FnKernel(|x: f64, y: f64| x * y);
        assert_eq!(k.matrix(&[1.0, 2.0]).unwrap(), vec![1.0, 2.0, 2.0, 4.0]);
    }
}
