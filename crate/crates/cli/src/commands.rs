use rayon::prelude::*;

use dpp_scaling::ensemble::{
    bulk_map, hard_map, limit_mass, scaling_data, scaling_map, soft_map, tricomi_map, EnsembleSpec, ScalingMap, Side,
    Zoom,
};
use dpp_scaling::fredholm::{convergence_row, gap_with_estimate, NystromDiscretization};
use dpp_scaling::kernels::{airy_trace, bessel_trace, density, density_mass, FiniteKernel, Kernel, LimitKernel};

use crate::config::{bulk_midpoint, RunConfig};
use crate::output::{Cell, Report};
use crate::CliError;

fn spec_of(cfg: &RunConfig) -> EnsembleSpec {
    cfg.spec.expect("ensemble commands resolve a spec")
}

fn zoom_of(cfg: &RunConfig) -> Zoom {
    cfg.zoom.expect("zoomed commands resolve a zoom")
}

fn limit_for(spec: &EnsembleSpec, zoom: Zoom) -> Result<LimitKernel, CliError> {
    Ok(LimitKernel::for_regime(&scaling_map(spec, zoom)?.regime))
}

/// Runs `f` for every `n` in parallel and returns the results in order.
fn per_n<T: Send>(cfg: &RunConfig, f: impl Fn(usize) -> Result<T, CliError> + Sync) -> Result<Vec<T>, CliError> {
    let ns = cfg.n_list.as_deref().unwrap_or(&[]);
    ns.par_iter().map(|&n| f(n)).collect()
}

fn poly(coeffs: &[f64]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        let term = if k == 0 {
            format!("{c}")
        } else if c == 1.0 {
            mono
        } else if c == -1.0 {
            format!("-{mono}")
        } else {
            format!("{c}{mono}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => s += &format!(" - {rest}"),
            None => s += &format!(" + {t}"),
        }
    }
    s
}

fn map_rows(report: &mut Report, name: &str, map: Result<ScalingMap, dpp_scaling::Error>) {
    match map {
        Ok(m) => {
            report.push(vec![format!("{name}_sigma").into(), m.sigma.into()]);
            report.push(vec![format!("{name}_mu").into(), m.mu.into()]);
        }
        Err(e) => report.push(vec![format!("{name}_sigma").into(), format!("n/a: {e}").into()]),
    }
}

pub fn info(cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = spec_of(cfg);
    let sl = tricomi_map(&spec.family())?;
    let d = scaling_data(&spec)?;
    let (wa, wb) = spec.weight_parameters();
    let mut r = Report::new(cfg.to_json(), &["quantity", "value"]);
    r.push(vec!["n".into(), spec.n.into()]);
    r.push(vec!["weight_alpha".into(), wa.into()]);
    r.push(vec!["weight_beta".into(), wb.into()]);
    r.push(vec!["p".into(), poly(&sl.p).into()]);
    r.push(vec!["r".into(), poly(&sl.r).into()]);
    let half_r_prime = 0.5 * sl.r_prime();
    let q = match half_r_prime {
        c if c < 0.0 => format!("r^2/(4p) - {}", -c),
        c => format!("r^2/(4p) + {c}"),
    };
    r.push(vec!["q".into(), q.into()]);
    r.push(vec!["lambda_n".into(), sl.lambda(spec.n).into()]);
    r.push(vec!["kappa".into(), d.kappa.into()]);
    r.push(vec!["kappa_prime".into(), d.kappa_prime.into()]);
    r.push(vec!["kappa_dprime".into(), d.kappa_dprime.into()]);
    r.push(vec!["omega".into(), d.omega.into()]);
    r.push(vec!["t_minus".into(), d.t_minus.into()]);
    r.push(vec!["t_plus".into(), d.t_plus.into()]);
    for (name, edge) in [("hard_edge_lower", d.hard_edge), ("hard_edge_upper", d.upper_hard_edge)] {
        match edge {
            Some(h) => {
                r.push(vec![name.into(), "yes".into()]);
                r.push(vec![format!("{name}_bessel_index").into(), h.alpha_index.into()]);
            }
            None => r.push(vec![name.into(), "no".into()]),
        }
    }
    let t = match cfg.zoom {
        Some(Zoom::Bulk { t }) => t,
        _ => bulk_midpoint(&spec)?,
    };
    r.push(vec!["bulk_t".into(), t.into()]);
    map_rows(&mut r, "bulk", bulk_map(&spec, t));
    map_rows(&mut r, "soft_lower", soft_map(&spec, Side::Lower));
    map_rows(&mut r, "soft_upper", soft_map(&spec, Side::Upper));
    map_rows(&mut r, "hard_lower", hard_map(&spec, Side::Lower));
    map_rows(&mut r, "hard_upper", hard_map(&spec, Side::Upper));
    Ok(r)
}

pub fn kernel(cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = spec_of(cfg);
    let zoom = zoom_of(cfg);
    let grid = &cfg.grid_points;
    let m = grid.len();
    let blocks = per_n(cfg, |n| {
        let k = FiniteKernel::scaled(spec.with_n(n)?, zoom)?;
        let limit = LimitKernel::for_regime(&k.map().expect("scaled kernel has a map").regime);
        Ok((k.matrix(grid)?, limit.matrix(grid)?))
    })?;
    let mut r = Report::new(cfg.to_json(), &["n", "xi", "eta", "k_n", "k_limit", "abs_error"]);
    for (&n, (kn, kl)) in cfg.n_list.as_deref().unwrap().iter().zip(&blocks) {
        for i in 0..m {
            for j in 0..m {
                let (a, b) = (kn[i * m + j], kl[i * m + j]);
                r.push(vec![
                    n.into(),
                    grid[i].into(),
                    grid[j].into(),
                    a.into(),
                    b.into(),
                    (a - b).abs().into(),
                ]);
            }
        }
    }
    Ok(r)
}

pub fn density_cmd(cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = spec_of(cfg);
    let d = scaling_data(&spec)?;
    let (lo, hi) = d.t_domain();
    let mut ts = Vec::new();
    for &t in &cfg.grid_points {
        if t > lo && t < hi {
            ts.push(t);
        } else {
            eprintln!("warning: dropping t = {t} outside the support ({lo}, {hi})");
        }
    }
    let mass_limit = limit_mass(&spec)?;
    let blocks = per_n(cfg, |n| {
        let s = spec.with_n(n)?;
        let k = FiniteKernel::new(s)?;
        let rho: Vec<f64> = ts.par_iter().map(|&t| density(&k, t)).collect::<Result<_, _>>()?;
        Ok((rho, density_mass(&s)?))
    })?;
    let mut r = Report::new(cfg.to_json(), &["n", "t", "rho_n", "rho_limit"]);
    for (&n, (rho, mass)) in cfg.n_list.as_deref().unwrap().iter().zip(&blocks) {
        for (&t, &v) in ts.iter().zip(rho) {
            r.push(vec![n.into(), t.into(), v.into(), d.limit_density(t).into()]);
        }
        r.push(vec![n.into(), "mass".into(), (*mass).into(), mass_limit.into()]);
    }
    Ok(r)
}

fn trace_reference(limit: &LimitKernel, (a, b): (f64, f64)) -> Result<f64, CliError> {
    Ok(match *limit {
        LimitKernel::Dyson => b - a,
        LimitKernel::Airy => airy_trace(a)? - airy_trace(b)?,
        LimitKernel::Bessel { alpha } => bessel_trace(alpha, b)? - bessel_trace(alpha, a)?,
    })
}

pub fn gap(cfg: &RunConfig) -> Result<Report, CliError> {
    let interval = cfg.interval.expect("gap resolves an interval");
    let m = cfg.quad_order;
    if let Some(limit) = cfg.limit {
        let est = gap_with_estimate(&limit, interval, m)?;
        let tr = NystromDiscretization::new(&limit, interval, m)?.trace();
        let mut r = Report::new(
            cfg.to_json(),
            &[
                "kernel",
                "a",
                "b",
                "order",
                "gap",
                "doubling_error",
                "trace",
                "trace_reference",
            ],
        );
        r.push(vec![
            limit.name().into(),
            interval.0.into(),
            interval.1.into(),
            m.into(),
            est.value.into(),
            est.doubling_error.into(),
            tr.into(),
            trace_reference(&limit, interval)?.into(),
        ]);
        return Ok(r);
    }
    let spec = spec_of(cfg);
    let zoom = zoom_of(cfg);
    let limit = limit_for(&spec, zoom)?;
    let lim = gap_with_estimate(&limit, interval, m)?;
    let rows = per_n(cfg, |n| {
        let k = FiniteKernel::scaled(spec.with_n(n)?, zoom)?;
        Ok(gap_with_estimate(&k, interval, m)?)
    })?;
    let mut r = Report::new(
        cfg.to_json(),
        &[
            "n",
            "limit",
            "order",
            "gap_n",
            "gap_limit",
            "abs_diff",
            "doubling_error_n",
            "doubling_error_limit",
        ],
    );
    for (&n, e) in cfg.n_list.as_deref().unwrap().iter().zip(&rows) {
        r.push(vec![
            n.into(),
            limit.name().into(),
            m.into(),
            e.value.into(),
            lim.value.into(),
            (e.value - lim.value).abs().into(),
            e.doubling_error.into(),
            lim.doubling_error.into(),
        ]);
    }
    Ok(r)
}

/// Diagonal reference point: `0` for bulk and soft zooms, the grid midpoint
/// for hard edges where `0` is the boundary.
pub fn diagonal_point(zoom: &Zoom, grid: &[f64]) -> f64 {
    match zoom {
        Zoom::Hard { .. } => 0.5 * (grid[0] + grid[grid.len() - 1]),
        _ => 0.0,
    }
}

pub fn converge(cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = spec_of(cfg);
    let zoom = zoom_of(cfg);
    let interval = cfg.interval.expect("converge resolves an interval");
    let grid = &cfg.grid_points;
    let xi0 = diagonal_point(&zoom, grid);
    let limit = limit_for(&spec, zoom)?;
    let rows = per_n(cfg, |n| {
        Ok(convergence_row(&spec, zoom, interval, grid, xi0, n, cfg.quad_order)?)
    })?;
    let mut r = Report::new(
        cfg.to_json(),
        &["n", "limit", "grid_error", "diag_error", "trace_gap", "gap_diff"],
    );
    for (&n, row) in cfg.n_list.as_deref().unwrap().iter().zip(&rows) {
        let mut cells: Vec<Cell> = vec![n.into(), limit.name().into()];
        cells.extend(row[1..].iter().map(|&v| Cell::from(v)));
        r.push(cells);
    }
    Ok(r)
}
