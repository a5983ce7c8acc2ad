use clap::{Args, ValueEnum};
use serde_json::{Map, Value};

use dpp_scaling::ensemble::{scaling_data, Ensemble, EnsembleSpec, ParameterMode, Side, Zoom};
use dpp_scaling::kernels::{default_grid, LimitKernel};
use dpp_scaling::Error;

use crate::output::Format;
use crate::CliError;

pub const DEFAULT_N: usize = 100;
pub const DEFAULT_LADDER: [usize; 4] = [25, 50, 100, 200];
pub const DEFAULT_QUAD_ORDER: usize = 40;
pub const MAX_GRID_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    Gue,
    Lue,
    Jue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Bulk,
    Soft,
    Hard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Dyson,
    Airy,
    Bessel,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum)]
    pub ensemble: Option<EnsembleArg>,
    /// LUE: limit ratio m/n; JUE: m₁/(m₁ + m₂).
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// JUE: n/(m₁ + m₂).
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated list of n.
    #[arg(long, value_delimiter = ',')]
    pub n_list: Option<Vec<String>>,
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
    /// Bulk point in the scaled variable.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long, num_args = 3, value_names = ["MIN", "MAX", "STEP"], allow_negative_numbers = true)]
    pub grid: Option<Vec<f64>>,
    #[arg(long)]
    pub quad_order: Option<usize>,
    /// Limit kernel for `gap` without an ensemble.
    #[arg(long, value_enum)]
    pub kernel: Option<KernelArg>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

/// Grid `MIN, MIN + STEP, …` up to `MAX` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn parse(v: &[f64]) -> Result<Self, CliError> {
        let g = GridSpec {
            min: v[0],
            max: v[1],
            step: v[2],
        };
        if !(g.min.is_finite() && g.max.is_finite() && g.step.is_finite()) {
            return Err(CliError::Usage("--grid values must be finite".into()));
        }
        if g.step <= 0.0 || g.max < g.min {
            return Err(CliError::Usage(format!(
                "--grid needs MIN <= MAX and STEP > 0, got {} {} {}",
                g.min, g.max, g.step
            )));
        }
        if g.count() > MAX_GRID_POINTS {
            return Err(CliError::Usage(format!(
                "--grid has more than {MAX_GRID_POINTS} points"
            )));
        }
        Ok(g)
    }

    pub fn count(&self) -> usize {
        ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count()).map(|i| self.min + i as f64 * self.step).collect()
    }
}

/// Everything a command needs after defaults and validation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: &'static str,
    pub spec: Option<EnsembleSpec>,
    pub zoom: Option<Zoom>,
    pub n_list: Option<Vec<usize>>,
    pub interval: Option<(f64, f64)>,
    pub grid: Option<GridSpec>,
    pub grid_points: Vec<f64>,
    pub quad_order: usize,
    pub limit: Option<LimitKernel>,
    pub format: Format,
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn parse_n_list(raw: &[String]) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for s in raw {
        let s = s.trim();
        if s.is_empty() {
            continue;
        }
        match s.parse::<usize>() {
            Ok(n) if n >= 1 => out.push(n),
            _ => return usage(format!("--n-list entry '{s}' is not a positive integer")),
        }
    }
    if out.is_empty() {
        return usage("--n-list must not be empty");
    }
    Ok(out)
}

fn resolve_spec(a: &CommonArgs, n: usize) -> Result<EnsembleSpec, CliError> {
    let Some(e) = a.ensemble else {
        return usage("--ensemble is required");
    };
    let mode = match e {
        EnsembleArg::Gue => {
            if a.theta.is_some() || a.tau.is_some() || a.alpha.is_some() || a.beta.is_some() {
                return usage("gue takes no --theta/--tau/--alpha/--beta");
            }
            ParameterMode::Fixed { alpha: 0.0, beta: 0.0 }
        }
        EnsembleArg::Lue => {
            if a.tau.is_some() || a.beta.is_some() {
                return usage("lue takes no --tau/--beta");
            }
            match (a.theta, a.alpha) {
                (Some(_), Some(_)) => return usage("lue takes either --theta or --alpha, not both"),
                (Some(theta), None) => ParameterMode::Ratio { theta, tau: 0.0 },
                (None, alpha) => ParameterMode::Fixed {
                    alpha: alpha.unwrap_or(0.0),
                    beta: 0.0,
                },
            }
        }
        EnsembleArg::Jue => {
            let ratio = a.theta.is_some() || a.tau.is_some();
            let fixed = a.alpha.is_some() || a.beta.is_some();
            match (ratio, fixed) {
                (true, true) => return usage("jue takes either --theta/--tau or --alpha/--beta, not both"),
                (true, false) => match (a.theta, a.tau) {
                    (Some(theta), Some(tau)) => ParameterMode::Ratio { theta, tau },
                    _ => return usage("jue ratio mode needs both --theta and --tau"),
                },
                (false, _) => ParameterMode::Fixed {
                    alpha: a.alpha.unwrap_or(0.0),
                    beta: a.beta.unwrap_or(0.0),
                },
            }
        }
    };
    let ensemble = match e {
        EnsembleArg::Gue => Ensemble::Gue,
        EnsembleArg::Lue => Ensemble::Lue,
        EnsembleArg::Jue => Ensemble::Jue,
    };
    EnsembleSpec::new(ensemble, n, mode).map_err(CliError::from)
}

/// Default bulk point: the middle of `(t₋, t₊)`.
pub fn bulk_midpoint(spec: &EnsembleSpec) -> Result<f64, CliError> {
    let d = scaling_data(spec)?;
    Ok(0.5 * (d.t_minus + d.t_plus))
}

fn resolve_zoom(a: &CommonArgs, spec: &EnsembleSpec) -> Result<Zoom, CliError> {
    let side = |default| match a.side {
        None => default,
        Some(SideArg::Lower) => Side::Lower,
        Some(SideArg::Upper) => Side::Upper,
    };
    let regime = a.regime.unwrap_or(RegimeArg::Bulk);
    if regime != RegimeArg::Bulk && a.t.is_some() {
        return usage("--t applies to --regime bulk only");
    }
    if regime == RegimeArg::Bulk && a.side.is_some() {
        return usage("--side applies to --regime soft or hard only");
    }
    Ok(match regime {
        RegimeArg::Bulk => Zoom::Bulk {
            t: match a.t {
                Some(t) => t,
                None => bulk_midpoint(spec)?,
            },
        },
        RegimeArg::Soft => Zoom::Soft {
            side: side(Side::Upper),
        },
        RegimeArg::Hard => Zoom::Hard {
            side: side(Side::Lower),
        },
    })
}

fn resolve_interval(a: &CommonArgs) -> Result<Option<(f64, f64)>, CliError> {
    match &a.interval {
        None => Ok(None),
        Some(v) => {
            let (lo, hi) = (v[0], v[1]);
            if !(lo.is_finite() && hi.is_finite()) || lo > hi {
                return usage(format!("--interval needs finite A <= B, got {lo} {hi}"));
            }
            Ok(Some((lo, hi)))
        }
    }
}

/// Default gap interval for a zoom. Soft edges use a window past which the
/// Airy kernel is below `1e−16`.
pub fn default_interval(zoom: &Zoom) -> (f64, f64) {
    match zoom {
        Zoom::Bulk { .. } | Zoom::Hard { .. } => (0.0, 1.0),
        Zoom::Soft { .. } => (-2.0, 8.0),
    }
}

/// 19 equally spaced interior points of `(t₋, t₊)`.
pub fn default_density_grid(spec: &EnsembleSpec) -> Result<Vec<f64>, CliError> {
    let d = scaling_data(spec)?;
    let h = (d.t_plus - d.t_minus) / 20.0;
    Ok((1..20).map(|i| d.t_minus + i as f64 * h).collect())
}

impl RunConfig {
    pub fn resolve(command: &'static str, a: &CommonArgs) -> Result<RunConfig, CliError> {
        let quad_order = a.quad_order.unwrap_or(DEFAULT_QUAD_ORDER);
        if !(4..=dpp_scaling::orthopoly::MAX_ORDER).contains(&quad_order) {
            return usage(format!(
                "--quad-order must lie in [4, {}], got {quad_order}",
                dpp_scaling::orthopoly::MAX_ORDER
            ));
        }
        if a.n.is_some() && a.n_list.is_some() {
            return usage("give either --n or --n-list, not both");
        }
        let n_list = a.n_list.as_deref().map(parse_n_list).transpose()?;
        let grid = a.grid.as_deref().map(GridSpec::parse).transpose()?;
        let interval = resolve_interval(a)?;
        let mut cfg = RunConfig {
            command,
            spec: None,
            zoom: None,
            n_list: None,
            interval,
            grid,
            grid_points: grid.map(|g| g.points()).unwrap_or_default(),
            quad_order,
            limit: None,
            format: a.format,
        };

        if a.kernel.is_some() && command != "gap" {
            return usage("--kernel applies to the gap command only");
        }
        if let (Some(kind), "gap") = (a.kernel, command) {
            if a.ensemble.is_some() {
                return usage("give either --kernel or --ensemble, not both");
            }
            let limit = match kind {
                KernelArg::Dyson => LimitKernel::Dyson,
                KernelArg::Airy => LimitKernel::Airy,
                KernelArg::Bessel => {
                    let alpha = a.alpha.unwrap_or(0.0);
                    if !(alpha >= 0.0 && alpha.is_finite()) {
                        return usage(format!("Bessel order must be >= 0, got {alpha}"));
                    }
                    LimitKernel::Bessel { alpha }
                }
            };
            if interval.is_none() {
                return usage("--interval is required with --kernel");
            }
            if let (LimitKernel::Bessel { .. }, Some((lo, _))) = (limit, interval) {
                if lo < 0.0 {
                    return usage("the Bessel kernel lives on (0, ∞); --interval must start at >= 0");
                }
            }
            cfg.limit = Some(limit);
            return Ok(cfg);
        }

        let first_n = match (&n_list, a.n) {
            (Some(l), _) => l[0],
            (None, Some(n)) => n,
            (None, None) => DEFAULT_N,
        };
        let spec = resolve_spec(a, first_n)?;
        if command == "converge" {
            cfg.n_list = Some(n_list.unwrap_or_else(|| DEFAULT_LADDER.to_vec()));
        } else {
            cfg.n_list = Some(n_list.unwrap_or_else(|| vec![first_n]));
        }
        for &n in cfg.n_list.as_ref().unwrap() {
            spec.with_n(n)?;
        }
        if matches!(command, "kernel" | "gap" | "converge" | "info") {
            let zoom = resolve_zoom(a, &spec)?;
            if matches!(command, "gap" | "converge") && cfg.interval.is_none() {
                cfg.interval = Some(default_interval(&zoom));
            }
            if matches!(command, "kernel" | "converge") && cfg.grid.is_none() {
                cfg.grid_points = default_grid(&zoom);
            }
            cfg.zoom = Some(zoom);
        }
        if command == "density" && cfg.grid.is_none() {
            cfg.grid_points = default_density_grid(&spec)?;
        }
        cfg.spec = Some(spec);
        Ok(cfg)
    }

    /// The resolved configuration as recorded in every output header.
    pub fn to_json(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), self.command.into());
        m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        if let Some(spec) = &self.spec {
            m.insert("ensemble".into(), spec.ensemble.name().into());
            match spec.mode {
                ParameterMode::Fixed { alpha, beta } => {
                    m.insert("mode".into(), "fixed".into());
                    if spec.ensemble != Ensemble::Gue {
                        m.insert("alpha".into(), alpha.into());
                    }
                    if spec.ensemble == Ensemble::Jue {
                        m.insert("beta".into(), beta.into());
                    }
                }
                ParameterMode::Ratio { theta, tau } => {
                    m.insert("mode".into(), "ratio".into());
                    m.insert("theta".into(), theta.into());
                    if spec.ensemble == Ensemble::Jue {
                        m.insert("tau".into(), tau.into());
                    }
                }
            }
        }
        if let Some(l) = &self.n_list {
            m.insert("n_list".into(), l.clone().into());
        }
        if let Some(z) = &self.zoom {
            match *z {
                Zoom::Bulk { t } => {
                    m.insert("regime".into(), "bulk".into());
                    m.insert("t".into(), t.into());
                }
                Zoom::Soft { side } => {
                    m.insert("regime".into(), "soft".into());
                    m.insert("side".into(), side.name().into());
                }
                Zoom::Hard { side } => {
                    m.insert("regime".into(), "hard".into());
                    m.insert("side".into(), side.name().into());
                }
            }
        }
        if let Some(k) = &self.limit {
            m.insert("kernel".into(), k.name().into());
        }
        if let Some((a, b)) = self.interval {
            m.insert("interval".into(), vec![a, b].into());
        }
        if let Some(g) = &self.grid {
            m.insert("grid".into(), vec![g.min, g.max, g.step].into());
        } else if !self.grid_points.is_empty() {
            m.insert("grid_points".into(), self.grid_points.clone().into());
        }
        m.insert("quad_order".into(), self.quad_order.into());
        m.insert("format".into(), serde_json::to_value(self.format).unwrap());
        m
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::OutOfSupport { .. }
            | Error::DegenerateEdge { .. }
            | Error::NoHardEdge(_)
            | Error::NotInBulk { .. }
            | Error::Unsupported(_) => CliError::Usage(e.to_string()),
            Error::Domain { .. } | Error::EigenFailure(_) | Error::Quadrature { .. } | Error::NonFinite { .. } => {
                CliError::Compute(e.to_string())
            }
        }
    }
}
