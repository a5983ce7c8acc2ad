use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the documented evaluation window of a function.
    #[error("{func}: argument {arg} outside domain {domain}")]
    Domain {
        func: &'static str,
        arg: f64,
        domain: &'static str,
    },

    /// A point handed to a weighted function or kernel lies outside the support.
    #[error("{what} = {value} lies outside the support ({lo}, {hi})")]
    OutOfSupport {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// Ensemble or family parameters violate their invariants.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested soft edge collides with a hard edge (the scaling degenerates).
    #[error("degenerate soft edge at t = {t}: the edge coincides with a hard edge of the support")]
    DegenerateEdge { t: f64 },

    /// A hard-edge scaling was requested where the edge is not hard.
    #[error("no hard edge: {0}")]
    NoHardEdge(&'static str),

    /// A bulk scaling was requested at a point that is not strictly inside the edges.
    #[error("t = {t} is not strictly inside the bulk ({lo}, {hi})")]
    NotInBulk { t: f64, lo: f64, hi: f64 },

    /// The operation is not defined for the given input.
    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    /// The dense or tridiagonal eigensolver did not converge.
    #[error("eigensolver failed to converge ({0})")]
    EigenFailure(&'static str),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("adaptive quadrature did not reach tolerance {tol:e} (estimate {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },

    /// A kernel produced a NaN or infinite value at a quadrature node.
    #[error("non-finite kernel value at ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
