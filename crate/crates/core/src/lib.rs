//! Projection kernels of the Gaussian, Laguerre and Jacobi unitary
//! ensembles, their bulk, soft-edge and hard-edge scaling limits, and
//! Fredholm gap probabilities.
//!
//! ```
//! use dpp_scaling::ensemble::{EnsembleSpec, Zoom};
//! use dpp_scaling::kernels::{FiniteKernel, Kernel, LimitKernel};
//!
//! let k = FiniteKernel::scaled(EnsembleSpec::gue(100)?, Zoom::Bulk { t: 0.0 })?;
//! assert!((k.eval(0.0, 1.0)? - LimitKernel::Dyson.eval(0.0, 1.0)?).abs() < 0.01);
//! # Ok::<(), dpp_scaling::Error>(())
//! ```

pub mod ensemble;
pub mod error;
pub mod fredholm;
pub mod kernels;
pub mod orthopoly;
pub mod quad;
pub mod report;
pub mod specfun;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ensembles.md")]
    mod ensembles {}
    #[doc = include_str!("../../../book/src/scaling.md")]
    mod scaling {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/gap-probabilities.md")]
    mod gap_probabilities {}
    #[doc = include_str!("../../../book/src/convergence.md")]
    mod convergence {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
