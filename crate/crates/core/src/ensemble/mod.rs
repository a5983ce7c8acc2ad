//! Ensembles, their Sturm–Liouville data and the bulk / soft / hard scaling
//! maps.

mod scaling;
mod spec;
mod tricomi;

pub use scaling::{
    bulk_map, coefficient_convergence_report, hard_map, limit_density, limit_mass, scaling_data, scaling_map, soft_map,
    HardEdge, Regime, ScalingData, ScalingMap, Side, Zoom,
};
pub use spec::{Ensemble, EnsembleSpec, ParameterMode};
pub use tricomi::{tricomi_map, SturmLiouvilleData};
