//! Geometry of the Hessian metric: closed forms, certified distance
//! enclosures, region membership, Monte Carlo volumes, and covering
//! lattices.

mod curves;
mod distance;
mod lattice;
mod metric;
mod regions;

pub use crate::point::psi;
pub use curves::{curve_length, Polyline};
pub use distance::{
    ball_membership, sigma_estimate, sigma_lower, sigma_lower_exceeds, sigma_upper_quick,
    DistanceEstimate,
    EstimateStatus, Membership, C0, VALIDATED_RADIUS,
};
pub use lattice::{build_lattice, covering_violations, Lattice, LatticeConfig, COVERING_SLACK};
pub use metric::{
    hessian, hessian_det, hessian_inverse, hessian_spectral, metric_form_raw, radial_projection,
    SpectralDecomposition,
};
pub use regions::{
    ball_volume, in_d_region, lipschitz_norm_probe, real_ball_volume, DRegion, RegionQuery,
    VolumeEstimate, INCLUSION_MARGIN,
};

pub(crate) use regions::BallBound;
