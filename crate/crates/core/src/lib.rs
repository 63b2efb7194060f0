//! Exact set-valued analysis of cusco and minimal cusco maps on compact
//! real domains: envelopes of quasicontinuous selections, Vietoris-topology
//! membership and refinement, continuous approximation, the fiberwise
//! Hausdorff sup-metric, and executable Player-II tactics for the Choquet
//! and strong Choquet games on the hyperspace.
//!
//! All arithmetic is exact rational; every verdict the library emits is a
//! finite computation over affine comparisons.

pub mod approx;
pub mod cusco;
pub mod error;
pub mod insertion;
pub mod metric;
pub mod piecewise;
pub mod rational;
pub mod refine;
pub mod region;
pub mod separation;
pub mod space;

pub use approx::{
    approx_upper, approx_upper_traced, approx_vietoris, clamp_bounds, tube_with_pinches,
    verify_pinch, ClampedRegion, Pinch, PinchedTube, SandwichTrace,
};
pub use cusco::{add_minimal, cluster_set, continuity_set, envelope, CofiniteSet, CuscoMap};
pub use error::{Error, Result};
pub use metric::{hausdorff_fiber, l_distance};
pub use separation::{
    fiberwise_disjoint_somewhere, separate, upper_witness_for_lower, Separation, UpperWitness,
};
pub use refine::{
    ball_radius_lower, ball_radius_upper, closed_tube_in_upper, dilate_tube_floor,
    local_base_tube, regular_refine, tube_base_refine,
};
pub use insertion::{insert_continuous, monotone_approx, Direction};
pub use piecewise::{Affine, ClassKind, Comparison, PiecewiseFn, SemicontinuityClass};
pub use rational::{ExtQ, Q};
pub use region::{
    contains_map, contains_map_region, contains_map_tube, meets, member_nbhd, member_nbhd_fn,
    connectedize, ClosedTube, Containment, Meet, OpenRegion, Tube, UpperRegion, VietorisNbhd,
    XYBox,
};
pub use space::SpaceX;
