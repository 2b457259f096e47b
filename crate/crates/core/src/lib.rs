//! Convex bodies in hyperbolic space (hyperboloid model): widths, thickness,
//! diameter, completeness, constant width and reducedness probes.

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod body;
pub mod error;
pub mod hull;
pub mod io;
pub mod lorentz;
pub mod optimize;
pub mod structure;
pub mod suite;
pub mod width;

pub use body::{
    ball_intersection, make_crosspolytope, make_polytope, make_regular_polygon, make_reuleaux,
    make_rhombus, ArcPolygon, Ball, CircArc, ConvexBody, Polytope,
};
pub use error::{GeomError, Result};
pub use lorentz::{
    dist, lambert_height, lorentz_dot, signed_dist, EquidistantSurface, GeodesicSegment, HPoint,
    Hyperplane, LorentzMap, Vector,
};
pub use structure::{CompletenessReport, DichotomyCase, DichotomyReport};
pub use suite::{run_suite, Report, Suite, VerifyConfig};
pub use width::{
    max_width, support_sinh, supporting_hyperplane, thickness, width_given_h, width_profile,
    StripSpec, SupportMode, WidthOptions, WidthWitness,
};
