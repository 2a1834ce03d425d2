//! Combinatorial polygonal surfaces.
//!
//! A regular polygonal surface — every face a unit-side regular polygon — is
//! determined by pure combinatorics: which polygon sides are glued to which.
//! This crate represents such surfaces as gluing data, computes their exact
//! combinatorial curvature and Euler characteristic, classifies the conformal
//! type of the universal cover by curvature sign, develops finite balls of
//! universal covers, realizes faces as spherical polygons to estimate
//! geodesic diameters, and measures combinatorial isoperimetric profiles.
//!
//! The `polysurf` binary exposes all of it on the command line; see the
//! repository README for the `psc-1` interchange format.

pub mod catalog;
pub mod complex;
pub mod cover;
pub mod curvature;
pub mod gauss_bonnet;
pub mod generators;
pub mod isoperimetric;
pub mod metric;
pub mod psc;
pub mod render;
pub mod spherical;

pub use complex::{
    build_complex, rooted_isomorphic, ComplexError, FaceDecl, Gluing, GluingData,
    PolygonalComplex, Slot, VertexRecord, VertexType,
};
pub use curvature::{
    angle_sum, classify, curvature, exclusion_check, AngleSum, CurvatureProfile, Rational,
    SignSummary, TypeVerdict,
};
pub use gauss_bonnet::{
    check_gauss_bonnet, curvature_sum, euler_characteristic, vertex_bound, GaussBonnetReport,
};
pub use cover::{develop_universal_cover, verify_covering, CoverBall, DevelopmentLimit};
pub use generators::{generate, verify_generator, GeneratorSpec, PlatonicSolid};
pub use psc::{parse_psc, write_psc};
pub use spherical::{critical_radius, phi_s, polygon_spec, spherical_angle_sum};
