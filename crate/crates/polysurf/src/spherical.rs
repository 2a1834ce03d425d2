//! Trigonometry of unit regular polygons on the radius-`r` sphere.
//!
//! A unit regular n-gon on the sphere of radius `r` exists for
//! `r > n/(2π)`; it is assembled from n isosceles triangles with base 1 and
//! apex angle `2π/n`. The base angle `φ(r, n)` satisfies
//!
//! ```text
//! sin²(φ) = (1 + cos(2π/n)) / (1 + cos(1/r))
//! ```
//!
//! and the polygon's interior angle is `2φ`. As `r → ∞` the interior angle
//! tends to the Euclidean `π − 2π/n`; as `r` shrinks toward `n/(2π)` it tends
//! to `π`. For any vertex-type whose Euclidean angle-sum is below `2π`, the
//! spherical angle-sum crosses `2π` at a unique threshold radius; the largest
//! threshold over a finite family is the critical radius beyond which the
//! whole family stays below `2π`.

use std::f64::consts::PI;

use thiserror::Error;

use crate::complex::VertexType;
use crate::curvature::angle_sum;

/// Residual tolerance for the defining equation of `φ`.
pub const PHI_RESIDUAL_TOL: f64 = 1e-12;
/// Absolute tolerance on threshold radii found by bisection.
pub const RADIUS_TOL: f64 = 1e-10;
const BISECTION_CAP: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphericalError {
    #[error("radius {r} is too small for a unit {n}-gon (needs r > {min})")]
    RadiusTooSmall { r: f64, n: usize, min: f64 },
    #[error("polygon needs at least 3 sides, got {0}")]
    BadN(usize),
    #[error("vertex-type {0} has Euclidean angle-sum >= 2π; no critical radius exists")]
    NotPositivelyCurved(VertexType),
    #[error("no vertex-types supplied")]
    EmptyTypes,
    #[error("bisection failed to converge within {0} iterations")]
    NonConvergence(usize),
}

/// Smallest admissible radius for a unit regular spherical n-gon.
pub fn min_radius(n: usize) -> f64 {
    n as f64 / (2.0 * PI)
}

/// The base angle of a unit regular r-spherical n-gon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalAngle {
    pub r: f64,
    pub n: usize,
    /// Base angle in `(0, π/2)`; the polygon's interior angle is `2·phi`.
    pub phi: f64,
}

impl SphericalAngle {
    pub fn interior_angle(&self) -> f64 {
        2.0 * self.phi
    }

    /// Residual of the defining equation at this angle.
    pub fn residual(&self) -> f64 {
        let rhs = rhs(self.r, self.n);
        let lhs = self.phi.sin().powi(2);
        ((lhs - rhs) / rhs).abs()
    }
}

fn check_rn(r: f64, n: usize) -> Result<(), SphericalError> {
    if n < 3 {
        return Err(SphericalError::BadN(n));
    }
    let min = min_radius(n);
    if !r.is_finite() || r <= min {
        return Err(SphericalError::RadiusTooSmall { r, n, min });
    }
    Ok(())
}

fn rhs(r: f64, n: usize) -> f64 {
    (1.0 + (2.0 * PI / n as f64).cos()) / (1.0 + (1.0 / r).cos())
}

/// Solves the base-angle equation in closed form: `φ = arcsin(√rhs)`. The
/// precondition `r > n/(2π)` keeps the right-hand side strictly below 1.
pub fn phi_s(r: f64, n: usize) -> Result<SphericalAngle, SphericalError> {
    check_rn(r, n)?;
    let value = rhs(r, n);
    debug_assert!(value > 0.0 && value <= 1.0);
    let phi = value.sqrt().min(1.0).asin();
    Ok(SphericalAngle { r, n, phi })
}

/// `Σ 2·φ(r, k_i)` over the faces around a vertex. Strictly decreasing in
/// `r`, tending to the Euclidean angle-sum as `r → ∞`.
pub fn spherical_angle_sum(vt: &VertexType, r: f64) -> Result<f64, SphericalError> {
    let mut sum = 0.0;
    for &k in vt.face_sizes() {
        sum += phi_s(r, k)?.interior_angle();
    }
    Ok(sum)
}

fn euclidean_angle_sum(vt: &VertexType) -> f64 {
    angle_sum(vt).radians()
}

/// The radius at which the spherical angle-sum of `vt` equals `2π`, found by
/// bisection on the monotone map `r ↦ angle-sum`. If the angle-sum is below
/// `2π` arbitrarily close to the minimum admissible radius (which happens for
/// degree-2 types), that minimum is returned: every valid radius already
/// satisfies the strict inequality.
pub fn angle_sum_threshold_radius(vt: &VertexType) -> Result<f64, SphericalError> {
    if euclidean_angle_sum(vt) >= 2.0 * PI {
        return Err(SphericalError::NotPositivelyCurved(vt.clone()));
    }
    let r_min = min_radius(vt.max_side());
    let mut lo = r_min * (1.0 + 1e-12);
    if spherical_angle_sum(vt, lo)? <= 2.0 * PI {
        return Ok(r_min);
    }
    let mut hi = r_min.max(1.0);
    let mut iterations = 0;
    while spherical_angle_sum(vt, hi)? >= 2.0 * PI {
        hi *= 2.0;
        iterations += 1;
        if iterations > BISECTION_CAP {
            return Err(SphericalError::NonConvergence(BISECTION_CAP));
        }
    }
    iterations = 0;
    while hi - lo > RADIUS_TOL {
        let mid = 0.5 * (lo + hi);
        if spherical_angle_sum(vt, mid)? >= 2.0 * PI {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > BISECTION_CAP {
            return Err(SphericalError::NonConvergence(BISECTION_CAP));
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The critical radius for a family of positively curved vertex-types: the
/// largest per-type threshold, padded by `margin`. For any radius at or above
/// the returned value (strictly above, when `margin` is zero), every supplied
/// type has spherical angle-sum strictly below `2π`.
pub fn critical_radius(types: &[VertexType], margin: f64) -> Result<f64, SphericalError> {
    if types.is_empty() {
        return Err(SphericalError::EmptyTypes);
    }
    let mut worst: f64 = 0.0;
    for vt in types {
        worst = worst.max(angle_sum_threshold_radius(vt)?);
    }
    Ok(worst * (1.0 + margin))
}

/// Geometry of one unit regular r-spherical n-gon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPolygonSpec {
    pub r: f64,
    pub n: usize,
    pub phi: f64,
    pub interior_angle: f64,
    /// Geodesic distance from the face center to each vertex.
    pub circumradius: f64,
    /// Surface area, `r² · (2nφ − (n−2)π)`.
    pub area: f64,
}

/// Circumradius via the right spherical triangle cut from one of the n
/// isosceles pieces, area via angle excess. Both converge to the Euclidean
/// values `1/(2 sin(π/n))` and `n/(4 tan(π/n))` as `r → ∞`.
pub fn polygon_spec(r: f64, n: usize) -> Result<SphericalPolygonSpec, SphericalError> {
    let angle = phi_s(r, n)?;
    let phi = angle.phi;
    let circumradius = r * ((1.0 / (2.0 * r)).sin() / (PI / n as f64).sin()).asin();
    let area = r * r * (2.0 * n as f64 * phi - (n as f64 - 2.0) * PI);
    Ok(SphericalPolygonSpec {
        r,
        n,
        phi,
        interior_angle: angle.interior_angle(),
        circumradius,
        area,
    })
}
