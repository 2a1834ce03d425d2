//! Exact angle-sums, combinatorial curvature, and type classification.
//!
//! For a vertex of type `[k_1, …, k_d]` the angle-sum is
//! `Σ (π − 2π/k_i)` and the combinatorial curvature is
//! `κ = 1 − d/2 + Σ 1/k_i = (2π − angle-sum) / 2π`. Both are rational (in
//! units of π for the angle-sum) and are computed exactly; no floating point
//! enters this module. Sign patterns of κ across a surface decide the
//! conformal type of its universal cover.

use std::collections::BTreeSet;
use std::fmt;

use num::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{PolygonalComplex, VertexType};

/// Exact rational number; curvatures and angle-sum coefficients live here.
pub type Rational = BigRational;

/// Small helper for literal rationals.
pub fn rational(numerator: i64, denominator: i64) -> Rational {
    Rational::new(numerator.into(), denominator.into())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurvatureError {
    #[error("complex is not orientable; type classification needs an oriented surface")]
    NonOrientable,
    #[error("profile is empty: no interior vertices / no vertex-types supplied")]
    EmptyProfile,
}

/// Total interior angle around a vertex, stored as an exact multiple of π.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AngleSum {
    pub coefficient_of_pi: Rational,
}

impl AngleSum {
    pub fn radians(&self) -> f64 {
        rational_to_f64(&self.coefficient_of_pi) * std::f64::consts::PI
    }
}

impl fmt::Display for AngleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·π", self.coefficient_of_pi)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("rational fits in f64")
}

/// Angle-sum `Σ (1 − 2/k_i)` in units of π, exact.
pub fn angle_sum(vt: &VertexType) -> AngleSum {
    let mut coeff = Rational::zero();
    for &k in vt.face_sizes() {
        coeff += Rational::one() - rational(2, k as i64);
    }
    AngleSum { coefficient_of_pi: coeff }
}

/// Combinatorial curvature `1 − d/2 + Σ 1/k_i`, exact.
pub fn curvature(vt: &VertexType) -> Rational {
    let d = vt.degree() as i64;
    let mut kappa = Rational::one() - rational(d, 2);
    for &k in vt.face_sizes() {
        kappa += rational(1, k as i64);
    }
    kappa
}

/// Sign pattern of the curvatures in a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSummary {
    AllPositive,
    AllZero,
    AllNegative,
    Mixed,
}

impl fmt::Display for SignSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignSummary::AllPositive => "all positive",
            SignSummary::AllZero => "all zero",
            SignSummary::AllNegative => "all negative",
            SignSummary::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

/// The distinct vertex-types a classification question is about, plus the
/// side bound `N` when one is known.
///
/// Built either from a closed oriented complex (interior vertices only; the
/// side bound is the largest face) or from an explicitly declared set of
/// types.
#[derive(Debug, Clone)]
pub struct CurvatureProfile {
    types: BTreeSet<VertexType>,
    side_bound: Option<usize>,
}

impl CurvatureProfile {
    pub fn from_complex(complex: &PolygonalComplex) -> Result<Self, CurvatureError> {
        if !complex.is_orientable() {
            return Err(CurvatureError::NonOrientable);
        }
        let types: BTreeSet<VertexType> = complex
            .vertex_records()
            .iter()
            .filter(|v| !v.is_boundary)
            .map(|v| v.vertex_type.clone())
            .collect();
        if types.is_empty() {
            return Err(CurvatureError::EmptyProfile);
        }
        let side_bound = (0..complex.num_faces()).map(|f| complex.sides(f)).max();
        Ok(CurvatureProfile { types, side_bound })
    }

    pub fn from_types(
        types: impl IntoIterator<Item = VertexType>,
        side_bound: Option<usize>,
    ) -> Result<Self, CurvatureError> {
        let types: BTreeSet<VertexType> = types.into_iter().collect();
        if types.is_empty() {
            return Err(CurvatureError::EmptyProfile);
        }
        Ok(CurvatureProfile { types, side_bound })
    }

    pub fn types(&self) -> impl Iterator<Item = &VertexType> {
        self.types.iter()
    }

    pub fn side_bound(&self) -> Option<usize> {
        self.side_bound
    }

    pub fn signs(&self) -> SignSummary {
        let mut pos = false;
        let mut zero = false;
        let mut neg = false;
        for vt in &self.types {
            let k = curvature(vt);
            if k.is_zero() {
                zero = true;
            } else if k.is_positive() {
                pos = true;
            } else {
                neg = true;
            }
        }
        match (pos, zero, neg) {
            (true, false, false) => SignSummary::AllPositive,
            (false, true, false) => SignSummary::AllZero,
            (false, false, true) => SignSummary::AllNegative,
            _ => SignSummary::Mixed,
        }
    }

    /// Smallest curvature among the profile's types.
    pub fn min_curvature(&self) -> Rational {
        self.types.iter().map(curvature).min().expect("profile is nonempty")
    }
}

/// Conformal type of the universal cover, when the uniform-sign hypotheses
/// apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeVerdict {
    /// Universal cover is the Riemann sphere; the surface itself equals it.
    Elliptic,
    /// Universal cover is the complex plane.
    Parabolic,
    /// Universal cover is the unit disc.
    Hyperbolic,
    /// No uniform-sign hypothesis is met; the reason names the gap.
    Indeterminate(String),
}

impl fmt::Display for TypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeVerdict::Elliptic => write!(f, "elliptic (the surface is the Riemann sphere)"),
            TypeVerdict::Parabolic => write!(f, "parabolic (universal cover is the plane C)"),
            TypeVerdict::Hyperbolic => write!(f, "hyperbolic (universal cover is the disc D)"),
            TypeVerdict::Indeterminate(reason) => write!(f, "indeterminate: {reason}"),
        }
    }
}

/// Classifies a profile:
/// all positive plus a side bound → elliptic; all zero → parabolic; all
/// negative plus a side bound → hyperbolic; anything else is indeterminate.
pub fn classify(profile: &CurvatureProfile) -> TypeVerdict {
    let signs = profile.signs();
    let bounded = profile.side_bound().is_some();
    match signs {
        SignSummary::AllPositive if bounded => TypeVerdict::Elliptic,
        SignSummary::AllZero => TypeVerdict::Parabolic,
        SignSummary::AllNegative if bounded => TypeVerdict::Hyperbolic,
        SignSummary::AllPositive | SignSummary::AllNegative => TypeVerdict::Indeterminate(
            format!("curvature is {signs} but no side bound N was supplied"),
        ),
        SignSummary::Mixed => TypeVerdict::Indeterminate(
            "curvature signs are mixed; no uniform-sign hypothesis applies".to_string(),
        ),
    }
}

/// Ambient surfaces an edge-to-edge tiling can be excluded from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AmbientSurface {
    Sphere,
    Plane,
}

impl fmt::Display for AmbientSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientSurface::Sphere => f.write_str("sphere"),
            AmbientSurface::Plane => f.write_str("plane"),
        }
    }
}

/// Result of the exclusion analysis for tilings with a minimum side count.
#[derive(Debug, Clone)]
pub struct ExclusionResult {
    pub excluded: Vec<AmbientSurface>,
    /// The vertex-type achieving the largest curvature under the constraints;
    /// its sign drives the exclusion.
    pub extremal_type: VertexType,
    pub extremal_curvature: Rational,
}

/// Which ambient surfaces admit no edge-to-edge tiling where every tile has
/// at least `min_sides` sides (vertex degree at least `min_degree`).
///
/// Curvature decreases when any face grows or the degree grows, so the
/// extremal type is `[min_sides × min_degree]`. Its curvature being zero
/// rules out the sphere; strictly negative additionally rules out the plane.
pub fn exclusion_check(min_sides: usize, min_degree: usize) -> ExclusionResult {
    assert!(min_sides >= 3, "polygons need at least 3 sides");
    assert!(min_degree >= 3, "edge-to-edge forces vertex degree >= 3");
    let extremal_type =
        VertexType::cyclic(&vec![min_sides; min_degree]).expect("valid extremal type");
    let extremal_curvature = curvature(&extremal_type);
    let excluded = if extremal_curvature.is_negative() {
        vec![AmbientSurface::Sphere, AmbientSurface::Plane]
    } else if extremal_curvature.is_zero() {
        vec![AmbientSurface::Sphere]
    } else {
        Vec::new()
    };
    ExclusionResult { excluded, extremal_type, extremal_curvature }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::VertexType;

    fn vt(sizes: &[usize]) -> VertexType {
        VertexType::cyclic(sizes).unwrap()
    }

    #[test]
    fn angle_sums_are_exact() {
        assert_eq!(angle_sum(&vt(&[6, 6, 6])).coefficient_of_pi, rational(2, 1));
        assert_eq!(angle_sum(&vt(&[5, 5, 5])).coefficient_of_pi, rational(9, 5));
        assert_eq!(angle_sum(&vt(&[3, 3, 3, 3, 3, 3])).coefficient_of_pi, rational(2, 1));
    }

    #[test]
    fn curvatures_are_exact() {
        assert_eq!(curvature(&vt(&[5, 5, 5])), rational(1, 10));
        assert_eq!(curvature(&vt(&[4, 4, 4, 4])), rational(0, 1));
        assert_eq!(curvature(&vt(&[7, 7, 7])), rational(-1, 14));
    }

    #[test]
    fn curvature_matches_angle_sum_identity() {
        // κ = (2π − A)/2π = 1 − A/(2π), as exact rationals
        for sizes in [
            vec![3, 3, 3],
            vec![4, 4, 4, 4],
            vec![5, 5, 5],
            vec![3, 7, 42],
            vec![3, 4, 5, 6, 7],
        ] {
            let t = vt(&sizes);
            let a = angle_sum(&t).coefficient_of_pi;
            assert_eq!(curvature(&t), Rational::one() - a / rational(2, 1));
        }
    }

    #[test]
    fn classify_uniform_profiles() {
        let pos = CurvatureProfile::from_types([vt(&[5, 5, 5])], Some(5)).unwrap();
        assert_eq!(classify(&pos), TypeVerdict::Elliptic);

        let zero = CurvatureProfile::from_types([vt(&[6, 6, 6])], Some(6)).unwrap();
        assert_eq!(classify(&zero), TypeVerdict::Parabolic);
        let zero_unbounded = CurvatureProfile::from_types([vt(&[6, 6, 6])], None).unwrap();
        assert_eq!(classify(&zero_unbounded), TypeVerdict::Parabolic);

        let neg = CurvatureProfile::from_types([vt(&[7, 7, 7])], Some(7)).unwrap();
        assert_eq!(classify(&neg), TypeVerdict::Hyperbolic);
    }

    #[test]
    fn classify_requires_side_bound_for_nonzero_signs() {
        for sizes in [[5, 5, 5], [7, 7, 7]] {
            let p = CurvatureProfile::from_types([vt(&sizes)], None).unwrap();
            match classify(&p) {
                TypeVerdict::Indeterminate(reason) => assert!(reason.contains("side bound")),
                v => panic!("expected indeterminate, got {v:?}"),
            }
        }
    }

    #[test]
    fn classify_mixed_is_indeterminate() {
        let p = CurvatureProfile::from_types([vt(&[5, 5, 5]), vt(&[7, 7, 7])], Some(7)).unwrap();
        assert!(matches!(classify(&p), TypeVerdict::Indeterminate(_)));
    }

    #[test]
    fn triangulation_profiles_follow_vertex_degree() {
        // triangles only: degree < 6 elliptic, = 6 parabolic, > 6 hyperbolic
        for d in 3..6 {
            let p = CurvatureProfile::from_types([vt(&vec![3; d])], Some(3)).unwrap();
            assert_eq!(classify(&p), TypeVerdict::Elliptic, "degree {d}");
        }
        let p = CurvatureProfile::from_types([vt(&[3; 6])], Some(3)).unwrap();
        assert_eq!(classify(&p), TypeVerdict::Parabolic);
        for d in 7..12 {
            let p = CurvatureProfile::from_types([vt(&vec![3; d])], Some(3)).unwrap();
            assert_eq!(classify(&p), TypeVerdict::Hyperbolic, "degree {d}");
        }
    }

    #[test]
    fn exclusion_thresholds() {
        let r = exclusion_check(6, 3);
        assert_eq!(r.excluded, vec![AmbientSurface::Sphere]);
        assert_eq!(r.extremal_type, vt(&[6, 6, 6]));
        assert!(r.extremal_curvature.is_zero());

        let r = exclusion_check(7, 3);
        assert_eq!(r.excluded, vec![AmbientSurface::Sphere, AmbientSurface::Plane]);
        assert_eq!(r.extremal_curvature, rational(-1, 14));

        let r = exclusion_check(5, 3);
        assert!(r.excluded.is_empty());
        assert_eq!(r.extremal_curvature, rational(1, 10));
    }
}
