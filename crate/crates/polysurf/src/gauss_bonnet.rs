//! Euler characteristic and the discrete Gauss–Bonnet identity.
//!
//! For a finite closed complex, `χ = V − E + F` equals the exact sum of the
//! combinatorial curvatures over all vertices. The identity holds for every
//! valid closed complex, so a failed check signals a construction bug rather
//! than unusual input.

use std::fmt;

use num::{Signed, Zero};
use thiserror::Error;

use crate::complex::PolygonalComplex;
use crate::curvature::{curvature, rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussBonnetError {
    #[error("complex has boundary; Euler/Gauss-Bonnet are defined for closed complexes")]
    HasBoundary,
    #[error("curvature lower bound must be positive, got {0}")]
    NonPositiveC0(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussBonnetReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi_euler: i64,
    pub curvature_sum: Rational,
    pub consistent: bool,
}

impl fmt::Display for GaussBonnetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} E={} F={} chi={} curvature_sum={} consistent={}",
            self.vertices, self.edges, self.faces, self.chi_euler, self.curvature_sum,
            self.consistent
        )
    }
}

fn require_closed(complex: &PolygonalComplex) -> Result<(), GaussBonnetError> {
    if complex.is_closed() {
        Ok(())
    } else {
        Err(GaussBonnetError::HasBoundary)
    }
}

/// `V − E + F` with the counts taken from the dart orbits.
pub fn euler_characteristic(complex: &PolygonalComplex) -> Result<i64, GaussBonnetError> {
    require_closed(complex)?;
    Ok(complex.euler_characteristic_raw())
}

/// Exact `Σ_v κ(v)` over all vertices.
pub fn curvature_sum(complex: &PolygonalComplex) -> Result<Rational, GaussBonnetError> {
    require_closed(complex)?;
    let mut sum = Rational::zero();
    for v in complex.vertex_records() {
        sum += curvature(&v.vertex_type);
    }
    Ok(sum)
}

pub fn check_gauss_bonnet(complex: &PolygonalComplex) -> Result<GaussBonnetReport, GaussBonnetError> {
    require_closed(complex)?;
    let chi = complex.euler_characteristic_raw();
    let sum = curvature_sum(complex)?;
    Ok(GaussBonnetReport {
        vertices: complex.num_vertices(),
        edges: complex.num_edges(),
        faces: complex.num_faces(),
        chi_euler: chi,
        consistent: sum == rational(chi, 1),
        curvature_sum: sum,
    })
}

/// Largest possible vertex count for a closed complex whose curvature is at
/// least `c0 > 0` everywhere: exactly `2 / c0`.
pub fn vertex_bound(c0: &Rational) -> Result<Rational, GaussBonnetError> {
    if !c0.is_positive() {
        return Err(GaussBonnetError::NonPositiveC0(c0.clone()));
    }
    Ok(rational(2, 1) / c0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{GluingData, PolygonalComplex, Slot};

    fn square_torus() -> PolygonalComplex {
        let mut g = GluingData::new();
        let f = g.add_face("f0", 4);
        g.add_gluing(Slot::new(f, 0), Slot::new(f, 2));
        g.add_gluing(Slot::new(f, 1), Slot::new(f, 3));
        PolygonalComplex::build(&g).unwrap()
    }

    fn genus2_octagon() -> PolygonalComplex {
        let mut g = GluingData::new();
        let f = g.add_face("f0", 8);
        for (a, b) in [(0, 2), (1, 3), (4, 6), (5, 7)] {
            g.add_gluing(Slot::new(f, a), Slot::new(f, b));
        }
        PolygonalComplex::build(&g).unwrap()
    }

    fn hexagonal_torus() -> PolygonalComplex {
        let mut g = GluingData::new();
        let f = g.add_face("f0", 6);
        for i in 0..3 {
            g.add_gluing(Slot::new(f, i), Slot::new(f, i + 3));
        }
        PolygonalComplex::build(&g).unwrap()
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&square_torus()).unwrap(), 0);
        assert_eq!(euler_characteristic(&genus2_octagon()).unwrap(), -2);
        assert_eq!(euler_characteristic(&hexagonal_torus()).unwrap(), 0);
    }

    #[test]
    fn curvature_sums_match_chi() {
        for c in [square_torus(), genus2_octagon(), hexagonal_torus()] {
            let report = check_gauss_bonnet(&c).unwrap();
            assert!(report.consistent, "{report}");
        }
    }

    #[test]
    fn genus2_has_one_vertex_of_degree_eight() {
        let c = genus2_octagon();
        assert_eq!(c.num_vertices(), 1);
        let vt = &c.vertex_records()[0].vertex_type;
        assert_eq!(vt.face_sizes(), &[8; 8]);
        assert_eq!(curvature(vt), rational(-2, 1));
    }

    #[test]
    fn tetrahedron_report_fields() {
        let c = crate::generators::generate(crate::generators::GeneratorSpec::Platonic(
            crate::generators::PlatonicSolid::Tetrahedron,
        ))
        .unwrap();
        let report = check_gauss_bonnet(&c).unwrap();
        assert_eq!(
            report,
            GaussBonnetReport {
                vertices: 4,
                edges: 6,
                faces: 4,
                chi_euler: 2,
                curvature_sum: rational(2, 1),
                consistent: true,
            }
        );
    }

    #[test]
    fn boundary_is_rejected() {
        let mut g = GluingData::new();
        g.add_face("f0", 5);
        let c = PolygonalComplex::build(&g).unwrap();
        assert!(matches!(euler_characteristic(&c), Err(GaussBonnetError::HasBoundary)));
        assert!(matches!(curvature_sum(&c), Err(GaussBonnetError::HasBoundary)));
        assert!(matches!(check_gauss_bonnet(&c), Err(GaussBonnetError::HasBoundary)));
    }

    #[test]
    fn vertex_bound_values() {
        assert_eq!(vertex_bound(&rational(1, 10)).unwrap(), rational(20, 1));
        assert_eq!(vertex_bound(&rational(1, 2)).unwrap(), rational(4, 1));
        assert_eq!(vertex_bound(&rational(2, 1)).unwrap(), rational(1, 1));
        assert!(matches!(
            vertex_bound(&rational(0, 1)),
            Err(GaussBonnetError::NonPositiveC0(_))
        ));
        assert!(matches!(
            vertex_bound(&rational(-1, 3)),
            Err(GaussBonnetError::NonPositiveC0(_))
        ));
    }
}
