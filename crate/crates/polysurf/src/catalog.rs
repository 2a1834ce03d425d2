//! Enumeration of canonical vertex-types by curvature sign and side bound.
//!
//! With face sizes capped at `N` and, for non-negative curvature, degree
//! capped at 6 (a degree-7 vertex with triangles already has
//! `κ = 1 − 7/2 + 7/3 < 0`), the set of admissible vertex-types is finite.
//! Negative-curvature queries must cap the degree explicitly, since types
//! like `[7, 7, 7, …]` go on forever.

use num::{Signed, Zero};
use thiserror::Error;

use crate::complex::{ComplexError, VertexType};
use crate::curvature::{curvature, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureSign {
    Positive,
    Zero,
    Negative,
}

impl CurvatureSign {
    fn matches(self, kappa: &Rational) -> bool {
        match self {
            CurvatureSign::Positive => kappa.is_positive(),
            CurvatureSign::Zero => kappa.is_zero(),
            CurvatureSign::Negative => kappa.is_negative(),
        }
    }
}

/// Degree cap that makes positive/zero enumerations finite.
pub const NONNEGATIVE_DEGREE_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogQuery {
    /// Largest allowed face size `N >= 3`.
    pub side_bound: usize,
    pub degree_min: usize,
    /// Required for negative sign; defaults to 6 otherwise.
    pub degree_max: Option<usize>,
    pub sign: CurvatureSign,
}

impl CatalogQuery {
    pub fn new(side_bound: usize, sign: CurvatureSign) -> Self {
        CatalogQuery { side_bound, degree_min: 3, degree_max: None, sign }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("negative-curvature catalog is infinite without a degree_max cap")]
    UnboundedQuery,
    #[error("query yields no vertex-types")]
    EmptyCatalog,
    #[error("side bound {0} is below 3")]
    BadSideBound(usize),
    #[error(transparent)]
    BadType(#[from] ComplexError),
}

/// Dihedral canonical form of an arbitrary tuple of face sizes.
pub fn canonicalize(tuple: &[usize]) -> Result<VertexType, CatalogError> {
    Ok(VertexType::cyclic(tuple)?)
}

/// All canonical vertex-types with `3 <= k_i <= N`, degree in range, and κ of
/// the requested sign; sorted, no duplicates.
///
/// Tuples are generated as nondecreasing multisets first (κ only depends on
/// the multiset) and each admissible multiset is then expanded into its
/// distinct dihedral classes.
pub fn enumerate_vertex_types(q: &CatalogQuery) -> Result<Vec<VertexType>, CatalogError> {
    if q.side_bound < 3 {
        return Err(CatalogError::BadSideBound(q.side_bound));
    }
    let degree_max = match (q.sign, q.degree_max) {
        (CurvatureSign::Negative, None) => return Err(CatalogError::UnboundedQuery),
        (_, Some(d)) => d,
        (_, None) => NONNEGATIVE_DEGREE_CAP,
    };
    let degree_min = q.degree_min.max(1);

    let mut out = std::collections::BTreeSet::new();
    let mut multiset = Vec::new();
    for d in degree_min..=degree_max {
        multiset.clear();
        collect_multisets(q, d, 3, &mut multiset, &mut out)?;
    }
    Ok(out.into_iter().collect())
}

fn collect_multisets(
    q: &CatalogQuery,
    degree: usize,
    min_entry: usize,
    multiset: &mut Vec<usize>,
    out: &mut std::collections::BTreeSet<VertexType>,
) -> Result<(), CatalogError> {
    if multiset.len() == degree {
        let vt = VertexType::cyclic(multiset)?;
        if q.sign.matches(&curvature(&vt)) {
            expand_dihedral_classes(multiset, out)?;
        }
        return Ok(());
    }
    for k in min_entry..=q.side_bound {
        multiset.push(k);
        collect_multisets(q, degree, k, multiset, out)?;
        multiset.pop();
    }
    Ok(())
}

/// Inserts the canonical form of every distinct cyclic arrangement of a
/// multiset. Plain unique-permutation recursion; degrees stay small.
fn expand_dihedral_classes(
    multiset: &[usize],
    out: &mut std::collections::BTreeSet<VertexType>,
) -> Result<(), CatalogError> {
    let mut pool = multiset.to_vec();
    pool.sort_unstable();
    let mut current = Vec::with_capacity(pool.len());
    let mut used = vec![false; pool.len()];
    permute(&pool, &mut used, &mut current, out)?;
    Ok(())
}

fn permute(
    pool: &[usize],
    used: &mut [bool],
    current: &mut Vec<usize>,
    out: &mut std::collections::BTreeSet<VertexType>,
) -> Result<(), CatalogError> {
    if current.len() == pool.len() {
        out.insert(VertexType::cyclic(current)?);
        return Ok(());
    }
    let mut prev: Option<usize> = None;
    for i in 0..pool.len() {
        if used[i] || prev == Some(pool[i]) {
            continue;
        }
        prev = Some(pool[i]);
        used[i] = true;
        current.push(pool[i]);
        permute(pool, used, current, out)?;
        current.pop();
        used[i] = false;
    }
    Ok(())
}

/// The catalog entry that is extremal for the query's sign: smallest κ for
/// positive queries (the worst case for the `2/c0` vertex bound), largest κ
/// for negative ones (closest to flat). Zero-sign queries return the first
/// type in sorted order.
pub fn extremal_curvature(q: &CatalogQuery) -> Result<(VertexType, Rational), CatalogError> {
    let types = enumerate_vertex_types(q)?;
    let pick = match q.sign {
        CurvatureSign::Positive | CurvatureSign::Zero => {
            types.iter().min_by_key(|vt| curvature(vt))
        }
        CurvatureSign::Negative => types.iter().max_by_key(|vt| curvature(vt)),
    };
    let vt = pick.ok_or(CatalogError::EmptyCatalog)?.clone();
    let kappa = curvature(&vt);
    Ok((vt, kappa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::rational;

    #[test]
    fn triangles_only_positive_catalog() {
        let q = CatalogQuery::new(3, CurvatureSign::Positive);
        let types = enumerate_vertex_types(&q).unwrap();
        let expect: Vec<VertexType> = (3..=5)
            .map(|d| VertexType::cyclic(&vec![3; d]).unwrap())
            .collect();
        assert_eq!(types, expect);
    }

    #[test]
    fn zero_catalog_contains_the_euclidean_types() {
        let q = CatalogQuery::new(6, CurvatureSign::Zero);
        let types = enumerate_vertex_types(&q).unwrap();
        for sizes in [
            vec![6, 6, 6],
            vec![4, 4, 4, 4],
            vec![3, 3, 3, 3, 3, 3],
            vec![3, 6, 3, 6],
            vec![3, 3, 6, 6],
            vec![3, 4, 4, 6],
        ] {
            let vt = VertexType::cyclic(&sizes).unwrap();
            assert!(types.contains(&vt), "missing {vt}");
        }
        // [3,3,4,12] involves a 12-gon, outside the side bound
        assert!(types
            .iter()
            .all(|vt| vt.face_sizes().iter().all(|&k| k <= 6)));
    }

    #[test]
    fn cyclic_order_distinguishes_types_with_equal_multiset() {
        let q = CatalogQuery::new(6, CurvatureSign::Zero);
        let types = enumerate_vertex_types(&q).unwrap();
        let a = VertexType::cyclic(&[3, 6, 3, 6]).unwrap();
        let b = VertexType::cyclic(&[3, 3, 6, 6]).unwrap();
        assert_ne!(a, b);
        assert!(types.contains(&a) && types.contains(&b));
    }

    #[test]
    fn negative_needs_degree_cap() {
        let q = CatalogQuery::new(7, CurvatureSign::Negative);
        assert!(matches!(enumerate_vertex_types(&q), Err(CatalogError::UnboundedQuery)));
    }

    #[test]
    fn negative_degree_three_catalog() {
        let q = CatalogQuery {
            side_bound: 7,
            degree_min: 3,
            degree_max: Some(3),
            sign: CurvatureSign::Negative,
        };
        let types = enumerate_vertex_types(&q).unwrap();
        for sizes in [[7, 7, 7], [6, 7, 7], [5, 7, 7], [6, 6, 7]] {
            let vt = VertexType::cyclic(&sizes).unwrap();
            assert!(types.contains(&vt), "missing {vt}");
        }
        // [4,7,7] is subtly on the other side: κ = 1/28 > 0
        let positive = VertexType::cyclic(&[4, 7, 7]).unwrap();
        assert!(!types.contains(&positive));
        assert!(curvature(&positive).is_positive());
        // [3,7,43] would qualify for κ < 0 but exceeds the side bound
        assert!(types.iter().all(|vt| vt.max_side() <= 7));
        // flattest entries: κ([5,7,7]) = −1/70 beats κ([6,6,7]) = −1/42
        assert_eq!(curvature(&VertexType::cyclic(&[6, 6, 7]).unwrap()), rational(-1, 42));
        let (vt, kappa) = extremal_curvature(&q).unwrap();
        assert_eq!(vt, VertexType::cyclic(&[5, 7, 7]).unwrap());
        assert_eq!(kappa, rational(-1, 70));
    }

    #[test]
    fn positive_extremal_is_the_five_triangle_type() {
        let q = CatalogQuery::new(3, CurvatureSign::Positive);
        let (vt, kappa) = extremal_curvature(&q).unwrap();
        assert_eq!(vt, VertexType::cyclic(&[3, 3, 3, 3, 3]).unwrap());
        assert_eq!(kappa, rational(1, 6));
    }

    #[test]
    fn degree_seven_and_higher_is_always_negative() {
        // extremal case is all triangles: κ([3 × d]) = 1 − d/6
        for d in 7..=20 {
            let vt = VertexType::cyclic(&vec![3; d]).unwrap();
            assert!(curvature(&vt).is_negative(), "degree {d}");
        }
    }

    #[test]
    fn matches_brute_force_oracle() {
        // oracle: enumerate every tuple in [3, N]^d, canonicalize, dedup
        for (n, sign, dmax) in [
            (5, CurvatureSign::Positive, 6),
            (6, CurvatureSign::Zero, 6),
            (12, CurvatureSign::Zero, 6),
            (9, CurvatureSign::Negative, 4),
        ] {
            let q = CatalogQuery {
                side_bound: n,
                degree_min: 3,
                degree_max: Some(dmax),
                sign,
            };
            let fast = enumerate_vertex_types(&q).unwrap();
            let slow = brute_force(n, 3, dmax, sign);
            assert_eq!(fast, slow, "N={n} sign={sign:?}");
        }
    }

    fn brute_force(
        n: usize,
        dmin: usize,
        dmax: usize,
        sign: CurvatureSign,
    ) -> Vec<VertexType> {
        let mut out = std::collections::BTreeSet::new();
        for d in dmin..=dmax {
            let mut tuple = vec![3usize; d];
            loop {
                let vt = VertexType::cyclic(&tuple).unwrap();
                if sign.matches(&curvature(&vt)) {
                    out.insert(vt);
                }
                // odometer over [3, n]^d
                let mut i = 0;
                loop {
                    if i == d {
                        break;
                    }
                    if tuple[i] < n {
                        tuple[i] += 1;
                        break;
                    }
                    tuple[i] = 3;
                    i += 1;
                }
                if i == d {
                    break;
                }
            }
        }
        out.into_iter().collect()
    }
}
