//! Polygonal surfaces as combinatorial gluing data.
//!
//! A surface is described by a collection of polygons (faces with a declared
//! side count) together with a pairing of their sides. Each side is a *slot*:
//! face `f`, side `i`, understood as the directed segment from corner `i` to
//! corner `i + 1 (mod sides)` with the face listed counterclockwise. Internally
//! every slot becomes a *dart*; the permutation `phi` rotates darts within a
//! face and the involution `alpha` swaps paired darts. The composite
//! `sigma = phi ∘ alpha` rotates the darts that share an origin vertex, which
//! is how vertices and their cyclic vertex-types are recovered.
//!
//! Unpaired slots are allowed: they are the boundary of the surface, and show
//! up naturally as the rims of finite balls cut out of infinite tilings.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of a face within a complex.
pub type FaceId = usize;
/// Index of a dart (one per slot).
pub type DartId = usize;

/// One directed polygon side: face `face`, corner `side` → corner `side + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub face: FaceId,
    pub side: usize,
}

impl Slot {
    pub fn new(face: FaceId, side: usize) -> Self {
        Slot { face, side }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.face, self.side)
    }
}

/// A declared face: a name for reporting plus its side count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDecl {
    pub name: String,
    pub sides: usize,
}

/// One edge identification between two slots.
///
/// `reversed = true` is the orientation-reversing identification (origin of
/// one slot meets the head of the other); it is the default and the only kind
/// that appears in oriented surfaces. `reversed = false` identifies the slots
/// head-to-head and is accepted solely to express non-orientable inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub a: Slot,
    pub b: Slot,
    pub reversed: bool,
}

impl Gluing {
    pub fn new(a: Slot, b: Slot) -> Self {
        Gluing { a, b, reversed: true }
    }

    /// Normalized so the lexicographically smaller slot comes first.
    fn normalized(self) -> Self {
        if self.b < self.a {
            Gluing { a: self.b, b: self.a, reversed: self.reversed }
        } else {
            self
        }
    }
}

/// Raw gluing data: faces plus a set of slot pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GluingData {
    pub faces: Vec<FaceDecl>,
    pub gluings: Vec<Gluing>,
}

impl GluingData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_face(&mut self, name: impl Into<String>, sides: usize) -> FaceId {
        self.faces.push(FaceDecl { name: name.into(), sides });
        self.faces.len() - 1
    }

    pub fn add_gluing(&mut self, a: Slot, b: Slot) {
        self.gluings.push(Gluing::new(a, b).normalized());
    }

    pub fn add_gluing_with(&mut self, a: Slot, b: Slot, reversed: bool) {
        self.gluings.push(Gluing { a, b, reversed }.normalized());
    }
}

/// Errors raised while validating gluing data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face {face:?} declares {sides} sides; a polygon needs at least 3")]
    BadSideCount { face: String, sides: usize },
    #[error("slot {slot} appears in more than one gluing")]
    DuplicateSlot { slot: Slot },
    #[error("slot {slot} is glued to itself")]
    SelfPairedSlot { slot: Slot },
    #[error("slot {slot} does not exist (face count {faces}, or side out of range)")]
    SlotOutOfRange { slot: Slot, faces: usize },
    #[error("vertex-type entry {value} is smaller than 3")]
    BadVertexType { value: usize },
    #[error("vertex-type is empty")]
    EmptyVertexType,
    #[error("corner walk did not terminate; gluing data is inconsistent")]
    CornerWalkDiverged,
}

/// Canonical cyclic tuple `[k_1, …, k_d]` of face sizes around a vertex.
///
/// Two tuples are the same vertex-type when one is a rotation or a reflection
/// of the other; the stored representative is the lexicographically least
/// element of that dihedral orbit. Boundary vertices have a linear (open)
/// link, canonicalized under reversal only.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexType {
    tuple: Vec<usize>,
    cyclic: bool,
}

impl VertexType {
    /// Canonical form of a closed cyclic link.
    pub fn cyclic(tuple: &[usize]) -> Result<Self, ComplexError> {
        Self::check(tuple)?;
        let mut best: Option<Vec<usize>> = None;
        let d = tuple.len();
        let mut consider = |candidate: Vec<usize>| {
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        };
        let reversed: Vec<usize> = tuple.iter().rev().copied().collect();
        for start in 0..d {
            let mut rot: Vec<usize> = Vec::with_capacity(d);
            rot.extend_from_slice(&tuple[start..]);
            rot.extend_from_slice(&tuple[..start]);
            consider(rot);
            let mut rot: Vec<usize> = Vec::with_capacity(d);
            rot.extend_from_slice(&reversed[start..]);
            rot.extend_from_slice(&reversed[..start]);
            consider(rot);
        }
        Ok(VertexType { tuple: best.expect("nonempty tuple"), cyclic: true })
    }

    /// Canonical form of an open (boundary) link: the lesser of the sequence
    /// and its reversal.
    pub fn linear(tuple: &[usize]) -> Result<Self, ComplexError> {
        Self::check(tuple)?;
        let fwd = tuple.to_vec();
        let rev: Vec<usize> = tuple.iter().rev().copied().collect();
        Ok(VertexType { tuple: fwd.min(rev), cyclic: false })
    }

    fn check(tuple: &[usize]) -> Result<(), ComplexError> {
        if tuple.is_empty() {
            return Err(ComplexError::EmptyVertexType);
        }
        for &k in tuple {
            if k < 3 {
                return Err(ComplexError::BadVertexType { value: k });
            }
        }
        Ok(())
    }

    pub fn face_sizes(&self) -> &[usize] {
        &self.tuple
    }

    pub fn degree(&self) -> usize {
        self.tuple.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn max_side(&self) -> usize {
        *self.tuple.iter().max().expect("nonempty tuple")
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, k) in self.tuple.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "]")
    }
}

/// One vertex of a complex: its canonical type and whether its link is open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRecord {
    pub id: usize,
    pub vertex_type: VertexType,
    pub is_boundary: bool,
}

/// Why a complex fails the edge-to-edge property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeToEdgeViolation {
    /// Two faces (possibly the same face) share two or more glued edges.
    SharedEdges { face_a: FaceId, face_b: FaceId, edges: usize },
    /// An interior vertex of degree below 3.
    LowDegree { vertex: usize, degree: usize },
}

impl fmt::Display for EdgeToEdgeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeToEdgeViolation::SharedEdges { face_a, face_b, edges } => {
                write!(f, "faces {face_a} and {face_b} share {edges} edges")
            }
            EdgeToEdgeViolation::LowDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree} < 3")
            }
        }
    }
}

/// An immutable oriented combinatorial map built from [`GluingData`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonalComplex {
    face_sides: Vec<usize>,
    face_names: Vec<String>,
    dart_offset: Vec<DartId>,
    dart_face: Vec<FaceId>,
    alpha: Vec<Option<DartId>>,
    reversing: Vec<bool>,
    vertices: Vec<VertexRecord>,
    corner_vertex: Vec<usize>,
    corner_orbits: Vec<Vec<DartId>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sense {
    Ccw,
    Cw,
}

impl PolygonalComplex {
    /// Validates gluing data and assembles the dart permutations.
    pub fn build(data: &GluingData) -> Result<Self, ComplexError> {
        let nfaces = data.faces.len();
        let mut dart_offset = Vec::with_capacity(nfaces);
        let mut dart_face = Vec::new();
        let mut face_sides = Vec::with_capacity(nfaces);
        let mut face_names = Vec::with_capacity(nfaces);
        for (f, decl) in data.faces.iter().enumerate() {
            if decl.sides < 3 {
                return Err(ComplexError::BadSideCount {
                    face: decl.name.clone(),
                    sides: decl.sides,
                });
            }
            dart_offset.push(dart_face.len());
            face_sides.push(decl.sides);
            face_names.push(decl.name.clone());
            for _ in 0..decl.sides {
                dart_face.push(f);
            }
        }
        let ndarts = dart_face.len();
        let slot_dart = |slot: Slot| -> Result<DartId, ComplexError> {
            if slot.face >= nfaces || slot.side >= face_sides[slot.face] {
                return Err(ComplexError::SlotOutOfRange { slot, faces: nfaces });
            }
            Ok(dart_offset[slot.face] + slot.side)
        };

        let mut alpha: Vec<Option<DartId>> = vec![None; ndarts];
        let mut reversing = vec![true; ndarts];
        for gluing in &data.gluings {
            let da = slot_dart(gluing.a)?;
            let db = slot_dart(gluing.b)?;
            if da == db {
                return Err(ComplexError::SelfPairedSlot { slot: gluing.a });
            }
            for (d, slot) in [(da, gluing.a), (db, gluing.b)] {
                if alpha[d].is_some() {
                    return Err(ComplexError::DuplicateSlot { slot });
                }
            }
            alpha[da] = Some(db);
            alpha[db] = Some(da);
            reversing[da] = gluing.reversed;
            reversing[db] = gluing.reversed;
        }

        let mut complex = PolygonalComplex {
            face_sides,
            face_names,
            dart_offset,
            dart_face,
            alpha,
            reversing,
            vertices: Vec::new(),
            corner_vertex: Vec::new(),
            corner_orbits: Vec::new(),
        };
        complex.trace_vertices()?;
        Ok(complex)
    }

    pub fn num_faces(&self) -> usize {
        self.face_sides.len()
    }

    pub fn num_darts(&self) -> usize {
        self.dart_face.len()
    }

    pub fn sides(&self, face: FaceId) -> usize {
        self.face_sides[face]
    }

    pub fn face_name(&self, face: FaceId) -> &str {
        &self.face_names[face]
    }

    pub fn dart(&self, slot: Slot) -> DartId {
        debug_assert!(slot.side < self.face_sides[slot.face]);
        self.dart_offset[slot.face] + slot.side
    }

    pub fn slot(&self, dart: DartId) -> Slot {
        let face = self.dart_face[dart];
        Slot { face, side: dart - self.dart_offset[face] }
    }

    pub fn face_of(&self, dart: DartId) -> FaceId {
        self.dart_face[dart]
    }

    /// Next dart counterclockwise within the same face.
    pub fn phi(&self, dart: DartId) -> DartId {
        let f = self.dart_face[dart];
        let o = self.dart_offset[f];
        o + (dart - o + 1) % self.face_sides[f]
    }

    pub fn phi_inv(&self, dart: DartId) -> DartId {
        let f = self.dart_face[dart];
        let o = self.dart_offset[f];
        o + (dart - o + self.face_sides[f] - 1) % self.face_sides[f]
    }

    /// Paired dart, if this slot is glued.
    pub fn alpha(&self, dart: DartId) -> Option<DartId> {
        self.alpha[dart]
    }

    /// Whether the gluing on this dart is orientation-reversing. Meaningless
    /// for boundary darts.
    pub fn is_reversing(&self, dart: DartId) -> bool {
        self.reversing[dart]
    }

    /// Next dart around the origin vertex of `dart` (`sigma = phi ∘ alpha`).
    /// `None` at the boundary. Only meaningful when every gluing reverses.
    pub fn sigma(&self, dart: DartId) -> Option<DartId> {
        self.alpha[dart].map(|d| self.phi(d))
    }

    pub fn boundary_darts(&self) -> impl Iterator<Item = DartId> + '_ {
        (0..self.num_darts()).filter(|&d| self.alpha[d].is_none())
    }

    pub fn is_closed(&self) -> bool {
        self.alpha.iter().all(|a| a.is_some())
    }

    /// Edges, one canonical dart each: the smaller dart of each glued pair,
    /// plus every boundary dart.
    pub fn edges(&self) -> impl Iterator<Item = DartId> + '_ {
        (0..self.num_darts()).filter(|&d| match self.alpha[d] {
            Some(e) => d < e,
            None => true,
        })
    }

    pub fn num_edges(&self) -> usize {
        self.edges().count()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_records(&self) -> &[VertexRecord] {
        &self.vertices
    }

    /// Vertex at the origin corner of a dart.
    pub fn vertex_of_corner(&self, dart: DartId) -> usize {
        self.corner_vertex[dart]
    }

    /// Corners of a vertex in link order (cyclic for interior vertices, one
    /// end to the other for boundary vertices).
    pub fn corners_of_vertex(&self, vertex: usize) -> &[DartId] {
        &self.corner_orbits[vertex]
    }

    pub fn euler_characteristic_raw(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    /// One step of the corner walk around a vertex. A corner is identified
    /// with the dart whose origin it is; crossing a non-reversing gluing
    /// flips the walking sense.
    fn corner_step(&self, corner: DartId, sense: Sense) -> Option<(DartId, Sense)> {
        let slot = match sense {
            Sense::Ccw => corner,
            Sense::Cw => self.phi_inv(corner),
        };
        let twin = self.alpha[slot]?;
        Some(match (sense, self.reversing[slot]) {
            (Sense::Ccw, true) => (self.phi(twin), Sense::Ccw),
            (Sense::Ccw, false) => (twin, Sense::Cw),
            (Sense::Cw, true) => (twin, Sense::Cw),
            (Sense::Cw, false) => (self.phi(twin), Sense::Ccw),
        })
    }

    fn trace_vertices(&mut self) -> Result<(), ComplexError> {
        let n = self.num_darts();
        let mut corner_vertex = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        let mut orbits = Vec::new();
        let step_cap = 2 * n + 2;
        for start in 0..n {
            if corner_vertex[start] != usize::MAX {
                continue;
            }
            let mut corners = vec![start];
            let mut closed = false;
            let mut cur = (start, Sense::Ccw);
            let mut steps = 0usize;
            while let Some((c, s)) = self.corner_step(cur.0, cur.1) {
                steps += 1;
                if steps > step_cap {
                    return Err(ComplexError::CornerWalkDiverged);
                }
                if c == start {
                    closed = true;
                    break;
                }
                corners.push(c);
                cur = (c, s);
            }
            if !closed {
                // walk the other way to find the chain start
                let mut cur = (start, Sense::Cw);
                while let Some((c, s)) = self.corner_step(cur.0, cur.1) {
                    steps += 1;
                    if steps > step_cap {
                        return Err(ComplexError::CornerWalkDiverged);
                    }
                    corners.insert(0, c);
                    cur = (c, s);
                }
            }
            let id = vertices.len();
            for &c in &corners {
                if corner_vertex[c] != usize::MAX {
                    return Err(ComplexError::CornerWalkDiverged);
                }
                corner_vertex[c] = id;
            }
            let sizes: Vec<usize> =
                corners.iter().map(|&c| self.face_sides[self.dart_face[c]]).collect();
            let vertex_type = if closed {
                VertexType::cyclic(&sizes)?
            } else {
                VertexType::linear(&sizes)?
            };
            vertices.push(VertexRecord { id, vertex_type, is_boundary: !closed });
            orbits.push(corners);
        }
        self.vertices = vertices;
        self.corner_vertex = corner_vertex;
        self.corner_orbits = orbits;
        Ok(())
    }

    /// Degree of a vertex: the number of corners in its link.
    pub fn vertex_degree(&self, vertex: usize) -> usize {
        self.corner_orbits[vertex].len()
    }

    /// Checks the edge-to-edge property: any two tiles meet in at most one
    /// edge and interior vertices have degree at least 3. Returns the first
    /// violation found, scanning face pairs before vertex degrees.
    pub fn edge_to_edge_violation(&self) -> Option<EdgeToEdgeViolation> {
        let mut shared: HashMap<(FaceId, FaceId), usize> = HashMap::new();
        for d in self.edges() {
            if let Some(e) = self.alpha[d] {
                let (a, b) = (self.dart_face[d], self.dart_face[e]);
                let key = if a <= b { (a, b) } else { (b, a) };
                *shared.entry(key).or_insert(0) += 1;
            }
        }
        let mut worst: Option<(FaceId, FaceId, usize)> = None;
        for (&(a, b), &count) in &shared {
            if count >= 2 && worst.is_none_or(|w| (a, b) < (w.0, w.1)) {
                worst = Some((a, b, count));
            }
        }
        if let Some((face_a, face_b, edges)) = worst {
            return Some(EdgeToEdgeViolation::SharedEdges { face_a, face_b, edges });
        }
        for v in &self.vertices {
            if !v.is_boundary && self.vertex_degree(v.id) < 3 {
                return Some(EdgeToEdgeViolation::LowDegree {
                    vertex: v.id,
                    degree: self.vertex_degree(v.id),
                });
            }
        }
        None
    }

    pub fn is_edge_to_edge(&self) -> bool {
        self.edge_to_edge_violation().is_none()
    }

    /// True iff the faces can be oriented so that every gluing reverses.
    /// Two-colors the face adjacency graph: a reversing gluing wants equal
    /// colors, a non-reversing one wants opposite colors.
    pub fn is_orientable(&self) -> bool {
        let n = self.num_faces();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut stack = vec![root];
            while let Some(f) = stack.pop() {
                let cf = color[f].expect("colored before push");
                for side in 0..self.face_sides[f] {
                    let d = self.dart_offset[f] + side;
                    let Some(e) = self.alpha[d] else { continue };
                    let g = self.dart_face[e];
                    let want = if self.reversing[d] { cf } else { !cf };
                    match color[g] {
                        None => {
                            color[g] = Some(want);
                            stack.push(g);
                        }
                        Some(cg) if cg != want => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Reconstructs gluing data equivalent to this complex.
    pub fn to_gluing_data(&self) -> GluingData {
        let mut data = GluingData::new();
        for f in 0..self.num_faces() {
            data.add_face(self.face_names[f].clone(), self.face_sides[f]);
        }
        for d in self.edges() {
            if let Some(e) = self.alpha[d] {
                data.add_gluing_with(self.slot(d), self.slot(e), self.reversing[d]);
            }
        }
        data
    }

    /// Faces adjacent to `face` across its sides, in side order; `None` for
    /// boundary sides.
    pub fn neighbors(&self, face: FaceId) -> impl Iterator<Item = Option<FaceId>> + '_ {
        (0..self.face_sides[face])
            .map(move |side| self.alpha[self.dart_offset[face] + side].map(|e| self.dart_face[e]))
    }
}

/// Convenience wrapper matching the operation name used throughout the docs.
pub fn build_complex(data: &GluingData) -> Result<PolygonalComplex, ComplexError> {
    PolygonalComplex::build(data)
}

/// Whether two complexes are isomorphic as complexes rooted at the given
/// darts. The pairing is propagated with `phi` and `alpha` from the roots;
/// it either extends uniquely or fails.
pub fn rooted_isomorphic(
    a: &PolygonalComplex,
    root_a: DartId,
    b: &PolygonalComplex,
    root_b: DartId,
) -> bool {
    if a.num_darts() != b.num_darts() || a.num_faces() != b.num_faces() {
        return false;
    }
    let mut map: Vec<Option<DartId>> = vec![None; a.num_darts()];
    let mut seen_b: Vec<bool> = vec![false; b.num_darts()];
    let mut queue = std::collections::VecDeque::new();
    let pair = |x: DartId,
                    y: DartId,
                    map: &mut Vec<Option<DartId>>,
                    seen_b: &mut Vec<bool>,
                    queue: &mut std::collections::VecDeque<(DartId, DartId)>|
     -> bool {
        match map[x] {
            Some(prev) => prev == y,
            None => {
                if seen_b[y] {
                    return false;
                }
                map[x] = Some(y);
                seen_b[y] = true;
                queue.push_back((x, y));
                true
            }
        }
    };
    if !pair(root_a, root_b, &mut map, &mut seen_b, &mut queue) {
        return false;
    }
    while let Some((x, y)) = queue.pop_front() {
        if a.sides(a.face_of(x)) != b.sides(b.face_of(y)) {
            return false;
        }
        if !pair(a.phi(x), b.phi(y), &mut map, &mut seen_b, &mut queue) {
            return false;
        }
        match (a.alpha(x), b.alpha(y)) {
            (Some(xa), Some(ya)) => {
                if a.is_reversing(x) != b.is_reversing(y) {
                    return false;
                }
                if !pair(xa, ya, &mut map, &mut seen_b, &mut queue) {
                    return false;
                }
            }
            (None, None) => {}
            _ => return false,
        }
    }
    map.iter().all(|m| m.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn square_torus_data() -> GluingData {
        let mut g = GluingData::new();
        let f = g.add_face("f0", 4);
        g.add_gluing(Slot::new(f, 0), Slot::new(f, 2));
        g.add_gluing(Slot::new(f, 1), Slot::new(f, 3));
        g
    }

    #[test]
    fn square_torus_counts() {
        let c = PolygonalComplex::build(&square_torus_data()).unwrap();
        assert_eq!(c.num_faces(), 1);
        assert_eq!(c.num_edges(), 2);
        assert_eq!(c.num_vertices(), 1);
        let v = &c.vertex_records()[0];
        assert!(!v.is_boundary);
        assert_eq!(v.vertex_type, VertexType::cyclic(&[4, 4, 4, 4]).unwrap());
        assert!(c.is_closed());
        assert!(c.is_orientable());
    }

    #[test]
    fn square_torus_not_edge_to_edge() {
        let c = PolygonalComplex::build(&square_torus_data()).unwrap();
        match c.edge_to_edge_violation() {
            Some(EdgeToEdgeViolation::SharedEdges { face_a: 0, face_b: 0, edges: 2 }) => {}
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn klein_bottle_is_not_orientable() {
        let mut g = GluingData::new();
        let f = g.add_face("f0", 4);
        g.add_gluing_with(Slot::new(f, 0), Slot::new(f, 2), false);
        g.add_gluing(Slot::new(f, 1), Slot::new(f, 3));
        let c = PolygonalComplex::build(&g).unwrap();
        assert!(!c.is_orientable());
        assert_eq!(c.num_vertices(), 1);
        assert_eq!(c.euler_characteristic_raw(), 0);
    }

    #[test]
    fn projective_plane_from_square() {
        // antipodal identification: both gluings non-reversing
        let mut g = GluingData::new();
        let f = g.add_face("f0", 4);
        g.add_gluing_with(Slot::new(f, 0), Slot::new(f, 2), false);
        g.add_gluing_with(Slot::new(f, 1), Slot::new(f, 3), false);
        let c = PolygonalComplex::build(&g).unwrap();
        assert!(!c.is_orientable());
        assert_eq!(c.num_vertices(), 2);
        assert_eq!(c.euler_characteristic_raw(), 1);
        for v in c.vertex_records() {
            assert_eq!(v.vertex_type, VertexType::cyclic(&[4, 4]).unwrap());
        }
    }

    #[test]
    fn lone_square_has_boundary() {
        let mut g = GluingData::new();
        g.add_face("f0", 4);
        let c = PolygonalComplex::build(&g).unwrap();
        assert!(!c.is_closed());
        assert_eq!(c.boundary_darts().count(), 4);
        assert_eq!(c.num_edges(), 4);
        assert_eq!(c.num_vertices(), 4);
        for v in c.vertex_records() {
            assert!(v.is_boundary);
            assert_eq!(v.vertex_type.face_sizes(), &[4]);
        }
    }

    #[test]
    fn build_rejects_malformed_input() {
        let mut g = GluingData::new();
        g.add_face("f0", 2);
        assert!(matches!(
            PolygonalComplex::build(&g),
            Err(ComplexError::BadSideCount { sides: 2, .. })
        ));

        let mut g = GluingData::new();
        let f = g.add_face("f0", 4);
        g.add_gluing(Slot::new(f, 0), Slot::new(f, 0));
        assert!(matches!(
            PolygonalComplex::build(&g),
            Err(ComplexError::SelfPairedSlot { .. })
        ));

        let mut g = GluingData::new();
        let f = g.add_face("f0", 4);
        g.add_gluing(Slot::new(f, 0), Slot::new(f, 1));
        g.add_gluing(Slot::new(f, 0), Slot::new(f, 2));
        assert!(matches!(
            PolygonalComplex::build(&g),
            Err(ComplexError::DuplicateSlot { .. })
        ));

        let mut g = GluingData::new();
        let f = g.add_face("f0", 4);
        g.add_gluing(Slot::new(f, 0), Slot::new(f, 7));
        assert!(matches!(
            PolygonalComplex::build(&g),
            Err(ComplexError::SlotOutOfRange { .. })
        ));
    }

    #[test]
    fn teardrop_has_a_degree_one_interior_vertex() {
        // triangle with two adjacent sides sewn together: a disc with a cone
        // point whose link is a single corner
        let mut g = GluingData::new();
        let f = g.add_face("f0", 3);
        g.add_gluing(Slot::new(f, 0), Slot::new(f, 1));
        let c = PolygonalComplex::build(&g).unwrap();
        assert_eq!(c.num_faces(), 1);
        assert_eq!(c.num_edges(), 2);
        assert_eq!(c.num_vertices(), 2);
        assert_eq!(c.euler_characteristic_raw(), 1);
        let interior: Vec<_> =
            c.vertex_records().iter().filter(|v| !v.is_boundary).collect();
        assert_eq!(interior.len(), 1);
        assert_eq!(interior[0].vertex_type.face_sizes(), &[3]);
        assert_eq!(c.vertex_degree(interior[0].id), 1);
    }

    #[test]
    fn vertex_type_canonical_forms() {
        let t = VertexType::cyclic(&[5, 3, 5, 3]).unwrap();
        assert_eq!(t.face_sizes(), &[3, 5, 3, 5]);
        let t = VertexType::cyclic(&[4, 6, 8]).unwrap();
        assert_eq!(t.face_sizes(), &[4, 6, 8]);
        let t = VertexType::cyclic(&[6, 4, 8]).unwrap();
        assert_eq!(t.face_sizes(), &[4, 6, 8]);
        assert!(matches!(
            VertexType::cyclic(&[3, 2, 3]),
            Err(ComplexError::BadVertexType { value: 2 })
        ));
        assert!(matches!(VertexType::cyclic(&[]), Err(ComplexError::EmptyVertexType)));
    }

    #[test]
    fn rooted_isomorphism_detects_relabeling() {
        let a = PolygonalComplex::build(&square_torus_data()).unwrap();
        // same torus but with the slot numbering rotated by one
        let mut g = GluingData::new();
        let f = g.add_face("other", 4);
        g.add_gluing(Slot::new(f, 1), Slot::new(f, 3));
        g.add_gluing(Slot::new(f, 2), Slot::new(f, 0));
        let b = PolygonalComplex::build(&g).unwrap();
        assert!(rooted_isomorphic(&a, 0, &b, 1));
        assert!(rooted_isomorphic(&a, 0, &b, 3));
    }
}
