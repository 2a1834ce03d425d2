//! Universal-cover development: finite balls of the universal cover built
//! face by face with vertex-link closure.
//!
//! Development keeps a growing complex with boundary. Each frontier edge is
//! crossed by attaching a fresh copy of the base face prescribed on the other
//! side; whenever the fan of corners around a pending vertex reaches the full
//! degree of its base vertex, the two free sides at the fan's ends are glued
//! to each other. Closure happens only through completed links — never by
//! identifying faces early — which is exactly what keeps the result simply
//! connected. The same engine, driven by a constant face size and vertex
//! degree instead of a base complex, grows combinatorial balls of the {p,q}
//! tessellations.

use std::collections::VecDeque;

use thiserror::Error;

use crate::complex::{
    ComplexError, DartId, FaceId, GluingData, PolygonalComplex, Slot, VertexType,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("base complex has boundary; universal covers are developed from closed complexes")]
    HasBoundary,
    #[error("base complex is not orientable")]
    NonOrientable,
    #[error("development limit must allow at least one face")]
    LimitTooSmall,
    #[error("development produced inconsistent links; base complex is corrupt")]
    Internal,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Stopping rule for a development.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DevelopmentLimit {
    MaxFaces(usize),
    MaxGeneration(usize),
}

/// How a development run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaltReason {
    /// Every link closed; the ball is a closed complex (the base was simply
    /// connected).
    Closure,
    /// The face or generation limit stopped growth; boundary remains.
    Limit,
}

/// A finite development of the universal cover, with its projection to the
/// base complex.
#[derive(Debug, Clone)]
pub struct CoverBall {
    pub complex: PolygonalComplex,
    /// Cover dart → base dart. Commutes with `phi`, and with `alpha` wherever
    /// the cover dart is glued.
    pub projection: Vec<DartId>,
    /// Cover face → BFS depth from the seed face.
    pub generation: Vec<usize>,
    pub halted: HaltReason,
}

impl CoverBall {
    pub fn faces_of_generation(&self, g: usize) -> usize {
        self.generation.iter().filter(|&&x| x == g).count()
    }

    pub fn max_generation(&self) -> usize {
        self.generation.iter().copied().max().unwrap_or(0)
    }
}

/// What the developer needs to know about the other side of a frontier edge.
trait Prescription {
    fn seed_sides(&self) -> usize;
    /// Sides of the face across the given cover dart and the side index of
    /// that face that must meet the frontier dart.
    fn across(&self, state: &State, dart: DartId) -> (usize, usize);
    /// Full degree of the vertex at the origin corner of a cover dart.
    fn vertex_degree(&self, state: &State, corner: DartId) -> usize;
    /// Base dart image of side `side` of a newly attached face across `dart`.
    fn project(&self, state: &State, dart: DartId, side: usize) -> DartId;
    fn seed_project(&self, side: usize) -> DartId;
}

struct BasePrescription<'a> {
    base: &'a PolygonalComplex,
    seed_face: FaceId,
}

impl Prescription for BasePrescription<'_> {
    fn seed_sides(&self) -> usize {
        self.base.sides(self.seed_face)
    }

    fn across(&self, state: &State, dart: DartId) -> (usize, usize) {
        let image = state.projection[dart];
        let partner = self.base.alpha(image).expect("base is closed");
        let slot = self.base.slot(partner);
        (self.base.sides(slot.face), slot.side)
    }

    fn vertex_degree(&self, state: &State, corner: DartId) -> usize {
        let image = state.projection[corner];
        let v = self.base.vertex_of_corner(image);
        self.base.vertex_degree(v)
    }

    fn project(&self, state: &State, dart: DartId, side: usize) -> DartId {
        let image = state.projection[dart];
        let partner = self.base.alpha(image).expect("base is closed");
        let face = self.base.face_of(partner);
        self.base.dart(Slot::new(face, side))
    }

    fn seed_project(&self, side: usize) -> DartId {
        self.base.dart(Slot::new(self.seed_face, side))
    }
}

/// Constant prescription for {p,q}: every face has `p` sides, every vertex
/// degree `q`; a new face always attaches across its side 0.
struct UniformPrescription {
    sides: usize,
    degree: usize,
}

impl Prescription for UniformPrescription {
    fn seed_sides(&self) -> usize {
        self.sides
    }

    fn across(&self, _state: &State, _dart: DartId) -> (usize, usize) {
        (self.sides, 0)
    }

    fn vertex_degree(&self, _state: &State, _corner: DartId) -> usize {
        self.degree
    }

    fn project(&self, _state: &State, _dart: DartId, side: usize) -> DartId {
        side
    }

    fn seed_project(&self, side: usize) -> DartId {
        side
    }
}

/// Growing cover: faces, partial alpha, projection, generations.
struct State {
    face_sides: Vec<usize>,
    dart_offset: Vec<DartId>,
    dart_face: Vec<FaceId>,
    alpha: Vec<Option<DartId>>,
    projection: Vec<DartId>,
    generation: Vec<usize>,
}

impl State {
    fn new() -> Self {
        State {
            face_sides: Vec::new(),
            dart_offset: Vec::new(),
            dart_face: Vec::new(),
            alpha: Vec::new(),
            projection: Vec::new(),
            generation: Vec::new(),
        }
    }

    fn num_faces(&self) -> usize {
        self.face_sides.len()
    }

    fn add_face(&mut self, sides: usize, generation: usize) -> FaceId {
        let f = self.num_faces();
        self.dart_offset.push(self.dart_face.len());
        self.face_sides.push(sides);
        self.generation.push(generation);
        for _ in 0..sides {
            self.dart_face.push(f);
            self.alpha.push(None);
            self.projection.push(usize::MAX);
        }
        f
    }

    fn phi(&self, d: DartId) -> DartId {
        let f = self.dart_face[d];
        let o = self.dart_offset[f];
        o + (d - o + 1) % self.face_sides[f]
    }

    fn phi_inv(&self, d: DartId) -> DartId {
        let f = self.dart_face[d];
        let o = self.dart_offset[f];
        o + (d - o + self.face_sides[f] - 1) % self.face_sides[f]
    }

    fn sigma(&self, d: DartId) -> Option<DartId> {
        self.alpha[d].map(|a| self.phi(a))
    }

    fn sigma_inv(&self, d: DartId) -> Option<DartId> {
        self.alpha[self.phi_inv(d)]
    }

    /// Corner chain through `c`: the corners around its vertex in link order,
    /// and whether the link is closed.
    fn chain(&self, c: DartId) -> (Vec<DartId>, bool) {
        let mut corners = vec![c];
        let mut cur = c;
        while let Some(next) = self.sigma(cur) {
            if next == c {
                return (corners, true);
            }
            corners.push(next);
            cur = next;
        }
        cur = c;
        while let Some(prev) = self.sigma_inv(cur) {
            corners.insert(0, prev);
            cur = prev;
        }
        (corners, false)
    }

    fn glue(&mut self, a: DartId, b: DartId) {
        debug_assert!(self.alpha[a].is_none() && self.alpha[b].is_none());
        self.alpha[a] = Some(b);
        self.alpha[b] = Some(a);
    }

    /// Closes every completed link reachable from the given corners. A
    /// closure gluing merges the chains at the far end of the new edge, so
    /// that vertex is re-examined in turn.
    fn close_links<P: Prescription>(
        &mut self,
        rule: &P,
        seeds: impl IntoIterator<Item = DartId>,
    ) -> Result<(), CoverError> {
        let mut work: Vec<DartId> = seeds.into_iter().collect();
        while let Some(c) = work.pop() {
            let (corners, closed) = self.chain(c);
            if closed {
                continue;
            }
            let degree = rule.vertex_degree(self, c);
            if corners.len() < degree {
                continue;
            }
            if corners.len() > degree {
                return Err(CoverError::Internal);
            }
            let first = corners[0];
            let last = *corners.last().expect("nonempty chain");
            let s1 = last;
            let s2 = self.phi_inv(first);
            if self.alpha[s1].is_some() || self.alpha[s2].is_some() || s1 == s2 {
                return Err(CoverError::Internal);
            }
            self.glue(s1, s2);
            work.push(self.phi(s1));
        }
        Ok(())
    }

    fn into_ball(self) -> Result<CoverBall, CoverError> {
        let mut data = GluingData::new();
        for (f, &sides) in self.face_sides.iter().enumerate() {
            data.add_face(format!("c{f}"), sides);
        }
        let slot = |d: DartId| {
            let f = self.dart_face[d];
            Slot::new(f, d - self.dart_offset[f])
        };
        for d in 0..self.alpha.len() {
            if let Some(e) = self.alpha[d] {
                if d < e {
                    data.add_gluing(slot(d), slot(e));
                }
            }
        }
        let halted = if self.alpha.iter().all(|a| a.is_some()) {
            HaltReason::Closure
        } else {
            HaltReason::Limit
        };
        Ok(CoverBall {
            complex: PolygonalComplex::build(&data)?,
            projection: self.projection,
            generation: self.generation,
            halted,
        })
    }
}

fn develop<P: Prescription>(rule: &P, limit: DevelopmentLimit) -> Result<CoverBall, CoverError> {
    if matches!(limit, DevelopmentLimit::MaxFaces(0)) {
        return Err(CoverError::LimitTooSmall);
    }
    let mut state = State::new();
    let seed = state.add_face(rule.seed_sides(), 0);
    let seed_offset = state.dart_offset[seed];
    for side in 0..state.face_sides[seed] {
        state.projection[seed_offset + side] = rule.seed_project(side);
    }
    state.close_links(rule, seed_offset..seed_offset + state.face_sides[seed])?;

    let mut frontier: VecDeque<DartId> =
        (seed_offset..seed_offset + state.face_sides[seed]).collect();
    while let Some(d) = frontier.pop_front() {
        if state.alpha[d].is_some() {
            continue;
        }
        let generation = state.generation[state.dart_face[d]] + 1;
        match limit {
            DevelopmentLimit::MaxFaces(max) if state.num_faces() >= max => break,
            DevelopmentLimit::MaxGeneration(max) if generation > max => break,
            _ => {}
        }
        let (sides, attach_side) = rule.across(&state, d);
        let f = state.add_face(sides, generation);
        let offset = state.dart_offset[f];
        for side in 0..sides {
            state.projection[offset + side] = rule.project(&state, d, side);
        }
        state.glue(d, offset + attach_side);
        state.close_links(rule, [d, state.phi(d)])?;
        for side in 0..sides {
            frontier.push_back(offset + side);
        }
    }
    state.into_ball()
}

/// Develops a ball of the universal cover of a closed, orientable, connected
/// base complex, seeded at face 0. Development is breadth-first over frontier
/// edges in creation order, so the output is deterministic.
pub fn develop_universal_cover(
    base: &PolygonalComplex,
    limit: DevelopmentLimit,
) -> Result<CoverBall, CoverError> {
    if !base.is_closed() {
        return Err(CoverError::HasBoundary);
    }
    if !base.is_orientable() {
        return Err(CoverError::NonOrientable);
    }
    if base.num_faces() == 0 {
        return Err(CoverError::LimitTooSmall);
    }
    let rule = BasePrescription { base, seed_face: 0 };
    develop(&rule, limit)
}

/// Grows the radius-`radius` combinatorial ball of the {p,q} tessellation
/// (dual-graph BFS depth from the seed p-gon). For spherical {p,q} the ball
/// closes up into the corresponding Platonic solid once the radius is large
/// enough.
pub(crate) fn develop_uniform(
    p: usize,
    q: usize,
    radius: usize,
) -> Result<CoverBall, CoverError> {
    let rule = UniformPrescription { sides: p, degree: q };
    develop(&rule, DevelopmentLimit::MaxGeneration(radius))
}

/// One projection-equivariance violation found by [`verify_covering`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoveringViolation {
    ProjectionOutOfRange { dart: DartId },
    PhiNotEquivariant { dart: DartId },
    AlphaNotEquivariant { dart: DartId },
    SideCountMismatch { face: FaceId, cover_sides: usize, base_sides: usize },
    VertexTypeMismatch { vertex: usize, cover_type: VertexType, base_type: VertexType },
}

impl std::fmt::Display for CoveringViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoveringViolation::ProjectionOutOfRange { dart } => {
                write!(f, "dart {dart}: projection out of range")
            }
            CoveringViolation::PhiNotEquivariant { dart } => {
                write!(f, "dart {dart}: projection does not commute with phi")
            }
            CoveringViolation::AlphaNotEquivariant { dart } => {
                write!(f, "dart {dart}: projection does not commute with alpha")
            }
            CoveringViolation::SideCountMismatch { face, cover_sides, base_sides } => {
                write!(f, "face {face}: {cover_sides} sides over a {base_sides}-gon")
            }
            CoveringViolation::VertexTypeMismatch { vertex, cover_type, base_type } => {
                write!(f, "interior vertex {vertex}: type {cover_type} over {base_type}")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("projection table length {got} does not match the ball's dart count {want}")]
    MismatchedBase { got: usize, want: usize },
}

/// Checks the covering conditions: the projection commutes with `phi` and
/// (where defined) `alpha`, faces project to faces of the same size, and
/// every interior cover vertex has the vertex-type of its image. Returns all
/// violations; an empty list means the ball is a genuine partial covering.
pub fn verify_covering(
    ball: &CoverBall,
    base: &PolygonalComplex,
) -> Result<Vec<CoveringViolation>, VerifyError> {
    let cover = &ball.complex;
    if ball.projection.len() != cover.num_darts() {
        return Err(VerifyError::MismatchedBase {
            got: ball.projection.len(),
            want: cover.num_darts(),
        });
    }
    let mut violations = Vec::new();
    for d in 0..cover.num_darts() {
        let image = ball.projection[d];
        if image >= base.num_darts() {
            violations.push(CoveringViolation::ProjectionOutOfRange { dart: d });
            continue;
        }
        if ball.projection[cover.phi(d)] != base.phi(image) {
            violations.push(CoveringViolation::PhiNotEquivariant { dart: d });
        }
        if let Some(e) = cover.alpha(d) {
            if base.alpha(image) != Some(ball.projection[e]) {
                violations.push(CoveringViolation::AlphaNotEquivariant { dart: d });
            }
        }
    }
    for f in 0..cover.num_faces() {
        let d = cover.dart(Slot::new(f, 0));
        let image = ball.projection[d];
        if image >= base.num_darts() {
            continue;
        }
        let base_sides = base.sides(base.face_of(image));
        if cover.sides(f) != base_sides {
            violations.push(CoveringViolation::SideCountMismatch {
                face: f,
                cover_sides: cover.sides(f),
                base_sides,
            });
        }
    }
    for v in cover.vertex_records() {
        if v.is_boundary {
            continue;
        }
        let corner = cover.corners_of_vertex(v.id)[0];
        let image = ball.projection[corner];
        if image >= base.num_darts() {
            continue;
        }
        let base_type = &base.vertex_records()[base.vertex_of_corner(image)].vertex_type;
        if v.vertex_type != *base_type {
            violations.push(CoveringViolation::VertexTypeMismatch {
                vertex: v.id,
                cover_type: v.vertex_type.clone(),
                base_type: base_type.clone(),
            });
        }
    }
    Ok(violations)
}
