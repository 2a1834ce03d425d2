//! Piece-wise geodesic distances on spherical realizations, approximated
//! from above by shortest paths in a sampling graph.
//!
//! Every face is realized as a unit regular r-spherical polygon in its own
//! chart (a copy of the radius-r sphere, face center at the north pole);
//! no global embedding is attempted. The mesh samples each face — corners,
//! points along every edge, and an interior polar grid at pitch `h` — and
//! links same-face node pairs by the geodesic arc between them. Faces are
//! geodesically convex (interior angles are below π), so every such arc lies
//! inside its face and every mesh path is a realizable piece-wise geodesic:
//! mesh distances are true upper bounds on the metric. Edge samples are
//! shared node-for-node across glued faces, vertices across all their faces.

use std::collections::BinaryHeap;
use std::f64::consts::PI;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{DartId, FaceId, PolygonalComplex, VertexType};
use crate::spherical::{polygon_spec, spherical_angle_sum, SphericalError};

/// Same-face nodes are linked when their geodesic distance is at most this
/// multiple of the mesh pitch.
const LINK_RADIUS_FACTOR: f64 = 2.0;
/// Interior grid points keep this fraction of the pitch clear of the face
/// boundary, so they never collide with edge samples.
const CLIP_MARGIN_FACTOR: f64 = 0.25;
/// Default cap on the total node count.
pub const DEFAULT_NODE_BUDGET: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error(transparent)]
    Spherical(#[from] SphericalError),
    #[error("mesh pitch h = {0} is outside (0, 0.5]")]
    BadResolution(f64),
    #[error("mesh would need {needed} nodes, over the budget of {budget}")]
    MeshTooFine { needed: usize, budget: usize },
    #[error("point lies outside face {face}")]
    PointOutsideFace { face: FaceId },
    #[error("mesh graph is disconnected; edge stitching failed")]
    Disconnected,
    #[error("spherical angle-sum of {0} is not below 2π at r = {1}")]
    HypothesisViolated(VertexType, f64),
}

mod vec3 {
    pub type V = [f64; 3];

    pub fn dot(a: V, b: V) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    pub fn cross(a: V, b: V) -> V {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    pub fn norm(a: V) -> f64 {
        dot(a, a).sqrt()
    }

    pub fn normalize(a: V) -> V {
        let n = norm(a);
        [a[0] / n, a[1] / n, a[2] / n]
    }

    /// Angle between unit vectors, stable near 0 and π.
    pub fn angle(a: V, b: V) -> f64 {
        norm(cross(a, b)).atan2(dot(a, b))
    }

    /// Point at arc fraction `t` along the minor great-circle arc a → b.
    pub fn slerp(a: V, b: V, t: f64) -> V {
        let omega = angle(a, b);
        if omega < 1e-15 {
            return a;
        }
        let (sa, sb) = (((1.0 - t) * omega).sin(), (t * omega).sin());
        let s = omega.sin();
        normalize([
            (sa * a[0] + sb * b[0]) / s,
            (sa * a[1] + sb * b[1]) / s,
            (sa * a[2] + sb * b[2]) / s,
        ])
    }
}

use vec3::V;

/// One face realized on its own radius-r sphere, center at the north pole.
#[derive(Debug, Clone)]
pub struct EmbeddedFace {
    pub face: FaceId,
    pub n: usize,
    pub r: f64,
    /// Unit direction of corner `j`; geodesic distances scale by `r`.
    pub vertices: Vec<V>,
    /// Inward unit normals of the side planes, one per side.
    side_normals: Vec<V>,
    /// Circumradius as an angle from the pole.
    pub colatitude: f64,
    pub interior_angle: f64,
    pub area: f64,
}

impl EmbeddedFace {
    fn build(face: FaceId, n: usize, r: f64) -> Result<Self, MetricError> {
        let spec = polygon_spec(r, n)?;
        let colat = spec.circumradius / r;
        let (sc, cc) = (colat.sin(), colat.cos());
        let vertices: Vec<V> = (0..n)
            .map(|j| {
                let az = 2.0 * PI * j as f64 / n as f64;
                [sc * az.cos(), sc * az.sin(), cc]
            })
            .collect();
        let side_normals = (0..n)
            .map(|j| vec3::normalize(vec3::cross(vertices[j], vertices[(j + 1) % n])))
            .collect();
        Ok(EmbeddedFace {
            face,
            n,
            r,
            vertices,
            side_normals,
            colatitude: colat,
            interior_angle: spec.interior_angle,
            area: spec.area,
        })
    }

    /// Containment with a signed angular slack: positive values demand that
    /// much clearance from every side, small negative values accept points on
    /// the boundary.
    pub fn contains(&self, p: V, slack_angle: f64) -> bool {
        let s = slack_angle.sin();
        self.side_normals.iter().all(|&nrm| vec3::dot(p, nrm) >= s)
    }

    /// Geodesic distance between two points of this face.
    pub fn distance(&self, a: V, b: V) -> f64 {
        self.r * vec3::angle(a, b)
    }

    pub fn center(&self) -> V {
        [0.0, 0.0, 1.0]
    }

    /// Measured interior angle at corner `j`.
    pub fn corner_angle(&self, j: usize) -> f64 {
        let v = self.vertices[j];
        let prev = self.vertices[(j + self.n - 1) % self.n];
        let next = self.vertices[(j + 1) % self.n];
        let t_prev = tangent_at(v, prev);
        let t_next = tangent_at(v, next);
        vec3::angle(t_prev, t_next)
    }
}

/// Unit tangent at `p` of the arc from `p` toward `q`.
fn tangent_at(p: V, q: V) -> V {
    let d = vec3::dot(p, q);
    vec3::normalize([q[0] - d * p[0], q[1] - d * p[1], q[2] - d * p[2]])
}

/// Realizes every face of a complex at radius `r` in per-face charts.
pub fn embed_faces(complex: &PolygonalComplex, r: f64) -> Result<Vec<EmbeddedFace>, MetricError> {
    (0..complex.num_faces())
        .map(|f| EmbeddedFace::build(f, complex.sides(f), r))
        .collect()
}

/// A point on the surface: a face and a direction in that face's chart.
#[derive(Debug, Clone, Copy)]
pub struct SurfacePoint {
    pub face: FaceId,
    pub dir: V,
}

impl SurfacePoint {
    pub fn new(face: FaceId, dir: V) -> Self {
        SurfacePoint { face, dir: vec3::normalize(dir) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Vertex(usize),
    Edge { dart: DartId, index: usize },
    Interior,
}

#[derive(Debug, Clone)]
pub struct MeshNode {
    pub kind: NodeKind,
    /// Chart positions, one per incident face.
    pub positions: Vec<(FaceId, V)>,
}

impl MeshNode {
    pub fn position_in(&self, face: FaceId) -> Option<V> {
        self.positions.iter().find(|(f, _)| *f == face).map(|&(_, p)| p)
    }
}

/// Weighted sampling graph of a spherical realization. All link weights are
/// lengths of geodesic arcs inside single faces, so every path is a
/// piece-wise geodesic and every distance an upper bound.
#[derive(Debug, Clone)]
pub struct MeshGraph {
    pub r: f64,
    pub h: f64,
    pub nodes: Vec<MeshNode>,
    pub faces: Vec<EmbeddedFace>,
    adjacency: Vec<Vec<(usize, f64)>>,
    face_points: Vec<Vec<(usize, V)>>,
    vertex_nodes: Vec<usize>,
}

/// Documented budget formula: per face `area/h² + sides/h + 1`, plus one
/// node per vertex of the complex. The actual node count stays within a
/// factor of two of this.
pub fn node_budget_estimate(complex: &PolygonalComplex, r: f64, h: f64) -> Result<f64, MetricError> {
    let mut budget = complex.num_vertices() as f64;
    for f in 0..complex.num_faces() {
        let spec = polygon_spec(r, complex.sides(f))?;
        budget += spec.area / (h * h) + complex.sides(f) as f64 / h + 1.0;
    }
    Ok(budget)
}

pub fn build_mesh(
    complex: &PolygonalComplex,
    r: f64,
    h: f64,
    budget: Option<usize>,
) -> Result<MeshGraph, MetricError> {
    if !(h > 0.0 && h <= 0.5) {
        return Err(MetricError::BadResolution(h));
    }
    let budget = budget.unwrap_or(DEFAULT_NODE_BUDGET);
    let faces = embed_faces(complex, r)?;
    let mut nodes: Vec<MeshNode> = Vec::new();
    // one entry per chart position: a vertex that meets a face through
    // several corners appears once per corner
    let mut face_points: Vec<Vec<(usize, V)>> = vec![Vec::new(); complex.num_faces()];
    let mut push_node = |node: MeshNode,
                         face_points: &mut Vec<Vec<(usize, V)>>|
     -> Result<usize, MetricError> {
        let id = nodes.len();
        if id + 1 > budget {
            return Err(MetricError::MeshTooFine { needed: id + 1, budget });
        }
        for &(f, p) in &node.positions {
            face_points[f].push((id, p));
        }
        nodes.push(node);
        Ok(id)
    };

    // vertices: one node per complex vertex, with a position in each
    // incident face taken from that corner
    let mut vertex_nodes = Vec::with_capacity(complex.num_vertices());
    for v in complex.vertex_records() {
        let positions: Vec<(FaceId, V)> = complex
            .corners_of_vertex(v.id)
            .iter()
            .map(|&corner| {
                let slot = complex.slot(corner);
                (slot.face, faces[slot.face].vertices[slot.side])
            })
            .collect();
        let id = push_node(
            MeshNode { kind: NodeKind::Vertex(v.id), positions },
            &mut face_points,
        )?;
        vertex_nodes.push(id);
    }

    // edge samples: ⌈1/h⌉ segments per unit edge, identified across gluings
    // with matching arc-length parameter
    let segments = (1.0 / h).ceil() as usize;
    for d in complex.edges() {
        let sd = complex.slot(d);
        let (fa, a0, a1) = (
            sd.face,
            faces[sd.face].vertices[sd.side],
            faces[sd.face].vertices[(sd.side + 1) % complex.sides(sd.face)],
        );
        let twin = complex.alpha(d).map(|e| complex.slot(e));
        for j in 1..segments {
            let t = j as f64 / segments as f64;
            let mut positions = vec![(fa, vec3::slerp(a0, a1, t))];
            if let Some(se) = twin {
                let b0 = faces[se.face].vertices[se.side];
                let b1 = faces[se.face].vertices[(se.side + 1) % complex.sides(se.face)];
                // a reversing twin traverses the shared edge backwards
                let u = if complex.is_reversing(d) { 1.0 - t } else { t };
                positions.push((se.face, vec3::slerp(b0, b1, u)));
            }
            push_node(
                MeshNode { kind: NodeKind::Edge { dart: d, index: j }, positions },
                &mut face_points,
            )?;
        }
    }

    // interior polar grid: center plus rings at pitch h, clipped to the face
    let clip = CLIP_MARGIN_FACTOR * h / r;
    for ef in &faces {
        let f = ef.face;
        push_node(
            MeshNode { kind: NodeKind::Interior, positions: vec![(f, ef.center())] },
            &mut face_points,
        )?;
        let mut k = 1usize;
        loop {
            let colat = k as f64 * h / r;
            if colat >= ef.colatitude {
                break;
            }
            let circumference = 2.0 * PI * r * colat.sin();
            let count = (circumference / h).ceil().max(6.0) as usize;
            let (sc, cc) = (colat.sin(), colat.cos());
            for i in 0..count {
                let az = 2.0 * PI * i as f64 / count as f64;
                let p = [sc * az.cos(), sc * az.sin(), cc];
                if ef.contains(p, clip) {
                    push_node(
                        MeshNode { kind: NodeKind::Interior, positions: vec![(f, p)] },
                        &mut face_points,
                    )?;
                }
            }
            k += 1;
        }
    }

    // links: all same-face chart-position pairs within the hop radius;
    // convexity makes every arc between same-face points an interior
    // geodesic, so each link is realizable
    let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nodes.len()];
    let hop = LINK_RADIUS_FACTOR * h;
    for points in &face_points {
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let (a, pa) = points[i];
                let (b, pb) = points[j];
                if a == b {
                    continue;
                }
                let w = r * vec3::angle(pa, pb);
                if w <= hop && w > 0.0 {
                    adjacency[a].push((b, w));
                    adjacency[b].push((a, w));
                }
            }
        }
    }

    Ok(MeshGraph { r, h, nodes, faces, adjacency, face_points, vertex_nodes })
}

impl MeshGraph {
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn vertex_node(&self, vertex: usize) -> usize {
        self.vertex_nodes[vertex]
    }

    /// Nodes with a chart position in this face, one entry per position.
    pub fn face_points(&self, face: FaceId) -> &[(usize, V)] {
        &self.face_points[face]
    }

    /// Single-source graph distances; `f64::INFINITY` where unreachable.
    /// `extra` supplies overlay links for inserted endpoints.
    fn dijkstra(&self, source: usize, extra: &OverlayLinks) -> Vec<f64> {
        #[derive(PartialEq)]
        struct Entry {
            dist: f64,
            node: usize,
        }
        impl Eq for Entry {}
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                other.dist.total_cmp(&self.dist).then(other.node.cmp(&self.node))
            }
        }
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }

        let n = self.nodes.len() + extra.links.len();
        let mut dist = vec![f64::INFINITY; n];
        dist[source] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Entry { dist: 0.0, node: source });
        while let Some(Entry { dist: d, node }) = heap.pop() {
            if d > dist[node] {
                continue;
            }
            let relax = |to: usize, w: f64, heap: &mut BinaryHeap<Entry>, dist: &mut Vec<f64>| {
                let nd = d + w;
                if nd < dist[to] {
                    dist[to] = nd;
                    heap.push(Entry { dist: nd, node: to });
                }
            };
            if node < self.nodes.len() {
                for &(to, w) in &self.adjacency[node] {
                    relax(to, w, &mut heap, &mut dist);
                }
            }
            // overlay links are bidirectional
            for (slot, links) in extra.links.iter().enumerate() {
                let overlay_id = self.nodes.len() + slot;
                if node == overlay_id {
                    for &(to, w) in links {
                        relax(to, w, &mut heap, &mut dist);
                    }
                } else if let Ok(k) = links.binary_search_by(|&(to, _)| to.cmp(&node)) {
                    relax(overlay_id, links[k].1, &mut heap, &mut dist);
                }
            }
        }
        dist
    }

    /// Distances from a mesh node, no overlay.
    pub fn distances_from(&self, source: usize) -> Vec<f64> {
        self.dijkstra(source, &OverlayLinks::default())
    }
}

#[derive(Default)]
struct OverlayLinks {
    /// Per overlay node: sorted `(mesh node, weight)` links.
    links: Vec<Vec<(usize, f64)>>,
}

/// An upper bound on the piece-wise-geodesic distance, tagged with the mesh
/// pitch it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceEstimate {
    pub value: f64,
    pub resolution: f64,
}

/// Documented refinement bound: re-estimating at any finer pitch changes a
/// pitch-`h` estimate by at most `0.1 × estimate + 2h`. Meshes at different
/// pitches are not nested, so this, not pairwise monotonicity, is the
/// promised agreement.
pub fn refinement_bound(estimate: f64, h: f64) -> f64 {
    0.1 * estimate + 2.0 * h
}

/// Anchors a surface point to the mesh: either an existing node or an
/// overlay node linked to every node of its face (plus, for the pair case, a
/// direct link when both points share a face).
enum Anchor {
    Node(usize),
    Overlay(usize),
}

fn anchor_point(
    mesh: &MeshGraph,
    p: SurfacePoint,
    overlay: &mut OverlayLinks,
) -> Result<Anchor, MetricError> {
    let ef = &mesh.faces[p.face];
    if !ef.contains(p.dir, -1e-9) {
        return Err(MetricError::PointOutsideFace { face: p.face });
    }
    for &(id, pos) in mesh.face_points(p.face) {
        if mesh.r * vec3::angle(pos, p.dir) < 1e-12 {
            return Ok(Anchor::Node(id));
        }
    }
    let mut links: Vec<(usize, f64)> = mesh
        .face_points(p.face)
        .iter()
        .map(|&(id, pos)| (id, mesh.r * vec3::angle(pos, p.dir)))
        .collect();
    // keep the nearest chart copy of each node
    links.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    links.dedup_by_key(|e| e.0);
    let slot = overlay.links.len();
    overlay.links.push(links);
    Ok(Anchor::Overlay(slot))
}

/// Shortest mesh path between two surface points. Points are snapped to
/// coincident nodes or inserted with links to their whole face; two points
/// in one face also get the direct arc, so the one-face answer is the exact
/// spherical distance. The result never depends on argument order.
pub fn approx_distance(
    mesh: &MeshGraph,
    x: SurfacePoint,
    y: SurfacePoint,
) -> Result<DistanceEstimate, MetricError> {
    // canonical orientation makes symmetry exact
    let swap = (y.face, y.dir[0].to_bits(), y.dir[1].to_bits(), y.dir[2].to_bits())
        < (x.face, x.dir[0].to_bits(), x.dir[1].to_bits(), x.dir[2].to_bits());
    let (x, y) = if swap { (y, x) } else { (x, y) };

    let mut overlay = OverlayLinks::default();
    let ax = anchor_point(mesh, x, &mut overlay)?;
    let ay = anchor_point(mesh, y, &mut overlay)?;
    let to_id = |a: &Anchor| match a {
        Anchor::Node(id) => *id,
        Anchor::Overlay(slot) => mesh.nodes.len() + slot,
    };
    let (sx, sy) = (to_id(&ax), to_id(&ay));
    if sx == sy {
        return Ok(DistanceEstimate { value: 0.0, resolution: mesh.h });
    }
    let mut direct: Option<f64> = None;
    if x.face == y.face {
        direct = Some(mesh.faces[x.face].distance(x.dir, y.dir));
    }
    let dist = mesh.dijkstra(sx, &overlay);
    let mut value = dist[sy];
    if let Some(d) = direct {
        value = value.min(d);
    }
    if !value.is_finite() {
        return Err(MetricError::Disconnected);
    }
    Ok(DistanceEstimate { value, resolution: mesh.h })
}

/// Largest graph distance over all node pairs: an estimate of the diameter
/// that converges to it from above as `h → 0`. Sources fan out in parallel
/// and reduce by max, which is order-independent.
pub fn approx_diameter(mesh: &MeshGraph) -> Result<DistanceEstimate, MetricError> {
    let worst = (0..mesh.num_nodes())
        .into_par_iter()
        .map(|s| {
            mesh.distances_from(s)
                .into_iter()
                .fold(0.0f64, |acc, d| if d.is_finite() { acc.max(d) } else { f64::INFINITY })
        })
        .reduce(|| 0.0, f64::max);
    if !worst.is_finite() {
        return Err(MetricError::Disconnected);
    }
    Ok(DistanceEstimate { value: worst, resolution: mesh.h })
}

/// One probed pair: the unconstrained distance and the cheapest detour that
/// is forced through some vertex.
#[derive(Debug, Clone)]
pub struct ProbePair {
    pub a: usize,
    pub b: usize,
    pub distance: f64,
    /// `min_w (d(a,w) + d(w,b)) − d(a,b)` over vertices `w ∉ {a, b}`.
    pub min_detour: f64,
    /// The vertex achieving the minimum.
    pub vertex: usize,
}

#[derive(Debug, Clone)]
pub struct AvoidanceReport {
    pub pairs: Vec<ProbePair>,
}

impl AvoidanceReport {
    pub fn min_detour(&self) -> f64 {
        self.pairs.iter().map(|p| p.min_detour).fold(f64::INFINITY, f64::min)
    }
}

/// Detour through each vertex for one explicit pair of mesh nodes.
pub fn vertex_detour(
    mesh: &MeshGraph,
    a: usize,
    b: usize,
) -> Result<ProbePair, MetricError> {
    let from_a = mesh.distances_from(a);
    let from_b = mesh.distances_from(b);
    let base = from_a[b];
    if !base.is_finite() {
        return Err(MetricError::Disconnected);
    }
    let mut best: Option<(f64, usize)> = None;
    for (v, &node) in mesh.vertex_nodes.iter().enumerate() {
        if node == a || node == b {
            continue;
        }
        let via = from_a[node] + from_b[node];
        if best.is_none_or(|(d, _)| via - base < d) {
            best = Some((via - base, v));
        }
    }
    let (min_detour, vertex) = best.ok_or(MetricError::Disconnected)?;
    Ok(ProbePair { a, b, distance: base, min_detour, vertex })
}

/// Samples node pairs away from vertices and reports, per pair, how much
/// longer the best path forced through a vertex is. Under the angle-sum
/// hypothesis the detours are nonnegative, and strictly positive whenever the
/// true geodesic avoids the vertex. Vertices that coincide with an endpoint
/// are exempt.
pub fn vertex_avoidance_probe(
    mesh: &MeshGraph,
    complex: &PolygonalComplex,
    pairs: usize,
    seed: u64,
) -> Result<AvoidanceReport, MetricError> {
    for v in complex.vertex_records() {
        if v.is_boundary {
            continue;
        }
        let sum = spherical_angle_sum(&v.vertex_type, mesh.r)?;
        if sum >= 2.0 * PI {
            return Err(MetricError::HypothesisViolated(v.vertex_type.clone(), mesh.r));
        }
    }
    let candidates: Vec<usize> = (0..mesh.num_nodes())
        .filter(|&id| !matches!(mesh.nodes[id].kind, NodeKind::Vertex(_)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AvoidanceReport { pairs: Vec::with_capacity(pairs) };
    for _ in 0..pairs {
        let picks: Vec<usize> = candidates.choose_multiple(&mut rng, 2).copied().collect();
        let (a, b) = (picks[0], picks[1]);
        report.pairs.push(vertex_detour(mesh, a, b)?);
    }
    Ok(report)
}
