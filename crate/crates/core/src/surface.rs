//! The inflation surface as a ribbon graph spanned by a network.
//!
//! Vertices are A-B crossings, edges are arcs of curves between crossings.
//! The cyclic order at a crossing is (A backward, B front, A forward, B back),
//! read counterclockwise with the front sheet carrying the plane orientation.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{cross, LatticePoint, PrimitiveSegment};
use crate::linalg::{standard_j, symplectic_reduce, LinalgError, Mat};
use crate::network::{segments_conflict, Arc, Clause, CurveId, Crossing, Network, NetworkError, UnionFind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("empty ribbon surface")]
    Empty,
    #[error("segments of {0} and {1} overlap")]
    NonTransverseData(CurveId, CurveId),
    #[error("surface is not closed of genus {expected}: {components} component(s), genus {found:?}")]
    NotClosedSurface { expected: usize, found: Option<usize>, components: usize },
    #[error("curve {0} is not on this surface")]
    UnknownCurve(CurveId),
    #[error("planar graph of the segments is disconnected")]
    DisconnectedPlanarGraph,
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Position of a dart in the four-valent rotation at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Port {
    ABwd = 0,
    BFront = 1,
    AFwd = 2,
    BBack = 3,
}

/// A closed dart path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cycle {
    pub darts: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RibbonSurface {
    /// `None` marks the artificial vertex placed on a curve with no crossings.
    pub vertices: Vec<Option<Crossing>>,
    arcs: Vec<Arc>,
    tail: Vec<usize>,
    rot_next: Vec<usize>,
    rot_prev: Vec<usize>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
    curve_cycles: BTreeMap<CurveId, Cycle>,
    /// genus of the lattice polygon the network lives on
    pub target_genus: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub components: usize,
    pub genus: Option<usize>,
}

/// Builds the ribbon surface of a network.
pub fn inflate(net: &Network) -> Result<RibbonSurface, SurfaceError> {
    let segs = net.b_segments();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if segments_conflict(&segs[i], &segs[j]) {
                return Err(SurfaceError::NonTransverseData(CurveId::B(segs[i]), CurveId::B(segs[j])));
            }
        }
    }
    let arcs = net.arcs();
    let mut vertices: Vec<Option<Crossing>> = net.all_crossings().into_iter().map(Some).collect();
    let vindex: BTreeMap<Crossing, usize> =
        vertices.iter().enumerate().map(|(i, c)| (c.unwrap(), i)).collect();
    let nd = 2 * arcs.len();
    let mut tail = vec![0; nd];
    let mut port_of: Vec<Option<Port>> = vec![None; nd];
    for (i, arc) in arcs.iter().enumerate() {
        let (f, r) = (2 * i, 2 * i + 1);
        match (arc.from, arc.to) {
            (Some(x), Some(y)) => {
                tail[f] = vindex[&x];
                tail[r] = vindex[&y];
                let (pf, pr) = match arc.curve {
                    CurveId::A(_) => (Port::AFwd, Port::ABwd),
                    CurveId::B(s) => {
                        let two = net.has_a(s.a) && net.has_a(s.b);
                        if two {
                            if arc.index == 0 {
                                (Port::BFront, Port::BFront)
                            } else {
                                (Port::BBack, Port::BBack)
                            }
                        } else if x.v == s.a {
                            (Port::BFront, Port::BBack)
                        } else {
                            (Port::BBack, Port::BFront)
                        }
                    }
                };
                port_of[f] = Some(pf);
                port_of[r] = Some(pr);
            }
            _ => {
                let v = vertices.len();
                vertices.push(None);
                tail[f] = v;
                tail[r] = v;
            }
        }
    }
    let nv = vertices.len();
    let mut slots: Vec<Vec<Option<usize>>> = vec![Vec::new(); nv];
    for d in 0..nd {
        let v = tail[d];
        match port_of[d] {
            Some(p) => {
                if slots[v].is_empty() {
                    slots[v] = vec![None; 4];
                }
                debug_assert!(slots[v][p as usize].is_none());
                slots[v][p as usize] = Some(d);
            }
            None => slots[v].push(Some(d)),
        }
    }
    let mut rot_next = vec![0; nd];
    let mut rot_prev = vec![0; nd];
    for ring in &slots {
        let ring: Vec<usize> = ring.iter().map(|d| d.expect("every port filled")).collect();
        let k = ring.len();
        for i in 0..k {
            rot_next[ring[i]] = ring[(i + 1) % k];
            rot_prev[ring[(i + 1) % k]] = ring[i];
        }
    }
    let mut face_of = vec![usize::MAX; nd];
    let mut faces = Vec::new();
    for start in 0..nd {
        if face_of[start] != usize::MAX {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            face_of[d] = faces.len();
            walk.push(d);
            d = rot_prev[d ^ 1];
            if d == start {
                break;
            }
        }
        faces.push(walk);
    }
    let mut curve_cycles: BTreeMap<CurveId, Cycle> = BTreeMap::new();
    for (i, arc) in arcs.iter().enumerate() {
        curve_cycles.entry(arc.curve).or_insert_with(|| Cycle { darts: Vec::new() }).darts.push(2 * i);
    }
    Ok(RibbonSurface {
        vertices,
        arcs,
        tail,
        rot_next,
        rot_prev,
        faces,
        face_of,
        curve_cycles,
        target_genus: net.polygon.genus(),
    })
}

impl RibbonSurface {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.arcs.len()
    }

    pub fn num_darts(&self) -> usize {
        self.tail.len()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub fn arc(&self, d: usize) -> &Arc {
        &self.arcs[d / 2]
    }

    pub fn dart_curve(&self, d: usize) -> CurveId {
        self.arcs[d / 2].curve
    }

    pub fn tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail[d ^ 1]
    }

    /// Next dart counterclockwise around the tail vertex.
    pub fn rot_ccw(&self, d: usize) -> usize {
        self.rot_next[d]
    }

    pub fn rot_cw(&self, d: usize) -> usize {
        self.rot_prev[d]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.faces.len() as i64
    }

    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.num_vertices());
        for d in (0..self.num_darts()).step_by(2) {
            uf.union(self.tail[d], self.tail[d + 1]);
        }
        uf.components()
    }

    /// Genus of the closed surface obtained by capping every boundary walk with
    /// a disk; `None` unless connected.
    pub fn genus(&self) -> Option<usize> {
        if self.num_vertices() == 0 || self.components() != 1 {
            return None;
        }
        Some(((2 - self.euler_characteristic()) / 2) as usize)
    }

    pub fn summary(&self) -> SurfaceSummary {
        SurfaceSummary {
            vertices: self.num_vertices(),
            edges: self.num_edges(),
            faces: self.faces.len(),
            euler_characteristic: self.euler_characteristic(),
            components: self.components(),
            genus: self.genus(),
        }
    }

    pub fn curves(&self) -> impl Iterator<Item = &CurveId> {
        self.curve_cycles.keys()
    }

    pub fn curve_cycle(&self, c: &CurveId) -> Result<&Cycle, SurfaceError> {
        self.curve_cycles.get(c).ok_or(SurfaceError::UnknownCurve(*c))
    }

    pub fn is_closed_walk(&self, c: &Cycle) -> bool {
        let n = c.darts.len();
        n > 0 && (0..n).all(|i| self.head(c.darts[i]) == self.tail(c.darts[(i + 1) % n]))
    }

    /// Net number of times the cycle leaves the tail of each dart along it.
    pub fn flow(&self, c: &Cycle) -> Vec<i64> {
        let mut f = vec![0; self.num_darts()];
        for &d in &c.darts {
            f[d] += 1;
            f[d ^ 1] -= 1;
        }
        f
    }

    /// For each dart, how often the cycle pushed off to its left crosses that
    /// dart near its tail.
    pub fn left_crossings(&self, c: &Cycle) -> Vec<i64> {
        let mut l = vec![0; self.num_darts()];
        let n = c.darts.len();
        for i in 0..n {
            let inn = c.darts[i] ^ 1;
            let out = c.darts[(i + 1) % n];
            let mut e = self.rot_next[out];
            while e != inn {
                if e != out {
                    l[e] += 1;
                }
                e = self.rot_next[e];
            }
        }
        l
    }

    /// Algebraic intersection number of two cycles.
    pub fn intersection(&self, c1: &Cycle, c2: &Cycle) -> i64 {
        dot(&self.left_crossings(c1), &self.flow(c2))
    }

    pub fn curve_intersection(&self, a: &CurveId, b: &CurveId) -> Result<i64, SurfaceError> {
        Ok(self.intersection(self.curve_cycle(a)?, self.curve_cycle(b)?))
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// χ and the boundary walks.
pub fn euler_and_faces(s: &RibbonSurface) -> Result<(i64, Vec<Vec<usize>>), SurfaceError> {
    if s.num_vertices() == 0 {
        return Err(SurfaceError::Empty);
    }
    Ok((s.euler_characteristic(), s.faces.clone()))
}

/// Connected of the polygon's genus, equivalently all complementary regions
/// are disks.
pub fn is_filling(net: &Network) -> Result<bool, SurfaceError> {
    if net.is_empty() {
        return Ok(false);
    }
    let s = inflate(net)?;
    Ok(s.genus() == Some(net.polygon.genus()))
}

/// Homology basis of the capped surface with its intersection matrix.
#[derive(Clone, Debug)]
pub struct IntersectionForm {
    pub basis: Vec<Cycle>,
    pub matrix: Mat,
    /// columns are basis-coordinates of a symplectic basis x1, y1, x2, ...
    pub to_standard: Mat,
    left: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn genus(&self) -> usize {
        self.basis.len() / 2
    }

    /// Coordinates of a cycle in the symplectic basis, so that the pairing of
    /// two classes is `u^T J v`.
    pub fn symplectic_coords(&self, s: &RibbonSurface, c: &Cycle) -> Vec<i64> {
        let f = s.flow(c);
        let p: Vec<i64> = self.left.iter().map(|l| dot(l, &f)).collect();
        // s = -J P^T p
        let ptp = self.to_standard.transpose().mul_vec(&p);
        let j = standard_j(self.genus());
        j.mul_vec(&ptp).into_iter().map(|x| -x).collect()
    }
}

/// Tree-cotree basis: 2g loops closed up by a spanning tree, one for each edge
/// outside both the tree and a dual spanning tree.
pub fn homology_basis(s: &RibbonSurface) -> Result<IntersectionForm, SurfaceError> {
    let g = s.genus();
    if g != Some(s.target_genus) {
        return Err(SurfaceError::NotClosedSurface { expected: s.target_genus, found: g, components: s.components() });
    }
    let nv = s.num_vertices();
    let ne = s.num_edges();
    // BFS tree; parent dart points from parent to child
    let mut parent: Vec<Option<usize>> = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut in_tree = vec![false; ne];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    let mut out_darts: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for d in 0..s.num_darts() {
        out_darts[s.tail(d)].push(d);
    }
    while let Some(v) = queue.pop_front() {
        for &d in &out_darts[v] {
            let w = s.head(d);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(d);
                in_tree[d / 2] = true;
                queue.push_back(w);
            }
        }
    }
    let mut uf = UnionFind::new(s.faces.len());
    let mut leftover = Vec::new();
    for e in 0..ne {
        if in_tree[e] {
            continue;
        }
        if !uf.union(s.face_of(2 * e), s.face_of(2 * e + 1)) {
            leftover.push(e);
        }
    }
    let path_from_root = |mut v: usize| -> Vec<usize> {
        let mut p = Vec::new();
        while let Some(d) = parent[v] {
            p.push(d);
            v = s.tail(d);
        }
        p.reverse();
        p
    };
    let basis: Vec<Cycle> = leftover
        .iter()
        .map(|&e| {
            let d = 2 * e;
            let mut darts = path_from_root(s.tail(d));
            darts.push(d);
            darts.extend(path_from_root(s.head(d)).into_iter().rev().map(|x| x ^ 1));
            Cycle { darts }
        })
        .collect();
    debug_assert_eq!(basis.len(), 2 * s.target_genus);
    let left: Vec<Vec<i64>> = basis.iter().map(|c| s.left_crossings(c)).collect();
    let flows: Vec<Vec<i64>> = basis.iter().map(|c| s.flow(c)).collect();
    let n = basis.len();
    let mut rows = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = dot(&left[i], &flows[j]);
        }
    }
    let matrix = Mat::from_rows(&rows);
    let to_standard = if n == 0 { Mat::zeros(0, 0) } else { symplectic_reduce(&matrix)? };
    Ok(IntersectionForm { basis, matrix, to_standard, left })
}

/// Symplectic coordinates of a network curve.
pub fn curve_class(s: &RibbonSurface, form: &IntersectionForm, c: &CurveId) -> Result<Vec<i64>, SurfaceError> {
    Ok(form.symplectic_coords(s, s.curve_cycle(c)?))
}

// ---- planar faces ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    Boundary,
    Segment,
}

/// A bounded face of the plane graph formed by the boundary of the polygon
/// and all B-segments, walked with the face on the left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarFace {
    pub walk: Vec<(LatticePoint, LatticePoint, EdgeKind)>,
    /// interior lattice points strictly inside the face
    pub interior_points: usize,
    /// maximal stretches of the walk along the polygon boundary
    pub runs: usize,
    /// segment-to-segment corners at points of the polygon boundary
    pub corners_boundary: usize,
    /// segment-to-segment corners at interior points carrying no A-curve
    pub corners_open: usize,
    /// segment-to-segment corners at interior points carrying an A-curve
    pub corners_closed: usize,
    /// each traversal of a segment: the segment and whether the face lies to
    /// the left of it oriented from its first to its second endpoint
    pub sides: Vec<(PrimitiveSegment, bool)>,
}

impl PlanarFace {
    /// Whether this face contributes only disks to the complement of the
    /// network in the surface.
    pub fn is_disk_piece(&self) -> bool {
        !self.sides.is_empty()
            && self.interior_points == 0
            && self.runs + self.corners_boundary + self.corners_open <= 1
    }

    /// Number of complementary disks this face yields (two separate copies
    /// when nothing glues the sheets together).
    pub fn disk_count(&self) -> usize {
        if self.runs + self.corners_boundary + self.corners_open == 0 {
            2
        } else {
            1
        }
    }

    /// Euler characteristic of the subsurface cut out by the B-curves of the
    /// sides, front and back copies glued along runs and corners.
    pub fn doubled_euler(&self) -> i64 {
        2 - 2 * self.interior_points as i64 - self.sides.len() as i64
    }
}

fn winding(walk: &[(LatticePoint, LatticePoint, EdgeKind)], p: LatticePoint) -> i64 {
    let mut w = 0;
    for &(a, b, _) in walk {
        if a.y <= p.y {
            if b.y > p.y && cross(a, b, p) > 0 {
                w += 1;
            }
        } else if b.y <= p.y && cross(a, b, p) < 0 {
            w -= 1;
        }
    }
    w
}

/// Bounded faces of the boundary-plus-segments plane graph.
pub fn planar_faces(net: &Network) -> Result<Vec<PlanarFace>, SurfaceError> {
    let q = &net.polygon;
    let bpts = q.boundary_points();
    let segs = net.b_segments();
    let mut verts: BTreeSet<LatticePoint> = bpts.iter().copied().collect();
    for s in &segs {
        verts.insert(s.a);
        verts.insert(s.b);
    }
    let verts: Vec<LatticePoint> = verts.into_iter().collect();
    let vid: BTreeMap<LatticePoint, usize> = verts.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    // darts: (from, to, kind)
    let mut darts: Vec<(usize, usize, EdgeKind)> = Vec::new();
    let mut ordered = bpts.clone();
    // boundary points sorted counterclockwise along the boundary
    let centre2 = {
        let v = q.vertices();
        let (sx, sy) = v.iter().fold((0i64, 0i64), |(x, y), p| (x + p.x, y + p.y));
        (sx, sy, v.len() as i64)
    };
    ordered.sort_by(|a, b| {
        let da = LatticePoint { x: a.x * centre2.2 - centre2.0, y: a.y * centre2.2 - centre2.1 };
        let db = LatticePoint { x: b.x * centre2.2 - centre2.0, y: b.y * centre2.2 - centre2.1 };
        crate::lattice::angle_cmp(da, db)
    });
    for i in 0..ordered.len() {
        let (a, b) = (vid[&ordered[i]], vid[&ordered[(i + 1) % ordered.len()]]);
        darts.push((a, b, EdgeKind::Boundary));
        darts.push((b, a, EdgeKind::Boundary));
    }
    for s in &segs {
        darts.push((vid[&s.a], vid[&s.b], EdgeKind::Segment));
        darts.push((vid[&s.b], vid[&s.a], EdgeKind::Segment));
    }
    let mut uf = UnionFind::new(verts.len());
    for &(a, b, _) in &darts {
        uf.union(a, b);
    }
    if uf.components() != 1 {
        return Err(SurfaceError::DisconnectedPlanarGraph);
    }
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for (d, &(a, _, _)) in darts.iter().enumerate() {
        around[a].push(d);
    }
    let mut rot_prev = vec![0; darts.len()];
    for (v, ring) in around.iter_mut().enumerate() {
        let o = verts[v];
        ring.sort_by(|&d, &e| crate::lattice::angle_cmp(verts[darts[d].1].sub(o), verts[darts[e].1].sub(o)));
        let k = ring.len();
        for i in 0..k {
            rot_prev[ring[(i + 1) % k]] = ring[i];
        }
    }
    let mut seen = vec![false; darts.len()];
    let mut faces = Vec::new();
    let interior: Vec<LatticePoint> = q.interior_points().into_iter().filter(|p| !vid.contains_key(p)).collect();
    for start in 0..darts.len() {
        if seen[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            seen[d] = true;
            walk.push(d);
            d = rot_prev[d ^ 1];
            if d == start {
                break;
            }
        }
        let twice: i64 = walk.iter().map(|&d| cross_o(verts[darts[d].0], verts[darts[d].1])).sum();
        if twice <= 0 {
            continue;
        }
        let pw: Vec<(LatticePoint, LatticePoint, EdgeKind)> =
            walk.iter().map(|&d| (verts[darts[d].0], verts[darts[d].1], darts[d].2)).collect();
        let n = pw.len();
        let mut face = PlanarFace {
            interior_points: interior.iter().filter(|&&p| winding(&pw, p) != 0).count(),
            runs: 0,
            corners_boundary: 0,
            corners_open: 0,
            corners_closed: 0,
            sides: Vec::new(),
            walk: pw.clone(),
        };
        for i in 0..n {
            let (a, b, k) = pw[i];
            let (_, _, k2) = pw[(i + 1) % n];
            let (_, _, kp) = pw[(i + n - 1) % n];
            match k {
                EdgeKind::Boundary => {
                    if kp == EdgeKind::Segment {
                        face.runs += 1;
                    }
                }
                EdgeKind::Segment => {
                    let s = PrimitiveSegment::new(a, b).expect("segment edge");
                    face.sides.push((s, s.a == a));
                    if k2 == EdgeKind::Segment {
                        if q.on_boundary(b) {
                            face.corners_boundary += 1;
                        } else if net.has_a(b) {
                            face.corners_closed += 1;
                        } else {
                            face.corners_open += 1;
                        }
                    }
                }
            }
        }
        faces.push(face);
    }
    Ok(faces)
}

fn cross_o(a: LatticePoint, b: LatticePoint) -> i64 {
    a.x * b.y - a.y * b.x
}

/// Filling test read off the planar subdivision alone.
pub fn planar_filling_oracle(net: &Network) -> bool {
    if net.is_empty() {
        return false;
    }
    let faces = match planar_faces(net) {
        Ok(f) => f,
        Err(_) => return false,
    };
    // every interior point needs an A-curve or a segment reaching it
    faces.iter().all(PlanarFace::is_disk_piece)
}

/// Pairs of B-curves cobounding an annulus, hence isotopic.
pub fn isotopy_duplicates(net: &Network) -> Result<Vec<(CurveId, CurveId)>, SurfaceError> {
    let mut out = BTreeSet::new();
    for f in planar_faces(net)? {
        if f.interior_points == 0 && f.sides.len() == 2 && f.sides[0].0 != f.sides[1].0 {
            let (a, b) = (CurveId::B(f.sides[0].0), CurveId::B(f.sides[1].0));
            out.insert((a.min(b), a.max(b)));
        }
    }
    Ok(out.into_iter().collect())
}

/// Shape of one complementary region after deleting auxiliary curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub euler_characteristic: i64,
    pub boundary_walks: usize,
    pub touches_b: bool,
}

/// Whether N' fills the surface cut along b: regions away from b are disks
/// and exactly two regions, both annuli, sit on either side of b.
pub fn relative_filling(net_prime: &Network, b: PrimitiveSegment) -> Result<bool, SurfaceError> {
    Ok(relative_regions(net_prime, b)?.is_some_and(|regions| {
        let touching: Vec<&Region> = regions.iter().filter(|r| r.touches_b).collect();
        touching.len() == 2
            && touching.iter().all(|r| r.euler_characteristic == 0 && r.boundary_walks == 2)
            && regions
                .iter()
                .filter(|r| !r.touches_b)
                .all(|r| r.euler_characteristic == 1 && r.boundary_walks == 1)
    }))
}

/// Regions of the complement of N' and b, or `None` when the auxiliary
/// supergraph (N' plus b plus every missing A-curve) is not a cellular
/// embedding of the closed surface.
pub fn relative_regions(net_prime: &Network, b: PrimitiveSegment) -> Result<Option<Vec<Region>>, SurfaceError> {
    let bid = CurveId::B(b);
    let mut sup = match net_prime.with(bid, Clause::Radial) {
        Ok(n) => n,
        Err(NetworkError::UnsupportedPair(..)) | Err(NetworkError::InvalidCurve(..)) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut aux = BTreeSet::new();
    for v in net_prime.polygon.interior_points() {
        let a = CurveId::A(v);
        if !net_prime.contains(&a) {
            sup = sup.with(a, Clause::AllA)?;
            aux.insert(a);
        }
    }
    let s = inflate(&sup)?;
    if s.genus() != Some(s.target_genus) {
        return Ok(None);
    }
    let deleted = |d: usize| aux.contains(&s.dart_curve(d));
    let mut uf = UnionFind::new(s.faces.len());
    let mut deleted_edges = 0i64;
    for e in 0..s.num_edges() {
        if deleted(2 * e) {
            deleted_edges += 1;
            uf.union(s.face_of(2 * e), s.face_of(2 * e + 1));
        }
    }
    let root: Vec<usize> = (0..s.faces.len()).map(|f| uf.find(f)).collect();
    let mut regions: BTreeMap<usize, (i64, usize, bool)> = BTreeMap::new();
    for f in 0..s.faces.len() {
        regions.entry(root[f]).or_insert((0, 0, false)).0 += 1;
    }
    for e in 0..s.num_edges() {
        if deleted(2 * e) {
            regions.get_mut(&root[s.face_of(2 * e)]).unwrap().0 -= 1;
        }
    }
    // vertices whose darts are all deleted lie inside a region
    let mut vertex_darts: Vec<Vec<usize>> = vec![Vec::new(); s.num_vertices()];
    for d in 0..s.num_darts() {
        vertex_darts[s.tail(d)].push(d);
    }
    for ds in &vertex_darts {
        if ds.iter().all(|&d| deleted(d)) {
            regions.get_mut(&root[s.face_of(ds[0])]).unwrap().0 += 1;
        }
    }
    // boundary walks of the reduced ribbon graph
    let kept_cw = |d: usize| -> usize {
        let mut e = s.rot_cw(d);
        while deleted(e) {
            e = s.rot_cw(e);
        }
        e
    };
    let mut seen = vec![false; s.num_darts()];
    for start in 0..s.num_darts() {
        if deleted(start) || seen[start] {
            continue;
        }
        let mut d = start;
        let mut hits_b = false;
        loop {
            seen[d] = true;
            hits_b |= s.dart_curve(d) == bid;
            d = kept_cw(d ^ 1);
            if d == start {
                break;
            }
        }
        let r = regions.get_mut(&root[s.face_of(start)]).unwrap();
        r.1 += 1;
        r.2 |= hits_b;
    }
    let _ = deleted_edges;
    Ok(Some(
        regions
            .into_values()
            .map(|(chi, walks, touches_b)| Region { euler_characteristic: chi, boundary_walks: walks, touches_b })
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{pt, triangle};
    use crate::linalg::is_unimodular;
    use crate::network::{build_network, subnetwork_nprime};

    fn side6() -> Network {
        build_network(&triangle(6), pt(1, 1)).unwrap()
    }

    fn torus() -> Network {
        Network::from_curves(
            triangle(3),
            pt(1, 1),
            [(CurveId::A(pt(1, 1)), Clause::AllA), (CurveId::b(pt(1, 1), pt(1, 0)).unwrap(), Clause::Radial)],
        )
        .unwrap()
    }

    #[test]
    fn torus_surface() {
        let n = torus();
        let s = inflate(&n).unwrap();
        let (chi, faces) = euler_and_faces(&s).unwrap();
        assert_eq!((chi, faces.len()), (0, 1));
        let f = homology_basis(&s).unwrap();
        assert_eq!(f.matrix.to_rows().len(), 2);
        assert!(f.matrix.is_antisymmetric());
        let a = CurveId::A(pt(1, 1));
        let b = CurveId::b(pt(1, 1), pt(1, 0)).unwrap();
        // B runs from (1,0) into (1,1): sigma enters v
        assert_eq!(s.curve_intersection(&b, &a).unwrap(), -1);
        assert_eq!(s.curve_intersection(&a, &b).unwrap(), 1);
        let (ha, hb) = (curve_class(&s, &f, &a).unwrap(), curve_class(&s, &f, &b).unwrap());
        assert_eq!(crate::linalg::symp_pair(&ha, &hb), 1);
    }

    #[test]
    fn side6_is_filling_genus_10() {
        let n = side6();
        let s = inflate(&n).unwrap();
        assert_eq!(s.euler_characteristic(), -18);
        assert_eq!(s.genus(), Some(10));
        assert!(is_filling(&n).unwrap());
        assert!(planar_filling_oracle(&n));
        let f = homology_basis(&s).unwrap();
        assert_eq!(f.basis.len(), 20);
        assert!(is_unimodular(&f.matrix));
        assert!(f.matrix.is_antisymmetric());
        for c in &f.basis {
            assert!(s.is_closed_walk(c));
        }
        let ids = n.curve_ids();
        let classes: Vec<Vec<i64>> = ids.iter().map(|c| curve_class(&s, &f, c).unwrap()).collect();
        for i in 0..ids.len() {
            for j in 0..ids.len() {
                let direct = s.curve_intersection(&ids[i], &ids[j]).unwrap();
                assert_eq!(crate::linalg::symp_pair(&classes[i], &classes[j]), direct, "{} {}", ids[i], ids[j]);
                let geo = crate::network::geometric_intersection(&ids[i], &ids[j]).unwrap() as i64;
                assert_eq!(direct.abs(), geo);
                if let (CurveId::A(v), CurveId::B(sg)) = (ids[i], ids[j]) {
                    if sg.has_endpoint(v) {
                        assert_eq!(direct, if v == sg.a { -1 } else { 1 });
                    }
                }
            }
        }
    }

    #[test]
    fn a_curves_only_do_not_fill() {
        let p = triangle(6);
        let n = Network::from_curves(p.clone(), pt(1, 1), p.interior_points().into_iter().map(|v| (CurveId::A(v), Clause::AllA)))
            .unwrap();
        let s = inflate(&n).unwrap();
        assert_eq!(s.components(), 10);
        assert!(!is_filling(&n).unwrap());
        assert!(!planar_filling_oracle(&n));
        assert!(matches!(homology_basis(&s), Err(SurfaceError::NotClosedSurface { .. })));
    }

    #[test]
    fn nprime_relative() {
        let n = side6();
        let np = subnetwork_nprime(&n).unwrap();
        assert!(!is_filling(&np).unwrap());
        let b = PrimitiveSegment::new(pt(-1, 1), pt(0, 1)).unwrap();
        assert!(relative_filling(&np, b).unwrap());
        let fewer = np.without(&CurveId::A(pt(1, 1))).unwrap();
        assert!(!relative_filling(&fewer, b).unwrap());
    }

    #[test]
    fn empty_surface_errors() {
        let n = Network::from_curves(triangle(3), pt(1, 1), []).unwrap();
        let s = inflate(&n).unwrap();
        assert_eq!(euler_and_faces(&s), Err(SurfaceError::Empty));
        assert!(matches!(curve_class(&s, &homology_basis_dummy(), &CurveId::A(pt(1, 1))), Err(SurfaceError::UnknownCurve(_))));
    }

    fn homology_basis_dummy() -> IntersectionForm {
        IntersectionForm { basis: vec![], matrix: Mat::zeros(0, 0), to_standard: Mat::zeros(0, 0), left: vec![] }
    }
}
