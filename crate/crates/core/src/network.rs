//! Networks of A- and B-curves on the inflation surface of a lattice polygon.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    angle_cmp, cross, kappa_standard_embedding, primitive, pt, Adjoint, LatticeError, LatticePoint, LatticePolygon,
    PrimitiveSegment, UnimodularMap,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("adjoint polygon is {0}, a two-dimensional adjoint is required")]
    DegenerateAdjoint(&'static str),
    #[error("toric corner is not smooth: {0}")]
    NonSmoothCorner(LatticeError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("B-segments {0} and {1} cross away from lattice points")]
    UnsupportedPair(CurveId, CurveId),
    #[error("curve {0} is not in the network")]
    MissingCurve(CurveId),
    #[error("configuration unavailable: {0} is missing")]
    ConfigurationUnavailable(String),
    #[error("intersection graph is not a tree")]
    NotArboreal,
    #[error("invalid curve {0}: {1}")]
    InvalidCurve(CurveId, String),
    #[error("construction failed: {0}")]
    Construction(String),
}

/// An A-curve (circle around an interior lattice point) or a B-curve (double
/// of a primitive segment). A sorts before B.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "CurveData", try_from = "CurveData")]
pub enum CurveId {
    A(LatticePoint),
    B(PrimitiveSegment),
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveId::A(v) => write!(f, "A{v}"),
            CurveId::B(s) => write!(f, "B({},{})", s.a, s.b),
        }
    }
}

impl CurveId {
    pub fn b(p: LatticePoint, q: LatticePoint) -> Result<CurveId, LatticeError> {
        Ok(CurveId::B(PrimitiveSegment::new(p, q)?))
    }

    pub fn is_a(&self) -> bool {
        matches!(self, CurveId::A(_))
    }
}

/// Which rule of the construction produced a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// every interior lattice point
    AllA = 1,
    /// the segment at the second adjoint corner
    Sigma = 2,
    /// the closing segment below the x-axis
    Tau = 3,
    /// primitive segments on lines through kappa
    Radial = 4,
}

impl Clause {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Clause> {
        match n {
            1 => Some(Clause::AllA),
            2 => Some(Clause::Sigma),
            3 => Some(Clause::Tau),
            4 => Some(Clause::Radial),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NetworkJson", into = "NetworkJson")]
pub struct Network {
    /// polygon in the coordinates the curves live in
    pub polygon: LatticePolygon,
    /// polygon as given, before the embedding
    pub original: LatticePolygon,
    pub embedding: UnimodularMap,
    pub kappa: LatticePoint,
    /// divisibility of the adjoint when it is two-dimensional
    pub r: Option<i64>,
    curves: BTreeMap<CurveId, Clause>,
}

/// One transverse A-B crossing: A(v) meets B(s) at the endpoint v of s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub v: LatticePoint,
    pub seg: PrimitiveSegment,
}

/// An arc of a curve between consecutive crossings. `from == to` for loops;
/// `None` endpoints mark a curve with no crossings at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub curve: CurveId,
    pub index: usize,
    pub from: Option<Crossing>,
    pub to: Option<Crossing>,
}

impl Network {
    /// Builds and validates a network from explicit curves.
    pub fn from_curves(
        polygon: LatticePolygon,
        kappa: LatticePoint,
        curves: impl IntoIterator<Item = (CurveId, Clause)>,
    ) -> Result<Network, NetworkError> {
        let r = polygon.adjoint().polygon().map(|a| a.divisibility());
        let net = Network {
            original: polygon.clone(),
            polygon,
            embedding: UnimodularMap::identity(),
            kappa,
            r,
            curves: curves.into_iter().collect(),
        };
        net.validate()?;
        Ok(net)
    }

    fn validate(&self) -> Result<(), NetworkError> {
        let p = &self.polygon;
        let mut segs = Vec::new();
        for c in self.curves.keys() {
            match c {
                CurveId::A(v) => {
                    if !p.contains_strict(*v) {
                        return Err(NetworkError::InvalidCurve(*c, "centre is not an interior lattice point".into()));
                    }
                }
                CurveId::B(s) => {
                    if !p.contains(s.a) || !p.contains(s.b) {
                        return Err(NetworkError::InvalidCurve(*c, "endpoint outside the polygon".into()));
                    }
                    if p.share_edge(s.a, s.b) {
                        return Err(NetworkError::InvalidCurve(*c, "segment lies along a boundary edge".into()));
                    }
                    segs.push(*s);
                }
            }
        }
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                if segments_conflict(&segs[i], &segs[j]) {
                    return Err(NetworkError::UnsupportedPair(CurveId::B(segs[i]), CurveId::B(segs[j])));
                }
            }
        }
        Ok(())
    }

    pub fn curves(&self) -> impl Iterator<Item = (&CurveId, &Clause)> {
        self.curves.iter()
    }

    pub fn curve_ids(&self) -> Vec<CurveId> {
        self.curves.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn contains(&self, c: &CurveId) -> bool {
        self.curves.contains_key(c)
    }

    pub fn clause(&self, c: &CurveId) -> Option<Clause> {
        self.curves.get(c).copied()
    }

    pub fn clause_members(&self, cl: Clause) -> Vec<CurveId> {
        self.curves.iter().filter(|(_, &k)| k == cl).map(|(c, _)| *c).collect()
    }

    pub fn has_a(&self, v: LatticePoint) -> bool {
        self.curves.contains_key(&CurveId::A(v))
    }

    pub fn b_segments(&self) -> Vec<PrimitiveSegment> {
        self.curves
            .keys()
            .filter_map(|c| match c {
                CurveId::B(s) => Some(*s),
                _ => None,
            })
            .collect()
    }

    /// Copy with one curve removed.
    pub fn without(&self, c: &CurveId) -> Result<Network, NetworkError> {
        if !self.contains(c) {
            return Err(NetworkError::MissingCurve(*c));
        }
        let mut n = self.clone();
        n.curves.remove(c);
        Ok(n)
    }

    /// Copy with one more curve; validated.
    pub fn with(&self, c: CurveId, clause: Clause) -> Result<Network, NetworkError> {
        let mut n = self.clone();
        n.curves.insert(c, clause);
        n.validate()?;
        Ok(n)
    }

    /// Crossings on a curve in traversal order.
    ///
    /// A(v) is traversed counterclockwise, so its crossings are sorted by the
    /// angle of the segment leaving v. B(s) is traversed from s.a to s.b on the
    /// front copy and back again, so its crossings are at s.a then s.b.
    pub fn crossings_on(&self, c: &CurveId) -> Vec<Crossing> {
        match c {
            CurveId::A(v) => {
                let mut segs: Vec<PrimitiveSegment> =
                    self.b_segments().into_iter().filter(|s| s.has_endpoint(*v)).collect();
                segs.sort_by(|s, t| angle_cmp(s.other(*v).sub(*v), t.other(*v).sub(*v)));
                segs.into_iter().map(|seg| Crossing { v: *v, seg }).collect()
            }
            CurveId::B(s) => s
                .endpoints()
                .into_iter()
                .filter(|&e| self.has_a(e))
                .map(|v| Crossing { v, seg: *s })
                .collect(),
        }
    }

    /// All crossings in sorted order.
    pub fn all_crossings(&self) -> Vec<Crossing> {
        let mut out: Vec<Crossing> = self
            .b_segments()
            .into_iter()
            .flat_map(|s| s.endpoints().into_iter().filter(|&e| self.has_a(e)).map(move |v| Crossing { v, seg: s }))
            .collect();
        out.sort();
        out
    }

    /// Arcs of the union of all curves, cut at crossings.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::new();
        for c in self.curves.keys() {
            let xs = self.crossings_on(c);
            if xs.is_empty() {
                out.push(Arc { curve: *c, index: 0, from: None, to: None });
                continue;
            }
            for i in 0..xs.len() {
                out.push(Arc { curve: *c, index: i, from: Some(xs[i]), to: Some(xs[(i + 1) % xs.len()]) });
            }
        }
        out
    }
}

/// True when two primitive segments meet anywhere other than a shared endpoint.
pub fn segments_conflict(s: &PrimitiveSegment, t: &PrimitiveSegment) -> bool {
    let d1 = cross(s.a, s.b, t.a);
    let d2 = cross(s.a, s.b, t.b);
    let d3 = cross(t.a, t.b, s.a);
    let d4 = cross(t.a, t.b, s.b);
    if d1 == 0 && d2 == 0 {
        // collinear: conflict when they overlap in more than a point
        let dir = s.direction();
        let proj = |p: LatticePoint| (p.x - s.a.x) * dir.x + (p.y - s.a.y) * dir.y;
        let (s0, s1) = (0, proj(s.b));
        let (t0, t1) = (proj(t.a).min(proj(t.b)), proj(t.a).max(proj(t.b)));
        return t0.max(s0) < t1.min(s1);
    }
    // endpoint of one in the open interior of the other is impossible for
    // primitive segments, so only proper crossings remain
    (d1 as i128 * d2 as i128) < 0 && (d3 as i128 * d4 as i128) < 0
}

/// Geometric intersection number of two network curves, 0 or 1.
pub fn geometric_intersection(c1: &CurveId, c2: &CurveId) -> Result<u8, NetworkError> {
    match (c1, c2) {
        (CurveId::A(_), CurveId::A(_)) => Ok(0),
        (CurveId::A(v), CurveId::B(s)) | (CurveId::B(s), CurveId::A(v)) => Ok(u8::from(s.has_endpoint(*v))),
        (CurveId::B(s), CurveId::B(t)) => {
            if s != t && segments_conflict(s, t) {
                Err(NetworkError::UnsupportedPair(*c1, *c2))
            } else {
                Ok(0)
            }
        }
    }
}

/// Excluded open segments for the radial clause in standard coordinates.
fn excluded_segments(sigma: &PrimitiveSegment, tau: &PrimitiveSegment) -> [(LatticePoint, LatticePoint); 3] {
    [(sigma.a, sigma.b), (tau.a, tau.b), (pt(-1, 1), pt(0, 1))]
}

/// Whether the full line through the origin with direction `d` meets the open
/// segment (p, q).
fn line_hits_open_segment(d: LatticePoint, p: LatticePoint, q: LatticePoint) -> bool {
    let o = pt(0, 0);
    let sp = cross(o, d, p);
    let sq = cross(o, d, q);
    (sp as i128 * sq as i128) < 0 || (sp == 0 && sq == 0)
}

/// Builds the network for `p` with corner `kappa` of the adjoint polygon.
/// The result lives in kappa-standard coordinates.
pub fn build_network(p: &LatticePolygon, kappa: LatticePoint) -> Result<Network, NetworkError> {
    match p.adjoint() {
        Adjoint::Polygon { .. } => {}
        other => return Err(NetworkError::DegenerateAdjoint(other.tag())),
    }
    let emb = kappa_standard_embedding(p, kappa).map_err(|e| match e {
        LatticeError::NoUnimodularNormalization(..) => NetworkError::NonSmoothCorner(e),
        other => NetworkError::Lattice(other),
    })?;
    let q = p.transform(&emb);
    let adj = q.adjoint().polygon().cloned().expect("adjoint stays two-dimensional");
    let r = adj.divisibility();
    let origin = pt(0, 0);
    let k = adj.vertex_index(origin).expect("kappa maps to the origin");
    let kp = adj.prev_vertex(k);
    debug_assert!(kp.x == 0 && kp.y > 0, "second corner on the positive y-axis");
    let kp_i = adj.vertex_index(kp).unwrap();
    let before = adj.prev_vertex(kp_i);
    let w = kp.add(primitive(before.sub(kp)));
    let sigma = PrimitiveSegment::new(kp, w)?;
    let tail = pt(0, -1);
    let head = pt(r, 0);
    if !q.on_boundary(tail) {
        return Err(NetworkError::Construction(format!("{tail} is not a boundary point")));
    }
    if !adj.contains(head) {
        return Err(NetworkError::Construction(format!("{head} is not in the adjoint polygon")));
    }
    let tau = PrimitiveSegment::new(head, tail)?;

    let mut curves: BTreeMap<CurveId, Clause> = BTreeMap::new();
    for v in q.interior_points() {
        curves.insert(CurveId::A(v), Clause::AllA);
    }
    curves.insert(CurveId::B(sigma), Clause::Sigma);
    curves.insert(CurveId::B(tau), Clause::Tau);
    for s in radial_segments(&q, &sigma, &tau) {
        curves.entry(CurveId::B(s)).or_insert(Clause::Radial);
    }
    let net = Network { polygon: q, original: p.clone(), embedding: emb, kappa: origin, r: Some(r), curves };
    net.validate()?;
    Ok(net)
}

/// First adjoint vertex (in vertex order) at which the network can be built.
pub fn find_kappa(p: &LatticePolygon) -> Option<LatticePoint> {
    let adj = p.adjoint().polygon().cloned()?;
    adj.vertices().iter().copied().find(|&v| kappa_standard_embedding(p, v).is_ok())
}

/// Consecutive lattice points of the polygon on lines through the origin whose
/// line avoids the three excluded open segments.
fn radial_segments(q: &LatticePolygon, sigma: &PrimitiveSegment, tau: &PrimitiveSegment) -> Vec<PrimitiveSegment> {
    let origin = pt(0, 0);
    let mut lines: BTreeMap<LatticePoint, Vec<LatticePoint>> = BTreeMap::new();
    for p in q.lattice_points() {
        if p == origin {
            continue;
        }
        let mut d = primitive(p);
        if d < pt(0, 0) {
            d = d.scale(-1);
        }
        lines.entry(d).or_default().push(p);
    }
    let excl = excluded_segments(sigma, tau);
    let mut out = Vec::new();
    for (d, mut pts) in lines {
        if excl.iter().any(|&(a, b)| line_hits_open_segment(d, a, b)) {
            continue;
        }
        pts.push(origin);
        pts.sort_by_key(|p| p.x * d.x + p.y * d.y);
        for w in pts.windows(2) {
            out.push(PrimitiveSegment::new(w[0], w[1]).expect("consecutive points on a primitive line"));
        }
    }
    out
}

/// Exhaustive reference enumeration of the radial clause: every pair of
/// lattice points of the polygon with primitive difference, not on a common
/// edge, whose line contains the origin and misses the excluded interiors.
pub fn radial_segments_by_enumeration(net: &Network) -> BTreeSet<PrimitiveSegment> {
    let q = &net.polygon;
    let sigma = net.clause_members(Clause::Sigma);
    let tau = net.clause_members(Clause::Tau);
    let (Some(CurveId::B(sigma)), Some(CurveId::B(tau))) = (sigma.first(), tau.first()) else {
        return BTreeSet::new();
    };
    let excl = excluded_segments(sigma, tau);
    let pts = q.lattice_points();
    let mut out = BTreeSet::new();
    for (i, &p) in pts.iter().enumerate() {
        for &r in &pts[i + 1..] {
            let Ok(s) = PrimitiveSegment::new(p, r) else { continue };
            if q.share_edge(p, r) || cross(p, r, pt(0, 0)) != 0 {
                continue;
            }
            let d = primitive(r.sub(p));
            if excl.iter().any(|&(a, b)| line_hits_open_segment(d, a, b)) {
                continue;
            }
            out.insert(s);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    pub vertices: Vec<CurveId>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub connected: bool,
    pub first_betti: i64,
    pub is_tree: bool,
}

pub fn intersection_graph(net: &Network) -> IntersectionGraph {
    let vertices = net.curve_ids();
    let index: BTreeMap<CurveId, usize> = vertices.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut edges = Vec::new();
    for s in net.b_segments() {
        let bi = index[&CurveId::B(s)];
        for e in s.endpoints() {
            if let Some(&ai) = index.get(&CurveId::A(e)) {
                edges.push((ai.min(bi), ai.max(bi)));
            }
        }
    }
    edges.sort();
    IntersectionGraph { vertices, edges }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let n = self.parent[y];
            self.parent[y] = r;
            y = n;
        }
        r
    }

    /// Returns false when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

pub fn graph_stats(g: &IntersectionGraph) -> GraphStats {
    let v = g.vertices.len();
    let mut uf = UnionFind::new(v);
    for &(a, b) in &g.edges {
        uf.union(a, b);
    }
    let c = uf.components();
    let first_betti = g.edges.len() as i64 - v as i64 + c as i64;
    let connected = c == 1;
    GraphStats { connected, first_betti, is_tree: connected && first_betti == 0 }
}

/// The network minus A(0,1).
pub fn subnetwork_nprime(net: &Network) -> Result<Network, NetworkError> {
    net.without(&CurveId::A(pt(0, 1)))
}

/// The explicit curves feeding the generation criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnConfiguration {
    pub r: i64,
    pub a: CurveId,
    pub a_prime: CurveId,
    /// c_1 .. c_{2r+1}
    pub chain: Vec<CurveId>,
    pub delta1: CurveId,
    pub b_segment: PrimitiveSegment,
    pub d: CurveId,
    pub note: String,
}

impl DnConfiguration {
    /// a, a', c_1.., then the closing curve.
    pub fn curves(&self) -> Vec<CurveId> {
        let mut v = vec![self.a, self.a_prime];
        v.extend(&self.chain);
        v.push(self.delta1);
        v
    }
}

/// Reads off the configuration along the x-axis in standard coordinates.
pub fn dn_configuration(net: &Network) -> Result<DnConfiguration, NetworkError> {
    let r = net.r.ok_or_else(|| NetworkError::ConfigurationUnavailable("two-dimensional adjoint".into()))?;
    let need = |c: CurveId| -> Result<CurveId, NetworkError> {
        if net.contains(&c) {
            Ok(c)
        } else {
            Err(NetworkError::ConfigurationUnavailable(c.to_string()))
        }
    };
    let bcurve = |p, q| CurveId::b(p, q).map_err(NetworkError::from);
    let a = need(bcurve(pt(0, 0), pt(0, -1))?)?;
    let a_prime = need(bcurve(pt(0, 0), pt(0, 1))?)?;
    let mut chain = Vec::new();
    for k in 0..=r {
        chain.push(need(CurveId::A(pt(k, 0)))?);
        if k < r {
            chain.push(need(bcurve(pt(k, 0), pt(k + 1, 0))?)?);
        }
    }
    let delta1 = need(bcurve(pt(r, 0), pt(0, -1))?)?;
    let b_segment = PrimitiveSegment::new(pt(-1, 1), pt(0, 1))?;
    if !net.polygon.contains(b_segment.a) || !net.polygon.contains(b_segment.b) {
        return Err(NetworkError::ConfigurationUnavailable(format!("segment {b_segment} inside the polygon")));
    }
    let d = need(CurveId::A(pt(0, 1)))?;
    Ok(DnConfiguration {
        r,
        a,
        a_prime,
        chain,
        delta1,
        b_segment,
        d,
        note: "odd chain curves read along the x-axis as A(k-1,0); a y-axis reading A(0,k-1) does not meet the even chain curves"
            .into(),
    })
}

/// For an arboreal network: a spanning tree of the union of the curves in
/// which each curve leaves out exactly one of its arcs. Returns that arc.
pub fn spanning_tree_correspondence(net: &Network) -> Result<BTreeMap<CurveId, Arc>, NetworkError> {
    if !graph_stats(&intersection_graph(net)).is_tree {
        return Err(NetworkError::NotArboreal);
    }
    let arcs = net.arcs();
    let crossings = net.all_crossings();
    let idx: BTreeMap<Crossing, usize> = crossings.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    // a lone curve with no crossings gets one artificial vertex
    let nv = crossings.len().max(1);
    let mut uf = UnionFind::new(nv);
    let mut out = BTreeMap::new();
    let mut tree_edges = 0;
    for arc in &arcs {
        if arc.index == 0 {
            out.insert(arc.curve, *arc);
            continue;
        }
        let (a, b) = (idx[&arc.from.unwrap()], idx[&arc.to.unwrap()]);
        if !uf.union(a, b) {
            return Err(NetworkError::NotArboreal);
        }
        tree_edges += 1;
    }
    if tree_edges + 1 != nv || uf.components() != 1 {
        return Err(NetworkError::NotArboreal);
    }
    Ok(out)
}

// ---- JSON ----

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", content = "data")]
enum CurveData {
    A(LatticePoint),
    B([LatticePoint; 2]),
}

impl From<CurveId> for CurveData {
    fn from(c: CurveId) -> Self {
        match c {
            CurveId::A(v) => CurveData::A(v),
            CurveId::B(s) => CurveData::B([s.a, s.b]),
        }
    }
}

impl TryFrom<CurveData> for CurveId {
    type Error = LatticeError;
    fn try_from(d: CurveData) -> Result<Self, LatticeError> {
        match d {
            CurveData::A(v) => Ok(CurveId::A(v)),
            CurveData::B([p, q]) => CurveId::b(p, q),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    #[serde(flatten)]
    curve: CurveId,
    clause: u8,
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    polygon: LatticePolygon,
    original: LatticePolygon,
    embedding: UnimodularMap,
    kappa: LatticePoint,
    r: Option<i64>,
    curves: Vec<CurveJson>,
}

impl From<Network> for NetworkJson {
    fn from(n: Network) -> Self {
        let curves = n
            .curves
            .iter()
            .map(|(c, cl)| CurveJson { curve: *c, clause: cl.number() })
            .collect();
        NetworkJson { polygon: n.polygon, original: n.original, embedding: n.embedding, kappa: n.kappa, r: n.r, curves }
    }
}

impl TryFrom<NetworkJson> for Network {
    type Error = NetworkError;
    fn try_from(j: NetworkJson) -> Result<Self, NetworkError> {
        let mut curves = BTreeMap::new();
        for c in j.curves {
            let id = c.curve;
            let cl = Clause::from_number(c.clause)
                .ok_or_else(|| NetworkError::InvalidCurve(id, format!("clause {} out of range", c.clause)))?;
            curves.insert(id, cl);
        }
        let net = Network {
            polygon: j.polygon,
            original: j.original,
            embedding: j.embedding,
            kappa: j.kappa,
            r: j.r,
            curves,
        };
        net.validate()?;
        Ok(net)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rectangle, triangle};

    fn side6() -> Network {
        build_network(&triangle(6), pt(1, 1)).unwrap()
    }

    #[test]
    fn side6_contents() {
        let n = side6();
        assert_eq!(n.r, Some(3));
        assert_eq!(n.clause_members(Clause::AllA).len(), 10);
        for (p, q) in [((0, 0), (0, -1)), ((3, 0), (0, -1)), ((0, 3), (1, 2))] {
            assert!(n.contains(&CurveId::b(p.into(), q.into()).unwrap()), "{p:?}-{q:?}");
        }
        assert_eq!(n.clause_members(Clause::Sigma), vec![CurveId::b(pt(0, 3), pt(1, 2)).unwrap()]);
        assert_eq!(n.clause_members(Clause::Tau), vec![CurveId::b(pt(3, 0), pt(0, -1)).unwrap()]);
        let g = graph_stats(&intersection_graph(&n));
        assert_eq!(g, GraphStats { connected: true, first_betti: 1, is_tree: false });
        let np = subnetwork_nprime(&n).unwrap();
        assert_eq!(graph_stats(&intersection_graph(&np)), GraphStats { connected: true, first_betti: 0, is_tree: true });
        assert!(matches!(subnetwork_nprime(&np), Err(NetworkError::MissingCurve(_))));
    }

    #[test]
    fn radial_clause_matches_enumeration() {
        for p in [triangle(6), rectangle(4, 4), triangle(4)] {
            let kappa = crate::lattice::default_kappa(&p).unwrap();
            let n = build_network(&p, kappa).unwrap();
            let built: BTreeSet<PrimitiveSegment> = n
                .clause_members(Clause::Radial)
                .into_iter()
                .map(|c| match c {
                    CurveId::B(s) => s,
                    _ => unreachable!(),
                })
                .collect();
            assert_eq!(built, radial_segments_by_enumeration(&n));
        }
    }

    #[test]
    fn intersections() {
        let a0 = CurveId::A(pt(0, 0));
        let b = CurveId::b(pt(0, 0), pt(1, 0)).unwrap();
        assert_eq!(geometric_intersection(&a0, &b), Ok(1));
        assert_eq!(geometric_intersection(&a0, &CurveId::A(pt(1, 0))), Ok(0));
        assert_eq!(geometric_intersection(&b, &CurveId::b(pt(0, 0), pt(0, 1)).unwrap()), Ok(0));
        let x1 = CurveId::b(pt(0, 0), pt(1, 1)).unwrap();
        let x2 = CurveId::b(pt(1, 0), pt(0, 1)).unwrap();
        assert!(matches!(geometric_intersection(&x1, &x2), Err(NetworkError::UnsupportedPair(..))));
    }

    #[test]
    fn graph_edge_cases() {
        let empty = IntersectionGraph { vertices: vec![], edges: vec![] };
        assert_eq!(graph_stats(&empty), GraphStats { connected: false, first_betti: 0, is_tree: false });
        let t3 = triangle(3);
        let single = Network::from_curves(t3, pt(1, 1), [(CurveId::A(pt(1, 1)), Clause::AllA)]).unwrap();
        let g = intersection_graph(&single);
        assert_eq!(g.vertices.len(), 1);
        assert!(g.edges.is_empty());
        let corr = spanning_tree_correspondence(&single).unwrap();
        assert_eq!(corr.len(), 1);
        assert_eq!(corr[&CurveId::A(pt(1, 1))].from, None);
    }

    #[test]
    fn dn_config_side6() {
        let n = side6();
        let c = dn_configuration(&n).unwrap();
        assert_eq!(c.curves().len(), 10);
        assert_eq!(c.chain.len(), 7);
        assert_eq!(c.chain[0], CurveId::A(pt(0, 0)));
        assert_eq!(c.chain[6], CurveId::A(pt(3, 0)));
        assert_eq!(c.delta1, CurveId::b(pt(3, 0), pt(0, -1)).unwrap());
        assert_eq!(c.d, CurveId::A(pt(0, 1)));
        let broken = n.without(&c.delta1).unwrap();
        assert!(matches!(dn_configuration(&broken), Err(NetworkError::ConfigurationUnavailable(_))));
    }

    #[test]
    fn tree_correspondence() {
        let n = side6();
        assert_eq!(spanning_tree_correspondence(&n), Err(NetworkError::NotArboreal));
        let np = subnetwork_nprime(&n).unwrap();
        let m = spanning_tree_correspondence(&np).unwrap();
        assert_eq!(m.len(), np.len());
    }

    #[test]
    fn json_round_trip() {
        let n = side6();
        let s = serde_json::to_string(&n).unwrap();
        assert!(s.contains(r#"{"type":"A","data":[0,0],"clause":1}"#));
        let back: Network = serde_json::from_str(&s).unwrap();
        assert_eq!(back, n);
    }
}
