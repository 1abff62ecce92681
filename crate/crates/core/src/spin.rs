//! Z/r spin structures tracked on marked curves.
//!
//! A value of phi is only ever attached to a homology class through a
//! [`MarkedCurve`], created from a network curve or by one of the licensed
//! constructions (twist, smoothing, curve-arc sum).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{gcd, solve_gf2, symp_pair, vec_add, vec_scale, LatticeSpan};
use crate::network::{CurveId, Network};
use crate::surface::{curve_class, planar_faces, IntersectionForm, RibbonSurface};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpinError {
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(i64, i64),
    #[error("constraints phi = 0 on the network are inconsistent: {0}")]
    InconsistentConstraints(String),
    #[error("mod 2 reduction needs an even modulus, got {0}")]
    OddModulus(i64),
    #[error("homology vectors have different lengths")]
    DimensionMismatch,
}

/// How a marked curve was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Network(CurveId),
    Given(String),
    Twist { d: Arc<Provenance>, c: Arc<Provenance>, power: i64 },
    Smooth { m: i64, a: Arc<Provenance>, n: i64, b: Arc<Provenance>, single_component: bool },
    ArcSum { a: Arc<Provenance>, b: Arc<Provenance>, separating: bool },
    Reverse(Arc<Provenance>),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Network(c) => write!(f, "{c}"),
            Provenance::Given(s) => write!(f, "{s}"),
            Provenance::Twist { d, c, power } => write!(f, "T[{c}]^{power}({d})"),
            Provenance::Smooth { m, a, n, b, .. } => write!(f, "({m}*{a} + {n}*{b})"),
            Provenance::ArcSum { a, b, .. } => write!(f, "({a} +arc {b})"),
            Provenance::Reverse(p) => write!(f, "-{p}"),
        }
    }
}

/// A homology class together with its phi-value.
#[derive(Clone, Debug)]
pub struct MarkedCurve {
    pub h: Vec<i64>,
    pub phi: i64,
    pub r: i64,
    pub provenance: Arc<Provenance>,
}

impl PartialEq for MarkedCurve {
    fn eq(&self, o: &Self) -> bool {
        self.h == o.h && self.phi == o.phi && self.r == o.r
    }
}

impl Eq for MarkedCurve {}

impl MarkedCurve {
    pub fn new(h: Vec<i64>, phi: i64, r: i64, provenance: Provenance) -> Self {
        assert!(r >= 1);
        MarkedCurve { h, phi: phi.rem_euclid(r), r, provenance: Arc::new(provenance) }
    }

    pub fn given(h: Vec<i64>, phi: i64, r: i64, label: &str) -> Self {
        MarkedCurve::new(h, phi, r, Provenance::Given(label.to_string()))
    }

    pub fn reverse(&self) -> Self {
        MarkedCurve {
            h: vec_scale(-1, &self.h),
            phi: (-self.phi).rem_euclid(self.r),
            r: self.r,
            provenance: Arc::new(Provenance::Reverse(self.provenance.clone())),
        }
    }

    /// Orientation with first nonzero coordinate positive.
    pub fn canonical(self) -> Self {
        match self.h.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.reverse(),
            _ => self,
        }
    }

    pub fn pairing(&self, o: &MarkedCurve) -> i64 {
        symp_pair(&self.h, &o.h)
    }

    pub fn is_even_class(&self) -> bool {
        self.h.iter().all(|x| x % 2 == 0)
    }

    /// phi as a signed representative in (-r/2, r/2].
    pub fn phi_signed(&self) -> i64 {
        if 2 * self.phi > self.r {
            self.phi - self.r
        } else {
            self.phi
        }
    }
}

fn same_modulus(a: &MarkedCurve, b: &MarkedCurve) -> Result<(), SpinError> {
    if a.r != b.r {
        return Err(SpinError::ModulusMismatch(a.r, b.r));
    }
    if a.h.len() != b.h.len() {
        return Err(SpinError::DimensionMismatch);
    }
    Ok(())
}

/// T_c^k applied to d.
pub fn twist_power(d: &MarkedCurve, c: &MarkedCurve, k: i64) -> Result<MarkedCurve, SpinError> {
    same_modulus(d, c)?;
    let p = d.pairing(c);
    Ok(MarkedCurve {
        h: vec_add(&d.h, &vec_scale(k * p, &c.h)),
        phi: (d.phi + k * p * c.phi).rem_euclid(d.r),
        r: d.r,
        provenance: Arc::new(Provenance::Twist { d: d.provenance.clone(), c: c.provenance.clone(), power: k }),
    })
}

/// T_c(d): homology by transvection, phi by twist-linearity.
pub fn twist(d: &MarkedCurve, c: &MarkedCurve) -> Result<MarkedCurve, SpinError> {
    twist_power(d, c, 1)
}

/// The class m*alpha + n*beta realised by smoothing intersections. The
/// provenance records whether the result is a single curve (i(alpha, beta)
/// = 1 and gcd(m, n) = 1); this is asserted by the caller, not checked.
pub fn smooth_sum(m: i64, a: &MarkedCurve, n: i64, b: &MarkedCurve) -> Result<MarkedCurve, SpinError> {
    same_modulus(a, b)?;
    let single = a.pairing(b).abs() == 1 && gcd(m, n) == 1;
    if n == 0 && m.abs() == 1 {
        return Ok(if m == 1 { a.clone() } else { a.reverse() });
    }
    Ok(MarkedCurve {
        h: vec_add(&vec_scale(m, &a.h), &vec_scale(n, &b.h)),
        phi: (m * a.phi + n * b.phi).rem_euclid(a.r),
        r: a.r,
        provenance: Arc::new(Provenance::Smooth {
            m,
            a: a.provenance.clone(),
            n,
            b: b.provenance.clone(),
            single_component: single,
        }),
    })
}

/// Sum of two disjoint curves along an arc: phi(a) + phi(b) + 1.
pub fn curve_arc_sum(a: &MarkedCurve, b: &MarkedCurve) -> Result<MarkedCurve, SpinError> {
    same_modulus(a, b)?;
    let h = vec_add(&a.h, &b.h);
    let separating = h.iter().all(|&x| x == 0);
    Ok(MarkedCurve {
        h,
        phi: (a.phi + b.phi + 1).rem_euclid(a.r),
        r: a.r,
        provenance: Arc::new(Provenance::ArcSum { a: a.provenance.clone(), b: b.provenance.clone(), separating }),
    })
}

/// phi = 0 and a class that is nonzero mod 2.
pub fn is_admissible(c: &MarkedCurve) -> bool {
    c.phi.rem_euclid(c.r) == 0 && !c.is_even_class()
}

/// Sum of phi over oriented boundary curves against the Euler characteristic.
pub fn coherence_check(boundary: &[MarkedCurve], chi: i64) -> bool {
    let Some(first) = boundary.first() else { return chi == 0 };
    let r = first.r;
    if boundary.iter().any(|c| c.r != r) {
        return false;
    }
    (boundary.iter().map(|c| c.phi).sum::<i64>() - chi).rem_euclid(r) == 0
}

/// Applies T_a^x T_b^y T_c^z and asks whether phi is unchanged on every test
/// curve.
pub fn fundamental_multitwist_check(
    triple: [&MarkedCurve; 3],
    exponents: (i64, i64, i64),
    tests: &[MarkedCurve],
) -> Result<bool, SpinError> {
    let [a, b, c] = triple;
    let (x, y, z) = exponents;
    for t in tests {
        let img = twist_power(&twist_power(&twist_power(t, c, z)?, b, y)?, a, x)?;
        if img.phi != t.phi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Arf invariant from phi-values on a geometric symplectic basis.
pub fn arf_from_phi(pairs: &[(i64, i64)]) -> u8 {
    pairs.iter().map(|&(x, y)| ((x + 1).rem_euclid(2) * (y + 1).rem_euclid(2)) as u8).sum::<u8>() % 2
}

/// A quadratic refinement of the mod 2 intersection form, stored by its
/// values on the symplectic basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticFormZ2 {
    pub values: Vec<u8>,
}

impl QuadraticFormZ2 {
    pub fn new(values: Vec<u8>) -> Self {
        assert!(values.len() % 2 == 0);
        QuadraticFormZ2 { values: values.into_iter().map(|v| v & 1).collect() }
    }

    pub fn genus(&self) -> usize {
        self.values.len() / 2
    }

    pub fn eval(&self, v: &[i64]) -> u8 {
        let mut acc = 0i64;
        for (i, &x) in v.iter().enumerate() {
            acc += x.rem_euclid(2) * self.values[i] as i64;
        }
        for k in 0..self.genus() {
            acc += v[2 * k].rem_euclid(2) * v[2 * k + 1].rem_euclid(2);
        }
        (acc % 2) as u8
    }

    pub fn arf(&self) -> u8 {
        (0..self.genus()).map(|k| self.values[2 * k] & self.values[2 * k + 1]).sum::<u8>() % 2
    }

    /// Arf computed on another symplectic basis, given as the columns of `m`.
    pub fn arf_in_basis(&self, m: &crate::linalg::Mat) -> u8 {
        (0..self.genus()).map(|k| self.eval(&m.col(2 * k)) & self.eval(&m.col(2 * k + 1))).sum::<u8>() % 2
    }
}

/// The spin structure with phi = 0 on every network curve.
#[derive(Clone, Debug)]
pub struct SpinStructure {
    pub r: i64,
    pub genus: usize,
    /// network curves whose classes form a Z-basis of homology
    pub basis: Vec<CurveId>,
    pub basis_values: Vec<i64>,
    curves: BTreeMap<CurveId, MarkedCurve>,
    q_linear: Option<Vec<u8>>,
}

impl SpinStructure {
    pub fn curve(&self, c: &CurveId) -> Option<&MarkedCurve> {
        self.curves.get(c)
    }

    pub fn curves(&self) -> impl Iterator<Item = (&CurveId, &MarkedCurve)> {
        self.curves.iter()
    }

    pub fn marked_curves(&self) -> Vec<MarkedCurve> {
        self.curves.values().cloned().collect()
    }

    /// Mod 2 consistency of a marked curve with this structure (even r only).
    pub fn mod2_consistent(&self, c: &MarkedCurve) -> Result<bool, SpinError> {
        let q = q2(self)?;
        Ok((c.phi + 1).rem_euclid(2) as u8 == q.eval(&c.h))
    }
}

/// Picks network curves forming a Z-basis of the lattice they span.
fn integral_basis(classes: &[(CurveId, Vec<i64>)], dim: usize) -> Option<Vec<usize>> {
    let mut span = LatticeSpan::new(dim);
    let mut chosen = Vec::new();
    for (i, (_, h)) in classes.iter().enumerate() {
        let before = span.rank();
        let mut trial = span.clone();
        trial.insert(h);
        if trial.rank() > before {
            span = trial;
            chosen.push(i);
        }
    }
    if span.rank() < dim {
        return None;
    }
    let index_of = |sel: &[usize]| {
        let mut s = LatticeSpan::new(dim);
        for &i in sel {
            s.insert(&classes[i].1);
        }
        s.index()
    };
    let one = num_bigint::BigInt::from(1);
    let mut idx = index_of(&chosen)?;
    // exchange until unimodular
    'outer: while idx != one {
        for slot in 0..chosen.len() {
            for cand in 0..classes.len() {
                if chosen.contains(&cand) {
                    continue;
                }
                let mut trial = chosen.clone();
                trial[slot] = cand;
                if let Some(t) = index_of(&trial) {
                    if t < idx {
                        chosen = trial;
                        idx = t;
                        continue 'outer;
                    }
                }
            }
        }
        return None;
    }
    Some(chosen)
}

/// Builds the spin structure vanishing on every network curve and checks it
/// for consistency.
pub fn canonical_spin(net: &Network, s: &RibbonSurface, form: &IntersectionForm) -> Result<SpinStructure, SpinError> {
    let r = net.r.unwrap_or(1);
    let g = form.genus();
    if r > 1 && (2 * g as i64 - 2).rem_euclid(r) != 0 {
        return Err(SpinError::InconsistentConstraints(format!("{r} does not divide 2g-2 = {}", 2 * g as i64 - 2)));
    }
    let mut classes = Vec::new();
    let mut curves = BTreeMap::new();
    for c in net.curve_ids() {
        let h = curve_class(s, form, &c).map_err(|e| SpinError::InconsistentConstraints(e.to_string()))?;
        let m = MarkedCurve::new(h, 0, r, Provenance::Network(c)).canonical();
        classes.push((c, m.h.clone()));
        curves.insert(c, m);
    }
    let chosen = integral_basis(&classes, 2 * g)
        .ok_or_else(|| SpinError::InconsistentConstraints("network classes contain no integral basis".into()))?;
    // coherence on each planar face: boundary B-curves, with the face on the
    // left, carry total phi equal to the Euler characteristic
    let faces = planar_faces(net).map_err(|e| SpinError::InconsistentConstraints(e.to_string()))?;
    for (i, f) in faces.iter().enumerate() {
        let boundary: Vec<MarkedCurve> = f
            .sides
            .iter()
            .map(|&(seg, left)| {
                let c = &curves[&CurveId::B(seg)];
                if left {
                    c.clone()
                } else {
                    c.reverse()
                }
            })
            .collect();
        if !coherence_check(&boundary, f.doubled_euler()) {
            return Err(SpinError::InconsistentConstraints(format!(
                "face {i} with {} sides and {} interior points",
                f.sides.len(),
                f.interior_points
            )));
        }
    }
    let q_linear = if r % 2 == 0 {
        // q(v) = l.v + sum v_x v_y with q = 1 on every network class
        let rows: Vec<Vec<u8>> = classes.iter().map(|(_, h)| h.iter().map(|x| x.rem_euclid(2) as u8).collect()).collect();
        let rhs: Vec<u8> = classes
            .iter()
            .map(|(_, h)| {
                let quad: i64 = (0..g).map(|k| h[2 * k].rem_euclid(2) * h[2 * k + 1].rem_euclid(2)).sum();
                ((1 + quad) % 2) as u8
            })
            .collect();
        Some(solve_gf2(&rows, &rhs).ok_or_else(|| SpinError::InconsistentConstraints("mod 2 reduction".into()))?)
    } else {
        None
    };
    Ok(SpinStructure {
        r,
        genus: g,
        basis: chosen.iter().map(|&i| classes[i].0).collect(),
        basis_values: vec![0; chosen.len()],
        curves,
        q_linear,
    })
}

/// The mod 2 quadratic form q = phi + 1.
pub fn q2(phi: &SpinStructure) -> Result<QuadraticFormZ2, SpinError> {
    match &phi.q_linear {
        Some(l) => Ok(QuadraticFormZ2::new(l.clone())),
        None => Err(SpinError::OddModulus(phi.r)),
    }
}

pub fn arf(phi: &SpinStructure) -> Result<u8, SpinError> {
    Ok(q2(phi)?.arf())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mc(h: &[i64], phi: i64, r: i64) -> MarkedCurve {
        MarkedCurve::given(h.to_vec(), phi, r, "t")
    }

    #[test]
    fn twist_examples() {
        let c = mc(&[1, 0], 2, 6);
        let d = mc(&[0, -1], 1, 6);
        assert_eq!(d.pairing(&c), 1);
        assert_eq!(twist(&d, &c).unwrap().phi, 3);
        assert_eq!(twist(&c, &c).unwrap(), c);
        let z = mc(&[1, 0], 0, 6);
        assert_eq!(twist(&d, &z).unwrap().phi, d.phi);
        assert_eq!(twist(&d, &mc(&[1, 0], 0, 5)), Err(SpinError::ModulusMismatch(6, 5)));
    }

    #[test]
    fn sums() {
        let a = mc(&[1, 0], 1, 7);
        let b = mc(&[0, 1], 2, 7);
        assert_eq!(smooth_sum(1, &a, 0, &b).unwrap(), a);
        let ra = smooth_sum(-1, &a, 0, &b).unwrap();
        assert_eq!((ra.h.clone(), ra.phi), (vec![-1, 0], 6));
        assert_eq!(smooth_sum(2, &a, 3, &b).unwrap().phi, 1);
        let z = mc(&[1, 0], 0, 3);
        let w = mc(&[0, 1], 0, 3);
        assert_eq!(curve_arc_sum(&z, &w).unwrap().phi, 1);
        let s = curve_arc_sum(&z, &z.reverse()).unwrap();
        assert!(s.h.iter().all(|&x| x == 0));
        assert!(matches!(*s.provenance, Provenance::ArcSum { separating: true, .. }));
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&mc(&[1, 0, 0, 0], 0, 3)));
        assert!(!is_admissible(&mc(&[2, 0, 0, 0], 0, 3)));
        assert!(!is_admissible(&mc(&[1, 0, 0, 0], 1, 3)));
    }

    #[test]
    fn coherence() {
        let a = 2;
        let r = 5;
        let pants = [mc(&[1, 0, 0, 0], a, r), mc(&[0, 0, 1, 0], -a, r), mc(&[-1, 0, -1, 0], -1, r)];
        assert!(coherence_check(&pants, -1));
        assert!(coherence_check(&[mc(&[0, 0], 1 - 2 * 3, 4)], 1 - 2 * 3));
        let zero = [mc(&[1, 0], 0, 3), mc(&[1, 0], 0, 3), mc(&[1, 0], 0, 3)];
        assert!(!coherence_check(&zero, -1));
    }

    #[test]
    fn arf_small() {
        assert_eq!(arf_from_phi(&[(0, 0)]), 1);
        let q = QuadraticFormZ2::new(vec![1, 1]);
        assert_eq!(q.eval(&[1, 1]), 1);
        assert_eq!(q.arf(), 1);
    }

    fn spin_of(p: &crate::lattice::LatticePolygon) -> (SpinStructure, IntersectionForm) {
        let net = crate::network::build_network(p, crate::network::find_kappa(p).unwrap()).unwrap();
        let s = crate::surface::inflate(&net).unwrap();
        let form = crate::surface::homology_basis(&s).unwrap();
        (canonical_spin(&net, &s, &form).unwrap(), form)
    }

    #[test]
    fn side_six() {
        let (phi, form) = spin_of(&crate::lattice::triangle(6));
        assert_eq!((phi.r, phi.genus, phi.basis.len()), (3, 10, 20));
        assert!(phi.basis_values.iter().all(|&v| v == 0));
        assert_eq!(form.genus(), 10);
        assert_eq!(q2(&phi), Err(SpinError::OddModulus(3)));
        assert!(phi.curves().all(|(_, c)| is_admissible(c)));
    }

    #[test]
    fn square_even() {
        let (phi, _) = spin_of(&crate::lattice::rectangle(4, 4));
        assert_eq!(phi.r, 2);
        let q = q2(&phi).unwrap();
        for (_, c) in phi.curves() {
            assert_eq!(q.eval(&c.h), 1);
            assert!(phi.mod2_consistent(c).unwrap());
        }
        // g = 9
        assert_eq!(q.genus(), 9);
        assert_eq!(q.arf(), 0);
    }
}
