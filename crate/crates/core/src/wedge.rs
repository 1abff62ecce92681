//! Exterior cube of H = Z^{2g}, the quotient by H, and the contraction.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{symp_pair, LatticeSpan, Mat};
use crate::spin::QuadraticFormZ2;
use crate::symp::transvection_power;
use crate::Exec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WedgeError {
    #[error("modulus {m} does not divide g - 1 = {gm1}")]
    BadModulus { m: i64, gm1: i64 },
    #[error("vectors do not span a symplectic subspace")]
    NotSymplecticSubspace,
    #[error("closure budget of {0} images exceeded")]
    BudgetExceeded(usize),
    #[error("genus {0} too small")]
    GenusTooSmall(usize),
    #[error("transformation {0} does not preserve the form")]
    NotInStabilizer(String),
}

fn binom3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Position of e_i ^ e_j ^ e_k (i < j < k) in the lexicographic basis.
fn triple_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    // triples starting below i, then pairs (j', k) with i < j' < j, then k
    let before_i: usize = (0..i).map(|a| (n - a - 1) * (n - a - 2) / 2).sum();
    let before_j: usize = (i + 1..j).map(|b| n - b - 1).sum();
    before_i + before_j + (k - j - 1)
}

/// An element of the exterior cube, in coordinates on e_i ^ e_j ^ e_k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Wedge3 {
    n: usize,
    coords: Vec<i64>,
}

impl Wedge3 {
    pub fn zero(n: usize) -> Self {
        Wedge3 { n, coords: vec![0; binom3(n)] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(binom3(n));
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    /// e_i ^ e_j ^ e_k in any order; zero on a repeated index.
    pub fn elementary(n: usize, i: usize, j: usize, k: usize) -> Self {
        let mut w = Wedge3::zero(n);
        if let Some((s, a, b, c)) = sort3(i, j, k) {
            w.coords[triple_index(n, a, b, c)] = s;
        }
        w
    }

    /// u ^ v ^ w for vectors of H.
    pub fn from_vectors(u: &[i64], v: &[i64], w: &[i64]) -> Self {
        let n = u.len();
        let mut out = Wedge3::zero(n);
        for (idx, &(i, j, k)) in Wedge3::triples(n).iter().enumerate() {
            // 3x3 minor of the rows u, v, w on columns i, j, k
            let m = |a: &[i64]| [a[i] as i128, a[j] as i128, a[k] as i128];
            let (a, b, c) = (m(u), m(v), m(w));
            let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
            out.coords[idx] = i64::try_from(det).expect("wedge coordinate overflow");
        }
        out
    }

    pub fn add(&self, o: &Wedge3) -> Wedge3 {
        Wedge3 { n: self.n, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Wedge3) -> Wedge3 {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Wedge3 {
        Wedge3 { n: self.n, coords: self.coords.iter().map(|a| a * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    /// Induced action of a linear map of H.
    pub fn apply(&self, m: &Mat) -> Wedge3 {
        let cols: Vec<Vec<i64>> = (0..self.n).map(|j| m.col(j)).collect();
        let mut out = Wedge3::zero(self.n);
        for (idx, &(i, j, k)) in Wedge3::triples(self.n).iter().enumerate() {
            let c = self.coords[idx];
            if c != 0 {
                out = out.add(&Wedge3::from_vectors(&cols[i], &cols[j], &cols[k]).scale(c));
            }
        }
        out
    }
}

fn sort3(i: usize, j: usize, k: usize) -> Option<(i64, usize, usize, usize)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut v = [i, j, k];
    let mut s = 1;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                s = -s;
            }
        }
    }
    Some((s, v[0], v[1], v[2]))
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

fn x(n: usize, i: usize) -> Vec<i64> {
    unit(n, 2 * i)
}

fn y(n: usize, i: usize) -> Vec<i64> {
    unit(n, 2 * i + 1)
}

/// omega ^ z with omega = sum x_i ^ y_i.
pub fn omega_wedge(z: &[i64]) -> Wedge3 {
    let n = z.len();
    (0..n / 2).fold(Wedge3::zero(n), |acc, i| acc.add(&Wedge3::from_vectors(&x(n, i), &y(n, i), z)))
}

/// C(a^b^c) = <a,b>c + <b,c>a + <c,a>b, reduced mod m (m = 0: over Z).
pub fn contraction(w: &Wedge3, m: i64) -> Vec<i64> {
    let n = w.n;
    let mut out = vec![0i64; n];
    for (idx, &(i, j, k)) in Wedge3::triples(n).iter().enumerate() {
        let c = w.coords[idx];
        if c == 0 {
            continue;
        }
        let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
        let (pij, pjk, pki) = (symp_pair(&ei, &ej), symp_pair(&ej, &ek), symp_pair(&ek, &ei));
        out[k] += c * pij;
        out[i] += c * pjk;
        out[j] += c * pki;
    }
    if m != 0 {
        for v in out.iter_mut() {
            *v = v.rem_euclid(m);
        }
    }
    out
}

/// A coset of the image of H, held by its reduced representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuotientW3 {
    rep: Wedge3,
}

/// Pivot coordinate for omega ^ e_t: x_a ^ y_a ^ e_t with a the first handle
/// not containing t.
fn pivot(n: usize, t: usize) -> (usize, i64) {
    let a = if t / 2 == 0 { 1 } else { 0 };
    let (s, i, j, k) = sort3(2 * a, 2 * a + 1, t).expect("distinct");
    (triple_index(n, i, j, k), s)
}

impl QuotientW3 {
    pub fn new(w: Wedge3) -> Self {
        let n = w.n;
        assert!(n >= 4, "the quotient needs g >= 2");
        let mut rep = w;
        for t in 0..n {
            let (p, s) = pivot(n, t);
            let c = rep.coords[p] * s;
            if c != 0 {
                rep = rep.sub(&omega_wedge(&unit(n, t)).scale(c));
            }
        }
        QuotientW3 { rep }
    }

    pub fn representative(&self) -> &Wedge3 {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, o: &QuotientW3) -> QuotientW3 {
        QuotientW3::new(self.rep.add(&o.rep))
    }

    /// Contraction on the quotient, defined mod m for m | g - 1.
    pub fn contraction(&self, m: i64) -> Result<Vec<i64>, WedgeError> {
        let gm1 = (self.rep.n / 2) as i64 - 1;
        if m <= 0 || gm1 % m != 0 {
            return Err(WedgeError::BadModulus { m, gm1 });
        }
        Ok(contraction(&self.rep, m))
    }
}

/// Johnson value of a bounding pair cutting off the span of `pairs`, with
/// c the class of the boundary: (sum x_i ^ y_i) ^ c.
pub fn johnson_bp(pairs: &[(Vec<i64>, Vec<i64>)], c: &[i64]) -> Result<Wedge3, WedgeError> {
    for (a, (xa, ya)) in pairs.iter().enumerate() {
        if symp_pair(xa, ya) != 1 {
            return Err(WedgeError::NotSymplecticSubspace);
        }
        for (xb, yb) in &pairs[a + 1..] {
            if [symp_pair(xa, xb), symp_pair(xa, yb), symp_pair(ya, xb), symp_pair(ya, yb)] != [0; 4] {
                return Err(WedgeError::NotSymplecticSubspace);
            }
        }
    }
    Ok(pairs.iter().fold(Wedge3::zero(c.len()), |acc, (xa, ya)| acc.add(&Wedge3::from_vectors(xa, ya, c))))
}

/// The families (G1), (G2), (G3) over the standard basis.
pub fn generators_k(g: usize, r: i64) -> Vec<Wedge3> {
    let n = 2 * g;
    let mut out = Vec::new();
    for i in 0..g {
        for z in 0..n {
            if z / 2 != i {
                out.push(Wedge3::elementary(n, z, 2 * i, 2 * i + 1).scale(r));
            }
        }
    }
    for i in 0..g {
        for j in i + 1..g {
            for z in 0..n {
                if z / 2 != i && z / 2 != j {
                    out.push(Wedge3::elementary(n, z, 2 * i, 2 * i + 1).sub(&Wedge3::elementary(n, z, 2 * j, 2 * j + 1)));
                }
            }
        }
    }
    for (i, j, k) in Wedge3::triples(n) {
        if i / 2 != j / 2 && j / 2 != k / 2 && i / 2 != k / 2 {
            out.push(Wedge3::elementary(n, i, j, k));
        }
    }
    out
}

pub fn span_of(ws: &[Wedge3]) -> LatticeSpan {
    let dim = ws.first().map_or(0, |w| w.coords.len());
    let mut s = LatticeSpan::new(dim);
    for w in ws {
        s.insert(&w.coords);
    }
    s
}

/// Swap of handles i and j.
pub fn swap_handles(g: usize, i: usize, j: usize) -> Mat {
    let n = 2 * g;
    let mut m = Mat::identity(n);
    for (a, b) in [(2 * i, 2 * j), (2 * i + 1, 2 * j + 1)] {
        m[(a, a)] = 0;
        m[(b, b)] = 0;
        m[(a, b)] = 1;
        m[(b, a)] = 1;
    }
    m
}

/// x_i -> y_i, y_i -> -x_i.
pub fn rotate_handle(g: usize, i: usize) -> Mat {
    let mut m = Mat::identity(2 * g);
    let (a, b) = (2 * i, 2 * i + 1);
    m[(a, a)] = 0;
    m[(b, b)] = 0;
    m[(b, a)] = 1;
    m[(a, b)] = -1;
    m
}

/// Outcome of the span computation for one parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NextReport {
    pub g: usize,
    /// phi(y_g) mod 2; every other basis curve has phi = 0
    pub phi_yg: u8,
    pub arf: u8,
    pub rank: usize,
    pub ambient: usize,
    pub unit_divisors: bool,
    pub images: usize,
    pub full: bool,
}

/// The form q = phi + 1 with phi = 0 on the basis except phi(y_g) = phi_yg.
pub fn next_form(g: usize, phi_yg: u8) -> QuadraticFormZ2 {
    let mut vals = vec![1u8; 2 * g];
    vals[2 * g - 1] = 1 ^ (phi_yg & 1);
    QuadraticFormZ2::new(vals)
}

/// The transformations used for the given parity, each checked to fix q.
pub fn next_transformations(g: usize, phi_yg: u8) -> Result<Vec<(String, Mat)>, WedgeError> {
    let n = 2 * g;
    let q = next_form(g, phi_yg);
    let mut ts: Vec<(String, Mat)> = Vec::new();
    let last = if phi_yg == 0 { g } else { g - 1 };
    for i in 0..last {
        ts.push((format!("R{}", i + 1), rotate_handle(g, i)));
        for j in i + 1..last {
            ts.push((format!("S{},{}", i + 1, j + 1), swap_handles(g, i, j)));
        }
    }
    let add = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(p, q)| p + q).collect::<Vec<i64>>();
    let neg = |a: &[i64]| a.iter().map(|p| -p).collect::<Vec<i64>>();
    // x4 - x1 alone is not anisotropic for q; x3 repairs it
    let v = add(&add(&x(n, 3), &neg(&x(n, 0))), &x(n, 2));
    ts.push(("T(x4-x1+x3)".into(), transvection_power(&v, 1).matrix().clone()));
    if phi_yg == 1 {
        let v = add(&y(n, g - 2), &y(n, g - 1));
        ts.push(("T(y_{g-1}+y_g)".into(), transvection_power(&v, 1).matrix().clone()));
        ts.push(("T(x_g)".into(), transvection_power(&x(n, g - 1), 1).matrix().clone()));
        let v = add(&add(&x(n, 0), &x(n, g - 1)), &neg(&y(n, g - 1)));
        ts.push(("T(x1+x_g-y_g)^-1".into(), transvection_power(&v, -1).matrix().clone()));
    }
    for (name, m) in &ts {
        // q(M e_i) = q(e_i) for every basis vector means q o M = q
        if (0..n).any(|i| q.eval(&m.col(i)) != q.values[i]) {
            return Err(WedgeError::NotInStabilizer(name.clone()));
        }
    }
    Ok(ts)
}

/// Span of the orbit of x1 ^ y1 ^ x4 under the transformations, grown until
/// it is invariant or all of the exterior cube.
pub fn lemma_next_closure(g: usize, phi_yg: u8, budget: usize) -> Result<NextReport, WedgeError> {
    if g < 5 {
        return Err(WedgeError::GenusTooSmall(g));
    }
    let n = 2 * g;
    let ts = next_transformations(g, phi_yg)?;
    let seed = Wedge3::from_vectors(&x(n, 0), &y(n, 0), &x(n, 3));
    let ambient = binom3(n);
    let mut span = LatticeSpan::new(ambient);
    span.insert(&seed.coords);
    let mut queue = VecDeque::from([seed]);
    let mut images = 1;
    let one = num_bigint::BigInt::from(1);
    while let Some(w) = queue.pop_front() {
        if span.rank() == ambient && span.index() == Some(one.clone()) {
            break;
        }
        for (_, m) in &ts {
            let img = w.apply(m);
            if !span.contains(&img.coords) {
                span.insert(&img.coords);
                queue.push_back(img);
                images += 1;
                if images > budget {
                    return Err(WedgeError::BudgetExceeded(budget));
                }
            }
        }
    }
    let divisors = span.elementary_divisors();
    let unit = divisors.len() == ambient && divisors.iter().all(|&d| d == 1);
    Ok(NextReport {
        g,
        phi_yg,
        arf: next_form(g, phi_yg).arf(),
        rank: span.rank(),
        ambient,
        unit_divisors: unit,
        images,
        full: span.rank() == ambient && unit,
    })
}

/// Both parities, as independent jobs.
pub fn next_closure_both(g: usize, budget: usize, exec: Exec) -> Vec<Result<NextReport, WedgeError>> {
    exec.map(&[0u8, 1u8], |&p| lemma_next_closure(g, p, budget))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternation() {
        let n = 6;
        let a = Wedge3::elementary(n, 0, 2, 4);
        assert_eq!(Wedge3::elementary(n, 2, 0, 4), a.scale(-1));
        assert_eq!(Wedge3::elementary(n, 4, 0, 2), a);
        assert!(Wedge3::elementary(n, 1, 1, 3).is_zero());
        assert_eq!(Wedge3::from_vectors(&unit(n, 0), &unit(n, 2), &unit(n, 4)), a);
        for (idx, &(i, j, k)) in Wedge3::triples(n).iter().enumerate() {
            assert_eq!(triple_index(n, i, j, k), idx);
        }
    }

    #[test]
    fn contraction_identities() {
        let g = 3;
        let n = 2 * g;
        // C(z ^ x_i ^ y_i) = z
        let w = Wedge3::from_vectors(&x(n, 2), &x(n, 0), &y(n, 0));
        assert_eq!(contraction(&w, 0), x(n, 2));
        let w = Wedge3::from_vectors(&x(n, 0), &y(n, 1), &x(n, 2));
        assert_eq!(contraction(&w, 0), vec![0; n]);
        let z = vec![1, -2, 0, 3, 1, 1];
        let c = contraction(&omega_wedge(&z), 0);
        assert_eq!(c, z.iter().map(|v| v * (g as i64 - 1)).collect::<Vec<_>>());
    }

    #[test]
    fn quotient_kills_h() {
        let n = 8;
        let z = vec![1, 0, -1, 2, 0, 0, 1, 1];
        assert!(QuotientW3::new(omega_wedge(&z)).is_zero());
        let w = Wedge3::elementary(n, 0, 2, 4);
        assert_eq!(QuotientW3::new(w.add(&omega_wedge(&z))), QuotientW3::new(w.clone()));
        assert!(matches!(QuotientW3::new(w).contraction(2), Err(WedgeError::BadModulus { .. })));
    }

    #[test]
    fn bounding_pair_values() {
        let n = 10;
        // 3-chain x1, y1, x4 - x1 with boundary class x4
        let gamma: Vec<i64> = x(n, 3).iter().zip(x(n, 0)).map(|(a, b)| a - b).collect();
        let chain = Wedge3::from_vectors(&x(n, 0), &y(n, 0), &gamma);
        let bp = johnson_bp(&[(x(n, 0), y(n, 0))], &x(n, 3)).unwrap();
        assert_eq!(bp, chain);
        assert_eq!(bp.scale(3), Wedge3::elementary(n, 0, 1, 6).scale(3));
        assert_eq!(johnson_bp(&[(x(n, 0), x(n, 1))], &x(n, 3)), Err(WedgeError::NotSymplecticSubspace));
    }

    #[test]
    fn seed_alone() {
        let n = 10;
        let s = span_of(&[Wedge3::from_vectors(&x(n, 0), &y(n, 0), &x(n, 3))]);
        assert_eq!(s.rank(), 1);
    }
}
