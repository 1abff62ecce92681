//! The symplectic representation: transvections, relation checks in
//! Sp(2g, Z), and brute force over Sp(2g, Z/2).

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{gcd_all, standard_j, symp_pair, vec_add, vec_scale, Mat};
use crate::spin::{twist_power, MarkedCurve, QuadraticFormZ2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SympError {
    #[error("vector {0:?} is not primitive")]
    NonPrimitive(Vec<i64>),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("expected pairing +-1, got {0}")]
    BadPairing(i64),
    #[error("not a chain: <c{0}, c{1}> = {2}")]
    NotAChain(usize, usize, i64),
    #[error("not a D_n pattern: {0}")]
    NotDnPattern(String),
    #[error("genus {0} is too large for brute force")]
    TooLarge(usize),
    #[error("conditions violated: {0}")]
    ConditionsViolated(&'static str),
    #[error("dimension mismatch")]
    DimensionMismatch,
}

/// Value of q on vectors whose transvections preserve q, for
/// q(x + y) = q(x) + q(y) + <x, y>.
pub const ANISOTROPIC: u8 = 1;

/// An integer matrix preserving the standard form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpMatrix {
    m: Mat,
}

impl SpMatrix {
    pub fn new(m: Mat) -> Result<Self, SympError> {
        if !m.is_square() || m.nrows() % 2 == 1 {
            return Err(SympError::NotSymplectic);
        }
        let j = standard_j(m.nrows() / 2);
        if m.transpose().mul(&j).mul(&m) != j {
            return Err(SympError::NotSymplectic);
        }
        Ok(SpMatrix { m })
    }

    pub fn identity(g: usize) -> Self {
        SpMatrix { m: Mat::identity(2 * g) }
    }

    pub fn genus(&self) -> usize {
        self.m.nrows() / 2
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn mul(&self, o: &SpMatrix) -> SpMatrix {
        SpMatrix { m: self.m.mul(&o.m) }
    }

    pub fn pow(&self, e: u64) -> SpMatrix {
        SpMatrix { m: self.m.pow(e) }
    }

    /// M^{-1} = -J M^T J.
    pub fn inverse(&self) -> SpMatrix {
        let j = standard_j(self.genus());
        SpMatrix { m: j.mul(&self.m.transpose()).mul(&j).neg() }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.m.mul_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    pub fn reduce_mod(&self, n: i64) -> Mat {
        self.m.reduce_mod(n)
    }
}

/// A primitive vector, the data of a transvection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TransvectionSpec {
    v: Vec<i64>,
}

impl TransvectionSpec {
    pub fn new(v: Vec<i64>) -> Result<Self, SympError> {
        if v.len() % 2 == 1 {
            return Err(SympError::DimensionMismatch);
        }
        if gcd_all(&v) != 1 {
            return Err(SympError::NonPrimitive(v));
        }
        Ok(TransvectionSpec { v })
    }

    pub fn vector(&self) -> &[i64] {
        &self.v
    }

    pub fn matrix(&self) -> SpMatrix {
        transvection_power(&self.v, 1)
    }
}

/// T_v^k = I + k v (Jv)^T, i.e. x -> x + k<x,v>v. No primitivity check.
pub fn transvection_power(v: &[i64], k: i64) -> SpMatrix {
    let n = v.len();
    let mut m = Mat::identity(n);
    // (Jv)_j such that x . Jv = <x, v>
    let mut jv = vec![0; n];
    for i in (0..n).step_by(2) {
        jv[i] = v[i + 1];
        jv[i + 1] = -v[i];
    }
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] += k * v[i] * jv[j];
        }
    }
    SpMatrix { m }
}

/// The matrix of T_v.
pub fn transvection(v: &[i64]) -> Result<SpMatrix, SympError> {
    Ok(TransvectionSpec::new(v.to_vec())?.matrix())
}

/// Psi(T_c) for a marked curve.
pub fn psi(c: &MarkedCurve) -> SpMatrix {
    transvection_power(&c.h, 1)
}

/// Product T_{v_1}^{e_1} ... T_{v_k}^{e_k} (rightmost acts first).
pub fn word_matrix(dim: usize, word: &[(&[i64], i64)]) -> SpMatrix {
    word.iter().fold(SpMatrix { m: Mat::identity(dim) }, |acc, (v, e)| acc.mul(&transvection_power(v, *e)))
}

/// Applies the same word to a marked curve through twist-linearity.
pub fn word_on_curve(word: &[(&MarkedCurve, i64)], c: &MarkedCurve) -> MarkedCurve {
    word.iter().rev().fold(c.clone(), |acc, (t, e)| twist_power(&acc, t, *e).expect("shared modulus"))
}

fn check_dims(curves: &[&MarkedCurve]) -> Result<usize, SympError> {
    let n = curves.first().map_or(0, |c| c.h.len());
    if n == 0 || n % 2 == 1 || curves.iter().any(|c| c.h.len() != n) {
        return Err(SympError::DimensionMismatch);
    }
    Ok(n)
}

/// Braid relation T_a T_b T_a = T_b T_a T_b, plus T_a T_b(a) = b on
/// homology and phi (with b reversed when <a, b> = -1).
pub fn verify_braid(a: &MarkedCurve, b: &MarkedCurve) -> Result<bool, SympError> {
    check_dims(&[a, b])?;
    let p = a.pairing(b);
    if p.abs() != 1 {
        return Err(SympError::BadPairing(p));
    }
    let (ma, mb) = (psi(a), psi(b));
    let lhs = ma.mul(&mb).mul(&ma);
    let rhs = mb.mul(&ma).mul(&mb);
    let img = word_on_curve(&[(a, 1), (b, 1)], a);
    let target = if p == 1 { b.clone() } else { b.reverse() };
    Ok(lhs == rhs && img == target)
}

fn check_chain(chain: &[&MarkedCurve]) -> Result<(), SympError> {
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            let p = chain[i].pairing(chain[j]);
            let ok = if j == i + 1 { p.abs() == 1 } else { p == 0 };
            if !ok {
                return Err(SympError::NotAChain(i + 1, j + 1, p));
            }
        }
    }
    Ok(())
}

/// Class of a boundary component of an odd chain: the signed sum of the
/// odd-position curves, signs fixed so the result pairs to zero with every
/// chain curve. Returns None for even chains (separating boundary).
pub fn chain_boundary(chain: &[&MarkedCurve]) -> Result<Option<Vec<i64>>, SympError> {
    check_dims(chain)?;
    check_chain(chain)?;
    if chain.len() % 2 == 0 {
        return Ok(None);
    }
    let mut eps = 1;
    let mut w = chain[0].h.clone();
    for i in (0..chain.len() - 2).step_by(2) {
        let num = chain[i].pairing(chain[i + 1]);
        let den = chain[i + 2].pairing(chain[i + 1]);
        eps = -eps * num * den;
        w = vec_add(&w, &vec_scale(eps, &chain[i + 2].h));
    }
    debug_assert!(chain.iter().all(|c| symp_pair(&c.h, &w) == 0));
    Ok(Some(w))
}

/// Checks that the marked-curve action of a word agrees with its matrix and,
/// if every twist curve is admissible, that phi is unchanged.
fn word_consistent(word: &[(&MarkedCurve, i64)], m: &SpMatrix, tests: &[MarkedCurve]) -> bool {
    let admissible = word.iter().all(|(c, _)| c.phi == 0);
    tests.iter().all(|t| {
        let img = word_on_curve(word, t);
        img.h == m.apply(&t.h) && (!admissible || img.phi == t.phi)
    })
}

fn repeat<'a>(w: &[(&'a MarkedCurve, i64)], k: usize) -> Vec<(&'a MarkedCurve, i64)> {
    (0..k).flat_map(|_| w.iter().copied()).collect()
}

/// Chain relation in Sp: (T_1..T_n)^{n+1} = T_w^2 for odd n, where both
/// boundary curves have class w, and (T_1..T_n)^{2n+2} = I for even n.
pub fn verify_chain(chain: &[&MarkedCurve], tests: &[MarkedCurve]) -> Result<bool, SympError> {
    let dim = check_dims(chain)?;
    check_chain(chain)?;
    let n = chain.len();
    let base: Vec<(&MarkedCurve, i64)> = chain.iter().map(|c| (*c, 1)).collect();
    let w = base.iter().fold(SpMatrix::identity(dim / 2), |acc, (c, _)| acc.mul(&psi(c)));
    let (lhs, rhs, k) = match chain_boundary(chain)? {
        Some(b) => (w.pow(n as u64 + 1), transvection_power(&b, 2), n + 1),
        None => (w.pow(2 * n as u64 + 2), SpMatrix::identity(dim / 2), 2 * n + 2),
    };
    Ok(lhs == rhs && word_consistent(&repeat(&base, k), &lhs, tests))
}

/// Boundary data of a D_n configuration (a, a', c_1, ..., c_{n-2}).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnBoundary {
    pub n: usize,
    /// class of Delta_0
    pub delta0: Vec<i64>,
    /// for even n, the classes of Delta_1 and Delta_1'
    pub delta1: Option<(Vec<i64>, Vec<i64>)>,
}

fn check_dn(config: &[&MarkedCurve]) -> Result<(), SympError> {
    let n = config.len();
    if n < 3 {
        return Err(SympError::NotDnPattern(format!("{n} curves")));
    }
    // vertex 0 = a, 1 = a', 2.. = c_1..
    let adjacent = |i: usize, j: usize| {
        let (i, j) = (i.min(j), i.max(j));
        (i <= 1 && j == 2) || (i >= 2 && j == i + 1)
    };
    for i in 0..n {
        for j in i + 1..n {
            let p = config[i].pairing(config[j]);
            let ok = if adjacent(i, j) { p.abs() == 1 } else { p == 0 };
            if !ok {
                return Err(SympError::NotDnPattern(format!("pairing of curves {i} and {j} is {p}")));
            }
        }
    }
    Ok(())
}

pub fn dn_boundary(config: &[&MarkedCurve]) -> Result<DnBoundary, SympError> {
    check_dims(config)?;
    check_dn(config)?;
    let n = config.len();
    let (a, ap, c1) = (config[0], config[1], config[2]);
    let s = -a.pairing(c1) * ap.pairing(c1);
    let delta0 = vec_add(&a.h, &vec_scale(s, &ap.h));
    let delta1 = if n % 2 == 0 {
        let mut left: Vec<&MarkedCurve> = vec![a];
        left.extend(&config[2..]);
        let mut right: Vec<&MarkedCurve> = vec![ap];
        right.extend(&config[2..]);
        Some((chain_boundary(&left)?.expect("odd chain"), chain_boundary(&right)?.expect("odd chain")))
    } else {
        None
    };
    Ok(DnBoundary { n, delta0, delta1 })
}

fn coxeter(config: &[&MarkedCurve]) -> SpMatrix {
    let dim = config[0].h.len();
    config.iter().fold(SpMatrix::identity(dim / 2), |acc, c| acc.mul(&psi(c)))
}

/// D_n relation in Sp with W = T_a T_a' T_{c_1} ... T_{c_{n-2}}:
/// n = 2g+1 gives W^{2n-2} = T_{Delta_0}^{2g-1} T_{Delta_2} (both classes equal
/// up to sign); n = 2g+2 gives W^{n-1} = T_{Delta_0}^g T_{Delta_1} T_{Delta_1'}.
pub fn verify_dn(config: &[&MarkedCurve], tests: &[MarkedCurve]) -> Result<bool, SympError> {
    let bd = dn_boundary(config)?;
    let n = bd.n;
    let w = coxeter(config);
    let base: Vec<(&MarkedCurve, i64)> = config.iter().map(|c| (*c, 1)).collect();
    let (lhs, rhs, k) = if n % 2 == 1 {
        let g = (n - 1) / 2;
        (w.pow(2 * n as u64 - 2), transvection_power(&bd.delta0, 2 * g as i64), 2 * n - 2)
    } else {
        let g = (n - 2) / 2;
        let (d1, d1p) = bd.delta1.as_ref().expect("even n");
        let rhs = transvection_power(&bd.delta0, g as i64).mul(&transvection_power(d1, 1)).mul(&transvection_power(d1p, 1));
        (w.pow(n as u64 - 1), rhs, n - 1)
    };
    Ok(lhs == rhs && word_consistent(&repeat(&base, k), &lhs, tests))
}

/// One (k, m) instance of the boundary-power check at the Sp level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnPowerCheck {
    pub k: usize,
    pub m: i64,
    /// exponent e with Psi(W_{2k+1}^{4k}) = T_{Delta_0}^e
    pub sub_exponent: i64,
    pub witnessed: bool,
}

fn transvection_exponent(target: &SpMatrix, v: &[i64], bound: i64) -> Option<i64> {
    (-bound..=bound).find(|&e| transvection_power(v, e) == *target)
}

/// For a D_{2g+3} configuration: each subconfiguration D_{2k+1} gives
/// Psi(W^{4k}) = T_{Delta_0}^{2k} and the D_{2g+2} subconfiguration, with
/// T_{Delta_1}, T_{Delta_1'} adjoined, gives T_{Delta_0}^g. Since every C_k
/// is homologous to Delta_0, T_{C_k}^m is reached exactly when m is a
/// multiple of the gcd of the exponents found.
pub fn verify_dn_powers(config: &[&MarkedCurve]) -> Result<Vec<DnPowerCheck>, SympError> {
    let bd = dn_boundary(config)?;
    let n = bd.n;
    if n % 2 == 0 || n < 5 {
        return Err(SympError::NotDnPattern(format!("need D_(2g+3), got D_{n}")));
    }
    let g = (n - 3) / 2;
    let mut exps = Vec::new();
    let mut subs = Vec::new();
    for k in 1..=g + 1 {
        let sub = &config[..2 * k + 1];
        let x = coxeter(sub).pow(4 * k as u64);
        let e = transvection_exponent(&x, &bd.delta0, 4 * n as i64).unwrap_or(0);
        subs.push(e);
        exps.push(e);
    }
    let even = &config[..2 * g + 2];
    let ebd = dn_boundary(even)?;
    let (d1, d1p) = ebd.delta1.expect("even n");
    let y = coxeter(even).pow(2 * g as u64 + 1).mul(&transvection_power(&d1p, -1)).mul(&transvection_power(&d1, -1));
    exps.push(transvection_exponent(&y, &bd.delta0, 4 * n as i64).unwrap_or(0));
    let step = gcd_all(&exps);
    let mut out = Vec::new();
    for k in 1..=g + 1 {
        let d = (2 * k - 1) as i64;
        for m in 1..=g as i64 {
            if (g as i64) % (d * m) == 0 {
                out.push(DnPowerCheck { k, m, sub_exponent: subs[k - 1], witnessed: step != 0 && m % step == 0 });
            }
        }
    }
    Ok(out)
}

/// (T_{v1} T_{v2} T_{v3})^4 = T_w^2, after checking the hypotheses. With a
/// form given, each v_i must be anisotropic. The identity is also checked
/// mod 2.
pub fn square_transvection_identity(
    w: &[i64],
    v: [&[i64]; 3],
    q: Option<&QuadraticFormZ2>,
) -> Result<bool, SympError> {
    let n = w.len();
    if v.iter().any(|x| x.len() != n) || n % 2 == 1 {
        return Err(SympError::DimensionMismatch);
    }
    if let Some(q) = q {
        if v.iter().any(|x| q.eval(x) != ANISOTROPIC) {
            return Err(SympError::ConditionsViolated("some v_i is not anisotropic"));
        }
    }
    if symp_pair(v[0], v[1]) != 1 || symp_pair(v[1], v[2]) != 1 || symp_pair(v[0], v[2]) != 0 {
        return Err(SympError::ConditionsViolated("pairings of v_1, v_2, v_3"));
    }
    if v.iter().any(|x| symp_pair(x, w) != 0) {
        return Err(SympError::ConditionsViolated("some v_i pairs with w"));
    }
    if vec_add(v[0], v[2]) != w {
        return Err(SympError::ConditionsViolated("v_1 + v_3 != w"));
    }
    let lhs = word_matrix(n, &[(v[0], 1), (v[1], 1), (v[2], 1)]).pow(4);
    let rhs = transvection_power(w, 2);
    Ok(lhs == rhs && lhs.reduce_mod(2) == rhs.reduce_mod(2))
}

/// Sp(2g, Z/2) for 2g <= 8, as 8x8 bit matrices packed one row per byte.
pub mod gf2 {
    use std::collections::{HashMap, HashSet};

    use serde::Serialize;

    use super::{SympError, ANISOTROPIC};
    use crate::spin::QuadraticFormZ2;
    use crate::Exec;

    const EVEN: u8 = 0x55;
    const ODD: u8 = 0xAA;

    /// Rows of a 2g x 2g matrix over GF(2); bit j of byte i is entry (i, j).
    pub type Mat2 = u64;

    fn row(m: Mat2, i: usize) -> u8 {
        (m >> (8 * i)) as u8
    }

    pub fn identity(g: usize) -> Mat2 {
        (0..2 * g).fold(0, |m, i| m | (1u64 << (8 * i + i)))
    }

    pub fn mul(a: Mat2, b: Mat2, g: usize) -> Mat2 {
        let mut out = 0u64;
        for i in 0..2 * g {
            let ra = row(a, i);
            let mut acc = 0u8;
            for j in 0..2 * g {
                if ra >> j & 1 == 1 {
                    acc ^= row(b, j);
                }
            }
            out |= (acc as u64) << (8 * i);
        }
        out
    }

    pub fn apply(m: Mat2, v: u8, g: usize) -> u8 {
        (0..2 * g).fold(0, |acc, i| acc | ((((row(m, i) & v).count_ones() & 1) as u8) << i))
    }

    fn swap_pairs(v: u8) -> u8 {
        ((v & EVEN) << 1) | ((v & ODD) >> 1)
    }

    /// <u, v> mod 2.
    pub fn pair(u: u8, v: u8) -> u8 {
        ((u & swap_pairs(v)).count_ones() & 1) as u8
    }

    /// x -> x + <x, v> v.
    pub fn transvection(v: u8, g: usize) -> Mat2 {
        let jv = swap_pairs(v);
        let mut m = identity(g);
        for i in 0..2 * g {
            if v >> i & 1 == 1 {
                m ^= (jv as u64) << (8 * i);
            }
        }
        m
    }

    pub fn bits(v: &[i64]) -> u8 {
        v.iter().enumerate().fold(0, |acc, (i, &x)| acc | ((x.rem_euclid(2) as u8) << i))
    }

    pub fn form_bits(q: &QuadraticFormZ2) -> u8 {
        q.values.iter().enumerate().fold(0, |acc, (i, &x)| acc | ((x & 1) << i))
    }

    /// q(v) for the form with basis values `l`.
    pub fn q_eval(l: u8, v: u8) -> u8 {
        (((v & l).count_ones() + (v & (v >> 1) & EVEN).count_ones()) & 1) as u8
    }

    pub fn arf(l: u8, g: usize) -> u8 {
        ((0..g).filter(|&k| l >> (2 * k) & 1 == 1 && l >> (2 * k + 1) & 1 == 1).count() & 1) as u8
    }

    /// Basis values of x -> q(Mx).
    pub fn pullback(l: u8, m: Mat2, g: usize) -> u8 {
        (0..2 * g).fold(0, |acc, i| {
            let col = (0..2 * g).fold(0u8, |c, j| c | ((row(m, j) >> i & 1) << j));
            acc | (q_eval(l, col) << i)
        })
    }

    /// Transvections along a chain y1, x1, y1+y2, x2, ..., x_g plus y2;
    /// these generate Sp(2g, Z).
    pub fn humphries_generators(g: usize) -> Vec<Mat2> {
        let x = |i: usize| 1u8 << (2 * i);
        let y = |i: usize| 1u8 << (2 * i + 1);
        let mut vs = vec![y(0), x(0)];
        for i in 1..g {
            vs.push(y(i - 1) | y(i));
            vs.push(x(i));
        }
        if g >= 2 {
            vs.push(y(1));
        }
        vs.into_iter().map(|v| transvection(v, g)).collect()
    }

    /// Group generated by `gens`, by breadth-first closure.
    pub fn closure(gens: &[Mat2], g: usize, exec: Exec) -> HashSet<Mat2> {
        let id = identity(g);
        let mut seen: HashSet<Mat2> = HashSet::from([id]);
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let seen_ref = &seen;
            let found = exec.flat_map_chunks(&frontier, 4096, |chunk| {
                let mut local = Vec::new();
                for &m in chunk {
                    for &s in gens {
                        let p = mul(m, s, g);
                        if !seen_ref.contains(&p) {
                            local.push(p);
                        }
                    }
                }
                local
            });
            frontier.clear();
            for p in found {
                if seen.insert(p) {
                    frontier.push(p);
                }
            }
        }
        seen
    }

    /// All of Sp(2g, Z/2), g <= 3.
    pub fn sp_group(g: usize, exec: Exec) -> Result<HashSet<Mat2>, SympError> {
        if g == 0 || g > 3 {
            return Err(SympError::TooLarge(g));
        }
        Ok(closure(&humphries_generators(g), g, exec))
    }

    /// Sp(2, Z/2) = SL(2, Z/2) listed directly.
    pub fn sp2_direct() -> Vec<Mat2> {
        (0u64..16)
            .filter(|&e| {
                let (a, b, c, d) = (e & 1, e >> 1 & 1, e >> 2 & 1, e >> 3 & 1);
                (a * d + b * c) % 2 == 1
            })
            .map(|e| (e & 3) | ((e >> 2 & 3) << 8))
            .collect()
    }

    /// Vectors v != 0 with q(v) anisotropic.
    pub fn anisotropic_vectors(l: u8, g: usize) -> Vec<u8> {
        (1..(1u16 << (2 * g))).map(|v| v as u8).filter(|&v| q_eval(l, v) == ANISOTROPIC).collect()
    }

    #[derive(Clone, Debug, PartialEq, Eq, Serialize)]
    pub struct StabilizerReport {
        pub g: usize,
        pub arf: u8,
        pub group_order: usize,
        pub stabilizer_order: usize,
        pub anisotropic_count: usize,
        pub anisotropic_order: usize,
        pub generated_by_anisotropic: bool,
    }

    /// Stabilizer of q in Sp(2g, Z/2) against the subgroup generated by the
    /// anisotropic transvections.
    pub fn sp_q_stabilizer_bruteforce(g: usize, q: &QuadraticFormZ2, exec: Exec) -> Result<StabilizerReport, SympError> {
        if q.genus() != g {
            return Err(SympError::DimensionMismatch);
        }
        let group: Vec<Mat2> = if g == 1 { sp2_direct() } else { sp_group(g, exec)?.into_iter().collect() };
        let l = form_bits(q);
        let stab: HashSet<Mat2> = exec.map(&group, |&m| (pullback(l, m, g) == l).then_some(m)).into_iter().flatten().collect();
        let aniso = anisotropic_vectors(l, g);
        let gens: Vec<Mat2> = aniso.iter().map(|&v| transvection(v, g)).collect();
        let sub = closure(&gens, g, exec);
        Ok(StabilizerReport {
            g,
            arf: arf(l, g),
            group_order: group.len(),
            stabilizer_order: stab.len(),
            anisotropic_count: aniso.len(),
            anisotropic_order: sub.len(),
            generated_by_anisotropic: sub.len() == stab.len() && sub.iter().all(|m| stab.contains(m)),
        })
    }

    #[derive(Clone, Debug, PartialEq, Eq, Serialize)]
    pub struct OrbitReport {
        pub g: usize,
        pub even: usize,
        pub odd: usize,
        /// (Arf, size) per orbit
        pub orbits: Vec<(u8, usize)>,
        pub two_orbits_by_arf: bool,
    }

    /// Orbits of all 2^{2g} forms under Sp(2g, Z/2), g <= 4.
    pub fn quadratic_form_orbits(g: usize) -> Result<OrbitReport, SympError> {
        if g == 0 || g > 4 {
            return Err(SympError::TooLarge(g));
        }
        let n = 1usize << (2 * g);
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let nx = uf[y];
                uf[y] = r;
                y = nx;
            }
            r
        }
        let gens = humphries_generators(g);
        for l in 0..n {
            for &m in &gens {
                let k = pullback(l as u8, m, g) as usize;
                let (a, b) = (find(&mut uf, l), find(&mut uf, k));
                uf[a] = b;
            }
        }
        let mut orbits: HashMap<usize, (u8, usize, bool)> = HashMap::new();
        for l in 0..n {
            let root = find(&mut uf, l);
            let a = arf(l as u8, g);
            let e = orbits.entry(root).or_insert((a, 0, true));
            e.1 += 1;
            e.2 &= e.0 == a;
        }
        let pure = orbits.values().all(|o| o.2);
        let mut list: Vec<(u8, usize)> = orbits.values().map(|o| (o.0, o.1)).collect();
        list.sort();
        let even = (0..n).filter(|&l| arf(l as u8, g) == 0).count();
        Ok(OrbitReport {
            g,
            even,
            odd: n - even,
            two_orbits_by_arf: pure && list.len() == 2 && list[0].0 != list[1].0,
            orbits: list,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<i64> {
        (0..n).map(|j| i64::from(i == j)).collect()
    }

    #[test]
    fn transvection_g1() {
        let t = transvection(&[1, 0]).unwrap();
        // y -> y + <y,x> x = y - x
        assert_eq!(t.matrix().to_rows(), vec![vec![1, -1], vec![0, 1]]);
        assert_eq!(t.apply(&[1, 0]), vec![1, 0]);
        assert!(SpMatrix::new(t.matrix().clone()).is_ok());
        assert_eq!(transvection(&[2, 0]), Err(SympError::NonPrimitive(vec![2, 0])));
        assert!(t.mul(&t.inverse()).is_identity());
    }

    #[test]
    fn braid_and_chain() {
        let a = MarkedCurve::given(e(2, 0), 0, 3, "x");
        let b = MarkedCurve::given(e(2, 1), 0, 3, "y");
        assert!(verify_braid(&a, &b).unwrap());
        assert!(verify_braid(&b, &a).unwrap());
        let c = MarkedCurve::given(e(4, 0), 0, 3, "x1");
        let d = MarkedCurve::given(e(4, 2), 0, 3, "x2");
        assert_eq!(verify_braid(&c, &d), Err(SympError::BadPairing(0)));
        let c1 = MarkedCurve::given(vec![1, 0, 0, 0], 0, 3, "c1");
        let c2 = MarkedCurve::given(vec![0, 1, 0, 0], 0, 3, "c2");
        let c3 = MarkedCurve::given(vec![-1, 0, 1, 0], 0, 3, "c3");
        assert!(verify_chain(&[&c1, &c2], &[c3.clone()]).unwrap());
        assert!(verify_chain(&[&c1, &c2, &c3], &[c1.clone()]).unwrap());
        assert!(matches!(verify_chain(&[&c1, &c3], &[]), Err(SympError::NotAChain(1, 2, 0))));
    }

    #[test]
    fn square_transvection_g3() {
        let v1 = vec![1, 0, 0, 0, 0, 0];
        let v2 = vec![0, 1, 0, 0, 0, 0];
        let v3 = vec![-1, 0, 1, 0, 0, 0];
        let w = vec![0, 0, 1, 0, 0, 0];
        let q = QuadraticFormZ2::new(vec![1, 1, 0, 0, 0, 0]);
        assert!(square_transvection_identity(&w, [&v1, &v2, &v3], Some(&q)).unwrap());
        assert_eq!(q.eval(&w), 0);
        let bad = vec![0, 0, 0, 0, 1, 0];
        assert!(matches!(square_transvection_identity(&bad, [&v1, &v2, &v3], None), Err(SympError::ConditionsViolated(_))));
    }

    #[test]
    fn sp_orders() {
        assert_eq!(gf2::sp2_direct().len(), 6);
        assert_eq!(gf2::sp_group(1, crate::Exec::Sequential).unwrap().len(), 6);
        assert_eq!(gf2::sp_group(2, crate::Exec::Parallel).unwrap().len(), 720);
        assert_eq!(gf2::sp_group(4, crate::Exec::Parallel), Err(SympError::TooLarge(4)));
    }

    #[test]
    fn orbits_small() {
        let o1 = gf2::quadratic_form_orbits(1).unwrap();
        assert_eq!((o1.even, o1.odd), (3, 1));
        assert!(o1.two_orbits_by_arf);
        let o2 = gf2::quadratic_form_orbits(2).unwrap();
        assert_eq!((o2.even, o2.odd), (10, 6));
        assert!(o2.two_orbits_by_arf);
    }

    #[test]
    fn gf2_matches_integer() {
        let v = vec![1, 1, 0, 1];
        let m = transvection_power(&v, 1).reduce_mod(2);
        let t = gf2::transvection(gf2::bits(&v), 2);
        for x in 0u8..16 {
            let xv: Vec<i64> = (0..4).map(|i| (x >> i & 1) as i64).collect();
            let y = m.mul_vec(&xv);
            assert_eq!(gf2::bits(&y), gf2::apply(t, x, 2));
        }
    }
}
