//! Seeded generators for test and benchmark inputs.

use rand::Rng;

use crate::lattice::{pt, primitive, triangle, rectangle, LatticePoint, LatticePolygon, UnimodularMap};

/// Random unimodular map built from a few small shears, a sign flip and a
/// translation.
pub fn random_unimodular<R: Rng>(rng: &mut R) -> UnimodularMap {
    let mut m = UnimodularMap::identity();
    for _ in 0..rng.random_range(1..4) {
        let k = rng.random_range(-2..=2);
        let step = if rng.random_bool(0.5) {
            UnimodularMap::new([[1, k], [0, 1]], [0, 0]).unwrap()
        } else {
            UnimodularMap::new([[1, 0], [k, 1]], [0, 0]).unwrap()
        };
        m = step.compose(&m);
    }
    if rng.random_bool(0.5) {
        m = UnimodularMap::new([[0, -1], [1, 0]], [0, 0]).unwrap().compose(&m);
    }
    UnimodularMap::translation(rng.random_range(-3..=3), rng.random_range(-3..=3)).compose(&m)
}

/// Cuts vertex `i` by `k` lattice steps along both incident edges. On a
/// smooth polygon the result is smooth again.
pub fn cut_corner(p: &LatticePolygon, i: usize, k: i64) -> Option<LatticePolygon> {
    let n = p.len();
    let prev = (i + n - 1) % n;
    if k <= 0 || k >= p.edge_length(i) || k >= p.edge_length(prev) {
        return None;
    }
    let v = p.vertices()[i];
    let u = primitive(p.next_vertex(i).sub(v));
    let w = primitive(p.prev_vertex(i).sub(v));
    let mut pts: Vec<LatticePoint> = p.vertices().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &q)| q).collect();
    pts.push(v.add(u.scale(k)));
    pts.push(v.add(w.scale(k)));
    LatticePolygon::from_points(&pts).ok()
}

/// Random smooth lattice polygon: a dilated triangle, rectangle or
/// trapezoid with a few corners cut, moved by a random unimodular map.
pub fn random_smooth_polygon<R: Rng>(rng: &mut R) -> LatticePolygon {
    loop {
        let base = match rng.random_range(0..3) {
            0 => triangle(rng.random_range(4..=9)),
            1 => rectangle(rng.random_range(3..=7), rng.random_range(3..=7)),
            _ => {
                let (a, b, k) = (rng.random_range(1..=4), rng.random_range(2..=5), rng.random_range(1..=2));
                LatticePolygon::from_coords(&[(0, 0), (a + k * b, 0), (a, b), (0, b)]).unwrap()
            }
        };
        let mut p = base;
        for _ in 0..rng.random_range(0..4) {
            let i = rng.random_range(0..p.len());
            let k = rng.random_range(1..=2);
            if let Some(q) = cut_corner(&p, i, k) {
                p = q;
            }
        }
        if !p.is_smooth() {
            continue;
        }
        return p.transform(&random_unimodular(rng));
    }
}

/// Random convex lattice polygon with vertices in `[-half, half]^2`.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, half: i64) -> LatticePolygon {
    loop {
        let k = rng.random_range(3..9);
        let pts: Vec<LatticePoint> =
            (0..k).map(|_| pt(rng.random_range(-half..=half), rng.random_range(-half..=half))).collect();
        if let Ok(p) = crate::lattice::convex_hull(&pts) {
            return p;
        }
    }
}

/// Standard chain of length `len` in genus `g`: y1, x1, y1 - y2, x2, ...,
/// x_g, y_g. Needs `len <= 2g + 1`.
pub fn standard_chain(g: usize, len: usize) -> Vec<Vec<i64>> {
    assert!(len <= 2 * g + 1, "chain too long for genus {g}");
    let n = 2 * g;
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let v = if k == 0 {
            unit(1)
        } else if k % 2 == 1 {
            unit(2 * (k / 2))
        } else if k == 2 * g {
            unit(2 * g - 1)
        } else {
            let h = k / 2;
            let mut v = unit(2 * h - 1);
            v[2 * h + 1] = -1;
            v
        };
        out.push(v);
    }
    out
}

/// D_n pattern (a, a', c_1, ..., c_{n-2}) in genus `g`: a = y1, the c_i run
/// along the standard chain and a' = y1 + x_g with the last handle unused.
pub fn synthetic_dn(g: usize, n: usize) -> Vec<Vec<i64>> {
    assert!(n >= 3 && n < 2 * g, "D_{n} does not fit in genus {g}");
    let chain = standard_chain(g, n - 1);
    let mut ap = chain[0].clone();
    ap[2 * g - 2] += 1;
    let mut out = vec![chain[0].clone(), ap];
    out.extend(chain[1..].iter().cloned());
    out
}

/// Random element of Sp(2g, Z) as a product of transvections along short
/// random vectors.
pub fn random_symplectic<R: Rng>(rng: &mut R, g: usize, steps: usize) -> crate::symp::SpMatrix {
    let mut m = crate::symp::SpMatrix::identity(g);
    for _ in 0..steps {
        let v: Vec<i64> = (0..2 * g).map(|_| rng.random_range(-1..=1)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let k = if rng.random_bool(0.5) { 1 } else { -1 };
        m = m.mul(&crate::symp::transvection_power(&v, k));
    }
    m
}
