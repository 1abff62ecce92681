//! Relation and orbit batteries, run as a unit by the command-line tool.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::lattice::LatticePolygon;
use crate::network::dn_configuration;
use crate::samples::{random_symplectic, standard_chain, synthetic_dn};
use crate::spin::{MarkedCurve, QuadraticFormZ2};
use crate::symp::{gf2, square_transvection_identity, verify_braid, verify_chain, verify_dn};
use crate::verify::select_kappa;
use crate::wedge::{contraction, generators_k, lemma_next_closure, Wedge3};
use crate::Exec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }
}

fn marked(vs: &[Vec<i64>], r: i64) -> Vec<MarkedCurve> {
    vs.iter().enumerate().map(|(i, v)| MarkedCurve::given(v.clone(), 0, r, &format!("c{}", i + 1))).collect()
}

const RELATION_GENUS: usize = 5;
const CONJUGATES: usize = 4;

/// Braid, chain and D_n identities on standard and randomly conjugated
/// configurations, the network D_n configurations of `polygons`, the square
/// transvection identity, and the wedge checks.
pub fn relation_suite(seed: u64, polygons: &[LatticePolygon]) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SuiteReport { checks: Vec::new() };
    let g = RELATION_GENUS;
    let conj: Vec<_> = (0..=CONJUGATES)
        .map(|i| if i == 0 { crate::symp::SpMatrix::identity(g) } else { random_symplectic(&mut rng, g, 12) })
        .collect();
    let moved = |m: &crate::symp::SpMatrix, vs: &[Vec<i64>]| -> Vec<Vec<i64>> { vs.iter().map(|v| m.apply(v)).collect() };
    let probes = marked(&standard_chain(g, 2 * g + 1), 1);

    let mut ok = true;
    for m in &conj {
        let c = marked(&moved(m, &standard_chain(g, 2)), 1);
        ok &= verify_braid(&c[0], &c[1]) == Ok(true) && verify_braid(&c[1], &c[0]) == Ok(true);
    }
    rep.push("braid", ok, format!("{} conjugates in genus {g}", conj.len()));

    for len in 2..=8 {
        let ok = conj.iter().all(|m| {
            let c = marked(&moved(m, &standard_chain(g, len)), 1);
            let refs: Vec<&MarkedCurve> = c.iter().collect();
            verify_chain(&refs, &probes) == Ok(true)
        });
        let what = if len % 2 == 0 { "separating boundary, power 2n+2" } else { "boundary square, power n+1" };
        rep.push(format!("chain n={len}"), ok, what);
    }

    for n in 3..=9 {
        let ok = conj.iter().all(|m| {
            let c = marked(&moved(m, &synthetic_dn(g, n)), 1);
            let refs: Vec<&MarkedCurve> = c.iter().collect();
            verify_dn(&refs, &probes) == Ok(true)
        });
        rep.push(format!("D_{n} synthetic"), ok, format!("{} conjugates", conj.len()));
    }

    for p in polygons {
        let (q, _) = p.normal_form();
        let (analysis, _) = select_kappa(&q);
        let Some(a) = analysis else {
            rep.push(format!("D_n network {q}"), false, "no network");
            continue;
        };
        let (Ok(cfg), Some(phi)) = (dn_configuration(&a.net), a.spin.as_ref()) else {
            rep.push(format!("D_n network {q}"), false, "no configuration or spin structure");
            continue;
        };
        let ids = cfg.curves();
        let curves: Vec<MarkedCurve> = ids[..ids.len() - 1].iter().filter_map(|c| phi.curve(c).cloned()).collect();
        let refs: Vec<&MarkedCurve> = curves.iter().collect();
        let tests = phi.marked_curves();
        let n = refs.len();
        let ok = n == ids.len() - 1 && (3..=n).all(|l| verify_dn(&refs[..l], &tests) == Ok(true));
        rep.push(format!("D_n network {q}"), ok, format!("D_3..D_{n}, g = {}, r = {}", q.genus(), cfg.r));
    }

    let v1 = vec![1, 0, 0, 0, 0, 0];
    let v2 = vec![0, 1, 0, 0, 0, 0];
    let v3 = vec![-1, 0, 1, 0, 0, 0];
    let w = vec![0, 0, 1, 0, 0, 0];
    let q = QuadraticFormZ2::new(vec![1, 1, 0, 0, 0, 0]);
    let mut ok = square_transvection_identity(&w, [&v1, &v2, &v3], Some(&q)) == Ok(true);
    for _ in 0..CONJUGATES {
        let m = random_symplectic(&mut rng, 3, 12);
        let [a, b, c, d] = [&v1, &v2, &v3, &w].map(|v| m.apply(v));
        ok &= square_transvection_identity(&d, [&a, &b, &c], None) == Ok(true);
    }
    rep.push("square transvection g=3", ok, "standard and conjugated");

    let n = 2 * g;
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    let mut ok = true;
    for i in 0..g {
        for z in (0..n).filter(|z| z / 2 != i) {
            ok &= contraction(&Wedge3::from_vectors(&unit(z), &unit(2 * i), &unit(2 * i + 1)), 0) == unit(z);
        }
    }
    for (i, j, k) in Wedge3::triples(n) {
        if i / 2 != j / 2 && j / 2 != k / 2 && i / 2 != k / 2 {
            ok &= contraction(&Wedge3::elementary(n, i, j, k), 0).iter().all(|&c| c == 0);
        }
    }
    rep.push("contraction identities", ok, format!("genus {g}"));

    let mut ok = true;
    let mut count = 0;
    for gg in 5..=7usize {
        for r in (2..gg as i64 - 1).filter(|r| (2 * gg as i64 - 2) % r == 0) {
            for w in generators_k(gg, r) {
                ok &= contraction(&w, r).iter().all(|&c| c == 0);
                count += 1;
            }
        }
    }
    rep.push("generators in ker C_r", ok, format!("{count} generators, g = 5..7"));

    for parity in [0u8, 1] {
        match lemma_next_closure(5, parity, 4096) {
            Ok(r) => rep.push(
                format!("closure g=5 phi(y_g)={parity}"),
                r.full,
                format!("rank {}/{}, unit divisors {}, {} images", r.rank, r.ambient, r.unit_divisors, r.images),
            ),
            Err(e) => rep.push(format!("closure g=5 phi(y_g)={parity}"), false, e.to_string()),
        }
    }
    rep
}

/// Orbit counts of quadratic forms for g = 1..=4 and the anisotropic
/// stabilizer comparison for g = 1..=3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSuite {
    pub orbits: Vec<gf2::OrbitReport>,
    pub sp_orders: Vec<(usize, usize)>,
    pub stabilizers: Vec<gf2::StabilizerReport>,
}

impl OrbitSuite {
    /// Orbit structure correct for every genus and stabilizers generated for
    /// g >= 3. Smaller genera are reported but not required.
    pub fn passed(&self) -> bool {
        self.orbits.iter().all(|o| o.two_orbits_by_arf)
            && self.stabilizers.iter().filter(|s| s.g >= 3).all(|s| s.generated_by_anisotropic)
    }
}

pub fn orbit_suite(exec: Exec) -> OrbitSuite {
    let orbits = (1..=4).filter_map(|g| gf2::quadratic_form_orbits(g).ok()).collect();
    let sp_orders = (1..=3).filter_map(|g| gf2::sp_group(g, exec).ok().map(|s| (g, s.len()))).collect();
    let mut stabilizers = Vec::new();
    for g in 1..=3 {
        for odd in [false, true] {
            let mut values = vec![0u8; 2 * g];
            if odd {
                values[0] = 1;
                values[1] = 1;
            }
            if let Ok(s) = gf2::sp_q_stabilizer_bruteforce(g, &QuadraticFormZ2::new(values), exec) {
                stabilizers.push(s);
            }
        }
    }
    OrbitSuite { orbits, sp_orders, stabilizers }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::triangle;

    #[test]
    fn relations_side_six() {
        let rep = relation_suite(7, &[triangle(6)]);
        let failed: Vec<_> = rep.checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn synthetic_shapes() {
        let c = standard_chain(3, 7);
        for i in 0..7 {
            for j in i + 1..7 {
                let p = crate::linalg::symp_pair(&c[i], &c[j]).abs();
                assert_eq!(p, i64::from(j == i + 1), "{i} {j}");
            }
        }
        assert_eq!(synthetic_dn(5, 9).len(), 9);
    }
}
