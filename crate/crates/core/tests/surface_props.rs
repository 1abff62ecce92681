use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vanishing::lattice::{rectangle, triangle, LatticePolygon};
use vanishing::network::{
    build_network, find_kappa, geometric_intersection, graph_stats, intersection_graph, radial_segments_by_enumeration,
    subnetwork_nprime, Clause, CurveId, Network,
};
use vanishing::samples::random_smooth_polygon;
use vanishing::surface::{curve_class, homology_basis, inflate, is_filling, planar_filling_oracle};

fn network_of(p: &LatticePolygon) -> Option<Network> {
    build_network(p, find_kappa(p)?).ok()
}

/// Checks everything about the intersection form of one filling network.
/// Returns false when the network is not filling and nothing was checked.
fn check_form(net: &Network) -> bool {
    if !is_filling(net).unwrap_or(false) {
        return false;
    }
    let s = inflate(net).unwrap();
    assert_eq!(s.genus(), Some(net.polygon.genus()));
    let form = homology_basis(&s).unwrap();
    let m = &form.matrix;
    assert!(m.is_antisymmetric());
    assert_eq!(m.det().abs(), BigInt::from(1));
    let ids = net.curve_ids();
    for a in ids.iter().filter(|c| c.is_a()) {
        let CurveId::A(v) = a else { unreachable!() };
        for b in ids.iter().filter(|c| !c.is_a()) {
            let CurveId::B(seg) = b else { unreachable!() };
            let i = s.curve_intersection(a, b).unwrap();
            if seg.has_endpoint(*v) {
                assert_eq!(i.abs(), 1, "{a} {b}");
            } else {
                assert_eq!(i, 0, "{a} {b}");
            }
        }
    }
    // algebraic pairings of classes agree with the ribbon count
    let classes: Vec<Vec<i64>> = ids.iter().map(|c| curve_class(&s, &form, c).unwrap()).collect();
    for i in 0..ids.len() {
        for j in 0..ids.len() {
            let alg = vanishing::linalg::symp_pair(&classes[i], &classes[j]);
            assert_eq!(alg, s.curve_intersection(&ids[i], &ids[j]).unwrap());
            let geo = geometric_intersection(&ids[i], &ids[j]).unwrap() as i64;
            assert!(alg.abs() <= geo);
            assert_eq!(alg.rem_euclid(2), geo.rem_euclid(2));
        }
    }
    true
}

#[test]
fn intersection_form_unimodular_on_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    let mut corpus = vec![triangle(4), triangle(5), triangle(6), triangle(7), rectangle(4, 4), rectangle(4, 6)];
    corpus.extend((0..60).map(|_| random_smooth_polygon(&mut rng)));
    for p in &corpus {
        if let Some(net) = network_of(p) {
            if check_form(&net) {
                checked += 1;
            }
        }
    }
    assert!(checked >= 25, "only {checked} filling networks");
}

#[test]
fn side_six_network_shape() {
    let net = network_of(&triangle(6)).unwrap();
    assert_eq!(net.len(), 28);
    assert_eq!(net.clause_members(Clause::AllA).len(), 10);
    assert_eq!(net.clause_members(Clause::Sigma).len(), 1);
    assert_eq!(net.clause_members(Clause::Tau).len(), 1);
    let st = graph_stats(&intersection_graph(&net));
    assert!(st.connected);
    assert_eq!(st.first_betti, 1);
    let np = subnetwork_nprime(&net).unwrap();
    assert!(graph_stats(&intersection_graph(&np)).is_tree);
    let s = inflate(&net).unwrap();
    assert_eq!(s.euler_characteristic(), -18);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn network_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_smooth_polygon(&mut rng);
        let Some(net) = network_of(&p) else { return Ok(()) };
        // pairwise intersections at most one, A-curves pairwise disjoint
        let ids = net.curve_ids();
        for (i, a) in ids.iter().enumerate() {
            for b in &ids[i + 1..] {
                let k = geometric_intersection(a, b).unwrap();
                prop_assert!(k <= 1);
                if a.is_a() && b.is_a() {
                    prop_assert_eq!(k, 0);
                }
            }
        }
        let radial: BTreeSet<_> = net
            .clause_members(Clause::Radial)
            .into_iter()
            .filter_map(|c| match c { CurveId::B(s) => Some(s), _ => None })
            .collect();
        let sigma_tau: BTreeSet<_> = net
            .clause_members(Clause::Sigma)
            .into_iter()
            .chain(net.clause_members(Clause::Tau))
            .filter_map(|c| match c { CurveId::B(s) => Some(s), _ => None })
            .collect();
        let reference: BTreeSet<_> = radial_segments_by_enumeration(&net).difference(&sigma_tau).copied().collect();
        prop_assert_eq!(radial, reference);
        prop_assert_eq!(is_filling(&net).unwrap_or(false), planar_filling_oracle(&net));
        let json = serde_json::to_string(&net).unwrap();
        let back: Network = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, net.clone());
        if is_filling(&net).unwrap_or(false) {
            prop_assert!(check_form(&net));
        }
    }
}
