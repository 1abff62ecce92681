use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vanishing::lattice::{rectangle, triangle, LatticePolygon};
use vanishing::samples::random_smooth_polygon;
use vanishing::spin::MarkedCurve;
use vanishing::symp::word_on_curve;
use vanishing::verify::{
    check_networkgenset, classify, genus_gates, is_vanishing_cycle, select_kappa, verify_batch, VerificationReport,
    EVEN_OPEN, EVEN_VERDICT, ODD_VERDICT,
};
use vanishing::Exec;

fn passed_with_curves(p: &LatticePolygon) -> (VerificationReport, Vec<MarkedCurve>) {
    let rep = check_networkgenset(p);
    assert!(rep.passed(), "{:?}", rep.warnings);
    let (q, _) = p.normal_form();
    let a = select_kappa(&q).0.unwrap();
    (rep, a.spin.unwrap().marked_curves())
}

fn orbit_sample(curves: &[MarkedCurve], rng: &mut ChaCha8Rng) -> MarkedCurve {
    let len = rng.random_range(0..8);
    let word: Vec<(&MarkedCurve, i64)> =
        (0..len).map(|_| (&curves[rng.random_range(0..curves.len())], if rng.random_bool(0.5) { 1 } else { -1 })).collect();
    word_on_curve(&word, &curves[rng.random_range(0..curves.len())])
}

#[test]
fn verdicts() {
    assert_eq!(classify(&triangle(6)).unwrap(), ODD_VERDICT);
    let sq = check_networkgenset(&rectangle(4, 4));
    assert_eq!(sq.classification.as_deref(), Some(EVEN_VERDICT));
    assert_eq!(sq.open_question.as_deref(), Some(EVEN_OPEN));
    assert!(classify(&triangle(4)).is_err());
    let g = genus_gates(10, 3);
    assert!(g.all && g.lattice_bound_ok);
}

#[test]
fn vanishing_cycles_are_admissible_curves() {
    for p in [triangle(6), rectangle(4, 4), triangle(7)] {
        let (rep, curves) = passed_with_curves(&p);
        let r = rep.r.unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(r as u64);
        for c in &curves {
            assert!(is_vanishing_cycle(c, &rep).unwrap());
        }
        for _ in 0..500 {
            let c = orbit_sample(&curves, &mut rng);
            assert!(is_vanishing_cycle(&c, &rep).unwrap());
            let shifted = MarkedCurve::given(c.h.clone(), rng.random_range(1..r), r, "shifted");
            assert!(!is_vanishing_cycle(&shifted, &rep).unwrap());
            let doubled = MarkedCurve::given(c.h.iter().map(|x| 2 * x).collect(), 0, r, "doubled");
            assert!(!is_vanishing_cycle(&doubled, &rep).unwrap());
        }
        let wrong = MarkedCurve::given(curves[0].h.clone(), 0, r + 1, "modulus");
        assert!(is_vanishing_cycle(&wrong, &rep).is_err());
    }
}

#[test]
fn refusals() {
    let hyper = LatticePolygon::from_coords(&[(0, 0), (6, 0), (0, 2)]).unwrap();
    let rep = check_networkgenset(&hyper);
    assert!(rep.hyperelliptic && !rep.passed());
    let c = MarkedCurve::given(vec![1, 0], 0, 1, "x");
    assert!(is_vanishing_cycle(&c, &rep).is_err());
}

#[test]
fn batch_modes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let polys: Vec<LatticePolygon> = (0..24).map(|_| random_smooth_polygon(&mut rng)).collect();
    let par = verify_batch(&polys, Exec::Parallel);
    let seq = verify_batch(&polys, Exec::Sequential);
    assert_eq!(par, seq);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// A classification is issued only when every gate and hypothesis holds,
    /// and the report does not depend on the chosen coordinates.
    #[test]
    fn report_consistency(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_smooth_polygon(&mut rng);
        let rep = check_networkgenset(&p);
        if rep.passed() {
            prop_assert!(rep.gates.as_ref().unwrap().all);
            prop_assert!(rep.hypotheses.values().all(|h| h.pass));
            let r = rep.r.unwrap();
            prop_assert_eq!(rep.classification.as_deref(), Some(if r % 2 == 1 { ODD_VERDICT } else { EVEN_VERDICT }));
            prop_assert_eq!(rep.open_question.is_some(), r % 2 == 0);
        }
        let moved = p.transform(&vanishing::samples::random_unimodular(&mut rng));
        prop_assert_eq!(check_networkgenset(&moved), rep);
    }
}
