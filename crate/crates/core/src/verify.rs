//! End-to-end pipeline: gates, the four network hypotheses, classification,
//! and the vanishing-cycle decision.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{Adjoint, LatticePoint, LatticePolygon, PrimitiveSegment};
use crate::network::{
    build_network, dn_configuration, geometric_intersection, graph_stats, intersection_graph, subnetwork_nprime, CurveId,
    Network,
};
use crate::spin::{canonical_spin, is_admissible, MarkedCurve, SpinStructure};
use crate::surface::{homology_basis, inflate, is_filling, planar_filling_oracle, relative_filling, IntersectionForm};
use crate::symp::{dn_boundary, verify_dn, verify_dn_powers};
use crate::Exec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("gates or hypotheses not passed: {0}")]
    GatesNotPassed(String),
}

pub const ODD_VERDICT: &str = "Γ = Mod[φ] (full stabilizer); [Mod : Γ] finite";
pub const EVEN_VERDICT: &str = "Γ finite-index in Mod, contains T_φ; [Mod : Γ] finite";
pub const EVEN_OPEN: &str = "equality Γ = Mod[φ] is conjectured but open for even r; the index [Mod[φ] : Γ] is not determined";

/// k(d) for r = 2d.
pub fn k_of(d: i64) -> i64 {
    match d {
        2 => 6,
        4 => 5,
        _ => 2,
    }
}

/// Minimal genus for even r = 2d: k(d) d + 1.
pub fn even_genus_bound(r: i64) -> Option<i64> {
    (r % 2 == 0 && r > 0).then(|| k_of(r / 2) * (r / 2) + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusGates {
    pub g: usize,
    pub r: i64,
    pub r_divides_2g_minus_2: bool,
    pub r_below_g_minus_1: bool,
    pub g_at_least_5: bool,
    pub even_bound: Option<i64>,
    pub even_bound_ok: bool,
    pub lattice_bound: Option<i64>,
    pub lattice_bound_ok: bool,
    pub all: bool,
}

pub fn genus_gates(g: usize, r: i64) -> GenusGates {
    let gi = g as i64;
    let divides = r >= 1 && (2 * gi - 2).rem_euclid(r) == 0;
    let below = r < gi - 1;
    let five = g >= 5;
    let even_bound = even_genus_bound(r);
    let even_ok = even_bound.is_none_or(|b| gi >= b);
    let lattice_bound = (r > 1).then(|| (r + 1) * (r + 2) / 2);
    let lattice_ok = lattice_bound.is_none_or(|b| gi >= b);
    GenusGates {
        g,
        r,
        r_divides_2g_minus_2: divides,
        r_below_g_minus_1: below,
        g_at_least_5: five,
        even_bound,
        even_bound_ok: even_ok,
        lattice_bound,
        lattice_bound_ok: lattice_ok,
        all: divides && below && five && even_ok,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub pass: bool,
    pub evidence: Vec<String>,
}

impl Hypothesis {
    fn new(pass: bool, evidence: Vec<String>) -> Self {
        Hypothesis { pass, evidence }
    }

    fn fail(msg: String) -> Self {
        Hypothesis { pass: false, evidence: vec![msg] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetworkChecks {
    pub curves: usize,
    pub connected: bool,
    pub first_betti: i64,
    pub filling: bool,
    pub planar_oracle: bool,
    pub euler_characteristic: i64,
    pub ribbon_genus: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub polygon: LatticePolygon,
    pub g: usize,
    pub r: Option<i64>,
    pub hyperelliptic: bool,
    pub adjoint: String,
    pub kappa: Option<LatticePoint>,
    pub gates: Option<GenusGates>,
    pub network: Option<NetworkChecks>,
    pub hypotheses: BTreeMap<String, Hypothesis>,
    pub classification: Option<String>,
    pub open_question: Option<String>,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.classification.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Everything computed for one choice of kappa.
pub struct Analysis {
    pub net: Network,
    pub form: Option<IntersectionForm>,
    pub spin: Option<SpinStructure>,
    pub checks: NetworkChecks,
    pub hypotheses: BTreeMap<String, Hypothesis>,
}

impl Analysis {
    pub fn all_pass(&self) -> bool {
        self.checks.connected && self.checks.filling && self.hypotheses.values().all(|h| h.pass)
    }
}

/// The segment b playing the role of Delta_0, in kappa-standard coordinates.
pub fn b_segment() -> PrimitiveSegment {
    PrimitiveSegment::new(crate::lattice::pt(-1, 1), crate::lattice::pt(0, 1)).expect("primitive")
}

/// Runs the hypothesis checks for the network built at `kappa`.
pub fn analyze_kappa(p: &LatticePolygon, kappa: LatticePoint) -> Result<Analysis, String> {
    let net = build_network(p, kappa).map_err(|e| e.to_string())?;
    let stats = graph_stats(&intersection_graph(&net));
    let filling = is_filling(&net).unwrap_or(false);
    let planar = planar_filling_oracle(&net);
    let surface = inflate(&net).ok();
    let (chi, rg) = surface.as_ref().map_or((0, None), |s| (s.euler_characteristic(), s.genus()));
    let checks = NetworkChecks {
        curves: net.len(),
        connected: stats.connected,
        first_betti: stats.first_betti,
        filling,
        planar_oracle: planar,
        euler_characteristic: chi,
        ribbon_genus: rg,
    };
    let mut hyp = BTreeMap::new();
    let form = surface.as_ref().and_then(|s| homology_basis(s).ok());
    let spin = match (&surface, &form) {
        (Some(s), Some(f)) => canonical_spin(&net, s, f).map_err(|e| e.to_string()),
        _ => Err("no closed surface".to_string()),
    };
    let h1 = match &spin {
        Ok(phi) => {
            let all = phi.curves().all(|(_, c)| is_admissible(c));
            Hypothesis::new(
                all,
                vec![
                    format!("{} network curves with phi = 0", net.len()),
                    format!("{} of them form an integral symplectic basis", phi.basis.len()),
                    "coherence holds on every planar face".into(),
                ],
            )
        }
        Err(e) => Hypothesis::fail(e.clone()),
    };
    hyp.insert("H1".into(), h1);

    let config = dn_configuration(&net);
    let h2 = match (&config, &spin) {
        (Ok(cfg), Ok(phi)) => {
            let curves: Vec<MarkedCurve> = cfg.curves().iter().map(|c| phi.curve(c).expect("network curve").clone()).collect();
            let dn: Vec<&MarkedCurve> = curves[..curves.len() - 1].iter().collect();
            let tests = phi.marked_curves();
            let n = dn.len();
            let relations = (3..=n).all(|l| verify_dn(&dn[..l], &tests) == Ok(true));
            let sub = dn_boundary(&dn[..n - 1]);
            let last = &curves[curves.len() - 1].h;
            let closing = sub.ok().and_then(|b| b.delta1).is_some_and(|(u, up)| {
                let neg: Vec<i64> = last.iter().map(|x| -x).collect();
                [u.clone(), up.clone()].iter().any(|w| *w == *last || *w == neg)
            });
            let powers = verify_dn_powers(&dn).map(|v| v.iter().filter(|c| c.witnessed).count()).unwrap_or(0);
            Hypothesis::new(
                relations && closing,
                vec![
                    format!("D_{n} from {}, {} and {} chain curves", cfg.a, cfg.a_prime, cfg.chain.len()),
                    format!("closing curve {} has the class of a Delta_1 boundary: {closing}", cfg.delta1),
                    format!("D_l relations hold in Sp for l = 3..{n}: {relations}"),
                    format!("boundary-power instances witnessed in Sp: {powers}"),
                ],
            )
        }
        (Err(e), _) => Hypothesis::fail(e.to_string()),
        (_, Err(e)) => Hypothesis::fail(e.clone()),
    };
    hyp.insert("H2".into(), h2);

    let b = b_segment();
    let h3 = match &config {
        Ok(cfg) => match geometric_intersection(&cfg.d, &CurveId::B(b)) {
            Ok(i) => Hypothesis::new(i == 1, vec![format!("i({}, B{b}) = {i}", cfg.d)]),
            Err(e) => Hypothesis::fail(e.to_string()),
        },
        Err(e) => Hypothesis::fail(e.to_string()),
    };
    hyp.insert("H3".into(), h3);

    let h4 = match subnetwork_nprime(&net) {
        Ok(np) => {
            let tree = graph_stats(&intersection_graph(&np)).is_tree;
            let rel = relative_filling(&np, b).unwrap_or(false);
            Hypothesis::new(
                tree && rel,
                vec![format!("N' has {} curves", np.len()), format!("arboreal: {tree}"), format!("fills the surface cut along b: {rel}")],
            )
        }
        Err(e) => Hypothesis::fail(e.to_string()),
    };
    hyp.insert("H4".into(), h4);
    Ok(Analysis { net, form, spin: spin.ok(), checks, hypotheses: hyp })
}

/// Picks the first adjoint vertex at which every hypothesis holds, falling
/// back to the first vertex where a network could be built.
pub fn select_kappa(p: &LatticePolygon) -> (Option<Analysis>, Vec<String>) {
    let Some(adj) = p.adjoint().polygon().cloned() else { return (None, vec![]) };
    let mut notes = Vec::new();
    let mut fallback = None;
    for (i, &k) in adj.vertices().iter().enumerate() {
        match analyze_kappa(p, k) {
            Ok(a) if a.all_pass() => {
                if i > 0 {
                    notes.push(format!("kappa = {k} (adjoint vertex {i}); earlier vertices fail a hypothesis"));
                }
                return (Some(a), notes);
            }
            Ok(a) => {
                if fallback.is_none() {
                    fallback = Some(a);
                }
            }
            Err(e) => notes.push(format!("kappa = {k}: {e}")),
        }
    }
    if fallback.is_some() {
        notes.push("no adjoint vertex satisfies every hypothesis; showing the first buildable one".into());
    }
    (fallback, notes)
}

/// Full check of the network hypotheses on the normal form of `p`.
pub fn check_networkgenset(p: &LatticePolygon) -> VerificationReport {
    let (q, _) = p.normal_form();
    let g = q.genus();
    let adj = q.adjoint();
    let mut report = VerificationReport {
        polygon: q.clone(),
        g,
        r: None,
        hyperelliptic: matches!(adj, Adjoint::Segment { .. }),
        adjoint: adj.tag().to_string(),
        kappa: None,
        gates: None,
        network: None,
        hypotheses: BTreeMap::new(),
        classification: None,
        open_question: None,
        warnings: Vec::new(),
    };
    match &adj {
        Adjoint::Empty => {
            report.warnings.push("genus 0: no interior lattice points; out of scope".into());
            return report;
        }
        Adjoint::Point { .. } => {
            report.warnings.push("genus 1 (elliptic): adjoint is a point; out of scope".into());
            return report;
        }
        Adjoint::Segment { .. } => {
            report.warnings.push("hyperelliptic: adjoint is a segment, the generic fiber is hyperelliptic; excluded".into());
            return report;
        }
        Adjoint::Polygon { .. } => {}
    }
    let r = adj.polygon().expect("polygon").divisibility();
    report.r = Some(r);
    let gates = genus_gates(g, r);
    if !gates.g_at_least_5 {
        report.warnings.push(format!("genus {g} <= 4: below the genus hypothesis"));
    }
    if !gates.r_below_g_minus_1 {
        report.warnings.push(format!("r = {r} is not below g - 1 = {}", g as i64 - 1));
    }
    if !gates.even_bound_ok {
        report.warnings.push(format!("even r = {r} needs g >= {}", gates.even_bound.unwrap_or(0)));
    }
    if !gates.lattice_bound_ok {
        report.warnings.push(format!("lattice bound g >= {} violated", gates.lattice_bound.unwrap_or(0)));
    }
    let (analysis, notes) = select_kappa(&q);
    report.warnings.extend(notes);
    if let Some(a) = analysis {
        report.kappa = Some(a.net.embedding.inverse().apply(a.net.kappa));
        if a.checks.ribbon_genus != Some(g) {
            report.warnings.push(format!("ribbon genus {:?} differs from lattice genus {g}", a.checks.ribbon_genus));
        }
        report.hypotheses = a.hypotheses.clone();
        report.network = Some(a.checks.clone());
        if gates.all && a.all_pass() {
            report.classification = Some(classify_r(r).to_string());
            if r % 2 == 0 {
                report.open_question = Some(EVEN_OPEN.into());
            }
        }
    } else {
        report.warnings.push("no network could be built at any adjoint vertex".into());
    }
    report.gates = Some(gates);
    report
}

fn classify_r(r: i64) -> &'static str {
    if r % 2 == 1 {
        ODD_VERDICT
    } else {
        EVEN_VERDICT
    }
}

/// The verdict for a polygon whose report passed.
pub fn classify(p: &LatticePolygon) -> Result<String, VerifyError> {
    let rep = check_networkgenset(p);
    rep.classification.ok_or_else(|| VerifyError::GatesNotPassed(rep.warnings.join("; ")))
}

/// Whether a marked curve is a vanishing cycle, for a polygon whose report
/// passed: exactly the admissible curves.
pub fn is_vanishing_cycle(c: &MarkedCurve, report: &VerificationReport) -> Result<bool, VerifyError> {
    if !report.passed() {
        return Err(VerifyError::GatesNotPassed(report.warnings.join("; ")));
    }
    if report.r != Some(c.r) {
        return Err(VerifyError::GatesNotPassed(format!("curve modulus {} differs from r = {:?}", c.r, report.r)));
    }
    Ok(is_admissible(c))
}

/// Independent reports for many polygons.
pub fn verify_batch(polys: &[LatticePolygon], exec: Exec) -> Vec<VerificationReport> {
    exec.map(polys, check_networkgenset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rectangle, triangle};

    #[test]
    fn gates() {
        assert!(genus_gates(10, 3).all);
        assert_eq!(even_genus_bound(4), Some(13));
        let g = genus_gates(9, 2);
        assert_eq!(g.even_bound, Some(3));
        assert!(g.all);
        assert!(!genus_gates(4, 1).all);
        assert!(!genus_gates(10, 4).r_divides_2g_minus_2);
    }

    #[test]
    fn side_six_report() {
        let rep = check_networkgenset(&triangle(6));
        assert_eq!((rep.g, rep.r), (10, Some(3)));
        assert!(rep.hypotheses.values().all(|h| h.pass), "{rep:#?}");
        assert_eq!(rep.classification.as_deref(), Some(ODD_VERDICT));
    }

    #[test]
    fn square_report() {
        let rep = check_networkgenset(&rectangle(4, 4));
        assert_eq!((rep.g, rep.r), (9, Some(2)));
        assert_eq!(rep.classification.as_deref(), Some(EVEN_VERDICT), "{rep:#?}");
        assert!(rep.open_question.is_some());
    }

    #[test]
    fn refusals() {
        let h = LatticePolygon::from_coords(&[(0, 0), (6, 0), (0, 2)]).unwrap();
        let rep = check_networkgenset(&h);
        assert!(rep.hyperelliptic && !rep.passed());
        let small = check_networkgenset(&triangle(4));
        assert!(!small.passed());
        assert!(small.warnings.iter().any(|w| w.contains("<= 4")));
        assert!(matches!(classify(&triangle(3)), Err(VerifyError::GatesNotPassed(_))));
    }
}
