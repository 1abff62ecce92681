use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use vanishing::lattice::{rectangle, triangle, Adjoint, LatticePoint, LatticePolygon};
use vanishing::network::{dn_configuration, Network};
use vanishing::suite::{orbit_suite, relation_suite};
use vanishing::verify::{b_segment, check_networkgenset, genus_gates, select_kappa, Analysis};
use vanishing::Exec;

mod render;

const AFTER_HELP: &str = "\
Input polygons are JSON objects {\"vertices\": [[x, y], ...]} with integer
coordinates. Every listed point must lie on the boundary of its hull.

Figures: the polygon is outlined in black, the adjoint polygon shaded grey.
A-curves are circles of radius 1/4 at the interior points. Each B-curve is
drawn twice, front copy solid and back copy dashed. Colors by clause: all A
navy, sigma red, tau orange, radial green. The curves of the D_n
configuration are underlaid in light blue; the segment b is dotted purple.

Exit codes: 0 success, 1 verification failure, 2 invalid input.";

#[derive(Parser, Debug)]
#[command(name = "vanishing", version, about = "Networks of vanishing cycles for curves on toric surfaces", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// polygon JSON file
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// output file (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// seed for the randomized relation checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice summary: genus, adjoint, root, hyperellipticity.
    Analyze,
    /// Network JSON at the selected adjoint corner.
    Network,
    /// Full verification report.
    Verify,
    /// SVG figure of the network.
    Render,
    /// Braid, chain, D_n and wedge relation checks.
    Relations,
    /// Quadratic form orbits and stabilizers over Z/2.
    Orbits,
}

/// Invalid input, reported with exit code 2.
struct Invalid(String);

type Outcome = Result<(String, bool), Invalid>;

fn read_polygon(path: Option<&Path>) -> Result<LatticePolygon, Invalid> {
    let path = path.ok_or_else(|| Invalid("--input is required for this command".into()))?;
    let text = fs::read_to_string(path).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
    let raw: Value = serde_json::from_str(&text).map_err(|e| Invalid(format!("malformed JSON: {e}")))?;
    let pts: Vec<LatticePoint> = raw
        .get("vertices")
        .cloned()
        .ok_or_else(|| Invalid("missing \"vertices\"".into()))
        .and_then(|v| serde_json::from_value(v).map_err(|e| Invalid(format!("bad vertex list: {e}"))))?;
    let poly = LatticePolygon::from_points(&pts).map_err(|e| Invalid(e.to_string()))?;
    if let Some(p) = pts.iter().find(|&&p| !poly.on_boundary(p)) {
        return Err(Invalid(format!("non-convex input: {p} lies inside the hull")));
    }
    Ok(poly)
}

fn emit<T: Serialize>(value: &T, format: Format, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Text => text(),
    }
}

#[derive(Serialize)]
struct Summary {
    polygon: LatticePolygon,
    normal_form: LatticePolygon,
    genus: usize,
    boundary_points: i64,
    twice_area: i64,
    smooth: bool,
    adjoint: Adjoint,
    r: Option<i64>,
    hyperelliptic: bool,
    lattice_bound: Option<i64>,
}

fn analyze(p: &LatticePolygon, format: Format) -> Outcome {
    let adjoint = p.adjoint();
    let r = adjoint.polygon().map(|a| a.divisibility());
    let s = Summary {
        polygon: p.clone(),
        normal_form: p.normal_form().0,
        genus: p.genus(),
        boundary_points: p.boundary_count(),
        twice_area: p.twice_area(),
        smooth: p.is_smooth(),
        hyperelliptic: matches!(adjoint, Adjoint::Segment { .. }),
        adjoint,
        r,
        lattice_bound: r.and_then(|r| genus_gates(p.genus(), r).lattice_bound),
    };
    let out = emit(&s, format, || {
        format!(
            "polygon: {}\nnormal form: {}\ngenus: {}\nboundary points: {}\ntwice area: {}\nsmooth: {}\nadjoint: {}\nr: {}\nhyperelliptic: {}\n",
            s.polygon,
            s.normal_form,
            s.genus,
            s.boundary_points,
            s.twice_area,
            s.smooth,
            s.adjoint.tag(),
            s.r.map_or("-".into(), |r| r.to_string()),
            s.hyperelliptic
        )
    });
    Ok((out, true))
}

fn analysis(p: &LatticePolygon) -> Result<Analysis, Invalid> {
    let adj = p.adjoint();
    if adj.polygon().is_none() {
        return Err(Invalid(format!("degenerate adjoint ({}): no network", adj.tag())));
    }
    select_kappa(p).0.ok_or_else(|| Invalid("no network could be built at any adjoint corner".into()))
}

fn network(p: &LatticePolygon, format: Format) -> Outcome {
    let a = analysis(p)?;
    let net: &Network = &a.net;
    let out = emit(net, format, || {
        let mut s = format!("kappa-standard polygon: {}\n{} curves\n", net.polygon, net.len());
        for (c, cl) in net.curves() {
            s += &format!("{c} clause {}\n", cl.number());
        }
        s
    });
    Ok((out, true))
}

fn verify(p: &LatticePolygon, format: Format) -> Outcome {
    let rep = check_networkgenset(p);
    let passed = rep.passed();
    let out = emit(&rep, format, || {
        let mut s = format!("polygon: {}\ng = {}, r = {:?}\n", rep.polygon, rep.g, rep.r);
        for (k, h) in &rep.hypotheses {
            s += &format!("{k}: {}\n", if h.pass { "pass" } else { "fail" });
            for e in &h.evidence {
                s += &format!("  {e}\n");
            }
        }
        for w in &rep.warnings {
            s += &format!("warning: {w}\n");
        }
        s += &format!("classification: {}\n", rep.classification.as_deref().unwrap_or("none"));
        if let Some(q) = &rep.open_question {
            s += &format!("open: {q}\n");
        }
        s
    });
    Ok((out, passed))
}

fn render_cmd(p: &LatticePolygon) -> Outcome {
    let a = analysis(p)?;
    let mut highlight = BTreeSet::new();
    let mut extra = Vec::new();
    if let Ok(cfg) = dn_configuration(&a.net) {
        highlight.extend(cfg.curves());
        highlight.insert(cfg.d);
        extra.push(b_segment());
    }
    Ok((render::render_svg(&a.net, &highlight, &extra), true))
}

fn relations(input: Option<&Path>, seed: u64, format: Format) -> Outcome {
    let polys = match input {
        Some(_) => vec![read_polygon(input)?],
        None => vec![triangle(6), rectangle(4, 4)],
    };
    let rep = relation_suite(seed, &polys);
    let out = emit(&rep, format, || {
        rep.checks.iter().map(|c| format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail)).collect()
    });
    Ok((out, rep.passed()))
}

fn orbits(format: Format) -> Outcome {
    let rep = orbit_suite(Exec::default());
    let out = emit(&rep, format, || {
        let mut s = String::new();
        for o in &rep.orbits {
            s += &format!("g={}: {} even, {} odd, orbits {:?}\n", o.g, o.even, o.odd, o.orbits);
        }
        for (g, n) in &rep.sp_orders {
            s += &format!("|Sp({}, 2)| = {n}\n", 2 * g);
        }
        for st in &rep.stabilizers {
            s += &format!(
                "g={} arf={}: stabilizer {}, anisotropic subgroup {}, generated {}\n",
                st.g, st.arf, st.stabilizer_order, st.anisotropic_order, st.generated_by_anisotropic
            );
        }
        s
    });
    Ok((out, rep.passed()))
}

fn run(cli: &Cli) -> Outcome {
    let input = cli.input.as_deref();
    match cli.command {
        Command::Analyze => analyze(&read_polygon(input)?, cli.format),
        Command::Network => network(&read_polygon(input)?, cli.format),
        Command::Verify => verify(&read_polygon(input)?, cli.format),
        Command::Render => render_cmd(&read_polygon(input)?),
        Command::Relations => relations(input, cli.seed, cli.format),
        Command::Orbits => orbits(cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, ok) = match run(&cli) {
        Ok(r) => r,
        Err(Invalid(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &out) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => print!("{out}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
