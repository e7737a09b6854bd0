use std::fmt::Write as _;
use std::io::Read;

use defkit::bidouble::{self, DiagonalAction};
use defkit::defo;
use defkit::parse::parse_rational;
use defkit::resolve;
use defkit::singular::{self, AdeType};
use defkit::surf::{self, CatalogQuery};
use defkit::{parse_polynomial, Ideal, Polynomial, Rational, Ring, RingRef};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Command, DeformCmd, PolyArgs, QuotientCmd, ResolveCmd, SingularityCmd, SurfaceCmd};
use crate::config::RunConfig;
use crate::{Done, ErrorObject};

type Res<T> = Result<T, ErrorObject>;

pub(crate) fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Singularity(SingularityCmd::Analyze(_)) => "singularity analyze",
        Command::Singularity(SingularityCmd::Weyl { .. }) => "singularity weyl",
        Command::Deform(DeformCmd::Semiuniversal(_)) => "deform semiuniversal",
        Command::Deform(DeformCmd::Scan { .. }) => "deform scan",
        Command::Resolve(ResolveCmd::An { .. }) => "resolve an",
        Command::Resolve(ResolveCmd::Node) => "resolve node",
        Command::Resolve(ResolveCmd::Flop) => "resolve flop",
        Command::Quotient(QuotientCmd::Bidouble { .. }) => "quotient bidouble",
        Command::Surface(SurfaceCmd::Invariants { .. }) => "surface invariants",
        Command::Surface(SurfaceCmd::NodalBounds { .. }) => "surface nodal-bounds",
        Command::Surface(SurfaceCmd::Segre { .. }) => "surface segre",
        Command::Surface(SurfaceCmd::Catalog { .. }) => "surface catalog",
        Command::Surface(SurfaceCmd::DoubleCover { .. }) => "surface double-cover",
        Command::Surface(SurfaceCmd::Isogenous { .. }) => "surface isogenous",
    }
}

pub(crate) fn dispatch(cmd: &Command, cfg: &RunConfig, stdin: &mut dyn Read) -> Res<Done> {
    match cmd {
        Command::Singularity(SingularityCmd::Analyze(p)) => analyze(p, stdin),
        Command::Singularity(SingularityCmd::Weyl { types }) => weyl(types),
        Command::Deform(DeformCmd::Semiuniversal(p)) => semiuniversal(p, stdin),
        Command::Deform(DeformCmd::Scan { eqs, at }) => scan(eqs, at, stdin),
        Command::Resolve(ResolveCmd::An { n, samples }) => resolve_an(*n, *samples, cfg),
        Command::Resolve(ResolveCmd::Node) => resolve_node(),
        Command::Resolve(ResolveCmd::Flop) => resolve_flop(),
        Command::Quotient(QuotientCmd::Bidouble { vars, action, polys, names, fixed }) => {
            quotient(vars, action, polys, names.as_deref(), fixed.as_deref(), stdin)
        }
        Command::Surface(SurfaceCmd::Invariants { chi, k2, h0_theta, m_max }) => invariants(*chi, *k2, *h0_theta, *m_max),
        Command::Surface(SurfaceCmd::NodalBounds { d, search }) => nodal_bounds(*d, *search),
        Command::Surface(SurfaceCmd::Segre { d, no_count }) => segre(*d, cfg.seed, !no_count),
        Command::Surface(SurfaceCmd::Catalog { family, k, p, r }) => catalog(*family, *k, *p, *r),
        Command::Surface(SurfaceCmd::DoubleCover { d1, d2 }) => double_cover(*d1, *d2),
        Command::Surface(SurfaceCmd::Isogenous { g1, g2, order }) => isogenous(*g1, *g2, *order),
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn domain<E: std::fmt::Display>(module: &'static str) -> impl Fn(E) -> ErrorObject {
    move |e| ErrorObject::domain(module, e)
}

fn ring(vars: &[String]) -> Res<RingRef> {
    Ring::new(vars.iter().map(|v| v.trim().to_string())).map_err(|e| ErrorObject::usage(format!("--vars: {e}")))
}

/// Parses each `--poly`; at most one may be `-`, which reads stdin.
fn polys(ring: &RingRef, srcs: &[String], stdin: &mut dyn Read) -> Res<Vec<Polynomial>> {
    if srcs.iter().filter(|s| s.as_str() == "-").count() > 1 {
        return Err(ErrorObject::usage("only one --poly may be read from stdin"));
    }
    srcs.iter()
        .map(|src| {
            let text = if src == "-" {
                let mut buf = String::new();
                stdin.read_to_string(&mut buf).map_err(|e| ErrorObject::usage(format!("reading stdin: {e}")))?;
                buf.trim().to_string()
            } else {
                src.clone()
            };
            parse_polynomial(&text, ring).map_err(|e| ErrorObject::parse(&text, &e))
        })
        .collect()
}

fn rationals(src: &str) -> Res<Vec<Rational>> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    src.split(',').map(|s| parse_rational(s.trim()).map_err(|e| ErrorObject::parse(s.trim(), &e))).collect()
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn analyze(p: &PolyArgs, stdin: &mut dyn Read) -> Res<Done> {
    let r = ring(&p.vars)?;
    let fs = polys(&r, &p.polys, stdin)?;
    if let [f] = fs.as_slice() {
        let rep = singular::analyze(f).map_err(domain("singular"))?;
        let mut text = format!("f = {f}\nmu = {}\ntau = {}\ncorank = {}\n", rep.mu, rep.tau, rep.corank);
        let _ = writeln!(text, "T1 basis: {}", rep.t1_basis_strings().join(", "));
        match (&rep.ade, &rep.dynkin) {
            (Some(t), Some(d)) => {
                let _ = writeln!(text, "type {t}, {} (-2)-curves, Weyl group {} of order {}", d.vertices, d.weyl_name, d.weyl_order);
            }
            _ => text.push_str("not a rational double point\n"),
        }
        return Ok(Done { result: to_value(&rep), text });
    }
    let t1 = singular::t1_complete_intersection(&fs).map_err(domain("singular"))?;
    Ok(Done { result: to_value(&t1), text: t1.describe() })
}

fn weyl(types: &[String]) -> Res<Done> {
    let ts = types
        .iter()
        .map(|t| t.trim().parse::<AdeType>().map_err(domain("singular")))
        .collect::<Res<Vec<_>>>()?;
    let bw = singular::burns_wahl_data(&ts).map_err(domain("singular"))?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for t in &ts {
        let d = singular::dynkin_data(*t).map_err(domain("singular"))?;
        let check = if d.enumerated { "enumerated" } else { "closed form" };
        let _ = writeln!(text, "{t:<4} vertices {:<2} {} order {} ({check})", d.vertices, d.weyl_name, d.weyl_order);
        rows.push(json!({ "type": t, "dynkin": d }));
    }
    let _ = writeln!(text, "nu = {}, total Weyl order = {}", bw.nu, bw.total_weyl_order);
    Ok(Done { result: json!({ "singularities": rows, "configuration": bw }), text })
}

fn semiuniversal(p: &PolyArgs, stdin: &mut dyn Read) -> Res<Done> {
    let r = ring(&p.vars)?;
    let fs = polys(&r, &p.polys, stdin)?;
    let fam = defo::semiuniversal_family(&fs).map_err(domain("defo"))?;
    Ok(Done { result: to_value(&fam), text: fam.to_string() })
}

fn scan(p: &PolyArgs, at: &str, stdin: &mut dyn Read) -> Res<Done> {
    let r = ring(&p.vars)?;
    let fs = polys(&r, &p.polys, stdin)?;
    let values = rationals(at)?;
    let fam = defo::semiuniversal_family(&fs).map_err(domain("defo"))?;
    let scan = defo::fiber_singularity_scan(&fam, &values).map_err(domain("defo"))?;
    let mut text = String::new();
    let shown: Vec<String> = fam.parameters.iter().zip(&values).map(|(t, v)| format!("{t} = {v}")).collect();
    let _ = writeln!(text, "fibre over {}", shown.join(", "));
    if scan.points.is_empty() && scan.irrational.is_none() {
        text.push_str("smooth\n");
    }
    for pt in &scan.points {
        let coords: Vec<String> = pt.coordinates.iter().map(|c| c.to_string()).collect();
        let ade = pt.report.as_ref().and_then(|r| r.ade).map(|t| t.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(text, "point ({})  tau {}  type {ade}", coords.join(", "), pt.tau);
    }
    if let Some(c) = &scan.irrational {
        let tau = c.tau.map(|t| t.to_string()).unwrap_or_else(|| "?".into());
        let _ = writeln!(text, "{} further points over an extension, total tau {tau}", c.residue_degree);
    }
    Ok(Done { result: json!({ "parameters": fam.parameters, "values": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(), "scan": scan }), text })
}

fn resolve_an(n: usize, samples: usize, cfg: &RunConfig) -> Res<Done> {
    if samples == 0 {
        return Err(ErrorObject::usage("--samples must be at least 1"));
    }
    let (base, family) = resolve::an_base_change(n).map_err(domain("resolve"))?;
    let var = resolve::an_simultaneous_resolution(n, cfg.resolution_cap).map_err(domain("resolve"))?;
    let points = resolve::sample_base_points(n, samples, cfg.seed);
    let fibres = resolve::certify_fibers(&var, &points).map_err(domain("resolve"))?;
    let fibres_smooth = fibres.iter().all(|(_, _, v)| *v == defkit::algebra::Verdict::Smooth);
    let mut text = format!("base change: {family}\n{var}\n");
    for (chart, pt, v) in &fibres {
        let pt: Vec<String> = pt.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(text, "fibre of {chart} over ({}): {v}", pt.join(", "));
    }
    let _ = writeln!(text, "all charts smooth: {}, all sampled fibres smooth: {fibres_smooth}", var.all_smooth());
    let fibres_json: Vec<Value> = fibres
        .iter()
        .map(|(c, pt, v)| json!({ "chart": c, "point": pt.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "verdict": v }))
        .collect();
    Ok(Done {
        result: json!({
            "n": n,
            "roots": strings(&base.roots),
            "parameter_map": strings(&base.parameter_map()),
            "family": family.to_strings(),
            "resolution": var,
            "all_charts_smooth": var.all_smooth(),
            "fibres": fibres_json,
            "all_fibres_smooth": fibres_smooth,
        }),
        text,
    })
}

fn resolve_node() -> Res<Done> {
    let family = resolve::node_family().map_err(domain("resolve"))?;
    let (plus, minus) = resolve::node_small_resolutions().map_err(domain("resolve"))?;
    let text = format!("family: {family}\nfirst small resolution\n{plus}\nsecond small resolution\n{minus}\n");
    Ok(Done { result: json!({ "family": family.to_strings(), "small_resolutions": [plus, minus] }), text })
}

fn resolve_flop() -> Res<Done> {
    let locus = resolve::flop_indeterminacy().map_err(domain("resolve"))?;
    let dim = locus.dimension.map(|d| d.to_string()).unwrap_or_else(|| "empty".into());
    let text = format!(
        "indeterminacy in ({}): {}\ndimension {dim}, inside tau_param = 0: {}\nafter inverting tau_param: {}\n",
        locus.ideal.ring(),
        locus.ideal,
        locus.in_central_fiber,
        locus.off_central_fiber
    );
    Ok(Done { result: to_value(&locus), text })
}

fn quotient(
    vars: &[String],
    action: &str,
    srcs: &[String],
    names: Option<&[String]>,
    fixed: Option<&str>,
    stdin: &mut dyn Read,
) -> Res<Done> {
    let r = ring(vars)?;
    let act = DiagonalAction::parse(&r, action).map_err(domain("bidouble"))?;
    let pres = bidouble::invariant_ring(&act, names).map_err(domain("bidouble"))?;
    let fs = polys(&r, srcs, stdin)?;
    let total = Ideal::new(&r, fs).map_err(domain("algebra"))?;
    let mut text = format!("group of order {}\n{pres}\n", act.order());
    let mut result = json!({ "order": act.order(), "presentation": pres });
    if !total.is_zero_ideal() {
        let q = bidouble::quotient_family(&total, &act, &pres).map_err(domain("bidouble"))?;
        let _ = writeln!(text, "quotient: {q}");
        result["quotient"] = json!(q.to_strings());
    }
    if let Some(src) = fixed {
        let element = src
            .split(',')
            .map(|s| match s.trim() {
                "1" => Ok(1i8),
                "-1" => Ok(-1i8),
                other => Err(ErrorObject::usage(format!("--fixed: entries must be 1 or -1, found `{other}`"))),
            })
            .collect::<Res<Vec<i8>>>()?;
        let fl = bidouble::fixed_locus(&act, &element, &total, &pres).map_err(domain("bidouble"))?;
        let _ = writeln!(text, "fixed locus: {}\nimage: {}", fl.ideal, fl.image);
        result["fixed_locus"] = to_value(&fl);
    }
    Ok(Done { result, text })
}

fn invariants(chi: i64, k2: i64, h0: Option<i64>, m_max: i64) -> Res<Done> {
    let mut inv = surf::SurfaceInvariants::new(chi, k2).map_err(domain("surf"))?;
    if let Some(h) = h0 {
        inv = inv.with_h0_theta(h).map_err(domain("surf"))?;
    }
    if m_max < 1 {
        return Err(ErrorObject::usage("--m-max must be at least 1"));
    }
    let mut text = format!("chi = {chi}, K^2 = {k2}\n");
    let mut values = Vec::new();
    for m in 1..=m_max {
        let p = surf::hilbert_polynomial(&inv, m).map_err(domain("surf"))?;
        let _ = writeln!(text, "P({m}) = {p}");
        values.push(json!({ "m": m, "value": p.to_string() }));
    }
    let bound = surf::enriques_lower_bound(&inv);
    let note = match (bound.vacuous, bound.h0_theta_defaulted) {
        (true, _) => " (vacuous)",
        (false, true) => " (h0(Theta) taken as 0)",
        _ => "",
    };
    let _ = writeln!(text, "deformation space dimension >= {}{note}", bound.display);
    Ok(Done { result: json!({ "invariants": inv, "hilbert": values, "enriques_bound": bound }), text })
}

fn nodal_bounds(d: Option<u32>, search: u32) -> Res<Done> {
    let degrees: Vec<u32> = match d {
        Some(d) => vec![d],
        None => (2..=6).collect(),
    };
    let rows = degrees.iter().map(|&d| surf::nodal_bounds(d).map_err(domain("surf"))).collect::<Res<Vec<_>>>()?;
    let first = surf::first_segre_counterexample(search);
    let mut text = format!("{:>3} {:>7} {:>6} {:>10} {:>10} {:>6}  {}\n", "d", "severi", "segre", "(5/12)d^3", "(4/9)d^3", "record", "witness");
    for b in &rows {
        let severi = if b.severi_caveat { format!("{}*", b.severi) } else { b.severi.to_string() };
        let segre = b.segre.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
        let (mu, who) = match &b.record {
            Some(r) => (r.mu_known.map(|m| m.to_string()).unwrap_or_else(|| "?".into()), r.witness_name.clone()),
            None => ("?".into(), String::new()),
        };
        let _ = writeln!(
            text,
            "{:>3} {:>7} {:>6} {:>10} {:>10} {:>6}  {who}",
            b.d,
            severi,
            segre,
            b.chmutov_low.to_string(),
            b.miyaoka_high.to_string(),
            mu
        );
    }
    if rows.iter().any(|b| b.severi_caveat) {
        text.push_str("* the generic surface has infinitely many automorphisms; the count is not a bound\n");
    }
    match first {
        Some(d) => {
            let _ = writeln!(text, "first even degree with Segre count above the Severi bound: {d}");
        }
        None => {
            let _ = writeln!(text, "Segre count stays below the Severi bound up to degree {search}");
        }
    }
    Ok(Done { result: json!({ "rows": rows, "first_segre_above_severi": first, "search_limit": search }), text })
}

fn segre(d: u32, seed: u64, count: bool) -> Res<Done> {
    let s = surf::build_segre_surface(d, seed).map_err(domain("surf"))?;
    let mut text = format!("F = {s}\nseed {seed}, {} attempt(s), expected nodes {}\n", s.attempts, s.expected_nodes());
    let mut result = json!({ "surface": s, "expected_nodes": s.expected_nodes() });
    if count {
        let c = surf::count_nodes(&s).map_err(domain("surf"))?;
        let shown = c.count.map(|n| n.to_string()).unwrap_or_else(|| "non-reduced".into());
        let _ = writeln!(
            text,
            "singular points: {shown} (length {}, {} distinct), all ordinary nodes: {}",
            c.raw_colength, c.distinct_points, c.all_a1
        );
        for n in &c.rational_nodes {
            let coords: Vec<String> = n.coordinates.iter().map(|x| x.to_string()).collect();
            let ade = n.ade.map(|t| t.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(text, "rational point ({})  tau {}  type {ade}", coords.join(" : "), n.tau);
        }
        result["nodes"] = to_value(&c);
    }
    Ok(Done { result, text })
}

fn catalog(family: u8, k: u64, p: Option<u64>, r: Option<u64>) -> Res<Done> {
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| ErrorObject::usage(format!("family {family} needs --{flag}")));
    let query = match family {
        1 => CatalogQuery::Family1 { k },
        2 => CatalogQuery::Family2 { p: need(p, "p")?, k },
        _ => CatalogQuery::Family3 { p: need(p, "p")?, r: need(r, "r")?, k },
    };
    let e = surf::weighted_catalog(query).map_err(domain("surf"))?;
    let sing: Vec<String> = e.singularities.iter().map(|t| t.to_string()).collect();
    let w = e.weights;
    let text = format!("X_{} in P({},{},{},{}) with {}\n", e.degree, w[0], w[1], w[2], w[3], sing.join(" + "));
    Ok(Done { result: to_value(&e), text })
}

fn double_cover(d1: i64, d2: i64) -> Res<Done> {
    let dc = surf::double_cover_invariants(d1, d2).map_err(domain("surf"))?;
    let i = dc.invariants;
    let text = format!(
        "pg = {}, q = {}, chi = {}, K^2 = {}, moduli dimension {}\n",
        i.pg.unwrap_or_default(),
        i.q.unwrap_or_default(),
        i.chi,
        i.k2,
        dc.moduli_dim
    );
    Ok(Done { result: to_value(&dc), text })
}

fn isogenous(g1: i64, g2: i64, order: i64) -> Res<Done> {
    let e = surf::isogenous_euler(g1, g2, order).map_err(domain("surf"))?;
    Ok(Done { result: json!({ "g1": g1, "g2": g2, "order": order, "euler": e }), text: format!("e = {e}\n") })
}
