use std::io::Read;
use std::path::Path;

use serde_json::{json, Value};

use ifpart::coloring::{extend_super, format_coloring, parse_coloring, solve_if, verify_if, verify_super, Violation};
use ifpart::discharging::{audit, fmt_rational, outer_accounting, Element};
use ifpart::harness::suite::run_suite;
use ifpart::harness::{graph_to_json, graph_to_text, hex_patch, lemma_compliant, parse_graph, random_inclass};
use ifpart::reducibility::{build_gadget, find_configs, verify_reducible, BoundaryModel, GadgetId};
use ifpart::structures::{analyze_cycle, classify_faces, d_star, enumerate_short_cycles, in_class, is_special_9cycle, StructureReport};
use ifpart::{Adjacency, Color, PlaneGraph};

use crate::output::{join, table, Failure, Report};
use crate::{Command, GenCommand, ModelArg};

pub fn run(cmd: &Command, seed: u64) -> Result<Report, Failure> {
    match cmd {
        Command::CheckClass(a) => check_class(&load(&a.graph)?),
        Command::Detect { input, cycle, all_9, faces } => {
            let g = load(&input.graph)?;
            match (cycle, all_9, faces) {
                (Some(c), _, _) => detect_cycle(&g, c),
                (None, true, _) => detect_all_9(&g),
                (None, false, true) => detect_faces(&g),
                _ => detect_short(&g),
            }
        }
        Command::Color(a) => color(&load(&a.graph)?),
        Command::Extend { input, cycle, precolor } => extend(&load(&input.graph)?, cycle, precolor),
        Command::Verify { input, coloring, super_, cycle } => {
            let g = load(&input.graph)?;
            let cycle = if *super_ { cycle.as_deref() } else { None };
            verify(&g, &read(coloring)?, cycle)
        }
        Command::Discharge { input, cycle, log } => discharge(&load(&input.graph)?, cycle.as_deref(), *log),
        Command::ReduceCheck { lemma, param, all, model } => reduce_check(lemma.as_deref(), param.as_deref(), *all, *model),
        Command::FindConfigs(a) => configs(&load(&a.graph)?),
        Command::Gen { generator, output } => gen(generator, seed, output.as_deref()),
        Command::Suite { spec, output, timings } => suite(spec, output.as_deref(), *timings),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<PlaneGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn colors(phi: &[Option<Color>]) -> Value {
    json!(phi.iter().map(|c| c.map(|c| c.to_string())).collect::<Vec<_>>())
}

fn violations_text(vs: &[Violation]) -> String {
    vs.iter().map(|v| format!("{} {}\n", v.kind.label(), join(&v.witness, " "))).collect()
}

fn check_class(g: &PlaneGraph) -> Result<Report, Failure> {
    let r = in_class(g);
    let d = r.d_star.map_or("INF".to_string(), |d| d.to_string());
    let mut text = format!("in_class {}\nd_star {d}\n", if r.in_class { "yes" } else { "no" });
    if let Some((a, b, dist)) = &r.witness {
        text.push_str(&format!("witness [{}] [{}] distance {dist}\n", join(a.vertices(), " "), join(b.vertices(), " ")));
    }
    Ok(Report::new(r.in_class, text, json!(r)))
}

fn structure_text(r: &StructureReport) -> String {
    let mut s = format!("cycle [{}] length {} {}\n", join(&r.cycle, " "), r.cycle.len(), r.classification.label());
    for c in &r.chords {
        s.push_str(&format!("chord {}-{} ({},{})\n", c.ends.0, c.ends.1, c.split.0, c.split.1));
    }
    for c in &r.claws {
        s.push_str(&format!(
            "claw center {} at [{}] lengths ({}) {:?}\n",
            c.center,
            join(c.attachments, " "),
            join(c.lengths, ","),
            c.side
        ));
    }
    for t in &r.triclaws {
        s.push_str(&format!(
            "triclaw triangle [{}] at [{}] lengths ({}) {:?}\n",
            join(t.triangle, " "),
            join(t.attachments, " "),
            join(t.lengths, ","),
            t.side
        ));
    }
    for (a, b) in &r.bad_vertices {
        s.push_str(&format!("bad vertices {a} {b}\n"));
    }
    s
}

fn detect_cycle(g: &PlaneGraph, cycle: &[usize]) -> Result<Report, Failure> {
    let r = analyze_cycle(g, cycle)?;
    let special = cycle.len() == 9 && is_special_9cycle(g, cycle)?;
    let mut text = structure_text(&r);
    if special {
        text.push_str("special 9-cycle\n");
    }
    Ok(Report::new(true, text, json!({ "structure": r, "special": special })))
}

fn detect_all_9(g: &PlaneGraph) -> Result<Report, Failure> {
    let mut rows = Vec::new();
    let mut data = Vec::new();
    for c in enumerate_short_cycles(g, 9).into_iter().filter(|c| c.len() == 9) {
        let r = analyze_cycle(g, c.vertices())?;
        let special = is_special_9cycle(g, c.vertices())?;
        rows.push(vec![
            join(c.vertices(), " "),
            r.classification.label().to_string(),
            r.chords.len().to_string(),
            r.claws.len().to_string(),
            r.triclaws.len().to_string(),
            if special { "yes" } else { "no" }.to_string(),
        ]);
        data.push(json!({ "structure": r, "special": special }));
    }
    let mut text = table(&["cycle", "class", "chords", "claws", "triclaws", "special"], &rows);
    text.push_str(&format!("{} nine-cycles\n", rows.len()));
    Ok(Report::new(true, text, json!(data)))
}

fn detect_faces(g: &PlaneGraph) -> Result<Report, Failure> {
    let roles = classify_faces(g);
    let yes = |b: bool| if b { "yes" } else { "-" }.to_string();
    let rows: Vec<Vec<String>> = roles
        .roles
        .iter()
        .map(|r| {
            let outer = r.face == g.outer_face_id();
            vec![
                format!("f{}", r.face),
                r.degree.to_string(),
                if outer { "D".into() } else if r.internal { "internal".into() } else { "F1".into() },
                yes(r.special3),
                yes(r.special6),
                yes(r.bad),
                join(&r.pendent_vertices, " "),
                join(&g.face(r.face).boundary, " "),
            ]
        })
        .collect();
    let mut text = table(&["face", "deg", "kind", "special3", "special6", "bad", "pendent", "walk"], &rows);
    for (r, b) in &roles.roofs {
        text.push_str(&format!("roof {r} over f{b}\n"));
    }
    Ok(Report::new(true, text, json!(roles)))
}

fn detect_short(g: &PlaneGraph) -> Result<Report, Failure> {
    let cycles = enumerate_short_cycles(g, 5);
    let mut text: String = cycles.iter().map(|c| format!("cycle [{}] length {}\n", join(c.vertices(), " "), c.len())).collect();
    let d = d_star(g);
    text.push_str(&format!("d_star {}\n", d.map_or("INF".to_string(), |d| d.to_string())));
    Ok(Report::new(true, text, json!({ "short_cycles": cycles, "d_star": d })))
}

fn color(g: &PlaneGraph) -> Result<Report, Failure> {
    Ok(match solve_if(g) {
        Some(phi) => Report::new(true, format_coloring(&phi), json!({ "coloring": colors(&phi) })),
        None => Report::new(false, "NONE\n".into(), json!({ "coloring": null })),
    })
}

fn parse_precolor(cycle: &[usize], items: &[String]) -> Result<Vec<Color>, Failure> {
    let mut out: Vec<Option<Color>> = vec![None; cycle.len()];
    for item in items {
        let (v, c) = item.split_once('=').ok_or_else(|| Failure::Input(format!("bad precolor entry `{item}`, expected v=I or v=F")))?;
        let v: usize = v.trim().parse().map_err(|_| Failure::Input(format!("bad vertex in `{item}`")))?;
        let c = match c.trim() {
            "I" | "i" => Color::I,
            "F" | "f" => Color::F,
            _ => return Err(Failure::Input(format!("bad color in `{item}`"))),
        };
        let i = cycle.iter().position(|&x| x == v).ok_or_else(|| Failure::Input(format!("vertex {v} is not on the cycle")))?;
        out[i] = Some(c);
    }
    out.iter()
        .zip(cycle)
        .map(|(c, v)| c.ok_or_else(|| Failure::Input(format!("cycle vertex {v} has no color"))))
        .collect()
}

fn extend(g: &PlaneGraph, cycle: &[usize], precolor: &[String]) -> Result<Report, Failure> {
    let phi0 = parse_precolor(cycle, precolor)?;
    let out = extend_super(g, cycle, &phi0)?;
    let mut text = match &out.coloring {
        Some(phi) => format_coloring(phi),
        None => "NONE\n".into(),
    };
    if out.c0_has_chord {
        text.push_str("# the cycle has a chord\n");
    }
    let data = json!({
        "coloring": out.coloring.as_deref().map(colors),
        "cycle_has_chord": out.c0_has_chord,
        "search_nodes": out.search_nodes,
    });
    Ok(Report::new(out.coloring.is_some(), text, data))
}

fn verify(g: &PlaneGraph, coloring: &str, cycle: Option<&[usize]>) -> Result<Report, Failure> {
    let phi = parse_coloring(coloring, g.vertex_count()).map_err(Failure::Input)?;
    let vs = match cycle {
        Some(q) => verify_super(g, q, &phi)?,
        None => verify_if(g, &phi)?,
    };
    let what = if cycle.is_some() { "super IF-coloring" } else { "IF-coloring" };
    let text = if vs.is_empty() { format!("ok: {what}\n") } else { violations_text(&vs) };
    Ok(Report::new(vs.is_empty(), text, json!({ "ok": vs.is_empty(), "violations": vs })))
}

/// The cycle with everything inside it, the cycle bounding the outer face.
/// Returns the graph and the new-to-old vertex map.
fn restrict(g: &PlaneGraph, cycle: &[usize]) -> Result<(PlaneGraph, Vec<usize>), Failure> {
    let (_, exterior) = g.cycle_sides(cycle)?;
    let (h, map) = g.without_vertices(&exterior)?;
    let c: Vec<usize> = cycle.iter().map(|&v| map[v].expect("cycle is kept")).collect();
    let h = PlaneGraph::build(h.rotations().to_vec(), Some(&c))?;
    let back = (0..g.vertex_count()).filter(|&v| map[v].is_some()).collect();
    Ok((h, back))
}

fn discharge(g: &PlaneGraph, cycle: Option<&[usize]>, log: bool) -> Result<Report, Failure> {
    let (g, ids) = match cycle {
        Some(c) => restrict(g, c)?,
        None => (g.clone(), (0..g.vertex_count()).collect()),
    };
    let a = audit(&g);
    let acc = outer_accounting(&g, &a.ledger);
    let name = |x: Element| match x {
        Element::Vertex(v) => format!("v{}", ids[v]),
        Element::Face(f) if f == g.outer_face_id() => format!("f{f} (D)"),
        Element::Face(f) => format!("f{f}"),
    };
    let degree = |x: Element| match x {
        Element::Vertex(v) => g.degree(v),
        Element::Face(f) => g.face(f).degree(),
    };
    let rows: Vec<Vec<String>> = a
        .finals
        .iter()
        .map(|(&x, c)| vec![name(x), degree(x).to_string(), fmt_rational(&a.ledger.initial(x)), fmt_rational(c)])
        .collect();
    let mut text = String::new();
    if cycle.is_some() {
        text.push_str(&format!("restricted to the cycle and its interior: n={} m={}\n", g.vertex_count(), g.edge_count()));
    }
    text.push_str(&table(&["element", "deg", "initial", "final"], &rows));
    if log {
        text.push_str("transfers\n");
        for t in &a.ledger.transfers {
            text.push_str(&format!("{:?} {} -> {} {}\n", t.rule, name(t.source), name(t.sink), fmt_rational(&t.amount)));
        }
    }
    let mark = |b: bool| if b { "holds" } else { "fails" };
    text.push_str(&format!(
        "accounting\n  d(D) {}\n  tau3 {}\n  tau6 {}\n  e' {}\n  leaving edges {}\n  p {}\n  mu*(D) {}\n  6 - d(D) + 3tau3 + 2e' - tau6 + p = {}\n  identity {}\n  hypotheses {}\n  6 + 3tau3 + 2e' - tau6 + p <= d(D): {}\n  2e' >= tau6: {}\n  e' + (e' - tau6) + p <= d(D) - 6: {}\n",
        acc.d_outer,
        acc.tau3,
        acc.tau6,
        acc.e_prime,
        acc.leaving_edges,
        fmt_rational(&acc.p),
        fmt_rational(&acc.mu_star_d),
        fmt_rational(&acc.formula),
        mark(acc.identity_holds),
        mark(acc.hypotheses_hold),
        mark(acc.ineq2),
        mark(acc.ineq3),
        mark(acc.ineq5),
    ));
    text.push_str(&format!("audit\n  conserved {}\n  negatives {}\n", if a.conserved { "yes" } else { "no" }, a.negatives.len()));
    for n in &a.negatives {
        let by = if n.explained_by.is_empty() {
            "UNEXPLAINED".to_string()
        } else {
            join(n.explained_by.iter().map(|&i| a.matches[i].lemma), ",")
        };
        text.push_str(&format!("  {} {} {by}\n", name(n.element), fmt_rational(&n.charge)));
    }
    let ok = a.conserved && a.unexplained() == 0 && (acc.identity_holds || !acc.hypotheses_hold);
    let finals: Vec<Value> = a
        .finals
        .iter()
        .map(|(&x, c)| json!({ "element": name(x), "initial": fmt_rational(&a.ledger.initial(x)), "final": fmt_rational(c) }))
        .collect();
    let mut data = json!({
        "vertex_ids": ids,
        "finals": finals,
        "accounting": acc,
        "conserved": a.conserved,
        "negatives": a.negatives,
        "matches": a.matches,
        "unexplained": a.unexplained(),
    });
    if log {
        data["transfers"] = json!(a.ledger.transfers);
    }
    Ok(Report::new(ok, text, data))
}

fn reduce_check(lemma: Option<&str>, param: Option<&str>, all: bool, model: ModelArg) -> Result<Report, Failure> {
    let ids = if all {
        GadgetId::lemma_gadgets()
    } else {
        let lemma = lemma.expect("clap requires --lemma without --all");
        let id: GadgetId = match param {
            Some(p) => format!("{lemma}:{p}").parse()?,
            None => lemma.parse()?,
        };
        if !id.is_lemma_instance() && id != GadgetId::L2(3) {
            return Err(Failure::Input(format!("{id} is not a lemma gadget")));
        }
        vec![id]
    };
    let model = match model {
        ModelArg::Ibit => BoundaryModel::IBit,
        ModelArg::Connectivity => BoundaryModel::Connectivity,
    };
    let mut text = String::new();
    let mut data = Vec::new();
    let mut ok = true;
    for id in ids {
        let g = build_gadget(id)?;
        let r = verify_reducible(&g, model)?;
        ok &= r.ok();
        text.push_str(&format!(
            "{} {id} core={} boundary={} patterns={} failures={}\n",
            if r.ok() { "PASS" } else { "FAIL" },
            r.core_size,
            r.boundary_size,
            r.patterns,
            r.failures
        ));
        if let Some(p) = &r.counterexample {
            let cs = p.colors.iter().zip(&p.bits).map(|((v, c), b)| format!("{v}={c}{}", if *b { "*" } else { "" }));
            text.push_str(&format!("  counterexample {}\n", join(cs, " ")));
        }
        data.push(json!(r));
    }
    Ok(Report::new(ok, text, json!(data)))
}

fn configs(g: &PlaneGraph) -> Result<Report, Failure> {
    let ms = find_configs(g);
    let mut text: String = ms
        .iter()
        .map(|m| format!("{} {}\n", m.lemma, join(m.injection.iter().map(|(l, v)| format!("{l}={v}")), " ")))
        .collect();
    text.push_str(&format!("{} matches\n", ms.len()));
    Ok(Report::new(true, text, json!(ms)))
}

fn gen(generator: &GenCommand, seed: u64, output: Option<&Path>) -> Result<Report, Failure> {
    let g = match generator {
        GenCommand::Hex { rows, cols } if *rows >= 1 && *cols >= 1 => hex_patch(*rows, *cols),
        GenCommand::Hex { .. } => return Err(Failure::Input("rows and cols must be at least 1".into())),
        GenCommand::Random { n } => random_inclass(*n, seed)?,
        GenCommand::Compliant { rows, cols } if *rows >= 1 && *cols >= 1 => lemma_compliant(*rows, *cols, seed),
        GenCommand::Compliant { .. } => return Err(Failure::Input("rows and cols must be at least 1".into())),
        GenCommand::Gadget { id } => build_gadget(id.parse()?)?.host,
    };
    let text = graph_to_text(&g);
    let data: Value = serde_json::from_str(&graph_to_json(&g)).expect("valid json");
    match output {
        Some(path) => {
            let body = if path.extension().is_some_and(|e| e == "json") { graph_to_json(&g) } else { text };
            std::fs::write(path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let summary = format!("wrote {} (n={} m={})\n", path.display(), g.vertex_count(), g.edge_count());
            Ok(Report::new(true, summary, json!({ "path": path, "n": g.vertex_count(), "m": g.edge_count() })))
        }
        None => Ok(Report::new(true, text, data)),
    }
}

fn suite(spec: &Path, output: Option<&Path>, timings: bool) -> Result<Report, Failure> {
    let text = read(spec)?;
    let base = spec.parent().unwrap_or(Path::new("."));
    let report = run_suite(&text, base).map_err(|e| Failure::Input(format!("{}: {e}", spec.display())))?;
    let rendered = report.render(timings);
    let printed = match output {
        Some(path) => {
            std::fs::write(path, &rendered).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            format!("wrote {} ({} instances, {} failures)\n", path.display(), report.instances.len(), report.failures())
        }
        None => rendered,
    };
    Ok(Report::new(report.ok(), printed, json!(report)))
}
