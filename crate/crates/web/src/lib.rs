//! Browser bindings. Every export returns a JSON string the page draws from.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use ifpart::coloring::solve_if;
use ifpart::discharging::{audit, fmt_rational, outer_accounting, Element};
use ifpart::harness::{hex_patch, random_inclass};
use ifpart::reducibility::{build_gadget, find_configs, verify_reducible, BoundaryModel, GadgetId};
use ifpart::structures::{analyze_cycle, in_class};
use ifpart::{Adjacency, PlaneGraph};

mod layout;

pub use layout::tutte_layout;

#[derive(Serialize)]
struct Drawing {
    positions: Vec<(f64, f64)>,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<usize>>,
    outer: usize,
}

impl Drawing {
    fn of(g: &PlaneGraph) -> Self {
        Drawing {
            positions: tutte_layout(g),
            edges: g.edges().collect(),
            faces: g.faces().iter().map(|f| f.boundary.clone()).collect(),
            outer: g.outer_face_id(),
        }
    }
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

fn error(msg: impl ToString) -> String {
    json(&serde_json::json!({ "error": msg.to_string() }))
}

#[derive(Serialize)]
struct ColoringView {
    drawing: Drawing,
    colors: Option<Vec<String>>,
    d_star: Option<usize>,
}

/// IF-coloring of a hexagonal patch, or of a random in-class graph when
/// `random_n > 0`.
#[wasm_bindgen]
pub fn color_instance(rows: usize, cols: usize, random_n: usize, seed: u64) -> String {
    let g = if random_n > 0 {
        match random_inclass(random_n.clamp(3, 80), seed) {
            Ok(g) => g,
            Err(e) => return error(e),
        }
    } else {
        hex_patch(rows.clamp(1, 12), cols.clamp(1, 12))
    };
    let colors = solve_if(&g).map(|phi| phi.iter().map(|c| c.map_or("?".into(), |c| c.to_string())).collect());
    json(&ColoringView { d_star: in_class(&g).d_star, colors, drawing: Drawing::of(&g) })
}

#[derive(Serialize)]
struct Charge {
    initial: String,
    r#final: String,
    negative: bool,
}

#[derive(Serialize)]
struct DischargeView {
    drawing: Drawing,
    vertices: Vec<Charge>,
    faces: Vec<Charge>,
    transfers: usize,
    conserved: bool,
    unexplained: usize,
    mu_star_d: String,
    formula: String,
    identity_holds: bool,
}

/// Discharging ledger of a random in-class graph.
#[wasm_bindgen]
pub fn discharge_random(n: usize, seed: u64) -> String {
    let g = match random_inclass(n.clamp(3, 80), seed) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    let a = audit(&g);
    let acc = outer_accounting(&g, &a.ledger);
    let charge = |x: Element| {
        let f = a.finals[&x];
        Charge { initial: fmt_rational(&a.ledger.initial(x)), r#final: fmt_rational(&f), negative: f < 0.into() }
    };
    json(&DischargeView {
        vertices: (0..g.vertex_count()).map(|v| charge(Element::Vertex(v))).collect(),
        faces: (0..g.face_count()).map(|f| charge(Element::Face(f))).collect(),
        transfers: a.ledger.transfers.len(),
        conserved: a.conserved,
        unexplained: a.unexplained(),
        mu_star_d: fmt_rational(&acc.mu_star_d),
        formula: fmt_rational(&acc.formula),
        identity_holds: acc.identity_holds,
        drawing: Drawing::of(&g),
    })
}

#[derive(Serialize)]
struct GadgetView {
    id: String,
    drawing: Drawing,
    labels: Vec<(String, usize)>,
    core: Vec<usize>,
    boundary: Vec<usize>,
    cycle: Vec<usize>,
    cycle_class: Option<String>,
    configs: Vec<(String, Vec<usize>)>,
    patterns: Option<u64>,
    failures: Option<u64>,
}

/// A figure or lemma gadget with its detected configurations and, for lemma
/// gadgets, the boundary-bit reducibility check.
#[wasm_bindgen]
pub fn inspect_gadget(id: &str) -> String {
    let gad = match id.parse::<GadgetId>().and_then(build_gadget) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    let g = &gad.host;
    let cycle_class = analyze_cycle(g, &gad.cycle).ok().map(|r| r.classification.label().to_string());
    let configs = find_configs(g).iter().map(|m| (m.lemma.to_string(), m.key().1)).collect();
    let check = if gad.core.is_empty() { None } else { verify_reducible(&gad, BoundaryModel::IBit).ok() };
    json(&GadgetView {
        id: gad.id.to_string(),
        labels: gad.labels.clone(),
        core: gad.core.clone(),
        boundary: gad.boundary.clone(),
        cycle: gad.cycle.clone(),
        cycle_class,
        configs,
        patterns: check.as_ref().map(|r| r.patterns),
        failures: check.as_ref().map(|r| r.failures),
        drawing: Drawing::of(g),
    })
}

/// Gadget ids accepted by `inspect_gadget`.
#[wasm_bindgen]
pub fn gadget_ids() -> String {
    json(&GadgetId::all().iter().map(|id| id.to_string()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn hex_patch_view_is_colored() {
        let v = parse(&color_instance(2, 2, 0, 0));
        assert_eq!(v["colors"].as_array().unwrap().len(), 16);
        assert_eq!(v["drawing"]["positions"].as_array().unwrap().len(), 16);
        assert!(v["d_star"].is_null());
    }

    #[test]
    fn discharge_view_conserves() {
        let v = parse(&discharge_random(30, 4));
        assert_eq!(v["conserved"], true);
        assert_eq!(v["mu_star_d"], v["formula"]);
    }

    #[test]
    fn gadget_views() {
        for id in parse(&gadget_ids()).as_array().unwrap() {
            let v = parse(&inspect_gadget(id.as_str().unwrap()));
            assert!(v.get("error").is_none(), "{id}");
        }
        let v = parse(&inspect_gadget("FIG2A"));
        assert_eq!(v["cycle_class"], "bad-I");
        assert!(v["patterns"].is_null());
        let v = parse(&inspect_gadget("L4:t=7"));
        assert_eq!(v["failures"], 0);
        assert_eq!(v["patterns"], 729);
        assert!(parse(&inspect_gadget("nope"))["error"].is_string());
    }
}
