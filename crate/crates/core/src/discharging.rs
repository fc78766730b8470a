//! Exact discharging: initial charges, rules R1a-R1g, R2, R3, R4, the
//! per-element audit and the outer-face accounting.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::plane_graph::{Adjacency, FaceId, PlaneGraph, VertexId};
use crate::reducibility::{find_configs, ConfigMatch};
use crate::structures::{classify_faces, has_chord, FaceRoles};

pub type Charge = Rational64;

/// Formats a rational as `a/b` (integers as `a`).
pub fn fmt_rational(r: &Charge) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ser_rational<S: Serializer>(r: &Charge, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

fn half() -> Charge {
    Charge::new(1, 2)
}

fn int(x: i64) -> Charge {
    Charge::from_integer(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Element {
    Vertex(VertexId),
    Face(FaceId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(x) => write!(f, "f{x}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    R1a,
    R1b,
    R1c,
    R1d,
    R1e,
    R1f,
    R1g,
    R2,
    R3,
    R4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub source: Element,
    pub sink: Element,
    #[serde(serialize_with = "ser_rational")]
    pub amount: Charge,
    pub rule: Rule,
}

/// Charges per vertex and face, with the transfer log that produced the final
/// values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub vertex_initial: Vec<Charge>,
    pub face_initial: Vec<Charge>,
    pub transfers: Vec<Transfer>,
    pub outer: FaceId,
}

impl ChargeLedger {
    pub fn initial(&self, x: Element) -> Charge {
        match x {
            Element::Vertex(v) => self.vertex_initial[v],
            Element::Face(f) => self.face_initial[f],
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.vertex_initial.len())
            .map(Element::Vertex)
            .chain((0..self.face_initial.len()).map(Element::Face))
    }

    /// Final charges, keyed by element.
    pub fn finals(&self) -> BTreeMap<Element, Charge> {
        let mut out: BTreeMap<Element, Charge> = self.elements().map(|x| (x, self.initial(x))).collect();
        for t in &self.transfers {
            *out.get_mut(&t.source).expect("known element") -= t.amount;
            *out.get_mut(&t.sink).expect("known element") += t.amount;
        }
        out
    }

    pub fn final_charge(&self, x: Element) -> Charge {
        let mut c = self.initial(x);
        for t in &self.transfers {
            if t.source == x {
                c -= t.amount;
            }
            if t.sink == x {
                c += t.amount;
            }
        }
        c
    }

    pub fn initial_total(&self) -> Charge {
        self.elements().map(|x| self.initial(x)).sum()
    }

    pub fn final_total(&self) -> Charge {
        self.finals().values().sum()
    }

    /// Total received by `sink` through `rule`.
    pub fn inflow(&self, sink: Element, rule: Rule) -> Charge {
        self.transfers.iter().filter(|t| t.sink == sink && t.rule == rule).map(|t| t.amount).sum()
    }
}

/// Initial charges: 2d(v) - 6 for vertices, d(f) - 6 for faces other than the
/// outer face D, and d(D) + 6 for D.
pub fn initial_charges(g: &PlaneGraph) -> ChargeLedger {
    let vertex_initial = (0..g.vertex_count()).map(|v| int(2 * g.degree(v) as i64 - 6)).collect();
    let face_initial = g
        .faces()
        .iter()
        .map(|f| {
            let d = f.degree() as i64;
            if f.id == g.outer_face_id() {
                int(d + 6)
            } else {
                int(d - 6)
            }
        })
        .collect();
    ChargeLedger { vertex_initial, face_initial, transfers: Vec::new(), outer: g.outer_face_id() }
}

/// Faces pendent to `v` that are internal 5⁻-faces made of 3-vertices.
fn pendent_small_faces(g: &PlaneGraph, v: VertexId) -> Vec<FaceId> {
    let mut out = Vec::new();
    for &w in g.rotation(v) {
        for f in g.incident_faces(w) {
            let face = g.face(f);
            if out.contains(&f) || face.contains(v) || !g.is_internal_face(f) || face.degree() > 5 {
                continue;
            }
            if face.boundary.iter().all(|&x| g.degree(x) == 3) {
                out.push(f);
            }
        }
    }
    out.sort_unstable();
    out
}

fn r1_transfers(g: &PlaneGraph, roles: &FaceRoles, out: &mut Vec<Transfer>) {
    for v in (0..g.vertex_count()).filter(|&v| g.is_internal_vertex(v) && g.degree(v) >= 4) {
        let d = g.degree(v);
        let inc = g.incident_faces(v);
        let deg = |f: FaceId| g.face(f).degree();
        let mut send = |sink: FaceId, amount: Charge, rule: Rule| {
            out.push(Transfer { source: Element::Vertex(v), sink: Element::Face(sink), amount, rule });
        };
        let six: Vec<FaceId> = inc.iter().copied().filter(|&f| deg(f) == 6).collect();
        let has_small = inc.iter().any(|&f| deg(f) <= 5);
        if inc.iter().any(|&f| deg(f) == 3) {
            let rule = if d == 4 { Rule::R1a } else { Rule::R1b };
            for &f in inc.iter().filter(|&&f| deg(f) == 3 && g.is_internal_face(f)) {
                send(f, Charge::new(3, 2), rule);
            }
            if d >= 5 {
                for &f in &six {
                    send(f, half(), rule);
                }
            }
            for base in roles.bases_of(v) {
                send(base, half(), rule);
            }
        }
        for &f in inc.iter().filter(|&&f| deg(f) == 4) {
            send(f, int(2), Rule::R1c);
        }
        for &f in inc.iter().filter(|&&f| deg(f) == 5) {
            send(f, int(1), Rule::R1d);
        }
        let pendent = pendent_small_faces(g, v);
        if !pendent.is_empty() {
            let (rule, amount) = if d == 4 { (Rule::R1e, int(1)) } else { (Rule::R1f, int(2)) };
            for &p in &pendent {
                send(p, amount, rule);
            }
            for &f in six.iter().filter(|&&f| pendent.iter().all(|&p| !g.faces_adjacent(f, p))) {
                send(f, half(), rule);
            }
        } else if !has_small {
            for &f in &six {
                send(f, half(), Rule::R1g);
            }
        }
    }
}

fn r3_transfers(g: &PlaneGraph, roles: &FaceRoles, out: &mut Vec<Transfer>) {
    for t in g.faces().iter().filter(|f| f.degree() == 3 && g.is_internal_face(f.id)) {
        let big = t.boundary.iter().filter(|&&x| g.degree(x) >= 4).count();
        if big > 1 {
            continue;
        }
        let pendent = &roles.roles[t.id].pendent_vertices;
        for h in g.adjacent_faces(t.id) {
            let hf = g.face(h);
            if hf.degree() != 6 || !g.is_internal_face(h) {
                continue;
            }
            let qualifies = big == 1
                || hf.boundary.iter().any(|&w| g.degree(w) >= 4 && !pendent.contains(&w) && !t.contains(w));
            if qualifies {
                out.push(Transfer { source: Element::Face(h), sink: Element::Face(t.id), amount: half(), rule: Rule::R3 });
            }
        }
    }
}

/// Faces receiving 1 from D under R4: 3-faces in F1 and 6-faces in F1
/// adjacent to a 5⁻-face other than D.
fn r4_face_sinks(g: &PlaneGraph) -> (Vec<FaceId>, Vec<FaceId>) {
    let outer = g.outer_face_id();
    let mut threes = Vec::new();
    let mut sixes = Vec::new();
    for f in g.inner_faces().filter(|&f| g.is_in_f1(f)) {
        match g.face(f).degree() {
            3 => threes.push(f),
            6 if g.adjacent_faces(f).iter().any(|&h| h != outer && g.face(h).degree() <= 5) => sixes.push(f),
            _ => {}
        }
    }
    (threes, sixes)
}

fn r4_transfers(g: &PlaneGraph, out: &mut Vec<Transfer>) {
    let d = Element::Face(g.outer_face_id());
    for v in (0..g.vertex_count()).filter(|&v| g.is_boundary_vertex(v)) {
        out.push(Transfer { source: Element::Vertex(v), sink: d, amount: int(2 * g.degree(v) as i64 - 6), rule: Rule::R4 });
    }
    let (threes, sixes) = r4_face_sinks(g);
    for f in threes.into_iter().chain(sixes) {
        out.push(Transfer { source: d, sink: Element::Face(f), amount: int(1), rule: Rule::R4 });
    }
}

/// R2 runs last: its remainder depends on the R4 inflow.
fn r2_transfers(g: &PlaneGraph, ledger: &ChargeLedger, out: &mut Vec<Transfer>) {
    let outer = g.outer_face_id();
    for f in g.inner_faces() {
        let deg = g.face(f).degree();
        if deg < 6 || (deg == 6 && g.is_internal_face(f)) {
            continue;
        }
        let small: Vec<FaceId> =
            g.adjacent_faces(f).into_iter().filter(|&h| h != outer && g.face(h).degree() <= 5).collect();
        for &h in &small {
            out.push(Transfer { source: Element::Face(f), sink: Element::Face(h), amount: int(1), rule: Rule::R2 });
        }
        let remainder = ledger.initial(Element::Face(f))
            + out
                .iter()
                .filter(|t| t.rule == Rule::R4 && t.sink == Element::Face(f))
                .map(|t| t.amount)
                .sum::<Charge>()
            - int(small.len() as i64);
        out.push(Transfer { source: Element::Face(f), sink: Element::Face(outer), amount: remainder, rule: Rule::R2 });
    }
}

/// Initial charges plus all rule transfers, computed from the static
/// structure of `g`.
pub fn apply_rules(g: &PlaneGraph) -> ChargeLedger {
    let mut ledger = initial_charges(g);
    let roles = classify_faces(g);
    let mut transfers = Vec::new();
    r1_transfers(g, &roles, &mut transfers);
    r3_transfers(g, &roles, &mut transfers);
    r4_transfers(g, &mut transfers);
    r2_transfers(g, &ledger, &mut transfers);
    ledger.transfers = transfers;
    ledger
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeElement {
    pub element: Element,
    #[serde(serialize_with = "ser_rational")]
    pub charge: Charge,
    /// Indices into the audit's matches whose vertices meet the element's
    /// closed neighborhood. Empty means UNEXPLAINED.
    pub explained_by: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub ledger: ChargeLedger,
    pub finals: BTreeMap<Element, Charge>,
    pub conserved: bool,
    pub matches: Vec<ConfigMatch>,
    /// Internal vertices and non-outer faces with negative final charge.
    pub negatives: Vec<NegativeElement>,
}

impl AuditReport {
    pub fn unexplained(&self) -> usize {
        self.negatives.iter().filter(|n| n.explained_by.is_empty()).count()
    }
}

/// Applies the rules, then checks conservation and the sign of every internal
/// vertex and every face in F0, matching negatives to nearby configurations.
pub fn audit(g: &PlaneGraph) -> AuditReport {
    let ledger = apply_rules(g);
    let finals = ledger.finals();
    let conserved = ledger.final_total().is_zero() && ledger.initial_total().is_zero();
    let matches = find_configs(g);
    let mut negatives = Vec::new();
    for (&x, c) in &finals {
        let relevant = match x {
            Element::Vertex(v) => g.is_internal_vertex(v),
            Element::Face(f) => f != g.outer_face_id(),
        };
        if !relevant || !c.is_negative() {
            continue;
        }
        let mut hood: Vec<VertexId> = match x {
            Element::Vertex(v) => vec![v],
            Element::Face(f) => g.face(f).boundary.clone(),
        };
        for v in hood.clone() {
            hood.extend_from_slice(g.rotation(v));
        }
        let explained_by = matches
            .iter()
            .enumerate()
            .filter(|(_, m)| m.vertices().any(|v| hood.contains(&v)))
            .map(|(i, _)| i)
            .collect();
        negatives.push(NegativeElement { element: x, charge: *c, explained_by });
    }
    AuditReport { ledger, finals, conserved, matches, negatives }
}

/// The outer-face accounting for D bounded by C0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OuterAccounting {
    pub d_outer: usize,
    pub tau3: usize,
    pub tau6: usize,
    pub e_prime: usize,
    /// |E(C0, G - C0)|.
    pub leaving_edges: usize,
    #[serde(serialize_with = "ser_rational")]
    pub p: Charge,
    #[serde(serialize_with = "ser_rational")]
    pub mu_star_d: Charge,
    /// 6 - d(D) + 3 tau3 + 2 e' - tau6 + p.
    #[serde(serialize_with = "ser_rational")]
    pub formula: Charge,
    pub identity_holds: bool,
    /// C0 is the outer walk as a simple chordless cycle, and every 3-face in
    /// F1 has exactly two leaving edges, none shared. The displayed derivation
    /// of the formula uses these.
    pub hypotheses_hold: bool,
    /// 6 + 3 tau3 + 2 e' - tau6 + p <= d(D).
    pub ineq2: bool,
    /// 2 e' >= tau6.
    pub ineq3: bool,
    /// e' + (e' - tau6) + p <= d(D) - 6.
    pub ineq5: bool,
}

pub fn outer_accounting(g: &PlaneGraph, ledger: &ChargeLedger) -> OuterAccounting {
    let outer = g.outer_face();
    let d_outer = outer.degree();
    let c0 = &outer.boundary;
    let on_c0 = |v: VertexId| g.is_boundary_vertex(v);
    let (threes, sixes) = r4_face_sinks(g);
    let tau3 = threes.len();
    let tau6 = sixes.len();
    let mut leaving = Vec::new();
    for &v in c0.iter() {
        for &w in g.rotation(v) {
            if !on_c0(w) && !leaving.contains(&(v, w)) {
                leaving.push((v, w));
            }
        }
    }
    let on_three = |u: VertexId, w: VertexId| {
        let (a, b) = g.faces_of_edge(u, w).expect("edge exists");
        g.face(a).degree() == 3 || g.face(b).degree() == 3
    };
    let e_prime = leaving.iter().filter(|&&(u, w)| !on_three(u, w)).count();
    let d = Element::Face(g.outer_face_id());
    let p = ledger.inflow(d, Rule::R2);
    let mu_star_d = ledger.final_charge(d);
    let (t3, t6, e, dd) = (tau3 as i64, tau6 as i64, e_prime as i64, d_outer as i64);
    let formula = int(6 - dd + 3 * t3 + 2 * e - t6) + p;

    let simple = outer.is_simple() && !has_chord(g, c0);
    let threes_ok = threes.iter().all(|&f| {
        let face = g.face(f);
        let own = leaving.iter().filter(|&&(u, w)| face.contains(u) && face.contains(w) && g.faces_of_edge(u, w).is_some_and(|(a, b)| a == f || b == f)).count();
        own == 2
    }) && leaving.iter().all(|&(u, w)| {
        let (a, b) = g.faces_of_edge(u, w).expect("edge exists");
        !(g.face(a).degree() == 3 && g.face(b).degree() == 3)
    });

    OuterAccounting {
        d_outer,
        tau3,
        tau6,
        e_prime,
        leaving_edges: leaving.len(),
        p,
        mu_star_d,
        formula,
        identity_holds: mu_star_d == formula,
        hypotheses_hold: simple && threes_ok,
        ineq2: int(6 + 3 * t3 + 2 * e - t6) + p <= int(dd),
        ineq3: 2 * e_prime >= tau6,
        ineq5: int(e + (e - t6)) + p <= int(dd - 6),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::hex_patch;
    use crate::reducibility::{build_gadget, GadgetId};

    fn cycle(n: usize) -> PlaneGraph {
        PlaneGraph::build((0..n).map(|v| vec![(v + 1) % n, (v + n - 1) % n]).collect(), None).unwrap()
    }

    #[test]
    fn initial_charges_follow_the_formulas() {
        let g = cycle(9);
        let l = initial_charges(&g);
        assert!(l.vertex_initial.iter().all(|&c| c == int(-2)));
        assert_eq!(l.initial(Element::Face(g.outer_face_id())), int(15));
        assert!(l.initial_total().is_zero());
        let c6 = initial_charges(&cycle(6));
        assert_eq!(c6.vertex_initial.iter().sum::<Charge>(), int(-12));
        assert_eq!(c6.initial(Element::Face(c6.outer)), int(12));
    }

    #[test]
    fn bare_nine_cycle_accounting() {
        let g = cycle(9);
        let l = apply_rules(&g);
        let acc = outer_accounting(&g, &l);
        assert_eq!((acc.tau3, acc.tau6, acc.e_prime), (0, 0, 0));
        // The inner 9-face returns its surplus of 3 to D.
        assert_eq!(acc.p, int(3));
        assert_eq!(acc.mu_star_d, int(0));
        assert!(acc.identity_holds && acc.hypotheses_hold);
    }

    #[test]
    fn lone_triangle_breaks_the_edge_count() {
        // The 3-face in F1 has no leaving edges, so |E(C0, G - C0)| = 2 tau3 + e' fails.
        let g = cycle(3);
        let acc = outer_accounting(&g, &apply_rules(&g));
        assert_eq!(acc.tau3, 1);
        assert!(!acc.hypotheses_hold && !acc.identity_holds);
        assert_eq!((acc.mu_star_d, acc.formula), (int(2), int(6)));
    }

    #[test]
    fn hex_patch_only_moves_boundary_charge() {
        let g = hex_patch(3, 3);
        let l = apply_rules(&g);
        assert!(l.transfers.iter().all(|t| t.rule == Rule::R4 || (t.rule == Rule::R2 && t.amount.is_zero())));
        assert!(l.final_total().is_zero());
        let report = audit(&g);
        assert!(report.conserved && report.negatives.is_empty());
    }

    #[test]
    fn fig2a_accounting_is_exact() {
        let g = build_gadget(GadgetId::Fig2a).unwrap().host;
        let l = apply_rules(&g);
        let acc = outer_accounting(&g, &l);
        // The 3-face and both 6-faces touch C0; the 6-faces are adjacent to
        // the 3-face. Leaving edges: u-v1 (off any 3-face) and u-v5, u-v6.
        assert_eq!((acc.tau3, acc.tau6, acc.e_prime, acc.leaving_edges), (1, 2, 1, 3));
        assert!(acc.identity_holds);
        assert!(acc.ineq3);
    }

    #[test]
    fn six_face_next_to_a_small_face_nets_zero() {
        let g = build_gadget(GadgetId::Fig2a).unwrap().host;
        let l = apply_rules(&g);
        for f in g.inner_faces().filter(|&f| g.face(f).degree() == 6) {
            assert_eq!(l.final_charge(Element::Face(f)), int(0));
        }
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(fmt_rational(&Charge::new(3, 2)), "3/2");
        assert_eq!(fmt_rational(&int(-4)), "-4");
    }
}
