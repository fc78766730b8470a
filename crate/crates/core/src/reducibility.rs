//! Local gadgets for the reducible configurations, brute-force extension
//! checks over their boundary colorings, and a matcher that finds the
//! configurations in a host graph.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, Dsu};
use crate::plane_graph::{Adjacency, FaceId, GraphError, PlaneGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GadgetId {
    /// Internal vertex of degree `d` on a 6-cycle; `d = 3` is a negative
    /// control, not an instance of the lemma.
    L2(u8),
    /// (3,3,3,3,3,4)-face sharing a (3,4)-edge with a `(t - 4)`-face.
    L4(u8),
    /// All-3-vertex `k`-face next to a 6-face with internal 3-vertices y1, y4.
    L5(u8),
    /// `(m - 4)`-face next to a 6-face whose only non-3-vertex x2 has degree 4.
    L6(u8),
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
}

impl GadgetId {
    /// Every gadget the lemmas claim reducible, with all legal parameters.
    pub fn lemma_gadgets() -> Vec<GadgetId> {
        let mut out = vec![GadgetId::L2(1), GadgetId::L2(2)];
        out.extend((7..=9).map(GadgetId::L4));
        out.extend((3..=5).map(GadgetId::L5));
        out.extend((7..=9).map(GadgetId::L6));
        out
    }

    pub fn figures() -> Vec<GadgetId> {
        vec![GadgetId::Fig2a, GadgetId::Fig2b, GadgetId::Fig3a, GadgetId::Fig3b]
    }

    pub fn all() -> Vec<GadgetId> {
        let mut out = Self::lemma_gadgets();
        out.extend(Self::figures());
        out
    }

    pub fn is_lemma_instance(self) -> bool {
        match self {
            GadgetId::L2(d) => (1..=2).contains(&d),
            GadgetId::L4(t) => (7..=9).contains(&t),
            GadgetId::L5(k) => (3..=5).contains(&k),
            GadgetId::L6(m) => (7..=9).contains(&m),
            _ => false,
        }
    }
}

impl fmt::Display for GadgetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetId::L2(d) => write!(f, "L2:d={d}"),
            GadgetId::L4(t) => write!(f, "L4:t={t}"),
            GadgetId::L5(k) => write!(f, "L5:k={k}"),
            GadgetId::L6(m) => write!(f, "L6:m={m}"),
            GadgetId::Fig2a => f.write_str("FIG2A"),
            GadgetId::Fig2b => f.write_str("FIG2B"),
            GadgetId::Fig3a => f.write_str("FIG3A"),
            GadgetId::Fig3b => f.write_str("FIG3B"),
        }
    }
}

impl FromStr for GadgetId {
    type Err = ReduceError;

    /// Accepts `FIG2A`, `L4:t=9`, `L4:9` or `L4` with a default parameter.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        let (name, param) = match upper.split_once(':') {
            Some((a, b)) => (a.to_string(), Some(b.to_string())),
            None => (upper.clone(), None),
        };
        let value = |default: u8| -> Result<u8, ReduceError> {
            match &param {
                None => Ok(default),
                Some(p) => {
                    let raw = p.rsplit('=').next().unwrap_or(p);
                    raw.parse().map_err(|_| ReduceError::BadParams(s.to_string()))
                }
            }
        };
        let id = match name.as_str() {
            "L2" => GadgetId::L2(value(2)?),
            "L4" => GadgetId::L4(value(9)?),
            "L5" => GadgetId::L5(value(3)?),
            "L6" => GadgetId::L6(value(7)?),
            "FIG2A" => GadgetId::Fig2a,
            "FIG2B" => GadgetId::Fig2b,
            "FIG3A" => GadgetId::Fig3a,
            "FIG3B" => GadgetId::Fig3b,
            _ => return Err(ReduceError::UnknownId(s.to_string())),
        };
        Ok(id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("unknown gadget id `{0}`")]
    UnknownId(String),
    #[error("bad gadget parameters `{0}`")]
    BadParams(String),
    #[error("gadget {0} has no core to extend")]
    NoCore(GadgetId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A configuration drawn as a plane graph. `cycle` stands for C0 and bounds
/// the outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub id: GadgetId,
    pub host: PlaneGraph,
    pub core: Vec<VertexId>,
    /// Vertices outside the core with a core neighbor, in cyclic order.
    pub boundary: Vec<VertexId>,
    pub cycle: Vec<VertexId>,
    /// Pairs the lemma's proof identifies; a boundary coloring is relevant
    /// when it is consistent with at least one of them.
    pub identifications: Vec<(VertexId, VertexId)>,
    pub labels: Vec<(String, VertexId)>,
}

impl Gadget {
    pub fn label(&self, name: &str) -> Option<VertexId> {
        self.labels.iter().find(|(n, _)| n == name).map(|x| x.1)
    }
}

#[derive(Default)]
struct Drawing {
    points: Vec<(f64, f64)>,
    edges: Vec<(VertexId, VertexId)>,
    labels: Vec<(String, VertexId)>,
}

impl Drawing {
    fn add(&mut self, name: &str, p: (f64, f64)) -> VertexId {
        self.points.push(p);
        let id = self.points.len() - 1;
        if !name.is_empty() {
            self.labels.push((name.to_string(), id));
        }
        id
    }

    fn edge(&mut self, a: VertexId, b: VertexId) {
        self.edges.push((a, b));
    }

    fn path(&mut self, vs: &[VertexId]) {
        for w in vs.windows(2) {
            self.edge(w[0], w[1]);
        }
    }

    fn at(&self, name: &str) -> VertexId {
        self.labels.iter().find(|(n, _)| n == name).map(|x| x.1).expect("label exists")
    }

    /// Connects each boundary vertex by a 2-edge spoke to a surrounding ring,
    /// which becomes the designated cycle. Returns the boundary in angular
    /// order around the core and the ring.
    fn ring(&mut self, core: &[VertexId], boundary: &[VertexId]) -> (Vec<VertexId>, Vec<VertexId>) {
        let k = core.len() as f64;
        let cx = core.iter().map(|&v| self.points[v].0).sum::<f64>() / k;
        let cy = core.iter().map(|&v| self.points[v].1).sum::<f64>() / k;
        let angle = |p: (f64, f64)| (p.1 - cy).atan2(p.0 - cx);
        let mut order: Vec<(f64, VertexId)> = boundary.iter().map(|&b| (angle(self.points[b]), b)).collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut ring = Vec::new();
        let m = order.len();
        for (i, &(t, b)) in order.iter().enumerate() {
            let mid = self.add("", (cx + 8.0 * t.cos(), cy + 8.0 * t.sin()));
            let r = self.add("", (cx + 14.0 * t.cos(), cy + 14.0 * t.sin()));
            self.edge(b, mid);
            self.edge(mid, r);
            let next = if i + 1 < m { order[i + 1].0 } else { order[0].0 + 2.0 * PI };
            let s = (t + next) / 2.0;
            let between = self.add("", (cx + 14.0 * s.cos(), cy + 14.0 * s.sin()));
            ring.push(r);
            ring.push(between);
        }
        for i in 0..ring.len() {
            self.edge(ring[i], ring[(i + 1) % ring.len()]);
        }
        (order.into_iter().map(|x| x.1).collect(), ring)
    }

    fn finish(self) -> Result<(PlaneGraph, Vec<(String, VertexId)>), GraphError> {
        let g = PlaneGraph::from_straight_line(&self.points, &self.edges)?;
        Ok((g, self.labels))
    }
}

fn polar(r: f64, deg: f64) -> (f64, f64) {
    let t = deg.to_radians();
    (r * t.cos(), r * t.sin())
}

fn offset(p: (f64, f64), r: f64, deg: f64) -> (f64, f64) {
    let q = polar(r, deg);
    (p.0 + q.0, p.1 + q.1)
}

/// The nine cycle vertices v1..v9 of the figures.
fn nine_cycle(d: &mut Drawing, radius: f64) -> Vec<VertexId> {
    let vs: Vec<_> = (1..=9).map(|i| d.add(&format!("v{i}"), polar(radius, i as f64 * 40.0 + 50.0))).collect();
    for i in 0..9 {
        d.edge(vs[i], vs[(i + 1) % 9]);
    }
    vs
}

pub fn build_gadget(id: GadgetId) -> Result<Gadget, ReduceError> {
    let bad = || ReduceError::BadParams(id.to_string());
    let mut d = Drawing::default();
    let (core, boundary, cycle, identifications): (Vec<_>, Vec<_>, Vec<_>, Vec<_>) = match id {
        GadgetId::L2(deg) => {
            if !(1..=3).contains(&deg) {
                return Err(bad());
            }
            let a: Vec<_> = (0..6).map(|i| d.add(&format!("a{i}"), polar(1.0, 60.0 * i as f64))).collect();
            for i in 0..6 {
                d.edge(a[i], a[(i + 1) % 6]);
            }
            let v = d.add("v", (0.0, 0.0));
            let nbrs: Vec<_> = match deg {
                1 => vec![a[0]],
                2 => vec![a[0], a[3]],
                _ => vec![a[0], a[1], a[2]],
            };
            for &x in &nbrs {
                d.edge(v, x);
            }
            (vec![v], nbrs, a, Vec::new())
        }
        GadgetId::L4(t) => {
            if !(7..=9).contains(&t) {
                return Err(bad());
            }
            let t = t as usize;
            let step = 360.0 / t as f64;
            let v: Vec<_> =
                (1..=t).map(|i| d.add(&format!("v{i}"), polar(1.0, 90.0 - step * (i - 1) as f64))).collect();
            for i in 0..t {
                d.edge(v[i], v[(i + 1) % t]);
            }
            d.edge(v[4], v[t - 1]);
            let u: Vec<_> = (1..t)
                .map(|i| {
                    let ui = d.add(&format!("u{i}"), polar(1.9, 90.0 - step * (i - 1) as f64));
                    d.edge(v[i - 1], ui);
                    ui
                })
                .collect();
            let (boundary, ring) = d.ring(&v, &u);
            (v, boundary, ring, Vec::new())
        }
        GadgetId::L5(k) => {
            if !(3..=5).contains(&k) {
                return Err(bad());
            }
            let k = k as usize;
            // x2 at -60 degrees and x3 at -120; the rest share the remaining arc.
            let step = 300.0 / (k - 1) as f64;
            let mut ang = vec![0.0; k + 1];
            ang[2] = -60.0;
            ang[3] = -120.0;
            for j in 1..=k - 2 {
                let i = if 3 + j <= k { 3 + j } else { 1 };
                ang[i] = -120.0 - step * j as f64;
            }
            ang[1] = -120.0 - step * (k - 2) as f64;
            let x: Vec<_> = (1..=k).map(|i| d.add(&format!("x{i}"), polar(1.0, ang[i]))).collect();
            for i in 0..k {
                d.edge(x[i], x[(i + 1) % k]);
            }
            let y1 = d.add("y1", (0.6, -1.7));
            let y4 = d.add("y4", (-0.6, -1.7));
            let y0 = d.add("y0", (0.6, -2.6));
            let y5 = d.add("y5", (-0.6, -2.6));
            let y1p = d.add("y1'", (1.5, -1.7));
            let y4p = d.add("y4'", (-1.5, -1.7));
            d.path(&[y1p, y1, x[1]]);
            d.path(&[y4p, y4, x[2]]);
            d.path(&[y1, y0, y5, y4]);
            let v1 = d.add("v1", polar(2.0, ang[1]));
            d.edge(x[0], v1);
            let mut boundary = vec![v1];
            for i in 4..=k {
                let xp = d.add(&format!("x{i}'"), polar(2.0, ang[i]));
                d.edge(x[i - 1], xp);
                boundary.push(xp);
            }
            let x4p = if k == 3 { v1 } else { d.at("x4'") };
            boundary.extend([y0, y1p, y4p, y5]);
            let mut core = x.clone();
            core.extend([y1, y4]);
            let (boundary, ring) = d.ring(&core, &boundary);
            (core, boundary, ring, vec![(v1, y0), (x4p, y5)])
        }
        GadgetId::L6(m) => {
            if !(7..=9).contains(&m) {
                return Err(bad());
            }
            let m = m as usize;
            let p = (m - 4) as f64;
            let hc = (-(3f64.sqrt()) / 2.0, 0.0);
            let mut pos = vec![(0.0, 0.0); m + 1];
            for (i, a) in [(1, 30.0), (2, 90.0), (3, 150.0), (4, 210.0), (5, 270.0), (6, 330.0)] {
                pos[i] = offset(hc, 1.0, a);
            }
            let gc = (0.5 / (PI / p).tan(), 0.0);
            let gr = 0.5 / (PI / p).sin();
            let g_angle = |j: usize| 180.0 + (2 * j + 1) as f64 * 180.0 / p;
            for j in 1..=m - 6 {
                pos[6 + j] = offset(gc, gr, g_angle(j));
            }
            let x: Vec<_> = (1..=m).map(|i| d.add(&format!("x{i}"), pos[i])).collect();
            for i in 0..6 {
                d.edge(x[i], x[(i + 1) % 6]);
            }
            d.path(&x[5..]);
            d.edge(x[m - 1], x[0]);
            let xp = d.add("x'", offset(pos[2], 0.9, 120.0));
            let xpp = d.add("x''", offset(pos[2], 0.9, 60.0));
            d.edge(x[1], xp);
            d.edge(x[1], xpp);
            let mut boundary = vec![xp, xpp];
            for (i, a) in [(3, 150.0), (4, 210.0), (5, 270.0)] {
                let w = d.add(&format!("x{i}'"), offset(hc, 1.9, a));
                d.edge(x[i - 1], w);
                boundary.push(w);
            }
            for j in 1..=m - 6 {
                let i = 6 + j;
                let name = if i == m { "x".to_string() } else { format!("x{i}'") };
                let w = d.add(&name, offset(gc, gr + 0.9, g_angle(j)));
                d.edge(x[i - 1], w);
                boundary.push(w);
            }
            let xx = d.at("x");
            let (boundary, ring) = d.ring(&x, &boundary);
            (x, boundary, ring, vec![(xx, xp)])
        }
        GadgetId::Fig2a => {
            let v = nine_cycle(&mut d, 1.5);
            let u = d.add("u", (0.0, 0.0));
            for i in [0, 4, 5] {
                d.edge(u, v[i]);
            }
            (Vec::new(), Vec::new(), v, Vec::new())
        }
        GadgetId::Fig2b => {
            let v = nine_cycle(&mut d, 1.5);
            let tri: Vec<_> = [("x", 90.0, 0), ("y", 210.0, 3), ("z", 330.0, 6)]
                .iter()
                .map(|&(name, a, i)| {
                    let w = d.add(name, polar(0.6, a));
                    d.edge(w, v[i]);
                    w
                })
                .collect();
            d.path(&[tri[0], tri[1], tri[2], tri[0]]);
            (Vec::new(), Vec::new(), v, Vec::new())
        }
        GadgetId::Fig3a | GadgetId::Fig3b => {
            let r = 2.0;
            let v = nine_cycle(&mut d, r);
            let x1 = d.add("x1", (0.1 * r, 0.7 * r));
            let x4 = d.add("x4", (-0.1 * r, 0.7 * r));
            let x2 = d.add("x2", (0.25 * r, 0.4 * r));
            let y1 = d.add("y1", (0.25 * r, 0.1 * r));
            let y0 = d.add("y0", (0.25 * r, -0.2 * r));
            let x3 = d.add("x3", (-0.25 * r, 0.4 * r));
            let y4 = d.add("y4", (-0.25 * r, 0.1 * r));
            let y5 = d.add("y5", (-0.25 * r, -0.2 * r));
            let w = d.add("w", (0.0, -0.5 * r));
            let stub = d.add("y1'", (0.55 * r, 0.1 * r));
            d.path(&[v[0], x1, x2, y1, y0, w]);
            d.edge(y1, stub);
            d.path(&[x2, x3, y4, y5]);
            d.path(&[x3, x4, x1]);
            if id == GadgetId::Fig3a {
                d.edge(w, v[4]);
                d.edge(w, v[5]);
            } else {
                let a = d.add("a", polar(0.7 * r, 250.0));
                let b = d.add("b", polar(0.7 * r, 290.0));
                d.path(&[w, a, v[3]]);
                d.path(&[w, b, v[6]]);
                d.edge(a, b);
            }
            (Vec::new(), Vec::new(), v, Vec::new())
        }
    };
    let (host, labels) = d.finish()?;
    Ok(Gadget { id, host, core, boundary, cycle, identifications, labels })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryModel {
    /// Each boundary vertex is I, F, or F with an I-neighbor outside; F
    /// vertices connect outside only through boundary edges.
    IBit,
    /// F boundary vertices are grouped into any non-crossing connectivity
    /// classes, each possibly joined to the designated cycle outside.
    Connectivity,
}

/// A boundary coloring: per boundary vertex its state, and per F vertex its
/// outside class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryPattern {
    pub colors: Vec<(VertexId, Color)>,
    /// Outside I-neighbor bits (IBit model).
    pub bits: Vec<bool>,
    /// Class index per boundary vertex (`usize::MAX` for I).
    pub class: Vec<usize>,
    pub anchored: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReduceReport {
    pub gadget: String,
    pub model: BoundaryModel,
    pub core_size: usize,
    pub boundary_size: usize,
    pub patterns: u64,
    pub failures: u64,
    pub counterexample: Option<BoundaryPattern>,
}

impl ReduceReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// Precomputed adjacency between core and boundary, by index.
struct Local {
    core_adj: Vec<Vec<usize>>,
    /// Boundary neighbors of each core vertex, by boundary index.
    core_bd: Vec<Vec<usize>>,
    bd_adj: Vec<Vec<usize>>,
}

impl Local {
    fn new(gadget: &Gadget) -> Self {
        let g = &gadget.host;
        let ci = |v| gadget.core.iter().position(|&c| c == v);
        let bi = |v| gadget.boundary.iter().position(|&b| b == v);
        let core_adj = gadget.core.iter().map(|&c| g.rotation(c).iter().filter_map(|&w| ci(w)).collect()).collect();
        let core_bd = gadget.core.iter().map(|&c| g.rotation(c).iter().filter_map(|&w| bi(w)).collect()).collect();
        let bd_adj = gadget.boundary.iter().map(|&b| g.rotation(b).iter().filter_map(|&w| bi(w)).collect()).collect();
        Local { core_adj, core_bd, bd_adj }
    }

    /// Whether some core coloring extends the boundary pattern without an
    /// I-I edge, an F-cycle, or an F-path joining two anchored classes
    /// through the core.
    fn extendable(&self, colors: &[Color], class: &[usize], anchored: &[bool]) -> bool {
        let nc = anchored.len();
        let k = self.core_adj.len();
        'mask: for mask in 0u32..(1 << k) {
            let is_f = |i: usize| mask >> i & 1 == 1;
            for i in 0..k {
                if !is_f(i)
                    && (self.core_adj[i].iter().any(|&j| !is_f(j)) || self.core_bd[i].iter().any(|&b| colors[b] == Color::I))
                {
                    continue 'mask;
                }
            }
            let mut dsu = Dsu::new(nc + k);
            for i in (0..k).filter(|&i| is_f(i)) {
                for &j in self.core_adj[i].iter().filter(|&&j| j > i && is_f(j)) {
                    if !dsu.union(nc + i, nc + j) {
                        continue 'mask;
                    }
                }
                for &b in self.core_bd[i].iter().filter(|&&b| colors[b] == Color::F) {
                    if !dsu.union(nc + i, class[b]) {
                        continue 'mask;
                    }
                }
            }
            let mut anchored_in = vec![0u8; nc + k];
            for c in (0..nc).filter(|&c| anchored[c]) {
                let r = dsu.find(c);
                anchored_in[r] += 1;
            }
            for i in (0..k).filter(|&i| is_f(i)) {
                if anchored_in[dsu.find(nc + i)] >= 2 {
                    continue 'mask;
                }
            }
            return true;
        }
        false
    }
}

/// All set partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            rec(i + 1, max.max(b), cur, out);
        }
    }
    if n == 0 {
        out.push(Vec::new());
    } else {
        rec(1, 0, &mut cur, &mut out);
    }
    out
}

fn non_crossing(blocks: &[usize]) -> bool {
    let n = blocks.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if blocks[a] != blocks[c] || blocks[a] == blocks[b] {
                    continue;
                }
                if (c + 1..n).any(|e| blocks[e] == blocks[b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks by brute force that every boundary pattern of the model extends to
/// the core.
pub fn verify_reducible(gadget: &Gadget, model: BoundaryModel) -> Result<ReduceReport, ReduceError> {
    if gadget.core.is_empty() {
        return Err(ReduceError::NoCore(gadget.id));
    }
    let local = Local::new(gadget);
    let nb = gadget.boundary.len();
    let on_cycle: Vec<bool> = gadget.boundary.iter().map(|b| gadget.cycle.contains(b)).collect();
    let mut report = ReduceReport {
        gadget: gadget.id.to_string(),
        model,
        core_size: gadget.core.len(),
        boundary_size: nb,
        patterns: 0,
        failures: 0,
        counterexample: None,
    };
    let record = |report: &mut ReduceReport, colors: &[Color], bits: &[bool], class: &[usize], anchored: &[bool]| {
        report.patterns += 1;
        if !local.extendable(colors, class, anchored) {
            report.failures += 1;
            if report.counterexample.is_none() {
                report.counterexample = Some(BoundaryPattern {
                    colors: gadget.boundary.iter().copied().zip(colors.iter().copied()).collect(),
                    bits: bits.to_vec(),
                    class: class.to_vec(),
                    anchored: anchored.to_vec(),
                });
            }
        }
    };
    let idx = |v: VertexId| gadget.boundary.iter().position(|&b| b == v).expect("identified vertices are boundary");
    let ident: Vec<(usize, usize)> = gadget.identifications.iter().map(|&(a, b)| (idx(a), idx(b))).collect();

    for cmask in 0u32..(1 << nb) {
        let colors: Vec<Color> = (0..nb).map(|i| if cmask >> i & 1 == 1 { Color::F } else { Color::I }).collect();
        let i_clash = (0..nb).any(|i| colors[i] == Color::I && local.bd_adj[i].iter().any(|&j| colors[j] == Color::I));
        if i_clash {
            continue;
        }
        let fs: Vec<usize> = (0..nb).filter(|&i| colors[i] == Color::F).collect();
        match model {
            BoundaryModel::IBit => {
                // Classes are the components of the F boundary vertices.
                let mut dsu = Dsu::new(nb);
                let mut cyclic = false;
                for &i in &fs {
                    for &j in local.bd_adj[i].iter().filter(|&&j| j > i && colors[j] == Color::F) {
                        cyclic |= !dsu.union(i, j);
                    }
                }
                if cyclic {
                    continue;
                }
                let mut roots: Vec<usize> = Vec::new();
                let mut class = vec![usize::MAX; nb];
                for &i in &fs {
                    let r = dsu.find(i);
                    class[i] = match roots.iter().position(|&x| x == r) {
                        Some(c) => c,
                        None => {
                            roots.push(r);
                            roots.len() - 1
                        }
                    };
                }
                let mut anchored = vec![false; roots.len()];
                for &i in &fs {
                    anchored[class[i]] |= on_cycle[i];
                }
                for bmask in 0u32..(1 << fs.len()) {
                    let mut bits = vec![false; nb];
                    for (j, &i) in fs.iter().enumerate() {
                        bits[i] = bmask >> j & 1 == 1;
                    }
                    record(&mut report, &colors, &bits, &class, &anchored);
                }
            }
            BoundaryModel::Connectivity => {
                for blocks in set_partitions(fs.len()) {
                    if !non_crossing(&blocks) {
                        continue;
                    }
                    let mut class = vec![usize::MAX; nb];
                    for (j, &i) in fs.iter().enumerate() {
                        class[i] = blocks[j];
                    }
                    let consistent = fs.iter().all(|&i| {
                        local.bd_adj[i].iter().all(|&j| colors[j] == Color::I || class[j] == class[i])
                    });
                    if !consistent {
                        continue;
                    }
                    let mut dsu = Dsu::new(nb);
                    let acyclic = fs.iter().all(|&i| {
                        local.bd_adj[i].iter().filter(|&&j| j > i && colors[j] == Color::F).all(|&j| dsu.union(i, j))
                    });
                    if !acyclic {
                        continue;
                    }
                    let nc = blocks.iter().max().map_or(0, |m| m + 1);
                    let mut forced = vec![false; nc];
                    for &i in &fs {
                        forced[class[i]] |= on_cycle[i];
                    }
                    for amask in 0u32..(1 << nc) {
                        let anchored: Vec<bool> = (0..nc).map(|c| forced[c] || amask >> c & 1 == 1).collect();
                        if (0..nc).any(|c| forced[c] && amask >> c & 1 == 1) {
                            continue;
                        }
                        let allowed = ident.is_empty()
                            || ident.iter().any(|&(a, b)| {
                                colors[a] == colors[b]
                                    && (colors[a] == Color::I
                                        || (class[a] != class[b] && !(anchored[class[a]] && anchored[class[b]])))
                            });
                        if allowed {
                            record(&mut report, &colors, &vec![false; nb], &class, &anchored);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LemmaId {
    L2,
    L3,
    L4,
    L5,
    L6,
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An occurrence of a configuration: pattern labels mapped to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigMatch {
    pub lemma: LemmaId,
    pub injection: Vec<(String, VertexId)>,
    /// Faces involved, if any.
    pub faces: Vec<FaceId>,
}

impl ConfigMatch {
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.injection.iter().map(|x| x.1)
    }

    /// `(lemma, sorted vertex set)`, the identity used for deduplication.
    pub fn key(&self) -> (LemmaId, Vec<VertexId>) {
        let mut vs: Vec<_> = self.vertices().collect();
        vs.sort_unstable();
        vs.dedup();
        (self.lemma, vs)
    }
}

/// Walk neighbors of `v` in face `f` other than `avoid` (first match).
fn walk_neighbor(g: &PlaneGraph, f: FaceId, v: VertexId, avoid: VertexId) -> Option<VertexId> {
    let w = &g.face(f).boundary;
    let k = w.len();
    (0..k).filter(|&i| w[i] == v).find_map(|i| {
        let (p, n) = (w[(i + k - 1) % k], w[(i + 1) % k]);
        if p == avoid {
            Some(n)
        } else if n == avoid {
            Some(p)
        } else {
            None
        }
    })
}

/// Face walk rotated to start at `a` and continue to `b`, if `ab` is an edge of
/// it.
fn walk_from(g: &PlaneGraph, f: FaceId, a: VertexId, b: VertexId) -> Option<Vec<VertexId>> {
    let w = &g.face(f).boundary;
    let k = w.len();
    for i in 0..k {
        if w[i] == a {
            if w[(i + 1) % k] == b {
                return Some((0..k).map(|j| w[(i + j) % k]).collect());
            }
            if w[(i + k - 1) % k] == b {
                return Some((0..k).map(|j| w[(i + k - j) % k]).collect());
            }
        }
    }
    None
}

fn labelled(prefix: &str, vs: &[VertexId], first: usize) -> Vec<(String, VertexId)> {
    vs.iter().enumerate().map(|(i, &v)| (format!("{prefix}{}", i + first), v)).collect()
}

/// Lemma 3's conclusion for a 6-face `f1` and a 5⁻-face `f2` sharing `xy`.
/// Returns whether the pair violates it. Only faces bounded by cycles are
/// considered.
fn lemma3_violation(g: &PlaneGraph, f1: FaceId, f2: FaceId, short: &[crate::structures::Cycle]) -> bool {
    let (a, b) = (g.face(f1), g.face(f2));
    let shared_vertices = a.boundary.iter().filter(|&&v| b.contains(v)).count();
    let shared_edges = a.darts().filter(|&(u, v)| g.face_of_dart(v, u) == Some(f2)).count();
    if shared_vertices != 2 || shared_edges != 1 {
        return true;
    }
    let (x, y) = a.darts().find(|&(u, v)| g.face_of_dart(v, u) == Some(f2)).expect("shared edge");
    let mut union: Vec<VertexId> = a.boundary.clone();
    union.extend(b.boundary.iter().filter(|&&v| !a.contains(v)));
    let induced_edges = g.edges().filter(|&(u, v)| union.contains(&u) && union.contains(&v)).count();
    // A cycle on |union| vertices plus one chord.
    if induced_edges != union.len() + 1 {
        return true;
    }
    a.boundary
        .iter()
        .filter(|&&v| v != x && v != y)
        .any(|&v| short.iter().any(|c| c.contains(v) && !same_cycle(c, &b.boundary)))
}

fn same_cycle(c: &crate::structures::Cycle, walk: &[VertexId]) -> bool {
    *c == crate::structures::Cycle::new(walk)
}

/// All occurrences of the Lemma 2, 4, 5 and 6 configurations and all
/// violations of Lemma 3's conclusion.
pub fn find_configs(g: &PlaneGraph) -> Vec<ConfigMatch> {
    let mut out: Vec<ConfigMatch> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |m: ConfigMatch, out: &mut Vec<ConfigMatch>| {
        if seen.insert(m.key()) {
            out.push(m);
        }
    };
    let deg = |v: VertexId| g.degree(v);
    let outer = g.outer_face_id();

    for v in (0..g.vertex_count()).filter(|&v| g.is_internal_vertex(v) && deg(v) <= 2) {
        push(ConfigMatch { lemma: LemmaId::L2, injection: vec![("v".into(), v)], faces: vec![] }, &mut out);
    }

    let short = crate::structures::enumerate_short_cycles(g, 5);
    for f1 in g.inner_faces().filter(|&f| g.face(f).degree() == 6 && g.face(f).is_simple()) {
        for f2 in g.adjacent_faces(f1) {
            let b = g.face(f2);
            if f2 == outer || b.degree() > 5 || !b.is_simple() {
                continue;
            }
            if lemma3_violation(g, f1, f2, &short) {
                let mut vs = g.face(f1).boundary.clone();
                vs.extend(b.boundary.iter().filter(|&&v| !g.face(f1).contains(v)));
                push(
                    ConfigMatch { lemma: LemmaId::L3, injection: labelled("w", &vs, 1), faces: vec![f1, f2] },
                    &mut out,
                );
            }
        }
    }

    let internal_simple = |f: FaceId| g.is_internal_face(f) && g.face(f).is_simple();

    // Lemma 4: f = [v1 .. v5 vt] internal (3,3,3,3,3,4), sharing v5 vt with an
    // internal 5⁻-face whose vertices other than v5 are 3-vertices.
    for f in g.inner_faces().filter(|&f| internal_simple(f) && g.face(f).degree() == 6) {
        let w = &g.face(f).boundary;
        let fours: Vec<_> = w.iter().copied().filter(|&v| deg(v) == 4).collect();
        if fours.len() != 1 || w.iter().any(|&v| deg(v) != 3 && deg(v) != 4) {
            continue;
        }
        let v5 = fours[0];
        for &vt in w.iter().filter(|&&x| g.has_edge(v5, x)) {
            let Some((a, b)) = g.faces_of_edge(v5, vt) else { continue };
            let other = if a == f { b } else { a };
            let gf = g.face(other);
            if other == f || !internal_simple(other) || gf.degree() > 5 {
                continue;
            }
            if gf.boundary.iter().any(|&x| x != v5 && deg(x) != 3) {
                continue;
            }
            let Some(fw) = walk_from(g, f, vt, v5) else { continue };
            let Some(gw) = walk_from(g, other, v5, vt) else { continue };
            // fw = vt v5 v4 v3 v2 v1, gw = v5 vt v_{t-1} .. v6.
            let mut names = vec![
                ("v1".to_string(), fw[5]),
                ("v2".into(), fw[4]),
                ("v3".into(), fw[3]),
                ("v4".into(), fw[2]),
                ("v5".into(), v5),
            ];
            let t = 4 + gf.degree();
            for (j, &x) in gw[2..].iter().rev().enumerate() {
                names.push((format!("v{}", 6 + j), x));
            }
            names.push((format!("v{t}"), vt));
            push(ConfigMatch { lemma: LemmaId::L4, injection: names, faces: vec![f, other] }, &mut out);
        }
    }

    // Lemma 5: internal all-3-vertex 5⁻-face X and an adjacent 6⁺-face Y through
    // x2 x3, with y1 and y4 internal 3-vertices.
    for xf in g.inner_faces().filter(|&f| internal_simple(f) && g.face(f).degree() <= 5) {
        let xw = g.face(xf).boundary.clone();
        if xw.iter().any(|&v| deg(v) != 3) {
            continue;
        }
        let k = xw.len();
        for i in 0..k {
            let (x2, x3) = (xw[i], xw[(i + 1) % k]);
            let Some(yf) = g.face_of_dart(x3, x2) else { continue };
            if yf == xf || g.face(yf).degree() < 6 {
                continue;
            }
            let (Some(y1), Some(y4)) = (walk_neighbor(g, yf, x2, x3), walk_neighbor(g, yf, x3, x2)) else {
                continue;
            };
            let ok = |y: VertexId| g.is_internal_vertex(y) && deg(y) == 3 && !xw.contains(&y);
            if y1 == y4 || !ok(y1) || !ok(y4) {
                continue;
            }
            let mut names: Vec<(String, VertexId)> =
                (0..k).map(|j| (format!("x{}", j + 1), xw[(i + k - 1 + j) % k])).collect();
            names.push(("y1".into(), y1));
            names.push(("y4".into(), y4));
            push(ConfigMatch { lemma: LemmaId::L5, injection: names, faces: vec![xf, yf] }, &mut out);
        }
    }

    // Lemma 6: internal face [x1 x6 .. xm] (7 <= m <= 9) and internal 6-face
    // [x1 .. x6], all 3-vertices but x2, x internal, and d(x2) <= 4.
    for h in g.inner_faces().filter(|&f| internal_simple(f) && g.face(f).degree() == 6) {
        let hw = g.face(h).boundary.clone();
        for gf in g.adjacent_faces(h) {
            let gface = g.face(gf);
            if !internal_simple(gf) || !(3..=5).contains(&gface.degree()) {
                continue;
            }
            if hw.iter().filter(|&&v| gface.contains(v)).count() != 2 {
                continue;
            }
            let Some((a, b)) = gface.darts().find(|&(u, v)| g.face_of_dart(v, u) == Some(h)) else { continue };
            for (x1, x6) in [(a, b), (b, a)] {
                let (Some(hseq), Some(gseq)) = (walk_from(g, h, x1, x6), walk_from(g, gf, x1, x6)) else {
                    continue;
                };
                // hseq = x1 x6 x5 x4 x3 x2; gseq = x1 x6 x7 .. xm.
                let m = 4 + gface.degree();
                let mut x = vec![0; m + 1];
                x[1] = x1;
                x[6] = x6;
                x[5] = hseq[2];
                x[4] = hseq[3];
                x[3] = hseq[4];
                x[2] = hseq[5];
                for j in 2..gseq.len() {
                    x[5 + j] = gseq[j];
                }
                if (1..=m).any(|i| i != 2 && deg(x[i]) != 3) || deg(x[2]) > 4 {
                    continue;
                }
                let xm = x[m];
                let Some(&outside) = g.rotation(xm).iter().find(|&&w| w != x[m - 1] && w != x1) else { continue };
                if !g.is_internal_vertex(outside) || x.contains(&outside) {
                    continue;
                }
                let mut names: Vec<(String, VertexId)> = (1..=m).map(|i| (format!("x{i}"), x[i])).collect();
                names.push(("x".into(), outside));
                push(ConfigMatch { lemma: LemmaId::L6, injection: names, faces: vec![h, gf] }, &mut out);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{analyze_cycle, Classification};

    fn faces_sorted(g: &PlaneGraph) -> Vec<usize> {
        let mut d: Vec<_> = g.faces().iter().map(|f| f.degree()).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn figure_gadgets_have_the_drawn_faces() {
        let a = build_gadget(GadgetId::Fig2a).unwrap();
        assert_eq!(a.host.vertex_count(), 10);
        assert_eq!(faces_sorted(&a.host), vec![3, 6, 6, 9]);
        assert_eq!(a.host.outer_face().degree(), 9);
        let u = a.label("u").unwrap();
        assert!(a.host.is_internal_vertex(u));
        let (int, ext) = a.host.cycle_sides(&a.cycle).unwrap();
        assert_eq!((int, ext), (vec![u], vec![]));

        let b = build_gadget(GadgetId::Fig2b).unwrap();
        assert_eq!(b.host.vertex_count(), 12);
        assert_eq!(faces_sorted(&b.host), vec![3, 6, 6, 6, 9]);
    }

    #[test]
    fn identifying_in_figure_three_makes_c0_bad() {
        for (id, class) in [(GadgetId::Fig3a, Classification::BadTypeI), (GadgetId::Fig3b, Classification::BadTypeII)] {
            let gad = build_gadget(id).unwrap();
            let g = &gad.host;
            let (v1, y0) = (gad.label("v1").unwrap(), gad.label("y0").unwrap());
            assert_eq!(analyze_cycle(g, &gad.cycle).unwrap().classification, Classification::Good);
            let f = (0..g.face_count()).find(|&f| g.face(f).contains(v1) && g.face(f).contains(y0)).unwrap();
            let merged = g.identify(v1, y0, f).unwrap();
            // Cycle ids are 0..9 and precede y0, so they are unchanged.
            let r = analyze_cycle(&merged, &gad.cycle).unwrap();
            assert_eq!(r.classification, class);
            let (v4, v7) = (gad.label("v4").unwrap(), gad.label("v7").unwrap());
            assert_eq!(r.bad_vertices, vec![(v4, v7)]);
        }
    }

    #[test]
    fn lemma_gadgets_build_with_internal_cores() {
        for id in GadgetId::lemma_gadgets() {
            let gad = build_gadget(id).unwrap();
            let g = &gad.host;
            assert!(gad.core.iter().all(|&v| g.is_internal_vertex(v)), "{id}");
            assert!(g.outer_face().is_simple());
            assert_eq!(Some(g.outer_face().degree()), Some(gad.cycle.len()), "{id}");
            let mut bd: Vec<VertexId> = gad
                .core
                .iter()
                .flat_map(|&c| g.rotation(c).iter().copied())
                .filter(|v| !gad.core.contains(v))
                .collect();
            bd.sort_unstable();
            bd.dedup();
            let mut mine = gad.boundary.clone();
            mine.sort_unstable();
            assert_eq!(bd, mine, "{id}");
        }
    }

    #[test]
    fn gadget_ids_parse() {
        assert_eq!("L4:t=9".parse::<GadgetId>().unwrap(), GadgetId::L4(9));
        assert_eq!("fig2a".parse::<GadgetId>().unwrap(), GadgetId::Fig2a);
        assert_eq!("L6:8".parse::<GadgetId>().unwrap(), GadgetId::L6(8));
        assert!(matches!("L9".parse::<GadgetId>(), Err(ReduceError::UnknownId(_))));
        assert!(matches!(build_gadget(GadgetId::L4(6)), Err(ReduceError::BadParams(_))));
        assert!(matches!(
            verify_reducible(&build_gadget(GadgetId::Fig2a).unwrap(), BoundaryModel::IBit),
            Err(ReduceError::NoCore(_))
        ));
    }

    #[test]
    fn l2_passes_and_degree_three_fails() {
        let ok = verify_reducible(&build_gadget(GadgetId::L2(2)).unwrap(), BoundaryModel::IBit).unwrap();
        assert!(ok.ok());
        let bad = verify_reducible(&build_gadget(GadgetId::L2(3)).unwrap(), BoundaryModel::IBit).unwrap();
        assert!(!bad.ok());
        assert!(bad.counterexample.is_some());
    }

    #[test]
    fn set_partition_counts() {
        // Bell numbers and Catalan numbers.
        let all = set_partitions(5);
        assert_eq!(all.len(), 52);
        assert_eq!(all.iter().filter(|p| non_crossing(p)).count(), 42);
    }

    #[test]
    fn configs_in_gadgets() {
        let l4 = build_gadget(GadgetId::L4(9)).unwrap();
        let m: Vec<_> = find_configs(&l4.host).into_iter().filter(|m| m.lemma == LemmaId::L4).collect();
        assert_eq!(m.len(), 1);
        let mut core = l4.core.clone();
        core.sort_unstable();
        assert_eq!(m[0].key().1, core);

        let l5 = build_gadget(GadgetId::L5(4)).unwrap();
        assert!(find_configs(&l5.host).iter().any(|m| m.lemma == LemmaId::L5));
        let l6 = build_gadget(GadgetId::L6(8)).unwrap();
        assert!(find_configs(&l6.host).iter().any(|m| m.lemma == LemmaId::L6));
    }
}
