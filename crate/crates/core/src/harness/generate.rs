//! Instance generators. Every random generator draws from
//! `ChaCha8Rng::seed_from_u64(seed)`, so a (generator, params, seed) triple
//! always produces the same graph.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::plane_graph::{Adjacency, PlaneGraph, SimpleGraph, VertexId};
use crate::reducibility::find_configs;
use crate::structures::{has_chord, in_class};

pub use crate::reducibility::{build_gadget as gadget, GadgetId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("generation failed after {0} attempts")]
    Failed(usize),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
}

const ATTEMPTS: usize = 50;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A parallelogram of `rows x cols` pointy-top hexagons.
pub fn hex_patch(rows: usize, cols: usize) -> PlaneGraph {
    assert!(rows >= 1 && cols >= 1, "hex patch needs at least one hexagon");
    let s3 = 3f64.sqrt();
    let mut ids: BTreeMap<(i64, i64), VertexId> = BTreeMap::new();
    let mut pts = Vec::new();
    let mut edges = BTreeSet::new();
    for r in 0..rows {
        for c in 0..cols {
            let (cx, cy) = (s3 * (c as f64 + r as f64 / 2.0), 1.5 * r as f64);
            let corner: Vec<VertexId> = (0..6)
                .map(|i| {
                    let t = (30.0 + 60.0 * i as f64).to_radians();
                    let p = (cx + t.cos(), cy + t.sin());
                    let key = ((p.0 * 1000.0).round() as i64, (p.1 * 1000.0).round() as i64);
                    *ids.entry(key).or_insert_with(|| {
                        pts.push(p);
                        pts.len() - 1
                    })
                })
                .collect();
            for i in 0..6 {
                let (a, b) = (corner[i], corner[(i + 1) % 6]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    PlaneGraph::from_straight_line(&pts, &edges).expect("hexagonal patch is a plane graph")
}

type Pt = (f64, f64);

fn orient(a: Pt, b: Pt, c: Pt) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Proper crossing of two segments without a shared endpoint.
fn crosses(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

fn dist2(a: Pt, b: Pt) -> f64 {
    (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)
}

/// Greedy shortest-first non-crossing edge set over all pairs `allowed`
/// accepts, starting from `fixed`.
fn greedy_triangulation(pts: &[Pt], fixed: &[(VertexId, VertexId)], allowed: impl Fn(usize, usize) -> bool) -> Vec<(VertexId, VertexId)> {
    let n = pts.len();
    let mut cand: Vec<(f64, usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if allowed(u, v) {
                cand.push((dist2(pts[u], pts[v]), u, v));
            }
        }
    }
    cand.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut edges: Vec<(VertexId, VertexId)> = fixed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    for (_, u, v) in cand {
        if edges.contains(&(u, v)) {
            continue;
        }
        let clear = edges.iter().all(|&(a, b)| {
            a == u || a == v || b == u || b == v || !crosses(pts[u], pts[v], pts[a], pts[b])
        });
        if clear {
            edges.push((u, v));
        }
    }
    edges
}

fn simple_graph(n: usize, edges: &[(VertexId, VertexId)]) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for &(u, v) in edges {
        g.add_edge(u, v);
    }
    g
}

fn connected_without(n: usize, edges: &[(VertexId, VertexId)], skip: usize) -> bool {
    let kept: Vec<_> = edges.iter().enumerate().filter(|&(i, _)| i != skip).map(|x| *x.1).collect();
    let g = simple_graph(n, &kept);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Deletes each removable edge with probability `p`, keeping the graph
/// connected.
fn thin(rng: &mut ChaCha8Rng, n: usize, edges: &mut Vec<(VertexId, VertexId)>, fixed: &BTreeSet<(VertexId, VertexId)>, p: f64) {
    let mut order: Vec<(VertexId, VertexId)> = edges.iter().copied().filter(|e| !fixed.contains(e)).collect();
    order.shuffle(rng);
    for e in order {
        if rng.gen_bool(p) {
            let i = edges.iter().position(|&x| x == e).expect("edge present");
            if connected_without(n, edges, i) {
                edges.remove(i);
            }
        }
    }
}

/// A random connected plane graph on `n >= 3` points of the unit square,
/// with no class constraint.
pub fn random_planar(n: usize, seed: u64) -> PlaneGraph {
    let n = n.max(3);
    let mut rng = rng(seed);
    let pts: Vec<Pt> = (0..n).map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect();
    let mut edges = greedy_triangulation(&pts, &[], |_, _| true);
    let p = rng.gen_range(0.0..0.5);
    thin(&mut rng, n, &mut edges, &BTreeSet::new(), p);
    PlaneGraph::from_straight_line(&pts, &edges).expect("non-crossing drawing embeds")
}

/// A random connected plane graph with `d* >= 3` whose outer face is a
/// chordless cycle of length `min(n, 6..=9)`.
///
/// Points inside the outer polygon are triangulated greedily (chords of the
/// outer cycle forbidden). While two 5⁻-cycles are closer than 3, an edge of
/// one of them is deleted; afterwards a random share of the deleted edges is
/// put back wherever that keeps `d* >= 3`.
pub fn random_inclass(n: usize, seed: u64) -> Result<PlaneGraph, GenError> {
    if n < 3 {
        return Err(GenError::BadParams(format!("n = {n}, need n >= 3")));
    }
    let mut rng = rng(seed);
    for _ in 0..ATTEMPTS {
        let k = if n < 6 { n } else { rng.gen_range(6..=9).min(n) };
        let mut pts: Vec<Pt> = (0..k)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                (t.cos(), t.sin())
            })
            .collect();
        while pts.len() < n {
            let p = (rng.gen_range(-0.85..0.85), rng.gen_range(-0.85..0.85));
            if p.0 * p.0 + p.1 * p.1 < 0.85 * 0.85 && pts.iter().all(|&q| dist2(p, q) > 1e-4) {
                pts.push(p);
            }
        }
        let ring: Vec<(VertexId, VertexId)> = (0..k).map(|i| (i.min((i + 1) % k), i.max((i + 1) % k))).collect();
        let fixed: BTreeSet<_> = ring.iter().copied().collect();
        let full = greedy_triangulation(&pts, &ring, |u, v| u >= k || v >= k);
        let mut edges = full.clone();
        if !repair(&mut rng, n, &mut edges, &fixed) {
            continue;
        }
        // Put back a random share of the deleted edges that keep the class.
        let keep = rng.gen_range(0.3..1.0);
        let mut removed: Vec<_> = full.into_iter().filter(|e| !edges.contains(e)).collect();
        removed.shuffle(&mut rng);
        for e in removed {
            if rng.gen_bool(keep) {
                edges.push(e);
                if !in_class(&simple_graph(n, &edges)).in_class {
                    edges.pop();
                }
            }
        }
        return Ok(PlaneGraph::from_straight_line(&pts, &edges).expect("non-crossing drawing embeds"));
    }
    Err(GenError::Failed(ATTEMPTS))
}

/// Deletes edges of conflicting 5⁻-cycles until the class condition holds.
fn repair(rng: &mut ChaCha8Rng, n: usize, edges: &mut Vec<(VertexId, VertexId)>, fixed: &BTreeSet<(VertexId, VertexId)>) -> bool {
    loop {
        let report = in_class(&simple_graph(n, edges));
        let Some((a, b, _)) = report.witness else { return true };
        let mut cand: Vec<(VertexId, VertexId)> = a
            .edges()
            .chain(b.edges())
            .map(|(u, v)| (u.min(v), u.max(v)))
            .filter(|e| !fixed.contains(e))
            .collect();
        cand.sort_unstable();
        cand.dedup();
        cand.shuffle(rng);
        let removable = cand.into_iter().find_map(|e| {
            let i = edges.iter().position(|&x| x == e)?;
            connected_without(n, edges, i).then_some(i)
        });
        match removable {
            Some(i) => {
                edges.remove(i);
            }
            None => return false,
        }
    }
}

/// A hexagonal patch with random vertex truncations and chords, keeping
/// only mutations that stay in the class, keep the outer face a chordless
/// cycle and create no configuration that `find_configs` reports.
pub fn lemma_compliant(rows: usize, cols: usize, seed: u64) -> PlaneGraph {
    let mut rng = rng(seed);
    let mut g = hex_patch(rows, cols);
    let tries = 12 * rows * cols;
    for _ in 0..tries {
        let next = if rng.gen_bool(0.5) {
            let cubic: Vec<_> = (0..g.vertex_count()).filter(|&v| g.degree(v) == 3).collect();
            let Some(&v) = cubic.choose(&mut rng) else { continue };
            g.truncate_vertex(v)
        } else {
            let faces: Vec<_> = g.inner_faces().filter(|&f| g.face(f).is_simple() && g.face(f).degree() >= 6).collect();
            let Some(&f) = faces.choose(&mut rng) else { continue };
            let d = g.face(f).degree();
            let i = rng.gen_range(0..d);
            let j = (i + rng.gen_range(2..=d / 2)) % d;
            g.with_edge_in_face(f, i, j)
        };
        let Ok(h) = next else { continue };
        let outer = &h.outer_face().boundary;
        let ok = h.outer_face().is_simple()
            && !has_chord(&h, outer)
            && in_class(&h).in_class
            && find_configs(&h).is_empty();
        if ok {
            g = h;
        }
    }
    g
}
