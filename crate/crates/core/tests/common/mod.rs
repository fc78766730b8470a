//! Naive reference implementations used as oracles by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ifpart::reducibility::LemmaId;
use ifpart::{Adjacency, PlaneGraph, VertexId};

/// Rotate to the smallest vertex, then read in the direction with the
/// smaller second vertex.
pub fn canon(c: &[VertexId]) -> Vec<VertexId> {
    let k = c.len();
    let i = (0..k).min_by_key(|&i| c[i]).unwrap();
    let fwd: Vec<_> = (0..k).map(|j| c[(i + j) % k]).collect();
    let bwd: Vec<_> = (0..k).map(|j| c[(i + k - j) % k]).collect();
    fwd.min(bwd)
}

/// Every cycle of length 3..=max_len, found by extending all simple paths
/// from their smallest vertex.
pub fn all_cycles<G: Adjacency>(g: &G, max_len: usize) -> BTreeSet<Vec<VertexId>> {
    let mut out = BTreeSet::new();
    fn ext<G: Adjacency>(g: &G, path: &mut Vec<VertexId>, max: usize, out: &mut BTreeSet<Vec<VertexId>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w == s && path.len() >= 3 {
                out.insert(canon(path));
            } else if w > s && !path.contains(&w) && path.len() < max {
                path.push(w);
                ext(g, path, max, out);
                path.pop();
            }
        }
    }
    for s in 0..g.vertex_count() {
        ext(g, &mut vec![s], max_len, &mut out);
    }
    out
}

/// Face walks traced directly from the rotation system.
pub fn faces(g: &PlaneGraph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut used: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut out = Vec::new();
    for u in 0..n {
        for &v in g.rotation(u) {
            if used.contains(&(u, v)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            while used.insert((a, b)) {
                walk.push(a);
                let rot = g.rotation(b);
                let i = rot.iter().position(|&x| x == a).unwrap();
                let c = rot[(i + rot.len() - 1) % rot.len()];
                a = b;
                b = c;
            }
            out.push(walk);
        }
    }
    out
}

pub fn same_cyclic(a: &[VertexId], b: &[VertexId]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(i + s) % a.len()] == b[i]))
}

fn is_simple(w: &[VertexId]) -> bool {
    let s: BTreeSet<_> = w.iter().collect();
    s.len() == w.len() && w.len() >= 3
}

/// A face description: walk, whether outer, whether internal.
pub struct NaiveFace {
    pub walk: Vec<VertexId>,
    pub outer: bool,
    pub internal: bool,
}

pub fn naive_faces(g: &PlaneGraph) -> Vec<NaiveFace> {
    let outer_walk = g.outer_face().boundary.clone();
    let on_outer: BTreeSet<_> = outer_walk.iter().copied().collect();
    faces(g)
        .into_iter()
        .map(|walk| {
            let outer = same_cyclic(&walk, &outer_walk);
            let internal = !outer && walk.iter().all(|v| !on_outer.contains(v));
            NaiveFace { walk, outer, internal }
        })
        .collect()
}

fn face_has_edge(w: &[VertexId], a: VertexId, b: VertexId) -> bool {
    let k = w.len();
    (0..k).any(|i| (w[i] == a && w[(i + 1) % k] == b) || (w[i] == b && w[(i + 1) % k] == a))
}

fn face_has_dart(w: &[VertexId], a: VertexId, b: VertexId) -> bool {
    let k = w.len();
    (0..k).any(|i| w[i] == a && w[(i + 1) % k] == b)
}

/// The walk of a simple face read from `a` through `b`.
fn read_from(w: &[VertexId], a: VertexId, b: VertexId) -> Vec<VertexId> {
    let k = w.len();
    let i = w.iter().position(|&x| x == a).unwrap();
    if w[(i + 1) % k] == b {
        (0..k).map(|j| w[(i + j) % k]).collect()
    } else {
        (0..k).map(|j| w[(i + k - j) % k]).collect()
    }
}

/// Exhaustive search for the Lemma 2 to 6 patterns, written from the lemma
/// statements.
pub fn naive_configs(g: &PlaneGraph) -> BTreeSet<(LemmaId, Vec<VertexId>)> {
    let mut out = BTreeSet::new();
    let n = g.vertex_count();
    let fs = naive_faces(g);
    let on_outer: BTreeSet<_> = g.outer_face().boundary.iter().copied().collect();
    let internal_v = |v: VertexId| !on_outer.contains(&v);
    let d = |v: VertexId| g.degree(v);
    let short = all_cycles(g, 5);
    let key = |lemma, vs: &mut Vec<VertexId>| {
        vs.sort_unstable();
        vs.dedup();
        (lemma, vs.clone())
    };

    for v in 0..n {
        if internal_v(v) && d(v) <= 2 {
            out.insert((LemmaId::L2, vec![v]));
        }
    }

    // Lemma 3 violations.
    for f1 in fs.iter().filter(|f| !f.outer && f.walk.len() == 6 && is_simple(&f.walk)) {
        for f2 in fs.iter().filter(|f| !f.outer && f.walk.len() <= 5 && is_simple(&f.walk)) {
            let shared: Vec<(VertexId, VertexId)> = (0..6)
                .map(|i| (f1.walk[i], f1.walk[(i + 1) % 6]))
                .filter(|&(a, b)| face_has_edge(&f2.walk, a, b))
                .collect();
            if shared.is_empty() {
                continue;
            }
            let common = f1.walk.iter().filter(|v| f2.walk.contains(v)).count();
            let mut union: Vec<VertexId> = f1.walk.clone();
            union.extend(f2.walk.iter().filter(|v| !f1.walk.contains(v)));
            let (x, y) = shared[0];
            let normal = shared.len() == 1 && common == 2;
            let degs: Vec<usize> = union.iter().map(|&u| union.iter().filter(|&&w| g.has_edge(u, w)).count()).collect();
            let cycle_plus_chord = union
                .iter()
                .zip(&degs)
                .all(|(&u, &k)| if u == x || u == y { k == 3 } else { k == 2 });
            let on_short = f1
                .walk
                .iter()
                .filter(|&&v| v != x && v != y)
                .any(|&v| short.iter().any(|c| c.contains(&v)));
            if !normal || !cycle_plus_chord || on_short {
                out.insert(key(LemmaId::L3, &mut union));
            }
        }
    }

    let internal_simple: Vec<&NaiveFace> = fs.iter().filter(|f| f.internal && is_simple(&f.walk)).collect();

    // Lemma 4.
    for f in internal_simple.iter().filter(|f| f.walk.len() == 6) {
        for h in internal_simple.iter().filter(|h| h.walk.len() <= 5) {
            for i in 0..6 {
                let (a, b) = (f.walk[i], f.walk[(i + 1) % 6]);
                if !face_has_edge(&h.walk, a, b) {
                    continue;
                }
                for (v5, vt) in [(a, b), (b, a)] {
                    let f_ok = f.walk.iter().all(|&v| if v == v5 { d(v) == 4 } else { d(v) == 3 });
                    let h_ok = h.walk.iter().all(|&v| v == v5 || d(v) == 3);
                    if f_ok && h_ok && d(vt) == 3 {
                        let mut vs: Vec<_> = f.walk.iter().chain(&h.walk).copied().collect();
                        out.insert(key(LemmaId::L4, &mut vs));
                    }
                }
            }
        }
    }

    // Lemma 5.
    for x in internal_simple.iter().filter(|f| f.walk.len() <= 5 && f.walk.iter().all(|&v| d(v) == 3)) {
        let k = x.walk.len();
        for i in 0..k {
            let (x2, x3) = (x.walk[i], x.walk[(i + 1) % k]);
            let Some(y) = fs.iter().find(|f| face_has_dart(&f.walk, x3, x2)) else { continue };
            if y.walk.len() < 6 {
                continue;
            }
            let yw = &y.walk;
            let m = yw.len();
            let j = (0..m).find(|&j| yw[j] == x3 && yw[(j + 1) % m] == x2).unwrap();
            let y1 = yw[(j + 2) % m];
            let y4 = yw[(j + m - 1) % m];
            let ok = |v: VertexId| internal_v(v) && d(v) == 3 && !x.walk.contains(&v);
            if y1 != y4 && ok(y1) && ok(y4) {
                let mut vs = x.walk.clone();
                vs.extend([y1, y4]);
                out.insert(key(LemmaId::L5, &mut vs));
            }
        }
    }

    // Lemma 6.
    for h in internal_simple.iter().filter(|f| f.walk.len() == 6) {
        for gf in internal_simple.iter().filter(|f| (3..=5).contains(&f.walk.len())) {
            if h.walk.iter().filter(|v| gf.walk.contains(v)).count() != 2 {
                continue;
            }
            for i in 0..6 {
                let (a, b) = (h.walk[i], h.walk[(i + 1) % 6]);
                if !face_has_edge(&gf.walk, a, b) {
                    continue;
                }
                for (x1, x6) in [(a, b), (b, a)] {
                    let hs = read_from(&h.walk, x1, x6);
                    let gs = read_from(&gf.walk, x1, x6);
                    let m = 4 + gs.len();
                    let mut xs = vec![0; m + 1];
                    xs[1] = x1;
                    xs[6] = x6;
                    xs[5] = hs[2];
                    xs[4] = hs[3];
                    xs[3] = hs[4];
                    xs[2] = hs[5];
                    for j in 2..gs.len() {
                        xs[5 + j] = gs[j];
                    }
                    if (1..=m).any(|i| i != 2 && d(xs[i]) != 3) || d(xs[2]) > 4 {
                        continue;
                    }
                    let xm = xs[m];
                    let third: Vec<_> = g.rotation(xm).iter().copied().filter(|&w| w != xs[m - 1] && w != x1).collect();
                    let Some(&outside) = third.first() else { continue };
                    if internal_v(outside) && !xs[1..].contains(&outside) {
                        let mut vs = xs[1..].to_vec();
                        vs.push(outside);
                        out.insert(key(LemmaId::L6, &mut vs));
                    }
                }
            }
        }
    }
    out
}

/// Chords, claws and triclaws of a cycle as comparable sets.
#[derive(Debug, PartialEq, Eq)]
pub struct NaiveStructure {
    pub chords: BTreeSet<(VertexId, VertexId, usize, usize)>,
    pub claws: BTreeSet<(VertexId, Vec<VertexId>, Vec<usize>)>,
    pub triclaws: BTreeSet<(Vec<VertexId>, Vec<VertexId>, Vec<usize>)>,
    pub label: &'static str,
}

/// Steps along the cycle from `a` forward to `b`.
fn steps(c: &[VertexId], a: VertexId, b: VertexId) -> usize {
    let mut i = c.iter().position(|&x| x == a).unwrap();
    let mut s = 0;
    while c[i] != b {
        i = (i + 1) % c.len();
        s += 1;
    }
    s
}

/// Lengths of the three cycles cut out by attachments `att` plus `extra`
/// off-cycle edges per piece.
fn piece_lengths(c: &[VertexId], att: &[VertexId], extra: usize) -> Vec<usize> {
    let mut sorted = att.to_vec();
    sorted.sort_by_key(|&v| c.iter().position(|&x| x == v).unwrap());
    let mut out: Vec<usize> = (0..3).map(|i| steps(c, sorted[i], sorted[(i + 1) % 3]) + extra).collect();
    out.sort_unstable();
    out
}

pub fn naive_structure<G: Adjacency>(g: &G, c: &[VertexId]) -> NaiveStructure {
    let on = |v: VertexId| c.contains(&v);
    let k = c.len();
    let mut chords = BTreeSet::new();
    for (i, &u) in c.iter().enumerate() {
        for (j, &v) in c.iter().enumerate() {
            let consecutive = (i + 1) % k == j || (j + 1) % k == i;
            if u < v && !consecutive && g.has_edge(u, v) {
                let s = steps(c, u, v);
                let (a, b) = (s + 1, k - s + 1);
                chords.insert((u, v, a.min(b), a.max(b)));
            }
        }
    }
    let mut claws = BTreeSet::new();
    for w in (0..g.vertex_count()).filter(|&w| !on(w)) {
        let att: Vec<_> = g.neighbors(w).iter().copied().filter(|&x| on(x)).collect();
        for a in 0..att.len() {
            for b in a + 1..att.len() {
                for e in b + 1..att.len() {
                    let mut t = vec![att[a], att[b], att[e]];
                    let lengths = piece_lengths(c, &t, 2);
                    t.sort_unstable();
                    claws.insert((w, t, lengths));
                }
            }
        }
    }
    let mut triclaws = BTreeSet::new();
    for tri in all_cycles(g, 3) {
        if tri.iter().any(|&v| on(v)) {
            continue;
        }
        let nb = |v: VertexId| -> Vec<VertexId> { g.neighbors(v).iter().copied().filter(|&x| on(x)).collect() };
        for &p in &nb(tri[0]) {
            for &q in &nb(tri[1]) {
                for &r in &nb(tri[2]) {
                    if p == q || q == r || p == r {
                        continue;
                    }
                    let mut t = vec![p, q, r];
                    let lengths = piece_lengths(c, &t, 3);
                    t.sort_unstable();
                    triclaws.insert((tri.clone(), t, lengths));
                }
            }
        }
    }
    let label = if k == 9 && !claws.is_empty() {
        "bad-I"
    } else if k == 9 && !triclaws.is_empty() {
        "bad-II"
    } else if k <= 9 {
        "good"
    } else {
        "not-9-cycle"
    };
    NaiveStructure { chords, claws, triclaws, label }
}

/// A closed walk through every cycle vertex in order; used to feed cycles
/// found by `all_cycles` back to the library.
pub fn cycles_up_to<G: Adjacency>(g: &G, max_len: usize) -> Vec<Vec<VertexId>> {
    all_cycles(g, max_len).into_iter().collect()
}

/// Minimum BFS distance between two vertex sets.
pub fn set_distance<G: Adjacency>(g: &G, a: &[VertexId], b: &[VertexId]) -> Option<usize> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &v in a {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        if b.contains(&v) {
            return Some(dist[v]);
        }
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Minimum distance between two 5⁻-cycles, `None` for fewer than two.
pub fn naive_d_star<G: Adjacency>(g: &G) -> Option<usize> {
    let cs: Vec<_> = all_cycles(g, 5).into_iter().collect();
    let mut best: Option<usize> = None;
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if let Some(d) = set_distance(g, &cs[i], &cs[j]) {
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
    }
    best
}
