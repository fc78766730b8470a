//! Short cycles and the structural vocabulary built on them: cycle distance,
//! d*, chords, claws, triclaws, bad 9-cycles and the face roles that drive the
//! discharging rules.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::plane_graph::{Adjacency, FaceId, GraphError, PlaneGraph, VertexId};

/// A cycle stored in canonical form: the lexicographically least sequence
/// among all rotations and reflections of its vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cycle(Vec<VertexId>);

impl Cycle {
    pub fn new(seq: &[VertexId]) -> Self {
        Cycle(canonical_rotation(seq))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }
}

fn canonical_rotation(seq: &[VertexId]) -> Vec<VertexId> {
    let k = seq.len();
    if k == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<VertexId>> = None;
    for start in 0..k {
        for dir in [1, k - 1] {
            let cand: Vec<_> = (0..k).map(|i| seq[(start + dir * i) % k]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// All cycles of length at most `max_len`, canonical and sorted.
///
/// Each cycle is found once: rooted at its least vertex, with the second
/// vertex smaller than the last.
pub fn enumerate_short_cycles<G: Adjacency>(g: &G, max_len: usize) -> Vec<Cycle> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(max_len);
    let mut on_path = vec![false; n];
    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        extend_path(g, root, max_len, &mut path, &mut on_path, &mut out);
        on_path[root] = false;
        path.pop();
    }
    out.sort();
    out
}

fn extend_path<G: Adjacency>(
    g: &G,
    root: VertexId,
    max_len: usize,
    path: &mut Vec<VertexId>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
) {
    let last = *path.last().expect("path starts at root");
    for &w in g.neighbors(last) {
        if w == root && path.len() >= 3 && path[1] < last {
            out.push(Cycle::new(path));
        } else if w > root && !on_path[w] && path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            extend_path(g, root, max_len, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Multi-source BFS distances from `sources`; `usize::MAX` marks unreachable.
pub fn bfs_distances<G: Adjacency>(g: &G, sources: &[VertexId]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Minimum shortest-path distance between a vertex of `a` and a vertex of
/// `b`; `None` when no path exists.
pub fn cycle_distance<G: Adjacency>(g: &G, a: &Cycle, b: &Cycle) -> Option<usize> {
    let dist = bfs_distances(g, a.vertices());
    b.vertices()
        .iter()
        .map(|&v| dist[v])
        .min()
        .filter(|&d| d != usize::MAX)
}

/// Closest pair among the 5⁻-cycles, with their distance.
fn closest_short_pair<G: Adjacency>(g: &G) -> Option<(Cycle, Cycle, usize)> {
    let short = enumerate_short_cycles(g, 5);
    let mut best: Option<(Cycle, Cycle, usize)> = None;
    for (i, a) in short.iter().enumerate() {
        let dist = bfs_distances(g, a.vertices());
        for b in &short[i + 1..] {
            let d = b.vertices().iter().map(|&v| dist[v]).min().unwrap_or(usize::MAX);
            if d != usize::MAX && best.as_ref().is_none_or(|x| d < x.2) {
                best = Some((a.clone(), b.clone(), d));
                if d == 0 {
                    return best;
                }
            }
        }
    }
    best
}

/// Minimum distance between two distinct 5⁻-cycles; `None` stands for
/// infinity (fewer than two such cycles).
pub fn d_star<G: Adjacency>(g: &G) -> Option<usize> {
    closest_short_pair(g).map(|(_, _, d)| d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub in_class: bool,
    /// `None` is infinity.
    pub d_star: Option<usize>,
    /// The closest pair of 5⁻-cycles when the graph is outside the class.
    pub witness: Option<(Cycle, Cycle, usize)>,
}

/// Membership in the class of graphs whose 5⁻-cycles are pairwise at
/// distance at least 3.
pub fn in_class<G: Adjacency>(g: &G) -> ClassReport {
    match closest_short_pair(g) {
        Some((a, b, d)) if d < 3 => ClassReport { in_class: false, d_star: Some(d), witness: Some((a, b, d)) },
        Some((_, _, d)) => ClassReport { in_class: true, d_star: Some(d), witness: None },
        None => ClassReport { in_class: true, d_star: None, witness: None },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Inside,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chord {
    pub ends: (VertexId, VertexId),
    /// Lengths of the two cycles the chord splits the cycle into.
    pub split: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claw {
    pub center: VertexId,
    /// Attachment vertices in cycle order.
    pub attachments: [VertexId; 3],
    /// Lengths of the three cycles formed with the claw, the i-th one spanning
    /// from `attachments[i]` to `attachments[i + 1]`.
    pub lengths: [usize; 3],
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triclaw {
    /// `triangle[i]` is attached to `attachments[i]`.
    pub triangle: [VertexId; 3],
    pub attachments: [VertexId; 3],
    pub lengths: [usize; 3],
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Good,
    /// 9-cycle with a claw.
    BadTypeI,
    /// 9-cycle with a triclaw and no claw.
    BadTypeII,
    /// Longer than 9; goodness is not defined.
    NotNineCycle,
}

impl Classification {
    pub fn is_bad(self) -> bool {
        matches!(self, Classification::BadTypeI | Classification::BadTypeII)
    }

    pub fn label(self) -> &'static str {
        match self {
            Classification::Good => "good",
            Classification::BadTypeI => "bad-I",
            Classification::BadTypeII => "bad-II",
            Classification::NotNineCycle => "not-9-cycle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub cycle: Vec<VertexId>,
    pub chords: Vec<Chord>,
    pub claws: Vec<Claw>,
    pub triclaws: Vec<Triclaw>,
    pub classification: Classification,
    /// One pair per claw and triclaw of a bad cycle.
    pub bad_vertices: Vec<(VertexId, VertexId)>,
}

/// Arc lengths between consecutive positions (sorted) on a k-cycle.
fn arcs(pos: [usize; 3], k: usize) -> [usize; 3] {
    [pos[1] - pos[0], pos[2] - pos[1], k - pos[2] + pos[0]]
}

/// Index of the shortest arc; ties go to an arc that avoids the first
/// attachment position.
fn shortest_arc(arc: [usize; 3]) -> usize {
    // arcs 0 and 2 touch pos[0]; arc 1 does not.
    let mut best = 1;
    for i in [0, 2] {
        if arc[i] < arc[best] {
            best = i;
        }
    }
    best
}

/// Chords, claws, triclaws and goodness of `cycle`, given in cycle order.
pub fn analyze_cycle(g: &PlaneGraph, cycle: &[VertexId]) -> Result<StructureReport, GraphError> {
    g.check_cycle(cycle)?;
    let k = cycle.len();
    let n = g.vertex_count();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in cycle.iter().enumerate() {
        pos[v] = i;
    }
    let (interior, _) = g.cycle_sides(cycle)?;
    let side_of = |v: VertexId| if interior.contains(&v) { Side::Inside } else { Side::Outside };

    let mut chords = Vec::new();
    for (i, &u) in cycle.iter().enumerate() {
        for &v in g.rotation(u) {
            let j = pos[v];
            if j == usize::MAX || j <= i || j == i + 1 || (i == 0 && j == k - 1) {
                continue;
            }
            chords.push(Chord { ends: (u, v), split: (j - i + 1, k - (j - i) + 1) });
        }
    }

    let mut claws = Vec::new();
    for v in (0..n).filter(|&v| pos[v] == usize::MAX) {
        let mut att: Vec<usize> = g.rotation(v).iter().map(|&w| pos[w]).filter(|&p| p != usize::MAX).collect();
        att.sort_unstable();
        for a in 0..att.len() {
            for b in a + 1..att.len() {
                for c in b + 1..att.len() {
                    let p = [att[a], att[b], att[c]];
                    let arc = arcs(p, k);
                    claws.push(Claw {
                        center: v,
                        attachments: p.map(|i| cycle[i]),
                        lengths: arc.map(|x| x + 2),
                        side: side_of(v),
                    });
                }
            }
        }
    }

    let mut triclaws = Vec::new();
    for tri in enumerate_short_cycles(g, 3) {
        let t = tri.vertices();
        if t.iter().any(|&v| pos[v] != usize::MAX) {
            continue;
        }
        let att = |v: VertexId| -> Vec<usize> {
            g.rotation(v).iter().map(|&w| pos[w]).filter(|&p| p != usize::MAX).collect()
        };
        let (ax, ay, az) = (att(t[0]), att(t[1]), att(t[2]));
        for &px in &ax {
            for &py in &ay {
                for &pz in &az {
                    if px == py || py == pz || px == pz {
                        continue;
                    }
                    let mut pairs = [(px, t[0]), (py, t[1]), (pz, t[2])];
                    pairs.sort_unstable();
                    let p = pairs.map(|x| x.0);
                    triclaws.push(Triclaw {
                        triangle: pairs.map(|x| x.1),
                        attachments: p.map(|i| cycle[i]),
                        lengths: arcs(p, k).map(|x| x + 3),
                        side: side_of(t[0]),
                    });
                }
            }
        }
    }

    let classification = match k {
        9 if !claws.is_empty() => Classification::BadTypeI,
        9 if !triclaws.is_empty() => Classification::BadTypeII,
        k if k <= 9 => Classification::Good,
        _ => Classification::NotNineCycle,
    };

    let mut bad_vertices = Vec::new();
    if classification.is_bad() {
        let attachments = claws
            .iter()
            .map(|c| (c.attachments, true))
            .chain(triclaws.iter().map(|t| (t.attachments, false)));
        for (att, is_claw) in attachments {
            let p = att.map(|v| pos[v]);
            let s = shortest_arc(arcs(p, k));
            let (a, b) = (p[s], p[(s + 1) % 3]);
            let pair = if is_claw {
                // Neighbors of the arc ends, stepping away from the arc.
                (cycle[(a + k - 1) % k], cycle[(b + 1) % k])
            } else {
                (cycle[a], cycle[b])
            };
            bad_vertices.push(pair);
        }
    }

    Ok(StructureReport { cycle: cycle.to_vec(), chords, claws, triclaws, classification, bad_vertices })
}

/// A 9-cycle is special when it has a (3,8)-chord or a (5,5,5)-claw.
pub fn is_special_9cycle(g: &PlaneGraph, cycle: &[VertexId]) -> Result<bool, GraphError> {
    if cycle.len() != 9 {
        return Err(GraphError::NotA9Cycle(cycle.len()));
    }
    let report = analyze_cycle(g, cycle)?;
    let chord = report.chords.iter().any(|c| {
        let (a, b) = c.split;
        a.min(b) == 3 && a.max(b) == 8
    });
    let claw = report.claws.iter().any(|c| c.lengths == [5, 5, 5]);
    Ok(chord || claw)
}

/// Whether `cycle` has a chord in `g`.
pub fn has_chord<G: Adjacency>(g: &G, cycle: &[VertexId]) -> bool {
    let k = cycle.len();
    (0..k).any(|i| {
        (i + 2..k).any(|j| !(i == 0 && j == k - 1) && g.has_edge(cycle[i], cycle[j]))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceRole {
    pub face: FaceId,
    pub degree: usize,
    pub internal: bool,
    /// Non-outer face meeting the boundary.
    pub in_f1: bool,
    /// Internal 3-face with at most one 4⁺-vertex.
    pub special3: bool,
    /// Internal 6-face adjacent to a special 3-face.
    pub special6: bool,
    /// 6⁺-face in F1 sharing an edge with a 5⁻-face other than the outer face.
    pub bad: bool,
    /// Vertices not on the face with a neighbor on it.
    pub pendent_vertices: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceRoles {
    pub roles: Vec<FaceRole>,
    /// `(roof, base)`: `base` is an internal all-3-vertex 6-face adjacent to
    /// an internal 3-face whose third vertex is `roof`.
    pub roofs: Vec<(VertexId, FaceId)>,
    pub f0: Vec<FaceId>,
    pub f1: Vec<FaceId>,
}

impl FaceRoles {
    pub fn bases_of(&self, v: VertexId) -> impl Iterator<Item = FaceId> + '_ {
        self.roofs.iter().filter(move |r| r.0 == v).map(|r| r.1)
    }
}

/// Vertices outside face `f` adjacent to a vertex of `f`.
pub fn pendent_vertices(g: &PlaneGraph, f: FaceId) -> Vec<VertexId> {
    let walk = &g.face(f).boundary;
    let mut out = BTreeSet::new();
    for &v in walk {
        for &w in g.rotation(v) {
            if !walk.contains(&w) {
                out.insert(w);
            }
        }
    }
    out.into_iter().collect()
}

fn is_small_inner(g: &PlaneGraph, f: FaceId) -> bool {
    f != g.outer_face_id() && g.face(f).degree() <= 5
}

/// Per-face role table used by the discharging rules.
pub fn classify_faces(g: &PlaneGraph) -> FaceRoles {
    let faces = g.faces();
    let internal: Vec<bool> = (0..faces.len()).map(|f| g.is_internal_face(f)).collect();
    let special3: Vec<bool> = faces
        .iter()
        .map(|f| {
            internal[f.id]
                && f.degree() == 3
                && f.boundary.iter().filter(|&&v| g.degree(v) >= 4).count() <= 1
        })
        .collect();
    let mut roles = Vec::with_capacity(faces.len());
    for f in faces {
        let adj = g.adjacent_faces(f.id);
        let special6 = internal[f.id] && f.degree() == 6 && adj.iter().any(|&h| special3[h]);
        let bad = g.is_in_f1(f.id) && f.degree() >= 6 && adj.iter().any(|&h| is_small_inner(g, h));
        roles.push(FaceRole {
            face: f.id,
            degree: f.degree(),
            internal: internal[f.id],
            in_f1: g.is_in_f1(f.id),
            special3: special3[f.id],
            special6,
            bad,
            pendent_vertices: pendent_vertices(g, f.id),
        });
    }
    let mut roofs = Vec::new();
    for base in faces {
        if !internal[base.id] || base.degree() != 6 || base.boundary.iter().any(|&v| g.degree(v) != 3) {
            continue;
        }
        for h in g.adjacent_faces(base.id) {
            let tri = g.face(h);
            if internal[h] && tri.degree() == 3 {
                for &r in &tri.boundary {
                    if !base.contains(r) && !roofs.contains(&(r, base.id)) {
                        roofs.push((r, base.id));
                    }
                }
            }
        }
    }
    let f0: Vec<FaceId> = g.inner_faces().collect();
    let f1 = f0.iter().copied().filter(|&f| g.is_in_f1(f)).collect();
    FaceRoles { roles, roofs, f0, f1 }
}
