//! Plane graphs given as rotation systems.
//!
//! A [`PlaneGraph`] stores, for every vertex, its neighbors in counterclockwise
//! order. Faces are traced with the "face on the left" convention: the dart
//! `u -> v` is followed by `v -> w` where `w` precedes `u` in the rotation of
//! `v`. Bounded faces of a straight-line drawing therefore come out
//! counterclockwise and the outer face clockwise.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

pub type VertexId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no edges")]
    Empty,
    #[error("vertex {0} lists neighbor {1}, which is out of range")]
    OutOfRange(VertexId, VertexId),
    #[error("graph is not simple at vertex {0} (loop or repeated neighbor {1})")]
    NotSimple(VertexId, VertexId),
    #[error("rotation is not symmetric: {0} lists {1} but {1} does not list {0}")]
    NonSymmetric(VertexId, VertexId),
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(VertexId),
    #[error("rotation system is not a planar embedding (V - E + F = {0})")]
    EulerViolation(i64),
    #[error("outer face hint does not match any face of the embedding")]
    BadOuterFace,
    #[error("vertex sequence is not a cycle of the graph")]
    NotACycle,
    #[error("cycle has length {0}, expected 9")]
    NotA9Cycle(usize),
    #[error("{0}")]
    BadMutation(String),
}

/// A face given by its boundary walk. `boundary[i] -> boundary[i + 1]` is a
/// dart of the face; a cut edge shows up twice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceWalk {
    pub id: FaceId,
    pub boundary: Vec<VertexId>,
}

impl FaceWalk {
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }

    /// True when the walk visits every vertex once, i.e. the face is bounded
    /// by a cycle.
    pub fn is_simple(&self) -> bool {
        let mut seen = self.boundary.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.boundary.len() && self.boundary.len() >= 3
    }

    pub fn darts(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let k = self.boundary.len();
        (0..k).map(move |i| (self.boundary[i], self.boundary[(i + 1) % k]))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.boundary.contains(&v)
    }
}

/// Connected simple plane graph with a designated outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rotation: Vec<Vec<VertexId>>,
    faces: Vec<FaceWalk>,
    /// `dart_face[v][i]` is the face to the left of `v -> rotation[v][i]`.
    dart_face: Vec<Vec<FaceId>>,
    outer: FaceId,
    outer_defaulted: bool,
    on_outer: Vec<bool>,
    edge_count: usize,
}

/// Neighborhood access shared by plane graphs and plain adjacency lists.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: VertexId) -> &[VertexId];

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).contains(&v)
    }

    fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }
}

/// Plain undirected graph as adjacency lists, for instances that need no
/// embedding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<VertexId>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds `uv` unless it is a loop or already present. Returns whether an
    /// edge was added.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        if u == v || self.adj[u].contains(&v) {
            return false;
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        true
    }
}

impl Adjacency for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }
}

impl Adjacency for PlaneGraph {
    fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }
}

fn position(rot: &[VertexId], u: VertexId) -> Option<usize> {
    rot.iter().position(|&x| x == u)
}

fn same_cyclic_sequence(a: &[VertexId], b: &[VertexId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let k = a.len();
    (0..k).any(|shift| (0..k).all(|i| a[(i + shift) % k] == b[i]))
}

impl PlaneGraph {
    /// Validates a rotation system and traces its faces.
    ///
    /// `outer_hint` names the outer face by its boundary walk (either
    /// direction, any starting point). Without a hint the face of maximum
    /// degree is used, lowest id first.
    pub fn build(
        rotation: Vec<Vec<VertexId>>,
        outer_hint: Option<&[VertexId]>,
    ) -> Result<Self, GraphError> {
        let traced = Traced::new(rotation)?;
        let outer = match outer_hint {
            Some(hint) => {
                let reversed: Vec<_> = hint.iter().rev().copied().collect();
                traced
                    .faces
                    .iter()
                    .find(|f| {
                        same_cyclic_sequence(&f.boundary, hint)
                            || same_cyclic_sequence(&f.boundary, &reversed)
                    })
                    .map(|f| f.id)
                    .ok_or(GraphError::BadOuterFace)?
            }
            None => traced.max_degree_face(),
        };
        Ok(traced.finish(outer, outer_hint.is_none()))
    }

    /// Builds a graph whose outer face is the face to the left of the dart
    /// `u -> v`.
    pub fn build_with_outer_dart(
        rotation: Vec<Vec<VertexId>>,
        dart: (VertexId, VertexId),
    ) -> Result<Self, GraphError> {
        let traced = Traced::new(rotation)?;
        let (u, v) = dart;
        let i = traced
            .rotation
            .get(u)
            .and_then(|r| position(r, v))
            .ok_or(GraphError::BadOuterFace)?;
        let outer = traced.dart_face[u][i];
        Ok(traced.finish(outer, false))
    }

    /// Embeds a straight-line drawing: rotations are sorted by angle and the
    /// unbounded face becomes the outer face.
    pub fn from_straight_line(
        points: &[(f64, f64)],
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let n = points.len();
        let mut rotation = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange(u.min(v), u.max(v)));
            }
            rotation[u].push(v);
            rotation[v].push(u);
        }
        for (v, rot) in rotation.iter_mut().enumerate() {
            let (x0, y0) = points[v];
            rot.sort_by(|&a, &b| {
                let ta = (points[a].1 - y0).atan2(points[a].0 - x0);
                let tb = (points[b].1 - y0).atan2(points[b].0 - x0);
                ta.total_cmp(&tb)
            });
        }
        let traced = Traced::new(rotation)?;
        let area = |f: &FaceWalk| -> f64 {
            f.darts()
                .map(|(a, b)| points[a].0 * points[b].1 - points[b].0 * points[a].1)
                .sum::<f64>()
        };
        let outer = traced
            .faces
            .iter()
            .min_by(|a, b| area(a).total_cmp(&area(b)))
            .map(|f| f.id)
            .ok_or(GraphError::Empty)?;
        Ok(traced.finish(outer, false))
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<VertexId>] {
        &self.rotation
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &FaceWalk {
        &self.faces[f]
    }

    pub fn outer_face_id(&self) -> FaceId {
        self.outer
    }

    pub fn outer_face(&self) -> &FaceWalk {
        &self.faces[self.outer]
    }

    /// True when no outer-face hint was supplied and the maximum-degree face
    /// was taken instead.
    pub fn outer_defaulted(&self) -> bool {
        self.outer_defaulted
    }

    /// Undirected edges as `(u, v)` with `u < v`, in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.rotation
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Face to the left of the dart `u -> v`.
    pub fn face_of_dart(&self, u: VertexId, v: VertexId) -> Option<FaceId> {
        position(&self.rotation[u], v).map(|i| self.dart_face[u][i])
    }

    /// The two faces on either side of the edge `uv` (equal for a cut edge).
    pub fn faces_of_edge(&self, u: VertexId, v: VertexId) -> Option<(FaceId, FaceId)> {
        Some((self.face_of_dart(u, v)?, self.face_of_dart(v, u)?))
    }

    /// Distinct faces incident with `v`, in rotation order.
    pub fn incident_faces(&self, v: VertexId) -> Vec<FaceId> {
        let mut out = Vec::with_capacity(self.dart_face[v].len());
        for &f in &self.dart_face[v] {
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }

    /// Distinct faces sharing at least one edge with `f`, excluding `f`.
    pub fn adjacent_faces(&self, f: FaceId) -> Vec<FaceId> {
        let mut out = Vec::new();
        for (u, v) in self.faces[f].darts() {
            if let Some(g) = self.face_of_dart(v, u) {
                if g != f && !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// Whether faces `f` and `g` share an edge.
    pub fn faces_adjacent(&self, f: FaceId, g: FaceId) -> bool {
        f != g
            && self.faces[f]
                .darts()
                .any(|(u, v)| self.face_of_dart(v, u) == Some(g))
    }

    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        self.on_outer[v]
    }

    /// A vertex is internal when it does not lie on the outer face.
    pub fn is_internal_vertex(&self, v: VertexId) -> bool {
        !self.on_outer[v]
    }

    /// A face is internal when none of its vertices is a boundary vertex.
    /// The outer face is never internal.
    pub fn is_internal_face(&self, f: FaceId) -> bool {
        f != self.outer && self.faces[f].boundary.iter().all(|&v| !self.on_outer[v])
    }

    /// Non-outer faces (F0).
    pub fn inner_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer)
    }

    /// Non-outer faces meeting the outer face's vertex set (F1).
    pub fn is_in_f1(&self, f: FaceId) -> bool {
        f != self.outer && self.faces[f].boundary.iter().any(|&v| self.on_outer[v])
    }

    /// Checks that `cycle` lists distinct vertices, consecutive ones adjacent.
    pub fn check_cycle(&self, cycle: &[VertexId]) -> Result<(), GraphError> {
        let k = cycle.len();
        let n = self.rotation.len();
        if k < 3 || cycle.iter().any(|&v| v >= n) {
            return Err(GraphError::NotACycle);
        }
        let mut sorted = cycle.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return Err(GraphError::NotACycle);
        }
        for i in 0..k {
            if !self.has_edge(cycle[i], cycle[(i + 1) % k]) {
                return Err(GraphError::NotACycle);
            }
        }
        Ok(())
    }

    /// Splits the vertices off `cycle` into those inside and outside it.
    ///
    /// Faces are grouped into the two regions bounded by the cycle by a flood
    /// fill across edges not on the cycle; the region holding the outer face
    /// is the exterior.
    pub fn cycle_sides(
        &self,
        cycle: &[VertexId],
    ) -> Result<(Vec<VertexId>, Vec<VertexId>), GraphError> {
        self.check_cycle(cycle)?;
        let k = cycle.len();
        let on_cycle_edge = |u: VertexId, v: VertexId| {
            (0..k).any(|i| {
                let (a, b) = (cycle[i], cycle[(i + 1) % k]);
                (a == u && b == v) || (a == v && b == u)
            })
        };
        let start = self
            .face_of_dart(cycle[0], cycle[1])
            .ok_or(GraphError::NotACycle)?;
        let mut region = vec![false; self.faces.len()];
        region[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for (u, v) in self.faces[f].darts() {
                if on_cycle_edge(u, v) {
                    continue;
                }
                if let Some(g) = self.face_of_dart(v, u) {
                    if !region[g] {
                        region[g] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
        let outer_region = region[self.outer];
        let mut interior = Vec::new();
        let mut exterior = Vec::new();
        for v in 0..self.rotation.len() {
            if cycle.contains(&v) {
                continue;
            }
            let f = self.dart_face[v][0];
            if region[f] == outer_region {
                exterior.push(v);
            } else {
                interior.push(v);
            }
        }
        Ok((interior, exterior))
    }

    /// Rebuilds after deleting the edge `uv`, keeping the outer face on the
    /// same side of `keep_outer`.
    pub fn without_edge(
        &self,
        u: VertexId,
        v: VertexId,
        keep_outer: (VertexId, VertexId),
    ) -> Result<Self, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::BadMutation(format!("no edge {u}-{v}")));
        }
        let mut rotation = self.rotation.clone();
        rotation[u].retain(|&x| x != v);
        rotation[v].retain(|&x| x != u);
        Self::build_with_outer_dart(rotation, keep_outer)
    }

    /// Rebuilds after inserting an edge between the corners `i` and `j` of
    /// face `f` (indices into its boundary walk). The new edge runs through
    /// the interior of `f`.
    pub fn with_edge_in_face(&self, f: FaceId, i: usize, j: usize) -> Result<Self, GraphError> {
        let walk = &self.faces[f].boundary;
        let k = walk.len();
        if i >= k || j >= k {
            return Err(GraphError::BadMutation("corner index out of range".into()));
        }
        let (a, b) = (walk[i], walk[j]);
        if a == b || self.has_edge(a, b) {
            return Err(GraphError::BadMutation(format!("cannot join {a} and {b}")));
        }
        let mut rotation = self.rotation.clone();
        // The corner at walk[i] sits between the incoming and outgoing darts;
        // the new neighbor goes right before the incoming neighbor.
        for (x, y, idx) in [(a, b, i), (b, a, j)] {
            let prev = walk[(idx + k - 1) % k];
            let p = position(&rotation[x], prev).expect("walk darts are edges");
            rotation[x].insert(p, y);
        }
        let outer_dart = self.outer_face().darts().next().expect("outer face has a dart");
        let keep = if f == self.outer { (a, b) } else { outer_dart };
        Self::build_with_outer_dart(rotation, keep)
    }

    /// Replaces the vertex `v` of degree 3 by a triangle; the new vertices take
    /// ids `v`, `n`, `n + 1`.
    pub fn truncate_vertex(&self, v: VertexId) -> Result<Self, GraphError> {
        if self.degree(v) != 3 {
            return Err(GraphError::BadMutation(format!("vertex {v} is not a 3-vertex")));
        }
        let n = self.rotation.len();
        let nb = self.rotation[v].clone();
        let t = [v, n, n + 1];
        let mut rotation = self.rotation.clone();
        rotation.push(Vec::new());
        rotation.push(Vec::new());
        for i in 0..3 {
            let x = nb[i];
            let p = position(&rotation[x], v).expect("symmetric rotation");
            rotation[x][p] = t[i];
            rotation[t[i]] = vec![x, t[(i + 1) % 3], t[(i + 2) % 3]];
        }
        let (a, b) = self.outer_face().darts().next().expect("outer face has a dart");
        let replacement = |x: VertexId| t[nb.iter().position(|&y| y == x).expect("neighbor of v")];
        let dart = if a == v {
            (replacement(b), b)
        } else if b == v {
            (a, replacement(a))
        } else {
            (a, b)
        };
        Self::build_with_outer_dart(rotation, dart)
    }

    /// Merges the non-adjacent vertices `a` and `b`, which must share the face
    /// `f`. The merged vertex keeps id `a`; ids above `b` shift down by one.
    pub fn identify(&self, a: VertexId, b: VertexId, f: FaceId) -> Result<Self, GraphError> {
        if a == b || self.has_edge(a, b) {
            return Err(GraphError::BadMutation(format!("cannot identify {a} and {b}")));
        }
        let walk = &self.faces[f].boundary;
        let k = walk.len();
        let ia = walk.iter().position(|&x| x == a);
        let ib = walk.iter().position(|&x| x == b);
        let (Some(ia), Some(ib)) = (ia, ib) else {
            return Err(GraphError::BadMutation(format!("{a} and {b} do not share face {f}")));
        };
        let shared = self.rotation[a].iter().any(|x| self.rotation[b].contains(x));
        if shared {
            return Err(GraphError::BadMutation("identification creates parallel edges".into()));
        }
        let starting_at = |x: VertexId, from: VertexId| -> Vec<VertexId> {
            let r = &self.rotation[x];
            let p = position(r, from).expect("walk darts are edges");
            (0..r.len()).map(|i| r[(p + i) % r.len()]).collect()
        };
        // a's neighbors from its incoming face neighbor around to its outgoing
        // one, then b's, so both wedges open into f.
        let mut merged = starting_at(a, walk[(ia + k - 1) % k]);
        merged.extend(starting_at(b, walk[(ib + k - 1) % k]));
        let mut rotation = self.rotation.clone();
        rotation[a] = merged;
        for x in 0..rotation.len() {
            if x == a {
                continue;
            }
            for y in rotation[x].iter_mut() {
                if *y == b {
                    *y = a;
                }
            }
        }
        rotation.remove(b);
        let relabel = |x: VertexId| if x > b { x - 1 } else { x };
        for rot in rotation.iter_mut() {
            for y in rot.iter_mut() {
                *y = relabel(*y);
            }
        }
        let outer = self.outer_face();
        let (u, v) = outer
            .darts()
            .find(|&(u, v)| u != b && v != b)
            .ok_or_else(|| GraphError::BadMutation("outer face vanishes".into()))?;
        Self::build_with_outer_dart(rotation, (relabel(u), relabel(v)))
    }

    /// Removes the vertices in `remove`, relabelling the rest in order.
    /// Returns the new graph and the old-to-new id map.
    pub fn without_vertices(
        &self,
        remove: &[VertexId],
    ) -> Result<(Self, Vec<Option<VertexId>>), GraphError> {
        let n = self.rotation.len();
        let mut map = vec![None; n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !remove.contains(&v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let rotation: Vec<Vec<VertexId>> = (0..n)
            .filter(|v| map[*v].is_some())
            .map(|v| self.rotation[v].iter().filter_map(|&u| map[u]).collect())
            .collect();
        let dart = self
            .outer_face()
            .darts()
            .find_map(|(u, v)| Some((map[u]?, map[v]?)))
            .ok_or_else(|| GraphError::BadMutation("outer face vanishes".into()))?;
        Ok((Self::build_with_outer_dart(rotation, dart)?, map))
    }
}

/// Validated rotation system with traced faces, before the outer face is
/// fixed.
struct Traced {
    rotation: Vec<Vec<VertexId>>,
    faces: Vec<FaceWalk>,
    dart_face: Vec<Vec<FaceId>>,
    edge_count: usize,
}

impl Traced {
    fn new(rotation: Vec<Vec<VertexId>>) -> Result<Self, GraphError> {
        let n = rotation.len();
        let mut degree_sum = 0;
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &u) in rot.iter().enumerate() {
                if u >= n {
                    return Err(GraphError::OutOfRange(v, u));
                }
                if u == v || rot[..i].contains(&u) {
                    return Err(GraphError::NotSimple(v, u));
                }
                if !rotation[u].contains(&v) {
                    return Err(GraphError::NonSymmetric(v, u));
                }
            }
            degree_sum += rot.len();
        }
        if degree_sum == 0 {
            return Err(GraphError::Empty);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &u in &rotation[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(GraphError::Disconnected(v));
        }

        let mut dart_face: Vec<Vec<FaceId>> = rotation.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut faces = Vec::new();
        for v in 0..n {
            for i in 0..rotation[v].len() {
                if dart_face[v][i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut boundary = Vec::new();
                let (mut x, mut j) = (v, i);
                loop {
                    dart_face[x][j] = id;
                    boundary.push(x);
                    let y = rotation[x][j];
                    let back = position(&rotation[y], x).expect("checked symmetric");
                    let d = rotation[y].len();
                    x = y;
                    j = (back + d - 1) % d;
                    if x == v && j == i {
                        break;
                    }
                }
                faces.push(FaceWalk { id, boundary });
            }
        }
        let edge_count = degree_sum / 2;
        let euler = n as i64 - edge_count as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(GraphError::EulerViolation(euler));
        }
        Ok(Self { rotation, faces, dart_face, edge_count })
    }

    fn max_degree_face(&self) -> FaceId {
        let mut best = 0;
        for f in &self.faces {
            if f.degree() > self.faces[best].degree() {
                best = f.id;
            }
        }
        best
    }

    fn finish(self, outer: FaceId, outer_defaulted: bool) -> PlaneGraph {
        let mut on_outer = vec![false; self.rotation.len()];
        for &v in &self.faces[outer].boundary {
            on_outer[v] = true;
        }
        PlaneGraph {
            rotation: self.rotation,
            faces: self.faces,
            dart_face: self.dart_face,
            outer,
            outer_defaulted,
            on_outer,
            edge_count: self.edge_count,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle_graph(n: usize) -> PlaneGraph {
        let rotation = (0..n).map(|v| vec![(v + 1) % n, (v + n - 1) % n]).collect();
        PlaneGraph::build(rotation, None).unwrap()
    }

    fn sorted_degrees(g: &PlaneGraph) -> Vec<usize> {
        let mut d: Vec<_> = g.faces().iter().map(FaceWalk::degree).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = cycle_graph(3);
        assert_eq!(sorted_degrees(&g), vec![3, 3]);
    }

    #[test]
    fn hexagon_satisfies_euler() {
        let g = cycle_graph(6);
        assert_eq!(sorted_degrees(&g), vec![6, 6]);
        assert_eq!(6 - g.edge_count() + g.face_count(), 2);
        assert!((0..6).all(|v| !g.is_internal_vertex(v)));
        let (int, ext) = g.cycle_sides(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(int.is_empty() && ext.is_empty());
    }

    #[test]
    fn star_has_one_face_with_every_edge_twice() {
        let rotation = vec![vec![1, 2, 3], vec![0], vec![0], vec![0]];
        let g = PlaneGraph::build(rotation, None).unwrap();
        assert_eq!(sorted_degrees(&g), vec![6]);
    }

    #[test]
    fn rejects_bad_rotations() {
        assert_eq!(
            PlaneGraph::build(vec![vec![1], vec![]], None),
            Err(GraphError::NonSymmetric(0, 1))
        );
        assert_eq!(
            PlaneGraph::build(vec![vec![1], vec![0], vec![3], vec![2]], None),
            Err(GraphError::Disconnected(2))
        );
        // K4 with a rotation that is not planar.
        let k4 = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]];
        assert!(matches!(PlaneGraph::build(k4, None), Err(GraphError::EulerViolation(_))));
        let tri = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
        assert_eq!(PlaneGraph::build(tri, Some(&[0, 1, 3])), Err(GraphError::BadOuterFace));
        assert_eq!(PlaneGraph::build(vec![vec![0]], None), Err(GraphError::NotSimple(0, 0)));
    }

    #[test]
    fn outer_hint_accepts_either_direction() {
        let rotation: Vec<Vec<usize>> = (0..5).map(|v| vec![(v + 1) % 5, (v + 4) % 5]).collect();
        let a = PlaneGraph::build(rotation.clone(), Some(&[2, 3, 4, 0, 1])).unwrap();
        let b = PlaneGraph::build(rotation, Some(&[1, 0, 4, 3, 2])).unwrap();
        assert!(!a.outer_defaulted());
        assert_eq!(a.outer_face().degree(), 5);
        assert_eq!(b.outer_face().degree(), 5);
    }

    #[test]
    fn straight_line_embedding_finds_unbounded_face() {
        // Square with one diagonal.
        let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let g = PlaneGraph::from_straight_line(&pts, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
            .unwrap();
        assert_eq!(g.outer_face().degree(), 4);
        assert_eq!(sorted_degrees(&g), vec![3, 3, 4]);
    }

    #[test]
    fn cycle_sides_of_wheel_rim() {
        // Hub 0 inside the 5-cycle 1..5.
        let pts = [(0.0, 0.0), (1.0, 0.0), (0.3, 0.95), (-0.8, 0.6), (-0.8, -0.6), (0.3, -0.95)];
        let mut edges = vec![];
        for i in 1..=5 {
            edges.push((0, i));
            edges.push((i, i % 5 + 1));
        }
        let g = PlaneGraph::from_straight_line(&pts, &edges).unwrap();
        assert_eq!(g.cycle_sides(&[1, 2, 3, 4, 5]).unwrap(), (vec![0], vec![]));
        // A triangle through the hub has the remaining rim vertices outside.
        let (int, ext) = g.cycle_sides(&[0, 1, 2]).unwrap();
        assert!(int.is_empty());
        assert_eq!(ext, vec![3, 4, 5]);
        assert_eq!(g.cycle_sides(&[1, 3, 2]), Err(GraphError::NotACycle));
    }

    #[test]
    fn mutations_keep_a_valid_embedding() {
        let g = cycle_graph(6);
        let inner = (0..2).find(|&f| f != g.outer_face_id()).unwrap();
        let h = g.with_edge_in_face(inner, 0, 3).unwrap();
        assert_eq!(sorted_degrees(&h), vec![4, 4, 6]);
        assert_eq!(h.outer_face().degree(), 6);
        let (a, b) = (g.face(inner).boundary[0], g.face(inner).boundary[3]);
        let back = h.without_edge(a, b, (0, 1)).unwrap();
        assert_eq!(sorted_degrees(&back), vec![6, 6]);

        let theta = PlaneGraph::from_straight_line(
            &[(0.0, 0.0), (1.0, 0.0), (-0.5, 0.9), (-0.5, -0.9)],
            &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)],
        )
        .unwrap();
        let t = theta.truncate_vertex(0).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(sorted_degrees(&t), vec![3, 3, 4, 4, 4]);
        assert_eq!(t.outer_face().degree(), 3);
    }
}
