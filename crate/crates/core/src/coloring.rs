//! (I,F)-colorings: verification, splitting F-paths, nicely coloring, and
//! exact solvers for plain and super IF-colorings.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::plane_graph::{Adjacency, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    I,
    F,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::I => "I",
            Color::F => "F",
        })
    }
}

/// Partial map from vertices to colors, indexed by vertex id.
pub type Coloring = Vec<Option<Color>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    AdjacentI,
    FCycle,
    SplittingFPath,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::AdjacentI => "ADJACENT_I",
            ViolationKind::FCycle => "F_CYCLE",
            ViolationKind::SplittingFPath => "SPLITTING_F_PATH",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring is partial: vertex {0} is uncolored")]
    Partial(VertexId),
    #[error("vertex {0} is already colored")]
    AlreadyColored(VertexId),
    #[error("coloring has {got} entries for a graph with {expected} vertices")]
    WrongLength { expected: usize, got: usize },
    #[error("vertex sequence is not a cycle of the graph")]
    NotACycle,
    #[error("vertex {vertex} has {back} previously colored neighbors (at most 2 allowed)")]
    HypothesisViolated { vertex: VertexId, back: usize },
    #[error("precoloring is not an IF-coloring of the cycle's induced subgraph")]
    InvalidPrecoloring(Vec<Violation>),
    #[error("{0} free vertices is too many for exhaustive enumeration")]
    TooLarge(usize),
}

fn check_len<G: Adjacency>(g: &G, phi: &[Option<Color>]) -> Result<(), ColoringError> {
    if phi.len() != g.vertex_count() {
        return Err(ColoringError::WrongLength { expected: g.vertex_count(), got: phi.len() });
    }
    Ok(())
}

fn check_total(phi: &[Option<Color>]) -> Result<(), ColoringError> {
    match phi.iter().position(Option::is_none) {
        Some(v) => Err(ColoringError::Partial(v)),
        None => Ok(()),
    }
}

/// Validates that `q` is a cycle of `g` and returns its membership mask.
pub fn cycle_mask<G: Adjacency>(g: &G, q: &[VertexId]) -> Result<Vec<bool>, ColoringError> {
    let n = g.vertex_count();
    let k = q.len();
    let mut mask = vec![false; n];
    if k < 3 {
        return Err(ColoringError::NotACycle);
    }
    for &v in q {
        if v >= n || mask[v] {
            return Err(ColoringError::NotACycle);
        }
        mask[v] = true;
    }
    if (0..k).any(|i| !g.has_edge(q[i], q[(i + 1) % k])) {
        return Err(ColoringError::NotACycle);
    }
    Ok(mask)
}

/// Cycles of the F-class: one fundamental cycle per non-tree F-edge of a DFS
/// forest.
fn f_cycles<G: Adjacency>(g: &G, phi: &[Option<Color>]) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let is_f = |v: VertexId| phi[v] == Some(Color::F);
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut cycles = Vec::new();
    for root in (0..n).filter(|&v| is_f(v)) {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![root];
        let mut order = Vec::new();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in g.neighbors(v) {
                if is_f(w) && depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        for &v in &order {
            for &w in g.neighbors(v) {
                if is_f(w) && v < w && parent[w] != v && parent[v] != w {
                    cycles.push(tree_cycle(&parent, &depth, v, w));
                }
            }
        }
    }
    cycles
}

fn tree_cycle(parent: &[usize], depth: &[usize], a: VertexId, b: VertexId) -> Vec<VertexId> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// All I-I edges and F-cycles of a total coloring. An empty result means the
/// coloring is an IF-coloring.
pub fn verify_if<G: Adjacency>(g: &G, phi: &[Option<Color>]) -> Result<Vec<Violation>, ColoringError> {
    check_len(g, phi)?;
    check_total(phi)?;
    let mut out = Vec::new();
    for u in 0..g.vertex_count() {
        for &v in g.neighbors(u) {
            if u < v && phi[u] == Some(Color::I) && phi[v] == Some(Color::I) {
                out.push(Violation { kind: ViolationKind::AdjacentI, witness: vec![u, v] });
            }
        }
    }
    for c in f_cycles(g, phi) {
        out.push(Violation { kind: ViolationKind::FCycle, witness: c });
    }
    Ok(out)
}

/// Minimal splitting F-paths of `q`: induced F-paths (the edge between the
/// two ends excepted) whose ends lie on `q` and whose inner vertices, at least
/// one, lie off `q`. Each path is listed once, from its smaller end.
pub fn splitting_f_paths<G: Adjacency>(
    g: &G,
    q: &[VertexId],
    phi: &[Option<Color>],
) -> Result<Vec<Vec<VertexId>>, ColoringError> {
    check_len(g, phi)?;
    let on_q = cycle_mask(g, q)?;
    let is_f = |v: VertexId| phi[v] == Some(Color::F);
    let mut out = Vec::new();
    for &a in q.iter().filter(|&&a| is_f(a)) {
        for &p in g.neighbors(a) {
            if is_f(p) && !on_q[p] {
                let mut path = vec![a, p];
                grow_splitting(g, &on_q, phi, &mut path, &mut out);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn grow_splitting<G: Adjacency>(
    g: &G,
    on_q: &[bool],
    phi: &[Option<Color>],
    path: &mut Vec<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    let a = path[0];
    let last = *path.last().expect("nonempty");
    // Vertices strictly before `last` other than `a` must not touch the new one.
    let clear = |w: VertexId, path: &[VertexId]| path[1..path.len() - 1].iter().all(|&x| !g.has_edge(x, w));
    for &w in g.neighbors(last) {
        if phi[w] != Some(Color::F) || path.contains(&w) {
            continue;
        }
        if on_q[w] {
            if w > a && clear(w, path) {
                let mut done = path.clone();
                done.push(w);
                out.push(done);
            }
        } else if !g.has_edge(a, w) && clear(w, path) {
            path.push(w);
            grow_splitting(g, on_q, phi, path, out);
            path.pop();
        }
    }
}

/// Whether any splitting F-path of the cycle with membership `on_q` exists:
/// some component of the F-vertices off the cycle touches two distinct
/// F-vertices of the cycle.
pub fn has_splitting_path<G: Adjacency>(g: &G, on_q: &[bool], phi: &[Option<Color>]) -> bool {
    let n = g.vertex_count();
    let is_f = |v: VertexId| phi[v] == Some(Color::F);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] || on_q[s] || !is_f(s) {
            continue;
        }
        seen[s] = true;
        let mut anchor = None;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !is_f(w) {
                    continue;
                }
                if on_q[w] {
                    match anchor {
                        None => anchor = Some(w),
                        Some(x) if x != w => return true,
                        _ => {}
                    }
                } else if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    false
}

/// IF-coloring check plus one violation per minimal splitting F-path of `q`.
pub fn verify_super<G: Adjacency>(
    g: &G,
    q: &[VertexId],
    phi: &[Option<Color>],
) -> Result<Vec<Violation>, ColoringError> {
    let mut out = verify_if(g, phi)?;
    for p in splitting_f_paths(g, q, phi)? {
        out.push(Violation { kind: ViolationKind::SplittingFPath, witness: p });
    }
    Ok(out)
}

/// Colors `seq` in order: I when the vertex has no I-neighbor yet, F
/// otherwise.
pub fn nicely_color<G: Adjacency>(
    g: &G,
    phi: &[Option<Color>],
    seq: &[VertexId],
) -> Result<Coloring, ColoringError> {
    check_len(g, phi)?;
    let mut out = phi.to_vec();
    for &v in seq {
        if out[v].is_some() {
            return Err(ColoringError::AlreadyColored(v));
        }
        let has_i = g.neighbors(v).iter().any(|&w| out[w] == Some(Color::I));
        out[v] = Some(if has_i { Color::F } else { Color::I });
    }
    Ok(out)
}

/// Outcome of nicely coloring a sequence on top of a colored subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop1Report {
    pub coloring: Coloring,
    /// Increase of the cycle rank of the F-class.
    pub new_f_cycles: usize,
    pub new_splitting_paths: Vec<Vec<VertexId>>,
    /// Indices `i` where `u_i u_{i+1} v_{i+1}` became an F-path.
    pub pattern_violations: Vec<usize>,
}

impl Prop1Report {
    pub fn holds(&self) -> bool {
        self.new_f_cycles == 0 && self.new_splitting_paths.is_empty() && self.pattern_violations.is_empty()
    }
}

/// Cycle rank |E| - |V| + #components of the subgraph induced by F.
pub fn f_cycle_rank<G: Adjacency>(g: &G, phi: &[Option<Color>]) -> usize {
    let n = g.vertex_count();
    let is_f = |v: VertexId| phi[v] == Some(Color::F);
    let mut dsu = Dsu::new(n);
    let mut rank = 0;
    for u in (0..n).filter(|&u| is_f(u)) {
        for &v in g.neighbors(u) {
            if u < v && is_f(v) && !dsu.union(u, v) {
                rank += 1;
            }
        }
    }
    rank
}

/// Nicely colors `seq` over the colored subgraph H of `phi` and reports any new
/// F-cycle, new splitting F-path of `q`, or forbidden F-pattern along the
/// sequence when it is a path.
pub fn check_prop1<G: Adjacency>(
    g: &G,
    phi: &[Option<Color>],
    seq: &[VertexId],
    q: Option<&[VertexId]>,
) -> Result<Prop1Report, ColoringError> {
    check_len(g, phi)?;
    let n = g.vertex_count();
    let mut placed: Vec<bool> = phi.iter().map(Option::is_some).collect();
    for &u in seq {
        if placed[u] {
            return Err(ColoringError::AlreadyColored(u));
        }
        let back = g.neighbors(u).iter().filter(|&&w| placed[w]).count();
        if back > 2 {
            return Err(ColoringError::HypothesisViolated { vertex: u, back });
        }
        placed[u] = true;
    }
    if let Some(q) = q {
        cycle_mask(g, q)?;
        if let Some(&v) = q.iter().find(|&&v| phi[v].is_none()) {
            return Err(ColoringError::Partial(v));
        }
    }
    let before_paths: BTreeSet<Vec<VertexId>> = match q {
        Some(q) => splitting_f_paths(g, q, phi)?.into_iter().collect(),
        None => BTreeSet::new(),
    };
    let before_rank = f_cycle_rank(g, phi);

    let mut out = phi.to_vec();
    let is_path = seq.windows(2).all(|w| g.has_edge(w[0], w[1]));
    let mut pattern_violations = Vec::new();
    for (i, &u) in seq.iter().enumerate() {
        out = nicely_color(g, &out, &[u])?;
        if is_path && i > 0 && out[u] == Some(Color::F) && out[seq[i - 1]] == Some(Color::F) {
            let prev = seq[i - 1];
            let other_f = g
                .neighbors(u)
                .iter()
                .any(|&w| w != prev && out[w] == Some(Color::F) && was_colored_before(phi, seq, i, w));
            if other_f {
                pattern_violations.push(i - 1);
            }
        }
    }
    let after_rank = f_cycle_rank(g, &out);
    let new_splitting_paths = match q {
        Some(q) => splitting_f_paths(g, q, &out)?
            .into_iter()
            .filter(|p| !before_paths.contains(p))
            .collect(),
        None => Vec::new(),
    };
    debug_assert_eq!(out.len(), n);
    Ok(Prop1Report {
        coloring: out,
        new_f_cycles: after_rank.saturating_sub(before_rank),
        new_splitting_paths,
        pattern_violations,
    })
}

fn was_colored_before(phi: &[Option<Color>], seq: &[VertexId], i: usize, w: VertexId) -> bool {
    phi[w].is_some() || seq[..i].contains(&w)
}

/// Union-find with union by size and an undo log; no path compression so
/// that unions can be rolled back.
#[derive(Debug, Clone)]
pub struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<(usize, usize)>,
}

impl RollbackDsu {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n], log: Vec::new() }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.log.push((ra, rb));
        true
    }

    pub fn checkpoint(&self) -> usize {
        self.log.len()
    }

    pub fn rollback(&mut self, to: usize) {
        while self.log.len() > to {
            let (ra, rb) = self.log.pop().expect("log longer than checkpoint");
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}

/// Plain path-compressing union-find.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        true
    }
}

struct Search<'a, G: Adjacency> {
    g: &'a G,
    order: Vec<VertexId>,
    color: Coloring,
    dsu: RollbackDsu,
    on_q: Option<Vec<bool>>,
    nodes: u64,
}

impl<G: Adjacency> Search<'_, G> {
    fn run(&mut self, idx: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        self.nodes += 1;
        let v = self.order[idx];
        for c in [Color::I, Color::F] {
            let mark = self.dsu.checkpoint();
            if self.try_color(v, c) {
                if self.run(idx + 1) {
                    return true;
                }
            }
            self.color[v] = None;
            self.dsu.rollback(mark);
        }
        false
    }

    fn try_color(&mut self, v: VertexId, c: Color) -> bool {
        let g = self.g;
        match c {
            Color::I => {
                if g.neighbors(v).iter().any(|&w| self.color[w] == Some(Color::I)) {
                    return false;
                }
                self.color[v] = Some(Color::I);
                true
            }
            Color::F => {
                for &w in g.neighbors(v) {
                    if self.color[w] == Some(Color::F) && !self.dsu.union(v, w) {
                        return false;
                    }
                }
                self.color[v] = Some(Color::F);
                match &self.on_q {
                    Some(on_q) if !on_q[v] => !self.splits_through(v, on_q),
                    _ => true,
                }
            }
        }
    }

    /// Whether the F-component of the off-cycle vertex `v` now reaches two
    /// distinct F-vertices of the cycle.
    fn splits_through(&self, v: VertexId, on_q: &[bool]) -> bool {
        let g = self.g;
        let mut seen = vec![v];
        let mut queue = VecDeque::from([v]);
        let mut anchor = None;
        while let Some(x) = queue.pop_front() {
            for &w in g.neighbors(x) {
                if self.color[w] != Some(Color::F) {
                    continue;
                }
                if on_q[w] {
                    match anchor {
                        None => anchor = Some(w),
                        Some(a) if a != w => return true,
                        _ => {}
                    }
                } else if !seen.contains(&w) {
                    seen.push(w);
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

/// BFS order over the uncolored vertices, starting from the colored ones (or
/// vertex 0 when nothing is colored).
fn search_order<G: Adjacency>(g: &G, colored: &[Option<Color>]) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut seen: Vec<bool> = colored.iter().map(Option::is_some).collect();
    let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| seen[v]).collect();
    let mut order = Vec::new();
    for start in 0..n {
        if queue.is_empty() && !seen[start] {
            seen[start] = true;
            order.push(start);
            queue.push_back(start);
        }
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// An IF-coloring of `g`, or `None` when none exists (the search is
/// exhaustive).
pub fn solve_if<G: Adjacency>(g: &G) -> Option<Coloring> {
    let n = g.vertex_count();
    let color = vec![None; n];
    let mut search = Search {
        g,
        order: search_order(g, &color),
        color,
        dsu: RollbackDsu::new(n),
        on_q: None,
        nodes: 0,
    };
    search.run(0).then_some(search.color)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendOutcome {
    /// A super IF-coloring agreeing with the precoloring, or `None` when the
    /// exhaustive search found none.
    pub coloring: Option<Coloring>,
    /// The cycle has a chord; the solver still runs.
    pub c0_has_chord: bool,
    pub search_nodes: u64,
}

/// Precoloring of `c0` (aligned with its vertex order) as a partial coloring.
fn precoloring<G: Adjacency>(g: &G, c0: &[VertexId], phi0: &[Color]) -> Result<Coloring, ColoringError> {
    if phi0.len() != c0.len() {
        return Err(ColoringError::WrongLength { expected: c0.len(), got: phi0.len() });
    }
    let mut color = vec![None; g.vertex_count()];
    for (&v, &c) in c0.iter().zip(phi0) {
        color[v] = Some(c);
    }
    Ok(color)
}

/// Violations of the precoloring on the subgraph induced by the cycle.
fn precoloring_violations<G: Adjacency>(g: &G, c0: &[VertexId], color: &[Option<Color>]) -> Vec<Violation> {
    let mut sub = crate::plane_graph::SimpleGraph::new(c0.len());
    for (i, &u) in c0.iter().enumerate() {
        for (j, &v) in c0.iter().enumerate() {
            if i < j && g.has_edge(u, v) {
                sub.add_edge(i, j);
            }
        }
    }
    let local: Coloring = c0.iter().map(|&v| color[v]).collect();
    verify_if(&sub, &local)
        .expect("local coloring is total")
        .into_iter()
        .map(|mut viol| {
            viol.witness = viol.witness.iter().map(|&i| c0[i]).collect();
            viol
        })
        .collect()
}

/// Extends an IF-coloring of the cycle `c0` to a super IF-coloring of
/// `(g, c0)`.
pub fn extend_super<G: Adjacency>(
    g: &G,
    c0: &[VertexId],
    phi0: &[Color],
) -> Result<ExtendOutcome, ColoringError> {
    let on_q = cycle_mask(g, c0)?;
    let color = precoloring(g, c0, phi0)?;
    let bad = precoloring_violations(g, c0, &color);
    if !bad.is_empty() {
        return Err(ColoringError::InvalidPrecoloring(bad));
    }
    let n = g.vertex_count();
    let mut dsu = RollbackDsu::new(n);
    for &u in c0 {
        for &v in g.neighbors(u) {
            if u < v && on_q[v] && color[u] == Some(Color::F) && color[v] == Some(Color::F) {
                dsu.union(u, v);
            }
        }
    }
    let c0_has_chord = crate::structures::has_chord(g, c0);
    let mut search = Search { g, order: search_order(g, &color), color, dsu, on_q: Some(on_q), nodes: 0 };
    let found = search.run(0);
    Ok(ExtendOutcome {
        coloring: found.then_some(search.color),
        c0_has_chord,
        search_nodes: search.nodes,
    })
}

/// Exhaustive enumeration, for use as an oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForce {
    /// Number of valid completions.
    pub count: u64,
    /// The first valid completion in enumeration order.
    pub first: Option<Coloring>,
}

pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Enumerates all 2^free completions. With `cycle` given, the cycle is
/// precolored and completions must be super IF-colorings of `(g, cycle)`.
pub fn brute_force_if<G: Adjacency>(
    g: &G,
    cycle: Option<(&[VertexId], &[Color])>,
) -> Result<BruteForce, ColoringError> {
    let n = g.vertex_count();
    let base = match cycle {
        Some((c0, phi0)) => {
            cycle_mask(g, c0)?;
            precoloring(g, c0, phi0)?
        }
        None => vec![None; n],
    };
    let free: Vec<VertexId> = (0..n).filter(|&v| base[v].is_none()).collect();
    if free.len() > BRUTE_FORCE_LIMIT {
        return Err(ColoringError::TooLarge(free.len()));
    }
    let edges: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| g.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    let mut count = 0;
    let mut first = None;
    let mut phi = base.clone();
    for mask in 0u64..(1u64 << free.len()) {
        for (bit, &v) in free.iter().enumerate() {
            phi[v] = Some(if mask >> bit & 1 == 1 { Color::F } else { Color::I });
        }
        if !is_if_coloring(n, &edges, &phi) {
            continue;
        }
        if let Some((c0, _)) = cycle {
            if !splitting_f_paths(g, c0, &phi)?.is_empty() {
                continue;
            }
        }
        count += 1;
        if first.is_none() {
            first = Some(phi.clone());
        }
    }
    Ok(BruteForce { count, first })
}

/// Independent check: no I-I edge, and the F-class is a forest, i.e. it has
/// |V_F| - (number of components) edges.
fn is_if_coloring(n: usize, edges: &[(VertexId, VertexId)], phi: &[Option<Color>]) -> bool {
    let mut f_edges = 0;
    let mut dsu = Dsu::new(n);
    let mut merges = 0;
    for &(u, v) in edges {
        match (phi[u], phi[v]) {
            (Some(Color::I), Some(Color::I)) => return false,
            (Some(Color::F), Some(Color::F)) => {
                f_edges += 1;
                if dsu.union(u, v) {
                    merges += 1;
                }
            }
            _ => {}
        }
    }
    // Components among F vertices = |V_F| - merges, so forest iff edges == merges.
    f_edges == merges
}

/// Parses a coloring file: lines `v I` or `v F`; blank lines and `#` comments
/// are ignored.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring, String> {
    let mut out = vec![None; n];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(v), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(format!("line {}: expected `vertex color`", lineno + 1));
        };
        let v: usize = v.parse().map_err(|_| format!("line {}: bad vertex `{v}`", lineno + 1))?;
        if v >= n {
            return Err(format!("line {}: vertex {v} out of range", lineno + 1));
        }
        out[v] = Some(match c {
            "I" | "i" => Color::I,
            "F" | "f" => Color::F,
            _ => return Err(format!("line {}: bad color `{c}`", lineno + 1)),
        });
    }
    Ok(out)
}

pub fn format_coloring(phi: &[Option<Color>]) -> String {
    let mut s = String::new();
    for (v, c) in phi.iter().enumerate() {
        if let Some(c) = c {
            s.push_str(&format!("{v} {c}\n"));
        }
    }
    s
}
