//! Metric computations on graphs and vertex subspaces.
//!
//! A [`Subspace`] is a vertex subset of a parent graph together with the
//! metric it carries: the ambient graph distance, or the path metric of the
//! induced subgraph. All traversals go through [`Explorer`], which owns
//! reusable scratch buffers so repeated bounded searches do not reallocate.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexId};

pub const INF: f64 = f64::INFINITY;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricMode {
    /// Distances measured in the whole parent graph.
    Ambient,
    /// Distances measured along edges with both endpoints in the subset.
    InducedPath,
}

/// A vertex subset of a graph with a declared metric.
#[derive(Clone, Debug)]
pub struct Subspace<'g> {
    graph: &'g Graph,
    members: Option<Vec<bool>>,
    vertices: Vec<VertexId>,
    mode: MetricMode,
}

impl<'g> Subspace<'g> {
    /// The whole graph with its own metric.
    pub fn whole(graph: &'g Graph) -> Self {
        Subspace {
            graph,
            members: None,
            vertices: (0..graph.vertex_count() as VertexId).collect(),
            mode: MetricMode::Ambient,
        }
    }

    pub fn new(
        graph: &'g Graph,
        vertices: impl IntoIterator<Item = VertexId>,
        mode: MetricMode,
    ) -> Result<Self> {
        let mut members = vec![false; graph.vertex_count()];
        let mut list = Vec::new();
        for v in vertices {
            if !graph.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
            if !members[v as usize] {
                members[v as usize] = true;
                list.push(v);
            }
        }
        list.sort_unstable();
        Ok(Subspace {
            graph,
            members: Some(members),
            vertices: list,
            mode,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn mode(&self) -> MetricMode {
        self.mode
    }

    /// Member vertices in increasing order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match &self.members {
            Some(m) => m.get(v as usize).copied().unwrap_or(false),
            None => self.graph.contains(v),
        }
    }

    /// Whether shortest paths of this metric may pass through `v`.
    #[inline]
    pub fn passable(&self, v: VertexId) -> bool {
        match (self.mode, &self.members) {
            (MetricMode::InducedPath, Some(m)) => m[v as usize],
            _ => true,
        }
    }

    pub(crate) fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
struct HeapItem {
    dist: f64,
    vertex: VertexId,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reusable single- or multi-source shortest path search.
///
/// Breadth-first for unit graphs, binary-heap Dijkstra otherwise. Vertices
/// are settled in nondecreasing distance order; each settled vertex also
/// records which source reached it first (its Voronoi cell).
pub struct Explorer {
    dist: Vec<f64>,
    origin: Vec<u32>,
    stamp: Vec<u32>,
    done: Vec<u32>,
    epoch: u32,
    settled: Vec<VertexId>,
    queue: VecDeque<VertexId>,
    heap: BinaryHeap<HeapItem>,
}

impl Explorer {
    pub fn new(n: usize) -> Self {
        Explorer {
            dist: vec![INF; n],
            origin: vec![0; n],
            stamp: vec![0; n],
            done: vec![0; n],
            epoch: 0,
            settled: Vec::new(),
            queue: VecDeque::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.done.fill(0);
            self.epoch = 1;
        }
        self.settled.clear();
        self.queue.clear();
        self.heap.clear();
    }

    /// Runs a search from `sources` (vertex, label) up to `radius` inclusive.
    ///
    /// `visit` is called once per settled vertex with its distance; returning
    /// `true` stops the search early. Sources that are not passable in
    /// `space` are ignored.
    pub fn explore<F>(
        &mut self,
        space: &Subspace<'_>,
        sources: impl IntoIterator<Item = (VertexId, u32)>,
        radius: f64,
        mut visit: F,
    ) where
        F: FnMut(VertexId, f64) -> bool,
    {
        self.next_epoch();
        let graph = space.graph();
        let epoch = self.epoch;
        for (s, label) in sources {
            if !space.passable(s) || self.stamp[s as usize] == epoch {
                continue;
            }
            self.stamp[s as usize] = epoch;
            self.dist[s as usize] = 0.0;
            self.origin[s as usize] = label;
            if graph.is_weighted() {
                self.heap.push(HeapItem {
                    dist: 0.0,
                    vertex: s,
                });
            } else {
                self.queue.push_back(s);
            }
        }

        if graph.is_weighted() {
            while let Some(HeapItem { dist, vertex }) = self.heap.pop() {
                let vi = vertex as usize;
                if self.done[vi] == epoch || dist > self.dist[vi] {
                    continue;
                }
                self.done[vi] = epoch;
                self.settled.push(vertex);
                if visit(vertex, dist) {
                    return;
                }
                let label = self.origin[vi];
                for (w, len) in graph.weighted_neighbors(vertex) {
                    let wi = w as usize;
                    if !space.passable(w) || self.done[wi] == epoch {
                        continue;
                    }
                    let nd = dist + len;
                    if nd > radius {
                        continue;
                    }
                    if self.stamp[wi] != epoch || nd < self.dist[wi] {
                        self.stamp[wi] = epoch;
                        self.dist[wi] = nd;
                        self.origin[wi] = label;
                        self.heap.push(HeapItem {
                            dist: nd,
                            vertex: w,
                        });
                    }
                }
            }
        } else {
            while let Some(vertex) = self.queue.pop_front() {
                let vi = vertex as usize;
                let dist = self.dist[vi];
                self.done[vi] = epoch;
                self.settled.push(vertex);
                if visit(vertex, dist) {
                    return;
                }
                let nd = dist + 1.0;
                if nd > radius {
                    continue;
                }
                let label = self.origin[vi];
                for w in graph.neighbors(vertex) {
                    let wi = w as usize;
                    if self.stamp[wi] == epoch || !space.passable(w) {
                        continue;
                    }
                    self.stamp[wi] = epoch;
                    self.dist[wi] = nd;
                    self.origin[wi] = label;
                    self.queue.push_back(w);
                }
            }
        }
    }

    /// Distance from the last search, `INF` if `v` was not settled.
    #[inline]
    pub fn dist(&self, v: VertexId) -> f64 {
        if self.done[v as usize] == self.epoch {
            self.dist[v as usize]
        } else {
            INF
        }
    }

    /// Label of the source that reached `v` in the last search.
    #[inline]
    pub fn origin(&self, v: VertexId) -> Option<u32> {
        (self.done[v as usize] == self.epoch).then(|| self.origin[v as usize])
    }

    /// Vertices settled by the last search, in settle order.
    pub fn settled(&self) -> &[VertexId] {
        &self.settled
    }
}

/// Single-source distances, indexed by parent vertex id.
///
/// Entries for vertices outside the space are `INF` in induced-path mode; in
/// ambient mode they hold the ambient distance and may simply be ignored.
pub fn sssp(space: &Subspace<'_>, source: VertexId) -> Result<Vec<f64>> {
    space.check(source)?;
    let mut ex = Explorer::new(space.graph().vertex_count());
    ex.explore(space, [(source, 0)], INF, |_, _| false);
    Ok((0..space.graph().vertex_count() as VertexId)
        .map(|v| ex.dist(v))
        .collect())
}

/// Connected components of the space, each sorted, listed by minimum vertex.
///
/// In induced-path mode connectivity uses only member vertices; in ambient
/// mode two members are connected when their ambient distance is finite.
pub fn components(space: &Subspace<'_>) -> Vec<Vec<VertexId>> {
    let n = space.graph().vertex_count();
    let mut label = vec![u32::MAX; n];
    let mut out: Vec<Vec<VertexId>> = Vec::new();
    let mut stack = Vec::new();
    for &start in space.vertices() {
        if label[start as usize] != u32::MAX {
            continue;
        }
        let id = out.len() as u32;
        let mut comp = Vec::new();
        label[start as usize] = id;
        stack.push(start);
        while let Some(v) = stack.pop() {
            if space.contains(v) {
                comp.push(v);
            }
            for w in space.graph().neighbors(v) {
                if label[w as usize] == u32::MAX && space.passable(w) {
                    label[w as usize] = id;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Exact diameter of `set` under the space's metric (`INF` if some pair is
/// disconnected).
pub fn set_diameter(space: &Subspace<'_>, set: &[VertexId]) -> Result<f64> {
    let mut ex = Explorer::new(space.graph().vertex_count());
    set_diameter_with(space, set, &mut ex)
}

/// [`set_diameter`] reusing caller-owned scratch space.
///
/// Uses eccentricity bounding: every search from a set vertex `u` tightens
/// `ecc(v) >= max(d(u,v), ecc(u) - d(u,v))` and `ecc(v) <= ecc(u) + d(u,v)`
/// for the remaining candidates, and a candidate is dropped once its upper
/// bound cannot beat the best eccentricity seen. The result is exact.
pub fn set_diameter_with(space: &Subspace<'_>, set: &[VertexId], ex: &mut Explorer) -> Result<f64> {
    if set.is_empty() {
        return Err(invalid("diameter of an empty set"));
    }
    for &v in set {
        space.check(v)?;
    }
    let mut members: Vec<VertexId> = set.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.len() == 1 {
        return Ok(0.0);
    }
    let k = members.len();
    let mut lower = vec![0.0f64; k];
    let mut upper = vec![INF; k];
    let mut alive: Vec<usize> = (0..k).collect();
    let mut best = 0.0f64;
    let mut pick_high = true;
    let mut is_member = vec![false; space.graph().vertex_count()];
    for &v in &members {
        is_member[v as usize] = true;
    }

    while !alive.is_empty() {
        let pos = if pick_high {
            (0..alive.len())
                .max_by(|&a, &b| upper[alive[a]].total_cmp(&upper[alive[b]]).then(b.cmp(&a)))
                .unwrap()
        } else {
            (0..alive.len())
                .min_by(|&a, &b| lower[alive[a]].total_cmp(&lower[alive[b]]).then(a.cmp(&b)))
                .unwrap()
        };
        pick_high = !pick_high;
        let ui = alive.swap_remove(pos);
        let u = members[ui];

        let mut remaining = k;
        ex.explore(space, [(u, 0)], INF, |v, _| {
            if is_member[v as usize] {
                remaining -= 1;
            }
            remaining == 0
        });
        let mut ecc = 0.0f64;
        for &v in &members {
            ecc = ecc.max(ex.dist(v));
        }
        if ecc == INF {
            return Ok(INF);
        }
        best = best.max(ecc);
        for &vi in &alive {
            let d = ex.dist(members[vi]);
            lower[vi] = lower[vi].max(d).max(ecc - d);
            upper[vi] = upper[vi].min(ecc + d);
        }
        alive.retain(|&vi| upper[vi] > best);
    }
    Ok(best)
}

/// Distances between every pair of `targets` (row-major), one search per target.
pub fn pairwise_distances(space: &Subspace<'_>, targets: &[VertexId]) -> Result<Vec<f64>> {
    for &v in targets {
        space.check(v)?;
    }
    let k = targets.len();
    let mut out = vec![INF; k * k];
    let mut ex = Explorer::new(space.graph().vertex_count());
    for (i, &u) in targets.iter().enumerate() {
        ex.explore(space, [(u, 0)], INF, |_, _| false);
        for (j, &v) in targets.iter().enumerate() {
            out[i * k + j] = ex.dist(v);
        }
    }
    Ok(out)
}
