//! Finite simple undirected graphs with unit or positive edge lengths.
//!
//! Vertices are `0..n`. Adjacency is stored in compressed rows so traversals
//! touch contiguous memory; each adjacency entry remembers the edge index so
//! weighted traversals can look up lengths.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub type VertexId = u32;

/// A finite simple undirected graph, immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    weights: Option<Vec<f64>>,
    offsets: Vec<usize>,
    adjacency: Vec<(VertexId, u32)>,
}

/// On-disk form: `{"n": .., "edges": [[u,v],..], "weights": [..]?}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

impl Graph {
    /// Builds a unit-length graph. Edges are canonicalized to `(min, max)` and sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        Self::build(n, edges.into_iter().map(|e| (e, 1.0)).collect(), false)
    }

    /// Builds a graph with explicit positive edge lengths.
    pub fn with_weights(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if edges.len() != weights.len() {
            return Err(invalid(format!(
                "{} edges but {} weights",
                edges.len(),
                weights.len()
            )));
        }
        Self::build(n, edges.into_iter().zip(weights).collect(), true)
    }

    fn build(
        n: usize,
        mut items: Vec<((VertexId, VertexId), f64)>,
        weighted: bool,
    ) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(invalid("vertex count exceeds u32 range"));
        }
        let mut seen = HashSet::with_capacity(items.len());
        for ((u, v), w) in items.iter_mut() {
            if *u as usize >= n || *v as usize >= n {
                return Err(invalid(format!("edge ({u},{v}) has endpoint >= n = {n}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            if !(w.is_finite() && *w > 0.0) {
                return Err(invalid(format!(
                    "edge ({u},{v}) has non-positive length {w}"
                )));
            }
            if u > v {
                std::mem::swap(u, v);
            }
            if !seen.insert((*u, *v)) {
                return Err(invalid(format!("duplicate edge ({u},{v})")));
            }
        }
        items.sort_by_key(|&(e, _)| e);
        let edges: Vec<_> = items.iter().map(|&(e, _)| e).collect();
        let weights = weighted.then(|| items.iter().map(|&(_, w)| w).collect());

        let mut degree = vec![0usize; n + 1];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![(0, 0); 2 * edges.len()];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            adjacency[fill[u as usize]] = (v, idx as u32);
            fill[u as usize] += 1;
            adjacency[fill[v as usize]] = (u, idx as u32);
            fill[v as usize] += 1;
        }
        for i in 0..n {
            adjacency[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            weights,
            offsets,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (v as usize) < self.n
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Neighbors in increasing id order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).iter().map(|&(w, _)| w)
    }

    /// `(neighbor, edge length)` pairs in increasing neighbor order.
    pub fn weighted_neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        self.incident(v).iter().map(move |&(w, e)| {
            let len = match &self.weights {
                Some(ws) => ws[e as usize],
                None => 1.0,
            };
            (w, len)
        })
    }

    /// `(neighbor, edge index)` pairs in increasing neighbor order.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, u32)] {
        let v = v as usize;
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.incident(u)
            .binary_search_by_key(&v, |&(w, _)| w)
            .is_ok()
    }

    pub fn edge_length(&self, u: VertexId, v: VertexId) -> Option<f64> {
        let inc = self.incident(u);
        let pos = inc.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        Some(match &self.weights {
            Some(ws) => ws[inc[pos].1 as usize],
            None => 1.0,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(s)?;
        let edges = raw.edges.iter().map(|&[u, v]| (u, v)).collect();
        match raw.weights {
            Some(w) => Self::with_weights(raw.n, edges, w),
            None => Self::new(raw.n, edges),
        }
    }

    /// Canonical JSON: sorted `(min,max)` edges, fixed key order, trailing newline.
    pub fn to_json_string(&self) -> String {
        let raw = GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            weights: self.weights.clone(),
        };
        let mut s = serde_json::to_string(&raw).expect("graph serialization cannot fail");
        s.push('\n');
        s
    }

    /// Graphviz rendering; `colors[v]` (if given) becomes a fill color class.
    pub fn to_dot(&self, colors: Option<&[Option<usize>]>) -> String {
        use std::fmt::Write;
        const PALETTE: [&str; 12] = [
            "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
            "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
        ];
        let mut out = String::from("graph G {\n  node [shape=point];\n");
        for v in 0..self.n {
            match colors.and_then(|c| c[v]) {
                Some(c) => {
                    let _ = writeln!(
                        out,
                        "  {v} [color=\"{}\", tooltip=\"set {c}\"];",
                        PALETTE[c % PALETTE.len()]
                    );
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}
