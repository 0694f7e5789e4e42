//! Annulus decomposition around a base point and the chain partition.
//!
//! An annulus of width `w` is the set of vertices whose distance from the
//! base lies in `[k*w, (k+1)*w)`. A chain partition of a subset groups two
//! vertices together when a chain of subset vertices joins them with every
//! consecutive distance at most `gap`.

use serde::Serialize;

use crate::dsu::DisjointSet;
use crate::error::{invalid, Result};
use crate::graph::VertexId;
use crate::metric::{sssp, Explorer, Subspace, INF};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnulusDecomposition {
    pub base: VertexId,
    pub width: f64,
    /// `annuli[k]` holds the vertices with `k*width <= d(base, v) < (k+1)*width`,
    /// sorted. Empty annuli stay in place so indices line up with radii.
    pub annuli: Vec<Vec<VertexId>>,
}

impl AnnulusDecomposition {
    pub fn len(&self) -> usize {
        self.annuli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.annuli.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainPartition {
    pub subset: Vec<VertexId>,
    pub gap: f64,
    /// Classes, each sorted, listed by minimum vertex.
    pub classes: Vec<Vec<VertexId>>,
}

/// Index `k` with `k*width <= d < (k+1)*width`, robust to rounding in `d/width`.
pub fn annulus_index(d: f64, width: f64) -> usize {
    debug_assert!(d.is_finite() && d >= 0.0 && width > 0.0);
    let mut k = (d / width).floor() as usize;
    while k > 0 && k as f64 * width > d {
        k -= 1;
    }
    while (k + 1) as f64 * width <= d {
        k += 1;
    }
    k
}

/// `lo <= d < hi`, the half-open band convention used for every annulus.
#[inline]
pub fn in_band(d: f64, lo: f64, hi: f64) -> bool {
    d.is_finite() && lo <= d && d < hi
}

pub fn annuli(space: &Subspace<'_>, base: VertexId, width: f64) -> Result<AnnulusDecomposition> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(invalid(format!(
            "annulus width must be positive, got {width}"
        )));
    }
    let dist = sssp(space, base)?;
    Ok(annuli_from_distances(space, base, width, &dist))
}

pub(crate) fn annuli_from_distances(
    space: &Subspace<'_>,
    base: VertexId,
    width: f64,
    dist: &[f64],
) -> AnnulusDecomposition {
    let mut annuli: Vec<Vec<VertexId>> = Vec::new();
    for &v in space.vertices() {
        let d = dist[v as usize];
        if d == INF {
            continue;
        }
        let k = annulus_index(d, width);
        if annuli.len() <= k {
            annuli.resize_with(k + 1, Vec::new);
        }
        annuli[k].push(v);
    }
    AnnulusDecomposition {
        base,
        width,
        annuli,
    }
}

/// Chain classes of `subset` at threshold `gap`, in the space's metric.
///
/// One multi-source search labels every vertex with its nearest subset
/// vertex; each edge joining two cells yields the chain candidate
/// `d(s,u) + len(u,w) + d(w,t)`. Thresholding those candidates at `gap`
/// reproduces the transitive closure of `{d(x,y) <= gap}` exactly: the
/// candidates dominate true distances and contain a minimum spanning tree of
/// the subset's distance graph.
pub fn chain_partition(
    space: &Subspace<'_>,
    subset: &[VertexId],
    gap: f64,
) -> Result<ChainPartition> {
    let mut ex = Explorer::new(space.graph().vertex_count());
    chain_partition_with(space, subset, gap, &mut ex)
}

pub(crate) fn chain_partition_with(
    space: &Subspace<'_>,
    subset: &[VertexId],
    gap: f64,
    ex: &mut Explorer,
) -> Result<ChainPartition> {
    if !(gap > 0.0) {
        return Err(invalid(format!("chain gap must be positive, got {gap}")));
    }
    let mut members: Vec<VertexId> = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    for &v in &members {
        space.check(v)?;
    }
    if members.is_empty() {
        return Ok(ChainPartition {
            subset: members,
            gap,
            classes: Vec::new(),
        });
    }

    let graph = space.graph();
    let mut dsu = DisjointSet::new(members.len());
    ex.explore(
        space,
        members.iter().enumerate().map(|(i, &v)| (v, i as u32)),
        gap,
        |_, _| false,
    );
    for &u in ex.settled() {
        let du = ex.dist(u);
        let ou = ex.origin(u).expect("settled vertex has an origin");
        for (w, len) in graph.weighted_neighbors(u) {
            if let Some(ow) = ex.origin(w) {
                if ow != ou && du + len + ex.dist(w) <= gap {
                    dsu.union(ou, ow);
                }
            }
        }
    }

    let mut by_root: Vec<Vec<VertexId>> = vec![Vec::new(); members.len()];
    for (i, &v) in members.iter().enumerate() {
        let r = dsu.find(i as u32);
        by_root[r as usize].push(v);
    }
    let mut classes: Vec<Vec<VertexId>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
    classes.sort_unstable_by_key(|c| c[0]);
    Ok(ChainPartition {
        subset: members,
        gap,
        classes,
    })
}
