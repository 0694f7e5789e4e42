//! The planar pipeline: coarse-cactus covers of thick annulus components,
//! restricted to thin annuli and gathered over all radii.
//!
//! For width `m`, the thin annulus `A(s, s+m)` is covered by
//!   1. splitting `A(s-m, s+2m)` into components `C`,
//!   2. widening each `C` to its component `C+` of `A(s-2m, s+3m)`,
//!   3. covering `C+` in its own path metric with scale `5m`,
//!   4. restricting each class to `C ∩ A(s, s+m)`.
//!
//! Near the base (`s <= 2m`) the whole thin annulus is one set.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::cactus::{check_positive, coarse_cactus_cover};
use super::{Algorithm, Cover, CoverSet};
use crate::decomposition::{annulus_index, in_band};
use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::metric::{components, sssp, MetricMode, Subspace};

/// Coarse-cactus cover of one thick-annulus component in its path metric,
/// at scale `L` with fatness parameter `5m`, based at the component's
/// minimum vertex.
pub fn lemma0_cover(g: &Graph, component: &[VertexId], l: f64, m: f64) -> Result<Cover> {
    check_positive("L", l)?;
    check_positive("m", m)?;
    if component.is_empty() {
        return Ok(Cover::new(
            Algorithm::CoarseCactus,
            0,
            &[("m", l), ("M", 5.0 * m), ("m_eff", l.max(5.0 * m))],
            Vec::new(),
        ));
    }
    let sub = Subspace::new(g, component.iter().copied(), MetricMode::InducedPath)?;
    let base = sub.vertices()[0];
    coarse_cactus_cover(&sub, base, l, 5.0 * m)
}

/// Cover of the thin annulus `A(s, s+m)` around `base`.
pub fn annulus_cover(g: &Graph, base: VertexId, s: f64, m: f64) -> Result<Cover> {
    check_positive("m", m)?;
    if !(s >= 0.0 && s.is_finite()) {
        return Err(crate::error::invalid(format!(
            "s must be nonnegative, got {s}"
        )));
    }
    let dist = sssp(&Subspace::whole(g), base)?;
    let sets = thin_annulus_sets(g, &dist, s, m, 0, 0)?;
    Ok(Cover::new(
        Algorithm::PlanarPipeline,
        base,
        &[
            ("s", s),
            ("m", m),
            ("diameter_bound", 1e6 * m),
            ("multiplicity_radius", m),
            ("multiplicity_bound", 2.0),
        ],
        sets,
    ))
}

/// Partition of the graph whose sets are `3e6 * rho`-bounded and whose closed
/// `rho`-balls meet at most four sets, when the graph is planar.
///
/// Internally uses annuli of width `m = 3 * rho`.
pub fn planar_cover(g: &Graph, base: VertexId, rho: f64) -> Result<Cover> {
    check_positive("rho", rho)?;
    let whole = Subspace::whole(g);
    whole.check(base)?;
    let m = 3.0 * rho;
    let mut sets = Vec::new();
    for (comp_id, comp) in components(&whole).iter().enumerate() {
        let root = if comp.binary_search(&base).is_ok() {
            base
        } else {
            comp[0]
        };
        let dist = sssp(&whole, root)?;
        let max_d = comp.iter().map(|&v| dist[v as usize]).fold(0.0, f64::max);
        let count = annulus_index(max_d, m) + 1;
        let per_annulus: Vec<Vec<CoverSet>> = (0..count)
            .into_par_iter()
            .map(|n| thin_annulus_sets(g, &dist, n as f64 * m, m, n, comp_id))
            .collect::<Result<_>>()?;
        sets.extend(per_annulus.into_iter().flatten());
    }
    Ok(Cover::new(
        Algorithm::PlanarPipeline,
        base,
        &[
            ("rho", rho),
            ("m", m),
            ("diameter_bound", 3e6 * rho),
            ("multiplicity_radius", rho),
            ("multiplicity_bound", 4.0),
            ("annulus_multiplicity_radius", m),
            ("annulus_multiplicity_bound", 2.0),
            ("inner_width", 500.0 * m),
            ("inner_gap", 50.0 * m),
        ],
        sets,
    ))
}

fn band(dist: &[f64], lo: f64, hi: f64) -> Vec<VertexId> {
    (0..dist.len() as VertexId)
        .filter(|&v| in_band(dist[v as usize], lo, hi))
        .collect()
}

/// Sets covering `A(s, s+m)`; `dist` holds ambient distances from the base.
fn thin_annulus_sets(
    g: &Graph,
    dist: &[f64],
    s: f64,
    m: f64,
    annulus: usize,
    graph_comp: usize,
) -> Result<Vec<CoverSet>> {
    let target = band(dist, s, s + m);
    if target.is_empty() {
        return Ok(Vec::new());
    }
    if s <= 2.0 * m {
        return Ok(vec![CoverSet {
            label: format!("g{graph_comp}/a{annulus}/b0/k0"),
            annulus,
            component: 0,
            class: 0,
            vertices: target,
        }]);
    }

    let mid = Subspace::new(g, band(dist, s - m, s + 2.0 * m), MetricMode::InducedPath)?;
    let wide = Subspace::new(
        g,
        band(dist, s - 2.0 * m, s + 3.0 * m),
        MetricMode::InducedPath,
    )?;
    let wide_comps = components(&wide);
    let mut wide_of: HashMap<VertexId, usize> = HashMap::new();
    for (i, c) in wide_comps.iter().enumerate() {
        for &v in c {
            wide_of.insert(v, i);
        }
    }

    // Class of every vertex of each widened component that is actually used.
    let mut class_of: BTreeMap<usize, HashMap<VertexId, usize>> = BTreeMap::new();
    let mut sets = Vec::new();
    let in_target = |v: VertexId| in_band(dist[v as usize], s, s + m);
    for (ci, c) in components(&mid).iter().enumerate() {
        let restricted: Vec<VertexId> = c.iter().copied().filter(|&v| in_target(v)).collect();
        if restricted.is_empty() {
            continue;
        }
        let w = wide_of[&c[0]];
        if let std::collections::btree_map::Entry::Vacant(slot) = class_of.entry(w) {
            let inner = lemma0_cover(g, &wide_comps[w], m, m)?;
            let mut map = HashMap::new();
            for (k, set) in inner.sets.iter().enumerate() {
                for &v in &set.vertices {
                    map.insert(v, k);
                }
            }
            slot.insert(map);
        }
        let classes = &class_of[&w];
        let mut grouped: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for v in restricted {
            grouped.entry(classes[&v]).or_default().push(v);
        }
        for (k, vertices) in grouped {
            sets.push(CoverSet {
                label: format!("g{graph_comp}/a{annulus}/b{ci}/k{k}"),
                annulus,
                component: ci,
                class: k,
                vertices,
            });
        }
    }
    Ok(sets)
}
