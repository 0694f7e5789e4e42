use rayon::prelude::*;

use super::{Algorithm, Cover, CoverSet};
use crate::decomposition::{annuli_from_distances, chain_partition_with};
use crate::error::{invalid, Result};
use crate::graph::{Graph, VertexId};
use crate::metric::{components, sssp, Explorer, Subspace};

/// Annuli of width 100m around `base`, each split into chain classes at gap 10m.
///
/// On a cactus every set has diameter at most 1000m and every closed m-ball
/// meets at most two sets; both are left to the verifier.
pub fn cactus_cover(g: &Graph, base: VertexId, m: f64) -> Result<Cover> {
    check_positive("m", m)?;
    let space = Subspace::whole(g);
    let (width, gap) = (100.0 * m, 10.0 * m);
    let sets = chain_annulus_sets(&space, base, width, gap)?;
    Ok(Cover::new(
        Algorithm::Cactus,
        base,
        &[
            ("m", m),
            ("N", width),
            ("gap", gap),
            ("diameter_bound", 1000.0 * m),
            ("multiplicity_radius", m),
            ("multiplicity_bound", 2.0),
        ],
        sets,
    ))
}

/// The cactus construction with scale `max(m, M)`, in the space's own metric.
///
/// On an M-coarse cactus, sets are `1e5 * max(m, M)`-bounded and closed m-balls
/// meet at most two sets.
pub fn coarse_cactus_cover(
    space: &Subspace<'_>,
    base: VertexId,
    m: f64,
    big_m: f64,
) -> Result<Cover> {
    check_positive("m", m)?;
    check_positive("M", big_m)?;
    let scale = m.max(big_m);
    let (width, gap) = (100.0 * scale, 10.0 * scale);
    let sets = chain_annulus_sets(space, base, width, gap)?;
    Ok(Cover::new(
        Algorithm::CoarseCactus,
        base,
        &[
            ("m", m),
            ("M", big_m),
            ("m_eff", scale),
            ("N", width),
            ("gap", gap),
            ("diameter_bound", 1000.0 * width),
            ("multiplicity_radius", m),
            ("multiplicity_bound", 2.0),
        ],
        sets,
    ))
}

pub(super) fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!(
            "{name} must be positive and finite, got {x}"
        )))
    }
}

/// Chain classes of every annulus, per connected component of the space.
///
/// The component holding `base` is decomposed around `base`; every other
/// component around its minimum vertex.
pub(crate) fn chain_annulus_sets(
    space: &Subspace<'_>,
    base: VertexId,
    width: f64,
    gap: f64,
) -> Result<Vec<CoverSet>> {
    space.check(base)?;
    let n = space.graph().vertex_count();
    let mut sets = Vec::new();
    for (comp_id, comp) in components(space).iter().enumerate() {
        let root = if comp.binary_search(&base).is_ok() {
            base
        } else {
            comp[0]
        };
        let dist = sssp(space, root)?;
        let dec = annuli_from_distances(space, root, width, &dist);
        let parts: Vec<_> = dec
            .annuli
            .par_iter()
            .map_init(
                || Explorer::new(n),
                |ex, annulus| chain_partition_with(space, annulus, gap, ex),
            )
            .collect::<Result<_>>()?;
        for (k, part) in parts.into_iter().enumerate() {
            for (class, vertices) in part.classes.into_iter().enumerate() {
                sets.push(CoverSet {
                    label: format!("g{comp_id}/a{k}/k{class}"),
                    annulus: k,
                    component: comp_id,
                    class,
                    vertices,
                });
            }
        }
    }
    Ok(sets)
}
