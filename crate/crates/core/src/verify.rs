//! Exact verification of cover guarantees.
//!
//! Every quantity in a [`CoverReport`] is computed exactly: set diameters by
//! eccentricity bounding, multiplicities by enumerating the closed ball
//! around every vertex of the space. Balls are closed: a set counts toward
//! the multiplicity at `v` when its distance from `v` is at most the radius.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covers::Cover;
use crate::error::{invalid, Error, Result};
use crate::graph::VertexId;
use crate::metric::{set_diameter_with, Explorer, Subspace, INF};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subject {
    Vertex(VertexId),
    Set(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub subject: Subject,
    pub reason: String,
}

/// Bounds a cover is checked against.
#[derive(Clone, Debug, PartialEq)]
pub struct Bounds {
    pub diameter: f64,
    pub radius: f64,
    pub multiplicity: usize,
    /// Optional per-annulus check: `(radius, bound)` on the multiplicity of
    /// the sets sharing one `annulus` index.
    pub per_annulus: Option<(f64, usize)>,
}

impl Bounds {
    /// Bounds recorded by the construction in `cover.params`.
    pub fn from_params(cover: &Cover) -> Result<Self> {
        let get = |k: &str| {
            cover
                .param(k)
                .ok_or_else(|| invalid(format!("cover params lack `{k}`; pass bounds explicitly")))
        };
        let per_annulus = match (
            cover.param("annulus_multiplicity_radius"),
            cover.param("annulus_multiplicity_bound"),
        ) {
            (Some(r), Some(b)) => Some((r, b as usize)),
            _ => None,
        };
        Ok(Bounds {
            diameter: get("diameter_bound")?,
            radius: get("multiplicity_radius")?,
            multiplicity: get("multiplicity_bound")? as usize,
            per_annulus,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnulusMultiplicity {
    pub radius: f64,
    pub bound: usize,
    /// Worst multiplicity seen for each annulus index.
    pub max_per_annulus: BTreeMap<usize, usize>,
    pub max: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub passed: bool,
    pub ball: String,
    pub coverage_ok: bool,
    pub partition_ok: bool,
    pub diameter_bound: f64,
    /// `null` when some set spans two components.
    pub max_set_diameter: Option<f64>,
    pub diameters: Vec<Option<f64>>,
    pub multiplicity_radius: f64,
    pub multiplicity_bound: usize,
    pub max_multiplicity: usize,
    /// multiplicity -> number of ball centers attaining it
    pub multiplicity_histogram: BTreeMap<usize, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annulus_multiplicity: Option<AnnulusMultiplicity>,
    /// `max_set_diameter / multiplicity_radius`
    pub empirical_ratio: Option<f64>,
    pub violations: Vec<Violation>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Set indices holding each vertex, as compressed rows.
struct Owners {
    offsets: Vec<usize>,
    sets: Vec<u32>,
}

impl Owners {
    fn new(n: usize, cover: &Cover) -> Self {
        let mut count = vec![0usize; n + 1];
        for s in &cover.sets {
            for &v in &s.vertices {
                if (v as usize) < n {
                    count[v as usize] += 1;
                }
            }
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + count[i];
        }
        let mut fill = offsets.clone();
        let mut sets = vec![0u32; offsets[n]];
        for (i, s) in cover.sets.iter().enumerate() {
            for &v in &s.vertices {
                if (v as usize) < n {
                    sets[fill[v as usize]] = i as u32;
                    fill[v as usize] += 1;
                }
            }
        }
        Owners { offsets, sets }
    }

    fn of(&self, v: VertexId) -> &[u32] {
        &self.sets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }
}

/// Per-thread scratch for ball enumeration.
struct BallScratch {
    ex: Explorer,
    seen: Vec<u32>,
    epoch: u32,
    per_annulus: BTreeMap<usize, usize>,
}

impl BallScratch {
    fn new(n: usize, sets: usize) -> Self {
        BallScratch {
            ex: Explorer::new(n),
            seen: vec![0; sets],
            epoch: 0,
            per_annulus: BTreeMap::new(),
        }
    }

    /// Distinct sets met by the closed ball; per-annulus counts are left in
    /// `self.per_annulus` when `annulus_of` is given.
    fn count(
        &mut self,
        space: &Subspace<'_>,
        owners: &Owners,
        v: VertexId,
        radius: f64,
        annulus_of: Option<&[usize]>,
    ) -> usize {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.seen.fill(0);
            self.epoch = 1;
        }
        self.per_annulus.clear();
        let (seen, epoch, per_annulus) = (&mut self.seen, self.epoch, &mut self.per_annulus);
        let mut distinct = 0usize;
        self.ex.explore(space, [(v, 0)], radius, |u, _| {
            for &s in owners.of(u) {
                if seen[s as usize] != epoch {
                    seen[s as usize] = epoch;
                    distinct += 1;
                    if let Some(a) = annulus_of {
                        *per_annulus.entry(a[s as usize]).or_default() += 1;
                    }
                }
            }
            false
        });
        distinct
    }
}

/// Number of cover sets within distance `radius` of `v` (closed ball).
pub fn multiplicity_at(
    space: &Subspace<'_>,
    cover: &Cover,
    v: VertexId,
    radius: f64,
) -> Result<usize> {
    space.check(v)?;
    if !(radius >= 0.0) {
        return Err(invalid(format!("radius must be nonnegative, got {radius}")));
    }
    let n = space.graph().vertex_count();
    let owners = Owners::new(n, cover);
    let mut scratch = BallScratch::new(n, cover.sets.len());
    Ok(scratch.count(space, &owners, v, radius, None))
}

pub fn verify_cover(
    space: &Subspace<'_>,
    cover: &Cover,
    diameter_bound: f64,
    radius: f64,
    multiplicity_bound: usize,
) -> CoverReport {
    verify_cover_with(
        space,
        cover,
        &Bounds {
            diameter: diameter_bound,
            radius,
            multiplicity: multiplicity_bound,
            per_annulus: None,
        },
    )
}

pub fn verify_cover_with(space: &Subspace<'_>, cover: &Cover, bounds: &Bounds) -> CoverReport {
    let graph = space.graph();
    let n = graph.vertex_count();
    let mut violations = Vec::new();

    // Structure: every set inside the space, pairwise disjoint, covering.
    let mut holder: Vec<Option<usize>> = vec![None; n];
    let mut partition_ok = true;
    for (i, set) in cover.sets.iter().enumerate() {
        if set.vertices.is_empty() {
            violations.push(Violation {
                subject: Subject::Set(set.label.clone()),
                reason: "empty set".into(),
            });
        }
        for &v in &set.vertices {
            if !space.contains(v) {
                partition_ok = false;
                violations.push(Violation {
                    subject: Subject::Vertex(v),
                    reason: format!("listed in set {} but not in the space", set.label),
                });
                continue;
            }
            match holder[v as usize] {
                Some(j) if j != i => {
                    partition_ok = false;
                    violations.push(Violation {
                        subject: Subject::Vertex(v),
                        reason: format!("in both {} and {}", cover.sets[j].label, set.label),
                    });
                }
                Some(_) => {
                    partition_ok = false;
                    violations.push(Violation {
                        subject: Subject::Vertex(v),
                        reason: format!("listed twice in {}", set.label),
                    });
                }
                None => holder[v as usize] = Some(i),
            }
        }
    }
    let mut coverage_ok = true;
    for &v in space.vertices() {
        if holder[v as usize].is_none() {
            coverage_ok = false;
            violations.push(Violation {
                subject: Subject::Vertex(v),
                reason: "not covered by any set".into(),
            });
        }
    }
    let mut labels: Vec<&str> = cover.sets.iter().map(|s| s.label.as_str()).collect();
    labels.sort_unstable();
    for w in labels.windows(2) {
        if w[0] == w[1] {
            violations.push(Violation {
                subject: Subject::Set(w[0].to_string()),
                reason: "duplicate label".into(),
            });
        }
    }

    // Diameters, in the space's metric.
    let diameters: Vec<f64> = cover
        .sets
        .par_iter()
        .map_init(
            || Explorer::new(n),
            |ex, set| {
                let inside: Vec<VertexId> = set
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| space.contains(v))
                    .collect();
                if inside.is_empty() {
                    0.0
                } else {
                    set_diameter_with(space, &inside, ex).unwrap_or(INF)
                }
            },
        )
        .collect();
    for (set, &d) in cover.sets.iter().zip(&diameters) {
        if !(d <= bounds.diameter) {
            violations.push(Violation {
                subject: Subject::Set(set.label.clone()),
                reason: format!("diameter {d} exceeds bound {}", bounds.diameter),
            });
        }
    }
    let max_d = diameters.iter().copied().fold(0.0, f64::max);

    // Multiplicities at every vertex of the space.
    let owners = Owners::new(n, cover);
    let annulus_of: Option<Vec<usize>> = bounds
        .per_annulus
        .map(|_| cover.sets.iter().map(|s| s.annulus).collect());
    let per_vertex: Vec<(usize, Vec<(usize, usize)>)> = space
        .vertices()
        .par_iter()
        .map_init(
            || BallScratch::new(n, cover.sets.len()),
            |scratch, &v| {
                let mult = scratch.count(space, &owners, v, bounds.radius, None);
                let by_annulus = match (&bounds.per_annulus, &annulus_of) {
                    (Some((r, _)), Some(a)) => {
                        scratch.count(space, &owners, v, *r, Some(a));
                        scratch.per_annulus.iter().map(|(&k, &c)| (k, c)).collect()
                    }
                    _ => Vec::new(),
                };
                (mult, by_annulus)
            },
        )
        .collect();

    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    let mut max_mult = 0;
    for (&v, (mult, _)) in space.vertices().iter().zip(&per_vertex) {
        let mult = *mult;
        *histogram.entry(mult).or_default() += 1;
        max_mult = max_mult.max(mult);
        if mult > bounds.multiplicity {
            violations.push(Violation {
                subject: Subject::Vertex(v),
                reason: format!(
                    "closed ball of radius {} meets {mult} sets (bound {})",
                    bounds.radius, bounds.multiplicity
                ),
            });
        }
    }

    let annulus_multiplicity = bounds.per_annulus.map(|(r, bound)| {
        let mut max_per_annulus: BTreeMap<usize, usize> = BTreeMap::new();
        for (&v, (_, by_annulus)) in space.vertices().iter().zip(&per_vertex) {
            for &(k, c) in by_annulus {
                let e = max_per_annulus.entry(k).or_insert(0);
                *e = (*e).max(c);
                if c > bound {
                    violations.push(Violation {
                        subject: Subject::Vertex(v),
                        reason: format!(
                            "closed ball of radius {r} meets {c} sets of annulus {k} (bound {bound})"
                        ),
                    });
                }
            }
        }
        let max = max_per_annulus.values().copied().max().unwrap_or(0);
        AnnulusMultiplicity {
            radius: r,
            bound,
            max_per_annulus,
            max,
        }
    });

    let passed = violations.is_empty();
    CoverReport {
        passed,
        ball: "closed".into(),
        coverage_ok,
        partition_ok,
        diameter_bound: bounds.diameter,
        max_set_diameter: finite(max_d),
        diameters: diameters.into_iter().map(finite).collect(),
        multiplicity_radius: bounds.radius,
        multiplicity_bound: bounds.multiplicity,
        max_multiplicity: max_mult,
        multiplicity_histogram: histogram,
        annulus_multiplicity,
        empirical_ratio: if bounds.radius > 0.0 {
            finite(max_d / bounds.radius)
        } else {
            None
        },
        violations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Separation {
    /// Every cross pair of distinct sets is at distance strictly greater than the bound.
    pub separated: bool,
    /// `None` when fewer than two sets are connected to each other.
    pub min_distance: Option<f64>,
}

/// Minimum distance between distinct sets, checked strictly against `bound`.
///
/// One multi-source search labels every vertex with its nearest set; the
/// closest cross pair is realized across some edge joining two labels.
pub fn separation_check(
    space: &Subspace<'_>,
    sets: &[Vec<VertexId>],
    bound: f64,
) -> Result<Separation> {
    let n = space.graph().vertex_count();
    let mut owner = vec![u32::MAX; n];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            space.check(v)?;
            if owner[v as usize] != u32::MAX && owner[v as usize] != i as u32 {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} belongs to two sets"
                )));
            }
            owner[v as usize] = i as u32;
        }
    }
    let mut ex = Explorer::new(n);
    ex.explore(
        space,
        sets.iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&v| (v, i as u32))),
        INF,
        |_, _| false,
    );
    let graph = space.graph();
    let mut best = INF;
    for &u in ex.settled() {
        let ou = ex.origin(u);
        for (w, len) in graph.weighted_neighbors(u) {
            let ow = ex.origin(w);
            if ow.is_some() && ow != ou {
                best = best.min(ex.dist(u) + len + ex.dist(w));
            }
        }
    }
    Ok(Separation {
        separated: best > bound,
        min_distance: finite(best),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{Algorithm, CoverSet};
    use crate::graph::Graph;

    fn path(n: u32) -> Graph {
        Graph::new(n as usize, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cover_of(sets: Vec<Vec<VertexId>>) -> Cover {
        Cover {
            algorithm: Algorithm::Cactus,
            params: BTreeMap::new(),
            base: 0,
            sets: sets
                .into_iter()
                .enumerate()
                .map(|(i, vertices)| CoverSet {
                    label: format!("s{i}"),
                    annulus: i,
                    component: 0,
                    class: 0,
                    vertices,
                })
                .collect(),
        }
    }

    #[test]
    fn multiplicity_on_split_path() {
        let g = path(10);
        let c = cover_of(vec![(0..5).collect(), (5..10).collect()]);
        let s = Subspace::whole(&g);
        assert_eq!(multiplicity_at(&s, &c, 2, 0.0).unwrap(), 1);
        assert_eq!(multiplicity_at(&s, &c, 4, 1.0).unwrap(), 2);
        assert_eq!(multiplicity_at(&s, &c, 3, 1.0).unwrap(), 1);
        assert!(multiplicity_at(&s, &c, 99, 1.0).is_err());
    }

    #[test]
    fn report_fields_on_good_cover() {
        let g = path(10);
        let c = cover_of(vec![(0..5).collect(), (5..10).collect()]);
        let r = verify_cover(&Subspace::whole(&g), &c, 4.0, 1.0, 2);
        assert!(r.passed, "{:?}", r.violations);
        assert_eq!(r.diameters, vec![Some(4.0), Some(4.0)]);
        assert_eq!(r.max_multiplicity, 2);
        assert_eq!(r.multiplicity_histogram, BTreeMap::from([(1, 8), (2, 2)]));
        assert_eq!(r.empirical_ratio, Some(4.0));
    }

    #[test]
    fn missing_vertex_is_named() {
        let g = path(10);
        let c = cover_of(vec![(0..5).collect(), (6..10).collect()]);
        let r = verify_cover(&Subspace::whole(&g), &c, 100.0, 1.0, 2);
        assert!(!r.passed);
        assert!(!r.coverage_ok);
        assert!(r.partition_ok);
        assert!(r
            .violations
            .iter()
            .any(|v| v.subject == Subject::Vertex(5) && v.reason.contains("not covered")));
    }

    #[test]
    fn overlap_breaks_partition() {
        let g = path(4);
        let c = cover_of(vec![vec![0, 1, 2], vec![2, 3]]);
        let r = verify_cover(&Subspace::whole(&g), &c, 100.0, 0.0, 2);
        assert!(!r.partition_ok);
        assert!(!r.passed);
    }

    #[test]
    fn bounds_violations_are_reported() {
        let g = path(10);
        let c = cover_of(vec![(0..5).collect(), (5..10).collect()]);
        let r = verify_cover(&Subspace::whole(&g), &c, 3.0, 1.0, 1);
        assert_eq!(
            r.violations
                .iter()
                .filter(|v| v.reason.contains("diameter"))
                .count(),
            2
        );
        assert_eq!(
            r.violations
                .iter()
                .filter(|v| v.reason.contains("meets"))
                .count(),
            2
        );
    }

    #[test]
    fn separation_is_strict() {
        let g = path(8);
        let s = Subspace::whole(&g);
        let sets = vec![vec![0], vec![7]];
        assert_eq!(
            separation_check(&s, &sets, 6.0).unwrap(),
            Separation {
                separated: true,
                min_distance: Some(7.0)
            }
        );
        assert!(!separation_check(&s, &sets, 7.0).unwrap().separated);
        assert!(separation_check(&s, &[vec![0, 1], vec![1]], 1.0).is_err());
    }

    #[test]
    fn separation_of_disconnected_sets_is_infinite() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let r = separation_check(&Subspace::whole(&g), &[vec![0], vec![3]], 100.0).unwrap();
        assert!(r.separated);
        assert_eq!(r.min_distance, None);
    }
}
