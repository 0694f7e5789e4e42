//! Embedded theta subgraphs and M-fatness.
//!
//! A theta is two hubs `a != b` joined by three internally disjoint paths.
//! A split `(s, t)` of a path `p` (with `0 <= s < t <= len`) cuts it into
//! `alpha = p[..=s]` (holding `a`), the open middle `p[s+1..t]` and
//! `beta = p[t..]` (holding `b`). The theta is M-fat for a choice of splits
//! when every middle is nonempty, middles of distinct paths are at distance
//! `>= M`, no middle meets an alpha or beta, and every alpha vertex is at
//! distance `>= 2M` from every beta vertex.

mod search;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::VertexId;
use crate::metric::{pairwise_distances, MetricMode, Subspace, INF};

pub use search::{
    check_annulus_theta_free, find_fat_theta, verify_certificate, AnnulusThetaReport, Certificate,
    CertificateCheck, ComponentOutcome, SearchMode, SearchOptions, SearchReport, SearchStatus,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaCurve {
    pub a: VertexId,
    pub b: VertexId,
    /// Three vertex sequences from `a` to `b`.
    pub paths: [Vec<VertexId>; 3],
}

impl ThetaCurve {
    /// Checks shape: common endpoints, simple paths, pairwise disjoint interiors.
    pub fn new(paths: [Vec<VertexId>; 3]) -> Result<Self> {
        let a = *paths[0]
            .first()
            .ok_or_else(|| invalid("empty theta path"))?;
        let b = *paths[0].last().expect("nonempty");
        if a == b {
            return Err(invalid("theta hubs must differ"));
        }
        let mut seen = std::collections::HashSet::new();
        let mut direct = 0;
        for p in &paths {
            if p.len() < 2 || p[0] != a || *p.last().unwrap() != b {
                return Err(invalid("every theta path must run from a to b"));
            }
            if p.len() == 2 {
                direct += 1;
            }
            for &v in &p[1..p.len() - 1] {
                if v == a || v == b || !seen.insert(v) {
                    return Err(invalid(format!(
                        "theta is not embedded: vertex {v} repeats"
                    )));
                }
            }
        }
        if direct > 1 {
            return Err(invalid("two theta paths are the same edge"));
        }
        Ok(ThetaCurve { a, b, paths })
    }

    /// Number of edges on path `i`.
    pub fn len(&self, i: usize) -> usize {
        self.paths[i].len() - 1
    }

    /// Checks that every path uses edges of the space and stays inside it.
    pub fn check_in(&self, space: &Subspace<'_>) -> Result<()> {
        let g = space.graph();
        for p in &self.paths {
            for &v in p {
                space.check(v)?;
            }
            for w in p.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(invalid(format!("theta uses non-edge ({},{})", w[0], w[1])));
                }
            }
        }
        Ok(())
    }

    /// Distinct vertices: `a`, `b`, then each path's interior in order.
    fn vertices(&self) -> Vec<VertexId> {
        let mut out = vec![self.a, self.b];
        for p in &self.paths {
            out.extend_from_slice(&p[1..p.len() - 1]);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub s: usize,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FatnessWitness {
    pub splits: [Split; 3],
    /// Minimum distance between middles of distinct paths.
    pub middle_margin: f64,
    /// Minimum distance from the union of alphas to the union of betas.
    pub end_margin: f64,
}

impl FatnessWitness {
    /// Fatness attained: `min(middle_margin, end_margin / 2)`.
    pub fn value(&self) -> f64 {
        self.middle_margin.min(self.end_margin / 2.0)
    }
}

/// Distances among the vertices of one theta, indexed by (path, position).
pub(crate) struct ThetaMetric {
    lens: [usize; 3],
    /// Row index of `paths[i][j]` is `base[i] + j - 1` for interior `j`.
    base: [usize; 3],
    k: usize,
    d: Vec<f64>,
}

impl ThetaMetric {
    pub(crate) fn from_space(space: &Subspace<'_>, theta: &ThetaCurve) -> Result<Self> {
        let verts = theta.vertices();
        let d = pairwise_distances(space, &verts)?;
        Ok(Self::with_matrix(theta, verts.len(), d))
    }

    pub(crate) fn from_lookup(
        theta: &ThetaCurve,
        dist: impl Fn(VertexId, VertexId) -> f64,
    ) -> Self {
        let verts = theta.vertices();
        let k = verts.len();
        let mut d = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                d[i * k + j] = dist(verts[i], verts[j]);
            }
        }
        Self::with_matrix(theta, k, d)
    }

    fn with_matrix(theta: &ThetaCurve, k: usize, d: Vec<f64>) -> Self {
        let lens = [theta.len(0), theta.len(1), theta.len(2)];
        let mut base = [2usize; 3];
        base[1] = base[0] + lens[0] - 1;
        base[2] = base[1] + lens[1] - 1;
        ThetaMetric { lens, base, k, d }
    }

    #[inline]
    fn row(&self, path: usize, pos: usize) -> usize {
        if pos == 0 {
            0
        } else if pos == self.lens[path] {
            1
        } else {
            self.base[path] + pos - 1
        }
    }

    #[inline]
    fn dist(&self, r1: usize, r2: usize) -> f64 {
        self.d[r1 * self.k + r2]
    }

    fn margins(&self, splits: &[Split; 3]) -> (f64, f64) {
        let mut middle = INF;
        for i in 0..3 {
            for j in i + 1..3 {
                for x in splits[i].s + 1..splits[i].t {
                    let rx = self.row(i, x);
                    for y in splits[j].s + 1..splits[j].t {
                        middle = middle.min(self.dist(rx, self.row(j, y)));
                    }
                }
            }
        }
        let mut ends = INF;
        for i in 0..3 {
            for x in 0..=splits[i].s {
                let rx = self.row(i, x);
                for j in 0..3 {
                    for y in splits[j].t..=self.lens[j] {
                        ends = ends.min(self.dist(rx, self.row(j, y)));
                    }
                }
            }
        }
        (middle, ends)
    }

    /// Splits witnessing `fatness`, or `None`.
    ///
    /// For fixed alpha cuts `s`, each beta must avoid the `2M`-neighborhood of
    /// all alphas, so the smallest admissible `t_j` is forced; taking it keeps
    /// the middles as small as possible, which is optimal for the middle
    /// condition. Growing any alpha only pushes the forced `t_j` further
    /// out, so once a tuple is infeasible on the end condition every larger
    /// `s` along the innermost loop is too.
    pub(crate) fn fat_splits(&self, fatness: f64) -> Option<[Split; 3]> {
        let lens = self.lens;
        if lens.iter().any(|&l| l < 2) {
            return None;
        }
        let far = 2.0 * fatness;
        // near[i][s][r]: distance from row r to alpha_i when cut at s.
        let near: Vec<Vec<Vec<f64>>> = (0..3)
            .map(|i| {
                let mut rows = Vec::with_capacity(lens[i] - 1);
                let mut cur = vec![INF; self.k];
                for s in 0..=lens[i] - 2 {
                    let rs = self.row(i, s);
                    for (r, c) in cur.iter_mut().enumerate() {
                        *c = c.min(self.dist(rs, r));
                    }
                    rows.push(cur.clone());
                }
                rows
            })
            .collect();

        let forced_t = |s: [usize; 3], j: usize| -> Option<usize> {
            let alpha_dist =
                |r: usize| near[0][s[0]][r].min(near[1][s[1]][r]).min(near[2][s[2]][r]);
            let mut t = lens[j] + 1;
            while t > 0 && alpha_dist(self.row(j, t - 1)) >= far {
                t -= 1;
            }
            let t = t.max(s[j] + 2);
            (t <= lens[j]).then_some(t)
        };

        for s0 in 0..=lens[0] - 2 {
            let mut any1 = false;
            for s1 in 0..=lens[1] - 2 {
                let mut any2 = false;
                for s2 in 0..=lens[2] - 2 {
                    let s = [s0, s1, s2];
                    let ts = (0..3).map(|j| forced_t(s, j)).collect::<Option<Vec<_>>>();
                    let Some(ts) = ts else { break };
                    any2 = true;
                    let splits = [
                        Split { s: s0, t: ts[0] },
                        Split { s: s1, t: ts[1] },
                        Split { s: s2, t: ts[2] },
                    ];
                    if self.middles_apart(&splits, fatness) {
                        return Some(splits);
                    }
                }
                if !any2 {
                    break;
                }
                any1 = true;
            }
            if !any1 {
                break;
            }
        }
        None
    }

    fn middles_apart(&self, splits: &[Split; 3], fatness: f64) -> bool {
        for i in 0..3 {
            for j in i + 1..3 {
                for x in splits[i].s + 1..splits[i].t {
                    let rx = self.row(i, x);
                    for y in splits[j].s + 1..splits[j].t {
                        if self.dist(rx, self.row(j, y)) < fatness {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub(crate) fn witness(&self, splits: [Split; 3]) -> FatnessWitness {
        let (middle_margin, end_margin) = self.margins(&splits);
        FatnessWitness {
            splits,
            middle_margin,
            end_margin,
        }
    }

    fn max_fatness(&self) -> MaxFatness {
        if self.lens.iter().any(|&l| l < 2) {
            return MaxFatness {
                value: 0.0,
                witness: None,
            };
        }
        let mut candidates: Vec<f64> = self
            .d
            .iter()
            .copied()
            .filter(|&x| x > 0.0 && x.is_finite())
            .flat_map(|x| [x, x / 2.0])
            .collect();
        candidates.sort_by(f64::total_cmp);
        candidates.dedup();
        // Feasibility is monotone in the fatness; find the last feasible candidate.
        let (mut lo, mut hi) = (0usize, candidates.len());
        let mut best = None;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.fat_splits(candidates[mid]) {
                Some(sp) => {
                    best = Some(sp);
                    lo = mid + 1;
                }
                None => hi = mid,
            }
        }
        match best {
            Some(sp) => {
                let w = self.witness(sp);
                MaxFatness {
                    value: w.value(),
                    witness: Some(w),
                }
            }
            None => MaxFatness {
                value: 0.0,
                witness: None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxFatness {
    /// Largest `M` for which the theta is M-fat; `0` if no split has
    /// nonempty middles on all three paths.
    pub value: f64,
    pub witness: Option<FatnessWitness>,
}

fn check_splits(theta: &ThetaCurve, w: &FatnessWitness) -> Result<()> {
    for (i, sp) in w.splits.iter().enumerate() {
        if sp.s >= sp.t || sp.t > theta.len(i) {
            return Err(invalid(format!(
                "split ({}, {}) out of range for path {i} of length {}",
                sp.s,
                sp.t,
                theta.len(i)
            )));
        }
    }
    Ok(())
}

/// Whether the splits of `w` make `theta` M-fat in the space's metric.
///
/// The stored margins of `w` are ignored; everything is recomputed.
pub fn is_fat(
    space: &Subspace<'_>,
    theta: &ThetaCurve,
    fatness: f64,
    w: &FatnessWitness,
) -> Result<bool> {
    check_splits(theta, w)?;
    theta.check_in(space)?;
    if w.splits.iter().any(|sp| sp.t - sp.s < 2) {
        return Ok(false);
    }
    // Middles must avoid every alpha and beta (vertex sets).
    let mut ends = std::collections::HashSet::new();
    for (p, sp) in theta.paths.iter().zip(&w.splits) {
        ends.extend(p[..=sp.s].iter().copied());
        ends.extend(p[sp.t..].iter().copied());
    }
    for (p, sp) in theta.paths.iter().zip(&w.splits) {
        if p[sp.s + 1..sp.t].iter().any(|v| ends.contains(v)) {
            return Ok(false);
        }
    }
    let metric = ThetaMetric::from_space(space, theta)?;
    let (middle, end) = metric.margins(&w.splits);
    Ok(middle >= fatness && end >= 2.0 * fatness)
}

/// Recomputes the margins of a set of splits.
pub fn witness_for(
    space: &Subspace<'_>,
    theta: &ThetaCurve,
    splits: [Split; 3],
) -> Result<FatnessWitness> {
    let w = FatnessWitness {
        splits,
        middle_margin: 0.0,
        end_margin: 0.0,
    };
    check_splits(theta, &w)?;
    theta.check_in(space)?;
    Ok(ThetaMetric::from_space(space, theta)?.witness(splits))
}

/// The largest fatness over all splits, with a witness attaining it.
pub fn max_fatness(space: &Subspace<'_>, theta: &ThetaCurve) -> Result<MaxFatness> {
    theta.check_in(space)?;
    Ok(ThetaMetric::from_space(space, theta)?.max_fatness())
}

/// Metric label used in certificates.
pub(crate) fn mode_name(mode: MetricMode) -> &'static str {
    match mode {
        MetricMode::Ambient => "ambient",
        MetricMode::InducedPath => "induced-path",
    }
}
