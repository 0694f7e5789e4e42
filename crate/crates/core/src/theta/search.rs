//! Searching a space for M-fat thetas.
//!
//! Only the 2-core of the space can carry a theta, and both hubs must have
//! degree at least 3 there. A hub pair must also be `2M` apart and joined by
//! three internally disjoint paths avoiding the direct edge (checked by a
//! unit-capacity flow) before any paths are enumerated.
//!
//! Work is split into hub pairs processed in fixed-size parallel batches;
//! each pair gets the budget left at the start of its batch and results are
//! consumed in pair order, so the outcome does not depend on thread count.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{is_fat, mode_name, FatnessWitness, Split, ThetaCurve, ThetaMetric};
use crate::decomposition::in_band;
use crate::error::{invalid, Result};
use crate::graph::{Graph, VertexId};
use crate::metric::{components, sssp, Explorer, MetricMode, Subspace, INF};

const TABLE_LIMIT: usize = 2048;
const BATCH: usize = 64;
const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Every theta whose paths have length at most the cutoff.
    Exhaustive,
    /// Seeded sampling of hub pairs joined by successive shortest paths.
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Maximum length of a theta path (exhaustive mode).
    pub cutoff: f64,
    /// Exhaustive: search steps (path extensions plus thetas examined).
    /// Random: samples.
    pub budget: u64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::Exhaustive,
            cutoff: INF,
            budget: 10_000_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    /// Exhaustive search finished: no M-fat theta with paths within the cutoff.
    ProvedNone,
    /// Random search drew every sample without success.
    NoneWithinBudget,
    /// Exhaustive search stopped before finishing.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "M")]
    pub fatness: f64,
    pub metric: MetricMode,
    pub a: VertexId,
    pub b: VertexId,
    pub paths: [Vec<VertexId>; 3],
    pub splits: [Split; 3],
    pub middle_margin: f64,
    pub end_margin: f64,
}

impl Certificate {
    pub fn theta(&self) -> Result<ThetaCurve> {
        let th = ThetaCurve::new(self.paths.clone())?;
        if th.a != self.a || th.b != self.b {
            return Err(invalid("certificate hubs do not match its paths"));
        }
        Ok(th)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(self).expect("certificate serialization cannot fail");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub status: SearchStatus,
    pub mode: SearchMode,
    #[serde(rename = "M")]
    pub fatness: f64,
    pub metric: MetricMode,
    pub cutoff: f64,
    pub budget: u64,
    pub seed: u64,
    pub hubs: usize,
    pub candidate_pairs: usize,
    pub examined: u64,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub valid: bool,
    pub reason: Option<String>,
    pub middle_margin: f64,
    pub end_margin: f64,
}

/// Re-checks a certificate from scratch in `space`.
pub fn verify_certificate(space: &Subspace<'_>, cert: &Certificate) -> Result<CertificateCheck> {
    let theta = cert.theta()?;
    theta.check_in(space)?;
    let w = super::witness_for(space, &theta, cert.splits)?;
    let reject = |reason: String| CertificateCheck {
        valid: false,
        reason: Some(reason),
        middle_margin: w.middle_margin,
        end_margin: w.end_margin,
    };
    if cert.metric != space.mode() {
        return Ok(reject(format!(
            "certificate metric is {} but the space uses {}",
            mode_name(cert.metric),
            mode_name(space.mode())
        )));
    }
    if !is_fat(space, &theta, cert.fatness, &w)? {
        return Ok(reject(format!(
            "splits are not {}-fat (middle margin {}, end margin {})",
            cert.fatness, w.middle_margin, w.end_margin
        )));
    }
    let close = |x: f64, y: f64| x == y || (x - y).abs() <= 1e-9 * x.abs().max(1.0);
    if !close(w.middle_margin, cert.middle_margin) || !close(w.end_margin, cert.end_margin) {
        return Ok(reject(format!(
            "stored margins ({}, {}) differ from recomputed ({}, {})",
            cert.middle_margin, cert.end_margin, w.middle_margin, w.end_margin
        )));
    }
    Ok(CertificateCheck {
        valid: true,
        reason: None,
        middle_margin: w.middle_margin,
        end_margin: w.end_margin,
    })
}

#[derive(Clone, Copy, PartialEq)]
struct Item(f64, u32);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The 2-core of the space's member subgraph, with local indices.
struct Core<'s, 'g> {
    space: &'s Subspace<'g>,
    verts: Vec<VertexId>,
    local: Vec<u32>,
    adj: Vec<Vec<(u32, f64)>>,
    hubs: Vec<u32>,
    /// Space distances between core vertices, when small enough to store.
    table: Option<Vec<f64>>,
}

impl<'s, 'g> Core<'s, 'g> {
    fn new(space: &'s Subspace<'g>) -> Self {
        let g = space.graph();
        let n = g.vertex_count();
        let mut deg = vec![0usize; n];
        for &v in space.vertices() {
            deg[v as usize] = g.neighbors(v).filter(|&w| space.contains(w)).count();
        }
        let mut alive: Vec<bool> = (0..n).map(|v| space.contains(v as VertexId)).collect();
        let mut stack: Vec<VertexId> = space
            .vertices()
            .iter()
            .copied()
            .filter(|&v| deg[v as usize] < 2)
            .collect();
        while let Some(v) = stack.pop() {
            if !alive[v as usize] {
                continue;
            }
            alive[v as usize] = false;
            for w in g.neighbors(v) {
                let wi = w as usize;
                if alive[wi] {
                    deg[wi] -= 1;
                    if deg[wi] < 2 {
                        stack.push(w);
                    }
                }
            }
        }
        let verts: Vec<VertexId> = space
            .vertices()
            .iter()
            .copied()
            .filter(|&v| alive[v as usize])
            .collect();
        let mut local = vec![NONE; n];
        for (i, &v) in verts.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let adj: Vec<Vec<(u32, f64)>> = verts
            .iter()
            .map(|&v| {
                g.weighted_neighbors(v)
                    .filter(|&(w, _)| local[w as usize] != NONE)
                    .map(|(w, len)| (local[w as usize], len))
                    .collect()
            })
            .collect();
        let hubs = (0..verts.len() as u32)
            .filter(|&i| adj[i as usize].len() >= 3)
            .collect();
        let mut core = Core {
            space,
            verts,
            local,
            adj,
            hubs,
            table: None,
        };
        if !core.hubs.is_empty() && core.verts.len() <= TABLE_LIMIT {
            core.table = Some(core.build_table());
        }
        core
    }

    fn build_table(&self) -> Vec<f64> {
        let k = self.verts.len();
        let n = self.space.graph().vertex_count();
        let rows: Vec<Vec<f64>> = self
            .verts
            .par_iter()
            .map_init(
                || Explorer::new(n),
                |ex, &u| {
                    ex.explore(self.space, [(u, 0)], INF, |_, _| false);
                    self.verts.iter().map(|&v| ex.dist(v)).collect()
                },
            )
            .collect();
        let mut out = Vec::with_capacity(k * k);
        for r in rows {
            out.extend(r);
        }
        out
    }

    /// Space distance between two core vertices.
    fn space_dist(&self, u: u32, v: u32, ex: &mut Explorer) -> f64 {
        if let Some(t) = &self.table {
            return t[u as usize * self.verts.len() + v as usize];
        }
        let target = self.verts[v as usize];
        ex.explore(self.space, [(self.verts[u as usize], 0)], INF, |w, _| {
            w == target
        });
        ex.dist(target)
    }

    fn metric(&self, theta: &ThetaCurve) -> Result<ThetaMetric> {
        match &self.table {
            Some(t) => {
                let k = self.verts.len();
                Ok(ThetaMetric::from_lookup(theta, |u, v| {
                    t[self.local[u as usize] as usize * k + self.local[v as usize] as usize]
                }))
            }
            None => ThetaMetric::from_space(self.space, theta),
        }
    }

    /// Core distances from `src` avoiding `blocked` vertices and the edge `skip`.
    fn dists(&self, src: u32, blocked: &[bool], skip: (u32, u32)) -> Vec<f64> {
        let mut d = vec![INF; self.verts.len()];
        let mut heap = BinaryHeap::new();
        d[src as usize] = 0.0;
        heap.push(Item(0.0, src));
        while let Some(Item(du, u)) = heap.pop() {
            if du > d[u as usize] {
                continue;
            }
            for &(w, len) in &self.adj[u as usize] {
                if blocked[w as usize] || (u, w) == skip || (w, u) == skip {
                    continue;
                }
                let nd = du + len;
                if nd < d[w as usize] {
                    d[w as usize] = nd;
                    heap.push(Item(nd, w));
                }
            }
        }
        d
    }

    /// Whether three internally disjoint `a`-`b` paths avoid the direct edge.
    fn three_connected(&self, a: u32, b: u32) -> bool {
        // Vertex-split unit-capacity flow: node 2i is v_in, 2i+1 is v_out.
        let k = self.verts.len();
        let mut head = vec![usize::MAX; 2 * k];
        let mut to = Vec::new();
        let mut cap = Vec::new();
        let mut next = Vec::new();
        let mut add = |u: usize, v: usize, c: i32, head: &mut Vec<usize>| {
            for (x, y, cc) in [(u, v, c), (v, u, 0)] {
                to.push(y);
                cap.push(cc);
                next.push(head[x]);
                head[x] = to.len() - 1;
            }
        };
        for i in 0..k {
            add(2 * i, 2 * i + 1, 1, &mut head);
            for &(w, _) in &self.adj[i] {
                if (i as u32, w) == (a, b) || (i as u32, w) == (b, a) {
                    continue;
                }
                add(2 * i + 1, 2 * w as usize, 1, &mut head);
            }
        }
        let (s, t) = (2 * a as usize + 1, 2 * b as usize);
        let mut prev = vec![usize::MAX; 2 * k];
        for _ in 0..3 {
            prev.fill(usize::MAX);
            let mut queue = std::collections::VecDeque::from([s]);
            let mut reached = false;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    reached = true;
                    break;
                }
                let mut e = head[u];
                while e != usize::MAX {
                    let v = to[e];
                    if cap[e] > 0 && v != s && prev[v] == usize::MAX {
                        prev[v] = e;
                        queue.push_back(v);
                    }
                    e = next[e];
                }
            }
            if !reached {
                return false;
            }
            let mut v = t;
            while v != s {
                let e = prev[v];
                cap[e] -= 1;
                cap[e ^ 1] += 1;
                v = to[e ^ 1];
            }
        }
        true
    }
}

struct PairResult {
    used: u64,
    complete: bool,
    found: Option<(ThetaCurve, [Split; 3])>,
}

/// All simple `a`-`b` core paths with an interior and length within `cutoff`,
/// in lexicographic order. `None` if the step cap is hit.
fn enumerate_paths(
    core: &Core<'_, '_>,
    a: u32,
    b: u32,
    cutoff: f64,
    used: &mut u64,
    cap: u64,
) -> Option<Vec<Vec<u32>>> {
    let k = core.verts.len();
    let to_b = core.dists(b, &vec![false; k], (NONE, NONE));
    let mut on_path = vec![false; k];
    let mut out = Vec::new();
    let mut path = vec![a];
    let mut lens = vec![0.0f64];
    let mut cursor = vec![0usize];
    on_path[a as usize] = true;
    while let Some(&u) = path.last() {
        let depth = path.len() - 1;
        let pos = cursor[depth];
        if pos == core.adj[u as usize].len() {
            on_path[u as usize] = false;
            path.pop();
            lens.pop();
            cursor.pop();
            continue;
        }
        cursor[depth] += 1;
        let (w, len) = core.adj[u as usize][pos];
        if on_path[w as usize] {
            continue;
        }
        let nl = lens[depth] + len;
        if nl + to_b[w as usize] > cutoff {
            continue;
        }
        *used += 1;
        if *used > cap {
            return None;
        }
        if w == b {
            if depth >= 1 {
                let mut p = path.clone();
                p.push(b);
                out.push(p);
            }
            continue;
        }
        on_path[w as usize] = true;
        path.push(w);
        lens.push(nl);
        cursor.push(0);
    }
    Some(out)
}

fn interiors_meet(p: &[u32], q: &[u32], mark: &mut [u32], stamp: u32) -> bool {
    for &v in &p[1..p.len() - 1] {
        mark[v as usize] = stamp;
    }
    q[1..q.len() - 1].iter().any(|&v| mark[v as usize] == stamp)
}

fn search_pair(
    core: &Core<'_, '_>,
    a: u32,
    b: u32,
    fatness: f64,
    cutoff: f64,
    cap: u64,
) -> Result<PairResult> {
    let mut used = 0u64;
    let Some(paths) = enumerate_paths(core, a, b, cutoff, &mut used, cap) else {
        return Ok(PairResult {
            used,
            complete: false,
            found: None,
        });
    };
    let mut mark = vec![0u32; core.verts.len()];
    let mut stamp = 0u32;
    let mut meets = |p: &[u32], q: &[u32]| {
        stamp += 1;
        interiors_meet(p, q, &mut mark, stamp)
    };
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            if meets(&paths[i], &paths[j]) {
                continue;
            }
            for l in j + 1..paths.len() {
                if meets(&paths[i], &paths[l]) || meets(&paths[j], &paths[l]) {
                    continue;
                }
                used += 1;
                if used > cap {
                    return Ok(PairResult {
                        used,
                        complete: false,
                        found: None,
                    });
                }
                let global = |p: &Vec<u32>| {
                    p.iter()
                        .map(|&x| core.verts[x as usize])
                        .collect::<Vec<_>>()
                };
                let theta =
                    ThetaCurve::new([global(&paths[i]), global(&paths[j]), global(&paths[l])])?;
                if let Some(sp) = core.metric(&theta)?.fat_splits(fatness) {
                    return Ok(PairResult {
                        used,
                        complete: true,
                        found: Some((theta, sp)),
                    });
                }
            }
        }
    }
    Ok(PairResult {
        used,
        complete: true,
        found: None,
    })
}

/// One randomized shortest path from `a` to `b` in the core.
fn random_path(
    core: &Core<'_, '_>,
    a: u32,
    b: u32,
    blocked: &[bool],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<u32>> {
    let d = core.dists(b, blocked, (a, b));
    if !d[a as usize].is_finite() {
        return None;
    }
    let mut path = vec![a];
    let mut u = a;
    while u != b {
        let du = d[u as usize];
        let step: Vec<u32> = core.adj[u as usize]
            .iter()
            .filter(|&&(w, len)| {
                !blocked[w as usize]
                    && (u, w) != (a, b)
                    && (d[w as usize] + len - du).abs() <= 1e-9 * du.max(1.0)
            })
            .map(|&(w, _)| w)
            .collect();
        u = *step.choose(rng)?;
        path.push(u);
    }
    Some(path)
}

fn sample(
    core: &Core<'_, '_>,
    fatness: f64,
    seed: u64,
    iter: u64,
    ex: &mut Explorer,
) -> Result<Option<(ThetaCurve, [Split; 3])>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iter);
    let h = core.hubs.len();
    let a = core.hubs[rng.gen_range(0..h)];
    let mut b = core.hubs[rng.gen_range(0..h - 1)];
    if b == a {
        b = core.hubs[h - 1];
    }
    if core.space_dist(a, b, ex) < 2.0 * fatness {
        return Ok(None);
    }
    let mut blocked = vec![false; core.verts.len()];
    let mut paths = Vec::with_capacity(3);
    for _ in 0..3 {
        let Some(p) = random_path(core, a, b, &blocked, &mut rng) else {
            return Ok(None);
        };
        for &v in &p[1..p.len() - 1] {
            blocked[v as usize] = true;
        }
        paths.push(
            p.iter()
                .map(|&x| core.verts[x as usize])
                .collect::<Vec<_>>(),
        );
    }
    let paths: [Vec<VertexId>; 3] = paths.try_into().expect("three paths");
    let theta = ThetaCurve::new(paths)?;
    Ok(core
        .metric(&theta)?
        .fat_splits(fatness)
        .map(|sp| (theta, sp)))
}

/// Searches `space` for an M-fat theta.
pub fn find_fat_theta(
    space: &Subspace<'_>,
    fatness: f64,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    if !(fatness > 0.0 && fatness.is_finite()) {
        return Err(invalid(format!("M must be positive, got {fatness}")));
    }
    if !(opts.cutoff > 0.0) {
        return Err(invalid(format!(
            "cutoff must be positive, got {}",
            opts.cutoff
        )));
    }
    let core = Core::new(space);
    let n = space.graph().vertex_count();
    let mut report = SearchReport {
        status: SearchStatus::ProvedNone,
        mode: opts.mode,
        fatness,
        metric: space.mode(),
        cutoff: opts.cutoff,
        budget: opts.budget,
        seed: opts.seed,
        hubs: core.hubs.len(),
        candidate_pairs: 0,
        examined: 0,
        certificate: None,
    };
    let found = match opts.mode {
        SearchMode::Exhaustive => exhaustive(&core, fatness, opts, &mut report)?,
        SearchMode::Random => {
            report.status = SearchStatus::NoneWithinBudget;
            if core.hubs.len() < 2 {
                None
            } else {
                let hit = (0..opts.budget)
                    .into_par_iter()
                    .map_init(
                        || Explorer::new(n),
                        |ex, i| sample(&core, fatness, opts.seed, i, ex).map(|r| r.map(|x| (i, x))),
                    )
                    .find_map_first(|r| match r {
                        Ok(None) => None,
                        other => Some(other),
                    })
                    .transpose()?
                    .flatten();
                report.examined = hit.as_ref().map_or(opts.budget, |(i, _)| i + 1);
                hit.map(|(_, x)| x)
            }
        }
    };
    if let Some((theta, splits)) = found {
        let w: FatnessWitness = core.metric(&theta)?.witness(splits);
        debug_assert!(is_fat(space, &theta, fatness, &w)?);
        report.status = SearchStatus::Found;
        report.certificate = Some(Certificate {
            fatness,
            metric: space.mode(),
            a: theta.a,
            b: theta.b,
            paths: theta.paths,
            splits,
            middle_margin: w.middle_margin,
            end_margin: w.end_margin,
        });
    }
    Ok(report)
}

fn exhaustive(
    core: &Core<'_, '_>,
    fatness: f64,
    opts: &SearchOptions,
    report: &mut SearchReport,
) -> Result<Option<(ThetaCurve, [Split; 3])>> {
    let n = core.space.graph().vertex_count();
    let hubs = &core.hubs;
    let pairs: Vec<(u32, u32)> = hubs
        .par_iter()
        .enumerate()
        .map_init(
            || Explorer::new(n),
            |ex, (i, &a)| {
                hubs[i + 1..]
                    .iter()
                    .filter(|&&b| core.space_dist(a, b, ex) >= 2.0 * fatness)
                    .map(|&b| (a, b))
                    .collect::<Vec<_>>()
            },
        )
        .flatten()
        .collect();
    report.candidate_pairs = pairs.len();
    let mut used = 0u64;
    for batch in pairs.chunks(BATCH) {
        let cap = opts.budget - used;
        let results: Vec<Result<PairResult>> = batch
            .par_iter()
            .map(|&(a, b)| {
                if !core.three_connected(a, b) {
                    return Ok(PairResult {
                        used: 0,
                        complete: true,
                        found: None,
                    });
                }
                search_pair(core, a, b, fatness, opts.cutoff, cap)
            })
            .collect();
        for r in results {
            let r = r?;
            if !r.complete || used + r.used > opts.budget {
                report.examined = opts.budget;
                report.status = SearchStatus::BudgetExhausted;
                return Ok(None);
            }
            used += r.used;
            report.examined = used;
            if r.found.is_some() {
                return Ok(r.found);
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentOutcome {
    pub min_vertex: VertexId,
    pub size: usize,
    pub report: SearchReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnulusThetaReport {
    pub base: VertexId,
    pub r: f64,
    pub m: f64,
    /// No component holds an m-fat theta found by the search.
    pub theta_free: bool,
    /// Every component search ran to completion.
    pub complete: bool,
    pub components: Vec<ComponentOutcome>,
}

/// Searches every component of `A(r, r+m)` around `base`, each in its own
/// path metric, for an m-fat theta.
pub fn check_annulus_theta_free(
    g: &Graph,
    base: VertexId,
    r: f64,
    m: f64,
    opts: &SearchOptions,
) -> Result<AnnulusThetaReport> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(invalid(format!("m must be positive, got {m}")));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(invalid(format!("r must be nonnegative, got {r}")));
    }
    let dist = sssp(&Subspace::whole(g), base)?;
    let band: Vec<VertexId> = (0..g.vertex_count() as VertexId)
        .filter(|&v| in_band(dist[v as usize], r, r + m))
        .collect();
    let annulus = Subspace::new(g, band, MetricMode::InducedPath)?;
    let mut out = Vec::new();
    for comp in components(&annulus) {
        let sub = Subspace::new(g, comp.iter().copied(), MetricMode::InducedPath)?;
        out.push(ComponentOutcome {
            min_vertex: comp[0],
            size: comp.len(),
            report: find_fat_theta(&sub, m, opts)?,
        });
    }
    Ok(AnnulusThetaReport {
        base,
        r,
        m,
        theta_free: out.iter().all(|c| c.report.status != SearchStatus::Found),
        complete: out
            .iter()
            .all(|c| c.report.status == SearchStatus::ProvedNone),
        components: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family, GeneratorSpec};

    fn gen(f: Family, seed: u64) -> Graph {
        generate(&GeneratorSpec::new(f, seed)).unwrap()
    }

    #[test]
    fn finds_fat_theta_in_theta_graph() {
        let g = gen(Family::Theta { arms: [60, 60, 60] }, 0);
        let space = Subspace::whole(&g);
        let r = find_fat_theta(&space, 10.0, &SearchOptions::default()).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        let cert = r.certificate.unwrap();
        assert!(verify_certificate(&space, &cert).unwrap().valid);
        let round = Certificate::from_json_str(&cert.to_json_string()).unwrap();
        assert_eq!(round, cert);
    }

    #[test]
    fn too_fat_is_proved_absent() {
        let g = gen(Family::Theta { arms: [12, 12, 12] }, 0);
        let r = find_fat_theta(&Subspace::whole(&g), 20.0, &SearchOptions::default()).unwrap();
        assert_eq!(r.status, SearchStatus::ProvedNone);
    }

    #[test]
    fn cycles_have_no_hubs() {
        let g = gen(Family::Cycle { n: 30 }, 0);
        let r = find_fat_theta(&Subspace::whole(&g), 1.0, &SearchOptions::default()).unwrap();
        assert_eq!((r.status, r.hubs), (SearchStatus::ProvedNone, 0));
    }

    #[test]
    fn pendant_trees_are_pruned() {
        // A cycle with hairs: every cycle vertex has degree 3 but no theta exists.
        let mut edges: Vec<(u32, u32)> = (0..20).map(|i| (i, (i + 1) % 20)).collect();
        edges.extend((0..20).map(|i| (i, 20 + i)));
        let g = Graph::new(40, edges).unwrap();
        let r = find_fat_theta(&Subspace::whole(&g), 1.0, &SearchOptions::default()).unwrap();
        assert_eq!((r.status, r.hubs), (SearchStatus::ProvedNone, 0));
    }

    #[test]
    fn random_mode_finds_and_is_deterministic() {
        let g = gen(Family::K5Subdivision { length: 20 }, 0);
        let space = Subspace::whole(&g);
        let opts = SearchOptions {
            mode: SearchMode::Random,
            budget: 500,
            seed: 3,
            ..Default::default()
        };
        let r = find_fat_theta(&space, 3.0, &opts).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        assert!(
            verify_certificate(&space, r.certificate.as_ref().unwrap())
                .unwrap()
                .valid
        );
        assert_eq!(find_fat_theta(&space, 3.0, &opts).unwrap(), r);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let g = gen(Family::Grid { w: 6, h: 6 }, 0);
        let opts = SearchOptions {
            budget: 5,
            ..Default::default()
        };
        let r = find_fat_theta(&Subspace::whole(&g), 1.0, &opts).unwrap();
        assert_eq!(r.status, SearchStatus::BudgetExhausted);
    }

    #[test]
    fn tampered_certificate_fails() {
        let g = gen(Family::Theta { arms: [30, 30, 30] }, 0);
        let space = Subspace::whole(&g);
        let mut cert = find_fat_theta(&space, 5.0, &SearchOptions::default())
            .unwrap()
            .certificate
            .unwrap();
        cert.middle_margin += 1.0;
        assert!(!verify_certificate(&space, &cert).unwrap().valid);
        cert.middle_margin -= 1.0;
        cert.fatness = 100.0;
        assert!(!verify_certificate(&space, &cert).unwrap().valid);
        cert.paths[0][1] = 1000;
        assert!(verify_certificate(&space, &cert).is_err());
    }

    #[test]
    fn grid_annulus_components_are_theta_free() {
        let g = gen(Family::Grid { w: 40, h: 40 }, 0);
        let opts = SearchOptions {
            cutoff: 30.0,
            ..Default::default()
        };
        let r = check_annulus_theta_free(&g, 0, 20.0, 4.0, &opts).unwrap();
        assert!(r.theta_free && r.complete);
        assert_eq!(r.components.len(), 1);
    }
}
