//! Brute-force oracles shared by the integration tests. They use the
//! simplest possible algorithms and none of the library's traversal code.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use asdim::generators::{generate, Family, GeneratorSpec};
use asdim::{Graph, MetricMode, VertexId};

pub const INF: f64 = f64::INFINITY;

pub fn gen(family: Family, seed: u64) -> Graph {
    generate(&GeneratorSpec::new(family, seed)).unwrap()
}

/// Floyd–Warshall over the vertices passable in the given metric: all
/// vertices for the ambient metric, only `members` for the induced one.
pub fn floyd_warshall(g: &Graph, members: Option<&[VertexId]>, mode: MetricMode) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let allowed: Vec<bool> = match (members, mode) {
        (Some(ms), MetricMode::InducedPath) => {
            let mut a = vec![false; n];
            for &v in ms {
                a[v as usize] = true;
            }
            a
        }
        _ => vec![true; n],
    };
    let mut d = vec![vec![INF; n]; n];
    for v in 0..n {
        if allowed[v] {
            d[v][v] = 0.0;
        }
    }
    let weights = g.weights();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let (u, v) = (u as usize, v as usize);
        if allowed[u] && allowed[v] {
            let w = weights.map_or(1.0, |ws| ws[i]);
            d[u][v] = d[u][v].min(w);
            d[v][u] = d[v][u].min(w);
        }
    }
    for k in 0..n {
        if !allowed[k] {
            continue;
        }
        for i in 0..n {
            let dik = d[i][k];
            if dik == INF {
                continue;
            }
            for j in 0..n {
                let via = dik + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Plain BFS distances on a unit-length graph.
pub fn bfs(g: &Graph, src: VertexId) -> Vec<f64> {
    let mut d = vec![INF; g.vertex_count()];
    let mut q = VecDeque::from([src]);
    d[src as usize] = 0.0;
    while let Some(u) = q.pop_front() {
        for w in g.neighbors(u) {
            if d[w as usize] == INF {
                d[w as usize] = d[u as usize] + 1.0;
                q.push_back(w);
            }
        }
    }
    d
}

/// Classes of the transitive closure of `d(x, y) <= gap` on `subset`,
/// each sorted, listed by minimum vertex.
pub fn closure_classes(dist: &[Vec<f64>], subset: &[VertexId], gap: f64) -> Vec<Vec<VertexId>> {
    let k = subset.len();
    let mut label: Vec<usize> = (0..k).collect();
    // Repeated relabeling to the minimum neighbor label until stable.
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in 0..k {
                if dist[subset[i] as usize][subset[j] as usize] <= gap && label[j] < label[i] {
                    label[i] = label[j];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<VertexId>> = Default::default();
    for i in 0..k {
        groups.entry(label[i]).or_default().push(subset[i]);
    }
    let mut out: Vec<Vec<VertexId>> = groups
        .into_values()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out
}

/// Number of sets meeting the closed ball `B(v, r)`, by listing the ball.
pub fn ball_multiplicity(dist_from_v: &[f64], sets: &[Vec<VertexId>], r: f64) -> usize {
    let ball: BTreeSet<VertexId> = (0..dist_from_v.len() as VertexId)
        .filter(|&u| dist_from_v[u as usize] <= r)
        .collect();
    sets.iter()
        .filter(|s| s.iter().any(|v| ball.contains(v)))
        .count()
}

/// Arms of `theta(arms)` as vertex sequences, matching the generator layout.
pub fn theta_paths(arms: [usize; 3]) -> [Vec<VertexId>; 3] {
    let mut next = 2;
    arms.map(|len| {
        let mut p = vec![0];
        for _ in 1..len {
            p.push(next);
            next += 1;
        }
        p.push(1);
        p
    })
}

/// Largest M over every split tuple of an embedded theta, straight from the
/// definition: for each path and each `0 <= s < t <= len` with `t - s >= 2`,
/// take the minimum cross-middle distance and half the minimum alpha-to-beta
/// distance. Returns 0 when no tuple has all middles nonempty.
///
/// Per-path-pair minima are tabulated with running minima; the tuple
/// loop then visits all `O(L^6)` tuples.
pub fn brute_max_fatness(d: &[Vec<f64>], paths: &[Vec<VertexId>; 3]) -> f64 {
    let splits: Vec<Vec<(usize, usize)>> = paths
        .iter()
        .map(|p| {
            let len = p.len() - 1;
            let mut v = Vec::new();
            for s in 0..len {
                for t in s + 2..=len {
                    v.push((s, t));
                }
            }
            v
        })
        .collect();
    if splits.iter().any(|s| s.is_empty()) {
        return 0.0;
    }
    let dd = |i: usize, x: usize, j: usize, y: usize| d[paths[i][x] as usize][paths[j][y] as usize];
    let lens: Vec<usize> = paths.iter().map(|p| p.len() - 1).collect();
    // cross[i][j][a][b]: min distance between middles of split a on i and b on j.
    let mut cross = vec![vec![Vec::new(); 3]; 3];
    // ends[i][j][a][b]: min distance from alpha of split a on i to beta of split b on j.
    let mut ends = vec![vec![Vec::new(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (li, lj) = (lens[i], lens[j]);
            // alpha_beta[s][t] = min over x <= s, y >= t.
            let mut alpha_beta = vec![vec![INF; lj + 1]; li + 1];
            for s in 0..=li {
                for t in (0..=lj).rev() {
                    let mut v = dd(i, s, j, t);
                    if s > 0 {
                        v = v.min(alpha_beta[s - 1][t]);
                    }
                    if t < lj {
                        v = v.min(alpha_beta[s][t + 1]);
                    }
                    alpha_beta[s][t] = v;
                }
            }
            // row[x][sj][tj] = min over y in (sj, tj) of d(p_i[x], p_j[y]).
            let mut row = vec![vec![vec![INF; lj + 1]; lj + 1]; li + 1];
            for x in 0..=li {
                for sj in 0..=lj {
                    for tj in sj + 2..=lj {
                        row[x][sj][tj] = row[x][sj][tj - 1].min(dd(i, x, j, tj - 1));
                    }
                }
            }
            let mut c = vec![vec![INF; splits[j].len()]; splits[i].len()];
            let mut e = vec![vec![INF; splits[j].len()]; splits[i].len()];
            for (a, &(si, ti)) in splits[i].iter().enumerate() {
                for (b, &(sj, tj)) in splits[j].iter().enumerate() {
                    if i != j {
                        for x in si + 1..ti {
                            c[a][b] = c[a][b].min(row[x][sj][tj]);
                        }
                    }
                    e[a][b] = alpha_beta[si][tj];
                }
            }
            cross[i][j] = c;
            ends[i][j] = e;
        }
    }
    let mut best: f64 = 0.0;
    for a in 0..splits[0].len() {
        for b in 0..splits[1].len() {
            let m01 = cross[0][1][a][b];
            let e01 = ends[0][0][a][a]
                .min(ends[1][1][b][b])
                .min(ends[0][1][a][b])
                .min(ends[1][0][b][a]);
            for c in 0..splits[2].len() {
                let middle = m01.min(cross[0][2][a][c]).min(cross[1][2][b][c]);
                let end = e01
                    .min(ends[2][2][c][c])
                    .min(ends[0][2][a][c])
                    .min(ends[2][0][c][a])
                    .min(ends[1][2][b][c])
                    .min(ends[2][1][c][b]);
                best = best.max(middle.min(end / 2.0));
            }
        }
    }
    best
}

/// A cone over a K5 subdivision: every subdivision vertex gets its own path
/// of length `radius` to a common apex, so the whole subdivision sits at
/// distance exactly `radius` from the apex. The apex is the last vertex.
pub fn k5_cone(length: usize, radius: usize) -> (Graph, VertexId) {
    let k5 = gen(Family::K5Subdivision { length }, 0);
    let n0 = k5.vertex_count();
    let mut edges: Vec<(VertexId, VertexId)> = k5.edges().to_vec();
    let mut next = n0 as VertexId;
    let spoke_vertices = n0 * (radius - 1);
    let apex = (n0 + spoke_vertices) as VertexId;
    for v in 0..n0 as VertexId {
        let mut prev = v;
        for _ in 1..radius {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, apex));
    }
    (Graph::new(apex as usize + 1, edges).unwrap(), apex)
}
