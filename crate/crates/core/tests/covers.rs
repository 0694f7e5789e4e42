mod common;

use std::collections::VecDeque;

use asdim::covers::{annulus_cover, cactus_cover, coarse_cactus_cover, lemma0_cover, planar_cover};
use asdim::generators::Family;
use asdim::metric::sssp;
use asdim::verify::{separation_check, verify_cover};
use asdim::{Graph, MetricMode, Subspace, VertexId};
use common::*;

fn sets(cover: &asdim::covers::Cover) -> Vec<Vec<VertexId>> {
    let mut s: Vec<_> = cover.sets.iter().map(|s| s.vertices.clone()).collect();
    s.sort();
    s
}

/// Distances from every member to every vertex, moving only through members.
fn all_pairs_within(g: &Graph, members: &[VertexId]) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in members {
        inside[v as usize] = true;
    }
    let mut out = vec![Vec::new(); n];
    for &s in members {
        let mut d = vec![INF; n];
        d[s as usize] = 0.0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for w in g.neighbors(u) {
                if inside[w as usize] && d[w as usize] == INF {
                    d[w as usize] = d[u as usize] + 1.0;
                    q.push_back(w);
                }
            }
        }
        out[s as usize] = d;
    }
    out
}

/// Annuli of width `width` around `root` split by closure at `gap`, all in
/// the path metric of `members`.
fn annulus_closure_oracle(
    g: &Graph,
    members: &[VertexId],
    root: VertexId,
    width: f64,
    gap: f64,
) -> Vec<Vec<VertexId>> {
    let d = all_pairs_within(g, members);
    let mut buckets: std::collections::BTreeMap<u64, Vec<VertexId>> = Default::default();
    for &v in members {
        buckets
            .entry((d[root as usize][v as usize] / width).floor() as u64)
            .or_default()
            .push(v);
    }
    let mut out: Vec<Vec<VertexId>> = buckets
        .values()
        .flat_map(|b| closure_classes(&d, b, gap))
        .collect();
    out.sort();
    out
}

#[test]
fn cactus_cover_of_single_vertex() {
    let g = Graph::new(1, []).unwrap();
    assert_eq!(sets(&cactus_cover(&g, 0, 1.0).unwrap()), vec![vec![0]]);
}

#[test]
fn cactus_cover_of_path_is_hundred_vertex_intervals() {
    let g = gen(Family::Path { n: 500 }, 0);
    let c = cactus_cover(&g, 0, 1.0).unwrap();
    let expect: Vec<Vec<VertexId>> = (0..5).map(|k| (100 * k..100 * k + 100).collect()).collect();
    assert_eq!(sets(&c), expect);
}

#[test]
fn cactus_cover_of_cycle_matches_closure_oracle() {
    let g = gen(Family::Cycle { n: 1000 }, 0);
    let c = cactus_cover(&g, 0, 1.0).unwrap();
    let mut per_annulus = vec![0; 6];
    for s in &c.sets {
        per_annulus[s.annulus] += 1;
    }
    assert_eq!(per_annulus, vec![1, 2, 2, 2, 1, 1]);
    let all: Vec<VertexId> = (0..1000).collect();
    assert_eq!(sets(&c), annulus_closure_oracle(&g, &all, 0, 100.0, 10.0));
}

#[test]
fn coarse_cover_uses_larger_scale() {
    let g = gen(
        Family::RandomPlanar {
            w: 30,
            h: 30,
            p: 0.4,
        },
        5,
    );
    let space = Subspace::whole(&g);
    let a = coarse_cactus_cover(&space, 0, 1.0, 5.0).unwrap();
    let b = coarse_cactus_cover(&space, 0, 5.0, 5.0).unwrap();
    assert_eq!(a.sets, b.sets);
    assert_eq!(a.param("N"), Some(500.0));
}

#[test]
fn coarse_cover_of_small_theta_matches_oracle() {
    let g = gen(Family::Theta { arms: [12, 12, 12] }, 0);
    let c = coarse_cactus_cover(&Subspace::whole(&g), 0, 1.0, 1.0).unwrap();
    let all: Vec<VertexId> = (0..g.vertex_count() as VertexId).collect();
    let oracle = annulus_closure_oracle(&g, &all, 0, 100.0, 10.0);
    assert_eq!(sets(&c), oracle);
    assert_eq!(c.len(), 1);
}

#[test]
fn coarse_cover_of_long_cycle_is_bounded() {
    let g = gen(Family::Cycle { n: 2000 }, 0);
    let space = Subspace::whole(&g);
    let c = coarse_cactus_cover(&space, 0, 2.0, 2.0).unwrap();
    let r = verify_cover(&space, &c, 2e5, 2.0, 2);
    assert!(r.passed, "{:?}", r.violations);
}

#[test]
fn lemma0_on_path_segment_gives_one_class_per_inner_annulus() {
    let g = gen(Family::Path { n: 2000 }, 0);
    let segment: Vec<VertexId> = (300..1500).collect();
    let c = lemma0_cover(&g, &segment, 1.0, 1.0).unwrap();
    assert_eq!(c.param("N"), Some(500.0));
    let expect: Vec<Vec<VertexId>> = vec![
        (300..800).collect(),
        (800..1300).collect(),
        (1300..1500).collect(),
    ];
    assert_eq!(sets(&c), expect);
}

#[test]
fn lemma0_on_cycle_annulus_component_matches_path_metric_oracle() {
    let g = gen(Family::Cycle { n: 6000 }, 0);
    let d = sssp(&Subspace::whole(&g), 0).unwrap();
    // One arc of the annulus 1000 <= d < 2300.
    let arc: Vec<VertexId> = (0..6000)
        .filter(|&v| (1000.0..2300.0).contains(&d[v as usize]) && v < 3000)
        .collect();
    let c = lemma0_cover(&g, &arc, 1.0, 1.0).unwrap();
    assert_eq!(
        sets(&c),
        annulus_closure_oracle(&g, &arc, arc[0], 500.0, 50.0)
    );
}

#[test]
fn lemma0_on_small_component_is_one_set() {
    let g = gen(Family::Grid { w: 12, h: 12 }, 0);
    let all: Vec<VertexId> = (0..144).collect();
    assert_eq!(lemma0_cover(&g, &all, 1.0, 1.0).unwrap().len(), 1);
}

#[test]
fn annulus_cover_near_base_is_the_ball() {
    let g = gen(Family::Grid { w: 9, h: 9 }, 0);
    let c = annulus_cover(&g, 40, 0.0, 3.0).unwrap();
    let d = bfs(&g, 40);
    let ball: Vec<VertexId> = (0..81).filter(|&v| d[v as usize] < 3.0).collect();
    assert_eq!(sets(&c), vec![ball]);
}

#[test]
fn annulus_cover_of_grid_verifies() {
    let g = gen(Family::Grid { w: 101, h: 101 }, 0);
    let center = 50 * 101 + 50;
    let c = annulus_cover(&g, center, 30.0, 3.0).unwrap();
    let d = bfs(&g, center);
    let band: Vec<VertexId> = (0..g.vertex_count() as VertexId)
        .filter(|&v| (30.0..33.0).contains(&d[v as usize]))
        .collect();
    let space = Subspace::new(&g, band, MetricMode::Ambient).unwrap();
    let r = verify_cover(&space, &c, 3e6, 3.0, 2);
    assert!(r.passed, "{:?}", r.violations);
    assert!(!c.sets.is_empty());
}

#[test]
fn annulus_cover_of_cycle_gives_two_separated_arcs() {
    let g = gen(Family::Cycle { n: 10000 }, 0);
    let c = annulus_cover(&g, 0, 1000.0, 5.0).unwrap();
    assert_eq!(c.len(), 2);
    let s = separation_check(&Subspace::whole(&g), &sets(&c), 10.0).unwrap();
    assert!(s.separated);
    assert!(s.min_distance.unwrap() > 10.0);
}

#[test]
fn planar_cover_of_single_vertex() {
    let g = Graph::new(1, []).unwrap();
    assert_eq!(sets(&planar_cover(&g, 0, 1.0).unwrap()), vec![vec![0]]);
}

#[test]
fn planar_cover_of_long_path_is_intervals_and_verifies() {
    let g = gen(Family::Path { n: 10000 }, 0);
    let c = planar_cover(&g, 0, 1.0).unwrap();
    for s in &c.sets {
        let v = &s.vertices;
        assert_eq!((v[v.len() - 1] - v[0]) as usize, v.len() - 1, "{}", s.label);
    }
    let r = verify_cover(&Subspace::whole(&g), &c, 3e6, 1.0, 4);
    assert!(r.passed && r.partition_ok, "{:?}", r.violations);
}

#[test]
fn disconnected_graphs_are_covered_per_component() {
    let g = Graph::new(7, [(0, 1), (1, 2), (3, 4), (5, 6)]).unwrap();
    for c in [
        cactus_cover(&g, 4, 1.0).unwrap(),
        planar_cover(&g, 4, 1.0).unwrap(),
    ] {
        let r = verify_cover(&Subspace::whole(&g), &c, 1e9, 1.0, 4);
        assert!(r.coverage_ok && r.partition_ok);
        assert_eq!(c.len(), 3);
    }
}
