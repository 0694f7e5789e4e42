//! Seeded, deterministic graph families for experiments and tests.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so a spec
//! produces the same graph on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Grid {
        w: usize,
        h: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    /// Two hubs joined by three internally disjoint paths of the given lengths.
    Theta {
        arms: [usize; 3],
    },
    /// A tree of `cycles` cycles of length about `length`, glued at cut vertices.
    CactusRandom {
        cycles: usize,
        length: usize,
    },
    /// Cycles of length about `length` in a chain, each glued to a random
    /// vertex on the far half of the previous one, giving diameter linear in
    /// the vertex count.
    CactusChain {
        cycles: usize,
        length: usize,
    },
    K5Subdivision {
        length: usize,
    },
    K33Subdivision {
        length: usize,
    },
    /// Cubes of dimension `dim` with the given side lengths, consecutive cubes
    /// joined by one edge.
    LambdaGrid {
        dim: usize,
        sizes: Vec<usize>,
    },
    /// A `w x h` grid with non-bridge edges deleted independently with probability `p`.
    RandomPlanar {
        w: usize,
        h: usize,
        p: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GeneratorSpec { family, seed }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match &spec.family {
        &Family::Grid { w, h } => grid(w, h),
        &Family::Path { n } => path(n),
        &Family::Cycle { n } => cycle(n),
        &Family::Theta { arms } => theta(arms),
        &Family::CactusRandom { cycles, length } => cactus_random(cycles, length, &mut rng),
        &Family::CactusChain { cycles, length } => cactus_chain(cycles, length, &mut rng),
        &Family::K5Subdivision { length } => {
            let pairs: Vec<(u32, u32)> = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .collect();
            subdivide(5, &pairs, length)
        }
        &Family::K33Subdivision { length } => {
            let pairs: Vec<(u32, u32)> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
            subdivide(6, &pairs, length)
        }
        Family::LambdaGrid { dim, sizes } => lambda_grid(*dim, sizes),
        &Family::RandomPlanar { w, h, p } => random_planar(w, h, p, &mut rng),
    }
}

fn grid_edges(w: usize, h: usize) -> Vec<(VertexId, VertexId)> {
    let mut e = Vec::with_capacity(2 * w * h);
    for y in 0..h {
        for x in 0..w {
            let v = (y * w + x) as VertexId;
            if x + 1 < w {
                e.push((v, v + 1));
            }
            if y + 1 < h {
                e.push((v, v + w as VertexId));
            }
        }
    }
    e
}

fn grid(w: usize, h: usize) -> Result<Graph> {
    if w == 0 || h == 0 {
        return Err(invalid("grid sides must be positive"));
    }
    Graph::new(w * h, grid_edges(w, h))
}

fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("path needs at least one vertex"));
    }
    Graph::new(n, (1..n as VertexId).map(|i| (i - 1, i)))
}

fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("cycle needs at least three vertices"));
    }
    let n32 = n as VertexId;
    Graph::new(n, (0..n32).map(|i| (i, (i + 1) % n32)))
}

/// Vertex 0 and 1 are the hubs; arm `i` follows with its internal vertices in order.
fn theta(arms: [usize; 3]) -> Result<Graph> {
    if arms.contains(&0) {
        return Err(invalid("theta arms must have length >= 1"));
    }
    if arms.iter().filter(|&&l| l == 1).count() > 1 {
        return Err(invalid("at most one theta arm may be a single edge"));
    }
    let n = 2 + arms.iter().map(|l| l - 1).sum::<usize>();
    let mut edges = Vec::new();
    let mut next = 2 as VertexId;
    for &len in &arms {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::new(n, edges)
}

/// Branch vertices `0..k`, then the internal vertices of each subdivided edge
/// in the order of `pairs`.
fn subdivide(k: usize, pairs: &[(VertexId, VertexId)], length: usize) -> Result<Graph> {
    if length == 0 {
        return Err(invalid("subdivision length must be >= 1"));
    }
    let n = k + pairs.len() * (length - 1);
    let mut edges = Vec::new();
    let mut next = k as VertexId;
    for &(a, b) in pairs {
        let mut prev = a;
        for _ in 1..length {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, b));
    }
    Graph::new(n, edges)
}

fn cactus_random(cycles: usize, length: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if cycles == 0 {
        return Err(invalid("cactus needs at least one cycle"));
    }
    if length < 3 {
        return Err(invalid("cactus cycle length must be >= 3"));
    }
    let lo = (length / 2).max(3);
    let hi = (3 * length / 2).max(lo);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    // Vertices of each cycle, so later cycles can attach to them.
    let mut blocks: Vec<Vec<VertexId>> = Vec::with_capacity(cycles);
    let mut n: VertexId = 0;
    for i in 0..cycles {
        let len = rng.gen_range(lo..=hi);
        let anchor = if i == 0 {
            n += 1;
            0
        } else {
            // Attaching near the newest cycles keeps the block tree deep.
            let parent = rng.gen_range(i.saturating_sub(4)..i);
            *blocks[parent].choose(rng).expect("cycles are nonempty")
        };
        let mut verts = vec![anchor];
        for _ in 1..len {
            verts.push(n);
            n += 1;
        }
        for j in 0..len {
            edges.push((verts[j], verts[(j + 1) % len]));
        }
        blocks.push(verts);
    }
    Graph::new(n as usize, edges)
}

fn cactus_chain(cycles: usize, length: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if cycles == 0 {
        return Err(invalid("cactus needs at least one cycle"));
    }
    if length < 4 {
        return Err(invalid("chain cycle length must be >= 4"));
    }
    let (lo, hi) = ((length / 2).max(4), (3 * length / 2).max(4));
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut n: VertexId = 1;
    let mut anchor: VertexId = 0;
    for _ in 0..cycles {
        let len = rng.gen_range(lo..=hi);
        let mut verts = vec![anchor];
        for _ in 1..len {
            verts.push(n);
            n += 1;
        }
        for j in 0..len {
            edges.push((verts[j], verts[(j + 1) % len]));
        }
        // Positions at cycle distance >= len/4 from the anchor.
        anchor = verts[rng.gen_range(len.div_ceil(4)..=len - len.div_ceil(4))];
    }
    Graph::new(n as usize, edges)
}

fn lambda_grid(dim: usize, sizes: &[usize]) -> Result<Graph> {
    if dim == 0 {
        return Err(invalid("lambda-grid dimension must be >= 1"));
    }
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(invalid(
            "lambda-grid needs at least one cube, each of side >= 1",
        ));
    }
    let mut edges = Vec::new();
    let mut offset = 0usize;
    let mut prev_corner: Option<VertexId> = None;
    for &side in sizes {
        let per = side + 1;
        let count = per
            .checked_pow(dim as u32)
            .filter(|&c| offset + c <= u32::MAX as usize)
            .ok_or_else(|| invalid("lambda-grid too large"))?;
        for idx in 0..count {
            // Step along each axis whose coordinate is not at the far face.
            let mut stride = 1;
            for _ in 0..dim {
                let coord = (idx / stride) % per;
                if coord + 1 < per {
                    edges.push((
                        (offset + idx) as VertexId,
                        (offset + idx + stride) as VertexId,
                    ));
                }
                stride *= per;
            }
        }
        if let Some(c) = prev_corner {
            edges.push((c, offset as VertexId));
        }
        prev_corner = Some((offset + count - 1) as VertexId);
        offset += count;
    }
    Graph::new(offset, edges)
}

fn random_planar(w: usize, h: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if w == 0 || h == 0 {
        return Err(invalid("grid sides must be positive"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!(
            "deletion probability must lie in [0,1], got {p}"
        )));
    }
    let n = w * h;
    let edges = grid_edges(w, h);
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(rng);

    let mut alive = vec![true; edges.len()];
    let mut adj: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u as usize].push((v, i));
        adj[v as usize].push((u, i));
    }
    let mut mark = vec![0u32; n];
    let mut epoch = 0u32;
    let mut queue = std::collections::VecDeque::new();
    for i in order {
        if !rng.gen_bool(p) {
            continue;
        }
        // Delete only if the endpoints stay connected without this edge.
        let (u, v) = edges[i];
        alive[i] = false;
        epoch += 1;
        queue.clear();
        queue.push_back(u);
        mark[u as usize] = epoch;
        let mut connected = false;
        while let Some(x) = queue.pop_front() {
            if x == v {
                connected = true;
                break;
            }
            for &(y, e) in &adj[x as usize] {
                if alive[e] && mark[y as usize] != epoch {
                    mark[y as usize] = epoch;
                    queue.push_back(y);
                }
            }
        }
        if !connected {
            alive[i] = true;
        }
    }
    Graph::new(
        n,
        edges
            .into_iter()
            .zip(alive)
            .filter_map(|(e, keep)| keep.then_some(e)),
    )
}

/// Whether every biconnected block is a single edge or a simple cycle.
pub fn is_cactus(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut disc = vec![0u32; n];
    let mut low = vec![0u32; n];
    let mut timer = 0u32;
    let mut edge_stack: Vec<u32> = Vec::new();
    // (vertex, edge used to enter it, next adjacency position)
    let mut frames: Vec<(VertexId, u32, usize)> = Vec::new();
    let mut stamp = vec![u32::MAX; n];
    let mut block_id = 0u32;

    for root in 0..n as VertexId {
        if disc[root as usize] != 0 {
            continue;
        }
        timer += 1;
        disc[root as usize] = timer;
        low[root as usize] = timer;
        frames.push((root, u32::MAX, 0));
        while let Some(top) = frames.last_mut() {
            let (v, parent_edge, pos) = *top;
            let inc = g.incident(v);
            if pos < inc.len() {
                top.2 += 1;
                let (w, e) = inc[pos];
                if e == parent_edge {
                    continue;
                }
                if disc[w as usize] == 0 {
                    edge_stack.push(e);
                    timer += 1;
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    frames.push((w, e, 0));
                } else if disc[w as usize] < disc[v as usize] {
                    edge_stack.push(e);
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
                continue;
            }
            frames.pop();
            let Some(&(p, _, _)) = frames.last() else {
                continue;
            };
            low[p as usize] = low[p as usize].min(low[v as usize]);
            if low[v as usize] >= disc[p as usize] {
                // Pop one block: every edge down to the tree edge (p, v).
                let mut edges_in_block = 0usize;
                let mut vertices_in_block = 0usize;
                loop {
                    let e = edge_stack.pop().expect("block edges on stack");
                    edges_in_block += 1;
                    let (a, b) = g.edges()[e as usize];
                    for x in [a, b] {
                        if stamp[x as usize] != block_id {
                            stamp[x as usize] = block_id;
                            vertices_in_block += 1;
                        }
                    }
                    if e == parent_edge {
                        break;
                    }
                }
                block_id += 1;
                if edges_in_block != 1 && edges_in_block != vertices_in_block {
                    return false;
                }
            }
        }
    }
    true
}
