//! Deterministic graph generators: fixed shapes for tests and seeded random
//! families standing in for the benchmark corpus when no downloaded
//! matrices are on disk.

use crate::graph::{Graph, VertexId};
use crate::rng;

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i as VertexId - 1, i as VertexId)).collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<_> = (1..n).map(|i| (i as VertexId - 1, i as VertexId)).collect();
    edges.push((n as VertexId - 1, 0));
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Complete graph K_n.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            edges.push((u, v));
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Star with `leaves` leaves; vertex 0 is the hub.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i as VertexId)).collect();
    Graph::from_edge_list(leaves + 1, &edges).unwrap()
}

/// Complete bipartite graph K_{a,b}; the first `a` ids form one side.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a as VertexId {
        for v in 0..b as VertexId {
            edges.push((u, a as VertexId + v));
        }
    }
    Graph::from_edge_list(a + b, &edges).unwrap()
}

/// Crown graph: K_{k,k} minus a perfect matching. Vertices `i` and `k + i`
/// are the non-adjacent pair. Bipartite, so 2-chromatic, yet adversarial
/// for greedy coloring under the interleaved pairing order.
pub fn crown(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k as VertexId {
        for j in 0..k as VertexId {
            if i != j {
                edges.push((i, k as VertexId + j));
            }
        }
    }
    Graph::from_edge_list(2 * k, &edges).unwrap()
}

/// The Petersen graph (3-regular, 10 vertices, chromatic number 3).
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5)); // outer cycle
        edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
        edges.push((i, 5 + i)); // spokes
    }
    Graph::from_edge_list(10, &edges).unwrap()
}

/// Rectangular grid, optionally with one diagonal per cell (which
/// triangulates the mesh) or wrapped into a 4-regular torus.
pub fn grid(rows: usize, cols: usize, diagonals: bool, torus: bool) -> Graph {
    let id = |r: usize, c: usize| (r * cols + c) as VertexId;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            } else if torus && cols > 2 {
                edges.push((id(r, c), id(r, 0)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            } else if torus && rows > 2 {
                edges.push((id(r, c), id(0, c)));
            }
            if diagonals && r + 1 < rows && c + 1 < cols {
                edges.push((id(r, c), id(r + 1, c + 1)));
            }
        }
    }
    Graph::from_edge_list(rows * cols, &edges).unwrap()
}

/// Erdős–Rényi G(n, p).
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng::uniform_unit(&mut rng) < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Random geometric graph: `n` points uniform in the unit square, edges
/// between pairs within `radius`. Bucketed search keeps construction near
/// linear for mesh-like densities.
pub fn random_geometric(n: usize, radius: f64, seed: u64) -> Graph {
    let mut rng = rng::seeded(seed);
    let points: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng::uniform_unit(&mut rng), rng::uniform_unit(&mut rng)))
        .collect();

    let cells = (1.0 / radius).floor().max(1.0) as usize;
    let cell_of = |x: f64| ((x * cells as f64) as usize).min(cells - 1);
    let mut buckets = vec![Vec::new(); cells * cells];
    for (i, &(x, y)) in points.iter().enumerate() {
        buckets[cell_of(y) * cells + cell_of(x)].push(i as VertexId);
    }

    let r2 = radius * radius;
    let mut edges = Vec::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        let (cx, cy) = (cell_of(x), cell_of(y));
        for dy in cy.saturating_sub(1)..=(cy + 1).min(cells - 1) {
            for dx in cx.saturating_sub(1)..=(cx + 1).min(cells - 1) {
                for &j in &buckets[dy * cells + dx] {
                    if (j as usize) <= i {
                        continue;
                    }
                    let (px, py) = points[j as usize];
                    let (ddx, ddy) = (px - x, py - y);
                    if ddx * ddx + ddy * ddy <= r2 {
                        edges.push((i as VertexId, j));
                    }
                }
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Barabási–Albert preferential attachment: start from a small clique and
/// attach each new vertex to `m` distinct existing vertices chosen
/// proportionally to degree.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Graph {
    assert!(m >= 1 && n > m);
    let mut rng = rng::seeded(seed);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(n * m);
    // Every edge endpoint appears once; sampling an index is sampling by degree.
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * n * m);

    let core = m + 1;
    for u in 0..core as VertexId {
        for v in u + 1..core as VertexId {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    for v in core..n {
        let mut targets: Vec<VertexId> = Vec::with_capacity(m);
        while targets.len() < m {
            let t = endpoints[rng::uniform_below(&mut rng, endpoints.len() as u64) as usize];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((v as VertexId, t));
            endpoints.push(v as VertexId);
            endpoints.push(t);
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Watts–Strogatz small world: ring lattice where each vertex links to its
/// `k/2` nearest neighbors on each side, then each edge's far endpoint is
/// rewired with probability `p_rewire`.
pub fn watts_strogatz(n: usize, k: usize, p_rewire: f64, seed: u64) -> Graph {
    assert!(k >= 2 && k % 2 == 0 && n > k);
    let mut rng = rng::seeded(seed);
    let mut neighbor_sets: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for u in 0..n {
        for step in 1..=k / 2 {
            let v = (u + step) % n;
            edges.push((u as VertexId, v as VertexId));
        }
    }
    for &(u, v) in &edges {
        neighbor_sets[u as usize].push(v);
        neighbor_sets[v as usize].push(u);
    }
    for edge in edges.iter_mut() {
        if rng::uniform_unit(&mut rng) >= p_rewire {
            continue;
        }
        let (u, v) = *edge;
        // Rewire v to a fresh endpoint, keeping the graph simple.
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > 32 {
                break;
            }
            let w = rng::uniform_below(&mut rng, n as u64) as VertexId;
            if w == u || neighbor_sets[u as usize].contains(&w) {
                continue;
            }
            neighbor_sets[u as usize].retain(|&x| x != v);
            neighbor_sets[v as usize].retain(|&x| x != u);
            neighbor_sets[u as usize].push(w);
            neighbor_sets[w as usize].push(u);
            *edge = (u, w);
            break;
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Rename vertices through a uniform random permutation. The relabeled
/// graph is isomorphic to the input; only vertex ids change.
pub fn relabel(g: &Graph, seed: u64) -> Graph {
    let n = g.n();
    let mut rng = rng::seeded(seed);
    let mut new_id: Vec<VertexId> = (0..n as VertexId).collect();
    for i in (1..n).rev() {
        let j = rng::uniform_below(&mut rng, i as u64 + 1) as usize;
        new_id.swap(i, j);
    }
    let edges: Vec<(VertexId, VertexId)> = g
        .edges()
        .map(|(u, v)| (new_id[u as usize], new_id[v as usize]))
        .collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Pinned synthetic stand-in for the small evaluation corpus (hundreds of
/// vertices, exactly solvable): geometric meshes, small-world rings,
/// preferential-attachment trees-with-cycles, triangulated grids, and
/// sparse G(n, p). Deterministic; used by `fetch --source synthetic` and
/// the acceptance suite when no downloaded matrices are present.
pub fn synthetic_small_corpus() -> Vec<(String, Graph)> {
    let mut corpus = Vec::new();
    let mut push = |name: String, g: Graph| corpus.push((name, g));

    for i in 0..18u64 {
        let n = 120 + (i as usize % 6) * 60;
        let radius = (9.0 / (n as f64 * std::f64::consts::PI)).sqrt();
        push(format!("rgg_s{i:02}"), random_geometric(n, radius, 100 + i));
    }
    for i in 0..12u64 {
        let n = 130 + (i as usize % 5) * 70;
        push(format!("ba_s{i:02}"), barabasi_albert(n, 2, 300 + i));
    }
    for (i, (r, c)) in [
        (10, 12), (13, 13), (11, 18), (15, 14), (12, 24), (17, 17),
        (10, 22), (14, 19), (13, 21), (16, 16), (11, 28), (15, 21),
    ]
    .iter()
    .enumerate()
    {
        push(format!("tgrid_s{i:02}"), grid(*r, *c, true, false));
    }
    for i in 0..24u64 {
        let n = 140 + (i as usize % 4) * 90;
        let p = 5.0 / n as f64;
        push(format!("gnp_s{i:02}"), gnp(n, p, 400 + i));
    }
    corpus
}

/// Pinned synthetic stand-in for the desk-scale large corpus (tens of
/// thousands of vertices). Same families as the small corpus, scaled up;
/// meshes are randomly relabeled so vertex ids carry no sweep information.
pub fn synthetic_large_corpus() -> Vec<(String, Graph)> {
    let mut corpus = Vec::new();
    let mut push = |name: String, g: Graph| corpus.push((name, g));

    for i in 0..12u64 {
        let n = 10_000 + (i as usize % 4) * 5_000;
        let radius = (10.0 / (n as f64 * std::f64::consts::PI)).sqrt();
        push(format!("rgg_l{i:02}"), random_geometric(n, radius, 500 + i));
    }
    for i in 0..8u64 {
        let n = 10_000 + (i as usize % 4) * 6_000;
        push(format!("ba_l{i:02}"), barabasi_albert(n, 3, 700 + i));
    }
    for (i, (r, c)) in [
        (100, 110), (120, 125), (140, 110), (160, 120),
        (90, 130), (110, 140), (105, 115), (125, 135), (95, 160), (150, 105),
    ]
    .iter()
    .enumerate()
    {
        let mesh = grid(*r, *c, true, false);
        push(format!("tgrid_l{i:02}"), relabel(&mesh, 800 + i as u64));
    }
    corpus
}
