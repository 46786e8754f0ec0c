//! Seeded random instance generators.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::embedding::{PlaneEmbedding, Rotation};
use crate::gadgets::{AngledGraph, Port};
use crate::graph::Graph;
use crate::td::TreeDecomposition;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tree on `n` vertices with maximum degree `max_degree` (at least 2),
/// grown by attaching each vertex to a uniformly chosen non-full one.
pub fn random_tree(n: usize, max_degree: usize, rng: &mut Rng64) -> Graph {
    let mut g = Graph::new(n);
    let mut open: Vec<usize> = Vec::new();
    for v in 0..n {
        if let Some(i) = (!open.is_empty()).then(|| rng.gen_range(0..open.len())) {
            let p = open[i];
            g.add_edge(p, v);
            if g.degree(p) >= max_degree {
                open.swap_remove(i);
            }
        }
        open.push(v);
    }
    g
}

/// Random stacked triangulation: start from a triangle and repeatedly put a
/// new vertex into a random inner face, joined to its three corners.
pub fn stacked_triangulation(n: usize, rng: &mut Rng64) -> PlaneEmbedding {
    assert!(n >= 3, "a stacked triangulation needs three vertices");
    let mut rot: Rotation = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    // inner faces as counter-clockwise corner triples
    let mut faces = vec![(0, 1, 2)];
    for x in 3..n {
        let (a, b, c) = faces.swap_remove(rng.gen_range(0..faces.len()));
        let insert_after = |rot: &mut Rotation, at: usize, after: usize| {
            let i = rot[at]
                .iter()
                .position(|&w| w == after)
                .expect("corner neighbour");
            rot[at].insert(i + 1, x);
        };
        insert_after(&mut rot, a, b);
        insert_after(&mut rot, b, c);
        insert_after(&mut rot, c, a);
        rot.push(vec![a, b, c]);
        faces.extend([(a, b, x), (b, c, x), (c, a, x)]);
    }
    PlaneEmbedding::new(rot, vec![(0, 2)]).expect("stacking keeps the embedding plane")
}

/// Random connected outerplanar graph: a convex `n`-gon with a random
/// triangulation whose chords are kept independently with probability one
/// half.
pub fn random_outerplanar(n: usize, rng: &mut Rng64) -> PlaneEmbedding {
    let mut g = Graph::path(n);
    if n >= 3 {
        g.add_edge(n - 1, 0);
        let mut stack = vec![(0, n - 1)];
        while let Some((i, j)) = stack.pop() {
            if j - i < 2 {
                continue;
            }
            let k = rng.gen_range(i + 1..j);
            for (a, b) in [(i, k), (k, j)] {
                if b - a >= 2 && rng.gen_bool(0.5) {
                    g.add_edge(a, b);
                }
                stack.push((a, b));
            }
        }
    }
    let pos: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let outer = if n >= 2 { vec![(1, 0)] } else { Vec::new() };
    PlaneEmbedding::from_positions(&g, &pos, outer).expect("convex drawing is plane")
}

/// Connected random subgraph of the `rows × cols` grid (maximum degree 4),
/// embedded as drawn: a random spanning tree plus each remaining edge with
/// probability `p`.
pub fn random_grid_subgraph(rows: usize, cols: usize, p: f64, rng: &mut Rng64) -> PlaneEmbedding {
    let full = Graph::grid(rows, cols);
    let mut edges = full.edges();
    edges.shuffle(rng);
    let n = full.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut g = Graph::new(n);
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            g.add_edge(u, v);
        } else if rng.gen_bool(p) {
            g.add_edge(u, v);
        }
    }
    let pos: Vec<(f64, f64)> = (0..n)
        .map(|v| ((v % cols) as f64, (v / cols) as f64))
        .collect();
    // vertex 0 is the bottom-left corner; the outer face lies south of
    // the westward dart 1 -> 0 and west of the northward dart 0 -> cols
    let outer = match n {
        0 | 1 => Vec::new(),
        _ if g.has_edge(0, 1) => vec![(1, 0)],
        _ => vec![(0, cols)],
    };
    PlaneEmbedding::from_positions(&g, &pos, outer).expect("grid drawing is plane")
}

/// Random partial `k`-tree on `n ≥ k + 1` vertices with a decomposition of
/// width `k`. Each edge of the underlying `k`-tree is kept with probability
/// `keep`.
pub fn partial_k_tree(
    n: usize,
    k: usize,
    keep: f64,
    rng: &mut Rng64,
) -> (Graph, TreeDecomposition) {
    assert!(n > k, "a k-tree needs more than k vertices");
    let mut bags: Vec<BTreeSet<usize>> = vec![(0..=k).collect()];
    let mut tree_edges = Vec::new();
    let mut full = Graph::complete(k + 1);
    for v in k + 1..n {
        let parent = rng.gen_range(0..bags.len());
        let mut clique: Vec<usize> = bags[parent].iter().copied().collect();
        clique.swap_remove(rng.gen_range(0..clique.len()));
        full.add_vertex();
        for &u in &clique {
            full.add_edge(u, v);
        }
        let mut bag: BTreeSet<usize> = clique.into_iter().collect();
        bag.insert(v);
        tree_edges.push((parent, bags.len()));
        bags.push(bag);
    }
    let mut g = Graph::new(n);
    for (u, v) in full.edges() {
        if rng.gen_bool(keep) {
            g.add_edge(u, v);
        }
    }
    let tree = Graph::from_edges(bags.len(), &tree_edges).expect("tree edges in range");
    (
        g,
        TreeDecomposition::new(bags, tree).expect("one bag per node"),
    )
}

/// Random graph of maximum degree 4 on `n ≥ 6` vertices containing `K_{3,3}`
/// on vertices `0..6`, hence non-planar. About `extra` further edges are
/// attempted between random vertices with spare degree.
pub fn nonplanar_deg4(n: usize, extra: usize, rng: &mut Rng64) -> Graph {
    assert!(n >= 6, "K_3,3 needs six vertices");
    let mut g = Graph::new(n);
    for a in 0..3 {
        for b in 3..6 {
            g.add_edge(a, b);
        }
    }
    // hang the other vertices on a random spanning structure first
    for v in 6..n {
        let cands: Vec<usize> = (0..v).filter(|&u| g.degree(u) < 4).collect();
        if let Some(&u) = cands.choose(rng) {
            g.add_edge(u, v);
        }
    }
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && g.degree(u) < 4 && g.degree(v) < 4 {
            g.add_edge(u, v);
        }
    }
    g
}

/// Random graph of maximum degree 4 (about `m` edges) with random distinct
/// ports at every vertex.
pub fn random_angled(n: usize, m: usize, rng: &mut Rng64) -> AngledGraph {
    let mut free: Vec<Vec<Port>> = vec![Port::ALL.to_vec(); n];
    for ports in free.iter_mut() {
        ports.shuffle(rng);
    }
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for _ in 0..4 * m {
        if edges.len() == m || n < 2 {
            break;
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || free[u].is_empty() || free[v].is_empty() || !seen.insert((u.min(v), u.max(v)))
        {
            continue;
        }
        let (pu, pv) = (
            free[u].pop().expect("free port"),
            free[v].pop().expect("free port"),
        );
        edges.push((u, v, pu, pv));
    }
    AngledGraph::new(n, &edges).expect("ports are distinct by construction")
}

/// Rotation system with every neighbour list shuffled.
pub fn random_rotation(g: &Graph, rng: &mut Rng64) -> Rotation {
    (0..g.n())
        .map(|v| {
            let mut nb: Vec<usize> = g.neighbors(v).collect();
            nb.shuffle(rng);
            nb
        })
        .collect()
}
