#![allow(dead_code)]

use blobrep::random::Rng64;
use blobrep::{Graph, MinorRecipe};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random normal-form recipe on `g`: deletes each edge with probability
/// `p_del`, drops half of the vertices left isolated, then performs up to
/// `contractions` contractions along edges still present.
pub fn random_recipe(g: &Graph, p_del: f64, contractions: usize, rng: &mut Rng64) -> MinorRecipe {
    let mut recipe = MinorRecipe::default();
    let mut h = g.clone();
    for (u, v) in g.edges() {
        if rng.gen_bool(p_del) {
            h.remove_edge(u, v);
            recipe.deleted_edges.push((u, v));
        }
    }
    for v in 0..g.n() {
        if h.degree(v) == 0 && rng.gen_bool(0.5) {
            recipe.deleted_vertices.push(v);
        }
    }
    for _ in 0..contractions {
        let edges = h.edges();
        let Some(&(a, b)) = edges.choose(rng) else { break };
        let (k, r) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let nbrs: Vec<usize> = h.neighbors(r).collect();
        for w in nbrs {
            h.remove_edge(r, w);
            if w != k {
                h.add_edge(k, w);
            }
        }
        recipe.contract(k, r);
    }
    recipe
}

/// `n · log2(max(n, 2)) · (tw + 1)`.
pub fn nlogn_tw(n: usize, tw: i64) -> f64 {
    n as f64 * (n.max(2) as f64).log2() * (tw.max(0) + 1) as f64
}
