use crate::error::{Error, Result};
use crate::graph::{Graph, MinorRecipe};
use crate::grid::Dim;

use super::{OrthoDrawing, Point};

/// A drawing whose bends have become vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub graph: Graph,
    pub drawing: OrthoDrawing,
    /// Number of vertices before subdivision; later ids are bend vertices.
    pub original_n: usize,
}

/// Places a new vertex on every bend so that every route becomes a single
/// straight segment. New vertices are numbered from `d.n()` upwards.
pub fn subdivide_bends(d: &OrthoDrawing) -> Result<Subdivision> {
    if d.dim() != Dim::Two {
        return Err(Error::UnsupportedDimension(d.dim().as_u8()));
    }
    let n = d.n();
    let mut positions = d.positions().to_vec();
    let mut routes = Vec::new();
    for (&(u, v), r) in d.routes() {
        let mut prev = u;
        for (i, w) in r.windows(2).enumerate() {
            let next = if i + 2 == r.len() {
                v
            } else {
                positions.push(w[1]);
                positions.len() - 1
            };
            routes.push(((prev, next), vec![w[0], w[1]]));
            prev = next;
        }
    }
    let drawing = OrthoDrawing::new(Dim::Two, positions, routes, d.crossings_allowed())?;
    Ok(Subdivision {
        graph: drawing.graph(),
        drawing,
        original_n: n,
    })
}

/// Lifts a straight-line 2D drawing to 3D. Every vertex `v` becomes `v` at
/// height 0, carrying its horizontal edges, and `N + v` at height 1, carrying
/// its vertical edges, joined by a unit edge. The recipe contracts these
/// pairs and then merges every vertex with id `>= original_n` into the
/// original endpoint of its subdivided edge.
pub fn split_layers(
    g: &Graph,
    d: &OrthoDrawing,
    original_n: usize,
) -> Result<(Graph, OrthoDrawing, MinorRecipe)> {
    if d.dim() != Dim::Two {
        return Err(Error::UnsupportedDimension(d.dim().as_u8()));
    }
    if !d.is_straight() {
        return Err(Error::InvalidDrawing(
            "split_layers needs straight routes".into(),
        ));
    }
    if d.graph() != *g {
        return Err(Error::InvalidDrawing(
            "drawing does not match the graph".into(),
        ));
    }
    let n = g.n();
    let lift = |p: Point, z: i32| [p[0], p[1], z];
    let mut positions = Vec::with_capacity(2 * n);
    positions.extend(d.positions().iter().map(|&p| lift(p, 0)));
    positions.extend(d.positions().iter().map(|&p| lift(p, 1)));
    let mut routes = Vec::new();
    for v in 0..n {
        routes.push(((v, n + v), vec![positions[v], positions[n + v]]));
    }
    for (&(u, v), r) in d.routes() {
        if r[0][1] == r[1][1] {
            routes.push(((u, v), vec![lift(r[0], 0), lift(r[1], 0)]));
        } else {
            routes.push(((n + u, n + v), vec![lift(r[0], 1), lift(r[1], 1)]));
        }
    }
    let drawing = OrthoDrawing::new(Dim::Three, positions, routes, false)?;

    let mut recipe = MinorRecipe::default();
    for v in 0..n {
        recipe.contract(v, n + v);
    }
    for u in 0..original_n.min(n) {
        for start in g.neighbors(u).filter(|&w| w >= original_n) {
            let mut chain = Vec::new();
            let (mut prev, mut cur) = (u, start);
            while cur >= original_n {
                chain.push(cur);
                let next = g.neighbors(cur).find(|&x| x != prev).ok_or_else(|| {
                    Error::InvalidDrawing(format!("bend vertex {cur} is a dead end"))
                })?;
                prev = cur;
                cur = next;
            }
            if u < cur {
                for s in chain {
                    recipe.contract(u, s);
                }
            }
        }
    }
    Ok((drawing.graph(), drawing, recipe))
}
