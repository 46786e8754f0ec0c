//! Layout for arbitrary graphs of maximum degree four with vertices on the
//! main diagonal.
//!
//! Vertex `v` sits at `(C v, C v)`. Each of its four ports owns a private
//! lane next to it: rows `C v ± 1` for N/S and columns `C v ± 1` for E/W.
//! Every edge leaves one endpoint through a row lane and enters the other
//! through a column lane, so it has three bends and lanes never overlap.
//! An Euler orientation splits each vertex's edges evenly between the two
//! lane types.

use crate::error::Result;
use crate::graph::Graph;
use crate::grid::Dim;

use super::{check_degree, CrossingEngine, OrthoDrawing, Point};

/// Spacing between consecutive vertices on the diagonal.
pub const SEPARATION: i32 = 4;

#[derive(Debug, Clone, Copy, Default)]
pub struct DiagonalEngine;

impl CrossingEngine for DiagonalEngine {
    fn layout(&self, g: &Graph) -> Result<OrthoDrawing> {
        layout_deg4_any(g)
    }
}

/// Orients the edges so that in- and out-degree differ by at most one at
/// every vertex (Euler tours after pairing odd vertices with a virtual hub).
fn balanced_orientation(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let hub = n;
    let mut ends: Vec<(usize, usize)> = g.edges();
    let real = ends.len();
    for v in 0..n {
        if g.degree(v) % 2 == 1 {
            ends.push((v, hub));
        }
    }
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (k, &(a, b)) in ends.iter().enumerate() {
        inc[a].push(k);
        inc[b].push(k);
    }
    let mut used = vec![false; ends.len()];
    let mut ptr = vec![0usize; n + 1];
    let mut oriented = Vec::with_capacity(real);
    for start in 0..=n {
        // Hierholzer walk; edges are oriented in the order they are traversed.
        let mut stack = vec![start];
        while let Some(&v) = stack.last() {
            while ptr[v] < inc[v].len() && used[inc[v][ptr[v]]] {
                ptr[v] += 1;
            }
            if ptr[v] == inc[v].len() {
                stack.pop();
                continue;
            }
            let k = inc[v][ptr[v]];
            used[k] = true;
            let (a, b) = ends[k];
            let w = if a == v { b } else { a };
            if k < real {
                oriented.push((v, w));
            }
            stack.push(w);
        }
    }
    oriented
}

pub fn layout_deg4_any(g: &Graph) -> Result<OrthoDrawing> {
    check_degree(g, 4)?;
    let c = SEPARATION;
    let n = g.n();
    let positions: Vec<Point> = (0..n).map(|v| [c * v as i32, c * v as i32, 0]).collect();
    let oriented = balanced_orientation(g);

    // row_edges[v]: edges leaving v through N/S; col_edges[v]: entering through E/W.
    let mut row_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut col_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &(a, b)) in oriented.iter().enumerate() {
        row_edges[a].push(k);
        col_edges[b].push(k);
    }
    // +1 for N/E, -1 for S/W
    let mut row_side = vec![0i32; oriented.len()];
    let mut col_side = vec![0i32; oriented.len()];
    let pick =
        |v: usize, list: &mut Vec<usize>, other: &dyn Fn(usize) -> usize, side: &mut Vec<i32>| {
            list.sort_by_key(|&k| other(k));
            match list.as_slice() {
                [] => {}
                [k] => side[*k] = if other(*k) > v { 1 } else { -1 },
                [lo, hi] => {
                    side[*lo] = -1;
                    side[*hi] = 1;
                }
                _ => unreachable!("balanced orientation bounds lane use by two"),
            }
        };
    for v in 0..n {
        pick(v, &mut row_edges[v], &|k| oriented[k].1, &mut row_side);
        pick(v, &mut col_edges[v], &|k| oriented[k].0, &mut col_side);
    }

    let routes = oriented.iter().enumerate().map(|(k, &(a, b))| {
        let pa = positions[a];
        let pb = positions[b];
        let ya = pa[1] + row_side[k];
        let xb = pb[0] + col_side[k];
        (
            (a, b),
            vec![pa, [pa[0], ya, 0], [xb, ya, 0], [xb, pb[1], 0], pb],
        )
    });
    OrthoDrawing::new(
        Dim::Two,
        positions.clone(),
        routes.collect::<Vec<_>>(),
        true,
    )
}
