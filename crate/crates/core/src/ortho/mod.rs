//! Orthogonal drawings on the integer lattice and the layout engines that
//! produce them.
//!
//! A drawing places every vertex on a lattice point and routes every edge as
//! an axis-parallel polyline. Two routes may share only their common
//! endpoints, except that drawings with `crossings_allowed` may also contain
//! transversal crossings of two straight route interiors.

use std::collections::{BTreeMap, HashMap};

use crate::embedding::PlaneEmbedding;
use crate::error::{Error, Result};
use crate::graph::{Graph, MinorRecipe};
use crate::grid::Dim;

mod diagonal;
mod layers;
mod tree;
mod visibility;

pub use diagonal::{layout_deg4_any, DiagonalEngine, SEPARATION};
pub use layers::{split_layers, subdivide_bends, Subdivision};
pub use tree::{layout_tree, HeavyPathEngine};
pub use visibility::{layout_deg4_planar, VisibilityEngine};

pub type Point = [i32; 3];

/// Produces a crossing-free drawing of a tree of maximum degree four.
pub trait TreeEngine {
    fn layout(&self, t: &Graph) -> Result<OrthoDrawing>;
}

/// Produces a crossing-free drawing respecting a plane embedding of maximum
/// degree four.
pub trait PlanarEngine {
    fn layout(&self, e: &PlaneEmbedding) -> Result<OrthoDrawing>;
}

/// Produces a drawing of any graph of maximum degree four in which only
/// transversal crossings occur.
pub trait CrossingEngine {
    fn layout(&self, g: &Graph) -> Result<OrthoDrawing>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoDrawing {
    dim: Dim,
    positions: Vec<Point>,
    routes: BTreeMap<(usize, usize), Vec<Point>>,
    crossings_allowed: bool,
    crossings: usize,
}

fn axis_of(p: Point, q: Point) -> Option<usize> {
    let diff: Vec<usize> = (0..3).filter(|&i| p[i] != q[i]).collect();
    (diff.len() == 1).then(|| diff[0])
}

/// Drops repeated points and merges collinear consecutive segments.
fn simplify(route: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(route.len());
    for &p in route {
        if out.last() == Some(&p) {
            continue;
        }
        if out.len() >= 2 {
            let a = out[out.len() - 2];
            let b = out[out.len() - 1];
            if let (Some(x), Some(y)) = (axis_of(a, b), axis_of(b, p)) {
                let forward = (b[x] - a[x]).signum() == (p[x] - b[x]).signum();
                if x == y && forward {
                    out.pop();
                }
            }
        }
        out.push(p);
    }
    out
}

/// Every lattice point of a polyline, together with the axis of travel for
/// interior points that are not bends.
fn lattice_points(route: &[Point]) -> Vec<(Point, Option<usize>)> {
    let mut pts = vec![(route[0], None)];
    for w in route.windows(2) {
        let axis = axis_of(w[0], w[1]).expect("axis-parallel segment");
        let step = (w[1][axis] - w[0][axis]).signum();
        let mut p = w[0];
        while p != w[1] {
            p[axis] += step;
            pts.push((p, Some(axis)));
        }
    }
    let mut k = 0;
    for w in route.windows(2).take(route.len() - 2) {
        k += OrthoDrawing::route_length(w) as usize;
        pts[k].1 = None;
    }
    let last = pts.len() - 1;
    pts[last].1 = None;
    pts
}

impl OrthoDrawing {
    /// Builds and audits a drawing. Routes may be keyed in either direction;
    /// they are stored from the smaller endpoint to the larger.
    pub fn new(
        dim: Dim,
        positions: Vec<Point>,
        routes: impl IntoIterator<Item = ((usize, usize), Vec<Point>)>,
        crossings_allowed: bool,
    ) -> Result<Self> {
        let n = positions.len();
        let mut map = BTreeMap::new();
        for ((u, v), mut route) in routes {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u > v {
                route.reverse();
            }
            let key = (u.min(v), u.max(v));
            if map.insert(key, simplify(&route)).is_some() {
                return Err(Error::InvalidDrawing(format!(
                    "edge {}-{} routed twice",
                    key.0, key.1
                )));
            }
        }
        let mut d = OrthoDrawing {
            dim,
            positions,
            routes: map,
            crossings_allowed,
            crossings: 0,
        };
        d.crossings = d.audit()?;
        Ok(d)
    }

    fn audit(&self) -> Result<usize> {
        let bad = |msg: String| Err(Error::InvalidDrawing(msg));
        let mut vertex_at: HashMap<Point, usize> = HashMap::new();
        for (v, &p) in self.positions.iter().enumerate() {
            if self.dim == Dim::Two && p[2] != 0 {
                return bad(format!("vertex {v} has z = {} in a 2D drawing", p[2]));
            }
            if let Some(w) = vertex_at.insert(p, v) {
                return bad(format!("vertices {w} and {v} share position {p:?}"));
            }
        }
        let mut occupied: HashMap<Point, ((usize, usize), Option<usize>)> = HashMap::new();
        let mut crossing_points: HashMap<Point, usize> = HashMap::new();
        for (&(u, v), route) in &self.routes {
            if route.len() < 2
                || route[0] != self.positions[u]
                || route[route.len() - 1] != self.positions[v]
            {
                return bad(format!("route of {u}-{v} does not join its endpoints"));
            }
            for w in route.windows(2) {
                if axis_of(w[0], w[1]).is_none() {
                    return bad(format!("route of {u}-{v} has a non-axis-parallel segment"));
                }
                if self.dim == Dim::Two && (w[0][2] != 0 || w[1][2] != 0) {
                    return bad(format!("route of {u}-{v} leaves the plane"));
                }
            }
            let pts = lattice_points(route);
            let mut seen = std::collections::HashSet::new();
            for &(p, _) in &pts {
                if !seen.insert(p) {
                    return bad(format!("route of {u}-{v} intersects itself at {p:?}"));
                }
            }
            for &(p, axis) in &pts[1..pts.len() - 1] {
                if let Some(&w) = vertex_at.get(&p) {
                    return bad(format!("route of {u}-{v} passes through vertex {w}"));
                }
                match occupied.get(&p) {
                    None => {
                        occupied.insert(p, ((u, v), axis));
                    }
                    Some(&(other, other_axis)) => {
                        let transversal =
                            matches!((axis, other_axis), (Some(a), Some(b)) if a != b);
                        let count = crossing_points.entry(p).or_insert(0);
                        *count += 1;
                        if !self.crossings_allowed || !transversal || *count > 1 {
                            return bad(format!(
                                "routes of {}-{} and {u}-{v} overlap at {p:?}",
                                other.0, other.1
                            ));
                        }
                    }
                }
            }
        }
        Ok(crossing_points.len())
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> Point {
        self.positions[v]
    }

    pub fn routes(&self) -> &BTreeMap<(usize, usize), Vec<Point>> {
        &self.routes
    }

    pub fn route(&self, u: usize, v: usize) -> Option<&Vec<Point>> {
        self.routes.get(&(u.min(v), u.max(v)))
    }

    pub fn crossings_allowed(&self) -> bool {
        self.crossings_allowed
    }

    /// Number of lattice points where two routes cross.
    pub fn crossings(&self) -> usize {
        self.crossings
    }

    /// The graph whose edges are the routed pairs.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.n());
        for &(u, v) in self.routes.keys() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn route_length(route: &[Point]) -> u64 {
        route
            .windows(2)
            .map(|w| {
                (0..3)
                    .map(|i| (w[1][i] - w[0][i]).unsigned_abs() as u64)
                    .sum::<u64>()
            })
            .sum()
    }

    /// Total edge length: the sum of the L1 lengths of all route segments.
    pub fn total_length(&self) -> u64 {
        self.routes.values().map(|r| Self::route_length(r)).sum()
    }

    pub fn bends(&self) -> usize {
        self.routes.values().map(|r| r.len() - 2).sum()
    }

    /// Whether every route is a single segment.
    pub fn is_straight(&self) -> bool {
        self.routes.values().all(|r| r.len() == 2)
    }

    pub fn translate(&self, by: Point) -> OrthoDrawing {
        let shift = |p: &Point| [p[0] + by[0], p[1] + by[1], p[2] + by[2]];
        OrthoDrawing {
            dim: self.dim,
            positions: self.positions.iter().map(shift).collect(),
            routes: self
                .routes
                .iter()
                .map(|(&k, r)| (k, r.iter().map(shift).collect()))
                .collect(),
            crossings_allowed: self.crossings_allowed,
            crossings: self.crossings,
        }
    }

    /// Bounding box `(min, max)` over vertices and route points.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let mut it = self.positions.iter().chain(self.routes.values().flatten());
        let first = *it.next()?;
        Some(it.fold((first, first), |(mut lo, mut hi), p| {
            for i in 0..3 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
            (lo, hi)
        }))
    }

    /// Replaces every used coordinate value by its rank along its axis. The
    /// order of coordinates is preserved, so the combinatorics of the drawing
    /// (and its validity) are unchanged.
    pub fn compact(&self) -> Result<OrthoDrawing> {
        let mut values: [Vec<i32>; 3] = Default::default();
        for p in self.positions.iter().chain(self.routes.values().flatten()) {
            for i in 0..3 {
                values[i].push(p[i]);
            }
        }
        for v in values.iter_mut() {
            v.sort_unstable();
            v.dedup();
        }
        let map = |p: &Point| -> Point {
            let mut q = [0; 3];
            for i in 0..3 {
                q[i] = values[i].binary_search(&p[i]).expect("collected") as i32;
            }
            q
        };
        OrthoDrawing::new(
            self.dim,
            self.positions.iter().map(map).collect(),
            self.routes
                .iter()
                .map(|(&k, r)| (k, r.iter().map(map).collect())),
            self.crossings_allowed,
        )
    }

    /// Cyclic order of the edges around `v`, read counter-clockwise from the
    /// direction of their first segments (2D only).
    pub fn rotation_at(&self, v: usize) -> Vec<usize> {
        let p = self.positions[v];
        let mut nb: Vec<(f64, usize)> = self
            .routes
            .iter()
            .filter_map(|(&(a, b), r)| {
                let (w, q) = if a == v {
                    (b, r[1])
                } else if b == v {
                    (a, r[r.len() - 2])
                } else {
                    return None;
                };
                Some((((q[1] - p[1]) as f64).atan2((q[0] - p[0]) as f64), w))
            })
            .collect();
        nb.sort_by(|a, b| a.0.total_cmp(&b.0));
        nb.into_iter().map(|x| x.1).collect()
    }
}

/// Places the drawings of several components side by side, separated by
/// `gap` empty columns, and relabels their vertices through `ids`.
pub(crate) fn combine(
    dim: Dim,
    n: usize,
    parts: Vec<(OrthoDrawing, Vec<usize>)>,
    gap: i32,
) -> Result<OrthoDrawing> {
    let mut positions = vec![[0; 3]; n];
    let mut routes = Vec::new();
    let mut x = 0;
    let mut crossings_allowed = false;
    for (d, ids) in parts {
        crossings_allowed |= d.crossings_allowed;
        let Some((lo, hi)) = d.bounding_box() else {
            continue;
        };
        let shifted = d.translate([x - lo[0], -lo[1], -lo[2]]);
        for (i, &p) in shifted.positions.iter().enumerate() {
            positions[ids[i]] = p;
        }
        for (&(a, b), r) in &shifted.routes {
            routes.push(((ids[a], ids[b]), r.clone()));
        }
        x += hi[0] - lo[0] + 1 + gap;
    }
    OrthoDrawing::new(dim, positions, routes, crossings_allowed)
}

pub(crate) fn check_degree(g: &Graph, limit: usize) -> Result<()> {
    for v in 0..g.n() {
        if g.degree(v) > limit {
            return Err(Error::DegreeTooLarge {
                vertex: v,
                degree: g.degree(v),
                limit,
            });
        }
    }
    Ok(())
}

/// Reduces a tree of arbitrary degree to maximum degree four by replacing
/// high-degree vertices with paths, returning the recipe that undoes it.
pub fn reduce_tree_degree(t: &Graph) -> Result<(Graph, MinorRecipe)> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let mut h = t.clone();
    let mut recipe = MinorRecipe::default();
    for u in 0..t.n() {
        let nbrs: Vec<usize> = t.neighbors(u).collect();
        if nbrs.len() <= 4 {
            continue;
        }
        let mut prev = u;
        for (i, &v) in nbrs.iter().enumerate().skip(1) {
            h.remove_edge(u, v);
            let p = if i == nbrs.len() - 1 {
                prev
            } else {
                h.add_vertex()
            };
            if p != prev {
                h.add_edge(prev, p);
                recipe.contract(u, p);
            }
            h.add_edge(p, v);
            prev = p;
        }
    }
    Ok((h, recipe))
}
