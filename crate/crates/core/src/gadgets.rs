//! Instance generators: wheel gadgets, cages, nested triangles and clique
//! unions.

use std::collections::{BTreeMap, BTreeSet};

use log::warn;

use crate::embedding::PlaneEmbedding;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::grid::{Cell, Dim, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    N,
    E,
    S,
    W,
}

impl Port {
    pub const ALL: [Port; 4] = [Port::N, Port::E, Port::S, Port::W];

    pub fn offset(self) -> (i32, i32) {
        match self {
            Port::N => (0, 1),
            Port::E => (1, 0),
            Port::S => (0, -1),
            Port::W => (-1, 0),
        }
    }

    pub fn opposite(self) -> Port {
        match self {
            Port::N => Port::S,
            Port::E => Port::W,
            Port::S => Port::N,
            Port::W => Port::E,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn parse(s: &str) -> Option<Port> {
        match s {
            "N" | "n" => Some(Port::N),
            "E" | "e" => Some(Port::E),
            "S" | "s" => Some(Port::S),
            "W" | "w" => Some(Port::W),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Port::N => "N",
            Port::E => "E",
            Port::S => "S",
            Port::W => "W",
        }
    }
}

/// Symmetry of the square acting on ports: an optional mirror in the
/// vertical axis followed by `turn` clockwise quarter turns.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    pub mirror: bool,
    pub turn: u8,
}

impl Frame {
    pub const IDENTITY: Frame = Frame {
        mirror: false,
        turn: 0,
    };

    pub fn all() -> impl Iterator<Item = Frame> {
        [false, true]
            .into_iter()
            .flat_map(|mirror| (0..4).map(move |turn| Frame { mirror, turn }))
    }

    pub fn apply(self, p: Port) -> Port {
        let i = if self.mirror { (4 - p.index()) % 4 } else { p.index() };
        Port::ALL[(i + self.turn as usize) % 4]
    }
}

/// Unit-length drawing of an angled graph: positions plus the frame in which
/// each vertex reads its ports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitDrawing {
    pub positions: Vec<(i32, i32)>,
    pub frames: Vec<Frame>,
}

impl UnitDrawing {
    /// Drawing with every vertex in the identity frame.
    pub fn upright(positions: Vec<(i32, i32)>) -> Self {
        let frames = vec![Frame::IDENTITY; positions.len()];
        UnitDrawing { positions, frames }
    }
}

/// Graph of maximum degree 4 with a compass direction at every edge end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngledGraph {
    graph: Graph,
    /// `ports[(v, w)]` is the direction in which edge `vw` leaves `v`.
    ports: BTreeMap<(usize, usize), Port>,
}

impl AngledGraph {
    /// Edges are given as `(u, v, port at u, port at v)`.
    pub fn new(n: usize, edges: &[(usize, usize, Port, Port)]) -> Result<Self> {
        let mut graph = Graph::new(n);
        let mut ports = BTreeMap::new();
        for &(u, v, pu, pv) in edges {
            if !graph.try_add_edge(u, v)? {
                return Err(Error::InvalidParameter(format!("duplicate edge {u}-{v}")));
            }
            ports.insert((u, v), pu);
            ports.insert((v, u), pv);
        }
        let a = AngledGraph { graph, ports };
        a.check_ports()?;
        Ok(a)
    }

    fn check_ports(&self) -> Result<()> {
        for v in 0..self.graph.n() {
            let mut used = BTreeSet::new();
            for w in self.graph.neighbors(v) {
                if !used.insert(self.ports[&(v, w)]) {
                    return Err(Error::InvalidParameter(format!(
                        "two edges leave vertex {v} towards {}",
                        self.ports[&(v, w)].as_str()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn port(&self, v: usize, w: usize) -> Option<Port> {
        self.ports.get(&(v, w)).copied()
    }

    /// Edges as `(u, v, port at u, port at v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, Port, Port)> {
        self.graph
            .edges()
            .into_iter()
            .map(|(u, v)| (u, v, self.ports[&(u, v)], self.ports[&(v, u)]))
            .collect()
    }
}

/// Number of gadget vertices per original vertex.
pub const WHEEL_SIZE: usize = 9;

/// Id of the rim vertex of `v` facing `p` in the wheel gadget.
pub fn wheel_rim(v: usize, p: Port) -> usize {
    WHEEL_SIZE * v + 1 + p.index()
}

/// Replaces every vertex by a wheel with four spokes whose rim is
/// subdivided, and joins the rim vertices facing along each edge through a
/// subdivision vertex.
///
/// Vertex `v` gets ids `9v` (centre), `9v+1..=9v+4` (rim at N, E, S, W) and
/// `9v+5..=9v+8` (rim subdivisions at NE, SE, SW, NW). The subdivision of
/// the `i`-th edge (in sorted order) is `9n + i`. Rims run clockwise
/// N, E, S, W, which fixes the orientation of the prescribed angles.
pub fn wheel_gadget(a: &AngledGraph) -> Result<Graph> {
    a.check_ports()?;
    let n = a.n();
    let edges = a.edges();
    let mut h = Graph::new(WHEEL_SIZE * n + edges.len());
    for v in 0..n {
        let c = WHEEL_SIZE * v;
        for (i, p) in Port::ALL.into_iter().enumerate() {
            let rim = wheel_rim(v, p);
            let corner = c + 5 + i;
            let next = wheel_rim(v, Port::ALL[(i + 1) % 4]);
            h.add_edge(c, rim);
            h.add_edge(rim, corner);
            h.add_edge(corner, next);
        }
    }
    for (i, &(u, v, pu, pv)) in edges.iter().enumerate() {
        let s = WHEEL_SIZE * n + i;
        h.add_edge(wheel_rim(u, pu), s);
        h.add_edge(s, wheel_rim(v, pv));
    }
    Ok(h)
}

/// One pixel per gadget vertex from a unit-length drawing of `a`: the
/// drawing is scaled by four and every wheel fills the 3×3 square around
/// its vertex, turned by the vertex's frame. The result is valid exactly
/// when every edge has length one in the direction both frames give it.
pub fn wheel_representation(a: &AngledGraph, d: &UnitDrawing) -> Result<Representation> {
    let n = a.n();
    if d.positions.len() != n || d.frames.len() != n {
        return Err(Error::VertexSetMismatch {
            rep: d.positions.len().min(d.frames.len()),
            graph: n,
        });
    }
    let edges = a.edges();
    let mut blobs = vec![BTreeSet::new(); WHEEL_SIZE * n + edges.len()];
    for (v, (&(x, y), &f)) in d.positions.iter().zip(&d.frames).enumerate() {
        let (cx, cy) = (4 * x, 4 * y);
        blobs[WHEEL_SIZE * v].insert([cx, cy, 0]);
        for (i, p) in Port::ALL.into_iter().enumerate() {
            let (dx, dy) = f.apply(p).offset();
            blobs[wheel_rim(v, p)].insert([cx + dx, cy + dy, 0]);
            let (ex, ey) = f.apply(Port::ALL[(i + 1) % 4]).offset();
            blobs[WHEEL_SIZE * v + 5 + i].insert([cx + dx + ex, cy + dy + ey, 0]);
        }
    }
    for (i, &(u, _, pu, _)) in edges.iter().enumerate() {
        let (x, y) = d.positions[u];
        let (dx, dy) = d.frames[u].apply(pu).offset();
        blobs[WHEEL_SIZE * n + i].insert([4 * x + 2 * dx, 4 * y + 2 * dy, 0]);
    }
    Representation::from_blobs(Dim::Two, blobs)
}

/// Thickness and interior of a cage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CageParams {
    pub dim: Dim,
    pub t: usize,
    pub w: usize,
    pub h: usize,
    /// Interior depth; ignored in 2D.
    pub d: usize,
}

impl CageParams {
    pub fn new2(t: usize, w: usize, h: usize) -> Self {
        CageParams {
            dim: Dim::Two,
            t,
            w,
            h,
            d: 1,
        }
    }

    pub fn new3(t: usize, w: usize, h: usize, d: usize) -> Self {
        CageParams {
            dim: Dim::Three,
            t,
            w,
            h,
            d,
        }
    }

    fn check(&self) -> Result<()> {
        if self.t == 0 || self.w == 0 || self.h == 0 || (self.dim == Dim::Three && self.d == 0) {
            return Err(Error::InvalidParameter(
                "cage thickness and interior must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Number of cage vertices.
    pub fn vertex_count(&self) -> usize {
        let (t, w, h, d) = (self.t, self.w, self.h, self.d);
        match self.dim {
            Dim::Two => (2 * t + w) * (2 * t + h) - w * h,
            Dim::Three => (2 * t + w) * (2 * t + h) * (2 * t + d) - w * h * d,
        }
    }

    fn in_hole(&self, c: Cell) -> bool {
        let (t, w, h, d) = (self.t as i32, self.w as i32, self.h as i32, self.d as i32);
        let inside = |x: i32, len: i32| x >= t && x < t + len;
        inside(c[0], w) && inside(c[1], h) && (self.dim == Dim::Two || inside(c[2], d))
    }
}

/// A cage graph together with its one-cell-per-vertex representation.
#[derive(Debug, Clone)]
pub struct Cage {
    pub params: CageParams,
    pub graph: Graph,
    pub rep: Representation,
}

impl Cage {
    /// Vertex occupying `c` in the canonical representation.
    pub fn vertex_at(&self, c: Cell) -> Option<usize> {
        self.rep.blobs().iter().position(|b| b.contains(&c))
    }
}

/// The grid graph of the box `(2t+w) × (2t+h) [× (2t+d)]` with the central
/// `w × h [× d]` box removed. Ids follow the cells in z, y, x order.
pub fn cage(p: CageParams) -> Result<Cage> {
    p.check()?;
    let (sx, sy) = ((2 * p.t + p.w) as i32, (2 * p.t + p.h) as i32);
    let sz = if p.dim == Dim::Three {
        (2 * p.t + p.d) as i32
    } else {
        1
    };
    let mut cells = Vec::with_capacity(p.vertex_count());
    for z in 0..sz {
        for y in 0..sy {
            for x in 0..sx {
                let c = [x, y, z];
                if !p.in_hole(c) {
                    cells.push(c);
                }
            }
        }
    }
    let blobs = cells.iter().map(|&c| BTreeSet::from([c])).collect();
    let rep = Representation::from_blobs(p.dim, blobs)?;
    let graph = rep.contact_graph()?;
    Ok(Cage {
        params: p,
        graph,
        rep,
    })
}

/// Places `g` inside a 3D cage of interior height 3 and ties vertex 0 of `g`
/// to the floor and ceiling cells above and below the centre of the
/// interior. Vertices of `g` are numbered after the cage vertices.
pub fn cage_attach(c: &Cage, g: &Graph) -> Result<Graph> {
    let p = c.params;
    if p.dim != Dim::Three {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: p.dim.as_u8(),
        });
    }
    if p.h != 3 {
        return Err(Error::InvalidParameter(format!(
            "cage interior height must be 3, got {}",
            p.h
        )));
    }
    if g.n() == 0 {
        return Err(Error::InvalidParameter(
            "cannot attach an empty graph".into(),
        ));
    }
    if g.n() > p.w * p.d {
        warn!(
            "interior {}x{} may be too small for {} vertices",
            p.w,
            p.d,
            g.n()
        );
    }
    let (x, z) = ((p.t + p.w / 2) as i32, (p.t + p.d / 2) as i32);
    let floor = c
        .vertex_at([x, p.t as i32 - 1, z])
        .expect("floor cell belongs to the cage");
    let ceiling = c
        .vertex_at([x, (p.t + p.h) as i32, z])
        .expect("ceiling cell belongs to the cage");
    let mut out = c.graph.disjoint_union(g);
    let v = c.graph.n();
    out.add_edge(v, floor);
    out.add_edge(v, ceiling);
    Ok(out)
}

/// `2k` concentric triangles with consecutive ones joined by a matching.
///
/// Triangle `i` (from 1, innermost first) has ids `3(i-1) + {0, 1, 2}` at
/// angles 90°, 210° and 330°. By default the outer face is the quadrangle
/// between triangles `k` and `k+1`, which peels in `k` rounds for `k ≥ 2`.
/// With `fully_nested` the outermost triangle bounds the outer face and
/// peeling takes `2k` rounds.
pub fn nested_triangles(k: usize, fully_nested: bool) -> Result<PlaneEmbedding> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "nested triangles need k >= 1".into(),
        ));
    }
    let rings = 2 * k;
    let mut g = Graph::new(3 * rings);
    let mut pos = Vec::with_capacity(3 * rings);
    for i in 0..rings {
        for j in 0..3 {
            let angle = (90.0 + 120.0 * j as f64).to_radians();
            let r = (i + 1) as f64;
            pos.push((r * angle.cos(), r * angle.sin()));
            g.add_edge(3 * i + j, 3 * i + (j + 1) % 3);
            if i + 1 < rings {
                g.add_edge(3 * i + j, 3 * (i + 1) + j);
            }
        }
    }
    let outer = if fully_nested {
        (3 * (rings - 1), 3 * (rings - 1) + 2)
    } else {
        (3 * k, 3 * k + 1)
    };
    PlaneEmbedding::from_positions(&g, &pos, vec![outer])
}

/// `c` disjoint copies of `K_q`; copy `i` uses ids `iq..(i+1)q`.
pub fn clique_union(q: usize, c: usize) -> Result<Graph> {
    if q == 0 || c == 0 {
        return Err(Error::InvalidParameter(
            "clique union needs q >= 1 and c >= 1".into(),
        ));
    }
    let k = Graph::complete(q);
    Ok((1..c).fold(k.clone(), |acc, _| acc.disjoint_union(&k)))
}
