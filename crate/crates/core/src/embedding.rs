//! Combinatorial plane embeddings (rotation systems), outerplanarity peeling,
//! depth-preserving triangulation and degree reduction.
//!
//! Rotations list neighbours counter-clockwise. A dart `(u, v)` is the edge
//! `uv` traversed from `u` to `v`; the face of a dart is the face on its left.
//! The successor of `(u, v)` along its face is `(v, w)` where `w` precedes `u`
//! in the rotation of `v`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, MinorRecipe};

pub type Dart = (usize, usize);

/// Per-vertex cyclic neighbour order (counter-clockwise).
pub type Rotation = Vec<Vec<usize>>;

/// Rotation listing each vertex's neighbours in increasing id order.
pub fn default_rotation(g: &Graph) -> Rotation {
    (0..g.n()).map(|v| g.neighbors(v).collect()).collect()
}

fn graph_from_rotation(rotation: &Rotation) -> Result<Graph> {
    let n = rotation.len();
    let mut g = Graph::new(n);
    for (u, nb) in rotation.iter().enumerate() {
        for &v in nb {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if v == u {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
    }
    for (u, nb) in rotation.iter().enumerate() {
        if nb.len() != g.degree(u) {
            return Err(Error::InvalidEmbedding(format!(
                "rotation of {u} repeats a neighbour"
            )));
        }
        for &v in nb {
            if !rotation[v].contains(&u) {
                return Err(Error::InvalidEmbedding(format!(
                    "{u} lists {v} but not conversely"
                )));
            }
        }
    }
    Ok(g)
}

/// Face structure of a rotation system.
#[derive(Debug, Clone)]
pub struct Faces {
    /// Darts of each face in traversal order.
    pub boundary: Vec<Vec<Dart>>,
    face_of: HashMap<Dart, usize>,
}

impl Faces {
    pub fn compute(rotation: &Rotation) -> Faces {
        let mut pos: HashMap<Dart, usize> = HashMap::new();
        for (u, nb) in rotation.iter().enumerate() {
            for (i, &v) in nb.iter().enumerate() {
                pos.insert((u, v), i);
            }
        }
        let mut face_of: HashMap<Dart, usize> = HashMap::with_capacity(pos.len());
        let mut boundary = Vec::new();
        for (u, nb) in rotation.iter().enumerate() {
            for &v in nb {
                if face_of.contains_key(&(u, v)) {
                    continue;
                }
                let id = boundary.len();
                let mut walk = Vec::new();
                let mut d = (u, v);
                while !face_of.contains_key(&d) {
                    face_of.insert(d, id);
                    walk.push(d);
                    let (a, b) = d;
                    let rb = &rotation[b];
                    let i = pos[&(b, a)];
                    d = (b, rb[(i + rb.len() - 1) % rb.len()]);
                }
                boundary.push(walk);
            }
        }
        Faces { boundary, face_of }
    }

    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[&d]
    }

    /// Vertices around a face, one entry per corner.
    pub fn corners(&self, f: usize) -> Vec<usize> {
        self.boundary[f].iter().map(|d| d.0).collect()
    }
}

/// Plane embedding of a graph: a rotation system plus, for every component
/// with at least one edge, a dart whose left face is the outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneEmbedding {
    graph: Graph,
    rotation: Rotation,
    outer: Vec<Dart>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelingResult {
    /// Round in which each vertex is deleted, starting at 1.
    pub depth: Vec<usize>,
    pub k: usize,
    pub width: Option<usize>,
    /// For each vertex an outgoing dart whose face had merged with the outer
    /// face when the vertex was deleted (`None` for isolated vertices).
    pub trigger: Vec<Option<Dart>>,
}

impl PlaneEmbedding {
    /// Validates the rotation system: symmetric, simple, one outer dart per
    /// non-trivial component, and Euler's formula per component.
    pub fn new(rotation: Rotation, outer: Vec<Dart>) -> Result<Self> {
        let graph = graph_from_rotation(&rotation)?;
        let emb = PlaneEmbedding {
            graph,
            rotation,
            outer,
        };
        emb.validate()?;
        Ok(emb)
    }

    /// Embedding from straight-line vertex positions (must describe a
    /// crossing-free drawing). Rotations are sorted by angle.
    pub fn from_positions(g: &Graph, pos: &[(f64, f64)], outer: Vec<Dart>) -> Result<Self> {
        let rotation = (0..g.n())
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).collect();
                nb.sort_by(|&a, &b| {
                    let ta = (pos[a].1 - pos[v].1).atan2(pos[a].0 - pos[v].0);
                    let tb = (pos[b].1 - pos[v].1).atan2(pos[b].0 - pos[v].0);
                    ta.total_cmp(&tb)
                });
                nb
            })
            .collect();
        PlaneEmbedding::new(rotation, outer)
    }

    fn validate(&self) -> Result<()> {
        let faces = Faces::compute(&self.rotation);
        let comps = self.graph.components();
        let mut comp_of = vec![0; self.graph.n()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut outer_seen = vec![false; comps.len()];
        for &(u, v) in &self.outer {
            if !self.graph.has_edge(u, v) {
                return Err(Error::InvalidEmbedding(format!(
                    "outer dart {u}->{v} is not an edge"
                )));
            }
            let c = comp_of[u];
            if outer_seen[c] {
                return Err(Error::InvalidEmbedding(format!(
                    "two outer darts in the component of {u}"
                )));
            }
            outer_seen[c] = true;
        }
        let mut face_count = vec![0usize; comps.len()];
        for f in 0..faces.len() {
            face_count[comp_of[faces.boundary[f][0].0]] += 1;
        }
        for (i, c) in comps.iter().enumerate() {
            let e: usize = c.iter().map(|&v| self.graph.degree(v)).sum::<usize>() / 2;
            if e == 0 {
                continue;
            }
            if !outer_seen[i] {
                return Err(Error::InvalidEmbedding(format!(
                    "component of vertex {} has no outer dart",
                    c[0]
                )));
            }
            let euler = c.len() as i64 - e as i64 + face_count[i] as i64;
            if euler != 2 {
                return Err(Error::InvalidEmbedding(format!(
                    "component of vertex {} is not planar under this rotation (v - e + f = {euler})",
                    c[0]
                )));
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &Rotation {
        &self.rotation
    }

    pub fn outer_darts(&self) -> &[Dart] {
        &self.outer
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn faces(&self) -> Faces {
        Faces::compute(&self.rotation)
    }

    fn outer_face_ids(&self, faces: &Faces) -> Vec<usize> {
        self.outer.iter().map(|&d| faces.face_of(d)).collect()
    }

    /// Vertices on the outer face of their component (isolated vertices
    /// included).
    pub fn outer_vertices(&self) -> Vec<usize> {
        let faces = self.faces();
        let mut on = vec![false; self.n()];
        for f in self.outer_face_ids(&faces) {
            for v in faces.corners(f) {
                on[v] = true;
            }
        }
        (0..self.n())
            .filter(|&v| on[v] || self.graph.degree(v) == 0)
            .collect()
    }

    /// Repeatedly deletes the vertices on the outer face, recording the round
    /// in which each vertex disappears.
    pub fn peel(&self) -> Result<PeelingResult> {
        let n = self.n();
        let faces = self.faces();
        let mut marked = vec![false; faces.len()];
        for f in self.outer_face_ids(&faces) {
            marked[f] = true;
        }
        let mut depth = vec![0usize; n];
        let mut trigger = vec![None; n];
        let mut remaining = n;
        let mut round = 0;
        while remaining > 0 {
            round += 1;
            let mut batch = Vec::new();
            for v in 0..n {
                if depth[v] != 0 {
                    continue;
                }
                if self.graph.degree(v) == 0 {
                    batch.push(v);
                    continue;
                }
                if let Some(&w) = self.rotation[v]
                    .iter()
                    .find(|&&w| marked[faces.face_of((v, w))])
                {
                    trigger[v] = Some((v, w));
                    batch.push(v);
                }
            }
            if batch.is_empty() {
                return Err(Error::InvalidEmbedding(
                    "peeling stalled; missing outer dart?".into(),
                ));
            }
            for &v in &batch {
                depth[v] = round;
                for &w in &self.rotation[v] {
                    marked[faces.face_of((v, w))] = true;
                }
            }
            remaining -= batch.len();
        }
        Ok(PeelingResult {
            depth,
            k: round,
            width: None,
            trigger,
        })
    }

    /// Whether every face other than the outer faces is a triangle.
    pub fn is_inner_triangulated(&self) -> bool {
        let faces = self.faces();
        let outer = self.outer_face_ids(&faces);
        (0..faces.len()).all(|f| outer.contains(&f) || faces.boundary[f].len() == 3)
    }

    /// Maximum over vertices of the number of vertices on a shortest path to
    /// the outer face. The flag tells whether the embedding was triangulated
    /// (otherwise the value is only an upper bound on the width of the
    /// triangulated supergraph).
    pub fn width(&self) -> (usize, bool) {
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for v in self.outer_vertices() {
            dist[v] = 0;
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            for w in self.graph.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let w = dist
            .iter()
            .filter(|&&d| d != usize::MAX)
            .max()
            .map_or(0, |d| d + 1);
        (w, self.is_inner_triangulated())
    }

    /// Adds a chord inside the face on the left of `after_u` (an outgoing dart
    /// of `u`) and `after_x` (an outgoing dart of `x`).
    fn add_chord(&mut self, after_u: Dart, after_x: Dart) {
        let (u, a) = after_u;
        let (x, b) = after_x;
        let i = self.rotation[u].iter().position(|&w| w == a).expect("dart");
        self.rotation[u].insert(i + 1, x);
        let j = self.rotation[x].iter().position(|&w| w == b).expect("dart");
        self.rotation[x].insert(j + 1, u);
        self.graph.add_edge(u, x);
    }

    /// Triangulates every inner face by chords from a vertex of minimum
    /// peeling depth, leaving the outer faces untouched. Peeling depths are
    /// unchanged (checked).
    pub fn triangulate_preserving_depth(&self) -> Result<PlaneEmbedding> {
        let base = self.peel()?.depth;
        let mut emb = self.clone();
        loop {
            let faces = emb.faces();
            let depth = emb.peel()?.depth;
            let outer = emb.outer_face_ids(&faces);
            let Some(f) =
                (0..faces.len()).find(|&f| !outer.contains(&f) && faces.boundary[f].len() > 3)
            else {
                break;
            };
            let walk = &faces.boundary[f];
            let len = walk.len();
            let mut order: Vec<usize> = (0..len).collect();
            order.sort_by_key(|&i| (depth[walk[i].0], walk[i].0, i));
            let mut chord = None;
            'anchor: for i in order {
                let u = walk[i].0;
                for off in 2..len - 1 {
                    let j = (i + off) % len;
                    let x = walk[j].0;
                    if x != u && !emb.graph.has_edge(u, x) {
                        chord = Some((walk[i], walk[j]));
                        break 'anchor;
                    }
                }
            }
            let Some((du, dx)) = chord else {
                return Err(Error::InvalidEmbedding(format!(
                    "face {f} admits no simple chord"
                )));
            };
            emb.add_chord(du, dx);
        }
        let after = emb.peel()?.depth;
        if after != base {
            return Err(Error::Internal(
                "triangulation changed peeling depths".into(),
            ));
        }
        Ok(emb)
    }

    /// Replaces every vertex of degree above four by a path whose vertices
    /// all lie on a face that reaches the outer face one round before the
    /// vertex is peeled. Returns the new embedding and the recipe that
    /// contracts the paths back.
    pub fn reduce_degree_path(&self) -> Result<(PlaneEmbedding, MinorRecipe)> {
        let base = self.peel()?.depth;
        let n0 = self.n();
        let mut emb = self.clone();
        let mut recipe = MinorRecipe::default();
        let mut origin: Vec<usize> = (0..n0).collect();
        for u in 0..n0 {
            let deg = emb.graph.degree(u);
            if deg <= 4 {
                continue;
            }
            let peel = emb.peel()?;
            let (_, w) =
                peel.trigger[u].ok_or_else(|| Error::Internal(format!("no trigger for {u}")))?;
            let rot = &emb.rotation[u];
            let start = rot.iter().position(|&x| x == w).expect("trigger neighbour") + 1;
            let nbrs: Vec<usize> = (0..deg).map(|i| rot[(start + i) % deg]).collect();
            let mut path = vec![u];
            for _ in 1..deg {
                let id = emb.graph.add_vertex();
                emb.rotation.push(Vec::new());
                origin.push(u);
                path.push(id);
            }
            for i in 0..deg {
                let v = nbrs[i];
                let p = path[i];
                let slot = emb.rotation[v]
                    .iter()
                    .position(|&x| x == u)
                    .expect("symmetric rotation");
                emb.rotation[v][slot] = p;
                emb.graph.remove_edge(u, v);
            }
            for i in 0..deg {
                let mut r = Vec::with_capacity(3);
                if i > 0 {
                    r.push(path[i - 1]);
                }
                r.push(nbrs[i]);
                if i + 1 < deg {
                    r.push(path[i + 1]);
                }
                if i == 0 {
                    r = vec![nbrs[0], path[1]];
                }
                emb.rotation[path[i]] = r;
            }
            for i in 0..deg {
                emb.graph.add_edge(path[i], nbrs[i]);
                if i + 1 < deg {
                    emb.graph.add_edge(path[i], path[i + 1]);
                }
            }
            for d in emb.outer.iter_mut() {
                if d.0 == u {
                    let i = nbrs.iter().position(|&x| x == d.1).expect("outer dart");
                    d.0 = path[i];
                } else if d.1 == u {
                    let i = nbrs.iter().position(|&x| x == d.0).expect("outer dart");
                    d.1 = path[i];
                }
            }
            for &p in &path[1..] {
                recipe.contract(u, p);
            }
        }
        emb.validate()?;
        let after = emb.peel()?.depth;
        if (0..emb.n()).any(|v| after[v] != base[origin[v]]) {
            return Err(Error::Internal(
                "degree reduction changed peeling depths".into(),
            ));
        }
        Ok((emb, recipe))
    }

    /// Restricts the embedding to one connected component, relabelled in
    /// increasing id order. Returns the sub-embedding and the original ids.
    pub fn component(&self, members: &[usize]) -> Result<(PlaneEmbedding, Vec<usize>)> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in members.iter().enumerate() {
            index[v] = i;
        }
        let rotation = members
            .iter()
            .map(|&v| self.rotation[v].iter().map(|&w| index[w]).collect())
            .collect();
        let outer = self
            .outer
            .iter()
            .filter(|d| index[d.0] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]))
            .collect();
        Ok((PlaneEmbedding::new(rotation, outer)?, members.to_vec()))
    }
}

/// Replaces every vertex of degree at least five by a cycle following its
/// rotation; the new vertices have degree three. Works for rotation systems
/// on any surface.
pub fn reduce_degree_cycle(
    g: &Graph,
    rotation: &Rotation,
) -> Result<(Graph, Rotation, MinorRecipe)> {
    let check = graph_from_rotation(rotation)?;
    if &check != g {
        return Err(Error::InvalidEmbedding(
            "rotation does not match the graph".into(),
        ));
    }
    let mut h = g.clone();
    let mut rot = rotation.clone();
    let mut recipe = MinorRecipe::default();
    for u in 0..g.n() {
        let deg = g.degree(u);
        if deg < 5 {
            continue;
        }
        let nbrs = rot[u].clone();
        let mut cyc = vec![u];
        for _ in 1..deg {
            cyc.push(h.add_vertex());
            rot.push(Vec::new());
        }
        for i in 0..deg {
            let v = nbrs[i];
            let slot = rot[v]
                .iter()
                .position(|&x| x == u)
                .expect("symmetric rotation");
            rot[v][slot] = cyc[i];
            h.remove_edge(u, v);
        }
        for i in 0..deg {
            let next = cyc[(i + 1) % deg];
            let prev = cyc[(i + deg - 1) % deg];
            rot[cyc[i]] = vec![nbrs[i], next, prev];
            h.add_edge(cyc[i], nbrs[i]);
            h.add_edge(cyc[i], next);
        }
        for &c in &cyc[1..] {
            recipe.contract(u, c);
        }
    }
    Ok((h, rot, recipe))
}
