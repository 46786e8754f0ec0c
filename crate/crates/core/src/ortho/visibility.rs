//! Planar orthogonal layout for plane graphs of maximum degree four.
//!
//! Each component is made 2-connected by placing a star vertex in every face,
//! an st-ordering of the augmented graph fixes one row per vertex, and a
//! left-to-right sweep over the active edges assigns every edge a column.
//! Star vertices and their edges are only placeholders and are never drawn.

use crate::embedding::{Faces, PlaneEmbedding};
use crate::error::{Error, Result};
use crate::grid::Dim;

use super::{check_degree, combine, OrthoDrawing, PlanarEngine, Point};

#[derive(Debug, Clone, Copy, Default)]
pub struct VisibilityEngine;

impl PlanarEngine for VisibilityEngine {
    fn layout(&self, e: &PlaneEmbedding) -> Result<OrthoDrawing> {
        layout_deg4_planar(e)
    }
}

pub fn layout_deg4_planar(e: &PlaneEmbedding) -> Result<OrthoDrawing> {
    check_degree(e.graph(), 4)?;
    let mut parts = Vec::new();
    for members in e.graph().components() {
        if members.len() == 1 {
            let d = OrthoDrawing::new(Dim::Two, vec![[0; 3]], Vec::new(), false)?;
            parts.push((d, members));
            continue;
        }
        let (sub, ids) = e.component(&members)?;
        parts.push((layout_component(&sub)?.compact()?, ids));
    }
    combine(Dim::Two, e.n(), parts, 8)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Port {
    N,
    E,
    S,
    W,
}

/// Plane multigraph with rotations over edge ids.
struct Augmented {
    ends: Vec<(usize, usize)>,
    real: Vec<bool>,
    rot: Vec<Vec<usize>>,
}

impl Augmented {
    fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, real: bool) -> usize {
        self.ends.push((u, v));
        self.real.push(real);
        self.ends.len() - 1
    }

    fn face_count(&self) -> usize {
        let m = self.ends.len();
        // dart 2e is ends.0 -> ends.1, 2e + 1 the reverse
        let mut seen = vec![false; 2 * m];
        let mut faces = 0;
        for start in 0..2 * m {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let e = d / 2;
                let head = if d % 2 == 0 {
                    self.ends[e].1
                } else {
                    self.ends[e].0
                };
                let r = &self.rot[head];
                let i = r.iter().position(|&x| x == e).expect("rotation lists edge");
                let f = r[(i + r.len() - 1) % r.len()];
                d = if self.ends[f].0 == head {
                    2 * f
                } else {
                    2 * f + 1
                };
            }
        }
        faces
    }
}

fn stellate(e: &PlaneEmbedding) -> Result<(Augmented, usize, usize, usize)> {
    let n = e.n();
    let g = e.graph();
    let mut aug = Augmented {
        ends: Vec::new(),
        real: Vec::new(),
        rot: vec![Vec::new(); n],
    };
    let mut id = std::collections::HashMap::new();
    for (u, v) in g.edges() {
        let k = aug.add_edge(u, v, true);
        id.insert((u, v), k);
        id.insert((v, u), k);
    }
    for u in 0..n {
        aug.rot[u] = e.rotation()[u].iter().map(|&v| id[&(u, v)]).collect();
    }
    let faces = Faces::compute(e.rotation());
    let (a, b) = e.outer_darts()[0];
    let outer = faces.face_of((a, b));
    let mut s = 0;
    let mut st_edge = 0;
    for f in 0..faces.len() {
        let z = aug.rot.len();
        aug.rot.push(Vec::new());
        for &(c, next) in &faces.boundary[f] {
            let after = id[&(c, next)];
            let k = aug.add_edge(z, c, false);
            let i = aug.rot[c].iter().position(|&x| x == after).expect("dart");
            aug.rot[c].insert(i + 1, k);
            aug.rot[z].push(k);
            if f == outer && (c, next) == (a, b) {
                s = z;
                st_edge = k;
            }
        }
    }
    let euler = aug.rot.len() as i64 - aug.ends.len() as i64 + aug.face_count() as i64;
    if euler != 2 {
        return Err(Error::Internal(format!(
            "face stellation is not plane (euler {euler})"
        )));
    }
    Ok((aug, s, a, st_edge))
}

/// st-numbering of a 2-connected multigraph: position of each vertex.
fn st_numbering(aug: &Augmented, s: usize, t: usize, st_edge: usize) -> Result<Vec<usize>> {
    let n = aug.rot.len();
    let mut pre = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let adj = |v: usize| -> Vec<usize> {
        let mut r = aug.rot[v].clone();
        if v == s {
            r.retain(|&e| e != st_edge);
            r.insert(0, st_edge);
        }
        r
    };
    pre[s] = 0;
    low[s] = 0;
    order.push(s);
    let mut stack = vec![(s, adj(s), 0usize)];
    while let Some((v, edges, i)) = stack.last_mut() {
        let v = *v;
        if *i == edges.len() {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
            }
            continue;
        }
        let e = edges[*i];
        *i += 1;
        if e == parent_edge[v] {
            continue;
        }
        let w = aug.other(e, v);
        if pre[w] == usize::MAX {
            pre[w] = order.len();
            low[w] = pre[w];
            parent[w] = v;
            parent_edge[w] = e;
            order.push(w);
            stack.push((w, adj(w), 0));
        } else {
            low[v] = low[v].min(pre[w]);
        }
    }
    if order.len() != n || order[1] != t {
        return Err(Error::Internal("augmented graph is disconnected".into()));
    }
    // Linked list of vertices; sign true means "+".
    let mut next = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    let mut plus = vec![false; n];
    next[s] = t;
    prev[t] = s;
    for &v in &order[2..] {
        let p = parent[v];
        if !plus[order[low[v]]] {
            let q = prev[p];
            prev[v] = q;
            next[v] = p;
            prev[p] = v;
            if q != usize::MAX {
                next[q] = v;
            }
            plus[p] = true;
        } else {
            let q = next[p];
            next[v] = q;
            prev[v] = p;
            next[p] = v;
            if q != usize::MAX {
                prev[q] = v;
            }
            plus[p] = false;
        }
    }
    let mut head = s;
    while prev[head] != usize::MAX {
        head = prev[head];
    }
    let mut st = vec![0; n];
    let mut k = 0;
    let mut v = head;
    while v != usize::MAX {
        st[v] = k;
        k += 1;
        v = next[v];
    }
    if st[s] != 0 || st[t] != n - 1 {
        return Err(Error::Internal(
            "st-numbering does not start at s and end at t".into(),
        ));
    }
    for v in 0..n {
        if v == s || v == t {
            continue;
        }
        let nb = aug.rot[v].iter().map(|&e| st[aug.other(e, v)]);
        let lower = nb.clone().any(|x| x < st[v]);
        let higher = nb.clone().any(|x| x > st[v]);
        if !lower || !higher {
            return Err(Error::Internal(format!(
                "vertex {v} breaks the st-numbering"
            )));
        }
    }
    Ok(st)
}

/// Doubly linked order of column slots.
#[derive(Default)]
struct Slots {
    next: Vec<usize>,
    prev: Vec<usize>,
}

impl Slots {
    const NIL: usize = usize::MAX;

    fn fresh(&mut self) -> usize {
        self.next.push(Self::NIL);
        self.prev.push(Self::NIL);
        self.next.len() - 1
    }

    fn insert_after(&mut self, a: usize) -> usize {
        let k = self.fresh();
        let b = self.next[a];
        self.next[a] = k;
        self.prev[k] = a;
        self.next[k] = b;
        if b != Self::NIL {
            self.prev[b] = k;
        }
        k
    }

    fn insert_before(&mut self, a: usize) -> usize {
        let k = self.fresh();
        let b = self.prev[a];
        self.prev[a] = k;
        self.next[k] = a;
        self.prev[k] = b;
        if b != Self::NIL {
            self.next[b] = k;
        }
        k
    }

    fn ranks(&self) -> Vec<i32> {
        let mut rank = vec![0; self.next.len()];
        let Some(mut v) = (0..self.next.len()).find(|&k| self.prev[k] == Self::NIL) else {
            return rank;
        };
        let mut r = 0;
        loop {
            rank[v] = r;
            r += 1;
            if self.next[v] == Self::NIL {
                break;
            }
            v = self.next[v];
        }
        rank
    }
}

/// Incoming and outgoing edges of `v`, each listed left to right.
fn split_rotation(
    aug: &Augmented,
    st: &[usize],
    v: usize,
    s: usize,
    t: usize,
    st_edge: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let r = &aug.rot[v];
    let d = r.len();
    let incoming = |e: usize| st[aug.other(e, v)] < st[v];
    if v == s {
        let i = r.iter().position(|&e| e == st_edge).expect("st edge at s");
        return Ok((Vec::new(), (0..d).map(|k| r[(i + d - k) % d]).collect()));
    }
    if v == t {
        let i = r.iter().position(|&e| e == st_edge).expect("st edge at t");
        return Ok(((0..d).map(|k| r[(i + k) % d]).collect(), Vec::new()));
    }
    let start = (0..d)
        .find(|&i| incoming(r[i]) && !incoming(r[(i + d - 1) % d]))
        .ok_or_else(|| Error::Internal(format!("vertex {v} has no incoming block")))?;
    let cyc: Vec<usize> = (0..d).map(|k| r[(start + k) % d]).collect();
    let split = cyc.iter().position(|&e| !incoming(e)).unwrap_or(d);
    let ins = cyc[..split].to_vec();
    let mut outs = cyc[split..].to_vec();
    if outs.iter().any(|&e| incoming(e)) {
        return Err(Error::Internal(format!(
            "incoming edges of {v} are not consecutive"
        )));
    }
    outs.reverse();
    Ok((ins, outs))
}

fn layout_component(e: &PlaneEmbedding) -> Result<OrthoDrawing> {
    let n = e.n();
    let (aug, s, t, st_edge) = stellate(e)?;
    let st = st_numbering(&aug, s, t, st_edge)?;
    let total = aug.rot.len();
    let mut by_st = vec![0; total];
    for v in 0..total {
        by_st[st[v]] = v;
    }

    let m = aug.ends.len();
    let mut slots = Slots::default();
    let mut col = vec![usize::MAX; m];
    let mut tail_port = vec![Port::N; m];
    let mut head_port = vec![Port::S; m];
    let mut vslot = vec![usize::MAX; total];
    let mut active: Vec<usize> = Vec::new();

    for &v in &by_st {
        let (ins, outs) = split_rotation(&aug, &st, v, s, t, st_edge)?;
        let pos = match ins.first() {
            None => 0,
            Some(&first) => {
                let p = active
                    .iter()
                    .position(|&x| x == first)
                    .ok_or_else(|| Error::Internal("edge not active".into()))?;
                if active.get(p..p + ins.len()) != Some(&ins[..]) {
                    return Err(Error::Internal(format!(
                        "incoming edges of {v} are not adjacent in the sweep"
                    )));
                }
                p
            }
        };
        let real_in: Vec<usize> = ins.iter().copied().filter(|&x| aug.real[x]).collect();
        let real_out: Vec<usize> = outs.iter().copied().filter(|&x| aug.real[x]).collect();
        let in_ports: &[Port] = match real_in.len() {
            0 => &[],
            1 => &[Port::S],
            2 => &[Port::S, Port::E],
            3 => &[Port::W, Port::S, Port::E],
            _ => &[Port::W, Port::S, Port::E, Port::N],
        };
        let out_ports: &[Port] = match (real_in.len(), real_out.len()) {
            (_, 0) => &[],
            (_, 1) => &[Port::N],
            (0 | 1, 2) => &[Port::N, Port::E],
            (2, 2) => &[Port::W, Port::N],
            (0 | 1, 3) => &[Port::W, Port::N, Port::E],
            (0, 4) => &[Port::S, Port::W, Port::N, Port::E],
            _ => return Err(Error::Internal(format!("vertex {v} has too many edges"))),
        };
        let x = match real_in.len() {
            0 => match ins.first() {
                Some(&first) => slots.insert_after(col[first]),
                None => slots.fresh(),
            },
            1 | 2 => col[real_in[0]],
            _ => col[real_in[1]],
        };
        vslot[v] = x;
        for (&edge, &p) in real_in.iter().zip(in_ports) {
            head_port[edge] = p;
        }
        for (&edge, &p) in real_out.iter().zip(out_ports) {
            tail_port[edge] = p;
        }
        let pivot = real_out
            .iter()
            .zip(out_ports)
            .find(|(_, &p)| p == Port::N || p == Port::E)
            .map(|(&edge, _)| outs.iter().position(|&o| o == edge).expect("out edge"));
        let (left, right) = match pivot {
            Some(i) => (&outs[..i], &outs[i..]),
            None => (&outs[..], &outs[outs.len()..]),
        };
        for &o in left {
            col[o] = slots.insert_before(x);
        }
        for &o in right.iter().rev() {
            if aug.real[o] && tail_port[o] == Port::N {
                col[o] = x;
            } else {
                col[o] = slots.insert_after(x);
            }
        }
        active.splice(pos..pos + ins.len(), outs.iter().copied());
    }
    if !active.is_empty() {
        return Err(Error::Internal("sweep ended with active edges".into()));
    }

    let rank = slots.ranks();
    let row = |v: usize| 4 * st[v] as i32;
    let positions: Vec<Point> = (0..n).map(|v| [rank[vslot[v]], row(v), 0]).collect();
    let mut routes = Vec::new();
    for k in 0..m {
        if !aug.real[k] {
            continue;
        }
        let (a, b) = aug.ends[k];
        let (u, v) = if st[a] < st[b] { (a, b) } else { (b, a) };
        let c = rank[col[k]];
        let (pu, pv) = (positions[u], positions[v]);
        let mut r = vec![pu];
        match tail_port[k] {
            Port::S => {
                r.push([pu[0], pu[1] - 1, 0]);
                r.push([c, pu[1] - 1, 0]);
            }
            _ => r.push([c, pu[1], 0]),
        }
        match head_port[k] {
            Port::N => {
                r.push([c, pv[1] + 1, 0]);
                r.push([pv[0], pv[1] + 1, 0]);
            }
            _ => r.push([c, pv[1], 0]),
        }
        r.push(pv);
        routes.push(((u, v), r));
    }
    OrthoDrawing::new(Dim::Two, positions, routes, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
        a.len() == b.len()
            && (a.is_empty()
                || (0..a.len()).any(|k| (0..a.len()).all(|i| a[(i + k) % a.len()] == b[i])))
    }

    pub(crate) fn respects_rotation(d: &OrthoDrawing, e: &PlaneEmbedding) -> bool {
        let check = |flip: bool| {
            (0..e.n()).all(|v| {
                let mut r = d.rotation_at(v);
                if flip {
                    r.reverse();
                }
                cyclic_eq(&r, &e.rotation()[v])
            })
        };
        check(false) || check(true)
    }

    fn square() -> PlaneEmbedding {
        let pos = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        PlaneEmbedding::from_positions(&Graph::cycle(4), &pos, vec![(1, 0)]).unwrap()
    }

    fn cube() -> PlaneEmbedding {
        let mut g = Graph::new(8);
        for i in 0..4 {
            g.add_edge(i, (i + 1) % 4);
            g.add_edge(4 + i, 4 + (i + 1) % 4);
            g.add_edge(i, 4 + i);
        }
        let pos = [
            (-2.0, -2.0),
            (2.0, -2.0),
            (2.0, 2.0),
            (-2.0, 2.0),
            (-1.0, -1.0),
            (1.0, -1.0),
            (1.0, 1.0),
            (-1.0, 1.0),
        ];
        PlaneEmbedding::from_positions(&g, &pos, vec![(1, 0)]).unwrap()
    }

    #[test]
    fn k2_unit_edge() {
        let e = PlaneEmbedding::new(vec![vec![1], vec![0]], vec![(0, 1)]).unwrap();
        let d = layout_deg4_planar(&e).unwrap();
        assert_eq!(d.total_length(), 1);
    }

    #[test]
    fn c4_valid_drawing() {
        let e = square();
        let d = layout_deg4_planar(&e).unwrap();
        assert!(d.total_length() >= 4);
        // regression value: the sweep stacks the cycle in one column
        assert_eq!(d.total_length(), 8);
        assert!(respects_rotation(&d, &e));
    }

    #[test]
    fn cube_is_planar_and_faithful() {
        let e = cube();
        let d = layout_deg4_planar(&e).unwrap();
        assert_eq!(d.graph(), *e.graph());
        assert_eq!(d.crossings(), 0);
        assert!(respects_rotation(&d, &e));
    }

    #[test]
    fn degree_four_everywhere() {
        // octahedron: all vertices of degree four
        let mut g = Graph::new(6);
        for (u, v) in [
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (0, 4),
            (1, 4),
            (1, 5),
            (2, 5),
            (2, 3),
        ] {
            g.add_edge(u, v);
        }
        let pos = [
            (0.0, 3.0),
            (-3.0, -2.0),
            (3.0, -2.0),
            (1.0, 0.5),
            (-1.0, 0.5),
            (0.0, -1.0),
        ];
        let e = PlaneEmbedding::from_positions(&g, &pos, vec![(0, 1)]).unwrap();
        let d = layout_deg4_planar(&e).unwrap();
        assert_eq!(d.graph(), g);
        assert!(respects_rotation(&d, &e));
    }

    #[test]
    fn forest_and_isolated() {
        let mut g = Graph::path(3).disjoint_union(&Graph::new(1));
        g.add_vertex();
        let e = PlaneEmbedding::new(crate::embedding::default_rotation(&g), vec![(0, 1)]).unwrap();
        let d = layout_deg4_planar(&e).unwrap();
        assert_eq!(d.n(), 5);
        assert_eq!(d.graph(), g);
    }

    #[test]
    fn rejects_degree_five() {
        let g = Graph::star(5);
        let e = PlaneEmbedding::new(crate::embedding::default_rotation(&g), vec![(0, 1)]).unwrap();
        assert!(matches!(
            layout_deg4_planar(&e),
            Err(Error::DegreeTooLarge { .. })
        ));
    }
}
