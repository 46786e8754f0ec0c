//! Exhaustive searches on tiny instances.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::gadgets::{AngledGraph, Frame, UnitDrawing};
use crate::graph::Graph;
use crate::grid::{Cell, Dim, Representation};

pub const MAX_VERTICES: usize = 5;
pub const MAX_CAP: usize = 4;
pub const MAX_UNIT_VERTICES: usize = 8;
pub const MAX_UNIT_GRID: usize = 5;
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// Node budget from `BLOBREP_NODE_BUDGET`, or [`DEFAULT_BUDGET`].
pub fn default_budget() -> u64 {
    std::env::var("BLOBREP_NODE_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Result of an exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    /// The search completed and found this optimum or witness.
    Found(T),
    /// The search completed without finding anything.
    Infeasible,
    /// The node budget ran out first.
    Unknown,
}

impl<T> Outcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, Outcome::Unknown)
    }
}

/// Search space of [`min_rep_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub dim: Dim,
    /// Box extents; the third is ignored in 2D.
    pub size: [usize; 3],
    /// Maximum number of cells per blob.
    pub cap: usize,
    pub budget: u64,
}

impl SearchBounds {
    pub fn square(side: usize, cap: usize) -> Self {
        SearchBounds {
            dim: Dim::Two,
            size: [side, side, 1],
            cap,
            budget: default_budget(),
        }
    }

    pub fn cube(side: usize, cap: usize) -> Self {
        SearchBounds {
            dim: Dim::Three,
            size: [side, side, side],
            cap,
            budget: default_budget(),
        }
    }

    fn extents(&self) -> [usize; 3] {
        match self.dim {
            Dim::Two => [self.size[0], self.size[1], 1],
            Dim::Three => self.size,
        }
    }

    fn check(&self) -> Result<()> {
        let e = self.extents();
        let ok = match self.dim {
            Dim::Two => e[0] <= 4 && e[1] <= 4,
            Dim::Three => e.iter().all(|&x| x <= 3),
        };
        if !ok || e.contains(&0) {
            return Err(Error::LimitExceeded(format!(
                "search box {e:?} outside 4x4 / 3x3x3"
            )));
        }
        if self.cap == 0 || self.cap > MAX_CAP {
            return Err(Error::LimitExceeded(format!(
                "blob cap must be in 1..={MAX_CAP}"
            )));
        }
        Ok(())
    }
}

/// Cells of a box indexed as bits, with neighbour masks and symmetries.
struct Board {
    cells: Vec<Cell>,
    nbr: Vec<u64>,
    /// Each symmetry as a permutation of cell indices.
    symmetries: Vec<Vec<usize>>,
}

impl Board {
    fn new(dim: Dim, e: [usize; 3]) -> Board {
        let mut cells = Vec::new();
        for z in 0..e[2] {
            for y in 0..e[1] {
                for x in 0..e[0] {
                    cells.push([x as i32, y as i32, z as i32]);
                }
            }
        }
        let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let nbr = cells
            .iter()
            .map(|&c| {
                dim.neighbors(c)
                    .filter_map(|d| index.get(&d))
                    .fold(0u64, |m, &i| m | 1 << i)
            })
            .collect();
        let axes = dim.axes();
        let mut symmetries = Vec::new();
        for perm in permutations(axes) {
            if (0..axes).any(|a| e[perm[a]] != e[a]) {
                continue;
            }
            for flips in 0..1usize << axes {
                let map = cells
                    .iter()
                    .map(|c| {
                        let mut d = [0i32; 3];
                        for a in 0..axes {
                            let v = c[perm[a]];
                            d[a] = if flips >> a & 1 == 1 {
                                e[a] as i32 - 1 - v
                            } else {
                                v
                            };
                        }
                        index[&d]
                    })
                    .collect();
                symmetries.push(map);
            }
        }
        Board {
            cells,
            nbr,
            symmetries,
        }
    }

    fn image(&self, mask: u64, sym: &[usize]) -> u64 {
        let mut out = 0;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= 1 << sym[i];
        }
        out
    }

    fn boundary(&self, mask: u64) -> u64 {
        let mut out = 0;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= self.nbr[i];
        }
        out & !mask
    }

    /// All connected cell sets with at most `cap` cells, sorted by size then mask.
    fn polyominoes(&self, cap: usize) -> Vec<u64> {
        let mut layer: BTreeSet<u64> = (0..self.cells.len()).map(|i| 1u64 << i).collect();
        let mut all: Vec<u64> = layer.iter().copied().collect();
        for _ in 1..cap {
            let mut next = BTreeSet::new();
            for &m in &layer {
                let mut grow = self.boundary(m);
                while grow != 0 {
                    let i = grow.trailing_zeros();
                    grow &= grow - 1;
                    next.insert(m | 1 << i);
                }
            }
            all.extend(next.iter().copied());
            layer = next;
        }
        all.sort_by_key(|&m| (m.count_ones(), m));
        all
    }

    fn to_rep(&self, dim: Dim, masks: &[u64]) -> Result<Representation> {
        let blobs = masks
            .iter()
            .map(|&m| {
                (0..self.cells.len())
                    .filter(|&i| m >> i & 1 == 1)
                    .map(|i| self.cells[i])
                    .collect()
            })
            .collect();
        Representation::from_blobs(dim, blobs)
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

struct RepSearch<'a> {
    g: &'a Graph,
    board: &'a Board,
    /// Candidate blobs grouped by size.
    by_size: Vec<Vec<(u64, u64)>>,
    /// Blobs allowed for vertex 0 (canonical under the box symmetries).
    first: Vec<bool>,
    order: Vec<usize>,
    placed: Vec<(u64, u64)>,
    nodes: u64,
    budget: u64,
}

impl RepSearch<'_> {
    /// Tries to place `order[i..]` with exactly `left` cells in total.
    fn place(&mut self, i: usize, left: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let n = self.order.len();
        if i == n {
            return Some(left == 0);
        }
        let v = self.order[i];
        let rest = n - i - 1;
        let max = (left - rest).min(self.by_size.len() - 1);
        let occupied = self.placed[..i].iter().fold(0u64, |m, p| m | p.0);
        for s in 1..=max {
            if left - s > rest * (self.by_size.len() - 1) {
                continue;
            }
            for k in 0..self.by_size[s].len() {
                let (mask, bnd) = self.by_size[s][k];
                if mask & occupied != 0 || (i == 0 && !self.first[mask_key(s, k, &self.by_size)]) {
                    continue;
                }
                let consistent = (0..i).all(|j| {
                    let w = self.order[j];
                    (bnd & self.placed[j].0 != 0) == self.g.has_edge(v, w)
                });
                if !consistent {
                    continue;
                }
                self.placed[i] = (mask, bnd);
                match self.place(i + 1, left - s) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
        }
        Some(false)
    }
}

fn mask_key(s: usize, k: usize, by_size: &[Vec<(u64, u64)>]) -> usize {
    by_size[..s].iter().map(Vec::len).sum::<usize>() + k
}

/// Minimum total cell count over all representations of `g` inside the
/// given box with at most `cap` cells per blob.
///
/// Sizes are tried in increasing order; each size is decided by
/// backtracking over precomputed connected blobs, placing vertices in
/// breadth-first order and checking every contact as soon as both blobs
/// are placed. The first vertex only takes blobs that are lexicographically
/// smallest among their images under the symmetries of the box.
pub fn min_rep_search(g: &Graph, bounds: SearchBounds) -> Result<Outcome<(usize, Representation)>> {
    bounds.check()?;
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::LimitExceeded(format!(
            "exact search needs n <= {MAX_VERTICES}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Outcome::Found((0, Representation::new(bounds.dim, 0))));
    }
    let board = Board::new(bounds.dim, bounds.extents());
    let mut by_size: Vec<Vec<(u64, u64)>> = vec![Vec::new(); bounds.cap + 1];
    for m in board.polyominoes(bounds.cap) {
        by_size[m.count_ones() as usize].push((m, board.boundary(m)));
    }
    let first = by_size
        .iter()
        .flatten()
        .map(|&(m, _)| board.symmetries.iter().all(|s| board.image(m, s) >= m))
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for c in g.components() {
        let start = c[0];
        seen[start] = true;
        let mut q = std::collections::VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let mut search = RepSearch {
        g,
        board: &board,
        by_size,
        first,
        order,
        placed: vec![(0, 0); n],
        nodes: 0,
        budget: bounds.budget,
    };
    let cells = board.cells.len();
    for total in n..=(n * bounds.cap).min(cells) {
        match search.place(0, total) {
            None => return Ok(Outcome::Unknown),
            Some(false) => {}
            Some(true) => {
                let mut masks = vec![0u64; n];
                for (i, &v) in search.order.iter().enumerate() {
                    masks[v] = search.placed[i].0;
                }
                let rep = search.board.to_rep(bounds.dim, &masks)?;
                return Ok(Outcome::Found((total, rep)));
            }
        }
    }
    Ok(Outcome::Infeasible)
}

/// Searches for a drawing of `a` inside a `w × h` box in which every edge
/// has length one. Each vertex may read its ports in any frame, so only the
/// angles between its edges are prescribed.
pub fn unit_drawing_search(
    a: &AngledGraph,
    w: usize,
    h: usize,
    budget: u64,
) -> Result<Outcome<UnitDrawing>> {
    let n = a.n();
    if n > MAX_UNIT_VERTICES || w > MAX_UNIT_GRID || h > MAX_UNIT_GRID {
        return Err(Error::LimitExceeded(format!(
            "unit drawing search needs n <= {MAX_UNIT_VERTICES} and a box of at most {MAX_UNIT_GRID}x{MAX_UNIT_GRID}"
        )));
    }
    // breadth-first order per component; roots have no parent
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for comp in a.graph().components() {
        let start = order.len();
        order.push(comp[0]);
        let mut seen: BTreeSet<usize> = BTreeSet::from([comp[0]]);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for u in a.graph().neighbors(v) {
                if seen.insert(u) {
                    parent[u] = Some(v);
                    order.push(u);
                }
            }
            i += 1;
        }
    }
    let mut s = UnitSearch {
        a,
        order,
        parent,
        box_: (w as i32, h as i32),
        pos: vec![None; n],
        frames: vec![Frame::IDENTITY; n],
        used: BTreeSet::new(),
        nodes: 0,
        budget,
    };
    Ok(match s.place(0) {
        None => Outcome::Unknown,
        Some(false) => Outcome::Infeasible,
        Some(true) => Outcome::Found(UnitDrawing {
            positions: s.pos.into_iter().map(|p| p.expect("all placed")).collect(),
            frames: s.frames,
        }),
    })
}

struct UnitSearch<'a> {
    a: &'a AngledGraph,
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
    box_: (i32, i32),
    pos: Vec<Option<(i32, i32)>>,
    frames: Vec<Frame>,
    used: BTreeSet<(i32, i32)>,
    nodes: u64,
    budget: u64,
}

impl UnitSearch<'_> {
    /// `None` once the budget is spent.
    fn place(&mut self, k: usize) -> Option<bool> {
        let Some(&v) = self.order.get(k) else {
            return Some(true);
        };
        let cells: Vec<(i32, i32)> = match self.parent[v] {
            None => (0..self.box_.1)
                .flat_map(|y| (0..self.box_.0).map(move |x| (x, y)))
                .collect(),
            Some(p) => {
                let (x, y) = self.pos[p].expect("parent placed");
                let (dx, dy) = self.frames[p].apply(self.a.port(p, v).expect("port")).offset();
                vec![(x + dx, y + dy)]
            }
        };
        for c in cells {
            if c.0 < 0 || c.1 < 0 || c.0 >= self.box_.0 || c.1 >= self.box_.1 || self.used.contains(&c)
            {
                continue;
            }
            for f in Frame::all() {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return None;
                }
                if !self.fits(v, c, f) {
                    continue;
                }
                self.pos[v] = Some(c);
                self.frames[v] = f;
                self.used.insert(c);
                let r = self.place(k + 1);
                if r != Some(false) {
                    return r;
                }
                self.used.remove(&c);
                self.pos[v] = None;
            }
        }
        Some(false)
    }

    /// Every edge to an already placed neighbour must have unit length in
    /// the direction both frames give it.
    fn fits(&self, v: usize, c: (i32, i32), f: Frame) -> bool {
        self.a.graph().neighbors(v).all(|u| {
            let Some(q) = self.pos[u] else { return true };
            let d = f.apply(self.a.port(v, u).expect("port"));
            let back = self.frames[u].apply(self.a.port(u, v).expect("port"));
            let (dx, dy) = d.offset();
            back == d.opposite() && q == (c.0 + dx, c.1 + dy)
        })
    }
}

/// Searches for a representation of `g` with exactly one cell per vertex
/// inside a 2D box. Vertices are placed in breadth-first order next to an
/// already placed neighbour; the first vertex of each component tries every
/// cell.
pub fn single_cell_search(
    g: &Graph,
    w: usize,
    h: usize,
    budget: u64,
) -> Result<Outcome<Representation>> {
    let n = g.n();
    if w * h < n {
        return Ok(Outcome::Infeasible);
    }
    let mut order = Vec::with_capacity(n);
    let mut anchor = vec![None; n];
    let mut seen = vec![false; n];
    for c in g.components() {
        seen[c[0]] = true;
        let mut q = std::collections::VecDeque::from([c[0]]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    anchor[u] = Some(v);
                    q.push_back(u);
                }
            }
        }
    }
    struct S<'a> {
        g: &'a Graph,
        order: Vec<usize>,
        anchor: Vec<Option<usize>>,
        owner: Vec<Option<usize>>,
        at: Vec<usize>,
        w: i32,
        h: i32,
        nodes: u64,
        budget: u64,
    }
    impl S<'_> {
        fn ok(&self, v: usize, x: i32, y: i32) -> bool {
            if x < 0
                || y < 0
                || x >= self.w
                || y >= self.h
                || self.owner[(y * self.w + x) as usize].is_some()
            {
                return false;
            }
            let touching: Vec<usize> = [(1, 0), (-1, 0), (0, 1), (0, -1)]
                .iter()
                .filter_map(|&(dx, dy)| {
                    let (a, b) = (x + dx, y + dy);
                    (a >= 0 && b >= 0 && a < self.w && b < self.h)
                        .then(|| self.owner[(b * self.w + a) as usize])
                        .flatten()
                })
                .collect();
            if touching.iter().any(|&u| !self.g.has_edge(u, v)) {
                return false;
            }
            // every placed neighbour must be touching
            self.g
                .neighbors(v)
                .all(|u| self.owner.iter().all(|o| *o != Some(u)) || touching.contains(&u))
        }

        fn go(&mut self, i: usize) -> Option<bool> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            if i == self.order.len() {
                return Some(true);
            }
            let v = self.order[i];
            let cands: Vec<(i32, i32)> = match self.anchor[v] {
                Some(p) => {
                    let c = self.at[p] as i32;
                    let (x, y) = (c % self.w, c / self.w);
                    vec![(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]
                }
                None => (0..self.h)
                    .flat_map(|y| (0..self.w).map(move |x| (x, y)))
                    .collect(),
            };
            for (x, y) in cands {
                if !self.ok(v, x, y) {
                    continue;
                }
                let idx = (y * self.w + x) as usize;
                self.owner[idx] = Some(v);
                self.at[v] = idx;
                match self.go(i + 1) {
                    Some(false) => {}
                    other => return other,
                }
                self.owner[idx] = None;
            }
            Some(false)
        }
    }
    let mut s = S {
        g,
        order,
        anchor,
        owner: vec![None; w * h],
        at: vec![0; n],
        w: w as i32,
        h: h as i32,
        nodes: 0,
        budget,
    };
    Ok(match s.go(0) {
        None => Outcome::Unknown,
        Some(false) => Outcome::Infeasible,
        Some(true) => {
            let blobs =
                s.at.iter()
                    .map(|&i| BTreeSet::from([[(i % w) as i32, (i / w) as i32, 0]]))
                    .collect();
            Outcome::Found(Representation::from_blobs(Dim::Two, blobs)?)
        }
    })
}

/// Lower bound `4k² - 4k` on the size of a pixel representation of a
/// graph whose embeddings all need `k` peeling rounds.
pub fn lemma1_bound(k: usize) -> usize {
    4 * k * k.saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{wheel_gadget, Port};

    fn min2(g: &Graph, side: usize, cap: usize) -> usize {
        match min_rep_search(g, SearchBounds::square(side, cap)).unwrap() {
            Outcome::Found((s, r)) => {
                assert!(r.verify(g).unwrap().valid);
                assert_eq!(r.size(), s);
                s
            }
            other => panic!("search not conclusive: {other:?}"),
        }
    }

    #[test]
    fn small_minima() {
        assert_eq!(min2(&Graph::new(1), 4, 4), 1);
        assert_eq!(min2(&Graph::complete(2), 4, 4), 2);
        assert_eq!(min2(&Graph::complete(3), 4, 4), 4);
        assert_eq!(min2(&Graph::cycle(4), 4, 4), 4);
        assert_eq!(min2(&Graph::complete(4), 4, 4), 9);
        let k4 = min_rep_search(&Graph::complete(4), SearchBounds::cube(3, 4)).unwrap();
        assert_eq!(k4.found().map(|f| f.0), Some(7));
    }

    #[test]
    fn k5_infeasible_and_3d() {
        let r = min_rep_search(
            &Graph::complete(5),
            SearchBounds {
                budget: 50_000_000,
                ..SearchBounds::square(3, 2)
            },
        );
        assert_eq!(r.unwrap(), Outcome::Infeasible);
        let k3 = min_rep_search(&Graph::complete(3), SearchBounds::cube(2, 2)).unwrap();
        assert_eq!(k3.found().map(|f| f.0), Some(4));
    }

    #[test]
    fn budget_gives_unknown() {
        let r = min_rep_search(
            &Graph::complete(4),
            SearchBounds {
                budget: 10,
                ..SearchBounds::square(4, 4)
            },
        )
        .unwrap();
        assert_eq!(r, Outcome::Unknown);
    }

    #[test]
    fn limits_enforced() {
        assert!(min_rep_search(&Graph::path(6), SearchBounds::square(4, 2)).is_err());
        assert!(min_rep_search(&Graph::path(2), SearchBounds::square(5, 2)).is_err());
        assert!(min_rep_search(&Graph::path(2), SearchBounds::square(4, 5)).is_err());
    }

    #[test]
    fn unit_drawings() {
        let k2 = AngledGraph::new(2, &[(0, 1, Port::E, Port::W)]).unwrap();
        assert!(matches!(
            unit_drawing_search(&k2, 5, 5, 1000).unwrap(),
            Outcome::Found(_)
        ));
        let p3 =
            AngledGraph::new(3, &[(0, 1, Port::N, Port::S), (1, 2, Port::N, Port::S)]).unwrap();
        let Outcome::Found(d) = unit_drawing_search(&p3, 5, 5, 1000).unwrap() else {
            panic!()
        };
        let pos = &d.positions;
        assert!(pos.iter().all(|p| p.0 == pos[0].0) || pos.iter().all(|p| p.1 == pos[0].1));
        // only angles count, so equal ports at both ends are fine
        let nn = AngledGraph::new(2, &[(0, 1, Port::N, Port::N)]).unwrap();
        let Outcome::Found(d) = unit_drawing_search(&nn, 2, 2, 1000).unwrap() else {
            panic!()
        };
        assert_ne!(d.frames[0], d.frames[1]);
        let c3 = AngledGraph::new(
            3,
            &[
                (0, 1, Port::E, Port::W),
                (1, 2, Port::N, Port::S),
                (0, 2, Port::N, Port::W),
            ],
        )
        .unwrap();
        assert_eq!(
            unit_drawing_search(&c3, 5, 5, 100_000).unwrap(),
            Outcome::Infeasible
        );
    }

    #[test]
    fn single_cells_of_wheels() {
        let k1 = wheel_gadget(&AngledGraph::new(1, &[]).unwrap()).unwrap();
        let Outcome::Found(r) = single_cell_search(&k1, 3, 3, 100_000).unwrap() else {
            panic!()
        };
        assert!(r.verify(&k1).unwrap().valid);
        assert_eq!(
            single_cell_search(&k1, 4, 2, 100_000).unwrap(),
            Outcome::Infeasible
        );
    }

    #[test]
    fn peeling_bound_values() {
        assert_eq!(
            (lemma1_bound(1), lemma1_bound(2), lemma1_bound(3)),
            (0, 8, 24)
        );
    }
}
