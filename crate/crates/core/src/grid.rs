//! Grid cells, blobs and representations.
//!
//! A cell is identified by the integer coordinates of its lower corner. Two
//! cells touch when they share an edge (2D) or a face (3D), i.e. when their
//! coordinates are at L1 distance exactly one. In 2D the third coordinate is
//! always zero.

use std::collections::{BTreeSet, VecDeque};

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Cell = [i32; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn from_u8(d: u8) -> Result<Dim> {
        match d {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            other => Err(Error::UnsupportedDimension(other)),
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    pub fn axes(self) -> usize {
        self.as_u8() as usize
    }

    /// Face-adjacent cells of `c`.
    pub fn neighbors(self, c: Cell) -> impl Iterator<Item = Cell> {
        const STEPS: [Cell; 6] = [
            [1, 0, 0],
            [-1, 0, 0],
            [0, 1, 0],
            [0, -1, 0],
            [0, 0, 1],
            [0, 0, -1],
        ];
        let k = 2 * self.axes();
        STEPS[..k]
            .iter()
            .map(move |s| [c[0] + s[0], c[1] + s[1], c[2] + s[2]])
    }
}

/// A grid point tagged with its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridPoint {
    pub dim: Dim,
    pub cell: Cell,
}

impl GridPoint {
    pub fn new2(x: i32, y: i32) -> Self {
        GridPoint {
            dim: Dim::Two,
            cell: [x, y, 0],
        }
    }

    pub fn new3(x: i32, y: i32, z: i32) -> Self {
        GridPoint {
            dim: Dim::Three,
            cell: [x, y, z],
        }
    }
}

pub fn l1(p: Cell, q: Cell) -> u32 {
    (0..3).map(|i| p[i].abs_diff(q[i])).sum()
}

/// Whether two cells share an edge (2D) or a face (3D).
pub fn are_adjacent(p: GridPoint, q: GridPoint) -> Result<bool> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim.as_u8(),
            found: q.dim.as_u8(),
        });
    }
    Ok(l1(p.cell, q.cell) == 1)
}

/// Whether a cell set is connected under face adjacency. The empty set is
/// reported as disconnected.
pub fn is_connected(dim: Dim, cells: &BTreeSet<Cell>) -> bool {
    let Some(&start) = cells.iter().next() else {
        return false;
    };
    let mut seen = FxHashSet::default();
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for nb in dim.neighbors(c) {
            if cells.contains(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    seen.len() == cells.len()
}

/// A map from vertex ids `0..n` to blobs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    dim: Dim,
    blobs: Vec<BTreeSet<Cell>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub valid: bool,
    pub missing_edges: Vec<(usize, usize)>,
    pub extra_contacts: Vec<(usize, usize)>,
    pub overlap_cells: Vec<Cell>,
    pub disconnected_vertices: Vec<usize>,
}

impl Representation {
    pub fn new(dim: Dim, n: usize) -> Self {
        Representation {
            dim,
            blobs: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_blobs(dim: Dim, blobs: Vec<BTreeSet<Cell>>) -> Result<Self> {
        if dim == Dim::Two && blobs.iter().flatten().any(|c| c[2] != 0) {
            return Err(Error::InvalidRepresentation(
                "2D cell with nonzero z".into(),
            ));
        }
        Ok(Representation { dim, blobs })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.blobs.len()
    }

    pub fn blob(&self, v: usize) -> &BTreeSet<Cell> {
        &self.blobs[v]
    }

    pub fn blobs(&self) -> &[BTreeSet<Cell>] {
        &self.blobs
    }

    pub fn into_blobs(self) -> Vec<BTreeSet<Cell>> {
        self.blobs
    }

    pub fn insert(&mut self, v: usize, cell: Cell) -> bool {
        debug_assert!(self.dim == Dim::Three || cell[2] == 0);
        self.blobs[v].insert(cell)
    }

    pub fn remove(&mut self, v: usize, cell: &Cell) -> bool {
        self.blobs[v].remove(cell)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.blobs.push(BTreeSet::new());
        self.blobs.len() - 1
    }

    /// Total number of cells.
    pub fn size(&self) -> usize {
        self.blobs.iter().map(BTreeSet::len).sum()
    }

    /// Owner of each cell; the first owner wins on overlaps.
    pub fn owners(&self) -> FxHashMap<Cell, usize> {
        self.owners_and_overlaps().0
    }

    fn owners_and_overlaps(&self) -> (FxHashMap<Cell, usize>, Vec<Cell>) {
        let mut map = FxHashMap::with_capacity_and_hasher(self.size(), Default::default());
        let mut dup = BTreeSet::new();
        for (v, blob) in self.blobs.iter().enumerate() {
            for &c in blob {
                if let Some(w) = map.insert(c, v) {
                    map.insert(c, w.min(v));
                    dup.insert(c);
                }
            }
        }
        (map, dup.into_iter().collect())
    }

    /// Blobs that are empty or not connected. Only meaningful without
    /// overlaps, since membership is read from `owners`.
    fn disconnected(&self, owners: &FxHashMap<Cell, usize>) -> Vec<usize> {
        let mut seen = FxHashSet::with_capacity_and_hasher(owners.len(), Default::default());
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for (v, blob) in self.blobs.iter().enumerate() {
            let Some(&start) = blob.iter().next() else {
                out.push(v);
                continue;
            };
            let mut count = 1;
            seen.insert(start);
            queue.push_back(start);
            while let Some(c) = queue.pop_front() {
                for nb in self.dim.neighbors(c) {
                    if owners.get(&nb) == Some(&v) && seen.insert(nb) {
                        count += 1;
                        queue.push_back(nb);
                    }
                }
            }
            if count != blob.len() {
                out.push(v);
            }
        }
        out
    }

    fn raw_contacts(&self, owners: &FxHashMap<Cell, usize>) -> Graph {
        let mut g = Graph::new(self.n());
        for (v, blob) in self.blobs.iter().enumerate() {
            for &c in blob {
                for nb in self.dim.neighbors(c) {
                    if let Some(&w) = owners.get(&nb) {
                        if w != v {
                            g.add_edge(v, w);
                        }
                    }
                }
            }
        }
        g
    }

    /// Contacts and disconnected blobs from sorted cell lists, or `None` if
    /// two blobs share a cell. Face neighbours along an axis are adjacent
    /// after sorting with that axis last.
    fn sorted_scan(&self) -> Option<(Graph, Vec<usize>)> {
        let total = self.size();
        let mut cells: Vec<(Cell, u32)> = Vec::with_capacity(total);
        for (v, blob) in self.blobs.iter().enumerate() {
            cells.extend(blob.iter().map(|&c| (c, v as u32)));
        }
        fn find(parent: &mut [u32], mut i: u32) -> u32 {
            while parent[i as usize] != i {
                parent[i as usize] = parent[parent[i as usize] as usize];
                i = parent[i as usize];
            }
            i
        }
        let mut parent: Vec<u32> = (0..total as u32).collect();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut keyed: Vec<(Cell, u32)> = Vec::with_capacity(total);
        let axes = if self.dim == Dim::Three { 3 } else { 2 };
        for a in 0..axes {
            keyed.clear();
            keyed.extend(
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, (c, _))| ([c[(a + 1) % 3], c[(a + 2) % 3], c[a]], i as u32)),
            );
            keyed.sort_unstable();
            for w in keyed.windows(2) {
                let ((p, i), (q, j)) = (w[0], w[1]);
                if p[0] != q[0] || p[1] != q[1] {
                    continue;
                }
                if p[2] == q[2] {
                    return None;
                }
                if q[2] != p[2] + 1 {
                    continue;
                }
                let (u, v) = (cells[i as usize].1, cells[j as usize].1);
                if u == v {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri as usize] = rj;
                } else {
                    pairs.push((u.min(v), u.max(v)));
                }
            }
        }
        let mut disconnected = Vec::new();
        let mut start = 0u32;
        for (v, blob) in self.blobs.iter().enumerate() {
            let end = start + blob.len() as u32;
            let root = (start < end).then(|| find(&mut parent, start));
            if root.is_none() || (start..end).any(|i| Some(find(&mut parent, i)) != root) {
                disconnected.push(v);
            }
            start = end;
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut g = Graph::new(self.n());
        for (u, v) in pairs {
            g.add_edge(u as usize, v as usize);
        }
        Some((g, disconnected))
    }

    /// The graph realised by blob contacts. Fails if blobs overlap or a blob
    /// is empty or disconnected.
    pub fn contact_graph(&self) -> Result<Graph> {
        let Some((contacts, disconnected)) = self.sorted_scan() else {
            let overlap = self.owners_and_overlaps().1;
            return Err(Error::InvalidRepresentation(format!(
                "{} overlapping cells, first at {:?}",
                overlap.len(),
                overlap[0]
            )));
        };
        if let Some(v) = disconnected.first() {
            return Err(Error::InvalidRepresentation(format!(
                "blob of vertex {v} is empty or disconnected"
            )));
        }
        Ok(contacts)
    }

    /// Checks this representation against `g`, collecting every diagnostic.
    pub fn verify(&self, g: &Graph) -> Result<VerifyReport> {
        if self.n() != g.n() {
            return Err(Error::VertexSetMismatch {
                rep: self.n(),
                graph: g.n(),
            });
        }
        let (contacts, disconnected_vertices, overlap_cells) = match self.sorted_scan() {
            Some((c, d)) => (c, d, Vec::new()),
            None => {
                let (owners, overlap_cells) = self.owners_and_overlaps();
                let disconnected: Vec<usize> = self
                    .disconnected(&owners)
                    .into_iter()
                    .filter(|&v| !is_connected(self.dim, &self.blobs[v]))
                    .collect();
                (self.raw_contacts(&owners), disconnected, overlap_cells)
            }
        };
        let missing_edges: Vec<_> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| !contacts.has_edge(u, v))
            .collect();
        let extra_contacts: Vec<_> = contacts
            .edges()
            .into_iter()
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        let valid = overlap_cells.is_empty()
            && disconnected_vertices.is_empty()
            && missing_edges.is_empty()
            && extra_contacts.is_empty();
        Ok(VerifyReport {
            valid,
            missing_edges,
            extra_contacts,
            overlap_cells,
            disconnected_vertices,
        })
    }

    /// Replaces each cell by an `f^d` block.
    pub fn scale(&self, f: u32) -> Result<Representation> {
        if f == 0 {
            return Err(Error::InvalidParameter(
                "scale factor must be positive".into(),
            ));
        }
        let f = f as i32;
        let zr = if self.dim == Dim::Three { f } else { 1 };
        let blobs = self
            .blobs
            .iter()
            .map(|blob| {
                let mut out = Vec::with_capacity(blob.len() * (f * f * zr) as usize);
                for c in blob {
                    for dx in 0..f {
                        for dy in 0..f {
                            for dz in 0..zr {
                                out.push([c[0] * f + dx, c[1] * f + dy, c[2] * f + dz]);
                            }
                        }
                    }
                }
                out.sort_unstable();
                out.into_iter().collect()
            })
            .collect();
        Ok(Representation {
            dim: self.dim,
            blobs,
        })
    }

    pub fn translate(&self, by: Cell) -> Representation {
        let by = if self.dim == Dim::Two {
            [by[0], by[1], 0]
        } else {
            by
        };
        let blobs = self
            .blobs
            .iter()
            .map(|b| {
                b.iter()
                    .map(|c| [c[0] + by[0], c[1] + by[1], c[2] + by[2]])
                    .collect()
            })
            .collect();
        Representation {
            dim: self.dim,
            blobs,
        }
    }

    /// Inclusive bounding box `(min, max)`, or `None` if there are no cells.
    pub fn bounding_box(&self) -> Option<(Cell, Cell)> {
        let mut it = self.blobs.iter().flatten();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for c in it {
            for i in 0..3 {
                lo[i] = lo[i].min(c[i]);
                hi[i] = hi[i].max(c[i]);
            }
        }
        Some((lo, hi))
    }

    /// Translated so the bounding box starts at the origin.
    pub fn normalized(&self) -> Representation {
        match self.bounding_box() {
            Some((lo, _)) => self.translate([-lo[0], -lo[1], -lo[2]]),
            None => self.clone(),
        }
    }

    /// Number of rounds needed to delete all blobs when every round removes
    /// the blobs touching the unbounded empty region. 2D only.
    pub fn peeling_depth(&self) -> Result<usize> {
        if self.dim != Dim::Two {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim.as_u8(),
            });
        }
        if self.size() == 0 {
            return Err(Error::InvalidRepresentation(
                "peeling needs a nonempty representation".into(),
            ));
        }
        let mut alive: Vec<bool> = self.blobs.iter().map(|b| !b.is_empty()).collect();
        let mut rounds = 0;
        while alive.iter().any(|&a| a) {
            rounds += 1;
            let mut owner: FxHashMap<Cell, usize> = FxHashMap::default();
            for (v, blob) in self.blobs.iter().enumerate() {
                if alive[v] {
                    owner.extend(blob.iter().map(|&c| (c, v)));
                }
            }
            let (mut lo, mut hi) = ([i32::MAX; 2], [i32::MIN; 2]);
            for c in owner.keys() {
                for i in 0..2 {
                    lo[i] = lo[i].min(c[i]);
                    hi[i] = hi[i].max(c[i]);
                }
            }
            let (lo, hi) = ([lo[0] - 1, lo[1] - 1], [hi[0] + 1, hi[1] + 1]);
            let start = [lo[0], lo[1], 0];
            let mut outside: FxHashSet<Cell> = [start].into_iter().collect();
            let mut queue = VecDeque::from([start]);
            let mut touched = BTreeSet::new();
            while let Some(c) = queue.pop_front() {
                for nb in Dim::Two.neighbors(c) {
                    if nb[0] < lo[0] || nb[0] > hi[0] || nb[1] < lo[1] || nb[1] > hi[1] {
                        continue;
                    }
                    if let Some(&v) = owner.get(&nb) {
                        touched.insert(v);
                    } else if outside.insert(nb) {
                        queue.push_back(nb);
                    }
                }
            }
            if touched.is_empty() {
                return Err(Error::Internal("peeling made no progress".into()));
            }
            for v in touched {
                alive[v] = false;
            }
        }
        Ok(rounds)
    }
}
