//! Simple undirected graphs and graph minors.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A simple undirected graph on the vertex ids `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops
    /// and out-of-range ids are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in 0..b {
                g.add_edge(u, a + v);
            }
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// Rows × cols grid graph, vertices numbered row-major.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut g = Graph::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1);
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    /// Inserts `uv`; returns false if it was already present.
    ///
    /// Panics on loops or out-of-range ids; use [`Graph::try_add_edge`] for
    /// untrusted input.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        self.try_add_edge(u, v).expect("invalid edge")
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        let had = self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        had
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.m() + 1 == self.n() && self.is_connected()
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.neighbors(v) {
                if index[w] != usize::MAX && i < index[w] {
                    g.add_edge(i, index[w]);
                }
            }
        }
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        for _ in 0..other.n() {
            g.add_vertex();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off);
        }
        g
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }
}

/// Edge contraction: `removed` is merged into `kept`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Contraction {
    pub kept: usize,
    pub removed: usize,
}

/// A minor in normal form: edge deletions, then removal of isolated
/// vertices, then contractions.
///
/// Vertex ids keep their labels while the recipe runs. When it is done the
/// surviving ids are compacted to `0..n'` preserving order, so a vertex whose
/// id is smaller than every removed id keeps its label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MinorRecipe {
    pub deleted_edges: Vec<(usize, usize)>,
    pub deleted_vertices: Vec<usize>,
    pub contractions: Vec<Contraction>,
}

impl MinorRecipe {
    pub fn is_empty(&self) -> bool {
        self.deleted_edges.is_empty()
            && self.deleted_vertices.is_empty()
            && self.contractions.is_empty()
    }

    pub fn contract(&mut self, kept: usize, removed: usize) {
        self.contractions.push(Contraction { kept, removed });
    }

    /// Maps every input vertex to its output id (`None` if deleted).
    pub fn vertex_map(&self, n: usize) -> Result<Vec<Option<usize>>> {
        let mut rep: Vec<Option<usize>> = (0..n).map(Some).collect();
        for &v in &self.deleted_vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            rep[v] = None;
        }
        // union-find style: removed -> kept
        let mut parent: Vec<usize> = (0..n).collect();
        for c in &self.contractions {
            if c.kept >= n || c.removed >= n {
                return Err(Error::InvalidRecipe(format!(
                    "contraction {}<-{} out of range",
                    c.kept, c.removed
                )));
            }
            parent[c.removed] = c.kept;
        }
        let find = |mut v: usize| {
            while parent[v] != v {
                v = parent[v];
            }
            v
        };
        let mut survivors = vec![false; n];
        for v in 0..n {
            if rep[v].is_some() && parent[v] == v {
                survivors[v] = true;
            }
        }
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if survivors[v] {
                new_id[v] = next;
                next += 1;
            }
        }
        for v in 0..n {
            if rep[v].is_some() {
                rep[v] = Some(new_id[find(v)]);
            }
        }
        Ok(rep)
    }
}

/// Applies a minor recipe; parallel edges are merged and loops dropped.
pub fn apply_minor(g: &Graph, recipe: &MinorRecipe) -> Result<Graph> {
    let mut h = g.clone();
    for &(u, v) in &recipe.deleted_edges {
        if !h.remove_edge(u, v) {
            return Err(Error::InvalidRecipe(format!(
                "deleted edge {u}-{v} not present"
            )));
        }
    }
    let mut alive = vec![true; g.n()];
    for &v in &recipe.deleted_vertices {
        if v >= h.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: h.n(),
            });
        }
        if h.degree(v) > 0 {
            return Err(Error::InvalidRecipe(format!(
                "deleted vertex {v} is not isolated"
            )));
        }
        alive[v] = false;
    }
    for c in &recipe.contractions {
        let (k, r) = (c.kept, c.removed);
        if k >= h.n() || r >= h.n() || !alive[k] || !alive[r] {
            return Err(Error::InvalidRecipe(format!(
                "contraction {k}<-{r} references a missing vertex"
            )));
        }
        if !h.has_edge(k, r) {
            return Err(Error::InvalidRecipe(format!(
                "contracted edge {k}-{r} not present"
            )));
        }
        let nbrs: Vec<usize> = h.neighbors(r).collect();
        for w in nbrs {
            h.remove_edge(r, w);
            if w != k {
                h.add_edge(k, w);
            }
        }
        alive[r] = false;
    }
    let keep: Vec<usize> = (0..h.n()).filter(|&v| alive[v]).collect();
    Ok(h.induced(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_recipe_is_identity() {
        let g = Graph::petersen();
        assert_eq!(apply_minor(&g, &MinorRecipe::default()).unwrap(), g);
    }

    #[test]
    fn delete_edge_of_triangle_gives_path() {
        let g = Graph::complete(3);
        let r = MinorRecipe {
            deleted_edges: vec![(0, 2)],
            ..Default::default()
        };
        let h = apply_minor(&g, &r).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn contract_path_edge_gives_k2() {
        let g = Graph::path(3);
        let mut r = MinorRecipe::default();
        r.contract(1, 2);
        let h = apply_minor(&g, &r).unwrap();
        assert_eq!(h, Graph::complete(2));
    }

    #[test]
    fn deleting_non_isolated_vertex_fails() {
        let g = Graph::path(2);
        let r = MinorRecipe {
            deleted_vertices: vec![0],
            ..Default::default()
        };
        assert!(matches!(apply_minor(&g, &r), Err(Error::InvalidRecipe(_))));
    }

    #[test]
    fn out_of_range_edge_rejected() {
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn vertex_map_compacts() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let mut r = MinorRecipe {
            deleted_vertices: vec![3],
            ..Default::default()
        };
        r.contract(0, 1);
        assert_eq!(
            r.vertex_map(g.n()).unwrap(),
            vec![Some(0), Some(0), Some(1), None]
        );
        assert_eq!(apply_minor(&g, &r).unwrap(), Graph::complete(2));
    }

    #[test]
    fn petersen_counts() {
        let g = Graph::petersen();
        assert_eq!((g.n(), g.m(), g.max_degree()), (10, 15, 3));
    }
}
