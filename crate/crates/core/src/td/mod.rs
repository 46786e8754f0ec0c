//! Tree decompositions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

mod heuristic;
mod nice;
mod star;

pub use heuristic::{decomposition_from_order, td_exact_small, td_heuristic, EXACT_LIMIT};
pub use nice::{to_nice, NiceTreeDecomposition, NodeKind};
pub use star::{bag_coloring, star_map, BagColoring, StarMap};

/// A tree whose nodes carry bags of graph vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<usize>>,
    pub tree: Graph,
}

/// Outcome of checking a decomposition against a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TdReport {
    pub valid: bool,
    pub tree_ok: bool,
    /// Bag entries that are not vertices of the graph.
    pub unknown_vertices: Vec<usize>,
    /// Vertices in no bag or whose bags do not form a subtree.
    pub disconnected_vertices: Vec<usize>,
    pub uncovered_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<BTreeSet<usize>>, tree: Graph) -> Result<Self> {
        if bags.len() != tree.n() {
            return Err(Error::InvalidDecomposition(format!(
                "{} bags for {} tree nodes",
                bags.len(),
                tree.n()
            )));
        }
        Ok(TreeDecomposition { bags, tree })
    }

    /// Width: largest bag size minus one (`-1` for an empty decomposition).
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Checks that the tree is a tree, that the nodes containing each vertex
    /// form a non-empty subtree and that every edge lies in some bag.
    pub fn validate(&self, g: &Graph) -> TdReport {
        let n = g.n();
        let mut r = TdReport {
            tree_ok: self.tree.n() == 0 || self.tree.is_tree(),
            ..Default::default()
        };
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (mu, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    r.unknown_vertices.push(v);
                } else {
                    holders[v].push(mu);
                }
            }
        }
        r.unknown_vertices.sort_unstable();
        r.unknown_vertices.dedup();
        for (v, nodes) in holders.iter().enumerate() {
            if nodes.is_empty() || !self.tree.induced(nodes).is_connected() {
                r.disconnected_vertices.push(v);
            }
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                r.uncovered_edges.push((u, v));
            }
        }
        r.valid = r.tree_ok
            && r.unknown_vertices.is_empty()
            && r.disconnected_vertices.is_empty()
            && r.uncovered_edges.is_empty();
        r
    }
}
