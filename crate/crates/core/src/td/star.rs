use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{NiceTreeDecomposition, NodeKind};

/// Assignment of every edge to a decomposition node such that the edges of
/// each node form a star.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StarMap {
    pub assignment: BTreeMap<(usize, usize), usize>,
    /// Centre of the star at each node (`None` if no edge is assigned).
    pub center: Vec<Option<usize>>,
}

impl StarMap {
    pub fn edges_at(&self, mu: usize) -> Vec<(usize, usize)> {
        self.assignment
            .iter()
            .filter(|&(_, &nu)| nu == mu)
            .map(|(&e, _)| e)
            .collect()
    }
}

/// Maps each edge `uv` to the lowest introduce node (in postorder) that
/// introduces one endpoint while the other is already in the bag; the
/// introduced vertex is the centre of the star at that node.
pub fn star_map(t: &NiceTreeDecomposition, g: &Graph) -> Result<StarMap> {
    let mut map = StarMap {
        assignment: BTreeMap::new(),
        center: vec![None; t.len()],
    };
    for mu in t.postorder() {
        let NodeKind::Introduce(u) = t.kinds[mu] else {
            continue;
        };
        if u >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: u,
                n: g.n(),
            });
        }
        for &w in &t.bags[mu] {
            if w == u || !g.has_edge(u, w) {
                continue;
            }
            let key = (u.min(w), u.max(w));
            if let std::collections::btree_map::Entry::Vacant(e) = map.assignment.entry(key) {
                e.insert(mu);
                map.center[mu] = Some(u);
            }
        }
    }
    if let Some((u, v)) = g
        .edges()
        .into_iter()
        .find(|e| !map.assignment.contains_key(e))
    {
        return Err(Error::InvalidDecomposition(format!(
            "edge {u}-{v} lies in no introduce bag"
        )));
    }
    Ok(map)
}

/// Colouring of the vertices with `width + 1` colours (numbered from 1) such
/// that vertices sharing a bag get distinct colours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagColoring {
    pub color: Vec<usize>,
    pub k: usize,
}

/// Colours greedily from the root downwards: each vertex is coloured at the
/// topmost node containing it, avoiding the colours of its bag mates there.
pub fn bag_coloring(t: &NiceTreeDecomposition, n: usize) -> BagColoring {
    let k = (t.width() + 1).max(1) as usize;
    let mut color = vec![0usize; n];
    let mut order = t.postorder();
    order.reverse();
    for mu in order {
        let bag = &t.bags[mu];
        for &v in bag {
            if color[v] != 0 {
                continue;
            }
            let used: Vec<usize> = bag.iter().map(|&w| color[w]).collect();
            color[v] = (1..).find(|c| !used.contains(c)).expect("free colour");
        }
    }
    for c in color.iter_mut() {
        if *c == 0 {
            *c = 1;
        }
    }
    BagColoring { color, k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::td::{td_heuristic, to_nice};

    fn nice(g: &Graph) -> NiceTreeDecomposition {
        to_nice(&td_heuristic(g), g).unwrap()
    }

    #[test]
    fn k2_maps_to_second_introduce() {
        let g = Graph::complete(2);
        let t = nice(&g);
        let m = star_map(&t, &g).unwrap();
        let mu = m.assignment[&(0, 1)];
        assert!(matches!(t.kinds[mu], NodeKind::Introduce(_)));
    }

    #[test]
    fn k3_stars() {
        let g = Graph::complete(3);
        let t = nice(&g);
        let m = star_map(&t, &g).unwrap();
        assert_eq!(m.assignment.len(), 3);
        for mu in 0..t.len() {
            let es = m.edges_at(mu);
            if let Some(c) = m.center[mu] {
                assert!(es.iter().all(|&(a, b)| a == c || b == c));
            } else {
                assert!(es.is_empty());
            }
        }
        let col = bag_coloring(&t, 3);
        let mut cs = col.color.clone();
        cs.sort();
        assert_eq!(cs, vec![1, 2, 3]);
    }

    #[test]
    fn edgeless() {
        let g = Graph::new(3);
        let t = nice(&g);
        assert!(star_map(&t, &g).unwrap().assignment.is_empty());
        assert_eq!(bag_coloring(&t, 3).color, vec![1, 1, 1]);
    }
}
