use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::grid::Dim;

use super::{check_degree, OrthoDrawing, Point, TreeEngine};

/// Heavy-path layout: the largest child subtree continues straight below its
/// parent, up to two lighter subtrees hang to the west and east. Total edge
/// length is O(n log n).
#[derive(Debug, Clone, Copy, Default)]
pub struct HeavyPathEngine;

impl TreeEngine for HeavyPathEngine {
    fn layout(&self, t: &Graph) -> Result<OrthoDrawing> {
        layout_tree(t)
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Extent {
    left: i32,
    right: i32,
    height: i32,
}

pub fn layout_tree(t: &Graph) -> Result<OrthoDrawing> {
    let n = t.n();
    if n == 0 {
        return OrthoDrawing::new(Dim::Two, Vec::new(), Vec::new(), false);
    }
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    check_degree(t, 4)?;
    let root = (0..n).min_by_key(|&v| (t.degree(v), v)).expect("non-empty");

    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }

    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if v != root {
            size[parent[v]] += size[v];
        }
    }
    // children[v] = (heavy, west, east)
    let mut children: Vec<(Option<usize>, Option<usize>, Option<usize>)> =
        vec![(None, None, None); n];
    for &v in &order {
        let mut ch: Vec<usize> = t.neighbors(v).filter(|&w| w != parent[v]).collect();
        if ch.len() > 3 {
            return Err(Error::DegreeTooLarge {
                vertex: v,
                degree: t.degree(v),
                limit: 4,
            });
        }
        ch.sort_by_key(|&w| (std::cmp::Reverse(size[w]), w));
        let mut it = ch.into_iter();
        let heavy = it.next();
        let mut light: Vec<usize> = it.collect();
        light.sort_unstable();
        children[v] = (heavy, light.first().copied(), light.get(1).copied());
    }

    // Per node: extent of its subtree drawing, offsets of its children.
    let mut ext = vec![Extent::default(); n];
    let mut offset = vec![(0i32, 0i32); n];
    for &v in order.iter().rev() {
        let (h, a, b) = children[v];
        let mut e = Extent::default();
        let mut light_height = -1;
        if let Some(a) = a {
            let dx = ext[a].right + 1;
            offset[a] = (-dx, 1);
            e.left = e.left.max(dx + ext[a].left);
            light_height = light_height.max(ext[a].height);
            e.height = e.height.max(1 + ext[a].height);
        }
        if let Some(b) = b {
            let dx = ext[b].left + 1;
            offset[b] = (dx, 1);
            e.right = e.right.max(dx + ext[b].right);
            light_height = light_height.max(ext[b].height);
            e.height = e.height.max(1 + ext[b].height);
        }
        if let Some(h) = h {
            let dy = 2 + light_height;
            offset[h] = (0, dy);
            e.left = e.left.max(ext[h].left);
            e.right = e.right.max(ext[h].right);
            e.height = e.height.max(dy + ext[h].height);
        }
        ext[v] = e;
    }

    let mut positions: Vec<Point> = vec![[0; 3]; n];
    let mut routes = Vec::with_capacity(n - 1);
    for &v in &order {
        if v == root {
            continue;
        }
        let p = positions[parent[v]];
        let (dx, dy) = offset[v];
        let q = [p[0] + dx, p[1] - dy, 0];
        positions[v] = q;
        let route = if dx == 0 {
            vec![p, q]
        } else {
            vec![p, [q[0], p[1], 0], q]
        };
        routes.push(((parent[v], v), route));
    }
    OrthoDrawing::new(Dim::Two, positions, routes, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_binary(levels: u32) -> Graph {
        let n = (1usize << levels) - 1;
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v, (v - 1) / 2);
        }
        g
    }

    #[test]
    fn single_vertex() {
        let d = layout_tree(&Graph::new(1)).unwrap();
        assert_eq!(d.n(), 1);
        assert_eq!(d.total_length(), 0);
    }

    #[test]
    fn path_is_collinear() {
        let d = layout_tree(&Graph::path(3)).unwrap();
        assert_eq!(d.total_length(), 2);
        assert!(d.is_straight());
        let xs: Vec<i32> = d.positions().iter().map(|p| p[0]).collect();
        assert!(xs.iter().all(|&x| x == xs[0]));
    }

    #[test]
    fn binary_tree_regression() {
        let d = layout_tree(&complete_binary(4)).unwrap();
        assert_eq!(d.graph(), complete_binary(4));
        assert_eq!(d.total_length(), 30);
    }

    #[test]
    fn rejects_non_tree_and_high_degree() {
        assert_eq!(layout_tree(&Graph::cycle(4)), Err(Error::NotATree));
        assert!(matches!(
            layout_tree(&Graph::star(5)),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn star4_uses_all_ports() {
        let d = layout_tree(&Graph::star(4)).unwrap();
        assert_eq!(d.graph(), Graph::star(4));
    }
}
