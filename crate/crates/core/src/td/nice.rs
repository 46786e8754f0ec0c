use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

/// Rooted binary tree decomposition in which every node is a leaf (one
/// vertex), introduces or forgets a single vertex relative to its only
/// child, or joins two children with identical bags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub bags: Vec<BTreeSet<usize>>,
    pub kinds: Vec<NodeKind>,
    pub children: Vec<Vec<usize>>,
    pub root: Option<usize>,
}

impl NiceTreeDecomposition {
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    fn push(&mut self, bag: BTreeSet<usize>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.bags.push(bag);
        self.kinds.push(kind);
        self.children.push(children);
        self.bags.len() - 1
    }

    /// Nodes with every child listed before its parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let Some(root) = self.root else { return out };
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(&self.children[v]);
        }
        out.reverse();
        out
    }

    /// Checks the node-kind conditions.
    pub fn check_shape(&self) -> Result<()> {
        let bad =
            |mu: usize, msg: &str| Err(Error::InvalidDecomposition(format!("node {mu}: {msg}")));
        for mu in 0..self.len() {
            let bag = &self.bags[mu];
            let ch = &self.children[mu];
            match self.kinds[mu] {
                NodeKind::Leaf => {
                    if !ch.is_empty() || bag.len() != 1 {
                        return bad(mu, "leaf must have one vertex and no children");
                    }
                }
                NodeKind::Introduce(v) => {
                    let mut expect = ch
                        .first()
                        .map(|&c| self.bags[c].clone())
                        .unwrap_or_default();
                    if ch.len() != 1 || !expect.insert(v) || expect != *bag {
                        return bad(mu, "introduce must add one vertex to its child bag");
                    }
                }
                NodeKind::Forget(v) => {
                    let mut expect = ch
                        .first()
                        .map(|&c| self.bags[c].clone())
                        .unwrap_or_default();
                    if ch.len() != 1 || !expect.remove(&v) || expect != *bag {
                        return bad(mu, "forget must drop one vertex from its child bag");
                    }
                }
                NodeKind::Join => {
                    if ch.len() != 2 || ch.iter().any(|&c| self.bags[c] != *bag) {
                        return bad(mu, "join needs two children with the same bag");
                    }
                }
            }
        }
        if self.root.is_some() && self.postorder().len() != self.len() {
            return Err(Error::InvalidDecomposition(
                "nodes unreachable from the root".into(),
            ));
        }
        Ok(())
    }

    /// The underlying (unrooted) decomposition.
    pub fn as_td(&self) -> TreeDecomposition {
        let mut tree = Graph::new(self.len());
        for (mu, ch) in self.children.iter().enumerate() {
            for &c in ch {
                tree.add_edge(mu, c);
            }
        }
        TreeDecomposition {
            bags: self.bags.clone(),
            tree,
        }
    }
}

/// Converts a valid decomposition of `g` into nice form of the same width,
/// rooted at the node containing vertex 0.
pub fn to_nice(t: &TreeDecomposition, g: &Graph) -> Result<NiceTreeDecomposition> {
    let report = t.validate(g);
    if !report.valid {
        return Err(Error::InvalidDecomposition(format!("{report:?}")));
    }
    let mut nice = NiceTreeDecomposition {
        bags: Vec::new(),
        kinds: Vec::new(),
        children: Vec::new(),
        root: None,
    };
    if t.is_empty() {
        return Ok(nice);
    }
    let root = t.bags.iter().position(|b| b.contains(&0)).unwrap_or(0);
    let k = t.len();
    let mut parent = vec![usize::MAX; k];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let mu = order[i];
        for nu in t.tree.neighbors(mu) {
            if parent[nu] == usize::MAX {
                parent[nu] = mu;
                order.push(nu);
            }
        }
        i += 1;
    }

    // top[mu]: nice node whose bag equals X_mu (None if the subtree is empty).
    let mut top: Vec<Option<usize>> = vec![None; k];
    for &mu in order.iter().rev() {
        let target = &t.bags[mu];
        let mut branches = Vec::new();
        for nu in t.tree.neighbors(mu).filter(|&nu| nu != parent[mu]) {
            let Some(mut cur) = top[nu] else { continue };
            let below = t.bags[nu].clone();
            let mut bag = below.clone();
            for &v in below.difference(target) {
                bag.remove(&v);
                cur = nice.push(bag.clone(), NodeKind::Forget(v), vec![cur]);
            }
            for &v in target.difference(&below) {
                bag.insert(v);
                cur = nice.push(bag.clone(), NodeKind::Introduce(v), vec![cur]);
            }
            branches.push(cur);
        }
        let mut iter = branches.into_iter();
        top[mu] = match iter.next() {
            Some(first) => Some(iter.fold(first, |acc, b| {
                nice.push(target.clone(), NodeKind::Join, vec![acc, b])
            })),
            None => {
                let mut vs = target.iter().copied();
                vs.next().map(|first| {
                    let mut bag = BTreeSet::from([first]);
                    let mut cur = nice.push(bag.clone(), NodeKind::Leaf, Vec::new());
                    for v in vs {
                        bag.insert(v);
                        cur = nice.push(bag.clone(), NodeKind::Introduce(v), vec![cur]);
                    }
                    cur
                })
            }
        };
    }
    nice.root = top[root];
    nice.check_shape()?;
    Ok(nice)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn td(bags: &[&[usize]], edges: &[(usize, usize)]) -> TreeDecomposition {
        let tree = Graph::from_edges(bags.len(), edges).unwrap();
        TreeDecomposition::new(
            bags.iter().map(|b| b.iter().copied().collect()).collect(),
            tree,
        )
        .unwrap()
    }

    #[test]
    fn single_bag_chain() {
        let t = td(&[&[0, 1]], &[]);
        let nice = to_nice(&t, &Graph::complete(2)).unwrap();
        assert_eq!(nice.kinds, vec![NodeKind::Leaf, NodeKind::Introduce(1)]);
        assert_eq!(nice.root, Some(1));
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn path_p5() {
        let g = Graph::path(5);
        let t = td(
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4]],
            &[(0, 1), (1, 2), (2, 3)],
        );
        let nice = to_nice(&t, &g).unwrap();
        assert_eq!(nice.width(), 1);
        assert!(nice.len() <= 4 * g.n());
        assert!(nice.as_td().validate(&g).valid);
    }

    #[test]
    fn join_of_branches() {
        let g = Graph::star(3);
        let t = td(&[&[0, 1], &[0, 2], &[0, 3]], &[(0, 1), (0, 2)]);
        let nice = to_nice(&t, &g).unwrap();
        assert!(nice.kinds.contains(&NodeKind::Join));
        assert!(nice.as_td().validate(&g).valid);
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn nice_input_is_stable() {
        let g = Graph::path(3);
        let t = td(&[&[0, 1], &[1, 2]], &[(0, 1)]);
        let once = to_nice(&t, &g).unwrap();
        let twice = to_nice(&once.as_td(), &g).unwrap();
        assert_eq!(once.len(), twice.len());
        assert_eq!(once.width(), twice.width());
        let mut a = once.kinds.clone();
        let mut b = twice.kinds.clone();
        a.sort_by_key(|k| format!("{k:?}"));
        b.sort_by_key(|k| format!("{k:?}"));
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_invalid() {
        let t = td(&[&[0, 1], &[0, 2]], &[(0, 1)]);
        assert!(to_nice(&t, &Graph::path(3)).is_err());
    }
}
