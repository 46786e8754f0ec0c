use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::TreeDecomposition;

/// Largest graph accepted by [`td_exact_small`].
pub const EXACT_LIMIT: usize = 10;

/// Decomposition induced by eliminating the vertices in `order`: the bag of
/// `v` is `v` with its neighbours at elimination time, and its parent is the
/// bag of the first of those neighbours to be eliminated later. Roots of
/// different components are chained together.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> Result<TreeDecomposition> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::InvalidParameter(
                "elimination order is not a permutation".into(),
            ));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(Error::InvalidParameter(
            "elimination order is not a permutation".into(),
        ));
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbor_set(v).clone()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut tree = Graph::new(n);
    let mut last_root: Option<usize> = None;
    for (i, &v) in order.iter().enumerate() {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (a, &x) in nb.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &nb[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        let mut bag: BTreeSet<usize> = nb.iter().copied().collect();
        bag.insert(v);
        bags.push(bag);
        match nb.iter().min_by_key(|&&x| pos[x]) {
            Some(&p) => {
                tree.add_edge(i, pos[p]);
            }
            None => {
                if let Some(r) = last_root {
                    tree.add_edge(r, i);
                }
                last_root = Some(i);
            }
        }
    }
    TreeDecomposition::new(bags, tree)
}

/// Min-fill elimination heuristic, ties broken by smallest vertex id.
pub fn td_heuristic(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbor_set(v).clone()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let fill = |v: usize| -> usize {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut missing = 0;
            for (a, &x) in nb.iter().enumerate() {
                missing += nb[a + 1..]
                    .iter()
                    .filter(|&&y| !adj[x].contains(&y))
                    .count();
            }
            missing
        };
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill(v), v))
            .expect("vertex left");
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (a, &x) in nb.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &nb[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    decomposition_from_order(g, &order).expect("order is a permutation")
}

/// Minimum-width decomposition by dynamic programming over vertex subsets
/// (memoized search over elimination orders). Limited to
/// [`EXACT_LIMIT`] vertices.
pub fn td_exact_small(g: &Graph) -> Result<TreeDecomposition> {
    let n = g.n();
    if n > EXACT_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "exact treewidth needs n <= {EXACT_LIMIT}, got {n}"
        )));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w))
        .collect();
    // q(s, v): vertices outside s + v reachable from v through s
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut reach = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[x] & !seen;
            seen |= nb;
            reach |= nb & !s;
            frontier |= nb & s;
        }
        reach.count_ones()
    };
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut best = vec![i64::MAX; 1 << n];
    let mut choice = vec![0usize; 1 << n];
    best[0] = -1;
    for s in 1..=full {
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let val = best[rest as usize].max(q(rest, v) as i64);
            if val < best[s as usize] {
                best[s as usize] = val;
                choice[s as usize] = v;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize];
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    decomposition_from_order(g, &order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_have_width_one() {
        let t = Graph::star(4);
        let h = td_heuristic(&t);
        assert!(h.validate(&t).valid);
        assert_eq!(h.width(), 1);
        let e = td_exact_small(&t).unwrap();
        assert!(e.validate(&t).valid);
        assert_eq!(e.width(), 1);
    }

    #[test]
    fn clique_width() {
        let k4 = Graph::complete(4);
        assert_eq!(td_exact_small(&k4).unwrap().width(), 3);
        assert_eq!(td_heuristic(&k4).width(), 3);
    }

    #[test]
    fn grid_3x3() {
        let g = Graph::grid(3, 3);
        let e = td_exact_small(&g).unwrap();
        assert!(e.validate(&g).valid);
        assert_eq!(e.width(), 3);
        assert!(td_heuristic(&g).width() >= e.width());
    }

    #[test]
    fn disconnected_and_empty() {
        let g = Graph::path(2).disjoint_union(&Graph::path(3));
        let h = td_heuristic(&g);
        assert!(h.validate(&g).valid);
        assert!(td_heuristic(&Graph::new(0)).is_empty());
        assert_eq!(td_exact_small(&Graph::new(3)).unwrap().width(), 0);
    }

    #[test]
    fn exact_size_cap() {
        assert!(matches!(
            td_exact_small(&Graph::path(11)),
            Err(Error::LimitExceeded(_))
        ));
    }
}
