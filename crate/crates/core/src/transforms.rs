//! Conversions between drawings, representations and minors.

use std::collections::BTreeSet;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::graph::{apply_minor, Graph, MinorRecipe};
use crate::grid::{Cell, Representation};
use crate::ortho::OrthoDrawing;

/// Turns a crossing-free orthogonal drawing of `g` into a representation of
/// size exactly `2ℓ + n - m`.
///
/// The drawing is scaled by two and every lattice point on a route becomes a
/// cell. The interior points of a route of (scaled) length `2ℓ_e` are split
/// between the endpoints: the first `ℓ_e` go to the smaller endpoint, the
/// remaining `ℓ_e - 1` to the larger.
pub fn drawing_to_rep(g: &Graph, d: &OrthoDrawing) -> Result<Representation> {
    if d.graph() != *g {
        return Err(Error::InvalidDrawing(
            "drawing does not match the graph".into(),
        ));
    }
    if d.crossings() > 0 {
        return Err(Error::InvalidDrawing(format!(
            "{} crossings; split into layers first",
            d.crossings()
        )));
    }
    let scale = |p: [i32; 3]| -> Cell { [2 * p[0], 2 * p[1], 2 * p[2]] };
    let mut blobs: Vec<BTreeSet<Cell>> = d
        .positions()
        .iter()
        .map(|&p| BTreeSet::from([scale(p)]))
        .collect();
    for (&(u, v), route) in d.routes() {
        let mut pts = Vec::new();
        for w in route.windows(2) {
            let (a, b) = (scale(w[0]), scale(w[1]));
            let axis = (0..3)
                .find(|&i| a[i] != b[i])
                .expect("non-degenerate segment");
            let step = (b[axis] - a[axis]).signum();
            let mut p = a;
            while p != b {
                p[axis] += step;
                pts.push(p);
            }
        }
        pts.pop();
        let half = pts.len().div_ceil(2);
        for (i, p) in pts.into_iter().enumerate() {
            blobs[if i < half { u } else { v }].insert(p);
        }
    }
    Representation::from_blobs(d.dim(), blobs)
}

fn check_contacts(r: &Representation, recipe: &MinorRecipe) -> Result<Graph> {
    let contacts = r.contact_graph()?;
    for &(u, v) in &recipe.deleted_edges {
        if u >= r.n() || v >= r.n() {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: r.n(),
            });
        }
        if !contacts.has_edge(u, v) {
            return Err(Error::InvalidRecipe(format!(
                "blobs {u} and {v} do not touch"
            )));
        }
    }
    Ok(contacts)
}

/// Representation of the minor described by `recipe`.
///
/// With edge deletions the representation is first scaled by three and the
/// smaller endpoint of each deleted edge gives up every cell touching the
/// other blob. Isolated vertices are then dropped and contracted blobs
/// merged. Without deletions no scaling happens, so the size never grows.
pub fn take_minor(r: &Representation, recipe: &MinorRecipe) -> Result<Representation> {
    let contacts = check_contacts(r, recipe)?;
    // validates the recipe (order, isolation, contracted edges)
    let target = apply_minor(&contacts, recipe)?;
    let n = r.n();
    let mut blobs: Vec<BTreeSet<Cell>> = if recipe.deleted_edges.is_empty() {
        r.blobs().to_vec()
    } else {
        r.scale(3)?.into_blobs()
    };
    let dim = r.dim();
    if !recipe.deleted_edges.is_empty() {
        let deleted: FxHashSet<(usize, usize)> =
            recipe.deleted_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let owner: FxHashMap<Cell, usize> = blobs
            .iter()
            .enumerate()
            .flat_map(|(v, b)| b.iter().map(move |&c| (c, v)))
            .collect();
        for (v, blob) in blobs.iter_mut().enumerate() {
            blob.retain(|&c| {
                !dim.neighbors(c).any(|q| {
                    owner.get(&q).is_some_and(|&w| w > v && deleted.contains(&(v, w)))
                })
            });
        }
    }
    let map = recipe.vertex_map(n)?;
    let mut out: Vec<BTreeSet<Cell>> = vec![BTreeSet::new(); target.n()];
    for v in 0..n {
        if let Some(k) = map[v] {
            out[k].append(&mut blobs[v]);
        }
    }
    let rep = Representation::from_blobs(dim, out)?;
    let report = rep.verify(&target)?;
    if !report.valid {
        return Err(Error::Internal(format!(
            "minor representation is invalid: {report:?}"
        )));
    }
    Ok(rep)
}

/// Recipe deleting every contact of `r` that is not an edge of `g`.
pub fn contact_diff(r: &Representation, g: &Graph) -> Result<MinorRecipe> {
    if r.n() != g.n() {
        return Err(Error::VertexSetMismatch {
            rep: r.n(),
            graph: g.n(),
        });
    }
    let contacts = r.contact_graph()?;
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| !contacts.has_edge(u, v)) {
        return Err(Error::MissingEdge(u, v));
    }
    let deleted_edges = contacts
        .edges()
        .into_iter()
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    Ok(MinorRecipe {
        deleted_edges,
        ..Default::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Dim;

    fn rep2(blobs: &[&[(i32, i32)]]) -> Representation {
        Representation::from_blobs(
            Dim::Two,
            blobs
                .iter()
                .map(|b| b.iter().map(|&(x, y)| [x, y, 0]).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn isolated_vertex_one_cell() {
        let d = OrthoDrawing::new(Dim::Two, vec![[0; 3]], Vec::new(), false).unwrap();
        assert_eq!(drawing_to_rep(&Graph::new(1), &d).unwrap().size(), 1);
    }

    #[test]
    fn unit_edge_three_pixels() {
        let d = OrthoDrawing::new(
            Dim::Two,
            vec![[0; 3], [1, 0, 0]],
            vec![((0, 1), vec![[0; 3], [1, 0, 0]])],
            false,
        )
        .unwrap();
        let g = Graph::complete(2);
        let r = drawing_to_rep(&g, &d).unwrap();
        assert_eq!(r.size(), 3);
        assert!(r.verify(&g).unwrap().valid);
    }

    #[test]
    fn l_path_seven_pixels() {
        let d = OrthoDrawing::new(
            Dim::Two,
            vec![[0, 0, 0], [2, 0, 0], [2, 1, 0]],
            vec![
                ((0, 1), vec![[0, 0, 0], [2, 0, 0]]),
                ((1, 2), vec![[2, 0, 0], [2, 1, 0]]),
            ],
            false,
        )
        .unwrap();
        let g = Graph::path(3);
        let r = drawing_to_rep(&g, &d).unwrap();
        assert_eq!(r.size(), 2 * 3 + 3 - 2);
        assert!(r.verify(&g).unwrap().valid);
    }

    #[test]
    fn rejects_crossings() {
        let d = OrthoDrawing::new(
            Dim::Two,
            vec![[0, 1, 0], [2, 1, 0], [1, 0, 0], [1, 2, 0]],
            vec![
                ((0, 1), vec![[0, 1, 0], [2, 1, 0]]),
                ((2, 3), vec![[1, 0, 0], [1, 2, 0]]),
            ],
            true,
        )
        .unwrap();
        assert!(drawing_to_rep(&d.graph(), &d).is_err());
    }

    #[test]
    fn empty_recipe_identity() {
        let r = rep2(&[&[(0, 0)], &[(1, 0)]]);
        assert_eq!(take_minor(&r, &MinorRecipe::default()).unwrap(), r);
    }

    #[test]
    fn delete_edge_of_k2() {
        let r = rep2(&[&[(0, 0)], &[(1, 0)]]);
        let rec = MinorRecipe {
            deleted_edges: vec![(0, 1)],
            ..Default::default()
        };
        let m = take_minor(&r, &rec).unwrap();
        assert!(m.size() <= 18);
        assert_eq!(m.size(), 15);
        assert_eq!(m.contact_graph().unwrap(), Graph::new(2));
    }

    #[test]
    fn contract_p3() {
        let r = rep2(&[&[(0, 0)], &[(1, 0)], &[(2, 0)]]);
        let mut rec = MinorRecipe::default();
        rec.contract(0, 1);
        let m = take_minor(&r, &rec).unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.size(), 3);
        assert_eq!(m.contact_graph().unwrap(), Graph::complete(2));
    }

    #[test]
    fn delete_then_drop_isolated() {
        let r = rep2(&[&[(0, 0)], &[(1, 0)], &[(1, 1)]]);
        let rec = MinorRecipe {
            deleted_edges: vec![(0, 1)],
            deleted_vertices: vec![0],
            contractions: Vec::new(),
        };
        let m = take_minor(&r, &rec).unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.contact_graph().unwrap(), Graph::complete(2));
    }

    #[test]
    fn contact_diff_examples() {
        let l = rep2(&[&[(0, 0)], &[(1, 0)], &[(0, 1)]]);
        assert_eq!(
            l.contact_graph().unwrap(),
            Graph::path(3).induced(&[1, 0, 2])
        );
        let k3 = rep2(&[&[(0, 0), (0, 1)], &[(1, 0)], &[(1, 1)]]);
        assert!(contact_diff(&k3, &Graph::complete(3)).unwrap().is_empty());
        let rec = contact_diff(&k3, &Graph::path(3)).unwrap();
        assert_eq!(rec.deleted_edges, vec![(0, 2)]);
        let m = take_minor(&k3, &rec).unwrap();
        assert!(m.verify(&Graph::path(3)).unwrap().valid);
        assert_eq!(
            contact_diff(&l, &Graph::complete(3)),
            Err(Error::MissingEdge(1, 2))
        );
    }
}
