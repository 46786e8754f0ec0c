//! End-to-end builders of representations.

use std::collections::BTreeSet;

use log::info;

use crate::embedding::{reduce_degree_cycle, PlaneEmbedding, Rotation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::grid::{Cell, Dim, Representation};
use crate::ortho::{
    layout_deg4_any, layout_deg4_planar, layout_tree, split_layers, subdivide_bends, OrthoDrawing,
};
use crate::td::{bag_coloring, star_map, NiceTreeDecomposition};
use crate::transforms::{contact_diff, drawing_to_rep, take_minor};

fn check_valid(rep: &Representation, g: &Graph, stage: &str) -> Result<()> {
    let report = rep.verify(g)?;
    if report.valid {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "{stage} produced an invalid representation: {report:?}"
        )))
    }
}

/// Voxel representation of size exactly `n(4n - 1) + m` for any graph.
///
/// Vertex `i` (counting from 1) owns a bar along y at height 0 in column
/// `2i`, a bar along x at height 2 in row `2i`, and the voxel between them.
/// An edge `ij` with `i < j` adds the voxel `(2i, 2j, 1)` to `i`, which
/// touches the upper bar of `j`.
pub fn build_universal(g: &Graph) -> Result<Representation> {
    let n = g.n() as i32;
    let mut blobs = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let i = v as i32 + 1;
        let mut b = BTreeSet::new();
        for t in 2..=2 * n {
            b.insert([2 * i, t, 0]);
            b.insert([t, 2 * i, 2]);
        }
        b.insert([2 * i, 2 * i, 1]);
        for w in g.neighbors(v).filter(|&w| w > v) {
            b.insert([2 * i, 2 * (w as i32 + 1), 1]);
        }
        blobs.push(b);
    }
    let rep = Representation::from_blobs(Dim::Three, blobs)?;
    check_valid(&rep, g, "universal construction")?;
    Ok(rep)
}

/// Intermediate results of [`build_treewidth`].
#[derive(Debug, Clone)]
pub struct TreewidthBuild {
    /// Layered representation before unwanted contacts are removed.
    pub intermediate: Representation,
    pub layers: usize,
    pub unwanted_contacts: usize,
    pub rep: Representation,
}

/// Voxel representation from a nice tree decomposition.
///
/// The decomposition tree is drawn as a pixel representation and scaled by
/// two. Every vertex occupies the blobs of its bag nodes in the layer given
/// by a bag colouring. At each node, the centre of its edge star takes over
/// the whole column above the node's anchor cell, touching every bag mate.
/// Contacts that are not edges are finally removed by taking a minor.
pub fn build_treewidth(g: &Graph, t: &NiceTreeDecomposition) -> Result<Representation> {
    Ok(build_treewidth_stages(g, t)?.rep)
}

pub fn build_treewidth_stages(g: &Graph, t: &NiceTreeDecomposition) -> Result<TreewidthBuild> {
    let report = t.as_td().validate(g);
    if !report.valid {
        return Err(Error::InvalidDecomposition(format!("{report:?}")));
    }
    t.check_shape()?;
    let n = g.n();
    if t.is_empty() {
        let rep = Representation::new(Dim::Three, n);
        return Ok(TreewidthBuild {
            intermediate: rep.clone(),
            layers: 0,
            unwanted_contacts: 0,
            rep,
        });
    }
    let tree = t.as_td().tree;
    let drawing = layout_tree(&tree)?;
    let skeleton = drawing_to_rep(&tree, &drawing)?.scale(2)?;
    let coloring = bag_coloring(t, n);
    let k = coloring.k;
    let stars = star_map(t, g)?;

    let mut blobs: Vec<BTreeSet<Cell>> = vec![BTreeSet::new(); n];
    for (mu, bag) in t.bags.iter().enumerate() {
        for &v in bag {
            let z = coloring.color[v] as i32;
            blobs[v].extend(skeleton.blob(mu).iter().map(|c| [c[0], c[1], z]));
        }
    }
    for (mu, center) in stars.center.iter().enumerate() {
        let Some(u) = *center else { continue };
        let anchor = *skeleton
            .blob(mu)
            .iter()
            .next()
            .expect("node blob is non-empty");
        for z in 1..=k as i32 {
            let cell = [anchor[0], anchor[1], z];
            for &v in &t.bags[mu] {
                blobs[v].remove(&cell);
            }
            blobs[u].insert(cell);
        }
    }
    let intermediate = Representation::from_blobs(Dim::Three, blobs)?;
    let recipe = contact_diff(&intermediate, g)?;
    let unwanted = recipe.deleted_edges.len();
    let rep = take_minor(&intermediate, &recipe)?;
    check_valid(&rep, g, "treewidth construction")?;
    info!(
        "treewidth build: {} layers, {} unwanted contacts, size {} -> {}",
        k,
        unwanted,
        intermediate.size(),
        rep.size()
    );
    Ok(TreewidthBuild {
        intermediate,
        layers: k,
        unwanted_contacts: unwanted,
        rep,
    })
}

/// Pixel representation of a plane graph: high-degree vertices become
/// paths, the result is drawn orthogonally, turned into pixels, and the
/// paths are contracted back.
pub fn build_2d(e: &PlaneEmbedding) -> Result<Representation> {
    let (reduced, recipe) = e.reduce_degree_path()?;
    let drawing = layout_deg4_planar(&reduced)?;
    let rep = drawing_to_rep(reduced.graph(), &drawing)?;
    let rep = take_minor(&rep, &recipe)?;
    check_valid(&rep, e.graph(), "planar construction")?;
    if rep.size() > 0 {
        info!(
            "planar build: size {}, peeling depth {}",
            rep.size(),
            rep.peeling_depth()?
        );
    }
    Ok(rep)
}

/// Intermediate results of [`build_genus`].
#[derive(Debug, Clone)]
pub struct GenusBuild {
    /// Crossings of the planar orthogonal drawing.
    pub crossings: usize,
    /// Crossing-free two-layer drawing of the subdivided graph.
    pub layered: OrthoDrawing,
    pub rep: Representation,
}

/// Voxel representation of any graph with a rotation system: high-degree
/// vertices become cycles, the drawing's bends become vertices, vertices
/// are split into a horizontal and a vertical layer so that crossings
/// disappear, and everything is contracted back.
pub fn build_genus(g: &Graph, rotation: &Rotation) -> Result<Representation> {
    Ok(build_genus_stages(g, rotation)?.rep)
}

pub fn build_genus_stages(g: &Graph, rotation: &Rotation) -> Result<GenusBuild> {
    let (h, _, cycle_recipe) = reduce_degree_cycle(g, rotation)?;
    let drawing = layout_deg4_any(&h)?;
    let sub = subdivide_bends(&drawing)?;
    let (lifted, layered, layer_recipe) = split_layers(&sub.graph, &sub.drawing, h.n())?;
    let rep = drawing_to_rep(&lifted, &layered)?;
    let rep = take_minor(&rep, &layer_recipe)?;
    let rep = take_minor(&rep, &cycle_recipe)?;
    check_valid(&rep, g, "layered construction")?;
    info!(
        "layered build: {} crossings resolved, size {}",
        drawing.crossings(),
        rep.size()
    );
    Ok(GenusBuild {
        crossings: drawing.crossings(),
        layered,
        rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::default_rotation;
    use crate::td::{td_exact_small, to_nice, TreeDecomposition};

    #[test]
    fn universal_sizes() {
        assert_eq!(build_universal(&Graph::new(1)).unwrap().size(), 3);
        assert_eq!(build_universal(&Graph::complete(2)).unwrap().size(), 15);
        let r = build_universal(&Graph::complete(10)).unwrap();
        assert_eq!(r.size(), 435);
        assert_eq!(r.contact_graph().unwrap(), Graph::complete(10));
    }

    fn nice_exact(g: &Graph) -> NiceTreeDecomposition {
        to_nice(&td_exact_small(g).unwrap(), g).unwrap()
    }

    #[test]
    fn treewidth_k2_single_bag() {
        let g = Graph::complete(2);
        let td = TreeDecomposition::new(vec![BTreeSet::from([0, 1])], Graph::new(1)).unwrap();
        let rep = build_treewidth(&g, &to_nice(&td, &g).unwrap()).unwrap();
        assert!(rep.verify(&g).unwrap().valid);
    }

    #[test]
    fn treewidth_p3_and_k4() {
        let p3 = Graph::path(3);
        let b = build_treewidth_stages(&p3, &nice_exact(&p3)).unwrap();
        assert_eq!(b.layers, 2);
        assert!(b.rep.verify(&p3).unwrap().valid);

        let k4 = Graph::complete(4);
        let b = build_treewidth_stages(&k4, &nice_exact(&k4)).unwrap();
        assert_eq!(b.layers, 4);
        assert!(b.rep.size() <= 27 * b.intermediate.size());
        assert!(b.rep.verify(&k4).unwrap().valid);
    }

    #[test]
    fn planar_builds() {
        let t =
            PlaneEmbedding::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]], vec![(0, 2)]).unwrap();
        let r = build_2d(&t).unwrap();
        assert!(r.size() >= 4);
        assert!(r.verify(&Graph::complete(3)).unwrap().valid);

        let s = Graph::star(5);
        let e = PlaneEmbedding::new(default_rotation(&s), vec![(0, 1)]).unwrap();
        assert!(build_2d(&e).unwrap().verify(&s).unwrap().valid);
    }

    #[test]
    fn layered_builds() {
        for g in [
            Graph::complete(4),
            Graph::complete(5),
            Graph::petersen(),
            Graph::complete(6),
        ] {
            let r = build_genus(&g, &default_rotation(&g)).unwrap();
            assert!(r.verify(&g).unwrap().valid);
            assert_eq!(r.dim(), Dim::Three);
        }
    }
}
