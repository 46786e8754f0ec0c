//! SVG and Wavefront OBJ export, one square or cube per cell.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::grid::{Dim, Representation};

/// Hue for vertex `v`, spread by the golden angle.
fn hue(v: usize) -> f64 {
    (v as f64 * 137.507_764) % 360.0
}

fn rgb(v: usize) -> (f64, f64, f64) {
    // HSL with saturation 0.65 and lightness 0.55
    let (s, l) = (0.65, 0.55);
    let c = (1.0 - (2.0 * l - 1.0_f64).abs()) * s;
    let h = hue(v) / 60.0;
    let x = c * (1.0 - (h % 2.0 - 1.0).abs());
    let (r, g, b) = match h as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    (r + m, g + m, b + m)
}

fn check_dim(r: &Representation, want: Dim) -> Result<()> {
    if r.dim() != want {
        return Err(Error::DimensionMismatch {
            expected: want.as_u8(),
            found: r.dim().as_u8(),
        });
    }
    Ok(())
}

/// SVG document with one unit square per pixel, filled by vertex colour.
/// The y axis points up as in the grid.
pub fn export_svg(r: &Representation) -> Result<String> {
    check_dim(r, Dim::Two)?;
    let (lo, hi) = r.bounding_box().unwrap_or(([0; 3], [-1, -1, 0]));
    let (w, h) = (hi[0] - lo[0] + 1, hi[1] - lo[1] + 1);
    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" width=\"{}\" height=\"{}\">",
        16 * w,
        16 * h
    )
    .expect("writing to a string");
    for (v, blob) in r.blobs().iter().enumerate() {
        if blob.is_empty() {
            continue;
        }
        let (cr, cg, cb) = rgb(v);
        writeln!(
            s,
            "<g id=\"v{v}\" fill=\"#{:02x}{:02x}{:02x}\" stroke=\"black\" stroke-width=\"0.05\">",
            (cr * 255.0).round() as u8,
            (cg * 255.0).round() as u8,
            (cb * 255.0).round() as u8
        )
        .expect("writing to a string");
        for c in blob {
            let x = c[0] - lo[0];
            let y = hi[1] - c[1];
            writeln!(s, "<rect x=\"{x}\" y=\"{y}\" width=\"1\" height=\"1\"/>")
                .expect("writing to a string");
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// OBJ mesh with one cube (8 vertices, 6 quads) per voxel. Cubes of vertex
/// `v` form object `v{v}` using material `m{v}` from [`export_mtl`].
pub fn export_obj(r: &Representation) -> Result<String> {
    check_dim(r, Dim::Three)?;
    let mut s = String::from("mtllib blobs.mtl\n");
    let mut base = 1usize;
    const FACES: [[usize; 4]; 6] = [
        [0, 2, 3, 1],
        [4, 5, 7, 6],
        [0, 1, 5, 4],
        [2, 6, 7, 3],
        [0, 4, 6, 2],
        [1, 3, 7, 5],
    ];
    for (v, blob) in r.blobs().iter().enumerate() {
        if blob.is_empty() {
            continue;
        }
        writeln!(s, "o v{v}\nusemtl m{v}").expect("writing to a string");
        for c in blob {
            for k in 0..8 {
                let (dx, dy, dz) = (k & 1, k >> 1 & 1, k >> 2 & 1);
                writeln!(s, "v {} {} {}", c[0] + dx, c[1] + dy, c[2] + dz)
                    .expect("writing to a string");
            }
            for f in FACES {
                writeln!(
                    s,
                    "f {} {} {} {}",
                    base + f[0],
                    base + f[1],
                    base + f[2],
                    base + f[3]
                )
                .expect("writing to a string");
            }
            base += 8;
        }
    }
    Ok(s)
}

/// Material library for [`export_obj`].
pub fn export_mtl(r: &Representation) -> String {
    let mut s = String::new();
    for v in 0..r.n() {
        let (cr, cg, cb) = rgb(v);
        writeln!(s, "newmtl m{v}\nKd {cr:.4} {cg:.4} {cb:.4}").expect("writing to a string");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_universal;
    use crate::graph::Graph;
    use std::collections::BTreeSet;

    #[test]
    fn empty_svg() {
        let s = export_svg(&Representation::new(Dim::Two, 0)).unwrap();
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        assert_eq!(s.matches("<rect").count(), 0);
    }

    #[test]
    fn two_pixels_two_colours() {
        let r = Representation::from_blobs(
            Dim::Two,
            vec![BTreeSet::from([[0, 0, 0]]), BTreeSet::from([[1, 0, 0]])],
        )
        .unwrap();
        let s = export_svg(&r).unwrap();
        assert_eq!(s.matches("<rect").count(), 2);
        let fills: BTreeSet<&str> = s
            .match_indices("fill=\"")
            .map(|(i, _)| &s[i + 6..i + 13])
            .collect();
        assert_eq!(fills.len(), 2);
        assert!(export_obj(&r).is_err());
    }

    #[test]
    fn universal_k3_mesh() {
        let r = build_universal(&Graph::complete(3)).unwrap();
        let obj = export_obj(&r).unwrap();
        assert_eq!(
            obj.lines().filter(|l| l.starts_with("f ")).count(),
            6 * r.size()
        );
        assert_eq!(obj.lines().filter(|l| l.starts_with("usemtl")).count(), 3);
        assert_eq!(export_mtl(&r).matches("newmtl").count(), 3);
        assert!(export_svg(&r).is_err());
    }
}
