//! Line-oriented text formats. Blank lines are ignored and `#` starts a
//! comment. Every format begins with a header line.
//!
//! | kind           | header         | body                                   |
//! |----------------|----------------|----------------------------------------|
//! | representation | `dim n`        | `x y v` or `x y z v` per cell          |
//! | graph          | `n m`          | `u v` per edge                         |
//! | embedding      | `n`            | `v: w1 w2 ...` (ccw), `outer u v`      |
//! | rotation       | `n`            | `v: w1 w2 ...` (ccw)                   |
//! | angled graph   | `n m`          | `u v pu pv` with ports `N E S W`       |
//! | drawing        | `dim n c`      | `v x y [z]`, `e u v : x y [z] ; ...`   |
//! | decomposition  | `k`            | `node i: v1 v2 ...`, `tedge i j`       |
//!
//! In the drawing header `c` is 1 if crossings are allowed.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::embedding::{PlaneEmbedding, Rotation};
use crate::error::{Error, Result};
use crate::gadgets::{AngledGraph, Port};
use crate::graph::Graph;
use crate::grid::{Dim, Representation};
use crate::ortho::{OrthoDrawing, Point};
use crate::td::TreeDecomposition;

struct Line<'a> {
    no: usize,
    tokens: Vec<&'a str>,
}

impl Line<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.no,
            msg: msg.into(),
        })
    }

    fn num<T: std::str::FromStr>(&self, i: usize) -> Result<T> {
        match self.tokens.get(i) {
            Some(t) => t
                .parse()
                .or_else(|_| self.err(format!("expected a number, found `{t}`"))),
            None => self.err(format!("expected at least {} fields", i + 1)),
        }
    }

    fn expect_len(&self, k: usize) -> Result<()> {
        if self.tokens.len() != k {
            return self.err(format!("expected {k} fields, found {}", self.tokens.len()));
        }
        Ok(())
    }

    /// Attaches this line number to errors raised while using its data.
    fn at<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                line: self.no,
                msg: other.to_string(),
            },
        })
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some(Line { no: i + 1, tokens })
    })
}

fn header<'a>(it: &mut impl Iterator<Item = Line<'a>>, what: &str) -> Result<Line<'a>> {
    it.next().ok_or_else(|| Error::Parse {
        line: 0,
        msg: format!("missing {what} header"),
    })
}

fn dim_of(l: &Line, i: usize) -> Result<Dim> {
    let d: u8 = l.num(i)?;
    l.at(Dim::from_u8(d))
}

pub fn write_representation(r: &Representation) -> String {
    let mut s = format!("{} {}\n", r.dim().as_u8(), r.n());
    for (v, blob) in r.blobs().iter().enumerate() {
        for c in blob {
            match r.dim() {
                Dim::Two => writeln!(s, "{} {} {v}", c[0], c[1]),
                Dim::Three => writeln!(s, "{} {} {} {v}", c[0], c[1], c[2]),
            }
            .expect("writing to a string");
        }
    }
    s
}

pub fn parse_representation(text: &str) -> Result<Representation> {
    let mut it = lines(text);
    let h = header(&mut it, "representation")?;
    h.expect_len(2)?;
    let dim = dim_of(&h, 0)?;
    let n: usize = h.num(1)?;
    let mut r = Representation::new(dim, n);
    let k = dim.axes();
    let mut taken = std::collections::HashSet::new();
    for l in it {
        l.expect_len(k + 1)?;
        let mut c = [0i32; 3];
        for (a, x) in c.iter_mut().enumerate().take(k) {
            *x = l.num(a)?;
        }
        let v: usize = l.num(k)?;
        if v >= n {
            return l.err(format!("vertex {v} out of range (n = {n})"));
        }
        if !taken.insert(c) {
            return l.err(format!("cell {c:?} assigned twice"));
        }
        r.insert(v, c);
    }
    Ok(r)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").expect("writing to a string");
    }
    s
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let h = header(&mut it, "graph")?;
    h.expect_len(2)?;
    let n: usize = h.num(0)?;
    let m: usize = h.num(1)?;
    let mut g = Graph::new(n);
    let mut count = 0;
    for l in it {
        l.expect_len(2)?;
        let (u, v): (usize, usize) = (l.num(0)?, l.num(1)?);
        if !l.at(g.try_add_edge(u, v))? {
            return l.err(format!("duplicate edge {u}-{v}"));
        }
        count += 1;
    }
    if count != m {
        return h.err(format!("header announces {m} edges, found {count}"));
    }
    Ok(g)
}

pub fn write_embedding(e: &PlaneEmbedding) -> String {
    let mut s = format!("{}\n", e.n());
    for (v, rot) in e.rotation().iter().enumerate() {
        let nb: Vec<String> = rot.iter().map(usize::to_string).collect();
        writeln!(s, "{v}: {}", nb.join(" ")).expect("writing to a string");
    }
    for &(u, v) in e.outer_darts() {
        writeln!(s, "outer {u} {v}").expect("writing to a string");
    }
    s
}

type RotationBody = (Rotation, Vec<(usize, usize)>, usize);

fn parse_rotation_body(text: &str, what: &str) -> Result<RotationBody> {
    let mut it = lines(text);
    let h = header(&mut it, what)?;
    h.expect_len(1)?;
    let n: usize = h.num(0)?;
    let mut rotation = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let mut outer = Vec::new();
    let mut last = h.no;
    for l in it {
        last = l.no;
        if l.tokens[0] == "outer" {
            l.expect_len(3)?;
            outer.push((l.num(1)?, l.num(2)?));
            continue;
        }
        let Some(head) = l.tokens[0].strip_suffix(':') else {
            return l.err("expected `v: neighbours` or `outer u v`");
        };
        let v: usize = head
            .parse()
            .or_else(|_| l.err(format!("bad vertex `{head}`")))?;
        if v >= n || seen[v] {
            return l.err(format!("vertex {v} out of range or listed twice"));
        }
        seen[v] = true;
        rotation[v] = (1..l.tokens.len())
            .map(|i| l.num(i))
            .collect::<Result<_>>()?;
        if let Some(&w) = rotation[v].iter().find(|&&w| w >= n) {
            return l.err(format!("neighbour {w} out of range"));
        }
    }
    Ok((rotation, outer, last))
}

pub fn parse_embedding(text: &str) -> Result<PlaneEmbedding> {
    let (rotation, outer, last) = parse_rotation_body(text, "embedding")?;
    PlaneEmbedding::new(rotation, outer).map_err(|e| Error::Parse {
        line: last,
        msg: e.to_string(),
    })
}

/// Rotation system of any graph, in the embedding format without `outer`
/// lines (they are accepted and ignored).
pub fn parse_rotation(text: &str) -> Result<Rotation> {
    Ok(parse_rotation_body(text, "rotation")?.0)
}

pub fn write_rotation(rotation: &Rotation) -> String {
    let mut s = format!("{}\n", rotation.len());
    for (v, rot) in rotation.iter().enumerate() {
        let nb: Vec<String> = rot.iter().map(usize::to_string).collect();
        writeln!(s, "{v}: {}", nb.join(" ")).expect("writing to a string");
    }
    s
}

pub fn write_angled(a: &AngledGraph) -> String {
    let edges = a.edges();
    let mut s = format!("{} {}\n", a.n(), edges.len());
    for (u, v, pu, pv) in edges {
        writeln!(s, "{u} {v} {} {}", pu.as_str(), pv.as_str()).expect("writing to a string");
    }
    s
}

pub fn parse_angled(text: &str) -> Result<AngledGraph> {
    let mut it = lines(text);
    let h = header(&mut it, "angled graph")?;
    h.expect_len(2)?;
    let n: usize = h.num(0)?;
    let m: usize = h.num(1)?;
    let mut edges = Vec::new();
    let mut last = h.no;
    for l in it {
        l.expect_len(4)?;
        last = l.no;
        let port = |i: usize| {
            Port::parse(l.tokens[i]).ok_or_else(|| Error::Parse {
                line: l.no,
                msg: format!("bad port `{}`", l.tokens[i]),
            })
        };
        edges.push((l.num(0)?, l.num(1)?, port(2)?, port(3)?));
    }
    if edges.len() != m {
        return h.err(format!("header announces {m} edges, found {}", edges.len()));
    }
    AngledGraph::new(n, &edges).map_err(|e| Error::Parse {
        line: last,
        msg: e.to_string(),
    })
}

fn fmt_point(p: &Point, dim: Dim) -> String {
    match dim {
        Dim::Two => format!("{} {}", p[0], p[1]),
        Dim::Three => format!("{} {} {}", p[0], p[1], p[2]),
    }
}

pub fn write_drawing(d: &OrthoDrawing) -> String {
    let dim = d.dim();
    let mut s = format!(
        "{} {} {}\n",
        dim.as_u8(),
        d.n(),
        u8::from(d.crossings_allowed())
    );
    for (v, p) in d.positions().iter().enumerate() {
        writeln!(s, "{v} {}", fmt_point(p, dim)).expect("writing to a string");
    }
    for (&(u, v), route) in d.routes() {
        let pts: Vec<String> = route.iter().map(|p| fmt_point(p, dim)).collect();
        writeln!(s, "e {u} {v} : {}", pts.join(" ; ")).expect("writing to a string");
    }
    s
}

pub fn parse_drawing(text: &str) -> Result<OrthoDrawing> {
    let mut it = lines(text);
    let h = header(&mut it, "drawing")?;
    h.expect_len(3)?;
    let dim = dim_of(&h, 0)?;
    let n: usize = h.num(1)?;
    let allow: u8 = h.num(2)?;
    let k = dim.axes();
    let mut pos: Vec<Option<Point>> = vec![None; n];
    let mut routes = Vec::new();
    let mut last = h.no;
    for l in it {
        last = l.no;
        if l.tokens[0] == "e" {
            if l.tokens.len() < 4 || l.tokens[3] != ":" {
                return l.err("expected `e u v : x y ; ...`");
            }
            let (u, v): (usize, usize) = (l.num(1)?, l.num(2)?);
            let mut route = Vec::new();
            for chunk in l.tokens[4..].split(|t| *t == ";") {
                if chunk.len() != k {
                    return l.err(format!("route point needs {k} coordinates"));
                }
                let mut p = [0i32; 3];
                for (a, t) in chunk.iter().enumerate() {
                    p[a] = t
                        .parse()
                        .or_else(|_| l.err(format!("expected a number, found `{t}`")))?;
                }
                route.push(p);
            }
            routes.push(((u, v), route));
        } else {
            l.expect_len(k + 1)?;
            let v: usize = l.num(0)?;
            if v >= n || pos[v].is_some() {
                return l.err(format!("vertex {v} out of range or placed twice"));
            }
            let mut p = [0i32; 3];
            for (a, x) in p.iter_mut().enumerate().take(k) {
                *x = l.num(a + 1)?;
            }
            pos[v] = Some(p);
        }
    }
    let positions = pos
        .into_iter()
        .enumerate()
        .map(|(v, p)| {
            p.ok_or_else(|| Error::Parse {
                line: last,
                msg: format!("vertex {v} has no position"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    OrthoDrawing::new(dim, positions, routes, allow != 0).map_err(|e| Error::Parse {
        line: last,
        msg: e.to_string(),
    })
}

pub fn write_decomposition(t: &TreeDecomposition) -> String {
    let mut s = format!("{}\n", t.len());
    for (i, bag) in t.bags.iter().enumerate() {
        let vs: Vec<String> = bag.iter().map(usize::to_string).collect();
        writeln!(s, "node {i}: {}", vs.join(" ")).expect("writing to a string");
    }
    for (i, j) in t.tree.edges() {
        writeln!(s, "tedge {i} {j}").expect("writing to a string");
    }
    s
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut it = lines(text);
    let h = header(&mut it, "decomposition")?;
    h.expect_len(1)?;
    let k: usize = h.num(0)?;
    let mut bags = vec![BTreeSet::new(); k];
    let mut tree = Graph::new(k);
    for l in it {
        match l.tokens[0] {
            "node" => {
                let Some(head) = l.tokens.get(1).and_then(|t| t.strip_suffix(':')) else {
                    return l.err("expected `node i: v1 v2 ...`");
                };
                let i: usize = head
                    .parse()
                    .or_else(|_| l.err(format!("bad node `{head}`")))?;
                if i >= k {
                    return l.err(format!("node {i} out of range (k = {k})"));
                }
                bags[i] = (2..l.tokens.len())
                    .map(|j| l.num(j))
                    .collect::<Result<_>>()?;
            }
            "tedge" => {
                l.expect_len(3)?;
                let (i, j): (usize, usize) = (l.num(1)?, l.num(2)?);
                l.at(tree.try_add_edge(i, j))?;
            }
            other => return l.err(format!("unknown record `{other}`")),
        }
    }
    TreeDecomposition::new(bags, tree)
}
