use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blobrep::constructions::{build_2d, build_genus, build_treewidth_stages, build_universal};
use blobrep::export::{export_mtl, export_obj, export_svg};
use blobrep::gadgets::{cage, clique_union, nested_triangles, wheel_gadget, CageParams};
use blobrep::io;
use blobrep::oracle::{default_budget, min_rep_search, Outcome, SearchBounds};
use blobrep::td::{td_exact_small, td_heuristic, to_nice};
use blobrep::{Dim, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Pixel and voxel contact representations of graphs.
///
/// File arguments default to standard input; `-` also means standard input.
/// Results go to standard output unless `--output` is given.
#[derive(Parser)]
#[command(name = "blobrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Pixel representation of a plane embedding.
    Build2d { embedding: Option<PathBuf> },
    /// Voxel representation of any graph in the n x n x n style layout.
    #[command(name = "build3d-universal")]
    Build3dUniversal { graph: Option<PathBuf> },
    /// Voxel representation from a tree decomposition.
    #[command(name = "build3d-treewidth")]
    Build3dTreewidth(TreewidthArgs),
    /// Voxel representation from a rotation system.
    #[command(name = "build3d-genus")]
    Build3dGenus { graph: PathBuf, rotation: PathBuf },
    /// Check a representation against a graph; exit status 1 if invalid.
    Verify { rep: PathBuf, graph: PathBuf },
    /// Smallest representation inside a bounded box.
    Minimize(MinimizeArgs),
    /// Emit a gadget graph, embedding or representation.
    Gadget {
        #[command(subcommand)]
        kind: Gadget,
    },
    /// Summary numbers of a representation.
    Stats { rep: Option<PathBuf> },
    /// Render a representation.
    Export {
        format: Format,
        rep: Option<PathBuf>,
        /// With `obj`, also write the material library to this file.
        #[arg(long)]
        mtl: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TreewidthArgs {
    graph: Option<PathBuf>,
    /// Use the decomposition in this file.
    #[arg(long, group = "method")]
    td: Option<PathBuf>,
    /// Exact decomposition (at most 10 vertices).
    #[arg(long, group = "method")]
    exact: bool,
    /// Min-fill decomposition (default).
    #[arg(long, group = "method")]
    heuristic: bool,
}

#[derive(Args)]
struct MinimizeArgs {
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    dim: u8,
    /// Side length of the square or cube searched.
    #[arg(long, default_value_t = 4)]
    grid: usize,
    /// Largest blob size tried.
    #[arg(long, default_value_t = 4)]
    cap: usize,
    /// Node budget; defaults to BLOBREP_NODE_BUDGET or a built-in value.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Gadget {
    /// Wheel gadget graph of an angled graph file.
    Wheel { angled: Option<PathBuf> },
    /// Planar cage representation.
    Cage2d { t: usize, w: usize, h: usize },
    /// Voxel cage representation.
    Cage3d { t: usize, w: usize, h: usize, d: usize },
    /// Embedding of k triangles around a common centre.
    NestedTriangles {
        k: usize,
        /// Nest the triangles one inside the other instead.
        #[arg(long)]
        nested: bool,
    },
    /// Disjoint union of c cliques on q vertices.
    CliqueUnion { q: usize, c: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Obj,
    Txt,
}

enum Failure {
    /// Bad input or arguments (status 2).
    Usage(String),
    /// The input was read but does not satisfy the request (status 1).
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read(path: Option<&Path>) -> Res<String> {
    let mut s = String::new();
    match path {
        None => std::io::stdin().read_to_string(&mut s).map(|_| s),
        Some(p) if p == Path::new("-") => std::io::stdin().read_to_string(&mut s).map(|_| s),
        Some(p) => fs::read_to_string(p),
    }
    .map_err(|e| {
        let name = path.map_or("<stdin>".into(), |p| p.display().to_string());
        Failure::Usage(format!("{name}: {e}"))
    })
}

/// Parses a file, naming it in the error message.
fn load<T>(path: Option<&Path>, parse: fn(&str) -> blobrep::Result<T>) -> Res<T> {
    let text = read(path)?;
    parse(&text).map_err(|e| {
        let name = path.map_or("<stdin>".into(), |p| p.display().to_string());
        Failure::from(e).map(|m| format!("{name}: {m}"))
    })
}

impl Failure {
    fn map(self, f: impl FnOnce(String) -> String) -> Failure {
        match self {
            Failure::Usage(m) => Failure::Usage(f(m)),
            Failure::Invalid(m) => Failure::Invalid(f(m)),
        }
    }
}

fn run(cli: Cli) -> Res<(String, bool)> {
    let ok = |s: String| Ok((s, true));
    match cli.command {
        Command::Build2d { embedding } => {
            let e = load(embedding.as_deref(), io::parse_embedding)?;
            ok(io::write_representation(&build_2d(&e)?))
        }
        Command::Build3dUniversal { graph } => {
            let g = load(graph.as_deref(), io::parse_graph)?;
            ok(io::write_representation(&build_universal(&g)?))
        }
        Command::Build3dTreewidth(a) => {
            let g = load(a.graph.as_deref(), io::parse_graph)?;
            let t = if let Some(p) = &a.td {
                load(Some(p), io::parse_decomposition)?
            } else if a.exact {
                td_exact_small(&g)?
            } else {
                td_heuristic(&g)
            };
            let build = build_treewidth_stages(&g, &to_nice(&t, &g)?)?;
            log::info!(
                "width {}, {} layers, {} unwanted contacts removed",
                t.width(),
                build.layers,
                build.unwanted_contacts
            );
            ok(io::write_representation(&build.rep))
        }
        Command::Build3dGenus { graph, rotation } => {
            let g = load(Some(&graph), io::parse_graph)?;
            let rot = load(Some(&rotation), io::parse_rotation)?;
            ok(io::write_representation(&build_genus(&g, &rot)?))
        }
        Command::Verify { rep, graph } => {
            let r = load(Some(&rep), io::parse_representation)?;
            let g = load(Some(&graph), io::parse_graph)?;
            let report = r.verify(&g)?;
            let mut s = format!("valid {}\n", report.valid);
            for (u, v) in &report.missing_edges {
                s += &format!("missing {u} {v}\n");
            }
            for (u, v) in &report.extra_contacts {
                s += &format!("extra {u} {v}\n");
            }
            for c in &report.overlap_cells {
                s += &format!("overlap {} {} {}\n", c[0], c[1], c[2]);
            }
            for v in &report.disconnected_vertices {
                s += &format!("disconnected {v}\n");
            }
            Ok((s, report.valid))
        }
        Command::Minimize(a) => {
            let g = load(a.graph.as_deref(), io::parse_graph)?;
            let mut bounds = match Dim::from_u8(a.dim)? {
                Dim::Two => SearchBounds::square(a.grid, a.cap),
                Dim::Three => SearchBounds::cube(a.grid, a.cap),
            };
            bounds.budget = a.budget.unwrap_or_else(default_budget);
            match min_rep_search(&g, bounds)? {
                Outcome::Found((size, r)) => {
                    log::info!("minimum size {size}");
                    ok(io::write_representation(&r))
                }
                Outcome::Infeasible => Err(Failure::Invalid(
                    "no representation fits the given bounds".into(),
                )),
                Outcome::Unknown => Err(Failure::Invalid(
                    "node budget exhausted before the search finished".into(),
                )),
            }
        }
        Command::Gadget { kind } => match kind {
            Gadget::Wheel { angled } => {
                let a = load(angled.as_deref(), io::parse_angled)?;
                ok(io::write_graph(&wheel_gadget(&a)?))
            }
            Gadget::Cage2d { t, w, h } => {
                ok(io::write_representation(&cage(CageParams::new2(t, w, h))?.rep))
            }
            Gadget::Cage3d { t, w, h, d } => {
                ok(io::write_representation(&cage(CageParams::new3(t, w, h, d))?.rep))
            }
            Gadget::NestedTriangles { k, nested } => {
                ok(io::write_embedding(&nested_triangles(k, nested)?))
            }
            Gadget::CliqueUnion { q, c } => ok(io::write_graph(&clique_union(q, c)?)),
        },
        Command::Stats { rep } => {
            let r = load(rep.as_deref(), io::parse_representation)?;
            let mut s = format!("dim {}\nvertices {}\nsize {}\n", r.dim().as_u8(), r.n(), r.size());
            if let Some((lo, hi)) = r.bounding_box() {
                let ext: Vec<String> = (0..r.dim().axes())
                    .map(|a| (hi[a] - lo[a] + 1).to_string())
                    .collect();
                s += &format!("box {}\n", ext.join(" "));
            }
            let largest = r.blobs().iter().map(|b| b.len()).max().unwrap_or(0);
            s += &format!("largest_blob {largest}\n");
            match r.contact_graph() {
                Ok(c) => s += &format!("contacts {}\n", c.m()),
                Err(e) => s += &format!("contacts invalid ({e})\n"),
            }
            if r.dim() == Dim::Two {
                if let Ok(k) = r.peeling_depth() {
                    s += &format!("peeling_depth {k}\n");
                }
            }
            ok(s)
        }
        Command::Export { format, rep, mtl } => {
            let r = load(rep.as_deref(), io::parse_representation)?;
            match format {
                Format::Svg => ok(export_svg(&r)?),
                Format::Obj => {
                    let obj = export_obj(&r)?;
                    if let Some(p) = mtl {
                        fs::write(&p, export_mtl(&r))
                            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
                    }
                    ok(obj)
                }
                Format::Txt => ok(io::write_representation(&r)),
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let output = cli.output.clone();
    match run(cli) {
        Ok((text, valid)) => {
            let written = match &output {
                Some(p) => fs::write(p, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if valid { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
