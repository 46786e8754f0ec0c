//! Pixel and voxel contact representations of graphs.

pub mod constructions;
pub mod embedding;
pub mod error;
pub mod export;
pub mod gadgets;
pub mod graph;
pub mod grid;
pub mod io;
pub mod oracle;
pub mod ortho;
pub mod random;
pub mod td;
pub mod transforms;

pub use error::{Error, Result};
pub use graph::{apply_minor, Graph, MinorRecipe};
pub use grid::{Cell, Dim, Representation};
