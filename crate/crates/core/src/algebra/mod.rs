//! Bound quiver algebras, their modules and module maps.

mod bound;
mod module;
mod parse;
mod quiver;

pub use bound::{parse_algebra, parse_algebra_with_cap, BoundAlgebra, Combination, DEFAULT_PATH_CAP};
pub use module::{summand_offsets, Module, ModuleMap};
pub use parse::{parse_quiver_file, QuiverFile};
pub use quiver::{Arrow, Path, Quiver, Relation};
