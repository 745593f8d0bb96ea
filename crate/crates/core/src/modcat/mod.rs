//! Hom and Ext spaces, kernels and cokernels, presentations, decomposition and
//! the inventory of indecomposable modules.

mod decompose;
mod exact;
mod hom;
mod inventory;
mod present;

pub use decompose::{
    decompose, endomorphism_radical, indecomposable_summands, is_indecomposable, is_isomorphic, search_isomorphism,
};
pub use exact::{
    cokernel, image, kernel, quotient, radical, radical_power_spans, radical_spans, socle, socle_spans, submodule, top,
    Image, VertexVectors,
};
pub use hom::{hom_basis, hom_dim, rank_of_maps, HomBasis};
pub use inventory::{almost_split_middle, Backend, Inventory, InventoryJson, ModuleJson, DEFAULT_INVENTORY_CAP};
pub use present::{
    ext1_basis, ext1_dim, ext2_dim, is_injective, is_projective, minimal_presentation, projective_cover, syzygy,
    ExtBasis, Presentation, ProjectiveCover, ProjectiveSum,
};
