//! Differential r-form wavelets: the frequency type table, per-atom
//! operators, evaluation, and the Laplace-de Rham Galerkin matrix.

pub mod atom;
pub mod context;
pub mod galerkin;
pub mod table;

pub use atom::{
    chain_image_symbolic, exterior_derivative_atom, hodge_atom, laplacian_atom, FormAtom,
    WeightedAtom,
};
pub use context::{cartesian_monomials, inverse_basis_map, FormContext, Rot3};
pub use galerkin::{assemble_pairing, scalar_pairing};
pub use table::{family_count, type_keys, FormType, FreqDescriptor, FreqTable, TypeKey};
