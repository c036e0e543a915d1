//! Executable isomorphisms between skew Hecke algebras and their models,
//! each checkable with [`verify::verify_algebra_map`].

pub mod verify;
pub mod matrix;
pub mod corner;
pub mod stone;
pub mod transport;
pub mod special;

pub use corner::CornerModel;
pub use transport::{
    coboundary_from_unit, cocycle_transport, conjugate_transport, intermediate_embed, opposite_transport,
    quotient_transport, restrict_context, semidirect_transport, ProductTransport, Transport, TransportKind,
};
pub use special::{
    classical_model, classical_table, normal_subgroup_model, trivial_action_model, trivial_subgroup_model,
    whole_group_model, SpecialModel,
};
pub use stone::{StoneMap, StoneReport};
pub use matrix::{from_matrix, relativise, to_matrix, HeckeMatrix, MatrixView};
pub use verify::{hecke_basis, hecke_span, verify_algebra_map, AlgebraMapReport, AlgebraView, BasedView, HeckeView, ImageSpec, MapCheck};
