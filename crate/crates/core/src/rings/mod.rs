pub mod field;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod principal;
pub mod rank;
pub mod ring;

pub use matrix::{Matrix, MatrixStrings};
pub use poly::{MPoly, MonomialOrder, PolyCtx};
pub use rank::generic_rank;
pub use ring::{
    normal_form, normal_form_str, project, regularity_class, residue_ring, Elem, PrincipalKind,
    RegularityClass, Ring, RingDescriptor, RingElement,
};
