pub mod buchberger;
pub mod module;

pub use buchberger::{groebner, ideal_dimension, is_unit_ideal, reduce, syzygies};
pub use module::{
    annihilator, colon, contains, ideal_saturation, intersect, kernel, saturation,
    ModulePresentation, Submodule,
};
