pub mod chain_map;
pub mod complex;
pub mod homology;

pub use chain_map::ChainMap;
pub use complex::{koszul, ComplexSpec, FreeComplex};
pub use homology::{homology, homology_module, minimise, Homology, ModuleInvariants};
