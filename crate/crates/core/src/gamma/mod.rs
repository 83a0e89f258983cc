pub mod object;
pub mod prime;
pub mod spectrum;

pub use object::{
    classify, gtensor, is_compact, is_dualisable, recognize_shifted_unit, sw_dual, unit,
    Classification, ClassifyReport, Dualisability, GammaObject,
};
pub use prime::{golden_instances, PrimeIdeal};
pub use spectrum::{spectrum_report, SpectrumReport};
