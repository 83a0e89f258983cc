pub mod betti;
pub mod carrier;
pub mod resolve;

pub use betti::{
    add_tables, betti_at_prime, betti_of_complex, finiteness_decision, total, BettiDecision,
    BettiTable,
};
pub use carrier::{Carrier, Piece, PieceSpec};
pub use resolve::{default_cutoff, resolve, Periodicity, ResolutionResult, Witness};
