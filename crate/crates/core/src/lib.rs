pub mod error;
pub mod exactnum;
pub mod grouprep;
pub mod hopfcore;
pub mod weightmod;
pub mod modanalysis;
pub mod oracle;

pub use error::{Error, Result};

/// Common instantiations over a prime field.
pub type FpHopf = hopfcore::HopfPresentation<exactnum::PrimeField>;
pub type FpMatrix = exactnum::Matrix<u64>;
pub type FpPoly = exactnum::UniPoly<u64>;
pub type FpModule = weightmod::WeightModule<exactnum::PrimeField>;
