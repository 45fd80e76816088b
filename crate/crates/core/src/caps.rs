//! Default resource caps.
//!
//! The library refuses to materialize structures past these hard limits;
//! the command-line layer applies its own, tighter, user-configurable caps
//! on top.

/// Largest dense matrix dimension the library will materialize.
pub const DENSE_DIMENSION_CAP: usize = 4096;

/// Largest root-of-unity order for cyclotomic arithmetic.
pub const CYCLOTOMIC_MODULUS_CAP: u64 = 100_000;

/// Default group-size cap for spectra and predictions in the CLI.
pub const DEFAULT_SPECTRUM_CAP: u64 = 1024;

/// Default group-size cap for the full Smith normal form oracle in the CLI.
pub const DEFAULT_SNF_CAP: u64 = 512;

/// Default cap on `n` for the n-cube Smith normal form experiments.
pub const DEFAULT_NCUBE_CAP: u32 = 8;
