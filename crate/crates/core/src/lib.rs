//! Exact computation of spectra, Smith normal forms, Smith groups and
//! critical groups of matrices attached to Cayley graphs of finite abelian
//! groups.
//!
//! For `G = Z_q1 x ... x Z_qn` and a connecting set `E ⊆ G`, every integer
//! combination of the adjacency matrices `A_E` and the identity is
//! diagonalized by the character table of `G`, with eigenvalues given by the
//! exact character sums `Σ_{e∈E} χ(e)` in the cyclotomic ring `Z[ζ_m]`
//! (`m` the exponent of `G`). For a prime `p` not dividing `|G|`, the
//! multiplicity of `p^i` among the elementary divisors of such a matrix
//! equals the number of eigenvalues exactly divisible by `π^i`, where `π` is
//! any prime of `Z_p[ζ_m]` over `p`. This crate computes both sides of that
//! equality — the spectral prediction and a brute-force Smith normal form
//! oracle — entirely in exact arithmetic, and reports whether they agree.
//!
//! Module map:
//!
//! - [`group`]: the group, its elements and characters, exact character
//!   evaluation as root-of-unity exponents.
//! - [`cayley`]: connecting sets, adjacency matrices, Laplacians, integer
//!   matrix combinations.
//! - [`cyclotomic`]: exact arithmetic in `Z[ζ_m]`.
//! - [`locfield`]: primes of `Z_p[ζ_m]` over `p` (Hensel-lifted factors of
//!   the cyclotomic polynomial) and exact `π`-adic valuations.
//! - [`matrix`] / [`snf`]: dense big-integer matrices, Smith normal form,
//!   cokernels, critical groups, spanning-tree counts.
//! - [`spectral`]: character-sum spectra, closed forms for Hamming and
//!   Cartesian-product families, elementary-divisor prediction.
//! - [`reports`]: verification grids and the named-family reports driven by
//!   the command-line front end.

pub mod arith;
pub mod caps;
pub mod cayley;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod locfield;
pub mod matrix;
pub mod reports;
pub mod snf;
pub mod spectral;

pub use cayley::{ConnectingSet, MatrixCombo};
pub use cyclotomic::CyclotomicInteger;
pub use error::{Error, Result};
pub use group::{Character, GroupElement, GroupSpec};
pub use locfield::PrimeContext;
pub use matrix::IntegerMatrix;
pub use snf::{AbelianGroupStructure, ElementaryDivisorProfile, SmithDecomposition};
pub use spectral::{PredictedProfile, Spectrum};
