//! Exact computations in the hyperalgebra of the special linear group and its
//! Weyl modules, built around a local criterion for deciding whether a product
//! of divided-power lowering operators survives in the Weyl module `Δ(ω)`.
//!
//! The crate has three layers:
//!
//! * symbolic operators on the negative/toral part of the hyperalgebra
//!   ([`hyperalgebra`]), together with the flow combinatorics ([`flows`]) and
//!   tableau combinatorics ([`tableaux`]) that control them;
//! * a brute-force tensor-space realization of Weyl modules ([`oracle`]) used
//!   as an independent ground truth;
//! * the decision procedure itself ([`criterion`]), which answers
//!   `F e⁺ ≠ 0 in Δ(ω)?` by weight-preserving local reductions and emits a
//!   replayable [`criterion::Witness`] for every positive verdict.
//!
//! All arithmetic is exact: arbitrary-precision rationals over `ℚ` and
//! canonical residues over a prime field `𝔽_p`. There is no floating point
//! anywhere in the crate.

pub mod criterion;
pub mod error;
pub mod expr;
pub mod field;
pub mod flows;
pub mod hyperalgebra;
pub mod linalg;
pub mod oracle;
pub mod tableaux;
pub mod weights;

pub use error::{Error, Result};
pub use field::{FieldCtx, Scalar};
pub use weights::WeightVec;
