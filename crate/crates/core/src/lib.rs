//! Exact construction of multiple (Hermite-Padé) orthogonal polynomials for
//! semiclassical weights, their electrostatic partners and associated ODE
//! data, and multiprecision certification of the discrete equilibrium models
//! satisfied by their zeros.
//!
//! The exact layer works over GMP rationals end to end: moments from the
//! Pearson recurrence, orthogonality systems by fraction-free elimination,
//! partner extraction through truncated expansions at infinity with explicit
//! validity tracking, and all ODE identities certified by exact division.
//! The numeric layer (MPFR) finds zeros, evaluates external fields, and
//! measures equilibrium residuals at explicit precision.

pub mod bigfloat;
pub mod electro;
pub mod error;
pub mod jacobi;
pub mod laurent;
pub mod linalg;
pub mod mop;
pub mod partner;
pub mod poly;
pub mod quad;
pub mod rat;
pub mod verify;
pub mod weights;
pub mod zeros;

pub use bigfloat::{BigComplex, Float};
pub use electro::{EquilibriumReport, ExternalField, FieldKind};
pub use error::{Error, Result};
pub use laurent::LaurentTail;
pub use mop::{CompletionRule, MopRecord, MultiIndex, WeightChannel};
pub use partner::{OdePair, PartnerBundle};
pub use poly::{poly_div_exact, wronskian, ExactPoly};
pub use rat::{parse_rat, rat_string, Rat};
pub use verify::{VerificationReport, VerifyItem};
pub use weights::{FamilySpec, MomentBackend, SemiclassicalWeight, SupportComponent};
pub use zeros::{InterlaceReport, ZeroSet};
