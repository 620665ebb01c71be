//! Certified bounds on the oscillations of
//! G(x) = Re Σ_{γ>0} x^{iγ}/((1/2 + iγ)(3/2 + iγ)), the zero sum that governs
//! the error term in the averaged Goldbach count Σ_{n≤x} R(n).
//!
//! * [`zeros`]: validated tables of zeta-zero ordinates.
//! * [`gfunc`]: evaluation of G and the analytic upper and conditional bounds.
//! * [`lll`]: exact big-integer LLL reduction with post-hoc verification.
//! * [`otr`]: lattice construction of simultaneous approximation witnesses
//!   and the unconditional bounds they certify.
//! * [`goldbach`]: a desk-scale empirical check of the explicit formula.

pub mod ball;
pub mod gfunc;
pub mod goldbach;
pub mod lll;
pub mod otr;
pub mod report;
pub mod zeros;

pub use ball::Ball;
pub use gfunc::{BoundError, Direction, GValue, DEFAULT_PREC};
pub use lll::{Basis, LllError, ReductionParams};
pub use otr::{ApproxProblem, OtrError, Witness, WitnessKind};
pub use report::{BoundKind, BoundParams, BoundRecord, BoundReport, SCHEMA_VERSION};
pub use zeros::{ZeroTable, ZeroTableError};
