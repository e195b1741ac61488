//! Root stacks of SNC pairs with rational multiplicities, computed at desk
//! scale.
//!
//! * [`monoid`]: free monoids, simple morphisms, chart lifting along `⊕(×bᵢ)`.
//! * [`qdivisor`]: SNC pairs and ℚ-divisor arithmetic (floor, round-up, fractional part).
//! * [`rootmodel`]: the affine local model `[𝔸ⁿ / ∏ μ_{bᵢ}]` and its invariant monomial modules.
//! * [`cechtoric`]: torus-weight-decomposed Čech cohomology of `Ω^i(log D) ⊗ O(m)` on ℙⁿ.
//! * [`stackcheck`]: stack-side cohomology of toric root stacks of ℙⁿ, the
//!   pushforward comparison and the Kawamata–Viehweg vanishing report.

pub mod cechtoric;
pub mod error;
pub mod linalg;
pub mod monoid;
pub mod qdivisor;
pub mod rootmodel;
pub mod schedule;
pub mod stackcheck;

pub use error::{Error, ErrorKind, Result};
pub use schedule::Schedule;
