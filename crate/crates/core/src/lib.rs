//! Order-unit extensions of finite-dimensional normed spaces.
//!
//! Given a real normed space `V`, the pair space `V × ℝ` ordered by the cone
//! `{(v, α) : ‖v‖ ≤ α}` is an order unit space with unit `e = (0, 1)` and
//! order-unit norm `‖(v, α)‖ = ‖v‖ + |α|`. This crate implements that
//! construction together with the structure it carries:
//!
//! * an absolute value with positive/negative parts and orthogonality,
//! * order projections, absolute covers and a two-point spectral
//!   decomposition with powers, square roots, and scalar functional calculus,
//! * the symmetrized product `x ∘ y = ¼{(x+y)² − (x−y)²}`, which is bilinear
//!   exactly when `V` is a Hilbert space (the spin-factor case), and the
//!   associative `V(u)` and Jordan `V(u, v)` subalgebras,
//! * numerical campaigns that hunt for counterexamples to the above at desk
//!   scale: strict-convexity probes, the absolutely-ordered axiom suite,
//!   ⊥₂-pair sweeps over ℓ_p unit spheres, and scaling checks.
//!
//! Campaigns are deterministic: all randomness derives from a single seed via
//! a counter-based generator, and parallel reductions are partition-invariant,
//! so reports are byte-for-byte reproducible.

pub mod error;
pub mod jordan;
pub mod order;
pub mod report;
pub mod rng;
pub mod search;
pub mod space;
pub mod spectral;
pub mod tol;

pub use error::Error;
pub use jordan::{
    BilinearityDefect, JordanAlgebra, VuAlgebra, VuElement, VuvAlgebra, VuvElement,
    ZeroProductClass,
};
pub use order::{ConeClass, OrderElement, OrderProjection};
pub use report::{AxiomCheck, CheckReport};
pub use rng::DetRng;
pub use search::{GridSpec, MonotonicityReport, SearchCertificate, Verdict};
pub use space::{Space, Vector};
pub use spectral::{SpectralData, SpectralFamily};
pub use tol::Tol;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
