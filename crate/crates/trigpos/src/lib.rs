//! Exact-arithmetic prover for strict positivity of mixed trigonometric
//! polynomials on subintervals of (0, π/2).
//!
//! Each `sin(kx)` / `cos(kx)` of the multiple-angle form is replaced by a
//! directional Taylor segment chosen from the sign of its coefficient, and the
//! resulting polynomial lower bound is certified positive with Sturm
//! sequences over ℤ[π]. Every proof is emitted as a replayable certificate.

pub mod cli;
pub mod expr;
pub mod mixedtrig;
pub mod poly;
pub mod positivity;
pub mod prover;
pub mod sample;
pub mod scalar;
pub mod taylor;

pub use mixedtrig::{MixedTrigPoly, MultiAngleForm};
pub use poly::Poly;
pub use positivity::{IntervalSpec, SignCertificate};
pub use prover::{ProofCertificate, ProofGoal, ProverConfig};
pub use scalar::{NumericValue, PiScalar, Rational, Sign};
