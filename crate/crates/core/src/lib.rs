//! Exact symbolic verification of proper biharmonic rational functions
//! on the special unitary group SU(2).
//!
//! The engine works in the free polynomial ring Q(i)[z11..z22, p, q, x]
//! with exact Gaussian-rational coefficients. It provides:
//!
//! * the tension field τ and conformality operator κ on polynomials in
//!   unitary matrix coefficients, computed two independent ways
//!   ([`ops`] via partial derivatives, [`oracle`] via the orthonormal
//!   Lie-algebra basis);
//! * the (n+1)-dimensional irreducible representations of SU(2)
//!   ([`rep`]);
//! * bitension computation, condition-system extraction and
//!   certification of the proper-biharmonic families ([`verify`]);
//! * the flat S³ ⊂ R⁴ and H³ ⊂ R⁴₁ cross-checks and the duality
//!   substitution x0 ↦ -i·x0 ([`euclid`]);
//! * an expression parser, LaTeX emitter and CLI front-end.

pub mod error;
pub mod euclid;
pub mod gauss;
pub mod latex;
pub mod ops;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod ratfn;
pub mod rep;
pub mod selftest;
pub mod var;
pub mod verify;

pub use gauss::GaussRat;
pub use ops::GroupContext;
pub use poly::Poly;
pub use ratfn::RatFn;
pub use var::{Monomial, Var};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
