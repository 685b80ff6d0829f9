//! Computing the Gröbner basis of the ideal of linear recurrence relations
//! of an n-dimensional sequence, using sparse multivariate polynomial
//! division on the mirror of the truncated generating series.
//!
//! The crate provides:
//!
//! - exact coefficient arithmetic over a prime field or the rationals, with
//!   an operation counter ([`scalars`]);
//! - monomials, weight orderings and staircase combinatorics ([`monomials`]);
//! - sparse multivariate polynomials with multi-divisor normal forms
//!   ([`polynomials`]);
//! - the sequence/table abstraction, query counting and table generators
//!   ([`tables`]);
//! - the pair machinery `R_m = [F_m, C_m]` shared by the guessers
//!   ([`relation_engine`]);
//! - the guessing algorithms themselves: univariate Berlekamp–Massey via the
//!   truncated extended Euclidean algorithm, the division-based guesser, and
//!   its adaptive variant ([`guessers`]);
//! - an independent multi-Hankel linear-algebra oracle used for
//!   cross-validation ([`linalg_oracle`]).

pub mod guessers;
pub mod linalg_oracle;
pub mod monomials;
pub mod polynomials;
pub mod relation_engine;
pub mod scalars;
pub mod tables;

pub use monomials::{Monomial, MonomialOrder, OrderKind, Staircase};
pub use polynomials::{Poly, PowerIdeal};
pub use scalars::{Field, OpCounter, Scalar};
pub use tables::{GroebnerBasis, Table};
