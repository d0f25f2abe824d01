//! Exact refined Donaldson–Thomas invariants for quivers with potential.
//!
//! The crate is layered bottom-up:
//!
//! * [`qtorus`]: the coefficient ring, truncated quantum tori, quantum
//!   dilogarithms and ray factorization.
//! * [`quiver`]: quivers, potentials, Jacobian relations and Euler forms.
//! * [`strings`]: string and band combinatorics for monomial quadratic
//!   relations, their modules and extension bases.
//! * [`stability`]: central charges, exact phases and stability verdicts.
//! * [`fqoracle`]: brute-force representation counts over prime fields.
//! * [`dt`]: the trajectory presets, the invariant formula and the barbell
//!   identities.

pub mod dt;
pub mod fqoracle;
pub mod qtorus;
pub mod quiver;
pub mod stability;
pub mod strings;
