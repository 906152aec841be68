//! Finite-dimensional Clifford algebras, exterior calculus on four
//! coordinates, the GL(4) action on sixteen-dimensional spaces and
//! Schwarzschild coordinate charts, each with numerical checks of the
//! identities that tie them together.
//!
//! The modules build on one another from the bottom up:
//!
//! - [`blade`]: multivectors over basis blades, reflections and spin lifts.
//! - [`matrix_rep`]: Pauli, Jordan-Wigner and gamma matrices; Dirac plane waves.
//! - [`exterior`]: forms, wedge, Hodge star, `d`, `d*` and the Dirac-Kahler symbol.
//! - [`gl4`]: induced actions on forms and matrices, spin representations,
//!   operator-Schmidt factorization.
//! - [`so33`]: the action of SL(4) on two-forms and its image in SO(3,3).
//! - [`schwarzschild`]: closed-form charts, pullbacks and light-cone slopes.
//! - [`report`]: verification suites behind the `kahlerkit` binary.

pub mod blade;
pub mod error;
pub mod exterior;
pub mod gl4;
pub mod linalg;
pub mod matrix_rep;
pub mod report;
pub mod sampling;
pub mod schwarzschild;
pub mod so33;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/clifford.md")]
    mod clifford {}
    #[doc = include_str!("../../../book/src/matrix-reps.md")]
    mod matrix_reps {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/covariance.md")]
    mod covariance {}
    #[doc = include_str!("../../../book/src/so33.md")]
    mod so33 {}
    #[doc = include_str!("../../../book/src/schwarzschild.md")]
    mod schwarzschild {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
