//! Coherence-based certification of sparse recovery guarantees.
//!
//! Given a design matrix with unit-norm columns, `cscert` evaluates the
//! bounds that follow from its mutual coherence (eigenvalue perturbation
//! slacks, weak restricted isometry, weak null space property constants) and
//! checks each one against the exact quantity it bounds: Gram spectra, the
//! worst null-space ratio over the kernel, and basis pursuit outcomes.
//!
//! ```
//! use cscert::certify::cdspl_conditions;
//! use cscert::design::{generate, GeneratorKind};
//!
//! let x = generate(GeneratorKind::Gaussian, 20, 60, 5).unwrap();
//! let c = cdspl_conditions(&x, 2, 0.5, 2.0).unwrap();
//! assert!(c.bound > 0.0 && c.bound <= 1.0);
//! ```

pub mod certify;
pub mod cli;
pub mod design;
pub mod error;
pub mod linalg;
pub mod perturbation;
pub mod recovery;
pub mod rng;

pub use error::{ConditionCheck, Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/designs.md")]
    mod designs {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/perturbation.md")]
    mod perturbation {}
    #[doc = include_str!("../../../book/src/weak_rip.md")]
    mod weak_rip {}
    #[doc = include_str!("../../../book/src/weak_nsp.md")]
    mod weak_nsp {}
    #[doc = include_str!("../../../book/src/recovery.md")]
    mod recovery {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
