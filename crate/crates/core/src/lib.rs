//! Exact computation of defining equations for Quot schemes of constant
//! Hilbert polynomial, realized as Fitting-ideal strata on the standard
//! affine charts of a Grassmannian.
//!
//! The pipeline: a chart of `Gr(n, F_d)` (for the free module `F = S^p` over
//! `S = A[X_0..X_r]`) carries a tautological submodule spanned by explicit
//! kernel generators.  Truncating the cone over that submodule in degree
//! `d + s` gives a presentation matrix whose Fitting ideal `Fitt_{n-1}`
//! cuts out the locus where the quotient keeps constant Hilbert function
//! `n`.  The intersection of those strata over `s >= 1` is the Quot scheme
//! on the chart.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals,
//! ideals are compared through reduced Groebner bases, and determinants are
//! computed fraction-free.

pub mod error;
pub mod exactla;
pub mod grobner;
pub mod macaulay;
pub mod polyring;
pub mod quotcore;

pub use error::{Error, Result};

/// Resource limits shared by the minor enumeration and the Groebner engine.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Maximum number of minors a single `minors` call may enumerate.
    pub minor_cap: usize,
    /// Maximum number of S-pair reductions a single Buchberger run may do.
    pub gb_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { minor_cap: 200_000, gb_budget: 100_000 }
    }
}
