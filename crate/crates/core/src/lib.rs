//! Exact computation of Fourier-series machinery in Hilbert modules over
//! commutative function algebras.
//!
//! Everything is decided in exact rational arithmetic: algebra elements are
//! piecewise polynomials with rational breakpoints and coefficients,
//! inequalities reduce to Sturm-sequence root isolation, and norms and
//! Lebesgue measures of superlevel sets are reported as rational interval
//! enclosures that can be refined below any requested width.
//!
//! The layers, bottom up:
//!
//! - [`rat`], [`poly`], [`roots`]: rationals, polynomials, root isolation —
//!   the decision kernel.
//! - [`algebra`]: piecewise-polynomial models of the function algebras
//!   (continuous or essentially-bounded on a closed interval, optionally with
//!   prescribed vanishing points), with exact products, norms, division,
//!   zero-set geometry, spectral projections, annihilators and superlevel
//!   measures.
//! - [`module`]: finitely supported vectors over a countable index set and
//!   elements of a branched-covering module, algebra-valued inner products,
//!   Fourier partial sums, Bessel/net/optimality machinery, frame and basis
//!   verification, convergence diagnostics.
//! - [`gallery`]: named constructions that rebuild each catalogued example
//!   and run its claim suite as exact checks.
//!
//! Batch work (gallery suites, table rows, randomized corpora) runs through
//! [`exec`], which is backed by rayon when the `parallel` feature (default)
//! is enabled and degrades to sequential iteration otherwise.

pub mod algebra;
pub mod error;
pub mod exec;
pub mod gallery;
pub mod module;
pub mod poly;
pub mod rat;
pub mod roots;

pub use error::{AlgebraError, GalleryError, ModuleError, ScalarError};
pub use poly::Poly;
pub use rat::Rat;
