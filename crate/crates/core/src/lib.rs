//! Exact genus-zero Gromov-Witten invariants of complete intersections in
//! projective space by torus localization, together with the genus-one
//! reduced-invariant relations and instanton-number expansions for
//! Calabi-Yau threefolds.
//!
//! Modules, bottom up:
//!
//! - [`model`]: query types, Calabi-Yau and positivity predicates, expected
//!   dimensions.
//! - [`fixed_graphs`]: decorated trees indexing torus-fixed loci.
//! - [`localization`]: exact graph-sum evaluation, certified by agreement
//!   across several weight specializations.
//! - [`relations`]: genus-one relations, multiple-cover inversions, the
//!   quintic table audit, and Kontsevich's plane-curve recursion.
//! - [`cli`]: the `gwloc` command-line front end and its result cache.

pub mod cli;
pub mod fixed_graphs;
pub mod localization;
pub mod model;
pub mod relations;

pub use model::Rational;
