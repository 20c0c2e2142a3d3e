//! Exact calculator for tame formal orbifold curves.
//!
//! The crate is organised bottom-up:
//!
//! * [`orbicore`]: curves, tame branch data, cover skeletons and the
//!   branch-data calculus (pullback, `B_f`, morphism and étale predicates,
//!   Riemann–Hurwitz).
//! * [`monodromy`]: permutation-tuple presentations of branched covers and
//!   the genuine-ramification decision procedure.
//! * [`divisor`]: stacky divisors with rational degrees and line-bundle
//!   classes on genus-0 orbifold curves.
//! * [`bundle`]: decomposable orbifold bundles, slopes, Harder–Narasimhan
//!   strata and stability verdicts.
//! * [`equivariant`]: the cyclic Kummer case of the correspondence between
//!   orbifold line bundles and `Z/m`-equivariant line bundles upstairs.
//! * [`audit`]: numerical probes of the stability-of-pullback lemmas on
//!   explicit cases.
//!
//! All arithmetic is exact: integers and [`Rational`] values only.

pub mod audit;
pub mod bundle;
pub mod divisor;
pub mod equivariant;
mod error;
pub mod gen;
pub mod io;
pub mod monodromy;
pub mod orbicore;
mod rat;
pub mod selftest;

pub use error::{Error, Result};
pub use rat::{format_rational, parse_rational, Rational};
