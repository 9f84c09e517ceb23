//! Sums of three generalized polygonal numbers.
//!
//! Counting and classifying representations `n = p_m(x) + p_m(y) + p_m(z)`,
//! the equivalent problem for a coset of a scaled cubic lattice, exact
//! `q`-series, class numbers, congruence obstructions, the genus of the
//! `m = 14` coset and witness families of unrepresented integers.
//!
//! ```
//! use polyternary::PolygonalFamily;
//!
//! let f = PolygonalFamily::new(14).unwrap();
//! assert_eq!(f.value(2), 14);
//! assert_eq!(f.representation_count(18), 0);
//! assert_eq!(f.ell(18), 507);
//! ```

pub mod arith;
mod bits;
pub mod class_numbers;
pub mod cli;
pub mod coset;
pub mod error;
pub mod local;
pub mod polygonal;
pub mod qseries;
pub mod spinor_m14;
pub mod witnesses;

pub use class_numbers::{hurwitz, kronecker, Discriminant};
pub use coset::CosetZ3;
pub use error::{Error, Result};
pub use polygonal::{ExceptionRecord, PolygonalFamily};
pub use qseries::{QSeries, Rational};
pub use spinor_m14::{GenusM14, GenusMember, SpinorGenus};
pub use witnesses::{WitnessReport, WitnessSpec};
