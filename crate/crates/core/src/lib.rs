//! Exact cohomology rings of 4-dimensional toric orbifolds.
//!
//! A toric orbifold of real dimension four is described by a polygon whose
//! edges carry primitive vectors in `Z^2` (a characteristic pair). This crate
//! computes its integral and PID-coefficient cohomology groups, the closed-form
//! cup-product matrices, the toric-morphism calculus relating pairs, and an
//! independent Stanley-Reisner quotient computation over `Q` used to check the
//! closed forms.
//!
//! ```
//! use toric4::charpair::CharacteristicPair;
//! use toric4::cohomology::cup_matrix_smooth;
//!
//! let cp2 = CharacteristicPair::from_pairs(&[(1, 1), (1, 0), (0, 1)]).unwrap();
//! let np = cp2.normalize_smooth(None).unwrap();
//! let cup = cup_matrix_smooth(&np).unwrap();
//! assert_eq!(cup.to_i128_rows().unwrap(), vec![vec![1]]);
//! ```

pub mod charpair;
pub mod cohomology;
pub mod error;
pub mod intlinalg;
pub mod morphisms;
pub mod srengine;
pub mod sweep;

pub use error::{Error, Result};
