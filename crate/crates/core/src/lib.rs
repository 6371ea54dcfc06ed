//! Equivariant regularization of simplices, deformation retractions of the
//! configuration spaces `C(K)` and `C(L)` onto their pyramidal subspaces,
//! geometric regularization flows, and the action of `π₁(C(K₄))` on `F₃`.
//!
//! `K` is the `(n−2)`-skeleton of the `n`-simplex and `L` the `(n−2)`-skeleton
//! of the `(n+1)`-simplex, both linearly embedded in `Rⁿ`. Configurations are
//! unlabeled point sets; everything here operates on labeled point lists and
//! is checked to be label-equivariant.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the CLI and the
//! verification suite live in the `simplexflows` companion crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod affine;
pub mod classify;
pub mod error;
pub mod face;
pub mod group;
pub mod linalg;
pub mod measure;
pub mod radon;
pub mod regularize;
pub mod retract_k;
pub mod retract_l;
pub mod simplex;
pub mod solid_angle;
pub mod trajectory;

#[cfg(test)]
pub(crate) mod testutil;

pub use affine::{induced_affine_map, AffineMap};
pub use classify::{classify, Classification, DegeneracyClass};
pub use error::{Error, Result};
pub use radon::{radon_partition, RadonResult};
pub use simplex::{ComplexKind, Configuration, Point, Simplex, Tolerances};
pub use trajectory::{Sample, Trajectory};

/// Crate version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
