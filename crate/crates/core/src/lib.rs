//! Exact calculus for the coset ring and the idempotent-generated
//! Fourier–Stieltjes algebra of `Z`, `Z^2` and finite abelian groups.
//!
//! * [`lattice`]: groups, subgroups and cosets via Hermite and Smith forms.
//! * [`coset_ring`]: Boolean combinations of cosets in canonical form.
//! * [`topology`]: the semilattice of topology tags and its hereditary sets.
//! * [`graded`]: elements graded by topology tag, with exact arithmetic.
//! * [`norm`]: certified norm enclosures.
//! * [`spectrum`]: points of the idempotent compactification and characters.
//! * [`affine`]: piecewise affine maps and pullbacks.
//!
//! Connected factors `R^c` are accepted in group descriptors and ignored by
//! every computation.

#![no_std]
extern crate alloc;

pub mod affine;
pub mod coset_ring;
pub mod error;
pub mod graded;
pub mod int;
pub mod lattice;
pub mod norm;
pub mod spectrum;
pub mod topology;

pub use affine::{AffinePiece, HomReport, PiecewiseAffineMap};
pub use coset_ring::{canonicalize, CanonicalCosetSet, CosetExpr};
pub use error::{Error, Result};
pub use graded::{Component, GradedElement, Rational};
pub use lattice::{Coset, Elem, GroupDescriptor, Subgroup};
pub use norm::{norm, Interval};
pub use spectrum::{Certainty, SpectrumPoint};
pub use topology::{Direction, HdSet, TopologyTag};
