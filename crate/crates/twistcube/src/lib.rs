//! Twisted cubes and the machinery for deciding when they are untwisted.
//!
//! A twisted cube is a region of `R^n` cut out by one interval condition per
//! coordinate, where the interval bound for coordinate `k` is an affine
//! function of the later coordinates.  Depending on the defining constants the
//! region may fail to be closed or convex; when it does not, we call it
//! untwisted.  This crate decides untwistedness by several independent routes
//! (closure of the region, Cartier data of an associated toric divisor, a
//! recursive positivity condition) and cross-checks that they agree.  It also
//! derives the defining constants from a weight and a word of simple
//! reflections, and evaluates the signed lattice-point character of the cube
//! against a Demazure-operator oracle.
//!
//! All interfaces are integer or exact-rational valued; no floating point is
//! used anywhere.

pub mod character;
pub mod cube;
mod error;
pub mod rep;
pub mod toric;
pub mod untwist;

pub use error::{Error, Result};

/// Exact scalar type used wherever integer points do not suffice.
pub type Rational = num_rational::Ratio<i64>;

/// Resource ceilings for the enumeration-heavy operations.
///
/// Lattice and grid enumerations stop with [`Error::Capacity`] once they would
/// produce more than `point_cap` items; cone enumerations refuse dimensions
/// above `cone_cap` (there are `2^n` maximal cones in dimension `n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub point_cap: u64,
    pub cone_cap: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            point_cap: 10_000_000,
            cone_cap: 24,
        }
    }
}

impl Limits {
    /// Cone cap usable as a shift amount; sign vectors are stored in a `u64`
    /// bit mask, so dimensions of 64 and above are never enumerable.
    pub(crate) fn effective_cone_cap(&self) -> u32 {
        self.cone_cap.min(63)
    }
}
