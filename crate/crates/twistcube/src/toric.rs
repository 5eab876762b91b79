//! The smooth toric variety attached to a cube spec and the Cartier data of
//! its distinguished divisor.
//!
//! For each coordinate `j` there are two rays: `e_j^+` is the `j`-th standard
//! basis vector and `e_j^- = -e_j^+ - sum_{k > j} c_jk e_k^+`.  Choosing one
//! ray per coordinate gives `2^n` maximal cones, indexed here by sign
//! vectors.  The divisor with multiplicity `ell_j` on each negative ray is
//! Cartier; its local datum on a maximal cone is a single lattice point,
//! computed by the corner recursion shared with the cube module.  The divisor
//! is basepoint-free exactly when every such point lies in the polytope of
//! sections `{x : 0 <= x_j <= A_j(x) for all j}`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::cube::{corner_vector, lex_minus_masks, CubeSpec};
use crate::{Error, Limits, Rational, Result};

/// One sign per coordinate, selecting a maximal cone of the fan.
///
/// Bit `j-1` of the mask is set when coordinate `j` carries the minus ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    mask: u64,
    len: usize,
}

impl SignVector {
    pub fn from_mask(mask: u64, len: usize) -> Result<SignVector> {
        if len > 63 {
            return Err(Error::usage(format!("sign vector length {len} exceeds 63")));
        }
        if mask >= (1u64 << len) {
            return Err(Error::usage(format!(
                "mask {mask:#b} has bits beyond length {len}"
            )));
        }
        Ok(SignVector { mask, len })
    }

    pub fn all_plus(len: usize) -> Result<SignVector> {
        SignVector::from_mask(0, len)
    }

    pub fn all_minus(len: usize) -> Result<SignVector> {
        if len > 63 {
            return Err(Error::usage(format!("sign vector length {len} exceeds 63")));
        }
        SignVector::from_mask((1u64 << len) - 1, len)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Whether coordinate `j` (1-based) carries the minus ray.
    pub fn is_minus(&self, j: usize) -> bool {
        debug_assert!(1 <= j && j <= self.len);
        (self.mask >> (j - 1)) & 1 == 1
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 1..=self.len {
            f.write_str(if self.is_minus(j) { "-" } else { "+" })?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignVector> {
        let mut mask = 0u64;
        let mut len = 0usize;
        for ch in s.chars() {
            if len >= 63 {
                return Err(Error::usage("sign vector longer than 63".to_string()));
            }
            match ch {
                '-' => mask |= 1 << len,
                '+' => {}
                other => {
                    return Err(Error::usage(format!(
                        "sign vector may only contain '+' and '-', found {other:?}"
                    )))
                }
            }
            len += 1;
        }
        Ok(SignVector { mask, len })
    }
}

/// The minus ray `e_j^- = -e_j^+ - sum_{k > j} c_jk e_k^+` as a coordinate
/// vector.
pub fn ray_minus(spec: &CubeSpec, j: usize) -> Result<Vec<i64>> {
    let n = spec.n();
    if j < 1 || j > n {
        return Err(Error::usage(format!(
            "ray index {j} out of range for dimension {n}"
        )));
    }
    let mut v = vec![0i64; n];
    v[j - 1] = -1;
    for k in (j + 1)..=n {
        v[k - 1] = spec
            .c_entry(j, k)?
            .checked_neg()
            .ok_or(Error::Overflow("ray coordinates"))?;
    }
    Ok(v)
}

/// All maximal cones in ascending mask order (all-plus first, all-minus
/// last).  Lazy because there are `2^n` of them.
pub fn maximal_cones(
    spec: &CubeSpec,
    limits: &Limits,
) -> Result<impl Iterator<Item = SignVector>> {
    let n = spec.n();
    check_cone_dimension(n, limits)?;
    Ok((0..(1u64 << n)).map(move |mask| SignVector { mask, len: n }))
}

/// Cartier datum of the divisor on one maximal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierPoint {
    pub sigma: SignVector,
    pub m: Vec<i64>,
}

/// The local Cartier datum on the cone selected by `sigma`: coordinate `j` is
/// `0` on a plus choice and the bound `A_j` of the already-computed later
/// coordinates on a minus choice.
pub fn cartier_point(spec: &CubeSpec, sigma: SignVector) -> Result<CartierPoint> {
    if sigma.len() != spec.n() {
        return Err(Error::usage(format!(
            "sign vector of length {} does not match dimension {}",
            sigma.len(),
            spec.n()
        )));
    }
    let m = corner_vector(spec, sigma.mask())?;
    Ok(CartierPoint { sigma, m })
}

/// Cartier data for every maximal cone, in the order of [`maximal_cones`].
pub fn all_cartier_points(spec: &CubeSpec, limits: &Limits) -> Result<Vec<CartierPoint>> {
    let mut out = Vec::with_capacity(1usize << spec.n().min(24));
    for sigma in maximal_cones(spec, limits)? {
        out.push(cartier_point(spec, sigma)?);
    }
    Ok(out)
}

/// Which side of an interval condition a point violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `x_j < 0`.
    Lower,
    /// `x_j > A_j(x)`.
    Upper,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::Lower => "lower",
            Bound::Upper => "upper",
        })
    }
}

/// Whether the integer point lies in the polytope of sections
/// `{x : 0 <= x_j <= A_j(x) for all j}`.
pub fn section_polytope_contains(spec: &CubeSpec, point: &[i64]) -> Result<bool> {
    Ok(section_polytope_violation(spec, point)?.is_none())
}

/// Rational-point version of [`section_polytope_contains`].
pub fn section_polytope_contains_rational(spec: &CubeSpec, point: &[Rational]) -> Result<bool> {
    if point.len() != spec.n() {
        return Err(Error::usage(format!(
            "point has {} coordinates but the cube has dimension {}",
            point.len(),
            spec.n()
        )));
    }
    let zero = Rational::zero();
    for j in 1..=spec.n() {
        let a = spec.bound_rational(j, &point[j..])?;
        let x = point[j - 1];
        if x < zero || x > a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First violated inequality, scanning coordinates 1 upward: `Lower` when
/// `x_j < 0`, `Upper` when `x_j > A_j(x)`.
pub(crate) fn section_polytope_violation(
    spec: &CubeSpec,
    point: &[i64],
) -> Result<Option<(usize, Bound)>> {
    if point.len() != spec.n() {
        return Err(Error::usage(format!(
            "point has {} coordinates but the cube has dimension {}",
            point.len(),
            spec.n()
        )));
    }
    for j in 1..=spec.n() {
        if point[j - 1] < 0 {
            return Ok(Some((j, Bound::Lower)));
        }
        let a = spec.bound(j, &point[j..])?;
        if point[j - 1] > a {
            return Ok(Some((j, Bound::Upper)));
        }
    }
    Ok(None)
}

/// A Cartier datum outside the polytope of sections, with the first violated
/// inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasepointWitness {
    pub sigma: SignVector,
    pub m: Vec<i64>,
    pub coordinate: usize,
    pub bound: Bound,
}

/// Result of the basepoint-freeness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasepointFreeness {
    pub is_free: bool,
    pub witness: Option<BasepointWitness>,
}

/// Tests whether the divisor is basepoint-free: every Cartier datum must lie
/// in the polytope of sections.
///
/// Cones are scanned in lexicographic order of their sign vectors with minus
/// before plus, so the reported witness is the lexicographically first
/// failing cone.
pub fn is_basepoint_free(spec: &CubeSpec, limits: &Limits) -> Result<BasepointFreeness> {
    let n = spec.n();
    check_cone_dimension(n, limits)?;
    for mask in lex_minus_masks(n) {
        let sigma = SignVector { mask, len: n };
        let m = corner_vector(spec, mask)?;
        if let Some((coordinate, bound)) = section_polytope_violation(spec, &m)? {
            return Ok(BasepointFreeness {
                is_free: false,
                witness: Some(BasepointWitness {
                    sigma,
                    m,
                    coordinate,
                    bound,
                }),
            });
        }
    }
    Ok(BasepointFreeness {
        is_free: true,
        witness: None,
    })
}

fn check_cone_dimension(n: usize, limits: &Limits) -> Result<()> {
    if n as u64 > u64::from(limits.effective_cone_cap()) {
        return Err(Error::Capacity {
            what: "maximal cone enumeration",
            cap: u64::from(limits.effective_cone_cap()),
        });
    }
    Ok(())
}
