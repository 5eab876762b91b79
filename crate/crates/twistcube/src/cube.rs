//! The twisted cube: a region of `R^n` cut out by one interval condition per
//! coordinate.
//!
//! A cube is specified by an integer `n >= 0`, a strictly upper-triangular
//! integer matrix `c = (c_ij)` for `1 <= i < j <= n`, and an integer vector
//! `ell = (ell_1, ..., ell_n)`.  Coordinate `j` has the affine bound
//!
//! ```text
//! A_j(x) = ell_j - sum_{k > j} c_jk * x_k
//! ```
//!
//! which depends only on the later coordinates.  A point belongs to the cube
//! when every coordinate `x_k` lies either in the closed interval
//! `[0, A_k(x)]` or in the open interval `(A_k(x), 0)`; the second case is
//! only inhabited when the bound is negative.  Points picked up by the open
//! branch carry negative weight in the density, which is what makes the cube
//! "twisted".
//!
//! Indices are 1-based throughout, matching the usual mathematical
//! conventions; all arithmetic is checked 64-bit or exact rational.

use num_traits::{CheckedMul, CheckedSub, Zero};

use crate::{Error, Limits, Rational, Result};

/// Sign of the branch containing `x`: `+1` for the open branch (`x < 0`),
/// `-1` for the closed branch (`x >= 0`).
///
/// Note the inversion relative to the usual sign function; it is chosen so
/// that the density below is `+1` on points with all coordinates in their
/// closed branches.
pub fn branch_sign(x: i64) -> i8 {
    if x < 0 {
        1
    } else {
        -1
    }
}

/// Defining data of a twisted cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSpec {
    n: usize,
    /// Upper triangle in row-major order: `c_12, c_13, ..., c_1n, c_23, ...`.
    c: Vec<i64>,
    ell: Vec<i64>,
}

/// A lattice point of the cube together with its density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedLatticePoint {
    pub coords: Vec<i64>,
    pub sign: i8,
}

/// All lattice points of a cube, in ascending lexicographic order of
/// `(x_n, ..., x_1)`, i.e. the last coordinate varies slowest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedLatticeSet {
    points: Vec<SignedLatticePoint>,
}

impl SignedLatticeSet {
    pub fn points(&self) -> &[SignedLatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points with density `+1`.
    pub fn positive_count(&self) -> usize {
        self.points.iter().filter(|p| p.sign > 0).count()
    }

    /// Number of points with density `-1`.
    pub fn negative_count(&self) -> usize {
        self.points.iter().filter(|p| p.sign < 0).count()
    }

    /// Sum of the densities of all points.
    pub fn total_weight(&self) -> i64 {
        self.points.iter().map(|p| i64::from(p.sign)).sum()
    }
}

/// Outcome of the recursive positivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursivePositivity {
    pub holds: bool,
    pub violation: Option<PositivityViolation>,
}

/// First failure found by the recursive positivity check: the bound for
/// `coordinate` evaluates to the negative `value` at `vertex`, a corner point
/// of the sub-cube on the later coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityViolation {
    pub coordinate: usize,
    pub vertex: Vec<i64>,
    pub value: i64,
}

impl CubeSpec {
    /// Builds a cube spec from sparse upper-triangle entries.
    ///
    /// `c_entries` lists `(i, j, c_ij)` with `1 <= i < j <= n`; pairs not
    /// listed are zero.  Duplicate pairs and out-of-range indices are usage
    /// errors, as is an `ell` of the wrong length.
    pub fn new(n: usize, c_entries: &[(usize, usize, i64)], ell: &[i64]) -> Result<CubeSpec> {
        if ell.len() != n {
            return Err(Error::usage(format!(
                "ell has {} entries but n = {}",
                ell.len(),
                n
            )));
        }
        let mut c = vec![0i64; n * n.saturating_sub(1) / 2];
        let mut seen = vec![false; c.len()];
        for &(i, j, value) in c_entries {
            if i < 1 || j <= i || j > n {
                return Err(Error::usage(format!(
                    "c entry ({i}, {j}) is outside the strict upper triangle of size {n}"
                )));
            }
            let idx = upper_index(n, i, j);
            if seen[idx] {
                return Err(Error::usage(format!("c entry ({i}, {j}) given twice")));
            }
            seen[idx] = true;
            c[idx] = value;
        }
        Ok(CubeSpec {
            n,
            c,
            ell: ell.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> &[i64] {
        &self.ell
    }

    /// The entry `c_ij`; requires `1 <= i < j <= n`.
    pub fn c_entry(&self, i: usize, j: usize) -> Result<i64> {
        if i < 1 || j <= i || j > self.n {
            return Err(Error::usage(format!(
                "c index ({i}, {j}) is outside the strict upper triangle of size {}",
                self.n
            )));
        }
        Ok(self.c[upper_index(self.n, i, j)])
    }

    /// Every upper-triangle entry as `(i, j, c_ij)`, zeros included, ordered
    /// by row then column.
    pub fn c_triples(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::with_capacity(self.c.len());
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                out.push((i, j, self.c[upper_index(self.n, i, j)]));
            }
        }
        out
    }

    fn c_at(&self, i: usize, j: usize) -> i64 {
        self.c[upper_index(self.n, i, j)]
    }

    /// Evaluates the affine bound for coordinate `j` at the later coordinates
    /// `tail = (x_{j+1}, ..., x_n)`.
    pub fn bound(&self, j: usize, tail: &[i64]) -> Result<i64> {
        self.check_slot(j, tail.len())?;
        let mut acc = self.ell[j - 1];
        for (offset, &x) in tail.iter().enumerate() {
            let term = self
                .c_at(j, j + 1 + offset)
                .checked_mul(x)
                .ok_or(Error::Overflow("coordinate bound"))?;
            acc = acc
                .checked_sub(term)
                .ok_or(Error::Overflow("coordinate bound"))?;
        }
        Ok(acc)
    }

    /// Rational-point version of [`CubeSpec::bound`].
    pub fn bound_rational(&self, j: usize, tail: &[Rational]) -> Result<Rational> {
        self.check_slot(j, tail.len())?;
        let mut acc = Rational::from_integer(self.ell[j - 1]);
        for (offset, x) in tail.iter().enumerate() {
            let coeff = Rational::from_integer(self.c_at(j, j + 1 + offset));
            let term = coeff
                .checked_mul(x)
                .ok_or(Error::Overflow("coordinate bound"))?;
            acc = acc
                .checked_sub(&term)
                .ok_or(Error::Overflow("coordinate bound"))?;
        }
        Ok(acc)
    }

    /// Bound scaled by a positive denominator: returns `denom * A_j(x)` for
    /// the point with scaled coordinates `tail[k] = denom * x_k`.  Keeps grid
    /// arithmetic in integers.
    pub(crate) fn bound_scaled(&self, j: usize, tail: &[i64], denom: i64) -> Result<i64> {
        self.check_slot(j, tail.len())?;
        let mut acc = self.ell[j - 1]
            .checked_mul(denom)
            .ok_or(Error::Overflow("scaled coordinate bound"))?;
        for (offset, &x) in tail.iter().enumerate() {
            let term = self
                .c_at(j, j + 1 + offset)
                .checked_mul(x)
                .ok_or(Error::Overflow("scaled coordinate bound"))?;
            acc = acc
                .checked_sub(term)
                .ok_or(Error::Overflow("scaled coordinate bound"))?;
        }
        Ok(acc)
    }

    fn check_slot(&self, j: usize, tail_len: usize) -> Result<()> {
        if j < 1 || j > self.n {
            return Err(Error::usage(format!(
                "coordinate {j} out of range for dimension {}",
                self.n
            )));
        }
        if tail_len != self.n - j {
            return Err(Error::usage(format!(
                "tail for coordinate {j} must have {} entries, got {tail_len}",
                self.n - j
            )));
        }
        Ok(())
    }

    fn check_point_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::usage(format!(
                "point has {len} coordinates but the cube has dimension {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Whether coordinate `k` of `point` satisfies its interval condition:
    /// `0 <= x_k <= A_k(x)` or `A_k(x) < x_k < 0`.
    pub fn coordinate_admissible(&self, k: usize, point: &[i64]) -> Result<bool> {
        self.check_point_len(point.len())?;
        let a = self.bound(k, &point[k..])?;
        let x = point[k - 1];
        Ok((0 <= x && x <= a) || (a < x && x < 0))
    }

    /// Rational-point version of [`CubeSpec::coordinate_admissible`].
    pub fn coordinate_admissible_rational(&self, k: usize, point: &[Rational]) -> Result<bool> {
        self.check_point_len(point.len())?;
        let a = self.bound_rational(k, &point[k..])?;
        let x = point[k - 1];
        let zero = Rational::zero();
        Ok((zero <= x && x <= a) || (a < x && x < zero))
    }

    /// Whether the integer point lies in the cube.
    pub fn contains(&self, point: &[i64]) -> Result<bool> {
        self.check_point_len(point.len())?;
        for k in 1..=self.n {
            if !self.coordinate_admissible(k, point)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the rational point lies in the cube.
    pub fn contains_rational(&self, point: &[Rational]) -> Result<bool> {
        self.check_point_len(point.len())?;
        for k in 1..=self.n {
            if !self.coordinate_admissible_rational(k, point)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Membership for the point with scaled coordinates `point[k] = denom * x_k`.
    pub(crate) fn contains_scaled(&self, point: &[i64], denom: i64) -> Result<bool> {
        self.check_point_len(point.len())?;
        for k in 1..=self.n {
            let a = self.bound_scaled(k, &point[k..], denom)?;
            let x = point[k - 1];
            if !((0 <= x && x <= a) || (a < x && x < 0)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Density of the cube at an integer point: `0` outside, otherwise
    /// `(-1)^n` times the product of the branch signs of the coordinates.
    pub fn density(&self, point: &[i64]) -> Result<i8> {
        if !self.contains(point)? {
            return Ok(0);
        }
        let mut sign: i8 = if self.n.is_multiple_of(2) { 1 } else { -1 };
        for &x in point {
            sign *= branch_sign(x);
        }
        Ok(sign)
    }

    /// Enumerates every lattice point of the cube with its density.
    ///
    /// Coordinates are chosen from the last to the first, ascending within
    /// each slot, so the result is lexicographically sorted by
    /// `(x_n, ..., x_1)`.  Fails with a capacity error once more than
    /// `limits.point_cap` points have been produced.
    pub fn lattice_points(&self, limits: &Limits) -> Result<SignedLatticeSet> {
        let mut points = Vec::new();
        let mut coords = vec![0i64; self.n];
        self.collect_points(self.n, &mut coords, limits, &mut points)?;
        Ok(SignedLatticeSet { points })
    }

    fn collect_points(
        &self,
        j: usize,
        coords: &mut Vec<i64>,
        limits: &Limits,
        out: &mut Vec<SignedLatticePoint>,
    ) -> Result<()> {
        if j == 0 {
            if out.len() as u64 >= limits.point_cap {
                return Err(Error::Capacity {
                    what: "lattice point enumeration",
                    cap: limits.point_cap,
                });
            }
            let mut sign: i8 = if self.n.is_multiple_of(2) { 1 } else { -1 };
            for &x in coords.iter() {
                sign *= branch_sign(x);
            }
            out.push(SignedLatticePoint {
                coords: coords.clone(),
                sign,
            });
            return Ok(());
        }
        let a = self.bound(j, &coords[j..])?;
        let (lo, hi) = if a >= 0 { (0, a) } else { (a + 1, -1) };
        for x in lo..=hi {
            coords[j - 1] = x;
            self.collect_points(j - 1, coords, limits, out)?;
        }
        coords[j - 1] = 0;
        Ok(())
    }

    /// The sub-cube on the last `k` coordinates; requires `1 <= k <= n`.
    ///
    /// Its defining data are the rows and entries of `c` and `ell` indexed by
    /// the last `k` coordinates, reindexed to `1..=k`.
    pub fn truncated(&self, k: usize) -> Result<CubeSpec> {
        if k < 1 || k > self.n {
            return Err(Error::usage(format!(
                "truncation size {k} out of range for dimension {}",
                self.n
            )));
        }
        let offset = self.n - k;
        let mut entries = Vec::new();
        for i in 1..=k {
            for j in (i + 1)..=k {
                entries.push((i, j, self.c_at(i + offset, j + offset)));
            }
        }
        CubeSpec::new(k, &entries, &self.ell[offset..])
    }

    /// Checks the recursive positivity condition: for every coordinate `k`,
    /// the bound `A_k` must be nonnegative on the whole closed region
    /// described by the later coordinates.
    ///
    /// Because each bound is affine it suffices to test the corner points of
    /// the sub-cube on the later coordinates, provided those have already
    /// passed; coordinates are therefore scanned from `n` downward, and the
    /// first failure is reported with the corner that exhibits it.
    pub fn check_recursive_positivity(&self) -> Result<RecursivePositivity> {
        if self.n > 63 {
            return Err(Error::Capacity {
                what: "recursive positivity corner scan",
                cap: 63,
            });
        }
        for k in (1..=self.n).rev() {
            let tail_dim = self.n - k;
            let tail_cube = if tail_dim == 0 {
                CubeSpec::new(0, &[], &[])?
            } else {
                self.truncated(tail_dim)?
            };
            for mask in lex_minus_masks(tail_dim) {
                let vertex = corner_vector(&tail_cube, mask)?;
                let value = self.bound(k, &vertex)?;
                if value < 0 {
                    return Ok(RecursivePositivity {
                        holds: false,
                        violation: Some(PositivityViolation {
                            coordinate: k,
                            vertex,
                            value,
                        }),
                    });
                }
            }
        }
        Ok(RecursivePositivity {
            holds: true,
            violation: None,
        })
    }
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    // Entries before row i: (i-1) rows of lengths n-1, n-2, ...
    let before = (i - 1) * (2 * n - i) / 2;
    before + (j - i - 1)
}

/// The corner point of the cube selected by a choice of branch per
/// coordinate: slot `j` is `0` when bit `j-1` of `minus_mask` is clear, and
/// the bound evaluated at the already-chosen later slots when it is set.
pub(crate) fn corner_vector(spec: &CubeSpec, minus_mask: u64) -> Result<Vec<i64>> {
    let n = spec.n();
    let mut m = vec![0i64; n];
    for j in (1..=n).rev() {
        if (minus_mask >> (j - 1)) & 1 == 1 {
            m[j - 1] = spec.bound(j, &m[j..])?;
        }
    }
    Ok(m)
}

/// All `2^n` branch masks in lexicographic order of the corresponding sign
/// tuples `(s_1, ..., s_n)` with minus before plus.  Requires `n <= 63`.
pub(crate) fn lex_minus_masks(n: usize) -> impl Iterator<Item = u64> {
    debug_assert!(n <= 63);
    (0..(1u64 << n)).map(move |b| {
        let mut mask = 0u64;
        for j in 1..=n {
            if (b >> (n - j)) & 1 == 0 {
                mask |= 1 << (j - 1);
            }
        }
        mask
    })
}
