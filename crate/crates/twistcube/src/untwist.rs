//! Deciding whether a cube is untwisted.
//!
//! Four finite checks characterize the same property and are always evaluated
//! together:
//!
//! * every Cartier datum lies in the cube,
//! * every Cartier datum has nonnegative coordinates,
//! * the recursive positivity condition holds,
//! * the cube coincides with the polytope of sections (checked on lattice
//!   points and Cartier corners).
//!
//! A cube passing them is exactly one whose region is closed, and exactly one
//! whose divisor is basepoint-free.  [`is_untwisted`] runs all checks plus
//! the basepoint-freeness test and refuses to report a verdict if they
//! disagree, since disagreement can only mean a bug in one of the routes.
//!
//! The module also hosts two supporting constructions: a rational witness
//! showing that every Cartier datum is a limit of cube points (so the data
//! always lie in the closure), and a grid-based convexity oracle used to
//! exercise the sufficiency direction of positivity.

use std::cmp::{max, min};

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Zero};

use crate::cube::{corner_vector, CubeSpec};
use crate::toric::{
    all_cartier_points, is_basepoint_free, section_polytope_contains, BasepointWitness, SignVector,
};
use crate::{Error, Limits, Rational, Result};

/// Whether every Cartier datum lies in the cube.
pub fn cartier_points_in_cube(spec: &CubeSpec, limits: &Limits) -> Result<bool> {
    for pt in all_cartier_points(spec, limits)? {
        if !spec.contains(&pt.m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every Cartier datum has all coordinates nonnegative.
pub fn cartier_points_nonnegative(spec: &CubeSpec, limits: &Limits) -> Result<bool> {
    for pt in all_cartier_points(spec, limits)? {
        if pt.m.iter().any(|&x| x < 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the recursive positivity condition holds.
pub fn recursive_positivity_holds(spec: &CubeSpec) -> Result<bool> {
    Ok(spec.check_recursive_positivity()?.holds)
}

/// Whether the cube coincides with the polytope of sections.
///
/// Finitely checkable form: every lattice point of the cube lies in the
/// polytope, every Cartier corner lies in the cube, and the corners are
/// nonnegative (so no part of the polytope is missed).
pub fn cube_equals_polytope(spec: &CubeSpec, limits: &Limits) -> Result<bool> {
    for point in spec.lattice_points(limits)?.points() {
        if !section_polytope_contains(spec, &point.coords)? {
            return Ok(false);
        }
    }
    for pt in all_cartier_points(spec, limits)? {
        if !spec.contains(&pt.m)? {
            return Ok(false);
        }
    }
    cartier_points_nonnegative(spec, limits)
}

/// Verdict of [`is_untwisted`] together with every individual check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UntwistReport {
    pub untwisted: bool,
    pub cartier_in_cube: bool,
    pub cartier_nonnegative: bool,
    pub recursive_positivity: bool,
    pub cube_equals_polytope: bool,
    pub basepoint_free: bool,
    /// Necessary consequence recorded for convenience: untwisted cubes have
    /// all `ell_j >= 0`.
    pub ell_nonneg: bool,
    /// Lexicographically first failing cone when not basepoint-free.
    pub witness: Option<BasepointWitness>,
}

fn consolidate(
    checks: [bool; 5],
    ell_nonneg: bool,
    witness: Option<BasepointWitness>,
) -> Result<UntwistReport> {
    let [in_cube, nonneg, positivity, equals_polytope, basepoint_free] = checks;
    if checks.iter().any(|&c| c != in_cube) {
        return Err(Error::Inconsistency(format!(
            "equivalent untwistedness checks disagree: cartier_in_cube={in_cube}, \
             cartier_nonnegative={nonneg}, recursive_positivity={positivity}, \
             cube_equals_polytope={equals_polytope}, basepoint_free={basepoint_free}"
        )));
    }
    Ok(UntwistReport {
        untwisted: in_cube,
        cartier_in_cube: in_cube,
        cartier_nonnegative: nonneg,
        recursive_positivity: positivity,
        cube_equals_polytope: equals_polytope,
        basepoint_free,
        ell_nonneg,
        witness,
    })
}

/// Runs every characterization of untwistedness and cross-checks them.
///
/// The returned verdict is the common answer; if any two routes disagree the
/// result is an inconsistency error rather than a report.
pub fn is_untwisted(spec: &CubeSpec, limits: &Limits) -> Result<UntwistReport> {
    let in_cube = cartier_points_in_cube(spec, limits)?;
    let nonneg = cartier_points_nonnegative(spec, limits)?;
    let positivity = recursive_positivity_holds(spec)?;
    let equals_polytope = cube_equals_polytope(spec, limits)?;
    let freeness = is_basepoint_free(spec, limits)?;
    let ell_nonneg = spec.ell().iter().all(|&l| l >= 0);
    consolidate(
        [in_cube, nonneg, positivity, equals_polytope, freeness.is_free],
        ell_nonneg,
        freeness.witness,
    )
}

/// Whether "untwisted implies all `ell_j >= 0`" holds for this spec; always
/// true mathematically, exposed so suites can assert it instance by instance.
pub fn positivity_necessity_holds(spec: &CubeSpec, limits: &Limits) -> Result<bool> {
    let report = is_untwisted(spec, limits)?;
    Ok(!report.untwisted || report.ell_nonneg)
}

/// Produces a rational point of the cube within `epsilon` (max-norm) of the
/// Cartier datum of the cone selected by `sigma`.
///
/// Such a point always exists: each coordinate of the datum is either `0` or
/// the bound value, and both are limits of the corresponding branch.  The
/// construction walks coordinates from last to first, keeping coordinate `j`
/// within a budget `delta_j` of its target; budgets shrink geometrically so
/// that earlier bounds move by less than the slack available to them.  The
/// result is verified exactly before being returned.
pub fn closure_witness(
    spec: &CubeSpec,
    sigma: SignVector,
    epsilon: Rational,
) -> Result<Vec<Rational>> {
    let n = spec.n();
    if sigma.len() != n {
        return Err(Error::usage(format!(
            "sign vector of length {} does not match dimension {n}",
            sigma.len()
        )));
    }
    if epsilon <= Rational::zero() {
        return Err(Error::usage("epsilon must be positive".to_string()));
    }
    let target = corner_vector(spec, sigma.mask())?;

    let half = Rational::new(1, 2);
    let eps0 = min(rat_mul(epsilon, half)?, half);
    let mut row_norm_max: i64 = 1;
    for (_, _, value) in spec.c_triples() {
        let abs = value
            .checked_abs()
            .ok_or(Error::Overflow("closure witness budget"))?;
        row_norm_max = row_norm_max.max(abs);
    }
    // Sum of |c_jk| over any row is at most (n-1) * max entry.
    let row_bound = row_norm_max
        .checked_mul(n.saturating_sub(1).max(1) as i64)
        .ok_or(Error::Overflow("closure witness budget"))?;
    let shrink = Rational::new(
        1,
        row_bound
            .checked_mul(4)
            .ok_or(Error::Overflow("closure witness budget"))?,
    );
    let mut budgets = Vec::with_capacity(n);
    let mut current = eps0;
    for _ in 0..n {
        budgets.push(current);
        current = rat_mul(current, shrink)?;
    }

    let zero = Rational::zero();
    let mut x = vec![zero; n];
    for j in (1..=n).rev() {
        let a = spec.bound_rational(j, &x[j..])?;
        let goal = Rational::from_integer(target[j - 1]);
        let delta = budgets[j - 1];
        x[j - 1] = if !sigma.is_minus(j) {
            if a >= zero {
                zero
            } else {
                rat_mul(max(a, rat_sub(zero, delta)?), half)?
            }
        } else if goal >= zero {
            if a >= zero {
                min(goal, a)
            } else {
                rat_mul(a, half)?
            }
        } else {
            let lo = max(a, goal);
            let hi = min(zero, rat_add(goal, delta)?);
            rat_mul(rat_add(lo, hi)?, half)?
        };
    }

    if !spec.contains_rational(&x)? {
        return Err(Error::Inconsistency(
            "closure witness construction left the cube".to_string(),
        ));
    }
    for (xi, &ti) in x.iter().zip(&target) {
        let dist = rat_sub(*xi, Rational::from_integer(ti))?;
        let dist = if dist < zero { rat_sub(zero, dist)? } else { dist };
        if dist >= epsilon {
            return Err(Error::Inconsistency(
                "closure witness construction exceeded its distance budget".to_string(),
            ));
        }
    }
    Ok(x)
}

fn rat_add(a: Rational, b: Rational) -> Result<Rational> {
    a.checked_add(&b).ok_or(Error::Overflow("rational arithmetic"))
}

fn rat_sub(a: Rational, b: Rational) -> Result<Rational> {
    a.checked_sub(&b).ok_or(Error::Overflow("rational arithmetic"))
}

fn rat_mul(a: Rational, b: Rational) -> Result<Rational> {
    a.checked_mul(&b).ok_or(Error::Overflow("rational arithmetic"))
}

/// A pair of grid points of the cube whose midpoint falls outside it.
/// Coordinates are stored scaled by `denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridViolation {
    pub denominator: u32,
    pub p_scaled: Vec<i64>,
    pub q_scaled: Vec<i64>,
}

impl GridViolation {
    pub fn p(&self) -> Vec<Rational> {
        unscale(&self.p_scaled, self.denominator)
    }

    pub fn q(&self) -> Vec<Rational> {
        unscale(&self.q_scaled, self.denominator)
    }

    pub fn midpoint(&self) -> Vec<Rational> {
        self.p_scaled
            .iter()
            .zip(&self.q_scaled)
            .map(|(&a, &b)| Rational::new(a + b, 2 * i64::from(self.denominator)))
            .collect()
    }
}

fn unscale(scaled: &[i64], denominator: u32) -> Vec<Rational> {
    scaled
        .iter()
        .map(|&v| Rational::new(v, i64::from(denominator)))
        .collect()
}

/// Evidence about convexity gathered from the `1/denominator` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridConvexity {
    pub denominator: u32,
    pub convex_on_grid: bool,
    pub violation: Option<GridViolation>,
}

/// Tests midpoint convexity of the cube on the `1/denominator` grid.
///
/// Enumerates every grid point of the cube, then checks that the midpoint of
/// each pair still lies in the cube (midpoints live on the doubled grid, so
/// the test stays in integers).  A reported violation is a proof of
/// non-convexity; a pass is evidence of convexity at this resolution, not a
/// proof.  Both the number of grid points and the number of pairs are subject
/// to `limits.point_cap`.
pub fn grid_convexity(spec: &CubeSpec, denominator: u32, limits: &Limits) -> Result<GridConvexity> {
    if denominator == 0 {
        return Err(Error::usage("grid denominator must be positive".to_string()));
    }
    let d = i64::from(denominator);
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut coords = vec![0i64; spec.n()];
    collect_grid_points(spec, d, spec.n(), &mut coords, limits, &mut points)?;

    let count = points.len() as u64;
    let pairs = count.saturating_mul(count.saturating_sub(1)) / 2;
    if pairs > limits.point_cap {
        return Err(Error::Capacity {
            what: "grid midpoint pairs",
            cap: limits.point_cap,
        });
    }

    let doubled = d
        .checked_mul(2)
        .ok_or(Error::Overflow("grid midpoint test"))?;
    let mut sum = vec![0i64; spec.n()];
    for (i, p) in points.iter().enumerate() {
        for q in points.iter().skip(i + 1) {
            for (s, (&a, &b)) in sum.iter_mut().zip(p.iter().zip(q)) {
                *s = a
                    .checked_add(b)
                    .ok_or(Error::Overflow("grid midpoint test"))?;
            }
            if !spec.contains_scaled(&sum, doubled)? {
                return Ok(GridConvexity {
                    denominator,
                    convex_on_grid: false,
                    violation: Some(GridViolation {
                        denominator,
                        p_scaled: p.clone(),
                        q_scaled: q.clone(),
                    }),
                });
            }
        }
    }
    Ok(GridConvexity {
        denominator,
        convex_on_grid: true,
        violation: None,
    })
}

fn collect_grid_points(
    spec: &CubeSpec,
    d: i64,
    j: usize,
    coords: &mut Vec<i64>,
    limits: &Limits,
    out: &mut Vec<Vec<i64>>,
) -> Result<()> {
    if j == 0 {
        if out.len() as u64 >= limits.point_cap {
            return Err(Error::Capacity {
                what: "grid point enumeration",
                cap: limits.point_cap,
            });
        }
        out.push(coords.clone());
        return Ok(());
    }
    let a = spec.bound_scaled(j, &coords[j..], d)?;
    let (lo, hi) = if a >= 0 { (0, a) } else { (a + 1, -1) };
    for x in lo..=hi {
        coords[j - 1] = x;
        collect_grid_points(spec, d, j - 1, coords, limits, out)?;
    }
    coords[j - 1] = 0;
    Ok(())
}
