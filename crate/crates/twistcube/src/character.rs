//! Formal characters: the signed lattice-point sum of a cube and the
//! Demazure-operator sum it must reproduce.
//!
//! A formal character is a finite integer combination of formal exponentials
//! `e^mu`, with `mu` in fundamental-weight coordinates.  The signed character
//! of a cube derived from `(cartan, lambda, word)` sums the density over the
//! lattice points, placing the point `x` at weight
//! `lambda - sum_k x_k * alpha_{word_k}`.  The independent oracle applies one
//! Demazure operator per letter to `e^lambda`, outermost operator first in
//! the word.

use std::collections::BTreeMap;

use crate::cube::CubeSpec;
use crate::rep::{derive_constants, CartanMatrix};
use crate::{Error, Limits, Result};

/// A finite sum of formal exponentials with integer multiplicities.
///
/// Zero multiplicities are never stored; iteration is in ascending
/// lexicographic weight order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalCharacter {
    terms: BTreeMap<Vec<i64>, i64>,
}

impl FormalCharacter {
    pub fn zero() -> FormalCharacter {
        FormalCharacter::default()
    }

    /// The single term `e^weight`.
    pub fn monomial(weight: Vec<i64>) -> FormalCharacter {
        let mut terms = BTreeMap::new();
        terms.insert(weight, 1);
        FormalCharacter { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, weight: &[i64]) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], i64)> {
        self.terms.iter().map(|(w, &m)| (w.as_slice(), m))
    }

    /// Adds `multiplicity * e^weight`, dropping the term if it cancels.
    pub fn add_term(&mut self, weight: Vec<i64>, multiplicity: i64) -> Result<()> {
        if multiplicity == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(weight);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(multiplicity);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let updated = o
                    .get()
                    .checked_add(multiplicity)
                    .ok_or(Error::Overflow("character multiplicity"))?;
                if updated == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = updated;
                }
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        let mut out = self.clone();
        for (w, m) in other.terms() {
            out.add_term(w.to_vec(), m)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        let mut out = self.clone();
        for (w, m) in other.terms() {
            let neg = m.checked_neg().ok_or(Error::Overflow("character multiplicity"))?;
            out.add_term(w.to_vec(), neg)?;
        }
        Ok(out)
    }

    /// Sum of all multiplicities.
    pub fn total_multiplicity(&self) -> Result<i64> {
        let mut total = 0i64;
        for (_, m) in self.terms() {
            total = total
                .checked_add(m)
                .ok_or(Error::Overflow("character multiplicity"))?;
        }
        Ok(total)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|&m| m >= 0)
    }
}

/// `lambda - sum_k x_k * alphas[k]` in fundamental-weight coordinates, where
/// `alphas[k]` is the simple root of the `k`-th word letter.
fn weight_of_point(lambda: &[i64], alphas: &[Vec<i64>], x: &[i64]) -> Result<Vec<i64>> {
    let mut mu = lambda.to_vec();
    for (k, alpha) in alphas.iter().enumerate() {
        for (mi, &ai) in mu.iter_mut().zip(alpha) {
            let term = x[k]
                .checked_mul(ai)
                .ok_or(Error::Overflow("character weight"))?;
            *mi = mi
                .checked_sub(term)
                .ok_or(Error::Overflow("character weight"))?;
        }
    }
    Ok(mu)
}

/// Sums the density of every lattice point of the cube at its weight.
///
/// `spec` must be exactly the cube derived from `(cartan, lambda, word)`;
/// passing anything else is a usage error, since the weight map would be
/// meaningless.
pub fn signed_character(
    spec: &CubeSpec,
    cartan: &CartanMatrix,
    lambda: &[i64],
    word: &[usize],
    limits: &Limits,
) -> Result<FormalCharacter> {
    let derived = derive_constants(cartan, lambda, word)?;
    if derived != *spec {
        return Err(Error::usage(
            "spec does not match the cube derived from (cartan, lambda, word)".to_string(),
        ));
    }
    let alphas = word
        .iter()
        .map(|&letter| cartan.simple_root(letter))
        .collect::<Result<Vec<_>>>()?;
    let mut character = FormalCharacter::zero();
    for point in spec.lattice_points(limits)?.points() {
        let mu = weight_of_point(lambda, &alphas, &point.coords)?;
        character.add_term(mu, i64::from(point.sign))?;
    }
    Ok(character)
}

/// Applies the Demazure operator for the `i`-th simple root to a character,
/// term by term.
///
/// On a monomial `e^mu` with `m = <mu, alpha_i^vee>` (coordinate `i` of
/// `mu`), the operator produces the string `e^mu + e^{mu - alpha_i} + ... +
/// e^{mu - m alpha_i}` when `m >= 0`, zero when `m = -1`, and
/// `-(e^{mu + alpha_i} + ... + e^{mu + (-m-1) alpha_i})` when `m <= -2`.
pub fn demazure_operator(
    cartan: &CartanMatrix,
    i: usize,
    f: &FormalCharacter,
) -> Result<FormalCharacter> {
    let alpha = cartan.simple_root(i)?;
    let rank = cartan.rank();
    let mut out = FormalCharacter::zero();
    for (mu, mult) in f.terms() {
        if mu.len() != rank {
            return Err(Error::usage(format!(
                "character term has {} coordinates but the Cartan matrix has rank {rank}",
                mu.len()
            )));
        }
        let m = mu[i - 1];
        if m >= 0 {
            for t in 0..=m {
                out.add_term(shift(mu, &alpha, -t)?, mult)?;
            }
        } else if m <= -2 {
            let neg = mult
                .checked_neg()
                .ok_or(Error::Overflow("character multiplicity"))?;
            for t in 1..=(-m - 1) {
                out.add_term(shift(mu, &alpha, t)?, neg)?;
            }
        }
    }
    Ok(out)
}

/// `mu + t * alpha` componentwise.
fn shift(mu: &[i64], alpha: &[i64], t: i64) -> Result<Vec<i64>> {
    mu.iter()
        .zip(alpha)
        .map(|(&mi, &ai)| {
            let term = t.checked_mul(ai).ok_or(Error::Overflow("character weight"))?;
            mi.checked_add(term).ok_or(Error::Overflow("character weight"))
        })
        .collect()
}

/// The Demazure oracle: operators for the word applied to `e^lambda`, the
/// first letter outermost, so the operator for the last letter acts first.
pub fn demazure_character(
    cartan: &CartanMatrix,
    lambda: &[i64],
    word: &[usize],
) -> Result<FormalCharacter> {
    if lambda.len() != cartan.rank() {
        return Err(Error::usage(format!(
            "weight has {} coordinates but the Cartan matrix has rank {}",
            lambda.len(),
            cartan.rank()
        )));
    }
    let mut f = FormalCharacter::monomial(lambda.to_vec());
    for &letter in word.iter().rev() {
        f = demazure_operator(cartan, letter, &f)?;
    }
    Ok(f)
}

/// Side-by-side evaluation of the signed character and the Demazure oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterComparison {
    pub equal: bool,
    pub signed: FormalCharacter,
    pub demazure: FormalCharacter,
    /// `signed - demazure`; zero exactly when `equal`.
    pub difference: FormalCharacter,
}

/// Computes both characters and their difference.
pub fn compare_characters(
    spec: &CubeSpec,
    cartan: &CartanMatrix,
    lambda: &[i64],
    word: &[usize],
    limits: &Limits,
) -> Result<CharacterComparison> {
    let signed = signed_character(spec, cartan, lambda, word, limits)?;
    let demazure = demazure_character(cartan, lambda, word)?;
    let difference = signed.checked_sub(&demazure)?;
    Ok(CharacterComparison {
        equal: difference.is_zero(),
        signed,
        demazure,
        difference,
    })
}
