//! Deriving cube specs from representation-theoretic data.
//!
//! Inputs are a generalized Cartan matrix, a weight in fundamental-weight
//! coordinates, and a word of simple-root indices.  The word need not be
//! reduced.  Letter `j` of the word contributes coordinate `j` of the cube:
//! `c_ij` is the Cartan pairing of letter `j` against letter `i`, and `ell_j`
//! is the coordinate of the weight at letter `j`.
//!
//! The convention for the matrix is `entry(i, j) = <alpha_j, alpha_i^vee>`;
//! rows are indexed by coroots, so row `i` lists how every simple root pairs
//! against the `i`-th coroot, and column `j` expresses the simple root
//! `alpha_j` in fundamental-weight coordinates.

use crate::cube::CubeSpec;
use crate::{Error, Result};

/// A generalized Cartan matrix: square, `2` on the diagonal, nonpositive off
/// the diagonal, with symmetric zero pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<CartanMatrix> {
        let rank = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::usage(format!(
                    "Cartan matrix row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
        }
        for (i, row) in entries.iter().enumerate() {
            if row[i] != 2 {
                return Err(Error::usage(format!(
                    "Cartan matrix diagonal entry ({0}, {0}) must be 2, found {1}",
                    i + 1,
                    row[i]
                )));
            }
            for (j, &value) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if value > 0 {
                    return Err(Error::usage(format!(
                        "Cartan matrix off-diagonal entry ({}, {}) must be <= 0, found {value}",
                        i + 1,
                        j + 1
                    )));
                }
                if (value == 0) != (entries[j][i] == 0) {
                    return Err(Error::usage(format!(
                        "Cartan matrix entries ({}, {}) and ({}, {}) must vanish together",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(CartanMatrix { entries })
    }

    /// Builds one of the standard finite-type matrices from a label such as
    /// `"A3"`, `"B2"`, or `"G2"`.
    pub fn from_label(label: &str) -> Result<CartanMatrix> {
        let mut chars = label.chars();
        let family = chars.next().ok_or_else(|| Error::usage("empty Cartan label".to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::usage(format!("Cartan label {label:?} has no valid rank")))?;
        let unsupported = || {
            Error::usage(format!(
                "unsupported Cartan label {label:?}; expected A>=1, B>=2, C>=2, D>=3, E6-E8, F4, or G2"
            ))
        };
        match (family, rank) {
            ('A', r) if r >= 1 => Ok(Self::chain(r)),
            ('B', r) if r >= 2 => {
                let mut m = Self::chain(r);
                m.entries[r - 1][r - 2] = -2;
                Ok(m)
            }
            ('C', r) if r >= 2 => {
                let mut m = Self::chain(r);
                m.entries[r - 2][r - 1] = -2;
                Ok(m)
            }
            ('D', r) if r >= 3 => {
                let mut m = Self::chain(r - 1).extended();
                m.entries[r - 3][r - 1] = -1;
                m.entries[r - 1][r - 3] = -1;
                Ok(m)
            }
            ('E', r) if (6..=8).contains(&r) => {
                // Nodes 1-3-4-5-...-r in a chain, node 2 attached to node 4.
                let mut entries = vec![vec![0i64; r]; r];
                for (i, row) in entries.iter_mut().enumerate() {
                    row[i] = 2;
                }
                let mut link = |a: usize, b: usize| {
                    entries[a - 1][b - 1] = -1;
                    entries[b - 1][a - 1] = -1;
                };
                link(1, 3);
                link(2, 4);
                link(3, 4);
                for v in 4..r {
                    link(v, v + 1);
                }
                Ok(CartanMatrix { entries })
            }
            ('F', 4) => Ok(CartanMatrix {
                entries: vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -1, 0],
                    vec![0, -2, 2, -1],
                    vec![0, 0, -1, 2],
                ],
            }),
            ('G', 2) => Ok(CartanMatrix {
                entries: vec![vec![2, -1], vec![-3, 2]],
            }),
            _ => Err(unsupported()),
        }
    }

    /// The type-A matrix of the given rank: a simply-laced chain.
    fn chain(rank: usize) -> CartanMatrix {
        let mut entries = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            entries[i][i] = 2;
            if i + 1 < rank {
                entries[i][i + 1] = -1;
                entries[i + 1][i] = -1;
            }
        }
        CartanMatrix { entries }
    }

    /// The same matrix with one extra isolated node appended.
    fn extended(&self) -> CartanMatrix {
        let rank = self.rank() + 1;
        let mut entries = vec![vec![0i64; rank]; rank];
        for (row, old) in entries.iter_mut().zip(&self.entries) {
            row[..old.len()].copy_from_slice(old);
        }
        entries[rank - 1][rank - 1] = 2;
        CartanMatrix { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// The pairing `<alpha_j, alpha_i^vee>`; indices are 1-based.
    pub fn entry(&self, i: usize, j: usize) -> Result<i64> {
        let rank = self.rank();
        if i < 1 || i > rank || j < 1 || j > rank {
            return Err(Error::usage(format!(
                "Cartan index ({i}, {j}) out of range for rank {rank}"
            )));
        }
        Ok(self.entries[i - 1][j - 1])
    }

    /// The simple root `alpha_j` in fundamental-weight coordinates: column
    /// `j` of the matrix.
    pub fn simple_root(&self, j: usize) -> Result<Vec<i64>> {
        let rank = self.rank();
        if j < 1 || j > rank {
            return Err(Error::usage(format!(
                "simple root index {j} out of range for rank {rank}"
            )));
        }
        Ok((0..rank).map(|i| self.entries[i][j - 1]).collect())
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

fn validate_inputs(cartan: &CartanMatrix, lambda: &[i64], word: &[usize]) -> Result<()> {
    if lambda.len() != cartan.rank() {
        return Err(Error::usage(format!(
            "weight has {} coordinates but the Cartan matrix has rank {}",
            lambda.len(),
            cartan.rank()
        )));
    }
    for (pos, &letter) in word.iter().enumerate() {
        if letter < 1 || letter > cartan.rank() {
            return Err(Error::usage(format!(
                "word letter {} at position {} out of range for rank {}",
                letter,
                pos + 1,
                cartan.rank()
            )));
        }
    }
    Ok(())
}

/// Builds the cube spec attached to `(cartan, lambda, word)`: dimension is
/// the word length, `c_ij = entry(word_i, word_j)` for `i < j`, and
/// `ell_j = lambda_{word_j}`.
pub fn derive_constants(cartan: &CartanMatrix, lambda: &[i64], word: &[usize]) -> Result<CubeSpec> {
    validate_inputs(cartan, lambda, word)?;
    let n = word.len();
    let mut c_entries = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            c_entries.push((i, j, cartan.entry(word[i - 1], word[j - 1])?));
        }
    }
    let ell: Vec<i64> = word.iter().map(|&letter| lambda[letter - 1]).collect();
    CubeSpec::new(n, &c_entries, &ell)
}

/// The two necessary conditions for the derived cube to be untwisted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryReport {
    /// Every root index appearing in the word has nonnegative weight
    /// coordinate.
    pub support_dominant: bool,
    /// Every root index appearing more than once has weight coordinate zero.
    pub repeats_vanish: bool,
    /// Root indices violating the first condition, ascending.
    pub support_violations: Vec<usize>,
    /// Root indices violating the second condition, ascending.
    pub repeat_violations: Vec<usize>,
}

impl NecessaryReport {
    pub fn both_hold(&self) -> bool {
        self.support_dominant && self.repeats_vanish
    }
}

/// Checks the necessary conditions.  Both passing does *not* imply the
/// derived cube is untwisted; the reverse implications are what the checks
/// in [`crate::untwist`] decide.
pub fn necessary_conditions(
    cartan: &CartanMatrix,
    lambda: &[i64],
    word: &[usize],
) -> Result<NecessaryReport> {
    validate_inputs(cartan, lambda, word)?;
    let mut counts = vec![0usize; cartan.rank()];
    for &letter in word {
        counts[letter - 1] += 1;
    }
    let mut support_violations = Vec::new();
    let mut repeat_violations = Vec::new();
    for (idx, &count) in counts.iter().enumerate() {
        if count >= 1 && lambda[idx] < 0 {
            support_violations.push(idx + 1);
        }
        if count >= 2 && lambda[idx] != 0 {
            repeat_violations.push(idx + 1);
        }
    }
    Ok(NecessaryReport {
        support_dominant: support_violations.is_empty(),
        repeats_vanish: repeat_violations.is_empty(),
        support_violations,
        repeat_violations,
    })
}
