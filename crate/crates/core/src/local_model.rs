//! The cyclic local model `Z_r ⋉ C^n` with isotropy weights `beta` and a
//! circle action of weight `alpha`, together with the twisted-sector data of
//! its weighted projectivization.
//!
//! Coordinate indices in the public API are 1-based, matching the usual
//! `z_1, ..., z_n` labelling.

use crate::arith::{self, frac, int, rat, Rational};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct LocalModel {
    r: u32,
    beta: Vec<u32>,
    alpha: Vec<u32>,
}

#[derive(Deserialize)]
struct RawModel {
    r: u32,
    beta: Vec<u32>,
    alpha: Vec<u32>,
}

impl TryFrom<RawModel> for LocalModel {
    type Error = Error;
    fn try_from(raw: RawModel) -> Result<Self> {
        LocalModel::new(raw.r, raw.beta, raw.alpha)
    }
}

impl LocalModel {
    /// Validates `r >= 1`, `1 <= beta_u <= r`, `alpha_u >= 1` and equal lengths.
    pub fn new(r: u32, beta: Vec<u32>, alpha: Vec<u32>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidModel("r must be positive".into()));
        }
        if beta.is_empty() {
            return Err(Error::InvalidModel("need at least one coordinate".into()));
        }
        if beta.len() != alpha.len() {
            return Err(Error::InvalidModel(format!(
                "beta has {} entries, alpha has {}",
                beta.len(),
                alpha.len()
            )));
        }
        if let Some(b) = beta.iter().find(|&&b| b < 1 || b > r) {
            return Err(Error::InvalidModel(format!("beta entry {b} outside [1, {r}]")));
        }
        if alpha.contains(&0) {
            return Err(Error::InvalidModel("alpha entries must be positive".into()));
        }
        Ok(Self { r, beta, alpha })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn beta(&self) -> &[u32] {
        &self.beta
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    /// `|alpha| = sum of the blowup weights`.
    pub fn alpha_total(&self) -> u64 {
        self.alpha.iter().map(|&a| a as u64).sum()
    }

    pub(crate) fn check_coord(&self, u: usize) -> Result<usize> {
        if u == 0 || u > self.n() {
            Err(Error::IndexOutOfRange { index: u, n: self.n() })
        } else {
            Ok(u - 1)
        }
    }

    /// The isotropy group `G_i` of the i-th coordinate point, as distinct
    /// `(b, R mod 1)` pairs.
    pub fn isotropy_group(&self, i: usize) -> Result<BTreeSet<SectorIndex>> {
        let k = self.check_coord(i)?;
        let (r, beta, alpha) = (self.r as i64, self.beta[k] as i64, self.alpha[k] as i64);
        let mut out = BTreeSet::new();
        for b in 0..r {
            for a in 0..alpha {
                out.insert(SectorIndex {
                    b: b as u32,
                    phase: frac(&rat(b * beta + a * r, alpha * r)),
                });
            }
        }
        Ok(out)
    }

    /// Index set of twisted sectors: the union of all isotropy groups.
    pub fn sector_index_set(&self) -> BTreeSet<SectorIndex> {
        (1..=self.n())
            .flat_map(|i| self.isotropy_group(i).expect("index in range"))
            .collect()
    }

    /// `I(delta)`: the coordinates fixed by `delta`.
    pub fn sector_support(&self, delta: &SectorIndex) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for i in 1..=self.n() {
            if self.isotropy_group(i)?.contains(delta) {
                out.insert(i);
            }
        }
        if out.is_empty() {
            return Err(Error::NotASector { b: delta.b, phase: delta.phase.clone() });
        }
        Ok(out)
    }

    /// `tau(R, u) = -beta_u / r + alpha_u R`.
    pub fn tau(&self, big_r: &Rational, u: usize) -> Result<Rational> {
        let k = self.check_coord(u)?;
        Ok(self.tau0(big_r, k))
    }

    pub(crate) fn tau0(&self, big_r: &Rational, k: usize) -> Rational {
        int(self.alpha[k] as i64) * big_r - rat(self.beta[k] as i64, self.r as i64)
    }

    /// Degree shift of `(e^{-2 pi i b / r}, e^{2 pi i R})`: the sum of the
    /// fractional parts of `-(b/r) beta_u + alpha_u R`.
    pub fn degree_shift(&self, b: u32, big_r: &Rational) -> Rational {
        let r = self.r as i64;
        (0..self.n())
            .map(|k| {
                frac(
                    &(int(self.alpha[k] as i64) * big_r
                        - rat(b as i64 * self.beta[k] as i64, r)),
                )
            })
            .sum()
    }

    /// Dimension of the sector of the generator: `#{ j : beta_j = r }`.
    pub fn d_top(&self) -> u32 {
        self.beta.iter().filter(|&&b| b == self.r).count() as u32
    }
}

impl fmt::Display for LocalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} beta={:?} alpha={:?}", self.r, self.beta, self.alpha)
    }
}

/// A twisted sector `(e^{-2 pi i b / r}, e^{2 pi i phase})` with `phase` in `[0, 1)`.
///
/// Ordered lexicographically by `(b, phase)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SectorIndex {
    pub b: u32,
    #[serde(with = "arith::serde_rational")]
    pub phase: Rational,
}

impl SectorIndex {
    pub fn new(b: u32, phase: Rational) -> Self {
        Self { b, phase: frac(&phase) }
    }
}

impl fmt::Display for SectorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.b, self.phase)
    }
}
