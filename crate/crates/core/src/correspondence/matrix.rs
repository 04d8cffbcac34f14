//! The lower-triangular transfer matrix and its exact solve.

use super::data::RelativeData;
use super::model::FormalPairModel;
use super::order::{precedes, SearchOptions};
use crate::arith::{self, int, Rational};
use crate::error::{Error, Result};
use crate::invariants::{relative_invariant, ProperInsertionPair};
use crate::rank::RankedLabel;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Square matrix of rationals, serialized as nested arrays of `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix {
    #[serde(with = "arith::serde_rational_mat")]
    pub rows: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        super::lattice::mat_vec(&self.rows, x)
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().skip(i + 1).all(Zero::is_zero))
    }
}

/// A vector of rationals, serialized as an array of `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVector(#[serde(with = "arith::serde_rational_vec")] pub Vec<Rational>);

/// One supplied off-diagonal entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffDiagonalEntry {
    pub row: usize,
    pub col: usize,
    #[serde(with = "arith::serde_rational")]
    pub value: Rational,
}

/// The gluing coefficient multiplying each diagonal entry.
#[derive(Clone, Default)]
pub enum CoefficientRule {
    /// Product of contact orders; 1 for no divisor markings.
    #[default]
    ContactProduct,
    Unit,
    Custom(Arc<dyn Fn(&RelativeData) -> Rational + Send + Sync>),
}

impl fmt::Debug for CoefficientRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRule::ContactProduct => write!(f, "ContactProduct"),
            CoefficientRule::Unit => write!(f, "Unit"),
            CoefficientRule::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl CoefficientRule {
    pub fn apply(&self, rd: &RelativeData) -> Rational {
        match self {
            CoefficientRule::ContactProduct => rd.relative_markings().map(|m| m.contact.clone()).product(),
            CoefficientRule::Unit => Rational::one(),
            CoefficientRule::Custom(f) => f(rd),
        }
    }
}

/// Product of the fiber-class invariants of the minimal companion of `rd`.
pub fn companion_invariant(model: &FormalPairModel, rd: &RelativeData) -> Result<Rational> {
    let mut acc = Rational::one();
    for m in rd.relative_markings() {
        let z = model.z_sector(&m.sector)?;
        let ranked = RankedLabel::new(&z.local_model, m.contact.clone(), m.insertion.ell)?;
        let pair = ProperInsertionPair {
            c: ranked.rank(&z.local_model) - 1,
            i: m.insertion.j,
            j: m.insertion.j,
            d: m.insertion.ell,
        };
        acc *= relative_invariant(&z.local_model, &pair)?;
    }
    Ok(acc)
}

/// Builds `L` over `basis`: diagonal from the companion invariants, below
/// the diagonal from `offdiag`, zero above.
pub fn assemble_l(
    model: &FormalPairModel,
    basis: &[RelativeData],
    offdiag: &[OffDiagonalEntry],
    rule: &CoefficientRule,
    opts: SearchOptions,
) -> Result<Matrix> {
    let n = basis.len();
    let mut rows = Matrix::identity(n).rows;
    for (i, rd) in basis.iter().enumerate() {
        let d = rule.apply(rd) * companion_invariant(model, rd)?;
        if d.is_zero() {
            return Err(Error::ZeroDiagonal(i));
        }
        rows[i][i] = d;
    }
    let mut seen = BTreeMap::new();
    for e in offdiag {
        if e.row >= n || e.col >= n {
            return Err(Error::DimensionMismatch(format!(
                "entry ({}, {}) outside a {n}x{n} matrix",
                e.row, e.col
            )));
        }
        let below = e.col < e.row
            && basis[e.col] != basis[e.row]
            && precedes(model, &basis[e.col], &basis[e.row], opts)?;
        if !below {
            return Err(Error::OffdiagNotBelow { row: e.row, col: e.col });
        }
        seen.insert((e.row, e.col), e.value.clone());
    }
    for ((r, c), v) in seen {
        rows[r][c] = v;
    }
    Ok(Matrix { rows })
}

/// Forward substitution for `L x = v`.
pub fn solve_lower_triangular(l: &Matrix, v: &[Rational]) -> Result<Vec<Rational>> {
    let n = l.dim();
    if l.rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!("vector has length {}, matrix is {n}x{n}", v.len())));
    }
    for (i, row) in l.rows.iter().enumerate() {
        if let Some(j) = (i + 1..n).find(|&j| !row[j].is_zero()) {
            return Err(Error::OffdiagNotBelow { row: i, col: j });
        }
    }
    let mut x: Vec<Rational> = Vec::with_capacity(n);
    for i in 0..n {
        let row = &l.rows[i];
        if row[i].is_zero() {
            return Err(Error::ZeroDiagonal(i));
        }
        let partial: Rational = (0..i).map(|j| &row[j] * &x[j]).sum();
        x.push((&v[i] - partial) / &row[i]);
    }
    Ok(x)
}
