//! Exact linear algebra over the rationals for the class lattices.

use crate::arith::Rational;
use num_traits::Zero;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(q: &Rational, v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| q * x).collect()
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Reduced row echelon form of the augmented matrix `[m | rhs]`, returning
/// the pivot columns among the first `cols` columns.
fn reduce(aug: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..aug.len()).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(row, p);
        let inv = aug[row][col].recip();
        for x in aug[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..aug.len() {
            if i != row && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                let pivot_row = aug[row].clone();
                for (x, y) in aug[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == aug.len() {
            break;
        }
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut work = m.to_vec();
    reduce(&mut work, cols).len()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Inconsistent,
    Underdetermined,
}

/// Solves `m x = rhs` exactly.
pub fn solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Solution {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = reduce(&mut aug, cols);
    if aug[pivots.len()..].iter().any(|row| !row[cols].is_zero()) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined;
    }
    Solution::Unique((0..cols).map(|i| aug[i][cols].clone()).collect())
}
