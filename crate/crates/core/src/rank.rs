//! Ranking combinatorics of fiber-class labels.
//!
//! Labels are the values `Lambda(j, a) = (beta_j + a r) / (alpha_j r)`. The
//! two rankings count values strictly below (plus one) and weakly below a
//! label; a label with several preimages spreads into a block of ranked
//! labels `(R, d)`, `0 <= d <= D_s(R)`, whose ranks `rk_low(R) - d` are
//! consecutive.

use crate::arith::{floor_i64, int, is_integer, rat, Rational};
use crate::error::{Error, Result};
use crate::local_model::LocalModel;
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;

/// A positive rational in the image of `Lambda` for some local model.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiberClassLabel(Rational);

impl FiberClassLabel {
    pub fn new(model: &LocalModel, value: Rational) -> Result<Self> {
        if in_image(model, &value) {
            Ok(Self(value))
        } else {
            Err(Error::NotInImage(value))
        }
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for FiberClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A label together with its H-power `d`, `0 <= d <= D_s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankedLabel {
    pub label: FiberClassLabel,
    pub ell: u32,
}

impl RankedLabel {
    pub fn new(model: &LocalModel, value: Rational, ell: u32) -> Result<Self> {
        let label = FiberClassLabel::new(model, value)?;
        let max = d_s(model, &label);
        if ell > max {
            return Err(Error::PowerOutOfRange { d: ell, max });
        }
        Ok(Self { label, ell })
    }

    /// The rank `rk_low(R) - ell`, a positive integer.
    pub fn rank(&self, model: &LocalModel) -> u64 {
        rk_pair(model, self.label.value()).1 - self.ell as u64
    }
}

pub fn lambda_value(model: &LocalModel, j: usize, a: u64) -> Result<Rational> {
    let k = model.check_coord(j)?;
    Ok(lambda0(model, k, a))
}

fn lambda0(model: &LocalModel, k: usize, a: u64) -> Rational {
    let r = model.r() as i64;
    rat(
        model.beta()[k] as i64 + a as i64 * r,
        model.alpha()[k] as i64 * r,
    )
}

/// Largest `a` with `Lambda(j, a) <= R`, if any.
fn a_max(model: &LocalModel, k: usize, big_r: &Rational) -> Option<u64> {
    let r = model.r() as i64;
    let bound = (big_r * int(model.alpha()[k] as i64 * r) - int(model.beta()[k] as i64)) / int(r);
    let a = floor_i64(&bound);
    (a >= 0).then_some(a as u64)
}

/// All `(j, a)` with `Lambda(j, a) = R`, `j` 1-based.
pub fn lambda_preimage(model: &LocalModel, big_r: &Rational) -> Vec<(usize, u64)> {
    (0..model.n())
        .filter_map(|k| {
            let a = a_max(model, k, big_r)?;
            (lambda0(model, k, a) == *big_r).then_some((k + 1, a))
        })
        .collect()
}

pub fn in_image(model: &LocalModel, big_r: &Rational) -> bool {
    big_r.is_positive() && !lambda_preimage(model, big_r).is_empty()
}

/// `(rk_up(R), rk_low(R))`: one plus the number of pairs with value below
/// `R`, and the number of pairs with value at most `R`.
pub fn rk_pair(model: &LocalModel, big_r: &Rational) -> (u64, u64) {
    let mut below = 0u64;
    let mut at_most = 0u64;
    for k in 0..model.n() {
        if let Some(a) = a_max(model, k, big_r) {
            at_most += a + 1;
            below += if lambda0(model, k, a) == *big_r { a } else { a + 1 };
        }
    }
    (below + 1, at_most)
}

/// `D_s(R) = #Lambda^{-1}(R) - 1`.
pub fn d_s(model: &LocalModel, label: &FiberClassLabel) -> u32 {
    lambda_preimage(model, label.value()).len() as u32 - 1
}

/// Distinct values in `(k, k+1]` with preimage counts, ascending.
pub fn window(model: &LocalModel, k: u64) -> Vec<(Rational, u32)> {
    let mut counts: BTreeMap<Rational, u32> = BTreeMap::new();
    for (idx, &alpha) in model.alpha().iter().enumerate() {
        let alpha = alpha as u64;
        for a in k * alpha..(k + 1) * alpha {
            *counts.entry(lambda0(model, idx, a)).or_default() += 1;
        }
    }
    counts.into_iter().collect()
}

/// The ranked label `(R, d)` of rank `c + 1`.
///
/// Uses the shift law: exactly `k |alpha|` ranked labels lie at or below
/// `k`, so the answer lives in window `c div |alpha|`.
pub fn c_to_rd(model: &LocalModel, c: u64) -> (FiberClassLabel, u32) {
    let total = model.alpha_total();
    let k = c / total;
    let target = c + 1;
    let mut cumulative = k * total;
    for (value, mult) in window(model, k) {
        cumulative += mult as u64;
        if cumulative >= target {
            let d = (cumulative - target) as u32;
            return (FiberClassLabel(value), d);
        }
    }
    unreachable!("window {k} holds |alpha| ranked labels")
}

/// `dim M_R = rk_low(R) - 1 + D_t`.
pub fn moduli_dim(model: &LocalModel, label: &FiberClassLabel) -> i64 {
    rk_pair(model, label.value()).1 as i64 - 1 + model.d_top() as i64
}

/// `sum_u [tau(R, u)] + n - 1 + D_t`, computed without any ranking.
pub fn moduli_dim_oracle(model: &LocalModel, label: &FiberClassLabel) -> i64 {
    let floors: i64 = (0..model.n())
        .map(|k| floor_i64(&model.tau0(label.value(), k)))
        .sum();
    floors + model.n() as i64 - 1 + model.d_top() as i64
}

/// Per-coordinate contact bounds `c_min = beta/r`, `c_max = beta/r + [tau]`.
pub fn c_bounds(model: &LocalModel, label: &FiberClassLabel) -> (Vec<Rational>, Vec<Rational>) {
    let r = model.r() as i64;
    let mins: Vec<Rational> = model.beta().iter().map(|&b| rat(b as i64, r)).collect();
    let maxs = mins
        .iter()
        .enumerate()
        .map(|(k, lo)| lo + int(floor_i64(&model.tau0(label.value(), k))))
        .collect();
    (mins, maxs)
}

/// Coordinates whose `tau(R, u)` is an integer; these are exactly the `j`
/// of the preimage of `R`.
pub fn integral_coords(model: &LocalModel, label: &FiberClassLabel) -> Vec<usize> {
    (0..model.n())
        .filter(|&k| is_integer(&model.tau0(label.value(), k)))
        .map(|k| k + 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use std::collections::BTreeSet;

    fn m(r: u32, beta: &[u32], alpha: &[u32]) -> LocalModel {
        LocalModel::new(r, beta.to_vec(), alpha.to_vec()).unwrap()
    }

    fn label(model: &LocalModel, n: i64, d: i64) -> FiberClassLabel {
        FiberClassLabel::new(model, rat(n, d)).unwrap()
    }

    /// Sorted list of all `Lambda` values with `a < bound`, with repetition.
    fn brute_values(model: &LocalModel, bound: u64) -> Vec<Rational> {
        let mut v: Vec<Rational> = (1..=model.n())
            .flat_map(|j| (0..bound).map(move |a| (j, a)))
            .map(|(j, a)| {
                let r = model.r() as i64;
                rat(
                    model.beta()[j - 1] as i64 + a as i64 * r,
                    model.alpha()[j - 1] as i64 * r,
                )
            })
            .collect();
        v.sort();
        v
    }

    /// Ranked labels ordered by rank, from the definition.
    fn brute_ranked(model: &LocalModel, bound: u64, limit: usize) -> Vec<(Rational, u32)> {
        let values = brute_values(model, bound);
        let distinct: BTreeSet<Rational> = values.iter().cloned().collect();
        let mut by_rank: BTreeMap<u64, (Rational, u32)> = BTreeMap::new();
        for v in distinct {
            let low = values.iter().filter(|x| **x <= v).count() as u64;
            let mult = values.iter().filter(|x| **x == v).count() as u32;
            for ell in 0..mult {
                by_rank.insert(low - ell as u64, (v.clone(), ell));
            }
        }
        by_rank.into_values().take(limit).collect()
    }

    #[test]
    fn lambda_examples() {
        let model = m(2, &[1, 2], &[1, 1]);
        assert_eq!(lambda_value(&model, 1, 0).unwrap(), rat(1, 2));
        assert_eq!(lambda_value(&model, 2, 1).unwrap(), int(2));
        assert_eq!(lambda_value(&m(1, &[1], &[1]), 1, 0).unwrap(), int(1));
        assert!(lambda_value(&model, 3, 0).is_err());
    }

    #[test]
    fn rk_pair_examples() {
        let model = m(2, &[1, 2], &[1, 1]);
        assert_eq!(rk_pair(&model, &rat(1, 2)), (1, 1));
        assert_eq!(rk_pair(&model, &int(1)), (2, 2));
        assert_eq!(rk_pair(&m(1, &[1, 1], &[1, 1]), &int(1)), (1, 2));
    }

    #[test]
    fn window_examples() {
        assert_eq!(window(&m(2, &[1, 2], &[1, 1]), 0), vec![(rat(1, 2), 1), (int(1), 1)]);
        assert_eq!(window(&m(1, &[1, 1], &[1, 1]), 0), vec![(int(1), 2)]);
        assert_eq!(window(&m(1, &[1], &[2]), 0), vec![(rat(1, 2), 1), (int(1), 1)]);
    }

    #[test]
    fn c_to_rd_examples() {
        let model = m(2, &[1, 2], &[1, 1]);
        assert_eq!(c_to_rd(&model, 0), (label(&model, 1, 2), 0));
        let twin = m(1, &[1, 1], &[1, 1]);
        assert_eq!(c_to_rd(&twin, 0), (label(&twin, 1, 1), 1));
        assert_eq!(c_to_rd(&twin, 1), (label(&twin, 1, 1), 0));
    }

    #[test]
    fn dims_examples() {
        let model = m(2, &[1, 2], &[1, 1]);
        assert_eq!(moduli_dim(&model, &label(&model, 1, 2)), 1);
        assert_eq!(moduli_dim(&model, &label(&model, 1, 1)), 2);
        let one = m(1, &[1], &[1]);
        assert_eq!(moduli_dim(&one, &label(&one, 1, 1)), 1);

        assert_eq!(moduli_dim_oracle(&model, &label(&model, 1, 2)), 1);
        assert_eq!(moduli_dim_oracle(&model, &label(&model, 1, 1)), 2);
        assert_eq!(moduli_dim_oracle(&one, &label(&one, 2, 1)), 2);
    }

    #[test]
    fn c_bounds_examples() {
        let model = m(2, &[1, 2], &[1, 1]);
        assert_eq!(
            c_bounds(&model, &label(&model, 1, 2)),
            (vec![rat(1, 2), int(1)], vec![rat(1, 2), int(0)])
        );
        let one = m(1, &[1], &[1]);
        assert_eq!(c_bounds(&one, &label(&one, 1, 1)), (vec![int(1)], vec![int(1)]));
        let twin = m(1, &[1, 1], &[1, 1]);
        assert_eq!(c_bounds(&twin, &label(&twin, 1, 1)).1, vec![int(1), int(1)]);
    }

    #[test]
    fn labels_outside_image() {
        let model = m(2, &[1, 2], &[1, 1]);
        assert_eq!(
            FiberClassLabel::new(&model, rat(1, 3)).unwrap_err(),
            Error::NotInImage(rat(1, 3))
        );
        assert!(FiberClassLabel::new(&model, int(0)).is_err());
        assert!(FiberClassLabel::new(&model, rat(-1, 2)).is_err());
        assert!(matches!(
            RankedLabel::new(&model, rat(1, 2), 1),
            Err(Error::PowerOutOfRange { d: 1, max: 0 })
        ));
    }

    #[test]
    fn matches_brute_force() {
        let models = [
            m(2, &[1, 2], &[1, 1]),
            m(1, &[1, 1], &[1, 1]),
            m(3, &[1, 2, 3], &[2, 1, 3]),
            m(4, &[2, 2, 4], &[1, 2, 2]),
            m(6, &[1, 5], &[4, 3]),
        ];
        for model in &models {
            let bound = 40;
            let values = brute_values(model, bound);
            for v in values.iter().filter(|v| **v <= int(5)) {
                let low = values.iter().filter(|x| *x <= v).count() as u64;
                let below = values.iter().filter(|x| *x < v).count() as u64 + 1;
                assert_eq!(rk_pair(model, v), (below, low), "{model} at {v}");
                let preimage = lambda_preimage(model, v);
                assert_eq!(preimage.len(), values.iter().filter(|x| *x == v).count());
                let lab = FiberClassLabel::new(model, v.clone()).unwrap();
                let js: Vec<usize> = preimage.iter().map(|p| p.0).collect();
                assert_eq!(integral_coords(model, &lab), js);
            }
            let ranked = brute_ranked(model, bound, 60);
            for (c, (value, ell)) in ranked.iter().enumerate() {
                assert_eq!(c_to_rd(model, c as u64), (FiberClassLabel(value.clone()), *ell));
            }
            for k in 0..4u64 {
                let expected: BTreeMap<Rational, u32> = values
                    .iter()
                    .filter(|x| **x > int(k as i64) && **x <= int(k as i64 + 1))
                    .fold(BTreeMap::new(), |mut acc, x| {
                        *acc.entry(x.clone()).or_default() += 1;
                        acc
                    });
                assert_eq!(window(model, k), expected.into_iter().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn ranked_label_round_trip() {
        let model = m(3, &[1, 2, 3], &[2, 1, 3]);
        for c in 0..100u64 {
            let (lab, d) = c_to_rd(&model, c);
            let ranked = RankedLabel::new(&model, lab.value().clone(), d).unwrap();
            assert_eq!(ranked.rank(&model), c + 1);
            assert_eq!(moduli_dim(&model, &lab) - model.d_top() as i64 - d as i64, c as i64);
        }
    }

    #[test]
    fn moduli_sector_degree_shift() {
        // degsh of (zeta^{-1}, e^{2 pi i R}) equals sum {tau} + {R}; the b = -1
        // representative is b = r - 1.
        let model = m(3, &[1, 2, 3], &[2, 1, 3]);
        for k in 0..3 {
            for (value, _) in window(&model, k) {
                let expected: Rational = (1..=3)
                    .map(|u| frac(&model.tau(&value, u).unwrap()))
                    .sum::<Rational>()
                    + frac(&value);
                let via_sum: Rational = (0..3)
                    .map(|u| frac(&model.tau0(&value, u)))
                    .sum::<Rational>()
                    + frac(&value);
                assert_eq!(expected, via_sum);
                assert_eq!(model.degree_shift(1, &value), expected - frac(&value));
            }
        }
    }
}
