//! Fiber-class relative invariants of the local model.
//!
//! [`h_invariant`] is the closed form. [`h_prime_oracle`] recomputes the
//! reduced quantity `r * H * prod c_max!` from the fixed-point contributions
//! of the circle action, using explicit weights, so the two routes share no
//! code beyond the ranking data.

use crate::arith::{floor_i64, gen_factorial, int, pow, rat, Rational};
use crate::error::{Error, Result};
use crate::local_model::LocalModel;
use crate::rank::{c_bounds, c_to_rd, d_s, lambda_preimage, FiberClassLabel};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Insertions `(tau_c(theta^i ∪ Theta), theta_j ∪ H^d)` of a fiber-class
/// invariant. `i` and `j` are 1-based basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProperInsertionPair {
    pub c: u64,
    pub i: usize,
    pub j: usize,
    pub d: u32,
}

impl ProperInsertionPair {
    /// The proper pair with descendant power `c`; `d` is forced by `c`.
    pub fn from_c(model: &LocalModel, c: u64, i: usize, j: usize) -> Self {
        let (_, d) = c_to_rd(model, c);
        Self { c, i, j, d }
    }
}

fn check_power(model: &LocalModel, label: &FiberClassLabel, d: u32) -> Result<()> {
    let max = d_s(model, label);
    if d > max {
        return Err(Error::PowerOutOfRange { d, max });
    }
    Ok(())
}

/// `H = (1/r) R^d prod_l 1 / (beta_l/r + [tau(R, l)])!`.
pub fn h_invariant(model: &LocalModel, label: &FiberClassLabel, d: u32) -> Result<Rational> {
    check_power(model, label, d)?;
    let (_, maxs) = c_bounds(model, label);
    let mut value = pow(label.value(), d) / int(model.r() as i64);
    for (k, c_max) in maxs.iter().enumerate() {
        let f = gen_factorial(c_max, floor_i64(&model.tau(label.value(), k + 1)?));
        if f.is_zero() {
            return Err(Error::VanishingFactor(k + 1));
        }
        value /= f;
    }
    Ok(value)
}

/// The product `prod_l c_max,l!` appearing in the closed form.
pub fn c_max_factorials(model: &LocalModel, label: &FiberClassLabel) -> Rational {
    let (_, maxs) = c_bounds(model, label);
    maxs.iter()
        .enumerate()
        .map(|(k, c)| gen_factorial(c, floor_i64(&model.tau0(label.value(), k))))
        .product()
}

/// `H' = prod_{l in J} c_max,l * integral`, which should equal `(1/r) R^d`.
///
/// For `d = 0` the moduli space with maximal tangency is the single
/// standard map, whose automorphism group has order `beta_j + a r`. For
/// `d > 0` the integral is evaluated by summing the contributions of the
/// fixed maps `u[k, beta_k + a_k r]` with concrete equivariant weights.
pub fn h_prime_oracle(model: &LocalModel, label: &FiberClassLabel, d: u32) -> Result<Rational> {
    check_power(model, label, d)?;
    let r = model.r() as i64;
    let preimage = lambda_preimage(model, label.value());
    let (_, maxs) = c_bounds(model, label);
    let c_max_j: Rational = preimage.iter().map(|&(j, _)| maxs[j - 1].clone()).product();

    if d == 0 {
        let (j, a) = preimage[0];
        let aut = int(model.beta()[j - 1] as i64 + a as i64 * r);
        return Ok(maxs[j - 1].clone() / aut);
    }

    let m = preimage.len() as u32;
    // lambda'_k = lambda_k / alpha_k; lambda_0 any value distinct from them.
    let weights: Vec<Rational> = (1..=m as i64).map(int).collect();
    let lambda0 = rat(1, 3);
    let mut sum = Rational::zero();
    for (k, &(j, a)) in preimage.iter().enumerate() {
        let alpha_k = int(model.alpha()[j - 1] as i64);
        let psi_scale = int(r) * &alpha_k / int(model.beta()[j - 1] as i64 + a as i64 * r);
        let mut denom = Rational::one();
        for (l, w) in weights.iter().enumerate() {
            if l != k {
                denom *= &weights[k] - w;
            }
        }
        sum += pow(&psi_scale, m - d)
            * pow(&(&weights[k] - &lambda0), m - 1 - d)
            * pow(&weights[k], d)
            / denom;
    }
    let alpha_prod: Rational = preimage
        .iter()
        .map(|&(j, _)| int(model.alpha()[j - 1] as i64))
        .product();
    let integral = sum / alpha_prod / int(r);
    Ok(c_max_j * integral)
}

/// `sum_k lambda_k^d / prod_{j != k} (lambda_k - lambda_j)`.
///
/// Equals 0 for `d <= m - 2` and 1 for `d = m - 1`.
pub fn localization_sum(lambdas: &[Rational], d: u32) -> Result<Rational> {
    for (k, a) in lambdas.iter().enumerate() {
        if lambdas[k + 1..].contains(a) {
            return Err(Error::RepeatedWeight(a.clone()));
        }
    }
    let mut total = Rational::zero();
    for (k, lk) in lambdas.iter().enumerate() {
        let denom: Rational = lambdas
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, lj)| lk - lj)
            .product();
        total += pow(lk, d) / denom;
    }
    Ok(total)
}

/// `r * delta^i_j * H(R, d)` with `(R, d)` determined by `c`.
pub fn relative_invariant(model: &LocalModel, pair: &ProperInsertionPair) -> Result<Rational> {
    if pair.i == 0 || pair.j == 0 {
        return Err(Error::BadBasisIndex { i: pair.i, j: pair.j });
    }
    let (label, expected) = c_to_rd(model, pair.c);
    if pair.d != expected {
        return Err(Error::ImproperPair { c: pair.c, expected, got: pair.d });
    }
    if pair.i != pair.j {
        return Ok(Rational::zero());
    }
    Ok(int(model.r() as i64) * h_invariant(model, &label, pair.d)?)
}
