//! The localization sum `sum_k lambda_k^d / prod_{j != k} (lambda_k - lambda_j)`
//! vanishes below degree `m - 1` and equals 1 in degree `m - 1`.

use wblowup::arith::{rat, Rational};
use wblowup::invariants::localization_sum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambdas: Vec<Rational> = vec![rat(1, 2), rat(-3, 1), rat(2, 7), rat(5, 3)];
    for d in 0..=lambdas.len() as u32 {
        println!("d = {d}: {}", localization_sum(&lambdas, d)?);
    }
    // Degree m gives the sum of the weights.
    let total: Rational = lambdas.iter().sum();
    println!("sum of weights = {total}");

    match localization_sum(&[rat(1, 2), rat(1, 2)], 0) {
        Err(e) => println!("repeated weight: {e}"),
        Ok(v) => unreachable!("got {v}"),
    }
    Ok(())
}
