//! Closed-form fiber-class invariants, checked against the localization route.

use wblowup::arith::{int, pow};
use wblowup::invariants::{c_max_factorials, h_invariant, h_prime_oracle, relative_invariant, ProperInsertionPair};
use wblowup::rank::{d_s, window, FiberClassLabel};
use wblowup::LocalModel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = LocalModel::new(2, vec![1, 2], vec![1, 1])?;
    let r = int(model.r() as i64);

    for (value, _) in (0..3).flat_map(|k| window(&model, k)) {
        let label = FiberClassLabel::new(&model, value.clone())?;
        for d in 0..=d_s(&model, &label) {
            let h = h_invariant(&model, &label, d)?;
            assert_eq!(&r * &h * c_max_factorials(&model, &label), pow(&value, d));
            assert_eq!(h_prime_oracle(&model, &label, d)?, pow(&value, d) / &r);
            println!("H(R = {value}, d = {d}) = {h}");
        }
    }

    // Pairing against the dual insertion picks up a factor r on the diagonal.
    for c in 0..4 {
        let diag = relative_invariant(&model, &ProperInsertionPair::from_c(&model, c, 1, 1))?;
        println!("c = {c}: <tau_c theta_1 | theta_1> = {diag}");
    }
    Ok(())
}
