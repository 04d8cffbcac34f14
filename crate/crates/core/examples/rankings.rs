//! The ranking function on fiber-class labels, its windows, and the
//! dictionary between descendant powers `c` and pairs `(R, d)`.

use wblowup::arith::int;
use wblowup::rank::{c_to_rd, d_s, moduli_dim, moduli_dim_oracle, rk_pair, window, FiberClassLabel};
use wblowup::LocalModel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Lambda is not injective here: two coordinates share their weights.
    let model = LocalModel::new(3, vec![1, 1, 3], vec![1, 1, 2])?;
    println!("{model}, |alpha| = {}", model.alpha_total());

    for k in 0..3 {
        let cells: Vec<String> = window(&model, k).iter().map(|(r, m)| format!("{r}x{m}")).collect();
        println!("window {k}: {}", cells.join("  "));
    }

    println!("\n{:>5} {:>4} {:>4} {:>4} {:>4} {:>6}", "R", "rk^o", "rk_o", "D_s", "dim", "oracle");
    for (r, _) in window(&model, 0).into_iter().chain(window(&model, 1)) {
        let label = FiberClassLabel::new(&model, r.clone())?;
        let (upper, lower) = rk_pair(&model, &r);
        println!(
            "{:>5} {upper:>4} {lower:>4} {:>4} {:>4} {:>6}",
            r.to_string(),
            d_s(&model, &label),
            moduli_dim(&model, &label),
            moduli_dim_oracle(&model, &label),
        );
    }

    println!();
    for c in 0..8 {
        let (label, d) = c_to_rd(&model, c);
        println!("c = {c} -> R = {}, d = {d}", label.value());
    }

    let one = FiberClassLabel::new(&model, int(1))?;
    let two = FiberClassLabel::new(&model, int(2))?;
    println!("\ndim(2) - dim(1) = {}", moduli_dim(&model, &two) - moduli_dim(&model, &one));
    Ok(())
}
