//! Twisted sectors of `Z_2 ⋉ C^2` with weights `beta = (1, 2)` blown up with
//! `alpha = (1, 1)`.
//!
//! Run with `cargo run --example sectors`.

use wblowup::LocalModel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = LocalModel::new(2, vec![1, 2], vec![1, 1])?;
    println!("model {model}");

    for i in 1..=model.n() {
        let g: Vec<String> = model.isotropy_group(i)?.iter().map(|s| s.to_string()).collect();
        println!("G_{i} = {{{}}}", g.join(", "));
    }

    println!("\nsector      support  degshift");
    for s in model.sector_index_set() {
        let support: Vec<String> = model.sector_support(&s)?.iter().map(|u| u.to_string()).collect();
        println!("{:<11} {:<8} {}", s.to_string(), support.join(","), model.degree_shift(s.b, &s.phase));
    }
    println!("\nD_t = {}", model.d_top());
    Ok(())
}
