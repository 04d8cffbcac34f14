//! Relative data of the blowup pair and absolute data of `(X, S)`, matched by
//! the correspondence and its inverse.

use wblowup::arith::rat;
use wblowup::correspondence::enumerate::{self, Bounds};
use wblowup::correspondence::{
    psi_forward, psi_inverse, ConnectedRelativeData, FormalPairModel, RelMarking, RelativeData,
};

fn load(name: &str) -> FormalPairModel {
    let path = format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).expect("bundled model")).expect("valid model")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = load("pair_r2");

    // One curve meeting Z once, with contact 3/2.
    let contact = rat(3, 2);
    let cls = model.solve_class(&[rat(1, 1)], &contact)?;
    let rd = RelativeData::new(vec![ConnectedRelativeData::new(0, cls, vec![], vec![RelMarking::new("s", contact, 1, 0)])]);
    let ad = psi_forward(&model, &rd)?;
    println!("{rd}\n  -> {ad}\n  -> {}", psi_inverse(&model, &ad)?);

    let bounds = Bounds {
        genus_max: 1,
        class_max: 1,
        window_max: 1,
        relative_max: 2,
        absolute_pool: vec![],
        absolute_max: 0,
        components_max: 1,
        limit: 200,
    };
    let all = enumerate::relative_data(&model, &bounds);
    let back = all.iter().filter(|rd| psi_inverse(&model, &psi_forward(&model, rd).unwrap()).as_ref() == Ok(*rd)).count();
    println!("\n{back} of {} enumerated data come back unchanged", all.len());

    // In codimension one the map is only injective.
    let narrow = load("pair_codim1");
    let mut outside = psi_forward(&narrow, &RelativeData::new(vec![ConnectedRelativeData::new(
        0,
        vec![rat(1, 2)],
        vec![],
        vec![RelMarking::new("s", rat(1, 2), 1, 0)],
    )]))?;
    println!("\ncodim 1 image: {outside}");
    let mut components = outside.components().to_vec();
    components[0].cls = vec![rat(1, 1)];
    outside = wblowup::correspondence::AbsoluteData::new(components);
    match psi_inverse(&narrow, &outside) {
        Err(e) => println!("{outside}: {} ({e})", e.name()),
        Ok(rd) => println!("unexpected preimage {rd}"),
    }
    Ok(())
}
