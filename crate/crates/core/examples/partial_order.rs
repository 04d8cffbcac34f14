use wblowup::arith::{int, rat};
use wblowup::correspondence::{
    glue, linear_extension, n_minimal_companion, precedes, ConnectedRelativeData, FormalPairModel, RelMarking,
    RelativeData, RuledComponent, RuledData, SearchOptions,
};

fn load(name: &str) -> FormalPairModel {
    let path = format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).expect("bundled model")).expect("valid model")
}

fn single(model: &FormalPairModel, genus: u32, contact: (i64, i64)) -> RelativeData {
    let contact = rat(contact.0, contact.1);
    let cls = model.solve_class(&[int(1)], &contact).unwrap();
    RelativeData::new(vec![ConnectedRelativeData::new(genus, cls, vec![], vec![RelMarking::new("s", contact, 1, 0)])])
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = load("pair_r2");
    let opts = SearchOptions::default();
    let a = single(&model, 0, (1, 2));
    let b = single(&model, 0, (3, 2));
    let c = single(&model, 1, (1, 2));

    // The companion glues back to the datum it came from.
    let companion = n_minimal_companion(&a).to_ruled(&model)?;
    println!("companion of {a}: {companion}");
    println!("glued: {:?}", glue(&model, &a, &companion)?.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    // A ruled component whose base meets Z once pushes the contact up by one.
    let piece = RuledData::new(vec![RuledComponent {
        genus: 0,
        base: model.solve_class(&[int(0)], &int(1))?,
        at_infinity: vec![RelMarking::new("s", rat(1, 2), 1, 0)],
        at_zero: vec![RelMarking::new("s", rat(3, 2), 1, 0)],
        absolute: vec![],
    }]);
    for x in glue(&model, &a, &piece)? {
        println!("a glued to the piece: {x}");
    }

    for (x, y) in [(&a, &b), (&b, &a), (&a, &c), (&a, &a)] {
        println!("{x} < {y}: {}", precedes(&model, x, y, opts)?);
    }

    let order = linear_extension(&model, &[c.clone(), b.clone(), a.clone()], opts)?;
    println!("\nlinear extension:");
    for (k, rd) in order.iter().enumerate() {
        println!("  {k}: {rd}");
    }
    Ok(())
}
