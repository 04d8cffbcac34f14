//! Assemble the lower triangular matrix on a small basis and recover relative
//! invariants from absolute ones by forward substitution.

use wblowup::arith::{int, rat, Rational};
use wblowup::correspondence::{
    assemble_l, linear_extension, precedes, solve_lower_triangular, CoefficientRule, ConnectedRelativeData,
    FormalPairModel, OffDiagonalEntry, RelMarking, RelativeData, SearchOptions,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = format!("{}/data/pair_r2.json", env!("CARGO_MANIFEST_DIR"));
    let model: FormalPairModel = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let opts = SearchOptions::default();

    let basis: Vec<RelativeData> = [(1, 2), (3, 2), (5, 2)]
        .into_iter()
        .map(|(p, q)| {
            let contact = rat(p, q);
            let cls = model.solve_class(&[int(1)], &contact).unwrap();
            RelativeData::new(vec![ConnectedRelativeData::new(0, cls, vec![], vec![RelMarking::new("s", contact, 1, 0)])])
        })
        .collect();
    let basis = linear_extension(&model, &basis, opts)?;

    // Below-diagonal entries stand in for the unknown lower-order terms.
    let mut offdiag = vec![];
    for row in 0..basis.len() {
        for col in 0..row {
            if precedes(&model, &basis[col], &basis[row], opts)? {
                offdiag.push(OffDiagonalEntry { row, col, value: rat(-1, (row + col + 1) as i64) });
            }
        }
    }
    let l = assemble_l(&model, &basis, &offdiag, &CoefficientRule::default(), opts)?;
    for row in &l.rows {
        println!("{}", row.iter().map(|x| format!("{x:>6}")).collect::<String>());
    }

    let relative: Vec<Rational> = vec![int(3), rat(1, 4), int(-2)];
    let absolute = l.mul_vec(&relative);
    let recovered = solve_lower_triangular(&l, &absolute)?;
    println!("absolute  {:?}", absolute.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    println!("recovered {:?}", recovered.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    assert_eq!(recovered, relative);
    Ok(())
}
