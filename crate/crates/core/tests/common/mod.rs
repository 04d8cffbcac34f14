#![allow(dead_code)]

use num_traits::Zero;
use std::collections::BTreeMap;
use wblowup::arith::{int, rat, Rational};
use wblowup::correspondence::enumerate::{self, Bounds};
use wblowup::correspondence::psi::{check_ruled, is_n_minimal, is_pre_minimal};
use wblowup::correspondence::*;

pub fn load(name: &str) -> FormalPairModel {
    let path = format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub const BIJECTIVE: [&str; 3] = ["pair_r2", "pair_phased", "pair_skew"];

pub fn abs(class: &str) -> AbsMarking {
    AbsMarking { sector: "x".into(), class: class.into(), psi: 0 }
}

/// Enumeration bounds giving at least 500 data on each bijective model.
pub fn roundtrip_bounds(model: &FormalPairModel) -> Bounds {
    let small = model.z_sectors.len() == 1 && model.base_rank() == 1;
    Bounds {
        genus_max: 1,
        class_max: if small { 2 } else { 1 },
        window_max: 1,
        relative_max: 2,
        absolute_pool: vec![abs(&model.k_classes[0])],
        absolute_max: 1,
        components_max: 2,
        limit: 800,
    }
}

/// Up to `n` data spread over a small enumeration, plus data obtained from
/// them by gluing one ruled component, so that the set has relations.
pub fn poset_sample(model: &FormalPairModel, n: usize) -> Vec<RelativeData> {
    let b = Bounds {
        genus_max: 1,
        class_max: 1,
        window_max: 0,
        relative_max: 1,
        absolute_pool: vec![],
        absolute_max: 0,
        components_max: 1,
        limit: 400,
    };
    let all = enumerate::relative_data(model, &b);
    let step = (all.len() / (n / 2)).max(1);
    let mut out: Vec<RelativeData> = all.iter().step_by(step).take(n / 2).cloned().collect();
    let grown: Vec<RelativeData> = out
        .iter()
        .filter_map(|rd| grow(model, rd))
        .collect();
    out.extend(grown);
    out.sort();
    out.dedup();
    out.truncate(n);
    out
}

/// `rd` glued to one ruled component absorbing all its markings and moving
/// them to a single marking at zero with larger contact, when one exists.
pub fn grow(model: &FormalPairModel, rd: &RelativeData) -> Option<RelativeData> {
    let inf: Vec<RelMarking> = rd.relative_markings().map(|m| model.dual(m).unwrap()).collect();
    if inf.is_empty() || rd.components().len() != 1 {
        return None;
    }
    let total: Rational = rd.relative_markings().map(|m| m.contact.clone()).sum();
    for m in enumerate::markings(model, 1) {
        if m.contact <= total {
            continue;
        }
        for a in boxes(model.base_rank(), 1) {
            let Ok(base) = model.solve_class(&a, &(&m.contact - &total)) else { continue };
            let ruled = RuledData::new(vec![RuledComponent {
                genus: 0,
                base,
                at_infinity: inf.clone(),
                at_zero: vec![m.clone()],
                absolute: vec![],
            }]);
            if check_ruled(model, &ruled).is_ok() {
                return glue(model, rd, &ruled).unwrap().into_iter().next();
            }
        }
    }
    None
}

pub fn boxes(m: usize, max: i64) -> Vec<Vec<Rational>> {
    fine_boxes(m, max, 1)
}

/// Vectors in `[-max, max]^m` with entries in `(1/den) Z`.
pub fn fine_boxes(m: usize, max: i64, den: i64) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Rational>| {
                (-max * den..=max * den).map(move |x| {
                    let mut w = v.clone();
                    w.push(rat(x, den));
                    w
                })
            })
            .collect();
    }
    out
}

fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=k {
            cur.push(b);
            go(i + 1, n, k.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, 0, &mut vec![], &mut out);
    out
}

fn functions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..k).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn multiset_minus<T: Ord + Clone>(big: &[T], small: &[T]) -> Option<Vec<T>> {
    let mut rest = big.to_vec();
    for x in small {
        let i = rest.iter().position(|y| y == x)?;
        rest.remove(i);
    }
    Some(rest)
}

/// Every concrete ruled piece, within a box of base classes and genera,
/// whose gluing to `rd1` yields `rd2`. Witnesses differing only in the
/// values of nonzero bases are represented once.
pub fn witnesses(model: &FormalPairModel, rd1: &RelativeData, rd2: &RelativeData, genus_max: u32, class_box: i64) -> Vec<RuledData> {
    let inf: Vec<RelMarking> = rd1.relative_markings().map(|m| model.dual(m).unwrap()).collect();
    let zero: Vec<RelMarking> = rd2.relative_markings().cloned().collect();
    let abs1: Vec<AbsMarking> = rd1.components().iter().flat_map(|c| c.absolute.clone()).collect();
    let abs2: Vec<AbsMarking> = rd2.components().iter().flat_map(|c| c.absolute.clone()).collect();
    let Some(extras) = multiset_minus(&abs2, &abs1) else { return vec![] };
    let mut out = vec![];
    if inf.is_empty() {
        if rd1 == rd2 {
            out.push(RuledData::new(vec![]));
        }
        return out;
    }
    let pushes = fine_boxes(model.base_rank(), class_box, 12);
    let total = |rd: &RelativeData| {
        rd.components().iter().fold(model.zero_class(), |acc, c| {
            acc.iter().zip(&c.cls).map(|(x, y)| x + y).collect::<Vec<_>>()
        })
    };
    let delta: Vec<Rational> = total(rd2).iter().zip(total(rd1)).map(|(x, y)| x - y).collect();
    // The lift is linear: B(a, d) = lift(a) + d * B(0, 1).
    let omega_fiber = model.pair_omega(&model.solve_class(&vec![int(0); model.base_rank()], &int(1)).unwrap());
    let unit_omega: Vec<Rational> = (0..model.base_rank())
        .map(|i| {
            let mut e = vec![int(0); model.base_rank()];
            e[i] = int(1);
            model.pair_omega(&model.lift(&e).unwrap())
        })
        .collect();
    let push_omega: Vec<Rational> = pushes
        .iter()
        .map(|a| a.iter().zip(&unit_omega).map(|(x, y)| x * y).sum())
        .collect();
    let omega_delta = model.pair_omega(&delta);
    let push_delta = model.push(&delta);
    let genus_cap = rd2.components().iter().map(|c| c.genus).sum::<u32>().min(genus_max) as usize;
    for part in set_partitions(inf.len()) {
        let nb = part.iter().max().unwrap() + 1;
        for zero_of in functions(zero.len(), nb) {
            for extra_of in functions(extras.len(), nb) {
                let template: Vec<RuledComponent> = (0..nb)
                    .map(|p| RuledComponent {
                        genus: 0,
                        base: vec![],
                        at_infinity: (0..inf.len()).filter(|&k| part[k] == p).map(|k| inf[k].clone()).collect(),
                        at_zero: (0..zero.len()).filter(|&k| zero_of[k] == p).map(|k| zero[k].clone()).collect(),
                        absolute: (0..extras.len()).filter(|&k| extra_of[k] == p).map(|k| extras[k].clone()).collect(),
                    })
                    .collect();
                let deltas: Vec<Rational> = template
                    .iter()
                    .map(|b| {
                        let z: Rational = b.at_zero.iter().map(|m| m.contact.clone()).sum();
                        let i: Rational = b.at_infinity.iter().map(|m| m.contact.clone()).sum();
                        z - i
                    })
                    .collect();
                // Bases: all but the last from the box, the last from the
                // class difference. Keep one choice per pattern of zero bases.
                let mut by_pattern: BTreeMap<Vec<bool>, Vec<Vec<Rational>>> = BTreeMap::new();
                for pick in functions(nb - 1, pushes.len()) {
                    // omega and vanishing of each free base, from the linear lift.
                    let mut omega_rest = omega_delta.clone();
                    let mut pattern = Vec::with_capacity(nb);
                    let mut effective = true;
                    for p in 0..nb - 1 {
                        let w = &push_omega[pick[p]] + &deltas[p] * &omega_fiber;
                        let zero = pushes[pick[p]].iter().all(|x| x.is_zero()) && deltas[p].is_zero();
                        effective &= zero || w > int(0);
                        omega_rest -= &w;
                        pattern.push(zero);
                    }
                    let rest_push: Vec<Rational> = (0..push_delta.len())
                        .map(|i| (0..nb - 1).fold(push_delta[i].clone(), |acc, p| acc - &pushes[pick[p]][i]))
                        .collect();
                    let last_zero = rest_push.iter().all(|x| x.is_zero()) && deltas[nb - 1].is_zero();
                    effective &= last_zero || omega_rest > int(0);
                    pattern.push(last_zero);
                    if effective && !by_pattern.contains_key(&pattern) {
                        let mut bases: Vec<Vec<Rational>> = (0..nb - 1)
                            .map(|p| model.solve_class(&pushes[pick[p]], &deltas[p]).unwrap())
                            .collect();
                        let used = bases.iter().fold(model.zero_class(), |acc, b| {
                            acc.iter().zip(b).map(|(x, y)| x + y).collect()
                        });
                        bases.push(delta.iter().zip(&used).map(|(x, y)| x - y).collect());
                        by_pattern.insert(pattern, bases);
                    }
                }
                for bases in by_pattern.values() {
                    for genera in functions(nb, genus_cap + 1) {
                        if genera.iter().sum::<usize>() > genus_cap {
                            continue;
                        }
                        let blocks: Vec<RuledComponent> = template
                            .iter()
                            .zip(bases)
                            .zip(&genera)
                            .map(|((t, b), &g)| RuledComponent { genus: g as u32, base: b.clone(), ..t.clone() })
                            .collect();
                        let ruled = RuledData::new(blocks);
                        if check_ruled(model, &ruled).is_err() {
                            continue;
                        }
                        if glue(model, rd1, &ruled).unwrap().contains(rd2) {
                            out.push(ruled);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Brute-force decision of the order from concrete witnesses.
pub fn precedes_oracle(model: &FormalPairModel, rd1: &RelativeData, rd2: &RelativeData) -> bool {
    witnesses(model, rd1, rd2, 2, 1)
        .iter()
        .any(|r| !is_pre_minimal(r) || is_n_minimal(model, r))
}
