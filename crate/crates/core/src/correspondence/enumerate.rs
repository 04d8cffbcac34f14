//! Bounded enumeration of relative data over a pair model.

use super::data::{
    AbsMarking, AbsoluteData, ConnectedAbsoluteData, ConnectedRelativeData, RelMarking, RelativeData, SMarking,
};
use super::model::FormalPairModel;
use crate::arith::{frac, int, Rational};
use crate::rank::{d_s, window, FiberClassLabel};

#[derive(Debug, Clone)]
pub struct Bounds {
    pub genus_max: u32,
    /// Pushforward classes range over `[0, class_max]^m`.
    pub class_max: i64,
    /// Contact orders come from windows `0..=window_max`.
    pub window_max: u64,
    pub relative_max: usize,
    pub absolute_pool: Vec<AbsMarking>,
    pub absolute_max: usize,
    pub components_max: usize,
    /// Stop after this many data.
    pub limit: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            genus_max: 1,
            class_max: 1,
            window_max: 0,
            relative_max: 2,
            absolute_pool: vec![],
            absolute_max: 0,
            components_max: 1,
            limit: 1000,
        }
    }
}

/// Every valid divisor marking with contact in the given windows, sorted.
pub fn markings(model: &FormalPairModel, window_max: u64) -> Vec<RelMarking> {
    let mut out = Vec::new();
    for z in &model.z_sectors {
        let size = model.s_sector(&z.pi).map_or(0, |t| t.basis.len());
        for k in 0..=window_max {
            for (value, _) in window(&z.local_model, k) {
                if z.phase.as_ref().is_some_and(|p| frac(&value) != *p) {
                    continue;
                }
                let label = FiberClassLabel::new(&z.local_model, value.clone()).expect("window value");
                for ell in 0..=d_s(&z.local_model, &label) {
                    for j in 1..=size {
                        out.push(RelMarking::new(&z.name, value.clone(), j, ell));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Multisets of size at most `max` drawn from `pool`, as sorted vectors.
pub fn multisets<T: Clone>(pool: &[T], max: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(pool: &[T], start: usize, left: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i].clone());
            go(pool, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, 0, max, &mut Vec::new(), &mut out);
    out
}

fn classes(m: usize, max: i64) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(int(x));
                    w
                })
            })
            .collect();
    }
    out
}

/// Connected components within the bounds whose class exists in the model.
pub fn components(model: &FormalPairModel, b: &Bounds) -> Vec<ConnectedRelativeData> {
    let rels = multisets(&markings(model, b.window_max), b.relative_max);
    let abss = multisets(&b.absolute_pool, b.absolute_max);
    let mut out = Vec::new();
    for rel in &rels {
        let contact: Rational = rel.iter().map(|m| m.contact.clone()).sum();
        for a in classes(model.base_rank(), b.class_max) {
            let Ok(cls) = model.solve_class(&a, &contact) else {
                continue;
            };
            for genus in 0..=b.genus_max {
                for abs in &abss {
                    out.push(ConnectedRelativeData::new(genus, cls.clone(), abs.clone(), rel.clone()));
                }
            }
        }
    }
    out.sort();
    out
}

/// Data with `1..=components_max` components, in a fixed order, at most
/// `limit` of them.
pub fn relative_data(model: &FormalPairModel, b: &Bounds) -> Vec<RelativeData> {
    fn go(
        comps: &[ConnectedRelativeData],
        start: usize,
        left: usize,
        cur: &mut Vec<ConnectedRelativeData>,
        out: &mut Vec<RelativeData>,
        limit: usize,
    ) {
        if left == 0 {
            out.push(RelativeData::new(cur.clone()));
            return;
        }
        for i in start..comps.len() {
            if out.len() >= limit {
                return;
            }
            cur.push(comps[i].clone());
            go(comps, i, left - 1, cur, out, limit);
            cur.pop();
        }
    }
    let comps = components(model, b);
    let mut out = Vec::new();
    for size in 1..=b.components_max {
        go(&comps, 0, size, &mut Vec::new(), &mut out, b.limit);
    }
    out
}

/// Markings `(t, j, c)` with `c < psi_bound` over every sector of `S`
/// carrying at least one exceptional sector.
pub fn s_markings(model: &FormalPairModel, psi_bound: u64) -> Vec<SMarking> {
    let mut out = Vec::new();
    for t in &model.s_sectors {
        if model.sectors_over(&t.name).next().is_none() {
            continue;
        }
        for j in 1..=t.basis.len() {
            for psi in 0..psi_bound {
                out.push(SMarking { sector: t.name.clone(), j, psi });
            }
        }
    }
    out
}

/// Connected absolute data with the same genus, class and ordinary marking
/// bounds as [`components`], and `s_max` markings with `c < psi_bound`.
pub fn absolute_data(model: &FormalPairModel, b: &Bounds, psi_bound: u64) -> Vec<AbsoluteData> {
    let ss = multisets(&s_markings(model, psi_bound), b.relative_max);
    let abss = multisets(&b.absolute_pool, b.absolute_max);
    let mut out = Vec::new();
    for s in &ss {
        for a in classes(model.base_rank(), b.class_max) {
            for genus in 0..=b.genus_max {
                for abs in &abss {
                    if out.len() >= b.limit {
                        return out;
                    }
                    out.push(AbsoluteData::new(vec![ConnectedAbsoluteData {
                        genus,
                        cls: a.clone(),
                        absolute: abs.clone(),
                        s_markings: s.clone(),
                    }]));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(&[1, 2, 3], 2).len(), 1 + 3 + 6);
        assert_eq!(multisets::<u8>(&[], 3).len(), 1);
        assert_eq!(classes(2, 1).len(), 4);
    }
}
