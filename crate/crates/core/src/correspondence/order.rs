//! The order on relative data: `rd1 ≺ rd2` when gluing a ruled piece onto
//! the divisor markings of `rd1` yields `rd2`, and the ruled piece is not
//! pre-minimal unless it is minimal.
//!
//! The search never builds the ruled piece explicitly. Components of `rd1`
//! and ruled components form one connected cluster per component of `rd2`;
//! within a cluster we enumerate how the markings of `rd1` are grouped onto
//! ruled components and where the markings of `rd2` land. Genus and base
//! classes are then free parameters, and their feasibility reduces to a sign
//! condition on the functional `omega`.

use super::data::{AbsMarking, ConnectedRelativeData, RelMarking, RelativeData};
use super::lattice::{is_zero, scale, sub};
use super::model::FormalPairModel;
use crate::arith::Rational;
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest number of divisor markings on either side.
    pub max_components: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { max_components: 8 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct ClusterFlags {
    /// Realizable with every ruled component pre-minimal.
    pre_minimal: bool,
    /// Realizable with every ruled component minimal.
    minimal: bool,
    /// Realizable with some ruled component not pre-minimal.
    general: bool,
}

impl ClusterFlags {
    fn feasible(&self) -> bool {
        self.pre_minimal || self.general
    }
}

/// `omega = lambda z` for some `lambda`, if so.
fn omega_ratio(model: &FormalPairModel) -> Option<Rational> {
    let z = &model.lattice.z_pairing;
    let w = model.omega();
    let i = z.iter().position(|x| !x.is_zero())?;
    let lambda = &w[i] / &z[i];
    is_zero(&sub(w, &scale(&lambda, z))).then_some(lambda)
}

fn remove_multiset<T: Ord + Clone>(big: &[T], small: &[T]) -> Option<Vec<T>> {
    let mut counts: BTreeMap<&T, i64> = BTreeMap::new();
    for x in big {
        *counts.entry(x).or_default() += 1;
    }
    for x in small {
        let e = counts.entry(x).or_default();
        *e -= 1;
        if *e < 0 {
            return None;
        }
    }
    Some(counts.into_iter().flat_map(|(x, n)| std::iter::repeat_n(x.clone(), n as usize)).collect())
}

/// Restricted growth strings: `block[i]` is the block of element `i`.
fn for_each_partition(n: usize, visit: &mut impl FnMut(&[usize], usize) -> bool) {
    fn go(i: usize, n: usize, blocks: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize], usize) -> bool) -> bool {
        if i == n {
            return visit(cur, blocks);
        }
        for b in 0..=blocks {
            cur.push(b);
            let stop = go(i + 1, n, blocks.max(b + 1), cur, visit);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let mut cur = Vec::with_capacity(n);
    go(0, n, 0, &mut cur, visit);
}

/// Every function `0..n -> 0..k`, stopping early when `visit` returns true.
fn for_each_function(n: usize, k: usize, visit: &mut impl FnMut(&[usize]) -> bool) {
    let mut cur = vec![0usize; n];
    if n > 0 && k == 0 {
        return;
    }
    loop {
        if visit(&cur) {
            return;
        }
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            cur[i] += 1;
            if cur[i] < k {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

struct ClusterSearch<'a> {
    model: &'a FormalPairModel,
    ratio: Option<Rational>,
}

impl ClusterSearch<'_> {
    fn flags(&self, sources: &[&ConnectedRelativeData], target: &ConnectedRelativeData) -> ClusterFlags {
        let mut flags = ClusterFlags::default();
        let source_abs: Vec<AbsMarking> = sources.iter().flat_map(|c| c.absolute.iter().cloned()).collect();
        let Some(extras) = remove_multiset(&target.absolute, &source_abs) else {
            return flags;
        };
        let delta = sources.iter().fold(target.cls.clone(), |acc, c| sub(&acc, &c.cls));
        let omega_delta = self.model.pair_omega(&delta);
        let inf: Vec<(usize, &RelMarking)> = sources
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.relative.iter().map(move |m| (i, m)))
            .collect();
        let zero = &target.relative;
        let genus_budget = target.genus as i64
            - sources.iter().map(|c| c.genus as i64).sum::<i64>()
            - inf.len() as i64
            + sources.len() as i64
            - 1;

        for_each_partition(inf.len(), &mut |blocks_of, nblocks| {
            if genus_budget + (nblocks as i64) < 0 || !connected(sources.len(), &inf, blocks_of, nblocks) {
                return false;
            }
            let genus = genus_budget + nblocks as i64;
            let mut inf_by_block: Vec<Vec<&RelMarking>> = vec![vec![]; nblocks];
            for (k, &b) in blocks_of.iter().enumerate() {
                inf_by_block[b].push(inf[k].1);
            }
            for_each_function(zero.len(), nblocks, &mut |zero_of| {
                self.assess(&inf_by_block, zero, zero_of, genus, extras.is_empty(), &delta, &omega_delta, &mut flags);
                flags.general && flags.minimal
            });
            flags.general && flags.minimal
        });
        flags
    }

    #[allow(clippy::too_many_arguments)]
    fn assess(
        &self,
        inf_by_block: &[Vec<&RelMarking>],
        zero: &[RelMarking],
        zero_of: &[usize],
        genus: i64,
        no_extras: bool,
        delta: &[Rational],
        omega_delta: &Rational,
        flags: &mut ClusterFlags,
    ) {
        let n = inf_by_block.len();
        let mut zero_by_block: Vec<Vec<&RelMarking>> = vec![vec![]; n];
        for (k, &b) in zero_of.iter().enumerate() {
            zero_by_block[b].push(&zero[k]);
        }
        // A block can stay a fiber-class component only in the pre-minimal
        // shape; the marking at zero then sits in the original sector.
        let pre_minimal: Vec<bool> = (0..n)
            .map(|p| match (inf_by_block[p].as_slice(), zero_by_block[p].as_slice()) {
                ([a], [b]) => a.sector == b.sector && a.contact == b.contact,
                _ => false,
            })
            .collect();
        if pre_minimal.iter().all(|&x| x) && genus == 0 && no_extras && is_zero(delta) {
            flags.pre_minimal = true;
            if (0..n).all(|p| inf_by_block[p][0] == zero_by_block[p][0]) {
                flags.minimal = true;
            }
        }
        if flags.general {
            return;
        }
        flags.general = match &self.ratio {
            // Independent functionals: put every block off the fiber and
            // share out omega(delta).
            None => omega_delta.is_positive(),
            // omega = lambda z: a block off the fiber needs lambda delta_p > 0,
            // and a fiber block has delta_p = 0, so the split is forced.
            Some(lambda) => {
                let mut any = false;
                let mut ok = true;
                for p in 0..n {
                    if pre_minimal[p] {
                        continue;
                    }
                    any = true;
                    let zsum: Rational = zero_by_block[p].iter().map(|m| m.contact.clone()).sum();
                    let isum: Rational = inf_by_block[p].iter().map(|m| m.contact.clone()).sum();
                    ok &= (lambda * (zsum - isum)).is_positive();
                }
                any && ok
            }
        };
    }
}

fn connected(nsources: usize, inf: &[(usize, &RelMarking)], blocks_of: &[usize], nblocks: usize) -> bool {
    let total = nsources + nblocks;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (k, &(src, _)) in inf.iter().enumerate() {
        let (a, b) = (find(&mut parent, src), find(&mut parent, nsources + blocks_of[k]));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..total).all(|i| find(&mut parent, i) == root)
}

/// Decides `rd1 ≺ rd2`.
pub fn precedes(model: &FormalPairModel, rd1: &RelativeData, rd2: &RelativeData, opts: SearchOptions) -> Result<bool> {
    model.check_relative(rd1)?;
    model.check_relative(rd2)?;
    for rd in [rd1, rd2] {
        let needed = rd.relative_markings().count();
        if needed > opts.max_components {
            return Err(Error::SearchLimit { limit: opts.max_components, needed });
        }
    }
    // Components without divisor markings pass through unchanged.
    let (free, attached): (Vec<_>, Vec<_>) = rd1.components().iter().partition(|c| c.relative.is_empty());
    let free: Vec<ConnectedRelativeData> = free.into_iter().cloned().collect();
    let Some(targets) = remove_multiset(rd2.components(), &free) else {
        return Ok(false);
    };
    if attached.is_empty() || targets.is_empty() {
        return Ok(attached.is_empty() && targets.is_empty());
    }
    if attached.len() < targets.len() {
        return Ok(false);
    }
    let search = ClusterSearch { model, ratio: omega_ratio(model) };
    let mut memo: BTreeMap<(Vec<usize>, usize), ClusterFlags> = BTreeMap::new();
    let mut found = false;
    for_each_function(attached.len(), targets.len(), &mut |f| {
        let mut hit = vec![false; targets.len()];
        f.iter().for_each(|&b| hit[b] = true);
        if hit.contains(&false) {
            return false;
        }
        let mut all_minimal = true;
        let mut any_general = false;
        for (b, target) in targets.iter().enumerate() {
            let members: Vec<usize> = (0..f.len()).filter(|&i| f[i] == b).collect();
            let flags = *memo.entry((members.clone(), b)).or_insert_with(|| {
                let sources: Vec<&ConnectedRelativeData> = members.iter().map(|&i| attached[i]).collect();
                search.flags(&sources, target)
            });
            if !flags.feasible() {
                return false;
            }
            all_minimal &= flags.minimal;
            any_general |= flags.general;
        }
        found = any_general || all_minimal;
        found
    });
    Ok(found)
}

/// A total order compatible with `≺`, ties broken by the structural key.
/// Duplicates are removed.
pub fn linear_extension(model: &FormalPairModel, data: &[RelativeData], opts: SearchOptions) -> Result<Vec<RelativeData>> {
    let items: Vec<RelativeData> = data.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let n = items.len();
    let mut succ: Vec<Vec<usize>> = vec![vec![]; n];
    let mut indeg = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && precedes(model, &items[i], &items[j], opts)? {
                succ[i].push(j);
                indeg[j] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(i) = ready.pop_first() {
        out.push(items[i].clone());
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if out.len() != n {
        return Err(Error::Cycle(n - out.len()));
    }
    Ok(out)
}
