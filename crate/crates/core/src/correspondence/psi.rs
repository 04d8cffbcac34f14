//! The correspondence between relative data of the blowup and absolute data
//! of the base pair, minimal companions, and gluing along the divisor.

use super::data::*;
use super::lattice::{add, is_zero, sub};
use super::model::FormalPairModel;
use crate::arith::{frac, Rational};
use crate::error::{Error, Result};
use crate::rank::{c_to_rd, RankedLabel};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Sends each relative marking `(s, u, theta_j ∪ H^ell)` to the marking
/// `(pi(s), j, c)` with `c + 1` the rank of `(u, ell)`, and each class to
/// its pushforward.
pub fn psi_forward(model: &FormalPairModel, rd: &RelativeData) -> Result<AbsoluteData> {
    let mut out = Vec::with_capacity(rd.components().len());
    for comp in rd.components() {
        if !comp.admissible {
            return Err(Error::NotAdmissible);
        }
        model.check_component(comp)?;
        let mut s_markings = Vec::with_capacity(comp.relative.len());
        for m in &comp.relative {
            let z = model.z_sector(&m.sector)?;
            let ranked = RankedLabel::new(&z.local_model, m.contact.clone(), m.insertion.ell)?;
            s_markings.push(SMarking {
                sector: z.pi.clone(),
                j: m.insertion.j,
                psi: ranked.rank(&z.local_model) - 1,
            });
        }
        out.push(ConnectedAbsoluteData {
            genus: comp.genus,
            cls: model.push(&comp.cls),
            absolute: comp.absolute.clone(),
            s_markings,
        });
    }
    Ok(AbsoluteData::new(out))
}

/// Recovers the exceptional marking carried by `(t, j, c)`.
pub fn marking_for(model: &FormalPairModel, sm: &SMarking) -> Result<RelMarking> {
    let t = model.s_sector(&sm.sector)?;
    if sm.j == 0 || sm.j > t.basis.len() {
        return Err(Error::NotInBasis(sm.to_string()));
    }
    let mut found: Option<RelMarking> = None;
    let mut last_contact = None;
    for z in model.sectors_over(&t.name) {
        let (label, d) = c_to_rd(&z.local_model, sm.psi);
        let contact = label.value().clone();
        let fits = z.phase.as_ref().is_none_or(|p| frac(&contact) == *p);
        if fits {
            if found.is_some() {
                return Err(Error::AmbiguousSector { sector: t.name.clone(), contact });
            }
            found = Some(RelMarking::new(&z.name, contact.clone(), sm.j, d));
        }
        last_contact = Some(contact);
    }
    found.ok_or_else(|| Error::NoSector {
        sector: t.name.clone(),
        contact: last_contact.unwrap_or_else(Rational::zero),
    })
}

/// Inverse of [`psi_forward`]. On a codimension-one model the class system
/// is overdetermined and data outside the image are reported.
pub fn psi_inverse(model: &FormalPairModel, ad: &AbsoluteData) -> Result<RelativeData> {
    let mut out = Vec::with_capacity(ad.components().len());
    for comp in ad.components() {
        for m in &comp.absolute {
            model.check_absolute(m)?;
        }
        let relative = comp
            .s_markings
            .iter()
            .map(|sm| marking_for(model, sm))
            .collect::<Result<Vec<_>>>()?;
        let contact: Rational = relative.iter().map(|m| m.contact.clone()).sum();
        let cls = model.solve_class(&comp.cls, &contact)?;
        out.push(ConnectedRelativeData::new(comp.genus, cls, comp.absolute.clone(), relative));
    }
    Ok(RelativeData::new(out))
}

/// One minimal component per relative marking.
pub fn n_minimal_companion(rd: &RelativeData) -> NMinimalData {
    let mut components: Vec<RelMarking> = rd.relative_markings().cloned().collect();
    components.sort();
    NMinimalData { components }
}

impl NMinimalData {
    /// The minimal data as ruled components.
    pub fn to_ruled(&self, model: &FormalPairModel) -> Result<RuledData> {
        let comps = self
            .components
            .iter()
            .map(|m| {
                Ok(RuledComponent {
                    genus: 0,
                    base: model.zero_class(),
                    at_infinity: vec![model.dual(m)?],
                    at_zero: vec![m.clone()],
                    absolute: vec![],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RuledData::new(comps))
    }
}

/// Checks the rules a ruled component obeys in the formal model: the base
/// pairs with `Z` to the contact difference, a nonzero base is effective,
/// and a zero base forces the pre-minimal shape with matching ends.
pub fn check_ruled_component(model: &FormalPairModel, c: &RuledComponent) -> Result<()> {
    if c.base.len() != model.rank() {
        return Err(Error::ClassDimension { expected: model.rank(), got: c.base.len() });
    }
    if c.at_infinity.is_empty() {
        return Err(Error::InvalidData("ruled component without a marking at infinity".into()));
    }
    // Markings at infinity carry dual insertions; their duals must be valid.
    for m in &c.at_infinity {
        model.check_marking(&model.dual(m)?)?;
    }
    for m in &c.at_zero {
        model.check_marking(m)?;
    }
    for m in &c.absolute {
        model.check_absolute(m)?;
    }
    let inf: Rational = c.at_infinity.iter().map(|m| m.contact.clone()).sum();
    let zero: Rational = c.at_zero.iter().map(|m| m.contact.clone()).sum();
    let pairing = model.pair_z(&c.base);
    if pairing != &zero - &inf {
        return Err(Error::ContactMismatch { pairing, contact: zero - inf });
    }
    if is_zero(&c.base) {
        if !c.is_pre_minimal_shape() {
            return Err(Error::InvalidData("a fiber-class component must be pre-minimal".into()));
        }
        let (a, b) = (&c.at_infinity[0], &c.at_zero[0]);
        if model.z_sector(&a.sector)?.bar != b.sector {
            return Err(Error::InvalidData("fiber ends lie in non-dual sectors".into()));
        }
    } else if !model.pair_omega(&c.base).is_positive() {
        return Err(Error::InvalidData("base class is not effective".into()));
    }
    Ok(())
}

pub fn check_ruled(model: &FormalPairModel, r: &RuledData) -> Result<()> {
    r.components().iter().try_for_each(|c| check_ruled_component(model, c))
}

/// Whether every component is pre-minimal.
pub fn is_pre_minimal(r: &RuledData) -> bool {
    r.components().iter().all(RuledComponent::is_pre_minimal_shape)
}

/// Whether every component is pre-minimal with the dual insertion at the
/// far end.
pub fn is_n_minimal(model: &FormalPairModel, r: &RuledData) -> bool {
    r.components().iter().all(|c| {
        c.is_pre_minimal_shape() && model.dual(&c.at_infinity[0]).ok().as_ref() == Some(&c.at_zero[0])
    })
}

/// Pre-minimal components have nonzero invariant exactly when minimal;
/// other components are assumed nonzero.
pub fn has_nonzero_invariant(model: &FormalPairModel, r: &RuledData) -> bool {
    r.components().iter().all(|c| {
        !c.is_pre_minimal_shape()
            || model.dual(&c.at_infinity[0]).ok().as_ref() == Some(&c.at_zero[0])
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.0[x] = root;
        root
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Calls `visit` with every bijection `left[i] -> right[perm[i]]` pairing
/// each left marking with a right marking it may glue to.
fn for_each_matching<L, R>(
    left: &[L],
    right: &[R],
    fits: impl Fn(&L, &R) -> bool,
    visit: &mut impl FnMut(&[usize]),
) {
    fn go<L, R>(
        i: usize,
        left: &[L],
        right: &[R],
        fits: &impl Fn(&L, &R) -> bool,
        used: &mut Vec<bool>,
        perm: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if i == left.len() {
            visit(perm);
            return;
        }
        for k in 0..right.len() {
            if !used[k] && fits(&left[i], &right[k]) {
                used[k] = true;
                perm.push(k);
                go(i + 1, left, right, fits, used, perm, visit);
                perm.pop();
                used[k] = false;
            }
        }
    }
    if left.len() != right.len() {
        return;
    }
    let mut used = vec![false; right.len()];
    let mut perm = Vec::new();
    go(0, left, right, &fits, &mut used, &mut perm, visit);
}

/// Genus, class, ordinary markings and surviving divisor markings of one
/// node of a gluing graph.
struct Piece {
    genus: u32,
    cls: Vec<Rational>,
    absolute: Vec<AbsMarking>,
    open_zero: Vec<RelMarking>,
    open_inf: Vec<RelMarking>,
}

/// Glues the pieces along `edges` and returns one merged piece per
/// connected cluster.
fn merge(pieces: &[Piece], edges: &[(usize, usize)]) -> Vec<Piece> {
    let mut uf = UnionFind::new(pieces.len());
    for &(a, b) in edges {
        uf.union(a, b);
    }
    let roots: Vec<usize> = (0..pieces.len()).map(|i| uf.find(i)).collect();
    let mut clusters: Vec<usize> = roots.clone();
    clusters.sort();
    clusters.dedup();
    let mut out = Vec::new();
    for root in clusters {
        let members: Vec<usize> = (0..pieces.len()).filter(|&i| roots[i] == root).collect();
        let e = edges.iter().filter(|&&(a, _)| roots[a] == root).count() as i64;
        let genus = members.iter().map(|&i| pieces[i].genus as i64).sum::<i64>() + e
            - members.len() as i64
            + 1;
        let mut cls = pieces[members[0]].cls.iter().map(|_| Rational::zero()).collect::<Vec<_>>();
        let mut piece = Piece {
            genus: genus as u32,
            cls: vec![],
            absolute: vec![],
            open_zero: vec![],
            open_inf: vec![],
        };
        for &i in &members {
            cls = add(&cls, &pieces[i].cls);
            piece.absolute.extend(pieces[i].absolute.iter().cloned());
            piece.open_zero.extend(pieces[i].open_zero.iter().cloned());
            piece.open_inf.extend(pieces[i].open_inf.iter().cloned());
        }
        piece.cls = cls;
        out.push(piece);
    }
    out
}

/// All results of gluing `rd` along its divisor markings to the infinity
/// markings of `ruled`. Markings glue when the ruled one is the dual of the
/// relative one; the ruled piece's markings at zero become the result's
/// divisor markings. Returns the empty set when no matching exists.
pub fn glue(model: &FormalPairModel, rd: &RelativeData, ruled: &RuledData) -> Result<BTreeSet<RelativeData>> {
    let mut left = Vec::new();
    for (ci, c) in rd.components().iter().enumerate() {
        for m in &c.relative {
            left.push((ci, model.dual(m)?));
        }
    }
    let offset = rd.components().len();
    let mut right = Vec::new();
    for (ri, c) in ruled.components().iter().enumerate() {
        for m in &c.at_infinity {
            right.push((offset + ri, m.clone()));
        }
    }
    let mut pieces: Vec<Piece> = rd
        .components()
        .iter()
        .map(|c| Piece {
            genus: c.genus,
            cls: c.cls.clone(),
            absolute: c.absolute.clone(),
            open_zero: vec![],
            open_inf: vec![],
        })
        .collect();
    pieces.extend(ruled.components().iter().map(|c| Piece {
        genus: c.genus,
        cls: c.base.clone(),
        absolute: c.absolute.clone(),
        open_zero: c.at_zero.clone(),
        open_inf: vec![],
    }));
    let mut results = BTreeSet::new();
    for_each_matching(&left, &right, |a, b| a.1 == b.1, &mut |perm| {
        let edges: Vec<(usize, usize)> = perm.iter().enumerate().map(|(i, &k)| (left[i].0, right[k].0)).collect();
        let comps = merge(&pieces, &edges)
            .into_iter()
            .map(|p| ConnectedRelativeData::new(p.genus, p.cls, p.absolute, p.open_zero))
            .collect();
        results.insert(RelativeData::new(comps));
    });
    Ok(results)
}

/// All results of stacking `lower` (nearer infinity) on `upper`: markings at
/// zero of `lower` glue to the dual markings at infinity of `upper`.
pub fn glue_ruled(model: &FormalPairModel, lower: &RuledData, upper: &RuledData) -> Result<BTreeSet<RuledData>> {
    let mut left = Vec::new();
    for (ci, c) in lower.components().iter().enumerate() {
        for m in &c.at_zero {
            left.push((ci, model.dual(m)?));
        }
    }
    let offset = lower.components().len();
    let mut right = Vec::new();
    for (ri, c) in upper.components().iter().enumerate() {
        for m in &c.at_infinity {
            right.push((offset + ri, m.clone()));
        }
    }
    let piece = |c: &RuledComponent, lower_side: bool| Piece {
        genus: c.genus,
        cls: c.base.clone(),
        absolute: c.absolute.clone(),
        open_zero: if lower_side { vec![] } else { c.at_zero.clone() },
        open_inf: if lower_side { c.at_infinity.clone() } else { vec![] },
    };
    let mut pieces: Vec<Piece> = lower.components().iter().map(|c| piece(c, true)).collect();
    pieces.extend(upper.components().iter().map(|c| piece(c, false)));
    let mut results = BTreeSet::new();
    for_each_matching(&left, &right, |a, b| a.1 == b.1, &mut |perm| {
        let edges: Vec<(usize, usize)> = perm.iter().enumerate().map(|(i, &k)| (left[i].0, right[k].0)).collect();
        let comps = merge(&pieces, &edges)
            .into_iter()
            .map(|p| RuledComponent {
                genus: p.genus,
                base: p.cls,
                at_infinity: p.open_inf,
                at_zero: p.open_zero,
                absolute: p.absolute,
            })
            .collect();
        results.insert(RuledData::new(comps));
    });
    Ok(results)
}

/// Class added to a relative datum by the ruled piece, summed over
/// components.
pub fn total_base(model: &FormalPairModel, r: &RuledData) -> Vec<Rational> {
    r.components().iter().fold(model.zero_class(), |acc, c| add(&acc, &c.base))
}

/// `rd2.cls - rd1.cls` summed over components.
pub fn class_difference(model: &FormalPairModel, rd1: &RelativeData, rd2: &RelativeData) -> Vec<Rational> {
    let total = |rd: &RelativeData| rd.components().iter().fold(model.zero_class(), |acc, c| add(&acc, &c.cls));
    sub(&total(rd2), &total(rd1))
}
