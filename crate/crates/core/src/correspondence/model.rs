//! Finite formal model of a weighted blowup pair over `(X, S)`.

use super::data::{AbsMarking, ConnectedRelativeData, RelMarking, RelativeData};
use super::lattice::{self, dot, mat_vec, Solution};
use crate::arith::{self, frac, int, rat, Rational};
use crate::error::{Error, Result};
use crate::local_model::LocalModel;
use crate::rank::{d_s, FiberClassLabel};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisClass {
    pub name: String,
    pub deg: i64,
}

/// A twisted sector of the center `S` with its involution partner and an
/// ordered basis of its cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSector {
    pub name: String,
    pub bar: String,
    pub basis: Vec<BasisClass>,
}

/// A twisted sector of the exceptional divisor lying over `pi`.
///
/// When several sectors lie over the same `pi` they share the local model
/// and `phase` records which residue class of contact orders mod 1 belongs
/// to this one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZSector {
    pub name: String,
    pub bar: String,
    pub pi: String,
    pub local_model: LocalModel,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub phase: Option<Rational>,
}

mod opt_rational {
    use crate::arith::{self, Rational};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(q) => arith::serde_rational::serialize(q, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        arith::serde_rational::deserialize(d).map(Some)
    }
}

/// `H_2` of the blowup as `Q^rank`, with the pairing against the
/// exceptional divisor and the pushforward to `H_2(X) = Q^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    pub rank: usize,
    #[serde(rename = "F", with = "arith::serde_rational_vec")]
    pub f: Vec<Rational>,
    #[serde(
        rename = "FZ",
        default,
        skip_serializing_if = "Option::is_none",
        with = "arith::serde_rational_vec_opt"
    )]
    pub fz: Option<Vec<Rational>>,
    #[serde(rename = "Z_pairing", with = "arith::serde_rational_vec")]
    pub z_pairing: Vec<Rational>,
    #[serde(with = "arith::serde_rational_mat")]
    pub kappa_push: Vec<Vec<Rational>>,
    /// Functional positive on nonzero effective base classes of the ruled
    /// piece. Defaults to the pairing with `Z`.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "arith::serde_rational_vec_opt")]
    pub omega: Option<Vec<Rational>>,
}

fn default_codim() -> u32 {
    2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPairModel")]
pub struct FormalPairModel {
    pub s_sectors: Vec<SSector>,
    pub z_sectors: Vec<ZSector>,
    pub k_classes: Vec<String>,
    pub lattice: Lattice,
    pub codim: u32,
}

#[derive(Deserialize)]
struct RawPairModel {
    s_sectors: Vec<SSector>,
    z_sectors: Vec<ZSector>,
    k_classes: Vec<String>,
    lattice: Lattice,
    #[serde(default = "default_codim")]
    codim: u32,
}

impl TryFrom<RawPairModel> for FormalPairModel {
    type Error = Error;
    fn try_from(raw: RawPairModel) -> Result<Self> {
        FormalPairModel::new(raw.s_sectors, raw.z_sectors, raw.k_classes, raw.lattice, raw.codim)
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidPairModel(msg.into())
}

/// All values of the ranking function mod 1.
fn residues(model: &LocalModel) -> BTreeSet<Rational> {
    let r = model.r() as i64;
    let mut out = BTreeSet::new();
    for (&b, &a) in model.beta().iter().zip(model.alpha()) {
        for k in 0..a as i64 {
            out.insert(frac(&rat(b as i64 + k * r, a as i64 * r)));
        }
    }
    out
}

impl FormalPairModel {
    pub fn new(
        s_sectors: Vec<SSector>,
        mut z_sectors: Vec<ZSector>,
        k_classes: Vec<String>,
        lattice: Lattice,
        codim: u32,
    ) -> Result<Self> {
        for z in z_sectors.iter_mut() {
            z.phase = z.phase.as_ref().map(frac);
        }
        let model = Self { s_sectors, z_sectors, k_classes, lattice, codim };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        if self.codim == 0 {
            return Err(bad("codim must be at least 1"));
        }
        let mut names = BTreeSet::new();
        for s in &self.s_sectors {
            if !names.insert(&s.name) {
                return Err(bad(format!("duplicate sector `{}`", s.name)));
            }
        }
        for s in &self.s_sectors {
            let partner = self.s_sector(&s.bar)?;
            if partner.bar != s.name {
                return Err(bad(format!("involution is not self-inverse at `{}`", s.name)));
            }
            if partner.basis.len() != s.basis.len() {
                return Err(bad(format!("`{}` and `{}` have bases of different size", s.name, s.bar)));
            }
        }
        let mut znames = BTreeSet::new();
        for z in &self.z_sectors {
            if !znames.insert(&z.name) || names.contains(&z.name) {
                return Err(bad(format!("duplicate sector `{}`", z.name)));
            }
        }
        for z in &self.z_sectors {
            let partner = self.z_sector(&z.bar)?;
            if partner.bar != z.name {
                return Err(bad(format!("involution is not self-inverse at `{}`", z.name)));
            }
            let t = self.s_sector(&z.pi)?;
            if partner.pi != t.bar {
                return Err(bad(format!("`{}` does not lie over the partner of `{}`", z.bar, z.pi)));
            }
        }
        let mut labels = BTreeSet::new();
        if !self.k_classes.iter().all(|k| labels.insert(k)) {
            return Err(bad("duplicate label in k_classes"));
        }
        self.validate_lattice()?;
        if self.codim >= 2 {
            self.validate_phases()?;
        }
        Ok(())
    }

    fn validate_lattice(&self) -> Result<()> {
        let l = &self.lattice;
        let k = l.rank;
        let dims_ok = l.f.len() == k
            && l.z_pairing.len() == k
            && l.kappa_push.iter().all(|row| row.len() == k)
            && l.fz.as_ref().is_none_or(|v| v.len() == k)
            && l.omega.as_ref().is_none_or(|v| v.len() == k);
        if !dims_ok || l.kappa_push.is_empty() {
            return Err(bad(format!("lattice vectors must have length {k}")));
        }
        if l.fz.as_ref().is_some_and(|v| !lattice::is_zero(v)) {
            return Err(bad("the ruled fiber class must push forward to zero"));
        }
        if lattice::is_zero(self.omega()) {
            return Err(bad("omega must be nonzero"));
        }
        let m = l.kappa_push.len();
        let push_rank = lattice::rank(&l.kappa_push);
        if self.codim >= 2 {
            if push_rank != m {
                return Err(bad("pushforward must be surjective"));
            }
            if lattice::rank(&self.stacked()) != k {
                return Err(bad("class is not determined by pushforward and pairing"));
            }
            if !lattice::is_zero(&mat_vec(&l.kappa_push, &l.f)) {
                return Err(bad("fiber class must push forward to zero"));
            }
            if dot(&l.f, &l.z_pairing) != -Rational::one() {
                return Err(bad("fiber class must meet Z in -1"));
            }
        } else if push_rank != k {
            return Err(bad("codimension 1 needs an injective pushforward"));
        }
        Ok(())
    }

    fn validate_phases(&self) -> Result<()> {
        for t in &self.s_sectors {
            let over: Vec<&ZSector> = self.sectors_over(&t.name).collect();
            match over.as_slice() {
                [] => return Err(bad(format!("no exceptional sector over `{}`", t.name))),
                [one] if one.phase.is_none() => {}
                _ => {
                    let lm = &over[0].local_model;
                    if over.iter().any(|z| z.local_model != *lm) {
                        return Err(bad(format!("sectors over `{}` use different local models", t.name)));
                    }
                    let mut phases = BTreeSet::new();
                    for z in &over {
                        let Some(p) = &z.phase else {
                            return Err(bad(format!("sector `{}` needs a phase", z.name)));
                        };
                        if !phases.insert(p.clone()) {
                            return Err(bad(format!("phase {p} repeated over `{}`", t.name)));
                        }
                    }
                    if phases != residues(lm) {
                        return Err(bad(format!(
                            "phases over `{}` do not match the contact residues",
                            t.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[kappa_push; Z_pairing]`.
    pub(crate) fn stacked(&self) -> Vec<Vec<Rational>> {
        let mut m = self.lattice.kappa_push.clone();
        m.push(self.lattice.z_pairing.clone());
        m
    }

    pub fn s_sector(&self, name: &str) -> Result<&SSector> {
        self.s_sectors
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn z_sector(&self, name: &str) -> Result<&ZSector> {
        self.z_sectors
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn sectors_over<'a>(&'a self, t: &'a str) -> impl Iterator<Item = &'a ZSector> + 'a {
        self.z_sectors.iter().filter(move |z| z.pi == t)
    }

    pub fn is_bijective_regime(&self) -> bool {
        self.codim >= 2
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank
    }

    pub fn base_rank(&self) -> usize {
        self.lattice.kappa_push.len()
    }

    pub fn omega(&self) -> &[Rational] {
        self.lattice.omega.as_deref().unwrap_or(&self.lattice.z_pairing)
    }

    pub fn pair_z(&self, cls: &[Rational]) -> Rational {
        dot(cls, &self.lattice.z_pairing)
    }

    pub fn pair_omega(&self, cls: &[Rational]) -> Rational {
        dot(cls, self.omega())
    }

    pub fn push(&self, cls: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.lattice.kappa_push, cls)
    }

    /// The class `X` with `kappa_* X = a` and `X . Z = contact`.
    pub fn solve_class(&self, a: &[Rational], contact: &Rational) -> Result<Vec<Rational>> {
        if a.len() != self.base_rank() {
            return Err(Error::ClassDimension { expected: self.base_rank(), got: a.len() });
        }
        let mut rhs = a.to_vec();
        rhs.push(contact.clone());
        match lattice::solve(&self.stacked(), &rhs) {
            Solution::Unique(x) => Ok(x),
            Solution::Inconsistent => Err(Error::OutOfImage(format!(
                "no class pushes forward to the given class with contact {contact}"
            ))),
            Solution::Underdetermined => Err(bad("class lift is not unique")),
        }
    }

    /// The lift `kappa^! A` meeting `Z` trivially.
    pub fn lift(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        self.solve_class(a, &Rational::zero())
    }

    /// Checks a relative marking: sector, phase, ranking value and basis.
    pub fn check_marking(&self, m: &RelMarking) -> Result<()> {
        let z = self.z_sector(&m.sector)?;
        let label = FiberClassLabel::new(&z.local_model, m.contact.clone())?;
        if let Some(p) = &z.phase {
            if frac(&m.contact) != *p {
                return Err(Error::PhaseMismatch { sector: z.name.clone(), contact: m.contact.clone() });
            }
        }
        let max = d_s(&z.local_model, &label);
        if m.insertion.ell > max {
            return Err(Error::PowerOutOfRange { d: m.insertion.ell, max });
        }
        let size = self.s_sector(&z.pi)?.basis.len();
        if m.insertion.j == 0 || m.insertion.j > size {
            return Err(Error::NotInBasis(m.to_string()));
        }
        Ok(())
    }

    pub fn check_absolute(&self, m: &AbsMarking) -> Result<()> {
        if self.k_classes.contains(&m.class) {
            Ok(())
        } else {
            Err(Error::NotInBasis(m.to_string()))
        }
    }

    pub fn check_component(&self, c: &ConnectedRelativeData) -> Result<()> {
        if c.cls.len() != self.rank() {
            return Err(Error::ClassDimension { expected: self.rank(), got: c.cls.len() });
        }
        for m in &c.relative {
            self.check_marking(m)?;
        }
        for m in &c.absolute {
            self.check_absolute(m)?;
        }
        let contact: Rational = c.relative.iter().map(|m| m.contact.clone()).sum();
        let pairing = self.pair_z(&c.cls);
        if pairing != contact {
            return Err(Error::ContactMismatch { pairing, contact });
        }
        Ok(())
    }

    pub fn check_relative(&self, rd: &RelativeData) -> Result<()> {
        rd.components().iter().try_for_each(|c| self.check_component(c))
    }

    /// The marking at the other end of a fiber: partner sector, same contact
    /// and insertion indices.
    pub fn dual(&self, m: &RelMarking) -> Result<RelMarking> {
        let z = self.z_sector(&m.sector)?;
        Ok(RelMarking { sector: z.bar.clone(), ..m.clone() })
    }

    /// `F` scaled by `q`.
    pub fn fiber(&self, q: &Rational) -> Vec<Rational> {
        lattice::scale(q, &self.lattice.f)
    }

    pub fn zero_class(&self) -> Vec<Rational> {
        vec![int(0); self.rank()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const R2: &str = r#"{
      "s_sectors": [{"name": "t", "bar": "t", "basis": [{"name": "1", "deg": 0}]}],
      "z_sectors": [{"name": "s", "bar": "s", "pi": "t",
                     "local_model": {"r": 2, "beta": [1, 2], "alpha": [1, 1]}}],
      "k_classes": ["1"],
      "lattice": {"rank": 2, "F": [0, 1], "Z_pairing": [0, -1], "kappa_push": [[1, 0]]}
    }"#;

    #[test]
    fn loads_and_lifts() {
        let m: FormalPairModel = serde_json::from_str(R2).unwrap();
        assert_eq!(m.codim, 2);
        assert_eq!(m.lift(&[int(3)]).unwrap(), vec![int(3), int(0)]);
        assert_eq!(m.solve_class(&[int(1)], &rat(1, 2)).unwrap(), vec![int(1), rat(-1, 2)]);
        let marking = RelMarking::new("s", rat(1, 2), 1, 0);
        m.check_marking(&marking).unwrap();
        assert!(matches!(
            m.check_marking(&RelMarking::new("s", rat(1, 3), 1, 0)),
            Err(Error::NotInImage(_))
        ));
        assert!(matches!(
            m.check_marking(&RelMarking::new("s", rat(1, 2), 2, 0)),
            Err(Error::NotInBasis(_))
        ));
    }

    #[test]
    fn rejects_bad_models() {
        let broken = R2.replace("\"F\": [0, 1]", "\"F\": [0, 2]");
        let err = serde_json::from_str::<FormalPairModel>(&broken).unwrap_err();
        assert!(err.to_string().contains("meet Z"));
        let broken = R2.replace("\"bar\": \"t\"", "\"bar\": \"u\"");
        assert!(serde_json::from_str::<FormalPairModel>(&broken).is_err());
        let phased = R2.replace("\"alpha\": [1, 1]}", "\"alpha\": [1, 1]}, \"phase\": \"1/2\"");
        let err = serde_json::from_str::<FormalPairModel>(&phased).unwrap_err();
        assert!(err.to_string().contains("residues"));
    }
}
