//! Relative, absolute and ruled data in canonical form.
//!
//! Every container sorts its markings and components on construction, so the
//! derived `Ord` on the field order `(genus, class, absolute markings,
//! relative markings)` is the structural key and `==` is structural equality.

use crate::arith::{self, format_rational, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The dual-basis element `theta_j ∪ H^ell` of an exceptional sector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SigmaLabel {
    pub j: usize,
    pub ell: u32,
}

/// A marking on the divisor: sector, contact order, insertion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RelMarking {
    pub sector: String,
    #[serde(with = "arith::serde_rational")]
    pub contact: Rational,
    pub insertion: SigmaLabel,
}

impl RelMarking {
    pub fn new(sector: &str, contact: Rational, j: usize, ell: u32) -> Self {
        Self {
            sector: sector.to_string(),
            contact,
            insertion: SigmaLabel { j, ell },
        }
    }
}

/// An ordinary marking: sector label, insertion from the pulled-back basis,
/// descendant power.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AbsMarking {
    pub sector: String,
    pub class: String,
    pub psi: u32,
}

/// A marking of the base pair carrying `(theta^j_(t) ∪ Theta) psi^c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SMarking {
    pub sector: String,
    pub j: usize,
    pub psi: u64,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConnectedRelativeData {
    pub genus: u32,
    #[serde(with = "arith::serde_rational_vec")]
    pub cls: Vec<Rational>,
    #[serde(default)]
    pub absolute: Vec<AbsMarking>,
    #[serde(default)]
    pub relative: Vec<RelMarking>,
    #[serde(default = "default_true")]
    pub admissible: bool,
}

impl ConnectedRelativeData {
    pub fn new(
        genus: u32,
        cls: Vec<Rational>,
        mut absolute: Vec<AbsMarking>,
        mut relative: Vec<RelMarking>,
    ) -> Self {
        absolute.sort();
        relative.sort();
        Self { genus, cls, absolute, relative, admissible: true }
    }

    fn canonical(mut self) -> Self {
        self.absolute.sort();
        self.relative.sort();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<ConnectedRelativeData>", into = "Vec<ConnectedRelativeData>")]
pub struct RelativeData {
    components: Vec<ConnectedRelativeData>,
}

impl RelativeData {
    pub fn new(components: Vec<ConnectedRelativeData>) -> Self {
        let mut components: Vec<_> = components.into_iter().map(|c| c.canonical()).collect();
        components.sort();
        Self { components }
    }

    pub fn components(&self) -> &[ConnectedRelativeData] {
        &self.components
    }

    pub fn relative_markings(&self) -> impl Iterator<Item = &RelMarking> {
        self.components.iter().flat_map(|c| c.relative.iter())
    }

    /// Disjoint union.
    pub fn union(&self, other: &RelativeData) -> RelativeData {
        RelativeData::new(self.components.iter().chain(&other.components).cloned().collect())
    }
}

impl From<Vec<ConnectedRelativeData>> for RelativeData {
    fn from(v: Vec<ConnectedRelativeData>) -> Self {
        RelativeData::new(v)
    }
}

impl From<RelativeData> for Vec<ConnectedRelativeData> {
    fn from(rd: RelativeData) -> Self {
        rd.components
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConnectedAbsoluteData {
    pub genus: u32,
    #[serde(with = "arith::serde_rational_vec")]
    pub cls: Vec<Rational>,
    #[serde(default)]
    pub absolute: Vec<AbsMarking>,
    #[serde(default)]
    pub s_markings: Vec<SMarking>,
}

impl ConnectedAbsoluteData {
    fn canonical(mut self) -> Self {
        self.absolute.sort();
        self.s_markings.sort();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<ConnectedAbsoluteData>", into = "Vec<ConnectedAbsoluteData>")]
pub struct AbsoluteData {
    components: Vec<ConnectedAbsoluteData>,
}

impl AbsoluteData {
    pub fn new(components: Vec<ConnectedAbsoluteData>) -> Self {
        let mut components: Vec<_> = components.into_iter().map(|c| c.canonical()).collect();
        components.sort();
        Self { components }
    }

    pub fn components(&self) -> &[ConnectedAbsoluteData] {
        &self.components
    }
}

impl From<Vec<ConnectedAbsoluteData>> for AbsoluteData {
    fn from(v: Vec<ConnectedAbsoluteData>) -> Self {
        AbsoluteData::new(v)
    }
}

impl From<AbsoluteData> for Vec<ConnectedAbsoluteData> {
    fn from(ad: AbsoluteData) -> Self {
        ad.components
    }
}

/// A connected datum of the ruled piece: base class (its image in the
/// lattice of the blowup), markings at the infinity and zero sections and
/// ordinary markings. The fiber degree is the total contact at infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RuledComponent {
    pub genus: u32,
    #[serde(with = "arith::serde_rational_vec")]
    pub base: Vec<Rational>,
    pub at_infinity: Vec<RelMarking>,
    pub at_zero: Vec<RelMarking>,
    #[serde(default)]
    pub absolute: Vec<AbsMarking>,
}

impl RuledComponent {
    fn canonical(mut self) -> Self {
        self.at_infinity.sort();
        self.at_zero.sort();
        self.absolute.sort();
        self
    }

    /// Genus zero, zero base, one marking at each end, nothing else.
    pub fn is_pre_minimal_shape(&self) -> bool {
        self.genus == 0
            && arith_zero(&self.base)
            && self.at_infinity.len() == 1
            && self.at_zero.len() == 1
            && self.absolute.is_empty()
    }
}

fn arith_zero(v: &[Rational]) -> bool {
    super::lattice::is_zero(v)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<RuledComponent>", into = "Vec<RuledComponent>")]
pub struct RuledData {
    components: Vec<RuledComponent>,
}

impl RuledData {
    pub fn new(components: Vec<RuledComponent>) -> Self {
        let mut components: Vec<_> = components.into_iter().map(|c| c.canonical()).collect();
        components.sort();
        Self { components }
    }

    pub fn components(&self) -> &[RuledComponent] {
        &self.components
    }
}

impl From<Vec<RuledComponent>> for RuledData {
    fn from(v: Vec<RuledComponent>) -> Self {
        RuledData::new(v)
    }
}

impl From<RuledData> for Vec<RuledComponent> {
    fn from(d: RuledData) -> Self {
        d.components
    }
}

/// One connected minimal datum per triple `(s, u, beta)`: genus zero, class
/// `u [F_Z]`, the dual marking at infinity and the marking itself at zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NMinimalData {
    pub components: Vec<RelMarking>,
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for RelMarking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}.{}",
            self.sector,
            format_rational(&self.contact),
            self.insertion.j,
            self.insertion.ell
        )
    }
}

impl fmt::Display for AbsMarking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}^{}", self.sector, self.class, self.psi)
    }
}

impl fmt::Display for SMarking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}^{}", self.sector, self.j, self.psi)
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for ConnectedRelativeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g={} A={} [{}|{}]",
            self.genus,
            fmt_vec(&self.cls),
            join(&self.absolute),
            join(&self.relative)
        )
    }
}

impl fmt::Display for RelativeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.components.iter().map(|c| format!("{{{c}}}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for ConnectedAbsoluteData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g={} A={} [{}|{}]",
            self.genus,
            fmt_vec(&self.cls),
            join(&self.absolute),
            join(&self.s_markings)
        )
    }
}

impl fmt::Display for AbsoluteData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.components.iter().map(|c| format!("{{{c}}}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `g=0 B=(0,1) [inf|zero|abs]`, infinity-side markings first.
impl fmt::Display for RuledComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g={} B={} [{}|{}|{}]",
            self.genus,
            fmt_vec(&self.base),
            join(&self.at_infinity),
            join(&self.at_zero),
            join(&self.absolute)
        )
    }
}

impl fmt::Display for RuledData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.components.iter().map(|c| format!("{{{c}}}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
