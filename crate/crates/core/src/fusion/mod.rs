//! Fusion rings ℤ[Irred(𝔾)] of Kac-type compact quantum groups.
//!
//! Three kinds of providers are built in:
//!
//! - `su2`: labels are twice the spin, `n_k = k + 1`, Clebsch–Gordan fusion
//! - `group:<G>`: the dual of a discrete group, one-dimensional irreps indexed
//!   by group elements, fusion given by the group law
//! - `finite:S3`: the representation ring of S₃
//!
//! Infinite rings are never enumerated; labels are produced on demand by
//! [`FusionRing::product_support`].

mod axioms;
pub mod group;
mod isoperimetry;
pub mod s3;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub use axioms::{check_axioms, AxiomReport};
pub use group::{Factor, GroupLaw};
pub use isoperimetry::BoundaryDecomposition;

/// Largest su2 label accepted; keeps dimension arithmetic far from overflow.
pub const SU2_MAX_LABEL: i64 = 1 << 20;

/// Label of an irreducible class. The encoding is provider specific and only
/// the first `arity` coordinates are used; the rest are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub [i64; 3]);

impl Label {
    pub const ZERO: Label = Label([0, 0, 0]);

    pub const fn scalar(k: i64) -> Label {
        Label([k, 0, 0])
    }

    pub const fn pair(a: i64, b: i64) -> Label {
        Label([a, b, 0])
    }

    pub const fn triple(a: i64, b: i64, c: i64) -> Label {
        Label([a, b, c])
    }
}

/// Which side an element acts from. `Right` is `x ↦ x·a`, `Left` is `x ↦ a·x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("side must be left or right, got `{s}`"))),
        }
    }
}

/// Finite sorted duplicate-free set of labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepSet(BTreeSet<Label>);

impl IrrepSet {
    pub fn new() -> Self {
        IrrepSet(BTreeSet::new())
    }

    pub fn singleton(u: Label) -> Self {
        IrrepSet(BTreeSet::from([u]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: &Label) -> bool {
        self.0.contains(u)
    }

    pub fn insert(&mut self, u: Label) -> bool {
        self.0.insert(u)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Label> + '_ {
        self.0.iter()
    }

    pub fn union(&self, other: &IrrepSet) -> IrrepSet {
        IrrepSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &IrrepSet) -> IrrepSet {
        IrrepSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &IrrepSet) -> IrrepSet {
        IrrepSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &IrrepSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<Label> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<Label> for IrrepSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        IrrepSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a IrrepSet {
    type Item = &'a Label;
    type IntoIter = std::collections::btree_set::Iter<'a, Label>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for IrrepSet {
    type Item = Label;
    type IntoIter = std::collections::btree_set::IntoIter<Label>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provider {
    Su2,
    Group(GroupLaw),
    S3,
}

#[derive(Debug)]
struct RingInner {
    provider: Provider,
    tag: String,
}

/// Immutable, cheaply clonable handle on a fusion ring.
#[derive(Clone)]
pub struct FusionRing {
    inner: Arc<RingInner>,
}

impl fmt::Debug for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FusionRing({})", self.inner.tag)
    }
}

impl PartialEq for FusionRing {
    fn eq(&self, other: &Self) -> bool {
        self.inner.tag == other.inner.tag
    }
}

impl Eq for FusionRing {}

impl FusionRing {
    fn from_provider(provider: Provider) -> Self {
        let tag = match &provider {
            Provider::Su2 => "su2".to_string(),
            Provider::S3 => "finite:S3".to_string(),
            Provider::Group(g) => format!("group:{g}"),
        };
        FusionRing {
            inner: Arc::new(RingInner { provider, tag }),
        }
    }

    pub fn su2() -> Self {
        Self::from_provider(Provider::Su2)
    }

    pub fn s3() -> Self {
        Self::from_provider(Provider::S3)
    }

    pub fn group(law: GroupLaw) -> Self {
        Self::from_provider(Provider::Group(law))
    }

    /// Parses a ring selection string such as `su2`, `group:Z^2`,
    /// `group:heisenberg` or `finite:S3`.
    pub fn parse(tag: &str) -> Result<Self> {
        let tag = tag.trim();
        if tag == "su2" {
            Ok(Self::su2())
        } else if tag == "finite:S3" {
            Ok(Self::s3())
        } else if let Some(g) = tag.strip_prefix("group:") {
            Ok(Self::group(GroupLaw::parse(g)?))
        } else {
            Err(Error::UnknownRing(tag.to_string()))
        }
    }

    pub fn tag(&self) -> &str {
        &self.inner.tag
    }

    pub fn provider(&self) -> &Provider {
        &self.inner.provider
    }

    pub fn group_law(&self) -> Option<&GroupLaw> {
        match &self.inner.provider {
            Provider::Group(g) => Some(g),
            _ => None,
        }
    }

    pub fn unit(&self) -> Label {
        Label::ZERO
    }

    pub fn is_valid(&self, u: Label) -> bool {
        match &self.inner.provider {
            Provider::Su2 => (0..=SU2_MAX_LABEL).contains(&u.0[0]) && u.0[1] == 0 && u.0[2] == 0,
            Provider::S3 => s3::LABELS.contains(&u),
            Provider::Group(g) => g.contains(u),
        }
    }

    pub fn validate(&self, u: Label) -> Result<()> {
        if self.is_valid(u) {
            Ok(())
        } else {
            Err(Error::InvalidLabel {
                ring: self.tag().to_string(),
                label: format!("{:?}", u.0),
            })
        }
    }

    pub fn validate_set(&self, set: &IrrepSet) -> Result<()> {
        set.iter().try_for_each(|u| self.validate(*u))
    }

    /// Matrix size `n_u`.
    pub fn dim(&self, u: Label) -> Result<u64> {
        self.validate(u)?;
        Ok(self.dim_unchecked(u))
    }

    pub(crate) fn dim_unchecked(&self, u: Label) -> u64 {
        match &self.inner.provider {
            Provider::Su2 => u.0[0] as u64 + 1,
            Provider::S3 => s3::dim(u),
            Provider::Group(_) => 1,
        }
    }

    pub fn conj(&self, u: Label) -> Result<Label> {
        self.validate(u)?;
        Ok(self.conj_unchecked(u))
    }

    pub(crate) fn conj_unchecked(&self, u: Label) -> Label {
        match &self.inner.provider {
            Provider::Su2 | Provider::S3 => u,
            Provider::Group(g) => g.inv(u),
        }
    }

    /// `supp(u ⊠ v)` with multiplicities `N_{uv}^w`, sorted by label.
    pub fn product_support(&self, u: Label, v: Label) -> Result<Vec<(Label, u64)>> {
        self.validate(u)?;
        self.validate(v)?;
        Ok(self.fuse_unchecked(u, v))
    }

    pub(crate) fn fuse_unchecked(&self, u: Label, v: Label) -> Vec<(Label, u64)> {
        match &self.inner.provider {
            Provider::Su2 => {
                let (k, l) = (u.0[0], v.0[0]);
                ((k - l).abs()..=k + l)
                    .step_by(2)
                    .map(|w| (Label::scalar(w), 1))
                    .collect()
            }
            Provider::S3 => s3::fuse(u, v),
            Provider::Group(g) => vec![(g.mul(u, v), 1)],
        }
    }

    /// Iterator over the support labels of `u ⊠ v` (no validation).
    pub(crate) fn fuse_support(&self, u: Label, v: Label) -> impl Iterator<Item = Label> {
        self.fuse_unchecked(u, v).into_iter().map(|(w, _)| w)
    }

    pub fn is_finite(&self) -> bool {
        self.elements().is_some()
    }

    /// All labels, for finite providers.
    pub fn elements(&self) -> Option<IrrepSet> {
        match &self.inner.provider {
            Provider::Su2 => None,
            Provider::S3 => Some(s3::LABELS.into_iter().collect()),
            Provider::Group(g) => g.elements().map(|v| v.into_iter().collect()),
        }
    }

    /// Standard generating set (without conjugates) used to grow windows.
    pub fn generators(&self) -> IrrepSet {
        match &self.inner.provider {
            Provider::Su2 => IrrepSet::singleton(Label::scalar(1)),
            Provider::S3 => IrrepSet::singleton(s3::STD),
            Provider::Group(g) => g.generators().into_iter().collect(),
        }
    }

    fn arity(&self) -> usize {
        match &self.inner.provider {
            Provider::Su2 | Provider::S3 => 1,
            Provider::Group(g) => g.arity(),
        }
    }

    /// JSON encoding of a label: integer, integer array, or string.
    pub fn label_to_json(&self, u: Label) -> Value {
        match &self.inner.provider {
            Provider::S3 => Value::String(s3::name(u).to_string()),
            _ if self.arity() == 1 => Value::from(u.0[0]),
            _ => Value::Array(u.0[..self.arity()].iter().map(|&x| Value::from(x)).collect()),
        }
    }

    pub fn label_from_json(&self, v: &Value) -> Result<Label> {
        let bad = || Error::InvalidLabel {
            ring: self.tag().to_string(),
            label: v.to_string(),
        };
        let label = match (&self.inner.provider, v) {
            (Provider::S3, Value::String(s)) => s3::from_name(s).ok_or_else(bad)?,
            (_, Value::Number(n)) if self.arity() == 1 => Label::scalar(n.as_i64().ok_or_else(bad)?),
            (_, Value::Array(xs)) if xs.len() == self.arity() => {
                let mut c = [0i64; 3];
                for (k, x) in xs.iter().enumerate() {
                    c[k] = x.as_i64().ok_or_else(bad)?;
                }
                Label(c)
            }
            _ => return Err(bad()),
        };
        self.validate(label)?;
        Ok(label)
    }

    /// Human-readable label, matching the JSON encoding.
    pub fn label_string(&self, u: Label) -> String {
        match self.label_to_json(u) {
            Value::String(s) => s,
            other => other.to_string(),
        }
    }

    /// Parses a label list given either as a JSON array of labels or as a
    /// comma-separated list of scalar labels / names (`"1,-1"`, `"std"`).
    pub fn parse_labels(&self, text: &str) -> Result<IrrepSet> {
        let text = text.trim();
        if text.starts_with('[') {
            let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            let items = v
                .as_array()
                .ok_or_else(|| Error::Parse("expected a JSON array of labels".into()))?;
            return items.iter().map(|x| self.label_from_json(x)).collect();
        }
        text.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                let t = t.trim();
                let v = match t.parse::<i64>() {
                    Ok(k) => Value::from(k),
                    Err(_) => Value::String(t.to_string()),
                };
                self.label_from_json(&v)
            })
            .collect()
    }

    pub fn labels_to_json(&self, set: &IrrepSet) -> Value {
        Value::Array(set.iter().map(|u| self.label_to_json(*u)).collect())
    }
}
