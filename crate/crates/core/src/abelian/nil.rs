use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::GroupSpec;

/// What is known about a Nil summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NilTag {
    Zero,
    /// A countably infinite direct sum of copies of `Z/2`.
    CountableSumZ2,
    /// No bundled result; never treated as zero.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NilValue {
    pub tag: NilTag,
    pub provenance: String,
}

impl NilValue {
    pub fn zero(provenance: impl Into<String>) -> Self {
        NilValue {
            tag: NilTag::Zero,
            provenance: provenance.into(),
        }
    }

    /// Sum of Nil summands: `Unknown` dominates, then `CountableSumZ2`.
    pub fn sum<'a>(values: impl IntoIterator<Item = &'a NilValue>) -> NilValue {
        let values: Vec<&NilValue> = values.into_iter().collect();
        let tag = values.iter().map(|v| v.tag).max().unwrap_or(NilTag::Zero);
        let provenance = values
            .iter()
            .filter(|v| v.tag == tag)
            .map(|v| v.provenance.as_str())
            .collect::<Vec<_>>()
            .join("; ");
        NilValue { tag, provenance }
    }

    /// Whether the value is usable as an exact answer.
    pub fn is_valid(&self) -> bool {
        self.tag != NilTag::Unknown || !self.provenance.trim().is_empty()
    }
}

impl fmt::Display for NilValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            NilTag::Zero => write!(f, "0"),
            NilTag::CountableSumZ2 => write!(f, "(+)_inf Z/2"),
            NilTag::Unknown => write!(f, "Nil(unknown)"),
        }
    }
}

/// Infinite virtually cyclic groups, named by their finite pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VcType {
    /// `F × Z`.
    DirectProduct(String),
    /// `F ⋊ Z` with a nontrivial twist.
    SemiDirect(String),
    /// `G₁ ∗_F G₂` with `F` of index 2 in both.
    AmalgamType(String, String, String),
}

impl fmt::Display for VcType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VcType::DirectProduct(g) => write!(f, "{g} x Z"),
            VcType::SemiDirect(g) => write!(f, "{g} x| Z"),
            VcType::AmalgamType(a, c, b) => write!(f, "{a} *_{{{c}}} {b}"),
        }
    }
}

fn canonical(name: &str) -> Option<GroupSpec> {
    name.parse::<GroupSpec>().ok().map(GroupSpec::canonical)
}

/// Looks up the Nil groups of an infinite virtually cyclic group.
///
/// Only the cases with a known answer are bundled; everything else is
/// `Unknown`. The amalgam cases reduce to the direct product with the
/// index-two subgroup's edge group where that reduction is known.
pub fn nil_classify(vc: &VcType) -> NilValue {
    use GroupSpec::*;
    let known = |tag: NilTag, why: &str| NilValue {
        tag,
        provenance: why.to_string(),
    };
    let result = match vc {
        VcType::DirectProduct(f) => match canonical(f) {
            Some(Cyclic(1)) => Some(known(NilTag::Zero, "Z[Z] is regular, so NK(Z) vanishes")),
            Some(Cyclic(2)) => Some(known(
                NilTag::Zero,
                "Bass NK_i(Z[Z/2]) vanishes for i <= 1",
            )),
            Some(Cyclic(4)) => Some(known(
                NilTag::CountableSumZ2,
                "NK_0(Z[Z/4]) and NK_1(Z[Z/4]) are countable sums of Z/2",
            )),
            _ => None,
        },
        VcType::SemiDirect(_) => None,
        VcType::AmalgamType(a, c, b) => {
            let (a, c, b) = (canonical(a), canonical(c), canonical(b));
            match (a, c, b) {
                (Some(Cyclic(4)), Some(Cyclic(2)), Some(Cyclic(4))) => Some(known(
                    NilTag::Zero,
                    "Waldhausen Nil reduces to Bass NK of Z/2 x Z, which vanishes in degrees <= 1",
                )),
                (Some(Cyclic(2)), Some(Cyclic(1)), Some(Cyclic(2))) => Some(known(
                    NilTag::Zero,
                    "the infinite dihedral group has trivial Waldhausen Nil groups",
                )),
                (Some(Dihedral(2)), Some(Cyclic(2)), Some(Dihedral(2))) => Some(known(
                    NilTag::Zero,
                    "Waldhausen Nil reduces to Bass NK of Z/2 x Z, which vanishes in degrees <= 1",
                )),
                (Some(Dicyclic(8)), Some(Cyclic(4)), Some(Dicyclic(8))) => Some(known(
                    NilTag::CountableSumZ2,
                    "Waldhausen Nil reduces to Bass NK of Z/4 x Z, a countable sum of Z/2",
                )),
                _ => None,
            }
        }
    };
    result.unwrap_or_else(|| known(NilTag::Unknown, "no bundled result"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let dp = |f: &str| nil_classify(&VcType::DirectProduct(f.into())).tag;
        let am = |a: &str, c: &str, b: &str| nil_classify(&VcType::AmalgamType(a.into(), c.into(), b.into())).tag;
        assert_eq!(dp("cyclic:2"), NilTag::Zero);
        assert_eq!(dp("trivial"), NilTag::Zero);
        assert_eq!(dp("cyclic:4"), NilTag::CountableSumZ2);
        assert_eq!(dp("cyclic:16"), NilTag::Unknown);
        assert_eq!(am("quaternion:8", "cyclic:4", "quaternion:8"), NilTag::CountableSumZ2);
        assert_eq!(am("dicyclic:8", "cyclic:4", "dicyclic:8"), NilTag::CountableSumZ2);
        assert_eq!(am("cyclic:4", "cyclic:2", "cyclic:4"), NilTag::Zero);
        assert_eq!(am("cyclic:2", "trivial", "cyclic:2"), NilTag::Zero);
        assert_eq!(am("dihedral:2", "cyclic:2", "dihedral:2"), NilTag::Zero);
        assert_eq!(nil_classify(&VcType::SemiDirect("cyclic:3".into())).tag, NilTag::Unknown);
        assert_eq!(
            nil_classify(&VcType::DirectProduct("cyclic:16".into())).provenance,
            "no bundled result"
        );
    }

    #[test]
    fn sums() {
        let z = NilValue::zero("a");
        let c = nil_classify(&VcType::DirectProduct("cyclic:4".into()));
        let u = nil_classify(&VcType::SemiDirect("cyclic:3".into()));
        assert_eq!(NilValue::sum([&z, &z]).tag, NilTag::Zero);
        assert_eq!(NilValue::sum([&z, &c]).tag, NilTag::CountableSumZ2);
        assert_eq!(NilValue::sum([&c, &u, &z]).tag, NilTag::Unknown);
        assert_eq!(NilValue::sum([]).tag, NilTag::Zero);
        assert!(u.is_valid());
        assert!(!NilValue { tag: NilTag::Unknown, provenance: " ".into() }.is_valid());
    }
}
