use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{big_matrix, AbelianMap, AbelianPresentation, FgAbelianGroup};
use super::ktheory::{bundled_ksheet, Degree, KSheet};
use super::nil::{nil_classify, NilTag, NilValue, VcType};
use super::KError;
use crate::group::GroupSpec;

/// Induced map `K_n(Z[C]) → K_n(Z[A]) ⊕ K_n(Z[B])` as cited input data.
///
/// Rows index the target generators in the order: torsion generators of
/// `A`, torsion generators of `B`, free generators of `A`, free generators
/// of `B` (each group's own generators in canonical invariant-factor order).
/// A missing matrix means the zero map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub degree: Degree,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    pub source: String,
    pub cite: String,
}

/// A Nil contribution: an infinite virtually cyclic subgroup type, with an
/// explicit value or (if absent) the bundled classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilEntry {
    pub vc: VcType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<NilValue>,
    pub cite: String,
}

impl NilEntry {
    pub fn resolved(&self) -> NilValue {
        self.value.clone().unwrap_or_else(|| nil_classify(&self.vc))
    }
}

/// Everything needed to assemble the lower K-theory of `A ∗_C B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblySpec {
    pub name: String,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    /// Sheets overriding or extending the bundled table.
    #[serde(default)]
    pub sheets: Vec<KSheet>,
    pub maps: Vec<MapSpec>,
    #[serde(default)]
    pub nils: Vec<NilEntry>,
}

impl AssemblySpec {
    pub fn from_json(s: &str) -> Result<Self, KError> {
        let spec: AssemblySpec = serde_json::from_str(s).map_err(|e| KError::Schema(e.to_string()))?;
        for m in &spec.maps {
            if m.cite.trim().is_empty() {
                return Err(KError::Schema(format!("map in degree {} has an empty cite", m.degree)));
            }
        }
        for n in &spec.nils {
            if n.cite.trim().is_empty() {
                return Err(KError::Schema(format!("nil entry {} has an empty cite", n.vc)));
            }
        }
        Ok(spec)
    }

    fn sheet(&self, name: &str) -> Result<KSheet, KError> {
        let want = name.parse::<GroupSpec>().map(GroupSpec::canonical).ok();
        self.sheets
            .iter()
            .find(|s| s.group == name || (want.is_some() && s.group.parse::<GroupSpec>().map(GroupSpec::canonical).ok() == want))
            .cloned()
            .or_else(|| bundled_ksheet(name))
            .ok_or_else(|| KError::MissingSheet(name.to_string()))
    }
}

/// One degree of the decomposition `coker ⊕ ker(degree below) ⊕ Nil`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeResult {
    pub degree: Degree,
    pub coker: FgAbelianGroup,
    pub ker_shift: FgAbelianGroup,
    /// Abelian part: `coker ⊕ ker_shift`.
    pub abelian: FgAbelianGroup,
    pub nil: NilValue,
    pub map_cite: String,
}

impl fmt::Display for DegreeResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.nil.tag {
            NilTag::Zero => write!(f, "{}", self.abelian),
            _ if self.abelian.is_zero() => write!(f, "{}", self.nil),
            _ => write!(f, "{} + {}", self.abelian, self.nil),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assembly {
    pub name: String,
    pub degrees: Vec<DegreeResult>,
}

impl Assembly {
    pub fn degree(&self, d: Degree) -> &DegreeResult {
        self.degrees.iter().find(|r| r.degree == d).expect("all degrees assembled")
    }
}

fn induced_map(spec: &AssemblySpec, sheets: [&KSheet; 3], d: Degree) -> Result<(AbelianMap, String), KError> {
    let [a, b, c] = sheets;
    let m = spec
        .maps
        .iter()
        .find(|m| m.degree == d)
        .ok_or(KError::MissingDegree(d))?;
    let same = |x: &str, y: &str| {
        x == y || matches!((x.parse::<GroupSpec>(), y.parse::<GroupSpec>()), (Ok(p), Ok(q)) if p.canonical() == q.canonical())
    };
    if !same(&m.source, &spec.c) {
        return Err(KError::IllFormedMap(format!(
            "map in degree {d} starts at {}, expected {}",
            m.source, spec.c
        )));
    }
    let (ga, gb) = (a.get(d), b.get(d));
    let torsion: Vec<u64> = ga.torsion().iter().chain(gb.torsion()).copied().collect();
    let target = AbelianPresentation::from_orders(&torsion, ga.free_rank() + gb.free_rank());
    let source = c.get(d).presentation();
    let map = match &m.matrix {
        None => AbelianMap::zero(source, target),
        Some(rows) => {
            let shape_err = || {
                KError::IllFormedMap(format!(
                    "matrix in degree {d} must be {}x{}",
                    target.generators(),
                    source.generators()
                ))
            };
            if rows.len() != target.generators() {
                return Err(shape_err());
            }
            let matrix = big_matrix(rows, source.generators()).ok_or_else(shape_err)?;
            AbelianMap::new(source, target, matrix)?
        }
    };
    Ok((map, m.cite.clone()))
}

/// Assembles `K_n(Z[A ∗_C B]) ≅ coker_n ⊕ ker_{n−1} ⊕ Nil_n` for the lower degrees.
pub fn amalgam_k_assemble(spec: &AssemblySpec) -> Result<Assembly, KError> {
    let sheets = [spec.sheet(&spec.a)?, spec.sheet(&spec.b)?, spec.sheet(&spec.c)?];
    let refs = [&sheets[0], &sheets[1], &sheets[2]];
    let mut maps = Vec::new();
    for d in Degree::ALL {
        maps.push((d, induced_map(spec, refs, d)?));
    }
    let nil_values: Vec<NilValue> = spec.nils.iter().map(NilEntry::resolved).collect();
    let nil_sum = if nil_values.is_empty() {
        NilValue::zero("no infinite virtually cyclic subgroups listed")
    } else {
        NilValue::sum(&nil_values)
    };
    let degrees = maps
        .iter()
        .map(|(d, (map, cite))| {
            let coker = map.cokernel();
            let ker_shift = d
                .lower()
                .and_then(|lower| maps.iter().find(|(e, _)| *e == lower))
                .map(|(_, (m, _))| m.kernel())
                .unwrap_or_default();
            let nil = if d.carries_nil() {
                nil_sum.clone()
            } else {
                NilValue::zero("Nil summands vanish in negative degrees")
            };
            DegreeResult {
                degree: *d,
                abelian: coker.direct_sum(&ker_shift),
                coker,
                ker_shift,
                nil,
                map_cite: cite.clone(),
            }
        })
        .collect();
    Ok(Assembly {
        name: spec.name.clone(),
        degrees,
    })
}

const BUNDLED_SPECS: [(&str, &str); 3] = [
    ("pb3rp2", include_str!("../../specs/pb3rp2.json")),
    ("b3rp2", include_str!("../../specs/b3rp2.json")),
    ("mcg-rp2-3", include_str!("../../specs/mcg-rp2-3.json")),
];

/// Names of the bundled assembly specs.
pub fn bundled_spec_names() -> Vec<&'static str> {
    BUNDLED_SPECS.iter().map(|(n, _)| *n).collect()
}

/// A bundled assembly spec by name (with or without `specs/` and `.json`).
pub fn bundled_spec(name: &str) -> Option<AssemblySpec> {
    let key = name.trim_start_matches("specs/").trim_end_matches(".json");
    BUNDLED_SPECS
        .iter()
        .find(|(n, _)| *n == key)
        .map(|(_, s)| AssemblySpec::from_json(s).expect("bundled spec parses"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assemble(name: &str) -> Assembly {
        amalgam_k_assemble(&bundled_spec(name).unwrap()).unwrap()
    }

    fn show(a: &Assembly) -> Vec<String> {
        Degree::ALL.iter().map(|&d| a.degree(d).to_string()).collect()
    }

    #[test]
    fn pure_braid_case() {
        assert_eq!(show(&assemble("pb3rp2")), ["0", "Z/2", "0", "0"]);
    }

    #[test]
    fn full_braid_case() {
        let a = assemble("b3rp2");
        assert_eq!(a.degree(Degree::Wh).abelian.to_string(), "Z^2");
        assert_eq!(a.degree(Degree::K0t).abelian.to_string(), "(Z/2)^4");
        assert_eq!(a.degree(Degree::Km1).abelian.to_string(), "Z^2 + (Z/2)^2");
        assert!(a.degree(Degree::Km2).abelian.is_zero());
        assert_eq!(a.degree(Degree::Wh).nil.tag, NilTag::CountableSumZ2);
        assert_eq!(a.degree(Degree::K0t).nil.tag, NilTag::CountableSumZ2);
        assert_eq!(a.degree(Degree::Km1).nil.tag, NilTag::Zero);
        for d in [Degree::Wh, Degree::K0t, Degree::Km1] {
            assert!(a.degree(d).ker_shift.is_zero());
        }
    }

    #[test]
    fn mapping_class_case() {
        assert_eq!(show(&assemble("mcg-rp2-3")), ["0", "0", "Z", "0"]);
    }

    #[test]
    fn swapping_the_free_component_keeps_the_cokernel() {
        let mut spec = bundled_spec("b3rp2").unwrap();
        let m = spec.maps.iter_mut().find(|m| m.degree == Degree::Km1).unwrap();
        m.matrix = Some(vec![vec![0], vec![0], vec![1], vec![0], vec![1]]);
        let a = amalgam_k_assemble(&spec).unwrap();
        assert_eq!(a.degree(Degree::Km1).abelian.to_string(), "Z^2 + (Z/2)^2");
    }

    #[test]
    fn identity_maps_kill_everything() {
        let spec = AssemblySpec {
            name: "double".into(),
            a: "dicyclic:12".into(),
            b: "trivial".into(),
            c: "dicyclic:12".into(),
            sheets: vec![],
            maps: Degree::ALL
                .iter()
                .map(|&d| MapSpec {
                    degree: d,
                    matrix: match d {
                        Degree::K0t | Degree::Km1 => Some(vec![vec![1]]),
                        _ => None,
                    },
                    source: "dicyclic:12".into(),
                    cite: "identity".into(),
                })
                .collect(),
            nils: vec![],
        };
        let a = amalgam_k_assemble(&spec).unwrap();
        assert!(a.degrees.iter().all(|r| r.abelian.is_zero()));
    }

    #[test]
    fn spec_errors() {
        let mut spec = bundled_spec("pb3rp2").unwrap();
        spec.maps.retain(|m| m.degree != Degree::Km1);
        assert_eq!(amalgam_k_assemble(&spec).unwrap_err(), KError::MissingDegree(Degree::Km1));

        let mut spec = bundled_spec("pb3rp2").unwrap();
        spec.maps[0].matrix = Some(vec![vec![1, 2, 3]]);
        assert!(matches!(amalgam_k_assemble(&spec), Err(KError::IllFormedMap(_))));

        let mut spec = bundled_spec("pb3rp2").unwrap();
        spec.a = "binary-tetrahedral".into();
        assert!(matches!(amalgam_k_assemble(&spec), Err(KError::MissingSheet(_))));

        let no_cite = r#"{"name":"x","A":"trivial","B":"trivial","C":"trivial",
            "maps":[{"degree":"Wh","source":"trivial"}]}"#;
        assert!(matches!(AssemblySpec::from_json(no_cite), Err(KError::Schema(_))));
    }

    #[test]
    fn json_round_trip() {
        for name in bundled_spec_names() {
            let spec = bundled_spec(name).unwrap();
            let back = AssemblySpec::from_json(&serde_json::to_string(&spec).unwrap()).unwrap();
            assert_eq!(back, spec);
        }
    }
}
