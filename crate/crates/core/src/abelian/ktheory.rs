use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FgAbelianGroup, KError};
use crate::group::{FiniteGroup, GroupSpec};
use crate::repcount::{count_irreducibles, sc_rank, FusionSpec};

/// The lower K-theory degrees tracked per group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Degree {
    /// Whitehead group, degree 1.
    Wh,
    /// Reduced projective class group, degree 0.
    K0t,
    Km1,
    /// Representative of all degrees ≤ −2.
    Km2,
}

impl Degree {
    pub const ALL: [Degree; 4] = [Degree::Wh, Degree::K0t, Degree::Km1, Degree::Km2];

    /// The next lower degree; `None` below `Km2`, where everything vanishes.
    pub fn lower(self) -> Option<Degree> {
        match self {
            Degree::Wh => Some(Degree::K0t),
            Degree::K0t => Some(Degree::Km1),
            Degree::Km1 => Some(Degree::Km2),
            Degree::Km2 => None,
        }
    }

    /// Whether Nil summands can appear in this degree.
    pub fn carries_nil(self) -> bool {
        matches!(self, Degree::Wh | Degree::K0t)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Degree::Wh => "Wh",
            Degree::K0t => "K0~",
            Degree::Km1 => "K_-1",
            Degree::Km2 => "K_<=-2",
        })
    }
}

/// Lower K-groups of the integral group ring of one finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSheet {
    pub group: String,
    #[serde(rename = "Wh")]
    pub wh: FgAbelianGroup,
    #[serde(rename = "K0t")]
    pub k0t: FgAbelianGroup,
    #[serde(rename = "Km1")]
    pub km1: FgAbelianGroup,
    #[serde(rename = "Km2", default)]
    pub km2: FgAbelianGroup,
    pub cite: String,
}

impl KSheet {
    pub fn get(&self, d: Degree) -> &FgAbelianGroup {
        match d {
            Degree::Wh => &self.wh,
            Degree::K0t => &self.k0t,
            Degree::Km1 => &self.km1,
            Degree::Km2 => &self.km2,
        }
    }
}

const BUNDLED_SHEETS: &str = include_str!("../../data/ksheets.json");

/// Every bundled sheet, in file order.
pub fn bundled_ksheets() -> Vec<KSheet> {
    serde_json::from_str(BUNDLED_SHEETS).expect("bundled K-sheets parse")
}

/// The bundled sheet for a group name (aliases accepted).
pub fn bundled_ksheet(name: &str) -> Option<KSheet> {
    let want = name.parse::<GroupSpec>().ok()?.canonical();
    bundled_ksheets()
        .into_iter()
        .find(|s| s.group.parse::<GroupSpec>().map(GroupSpec::canonical).ok() == Some(want))
}

/// Number of irreducible rational representations with even Schur index,
/// for the groups where it is bundled.
pub fn schur_even_count(name: &str) -> Option<usize> {
    use GroupSpec::*;
    match name.parse::<GroupSpec>().ok()?.canonical() {
        BinaryOctahedral | Dicyclic(24) => Some(1),
        Dicyclic(12) | Dicyclic(8) | Cyclic(_) | Symmetric(4) | Dihedral(3) | Dihedral(6) => Some(0),
        _ => None,
    }
}

fn count(g: &FiniteGroup, spec: FusionSpec) -> usize {
    count_irreducibles(g, spec).expect("valid fusion spec").count()
}

/// Free rank of `K₋₁(Z[G])`: `1 − r_Q + Σ_{p | |G|} (r_{Q_p} − r_{F_p})`.
pub fn carter_rank(g: &FiniteGroup) -> i64 {
    1 - count(g, FusionSpec::Rational) as i64 + sc_rank(g)
}

/// `K₋₁(Z[G]) ≅ Z^r ⊕ (Z/2)^s`; `s` comes from the bundled lookup unless given.
pub fn k_minus1(g: &FiniteGroup, s: Option<usize>) -> Result<FgAbelianGroup, KError> {
    let s = s
        .or_else(|| schur_even_count(g.name()))
        .ok_or_else(|| KError::UnknownSchurData(g.name().to_string()))?;
    let r = carter_rank(g);
    let r = usize::try_from(r).map_err(|_| KError::Schema(format!("negative rank {r} for {}", g.name())))?;
    Ok(FgAbelianGroup::from_orders(r, &vec![2; s]).expect("positive orders"))
}

/// Both sides of the rank identity `rank SC(G) − rank K̃₀(Q[G]) = rank K₋₁(Z[G])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NegKCheck {
    pub sc_rank: i64,
    pub rational_rank: i64,
    pub carter_rank: i64,
    pub holds: bool,
}

pub fn negk_consistency(g: &FiniteGroup) -> NegKCheck {
    let sc = sc_rank(g);
    let rational_rank = count(g, FusionSpec::Rational) as i64 - 1;
    let carter = carter_rank(g);
    NegKCheck {
        sc_rank: sc,
        rational_rank,
        carter_rank: carter,
        holds: sc - rational_rank == carter,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn b(s: &str) -> FiniteGroup {
        build_group(s).unwrap()
    }

    #[test]
    fn carter_ranks() {
        for (name, r) in [
            ("binary-octahedral", 1),
            ("dicyclic:24", 2),
            ("dicyclic:12", 1),
            ("quaternion:8", 0),
            ("cyclic:4", 0),
            ("cyclic:2", 0),
            ("trivial", 0),
            ("symmetric:4", 0),
            ("dihedral:3", 0),
            ("dihedral:6", 1),
        ] {
            assert_eq!(carter_rank(&b(name)), r, "{name}");
            assert!(negk_consistency(&b(name)).holds);
        }
    }

    #[test]
    fn k_minus1_values() {
        assert_eq!(k_minus1(&b("dicyclic:12"), None).unwrap().to_string(), "Z");
        assert_eq!(k_minus1(&b("binary-octahedral"), None).unwrap().to_string(), "Z + Z/2");
        assert!(k_minus1(&b("cyclic:8"), None).unwrap().is_zero());
        assert_eq!(
            k_minus1(&b("binary-tetrahedral"), None).unwrap_err(),
            KError::UnknownSchurData("binary-tetrahedral".into())
        );
        assert!(k_minus1(&b("binary-tetrahedral"), Some(0)).is_ok());
    }

    #[test]
    fn bundled_sheets_agree_with_carter() {
        for sheet in bundled_ksheets() {
            let g = b(&sheet.group);
            assert_eq!(k_minus1(&g, None).unwrap(), sheet.km1, "{}", sheet.group);
            assert!(sheet.km2.is_zero());
            assert!(!sheet.cite.is_empty());
        }
    }

    #[test]
    fn bundled_table_golden() {
        let row = |n: &str| {
            let s = bundled_ksheet(n).unwrap();
            (s.wh.to_string(), s.k0t.to_string(), s.km1.to_string())
        };
        let own = |a: &str, b: &str, c: &str| (a.to_string(), b.to_string(), c.to_string());
        assert_eq!(row("binary-octahedral"), own("Z", "(Z/2)^2", "Z + Z/2"));
        assert_eq!(row("dicyclic:24"), own("Z", "(Z/2)^3", "Z^2 + Z/2"));
        assert_eq!(row("dicyclic:12"), own("0", "Z/2", "Z"));
        assert_eq!(row("quaternion:8"), own("0", "Z/2", "0"));
        assert!(bundled_ksheet("binary-tetrahedral").is_none());
    }

    #[test]
    fn sheet_json() {
        let j = r#"{"group":"dicyclic:24","Wh":{"rank":1,"torsion":[]},"K0t":{"rank":0,"torsion":[2,2,2]},"Km1":{"rank":2,"torsion":[2]},"cite":"x"}"#;
        let s: KSheet = serde_json::from_str(j).unwrap();
        assert!(s.km2.is_zero());
        assert_eq!(s, bundled_ksheet("dicyclic:24").map(|b| KSheet { cite: "x".into(), ..b }).unwrap());
    }
}
