use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{column_basis, null_space, smith_normal_form, solve, IntMatrix};
use super::KError;
use crate::BigMatrix;

/// `Z^rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `1 < d₁ | d₂ | … | d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAbelian", into = "RawAbelian")]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawAbelian {
    rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

impl TryFrom<RawAbelian> for FgAbelianGroup {
    type Error = KError;

    fn try_from(raw: RawAbelian) -> Result<Self, KError> {
        FgAbelianGroup::from_orders(raw.rank, &raw.torsion)
    }
}

impl From<FgAbelianGroup> for RawAbelian {
    fn from(g: FgAbelianGroup) -> Self {
        RawAbelian {
            rank: g.free_rank,
            torsion: g.torsion,
        }
    }
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; `Z/1` is the zero group and `n = 0` gives `Z`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::zero(),
            n => FgAbelianGroup {
                free_rank: 0,
                torsion: vec![n],
            },
        }
    }

    /// `Z^rank ⊕ ⊕ Z/n_i` for arbitrary cyclic orders, normalised to
    /// invariant factors. An order of 0 is rejected.
    pub fn from_orders(rank: usize, orders: &[u64]) -> Result<Self, KError> {
        if orders.contains(&0) {
            return Err(KError::Schema("torsion orders must be positive".into()));
        }
        let diag: Vec<BigInt> = orders.iter().map(|&n| BigInt::from(n)).collect();
        let factors = smith_normal_form(&IntMatrix::diagonal(&diag)).invariant_factors();
        Ok(FgAbelianGroup {
            free_rank: rank,
            torsion: to_u64(&factors)?.into_iter().filter(|&d| d > 1).collect(),
        })
    }

    /// The group `Z^n / (column span of relations)`.
    pub fn from_relations(relations: &BigMatrix) -> Result<Self, KError> {
        let snf = smith_normal_form(relations);
        let factors = to_u64(&snf.invariant_factors())?;
        Ok(FgAbelianGroup {
            free_rank: relations.rows() - snf.rank,
            torsion: factors.into_iter().filter(|&d| d > 1).collect(),
        })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Cardinality of a finite group.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Number of `Z/2` summands after splitting into invariant factors; for
    /// elementary abelian 2-groups this is the exponent `s` in `(Z/2)^s`.
    pub fn two_rank(&self) -> usize {
        self.torsion.iter().filter(|&&d| d % 2 == 0).count()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        Self::from_orders(self.free_rank + other.free_rank, &orders).expect("positive orders")
    }

    /// Generators in canonical order: one per torsion factor, then the free ones.
    pub fn presentation(&self) -> AbelianPresentation {
        AbelianPresentation::from_orders(&self.torsion, self.free_rank)
    }
}

fn to_u64(v: &[BigInt]) -> Result<Vec<u64>, KError> {
    v.iter()
        .map(|x| {
            x.to_u64()
                .ok_or_else(|| KError::Schema(format!("invariant factor {x} exceeds 64 bits")))
        })
        .collect()
}

impl fmt::Display for FgAbelianGroup {
    /// `Z^2 + (Z/2)^2 + Z/4`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for (d, group) in &itertools::Itertools::chunk_by(self.torsion.iter(), |&&d| d) {
            match group.count() {
                1 => parts.push(format!("Z/{d}")),
                k => parts.push(format!("(Z/{d})^{k}")),
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for FgAbelianGroup {
    type Err = KError;

    /// Parses the rendering produced by `Display`; summands may repeat and
    /// need not be in canonical order.
    fn from_str(s: &str) -> Result<Self, KError> {
        let bad = || KError::Schema(format!("cannot parse abelian group `{s}`"));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut rank = 0;
        let mut orders = Vec::new();
        for term in s.split('+').map(str::trim) {
            let (base, exp) = match term.rsplit_once('^') {
                Some((b, e)) if !b.ends_with('/') => (b.trim(), e.trim().parse::<usize>().map_err(|_| bad())?),
                _ => (term, 1),
            };
            let base = base.trim_start_matches('(').trim_end_matches(')');
            if base == "Z" {
                rank += exp;
            } else if let Some(n) = base.strip_prefix("Z/") {
                let n: u64 = n.parse().map_err(|_| bad())?;
                orders.extend(std::iter::repeat_n(n, exp));
            } else {
                return Err(bad());
            }
        }
        Self::from_orders(rank, &orders)
    }
}

/// `Z^n / R`: generators and a relation matrix whose columns are relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    generators: usize,
    relations: BigMatrix,
}

impl AbelianPresentation {
    pub fn new(generators: usize, relations: BigMatrix) -> Result<Self, KError> {
        if relations.rows() != generators {
            return Err(KError::Schema(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(AbelianPresentation {
            generators,
            relations,
        })
    }

    /// Cyclic generators of the given orders, then `free` free generators.
    pub fn from_orders(orders: &[u64], free: usize) -> Self {
        let n = orders.len() + free;
        let relations = IntMatrix::from_fn(n, orders.len(), |i, j| {
            if i == j {
                BigInt::from(orders[j])
            } else {
                BigInt::zero()
            }
        });
        AbelianPresentation {
            generators: n,
            relations,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &BigMatrix {
        &self.relations
    }

    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_relations(&self.relations).expect("bounded invariant factors")
    }

    /// Presentation of the direct sum; generators of `self` come first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n1, m1) = (self.generators, self.relations.cols());
        let relations = IntMatrix::from_fn(n1 + other.generators, m1 + other.relations.cols(), |i, j| {
            match (i < n1, j < m1) {
                (true, true) => self.relations[(i, j)].clone(),
                (false, false) => other.relations[(i - n1, j - m1)].clone(),
                _ => BigInt::zero(),
            }
        });
        AbelianPresentation {
            generators: n1 + other.generators,
            relations,
        }
    }

    /// Whether `v` lies in the relation lattice.
    fn is_relation(&self, v: &[BigInt]) -> bool {
        v.iter().all(Zero::is_zero) || solve(&self.relations, v).is_some()
    }
}

/// A homomorphism of presented abelian groups; column `j` of `matrix` is
/// the image of source generator `j` in target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianMap {
    source: AbelianPresentation,
    target: AbelianPresentation,
    matrix: BigMatrix,
}

impl AbelianMap {
    /// Checks shapes and that every source relation maps into the target's
    /// relation lattice.
    pub fn new(source: AbelianPresentation, target: AbelianPresentation, matrix: BigMatrix) -> Result<Self, KError> {
        if matrix.rows() != target.generators || matrix.cols() != source.generators {
            return Err(KError::IllFormedMap(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators,
                source.generators
            )));
        }
        let images = matrix.mul(&source.relations);
        for j in 0..images.cols() {
            if !target.is_relation(&images.column(j)) {
                return Err(KError::IllFormedMap(format!(
                    "source relation {j} does not map to a target relation"
                )));
            }
        }
        Ok(AbelianMap {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: AbelianPresentation, target: AbelianPresentation) -> Self {
        let matrix = IntMatrix::zeros(target.generators, source.generators);
        AbelianMap {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(p: AbelianPresentation) -> Self {
        let matrix = IntMatrix::identity(p.generators);
        AbelianMap {
            source: p.clone(),
            target: p,
            matrix,
        }
    }

    pub fn source(&self) -> &AbelianPresentation {
        &self.source
    }

    pub fn target(&self) -> &AbelianPresentation {
        &self.target
    }

    pub fn matrix(&self) -> &BigMatrix {
        &self.matrix
    }

    /// `target / image`, from the Smith form of `[matrix | target relations]`.
    pub fn cokernel(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_relations(&self.matrix.hstack(&self.target.relations)).expect("bounded invariant factors")
    }

    /// `{x : matrix·x ∈ target relations} / source relations`.
    pub fn kernel(&self) -> FgAbelianGroup {
        let ns = self.source.generators;
        // lattice L of source vectors mapping into the target relations
        let stacked = self.matrix.hstack(&self.target.relations.neg());
        let null = null_space(&stacked);
        let l_basis = column_basis(&null.row_range(0..ns));
        // coordinates of the source relations in the basis of L
        let rels = &self.source.relations;
        let mut coords = IntMatrix::zeros(l_basis.cols(), rels.cols());
        for j in 0..rels.cols() {
            let z = solve(&l_basis, &rels.column(j)).expect("source relations lie in the kernel lattice");
            for (i, zi) in z.into_iter().enumerate() {
                coords[(i, j)] = zi;
            }
        }
        FgAbelianGroup::from_relations(&coords).expect("bounded invariant factors")
    }
}

/// Integer matrix from nested `i64` rows, for fixtures and JSON input.
pub fn big_matrix(rows: &[Vec<i64>], cols: usize) -> Option<BigMatrix> {
    IntMatrix::from_rows(
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        cols,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn rendering() {
        assert_eq!(FgAbelianGroup::zero().to_string(), "0");
        assert_eq!(FgAbelianGroup::from_orders(2, &[2, 2]).unwrap().to_string(), "Z^2 + (Z/2)^2");
        assert_eq!(FgAbelianGroup::from_orders(1, &[2]).unwrap().to_string(), "Z + Z/2");
        assert_eq!(FgAbelianGroup::from_orders(0, &[2, 3]).unwrap().to_string(), "Z/6");
        assert_eq!(FgAbelianGroup::from_orders(0, &[4, 2, 1]).unwrap().to_string(), "Z/2 + Z/4");
        for s in ["0", "Z", "Z^3 + (Z/2)^4", "Z/2 + Z/4"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("Z/2 + Z"), g("Z + Z/2"));
        assert!("Q".parse::<FgAbelianGroup>().is_err());
    }

    #[test]
    fn json_shape() {
        let x = g("Z^2 + Z/2");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"rank":2,"torsion":[2]}"#);
        assert_eq!(serde_json::from_str::<FgAbelianGroup>(&j).unwrap(), x);
        assert_eq!(serde_json::from_str::<FgAbelianGroup>(r#"{"rank":0,"torsion":[3,2]}"#).unwrap(), g("Z/6"));
    }

    fn map(src: &FgAbelianGroup, tgt: &FgAbelianGroup, rows: &[Vec<i64>]) -> AbelianMap {
        let m = big_matrix(rows, src.presentation().generators()).unwrap();
        AbelianMap::new(src.presentation(), tgt.presentation(), m).unwrap()
    }

    #[test]
    fn cokernels() {
        // 0 → Z ⊕ Z
        let f = AbelianMap::zero(FgAbelianGroup::zero().presentation(), g("Z^2").presentation());
        assert_eq!(f.cokernel(), g("Z^2"));
        // Z/2 → (Z/2)^2 ⊕ (Z/2)^3, injective
        let tgt = g("(Z/2)^2").presentation().direct_sum(&g("(Z/2)^3").presentation());
        let m = big_matrix(&[vec![1], vec![0], vec![0], vec![0], vec![0]], 1).unwrap();
        let f = AbelianMap::new(g("Z/2").presentation(), tgt, m).unwrap();
        assert_eq!(f.cokernel(), g("(Z/2)^4"));
        assert!(f.kernel().is_zero());
        // Z → Z/2 ⊕ Z/2 ⊕ Z ⊕ Z ⊕ Z, 1 ↦ (0,0,1,1,0)
        let tgt = AbelianPresentation::from_orders(&[2, 2], 3);
        let m = big_matrix(&[vec![0], vec![0], vec![1], vec![1], vec![0]], 1).unwrap();
        let f = AbelianMap::new(g("Z").presentation(), tgt, m).unwrap();
        assert_eq!(f.cokernel(), g("Z^2 + (Z/2)^2"));
        assert!(f.kernel().is_zero());
    }

    #[test]
    fn kernels() {
        let z4 = g("Z/4");
        // multiplication by 2 on Z/4
        let f = map(&z4, &z4, &[vec![2]]);
        assert_eq!(f.kernel(), g("Z/2"));
        assert_eq!(f.cokernel(), g("Z/2"));
        let zero = AbelianMap::zero(g("Z + Z/6").presentation(), g("Z/5").presentation());
        assert_eq!(zero.kernel(), g("Z + Z/6"));
        let id = AbelianMap::identity(g("Z^2 + Z/3").presentation());
        assert!(id.cokernel().is_zero());
        assert!(id.kernel().is_zero());
        // Z → Z/6, kernel 6Z ≅ Z
        let f = map(&g("Z"), &g("Z/6"), &[vec![1]]);
        assert_eq!(f.kernel(), g("Z"));
    }

    #[test]
    fn ill_formed_maps() {
        // Z/2 → Z/3 sending the generator to 1 is not well defined
        let m = big_matrix(&[vec![1]], 1).unwrap();
        assert!(matches!(
            AbelianMap::new(g("Z/2").presentation(), g("Z/3").presentation(), m),
            Err(KError::IllFormedMap(_))
        ));
        let m = big_matrix(&[vec![1, 0]], 2).unwrap();
        assert!(matches!(
            AbelianMap::new(g("Z/2").presentation(), g("Z/2").presentation(), m),
            Err(KError::IllFormedMap(_))
        ));
    }
}
