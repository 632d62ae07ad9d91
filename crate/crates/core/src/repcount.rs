//! Counting irreducible representations over Q, Q_p and F_p by fusing
//! conjugacy classes under the relevant Galois action.
//!
//! Over a field `K` of characteristic 0 the class of `x` fuses with the
//! class of `x^k` for every `k` in the image of `Gal(K(ζ_d)/K)` in
//! `(Z/d)^×`, `d = ord(x)`. Over F_p only p-regular classes count, and the
//! Galois group is generated by Frobenius `x ↦ x^p`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::group::FiniteGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse fusion spec `{0}`")]
    BadSpec(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FusionSpec {
    Rational,
    Padic(u64),
    ModP(u64),
}

impl FusionSpec {
    fn check(self) -> Result<Self, RepError> {
        match self {
            FusionSpec::Padic(p) | FusionSpec::ModP(p) if !is_prime(p) => Err(RepError::NotPrime(p)),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for FusionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionSpec::Rational => write!(f, "Q"),
            FusionSpec::Padic(p) => write!(f, "Q_{p}"),
            FusionSpec::ModP(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for FusionSpec {
    type Err = RepError;

    /// `q`, `qp:<p>` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RepError::BadSpec(s.to_string());
        if s == "q" {
            return Ok(FusionSpec::Rational);
        }
        let (kind, p) = s.split_once(':').ok_or_else(bad)?;
        let p: u64 = p.parse().map_err(|_| bad())?;
        match kind {
            "qp" => FusionSpec::Padic(p).check(),
            "fp" => FusionSpec::ModP(p).check(),
            _ => Err(bad()),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Distinct primes dividing `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Splits `d = p^a · d'` with `p ∤ d'`, returning `(p^a, d')`.
pub fn split_prime_part(d: u64, p: u64) -> (u64, u64) {
    let mut pa = 1;
    let mut rest = d;
    while rest.is_multiple_of(p) {
        rest /= p;
        pa *= p;
    }
    (pa, rest)
}

/// Exponents `k` (mod `d`) with `x ~ x^k` for an element of order `d`.
fn fusion_exponents(spec: FusionSpec, d: u64) -> Vec<u64> {
    let units = (1..=d.max(1)).filter(|&k| k.gcd(&d) == 1).map(|k| k % d.max(1));
    match spec {
        FusionSpec::Rational => units.collect(),
        FusionSpec::Padic(p) => {
            let (_, d2) = split_prime_part(d, p);
            let frob = powers(p % d2.max(1), d2);
            units.filter(|k| frob.contains(&(k % d2))).collect()
        }
        FusionSpec::ModP(p) => powers(p % d.max(1), d),
    }
}

/// The cyclic subgroup generated by `p` in `(Z/m)^×` (`{0}` when `m = 1`).
fn powers(p: u64, m: u64) -> Vec<u64> {
    if m <= 1 {
        return vec![0];
    }
    let mut out = vec![1 % m];
    let mut x = p % m;
    while x != 1 % m {
        out.push(x);
        x = x * p % m;
    }
    out
}

/// A partition of (some) conjugacy classes into fused blocks.
#[derive(Clone, Debug, Serialize)]
pub struct FusedClasses {
    pub spec: FusionSpec,
    /// Each block lists its member classes; each class is a sorted element list.
    pub blocks: Vec<Vec<Vec<usize>>>,
}

impl FusedClasses {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }
}

/// Counts irreducible representations of `g` over the field named by `spec`.
pub fn count_irreducibles(g: &FiniteGroup, spec: FusionSpec) -> Result<FusedClasses, RepError> {
    let spec = spec.check()?;
    let classes = g.conjugacy_classes();
    let class_of = g.class_map(&classes);
    let keep: Vec<bool> = classes
        .iter()
        .map(|c| match spec {
            FusionSpec::ModP(p) => !(g.element_order(c[0]) as u64).is_multiple_of(p),
            _ => true,
        })
        .collect();
    let mut parent: Vec<usize> = (0..classes.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, class) in classes.iter().enumerate() {
        if !keep[i] {
            continue;
        }
        let x = class[0];
        let d = g.element_order(x) as u64;
        for k in fusion_exponents(spec, d) {
            let j = class_of[g.pow(x, k as i64)];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut block_of_root = vec![usize::MAX; classes.len()];
    for (i, class) in classes.iter().enumerate() {
        if !keep[i] {
            continue;
        }
        let r = find(&mut parent, i);
        if block_of_root[r] == usize::MAX {
            block_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of_root[r]].push(class.clone());
    }
    Ok(FusedClasses { spec, blocks })
}

/// A conjugacy class whose elements share the order `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaggedClass {
    pub order: usize,
    pub elements: Vec<usize>,
}

/// The conjugacy classes whose element order is divisible by `p`.
pub fn p_singular_classes(g: &FiniteGroup, p: u64) -> Result<Vec<TaggedClass>, RepError> {
    if !is_prime(p) {
        return Err(RepError::NotPrime(p));
    }
    Ok(g.conjugacy_classes()
        .into_iter()
        .map(|c| TaggedClass {
            order: g.element_order(c[0]),
            elements: c,
        })
        .filter(|c| (c.order as u64).is_multiple_of(p))
        .collect())
}

/// Per-prime counts `(p, r_{Q_p}, r_{F_p})` for the primes dividing `|G|`.
pub fn local_counts(g: &FiniteGroup) -> Vec<(u64, usize, usize)> {
    prime_divisors(g.order() as u64)
        .into_iter()
        .map(|p| {
            let qp = count_irreducibles(g, FusionSpec::Padic(p)).expect("prime").count();
            let fp = count_irreducibles(g, FusionSpec::ModP(p)).expect("prime").count();
            (p, qp, fp)
        })
        .collect()
}

/// Rank of the group of singular characters: `Σ_{p | |G|} (r_{Q_p} − r_{F_p})`.
pub fn sc_rank(g: &FiniteGroup) -> i64 {
    local_counts(g)
        .into_iter()
        .map(|(_, qp, fp)| qp as i64 - fp as i64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, dicyclic_labelled};

    fn count(g: &FiniteGroup, spec: FusionSpec) -> usize {
        count_irreducibles(g, spec).unwrap().count()
    }

    fn names(g: &FiniteGroup, classes: &[TaggedClass]) -> Vec<Vec<String>> {
        let mut v: Vec<Vec<String>> = classes
            .iter()
            .map(|c| {
                let mut n: Vec<String> = c.elements.iter().map(|&e| g.element_name(e).to_string()).collect();
                n.sort();
                n
            })
            .collect();
        v.sort();
        v
    }

    fn expected(rows: &[&[&str]]) -> Vec<Vec<String>> {
        let mut v: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let mut n: Vec<String> = r.iter().map(|s| s.to_string()).collect();
                n.sort();
                n
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn trivial_group_has_one_irreducible() {
        let g = build_group("trivial").unwrap();
        for spec in [FusionSpec::Rational, FusionSpec::Padic(2), FusionSpec::ModP(3)] {
            assert_eq!(count(&g, spec), 1);
        }
        assert_eq!(sc_rank(&g), 0);
    }

    #[test]
    fn dic12_order_four_classes_fuse_rationally() {
        let g = dicyclic_labelled(12, "w", "z").unwrap();
        let f = count_irreducibles(&g, FusionSpec::Rational).unwrap();
        let z = g.label("z").unwrap();
        let block = f.blocks.iter().find(|b| b.iter().any(|c| c.contains(&z))).unwrap();
        assert_eq!(block.len(), 2);
        assert_eq!(f.count(), 5);
    }

    #[test]
    fn dic24_singular_tables() {
        let g = build_group("dicyclic:24").unwrap();
        let sc2 = p_singular_classes(&g, 2).unwrap();
        assert_eq!(
            names(&g, &sc2),
            expected(&[
                &["x^6"],
                &["x^3", "x^9"],
                &["yx", "yx^3", "yx^5", "yx^7", "yx^9", "yx^11"],
                &["y", "yx^2", "yx^4", "yx^6", "yx^8", "yx^10"],
                &["x^2", "x^10"],
                &["x", "x^11"],
                &["x^5", "x^7"],
            ])
        );
        let sc3 = p_singular_classes(&g, 3).unwrap();
        assert_eq!(
            names(&g, &sc3),
            expected(&[&["x^4", "x^8"], &["x^2", "x^10"], &["x", "x^11"], &["x^5", "x^7"]])
        );
        assert!(p_singular_classes(&g, 5).unwrap().is_empty());
    }

    #[test]
    fn dic12_singular_tables() {
        let g = dicyclic_labelled(12, "w", "z").unwrap();
        let sc2 = p_singular_classes(&g, 2).unwrap();
        assert_eq!(
            names(&g, &sc2),
            expected(&[&["w^3"], &["z", "zw^2", "zw^4"], &["zw", "zw^3", "zw^5"], &["w", "w^5"]])
        );
        assert_eq!(p_singular_classes(&g, 3).unwrap().len(), 2);
    }

    #[test]
    fn bad_primes() {
        let g = build_group("cyclic:6").unwrap();
        assert_eq!(count_irreducibles(&g, FusionSpec::ModP(4)).unwrap_err(), RepError::NotPrime(4));
        assert_eq!(p_singular_classes(&g, 1).unwrap_err(), RepError::NotPrime(1));
        assert_eq!("fp:9".parse::<FusionSpec>().unwrap_err(), RepError::NotPrime(9));
        assert_eq!("qp:3".parse::<FusionSpec>().unwrap(), FusionSpec::Padic(3));
    }

    #[test]
    fn monotone_and_partitioned() {
        for name in [
            "cyclic:2", "cyclic:4", "quaternion:8", "dicyclic:12", "dicyclic:24",
            "binary-octahedral", "symmetric:4", "dihedral:3", "dihedral:6",
        ] {
            let g = build_group(name).unwrap();
            let nclasses = g.conjugacy_classes().len();
            let rq = count(&g, FusionSpec::Rational);
            for p in prime_divisors(g.order() as u64) {
                let qp = count(&g, FusionSpec::Padic(p));
                let fp = count(&g, FusionSpec::ModP(p));
                assert!(fp <= qp && qp <= nclasses && rq <= qp, "{name} p={p}");
                let singular = p_singular_classes(&g, p).unwrap().len();
                let regular = g
                    .conjugacy_classes()
                    .iter()
                    .filter(|c| !(g.element_order(c[0]) as u64).is_multiple_of(p))
                    .count();
                assert_eq!(singular + regular, nclasses);
            }
            assert!(sc_rank(&g) >= 0);
        }
    }
}
