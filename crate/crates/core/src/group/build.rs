use std::fmt;
use std::str::FromStr;

use super::{FiniteGroup, GroupError};
use crate::presentation::{todd_coxeter, CosetError, Presentation, DEFAULT_COSET_LIMIT};

/// Largest group order the constructors will tabulate.
pub const MAX_ORDER: usize = 10_000;

/// Parsed group-name grammar shared by the CLI, K-sheets and the casebook.
///
/// `cyclic:n | dicyclic:4n | quaternion:8 | binary-octahedral |
/// binary-tetrahedral | symmetric:n | dihedral:n`, plus `trivial` for
/// `cyclic:1`. `dihedral:n` has order `2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Carries the group order `4n`.
    Dicyclic(usize),
    Quaternion,
    BinaryOctahedral,
    BinaryTetrahedral,
    Symmetric(usize),
    Dihedral(usize),
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || GroupError::UnknownSpec(s.to_string());
        let s = s.trim();
        match s {
            "trivial" => return Ok(GroupSpec::Cyclic(1)),
            "binary-octahedral" => return Ok(GroupSpec::BinaryOctahedral),
            "binary-tetrahedral" => return Ok(GroupSpec::BinaryTetrahedral),
            _ => {}
        }
        let (kind, arg) = s.split_once(':').ok_or_else(unknown)?;
        let n: usize = arg.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        match kind {
            "cyclic" => Ok(GroupSpec::Cyclic(n)),
            "dicyclic" if n.is_multiple_of(4) => Ok(GroupSpec::Dicyclic(n)),
            "quaternion" if n == 8 => Ok(GroupSpec::Quaternion),
            "symmetric" => Ok(GroupSpec::Symmetric(n)),
            "dihedral" => Ok(GroupSpec::Dihedral(n)),
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            GroupSpec::Quaternion => write!(f, "quaternion:8"),
            GroupSpec::BinaryOctahedral => write!(f, "binary-octahedral"),
            GroupSpec::BinaryTetrahedral => write!(f, "binary-tetrahedral"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
        }
    }
}

impl GroupSpec {
    /// Order of the group, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        match *self {
            GroupSpec::Cyclic(n) | GroupSpec::Dicyclic(n) => Some(n),
            GroupSpec::Quaternion => Some(8),
            GroupSpec::BinaryOctahedral => Some(48),
            GroupSpec::BinaryTetrahedral => Some(24),
            GroupSpec::Symmetric(n) => (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
        }
    }

    /// Collapses names that denote the same group up to isomorphism
    /// (`quaternion:8 = dicyclic:8`, `dihedral:3 = symmetric:3`, …).
    pub fn canonical(self) -> GroupSpec {
        match self {
            GroupSpec::Quaternion => GroupSpec::Dicyclic(8),
            GroupSpec::Dicyclic(4) => GroupSpec::Cyclic(4),
            GroupSpec::Dihedral(1) | GroupSpec::Symmetric(2) => GroupSpec::Cyclic(2),
            GroupSpec::Symmetric(1) => GroupSpec::Cyclic(1),
            GroupSpec::Symmetric(3) => GroupSpec::Dihedral(3),
            other => other,
        }
    }
}

/// Builds a bundled group with the default coset limit.
pub fn build_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    build_group_with(spec, DEFAULT_COSET_LIMIT)
}

/// Builds a bundled group; `coset_limit` bounds the enumerations behind
/// the binary polyhedral groups.
pub fn build_group_with(spec: &str, coset_limit: usize) -> Result<FiniteGroup, GroupError> {
    let parsed: GroupSpec = spec.parse()?;
    let order = parsed.order().unwrap_or(usize::MAX);
    if order > MAX_ORDER {
        return Err(GroupError::OrderLimitExceeded {
            order,
            limit: MAX_ORDER,
        });
    }
    let name = parsed.to_string();
    match parsed {
        GroupSpec::Cyclic(n) => cyclic(&name, n),
        GroupSpec::Dicyclic(n) => dicyclic(&name, n / 4, ("x", "y")),
        GroupSpec::Quaternion => dicyclic(&name, 2, ("a", "b")),
        GroupSpec::Dihedral(n) => dihedral(&name, n),
        GroupSpec::Symmetric(n) => symmetric(&name, n),
        GroupSpec::BinaryOctahedral => {
            from_presentation(&name, BINARY_OCTAHEDRAL, 48, coset_limit)
        }
        GroupSpec::BinaryTetrahedral => {
            from_presentation(&name, BINARY_TETRAHEDRAL, 24, coset_limit)
        }
    }
}

/// `dicyclic:<order>` with custom generator symbols for `x` and `y`.
///
/// Element names follow the same `x^i`, `yx^i` convention in the new symbols.
pub fn dicyclic_labelled(order: usize, x: &str, y: &str) -> Result<FiniteGroup, GroupError> {
    if order == 0 || !order.is_multiple_of(4) {
        return Err(GroupError::UnknownSpec(format!("dicyclic:{order}")));
    }
    if order > MAX_ORDER {
        return Err(GroupError::OrderLimitExceeded {
            order,
            limit: MAX_ORDER,
        });
    }
    dicyclic(&format!("dicyclic:{order}"), order / 4, (x, y))
}

/// `X³ = 1, P² = Q² = R², PQP⁻¹ = Q⁻¹, XPX⁻¹ = Q, XQX⁻¹ = PQ,
/// RXR⁻¹ = X⁻¹, RPR⁻¹ = QP, RQR⁻¹ = Q⁻¹`, relators written as LHS·RHS⁻¹.
pub(crate) const BINARY_OCTAHEDRAL: &str = "gens: X P Q R; \
    rel: X^3; rel: P^2 Q^-2; rel: Q^2 R^-2; rel: P Q P^-1 Q; \
    rel: X P X^-1 Q^-1; rel: X Q X^-1 Q^-1 P^-1; \
    rel: R X R^-1 X; rel: R P R^-1 P^-1 Q^-1; rel: R Q R^-1 Q";

/// The index-2 subgroup `<P, Q, X>` of the presentation above.
pub(crate) const BINARY_TETRAHEDRAL: &str = "gens: X P Q; \
    rel: X^3; rel: P^2 Q^-2; rel: P Q P^-1 Q; \
    rel: X P X^-1 Q^-1; rel: X Q X^-1 Q^-1 P^-1";

fn power_name(sym: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    }
}

fn cyclic(name: &str, n: usize) -> Result<FiniteGroup, GroupError> {
    let elements: Vec<usize> = (0..n).collect();
    let labels = if n > 1 {
        vec![("g".to_string(), 1)]
    } else {
        Vec::new()
    };
    let names = (0..n)
        .map(|k| if k == 0 { "1".into() } else { power_name("g", k) })
        .collect();
    FiniteGroup::from_elements(name, &elements, |a, b| (a + b) % n, labels, Some(names))
}

/// `Dic_{4n} = <x, y | x^n = y², y x y⁻¹ = x⁻¹>`, elements `x^i` and `y x^i`.
fn dicyclic(name: &str, n: usize, (x, y): (&str, &str)) -> Result<FiniteGroup, GroupError> {
    let m = 2 * n;
    let elements: Vec<(bool, usize)> = [false, true]
        .into_iter()
        .flat_map(|f| (0..m).map(move |i| (f, i)))
        .collect();
    let mul = |&(f1, a): &(bool, usize), &(f2, b): &(bool, usize)| match (f1, f2) {
        (false, false) => (false, (a + b) % m),
        (true, false) => (true, (a + b) % m),
        // x^a · y x^b = y x^{b-a}
        (false, true) => (true, (b + m - a) % m),
        // y x^a · y x^b = y² x^{b-a} = x^{n+b-a}
        (true, true) => (false, (n + b + m - a) % m),
    };
    let names = elements
        .iter()
        .map(|&(f, i)| match (f, i) {
            (false, 0) => "1".to_string(),
            (false, i) => power_name(x, i),
            (true, i) => format!("{y}{}", power_name(x, i)),
        })
        .collect();
    let labels = vec![(x.to_string(), 1 % m), (y.to_string(), m)];
    FiniteGroup::from_elements(name, &elements, mul, labels, Some(names))
}

/// `D_n` of order `2n`, elements `r^i` and `s r^i`.
fn dihedral(name: &str, n: usize) -> Result<FiniteGroup, GroupError> {
    let elements: Vec<(bool, usize)> = [false, true]
        .into_iter()
        .flat_map(|f| (0..n).map(move |i| (f, i)))
        .collect();
    // s^f1 r^a · s^f2 r^b = s^{f1+f2} r^{±a + b}
    let mul = |&(f1, a): &(bool, usize), &(f2, b): &(bool, usize)| {
        let a = if f2 { (n - a) % n } else { a };
        (f1 ^ f2, (a + b) % n)
    };
    let names = elements
        .iter()
        .map(|&(f, i)| match (f, i) {
            (false, 0) => "1".to_string(),
            (false, i) => power_name("r", i),
            (true, i) => format!("s{}", power_name("r", i)),
        })
        .collect();
    let mut labels = Vec::new();
    if n > 1 {
        labels.push(("r".to_string(), 1));
    }
    labels.push(("s".to_string(), n));
    FiniteGroup::from_elements(name, &elements, mul, labels, Some(names))
}

/// `S_n` on permutations of `0..n`, product `(p q)(i) = p(q(i))`.
fn symmetric(name: &str, n: usize) -> Result<FiniteGroup, GroupError> {
    let mut elements: Vec<Vec<u8>> = Vec::new();
    let mut perm: Vec<u8> = (0..n as u8).collect();
    loop {
        elements.push(perm.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let index_of = |p: &[u8]| elements.iter().position(|e| e == p).unwrap();
    let mut labels = Vec::new();
    if n >= 2 {
        let mut t: Vec<u8> = (0..n as u8).collect();
        t.swap(0, 1);
        labels.push(("t".to_string(), index_of(&t)));
        if n >= 3 {
            let c: Vec<u8> = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
            labels.push(("c".to_string(), index_of(&c)));
        }
    }
    let names = elements.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_elements(
        name,
        &elements,
        |p, q| q.iter().map(|&i| p[i as usize]).collect(),
        labels,
        Some(names),
    )
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn cycle_notation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = p[i] as usize;
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

fn from_presentation(
    name: &str,
    text: &str,
    expected: usize,
    coset_limit: usize,
) -> Result<FiniteGroup, GroupError> {
    let pres: Presentation = text.parse().expect("bundled presentation parses");
    let table = todd_coxeter(&pres, &[], coset_limit).map_err(|e| match e {
        CosetError::LimitExceeded(limit) => GroupError::EnumerationFailed {
            name: name.to_string(),
            limit,
        },
        CosetError::UnknownSymbol(s) => GroupError::UnknownSpec(s),
    })?;
    if table.index() != expected {
        return Err(GroupError::PresentationCollapse {
            name: name.to_string(),
            expected,
            found: table.index(),
        });
    }
    table.to_group(name)
}
