//! Finite groups as explicit multiplication tables.
//!
//! Every group in this crate is small (the groups that matter have order at
//! most 48, the hard cap is 10000), so a full Cayley table is the simplest
//! exact representation: conjugacy, quotients, homomorphism checks and
//! isomorphism search all reduce to table lookups.

pub(crate) mod build;
mod hom;
mod iso;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub use build::{build_group, build_group_with, dicyclic_labelled, GroupSpec, MAX_ORDER};
pub use hom::GroupHom;
pub use iso::{is_isomorphic, ISO_ORDER_LIMIT};

use crate::presentation::{Word, WordGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("unknown group spec `{0}`")]
    UnknownSpec(String),
    #[error("group order {order} exceeds limit {limit}")]
    OrderLimitExceeded { order: usize, limit: usize },
    #[error("presentation for {name} closed with {found} cosets, expected {expected}")]
    PresentationCollapse {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("coset enumeration for {name} did not close within {limit} cosets")]
    EnumerationFailed { name: String, limit: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element index {0} out of range")]
    BadElement(usize),
    #[error("multiplication table is not a group law: {0}")]
    NotAGroup(String),
}

/// A finite group on element indices `0..order`, with `0` the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    // order ≤ MAX_ORDER < u16::MAX, so the table fits in u16 cells
    table: Vec<u16>,
    inverses: Vec<usize>,
    labels: Vec<(String, usize)>,
    element_names: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("labels", &self.labels)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a list of abstract elements and a multiplication.
    ///
    /// The first element of `elements` must be the identity. Generator labels
    /// refer to positions in `elements`. Element names default to shortest
    /// words in the labels unless `names` is supplied.
    pub(crate) fn from_elements<E, F>(
        name: impl Into<String>,
        elements: &[E],
        mul: F,
        labels: Vec<(String, usize)>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError>
    where
        E: Eq + std::hash::Hash + Clone,
        F: Fn(&E, &E) -> E,
    {
        let order = elements.len();
        if order > MAX_ORDER {
            return Err(GroupError::OrderLimitExceeded {
                order,
                limit: MAX_ORDER,
            });
        }
        let index: std::collections::HashMap<&E, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = Vec::with_capacity(order * order);
        for a in elements {
            for b in elements {
                let p = mul(a, b);
                let &k = index
                    .get(&p)
                    .ok_or_else(|| GroupError::NotAGroup("product outside element set".into()))?;
                table.push(k as u16);
            }
        }
        Self::from_table(name, order, table, labels, names)
    }

    /// Builds a group from a raw table; checks identity at index 0 and inverses.
    pub(crate) fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u16>,
        labels: Vec<(String, usize)>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if order == 0 || table.len() != order * order {
            return Err(GroupError::NotAGroup("table has wrong shape".into()));
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(GroupError::NotAGroup("index 0 is not the identity".into()));
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverses[a] = b;
                    break;
                }
            }
            if inverses[a] == usize::MAX {
                return Err(GroupError::NotAGroup(format!("element {a} has no inverse")));
            }
        }
        for (_, g) in &labels {
            if *g >= order {
                return Err(GroupError::BadElement(*g));
            }
        }
        let mut group = FiniteGroup {
            name: name.into(),
            order,
            table,
            inverses,
            labels,
            element_names: Vec::new(),
        };
        group.element_names = match names {
            Some(n) if n.len() == order => n,
            _ => group.shortest_word_names(),
        };
        Ok(group)
    }

    fn shortest_word_names(&self) -> Vec<String> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        let steps: Vec<(Word, usize)> = self
            .labels
            .iter()
            .flat_map(|(l, g)| {
                [
                    (Word::letter(l, 1), *g),
                    (Word::letter(l, -1), self.inverse(*g)),
                ]
            })
            .collect();
        while let Some(g) = queue.pop_front() {
            for (w, s) in &steps {
                let h = self.mul(g, *s);
                if words[h].is_none() {
                    words[h] = Some(words[g].as_ref().unwrap().concat(w));
                    queue.push_back(h);
                }
            }
        }
        words
            .into_iter()
            .enumerate()
            .map(|(i, w)| match w {
                Some(w) => w.compact(),
                None => format!("#{i}"),
            })
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse(a) } else { a };
        let mut e = k.unsigned_abs() % self.element_order(a) as u64;
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn conjugate(&self, g: usize, by: usize) -> usize {
        self.mul(self.mul(by, g), self.inverse(by))
    }

    /// Generator labels in declaration order.
    pub fn labels(&self) -> &[(String, usize)] {
        &self.labels
    }

    pub fn label(&self, symbol: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(l, _)| l == symbol)
            .map(|(_, g)| *g)
    }

    pub fn generators(&self) -> Vec<usize> {
        self.labels.iter().map(|(_, g)| *g).collect()
    }

    pub fn element_name(&self, g: usize) -> &str {
        &self.element_names[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Same group with a new name and generator labels.
    ///
    /// Element names are recomputed from the new labels unless `names` is given.
    pub fn relabelled(
        &self,
        name: impl Into<String>,
        labels: Vec<(String, usize)>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let g = Self::from_table(name, self.order, self.table.clone(), labels, names)?;
        if g.subgroup_generated(&g.generators()).order() != g.order {
            return Err(GroupError::NotAGroup("labels do not generate".into()));
        }
        Ok(g)
    }

    /// Checks associativity and that the labels generate.
    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        if self.subgroup_generated(&self.generators()).order() != n {
            return Err(GroupError::NotAGroup("labels do not generate".into()));
        }
        Ok(())
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = self.elements().map(|h| self.conjugate(g, h)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Class index of every element, parallel to `conjugacy_classes`.
    pub fn class_map(&self, classes: &[Vec<usize>]) -> Vec<usize> {
        let mut map = vec![0; self.order];
        for (i, class) in classes.iter().enumerate() {
            for &g in class {
                map[g] = i;
            }
        }
        map
    }

    pub fn center(&self) -> Subgroup<'_> {
        let elements = self
            .elements()
            .filter(|&z| self.elements().all(|h| self.mul(z, h) == self.mul(h, z)))
            .collect();
        Subgroup {
            parent: self,
            elements,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup<'_> {
        Subgroup {
            parent: self,
            elements: vec![0],
        }
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup {
            parent: self,
            elements: self.elements().collect(),
        }
    }

    /// Closure of `gens` under multiplication (inverses follow by finiteness).
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup<'_> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elements = vec![0];
        let mut i = 0;
        while i < elements.len() {
            let g = elements[i];
            for &s in gens {
                let h = self.mul(g, s);
                if !member[h] {
                    member[h] = true;
                    elements.push(h);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Subgroup {
            parent: self,
            elements,
        }
    }

    /// A short generating set, chosen greedily by largest element order.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().skip(1).collect();
        by_order.sort_by_key(|&g| (std::cmp::Reverse(self.element_order(g)), g));
        let mut gens: Vec<usize> = Vec::new();
        let mut current = self.subgroup_generated(&gens).elements;
        while current.len() < self.order {
            let mut best: Option<(usize, usize)> = None;
            for &g in &by_order {
                if current.binary_search(&g).is_ok() {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(g);
                let size = self.subgroup_generated(&trial).order();
                if best.is_none_or(|(s, _)| size > s) {
                    best = Some((size, g));
                    if size == self.order {
                        break;
                    }
                }
            }
            let (_, g) = best.expect("proper subgroup has an element outside it");
            gens.push(g);
            current = self.subgroup_generated(&gens).elements;
        }
        gens
    }

    /// Quotient by a normal subgroup, with the canonical projection.
    ///
    /// Cosets are numbered by their smallest element, so the identity coset
    /// is `0`. Generator labels are the images of this group's labels.
    pub fn quotient(&self, normal: &Subgroup<'_>) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !normal.is_normal() {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &n in &normal.elements {
                coset_of[self.mul(g, n)] = id;
            }
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b)] as u16);
            }
        }
        let labels = self
            .labels
            .iter()
            .map(|(l, g)| (l.clone(), coset_of[*g]))
            .collect();
        let name = format!("{}/{}", self.name, normal.order());
        let q = FiniteGroup::from_table(name, m, table, labels, None)?;
        Ok((q, coset_of))
    }

    /// Histogram of element orders, sorted by order.
    pub fn order_histogram(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for g in self.elements() {
            *counts.entry(self.element_order(g)).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }
}

impl WordGroup for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn generator(&self, symbol: &str) -> Option<usize> {
        self.label(symbol)
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteGroup::mul(self, *a, *b)
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverse(*a)
    }
}

/// A subgroup, stored as the sorted list of its element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup<'g> {
    parent: &'g FiniteGroup,
    elements: Vec<usize>,
}

impl<'g> Subgroup<'g> {
    /// Wraps a set of elements, checking closure.
    pub fn new(parent: &'g FiniteGroup, mut elements: Vec<usize>) -> Option<Self> {
        elements.sort_unstable();
        elements.dedup();
        let closed = elements.binary_search(&0).is_ok()
            && elements.iter().all(|&a| {
                elements
                    .iter()
                    .all(|&b| elements.binary_search(&parent.mul(a, b)).is_ok())
            });
        closed.then_some(Subgroup { parent, elements })
    }

    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        self.parent.elements().all(|h| {
            self.elements
                .iter()
                .all(|&n| self.contains(self.parent.conjugate(n, h)))
        })
    }

    /// The subgroup as a group in its own right, plus the inclusion map
    /// (subgroup element index → parent element index).
    ///
    /// Labels are `prefix1, prefix2, …` over a small generating set.
    pub fn to_group(&self, name: impl Into<String>, prefix: &str) -> (FiniteGroup, Vec<usize>) {
        let n = self.elements.len();
        let local = |g: usize| self.elements.binary_search(&g).expect("closed subgroup");
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(local(self.parent.mul(a, b)) as u16);
            }
        }
        let mut g = FiniteGroup::from_table(name, n, table, Vec::new(), None)
            .expect("subgroup table is a group");
        let labels = g
            .small_generating_set()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (format!("{prefix}{}", i + 1), s))
            .collect();
        g.labels = labels;
        g.element_names = g.shortest_word_names();
        (g, self.elements.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dic(n: usize) -> FiniteGroup {
        build_group(&format!("dicyclic:{n}")).unwrap()
    }

    #[test]
    fn class_sizes_divide_order() {
        for spec in [
            "dicyclic:24",
            "binary-octahedral",
            "symmetric:4",
            "dihedral:6",
            "quaternion:8",
            "binary-tetrahedral",
        ] {
            let g = build_group(spec).unwrap();
            let classes = g.conjugacy_classes();
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
            assert!(classes.iter().all(|c| g.order().is_multiple_of(c.len())));
            assert_eq!(classes[0], vec![0]);
        }
    }

    #[test]
    fn dic24_has_nine_classes() {
        let g = dic(24);
        assert_eq!(g.conjugacy_classes().len(), 9);
        let x = g.label("x").unwrap();
        assert_eq!(g.element_order(x), 12);
    }

    #[test]
    fn q8_classes_and_center() {
        let g = build_group("quaternion:8").unwrap();
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(g.center().order(), 2);
    }

    #[test]
    fn cyclic_classes_are_singletons() {
        let g = build_group("cyclic:5").unwrap();
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert_eq!(g.center().order(), 5);
    }

    #[test]
    fn s4_center_trivial() {
        assert_eq!(build_group("symmetric:4").unwrap().center().order(), 1);
    }

    #[test]
    fn element_orders() {
        let g = dic(12);
        assert_eq!(g.element_order(0), 1);
        // Dic12 = <w, z>; the builder calls w "x"
        let w = g.label("x").unwrap();
        assert_eq!(g.element_order(g.pow(w, 3)), 2);
        let d24 = dic(24);
        assert_eq!(d24.element_order(d24.label("x").unwrap()), 12);
    }

    #[test]
    fn subgroup_generation() {
        let g = dic(24);
        let x = g.label("x").unwrap();
        let y = g.label("y").unwrap();
        assert_eq!(g.subgroup_generated(&[g.pow(x, 2)]).order(), 6);
        assert_eq!(g.subgroup_generated(&[0]).order(), 1);
        let h = g.subgroup_generated(&[g.pow(x, 2), y]);
        assert_eq!(h.order(), 12);
        let (h, _) = h.to_group("sub", "g");
        assert!(is_isomorphic(&h, &dic(12)).unwrap());
    }

    #[test]
    fn quotients_by_center() {
        let ostar = build_group("binary-octahedral").unwrap();
        let (q, _) = ostar.quotient(&ostar.center()).unwrap();
        assert_eq!(q.order(), 24);
        assert!(is_isomorphic(&q, &build_group("symmetric:4").unwrap()).unwrap());

        let d12 = dic(12);
        let (q, _) = d12.quotient(&d12.center()).unwrap();
        assert!(is_isomorphic(&q, &build_group("dihedral:3").unwrap()).unwrap());

        let d24 = dic(24);
        let x = d24.label("x").unwrap();
        let six = d24.subgroup_generated(&[d24.pow(x, 6)]);
        let (q, _) = d24.quotient(&six).unwrap();
        assert!(is_isomorphic(&q, &build_group("dihedral:6").unwrap()).unwrap());

        let (q, _) = d24.quotient(&d24.trivial_subgroup()).unwrap();
        assert!(is_isomorphic(&q, &d24).unwrap());
    }

    #[test]
    fn capable_quotients_have_trivial_center() {
        for spec in ["dicyclic:12", "binary-octahedral"] {
            let g = build_group(spec).unwrap();
            let (q, _) = g.quotient(&g.center()).unwrap();
            assert_eq!(q.center().order(), 1, "{spec}");
        }
    }

    #[test]
    fn non_normal_quotient_rejected() {
        let s4 = build_group("symmetric:4").unwrap();
        let t = s4.label("t").unwrap();
        let h = s4.subgroup_generated(&[t]);
        assert_eq!(s4.quotient(&h).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn dicyclic_unique_involution_is_central() {
        for n in 2..=12 {
            let g = dic(4 * n);
            let invols: Vec<usize> = g.elements().filter(|&e| g.element_order(e) == 2).collect();
            assert_eq!(invols.len(), 1, "Dic{}", 4 * n);
            assert!(g.center().contains(invols[0]));
        }
    }

    #[test]
    fn subgroup_new_checks_closure() {
        let g = build_group("cyclic:6").unwrap();
        assert!(Subgroup::new(&g, vec![0, 3]).is_some());
        assert!(Subgroup::new(&g, vec![0, 1]).is_none());
    }
}
