//! Amalgamated products `A ∗_C B` of finite groups.
//!
//! Elements are stored in the Bass–Serre normal form `c · t₁ · t₂ ⋯ t_k`:
//! a head `c ∈ C` followed by non-identity right-coset representatives that
//! alternate between the two sides. Normal forms are unique, so equality of
//! words reduces to equality of normal forms.

pub mod bundled;
mod graph;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

pub use graph::{quaternion_wedge, GraphOfGroups, GraphWithAction, Orbit};

use crate::group::{FiniteGroup, GroupError, GroupHom};
use crate::presentation::{PresentationError, Word, WordGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmalgamError {
    #[error("embedding of the edge group into side {0} is not injective")]
    NotInjective(Side),
    #[error("map of the edge group into side {0} is not a homomorphism")]
    NotHomomorphism(Side),
    #[error("the two embeddings start from different edge groups")]
    EdgeGroupMismatch,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("element {element} maps edge {edge} to its reverse")]
    EdgeInversion { edge: String, element: String },
    #[error("generator images do not define an action: {0}")]
    NotAnAction(String),
    #[error("quotient graph has {vertices} vertex orbits and {edges} edge orbits, not a segment")]
    NotASegment { vertices: usize, edges: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl From<PresentationError> for AmalgamError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::UnknownSymbol(s) => AmalgamError::UnknownSymbol(s),
            other => AmalgamError::UnknownSymbol(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// One vertex group together with the edge group's embedding and the
/// resulting coset decomposition `g = i(c) · t`.
#[derive(Clone, Debug)]
struct VertexSide {
    group: Arc<FiniteGroup>,
    embedding: GroupHom,
    /// Element-level embedding `C → group`.
    image: Vec<usize>,
    /// Right-coset representatives, ascending; index 0 is the identity.
    transversal: Vec<usize>,
    /// For every element `g`: `(c, t)` with `g = image[c] · transversal[t]`.
    decomposition: Vec<(usize, usize)>,
}

impl VertexSide {
    fn new(embedding: GroupHom, side: Side) -> Result<Self, AmalgamError> {
        let check = embedding.check();
        if !check.valid {
            return Err(AmalgamError::NotHomomorphism(side));
        }
        if !check.injective {
            return Err(AmalgamError::NotInjective(side));
        }
        let image = embedding.extend().expect("checked above");
        let group = embedding.target().clone();
        let n = group.order();
        let mut preimage = vec![usize::MAX; n];
        for (c, &g) in image.iter().enumerate() {
            preimage[g] = c;
        }
        let mut coset = vec![usize::MAX; n];
        let mut transversal = Vec::new();
        for g in group.elements() {
            if coset[g] != usize::MAX {
                continue;
            }
            for &h in &image {
                coset[group.mul(h, g)] = transversal.len();
            }
            transversal.push(g);
        }
        let decomposition = group
            .elements()
            .map(|g| {
                let t = coset[g];
                let c = preimage[group.mul(g, group.inverse(transversal[t]))];
                (c, t)
            })
            .collect();
        Ok(VertexSide {
            group,
            embedding,
            image,
            transversal,
            decomposition,
        })
    }
}

/// A syllable of a normal form: a non-identity coset representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Syllable {
    pub side: Side,
    /// Index into the side's transversal (never 0).
    pub rep: usize,
}

/// Normal form `head · t₁ ⋯ t_k` of an element of an amalgam.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AmalgamElement {
    pub head: usize,
    pub syllables: Vec<Syllable>,
}

impl AmalgamElement {
    pub fn identity() -> Self {
        AmalgamElement {
            head: 0,
            syllables: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.head == 0 && self.syllables.is_empty()
    }

    /// Number of syllables, the length in the Bass–Serre tree sense.
    pub fn length(&self) -> usize {
        self.syllables.len()
    }

    /// Adjacent syllables lie on different sides and none is the identity.
    pub fn is_alternating(&self) -> bool {
        self.syllables.iter().all(|s| s.rep != 0)
            && self.syllables.windows(2).all(|w| w[0].side != w[1].side)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ElementOrder {
    Finite(usize),
    Infinite,
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(k) => write!(f, "{k}"),
            ElementOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// `A ∗_C B` with fixed transversals.
///
/// Word symbols resolve to the generator labels of `A` first, then `B`.
#[derive(Clone, Debug)]
pub struct Amalgam {
    edge: Arc<FiniteGroup>,
    a: VertexSide,
    b: VertexSide,
}

impl Amalgam {
    /// Builds the amalgam of the two embeddings `C → A`, `C → B`.
    pub fn new(ia: GroupHom, ib: GroupHom) -> Result<Self, AmalgamError> {
        if ia.source() != ib.source() {
            return Err(AmalgamError::EdgeGroupMismatch);
        }
        let edge = ia.source().clone();
        Ok(Amalgam {
            edge,
            a: VertexSide::new(ia, Side::A)?,
            b: VertexSide::new(ib, Side::B)?,
        })
    }

    fn side(&self, s: Side) -> &VertexSide {
        match s {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    pub fn vertex_group(&self, s: Side) -> &Arc<FiniteGroup> {
        &self.side(s).group
    }

    pub fn edge_group(&self) -> &Arc<FiniteGroup> {
        &self.edge
    }

    pub fn embedding(&self, s: Side) -> &GroupHom {
        &self.side(s).embedding
    }

    /// Coset representatives of the edge group in side `s`, identity first.
    pub fn transversal(&self, s: Side) -> &[usize] {
        &self.side(s).transversal
    }

    /// `[A : C]` or `[B : C]`.
    pub fn index(&self, s: Side) -> usize {
        self.side(s).transversal.len()
    }

    /// The normal form of a vertex-group element.
    pub fn vertex_element(&self, s: Side, g: usize) -> AmalgamElement {
        self.mul_vertex(AmalgamElement::identity(), s, g)
    }

    /// The normal form of an edge-group element.
    pub fn edge_element(&self, c: usize) -> AmalgamElement {
        AmalgamElement {
            head: c,
            syllables: Vec::new(),
        }
    }

    /// Right multiplication by an element `g` of a vertex group.
    fn mul_vertex(&self, mut x: AmalgamElement, s: Side, mut g: usize) -> AmalgamElement {
        let vs = self.side(s);
        if let Some(last) = x.syllables.last() {
            if last.side == s {
                g = vs.group.mul(vs.transversal[last.rep], g);
                x.syllables.pop();
            }
        }
        let (mut c, t) = vs.decomposition[g];
        // push the edge-group part leftwards through the remaining syllables
        for syl in x.syllables.iter_mut().rev() {
            let side = self.side(syl.side);
            let h = side.group.mul(side.transversal[syl.rep], side.image[c]);
            let (c2, t2) = side.decomposition[h];
            syl.rep = t2;
            c = c2;
        }
        x.head = self.edge.mul(x.head, c);
        if t != 0 {
            x.syllables.push(Syllable { side: s, rep: t });
        }
        x
    }

    pub fn mul(&self, x: &AmalgamElement, y: &AmalgamElement) -> AmalgamElement {
        let mut z = self.mul_vertex(x.clone(), Side::A, self.a.image[y.head]);
        for syl in &y.syllables {
            z = self.mul_vertex(z, syl.side, self.side(syl.side).transversal[syl.rep]);
        }
        z
    }

    pub fn inverse(&self, x: &AmalgamElement) -> AmalgamElement {
        let mut z = AmalgamElement::identity();
        for syl in x.syllables.iter().rev() {
            let vs = self.side(syl.side);
            z = self.mul_vertex(z, syl.side, vs.group.inverse(vs.transversal[syl.rep]));
        }
        self.mul_vertex(z, Side::A, self.a.image[self.edge.inverse(x.head)])
    }

    /// Normal form of a word over the generator labels of `A` and `B`.
    pub fn evaluate(&self, w: &Word) -> Result<AmalgamElement, AmalgamError> {
        let mut x = AmalgamElement::identity();
        for l in w.letters() {
            let (s, g) = self
                .resolve(&l.symbol)
                .ok_or_else(|| AmalgamError::UnknownSymbol(l.symbol.clone()))?;
            let group = &self.side(s).group;
            x = self.mul_vertex(x, s, group.pow(g, l.exp));
        }
        Ok(x)
    }

    fn resolve(&self, symbol: &str) -> Option<(Side, usize)> {
        self.a
            .group
            .label(symbol)
            .map(|g| (Side::A, g))
            .or_else(|| self.b.group.label(symbol).map(|g| (Side::B, g)))
    }

    /// Order of an element, by cyclic reduction.
    ///
    /// Conjugating by the last syllable shortens an odd-length normal form;
    /// once the length is even and at least 2 the element is cyclically
    /// reduced and has infinite order, and at length at most 1 it lies in a
    /// vertex group.
    pub fn order_of(&self, x: &AmalgamElement) -> ElementOrder {
        let mut x = x.clone();
        loop {
            match x.syllables.len() {
                0 => return ElementOrder::Finite(self.edge.element_order(x.head)),
                1 => {
                    let syl = x.syllables[0];
                    let vs = self.side(syl.side);
                    let g = vs.group.mul(vs.image[x.head], vs.transversal[syl.rep]);
                    return ElementOrder::Finite(vs.group.element_order(g));
                }
                k if k % 2 == 0 => return ElementOrder::Infinite,
                _ => {
                    let syl = *x.syllables.last().unwrap();
                    let t = self.vertex_element(syl.side, self.side(syl.side).transversal[syl.rep]);
                    let shorter = self.mul(&self.mul(&t, &x), &self.inverse(&t));
                    debug_assert!(shorter.length() < x.length());
                    x = shorter;
                }
            }
        }
    }

    /// Human-readable normal form, e.g. `w^2 · P X · Y`.
    pub fn render(&self, x: &AmalgamElement) -> String {
        let mut parts = Vec::new();
        if x.head != 0 {
            parts.push(self.edge.element_name(x.head).to_string());
        }
        for syl in &x.syllables {
            let vs = self.side(syl.side);
            parts.push(vs.group.element_name(vs.transversal[syl.rep]).to_string());
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" · ")
        }
    }

    /// Flips the roles of the two sides.
    pub fn swapped(&self) -> Amalgam {
        Amalgam {
            edge: self.edge.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

impl WordGroup for Amalgam {
    type Elem = AmalgamElement;

    fn identity(&self) -> AmalgamElement {
        AmalgamElement::identity()
    }

    fn generator(&self, symbol: &str) -> Option<AmalgamElement> {
        self.resolve(symbol)
            .map(|(s, g)| self.vertex_element(s, g))
    }

    fn mul(&self, a: &AmalgamElement, b: &AmalgamElement) -> AmalgamElement {
        Amalgam::mul(self, a, b)
    }

    fn inv(&self, a: &AmalgamElement) -> AmalgamElement {
        self.inverse(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn arc(s: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(s).unwrap())
    }

    /// `Z/4 ∗_{Z/2} Q₈` with the unique embeddings.
    fn z4_q8() -> Amalgam {
        let c = arc("cyclic:2");
        let a = arc("cyclic:4");
        let b = arc("quaternion:8");
        let ia = GroupHom::new(c.clone(), a.clone(), vec![a.pow(a.label("g").unwrap(), 2)]).unwrap();
        let ib = GroupHom::new(c, b.clone(), vec![b.pow(b.label("a").unwrap(), 2)]).unwrap();
        Amalgam::new(ia, ib).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn indices_and_transversals() {
        let am = z4_q8();
        assert_eq!(am.index(Side::A), 2);
        assert_eq!(am.index(Side::B), 4);
        assert_eq!(am.transversal(Side::A)[0], 0);
        assert_eq!(am.transversal(Side::B)[0], 0);
    }

    #[test]
    fn words_reduce() {
        let am = z4_q8();
        assert!(am.evaluate(&Word::identity()).unwrap().is_identity());
        // g² = a² is the amalgamated involution
        assert_eq!(am.evaluate(&w("g^2 a^-2")).unwrap(), AmalgamElement::identity());
        let x = am.evaluate(&w("g a g b")).unwrap();
        assert_eq!(x.length(), 4);
        assert!(x.is_alternating());
        assert!(am.mul(&x, &am.inverse(&x)).is_identity());
    }

    #[test]
    fn orders() {
        let am = z4_q8();
        assert_eq!(am.order_of(&am.evaluate(&w("g")).unwrap()), ElementOrder::Finite(4));
        assert_eq!(am.order_of(&am.evaluate(&w("g a")).unwrap()), ElementOrder::Infinite);
        // conjugate of a vertex element stays finite
        let c = am.evaluate(&w("g a b a^-1 g^-1")).unwrap();
        assert_eq!(am.order_of(&c), ElementOrder::Finite(4));
        assert_eq!(am.order_of(&AmalgamElement::identity()), ElementOrder::Finite(1));
    }

    #[test]
    fn degenerate_amalgam_is_the_group() {
        let g = arc("dicyclic:12");
        let id = GroupHom::from_map(g.clone(), g.clone(), &g.elements().collect::<Vec<_>>()).unwrap();
        let am = Amalgam::new(id.clone(), id).unwrap();
        for e in g.elements() {
            let x = am.vertex_element(Side::A, e);
            assert!(x.syllables.is_empty());
            assert_eq!(am.order_of(&x), ElementOrder::Finite(g.element_order(e)));
        }
    }

    #[test]
    fn rejects_bad_embeddings() {
        let c = arc("cyclic:2");
        let a = arc("cyclic:4");
        let bad = GroupHom::new(c.clone(), a.clone(), vec![a.label("g").unwrap()]).unwrap();
        let ok = GroupHom::new(c.clone(), a.clone(), vec![a.pow(1, 2)]).unwrap();
        assert_eq!(
            Amalgam::new(bad, ok.clone()).unwrap_err(),
            AmalgamError::NotHomomorphism(Side::A)
        );
        let q = arc("cyclic:4");
        let c4 = arc("cyclic:4");
        let collapse = GroupHom::new(c4.clone(), q.clone(), vec![q.pow(1, 2)]).unwrap();
        let fine = GroupHom::from_map(c4.clone(), q.clone(), &[0, 1, 2, 3]).unwrap();
        // g ↦ g² is a homomorphism Z/4 → Z/4 with kernel of order 2
        assert_eq!(
            Amalgam::new(fine, collapse).unwrap_err(),
            AmalgamError::NotInjective(Side::B)
        );
    }

    #[test]
    fn unknown_symbol() {
        assert_eq!(
            z4_q8().evaluate(&w("q")).unwrap_err(),
            AmalgamError::UnknownSymbol("q".into())
        );
    }
}
