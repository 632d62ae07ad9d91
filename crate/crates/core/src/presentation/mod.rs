//! Finitely presented groups: words, relators, coset enumeration and
//! homomorphism checks against any group that can evaluate words.

mod coset;
mod word;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use coset::{todd_coxeter, CosetError, CosetTable, DEFAULT_COSET_LIMIT};
pub use word::{Letter, Word, WordParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("malformed presentation: {0}")]
    Parse(String),
}

impl From<WordParseError> for PresentationError {
    fn from(e: WordParseError) -> Self {
        PresentationError::Parse(e.to_string())
    }
}

/// A group in which words over string symbols can be evaluated.
pub trait WordGroup {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn identity(&self) -> Self::Elem;
    /// The element a generator symbol names, if any.
    fn generator(&self, symbol: &str) -> Option<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// Evaluates a word, resolving each symbol through `lookup`.
    fn eval_with<F>(&self, w: &Word, lookup: F) -> Result<Self::Elem, PresentationError>
    where
        F: Fn(&str) -> Option<Self::Elem>,
    {
        let mut acc = self.identity();
        for l in w.letters() {
            let g = lookup(&l.symbol)
                .ok_or_else(|| PresentationError::UnknownSymbol(l.symbol.clone()))?;
            acc = self.mul(&acc, &self.pow(&g, l.exp));
        }
        Ok(acc)
    }

    /// Evaluates a word over the group's own generator symbols.
    fn eval(&self, w: &Word) -> Result<Self::Elem, PresentationError> {
        self.eval_with(w, |s| self.generator(s))
    }
}

/// A defining relation `lhs = rhs`, kept in equation shape for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relator {
    pub family: String,
    pub lhs: Word,
    pub rhs: Word,
}

impl Relator {
    pub fn new(family: impl Into<String>, lhs: Word, rhs: Word) -> Self {
        Relator {
            family: family.into(),
            lhs,
            rhs,
        }
    }

    /// The relator word `lhs · rhs⁻¹`.
    pub fn word(&self) -> Word {
        self.lhs.concat(&self.rhs.inverse())
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Relator>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.relators.len() == other.relators.len()
            && self
                .relators
                .iter()
                .zip(&other.relators)
                .all(|(a, b)| a.word() == b.word())
    }
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Relator>) -> Result<Self, PresentationError> {
        for r in &relators {
            for s in r.lhs.symbols().chain(r.rhs.symbols()) {
                if !generators.iter().any(|g| g == s) {
                    return Err(PresentationError::UnknownSymbol(s.to_string()));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn generator_index(&self, symbol: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == symbol)
    }
}

impl fmt::Display for Presentation {
    /// `gens: a b c; rel: a^2 b^-1 a b; …`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}", self.generators.join(" "))?;
        for r in &self.relators {
            write!(f, "; rel: {}", r.word())?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, body) = part
                .split_once(':')
                .ok_or_else(|| PresentationError::Parse(format!("missing `:` in `{part}`")))?;
            match key.trim() {
                "gens" => {
                    generators = Some(body.split_whitespace().map(str::to_string).collect())
                }
                "rel" => relators.push(Relator::new("rel", body.parse()?, Word::identity())),
                other => {
                    return Err(PresentationError::Parse(format!("unknown section `{other}`")))
                }
            }
        }
        let generators =
            generators.ok_or_else(|| PresentationError::Parse("missing `gens:`".into()))?;
        Presentation::new(generators, relators)
    }
}

fn sigma(i: usize) -> String {
    format!("s{i}")
}

fn rho(i: usize) -> String {
    format!("r{i}")
}

/// The standard presentation of the braid group of the projective plane on
/// `n` strands: generators `s1..s{n-1}` (σᵢ) and `r1..rn` (ρⱼ).
///
/// Relation families, in order: far commutation of σ's, the braid relation,
/// σᵢρⱼ = ρⱼσᵢ for j ∉ {i, i+1}, ρᵢ₊₁ = σᵢ⁻¹ρᵢσᵢ⁻¹,
/// ρᵢ₊₁⁻¹ρᵢ⁻¹ρᵢ₊₁ρᵢ = σᵢ², and ρ₁² = σ₁⋯σₙ₋₂σₙ₋₁²σₙ₋₂⋯σ₁.
pub fn van_buskirk(n: usize) -> Presentation {
    assert!(n >= 1, "at least one strand");
    let s = |i: usize, e: i64| Word::letter(&sigma(i), e);
    let r = |i: usize, e: i64| Word::letter(&rho(i), e);
    let mut generators: Vec<String> = (1..n).map(sigma).collect();
    generators.extend((1..=n).map(rho));
    let mut rels = Vec::new();
    for i in 1..n {
        for j in (i + 2)..n {
            rels.push(Relator::new(
                format!("far-commute i={i} j={j}"),
                &s(i, 1) * &s(j, 1),
                &s(j, 1) * &s(i, 1),
            ));
        }
    }
    for i in 1..n.saturating_sub(1) {
        rels.push(Relator::new(
            format!("braid i={i}"),
            &(&s(i, 1) * &s(i + 1, 1)) * &s(i, 1),
            &(&s(i + 1, 1) * &s(i, 1)) * &s(i + 1, 1),
        ));
    }
    for i in 1..n {
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            rels.push(Relator::new(
                format!("sigma-rho-commute i={i} j={j}"),
                &s(i, 1) * &r(j, 1),
                &r(j, 1) * &s(i, 1),
            ));
        }
    }
    for i in 1..n {
        rels.push(Relator::new(
            format!("rho-conjugate i={i}"),
            r(i + 1, 1),
            &(&s(i, -1) * &r(i, 1)) * &s(i, -1),
        ));
    }
    for i in 1..n {
        rels.push(Relator::new(
            format!("rho-commutator i={i}"),
            &(&(&r(i + 1, -1) * &r(i, -1)) * &r(i + 1, 1)) * &r(i, 1),
            s(i, 2),
        ));
    }
    let mut surface = Word::identity();
    if n >= 2 {
        for i in 1..n - 1 {
            surface = &surface * &s(i, 1);
        }
        surface = &surface * &s(n - 1, 2);
        for i in (1..n - 1).rev() {
            surface = &surface * &s(i, 1);
        }
    }
    rels.push(Relator::new("surface", r(1, 2), surface));
    Presentation::new(generators, rels).expect("relators use declared generators")
}

/// Result of checking a generator assignment against every relator.
#[derive(Clone, Debug, Serialize)]
pub struct HomReport {
    pub ok: bool,
    pub failing_relators: Vec<Relator>,
}

/// Checks that `images` (generator symbol → target element) sends every
/// relator of `p` to the identity of `target`.
pub fn verify_homomorphism<G: WordGroup>(
    p: &Presentation,
    target: &G,
    images: &BTreeMap<String, G::Elem>,
) -> Result<HomReport, PresentationError> {
    if let Some(extra) = images.keys().find(|k| p.generator_index(k).is_none()) {
        return Err(PresentationError::UnknownSymbol(extra.clone()));
    }
    if let Some(missing) = p.generators().iter().find(|g| !images.contains_key(*g)) {
        return Err(PresentationError::MissingImage(missing.clone()));
    }
    let mut failing = Vec::new();
    for r in p.relators() {
        let v = target.eval_with(&r.word(), |s| images.get(s).cloned())?;
        if !target.is_identity(&v) {
            failing.push(r.clone());
        }
    }
    Ok(HomReport {
        ok: failing.is_empty(),
        failing_relators: failing,
    })
}

/// Evaluates `(generator, word in target symbols)` pairs into an image map.
pub fn images_from_words<G: WordGroup>(
    target: &G,
    assignments: &[(&str, &str)],
) -> Result<BTreeMap<String, G::Elem>, PresentationError> {
    assignments
        .iter()
        .map(|(g, w)| Ok((g.to_string(), target.eval(&w.parse()?)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    #[test]
    fn van_buskirk_shapes() {
        let p1 = van_buskirk(1);
        assert_eq!(p1.generators(), &["r1".to_string()]);
        assert_eq!(p1.relators().len(), 1);
        assert_eq!(p1.relators()[0].word(), "r1^2".parse().unwrap());

        let p2 = van_buskirk(2);
        assert_eq!(p2.generators().len(), 3);
        assert!(p2
            .relators()
            .iter()
            .all(|r| !r.family.starts_with("far-commute")
                && !r.family.starts_with("braid")
                && !r.family.starts_with("sigma-rho")));
        assert_eq!(p2.relators().len(), 3);

        let p3 = van_buskirk(3);
        assert_eq!(p3.generators().len(), 5);
        assert_eq!(p3.relators().len(), 8);
        let surface = p3.relators().last().unwrap();
        assert_eq!(surface.rhs, "s1 s2^2 s1".parse().unwrap());

        let p4 = van_buskirk(4);
        // 1 far + 2 braid + 6 sigma-rho + 3 + 3 + 1
        assert_eq!(p4.relators().len(), 16);
    }

    #[test]
    fn text_round_trip() {
        let p = van_buskirk(3);
        let q: Presentation = p.to_string().parse().unwrap();
        assert_eq!(p, q);
        let t: Presentation = "gens: a b; rel: a^2 b^-1 a b; rel: b^3".parse().unwrap();
        assert_eq!(t.to_string(), "gens: a b; rel: a^2 b^-1 a b; rel: b^3");
        assert!(matches!(
            "gens: a; rel: b".parse::<Presentation>(),
            Err(PresentationError::UnknownSymbol(_))
        ));
        assert!("rel: a".parse::<Presentation>().is_err());
    }

    #[test]
    fn trivial_images_always_work() {
        let g = build_group("dicyclic:24").unwrap();
        let p = van_buskirk(3);
        let images = p.generators().iter().map(|s| (s.clone(), 0)).collect();
        assert!(verify_homomorphism(&p, &g, &images).unwrap().ok);
    }

    #[test]
    fn missing_and_unknown_images() {
        let g = build_group("cyclic:2").unwrap();
        let p = van_buskirk(1);
        let empty = BTreeMap::new();
        assert_eq!(
            verify_homomorphism(&p, &g, &empty).unwrap_err(),
            PresentationError::MissingImage("r1".into())
        );
        let mut extra = BTreeMap::new();
        extra.insert("r1".to_string(), 1);
        extra.insert("zz".to_string(), 1);
        assert!(matches!(
            verify_homomorphism(&p, &g, &extra),
            Err(PresentationError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn pb1_maps_onto_z2() {
        let g = build_group("cyclic:2").unwrap();
        let images = images_from_words(&g, &[("r1", "g")]).unwrap();
        assert!(verify_homomorphism(&van_buskirk(1), &g, &images).unwrap().ok);
        let g3 = build_group("cyclic:3").unwrap();
        let images = images_from_words(&g3, &[("r1", "g")]).unwrap();
        let rep = verify_homomorphism(&van_buskirk(1), &g3, &images).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.failing_relators.len(), 1);
    }

    #[test]
    fn quotient_projection_is_a_homomorphism() {
        // the canonical projection Dic24 → Dic24/Z, read back through the
        // dicyclic presentation of the source
        let g = build_group("dicyclic:24").unwrap();
        let (q, proj) = g.quotient(&g.center()).unwrap();
        let p: Presentation = "gens: x y; rel: x^6 y^-2; rel: y x y^-1 x".parse().unwrap();
        let images = [("x", "x"), ("y", "y")]
            .iter()
            .map(|(s, l)| (s.to_string(), proj[g.label(l).unwrap()]))
            .collect();
        assert!(verify_homomorphism(&p, &q, &images).unwrap().ok);
    }
}
