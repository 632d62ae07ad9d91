use std::collections::VecDeque;

use super::{FiniteGroup, GroupError};

/// Isomorphism search is only attempted up to this order.
pub const ISO_ORDER_LIMIT: usize = 200;

/// Decides whether two groups are isomorphic.
///
/// Backtracks over images of a small generating set of `g`; candidates must
/// match in element order and conjugacy-class size, and every partial
/// assignment must extend to an injective homomorphism on the subgroup it
/// generates.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool, GroupError> {
    for x in [g, h] {
        if x.order() > ISO_ORDER_LIMIT {
            return Err(GroupError::OrderLimitExceeded {
                order: x.order(),
                limit: ISO_ORDER_LIMIT,
            });
        }
    }
    if g.order() != h.order() {
        return Ok(false);
    }
    let gi = invariants(g);
    let hi = invariants(h);
    let mut gs = gi.clone();
    let mut hs = hi.clone();
    gs.sort_unstable();
    hs.sort_unstable();
    if gs != hs {
        return Ok(false);
    }
    let gens = g.small_generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| h.elements().filter(|&t| hi[t] == gi[s]).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(g, h, &gens, &candidates, &mut images))
}

/// (element order, class size) per element.
fn invariants(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let classes = g.conjugacy_classes();
    let mut inv = vec![(0, 0); g.order()];
    for class in &classes {
        for &x in class {
            inv[x] = (g.element_order(x), class.len());
        }
    }
    inv
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> bool {
    let k = images.len();
    if k == gens.len() {
        return partial_embedding(g, h, gens, images).is_some_and(|n| n == g.order());
    }
    for &t in &candidates[k] {
        images.push(t);
        if partial_embedding(g, h, &gens[..=k], images).is_some() && search(g, h, gens, candidates, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Extends `gens ↦ images` over the subgroup the gens generate; returns its
/// size if the extension is a well-defined injective homomorphism.
fn partial_embedding(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<usize> {
    let mut map = vec![usize::MAX; g.order()];
    let mut hit = vec![false; h.order()];
    map[0] = 0;
    hit[0] = true;
    let mut count = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let v = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if std::mem::replace(&mut hit[v], true) {
                    return None;
                }
                map[y] = v;
                count += 1;
                queue.push_back(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn b(s: &str) -> FiniteGroup {
        build_group(s).unwrap()
    }

    #[test]
    fn basic_verdicts() {
        assert!(is_isomorphic(&b("quaternion:8"), &b("dicyclic:8")).unwrap());
        assert!(!is_isomorphic(&b("cyclic:4"), &b("dihedral:2")).unwrap());
        assert!(!is_isomorphic(&b("quaternion:8"), &b("dihedral:4")).unwrap());
        assert!(is_isomorphic(&b("symmetric:3"), &b("dihedral:3")).unwrap());
        assert!(!is_isomorphic(&b("dicyclic:12"), &b("dihedral:6")).unwrap());
        // same order and order statistics but not isomorphic: S4 vs binary tetrahedral
        assert!(!is_isomorphic(&b("symmetric:4"), &b("binary-tetrahedral")).unwrap());
        assert!(!is_isomorphic(&b("cyclic:6"), &b("cyclic:5")).unwrap());
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            is_isomorphic(&b("cyclic:201"), &b("cyclic:201")),
            Err(GroupError::OrderLimitExceeded { .. })
        ));
    }
}
