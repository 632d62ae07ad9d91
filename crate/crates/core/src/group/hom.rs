use std::collections::VecDeque;
use std::sync::Arc;

use super::{FiniteGroup, GroupError};

/// A map of finite groups given by the images of the source's generator labels.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

/// Outcome of checking a [`GroupHom`] against the full multiplication table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomCheck {
    pub valid: bool,
    pub injective: bool,
}

impl GroupHom {
    /// `images[i]` is the image of the `i`-th generator label of `source`.
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.labels().len() {
            return Err(GroupError::NotAGroup(format!(
                "{} generator images given for {} labels",
                images.len(),
                source.labels().len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&g| g >= target.order()) {
            return Err(GroupError::BadElement(bad));
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    /// Builds a map from a full element-level table (subgroup inclusions, projections).
    pub fn from_map(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: &[usize],
    ) -> Result<Self, GroupError> {
        let images = source.generators().into_iter().map(|g| map[g]).collect();
        Self::new(source, target, images)
    }

    /// The map killing every generator.
    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let images = vec![0; source.labels().len()];
        GroupHom {
            source,
            target,
            images,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Extends the generator images along a breadth-first spanning tree.
    ///
    /// Returns `None` if two paths to the same element disagree, which
    /// certifies that no homomorphism has these generator images.
    pub fn extend(&self) -> Option<Vec<usize>> {
        let src = &self.source;
        let tgt = &self.target;
        let gens = src.generators();
        let mut map = vec![usize::MAX; src.order()];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for (s, &img) in gens.iter().zip(&self.images) {
                let h = src.mul(g, *s);
                let v = tgt.mul(map[g], img);
                if map[h] == usize::MAX {
                    map[h] = v;
                    queue.push_back(h);
                } else if map[h] != v {
                    return None;
                }
            }
        }
        map.iter().all(|&v| v != usize::MAX).then_some(map)
    }

    /// Validates the map on every pair of source elements.
    pub fn check(&self) -> HomCheck {
        let Some(map) = self.extend() else {
            return HomCheck {
                valid: false,
                injective: false,
            };
        };
        let src = &self.source;
        let valid = src.elements().all(|a| {
            src.elements()
                .all(|b| map[src.mul(a, b)] == self.target.mul(map[a], map[b]))
        });
        let mut seen = vec![false; self.target.order()];
        let injective = valid && map.iter().all(|&v| !std::mem::replace(&mut seen[v], true));
        HomCheck { valid, injective }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn dic(n: usize) -> Arc<FiniteGroup> {
        Arc::new(build_group(&format!("dicyclic:{n}")).unwrap())
    }

    #[test]
    fn dic12_into_dic24() {
        let (d12, d24) = (dic(12), dic(24));
        let x = d24.label("x").unwrap();
        let y = d24.label("y").unwrap();
        // w ↦ x², z ↦ y
        let h = GroupHom::new(d12.clone(), d24.clone(), vec![d24.pow(x, 2), y]).unwrap();
        assert_eq!(
            h.check(),
            HomCheck {
                valid: true,
                injective: true
            }
        );
        // w ↦ x has the wrong order
        let bad = GroupHom::new(d12, d24, vec![x, y]).unwrap();
        assert!(!bad.check().valid);
    }

    #[test]
    fn trivial_map_is_valid_not_injective() {
        let h = GroupHom::trivial(dic(12), dic(24));
        assert_eq!(
            h.check(),
            HomCheck {
                valid: true,
                injective: false
            }
        );
    }

    #[test]
    fn wrong_arity_rejected() {
        assert!(GroupHom::new(dic(12), dic(24), vec![0]).is_err());
    }
}
