//! The amalgams used by the worked examples.

use std::sync::Arc;

use super::{quaternion_wedge, Amalgam, AmalgamError, Side};
use crate::group::{build_group, dicyclic_labelled, FiniteGroup, GroupError, GroupHom};
use crate::presentation::{Word, WordGroup};

/// `Z/4 ∗_{Z/2} Q₈`, read off the quaternion action on the wedge graph.
pub fn wedge_amalgam() -> Result<Amalgam, AmalgamError> {
    let q = quaternion_wedge().quotient()?;
    q.amalgam.ok_or(AmalgamError::NotASegment {
        vertices: q.vertex_orbits.len(),
        edges: q.edge_orbits.len(),
    })
}

/// `O* ∗_{Dic₁₂} Dic₂₄`.
///
/// `O*` carries the labels `X, P, Q, R`, `Dic₂₄` the labels `Y` (order 12)
/// and `Z`, and `Dic₁₂` the labels `w` (order 6) and `z`. The edge group
/// embeds by `w ↦ P²X⁻¹, z ↦ P²XR` and `w ↦ Y², z ↦ Z`.
pub fn octahedral_amalgam() -> Result<Amalgam, AmalgamError> {
    let o = Arc::new(build_group("binary-octahedral")?);
    let d24 = Arc::new(dicyclic_labelled(24, "Y", "Z")?);
    let d12 = Arc::new(dicyclic_labelled(12, "w", "z")?);
    let eval = |g: &FiniteGroup, w: &str| -> Result<usize, AmalgamError> {
        let word: Word = w.parse().map_err(|_| AmalgamError::UnknownSymbol(w.to_string()))?;
        Ok(g.eval(&word)?)
    };
    let ia = GroupHom::new(
        d12.clone(),
        o.clone(),
        vec![eval(&o, "P^2 X^-1")?, eval(&o, "P^2 X R")?],
    )?;
    let ib = GroupHom::new(d12, d24.clone(), vec![eval(&d24, "Y^2")?, eval(&d24, "Z")?])?;
    Amalgam::new(ia, ib)
}

/// Quotient of every vertex and edge group by the subgroup generated by a
/// central edge-group element `c` (and its images), with induced embeddings.
pub fn central_quotient(am: &Amalgam, c: usize) -> Result<Amalgam, AmalgamError> {
    let edge = am.edge_group();
    let quotient_of = |g: &FiniteGroup, z: usize| -> Result<(Arc<FiniteGroup>, Vec<usize>), AmalgamError> {
        let n = g.subgroup_generated(&[z]);
        if !g.center().contains(z) {
            return Err(GroupError::NotNormal.into());
        }
        let (q, proj) = g.quotient(&n)?;
        Ok((Arc::new(q), proj))
    };
    let (qc, pc) = quotient_of(edge, c)?;
    let mut homs = Vec::new();
    for side in [Side::A, Side::B] {
        let image = am.embedding(side).extend().expect("amalgam embeddings are homomorphisms");
        let g = am.vertex_group(side);
        let (qg, pg) = quotient_of(g, image[c])?;
        let mut map = vec![0; qc.order()];
        for x in edge.elements() {
            map[pc[x]] = pg[image[x]];
        }
        homs.push(GroupHom::from_map(qc.clone(), qg, &map)?);
    }
    let ib = homs.pop().unwrap();
    let ia = homs.pop().unwrap();
    Amalgam::new(ia, ib)
}

/// The central involution of the edge group when the edge group has one.
pub fn central_involution(am: &Amalgam) -> Option<usize> {
    let c = am.edge_group();
    let centre = c.center();
    let invs: Vec<usize> = centre
        .elements()
        .iter()
        .copied()
        .filter(|&z| c.element_order(z) == 2)
        .collect();
    (invs.len() == 1).then(|| invs[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::ElementOrder;
    use crate::group::is_isomorphic;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn octahedral_amalgam_shape() {
        let am = octahedral_amalgam().unwrap();
        assert_eq!(am.index(Side::A), 4);
        assert_eq!(am.index(Side::B), 2);
        assert!(am.evaluate(&w("P^2 X^-1 Y^-2")).unwrap().is_identity());
        assert!(am.evaluate(&w("P^2 X R Z^-1")).unwrap().is_identity());
        // the common central involution
        assert!(am.evaluate(&w("P^2 Y^-6")).unwrap().is_identity());
        assert_eq!(am.order_of(&am.evaluate(&w("P Y^3")).unwrap()), ElementOrder::Infinite);
        assert_eq!(am.order_of(&am.evaluate(&w("Y")).unwrap()), ElementOrder::Finite(12));
    }

    #[test]
    fn braid_relation_images_agree() {
        let am = octahedral_amalgam().unwrap();
        let lhs = am.evaluate(&w("Z P Y^3 Y Q^-1 Z^-1 Z P Y^3")).unwrap();
        let rhs = am.evaluate(&w("Y Q^-1 Z^-1 Z P Y^3 Y Q^-1 Z^-1")).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn central_quotient_groups() {
        let am = octahedral_amalgam().unwrap();
        let z = central_involution(&am).unwrap();
        let q = central_quotient(&am, z).unwrap();
        let iso = |g: &FiniteGroup, s: &str| is_isomorphic(g, &build_group(s).unwrap()).unwrap();
        assert!(iso(q.vertex_group(Side::A), "symmetric:4"));
        assert!(iso(q.vertex_group(Side::B), "dihedral:6"));
        assert!(iso(q.edge_group(), "dihedral:3"));
    }

    #[test]
    fn wedge_amalgam_sides() {
        let am = wedge_amalgam().unwrap();
        assert_eq!(am.vertex_group(Side::A).order(), 4);
        assert_eq!(am.vertex_group(Side::B).order(), 8);
    }
}
