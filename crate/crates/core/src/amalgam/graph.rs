//! Finite groups acting on finite graphs without inversions, and the
//! graph of groups read off the quotient.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use super::{Amalgam, AmalgamError};
use crate::group::{build_group, FiniteGroup, GroupHom};

/// Images of every vertex and every oriented edge under one group element.
type Permutations = (Vec<usize>, Vec<usize>);

/// A finite graph with oriented edges and a group acting on it.
///
/// Oriented edge `2i` is the `i`-th declared edge and `2i + 1` its reverse,
/// named with a leading `~`. Each generator label of the group carries a
/// permutation of vertices and oriented edges; the action of a product
/// `g·s` is `ρ(g) ∘ ρ(s)`.
#[derive(Clone, Debug)]
pub struct GraphWithAction {
    group: Arc<FiniteGroup>,
    vertices: Vec<String>,
    edge_names: Vec<String>,
    /// Endpoints `(origin, terminus)` of each oriented edge.
    ends: Vec<(usize, usize)>,
    /// Per generator label: vertex permutation and oriented-edge permutation.
    generator_action: Vec<(Vec<usize>, Vec<usize>)>,
}

/// One orbit of cells with a representative and its stabilizer.
#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub representative: String,
    pub members: Vec<String>,
    /// Stabilizer of the representative, as sorted group elements.
    pub stabilizer: Vec<usize>,
}

/// Quotient graph with stabilizers, plus the amalgam when it is a segment.
#[derive(Clone, Debug)]
pub struct GraphOfGroups {
    pub vertex_orbits: Vec<Orbit>,
    /// One orbit per geometric edge orbit, represented by an oriented edge.
    pub edge_orbits: Vec<Orbit>,
    pub amalgam: Option<Amalgam>,
}

/// Full action: per element, a vertex permutation and an edge permutation.
type Action = Vec<(Vec<usize>, Vec<usize>)>;

impl GraphWithAction {
    /// A graph on `vertices` with geometric `edges` `(name, origin, terminus)`.
    /// Every generator acts trivially until [`Self::set_generator`] is called.
    pub fn new(group: Arc<FiniteGroup>, vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, AmalgamError> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let vertex = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| AmalgamError::UnknownSymbol(name.to_string()))
        };
        let mut edge_names = Vec::new();
        let mut ends = Vec::new();
        for &(name, from, to) in edges {
            let (f, t) = (vertex(from)?, vertex(to)?);
            edge_names.push(name.to_string());
            edge_names.push(format!("~{name}"));
            ends.push((f, t));
            ends.push((t, f));
        }
        let identity = ((0..vertices.len()).collect(), (0..ends.len()).collect());
        let generator_action = vec![identity; group.labels().len()];
        Ok(GraphWithAction {
            group,
            vertices,
            edge_names,
            ends,
            generator_action,
        })
    }

    fn edge(&self, name: &str) -> Result<usize, AmalgamError> {
        self.edge_names
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| AmalgamError::UnknownSymbol(name.to_string()))
    }

    /// Sets the action of one generator label from explicit cell images.
    ///
    /// Edge images are given on declared (or reversed, `~`-prefixed) edges;
    /// the image of the reverse is the reverse of the image. Cells not
    /// mentioned are fixed.
    pub fn set_generator(
        &mut self,
        label: &str,
        vertex_images: &[(&str, &str)],
        edge_images: &[(&str, &str)],
    ) -> Result<(), AmalgamError> {
        let k = self
            .group
            .labels()
            .iter()
            .position(|(l, _)| l == label)
            .ok_or_else(|| AmalgamError::UnknownSymbol(label.to_string()))?;
        let vertex = |name: &str| {
            self.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| AmalgamError::UnknownSymbol(name.to_string()))
        };
        let mut vperm: Vec<usize> = (0..self.vertices.len()).collect();
        for &(from, to) in vertex_images {
            vperm[vertex(from)?] = vertex(to)?;
        }
        let mut eperm: Vec<usize> = (0..self.ends.len()).collect();
        for &(from, to) in edge_images {
            let (f, t) = (self.edge(from)?, self.edge(to)?);
            eperm[f] = t;
            eperm[f ^ 1] = t ^ 1;
        }
        self.generator_action[k] = (vperm, eperm);
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    /// Extends the generator permutations to every group element and checks
    /// the action axioms: well-defined, incidence-preserving, commuting with
    /// reversal, and free of inversions.
    fn action(&self) -> Result<Action, AmalgamError> {
        let g = &self.group;
        let gens = g.generators();
        let nv = self.vertices.len();
        let ne = self.ends.len();
        for (k, (vp, ep)) in self.generator_action.iter().enumerate() {
            if !is_permutation(vp) || !is_permutation(ep) {
                return Err(AmalgamError::NotAnAction(format!(
                    "generator {} does not permute the cells",
                    g.labels()[k].0
                )));
            }
        }
        let mut act: Vec<Option<(Vec<usize>, Vec<usize>)>> = vec![None; g.order()];
        act[0] = Some(((0..nv).collect(), (0..ne).collect()));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, (sv, se)) in gens.iter().zip(&self.generator_action) {
                let (xv, xe) = act[x].as_ref().unwrap();
                // ρ(x s) = ρ(x) ∘ ρ(s)
                let v: Vec<usize> = sv.iter().map(|&i| xv[i]).collect();
                let e: Vec<usize> = se.iter().map(|&i| xe[i]).collect();
                let y = g.mul(x, s);
                match &act[y] {
                    None => {
                        act[y] = Some((v, e));
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != (v, e) => {
                        return Err(AmalgamError::NotAnAction(format!(
                            "two words for {} act differently",
                            g.element_name(y)
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let act: Action = act.into_iter().map(|a| a.expect("labels generate")).collect();
        for (x, (v, e)) in act.iter().enumerate() {
            for i in 0..ne {
                let (o, t) = self.ends[i];
                if self.ends[e[i]] != (v[o], v[t]) {
                    return Err(AmalgamError::NotAnAction(format!(
                        "{} does not preserve the endpoints of {}",
                        g.element_name(x),
                        self.edge_names[i]
                    )));
                }
                if e[i ^ 1] != e[i] ^ 1 {
                    return Err(AmalgamError::NotAnAction(format!(
                        "{} does not commute with reversing {}",
                        g.element_name(x),
                        self.edge_names[i]
                    )));
                }
                if e[i] == i ^ 1 {
                    return Err(AmalgamError::EdgeInversion {
                        edge: self.edge_names[i].clone(),
                        element: g.element_name(x).to_string(),
                    });
                }
            }
        }
        Ok(act)
    }

    /// Orbits and stabilizers of the action.
    ///
    /// When the quotient is a single segment, also returns the amalgam
    /// `Stab(v₁) ∗_{Stab(e)} Stab(v₂)` for a representative edge `e` from
    /// `v₁` to `v₂`, with the smaller vertex stabilizer on side `A`.
    pub fn quotient(&self) -> Result<GraphOfGroups, AmalgamError> {
        let act = self.action()?;
        let vertex_orbits = orbits(&act, self.vertices.len(), |(v, _), i| v[i]);
        let edge_classes = orbits(&act, self.ends.len(), |(_, e), i| e[i]);
        let mut geometric: Vec<Vec<usize>> = Vec::new();
        for class in edge_classes {
            // keep one of each {orbit, reversed orbit} pair
            if !geometric.iter().any(|o| o.contains(&(class[0] ^ 1))) {
                geometric.push(class);
            }
        }
        let stab = |test: &dyn Fn(&Permutations) -> bool| -> Vec<usize> {
            (0..act.len()).filter(|&x| test(&act[x])).collect()
        };
        let vertex_orbit_data: Vec<Orbit> = vertex_orbits
            .iter()
            .map(|o| Orbit {
                representative: self.vertices[o[0]].clone(),
                members: o.iter().map(|&i| self.vertices[i].clone()).collect(),
                stabilizer: stab(&|(v, _)| v[o[0]] == o[0]),
            })
            .collect();
        let edge_orbit_data: Vec<Orbit> = geometric
            .iter()
            .map(|o| Orbit {
                representative: self.edge_names[o[0]].clone(),
                members: o.iter().map(|&i| self.edge_names[i].clone()).collect(),
                stabilizer: stab(&|(_, e)| e[o[0]] == o[0]),
            })
            .collect();

        let amalgam = if vertex_orbits.len() == 2 && geometric.len() == 1 {
            let e = geometric[0][0];
            let (o, t) = self.ends[e];
            let sv = stab(&|(v, _)| v[o] == o);
            let tv = stab(&|(v, _)| v[t] == t);
            let se = stab(&|(_, ee)| ee[e] == e);
            let (a, b) = if tv.len() < sv.len() {
                ((t, tv), (o, sv))
            } else {
                ((o, sv), (t, tv))
            };
            Some(self.segment_amalgam(
                (&self.vertices[a.0], &a.1),
                (&self.vertices[b.0], &b.1),
                (&self.edge_names[e], &se),
            )?)
        } else {
            None
        };
        Ok(GraphOfGroups {
            vertex_orbits: vertex_orbit_data,
            edge_orbits: edge_orbit_data,
            amalgam,
        })
    }

    fn segment_amalgam(
        &self,
        (a_name, a): (&str, &[usize]),
        (b_name, b): (&str, &[usize]),
        (e_name, e): (&str, &[usize]),
    ) -> Result<Amalgam, AmalgamError> {
        let g = &*self.group;
        let subgroup = |els: &[usize], name: &str, prefix: &str| {
            let sub = g.subgroup_generated(els);
            let (h, inc) = sub.to_group(format!("Stab({name})"), prefix);
            (Arc::new(h), inc)
        };
        let (ga, inc_a) = subgroup(a, a_name, "a");
        let (gb, inc_b) = subgroup(b, b_name, "b");
        let (gc, inc_c) = subgroup(e, e_name, "c");
        let into = |inc: &[usize]| -> Vec<usize> {
            inc_c
                .iter()
                .map(|p| inc.iter().position(|q| q == p).expect("edge stabilizer fixes its endpoints"))
                .collect()
        };
        let ia = GroupHom::from_map(gc.clone(), ga, &into(&inc_a))?;
        let ib = GroupHom::from_map(gc, gb, &into(&inc_b))?;
        Amalgam::new(ia, ib)
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

/// Orbits of `0..n` under the action, each sorted, ordered by smallest member.
fn orbits<F>(act: &Action, n: usize, image: F) -> Vec<Vec<usize>>
where
    F: Fn(&(Vec<usize>, Vec<usize>), usize) -> usize,
{
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut orbit: Vec<usize> = act.iter().map(|a| image(a, i)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &j in &orbit {
            seen[j] = true;
        }
        out.push(orbit);
    }
    out
}

/// The quaternion group acting on a subdivided wedge of two circles.
///
/// Vertices `o` (the wedge point), `u`, `v`; the circle through `v` is
/// `x = (o, v)` followed by `x' = (v, o)`, the circle through `u` is
/// `y = (o, u)` and `y' = (u, o)`. The generator `a` swaps the circles,
/// and `b` reverses each circle while fixing every vertex.
pub fn quaternion_wedge() -> GraphWithAction {
    let q8 = Arc::new(build_group("quaternion:8").expect("bundled group"));
    let mut gamma = GraphWithAction::new(
        q8,
        &["o", "u", "v"],
        &[("x", "o", "v"), ("x'", "v", "o"), ("y", "o", "u"), ("y'", "u", "o")],
    )
    .expect("fixture cells are consistent");
    gamma
        .set_generator(
            "a",
            &[("u", "v"), ("v", "u")],
            &[("x", "y"), ("y", "x"), ("x'", "y'"), ("y'", "x'")],
        )
        .expect("fixture labels exist");
    gamma
        .set_generator(
            "b",
            &[],
            &[("x", "~x'"), ("x'", "~x"), ("y", "~y'"), ("y'", "~y")],
        )
        .expect("fixture labels exist");
    gamma
}
