use std::collections::VecDeque;

use thiserror::Error;

use super::{Presentation, Word};
use crate::group::{FiniteGroup, GroupError};

pub const DEFAULT_COSET_LIMIT: usize = 1_000_000;

const NONE: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    /// Enumeration did not close; the group may be infinite or the limit too small.
    #[error("coset enumeration exceeded {0} cosets")]
    LimitExceeded(usize),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

/// A complete coset table: the right action of each generator on cosets.
///
/// Column `2i` is generator `i`, column `2i + 1` its inverse. Coset `0` is
/// the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generators: Vec<String>,
    rows: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// Image of `coset` under generator `gen` (`inverse` selects its inverse).
    pub fn act(&self, coset: usize, gen: usize, inverse: bool) -> usize {
        self.rows[coset][2 * gen + inverse as usize]
    }

    pub fn act_word(&self, coset: usize, w: &Word) -> Result<usize, CosetError> {
        let cols = word_columns(&self.generators, w)?;
        Ok(cols.iter().fold(coset, |c, &col| self.rows[c][col]))
    }

    /// Converts a table with trivial subgroup into the regular representation.
    ///
    /// Coset `c` stands for the element reached from coset `0` along a
    /// shortest word; the product `c·d` is coset `c` acted on by `d`'s word.
    pub fn to_group(&self, name: &str) -> Result<FiniteGroup, GroupError> {
        let n = self.index();
        let ncols = self.generators.len() * 2;
        let mut path: Vec<Option<Vec<usize>>> = vec![None; n];
        path[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for col in 0..ncols {
                let d = self.rows[c][col];
                if path[d].is_none() {
                    let mut p = path[c].clone().unwrap();
                    p.push(col);
                    path[d] = Some(p);
                    queue.push_back(d);
                }
            }
        }
        let path: Vec<Vec<usize>> = path
            .into_iter()
            .map(|p| p.ok_or_else(|| GroupError::NotAGroup("coset table not connected".into())))
            .collect::<Result<_, _>>()?;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for p in &path {
                table.push(p.iter().fold(a, |c, &col| self.rows[c][col]) as u16);
            }
        }
        let labels = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), self.rows[0][2 * i]))
            .collect();
        let g = FiniteGroup::from_table(name, n, table, labels, None)?;
        Ok(g)
    }
}

fn word_columns(generators: &[String], w: &Word) -> Result<Vec<usize>, CosetError> {
    let mut cols = Vec::new();
    for l in w.letters() {
        let i = generators
            .iter()
            .position(|g| *g == l.symbol)
            .ok_or_else(|| CosetError::UnknownSymbol(l.symbol.clone()))?;
        let col = 2 * i + (l.exp < 0) as usize;
        cols.extend(std::iter::repeat_n(col, l.exp.unsigned_abs() as usize));
    }
    Ok(cols)
}

struct Enumerator {
    ncols: usize,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    limit: usize,
}

#[inline]
fn inv(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, col: usize) -> Result<(), CosetError> {
        if self.rows.len() >= self.limit {
            return Err(CosetError::LimitExceeded(self.limit));
        }
        let d = self.rows.len();
        self.rows.push(vec![NONE; self.ncols]);
        self.parent.push(d);
        self.rows[c][col] = d;
        self.rows[d][inv(col)] = c;
        Ok(())
    }

    fn merge(&mut self, k: usize, l: usize) {
        let k = self.rep(k);
        let l = self.rep(l);
        if k == l {
            return;
        }
        let (lo, hi) = if k < l { (k, l) } else { (l, k) };
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for col in 0..self.ncols {
                let f = self.rows[e][col];
                if f == NONE {
                    continue;
                }
                self.rows[f][inv(col)] = NONE;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.rows[e1][col] != NONE {
                    let t = self.rows[e1][col];
                    self.merge(f1, t);
                } else if self.rows[f1][inv(col)] != NONE {
                    let t = self.rows[f1][inv(col)];
                    self.merge(e1, t);
                } else {
                    self.rows[e1][col] = f1;
                    self.rows[f1][inv(col)] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), CosetError> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.rows[f][w[i]] != NONE {
                f = self.rows[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.rows[b][inv(w[j as usize])] != NONE {
                b = self.rows[b][inv(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.rows[f][w[i]] = b;
                self.rows[b][inv(w[i])] = f;
                return Ok(());
            } else {
                self.define(f, w[i])?;
            }
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup_gens`.
///
/// Relator-scanning enumeration with coincidence processing; `coset_limit`
/// bounds the total number of cosets ever defined.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup_gens: &[Word],
    coset_limit: usize,
) -> Result<CosetTable, CosetError> {
    let gens = p.generators();
    let ncols = 2 * gens.len();
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| word_columns(gens, &r.word()))
        .collect::<Result<_, _>>()?;
    let subgroup: Vec<Vec<usize>> = subgroup_gens
        .iter()
        .map(|w| word_columns(gens, w))
        .collect::<Result<_, _>>()?;
    let mut en = Enumerator {
        ncols,
        rows: vec![vec![NONE; ncols]],
        parent: vec![0],
        queue: Vec::new(),
        limit: coset_limit.max(1),
    };
    for w in &subgroup {
        let c = en.rep(0);
        en.scan_and_fill(c, w)?;
    }
    let mut a = 0;
    while a < en.rows.len() {
        if en.live(a) {
            for r in &relators {
                en.scan_and_fill(a, r)?;
                if !en.live(a) {
                    break;
                }
            }
            if en.live(a) {
                for col in 0..ncols {
                    if en.rows[a][col] == NONE {
                        en.define(a, col)?;
                    }
                }
            }
        }
        a += 1;
    }
    let live: Vec<usize> = (0..en.rows.len()).filter(|&c| en.live(c)).collect();
    let mut new_index = vec![NONE; en.rows.len()];
    for (k, &c) in live.iter().enumerate() {
        new_index[c] = k;
    }
    let mut rows = Vec::with_capacity(live.len());
    for &c in &live {
        let mut row = Vec::with_capacity(ncols);
        for col in 0..ncols {
            let d = en.rows[c][col];
            debug_assert!(d != NONE, "closed table has every entry defined");
            let d = en.rep(d);
            row.push(new_index[d]);
        }
        rows.push(row);
    }
    Ok(CosetTable {
        generators: gens.to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{van_buskirk, verify_homomorphism};
    use crate::group::{build_group, is_isomorphic};

    #[test]
    fn cyclic_presentations() {
        for n in 1..=50 {
            let p: Presentation = format!("gens: g; rel: g^{n}").parse().unwrap();
            let t = todd_coxeter(&p, &[], 1000).unwrap();
            assert_eq!(t.index(), n);
        }
        let p: Presentation = "gens: g; rel: g^5".parse().unwrap();
        let t = todd_coxeter(&p, &["g".parse().unwrap()], 100).unwrap();
        assert_eq!(t.index(), 1);
    }

    #[test]
    fn small_projective_braid_groups() {
        assert_eq!(todd_coxeter(&van_buskirk(1), &[], 100).unwrap().index(), 2);
        let t2 = todd_coxeter(&van_buskirk(2), &[], 10_000).unwrap();
        assert_eq!(t2.index(), 16);
        let g = t2.to_group("B2").unwrap();
        g.validate().unwrap();
        // the pure subgroup <r1, r2> is the quaternion group
        let pure = g.subgroup_generated(&[g.label("r1").unwrap(), g.label("r2").unwrap()]);
        let (pure, _) = pure.to_group("PB2", "g");
        assert!(is_isomorphic(&pure, &build_group("quaternion:8").unwrap()).unwrap());
    }

    #[test]
    fn three_strands_do_not_close() {
        assert_eq!(
            todd_coxeter(&van_buskirk(3), &[], 5_000).unwrap_err(),
            CosetError::LimitExceeded(5_000)
        );
    }

    #[test]
    fn relators_hold_in_the_coset_action() {
        for p in [
            van_buskirk(2),
            crate::group::build::BINARY_OCTAHEDRAL.parse().unwrap(),
        ] {
            let t = todd_coxeter(&p, &[], 100_000).unwrap();
            for c in 0..t.index() {
                for r in p.relators() {
                    assert_eq!(t.act_word(c, &r.word()).unwrap(), c);
                }
            }
            let g = t.to_group("G").unwrap();
            let images = p
                .generators()
                .iter()
                .map(|s| (s.clone(), g.label(s).unwrap()))
                .collect();
            assert!(verify_homomorphism(&p, &g, &images).unwrap().ok);
        }
    }

    #[test]
    fn index_two_subgroup() {
        let p: Presentation = crate::group::build::BINARY_OCTAHEDRAL.parse().unwrap();
        let sub: Vec<Word> = ["P", "Q", "X"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(todd_coxeter(&p, &sub, 10_000).unwrap().index(), 2);
    }

    #[test]
    fn unknown_symbol() {
        let p: Presentation = "gens: a; rel: a^2".parse().unwrap();
        assert!(matches!(
            todd_coxeter(&p, &["b".parse().unwrap()], 10),
            Err(CosetError::UnknownSymbol(_))
        ));
    }
}
