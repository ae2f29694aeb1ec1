//! Cayley graphs of finitely generated abelian groups `Z^a ⊕ Z/n_1 ⊕ … ⊕ Z/n_r`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, LazyGraph, VertexKey};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if torsion.iter().any(|&n| n < 2) {
            return Err(Error::ParameterOutOfRange(
                "cyclic factors must have order at least 2".into(),
            ));
        }
        if free_rank == 0 && torsion.is_empty() {
            return Err(Error::ParameterOutOfRange("trivial group".into()));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Reduces torsion coordinates into `0..n_i`.
    pub fn normalize(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .enumerate()
            .map(|(i, &c)| {
                if i < self.free_rank {
                    c
                } else {
                    c.rem_euclid(self.torsion[i - self.free_rank] as i64)
                }
            })
            .collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.normalize(&s)
    }

    pub fn negate(&self, x: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = x.iter().map(|a| -a).collect();
        self.normalize(&s)
    }

    pub fn is_identity(&self, x: &[i64]) -> bool {
        self.normalize(x).iter().all(|&c| c == 0)
    }

    fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.rank() && self.normalize(x) == x
    }

    /// Mixed-radix id of an element of a finite group (first factor varies fastest).
    fn index_of(&self, x: &[i64]) -> usize {
        let mut id = 0usize;
        for (c, &n) in x.iter().zip(&self.torsion).rev() {
            id = id * n as usize + *c as usize;
        }
        id
    }

    fn element(&self, mut id: usize) -> Vec<i64> {
        self.torsion
            .iter()
            .map(|&n| {
                let c = id % n as usize;
                id /= n as usize;
                c as i64
            })
            .collect()
    }
}

/// Group plus generating set Ω.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleySpec {
    pub group: AbelianGroup,
    pub generators: Vec<Vec<i64>>,
}

impl CayleySpec {
    /// Validates Ω: right rank, no identity, closed under inversion.
    pub fn new(group: AbelianGroup, generators: Vec<Vec<i64>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::ParameterOutOfRange("empty generating set".into()));
        }
        let mut normalized = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.len() != group.rank() {
                return Err(Error::ParameterOutOfRange(format!(
                    "generator {g:?} has wrong rank (group rank {})",
                    group.rank()
                )));
            }
            if group.is_identity(g) {
                return Err(Error::ParameterOutOfRange(
                    "identity in generating set".into(),
                ));
            }
            normalized.push(group.normalize(g));
        }
        normalized.sort();
        normalized.dedup();
        for g in &normalized {
            let inv = group.negate(g);
            if normalized.binary_search(&inv).is_err() {
                return Err(Error::ParameterOutOfRange(format!(
                    "generating set is not closed under inversion: {g:?} lacks {inv:?}"
                )));
            }
        }
        Ok(CayleySpec {
            group,
            generators: normalized,
        })
    }

    /// Finite Cayley graph; fails if Ω does not generate the group.
    pub fn build_finite(&self) -> Result<FiniteGraph> {
        let order = self
            .group
            .order()
            .ok_or_else(|| Error::ParameterOutOfRange("group is infinite".into()))?
            as usize;
        let mut edges = Vec::new();
        for id in 0..order {
            let x = self.group.element(id);
            for g in &self.generators {
                let y = self.group.index_of(&self.group.add(&x, g));
                if id < y {
                    edges.push((id, y));
                }
            }
        }
        FiniteGraph::from_edges(order, &edges).map_err(|e| match e {
            Error::Disconnected { .. } => {
                Error::ParameterOutOfRange("generating set does not generate the group".into())
            }
            other => other,
        })
    }

    /// Infinite Cayley graph based at the identity. Generation of the group
    /// is assumed, not checked.
    pub fn build_lazy(&self, name: &str) -> Result<LazyGraph> {
        if self.group.is_finite() {
            return Err(Error::ParameterOutOfRange("group is finite".into()));
        }
        let spec = self.clone();
        let group = self.group.clone();
        Ok(LazyGraph::new(
            name,
            VertexKey::Coords(vec![0; self.group.rank()]),
            Arc::new(move |v: &VertexKey| match v {
                VertexKey::Coords(x) if spec.group.contains(x) => spec
                    .generators
                    .iter()
                    .map(|g| VertexKey::Coords(spec.group.add(x, g)))
                    .collect(),
                _ => Vec::new(),
            }),
            Arc::new(move |v: &VertexKey| matches!(v, VertexKey::Coords(x) if group.contains(x))),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_generating_sets() {
        let z3 = AbelianGroup::new(0, vec![3]).unwrap();
        assert!(CayleySpec::new(z3.clone(), vec![vec![0]]).is_err());
        assert!(CayleySpec::new(z3.clone(), vec![vec![1]]).is_err());
        assert!(CayleySpec::new(z3, vec![vec![1], vec![2]]).is_ok());
        let z6 = AbelianGroup::new(0, vec![6]).unwrap();
        let s = CayleySpec::new(z6, vec![vec![2], vec![4]]).unwrap();
        assert!(s.build_finite().is_err());
    }

    #[test]
    fn mixed_radix_round_trip() {
        let g = AbelianGroup::new(0, vec![5, 2]).unwrap();
        for id in 0..10 {
            assert_eq!(g.index_of(&g.element(id)), id);
        }
    }
}
