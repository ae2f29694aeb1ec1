//! Canonical labelling by individualization-refinement and exhaustive
//! enumeration of small connected regular graphs.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

/// Largest order accepted by [`search_graphs`].
pub const SEARCH_ORDER_BOUND: usize = 10;

/// Upper-triangle adjacency bitstring under a canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub order: usize,
    pub bits: Vec<bool>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Result<FiniteGraph> {
        let n = self.order;
        let mut edges = Vec::new();
        let mut idx = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.bits[idx] {
                    edges.push((a, b));
                }
                idx += 1;
            }
        }
        FiniteGraph::from_edges(n, &edges)
    }
}

// Colours are ranks of (old colour, sorted neighbour colours), so the
// refinement commutes with relabelling.
fn refine(g: &FiniteGraph, colors: &mut [usize]) {
    let n = g.order();
    let mut classes = colors
        .iter()
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nc.sort_unstable();
                (colors[v], nc)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next = distinct.len();
        for v in 0..n {
            colors[v] = distinct.binary_search(&&sigs[v]).expect("present");
        }
        if next == classes {
            return;
        }
        classes = next;
    }
}

fn leaf_bits(g: &FiniteGraph, colors: &[usize]) -> Vec<bool> {
    let n = g.order();
    let mut at = vec![0; n];
    for (v, &c) in colors.iter().enumerate() {
        at[c] = v;
    }
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for p in 0..n {
        for q in p + 1..n {
            bits.push(g.has_edge(at[p], at[q]));
        }
    }
    bits
}

fn search(g: &FiniteGraph, colors: Vec<usize>, best: &mut Option<Vec<bool>>) {
    let n = g.order();
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c] += 1;
    }
    let Some(cell) = (0..n).find(|&c| counts[c] > 1) else {
        let bits = leaf_bits(g, &colors);
        if best.as_ref().is_none_or(|b| bits < *b) {
            *best = Some(bits);
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] == cell) {
        // Individualize v: it sorts before the rest of its cell.
        let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
        next[v] -= 1;
        refine(g, &mut next);
        search(g, next, best);
    }
}

/// Canonical form: the lexicographically smallest adjacency bitstring over
/// all leaves of the refinement tree. Without automorphism pruning the tree
/// has up to `|Aut(g)|` leaves, which is fine for the small graphs used here.
pub fn canonical_form(g: &FiniteGraph) -> CanonicalForm {
    let mut colors = vec![0; g.order()];
    refine(g, &mut colors);
    let mut best = None;
    search(g, colors, &mut best);
    CanonicalForm {
        order: g.order(),
        bits: best.expect("at least one leaf"),
    }
}

pub fn isomorphic(a: &FiniteGraph, b: &FiniteGraph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

struct Enumerator {
    n: usize,
    k: usize,
    rows: Vec<u16>,
    deg: Vec<usize>,
    out: Vec<Vec<u16>>,
}

impl Enumerator {
    fn restricted(&self, v: usize) -> u16 {
        self.rows[v] >> (self.k + 1)
    }

    // Pairs are decided row by row; row 0 is fixed to N(0) = {1..k} and the
    // rows of 1..k, restricted to columns > k, are non-decreasing.
    fn go(&mut self, a: usize, b: usize) {
        let (n, k) = (self.n, self.k);
        if b == n {
            if self.deg[a] != k {
                return;
            }
            if (2..=k).contains(&a) && self.restricted(a - 1) > self.restricted(a) {
                return;
            }
            if a + 2 >= n {
                if (a + 1..n).all(|v| self.deg[v] == k) {
                    self.out.push(self.rows.clone());
                }
                return;
            }
            return self.go(a + 1, a + 2);
        }
        if self.deg[a] + (n - b) < k {
            return;
        }
        if self.deg[a] < k && self.deg[b] < k {
            self.rows[a] |= 1 << b;
            self.rows[b] |= 1 << a;
            self.deg[a] += 1;
            self.deg[b] += 1;
            self.go(a, b + 1);
            self.rows[a] &= !(1 << b);
            self.rows[b] &= !(1 << a);
            self.deg[a] -= 1;
            self.deg[b] -= 1;
        }
        self.go(a, b + 1);
    }
}

/// All connected `degree`-regular simple graphs on `order` vertices up to
/// isomorphism that satisfy `predicate`, sorted by canonical form.
pub fn search_graphs<P>(order: usize, degree: usize, predicate: P) -> Result<Vec<FiniteGraph>>
where
    P: Fn(&FiniteGraph) -> bool + Sync,
{
    if order > SEARCH_ORDER_BOUND {
        return Err(Error::SearchBound {
            order,
            bound: SEARCH_ORDER_BOUND,
        });
    }
    if order == 0 || degree >= order || (order * degree) % 2 == 1 {
        return Ok(Vec::new());
    }
    if order == 1 {
        let g = FiniteGraph::from_edges(1, &[])?;
        return Ok(if predicate(&g) { vec![g] } else { Vec::new() });
    }
    if degree == 0 {
        return Ok(Vec::new());
    }
    let mut e = Enumerator {
        n: order,
        k: degree,
        rows: vec![0; order],
        deg: vec![0; order],
        out: Vec::new(),
    };
    for w in 1..=degree {
        e.rows[0] |= 1 << w;
        e.rows[w] |= 1;
        e.deg[w] = 1;
    }
    e.deg[0] = degree;
    e.go(1, 2);

    let mut seen: BTreeMap<CanonicalForm, FiniteGraph> = BTreeMap::new();
    for rows in e.out {
        let adjacency: Vec<Vec<usize>> = rows
            .iter()
            .map(|&r| (0..order).filter(|&b| r >> b & 1 == 1).collect())
            .collect();
        let Ok(g) = FiniteGraph::from_adjacency(adjacency) else {
            continue;
        };
        let form = canonical_form(&g);
        seen.entry(form.clone())
            .or_insert_with(|| form.to_graph().expect("canonical graph"));
    }
    let graphs: Vec<FiniteGraph> = seen.into_values().collect();
    Ok(graphs.into_par_iter().filter(|g| predicate(g)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, prism, FamilySpec};

    #[test]
    fn canonical_form_is_label_invariant() {
        let c = FamilySpec::Cycle(6).build_finite().unwrap();
        let relabelled =
            FiniteGraph::from_edges(6, &[(0, 3), (3, 1), (1, 5), (5, 2), (2, 4), (4, 0)]).unwrap();
        assert!(isomorphic(&c, &relabelled));
        assert!(!isomorphic(
            &prism(3).unwrap(),
            &FamilySpec::Bipartite(3, 3).build_finite().unwrap()
        ));
    }

    #[test]
    fn prism4_is_the_cube() {
        let cube = FamilySpec::Platonic(8).build_finite().unwrap();
        assert!(isomorphic(&prism(4).unwrap(), &cube));
    }

    #[test]
    fn small_counts() {
        let k4 = search_graphs(4, 3, |_| true).unwrap();
        assert_eq!(k4.len(), 1);
        assert!(isomorphic(&k4[0], &complete(4).unwrap()));
        let c5 = search_graphs(5, 2, |_| true).unwrap();
        assert_eq!(c5.len(), 1);
        assert_eq!(c5[0].edge_count(), 5);
        assert_eq!(search_graphs(6, 3, |_| true).unwrap().len(), 2);
        assert_eq!(search_graphs(8, 3, |_| true).unwrap().len(), 5);
        assert_eq!(search_graphs(6, 2, |_| true).unwrap().len(), 1);
        assert!(search_graphs(5, 3, |_| true).unwrap().is_empty());
        let k2 = search_graphs(2, 1, |_| true).unwrap();
        assert_eq!(k2.len(), 1);
        assert_eq!(k2[0].edges(), vec![(0, 1)]);
        assert_eq!(search_graphs(3, 2, |_| true).unwrap().len(), 1);
    }

    #[test]
    fn order_bound() {
        assert!(matches!(
            search_graphs(11, 4, |_| true),
            Err(Error::SearchBound {
                order: 11,
                bound: 10
            })
        ));
    }
}
