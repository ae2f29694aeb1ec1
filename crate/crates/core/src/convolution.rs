//! Exact convolution coefficients
//!
//! ```text
//! P_{i,j}^k = 1/|Γ_i(v0)| · Σ_{v ∈ Γ_i(v0)} |Γ_j(v) ∩ Γ_k(v0)| / |Γ_j(v)|
//! ```
//!
//! for a fixed base point, on finite graphs and on BFS balls of infinite
//! graphs. A ball of radius `R` certifies every row `(i, j)` with `i + j <= R`
//! (see the exactness note in [`crate::graph`]).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{ball, metrics, BoundedBfs, FiniteGraph, Graph, LazyGraph, Vertex, VertexKey};
use crate::rational::{self, Rational};

/// Default truncation level for infinite graphs.
pub const DEFAULT_LAZY_LEVEL: usize = 4;

/// Sparse measure `Σ c_k R_k` with strictly positive coefficients and
/// strictly increasing indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConvolutionRow {
    entries: Vec<(usize, Rational)>,
}

impl ConvolutionRow {
    /// Canonical row: merges repeated indices and drops zero coefficients.
    pub fn from_entries<I: IntoIterator<Item = (usize, Rational)>>(entries: I) -> Self {
        let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, c) in entries {
            *merged.entry(k).or_insert_with(Rational::zero) += c;
        }
        ConvolutionRow {
            entries: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn point(k: usize) -> Self {
        ConvolutionRow {
            entries: vec![(k, Rational::one())],
        }
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> Rational {
        self.entries
            .iter()
            .find(|(i, _)| *i == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn mass(&self) -> Rational {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().map(|(k, _)| *k).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ c · row` over the given terms.
    pub fn combination<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a Rational, &'a ConvolutionRow)>,
    {
        Self::from_entries(
            terms
                .into_iter()
                .flat_map(|(c, row)| row.entries.iter().map(move |(k, x)| (*k, c * x))),
        )
    }

    /// Audit of the invariants a row of `R_i ∘ R_j` must satisfy. Returns the
    /// name of the first violated one.
    pub fn audit(&self, i: usize, j: usize) -> Option<&'static str> {
        if self.entries.iter().any(|(_, c)| !rational::is_positive(c))
            || self.entries.windows(2).any(|w| w[0].0 >= w[1].0)
        {
            return Some("positivity");
        }
        if !self.mass().is_one() {
            return Some("unit-mass");
        }
        let (lo, hi) = (i.abs_diff(j), i + j);
        if self.entries.iter().any(|(k, _)| *k < lo || *k > hi) {
            return Some("support-bound");
        }
        if (self.get(0) > Rational::zero()) != (i == j) {
            return Some("support-criterion");
        }
        None
    }
}

impl fmt::Display for ConvolutionRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    format!("R{k}")
                } else {
                    format!("{c} R{k}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which rows a table certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableScope {
    /// Finite graph, rows for all `i, j <= max_level`; `max_level` may be the
    /// full eccentricity of the base point.
    Finite { eccentricity: usize },
    /// Infinite graph truncated to a ball; rows for all `i + j <= radius`.
    Ball { radius: usize },
}

/// All coefficients `P_{i,j}^k` for one base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionTable {
    pub base: Vertex,
    pub max_level: usize,
    pub level_sizes: Vec<usize>,
    pub scope: TableScope,
    rows: BTreeMap<(usize, usize), ConvolutionRow>,
}

impl ConvolutionTable {
    pub fn row(&self, i: usize, j: usize) -> Option<&ConvolutionRow> {
        self.rows.get(&(i, j))
    }

    pub fn rows(&self) -> &BTreeMap<(usize, usize), ConvolutionRow> {
        &self.rows
    }

    /// Rows with `i, j <= max_level`, the part a report shows.
    pub fn level_rows(&self) -> impl Iterator<Item = (&(usize, usize), &ConvolutionRow)> {
        let l = self.max_level;
        self.rows
            .iter()
            .filter(move |((i, j), _)| *i <= l && *j <= l)
    }

    /// Same base-independent content: identical rows over `i, j <= max_level`.
    pub fn same_structure(&self, other: &ConvolutionTable) -> bool {
        self.max_level == other.max_level && self.level_rows().eq(other.level_rows())
    }

    pub fn is_full(&self) -> bool {
        matches!(self.scope, TableScope::Finite { eccentricity } if eccentricity == self.max_level)
    }

    /// Largest index usable in an associativity triple.
    pub fn max_index(&self) -> usize {
        match self.scope {
            TableScope::Finite { .. } => self.max_level,
            TableScope::Ball { radius } => radius,
        }
    }

    /// Largest `h + i + j` whose associativity triple is fully covered by
    /// the stored rows.
    pub fn certified_sum(&self) -> usize {
        match self.scope {
            _ if self.is_full() => 3 * self.max_level,
            TableScope::Finite { .. } => self.max_level,
            TableScope::Ball { radius } => radius,
        }
    }
}

/// Outcome of the self-centeredness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDefinedness {
    pub well_defined: bool,
    /// A vertex whose eccentricity is below the diameter.
    pub witness: Option<usize>,
    pub witness_eccentricity: Option<usize>,
    pub radius: Option<usize>,
    pub diameter: Option<usize>,
}

impl WellDefinedness {
    pub fn into_result(self) -> Result<()> {
        match self.witness {
            None => Ok(()),
            Some(w) => Err(Error::NotSelfCentered {
                witness: w,
                eccentricity: self.witness_eccentricity.unwrap_or(0),
                diameter: self.diameter.unwrap_or(0),
            }),
        }
    }
}

/// Infinite graphs are always well-defined; finite ones iff self-centered.
pub fn check_well_defined(g: &Graph) -> WellDefinedness {
    match g {
        Graph::Lazy(_) => WellDefinedness {
            well_defined: true,
            witness: None,
            witness_eccentricity: None,
            radius: None,
            diameter: None,
        },
        Graph::Finite(g) => check_finite_well_defined(g),
    }
}

pub fn check_finite_well_defined(g: &FiniteGraph) -> WellDefinedness {
    let m = metrics(g);
    let witness = m.eccentricities.iter().position(|&e| e != m.diameter);
    WellDefinedness {
        well_defined: witness.is_none(),
        witness,
        witness_eccentricity: witness.map(|w| m.eccentricities[w]),
        radius: Some(m.radius),
        diameter: Some(m.diameter),
    }
}

// Numerators of Σ_v hist_v[k] / s_v, grouped by (j, s_v) so that the exact
// sum needs one rational division per denominator.
type Accumulator = BTreeMap<(usize, usize), BTreeMap<usize, u64>>;

fn merge(mut a: Accumulator, b: Accumulator) -> Accumulator {
    for (key, counts) in b {
        let slot = a.entry(key).or_default();
        for (k, c) in counts {
            *slot.entry(k).or_insert(0) += c;
        }
    }
    a
}

/// Rows `(i, j)` for `j = 0..=j_max` over an adjacency structure, where
/// `dist0` holds exact base distances and BFS to depth `j_max` from each
/// `v ∈ Γ_i` is exact.
fn level_rows(
    adj: &[Vec<usize>],
    dist0: &[usize],
    gamma_i: &[usize],
    j_max: usize,
) -> Vec<ConvolutionRow> {
    let acc = gamma_i
        .par_iter()
        .fold(
            || (BoundedBfs::new(adj.len()), Accumulator::new()),
            |(mut bfs, mut acc), &v| {
                let mut hist: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); j_max + 1];
                let mut sizes = vec![0usize; j_max + 1];
                let touched = bfs.run(adj, v, j_max).to_vec();
                for w in touched {
                    let j = bfs.distance(w);
                    *hist[j].entry(dist0[w]).or_insert(0) += 1;
                    sizes[j] += 1;
                }
                for (j, h) in hist.into_iter().enumerate() {
                    let slot = acc.entry((j, sizes[j])).or_default();
                    for (k, c) in h {
                        *slot.entry(k).or_insert(0) += c;
                    }
                }
                (bfs, acc)
            },
        )
        .map(|(_, acc)| acc)
        .reduce(Accumulator::new, merge);
    let n_i = gamma_i.len();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); j_max + 1];
    for ((j, s), counts) in acc {
        if s == 0 {
            continue;
        }
        for (k, c) in counts {
            rows[j].push((k, rational::from_counts(c as usize, s * n_i)));
        }
    }
    rows.into_iter().map(ConvolutionRow::from_entries).collect()
}

fn finite_table(g: &FiniteGraph, v0: usize, level: Option<usize>) -> Result<ConvolutionTable> {
    g.check_vertex(v0)?;
    check_finite_well_defined(g).into_result()?;
    let partition = g.distance_partition(v0)?;
    let ecc = partition.depth();
    let l = level.unwrap_or(ecc);
    if l > ecc {
        return Err(Error::LevelOutOfRange {
            level: l,
            eccentricity: ecc,
        });
    }
    let dist0 = crate::graph::bfs_distances(g, v0);
    let mut rows = BTreeMap::new();
    for i in 0..=l {
        for (j, row) in level_rows(g.adjacency(), &dist0, &partition.levels[i], l)
            .into_iter()
            .enumerate()
        {
            rows.insert((i, j), row);
        }
    }
    Ok(ConvolutionTable {
        base: Vertex::Id(v0),
        max_level: l,
        level_sizes: partition.sizes(),
        scope: TableScope::Finite { eccentricity: ecc },
        rows,
    })
}

/// Table of an infinite graph computed in a ball of radius `radius`; holds
/// every row with `i + j <= radius`. `radius` must be at least `2 * level`.
pub fn lazy_table_with_radius(
    g: &LazyGraph,
    v0: &VertexKey,
    level: usize,
    radius: usize,
) -> Result<ConvolutionTable> {
    if radius < 2 * level {
        return Err(Error::InsufficientDepth {
            required: 2 * level,
            available: radius,
        });
    }
    let b = ball(g, v0, radius)?;
    let mut levels = vec![Vec::new(); radius + 1];
    for (v, &d) in b.distances.iter().enumerate() {
        levels[d].push(v);
    }
    let mut rows = BTreeMap::new();
    for (i, gamma_i) in levels.iter().enumerate() {
        for (j, row) in level_rows(&b.adjacency, &b.distances, gamma_i, radius - i)
            .into_iter()
            .enumerate()
        {
            rows.insert((i, j), row);
        }
    }
    Ok(ConvolutionTable {
        base: Vertex::Key(v0.clone()),
        max_level: level,
        level_sizes: b.level_sizes(),
        scope: TableScope::Ball { radius },
        rows,
    })
}

/// Convolution table for base `v0`.
///
/// Finite graphs: rows for `i, j <= level` (default: the eccentricity of
/// `v0`); refused unless the graph is self-centered. Infinite graphs: `level`
/// is required and the rows are computed in a ball of radius `2 * level`.
pub fn convolution_table(g: &Graph, v0: &Vertex, level: Option<usize>) -> Result<ConvolutionTable> {
    match (g, v0) {
        (Graph::Finite(g), Vertex::Id(v)) => finite_table(g, *v, level),
        (Graph::Lazy(g), Vertex::Key(k)) => {
            let l = level.ok_or_else(|| {
                Error::Usage("a maximum level is required for infinite graphs".into())
            })?;
            lazy_table_with_radius(g, k, l, 2 * l)
        }
        _ => Err(Error::Usage(format!(
            "vertex {v0} does not belong to this graph"
        ))),
    }
}

/// The single row `R_i ∘ R_j`. Infinite graphs use a ball of radius `i + j`.
pub fn convolution_row(g: &Graph, v0: &Vertex, i: usize, j: usize) -> Result<ConvolutionRow> {
    match (g, v0) {
        (Graph::Finite(fg), Vertex::Id(v)) => {
            fg.check_vertex(*v)?;
            check_finite_well_defined(fg).into_result()?;
            let p = fg.distance_partition(*v)?;
            let ecc = p.depth();
            if i > ecc || j > ecc {
                return Err(Error::LevelOutOfRange {
                    level: i.max(j),
                    eccentricity: ecc,
                });
            }
            let dist0 = crate::graph::bfs_distances(fg, *v);
            Ok(level_rows(fg.adjacency(), &dist0, &p.levels[i], j).swap_remove(j))
        }
        (Graph::Lazy(lg), Vertex::Key(k)) => {
            let b = ball(lg, k, i + j)?;
            let gamma_i: Vec<usize> = (0..b.len()).filter(|&v| b.distances[v] == i).collect();
            Ok(level_rows(&b.adjacency, &b.distances, &gamma_i, j).swap_remove(j))
        }
        _ => Err(Error::Usage(format!(
            "vertex {v0} does not belong to this graph"
        ))),
    }
}

pub fn convolution_coefficient(
    g: &Graph,
    v0: &Vertex,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Rational> {
    Ok(convolution_row(g, v0, i, j)?.get(k))
}

/// Empirical distribution of the level reached by the two-step jump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McEstimate {
    pub samples: u64,
    pub seed: u64,
    pub counts: BTreeMap<usize, u64>,
}

impl McEstimate {
    pub fn frequency(&self, k: usize) -> f64 {
        self.counts.get(&k).copied().unwrap_or(0) as f64 / self.samples as f64
    }
}

/// Monte Carlo estimate of the row `R_i ∘ R_j`. Sample `s` draws from a
/// ChaCha8 stream selected by `s`, so the result depends only on
/// `(seed, samples)`, not on thread scheduling.
pub fn mc_estimate(
    g: &Graph,
    v0: &Vertex,
    i: usize,
    j: usize,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::ParameterOutOfRange(
            "samples must be at least 1".into(),
        ));
    }
    // For each v ∈ Γ_i(v0): the base levels of the members of Γ_j(v).
    let targets: Vec<Vec<usize>> = match (g, v0) {
        (Graph::Finite(fg), Vertex::Id(v)) => {
            fg.check_vertex(*v)?;
            check_finite_well_defined(fg).into_result()?;
            let p = fg.distance_partition(*v)?;
            let ecc = p.depth();
            if i > ecc || j > ecc {
                return Err(Error::LevelOutOfRange {
                    level: i.max(j),
                    eccentricity: ecc,
                });
            }
            let dist0 = crate::graph::bfs_distances(fg, *v);
            jump_targets(fg.adjacency(), &dist0, &p.levels[i], j)
        }
        (Graph::Lazy(lg), Vertex::Key(k)) => {
            let b = ball(lg, k, i + j)?;
            let gamma_i: Vec<usize> = (0..b.len()).filter(|&v| b.distances[v] == i).collect();
            jump_targets(&b.adjacency, &b.distances, &gamma_i, j)
        }
        _ => {
            return Err(Error::Usage(format!(
                "vertex {v0} does not belong to this graph"
            )))
        }
    };
    let counts = (0..samples)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<usize, u64>, s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let v = &targets[rng.random_range(0..targets.len())];
            let k = v[rng.random_range(0..v.len())];
            *acc.entry(k).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        });
    Ok(McEstimate {
        samples,
        seed,
        counts,
    })
}

fn jump_targets(
    adj: &[Vec<usize>],
    dist0: &[usize],
    gamma_i: &[usize],
    j: usize,
) -> Vec<Vec<usize>> {
    let mut bfs = BoundedBfs::new(adj.len());
    gamma_i
        .iter()
        .map(|&v| {
            let touched = bfs.run(adj, v, j).to_vec();
            touched
                .into_iter()
                .filter(|&w| bfs.distance(w) == j)
                .map(|w| dist0[w])
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::FamilySpec;
    use crate::rational::ratio;

    fn graph(spec: &str) -> Graph {
        spec.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    fn row(pairs: &[(usize, i64, i64)]) -> ConvolutionRow {
        ConvolutionRow::from_entries(pairs.iter().map(|&(k, p, q)| (k, ratio(p, q))))
    }

    #[test]
    fn complete_graph_coefficients() {
        let g = graph("complete:4");
        let v = Vertex::Id(0);
        assert_eq!(
            convolution_coefficient(&g, &v, 1, 1, 0).unwrap(),
            ratio(1, 3)
        );
        assert_eq!(
            convolution_coefficient(&g, &v, 1, 1, 1).unwrap(),
            ratio(2, 3)
        );
        let t = convolution_table(&g, &v, None).unwrap();
        assert_eq!(t.row(0, 1), Some(&ConvolutionRow::point(1)));
        assert_eq!(t.row(1, 0), Some(&ConvolutionRow::point(1)));
    }

    #[test]
    fn single_vertex_table() {
        let g = Graph::Finite(FiniteGraph::from_edges(1, &[]).unwrap());
        let t = convolution_table(&g, &Vertex::Id(0), None).unwrap();
        assert_eq!(t.rows().len(), 1);
        assert_eq!(t.row(0, 0), Some(&ConvolutionRow::point(0)));
    }

    #[test]
    fn well_definedness() {
        let p3 = graph("path:3");
        let w = check_well_defined(&p3);
        assert!(!w.well_defined);
        assert_eq!(w.witness, Some(1));
        assert!(matches!(
            convolution_table(&p3, &Vertex::Id(0), None),
            Err(Error::NotSelfCentered { witness: 1, .. })
        ));
        assert!(check_well_defined(&graph("prism:5")).well_defined);
        assert!(check_well_defined(&graph("tree:3")).well_defined);
    }

    #[test]
    fn level_out_of_range() {
        let g = graph("cycle:6");
        assert!(matches!(
            convolution_table(&g, &Vertex::Id(0), Some(4)),
            Err(Error::LevelOutOfRange {
                level: 4,
                eccentricity: 3
            })
        ));
        assert!(convolution_coefficient(&g, &Vertex::Id(0), 4, 1, 3).is_err());
    }

    #[test]
    fn lazy_rows() {
        let lt = graph("linked-triangle");
        let base = lt.default_base();
        assert_eq!(
            convolution_row(&lt, &base, 1, 1).unwrap(),
            row(&[(0, 1, 4), (1, 1, 4), (2, 1, 2)])
        );
        let ladder = graph("ladder");
        let t = convolution_table(&ladder, &ladder.default_base(), Some(2)).unwrap();
        assert_eq!(t.row(1, 1), Some(&row(&[(0, 1, 3), (2, 2, 3)])));
        assert_eq!(t.row(2, 2), Some(&row(&[(0, 1, 4), (2, 3, 8), (4, 3, 8)])));
        let t2 = graph("tree:2");
        let t = convolution_table(&t2, &t2.default_base(), Some(3)).unwrap();
        assert_eq!(t.row(1, 2), Some(&row(&[(1, 1, 2), (3, 1, 2)])));
        assert!(matches!(
            convolution_table(&t2, &t2.default_base(), None),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn rows_pass_audit() {
        for spec in ["prism:5", "petersen", "bipartite:2,3", "lineprism3"] {
            let g = graph(spec);
            let t = convolution_table(&g, &Vertex::Id(0), None).unwrap();
            for ((i, j), r) in t.rows() {
                assert_eq!(r.audit(*i, *j), None, "{spec} ({i},{j})");
            }
        }
    }

    #[test]
    fn mc_is_deterministic() {
        let g = graph("complete:4");
        let a = mc_estimate(&g, &Vertex::Id(0), 1, 1, 2000, 7).unwrap();
        let b = mc_estimate(&g, &Vertex::Id(0), 1, 1, 2000, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.values().sum::<u64>(), 2000);
        let point = mc_estimate(&g, &Vertex::Id(0), 0, 1, 50, 1).unwrap();
        assert_eq!(point.counts, BTreeMap::from([(1, 50)]));
        assert!(mc_estimate(&g, &Vertex::Id(0), 1, 1, 0, 7).is_err());
    }

    #[test]
    fn row_display() {
        assert_eq!(row(&[(0, 1, 3), (2, 2, 3)]).to_string(), "1/3 R0 + 2/3 R2");
        assert_eq!(ConvolutionRow::point(1).to_string(), "R1");
    }
}
