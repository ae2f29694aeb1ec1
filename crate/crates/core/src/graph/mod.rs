//! Graph representations and BFS-based metrics.
//!
//! Finite graphs use dense integer ids. Infinite graphs are presented as a
//! neighbor oracle over structured keys and are only ever explored through
//! finite BFS balls.
//!
//! Ball exactness: let `v` lie at distance `i` from the center and let `w`
//! satisfy `d(v, w) <= j`. Every vertex `x` on a geodesic from `v` to `w`
//! satisfies `d(center, x) <= d(center, v) + d(v, x) <= i + j`, so a ball of
//! radius `i + j` contains every such geodesic. A BFS from `v` restricted to
//! the ball therefore reports exact distances for every target it reaches
//! within depth `j`; this is what makes truncated computations exact.

pub mod io;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const UNREACHED: usize = usize::MAX;

/// Simple connected undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGraph {
    adjacency: Vec<Vec<usize>>,
}

impl FiniteGraph {
    /// Builds a graph from an edge list, rejecting loops, duplicate or
    /// out-of-range edges, and disconnected input.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut adjacency = vec![Vec::new(); order];
        for &(a, b) in edges {
            if a >= order || b >= order {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {order} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|p| p[0] == p[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({v}, {})",
                    w[0]
                )));
            }
        }
        Self::checked(adjacency)
    }

    /// Builds a graph from adjacency lists, validating every invariant.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::InvalidGraph(format!("vertex {v} has a multi-edge")));
            }
            if let Some(&w) = list.iter().find(|&&w| w >= n) {
                return Err(Error::InvalidGraph(format!(
                    "neighbor {w} of {v} out of range"
                )));
            }
            if list.binary_search(&v).is_ok() {
                return Err(Error::InvalidGraph(format!("loop at vertex {v}")));
            }
        }
        for (v, list) in adjacency.iter().enumerate() {
            for &w in list {
                if adjacency[w].binary_search(&v).is_err() {
                    return Err(Error::InvalidGraph(format!(
                        "asymmetric adjacency: {w} in N({v}) but {v} not in N({w})"
                    )));
                }
            }
        }
        Self::checked(adjacency)
    }

    fn checked(adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let g = FiniteGraph { adjacency };
        let reached = bfs_distances(&g, 0)
            .iter()
            .filter(|&&d| d != UNREACHED)
            .count();
        if reached != g.order() {
            return Err(Error::Disconnected {
                reached,
                order: g.order(),
            });
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// All-pairs distance matrix (one BFS per vertex).
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|v| bfs_distances(self, v)).collect()
    }

    pub fn distance_partition(&self, v0: usize) -> Result<DistancePartition<usize>> {
        self.check_vertex(v0)?;
        Ok(DistancePartition::from_distances(
            v0,
            &bfs_distances(self, v0),
            UNREACHED,
        ))
    }
}

/// BFS distances from `v` over plain adjacency lists; unreachable vertices
/// are reported as [`UNREACHED`].
pub fn bfs_distances(g: &FiniteGraph, v: usize) -> Vec<usize> {
    bfs_adjacency(g.adjacency(), v, UNREACHED)
}

pub(crate) fn bfs_adjacency(adj: &[Vec<usize>], v: usize, limit: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHED; adj.len()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        if du >= limit {
            continue;
        }
        for &w in &adj[u] {
            if dist[w] == UNREACHED {
                dist[w] = du + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Reusable depth-bounded BFS over adjacency lists. Avoids reallocating a
/// full distance array for every source when many sources share one graph.
pub(crate) struct BoundedBfs {
    dist: Vec<usize>,
    touched: Vec<usize>,
}

impl BoundedBfs {
    pub fn new(order: usize) -> Self {
        BoundedBfs {
            dist: vec![UNREACHED; order],
            touched: Vec::new(),
        }
    }

    /// Runs BFS from `source` to depth `limit`; returns `(vertex, distance)`
    /// pairs in BFS order.
    pub fn run(&mut self, adj: &[Vec<usize>], source: usize, limit: usize) -> &[usize] {
        for &t in &self.touched {
            self.dist[t] = UNREACHED;
        }
        self.touched.clear();
        self.dist[source] = 0;
        self.touched.push(source);
        let mut head = 0;
        while head < self.touched.len() {
            let u = self.touched[head];
            head += 1;
            let du = self.dist[u];
            if du >= limit {
                continue;
            }
            for &w in &adj[u] {
                if self.dist[w] == UNREACHED {
                    self.dist[w] = du + 1;
                    self.touched.push(w);
                }
            }
        }
        &self.touched
    }

    pub fn distance(&self, v: usize) -> usize {
        self.dist[v]
    }
}

/// Eccentricities, radius, diameter and the self-centered flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metrics {
    pub eccentricities: Vec<usize>,
    pub radius: usize,
    pub diameter: usize,
    pub self_centered: bool,
}

pub fn metrics(g: &FiniteGraph) -> Metrics {
    let eccentricities: Vec<usize> = (0..g.order())
        .map(|v| bfs_distances(g, v).into_iter().max().unwrap_or(0))
        .collect();
    let radius = *eccentricities.iter().min().unwrap_or(&0);
    let diameter = *eccentricities.iter().max().unwrap_or(&0);
    Metrics {
        self_centered: radius == diameter,
        eccentricities,
        radius,
        diameter,
    }
}

pub fn eccentricity(g: &FiniteGraph, v: usize) -> usize {
    bfs_distances(g, v).into_iter().max().unwrap_or(0)
}

/// Number of shortest paths from `v` to `w`, by layered dynamic programming.
pub fn count_geodesics(g: &FiniteGraph, v: usize, w: usize) -> u128 {
    geodesic_count_adjacency(g.adjacency(), v, w, UNREACHED)
}

fn geodesic_count_adjacency(adj: &[Vec<usize>], v: usize, w: usize, limit: usize) -> u128 {
    let dist = bfs_adjacency(adj, v, limit);
    if dist[w] == UNREACHED {
        return 0;
    }
    let mut order: Vec<usize> = (0..adj.len())
        .filter(|&u| dist[u] != UNREACHED && dist[u] <= dist[w])
        .collect();
    order.sort_by_key(|&u| dist[u]);
    let mut paths = vec![0u128; adj.len()];
    paths[v] = 1;
    for u in order {
        if u == v {
            continue;
        }
        paths[u] = adj[u]
            .iter()
            .filter(|&&x| dist[x] != UNREACHED && dist[x] + 1 == dist[u])
            .map(|&x| paths[x])
            .sum();
    }
    paths[w]
}

/// Levels `Γ_0(v0), Γ_1(v0), …` of the distance partition around a base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistancePartition<V> {
    pub base: V,
    pub levels: Vec<Vec<V>>,
}

impl<V> DistancePartition<V> {
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Last level index `s` (eccentricity or truncation level).
    pub fn depth(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }
}

impl DistancePartition<usize> {
    fn from_distances(base: usize, dist: &[usize], cutoff: usize) -> Self {
        let depth = dist
            .iter()
            .copied()
            .filter(|&d| d != UNREACHED && d <= cutoff)
            .max()
            .unwrap_or(0);
        let mut levels = vec![Vec::new(); depth + 1];
        for (v, &d) in dist.iter().enumerate() {
            if d != UNREACHED && d <= depth {
                levels[d].push(v);
            }
        }
        DistancePartition { base, levels }
    }
}

/// Vertex key of an infinite graph: integer coordinates in an abelian group,
/// or a word over a finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKey {
    Coords(Vec<i64>),
    Word(String),
}

impl VertexKey {
    pub fn pair(a: i64, b: i64) -> Self {
        VertexKey::Coords(vec![a, b])
    }

    pub fn word(s: &str) -> Self {
        VertexKey::Word(s.to_string())
    }

    pub fn as_word(&self) -> Option<&str> {
        match self {
            VertexKey::Word(w) => Some(w),
            VertexKey::Coords(_) => None,
        }
    }
}

impl fmt::Display for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKey::Coords(c) => {
                let parts: Vec<String> = c.iter().map(i64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
            VertexKey::Word(w) if w.is_empty() => write!(f, "root"),
            VertexKey::Word(w) => write!(f, "{w}"),
        }
    }
}

pub type NeighborOracle = dyn Fn(&VertexKey) -> Vec<VertexKey> + Send + Sync;
pub type KeyValidator = dyn Fn(&VertexKey) -> bool + Send + Sync;

/// Infinite, locally finite graph given by a pure neighbor oracle.
#[derive(Clone)]
pub struct LazyGraph {
    name: String,
    base: VertexKey,
    oracle: Arc<NeighborOracle>,
    validator: Arc<KeyValidator>,
}

impl fmt::Debug for LazyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyGraph")
            .field("name", &self.name)
            .field("base", &self.base)
            .finish_non_exhaustive()
    }
}

impl LazyGraph {
    pub fn new(
        name: impl Into<String>,
        base: VertexKey,
        oracle: Arc<NeighborOracle>,
        validator: Arc<KeyValidator>,
    ) -> Self {
        LazyGraph {
            name: name.into(),
            base,
            oracle,
            validator,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &VertexKey {
        &self.base
    }

    pub fn contains(&self, v: &VertexKey) -> bool {
        (self.validator)(v)
    }

    /// Sorted, deduplicated neighbor set of `v`.
    pub fn neighbors(&self, v: &VertexKey) -> Vec<VertexKey> {
        let mut out = (self.oracle)(v);
        out.sort();
        out.dedup();
        out
    }

    pub fn check_vertex(&self, v: &VertexKey) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn distance_partition(
        &self,
        v0: &VertexKey,
        max_level: usize,
    ) -> Result<DistancePartition<VertexKey>> {
        let b = ball(self, v0, max_level)?;
        let mut levels = vec![Vec::new(); max_level + 1];
        for (key, &d) in b.keys.iter().zip(&b.distances) {
            levels[d].push(key.clone());
        }
        Ok(DistancePartition {
            base: v0.clone(),
            levels,
        })
    }
}

/// Finite BFS neighborhood of radius `radius` in an infinite graph, with the
/// induced adjacency. Index 0 is the center; indices follow BFS order.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: VertexKey,
    pub radius: usize,
    pub keys: Vec<VertexKey>,
    pub distances: Vec<usize>,
    pub adjacency: Vec<Vec<usize>>,
    index: HashMap<VertexKey, usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn index_of(&self, v: &VertexKey) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius + 1];
        for &d in &self.distances {
            sizes[d] += 1;
        }
        sizes
    }

    /// Geodesic count between two ball vertices, computed inside the ball.
    /// Exact whenever `radius >= d(v, w) + d(center, v)`.
    pub fn count_geodesics(&self, v: usize, w: usize) -> u128 {
        geodesic_count_adjacency(&self.adjacency, v, w, UNREACHED)
    }
}

/// BFS ball around `center`; checks oracle symmetry and loop-freeness on
/// every vertex it touches.
pub fn ball(g: &LazyGraph, center: &VertexKey, radius: usize) -> Result<Ball> {
    g.check_vertex(center)?;
    let mut keys = vec![center.clone()];
    let mut distances = vec![0usize];
    let mut index = HashMap::from([(center.clone(), 0usize)]);
    let mut raw_neighbors: Vec<Vec<VertexKey>> = Vec::new();
    let mut head = 0;
    while head < keys.len() {
        let u = keys[head].clone();
        let du = distances[head];
        let nbrs = g.neighbors(&u);
        if nbrs.is_empty() {
            return Err(Error::MalformedOracle {
                from: u.to_string(),
                to: "(no neighbors)".into(),
            });
        }
        if nbrs.contains(&u) {
            return Err(Error::MalformedOracle {
                from: u.to_string(),
                to: u.to_string(),
            });
        }
        if du < radius {
            for w in &nbrs {
                if !index.contains_key(w) {
                    index.insert(w.clone(), keys.len());
                    keys.push(w.clone());
                    distances.push(du + 1);
                }
            }
        }
        raw_neighbors.push(nbrs);
        head += 1;
    }
    let adjacency: Vec<Vec<usize>> = raw_neighbors
        .iter()
        .map(|nbrs| {
            let mut l: Vec<usize> = nbrs.iter().filter_map(|w| index.get(w).copied()).collect();
            l.sort_unstable();
            l
        })
        .collect();
    for (u, list) in adjacency.iter().enumerate() {
        for &w in list {
            if adjacency[w].binary_search(&u).is_err() {
                return Err(Error::MalformedOracle {
                    from: keys[u].to_string(),
                    to: keys[w].to_string(),
                });
            }
        }
    }
    Ok(Ball {
        center: center.clone(),
        radius,
        keys,
        distances,
        adjacency,
        index,
    })
}

/// Geodesic count between two vertices of an infinite graph: BFS from `v`
/// until `w`'s layer is complete, then layered counting. `None` if `w` is not
/// within `max_radius` of `v`.
pub fn count_geodesics_lazy(
    g: &LazyGraph,
    v: &VertexKey,
    w: &VertexKey,
    max_radius: usize,
) -> Result<Option<u128>> {
    g.check_vertex(w)?;
    for r in 0..=max_radius {
        let b = ball(g, v, r)?;
        if let Some(wi) = b.index_of(w) {
            return Ok(Some(b.count_geodesics(0, wi)));
        }
    }
    Ok(None)
}

/// A finite graph or an infinite one behind an oracle.
#[derive(Clone, Debug)]
pub enum Graph {
    Finite(FiniteGraph),
    Lazy(LazyGraph),
}

/// A base point: a dense id for finite graphs, a key for lazy ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Id(usize),
    Key(VertexKey),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Id(v) => write!(f, "{v}"),
            Vertex::Key(k) => write!(f, "{k}"),
        }
    }
}

impl Graph {
    pub fn is_finite(&self) -> bool {
        matches!(self, Graph::Finite(_))
    }

    pub fn default_base(&self) -> Vertex {
        match self {
            Graph::Finite(_) => Vertex::Id(0),
            Graph::Lazy(g) => Vertex::Key(g.base().clone()),
        }
    }

    /// Parses a vertex written as on the command line: an integer id for
    /// finite graphs; `x,y,...` coordinates or a word for lazy graphs.
    pub fn parse_vertex(&self, s: &str) -> Result<Vertex> {
        let s = s.trim();
        match self {
            Graph::Finite(g) => {
                let v: usize = s
                    .parse()
                    .map_err(|_| Error::Usage(format!("vertex id expected, got {s:?}")))?;
                g.check_vertex(v)?;
                Ok(Vertex::Id(v))
            }
            Graph::Lazy(g) => {
                let key = parse_key(s, g.base());
                g.check_vertex(&key)?;
                Ok(Vertex::Key(key))
            }
        }
    }

    pub fn distance_partition(
        &self,
        v0: &Vertex,
        max_level: Option<usize>,
    ) -> Result<DistancePartition<Vertex>> {
        match (self, v0) {
            (Graph::Finite(g), Vertex::Id(v)) => {
                let p = g.distance_partition(*v)?;
                let levels = match max_level {
                    Some(l) => p.levels.into_iter().take(l + 1).collect(),
                    None => p.levels,
                };
                Ok(DistancePartition {
                    base: Vertex::Id(p.base),
                    levels: levels
                        .into_iter()
                        .map(|l| l.into_iter().map(Vertex::Id).collect())
                        .collect(),
                })
            }
            (Graph::Lazy(g), Vertex::Key(k)) => {
                let l = max_level.ok_or_else(|| {
                    Error::Usage("a maximum level is required for infinite graphs".into())
                })?;
                let p = g.distance_partition(k, l)?;
                Ok(DistancePartition {
                    base: Vertex::Key(p.base),
                    levels: p
                        .levels
                        .into_iter()
                        .map(|l| l.into_iter().map(Vertex::Key).collect())
                        .collect(),
                })
            }
            _ => Err(Error::Usage(format!(
                "vertex {v0} does not belong to this graph"
            ))),
        }
    }
}

fn parse_key(s: &str, like: &VertexKey) -> VertexKey {
    match like {
        VertexKey::Coords(_) => {
            let parsed: std::result::Result<Vec<i64>, _> =
                s.split(',').map(|t| t.trim().parse::<i64>()).collect();
            match parsed {
                Ok(c) => VertexKey::Coords(c),
                Err(_) => VertexKey::Word(s.to_string()),
            }
        }
        VertexKey::Word(_) => match s {
            "root" | "ε" => VertexKey::Word(String::new()),
            _ => VertexKey::Word(s.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> FiniteGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        FiniteGraph::from_edges(n, &edges).unwrap()
    }

    fn path3() -> FiniteGraph {
        FiniteGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            FiniteGraph::from_edges(3, &[(0, 1)]),
            Err(Error::Disconnected {
                reached: 2,
                order: 3
            })
        ));
        assert!(FiniteGraph::from_edges(2, &[(0, 0)]).is_err());
        assert!(FiniteGraph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(FiniteGraph::from_edges(2, &[(0, 2)]).is_err());
        assert!(FiniteGraph::from_adjacency(vec![vec![1], vec![]]).is_err());
        assert!(FiniteGraph::from_edges(0, &[]).is_err());
    }

    #[test]
    fn single_vertex_is_accepted() {
        let g = FiniteGraph::from_edges(1, &[]).unwrap();
        let m = metrics(&g);
        assert_eq!((m.radius, m.diameter, m.self_centered), (0, 0, true));
        assert_eq!(g.distance_partition(0).unwrap().sizes(), vec![1]);
    }

    #[test]
    fn cycle_distances() {
        assert_eq!(bfs_distances(&cycle(6), 0), vec![0, 1, 2, 3, 2, 1]);
    }

    #[test]
    fn path_metrics() {
        let m = metrics(&path3());
        assert_eq!(m.eccentricities, vec![2, 1, 2]);
        assert_eq!((m.radius, m.diameter, m.self_centered), (1, 2, false));
    }

    #[test]
    fn geodesic_counts() {
        let c4 = cycle(4);
        assert_eq!(count_geodesics(&c4, 0, 2), 2);
        assert_eq!(count_geodesics(&c4, 1, 1), 1);
        assert_eq!(count_geodesics(&c4, 0, 1), 1);
    }

    #[test]
    fn vertex_keys_display_and_parse() {
        assert_eq!(VertexKey::pair(-1, 0).to_string(), "-1,0");
        assert_eq!(VertexKey::word("").to_string(), "root");
        assert_eq!(
            parse_key("3,-2", &VertexKey::pair(0, 0)),
            VertexKey::pair(3, -2)
        );
        assert_eq!(parse_key("root", &VertexKey::word("")), VertexKey::word(""));
    }

    #[test]
    fn asymmetric_oracle_is_detected() {
        let oracle: Arc<NeighborOracle> = Arc::new(|v: &VertexKey| match v {
            VertexKey::Coords(c) if c[0] == 0 => vec![VertexKey::Coords(vec![1])],
            VertexKey::Coords(c) => vec![VertexKey::Coords(vec![c[0] + 1])],
            _ => vec![],
        });
        let g = LazyGraph::new(
            "broken",
            VertexKey::Coords(vec![0]),
            oracle,
            Arc::new(|_| true),
        );
        assert!(matches!(
            ball(&g, &VertexKey::Coords(vec![0]), 2),
            Err(Error::MalformedOracle { .. })
        ));
    }
}
