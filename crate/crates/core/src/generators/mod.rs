//! Builtin graph families, the graph-spec micro-syntax, line graphs and
//! exhaustive small-graph search.

pub mod cayley;
pub mod platonic;
pub mod search;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

pub use cayley::{AbelianGroup, CayleySpec};
pub use search::{canonical_form, isomorphic, search_graphs, SEARCH_ORDER_BOUND};

use crate::error::{Error, Result};
use crate::graph::{io, FiniteGraph, Graph, LazyGraph, VertexKey};

/// A graph family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Prism(usize),
    Bipartite(usize, usize),
    Platonic(usize),
    Petersen,
    LineGraph(Box<FamilySpec>),
    Tree(usize),
    LinkedTriangle,
    Ladder,
    Lattice,
    Cylinder(usize),
    File(PathBuf),
}

pub const VALID_SPECS: &str = "complete:N, cycle:N, path:N, prism:N, bipartite:M,N, \
platonic:{4,6,8,12,20}, petersen, lineprism3, line:SPEC, tree:K, linked-triangle, ladder, \
lattice, cylinder:N, file:PATH";

impl FamilySpec {
    pub fn is_finite(&self) -> bool {
        !matches!(
            self,
            FamilySpec::Tree(_)
                | FamilySpec::LinkedTriangle
                | FamilySpec::Ladder
                | FamilySpec::Lattice
                | FamilySpec::Cylinder(_)
        )
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ParameterOutOfRange(msg));
        match *self {
            FamilySpec::Complete(0) => bad("complete graph needs n >= 1".into()),
            FamilySpec::Cycle(n) if n < 3 => bad("cycle needs n >= 3".into()),
            FamilySpec::Path(0) => bad("path needs n >= 1".into()),
            FamilySpec::Prism(n) if n < 3 => bad("prism needs n >= 3".into()),
            FamilySpec::Bipartite(m, n) if m == 0 || n == 0 => {
                bad("complete bipartite graph needs m, n >= 1".into())
            }
            FamilySpec::Platonic(n) if platonic::table(n).is_none() => {
                bad(format!("no platonic solid has {n} vertices"))
            }
            FamilySpec::Tree(k) if !(2..=26).contains(&k) => bad("tree needs 2 <= k <= 26".into()),
            FamilySpec::Cylinder(n) if n < 2 => bad("cylinder needs n >= 2".into()),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        if self.is_finite() {
            self.build_finite().map(Graph::Finite)
        } else {
            self.build_lazy().map(Graph::Lazy)
        }
    }

    pub fn build_finite(&self) -> Result<FiniteGraph> {
        self.validate()?;
        match self {
            FamilySpec::Complete(n) => complete(*n),
            FamilySpec::Cycle(n) => {
                let edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
                FiniteGraph::from_edges(*n, &edges)
            }
            FamilySpec::Path(n) => {
                let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
                FiniteGraph::from_edges(*n, &edges)
            }
            FamilySpec::Prism(n) => prism(*n),
            FamilySpec::Bipartite(m, n) => complete_bipartite(*m, *n),
            FamilySpec::Platonic(n) => {
                FiniteGraph::from_edges(*n, platonic::table(*n).expect("validated"))
            }
            FamilySpec::Petersen => FiniteGraph::from_edges(10, platonic::PETERSEN),
            FamilySpec::LineGraph(inner) => line_graph(&inner.build_finite()?),
            FamilySpec::File(path) => io::load(path),
            _ => Err(Error::ParameterOutOfRange(format!(
                "{self} is an infinite family"
            ))),
        }
    }

    pub fn build_lazy(&self) -> Result<LazyGraph> {
        self.validate()?;
        match self {
            FamilySpec::Tree(k) => Ok(regular_tree(*k)),
            FamilySpec::LinkedTriangle => Ok(linked_triangle()),
            FamilySpec::Ladder => ladder(),
            FamilySpec::Lattice => square_lattice(),
            FamilySpec::Cylinder(n) => cylinder(*n),
            _ => Err(Error::ParameterOutOfRange(format!(
                "{self} is a finite family"
            ))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Prism(n) => write!(f, "prism:{n}"),
            FamilySpec::Bipartite(m, n) => write!(f, "bipartite:{m},{n}"),
            FamilySpec::Platonic(n) => write!(f, "platonic:{n}"),
            FamilySpec::Petersen => write!(f, "petersen"),
            FamilySpec::LineGraph(inner) if **inner == FamilySpec::Prism(3) => {
                write!(f, "lineprism3")
            }
            FamilySpec::LineGraph(inner) => write!(f, "line:{inner}"),
            FamilySpec::Tree(k) => write!(f, "tree:{k}"),
            FamilySpec::LinkedTriangle => write!(f, "linked-triangle"),
            FamilySpec::Ladder => write!(f, "ladder"),
            FamilySpec::Lattice => write!(f, "lattice"),
            FamilySpec::Cylinder(n) => write!(f, "cylinder:{n}"),
            FamilySpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let usage = || {
            Error::Usage(format!(
                "unknown graph spec {s:?}; valid specs: {VALID_SPECS}"
            ))
        };
        let int = |a: Option<&str>| -> Result<usize> {
            a.and_then(|t| t.trim().parse().ok()).ok_or_else(usage)
        };
        let spec = match name {
            "complete" => FamilySpec::Complete(int(args)?),
            "cycle" => FamilySpec::Cycle(int(args)?),
            "path" => FamilySpec::Path(int(args)?),
            "prism" => FamilySpec::Prism(int(args)?),
            "platonic" => FamilySpec::Platonic(int(args)?),
            "tree" => FamilySpec::Tree(int(args)?),
            "cylinder" => FamilySpec::Cylinder(int(args)?),
            "bipartite" => {
                let (m, n) = args.and_then(|a| a.split_once(',')).ok_or_else(usage)?;
                FamilySpec::Bipartite(int(Some(m))?, int(Some(n))?)
            }
            "petersen" if args.is_none() => FamilySpec::Petersen,
            "lineprism3" if args.is_none() => FamilySpec::LineGraph(Box::new(FamilySpec::Prism(3))),
            "line" => FamilySpec::LineGraph(Box::new(args.ok_or_else(usage)?.parse()?)),
            "linked-triangle" if args.is_none() => FamilySpec::LinkedTriangle,
            "ladder" if args.is_none() => FamilySpec::Ladder,
            "lattice" if args.is_none() => FamilySpec::Lattice,
            "file" => FamilySpec::File(PathBuf::from(args.ok_or_else(usage)?)),
            _ => return Err(usage()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn complete(n: usize) -> Result<FiniteGraph> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    FiniteGraph::from_edges(n, &edges)
}

/// `K_{m,n}`: vertices `0..m` on one side, `m..m+n` on the other.
pub fn complete_bipartite(m: usize, n: usize) -> Result<FiniteGraph> {
    let mut edges = Vec::new();
    for a in 0..m {
        for b in m..m + n {
            edges.push((a, b));
        }
    }
    FiniteGraph::from_edges(m + n, &edges)
}

/// The `n`-gonal prism as the Cayley graph of `Z/n ⊕ Z/2` with
/// Ω = {(±1, 0), (0, 1)}. Vertex `x + n·b` is the element `(x, b)`.
pub fn prism(n: usize) -> Result<FiniteGraph> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange("prism needs n >= 3".into()));
    }
    let group = AbelianGroup::new(0, vec![n as u64, 2])?;
    CayleySpec::new(group, vec![vec![1, 0], vec![-1, 0], vec![0, 1]])?.build_finite()
}

/// Vertices are the edges of `g` in lexicographic order; two are adjacent
/// iff they share an endpoint.
pub fn line_graph(g: &FiniteGraph) -> Result<FiniteGraph> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::ParameterOutOfRange(
            "line graph of an edgeless graph".into(),
        ));
    }
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                out.push((i, j));
            }
        }
    }
    FiniteGraph::from_edges(edges.len(), &out)
}

fn letters(k: usize) -> Vec<char> {
    (b'a'..b'a' + k as u8).map(char::from).collect()
}

fn is_reduced(w: &str, alphabet: &[char]) -> bool {
    let chars: Vec<char> = w.chars().collect();
    chars.iter().all(|c| alphabet.contains(c)) && chars.windows(2).all(|p| p[0] != p[1])
}

/// Infinite `k`-regular tree on reduced words: the root is the empty word,
/// a neighbor extends by a letter different from the last one or deletes
/// the last letter.
pub fn regular_tree(k: usize) -> LazyGraph {
    let alphabet = letters(k);
    let check = alphabet.clone();
    LazyGraph::new(
        format!("tree:{k}"),
        VertexKey::word(""),
        Arc::new(move |v: &VertexKey| {
            let Some(w) = v.as_word() else {
                return Vec::new();
            };
            let last = w.chars().last();
            let mut out: Vec<VertexKey> = alphabet
                .iter()
                .filter(|&&c| Some(c) != last)
                .map(|&c| VertexKey::Word(format!("{w}{c}")))
                .collect();
            if let Some(c) = last {
                out.push(VertexKey::word(&w[..w.len() - c.len_utf8()]));
            }
            out
        }),
        Arc::new(move |v: &VertexKey| v.as_word().is_some_and(|w| is_reduced(w, &check))),
    )
}

/// The linked-triangle graph on nonempty words over {a, b, c} with no two
/// equal consecutive letters. Words are adjacent when one extends the other
/// by one letter, or when they have equal length and differ only in the
/// last letter.
pub fn linked_triangle() -> LazyGraph {
    const ABC: [char; 3] = ['a', 'b', 'c'];
    LazyGraph::new(
        "linked-triangle",
        VertexKey::word("a"),
        Arc::new(|v: &VertexKey| {
            let Some(w) = v.as_word() else {
                return Vec::new();
            };
            let chars: Vec<char> = w.chars().collect();
            let Some(&last) = chars.last() else {
                return Vec::new();
            };
            let prefix: String = chars[..chars.len() - 1].iter().collect();
            let before = chars.len().checked_sub(2).map(|i| chars[i]);
            let mut out = Vec::with_capacity(4);
            for c in ABC {
                if c != last {
                    out.push(VertexKey::Word(format!("{w}{c}")));
                    if Some(c) != before {
                        out.push(VertexKey::Word(format!("{prefix}{c}")));
                    }
                }
            }
            if chars.len() >= 2 {
                out.push(VertexKey::Word(prefix));
            }
            out
        }),
        Arc::new(|v: &VertexKey| {
            v.as_word()
                .is_some_and(|w| !w.is_empty() && is_reduced(w, &ABC))
        }),
    )
}

/// `Cay(Z ⊕ Z/2, {(±1, 0), (0, 1)})`.
pub fn ladder() -> Result<LazyGraph> {
    let group = AbelianGroup::new(1, vec![2])?;
    CayleySpec::new(group, vec![vec![1, 0], vec![-1, 0], vec![0, 1]])?.build_lazy("ladder")
}

/// `Cay(Z ⊕ Z, {(±1, 0), (0, ±1)})`.
pub fn square_lattice() -> Result<LazyGraph> {
    let group = AbelianGroup::new(2, vec![])?;
    CayleySpec::new(
        group,
        vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
    )?
    .build_lazy("lattice")
}

/// `Cay(Z ⊕ Z/n, {(±1, 0), (0, ±1)})`.
pub fn cylinder(n: usize) -> Result<LazyGraph> {
    let group = AbelianGroup::new(1, vec![n as u64])?;
    CayleySpec::new(
        group,
        vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
    )?
    .build_lazy(&format!("cylinder:{n}"))
}

/// `Cay(Z, {±1})`, the free group on one generator.
pub fn integer_line() -> Result<LazyGraph> {
    let group = AbelianGroup::new(1, vec![])?;
    CayleySpec::new(group, vec![vec![1], vec![-1]])?.build_lazy("integers")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    #[test]
    fn parses_micro_syntax() {
        assert_eq!(spec("complete:5"), FamilySpec::Complete(5));
        assert_eq!(spec("bipartite:2,3"), FamilySpec::Bipartite(2, 3));
        assert_eq!(spec("lineprism3").to_string(), "lineprism3");
        assert_eq!(
            spec("line:cycle:4"),
            FamilySpec::LineGraph(Box::new(FamilySpec::Cycle(4)))
        );
        assert_eq!(spec("cylinder:4"), FamilySpec::Cylinder(4));
        assert!(matches!(
            "dodecagon".parse::<FamilySpec>(),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            "platonic:7".parse::<FamilySpec>(),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!("prism:2".parse::<FamilySpec>().is_err());
        assert!("tree:1".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn finite_family_sizes() {
        let k4 = spec("complete:4").build_finite().unwrap();
        assert_eq!(
            (k4.order(), k4.edge_count(), k4.regular_degree()),
            (4, 6, Some(3))
        );
        let p3 = spec("prism:3").build_finite().unwrap();
        assert_eq!(
            (p3.order(), p3.edge_count(), p3.regular_degree()),
            (6, 9, Some(3))
        );
        let k23 = spec("bipartite:2,3").build_finite().unwrap();
        assert_eq!((k23.order(), k23.edge_count()), (5, 6));
        assert_eq!(k23.degrees(), vec![3, 3, 2, 2, 2]);
    }

    #[test]
    fn platonic_checksums() {
        // (vertices, edges, faces, degree)
        for (v, e, f, d) in [
            (4, 6, 4, 3),
            (6, 12, 8, 4),
            (8, 12, 6, 3),
            (12, 30, 20, 5),
            (20, 30, 12, 3),
        ] {
            let g = FamilySpec::Platonic(v).build_finite().unwrap();
            assert_eq!(g.order(), v);
            assert_eq!(g.edge_count(), e);
            assert_eq!(e + 2 - v, f, "Euler characteristic");
            assert_eq!(g.regular_degree(), Some(d));
        }
        let p = FamilySpec::Petersen.build_finite().unwrap();
        assert_eq!(
            (p.order(), p.edge_count(), p.regular_degree()),
            (10, 15, Some(3))
        );
    }

    #[test]
    fn line_graphs() {
        let l = line_graph(&prism(3).unwrap()).unwrap();
        assert_eq!((l.order(), l.regular_degree()), (9, Some(4)));
        let k3 = complete(3).unwrap();
        assert!(isomorphic(&line_graph(&k3).unwrap(), &k3));
        let p3 = FamilySpec::Path(3).build_finite().unwrap();
        let single = line_graph(&p3).unwrap();
        assert_eq!((single.order(), single.edge_count()), (2, 1));
        assert!(line_graph(&complete(1).unwrap()).is_err());
    }

    #[test]
    fn lazy_neighbors() {
        let t3 = regular_tree(3);
        for w in ["", "a", "ab", "cab"] {
            assert_eq!(t3.neighbors(&VertexKey::word(w)).len(), 3, "{w}");
        }
        let lt = linked_triangle();
        let got: Vec<String> = lt
            .neighbors(&VertexKey::word("a"))
            .iter()
            .map(|k| k.to_string())
            .collect();
        assert_eq!(got, vec!["ab", "ac", "b", "c"]);
        let got: Vec<String> = lt
            .neighbors(&VertexKey::word("ab"))
            .iter()
            .map(|k| k.to_string())
            .collect();
        assert_eq!(got, vec!["a", "aba", "abc", "ac"]);
        let lad = ladder().unwrap();
        let got = lad.neighbors(&VertexKey::pair(0, 0));
        assert_eq!(
            got,
            vec![
                VertexKey::pair(-1, 0),
                VertexKey::pair(0, 1),
                VertexKey::pair(1, 0)
            ]
        );
        assert!(!lt.contains(&VertexKey::word("aab")));
        assert!(!lad.contains(&VertexKey::pair(0, 2)));
    }
}
