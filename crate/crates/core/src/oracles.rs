//! Closed-form structure identities for the graph families with known
//! coefficients, used as ground truth for the engine.

use std::fmt;

use crate::convolution::{convolution_table, ConvolutionRow, ConvolutionTable};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::hypergroup::BasePointClassification;
use crate::rational::{ratio, Rational};

/// Base-point class of the two 4-regular example graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Filled,
    Blank,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Complete {
        n: usize,
    },
    StronglyRegular {
        n: usize,
        k: usize,
        lambda: usize,
        mu: usize,
    },
    Tree {
        n: usize,
    },
    LinkedTriangle,
    Prism {
        n: usize,
    },
    /// The 7-vertex 4-regular example graph.
    Heptagon(VertexClass),
    /// The line graph of the triangular prism.
    LinePrism3(VertexClass),
    /// Complete bipartite graph, base point on a side with `m` vertices.
    Bipartite {
        m: usize,
    },
    Ladder,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete { n } => write!(f, "complete({n})"),
            Family::StronglyRegular { n, k, lambda, mu } => write!(f, "srg({n},{k},{lambda},{mu})"),
            Family::Tree { n } => write!(f, "tree({n})"),
            Family::LinkedTriangle => write!(f, "linked-triangle"),
            Family::Prism { n } => write!(f, "prism({n})"),
            Family::Heptagon(c) => write!(f, "heptagon({c:?})"),
            Family::LinePrism3(c) => write!(f, "lineprism3({c:?})"),
            Family::Bipartite { m } => write!(f, "bipartite-side({m})"),
            Family::Ladder => write!(f, "ladder"),
        }
    }
}

fn row(terms: &[(usize, Rational)]) -> ConvolutionRow {
    ConvolutionRow::from_entries(terms.iter().cloned())
}

fn q(p: i64, d: i64) -> Rational {
    ratio(p, d)
}

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

fn pow(base: i64, e: usize) -> i64 {
    base.pow(e as u32)
}

impl Family {
    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::ParameterOutOfRange(format!("{self}: {m}")));
        match *self {
            Family::Complete { n } if n < 2 => bad("needs n >= 2"),
            Family::StronglyRegular { n, k, mu, .. } if mu == 0 || k == 0 || n <= k + 1 => {
                bad("needs 0 < k < n - 1 and mu > 0")
            }
            Family::Tree { n } if n < 2 => bad("needs n >= 2"),
            Family::Prism { n } if n < 3 => bad("needs n >= 3"),
            Family::Bipartite { m } if m < 2 => bad("needs m >= 2"),
            _ => Ok(()),
        }
    }

    /// Diameter for finite families, `None` for infinite ones.
    pub fn diameter(&self) -> Option<usize> {
        match *self {
            Family::Complete { .. } => Some(1),
            Family::StronglyRegular { .. }
            | Family::Heptagon(_)
            | Family::LinePrism3(_)
            | Family::Bipartite { .. } => Some(2),
            Family::Prism { n } => Some(n / 2 + 1),
            Family::Tree { .. } | Family::LinkedTriangle | Family::Ladder => None,
        }
    }
}

/// Row `R_i ∘ R_j` of the family's structure identities.
pub fn closed_form(family: &Family, i: usize, j: usize) -> Result<ConvolutionRow> {
    family.validate()?;
    if let Some(s) = family.diameter() {
        if i > s || j > s {
            return Err(Error::ParameterOutOfRange(format!(
                "{family}: indices ({i}, {j}) exceed the diameter {s}"
            )));
        }
    }
    if i == 0 {
        return Ok(ConvolutionRow::point(j));
    }
    if j == 0 {
        return Ok(ConvolutionRow::point(i));
    }
    let r = match *family {
        Family::Complete { n } => {
            let n = n as i64;
            row(&[(0, q(1, n - 1)), (1, q(n - 2, n - 1))])
        }
        Family::StronglyRegular { n, k, lambda, mu } => {
            srg(n as i64, k as i64, lambda as i64, mu as i64, i, j)
        }
        Family::Tree { n } => tree(n as i64, i, j),
        Family::LinkedTriangle => linked_triangle(i, j),
        Family::Prism { n } => prism(n, i, j),
        Family::Heptagon(c) => heptagon(c, i, j),
        Family::LinePrism3(c) => line_prism3(c, i, j),
        Family::Bipartite { m } => bipartite(m as i64, i, j),
        Family::Ladder => ladder(i, j),
    };
    debug_assert!(
        r.mass() == q(1, 1),
        "{family} ({i},{j}) has mass {}",
        r.mass()
    );
    Ok(r)
}

fn srg(n: i64, k: i64, lambda: i64, mu: i64, i: usize, j: usize) -> ConvolutionRow {
    match (i, j) {
        (1, 1) => row(&[(0, q(1, k)), (1, q(lambda, k)), (2, q(k - lambda - 1, k))]),
        (1, 2) | (2, 1) => row(&[(1, q(mu, k)), (2, q(k - mu, k))]),
        _ => {
            let d = n - k - 1;
            row(&[
                (0, q(1, d)),
                (1, q(k - mu, d)),
                (2, q(n + mu - 2 * k - 2, d)),
            ])
        }
    }
}

fn tree(n: i64, i: usize, j: usize) -> ConvolutionRow {
    let lo = i.min(j);
    let mut t = vec![(i + j, q(n - 1, n))];
    for h in 1..lo {
        t.push((i + j - 2 * h, q(n - 2, n * pow(n - 1, h))));
    }
    t.push((i.abs_diff(j), q(1, n * pow(n - 1, lo - 1))));
    row(&t)
}

fn linked_triangle(i: usize, j: usize) -> ConvolutionRow {
    let lo = i.min(j);
    let d = i.abs_diff(j);
    let mut t = vec![(i + j, q(1, 2)), (d, q(1, pow(2, lo + 1)))];
    for h in 1..=lo {
        t.push((d + 2 * h - 1, q(1, pow(2, lo + 2 - h))));
    }
    row(&t)
}

fn ladder(i: usize, j: usize) -> ConvolutionRow {
    match (i.min(j), i.max(j)) {
        (1, 1) => row(&[(0, q(1, 3)), (2, q(2, 3))]),
        (1, b) => row(&[(b - 1, q(1, 2)), (b + 1, q(1, 2))]),
        (a, b) if a == b => row(&[
            (0, q(1, 4)),
            (2, q(1, 4)),
            (2 * a - 2, q(1, 8)),
            (2 * a, q(3, 8)),
        ]),
        (a, b) => row(&[
            (b - a, q(3, 8)),
            (b - a + 2, q(1, 8)),
            (a + b - 2, q(1, 8)),
            (a + b, q(3, 8)),
        ]),
    }
}

fn bipartite(m: i64, i: usize, j: usize) -> ConvolutionRow {
    match (i, j) {
        (1, 1) => row(&[(0, q(1, m)), (2, q(m - 1, m))]),
        (1, 2) | (2, 1) => ConvolutionRow::point(1),
        _ => row(&[(0, q(1, m - 1)), (2, q(m - 2, m - 1))]),
    }
}

fn heptagon(c: VertexClass, i: usize, j: usize) -> ConvolutionRow {
    match (c, i.min(j), i.max(j)) {
        (VertexClass::Filled, 1, 1) => row(&[(0, q(1, 4)), (1, q(1, 4)), (2, q(1, 2))]),
        (VertexClass::Filled, 1, 2) => ConvolutionRow::point(1),
        (VertexClass::Filled, _, _) => row(&[(0, q(1, 2)), (2, q(1, 2))]),
        (VertexClass::Blank, 1, 1) => row(&[(0, q(1, 4)), (1, q(3, 8)), (2, q(3, 8))]),
        (VertexClass::Blank, 1, 2) => row(&[(1, q(3, 4)), (2, q(1, 4))]),
        (VertexClass::Blank, _, _) => row(&[(0, q(1, 2)), (1, q(1, 2))]),
    }
}

fn line_prism3(c: VertexClass, i: usize, j: usize) -> ConvolutionRow {
    match (c, i.min(j), i.max(j)) {
        (VertexClass::Filled, 1, 1) => row(&[(0, q(1, 4)), (1, q(3, 8)), (2, q(3, 8))]),
        (VertexClass::Filled, 1, 2) => row(&[(1, q(3, 8)), (2, q(5, 8))]),
        (VertexClass::Filled, _, _) => row(&[(0, q(1, 4)), (1, q(5, 8)), (2, q(1, 8))]),
        (VertexClass::Blank, 1, 1) => row(&[(0, q(1, 4)), (1, q(1, 4)), (2, q(1, 2))]),
        (VertexClass::Blank, 1, 2) => row(&[(1, q(1, 2)), (2, q(1, 2))]),
        (VertexClass::Blank, _, _) => row(&[(0, q(1, 4)), (1, q(1, 2)), (2, q(1, 4))]),
    }
}

/// Prism identities, piecewise by parity of `n`. Case order matters: the
/// `R_{m+1}` display is applied before the `R_1` one, since at `(1, m + 1)`
/// only the former agrees with direct counting on odd prisms.
fn prism(n: usize, i: usize, j: usize) -> ConvolutionRow {
    if n == 3 {
        return match (i.min(j), i.max(j)) {
            (1, 1) => row(&[(0, q(1, 3)), (1, q(2, 9)), (2, q(4, 9))]),
            (1, 2) => row(&[(1, q(2, 3)), (2, q(1, 3))]),
            _ => row(&[(0, q(1, 2)), (1, q(1, 2))]),
        };
    }
    let (i, j) = (i.min(j), i.max(j));
    let d = |a, b| delta(a, b);
    if n % 2 == 1 {
        let m = (n - 1) / 2;
        if j == m + 1 {
            return row(&[
                (m + 1 - i, q(3 + d(i, 1), 6)),
                (m + 2 - i, q(3 - d(i, 1), 6)),
            ]);
        }
        if i == 1 {
            return row(&[
                (j - 1, q(3 - d(j, 1) + d(j, m + 1), 6)),
                (j, q(d(j, m), 6)),
                (j + 1, q(3 + d(j, 1) - d(j, m) - d(j, m + 1), 6)),
            ]);
        }
        if i == m {
            return row(&[
                (0, q(1, 4)),
                (1, q(1, 8)),
                (2, q(2 + d(m, 2), 8)),
                (3, q(3 - d(m, 2), 8)),
            ]);
        }
        if j == m {
            return row(&[
                (m - i, q(3, 8)),
                (m + 1 - i, q(1, 8)),
                (m + 2 - i, q(1 + d(i, 2), 8)),
                (m + 3 - i, q(3 - d(i, 2), 8)),
            ]);
        }
        let a = j - i;
        let mut t = vec![(a, q(3 - d(i, j), 8)), (a + 2, q(1 + d(i, j), 8))];
        if i + j <= m {
            t.extend([(i + j - 2, q(1, 8)), (i + j, q(3, 8))]);
        } else if i + j <= m + 2 {
            t.extend([(m - 1, q(1, 8)), (m, q(1, 8)), (m + 1, q(1, 4))]);
        } else {
            t.extend([(2 * m + 1 - i - j, q(1, 8)), (2 * m + 3 - i - j, q(3, 8))]);
        }
        row(&t)
    } else {
        let m = n / 2;
        if j == m + 1 {
            return ConvolutionRow::point(m + 1 - i);
        }
        if i == 1 {
            return row(&[
                (j - 1, q(3 - d(j, 1) + d(j, m) + 3 * d(j, m + 1), 6)),
                (j + 1, q(3 + d(j, 1) - d(j, m) - 3 * d(j, m + 1), 6)),
            ]);
        }
        if i == m {
            return row(&[(0, q(1, 3)), (2, q(2, 3))]);
        }
        if j == m {
            return row(&[(m - i, q(1, 2)), (m + 2 - i, q(1, 2))]);
        }
        let a = j - i;
        let mut t = vec![(a, q(3 - d(i, j), 8)), (a + 2, q(1 + d(i, j), 8))];
        if i + j <= m + 1 {
            let e = d(i + j, m + 1);
            t.extend([(i + j - 2, q(1 + e, 8)), (i + j, q(3 - e, 8))]);
        } else {
            t.extend([(2 * m - i - j, q(1, 8)), (2 * m + 2 - i - j, q(3, 8))]);
        }
        row(&t)
    }
}

/// Intersection numbers of the infinite `n`-regular tree.
pub fn tree_intersection_number(n: u64, i: usize, j: usize, k: usize) -> u64 {
    if i == 0 {
        return (j == k) as u64;
    }
    if k == 0 {
        return if i == j {
            n * (n - 1).pow(i as u32 - 1)
        } else {
            0
        };
    }
    if j == i + k {
        return (n - 1).pow(i as u32);
    }
    if j == i.abs_diff(k) {
        return (n - 1).pow((i - i.min(k)) as u32);
    }
    let lo = i.min(k);
    if j < i + k && (i + k - j).is_multiple_of(2) {
        let h = (i + k - j) / 2;
        if 0 < h && h < lo {
            return (n - 2) * (n - 1).pow((i - h - 1) as u32);
        }
    }
    0
}

/// Intersection numbers of the linked-triangle graph.
pub fn linked_triangle_intersection_number(i: usize, j: usize, k: usize) -> u64 {
    if i == 0 {
        return (j == k) as u64;
    }
    if k == 0 {
        return if i == j { 1 << (i + 1) } else { 0 };
    }
    let e = i.saturating_sub(k);
    let d = i.abs_diff(k);
    if j == d {
        return 1 << e;
    }
    if j == i + k {
        return 1 << i;
    }
    if j > d && (j - d) % 2 == 1 {
        let h = (j - d).div_ceil(2);
        if h <= i.min(k) {
            return 1 << (e + h - 1);
        }
    }
    0
}

/// First row where the engine and the closed form disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMismatch {
    pub indices: (usize, usize),
    pub expected: ConvolutionRow,
    pub engine: ConvolutionRow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub equal: bool,
    pub rows_checked: usize,
    pub mismatch: Option<OracleMismatch>,
}

/// Row-by-row comparison over `i, j <= max_level` of the table.
pub fn compare_table(family: &Family, t: &ConvolutionTable) -> Result<OracleVerdict> {
    let mut rows_checked = 0;
    for (&(i, j), engine) in t.level_rows() {
        let expected = closed_form(family, i, j)?;
        rows_checked += 1;
        if &expected != engine {
            return Ok(OracleVerdict {
                equal: false,
                rows_checked,
                mismatch: Some(OracleMismatch {
                    indices: (i, j),
                    expected,
                    engine: engine.clone(),
                }),
            });
        }
    }
    Ok(OracleVerdict {
        equal: true,
        rows_checked,
        mismatch: None,
    })
}

/// Computes the engine table for `(g, v0)` and compares it with the family.
pub fn oracle_vs_engine(
    family: &Family,
    g: &Graph,
    v0: &Vertex,
    level: Option<usize>,
) -> Result<OracleVerdict> {
    let t = convolution_table(g, v0, level)?;
    compare_table(family, &t)
}

/// Matches every engine class to exactly one oracle family (a perfect
/// matching). Returns, per class, the index of its family.
pub fn match_classes(
    classification: &BasePointClassification,
    families: &[Family],
) -> Result<Option<Vec<usize>>> {
    let n = classification.classes.len();
    if n != families.len() {
        return Ok(None);
    }
    let mut fits = vec![vec![false; n]; n];
    for (c, class) in classification.classes.iter().enumerate() {
        for (f, fam) in families.iter().enumerate() {
            fits[c][f] = compare_table(fam, &class.table)?.equal;
        }
    }
    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn assign(c: usize, fits: &[Vec<bool>], used: &mut [bool], out: &mut [usize]) -> bool {
        if c == fits.len() {
            return true;
        }
        for f in 0..fits.len() {
            if fits[c][f] && !used[f] {
                used[f] = true;
                out[c] = f;
                if assign(c + 1, fits, used, out) {
                    return true;
                }
                used[f] = false;
            }
        }
        false
    }
    Ok(assign(0, &fits, &mut used, &mut assignment).then_some(assignment))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(pairs: &[(usize, i64, i64)]) -> ConvolutionRow {
        ConvolutionRow::from_entries(pairs.iter().map(|&(k, p, d)| (k, ratio(p, d))))
    }

    #[test]
    fn documented_rows() {
        assert_eq!(
            closed_form(&Family::Prism { n: 3 }, 1, 1).unwrap(),
            r(&[(0, 1, 3), (1, 2, 9), (2, 4, 9)])
        );
        let petersen = Family::StronglyRegular {
            n: 10,
            k: 3,
            lambda: 0,
            mu: 1,
        };
        assert_eq!(
            closed_form(&petersen, 2, 2).unwrap(),
            r(&[(0, 1, 6), (1, 1, 3), (2, 1, 2)])
        );
        assert_eq!(
            closed_form(&Family::Bipartite { m: 2 }, 2, 2).unwrap(),
            ConvolutionRow::point(0)
        );
        assert_eq!(
            closed_form(&Family::Ladder, 2, 2).unwrap(),
            r(&[(0, 1, 4), (2, 3, 8), (4, 3, 8)])
        );
    }

    #[test]
    fn every_row_has_unit_mass() {
        let mut families = vec![
            Family::Complete { n: 2 },
            Family::Complete { n: 7 },
            Family::LinkedTriangle,
            Family::Ladder,
            Family::Bipartite { m: 3 },
            Family::Heptagon(VertexClass::Filled),
            Family::Heptagon(VertexClass::Blank),
            Family::LinePrism3(VertexClass::Filled),
            Family::LinePrism3(VertexClass::Blank),
        ];
        families.extend((2..=5).map(|n| Family::Tree { n }));
        families.extend((3..=14).map(|n| Family::Prism { n }));
        for f in &families {
            let s = f.diameter().unwrap_or(6);
            for i in 0..=s {
                for j in 0..=s {
                    let row = closed_form(f, i, j).unwrap();
                    assert_eq!(row.mass(), ratio(1, 1), "{f} ({i},{j})");
                    assert_eq!(row.audit(i, j), None, "{f} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn prism_rows_are_symmetric() {
        for n in 3..=14 {
            let f = Family::Prism { n };
            let s = f.diameter().unwrap();
            for i in 0..=s {
                for j in 0..=s {
                    assert_eq!(
                        closed_form(&f, i, j).unwrap(),
                        closed_form(&f, j, i).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn path_tree_has_two_point_support() {
        let f = Family::Tree { n: 2 };
        for i in 1..=6 {
            for j in 1..=6 {
                let support = closed_form(&f, i, j).unwrap().support();
                assert_eq!(support, vec![i.abs_diff(j), i + j]);
            }
        }
    }

    #[test]
    fn intersection_number_closed_forms() {
        assert_eq!(tree_intersection_number(3, 2, 2, 0), 6);
        assert_eq!(linked_triangle_intersection_number(3, 3, 0), 16);
        // Row sums equal the valency.
        for k in 0..=6 {
            for i in 1..=4 {
                let s: u64 = (0..=12)
                    .map(|j| linked_triangle_intersection_number(i, j, k))
                    .sum();
                assert_eq!(s, 1 << (i + 1), "link i={i} k={k}");
                let s: u64 = (0..=12).map(|j| tree_intersection_number(4, i, j, k)).sum();
                assert_eq!(s, 4 * 3u64.pow(i as u32 - 1), "tree i={i} k={k}");
            }
        }
    }

    #[test]
    fn out_of_range() {
        assert!(closed_form(&Family::Complete { n: 4 }, 2, 1).is_err());
        assert!(closed_form(&Family::Tree { n: 1 }, 1, 1).is_err());
        assert!(closed_form(&Family::Prism { n: 5 }, 4, 1).is_err());
    }
}
