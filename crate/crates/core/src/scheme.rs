//! Distance-regularity, intersection numbers of the distance scheme, the
//! standard scheme identities and Bose–Mesner cross-checks.
//!
//! Convention: for `d(x, y) = k`,
//! `p_{i,j}^k = |{u : d(x, u) = i, d(u, y) = j}|`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::convolution::{convolution_table, ConvolutionTable};
use crate::error::{Error, Result};
use crate::graph::{ball, BoundedBfs, FiniteGraph, Graph, Vertex, VertexKey, UNREACHED};
use crate::rational::{self, Rational};

/// `(b_0, …, b_{s-1}; c_1, …, c_s)`. For infinite graphs `s` is the
/// truncation level and the array is a certified prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

/// Two vertex pairs at the same distance with different counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrgWitness {
    /// `"degree"`, `"b"` or `"c"`.
    pub quantity: &'static str,
    pub distance: usize,
    pub reference: (Vertex, Vertex),
    pub reference_count: usize,
    pub offending: (Vertex, Vertex),
    pub offending_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrgVerdict {
    pub distance_regular: bool,
    pub array: Option<IntersectionArray>,
    pub witness: Option<DrgWitness>,
    /// `Some(L)` when the verdict only covers distances up to `L` from the
    /// base of an infinite graph.
    pub truncated: Option<usize>,
}

struct Tally {
    reference: Vec<Option<((Vertex, Vertex), usize)>>,
    witness: Option<DrgWitness>,
}

impl Tally {
    fn new(levels: usize) -> Self {
        Tally {
            reference: vec![None; levels],
            witness: None,
        }
    }

    fn record(&mut self, quantity: &'static str, d: usize, pair: (Vertex, Vertex), count: usize) {
        if self.witness.is_some() {
            return;
        }
        match &self.reference[d] {
            None => self.reference[d] = Some((pair, count)),
            Some((r, rc)) if *rc != count => {
                self.witness = Some(DrgWitness {
                    quantity,
                    distance: d,
                    reference: r.clone(),
                    reference_count: *rc,
                    offending: pair,
                    offending_count: count,
                })
            }
            Some(_) => {}
        }
    }

    fn values(&self) -> Vec<usize> {
        self.reference
            .iter()
            .map(|r| r.as_ref().map_or(0, |(_, c)| *c))
            .collect()
    }
}

/// Checks the three conditions of distance-regularity by direct counting.
/// Finite graphs: over all vertex pairs; the witness is the smallest
/// distance, then the lexicographically smallest pair. Infinite graphs:
/// pairs `(base, w)` with `d(base, w) <= level` (level required).
pub fn check_distance_regular(g: &Graph, level: Option<usize>) -> Result<DrgVerdict> {
    match g {
        Graph::Finite(fg) => Ok(finite_drg(fg)),
        Graph::Lazy(lg) => {
            let l = level.ok_or_else(|| {
                Error::Usage("a maximum level is required for infinite graphs".into())
            })?;
            let b = ball(lg, lg.base(), l)?;
            let key = |v: usize| Vertex::Key(b.keys[v].clone());
            let mut degree = Tally::new(1);
            let mut bt = Tally::new(l.max(1));
            let mut ct = Tally::new(l + 1);
            for w in 0..b.len() {
                let d = b.distances[w];
                if d < l {
                    degree.record("degree", 0, (key(w), key(w)), b.adjacency[w].len());
                }
                if d == 0 {
                    continue;
                }
                let count_at = |t: usize| {
                    b.adjacency[w]
                        .iter()
                        .filter(|&&u| b.distances[u] == t)
                        .count()
                };
                if d < l {
                    bt.record("b", d, (key(0), key(w)), count_at(d + 1));
                }
                ct.record("c", d, (key(0), key(w)), count_at(d - 1));
            }
            let mut bs = bt.values();
            if l > 0 {
                bs[0] = degree.values()[0];
            }
            bs.truncate(l);
            let array = IntersectionArray {
                b: bs,
                c: ct.values().into_iter().skip(1).collect(),
            };
            let witness = degree.witness.or(bt.witness).or(ct.witness);
            Ok(DrgVerdict {
                distance_regular: witness.is_none(),
                array: witness.is_none().then_some(array),
                witness,
                truncated: Some(l),
            })
        }
    }
}

fn finite_drg(g: &FiniteGraph) -> DrgVerdict {
    let d = g.distance_matrix();
    let n = g.order();
    let s = d.iter().flatten().copied().max().unwrap_or(0);
    let id = Vertex::Id;
    let mut degree = Tally::new(1);
    for v in 0..n {
        degree.record("degree", 0, (id(v), id(v)), g.degree(v));
    }
    let mut bt = Tally::new(s + 1);
    let mut ct = Tally::new(s + 1);
    // Counts per distance, scanned in (distance, pair) order.
    for dist in 1..=s {
        for v in 0..n {
            for w in 0..n {
                if d[v][w] != dist {
                    continue;
                }
                let nb = g.neighbors(w);
                let b = nb.iter().filter(|&&u| d[v][u] == dist + 1).count();
                let c = nb.iter().filter(|&&u| d[v][u] + 1 == dist).count();
                bt.record("b", dist, (id(v), id(w)), b);
                ct.record("c", dist, (id(v), id(w)), c);
            }
        }
    }
    let mut b = bt.values();
    b[0] = degree.values()[0];
    b.truncate(s);
    let array = IntersectionArray {
        b,
        c: ct.values().into_iter().skip(1).collect(),
    };
    let witness = degree
        .witness
        .or_else(|| first_by_distance(bt.witness, ct.witness));
    DrgVerdict {
        distance_regular: witness.is_none(),
        array: witness.is_none().then_some(array),
        witness,
        truncated: None,
    }
}

fn first_by_distance(a: Option<DrgWitness>, b: Option<DrgWitness>) -> Option<DrgWitness> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if (y.distance, &y.offending) < (x.distance, &x.offending) {
            y
        } else {
            x
        }),
        (x, y) => x.or(y),
    }
}

/// Intersection numbers, with the region where they are certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeTable {
    /// Largest index `i`, `j` or `k` stored.
    pub max_index: usize,
    /// `None` for finite graphs (every pair certified); `Some(R)` when
    /// `p_{i,j}^k` is certified only for `i + j <= R`.
    pub radius: Option<usize>,
    p: BTreeMap<(usize, usize, usize), u64>,
}

impl SchemeTable {
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.p.get(&(i, j, k)).copied().unwrap_or(0)
    }

    pub fn certified(&self, i: usize, j: usize) -> bool {
        match self.radius {
            None => i <= self.max_index && j <= self.max_index,
            Some(r) => i + j <= r,
        }
    }

    pub fn valency(&self, i: usize) -> u64 {
        self.get(i, i, 0)
    }

    /// Nonzero entries `((i, j, k), p)`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize, usize), u64> {
        &self.p
    }
}

type Counts = HashMap<(usize, usize), u64>;

/// Intersection numbers by direct counting. Finite graphs count over every
/// ordered pair and fail with a witness if a number depends on the pair.
/// Infinite graphs fix `x = v0` and count inside a ball of radius
/// `2 * level`, which certifies every `p_{i,j}^k` with `i + j <= 2 * level`.
pub fn intersection_numbers(g: &Graph, v0: &Vertex, level: Option<usize>) -> Result<SchemeTable> {
    match (g, v0) {
        (Graph::Finite(fg), _) => finite_scheme(fg),
        (Graph::Lazy(lg), Vertex::Key(key)) => {
            let l = level.ok_or_else(|| {
                Error::Usage("a maximum level is required for infinite graphs".into())
            })?;
            lazy_scheme(lg, key, 2 * l)
        }
        _ => Err(Error::Usage(format!(
            "vertex {v0} does not belong to this graph"
        ))),
    }
}

fn finite_scheme(g: &FiniteGraph) -> Result<SchemeTable> {
    let d = g.distance_matrix();
    let n = g.order();
    let s = d.iter().flatten().copied().max().unwrap_or(0);
    let dim = s + 1;
    // Per x: for each k, the count vector of the first y at distance k, or
    // the first disagreement.
    type PerX = Vec<Option<(usize, Vec<u64>)>>;
    let per_x: Vec<std::result::Result<PerX, (usize, usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut refs: PerX = vec![None; dim];
            for y in 0..n {
                let k = d[x][y];
                let mut counts = vec![0u64; dim * dim];
                for u in 0..n {
                    counts[d[x][u] * dim + d[u][y]] += 1;
                }
                match &refs[k] {
                    None => refs[k] = Some((y, counts)),
                    Some((y0, c0)) if *c0 != counts => return Err((x, *y0, y)),
                    Some(_) => {}
                }
            }
            Ok(refs)
        })
        .collect();
    let mut global: Vec<Option<((usize, usize), Vec<u64>)>> = vec![None; dim];
    for (x, r) in per_x.into_iter().enumerate() {
        let refs = r.map_err(|(x, y0, y)| {
            Error::NotAScheme(format!(
                "pairs ({x}, {y0}) and ({x}, {y}) are at distance {} but have different \
                 intersection counts",
                d[x][y]
            ))
        })?;
        for (k, entry) in refs.into_iter().enumerate() {
            let Some((y, counts)) = entry else { continue };
            match &global[k] {
                None => global[k] = Some(((x, y), counts)),
                Some(((x0, y0), c0)) if *c0 != counts => {
                    return Err(Error::NotAScheme(format!(
                        "pairs ({x0}, {y0}) and ({x}, {y}) are at distance {k} but have \
                         different intersection counts"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let mut p = BTreeMap::new();
    for (k, entry) in global.into_iter().enumerate() {
        let (_, counts) = entry.expect("every distance up to the diameter occurs");
        for i in 0..dim {
            for j in 0..dim {
                let c = counts[i * dim + j];
                if c > 0 {
                    p.insert((i, j, k), c);
                }
            }
        }
    }
    Ok(SchemeTable {
        max_index: s,
        radius: None,
        p,
    })
}

fn lazy_scheme(g: &crate::graph::LazyGraph, x: &VertexKey, radius: usize) -> Result<SchemeTable> {
    let b = ball(g, x, radius)?;
    let n = b.len();
    let per_u: Vec<Vec<(usize, usize, usize)>> = (0..n)
        .into_par_iter()
        .map_init(
            || BoundedBfs::new(n),
            |bfs, u| {
                let i = b.distances[u];
                let touched = bfs.run(&b.adjacency, u, radius - i).to_vec();
                touched
                    .into_iter()
                    .map(|y| (y, i, bfs.distance(y)))
                    .collect()
            },
        )
        .collect();
    let mut per_y: Vec<Counts> = vec![Counts::new(); n];
    for list in per_u {
        for (y, i, j) in list {
            *per_y[y].entry((i, j)).or_insert(0) += 1;
        }
    }
    let mut reference: Vec<Option<usize>> = vec![None; radius + 1];
    for y in 0..n {
        let k = b.distances[y];
        match reference[k] {
            None => reference[k] = Some(y),
            Some(y0) if per_y[y0] != per_y[y] => {
                return Err(Error::NotAScheme(format!(
                    "pairs ({}, {}) and ({}, {}) are at distance {k} but have different \
                     intersection counts",
                    b.keys[0], b.keys[y0], b.keys[0], b.keys[y]
                )))
            }
            Some(_) => {}
        }
    }
    let mut p = BTreeMap::new();
    for (k, r) in reference.into_iter().enumerate() {
        let y = r.expect("every level of a ball is nonempty");
        for (&(i, j), &c) in &per_y[y] {
            p.insert((i, j, k), c);
        }
    }
    debug_assert!(b.distances.iter().all(|&d| d != UNREACHED));
    Ok(SchemeTable {
        max_index: radius,
        radius: Some(radius),
        p,
    })
}

/// One failed instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: char,
    pub indices: Vec<usize>,
    pub lhs: i128,
    pub rhs: i128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    /// Instances checked per identity `'a'..='f'`.
    pub checked: BTreeMap<char, usize>,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, id: char, indices: Vec<usize>, lhs: i128, rhs: i128) {
        *self.checked.entry(id).or_insert(0) += 1;
        if lhs != rhs {
            self.failures.push(IdentityFailure {
                identity: id,
                indices,
                lhs,
                rhs,
            });
        }
    }
}

/// Identities (a)–(f) of a symmetric association scheme, each instance
/// checked only when every term it involves is certified:
///
/// - (a) `p_{0,j}^k = δ_{j,k}`
/// - (b) `p_{i,j}^0 = δ_{i,j} p_{j,j}^0`
/// - (c) `p_{i,j}^k = p_{j,i}^k`
/// - (d) `Σ_j p_{i,j}^k = p_{i,i}^0`
/// - (e) `Σ_l p_{i,j}^l p_{l,k}^m = Σ_l p_{j,k}^l p_{i,l}^m`
/// - (f) `p_{i,j}^k p_{k,k}^0 = p_{i,k}^j p_{j,j}^0`
pub fn verify_scheme_identities(t: &SchemeTable) -> IdentityReport {
    let m = t.max_index;
    let p = |i, j, k| t.get(i, j, k) as i128;
    let c = |i, j| t.certified(i, j);
    let sum_ok = |s: usize| t.radius.is_none_or(|r| s <= r);
    let mut r = IdentityReport::default();
    for j in 0..=m {
        for k in 0..=m {
            if c(0, j) {
                r.check('a', vec![j, k], p(0, j, k), (j == k) as i128);
            }
        }
    }
    for i in 0..=m {
        for j in 0..=m {
            if c(i, j) && c(j, j) {
                let rhs = if i == j { p(j, j, 0) } else { 0 };
                r.check('b', vec![i, j], p(i, j, 0), rhs);
            }
            if c(i, j) {
                for k in 0..=m {
                    r.check('c', vec![i, j, k], p(i, j, k), p(j, i, k));
                }
            }
        }
    }
    for i in 0..=m {
        for k in 0..=m {
            if c(i, i) && sum_ok(2 * i + k) {
                let lhs: i128 = (0..=m).map(|j| p(i, j, k)).sum();
                r.check('d', vec![i, k], lhs, p(i, i, 0));
            }
        }
    }
    for i in 0..=m {
        for j in 0..=m {
            for k in 0..=m {
                if !sum_ok(i + j + k) || !(c(i, j) && c(j, k)) {
                    continue;
                }
                for mm in 0..=m {
                    let lhs: i128 = (0..=m).map(|l| p(i, j, l) * p(l, k, mm)).sum();
                    let rhs: i128 = (0..=m).map(|l| p(j, k, l) * p(i, l, mm)).sum();
                    r.check('e', vec![i, j, k, mm], lhs, rhs);
                }
            }
        }
    }
    for i in 0..=m {
        for j in 0..=m {
            for k in 0..=m {
                if c(i, j) && c(k, k) && c(i, k) && c(j, j) {
                    r.check(
                        'f',
                        vec![i, j, k],
                        p(i, j, k) * p(k, k, 0),
                        p(i, k, j) * p(j, j, 0),
                    );
                }
            }
        }
    }
    r
}

/// First disagreement between the engine's table and the intersection
/// number transform `P_{i,j}^k = p_{j,k}^i / p_{j,j}^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckMismatch {
    pub indices: (usize, usize, usize),
    pub engine: Rational,
    pub transform: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub checked: usize,
    pub mismatch: Option<CrosscheckMismatch>,
    /// `Some` only for finite graphs with at most [`BOSE_MESNER_LIMIT`]
    /// vertices.
    pub bose_mesner: Option<BoseMesnerReport>,
}

impl CrosscheckReport {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none() && self.bose_mesner.as_ref().is_none_or(|b| b.holds())
    }
}

pub const BOSE_MESNER_LIMIT: usize = 30;

/// Compares every certified table entry with the intersection-number
/// transform, and on small finite graphs also checks the matrix identities.
pub fn drg_coefficient_crosscheck(
    g: &Graph,
    v0: &Vertex,
    level: Option<usize>,
) -> Result<CrosscheckReport> {
    let table = convolution_table(g, v0, level)?;
    let scheme = intersection_numbers(g, v0, level)?;
    let (checked, mismatch) = transform_crosscheck(&table, &scheme);
    let bose_mesner = match g {
        Graph::Finite(fg) if fg.order() <= BOSE_MESNER_LIMIT => {
            let array = match check_distance_regular(g, None)?.array {
                Some(a) => a,
                None => return Err(Error::NotAScheme("graph is not distance-regular".into())),
            };
            Some(bose_mesner_check(fg, &table, &array))
        }
        _ => None,
    };
    Ok(CrosscheckReport {
        checked,
        mismatch,
        bose_mesner,
    })
}

pub fn transform_crosscheck(
    table: &ConvolutionTable,
    scheme: &SchemeTable,
) -> (usize, Option<CrosscheckMismatch>) {
    let mut checked = 0;
    for (&(i, j), row) in table.rows() {
        for k in 0..=scheme.max_index {
            if !(scheme.certified(j, k) && scheme.certified(j, j)) {
                continue;
            }
            let kj = scheme.valency(j);
            if kj == 0 {
                continue;
            }
            checked += 1;
            let transform = rational::from_counts(scheme.get(j, k, i) as usize, kj as usize);
            let engine = row.get(k);
            if engine != transform {
                return (
                    checked,
                    Some(CrosscheckMismatch {
                        indices: (i, j, k),
                        engine,
                        transform,
                    }),
                );
            }
        }
    }
    (checked, None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoseMesnerReport {
    /// `C^(i) C^(j) = Σ_k P_{i,j}^k C^(k)` with `C^(i) = A^(i) / p_{i,i}^0`.
    pub normalized_products: bool,
    /// `A^(i) A^(1) = b_{i-1} A^(i-1) + (b_0 - b_i - c_i) A^(i) + c_{i+1} A^(i+1)`.
    pub recurrence: bool,
}

impl BoseMesnerReport {
    pub fn holds(&self) -> bool {
        self.normalized_products && self.recurrence
    }
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for x in 0..n {
        for u in 0..n {
            if a[x][u] == 0 {
                continue;
            }
            for y in 0..n {
                out[x][y] += a[x][u] * b[u][y];
            }
        }
    }
    out
}

/// Dense matrix products of the distance matrices `A^(i)`.
pub fn bose_mesner_check(
    g: &FiniteGraph,
    table: &ConvolutionTable,
    array: &IntersectionArray,
) -> BoseMesnerReport {
    let d = g.distance_matrix();
    let n = g.order();
    let s = d.iter().flatten().copied().max().unwrap_or(0);
    let a: Vec<Vec<Vec<i64>>> = (0..=s)
        .map(|i| {
            (0..n)
                .map(|x| (0..n).map(|y| (d[x][y] == i) as i64).collect())
                .collect()
        })
        .collect();
    let valency: Vec<i64> = (0..=s).map(|i| a[i][0].iter().sum()).collect();

    let mut normalized_products = true;
    'outer: for i in 0..=s {
        for j in 0..=s {
            let prod = matmul(&a[i], &a[j]);
            let Some(row) = table.row(i, j) else {
                normalized_products = false;
                break 'outer;
            };
            for x in 0..n {
                for y in 0..n {
                    let k = d[x][y];
                    let lhs = rational::from_int(prod[x][y] * valency[k]);
                    let rhs = row.get(k) * rational::from_int(valency[i] * valency[j]);
                    if lhs != rhs {
                        normalized_products = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    let b = |i: isize| -> i64 {
        if i < 0 || i as usize >= array.b.len() {
            0
        } else {
            array.b[i as usize] as i64
        }
    };
    let c = |i: usize| -> i64 {
        if i == 0 || i > array.c.len() {
            0
        } else {
            array.c[i - 1] as i64
        }
    };
    let zero = vec![vec![0i64; n]; n];
    let mat = |i: isize| -> &Vec<Vec<i64>> {
        if i < 0 || i as usize > s {
            &zero
        } else {
            &a[i as usize]
        }
    };
    let mut recurrence = s >= 1 || n == 1;
    if s >= 1 {
        for i in 0..=s {
            let ii = i as isize;
            let lhs = matmul(&a[i], &a[1]);
            let coef = (b(ii - 1), b(0) - b(ii) - c(i), c(i + 1));
            for x in 0..n {
                for y in 0..n {
                    let rhs = coef.0 * mat(ii - 1)[x][y]
                        + coef.1 * mat(ii)[x][y]
                        + coef.2 * mat(ii + 1)[x][y];
                    if lhs[x][y] != rhs {
                        recurrence = false;
                    }
                }
            }
        }
    }
    BoseMesnerReport {
        normalized_products,
        recurrence,
    }
}

/// `(n, k, λ, μ)` for distance-regular graphs of diameter two; complete
/// graphs have diameter one and are excluded.
pub fn srg_parameters(g: &FiniteGraph) -> Option<(usize, usize, usize, usize)> {
    let graph = Graph::Finite(g.clone());
    let verdict = check_distance_regular(&graph, None).ok()?;
    let array = verdict.array?;
    if array.b.len() != 2 {
        return None;
    }
    let t = finite_scheme(g).ok()?;
    Some((
        g.order(),
        array.b[0],
        t.get(1, 1, 1) as usize,
        t.get(1, 1, 2) as usize,
    ))
}

fn parse_link_word(w: &str) -> Result<Vec<char>> {
    let chars: Vec<char> = w.chars().collect();
    let valid = !chars.is_empty()
        && chars.iter().all(|c| matches!(c, 'a' | 'b' | 'c'))
        && chars.windows(2).all(|p| p[0] != p[1]);
    if valid {
        Ok(chars)
    } else {
        Err(Error::ParameterOutOfRange(format!(
            "{w:?} is not a linked-triangle word (nonempty over a, b, c, no repeated letter)"
        )))
    }
}

/// Closed-form distance in the linked-triangle graph. With `k*` the first
/// position (1-based) where the words differ, the unique geodesic climbs
/// from `v` to its length-`k*` prefix, crosses one triangle edge and
/// descends to `w`: `m + n - 2k* + 1`. Without a differing position the
/// shorter word is a prefix of the longer one and the distance is `|m - n|`.
pub fn word_distance(v: &str, w: &str) -> Result<usize> {
    let a = parse_link_word(v)?;
    let b = parse_link_word(w)?;
    let (m, n) = (a.len(), b.len());
    match a.iter().zip(&b).position(|(x, y)| x != y) {
        Some(p) => Ok(m + n + 1 - 2 * (p + 1)),
        None => Ok(m.abs_diff(n)),
    }
}
