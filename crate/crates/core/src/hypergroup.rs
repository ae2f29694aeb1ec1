//! Hypergroup productivity: axiom audit, commutativity, associativity and
//! base-point classes.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convolution::{
    check_well_defined, convolution_table, ConvolutionRow, ConvolutionTable, DEFAULT_LAZY_LEVEL,
};
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    WellDefinedness,
    UnitMass,
    SupportBound,
    SupportCriterion,
    Commutativity,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::WellDefinedness => "well-definedness",
            Axiom::UnitMass => "unit-mass",
            Axiom::SupportBound => "support-bound",
            Axiom::SupportCriterion => "support-criterion",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

/// A violated axiom. `lhs` and `rhs` are the two sides that should agree;
/// for audit failures `lhs` is the offending row and `rhs` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub lhs: ConvolutionRow,
    pub rhs: ConvolutionRow,
}

/// Result of one check over a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub holds: bool,
    /// Number of index pairs or triples compared.
    pub checked: usize,
    /// Lexicographically smallest failing index tuple.
    pub witness: Option<Failure>,
}

fn outcome(checked: usize, mut failures: Vec<Failure>) -> CheckOutcome {
    failures.sort_by(|a, b| a.witness.cmp(&b.witness));
    CheckOutcome {
        holds: failures.is_empty(),
        checked,
        witness: failures.into_iter().next(),
    }
}

fn need(t: &ConvolutionTable, i: usize, j: usize) -> Result<&ConvolutionRow> {
    t.row(i, j).ok_or(Error::InsufficientDepth {
        required: i + j,
        available: t.certified_sum(),
    })
}

/// `row(i, j) == row(j, i)` for every stored pair.
pub fn check_commutativity(t: &ConvolutionTable) -> CheckOutcome {
    let failures: Vec<Failure> = t
        .rows()
        .iter()
        .filter(|((i, j), _)| i < j)
        .filter_map(|(&(i, j), r)| {
            let other = t.row(j, i)?;
            (r != other).then(|| Failure {
                axiom: Axiom::Commutativity,
                witness: vec![i, j],
                lhs: r.clone(),
                rhs: other.clone(),
            })
        })
        .collect();
    let checked = t.rows().keys().filter(|(i, j)| i < j).count();
    outcome(checked, failures)
}

/// Both expansions `(R_h ∘ R_i) ∘ R_j` and `R_h ∘ (R_i ∘ R_j)`.
pub fn expand_triple(
    t: &ConvolutionTable,
    h: usize,
    i: usize,
    j: usize,
) -> Result<(ConvolutionRow, ConvolutionRow)> {
    let hi = need(t, h, i)?;
    let ij = need(t, i, j)?;
    let lhs_terms: Vec<(&_, &ConvolutionRow)> = hi
        .entries()
        .iter()
        .map(|(l, c)| Ok((c, need(t, *l, j)?)))
        .collect::<Result<_>>()?;
    let rhs_terms: Vec<(&_, &ConvolutionRow)> = ij
        .entries()
        .iter()
        .map(|(l, c)| Ok((c, need(t, h, *l)?)))
        .collect::<Result<_>>()?;
    Ok((
        ConvolutionRow::combination(lhs_terms),
        ConvolutionRow::combination(rhs_terms),
    ))
}

fn resolve_bound(t: &ConvolutionTable, bound: Option<usize>) -> Result<usize> {
    let available = t.certified_sum();
    match bound {
        Some(b) if b > available => Err(Error::InsufficientDepth {
            required: b,
            available,
        }),
        Some(b) => Ok(b),
        None => Ok(available),
    }
}

fn triples(
    t: &ConvolutionTable,
    bound: usize,
    only_h: Option<usize>,
) -> Vec<(usize, usize, usize)> {
    let m = t.max_index();
    let mut out = Vec::new();
    for h in 0..=m {
        if only_h.is_some_and(|x| x != h) {
            continue;
        }
        for i in 0..=m {
            for j in 0..=m {
                if h + i + j <= bound {
                    out.push((h, i, j));
                }
            }
        }
    }
    out
}

fn check_triples(t: &ConvolutionTable, list: Vec<(usize, usize, usize)>) -> Result<CheckOutcome> {
    let checked = list.len();
    let results: Vec<Option<Failure>> = list
        .into_par_iter()
        .map(|(h, i, j)| {
            let (lhs, rhs) = expand_triple(t, h, i, j)?;
            Ok((lhs != rhs).then(|| Failure {
                axiom: Axiom::Associativity,
                witness: vec![h, i, j],
                lhs,
                rhs,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(outcome(checked, results.into_iter().flatten().collect()))
}

/// Associativity on every triple `(h, i, j)` with `h + i + j <= bound`
/// (default: everything the table certifies).
pub fn check_associativity_full(
    t: &ConvolutionTable,
    bound: Option<usize>,
) -> Result<CheckOutcome> {
    let b = resolve_bound(t, bound)?;
    check_triples(t, triples(t, b, None))
}

/// Only `(R_1 ∘ R_i) ∘ R_j = R_1 ∘ (R_i ∘ R_j)`. Together with
/// commutativity this implies full associativity; the conclusion rests on
/// that reduction, not on a direct check.
pub fn check_associativity_reduced(
    t: &ConvolutionTable,
    bound: Option<usize>,
) -> Result<CheckOutcome> {
    let b = resolve_bound(t, bound)?;
    check_triples(t, triples(t, b, Some(1)))
}

/// Unit mass, support bound and support criterion on every stored row.
pub fn audit_axioms(t: &ConvolutionTable) -> Vec<Failure> {
    let mut failures: Vec<Failure> = Vec::new();
    for (&(i, j), r) in t.rows() {
        let axiom = match r.audit(i, j) {
            None => continue,
            Some("support-bound") => Axiom::SupportBound,
            Some("support-criterion") => Axiom::SupportCriterion,
            Some(_) => Axiom::UnitMass,
        };
        if failures.iter().all(|f| f.axiom != axiom) {
            failures.push(Failure {
                axiom,
                witness: vec![i, j],
                lhs: r.clone(),
                rhs: ConvolutionRow::default(),
            });
        }
    }
    failures
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductivityVerdict {
    pub productive: bool,
    pub base: Vertex,
    /// Level bound: the eccentricity for finite graphs, the truncation level
    /// `L` for infinite ones.
    pub scope: usize,
    /// Largest `h + i + j` checked for associativity.
    pub triple_bound: usize,
    /// Infinite graphs: productive only up to `scope`.
    pub truncated: bool,
    pub failures: Vec<Failure>,
    pub table: Option<ConvolutionTable>,
}

/// Well-definedness, table, audit, commutativity, then full associativity
/// over every certified triple. Infinite graphs default to level 4.
pub fn productivity(g: &Graph, v0: &Vertex, level: Option<usize>) -> Result<ProductivityVerdict> {
    let wd = check_well_defined(g);
    if let Some(w) = wd.witness {
        return Ok(ProductivityVerdict {
            productive: false,
            base: v0.clone(),
            scope: wd.diameter.unwrap_or(0),
            triple_bound: 0,
            truncated: false,
            failures: vec![Failure {
                axiom: Axiom::WellDefinedness,
                witness: vec![w],
                lhs: ConvolutionRow::default(),
                rhs: ConvolutionRow::default(),
            }],
            table: None,
        });
    }
    let level = match g {
        Graph::Finite(_) => None,
        Graph::Lazy(_) => Some(level.unwrap_or(DEFAULT_LAZY_LEVEL)),
    };
    let t = convolution_table(g, v0, level)?;
    let mut failures = audit_axioms(&t);
    let comm = check_commutativity(&t);
    failures.extend(comm.witness);
    let assoc = check_associativity_full(&t, None)?;
    failures.extend(assoc.witness);
    Ok(ProductivityVerdict {
        productive: failures.is_empty(),
        base: v0.clone(),
        scope: t.max_level,
        triple_bound: t.certified_sum(),
        truncated: !g.is_finite(),
        failures,
        table: Some(t),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseClass {
    pub vertices: Vec<usize>,
    pub table: ConvolutionTable,
}

/// Vertices grouped by identical convolution tables, in order of their
/// smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePointClassification {
    pub classes: Vec<BaseClass>,
}

pub fn classify_base_points(g: &FiniteGraph) -> Result<BasePointClassification> {
    let graph = Graph::Finite(g.clone());
    let tables: Vec<ConvolutionTable> = (0..g.order())
        .into_par_iter()
        .map(|v| convolution_table(&graph, &Vertex::Id(v), None))
        .collect::<Result<_>>()?;
    let mut classes: Vec<BaseClass> = Vec::new();
    for (v, t) in tables.into_iter().enumerate() {
        match classes.iter_mut().find(|c| c.table.same_structure(&t)) {
            Some(c) => c.vertices.push(v),
            None => classes.push(BaseClass {
                vertices: vec![v],
                table: t,
            }),
        }
    }
    Ok(BasePointClassification { classes })
}

/// Whether every base point of a finite graph is productive. A graph with
/// several base classes is productive only if each class is.
pub fn graph_is_productive(g: &FiniteGraph) -> Result<bool> {
    if !crate::convolution::check_finite_well_defined(g).well_defined {
        return Ok(false);
    }
    let c = classify_base_points(g)?;
    for class in &c.classes {
        let t = &class.table;
        if !audit_axioms(t).is_empty()
            || !check_commutativity(t).holds
            || !check_associativity_full(t, None)?.holds
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some base point is productive (a productive pair exists).
pub fn has_productive_pair(g: &FiniteGraph) -> Result<bool> {
    if !crate::convolution::check_finite_well_defined(g).well_defined {
        return Ok(false);
    }
    let c = classify_base_points(g)?;
    for class in &c.classes {
        let t = &class.table;
        if audit_axioms(t).is_empty()
            && check_commutativity(t).holds
            && check_associativity_full(t, None)?.holds
        {
            return Ok(true);
        }
    }
    Ok(false)
}
