//! Serializable reports. Every report re-serializes byte-identically after a
//! parse: maps are ordered, rationals use the canonical `"num/den"` form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::convolution::{ConvolutionRow, ConvolutionTable};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::hypergroup::{BasePointClassification, Failure, ProductivityVerdict};
use crate::rational::{from_wire, to_wire};
use crate::scheme::{DrgVerdict, DrgWitness, SchemeTable};

/// `[[k, "num/den"], ...]`
pub type RowJson = Vec<(usize, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseJson {
    Id(usize),
    Key(String),
}

impl From<&Vertex> for BaseJson {
    fn from(v: &Vertex) -> Self {
        match v {
            Vertex::Id(i) => BaseJson::Id(*i),
            Vertex::Key(k) => BaseJson::Key(k.to_string()),
        }
    }
}

pub fn row_json(row: &ConvolutionRow) -> RowJson {
    row.entries()
        .iter()
        .map(|(k, q)| (*k, to_wire(q)))
        .collect()
}

pub fn row_from_json(row: &RowJson) -> Result<ConvolutionRow> {
    let entries = row
        .iter()
        .map(|(k, s)| Ok((*k, from_wire(s)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvolutionRow::from_entries(entries))
}

fn rows_json(t: &ConvolutionTable) -> BTreeMap<String, RowJson> {
    t.rows()
        .iter()
        .map(|(&(i, j), row)| (format!("{i},{j}"), row_json(row)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvolutionReport {
    pub base: BaseJson,
    pub max_level: usize,
    pub exact: bool,
    pub rows: BTreeMap<String, RowJson>,
}

impl ConvolutionReport {
    pub fn new(t: &ConvolutionTable) -> Self {
        ConvolutionReport {
            base: BaseJson::from(&t.base),
            max_level: t.max_level,
            exact: true,
            rows: rows_json(t),
        }
    }

    /// Rows keyed by `(i, j)`, parsed back into exact rationals.
    pub fn parse_rows(&self) -> Result<BTreeMap<(usize, usize), ConvolutionRow>> {
        self.rows
            .iter()
            .map(|(key, row)| {
                let (i, j) = key
                    .split_once(',')
                    .and_then(|(i, j)| Some((i.parse().ok()?, j.parse().ok()?)))
                    .ok_or_else(|| Error::Parse(format!("bad row key {key:?}")))?;
                Ok(((i, j), row_from_json(row)?))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureJson {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub lhs: RowJson,
    pub rhs: RowJson,
}

impl From<&Failure> for FailureJson {
    fn from(f: &Failure) -> Self {
        FailureJson {
            axiom: f.axiom.to_string(),
            witness: f.witness.clone(),
            lhs: row_json(&f.lhs),
            rhs: row_json(&f.rhs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassJson {
    pub vertices: Vec<usize>,
    pub rows: BTreeMap<String, RowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictReport {
    pub productive: bool,
    pub scope: usize,
    pub failures: Vec<FailureJson>,
    pub classes: Vec<ClassJson>,
}

impl VerdictReport {
    pub fn new(v: &ProductivityVerdict, classes: Option<&BasePointClassification>) -> Self {
        VerdictReport {
            productive: v.productive,
            scope: v.scope,
            failures: v.failures.iter().map(FailureJson::from).collect(),
            classes: classes
                .map(|c| {
                    c.classes
                        .iter()
                        .map(|class| ClassJson {
                            vertices: class.vertices.clone(),
                            rows: rows_json(&class.table),
                        })
                        .collect()
                })
                .unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayJson {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrgWitnessJson {
    pub quantity: String,
    pub distance: usize,
    pub reference: (String, String),
    pub reference_count: usize,
    pub offending: (String, String),
    pub offending_count: usize,
}

impl From<&DrgWitness> for DrgWitnessJson {
    fn from(w: &DrgWitness) -> Self {
        let pair = |(a, b): &(Vertex, Vertex)| (a.to_string(), b.to_string());
        DrgWitnessJson {
            quantity: w.quantity.to_string(),
            distance: w.distance,
            reference: pair(&w.reference),
            reference_count: w.reference_count,
            offending: pair(&w.offending),
            offending_count: w.offending_count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeReport {
    pub distance_regular: bool,
    pub intersection_array: Option<ArrayJson>,
    pub p: BTreeMap<String, u64>,
    pub srg: Option<(usize, usize, usize, usize)>,
    pub witness: Option<DrgWitnessJson>,
}

impl SchemeReport {
    pub fn new(
        v: &DrgVerdict,
        scheme: Option<&SchemeTable>,
        srg: Option<(usize, usize, usize, usize)>,
    ) -> Self {
        SchemeReport {
            distance_regular: v.distance_regular,
            intersection_array: v.array.as_ref().map(|a| ArrayJson {
                b: a.b.clone(),
                c: a.c.clone(),
            }),
            p: scheme
                .map(|s| {
                    s.entries()
                        .iter()
                        .filter(|(_, &n)| n > 0)
                        .map(|(&(i, j, k), &n)| (format!("{i},{j},{k}"), n))
                        .collect()
                })
                .unwrap_or_default(),
            srg,
            witness: v.witness.as_ref().map(DrgWitnessJson::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McReport {
    pub base: BaseJson,
    pub i: usize,
    pub j: usize,
    pub samples: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
    pub exact: RowJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchReport {
    pub order: usize,
    pub degree: usize,
    pub productive_only: bool,
    pub graphs: Vec<GraphJson>,
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string(report).expect("reports serialize")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::convolution_table;
    use crate::generators::FamilySpec;
    use crate::hypergroup::productivity;

    fn round_trip<T>(r: &T)
    where
        T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug,
    {
        let text = to_json(r);
        let back: T = from_json(&text).unwrap();
        assert_eq!(&back, r);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn convolution_report_round_trips() {
        let g = FamilySpec::Prism(3).build().unwrap();
        let t = convolution_table(&g, &Vertex::Id(0), None).unwrap();
        let r = ConvolutionReport::new(&t);
        assert_eq!(
            r.rows["1,1"],
            vec![(0, "1/3".into()), (1, "2/9".into()), (2, "4/9".into())]
        );
        round_trip(&r);
        assert_eq!(&r.parse_rows().unwrap(), t.rows());

        let g = FamilySpec::Ladder.build().unwrap();
        let base = g.parse_vertex("0,0").unwrap();
        let t = convolution_table(&g, &base, Some(2)).unwrap();
        let r = ConvolutionReport::new(&t);
        assert_eq!(r.base, BaseJson::Key("0,0".into()));
        round_trip(&r);
    }

    #[test]
    fn verdict_report_round_trips() {
        let g = FamilySpec::Lattice.build().unwrap();
        let v = productivity(&g, &g.default_base(), Some(3)).unwrap();
        let r = VerdictReport::new(&v, None);
        assert!(!r.productive);
        assert_eq!(r.failures[0].witness.len(), 3);
        round_trip(&r);
    }

    #[test]
    fn bad_rationals_are_rejected() {
        let text = r#"{"base":0,"max_level":1,"exact":true,"rows":{"1,1":[[0,"1/0"]]}}"#;
        let r: ConvolutionReport = from_json(text).unwrap();
        assert!(r.parse_rows().is_err());
    }
}
