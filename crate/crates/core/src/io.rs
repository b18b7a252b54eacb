//! Exchange formats: JSON documents for every structure the library
//! builds, and Graphviz DOT for Hasse diagrams.
//!
//! Boolean elements are written as sorted lists of atom names, cubic
//! elements by index into the `elements` label list.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::collapse::Collapse;
use crate::constructions::{IntervalModel, PairModel};
use crate::corpus::{recognize, Instance, Origin};
use crate::cubic::CubicAlg;
use crate::error::{Error, Result};
use crate::implication::ImpAlg;
use crate::order::{hasse_covers, BoolAlg};
use crate::special::{build_lsb, Lsb};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            other => Err(Error::Format(format!("unsupported format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoolJson {
    pub atoms: Vec<String>,
}

/// A Boolean algebra nested in another document; carries its own
/// `"type": "bool"` tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename = "bool")]
pub struct AmbientJson {
    pub atoms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImpJson {
    pub ambient: AmbientJson,
    pub carrier: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicJson {
    pub elements: Vec<String>,
    pub top: usize,
    pub join: Vec<Vec<usize>>,
    pub delta: Vec<Vec<Option<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseJson {
    pub source: CubicJson,
    pub classes: Vec<Vec<usize>>,
    pub labels: Vec<String>,
    /// `order[i][j]` iff class `i` ≤ class `j`.
    pub order: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LsbJson {
    pub host: CubicJson,
    /// Each element as the host indices of its members.
    pub elements: Vec<Vec<usize>>,
    pub algebra: CubicJson,
    pub gcovers: Vec<Vec<usize>>,
    /// `embed[g]` is the element `[g, 1]` when it is present.
    pub embed: Vec<Option<usize>>,
}

/// Any document this module reads or writes, tagged by `"type"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Document {
    Bool(BoolJson),
    Imp(ImpJson),
    Cubic(CubicJson),
    Collapse(CollapseJson),
    Lsb(LsbJson),
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Bool(_) => "bool",
            Document::Imp(_) => "imp",
            Document::Cubic(_) => "cubic",
            Document::Collapse(_) => "collapse",
            Document::Lsb(_) => "lsb",
        }
    }

    /// The document as a named corpus instance, keeping track of which
    /// model it is when that can be told.
    pub fn into_instance(self, name: impl Into<String>) -> Result<Instance> {
        let name = name.into();
        match self {
            Document::Bool(b) => {
                let b = bool_from_json(&b)?;
                Ok(Instance::new(name, IntervalModel::new(&b)?.alg, Origin::Interval(b)))
            }
            Document::Imp(i) => {
                let imp = imp_from_json(&i)?;
                Ok(Instance::new(name, PairModel::new(&imp)?.alg, Origin::Pair(imp)))
            }
            other => Ok(recognize(name, other.into_cubic()?)),
        }
    }

    /// The cubic algebra a document describes. Boolean algebras give their
    /// interval algebra and implication algebras their pair algebra.
    pub fn into_cubic(self) -> Result<CubicAlg> {
        match self {
            Document::Bool(b) => Ok(IntervalModel::new(&bool_from_json(&b)?)?.alg),
            Document::Imp(i) => Ok(PairModel::new(&imp_from_json(&i)?)?.alg),
            Document::Cubic(c) => cubic_from_json(&c),
            other => Err(Error::Format(format!("a {} document is not an algebra", other.kind()))),
        }
    }
}

pub fn bool_to_json(b: &BoolAlg) -> BoolJson {
    BoolJson { atoms: b.atom_names().to_vec() }
}

pub fn bool_from_json(j: &BoolJson) -> Result<BoolAlg> {
    BoolAlg::with_atoms(&j.atoms)
}

pub fn imp_to_json(i: &ImpAlg) -> ImpJson {
    let b = i.ambient();
    let carrier = i.members().into_iter().map(|e| b.names_of(e).expect("member of own ambient")).collect();
    ImpJson { ambient: AmbientJson { atoms: b.atom_names().to_vec() }, carrier }
}

pub fn imp_from_json(j: &ImpJson) -> Result<ImpAlg> {
    let b = BoolAlg::with_atoms(&j.ambient.atoms)?;
    let carrier = j.carrier.iter().map(|names| b.from_names(names)).collect::<Result<Vec<_>>>()?;
    ImpAlg::from_carrier(&b, &carrier)
}

pub fn cubic_to_json(l: &CubicAlg) -> CubicJson {
    CubicJson { elements: l.labels().to_vec(), top: l.top(), join: l.join_rows(), delta: l.delta_rows() }
}

pub fn cubic_from_json(j: &CubicJson) -> Result<CubicAlg> {
    CubicAlg::from_tables(j.elements.clone(), j.top, j.join.clone(), j.delta.clone())
}

pub fn collapse_to_json(c: &Collapse) -> CollapseJson {
    let n = c.len();
    CollapseJson {
        source: cubic_to_json(c.source()),
        classes: c.classes().to_vec(),
        labels: (0..n).map(|i| c.class_label(i)).collect(),
        order: (0..n).map(|i| (0..n).map(|j| c.leq(i, j)).collect()).collect(),
    }
}

/// Recomputes the collapse of the stored source and checks that it
/// matches the stored classes and order.
pub fn collapse_from_json(j: &CollapseJson) -> Result<Collapse> {
    let c = Collapse::new(&cubic_from_json(&j.source)?)?;
    if collapse_to_json(&c) != *j {
        return Err(Error::Format("collapse document disagrees with its source algebra".into()));
    }
    Ok(c)
}

pub fn lsb_to_json(s: &Lsb) -> LsbJson {
    LsbJson {
        host: cubic_to_json(s.host()),
        elements: s.elements().iter().map(|e| e.members().to_vec()).collect(),
        algebra: cubic_to_json(s.alg()),
        gcovers: s.gcovers().iter().map(|g| g.members().to_vec()).collect(),
        embed: (0..s.host().len()).map(|g| s.embed(g)).collect(),
    }
}

/// Rebuilds `ℒ_sB` from the stored host and checks it against the rest of
/// the document.
pub fn lsb_from_json(j: &LsbJson) -> Result<Lsb> {
    let host = cubic_from_json(&j.host)?;
    let s = build_lsb(&Collapse::new(&host)?)?;
    if lsb_to_json(&s) != *j {
        return Err(Error::Format("ℒ_sB document disagrees with its host".into()));
    }
    Ok(s)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dot_graph(name: &str, labels: &[String], covers: &[(usize, usize)], dashed: &[(usize, usize)]) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n  node [shape=box];\n", quote(name));
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(l));
    }
    for (a, b) in covers {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    for (a, b) in dashed {
        let _ = writeln!(out, "  n{a} -> n{b} [style=dashed, dir=both, constraint=false];");
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of `l`, with `x ⇢ Δ(1, x)` drawn once per unordered pair.
pub fn cubic_to_dot(l: &CubicAlg) -> String {
    let dashed: Vec<(usize, usize)> = (0..l.len()).map(|x| (x, l.antipode(x))).filter(|&(x, y)| x < y).collect();
    dot_graph("cubic", l.labels(), &l.hasse(), &dashed)
}

/// Hasse diagram of the quotient `ℒ/∼`.
pub fn collapse_to_dot(c: &Collapse) -> String {
    let labels: Vec<String> = (0..c.len()).map(|i| c.class_label(i)).collect();
    dot_graph("collapse", &labels, &hasse_covers(c.len(), |i, j| c.leq(i, j)), &[])
}

pub fn lsb_to_dot(s: &Lsb) -> String {
    cubic_to_dot(s.alg())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solid_edges(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("->") && !l.contains("dashed")).count()
    }

    fn nodes(dot: &str) -> usize {
        dot.lines().filter(|l| l.trim_start().starts_with('n') && l.contains("[label=")).count()
    }

    fn interval(n: usize) -> CubicAlg {
        IntervalModel::new(&BoolAlg::new(n, None).unwrap()).unwrap().alg
    }

    #[test]
    fn cubic_round_trip() {
        let l = interval(1);
        let text = Document::Cubic(cubic_to_json(&l)).to_json();
        assert!(text.contains("\"type\": \"cubic\""));
        assert_eq!(Document::parse(&text).unwrap().into_cubic().unwrap(), l);
    }

    #[test]
    fn bool_and_imp_round_trip() {
        let b = BoolAlg::with_atoms(&["p", "q"]).unwrap();
        let doc = Document::Bool(bool_to_json(&b));
        assert_eq!(doc.to_json().replace([' ', '\n'], ""), r#"{"type":"bool","atoms":["p","q"]}"#);
        let imp = ImpAlg::from_carrier(&b, &[b.from_names(&["p"]).unwrap(), b.top()]).unwrap();
        let j = imp_to_json(&imp);
        let text = Document::Imp(j.clone()).to_json().replace([' ', '\n'], "");
        assert!(text.starts_with(r#"{"type":"imp","ambient":{"type":"bool","atoms":["p","q"]}"#), "{text}");
        assert_eq!(j.carrier, vec![vec!["p".to_string()], vec!["p".into(), "q".into()]]);
        let back = match Document::parse(&Document::Imp(j).to_json()).unwrap() {
            Document::Imp(i) => imp_from_json(&i).unwrap(),
            _ => unreachable!(),
        };
        assert_eq!(back, imp);
    }

    #[test]
    fn collapse_and_lsb_round_trip() {
        let c = Collapse::new(&interval(2)).unwrap();
        let j = collapse_to_json(&c);
        assert_eq!(collapse_from_json(&j).unwrap().classes(), c.classes());
        let mut bad = j.clone();
        bad.classes.swap(0, 1);
        assert!(collapse_from_json(&bad).is_err());

        let s = build_lsb(&Collapse::new(&interval(1)).unwrap()).unwrap();
        let text = Document::Lsb(lsb_to_json(&s)).to_json();
        match Document::parse(&text).unwrap() {
            Document::Lsb(j) => assert_eq!(lsb_from_json(&j).unwrap().alg(), s.alg()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn dot_of_small_interval_algebra() {
        let l = interval(1);
        let dot = cubic_to_dot(&l);
        assert!(dot.starts_with("digraph"));
        assert_eq!(nodes(&dot), 3);
        assert_eq!(solid_edges(&dot), 2);
        assert_eq!(dot.matches("dashed").count(), 1);
    }

    #[test]
    fn dot_of_collapse_quotient() {
        let dot = collapse_to_dot(&Collapse::new(&interval(2)).unwrap());
        assert_eq!(nodes(&dot), 4);
        assert_eq!(solid_edges(&dot), 4);
    }

    #[test]
    fn format_names() {
        assert_eq!("dot".parse::<Format>().unwrap(), Format::Dot);
        assert!(matches!("yaml".parse::<Format>(), Err(Error::Format(_))));
        assert!(Document::parse(r#"{"type":"nope"}"#).is_err());
    }
}
