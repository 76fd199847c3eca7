//! JSON formats for shift specifications, graphs, plans and recoders.
//!
//! An SFT is `{"alphabet": [...], "forbidden": [["1","1"], ...]}`; forbidden
//! words may also be given as strings. A sofic shift is a labeled graph
//! `{"alphabet": [...], "vertices": [...], "edges": [{"from","to","label"}]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::boost::{BoostPlan, GammaFamily, ManualPlan, Recoder};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::language::words_of;
use crate::spec::{Caps, SftSpec, ShiftSpec};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum WordJson {
    Symbols(Vec<String>),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SftJson {
    pub alphabet: Vec<String>,
    pub forbidden: Vec<WordJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EdgeJson {
    pub from: String,
    pub to: String,
    pub label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub alphabet: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SpecJson {
    Sft(SftJson),
    Graph(GraphJson),
}

pub fn parse_spec(text: &str) -> Result<ShiftSpec> {
    match serde_json::from_str::<SpecJson>(text) {
        Ok(SpecJson::Sft(s)) => sft_from_json(&s).map(ShiftSpec::Sft),
        Ok(SpecJson::Graph(g)) => ShiftSpec::sofic(graph_from_json(&g)?),
        Err(_) => {
            // surface the error of the format the document most resembles
            let v: serde_json::Value = serde_json::from_str(text)?;
            if v.get("forbidden").is_some() {
                Err(serde_json::from_value::<SftJson>(v).unwrap_err().into())
            } else {
                Err(serde_json::from_value::<GraphJson>(v).unwrap_err().into())
            }
        }
    }
}

pub fn load_spec(path: &Path) -> Result<ShiftSpec> {
    parse_spec(&std::fs::read_to_string(path)?)
}

pub fn sft_from_json(s: &SftJson) -> Result<SftSpec> {
    let alphabet = Alphabet::new(s.alphabet.iter().cloned())?;
    let words = s
        .forbidden
        .iter()
        .map(|w| match w {
            WordJson::Symbols(parts) => parts
                .iter()
                .map(|p| alphabet.sym(p))
                .collect::<Result<Vec<_>>>()
                .map(Word),
            WordJson::Text(t) => alphabet.parse_word(t),
        })
        .collect::<Result<Vec<_>>>()?;
    SftSpec::new(alphabet, words)
}

pub fn graph_from_json(g: &GraphJson) -> Result<LabeledGraph> {
    let alphabet = Alphabet::new(g.alphabet.iter().cloned())?;
    let names: Vec<&str> = g.vertices.iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str, &str)> = g
        .edges
        .iter()
        .map(|e| (e.from.as_str(), e.to.as_str(), e.label.as_str()))
        .collect();
    LabeledGraph::from_names(alphabet, &names, &edges)
}

pub fn graph_to_json(g: &LabeledGraph) -> GraphJson {
    let a = g.alphabet();
    GraphJson {
        alphabet: a.symbols().to_vec(),
        vertices: g.vertices().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeJson {
                from: g.vertices()[e.from].clone(),
                to: g.vertices()[e.to].clone(),
                label: a.name(e.label).to_string(),
            })
            .collect(),
    }
}

pub fn sft_to_json(s: &SftSpec) -> SftJson {
    let a = s.alphabet();
    SftJson {
        alphabet: a.symbols().to_vec(),
        forbidden: s
            .forbidden()
            .iter()
            .map(|w| WordJson::Symbols(w.iter().map(|&x| a.name(x).to_string()).collect()))
            .collect(),
    }
}

pub fn load_manual_plan(path: &Path) -> Result<ManualPlan> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

/// Rounds to ten significant digits, the precision of every printed float.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanJson {
    pub epsilon: Option<f64>,
    pub core: GraphJson,
    pub v: usize,
    pub rho: usize,
    pub lambda: f64,
    pub alpha: f64,
    pub n: usize,
    pub k: usize,
    pub f: usize,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "S")]
    pub s: String,
    #[serde(rename = "C")]
    pub c: String,
    pub l: usize,
    pub ell: usize,
    pub r: usize,
    pub upsilon_count: String,
    pub buckets: Vec<BucketJson>,
    pub m_start: String,
    pub c_end: String,
    pub interval: Option<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BucketJson {
    pub ell: usize,
    pub r: usize,
    pub count: String,
}

pub fn plan_to_json(plan: &BoostPlan) -> PlanJson {
    let g = &plan.core.graph;
    let a = g.alphabet();
    PlanJson {
        epsilon: plan.epsilon,
        core: graph_to_json(g),
        v: plan.core.v,
        rho: plan.core.rho,
        lambda: round_sig(plan.core.lambda),
        alpha: round_sig(plan.core.alpha),
        n: plan.n,
        k: plan.k,
        f: plan.f(),
        m: a.render(&plan.marker.m),
        s: a.render(&plan.marker.s),
        c: a.render(&plan.marker.c),
        l: plan.l(),
        ell: plan.upsilon.ell,
        r: plan.upsilon.r,
        upsilon_count: plan.upsilon.count.to_string(),
        buckets: plan
            .upsilon
            .buckets
            .iter()
            .map(|(&(ell, r), c)| BucketJson {
                ell,
                r,
                count: c.to_string(),
            })
            .collect(),
        m_start: g.vertices()[plan.marker.m_start].clone(),
        c_end: g.vertices()[plan.marker.c_end].clone(),
        interval: plan.lengths.as_ref().map(|l| [round_sig(l.lower), round_sig(l.upper)]),
    }
}

/// A sliding block code either as its defining rule or as an explicit
/// window table.
#[derive(Clone, Debug, Serialize)]
pub struct CodeJson {
    pub memory: usize,
    pub anticipation: usize,
    pub rule: &'static str,
    /// `window → symbol`, windows rendered over the source alphabet.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<[String; 2]>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecoderJson {
    pub source_alphabet: Vec<String>,
    pub alphabet: Vec<String>,
    pub star: String,
    pub eta: usize,
    pub k: usize,
    pub gamma: Vec<String>,
    pub forward: CodeJson,
    pub inverse: CodeJson,
}

const FORWARD_RULE: &str = "bar(w) if w in gamma starts at i; star if one starts at i-j for 1 <= j <= memory; else x_i";
const INVERSE_RULE: &str =
    "x_i for base symbols; w_0 for bar(w); w_j for a star whose nearest bar(w) on the left is j steps away";

/// Serializes a recoder. The forward table is included when the windows of
/// the shift fit within the word cap.
pub fn recoder_to_json(family: &GammaFamily, rec: &Recoder, spec: &ShiftSpec, caps: &Caps) -> Result<RecoderJson> {
    let base = family.plan.core.graph.alphabet();
    let table = match words_of(&spec.presentation(caps)?, rec.forward.window_len(), caps.words) {
        Ok(windows) => Some(
            windows
                .iter()
                .map(|w| {
                    let s = rec
                        .forward
                        .eval(w)
                        .ok_or_else(|| Error::UndefinedWindow(base.render(w)))?;
                    Ok([base.render(w), rec.alphabet.name(s).to_string()])
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(RecoderJson {
        source_alphabet: base.symbols().to_vec(),
        alphabet: rec.alphabet.symbols().to_vec(),
        star: rec.alphabet.name(rec.star).to_string(),
        eta: rec.eta,
        k: rec.k,
        gamma: family.words()?.iter().map(|w| base.render(w)).collect(),
        forward: CodeJson {
            memory: rec.forward.memory,
            anticipation: rec.forward.anticipation,
            rule: FORWARD_RULE,
            table,
        },
        inverse: CodeJson {
            memory: rec.inverse.memory,
            anticipation: rec.inverse.anticipation,
            rule: INVERSE_RULE,
            table: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_formats() {
        let s = parse_spec(r#"{"alphabet":["0","1"],"forbidden":[["1","1"]]}"#).unwrap();
        assert!(matches!(s, ShiftSpec::Sft(_)));
        let s = parse_spec(r#"{"alphabet":["0","1"],"forbidden":["11"]}"#).unwrap();
        assert!(matches!(s, ShiftSpec::Sft(_)));
        let g = parse_spec(
            r#"{"alphabet":["0","1"],"vertices":["a","b"],
                "edges":[{"from":"a","to":"a","label":"0"},{"from":"a","to":"b","label":"1"},{"from":"b","to":"a","label":"1"}]}"#,
        )
        .unwrap();
        assert!(matches!(g, ShiftSpec::Sofic(_)));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_spec("{"), Err(Error::Json(_))));
        assert!(matches!(
            parse_spec(r#"{"alphabet":["0"],"forbidden":[["2"]]}"#),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"alphabet":["0"],"vertices":["a"],"edges":[{"from":"a","to":"b","label":"0"}]}"#),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"alphabet":["0"],"nothing":1}"#),
            Err(Error::Json(_))
        ));
    }

    #[test]
    fn graph_round_trip() {
        let even = crate::spec::catalog::even_shift();
        let ShiftSpec::Sofic(g) = &even else { unreachable!() };
        let back = graph_from_json(&graph_to_json(g)).unwrap();
        assert_eq!(&back, g);
    }

    #[test]
    fn ten_significant_digits() {
        assert_eq!(round_sig(0.346_573_590_279_972_6), 0.346_573_590_3);
        assert_eq!(round_sig(1_234.567_890_123), 1_234.567_89);
    }
}
