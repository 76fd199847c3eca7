//! Presentations of the multi-choice shift `X̂`.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::{Sym, Word};
use crate::bitset::VertexSet;
use crate::choice::{ChoiceAlphabet, ChoiceSymbol};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph};
use crate::spec::{all_words, Caps, SftSpec, ShiftSpec};

/// A presentation of `X̂`: graph labels index into `choices`.
#[derive(Clone, Debug)]
pub struct HatPresentation {
    pub choices: ChoiceAlphabet,
    pub graph: LabeledGraph,
}

impl HatPresentation {
    pub fn label(&self, edge: usize) -> ChoiceSymbol {
        self.choices.choice(self.graph.edges()[edge].label)
    }

    /// Number of fillings contributed by an edge.
    pub fn weight(&self, edge: usize) -> u64 {
        self.label(edge).size() as u64
    }
}

/// The multi-choice SFT of an SFT: a choice `(M+1)`-word is forbidden iff
/// one of its fillings is forbidden.
#[derive(Clone, Debug)]
pub struct HatSft {
    pub choices: ChoiceAlphabet,
    pub spec: SftSpec,
}

pub fn hat_sft(spec: &SftSpec, caps: &Caps) -> Result<HatSft> {
    let choices = ChoiceAlphabet::new(spec.alphabet(), caps.choice_symbols)?;
    let k = choices.symbols().len() as Sym;
    let mut forbidden = Vec::new();
    if !spec.forbidden().is_empty() {
        let len = spec.memory() + 1;
        let total = (k as f64).powi(len as i32);
        if total > caps.words as f64 {
            return Err(Error::budget("choice block enumeration", caps.words));
        }
        for w in all_words(k, len) {
            let hit = spec
                .forbidden()
                .iter()
                .any(|f| f.iter().zip(&w).all(|(&a, &c)| choices.choice(c).contains(a)));
            if hit {
                forbidden.push(Word(w));
            }
        }
    }
    let hat = SftSpec::new(choices.alphabet().clone(), forbidden)?;
    Ok(HatSft { choices, spec: hat })
}

/// A state of the sofic construction: for every filling class of the
/// choice word read so far, the set of vertices the filling can end at.
type Frontiers = BTreeSet<VertexSet>;

/// Presentation of `X̂` for a sofic `X` given by a trimmed right-resolving
/// graph. A choice symbol is readable from a state iff no filling branch
/// dies; the reachable part is then trimmed.
pub fn hat_sofic(g: &LabeledGraph, caps: &Caps) -> Result<HatPresentation> {
    g.require_right_resolving()?;
    let g = g.trim();
    if g.vertex_count() == 0 {
        return Err(Error::EmptyShift("graph has no bi-infinite path".into()));
    }
    let choices = ChoiceAlphabet::new(g.alphabet(), caps.choice_symbols)?;
    let start: Frontiers = BTreeSet::from([g.all_vertices()]);
    let mut states = vec![start.clone()];
    let mut ids: HashMap<Frontiers, usize> = HashMap::from([(start, 0)]);
    let mut edges = Vec::new();
    let mut succ_cache: HashMap<(VertexSet, Sym), VertexSet> = HashMap::new();
    let mut i = 0;
    while i < states.len() {
        'symbol: for (ci, &c) in choices.symbols().iter().enumerate() {
            let mut next = Frontiers::new();
            for s in &states[i] {
                for a in c.members() {
                    let t = succ_cache
                        .entry((s.clone(), a))
                        .or_insert_with(|| g.successors(s, a))
                        .clone();
                    if t.is_empty() {
                        continue 'symbol;
                    }
                    next.insert(t);
                }
            }
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= caps.states {
                        return Err(Error::blowup("multi-choice presentation", caps.states));
                    }
                    ids.insert(next.clone(), states.len());
                    states.push(next);
                    states.len() - 1
                }
            };
            edges.push(Edge {
                from: i,
                to: id,
                label: ci as Sym,
            });
        }
        i += 1;
    }
    let names = states
        .iter()
        .map(|st| {
            let parts: Vec<String> = st.iter().map(|s| g.subset_name(s)).collect();
            format!("[{}]", parts.join("|"))
        })
        .collect();
    let graph = LabeledGraph::new(choices.alphabet().clone(), names, edges)?.trim();
    Ok(HatPresentation { choices, graph })
}

/// Trimmed presentation of `X̂` for any spec: the SFT route for SFTs and
/// the frontier construction for sofic graphs.
pub fn hat_presentation(spec: &ShiftSpec, caps: &Caps) -> Result<HatPresentation> {
    match spec {
        ShiftSpec::Sft(s) => {
            let hat = hat_sft(s, caps)?;
            let graph = hat.spec.to_presentation(caps)?;
            Ok(HatPresentation {
                choices: hat.choices,
                graph,
            })
        }
        ShiftSpec::Sofic(_) => hat_sofic(&spec.presentation(caps)?, caps),
    }
}
