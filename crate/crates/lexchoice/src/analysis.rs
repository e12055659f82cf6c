//! The analysis half of translation at word granularity: given a source
//! word, its cluster, and bindings into a situation, emit the interlingual
//! contributions of that word: possibilities for its distinctions, an
//! attitude on the bound participant, style preferences for its non-neutral
//! style values.

use std::collections::HashSet;

use thiserror::Error;

use crate::ir::{AttitudeExpr, Possibility, StylePref, IR};
use crate::lexicon::{Cluster, Entry, Lexicon};
use crate::nuance::StyleLevel;
use crate::ontology::{
    unify, Bindings, BoundValue, ConceptInstance, InstanceGraph, InstanceIndex, Ontology, Template,
    TemplateValue, Value,
};

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisRequest {
    pub lemma: String,
    /// Required when the lemma appears in more than one cluster.
    pub cluster_id: Option<String>,
    /// Core-template variables to situation instance ids.
    pub bindings: Bindings,
    pub situation: InstanceGraph,
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
    #[error("lemma `{lemma}` appears in clusters {}; pass a cluster id", ids.join(", "))]
    AmbiguousLemma { lemma: String, ids: Vec<String> },
    #[error("unknown cluster `{0}`")]
    UnknownCluster(String),
    #[error("lemma `{lemma}` is not in cluster `{cluster}`")]
    LemmaNotInCluster { lemma: String, cluster: String },
    #[error("bindings are missing {}", missing.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join(", "))]
    IncompleteBindings { missing: Vec<String> },
    #[error("core template of `{cluster}` does not cover the situation")]
    CoreMismatch { cluster: String },
    #[error("attitude target ?{variable} is bound to an atom, not an instance")]
    AttitudeTarget { variable: String },
}

/// Produce the IR a single word contributes: the input situation plus the
/// entry's distinctions instantiated through the bindings, each tagged with
/// the lemma as its source.
pub fn analyze(
    lexicon: &Lexicon,
    ont: &Ontology,
    request: &AnalysisRequest,
) -> Result<IR, AnalysisError> {
    let (cluster, entry) = select_entry(lexicon, &request.lemma, request.cluster_id.as_deref())?;

    let mut wanted: std::collections::BTreeSet<&str> = cluster.core.variables();
    for d in &entry.distinctions {
        wanted.extend(d.concept.variables());
    }
    if let Some(att) = &entry.attitude {
        wanted.insert(&att.of);
    }
    let missing: Vec<String> = wanted
        .iter()
        .filter(|v| request.bindings.get(v).is_none())
        .map(|v| v.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(AnalysisError::IncompleteBindings { missing });
    }

    let index = InstanceIndex::of_graph(&request.situation);
    let bound = request
        .situation
        .instances()
        .into_iter()
        .find_map(|inst| unify(ont, &cluster.core, inst, &index, &request.bindings))
        .ok_or_else(|| AnalysisError::CoreMismatch {
            cluster: cluster.id.clone(),
        })?;

    let mut fresh = FreshIds::new(&entry.lemma, &request.situation);
    let mut ir = IR {
        situation: request.situation.clone(),
        ..IR::default()
    };
    for d in &entry.distinctions {
        ir.possibilities.push(Possibility {
            frequency: d.frequency,
            strength: d.strength,
            ptype: d.dtype,
            concept: instantiate(&d.concept, &bound, &mut fresh),
            source: Some(entry.lemma.clone()),
        });
    }
    if let Some(att) = &entry.attitude {
        match bound.get(&att.of) {
            Some(BoundValue::Instance(id)) => ir.attitudes.push(AttitudeExpr {
                value: att.value,
                of: id.clone(),
            }),
            _ => {
                return Err(AnalysisError::AttitudeTarget {
                    variable: att.of.clone(),
                })
            }
        }
    }
    for s in &entry.style {
        if s.level != StyleLevel::Neutral {
            ir.styles.push(StylePref {
                dimension: s.dimension.clone(),
                level: s.level,
            });
        }
    }
    Ok(ir)
}

fn select_entry<'a>(
    lexicon: &'a Lexicon,
    lemma: &str,
    cluster_id: Option<&str>,
) -> Result<(&'a Cluster, &'a Entry), AnalysisError> {
    match cluster_id {
        Some(id) => {
            let cluster = lexicon
                .cluster(id)
                .ok_or_else(|| AnalysisError::UnknownCluster(id.to_string()))?;
            let entry = cluster
                .entries
                .iter()
                .find(|e| e.lemma == lemma)
                .ok_or_else(|| AnalysisError::LemmaNotInCluster {
                    lemma: lemma.to_string(),
                    cluster: id.to_string(),
                })?;
            Ok((cluster, entry))
        }
        None => {
            let hits = lexicon.clusters_for_lemma(lemma);
            match hits.len() {
                0 => Err(AnalysisError::UnknownLemma(lemma.to_string())),
                1 => Ok(hits[0]),
                _ => Err(AnalysisError::AmbiguousLemma {
                    lemma: lemma.to_string(),
                    ids: hits.iter().map(|(c, _)| c.id.clone()).collect(),
                }),
            }
        }
    }
}

/// Build an instance of a distinction template: template nodes get fresh
/// ids, bound variables become references (or atoms), template atoms stay
/// atoms. Root variables are not honored here; validation rejects them on
/// distinctions.
fn instantiate(t: &Template, bindings: &Bindings, fresh: &mut FreshIds) -> ConceptInstance {
    let mut inst = ConceptInstance::new(fresh.next(), &t.concept);
    for (rel, values) in &t.slots {
        for v in values {
            let value = match v {
                TemplateValue::Node(inner) => {
                    Value::Instance(Box::new(instantiate(inner, bindings, fresh)))
                }
                TemplateValue::Var(name) => match bindings
                    .get(name)
                    .expect("caller checks bindings cover template variables")
                {
                    BoundValue::Instance(id) => Value::Ref(id.clone()),
                    BoundValue::Literal(a) => Value::Atom(a.clone()),
                },
                TemplateValue::Atom(a) => Value::Atom(a.clone()),
            };
            inst.push_filler(rel, value);
        }
    }
    inst
}

/// Fresh instance ids `<lemma>-n<k>`, skipping anything the situation
/// already uses. Whitespace in multi-word lemmas becomes hyphens so the
/// ids stay single tokens.
struct FreshIds {
    slug: String,
    k: u32,
    taken: HashSet<String>,
}

impl FreshIds {
    fn new(lemma: &str, situation: &InstanceGraph) -> Self {
        let slug: String = lemma
            .chars()
            .map(|c| if c.is_whitespace() { '-' } else { c })
            .collect();
        FreshIds {
            slug,
            k: 0,
            taken: situation.instances().iter().map(|i| i.id.clone()).collect(),
        }
    }

    fn next(&mut self) -> String {
        loop {
            self.k += 1;
            let id = format!("{}-n{}", self.slug, self.k);
            if self.taken.insert(id.clone()) {
                return id;
            }
        }
    }
}

/// Build the generic situation a cluster's core template describes: one
/// fresh instance per template node, plus one per variable (typed by the
/// relation's declared range, `Thing` otherwise). The bindings map every
/// core variable to its fresh instance.
pub fn instantiate_core(ont: &Ontology, cluster: &Cluster) -> (InstanceGraph, Bindings) {
    let mut builder = CoreBuilder {
        ont,
        k: 0,
        bindings: Bindings::new(),
    };
    let root = builder.build(&cluster.core);
    let graph = InstanceGraph { roots: vec![root] };
    (graph, builder.bindings)
}

struct CoreBuilder<'a> {
    ont: &'a Ontology,
    k: u32,
    bindings: Bindings,
}

impl CoreBuilder<'_> {
    fn fresh(&mut self) -> String {
        self.k += 1;
        format!("core-{}", self.k)
    }

    fn build(&mut self, t: &Template) -> ConceptInstance {
        let id = self.fresh();
        if let Some(var) = &t.root_var {
            if self.bindings.get(var).is_none() {
                self.bindings
                    .insert(var.clone(), BoundValue::Instance(id.clone()));
            }
        }
        let mut inst = ConceptInstance::new(id, &t.concept);
        for (rel, values) in &t.slots {
            for v in values {
                let value = match v {
                    TemplateValue::Node(inner) => Value::Instance(Box::new(self.build(inner))),
                    TemplateValue::Var(name) => match self.bindings.get(name) {
                        Some(BoundValue::Instance(id)) => Value::Ref(id.clone()),
                        Some(BoundValue::Literal(a)) => Value::Atom(a.clone()),
                        None => {
                            let concept = self
                                .ont
                                .relation(rel)
                                .and_then(|d| d.range.clone())
                                .unwrap_or_else(|| "Thing".to_string());
                            let leaf = ConceptInstance::new(self.fresh(), concept);
                            self.bindings
                                .insert(name.clone(), BoundValue::Instance(leaf.id.clone()));
                            Value::Instance(Box::new(leaf))
                        }
                    },
                    TemplateValue::Atom(a) => Value::Atom(a.clone()),
                };
                inst.push_filler(rel, value);
            }
        }
        inst
    }
}
