//! Shared support for the randomized suites: a seeded generator for
//! taxonomies, lexicons, and representations, plus oracles that recompute
//! subsumption, template matching, and candidate scoring by brute force,
//! independently of the engine's own algorithms.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use lexchoice::{
    instantiate_core, load_lexicon, unify, AttitudeExpr, AttitudeValue, Bindings, BoundValue,
    ConceptInstance, Distinction, Entry, Frequency, InstanceGraph, InstanceIndex, Lexicon,
    NuanceType, Ontology, Possibility, Strength, StyleLevel, StylePref, Template, TemplateValue,
    Value, Weights, IR,
};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

/// Concepts declared in every generated taxonomy but never used by the
/// generator itself. Targeted tests build nuances from them, so those
/// nuances cannot accidentally match anything else.
pub const MARKER_A: &str = "Marka";
pub const MARKER_B: &str = "Markb";

/// Seeded source of random test inputs. Everything derives from one
/// ChaCha stream, so a failing case reproduces from its seed.
pub struct Gen {
    pub rng: ChaCha8Rng,
}

/// A generated taxonomy, kept both loaded and as the raw parent lists the
/// generator chose, so an oracle can be built without the loader.
pub struct Taxonomy {
    pub text: String,
    pub ontology: Ontology,
    /// Concept pool the other generators draw from; excludes the markers.
    pub concepts: Vec<String>,
    pub relations: Vec<String>,
    pub parents: BTreeMap<String, Vec<String>>,
}

/// Subsumption recomputed from the generator's parent lists with the
/// Floyd-Warshall closure, independent of the graph search in `Ontology`.
pub struct TaxonomyOracle {
    index: BTreeMap<String, usize>,
    reach: Vec<Vec<bool>>,
}

impl TaxonomyOracle {
    pub fn new(parents: &BTreeMap<String, Vec<String>>) -> TaxonomyOracle {
        let index: BTreeMap<String, usize> = parents
            .keys()
            .enumerate()
            .map(|(i, name)| (name.clone(), i))
            .collect();
        let n = index.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for (child, ps) in parents {
            for p in ps {
                reach[index[child]][index[p]] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    let via = reach[k].clone();
                    for (cell, step) in reach[i].iter_mut().zip(via) {
                        *cell = *cell || step;
                    }
                }
            }
        }
        TaxonomyOracle { index, reach }
    }

    /// Does `general` subsume `specific`? Unknown names subsume nothing.
    pub fn subsumes(&self, general: &str, specific: &str) -> bool {
        match (self.index.get(specific), self.index.get(general)) {
            (Some(&s), Some(&g)) => self.reach[s][g],
            _ => false,
        }
    }

    pub fn names(&self) -> Vec<&str> {
        self.index.keys().map(|s| s.as_str()).collect()
    }
}

/// One random template-matching problem for the matcher to solve.
pub struct UnifyCase {
    pub taxonomy: Taxonomy,
    pub oracle: TaxonomyOracle,
    pub pattern: Template,
    pub graph: InstanceGraph,
}

/// One random choice problem: a lexicon and a representation whose
/// situation is guaranteed to activate at least one cluster.
pub struct Scenario {
    pub taxonomy: Taxonomy,
    pub oracle: TaxonomyOracle,
    pub lexicon: Lexicon,
    pub lexicon_text: String,
    pub ir: IR,
    pub context: Vec<String>,
}

/// Up to three distinct variable names, with reuse so repeated variables
/// create cross-constraints.
struct VarPool {
    names: Vec<String>,
}

impl VarPool {
    fn new() -> VarPool {
        VarPool { names: Vec::new() }
    }

    fn var(&mut self, rng: &mut ChaCha8Rng) -> String {
        if !self.names.is_empty() && (self.names.len() >= 3 || rng.gen_bool(0.3)) {
            self.names[rng.gen_range(0..self.names.len())].clone()
        } else {
            let v = format!("v{}", self.names.len());
            self.names.push(v.clone());
            v
        }
    }
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.gen_range(0..items.len())]
    }

    fn atom(&mut self) -> String {
        format!("a{}", self.rng.gen_range(0..3))
    }

    /// A random acyclic taxonomy: each concept may name earlier concepts
    /// as parents, so cycles are impossible by construction. `Thing` and
    /// the two marker concepts are always declared, parentless.
    pub fn taxonomy(&mut self) -> Taxonomy {
        let n = self.rng.gen_range(3..=9);
        let names: Vec<String> = (0..n).map(|i| format!("Kind{i}")).collect();
        let mut parents: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut text = String::new();
        for i in 0..n {
            let mut ps: Vec<String> = Vec::new();
            if i > 0 {
                let count = self.rng.gen_range(0..=2.min(i));
                let mut earlier: Vec<usize> = (0..i).collect();
                earlier.shuffle(&mut self.rng);
                ps = earlier[..count].iter().map(|&j| names[j].clone()).collect();
                ps.sort();
            }
            if ps.is_empty() {
                text += &format!("concept {}\n", names[i]);
            } else {
                text += &format!("concept {} isa {}\n", names[i], ps.join(", "));
            }
            parents.insert(names[i].clone(), ps);
        }
        for extra in ["Thing", MARKER_A, MARKER_B] {
            text += &format!("concept {extra}\n");
            parents.insert(extra.to_string(), Vec::new());
        }
        let n_rel = self.rng.gen_range(2..=4);
        let relations: Vec<String> = (0..n_rel).map(|i| format!("REL{i}")).collect();
        for r in &relations {
            text += &format!("relation {r}\n");
        }
        let ontology = Ontology::load(&text).expect("generated taxonomy should load");
        Taxonomy {
            text,
            ontology,
            concepts: names,
            relations,
            parents,
        }
    }

    /// A matching problem over a fresh taxonomy. Half the patterns are
    /// carved out of the graph itself (so successes are common), half are
    /// independent (so failures are common).
    pub fn unify_case(&mut self) -> UnifyCase {
        let taxonomy = self.taxonomy();
        let oracle = TaxonomyOracle::new(&taxonomy.parents);
        let graph = self.instance_graph(&taxonomy);
        let pattern = if self.chance(0.5) {
            self.pattern_from_graph(&taxonomy, &graph)
        } else {
            let mut budget = self.rng.gen_range(1..=6);
            let mut vars = VarPool::new();
            self.random_template(&taxonomy, &mut budget, &mut vars, true)
        };
        UnifyCase {
            taxonomy,
            oracle,
            pattern,
            graph,
        }
    }

    /// A random instance graph with at most six instances. References may
    /// point at any instance created so far, including cyclically.
    fn instance_graph(&mut self, t: &Taxonomy) -> InstanceGraph {
        let total = self.rng.gen_range(1..=6);
        let n_roots = self.rng.gen_range(1..=2.min(total));
        let mut graph = InstanceGraph::default();
        let mut counter = 0;
        let mut made: Vec<String> = Vec::new();
        let mut budget = total;
        for r in 0..n_roots {
            let reserve = n_roots - 1 - r;
            let mut share = if reserve == 0 {
                budget
            } else {
                self.rng.gen_range(1..=budget - reserve)
            };
            budget -= share;
            let root = self.random_instance(t, &mut share, &mut counter, &mut made);
            graph.roots.push(root);
        }
        graph
    }

    fn random_instance(
        &mut self,
        t: &Taxonomy,
        budget: &mut usize,
        counter: &mut usize,
        made: &mut Vec<String>,
    ) -> ConceptInstance {
        *budget -= 1;
        let id = format!("i{}", *counter);
        *counter += 1;
        made.push(id.clone());
        let mut inst = ConceptInstance::new(id, self.pick(&t.concepts).clone());
        let n_slots = self.rng.gen_range(0..=2);
        let mut rels = t.relations.clone();
        rels.shuffle(&mut self.rng);
        for rel in rels.into_iter().take(n_slots) {
            let n_fill = self.rng.gen_range(1..=2);
            for _ in 0..n_fill {
                let v = if *budget > 0 && self.chance(0.5) {
                    Value::Instance(Box::new(self.random_instance(t, budget, counter, made)))
                } else if self.chance(0.3) {
                    Value::Ref(self.pick(made).clone())
                } else {
                    Value::Atom(self.atom())
                };
                inst.push_filler(&rel, v);
            }
        }
        inst
    }

    /// Derive a pattern from one of the graph's own instances: keep an
    /// ordered subset of each slot, generalize some concepts to ancestors,
    /// and turn some fillers into variables.
    fn pattern_from_graph(&mut self, t: &Taxonomy, graph: &InstanceGraph) -> Template {
        let index = InstanceIndex::of_graph(graph);
        let start = {
            let all = graph.instances();
            (*self.pick(&all)).clone()
        };
        let mut vars = VarPool::new();
        let mut budget = 6;
        self.templatize(t, &start, &index, &mut vars, &mut budget)
    }

    fn templatize(
        &mut self,
        t: &Taxonomy,
        inst: &ConceptInstance,
        index: &InstanceIndex,
        vars: &mut VarPool,
        budget: &mut usize,
    ) -> Template {
        *budget -= 1;
        let concept = if self.chance(0.4) {
            self.generalize(t, &inst.concept)
        } else {
            inst.concept.clone()
        };
        let mut tpl = Template::new(concept);
        if self.chance(0.25) {
            tpl.root_var = Some(vars.var(&mut self.rng));
        }
        for (rel, values) in &inst.slots {
            if self.chance(0.3) {
                continue;
            }
            let mut keep: Vec<TemplateValue> = Vec::new();
            for v in values {
                if self.chance(0.35) {
                    continue;
                }
                let tv = match v {
                    Value::Instance(inner) => {
                        if *budget > 0 && self.chance(0.5) {
                            TemplateValue::Node(Box::new(
                                self.templatize(t, inner, index, vars, budget),
                            ))
                        } else {
                            TemplateValue::Var(vars.var(&mut self.rng))
                        }
                    }
                    Value::Ref(id) => match index.get(id) {
                        Some(target) if *budget > 0 && self.chance(0.4) => TemplateValue::Node(
                            Box::new(self.templatize(t, target, index, vars, budget)),
                        ),
                        _ => TemplateValue::Var(vars.var(&mut self.rng)),
                    },
                    Value::Atom(a) => {
                        if self.chance(0.3) {
                            TemplateValue::Var(vars.var(&mut self.rng))
                        } else {
                            TemplateValue::Atom(a.clone())
                        }
                    }
                };
                keep.push(tv);
            }
            if !keep.is_empty() {
                tpl.slots.push((rel.clone(), keep));
            }
        }
        tpl
    }

    /// A random ancestor of `concept`, or the concept itself when it has
    /// no parents.
    fn generalize(&mut self, t: &Taxonomy, concept: &str) -> String {
        let mut ancestors: Vec<&String> = Vec::new();
        let mut frontier = vec![concept.to_string()];
        while let Some(c) = frontier.pop() {
            if let Some(ps) = t.parents.get(&c) {
                for p in ps {
                    ancestors.push(p);
                    frontier.push(p.clone());
                }
            }
        }
        if ancestors.is_empty() {
            concept.to_string()
        } else {
            (*self.pick(&ancestors)).clone()
        }
    }

    /// A pattern unrelated to any particular graph.
    fn random_template(
        &mut self,
        t: &Taxonomy,
        budget: &mut usize,
        vars: &mut VarPool,
        root: bool,
    ) -> Template {
        *budget -= 1;
        let mut tpl = Template::new(self.pick(&t.concepts).clone());
        if root && self.chance(0.2) {
            tpl.root_var = Some(vars.var(&mut self.rng));
        }
        let n_slots = self.rng.gen_range(0..=2);
        let mut rels = t.relations.clone();
        rels.shuffle(&mut self.rng);
        for rel in rels.into_iter().take(n_slots) {
            let n_fill = self.rng.gen_range(1..=2);
            let mut fillers = Vec::new();
            for _ in 0..n_fill {
                let tv = if *budget > 0 && self.chance(0.4) {
                    TemplateValue::Node(Box::new(self.random_template(t, budget, vars, false)))
                } else if self.chance(0.5) {
                    TemplateValue::Var(vars.var(&mut self.rng))
                } else {
                    TemplateValue::Atom(self.atom())
                };
                fillers.push(tv);
            }
            tpl.slots.push((rel, fillers));
        }
        tpl
    }

    /// A random lexicon over the taxonomy, written as text and run through
    /// the loader, so it is exactly what a file would have produced.
    fn lexicon(&mut self, t: &Taxonomy) -> (String, Lexicon) {
        let n_clusters = self.rng.gen_range(1..=3);
        let mut text = String::new();
        for k in 0..n_clusters {
            let mut core_vars: Vec<String> = Vec::new();
            let mut core = String::from("[ ");
            if self.chance(0.5) {
                core += "?e ";
                core_vars.push("e".to_string());
            }
            core += "instance-of ";
            core += self.pick(&t.concepts);
            let n_slots = self.rng.gen_range(1..=2);
            let mut rels = t.relations.clone();
            rels.shuffle(&mut self.rng);
            for (i, rel) in rels.iter().take(n_slots).enumerate() {
                if self.chance(0.8) {
                    core += &format!(" {rel} ?x{i}");
                    core_vars.push(format!("x{i}"));
                } else {
                    core += &format!(" {rel} [ instance-of {} ]", self.pick(&t.concepts));
                }
            }
            core += " ]";
            text += &format!("cluster xx:c{k}-c {{\n  language: xx\n  core: {core}\n");
            let n_entries = self.rng.gen_range(1..=4);
            for j in 0..n_entries {
                text += &format!("  entry w{k}x{j} {{\n");
                for _ in 0..self.rng.gen_range(0..=3) {
                    let mut fields = String::new();
                    if self.chance(0.8) {
                        let freq = ["never", "sometimes", "always"];
                        fields += &format!("frequency {} ", self.pick(&freq));
                    }
                    if self.chance(0.5) {
                        let strength = ["weak", "medium", "strong"];
                        fields += &format!("strength {} ", self.pick(&strength));
                    }
                    let dtype = ["emphasis", "suggestion", "implication", "denotation"];
                    fields += &format!("type {}", self.pick(&dtype));
                    let concept = self.distinction_template(t, &core_vars);
                    text += &format!("    distinction ( {fields} concept {concept} )\n");
                }
                if self.chance(0.35) {
                    let dim = if self.chance(0.8) {
                        "formality"
                    } else {
                        "politeness"
                    };
                    let level = ["low", "neutral", "high"];
                    text += &format!("    style ( {dim} {} )\n", self.pick(&level));
                }
                if self.chance(0.25) && !core_vars.is_empty() {
                    let value = ["pejorative", "neutral", "favorable"];
                    text += &format!(
                        "    attitude ( {} of ?{} )\n",
                        self.pick(&value),
                        self.pick(&core_vars)
                    );
                }
                if self.chance(0.25) {
                    text += &format!("    collocates: ctx{}\n", self.rng.gen_range(0..3));
                }
                text += "  }\n";
            }
            text += "}\n";
        }
        let lexicon = load_lexicon(&text, &t.ontology).expect("generated lexicon should load");
        (text, lexicon)
    }

    fn distinction_template(&mut self, t: &Taxonomy, core_vars: &[String]) -> String {
        let mut s = format!("[ instance-of {}", self.pick(&t.concepts));
        let n_slots = self.rng.gen_range(0..=2);
        let mut rels = t.relations.clone();
        rels.shuffle(&mut self.rng);
        for rel in rels.into_iter().take(n_slots) {
            let filler = if !core_vars.is_empty() && self.chance(0.55) {
                format!("?{}", self.pick(core_vars))
            } else if self.chance(0.5) {
                self.atom()
            } else {
                format!("[ instance-of {} ]", self.pick(&t.concepts))
            };
            s += &format!(" {rel} {filler}");
        }
        s + " ]"
    }

    /// A representation whose situation embeds one cluster's generic core,
    /// so that cluster is guaranteed to activate.
    fn representation(&mut self, t: &Taxonomy, lexicon: &Lexicon) -> IR {
        let anchor = self.rng.gen_range(0..lexicon.clusters().len());
        let (mut situation, _) = instantiate_core(&t.ontology, &lexicon.clusters()[anchor]);
        if self.chance(0.4) {
            let mut noise = ConceptInstance::new("noise1", self.pick(&t.concepts).clone());
            if self.chance(0.5) {
                let rel = self.pick(&t.relations).clone();
                let v = Value::Atom(self.atom());
                noise.push_filler(&rel, v);
            }
            situation.roots.push(noise);
        }
        let situation_ids: Vec<String> =
            situation.instances().iter().map(|i| i.id.clone()).collect();
        let mut ir = IR {
            situation,
            ..IR::default()
        };
        let mut counter = 0;
        for _ in 0..self.rng.gen_range(0..=3) {
            let concept = self.possibility_instance(t, &situation_ids, &mut counter, 1);
            let freq = [Frequency::Never, Frequency::Sometimes, Frequency::Always];
            let strength = [Strength::Weak, Strength::Medium, Strength::Strong];
            let ptype = [
                NuanceType::Emphasis,
                NuanceType::Suggestion,
                NuanceType::Implication,
                NuanceType::Denotation,
            ];
            ir.possibilities.push(Possibility {
                frequency: *self.pick(&freq),
                strength: *self.pick(&strength),
                ptype: *self.pick(&ptype),
                concept,
                source: if self.chance(0.3) {
                    Some("gen".to_string())
                } else {
                    None
                },
            });
        }
        for _ in 0..self.rng.gen_range(0..=2) {
            let value = [
                AttitudeValue::Pejorative,
                AttitudeValue::Neutral,
                AttitudeValue::Favorable,
            ];
            ir.attitudes.push(AttitudeExpr {
                value: *self.pick(&value),
                of: self.pick(&situation_ids).clone(),
            });
        }
        if self.chance(0.4) {
            let level = [StyleLevel::Low, StyleLevel::Neutral, StyleLevel::High];
            ir.styles.push(StylePref {
                dimension: "formality".to_string(),
                level: *self.pick(&level),
            });
        }
        ir
    }

    fn possibility_instance(
        &mut self,
        t: &Taxonomy,
        situation_ids: &[String],
        counter: &mut usize,
        depth: usize,
    ) -> ConceptInstance {
        let id = format!("p{}", *counter);
        *counter += 1;
        let mut inst = ConceptInstance::new(id, self.pick(&t.concepts).clone());
        let n_slots = self.rng.gen_range(0..=2);
        let mut rels = t.relations.clone();
        rels.shuffle(&mut self.rng);
        for rel in rels.into_iter().take(n_slots) {
            let v = if self.chance(0.5) {
                Value::Ref(self.pick(situation_ids).clone())
            } else if depth > 0 && self.chance(0.4) {
                Value::Instance(Box::new(self.possibility_instance(
                    t,
                    situation_ids,
                    counter,
                    depth - 1,
                )))
            } else {
                Value::Atom(self.atom())
            };
            inst.push_filler(&rel, v);
        }
        inst
    }

    pub fn scenario(&mut self) -> Scenario {
        let taxonomy = self.taxonomy();
        let oracle = TaxonomyOracle::new(&taxonomy.parents);
        let (lexicon_text, lexicon) = self.lexicon(&taxonomy);
        let ir = self.representation(&taxonomy, &lexicon);
        let context = if self.chance(0.4) {
            vec![format!("ctx{}", self.rng.gen_range(0..3))]
        } else {
            Vec::new()
        };
        Scenario {
            taxonomy,
            oracle,
            lexicon,
            lexicon_text,
            ir,
            context,
        }
    }
}

/// Concept-match requirement, mirroring the matcher's modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    Subsumes,
    Either,
    Exact,
}

/// Every value a variable could take in `instances`: each instance id and
/// each atom appearing in a slot.
pub fn candidate_values(instances: &[&ConceptInstance]) -> Vec<BoundValue> {
    let mut out: Vec<BoundValue> = Vec::new();
    for inst in instances {
        let id = BoundValue::Instance(inst.id.clone());
        if !out.contains(&id) {
            out.push(id);
        }
        for (_, values) in &inst.slots {
            for v in values {
                if let Value::Atom(a) = v {
                    let lit = BoundValue::Literal(a.clone());
                    if !out.contains(&lit) {
                        out.push(lit);
                    }
                }
            }
        }
    }
    out
}

/// Every consistent assignment extending `seed`, found by brute force:
/// the free variables range over `candidates`, and each full assignment
/// is checked against the whole template.
pub fn enumerate_matches(
    oracle: &TaxonomyOracle,
    pattern: &Template,
    target: &ConceptInstance,
    index: &InstanceIndex,
    seed: &Bindings,
    mode: MatchMode,
    candidates: &[BoundValue],
) -> Vec<Bindings> {
    let free: Vec<&str> = pattern
        .variables()
        .into_iter()
        .filter(|v| seed.get(v).is_none())
        .collect();
    let mut out = Vec::new();
    if free.is_empty() {
        if ground_match(oracle, pattern, target, index, seed, mode) {
            out.push(seed.clone());
        }
        return out;
    }
    if candidates.is_empty() {
        return out;
    }
    let mut odometer = vec![0usize; free.len()];
    loop {
        let mut full = seed.clone();
        for (var, &ci) in free.iter().zip(&odometer) {
            full.insert(*var, candidates[ci].clone());
        }
        if ground_match(oracle, pattern, target, index, &full, mode) {
            out.push(full);
        }
        let mut digit = 0;
        loop {
            odometer[digit] += 1;
            if odometer[digit] < candidates.len() {
                break;
            }
            odometer[digit] = 0;
            digit += 1;
            if digit == free.len() {
                return out;
            }
        }
    }
}

fn concept_ok(oracle: &TaxonomyOracle, pattern: &str, target: &str, mode: MatchMode) -> bool {
    match mode {
        MatchMode::Subsumes => oracle.subsumes(pattern, target),
        MatchMode::Either => oracle.subsumes(pattern, target) || oracle.subsumes(target, pattern),
        MatchMode::Exact => pattern == target,
    }
}

/// Check a template against an instance under a complete assignment.
/// Each slot must admit a strictly increasing choice of target fillers,
/// one per pattern filler, which is exactly an order-preserving injective
/// assignment.
fn ground_match(
    oracle: &TaxonomyOracle,
    pattern: &Template,
    target: &ConceptInstance,
    index: &InstanceIndex,
    full: &Bindings,
    mode: MatchMode,
) -> bool {
    if !concept_ok(oracle, &pattern.concept, &target.concept, mode) {
        return false;
    }
    if let Some(var) = &pattern.root_var {
        if full.get(var) != Some(&BoundValue::Instance(target.id.clone())) {
            return false;
        }
    }
    pattern.slots.iter().all(|(rel, pattern_fillers)| {
        let target_fillers = target.fillers(rel);
        combinations(target_fillers.len(), pattern_fillers.len())
            .into_iter()
            .any(|combo| {
                combo.iter().zip(pattern_fillers).all(|(&ti, pv)| {
                    ground_value(oracle, pv, target_fillers[ti], index, full, mode)
                })
            })
    })
}

fn ground_value(
    oracle: &TaxonomyOracle,
    pattern: &TemplateValue,
    target: &Value,
    index: &InstanceIndex,
    full: &Bindings,
    mode: MatchMode,
) -> bool {
    match (pattern, target) {
        (TemplateValue::Node(tpl), Value::Instance(inst)) => {
            ground_match(oracle, tpl, inst, index, full, mode)
        }
        (TemplateValue::Node(tpl), Value::Ref(id)) => index
            .get(id)
            .is_some_and(|inst| ground_match(oracle, tpl, inst, index, full, mode)),
        (TemplateValue::Node(_), Value::Atom(_)) => false,
        (TemplateValue::Var(v), Value::Instance(inst)) => {
            full.get(v) == Some(&BoundValue::Instance(inst.id.clone()))
        }
        (TemplateValue::Var(v), Value::Ref(id)) => {
            full.get(v) == Some(&BoundValue::Instance(id.clone()))
        }
        (TemplateValue::Var(v), Value::Atom(a)) => {
            full.get(v) == Some(&BoundValue::Literal(a.clone()))
        }
        (TemplateValue::Atom(a), Value::Atom(b)) => a == b,
        (TemplateValue::Atom(_), _) => false,
    }
}

/// All strictly increasing index tuples of length `k` over `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn frequency_value(w: &Weights, f: Frequency) -> f64 {
    w.frequency_value[match f {
        Frequency::Never => 0,
        Frequency::Sometimes => 1,
        Frequency::Always => 2,
    }]
}

fn strength_value(w: &Weights, s: Strength) -> f64 {
    w.strength_value[match s {
        Strength::Weak => 0,
        Strength::Medium => 1,
        Strength::Strong => 2,
    }]
}

fn directness_value(w: &Weights, t: NuanceType) -> f64 {
    w.directness[match t {
        NuanceType::Emphasis => 0,
        NuanceType::Suggestion => 1,
        NuanceType::Implication => 2,
        NuanceType::Denotation => 3,
    }]
}

fn level_offset(l: StyleLevel) -> i32 {
    match l {
        StyleLevel::Low => -1,
        StyleLevel::Neutral => 0,
        StyleLevel::High => 1,
    }
}

/// Lookup surfaces shared by every scoring step of one oracle run.
struct ScoreCtx<'a> {
    oracle: &'a TaxonomyOracle,
    index: &'a InstanceIndex<'a>,
    candidates: &'a [BoundValue],
    w: &'a Weights,
}

/// Satisfaction recomputed from the raw tables, with the concept match
/// decided by brute-force enumeration instead of the matcher.
fn oracle_satisfaction(
    ctx: &ScoreCtx,
    d: &Distinction,
    p: &Possibility,
    bindings: &Bindings,
) -> Option<f64> {
    let w = ctx.w;
    let mode = if w.strict_match {
        MatchMode::Exact
    } else {
        MatchMode::Either
    };
    if enumerate_matches(
        ctx.oracle,
        &d.concept,
        &p.concept,
        ctx.index,
        bindings,
        mode,
        ctx.candidates,
    )
    .is_empty()
    {
        return None;
    }
    let mut sat = if d.frequency == Frequency::Never && p.frequency == Frequency::Never {
        frequency_value(w, Frequency::Always)
    } else {
        let dir_gap = (directness_value(w, p.ptype) - directness_value(w, d.dtype)).abs();
        let str_gap = (strength_value(w, p.strength) - strength_value(w, d.strength)).abs();
        frequency_value(w, d.frequency) * (1.0 - dir_gap / 3.0) * (1.0 - str_gap)
    };
    if w.clamp {
        sat = sat.clamp(0.0, 1.0);
    }
    Some(sat)
}

/// One entry's total, accumulated step by step from the definition.
fn oracle_total(
    ctx: &ScoreCtx,
    entry: &Entry,
    ir: &IR,
    bindings: &Bindings,
    context: &[String],
) -> f64 {
    let w = ctx.w;
    let mut conveyed = vec![false; entry.distinctions.len()];
    let mut sum_sat = 0.0;
    for p in &ir.possibilities {
        let mut best: Option<f64> = None;
        for (j, d) in entry.distinctions.iter().enumerate() {
            if let Some(s) = oracle_satisfaction(ctx, d, p, bindings) {
                conveyed[j] = true;
                if best.is_none_or(|b| s > b) {
                    best = Some(s);
                }
            }
        }
        sum_sat += best.unwrap_or(0.0);
    }
    let mut n_unwanted = 0usize;
    for (j, d) in entry.distinctions.iter().enumerate() {
        if !conveyed[j]
            && d.frequency == Frequency::Always
            && matches!(d.dtype, NuanceType::Implication | NuanceType::Denotation)
        {
            n_unwanted += 1;
        }
    }
    let style_steps = ir
        .styles
        .iter()
        .map(|s| {
            let have = entry
                .style
                .iter()
                .find(|v| v.dimension == s.dimension)
                .map(|v| level_offset(v.level))
                .unwrap_or(0);
            ((have - level_offset(s.level)).abs()) as f64
        })
        .fold(0.0, |acc, x| acc + x);
    let style_penalty = w.beta * style_steps;
    let mismatches = ir
        .attitudes
        .iter()
        .filter(|a| match &entry.attitude {
            Some(ea) => {
                bindings.get(&ea.of) == Some(&BoundValue::Instance(a.of.clone()))
                    && ea.value != a.value
            }
            None => false,
        })
        .count();
    let attitude_penalty = w.alpha * mismatches as f64;
    let collocation_bonus = if entry.collocates.iter().any(|c| context.contains(c)) {
        w.kappa
    } else {
        0.0
    };
    sum_sat - w.gamma * n_unwanted as f64 - style_penalty - attitude_penalty + collocation_bonus
}

/// Rank candidate totals: best first, ties in entry order.
fn stable_rank(scored: Vec<(String, f64)>) -> Vec<(String, f64)> {
    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&a, &b| scored[b].1.total_cmp(&scored[a].1).then(a.cmp(&b)));
    order.into_iter().map(|i| scored[i].clone()).collect()
}

/// One activated cluster by id, with its ranked (lemma, total) list.
pub type RankedCluster = (String, Vec<(String, f64)>);

/// Rank every entry of every activated cluster by brute force. Activation
/// bindings are the matcher's own, but only after verifying they are among
/// the solutions enumeration finds for the same instance; everything after
/// that is recomputed from the definitions. Returns one pair per activated
/// cluster.
pub fn oracle_choose(
    oracle: &TaxonomyOracle,
    ont: &Ontology,
    lexicon: &Lexicon,
    ir: &IR,
    context: &[String],
    w: &Weights,
) -> Option<Vec<RankedCluster>> {
    let index = ir.instance_index();
    let candidates = candidate_values(&ir.instances());
    let ctx = ScoreCtx {
        oracle,
        index: &index,
        candidates: &candidates,
        w,
    };
    let mut out = Vec::new();
    for cluster in lexicon.clusters() {
        let mut found: Option<Bindings> = None;
        for inst in ir.situation.instances() {
            let sols = enumerate_matches(
                oracle,
                &cluster.core,
                inst,
                &index,
                &Bindings::new(),
                MatchMode::Subsumes,
                &candidates,
            );
            if sols.is_empty() {
                continue;
            }
            let got = unify(ont, &cluster.core, inst, &index, &Bindings::new())
                .expect("enumeration found a match the matcher missed");
            assert!(
                sols.contains(&got),
                "matcher bindings are not among the enumerated solutions"
            );
            found = Some(got);
            break;
        }
        let Some(bindings) = found else { continue };
        let scored: Vec<(String, f64)> = cluster
            .entries
            .iter()
            .map(|entry| {
                let total = oracle_total(&ctx, entry, ir, &bindings, context);
                (entry.lemma.clone(), total)
            })
            .collect();
        out.push((cluster.id.clone(), stable_rank(scored)));
    }
    if out.is_empty() {
        None
    } else {
        Some(out)
    }
}

/// A preference built on the first marker concept; only a deliberately
/// planted distinction can convey it.
pub fn marker_possibility(ptype: NuanceType, strength: Strength) -> Possibility {
    Possibility {
        frequency: Frequency::Always,
        strength,
        ptype,
        concept: ConceptInstance::new("marka1", MARKER_A),
        source: None,
    }
}

/// The distinction that conveys [`marker_possibility`] with satisfaction
/// exactly 1: same type, same strength, frequency always.
pub fn marker_distinction(ptype: NuanceType, strength: Strength) -> Distinction {
    Distinction {
        frequency: Frequency::Always,
        strength,
        dtype: ptype,
        concept: Template::new(MARKER_A),
    }
}

/// A distinction on the second marker concept that no preference wants:
/// always carried, direct, matching nothing.
pub fn stray_distinction() -> Distinction {
    Distinction {
        frequency: Frequency::Always,
        strength: Strength::Medium,
        dtype: NuanceType::Implication,
        concept: Template::new(MARKER_B),
    }
}

/// The default table with clamping off, paired with the same table whose
/// frequency values and weight knobs are scaled by `c`.
pub fn scaled_pair(c: f64) -> (Weights, Weights) {
    let base = Weights {
        clamp: false,
        ..Weights::default()
    };
    let mut scaled = base.clone();
    for v in &mut scaled.frequency_value {
        *v *= c;
    }
    scaled.gamma *= c;
    scaled.beta *= c;
    scaled.alpha *= c;
    scaled.kappa *= c;
    (base, scaled)
}

/// Rebuild a lexicon with one entry replaced.
pub fn with_entry(lexicon: &Lexicon, ci: usize, ei: usize, entry: Entry) -> Lexicon {
    let mut clusters = lexicon.clusters().to_vec();
    clusters[ci].entries[ei] = entry;
    Lexicon::new(lexicon.language.clone(), clusters)
}

/// Index of the cluster with `id`.
pub fn cluster_index(lexicon: &Lexicon, id: &str) -> usize {
    lexicon
        .clusters()
        .iter()
        .position(|c| c.id == id)
        .expect("cluster id from a choice result")
}
