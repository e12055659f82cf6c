//! Concept taxonomy, typed instance graphs, and template unification.
//!
//! The ontology file is line oriented:
//!
//! ```text
//! # taxonomy
//! concept Thing
//! concept Event isa Thing
//! relation AGENT domain Event range Thing
//! ```
//!
//! Concepts form a DAG under `isa`; `subsumes` answers reachability queries
//! over it. Templates are instance patterns with variables; `unify` matches
//! a template against an instance graph and returns consistent bindings.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::syntax::{self, Pos};

#[derive(Debug, Error)]
pub enum OntologyError {
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("isa cycle: {}", chain.join(" -> "))]
    IsaCycle { chain: Vec<String> },
    #[error("undeclared concept `{name}` referenced by {referenced_by}")]
    Undeclared { name: String, referenced_by: String },
}

impl OntologyError {
    fn syntax(line: u32, col: u32, message: impl Into<String>) -> Self {
        OntologyError::Syntax {
            pos: Pos { line, col },
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationDecl {
    pub domain: Option<String>,
    pub range: Option<String>,
}

/// Concept taxonomy plus relation declarations.
#[derive(Debug, Clone, Default)]
pub struct Ontology {
    parents: BTreeMap<String, BTreeSet<String>>,
    relations: BTreeMap<String, RelationDecl>,
}

impl Ontology {
    /// Parse and check an ontology file. Multiple `isa` parents are allowed;
    /// the result must be acyclic and closed under declaration.
    pub fn load(text: &str) -> Result<Self, OntologyError> {
        let mut ont = Ontology::default();
        let mut pending: Vec<(String, String, Pos)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno as u32 + 1;
            let body = raw.split('#').next().unwrap_or("");
            let mut words = split_columns(body);
            let (first, col) = match words.next() {
                Some(w) => w,
                None => continue,
            };
            match first {
                "concept" => {
                    let (name, ncol) = words
                        .next()
                        .ok_or_else(|| OntologyError::syntax(line, col, "expected concept name"))?;
                    check_concept_name(name, line, ncol)?;
                    let name = name.trim_end_matches(',');
                    if ont.parents.contains_key(name) {
                        return Err(OntologyError::syntax(
                            line,
                            ncol,
                            format!("concept `{name}` declared twice"),
                        ));
                    }
                    let mut parents = BTreeSet::new();
                    if let Some((kw, kcol)) = words.next() {
                        if kw != "isa" {
                            return Err(OntologyError::syntax(
                                line,
                                kcol,
                                format!("expected `isa`, found `{kw}`"),
                            ));
                        }
                        let mut any = false;
                        for (p, pcol) in words {
                            let p = p.trim_end_matches(',');
                            if p.is_empty() {
                                continue;
                            }
                            check_concept_name(p, line, pcol)?;
                            pending.push((
                                name.to_string(),
                                p.to_string(),
                                Pos { line, col: pcol },
                            ));
                            parents.insert(p.to_string());
                            any = true;
                        }
                        if !any {
                            return Err(OntologyError::syntax(
                                line,
                                kcol,
                                "expected parent concept after `isa`",
                            ));
                        }
                    }
                    ont.parents.insert(name.to_string(), parents);
                }
                "relation" => {
                    let (name, ncol) = words.next().ok_or_else(|| {
                        OntologyError::syntax(line, col, "expected relation name")
                    })?;
                    if !syntax::is_relation_word(name) {
                        return Err(OntologyError::syntax(
                            line,
                            ncol,
                            format!("relation name `{name}` must be uppercase"),
                        ));
                    }
                    if ont.relations.contains_key(name) {
                        return Err(OntologyError::syntax(
                            line,
                            ncol,
                            format!("relation `{name}` declared twice"),
                        ));
                    }
                    let mut decl = RelationDecl::default();
                    while let Some((kw, kcol)) = words.next() {
                        let (slot, what) = match kw {
                            "domain" => (&mut decl.domain, "domain"),
                            "range" => (&mut decl.range, "range"),
                            other => {
                                return Err(OntologyError::syntax(
                                    line,
                                    kcol,
                                    format!("expected `domain` or `range`, found `{other}`"),
                                ))
                            }
                        };
                        let (c, ccol) = words.next().ok_or_else(|| {
                            OntologyError::syntax(line, kcol, format!("expected {what} concept"))
                        })?;
                        check_concept_name(c, line, ccol)?;
                        if slot.is_some() {
                            return Err(OntologyError::syntax(
                                line,
                                kcol,
                                format!("{what} given twice for relation `{name}`"),
                            ));
                        }
                        *slot = Some(c.to_string());
                        pending.push((
                            format!("relation {name}"),
                            c.to_string(),
                            Pos { line, col: ccol },
                        ));
                    }
                    ont.relations.insert(name.to_string(), decl);
                }
                other => {
                    return Err(OntologyError::syntax(
                        line,
                        col,
                        format!("expected `concept` or `relation`, found `{other}`"),
                    ))
                }
            }
        }
        for (referenced_by, name, _) in &pending {
            if !ont.parents.contains_key(name) {
                return Err(OntologyError::Undeclared {
                    name: name.clone(),
                    referenced_by: if referenced_by.starts_with("relation ") {
                        referenced_by.clone()
                    } else {
                        format!("concept `{referenced_by}`")
                    },
                });
            }
        }
        ont.check_acyclic()?;
        Ok(ont)
    }

    fn check_acyclic(&self) -> Result<(), OntologyError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Open,
            Done,
        }
        let mut marks: HashMap<&str, Mark> = HashMap::new();
        let mut stack: Vec<&str> = Vec::new();
        fn visit<'a>(
            ont: &'a Ontology,
            node: &'a str,
            marks: &mut HashMap<&'a str, Mark>,
            stack: &mut Vec<&'a str>,
        ) -> Result<(), OntologyError> {
            match marks.get(node) {
                Some(Mark::Done) => return Ok(()),
                Some(Mark::Open) => {
                    let from = stack.iter().position(|n| *n == node).unwrap_or(0);
                    let mut chain: Vec<String> =
                        stack[from..].iter().map(|s| s.to_string()).collect();
                    chain.push(node.to_string());
                    return Err(OntologyError::IsaCycle { chain });
                }
                None => {}
            }
            marks.insert(node, Mark::Open);
            stack.push(node);
            if let Some(parents) = ont.parents.get(node) {
                for p in parents {
                    visit(ont, p, marks, stack)?;
                }
            }
            stack.pop();
            marks.insert(node, Mark::Done);
            Ok(())
        }
        for name in self.parents.keys() {
            visit(self, name, &mut marks, &mut stack)?;
        }
        Ok(())
    }

    pub fn has_concept(&self, name: &str) -> bool {
        self.parents.contains_key(name)
    }

    pub fn has_relation(&self, name: &str) -> bool {
        self.relations.contains_key(name)
    }

    pub fn relation(&self, name: &str) -> Option<&RelationDecl> {
        self.relations.get(name)
    }

    pub fn concepts(&self) -> impl Iterator<Item = &str> {
        self.parents.keys().map(|s| s.as_str())
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &RelationDecl)> {
        self.relations.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Whether `general` subsumes `specific` (reflexive, via any isa path).
    /// Errors if either name is undeclared.
    pub fn subsumes(&self, general: &str, specific: &str) -> Result<bool, OntologyError> {
        for name in [general, specific] {
            if !self.has_concept(name) {
                return Err(OntologyError::Undeclared {
                    name: name.to_string(),
                    referenced_by: "subsumption query".to_string(),
                });
            }
        }
        Ok(self.reaches(general, specific))
    }

    /// Infallible subsumption used inside unification: undeclared names
    /// subsume only themselves.
    fn reaches(&self, general: &str, specific: &str) -> bool {
        if general == specific {
            return true;
        }
        let mut seen: HashSet<&str> = HashSet::new();
        let mut queue: VecDeque<&str> = VecDeque::new();
        queue.push_back(specific);
        seen.insert(specific);
        while let Some(node) = queue.pop_front() {
            if let Some(parents) = self.parents.get(node) {
                for p in parents {
                    if p == general {
                        return true;
                    }
                    if seen.insert(p) {
                        queue.push_back(p);
                    }
                }
            }
        }
        false
    }

    /// Structural checks for an instance graph against this ontology.
    pub fn validate_graph(&self, graph: &InstanceGraph) -> Vec<GraphViolation> {
        let mut out = Vec::new();
        let mut ids: HashSet<&str> = HashSet::new();
        for inst in graph.instances() {
            if !ids.insert(&inst.id) {
                out.push(GraphViolation::DuplicateId {
                    id: inst.id.clone(),
                });
            }
            self.check_instance_names(inst, &mut out);
        }
        for inst in graph.instances() {
            for (_, values) in &inst.slots {
                for v in values {
                    if let Value::Ref(target) = v {
                        if !ids.contains(target.as_str()) {
                            out.push(GraphViolation::DanglingReference {
                                from: inst.id.clone(),
                                to: target.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Name checks shared with interlingual validation, which resolves
    /// references against a wider index.
    pub(crate) fn check_instance_names(
        &self,
        inst: &ConceptInstance,
        out: &mut Vec<GraphViolation>,
    ) {
        if !self.has_concept(&inst.concept) {
            out.push(GraphViolation::UndeclaredConcept {
                instance: inst.id.clone(),
                concept: inst.concept.clone(),
            });
        }
        for (rel, _) in &inst.slots {
            if !self.has_relation(rel) {
                out.push(GraphViolation::UndeclaredRelation {
                    instance: inst.id.clone(),
                    relation: rel.clone(),
                });
            }
        }
    }
}

fn check_concept_name(name: &str, line: u32, col: u32) -> Result<(), OntologyError> {
    if syntax::is_concept_word(name) {
        Ok(())
    } else {
        Err(OntologyError::syntax(
            line,
            col,
            format!("concept name `{name}` must be capitalized"),
        ))
    }
}

/// Words of a line together with their 1-based columns.
fn split_columns(line: &str) -> impl Iterator<Item = (&str, u32)> {
    let mut rest = line;
    let mut col = 1u32;
    std::iter::from_fn(move || {
        loop {
            let c = rest.chars().next()?;
            if c.is_whitespace() || c == ',' {
                col += 1;
                rest = &rest[c.len_utf8()..];
            } else {
                break;
            }
        }
        let start_col = col;
        let mut len = 0;
        for c in rest.chars() {
            if c.is_whitespace() || c == ',' {
                break;
            }
            len += c.len_utf8();
            col += 1;
        }
        let word = &rest[..len];
        rest = &rest[len..];
        Some((word, start_col))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphViolation {
    DanglingReference { from: String, to: String },
    DuplicateId { id: String },
    UndeclaredConcept { instance: String, concept: String },
    UndeclaredRelation { instance: String, relation: String },
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphViolation::DanglingReference { from, to } => {
                write!(f, "instance `{from}` references missing instance `{to}`")
            }
            GraphViolation::DuplicateId { id } => write!(f, "duplicate instance id `{id}`"),
            GraphViolation::UndeclaredConcept { instance, concept } => {
                write!(
                    f,
                    "instance `{instance}` uses undeclared concept `{concept}`"
                )
            }
            GraphViolation::UndeclaredRelation { instance, relation } => {
                write!(
                    f,
                    "instance `{instance}` uses undeclared relation `{relation}`"
                )
            }
        }
    }
}

/// A typed instance with labelled slots. Slot order and filler order are
/// significant and preserved from the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptInstance {
    pub id: String,
    pub concept: String,
    pub slots: Vec<(String, Vec<Value>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    /// Embedded instance, owned by its parent slot.
    Instance(Box<ConceptInstance>),
    /// Reference to an instance defined elsewhere, by id.
    Ref(String),
    /// Enumerated literal such as `high`.
    Atom(String),
}

impl ConceptInstance {
    pub fn new(id: impl Into<String>, concept: impl Into<String>) -> Self {
        ConceptInstance {
            id: id.into(),
            concept: concept.into(),
            slots: Vec::new(),
        }
    }

    /// All fillers of `rel`, in order, across repeated slot mentions.
    pub fn fillers(&self, rel: &str) -> Vec<&Value> {
        self.slots
            .iter()
            .filter(|(r, _)| r == rel)
            .flat_map(|(_, vs)| vs.iter())
            .collect()
    }

    /// Append `value` under `rel`, merging with an existing slot of the
    /// same name.
    pub fn push_filler(&mut self, rel: &str, value: Value) {
        if let Some((_, vs)) = self.slots.iter_mut().find(|(r, _)| r == rel) {
            vs.push(value);
        } else {
            self.slots.push((rel.to_string(), vec![value]));
        }
    }

    /// This instance and every embedded instance, preorder.
    pub fn preorder(&self) -> Vec<&ConceptInstance> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a ConceptInstance>) {
        out.push(self);
        for (_, values) in &self.slots {
            for v in values {
                if let Value::Instance(inner) = v {
                    inner.collect(out);
                }
            }
        }
    }

    /// One-line rendering for explanations: `Concept(REL filler, ...)`.
    pub fn compact(&self) -> String {
        let mut s = self.concept.clone();
        if !self.slots.is_empty() {
            s.push('(');
            let mut first = true;
            for (rel, values) in &self.slots {
                for v in values {
                    if !first {
                        s.push_str(", ");
                    }
                    first = false;
                    s.push_str(rel);
                    s.push(' ');
                    match v {
                        Value::Instance(inner) => s.push_str(&inner.compact()),
                        Value::Ref(id) => s.push_str(id),
                        Value::Atom(a) => s.push_str(a),
                    }
                }
            }
            s.push(')');
        }
        s
    }
}

/// A forest of instances; the unit a situation is described in.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceGraph {
    pub roots: Vec<ConceptInstance>,
}

impl InstanceGraph {
    /// Every instance in the graph, roots first, preorder within each root.
    pub fn instances(&self) -> Vec<&ConceptInstance> {
        let mut out = Vec::new();
        for root in &self.roots {
            root.collect(&mut out);
        }
        out
    }
}

/// Id-to-instance lookup used to chase references during unification.
pub struct InstanceIndex<'a> {
    map: HashMap<&'a str, &'a ConceptInstance>,
}

impl<'a> InstanceIndex<'a> {
    pub fn from_trees(trees: impl IntoIterator<Item = &'a ConceptInstance>) -> Self {
        let mut map = HashMap::new();
        for tree in trees {
            for inst in tree.preorder() {
                map.entry(inst.id.as_str()).or_insert(inst);
            }
        }
        InstanceIndex { map }
    }

    pub fn of_graph(graph: &'a InstanceGraph) -> Self {
        Self::from_trees(&graph.roots)
    }

    pub fn get(&self, id: &str) -> Option<&'a ConceptInstance> {
        self.map.get(id).copied()
    }
}

/// Instance pattern: a concept with slots whose fillers may be variables,
/// nested templates, or atoms. `root_var`, when present, binds the id of
/// the instance the node matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub root_var: Option<String>,
    pub concept: String,
    pub slots: Vec<(String, Vec<TemplateValue>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplateValue {
    Node(Box<Template>),
    Var(String),
    Atom(String),
}

impl Template {
    pub fn new(concept: impl Into<String>) -> Self {
        Template {
            root_var: None,
            concept: concept.into(),
            slots: Vec::new(),
        }
    }

    /// Variable names mentioned anywhere in the template, sorted.
    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        if let Some(v) = &self.root_var {
            out.insert(v);
        }
        for (_, values) in &self.slots {
            for v in values {
                match v {
                    TemplateValue::Node(t) => t.collect_vars(out),
                    TemplateValue::Var(name) => {
                        out.insert(name);
                    }
                    TemplateValue::Atom(_) => {}
                }
            }
        }
    }

    /// This template and every nested template node, preorder.
    pub fn preorder(&self) -> Vec<&Template> {
        let mut out = Vec::new();
        self.collect_nodes(&mut out);
        out
    }

    fn collect_nodes<'a>(&'a self, out: &mut Vec<&'a Template>) {
        out.push(self);
        for (_, values) in &self.slots {
            for v in values {
                if let TemplateValue::Node(t) = v {
                    t.collect_nodes(out);
                }
            }
        }
    }

    /// One-line rendering for explanations.
    pub fn compact(&self) -> String {
        let mut s = self.concept.clone();
        if !self.slots.is_empty() {
            s.push('(');
            let mut first = true;
            for (rel, values) in &self.slots {
                for v in values {
                    if !first {
                        s.push_str(", ");
                    }
                    first = false;
                    s.push_str(rel);
                    s.push(' ');
                    match v {
                        TemplateValue::Node(t) => s.push_str(&t.compact()),
                        TemplateValue::Var(name) => {
                            s.push('?');
                            s.push_str(name);
                        }
                        TemplateValue::Atom(a) => s.push_str(a),
                    }
                }
            }
            s.push(')');
        }
        s
    }
}

/// What a variable is bound to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundValue {
    /// Id of a matched instance.
    Instance(String),
    /// A matched atom.
    Literal(String),
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Instance(id) => f.write_str(id),
            BoundValue::Literal(a) => f.write_str(a),
        }
    }
}

/// Variable assignment accumulated during unification. Iteration order is
/// the variable name order, so downstream output is deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings {
    map: BTreeMap<String, BoundValue>,
}

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn get(&self, var: &str) -> Option<&BoundValue> {
        self.map.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BoundValue)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn insert(&mut self, var: impl Into<String>, value: BoundValue) {
        self.map.insert(var.into(), value);
    }

    /// Bind `var` to `value`, failing on a conflict with an existing binding.
    fn bind(mut self, var: &str, value: BoundValue) -> Option<Bindings> {
        match self.map.get(var) {
            Some(existing) if *existing == value => Some(self),
            Some(_) => None,
            None => {
                self.map.insert(var.to_string(), value);
                Some(self)
            }
        }
    }
}

impl FromIterator<(String, BoundValue)> for Bindings {
    fn from_iter<T: IntoIterator<Item = (String, BoundValue)>>(iter: T) -> Self {
        Bindings {
            map: iter.into_iter().collect(),
        }
    }
}

/// How template and instance concepts must relate at each node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConceptMatch {
    /// Template concept subsumes the instance concept.
    PatternSubsumes,
    /// Subsumption in either direction is enough.
    EitherDirection,
    /// Concepts must be identical.
    Exact,
}

/// Unify `pattern` against `target`, extending `seed`. The pattern concept
/// must subsume the target concept at every node; each pattern filler must
/// match a distinct target filler of the same slot, in order; extra target
/// slots and fillers are ignored. Returns the first consistent assignment,
/// or `None`.
pub fn unify(
    ont: &Ontology,
    pattern: &Template,
    target: &ConceptInstance,
    index: &InstanceIndex,
    seed: &Bindings,
) -> Option<Bindings> {
    unify_with_mode(
        ont,
        pattern,
        target,
        index,
        seed,
        ConceptMatch::PatternSubsumes,
    )
}

pub fn unify_with_mode(
    ont: &Ontology,
    pattern: &Template,
    target: &ConceptInstance,
    index: &InstanceIndex,
    seed: &Bindings,
    mode: ConceptMatch,
) -> Option<Bindings> {
    unify_node(ont, pattern, target, index, seed.clone(), mode)
}

fn concepts_compatible(ont: &Ontology, pattern: &str, target: &str, mode: ConceptMatch) -> bool {
    match mode {
        ConceptMatch::PatternSubsumes => ont.reaches(pattern, target),
        ConceptMatch::EitherDirection => {
            ont.reaches(pattern, target) || ont.reaches(target, pattern)
        }
        ConceptMatch::Exact => pattern == target,
    }
}

fn unify_node(
    ont: &Ontology,
    pattern: &Template,
    target: &ConceptInstance,
    index: &InstanceIndex,
    bindings: Bindings,
    mode: ConceptMatch,
) -> Option<Bindings> {
    if !concepts_compatible(ont, &pattern.concept, &target.concept, mode) {
        return None;
    }
    let mut bindings = bindings;
    if let Some(var) = &pattern.root_var {
        bindings = bindings.bind(var, BoundValue::Instance(target.id.clone()))?;
    }
    for (rel, pattern_fillers) in &pattern.slots {
        let target_fillers = target.fillers(rel);
        bindings = match_fillers(ont, pattern_fillers, &target_fillers, index, bindings, mode)?;
    }
    Some(bindings)
}

/// Order-preserving injective assignment of pattern fillers to target
/// fillers, with backtracking; the first consistent assignment wins.
fn match_fillers(
    ont: &Ontology,
    pattern: &[TemplateValue],
    target: &[&Value],
    index: &InstanceIndex,
    bindings: Bindings,
    mode: ConceptMatch,
) -> Option<Bindings> {
    FillerSearch {
        ont,
        pattern,
        target,
        index,
        mode,
    }
    .go(bindings, 0, 0)
}

struct FillerSearch<'a> {
    ont: &'a Ontology,
    pattern: &'a [TemplateValue],
    target: &'a [&'a Value],
    index: &'a InstanceIndex<'a>,
    mode: ConceptMatch,
}

impl FillerSearch<'_> {
    fn go(&self, bindings: Bindings, pi: usize, floor: usize) -> Option<Bindings> {
        if pi == self.pattern.len() {
            return Some(bindings);
        }
        for ti in floor..self.target.len() {
            if let Some(next) = filler_unify(
                self.ont,
                &self.pattern[pi],
                self.target[ti],
                self.index,
                bindings.clone(),
                self.mode,
            ) {
                if let Some(done) = self.go(next, pi + 1, ti + 1) {
                    return Some(done);
                }
            }
        }
        None
    }
}

fn filler_unify(
    ont: &Ontology,
    pattern: &TemplateValue,
    target: &Value,
    index: &InstanceIndex,
    bindings: Bindings,
    mode: ConceptMatch,
) -> Option<Bindings> {
    match (pattern, target) {
        (TemplateValue::Node(t), Value::Instance(inst)) => {
            unify_node(ont, t, inst, index, bindings, mode)
        }
        (TemplateValue::Node(t), Value::Ref(id)) => {
            let inst = index.get(id)?;
            unify_node(ont, t, inst, index, bindings, mode)
        }
        (TemplateValue::Node(_), Value::Atom(_)) => None,
        (TemplateValue::Var(v), Value::Instance(inst)) => {
            bindings.bind(v, BoundValue::Instance(inst.id.clone()))
        }
        (TemplateValue::Var(v), Value::Ref(id)) => {
            bindings.bind(v, BoundValue::Instance(id.clone()))
        }
        (TemplateValue::Var(v), Value::Atom(a)) => bindings.bind(v, BoundValue::Literal(a.clone())),
        (TemplateValue::Atom(a), Value::Atom(b)) => (a == b).then_some(bindings),
        (TemplateValue::Atom(_), _) => None,
    }
}
