//! The interlingual representation: one situation graph plus possibilities,
//! attitudes, and style preferences, with its text format.
//!
//! ```text
//! { situation
//!   [ provide1 instance-of MakingAvailable
//!     AGENT #1=[ accion instance-of Organization ] ]
//!   possibility ( frequency sometimes
//!     type suggestion
//!     concept [ foresight1 instance-of Foreseeing
//!       AGENT #1 ] ) % from the word `provides'
//!   attitude ( type neutral of #1 )
//!   style ( formality ( level high ) )
//! }
//! ```
//!
//! `#n=` labels an instance for cross-reference and `#n` refers to it; in
//! the parsed form references hold the instance id and labels disappear.
//! A `%` comment runs to end of line; one sitting on the closing line of a
//! possibility is kept as that possibility's source annotation.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::nuance::{AttitudeValue, Frequency, NuanceType, Strength, StyleLevel};
use crate::ontology::{
    ConceptInstance, GraphViolation, InstanceGraph, InstanceIndex, Ontology, Value,
};
use crate::syntax::{self, Cursor, Pos, SyntaxError, Token, TokenKind};

/// A nuance that may have been expressed, to be reread as a preference
/// during generation.
#[derive(Debug, Clone, PartialEq)]
pub struct Possibility {
    pub frequency: Frequency,
    pub strength: Strength,
    pub ptype: NuanceType,
    pub concept: ConceptInstance,
    /// Comment recording the word this possibility came from.
    pub source: Option<String>,
}

/// Speaker attitude toward one situation participant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttitudeExpr {
    pub value: AttitudeValue,
    /// Id of the instance the attitude targets.
    pub of: String,
}

/// Global style preference on one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StylePref {
    pub dimension: String,
    pub level: StyleLevel,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct IR {
    pub situation: InstanceGraph,
    pub possibilities: Vec<Possibility>,
    pub attitudes: Vec<AttitudeExpr>,
    pub styles: Vec<StylePref>,
}

impl IR {
    /// Situation instances followed by possibility concept instances,
    /// preorder within each tree.
    pub fn instances(&self) -> Vec<&ConceptInstance> {
        let mut out = self.situation.instances();
        for p in &self.possibilities {
            out.extend(p.concept.preorder());
        }
        out
    }

    /// Lookup over the shared id namespace of situation and possibilities.
    pub fn instance_index(&self) -> InstanceIndex<'_> {
        InstanceIndex::from_trees(
            self.situation
                .roots
                .iter()
                .chain(self.possibilities.iter().map(|p| &p.concept)),
        )
    }
}

#[derive(Debug, Error)]
pub enum IrError {
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{pos}: reference #{label} has no definition")]
    DanglingLabel { label: u32, pos: Pos },
    #[error("{pos}: label #{label} defined twice")]
    DuplicateLabel { label: u32, pos: Pos },
    #[error("{pos}: duplicate instance id `{id}`")]
    DuplicateId { id: String, pos: Pos },
    #[error("{pos}: unknown keyword `{word}`")]
    UnknownKeyword { word: String, pos: Pos },
}

impl From<SyntaxError> for IrError {
    fn from(e: SyntaxError) -> Self {
        IrError::Syntax {
            pos: e.pos,
            message: e.message,
        }
    }
}

/// Violations reported by [`validate_ir`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrViolation {
    Instance(GraphViolation),
    /// An attitude names an instance id that is not in the representation.
    AttitudeTarget {
        of: String,
    },
}

impl fmt::Display for IrViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrViolation::Instance(v) => v.fmt(f),
            IrViolation::AttitudeTarget { of } => {
                write!(f, "attitude references missing instance `{of}`")
            }
        }
    }
}

pub fn parse_ir(text: &str) -> Result<IR, IrError> {
    Parser::new(text)?.parse()
}

struct Parser {
    cur: Cursor,
    /// Ids seen so far, for duplicate detection.
    ids: HashSet<String>,
    /// Label -> instance id it defines.
    labels: HashMap<u32, String>,
    /// Every `#n` use, for dangling-reference reporting.
    uses: Vec<(u32, Pos)>,
}

/// Reference placeholder; instance ids cannot start with `#`, so these
/// cannot collide and are rewritten once all labels are known.
fn label_key(n: u32) -> String {
    format!("#{n}")
}

impl Parser {
    fn new(text: &str) -> Result<Self, IrError> {
        Ok(Parser {
            cur: Cursor::over(text)?,
            ids: HashSet::new(),
            labels: HashMap::new(),
            uses: Vec::new(),
        })
    }

    fn parse(mut self) -> Result<IR, IrError> {
        self.cur.expect(TokenKind::LBrace)?;
        self.cur.expect_keyword("situation")?;
        let mut ir = IR::default();
        loop {
            let pos = match self.cur.peek() {
                Some(t) if matches!(t.kind, TokenKind::LBracket | TokenKind::RefDef(_)) => t.pos,
                _ => break,
            };
            match self.parse_value()? {
                Value::Instance(inst) => ir.situation.roots.push(*inst),
                _ => {
                    return Err(
                        SyntaxError::new(pos, "expected situation instance, found atom").into(),
                    )
                }
            }
        }
        if ir.situation.roots.is_empty() {
            return Err(self.cur.error("expected situation instance").into());
        }
        loop {
            let tok = match self.cur.peek() {
                Some(t) => t.clone(),
                None => return Err(self.cur.error("expected `}`").into()),
            };
            match tok.kind {
                TokenKind::RBrace => {
                    self.cur.advance();
                    break;
                }
                TokenKind::Word(w) => match w.as_str() {
                    "possibility" => {
                        self.cur.advance();
                        ir.possibilities.push(self.parse_possibility()?);
                    }
                    "attitude" => {
                        self.cur.advance();
                        ir.attitudes.push(self.parse_attitude()?);
                    }
                    "style" => {
                        self.cur.advance();
                        ir.styles.push(self.parse_style()?);
                    }
                    _ => {
                        return Err(IrError::UnknownKeyword {
                            word: w,
                            pos: tok.pos,
                        })
                    }
                },
                _ => {
                    return Err(SyntaxError::new(
                        tok.pos,
                        format!("expected component or `}}`, found {}", tok.kind.describe()),
                    )
                    .into())
                }
            }
        }
        if !self.cur.at_end() {
            return Err(self.cur.error("unexpected input after `}`").into());
        }
        self.resolve(&mut ir)?;
        Ok(ir)
    }

    fn parse_possibility(&mut self) -> Result<Possibility, IrError> {
        self.cur.expect(TokenKind::LParen)?;
        let mut frequency = None;
        let mut strength = None;
        let mut ptype = None;
        let concept;
        loop {
            if matches!(self.cur.peek(), Some(t) if t.kind == TokenKind::RParen) {
                return Err(self.cur.error("possibility is missing a concept").into());
            }
            let (word, pos) = self.cur.expect_word("possibility field")?;
            match word.as_str() {
                "frequency" => {
                    self.set_field(&mut frequency, pos, "frequency", Frequency::from_keyword)?
                }
                "strength" => {
                    self.set_field(&mut strength, pos, "strength", Strength::from_keyword)?
                }
                "type" => self.set_field(&mut ptype, pos, "type", NuanceType::from_keyword)?,
                "concept" => {
                    let vpos = self.cur.here();
                    concept = match self.parse_value()? {
                        Value::Instance(inst) => *inst,
                        _ => {
                            return Err(SyntaxError::new(
                                vpos,
                                "possibility concept must be an instance",
                            )
                            .into())
                        }
                    };
                    break;
                }
                _ => return Err(IrError::UnknownKeyword { word, pos }),
            }
        }
        let ptype = match ptype {
            Some(t) => t,
            None => return Err(self.cur.error("possibility is missing a type").into()),
        };
        let rparen = self.cur.expect(TokenKind::RParen)?;
        let source = self.cur.take_comment_on_line(rparen.pos.line);
        Ok(Possibility {
            frequency: frequency.unwrap_or_default(),
            strength: strength.unwrap_or_default(),
            ptype,
            concept,
            source,
        })
    }

    fn set_field<T>(
        &mut self,
        slot: &mut Option<T>,
        at: Pos,
        what: &str,
        from_keyword: impl Fn(&str) -> Option<T>,
    ) -> Result<(), IrError> {
        let (word, pos) = self.cur.expect_word(&format!("{what} value"))?;
        let value = from_keyword(&word)
            .ok_or_else(|| SyntaxError::new(pos, format!("`{word}` is not a {what} value")))?;
        if slot.is_some() {
            return Err(SyntaxError::new(at, format!("{what} given twice")).into());
        }
        *slot = Some(value);
        Ok(())
    }

    fn parse_attitude(&mut self) -> Result<AttitudeExpr, IrError> {
        self.cur.expect(TokenKind::LParen)?;
        self.cur.expect_keyword("type")?;
        let (word, pos) = self.cur.expect_word("attitude value")?;
        let value = AttitudeValue::from_keyword(&word)
            .ok_or_else(|| SyntaxError::new(pos, format!("`{word}` is not an attitude value")))?;
        self.cur.expect_keyword("of")?;
        let of = match self.cur.advance() {
            Some(Token {
                kind: TokenKind::Ref(n),
                pos,
            }) => {
                self.uses.push((n, pos));
                label_key(n)
            }
            Some(tok) => {
                return Err(SyntaxError::new(
                    tok.pos,
                    format!(
                        "expected reference after `of`, found {}",
                        tok.kind.describe()
                    ),
                )
                .into())
            }
            None => return Err(self.cur.error("expected reference after `of`").into()),
        };
        self.cur.expect(TokenKind::RParen)?;
        Ok(AttitudeExpr { value, of })
    }

    fn parse_style(&mut self) -> Result<StylePref, IrError> {
        self.cur.expect(TokenKind::LParen)?;
        let (dimension, pos) = self.cur.expect_word("style dimension")?;
        if !syntax::is_plain_word(&dimension) {
            return Err(SyntaxError::new(pos, "style dimension must be lowercase").into());
        }
        self.cur.expect(TokenKind::LParen)?;
        self.cur.expect_keyword("level")?;
        let (word, wpos) = self.cur.expect_word("style level")?;
        let level = StyleLevel::from_keyword(&word)
            .ok_or_else(|| SyntaxError::new(wpos, format!("`{word}` is not a style level")))?;
        self.cur.expect(TokenKind::RParen)?;
        self.cur.expect(TokenKind::RParen)?;
        Ok(StylePref { dimension, level })
    }

    /// One `Value`: an instance, a labelled instance, a reference, or an
    /// atom (bare or bracketed).
    fn parse_value(&mut self) -> Result<Value, IrError> {
        let tok = match self.cur.advance() {
            Some(t) => t,
            None => return Err(self.cur.error("expected value").into()),
        };
        match tok.kind {
            TokenKind::LBracket => self.parse_bracket_body(),
            TokenKind::RefDef(n) => {
                self.cur.expect(TokenKind::LBracket)?;
                let value = self.parse_bracket_body()?;
                let id = match &value {
                    Value::Instance(inst) => inst.id.clone(),
                    _ => {
                        return Err(SyntaxError::new(
                            tok.pos,
                            "label must be attached to an instance",
                        )
                        .into())
                    }
                };
                if self.labels.insert(n, id).is_some() {
                    return Err(IrError::DuplicateLabel {
                        label: n,
                        pos: tok.pos,
                    });
                }
                Ok(value)
            }
            TokenKind::Ref(n) => {
                self.uses.push((n, tok.pos));
                Ok(Value::Ref(label_key(n)))
            }
            TokenKind::Word(w) if syntax::is_plain_word(&w) => Ok(Value::Atom(w)),
            other => Err(SyntaxError::new(
                tok.pos,
                format!("expected value, found {}", other.describe()),
            )
            .into()),
        }
    }

    /// Continue after `[`: either a bracketed atom `[ high ]` or a full
    /// instance body.
    fn parse_bracket_body(&mut self) -> Result<Value, IrError> {
        let (first, pos) = self.cur.expect_word("instance id or atom")?;
        if !syntax::is_plain_word(&first) {
            return Err(SyntaxError::new(
                pos,
                format!("expected lowercase instance id or atom, found `{first}`"),
            )
            .into());
        }
        if self.cur.eat(&TokenKind::RBracket) {
            return Ok(Value::Atom(first));
        }
        if !self.ids.insert(first.clone()) {
            return Err(IrError::DuplicateId { id: first, pos });
        }
        self.cur.expect_keyword("instance-of")?;
        let (concept, cpos) = self.cur.expect_word("concept name")?;
        if !syntax::is_concept_word(&concept) {
            return Err(SyntaxError::new(
                cpos,
                format!("expected capitalized concept name, found `{concept}`"),
            )
            .into());
        }
        let mut inst = ConceptInstance::new(first, concept);
        loop {
            let tok = match self.cur.peek() {
                Some(t) => t.clone(),
                None => return Err(self.cur.error("expected `]`").into()),
            };
            match tok.kind {
                TokenKind::RBracket => {
                    self.cur.advance();
                    break;
                }
                TokenKind::Word(w) if syntax::is_relation_word(&w) => {
                    self.cur.advance();
                    let mut any = false;
                    while self.at_value_start() {
                        let v = self.parse_value()?;
                        inst.push_filler(&w, v);
                        any = true;
                    }
                    if !any {
                        return Err(self
                            .cur
                            .error(format!("expected value after relation `{w}`"))
                            .into());
                    }
                }
                other => {
                    return Err(SyntaxError::new(
                        tok.pos,
                        format!("expected relation name or `]`, found {}", other.describe()),
                    )
                    .into())
                }
            }
        }
        Ok(Value::Instance(Box::new(inst)))
    }

    fn at_value_start(&self) -> bool {
        match self.cur.peek().map(|t| &t.kind) {
            Some(TokenKind::LBracket) | Some(TokenKind::Ref(_)) | Some(TokenKind::RefDef(_)) => {
                true
            }
            Some(TokenKind::Word(w)) => syntax::is_plain_word(w),
            _ => false,
        }
    }

    /// Replace `#n` placeholders with the ids their labels define.
    fn resolve(&self, ir: &mut IR) -> Result<(), IrError> {
        for (label, pos) in &self.uses {
            if !self.labels.contains_key(label) {
                return Err(IrError::DanglingLabel {
                    label: *label,
                    pos: *pos,
                });
            }
        }
        let map: HashMap<String, &String> = self
            .labels
            .iter()
            .map(|(n, id)| (label_key(*n), id))
            .collect();
        for root in &mut ir.situation.roots {
            rewrite_refs(root, &map);
        }
        for p in &mut ir.possibilities {
            rewrite_refs(&mut p.concept, &map);
        }
        for a in &mut ir.attitudes {
            if let Some(id) = map.get(&a.of) {
                a.of = (*id).clone();
            }
        }
        Ok(())
    }
}

fn rewrite_refs(inst: &mut ConceptInstance, map: &HashMap<String, &String>) {
    for (_, values) in &mut inst.slots {
        for v in values {
            match v {
                Value::Ref(s) => {
                    if let Some(id) = map.get(s) {
                        *s = (*id).clone();
                    }
                }
                Value::Instance(inner) => rewrite_refs(inner, map),
                Value::Atom(_) => {}
            }
        }
    }
}

/// Canonical text for an IR: 2-space indentation, components in order
/// situation, possibility, attitude, style; references emitted as `#n`
/// with `#n=` definitions at first occurrence.
pub fn serialize_ir(ir: &IR) -> String {
    let labels = assign_labels(ir);
    let mut out = String::from("{ situation\n");
    for root in &ir.situation.roots {
        out.push_str("  ");
        out.push_str(&render_instance(root, 2, &labels));
        out.push('\n');
    }
    for p in &ir.possibilities {
        out.push_str(&format!("  possibility ( frequency {}\n", p.frequency));
        out.push_str(&format!("    strength {}\n", p.strength));
        out.push_str(&format!("    type {}\n", p.ptype));
        out.push_str("    concept ");
        out.push_str(&render_instance(&p.concept, 4, &labels));
        out.push_str(" )");
        if let Some(source) = &p.source {
            out.push_str(" % ");
            out.push_str(source);
        }
        out.push('\n');
    }
    for a in &ir.attitudes {
        let target = match labels.get(a.of.as_str()) {
            Some(n) => format!("#{n}"),
            None => a.of.clone(),
        };
        out.push_str(&format!("  attitude ( type {} of {} )\n", a.value, target));
    }
    for s in &ir.styles {
        out.push_str(&format!(
            "  style ( {} ( level {} ) )\n",
            s.dimension, s.level
        ));
    }
    out.push_str("}\n");
    out
}

/// Number every cross-referenced instance in definition order.
fn assign_labels(ir: &IR) -> HashMap<&str, u32> {
    let mut referenced: HashSet<&str> = HashSet::new();
    for inst in ir.instances() {
        for (_, values) in &inst.slots {
            for v in values {
                if let Value::Ref(id) = v {
                    referenced.insert(id);
                }
            }
        }
    }
    for a in &ir.attitudes {
        referenced.insert(&a.of);
    }
    let mut labels = HashMap::new();
    let mut next = 1u32;
    for inst in ir.instances() {
        if referenced.contains(inst.id.as_str()) && !labels.contains_key(inst.id.as_str()) {
            labels.insert(inst.id.as_str(), next);
            next += 1;
        }
    }
    labels
}

fn render_instance(inst: &ConceptInstance, indent: usize, labels: &HashMap<&str, u32>) -> String {
    let mut s = String::new();
    if let Some(n) = labels.get(inst.id.as_str()) {
        s.push_str(&format!("#{n}="));
    }
    s.push_str(&format!("[ {} instance-of {}", inst.id, inst.concept));
    if inst.slots.is_empty() {
        s.push_str(" ]");
        return s;
    }
    let inner = indent + 2;
    for (rel, values) in &inst.slots {
        s.push('\n');
        s.push_str(&" ".repeat(inner));
        s.push_str(rel);
        for v in values {
            s.push(' ');
            match v {
                Value::Instance(child) => s.push_str(&render_instance(child, inner, labels)),
                Value::Ref(id) => match labels.get(id.as_str()) {
                    Some(n) => s.push_str(&format!("#{n}")),
                    None => s.push_str(id),
                },
                Value::Atom(a) => s.push_str(a),
            }
        }
    }
    s.push_str(" ]");
    s
}

/// Check every name against the ontology and every reference against the
/// representation's own id namespace.
pub fn validate_ir(ir: &IR, ont: &Ontology) -> Vec<IrViolation> {
    let mut graph_violations = Vec::new();
    let instances = ir.instances();
    let mut ids: HashSet<&str> = HashSet::new();
    for inst in &instances {
        if !ids.insert(&inst.id) {
            graph_violations.push(GraphViolation::DuplicateId {
                id: inst.id.clone(),
            });
        }
        ont.check_instance_names(inst, &mut graph_violations);
    }
    for inst in &instances {
        for (_, values) in &inst.slots {
            for v in values {
                if let Value::Ref(target) = v {
                    if !ids.contains(target.as_str()) {
                        graph_violations.push(GraphViolation::DanglingReference {
                            from: inst.id.clone(),
                            to: target.clone(),
                        });
                    }
                }
            }
        }
    }
    let mut out: Vec<IrViolation> = graph_violations
        .into_iter()
        .map(IrViolation::Instance)
        .collect();
    for a in &ir.attitudes {
        if !ids.contains(a.of.as_str()) {
            out.push(IrViolation::AttitudeTarget { of: a.of.clone() });
        }
    }
    out
}
