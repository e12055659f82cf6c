//! Clustered lexical knowledge: per-language clusters of near-synonyms that
//! share a core concept and differ in peripheral distinctions, style,
//! attitude, and collocations.
//!
//! ```text
//! cluster en:provide-c {
//!   language: en
//!   core: [ instance-of MakingAvailable AGENT ?a OBJECT ?o ]
//!   entry provide {
//!     distinction ( frequency sometimes type suggestion
//!       concept [ instance-of Foreseeing AGENT ?a ] )
//!     style ( formality neutral )
//!     collocates: assistance
//!   }
//! }
//! ```
//!
//! Distinction templates may use only variables that the core template
//! introduces; that is what lets a distinction be instantiated for any
//! situation the core matches.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::nuance::{AttitudeValue, Frequency, NuanceType, Strength, StyleLevel};
use crate::ontology::{Ontology, Template, TemplateValue};
use crate::syntax::{self, Cursor, Pos, SyntaxError, TokenKind};

/// One peripheral nuance a word may convey.
#[derive(Debug, Clone, PartialEq)]
pub struct Distinction {
    pub frequency: Frequency,
    pub strength: Strength,
    pub dtype: NuanceType,
    pub concept: Template,
}

/// A word's position on one style dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StyleValue {
    pub dimension: String,
    pub level: StyleLevel,
}

/// A word's attitude toward the participant a core variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttitudeSpec {
    pub value: AttitudeValue,
    pub of: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub lemma: String,
    pub distinctions: Vec<Distinction>,
    pub style: Vec<StyleValue>,
    pub attitude: Option<AttitudeSpec>,
    pub collocates: Vec<String>,
}

impl Entry {
    pub fn new(lemma: impl Into<String>) -> Self {
        Entry {
            lemma: lemma.into(),
            distinctions: Vec::new(),
            style: Vec::new(),
            attitude: None,
            collocates: Vec::new(),
        }
    }

    /// Level on `dimension`, neutral when unstated.
    pub fn style_level(&self, dimension: &str) -> StyleLevel {
        self.style
            .iter()
            .find(|s| s.dimension == dimension)
            .map(|s| s.level)
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub id: String,
    pub language: String,
    pub core: Template,
    pub entries: Vec<Entry>,
}

/// All clusters of one language, with a lemma lookup index.
#[derive(Debug, Clone)]
pub struct Lexicon {
    pub language: String,
    clusters: Vec<Cluster>,
    index: HashMap<String, Vec<(usize, usize)>>,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.language == other.language && self.clusters == other.clusters
    }
}

impl Lexicon {
    pub fn new(language: impl Into<String>, clusters: Vec<Cluster>) -> Self {
        let mut index: HashMap<String, Vec<(usize, usize)>> = HashMap::new();
        for (ci, cluster) in clusters.iter().enumerate() {
            for (ei, entry) in cluster.entries.iter().enumerate() {
                index.entry(entry.lemma.clone()).or_default().push((ci, ei));
            }
        }
        Lexicon {
            language: language.into(),
            clusters,
            index,
        }
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn cluster(&self, id: &str) -> Option<&Cluster> {
        self.clusters.iter().find(|c| c.id == id)
    }

    /// Every (cluster, entry) holding `lemma`, in lexicon order.
    pub fn clusters_for_lemma(&self, lemma: &str) -> Vec<(&Cluster, &Entry)> {
        match self.index.get(lemma) {
            Some(hits) => hits
                .iter()
                .map(|&(ci, ei)| (&self.clusters[ci], &self.clusters[ci].entries[ei]))
                .collect(),
            None => Vec::new(),
        }
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("invalid lexicon:\n{0}")]
    Invalid(LexiconReport),
}

impl From<SyntaxError> for LexiconError {
    fn from(e: SyntaxError) -> Self {
        LexiconError::Syntax {
            pos: e.pos,
            message: e.message,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LexViolation {
    DuplicateClusterId {
        id: String,
    },
    EmptyCluster {
        cluster: String,
    },
    LanguageMismatch {
        cluster: String,
        language: String,
        expected: String,
    },
    EmptyLemma {
        cluster: String,
    },
    DuplicateLemma {
        cluster: String,
        lemma: String,
    },
    UndeclaredConcept {
        site: String,
        concept: String,
    },
    UndeclaredRelation {
        site: String,
        relation: String,
    },
    /// A distinction uses a variable the core template does not introduce.
    UnboundVariable {
        site: String,
        variable: String,
    },
    /// An attitude names a variable the core template does not introduce.
    AttitudeVariable {
        site: String,
        variable: String,
    },
    /// Distinction templates describe new instances, so none of their nodes
    /// may claim to be an existing one via a root variable.
    DistinctionRootVariable {
        site: String,
        variable: String,
    },
    DuplicateStyleDimension {
        site: String,
        dimension: String,
    },
}

impl fmt::Display for LexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexViolation::DuplicateClusterId { id } => write!(f, "duplicate cluster id `{id}`"),
            LexViolation::EmptyCluster { cluster } => {
                write!(f, "cluster `{cluster}` has no entries")
            }
            LexViolation::LanguageMismatch {
                cluster,
                language,
                expected,
            } => write!(
                f,
                "cluster `{cluster}` is tagged `{language}` in a `{expected}` lexicon"
            ),
            LexViolation::EmptyLemma { cluster } => {
                write!(f, "cluster `{cluster}` has an entry with an empty lemma")
            }
            LexViolation::DuplicateLemma { cluster, lemma } => {
                write!(f, "cluster `{cluster}` lists lemma `{lemma}` twice")
            }
            LexViolation::UndeclaredConcept { site, concept } => {
                write!(f, "{site} uses undeclared concept `{concept}`")
            }
            LexViolation::UndeclaredRelation { site, relation } => {
                write!(f, "{site} uses undeclared relation `{relation}`")
            }
            LexViolation::UnboundVariable { site, variable } => {
                write!(
                    f,
                    "{site} uses variable `?{variable}` not in the core template"
                )
            }
            LexViolation::AttitudeVariable { site, variable } => {
                write!(
                    f,
                    "{site} attitude targets `?{variable}` not in the core template"
                )
            }
            LexViolation::DistinctionRootVariable { site, variable } => {
                write!(f, "{site} binds root variable `?{variable}`")
            }
            LexViolation::DuplicateStyleDimension { site, dimension } => {
                write!(f, "{site} sets style dimension `{dimension}` twice")
            }
        }
    }
}

/// Two entries a speaker could never tell apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexWarning {
    pub cluster: String,
    pub lemma_a: String,
    pub lemma_b: String,
}

impl fmt::Display for LexWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cluster `{}`: entries `{}` and `{}` are indistinguishable",
            self.cluster, self.lemma_a, self.lemma_b
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexiconReport {
    pub violations: Vec<LexViolation>,
    pub warnings: Vec<LexWarning>,
}

impl LexiconReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for LexiconReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = self
            .violations
            .iter()
            .map(|v| format!("violation: {v}"))
            .chain(self.warnings.iter().map(|w| format!("warning: {w}")));
        if let Some(first) = lines.next() {
            write!(f, "{first}")?;
        }
        for line in lines {
            write!(f, "\n{line}")?;
        }
        Ok(())
    }
}

/// Parse and validate; the result is ready for analysis and choice.
pub fn load_lexicon(text: &str, ont: &Ontology) -> Result<Lexicon, LexiconError> {
    let lexicon = parse_lexicon(text)?;
    let report = validate_lexicon(&lexicon, ont);
    if report.is_clean() {
        Ok(lexicon)
    } else {
        Err(LexiconError::Invalid(report))
    }
}

pub fn parse_lexicon(text: &str) -> Result<Lexicon, LexiconError> {
    let mut cur = Cursor::over(text)?;
    let mut clusters = Vec::new();
    loop {
        if cur.at_end() {
            break;
        }
        cur.expect_keyword("cluster")?;
        clusters.push(parse_cluster(&mut cur)?);
    }
    if clusters.is_empty() {
        return Err(cur.error("expected at least one cluster").into());
    }
    let language = clusters[0].language.clone();
    Ok(Lexicon::new(language, clusters))
}

fn parse_cluster(cur: &mut Cursor) -> Result<Cluster, LexiconError> {
    let (id, pos) = cur.expect_word("cluster id")?;
    if !syntax::is_plain_word(&id) {
        return Err(SyntaxError::new(pos, "cluster id must be lowercase").into());
    }
    cur.expect(TokenKind::LBrace)?;
    cur.expect_keyword("language")?;
    cur.expect(TokenKind::Colon)?;
    let (language, lpos) = cur.expect_word("language tag")?;
    if !syntax::is_plain_word(&language) {
        return Err(SyntaxError::new(lpos, "language tag must be lowercase").into());
    }
    cur.expect_keyword("core")?;
    cur.expect(TokenKind::Colon)?;
    let core = parse_template(cur)?;
    let mut entries = Vec::new();
    loop {
        match cur.peek().map(|t| &t.kind) {
            Some(TokenKind::Word(w)) if w == "entry" => {
                cur.advance();
                entries.push(parse_entry(cur)?);
            }
            Some(TokenKind::RBrace) => {
                cur.advance();
                break;
            }
            _ => return Err(cur.error("expected `entry` or `}`").into()),
        }
    }
    Ok(Cluster {
        id,
        language,
        core,
        entries,
    })
}

fn parse_entry(cur: &mut Cursor) -> Result<Entry, LexiconError> {
    let lemma = match cur.advance() {
        Some(tok) => match tok.kind {
            TokenKind::Word(w) => w,
            TokenKind::Quoted(s) => s,
            other => {
                return Err(SyntaxError::new(
                    tok.pos,
                    format!("expected lemma, found {}", other.describe()),
                )
                .into())
            }
        },
        None => return Err(cur.error("expected lemma").into()),
    };
    cur.expect(TokenKind::LBrace)?;
    let mut entry = Entry::new(lemma);
    loop {
        let tok = match cur.peek() {
            Some(t) => t.clone(),
            None => return Err(cur.error("expected `}`").into()),
        };
        match &tok.kind {
            TokenKind::RBrace => {
                cur.advance();
                break;
            }
            TokenKind::Word(w) => match w.as_str() {
                "distinction" => {
                    cur.advance();
                    entry.distinctions.push(parse_distinction(cur)?);
                }
                "style" => {
                    cur.advance();
                    cur.expect(TokenKind::LParen)?;
                    let (dimension, dpos) = cur.expect_word("style dimension")?;
                    if !syntax::is_plain_word(&dimension) {
                        return Err(
                            SyntaxError::new(dpos, "style dimension must be lowercase").into()
                        );
                    }
                    let (word, wpos) = cur.expect_word("style level")?;
                    let level = StyleLevel::from_keyword(&word).ok_or_else(|| {
                        SyntaxError::new(wpos, format!("`{word}` is not a style level"))
                    })?;
                    cur.expect(TokenKind::RParen)?;
                    entry.style.push(StyleValue { dimension, level });
                }
                "attitude" => {
                    if entry.attitude.is_some() {
                        return Err(SyntaxError::new(tok.pos, "attitude given twice").into());
                    }
                    cur.advance();
                    cur.expect(TokenKind::LParen)?;
                    let (word, wpos) = cur.expect_word("attitude value")?;
                    let value = AttitudeValue::from_keyword(&word).ok_or_else(|| {
                        SyntaxError::new(wpos, format!("`{word}` is not an attitude value"))
                    })?;
                    cur.expect_keyword("of")?;
                    let of = match cur.advance() {
                        Some(t) => match t.kind {
                            TokenKind::Var(v) => v,
                            other => {
                                return Err(SyntaxError::new(
                                    t.pos,
                                    format!("expected `?variable`, found {}", other.describe()),
                                )
                                .into())
                            }
                        },
                        None => return Err(cur.error("expected `?variable`").into()),
                    };
                    cur.expect(TokenKind::RParen)?;
                    entry.attitude = Some(AttitudeSpec { value, of });
                }
                "collocates" => {
                    cur.advance();
                    cur.expect(TokenKind::Colon)?;
                    loop {
                        let word = match cur.advance() {
                            Some(t) => match t.kind {
                                TokenKind::Word(w) => w,
                                TokenKind::Quoted(s) => s,
                                other => {
                                    return Err(SyntaxError::new(
                                        t.pos,
                                        format!("expected collocate, found {}", other.describe()),
                                    )
                                    .into())
                                }
                            },
                            None => return Err(cur.error("expected collocate").into()),
                        };
                        entry.collocates.push(word);
                        if !cur.eat(&TokenKind::Comma) {
                            break;
                        }
                    }
                }
                other => {
                    return Err(SyntaxError::new(
                        tok.pos,
                        format!("unknown keyword `{other}` in entry"),
                    )
                    .into())
                }
            },
            other => {
                return Err(SyntaxError::new(
                    tok.pos,
                    format!("expected entry item or `}}`, found {}", other.describe()),
                )
                .into())
            }
        }
    }
    Ok(entry)
}

fn parse_distinction(cur: &mut Cursor) -> Result<Distinction, LexiconError> {
    cur.expect(TokenKind::LParen)?;
    let mut frequency = None;
    let mut strength = None;
    let mut dtype = None;
    let concept;
    loop {
        if matches!(cur.peek(), Some(t) if t.kind == TokenKind::RParen) {
            return Err(cur.error("distinction is missing a concept").into());
        }
        let (word, pos) = cur.expect_word("distinction field")?;
        match word.as_str() {
            "frequency" => set_field(
                cur,
                &mut frequency,
                pos,
                "frequency",
                Frequency::from_keyword,
            )?,
            "strength" => set_field(cur, &mut strength, pos, "strength", Strength::from_keyword)?,
            "type" => set_field(cur, &mut dtype, pos, "type", NuanceType::from_keyword)?,
            "concept" => {
                concept = parse_template(cur)?;
                break;
            }
            other => {
                return Err(SyntaxError::new(
                    pos,
                    format!("unknown keyword `{other}` in distinction"),
                )
                .into())
            }
        }
    }
    let dtype = match dtype {
        Some(t) => t,
        None => return Err(cur.error("distinction is missing a type").into()),
    };
    cur.expect(TokenKind::RParen)?;
    Ok(Distinction {
        frequency: frequency.unwrap_or_default(),
        strength: strength.unwrap_or_default(),
        dtype,
        concept,
    })
}

fn set_field<T>(
    cur: &mut Cursor,
    slot: &mut Option<T>,
    at: Pos,
    what: &str,
    from_keyword: impl Fn(&str) -> Option<T>,
) -> Result<(), LexiconError> {
    let (word, pos) = cur.expect_word(&format!("{what} value"))?;
    let value = from_keyword(&word)
        .ok_or_else(|| SyntaxError::new(pos, format!("`{word}` is not a {what} value")))?;
    if slot.is_some() {
        return Err(SyntaxError::new(at, format!("{what} given twice")).into());
    }
    *slot = Some(value);
    Ok(())
}

/// Template in the bracket syntax, with `?var` fillers and an optional
/// `?var` before `instance-of` binding the matched instance itself.
pub fn parse_template(cur: &mut Cursor) -> Result<Template, LexiconError> {
    cur.expect(TokenKind::LBracket)?;
    parse_template_body(cur)
}

fn parse_template_body(cur: &mut Cursor) -> Result<Template, LexiconError> {
    let root_var = match cur.peek().map(|t| &t.kind) {
        Some(TokenKind::Var(_)) => match cur.advance().map(|t| t.kind) {
            Some(TokenKind::Var(v)) => Some(v),
            _ => unreachable!("peeked a variable"),
        },
        _ => None,
    };
    cur.expect_keyword("instance-of")?;
    let (concept, cpos) = cur.expect_word("concept name")?;
    if !syntax::is_concept_word(&concept) {
        return Err(SyntaxError::new(
            cpos,
            format!("expected capitalized concept name, found `{concept}`"),
        )
        .into());
    }
    let mut template = Template::new(concept);
    template.root_var = root_var;
    loop {
        let tok = match cur.peek() {
            Some(t) => t.clone(),
            None => return Err(cur.error("expected `]`").into()),
        };
        match tok.kind {
            TokenKind::RBracket => {
                cur.advance();
                break;
            }
            TokenKind::Word(w) if syntax::is_relation_word(&w) => {
                cur.advance();
                let mut values = Vec::new();
                while at_template_value_start(cur) {
                    values.push(parse_template_value(cur)?);
                }
                if values.is_empty() {
                    return Err(cur
                        .error(format!("expected value after relation `{w}`"))
                        .into());
                }
                template.slots.push((w, values));
            }
            TokenKind::Ref(_) | TokenKind::RefDef(_) => {
                return Err(
                    SyntaxError::new(tok.pos, "references are not allowed in templates").into(),
                )
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
    Ok(template)
}

fn at_template_value_start(cur: &Cursor) -> bool {
    match cur.peek().map(|t| &t.kind) {
        Some(TokenKind::LBracket) | Some(TokenKind::Var(_)) => true,
        Some(TokenKind::Word(w)) => syntax::is_plain_word(w),
        _ => false,
    }
}

fn parse_template_value(cur: &mut Cursor) -> Result<TemplateValue, LexiconError> {
    let tok = match cur.advance() {
        Some(t) => t,
        None => return Err(cur.error("expected value").into()),
    };
    match tok.kind {
        TokenKind::Var(v) => Ok(TemplateValue::Var(v)),
        TokenKind::Word(w) if syntax::is_plain_word(&w) => Ok(TemplateValue::Atom(w)),
        TokenKind::LBracket => match cur.peek().map(|t| &t.kind) {
            Some(TokenKind::Word(w)) if syntax::is_plain_word(w) && w != "instance-of" => {
                let (atom, _) = cur.expect_word("atom")?;
                cur.expect(TokenKind::RBracket)?;
                Ok(TemplateValue::Atom(atom))
            }
            _ => Ok(TemplateValue::Node(Box::new(parse_template_body(cur)?))),
        },
        other => Err(SyntaxError::new(
            tok.pos,
            format!("expected value, found {}", other.describe()),
        )
        .into()),
    }
}

/// All invariant violations plus indistinguishability warnings.
pub fn validate_lexicon(lexicon: &Lexicon, ont: &Ontology) -> LexiconReport {
    let mut report = LexiconReport::default();
    let mut cluster_ids: HashSet<&str> = HashSet::new();
    for cluster in lexicon.clusters() {
        if !cluster_ids.insert(&cluster.id) {
            report.violations.push(LexViolation::DuplicateClusterId {
                id: cluster.id.clone(),
            });
        }
        if cluster.language != lexicon.language {
            report.violations.push(LexViolation::LanguageMismatch {
                cluster: cluster.id.clone(),
                language: cluster.language.clone(),
                expected: lexicon.language.clone(),
            });
        }
        if cluster.entries.is_empty() {
            report.violations.push(LexViolation::EmptyCluster {
                cluster: cluster.id.clone(),
            });
        }
        let core_site = format!("cluster `{}` core", cluster.id);
        check_template_names(ont, &cluster.core, &core_site, &mut report);
        let core_vars = cluster.core.variables();
        let mut lemmas: HashSet<&str> = HashSet::new();
        for entry in &cluster.entries {
            if entry.lemma.is_empty() {
                report.violations.push(LexViolation::EmptyLemma {
                    cluster: cluster.id.clone(),
                });
            }
            if !lemmas.insert(&entry.lemma) {
                report.violations.push(LexViolation::DuplicateLemma {
                    cluster: cluster.id.clone(),
                    lemma: entry.lemma.clone(),
                });
            }
            for (i, d) in entry.distinctions.iter().enumerate() {
                let site = format!(
                    "cluster `{}` entry `{}` distinction {}",
                    cluster.id,
                    entry.lemma,
                    i + 1
                );
                check_template_names(ont, &d.concept, &site, &mut report);
                for var in d.concept.variables() {
                    if !core_vars.contains(var) {
                        report.violations.push(LexViolation::UnboundVariable {
                            site: site.clone(),
                            variable: var.to_string(),
                        });
                    }
                }
                for node in d.concept.preorder() {
                    if let Some(v) = &node.root_var {
                        report
                            .violations
                            .push(LexViolation::DistinctionRootVariable {
                                site: site.clone(),
                                variable: v.clone(),
                            });
                    }
                }
            }
            if let Some(att) = &entry.attitude {
                if !core_vars.contains(att.of.as_str()) {
                    report.violations.push(LexViolation::AttitudeVariable {
                        site: format!("cluster `{}` entry `{}`", cluster.id, entry.lemma),
                        variable: att.of.clone(),
                    });
                }
            }
            let mut dims: HashSet<&str> = HashSet::new();
            for s in &entry.style {
                if !dims.insert(&s.dimension) {
                    report
                        .violations
                        .push(LexViolation::DuplicateStyleDimension {
                            site: format!("cluster `{}` entry `{}`", cluster.id, entry.lemma),
                            dimension: s.dimension.clone(),
                        });
                }
            }
        }
        for (i, a) in cluster.entries.iter().enumerate() {
            for b in &cluster.entries[i + 1..] {
                if a.distinctions == b.distinctions
                    && a.style == b.style
                    && a.attitude == b.attitude
                {
                    report.warnings.push(LexWarning {
                        cluster: cluster.id.clone(),
                        lemma_a: a.lemma.clone(),
                        lemma_b: b.lemma.clone(),
                    });
                }
            }
        }
    }
    report
}

fn check_template_names(ont: &Ontology, t: &Template, site: &str, report: &mut LexiconReport) {
    for node in t.preorder() {
        if !ont.has_concept(&node.concept) {
            report.violations.push(LexViolation::UndeclaredConcept {
                site: site.to_string(),
                concept: node.concept.clone(),
            });
        }
        for (rel, _) in &node.slots {
            if !ont.has_relation(rel) {
                report.violations.push(LexViolation::UndeclaredRelation {
                    site: site.to_string(),
                    relation: rel.clone(),
                });
            }
        }
    }
}

/// Canonical DSL text; reloading it yields a structurally equal lexicon.
pub fn serialize_lexicon(lexicon: &Lexicon) -> String {
    let mut out = String::new();
    for (i, cluster) in lexicon.clusters().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("cluster {} {{\n", cluster.id));
        out.push_str(&format!("  language: {}\n", cluster.language));
        out.push_str(&format!("  core: {}\n", render_template(&cluster.core)));
        for entry in &cluster.entries {
            let lemma = if entry.lemma.contains(char::is_whitespace) {
                format!("\"{}\"", entry.lemma)
            } else {
                entry.lemma.clone()
            };
            if entry.distinctions.is_empty()
                && entry.style.is_empty()
                && entry.attitude.is_none()
                && entry.collocates.is_empty()
            {
                out.push_str(&format!("  entry {lemma} {{ }}\n"));
                continue;
            }
            out.push_str(&format!("  entry {lemma} {{\n"));
            for d in &entry.distinctions {
                out.push_str(&format!(
                    "    distinction ( frequency {} strength {} type {} concept {} )\n",
                    d.frequency,
                    d.strength,
                    d.dtype,
                    render_template(&d.concept)
                ));
            }
            for s in &entry.style {
                out.push_str(&format!("    style ( {} {} )\n", s.dimension, s.level));
            }
            if let Some(att) = &entry.attitude {
                out.push_str(&format!("    attitude ( {} of ?{} )\n", att.value, att.of));
            }
            if !entry.collocates.is_empty() {
                let words: Vec<String> = entry
                    .collocates
                    .iter()
                    .map(|c| {
                        if c.contains(char::is_whitespace) {
                            format!("\"{c}\"")
                        } else {
                            c.clone()
                        }
                    })
                    .collect();
                out.push_str(&format!("    collocates: {}\n", words.join(", ")));
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
    }
    out
}

fn render_template(t: &Template) -> String {
    let mut s = String::from("[ ");
    if let Some(v) = &t.root_var {
        s.push_str(&format!("?{v} "));
    }
    s.push_str(&format!("instance-of {}", t.concept));
    for (rel, values) in &t.slots {
        s.push(' ');
        s.push_str(rel);
        for v in values {
            s.push(' ');
            match v {
                TemplateValue::Node(inner) => s.push_str(&render_template(inner)),
                TemplateValue::Var(name) => s.push_str(&format!("?{name}")),
                TemplateValue::Atom(a) => s.push_str(a),
            }
        }
    }
    s.push_str(" ]");
    s
}
