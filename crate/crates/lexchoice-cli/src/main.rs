//! Command-line front end: validate corpus files, print canonical forms,
//! and run the analyze/choose/translate pipeline.
//!
//! Exit codes: 0 success, 1 validation violation, 2 I/O or parse failure,
//! 3 analysis error, 4 no cluster activation.

use std::collections::BTreeMap;
use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lexchoice::ontology::{BoundValue, InstanceIndex, OntologyError};
use lexchoice::{
    analyze, choose, explain, parse_ir, serialize_ir, serialize_lexicon, unify, validate_ir,
    AnalysisRequest, Bindings, ChoiceError, Lexicon, LexiconError, Ontology, Weights, IR,
};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_ANALYSIS: u8 = 3;
const EXIT_NO_ACTIVATION: u8 = 4;

#[derive(Parser)]
#[command(name = "lexchoice", version, about = "Near-synonym lexical choice")]
struct Cli {
    /// Ontology file; defaults to core.ont in the fixture directory.
    #[arg(long, global = true, value_name = "PATH")]
    ontology: Option<PathBuf>,
    /// Lexicon for a language tag, as tag=path; repeatable. Tags without
    /// an explicit path load <tag>.lex from the fixture directory.
    #[arg(long = "lexicon", global = true, value_name = "TAG=PATH")]
    lexicons: Vec<String>,
    /// Weights config file; defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    weights: Option<PathBuf>,
    /// Require exact concept matches between distinctions and preferences.
    #[arg(long, global = true)]
    strict: bool,
    /// Also print the IR being scored, in canonical form.
    #[arg(long, global = true)]
    emit_ir: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and check files (.ont, .lex, .ir by extension).
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Parse one file and print its canonical form.
    Parse { file: PathBuf },
    /// Run an analysis request file and print the resulting IR.
    Analyze {
        request: PathBuf,
        /// Language tag of the lexicon to analyze with.
        #[arg(long)]
        lang: String,
    },
    /// Rank the words of every cluster that covers an IR's situation.
    Choose {
        ir: PathBuf,
        /// Language tag of the lexicon to choose from.
        #[arg(long)]
        lang: String,
        /// Lemmas already chosen nearby, for collocations.
        #[arg(long, value_delimiter = ',')]
        context: Vec<String>,
    },
    /// Like choose, but print the full per-candidate report.
    Explain {
        ir: PathBuf,
        #[arg(long)]
        lang: String,
        #[arg(long, value_delimiter = ',')]
        context: Vec<String>,
    },
    /// Analyze a word in the source language, then choose in the target.
    Translate {
        lemma: String,
        /// Source language tag.
        #[arg(long)]
        from: String,
        /// Target language tag.
        #[arg(long)]
        to: String,
        /// Situation IR; bindings are derived by matching the source
        /// cluster's core against it.
        #[arg(long, value_name = "PATH", conflicts_with = "request")]
        ir: Option<PathBuf>,
        /// Analysis request file with explicit bindings.
        #[arg(long, value_name = "PATH")]
        request: Option<PathBuf>,
        /// Source cluster id, when the lemma alone is ambiguous.
        #[arg(long)]
        cluster: Option<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type Run<T> = Result<T, Failure>;

/// Die quietly on a closed pipe, like other line-oriented tools, instead
/// of panicking mid-print when the reader stops early.
fn reset_sigpipe() {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Run<u8> {
    let config = Config::from_cli(&cli)?;
    match &cli.command {
        Command::Validate { files } => cmd_validate(&config, files),
        Command::Parse { file } => cmd_parse(file).map(|()| 0),
        Command::Analyze { request, lang } => cmd_analyze(&config, request, lang).map(|()| 0),
        Command::Choose { ir, lang, context } => {
            cmd_choose(&config, ir, lang, context, false).map(|()| 0)
        }
        Command::Explain { ir, lang, context } => {
            cmd_choose(&config, ir, lang, context, true).map(|()| 0)
        }
        Command::Translate {
            lemma,
            from,
            to,
            ir,
            request,
            cluster,
        } => cmd_translate(
            &config,
            lemma,
            from,
            to,
            ir.as_deref(),
            request.as_deref(),
            cluster.as_deref(),
        )
        .map(|()| 0),
    }
}

struct Config {
    fixtures: PathBuf,
    ontology_path: PathBuf,
    lexicon_paths: BTreeMap<String, PathBuf>,
    weights: Weights,
    emit_ir: bool,
}

impl Config {
    fn from_cli(cli: &Cli) -> Run<Config> {
        let fixtures: PathBuf = env::var_os("LEXCHOICE_FIXTURES")
            .map(Into::into)
            .unwrap_or_else(|| PathBuf::from("fixtures"));
        let ontology_path = cli
            .ontology
            .clone()
            .unwrap_or_else(|| fixtures.join("core.ont"));
        let mut lexicon_paths = BTreeMap::new();
        for spec in &cli.lexicons {
            let (tag, path) = spec.split_once('=').ok_or_else(|| {
                Failure::new(
                    EXIT_INPUT,
                    format!("--lexicon takes TAG=PATH, got `{spec}`"),
                )
            })?;
            if lexicon_paths
                .insert(tag.to_string(), PathBuf::from(path))
                .is_some()
            {
                return Err(Failure::new(
                    EXIT_INPUT,
                    format!("more than one lexicon for language `{tag}`"),
                ));
            }
        }
        let mut weights = match &cli.weights {
            Some(path) => Weights::parse_config(&read(path)?)
                .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?,
            None => Weights::default(),
        };
        if cli.strict {
            weights.strict_match = true;
        }
        Ok(Config {
            fixtures,
            ontology_path,
            lexicon_paths,
            weights,
            emit_ir: cli.emit_ir,
        })
    }

    fn ontology(&self) -> Run<Ontology> {
        load_ontology(&self.ontology_path)
    }

    fn lexicon(&self, tag: &str, ont: &Ontology) -> Run<Lexicon> {
        let path = self
            .lexicon_paths
            .get(tag)
            .cloned()
            .unwrap_or_else(|| self.fixtures.join(format!("{tag}.lex")));
        let lexicon = lexchoice::load_lexicon(&read(&path)?, ont).map_err(|e| match e {
            LexiconError::Syntax { .. } => {
                Failure::new(EXIT_INPUT, format!("{}: {e}", path.display()))
            }
            LexiconError::Invalid(_) => {
                Failure::new(EXIT_VIOLATION, format!("{}: {e}", path.display()))
            }
        })?;
        if lexicon.language != tag {
            return Err(Failure::new(
                EXIT_VIOLATION,
                format!(
                    "{}: lexicon is for language `{}`, not `{tag}`",
                    path.display(),
                    lexicon.language
                ),
            ));
        }
        Ok(lexicon)
    }

    fn load_ir(&self, path: &Path, ont: &Ontology) -> Run<IR> {
        let ir = parse_ir(&read(path)?)
            .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
        let violations = validate_ir(&ir, ont);
        if !violations.is_empty() {
            let lines: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
            return Err(Failure::new(
                EXIT_VIOLATION,
                format!("{}:\n{}", path.display(), lines.join("\n")),
            ));
        }
        Ok(ir)
    }
}

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("reading {}: {e}", path.display())))
}

fn load_ontology(path: &Path) -> Run<Ontology> {
    Ontology::load(&read(path)?).map_err(|e| {
        let code = match e {
            OntologyError::Syntax { .. } => EXIT_INPUT,
            _ => EXIT_VIOLATION,
        };
        Failure::new(code, format!("{}: {e}", path.display()))
    })
}

fn cmd_validate(config: &Config, files: &[PathBuf]) -> Run<u8> {
    let mut status = 0u8;
    // IR and lexicon validation need the ontology; load it lazily so
    // validating only an ontology file does not require it twice.
    let mut ontology: Option<Run<Ontology>> = None;
    for path in files {
        let outcome = match path.extension().and_then(|e| e.to_str()) {
            Some("ont") => load_ontology(path).map(|_| ()),
            Some("lex") => {
                let ont = ontology
                    .get_or_insert_with(|| config.ontology())
                    .as_ref()
                    .map_err(|f| Failure::new(f.code, f.message.clone()))?;
                config.lexicon_from_path(path, ont).map(|_| ())
            }
            Some("ir") => {
                let ont = ontology
                    .get_or_insert_with(|| config.ontology())
                    .as_ref()
                    .map_err(|f| Failure::new(f.code, f.message.clone()))?;
                config.load_ir(path, ont).map(|_| ())
            }
            _ => Err(Failure::new(
                EXIT_INPUT,
                format!("{}: unrecognized extension", path.display()),
            )),
        };
        match outcome {
            Ok(()) => println!("ok {}", path.display()),
            Err(f) => {
                println!("not ok {}", path.display());
                eprintln!("error: {}", f.message);
                // Parse and I/O failures outrank validation violations.
                status = status.max(f.code);
            }
        }
    }
    Ok(status)
}

impl Config {
    fn lexicon_from_path(&self, path: &Path, ont: &Ontology) -> Run<Lexicon> {
        lexchoice::load_lexicon(&read(path)?, ont).map_err(|e| match e {
            LexiconError::Syntax { .. } => {
                Failure::new(EXIT_INPUT, format!("{}: {e}", path.display()))
            }
            LexiconError::Invalid(_) => {
                Failure::new(EXIT_VIOLATION, format!("{}: {e}", path.display()))
            }
        })
    }
}

fn cmd_parse(path: &Path) -> Run<()> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("ir") => {
            let ir = parse_ir(&read(path)?)
                .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
            print!("{}", serialize_ir(&ir));
            Ok(())
        }
        Some("lex") => {
            let lexicon = lexchoice::lexicon::parse_lexicon(&read(path)?)
                .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
            print!("{}", serialize_lexicon(&lexicon));
            Ok(())
        }
        Some("ont") => {
            let ont = load_ontology(path)?;
            println!(
                "ok {}: {} concepts, {} relations",
                path.display(),
                ont.concepts().count(),
                ont.relations().count()
            );
            Ok(())
        }
        _ => Err(Failure::new(
            EXIT_INPUT,
            format!("{}: unrecognized extension", path.display()),
        )),
    }
}

/// An analysis request stanza: `lemma`, optional `cluster`, `situation`
/// (an IR path, resolved relative to the request file), and repeated
/// `bind ?var instance-id` lines. `#` starts a comment.
struct RequestFile {
    lemma: Option<String>,
    cluster: Option<String>,
    situation: Option<PathBuf>,
    binds: Vec<(String, String)>,
}

fn parse_request(path: &Path) -> Run<RequestFile> {
    let text = read(path)?;
    let mut req = RequestFile {
        lemma: None,
        cluster: None,
        situation: None,
        binds: Vec::new(),
    };
    let fail = |line: usize, msg: String| {
        Failure::new(
            EXIT_INPUT,
            format!("{}: line {line}: {msg}", path.display()),
        )
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let rest = rest.trim();
        match key {
            "lemma" if !rest.is_empty() => req.lemma = Some(rest.to_string()),
            "cluster" if !rest.is_empty() => req.cluster = Some(rest.to_string()),
            "situation" if !rest.is_empty() => req.situation = Some(PathBuf::from(rest)),
            "bind" => {
                let (var, id) = rest
                    .split_once(char::is_whitespace)
                    .map(|(v, i)| (v.trim(), i.trim()))
                    .filter(|(v, i)| v.starts_with('?') && v.len() > 1 && !i.is_empty())
                    .ok_or_else(|| fail(line, "bind takes `?var instance-id`".into()))?;
                req.binds.push((var[1..].to_string(), id.to_string()));
            }
            _ => return Err(fail(line, format!("unrecognized line `{content}`"))),
        }
    }
    Ok(req)
}

/// Resolve the situation path in a request: as written if it exists or is
/// absolute, next to the request file otherwise.
fn resolve_situation(request_path: &Path, situation: &Path) -> PathBuf {
    if situation.is_absolute() || situation.exists() {
        return situation.to_path_buf();
    }
    match request_path.parent() {
        Some(dir) => dir.join(situation),
        None => situation.to_path_buf(),
    }
}

fn build_request(config: &Config, path: &Path, ont: &Ontology) -> Run<(AnalysisRequest, IR)> {
    let req = parse_request(path)?;
    let lemma = req.lemma.clone().ok_or_else(|| {
        Failure::new(
            EXIT_INPUT,
            format!("{}: missing a lemma line", path.display()),
        )
    })?;
    let situation = req.situation.as_deref().ok_or_else(|| {
        Failure::new(
            EXIT_INPUT,
            format!("{}: missing a situation line", path.display()),
        )
    })?;
    let ir = config.load_ir(&resolve_situation(path, situation), ont)?;
    let bindings: Bindings = req
        .binds
        .iter()
        .map(|(var, id)| (var.clone(), BoundValue::Instance(id.clone())))
        .collect();
    Ok((
        AnalysisRequest {
            lemma,
            cluster_id: req.cluster,
            bindings,
            situation: ir.situation.clone(),
        },
        ir,
    ))
}

fn cmd_analyze(config: &Config, request_path: &Path, lang: &str) -> Run<()> {
    let ont = config.ontology()?;
    let lexicon = config.lexicon(lang, &ont)?;
    let (request, _) = build_request(config, request_path, &ont)?;
    let ir = analyze(&lexicon, &ont, &request)
        .map_err(|e| Failure::new(EXIT_ANALYSIS, e.to_string()))?;
    print!("{}", serialize_ir(&ir));
    Ok(())
}

fn run_choice(
    config: &Config,
    lexicon: &Lexicon,
    ont: &Ontology,
    ir: &IR,
    context: &[String],
    full_report: bool,
) -> Run<()> {
    if config.emit_ir {
        print!("{}", serialize_ir(ir));
    }
    let results = choose(lexicon, ont, ir, context, &config.weights).map_err(|e| match e {
        ChoiceError::NoActivation => Failure::new(EXIT_NO_ACTIVATION, e.to_string()),
    })?;
    for result in &results {
        if full_report {
            print!("{}", explain(result));
        } else {
            println!(
                "cluster {} (language {})",
                result.cluster_id, result.language
            );
            for (rank, entry) in result.ranked.iter().enumerate() {
                println!(
                    "  rank {} {} total {:.4}",
                    rank + 1,
                    entry.lemma,
                    entry.breakdown.total
                );
            }
        }
    }
    Ok(())
}

fn cmd_choose(
    config: &Config,
    ir_path: &Path,
    lang: &str,
    context: &[String],
    full_report: bool,
) -> Run<()> {
    let ont = config.ontology()?;
    let lexicon = config.lexicon(lang, &ont)?;
    let ir = config.load_ir(ir_path, &ont)?;
    run_choice(config, &lexicon, &ont, &ir, context, full_report)
}

fn cmd_translate(
    config: &Config,
    lemma: &str,
    from: &str,
    to: &str,
    ir_path: Option<&Path>,
    request_path: Option<&Path>,
    cluster: Option<&str>,
) -> Run<()> {
    let ont = config.ontology()?;
    let source = config.lexicon(from, &ont)?;
    let target = config.lexicon(to, &ont)?;

    let request = match (ir_path, request_path) {
        (Some(path), None) => {
            let ir = config.load_ir(path, &ont)?;
            let cluster = select_cluster(&source, lemma, cluster)?;
            let bindings = bind_against(&ont, &source, &cluster, &ir)?;
            AnalysisRequest {
                lemma: lemma.to_string(),
                cluster_id: Some(cluster),
                bindings,
                situation: ir.situation,
            }
        }
        (None, Some(path)) => {
            let (mut request, _) = build_request(config, path, &ont)?;
            request.lemma = lemma.to_string();
            if let Some(id) = cluster {
                request.cluster_id = Some(id.to_string());
            }
            request
        }
        _ => {
            return Err(Failure::new(
                EXIT_INPUT,
                "translate needs exactly one of --ir or --request",
            ))
        }
    };

    let contributed =
        analyze(&source, &ont, &request).map_err(|e| Failure::new(EXIT_ANALYSIS, e.to_string()))?;
    println!(
        "analysis {lemma} ({})",
        request.cluster_id.as_deref().unwrap_or("-")
    );
    run_choice(config, &target, &ont, &contributed, &[], true)
}

fn select_cluster(lexicon: &Lexicon, lemma: &str, cluster: Option<&str>) -> Run<String> {
    if let Some(id) = cluster {
        return Ok(id.to_string());
    }
    let hits = lexicon.clusters_for_lemma(lemma);
    match hits.len() {
        0 => Err(Failure::new(
            EXIT_ANALYSIS,
            format!("unknown lemma `{lemma}`"),
        )),
        1 => Ok(hits[0].0.id.clone()),
        _ => Err(Failure::new(
            EXIT_ANALYSIS,
            format!(
                "lemma `{lemma}` appears in clusters {}; pass --cluster",
                hits.iter()
                    .map(|(c, _)| c.id.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        )),
    }
}

/// Derive analysis bindings by matching the cluster's core against the
/// situation, the same way choice-side activation does.
fn bind_against(ont: &Ontology, lexicon: &Lexicon, cluster_id: &str, ir: &IR) -> Run<Bindings> {
    let cluster = lexicon
        .cluster(cluster_id)
        .ok_or_else(|| Failure::new(EXIT_ANALYSIS, format!("unknown cluster `{cluster_id}`")))?;
    let index = InstanceIndex::of_graph(&ir.situation);
    ir.situation
        .instances()
        .into_iter()
        .find_map(|inst| unify(ont, &cluster.core, inst, &index, &Bindings::new()))
        .ok_or_else(|| {
            Failure::new(
                EXIT_ANALYSIS,
                format!("core template of `{cluster_id}` does not cover the situation"),
            )
        })
}
