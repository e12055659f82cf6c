//! The choice half of translation: activate clusters whose core covers the
//! situation, score every entry against the IR's preferences, and rank the
//! candidates.

use thiserror::Error;

use crate::ir::{Possibility, IR};
use crate::lexicon::{Cluster, Distinction, Entry, Lexicon};
use crate::nuance::{Frequency, NuanceType, Strength};
use crate::ontology::{
    unify, unify_with_mode, Bindings, BoundValue, ConceptMatch, InstanceIndex, Ontology,
};

/// Scoring knobs. The value tables turn the symbolic frequency, strength,
/// and type scales into numbers; the Greek-letter weights price the
/// penalties and the collocation bonus.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights {
    /// Directness per nuance type: emphasis, suggestion, implication,
    /// denotation.
    pub directness: [f64; 4],
    /// Value per frequency: never, sometimes, always.
    pub frequency_value: [f64; 3],
    /// Value per strength: weak, medium, strong.
    pub strength_value: [f64; 3],
    /// Penalty per unwanted nuance.
    pub gamma: f64,
    /// Penalty per level step on each style dimension.
    pub beta: f64,
    /// Penalty for a mismatched attitude.
    pub alpha: f64,
    /// Bonus when a collocate appears in the context.
    pub kappa: f64,
    /// Require exact concept equality when matching a distinction against
    /// a preference; the default accepts subsumption in either direction.
    pub strict_match: bool,
    /// Clamp each satisfaction into [0, 1]. On by default; scaling
    /// experiments turn it off.
    pub clamp: bool,
}

impl Default for Weights {
    fn default() -> Self {
        Weights {
            directness: [0.0, 1.0, 2.0, 3.0],
            frequency_value: [0.0, 0.5, 1.0],
            strength_value: [0.0, 0.5, 1.0],
            gamma: 0.2,
            beta: 0.25,
            alpha: 0.5,
            kappa: 0.1,
            strict_match: false,
            clamp: true,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum WeightsError {
    #[error("line {line}: expected `key = value`")]
    Malformed { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` takes {expected}, got `{value}`")]
    BadValue {
        line: usize,
        key: String,
        expected: &'static str,
        value: String,
    },
}

impl Weights {
    /// Read `key = value` lines over the defaults. Keys: gamma, beta,
    /// alpha, kappa (finite non-negative numbers) and strict_match
    /// (true/false). `#` starts a comment.
    pub fn parse_config(text: &str) -> Result<Weights, WeightsError> {
        let mut w = Weights::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or(WeightsError::Malformed { line })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |expected| WeightsError::BadValue {
                line,
                key: key.to_string(),
                expected,
                value: value.to_string(),
            };
            match key {
                "gamma" | "beta" | "alpha" | "kappa" => {
                    let parsed: f64 = value
                        .parse()
                        .ok()
                        .filter(|v: &f64| v.is_finite() && *v >= 0.0)
                        .ok_or_else(|| bad("a finite non-negative number"))?;
                    match key {
                        "gamma" => w.gamma = parsed,
                        "beta" => w.beta = parsed,
                        "alpha" => w.alpha = parsed,
                        _ => w.kappa = parsed,
                    }
                }
                "strict_match" => {
                    w.strict_match = match value {
                        "true" => true,
                        "false" => false,
                        _ => return Err(bad("true or false")),
                    }
                }
                _ => {
                    return Err(WeightsError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })
                }
            }
        }
        Ok(w)
    }

    pub fn frequency(&self, f: Frequency) -> f64 {
        self.frequency_value[f.index()]
    }

    pub fn strength(&self, s: Strength) -> f64 {
        self.strength_value[s.index()]
    }

    pub fn directness(&self, t: NuanceType) -> f64 {
        self.directness[t.index()]
    }
}

/// A cluster whose core template unified with some situation instance,
/// with the variable bindings that unification produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Activation<'a> {
    pub cluster: &'a Cluster,
    pub bindings: Bindings,
}

/// Try every cluster's core against the situation instances in document
/// order; the first instance that unifies activates the cluster.
pub fn activate<'a>(lexicon: &'a Lexicon, ont: &Ontology, ir: &IR) -> Vec<Activation<'a>> {
    let index = ir.instance_index();
    let mut out = Vec::new();
    for cluster in lexicon.clusters() {
        let hit = ir
            .situation
            .instances()
            .into_iter()
            .find_map(|inst| unify(ont, &cluster.core, inst, &index, &Bindings::new()));
        if let Some(bindings) = hit {
            out.push(Activation { cluster, bindings });
        }
    }
    out
}

/// How well one distinction conveys one preference, or None when their
/// concepts do not match. The distinction's template is unified against
/// the preference's concept under the activation bindings; by default a
/// concept match in either subsumption direction is accepted.
///
/// A never-frequency distinction fully satisfies a never-frequency
/// preference, scoring the top of the frequency scale. Otherwise the
/// satisfaction is the distinction's frequency value, discounted by the
/// directness gap and the strength gap.
pub fn satisfaction(
    ont: &Ontology,
    d: &Distinction,
    p: &Possibility,
    index: &InstanceIndex,
    bindings: &Bindings,
    weights: &Weights,
) -> Option<f64> {
    let mode = if weights.strict_match {
        ConceptMatch::Exact
    } else {
        ConceptMatch::EitherDirection
    };
    unify_with_mode(ont, &d.concept, &p.concept, index, bindings, mode)?;
    let mut sat = if d.frequency == Frequency::Never && p.frequency == Frequency::Never {
        weights.frequency(Frequency::Always)
    } else {
        let dir_gap = (weights.directness(p.ptype) - weights.directness(d.dtype)).abs();
        let str_gap = (weights.strength(p.strength) - weights.strength(d.strength)).abs();
        weights.frequency(d.frequency) * (1.0 - dir_gap / 3.0) * (1.0 - str_gap)
    };
    if weights.clamp {
        sat = sat.clamp(0.0, 1.0);
    }
    Some(sat)
}

/// One preference's outcome for an entry: which distinction conveys it
/// best, and how well. Summaries are pre-rendered so reports need no
/// access to the lexicon or IR.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceScore {
    pub index: usize,
    pub preference: String,
    pub matched: Option<MatchedDistinction>,
    pub satisfaction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchedDistinction {
    pub index: usize,
    pub distinction: String,
}

/// A distinction the word always carries, with a direct nuance type, that
/// no preference asked for.
#[derive(Debug, Clone, PartialEq)]
pub struct UnwantedNuance {
    pub index: usize,
    pub distinction: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreBreakdown {
    pub preferences: Vec<PreferenceScore>,
    pub unwanted: Vec<UnwantedNuance>,
    pub style_penalty: f64,
    pub attitude_penalty: f64,
    pub collocation_bonus: f64,
    pub total: f64,
}

fn describe_preference(p: &Possibility) -> String {
    format!(
        "[{}/{} {}] {}",
        p.frequency,
        p.strength,
        p.ptype,
        p.concept.compact()
    )
}

fn describe_distinction(d: &Distinction) -> String {
    format!(
        "[{}/{} {}] {}",
        d.frequency,
        d.strength,
        d.dtype,
        d.concept.compact()
    )
}

/// Score one entry against the IR under the activation bindings.
///
/// Each preference takes the best satisfaction over the entry's
/// distinctions (ties keep the earliest distinction; an unconveyed
/// preference scores 0). Distinctions with frequency always and an
/// implication or denotation type that match no preference are unwanted
/// and cost gamma each. Style costs beta per level step away from each
/// style preference, a mismatched attitude on the same participant costs
/// alpha, and a collocate found in the context earns kappa.
pub fn score_entry(
    ont: &Ontology,
    entry: &Entry,
    ir: &IR,
    bindings: &Bindings,
    context: &[String],
    weights: &Weights,
) -> ScoreBreakdown {
    let index = ir.instance_index();
    let sats: Vec<Vec<Option<f64>>> = entry
        .distinctions
        .iter()
        .map(|d| {
            ir.possibilities
                .iter()
                .map(|p| satisfaction(ont, d, p, &index, bindings, weights))
                .collect()
        })
        .collect();

    let mut preferences = Vec::new();
    for (i, p) in ir.possibilities.iter().enumerate() {
        let mut best: Option<(usize, f64)> = None;
        for (j, row) in sats.iter().enumerate() {
            if let Some(s) = row[i] {
                if best.is_none_or(|(_, b)| s > b) {
                    best = Some((j, s));
                }
            }
        }
        preferences.push(PreferenceScore {
            index: i,
            preference: describe_preference(p),
            matched: best.map(|(j, _)| MatchedDistinction {
                index: j,
                distinction: describe_distinction(&entry.distinctions[j]),
            }),
            satisfaction: best.map_or(0.0, |(_, s)| s),
        });
    }

    let unwanted: Vec<UnwantedNuance> = entry
        .distinctions
        .iter()
        .enumerate()
        .filter(|(j, d)| {
            d.frequency == Frequency::Always
                && matches!(d.dtype, NuanceType::Implication | NuanceType::Denotation)
                && sats[*j].iter().all(|s| s.is_none())
        })
        .map(|(j, d)| UnwantedNuance {
            index: j,
            distinction: describe_distinction(d),
        })
        .collect();

    // fold from +0.0: an empty sum() would give -0.0, and total_cmp puts
    // -0.0 before +0.0, which would disturb tie ordering.
    let style_penalty = weights.beta
        * ir.styles
            .iter()
            .map(|s| {
                let have = entry.style_level(&s.dimension).offset();
                ((have - s.level.offset()).abs()) as f64
            })
            .fold(0.0, |acc, x| acc + x);

    let attitude_penalty = weights.alpha
        * ir.attitudes
            .iter()
            .filter(|a| {
                entry.attitude.as_ref().is_some_and(|ea| {
                    bindings.get(&ea.of) == Some(&BoundValue::Instance(a.of.clone()))
                        && ea.value != a.value
                })
            })
            .count() as f64;

    let collocation_bonus = if entry.collocates.iter().any(|c| context.contains(c)) {
        weights.kappa
    } else {
        0.0
    };

    let total = preferences
        .iter()
        .map(|p| p.satisfaction)
        .fold(0.0, |acc, x| acc + x)
        - weights.gamma * unwanted.len() as f64
        - style_penalty
        - attitude_penalty
        + collocation_bonus;

    ScoreBreakdown {
        preferences,
        unwanted,
        style_penalty,
        attitude_penalty,
        collocation_bonus,
        total,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    pub lemma: String,
    pub breakdown: ScoreBreakdown,
}

/// One activated cluster's candidates, best first. Ties keep lexicon
/// entry order.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceResult {
    pub cluster_id: String,
    pub language: String,
    pub bindings: Bindings,
    pub ranked: Vec<RankedEntry>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ChoiceError {
    #[error("no cluster core covers the situation")]
    NoActivation,
}

/// Rank every entry of every activated cluster against the IR.
pub fn choose(
    lexicon: &Lexicon,
    ont: &Ontology,
    ir: &IR,
    context: &[String],
    weights: &Weights,
) -> Result<Vec<ChoiceResult>, ChoiceError> {
    let activations = activate(lexicon, ont, ir);
    if activations.is_empty() {
        return Err(ChoiceError::NoActivation);
    }
    let results = activations
        .into_iter()
        .map(|act| {
            let mut ranked: Vec<RankedEntry> = act
                .cluster
                .entries
                .iter()
                .map(|e| RankedEntry {
                    lemma: e.lemma.clone(),
                    breakdown: score_entry(ont, e, ir, &act.bindings, context, weights),
                })
                .collect();
            ranked.sort_by(|a, b| b.breakdown.total.total_cmp(&a.breakdown.total));
            ChoiceResult {
                cluster_id: act.cluster.id.clone(),
                language: act.cluster.language.clone(),
                bindings: act.bindings,
                ranked,
            }
        })
        .collect();
    Ok(results)
}

/// Render one cluster's ranking as a stable plain-text report: per
/// candidate, the conveyed and lost preferences, unwanted nuances, and
/// the penalty lines.
pub fn explain(result: &ChoiceResult) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "cluster {} (language {})\n",
        result.cluster_id, result.language
    ));
    for (var, value) in result.bindings.iter() {
        out.push_str(&format!("  ?{var} = {value}\n"));
    }
    for (rank, entry) in result.ranked.iter().enumerate() {
        let b = &entry.breakdown;
        out.push_str(&format!(
            "  rank {} {} total {:.4}\n",
            rank + 1,
            entry.lemma,
            b.total
        ));
        for p in &b.preferences {
            match &p.matched {
                Some(m) => out.push_str(&format!(
                    "    conveys {} via {} satisfaction {:.4}\n",
                    p.preference, m.distinction, p.satisfaction
                )),
                None => out.push_str(&format!("    loses {}\n", p.preference)),
            }
        }
        for u in &b.unwanted {
            out.push_str(&format!("    adds unwanted {}\n", u.distinction));
        }
        out.push_str(&format!(
            "    style penalty {:.4} attitude penalty {:.4} collocation bonus {:.4}\n",
            b.style_penalty, b.attitude_penalty, b.collocation_bonus
        ));
    }
    out
}
