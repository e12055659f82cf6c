//! Scalar vocabularies shared by lexicon distinctions and interlingual
//! possibilities: how often a nuance is conveyed, how strongly, by what
//! means, and the attitude/style scales.

use std::fmt;

/// Degree of possibility that a nuance is conveyed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Frequency {
    Never,
    Sometimes,
    #[default]
    Always,
}

impl Frequency {
    pub fn keyword(self) -> &'static str {
        match self {
            Frequency::Never => "never",
            Frequency::Sometimes => "sometimes",
            Frequency::Always => "always",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "never" => Some(Frequency::Never),
            "sometimes" => Some(Frequency::Sometimes),
            "always" => Some(Frequency::Always),
            _ => None,
        }
    }

    /// Position in a frequency value table.
    pub fn index(self) -> usize {
        self as usize
    }
}

/// How strongly a nuance is conveyed when it is conveyed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strength {
    Weak,
    #[default]
    Medium,
    Strong,
}

impl Strength {
    pub fn keyword(self) -> &'static str {
        match self {
            Strength::Weak => "weak",
            Strength::Medium => "medium",
            Strength::Strong => "strong",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "weak" => Some(Strength::Weak),
            "medium" => Some(Strength::Medium),
            "strong" => Some(Strength::Strong),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Manner of conveyance, ordered from most indirect to most direct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NuanceType {
    Emphasis,
    Suggestion,
    Implication,
    Denotation,
}

impl NuanceType {
    pub fn keyword(self) -> &'static str {
        match self {
            NuanceType::Emphasis => "emphasis",
            NuanceType::Suggestion => "suggestion",
            NuanceType::Implication => "implication",
            NuanceType::Denotation => "denotation",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "emphasis" => Some(NuanceType::Emphasis),
            "suggestion" => Some(NuanceType::Suggestion),
            "implication" => Some(NuanceType::Implication),
            "denotation" => Some(NuanceType::Denotation),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Speaker stance toward a specific participant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttitudeValue {
    Pejorative,
    Neutral,
    Favorable,
}

impl AttitudeValue {
    pub fn keyword(self) -> &'static str {
        match self {
            AttitudeValue::Pejorative => "pejorative",
            AttitudeValue::Neutral => "neutral",
            AttitudeValue::Favorable => "favorable",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "pejorative" => Some(AttitudeValue::Pejorative),
            "neutral" => Some(AttitudeValue::Neutral),
            "favorable" => Some(AttitudeValue::Favorable),
            _ => None,
        }
    }
}

/// Level on a style dimension such as formality.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum StyleLevel {
    Low,
    #[default]
    Neutral,
    High,
}

impl StyleLevel {
    pub fn keyword(self) -> &'static str {
        match self {
            StyleLevel::Low => "low",
            StyleLevel::Neutral => "neutral",
            StyleLevel::High => "high",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "low" => Some(StyleLevel::Low),
            "neutral" => Some(StyleLevel::Neutral),
            "high" => Some(StyleLevel::High),
            _ => None,
        }
    }

    /// Numeric offset used by style penalties: low = -1, neutral = 0, high = +1.
    pub fn offset(self) -> i32 {
        match self {
            StyleLevel::Low => -1,
            StyleLevel::Neutral => 0,
            StyleLevel::High => 1,
        }
    }
}

/// The principal style dimension.
pub const FORMALITY: &str = "formality";

macro_rules! impl_display {
    ($($ty:ty),*) => {
        $(impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.keyword())
            }
        })*
    };
}

impl_display!(Frequency, Strength, NuanceType, AttitudeValue, StyleLevel);
