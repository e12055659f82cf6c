//! Tokenizer and token cursor shared by the bracketed formats (interlingual
//! text and the lexicon language).
//!
//! Word shape decides the grammatical role of a bare token: all-uppercase
//! words are relation names (`AGENT`, `ATTRIBUTE-OF`), capitalized words with
//! at least one lowercase letter are concept names (`MakingAvailable`), and
//! lowercase words are instance ids, atoms, and keywords.

use std::fmt;

use thiserror::Error;

/// Line and column of a token, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
#[error("{pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

impl SyntaxError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        SyntaxError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Comma,
    /// Bare word: keyword, id, atom, concept, or relation name.
    Word(String),
    /// Double-quoted string, quotes stripped.
    Quoted(String),
    /// `?name` variable.
    Var(String),
    /// `#n` reference to a labelled instance.
    Ref(u32),
    /// `#n=` label definition, always followed by an instance.
    RefDef(u32),
    /// `%` comment running to end of line, marker and padding stripped.
    Comment(String),
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LBracket => "`[`".into(),
            TokenKind::RBracket => "`]`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Word(w) => format!("`{w}`"),
            TokenKind::Quoted(s) => format!("\"{s}\""),
            TokenKind::Var(v) => format!("`?{v}`"),
            TokenKind::Ref(n) => format!("`#{n}`"),
            TokenKind::RefDef(n) => format!("`#{n}=`"),
            TokenKind::Comment(_) => "comment".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
}

/// True for relation names: uppercase throughout, as in `AGENT` or `ATTRIBUTE-OF`.
pub fn is_relation_word(word: &str) -> bool {
    let mut chars = word.chars();
    matches!(chars.next(), Some(c) if c.is_uppercase())
        && word
            .chars()
            .all(|c| c.is_uppercase() || c == '-' || c.is_ascii_digit())
}

/// True for concept names: capitalized with at least one lowercase letter,
/// as in `Thing` or `MakingAvailable`.
pub fn is_concept_word(word: &str) -> bool {
    let mut chars = word.chars();
    matches!(chars.next(), Some(c) if c.is_uppercase()) && word.chars().any(|c| c.is_lowercase())
}

/// True for instance ids, atoms, and keywords: lowercase first letter.
pub fn is_plain_word(word: &str) -> bool {
    matches!(word.chars().next(), Some(c) if c.is_lowercase())
}

struct Scanner<'a> {
    rest: &'a str,
    line: u32,
    col: u32,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            rest: text,
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.rest.chars().next()?;
        self.rest = &self.rest[c.len_utf8()..];
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, keep: impl Fn(char) -> bool) -> &'a str {
        let start = self.rest;
        let mut len = 0;
        while let Some(c) = self.peek() {
            if !keep(c) {
                break;
            }
            len += c.len_utf8();
            self.bump();
        }
        &start[..len]
    }
}

fn word_start(c: char) -> bool {
    c.is_alphabetic()
}

fn word_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '-' || c == '\''
}

/// Tokenize a whole input. Comments are kept as tokens so parsers that care
/// about them (possibility sources) can pick them up; everyone else skips
/// them via [`Cursor`].
pub fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut sc = Scanner::new(text);
    let mut out = Vec::new();
    loop {
        while matches!(sc.peek(), Some(c) if c.is_whitespace()) {
            sc.bump();
        }
        let pos = sc.pos();
        let c = match sc.peek() {
            Some(c) => c,
            None => break,
        };
        let kind = match c {
            '{' => {
                sc.bump();
                TokenKind::LBrace
            }
            '}' => {
                sc.bump();
                TokenKind::RBrace
            }
            '[' => {
                sc.bump();
                TokenKind::LBracket
            }
            ']' => {
                sc.bump();
                TokenKind::RBracket
            }
            '(' => {
                sc.bump();
                TokenKind::LParen
            }
            ')' => {
                sc.bump();
                TokenKind::RParen
            }
            ',' => {
                sc.bump();
                TokenKind::Comma
            }
            ':' => {
                sc.bump();
                TokenKind::Colon
            }
            '%' => {
                sc.bump();
                let body = sc.take_while(|c| c != '\n');
                TokenKind::Comment(body.trim().to_string())
            }
            '"' => {
                sc.bump();
                let body = sc.take_while(|c| c != '"' && c != '\n');
                match sc.peek() {
                    Some('"') => {
                        sc.bump();
                        TokenKind::Quoted(body.to_string())
                    }
                    _ => return Err(SyntaxError::new(pos, "unterminated string")),
                }
            }
            '?' => {
                sc.bump();
                let name = sc.take_while(word_continue);
                if name.is_empty() || !name.chars().next().unwrap().is_alphabetic() {
                    return Err(SyntaxError::new(pos, "expected variable name after `?`"));
                }
                TokenKind::Var(name.to_string())
            }
            '#' => {
                sc.bump();
                let digits = sc.take_while(|c| c.is_ascii_digit());
                if digits.is_empty() {
                    return Err(SyntaxError::new(pos, "expected digits after `#`"));
                }
                let n: u32 = digits
                    .parse()
                    .map_err(|_| SyntaxError::new(pos, format!("label #{digits} out of range")))?;
                if sc.peek() == Some('=') {
                    sc.bump();
                    TokenKind::RefDef(n)
                } else {
                    TokenKind::Ref(n)
                }
            }
            c if word_start(c) => {
                let mut word = String::new();
                word.push_str(sc.take_while(word_continue));
                // A colon glued between alphanumerics stays inside the word,
                // so `en:provide-c` is one token while `language:` is two.
                while sc.peek() == Some(':') {
                    let after = sc.rest[1..].chars().next();
                    match after {
                        Some(a) if a.is_alphanumeric() => {
                            sc.bump();
                            word.push(':');
                            word.push_str(sc.take_while(word_continue));
                        }
                        _ => break,
                    }
                }
                TokenKind::Word(word)
            }
            other => {
                return Err(SyntaxError::new(
                    pos,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        out.push(Token { kind, pos });
    }
    Ok(out)
}

/// Cursor over a token stream with lookahead and error helpers.
pub struct Cursor {
    tokens: Vec<Token>,
    next: usize,
    end: Pos,
}

impl Cursor {
    pub fn new(tokens: Vec<Token>, end: Pos) -> Self {
        Cursor {
            tokens,
            next: 0,
            end,
        }
    }

    /// Tokenize `text` and position at the start.
    pub fn over(text: &str) -> Result<Self, SyntaxError> {
        let tokens = tokenize(text)?;
        let end = match text.lines().enumerate().last() {
            Some((i, line)) => Pos {
                line: i as u32 + 1,
                col: line.chars().count() as u32 + 1,
            },
            None => Pos { line: 1, col: 1 },
        };
        Ok(Cursor::new(tokens, end))
    }

    /// Next non-comment token without consuming it.
    pub fn peek(&self) -> Option<&Token> {
        self.tokens[self.next..]
            .iter()
            .find(|t| !matches!(t.kind, TokenKind::Comment(_)))
    }

    /// Consume and return the next non-comment token.
    pub fn advance(&mut self) -> Option<Token> {
        while self.next < self.tokens.len() {
            let tok = self.tokens[self.next].clone();
            self.next += 1;
            if !matches!(tok.kind, TokenKind::Comment(_)) {
                return Some(tok);
            }
        }
        None
    }

    /// If the next raw token is a comment on `line`, consume and return its text.
    pub fn take_comment_on_line(&mut self, line: u32) -> Option<String> {
        match self.tokens.get(self.next) {
            Some(Token {
                kind: TokenKind::Comment(text),
                pos,
            }) if pos.line == line => {
                let text = text.clone();
                self.next += 1;
                Some(text)
            }
            _ => None,
        }
    }

    /// Position where the next token (or end of input) sits, for errors.
    pub fn here(&self) -> Pos {
        self.peek().map(|t| t.pos).unwrap_or(self.end)
    }

    pub fn at_end(&self) -> bool {
        self.peek().is_none()
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.here(), message)
    }

    pub fn expect(&mut self, kind: TokenKind) -> Result<Token, SyntaxError> {
        match self.advance() {
            Some(tok) if tok.kind == kind => Ok(tok),
            Some(tok) => Err(SyntaxError::new(
                tok.pos,
                format!(
                    "expected {}, found {}",
                    kind.describe(),
                    tok.kind.describe()
                ),
            )),
            None => Err(SyntaxError::new(
                self.end,
                format!("expected {}, found end of input", kind.describe()),
            )),
        }
    }

    /// Consume a bare word and return it with its position.
    pub fn expect_word(&mut self, what: &str) -> Result<(String, Pos), SyntaxError> {
        match self.advance() {
            Some(Token {
                kind: TokenKind::Word(w),
                pos,
            }) => Ok((w, pos)),
            Some(tok) => Err(SyntaxError::new(
                tok.pos,
                format!("expected {what}, found {}", tok.kind.describe()),
            )),
            None => Err(SyntaxError::new(
                self.end,
                format!("expected {what}, found end of input"),
            )),
        }
    }

    /// Consume the exact keyword `kw`.
    pub fn expect_keyword(&mut self, kw: &str) -> Result<Pos, SyntaxError> {
        let (word, pos) = self.expect_word(&format!("`{kw}`"))?;
        if word == kw {
            Ok(pos)
        } else {
            Err(SyntaxError::new(
                pos,
                format!("expected `{kw}`, found `{word}`"),
            ))
        }
    }

    /// Consume a token if it matches `kind`; return whether it did.
    pub fn eat(&mut self, kind: &TokenKind) -> bool {
        if matches!(self.peek(), Some(t) if t.kind == *kind) {
            self.advance();
            true
        } else {
            false
        }
    }
}
