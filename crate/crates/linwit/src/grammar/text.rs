//! The grammar text format.
//!
//! ```text
//! # comments run to end of line
//! start: S          # optional; defaults to the first rule's left-hand side
//! S -> a1 S a9 | T
//! T -> "word" T | epsilon
//! ```
//!
//! One rule per line; `|` separates alternatives; `epsilon` (alone in its
//! alternative) is the empty right-hand side. Tokens of the shape `a<digits>`
//! and double-quoted tokens are terminals, every other token is a
//! nonterminal. Undefined nonterminals are allowed and derive the empty
//! language. Declared-but-unreferenced symbols do not survive a
//! serialize/parse round trip; the grammars built by this crate have none.

use std::fmt;

use super::{format_diagnostics, Diagnostic, Grammar, Rule, Symbol};

/// Errors from [`Grammar::from_text`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: missing `->`")]
    MissingArrow { line: usize },
    #[error("line {line}: expected a single nonterminal before `->`")]
    BadLhs { line: usize },
    #[error("line {line}: empty alternative (write `epsilon` for an empty right-hand side)")]
    EmptyAlternative { line: usize },
    #[error("line {line}: `epsilon` must stand alone in its alternative")]
    EpsilonNotAlone { line: usize },
    #[error("line {line}: unterminated quoted terminal")]
    UnterminatedQuote { line: usize },
    #[error("line {line}: expected `start: <nonterminal>`")]
    BadStartHeader { line: usize },
    #[error("line {line}: duplicate `start:` header")]
    DuplicateStartHeader { line: usize },
    #[error("grammar text has no rules and no `start:` header")]
    NoStart,
    #[error("invalid grammar: {}", format_diagnostics(.0))]
    InvalidGrammar(Vec<Diagnostic>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Word(String),
    Quoted(String),
}

fn terminal_shaped(word: &str) -> bool {
    let mut chars = word.chars();
    chars.next() == Some('a')
        && !word[1..].is_empty()
        && word[1..].chars().all(|c| c.is_ascii_digit())
}

fn tokenize_line(line: &str, number: usize) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            break;
        } else if c == '"' {
            chars.next();
            let mut word = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some(other) => word.push(other),
                    None => return Err(ParseError::UnterminatedQuote { line: number }),
                }
            }
            tokens.push(Token::Quoted(word));
        } else {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() || c == '"' || c == '#' {
                    break;
                }
                word.push(c);
                chars.next();
            }
            tokens.push(Token::Word(word));
        }
    }
    Ok(tokens)
}

impl Grammar {
    /// Parses the text format. Symbol declaration order is the order of first
    /// appearance, so parsing is deterministic and serialization round-trips.
    pub fn from_text(text: &str) -> Result<Grammar, ParseError> {
        let mut start: Option<String> = None;
        let mut terminals: Vec<String> = Vec::new();
        let mut nonterminals: Vec<String> = Vec::new();
        let mut rules: Vec<Rule> = Vec::new();

        fn declare(name: &str, list: &mut Vec<String>) {
            if !list.iter().any(|n| n == name) {
                list.push(name.to_string());
            }
        }

        for (index, raw_line) in text.lines().enumerate() {
            let number = index + 1;
            let tokens = tokenize_line(raw_line, number)?;
            if tokens.is_empty() {
                continue;
            }
            if tokens[0] == Token::Word("start:".to_string()) {
                if start.is_some() {
                    return Err(ParseError::DuplicateStartHeader { line: number });
                }
                match tokens.as_slice() {
                    [_, Token::Word(name)] if !terminal_shaped(name) && name != "epsilon" => {
                        declare(name, &mut nonterminals);
                        start = Some(name.clone());
                        continue;
                    }
                    _ => return Err(ParseError::BadStartHeader { line: number }),
                }
            }

            let arrow = Token::Word("->".to_string());
            let Some(arrow_at) = tokens.iter().position(|t| *t == arrow) else {
                return Err(ParseError::MissingArrow { line: number });
            };
            let lhs = match &tokens[..arrow_at] {
                [Token::Word(name)]
                    if !terminal_shaped(name) && name != "epsilon" && name != "|" =>
                {
                    name.clone()
                }
                _ => return Err(ParseError::BadLhs { line: number }),
            };
            declare(&lhs, &mut nonterminals);

            for alternative in tokens[arrow_at + 1..].split(|t| *t == Token::Word("|".to_string()))
            {
                if alternative.is_empty() {
                    return Err(ParseError::EmptyAlternative { line: number });
                }
                let epsilon = Token::Word("epsilon".to_string());
                let rhs: Vec<Symbol> = if alternative.contains(&epsilon) {
                    if alternative.len() != 1 {
                        return Err(ParseError::EpsilonNotAlone { line: number });
                    }
                    Vec::new()
                } else {
                    alternative
                        .iter()
                        .map(|token| match token {
                            Token::Quoted(name) => {
                                declare(name, &mut terminals);
                                Symbol::terminal(name.clone())
                            }
                            Token::Word(name) if terminal_shaped(name) => {
                                declare(name, &mut terminals);
                                Symbol::terminal(name.clone())
                            }
                            Token::Word(name) => {
                                declare(name, &mut nonterminals);
                                Symbol::nonterminal(name.clone())
                            }
                        })
                        .collect()
                };
                rules.push(Rule::new(lhs.clone(), rhs));
            }
        }

        let start = match start {
            Some(s) => s,
            None => rules.first().map(|r| r.lhs.clone()).ok_or(ParseError::NoStart)?,
        };
        let grammar = Grammar::new(terminals, nonterminals, rules, start);
        let diagnostics = grammar.validate();
        if diagnostics.is_empty() {
            Ok(grammar)
        } else {
            Err(ParseError::InvalidGrammar(diagnostics))
        }
    }

    /// Renders the text format: consecutive rules with the same left-hand
    /// side merge into one `|`-separated line, and a `start:` header appears
    /// only when the first rule does not already define the start symbol.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        if self.rules.first().map(|r| r.lhs.as_str()) != Some(self.start.as_str()) {
            lines.push(format!("start: {}", self.start));
        }
        let mut i = 0;
        while i < self.rules.len() {
            let lhs = &self.rules[i].lhs;
            let mut alternatives = Vec::new();
            while i < self.rules.len() && self.rules[i].lhs == *lhs {
                alternatives.push(render_rhs(&self.rules[i].rhs));
                i += 1;
            }
            lines.push(format!("{lhs} -> {}", alternatives.join(" | ")));
        }
        lines.join("\n") + "\n"
    }
}

fn render_rhs(rhs: &[Symbol]) -> String {
    if rhs.is_empty() {
        return "epsilon".to_string();
    }
    let parts: Vec<String> = rhs
        .iter()
        .map(|symbol| match symbol {
            Symbol::Terminal(name) if terminal_shaped(name) => name.clone(),
            Symbol::Terminal(name) => format!("\"{name}\""),
            Symbol::Nonterminal(name) => name.clone(),
        })
        .collect();
    parts.join(" ")
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
