//! Context-free grammars with explicitly declared symbol sets.
//!
//! A [`Grammar`] is plain data: terminal names, nonterminal names, a rule
//! list, and a start symbol. Construction never fails; [`Grammar::validate`]
//! reports every well-formedness violation as a [`Diagnostic`], and the
//! analysis entry points ([`Grammar::recognize`], [`Grammar::count_parses`],
//! ...) refuse invalid grammars with [`GrammarError::Invalid`].
//!
//! Sentences are strings of whitespace-separated terminal names; the empty
//! string is the empty sentence. A grammar has a canonical text form
//! (`A -> a1 A a9 | B` rule lines, see [`Grammar::from_text`]) used by the
//! command-line tools.

mod count;
mod earley;
mod enumerate;
mod text;

pub use count::DerivationCount;
pub use earley::Recognizer;
pub use text::ParseError;

use std::collections::{HashMap, HashSet};
use std::fmt;

/// One occurrence of a symbol on the right-hand side of a rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(String),
    Nonterminal(String),
}

impl Symbol {
    pub fn terminal(name: impl Into<String>) -> Self {
        Symbol::Terminal(name.into())
    }

    pub fn nonterminal(name: impl Into<String>) -> Self {
        Symbol::Nonterminal(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Symbol::Terminal(n) | Symbol::Nonterminal(n) => n,
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Symbol::Terminal(_))
    }
}

/// A production `lhs -> rhs`. An empty `rhs` is the epsilon rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: String,
    pub rhs: Vec<Symbol>,
}

impl Rule {
    pub fn new(lhs: impl Into<String>, rhs: Vec<Symbol>) -> Self {
        Rule { lhs: lhs.into(), rhs }
    }
}

/// A context-free grammar over declared terminal and nonterminal alphabets.
///
/// The declared symbol lists carry meaning beyond the rules that mention
/// them: a nonterminal may be declared and never defined (it derives the
/// empty language), and the empty rule list is a valid grammar for the empty
/// language. Symbol order is preserved and used for deterministic output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    terminals: Vec<String>,
    nonterminals: Vec<String>,
    rules: Vec<Rule>,
    start: String,
}

/// A single well-formedness violation found by [`Grammar::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// The start symbol is not in the declared nonterminal list.
    UndeclaredStart { start: String },
    /// A name appears twice in the terminal list.
    DuplicateTerminal { name: String },
    /// A name appears twice in the nonterminal list.
    DuplicateNonterminal { name: String },
    /// A name is declared both as a terminal and as a nonterminal.
    NamespaceOverlap { name: String },
    /// A rule's left-hand side is not a declared nonterminal.
    UndeclaredLhs { rule: usize, lhs: String },
    /// A rule mentions a symbol missing from its declared alphabet.
    UndeclaredRhsSymbol { rule: usize, symbol: Symbol },
    /// A rule is listed twice.
    DuplicateRule { rule: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::UndeclaredStart { start } => {
                write!(f, "start symbol `{start}` is not a declared nonterminal")
            }
            Diagnostic::DuplicateTerminal { name } => {
                write!(f, "terminal `{name}` declared more than once")
            }
            Diagnostic::DuplicateNonterminal { name } => {
                write!(f, "nonterminal `{name}` declared more than once")
            }
            Diagnostic::NamespaceOverlap { name } => {
                write!(f, "`{name}` is declared both as a terminal and as a nonterminal")
            }
            Diagnostic::UndeclaredLhs { rule, lhs } => {
                write!(f, "rule {rule}: left-hand side `{lhs}` is not a declared nonterminal")
            }
            Diagnostic::UndeclaredRhsSymbol { rule, symbol } => {
                let kind = if symbol.is_terminal() { "terminal" } else { "nonterminal" };
                write!(f, "rule {rule}: {kind} `{}` is not declared", symbol.name())
            }
            Diagnostic::DuplicateRule { rule } => {
                write!(f, "rule {rule} duplicates an earlier rule")
            }
        }
    }
}

/// Errors raised by grammar analyses.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrammarError {
    #[error("invalid grammar: {}", format_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("input token `{0}` is not a declared terminal")]
    UndeclaredTerminal(String),
}

fn format_diagnostics(diagnostics: &[Diagnostic]) -> String {
    let parts: Vec<String> = diagnostics.iter().map(|d| d.to_string()).collect();
    parts.join("; ")
}

impl Grammar {
    pub fn new(
        terminals: Vec<String>,
        nonterminals: Vec<String>,
        rules: Vec<Rule>,
        start: impl Into<String>,
    ) -> Self {
        Grammar { terminals, nonterminals, rules, start: start.into() }
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    /// Checks every well-formedness condition and returns one diagnostic per
    /// violation, in a deterministic order (symbol-table problems first, then
    /// rule problems in rule order). An empty result means the grammar is
    /// valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let terminals: HashSet<&str> = self.terminals.iter().map(String::as_str).collect();
        let nonterminals: HashSet<&str> = self.nonterminals.iter().map(String::as_str).collect();

        if !nonterminals.contains(self.start.as_str()) {
            out.push(Diagnostic::UndeclaredStart { start: self.start.clone() });
        }
        let mut seen = HashSet::new();
        for name in &self.terminals {
            if !seen.insert(name.as_str()) {
                out.push(Diagnostic::DuplicateTerminal { name: name.clone() });
            }
        }
        seen.clear();
        for name in &self.nonterminals {
            if !seen.insert(name.as_str()) {
                out.push(Diagnostic::DuplicateNonterminal { name: name.clone() });
            }
        }
        for name in &self.nonterminals {
            if terminals.contains(name.as_str()) {
                out.push(Diagnostic::NamespaceOverlap { name: name.clone() });
            }
        }

        let mut seen_rules: HashMap<&Rule, usize> = HashMap::new();
        for (index, rule) in self.rules.iter().enumerate() {
            if !nonterminals.contains(rule.lhs.as_str()) {
                out.push(Diagnostic::UndeclaredLhs { rule: index, lhs: rule.lhs.clone() });
            }
            for symbol in &rule.rhs {
                let declared = match symbol {
                    Symbol::Terminal(n) => terminals.contains(n.as_str()),
                    Symbol::Nonterminal(n) => nonterminals.contains(n.as_str()),
                };
                if !declared {
                    out.push(Diagnostic::UndeclaredRhsSymbol { rule: index, symbol: symbol.clone() });
                }
            }
            if seen_rules.insert(rule, index).is_some() {
                out.push(Diagnostic::DuplicateRule { rule: index });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn ensure_valid(&self) -> Result<(), GrammarError> {
        let diagnostics = self.validate();
        if diagnostics.is_empty() {
            Ok(())
        } else {
            Err(GrammarError::Invalid(diagnostics))
        }
    }

    /// True when every rule's right-hand side contains at most one
    /// nonterminal *occurrence* (the defining property of a linear grammar).
    /// The result does not depend on rule order.
    pub fn is_linear(&self) -> Result<bool, GrammarError> {
        self.ensure_valid()?;
        Ok(self.rules.iter().all(|rule| {
            rule.rhs.iter().filter(|symbol| !symbol.is_terminal()).count() <= 1
        }))
    }

    /// Does the start symbol derive the given sentence? `input` is a
    /// whitespace-separated list of terminal names; the empty string is the
    /// empty sentence.
    pub fn recognize(&self, input: &str) -> Result<bool, GrammarError> {
        Ok(Recognizer::new(self)?.recognize(input)?)
    }

    /// Number of distinct parse trees of `input`, with
    /// [`DerivationCount::Infinite`] when cyclic derivations make the count
    /// unbounded.
    pub fn count_parses(&self, input: &str) -> Result<DerivationCount, GrammarError> {
        Ok(Recognizer::new(self)?.count_parses(input)?)
    }

    /// All sentences of length at most `max_length`, in shortlex order
    /// (length first, then token sequence). Always terminates: only finitely
    /// many sentences fit under the bound.
    pub fn enumerate_language(&self, max_length: usize) -> Result<Vec<String>, GrammarError> {
        Ok(Recognizer::new(self)?.enumerate_language(max_length))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symbols(shape: &[(&str, bool)]) -> Vec<Symbol> {
        shape
            .iter()
            .map(|&(name, term)| {
                if term {
                    Symbol::terminal(name)
                } else {
                    Symbol::nonterminal(name)
                }
            })
            .collect()
    }

    fn toy() -> Grammar {
        Grammar::new(
            vec!["a".into()],
            vec!["S".into()],
            vec![
                Rule::new("S", symbols(&[("a", true), ("S", false)])),
                Rule::new("S", vec![]),
            ],
            "S",
        )
    }

    #[test]
    fn valid_grammar_has_no_diagnostics() {
        assert!(toy().validate().is_empty());
        assert!(toy().is_valid());
    }

    #[test]
    fn empty_rule_list_with_declared_start_is_valid() {
        let g = Grammar::new(vec![], vec!["S".into()], vec![], "S");
        assert!(g.is_valid());
        assert_eq!(g.recognize("").unwrap(), false);
    }

    #[test]
    fn undeclared_start_is_reported() {
        let g = Grammar::new(vec![], vec!["S".into()], vec![], "T");
        assert_eq!(g.validate(), vec![Diagnostic::UndeclaredStart { start: "T".into() }]);
    }

    #[test]
    fn duplicate_rule_is_reported() {
        let mut g = toy();
        g.rules.push(g.rules[1].clone());
        assert_eq!(g.validate(), vec![Diagnostic::DuplicateRule { rule: 2 }]);
    }

    #[test]
    fn undeclared_symbols_are_reported_per_occurrence() {
        let g = Grammar::new(
            vec!["a".into()],
            vec!["S".into()],
            vec![Rule::new("T", symbols(&[("b", true), ("U", false)]))],
            "S",
        );
        let diagnostics = g.validate();
        assert_eq!(
            diagnostics,
            vec![
                Diagnostic::UndeclaredLhs { rule: 0, lhs: "T".into() },
                Diagnostic::UndeclaredRhsSymbol { rule: 0, symbol: Symbol::terminal("b") },
                Diagnostic::UndeclaredRhsSymbol { rule: 0, symbol: Symbol::nonterminal("U") },
            ]
        );
    }

    #[test]
    fn namespace_overlap_is_reported() {
        let g = Grammar::new(vec!["x".into()], vec!["x".into()], vec![], "x");
        assert_eq!(g.validate(), vec![Diagnostic::NamespaceOverlap { name: "x".into() }]);
    }

    #[test]
    fn duplicate_declarations_are_reported() {
        let g = Grammar::new(
            vec!["a".into(), "a".into()],
            vec!["S".into(), "S".into()],
            vec![],
            "S",
        );
        assert_eq!(
            g.validate(),
            vec![
                Diagnostic::DuplicateTerminal { name: "a".into() },
                Diagnostic::DuplicateNonterminal { name: "S".into() },
            ]
        );
    }

    #[test]
    fn analyses_refuse_invalid_grammars() {
        let g = Grammar::new(vec![], vec![], vec![], "S");
        match g.recognize("") {
            Err(GrammarError::Invalid(d)) => assert!(!d.is_empty()),
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn linearity_counts_occurrences_not_distinct_symbols() {
        let mut g = toy();
        assert_eq!(g.is_linear().unwrap(), true);
        g.rules.push(Rule::new("S", symbols(&[("S", false), ("S", false)])));
        assert_eq!(g.is_linear().unwrap(), false);
    }

    #[test]
    fn linearity_is_stable_under_rule_reordering() {
        let mut g = toy();
        g.rules.reverse();
        assert_eq!(g.is_linear().unwrap(), true);
    }

    #[test]
    fn undeclared_input_token_is_an_error() {
        assert_eq!(
            toy().recognize("a b"),
            Err(GrammarError::UndeclaredTerminal("b".into()))
        );
    }
}
