//! Earley recognition over a compiled grammar.
//!
//! [`Recognizer`] interns a validated [`Grammar`] into dense integer tables
//! (symbol ids, rules grouped by left-hand side, the nullable set) and runs
//! the classic three-action Earley loop. Nullable nonterminals get the
//! standard fix: when prediction meets a nullable `B`, the predicting item is
//! advanced past `B` immediately, which makes same-position completion races
//! impossible and keeps the chart exact in the presence of epsilon rules and
//! unit cycles.
//!
//! The recognizer keeps every *completed* span `(nonterminal, start, end)`.
//! Recognition reads one entry; derivation counting (see the sibling module)
//! replays the chart bottom-up, so both share a single parsing pass.

use std::collections::{HashMap, HashSet};

use super::count::{self, DerivationCount};
use super::{Grammar, GrammarError, Symbol};

/// A grammar symbol after interning: terminal or nonterminal id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(super) enum Sym {
    T(u16),
    N(u16),
}

#[derive(Debug)]
pub(super) struct CompiledRule {
    pub(super) lhs: u16,
    pub(super) rhs: Vec<Sym>,
}

/// Set of completed spans from one Earley run.
#[derive(Debug)]
pub(super) struct Chart {
    pub(super) completed: HashSet<(u16, usize, usize)>,
}

impl Chart {
    pub(super) fn contains(&self, nt: u16, start: usize, end: usize) -> bool {
        self.completed.contains(&(nt, start, end))
    }
}

/// A [`Grammar`] compiled for repeated queries.
///
/// Building a `Recognizer` validates the grammar once; afterwards
/// recognition, parse counting, and enumeration run on integer tables with no
/// further validation cost. Build one per grammar when sweeping many inputs.
#[derive(Debug)]
pub struct Recognizer {
    pub(super) terminals: Vec<String>,
    pub(super) term_ids: HashMap<String, u16>,
    pub(super) nonterminals: Vec<String>,
    pub(super) rules: Vec<CompiledRule>,
    pub(super) rules_by_lhs: Vec<Vec<u32>>,
    pub(super) nullable: Vec<bool>,
    /// Number of derivation trees for the empty sentence, per nonterminal.
    pub(super) epsilon_trees: Vec<DerivationCount>,
    pub(super) start: u16,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Item {
    rule: u32,
    dot: u32,
    origin: usize,
}

impl Recognizer {
    pub fn new(grammar: &Grammar) -> Result<Self, GrammarError> {
        let diagnostics = grammar.validate();
        if !diagnostics.is_empty() {
            return Err(GrammarError::Invalid(diagnostics));
        }

        let terminals: Vec<String> = grammar.terminals().to_vec();
        let nonterminals: Vec<String> = grammar.nonterminals().to_vec();
        let term_ids: HashMap<String, u16> = terminals
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u16))
            .collect();
        let nt_ids: HashMap<&str, u16> = grammar
            .nonterminals()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i as u16))
            .collect();

        let rules: Vec<CompiledRule> = grammar
            .rules()
            .iter()
            .map(|rule| CompiledRule {
                lhs: nt_ids[rule.lhs.as_str()],
                rhs: rule
                    .rhs
                    .iter()
                    .map(|symbol| match symbol {
                        Symbol::Terminal(n) => Sym::T(term_ids[n.as_str()]),
                        Symbol::Nonterminal(n) => Sym::N(nt_ids[n.as_str()]),
                    })
                    .collect(),
            })
            .collect();

        let mut rules_by_lhs: Vec<Vec<u32>> = vec![Vec::new(); nonterminals.len()];
        for (index, rule) in rules.iter().enumerate() {
            rules_by_lhs[rule.lhs as usize].push(index as u32);
        }

        let nullable = compute_nullable(nonterminals.len(), &rules);
        let epsilon_trees = count::epsilon_tree_counts(nonterminals.len(), &rules, &nullable);

        Ok(Recognizer {
            terminals,
            term_ids,
            nonterminals,
            rules,
            rules_by_lhs,
            nullable,
            epsilon_trees,
            start: nt_ids[grammar.start()],
        })
    }

    /// Splits `input` on whitespace and maps each token to its terminal id.
    /// The empty (or all-whitespace) string is the empty sentence.
    pub fn tokenize(&self, input: &str) -> Result<Vec<u16>, GrammarError> {
        input
            .split_whitespace()
            .map(|token| {
                self.term_ids
                    .get(token)
                    .copied()
                    .ok_or_else(|| GrammarError::UndeclaredTerminal(token.to_string()))
            })
            .collect()
    }

    /// Terminal id for `name`, if declared. Useful when generating inputs
    /// directly in token form.
    pub fn terminal_id(&self, name: &str) -> Option<u16> {
        self.term_ids.get(name).copied()
    }

    pub fn recognize(&self, input: &str) -> Result<bool, GrammarError> {
        Ok(self.recognize_tokens(&self.tokenize(input)?))
    }

    pub fn recognize_tokens(&self, tokens: &[u16]) -> bool {
        if tokens.is_empty() {
            return self.nullable[self.start as usize];
        }
        self.chart(tokens).contains(self.start, 0, tokens.len())
    }

    pub fn count_parses(&self, input: &str) -> Result<DerivationCount, GrammarError> {
        Ok(self.count_parses_tokens(&self.tokenize(input)?))
    }

    pub fn count_parses_tokens(&self, tokens: &[u16]) -> DerivationCount {
        if tokens.is_empty() {
            return self.epsilon_trees[self.start as usize];
        }
        let chart = self.chart(tokens);
        count::count_string(self, tokens, &chart)
    }

    pub fn enumerate_language(&self, max_length: usize) -> Vec<String> {
        let mut sentences: Vec<Vec<u16>> =
            super::enumerate::enumerate(self, max_length).into_iter().collect();
        // Shortlex: by length first, then by token sequence.
        sentences.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        sentences
            .into_iter()
            .map(|tokens| {
                tokens
                    .iter()
                    .map(|&t| self.terminals[t as usize].as_str())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }

    /// Runs the Earley loop and returns every completed span.
    pub(super) fn chart(&self, tokens: &[u16]) -> Chart {
        let n = tokens.len();
        let mut sets: Vec<Vec<Item>> = vec![Vec::new(); n + 1];
        let mut seen: Vec<HashSet<Item>> = vec![HashSet::new(); n + 1];
        let mut completed: HashSet<(u16, usize, usize)> = HashSet::new();

        for &rule in &self.rules_by_lhs[self.start as usize] {
            push(&mut sets[0], &mut seen[0], Item { rule, dot: 0, origin: 0 });
        }

        for pos in 0..=n {
            let mut index = 0;
            while index < sets[pos].len() {
                let item = sets[pos][index];
                index += 1;
                let rule = &self.rules[item.rule as usize];
                match rule.rhs.get(item.dot as usize) {
                    Some(&Sym::T(a)) => {
                        if pos < n && tokens[pos] == a {
                            push(&mut sets[pos + 1], &mut seen[pos + 1], Item { dot: item.dot + 1, ..item });
                        }
                    }
                    Some(&Sym::N(b)) => {
                        for &predicted in &self.rules_by_lhs[b as usize] {
                            push(
                                &mut sets[pos],
                                &mut seen[pos],
                                Item { rule: predicted, dot: 0, origin: pos },
                            );
                        }
                        // Nullable fix: step over B now; the empty-span
                        // completion may otherwise arrive after this item has
                        // already been processed.
                        if self.nullable[b as usize] {
                            push(&mut sets[pos], &mut seen[pos], Item { dot: item.dot + 1, ..item });
                        }
                    }
                    None => {
                        completed.insert((rule.lhs, item.origin, pos));
                        // Advance every item in the origin set waiting on
                        // this nonterminal. When origin == pos the set is
                        // still growing; the index loop plus the nullable fix
                        // cover items added later.
                        let mut waiting = Vec::new();
                        for candidate in &sets[item.origin] {
                            let candidate_rule = &self.rules[candidate.rule as usize];
                            if candidate_rule.rhs.get(candidate.dot as usize)
                                == Some(&Sym::N(rule.lhs))
                            {
                                waiting.push(Item { dot: candidate.dot + 1, ..*candidate });
                            }
                        }
                        for advanced in waiting {
                            push(&mut sets[pos], &mut seen[pos], advanced);
                        }
                    }
                }
            }
        }

        Chart { completed }
    }
}

fn push(set: &mut Vec<Item>, seen: &mut HashSet<Item>, item: Item) {
    if seen.insert(item) {
        set.push(item);
    }
}

fn compute_nullable(n_nonterminals: usize, rules: &[CompiledRule]) -> Vec<bool> {
    let mut nullable = vec![false; n_nonterminals];
    let mut changed = true;
    while changed {
        changed = false;
        for rule in rules {
            if nullable[rule.lhs as usize] {
                continue;
            }
            let all_nullable = rule.rhs.iter().all(|sym| match sym {
                Sym::T(_) => false,
                Sym::N(b) => nullable[*b as usize],
            });
            if all_nullable {
                nullable[rule.lhs as usize] = true;
                changed = true;
            }
        }
    }
    nullable
}
