//! Exact parse-tree counting with unbounded-ambiguity detection.
//!
//! The count of derivation trees for a string can be infinite as soon as the
//! grammar has epsilon rules or unit-style cycles (`S -> S`, or `S -> A S`
//! with nullable `A`), so the usual CYK-style product-sum recurrence is not
//! enough: trees may nest without consuming input. The engine splits the
//! problem in two:
//!
//! * **Empty spans.** For each nonterminal, the number of trees deriving the
//!   empty sentence is computed once on the *epsilon graph*: an edge `A -> B`
//!   for every rule of `A` whose right-hand side consists entirely of
//!   nullable nonterminals, one edge per occurrence target. A nonterminal
//!   that can reach a cycle in this graph has infinitely many empty-sentence
//!   trees; the rest form a DAG and get exact counts by fixpoint iteration.
//!
//! * **Non-empty spans.** Spans realized by the Earley chart are processed
//!   in order of increasing length. Within one span `(i, j)`, a tree for `A`
//!   either splits the span properly (every child shorter: a plain
//!   product-sum, the *base* count) or hands the full span to exactly one
//!   child `B` while the flanking symbols all derive epsilon (a weighted
//!   edge `A -> B` inside the span). Base counts plus edges form a linear
//!   system whose cycles are exactly the unbounded-ambiguity loops: a
//!   nonterminal reaching a *productive* cycle counts as infinite, the rest
//!   resolve by fixpoint on the remaining DAG.
//!
//! Counts use saturating `u64` arithmetic with an explicit [`Infinite`]
//! value; multiplication treats `Infinite x 0 = 0` (an impossible subtree
//! annihilates the whole split).
//!
//! [`Infinite`]: DerivationCount::Infinite

use std::collections::HashMap;
use std::fmt;

use super::earley::{Chart, CompiledRule, Recognizer, Sym};

/// Number of distinct parse trees: an exact saturating count, or infinite.
///
/// Ordering puts every finite count below `Infinite`. Finite values saturate
/// at `u64::MAX`; at that magnitude the distinction from infinity carries no
/// information the callers here care about, and the arithmetic stays total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DerivationCount {
    Finite(u64),
    Infinite,
}

impl DerivationCount {
    pub const ZERO: DerivationCount = DerivationCount::Finite(0);
    pub const ONE: DerivationCount = DerivationCount::Finite(1);

    pub fn is_zero(self) -> bool {
        self == DerivationCount::ZERO
    }

    pub fn plus(self, other: DerivationCount) -> DerivationCount {
        match (self, other) {
            (DerivationCount::Finite(a), DerivationCount::Finite(b)) => {
                DerivationCount::Finite(a.saturating_add(b))
            }
            _ => DerivationCount::Infinite,
        }
    }

    /// Product with zero-absorption: zero trees on one side annihilates the
    /// combination even when the other side is infinite.
    pub fn times(self, other: DerivationCount) -> DerivationCount {
        match (self, other) {
            (DerivationCount::Finite(a), DerivationCount::Finite(b)) => {
                DerivationCount::Finite(a.saturating_mul(b))
            }
            (a, b) => {
                if a.is_zero() || b.is_zero() {
                    DerivationCount::ZERO
                } else {
                    DerivationCount::Infinite
                }
            }
        }
    }
}

impl fmt::Display for DerivationCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationCount::Finite(n) => write!(f, "{n}"),
            DerivationCount::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Nodes of a graph given as adjacency lists; returns, per node, whether it
/// can reach a node that lies on a directed cycle (self-loops included).
/// Quadratic, which is fine for the handful of nonterminals sharing a span.
fn reaches_cycle(adjacency: &[Vec<usize>]) -> Vec<bool> {
    let n = adjacency.len();
    let mut on_cycle = vec![false; n];
    for origin in 0..n {
        // BFS from `origin`; it lies on a cycle when it sees itself again.
        let mut visited = vec![false; n];
        let mut queue: Vec<usize> = adjacency[origin].clone();
        while let Some(node) = queue.pop() {
            if node == origin {
                on_cycle[origin] = true;
                break;
            }
            if !visited[node] {
                visited[node] = true;
                queue.extend(adjacency[node].iter().copied());
            }
        }
    }
    // Propagate backwards: anything with an edge into the cycle-reaching set
    // reaches a cycle too.
    let mut reach = on_cycle;
    let mut changed = true;
    while changed {
        changed = false;
        for node in 0..n {
            if !reach[node] && adjacency[node].iter().any(|&next| reach[next]) {
                reach[node] = true;
                changed = true;
            }
        }
    }
    reach
}

/// Per-nonterminal count of derivation trees for the empty sentence.
pub(super) fn epsilon_tree_counts(
    n_nonterminals: usize,
    rules: &[CompiledRule],
    nullable: &[bool],
) -> Vec<DerivationCount> {
    let all_nullable = |rule: &CompiledRule| {
        rule.rhs.iter().all(|sym| match sym {
            Sym::T(_) => false,
            Sym::N(b) => nullable[*b as usize],
        })
    };

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n_nonterminals];
    for rule in rules {
        if !all_nullable(rule) {
            continue;
        }
        for sym in &rule.rhs {
            if let Sym::N(b) = sym {
                adjacency[rule.lhs as usize].push(*b as usize);
            }
        }
    }
    let infinite = reaches_cycle(&adjacency);

    let mut counts = vec![DerivationCount::ZERO; n_nonterminals];
    for (nt, &inf) in infinite.iter().enumerate() {
        if inf {
            counts[nt] = DerivationCount::Infinite;
        }
    }
    // The finite part is a DAG; iterate to its (unique) least fixpoint.
    let mut changed = true;
    while changed {
        changed = false;
        let mut next = counts.clone();
        for (nt, slot) in next.iter_mut().enumerate() {
            if infinite[nt] {
                continue;
            }
            let mut total = DerivationCount::ZERO;
            for rule in rules.iter().filter(|r| r.lhs as usize == nt) {
                if !all_nullable(rule) {
                    continue;
                }
                let mut ways = DerivationCount::ONE;
                for sym in &rule.rhs {
                    if let Sym::N(b) = sym {
                        ways = ways.times(counts[*b as usize]);
                    }
                }
                total = total.plus(ways);
            }
            if *slot != total {
                *slot = total;
                changed = true;
            }
        }
        counts = next;
    }
    counts
}

/// Exact tree count for a non-empty token string, replaying the chart.
pub(super) fn count_string(
    recognizer: &Recognizer,
    tokens: &[u16],
    chart: &Chart,
) -> DerivationCount {
    let n = tokens.len();
    debug_assert!(n > 0);

    // Group realized spans and order them by length so that every proper
    // subspan is solved before its parents need it.
    let mut by_span: HashMap<(usize, usize), Vec<u16>> = HashMap::new();
    for &(nt, start, end) in &chart.completed {
        if end > start {
            by_span.entry((start, end)).or_default().push(nt);
        }
    }
    let mut spans: Vec<(usize, usize)> = by_span.keys().copied().collect();
    spans.sort_by_key(|&(start, end)| (end - start, start));

    let mut counts: HashMap<(u16, usize, usize), DerivationCount> = HashMap::new();
    for (start, end) in spans {
        let mut nodes = by_span.remove(&(start, end)).unwrap();
        nodes.sort_unstable();
        nodes.dedup();
        solve_span(recognizer, tokens, chart, &mut counts, &nodes, start, end);
    }

    counts
        .get(&(recognizer.start, 0, n))
        .copied()
        .unwrap_or(DerivationCount::ZERO)
}

/// Solves the same-span linear system for all nonterminals realized on
/// `(start, end)` and records their counts.
#[allow(clippy::too_many_arguments)]
fn solve_span(
    recognizer: &Recognizer,
    tokens: &[u16],
    chart: &Chart,
    counts: &mut HashMap<(u16, usize, usize), DerivationCount>,
    nodes: &[u16],
    start: usize,
    end: usize,
) {
    let index: HashMap<u16, usize> = nodes.iter().enumerate().map(|(i, &nt)| (nt, i)).collect();
    let mut bases = vec![DerivationCount::ZERO; nodes.len()];
    let mut edges: Vec<Vec<(usize, DerivationCount)>> = vec![Vec::new(); nodes.len()];

    for (local, &nt) in nodes.iter().enumerate() {
        for &rule_index in &recognizer.rules_by_lhs[nt as usize] {
            let rule = &recognizer.rules[rule_index as usize];
            let mut walker = Walker {
                recognizer,
                tokens,
                chart,
                counts,
                rule,
                start,
                end,
                base: DerivationCount::ZERO,
                edges: Vec::new(),
            };
            walker.walk(0, start, DerivationCount::ONE);
            bases[local] = bases[local].plus(walker.base);
            for (target, weight) in walker.edges {
                edges[local].push((index[&target], weight));
            }
        }
    }

    // A cycle among same-span edges repeats a realized, hence derivable,
    // nonterminal without consuming input: every node reaching such a cycle
    // through productive structure has unboundedly many trees.
    let adjacency: Vec<Vec<usize>> =
        edges.iter().map(|list| list.iter().map(|&(t, _)| t).collect()).collect();
    let infinite = reaches_cycle(&adjacency);

    let mut values = vec![DerivationCount::ZERO; nodes.len()];
    for (local, &inf) in infinite.iter().enumerate() {
        if inf {
            values[local] = DerivationCount::Infinite;
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        let mut next = values.clone();
        for (local, slot) in next.iter_mut().enumerate() {
            if infinite[local] {
                continue;
            }
            let mut total = bases[local];
            for &(target, weight) in &edges[local] {
                total = total.plus(weight.times(values[target]));
            }
            if *slot != total {
                *slot = total;
                changed = true;
            }
        }
        values = next;
    }

    for (local, &nt) in nodes.iter().enumerate() {
        // Every chart entry is derivable, so its exact count is positive.
        debug_assert!(!values[local].is_zero(), "realized span with zero trees");
        counts.insert((nt, start, end), values[local]);
    }
}

/// Enumerates the ways one rule can cover a span: proper splits accumulate
/// into `base`, full-span handoffs to a single child become `edges`.
struct Walker<'a> {
    recognizer: &'a Recognizer,
    tokens: &'a [u16],
    chart: &'a Chart,
    counts: &'a HashMap<(u16, usize, usize), DerivationCount>,
    rule: &'a CompiledRule,
    start: usize,
    end: usize,
    base: DerivationCount,
    edges: Vec<(u16, DerivationCount)>,
}

impl Walker<'_> {
    /// `at`: next right-hand-side position; `pos`: input position reached;
    /// `ways`: product of the choices made so far.
    fn walk(&mut self, at: usize, pos: usize, ways: DerivationCount) {
        if at == self.rule.rhs.len() {
            if pos == self.end {
                self.base = self.base.plus(ways);
            }
            return;
        }
        match self.rule.rhs[at] {
            Sym::T(a) => {
                if pos < self.end && self.tokens[pos] == a {
                    self.walk(at + 1, pos + 1, ways);
                }
            }
            Sym::N(b) => {
                if self.recognizer.nullable[b as usize] {
                    let empty = self.recognizer.epsilon_trees[b as usize];
                    self.walk(at + 1, pos, ways.times(empty));
                }
                for split in (pos + 1)..=self.end {
                    if pos == self.start && split == self.end {
                        // Full-span child: everything after it must vanish.
                        if self.chart.contains(b, self.start, self.end) {
                            if let Some(suffix) = self.epsilon_suffix(at + 1) {
                                self.edges.push((b, ways.times(suffix)));
                            }
                        }
                    } else if self.chart.contains(b, pos, split) {
                        let child = self.counts[&(b, pos, split)];
                        self.walk(at + 1, split, ways.times(child));
                    }
                }
            }
        }
    }

    /// Ways for `rhs[from..]` to derive epsilon, or `None` if it cannot.
    fn epsilon_suffix(&self, from: usize) -> Option<DerivationCount> {
        let mut ways = DerivationCount::ONE;
        for sym in &self.rule.rhs[from..] {
            match sym {
                Sym::T(_) => return None,
                Sym::N(b) => {
                    if !self.recognizer.nullable[*b as usize] {
                        return None;
                    }
                    ways = ways.times(self.recognizer.epsilon_trees[*b as usize]);
                }
            }
        }
        Some(ways)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Grammar, Rule, Symbol};
    use super::*;

    fn count(g: &Grammar, input: &str) -> DerivationCount {
        g.count_parses(input).unwrap()
    }

    fn catalan_grammar() -> Grammar {
        Grammar::new(
            vec!["a".into()],
            vec!["S".into()],
            vec![
                Rule::new("S", vec![Symbol::nonterminal("S"), Symbol::nonterminal("S")]),
                Rule::new("S", vec![Symbol::terminal("a")]),
            ],
            "S",
        )
    }

    #[test]
    fn binary_split_counts_are_catalan() {
        let g = catalan_grammar();
        // Trees over n leaves: Catalan(n - 1).
        let expected = [1u64, 1, 2, 5, 14, 42];
        for (n, &want) in expected.iter().enumerate() {
            let input = vec!["a"; n + 1].join(" ");
            assert_eq!(count(&g, &input), DerivationCount::Finite(want), "n = {}", n + 1);
        }
        assert_eq!(count(&g, ""), DerivationCount::ZERO);
    }

    #[test]
    fn unambiguous_grammar_counts_one() {
        let g = Grammar::new(
            vec!["a".into(), "b".into()],
            vec!["S".into()],
            vec![
                Rule::new(
                    "S",
                    vec![Symbol::terminal("a"), Symbol::nonterminal("S"), Symbol::terminal("b")],
                ),
                Rule::new("S", vec![]),
            ],
            "S",
        );
        assert_eq!(count(&g, ""), DerivationCount::ONE);
        assert_eq!(count(&g, "a b"), DerivationCount::ONE);
        assert_eq!(count(&g, "a a b b"), DerivationCount::ONE);
        assert_eq!(count(&g, "a b a b"), DerivationCount::ZERO);
    }

    #[test]
    fn two_routes_count_two() {
        let g = Grammar::new(
            vec!["a".into()],
            vec!["S".into(), "A".into(), "B".into()],
            vec![
                Rule::new("S", vec![Symbol::nonterminal("A")]),
                Rule::new("S", vec![Symbol::nonterminal("B")]),
                Rule::new("A", vec![Symbol::terminal("a")]),
                Rule::new("B", vec![Symbol::terminal("a")]),
            ],
            "S",
        );
        assert_eq!(count(&g, "a"), DerivationCount::Finite(2));
    }

    #[test]
    fn left_right_recursion_counts_two_ways() {
        let g = Grammar::new(
            vec!["a".into()],
            vec!["S".into()],
            vec![
                Rule::new("S", vec![Symbol::terminal("a"), Symbol::nonterminal("S")]),
                Rule::new("S", vec![Symbol::nonterminal("S"), Symbol::terminal("a")]),
                Rule::new("S", vec![Symbol::terminal("a")]),
            ],
            "S",
        );
        // "a a": a.S vs S.a — two trees.
        assert_eq!(count(&g, "a a"), DerivationCount::Finite(2));
    }

    #[test]
    fn unit_cycle_on_empty_sentence_is_infinite() {
        let g = Grammar::new(
            vec![],
            vec!["S".into()],
            vec![Rule::new("S", vec![Symbol::nonterminal("S")]), Rule::new("S", vec![])],
            "S",
        );
        assert_eq!(count(&g, ""), DerivationCount::Infinite);
    }

    #[test]
    fn nullable_prefix_cycle_is_infinite_on_nonempty_input() {
        let g = Grammar::new(
            vec!["a".into()],
            vec!["S".into(), "A".into()],
            vec![
                Rule::new("S", vec![Symbol::nonterminal("A"), Symbol::nonterminal("S")]),
                Rule::new("S", vec![Symbol::terminal("a")]),
                Rule::new("A", vec![]),
            ],
            "S",
        );
        assert_eq!(count(&g, "a"), DerivationCount::Infinite);
        // The cycle never consumes input, so only "a" is derivable at all.
        assert_eq!(count(&g, "a a"), DerivationCount::ZERO);
        assert_eq!(count(&g, ""), DerivationCount::ZERO);
    }

    #[test]
    fn unit_cycle_through_two_nonterminals_is_infinite() {
        let g = Grammar::new(
            vec!["a".into()],
            vec!["S".into(), "T".into()],
            vec![
                Rule::new("S", vec![Symbol::nonterminal("T")]),
                Rule::new("T", vec![Symbol::nonterminal("S")]),
                Rule::new("T", vec![Symbol::terminal("a")]),
            ],
            "S",
        );
        assert_eq!(count(&g, "a"), DerivationCount::Infinite);
        assert_eq!(count(&g, ""), DerivationCount::ZERO);
    }

    #[test]
    fn multiple_epsilon_rules_multiply() {
        // A and B each have 1 empty tree; S -> A B gives 1, plus S -> epsilon
        // gives 2 in total.
        let g = Grammar::new(
            vec![],
            vec!["S".into(), "A".into(), "B".into()],
            vec![
                Rule::new("S", vec![Symbol::nonterminal("A"), Symbol::nonterminal("B")]),
                Rule::new("S", vec![]),
                Rule::new("A", vec![]),
                Rule::new("B", vec![]),
            ],
            "S",
        );
        assert_eq!(count(&g, ""), DerivationCount::Finite(2));
    }

    #[test]
    fn infinite_times_zero_is_zero() {
        assert_eq!(
            DerivationCount::Infinite.times(DerivationCount::ZERO),
            DerivationCount::ZERO
        );
        assert_eq!(
            DerivationCount::ZERO.times(DerivationCount::Infinite),
            DerivationCount::ZERO
        );
        assert_eq!(
            DerivationCount::Infinite.times(DerivationCount::Finite(3)),
            DerivationCount::Infinite
        );
    }

    #[test]
    fn finite_counts_saturate() {
        let big = DerivationCount::Finite(u64::MAX);
        assert_eq!(big.plus(DerivationCount::ONE), big);
        assert_eq!(big.times(DerivationCount::Finite(2)), big);
    }

    #[test]
    fn ordering_puts_infinite_on_top() {
        assert!(DerivationCount::Finite(5) < DerivationCount::Infinite);
        assert!(DerivationCount::Finite(3) < DerivationCount::Finite(4));
        assert!(DerivationCount::Finite(1) <= DerivationCount::ONE);
    }

    #[test]
    fn count_positive_iff_recognized() {
        let g = catalan_grammar();
        let r = super::super::Recognizer::new(&g).unwrap();
        for input in ["", "a", "a a a a", "b"] {
            match (r.recognize(input), r.count_parses(input)) {
                (Ok(accepted), Ok(count)) => {
                    assert_eq!(accepted, !count.is_zero(), "input {input:?}")
                }
                (Err(a), Err(b)) => assert_eq!(a, b),
                other => panic!("disagreement on {input:?}: {other:?}"),
            }
        }
    }
}
