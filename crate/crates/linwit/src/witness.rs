//! The witness language `L` over `a1..a9` and its grammars.
//!
//! A *sorted* word is one whose letters appear in nondecreasing index order,
//! so it is determined by its exponent vector `(i1, ..., i9)` — the image
//! under the Parikh map [`psi`]. `L` is the union of four components, each a
//! conjunction of three comparisons between a letter from `{a1, a2, a3}` and
//! a letter from `{a4, ..., a9}`:
//!
//! | component | constraints                     |
//! |-----------|---------------------------------|
//! | `L1`      | i1 <= i9, i2 <= i7, i3 <= i5    |
//! | `L2`      | i1 >  i9, i2 <= i6, i3 <= i4    |
//! | `L3`      | i1 <= i8, i2 >  i7, i3 >  i4    |
//! | `L4`      | i1 >  i8, i2 >  i6, i3 >  i5    |
//!
//! Any two components share exactly one comparison pair, with opposite
//! senses, so the components are pairwise disjoint and every sorted word
//! lands in at most one of them.
//!
//! [`build_component_grammar`] emits an unambiguous linear grammar for one
//! component; [`build_union_grammar`] combines all four (with namespaced
//! nonterminals) into an unambiguous linear grammar for `L` itself. The
//! grammars, the predicates, and the semilinear machinery in the sibling
//! modules describe the same language and are cross-checked by the oracle
//! sweeps.

use std::fmt;
use std::str::FromStr;

use crate::grammar::{Grammar, Rule, Symbol};

/// Size of the alphabet, and the dimension of every exponent vector here.
pub const DIMENSION: usize = 9;

/// A point of `N^k`: the letter-occurrence counts of a sorted word.
///
/// Coordinates are numbered 1-based in prose and rendered space-separated in
/// parentheses: `(1 3 2 2 1 2 2 1 1)`. The slice accessors are 0-based as
/// usual in Rust.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(coords: Vec<u64>) -> Self {
        ExponentVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn max_coord(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Componentwise sum; `None` on `u64` overflow or dimension mismatch.
    pub fn checked_add(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b))
            .collect::<Option<Vec<u64>>>()
            .map(ExponentVector)
    }

    /// Componentwise difference; `None` if any coordinate would go negative
    /// or the dimensions differ.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<u64>>>()
            .map(ExponentVector)
    }

    /// `self + scale * other` with overflow checks.
    pub fn checked_add_scaled(&self, scale: u64, other: &ExponentVector) -> Option<ExponentVector> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| b.checked_mul(scale).and_then(|s| a.checked_add(s)))
            .collect::<Option<Vec<u64>>>()
            .map(ExponentVector)
    }

    /// `self - scale * other`; `None` if any coordinate would go negative,
    /// the scaling overflows, or the dimensions differ.
    pub fn checked_sub_scaled(&self, scale: u64, other: &ExponentVector) -> Option<ExponentVector> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| b.checked_mul(scale).and_then(|s| a.checked_sub(s)))
            .collect::<Option<Vec<u64>>>()
            .map(ExponentVector)
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u64;

    fn index(&self, index: usize) -> &u64 {
        &self.0[index]
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, coord) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{coord}")?;
        }
        write!(f, ")")
    }
}

/// Errors from parsing an [`ExponentVector`] from text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointParseError {
    #[error("`{0}` is not a nonnegative integer coordinate")]
    BadCoordinate(String),
    #[error("unbalanced parentheses in point literal")]
    UnbalancedParens,
}

impl FromStr for ExponentVector {
    type Err = PointParseError;

    /// Accepts `(1 3 2 2 1 2 2 1 1)` or the same without parentheses.
    fn from_str(s: &str) -> Result<Self, PointParseError> {
        let trimmed = s.trim();
        let inner = match (trimmed.strip_prefix('('), trimmed.strip_suffix(')')) {
            (Some(_), Some(_)) => &trimmed[1..trimmed.len() - 1],
            (None, None) => trimmed,
            _ => return Err(PointParseError::UnbalancedParens),
        };
        inner
            .split_whitespace()
            .map(|tok| tok.parse::<u64>().map_err(|_| PointParseError::BadCoordinate(tok.into())))
            .collect::<Result<Vec<u64>, _>>()
            .map(ExponentVector)
    }
}

/// One of the four components of the witness language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentId {
    L1,
    L2,
    L3,
    L4,
}

impl ComponentId {
    pub fn all() -> [ComponentId; 4] {
        [ComponentId::L1, ComponentId::L2, ComponentId::L3, ComponentId::L4]
    }

    /// 1-based index, matching the naming `L1..L4`.
    pub fn index(self) -> usize {
        match self {
            ComponentId::L1 => 1,
            ComponentId::L2 => 2,
            ComponentId::L3 => 3,
            ComponentId::L4 => 4,
        }
    }

    pub fn from_index(index: usize) -> Option<ComponentId> {
        ComponentId::all().into_iter().find(|t| t.index() == index)
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.index())
    }
}

/// One defining constraint of a component: compare the count of letter
/// `left` with the count of letter `right`. Letters are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    pub left: usize,
    pub right: usize,
    /// `true` for `count(left) > count(right)`, `false` for `<=`.
    pub strict: bool,
}

impl Comparison {
    pub fn holds(&self, point: &ExponentVector) -> bool {
        let left = point[self.left - 1];
        let right = point[self.right - 1];
        if self.strict {
            left > right
        } else {
            left <= right
        }
    }
}

/// The three comparisons defining a component, in left-letter order 1, 2, 3.
pub fn comparisons(component: ComponentId) -> [Comparison; 3] {
    let table = |rights: [(usize, bool); 3]| {
        [
            Comparison { left: 1, right: rights[0].0, strict: rights[0].1 },
            Comparison { left: 2, right: rights[1].0, strict: rights[1].1 },
            Comparison { left: 3, right: rights[2].0, strict: rights[2].1 },
        ]
    };
    match component {
        ComponentId::L1 => table([(9, false), (7, false), (5, false)]),
        ComponentId::L2 => table([(9, true), (6, false), (4, false)]),
        ComponentId::L3 => table([(8, false), (7, true), (4, true)]),
        ComponentId::L4 => table([(8, true), (6, true), (5, true)]),
    }
}

/// The unique comparison pair shared (with opposite senses) by two distinct
/// components; `None` when `a == b`. That single opposed constraint is what
/// makes the components pairwise disjoint.
pub fn separating_pair(a: ComponentId, b: ComponentId) -> Option<(usize, usize)> {
    if a == b {
        return None;
    }
    for ca in comparisons(a) {
        for cb in comparisons(b) {
            if ca.left == cb.left && ca.right == cb.right {
                debug_assert_ne!(ca.strict, cb.strict, "shared pair with equal senses");
                return Some((ca.left, ca.right));
            }
        }
    }
    None
}

/// Errors from the Parikh map and the membership predicates.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("token `{0}` is not one of the letters a1..a9")]
    UnknownLetter(String),
    #[error("word is not sorted: `{token}` appears after `a{previous}`")]
    NotSorted { token: String, previous: usize },
    #[error("expected a point of dimension {DIMENSION}, got dimension {0}")]
    WrongDimension(usize),
}

fn letter_index(token: &str) -> Result<usize, WitnessError> {
    let digits = token.strip_prefix('a').unwrap_or("");
    match digits.parse::<usize>() {
        Ok(i) if (1..=DIMENSION).contains(&i) && digits.len() == 1 => Ok(i),
        _ => Err(WitnessError::UnknownLetter(token.to_string())),
    }
}

/// Parikh map on sorted words: counts each letter of `a1..a9`. The word must
/// be sorted — on `a1*...a9*` the map is injective, which is what lets the
/// exponent vector stand in for the word everywhere else in this crate.
pub fn psi(word: &str) -> Result<ExponentVector, WitnessError> {
    let mut counts = vec![0u64; DIMENSION];
    let mut previous = 1usize;
    for token in word.split_whitespace() {
        let index = letter_index(token)?;
        if index < previous {
            return Err(WitnessError::NotSorted { token: token.to_string(), previous });
        }
        previous = index;
        counts[index - 1] += 1;
    }
    Ok(ExponentVector(counts))
}

/// The sorted word with the given exponent vector (inverse of [`psi`] on
/// sorted words). The empty word comes back as the empty string.
pub fn psi_inverse(point: &ExponentVector) -> Result<String, WitnessError> {
    if point.dim() != DIMENSION {
        return Err(WitnessError::WrongDimension(point.dim()));
    }
    let mut tokens: Vec<String> = Vec::new();
    for (i, &count) in point.coords().iter().enumerate() {
        for _ in 0..count {
            tokens.push(format!("a{}", i + 1));
        }
    }
    Ok(tokens.join(" "))
}

/// Does the exponent vector satisfy all three comparisons of `component`?
pub fn member_component(
    point: &ExponentVector,
    component: ComponentId,
) -> Result<bool, WitnessError> {
    if point.dim() != DIMENSION {
        return Err(WitnessError::WrongDimension(point.dim()));
    }
    Ok(comparisons(component).iter().all(|c| c.holds(point)))
}

/// Membership in the whole witness language `L = L1 ∪ L2 ∪ L3 ∪ L4`,
/// together with the component that contains the point (unique when it
/// exists, by pairwise disjointness).
pub fn member_language(point: &ExponentVector) -> Result<Option<ComponentId>, WitnessError> {
    for component in ComponentId::all() {
        if member_component(point, component)? {
            return Ok(Some(component));
        }
    }
    Ok(None)
}

/// Layout of one component grammar, outermost first: chains append a single
/// letter on the right, pairs wrap a left letter and a right letter around
/// everything inside.
enum Element {
    Pair { left: usize, right: usize, strict: bool },
    Chain { letter: usize },
}

fn layout(component: ComponentId) -> Vec<Element> {
    let table = comparisons(component);
    let rights = [table[0].right, table[1].right, table[2].right];
    let mut elements = Vec::new();
    // Letters above the outermost pair's right letter sit outside every pair.
    for letter in ((rights[0] + 1)..=DIMENSION).rev() {
        elements.push(Element::Chain { letter });
    }
    for (r, comparison) in table.iter().enumerate() {
        elements.push(Element::Pair {
            left: comparison.left,
            right: comparison.right,
            strict: comparison.strict,
        });
        // Inside pair r: the surplus chain for its own right letter (only
        // when the comparison is non-strict), then the free letters strictly
        // between this pair's right letter and the next one's.
        if !comparison.strict {
            elements.push(Element::Chain { letter: comparison.right });
        }
        let floor = if r == 2 { 3 } else { rights[r + 1] };
        for letter in ((floor + 1)..comparison.right).rev() {
            elements.push(Element::Chain { letter });
        }
    }
    elements
}

/// Builds the unambiguous linear grammar of one component. Nonterminal
/// naming: component 1 follows the classic presentation (`A_1_9`, `A_9`,
/// ...); the other components use `X_l_r` for pairs, `Y_l` for the strict
/// surplus of a left letter, and `F_j` for plain chains.
pub fn build_component_grammar(component: ComponentId) -> Grammar {
    let elements = layout(component);
    let classic = component == ComponentId::L1;
    let entry = |element: &Element| -> String {
        match element {
            Element::Pair { left, right, .. } => {
                if classic {
                    format!("A_{left}_{right}")
                } else {
                    format!("X_{left}_{right}")
                }
            }
            Element::Chain { letter } => {
                if classic {
                    format!("A_{letter}")
                } else {
                    format!("F_{letter}")
                }
            }
        }
    };
    let terminal = |letter: usize| Symbol::terminal(format!("a{letter}"));

    let start = format!("S_{}", component.index());
    let mut nonterminals = vec![start.clone()];
    let mut rules = vec![Rule::new(start.clone(), vec![Symbol::nonterminal(entry(&elements[0]))])];

    for (k, element) in elements.iter().enumerate() {
        let name = entry(element);
        nonterminals.push(name.clone());
        // The continuation: the next element's entry, or epsilon at the end.
        let continuation: Vec<Symbol> = match elements.get(k + 1) {
            Some(next) => vec![Symbol::nonterminal(entry(next))],
            None => vec![],
        };
        match *element {
            Element::Chain { letter } => {
                rules.push(Rule::new(
                    name.clone(),
                    vec![Symbol::nonterminal(name.clone()), terminal(letter)],
                ));
                rules.push(Rule::new(name, continuation));
            }
            Element::Pair { left, right, strict } => {
                rules.push(Rule::new(
                    name.clone(),
                    vec![terminal(left), Symbol::nonterminal(name.clone()), terminal(right)],
                ));
                if strict {
                    // At least one unmatched left letter, then optionally more.
                    let surplus = format!("Y_{left}");
                    rules.push(Rule::new(
                        name,
                        vec![terminal(left), Symbol::nonterminal(surplus.clone())],
                    ));
                    nonterminals.push(surplus.clone());
                    rules.push(Rule::new(
                        surplus.clone(),
                        vec![terminal(left), Symbol::nonterminal(surplus.clone())],
                    ));
                    rules.push(Rule::new(surplus, continuation));
                } else {
                    rules.push(Rule::new(name, continuation));
                }
            }
        }
    }

    let terminals = (1..=DIMENSION).map(|i| format!("a{i}")).collect();
    let grammar = Grammar::new(terminals, nonterminals, rules, start);
    debug_assert!(grammar.is_valid());
    grammar
}

/// Builds the unambiguous linear grammar of the whole witness language: a
/// fresh start symbol chooses a component, whose grammar is embedded with
/// its nonterminals prefixed `L<t>.` (components share chain names like
/// `F_8`, so namespacing is required, and it keeps the originating
/// component visible in derivations).
pub fn build_union_grammar() -> Grammar {
    let prefix = |t: ComponentId, name: &str| format!("{t}.{name}");
    let mut nonterminals = vec!["S".to_string()];
    let mut rules = Vec::new();
    for t in ComponentId::all() {
        let component_start = format!("S_{}", t.index());
        rules.push(Rule::new("S", vec![Symbol::nonterminal(prefix(t, &component_start))]));
    }
    for t in ComponentId::all() {
        let g = build_component_grammar(t);
        for name in g.nonterminals() {
            nonterminals.push(prefix(t, name));
        }
        for rule in g.rules() {
            let rhs = rule
                .rhs
                .iter()
                .map(|symbol| match symbol {
                    Symbol::Terminal(n) => Symbol::terminal(n.clone()),
                    Symbol::Nonterminal(n) => Symbol::nonterminal(prefix(t, n)),
                })
                .collect();
            rules.push(Rule::new(prefix(t, &rule.lhs), rhs));
        }
    }
    let terminals = (1..=DIMENSION).map(|i| format!("a{i}")).collect();
    let grammar = Grammar::new(terminals, nonterminals, rules, "S");
    debug_assert!(grammar.is_valid());
    grammar
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(coords: [u64; 9]) -> ExponentVector {
        ExponentVector::new(coords.to_vec())
    }

    #[test]
    fn psi_counts_letters() {
        assert_eq!(psi("").unwrap(), ExponentVector::zeros(9));
        assert_eq!(psi("a1 a2 a2").unwrap(), point([1, 2, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(psi("a9").unwrap(), point([0, 0, 0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn psi_rejects_unsorted_and_unknown() {
        assert_eq!(
            psi("a2 a1"),
            Err(WitnessError::NotSorted { token: "a1".into(), previous: 2 })
        );
        assert_eq!(psi("a0"), Err(WitnessError::UnknownLetter("a0".into())));
        assert_eq!(psi("a10"), Err(WitnessError::UnknownLetter("a10".into())));
        assert_eq!(psi("b1"), Err(WitnessError::UnknownLetter("b1".into())));
    }

    #[test]
    fn psi_inverse_round_trips() {
        let p = point([1, 3, 2, 2, 1, 2, 2, 1, 1]);
        let word = psi_inverse(&p).unwrap();
        assert_eq!(
            word,
            "a1 a2 a2 a2 a3 a3 a4 a4 a5 a6 a6 a7 a7 a8 a9"
        );
        assert_eq!(psi(&word).unwrap(), p);
        assert_eq!(psi_inverse(&ExponentVector::zeros(9)).unwrap(), "");
    }

    #[test]
    fn psi_inverse_needs_dimension_nine() {
        assert_eq!(
            psi_inverse(&ExponentVector::zeros(4)),
            Err(WitnessError::WrongDimension(4))
        );
    }

    #[test]
    fn point_display_and_parse_round_trip() {
        let p = point([1, 3, 2, 2, 1, 2, 2, 1, 1]);
        assert_eq!(p.to_string(), "(1 3 2 2 1 2 2 1 1)");
        assert_eq!("(1 3 2 2 1 2 2 1 1)".parse::<ExponentVector>().unwrap(), p);
        assert_eq!("1 3 2 2 1 2 2 1 1".parse::<ExponentVector>().unwrap(), p);
        assert_eq!("()".parse::<ExponentVector>().unwrap(), ExponentVector::zeros(0));
        assert!("(1 2".parse::<ExponentVector>().is_err());
        assert!("(1 x 2)".parse::<ExponentVector>().is_err());
    }

    #[test]
    fn checked_vector_arithmetic() {
        let a = point([1, 0, 0, 0, 0, 0, 0, 0, 2]);
        let b = point([0, 1, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(a.checked_add(&b).unwrap(), point([1, 1, 0, 0, 0, 0, 0, 0, 3]));
        assert_eq!(a.checked_sub(&b), None);
        assert_eq!(
            a.checked_add_scaled(3, &b).unwrap(),
            point([1, 3, 0, 0, 0, 0, 0, 0, 5])
        );
        let c = point([2, 3, 0, 0, 0, 0, 0, 0, 5]);
        assert_eq!(
            c.checked_sub_scaled(3, &b).unwrap(),
            point([2, 0, 0, 0, 0, 0, 0, 0, 2])
        );
        assert_eq!(c.checked_sub_scaled(4, &b), None);
        let top = ExponentVector::new(vec![u64::MAX; 9]);
        assert_eq!(top.checked_add(&a), None);
        assert_eq!(a.checked_add(&ExponentVector::zeros(4)), None);
    }

    #[test]
    fn membership_on_reference_points() {
        let zeros = ExponentVector::zeros(9);
        assert_eq!(member_component(&zeros, ComponentId::L1).unwrap(), true);
        assert_eq!(member_language(&zeros).unwrap(), Some(ComponentId::L1));

        let one_a1 = point([1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(member_component(&one_a1, ComponentId::L1).unwrap(), false);
        assert_eq!(member_language(&one_a1).unwrap(), Some(ComponentId::L2));

        // No component: fails L1 on i2 <= i7, L2 on i1 > i9, L3 on i3 > i4,
        // L4 on i1 > i8.
        let v = point([2, 6, 4, 4, 2, 4, 4, 2, 2]);
        assert_eq!(member_language(&v).unwrap(), None);

        let w = point([5, 0, 0, 0, 2, 4, 0, 5, 2]);
        assert_eq!(member_language(&w).unwrap(), Some(ComponentId::L2));
    }

    #[test]
    fn membership_requires_dimension_nine() {
        let p = ExponentVector::zeros(3);
        assert_eq!(
            member_component(&p, ComponentId::L1),
            Err(WitnessError::WrongDimension(3))
        );
        assert_eq!(member_language(&p), Err(WitnessError::WrongDimension(3)));
    }

    #[test]
    fn components_are_pairwise_disjoint_on_small_points() {
        // Exhaustive over coordinates <= 2: no point may sit in two components.
        let mut coords = [0u64; 9];
        loop {
            let p = point(coords);
            let containing: Vec<ComponentId> = ComponentId::all()
                .into_iter()
                .filter(|&t| member_component(&p, t).unwrap())
                .collect();
            assert!(containing.len() <= 1, "point {p} in {containing:?}");
            // Odometer increment.
            let mut digit = 0;
            loop {
                if digit == 9 {
                    return;
                }
                coords[digit] += 1;
                if coords[digit] <= 2 {
                    break;
                }
                coords[digit] = 0;
                digit += 1;
            }
        }
    }

    #[test]
    fn separating_pairs_match_the_structure() {
        use ComponentId::*;
        assert_eq!(separating_pair(L1, L2), Some((1, 9)));
        assert_eq!(separating_pair(L1, L3), Some((2, 7)));
        assert_eq!(separating_pair(L1, L4), Some((3, 5)));
        assert_eq!(separating_pair(L2, L3), Some((3, 4)));
        assert_eq!(separating_pair(L2, L4), Some((2, 6)));
        assert_eq!(separating_pair(L3, L4), Some((1, 8)));
        assert_eq!(separating_pair(L2, L2), None);
        assert_eq!(separating_pair(L3, L2), Some((3, 4)));
    }

    #[test]
    fn component_one_grammar_matches_the_classic_presentation() {
        let expected = "\
S_1 -> A_1_9
A_1_9 -> a1 A_1_9 a9 | A_9
A_9 -> A_9 a9 | A_8
A_8 -> A_8 a8 | A_2_7
A_2_7 -> a2 A_2_7 a7 | A_7
A_7 -> A_7 a7 | A_6
A_6 -> A_6 a6 | A_3_5
A_3_5 -> a3 A_3_5 a5 | A_5
A_5 -> A_5 a5 | A_4
A_4 -> A_4 a4 | epsilon
";
        assert_eq!(build_component_grammar(ComponentId::L1).to_text(), expected);
    }

    #[test]
    fn all_grammars_are_valid_and_linear() {
        for t in ComponentId::all() {
            let g = build_component_grammar(t);
            assert!(g.is_valid(), "{t}");
            assert!(g.is_linear().unwrap(), "{t}");
        }
        let union = build_union_grammar();
        assert!(union.is_valid());
        assert!(union.is_linear().unwrap());
        assert_eq!(union.start(), "S");
    }

    #[test]
    fn component_grammars_round_trip_through_text() {
        // Symbol declaration order is first-appearance after a round trip, so
        // compare the declarations as sets and everything else exactly.
        fn assert_equivalent(parsed: &Grammar, original: &Grammar) {
            let sorted = |names: &[String]| {
                let mut v = names.to_vec();
                v.sort();
                v
            };
            assert_eq!(sorted(parsed.terminals()), sorted(original.terminals()));
            assert_eq!(sorted(parsed.nonterminals()), sorted(original.nonterminals()));
            assert_eq!(parsed.rules(), original.rules());
            assert_eq!(parsed.start(), original.start());
        }
        for t in ComponentId::all() {
            let g = build_component_grammar(t);
            assert_equivalent(&Grammar::from_text(&g.to_text()).unwrap(), &g);
        }
        let union = build_union_grammar();
        assert_equivalent(&Grammar::from_text(&union.to_text()).unwrap(), &union);
    }

    #[test]
    fn component_one_short_sentences() {
        let g = build_component_grammar(ComponentId::L1);
        assert_eq!(
            g.enumerate_language(1).unwrap(),
            vec!["", "a4", "a5", "a6", "a7", "a8", "a9"]
        );
    }

    /// All exponent vectors with coordinate sum <= `total`, as a flat list.
    fn small_points(total: u64) -> Vec<ExponentVector> {
        let mut out = Vec::new();
        let mut coords = [0u64; 9];
        fn rec(coords: &mut [u64; 9], at: usize, left: u64, out: &mut Vec<ExponentVector>) {
            if at == 9 {
                out.push(ExponentVector::new(coords.to_vec()));
                return;
            }
            for c in 0..=left {
                coords[at] = c;
                rec(coords, at + 1, left - c, out);
            }
            coords[at] = 0;
        }
        rec(&mut coords, 0, total, &mut out);
        out
    }

    #[test]
    fn grammars_agree_with_predicates_on_short_words() {
        let recognizers: Vec<(ComponentId, crate::grammar::Recognizer)> = ComponentId::all()
            .into_iter()
            .map(|t| (t, crate::grammar::Recognizer::new(&build_component_grammar(t)).unwrap()))
            .collect();
        let union = crate::grammar::Recognizer::new(&build_union_grammar()).unwrap();
        for p in small_points(4) {
            let word = psi_inverse(&p).unwrap();
            for (t, recognizer) in &recognizers {
                assert_eq!(
                    recognizer.recognize(&word).unwrap(),
                    member_component(&p, *t).unwrap(),
                    "component {t}, point {p}"
                );
            }
            let expected = member_language(&p).unwrap().is_some();
            assert_eq!(union.recognize(&word).unwrap(), expected, "union at {p}");
        }
    }

    #[test]
    fn union_counts_at_most_one_parse_on_short_words() {
        let union = crate::grammar::Recognizer::new(&build_union_grammar()).unwrap();
        for p in small_points(4) {
            let word = psi_inverse(&p).unwrap();
            let count = union.count_parses(&word).unwrap();
            let expected = if member_language(&p).unwrap().is_some() {
                crate::grammar::DerivationCount::ONE
            } else {
                crate::grammar::DerivationCount::ZERO
            };
            assert_eq!(count, expected, "point {p}");
        }
    }

    #[test]
    fn component_grammars_count_at_most_one_parse_up_to_length_ten() {
        let points = small_points(10);
        for component in ComponentId::all() {
            let recognizer =
                crate::grammar::Recognizer::new(&build_component_grammar(component)).unwrap();
            for p in &points {
                let word = psi_inverse(p).unwrap();
                let count = recognizer.count_parses(&word).unwrap();
                let expected = if member_component(p, component).unwrap() {
                    crate::grammar::DerivationCount::ONE
                } else {
                    crate::grammar::DerivationCount::ZERO
                };
                assert_eq!(count, expected, "{component}, point {p}");
            }
        }
    }

    #[test]
    fn union_rejects_unsorted_words() {
        let union = build_union_grammar();
        assert!(!union.recognize("a9 a1").unwrap());
        assert!(!union.recognize("a4 a3").unwrap());
        assert!(union.recognize("a1 a9").unwrap());
        // Everything the grammar generates is sorted: psi accepts it.
        for word in union.enumerate_language(3).unwrap() {
            assert!(psi(&word).is_ok(), "unsorted word generated: {word}");
        }
    }
}
