//! Property tests: randomized agreement between independent answers to the
//! same question, shrunk to minimal counterexamples on failure.

use proptest::prelude::*;

use linwit::{
    psi, psi_inverse, DerivationCount, ExponentVector, Grammar, LinearSet, Recognizer, Rule,
    SemilinearUnion, Symbol,
};

fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![
        Just(Symbol::terminal("a")),
        Just(Symbol::terminal("b")),
        Just(Symbol::nonterminal("S")),
        Just(Symbol::nonterminal("A")),
        Just(Symbol::nonterminal("B")),
    ]
}

fn grammar() -> impl Strategy<Value = Grammar> {
    let lhs = prop_oneof![Just("S"), Just("A"), Just("B")];
    proptest::collection::vec((lhs, proptest::collection::vec(symbol(), 0..4)), 1..9).prop_map(
        |raw| {
            let mut rules: Vec<Rule> = Vec::new();
            for (lhs, rhs) in raw {
                let rule = Rule::new(lhs, rhs);
                if !rules.contains(&rule) {
                    rules.push(rule);
                }
            }
            Grammar::new(
                vec!["a".into(), "b".into()],
                vec!["S".into(), "A".into(), "B".into()],
                rules,
                "S",
            )
        },
    )
}

/// Every string over {a, b} of length at most `max_len`, as token id
/// sequences for `recognizer`.
fn all_strings(recognizer: &Recognizer, max_len: usize) -> Vec<Vec<u16>> {
    let a = recognizer.terminal_id("a").unwrap();
    let b = recognizer.terminal_id("b").unwrap();
    let mut out: Vec<Vec<u16>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<u16>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for word in &frontier {
            for &letter in &[a, b] {
                let mut longer = word.clone();
                longer.push(letter);
                next.push(longer);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn render(recognizer: &Recognizer, tokens: &[u16]) -> String {
    let a = recognizer.terminal_id("a").unwrap();
    tokens
        .iter()
        .map(|&t| if t == a { "a" } else { "b" })
        .collect::<Vec<_>>()
        .join(" ")
}

proptest! {
    /// The Earley recognizer and bounded enumeration describe the same
    /// language, and a positive parse count is exactly recognition.
    #[test]
    fn recognition_enumeration_and_counting_agree(grammar in grammar()) {
        let recognizer = Recognizer::new(&grammar).unwrap();
        let enumerated: std::collections::BTreeSet<String> =
            recognizer.enumerate_language(3).into_iter().collect();
        for tokens in all_strings(&recognizer, 3) {
            let recognized = recognizer.recognize_tokens(&tokens);
            let listed = enumerated.contains(&render(&recognizer, &tokens));
            prop_assert_eq!(recognized, listed);
            let count = recognizer.count_parses_tokens(&tokens);
            prop_assert_eq!(count != DerivationCount::ZERO, recognized);
        }
    }
}

/// Plain odometer enumeration of coefficient tuples, bounded coordinatewise
/// by the residual — independent of the library's backtracking search.
fn brute_member(set: &LinearSet, point: &ExponentVector) -> bool {
    let Some(residual) = point.checked_sub(set.shift()) else {
        return false;
    };
    let bounds: Vec<u64> = set
        .basis()
        .iter()
        .map(|vector| {
            (0..residual.dim())
                .filter(|&i| vector[i] > 0)
                .map(|i| residual[i] / vector[i])
                .min()
                .unwrap_or(0)
        })
        .collect();
    let mut coefficients = vec![0u64; bounds.len()];
    loop {
        let mut sum = set.shift().clone();
        for (c, vector) in coefficients.iter().zip(set.basis()) {
            sum = sum.checked_add_scaled(*c, vector).unwrap();
        }
        if &sum == point {
            return true;
        }
        let mut at = coefficients.len();
        loop {
            if at == 0 {
                return false;
            }
            at -= 1;
            if coefficients[at] < bounds[at] {
                coefficients[at] += 1;
                break;
            }
            coefficients[at] = 0;
        }
    }
}

fn linear_set(dim: usize) -> impl Strategy<Value = LinearSet> {
    let vector = proptest::collection::vec(0u64..4, dim);
    (vector.clone(), proptest::collection::vec(vector, 0..4)).prop_map(|(shift, basis)| {
        LinearSet::new(
            ExponentVector::new(shift),
            basis.into_iter().map(ExponentVector::new).collect(),
        )
        .unwrap()
    })
}

proptest! {
    /// Backtracking membership equals brute-force enumeration, and a
    /// returned witness reconstructs the point.
    #[test]
    fn membership_matches_brute_force(
        set in (1usize..4).prop_flat_map(linear_set),
        seed in proptest::collection::vec(0u64..8, 1..4),
    ) {
        let dim = set.dimension();
        let mut coords = seed;
        coords.resize(dim, 0);
        let point = ExponentVector::new(coords);
        let expected = brute_member(&set, &point);
        let witness = set.member(&point).unwrap();
        prop_assert_eq!(witness.is_some(), expected);
        if let Some(coefficients) = witness {
            let mut sum = set.shift().clone();
            for (c, vector) in coefficients.iter().zip(set.basis()) {
                sum = sum.checked_add_scaled(*c, vector).unwrap();
            }
            prop_assert_eq!(sum, point);
        }
    }

    /// Normalization never changes the denoted set (checked pointwise on a
    /// box around the data).
    #[test]
    fn normalization_preserves_membership(
        set in (1usize..3).prop_flat_map(linear_set),
        probe in proptest::collection::vec(0u64..6, 1..3),
    ) {
        let dim = set.dimension();
        let normalized = set.normalize();
        let mut coords = probe;
        coords.resize(dim, 0);
        let point = ExponentVector::new(coords);
        prop_assert_eq!(
            set.member(&point).unwrap().is_some(),
            normalized.member(&point).unwrap().is_some()
        );
    }

    /// The union text format round-trips exactly.
    #[test]
    fn union_text_round_trips(
        sets in (1usize..4).prop_flat_map(|dim| proptest::collection::vec(linear_set(dim), 1..4))
    ) {
        let dim = sets[0].dimension();
        let union = SemilinearUnion::new(dim, sets).unwrap();
        let reparsed = SemilinearUnion::parse(&union.to_text(), None).unwrap();
        prop_assert_eq!(reparsed, union);
    }

    /// Exponent vector display parses back to the same vector.
    #[test]
    fn point_display_round_trips(coords in proptest::collection::vec(0u64..1000, 0..12)) {
        let point = ExponentVector::new(coords);
        let parsed: ExponentVector = point.to_string().parse().unwrap();
        prop_assert_eq!(parsed, point);
    }

    /// psi and psi_inverse are mutually inverse on sorted words / vectors.
    #[test]
    fn psi_round_trips(coords in proptest::collection::vec(0u64..4, 9)) {
        let point = ExponentVector::new(coords);
        let word = psi_inverse(&point).unwrap();
        prop_assert_eq!(psi(&word).unwrap(), point);
    }
}
