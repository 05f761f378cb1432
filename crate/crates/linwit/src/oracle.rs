//! Randomized and exhaustive cross-checks between independent
//! implementations of the same questions.
//!
//! Each sweep pits two ways of answering a question against each other and
//! reports every disagreement: grammars against membership predicates, the
//! backtracking membership search against a plain odometer enumeration, the
//! refuter against [`crate::refutation::verify_result`]. A passing sweep is
//! evidence, not proof — but every mismatch is a bug somewhere, and the
//! reports carry enough detail to replay one by hand.
//!
//! Randomness comes from a small, fully specified generator
//! ([`SplitMix64`]), so a seed pins the whole sweep.

use crate::grammar::{Grammar, GrammarError, Recognizer};
use crate::refutation::{refute, verify_result, RefutationKind};
use crate::semilinear::{LinearSet, SemilinearUnion};
use crate::witness::{
    comparisons, member_component, member_language, ComponentId, ExponentVector, DIMENSION,
};
use std::fmt;

/// The SplitMix64 generator: 64 bits of state, one addition and three
/// xor-multiply rounds per output. Chosen for being tiny and exactly
/// reproducible from its published definition; this is not a cryptographic
/// generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw from `0..bound` (0 when `bound` is 0). The modulo
    /// bias is irrelevant at the bounds used here.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        if bound == 0 {
            0
        } else {
            self.next_u64() % bound
        }
    }
}

/// One disagreement between the two sides of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of a sweep: what ran, how many checks, and every disagreement.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub description: String,
    pub points_checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Human-readable report. The last line is `PASS`, or `FAIL` with the
    /// mismatch count; at most twenty mismatches are listed.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("sweep: {}\n", self.description));
        out.push_str(&format!("points checked: {}\n", self.points_checked));
        for mismatch in self.mismatches.iter().take(20) {
            out.push_str(&format!(
                "mismatch: input={} expected={} actual={}\n",
                mismatch.input, mismatch.expected, mismatch.actual
            ));
        }
        if self.mismatches.len() > 20 {
            out.push_str(&format!("... and {} more\n", self.mismatches.len() - 20));
        }
        if self.passed() {
            out.push_str("PASS\n");
        } else if self.mismatches.len() == 1 {
            out.push_str("FAIL 1 mismatch\n");
        } else {
            out.push_str(&format!("FAIL {} mismatches\n", self.mismatches.len()));
        }
        out
    }

    /// Tab-separated mismatch table with a header row, one row per
    /// disagreement. An empty table (header only) means the sweep passed.
    pub fn render_tsv(&self) -> String {
        let mut out = String::from("input\texpected\tactual\n");
        for mismatch in &self.mismatches {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                mismatch.input, mismatch.expected, mismatch.actual
            ));
        }
        out
    }
}

/// Which membership predicate a grammar is swept against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LanguageTarget {
    /// The whole witness language: any component accepts.
    Union,
    /// One fixed component.
    Component(ComponentId),
}

impl LanguageTarget {
    fn contains(&self, point: &ExponentVector) -> bool {
        match self {
            LanguageTarget::Union => member_language(point)
                .expect("sweep points have the right dimension")
                .is_some(),
            LanguageTarget::Component(c) => {
                member_component(point, *c).expect("sweep points have the right dimension")
            }
        }
    }
}

impl fmt::Display for LanguageTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LanguageTarget::Union => write!(f, "L"),
            LanguageTarget::Component(c) => write!(f, "{c}"),
        }
    }
}

fn verdict(member: bool) -> &'static str {
    if member {
        "member"
    } else {
        "non-member"
    }
}

/// Calls `visit` with every vector in `N^DIMENSION` whose coordinate sum is
/// at most `total`, in lexicographic order.
fn for_each_point_with_sum_up_to(total: u64, visit: &mut impl FnMut(&[u64])) {
    fn step(buffer: &mut Vec<u64>, remaining: u64, visit: &mut impl FnMut(&[u64])) {
        if buffer.len() == DIMENSION - 1 {
            for last in 0..=remaining {
                buffer.push(last);
                visit(buffer);
                buffer.pop();
            }
            return;
        }
        for next in 0..=remaining {
            buffer.push(next);
            step(buffer, remaining - next, visit);
            buffer.pop();
        }
    }
    step(&mut Vec::with_capacity(DIMENSION), total, visit);
}

/// Calls `visit` with every vector in `{0..=max_coord}^DIMENSION`.
fn for_each_point_in_box(max_coord: u64, visit: &mut impl FnMut(&[u64])) {
    let mut coords = vec![0u64; DIMENSION];
    loop {
        visit(&coords);
        let mut position = DIMENSION;
        loop {
            if position == 0 {
                return;
            }
            position -= 1;
            if coords[position] < max_coord {
                coords[position] += 1;
                break;
            }
            coords[position] = 0;
        }
    }
}

/// Sweeps a grammar against a membership predicate on every sorted word of
/// length at most `max_length`: the grammar must accept exactly the words
/// the predicate admits.
pub fn sweep_grammar_vs_predicate(
    grammar: &Grammar,
    target: LanguageTarget,
    max_length: u64,
) -> Result<SweepReport, GrammarError> {
    let recognizer = Recognizer::new(grammar)?;
    let letter_ids: Vec<Option<u16>> = (1..=DIMENSION)
        .map(|i| recognizer.terminal_id(&format!("a{i}")))
        .collect();

    let mut report = SweepReport {
        description: format!(
            "grammar vs membership predicate for {target}, all sorted words of length <= {max_length}"
        ),
        points_checked: 0,
        mismatches: Vec::new(),
    };

    let mut tokens: Vec<u16> = Vec::with_capacity(max_length as usize);
    for_each_point_with_sum_up_to(max_length, &mut |coords| {
        report.points_checked += 1;
        let point = ExponentVector::new(coords.to_vec());
        let expected = target.contains(&point);

        tokens.clear();
        let mut representable = true;
        for (letter, &count) in coords.iter().enumerate() {
            if count == 0 {
                continue;
            }
            match letter_ids[letter] {
                Some(id) => tokens.extend(std::iter::repeat(id).take(count as usize)),
                None => {
                    representable = false;
                    break;
                }
            }
        }
        // A word using a letter the grammar does not declare is never
        // accepted by that grammar.
        let actual = representable && recognizer.recognize_tokens(&tokens);

        if expected != actual {
            report.mismatches.push(Mismatch {
                input: point.to_string(),
                expected: verdict(expected).to_string(),
                actual: verdict(actual).to_string(),
            });
        }
    });
    Ok(report)
}

/// Sweeps pairwise disjointness of the four components over the grid
/// `{0..=max_coord}^9`, and checks that the whole-language predicate
/// reports the first (and only) containing component.
pub fn sweep_disjointness(max_coord: u64) -> SweepReport {
    let mut report = SweepReport {
        description: format!(
            "pairwise disjointness of the four components on the grid {{0..={max_coord}}}^9"
        ),
        points_checked: 0,
        mismatches: Vec::new(),
    };
    for_each_point_in_box(max_coord, &mut |coords| {
        report.points_checked += 1;
        let point = ExponentVector::new(coords.to_vec());
        let containing: Vec<ComponentId> = ComponentId::all()
            .into_iter()
            .filter(|&c| member_component(&point, c).expect("grid points are 9-dimensional"))
            .collect();
        if containing.len() > 1 {
            let names: Vec<String> = containing.iter().map(|c| c.to_string()).collect();
            report.mismatches.push(Mismatch {
                input: point.to_string(),
                expected: "at most one component".to_string(),
                actual: names.join(","),
            });
        }
        let first = containing.first().copied();
        let reported = member_language(&point).expect("grid points are 9-dimensional");
        if reported != first {
            report.mismatches.push(Mismatch {
                input: point.to_string(),
                expected: format!("{first:?}"),
                actual: format!("{reported:?}"),
            });
        }
    });
    report
}

/// For every pair of components, checks that the designated separating
/// coordinate pair appears in both constraint tables with opposite senses,
/// and that no grid point satisfies both senses at once.
pub fn sweep_separation_pairs(max_coord: u64) -> SweepReport {
    let mut report = SweepReport {
        description: format!(
            "separating coordinate pairs for all component pairs on the grid {{0..={max_coord}}}^9"
        ),
        points_checked: 0,
        mismatches: Vec::new(),
    };
    let components = ComponentId::all();
    for (position, &a) in components.iter().enumerate() {
        for &b in &components[position + 1..] {
            report.points_checked += 1;
            let Some((left, right)) = crate::witness::separating_pair(a, b) else {
                report.mismatches.push(Mismatch {
                    input: format!("{a} vs {b}"),
                    expected: "a separating coordinate pair".to_string(),
                    actual: "none".to_string(),
                });
                continue;
            };
            let find = |component: ComponentId| {
                crate::witness::comparisons(component)
                    .into_iter()
                    .find(|c| c.left == left && c.right == right)
            };
            let (Some(in_a), Some(in_b)) = (find(a), find(b)) else {
                report.mismatches.push(Mismatch {
                    input: format!("{a} vs {b}"),
                    expected: format!("coordinates ({left}, {right}) in both tables"),
                    actual: "missing from a table".to_string(),
                });
                continue;
            };
            if in_a.strict == in_b.strict {
                report.mismatches.push(Mismatch {
                    input: format!("{a} vs {b}"),
                    expected: "opposite senses".to_string(),
                    actual: format!("both strict={}", in_a.strict),
                });
                continue;
            }
            for_each_point_in_box(max_coord, &mut |coords| {
                report.points_checked += 1;
                let point = ExponentVector::new(coords.to_vec());
                if in_a.holds(&point) && in_b.holds(&point) {
                    report.mismatches.push(Mismatch {
                        input: format!("{a} vs {b} at {point}"),
                        expected: "at most one sense holds".to_string(),
                        actual: "both hold".to_string(),
                    });
                }
            });
        }
    }
    report
}

fn unit_vector(letter: usize) -> ExponentVector {
    let mut coords = vec![0u64; DIMENSION];
    coords[letter - 1] = 1;
    ExponentVector::new(coords)
}

fn pair_vector(a: usize, b: usize) -> ExponentVector {
    let mut coords = vec![0u64; DIMENSION];
    coords[a - 1] += 1;
    coords[b - 1] += 1;
    ExponentVector::new(coords)
}

/// The canonical linear-set description of a component's image: one paired
/// vector per comparison (so the compared counts grow together), one unit
/// vector per coordinate that may grow alone, and a shift paying for each
/// strict inequality. Its basis nests without crossing, so it must be
/// stratified.
fn component_image_case(
    component: ComponentId,
    label: &'static str,
) -> (&'static str, LinearSet, bool) {
    let mut shift = vec![0u64; DIMENSION];
    let mut basis = Vec::new();
    let mut compared = [false; DIMENSION];
    for comparison in comparisons(component) {
        basis.push(pair_vector(comparison.left, comparison.right));
        compared[comparison.left - 1] = true;
        compared[comparison.right - 1] = true;
        if comparison.strict {
            // count(left) > count(right): one shifted unit starts the excess
            // and the unit vector lets it grow.
            shift[comparison.left - 1] = 1;
            basis.push(unit_vector(comparison.left));
        } else {
            basis.push(unit_vector(comparison.right));
        }
    }
    for letter in 1..=DIMENSION {
        if !compared[letter - 1] {
            basis.push(unit_vector(letter));
        }
    }
    let set = LinearSet::new(ExponentVector::new(shift), basis)
        .expect("fixture dimensions match");
    (label, set, true)
}

/// A union guaranteed to cover the probe point, chosen so that a specific
/// step of the refutation fires. Template 0 trips the 1/8 claim, 1 the 3/4
/// claim, 2 the 2/6 claim, and 3 the final construction.
fn covering_template(which: u64) -> Vec<ExponentVector> {
    match which % 4 {
        0 => (1..=9).map(unit_vector).collect(),
        1 => vec![
            pair_vector(1, 8),
            unit_vector(2),
            unit_vector(3),
            unit_vector(4),
            unit_vector(5),
            unit_vector(6),
            unit_vector(7),
            unit_vector(9),
        ],
        2 => vec![
            pair_vector(1, 8),
            pair_vector(2, 6),
            unit_vector(2),
            pair_vector(3, 4),
            unit_vector(5),
            unit_vector(7),
            unit_vector(9),
        ],
        _ => vec![
            pair_vector(1, 8),
            pair_vector(2, 7),
            unit_vector(2),
            pair_vector(3, 4),
            unit_vector(5),
            unit_vector(6),
            unit_vector(9),
        ],
    }
}

fn random_light_vector(rng: &mut SplitMix64, max_coord: u64) -> ExponentVector {
    let mut coords = vec![0u64; DIMENSION];
    if max_coord > 0 {
        let nonzero = rng.next_below(3);
        if nonzero >= 1 {
            let first = rng.next_below(DIMENSION as u64) as usize;
            coords[first] = 1 + rng.next_below(max_coord);
            if nonzero == 2 {
                let offset = 1 + rng.next_below(DIMENSION as u64 - 1);
                let second = (first + offset as usize) % DIMENSION;
                coords[second] = 1 + rng.next_below(max_coord);
            }
        }
    }
    ExponentVector::new(coords)
}

/// Runs the refuter on `trials` random light unions and checks every result
/// with [`verify_result`]. A quarter of the trials start from a union that
/// covers the probe point, so the overcovering steps fire too; the rest are
/// fully random and mostly end uncovered.
pub fn sweep_refuter(
    trials: u64,
    max_sets: u64,
    max_basis: u64,
    max_coord: u64,
    seed: u64,
) -> SweepReport {
    let mut rng = SplitMix64::new(seed);
    let mut uncovered = 0u64;
    let mut overcovered = 0u64;
    let mut mismatches = Vec::new();

    for trial in 0..trials {
        let covering = rng.next_below(4) == 0;
        let mut sets = Vec::new();
        if covering {
            let mut basis = covering_template(rng.next_below(4));
            for _ in 0..rng.next_below(3) {
                basis.push(random_light_vector(&mut rng, max_coord));
            }
            sets.push(
                LinearSet::new(ExponentVector::zeros(DIMENSION), basis)
                    .expect("template vectors are 9-dimensional"),
            );
        } else {
            for _ in 0..rng.next_below(max_sets + 1) {
                let shift = ExponentVector::new(
                    (0..DIMENSION).map(|_| rng.next_below(max_coord + 1)).collect(),
                );
                let basis: Vec<ExponentVector> = (0..rng.next_below(max_basis + 1))
                    .map(|_| random_light_vector(&mut rng, max_coord))
                    .collect();
                sets.push(LinearSet::new(shift, basis).expect("generated vectors match"));
            }
        }
        let union =
            SemilinearUnion::new(DIMENSION, sets).expect("generated sets are 9-dimensional");

        match refute(&union) {
            Ok(result) => {
                match result.kind {
                    RefutationKind::Uncovered => uncovered += 1,
                    RefutationKind::Overcovered => overcovered += 1,
                }
                if !verify_result(&union, &result) {
                    mismatches.push(Mismatch {
                        input: format!("trial {trial} (seed {seed}): {}", result.summary()),
                        expected: "verification passes".to_string(),
                        actual: "verification failed".to_string(),
                    });
                }
            }
            Err(error) => mismatches.push(Mismatch {
                input: format!("trial {trial} (seed {seed})"),
                expected: "a refutation".to_string(),
                actual: error.to_string(),
            }),
        }
    }

    SweepReport {
        description: format!(
            "refuter on {trials} random light unions (seed {seed}): \
             {uncovered} uncovered, {overcovered} overcovered"
        ),
        points_checked: trials,
        mismatches,
    }
}

/// Exhaustive membership: try every coefficient tuple up to the per-vector
/// ceilings implied by the target point. Deliberately artless — this is the
/// oracle the backtracking search is judged against.
fn brute_force_member(set: &LinearSet, point: &ExponentVector) -> bool {
    let Some(residual) = point.checked_sub(set.shift()) else {
        return false;
    };
    let basis = set.basis();
    let bounds: Vec<u64> = basis
        .iter()
        .map(|vector| {
            (0..residual.dim())
                .filter(|&i| vector[i] > 0)
                .map(|i| residual[i] / vector[i])
                .min()
                .unwrap_or(0)
        })
        .collect();
    let mut coefficients = vec![0u64; basis.len()];
    loop {
        let mut sum = set.shift().clone();
        let mut fits = true;
        for (coefficient, vector) in coefficients.iter().zip(basis) {
            match sum.checked_add_scaled(*coefficient, vector) {
                Some(next) => sum = next,
                None => {
                    fits = false;
                    break;
                }
            }
        }
        if fits && &sum == point {
            return true;
        }
        let mut position = coefficients.len();
        loop {
            if position == 0 {
                return false;
            }
            position -= 1;
            if coefficients[position] < bounds[position] {
                coefficients[position] += 1;
                break;
            }
            coefficients[position] = 0;
        }
    }
}

/// Sweeps the backtracking membership search against [`brute_force_member`]
/// on random unions and points: verdicts must agree, the reported set must
/// be the first set containing the point, and the witness coefficients must
/// reconstruct it.
pub fn sweep_member_oracle(queries: u64, max_basis: u64, max_coord: u64, seed: u64) -> SweepReport {
    let mut rng = SplitMix64::new(seed);
    let mut mismatches = Vec::new();

    for query in 0..queries {
        let dimension = 1 + rng.next_below(DIMENSION as u64) as usize;
        let num_sets = 1 + rng.next_below(2) as usize;
        let mut sets = Vec::new();
        for _ in 0..num_sets {
            let shift = ExponentVector::new(
                (0..dimension).map(|_| rng.next_below(max_coord + 1)).collect(),
            );
            let basis: Vec<ExponentVector> = (0..rng.next_below(max_basis + 1))
                .map(|_| {
                    ExponentVector::new(
                        (0..dimension).map(|_| rng.next_below(max_coord + 1)).collect(),
                    )
                })
                .collect();
            sets.push(LinearSet::new(shift, basis).expect("generated vectors match"));
        }
        let union = SemilinearUnion::new(dimension, sets).expect("generated sets match");

        let point = if rng.next_below(8) == 0 {
            union.sets()[0].shift().clone()
        } else {
            ExponentVector::new(
                (0..dimension).map(|_| rng.next_below(2 * max_coord + 2)).collect(),
            )
        };

        let expected = union.sets().iter().position(|set| brute_force_member(set, &point));
        let actual = union.member(&point).expect("point dimension matches the union");
        let agree = match (&expected, &actual) {
            (None, None) => true,
            (Some(index), Some(witness)) => {
                witness.set_index == *index && {
                    let set = &union.sets()[*index];
                    let mut sum = set.shift().clone();
                    let mut valid = witness.coefficients.len() == set.basis().len();
                    for (coefficient, vector) in witness.coefficients.iter().zip(set.basis()) {
                        match sum.checked_add_scaled(*coefficient, vector) {
                            Some(next) => sum = next,
                            None => {
                                valid = false;
                                break;
                            }
                        }
                    }
                    valid && sum == point
                }
            }
            _ => false,
        };
        if !agree {
            mismatches.push(Mismatch {
                input: format!("query {query} (seed {seed}): {point}"),
                expected: match expected {
                    Some(index) => format!("member of set {}", index + 1),
                    None => "non-member".to_string(),
                },
                actual: match actual {
                    Some(witness) => format!(
                        "set {} coefficients {:?}",
                        witness.set_index + 1,
                        witness.coefficients
                    ),
                    None => "non-member".to_string(),
                },
            });
        }
    }

    SweepReport {
        description: format!(
            "membership search vs brute-force enumeration, {queries} random queries (seed {seed})"
        ),
        points_checked: queries,
        mismatches,
    }
}

/// Fixed stratification instances with known answers, including the
/// crossing pair that separates stratified from merely light.
pub fn sweep_stratified() -> SweepReport {
    let vector = |coords: &[u64]| ExponentVector::new(coords.to_vec());
    let set = |shift: ExponentVector, basis: Vec<ExponentVector>| {
        LinearSet::new(shift, basis).expect("fixture dimensions match")
    };
    let cases: Vec<(&str, LinearSet, bool)> = vec![
        (
            "crossing supports {1,3} and {2,4}",
            set(
                ExponentVector::zeros(4),
                vec![vector(&[1, 0, 1, 0]), vector(&[0, 1, 0, 1])],
            ),
            false,
        ),
        (
            "disjoint supports {1,2} and {3,4}",
            set(
                ExponentVector::zeros(4),
                vec![vector(&[1, 1, 0, 0]), vector(&[0, 0, 1, 1])],
            ),
            true,
        ),
        (
            "nested supports {1,4} and {2,3}",
            set(
                ExponentVector::zeros(4),
                vec![vector(&[1, 0, 0, 1]), vector(&[0, 2, 3, 0])],
            ),
            true,
        ),
        (
            "repeated support {1,3}",
            set(
                ExponentVector::zeros(4),
                vec![vector(&[1, 0, 1, 0]), vector(&[2, 0, 5, 0])],
            ),
            true,
        ),
        (
            "single coordinates only",
            set(
                ExponentVector::zeros(4),
                vec![vector(&[3, 0, 0, 0]), vector(&[0, 0, 7, 0])],
            ),
            true,
        ),
        (
            "a heavy vector is not stratified",
            set(ExponentVector::zeros(4), vec![vector(&[1, 1, 1, 0])]),
            false,
        ),
        component_image_case(ComponentId::L1, "image basis for L1"),
        component_image_case(ComponentId::L2, "image basis for L2"),
        component_image_case(ComponentId::L3, "image basis for L3"),
        component_image_case(ComponentId::L4, "image basis for L4"),
        (
            "crossing pair inside nine dimensions",
            set(
                ExponentVector::zeros(9),
                vec![pair_vector(1, 3), pair_vector(2, 4)],
            ),
            false,
        ),
    ];

    let mut report = SweepReport {
        description: "stratification verdicts on fixed instances".to_string(),
        points_checked: 0,
        mismatches: Vec::new(),
    };
    for (name, set, expected) in cases {
        report.points_checked += 1;
        let actual = set.is_stratified();
        if actual != expected {
            report.mismatches.push(Mismatch {
                input: name.to_string(),
                expected: format!("stratified={expected}"),
                actual: format!("stratified={actual}"),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{build_component_grammar, build_union_grammar};

    #[test]
    fn splitmix_matches_the_reference_vector() {
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(rng.next_u64(), 0x6E789E6AA1B965F4);
        assert_eq!(rng.next_u64(), 0x06C45D188009454F);
        let mut rng = SplitMix64::new(42);
        assert_eq!(rng.next_u64(), 0xBDD732262FEB6E95);
        assert_eq!(rng.next_u64(), 0x28EFE333B266F103);
        assert_eq!(rng.next_u64(), 0x47526757130F9F52);
    }

    #[test]
    fn next_below_stays_below() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..100 {
            assert!(rng.next_below(10) < 10);
        }
        assert_eq!(rng.next_below(0), 0);
        assert_eq!(rng.next_below(1), 0);
    }

    #[test]
    fn component_grammar_matches_its_predicate() {
        let grammar = build_component_grammar(ComponentId::L1);
        let report = sweep_grammar_vs_predicate(
            &grammar,
            LanguageTarget::Component(ComponentId::L1),
            4,
        )
        .unwrap();
        // Sorted words of length <= 4 over nine letters: C(13, 9) = 715.
        assert_eq!(report.points_checked, 715);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn union_grammar_matches_the_language_predicate() {
        let grammar = build_union_grammar();
        let report =
            sweep_grammar_vs_predicate(&grammar, LanguageTarget::Union, 4).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn a_mutated_grammar_is_caught() {
        let grammar = build_component_grammar(ComponentId::L1);
        // Drop one chain rule: the mutant loses every word that repeats the
        // letter the chain generates.
        let mutated_rules: Vec<crate::grammar::Rule> = grammar
            .rules()
            .iter()
            .filter(|rule| {
                !(rule.lhs == rule
                    .rhs
                    .first()
                    .map(|s| s.name().to_string())
                    .unwrap_or_default()
                    && rule.rhs.len() == 2)
            })
            .cloned()
            .collect();
        assert!(mutated_rules.len() < grammar.rules().len());
        let mutated = Grammar::new(
            grammar.terminals().to_vec(),
            grammar.nonterminals().to_vec(),
            mutated_rules,
            grammar.start().to_string(),
        );
        let report = sweep_grammar_vs_predicate(
            &mutated,
            LanguageTarget::Component(ComponentId::L1),
            3,
        )
        .unwrap();
        assert!(!report.passed());
        let text = report.render_text();
        assert!(text.contains("FAIL"), "{text}");
    }

    #[test]
    fn small_disjointness_grid_passes() {
        let report = sweep_disjointness(1);
        assert_eq!(report.points_checked, 512);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn separation_pairs_pass_on_a_small_grid() {
        let report = sweep_separation_pairs(1);
        assert_eq!(report.points_checked, 6 + 6 * 512);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn refuter_sweep_passes_and_hits_both_kinds() {
        let report = sweep_refuter(60, 3, 4, 3, 11);
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.points_checked, 60);
        assert!(report.description.contains("uncovered"));
        // The covering templates guarantee overcovered outcomes; random
        // unions almost never cover the probe, so both kinds appear.
        assert!(!report.description.contains(" 0 uncovered"), "{}", report.description);
        assert!(!report.description.contains(" 0 overcovered"), "{}", report.description);
    }

    #[test]
    fn refuter_sweep_handles_degenerate_sizes() {
        // Size bounds of zero produce the empty union, which is refuted
        // uncovered at the smallest possible bound.
        let report = sweep_refuter(1, 0, 0, 0, 0);
        assert!(report.passed(), "{}", report.render_text());
        assert!(report.description.ends_with("1 uncovered, 0 overcovered"), "{}", report.description);

        let report = sweep_refuter(100, 1, 1, 1, 7);
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.points_checked, 100);
    }

    #[test]
    fn member_oracle_sweep_passes() {
        let report = sweep_member_oracle(300, 3, 3, 5);
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.points_checked, 300);
    }

    #[test]
    fn stratified_fixtures_pass() {
        let report = sweep_stratified();
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.points_checked, 11);
    }

    #[test]
    fn brute_force_member_agrees_on_hand_cases() {
        let set = LinearSet::new(
            ExponentVector::new(vec![1, 0]),
            vec![ExponentVector::new(vec![1, 0]), ExponentVector::new(vec![1, 2])],
        )
        .unwrap();
        assert!(brute_force_member(&set, &ExponentVector::new(vec![4, 4])));
        assert!(!brute_force_member(&set, &ExponentVector::new(vec![0, 0])));
        assert!(!brute_force_member(&set, &ExponentVector::new(vec![2, 3])));
    }

    #[test]
    fn reports_render_both_shapes() {
        let mut report = SweepReport {
            description: "demo".to_string(),
            points_checked: 3,
            mismatches: Vec::new(),
        };
        assert!(report.render_text().ends_with("PASS\n"));
        assert_eq!(report.render_tsv(), "input\texpected\tactual\n");

        report.mismatches.push(Mismatch {
            input: "(1 2)".to_string(),
            expected: "member".to_string(),
            actual: "non-member".to_string(),
        });
        let text = report.render_text();
        assert!(text.ends_with("FAIL 1 mismatch\n"), "{text}");
        assert!(text.contains("input=(1 2) expected=member actual=non-member"));
        assert_eq!(
            report.render_tsv(),
            "input\texpected\tactual\n(1 2)\tmember\tnon-member\n"
        );

        report.mismatches.push(Mismatch {
            input: "(2 2)".to_string(),
            expected: "member".to_string(),
            actual: "non-member".to_string(),
        });
        assert!(report.render_text().ends_with("FAIL 2 mismatches\n"));
    }
}
