//! Bounded language enumeration by bottom-up fixpoint.
//!
//! Each nonterminal accumulates the set of token strings (of length at most
//! the bound) it derives; rules are replayed until nothing new appears. The
//! universe of strings under a length bound is finite and the sets only
//! grow, so the fixpoint always terminates — epsilon rules and unit cycles
//! included. Callers sort the result into shortlex order for output.

use std::collections::BTreeSet;

use super::earley::{Recognizer, Sym};

pub(super) fn enumerate(recognizer: &Recognizer, max_length: usize) -> BTreeSet<Vec<u16>> {
    let n_nonterminals = recognizer.nonterminals.len();
    let mut languages: Vec<BTreeSet<Vec<u16>>> = vec![BTreeSet::new(); n_nonterminals];

    let mut changed = true;
    while changed {
        changed = false;
        for rule in &recognizer.rules {
            let mut partials: Vec<Vec<u16>> = vec![Vec::new()];
            for sym in &rule.rhs {
                let mut extended = Vec::new();
                match sym {
                    Sym::T(a) => {
                        for partial in &partials {
                            if partial.len() + 1 <= max_length {
                                let mut longer = partial.clone();
                                longer.push(*a);
                                extended.push(longer);
                            }
                        }
                    }
                    Sym::N(b) => {
                        for partial in &partials {
                            for derived in &languages[*b as usize] {
                                if partial.len() + derived.len() <= max_length {
                                    let mut longer = partial.clone();
                                    longer.extend_from_slice(derived);
                                    extended.push(longer);
                                }
                            }
                        }
                    }
                }
                partials = extended;
                if partials.is_empty() {
                    break;
                }
            }
            let target = &mut languages[rule.lhs as usize];
            for sentence in partials {
                if target.insert(sentence) {
                    changed = true;
                }
            }
        }
    }

    languages.swap_remove(recognizer.start as usize)
}
