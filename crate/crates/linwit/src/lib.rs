//! Bounded linear grammars, semilinear sets, and a refuter.
//!
//! The crate is organized around one *witness language* `L`: sorted words
//! over `a1..a9`, the disjoint union of four components that each compare a
//! few letter counts ([`witness`]). Each component has an unambiguous linear
//! grammar ([`grammar`] provides recognition, exact parse counting, and
//! enumeration for arbitrary context-free grammars), and under the
//! letter-counting map `psi` each component's image is a stratified linear
//! set ([`semilinear`]).
//!
//! The point of the construction is the complement: `N^9 \ psi(L)` is
//! semilinear but **not** a finite union of light linear sets (at most two
//! nonzero coordinates per basis vector). [`refutation`] proves this one
//! candidate at a time — [`refute`] takes any light union claimed to equal
//! the complement and constructs a point where the claim fails, with a
//! replayable trace. [`oracle`] supplies the randomized and exhaustive
//! sweeps that keep the independent implementations honest against each
//! other.
//!
//! The user guide under [`guide`] mirrors the mdbook in `book/`; its
//! examples are this crate's doctests. A command-line front end (`linwit`)
//! exposes grammars, membership, the refuter, and the sweeps.

#![forbid(unsafe_code)]

pub mod grammar;
pub mod guide;
pub mod oracle;
pub mod refutation;
pub mod semilinear;
pub mod witness;

pub use grammar::{DerivationCount, Diagnostic, Grammar, GrammarError, Recognizer, Rule, Symbol};
pub use oracle::{
    sweep_disjointness, sweep_grammar_vs_predicate, sweep_member_oracle, sweep_refuter,
    sweep_separation_pairs, sweep_stratified, LanguageTarget, Mismatch, SplitMix64, SweepReport,
};
pub use refutation::{
    compute_bound, refute, verify_result, witness_point, FiredStep, RefutationKind,
    RefutationResult, RefutationTrace, RefuteError,
};
pub use semilinear::{
    LinearSet, MembershipWitness, SemilinearError, SemilinearUnion, UnionParseError,
};
pub use witness::{
    build_component_grammar, build_union_grammar, comparisons, member_component, member_language,
    psi, psi_inverse, separating_pair, Comparison, ComponentId, ExponentVector, PointParseError,
    WitnessError, DIMENSION,
};
