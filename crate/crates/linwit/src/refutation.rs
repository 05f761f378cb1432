//! Refutation of light semilinear descriptions of the complement of `psi(L)`.
//!
//! The witness language `L` (see [`crate::witness`]) has a complement — the
//! sorted words *not* in `L`, equivalently the exponent vectors outside
//! `psi(L)` — that is itself an unambiguous bounded language. Its Parikh
//! image is semilinear, but no finite union of *light* linear sets (at most
//! two nonzero coordinates per basis vector) describes it. [`refute`] makes
//! that concrete: given any candidate union, it constructs a point where the
//! candidate and the complement disagree, with a replayable trace.
//!
//! The construction, step by step, writing `M` for one plus the largest
//! coordinate mentioned by the union and `v = (M, 3M, 2M, 2M, M, 2M, 2M, M,
//! M)`:
//!
//! 1. `v` is outside `psi(L)` — it fails one comparison in every component
//!    (`i2 > i7`, `i1 = i9`, `i3 = i4`, `i1 = i8`). If the union does not
//!    cover `v`, it misses a complement point: **UNCOVERED**, step
//!    `NO_COVER`.
//! 2. Otherwise fix the covering set and a witness `v = alpha + sum ci *
//!    beta^i`; only positive coefficients matter. All coordinates of `alpha`
//!    and every `beta^i` are at most `M - 1`, which drives everything below.
//! 3. `CLAIM_1_8`: if some positive `beta` has `beta_1 != beta_8`, then
//!    nudging its coefficient by one (up if `beta_1 > beta_8`, down
//!    otherwise) tips `v` into `psi(L4)`: the other two `L4` comparisons
//!    hold with slack at least `M` and a single light vector cannot cancel
//!    that. The nudged point is covered and in the language: **OVERCOVERED**.
//! 4. `CLAIM_3_4`: same argument on coordinates 3 and 4, landing in
//!    `psi(L3)` (it needs `beta_1 = beta_8` from step 3 for `i1 <= i8`).
//! 5. Now every positive vector touching coordinate 3 has support exactly
//!    `{3, 4}` with equal entries; dropping them all yields `u` (still
//!    covered) with `u3 = u4 = alpha_3`.
//! 6. `CLAIM_2_6`: let `T` be the coordinate-2 contribution of the positive
//!    vectors with support `{2, 6}`. If `T >= M`, dropping exactly those
//!    vectors from `u` lands in `psi(L1)` (`i2` falls to `3M - T <= 2M =
//!    i7`; `i3 = alpha_3 < M = i5`): **OVERCOVERED**.
//! 7. `FINAL_W`: otherwise drop the remaining vectors that touch coordinate
//!    2 (they cannot touch 6, 3, 4, 1, or 8 — lightness plus the claims) and
//!    add `M + 1` copies of a positive vector with `beta_1 = beta_8 > 0`.
//!    Such a vector must exist, because `v1 = M` exceeds `alpha_1 <= M - 1`.
//!    The result `w` has `w1 > w9`, `w2 = alpha_2 + T < 2M = w6`, and
//!    `w3 = w4`, so `w` is in `psi(L2)` and still covered: **OVERCOVERED**.
//!
//! Every step re-checks its own postcondition through the public membership
//! predicates before returning; a failure there is not a property of the
//! input but a bug in this module, reported as
//! [`RefuteError::Inconsistency`].

use std::fmt;

use crate::semilinear::{LinearSet, SemilinearUnion};
use crate::witness::{member_component, member_language, ComponentId, ExponentVector, DIMENSION};

/// Errors from the refutation pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RefuteError {
    #[error("the union must have dimension {DIMENSION}, got {0}")]
    WrongDimension(usize),
    #[error("set {set}, basis vector {vector}: more than two nonzero coordinates (not light)")]
    NotLight { set: usize, vector: usize },
    #[error("the bound must be at least 1")]
    BoundTooSmall,
    #[error("arithmetic overflow while building the refutation")]
    Overflow,
    #[error("internal inconsistency: {0} — this is a bug in the refuter, not in the input")]
    Inconsistency(String),
}

/// Which side of the claimed description failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefutationKind {
    /// The union misses a point that lies outside `psi(L)`.
    Uncovered,
    /// The union covers a point that lies inside `psi(L)`.
    Overcovered,
}

impl fmt::Display for RefutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefutationKind::Uncovered => write!(f, "UNCOVERED"),
            RefutationKind::Overcovered => write!(f, "OVERCOVERED"),
        }
    }
}

/// The step of the construction that produced the counterexample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiredStep {
    NoCover,
    Claim18,
    Claim34,
    Claim26,
    FinalW,
}

impl fmt::Display for FiredStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FiredStep::NoCover => "NO_COVER",
            FiredStep::Claim18 => "CLAIM_1_8",
            FiredStep::Claim34 => "CLAIM_3_4",
            FiredStep::Claim26 => "CLAIM_2_6",
            FiredStep::FinalW => "FINAL_W",
        };
        write!(f, "{name}")
    }
}

/// Everything needed to replay a refutation by hand.
///
/// All indices refer to the basis of `covering_set` (the normalized covering
/// set), 0-based; rendering is 1-based. Fields are `None` when the step that
/// would fill them never ran.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationTrace {
    /// `M`: one plus the largest coordinate in the (normalized) union.
    pub bound: u64,
    /// `v = (M, 3M, 2M, 2M, M, 2M, 2M, M, M)`, outside `psi(L)`.
    pub base_point: ExponentVector,
    /// Index of the set covering `v` in the normalized union.
    pub set_index: Option<usize>,
    /// The normalized covering set itself.
    pub covering_set: Option<LinearSet>,
    /// Witness coefficients for `v` against `covering_set`.
    pub coefficients: Option<Vec<u64>>,
    pub fired_step: FiredStep,
    /// `CLAIM_1_8` / `CLAIM_3_4`: which coefficient was nudged, and how.
    pub adjusted_index: Option<usize>,
    pub delta: Option<i64>,
    /// Step 5: vectors dropped to form `u` (those touching coordinate 3).
    pub removed_for_u: Option<Vec<usize>>,
    pub u_point: Option<ExponentVector>,
    /// `CLAIM_2_6`: the `{2,6}` vectors dropped; `FINAL_W`: the remaining
    /// coordinate-2 vectors dropped.
    pub removed_final: Option<Vec<usize>>,
    /// `FINAL_W`: which vector was boosted, by how much (`M + 1`).
    pub boost_index: Option<usize>,
    pub boost: Option<u64>,
}

/// Outcome of [`refute`]: a concrete disagreement point plus its trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationResult {
    pub kind: RefutationKind,
    /// The disagreement point.
    pub point: ExponentVector,
    /// For [`RefutationKind::Overcovered`]: the component of `psi(L)`
    /// containing the point.
    pub component: Option<ComponentId>,
    /// For [`RefutationKind::Overcovered`]: the covering set's index in the
    /// normalized union.
    pub set_index: Option<usize>,
    pub trace: RefutationTrace,
}

impl RefutationResult {
    /// The one-line summary used by the command-line tool:
    /// `UNCOVERED (1 3 2 2 1 2 2 1 1)` or
    /// `OVERCOVERED (5 0 0 0 2 4 0 5 2) step=FINAL_W in=psi(L2)`.
    pub fn summary(&self) -> String {
        match self.kind {
            RefutationKind::Uncovered => format!("{} {}", self.kind, self.point),
            RefutationKind::Overcovered => {
                let component = self
                    .component
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "?".to_string());
                format!(
                    "{} {} step={} in=psi({component})",
                    self.kind, self.point, self.trace.fired_step
                )
            }
        }
    }
}

/// `M`: one plus the largest coordinate appearing in any shift or basis
/// vector of the union (1 for the empty union). Also enforces lightness —
/// the construction is meaningless for non-light sets.
pub fn compute_bound(union: &SemilinearUnion) -> Result<u64, RefuteError> {
    let mut max = 0u64;
    for (set_index, set) in union.sets().iter().enumerate() {
        if !set.is_light() {
            let vector = set
                .basis()
                .iter()
                .position(|b| b.coords().iter().filter(|&&c| c != 0).count() > 2)
                .unwrap_or(0);
            return Err(RefuteError::NotLight { set: set_index, vector });
        }
        max = max.max(set.shift().max_coord());
        for vector in set.basis() {
            max = max.max(vector.max_coord());
        }
    }
    max.checked_add(1).ok_or(RefuteError::Overflow)
}

/// `v = (M, 3M, 2M, 2M, M, 2M, 2M, M, M)`: the probe point, outside
/// `psi(L)` for every `M >= 1`.
pub fn witness_point(bound: u64) -> Result<ExponentVector, RefuteError> {
    if bound == 0 {
        return Err(RefuteError::BoundTooSmall);
    }
    let single = bound;
    let double = bound.checked_mul(2).ok_or(RefuteError::Overflow)?;
    let triple = bound.checked_mul(3).ok_or(RefuteError::Overflow)?;
    Ok(ExponentVector::new(vec![
        single, triple, double, double, single, double, double, single, single,
    ]))
}

fn inconsistency<T>(message: impl Into<String>) -> Result<T, RefuteError> {
    Err(RefuteError::Inconsistency(message.into()))
}

/// Runs the whole construction against `union`, claimed to describe the
/// complement of `psi(L)` in `N^9`.
pub fn refute(union: &SemilinearUnion) -> Result<RefutationResult, RefuteError> {
    if union.dimension() != DIMENSION {
        return Err(RefuteError::WrongDimension(union.dimension()));
    }
    let normalized = union.normalize();
    let bound = compute_bound(&normalized)?;
    let v = witness_point(bound)?;
    if member_language(&v).map_err(|e| RefuteError::Inconsistency(e.to_string()))?.is_some() {
        return inconsistency(format!("probe point {v} landed inside the language"));
    }

    let cover = normalized.member(&v).map_err(|e| RefuteError::Inconsistency(e.to_string()))?;
    let mut trace = RefutationTrace {
        bound,
        base_point: v.clone(),
        set_index: None,
        covering_set: None,
        coefficients: None,
        fired_step: FiredStep::NoCover,
        adjusted_index: None,
        delta: None,
        removed_for_u: None,
        u_point: None,
        removed_final: None,
        boost_index: None,
        boost: None,
    };

    let Some(witness) = cover else {
        return Ok(RefutationResult {
            kind: RefutationKind::Uncovered,
            point: v,
            component: None,
            set_index: None,
            trace,
        });
    };

    let set = normalized.sets()[witness.set_index].clone();
    let coefficients = witness.coefficients.clone();
    trace.set_index = Some(witness.set_index);
    trace.covering_set = Some(set.clone());
    trace.coefficients = Some(coefficients.clone());

    let basis = set.basis();
    let positive: Vec<usize> = (0..basis.len()).filter(|&i| coefficients[i] > 0).collect();
    let coord = |vector: &ExponentVector, letter: usize| vector[letter - 1];

    // CLAIM_1_8: nudge any positive vector with beta_1 != beta_8 into psi(L4).
    for &i in &positive {
        let beta = &basis[i];
        if coord(beta, 1) != coord(beta, 8) {
            let (point, delta) = if coord(beta, 1) > coord(beta, 8) {
                (v.checked_add(beta).ok_or(RefuteError::Overflow)?, 1)
            } else {
                let Some(point) = v.checked_sub(beta) else {
                    return inconsistency("claim 1/8: light vector exceeds the probe point");
                };
                (point, -1)
            };
            trace.fired_step = FiredStep::Claim18;
            trace.adjusted_index = Some(i);
            trace.delta = Some(delta);
            return finish_overcovered(union, &set, witness.set_index, point, ComponentId::L4, trace);
        }
    }

    // CLAIM_3_4: same nudge on coordinates 3 and 4, landing in psi(L3).
    for &i in &positive {
        let beta = &basis[i];
        if coord(beta, 3) != coord(beta, 4) {
            let (point, delta) = if coord(beta, 3) > coord(beta, 4) {
                (v.checked_add(beta).ok_or(RefuteError::Overflow)?, 1)
            } else {
                let Some(point) = v.checked_sub(beta) else {
                    return inconsistency("claim 3/4: light vector exceeds the probe point");
                };
                (point, -1)
            };
            trace.fired_step = FiredStep::Claim34;
            trace.adjusted_index = Some(i);
            trace.delta = Some(delta);
            return finish_overcovered(union, &set, witness.set_index, point, ComponentId::L3, trace);
        }
    }

    // Every positive vector now has beta_1 = beta_8 and beta_3 = beta_4;
    // lightness makes the coordinate-3 vectors pure {3,4} pairs. Drop them.
    let removed_for_u: Vec<usize> =
        positive.iter().copied().filter(|&i| coord(&basis[i], 3) > 0).collect();
    let mut u = v.clone();
    for &i in &removed_for_u {
        match u.checked_sub_scaled(coefficients[i], &basis[i]) {
            Some(next) => u = next,
            None => return inconsistency("step u: {3,4} contributions exceed the probe point"),
        }
    }
    trace.removed_for_u = Some(removed_for_u.clone());
    trace.u_point = Some(u.clone());

    // CLAIM_2_6: if the {2,6} vectors contribute at least M to coordinate 2,
    // dropping exactly them lands in psi(L1).
    let pair_26: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&i| coord(&basis[i], 2) > 0 && coord(&basis[i], 6) > 0)
        .collect();
    let contribution: u64 = pair_26
        .iter()
        .map(|&i| coefficients[i].saturating_mul(coord(&basis[i], 2)))
        .sum();
    if contribution >= bound {
        let mut point = u.clone();
        for &i in &pair_26 {
            match point.checked_sub_scaled(coefficients[i], &basis[i]) {
                Some(next) => point = next,
                None => return inconsistency("claim 2/6: {2,6} contributions exceed u"),
            }
        }
        trace.fired_step = FiredStep::Claim26;
        trace.removed_final = Some(pair_26);
        return finish_overcovered(union, &set, witness.set_index, point, ComponentId::L1, trace);
    }

    // FINAL_W: drop the remaining coordinate-2 vectors and add M + 1 copies
    // of a {1,8} vector, landing in psi(L2).
    let removed_final: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&i| coord(&basis[i], 2) > 0 && coord(&basis[i], 6) == 0)
        .collect();
    let mut point = u.clone();
    for &i in &removed_final {
        match point.checked_sub_scaled(coefficients[i], &basis[i]) {
            Some(next) => point = next,
            None => return inconsistency("final step: coordinate-2 contributions exceed u"),
        }
    }
    let Some(&boost_index) = positive.iter().find(|&&i| coord(&basis[i], 1) > 0) else {
        return inconsistency(
            "final step: no positive {1,8} vector, yet coordinate 1 of the probe is M",
        );
    };
    let boost = bound.checked_add(1).ok_or(RefuteError::Overflow)?;
    let point =
        point.checked_add_scaled(boost, &basis[boost_index]).ok_or(RefuteError::Overflow)?;
    trace.fired_step = FiredStep::FinalW;
    trace.removed_final = Some(removed_final);
    trace.boost_index = Some(boost_index);
    trace.boost = Some(boost);
    finish_overcovered(union, &set, witness.set_index, point, ComponentId::L2, trace)
}

/// Re-checks the overcovered postcondition through the public predicates and
/// assembles the result. The set membership is checked against the concrete
/// covering set — stronger than membership anywhere in the union.
fn finish_overcovered(
    union: &SemilinearUnion,
    covering_set: &LinearSet,
    set_index: usize,
    point: ExponentVector,
    component: ComponentId,
    trace: RefutationTrace,
) -> Result<RefutationResult, RefuteError> {
    match member_component(&point, component) {
        Ok(true) => {}
        _ => {
            return inconsistency(format!(
                "step {} produced {point}, which is not in psi({component})",
                trace.fired_step
            ))
        }
    }
    match covering_set.member(&point) {
        Ok(Some(_)) => {}
        _ => {
            return inconsistency(format!(
                "step {} produced {point}, which escaped covering set {}",
                trace.fired_step,
                set_index + 1
            ))
        }
    }
    debug_assert!(matches!(union.member(&point), Ok(Some(_))));
    Ok(RefutationResult {
        kind: RefutationKind::Overcovered,
        point,
        component: Some(component),
        set_index: Some(set_index),
        trace,
    })
}

/// Independent check of a refutation result against the original union:
/// `UNCOVERED` points must lie outside both `psi(L)` and the union,
/// `OVERCOVERED` points must lie in the named component and in the named
/// covering set. Any dimension error or missing field counts as failure.
pub fn verify_result(union: &SemilinearUnion, result: &RefutationResult) -> bool {
    match result.kind {
        RefutationKind::Uncovered => {
            member_language(&result.point) == Ok(None)
                && matches!(union.member(&result.point), Ok(None))
        }
        RefutationKind::Overcovered => {
            let Some(component) = result.component else {
                return false;
            };
            if member_language(&result.point) != Ok(Some(component)) {
                return false;
            }
            let normalized = union.normalize();
            match result.set_index {
                Some(index) => match normalized.sets().get(index) {
                    Some(set) => matches!(set.member(&result.point), Ok(Some(_))),
                    None => false,
                },
                None => false,
            }
        }
    }
}
