//! Linear and semilinear sets over `N^k`.
//!
//! A [`LinearSet`] is a shift vector `alpha` plus finitely many basis
//! vectors `beta^1..beta^m`; it denotes `{ alpha + c1*beta^1 + ... +
//! cm*beta^m : ci in N }`. A [`SemilinearUnion`] is a finite union of linear
//! sets of one common dimension.
//!
//! Membership is decided by depth-first search over coefficient tuples.
//! Coefficients are tried in increasing order and every coordinate of the
//! running residual prunes the range (a nonzero basis coordinate `b` at a
//! residual coordinate `r` caps the coefficient at `r / b`), so the search
//! is exact, always terminates, and returns the lexicographically smallest
//! witness. Zero basis vectors get their coefficient pinned to `0` rather
//! than being rejected, so witnesses stay aligned with the original basis.
//!
//! Two structural predicates matter downstream: a set is *light* when every
//! basis vector has at most two nonzero coordinates, and *stratified* when
//! it is light and no two basis vectors interleave as `j1 < j2 < j3 < j4`
//! with one vector nonzero on `j1, j3` and the other nonzero on `j2, j4`
//! (the "crossing" picture; nesting and disjointness are fine).

use std::fmt;

use crate::witness::ExponentVector;

/// Errors from dimension-checked semilinear operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemilinearError {
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// `alpha + N*beta^1 + ... + N*beta^m`, all vectors of one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSet {
    shift: ExponentVector,
    basis: Vec<ExponentVector>,
}

impl LinearSet {
    /// Builds a linear set; every basis vector must match the shift's
    /// dimension.
    pub fn new(shift: ExponentVector, basis: Vec<ExponentVector>) -> Result<Self, SemilinearError> {
        let dim = shift.dim();
        for vector in &basis {
            if vector.dim() != dim {
                return Err(SemilinearError::DimensionMismatch { expected: dim, got: vector.dim() });
            }
        }
        Ok(LinearSet { shift, basis })
    }

    pub fn dimension(&self) -> usize {
        self.shift.dim()
    }

    pub fn shift(&self) -> &ExponentVector {
        &self.shift
    }

    pub fn basis(&self) -> &[ExponentVector] {
        &self.basis
    }

    /// Drops zero basis vectors and duplicate basis vectors (first
    /// occurrence wins). The denoted set is unchanged.
    pub fn normalize(&self) -> LinearSet {
        let mut basis: Vec<ExponentVector> = Vec::new();
        for vector in &self.basis {
            if !vector.is_zero() && !basis.contains(vector) {
                basis.push(vector.clone());
            }
        }
        LinearSet { shift: self.shift.clone(), basis }
    }

    /// Searches for coefficients `c` with `point = shift + sum ci * beta^i`.
    /// Returns the lexicographically smallest solution, or `None` when the
    /// point is not in the set.
    pub fn member(&self, point: &ExponentVector) -> Result<Option<Vec<u64>>, SemilinearError> {
        if point.dim() != self.dimension() {
            return Err(SemilinearError::DimensionMismatch {
                expected: self.dimension(),
                got: point.dim(),
            });
        }
        let Some(residual) = point.checked_sub(&self.shift) else {
            return Ok(None);
        };
        let mut residual: Vec<u64> = residual.coords().to_vec();
        let mut coefficients = vec![0u64; self.basis.len()];
        // covered_from[i][j]: some basis vector at index >= i touches
        // coordinate j. A branch whose residual is nonzero on an untouched
        // coordinate can never close, so the search drops it immediately.
        let mut covered_from = vec![vec![false; self.dimension()]; self.basis.len() + 1];
        for i in (0..self.basis.len()).rev() {
            let row: Vec<bool> = self.basis[i]
                .coords()
                .iter()
                .zip(&covered_from[i + 1])
                .map(|(&b, &later)| later || b > 0)
                .collect();
            covered_from[i] = row;
        }
        let found = search(&self.basis, &covered_from, 0, &mut residual, &mut coefficients);
        Ok(found.then_some(coefficients))
    }

    /// At most two nonzero coordinates in every basis vector.
    pub fn is_light(&self) -> bool {
        self.basis
            .iter()
            .all(|vector| vector.coords().iter().filter(|&&c| c != 0).count() <= 2)
    }

    /// Light, and no two basis vectors (in either order) cross: there are no
    /// positions `j1 < j2 < j3 < j4` with the first vector nonzero on `j1`
    /// and `j3` and the second nonzero on `j2` and `j4`.
    pub fn is_stratified(&self) -> bool {
        if !self.is_light() {
            return false;
        }
        let supports: Vec<Vec<usize>> = self
            .basis
            .iter()
            .map(|vector| {
                vector
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        for first in &supports {
            for second in &supports {
                for &j1 in first {
                    for &j3 in first {
                        for &j2 in second {
                            for &j4 in second {
                                if j1 < j2 && j2 < j3 && j3 < j4 {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

fn search(
    basis: &[ExponentVector],
    covered_from: &[Vec<bool>],
    at: usize,
    residual: &mut [u64],
    out: &mut [u64],
) -> bool {
    if residual.iter().zip(&covered_from[at]).any(|(&r, &covered)| r > 0 && !covered) {
        return false;
    }
    if at == basis.len() {
        // The coverage check above already rejected any nonzero residual.
        return true;
    }
    let beta = basis[at].coords();
    if beta.iter().all(|&b| b == 0) {
        out[at] = 0;
        return search(basis, covered_from, at + 1, residual, out);
    }
    let mut max = u64::MAX;
    for (&r, &b) in residual.iter().zip(beta) {
        if b > 0 {
            max = max.min(r / b);
        }
    }
    let mut c = 0u64;
    loop {
        out[at] = c;
        if search(basis, covered_from, at + 1, residual, out) {
            return true;
        }
        if c == max {
            break;
        }
        for (r, &b) in residual.iter_mut().zip(beta) {
            *r -= b;
        }
        c += 1;
    }
    // Undo the `max` subtractions; the products stay within the original
    // residual by construction of `max`.
    for (r, &b) in residual.iter_mut().zip(beta) {
        *r += max * b;
    }
    false
}

/// Which linear set matched, and with which coefficients.
///
/// `set_index` is 0-based (a plain index into [`SemilinearUnion::sets`]);
/// command-line output renders it 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipWitness {
    pub set_index: usize,
    pub coefficients: Vec<u64>,
}

/// A finite union of linear sets sharing one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearUnion {
    dimension: usize,
    sets: Vec<LinearSet>,
}

impl SemilinearUnion {
    pub fn new(dimension: usize, sets: Vec<LinearSet>) -> Result<Self, SemilinearError> {
        for set in &sets {
            if set.dimension() != dimension {
                return Err(SemilinearError::DimensionMismatch {
                    expected: dimension,
                    got: set.dimension(),
                });
            }
        }
        Ok(SemilinearUnion { dimension, sets })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn sets(&self) -> &[LinearSet] {
        &self.sets
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn normalize(&self) -> SemilinearUnion {
        SemilinearUnion {
            dimension: self.dimension,
            sets: self.sets.iter().map(LinearSet::normalize).collect(),
        }
    }

    /// First set containing the point, with its witness coefficients. The
    /// empty union contains nothing, regardless of the point's dimension.
    pub fn member(
        &self,
        point: &ExponentVector,
    ) -> Result<Option<MembershipWitness>, SemilinearError> {
        for (set_index, set) in self.sets.iter().enumerate() {
            if let Some(coefficients) = set.member(point)? {
                return Ok(Some(MembershipWitness { set_index, coefficients }));
            }
        }
        Ok(None)
    }
}

/// Errors from [`SemilinearUnion::parse`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnionParseError {
    #[error("line {line}: expected `alpha:` or `beta:`")]
    BadLine { line: usize },
    #[error("line {line}: `{token}` is not a nonnegative integer coordinate")]
    BadCoordinate { line: usize, token: String },
    #[error("line {line}: `beta:` before any `alpha:` (each block starts with its shift)")]
    MissingAlpha { line: usize },
    #[error("line {line}: second `alpha:` in one block (separate sets with a blank line)")]
    DuplicateAlpha { line: usize },
    #[error("line {line}: expected dimension {expected}, got {got}")]
    WrongDimension { line: usize, expected: usize, got: usize },
}

impl SemilinearUnion {
    /// Parses the union text format: one block per linear set, blocks
    /// separated by blank lines, `#` comments allowed anywhere.
    ///
    /// ```text
    /// alpha: 0 0 0 0 0 0 0 0 0
    /// beta: 1 0 0 0 0 0 0 1 0    # one basis vector per beta line
    ///
    /// alpha: 1 0 0 0 0 0 0 0 0
    /// ```
    ///
    /// The dimension comes from the first vector, or from `dimension_hint`
    /// (which is then enforced throughout, and gives the empty union a
    /// definite dimension when the text contains no blocks).
    pub fn parse(
        text: &str,
        dimension_hint: Option<usize>,
    ) -> Result<SemilinearUnion, UnionParseError> {
        let mut dimension = dimension_hint;
        let mut sets: Vec<LinearSet> = Vec::new();
        let mut open: Option<(ExponentVector, Vec<ExponentVector>)> = None;

        let parse_vector = |payload: &str, line: usize, dimension: &mut Option<usize>| {
            let coords = payload
                .split_whitespace()
                .map(|token| {
                    token
                        .parse::<u64>()
                        .map_err(|_| UnionParseError::BadCoordinate { line, token: token.into() })
                })
                .collect::<Result<Vec<u64>, _>>()?;
            match *dimension {
                Some(expected) if expected != coords.len() => {
                    Err(UnionParseError::WrongDimension { line, expected, got: coords.len() })
                }
                _ => {
                    *dimension = Some(coords.len());
                    Ok(ExponentVector::new(coords))
                }
            }
        };

        for (index, raw_line) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                if let Some((shift, basis)) = open.take() {
                    sets.push(LinearSet { shift, basis });
                }
                continue;
            }
            if let Some(payload) = content.strip_prefix("alpha:") {
                if open.is_some() {
                    return Err(UnionParseError::DuplicateAlpha { line });
                }
                let shift = parse_vector(payload, line, &mut dimension)?;
                open = Some((shift, Vec::new()));
            } else if let Some(payload) = content.strip_prefix("beta:") {
                let Some((_, basis)) = open.as_mut() else {
                    return Err(UnionParseError::MissingAlpha { line });
                };
                let vector = parse_vector(payload, line, &mut dimension)?;
                basis.push(vector);
            } else {
                return Err(UnionParseError::BadLine { line });
            }
        }
        if let Some((shift, basis)) = open.take() {
            sets.push(LinearSet { shift, basis });
        }

        Ok(SemilinearUnion { dimension: dimension.unwrap_or(0), sets })
    }

    /// Renders the text format; [`SemilinearUnion::parse`] reads the result
    /// back to an equal union.
    pub fn to_text(&self) -> String {
        let render = |vector: &ExponentVector| {
            vector.coords().iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
        };
        let blocks: Vec<String> = self
            .sets
            .iter()
            .map(|set| {
                let mut lines = vec![format!("alpha: {}", render(&set.shift))];
                for vector in &set.basis {
                    lines.push(format!("beta: {}", render(vector)));
                }
                lines.join("\n")
            })
            .collect();
        if blocks.is_empty() {
            String::new()
        } else {
            blocks.join("\n\n") + "\n"
        }
    }
}

impl fmt::Display for SemilinearUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
