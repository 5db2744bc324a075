//! Families of homothets: strictness validation, point depth, and an
//! exhaustive oracle for the largest intersecting strict subfamily.
//!
//! A family is a *strict Minkowski arrangement* when no member contains the
//! center of another member. Strictness is tested with the deflated
//! containment predicate and depth with the inflated one, so rounding noise
//! cannot make a configuration both a valid arrangement and a violation.

use std::collections::HashMap;

use thiserror::Error;

use crate::geometry::{GeometryError, Homothet, NormBody, Point, TolerancePolicy};

/// Exhaustive-search guard for [`Family::max_intersecting_strict_subfamily`].
pub const ORACLE_MEMBER_CAP: usize = 25;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("family has {len} members; exhaustive search is capped at {cap}")]
    TooManyMembers { len: usize, cap: usize },
    #[error("at least one candidate probe is required")]
    NoProbes,
}

/// A family of homothets of one norm body.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    body: NormBody,
    members: Vec<Homothet>,
}

/// Witness that `members[container]` contains the center of `members[center]`
/// under the deflated predicate, i.e. the family is not a strict Minkowski
/// arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub container: usize,
    pub center: usize,
}

/// Containment count of a probe point across the family.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthReport {
    pub probe: Point,
    pub depth: usize,
    pub containing: Vec<usize>,
}

/// Result of the exhaustive oracle: a largest subfamily that shares `probe`
/// and has no strictness violations. Ties are broken toward the
/// lexicographically smallest index list, then the earliest probe.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxSubfamily {
    pub size: usize,
    pub indices: Vec<usize>,
    pub probe: Point,
}

impl Family {
    pub fn new(body: NormBody, members: Vec<Homothet>) -> Result<Self, GeometryError> {
        let dim = body.dim();
        for m in &members {
            if m.center.dim() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, got: m.center.dim() });
            }
            if !m.center.is_finite() {
                return Err(GeometryError::NonFiniteCoordinate);
            }
            if !(m.ratio.is_finite() && m.ratio > 0.0) {
                return Err(GeometryError::InvalidRatio(m.ratio));
            }
        }
        Ok(Family { body, members })
    }

    pub fn body(&self) -> &NormBody {
        &self.body
    }

    pub fn members(&self) -> &[Homothet] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Homothet {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The subfamily at `indices`, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Family {
        Family {
            body: self.body.clone(),
            members: indices.iter().map(|&i| self.members[i].clone()).collect(),
        }
    }

    /// Every ordered pair `(i, j)` where member `i` contains the center of
    /// member `j` with margin. Empty iff the family is a strict Minkowski
    /// arrangement.
    pub fn strictness_violations(&self, tol: &TolerancePolicy) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, a) in self.members.iter().enumerate() {
            for (j, b) in self.members.iter().enumerate() {
                if i != j && a.contains_deflated(&self.body, &b.center, tol) {
                    out.push(Violation { container: i, center: j });
                }
            }
        }
        out
    }

    /// Number of members containing `probe`, with the member indices.
    pub fn depth(&self, probe: &Point, tol: &TolerancePolicy) -> DepthReport {
        let containing: Vec<usize> = self
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.contains(&self.body, probe, tol))
            .map(|(i, _)| i)
            .collect();
        DepthReport { probe: probe.clone(), depth: containing.len(), containing }
    }

    /// Exhaustive oracle: over the supplied probes and all subfamilies whose
    /// members contain a probe, find a maximum subfamily with no strictness
    /// violations.
    ///
    /// The search is exhaustive over subsets but only over the given probes;
    /// callers pass member centers plus whatever witness points matter.
    pub fn max_intersecting_strict_subfamily(
        &self,
        tol: &TolerancePolicy,
        probes: &[Point],
    ) -> Result<MaxSubfamily, OracleError> {
        let n = self.members.len();
        if n > ORACLE_MEMBER_CAP {
            return Err(OracleError::TooManyMembers { len: n, cap: ORACLE_MEMBER_CAP });
        }
        if probes.is_empty() {
            return Err(OracleError::NoProbes);
        }
        // Undirected conflict graph: an edge wherever either member contains
        // the other's center.
        let conflicts: Vec<u32> = (0..n)
            .map(|i| {
                let mut mask = 0u32;
                for j in 0..n {
                    if i != j
                        && (self.members[i].contains_deflated(&self.body, &self.members[j].center, tol)
                            || self.members[j].contains_deflated(&self.body, &self.members[i].center, tol))
                    {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        let mut solver = IndependentSetSolver::new(conflicts);

        let mut best: Option<MaxSubfamily> = None;
        for probe in probes {
            let mut mask = 0u32;
            for (i, m) in self.members.iter().enumerate() {
                if m.contains(&self.body, probe, tol) {
                    mask |= 1 << i;
                }
            }
            let size = solver.max_size(mask) as usize;
            let beats = match &best {
                None => true,
                Some(b) => size > b.size,
            };
            let ties = best.as_ref().is_some_and(|b| size == b.size);
            if beats {
                let indices = solver.lex_min_set(mask, size as u32);
                best = Some(MaxSubfamily { size, indices, probe: probe.clone() });
            } else if ties {
                let indices = solver.lex_min_set(mask, size as u32);
                if indices < best.as_ref().unwrap().indices {
                    best = Some(MaxSubfamily { size, indices, probe: probe.clone() });
                }
            }
        }
        Ok(best.expect("probes is nonempty"))
    }
}

/// Maximum independent set over a conflict graph on at most
/// [`ORACLE_MEMBER_CAP`] vertices, memoized on vertex bitmask.
struct IndependentSetSolver {
    conflicts: Vec<u32>,
    memo: HashMap<u32, u32>,
}

impl IndependentSetSolver {
    fn new(conflicts: Vec<u32>) -> Self {
        IndependentSetSolver { conflicts, memo: HashMap::new() }
    }

    fn max_size(&mut self, mask: u32) -> u32 {
        if mask == 0 {
            return 0;
        }
        if let Some(&s) = self.memo.get(&mask) {
            return s;
        }
        let v = mask.trailing_zeros();
        let rest = mask & !(1 << v);
        let taken = 1 + self.max_size(rest & !self.conflicts[v as usize]);
        let skipped = self.max_size(rest);
        let s = taken.max(skipped);
        self.memo.insert(mask, s);
        s
    }

    /// The lexicographically smallest independent set of size `target`
    /// within `mask`; `target` must be achievable.
    fn lex_min_set(&mut self, mask: u32, target: u32) -> Vec<usize> {
        let mut out = Vec::with_capacity(target as usize);
        let mut cur = mask;
        let mut need = target;
        'grow: while need > 0 {
            let mut m = cur;
            while m != 0 {
                let v = m.trailing_zeros();
                let above = cur & above_mask(v) & !self.conflicts[v as usize];
                if 1 + self.max_size(above) >= need {
                    out.push(v as usize);
                    cur = above;
                    need -= 1;
                    continue 'grow;
                }
                m &= m - 1;
            }
            unreachable!("target size must be achievable within mask");
        }
        out
    }
}

fn above_mask(v: u32) -> u32 {
    if v >= 31 {
        0
    } else {
        !((1u32 << (v + 1)) - 1)
    }
}
