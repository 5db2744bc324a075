//! Greedy selection of a covering subfamily that forms a strict Minkowski
//! arrangement.
//!
//! Members are taken in order of non-increasing homothety ratio (ties broken
//! by lowest index). A member is selected iff its center is not yet covered
//! by an earlier selection; each selection then covers every still-uncovered
//! center it contains. The selected subfamily covers every center and has no
//! strictness violations: a selected member never contains the center of a
//! later selection (that center was uncovered when it was picked), and the
//! later, smaller member cannot reach back across the same distance.

use crate::arrangement::Family;
use crate::geometry::TolerancePolicy;

/// Output of [`greedy_cover`].
///
/// `selected` lists member indices in selection order, so their ratios are
/// non-increasing. `covered_by[i]` is the selected member that first covered
/// center `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    pub selected: Vec<usize>,
    pub covered_by: Vec<usize>,
}

/// Select a subfamily covering all member centers while forming a strict
/// Minkowski arrangement. Always succeeds; in the worst case every member is
/// selected.
pub fn greedy_cover(family: &Family, tol: &TolerancePolicy) -> CoverResult {
    let n = family.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        family.member(b).ratio.partial_cmp(&family.member(a).ratio).expect("ratios are finite").then(a.cmp(&b))
    });

    let mut covered_by: Vec<Option<usize>> = vec![None; n];
    let mut selected = Vec::new();
    for &i in &order {
        if covered_by[i].is_some() {
            continue;
        }
        selected.push(i);
        let member = family.member(i);
        for (j, slot) in covered_by.iter_mut().enumerate() {
            if slot.is_none() && member.contains(family.body(), &family.member(j).center, tol) {
                *slot = Some(i);
            }
        }
    }
    CoverResult {
        selected,
        covered_by: covered_by.into_iter().map(|s| s.expect("every center is covered")).collect(),
    }
}
