//! Sorting and selection over rank-1 assignment objectives.
//!
//! Maximizing `z'Xw` over the assignment polytope with strictly decreasing
//! `w` only needs the descending order of `z`. When `z` has ties, the
//! optimal face contains every assignment that fills each tie group's slot
//! block with members of that group; the routines here pick the vertex of
//! that face extremizing a second linear functional `a'Xw`.

use crate::model::{ExtremeAssignment, Instance};
use std::cmp::Ordering;

/// Descending view of a score vector with explicit tie groups.
///
/// `order` holds positions into the scored slice. `groups` are half-open
/// ranges into `order`; consecutive entries inside a group differ by at
/// most the tie tolerance and adjacent groups differ by more than it.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedScores {
    pub order: Vec<usize>,
    pub groups: Vec<(usize, usize)>,
    pub tau: f64,
}

/// `T_n`: the top-`n` positions including every member of the tie group
/// straddling rank `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopSet {
    pub certain: Vec<usize>,
    pub tied: Vec<usize>,
    pub slots_in_tied: usize,
    /// Index into `SortedScores::groups` of the group containing rank `n`.
    pub boundary_group: usize,
}

impl TopSet {
    /// `certain ∪ tied`, in sorted order.
    pub fn members(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.certain.iter().chain(&self.tied).copied().collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

/// Sorts `z` descending (ties by ascending position) and groups values whose
/// consecutive gaps are at most `tau`.
pub fn sort_scores(z: &[f64], tau: f64) -> SortedScores {
    let mut order: Vec<usize> = (0..z.len()).collect();
    order.sort_unstable_by(|&i, &j| z[j].total_cmp(&z[i]).then(i.cmp(&j)));
    let groups = group_sorted(z, &order, tau);
    SortedScores { order, groups, tau }
}

fn group_sorted(z: &[f64], order: &[usize], tau: f64) -> Vec<(usize, usize)> {
    let mut groups = Vec::new();
    let mut start = 0;
    for k in 1..order.len() {
        if z[order[k - 1]] - z[order[k]] > tau {
            groups.push((start, k));
            start = k;
        }
    }
    if !order.is_empty() {
        groups.push((start, order.len()));
    }
    groups
}

/// Splits the sorted view at rank `n`.
///
/// Panics if `n` exceeds the number of scored positions or is zero.
pub fn top_n_with_ties(sorted: &SortedScores, n: usize) -> TopSet {
    assert!(n >= 1 && n <= sorted.order.len(), "n out of range");
    // groups are in rank order; find the one containing rank n (0-based n - 1)
    let boundary_group = sorted
        .groups
        .partition_point(|&(_, end)| end < n);
    let (start, end) = sorted.groups[boundary_group];
    if end == n {
        TopSet {
            certain: sorted.order[..n].to_vec(),
            tied: Vec::new(),
            slots_in_tied: 0,
            boundary_group,
        }
    } else {
        TopSet {
            certain: sorted.order[..start].to_vec(),
            tied: sorted.order[start..end].to_vec(),
            slots_in_tied: n - start,
            boundary_group,
        }
    }
}

/// Vertex of the optimal face of `max z'Xw` that minimizes or maximizes
/// `a'Xw`, and the extremal value.
///
/// Every tie group fills a contiguous block of slots. Within a block the
/// rearrangement inequality fixes the order: for `Max`, largest `a` first
/// (against descending `w`); for `Min`, smallest `a` first. The group at the
/// rank-`n` boundary additionally contributes only its `slots_in_tied`
/// members with the largest (resp. smallest) `a`. Positions in the returned
/// assignment index the scored slice.
pub fn extremal_diversity(
    sorted: &SortedScores,
    topset: &TopSet,
    a: &[f64],
    w: &[f64],
    direction: Direction,
) -> (f64, ExtremeAssignment) {
    let n = w.len();
    let mut slots = Vec::with_capacity(n);
    let mut scratch = Vec::new();
    for &(start, end) in &sorted.groups[..=topset.boundary_group] {
        let block = &sorted.order[start..end];
        let take = (end.min(n)) - start;
        if block.len() == 1 {
            slots.push(block[0]);
            continue;
        }
        scratch.clear();
        scratch.extend_from_slice(block);
        let by_a = |&i: &usize, &j: &usize| -> Ordering {
            let ord = match direction {
                Direction::Max => a[j].total_cmp(&a[i]),
                Direction::Min => a[i].total_cmp(&a[j]),
            };
            ord.then(i.cmp(&j))
        };
        if take < scratch.len() {
            scratch.select_nth_unstable_by(take - 1, by_a);
            scratch.truncate(take);
        }
        scratch.sort_unstable_by(by_a);
        slots.extend_from_slice(&scratch);
    }
    debug_assert_eq!(slots.len(), n);
    let x = ExtremeAssignment::new(slots);
    (x.weighted_sum(a, w), x)
}

/// Closed-form optimum of the problem without the diversity constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct Unconstrained {
    pub value: f64,
    pub min_div: f64,
    pub max_div: f64,
    pub x_min: ExtremeAssignment,
    pub x_max: ExtremeAssignment,
}

/// Top-`n` by `c`, with the tie-aware range of `a'Xw` over all optimal
/// assignments.
pub fn solve_unconstrained(instance: &Instance) -> Unconstrained {
    let sorted = sort_scores(&instance.c, 0.0);
    let top = top_n_with_ties(&sorted, instance.n);
    let (min_div, x_min) = extremal_diversity(&sorted, &top, &instance.a, &instance.w, Direction::Min);
    let (max_div, x_max) = extremal_diversity(&sorted, &top, &instance.a, &instance.w, Direction::Max);
    let value = instance.objective_of(&x_max);
    Unconstrained {
        value,
        min_div,
        max_div,
        x_min,
        x_max,
    }
}
