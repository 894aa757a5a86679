//! Student-proposing deferred acceptance, blocking-pair analysis, and a
//! brute-force stable-matching enumerator used as a test oracle.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matching::{is_feasible, CapacityVector, Matching};

/// The student-optimal stable matching together with the derived sets the
/// capacity solvers work with.
#[derive(Debug, Clone)]
pub struct StableContext {
    pub matching: Matching,
    /// Students matched by the stable matching, in document order.
    pub assigned: Vec<usize>,
    /// Students left unmatched, in document order.
    pub unassigned: Vec<usize>,
    /// Longest preference list among the unassigned students (0 if none).
    pub max_unassigned_pref_len: usize,
}

impl StableContext {
    pub fn unassigned_count(&self) -> usize {
        self.unassigned.len()
    }
}

/// Student-proposing deferred acceptance under capacities `q + r`.
///
/// Students propose in document order each round; a school over capacity
/// rejects its lowest-priority tentative students. The outcome is the
/// student-optimal stable matching and does not depend on proposal order.
pub fn student_optimal_stable(inst: &Instance, r: &CapacityVector) -> StableContext {
    let matching = da_matching(inst, r);
    let mut assigned = Vec::new();
    let mut unassigned = Vec::new();
    for u in 0..inst.n() {
        if matching.school_of(u).is_some() {
            assigned.push(u);
        } else {
            unassigned.push(u);
        }
    }
    let max_unassigned_pref_len = unassigned.iter().map(|&u| inst.pref(u).len()).max().unwrap_or(0);
    StableContext {
        matching,
        assigned,
        unassigned,
        max_unassigned_pref_len,
    }
}

/// The matching produced by deferred acceptance, without the derived sets.
pub fn da_matching(inst: &Instance, r: &CapacityVector) -> Matching {
    let order: Vec<usize> = (0..inst.n()).collect();
    da_with_proposal_order(inst, r, &order)
}

/// Deferred acceptance processing free students in the cyclic order given by
/// `order`. Exposed so tests can assert the outcome is order-independent.
pub fn da_with_proposal_order(inst: &Instance, r: &CapacityVector, order: &[usize]) -> Matching {
    assert_eq!(r.dim(), inst.m());
    let caps = r.apply(inst);
    let n = inst.n();
    let mut next = vec![0usize; n];
    let mut matched: Vec<Option<usize>> = vec![None; n];
    let mut held: Vec<Vec<usize>> = vec![Vec::new(); inst.m()];

    loop {
        let mut proposed = false;
        for &u in order {
            if matched[u].is_some() || next[u] >= inst.pref(u).len() {
                continue;
            }
            proposed = true;
            let w = inst.pref(u)[next[u]];
            next[u] += 1;
            held[w].push(u);
            matched[u] = Some(w);
            if held[w].len() > caps[w] as usize {
                // Reject the lowest-priority tentative student.
                let (worst_pos, _) = held[w]
                    .iter()
                    .enumerate()
                    .max_by_key(|(_, &cand)| inst.school_rank(w, cand))
                    .expect("held list is nonempty");
                let rejected = held[w].swap_remove(worst_pos);
                matched[rejected] = None;
            }
        }
        if !proposed {
            break;
        }
    }
    Matching::from_slots(matched)
}

/// All blocking pairs of `mu` under capacities `q + r`.
///
/// A pair `(u, w)` blocks when `u` is acceptable to `w`, `u` is unmatched or
/// prefers `w` to its school, and `w` is under-filled or holds a student with
/// lower priority than `u`. Errors if `mu` is infeasible.
pub fn blocking_pairs(
    inst: &Instance,
    mu: &Matching,
    r: &CapacityVector,
) -> Result<Vec<(usize, usize)>> {
    if !is_feasible(inst, mu, r) {
        let caps = r.apply(inst);
        let loads = mu.loads(inst.m());
        let w = (0..inst.m())
            .find(|&w| loads[w] > caps[w])
            .unwrap_or_default();
        return Err(Error::OverCapacity(inst.school_name(w).to_string()));
    }
    let caps = r.apply(inst);
    let loads = mu.loads(inst.m());
    // Worst (largest) priority rank of any student currently at each school.
    let mut worst_rank = vec![0u32; inst.m()];
    for u in 0..inst.n() {
        if let Some(w) = mu.school_of(u) {
            worst_rank[w] = worst_rank[w].max(inst.school_rank(w, u));
        }
    }

    let mut pairs = Vec::new();
    for u in 0..inst.n() {
        let bound = match mu.school_of(u) {
            Some(w) => inst.student_rank(u, w) as usize,
            None => inst.pref(u).len(),
        };
        for &w in &inst.pref(u)[..bound] {
            let under_filled = loads[w] < caps[w];
            let outranks = loads[w] > 0 && worst_rank[w] > inst.school_rank(w, u);
            if under_filled || outranks {
                pairs.push((u, w));
            }
        }
    }
    Ok(pairs)
}

/// True iff `mu` is feasible and has no blocking pair under `q + r`.
pub fn is_stable(inst: &Instance, mu: &Matching, r: &CapacityVector) -> bool {
    matches!(blocking_pairs(inst, mu, r), Ok(pairs) if pairs.is_empty())
}

/// Exhaustively enumerate all stable matchings under `q + r`.
///
/// The search walks every partial map from students to acceptable schools
/// (plus "unmatched"), pruning on capacity, and keeps the maps without
/// blocking pairs. The candidate space (product of per-student option
/// counts) must stay below `guard`; at most `limit` matchings are returned,
/// in candidate order.
pub fn enumerate_stable_matchings(
    inst: &Instance,
    r: &CapacityVector,
    limit: usize,
    guard: u64,
) -> Result<Vec<Matching>> {
    let mut space: u128 = 1;
    for u in 0..inst.n() {
        space = space.saturating_mul(inst.pref(u).len() as u128 + 1);
        if space > u128::from(guard) {
            return Err(Error::GuardExceeded {
                required: space,
                guard,
            });
        }
    }

    let caps = r.apply(inst);
    let mut found = Vec::new();
    let mut slots: Vec<Option<usize>> = vec![None; inst.n()];
    let mut loads = vec![0u32; inst.m()];

    fn rec(
        inst: &Instance,
        r: &CapacityVector,
        caps: &[u32],
        u: usize,
        slots: &mut Vec<Option<usize>>,
        loads: &mut Vec<u32>,
        found: &mut Vec<Matching>,
        limit: usize,
    ) {
        if found.len() >= limit {
            return;
        }
        if u == inst.n() {
            let mu = Matching::from_slots(slots.clone());
            if let Ok(pairs) = blocking_pairs(inst, &mu, r) {
                if pairs.is_empty() {
                    found.push(mu);
                }
            }
            return;
        }
        for &w in inst.pref(u) {
            if loads[w] < caps[w] {
                slots[u] = Some(w);
                loads[w] += 1;
                rec(inst, r, caps, u + 1, slots, loads, found, limit);
                loads[w] -= 1;
                slots[u] = None;
            }
        }
        rec(inst, r, caps, u + 1, slots, loads, found, limit);
    }

    rec(
        inst, r, &caps, 0, &mut slots, &mut loads, &mut found, limit,
    );
    Ok(found)
}
