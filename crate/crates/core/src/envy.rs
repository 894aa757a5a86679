//! Assignment vectors for the initially-unassigned students: which assigned
//! students would acquire justified envy under each placement, the
//! brute-force minimizer over all placements, and the constructive
//! realization that turns a placement into a stable and perfect matching
//! with a bounded capacity increase.

use crate::da::{da_matching, StableContext};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matching::{CapacityVector, Matching};

/// One acceptable school per initially-unassigned student, aligned with
/// `StableContext::unassigned`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentVector {
    choices: Vec<usize>,
}

impl AssignmentVector {
    /// Build from one school per unassigned student (context order).
    pub fn new(ctx: &StableContext, inst: &Instance, choices: Vec<usize>) -> Result<Self> {
        if choices.len() != ctx.unassigned.len() {
            return Err(Error::VectorDomainMismatch);
        }
        for (&u, &w) in ctx.unassigned.iter().zip(&choices) {
            if !inst.acceptable(u, w) {
                return Err(Error::VectorDomainMismatch);
            }
        }
        Ok(AssignmentVector { choices })
    }

    pub fn choices(&self) -> &[usize] {
        &self.choices
    }

    /// The matching `mu-hat + v`: the stable matching extended by the
    /// vector's placements.
    pub fn apply(&self, ctx: &StableContext) -> Matching {
        let mut mu = ctx.matching.clone();
        for (&u, &w) in ctx.unassigned.iter().zip(&self.choices) {
            mu.set(u, Some(w));
        }
        mu
    }
}

/// The assigned students who would justifiedly envy a newly placed student
/// under a given assignment vector.
#[derive(Debug, Clone)]
pub struct EnvyReport {
    pub vector: AssignmentVector,
    /// Initially-assigned students with justified envy toward some newly
    /// placed student, in document order.
    pub enviers: Vec<usize>,
    /// `enviers.len()`; it is the number of envious students that matters,
    /// not the number of envy pairs.
    pub count: usize,
}

/// Compute the envy report of `v`.
pub fn envy_report(ctx: &StableContext, inst: &Instance, v: &AssignmentVector) -> EnvyReport {
    let enviers = enviers_of(ctx, inst, v.choices());
    EnvyReport {
        vector: v.clone(),
        count: enviers.len(),
        enviers,
    }
}

fn enviers_of(ctx: &StableContext, inst: &Instance, choices: &[usize]) -> Vec<usize> {
    let mut enviers = Vec::new();
    for &u in &ctx.assigned {
        let own = ctx.matching.school_of(u).expect("student is assigned");
        let own_rank = inst.student_rank(u, own);
        let envies = ctx.unassigned.iter().zip(choices).any(|(&placed, &w)| {
            inst.acceptable(u, w)
                && inst.student_rank(u, w) < own_rank
                && inst.school_rank(w, u) < inst.school_rank(w, placed)
        });
        if envies {
            enviers.push(u);
        }
    }
    enviers
}

/// Exhaustive scan of all assignment vectors for one minimizing the number
/// of envious assigned students.
///
/// Per-student options are ordered by school document index, and the first
/// minimizer in the induced lexicographic order is returned. The scan size
/// `max_unassigned_pref_len ^ |unassigned|` must stay below `guard`.
pub fn min_envy_bruteforce(
    ctx: &StableContext,
    inst: &Instance,
    guard: u64,
) -> Result<EnvyReport> {
    let s = ctx.unassigned.len();
    if s == 0 {
        let v = AssignmentVector { choices: vec![] };
        return Ok(envy_report(ctx, inst, &v));
    }
    let mut space: u128 = 1;
    for &u in &ctx.unassigned {
        space = space.saturating_mul(inst.pref(u).len() as u128);
        if space > u128::from(guard) {
            return Err(Error::GuardExceeded {
                required: space,
                guard,
            });
        }
    }

    let options: Vec<Vec<usize>> = ctx
        .unassigned
        .iter()
        .map(|&u| {
            let mut opts = inst.pref(u).to_vec();
            opts.sort_unstable();
            opts
        })
        .collect();

    let mut cursor = vec![0usize; s];
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        let choices: Vec<usize> = cursor
            .iter()
            .enumerate()
            .map(|(i, &c)| options[i][c])
            .collect();
        let count = enviers_of(ctx, inst, &choices).len();
        if best.as_ref().map_or(true, |(b, _)| count < *b) {
            best = Some((count, choices));
        }
        // Advance the mixed-radix cursor.
        let mut i = s;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            cursor[i] += 1;
            if cursor[i] < options[i].len() {
                break;
            }
            cursor[i] = 0;
        }
        if i == 0 && cursor[0] == 0 {
            break;
        }
    }

    let (_, choices) = best.expect("at least one vector exists");
    let v = AssignmentVector { choices };
    Ok(envy_report(ctx, inst, &v))
}

/// Rewrite `v` so that no initially-unassigned student justifiedly envies
/// another one in `mu-hat + v`.
///
/// Enviers are processed in document order; each moves to its best school
/// holding a student it justifiedly envies. Every move strictly decreases
/// the number of envious unassigned students, so this terminates, and the
/// envy count of the vector never increases.
pub fn normalize(ctx: &StableContext, inst: &Instance, v: &AssignmentVector) -> AssignmentVector {
    let mut choices = v.choices().to_vec();
    let mut moves_left = choices.len() + 1;
    loop {
        assert!(moves_left > 0, "normalization must terminate within |unassigned| moves");
        moves_left -= 1;
        let mut moved = false;
        'outer: for i in 0..choices.len() {
            let u = ctx.unassigned[i];
            let own_rank = inst.student_rank(u, choices[i]);
            // Best school where u justifiedly envies a newly placed student.
            let mut target: Option<u32> = None;
            for (j, &w) in choices.iter().enumerate() {
                if i == j || !inst.acceptable(u, w) {
                    continue;
                }
                let other = ctx.unassigned[j];
                let rank = inst.student_rank(u, w);
                if rank < own_rank && inst.school_rank(w, u) < inst.school_rank(w, other) {
                    target = Some(target.map_or(rank, |t: u32| t.min(rank)));
                }
            }
            if let Some(rank) = target {
                choices[i] = inst.pref(u)[rank as usize];
                moved = true;
                break 'outer;
            }
        }
        if !moved {
            return AssignmentVector { choices };
        }
    }
}

/// Turn an assignment vector into a stable and perfect matching plus the
/// capacity increase that supports it.
///
/// Follows the envy-elimination construction: normalize `v`, place the
/// unassigned students, move every envious assigned student to its best
/// school holding a lower-priority student (all moves evaluated against the
/// post-placement snapshot), and lift each school's capacity to its
/// occupancy. The intermediate matching is free of justified envy but can
/// leave attractive vacancies behind, so the final matching is recomputed by
/// deferred acceptance under the lifted capacities, which restores stability
/// without adding seats; the increase is then trimmed to what the final
/// matching uses. The result satisfies `sum(r) <= count(v) + |unassigned|`.
///
/// The context must come from the base capacities (`r = 0`).
pub fn realize(
    ctx: &StableContext,
    inst: &Instance,
    v: &AssignmentVector,
) -> (Matching, CapacityVector) {
    if ctx.unassigned.is_empty() {
        return (ctx.matching.clone(), CapacityVector::zero(inst.m()));
    }
    let normalized = normalize(ctx, inst, v);
    let mut placed = normalized.apply(ctx);

    // Snapshot occupancies right after placement; every reassignment below
    // is evaluated against this state.
    let snapshot = placed.clone();
    let report = envy_report(ctx, inst, &normalized);
    let mut moves: Vec<(usize, usize)> = Vec::new();
    for &u in &report.enviers {
        let own = ctx.matching.school_of(u).expect("envier is assigned");
        let own_rank = inst.student_rank(u, own);
        let mut best: Option<u32> = None;
        for w in 0..inst.m() {
            let rank = inst.student_rank(u, w);
            if rank >= own_rank {
                continue;
            }
            let has_worse = snapshot
                .assigned_to(w)
                .iter()
                .any(|&res| inst.school_rank(w, res) > inst.school_rank(w, u));
            if has_worse {
                best = Some(best.map_or(rank, |b: u32| b.min(rank)));
            }
        }
        let rank = best.expect("an envious student has a better school with a worse student");
        moves.push((u, inst.pref(u)[rank as usize]));
    }
    for (u, w) in moves {
        placed.set(u, Some(w));
    }

    // Lift capacities to occupancy, then let deferred acceptance repair the
    // wastefulness the reassignments may have left behind.
    let loads = placed.loads(inst.m());
    let lifted = CapacityVector::from_raises(
        loads
            .iter()
            .zip(inst.capacities())
            .map(|(&l, &q)| l.saturating_sub(q))
            .collect(),
    );
    let repaired = da_matching(inst, &lifted);
    assert!(
        repaired.is_perfect(),
        "deferred acceptance under lifted capacities must match everyone"
    );
    let final_loads = repaired.loads(inst.m());
    let trimmed = CapacityVector::from_raises(
        final_loads
            .iter()
            .zip(inst.capacities())
            .map(|(&l, &q)| l.saturating_sub(q))
            .collect(),
    );
    (repaired, trimmed)
}
