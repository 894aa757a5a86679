//! The polynomial minimum-maximum-increase solver for stable-and-perfect
//! matchings, plus a sum-reducing trim post-pass.

use crate::da::{da_matching, is_stable};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matching::{CapacityVector, Matching};
use crate::minsum::useful_bounds;
use crate::result::{certify, SolveResult, SolveStatus};

/// Raise every school's capacity uniformly until the student-optimal stable
/// matching is perfect.
///
/// Uniform increase weakly improves every student, so the smallest uniform
/// level is the optimal maximum increase. Each per-school increment is
/// capped at the school's useful bound; at the cap every school can hold its
/// whole priority list, which makes the matching perfect, so the loop always
/// terminates. The objective is always reported; the status compares it to
/// the budget.
pub fn solve_minmax_sp(inst: &Instance, budget: u64) -> SolveResult {
    let bounds = useful_bounds(inst);
    let cap = bounds.iter().copied().max().unwrap_or(0);
    let mut level = 0u32;
    loop {
        let raises: Vec<u32> = bounds.iter().map(|&b| b.min(level)).collect();
        let r = CapacityVector::from_raises(raises);
        let mu = da_matching(inst, &r);
        if mu.is_perfect() {
            let status = if u64::from(level) <= budget {
                SolveStatus::FeasibleWithinBudget
            } else {
                SolveStatus::InfeasibleWithinBudget
            };
            let certificates = certify(inst, &mu, &r);
            return SolveResult {
                status,
                objective: Some(u64::from(level)),
                increase: Some(r),
                witness: Some(mu),
                certificates: Some(certificates),
                path: "uniform",
            };
        }
        assert!(level < cap, "full expansion must admit a perfect matching");
        level += 1;
    }
}

/// Tighten an increase vector to what a stable matching actually uses:
/// `r'[w] = max(0, occupancy(w) - q[w])`.
///
/// Tightening an under-filled school cannot create a blocking pair, so the
/// matching stays stable and feasible; this is re-verified and a defect
/// would surface as an error.
pub fn trim(inst: &Instance, mu: &Matching, r: &CapacityVector) -> Result<CapacityVector> {
    if !is_stable(inst, mu, r) {
        return Err(Error::UnstableInput);
    }
    let loads = mu.loads(inst.m());
    let trimmed = CapacityVector::from_raises(
        loads
            .iter()
            .zip(inst.capacities())
            .map(|(&l, &q)| l.saturating_sub(q))
            .collect(),
    );
    debug_assert!(trimmed.le(r));
    if !is_stable(inst, mu, &trimmed) {
        return Err(Error::UnstableInput);
    }
    Ok(trimmed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::da::student_optimal_stable;
    use crate::gen::gen_example;

    #[test]
    fn problems_needs_a_uniform_increase_of_two() {
        // Under a uniform +1 both front schools fill with better students
        // and u5 stays unmatched; +2 absorbs everyone.
        let inst = gen_example("problems", &[]).unwrap();
        let res = solve_minmax_sp(&inst, 2);
        assert_eq!(res.objective, Some(2));
        assert!(res.feasible());
        let c = res.certificates.unwrap();
        assert!(c.stable && c.perfect);

        let one = CapacityVector::from_raises(vec![1, 1, 1]);
        assert!(!crate::da::da_matching(&inst, &one).is_perfect());
    }

    #[test]
    fn intro_needs_a_uniform_increase_of_two() {
        let inst = gen_example("intro", &[]).unwrap();
        let res = solve_minmax_sp(&inst, 2);
        assert_eq!(res.objective, Some(2));
        let one = CapacityVector::from_raises(vec![1, 1, 1]);
        assert!(!crate::da::da_matching(&inst, &one).is_perfect());
    }

    #[test]
    fn perfect_instance_needs_level_zero() {
        let inst = gen_example("stable-eff", &[]).unwrap();
        let res = solve_minmax_sp(&inst, 0);
        assert_eq!(res.objective, Some(0));
        assert!(res.feasible());
    }

    #[test]
    fn budget_smaller_than_the_level_reports_infeasible() {
        let inst = gen_example("problems", &[]).unwrap();
        let res = solve_minmax_sp(&inst, 1);
        assert_eq!(res.objective, Some(2));
        assert!(!res.feasible());
    }

    #[test]
    fn trim_drops_unused_seats_and_keeps_stability() {
        let inst = gen_example("problems", &[]).unwrap();
        let res = solve_minmax_sp(&inst, 5);
        let mu = res.witness.unwrap();
        let r = res.increase.unwrap();
        let trimmed = trim(&inst, &mu, &r).unwrap();
        assert_eq!(trimmed.raises(), &[2, 1, 0]);
        assert!(trimmed.le(&r));
        assert!(trimmed.max() <= r.max());
        assert!(is_stable(&inst, &mu, &trimmed));
    }

    #[test]
    fn trim_is_a_fixpoint_on_tight_vectors() {
        let inst = gen_example("intro", &[]).unwrap();
        let r = CapacityVector::from_raises(vec![2, 0, 0]);
        let ctx = student_optimal_stable(&inst, &r);
        let trimmed = trim(&inst, &ctx.matching, &r).unwrap();
        assert_eq!(trimmed, r);
        let again = trim(&inst, &ctx.matching, &trimmed).unwrap();
        assert_eq!(again, trimmed);
    }

    #[test]
    fn trim_zeroes_schools_nobody_uses() {
        let inst = gen_example("intro", &[]).unwrap();
        // Give w3 slack no student can use on top of a stable outcome.
        let r = CapacityVector::from_raises(vec![2, 0, 5]);
        let ctx = student_optimal_stable(&inst, &r);
        let trimmed = trim(&inst, &ctx.matching, &r).unwrap();
        assert_eq!(trimmed.raise(2), 0);
    }

    #[test]
    fn trim_rejects_unstable_matchings() {
        let inst = gen_example("intro", &[]).unwrap();
        let mu2 = Matching::from_pairs(&inst, &[("u1", "w1"), ("u2", "w2"), ("u3", "w3")]);
        let err = trim(&inst, &mu2, &CapacityVector::zero(3)).unwrap_err();
        assert!(matches!(err, Error::UnstableInput));
    }
}
