//! Justified-envy detection, dominance testing, and Pareto-efficiency
//! checking with an independent brute-force oracle.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matching::{is_feasible, CapacityVector, Matching};

/// One justified-envy triple: `envier` prefers the school of `envied` and
/// outranks `envied` there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvyEdge {
    pub envier: usize,
    pub envied: usize,
    pub school: usize,
}

/// All justified-envy triples of `mu`.
///
/// An unmatched envier counts too: every acceptable school is preferred to
/// being unmatched.
pub fn justified_envy_pairs(inst: &Instance, mu: &Matching) -> Vec<EnvyEdge> {
    let mut edges = Vec::new();
    for envier in 0..inst.n() {
        let own_rank = mu
            .school_of(envier)
            .map(|w| inst.student_rank(envier, w))
            .unwrap_or(u32::MAX);
        for envied in 0..inst.n() {
            if envied == envier {
                continue;
            }
            let Some(school) = mu.school_of(envied) else {
                continue;
            };
            if !inst.acceptable(envier, school) {
                continue;
            }
            if inst.student_rank(envier, school) < own_rank
                && inst.school_rank(school, envier) < inst.school_rank(school, envied)
            {
                edges.push(EnvyEdge {
                    envier,
                    envied,
                    school,
                });
            }
        }
    }
    edges
}

/// True iff every student weakly prefers `mu` to `sigma` and at least one
/// strictly prefers `mu`.
pub fn dominates(inst: &Instance, mu: &Matching, sigma: &Matching) -> bool {
    let mut strict = false;
    for u in 0..inst.n() {
        let a = mu
            .school_of(u)
            .map(|w| inst.student_rank(u, w))
            .unwrap_or(u32::MAX);
        let b = sigma
            .school_of(u)
            .map(|w| inst.student_rank(u, w))
            .unwrap_or(u32::MAX);
        if a > b {
            return false;
        }
        if a < b {
            strict = true;
        }
    }
    strict
}

/// Result of an efficiency check: either efficient, or dominated with a
/// concrete dominating matching as witness.
#[derive(Debug, Clone)]
pub enum Efficiency {
    Efficient,
    Dominated(Matching),
}

impl Efficiency {
    pub fn is_efficient(&self) -> bool {
        matches!(self, Efficiency::Efficient)
    }

    pub fn witness(&self) -> Option<&Matching> {
        match self {
            Efficiency::Efficient => None,
            Efficiency::Dominated(mu) => Some(mu),
        }
    }
}

/// Pareto-efficiency check via the improvement graph.
///
/// Nodes are schools; for each student `u` and each school `w` strictly
/// preferred to `mu(u)` there is an arc from `mu(u)` (or a virtual source if
/// `u` is unmatched) to `w`. The matching is inefficient iff some arc ends at
/// an under-filled school (shift the student into the slack) or the school
/// subgraph has a directed cycle (rotate the students along it). Errors if
/// `mu` is infeasible under `q + r`.
pub fn is_efficient(inst: &Instance, mu: &Matching, r: &CapacityVector) -> Result<Efficiency> {
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

    // Arcs into slack end the search immediately.
    for u in 0..inst.n() {
        let bound = match mu.school_of(u) {
            Some(w) => inst.student_rank(u, w) as usize,
            None => inst.pref(u).len(),
        };
        for &w in &inst.pref(u)[..bound] {
            if loads[w] < caps[w] {
                let mut better = mu.clone();
                better.set(u, Some(w));
                debug_assert!(dominates(inst, &better, mu));
                return Ok(Efficiency::Dominated(better));
            }
        }
    }

    // School-to-school arcs from matched students only.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); inst.m()];
    for u in 0..inst.n() {
        if let Some(from) = mu.school_of(u) {
            let bound = inst.student_rank(u, from) as usize;
            for &to in &inst.pref(u)[..bound] {
                adj[from].push((to, u));
            }
        }
    }

    // Iterative DFS; the first directed cycle found (document order) is the
    // witness rotation.
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; inst.m()];
    for start in 0..inst.m() {
        if color[start] != WHITE {
            continue;
        }
        // Stack entries: (node, index of next arc to try, arc used to enter).
        let mut stack: Vec<(usize, usize, Option<usize>)> = vec![(start, 0, None)];
        color[start] = GRAY;
        while let Some(top) = stack.len().checked_sub(1) {
            let (node, next, _) = stack[top];
            if next >= adj[node].len() {
                color[node] = BLACK;
                stack.pop();
                continue;
            }
            stack[top].1 += 1;
            let (to, student) = adj[node][next];
            match color[to] {
                WHITE => {
                    color[to] = GRAY;
                    stack.push((to, 0, Some(student)));
                }
                GRAY => {
                    // Cycle: rotate every student on the stack segment from
                    // `to` back to `node`, plus the closing arc.
                    let mut better = mu.clone();
                    better.set(student, Some(to));
                    let from_pos = stack
                        .iter()
                        .position(|&(n, _, _)| n == to)
                        .expect("gray node is on the stack");
                    for window in stack[from_pos..].windows(2) {
                        let (target, _, entering) = window[1];
                        let mover = entering.expect("non-root stack entry has an arc");
                        better.set(mover, Some(target));
                    }
                    debug_assert!(is_feasible(inst, &better, r));
                    debug_assert!(dominates(inst, &better, mu));
                    return Ok(Efficiency::Dominated(better));
                }
                _ => {}
            }
        }
    }
    Ok(Efficiency::Efficient)
}

/// Brute-force efficiency oracle.
///
/// Exhaustively enumerates feasible matchings in which every student is at
/// least as well off as in `mu` (any dominating matching lies in that space)
/// and reports whether one of them dominates `mu`. The candidate space must
/// stay below `guard`.
pub fn efficiency_oracle(
    inst: &Instance,
    mu: &Matching,
    r: &CapacityVector,
    guard: u64,
) -> Result<bool> {
    if !is_feasible(inst, mu, r) {
        return Err(Error::OverCapacity(String::new()));
    }
    // Options per student: schools weakly preferred to the current one, plus
    // staying unmatched when currently unmatched.
    let mut options: Vec<Vec<Option<usize>>> = Vec::with_capacity(inst.n());
    let mut space: u128 = 1;
    for u in 0..inst.n() {
        let mut opts: Vec<Option<usize>> = Vec::new();
        match mu.school_of(u) {
            Some(w) => {
                let bound = inst.student_rank(u, w) as usize;
                for &cand in &inst.pref(u)[..=bound] {
                    opts.push(Some(cand));
                }
            }
            None => {
                for &cand in inst.pref(u) {
                    opts.push(Some(cand));
                }
                opts.push(None);
            }
        }
        space = space.saturating_mul(opts.len() as u128);
        if space > u128::from(guard) {
            return Err(Error::GuardExceeded {
                required: space,
                guard,
            });
        }
        options.push(opts);
    }

    let caps = r.apply(inst);

    fn rec(
        inst: &Instance,
        mu: &Matching,
        caps: &[u32],
        options: &[Vec<Option<usize>>],
        u: usize,
        loads: &mut Vec<u32>,
        slots: &mut Vec<Option<usize>>,
        any_strict: bool,
    ) -> bool {
        if u == inst.n() {
            return any_strict;
        }
        for &opt in &options[u] {
            let strict = opt != mu.school_of(u);
            if let Some(w) = opt {
                if loads[w] >= caps[w] {
                    continue;
                }
                loads[w] += 1;
                slots[u] = opt;
                if rec(inst, mu, caps, options, u + 1, loads, slots, any_strict || strict) {
                    return true;
                }
                loads[w] -= 1;
                slots[u] = None;
            } else if rec(inst, mu, caps, options, u + 1, loads, slots, any_strict || strict) {
                return true;
            }
        }
        false
    }

    let mut loads = vec![0u32; inst.m()];
    let mut slots: Vec<Option<usize>> = vec![None; inst.n()];
    let dominated = rec(inst, mu, &caps, &options, 0, &mut loads, &mut slots, false);
    Ok(!dominated)
}
