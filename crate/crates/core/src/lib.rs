//! Solvers for minimally expanding school capacities in many-to-one
//! matching so that a stable-and-perfect or stable-and-efficient matching
//! exists.
//!
//! The library is organized around an immutable [`Instance`] (students,
//! schools, strict lists, capacities) and capacity-increase vectors:
//!
//! - [`da`]: student-proposing deferred acceptance, blocking pairs, and a
//!   brute-force stable-matching enumerator.
//! - [`efficiency`]: justified envy, dominance, Pareto-efficiency checking
//!   and its brute-force oracle.
//! - [`envy`]: assignment vectors for the unmatched students and the
//!   constructive realization used by the bound-based solvers.
//! - [`minsum`] / [`minmax`]: the stable-and-perfect solvers (exact search,
//!   envy-count formula, integer program with LP rounding, greedy, the
//!   polynomial special cases, and the uniform-increase algorithm).
//! - [`se`]: stable-and-efficient existence and exact solvers.
//! - [`gen`]: worked examples, reduction gadget generators with witness
//!   builders, and seeded random instances.

pub mod da;
pub mod efficiency;
pub mod envy;
pub mod error;
pub mod gen;
pub mod instance;
pub mod lp;
pub mod matching;
pub mod minmax;
pub mod minsum;
pub mod result;
pub mod se;
mod search;

pub use da::{
    blocking_pairs, da_matching, enumerate_stable_matchings, is_stable, student_optimal_stable,
    StableContext,
};
pub use efficiency::{
    dominates, efficiency_oracle, is_efficient, justified_envy_pairs, Efficiency, EnvyEdge,
};
pub use envy::{envy_report, min_envy_bruteforce, normalize, realize, AssignmentVector, EnvyReport};
pub use error::{Error, Result};
pub use instance::{instance_stats, parse_instance, serialize_instance, Instance, InstanceStats};
pub use matching::{is_feasible, CapacityVector, Matching};
pub use minmax::{solve_minmax_sp, trim};
pub use minsum::{
    build_ip, solve_exact, solve_formula, solve_greedy, solve_ip, solve_lp, solve_lp_round,
    solve_special_cases, useful_bounds, IpSolution, LpModel,
};
pub use result::{certify, Certificates, SolveResult, SolveStatus};
pub use se::{exists_stable_efficient, solve_minmax_se, solve_minsum_se, SeCheck};
pub use search::SearchLimits;

/// Default cap on brute-force enumeration oracles (stable-matching
/// enumeration and the efficiency oracle).
pub const DEFAULT_ENUMERATION_GUARD: u64 = 2_000_000;

/// Default cap on candidate vectors evaluated by the exponential solvers.
pub const DEFAULT_SEARCH_GUARD: u64 = 10_000_000;
