//! Matchings and capacity-increase vectors, with their document forms.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;

/// A partial assignment of students to acceptable schools.
///
/// Unmatched students are simply absent from the assignment; there is no
/// sentinel school.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// `slots[u]` is the school of student `u`, if any.
    slots: Vec<Option<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MatchingDoc {
    assignment: IndexMap<String, String>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            slots: vec![None; n],
        }
    }

    pub fn from_slots(slots: Vec<Option<usize>>) -> Self {
        Matching { slots }
    }

    pub fn school_of(&self, u: usize) -> Option<usize> {
        self.slots[u]
    }

    pub fn set(&mut self, u: usize, w: Option<usize>) {
        self.slots[u] = w;
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn assigned_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_perfect(&self) -> bool {
        self.slots.iter().all(|s| s.is_some())
    }

    pub fn unmatched(&self) -> impl Iterator<Item = usize> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(u, _)| u)
    }

    /// Number of students at each school.
    pub fn loads(&self, m: usize) -> Vec<u32> {
        let mut loads = vec![0u32; m];
        for s in self.slots.iter().flatten() {
            loads[*s] += 1;
        }
        loads
    }

    /// Students assigned to school `w`, in document order.
    pub fn assigned_to(&self, w: usize) -> Vec<usize> {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Some(w))
            .map(|(u, _)| u)
            .collect()
    }

    /// Parse a matching document, checking identifiers and acceptability.
    pub fn from_document(inst: &Instance, text: &str) -> Result<Self> {
        let doc: MatchingDoc =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut slots = vec![None; inst.n()];
        for (student, school) in &doc.assignment {
            let u = inst
                .student_index(student)
                .ok_or_else(|| Error::UnknownIdentifier(student.clone()))?;
            let w = inst
                .school_index(school)
                .ok_or_else(|| Error::UnknownIdentifier(school.clone()))?;
            if !inst.acceptable(u, w) {
                return Err(Error::UnacceptableAssignment {
                    student: student.clone(),
                    school: school.clone(),
                });
            }
            if slots[u].replace(w).is_some() {
                return Err(Error::DuplicateIdentifier(student.clone()));
            }
        }
        Ok(Matching { slots })
    }

    pub fn to_document(&self, inst: &Instance) -> String {
        let assignment: IndexMap<String, String> = self
            .slots
            .iter()
            .enumerate()
            .filter_map(|(u, s)| {
                s.map(|w| {
                    (
                        inst.student_name(u).to_string(),
                        inst.school_name(w).to_string(),
                    )
                })
            })
            .collect();
        let mut out = serde_json::to_string_pretty(&MatchingDoc { assignment }).unwrap();
        out.push('\n');
        out
    }

    /// Build from named pairs; panics on unknown names (test/internal use).
    pub fn from_pairs(inst: &Instance, pairs: &[(&str, &str)]) -> Self {
        let mut slots = vec![None; inst.n()];
        for (student, school) in pairs {
            let u = inst.student_index(student).expect("unknown student");
            let w = inst.school_index(school).expect("unknown school");
            slots[u] = Some(w);
        }
        Matching { slots }
    }
}

/// Per-school nonnegative capacity increases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityVector {
    raise: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CapacityDoc {
    increase: IndexMap<String, u32>,
}

impl CapacityVector {
    pub fn zero(m: usize) -> Self {
        CapacityVector {
            raise: vec![0u32; m],
        }
    }

    pub fn from_raises(raise: Vec<u32>) -> Self {
        CapacityVector { raise }
    }

    pub fn raise(&self, w: usize) -> u32 {
        self.raise[w]
    }

    pub fn raises(&self) -> &[u32] {
        &self.raise
    }

    pub fn dim(&self) -> usize {
        self.raise.len()
    }

    /// The l1 norm: total number of added seats.
    pub fn sum(&self) -> u64 {
        self.raise.iter().map(|&r| u64::from(r)).sum()
    }

    /// The l-infinity norm: largest single increase.
    pub fn max(&self) -> u32 {
        self.raise.iter().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.raise.iter().all(|&r| r == 0)
    }

    /// True iff `self[w] <= other[w]` for every school.
    pub fn le(&self, other: &CapacityVector) -> bool {
        self.raise.len() == other.raise.len()
            && self.raise.iter().zip(&other.raise).all(|(a, b)| a <= b)
    }

    /// Effective capacities `q + r`.
    pub fn apply(&self, inst: &Instance) -> Vec<u32> {
        inst.capacities()
            .iter()
            .zip(&self.raise)
            .map(|(&q, &r)| q + r)
            .collect()
    }

    pub fn from_document(inst: &Instance, text: &str) -> Result<Self> {
        let doc: CapacityDoc =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut raise = vec![0u32; inst.m()];
        for (school, amount) in &doc.increase {
            let w = inst
                .school_index(school)
                .ok_or_else(|| Error::UnknownIdentifier(school.clone()))?;
            raise[w] = *amount;
        }
        Ok(CapacityVector { raise })
    }

    /// Document form; schools with zero increase are omitted.
    pub fn to_document(&self, inst: &Instance) -> String {
        let increase: IndexMap<String, u32> = self
            .raise
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(w, &r)| (inst.school_name(w).to_string(), r))
            .collect();
        let mut out = serde_json::to_string_pretty(&CapacityDoc { increase }).unwrap();
        out.push('\n');
        out
    }
}

/// True iff every assignment is acceptable and no school exceeds `q + r`.
pub fn is_feasible(inst: &Instance, mu: &Matching, r: &CapacityVector) -> bool {
    assert_eq!(r.dim(), inst.m(), "capacity vector dimension mismatch");
    let caps = r.apply(inst);
    let mut loads = vec![0u32; inst.m()];
    for u in 0..inst.n() {
        if let Some(w) = mu.school_of(u) {
            if !inst.acceptable(u, w) {
                return false;
            }
            loads[w] += 1;
        }
    }
    loads.iter().zip(&caps).all(|(&l, &c)| l <= c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_example;

    #[test]
    fn intro_stable_matching_is_feasible_at_base_capacities() {
        let inst = gen_example("intro", &[]).unwrap();
        let mu1 = Matching::from_pairs(&inst, &[("u1", "w2"), ("u2", "w1"), ("u3", "w3")]);
        assert!(is_feasible(&inst, &mu1, &CapacityVector::zero(3)));
    }

    #[test]
    fn extended_matching_needs_the_extra_seats() {
        let inst = gen_example("intro", &[]).unwrap();
        let mu = Matching::from_pairs(
            &inst,
            &[
                ("u1", "w1"),
                ("u4", "w1"),
                ("u5", "w1"),
                ("u2", "w2"),
                ("u3", "w3"),
            ],
        );
        assert!(is_feasible(
            &inst,
            &mu,
            &CapacityVector::from_raises(vec![2, 0, 0])
        ));
        assert!(!is_feasible(&inst, &mu, &CapacityVector::zero(3)));
    }

    #[test]
    fn feasibility_is_monotone_in_the_increase() {
        let inst = gen_example("intro", &[]).unwrap();
        let mu = Matching::from_pairs(&inst, &[("u1", "w1"), ("u4", "w1")]);
        let small = CapacityVector::from_raises(vec![1, 0, 0]);
        let big = CapacityVector::from_raises(vec![2, 1, 0]);
        assert!(small.le(&big));
        assert!(is_feasible(&inst, &mu, &small));
        assert!(is_feasible(&inst, &mu, &big));
    }

    #[test]
    fn unacceptable_assignment_is_rejected_at_parse() {
        let inst = gen_example("problems", &[]).unwrap();
        // u4 does not list w3.
        let err = Matching::from_document(
            &inst,
            r#"{ "assignment": { "u1": "w1", "u2": "w2", "u4": "w3" } }"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnacceptableAssignment { .. }));
    }

    #[test]
    fn capacity_vector_documents_omit_zero_entries() {
        let inst = gen_example("intro", &[]).unwrap();
        let r = CapacityVector::from_raises(vec![2, 0, 0]);
        let doc = r.to_document(&inst);
        let back = CapacityVector::from_document(&inst, &doc).unwrap();
        assert_eq!(back, r);
        assert!(!doc.contains("w2"));
    }
}
