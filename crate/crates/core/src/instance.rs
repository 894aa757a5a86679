//! The immutable instance model: students, schools, strict preference and
//! priority lists, base capacities, and the rank tables every solver relies
//! on.
//!
//! Identifiers are opaque strings in documents; internally they are mapped to
//! dense indices in document order so the enumeration-heavy solvers get O(1)
//! rank lookups.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rank sentinel for a partner that is not acceptable.
pub const UNACCEPTABLE: u32 = u32::MAX;

/// A validated many-to-one matching instance.
///
/// All lists are stored as dense indices: students `0..n`, schools `0..m`,
/// in document order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    students: Vec<String>,
    schools: Vec<String>,
    capacities: Vec<u32>,
    /// Per student, acceptable schools in strict preference order.
    prefs: Vec<Vec<usize>>,
    /// Per school, acceptable students in strict priority order.
    prios: Vec<Vec<usize>>,
    /// `student_rank[u][w]` = position of school `w` in `u`'s preference
    /// list, or [`UNACCEPTABLE`].
    student_rank: Vec<Vec<u32>>,
    /// `school_rank[w][u]` = position of student `u` in `w`'s priority list,
    /// or [`UNACCEPTABLE`].
    school_rank: Vec<Vec<u32>>,
}

/// Derived size statistics of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InstanceStats {
    pub students: usize,
    pub schools: usize,
    /// Longest student preference list.
    pub max_pref_len: usize,
    /// Longest school priority list.
    pub max_prio_len: usize,
    pub total_capacity: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct SchoolDoc {
    id: String,
    capacity: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceDoc {
    students: Vec<String>,
    schools: Vec<SchoolDoc>,
    preferences: IndexMap<String, Vec<String>>,
    priorities: IndexMap<String, Vec<String>>,
}

impl Instance {
    /// Build and validate an instance from named lists.
    ///
    /// `prefs` and `prios` must contain one entry per student/school; lists
    /// hold identifiers of the opposite side.
    pub fn new(
        students: Vec<String>,
        schools: Vec<(String, u32)>,
        prefs: &[(String, Vec<String>)],
        prios: &[(String, Vec<String>)],
    ) -> Result<Self> {
        let mut student_idx = IndexMap::new();
        for s in &students {
            if student_idx.insert(s.clone(), student_idx.len()).is_some() {
                return Err(Error::DuplicateIdentifier(s.clone()));
            }
        }
        let mut school_idx = IndexMap::new();
        let mut school_names = Vec::with_capacity(schools.len());
        let mut capacities = Vec::with_capacity(schools.len());
        for (w, cap) in &schools {
            if student_idx.contains_key(w) {
                return Err(Error::DuplicateIdentifier(w.clone()));
            }
            if school_idx.insert(w.clone(), school_idx.len()).is_some() {
                return Err(Error::DuplicateIdentifier(w.clone()));
            }
            if *cap == 0 {
                return Err(Error::ZeroCapacity(w.clone()));
            }
            school_names.push(w.clone());
            capacities.push(*cap);
        }
        let n = students.len();
        let m = school_names.len();

        let mut pref_lists: Vec<Option<Vec<usize>>> = vec![None; n];
        for (owner, list) in prefs {
            let u = *student_idx
                .get(owner)
                .ok_or_else(|| Error::UnknownIdentifier(owner.clone()))?;
            let mut resolved = Vec::with_capacity(list.len());
            for name in list {
                let w = *school_idx
                    .get(name)
                    .ok_or_else(|| Error::UnknownIdentifier(name.clone()))?;
                resolved.push(w);
            }
            if pref_lists[u].replace(resolved).is_some() {
                return Err(Error::DuplicateIdentifier(owner.clone()));
            }
        }
        let mut prio_lists: Vec<Option<Vec<usize>>> = vec![None; m];
        for (owner, list) in prios {
            let w = *school_idx
                .get(owner)
                .ok_or_else(|| Error::UnknownIdentifier(owner.clone()))?;
            let mut resolved = Vec::with_capacity(list.len());
            for name in list {
                let u = *student_idx
                    .get(name)
                    .ok_or_else(|| Error::UnknownIdentifier(name.clone()))?;
                resolved.push(u);
            }
            if prio_lists[w].replace(resolved).is_some() {
                return Err(Error::DuplicateIdentifier(owner.clone()));
            }
        }

        let mut prefs_resolved = Vec::with_capacity(n);
        for (u, list) in pref_lists.into_iter().enumerate() {
            let list = list.ok_or_else(|| Error::MissingList {
                kind: "preference",
                id: students[u].clone(),
            })?;
            if list.is_empty() {
                return Err(Error::EmptyPreferences(students[u].clone()));
            }
            prefs_resolved.push(list);
        }
        let mut prios_resolved = Vec::with_capacity(m);
        for (w, list) in prio_lists.into_iter().enumerate() {
            let list = list.ok_or_else(|| Error::MissingList {
                kind: "priority",
                id: school_names[w].clone(),
            })?;
            if list.is_empty() {
                return Err(Error::EmptyPriorities(school_names[w].clone()));
            }
            prios_resolved.push(list);
        }

        let mut student_rank = vec![vec![UNACCEPTABLE; m]; n];
        for (u, list) in prefs_resolved.iter().enumerate() {
            for (pos, &w) in list.iter().enumerate() {
                if student_rank[u][w] != UNACCEPTABLE {
                    return Err(Error::DuplicateInList {
                        owner: students[u].clone(),
                        member: school_names[w].clone(),
                    });
                }
                student_rank[u][w] = pos as u32;
            }
        }
        let mut school_rank = vec![vec![UNACCEPTABLE; n]; m];
        for (w, list) in prios_resolved.iter().enumerate() {
            for (pos, &u) in list.iter().enumerate() {
                if school_rank[w][u] != UNACCEPTABLE {
                    return Err(Error::DuplicateInList {
                        owner: school_names[w].clone(),
                        member: students[u].clone(),
                    });
                }
                school_rank[w][u] = pos as u32;
            }
        }

        // Mutual acceptability: u lists w iff w lists u.
        for u in 0..n {
            for w in 0..m {
                let su = student_rank[u][w] != UNACCEPTABLE;
                let sw = school_rank[w][u] != UNACCEPTABLE;
                if su != sw {
                    return Err(Error::MutualAcceptability {
                        student: students[u].clone(),
                        school: school_names[w].clone(),
                    });
                }
            }
        }

        Ok(Instance {
            students,
            schools: school_names,
            capacities,
            prefs: prefs_resolved,
            prios: prios_resolved,
            student_rank,
            school_rank,
        })
    }

    pub fn n(&self) -> usize {
        self.students.len()
    }

    pub fn m(&self) -> usize {
        self.schools.len()
    }

    pub fn student_name(&self, u: usize) -> &str {
        &self.students[u]
    }

    pub fn school_name(&self, w: usize) -> &str {
        &self.schools[w]
    }

    pub fn student_index(&self, name: &str) -> Option<usize> {
        self.students.iter().position(|s| s == name)
    }

    pub fn school_index(&self, name: &str) -> Option<usize> {
        self.schools.iter().position(|s| s == name)
    }

    pub fn capacity(&self, w: usize) -> u32 {
        self.capacities[w]
    }

    pub fn capacities(&self) -> &[u32] {
        &self.capacities
    }

    /// Acceptable schools of `u` in preference order.
    pub fn pref(&self, u: usize) -> &[usize] {
        &self.prefs[u]
    }

    /// Acceptable students of `w` in priority order.
    pub fn prio(&self, w: usize) -> &[usize] {
        &self.prios[w]
    }

    /// Rank of school `w` for student `u` (0 = best), or [`UNACCEPTABLE`].
    pub fn student_rank(&self, u: usize, w: usize) -> u32 {
        self.student_rank[u][w]
    }

    /// Rank of student `u` at school `w` (0 = best), or [`UNACCEPTABLE`].
    pub fn school_rank(&self, w: usize, u: usize) -> u32 {
        self.school_rank[w][u]
    }

    pub fn acceptable(&self, u: usize, w: usize) -> bool {
        self.student_rank[u][w] != UNACCEPTABLE
    }

    /// True iff student `u` strictly prefers school `a` to school `b`.
    pub fn prefers(&self, u: usize, a: usize, b: usize) -> bool {
        self.student_rank[u][a] < self.student_rank[u][b]
    }

    /// True iff school `w` ranks student `a` strictly above student `b`.
    pub fn school_prefers(&self, w: usize, a: usize, b: usize) -> bool {
        self.school_rank[w][a] < self.school_rank[w][b]
    }

    pub fn stats(&self) -> InstanceStats {
        InstanceStats {
            students: self.n(),
            schools: self.m(),
            max_pref_len: self.prefs.iter().map(Vec::len).max().unwrap_or(0),
            max_prio_len: self.prios.iter().map(Vec::len).max().unwrap_or(0),
            total_capacity: self.capacities.iter().map(|&c| u64::from(c)).sum(),
        }
    }
}

/// Parse and validate a canonical instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let prefs: Vec<(String, Vec<String>)> = doc.preferences.into_iter().collect();
    let prios: Vec<(String, Vec<String>)> = doc.priorities.into_iter().collect();
    let schools: Vec<(String, u32)> = doc.schools.into_iter().map(|s| (s.id, s.capacity)).collect();
    Instance::new(doc.students, schools, &prefs, &prios)
}

/// Serialize an instance to its canonical document form.
///
/// `parse_instance(serialize_instance(i)) == i` for every instance, and the
/// composition the other way round is the identity on canonical documents.
pub fn serialize_instance(inst: &Instance) -> String {
    let doc = InstanceDoc {
        students: inst.students.clone(),
        schools: inst
            .schools
            .iter()
            .zip(&inst.capacities)
            .map(|(id, &capacity)| SchoolDoc {
                id: id.clone(),
                capacity,
            })
            .collect(),
        preferences: inst
            .students
            .iter()
            .enumerate()
            .map(|(u, name)| {
                let list = inst.prefs[u]
                    .iter()
                    .map(|&w| inst.schools[w].clone())
                    .collect();
                (name.clone(), list)
            })
            .collect(),
        priorities: inst
            .schools
            .iter()
            .enumerate()
            .map(|(w, name)| {
                let list = inst.prios[w]
                    .iter()
                    .map(|&u| inst.students[u].clone())
                    .collect();
                (name.clone(), list)
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("instance serialization cannot fail");
    out.push('\n');
    out
}

/// Convenience: `instance_stats` as a free function mirroring the solver API.
pub fn instance_stats(inst: &Instance) -> InstanceStats {
    inst.stats()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_example;

    fn lists(pairs: &[(&str, &[&str])]) -> Vec<(String, Vec<String>)> {
        pairs
            .iter()
            .map(|(o, l)| (o.to_string(), l.iter().map(|s| s.to_string()).collect()))
            .collect()
    }

    #[test]
    fn intro_document_parses_to_expected_shape() {
        let inst = gen_example("intro", &[]).unwrap();
        let stats = inst.stats();
        assert_eq!(stats.students, 5);
        assert_eq!(stats.schools, 3);
        assert_eq!(inst.capacities(), &[1, 1, 1]);
        assert_eq!(stats.max_pref_len, 3);
        assert_eq!(stats.max_prio_len, 5);
    }

    #[test]
    fn problems_example_stats() {
        let inst = gen_example("problems", &[]).unwrap();
        let stats = inst.stats();
        assert_eq!(stats.max_pref_len, 3);
        assert_eq!(stats.max_prio_len, 5);
        assert_eq!(stats.total_capacity, 3);
    }

    #[test]
    fn single_pair_instance_is_minimal() {
        let inst = Instance::new(
            vec!["u".into()],
            vec![("w".into(), 1)],
            &lists(&[("u", &["w"])]),
            &lists(&[("w", &["u"])]),
        )
        .unwrap();
        let stats = inst.stats();
        assert_eq!(stats.max_pref_len, 1);
        assert_eq!(stats.max_prio_len, 1);
    }

    #[test]
    fn mutual_acceptability_is_enforced() {
        // w lists u2, but u2 does not list w.
        let err = Instance::new(
            vec!["u1".into(), "u2".into()],
            vec![("w".into(), 1)],
            &lists(&[("u1", &["w"]), ("u2", &["w"])]),
            &lists(&[("w", &["u1"])]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::MutualAcceptability { .. }));
    }

    #[test]
    fn empty_lists_and_zero_capacities_are_rejected() {
        let err = Instance::new(
            vec!["u".into()],
            vec![("w".into(), 1)],
            &lists(&[("u", &[])]),
            &lists(&[("w", &["u"])]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmptyPreferences(_)));

        let err = Instance::new(
            vec!["u".into()],
            vec![("w".into(), 0)],
            &lists(&[("u", &["w"])]),
            &lists(&[("w", &["u"])]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::ZeroCapacity(_)));
    }

    #[test]
    fn duplicate_identifiers_are_rejected() {
        let err = Instance::new(
            vec!["u".into(), "u".into()],
            vec![("w".into(), 1)],
            &lists(&[("u", &["w"])]),
            &lists(&[("w", &["u"])]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateIdentifier(_)));
    }

    #[test]
    fn canonical_round_trip() {
        let inst = gen_example("intro", &[]).unwrap();
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn malformed_document_reports_parse_error() {
        assert!(matches!(parse_instance("{"), Err(Error::Malformed(_))));
    }
}
