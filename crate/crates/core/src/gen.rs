//! Deterministic construction of the worked examples and the hardness-style
//! gadget families, paired with witness builders for their constructive
//! directions, plus seeded random instances and small brute-force solvers
//! for the source problems (used as oracles by the tests).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matching::{CapacityVector, Matching};

/// Simple undirected graph; vertices and edge endpoints are 1-based.
#[derive(Debug, Clone, Deserialize)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Graph with a color per vertex (1-based color classes).
#[derive(Debug, Clone, Deserialize)]
pub struct ColoredGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub colors: Vec<usize>,
}

/// Set system over the universe `1..=universe`.
#[derive(Debug, Clone, Deserialize)]
pub struct SetSystem {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
}

/// 3-CNF formula as clauses of signed 1-based variable indices.
#[derive(Debug, Clone, Deserialize)]
pub struct Formula {
    pub clauses: Vec<[i32; 3]>,
}

struct Builder {
    students: Vec<String>,
    schools: Vec<(String, u32)>,
    prefs: Vec<(String, Vec<String>)>,
    prios: Vec<(String, Vec<String>)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            students: Vec::new(),
            schools: Vec::new(),
            prefs: Vec::new(),
            prios: Vec::new(),
        }
    }

    fn student(&mut self, name: impl Into<String>, pref: Vec<String>) {
        let name = name.into();
        self.students.push(name.clone());
        self.prefs.push((name, pref));
    }

    fn school(&mut self, name: impl Into<String>, capacity: u32, prio: Vec<String>) {
        let name = name.into();
        self.schools.push((name.clone(), capacity));
        self.prios.push((name, prio));
    }

    fn build(self) -> Result<Instance> {
        Instance::new(self.students, self.schools, &self.prefs, &self.prios)
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Construct one of the named worked examples.
///
/// `greedy-tight` takes two parameters (number of initially unmatched
/// students, dummies per school); the other names take none.
pub fn gen_example(name: &str, params: &[u64]) -> Result<Instance> {
    match (name, params) {
        ("intro", []) => intro_example(),
        ("problems", []) => problems_example(),
        ("stable-eff", []) => stable_eff_example(),
        ("minmaxse-gap", []) => minmaxse_gap_example(),
        ("greedy-tight", [s, n]) => gen_greedy_tight(*s, *n),
        _ => Err(Error::UnknownExample(format!("{name} {params:?}"))),
    }
}

fn intro_example() -> Result<Instance> {
    let mut b = Builder::new();
    b.student("u1", names(&["w1", "w3", "w2"]));
    b.student("u2", names(&["w2", "w1", "w3"]));
    b.student("u3", names(&["w2", "w3"]));
    b.student("u4", names(&["w1", "w2"]));
    b.student("u5", names(&["w1", "w2"]));
    b.school("w1", 1, names(&["u2", "u4", "u1", "u5"]));
    b.school("w2", 1, names(&["u1", "u2", "u3", "u4", "u5"]));
    b.school("w3", 1, names(&["u3", "u1", "u2"]));
    b.build()
}

fn problems_example() -> Result<Instance> {
    let mut b = Builder::new();
    for i in 1..=5 {
        let pref = if i == 3 {
            names(&["w1", "w2", "w3"])
        } else {
            names(&["w1", "w2"])
        };
        b.student(format!("u{i}"), pref);
    }
    let ranking = names(&["u1", "u2", "u3", "u4", "u5"]);
    b.school("w1", 1, ranking.clone());
    b.school("w2", 1, ranking);
    b.school("w3", 1, names(&["u3"]));
    b.build()
}

fn stable_eff_example() -> Result<Instance> {
    let mut b = Builder::new();
    b.student("u1", names(&["w1", "w3", "w4"]));
    b.student("u2", names(&["w1", "w2"]));
    b.student("u3", names(&["w2", "w1", "w3"]));
    b.student("u4", names(&["w2", "w3", "w5"]));
    b.student("u5", names(&["w3", "w2", "w1"]));
    b.school("w1", 1, names(&["u5", "u3", "u2", "u1"]));
    b.school("w2", 1, names(&["u2", "u5", "u3", "u4"]));
    b.school("w3", 1, names(&["u3", "u4", "u1", "u5"]));
    b.school("w4", 1, names(&["u1"]));
    b.school("w5", 1, names(&["u4"]));
    b.build()
}

/// The 15-school instance where the optimal maximum increase is one but the
/// uniform increase of one admits no stable and efficient matching.
fn minmaxse_gap_example() -> Result<Instance> {
    let mut b = Builder::new();
    let core_prefs: [&[&str]; 5] = [
        &["w1", "w3", "w4", "v1", "w1'", "w3'", "w4'"],
        &["w1", "w2", "v2", "w1'", "w2'"],
        &["w2", "w1", "w3", "v3", "w2'", "w1'", "w3'"],
        &["w2", "w3", "w5", "v4", "w2'", "w3'", "w5'"],
        &["w3", "w2", "w1", "v5", "w3'", "w2'", "w1'"],
    ];
    for (i, pref) in core_prefs.iter().enumerate() {
        b.student(format!("u{}", i + 1), names(pref));
    }
    for i in 1..=5 {
        b.student(format!("d^w{i}"), vec![format!("w{i}")]);
    }
    for i in 1..=5 {
        b.student(format!("d^v{i}"), vec![format!("v{i}")]);
    }
    let rankings: [&[&str]; 5] = [
        &["u5", "u3", "u2", "u1"],
        &["u2", "u5", "u3", "u4"],
        &["u3", "u4", "u1", "u5"],
        &["u1"],
        &["u4"],
    ];
    for i in 1..=5 {
        let mut prio = vec![format!("d^w{i}")];
        prio.extend(names(rankings[i - 1]));
        b.school(format!("w{i}"), 1, prio);
    }
    for i in 1..=5 {
        b.school(format!("w{i}'"), 1, names(rankings[i - 1]));
    }
    for i in 1..=5 {
        b.school(format!("v{i}"), 1, vec![format!("d^v{i}"), format!("u{i}")]);
    }
    b.build()
}

/// The family on which the greedy heuristic meets its worst-case ratio:
/// `unmatched` students who can each go to a private school or one shared
/// school, every option guarded by `dummies` higher-priority students.
pub fn gen_greedy_tight(unmatched: u64, dummies: u64) -> Result<Instance> {
    if unmatched == 0 || dummies == 0 {
        return Err(Error::BadSource(
            "greedy-tight needs at least one unmatched student and one dummy".into(),
        ));
    }
    let s = unmatched as usize;
    let n = dummies as usize;
    let mut b = Builder::new();
    for i in 1..=s {
        b.student(format!("e{i}"), vec![format!("c{i}"), format!("c{}", s + 1)]);
    }
    for j in 1..=s + 1 {
        b.student(format!("d{j}"), vec![format!("c{j}")]);
    }
    for j in 1..=s + 1 {
        for l in 1..=n {
            b.student(
                format!("u{j}^{l}"),
                vec![format!("c{j}"), format!("w{j}^{l}")],
            );
        }
    }
    for j in 1..=s + 1 {
        let mut prio = vec![format!("d{j}")];
        prio.extend((1..=n).map(|l| format!("u{j}^{l}")));
        if j <= s {
            prio.push(format!("e{j}"));
        } else {
            prio.extend((1..=s).map(|i| format!("e{i}")));
        }
        b.school(format!("c{j}"), 1, prio);
    }
    for j in 1..=s + 1 {
        for l in 1..=n {
            b.school(format!("w{j}^{l}"), 1, vec![format!("u{j}^{l}")]);
        }
    }
    b.build()
}

fn check_graph(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(g.edges.len());
    for &(a, b) in &g.edges {
        if a == 0 || b == 0 || a > g.vertices || b > g.vertices {
            return Err(Error::BadSource(format!("edge ({a},{b}) out of range")));
        }
        if a == b {
            return Err(Error::BadSource(format!("self loop at vertex {a}")));
        }
        let (i, j) = (a.min(b), a.max(b));
        if !seen.insert((i, j)) {
            return Err(Error::BadSource(format!("duplicate edge ({i},{j})")));
        }
        edges.push((i, j));
    }
    Ok(edges)
}

/// The vertex-cover encoding: one student per edge, one guarded school per
/// vertex-edge incidence, one private school per vertex. Returns the
/// instance and the budget `edges + h`.
pub fn gen_vertex_cover(g: &Graph, h: u64) -> Result<(Instance, u64)> {
    let edges = check_graph(g)?;
    let mut b = Builder::new();
    for (t, &(i, j)) in edges.iter().enumerate() {
        let t = t + 1;
        b.student(format!("e{t}"), vec![format!("v{i}^{t}"), format!("v{j}^{t}")]);
    }
    for i in 1..=g.vertices {
        for (t, &(x, y)) in edges.iter().enumerate() {
            let t = t + 1;
            if x == i || y == i {
                b.student(format!("d{i}^{t}"), vec![format!("v{i}^{t}")]);
            }
        }
    }
    for i in 1..=g.vertices {
        let mut pref: Vec<String> = edges
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| x == i || y == i)
            .map(|(t, _)| format!("v{i}^{}", t + 1))
            .collect();
        pref.push(format!("w{i}"));
        b.student(format!("u{i}"), pref);
    }
    for i in 1..=g.vertices {
        for (t, &(x, y)) in edges.iter().enumerate() {
            let t = t + 1;
            if x == i || y == i {
                b.school(
                    format!("v{i}^{t}"),
                    1,
                    vec![format!("d{i}^{t}"), format!("u{i}"), format!("e{t}")],
                );
            }
        }
    }
    for i in 1..=g.vertices {
        b.school(format!("w{i}"), 1, vec![format!("u{i}")]);
    }
    let inst = b.build()?;
    Ok((inst, edges.len() as u64 + h))
}

/// The set-cover encoding: element students compete for set schools whose
/// seats are shielded by a dummy and a block of guard students. Returns the
/// instance and the budget `(k + 1) * universe`.
///
/// Every element must occur in some set, otherwise its student would have an
/// empty preference list.
pub fn gen_set_cover(ss: &SetSystem, k: u64) -> Result<(Instance, u64)> {
    let n = ss.universe;
    let m = ss.sets.len();
    if n == 0 || m == 0 {
        return Err(Error::BadSource("empty set system".into()));
    }
    let mut covered = vec![false; n + 1];
    for (j, set) in ss.sets.iter().enumerate() {
        for &e in set {
            if e == 0 || e > n {
                return Err(Error::BadSource(format!(
                    "element {e} of set {} out of range",
                    j + 1
                )));
            }
            covered[e] = true;
        }
    }
    if let Some(e) = (1..=n).find(|&e| !covered[e]) {
        return Err(Error::BadSource(format!("element {e} is in no set")));
    }

    let mut b = Builder::new();
    for j in 1..=m {
        b.student(format!("d{j}"), vec![format!("c{j}")]);
    }
    for e in 1..=n {
        let pref: Vec<String> = (1..=m)
            .filter(|&j| ss.sets[j - 1].contains(&e))
            .map(|j| format!("c{j}"))
            .collect();
        b.student(format!("e{e}"), pref);
    }
    for j in 1..=m {
        for z in 1..=n {
            b.student(
                format!("u{j}^{z}"),
                vec![format!("c{j}"), format!("w{j}^{z}")],
            );
        }
    }
    for j in 1..=m {
        let mut prio = vec![format!("d{j}")];
        prio.extend((1..=n).map(|z| format!("u{j}^{z}")));
        let mut members: Vec<usize> = ss.sets[j - 1].clone();
        members.sort_unstable();
        members.dedup();
        prio.extend(members.into_iter().map(|e| format!("e{e}")));
        b.school(format!("c{j}"), 1, prio);
    }
    for j in 1..=m {
        for z in 1..=n {
            b.school(format!("w{j}^{z}"), 1, vec![format!("u{j}^{z}")]);
        }
    }
    let inst = b.build()?;
    Ok((inst, (k + 1) * n as u64))
}

fn check_colored(cg: &ColoredGraph) -> Result<(Vec<(usize, usize)>, usize)> {
    let edges = check_graph(&Graph {
        vertices: cg.vertices,
        edges: cg.edges.clone(),
    })?;
    if cg.colors.len() != cg.vertices {
        return Err(Error::BadSource("one color per vertex required".into()));
    }
    let h = *cg
        .colors
        .iter()
        .max()
        .ok_or_else(|| Error::BadSource("empty graph".into()))?;
    if cg.colors.iter().any(|&c| c == 0) || h < 2 {
        return Err(Error::BadSource("colors must be 1-based with h >= 2".into()));
    }
    Ok((edges, h))
}

fn color_pairs(h: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for z in 1..=h {
        for zp in z + 1..=h {
            pairs.push((z, zp));
        }
    }
    pairs
}

fn pair_edges(cg: &ColoredGraph, edges: &[(usize, usize)], p: (usize, usize)) -> Vec<usize> {
    edges
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| {
            let (ci, cj) = (cg.colors[i - 1], cg.colors[j - 1]);
            (ci.min(cj), ci.max(cj)) == p
        })
        .map(|(t, _)| t + 1)
        .collect()
}

/// The multicolored-clique encoding for the stable-and-perfect problem.
/// Returns the instance and the budget `C(h,2) + h`.
///
/// Every color pair must be joined by at least one edge, otherwise its
/// selector student would have an empty preference list.
pub fn gen_mcc(cg: &ColoredGraph) -> Result<(Instance, u64)> {
    let (edges, h) = check_colored(cg)?;
    let pairs = color_pairs(h);
    for &p in &pairs {
        if pair_edges(cg, &edges, p).is_empty() {
            return Err(Error::BadSource(format!(
                "no edge joins color classes {} and {}",
                p.0, p.1
            )));
        }
    }

    let mut b = Builder::new();
    for &(z, zp) in &pairs {
        let pref = pair_edges(cg, &edges, (z, zp))
            .into_iter()
            .map(|t| format!("e{t}"))
            .collect();
        b.student(format!("s{z}_{zp}"), pref);
    }
    for t in 1..=edges.len() {
        b.student(format!("f{t}"), vec![format!("e{t}")]);
    }
    for i in 1..=cg.vertices {
        let mut pref: Vec<String> = edges
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| x == i || y == i)
            .map(|(t, _)| format!("e{}", t + 1))
            .collect();
        pref.push(format!("w{i}"));
        b.student(format!("v{i}"), pref);
    }
    for (t, &(i, j)) in edges.iter().enumerate() {
        let t = t + 1;
        let mut prio = vec![format!("f{t}"), format!("v{i}"), format!("v{j}")];
        let (ci, cj) = (cg.colors[i - 1], cg.colors[j - 1]);
        if ci != cj {
            prio.push(format!("s{}_{}", ci.min(cj), ci.max(cj)));
        }
        b.school(format!("e{t}"), 1, prio);
    }
    for i in 1..=cg.vertices {
        b.school(format!("w{i}"), 1, vec![format!("v{i}")]);
    }
    let inst = b.build()?;
    let budget = (pairs.len() + h) as u64;
    Ok((inst, budget))
}

fn clique_edge_of_pair(
    cg: &ColoredGraph,
    edges: &[(usize, usize)],
    clique: &[usize],
    p: (usize, usize),
) -> Result<usize> {
    for (t, &(i, j)) in edges.iter().enumerate() {
        if clique.contains(&i) && clique.contains(&j) {
            let (ci, cj) = (cg.colors[i - 1], cg.colors[j - 1]);
            if (ci.min(cj), ci.max(cj)) == p {
                return Ok(t + 1);
            }
        }
    }
    Err(Error::BadSource(format!(
        "clique spans no edge for color pair {}-{}",
        p.0, p.1
    )))
}

/// Each clique vertex goes to its smallest-index incident clique edge.
fn clique_vertex_targets(
    cg: &ColoredGraph,
    edges: &[(usize, usize)],
    clique: &[usize],
) -> Result<Vec<(usize, usize)>> {
    let h = *cg.colors.iter().max().unwrap_or(&0);
    if clique.len() != h {
        return Err(Error::BadSource("clique must have one vertex per color".into()));
    }
    let mut vertex_targets = Vec::new();
    for &i in clique {
        let t = edges
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| {
                (x == i && clique.contains(&y)) || (y == i && clique.contains(&x))
            })
            .map(|(t, _)| t + 1)
            .min()
            .ok_or_else(|| Error::BadSource(format!("vertex {i} has no clique edge")))?;
        vertex_targets.push((i, t));
    }
    Ok(vertex_targets)
}

/// The constructive direction of the multicolored-clique encoding: from a
/// clique with one vertex per color, build the increase vector and stable
/// perfect matching with total increase `C(h,2) + h`.
pub fn mcc_witness_from_clique(
    inst: &Instance,
    cg: &ColoredGraph,
    clique: &[usize],
) -> Result<(CapacityVector, Matching)> {
    let (edges, h) = check_colored(cg)?;
    let vertex_targets = clique_vertex_targets(cg, &edges, clique)?;
    let mut mu = Matching::empty(inst.n());
    let mut set = |student: String, school: String| -> Result<(usize, usize)> {
        let u = inst
            .student_index(&student)
            .ok_or_else(|| Error::UnknownIdentifier(student.clone()))?;
        let w = inst
            .school_index(&school)
            .ok_or_else(|| Error::UnknownIdentifier(school))?;
        Ok((u, w))
    };
    let mut pairs_to_set: Vec<(usize, usize)> = Vec::new();
    for t in 1..=edges.len() {
        pairs_to_set.push(set(format!("f{t}"), format!("e{t}"))?);
    }
    for p in color_pairs(h) {
        let t = clique_edge_of_pair(cg, &edges, clique, p)?;
        pairs_to_set.push(set(format!("s{}_{}", p.0, p.1), format!("e{t}"))?);
    }
    for &(i, t) in &vertex_targets {
        pairs_to_set.push(set(format!("v{i}"), format!("e{t}"))?);
    }
    for i in 1..=cg.vertices {
        if !clique.contains(&i) {
            pairs_to_set.push(set(format!("v{i}"), format!("w{i}"))?);
        }
    }
    for (u, w) in pairs_to_set {
        mu.set(u, Some(w));
    }
    let loads = mu.loads(inst.m());
    let raises = loads
        .iter()
        .zip(inst.capacities())
        .map(|(&l, &q)| l.saturating_sub(q))
        .collect();
    Ok((CapacityVector::from_raises(raises), mu))
}

/// Preference and priority tables of the five-student gadget that admits no
/// stable and efficient matching, parameterized by a naming suffix. The
/// fifth student is the selector whose list is extended elsewhere.
fn se_gadget_schools(b: &mut Builder, tag: &str, selector: &str) {
    let u = |i: usize| format!("u{i}^{tag}");
    b.school(
        format!("w1^{tag}"),
        1,
        vec![selector.to_string(), u(3), u(2), u(1)],
    );
    b.school(
        format!("w2^{tag}"),
        1,
        vec![u(2), selector.to_string(), u(3), u(4)],
    );
    b.school(
        format!("w3^{tag}"),
        1,
        vec![u(3), u(4), u(1), selector.to_string()],
    );
    b.school(format!("w4^{tag}"), 1, vec![u(1)]);
    b.school(format!("w5^{tag}"), 1, vec![u(4)]);
}

fn se_gadget_students(b: &mut Builder, tag: &str) {
    let w = |i: usize| format!("w{i}^{tag}");
    b.student(format!("u1^{tag}"), vec![w(1), w(3), w(4)]);
    b.student(format!("u2^{tag}"), vec![w(1), w(2)]);
    b.student(format!("u3^{tag}"), vec![w(2), w(1), w(3)]);
    b.student(format!("u4^{tag}"), vec![w(2), w(3), w(5)]);
}

/// The multicolored-clique encoding for the stable-and-efficient problem:
/// each selector lives inside a copy of the no-stable-efficient gadget.
/// Returns the instance and the budget `C(h,2) + h`.
pub fn gen_se_mcc(cg: &ColoredGraph) -> Result<(Instance, u64)> {
    let (edges, h) = check_colored(cg)?;
    let pairs = color_pairs(h);
    for &p in &pairs {
        if pair_edges(cg, &edges, p).is_empty() {
            return Err(Error::BadSource(format!(
                "no edge joins color classes {} and {}",
                p.0, p.1
            )));
        }
    }

    let mut b = Builder::new();
    for &(z, zp) in &pairs {
        let tag = format!("p{z}_{zp}");
        se_gadget_students(&mut b, &tag);
        let mut pref: Vec<String> = pair_edges(cg, &edges, (z, zp))
            .into_iter()
            .map(|t| format!("e{t}"))
            .collect();
        pref.push(format!("w3^{tag}"));
        pref.push(format!("w2^{tag}"));
        pref.push(format!("w1^{tag}"));
        b.student(format!("s^{tag}"), pref);
    }
    for t in 1..=edges.len() {
        b.student(format!("f{t}"), vec![format!("e{t}")]);
    }
    for i in 1..=cg.vertices {
        let mut pref: Vec<String> = edges
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| x == i || y == i)
            .map(|(t, _)| format!("e{}", t + 1))
            .collect();
        pref.push(format!("w{i}"));
        b.student(format!("v{i}"), pref);
    }
    for (t, &(i, j)) in edges.iter().enumerate() {
        let t = t + 1;
        let mut prio = vec![format!("f{t}"), format!("v{i}"), format!("v{j}")];
        let (ci, cj) = (cg.colors[i - 1], cg.colors[j - 1]);
        if ci != cj {
            prio.push(format!("s^p{}_{}", ci.min(cj), ci.max(cj)));
        }
        b.school(format!("e{t}"), 1, prio);
    }
    for i in 1..=cg.vertices {
        b.school(format!("w{i}"), 1, vec![format!("v{i}")]);
    }
    for &(z, zp) in &pairs {
        let tag = format!("p{z}_{zp}");
        se_gadget_schools(&mut b, &tag, &format!("s^{tag}"));
    }
    let inst = b.build()?;
    let budget = (pairs.len() + h) as u64;
    Ok((inst, budget))
}

/// Constructive direction of the stable-and-efficient clique encoding: from
/// a multicolored clique build the increase vector and a matching that is
/// stable, perfect, and efficient with total increase `C(h,2) + h`.
pub fn se_mcc_witness_from_clique(
    inst: &Instance,
    cg: &ColoredGraph,
    clique: &[usize],
) -> Result<(CapacityVector, Matching)> {
    let (edges, h) = check_colored(cg)?;
    let vertex_targets = clique_vertex_targets(cg, &edges, clique)?;
    let mut mu = Matching::empty(inst.n());
    let mut assign = |student: String, school: String| -> Result<()> {
        let u = inst
            .student_index(&student)
            .ok_or_else(|| Error::UnknownIdentifier(student.clone()))?;
        let w = inst
            .school_index(&school)
            .ok_or_else(|| Error::UnknownIdentifier(school))?;
        mu.set(u, Some(w));
        Ok(())
    };
    for t in 1..=edges.len() {
        assign(format!("f{t}"), format!("e{t}"))?;
    }
    for p in color_pairs(h) {
        let tag = format!("p{}_{}", p.0, p.1);
        let t = clique_edge_of_pair(cg, &edges, clique, p)?;
        assign(format!("s^{tag}"), format!("e{t}"))?;
        assign(format!("u2^{tag}"), format!("w1^{tag}"))?;
        assign(format!("u3^{tag}"), format!("w2^{tag}"))?;
        assign(format!("u4^{tag}"), format!("w3^{tag}"))?;
        assign(format!("u1^{tag}"), format!("w4^{tag}"))?;
    }
    for &(i, t) in &vertex_targets {
        assign(format!("v{i}"), format!("e{t}"))?;
    }
    for i in 1..=cg.vertices {
        if !clique.contains(&i) {
            assign(format!("v{i}"), format!("w{i}"))?;
        }
    }
    let loads = mu.loads(inst.m());
    let raises = loads
        .iter()
        .zip(inst.capacities())
        .map(|(&l, &q)| l.saturating_sub(q))
        .collect();
    Ok((CapacityVector::from_raises(raises), mu))
}

/// Check the (2,2)-3SAT shape: three literals per clause, every variable
/// exactly twice positive and twice negative. Returns the variable count.
pub fn validate_sat22(f: &Formula) -> Result<usize> {
    if f.clauses.is_empty() {
        return Err(Error::BadSource("formula has no clauses".into()));
    }
    let mut max_var = 0usize;
    for clause in &f.clauses {
        for &lit in clause {
            if lit == 0 {
                return Err(Error::BadSource("literal 0 is not allowed".into()));
            }
            max_var = max_var.max(lit.unsigned_abs() as usize);
        }
    }
    let mut pos = vec![0usize; max_var + 1];
    let mut neg = vec![0usize; max_var + 1];
    for clause in &f.clauses {
        for &lit in clause {
            let v = lit.unsigned_abs() as usize;
            if lit > 0 {
                pos[v] += 1;
            } else {
                neg[v] += 1;
            }
        }
    }
    for v in 1..=max_var {
        if pos[v] != 2 || neg[v] != 2 {
            return Err(Error::BadSource(format!(
                "variable {v} occurs {}x positive and {}x negative; exactly 2/2 required",
                pos[v], neg[v]
            )));
        }
    }
    Ok(max_var)
}

const fn literal_school(lit: i32) -> (&'static str, u32) {
    if lit > 0 {
        ("x", lit as u32)
    } else {
        ("nx", (-lit) as u32)
    }
}

/// The (2,2)-3SAT encoding: a clause gadget per clause, a variable gadget
/// per variable, and a pair of literal schools per variable. Returns the
/// instance together with the two budgets (maximum increase 3, total
/// increase `3 * variables`).
pub fn gen_sat22(f: &Formula, eta: u32) -> Result<(Instance, u64, u64)> {
    if eta < 3 {
        return Err(Error::BadSource("eta must be at least 3".into()));
    }
    let n_vars = validate_sat22(f)?;
    let eta = eta as usize;
    let mut b = Builder::new();

    // Clause gadgets.
    for (j, clause) in f.clauses.iter().enumerate() {
        let j = j + 1;
        let tag = format!("C{j}");
        b.student(
            format!("u1^{tag}"),
            vec![format!("w1^{tag}"), format!("w2^{tag}")],
        );
        b.student(
            format!("u2^{tag}"),
            vec![format!("w1^{tag}"), format!("w2^{tag}"), format!("w3^{tag}")],
        );
        let mut c_pref: Vec<String> = clause
            .iter()
            .map(|&lit| {
                let (kind, v) = literal_school(lit);
                format!("{kind}{v}")
            })
            .collect();
        c_pref.push(format!("w2^{tag}"));
        c_pref.push(format!("w1^{tag}"));
        b.student(format!("c^{tag}"), c_pref);
        for i in 1..=2 {
            for l in 1..=eta {
                b.student(
                    format!("d{i}.{l}^{tag}"),
                    vec![format!("w{i}^{tag}"), format!("s{i}.{l}^{tag}")],
                );
            }
        }
    }
    // Variable gadgets.
    for i in 1..=n_vars {
        let tag = format!("X{i}");
        let z = |k: usize| format!("z{k}^{tag}");
        b.student(format!("p1^{tag}"), vec![z(1), z(2)]);
        b.student(format!("p2^{tag}"), vec![z(1), z(2), z(3)]);
        b.student(format!("p3^{tag}"), vec![z(2), z(1), z(4)]);
        b.student(format!("T^{tag}"), vec![format!("x{i}"), z(1)]);
        b.student(format!("F^{tag}"), vec![format!("nx{i}"), z(1), z(5)]);
        for gi in 1..=2 {
            for l in 1..=eta {
                b.student(
                    format!("e{gi}.{l}^{tag}"),
                    vec![z(gi), format!("t{gi}.{l}^{tag}")],
                );
            }
        }
        b.student(format!("y{i}"), vec![format!("x{i}")]);
        b.student(format!("ny{i}"), vec![format!("nx{i}")]);
    }

    // Clause-gadget schools.
    for (j, _) in f.clauses.iter().enumerate() {
        let j = j + 1;
        let tag = format!("C{j}");
        let mut w1 = vec![format!("c^{tag}"), format!("u1^{tag}")];
        w1.extend((1..=eta).map(|l| format!("d1.{l}^{tag}")));
        w1.push(format!("u2^{tag}"));
        b.school(format!("w1^{tag}"), 1, w1);
        let mut w2 = vec![format!("u1^{tag}"), format!("u2^{tag}")];
        w2.extend((1..=eta).map(|l| format!("d2.{l}^{tag}")));
        w2.push(format!("c^{tag}"));
        b.school(format!("w2^{tag}"), 1, w2);
        b.school(format!("w3^{tag}"), 1, vec![format!("u2^{tag}")]);
        for i in 1..=2 {
            for l in 1..=eta {
                b.school(format!("s{i}.{l}^{tag}"), 1, vec![format!("d{i}.{l}^{tag}")]);
            }
        }
    }
    // Variable-gadget schools.
    for i in 1..=n_vars {
        let tag = format!("X{i}");
        let mut z1 = vec![format!("T^{tag}"), format!("F^{tag}"), format!("p3^{tag}")];
        z1.extend((1..=eta).map(|l| format!("e1.{l}^{tag}")));
        z1.push(format!("p1^{tag}"));
        z1.push(format!("p2^{tag}"));
        b.school(format!("z1^{tag}"), 1, z1);
        let mut z2 = vec![format!("p1^{tag}")];
        z2.extend((1..=eta).map(|l| format!("e2.{l}^{tag}")));
        z2.push(format!("p2^{tag}"));
        z2.push(format!("p3^{tag}"));
        b.school(format!("z2^{tag}"), 1, z2);
        b.school(format!("z3^{tag}"), 1, vec![format!("p2^{tag}")]);
        b.school(format!("z4^{tag}"), 1, vec![format!("p3^{tag}")]);
        b.school(format!("z5^{tag}"), 1, vec![format!("F^{tag}")]);
        for gi in 1..=2 {
            for l in 1..=eta {
                b.school(format!("t{gi}.{l}^{tag}"), 1, vec![format!("e{gi}.{l}^{tag}")]);
            }
        }
    }
    // Literal schools: dummy, then the matching T/F student, then the clause
    // students of the literal's two occurrences in clause order.
    for i in 1..=n_vars {
        for (kind, dummy, guard) in [("x", "y", "T"), ("nx", "ny", "F")] {
            let mut prio = vec![format!("{dummy}{i}"), format!("{guard}^X{i}")];
            for (j, clause) in f.clauses.iter().enumerate() {
                for &lit in clause {
                    let (k, v) = literal_school(lit);
                    if k == kind && v as usize == i {
                        prio.push(format!("c^C{}", j + 1));
                    }
                }
            }
            b.school(format!("{kind}{i}"), 1, prio);
        }
    }

    let inst = b.build()?;
    Ok((inst, 3, 3 * n_vars as u64))
}

/// Constructive direction of the 3SAT encoding: from a satisfying
/// assignment build the increase vector (three seats on one literal school
/// per variable) and a matching that is stable, perfect, and efficient.
pub fn sat22_witness(
    inst: &Instance,
    f: &Formula,
    assignment: &[bool],
) -> Result<(CapacityVector, Matching)> {
    let n_vars = validate_sat22(f)?;
    if assignment.len() != n_vars {
        return Err(Error::BadSource("assignment length mismatch".into()));
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        let satisfied = clause.iter().any(|&lit| {
            let v = lit.unsigned_abs() as usize;
            (lit > 0) == assignment[v - 1]
        });
        if !satisfied {
            return Err(Error::BadSource(format!(
                "assignment does not satisfy clause {}",
                j + 1
            )));
        }
    }

    let mut raises = vec![0u32; inst.m()];
    let mut mu = Matching::empty(inst.n());
    let mut assign = |mu: &mut Matching, student: String, school: String| -> Result<()> {
        let u = inst
            .student_index(&student)
            .ok_or_else(|| Error::UnknownIdentifier(student.clone()))?;
        let w = inst
            .school_index(&school)
            .ok_or_else(|| Error::UnknownIdentifier(school))?;
        mu.set(u, Some(w));
        Ok(())
    };

    let eta = inst
        .school_index("s1.3^C1")
        .map(|_| {
            let mut l = 3;
            while inst.school_index(&format!("s1.{}^C1", l + 1)).is_some() {
                l += 1;
            }
            l
        })
        .ok_or_else(|| Error::BadSource("instance was not built with eta >= 3".into()))?;

    for i in 1..=n_vars {
        let tag = format!("X{i}");
        let taken = if assignment[i - 1] { "x" } else { "nx" };
        let w = inst
            .school_index(&format!("{taken}{i}"))
            .ok_or_else(|| Error::UnknownIdentifier(format!("{taken}{i}")))?;
        raises[w] = 3;
        assign(&mut mu, format!("y{i}"), format!("x{i}"))?;
        assign(&mut mu, format!("ny{i}"), format!("nx{i}"))?;
        if assignment[i - 1] {
            assign(&mut mu, format!("T^{tag}"), format!("x{i}"))?;
            assign(&mut mu, format!("F^{tag}"), format!("z1^{tag}"))?;
        } else {
            assign(&mut mu, format!("F^{tag}"), format!("nx{i}"))?;
            assign(&mut mu, format!("T^{tag}"), format!("z1^{tag}"))?;
        }
        assign(&mut mu, format!("p1^{tag}"), format!("z2^{tag}"))?;
        assign(&mut mu, format!("p2^{tag}"), format!("z3^{tag}"))?;
        assign(&mut mu, format!("p3^{tag}"), format!("z4^{tag}"))?;
        for gi in 1..=2 {
            for l in 1..=eta {
                assign(
                    &mut mu,
                    format!("e{gi}.{l}^{tag}"),
                    format!("t{gi}.{l}^{tag}"),
                )?;
            }
        }
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        let j = j + 1;
        let tag = format!("C{j}");
        let first_true = clause
            .iter()
            .find(|&&lit| {
                let v = lit.unsigned_abs() as usize;
                (lit > 0) == assignment[v - 1]
            })
            .expect("assignment satisfies every clause");
        let (kind, v) = literal_school(*first_true);
        assign(&mut mu, format!("c^{tag}"), format!("{kind}{v}"))?;
        assign(&mut mu, format!("u1^{tag}"), format!("w1^{tag}"))?;
        assign(&mut mu, format!("u2^{tag}"), format!("w2^{tag}"))?;
        for i in 1..=2 {
            for l in 1..=eta {
                assign(&mut mu, format!("d{i}.{l}^{tag}"), format!("s{i}.{l}^{tag}"))?;
            }
        }
    }
    Ok((CapacityVector::from_raises(raises), mu))
}

/// Seeded reproducible random instance: sample each student's preference
/// list, derive school membership from it, and shuffle each school's
/// priorities. A school nobody sampled is appended to the preference list of
/// a student chosen by index so that no priority list is empty.
pub fn gen_random(
    n: usize,
    m: usize,
    cap_range: (u32, u32),
    pref_len_range: (usize, usize),
    seed: u64,
) -> Result<Instance> {
    if n == 0 || m == 0 {
        return Err(Error::BadSource("need at least one student and school".into()));
    }
    let (cap_lo, cap_hi) = cap_range;
    let (len_lo, len_hi) = pref_len_range;
    if cap_lo == 0 || cap_lo > cap_hi || len_lo == 0 || len_lo > len_hi {
        return Err(Error::BadSource("invalid capacity or length range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let capacities: Vec<u32> = (0..m).map(|_| rng.gen_range(cap_lo..=cap_hi)).collect();
    let mut prefs: Vec<Vec<usize>> = Vec::with_capacity(n);
    for _ in 0..n {
        let len = rng.gen_range(len_lo..=len_hi).min(m);
        let mut pool: Vec<usize> = (0..m).collect();
        pool.shuffle(&mut rng);
        pool.truncate(len);
        prefs.push(pool);
    }
    for w in 0..m {
        if !prefs.iter().any(|p| p.contains(&w)) {
            prefs[w % n].push(w);
        }
    }
    let mut prios: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (u, pref) in prefs.iter().enumerate() {
        for &w in pref {
            prios[w].push(u);
        }
    }
    for prio in prios.iter_mut() {
        prio.shuffle(&mut rng);
    }

    let students: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
    let schools: Vec<(String, u32)> = (1..=m)
        .map(|j| (format!("w{j}"), capacities[j - 1]))
        .collect();
    let pref_names: Vec<(String, Vec<String>)> = prefs
        .iter()
        .enumerate()
        .map(|(u, list)| {
            (
                students[u].clone(),
                list.iter().map(|&w| schools[w].0.clone()).collect(),
            )
        })
        .collect();
    let prio_names: Vec<(String, Vec<String>)> = prios
        .iter()
        .enumerate()
        .map(|(w, list)| {
            (
                schools[w].0.clone(),
                list.iter().map(|&u| students[u].clone()).collect(),
            )
        })
        .collect();
    Instance::new(students, schools, &pref_names, &prio_names)
}

// ---------------------------------------------------------------------
// Brute-force solvers for the source problems, used as oracles when
// checking the constructive directions of the encodings.
// ---------------------------------------------------------------------

/// Size of a minimum vertex cover, by subset enumeration.
pub fn minimum_vertex_cover(g: &Graph) -> usize {
    let n = g.vertices;
    let mut best = n;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let covers = g
            .edges
            .iter()
            .all(|&(i, j)| mask & (1 << (i - 1)) != 0 || mask & (1 << (j - 1)) != 0);
        if covers {
            best = size;
        }
    }
    best
}

/// Size of a smallest set cover, or `None` if some element is uncovered.
pub fn smallest_set_cover(ss: &SetSystem) -> Option<usize> {
    let m = ss.sets.len();
    let full: u64 = if ss.universe == 64 {
        u64::MAX
    } else {
        (1u64 << ss.universe) - 1
    };
    let masks: Vec<u64> = ss
        .sets
        .iter()
        .map(|s| s.iter().fold(0u64, |acc, &e| acc | (1 << (e - 1))))
        .collect();
    let mut best: Option<usize> = None;
    for pick in 0u64..(1 << m) {
        let size = pick.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let mut covered = 0u64;
        for (j, &mask) in masks.iter().enumerate() {
            if pick & (1 << j) != 0 {
                covered |= mask;
            }
        }
        if covered == full {
            best = Some(size);
        }
    }
    best
}

/// A multicolored clique (one vertex per color class), if one exists.
pub fn find_multicolored_clique(cg: &ColoredGraph) -> Option<Vec<usize>> {
    let h = *cg.colors.iter().max()?;
    let classes: Vec<Vec<usize>> = (1..=h)
        .map(|c| {
            (1..=cg.vertices)
                .filter(|&v| cg.colors[v - 1] == c)
                .collect()
        })
        .collect();
    if classes.iter().any(Vec::is_empty) {
        return None;
    }
    let adjacent = |a: usize, b: usize| {
        cg.edges
            .iter()
            .any(|&(i, j)| (i == a && j == b) || (i == b && j == a))
    };
    let mut pick = vec![0usize; h];
    fn rec(
        classes: &[Vec<usize>],
        adjacent: &dyn Fn(usize, usize) -> bool,
        pick: &mut Vec<usize>,
        depth: usize,
    ) -> Option<Vec<usize>> {
        if depth == classes.len() {
            return Some(pick.clone());
        }
        for &v in &classes[depth] {
            if pick[..depth].iter().all(|&u| adjacent(u, v)) {
                pick[depth] = v;
                if let Some(hit) = rec(classes, adjacent, pick, depth + 1) {
                    return Some(hit);
                }
            }
        }
        None
    }
    rec(&classes, &adjacent, &mut pick, 0)
}

/// A satisfying assignment found by exhaustive search, if any.
pub fn satisfying_assignment(f: &Formula) -> Option<Vec<bool>> {
    let n = f
        .clauses
        .iter()
        .flatten()
        .map(|l| l.unsigned_abs() as usize)
        .max()?;
    for mask in 0u64..(1 << n) {
        let assignment: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        let ok = f.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize;
                (lit > 0) == assignment[v - 1]
            })
        });
        if ok {
            return Some(assignment);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::da::{is_stable, student_optimal_stable};
    use crate::efficiency::is_efficient;
    use crate::instance::instance_stats;
    use crate::matching::is_feasible;

    /// The smallest (2,2)-3SAT formula: three variables, four clauses,
    /// satisfied by setting everything true.
    pub(crate) fn toy_formula() -> Formula {
        Formula {
            clauses: vec![[1, 2, 3], [1, -2, -3], [-1, 2, -3], [-1, -2, 3]],
        }
    }

    #[test]
    fn named_examples_have_the_documented_shapes() {
        let intro = gen_example("intro", &[]).unwrap();
        assert_eq!((intro.n(), intro.m()), (5, 3));
        let se = gen_example("stable-eff", &[]).unwrap();
        assert_eq!((se.n(), se.m()), (5, 5));
        assert!(se.capacities().iter().all(|&c| c == 1));
        let gap = gen_example("minmaxse-gap", &[]).unwrap();
        assert_eq!((gap.n(), gap.m()), (15, 15));
        assert!(gen_example("nope", &[]).is_err());
    }

    #[test]
    fn vertex_cover_triangle_has_the_documented_size() {
        let g = Graph {
            vertices: 3,
            edges: vec![(1, 2), (1, 3), (2, 3)],
        };
        let (inst, budget) = gen_vertex_cover(&g, 2).unwrap();
        assert_eq!(budget, 5);
        assert_eq!(inst.n(), 3 + 6 + 3);
        assert_eq!(inst.m(), 6 + 3);
        let ctx = student_optimal_stable(&inst, &CapacityVector::zero(inst.m()));
        let unmatched: Vec<&str> = ctx
            .unassigned
            .iter()
            .map(|&u| inst.student_name(u))
            .collect();
        assert_eq!(unmatched, ["e1", "e2", "e3"]);
    }

    #[test]
    fn vertex_cover_structural_bounds_hold_on_low_degree_graphs() {
        let g = Graph {
            vertices: 4,
            edges: vec![(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)],
        };
        let (inst, _) = gen_vertex_cover(&g, 2).unwrap();
        let stats = instance_stats(&inst);
        assert!(inst.capacities().iter().all(|&c| c == 1));
        assert!(stats.max_pref_len <= 4);
        assert!(stats.max_prio_len <= 3);
        let ctx = student_optimal_stable(&inst, &CapacityVector::zero(inst.m()));
        assert_eq!(ctx.max_unassigned_pref_len, 2);
    }

    #[test]
    fn edgeless_graph_needs_nothing() {
        let g = Graph {
            vertices: 2,
            edges: vec![],
        };
        let (inst, _) = gen_vertex_cover(&g, 0).unwrap();
        let ctx = student_optimal_stable(&inst, &CapacityVector::zero(inst.m()));
        assert!(ctx.unassigned.is_empty());
    }

    #[test]
    fn set_cover_rejects_uncoverable_elements() {
        let ss = SetSystem {
            universe: 2,
            sets: vec![vec![1]],
        };
        assert!(matches!(gen_set_cover(&ss, 1), Err(Error::BadSource(_))));
    }

    #[test]
    fn set_cover_example_budget_and_shape() {
        let ss = SetSystem {
            universe: 2,
            sets: vec![vec![1], vec![1, 2]],
        };
        let (inst, budget) = gen_set_cover(&ss, 1).unwrap();
        assert_eq!(budget, 4);
        // Element students are exactly the unmatched ones.
        let ctx = student_optimal_stable(&inst, &CapacityVector::zero(inst.m()));
        let unmatched: Vec<&str> = ctx
            .unassigned
            .iter()
            .map(|&u| inst.student_name(u))
            .collect();
        assert_eq!(unmatched, ["e1", "e2"]);
    }

    #[test]
    fn mcc_on_a_single_cross_edge() {
        let cg = ColoredGraph {
            vertices: 2,
            edges: vec![(1, 2)],
            colors: vec![1, 2],
        };
        let (inst, budget) = gen_mcc(&cg).unwrap();
        assert_eq!(budget, 3);
        let clique = find_multicolored_clique(&cg).unwrap();
        let (r, mu) = mcc_witness_from_clique(&inst, &cg, &clique).unwrap();
        assert_eq!(r.sum(), 3);
        assert!(mu.is_perfect());
        assert!(is_feasible(&inst, &mu, &r));
        assert!(is_stable(&inst, &mu, &r));
    }

    #[test]
    fn mcc_requires_cross_edges_for_every_pair() {
        let cg = ColoredGraph {
            vertices: 3,
            edges: vec![(1, 2)],
            colors: vec![1, 1, 2],
        };
        assert!(matches!(gen_mcc(&cg), Err(Error::BadSource(_))));
    }

    #[test]
    fn se_mcc_witness_is_stable_perfect_efficient() {
        let cg = ColoredGraph {
            vertices: 2,
            edges: vec![(1, 2)],
            colors: vec![1, 2],
        };
        let (inst, budget) = gen_se_mcc(&cg).unwrap();
        assert_eq!(budget, 3);
        let clique = find_multicolored_clique(&cg).unwrap();
        let (r, mu) = se_mcc_witness_from_clique(&inst, &cg, &clique).unwrap();
        assert_eq!(r.sum(), 3);
        assert!(mu.is_perfect());
        assert!(is_stable(&inst, &mu, &r));
        assert!(is_efficient(&inst, &mu, &r).unwrap().is_efficient());
        // The initial stable matching is already perfect here.
        let ctx = student_optimal_stable(&inst, &CapacityVector::zero(inst.m()));
        assert!(ctx.unassigned.is_empty());
    }

    #[test]
    fn sat22_shape_matches_the_parameters() {
        let f = toy_formula();
        let (inst, kmax, kplus) = gen_sat22(&f, 3).unwrap();
        assert_eq!(kmax, 3);
        assert_eq!(kplus, 9);
        let stats = instance_stats(&inst);
        assert_eq!(stats.max_pref_len, 5);
        assert_eq!(stats.max_prio_len, 8);
        let ctx = student_optimal_stable(&inst, &CapacityVector::zero(inst.m()));
        assert!(ctx.unassigned.is_empty(), "initial matching is perfect");
    }

    #[test]
    fn sat22_witness_is_stable_perfect_efficient_with_claimed_norms() {
        let f = toy_formula();
        let (inst, _, _) = gen_sat22(&f, 3).unwrap();
        let assignment = satisfying_assignment(&f).unwrap();
        let (r, mu) = sat22_witness(&inst, &f, &assignment).unwrap();
        assert_eq!(r.max(), 3);
        assert_eq!(r.sum(), 9);
        assert!(mu.is_perfect());
        assert!(is_stable(&inst, &mu, &r));
        assert!(is_efficient(&inst, &mu, &r).unwrap().is_efficient());
    }

    #[test]
    fn sat22_rejects_malformed_formulas() {
        let f = Formula {
            clauses: vec![[1, 2, 3], [1, -2, -3]],
        };
        assert!(matches!(gen_sat22(&f, 3), Err(Error::BadSource(_))));
        assert!(matches!(
            gen_sat22(&toy_formula(), 2),
            Err(Error::BadSource(_))
        ));
    }

    #[test]
    fn random_instances_are_reproducible() {
        let a = gen_random(5, 4, (1, 2), (1, 4), 42).unwrap();
        let b = gen_random(5, 4, (1, 2), (1, 4), 42).unwrap();
        assert_eq!(a, b);
        let c = gen_random(5, 4, (1, 2), (1, 4), 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn full_length_preferences_cover_every_school() {
        let inst = gen_random(4, 3, (1, 1), (3, 3), 7).unwrap();
        assert_eq!(instance_stats(&inst).max_pref_len, 3);
    }

    #[test]
    fn unit_length_preferences_trigger_the_single_option_case() {
        let inst = gen_random(6, 3, (1, 1), (1, 1), 11).unwrap();
        let ctx = student_optimal_stable(&inst, &CapacityVector::zero(inst.m()));
        assert!(ctx.max_unassigned_pref_len <= 1);
    }

    #[test]
    fn source_oracles_agree_with_hand_checks() {
        let triangle = Graph {
            vertices: 3,
            edges: vec![(1, 2), (1, 3), (2, 3)],
        };
        assert_eq!(minimum_vertex_cover(&triangle), 2);
        let ss = SetSystem {
            universe: 2,
            sets: vec![vec![1], vec![1, 2]],
        };
        assert_eq!(smallest_set_cover(&ss), Some(1));
        assert!(satisfying_assignment(&toy_formula()).is_some());
        let no_clique = ColoredGraph {
            vertices: 4,
            edges: vec![(1, 2), (2, 3), (3, 4)],
            colors: vec![1, 2, 3, 1],
        };
        assert!(find_multicolored_clique(&no_clique).is_none());
    }
}
