//! Enumeration of capacity-increase vectors for the exact solvers.
//!
//! Vectors are visited in descending document-order lexicographic order
//! (the first school takes as much as possible first), so the first hit is
//! deterministic and matches the tie-break the solvers document.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Limits for the exponential searches: a cap on evaluated candidate vectors
/// and the number of worker threads for candidate evaluation.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub guard: u64,
    pub threads: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            guard: 10_000_000,
            threads: 1,
        }
    }
}

impl SearchLimits {
    pub fn with_guard(guard: u64) -> Self {
        SearchLimits { guard, threads: 1 }
    }
}

/// All vectors with the given per-coordinate bounds summing to `total`, in
/// descending lexicographic order.
pub(crate) struct Compositions {
    bounds: Vec<u32>,
    /// suffix_room[i] = sum of bounds[i..]
    suffix_room: Vec<u64>,
    current: Option<Vec<u32>>,
    total: u64,
    started: bool,
}

impl Compositions {
    pub fn new(bounds: Vec<u32>, total: u64) -> Self {
        let mut suffix_room = vec![0u64; bounds.len() + 1];
        for i in (0..bounds.len()).rev() {
            suffix_room[i] = suffix_room[i + 1] + u64::from(bounds[i]);
        }
        Compositions {
            bounds,
            suffix_room,
            current: None,
            total,
            started: false,
        }
    }

    /// Greedily pour `amount` into positions `from..`, earliest first.
    fn fill(&self, out: &mut [u32], from: usize, mut amount: u64) {
        for i in from..out.len() {
            let take = amount.min(u64::from(self.bounds[i]));
            out[i] = take as u32;
            amount -= take;
        }
        debug_assert_eq!(amount, 0);
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if !self.started {
            self.started = true;
            if self.total > self.suffix_room[0] {
                return None;
            }
            let mut first = vec![0u32; self.bounds.len()];
            self.fill(&mut first, 0, self.total);
            self.current = Some(first.clone());
            return Some(first);
        }
        let mut cur = self.current.take()?;
        let m = self.bounds.len();
        // Move one unit from the rightmost donor whose suffix can absorb it.
        let mut tail: u64 = 0;
        let mut donor = None;
        for i in (0..m).rev() {
            if i + 1 < m {
                tail += u64::from(cur[i + 1]);
            }
            if i == m - 1 {
                continue;
            }
            if cur[i] > 0 && tail + 1 <= self.suffix_room[i + 1] {
                donor = Some((i, tail + 1));
                break;
            }
        }
        let (i, carry) = donor?;
        cur[i] -= 1;
        self.fill(&mut cur, i + 1, carry);
        self.current = Some(cur.clone());
        Some(cur)
    }
}

/// All vectors `v` with `v[i] <= caps[i]`, in descending lexicographic
/// order, starting from the all-max vector.
pub(crate) struct BoundedVectors {
    caps: Vec<u32>,
    current: Option<Vec<u32>>,
    started: bool,
}

impl BoundedVectors {
    pub fn new(caps: Vec<u32>) -> Self {
        BoundedVectors {
            caps,
            current: None,
            started: false,
        }
    }
}

impl Iterator for BoundedVectors {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if !self.started {
            self.started = true;
            self.current = Some(self.caps.clone());
            return self.current.clone();
        }
        let cur = self.current.as_mut()?;
        for i in (0..cur.len()).rev() {
            if cur[i] > 0 {
                cur[i] -= 1;
                for j in i + 1..cur.len() {
                    cur[j] = self.caps[j];
                }
                return self.current.clone();
            }
        }
        self.current = None;
        None
    }
}

const CHUNK: usize = 4096;

/// Evaluate candidates in order and return the first hit, charging each
/// evaluated candidate against the guard. With more than one thread,
/// candidates are evaluated in parallel chunks; the lowest candidate index
/// still wins, so the result is identical to the sequential scan.
pub(crate) fn first_hit<I, F, R>(
    candidates: I,
    limits: &SearchLimits,
    evaluated: &mut u64,
    eval: F,
) -> Result<Option<(Vec<u32>, R)>>
where
    I: Iterator<Item = Vec<u32>>,
    F: Fn(&[u32]) -> Option<R> + Sync,
    R: Send,
{
    if limits.threads <= 1 {
        for cand in candidates {
            *evaluated += 1;
            if *evaluated > limits.guard {
                return Err(Error::GuardExceeded {
                    required: u128::from(*evaluated),
                    guard: limits.guard,
                });
            }
            if let Some(r) = eval(&cand) {
                return Ok(Some((cand, r)));
            }
        }
        return Ok(None);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(limits.threads)
        .build()
        .map_err(|e| Error::Lp(format!("thread pool: {e}")))?;
    let mut candidates = candidates;
    loop {
        let chunk: Vec<Vec<u32>> = candidates.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok(None);
        }
        *evaluated += chunk.len() as u64;
        if *evaluated > limits.guard {
            return Err(Error::GuardExceeded {
                required: u128::from(*evaluated),
                guard: limits.guard,
            });
        }
        let hit = pool.install(|| {
            chunk
                .par_iter()
                .enumerate()
                .filter_map(|(i, cand)| eval(cand).map(|r| (i, r)))
                .min_by_key(|(i, _)| *i)
        });
        if let Some((i, r)) = hit {
            return Ok(Some((chunk[i].clone(), r)));
        }
    }
}
