//! Exhaustive search for small k-orthogonal matrices.
//!
//! Candidates are full-rank `m × n` matrices whose columns are distinct nonzero
//! vectors (non-degenerate, Z-distance at least 3). Columns are taken as an
//! ascending combination of the integers `1..2^m`, bit `i` of a value being the
//! entry in row `i`, so every column set is visited once.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BitMat;

/// Largest row count the search kernel accepts.
pub const MAX_ROWS: usize = 20;
/// Largest column count (rows are packed in one `u64`).
pub const MAX_COLS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Prune {
    None,
    /// Only column sets containing the unit vectors `e_0..e_{m-1}`. Every
    /// full-rank column set is mapped onto such a set by some element of
    /// GL(m, 2), and k-orthogonality depends only on the row space.
    Orbit,
}

#[derive(Clone, Debug, Default)]
pub struct Budget {
    pub time: Option<Duration>,
    pub max_candidates: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub k: usize,
    pub m_min: usize,
    pub m_max: usize,
    pub n_max: usize,
    pub budget: Budget,
    pub prune: Prune,
}

impl SearchSpace {
    pub fn new(k: usize, m_min: usize, m_max: usize, n_max: usize) -> Self {
        SearchSpace {
            k,
            m_min,
            m_max,
            n_max,
            budget: Budget::default(),
            prune: Prune::None,
        }
    }

    pub fn with_prune(mut self, prune: Prune) -> Self {
        self.prune = prune;
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    /// `2^(k+1) − 1`, the size of the minimal k-orthogonal matrix.
    pub fn minimal_size(&self) -> u128 {
        (1u128 << (self.k + 1)) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxResult {
    pub m: usize,
    pub n: usize,
    /// Candidates checked (full rank, distinct nonzero columns).
    pub candidates: u64,
    pub witnesses: u64,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedRows {
    pub m: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub m: usize,
    pub n: usize,
    /// Column values; bit `i` is the entry in row `i`.
    pub columns: Vec<u64>,
    /// Rows as `0`/`1` strings.
    pub matrix: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub schema: u32,
    pub k: usize,
    pub m_min: usize,
    pub m_max: usize,
    pub n_max: usize,
    pub prune: Prune,
    pub boxes: Vec<BoxResult>,
    pub skipped: Vec<SkippedRows>,
    pub witnesses: Vec<Witness>,
    pub total_candidates: u64,
    pub elapsed_seconds: f64,
    /// Every admissible column set in the scanned boxes was visited or soundly pruned.
    pub complete: bool,
    /// Complete, witness-free and entirely below `2^(k+1) − 1` columns.
    pub confirms_minimality: bool,
}

const WITNESS_LIMIT: usize = 16;

fn validate(space: &SearchSpace) -> Result<()> {
    if space.k < 1 {
        return Err(Error::range("orthogonality level k", "k must be at least 1"));
    }
    if space.m_min > space.m_max {
        return Err(Error::range("row range", format!("m_min {} > m_max {}", space.m_min, space.m_max)));
    }
    if space.m_max > MAX_ROWS {
        return Err(Error::range("row count m", format!("m_max {} exceeds {MAX_ROWS}", space.m_max)));
    }
    if space.n_max > MAX_COLS {
        return Err(Error::range("column count n", format!("n_max {} exceeds {MAX_COLS}", space.n_max)));
    }
    Ok(())
}

/// Full-rank `m × n` candidates with distinct nonzero columns, in lexicographic column order.
pub fn enumerate_candidates(m: usize, n: usize) -> impl Iterator<Item = BitMat> {
    assert!((1..=MAX_ROWS).contains(&m), "m = {m} outside 1..={MAX_ROWS}");
    let values = (1u64 << m) - 1;
    Combinations::new(values as usize, n)
        .map(|c| c.into_iter().map(|i| i as u64 + 1).collect::<Vec<u64>>())
        .filter(move |cols| column_rank(cols) == m)
        .map(move |cols| BitMat::from_column_ints(m, &cols))
}

/// Ascending `k`-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

fn column_rank(cols: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &c in cols {
        if insert(&mut basis, c) {
            rank += 1;
        }
    }
    rank
}

/// Inserts into an XOR basis indexed by leading bit; true if independent.
#[inline]
fn insert(basis: &mut [u64; 64], mut v: u64) -> bool {
    while v != 0 {
        let top = 63 - v.leading_zeros() as usize;
        if basis[top] == 0 {
            basis[top] = v;
            return true;
        }
        v ^= basis[top];
    }
    false
}

/// k-orthogonality of rows packed as bit masks over the columns.
pub fn korth_rows(rows: &[u64], k: usize) -> bool {
    fn go(rows: &[u64], k: usize, start: usize, acc: u64, depth: usize) -> bool {
        for i in start..rows.len() {
            let next = acc & rows[i];
            if next.count_ones() % 2 == 1 {
                return false;
            }
            if depth + 1 < k && next != 0 && !go(rows, k, i + 1, next, depth + 1) {
                return false;
            }
        }
        true
    }
    go(rows, k, 0, u64::MAX, 0)
}

struct Shared {
    stop: AtomicBool,
    candidates: AtomicU64,
    started: Instant,
    budget: Budget,
}

impl Shared {
    fn over_budget(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        let over = self
            .budget
            .max_candidates
            .is_some_and(|max| self.candidates.load(Ordering::Relaxed) >= max)
            || self.budget.time.is_some_and(|t| self.started.elapsed() >= t);
        if over {
            self.stop.store(true, Ordering::Relaxed);
        }
        over
    }
}

/// Per-chunk depth-first state.
struct Walker<'a> {
    m: usize,
    n: usize,
    k: usize,
    values: &'a [u64],
    rows: Vec<u64>,
    chosen: Vec<u64>,
    candidates: u64,
    found: Vec<Vec<u64>>,
    shared: &'a Shared,
    interrupted: bool,
}

impl Walker<'_> {
    fn push(&mut self, value: u64) {
        let col = self.chosen.len();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if (value >> i) & 1 == 1 {
                *row |= 1 << col;
            }
        }
        self.chosen.push(value);
    }

    fn pop(&mut self) {
        self.chosen.pop();
        let col = self.chosen.len();
        for row in self.rows.iter_mut() {
            *row &= !(1 << col);
        }
    }

    /// Chooses the remaining columns from `values[start..]`.
    fn walk(&mut self, start: usize, basis: [u64; 64], rank: usize) {
        if self.interrupted {
            return;
        }
        let remaining = self.n - self.chosen.len();
        if remaining == 0 {
            if rank == self.m {
                self.leaf();
            }
            return;
        }
        if rank + remaining < self.m {
            return;
        }
        for idx in start..=(self.values.len() - remaining) {
            let value = self.values[idx];
            let mut next_basis = basis;
            let independent = insert(&mut next_basis, value);
            self.push(value);
            self.walk(idx + 1, next_basis, rank + usize::from(independent));
            self.pop();
            if self.interrupted {
                return;
            }
        }
    }

    fn leaf(&mut self) {
        self.candidates += 1;
        if self.candidates % 4096 == 0 {
            self.shared.candidates.fetch_add(4096, Ordering::Relaxed);
            if self.shared.over_budget() {
                self.interrupted = true;
            }
        }
        if korth_rows(&self.rows, self.k) && self.found.len() < WITNESS_LIMIT {
            self.found.push(self.chosen.clone());
        }
    }
}

struct ChunkResult {
    candidates: u64,
    found: Vec<Vec<u64>>,
    interrupted: bool,
}

fn scan_box(m: usize, n: usize, k: usize, prune: Prune, shared: &Shared) -> (BoxResult, Vec<Vec<u64>>) {
    let all: Vec<u64> = (1u64..(1 << m)).collect();
    let (fixed, values): (Vec<u64>, Vec<u64>) = match prune {
        Prune::None => (Vec::new(), all),
        Prune::Orbit => {
            let units: Vec<u64> = (0..m).map(|i| 1u64 << i).collect();
            let rest = all.into_iter().filter(|v| v.count_ones() > 1).collect();
            (units, rest)
        }
    };
    let free = n - fixed.len();
    // Chunks: the first free column value (and the second, when there is one).
    let mut prefixes: Vec<Vec<usize>> = Vec::new();
    match free {
        0 => prefixes.push(Vec::new()),
        1 => prefixes.extend((0..values.len()).map(|a| vec![a])),
        _ => {
            for a in 0..values.len() {
                for b in (a + 1)..values.len() {
                    if values.len() - b >= free - 1 {
                        prefixes.push(vec![a, b]);
                    }
                }
            }
        }
    }
    let results: Vec<ChunkResult> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut walker = Walker {
                m,
                n,
                k,
                values: &values,
                rows: vec![0; m],
                chosen: Vec::with_capacity(n),
                candidates: 0,
                found: Vec::new(),
                shared,
                interrupted: shared.over_budget(),
            };
            if walker.interrupted {
                return ChunkResult {
                    candidates: 0,
                    found: Vec::new(),
                    interrupted: true,
                };
            }
            let mut basis = [0u64; 64];
            let mut rank = 0;
            for &v in fixed.iter().chain(prefix.iter().map(|&i| &values[i])) {
                rank += usize::from(insert(&mut basis, v));
                walker.push(v);
            }
            let start = prefix.last().map_or(0, |&i| i + 1);
            walker.walk(start, basis, rank);
            shared
                .candidates
                .fetch_add(walker.candidates % 4096, Ordering::Relaxed);
            ChunkResult {
                candidates: walker.candidates,
                found: walker.found,
                interrupted: walker.interrupted,
            }
        })
        .collect();
    let mut found: Vec<Vec<u64>> = results.iter().flat_map(|r| r.found.clone()).collect();
    found.truncate(WITNESS_LIMIT);
    let result = BoxResult {
        m,
        n,
        candidates: results.iter().map(|r| r.candidates).sum(),
        witnesses: results.iter().map(|r| r.found.len() as u64).sum(),
        complete: results.iter().all(|r| !r.interrupted),
    };
    (result, found)
}

/// Scans every `(m, n)` box of the space for k-orthogonal candidates.
pub fn minimality_search(space: &SearchSpace) -> Result<SearchReport> {
    validate(space)?;
    let shared = Shared {
        stop: AtomicBool::new(false),
        candidates: AtomicU64::new(0),
        started: Instant::now(),
        budget: space.budget.clone(),
    };
    let mut boxes = Vec::new();
    let mut skipped = Vec::new();
    let mut witnesses = Vec::new();
    for m in space.m_min..=space.m_max {
        if m <= space.k {
            skipped.push(SkippedRows {
                m,
                reason: format!(
                    "m = {m} <= k = {}: the product of all rows of a non-degenerate full-rank matrix isolates one column after row operations, so it cannot be m-orthogonal",
                    space.k
                ),
            });
            continue;
        }
        if m > space.n_max {
            skipped.push(SkippedRows {
                m,
                reason: format!("m = {m} > n_max = {}: no full-rank candidate exists", space.n_max),
            });
            continue;
        }
        let n_hi = space.n_max.min((1 << m) - 1);
        for n in m..=n_hi {
            let (result, found) = scan_box(m, n, space.k, space.prune, &shared);
            for cols in found {
                if witnesses.len() < WITNESS_LIMIT {
                    witnesses.push(Witness {
                        m,
                        n,
                        matrix: BitMat::from_column_ints(m, &cols)
                            .rows()
                            .iter()
                            .map(|r| r.to_string())
                            .collect(),
                        columns: cols,
                    });
                }
            }
            boxes.push(result);
        }
    }
    let complete = boxes.iter().all(|b| b.complete);
    let no_witness = boxes.iter().all(|b| b.witnesses == 0);
    Ok(SearchReport {
        schema: 1,
        k: space.k,
        m_min: space.m_min,
        m_max: space.m_max,
        n_max: space.n_max,
        prune: space.prune,
        total_candidates: boxes.iter().map(|b| b.candidates).sum(),
        boxes,
        skipped,
        witnesses,
        elapsed_seconds: shared.started.elapsed().as_secs_f64(),
        confirms_minimality: complete && no_witness && (space.n_max as u128) < space.minimal_size(),
        complete,
    })
}
