//! Independent sets: enumeration of maximal ones, the independence number,
//! and the well-covered decision.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::algebra::Ring;
use crate::cayley::UGraph;
use crate::error::{Error, Result};
use crate::sets::{sort_canonical, Bits, VertexSet};

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None, max_time: None };

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n), max_time: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumStatus {
    Complete,
    BudgetExhausted,
    /// The consumer asked to stop.
    Stopped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumSummary {
    pub status: EnumStatus,
    pub nodes: u64,
    pub emitted: u64,
}

enum Halt {
    Budget,
    Stopped,
}

/// Complement adjacency without loops: `non[v]` holds the vertices that may
/// share an independent set with `v`.
fn complement_rows(g: &UGraph) -> Vec<Bits> {
    let n = g.vertex_count();
    let full = Bits::full(n);
    (0..n)
        .map(|v| {
            let mut row = full.and_not(g.neighbors(v));
            row.remove(v);
            row
        })
        .collect()
}

struct Meter<'a> {
    budget: Budget,
    start: Option<Instant>,
    nodes: &'a AtomicU64,
}

impl<'a> Meter<'a> {
    fn new(budget: Budget, nodes: &'a AtomicU64) -> Self {
        let start = budget.max_time.map(|_| Instant::now());
        Meter { budget, start, nodes }
    }

    #[inline]
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.max_nodes.is_some_and(|m| n > m) {
            return false;
        }
        match (self.start, self.budget.max_time) {
            (Some(s), Some(t)) if n.is_multiple_of(256) => s.elapsed() <= t,
            _ => true,
        }
    }
}

struct Enumerator<'a, F> {
    non: &'a [Bits],
    meter: Meter<'a>,
    emitted: u64,
    emit: F,
}

impl<F: FnMut(VertexSet) -> ControlFlow<()>> Enumerator<'_, F> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: Bits, mut x: Bits) -> ControlFlow<Halt> {
        if !self.meter.tick() {
            return ControlFlow::Break(Halt::Budget);
        }
        if p.is_empty() {
            if x.is_empty() {
                self.emitted += 1;
                if (self.emit)(r.iter().copied().collect()).is_break() {
                    return ControlFlow::Break(Halt::Stopped);
                }
            }
            return ControlFlow::Continue(());
        }
        let pivot = choose_pivot(self.non, &p, &x);
        let candidates = p.and_not(&self.non[pivot]);
        for v in candidates.iter() {
            r.push(v);
            self.expand(r, p.and(&self.non[v]), x.and(&self.non[v]))?;
            r.pop();
            p.remove(v);
            x.insert(v);
        }
        ControlFlow::Continue(())
    }
}

/// Vertex of `P ∪ X` with the most candidates among its non-neighbours,
/// ties to the lowest index.
fn choose_pivot(non: &[Bits], p: &Bits, x: &Bits) -> usize {
    p.or(x)
        .iter()
        .max_by_key(|&u| (p.and_count(&non[u]), Reverse(u)))
        .expect("P is nonempty")
}

/// Streams every maximal independent set exactly once, in a fixed order.
///
/// This is Bron-Kerbosch with pivoting run on the complement graph. The
/// callback may return `ControlFlow::Break` to stop early.
pub fn enumerate_maximal_independent<F>(g: &UGraph, budget: Budget, emit: F) -> EnumSummary
where
    F: FnMut(VertexSet) -> ControlFlow<()>,
{
    let non = complement_rows(g);
    let nodes = AtomicU64::new(0);
    let mut e = Enumerator { non: &non, meter: Meter::new(budget, &nodes), emitted: 0, emit };
    let n = g.vertex_count();
    let status = match e.expand(&mut Vec::new(), Bits::full(n), Bits::new(n)) {
        ControlFlow::Continue(()) => EnumStatus::Complete,
        ControlFlow::Break(Halt::Budget) => EnumStatus::BudgetExhausted,
        ControlFlow::Break(Halt::Stopped) => EnumStatus::Stopped,
    };
    EnumSummary { status, nodes: nodes.load(Ordering::Relaxed), emitted: e.emitted }
}

/// Top-level branches of the search tree, each with its own `(v, P, X)`.
fn root_branches(non: &[Bits], n: usize) -> Vec<(usize, Bits, Bits)> {
    let mut p = Bits::full(n);
    let mut x = Bits::new(n);
    if n == 0 {
        return Vec::new();
    }
    let pivot = choose_pivot(non, &p, &x);
    let mut out = Vec::new();
    for v in p.and_not(&non[pivot]).iter() {
        out.push((v, p.and(&non[v]), x.and(&non[v])));
        p.remove(v);
        x.insert(v);
    }
    out
}

/// Collects all maximal independent sets using `threads` workers, one
/// top-level branch per task. The result is sorted canonically, so it does
/// not depend on scheduling. The node budget is shared by all workers.
pub fn enumerate_parallel(g: &UGraph, budget: Budget, threads: usize) -> (Vec<VertexSet>, EnumSummary) {
    let n = g.vertex_count();
    if threads <= 1 || n == 0 {
        let mut sets = Vec::new();
        let summary = enumerate_maximal_independent(g, budget, |s| {
            sets.push(s);
            ControlFlow::Continue(())
        });
        sort_canonical(&mut sets);
        return (sets, summary);
    }
    let non = complement_rows(g);
    let nodes = AtomicU64::new(1);
    let branches = root_branches(&non, n);
    let run = |(v, p, x): (usize, Bits, Bits)| {
        let mut found = Vec::new();
        let mut e = Enumerator {
            non: &non,
            meter: Meter::new(budget, &nodes),
            emitted: 0,
            emit: |s| {
                found.push(s);
                ControlFlow::Continue(())
            },
        };
        let flow = e.expand(&mut vec![v], p, x);
        (found, flow.is_continue())
    };
    let results: Vec<(Vec<VertexSet>, bool)> = run_tasks(branches, threads, run);
    let complete = results.iter().all(|(_, ok)| *ok);
    let mut sets: Vec<VertexSet> = results.into_iter().flat_map(|(s, _)| s).collect();
    sort_canonical(&mut sets);
    let summary = EnumSummary {
        status: if complete { EnumStatus::Complete } else { EnumStatus::BudgetExhausted },
        nodes: nodes.into_inner(),
        emitted: sets.len() as u64,
    };
    (sets, summary)
}

#[cfg(feature = "parallel")]
fn run_tasks<T, R, F>(tasks: Vec<T>, threads: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| tasks.into_par_iter().map(&f).collect()),
        Err(_) => tasks.into_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_tasks<T, R, F>(tasks: Vec<T>, _threads: usize, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    tasks.into_iter().map(f).collect()
}

/// All maximal independent sets in canonical order, or an error if the
/// budget runs out.
pub fn maximal_independent_sets(g: &UGraph, budget: Budget) -> Result<Vec<VertexSet>> {
    let (sets, summary) = enumerate_parallel(g, budget, 1);
    match summary.status {
        EnumStatus::Complete => Ok(sets),
        _ => Err(Error::BudgetExhausted),
    }
}

/// Adds vertices in increasing index order whenever they have no neighbour
/// in the set yet. The result is maximal and contains `seed`.
pub fn greedy_extend(g: &UGraph, seed: &VertexSet) -> Result<VertexSet> {
    let n = g.vertex_count();
    if seed.iter().any(|v| v >= n) || !g.is_independent(seed) {
        return Err(Error::NotIndependent);
    }
    let mut set = seed.to_bits(n);
    for v in 0..n {
        if !set.contains(v) && !g.neighbors(v).intersects(&set) {
            set.insert(v);
        }
    }
    Ok(VertexSet::from_bits(&set))
}

struct MaxSearch<'a> {
    non: &'a [Bits],
    meter: Meter<'a>,
    best: Vec<usize>,
}

impl MaxSearch<'_> {
    /// Greedy partition of `p` into cliques of the graph; each clique holds
    /// at most one vertex of an independent set, which gives the bound.
    fn color(&self, p: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count());
        let mut colors = Vec::with_capacity(order.capacity());
        let mut uncolored = p.clone();
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                uncolored.remove(v);
                q = q.and_not(&self.non[v]);
                order.push(v);
                colors.push(k);
            }
        }
        (order, colors)
    }

    fn search(&mut self, cur: &mut Vec<usize>, mut p: Bits) -> ControlFlow<()> {
        if !self.meter.tick() {
            return ControlFlow::Break(());
        }
        let (order, colors) = self.color(&p);
        for idx in (0..order.len()).rev() {
            if cur.len() + colors[idx] <= self.best.len() {
                return ControlFlow::Continue(());
            }
            let v = order[idx];
            cur.push(v);
            let next = p.and(&self.non[v]);
            if next.is_empty() {
                if cur.len() > self.best.len() {
                    self.best = cur.clone();
                }
            } else {
                self.search(cur, next)?;
            }
            cur.pop();
            p.remove(v);
        }
        ControlFlow::Continue(())
    }
}

/// A maximum independent set, by branch and bound with clique-cover bounds.
pub fn maximum_independent_set(g: &UGraph, budget: Budget) -> Result<VertexSet> {
    let n = g.vertex_count();
    let non = complement_rows(g);
    let nodes = AtomicU64::new(0);
    let start = greedy_extend(g, &VertexSet::new())?;
    let mut s = MaxSearch { non: &non, meter: Meter::new(budget, &nodes), best: start.into_vec() };
    match s.search(&mut Vec::new(), Bits::full(n)) {
        ControlFlow::Continue(()) => Ok(s.best.into_iter().collect()),
        ControlFlow::Break(()) => Err(Error::BudgetExhausted),
    }
}

pub fn independence_number(g: &UGraph, budget: Budget) -> Result<usize> {
    maximum_independent_set(g, budget).map(|s| s.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Inconclusive,
}

/// Outcome of the exhaustive well-covered check.
///
/// `alpha` is exact when `complete` is set; otherwise it is the largest
/// maximal independent set seen. A `no` always carries a maximal set
/// smaller than `alpha` (the lexicographically least among the smallest
/// ones seen) and a maximal set of size `alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellCoveredReport {
    pub answer: Answer,
    pub alpha: usize,
    pub complete: bool,
    pub witness_small: Option<VertexSet>,
    pub witness_large: Option<VertexSet>,
    /// `(size, number of maximal independent sets)`, only when complete.
    pub counts: Option<Vec<(usize, u64)>>,
    pub maximal_sets_seen: u64,
}

#[derive(Default)]
struct SizeTracker {
    smallest: Option<VertexSet>,
    largest: Option<VertexSet>,
    counts: BTreeMap<usize, u64>,
    seen: u64,
}

impl SizeTracker {
    fn add(&mut self, s: VertexSet) {
        self.seen += 1;
        *self.counts.entry(s.len()).or_default() += 1;
        if self.smallest.as_ref().is_none_or(|m| s.canonical_cmp(m).is_lt()) {
            self.smallest = Some(s.clone());
        }
        let better = match &self.largest {
            None => true,
            Some(m) => s.len() > m.len() || (s.len() == m.len() && s.as_slice() < m.as_slice()),
        };
        if better {
            self.largest = Some(s);
        }
    }

    fn sizes_differ(&self) -> bool {
        self.counts.len() > 1
    }

    fn report(self, complete: bool) -> WellCoveredReport {
        let alpha = self.largest.as_ref().map_or(0, VertexSet::len);
        let differ = self.sizes_differ();
        let answer = match (differ, complete) {
            (true, _) => Answer::No,
            (false, true) => Answer::Yes,
            (false, false) => Answer::Inconclusive,
        };
        WellCoveredReport {
            answer,
            alpha,
            complete,
            witness_small: if differ { self.smallest } else { None },
            witness_large: if differ { self.largest } else { None },
            counts: complete.then(|| self.counts.into_iter().collect()),
            maximal_sets_seen: self.seen,
        }
    }
}

/// Decides whether all maximal independent sets have the same size by
/// enumerating them. Running out of budget gives `no` if two sizes were
/// already seen and `inconclusive` otherwise.
pub fn is_well_covered(g: &UGraph, budget: Budget) -> WellCoveredReport {
    is_well_covered_with(g, budget, 1, &[])
}

/// Greedy extensions of the seeds; a report when two of them differ in size.
fn refute_from_seeds(g: &UGraph, seeds: &[VertexSet]) -> Option<WellCoveredReport> {
    let mut tracker = SizeTracker::default();
    for seed in seeds {
        if let Ok(m) = greedy_extend(g, seed) {
            tracker.add(m);
        }
    }
    tracker.sizes_differ().then(|| tracker.report(false))
}

/// [`is_well_covered`] with a worker count and refutation seeds. Each seed is
/// greedily extended to a maximal set first; if two of those differ in size
/// the answer is `no` without enumeration.
pub fn is_well_covered_with(g: &UGraph, budget: Budget, threads: usize, seeds: &[VertexSet]) -> WellCoveredReport {
    if threads <= 1 {
        return is_well_covered_streaming(g, budget, seeds, |_| {});
    }
    if let Some(report) = refute_from_seeds(g, seeds) {
        return report;
    }
    let mut tracker = SizeTracker::default();
    let (sets, summary) = enumerate_parallel(g, budget, threads);
    sets.into_iter().for_each(|s| tracker.add(s));
    tracker.report(summary.status == EnumStatus::Complete)
}

/// Single-threaded [`is_well_covered_with`] that also hands every enumerated
/// maximal set to `observe`, in enumeration order.
pub fn is_well_covered_streaming<F>(g: &UGraph, budget: Budget, seeds: &[VertexSet], mut observe: F) -> WellCoveredReport
where
    F: FnMut(&VertexSet),
{
    if let Some(report) = refute_from_seeds(g, seeds) {
        return report;
    }
    let mut tracker = SizeTracker::default();
    let summary = enumerate_maximal_independent(g, budget, |s| {
        observe(&s);
        tracker.add(s);
        ControlFlow::Continue(())
    });
    tracker.report(summary.status == EnumStatus::Complete)
}

/// `A + J = {a + j : a in A, j in J}`.
pub fn radical_saturate(ring: &Ring, radical: &VertexSet, set: &VertexSet) -> VertexSet {
    set.iter().flat_map(|a| radical.iter().map(move |j| ring.add(a, j))).collect()
}
