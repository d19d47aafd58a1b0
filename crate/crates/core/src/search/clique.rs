//! Branch-and-bound maximum clique on dense bitset graphs.
//!
//! Vertices are branched on in ascending order, so with no budget the first
//! maximum clique found is the lexicographically smallest one. Pruning uses
//! the candidate count and a greedy coloring of the remaining candidates.

use std::time::{Duration, Instant};

type Word = u64;
const BITS: usize = Word::BITS as usize;

/// Fixed-width bitset over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<Word>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(BITS)] }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / BITS] |= 1 << (i % BITS);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / BITS] &= !(1 << (i % BITS));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / BITS] >> (i % BITS) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, &w)| k * BITS + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * BITS + b)
            })
        })
    }

    fn intersect_into(&self, other: &BitSet, out: &mut BitSet) {
        for ((o, a), b) in out.words.iter_mut().zip(&self.words).zip(&other.words) {
            *o = a & b;
        }
    }

    fn difference_in_place(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }
}

/// Undirected simple graph stored as adjacency bitsets.
#[derive(Clone, Debug)]
pub struct DenseGraph {
    adj: Vec<BitSet>,
}

impl DenseGraph {
    pub fn new(len: usize) -> Self {
        Self { adj: vec![BitSet::new(len); len] }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, a: usize) -> &BitSet {
        &self.adj[a]
    }

    pub fn is_clique(&self, nodes: &[usize]) -> bool {
        nodes.iter().enumerate().all(|(i, &a)| nodes[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CliqueOptions {
    /// Wall-clock budget; `None` runs to completion.
    pub budget: Option<Duration>,
    /// A proven upper bound on the clique size; reaching it ends the search.
    pub size_limit: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    /// Node indices, ascending.
    pub clique: Vec<usize>,
    /// The search completed or reached `size_limit` within the budget.
    pub proven_optimal: bool,
    pub nodes_expanded: u64,
}

struct Solver<'a> {
    graph: &'a DenseGraph,
    best: Vec<usize>,
    current: Vec<usize>,
    limit: usize,
    deadline: Option<Instant>,
    expanded: u64,
    stop: bool,
    timed_out: bool,
}

impl Solver<'_> {
    fn color_bound(&self, cand: &BitSet) -> usize {
        let mut uncolored = cand.clone();
        let mut q = cand.clone();
        let mut colors = 0;
        while let Some(_) = uncolored.first() {
            colors += 1;
            q.words.copy_from_slice(&uncolored.words);
            while let Some(v) = q.first() {
                q.remove(v);
                uncolored.remove(v);
                q.difference_in_place(&self.graph.adj[v]);
            }
        }
        colors
    }

    fn record(&mut self) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
            if self.best.len() >= self.limit {
                self.stop = true;
            }
        }
    }

    fn expand(&mut self, mut cand: BitSet) {
        self.expanded += 1;
        if self.expanded % 1024 == 0 {
            if let Some(dl) = self.deadline {
                if Instant::now() >= dl {
                    self.timed_out = true;
                    self.stop = true;
                    return;
                }
            }
        }
        self.record();
        if self.stop {
            return;
        }
        let mut scratch = BitSet::new(self.graph.len());
        while let Some(v) = cand.first() {
            let depth = self.current.len();
            if depth + cand.count() <= self.best.len() {
                return;
            }
            if depth + self.color_bound(&cand) <= self.best.len() {
                return;
            }
            cand.remove(v);
            cand.intersect_into(&self.graph.adj[v], &mut scratch);
            self.current.push(v);
            self.expand(scratch.clone());
            self.current.pop();
            if self.stop {
                return;
            }
        }
    }
}

/// Finds a maximum clique, branching on vertices in ascending order.
pub fn max_clique(graph: &DenseGraph, opts: &CliqueOptions) -> CliqueResult {
    let n = graph.len();
    let mut solver = Solver {
        graph,
        best: Vec::new(),
        current: Vec::new(),
        limit: opts.size_limit.unwrap_or(usize::MAX).max(1),
        deadline: opts.budget.map(|b| Instant::now() + b),
        expanded: 0,
        stop: false,
        timed_out: false,
    };
    let mut all = BitSet::new(n);
    for v in 0..n {
        all.insert(v);
    }
    solver.expand(all);
    CliqueResult { clique: solver.best, proven_optimal: !solver.timed_out, nodes_expanded: solver.expanded }
}
