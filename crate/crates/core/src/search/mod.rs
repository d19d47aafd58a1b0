//! Code search on a fixed graph.
//!
//! With `|c_0⟩ = |G⟩` fixed, the candidates are the labels at Pauli distance
//! at least δ from zero. Two candidates are compatible when their difference
//! is also at distance at least δ, and an optimal nondegenerate code is a
//! maximum clique of the compatibility graph plus the zero label.
//!
//! For additive codes only subgroups need checking: a subgroup has pairwise
//! distance at least δ iff every nonzero element does, so the additive search
//! backtracks over generator sequences instead of cliques.

pub mod clique;

use std::time::{Duration, Instant};

use crate::codes::{qs_bound, GraphCode};
use crate::distance::{build_distance_table_with, pair_distance_index, Distance, DistanceTable, TableOptions};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::zmod::{LabelSpace, ModTuple};

pub use clique::{max_clique, BitSet, CliqueOptions, CliqueResult, DenseGraph};

/// Candidate labels and their pairwise compatibility for a target δ.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    nodes: Vec<ModTuple>,
    indices: Vec<usize>,
    graph: DenseGraph,
    delta: u32,
}

impl CompatibilityGraph {
    /// Builds the graph over `candidate_set(table, delta)`.
    pub fn build(table: &DistanceTable, delta: u32) -> Result<Self> {
        let indices = candidate_indices(table, delta)?;
        let mut graph = DenseGraph::new(indices.len());
        for (i, &a) in indices.iter().enumerate() {
            for (j, &b) in indices.iter().enumerate().skip(i + 1) {
                if pair_distance_index(table, a, b).at_least(delta) {
                    graph.add_edge(i, j);
                }
            }
        }
        let nodes = indices.iter().map(|&i| table.space().tuple(i)).collect();
        Ok(Self { nodes, indices, graph, delta })
    }

    pub fn nodes(&self) -> &[ModTuple] {
        &self.nodes
    }

    /// Table indices of the nodes, same order as `nodes`.
    pub fn label_indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn graph(&self) -> &DenseGraph {
        &self.graph
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn check_regime(table: &DistanceTable, delta: u32) -> Result<()> {
    if delta > table.cap() + 1 {
        return Err(Error::InsufficientCap { cap: table.cap(), delta });
    }
    if let Distance::Finite(diag) = table.diagonal_distance() {
        if delta > diag {
            return Err(Error::DegenerateRegime { delta, diagonal: diag.to_string() });
        }
    }
    Ok(())
}

fn candidate_indices(table: &DistanceTable, delta: u32) -> Result<Vec<usize>> {
    check_regime(table, delta)?;
    Ok((1..table.space().size()).filter(|&i| table.at_index(i).at_least(delta)).collect())
}

/// Nonzero labels at distance at least `delta` from `|G⟩`, ascending.
pub fn candidate_set(table: &DistanceTable, delta: u32) -> Result<Vec<ModTuple>> {
    Ok(candidate_indices(table, delta)?.into_iter().map(|i| table.space().tuple(i)).collect())
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Wall-clock budget for the clique or generator search.
    pub budget: Option<Duration>,
    /// Build distance tables with worker threads.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: None, parallel: true }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        Self { budget: None, parallel: false }
    }

    fn table_options(&self) -> TableOptions {
        TableOptions { parallel: self.parallel, ..TableOptions::default() }
    }
}

/// The distance table a search at `delta` needs: cap `delta - 1`, with `2 ≤ delta ≤ n + 1`.
pub fn search_table(g: &Graph, delta: u32, opts: &SearchOptions) -> Result<DistanceTable> {
    if delta < 2 {
        return Err(Error::InvalidArgument(format!("delta must be at least 2, got {delta}")));
    }
    if delta as usize > g.n() + 1 {
        return Err(Error::InvalidArgument(format!("delta {delta} exceeds n+1 for n={}", g.n())));
    }
    build_distance_table_with(g, delta - 1, opts.table_options())
}

/// Searches for the largest nondegenerate graph code with distance `delta`.
pub fn search_code(g: &Graph, delta: u32, opts: &SearchOptions) -> Result<GraphCode> {
    let table = search_table(g, delta, opts)?;
    search_code_in(&table, delta, opts)
}

/// As [`search_code`], reusing a prebuilt table (cap ≥ δ-1).
pub fn search_code_in(table: &DistanceTable, delta: u32, opts: &SearchOptions) -> Result<GraphCode> {
    let g = table.graph();
    let compat = CompatibilityGraph::build(table, delta)?;
    let bound = qs_bound(g.n(), delta, g.modulus());
    let limit = usize::try_from(bound.saturating_sub(1)).ok().filter(|&l| l >= 1);
    let result = max_clique(&compat.graph, &CliqueOptions { budget: opts.budget, size_limit: limit });
    let mut words = vec![ModTuple::zero(g.modulus(), g.n())];
    words.extend(result.clique.iter().map(|&i| compat.nodes[i].clone()));
    GraphCode::new(g.clone(), delta, words, result.proven_optimal)
}

/// Searches for the largest additive code with distance `delta`.
pub fn search_additive(g: &Graph, delta: u32, opts: &SearchOptions) -> Result<GraphCode> {
    let table = search_table(g, delta, opts)?;
    search_additive_in(&table, delta, opts)
}

pub fn search_additive_in(table: &DistanceTable, delta: u32, opts: &SearchOptions) -> Result<GraphCode> {
    let g = table.graph();
    let space = *table.space();
    let cands = candidate_indices(table, delta)?;
    let mut allowed = vec![false; space.size()];
    allowed[0] = true;
    for &c in &cands {
        allowed[c] = true;
    }
    let bound = qs_bound(g.n(), delta, g.modulus());
    let total = space.size() as u128;
    let mut s = SubgroupSearch {
        space,
        allowed,
        cands,
        total,
        limit: bound.min(total) as usize,
        member: vec![false; space.size()],
        elems: vec![0],
        best: vec![0],
        deadline: opts.budget.map(|b| Instant::now() + b),
        steps: 0,
        stop: false,
        timed_out: false,
    };
    s.member[0] = true;
    if s.limit > 1 {
        s.descend(0);
    }
    let words = s.best.iter().map(|&i| space.tuple(i)).collect();
    GraphCode::new(g.clone(), delta, words, !s.timed_out)
}

struct SubgroupSearch {
    space: LabelSpace,
    allowed: Vec<bool>,
    cands: Vec<usize>,
    total: u128,
    limit: usize,
    member: Vec<bool>,
    elems: Vec<usize>,
    best: Vec<usize>,
    deadline: Option<Instant>,
    steps: u64,
    stop: bool,
    timed_out: bool,
}

impl SubgroupSearch {
    /// Largest subgroup order reachable from the current subgroup with at most `avail` elements.
    fn order_bound(&self, avail: usize) -> usize {
        let h = self.elems.len();
        let cap = avail.min(self.limit);
        let cofactor = self.total / h as u128;
        (1..=cap / h).rev().find(|&k| cofactor % k as u128 == 0).map_or(h, |k| k * h)
    }

    fn descend(&mut self, start: usize) {
        self.steps += 1;
        if self.steps % 256 == 0 {
            if let Some(dl) = self.deadline {
                if Instant::now() >= dl {
                    self.timed_out = true;
                    self.stop = true;
                    return;
                }
            }
        }
        if self.elems.len() > self.best.len() {
            self.best = self.elems.clone();
            if self.elems.len() >= self.limit {
                self.stop = true;
                return;
            }
        }
        for pos in start..self.cands.len() {
            let h = self.elems.len();
            let avail = h + (self.cands.len() - pos);
            if self.order_bound(avail) <= self.best.len() {
                return;
            }
            let g = self.cands[pos];
            if self.member[g] {
                continue;
            }
            // every new element must be allowed and no smaller than g
            let mut added = Vec::new();
            let mut kg = g;
            let mut ok = true;
            'cosets: while !self.member[kg] {
                for i in 0..h {
                    let x = self.space.add(self.elems[i], kg);
                    if !self.allowed[x] || x < g {
                        ok = false;
                        break 'cosets;
                    }
                    added.push(x);
                }
                for &x in &added[added.len() - h..] {
                    self.member[x] = true;
                }
                kg = self.space.add(kg, g);
            }
            if ok {
                self.elems.extend_from_slice(&added);
                self.descend(pos + 1);
                self.elems.truncate(h);
            }
            for &x in &added {
                self.member[x] = false;
            }
            if self.stop {
                return;
            }
        }
    }
}
