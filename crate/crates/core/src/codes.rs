//! Graph codes: codeword label sets on a fixed graph, with additivity and
//! distance checks.

use std::collections::HashSet;

use crate::distance::{pair_distance_index, Distance, DistanceTable};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::limits;
use crate::zmod::{GeneratorMatrix, ModTuple};

/// A graph code `((n, K, δ))_D`. Codewords are sorted and always contain the zero label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCode {
    graph: Graph,
    delta: u32,
    codewords: Vec<ModTuple>,
    exhaustive: bool,
    generators: Option<GeneratorMatrix>,
}

impl GraphCode {
    /// Builds a code, sorting the codewords and detecting additivity.
    pub fn new(graph: Graph, delta: u32, mut codewords: Vec<ModTuple>, exhaustive: bool) -> Result<Self> {
        let (d, n) = (graph.modulus(), graph.n());
        if let Some(bad) = codewords.iter().find(|c| c.modulus() != d || c.len() != n) {
            return Err(Error::DimensionMismatch {
                expected_n: n,
                expected_d: d,
                got_n: bad.len(),
                got_d: bad.modulus(),
            });
        }
        codewords.sort();
        if codewords.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("codewords must be distinct".into()));
        }
        if codewords.first().is_none_or(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument("the zero label must be a codeword".into()));
        }
        let generators = additive_generators(d, n, &codewords);
        Ok(Self { graph, delta, codewords, exhaustive, generators })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn modulus(&self) -> u32 {
        self.graph.modulus()
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// Number of codewords.
    pub fn k(&self) -> usize {
        self.codewords.len()
    }

    pub fn codewords(&self) -> &[ModTuple] {
        &self.codewords
    }

    /// True when the code is known to be optimal for its graph and δ.
    pub fn exhaustive(&self) -> bool {
        self.exhaustive
    }

    pub fn additive(&self) -> bool {
        self.generators.is_some()
    }

    pub fn generators(&self) -> Option<&GeneratorMatrix> {
        self.generators.as_ref()
    }

    pub fn qs_bound(&self) -> u128 {
        qs_bound(self.n(), self.delta, self.modulus())
    }

    pub fn qs_saturated(&self) -> bool {
        self.k() as u128 == self.qs_bound()
    }
}

/// Quantum Singleton bound `D^(n - 2(δ-1))`, or 0 when the exponent is negative.
pub fn qs_bound(n: usize, delta: u32, d: u32) -> u128 {
    let loss = 2 * (delta.max(1) as usize - 1);
    if loss > n {
        0
    } else {
        limits::pow(d, n - loss)
    }
}

/// Closure test under ⊕; returns greedy generators when closed.
pub fn is_additive(code: &GraphCode) -> (bool, Option<GeneratorMatrix>) {
    let g = additive_generators(code.modulus(), code.n(), &code.codewords);
    (g.is_some(), g)
}

fn additive_generators(d: u32, n: usize, codewords: &[ModTuple]) -> Option<GeneratorMatrix> {
    let members: HashSet<&ModTuple> = codewords.iter().collect();
    let mut span: HashSet<ModTuple> = HashSet::from([ModTuple::zero(d, n)]);
    let mut elems = vec![ModTuple::zero(d, n)];
    let mut gens = Vec::new();
    for c in codewords {
        if span.contains(c) {
            continue;
        }
        let base = elems.clone();
        let mut kc = c.clone();
        // walk the cosets H + kc until kc falls back into H
        while !span.contains(&kc) {
            for h in &base {
                let x = h.add_unchecked(&kc);
                if !members.contains(&x) {
                    return None;
                }
                span.insert(x.clone());
                elems.push(x);
            }
            kc = kc.add_unchecked(c);
        }
        gens.push(c.clone());
        if elems.len() > codewords.len() {
            return None;
        }
    }
    (elems.len() == codewords.len())
        .then(|| GeneratorMatrix::new(d, n, gens).expect("generators share the code's shape"))
}

/// Why a code failed its distance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A nonidentity product of this size fixes `|G⟩`, so δ exceeds the diagonal distance.
    Diagonal { size: u32 },
    /// Two codewords whose Pauli distance is below δ; 0 for a repeated label.
    Pair { a: ModTuple, b: ModTuple, distance: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub delta: u32,
    pub pairs_checked: u64,
    pub violation: Option<Violation>,
}

impl DistanceReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the nondegenerate distance condition for `code` against a table
/// with `cap ≥ δ - 1`.
pub fn assert_distance(code: &GraphCode, table: &DistanceTable) -> Result<DistanceReport> {
    if table.graph() != code.graph() {
        return Err(Error::InvalidArgument("distance table belongs to a different graph".into()));
    }
    // differences of an additive code are codewords, so checking against zero suffices
    scan(table, code.delta, &code.codewords, code.additive())
}

/// Pairwise distance check of an arbitrary label list, which need not
/// contain zero or be closed under ⊕.
pub fn check_codewords(table: &DistanceTable, delta: u32, words: &[ModTuple]) -> Result<DistanceReport> {
    let space = table.space();
    if let Some(bad) = words.iter().find(|c| c.modulus() != space.modulus() || c.len() != space.n()) {
        return Err(Error::DimensionMismatch {
            expected_n: space.n(),
            expected_d: space.modulus(),
            got_n: bad.len(),
            got_d: bad.modulus(),
        });
    }
    scan(table, delta, words, false)
}

fn scan(table: &DistanceTable, delta: u32, words: &[ModTuple], from_zero: bool) -> Result<DistanceReport> {
    if table.cap() + 1 < delta {
        return Err(Error::InsufficientCap { cap: table.cap(), delta });
    }
    let mut report = DistanceReport { delta, pairs_checked: 0, violation: None };
    if let Distance::Finite(size) = table.diagonal_distance() {
        if size < delta {
            report.violation = Some(Violation::Diagonal { size });
            return Ok(report);
        }
    }
    let space = table.space();
    let idx: Vec<usize> = words.iter().map(|c| space.index(c)).collect();
    let fail = |i: usize, j: usize| {
        let dist = if idx[i] == idx[j] { Distance::Finite(0) } else { pair_distance_index(table, idx[i], idx[j]) };
        match dist {
            Distance::Finite(s) if s < delta => {
                Some(Violation::Pair { a: words[i].clone(), b: words[j].clone(), distance: s })
            }
            _ => None,
        }
    };
    let firsts = if from_zero { 1.min(idx.len()) } else { idx.len() };
    for i in 0..firsts {
        for j in i + 1..idx.len() {
            report.pairs_checked += 1;
            if let Some(v) = fail(i, j) {
                report.violation = Some(v);
                return Ok(report);
            }
        }
    }
    Ok(report)
}
