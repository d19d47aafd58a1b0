//! Closed-form graph codes: bipartition codes, odd-n star codes and the
//! 16-qubit hypercube code.

use crate::codes::GraphCode;
use crate::error::{Error, Result};
use crate::graphs::{build_family, Family, FamilyOptions, Graph};
use crate::limits;
use crate::zmod::{gcd, span, GeneratorMatrix, LabelSpace, ModTuple};

/// A split of the vertices into `V1` and its complement `V2`, where every
/// vertex has a cross-edge weight sum `g(v)` that is a unit mod D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    graph: Graph,
    v1: Vec<usize>,
}

impl PartitionSpec {
    /// `v1` holds 0-based vertices; order and duplicates are ignored.
    pub fn new(graph: Graph, v1: &[usize]) -> Result<Self> {
        let n = graph.n();
        let mut v1: Vec<usize> = v1.to_vec();
        v1.sort_unstable();
        v1.dedup();
        if let Some(&v) = v1.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidArgument(format!("vertex {} out of range 1..={n}", v + 1)));
        }
        if v1.is_empty() || v1.len() == n {
            return Err(Error::Precondition("V1 must be a nonempty proper subset of the vertices".into()));
        }
        let spec = Self { graph, v1 };
        let d = spec.graph.modulus();
        for v in 0..n {
            let g = spec.cross_weight(v);
            if gcd(g, d as u64) != 1 {
                return Err(Error::Precondition(format!(
                    "vertex {} has cross weight g = {g}, which is not a unit mod {d}",
                    v + 1
                )));
            }
        }
        Ok(spec)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// 0-based, ascending.
    pub fn v1(&self) -> &[usize] {
        &self.v1
    }

    pub fn in_v1(&self, v: usize) -> bool {
        self.v1.binary_search(&v).is_ok()
    }

    /// `g(v) = Σ_{m on the other side} Γ_vm`, unreduced.
    pub fn cross_weight(&self, v: usize) -> u64 {
        let side = self.in_v1(v);
        (0..self.graph.n()).filter(|&m| self.in_v1(m) != side).map(|m| self.graph.weight(v, m) as u64).sum()
    }
}

/// Default `V1` for a family member, 0-based:
///
/// * bar: `1..⌊n/2⌋`
/// * star: the center
/// * hypercube: vertices whose top coordinate bit is 0
/// * cycle: alternating vertices for odd D, alternating pairs for even D
pub fn default_partition(family: Family, n: usize, d: u32) -> Result<Vec<usize>> {
    let v1 = match family {
        Family::Bar | Family::Hypercube => (0..n / 2).collect(),
        Family::Star => vec![0],
        Family::Cycle if d % 2 == 1 => (0..n).step_by(2).collect(),
        Family::Cycle => (0..n).filter(|v| v % 4 < 2).collect(),
        Family::Wheel => {
            return Err(Error::UnsupportedFamily {
                family: family.name().into(),
                n,
                reason: "no default partition; pass V1 explicitly".into(),
            })
        }
    };
    Ok(v1)
}

/// All labels with zero digit sum on `V1` and on `V2`; `K = D^(n-2)`, δ = 2.
pub fn partition_code(spec: &PartitionSpec) -> Result<GraphCode> {
    let g = spec.graph();
    let (d, n) = (g.modulus(), g.n());
    let space = LabelSpace::new(d, n, limits::mem_cap())?;
    let mut digits = vec![0; n];
    let mut words = Vec::with_capacity(space.size() / (d as usize * d as usize));
    for idx in 0..space.size() {
        space.digits(idx, &mut digits);
        let (mut s1, mut s2) = (0, 0);
        for (v, &x) in digits.iter().enumerate() {
            if spec.in_v1(v) {
                s1 += x;
            } else {
                s2 += x;
            }
        }
        if s1 % d == 0 && s2 % d == 0 {
            words.push(space.tuple(idx));
        }
    }
    GraphCode::new(g.clone(), 2, words, false)
}

/// Peripheral weights allowed by the odd-n star construction: even `r ≤ (n-3)/2`
/// together with `n-1-r` for odd `r ≤ (n-3)/2`.
pub fn star_weights(n: usize) -> Result<Vec<usize>> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Precondition(format!("star construction needs odd n >= 3, got {n}")));
    }
    let top = (n - 3) / 2;
    let mut r: Vec<usize> = (0..=top).map(|r| if r % 2 == 0 { r } else { n - 1 - r }).collect();
    r.sort_unstable();
    Ok(r)
}

/// `2^(n-2) - C(n-1, (n-1)/2) / 2`, the size of the odd-n star code.
pub fn star_code_size(n: usize) -> u128 {
    let m = (n - 1) as u128;
    let mut c = 1u128;
    for i in 0..m / 2 {
        c = c * (m - i) / (i + 1);
    }
    (1u128 << (n - 2)) - c / 2
}

/// Qubit code on the n-vertex star (center = vertex 1): labels with a zero
/// center digit whose peripheral weight lies in [`star_weights`].
pub fn star_code_odd(n: usize) -> Result<GraphCode> {
    let weights = star_weights(n)?;
    let g = build_family(Family::Star, n, 2, FamilyOptions::default())?;
    limits::check("star code labels", 1u128 << (n - 1), limits::mem_cap())?;
    let mut words = Vec::new();
    for mask in 0u64..1 << (n - 1) {
        if weights.binary_search(&(mask.count_ones() as usize)).is_ok() {
            let mut e = vec![0; n];
            for (l, x) in e.iter_mut().enumerate().skip(1) {
                *x = (mask >> (n - 1 - l) & 1) as u32;
            }
            words.push(ModTuple::new(2, e)?);
        }
    }
    GraphCode::new(g, 2, words, false)
}

/// Generators of the `((16, 128, 4))_2` code, vertex 1 leftmost.
pub const HYPERCUBE16_GENERATORS: [&str; 7] = [
    "0000000000001111",
    "0000000000110011",
    "0000000011000011",
    "0000001101000100",
    "0000110000010001",
    "0011000001000100",
    "1100000000010001",
];

/// The additive `((16, 128, 4))_2` code on the 16-vertex hypercube.
pub fn hypercube16_code() -> Result<GraphCode> {
    let g = build_family(Family::Hypercube, 16, 2, FamilyOptions::default())?;
    let rows = HYPERCUBE16_GENERATORS.iter().map(|s| ModTuple::from_digit_string(2, s)).collect::<Result<Vec<_>>>()?;
    let gens = GeneratorMatrix::new(2, 16, rows)?;
    GraphCode::new(g, 4, span(&gens)?, false)
}
