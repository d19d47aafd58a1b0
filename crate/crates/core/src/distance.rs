//! Pauli-distance lookup table from `|G⟩` to every other graph-basis state.
//!
//! `⟨a|Q|b⟩ ≠ 0` exactly when the displacement of `Q` equals `a ⊖ b`, so the
//! table only needs the displacements of phase-free products, enumerated by
//! increasing size up to a cap.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::limits;
use crate::zmod::{LabelSpace, ModTuple};

const ABOVE: u8 = u8::MAX;

/// A table value: an exact minimal size, or "larger than the cap".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(u32),
    AboveCap,
}

impl Distance {
    fn from_raw(v: u8) -> Self {
        if v == ABOVE {
            Distance::AboveCap
        } else {
            Distance::Finite(v as u32)
        }
    }

    /// True when the distance is at least `delta`; callers guarantee `delta ≤ cap + 1`.
    pub fn at_least(self, delta: u32) -> bool {
        match self {
            Distance::Finite(s) => s >= delta,
            Distance::AboveCap => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(s) => Some(s),
            Distance::AboveCap => None,
        }
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.cmp(b),
            (Distance::Finite(_), Distance::AboveCap) => Ordering::Less,
            (Distance::AboveCap, Distance::Finite(_)) => Ordering::Greater,
            (Distance::AboveCap, Distance::AboveCap) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(s) => write!(f, "{s}"),
            Distance::AboveCap => f.write_str(">cap"),
        }
    }
}

/// Options for table construction.
#[derive(Clone, Copy, Debug)]
pub struct TableOptions {
    pub parallel: bool,
    pub mem_cap: u64,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self { parallel: true, mem_cap: limits::mem_cap() }
    }
}

impl TableOptions {
    pub fn sequential() -> Self {
        Self { parallel: false, ..Self::default() }
    }
}

#[derive(Clone)]
pub struct DistanceTable {
    graph: Graph,
    space: LabelSpace,
    cap: u32,
    entries: Vec<u8>,
    diagonal: u8,
}

impl fmt::Debug for DistanceTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DistanceTable")
            .field("n", &self.space.n())
            .field("D", &self.space.modulus())
            .field("cap", &self.cap)
            .field("diagonal_distance", &self.diagonal_distance())
            .finish()
    }
}

impl DistanceTable {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn space(&self) -> &LabelSpace {
        &self.space
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Minimal size of a nonidentity product fixing `|G⟩` up to phase.
    pub fn diagonal_distance(&self) -> Distance {
        Distance::from_raw(self.diagonal)
    }

    /// Table value at a label index. The zero label reads as `AboveCap`.
    pub fn at_index(&self, index: usize) -> Distance {
        Distance::from_raw(self.entries[index])
    }

    pub fn at(&self, label: &ModTuple) -> Distance {
        self.at_index(self.space.index(label))
    }

    /// Renders `label distance` lines for debugging.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "# n={} D={} cap={} diagonal_distance={}\n",
            self.space.n(),
            self.space.modulus(),
            self.cap,
            self.diagonal_distance()
        );
        for i in 1..self.space.size() {
            let label = self.space.tuple(i);
            out.push_str(&format!("{} {}\n", label, self.at_index(i)));
        }
        out
    }
}

/// Builds the table with default options (parallel, default memory cap).
pub fn build_distance_table(g: &Graph, cap: u32) -> Result<DistanceTable> {
    build_distance_table_with(g, cap, TableOptions::default())
}

pub fn build_distance_table_with(g: &Graph, cap: u32, opts: TableOptions) -> Result<DistanceTable> {
    let n = g.n();
    if cap == 0 || cap as usize > n || cap >= ABOVE as u32 {
        return Err(Error::InvalidArgument(format!("cap {cap} must be in 1..={n}")));
    }
    let space = LabelSpace::new(g.modulus(), n, opts.mem_cap)?;
    let local = local_displacements(g, &space);

    let sweep = |first: usize| {
        let mut entries = vec![ABOVE; space.size()];
        let mut diagonal = ABOVE;
        for &disp in &local[first] {
            descend(&space, &local, first + 1, 1, disp, cap as u8, &mut entries, &mut diagonal);
        }
        (entries, diagonal)
    };
    let merge = |(mut a, da): (Vec<u8>, u8), (b, db): (Vec<u8>, u8)| {
        for (x, y) in a.iter_mut().zip(b) {
            *x = (*x).min(y);
        }
        (a, da.min(db))
    };

    let (mut entries, diagonal) = if opts.parallel {
        (0..n).into_par_iter().map(sweep).reduce(|| (vec![ABOVE; space.size()], ABOVE), merge)
    } else {
        (0..n).map(sweep).fold((vec![ABOVE; space.size()], ABOVE), merge)
    };
    entries[0] = ABOVE;
    Ok(DistanceTable { graph: g.clone(), space, cap, entries, diagonal })
}

/// For each qudit, the label indices `ν e_l ⊕ μ Γ_{·l}` of its `D²-1` nontrivial local operators,
/// in ascending `(μ, ν)` order.
fn local_displacements(g: &Graph, space: &LabelSpace) -> Vec<Vec<usize>> {
    let d = g.modulus();
    let n = g.n();
    (0..n)
        .map(|l| {
            let mut out = Vec::with_capacity((d * d - 1) as usize);
            for k in 1..d * d {
                let (mu, nu) = (k / d, k % d);
                let digits: Vec<u32> = (0..n)
                    .map(|m| {
                        let z = if m == l { nu } else { 0 };
                        ((z as u64 + mu as u64 * g.weight(m, l) as u64) % d as u64) as u32
                    })
                    .collect();
                out.push(space.index_of_digits(&digits));
            }
            out
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn descend(
    space: &LabelSpace,
    local: &[Vec<usize>],
    next: usize,
    size: u8,
    acc: usize,
    cap: u8,
    entries: &mut [u8],
    diagonal: &mut u8,
) {
    if acc == 0 {
        *diagonal = (*diagonal).min(size);
    } else if entries[acc] > size {
        entries[acc] = size;
    }
    if size == cap {
        return;
    }
    for l in next..local.len() {
        for &disp in &local[l] {
            descend(space, local, l + 1, size + 1, space.add(acc, disp), cap, entries, diagonal);
        }
    }
}

/// Distance between two distinct labels, `entry[b ⊖ a]`.
pub fn pair_distance(t: &DistanceTable, a: &ModTuple, b: &ModTuple) -> Result<Distance> {
    for x in [a, b] {
        if x.len() != t.space.n() || x.modulus() != t.space.modulus() {
            return Err(Error::DimensionMismatch {
                expected_n: t.space.n(),
                expected_d: t.space.modulus(),
                got_n: x.len(),
                got_d: x.modulus(),
            });
        }
    }
    if a == b {
        return Err(Error::InvalidArgument("pair distance needs distinct labels; use the diagonal distance".into()));
    }
    Ok(t.at_index(t.space.sub(t.space.index(b), t.space.index(a))))
}

/// Index form of [`pair_distance`] for search loops.
pub fn pair_distance_index(t: &DistanceTable, a: usize, b: usize) -> Distance {
    t.at_index(t.space.sub(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::displacement;
    use crate::graphs::{build_family, coordination_bound, Family, FamilyOptions};
    use crate::pauli::enumerate_by_size;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fam(f: Family, n: usize, d: u32) -> Graph {
        build_family(f, n, d, FamilyOptions::default()).unwrap()
    }

    fn t(d: u32, e: &[u32]) -> ModTuple {
        ModTuple::new(d, e.to_vec()).unwrap()
    }

    /// Independent route: stream Pauli products and take minimal sizes by displacement.
    fn brute_table(g: &Graph, cap: u32) -> (Vec<Distance>, Distance) {
        let space = LabelSpace::new(g.modulus(), g.n(), 1 << 22).unwrap();
        let mut best = vec![Distance::AboveCap; space.size()];
        let mut diag = Distance::AboveCap;
        for s in 1..=cap as usize {
            for p in enumerate_by_size(g.n(), g.modulus(), s).unwrap() {
                let idx = space.index(&displacement(g, &p).unwrap());
                if idx == 0 {
                    diag = diag.min(Distance::Finite(s as u32));
                } else {
                    best[idx] = best[idx].min(Distance::Finite(s as u32));
                }
            }
        }
        (best, diag)
    }

    #[test]
    fn cycle5_entries() {
        let g = fam(Family::Cycle, 5, 2);
        let tab = build_distance_table(&g, 2).unwrap();
        assert_eq!(tab.at(&t(2, &[1, 0, 0, 0, 0])), Distance::Finite(1));
        assert_eq!(tab.at(&t(2, &[1, 1, 1, 1, 1])), Distance::AboveCap);
        let zero = ModTuple::zero(2, 5);
        let ones = t(2, &[1, 1, 1, 1, 1]);
        assert!(pair_distance(&tab, &zero, &ones).unwrap().at_least(3));
    }

    #[test]
    fn star_diagonal_distance_is_two() {
        for n in 3..9 {
            let tab = build_distance_table(&fam(Family::Star, n, 2), 2).unwrap();
            assert_eq!(tab.diagonal_distance(), Distance::Finite(2), "n={n}");
        }
    }

    #[test]
    fn matches_streamed_enumeration() {
        for (f, n, d, cap) in
            [(Family::Cycle, 5, 2, 3), (Family::Wheel, 6, 2, 3), (Family::Cycle, 4, 3, 4), (Family::Bar, 5, 4, 2)]
        {
            let g = fam(f, n, d);
            let tab = build_distance_table(&g, cap).unwrap();
            let (brute, diag) = brute_table(&g, cap);
            assert_eq!(tab.diagonal_distance(), diag);
            for (i, &b) in brute.iter().enumerate() {
                assert_eq!(tab.at_index(i), b, "{f} n={n} D={d} label {i}");
            }
        }
    }

    #[test]
    fn parallel_equals_sequential() {
        let g = fam(Family::Hypercube, 8, 2);
        let a = build_distance_table_with(&g, 4, TableOptions::sequential()).unwrap();
        let b = build_distance_table_with(&g, 4, TableOptions::default()).unwrap();
        assert_eq!(a.entries, b.entries);
        assert_eq!(a.diagonal, b.diagonal);
    }

    #[test]
    fn errors() {
        let g = fam(Family::Cycle, 5, 2);
        assert!(build_distance_table(&g, 0).is_err());
        assert!(build_distance_table(&g, 6).is_err());
        let opts = TableOptions { parallel: false, mem_cap: 16 };
        assert!(matches!(build_distance_table_with(&g, 2, opts), Err(Error::Capacity { .. })));
        let tab = build_distance_table(&g, 2).unwrap();
        let a = t(2, &[1, 0, 1, 0, 0]);
        assert!(pair_distance(&tab, &a, &a).is_err());
    }

    #[test]
    fn translation_invariance_and_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (f, n, d) in [(Family::Cycle, 6, 2), (Family::Wheel, 5, 3), (Family::Star, 5, 4)] {
            let g = fam(f, n, d);
            let tab = build_distance_table(&g, 3).unwrap();
            let sz = tab.space().size();
            for _ in 0..500 {
                let (a, b, s) = (rng.gen_range(0..sz), rng.gen_range(0..sz), rng.gen_range(0..sz));
                if a == b {
                    continue;
                }
                let sp = tab.space();
                let base = pair_distance_index(&tab, a, b);
                assert_eq!(base, pair_distance_index(&tab, b, a));
                assert_eq!(base, pair_distance_index(&tab, sp.add(a, s), sp.add(b, s)));
                let (ta, tb) = (sp.tuple(a), sp.tuple(b));
                assert_eq!(pair_distance(&tab, &ta, &tb).unwrap(), base);
            }
        }
    }

    #[test]
    fn raising_cap_keeps_finite_entries() {
        let g = fam(Family::Wheel, 7, 2);
        let lo = build_distance_table(&g, 2).unwrap();
        let hi = build_distance_table(&g, 4).unwrap();
        for i in 0..lo.space().size() {
            if let Distance::Finite(s) = lo.at_index(i) {
                assert_eq!(hi.at_index(i), Distance::Finite(s));
            }
        }
    }

    #[test]
    fn diagonal_within_coordination_bound() {
        for (f, n, d) in [
            (Family::Cycle, 6, 2),
            (Family::Wheel, 7, 2),
            (Family::Hypercube, 8, 2),
            (Family::Bar, 6, 3),
            (Family::Star, 5, 3),
        ] {
            let g = fam(f, n, d);
            let b = coordination_bound(&g) as u32;
            let tab = build_distance_table(&g, b.min(n as u32)).unwrap();
            assert!(tab.diagonal_distance() <= Distance::Finite(b));
        }
    }
}
