//! Exact arithmetic over the residue ring Z_D.
//!
//! Tuples in `Z_D^n` label graph-basis states and code elements. Vertex 1 is
//! the first (most significant) entry, so lexicographic order on tuples is the
//! same as numeric order on their label indices.
//!
//! The dual of an additive subgroup is computed by bringing a generator matrix
//! into diagonal form with row and column operations. Row operations keep the
//! generated subgroup fixed; column operations are recorded so that solutions
//! of the diagonal system can be carried back to the original coordinates.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::limits;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Additive order of `x` in `Z_d`.
pub fn additive_order(x: u32, d: u32) -> u32 {
    (d as u64 / gcd(x as u64, d as u64)) as u32
}

fn check_modulus(d: u32) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidModulus(d))
    } else {
        Ok(())
    }
}

/// An n-tuple of residues mod D.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModTuple {
    modulus: u32,
    entries: Vec<u32>,
}

impl ModTuple {
    pub fn new(modulus: u32, entries: Vec<u32>) -> Result<Self> {
        check_modulus(modulus)?;
        if entries.is_empty() {
            return Err(Error::InvalidArgument("tuple length must be at least 1".into()));
        }
        if let Some(&value) = entries.iter().find(|&&e| e >= modulus) {
            return Err(Error::InvalidResidue { value, modulus });
        }
        Ok(Self { modulus, entries })
    }

    /// Builds a tuple from arbitrary integers, reducing each one mod D.
    pub fn reduced(modulus: u32, entries: &[i64]) -> Result<Self> {
        check_modulus(modulus)?;
        let m = modulus as i64;
        Self::new(modulus, entries.iter().map(|e| e.rem_euclid(m) as u32).collect())
    }

    pub fn zero(modulus: u32, n: usize) -> Self {
        Self { modulus, entries: vec![0; n] }
    }

    /// Tuple with a single `value` at 0-based position `l`.
    pub fn unit(modulus: u32, n: usize, l: usize, value: u32) -> Self {
        let mut t = Self::zero(modulus, n);
        t.entries[l] = value % modulus;
        t
    }

    pub(crate) fn from_raw(modulus: u32, entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&e| e < modulus));
        Self { modulus, entries }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    /// Label index `sum_l a_l D^(n-l)`, or `None` when it does not fit in `u64`.
    pub fn index(&self) -> Option<u64> {
        let d = self.modulus as u64;
        self.entries.iter().try_fold(0u64, |acc, &e| acc.checked_mul(d)?.checked_add(e as u64))
    }

    pub fn from_index(modulus: u32, n: usize, mut index: u64) -> Self {
        let d = modulus as u64;
        let mut entries = vec![0u32; n];
        for slot in entries.iter_mut().rev() {
            *slot = (index % d) as u32;
            index /= d;
        }
        Self { modulus, entries }
    }

    pub fn neg(&self) -> Self {
        let d = self.modulus;
        Self { modulus: d, entries: self.entries.iter().map(|&e| (d - e) % d).collect() }
    }

    /// Renders the tuple as base-D digits, vertex 1 leftmost (`0-9a-z`, D ≤ 36).
    pub fn to_digit_string(&self) -> Result<String> {
        if self.modulus > 36 {
            return Err(Error::InvalidArgument(format!("digit strings support D <= 36, got {}", self.modulus)));
        }
        Ok(self.entries.iter().map(|&e| std::char::from_digit(e, 36).expect("digit in range")).collect())
    }

    pub fn from_digit_string(modulus: u32, s: &str) -> Result<Self> {
        check_modulus(modulus)?;
        let entries = s
            .chars()
            .map(|c| c.to_digit(36).ok_or_else(|| Error::InvalidArgument(format!("bad digit {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, entries)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus || self.entries.len() != other.entries.len() {
            return Err(Error::DimensionMismatch {
                expected_n: self.entries.len(),
                expected_d: self.modulus,
                got_n: other.entries.len(),
                got_d: other.modulus,
            });
        }
        Ok(())
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let d = self.modulus;
        Self {
            modulus: d,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| ((a as u64 + b as u64) % d as u64) as u32)
                .collect(),
        }
    }

    pub(crate) fn scale_unchecked(&self, j: u32) -> Self {
        let d = self.modulus as u64;
        Self {
            modulus: self.modulus,
            entries: self.entries.iter().map(|&a| ((a as u64 * j as u64) % d) as u32).collect(),
        }
    }

    pub(crate) fn dot_unchecked(&self, other: &Self) -> u32 {
        let d = self.modulus as u64;
        let s = self.entries.iter().zip(&other.entries).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % d);
        s as u32
    }
}

impl fmt::Debug for ModTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.entries, self.modulus)
    }
}

impl fmt::Display for ModTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_digit_string() {
            Ok(s) if self.modulus <= 10 => f.write_str(&s),
            _ => {
                let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Component-wise sum mod D.
pub fn add_tuples(a: &ModTuple, b: &ModTuple) -> Result<ModTuple> {
    a.same_shape(b)?;
    Ok(a.add_unchecked(b))
}

/// Component-wise difference mod D.
pub fn sub_tuples(a: &ModTuple, b: &ModTuple) -> Result<ModTuple> {
    a.same_shape(b)?;
    Ok(a.add_unchecked(&b.neg()))
}

/// `j·a` mod D.
pub fn scale_tuple(j: u32, a: &ModTuple) -> Result<ModTuple> {
    if j >= a.modulus {
        return Err(Error::InvalidScalar { value: j, modulus: a.modulus });
    }
    Ok(a.scale_unchecked(j))
}

/// `sum_l a_l b_l` mod D.
pub fn dot(a: &ModTuple, b: &ModTuple) -> Result<u32> {
    a.same_shape(b)?;
    Ok(a.dot_unchecked(b))
}

/// Fast index arithmetic on `Z_D^n` labels, used by the table and search code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelSpace {
    n: usize,
    d: u32,
    size: usize,
}

impl LabelSpace {
    pub fn new(d: u32, n: usize, cap: u64) -> Result<Self> {
        check_modulus(d)?;
        let needed = limits::pow(d, n);
        limits::check("label space", needed, cap)?;
        Ok(Self { n, d, size: needed as usize })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    /// `D^n`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn digits(&self, mut index: usize, out: &mut [u32]) {
        let d = self.d as usize;
        for slot in out.iter_mut().rev() {
            *slot = (index % d) as u32;
            index /= d;
        }
    }

    pub fn index_of_digits(&self, digits: &[u32]) -> usize {
        digits.iter().fold(0usize, |acc, &e| acc * self.d as usize + e as usize)
    }

    pub fn tuple(&self, index: usize) -> ModTuple {
        ModTuple::from_index(self.d, self.n, index as u64)
    }

    pub fn index(&self, t: &ModTuple) -> usize {
        self.index_of_digits(t.entries())
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.d == 2 {
            return a ^ b;
        }
        let d = self.d as usize;
        let (mut a, mut b) = (a, b);
        let mut out = 0usize;
        let mut place = 1usize;
        for _ in 0..self.n {
            out += ((a % d + b % d) % d) * place;
            a /= d;
            b /= d;
            place *= d;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        if self.d == 2 {
            return a;
        }
        let d = self.d as usize;
        let mut a = a;
        let mut out = 0usize;
        let mut place = 1usize;
        for _ in 0..self.n {
            out += ((d - a % d) % d) * place;
            a /= d;
            place *= d;
        }
        out
    }

    /// `a ⊖ b`.
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, j: u32, a: usize) -> usize {
        let d = self.d as usize;
        let j = j as usize % d;
        let mut a = a;
        let mut out = 0usize;
        let mut place = 1usize;
        for _ in 0..self.n {
            out += ((a % d) * j % d) * place;
            a /= d;
            place *= d;
        }
        out
    }

    /// Additive order of a label.
    pub fn order(&self, a: usize) -> u32 {
        let d = self.d as usize;
        let mut a = a;
        let mut g = self.d as u64;
        for _ in 0..self.n {
            g = gcd(g, (a % d) as u64);
            a /= d;
        }
        (self.d as u64 / g) as u32
    }
}

/// Rows generating an additive subgroup of `Z_D^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    modulus: u32,
    n: usize,
    rows: Vec<ModTuple>,
}

impl GeneratorMatrix {
    pub fn new(modulus: u32, n: usize, rows: Vec<ModTuple>) -> Result<Self> {
        check_modulus(modulus)?;
        if n == 0 {
            return Err(Error::InvalidArgument("tuple length must be at least 1".into()));
        }
        for r in &rows {
            if r.modulus() != modulus || r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected_n: n,
                    expected_d: modulus,
                    got_n: r.len(),
                    got_d: r.modulus(),
                });
            }
        }
        Ok(Self { modulus, n, rows })
    }

    /// Convenience constructor from raw rows (entries reduced mod D).
    pub fn from_rows(modulus: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::InvalidArgument("at least one row is needed to infer n".into()))?;
        let rows = rows.iter().map(|r| ModTuple::reduced(modulus, r)).collect::<Result<Vec<_>>>()?;
        Self::new(modulus, n, rows)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[ModTuple] {
        &self.rows
    }

    /// Order of the generated subgroup.
    pub fn subgroup_order(&self) -> u128 {
        diagonalize(self).subgroup_order()
    }
}

/// Elementary column operation on a generator matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnOp {
    /// Exchange columns `a` and `b`.
    Swap(usize, usize),
    /// `col[target] += factor * col[source]` (mod D).
    AddMultiple { target: usize, source: usize, factor: u32 },
}

/// Diagonal generator matrix with the column operations that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalForm {
    modulus: u32,
    diagonal: Vec<u32>,
    column_ops: Vec<ColumnOp>,
}

impl DiagonalForm {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Diagonal entries `f_1..f_n` (zeros included).
    pub fn diagonal(&self) -> &[u32] {
        &self.diagonal
    }

    pub fn column_ops(&self) -> &[ColumnOp] {
        &self.column_ops
    }

    /// `prod_l D / gcd(f_l, D)`, the order of the row span.
    pub fn subgroup_order(&self) -> u128 {
        self.diagonal.iter().map(|&f| additive_order(f, self.modulus) as u128).product()
    }

    /// `prod_l gcd(f_l, D)`, the order of the dual subgroup.
    pub fn dual_order(&self) -> u128 {
        self.diagonal.iter().map(|&f| gcd(f as u64, self.modulus as u64) as u128).product()
    }

    /// Carries a solution of the diagonal system back to the original columns.
    pub fn map_back(&self, s: &[u32]) -> Vec<u32> {
        let d = self.modulus as u64;
        let mut s = s.to_vec();
        for op in self.column_ops.iter().rev() {
            match *op {
                ColumnOp::Swap(a, b) => s.swap(a, b),
                ColumnOp::AddMultiple { target, source, factor } => {
                    s[source] = ((s[source] as u64 + factor as u64 * s[target] as u64) % d) as u32;
                }
            }
        }
        s
    }

    /// Per-coordinate step sizes of the diagonal dual: `s_l` ranges over multiples of `D / gcd(f_l, D)`.
    fn dual_steps(&self) -> Vec<u32> {
        self.diagonal.iter().map(|&f| additive_order(gcd(f as u64, self.modulus as u64) as u32, self.modulus)).collect()
    }
}

/// Reduces `F` to diagonal form using row and column operations mod D.
pub fn diagonalize(f: &GeneratorMatrix) -> DiagonalForm {
    let d = f.modulus as u64;
    let n = f.n;
    let mut m: Vec<Vec<u64>> =
        f.rows.iter().filter(|r| !r.is_zero()).map(|r| r.entries().iter().map(|&e| e as u64).collect()).collect();
    let mut ops = Vec::new();

    let col_add = |m: &mut Vec<Vec<u64>>, ops: &mut Vec<ColumnOp>, target: usize, source: usize, factor: u64| {
        let factor = factor % d;
        if factor == 0 {
            return;
        }
        for row in m.iter_mut() {
            row[target] = (row[target] + factor * row[source]) % d;
        }
        ops.push(ColumnOp::AddMultiple { target, source, factor: factor as u32 });
    };
    let col_swap = |m: &mut Vec<Vec<u64>>, ops: &mut Vec<ColumnOp>, a: usize, b: usize| {
        if a == b {
            return;
        }
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        ops.push(ColumnOp::Swap(a, b));
    };

    let mut t = 0;
    while t < m.len() && t < n {
        // smallest positive entry of the trailing submatrix goes to (t, t)
        let mut pivot: Option<(u64, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v > 0 && pivot.is_none_or(|(best, _, _)| v < best) {
                    pivot = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = pivot else { break };
        m.swap(t, pi);
        col_swap(&mut m, &mut ops, t, pj);

        loop {
            let p = m[t][t];
            if let Some(j) = (t + 1..n).find(|&j| m[t][j] % p != 0) {
                let q = m[t][j] / p;
                col_add(&mut m, &mut ops, j, t, d - q % d);
                col_swap(&mut m, &mut ops, t, j);
                continue;
            }
            if let Some(i) = (t + 1..m.len()).find(|&i| m[i][t] % p != 0) {
                let q = m[i][t] / p;
                for l in 0..n {
                    m[i][l] = (m[i][l] + (d - q % d) * m[t][l]) % d;
                }
                m.swap(t, i);
                continue;
            }
            break;
        }

        let p = m[t][t];
        for j in t + 1..n {
            let q = m[t][j] / p;
            col_add(&mut m, &mut ops, j, t, d - q % d);
        }
        for i in t + 1..m.len() {
            let q = m[i][t] / p;
            if q % d != 0 {
                for l in 0..n {
                    m[i][l] = (m[i][l] + (d - q % d) * m[t][l]) % d;
                }
            }
        }
        // zero rows below the pivot no longer contribute
        let mut i = t + 1;
        while i < m.len() {
            if m[i].iter().all(|&v| v == 0) {
                m.swap_remove(i);
            } else {
                i += 1;
            }
        }
        t += 1;
    }

    let diagonal = (0..n).map(|l| if l < m.len() { m[l][l] as u32 } else { 0 }).collect();
    DiagonalForm { modulus: f.modulus, diagonal, column_ops: ops }
}

/// Enumerates the additive subgroup generated by the rows, ascending.
pub fn span(gens: &GeneratorMatrix) -> Result<Vec<ModTuple>> {
    span_with_cap(gens, limits::mem_cap())
}

pub fn span_with_cap(gens: &GeneratorMatrix, cap: u64) -> Result<Vec<ModTuple>> {
    limits::check("subgroup span", gens.subgroup_order(), cap)?;
    let d = gens.modulus;
    let mut elems: Vec<ModTuple> = vec![ModTuple::zero(d, gens.n)];
    let mut seen: HashSet<ModTuple> = elems.iter().cloned().collect();
    for g in &gens.rows {
        if seen.contains(g) {
            continue;
        }
        let ord = g.entries().iter().fold(1u32, |acc, &e| {
            let o = additive_order(e, d);
            (acc as u64 * o as u64 / gcd(acc as u64, o as u64)) as u32
        });
        let base = elems.clone();
        for k in 1..ord {
            let kg = g.scale_unchecked(k);
            for h in &base {
                let x = h.add_unchecked(&kg);
                if seen.insert(x.clone()) {
                    elems.push(x);
                }
            }
        }
    }
    elems.sort();
    Ok(elems)
}

/// All `s` with `c·s ≡ 0 (mod D)` for every `c` in the row span, ascending.
pub fn solve_dual(c_gens: &GeneratorMatrix) -> Result<Vec<ModTuple>> {
    solve_dual_with_cap(c_gens, limits::mem_cap())
}

pub fn solve_dual_with_cap(c_gens: &GeneratorMatrix, cap: u64) -> Result<Vec<ModTuple>> {
    let diag = diagonalize(c_gens);
    limits::check("dual subgroup", diag.dual_order(), cap)?;
    let d = c_gens.modulus;
    let n = c_gens.n;
    let steps = diag.dual_steps();
    let mut out = Vec::with_capacity(diag.dual_order() as usize);
    // odometer over the product of per-coordinate solution sets
    let mut cur = vec![0u32; n];
    loop {
        out.push(ModTuple::from_raw(d, diag.map_back(&cur)));
        let mut l = n;
        loop {
            if l == 0 {
                out.sort();
                return Ok(out);
            }
            l -= 1;
            let next = cur[l] + steps[l];
            if next < d {
                cur[l] = next;
                break;
            }
            cur[l] = 0;
        }
    }
}

/// Generators of the dual subgroup (one per coordinate with a nontrivial solution set).
pub fn dual_generators(c_gens: &GeneratorMatrix) -> GeneratorMatrix {
    let diag = diagonalize(c_gens);
    let d = c_gens.modulus;
    let n = c_gens.n;
    let rows = diag
        .dual_steps()
        .iter()
        .enumerate()
        .filter(|&(_, &step)| step < d)
        .map(|(l, &step)| {
            let mut e = vec![0u32; n];
            e[l] = step;
            ModTuple::from_raw(d, diag.map_back(&e))
        })
        .collect();
    GeneratorMatrix { modulus: d, n, rows }
}
