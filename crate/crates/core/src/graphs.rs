//! Weighted graphs for qudit graph states, the standard graph families, and the
//! combinatorial action of Pauli products on graph-basis labels.
//!
//! Acting with `X_i` on `|G⟩` is the same as acting with `Z_m^{Γ_im}` on every
//! neighbor `m`, so a product `ω^λ X^μ Z^ν` moves label `a` to `a ⊕ ν ⊕ Γμ`.
//! The accompanying phase is `λ + μ·(ν ⊕ a) + Σ_{l<m} Γ_lm μ_l μ_m`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseErrorKind, Result};
use crate::pauli::PauliProduct;
use crate::zmod::ModTuple;

/// Undirected multigraph with edge multiplicities in `0..D` and no self loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    d: u32,
    adj: Vec<u32>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize, d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidModulus(d));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        Ok(Self { n, d, adj: vec![0; n * n] })
    }

    /// Builds a graph from a full adjacency matrix, validating symmetry, the
    /// zero diagonal and the multiplicity bound.
    pub fn from_matrix(d: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::empty(n, d)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse {
                    line: i + 2,
                    kind: ParseErrorKind::MalformedRow(format!("expected {n} entries, found {}", row.len())),
                });
            }
        }
        g.fill_checked(rows, |i| i + 2)?;
        Ok(g)
    }

    fn fill_checked(&mut self, rows: &[Vec<u32>], line_of: impl Fn(usize) -> usize) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let v = rows[i][j];
                if v >= self.d {
                    return Err(Error::Parse {
                        line: line_of(i),
                        kind: ParseErrorKind::EntryOutOfRange { row: i + 1, col: j + 1, value: v, modulus: self.d },
                    });
                }
            }
            if rows[i][i] != 0 {
                return Err(Error::Parse { line: line_of(i), kind: ParseErrorKind::NonzeroDiagonal(i + 1) });
            }
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Parse {
                        line: line_of(i),
                        kind: ParseErrorKind::Asymmetric { row: i + 1, col: j + 1 },
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                self.adj[i * n + j] = rows[i][j];
            }
        }
        Ok(())
    }

    /// Sets the multiplicity of edge `{a, b}` (0-based vertices).
    pub fn set_edge(&mut self, a: usize, b: usize, weight: u32) -> Result<()> {
        if a == b || a >= self.n || b >= self.n {
            return Err(Error::InvalidArgument(format!("bad edge {{{}, {}}}", a + 1, b + 1)));
        }
        if weight >= self.d {
            return Err(Error::InvalidResidue { value: weight, modulus: self.d });
        }
        self.adj[a * self.n + b] = weight;
        self.adj[b * self.n + a] = weight;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    /// `Γ_ab` for 0-based vertices.
    pub fn weight(&self, a: usize, b: usize) -> u32 {
        self.adj[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.adj[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|a| self.row(a).to_vec()).collect()
    }

    /// Distinct neighbors of `a`, multiplicity ignored.
    pub fn neighbor_count(&self, a: usize) -> usize {
        self.row(a).iter().filter(|&&w| w > 0).count()
    }

    /// `Σ_{l<m} Γ_lm t_l t_m` mod D.
    pub fn quadratic_form(&self, t: &[u32]) -> u32 {
        let d = self.d as u64;
        let mut acc = 0u64;
        for l in 0..self.n {
            if t[l] == 0 {
                continue;
            }
            for m in l + 1..self.n {
                let w = self.adj[l * self.n + m] as u64;
                if w != 0 {
                    acc = (acc + w * t[l] as u64 % d * t[m] as u64) % d;
                }
            }
        }
        acc as u32
    }

    /// `Γt` mod D.
    pub fn mat_vec(&self, t: &[u32]) -> Vec<u32> {
        let d = self.d as u64;
        (0..self.n)
            .map(|l| (self.row(l).iter().zip(t).fold(0u64, |acc, (&w, &x)| (acc + w as u64 * x as u64) % d)) as u32)
            .collect()
    }

    fn check_pauli(&self, p: &PauliProduct) -> Result<()> {
        if p.n() != self.n || p.modulus() != self.d {
            return Err(Error::DimensionMismatch {
                expected_n: self.n,
                expected_d: self.d,
                got_n: p.n(),
                got_d: p.modulus(),
            });
        }
        Ok(())
    }

    fn check_tuple(&self, a: &ModTuple) -> Result<()> {
        if a.len() != self.n || a.modulus() != self.d {
            return Err(Error::DimensionMismatch {
                expected_n: self.n,
                expected_d: self.d,
                got_n: a.len(),
                got_d: a.modulus(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(D={}, n={}, {:?})", self.d, self.n, self.rows())
    }
}

/// The graph sequences used for code tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Bar,
    Star,
    Cycle,
    Wheel,
    Hypercube,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Bar => "bar",
            Family::Star => "star",
            Family::Cycle => "cycle",
            Family::Wheel => "wheel",
            Family::Hypercube => "hypercube",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bar" => Ok(Family::Bar),
            "star" => Ok(Family::Star),
            "cycle" => Ok(Family::Cycle),
            "wheel" => Ok(Family::Wheel),
            "hypercube" => Ok(Family::Hypercube),
            other => Err(Error::InvalidArgument(format!("unknown graph family {other:?}"))),
        }
    }
}

/// Family-specific construction switches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyOptions {
    /// Cycle only: give edge {1,2} multiplicity 2 (needs D ≥ 3).
    pub double_edge: bool,
}

/// Builds a member of a graph family with the fixed vertex numbering:
///
/// * bar: `V1 = 1..⌊n/2⌋`, edges `i ↔ i+⌊n/2⌋`, plus `⌊n/2⌋ ↔ n` for odd n
/// * star: vertex 1 is the center
/// * cycle: ring order, optional double edge on `{1,2}`
/// * wheel: vertex 1 is the hub, `2..n` the rim
/// * hypercube: vertex `1+x` for bit string `x`, edges at Hamming distance 1
pub fn build_family(family: Family, n: usize, d: u32, options: FamilyOptions) -> Result<Graph> {
    let unsupported =
        |reason: &str| Error::UnsupportedFamily { family: family.name().to_string(), n, reason: reason.to_string() };
    if options.double_edge && family != Family::Cycle {
        return Err(unsupported("double edge only applies to cycles"));
    }
    let mut g = Graph::empty(n.max(1), d)?;
    match family {
        Family::Bar => {
            if n < 2 {
                return Err(unsupported("bar needs n >= 2"));
            }
            let h = n / 2;
            for i in 0..h {
                g.set_edge(i, i + h, 1)?;
            }
            if n % 2 == 1 {
                g.set_edge(h - 1, n - 1, 1)?;
            }
        }
        Family::Star => {
            if n < 3 {
                return Err(unsupported("star needs n >= 3"));
            }
            for i in 1..n {
                g.set_edge(0, i, 1)?;
            }
        }
        Family::Cycle => {
            if n < 3 {
                return Err(unsupported("cycle needs n >= 3"));
            }
            for i in 0..n {
                g.set_edge(i, (i + 1) % n, 1)?;
            }
            if options.double_edge {
                if d < 3 {
                    return Err(unsupported("double edge needs D >= 3"));
                }
                g.set_edge(0, 1, 2)?;
            }
        }
        Family::Wheel => {
            if n < 4 {
                return Err(unsupported("wheel needs n >= 4"));
            }
            let rim = n - 1;
            for i in 0..rim {
                g.set_edge(0, 1 + i, 1)?;
                g.set_edge(1 + i, 1 + (i + 1) % rim, 1)?;
            }
        }
        Family::Hypercube => {
            if n < 2 || !n.is_power_of_two() {
                return Err(unsupported("hypercube needs n = 2^k with k >= 1"));
            }
            for v in 0..n {
                let mut bit = 1;
                while bit < n {
                    let u = v ^ bit;
                    if u > v {
                        g.set_edge(v, u, 1)?;
                    }
                    bit <<= 1;
                }
            }
        }
    }
    Ok(g)
}

/// `1 + min_v (number of distinct neighbors of v)`, an upper bound on the diagonal distance.
pub fn coordination_bound(g: &Graph) -> usize {
    1 + (0..g.n).map(|v| g.neighbor_count(v)).min().unwrap_or(0)
}

/// Label shift `ν ⊕ Γμ` produced by `P` on every graph-basis state.
pub fn displacement(g: &Graph, p: &PauliProduct) -> Result<ModTuple> {
    g.check_pauli(p)?;
    let gm = g.mat_vec(p.x_exponents().entries());
    let d = g.d;
    let entries = gm.iter().zip(p.z_exponents().entries()).map(|(&a, &b)| (a + b) % d).collect();
    Ok(ModTuple::from_raw(d, entries))
}

/// `P|a⟩ = ω^p |b⟩`; returns `(b, p)`.
pub fn apply_pauli_symbolic(g: &Graph, p: &PauliProduct, a: &ModTuple) -> Result<(ModTuple, u32)> {
    g.check_tuple(a)?;
    Ok(PauliAction::new(g, p)?.apply(a))
}

/// The action of one product on graph-basis labels, with the label-independent
/// parts precomputed: `a ↦ (a ⊕ shift, offset + μ·a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliAction {
    shift: ModTuple,
    offset: u32,
    mu: ModTuple,
}

impl PauliAction {
    pub fn new(g: &Graph, p: &PauliProduct) -> Result<Self> {
        let shift = displacement(g, p)?;
        let d = g.d as u64;
        let mu = p.x_exponents();
        let offset =
            (p.phase() as u64 + mu.dot_unchecked(p.z_exponents()) as u64 + g.quadratic_form(mu.entries()) as u64) % d;
        Ok(Self { shift, offset: offset as u32, mu: mu.clone() })
    }

    pub fn shift(&self) -> &ModTuple {
        &self.shift
    }

    /// Phase picked up on label `a`, ignoring where it lands.
    pub fn phase_on(&self, a: &ModTuple) -> u32 {
        let d = self.mu.modulus();
        (self.offset + self.mu.dot_unchecked(a)) % d
    }

    pub fn apply(&self, a: &ModTuple) -> (ModTuple, u32) {
        (a.add_unchecked(&self.shift), self.phase_on(a))
    }
}

/// Writes the text graph format: `D n`, then `n` rows of `n` integers.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.d, g.n);
    for a in 0..g.n {
        let row: Vec<String> = g.row(a).iter().map(|w| w.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the text graph format; `#` lines and blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, kind: ParseErrorKind::MalformedHeader })?;
    let hdr: Vec<&str> = header.split_whitespace().collect();
    let parsed = match hdr.as_slice() {
        [d, n] => d.parse::<u32>().ok().zip(n.parse::<usize>().ok()),
        _ => None,
    };
    let (d, n) = match parsed {
        Some((d, n)) if d >= 2 && n >= 1 => (d, n),
        _ => return Err(Error::Parse { line: hline, kind: ParseErrorKind::MalformedHeader }),
    };

    let mut rows = Vec::with_capacity(n);
    let mut line_nos = Vec::with_capacity(n);
    for (lno, line) in lines {
        if rows.len() == n {
            return Err(Error::Parse { line: lno, kind: ParseErrorKind::RowCount { expected: n, found: n + 1 } });
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse { line: lno, kind: ParseErrorKind::MalformedRow(e.to_string()) })?;
        if row.len() != n {
            return Err(Error::Parse {
                line: lno,
                kind: ParseErrorKind::MalformedRow(format!("expected {n} entries, found {}", row.len())),
            });
        }
        rows.push(row);
        line_nos.push(lno);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: line_nos.last().copied().unwrap_or(hline),
            kind: ParseErrorKind::RowCount { expected: n, found: rows.len() },
        });
    }
    let mut g = Graph::empty(n, d)?;
    g.fill_checked(&rows, |i| line_nos[i])?;
    Ok(g)
}
