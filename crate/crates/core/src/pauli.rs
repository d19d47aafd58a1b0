//! Generalized Pauli products `ω^λ ∏_l X_l^μ_l Z_l^ν_l` with exact phase tracking.
//!
//! Phases are exponents of `ω = e^{2πi/D}` kept in `Z_D`. The per-qudit order
//! is always X before Z, and `XZ = ωZX`, so pulling an X past a Z to the left
//! costs a factor `ω^{-1}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::zmod::ModTuple;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliProduct {
    phase: u32,
    x: ModTuple,
    z: ModTuple,
}

impl PauliProduct {
    pub fn new(phase: u32, x: ModTuple, z: ModTuple) -> Result<Self> {
        if x.modulus() != z.modulus() || x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected_n: x.len(),
                expected_d: x.modulus(),
                got_n: z.len(),
                got_d: z.modulus(),
            });
        }
        if phase >= x.modulus() {
            return Err(Error::InvalidResidue { value: phase, modulus: x.modulus() });
        }
        Ok(Self { phase, x, z })
    }

    pub fn identity(d: u32, n: usize) -> Self {
        Self { phase: 0, x: ModTuple::zero(d, n), z: ModTuple::zero(d, n) }
    }

    /// `X^power` on 0-based qudit `l`.
    pub fn x_on(d: u32, n: usize, l: usize, power: u32) -> Self {
        Self { phase: 0, x: ModTuple::unit(d, n, l, power), z: ModTuple::zero(d, n) }
    }

    /// `Z^power` on 0-based qudit `l`.
    pub fn z_on(d: u32, n: usize, l: usize, power: u32) -> Self {
        Self { phase: 0, x: ModTuple::zero(d, n), z: ModTuple::unit(d, n, l, power) }
    }

    pub(crate) fn from_parts_unchecked(phase: u32, x: ModTuple, z: ModTuple) -> Self {
        Self { phase, x, z }
    }

    pub fn modulus(&self) -> u32 {
        self.x.modulus()
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Exponent λ of the prefactor ω^λ.
    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn x_exponents(&self) -> &ModTuple {
        &self.x
    }

    pub fn z_exponents(&self) -> &ModTuple {
        &self.z
    }

    pub fn with_phase(&self, phase: u32) -> Self {
        Self { phase: phase % self.modulus(), x: self.x.clone(), z: self.z.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.x.is_zero() && self.z.is_zero()
    }

    /// Qudits (0-based) on which the product acts nontrivially.
    pub fn base(&self) -> Vec<usize> {
        self.x
            .entries()
            .iter()
            .zip(self.z.entries())
            .enumerate()
            .filter(|(_, (&m, &v))| m != 0 || v != 0)
            .map(|(l, _)| l)
            .collect()
    }

    pub fn size(&self) -> usize {
        self.x.entries().iter().zip(self.z.entries()).filter(|(&m, &v)| m != 0 || v != 0).count()
    }

    /// The inverse, `P·P^{-1} = I` exactly.
    pub fn inverse(&self) -> Self {
        // (X^μ Z^ν)^{-1} = Z^{-ν} X^{-μ} = ω^{-μ·ν} X^{-μ} Z^{-ν}
        let d = self.modulus();
        let cross = self.x.dot_unchecked(&self.z);
        let phase = ((2 * d as u64 - self.phase as u64 - cross as u64) % d as u64) as u32;
        Self { phase, x: self.x.neg(), z: self.z.neg() }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.modulus() != other.modulus() || self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected_n: self.n(),
                expected_d: self.modulus(),
                got_n: other.n(),
                got_d: other.modulus(),
            });
        }
        Ok(())
    }

    pub(crate) fn multiply_unchecked(&self, other: &Self) -> Self {
        let d = self.modulus() as u64;
        let swap = self.z.dot_unchecked(&other.x) as u64;
        let phase = ((self.phase as u64 + other.phase as u64 + d - swap) % d) as u32;
        Self { phase, x: self.x.add_unchecked(&other.x), z: self.z.add_unchecked(&other.z) }
    }
}

/// Canonical-form product `P·Q`.
pub fn multiply(p: &PauliProduct, q: &PauliProduct) -> Result<PauliProduct> {
    p.same_shape(q)?;
    Ok(p.multiply_unchecked(q))
}

/// The exponent `c` with `PQ = ω^c QP`.
pub fn commutation_exponent(p: &PauliProduct, q: &PauliProduct) -> Result<u32> {
    p.same_shape(q)?;
    let d = p.modulus() as u64;
    let a = q.z.dot_unchecked(&p.x) as u64;
    let b = p.z.dot_unchecked(&q.x) as u64;
    Ok(((a + d - b) % d) as u32)
}

/// `(size, base)` with 0-based qudit indices.
pub fn size_and_base(p: &PauliProduct) -> (usize, Vec<usize>) {
    let base = p.base();
    (base.len(), base)
}

/// Number of phase-free products of size exactly `s` on `n` qudits.
pub fn count_by_size(n: usize, d: u32, s: usize) -> u128 {
    if s > n {
        return 0;
    }
    let mut binom: u128 = 1;
    for i in 0..s {
        binom = binom * (n - i) as u128 / (i + 1) as u128;
    }
    binom * ((d as u128 * d as u128) - 1).pow(s as u32)
}

/// Phase-free Pauli products of size exactly `s`, in ascending-base then
/// ascending per-qudit `(μ, ν)` order.
#[derive(Clone, Debug)]
pub struct PauliBySize {
    n: usize,
    d: u32,
    base: Vec<usize>,
    /// per-base-qudit local index in `1..D²`, encoding `(μ, ν) = (k / D, k % D)`
    local: Vec<u32>,
    done: bool,
}

/// Streams every phase-free product of size `s` exactly once.
pub fn enumerate_by_size(n: usize, d: u32, s: usize) -> Result<PauliBySize> {
    if s == 0 || s > n {
        return Err(Error::InvalidArgument(format!("size {s} must be in 1..={n}")));
    }
    if d < 2 {
        return Err(Error::InvalidModulus(d));
    }
    Ok(PauliBySize { n, d, base: (0..s).collect(), local: vec![1; s], done: false })
}

impl PauliBySize {
    fn advance(&mut self) {
        let dd = self.d * self.d;
        for i in (0..self.local.len()).rev() {
            if self.local[i] + 1 < dd {
                self.local[i] += 1;
                return;
            }
            self.local[i] = 1;
        }
        // next combination of base qudits
        let s = self.base.len();
        let mut i = s;
        while i > 0 {
            i -= 1;
            if self.base[i] < self.n - s + i {
                self.base[i] += 1;
                for j in i + 1..s {
                    self.base[j] = self.base[j - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for PauliBySize {
    type Item = PauliProduct;

    fn next(&mut self) -> Option<PauliProduct> {
        if self.done {
            return None;
        }
        let mut x = vec![0u32; self.n];
        let mut z = vec![0u32; self.n];
        for (&l, &k) in self.base.iter().zip(&self.local) {
            x[l] = k / self.d;
            z[l] = k % self.d;
        }
        let p = PauliProduct::from_parts_unchecked(0, ModTuple::from_raw(self.d, x), ModTuple::from_raw(self.d, z));
        self.advance();
        Some(p)
    }
}

impl fmt::Debug for PauliProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliProduct(D={}, {})", self.modulus(), self)
    }
}

/// Renders as `w^λ X1^μ Z1^ν ...` with 1-based qudits; trivial factors are
/// omitted and the bare identity is `I`.
impl fmt::Display for PauliProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.phase != 0 {
            parts.push(format!("w^{}", self.phase));
        }
        for (l, (&m, &v)) in self.x.entries().iter().zip(self.z.entries()).enumerate() {
            if m != 0 {
                parts.push(format!("X{}^{}", l + 1, m));
            }
            if v != 0 {
                parts.push(format!("Z{}^{}", l + 1, v));
            }
        }
        if parts.is_empty() || (parts.len() == 1 && self.phase != 0) {
            parts.push("I".to_string());
        }
        f.write_str(&parts.join(" "))
    }
}

/// Parses the rendered form back; `n` and `D` must be supplied.
pub fn parse_pauli(text: &str, d: u32, n: usize) -> Result<PauliProduct> {
    let bad = |msg: &str| Error::InvalidArgument(format!("bad Pauli string {text:?}: {msg}"));
    let mut phase = 0u32;
    let mut x = vec![0u32; n];
    let mut z = vec![0u32; n];
    for tok in text.split_whitespace() {
        if tok == "I" {
            continue;
        }
        let (head, exp) = tok.split_once('^').ok_or_else(|| bad("missing '^'"))?;
        let exp: u32 = exp.parse().map_err(|_| bad("exponent"))?;
        if exp >= d {
            return Err(bad("exponent out of range"));
        }
        if head == "w" {
            phase = exp;
            continue;
        }
        let (kind, idx) = head.split_at(1);
        let l: usize = idx.parse().map_err(|_| bad("qudit index"))?;
        if l == 0 || l > n {
            return Err(bad("qudit index out of range"));
        }
        match kind {
            "X" => x[l - 1] = exp,
            "Z" => z[l - 1] = exp,
            _ => return Err(bad("unknown factor")),
        }
    }
    PauliProduct::new(phase, ModTuple::new(d, x)?, ModTuple::new(d, z)?)
}

impl FromStr for PauliProduct {
    type Err = Error;

    /// Accepts `D n: <rendered product>`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = s.split_once(':').ok_or_else(|| Error::InvalidArgument("expected `D n: product`".into()))?;
        let mut it = head.split_whitespace();
        let d = it.next().and_then(|t| t.parse().ok());
        let n = it.next().and_then(|t| t.parse().ok());
        match (d, n) {
            (Some(d), Some(n)) => parse_pauli(body, d, n),
            _ => Err(Error::InvalidArgument("expected `D n: product`".into())),
        }
    }
}
