//! Dense state-vector ground truth for small instances.
//!
//! States are amplitude vectors indexed like table labels (qudit 1 is the most
//! significant digit). Graph states are built by applying controlled-phase
//! gates to `|+⟩^n`, and products act through their single-qudit matrices
//! `X|j⟩ = |j ⊖ 1⟩`, `Z|j⟩ = ω^j |j⟩`.

use std::fmt;

use num_complex::{Complex, Complex64};
use num_traits::{Float, FloatConst};
use rayon::prelude::*;

use crate::codes::GraphCode;
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::limits;
use crate::pauli::{count_by_size, enumerate_by_size, PauliProduct};
use crate::zmod::ModTuple;

/// Real scalar type for dense amplitudes.
pub trait Scalar: Float + FloatConst + Send + Sync + fmt::Debug + 'static {
    /// Absolute tolerance for amplitude comparisons.
    fn tolerance() -> Self;
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-4
    }
}

fn scalar<T: Scalar>(x: f64) -> T {
    T::from(x).expect("finite constant")
}

/// `ω^k` for `k in 0..D`, `ω = e^{2πi/D}`.
fn roots<T: Scalar>(d: u32) -> Vec<Complex<T>> {
    let step = scalar::<T>(2.0) * T::PI() / scalar(d as f64);
    (0..d).map(|k| Complex::from_polar(T::one(), step * scalar(k as f64))).collect()
}

/// A state on `n` qudits of dimension `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseStateOf<T> {
    d: u32,
    n: usize,
    amps: Vec<Complex<T>>,
}

pub type DenseState = DenseStateOf<f64>;
pub type DenseState32 = DenseStateOf<f32>;

impl<T: Scalar> DenseStateOf<T> {
    fn dimension(d: u32, n: usize) -> Result<usize> {
        if d < 2 {
            return Err(Error::InvalidModulus(d));
        }
        limits::check("dense state", limits::pow(d, n), limits::oracle_cap())?;
        Ok(limits::pow(d, n) as usize)
    }

    /// `|+⟩^{⊗n}`.
    pub fn plus(d: u32, n: usize) -> Result<Self> {
        let dim = Self::dimension(d, n)?;
        let a = scalar::<T>(dim as f64).sqrt().recip();
        Ok(Self { d, n, amps: vec![Complex::new(a, T::zero()); dim] })
    }

    pub fn from_amplitudes(d: u32, n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = Self::dimension(d, n)?;
        if amps.len() != dim {
            return Err(Error::InvalidArgument(format!("expected {dim} amplitudes, got {}", amps.len())));
        }
        Ok(Self { d, n, amps })
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected_n: self.n,
                expected_d: self.d,
                got_n: other.n,
                got_d: other.d,
            });
        }
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.same_shape(other)?;
        Ok(self.amps.iter().zip(&other.amps).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b))
    }

    /// Largest amplitude difference.
    pub fn max_diff(&self, other: &Self) -> Result<T> {
        self.same_shape(other)?;
        Ok(self.amps.iter().zip(&other.amps).fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm())))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.max_diff(other).is_ok_and(|x| x <= T::tolerance())
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self { d: self.d, n: self.n, amps: self.amps.iter().map(|a| a * c).collect() }
    }

    fn stride(&self, l: usize) -> usize {
        (self.d as usize).pow((self.n - 1 - l) as u32)
    }

    fn digit(&self, index: usize, l: usize) -> u32 {
        (index / self.stride(l) % self.d as usize) as u32
    }

    /// `X^power` on 0-based qudit `l`.
    pub fn apply_x(&mut self, l: usize, power: u32) {
        let power = power % self.d;
        if power == 0 {
            return;
        }
        let stride = self.stride(l);
        let old = self.amps.clone();
        for (i, a) in self.amps.iter_mut().enumerate() {
            let j = (i / stride % self.d as usize) as u32;
            let src = i - j as usize * stride + ((j + power) % self.d) as usize * stride;
            *a = old[src];
        }
    }

    /// `Z^power` on 0-based qudit `l`.
    pub fn apply_z(&mut self, l: usize, power: u32) {
        let w = roots::<T>(self.d);
        for i in 0..self.amps.len() {
            let j = self.digit(i, l);
            self.amps[i] = self.amps[i] * w[(power * j % self.d) as usize];
        }
    }

    /// `C_lm^power`, the diagonal gate `|j_l, j_m⟩ ↦ ω^{power·j_l·j_m} |j_l, j_m⟩`.
    pub fn apply_controlled_phase(&mut self, l: usize, m: usize, power: u32) {
        let w = roots::<T>(self.d);
        let d = self.d as u64;
        for i in 0..self.amps.len() {
            let k = power as u64 * self.digit(i, l) as u64 % d * self.digit(i, m) as u64 % d;
            self.amps[i] = self.amps[i] * w[k as usize];
        }
    }
}

/// `|G⟩ = ∏_{l<m} C_lm^{Γ_lm} |+⟩^{⊗n}`.
pub fn build_graph_state<T: Scalar>(g: &Graph) -> Result<DenseStateOf<T>> {
    let mut psi = DenseStateOf::plus(g.modulus(), g.n())?;
    for l in 0..g.n() {
        for m in l + 1..g.n() {
            let w = g.weight(l, m);
            if w != 0 {
                psi.apply_controlled_phase(l, m, w);
            }
        }
    }
    Ok(psi)
}

/// `|a⟩ = Z^a |G⟩`.
pub fn graph_basis_state<T: Scalar>(g: &Graph, a: &ModTuple) -> Result<DenseStateOf<T>> {
    check_label(g, a)?;
    let mut psi = build_graph_state(g)?;
    for (l, &x) in a.entries().iter().enumerate() {
        psi.apply_z(l, x);
    }
    Ok(psi)
}

fn check_label(g: &Graph, a: &ModTuple) -> Result<()> {
    if a.len() != g.n() || a.modulus() != g.modulus() {
        return Err(Error::DimensionMismatch {
            expected_n: g.n(),
            expected_d: g.modulus(),
            got_n: a.len(),
            got_d: a.modulus(),
        });
    }
    Ok(())
}

/// `ω^λ X^μ Z^ν ψ`.
pub fn apply_pauli_dense<T: Scalar>(p: &PauliProduct, psi: &DenseStateOf<T>) -> Result<DenseStateOf<T>> {
    if p.n() != psi.n || p.modulus() != psi.d {
        return Err(Error::DimensionMismatch {
            expected_n: psi.n,
            expected_d: psi.d,
            got_n: p.n(),
            got_d: p.modulus(),
        });
    }
    let mut out = psi.clone();
    for l in 0..psi.n {
        out.apply_z(l, p.z_exponents().entries()[l]);
        out.apply_x(l, p.x_exponents().entries()[l]);
    }
    Ok(out.scaled(roots::<T>(psi.d)[p.phase() as usize]))
}

/// `⟨a|ψ⟩` for every label `a`, in index order, given `|G⟩`.
///
/// `⟨a|ψ⟩ = Σ_j ω^{-a·j} conj(G(j)) ψ(j)`, evaluated one qudit axis at a time.
pub fn basis_overlaps<T: Scalar>(graph_state: &DenseStateOf<T>, psi: &DenseStateOf<T>) -> Result<Vec<Complex<T>>> {
    graph_state.same_shape(psi)?;
    let d = psi.d as usize;
    let w = roots::<T>(psi.d);
    let mut buf: Vec<Complex<T>> = graph_state.amps.iter().zip(&psi.amps).map(|(g, x)| g.conj() * x).collect();
    let mut line = vec![Complex::new(T::zero(), T::zero()); d];
    for l in 0..psi.n {
        let stride = psi.stride(l);
        let block = stride * d;
        for base in (0..buf.len()).step_by(block) {
            for off in 0..stride {
                let start = base + off;
                for (j, v) in line.iter_mut().enumerate() {
                    *v = buf[start + j * stride];
                }
                for a in 0..d {
                    let mut acc = Complex::new(T::zero(), T::zero());
                    for (j, v) in line.iter().enumerate() {
                        acc = acc + v * w[(d - a * j % d) % d];
                    }
                    buf[start + a * stride] = acc;
                }
            }
        }
    }
    Ok(buf)
}

/// A matrix entry breaking `⟨c_q|Q|c_r⟩ = f(Q) δ_qr`.
#[derive(Clone, Debug, PartialEq)]
pub struct KlViolation {
    pub product: PauliProduct,
    pub q: usize,
    pub r: usize,
    pub value: Complex64,
    pub expected: Complex64,
}

impl fmt::Display for KlViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q = {}: <c_{}|Q|c_{}> = {:.6}, expected {:.6}",
            self.product, self.q, self.r, self.value, self.expected
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KlReport {
    pub delta: u32,
    pub products_checked: u64,
    /// Products with `f(Q) ≠ 0`, in enumeration order.
    pub nonzero_f: Vec<(PauliProduct, Complex64)>,
    /// The first violation in enumeration order.
    pub violation: Option<KlViolation>,
}

impl KlReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    /// Every `f(Q)` vanished.
    pub fn nondegenerate(&self) -> bool {
        self.nonzero_f.is_empty()
    }
}

fn to_c64<T: Scalar>(z: Complex<T>) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

fn products_below<T>(n: usize, d: u32, delta: u32) -> Result<Vec<PauliProduct>> {
    let top = (delta.saturating_sub(1) as usize).min(n);
    let total: u128 = (1..=top).map(|s| count_by_size(n, d, s)).sum();
    limits::check("Pauli products", total, limits::mem_cap())?;
    let mut out = Vec::with_capacity(total as usize);
    for s in 1..=top {
        out.extend(enumerate_by_size(n, d, s)?);
    }
    Ok(out)
}

/// `M_qr = ⟨c_q|Q|c_r⟩` for one product.
pub fn kl_matrix(code: &GraphCode, q: &PauliProduct) -> Result<Vec<Vec<Complex64>>> {
    let g = code.graph();
    let gs = build_graph_state::<f64>(g)?;
    let states = code.codewords().iter().map(|c| graph_basis_state(g, c)).collect::<Result<Vec<_>>>()?;
    let idx: Vec<usize> = code.codewords().iter().map(|c| c.index().expect("label fits") as usize).collect();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); idx.len()]; idx.len()];
    for (r, st) in states.iter().enumerate() {
        let ov = basis_overlaps(&gs, &apply_pauli_dense(q, st)?)?;
        for (row, &i) in m.iter_mut().zip(&idx) {
            row[r] = ov[i];
        }
    }
    Ok(m)
}

/// Knill–Laflamme check with `f64` amplitudes.
pub fn kl_verify(code: &GraphCode, delta: u32) -> Result<KlReport> {
    kl_verify_with::<f64>(code, delta)
}

/// Checks that `⟨c_q|Q|c_r⟩ = f(Q) δ_qr` for every phase-free `Q` with `1 ≤ size < delta`.
pub fn kl_verify_with<T: Scalar>(code: &GraphCode, delta: u32) -> Result<KlReport> {
    kl_verify_words::<T>(code.graph(), code.codewords(), delta)
}

/// Knill–Laflamme check of an arbitrary label list on `g`.
pub fn kl_verify_words<T: Scalar>(g: &Graph, words: &[ModTuple], delta: u32) -> Result<KlReport> {
    let gs = build_graph_state::<T>(g)?;
    let states = words.iter().map(|c| graph_basis_state::<T>(g, c)).collect::<Result<Vec<_>>>()?;
    let idx: Vec<usize> = words.iter().map(|c| c.index().expect("label fits") as usize).collect();
    let products = products_below::<T>(g.n(), g.modulus(), delta)?;
    let tol = T::tolerance();

    let check = |q: &PauliProduct| -> Result<(Complex<T>, Option<KlViolation>)> {
        let mut f = None;
        for (r, st) in states.iter().enumerate() {
            let ov = basis_overlaps(&gs, &apply_pauli_dense(q, st)?)?;
            for (row, &i) in idx.iter().enumerate() {
                let value = ov[i];
                let expected = if row == r { *f.get_or_insert(value) } else { Complex::new(T::zero(), T::zero()) };
                if (value - expected).norm() > tol {
                    return Ok((
                        expected,
                        Some(KlViolation {
                            product: q.clone(),
                            q: row,
                            r,
                            value: to_c64(value),
                            expected: to_c64(expected),
                        }),
                    ));
                }
            }
        }
        Ok((f.unwrap_or(Complex::new(T::zero(), T::zero())), None))
    };
    let results = products.par_iter().map(check).collect::<Result<Vec<_>>>()?;

    let mut report = KlReport { delta, products_checked: products.len() as u64, nonzero_f: vec![], violation: None };
    for (q, (f, v)) in products.iter().zip(results) {
        if report.violation.is_none() {
            report.violation = v;
        }
        if f.norm() > tol {
            report.nonzero_f.push((q.clone(), to_c64(f)));
        }
    }
    Ok(report)
}

/// Minimal sizes read off dense overlaps, for comparison with a distance table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseProfile {
    /// Indexed by label; `None` for the zero label and for labels beyond the cap.
    pub entries: Vec<Option<u32>>,
    pub diagonal: Option<u32>,
}

/// For each label `a`, the smallest size `s ≤ cap` of a phase-free `Q` with `⟨a|Q|G⟩ ≠ 0`.
pub fn dense_distance_profile(g: &Graph, cap: u32) -> Result<DenseProfile> {
    let gs = build_graph_state::<f64>(g)?;
    let mut entries = vec![None; gs.amps.len()];
    let mut diagonal = None;
    for q in products_below::<f64>(g.n(), g.modulus(), cap + 1)? {
        let size = q.size() as u32;
        let ov = basis_overlaps(&gs, &apply_pauli_dense(&q, &gs)?)?;
        for (i, z) in ov.iter().enumerate() {
            if z.norm() > f64::tolerance() {
                let slot = if i == 0 { &mut diagonal } else { &mut entries[i] };
                if slot.is_none() {
                    *slot = Some(size);
                }
            }
        }
    }
    Ok(DenseProfile { entries, diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{apply_pauli_symbolic, build_family, Family, FamilyOptions};
    use proptest::prelude::*;

    fn t(d: u32, s: &str) -> ModTuple {
        ModTuple::from_digit_string(d, s).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    fn path2(d: u32) -> Graph {
        Graph::from_matrix(d, &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn graph_state_amplitudes() {
        let one = build_graph_state::<f64>(&Graph::empty(1, 3).unwrap()).unwrap();
        assert!(one.amplitudes().iter().all(|a| close(*a, c(3f64.sqrt().recip(), 0.0))));

        let p = build_graph_state::<f64>(&path2(2)).unwrap();
        let want = [c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)];
        assert!(p.amplitudes().iter().zip(want).all(|(a, b)| close(*a, b)));

        let p3 = build_graph_state::<f64>(&path2(3)).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!(close(p3.amplitudes()[8], w / 3.0));
        assert!((p3.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn graph_basis_is_orthonormal() {
        let g = path2(3);
        let states: Vec<DenseState> =
            (0..9).map(|i| graph_basis_state(&g, &ModTuple::from_index(3, 2, i)).unwrap()).collect();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(close(a.inner(b).unwrap(), c(want, 0.0)), "{i} {j}");
            }
        }
        assert!(graph_basis_state::<f64>(&g, &t(3, "00")).unwrap().approx_eq(&build_graph_state(&g).unwrap()));
    }

    #[test]
    fn z_shifts_graph_basis_labels() {
        let g = build_family(Family::Cycle, 3, 4, FamilyOptions::default()).unwrap();
        let st = graph_basis_state::<f64>(&g, &t(4, "312")).unwrap();
        let zs = apply_pauli_dense(&PauliProduct::z_on(4, 3, 0, 1), &st).unwrap();
        assert!(zs.approx_eq(&graph_basis_state(&g, &t(4, "012")).unwrap()));
        assert!(close(st.inner(&zs).unwrap(), c(0.0, 0.0)));
    }

    #[test]
    fn z_eigenvalue_on_computational_kets() {
        let mut amps = vec![c(0.0, 0.0); 64];
        amps[3 * 16 + 1 * 4 + 2] = c(1.0, 0.0);
        let ket = DenseState::from_amplitudes(4, 3, amps).unwrap();
        let zs = apply_pauli_dense(&PauliProduct::z_on(4, 3, 0, 1), &ket).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 3.0 / 4.0);
        assert!(close(ket.inner(&zs).unwrap(), w));
    }

    #[test]
    fn single_qudit_matrices() {
        for d in 2..6u32 {
            for j in 0..d {
                let mut amps = vec![c(0.0, 0.0); d as usize];
                amps[j as usize] = c(1.0, 0.0);
                let ket = DenseState::from_amplitudes(d, 1, amps).unwrap();
                let x = apply_pauli_dense(&PauliProduct::x_on(d, 1, 0, 1), &ket).unwrap();
                assert!(close(x.amplitudes()[((j + d - 1) % d) as usize], c(1.0, 0.0)));
                let z = apply_pauli_dense(&PauliProduct::z_on(d, 1, 0, 1), &ket).unwrap();
                let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / d as f64);
                assert!(close(z.amplitudes()[j as usize], w));
            }
        }
    }

    #[test]
    fn overlaps_match_inner_products() {
        let g = build_family(Family::Wheel, 4, 3, FamilyOptions::default()).unwrap();
        let gs = build_graph_state::<f64>(&g).unwrap();
        let psi = apply_pauli_dense(&"3 4: w^2 X1^1 Z3^2 X4^2".parse().unwrap(), &gs).unwrap();
        let ov = basis_overlaps(&gs, &psi).unwrap();
        for i in 0..81 {
            let a = graph_basis_state(&g, &ModTuple::from_index(3, 4, i)).unwrap();
            assert!(close(ov[i as usize], a.inner(&psi).unwrap()));
        }
    }

    #[test]
    fn x_acts_like_neighbor_zs() {
        let g = build_family(Family::Star, 4, 3, FamilyOptions::default()).unwrap();
        let gs = build_graph_state::<f64>(&g).unwrap();
        let x = apply_pauli_dense(&PauliProduct::x_on(3, 4, 0, 1), &gs).unwrap();
        let zs = apply_pauli_dense(&"3 4: Z2^1 Z3^1 Z4^1".parse().unwrap(), &gs).unwrap();
        assert!(x.max_diff(&zs).unwrap() < 1e-12);
    }

    #[test]
    fn single_precision_agrees() {
        let g = build_family(Family::Cycle, 4, 3, FamilyOptions::default()).unwrap();
        let a = graph_basis_state::<f32>(&g, &t(3, "1202")).unwrap();
        let b = graph_basis_state::<f64>(&g, &t(3, "1202")).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x.re as f64 - y.re).abs() < 1e-5 && (x.im as f64 - y.im).abs() < 1e-5);
        }
    }

    #[test]
    fn kl_on_five_cycle() {
        let g = build_family(Family::Cycle, 5, 2, FamilyOptions::default()).unwrap();
        let code = GraphCode::new(g, 3, vec![t(2, "00000"), t(2, "11111")], true).unwrap();
        let r = kl_verify(&code, 3).unwrap();
        assert!(r.passed() && r.nondegenerate());
        assert_eq!(r.products_checked, 5 * 3 + 10 * 9);
        let r = kl_verify(&code, 4).unwrap();
        assert_eq!(r.violation.unwrap().product.size(), 3);
    }

    #[test]
    fn kl_matrix_is_diagonal_for_a_good_code() {
        let g = build_family(Family::Cycle, 5, 2, FamilyOptions::default()).unwrap();
        let code = GraphCode::new(g, 3, vec![t(2, "00000"), t(2, "11111")], true).unwrap();
        let m = kl_matrix(&code, &"2 5: X1^1 Z2^1".parse().unwrap()).unwrap();
        assert!(m.iter().flatten().all(|z| z.norm() < 1e-9));
        let m = kl_matrix(&code, &PauliProduct::identity(2, 5)).unwrap();
        assert!(close(m[0][0], c(1.0, 0.0)) && close(m[1][1], c(1.0, 0.0)));
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let g = Graph::empty(15, 2).unwrap();
        assert!(matches!(build_graph_state::<f64>(&g), Err(Error::Capacity { .. })));
    }

    fn case() -> impl Strategy<Value = (Graph, PauliProduct, ModTuple)> {
        (1usize..=4, 2u32..=4).prop_flat_map(|(n, d)| {
            (
                proptest::collection::vec(0..d, n * (n - 1) / 2),
                0..d,
                proptest::collection::vec(0..d, n),
                proptest::collection::vec(0..d, n),
                proptest::collection::vec(0..d, n),
            )
                .prop_map(move |(w, lam, mu, nu, a)| {
                    let mut g = Graph::empty(n, d).unwrap();
                    let mut it = w.into_iter();
                    for i in 0..n {
                        for j in i + 1..n {
                            g.set_edge(i, j, it.next().unwrap()).unwrap();
                        }
                    }
                    let p =
                        PauliProduct::new(lam, ModTuple::new(d, mu).unwrap(), ModTuple::new(d, nu).unwrap()).unwrap();
                    (g, p, ModTuple::new(d, a).unwrap())
                })
        })
    }

    proptest! {
        #[test]
        fn symbolic_matches_dense((g, p, a) in case()) {
            let (b, phase) = apply_pauli_symbolic(&g, &p, &a).unwrap();
            let lhs = apply_pauli_dense(&p, &graph_basis_state::<f64>(&g, &a).unwrap()).unwrap();
            let w = roots::<f64>(g.modulus())[phase as usize];
            let rhs = graph_basis_state::<f64>(&g, &b).unwrap().scaled(w);
            prop_assert!(lhs.max_diff(&rhs).unwrap() < 1e-9);
        }
    }
}
