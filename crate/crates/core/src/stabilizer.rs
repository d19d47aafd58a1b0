//! Stabilizers of additive graph codes.
//!
//! For an additive code `C` the stabilizer is indexed by the dual subgroup
//! `S = {s : s·c ≡ 0 for all c ∈ C}`. The element for `s` is the image of
//! `X^s` under the graph unitary, `T_s = ω^{q(s)} X^s Z^{⊖Γs}` with
//! `q(s) = Σ_{l<m} Γ_lm s_l s_m`. It leaves every label in place and
//! multiplies `|a⟩` by `ω^{s·a}`.

use std::collections::HashMap;
use std::fmt;

use crate::codes::GraphCode;
use crate::error::{Error, Result};
use crate::graphs::{Graph, PauliAction};
use crate::limits;
use crate::pauli::{commutation_exponent, PauliProduct};
use crate::zmod::{dual_generators, solve_dual_with_cap, span_with_cap, GeneratorMatrix, LabelSpace, ModTuple};

/// Largest `D^n` for which maximality is checked by sweeping all products.
pub const MAXIMALITY_LIMIT: u128 = 4096;

/// Element-pair budget above which pairwise checks fall back to generators.
const PAIR_LIMIT: u128 = 1 << 22;

/// `T_s = ω^{q(s)} X^s Z^{⊖Γs}`.
pub fn stabilizer_element(g: &Graph, s: &ModTuple) -> Result<PauliProduct> {
    let d = g.modulus();
    let gs = ModTuple::new(d, g.mat_vec(s.entries()))?;
    PauliProduct::new(g.quadratic_form(s.entries()), s.clone(), gs.neg())
}

/// The stabilizer of an additive code, stored element by element when it fits
/// under the memory cap and by generators otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    graph: Graph,
    generators: GeneratorMatrix,
    order: u128,
    members: Vec<(ModTuple, PauliProduct)>,
    enumerated: bool,
}

impl StabilizerGroup {
    /// Assembles a group from explicit parts. `members` must cover every
    /// generator row; they are trusted only as far as `verify_stabilizer` checks them.
    pub fn from_parts(
        graph: Graph,
        generators: GeneratorMatrix,
        members: Vec<(ModTuple, PauliProduct)>,
        enumerated: bool,
    ) -> Result<Self> {
        let (d, n) = (graph.modulus(), graph.n());
        if generators.modulus() != d || generators.n() != n {
            return Err(Error::DimensionMismatch {
                expected_n: n,
                expected_d: d,
                got_n: generators.n(),
                got_d: generators.modulus(),
            });
        }
        for (s, t) in &members {
            if s.modulus() != d || s.len() != n || t.modulus() != d || t.n() != n {
                return Err(Error::DimensionMismatch {
                    expected_n: n,
                    expected_d: d,
                    got_n: s.len(),
                    got_d: s.modulus(),
                });
            }
        }
        if let Some(g) = generators.rows().iter().find(|g| !members.iter().any(|(s, _)| s == *g)) {
            return Err(Error::InvalidArgument(format!("generator {g} has no element")));
        }
        let order = generators.subgroup_order();
        Ok(Self { graph, generators, order, members, enumerated })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `|S|`.
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn generators(&self) -> &GeneratorMatrix {
        &self.generators
    }

    /// `(s, T_s)` pairs: all of `S` when enumerated, the generators otherwise.
    pub fn members(&self) -> &[(ModTuple, PauliProduct)] {
        &self.members
    }

    pub fn enumerated(&self) -> bool {
        self.enumerated
    }

    pub fn member_mut(&mut self, i: usize) -> Option<&mut (ModTuple, PauliProduct)> {
        self.members.get_mut(i)
    }

    fn generator_members(&self) -> Vec<&(ModTuple, PauliProduct)> {
        self.generators.rows().iter().filter_map(|g| self.members.iter().find(|(s, _)| s == g)).collect()
    }
}

/// Builds `S` and its Pauli elements for an additive code.
pub fn stabilizer_subgroup(code: &GraphCode) -> Result<StabilizerGroup> {
    let c_gens = match code.generators() {
        Some(g) => g.clone(),
        None if code.k() == 1 => GeneratorMatrix::new(code.modulus(), code.n(), vec![])?,
        None => return Err(Error::NotAStabilizerCode),
    };
    let g = code.graph();
    let s_gens = dual_generators(&c_gens);
    let cap = limits::mem_cap();
    let (tuples, enumerated) = if s_gens.subgroup_order() <= cap as u128 {
        (solve_dual_with_cap(&c_gens, cap)?, true)
    } else {
        (s_gens.rows().to_vec(), false)
    };
    let members = tuples.into_iter().map(|s| stabilizer_element(g, &s).map(|t| (s, t))).collect::<Result<Vec<_>>>()?;
    StabilizerGroup::from_parts(g.clone(), s_gens, members, enumerated)
}

/// A failed stabilizer check with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizerViolation {
    /// The element stored for `s` does not have X part `s`.
    Mislabeled {
        s: ModTuple,
        element: PauliProduct,
    },
    /// `T_s|c⟩ ≠ |c⟩`.
    NotFixed {
        s: ModTuple,
        codeword: ModTuple,
        label: ModTuple,
        phase: u32,
    },
    /// The number of labels fixed by the whole group differs from K.
    FixedCount {
        expected: u128,
        found: u128,
    },
    /// A product outside the group fixes every codeword.
    ExtraFixer {
        element: PauliProduct,
    },
    /// `T_s·T_t ≠ T_{s⊕t}`.
    GroupLaw {
        s: ModTuple,
        t: ModTuple,
        product: PauliProduct,
        expected: PauliProduct,
    },
    NotCommuting {
        s: ModTuple,
        t: ModTuple,
        exponent: u32,
    },
    /// `|C|·|S| ≠ D^n`.
    OrderIdentity {
        code: u128,
        stabilizer: u128,
        total: u128,
    },
    /// The dual of `S` is not the code.
    DoubleDual,
}

impl fmt::Display for StabilizerViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StabilizerViolation::*;
        match self {
            Mislabeled { s, element } => write!(f, "element {element} stored for s={s}"),
            NotFixed { s, codeword, label, phase } => {
                write!(f, "C1: T_s for s={s} maps codeword {codeword} to w^{phase} |{label}>")
            }
            FixedCount { expected, found } => write!(f, "C3: {found} labels fixed by every T_s, expected {expected}"),
            ExtraFixer { element } => write!(f, "C2: {element} fixes every codeword but is not in the group"),
            GroupLaw { s, t, product, expected } => {
                write!(f, "group law: T_s T_t = {product} for s={s}, t={t}, expected {expected}")
            }
            NotCommuting { s, t, exponent } => write!(f, "T_s T_t = w^{exponent} T_t T_s for s={s}, t={t}"),
            OrderIdentity { code, stabilizer, total } => write!(f, "|C||S| = {code}*{stabilizer} != {total}"),
            DoubleDual => f.write_str("the dual of S is not the code"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReport {
    pub order: u128,
    /// Pairwise checks covered every element rather than generators only.
    pub exhaustive: bool,
    /// Labels fixed by the whole group, when `D^n` fits under the memory cap.
    pub fixed_labels: Option<u128>,
    /// Whether the all-products maximality sweep ran.
    pub maximality_checked: bool,
    pub violations: Vec<StabilizerViolation>,
}

impl StabilizerReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the stabilizer conditions for `stab` against `code`.
pub fn verify_stabilizer(code: &GraphCode, stab: &StabilizerGroup) -> Result<StabilizerReport> {
    let g = code.graph();
    if stab.graph() != g {
        return Err(Error::InvalidArgument("stabilizer belongs to a different graph".into()));
    }
    let (d, n) = (g.modulus(), g.n());
    let total = limits::pow(d, n);
    let k = code.k() as u128;
    let mut v = Vec::new();

    for (s, t) in stab.members() {
        if t.x_exponents() != s {
            v.push(StabilizerViolation::Mislabeled { s: s.clone(), element: t.clone() });
            break;
        }
    }

    let actions: Vec<PauliAction> =
        stab.members().iter().map(|(_, t)| PauliAction::new(g, t)).collect::<Result<_>>()?;
    let pair_count = stab.members().len() as u128 * k;
    let exhaustive = stab.enumerated() && pair_count <= PAIR_LIMIT;
    let probe: Vec<&ModTuple> = if pair_count <= PAIR_LIMIT {
        code.codewords().iter().collect()
    } else {
        let mut p: Vec<&ModTuple> = vec![&code.codewords()[0]];
        p.extend(code.generators().into_iter().flat_map(|gm| gm.rows()));
        p
    };
    'c1: for ((s, _), act) in stab.members().iter().zip(&actions) {
        for &c in &probe {
            let (label, phase) = act.apply(c);
            if &label != c || phase != 0 {
                v.push(StabilizerViolation::NotFixed { s: s.clone(), codeword: c.clone(), label, phase });
                break 'c1;
            }
        }
    }

    let fixed_labels = if total <= limits::mem_cap() as u128 {
        let gens: Vec<PauliAction> =
            stab.generator_members().iter().map(|(_, t)| PauliAction::new(g, t)).collect::<Result<_>>()?;
        let found = count_fixed_labels(d, n, &gens)?;
        if found != k {
            v.push(StabilizerViolation::FixedCount { expected: k, found });
        }
        Some(found)
    } else {
        None
    };

    let maximality_checked = total <= MAXIMALITY_LIMIT;
    if maximality_checked {
        if let Some(x) = extra_fixer(code, stab)? {
            v.push(x);
        }
    }

    if let Some(x) = group_law(stab)? {
        v.push(x);
    }

    if k * stab.order() != total {
        v.push(StabilizerViolation::OrderIdentity { code: k, stabilizer: stab.order(), total });
    }

    if stab.order() <= limits::mem_cap() as u128 {
        let back = solve_dual_with_cap(stab.generators(), limits::mem_cap())?;
        if back != code.codewords() {
            v.push(StabilizerViolation::DoubleDual);
        }
    }

    Ok(StabilizerReport { order: stab.order(), exhaustive, fixed_labels, maximality_checked, violations: v })
}

fn count_fixed_labels(d: u32, n: usize, gens: &[PauliAction]) -> Result<u128> {
    let space = LabelSpace::new(d, n, limits::mem_cap())?;
    let mut found = 0u128;
    for idx in 0..space.size() {
        let a = space.tuple(idx);
        if gens.iter().all(|act| act.apply(&a) == (a.clone(), 0)) {
            found += 1;
        }
    }
    Ok(found)
}

/// Sweeps every `(μ, ν)`; a product fixes all codewords only if it moves no
/// label, and then its phase is pinned by the zero codeword.
fn extra_fixer(code: &GraphCode, stab: &StabilizerGroup) -> Result<Option<StabilizerViolation>> {
    let g = code.graph();
    let (d, n) = (g.modulus(), g.n());
    let space = LabelSpace::new(d, n, MAXIMALITY_LIMIT as u64)?;
    let known: HashMap<&ModTuple, &PauliProduct> = stab.members().iter().map(|(s, t)| (s, t)).collect();
    for mu_idx in 0..space.size() {
        let mu = space.tuple(mu_idx);
        let gmu = space.index_of_digits(&g.mat_vec(mu.entries()));
        for nu_idx in 0..space.size() {
            if space.add(nu_idx, gmu) != 0 {
                continue;
            }
            let nu = space.tuple(nu_idx);
            let probe = PauliProduct::new(0, mu.clone(), nu)?;
            let act = PauliAction::new(g, &probe)?;
            let lambda = (d - act.phase_on(&code.codewords()[0])) % d;
            let candidate = probe.with_phase(lambda);
            let act = PauliAction::new(g, &candidate)?;
            if code.codewords().iter().all(|c| act.phase_on(c) == 0) {
                let inside = match known.get(&mu) {
                    Some(t) => **t == candidate,
                    None => !stab.enumerated() && stabilizer_element(g, &mu)? == candidate && in_span(stab, &mu)?,
                };
                if !inside {
                    return Ok(Some(StabilizerViolation::ExtraFixer { element: candidate }));
                }
            }
        }
    }
    Ok(None)
}

fn in_span(stab: &StabilizerGroup, s: &ModTuple) -> Result<bool> {
    let elems = span_with_cap(stab.generators(), MAXIMALITY_LIMIT as u64)?;
    Ok(elems.binary_search(s).is_ok())
}

fn group_law(stab: &StabilizerGroup) -> Result<Option<StabilizerViolation>> {
    let g = stab.graph();
    let members: Vec<&(ModTuple, PauliProduct)> = {
        let m = stab.members().len() as u128;
        if m * m <= PAIR_LIMIT {
            stab.members().iter().collect()
        } else {
            stab.generator_members()
        }
    };
    let known: HashMap<&ModTuple, &PauliProduct> = stab.members().iter().map(|(s, t)| (s, t)).collect();
    for (i, (s, ts)) in members.iter().map(|m| (&m.0, &m.1)).enumerate() {
        for (t, tt) in members[i..].iter().map(|m| (&m.0, &m.1)) {
            let exponent = commutation_exponent(ts, tt)?;
            if exponent != 0 {
                return Ok(Some(StabilizerViolation::NotCommuting { s: s.clone(), t: t.clone(), exponent }));
            }
            let sum = s.add_unchecked(t);
            let expected = match known.get(&sum) {
                Some(p) => (*p).clone(),
                None => stabilizer_element(g, &sum)?,
            };
            let product = crate::pauli::multiply(ts, tt)?;
            if product != expected {
                return Ok(Some(StabilizerViolation::GroupLaw { s: s.clone(), t: t.clone(), product, expected }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{apply_pauli_symbolic, build_family, Family, FamilyOptions};
    use crate::pauli::multiply;
    use proptest::prelude::*;

    fn t(d: u32, s: &str) -> ModTuple {
        ModTuple::from_digit_string(d, s).unwrap()
    }

    fn rep5() -> GraphCode {
        let g = build_family(Family::Cycle, 5, 2, FamilyOptions::default()).unwrap();
        GraphCode::new(g, 3, vec![t(2, "00000"), t(2, "11111")], true).unwrap()
    }

    #[test]
    fn single_vertex() {
        for d in 2..6 {
            let g = Graph::empty(1, d).unwrap();
            let code = GraphCode::new(g, 1, vec![ModTuple::zero(d, 1)], true).unwrap();
            let stab = stabilizer_subgroup(&code).unwrap();
            assert_eq!(stab.order(), d as u128);
            for (s, el) in stab.members() {
                assert_eq!(*el, PauliProduct::new(0, s.clone(), ModTuple::zero(d, 1)).unwrap());
            }
            let r = verify_stabilizer(&code, &stab).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
            assert_eq!(r.fixed_labels, Some(1));
        }
    }

    #[test]
    fn two_path_element() {
        let g = Graph::from_matrix(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let code = GraphCode::new(g, 1, vec![t(2, "00"), t(2, "11")], true).unwrap();
        let stab = stabilizer_subgroup(&code).unwrap();
        let s: Vec<String> = stab.members().iter().map(|(s, _)| s.to_string()).collect();
        assert_eq!(s.len(), 2);
        assert_eq!(stab.members()[1].1.to_string(), "w^1 X1^1 Z1^1 X2^1 Z2^1");
        assert!(verify_stabilizer(&code, &stab).unwrap().passed());
    }

    #[test]
    fn five_cycle_repetition_code() {
        let code = rep5();
        let stab = stabilizer_subgroup(&code).unwrap();
        assert_eq!(stab.order(), 16);
        let r = verify_stabilizer(&code, &stab).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.maximality_checked && r.exhaustive);
        assert_eq!(r.fixed_labels, Some(2));
    }

    #[test]
    fn trivial_code_fixes_one_label() {
        let g = build_family(Family::Wheel, 5, 3, FamilyOptions::default()).unwrap();
        let code = GraphCode::new(g, 2, vec![ModTuple::zero(3, 5)], true).unwrap();
        let stab = stabilizer_subgroup(&code).unwrap();
        assert_eq!(stab.order(), 243);
        let r = verify_stabilizer(&code, &stab).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.fixed_labels, Some(1));
    }

    #[test]
    fn nonadditive_is_refused() {
        let g = Graph::from_matrix(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let code = GraphCode::new(g, 2, vec![t(2, "00"), t(2, "01"), t(2, "10")], false).unwrap();
        assert!(matches!(stabilizer_subgroup(&code), Err(Error::NotAStabilizerCode)));
    }

    #[test]
    fn corrupted_phase_is_caught() {
        let code = rep5();
        let mut stab = stabilizer_subgroup(&code).unwrap();
        let (_, el) = stab.member_mut(5).unwrap();
        *el = el.with_phase((el.phase() + 1) % 2);
        let r = verify_stabilizer(&code, &stab).unwrap();
        assert!(matches!(r.violations[0], StabilizerViolation::NotFixed { .. }), "{:?}", r.violations);
    }

    #[test]
    fn dropped_codeword_is_caught() {
        // the stabilizer of a larger code does not fix {0} maximally
        let code = rep5();
        let stab = stabilizer_subgroup(&code).unwrap();
        let smaller = GraphCode::new(code.graph().clone(), 3, vec![t(2, "00000")], true).unwrap();
        let r = verify_stabilizer(&smaller, &stab).unwrap();
        assert!(r.violations.iter().any(|v| matches!(v, StabilizerViolation::FixedCount { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, StabilizerViolation::ExtraFixer { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, StabilizerViolation::OrderIdentity { .. })));
    }

    fn graph_strategy() -> impl Strategy<Value = Graph> {
        (1usize..=5, 2u32..=5).prop_flat_map(|(n, d)| {
            proptest::collection::vec(0..d, n * (n - 1) / 2).prop_map(move |w| {
                let mut g = Graph::empty(n, d).unwrap();
                let mut it = w.into_iter();
                for a in 0..n {
                    for b in a + 1..n {
                        g.set_edge(a, b, it.next().unwrap()).unwrap();
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn elements_form_a_commuting_group(g in graph_strategy(), seed in any::<u64>()) {
            let (d, n) = (g.modulus(), g.n());
            let total = limits::pow(d, n) as u64;
            let s = ModTuple::from_index(d, n, seed % total);
            let t = ModTuple::from_index(d, n, (seed / total) % total);
            let ts = stabilizer_element(&g, &s).unwrap();
            let tt = stabilizer_element(&g, &t).unwrap();
            prop_assert_eq!(multiply(&ts, &tt).unwrap(), stabilizer_element(&g, &s.add_unchecked(&t)).unwrap());
            prop_assert_eq!(commutation_exponent(&ts, &tt).unwrap(), 0);
        }

        #[test]
        fn element_acts_by_dot_product(g in graph_strategy(), seed in any::<u64>()) {
            let (d, n) = (g.modulus(), g.n());
            let total = limits::pow(d, n) as u64;
            let s = ModTuple::from_index(d, n, seed % total);
            let a = ModTuple::from_index(d, n, (seed / total) % total);
            let ts = stabilizer_element(&g, &s).unwrap();
            prop_assert_eq!(apply_pauli_symbolic(&g, &ts, &a).unwrap(), (a.clone(), s.dot_unchecked(&a)));
        }
    }
}
