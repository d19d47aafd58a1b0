use proptest::prelude::*;

use qgc::codes::{assert_distance, GraphCode};
use qgc::constructions::{hypercube16_code, HYPERCUBE16_GENERATORS};
use qgc::distance::{build_distance_table, build_distance_table_with, TableOptions};
use qgc::graphs::{build_family, Family, FamilyOptions, Graph};
use qgc::oracle::kl_verify;
use qgc::search::{search_additive, search_code, SearchOptions};
use qgc::{limits, qs_bound, CodeReport, ModTuple};

fn graph_from(n: usize, d: u32, weights: &[u32]) -> Graph {
    let mut g = Graph::empty(n, d).unwrap();
    let mut it = weights.iter();
    for a in 0..n {
        for b in a + 1..n {
            g.set_edge(a, b, *it.next().unwrap() % d).unwrap();
        }
    }
    g
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=5, 2u32..=3).prop_filter("D^n at most 3^7", |&(n, d)| limits::pow(d, n) <= 2187).prop_flat_map(
        |(n, d)| proptest::collection::vec(0..d, n * (n - 1) / 2).prop_map(move |w| graph_from(n, d, &w)),
    )
}

fn is_prime(d: u32) -> bool {
    d >= 2 && (2..d).take_while(|k| k * k <= d).all(|k| d % k != 0)
}

#[test]
fn packaged_hypercube_code_matches_the_constants() {
    let text = include_str!("../data/hypercube16_code.json");
    let report = CodeReport::from_json(text).unwrap();
    assert_eq!(report.generators, HYPERCUBE16_GENERATORS);
    let code = report.to_code().unwrap();
    assert_eq!(code, hypercube16_code().unwrap());
    assert_eq!(report.stabilizer.unwrap().order, 512);
}

#[test]
fn parallel_and_sequential_searches_agree() {
    for (f, n, d, delta) in [(Family::Cycle, 7, 2, 2), (Family::Wheel, 8, 2, 3), (Family::Cycle, 5, 3, 2)] {
        let g = build_family(f, n, d, FamilyOptions::default()).unwrap();
        let a = search_code(&g, delta, &SearchOptions::sequential()).unwrap();
        let b = search_code(&g, delta, &SearchOptions::default()).unwrap();
        assert_eq!(a, b);
        let ta = build_distance_table_with(&g, delta, TableOptions::sequential()).unwrap();
        let tb = build_distance_table_with(&g, delta, TableOptions::default()).unwrap();
        assert_eq!(ta.dump(), tb.dump());
    }
}

#[test]
fn stretch_entry_is_flagged_when_the_budget_runs_out() {
    let g = build_family(Family::Cycle, 9, 2, FamilyOptions::default()).unwrap();
    let additive = search_additive(&g, 2, &SearchOptions::sequential()).unwrap();
    let opts = SearchOptions { budget: Some(std::time::Duration::from_millis(200)), parallel: false };
    let code = search_code(&g, 2, &opts).unwrap();
    let tab = build_distance_table(&g, 1).unwrap();
    assert!(assert_distance(&code, &tab).unwrap().passed());
    if !code.exhaustive() {
        assert!(code.k() < qs_bound(9, 2, 2) as usize);
    }
    assert!(code.k() >= additive.k() || !code.exhaustive());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn combinatorial_and_dense_checks_agree(g in small_graph(), delta in 2u32..=3, picks in proptest::collection::vec(any::<u64>(), 1..6)) {
        let (d, n) = (g.modulus(), g.n());
        prop_assume!(delta as usize <= n + 1);
        let total = limits::pow(d, n) as u64;
        let mut words = vec![ModTuple::zero(d, n)];
        for p in picks {
            let t = ModTuple::from_index(d, n, p % total);
            if !words.contains(&t) {
                words.push(t);
            }
        }
        let code = GraphCode::new(g.clone(), delta, words, false).unwrap();
        let tab = build_distance_table(&g, delta - 1).unwrap();
        let combinatorial = assert_distance(&code, &tab).unwrap().passed();
        let kl = kl_verify(&code, delta).unwrap();
        prop_assert_eq!(combinatorial, kl.passed() && kl.nondegenerate());
    }

    #[test]
    fn search_outputs_respect_bounds(g in small_graph(), delta in 2u32..=3) {
        let (d, n) = (g.modulus(), g.n());
        prop_assume!(delta as usize <= n + 1 && n <= 5);
        for additive in [false, true] {
            let opts = SearchOptions::sequential();
            let found = if additive { search_additive(&g, delta, &opts) } else { search_code(&g, delta, &opts) };
            let Ok(code) = found else { continue };
            prop_assert!(code.k() as u128 <= qs_bound(n, delta, d).max(1));
            let tab = build_distance_table(&g, delta - 1).unwrap();
            prop_assert!(assert_distance(&code, &tab).unwrap().passed());
            if additive {
                prop_assert!(code.additive());
            }
            if code.additive() && is_prime(d) {
                let mut k = code.k();
                while k % d as usize == 0 {
                    k /= d as usize;
                }
                prop_assert_eq!(k, 1);
            }
        }
    }
}
