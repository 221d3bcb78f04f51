//! Acceptance suite: one test per criterion, each with a pinned time limit.
//! Expected values come from the embedded corpus file, not from this code.
//! Set `LEVELNG_SLOW=1` to also run the degree-2023 curve with raised limits.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use levelng::algebra::{Coeff, Monomial, Polynomial, Ring, TermOrder};
use levelng::analysis::{analyze, Input, Options};
use levelng::corpus::{self, error_code, run_item, CorpusItem, ItemResult, ItemStatus};
use levelng::groebner::{syzygies, GroebnerBasis, Limits, PolyMatrix};
use levelng::harness::{run_harness, HarnessConfig};
use levelng::resolution::{hilbert, hilbert_cross_check, krull_dimension, minimal_free_resolution};
use levelng::semigroup_ng::{canonical_v, ng_semigroup, Mode};
use levelng::stanley_reisner::{
    canonical_gens_known, classify_1dim, connected_graphs, KnownFamily, SimplicialComplex,
};
use levelng::toric::{semigroup_ring, toric_ideal, AffineSemigroup};
use levelng::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const HARNESS_SEED: u64 = 20_240_601;
const HARNESS_INSTANCES: usize = 400;
const HARNESS_MIN_CM: usize = 200;

fn item(id: &str) -> CorpusItem {
    corpus::builtin()
        .into_iter()
        .find(|i| i.id == id)
        .unwrap_or_else(|| panic!("no corpus item {id}"))
}

fn run(id: &str, limit: Duration) -> ItemResult {
    let r = run_item(&item(id), &Options::default());
    report(&r);
    assert!(
        Duration::from_millis(r.elapsed_ms as u64) < limit,
        "{id} took {} ms, limit {limit:?}",
        r.elapsed_ms
    );
    r
}

fn report(r: &ItemResult) {
    println!("{:<32} {:?} in {} ms", r.id, r.status, r.elapsed_ms);
    for f in r.facts.iter().filter(|f| !f.passed) {
        println!(
            "    {} expected {} actual {} ({})",
            f.fact, f.expected, f.actual, f.source
        );
    }
}

fn passed(r: &ItemResult) {
    assert_eq!(r.status, ItemStatus::Passed, "{} failed", r.id);
}

fn toric_items() -> Vec<CorpusItem> {
    corpus::builtin()
        .into_iter()
        .filter(|i| i.input.is_toric())
        .collect()
}

#[test]
fn criterion_01_type_two_non_level_monomial_ideal() {
    passed(&run("monomial-xz-yz-y3", Duration::from_secs(1)));
}

#[test]
fn criterion_02_non_toric_domain_with_h_vector_1231() {
    passed(&run("prime-cubic-domain", Duration::from_secs(5)));
}

#[test]
fn criterion_03_lattice_ideal_trace_contains_fourth_power() {
    let r = run("toric-lattice-six-vars", Duration::from_secs(5));
    passed(&r);
    let rep = r.report.unwrap();
    assert!(rep.hilbert_burch.shape_ok && rep.hilbert_burch.minors_generate);
    assert_eq!(rep.trace_contains_power(4), Some(true));
    assert_eq!(rep.trace_contains_m, Some(false));
}

#[test]
fn criterion_04_h_vector_1481_not_nearly_gorenstein_by_both_engines() {
    let r = run("curve-0-1-3-4-9-14", Duration::from_secs(60));
    passed(&r);
    let rep = r.report.unwrap();
    let sg = rep.semigroup.unwrap();
    assert_eq!(rep.is_nearly_gorenstein, Some(false));
    assert_eq!(sg.nearly_gorenstein_min_v, Some(false));
    assert_eq!(sg.nearly_gorenstein_all_v, Some(false));
    assert_eq!(sg.engines_agree, Some(true));
}

#[test]
fn criterion_05_type_three_four_five_non_level_nearly_gorenstein_curves() {
    passed(&run("curve-type3-nonlevel", Duration::from_secs(15 * 60)));
    passed(&run("curve-type4-nonlevel", Duration::from_secs(30 * 60)));
    passed(&run("curve-type5-nonlevel", Duration::from_secs(30 * 60)));
}

#[test]
fn criterion_06_hilbert_numerators_of_nearly_gorenstein_curves() {
    passed(&run("curve-0-2-6-8-11-17-23", Duration::from_secs(60)));
    let big = item("curve-0-2021-2023-4044-6067");
    let r = run_item(&big, &Options::default());
    report(&r);
    assert!(
        r.ok(),
        "a wrong answer or an error other than the resource bound"
    );
    if std::env::var_os("LEVELNG_SLOW").is_some() {
        let limits = Limits {
            max_pairs: 100_000_000,
            max_degree: 20_000,
        };
        let r = run_item(
            &big,
            &Options {
                limits,
                ..Options::default()
            },
        );
        report(&r);
        passed(&r);
    }
}

#[test]
fn criterion_07_pd_type_two_shape_and_random_structure_checks() {
    let start = Instant::now();
    let mut applicable = 0;
    for it in toric_items() {
        let r = run_item(&it, &Options::default());
        let Some(rep) = r.report else {
            assert!(
                matches!(r.status, ItemStatus::ResourceExit(_)),
                "{}: {:?}",
                it.id,
                r.status
            );
            continue;
        };
        if rep.is_cm
            && rep.pd == 2
            && rep.cm_type == Some(2)
            && rep.is_nearly_gorenstein == Some(true)
        {
            applicable += 1;
            let h = rep.h_vector.unwrap();
            assert!(
                h[0] == 1 && h.len() >= 2 && h[1..].iter().all(|&x| x == 2),
                "{}: h = {h:?}",
                it.id
            );
        }
    }
    assert!(
        applicable >= 2,
        "only {applicable} corpus items with pd = type = 2"
    );
    let cfg = HarnessConfig {
        seed: HARNESS_SEED,
        instances: HARNESS_INSTANCES,
        jobs: 4,
        ..HarnessConfig::default()
    };
    let s = run_harness(&cfg, &Options::default());
    println!(
        "harness: {} curves, {} CM, {} NG, {} violations",
        s.instances,
        s.cohen_macaulay,
        s.nearly_gorenstein,
        s.violations.len()
    );
    assert!(s.cohen_macaulay >= HARNESS_MIN_CM);
    assert!(s.violations.is_empty(), "{:?}", s.violations);
    assert!(s.skipped.is_empty(), "{:?}", s.skipped);
    assert!(start.elapsed() < Duration::from_secs(600));
}

#[test]
fn criterion_08_semigroup_and_kernel_trace_verdicts_agree() {
    for it in toric_items() {
        let r = run_item(&it, &Options::default());
        match &r.report {
            Some(rep) if rep.is_cm => {
                let sg = rep.semigroup.as_ref().unwrap();
                assert_eq!(sg.engines_agree, Some(true), "{}", it.id);
                assert_eq!(
                    sg.nearly_gorenstein_min_v, rep.is_nearly_gorenstein,
                    "{}",
                    it.id
                );
            }
            Some(_) => {}
            None => assert!(
                matches!(r.status, ItemStatus::ResourceExit(_)),
                "{}: {:?}",
                it.id,
                r.status
            ),
        }
    }
    let cfg = HarnessConfig {
        seed: HARNESS_SEED,
        instances: HARNESS_INSTANCES,
        jobs: 4,
        ..HarnessConfig::default()
    };
    let s = run_harness(&cfg, &Options::default());
    assert!(s.inconsistencies.is_empty(), "{:?}", s.inconsistencies);
    assert_eq!(s.engine_comparisons, s.cohen_macaulay);
    // a disagreement is reported as an inconsistency, which exits with 3
    assert_eq!(error_code(&Error::Inconsistent(String::new())), 3);
}

#[test]
fn criterion_09_stanley_reisner_suite() {
    let start = Instant::now();
    let opts = Options::default();
    let complex = |d: &SimplicialComplex| {
        analyze(
            &Input::Complex {
                vertices: d.vertex_count(),
                facets: d.facets().to_vec(),
            },
            &opts,
        )
        .unwrap()
    };
    // (a) points and (b) paths
    for n in 2..=6 {
        for (kind, d) in [
            (KnownFamily::Points, SimplicialComplex::points(n).unwrap()),
            (KnownFamily::Path, SimplicialComplex::path(n).unwrap()),
        ] {
            let r = complex(&d);
            assert_eq!(
                (r.is_nearly_gorenstein, r.is_level),
                (Some(true), Some(true)),
                "{kind:?} {n}"
            );
            assert!(
                canonical_gens_known(kind, n, Limits::default())
                    .unwrap()
                    .verified,
                "{kind:?} {n}"
            );
        }
    }
    // (c) connected graphs on at most 7 vertices
    let mut graphs = 0;
    for n in 2..=7 {
        for g in connected_graphs(n) {
            let d = SimplicialComplex::graph(n, &g).unwrap();
            let r = complex(&d);
            let mut deg = vec![0; n + 1];
            for &(a, b) in &g {
                deg[a] += 1;
                deg[b] += 1;
            }
            let path_or_cycle = deg[1..].iter().all(|&x| x <= 2);
            assert_eq!(
                r.is_nearly_gorenstein,
                Some(path_or_cycle),
                "{n} vertices {g:?} ({:?})",
                classify_1dim(&d)
            );
            graphs += 1;
        }
    }
    assert_eq!(graphs, 1 + 2 + 6 + 21 + 112 + 853);
    // (d) and (e)
    passed(&run("sr-polarized-monomial", Duration::from_secs(60)));
    passed(&run("sr-projective-plane", Duration::from_secs(60)));
    assert!(start.elapsed() < Duration::from_secs(600));
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max: u32) -> Monomial {
    Monomial::from_exps(&(0..n).map(|_| rng.gen_range(0..=max)).collect::<Vec<_>>())
}

fn random_homogeneous(rng: &mut ChaCha8Rng, r: &std::sync::Arc<Ring>, deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(r);
    for _ in 0..rng.gen_range(1..=3) {
        let mut e = vec![0u32; r.nvars()];
        for _ in 0..deg {
            e[rng.gen_range(0..r.nvars())] += 1;
        }
        let c = Coeff::from_int(rng.gen_range(-3..=3));
        p = &p + &Polynomial::term(r, Monomial::from_exps(&e), c);
    }
    p
}

#[test]
fn criterion_10_seeded_invariant_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    // order axioms
    for ord in [
        TermOrder::degrevlex(4),
        TermOrder::lex(4),
        TermOrder::degrevlex(4).with_weights(vec![1, 2, 3, 1]),
    ] {
        for _ in 0..300 {
            let (a, b, c) = (
                random_monomial(&mut rng, 4, 5),
                random_monomial(&mut rng, 4, 5),
                random_monomial(&mut rng, 4, 5),
            );
            assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
            assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ord.cmp(&a, &b));
            assert_ne!(ord.cmp(&Monomial::one(4), &a), Ordering::Greater);
        }
    }
    let r = Ring::standard(&["a", "b", "c", "d"]).unwrap();
    for _ in 0..40 {
        let mut gens = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let d = rng.gen_range(2..=3);
            let p = random_homogeneous(&mut rng, &r, d);
            if !p.is_zero() {
                gens.push(p);
            }
        }
        if gens.is_empty() {
            continue;
        }
        // confluence: the reduced basis and normal forms do not depend on input order
        let g1 = GroebnerBasis::compute(&gens, Limits::default()).unwrap();
        gens.shuffle(&mut rng);
        let g2 = GroebnerBasis::compute(&gens, Limits::default()).unwrap();
        assert_eq!(g1.generators(), g2.generators());
        let f = random_homogeneous(&mut rng, &r, 4);
        assert_eq!(g1.normal_form(&f).unwrap(), g2.normal_form(&f).unwrap());
        // syzygy soundness
        let row = PolyMatrix::row(&r, &gens).unwrap();
        let syz = syzygies(&row, Limits::default()).unwrap();
        assert!(row.compose(&syz).unwrap().is_zero());
        // resolution: d∘d = 0, minimal, Hilbert function cross-check in degrees 0..10
        let res = minimal_free_resolution(&gens, Limits::default()).unwrap();
        res.verify().unwrap();
        assert!(res.maps().iter().all(|m| m.is_minimal()));
        let h = hilbert(&res, krull_dimension(res.groebner_basis())).unwrap();
        hilbert_cross_check(&res, &h, 10).unwrap();
    }
    // translation invariance and membership re-summation on Cohen-Macaulay curves
    for e in [
        &[0, 1, 2, 4][..],
        &[0, 2, 3, 5],
        &[0, 1, 3, 4, 9, 14],
        &[0, 2, 4, 5, 7],
    ] {
        let s = AffineSemigroup::numerical_curve(e).unwrap();
        let ring = semigroup_ring(&s, None).unwrap();
        let res = minimal_free_resolution(
            &toric_ideal(&s, &ring, Limits::default()).unwrap(),
            Limits::default(),
        )
        .unwrap();
        let cd = canonical_v(&s, &res).unwrap();
        let base = ng_semigroup(&s, &cd, Mode::MinimalV)
            .unwrap()
            .nearly_gorenstein;
        for _ in 0..10 {
            let mut c = vec![0i64, 0];
            for g in s.generators() {
                c = AffineSemigroup::add(
                    &c,
                    &g.iter()
                        .map(|v| v * rng.gen_range(-3..=3))
                        .collect::<Vec<_>>(),
                );
            }
            assert_eq!(
                ng_semigroup(&s, &cd.translated(&c), Mode::MinimalV)
                    .unwrap()
                    .nearly_gorenstein,
                base
            );
        }
        for _ in 0..50 {
            let a = vec![rng.gen_range(0..8), rng.gen_range(0..8 * e[e.len() - 1])];
            if let Some(idx) = s.decompose(&a) {
                let sum = idx.iter().fold(vec![0i64, 0], |acc, &i| {
                    AffineSemigroup::add(&acc, &s.generators()[i])
                });
                assert_eq!(sum, a);
            }
        }
    }
}
