use super::*;
use crate::algebra::parse_polynomial;
use crate::linalg;
use proptest::prelude::*;

fn ring(vars: &[&str]) -> Arc<Ring> {
    Ring::standard(vars).unwrap()
}

fn ps(r: &Arc<Ring>, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|x| parse_polynomial(r, x).unwrap()).collect()
}

fn gb(r: &Arc<Ring>, s: &[&str]) -> GroebnerBasis {
    buchberger(&ps(r, s), Limits::default()).unwrap()
}

/// Column equal to `want` up to a nonzero scalar.
fn proportional(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let Some(i) = a.iter().position(|p| !p.is_zero()) else {
        return b.iter().all(Polynomial::is_zero);
    };
    if b[i].is_zero() {
        return false;
    }
    let c = a[i]
        .leading_term()
        .unwrap()
        .1
        .div(b[i].leading_term().unwrap().1);
    a.iter().zip(b).all(|(x, y)| *x == y.scale(&c))
}

#[test]
fn single_generator_is_its_own_basis() {
    let r = ring(&["x", "y"]);
    assert_eq!(
        gb(&r, &["x - y"]).generators(),
        ps(&r, &["x - y"]).as_slice()
    );
}

#[test]
fn monomial_ideal_is_its_own_basis() {
    let r = ring(&["x", "y", "z"]);
    let g = gb(&r, &["x z", "y z", "y^3"]);
    let mut got = g.generators().to_vec();
    let mut want = ps(&r, &["x z", "y z", "y^3"]);
    got.sort_by_key(|p| p.to_string());
    want.sort_by_key(|p| p.to_string());
    assert_eq!(got, want);
}

#[test]
fn twisted_cubic_minors_form_the_reduced_basis() {
    let r = ring(&["x", "y", "z", "w"]);
    let g = gb(&r, &["x z - y^2", "y w - z^2", "x w - y z"]);
    let want = ps(&r, &["y^2 - x z", "y z - x w", "z^2 - y w"]);
    assert_eq!(g.len(), 3);
    for w in &want {
        assert!(
            g.generators().contains(w),
            "{w} missing from {:?}",
            g.generators()
        );
    }
    // the two non-coprime S-pairs have explicit standard representations
    let [a, b, c] = [&want[0], &want[1], &want[2]];
    let z = parse_polynomial(&r, "z").unwrap();
    let y = parse_polynomial(&r, "y").unwrap();
    let x = parse_polynomial(&r, "x").unwrap();
    let w = parse_polynomial(&r, "w").unwrap();
    assert_eq!(&(&z * a) - &(&y * b), (&x * c).neg());
    assert_eq!(&(&y * c) - &(&z * b), (&w * a).neg());
}

#[test]
fn normal_forms() {
    let r = ring(&["x", "y", "z"]);
    let g = gb(&r, &["x z", "y z", "y^3"]);
    assert!(g.normal_form(&ps(&r, &["y^3"])[0]).unwrap().is_zero());
    assert_eq!(
        g.normal_form(&Polynomial::one(&r)).unwrap(),
        Polynomial::one(&r)
    );
    let lex = Ring::new(r.vars().to_vec(), TermOrder::lex(3)).unwrap();
    let h = gb(&lex, &["x z - y^2"]);
    assert_eq!(
        h.normal_form(&ps(&lex, &["x z"])[0]).unwrap(),
        ps(&lex, &["y^2"])[0]
    );
}

#[test]
fn unit_ideal() {
    let r = ring(&["x", "y"]);
    let g = gb(&r, &["x", "x + 1"]);
    assert!(g.is_unit());
    assert_eq!(g.generators(), &[Polynomial::one(&r)]);
}

#[test]
fn eliminate_parameter_from_a_parabola() {
    let r = ring(&["t", "x", "y"]);
    let e = eliminate(&ps(&r, &["x - t", "y - t^2"]), &[0], Limits::default()).unwrap();
    assert_eq!(e.ring().vars(), &["x".to_string(), "y".to_string()]);
    assert_eq!(e.generators(), ps(e.ring(), &["x^2 - y"]).as_slice());
}

#[test]
fn eliminate_nothing_is_the_basis() {
    let r = ring(&["x", "y", "z", "w"]);
    let gens = ps(&r, &["x z - y^2", "y w - z^2", "x w - y z"]);
    let e = eliminate(&gens, &[], Limits::default()).unwrap();
    let g = buchberger(&gens, Limits::default()).unwrap();
    assert_eq!(e.generators().len(), g.len());
    for (a, b) in e.generators().iter().zip(g.generators()) {
        assert_eq!(a.to_string(), b.to_string());
    }
}

#[test]
fn eliminate_two_parameters_gives_the_conic() {
    let r = ring(&["s", "t", "x", "y", "z"]);
    let e = eliminate(
        &ps(&r, &["x - s", "y - s t", "z - s t^2"]),
        &[0, 1],
        Limits::default(),
    )
    .unwrap();
    assert_eq!(e.len(), 1);
    let f = &e.generators()[0];
    // vanishes under x = s, y = st, z = st^2
    let r2 = ring(&["s", "t"]);
    let img = ps(&r2, &["s", "s t", "s t^2"]);
    let mut val = Polynomial::zero(&r2);
    for (m, c) in f.terms() {
        let mut t = Polynomial::constant(&r2, c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            t = &t * &img[i].pow(e);
        }
        val = &val + &t;
    }
    assert!(val.is_zero());
    // and is (up to sign) the irreducible quadric
    assert_eq!(f, &ps(e.ring(), &["y^2 - x z"])[0]);
}

#[test]
fn koszul_syzygy() {
    let r = ring(&["x", "y"]);
    let m = PolyMatrix::row(&r, &ps(&r, &["x", "y"])).unwrap();
    let s = syzygies(&m, Limits::default()).unwrap();
    assert_eq!(s.ncols(), 1);
    assert!(proportional(&s.columns()[0], &ps(&r, &["-y", "x"])));
    assert_eq!(s.source_degrees(), &[2]);
}

#[test]
fn first_syzygies_of_a_monomial_ideal() {
    let r = ring(&["x", "y", "z"]);
    let m = PolyMatrix::row(&r, &ps(&r, &["x z", "y z", "y^3"])).unwrap();
    let s = syzygies(&m, Limits::default()).unwrap();
    assert_eq!(s.ncols(), 2);
    assert_eq!(s.source_degrees(), &[3, 4]);
    assert!(proportional(&s.columns()[0], &ps(&r, &["-y", "x", "0"])));
    assert!(proportional(&s.columns()[1], &ps(&r, &["0", "-y^2", "z"])));
    assert!(m.compose(&s).unwrap().is_zero());
    assert!(s.is_minimal());
}

#[test]
fn torsion_free_single_column() {
    let r = ring(&["x", "y"]);
    let m = PolyMatrix::from_columns(&r, vec![0, 0], vec![ps(&r, &["x^2", "x y"])]).unwrap();
    assert_eq!(syzygies(&m, Limits::default()).unwrap().ncols(), 0);
}

#[test]
fn kernel_over_quotient_contains_the_maximal_ideal() {
    let r = ring(&["x", "y", "z"]);
    let j = ps(&r, &["x z", "y z", "y^3"]);
    let cols = vec![ps(&r, &["-y", "x", "0"]), ps(&r, &["0", "-y^2", "z"])];
    let phi = PolyMatrix::new(&r, vec![2, 2, 3], vec![3, 4], cols).unwrap();
    let k = kernel_mod_ideal(&phi, &j, Limits::default()).unwrap();
    // soundness modulo J
    let jg = buchberger(&j, Limits::default()).unwrap();
    for p in phi.compose(&k).unwrap().columns().iter().flatten() {
        assert!(jg.contains(p).unwrap());
    }
    let mut tr = k.entries();
    tr.extend(j.clone());
    let t = buchberger(&tr, Limits::default()).unwrap();
    for v in ["x", "y", "z"] {
        assert!(
            t.contains(&ps(&r, &[v])[0]).unwrap(),
            "{v} not in the trace"
        );
    }
}

#[test]
fn kernel_over_zero_ideal_is_the_syzygy_module() {
    let r = ring(&["x", "y", "z"]);
    let m = PolyMatrix::row(&r, &ps(&r, &["x z", "y z", "y^3"])).unwrap();
    let a = syzygies(&m, Limits::default()).unwrap();
    let b = kernel_mod_ideal(&m, &[], Limits::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn lift_recovers_cofactors() {
    let r = ring(&["x", "y", "z", "w"]);
    let gens = ps(&r, &["x z - y^2", "y w - z^2", "x w - y z"]);
    let f = ps(&r, &["x^2 w - x y z + z^3 - y z w"])[0].clone();
    let q = lift(&gens, &f, Limits::default()).unwrap().expect("member");
    let mut s = Polynomial::zero(&r);
    for (qi, gi) in q.iter().zip(&gens) {
        s = &s + &(qi * gi);
    }
    assert_eq!(s, f);
    assert!(lift(&gens, &ps(&r, &["x"])[0], Limits::default())
        .unwrap()
        .is_none());
}

#[test]
fn minimal_generators_drop_redundant_inputs() {
    let r = ring(&["x", "y"]);
    let gens = ps(&r, &["x^2", "x^2 + x y", "x^3 + y^3", "x y", "y^3"]);
    let m = minimal_generators(&gens, Limits::default()).unwrap();
    assert_eq!(m, ps(&r, &["x^2", "x^2 + x y", "x^3 + y^3"]));
}

#[test]
fn resource_cap_is_reported() {
    let r = ring(&["x", "y", "z", "w"]);
    let gens = ps(&r, &["x z - y^2", "y w - z^2", "x w - y z"]);
    let e = buchberger(
        &gens,
        Limits {
            max_pairs: 0,
            max_degree: 200,
        },
    )
    .unwrap_err();
    assert!(matches!(e, Error::Resource(_)));
}

// ---- randomized properties ----

fn small_ring() -> Arc<Ring> {
    ring(&["x", "y", "z"])
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n - 1 {
            cur.push(d);
            out.push(Monomial::from_exps(cur));
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e);
            rec(n, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn arb_poly(max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    proptest::collection::vec(
        (proptest::collection::vec(0u32..3, 3), -3i64..4),
        1..=max_terms,
    )
}

fn build(r: &Arc<Ring>, t: &[(Vec<u32>, i64)]) -> Polynomial {
    Polynomial::from_terms(
        r,
        t.iter()
            .map(|(e, c)| (Monomial::from_exps(e), Coeff::from_int(*c)))
            .collect(),
    )
    .unwrap()
}

/// `(degree of column, entries as (exponents, present))`
fn arb_monomial_matrix() -> impl Strategy<Value = Vec<(u32, Vec<Option<usize>>)>> {
    proptest::collection::vec(
        (
            1u32..3,
            proptest::collection::vec(proptest::option::weighted(0.8, 0usize..10), 2),
        ),
        3,
    )
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 24,
        rng_seed: proptest::test_runner::RngSeed::Fixed(14),
        ..ProptestConfig::default()
    })]

    #[test]
    fn normal_form_is_independent_of_reducer_choice(
        gens in proptest::collection::vec(arb_poly(3), 1..4),
        f in arb_poly(5),
        rot in 0usize..5,
    ) {
        let r = small_ring();
        let gens: Vec<Polynomial> = gens.iter().map(|t| build(&r, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let g = buchberger(&gens, Limits::default()).unwrap();
        let f = build(&r, &f);
        let nf = g.normal_form(&f).unwrap();
        let mut rotated = g.generators().to_vec();
        let k = rot % rotated.len();
        rotated.rotate_left(k);
        rotated.reverse();
        let g2 = GroebnerBasis::from_reduced(&r, rotated);
        prop_assert_eq!(g2.normal_form(&f).unwrap(), nf.clone());
        // no remainder term is divisible by a leading monomial
        for (m, _) in nf.terms() {
            prop_assert!(g.leading_monomials().iter().all(|l| !l.divides(m)));
        }
        // f - NF(f) is in the ideal, with explicit cofactors
        let diff = &f - &nf;
        let q = lift(&gens, &diff, Limits::default()).unwrap();
        prop_assert!(q.is_some());
        let mut s = Polynomial::zero(&r);
        for (qi, gi) in q.unwrap().iter().zip(&gens) {
            s = &s + &(qi * gi);
        }
        prop_assert_eq!(s, diff);
    }

    #[test]
    fn membership_agrees_with_lift(gens in proptest::collection::vec(arb_poly(3), 1..4), f in arb_poly(4)) {
        let r = small_ring();
        let gens: Vec<Polynomial> = gens.iter().map(|t| build(&r, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let g = buchberger(&gens, Limits::default()).unwrap();
        let f = build(&r, &f);
        prop_assert_eq!(g.contains(&f).unwrap(), lift(&gens, &f, Limits::default()).unwrap().is_some());
    }

    #[test]
    fn syzygies_are_sound(cols in arb_monomial_matrix()) {
        let r = small_ring();
        let (m, _) = monomial_matrix(&r, &cols);
        prop_assume!(m.is_some());
        let m = m.unwrap();
        let s = syzygies(&m, Limits::default()).unwrap();
        prop_assert!(m.compose(&s).unwrap().is_zero());
    }

    #[test]
    fn kernel_mod_ideal_is_complete_up_to_degree_six(
        cols in arb_monomial_matrix(),
        jgens in proptest::collection::vec(0usize..10, 0..3),
    ) {
        let r = small_ring();
        let (m, _) = monomial_matrix(&r, &cols);
        prop_assume!(m.is_some());
        let m = m.unwrap();
        let quad = monomials_of_degree(3, 2);
        let j: Vec<Monomial> = jgens.iter().map(|&k| quad[k % quad.len()].clone()).collect();
        let jp: Vec<Polynomial> = j.iter().map(|mm| Polynomial::term(&r, mm.clone(), Coeff::one())).collect();
        let k = kernel_mod_ideal(&m, &jp, Limits::default()).unwrap();
        let in_j = |mm: &Monomial| j.iter().any(|g| g.divides(mm));
        // soundness
        for p in m.compose(&k).unwrap().columns().iter().flatten() {
            prop_assert!(p.terms().iter().all(|(mm, _)| in_j(mm)));
        }
        for deg in 1..=6i64 {
            // coordinates: (column j, standard monomial of degree deg - d_j)
            let mut coords: Vec<(usize, Monomial)> = Vec::new();
            for (jj, &d) in m.source_degrees().iter().enumerate() {
                if deg >= d {
                    for mm in monomials_of_degree(3, (deg - d) as u32) {
                        if !in_j(&mm) {
                            coords.push((jj, mm));
                        }
                    }
                }
            }
            let targets: Vec<(usize, Monomial)> = monomials_of_degree(3, deg as u32)
                .into_iter()
                .filter(|mm| !in_j(mm))
                .flat_map(|mm| (0..m.nrows()).map(move |i| (i, mm.clone())))
                .collect();
            // matrix of the map in these coordinates
            let mut rows = vec![vec![Coeff::zero(); coords.len()]; targets.len()];
            for (c, (jj, mm)) in coords.iter().enumerate() {
                for i in 0..m.nrows() {
                    for (em, ec) in m.entry(i, *jj).terms() {
                        let img = em.mul(mm);
                        if let Some(t) = targets.iter().position(|(ti, tm)| *ti == i && *tm == img) {
                            rows[t][c] = &rows[t][c] + ec;
                        }
                    }
                }
            }
            let kernel_dim = coords.len() - linalg::rank(&rows);
            // span of monomial multiples of the generators in this degree
            let mut span: Vec<Vec<Coeff>> = Vec::new();
            for (g, &gd) in k.columns().iter().zip(k.source_degrees()) {
                if gd > deg {
                    continue;
                }
                for mult in monomials_of_degree(3, (deg - gd) as u32) {
                    let mut v = vec![Coeff::zero(); coords.len()];
                    for (jj, p) in g.iter().enumerate() {
                        for (em, ec) in p.terms() {
                            let mm = em.mul(&mult);
                            if in_j(&mm) {
                                continue;
                            }
                            let c = coords.iter().position(|(cj, cm)| *cj == jj && *cm == mm).unwrap();
                            v[c] = &v[c] + ec;
                        }
                    }
                    span.push(v);
                }
            }
            prop_assert_eq!(linalg::rank(&span), kernel_dim, "degree {}", deg);
        }
    }
}

fn monomial_matrix(r: &Arc<Ring>, cols: &[(u32, Vec<Option<usize>>)]) -> (Option<PolyMatrix>, ()) {
    let mut columns = Vec::new();
    let mut degs = Vec::new();
    for (d, entries) in cols {
        let mons = monomials_of_degree(3, *d);
        let col: Vec<Polynomial> = entries
            .iter()
            .map(|e| match e {
                Some(k) => Polynomial::term(r, mons[k % mons.len()].clone(), Coeff::one()),
                None => Polynomial::zero(r),
            })
            .collect();
        if col.iter().all(Polynomial::is_zero) {
            return (None, ());
        }
        columns.push(col);
        degs.push(*d as i64);
    }
    (
        Some(PolyMatrix::new(r, vec![0, 0], degs, columns).unwrap()),
        (),
    )
}
