use levelng::groebner::Limits;
use levelng::resolution::{minimal_free_resolution, ring_invariants_with_dim};
use levelng::stanley_reisner::{
    canonical_gens_known, connected_graphs, locally_gorenstein, sr_ideal, KnownFamily,
    SimplicialComplex,
};
use levelng::trace::{is_nearly_gorenstein, trace_from_resolution};
use rayon::prelude::*;

struct Verdict {
    cm: bool,
    level: Option<bool>,
    ng: Option<bool>,
}

fn verdict(d: &SimplicialComplex) -> Verdict {
    let ring = d.ring();
    let res = minimal_free_resolution(&sr_ideal(d, &ring).unwrap(), Limits::default()).unwrap();
    let dim = (d.dimension() + 1) as usize;
    let inv = ring_invariants_with_dim(&res, dim).unwrap();
    let ng = inv.is_cm.then(|| {
        is_nearly_gorenstein(&trace_from_resolution(&res, dim, Limits::default()).unwrap()).unwrap()
    });
    Verdict {
        cm: inv.is_cm,
        level: inv.is_level,
        ng,
    }
}

/// Path or cycle, read off the degree sequence of a connected graph.
fn path_or_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut deg = vec![0usize; n + 1];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    deg[1..].iter().all(|&x| x <= 2)
}

#[test]
fn points_are_nearly_gorenstein_and_level() {
    for n in 2..=6 {
        let v = verdict(&SimplicialComplex::points(n).unwrap());
        assert!(v.cm, "{n} points");
        assert_eq!((v.ng, v.level), (Some(true), Some(true)), "{n} points");
        assert!(
            canonical_gens_known(KnownFamily::Points, n, Limits::default())
                .unwrap()
                .verified,
            "{n} points"
        );
    }
}

#[test]
fn paths_are_nearly_gorenstein_and_level() {
    for e in 2..=6 {
        let v = verdict(&SimplicialComplex::path(e).unwrap());
        assert!(v.cm, "path with {e} edges");
        assert_eq!(
            (v.ng, v.level),
            (Some(true), Some(true)),
            "path with {e} edges"
        );
        assert!(
            canonical_gens_known(KnownFamily::Path, e, Limits::default())
                .unwrap()
                .verified,
            "path with {e} edges"
        );
    }
}

#[test]
fn graph_counts_match_known_enumeration() {
    let counts: Vec<usize> = (2..=7).map(|n| connected_graphs(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 6, 21, 112, 853]);
}

#[test]
fn one_dimensional_nearly_gorenstein_iff_path_or_cycle() {
    let cases: Vec<(usize, Vec<(usize, usize)>)> = (2..=7)
        .flat_map(|n| connected_graphs(n).into_iter().map(move |g| (n, g)))
        .collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|(n, edges)| {
            let d = SimplicialComplex::graph(*n, edges).unwrap();
            let v = verdict(&d);
            // connected graphs are Cohen-Macaulay
            let expected = path_or_cycle(*n, edges);
            (!v.cm || v.ng != Some(expected))
                .then(|| format!("{n} vertices {edges:?}: cm {} ng {:?}", v.cm, v.ng))
        })
        .collect();
    assert!(
        bad.is_empty(),
        "{} mismatches, first: {:?}",
        bad.len(),
        bad.first()
    );
}

#[test]
fn nearly_gorenstein_implies_locally_gorenstein() {
    let mut complexes: Vec<SimplicialComplex> = Vec::new();
    for n in 2..=5 {
        complexes.extend(
            connected_graphs(n)
                .iter()
                .map(|g| SimplicialComplex::graph(n, g).unwrap()),
        );
        complexes.push(SimplicialComplex::points(n).unwrap());
    }
    // boundary of a tetrahedron, a cone over a pentagon, a bipyramid and the six-vertex projective plane
    let extra: &[(usize, &[&[usize]])] = &[
        (4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]),
        (
            6,
            &[&[1, 2, 6], &[2, 3, 6], &[3, 4, 6], &[4, 5, 6], &[1, 5, 6]],
        ),
        (
            5,
            &[
                &[1, 2, 4],
                &[2, 3, 4],
                &[1, 3, 4],
                &[1, 2, 5],
                &[2, 3, 5],
                &[1, 3, 5],
            ],
        ),
        (
            6,
            &[
                &[1, 2, 5],
                &[1, 2, 6],
                &[1, 3, 4],
                &[1, 3, 6],
                &[1, 4, 5],
                &[2, 3, 4],
                &[2, 3, 5],
                &[2, 4, 6],
                &[3, 5, 6],
                &[4, 5, 6],
            ],
        ),
    ];
    for (n, facets) in extra {
        let f: Vec<Vec<usize>> = facets.iter().map(|x| x.to_vec()).collect();
        complexes.push(SimplicialComplex::new(*n, &f).unwrap());
    }
    let mut checked = 0;
    for d in &complexes {
        let v = verdict(d);
        if v.ng == Some(true) {
            checked += 1;
            assert!(
                locally_gorenstein(d, Limits::default())
                    .unwrap()
                    .locally_gorenstein,
                "{:?}",
                d.facets()
            );
        }
    }
    assert!(checked > 10);
}

#[test]
fn projective_plane_is_locally_gorenstein_with_trace_m_squared() {
    let facets = vec![
        vec![1, 2, 5],
        vec![1, 2, 6],
        vec![1, 3, 4],
        vec![1, 3, 6],
        vec![1, 4, 5],
        vec![2, 3, 4],
        vec![2, 3, 5],
        vec![2, 4, 6],
        vec![3, 5, 6],
        vec![4, 5, 6],
    ];
    let d = SimplicialComplex::new(6, &facets).unwrap();
    let ring = d.ring();
    let res = minimal_free_resolution(&sr_ideal(&d, &ring).unwrap(), Limits::default()).unwrap();
    let t = trace_from_resolution(&res, 3, Limits::default()).unwrap();
    assert!(!t.contains_maximal_ideal().unwrap());
    assert!(t.contains_power(2).unwrap());
    assert!(
        locally_gorenstein(&d, Limits::default())
            .unwrap()
            .locally_gorenstein
    );
}
