//! Simplicial complexes on `{1..n}` and their Stanley-Reisner rings.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Coeff, Monomial, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::Limits;
use crate::resolution::{minimal_free_resolution, ring_invariants_with_dim, RingInvariants};

/// A simplicial complex given by its facets, vertices labelled `1..=n`.
/// `n = 0` with no facets is the complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut fs: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for f in facets {
            let set: BTreeSet<usize> = f.iter().copied().collect();
            if set.is_empty() {
                return Err(Error::Input("empty facet".into()));
            }
            if set.len() != f.len() {
                return Err(Error::Input(format!("facet {f:?} repeats a vertex")));
            }
            if let Some(v) = set.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::Input(format!("vertex {v} outside 1..={n}")));
            }
            fs.push(set.into_iter().collect());
        }
        for (i, a) in fs.iter().enumerate() {
            for (j, b) in fs.iter().enumerate() {
                if i != j && is_subset(a, b) {
                    return Err(Error::Input(format!("facet {a:?} is contained in {b:?}")));
                }
            }
        }
        for v in 1..=n {
            if !fs.iter().any(|f| f.contains(&v)) {
                return Err(Error::Input(format!("vertex {v} lies in no facet")));
            }
        }
        fs.sort();
        Ok(SimplicialComplex { n, facets: fs })
    }

    /// `n` isolated points.
    pub fn points(n: usize) -> Result<Self> {
        SimplicialComplex::new(n, &(1..=n).map(|v| vec![v]).collect::<Vec<_>>())
    }

    /// Path `1 - 2 - ... - (e+1)` with `e` edges.
    pub fn path(e: usize) -> Result<Self> {
        SimplicialComplex::new(e + 1, &(1..=e).map(|v| vec![v, v + 1]).collect::<Vec<_>>())
    }

    /// Cycle on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Input("a cycle needs at least 3 vertices".into()));
        }
        SimplicialComplex::new(n, &(1..=n).map(|v| vec![v, v % n + 1]).collect::<Vec<_>>())
    }

    /// 1-dimensional complex of a graph without isolated vertices.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        SimplicialComplex::new(
            n,
            &edges.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// `-1` for `{∅}`.
    pub fn dimension(&self) -> i64 {
        self.facets
            .iter()
            .map(|f| f.len() as i64 - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len()) || self.facets.len() <= 1
    }

    pub fn is_face(&self, f: &[usize]) -> bool {
        f.is_empty() || self.facets.iter().any(|g| is_subset(f, g))
    }

    /// Minimal non-faces, ascending by size then lexicographically.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let vs: Vec<usize> = (1..=self.n).collect();
        for k in 2..=self.n {
            for_each_subset(&vs, k, &mut |s| {
                if !self.is_face(s) && (0..s.len()).all(|i| self.is_face(&without(s, i))) {
                    out.push(s.to_vec());
                }
            });
        }
        out
    }

    /// `Q[x_1..x_n]`.
    pub fn ring(&self) -> Arc<Ring> {
        Ring::numbered("x", self.n)
    }

    /// Link of a face, relabelled to `1..m`; the second value maps new
    /// labels to old ones.
    pub fn link(&self, f: &[usize]) -> Result<(SimplicialComplex, Vec<usize>)> {
        if !self.is_face(f) {
            return Err(Error::Input(format!("{f:?} is not a face")));
        }
        let mut faces: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|g| is_subset(f, g))
            .map(|g| {
                g.iter()
                    .copied()
                    .filter(|v| !f.contains(v))
                    .collect::<Vec<_>>()
            })
            .filter(|g| !g.is_empty())
            .collect();
        faces.sort();
        faces.dedup();
        let maximal: Vec<Vec<usize>> = faces
            .iter()
            .filter(|a| !faces.iter().any(|b| b.len() > a.len() && is_subset(a, b)))
            .cloned()
            .collect();
        let labels: Vec<usize> = maximal
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let relabel = |v: usize| labels.binary_search(&v).expect("vertex of the link") + 1;
        let facets: Vec<Vec<usize>> = maximal
            .iter()
            .map(|g| g.iter().map(|&v| relabel(v)).collect())
            .collect();
        Ok((SimplicialComplex::new(labels.len(), &facets)?, labels))
    }

    /// Neighbours of each vertex in the 1-skeleton, index `v - 1`.
    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n];
        for f in &self.facets {
            for &a in f {
                for &b in f {
                    if a != b {
                        adj[a - 1].insert(b);
                    }
                }
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![1usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v - 1] {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.facets
            .iter()
            .filter(|f| f.len() == 2)
            .map(|f| (f[0], f[1]))
            .collect()
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn without(s: &[usize], i: usize) -> Vec<usize> {
    s.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| v)
        .collect()
}

fn for_each_subset(vs: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(vs: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..vs.len() {
            if vs.len() - i < k - cur.len() {
                break;
            }
            cur.push(vs[i]);
            go(vs, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(vs, k, 0, &mut Vec::new(), f);
}

fn squarefree(ring: &Arc<Ring>, s: &[usize]) -> Polynomial {
    let mut e = vec![0u32; ring.nvars()];
    for &v in s {
        e[v - 1] = 1;
    }
    Polynomial::term(ring, Monomial::from_exps(&e), Coeff::one())
}

/// Stanley-Reisner ideal in `ring` (see [`SimplicialComplex::ring`]); `[0]`
/// when every subset is a face.
pub fn sr_ideal(d: &SimplicialComplex, ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
    if ring.nvars() != d.n {
        return Err(Error::Input(format!(
            "ring has {} variables, complex {} vertices",
            ring.nvars(),
            d.n
        )));
    }
    let gens: Vec<Polynomial> = d
        .minimal_nonfaces()
        .iter()
        .map(|s| squarefree(ring, s))
        .collect();
    Ok(if gens.is_empty() {
        vec![Polynomial::zero(ring)]
    } else {
        gens
    })
}

/// Resolution invariants of `k[Δ]`, with `dim = dim Δ + 1`.
pub fn sr_invariants(d: &SimplicialComplex, limits: Limits) -> Result<RingInvariants> {
    if d.n == 0 {
        return Ok(RingInvariants {
            n: 0,
            dim: 0,
            pd: 0,
            codim: 0,
            is_cm: true,
            cm_type: Some(1),
            is_level: Some(true),
            is_gorenstein: Some(true),
            canonical_degrees: Some(vec![0]),
        });
    }
    let ring = d.ring();
    let res = minimal_free_resolution(&sr_ideal(d, &ring)?, limits)?;
    ring_invariants_with_dim(&res, (d.dimension() + 1) as usize)
}

pub fn is_gorenstein(d: &SimplicialComplex, limits: Limits) -> Result<bool> {
    Ok(sr_invariants(d, limits)?.is_gorenstein == Some(true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Path,
    Cycle,
    Other,
    NotOneDim,
}

/// Graph shape of a connected 1-dimensional complex.
pub fn classify_1dim(d: &SimplicialComplex) -> Classification {
    if d.dimension() != 1 || !d.is_connected() || d.facets.iter().any(|f| f.len() != 2) {
        return Classification::NotOneDim;
    }
    let deg: Vec<usize> = d.adjacency().iter().map(BTreeSet::len).collect();
    let ones = deg.iter().filter(|&&x| x == 1).count();
    if deg.iter().all(|&x| x == 2) {
        Classification::Cycle
    } else if ones == 2 && deg.iter().all(|&x| x == 1 || x == 2) {
        Classification::Path
    } else {
        Classification::Other
    }
}

/// Predicted verdicts for a connected 1-dimensional complex:
/// `(nearly Gorenstein, Gorenstein)`.
pub fn predicted_1dim(c: Classification, edges: usize) -> Option<(bool, bool)> {
    match c {
        Classification::Path => Some((true, edges == 1)),
        Classification::Cycle => Some((true, true)),
        Classification::Other => Some((false, false)),
        Classification::NotOneDim => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub locally_gorenstein: bool,
    /// Per vertex `1..=n`.
    pub vertices: Vec<bool>,
    pub pure: bool,
}

/// Whether every vertex link has a Gorenstein Stanley-Reisner ring.
pub fn locally_gorenstein(d: &SimplicialComplex, limits: Limits) -> Result<LocalReport> {
    let vertices = (1..=d.n)
        .into_par_iter()
        .map(|v| is_gorenstein(&d.link(&[v])?.0, limits))
        .collect::<Result<Vec<bool>>>()?;
    Ok(LocalReport {
        locally_gorenstein: vertices.iter().all(|&b| b),
        vertices,
        pure: d.is_pure(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnownFamily {
    Points,
    Path,
}

#[derive(Clone, Debug)]
pub struct KnownCanonical {
    pub complex: SimplicialComplex,
    pub generators: Vec<Polynomial>,
    /// `k[Δ]/I` is Gorenstein of dimension `dim k[Δ] - 1`.
    pub verified: bool,
}

/// Closed-form canonical ideal generators for `n` points (`x_1 - x_i`) or a
/// path with `n` edges (`x_k x_{k+1}^2 + x_{k+1}^2 x_{k+2}`), with the
/// Gorenstein-quotient certificate.
pub fn canonical_gens_known(kind: KnownFamily, n: usize, limits: Limits) -> Result<KnownCanonical> {
    if n < 2 {
        return Err(Error::Input("n must be at least 2".into()));
    }
    let complex = match kind {
        KnownFamily::Points => SimplicialComplex::points(n)?,
        KnownFamily::Path => SimplicialComplex::path(n)?,
    };
    let ring = complex.ring();
    let x = |i: usize| Polynomial::var(&ring, i - 1);
    let mut generators = Vec::new();
    match kind {
        KnownFamily::Points => {
            for i in 2..=n {
                generators.push(x(1).sub(&x(i))?);
            }
        }
        KnownFamily::Path => {
            for k in 1..n {
                let sq = x(k + 1).pow(2);
                generators.push(x(k).mul(&sq)?.add(&sq.mul(&x(k + 2))?)?);
            }
        }
    }
    let mut quotient = sr_ideal(&complex, &ring)?;
    quotient.extend(generators.iter().cloned());
    let res = minimal_free_resolution(&quotient, limits)?;
    let dim = (complex.dimension()) as usize;
    let inv = crate::resolution::ring_invariants(&res)?;
    let verified = inv.dim == dim && inv.is_gorenstein == Some(true);
    Ok(KnownCanonical {
        complex,
        generators,
        verified,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostGorenstein {
    pub value: Option<bool>,
    /// Always set: "ridge sum of cycles" is read as connected, bridgeless,
    /// every block a cycle.
    pub definition_dependent: bool,
}

/// Tree, or connected bridgeless graph whose blocks are all cycles.
pub fn almost_gorenstein_1dim(d: &SimplicialComplex) -> AlmostGorenstein {
    if classify_1dim(d) == Classification::NotOneDim {
        return AlmostGorenstein {
            value: None,
            definition_dependent: true,
        };
    }
    let edges = d.edges();
    let value = edges.len() + 1 == d.n
        || blocks(d.n, &edges)
            .iter()
            .all(|b| b.len() >= 3 && is_cycle_block(b));
    AlmostGorenstein {
        value: Some(value),
        definition_dependent: true,
    }
}

fn is_cycle_block(block: &[(usize, usize)]) -> bool {
    let vs: BTreeSet<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    vs.len() == block.len()
}

/// Edge sets of the biconnected components.
fn blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        adj: Vec<Vec<usize>>,
        edges: &'a [(usize, usize)],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(st: &mut St<'_>, v: usize, parent_edge: Option<usize>) {
        st.time += 1;
        st.disc[v] = st.time;
        st.low[v] = st.time;
        for k in 0..st.adj[v].len() {
            let e = st.adj[v][k];
            if Some(e) == parent_edge {
                continue;
            }
            let (a, b) = st.edges[e];
            let w = if a == v { b } else { a };
            if st.disc[w] == 0 {
                st.stack.push(e);
                dfs(st, w, Some(e));
                st.low[v] = st.low[v].min(st.low[w]);
                if st.low[w] >= st.disc[v] {
                    let mut comp = Vec::new();
                    while let Some(f) = st.stack.pop() {
                        comp.push(st.edges[f]);
                        if f == e {
                            break;
                        }
                    }
                    st.out.push(comp);
                }
            } else if st.disc[w] < st.disc[v] {
                st.stack.push(e);
                st.low[v] = st.low[v].min(st.disc[w]);
            }
        }
    }
    let mut adj = vec![Vec::new(); n + 1];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push(i);
        adj[b].push(i);
    }
    let mut st = St {
        adj,
        edges,
        disc: vec![0; n + 1],
        low: vec![0; n + 1],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 1..=n {
        if st.disc[v] == 0 {
            dfs(&mut st, v, None);
        }
    }
    st.out
}

/// Connected graphs on `n` vertices without isolated vertices, one per
/// isomorphism class, as edge lists on `1..=n`.
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    // grow graphs one vertex at a time, keeping canonical forms
    let mut level: BTreeSet<u64> = BTreeSet::from([0u64]);
    for m in 2..=n {
        let mut next = BTreeSet::new();
        for &g in &level {
            for nb in 0u64..(1 << (m - 1)) {
                let mut h = g;
                for a in 0..m - 1 {
                    if nb >> a & 1 == 1 {
                        h |= 1 << pair_index(a, m - 1, n);
                    }
                }
                next.insert(canonical_form(h, m, n));
            }
        }
        level = next;
    }
    let mut out = Vec::new();
    for g in level {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| g >> i & 1 == 1)
            .map(|(_, &(a, b))| (a + 1, b + 1))
            .collect();
        let d = SimplicialComplex::graph(n, &edges);
        if let Ok(d) = d {
            if d.is_connected() {
                out.push(edges);
            }
        }
    }
    out
}

fn pair_index(a: usize, b: usize, n: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Least edge bitmask over relabellings that list vertices by descending
/// degree.
fn canonical_form(g: u64, m: usize, n: usize) -> u64 {
    let deg: Vec<usize> = (0..m)
        .map(|v| {
            (0..m)
                .filter(|&w| w != v && g >> pair_index(v, w, n) & 1 == 1)
                .count()
        })
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    // vertices grouped by degree; permute within groups
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last_mut() {
            Some(gr) if deg[gr[0]] == deg[v] => gr.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(m);
    fn rec(
        groups: &mut [Vec<usize>],
        gi: usize,
        perm: &mut Vec<usize>,
        g: u64,
        m: usize,
        n: usize,
        best: &mut u64,
    ) {
        if gi == groups.len() {
            let mut pos = vec![0; m];
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = i;
            }
            let mut h = 0u64;
            for a in 0..m {
                for b in a + 1..m {
                    if g >> pair_index(a, b, n) & 1 == 1 {
                        h |= 1 << pair_index(pos[a], pos[b], n);
                    }
                }
            }
            *best = (*best).min(h);
            return;
        }
        let k = groups[gi].len();
        permute(&mut groups[gi].clone(), k, &mut |p| {
            let base = perm.len();
            perm.extend_from_slice(p);
            rec(groups, gi + 1, perm, g, m, n, best);
            perm.truncate(base);
        });
    }
    rec(&mut groups, 0, &mut perm, g, m, n, &mut best);
    best
}

/// Heap's algorithm.
fn permute(a: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(a);
        return;
    }
    for i in 0..k - 1 {
        permute(a, k - 1, f);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    permute(a, k - 1, f);
}
