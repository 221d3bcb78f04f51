//! Homogeneous affine semigroups `S ⊂ N^d` and their semigroup rings.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Coeff, Monomial, Polynomial, Ring, TermOrder};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, Limits};
use crate::linalg;

/// A semigroup generated by vectors lying on an affine hyperplane
/// `λ·a = 1` that misses the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSemigroup {
    gens: Vec<Vec<i64>>,
    lambda: Vec<Coeff>,
    lattice: Vec<Vec<BigInt>>,
    removed: Vec<Vec<i64>>,
}

impl AffineSemigroup {
    /// Deduplicates, checks homogeneity and drops non-minimal generators
    /// (reported by [`AffineSemigroup::removed`]).
    pub fn new(gens: &[Vec<i64>]) -> Result<Self> {
        let d = gens
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Input("no generators".into()))?;
        if d == 0 {
            return Err(Error::Input(
                "generators must have at least one coordinate".into(),
            ));
        }
        let mut uniq: Vec<Vec<i64>> = Vec::new();
        for g in gens {
            if g.len() != d {
                return Err(Error::Input(format!(
                    "generator {g:?} does not have {d} coordinates"
                )));
            }
            if g.iter().any(|&x| x < 0) {
                return Err(Error::Input(format!(
                    "generator {g:?} has a negative entry"
                )));
            }
            if !uniq.contains(g) {
                uniq.push(g.clone());
            }
        }
        let lambda = grading_functional(&uniq)?;
        let mut s = AffineSemigroup {
            lattice: linalg::hermite_basis(&uniq),
            gens: uniq,
            lambda,
            removed: Vec::new(),
        };
        // a generator that is a sum of the others has λ-degree ≥ 2, so this
        // only fires for inputs that are not on one hyperplane; kept as a check
        let mut i = 0;
        while i < s.gens.len() {
            let others: Vec<Vec<i64>> = s
                .gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            if !others.is_empty() {
                let sub = AffineSemigroup {
                    gens: others,
                    lambda: s.lambda.clone(),
                    lattice: Vec::new(),
                    removed: Vec::new(),
                };
                if sub.contains(&s.gens[i]) {
                    let g = s.gens.remove(i);
                    s.removed.push(g);
                    continue;
                }
            }
            i += 1;
        }
        Ok(s)
    }

    /// Generators `(1, e)` for each exponent `e`.
    pub fn numerical_curve(exponents: &[i64]) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Input("no exponents".into()));
        }
        AffineSemigroup::new(&exponents.iter().map(|&e| vec![1, e]).collect::<Vec<_>>())
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.gens
    }

    pub fn removed(&self) -> &[Vec<i64>] {
        &self.removed
    }

    pub fn ambient_dim(&self) -> usize {
        self.gens[0].len()
    }

    pub fn lambda(&self) -> &[Coeff] {
        &self.lambda
    }

    /// `rank ZS`, the Krull dimension of `k[S]`.
    pub fn rank(&self) -> usize {
        self.lattice.len()
    }

    pub fn lattice_basis(&self) -> &[Vec<BigInt>] {
        &self.lattice
    }

    /// `λ(a)` when it is an integer.
    pub fn degree(&self, a: &[i64]) -> Option<i64> {
        let v = self
            .lambda
            .iter()
            .zip(a)
            .fold(Coeff::zero(), |s, (l, &x)| &s + &(l * &Coeff::from_int(x)));
        v.is_integer().then(|| v.to_i64()).flatten()
    }

    pub fn in_lattice(&self, a: &[i64]) -> bool {
        let mut x: Vec<BigInt> = a.iter().map(|&v| BigInt::from(v)).collect();
        for row in &self.lattice {
            let c = row.iter().position(|v| !v.is_zero()).expect("nonzero row");
            let (q, r) = x[c].div_rem(&row[c]);
            if !r.is_zero() {
                return false;
            }
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi -= &q * ri;
            }
        }
        x.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        self.decompose(a).is_some()
    }

    /// Generator indices summing to `a`, if `a ∈ S`.
    pub fn decompose(&self, a: &[i64]) -> Option<Vec<usize>> {
        Membership::new(self).decompose(a)
    }

    pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
}

fn grading_functional(gens: &[Vec<i64>]) -> Result<Vec<Coeff>> {
    let rows: Vec<Vec<Coeff>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| Coeff::from_int(x)).collect())
        .collect();
    let ones = vec![Coeff::one(); gens.len()];
    if let Some(l) = linalg::solve(&rows, &ones) {
        return Ok(l);
    }
    // witness: first generator making the system inconsistent
    for k in 1..=gens.len() {
        if linalg::solve(&rows[..k], &ones[..k]).is_none() {
            return Err(Error::Input(format!(
                "not homogeneous: no linear functional takes the value 1 on all generators (fails at {:?})",
                gens[k - 1]
            )));
        }
    }
    unreachable!("the full system is inconsistent")
}

/// Memoized membership tests against one semigroup.
pub struct Membership<'a> {
    s: &'a AffineSemigroup,
    memo: HashMap<Vec<i64>, Option<usize>>,
}

impl<'a> Membership<'a> {
    pub fn new(s: &'a AffineSemigroup) -> Self {
        Membership {
            s,
            memo: HashMap::new(),
        }
    }

    pub fn contains(&mut self, a: &[i64]) -> bool {
        self.decompose(a).is_some()
    }

    /// Certificate: generator indices (ascending) summing to `a`.
    pub fn decompose(&mut self, a: &[i64]) -> Option<Vec<usize>> {
        if a.iter().any(|&x| x < 0) {
            return None;
        }
        let k = self.s.degree(a)?;
        if k < 0 || !self.reach(a, k) {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = a.to_vec();
        while cur.iter().any(|&x| x != 0) {
            let g = self.memo[&cur].expect("reachable");
            out.push(g);
            cur = AffineSemigroup::sub(&cur, &self.s.gens[g]);
        }
        out.sort_unstable();
        Some(out)
    }

    /// `a ∈ S` given `λ(a) = k`; records the first generator of a
    /// decomposition.
    fn reach(&mut self, a: &[i64], k: i64) -> bool {
        if a.iter().all(|&x| x == 0) {
            return true;
        }
        if k <= 0 {
            return false;
        }
        if let Some(r) = self.memo.get(a) {
            return r.is_some();
        }
        let mut found = None;
        for (i, g) in self.s.gens.iter().enumerate() {
            if a.iter().zip(g).all(|(x, y)| x >= y) {
                let rest = AffineSemigroup::sub(a, g);
                if self.reach(&rest, k - 1) {
                    found = Some(i);
                    break;
                }
            }
        }
        self.memo.insert(a.to_vec(), found);
        found.is_some()
    }
}

/// Standard-graded polynomial ring `Q[x_1..x_n]` multigraded by the
/// generators.
pub fn semigroup_ring(s: &AffineSemigroup, var_names: Option<&[String]>) -> Result<Arc<Ring>> {
    let n = s.gens.len();
    let names: Vec<String> = match var_names {
        Some(v) if v.len() == n => v.to_vec(),
        Some(v) => {
            return Err(Error::Input(format!(
                "{} variable names for {n} generators",
                v.len()
            )))
        }
        None => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    Ring::new(names, TermOrder::degrevlex(n))?.with_grading(s.gens.clone())
}

/// Reduced degrevlex Gröbner basis of the toric ideal of `S`, a list of
/// multihomogeneous binomials in `ring` (see [`semigroup_ring`]).
///
/// Computed by eliminating `t_0..t_d` from `x_i - t_0^{D-|a_i|} t^{a_i}`,
/// `D = max |a_i|`, which is homogeneous when `x_i` has weight `D`; the
/// extra `t_0` does not change the kernel because `λ` is constant on the
/// generators.
pub fn toric_ideal(
    s: &AffineSemigroup,
    ring: &Arc<Ring>,
    limits: Limits,
) -> Result<Vec<Polynomial>> {
    let n = s.gens.len();
    let d = s.ambient_dim();
    let norms: Vec<i64> = s.gens.iter().map(|g| g.iter().sum()).collect();
    let big_d = *norms.iter().max().expect("nonempty");
    let big_d_u32 = u32::try_from(big_d.max(1))
        .map_err(|_| Error::Resource(format!("generator {:?} is too large", s.gens[0])))?;
    let mut names: Vec<String> = (0..=d).map(|j| format!("_t{j}")).collect();
    names.extend(ring.vars().iter().cloned());
    let mut weights = vec![1u32; d + 1];
    weights.extend(std::iter::repeat_n(big_d_u32, n));
    let er = Ring::new(names, TermOrder::degrevlex(n + d + 1).with_weights(weights))?;
    let mut gens = Vec::with_capacity(n);
    for (i, g) in s.gens.iter().enumerate() {
        let mut te = vec![0u32; n + d + 1];
        te[0] = u32::try_from(big_d - norms[i]).expect("bounded by D");
        for (j, &a) in g.iter().enumerate() {
            te[j + 1] = u32::try_from(a)
                .map_err(|_| Error::Resource(format!("generator {g:?} is too large")))?;
        }
        let x = Polynomial::var(&er, d + 1 + i);
        gens.push(x.sub(&Polynomial::term(
            &er,
            Monomial::from_exps(&te),
            Coeff::one(),
        ))?);
    }
    let scaled = Limits {
        max_pairs: limits.max_pairs,
        max_degree: limits.max_degree.saturating_mul(big_d.max(1)),
    };
    let block: Vec<usize> = (0..=d).collect();
    let gb = eliminate(&gens, &block, scaled)?;
    let out: Vec<Polynomial> = gb
        .generators()
        .iter()
        .map(|p| p.to_ring(ring))
        .collect::<Result<_>>()?;
    for p in &out {
        check_toric_binomial(s, p)?;
    }
    Ok(out)
}

/// `x^u - x^v` with `Σ u_i a_i = Σ v_i a_i`.
pub fn check_toric_binomial(s: &AffineSemigroup, p: &Polynomial) -> Result<()> {
    let t = p.terms();
    let ok = t.len() == 2 && {
        let (a, b) = (&t[0], &t[1]);
        a.1.is_one() && (-&b.1).is_one() && image(s, &a.0) == image(s, &b.0)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!(
            "{p} is not a binomial in the toric ideal"
        )))
    }
}

/// `Σ e_i a_i` for the monomial `x^e`.
pub fn image(s: &AffineSemigroup, m: &Monomial) -> Vec<i64> {
    let mut out = vec![0i64; s.ambient_dim()];
    for (g, &e) in s.gens.iter().zip(m.exps()) {
        for (o, &a) in out.iter_mut().zip(g) {
            *o += e as i64 * a;
        }
    }
    out
}

fn det2(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
}

/// Generators spanning the extremal rays of the cone `R_{≥0} S`, in
/// generator order.
pub fn extremal_rays(s: &AffineSemigroup) -> Result<Vec<Vec<i64>>> {
    let d = s.ambient_dim();
    let gens = &s.gens;
    if gens.len() == 1 {
        return Ok(gens.clone());
    }
    let idx: Vec<usize> = match d {
        1 => vec![0],
        2 => {
            // generators lie on a line; det against the first is affine along it
            let vals: Vec<i64> = gens.iter().map(|g| det2(&gens[0], g)).collect();
            let lo = (0..gens.len()).min_by_key(|&i| vals[i]).expect("nonempty");
            let hi = (0..gens.len()).max_by_key(|&i| vals[i]).expect("nonempty");
            let mut v = vec![lo, hi];
            v.sort_unstable();
            v.dedup();
            v
        }
        3 => {
            // project the slice along a coordinate where λ is nonzero
            let k = s
                .lambda
                .iter()
                .position(|l| !l.is_zero())
                .expect("λ is nonzero");
            let pts: Vec<Vec<i64>> = gens
                .iter()
                .map(|g| {
                    g.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            hull_vertices(&pts)
        }
        _ => simplicial_rays(s)?,
    };
    Ok(idx.into_iter().map(|i| gens[i].clone()).collect())
}

/// Vertex indices of the convex hull of distinct planar points (collinear
/// boundary points excluded), ascending.
fn hull_vertices(pts: &[Vec<i64>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    if order.len() <= 2 {
        return order;
    }
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &p in seq {
            while hull.len() >= start + 2
                && cross(
                    &pts[hull[hull.len() - 2]],
                    &pts[hull[hull.len() - 1]],
                    &pts[p],
                ) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull.sort_unstable();
    hull.dedup();
    hull
}

/// For `d > 3`: find `rank` generators such that every generator is a
/// nonnegative combination of them.
fn simplicial_rays(s: &AffineSemigroup) -> Result<Vec<usize>> {
    let r = s.rank();
    let n = s.gens.len();
    let q = |g: &Vec<i64>| -> Vec<Coeff> { g.iter().map(|&x| Coeff::from_int(x)).collect() };
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        // columns = chosen generators
        let rows: Vec<Vec<Coeff>> = (0..s.ambient_dim())
            .map(|c| {
                subset
                    .iter()
                    .map(|&i| Coeff::from_int(s.gens[i][c]))
                    .collect()
            })
            .collect();
        if linalg::rank(&rows) == r {
            let all_nonneg = s.gens.iter().all(|g| {
                linalg::solve(&rows, &q(g)).is_some_and(|x| x.iter().all(|c| !c.is_negative()))
            });
            if all_nonneg {
                return Ok(subset);
            }
        }
        // next r-subset in lexicographic order
        let mut i = r;
        loop {
            if i == 0 {
                return Err(Error::Unsupported(format!(
                    "extremal rays of a non-simplicial cone in dimension {}",
                    s.ambient_dim()
                )));
            }
            i -= 1;
            if subset[i] < n - r + i {
                subset[i] += 1;
                for j in i + 1..r {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exact cone membership for `d ≤ 3` or simplicial cones.
pub struct Cone {
    /// Linear functionals, nonnegative on the cone; for `d ≤ 2` or the
    /// 3-dimensional case these are facet normals.
    facets: Vec<Vec<i64>>,
    /// Equations cutting out the linear span.
    span_eqs: Vec<Vec<Coeff>>,
    rays: Vec<Vec<i64>>,
    simplicial: Option<Vec<Vec<Coeff>>>,
}

impl Cone {
    pub fn new(s: &AffineSemigroup) -> Result<Self> {
        let rays = extremal_rays(s)?;
        let d = s.ambient_dim();
        let rows: Vec<Vec<Coeff>> = rays
            .iter()
            .map(|g| g.iter().map(|&x| Coeff::from_int(x)).collect())
            .collect();
        let span_eqs = linalg::nullspace(&rows, d);
        let mut facets = Vec::new();
        let mut simplicial = None;
        match (d, rays.len()) {
            (_, 1) => {}
            (2, 2) => {
                let (a, b) = (&rays[0], &rays[1]);
                // f_a vanishes on a and is positive on b
                let fa = [-a[1], a[0]];
                let fb = [b[1], -b[0]];
                let sa = if fa[0] * b[0] + fa[1] * b[1] > 0 {
                    1
                } else {
                    -1
                };
                let sb = if fb[0] * a[0] + fb[1] * a[1] > 0 {
                    1
                } else {
                    -1
                };
                facets.push(fa.iter().map(|x| x * sa).collect());
                facets.push(fb.iter().map(|x| x * sb).collect());
            }
            (3, _) => {
                // consecutive hull vertices span facets; orient by the rest
                let k = s
                    .lambda
                    .iter()
                    .position(|l| !l.is_zero())
                    .expect("λ is nonzero");
                let proj = |g: &Vec<i64>| -> Vec<i64> {
                    g.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, &x)| x)
                        .collect()
                };
                let pts: Vec<Vec<i64>> = rays.iter().map(proj).collect();
                let cyc = cyclic_order(&pts);
                if rays.len() == 2 {
                    let (a, b) = (&rays[0], &rays[1]);
                    let nrm = cross3(a, b);
                    for (u, v) in [(a, b), (b, a)] {
                        let f = cross3(&nrm, u);
                        let sg = if dot(&f, v) > 0 { 1 } else { -1 };
                        facets.push(f.iter().map(|x| x * sg).collect());
                    }
                } else {
                    for w in 0..cyc.len() {
                        let (a, b) = (&rays[cyc[w]], &rays[cyc[(w + 1) % cyc.len()]]);
                        let f = cross3(a, b);
                        let other = rays.iter().find(|r| dot(&f, r) != 0).expect("full hull");
                        let sg = if dot(&f, other) > 0 { 1 } else { -1 };
                        facets.push(f.iter().map(|x| x * sg).collect());
                    }
                }
            }
            _ => simplicial = Some(rows),
        }
        Ok(Cone {
            facets,
            span_eqs,
            rays,
            simplicial,
        })
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Facet functionals (d ≤ 3).
    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let in_span = self.span_eqs.iter().all(|e| {
            e.iter()
                .zip(x)
                .fold(Coeff::zero(), |s, (c, &v)| &s + &(c * &Coeff::from_int(v)))
                .is_zero()
        });
        if !in_span {
            return false;
        }
        if let Some(rows) = &self.simplicial {
            let cols: Vec<Vec<Coeff>> = (0..x.len())
                .map(|c| rows.iter().map(|r| r[c].clone()).collect())
                .collect();
            let b: Vec<Coeff> = x.iter().map(|&v| Coeff::from_int(v)).collect();
            return linalg::solve(&cols, &b).is_some_and(|s| s.iter().all(|c| !c.is_negative()));
        }
        if self.rays.len() == 1 {
            // the span check leaves the line; require the positive side
            let r = &self.rays[0];
            return dot(r, x) >= 0;
        }
        self.facets.iter().all(|f| dot(f, x) >= 0)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross3(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Indices of planar points (in convex position) in counterclockwise order.
fn cyclic_order(pts: &[Vec<i64>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Vec<usize> = if pass == 0 {
            order.clone()
        } else {
            order.iter().rev().copied().collect()
        };
        for p in seq {
            while hull.len() >= start + 2
                && cross(
                    &pts[hull[hull.len() - 2]],
                    &pts[hull[hull.len() - 1]],
                    &pts[p],
                ) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleFamily {
    /// Extremal ray the family runs along.
    pub direction: Vec<i64>,
    pub points: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleReport {
    pub degree_bound: i64,
    pub holes: Vec<Vec<i64>>,
    /// Lines of holes parallel to an extremal ray (d = 2 only).
    pub families: Vec<HoleFamily>,
    /// Every hole `h` has a ray `l` with `h + t·l` a hole for all `t ≥ 0`
    /// inside the bound (d = 2 only).
    pub all_in_line_families: Option<bool>,
}

/// Default search bound: `3 × max λ-degree × largest coordinate`.
pub fn default_hole_bound(s: &AffineSemigroup) -> i64 {
    let maxc = s.gens.iter().flatten().copied().max().unwrap_or(1).max(1);
    3 * maxc
}

/// Points of `(ZS ∩ C) \ S` with `λ ≤ bound`.
pub fn holes_box(s: &AffineSemigroup, bound: i64) -> Result<HoleReport> {
    let cone = Cone::new(s)?;
    let d = s.ambient_dim();
    let mut mem = Membership::new(s);
    let mut holes = Vec::new();
    for k in 0..=bound {
        let lo: Vec<i64> = (0..d)
            .map(|c| s.gens.iter().map(|g| g[c]).min().unwrap() * k)
            .collect();
        let hi: Vec<i64> = (0..d)
            .map(|c| s.gens.iter().map(|g| g[c]).max().unwrap() * k)
            .collect();
        let mut x = lo.clone();
        loop {
            if s.degree(&x) == Some(k) && s.in_lattice(&x) && cone.contains(&x) && !mem.contains(&x)
            {
                holes.push(x.clone());
            }
            // odometer
            let mut c = 0;
            while c < d {
                if x[c] < hi[c] {
                    x[c] += 1;
                    break;
                }
                x[c] = lo[c];
                c += 1;
            }
            if c == d {
                break;
            }
        }
    }
    let (families, all) = if d == 2 && cone.rays().len() == 2 {
        let (f, a) = line_families(s, &cone, &holes, bound);
        (f, Some(a))
    } else {
        (Vec::new(), None)
    };
    Ok(HoleReport {
        degree_bound: bound,
        holes,
        families,
        all_in_line_families: all,
    })
}

fn line_families(
    s: &AffineSemigroup,
    cone: &Cone,
    holes: &[Vec<i64>],
    bound: i64,
) -> (Vec<HoleFamily>, bool) {
    let set: std::collections::HashSet<&Vec<i64>> = holes.iter().collect();
    let forward_all_holes = |h: &Vec<i64>, l: &Vec<i64>| -> bool {
        let mut p = h.clone();
        loop {
            p = AffineSemigroup::add(&p, l);
            if s.degree(&p).is_none_or(|k| k > bound) {
                return true;
            }
            if !set.contains(&p) {
                return false;
            }
        }
    };
    let mut families: BTreeMap<(usize, i64), Vec<Vec<i64>>> = BTreeMap::new();
    let mut all = true;
    for h in holes {
        let mut placed = false;
        for (ri, l) in cone.rays().iter().enumerate() {
            if forward_all_holes(h, l) {
                families
                    .entry((ri, det2(l, h)))
                    .or_default()
                    .push(h.clone());
                placed = true;
                break;
            }
        }
        all &= placed;
    }
    let fams = families
        .into_iter()
        .map(|((ri, _), points)| HoleFamily {
            direction: cone.rays()[ri].clone(),
            points,
        })
        .collect();
    (fams, all)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayWitness {
    pub ray: Vec<i64>,
    /// Value of the violated facet functional, constant along `x + t·ray`.
    pub facet_value: i64,
}

/// For `x ∈ ZS` outside the cone (d = 2): an extremal ray `l` with
/// `(x + N·l) ∩ C = ∅`, witnessed by a facet functional that is negative at
/// `x` and vanishes on `l`.
pub fn ray_missing_cone(s: &AffineSemigroup, x: &[i64]) -> Result<RayWitness> {
    if s.ambient_dim() != 2 {
        return Err(Error::Unsupported("only planar semigroups".into()));
    }
    let cone = Cone::new(s)?;
    if cone.rays().len() != 2 {
        return Err(Error::Unsupported("the cone is a single ray".into()));
    }
    if !s.in_lattice(x) {
        return Err(Error::Input(format!(
            "{x:?} is not in the group generated by S"
        )));
    }
    if cone.contains(x) {
        return Err(Error::Input(format!("{x:?} lies in the cone")));
    }
    for (f, l) in cone.facets().iter().zip(cone.rays()) {
        let v = dot(f, x);
        if v < 0 {
            debug_assert_eq!(dot(f, l), 0);
            return Ok(RayWitness {
                ray: l.clone(),
                facet_value: v,
            });
        }
    }
    Err(Error::Inconsistent(
        "point outside the cone violates no facet".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[&[i64]]) -> AffineSemigroup {
        AffineSemigroup::new(&gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn validation() {
        let s = sg(&[&[1, 0], &[1, 2]]);
        assert_eq!(s.lambda(), &[Coeff::one(), Coeff::zero()]);
        let e = AffineSemigroup::new(&[vec![1, 0], vec![2, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(e, Error::Input(_)));
        let c = AffineSemigroup::numerical_curve(&[0, 1, 3, 4, 9, 14]).unwrap();
        assert_eq!(
            c.generators(),
            &[
                vec![1, 0],
                vec![1, 1],
                vec![1, 3],
                vec![1, 4],
                vec![1, 9],
                vec![1, 14]
            ]
        );
        assert!(AffineSemigroup::new(&[vec![1, -1]]).is_err());
        assert_eq!(sg(&[&[1, 0], &[1, 0], &[1, 1]]).generators().len(), 2);
    }

    #[test]
    fn membership_and_certificates() {
        let s = sg(&[&[1, 0], &[1, 2], &[1, 3]]);
        assert_eq!(s.decompose(&[0, 0]), Some(vec![]));
        assert!(!s.contains(&[2, 1]));
        assert_eq!(s.decompose(&[1, 3]), Some(vec![2]));
        let cert = s.decompose(&[3, 5]).unwrap();
        let sum = cert.iter().fold(vec![0, 0], |a, &i| {
            AffineSemigroup::add(&a, &s.generators()[i])
        });
        assert_eq!(sum, vec![3, 5]);
        assert!(!s.contains(&[1, 1]));
        assert!(!s.contains(&[-1, 0]));
    }

    #[test]
    fn lattice_and_rank() {
        let s = sg(&[&[1, 0], &[1, 2], &[1, 3]]);
        assert_eq!(s.rank(), 2);
        assert!(s.in_lattice(&[0, 1]));
        let t = sg(&[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(!t.in_lattice(&[1, 0]));
        assert!(t.in_lattice(&[3, 1]));
    }

    fn ring_of(s: &AffineSemigroup) -> Arc<Ring> {
        semigroup_ring(s, None).unwrap()
    }

    #[test]
    fn toric_ideal_of_conic() {
        let s = AffineSemigroup::numerical_curve(&[0, 1, 2]).unwrap();
        let r = ring_of(&s);
        let i = toric_ideal(&s, &r, Limits::default()).unwrap();
        assert_eq!(i.len(), 1);
        assert_eq!(i[0].to_string(), "x2^2 - x1*x3");
    }

    #[test]
    fn toric_ideal_of_twisted_cubic() {
        let s = AffineSemigroup::numerical_curve(&[0, 1, 2, 3]).unwrap();
        let r = ring_of(&s);
        let i = toric_ideal(&s, &r, Limits::default()).unwrap();
        assert_eq!(i.len(), 3);
        assert!(i.iter().all(|p| p.degree() == Some(2)));
        // degree-2 part of the kernel: pairs of exponents with equal sum
        let mut kernel_dim = 0;
        let mons: Vec<(usize, usize)> = (0..4).flat_map(|a| (a..4).map(move |b| (a, b))).collect();
        let mut by_sum: BTreeMap<usize, usize> = BTreeMap::new();
        for (a, b) in mons {
            *by_sum.entry(a + b).or_default() += 1;
        }
        for c in by_sum.values() {
            kernel_dim += c - 1;
        }
        assert_eq!(kernel_dim, 3);
    }

    #[test]
    fn extremal_rays_small() {
        assert_eq!(
            extremal_rays(&sg(&[&[1, 0], &[1, 1], &[1, 3]])).unwrap(),
            vec![vec![1, 0], vec![1, 3]]
        );
        assert_eq!(
            extremal_rays(&sg(&[&[1, 0], &[0, 1]])).unwrap(),
            vec![vec![1, 0], vec![0, 1]]
        );
        let sq = sg(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]]);
        assert_eq!(extremal_rays(&sq).unwrap().len(), 4);
        let tri = sg(&[&[1, 0, 0], &[1, 2, 0], &[1, 0, 2], &[1, 1, 1], &[1, 1, 0]]);
        assert_eq!(
            extremal_rays(&tri).unwrap(),
            vec![vec![1, 0, 0], vec![1, 2, 0], vec![1, 0, 2]]
        );
    }

    #[test]
    fn extremal_rays_higher_dimension() {
        let simplex = sg(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(extremal_rays(&simplex).unwrap().len(), 4);
        let with_inner = sg(&[
            &[2, 0, 0, 0],
            &[0, 2, 0, 0],
            &[0, 0, 2, 0],
            &[0, 0, 0, 2],
            &[1, 1, 0, 0],
        ]);
        assert_eq!(extremal_rays(&with_inner).unwrap().len(), 4);
    }

    #[test]
    fn non_simplicial_four_dimensional_cone_is_refused() {
        // cone over a square embedded in four coordinates
        let sq = sg(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 1, 1, 0]]);
        assert!(matches!(extremal_rays(&sq), Err(Error::Unsupported(_))));
    }

    #[test]
    fn holes_of_a_numerical_curve() {
        let s = sg(&[&[1, 0], &[1, 2], &[1, 3]]);
        let h = holes_box(&s, 3).unwrap();
        assert_eq!(h.holes, vec![vec![1, 1], vec![2, 1], vec![3, 1]]);
        assert_eq!(h.families.len(), 1);
        assert_eq!(h.families[0].direction, vec![1, 0]);
        assert_eq!(h.all_in_line_families, Some(true));
    }

    #[test]
    fn normal_semigroup_has_no_holes() {
        let s = sg(&[&[1, 0], &[0, 1]]);
        assert!(holes_box(&s, 6).unwrap().holes.is_empty());
        let t = sg(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]]);
        assert!(holes_box(&t, 4).unwrap().holes.is_empty());
    }

    #[test]
    fn isolated_hole_of_a_non_cohen_macaulay_curve() {
        let s = AffineSemigroup::numerical_curve(&[0, 1, 3, 4]).unwrap();
        let h = holes_box(&s, 6).unwrap();
        assert_eq!(h.holes, vec![vec![1, 2]]);
        assert_eq!(h.all_in_line_families, Some(false));
    }

    #[test]
    fn ray_witnesses() {
        let s = sg(&[&[1, 0], &[1, 1], &[1, 3]]);
        assert_eq!(ray_missing_cone(&s, &[1, -1]).unwrap().ray, vec![1, 0]);
        assert_eq!(ray_missing_cone(&s, &[1, 4]).unwrap().ray, vec![1, 3]);
        let w = ray_missing_cone(&s, &[-1, 0]).unwrap();
        assert!(w.facet_value < 0);
        assert!(matches!(
            ray_missing_cone(&s, &[2, 1]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn cone_membership_three_dimensional() {
        let s = sg(&[&[1, 0, 0], &[1, 2, 0], &[1, 0, 2]]);
        let c = Cone::new(&s).unwrap();
        assert!(c.contains(&[2, 1, 1]));
        assert!(c.contains(&[1, 1, 1]));
        assert!(!c.contains(&[1, 2, 1]));
        assert!(!c.contains(&[1, -1, 0]));
    }
}
