//! Minimal graded free resolutions of cyclic modules `S/J` and the invariants
//! read off from them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, Polynomial, Ring};
use crate::error::{Error, Result};
mod schreyer;

use crate::groebner::{GroebnerBasis, Limits, PolyMatrix};

/// `0 → F_p → ... → F_1 → F_0 = S`, with `maps[i]` the differential
/// `F_{i+1} → F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Arc<Ring>,
    maps: Vec<PolyMatrix>,
    gb: GroebnerBasis,
    multidegrees: Option<Vec<Vec<Vec<i64>>>>,
}

impl Resolution {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// Projective dimension of `S/J`.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// The last differential `φ_p`, if `J ≠ 0`.
    pub fn last_map(&self) -> Option<&PolyMatrix> {
        self.maps.last()
    }

    /// Reduced Gröbner basis of `J` under the ring order.
    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Minimal generators of `J`.
    pub fn generators(&self) -> Vec<Polynomial> {
        self.maps
            .first()
            .map(|m| m.columns().iter().map(|c| c[0].clone()).collect())
            .unwrap_or_default()
    }

    /// Degrees of the basis of `F_i`.
    pub fn degrees(&self, i: usize) -> Vec<i64> {
        match i {
            0 => vec![0],
            _ => self
                .maps
                .get(i - 1)
                .map(|m| m.source_degrees().to_vec())
                .unwrap_or_default(),
        }
    }

    /// Multidegrees of the basis of `F_i`, when the ring carries a grading
    /// matrix and every map is multihomogeneous.
    pub fn multidegrees(&self, i: usize) -> Option<&[Vec<i64>]> {
        self.multidegrees.as_ref()?.get(i).map(Vec::as_slice)
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for i in 0..=self.length() {
            for d in self.degrees(i) {
                *t.graded.entry((i, d)).or_default() += 1;
            }
            if let Some(md) = self.multidegrees(i) {
                for m in md {
                    *t.multigraded.entry((i, m.clone())).or_default() += 1;
                }
            }
        }
        t
    }

    /// `φ_i ∘ φ_{i+1} = 0` for all consecutive maps, and no unit entries.
    pub fn verify(&self) -> Result<()> {
        for w in self.maps.windows(2) {
            if !w[0].compose(&w[1])?.is_zero() {
                return Err(Error::Inconsistent(
                    "consecutive differentials do not compose to zero".into(),
                ));
            }
        }
        if let Some(m) = self.maps.iter().find(|m| !m.is_minimal()) {
            return Err(Error::Inconsistent(format!(
                "resolution is not minimal:\n{m}"
            )));
        }
        Ok(())
    }
}

/// Minimal graded free resolution of `S/(gens)`. The generators must be
/// homogeneous for the ring's weights and generate a proper ideal.
pub fn minimal_free_resolution(gens: &[Polynomial], limits: Limits) -> Result<Resolution> {
    let ring = gens.first().map(|g| g.ring().clone()).ok_or_else(|| {
        Error::Input("an ideal needs its ring; pass at least one generator".into())
    })?;
    let nonzero: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        let gb = GroebnerBasis::compute(gens, limits)?;
        let md = ring
            .grading()
            .map(|g| vec![vec![vec![0; g.first().map_or(0, |c| c.len())]]]);
        return Ok(Resolution {
            ring,
            maps: Vec::new(),
            gb,
            multidegrees: md,
        });
    }
    let gb = GroebnerBasis::compute(&nonzero, limits)?;
    if gb.is_unit() {
        return Err(Error::Input("the ideal is the whole ring".into()));
    }
    let mut dense = schreyer::schreyer_resolution(&gb, limits)?;
    schreyer::minimize(&mut dense)?;
    let maps = dense
        .into_iter()
        .map(|d| PolyMatrix::new(&ring, d.target, d.source, d.cols))
        .collect::<Result<Vec<_>>>()?;
    let multidegrees = ring.grading().and_then(|g| track_multidegrees(g, &maps));
    Ok(Resolution {
        ring,
        maps,
        gb,
        multidegrees,
    })
}

fn track_multidegrees(grading: &[Vec<i64>], maps: &[PolyMatrix]) -> Option<Vec<Vec<Vec<i64>>>> {
    let d = grading.first().map_or(0, |c| c.len());
    let mut out = vec![vec![vec![0i64; d]]];
    for m in maps {
        let prev = out.last().expect("nonempty").clone();
        let mut cur = Vec::with_capacity(m.ncols());
        for col in m.columns() {
            let mut deg: Option<Vec<i64>> = None;
            for (i, p) in col.iter().enumerate() {
                for (mon, _) in p.terms() {
                    let md = mon.multidegree(grading).ok()?;
                    let tot: Vec<i64> = md.iter().zip(&prev[i]).map(|(a, b)| a + b).collect();
                    match &deg {
                        None => deg = Some(tot),
                        Some(e) if *e != tot => return None,
                        _ => {}
                    }
                }
            }
            cur.push(deg?);
        }
        out.push(cur);
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRecord {
    pub i: usize,
    pub j: i64,
    pub rank: usize,
}

/// Graded Betti numbers `β_{i,j}`, with an optional multigraded refinement.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    graded: BTreeMap<(usize, i64), usize>,
    multigraded: BTreeMap<(usize, Vec<i64>), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> usize {
        self.graded.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.graded
            .range((i, i64::MIN)..=(i, i64::MAX))
            .map(|(_, r)| r)
            .sum()
    }

    /// `{degree: rank}` for homological index `i`.
    pub fn column(&self, i: usize) -> BTreeMap<i64, usize> {
        self.graded
            .range((i, i64::MIN)..=(i, i64::MAX))
            .map(|(&(_, j), &r)| (j, r))
            .collect()
    }

    pub fn length(&self) -> usize {
        self.graded.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn records(&self) -> Vec<BettiRecord> {
        self.graded
            .iter()
            .map(|(&(i, j), &rank)| BettiRecord { i, j, rank })
            .collect()
    }

    pub fn multigraded(&self) -> &BTreeMap<(usize, Vec<i64>), usize> {
        &self.multigraded
    }

    pub fn from_records(records: &[BettiRecord]) -> Self {
        let mut t = BettiTable::default();
        for r in records {
            *t.graded.entry((r.i, r.j)).or_default() += r.rank;
        }
        t
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.records().serialize(s)
    }
}

impl fmt::Display for BettiTable {
    /// Rows indexed by `j - i`, columns by `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.length();
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.graded.keys().map(|&(i, j)| j - i as i64).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        write!(f, "{:>6}", "")?;
        for i in 0..=p {
            write!(f, "{i:>6}")?;
        }
        writeln!(f)?;
        write!(f, "{:>6}", "total:")?;
        for i in 0..=p {
            write!(f, "{:>6}", self.rank(i))?;
        }
        writeln!(f)?;
        for s in rows {
            write!(f, "{:>6}", format!("{s}:"))?;
            for i in 0..=p {
                match self.get(i, s + i as i64) {
                    0 => write!(f, "{:>6}", ".")?,
                    r => write!(f, "{r:>6}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Krull dimension of `S/J` from the leading monomials of a Gröbner basis:
/// the largest set of variables containing the support of no leading
/// monomial.
pub fn krull_dimension(gb: &GroebnerBasis) -> usize {
    let n = gb.ring().nvars();
    if gb.is_unit() {
        return 0;
    }
    let supports: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0;
    fn grow(v: usize, n: usize, set: u64, size: usize, supports: &[u64], best: &mut usize) {
        if size + (n - v) <= *best {
            return;
        }
        if v == n {
            *best = size;
            return;
        }
        let with = set | (1 << v);
        if supports.iter().all(|&s| s & !with != 0) {
            grow(v + 1, n, with, size + 1, supports, best);
        }
        grow(v + 1, n, set, size, supports, best);
    }
    grow(0, n, 0, 0, &supports, &mut best);
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingInvariants {
    pub n: usize,
    pub dim: usize,
    pub pd: usize,
    pub codim: usize,
    pub is_cm: bool,
    /// `None` when the ring is not Cohen-Macaulay.
    pub cm_type: Option<usize>,
    pub is_level: Option<bool>,
    pub is_gorenstein: Option<bool>,
    /// Generator degrees of the canonical module, `Σ w_i - j` over the last
    /// Betti column, ascending.
    pub canonical_degrees: Option<Vec<i64>>,
}

/// Invariants of `S/J` given its minimal resolution; `dim` is computed from
/// the initial ideal.
pub fn ring_invariants(res: &Resolution) -> Result<RingInvariants> {
    let dim = krull_dimension(res.groebner_basis());
    ring_invariants_with_dim(res, dim)
}

/// As [`ring_invariants`], trusting an externally computed dimension after
/// checking it against the initial ideal.
pub fn ring_invariants_with_dim(res: &Resolution, dim: usize) -> Result<RingInvariants> {
    let n = res.ring().nvars();
    let pd = res.length();
    let from_lt = krull_dimension(res.groebner_basis());
    if from_lt != dim {
        return Err(Error::Inconsistent(format!(
            "dimension {dim} disagrees with {from_lt} from the initial ideal"
        )));
    }
    if pd > n {
        return Err(Error::Inconsistent(format!(
            "projective dimension {pd} exceeds {n} variables"
        )));
    }
    let codim = n - dim;
    let is_cm = pd == codim;
    let (mut cm_type, mut is_level, mut is_gor, mut canon) = (None, None, None, None);
    if is_cm {
        let last = res.degrees(pd);
        let wsum: i64 = res.ring().weights().iter().map(|&w| w as i64).sum();
        let mut deg: Vec<i64> = last.iter().map(|j| wsum - j).collect();
        deg.sort_unstable();
        let t = last.len();
        cm_type = Some(t);
        is_level = Some(deg.first() == deg.last());
        is_gor = Some(t == 1);
        canon = Some(deg);
    }
    Ok(RingInvariants {
        n,
        dim,
        pd,
        codim,
        is_cm,
        cm_type,
        is_level,
        is_gorenstein: is_gor,
        canonical_degrees: canon,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// `K(t)`, coefficient of `t^k` at index `k`, over `Π (1 - t^{w_i})`.
    pub numerator: Vec<i64>,
    /// `h(t) = K(t) / (1-t)^{n-dim}`; only for standard gradings.
    pub h_vector: Option<Vec<i64>>,
    pub dim: usize,
}

impl HilbertData {
    /// Hilbert function values `H(R, 0..=upto)` from `K(t) / Π (1 - t^{w_i})`.
    pub fn function(&self, weights: &[u32], upto: usize) -> Vec<i64> {
        let mut series: Vec<i64> = vec![0; upto + 1];
        for (k, &c) in self.numerator.iter().enumerate().take(upto + 1) {
            series[k] = c;
        }
        for &w in weights {
            // multiply by 1/(1 - t^w)
            let w = w as usize;
            for k in w..=upto {
                series[k] += series[k - w];
            }
        }
        series
    }

    /// `h(1)`, the multiplicity.
    pub fn multiplicity(&self) -> Option<i64> {
        self.h_vector.as_ref().map(|h| h.iter().sum())
    }
}

pub fn hilbert(res: &Resolution, dim: usize) -> Result<HilbertData> {
    let mut k: BTreeMap<i64, i64> = BTreeMap::new();
    for i in 0..=res.length() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for d in res.degrees(i) {
            *k.entry(d).or_default() += sign;
        }
    }
    if k.keys().next().is_some_and(|&d| d < 0) {
        return Err(Error::Inconsistent(
            "negative degree in a resolution of S/J".into(),
        ));
    }
    let top = k.keys().last().copied().unwrap_or(0) as usize;
    let mut numerator = vec![0i64; top + 1];
    for (d, c) in k {
        numerator[d as usize] += c;
    }
    while numerator.len() > 1 && numerator.last() == Some(&0) {
        numerator.pop();
    }
    let n = res.ring().nvars();
    let h_vector = if res.ring().is_standard_graded() {
        let mut h = numerator.clone();
        for _ in 0..n.saturating_sub(dim) {
            h = divide_by_one_minus_t(&h).ok_or_else(|| {
                Error::Inconsistent(format!("K(t) is not divisible by (1-t)^{}", n - dim))
            })?;
        }
        if h.iter().sum::<i64>() <= 0 {
            return Err(Error::Inconsistent("h(1) is not positive".into()));
        }
        Some(h)
    } else {
        None
    };
    Ok(HilbertData {
        numerator,
        h_vector,
        dim,
    })
}

fn divide_by_one_minus_t(p: &[i64]) -> Option<Vec<i64>> {
    let mut q = Vec::with_capacity(p.len());
    let mut acc = 0i64;
    for &c in p {
        acc += c;
        q.push(acc);
    }
    if q.pop() != Some(0) {
        return None;
    }
    while q.len() > 1 && q.last() == Some(&0) {
        q.pop();
    }
    if q.is_empty() {
        q.push(0);
    }
    Some(q)
}

/// Number of standard monomials of each weighted degree `0..=upto`.
pub fn standard_monomial_counts(gb: &GroebnerBasis, upto: usize) -> Vec<i64> {
    let lms = gb.leading_monomials();
    let w = gb.ring().weights().to_vec();
    let n = w.len();
    let mut counts = vec![0i64; upto + 1];
    let mut exps = vec![0u32; n];
    fn rec(
        v: usize,
        left: i64,
        exps: &mut Vec<u32>,
        w: &[u32],
        lms: &[Monomial],
        counts: &mut [i64],
        upto: i64,
    ) {
        if v == w.len() {
            let m = Monomial::from_exps(exps);
            if !lms.iter().any(|l| l.divides(&m)) {
                counts[(upto - left) as usize] += 1;
            }
            return;
        }
        let mut e = 0u32;
        while (e as i64) * (w[v] as i64) <= left {
            exps[v] = e;
            rec(
                v + 1,
                left - e as i64 * w[v] as i64,
                exps,
                w,
                lms,
                counts,
                upto,
            );
            e += 1;
        }
        exps[v] = 0;
    }
    rec(
        0,
        upto as i64,
        &mut exps,
        &w,
        &lms,
        &mut counts,
        upto as i64,
    );
    counts
}

/// Compares the Hilbert function from `K(t)` with standard monomial counts
/// in degrees `0..=upto`.
pub fn hilbert_cross_check(res: &Resolution, data: &HilbertData, upto: usize) -> Result<()> {
    let from_k = data.function(res.ring().weights(), upto);
    let counted = standard_monomial_counts(res.groebner_basis(), upto);
    if from_k != counted {
        return Err(Error::Inconsistent(format!(
            "Hilbert function {from_k:?} from the resolution disagrees with monomial count {counted:?}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertBurchReport {
    pub applicable: bool,
    pub shape_ok: bool,
    pub minors_generate: bool,
    pub monomial_entries: bool,
    pub note: String,
}

/// For a codimension-two ideal with three minimal generators: checks the
/// shape `1-3-2`, that the signed maximal minors of `φ_2` generate `J`, and
/// whether all entries of `φ_2` are monomials.
pub fn hilbert_burch_audit(
    res: &Resolution,
    dim: usize,
    limits: Limits,
) -> Result<HilbertBurchReport> {
    let n = res.ring().nvars();
    let gens = res.generators();
    if n.checked_sub(dim) != Some(2) || gens.len() != 3 {
        return Ok(HilbertBurchReport {
            applicable: false,
            shape_ok: false,
            minors_generate: false,
            monomial_entries: false,
            note: format!(
                "not applicable: codimension {}, {} generators",
                n - dim,
                gens.len()
            ),
        });
    }
    let shape_ok = res.length() == 2 && res.maps[1].ncols() == 2;
    if !shape_ok {
        return Ok(HilbertBurchReport {
            applicable: true,
            shape_ok,
            minors_generate: false,
            monomial_entries: false,
            note: format!("resolution has length {}", res.length()),
        });
    }
    let phi = &res.maps[1];
    let e = |i: usize, j: usize| phi.entry(i, j).clone();
    let minor = |a: usize, b: usize| -> Result<Polynomial> {
        e(a, 0).mul(&e(b, 1))?.sub(&e(a, 1).mul(&e(b, 0))?)
    };
    let minors = vec![minor(1, 2)?, minor(0, 2)?.neg(), minor(0, 1)?];
    let nz: Vec<Polynomial> = minors.iter().filter(|p| !p.is_zero()).cloned().collect();
    let minors_generate = !nz.is_empty()
        && res.groebner_basis().contains_all(&minors)?
        && GroebnerBasis::compute(&nz, limits)?.contains_all(&gens)?;
    let monomial_entries = phi
        .columns()
        .iter()
        .flatten()
        .all(|p| p.is_zero() || p.is_monomial());
    Ok(HilbertBurchReport {
        applicable: true,
        shape_ok,
        minors_generate,
        monomial_entries,
        note: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, TermOrder};

    fn ideal(vars: &[&str], gens: &[&str]) -> Vec<Polynomial> {
        let r = Ring::standard(vars).unwrap();
        gens.iter()
            .map(|g| parse_polynomial(&r, g).unwrap())
            .collect()
    }

    fn resolve(vars: &[&str], gens: &[&str]) -> Resolution {
        let res = minimal_free_resolution(&ideal(vars, gens), Limits::default()).unwrap();
        res.verify().unwrap();
        res
    }

    #[test]
    fn monomial_ideal_betti_numbers() {
        let res = resolve(&["x", "y", "z"], &["x z", "y z", "y^3"]);
        let b = res.betti();
        assert_eq!(b.column(1), BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(b.column(2), BTreeMap::from([(3, 1), (4, 1)]));
        let inv = ring_invariants(&res).unwrap();
        assert_eq!((inv.dim, inv.pd, inv.is_cm), (1, 2, true));
        assert_eq!(inv.cm_type, Some(2));
        assert_eq!(inv.is_level, Some(false));
        let hb = hilbert_burch_audit(&res, inv.dim, Limits::default()).unwrap();
        assert!(hb.applicable && hb.shape_ok && hb.minors_generate && hb.monomial_entries);
    }

    #[test]
    fn zero_ideal_has_trivial_resolution() {
        let res = resolve(&["x", "y"], &["0"]);
        assert_eq!(res.length(), 0);
        assert_eq!(
            res.betti().records(),
            vec![BettiRecord {
                i: 0,
                j: 0,
                rank: 1
            }]
        );
        let inv = ring_invariants(&res).unwrap();
        assert_eq!(inv.dim, 2);
        assert_eq!(inv.is_gorenstein, Some(true));
    }

    #[test]
    fn hypersurface_is_gorenstein() {
        let res = resolve(&["x", "y", "z"], &["x z - y^2"]);
        let inv = ring_invariants(&res).unwrap();
        assert_eq!(inv.is_gorenstein, Some(true));
        assert_eq!(inv.is_level, Some(true));
        assert_eq!(inv.cm_type, Some(1));
        let h = hilbert(&res, inv.dim).unwrap();
        assert_eq!(h.h_vector, Some(vec![1, 1]));
        let hb = hilbert_burch_audit(&res, inv.dim, Limits::default()).unwrap();
        assert!(!hb.applicable);
    }

    #[test]
    fn twisted_cubic_hilbert_series() {
        let res = resolve(
            &["x", "y", "z", "w"],
            &["x z - y^2", "y w - z^2", "x w - y z"],
        );
        let inv = ring_invariants(&res).unwrap();
        assert_eq!(inv.dim, 2);
        let h = hilbert(&res, inv.dim).unwrap();
        assert_eq!(h.h_vector, Some(vec![1, 2]));
        // k[s^3, s^2t, st^2, t^3] has 3k+1 monomials in degree k
        let hf = h.function(res.ring().weights(), 10);
        for (k, v) in hf.iter().enumerate() {
            assert_eq!(*v, 3 * k as i64 + 1);
        }
        hilbert_cross_check(&res, &h, 10).unwrap();
    }

    #[test]
    fn not_cohen_macaulay() {
        // two skew lines in P^3
        let res = resolve(&["a", "b", "c", "d"], &["a", "b"]);
        assert!(ring_invariants(&res).unwrap().is_cm);
        let res = resolve(&["a", "b", "c", "d"], &["a c", "a d", "b c", "b d"]);
        let inv = ring_invariants(&res).unwrap();
        assert_eq!(inv.dim, 2);
        assert_eq!(inv.pd, 3);
        assert!(!inv.is_cm);
        assert_eq!(inv.cm_type, None);
        let h = hilbert(&res, inv.dim).unwrap();
        hilbert_cross_check(&res, &h, 10).unwrap();
    }

    #[test]
    fn unit_ideal_is_rejected() {
        let gens = ideal(&["x"], &["x", "x - 1"]);
        assert!(matches!(
            minimal_free_resolution(&gens, Limits::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn weighted_hilbert_function() {
        let r = Ring::new(
            vec!["x".into(), "y".into()],
            TermOrder::degrevlex(2).with_weights(vec![1, 2]),
        )
        .unwrap();
        let f = parse_polynomial(&r, "x^2 - y").unwrap();
        let res = minimal_free_resolution(&[f], Limits::default()).unwrap();
        let inv = ring_invariants(&res).unwrap();
        let h = hilbert(&res, inv.dim).unwrap();
        assert_eq!(h.h_vector, None);
        assert_eq!(h.function(r.weights(), 5), vec![1, 1, 1, 1, 1, 1]);
        hilbert_cross_check(&res, &h, 12).unwrap();
        assert_eq!(inv.canonical_degrees, Some(vec![1]));
    }

    #[test]
    fn multidegrees_follow_the_grading() {
        let r = Ring::standard(&["x", "y", "z"])
            .unwrap()
            .with_grading(vec![vec![1, 0], vec![1, 1], vec![1, 2]])
            .unwrap();
        let f = parse_polynomial(&r, "x z - y^2").unwrap();
        let res = minimal_free_resolution(&[f], Limits::default()).unwrap();
        assert_eq!(res.multidegrees(1), Some(&[vec![2, 2]][..]));
    }
}
