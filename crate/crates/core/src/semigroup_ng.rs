//! Nearly Gorenstein semigroup rings decided on the semigroup: the
//! canonical generator multidegrees `V`, the set `S - V`, and the subset of
//! generators reachable as `u + v` with `v ∈ V_min`, `u ∈ S - V`.
//!
//! `V` is only known up to a common translation. Every test here has the
//! form `a - v + v' ∈ S` for `v, v' ∈ V`, which depends on differences only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resolution::Resolution;
use crate::toric::{extremal_rays, AffineSemigroup, Membership};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalData {
    /// Sorted by λ-degree, then lexicographically; minimum λ-degree 0.
    pub v: Vec<Vec<i64>>,
    /// Indices into `v` of the elements of minimal λ-degree.
    pub v_min: Vec<usize>,
    /// `v = shift - b` for the multidegrees `b` of the last free module.
    pub shift: Vec<i64>,
    pub degrees: Vec<i64>,
}

impl CanonicalData {
    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn v_min(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.v_min.iter().map(|&i| &self.v[i])
    }

    /// `V + c`; `c` is not required to preserve the normalization.
    pub fn translated(&self, c: &[i64]) -> CanonicalData {
        CanonicalData {
            v: self.v.iter().map(|v| AffineSemigroup::add(v, c)).collect(),
            v_min: self.v_min.clone(),
            shift: AffineSemigroup::add(&self.shift, c),
            degrees: self.degrees.clone(),
        }
    }
}

/// `V` from the multigraded minimal resolution of `k[S]`.
pub fn canonical_v(s: &AffineSemigroup, res: &Resolution) -> Result<CanonicalData> {
    let n = res.ring().nvars();
    let p = res.length();
    if p + s.rank() != n {
        return Err(Error::Undefined(format!(
            "k[S] is not Cohen-Macaulay (projective dimension {p}, codimension {})",
            n - s.rank()
        )));
    }
    let md = res
        .multidegrees(p)
        .ok_or_else(|| Error::Input("the resolution carries no multigrading".into()))?;
    let deg = |a: &[i64]| {
        s.degree(a)
            .ok_or_else(|| Error::Inconsistent(format!("multidegree {a:?} has no integral degree")))
    };
    let mut top: Option<(i64, &Vec<i64>)> = None;
    for b in md {
        let d = deg(b)?;
        if top.is_none_or(|(t, _)| d > t) {
            top = Some((d, b));
        }
    }
    let shift = top
        .map(|(_, b)| b.clone())
        .unwrap_or_else(|| vec![0; s.ambient_dim()]);
    let mut v: Vec<(i64, Vec<i64>)> = Vec::with_capacity(md.len());
    for b in md {
        let x = AffineSemigroup::sub(&shift, b);
        v.push((deg(&x)?, x));
    }
    v.sort();
    let min = v.first().map_or(0, |e| e.0);
    let v_min = v
        .iter()
        .enumerate()
        .filter(|(_, e)| e.0 == min)
        .map(|(i, _)| i)
        .collect();
    let (degrees, v) = v.into_iter().unzip();
    Ok(CanonicalData {
        v,
        v_min,
        shift,
        degrees,
    })
}

/// `u ∈ S - V`, i.e. `u + v ∈ S` for every `v ∈ V`.
pub fn s_minus_v_test(s: &AffineSemigroup, cd: &CanonicalData, u: &[i64]) -> Result<bool> {
    s_minus_v_with(&mut Membership::new(s), s, cd, u)
}

fn s_minus_v_with(
    memb: &mut Membership<'_>,
    s: &AffineSemigroup,
    cd: &CanonicalData,
    u: &[i64],
) -> Result<bool> {
    if u.len() != s.ambient_dim() || !s.in_lattice(u) {
        return Err(Error::Input(format!(
            "{u:?} is not in the group generated by S"
        )));
    }
    let du = s
        .degree(u)
        .ok_or_else(|| Error::Inconsistent(format!("{u:?} has no integral degree")))?;
    let min = cd.v.iter().filter_map(|v| s.degree(v)).min().unwrap_or(0);
    if du + min < 0 {
        return Ok(false);
    }
    Ok(cd
        .v
        .iter()
        .all(|v| memb.contains(&AffineSemigroup::add(u, v))))
}

/// Which `v` may be used in a decomposition `a = u + v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `v ∈ V`.
    AllOfV,
    /// `v ∈ V_min`.
    MinimalV,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub generator: Vec<i64>,
    pub v: Vec<i64>,
    pub u: Vec<i64>,
}

impl Certificate {
    /// Re-checks `generator = u + v` and `u ∈ S - V`.
    pub fn verify(&self, s: &AffineSemigroup, cd: &CanonicalData) -> Result<bool> {
        Ok(AffineSemigroup::add(&self.u, &self.v) == self.generator
            && s_minus_v_test(s, cd, &self.u)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSet {
    pub mode: Mode,
    pub certificates: Vec<Certificate>,
    /// Generators without a certificate.
    pub missing: Vec<Vec<i64>>,
}

impl TraceSet {
    pub fn members(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.certificates.iter().map(|c| &c.generator)
    }

    pub fn is_everything(&self) -> bool {
        self.missing.is_empty()
    }
}

fn certify(
    memb: &mut Membership<'_>,
    s: &AffineSemigroup,
    cd: &CanonicalData,
    a: &[i64],
    mode: Mode,
) -> Result<Option<Certificate>> {
    let candidates: Vec<&Vec<i64>> = match mode {
        Mode::AllOfV => cd.v.iter().collect(),
        Mode::MinimalV => cd.v_min().collect(),
    };
    for v in candidates {
        let u = AffineSemigroup::sub(a, v);
        if s_minus_v_with(memb, s, cd, &u)? {
            return Ok(Some(Certificate {
                generator: a.to_vec(),
                v: v.clone(),
                u,
            }));
        }
    }
    Ok(None)
}

/// The generators `a` admitting `a = u + v`; with [`Mode::MinimalV`] this is
/// the trace of the canonical module on the generators.
pub fn trace_set(s: &AffineSemigroup, cd: &CanonicalData, mode: Mode) -> Result<TraceSet> {
    let mut memb = Membership::new(s);
    let mut certificates = Vec::new();
    let mut missing = Vec::new();
    for a in s.generators() {
        match certify(&mut memb, s, cd, a, mode)? {
            Some(c) => certificates.push(c),
            None => missing.push(a.clone()),
        }
    }
    Ok(TraceSet {
        mode,
        certificates,
        missing,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NgVerdict {
    pub nearly_gorenstein: bool,
    pub certificates: Vec<Certificate>,
    pub first_failure: Option<Vec<i64>>,
}

/// Nearly Gorenstein test: every generator must have a certificate. Stops at
/// the first generator without one.
pub fn ng_semigroup(s: &AffineSemigroup, cd: &CanonicalData, mode: Mode) -> Result<NgVerdict> {
    let mut memb = Membership::new(s);
    let mut certificates = Vec::new();
    for a in s.generators() {
        match certify(&mut memb, s, cd, a, mode)? {
            Some(c) => certificates.push(c),
            None => {
                return Ok(NgVerdict {
                    nearly_gorenstein: false,
                    certificates,
                    first_failure: Some(a.clone()),
                })
            }
        }
    }
    Ok(NgVerdict {
        nearly_gorenstein: true,
        certificates,
        first_failure: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub name: String,
    /// `None` when the hypothesis does not hold.
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureAudit {
    pub checks: Vec<AuditCheck>,
}

impl StructureAudit {
    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| c.passed == Some(false))
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Consistency checks that hold for every Cohen-Macaulay homogeneous
/// semigroup ring. `h` is the h-vector.
pub fn structure_audit(
    s: &AffineSemigroup,
    cd: &CanonicalData,
    ts: &TraceSet,
    h: &[i64],
) -> StructureAudit {
    let ng = ts.is_everything();
    let r = cd.len();
    let gor = r == 1;
    let hs = h.last().copied().unwrap_or(0);
    let mut checks = Vec::new();

    let single_min = cd.v_min.len() == 1 && r >= 2;
    let (passed, detail) = if !single_min {
        (None, format!("|V_min| = {}, |V| = {r}", cd.v_min.len()))
    } else {
        match extremal_rays(s) {
            Ok(rays) => {
                let out: Vec<&Vec<i64>> = rays.iter().filter(|e| ts.missing.contains(e)).collect();
                (
                    Some(!out.is_empty()),
                    format!("extremal generators outside the trace: {out:?}"),
                )
            }
            Err(e) => (None, format!("extremal rays unavailable: {e}")),
        }
    };
    checks.push(AuditCheck {
        name: "single_minimal_v_misses_extremal_ray".into(),
        passed,
        detail,
    });

    checks.push(AuditCheck {
        name: "nearly_gorenstein_top_h_at_least_two".into(),
        passed: (ng && !gor).then_some(hs >= 2),
        detail: format!("nearly Gorenstein {ng}, type {r}, h_s = {hs}"),
    });
    let level = cd.v_min.len() == r;
    checks.push(AuditCheck {
        name: "nearly_gorenstein_type_two_is_level".into(),
        passed: (ng && r == 2).then_some(level),
        detail: format!("nearly Gorenstein {ng}, type {r}, level {level}"),
    });
    checks.push(AuditCheck {
        name: "top_h_equals_minimal_v".into(),
        passed: Some(hs == cd.v_min.len() as i64),
        detail: format!("h_s = {hs}, |V_min| = {}", cd.v_min.len()),
    });
    StructureAudit { checks }
}
