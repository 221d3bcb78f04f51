//! Input schemas and the full analysis of one ring.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_polynomial, Polynomial, Ring, TermOrder};
use crate::error::{Error, Result};
use crate::groebner::Limits;
use crate::resolution::{
    hilbert, hilbert_burch_audit, hilbert_cross_check, krull_dimension, minimal_free_resolution,
    ring_invariants_with_dim, BettiRecord, HilbertBurchReport, Resolution,
};
use crate::semigroup_ng::{self, Certificate, Mode, StructureAudit};
use crate::stanley_reisner::{
    almost_gorenstein_1dim, classify_1dim, locally_gorenstein, predicted_1dim, sr_ideal,
    AlmostGorenstein, Classification, LocalReport, SimplicialComplex,
};
use crate::toric::{self, AffineSemigroup};
use crate::trace::{self, PuncturedIndex};

pub const ENGINE_VERSION: &str = concat!("levelng ", env!("CARGO_PKG_VERSION"));

/// Points examined by the default hole search before it is skipped.
const HOLE_SEARCH_CAP: i64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Input {
    Semigroup {
        generators: Vec<Vec<i64>>,
    },
    NumericalCurve {
        exponents: Vec<i64>,
    },
    Ideal {
        variables: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<u32>>,
        generators: Vec<String>,
    },
    Complex {
        vertices: usize,
        facets: Vec<Vec<usize>>,
    },
}

impl Input {
    pub fn from_json(text: &str) -> Result<Input> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed input: {e}")))
    }

    pub fn is_toric(&self) -> bool {
        matches!(self, Input::Semigroup { .. } | Input::NumericalCurve { .. })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderChoice {
    #[default]
    Degrevlex,
    Lex,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub order: OrderChoice,
    /// λ-degree bound of the hole search; `None` uses the default bound and
    /// skips searches that are too large.
    pub hole_bound: Option<i64>,
    pub k_max: usize,
    pub limits: Limits,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            order: OrderChoice::Degrevlex,
            hole_bound: None,
            k_max: 6,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelSummary {
    pub columns: usize,
    /// Distinct total degrees of the nonzero entries.
    pub entry_degrees: Vec<u64>,
    pub vectors: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HoleSummary {
    pub degree_bound: i64,
    pub count: usize,
    /// At most 20 holes, by λ-degree.
    pub sample: Vec<Vec<i64>>,
    pub all_in_line_families: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SemigroupReport {
    pub generators: Vec<Vec<i64>>,
    pub removed: Vec<Vec<i64>>,
    pub rank: usize,
    pub extremal_rays: Option<Vec<Vec<i64>>>,
    pub v: Option<Vec<Vec<i64>>>,
    pub v_min: Option<Vec<Vec<i64>>>,
    pub v_size: Option<usize>,
    pub v_min_size: Option<usize>,
    pub trace_set: Option<Vec<Vec<i64>>>,
    pub certificates: Option<Vec<Certificate>>,
    /// Verdict with `v` ranging over all of `V`.
    pub nearly_gorenstein_all_v: Option<bool>,
    /// Verdict with `v` ranging over `V_min`.
    pub nearly_gorenstein_min_v: Option<bool>,
    /// The semigroup verdict equals the kernel-trace verdict.
    pub engines_agree: Option<bool>,
    pub audit: Option<StructureAudit>,
    pub holes: Option<HoleSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexReport {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    pub dimension: i64,
    pub connected: bool,
    pub classification: Classification,
    pub predicted_nearly_gorenstein: Option<bool>,
    pub locally_gorenstein: LocalReport,
    pub almost_gorenstein: AlmostGorenstein,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub engine_version: String,
    pub input: Input,
    pub order: OrderChoice,
    pub variables: Vec<String>,
    pub ideal_generators: Vec<String>,
    pub n: usize,
    pub dim: usize,
    pub codim: usize,
    pub pd: usize,
    pub betti_table: Vec<BettiRecord>,
    pub is_cm: bool,
    pub cm_type: Option<usize>,
    pub is_level: Option<bool>,
    pub is_gorenstein: Option<bool>,
    pub canonical_degrees: Option<Vec<i64>>,
    pub is_nearly_gorenstein: Option<bool>,
    pub trace_contains_m: Option<bool>,
    pub trace_generators: Option<Vec<String>>,
    pub trace_kernel: Option<KernelSummary>,
    pub punctured_index: Option<PuncturedIndex>,
    pub type2_shortcut: Option<bool>,
    pub h_vector: Option<Vec<i64>>,
    pub hilbert_numerator: Vec<i64>,
    pub hilbert_burch: HilbertBurchReport,
    pub semigroup: Option<SemigroupReport>,
    pub complex: Option<ComplexReport>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl AnalysisReport {
    pub fn without_timings(mut self) -> Self {
        self.timings_ms = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Whether `m^k ⊆ tr(ω_R)`, read off the punctured index.
    pub fn trace_contains_power(&self, k: usize) -> Option<bool> {
        let p = self.punctured_index?;
        match p.index {
            Some(i) => Some(i <= k),
            None if k <= p.cutoff => Some(false),
            None => None,
        }
    }
}

struct Timer(BTreeMap<String, u128>, Instant);

impl Timer {
    fn new() -> Self {
        Timer(BTreeMap::new(), Instant::now())
    }

    fn lap(&mut self, name: &str) {
        self.0
            .insert(name.to_string(), self.1.elapsed().as_millis());
        self.1 = Instant::now();
    }
}

fn order_for(choice: OrderChoice, n: usize) -> TermOrder {
    match choice {
        OrderChoice::Degrevlex => TermOrder::degrevlex(n),
        OrderChoice::Lex => TermOrder::lex(n),
    }
}

fn reorder(
    ring: &Arc<Ring>,
    choice: OrderChoice,
    j: Vec<Polynomial>,
) -> Result<(Arc<Ring>, Vec<Polynomial>)> {
    if choice == OrderChoice::Degrevlex {
        return Ok((ring.clone(), j));
    }
    let target =
        ring.with_order(order_for(choice, ring.nvars()).with_weights(ring.weights().to_vec()))?;
    let moved = j
        .iter()
        .map(|p| p.to_ring(&target))
        .collect::<Result<Vec<_>>>()?;
    Ok((target, moved))
}

pub fn analyze(input: &Input, opts: &Options) -> Result<AnalysisReport> {
    let mut timer = Timer::new();
    let mut notes = vec!["coefficients are rational numbers; all verdicts are over Q".to_string()];
    let limits = opts.limits;

    let mut semigroup = None;
    let mut complex = None;
    let (ring, j, known_dim) = match input {
        Input::Semigroup { generators } => {
            let s = AffineSemigroup::new(generators)?;
            let (r, j) = toric_input(&s, opts.order, limits)?;
            let dim = s.rank();
            semigroup = Some(s);
            (r, j, Some(dim))
        }
        Input::NumericalCurve { exponents } => {
            let s = AffineSemigroup::numerical_curve(exponents)?;
            let (r, j) = toric_input(&s, opts.order, limits)?;
            let dim = s.rank();
            semigroup = Some(s);
            (r, j, Some(dim))
        }
        Input::Ideal {
            variables,
            weights,
            generators,
        } => {
            let n = variables.len();
            let mut ord = order_for(opts.order, n);
            if let Some(w) = weights {
                if w.len() != n {
                    return Err(Error::Input(format!(
                        "{} weights for {n} variables",
                        w.len()
                    )));
                }
                if w.contains(&0) {
                    return Err(Error::Input("weights must be positive".into()));
                }
                ord = ord.with_weights(w.clone());
            }
            let ring = Ring::new(variables.clone(), ord)?;
            let mut j = Vec::with_capacity(generators.len());
            for (i, g) in generators.iter().enumerate() {
                let p = parse_polynomial(&ring, g)
                    .map_err(|e| Error::Input(format!("generator {}: {e}", i + 1)))?;
                if !p.is_homogeneous() {
                    return Err(Error::Input(format!(
                        "generator {} ({g}) is not homogeneous",
                        i + 1
                    )));
                }
                j.push(p);
            }
            if j.is_empty() {
                j.push(Polynomial::zero(&ring));
            }
            (ring, j, None)
        }
        Input::Complex { vertices, facets } => {
            let d = SimplicialComplex::new(*vertices, facets)?;
            if d.vertex_count() == 0 {
                return Err(Error::Input("a complex needs at least one vertex".into()));
            }
            let base = d.ring();
            let j = sr_ideal(&d, &base)?;
            let (r, j) = reorder(&base, opts.order, j)?;
            let dim = (d.dimension() + 1) as usize;
            complex = Some(d);
            (r, j, Some(dim))
        }
    };
    timer.lap("input");

    let res = minimal_free_resolution(&j, limits)?;
    res.verify()?;
    timer.lap("resolution");
    let dim = known_dim.unwrap_or_else(|| krull_dimension(res.groebner_basis()));
    let inv = ring_invariants_with_dim(&res, dim)?;
    let hd = hilbert(&res, dim)?;
    hilbert_cross_check(&res, &hd, 10)?;
    let hb = hilbert_burch_audit(&res, dim, limits)?;
    timer.lap("invariants");

    let mut report = AnalysisReport {
        engine_version: ENGINE_VERSION.to_string(),
        input: input.clone(),
        order: opts.order,
        variables: ring.vars().to_vec(),
        ideal_generators: res.generators().iter().map(|g| g.to_string()).collect(),
        n: inv.n,
        dim: inv.dim,
        codim: inv.codim,
        pd: inv.pd,
        betti_table: res.betti().records(),
        is_cm: inv.is_cm,
        cm_type: inv.cm_type,
        is_level: inv.is_level,
        is_gorenstein: inv.is_gorenstein,
        canonical_degrees: inv.canonical_degrees.clone(),
        is_nearly_gorenstein: None,
        trace_contains_m: None,
        trace_generators: None,
        trace_kernel: None,
        punctured_index: None,
        type2_shortcut: None,
        h_vector: hd.h_vector.clone(),
        hilbert_numerator: hd.numerator.clone(),
        hilbert_burch: hb,
        semigroup: None,
        complex: None,
        notes: Vec::new(),
        timings_ms: None,
    };

    let in_square = res
        .generators()
        .iter()
        .all(|g| g.terms().iter().all(|(m, _)| m.total_degree() >= 2));
    if !inv.is_cm {
        notes.push(
            "not Cohen-Macaulay: type, levelness and nearly Gorenstein verdicts are undefined"
                .into(),
        );
    } else if !in_square {
        notes.push(
            "the ideal is not contained in the square of the maximal ideal; trace not computed"
                .into(),
        );
    } else {
        kernel_trace(&res, dim, opts, &mut report)?;
        timer.lap("trace");
    }

    if let Some(s) = &semigroup {
        report.semigroup = Some(semigroup_extras(s, &res, &report, opts, &mut notes)?);
        timer.lap("semigroup");
    }
    if let Some(d) = &complex {
        report.complex = Some(complex_extras(d, limits)?);
        timer.lap("complex");
    }
    report.notes = notes;
    check_consistency(&report)?;
    report.timings_ms = Some(timer.0);
    Ok(report)
}

fn toric_input(
    s: &AffineSemigroup,
    order: OrderChoice,
    limits: Limits,
) -> Result<(Arc<Ring>, Vec<Polynomial>)> {
    let ring = toric::semigroup_ring(s, None)?;
    let j = toric::toric_ideal(s, &ring, limits)?;
    for p in &j {
        toric::check_toric_binomial(s, p)?;
    }
    let j = if j.is_empty() {
        vec![Polynomial::zero(&ring)]
    } else {
        j
    };
    reorder(&ring, order, j)
}

fn kernel_trace(
    res: &Resolution,
    dim: usize,
    opts: &Options,
    report: &mut AnalysisReport,
) -> Result<()> {
    let t = trace::trace_from_resolution(res, dim, opts.limits)?;
    let ng = trace::is_nearly_gorenstein(&t)?;
    report.is_nearly_gorenstein = Some(ng);
    report.trace_contains_m = Some(ng);
    report.trace_generators = Some(t.generators.iter().map(ToString::to_string).collect());
    report.trace_kernel = t.kernel.as_ref().map(|k| {
        let mut degs: Vec<u64> = k
            .entries()
            .iter()
            .filter(|p| !p.is_zero())
            .flat_map(|p| {
                p.terms()
                    .iter()
                    .map(|(m, _)| m.total_degree())
                    .collect::<Vec<_>>()
            })
            .collect();
        degs.sort_unstable();
        degs.dedup();
        KernelSummary {
            columns: k.ncols(),
            entry_degrees: degs,
            vectors: k
                .columns()
                .iter()
                .map(|c| c.iter().map(ToString::to_string).collect())
                .collect(),
        }
    });
    report.punctured_index = Some(trace::punctured_index(&t, opts.k_max)?);
    report.type2_shortcut = trace::type2_shortcut(res, dim, opts.limits)?;
    Ok(())
}

fn semigroup_extras(
    s: &AffineSemigroup,
    res: &Resolution,
    report: &AnalysisReport,
    opts: &Options,
    notes: &mut Vec<String>,
) -> Result<SemigroupReport> {
    if !s.removed().is_empty() {
        notes.push(format!("non-minimal generators removed: {:?}", s.removed()));
    }
    let extremal_rays = match toric::extremal_rays(s) {
        Ok(r) => Some(r),
        Err(e) => {
            notes.push(format!("extremal rays: {e}"));
            None
        }
    };
    let mut out = SemigroupReport {
        generators: s.generators().to_vec(),
        removed: s.removed().to_vec(),
        rank: s.rank(),
        extremal_rays,
        v: None,
        v_min: None,
        v_size: None,
        v_min_size: None,
        trace_set: None,
        certificates: None,
        nearly_gorenstein_all_v: None,
        nearly_gorenstein_min_v: None,
        engines_agree: None,
        audit: None,
        holes: hole_summary(s, opts, notes)?,
    };
    if !report.is_cm {
        return Ok(out);
    }
    let cd = semigroup_ng::canonical_v(s, res)?;
    let ts = semigroup_ng::trace_set(s, &cd, Mode::MinimalV)?;
    let all_v = semigroup_ng::ng_semigroup(s, &cd, Mode::AllOfV)?;
    let min_v = semigroup_ng::ng_semigroup(s, &cd, Mode::MinimalV)?;
    for c in &ts.certificates {
        if !c.verify(s, &cd)? {
            return Err(Error::Inconsistent(format!(
                "certificate for {:?} does not verify",
                c.generator
            )));
        }
    }
    let h = report.h_vector.clone().unwrap_or_default();
    let audit = semigroup_ng::structure_audit(s, &cd, &ts, &h);
    out.v = Some(cd.v.clone());
    out.v_min = Some(cd.v_min().cloned().collect());
    out.v_size = Some(cd.len());
    out.v_min_size = Some(cd.v_min.len());
    out.trace_set = Some(ts.members().cloned().collect());
    out.certificates = Some(ts.certificates.clone());
    out.nearly_gorenstein_all_v = Some(all_v.nearly_gorenstein);
    out.nearly_gorenstein_min_v = Some(min_v.nearly_gorenstein);
    out.engines_agree = report
        .is_nearly_gorenstein
        .map(|ng| ng == min_v.nearly_gorenstein);
    out.audit = Some(audit);
    Ok(out)
}

fn hole_summary(
    s: &AffineSemigroup,
    opts: &Options,
    notes: &mut Vec<String>,
) -> Result<Option<HoleSummary>> {
    let bound = opts
        .hole_bound
        .unwrap_or_else(|| toric::default_hole_bound(s));
    if opts.hole_bound.is_none() {
        // points visited: Σ_k Π_c k·(max_c - min_c) + 1
        let d = s.ambient_dim();
        let spans: Vec<i64> = (0..d)
            .map(|c| {
                let col = s.generators().iter().map(|g| g[c]);
                col.clone().max().unwrap_or(0) - col.min().unwrap_or(0)
            })
            .collect();
        let per = |k: i64| {
            spans
                .iter()
                .fold(1i64, |a, &w| a.saturating_mul(k.saturating_mul(w) + 1))
        };
        let total = (0..=bound).fold(0i64, |a, k| a.saturating_add(per(k)));
        if total > HOLE_SEARCH_CAP {
            notes.push(format!(
                "hole search up to degree {bound} skipped ({total} points); pass a degree bound"
            ));
            return Ok(None);
        }
    }
    match toric::holes_box(s, bound) {
        Ok(h) => {
            let sample = h.holes.iter().take(20).cloned().collect();
            Ok(Some(HoleSummary {
                degree_bound: bound,
                count: h.holes.len(),
                sample,
                all_in_line_families: h.all_in_line_families,
            }))
        }
        Err(e @ (Error::Unsupported(_) | Error::Undefined(_))) => {
            notes.push(format!("hole search: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn complex_extras(d: &SimplicialComplex, limits: Limits) -> Result<ComplexReport> {
    let classification = classify_1dim(d);
    let predicted = predicted_1dim(classification, d.facets().len()).map(|p| p.0);
    Ok(ComplexReport {
        vertices: d.vertex_count(),
        facets: d.facets().to_vec(),
        dimension: d.dimension(),
        connected: d.is_connected(),
        classification,
        predicted_nearly_gorenstein: predicted,
        locally_gorenstein: locally_gorenstein(d, limits)?,
        almost_gorenstein: almost_gorenstein_1dim(d),
    })
}

/// Cross-checks between independently computed fields.
fn check_consistency(r: &AnalysisReport) -> Result<()> {
    let fail = |m: String| Err(Error::Inconsistent(m));
    if r.is_gorenstein == Some(true) && (r.is_level != Some(true) || r.cm_type != Some(1)) {
        return fail("Gorenstein but not level of type 1".into());
    }
    if r.is_cm != (r.pd == r.codim) {
        return fail("Cohen-Macaulay flag disagrees with pd = codim".into());
    }
    if let (Some(ng), Some(g)) = (r.is_nearly_gorenstein, r.is_gorenstein) {
        if g && !ng {
            return fail("Gorenstein ring whose trace misses m".into());
        }
    }
    if let (Some(ng), Some(sc)) = (r.is_nearly_gorenstein, r.type2_shortcut) {
        if ng != sc {
            return fail(format!(
                "type-2 criterion says {sc}, kernel trace says {ng}"
            ));
        }
    }
    if let Some(p) = r.punctured_index {
        let g = r.is_gorenstein == Some(true);
        if (p.index == Some(0)) != g {
            return fail("trace is the unit ideal exactly for Gorenstein rings".into());
        }
        if let Some(ng) = r.is_nearly_gorenstein {
            if ng != matches!(p.index, Some(0 | 1)) {
                return fail("punctured index disagrees with the nearly Gorenstein verdict".into());
            }
        }
    }
    if let (Some(h), Some(t)) = (&r.h_vector, r.cm_type) {
        if h.iter().sum::<i64>() <= 0
            || (r.is_cm && r.canonical_degrees.as_ref().map(Vec::len) != Some(t))
        {
            return fail("h-vector or canonical degrees out of shape".into());
        }
    }
    if let Some(sg) = &r.semigroup {
        if sg.engines_agree == Some(false) {
            return fail(format!(
                "semigroup criterion says {:?}, kernel trace says {:?}",
                sg.nearly_gorenstein_min_v, r.is_nearly_gorenstein
            ));
        }
        if sg.nearly_gorenstein_all_v != sg.nearly_gorenstein_min_v {
            return fail("the two quantifier modes of the semigroup criterion disagree".into());
        }
        if let Some(a) = &sg.audit {
            if let Some(c) = a.failures().next() {
                return fail(format!("structure audit {} failed: {}", c.name, c.detail));
            }
        }
        if sg.v_size.is_some() && sg.v_size != r.cm_type {
            return fail("|V| differs from the type".into());
        }
        if r.dim != sg.rank {
            return fail("dimension differs from the rank of the lattice".into());
        }
    }
    if let Some(c) = &r.complex {
        if let (Some(p), Some(ng)) = (c.predicted_nearly_gorenstein, r.is_nearly_gorenstein) {
            if p != ng {
                return fail(format!(
                    "{:?} predicts nearly Gorenstein = {p}, trace says {ng}",
                    c.classification
                ));
            }
        }
    }
    Ok(())
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "undefined".to_string(), ToString::to_string)
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring        Q[{}] / J", self.variables.join(", "))?;
        writeln!(f, "J           ({})", self.ideal_generators.join(", "))?;
        writeln!(f, "n, dim, pd  {}, {}, {}", self.n, self.dim, self.pd)?;
        writeln!(f, "betti")?;
        let table = crate::resolution::BettiTable::from_records(&self.betti_table);
        for line in table.to_string().lines() {
            writeln!(f, "  {line}")?;
        }
        writeln!(f, "CM          {}", self.is_cm)?;
        writeln!(f, "type        {}", opt(&self.cm_type))?;
        writeln!(f, "level       {}", opt(&self.is_level))?;
        writeln!(f, "Gorenstein  {}", opt(&self.is_gorenstein))?;
        writeln!(f, "nearly Gor. {}", opt(&self.is_nearly_gorenstein))?;
        if let Some(p) = &self.punctured_index {
            let idx = p
                .index
                .map_or_else(|| format!("none up to {}", p.cutoff), |k| k.to_string());
            writeln!(f, "m^k ⊆ tr    k = {idx}")?;
        }
        if let Some(t) = &self.trace_generators {
            writeln!(f, "trace gens  {}", t.join(", "))?;
        }
        if let Some(h) = &self.h_vector {
            writeln!(f, "h-vector    {h:?}")?;
        }
        writeln!(f, "K(t)        {:?}", self.hilbert_numerator)?;
        if let Some(s) = &self.semigroup {
            writeln!(
                f,
                "V           {}",
                s.v.as_ref()
                    .map_or("undefined".into(), |v| format!("{v:?}"))
            )?;
            writeln!(
                f,
                "V_min       {}",
                s.v_min
                    .as_ref()
                    .map_or("undefined".into(), |v| format!("{v:?}"))
            )?;
            if let Some(t) = &s.trace_set {
                writeln!(f, "tr(ω_S)     {t:?}")?;
            }
            writeln!(
                f,
                "engines     {}",
                s.engines_agree
                    .map_or("n/a", |a| if a { "agree" } else { "DISAGREE" })
            )?;
        }
        if let Some(c) = &self.complex {
            writeln!(f, "complex     {:?}, dim {}", c.classification, c.dimension)?;
            writeln!(f, "locally Gor {}", c.locally_gorenstein.locally_gorenstein)?;
        }
        for n in &self.notes {
            writeln!(f, "note        {n}")?;
        }
        Ok(())
    }
}
