//! Seeded random checks over numerical curves `k[s, st^a_1, ..., st^a_k]`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{analyze, AnalysisReport, Input, Options};
use crate::error::Error;

#[derive(Clone, Copy, Debug)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Distinct curves to analyze.
    pub instances: usize,
    /// At most this many generators, counting `s`.
    pub max_generators: usize,
    pub max_exponent: i64,
    pub jobs: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 1,
            instances: 300,
            max_generators: 5,
            max_exponent: 12,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub exponents: Vec<i64>,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HarnessSummary {
    pub seed: u64,
    pub instances: usize,
    pub cohen_macaulay: usize,
    pub nearly_gorenstein: usize,
    pub engine_comparisons: usize,
    pub violations: Vec<Violation>,
    /// Curves whose analysis raised an inconsistency.
    pub inconsistencies: Vec<Violation>,
    /// Curves that stopped on a resource bound or input error.
    pub skipped: Vec<Violation>,
}

impl HarnessSummary {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.inconsistencies.is_empty()
    }
}

/// Distinct exponent sets `{0} ∪ A` with `A ⊆ [1, max_exponent]`, `2 ≤ |A| < max_generators`
/// and `gcd(A) = 1`, in the order drawn.
pub fn random_curves(cfg: &HarnessConfig) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < cfg.instances && attempts < cfg.instances * 200 {
        attempts += 1;
        let k = rng.gen_range(2..cfg.max_generators.max(3));
        let mut a = BTreeSet::new();
        while a.len() < k {
            a.insert(rng.gen_range(1..=cfg.max_exponent));
        }
        let g = a.iter().fold(0, |g, &x| num_integer::gcd(g, x));
        if g != 1 {
            continue;
        }
        let e: Vec<i64> = std::iter::once(0).chain(a).collect();
        if seen.insert(e.clone()) {
            out.push(e);
        }
    }
    out
}

/// Property checks on one finished report; returns the failed ones.
pub fn check_report(e: &[i64], r: &AnalysisReport) -> Vec<Violation> {
    let mut bad = Vec::new();
    let mut fail = |check: &str, detail: String| {
        bad.push(Violation {
            exponents: e.to_vec(),
            check: check.into(),
            detail,
        });
    };
    let (Some(ng), Some(h)) = (r.is_nearly_gorenstein, &r.h_vector) else {
        return bad;
    };
    let gor = r.is_gorenstein == Some(true);
    let hs = *h.last().unwrap_or(&0);
    if ng && !gor && hs < 2 {
        fail(
            "nearly Gorenstein and not Gorenstein implies h_s >= 2",
            format!("h = {h:?}"),
        );
    }
    if ng && r.cm_type == Some(2) && r.is_level != Some(true) {
        fail(
            "nearly Gorenstein of type 2 implies level",
            format!("canonical degrees {:?}", r.canonical_degrees),
        );
    }
    if ng && r.cm_type == Some(2) && r.pd == 2 && !(h[0] == 1 && h[1..].iter().all(|&x| x == 2)) {
        fail(
            "nearly Gorenstein with pd = type = 2 has h = (1, 2, ..., 2)",
            format!("h = {h:?}"),
        );
    }
    if let Some(s) = &r.semigroup {
        if s.engines_agree != Some(true) {
            fail(
                "semigroup criterion agrees with kernel trace",
                format!("{:?} vs {ng}", s.nearly_gorenstein_min_v),
            );
        }
        if s.v_min_size != Some(hs as usize) {
            fail("|V_min| = h_s", format!("{:?} vs {hs}", s.v_min_size));
        }
    }
    bad
}

pub fn run_harness(cfg: &HarnessConfig, opts: &Options) -> HarnessSummary {
    let curves = random_curves(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<_> = pool.install(|| {
        curves
            .par_iter()
            .map(|e| {
                (
                    e.clone(),
                    analyze(
                        &Input::NumericalCurve {
                            exponents: e.clone(),
                        },
                        opts,
                    ),
                )
            })
            .collect()
    });
    let mut sum = HarnessSummary {
        seed: cfg.seed,
        instances: results.len(),
        ..Default::default()
    };
    for (e, r) in results {
        match r {
            Ok(r) => {
                if r.is_cm {
                    sum.cohen_macaulay += 1;
                }
                if r.is_nearly_gorenstein == Some(true) {
                    sum.nearly_gorenstein += 1;
                }
                if r.semigroup.as_ref().and_then(|s| s.engines_agree).is_some() {
                    sum.engine_comparisons += 1;
                }
                sum.violations.extend(check_report(&e, &r));
            }
            Err(err @ Error::Inconsistent(_)) => sum.inconsistencies.push(Violation {
                exponents: e,
                check: "analysis".into(),
                detail: err.to_string(),
            }),
            Err(err) => sum.skipped.push(Violation {
                exponents: e,
                check: "analysis".into(),
                detail: err.to_string(),
            }),
        }
    }
    sum
}
