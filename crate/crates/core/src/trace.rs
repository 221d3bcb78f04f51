//! Trace of the canonical module of a Cohen-Macaulay quotient `R = S/J`,
//! generated by the entries of generators of `ker(φ_p ⊗ R)`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Coeff, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{kernel_mod_ideal, GroebnerBasis, Limits, PolyMatrix};
use crate::resolution::{krull_dimension, minimal_free_resolution, Resolution};

#[derive(Clone, Debug)]
pub struct TraceIdeal {
    /// Kernel entries reduced modulo `J`, deduplicated, in order of
    /// appearance.
    pub generators: Vec<Polynomial>,
    pub kernel: Option<PolyMatrix>,
    /// Reduced Gröbner basis of the entries together with `J`.
    pub gb: GroebnerBasis,
}

impl TraceIdeal {
    pub fn is_unit(&self) -> bool {
        self.gb.is_unit()
    }

    /// `m ⊆ tr(ω_R)`.
    pub fn contains_maximal_ideal(&self) -> Result<bool> {
        let ring = self.gb.ring();
        for i in 0..ring.nvars() {
            if !self.gb.contains(&Polynomial::var(ring, i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `m^k ⊆ tr(ω_R)`, by checking every monomial of total degree `k`.
    pub fn contains_power(&self, k: usize) -> Result<bool> {
        if self.is_unit() {
            return Ok(true);
        }
        let ring = self.gb.ring();
        let n = ring.nvars();
        let lead = self.gb.leading_monomials();
        // a monomial divisible by no leading monomial is its own normal form
        let mut exps = vec![0u32; n];
        let mut ok = true;
        for_each_monomial(n, k as u32, 0, &mut exps, &mut |e| {
            if !ok {
                return Ok(());
            }
            let m = Monomial::from_exps(e);
            if lead.iter().any(|l| l.divides(&m))
                && self.gb.contains(&Polynomial::term(ring, m, Coeff::one()))?
            {
                return Ok(());
            }
            ok = false;
            Ok(())
        })?;
        Ok(ok)
    }
}

fn for_each_monomial(
    n: usize,
    left: u32,
    i: usize,
    exps: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    if n == 0 {
        return if left == 0 { f(exps) } else { Ok(()) };
    }
    if i + 1 == n {
        exps[i] = left;
        f(exps)?;
        exps[i] = 0;
        return Ok(());
    }
    for e in (0..=left).rev() {
        exps[i] = e;
        for_each_monomial(n, left - e, i + 1, exps, f)?;
    }
    exps[i] = 0;
    Ok(())
}

fn check_preconditions(res: &Resolution, dim: usize) -> Result<()> {
    let n = res.ring().nvars();
    if res.length() + dim != n {
        return Err(Error::Undefined(format!(
            "S/J is not Cohen-Macaulay (projective dimension {}, dimension {dim}, {n} variables)",
            res.length()
        )));
    }
    if res
        .generators()
        .iter()
        .any(|g| g.terms().iter().any(|(m, _)| m.total_degree() < 2))
    {
        return Err(Error::Input(
            "J must lie in the square of the maximal ideal".into(),
        ));
    }
    Ok(())
}

/// Trace of `ω_{S/J}` from a minimal resolution.
pub fn trace_from_resolution(res: &Resolution, dim: usize, limits: Limits) -> Result<TraceIdeal> {
    check_preconditions(res, dim)?;
    let ring = res.ring();
    let j = res.generators();
    let Some(phi) = res.last_map() else {
        return Ok(TraceIdeal {
            generators: vec![Polynomial::one(ring)],
            kernel: None,
            gb: GroebnerBasis::compute(&[Polynomial::one(ring)], limits)?,
        });
    };
    let kernel = kernel_mod_ideal(phi, &j, limits)?;
    let mut generators: Vec<Polynomial> = Vec::new();
    for p in kernel.entries() {
        if p.is_zero() {
            continue;
        }
        let p = p.monic();
        if !generators.contains(&p) {
            generators.push(p);
        }
    }
    let mut all = generators.clone();
    all.extend(res.groebner_basis().generators().iter().cloned());
    if all.is_empty() {
        all.push(Polynomial::zero(ring));
    }
    let gb = GroebnerBasis::compute(&all, limits)?;
    Ok(TraceIdeal {
        generators,
        kernel: Some(kernel),
        gb,
    })
}

/// Resolves `J` and computes the trace of `ω_{S/J}`.
pub fn trace_canonical(j: &[Polynomial], limits: Limits) -> Result<TraceIdeal> {
    let res = minimal_free_resolution(j, limits)?;
    let dim = krull_dimension(res.groebner_basis());
    trace_from_resolution(&res, dim, limits)
}

pub fn is_nearly_gorenstein(t: &TraceIdeal) -> Result<bool> {
    t.contains_maximal_ideal()
}

/// For type 2 and positive dimension: nearly Gorenstein iff the entries of
/// `φ_p` and `J` generate `m`. `None` when not applicable.
pub fn type2_shortcut(res: &Resolution, dim: usize, limits: Limits) -> Result<Option<bool>> {
    check_preconditions(res, dim)?;
    let Some(phi) = res.last_map() else {
        return Ok(None);
    };
    if phi.ncols() != 2 || dim == 0 {
        return Ok(None);
    }
    let mut all: Vec<Polynomial> = phi.entries().into_iter().filter(|p| !p.is_zero()).collect();
    all.extend(res.groebner_basis().generators().iter().cloned());
    let gb = GroebnerBasis::compute(&all, limits)?;
    let ring = res.ring();
    for i in 0..ring.nvars() {
        if !gb.contains(&Polynomial::var(ring, i))? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuncturedIndex {
    /// Smallest `k ≤ cutoff` with `m^k ⊆ tr(ω_R)`; `None` says nothing
    /// about larger `k`.
    pub index: Option<usize>,
    pub cutoff: usize,
}

pub fn punctured_index(t: &TraceIdeal, k_max: usize) -> Result<PuncturedIndex> {
    for k in 0..=k_max {
        let hit = if k == 0 {
            t.is_unit()
        } else {
            t.contains_power(k)?
        };
        if hit {
            return Ok(PuncturedIndex {
                index: Some(k),
                cutoff: k_max,
            });
        }
    }
    Ok(PuncturedIndex {
        index: None,
        cutoff: k_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Ring};

    fn ideal(vars: &[&str], gens: &[&str]) -> Vec<Polynomial> {
        let r = Ring::standard(vars).unwrap();
        gens.iter()
            .map(|g| parse_polynomial(&r, g).unwrap())
            .collect()
    }

    fn resolved(vars: &[&str], gens: &[&str]) -> (Resolution, usize) {
        let res = minimal_free_resolution(&ideal(vars, gens), Limits::default()).unwrap();
        let dim = krull_dimension(res.groebner_basis());
        (res, dim)
    }

    #[test]
    fn hypersurface_trace_is_unit() {
        let t =
            trace_canonical(&ideal(&["x", "y", "z"], &["x z - y^2"]), Limits::default()).unwrap();
        assert!(t.is_unit());
        assert_eq!(punctured_index(&t, 6).unwrap().index, Some(0));
    }

    #[test]
    fn monomial_type_two_is_nearly_gorenstein() {
        let (res, dim) = resolved(&["x", "y", "z"], &["x z", "y z", "y^3"]);
        let t = trace_from_resolution(&res, dim, Limits::default()).unwrap();
        assert!(!t.is_unit());
        assert!(is_nearly_gorenstein(&t).unwrap());
        assert_eq!(
            type2_shortcut(&res, dim, Limits::default()).unwrap(),
            Some(true)
        );
        assert_eq!(punctured_index(&t, 6).unwrap().index, Some(1));
    }

    #[test]
    fn polarized_is_not_nearly_gorenstein() {
        let (res, dim) = resolved(&["x", "y1", "y2", "y3", "z"], &["x z", "y1 z", "y1 y2 y3"]);
        let t = trace_from_resolution(&res, dim, Limits::default()).unwrap();
        assert!(!is_nearly_gorenstein(&t).unwrap());
        assert_eq!(
            type2_shortcut(&res, dim, Limits::default()).unwrap(),
            Some(false)
        );
    }

    #[test]
    fn lattice_ideal_trace_contains_fourth_power() {
        let vars = ["x1", "x2", "x3", "x4", "x5", "x6"];
        let (res, dim) = resolved(
            &vars,
            &[
                "x1 x5^2 - x2 x4^2",
                "x1 x6^2 - x3 x4^2",
                "x2 x6^2 - x3 x5^2",
            ],
        );
        let t = trace_from_resolution(&res, dim, Limits::default()).unwrap();
        assert!(!is_nearly_gorenstein(&t).unwrap());
        assert!(t.contains_power(4).unwrap());
        let k = punctured_index(&t, 6).unwrap().index.unwrap();
        assert!((2..=4).contains(&k));
        assert_eq!(
            type2_shortcut(&res, dim, Limits::default()).unwrap(),
            Some(false)
        );
    }

    #[test]
    fn not_cohen_macaulay_is_refused() {
        // the curve with exponents 0, 1, 3, 4
        let j = ideal(
            &["a", "b", "c", "d"],
            &["b c - a d", "c^3 - b d^2", "a c^2 - b^2 d", "b^3 - a^2 c"],
        );
        assert!(matches!(
            trace_canonical(&j, Limits::default()),
            Err(Error::Undefined(_))
        ));
    }

    #[test]
    fn linear_generator_is_refused() {
        let j = ideal(&["x", "y"], &["x"]);
        assert!(matches!(
            trace_canonical(&j, Limits::default()),
            Err(Error::Input(_))
        ));
    }
}
