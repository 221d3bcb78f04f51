//! Gröbner bases of ideals and of submodules of graded free modules.

mod engine;
mod module;

use std::sync::Arc;

use crate::algebra::{poly::same_ring, Coeff, Monomial, Polynomial, Ring, TermOrder};
use crate::error::{Error, Result};
use engine::{Engine, ModuleOrder, VTerm, Vector};

pub use engine::Limits;
pub use module::{ModuleElement, PolyMatrix};

/// Reduced Gröbner basis under the order of its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
}

fn common_ring(gens: &[Polynomial]) -> Result<Arc<Ring>> {
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .ok_or_else(|| Error::Input("empty generator list".into()))?;
    if gens.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::Input("generators live in different rings".into()));
    }
    Ok(ring)
}

fn to_vector(p: &Polynomial, comp: u32) -> Vec<VTerm> {
    p.terms()
        .iter()
        .map(|(m, c)| VTerm {
            comp,
            mon: m.clone(),
            coeff: c.clone(),
        })
        .collect()
}

fn from_vector(ring: &Arc<Ring>, v: &Vector) -> Polynomial {
    Polynomial::from_sorted(
        ring,
        v.0.iter()
            .map(|t| (t.mon.clone(), t.coeff.clone()))
            .collect(),
    )
}

/// Splits a vector into per-component polynomials for components
/// `offset..offset + rank`.
fn split_vector(ring: &Arc<Ring>, v: &Vector, offset: u32, rank: usize) -> Vec<Polynomial> {
    let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
    for t in &v.0 {
        if t.comp >= offset && ((t.comp - offset) as usize) < rank {
            parts[(t.comp - offset) as usize].push((t.mon.clone(), t.coeff.clone()));
        }
    }
    parts
        .into_iter()
        .map(|terms| Polynomial::from_terms(ring, terms).expect("same ring"))
        .collect()
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the ideal generated by `gens` under the
    /// order of their common ring.
    pub fn compute(gens: &[Polynomial], limits: Limits) -> Result<Self> {
        let ring = common_ring(gens)?;
        let ord = ModuleOrder::ideal(ring.order().clone());
        let mut eng = Engine::new(&ord, limits, true);
        eng.run(gens.iter().map(|g| Vector(to_vector(g, 0))).collect())?;
        let gens = eng
            .reduced_basis()
            .iter()
            .map(|v| from_vector(&ring, v))
            .collect();
        Ok(GroebnerBasis { ring, gens })
    }

    /// Wraps polynomials already known to form a reduced Gröbner basis.
    pub(crate) fn from_reduced(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            gens,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// The unit ideal.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Polynomial::is_constant)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    /// Remainder of `f` with no term divisible by a leading monomial.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::Input(
                "polynomial and basis live in different rings".into(),
            ));
        }
        let ord = ModuleOrder::ideal(self.ring.order().clone());
        let mut eng = Engine::new(&ord, Limits::default(), true);
        eng.seed(self.gens.iter().map(|g| Vector(to_vector(g, 0))).collect());
        Ok(from_vector(
            &self.ring,
            &eng.reduce(Vector(to_vector(f, 0))),
        ))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_all(&self, fs: &[Polynomial]) -> Result<bool> {
        for f in fs {
            if !self.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Reduced Gröbner basis of `(gens)`.
pub fn buchberger(gens: &[Polynomial], limits: Limits) -> Result<GroebnerBasis> {
    GroebnerBasis::compute(gens, limits)
}

/// Cofactors `q` with `f = Σ q_i gens_i`, or `None` when `f ∉ (gens)`.
pub fn lift(
    gens: &[Polynomial],
    f: &Polynomial,
    limits: Limits,
) -> Result<Option<Vec<Polynomial>>> {
    let ring = common_ring(gens)?;
    if !same_ring(f.ring(), &ring) {
        return Err(Error::Input(
            "polynomial and generators live in different rings".into(),
        ));
    }
    let m = gens.len();
    let ord = ModuleOrder {
        ring: ring.order().clone(),
        split: 1,
        top: false,
        shifts: Vec::new(),
    };
    let mut eng = Engine::new(&ord, limits, false);
    let inputs = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut t = to_vector(g, 0);
            t.push(VTerm {
                comp: 1 + i as u32,
                mon: Monomial::one(ring.nvars()),
                coeff: Coeff::one(),
            });
            Vector::from_unsorted(t, &ord)
        })
        .collect();
    eng.run(inputs)?;
    // each basis element (h, c) satisfies h = Σ c_i g_i; reduction keeps
    // head(v) - tail(v)·g equal to f
    let r = eng.reduce(Vector(to_vector(f, 0)));
    if r.0.iter().any(|t| t.comp == 0) {
        return Ok(None);
    }
    Ok(Some(
        split_vector(&ring, &r, 1, m)
            .into_iter()
            .map(|p| p.neg())
            .collect(),
    ))
}

/// Generators of `(gens) ∩ Q[rest]`, where `block` lists the variables to
/// eliminate. The result lives in the ring of the remaining variables (same
/// relative order and weights, degrevlex) and is its reduced Gröbner basis.
pub fn eliminate(gens: &[Polynomial], block: &[usize], limits: Limits) -> Result<GroebnerBasis> {
    let ring = common_ring(gens)?;
    let n = ring.nvars();
    if block.iter().any(|&i| i >= n) {
        return Err(Error::Input("elimination variable out of range".into()));
    }
    let rest: Vec<usize> = (0..n).filter(|i| !block.contains(i)).collect();
    let mut block_sorted: Vec<usize> = block.to_vec();
    block_sorted.sort_unstable();
    block_sorted.dedup();
    let perm: Vec<usize> = block_sorted.iter().chain(rest.iter()).copied().collect();
    let mut map = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        map[old] = new;
    }
    let names: Vec<String> = perm.iter().map(|&i| ring.vars()[i].clone()).collect();
    let weights: Vec<u32> = perm.iter().map(|&i| ring.weights()[i]).collect();
    let ering = Ring::new(
        names,
        TermOrder::elimination(n, block_sorted.len()).with_weights(weights),
    )?;
    let egens: Vec<Polynomial> = gens
        .iter()
        .map(|g| g.remap(&ering, &map))
        .collect::<Result<_>>()?;
    let gb = GroebnerBasis::compute(&egens, limits)?;

    let k = block_sorted.len();
    let sub_names: Vec<String> = rest.iter().map(|&i| ring.vars()[i].clone()).collect();
    let sub_weights: Vec<u32> = rest.iter().map(|&i| ring.weights()[i]).collect();
    let sring = Ring::new(
        sub_names,
        TermOrder::degrevlex(rest.len()).with_weights(sub_weights),
    )?;
    let mut out = Vec::new();
    for g in gb.generators() {
        if g.terms()
            .iter()
            .all(|(m, _)| m.exps()[..k].iter().all(|&e| e == 0))
        {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::from_exps(&m.exps()[k..]), c.clone()))
                .collect();
            out.push(Polynomial::from_terms(&sring, terms)?);
        }
    }
    Ok(GroebnerBasis::from_reduced(&sring, out))
}

/// A minimal generating set of a homogeneous ideal, chosen among `gens`
/// (in input order).
pub fn minimal_generators(gens: &[Polynomial], limits: Limits) -> Result<Vec<Polynomial>> {
    Ok(minimal_generators_and_basis(gens, limits)?.0)
}

/// Minimal generators together with the reduced Gröbner basis, from one run.
pub fn minimal_generators_and_basis(
    gens: &[Polynomial],
    limits: Limits,
) -> Result<(Vec<Polynomial>, GroebnerBasis)> {
    let ring = common_ring(gens)?;
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::Input(format!("{g} is not homogeneous")));
    }
    let ord = ModuleOrder::ideal(ring.order().clone());
    let mut eng = Engine::new(&ord, limits, true);
    eng.run(gens.iter().map(|g| Vector(to_vector(g, 0))).collect())?;
    let mut kept = eng.kept_inputs.clone();
    kept.sort_unstable();
    let basis = eng
        .reduced_basis()
        .iter()
        .map(|v| from_vector(&ring, v))
        .collect();
    Ok((
        kept.into_iter().map(|i| gens[i].clone()).collect(),
        GroebnerBasis { ring, gens: basis },
    ))
}

/// Shared driver for syzygies: head components carry the matrix, tail
/// components `r..r+t` record the combination.
fn tail_syzygies(m: &PolyMatrix, seeds: &[Polynomial], limits: Limits) -> Result<Vec<Vector>> {
    let r = m.nrows() as u32;
    let mut shifts: Vec<i64> = m.target_degrees().to_vec();
    shifts.extend_from_slice(m.source_degrees());
    let ord = ModuleOrder {
        ring: m.ring().order().clone(),
        split: r,
        top: true,
        shifts,
    };
    let mut eng = Engine::new(&ord, limits, false);
    if !seeds.is_empty() {
        let mut sv = Vec::new();
        for i in 0..r {
            for g in seeds {
                sv.push(Vector(to_vector(g, i)));
            }
        }
        eng.seed(sv);
    }
    let nv = m.ring().nvars();
    let inputs = m
        .columns()
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut t: Vec<VTerm> = Vec::new();
            for (i, p) in col.iter().enumerate() {
                t.extend(to_vector(p, i as u32));
            }
            t.push(VTerm {
                comp: r + j as u32,
                mon: Monomial::one(nv),
                coeff: Coeff::one(),
            });
            Vector::from_unsorted(t, &ord)
        })
        .collect();
    eng.run(inputs)?;
    Ok(eng
        .new_tail
        .iter()
        .map(|&k| eng.basis[k].v.clone())
        .collect())
}

/// Minimal generators of the syzygy module of the columns of `m`, as the
/// columns of a matrix `S^s → S^t` with the induced degrees.
pub fn syzygies(m: &PolyMatrix, limits: Limits) -> Result<PolyMatrix> {
    let ring = m.ring();
    let r = m.nrows() as u32;
    let t = m.ncols();
    let vs = tail_syzygies(m, &[], limits)?;
    let mut cols = Vec::with_capacity(vs.len());
    let mut degs = Vec::with_capacity(vs.len());
    for v in &vs {
        let lead = v.lead().expect("nonzero");
        degs.push(ring.order().degree(&lead.mon) + m.source_degrees()[(lead.comp - r) as usize]);
        cols.push(split_vector(ring, v, r, t));
    }
    PolyMatrix::new(ring, m.source_degrees().to_vec(), degs, cols)
}

/// Generators of the kernel of `m ⊗ S/J`, each reduced modulo `J`, zero
/// vectors dropped. `j` may be empty.
pub fn kernel_mod_ideal(m: &PolyMatrix, j: &[Polynomial], limits: Limits) -> Result<PolyMatrix> {
    let ring = m.ring();
    let r = m.nrows() as u32;
    let t = m.ncols();
    let gb = if j.iter().all(Polynomial::is_zero) {
        None
    } else {
        let nz: Vec<Polynomial> = j.iter().filter(|p| !p.is_zero()).cloned().collect();
        if !same_ring(nz[0].ring(), ring) {
            return Err(Error::Input(
                "ideal and matrix live in different rings".into(),
            ));
        }
        if nz.iter().any(|p| !p.is_homogeneous()) {
            return Err(Error::Input("ideal is not homogeneous".into()));
        }
        Some(GroebnerBasis::compute(&nz, limits)?)
    };
    let seeds = gb.as_ref().map_or(&[][..], |g| g.generators());
    let vs = tail_syzygies(m, seeds, limits)?;
    let mut cols = Vec::new();
    let mut degs = Vec::new();
    for v in &vs {
        let lead = v.lead().expect("nonzero");
        let deg = ring.order().degree(&lead.mon) + m.source_degrees()[(lead.comp - r) as usize];
        let mut col = split_vector(ring, v, r, t);
        if let Some(gb) = &gb {
            for p in &mut col {
                *p = gb.normal_form(p)?;
            }
        }
        if col.iter().all(Polynomial::is_zero) {
            continue;
        }
        degs.push(deg);
        cols.push(col);
    }
    PolyMatrix::new(ring, m.source_degrees().to_vec(), degs, cols)
}

#[cfg(test)]
mod tests;
