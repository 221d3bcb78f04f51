//! Schreyer's resolution: the S-pair syzygies of a Gröbner basis form a
//! Gröbner basis of the syzygy module for the induced order, so the whole
//! frame of leading terms is known in advance and only the tails have to be
//! computed by division. The result is usually not minimal; [`minimize`]
//! splits off the unit entries.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Coeff, Monomial, Polynomial, Ring, TermOrder};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Limits};

#[derive(Clone, Debug)]
struct Term {
    comp: u32,
    mon: Monomial,
    /// `mon · τ(comp)`, the leading monomial in `S` of `mon · e_comp`.
    total: Monomial,
    coeff: Coeff,
}

/// Basis of one free module `F_k` of the frame.
struct Level {
    lead_comp: Vec<u32>,
    lead_mon: Vec<Monomial>,
    lead_mask: Vec<u64>,
    tau: Vec<Monomial>,
    /// Position in the induced tie-breaking order.
    rank: Vec<u32>,
    degree: Vec<i64>,
    /// Image of each basis element in `F_{k-1}`, descending, monic.
    image: Vec<Vec<Term>>,
    by_comp: HashMap<u32, Vec<u32>>,
}

impl Level {
    fn len(&self) -> usize {
        self.lead_comp.len()
    }
}

fn cmp_terms(ord: &TermOrder, rank: &[u32], a: &Term, b: &Term) -> Ordering {
    ord.cmp(&a.total, &b.total)
        .then_with(|| rank[a.comp as usize].cmp(&rank[b.comp as usize]))
}

/// `p - c · q · g` by a sorted merge.
fn axpy(
    ord: &TermOrder,
    rank: &[u32],
    p: &[Term],
    g: &[Term],
    q: &Monomial,
    c: &Coeff,
) -> Vec<Term> {
    let scaled = |t: &Term| Term {
        comp: t.comp,
        mon: t.mon.mul(q),
        total: t.total.mul(q),
        coeff: -(&t.coeff * c),
    };
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gj = g.first().map(scaled);
    while i < p.len() {
        let Some(gt) = gj.as_ref() else { break };
        match cmp_terms(ord, rank, &p[i], gt) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(gj.take().expect("present"));
                j += 1;
                gj = g.get(j).map(scaled);
            }
            Ordering::Equal => {
                let s = &p[i].coeff + &gt.coeff;
                if !s.is_zero() {
                    out.push(Term {
                        coeff: s,
                        ..p[i].clone()
                    });
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(scaled);
            }
        }
    }
    out.extend(p[i..].iter().cloned());
    if let Some(gt) = gj {
        out.push(gt);
        out.extend(g[j + 1..].iter().map(scaled));
    }
    out
}

fn scale_terms(v: &[Term], q: &Monomial) -> Vec<Term> {
    v.iter()
        .map(|t| Term {
            comp: t.comp,
            mon: t.mon.mul(q),
            total: t.total.mul(q),
            coeff: t.coeff.clone(),
        })
        .collect()
}

/// The differentials `d_1, ..., d_p` of Schreyer's resolution of `S/J`,
/// starting from the reduced Gröbner basis of `J`.
pub(super) fn schreyer_resolution(gb: &GroebnerBasis, limits: Limits) -> Result<Vec<DenseMap>> {
    let ring = gb.ring().clone();
    let ord = ring.order().clone();
    let n = ring.nvars();
    // lex-ascending leading monomials within each component keep the frame
    // no longer than the number of variables
    let mut gens: Vec<&Polynomial> = gb.generators().iter().collect();
    gens.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .exps()
            .cmp(b.leading_monomial().unwrap().exps())
    });
    let mut maps = Vec::new();
    if gens.is_empty() {
        return Ok(maps);
    }

    // F_1 mapping onto the ideal
    let mut level = Level {
        lead_comp: vec![0; gens.len()],
        lead_mon: gens
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect(),
        lead_mask: gens
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").divmask())
            .collect(),
        tau: gens
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect(),
        rank: (0..gens.len() as u32).collect(),
        degree: gens
            .iter()
            .map(|g| ord.degree(g.leading_monomial().expect("nonzero")))
            .collect(),
        image: gens
            .iter()
            .map(|g| {
                g.terms()
                    .iter()
                    .map(|(m, c)| Term {
                        comp: 0,
                        mon: m.clone(),
                        total: m.clone(),
                        coeff: c.clone(),
                    })
                    .collect()
            })
            .collect(),
        by_comp: HashMap::from([(0, (0..gens.len() as u32).collect())]),
    };
    let mut prev_rank: Vec<u32> = vec![0];
    maps.push(DenseMap::from_level(&ring, &level, &[0]));
    let mut reductions: u64 = 0;

    loop {
        let next = next_level(&ring, &level, &prev_rank, limits, &mut reductions)?;
        if next.len() == 0 {
            break;
        }
        if maps.len() > n {
            return Err(Error::Inconsistent(
                "Schreyer frame longer than the number of variables".into(),
            ));
        }
        maps.push(DenseMap::from_level(&ring, &next, &level.degree));
        prev_rank = std::mem::take(&mut level.rank);
        level = next;
    }
    Ok(maps)
}

fn next_level(
    ring: &Arc<Ring>,
    cur: &Level,
    prev_rank: &[u32],
    limits: Limits,
    reductions: &mut u64,
) -> Result<Level> {
    let ord = ring.order();
    // frame: for each b, minimal generators of (lcm(m_a, m_b)/m_b : a < b, same lead component)
    let mut lead_comp = Vec::new();
    let mut lead_mon = Vec::new();
    let mut partner = Vec::new();
    let mut comps: Vec<&u32> = cur.by_comp.keys().collect();
    comps.sort_unstable();
    let mut per_b: Vec<Vec<(u32, Monomial)>> = vec![Vec::new(); cur.len()];
    for c in comps {
        let list = &cur.by_comp[c];
        for (pos, &b) in list.iter().enumerate() {
            let mb = &cur.lead_mon[b as usize];
            let cands: Vec<(u32, Monomial)> = list[..pos]
                .iter()
                .map(|&a| (a, cur.lead_mon[a as usize].lcm(mb).div(mb)))
                .collect();
            let mut keep: Vec<(u32, Monomial)> = Vec::new();
            for (i, (a, q)) in cands.iter().enumerate() {
                let dominated = cands
                    .iter()
                    .enumerate()
                    .any(|(k, (_, q2))| k != i && q2.divides(q) && (q2 != q || k < i));
                if !dominated {
                    keep.push((*a, q.clone()));
                }
            }
            keep.sort_by(|x, y| x.1.exps().cmp(y.1.exps()));
            per_b[b as usize] = keep;
        }
    }
    for (b, keep) in per_b.into_iter().enumerate() {
        for (a, q) in keep {
            lead_comp.push(b as u32);
            lead_mon.push(q);
            partner.push(a);
        }
    }
    let m = lead_comp.len();
    if m as u64 > limits.max_pairs {
        return Err(Error::Resource(format!(
            "Schreyer frame with {m} elements exceeds the pair cap"
        )));
    }
    let tau: Vec<Monomial> = (0..m)
        .map(|i| lead_mon[i].mul(&cur.tau[lead_comp[i] as usize]))
        .collect();
    let degree: Vec<i64> = tau.iter().map(|t| ord.degree(t)).collect();
    if let Some(&d) = degree.iter().max() {
        if d > limits.max_degree {
            return Err(Error::Resource(format!(
                "syzygy of degree {d} exceeds the degree cap"
            )));
        }
    }
    // tie-breaking ranks: by (rank of lead component, own index)
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (cur.rank[lead_comp[i] as usize], i));
    let mut rank = vec![0u32; m];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos as u32;
    }
    let mut by_comp: HashMap<u32, Vec<u32>> = HashMap::new();
    for (i, &c) in lead_comp.iter().enumerate() {
        by_comp.entry(c).or_default().push(i as u32);
    }

    // tails by division in F_{k-1}
    let mut image = Vec::with_capacity(m);
    for i in 0..m {
        let (a, b) = (partner[i] as usize, lead_comp[i] as usize);
        let qb = &lead_mon[i];
        let lcm = cur.lead_mon[b].mul(qb);
        let qa = lcm.div(&cur.lead_mon[a]);
        // w = qa·v_a - qb·v_b; syzygy = qb e_b - qa e_a + Σ γ q e
        let mut w = axpy(
            ord,
            prev_rank,
            &scale_terms(&cur.image[a], &qa),
            &cur.image[b],
            qb,
            &Coeff::one(),
        );
        let mut syz: Vec<(u32, Monomial, Coeff)> = vec![
            (b as u32, qb.clone(), Coeff::one()),
            (a as u32, qa, -Coeff::one()),
        ];
        while let Some(t) = w.first() {
            *reductions += 1;
            if *reductions > limits.max_pairs.saturating_mul(50) {
                return Err(Error::Resource(
                    "too many reduction steps in the Schreyer resolution".into(),
                ));
            }
            let mask = t.mon.divmask();
            let e = cur
                .by_comp
                .get(&t.comp)
                .and_then(|l| {
                    l.iter().copied().find(|&e| {
                        let e = e as usize;
                        cur.lead_mask[e] & !mask == 0 && cur.lead_mon[e].divides(&t.mon)
                    })
                })
                .ok_or_else(|| {
                    Error::Inconsistent("Schreyer frame is not a Gröbner basis".into())
                })?;
            let q = t.mon.div(&cur.lead_mon[e as usize]);
            let g = t.coeff.clone();
            w = axpy(ord, prev_rank, &w, &cur.image[e as usize], &q, &g);
            syz.push((e, q, g));
        }
        image.push(sort_syzygy(
            ord,
            &cur.tau,
            &cur.rank,
            syz,
            b as u32,
            &lead_mon[i],
        )?);
    }
    let lead_mask = lead_mon.iter().map(Monomial::divmask).collect();
    Ok(Level {
        lead_comp,
        lead_mon,
        lead_mask,
        tau,
        rank,
        degree,
        image,
        by_comp,
    })
}

fn sort_syzygy(
    ord: &TermOrder,
    tau: &[Monomial],
    rank: &[u32],
    syz: Vec<(u32, Monomial, Coeff)>,
    lead_comp: u32,
    lead_mon: &Monomial,
) -> Result<Vec<Term>> {
    let mut terms: Vec<Term> = syz
        .into_iter()
        .map(|(comp, mon, coeff)| Term {
            total: mon.mul(&tau[comp as usize]),
            comp,
            mon,
            coeff,
        })
        .collect();
    terms.sort_by(|x, y| cmp_terms(ord, rank, y, x));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(l) if l.comp == t.comp && l.mon == t.mon => l.coeff = &l.coeff + &t.coeff,
            _ => out.push(t),
        }
    }
    out.retain(|t| !t.coeff.is_zero());
    match out.first() {
        Some(t) if t.comp == lead_comp && t.mon == *lead_mon && t.coeff.is_one() => Ok(out),
        _ => Err(Error::Inconsistent(
            "Schreyer syzygy has an unexpected leading term".into(),
        )),
    }
}

/// A graded map stored as dense columns, used during minimization.
#[derive(Clone, Debug)]
pub(super) struct DenseMap {
    pub target: Vec<i64>,
    pub source: Vec<i64>,
    pub cols: Vec<Vec<Polynomial>>,
}

impl DenseMap {
    fn from_level(ring: &Arc<Ring>, level: &Level, target: &[i64]) -> Self {
        let mut cols = Vec::with_capacity(level.len());
        for v in &level.image {
            let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); target.len()];
            for t in v {
                parts[t.comp as usize].push((t.mon.clone(), t.coeff.clone()));
            }
            cols.push(
                parts
                    .into_iter()
                    .map(|p| Polynomial::from_terms(ring, p).expect("same ring"))
                    .collect(),
            );
        }
        DenseMap {
            target: target.to_vec(),
            source: level.degree.clone(),
            cols,
        }
    }
}

/// Splits off unit entries until none remain. Scans maps in order, columns
/// then rows ascending.
pub(super) fn minimize(maps: &mut Vec<DenseMap>) -> Result<()> {
    for k in 0..maps.len() {
        let mut c = 0;
        while c < maps[k].cols.len() {
            let unit_row = maps[k].cols[c]
                .iter()
                .position(|p| !p.is_zero() && p.is_constant());
            let Some(r) = unit_row else {
                c += 1;
                continue;
            };
            if k == 0 {
                return Err(Error::Input("the ideal is the whole ring".into()));
            }
            let pivot_col = maps[k].cols[c].clone();
            let u = pivot_col[r].leading_term().expect("nonzero").1.clone();
            let uinv = u.inv();
            for c2 in 0..maps[k].cols.len() {
                if c2 == c || maps[k].cols[c2][r].is_zero() {
                    continue;
                }
                let f = maps[k].cols[c2][r].scale(&uinv);
                let col = &mut maps[k].cols[c2];
                for (i, p) in col.iter_mut().enumerate() {
                    if !pivot_col[i].is_zero() {
                        *p = p.sub(&f.mul(&pivot_col[i])?)?;
                    }
                }
                debug_assert!(col[r].is_zero());
            }
            // drop column c and row r of d_k
            maps[k].cols.remove(c);
            maps[k].source.remove(c);
            for col in maps[k].cols.iter_mut() {
                col.remove(r);
            }
            maps[k].target.remove(r);
            // drop column r of d_{k-1} and row c of d_{k+1}
            maps[k - 1].cols.remove(r);
            maps[k - 1].source.remove(r);
            if k + 1 < maps.len() {
                for col in maps[k + 1].cols.iter_mut() {
                    col.remove(c);
                }
                maps[k + 1].target.remove(c);
            }
            c = 0;
        }
    }
    while maps.last().is_some_and(|m| m.cols.is_empty()) {
        maps.pop();
    }
    Ok(())
}
