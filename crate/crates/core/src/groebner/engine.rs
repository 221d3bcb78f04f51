//! Buchberger's algorithm on sparse vectors of a free module `S^r`.
//!
//! Ideals are the rank-one case. The module order splits the components into
//! a *head* block (position-over-term, compared first) and a *tail* block.
//! Putting a matrix in the head and identity vectors in the tail turns a
//! Gröbner basis computation into a syzygy computation: basis elements whose
//! leading term sits in the tail have zero head part.
//!
//! Pairs are processed by (sugar degree, class, creation order). For
//! homogeneous input this is the degree-by-degree strategy, and it yields
//! minimal generators for free:
//! * an input that does not reduce to zero is a minimal generator;
//! * in syzygy mode, at each degree the tail-tail pairs are handled before
//!   the head-head pairs, so every tail element produced by a head-head pair
//!   (or an input) is a new minimal syzygy.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Coeff, Monomial, TermOrder};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VTerm {
    pub comp: u32,
    pub mon: Monomial,
    pub coeff: Coeff,
}

/// Sparse module element, terms strictly descending under a [`ModuleOrder`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Vector(pub Vec<VTerm>);

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.0.first()
    }

    pub fn from_unsorted(mut terms: Vec<VTerm>, ord: &ModuleOrder) -> Vector {
        terms.sort_by(|a, b| ord.cmp_terms(b, a));
        let mut out: Vec<VTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.mon == t.mon => l.coeff = &l.coeff + &t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Vector(out)
    }

    fn scale(&mut self, c: &Coeff) {
        for t in &mut self.0 {
            t.coeff = &t.coeff * c;
        }
    }

    fn make_monic(&mut self) {
        if let Some(t) = self.0.first() {
            if !t.coeff.is_one() {
                let inv = t.coeff.inv();
                self.scale(&inv);
            }
        }
    }

    /// Maximum term degree.
    pub fn sugar(&self, ord: &ModuleOrder) -> i64 {
        self.0
            .iter()
            .map(|t| ord.term_degree(t.comp, &t.mon))
            .max()
            .unwrap_or(0)
    }
}

/// Module order: every term of the head block `comp < split` is larger than
/// every term of the tail block. Within a block, either position-over-term
/// (lower index larger) or term-over-position on shifted degrees.
#[derive(Clone, Debug)]
pub(crate) struct ModuleOrder {
    pub ring: TermOrder,
    pub split: u32,
    pub top: bool,
    pub shifts: Vec<i64>,
}

impl ModuleOrder {
    pub fn ideal(ring: TermOrder) -> Self {
        ModuleOrder {
            ring,
            split: u32::MAX,
            top: false,
            shifts: Vec::new(),
        }
    }

    #[inline]
    pub fn term_degree(&self, comp: u32, m: &Monomial) -> i64 {
        self.ring.degree(m) + self.shifts.get(comp as usize).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_tail(&self, comp: u32) -> bool {
        comp >= self.split
    }

    #[inline]
    pub fn cmp(&self, ca: u32, ma: &Monomial, cb: u32, mb: &Monomial) -> Ordering {
        let (ha, hb) = (ca < self.split, cb < self.split);
        if ha != hb {
            return if ha {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        if !self.top {
            cb.cmp(&ca).then_with(|| self.ring.cmp(ma, mb))
        } else {
            self.term_degree(ca, ma)
                .cmp(&self.term_degree(cb, mb))
                .then_with(|| self.ring.cmp(ma, mb))
                .then_with(|| cb.cmp(&ca))
        }
    }

    #[inline]
    pub fn cmp_terms(&self, a: &VTerm, b: &VTerm) -> Ordering {
        self.cmp(a.comp, &a.mon, b.comp, &b.mon)
    }
}

/// Resource caps. Exceeding either aborts with [`Error::Resource`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_pairs: u64,
    pub max_degree: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: 2_000_000,
            max_degree: 200,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Origin {
    Input(usize),
    Pair { class: u8 },
}

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub v: Vector,
    pub comp: u32,
    pub lt: Monomial,
    mask: u64,
    pub sugar: i64,
    pub redundant: bool,
}

#[derive(Clone, Debug)]
enum Job {
    Pair { i: usize, j: usize, lcm: Monomial },
    Input(usize),
}

type Key = (i64, u8, u64);

pub(crate) struct Engine<'a> {
    ord: &'a ModuleOrder,
    limits: Limits,
    /// Product criterion is only valid for ideals.
    ideal: bool,
    pub basis: Vec<Elem>,
    reducers: HashMap<u32, Vec<usize>>,
    queue: BTreeMap<Key, Job>,
    comp_keys: HashMap<u32, Vec<Key>>,
    inputs: Vec<Vector>,
    seq: u64,
    pairs_done: u64,
    pub kept_inputs: Vec<usize>,
    pub new_tail: Vec<usize>,
}

impl<'a> Engine<'a> {
    pub fn new(ord: &'a ModuleOrder, limits: Limits, ideal: bool) -> Self {
        Engine {
            ord,
            limits,
            ideal,
            basis: Vec::new(),
            reducers: HashMap::new(),
            queue: BTreeMap::new(),
            comp_keys: HashMap::new(),
            inputs: Vec::new(),
            seq: 0,
            pairs_done: 0,
            kept_inputs: Vec::new(),
            new_tail: Vec::new(),
        }
    }

    /// Elements already forming a Gröbner basis of their span; no pairs are
    /// formed among seeds.
    pub fn seed(&mut self, seeds: Vec<Vector>) {
        for mut v in seeds {
            if v.is_zero() {
                continue;
            }
            v.make_monic();
            let sugar = v.sugar(self.ord);
            self.push_elem(v, sugar);
        }
    }

    pub fn run(&mut self, inputs: Vec<Vector>) -> Result<()> {
        for v in inputs {
            let k = self.inputs.len();
            if !v.is_zero() {
                let key = (v.sugar(self.ord), 2, self.next_seq());
                self.queue.insert(key, Job::Input(k));
            }
            self.inputs.push(v);
        }
        while let Some((key, job)) = self.queue.pop_first() {
            match job {
                Job::Input(k) => {
                    let v = std::mem::take(&mut self.inputs[k]);
                    let r = self.reduce(v);
                    if !r.is_zero() {
                        self.kept_inputs.push(k);
                        self.add(r, key.0, Origin::Input(k));
                    }
                }
                Job::Pair { i, j, lcm } => {
                    self.pairs_done += 1;
                    if self.pairs_done > self.limits.max_pairs {
                        return Err(Error::Resource(format!(
                            "more than {} S-pairs processed",
                            self.limits.max_pairs
                        )));
                    }
                    if key.0 > self.limits.max_degree {
                        return Err(Error::Resource(format!(
                            "S-pair of degree {} exceeds the degree cap {}",
                            key.0, self.limits.max_degree
                        )));
                    }
                    let s = self.spoly(i, j, &lcm);
                    let r = self.reduce(s);
                    if !r.is_zero() {
                        self.add(r, key.0, Origin::Pair { class: key.1 });
                    }
                }
            }
        }
        Ok(())
    }

    fn next_seq(&mut self) -> u64 {
        self.seq += 1;
        self.seq
    }

    fn push_elem(&mut self, v: Vector, sugar: i64) -> usize {
        let lt = v.lead().expect("nonzero");
        let (comp, mon) = (lt.comp, lt.mon.clone());
        let k = self.basis.len();
        self.basis.push(Elem {
            mask: mon.divmask(),
            comp,
            lt: mon,
            v,
            sugar,
            redundant: false,
        });
        self.reducers.entry(comp).or_default().push(k);
        k
    }

    fn add(&mut self, mut v: Vector, sugar: i64, origin: Origin) {
        v.make_monic();
        let comp = v.lead().expect("nonzero").comp;
        let tail = self.ord.is_tail(comp);
        let k = self.push_elem(v, sugar);
        if tail && !matches!(origin, Origin::Pair { class: 0 }) {
            self.new_tail.push(k);
        }
        self.update(k);
    }

    /// Gebauer–Möller installation of the pairs of a new element.
    fn update(&mut self, k: usize) {
        let comp = self.basis[k].comp;
        let lt_k = self.basis[k].lt.clone();

        // old pairs made redundant by the new leading term
        if let Some(keys) = self.comp_keys.get_mut(&comp) {
            let basis = &self.basis;
            let queue = &mut self.queue;
            keys.retain(|key| {
                let Some(Job::Pair { i, j, lcm }) = queue.get(key) else {
                    return false;
                };
                let drop = lt_k.divides(lcm)
                    && basis[*i].lt.lcm(&lt_k) != *lcm
                    && basis[*j].lt.lcm(&lt_k) != *lcm;
                if drop {
                    queue.remove(key);
                }
                !drop
            });
        }

        // candidate pairs with all current non-redundant elements
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for i in 0..k {
            let e = &self.basis[i];
            if e.comp != comp || e.redundant {
                continue;
            }
            let coprime = self.ideal && e.lt.is_coprime(&lt_k);
            cands.push((i, e.lt.lcm(&lt_k), coprime));
        }
        // criterion M / F
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        let mut rest = cands;
        while !rest.is_empty() {
            let (i, lcm, coprime) = rest.remove(0);
            let dominated = rest
                .iter()
                .chain(kept.iter())
                .any(|(_, l, _)| l.divides(&lcm));
            if coprime || !dominated {
                kept.push((i, lcm, coprime));
            }
        }
        for (i, lcm, coprime) in kept {
            if coprime {
                continue;
            }
            let (ei, ek) = (&self.basis[i], &self.basis[k]);
            let sugar = (ei.sugar + self.ord.ring.degree(&lcm) - self.ord.ring.degree(&ei.lt))
                .max(ek.sugar + self.ord.ring.degree(&lcm) - self.ord.ring.degree(&ek.lt));
            let class = if self.ord.is_tail(comp) { 0 } else { 1 };
            let key = (sugar, class, self.next_seq());
            self.queue.insert(key, Job::Pair { i, j: k, lcm });
            self.comp_keys.entry(comp).or_default().push(key);
        }

        // older elements whose leading term is now divisible by the new one
        let mask_k = self.basis[k].mask;
        let mut newly_redundant = Vec::new();
        if let Some(list) = self.reducers.get(&comp) {
            for &i in list {
                if i != k && mask_k & !self.basis[i].mask == 0 && lt_k.divides(&self.basis[i].lt) {
                    newly_redundant.push(i);
                }
            }
        }
        if !newly_redundant.is_empty() {
            for &i in &newly_redundant {
                self.basis[i].redundant = true;
            }
            if let Some(list) = self.reducers.get_mut(&comp) {
                list.retain(|i| !newly_redundant.contains(i));
            }
        }
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> Vector {
        let (a, b) = (&self.basis[i], &self.basis[j]);
        let qa = lcm.div(&a.lt);
        let qb = lcm.div(&b.lt);
        let left: Vec<VTerm> =
            a.v.0
                .iter()
                .map(|t| VTerm {
                    comp: t.comp,
                    mon: t.mon.mul(&qa),
                    coeff: t.coeff.clone(),
                })
                .collect();
        axpy(self.ord, &left, &b.v.0, &qb, &Coeff::one())
    }

    #[inline]
    fn find_reducer(&self, comp: u32, mon: &Monomial, skip: Option<usize>) -> Option<usize> {
        let list = self.reducers.get(&comp)?;
        let mask = mon.divmask();
        list.iter().copied().find(|&r| {
            let e = &self.basis[r];
            Some(r) != skip && e.mask & !mask == 0 && e.lt.divides(mon)
        })
    }

    /// Full reduction against the current basis.
    pub fn reduce(&self, v: Vector) -> Vector {
        self.reduce_with(v, None)
    }

    fn reduce_with(&self, v: Vector, skip: Option<usize>) -> Vector {
        let mut p = v.0;
        let mut start = 0;
        let mut out: Vec<VTerm> = Vec::new();
        while start < p.len() {
            let t = &p[start];
            match self.find_reducer(t.comp, &t.mon, skip) {
                Some(r) => {
                    let g = &self.basis[r];
                    let q = t.mon.div(&g.lt);
                    let c = t.coeff.clone();
                    p = axpy(self.ord, &p[start..], &g.v.0, &q, &c).0;
                    start = 0;
                }
                None => {
                    out.push(p[start].clone());
                    start += 1;
                }
            }
        }
        Vector(out)
    }

    /// Non-redundant elements, inter-reduced and monic, in descending order
    /// of leading term.
    pub fn reduced_basis(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = Vec::new();
        for (i, e) in self.basis.iter().enumerate() {
            if e.redundant {
                continue;
            }
            let head = e.v.0[0].clone();
            let mut r = self.reduce_with(Vector(e.v.0[1..].to_vec()), Some(i));
            r.0.insert(0, head);
            r.make_monic();
            out.push(r);
        }
        out.sort_by(|a, b| self.ord.cmp_terms(&b.0[0], &a.0[0]));
        out
    }
}

/// `p - c · q · g` by a sorted merge.
pub(crate) fn axpy(ord: &ModuleOrder, p: &[VTerm], g: &[VTerm], q: &Monomial, c: &Coeff) -> Vector {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gj: Option<VTerm> = g.first().map(|t| scaled(t, q, c));
    while i < p.len() {
        let Some(gt) = gj.as_ref() else { break };
        match ord.cmp_terms(&p[i], gt) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(gj.take().expect("present"));
                j += 1;
                gj = g.get(j).map(|t| scaled(t, q, c));
            }
            Ordering::Equal => {
                let s = &p[i].coeff + &gt.coeff;
                if !s.is_zero() {
                    out.push(VTerm {
                        comp: p[i].comp,
                        mon: p[i].mon.clone(),
                        coeff: s,
                    });
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|t| scaled(t, q, c));
            }
        }
    }
    out.extend(p[i..].iter().cloned());
    if let Some(gt) = gj {
        out.push(gt);
        out.extend(g[j + 1..].iter().map(|t| scaled(t, q, c)));
    }
    Vector(out)
}

#[inline]
fn scaled(t: &VTerm, q: &Monomial, c: &Coeff) -> VTerm {
    VTerm {
        comp: t.comp,
        mon: t.mon.mul(q),
        coeff: -(&t.coeff * c),
    }
}
