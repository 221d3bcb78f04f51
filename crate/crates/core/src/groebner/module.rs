use std::fmt;
use std::sync::Arc;

use crate::algebra::{poly::same_ring, Polynomial, Ring};
use crate::error::{Error, Result};

/// Element of a graded free module `⊕ S(-shifts[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    pub components: Vec<Polynomial>,
    pub shifts: Vec<i64>,
}

impl ModuleElement {
    pub fn new(components: Vec<Polynomial>, shifts: Vec<i64>) -> Result<Self> {
        if components.len() != shifts.len() {
            return Err(Error::Input("component and shift counts differ".into()));
        }
        Ok(ModuleElement { components, shifts })
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Degree of a homogeneous element; `None` for zero or inhomogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut deg = None;
        for (p, s) in self.components.iter().zip(&self.shifts) {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree()? + s;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }
}

/// A homogeneous map of graded free modules `⊕ S(-source[j]) → ⊕ S(-target[i])`,
/// stored by columns.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    target: Vec<i64>,
    source: Vec<i64>,
    columns: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    /// Checks that every nonzero entry `(i, j)` is homogeneous of degree
    /// `source[j] - target[i]`.
    pub fn new(
        ring: &Arc<Ring>,
        target: Vec<i64>,
        source: Vec<i64>,
        columns: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if columns.len() != source.len() {
            return Err(Error::Input(format!(
                "{} columns for a source of rank {}",
                columns.len(),
                source.len()
            )));
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != target.len() {
                return Err(Error::Input(format!(
                    "column {j} has {} entries, expected {}",
                    col.len(),
                    target.len()
                )));
            }
            for (i, p) in col.iter().enumerate() {
                if !same_ring(p.ring(), ring) {
                    return Err(Error::Input(
                        "matrix entries live in different rings".into(),
                    ));
                }
                if p.is_zero() {
                    continue;
                }
                if !p.is_homogeneous() || p.degree() != Some(source[j] - target[i]) {
                    return Err(Error::Input(format!(
                        "entry ({i}, {j}) = {p} is not homogeneous of degree {}",
                        source[j] - target[i]
                    )));
                }
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            target,
            source,
            columns,
        })
    }

    /// One row whose entries are the given homogeneous polynomials, target
    /// degree 0.
    pub fn row(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<Self> {
        let mut source = Vec::with_capacity(gens.len());
        for g in gens {
            if g.is_zero() || !g.is_homogeneous() {
                return Err(Error::Input(format!(
                    "{g} is not a nonzero homogeneous polynomial"
                )));
            }
            source.push(g.degree().expect("nonzero"));
        }
        let cols = gens.iter().map(|g| vec![g.clone()]).collect();
        PolyMatrix::new(ring, vec![0], source, cols)
    }

    /// Infers the source degrees from the columns, which must all be
    /// nonzero.
    pub fn from_columns(
        ring: &Arc<Ring>,
        target: Vec<i64>,
        columns: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let mut source = Vec::with_capacity(columns.len());
        for (j, col) in columns.iter().enumerate() {
            let e = ModuleElement::new(col.clone(), target.clone())?;
            match e.degree() {
                Some(d) => source.push(d),
                None => {
                    return Err(Error::Input(format!(
                        "column {j} is zero or not homogeneous"
                    )))
                }
            }
        }
        PolyMatrix::new(ring, target, source, columns)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.target.len()
    }

    pub fn ncols(&self) -> usize {
        self.source.len()
    }

    pub fn target_degrees(&self) -> &[i64] {
        &self.target
    }

    pub fn source_degrees(&self) -> &[i64] {
        &self.source
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.columns[j][i]
    }

    pub fn column(&self, j: usize) -> ModuleElement {
        ModuleElement {
            components: self.columns[j].clone(),
            shifts: self.target.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().flatten().all(Polynomial::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.source != other.target {
            return Err(Error::Input(
                "matrix shapes or degrees do not compose".into(),
            ));
        }
        let mut cols = Vec::with_capacity(other.ncols());
        for ocol in &other.columns {
            let mut col = vec![Polynomial::zero(&self.ring); self.nrows()];
            for (k, c) in ocol.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (i, slot) in col.iter_mut().enumerate() {
                    let a = &self.columns[k][i];
                    if !a.is_zero() {
                        *slot = slot.add(&a.mul(c)?)?;
                    }
                }
            }
            cols.push(col);
        }
        PolyMatrix::new(&self.ring, self.target.clone(), other.source.clone(), cols)
    }

    /// Every entry of degree zero is zero, i.e. no unit entries.
    pub fn is_minimal(&self) -> bool {
        self.columns
            .iter()
            .flatten()
            .all(|p| p.is_zero() || p.degree() != Some(0))
    }

    /// The ideal of entries, without duplicates, in column-major order.
    pub fn entries(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = Vec::new();
        for p in self.columns.iter().flatten() {
            if !p.is_zero() && !out.contains(p) {
                out.push(p.clone());
            }
        }
        out
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows() {
            let row: Vec<String> = self.columns.iter().map(|c| c[i].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
