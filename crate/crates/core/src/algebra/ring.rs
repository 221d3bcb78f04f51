use std::collections::HashSet;
use std::sync::Arc;

use super::order::{OrderKind, TermOrder};
use crate::error::{Error, Result};

/// Ambient polynomial ring `Q[x_1, ..., x_n]`: variable names, term order with
/// Z-grading weights, and an optional Z^d multigrading given by the columns
/// of a d × n integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    order: TermOrder,
    grading: Option<Vec<Vec<i64>>>,
}

impl Ring {
    pub fn new(vars: Vec<String>, order: TermOrder) -> Result<Arc<Ring>> {
        if order.nvars() != vars.len() {
            return Err(Error::Input(format!(
                "{} variables but {} weights",
                vars.len(),
                order.nvars()
            )));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::Input(format!("invalid variable name {v:?}")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::Input(format!("duplicate variable {v}")));
            }
        }
        if order.weights.contains(&0) {
            return Err(Error::Input("grading weights must be positive".into()));
        }
        if let OrderKind::Elimination { block } = order.kind {
            if block > vars.len() {
                return Err(Error::Input(
                    "elimination block larger than the ring".into(),
                ));
            }
        }
        Ok(Arc::new(Ring {
            vars,
            order,
            grading: None,
        }))
    }

    /// Standard-graded ring in the given variables under degrevlex.
    pub fn standard<S: AsRef<str>>(vars: &[S]) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let n = vars.len();
        Ring::new(vars, TermOrder::degrevlex(n))
    }

    /// `x1, ..., xn` under degrevlex.
    pub fn numbered(prefix: &str, n: usize) -> Arc<Ring> {
        let vars = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Ring::new(vars, TermOrder::degrevlex(n)).expect("numbered variables are valid")
    }

    pub fn with_grading(&self, columns: Vec<Vec<i64>>) -> Result<Arc<Ring>> {
        if columns.len() != self.nvars() {
            return Err(Error::Input(format!(
                "grading matrix has {} columns for {} variables",
                columns.len(),
                self.nvars()
            )));
        }
        let d = columns.first().map_or(0, |c| c.len());
        if columns.iter().any(|c| c.len() != d) {
            return Err(Error::Input("ragged grading matrix".into()));
        }
        Ok(Arc::new(Ring {
            grading: Some(columns),
            ..self.clone()
        }))
    }

    pub fn with_order(&self, order: TermOrder) -> Result<Arc<Ring>> {
        let mut r = Ring::new(self.vars.clone(), order)?;
        if let Some(g) = &self.grading {
            r = r.with_grading(g.clone())?;
        }
        Ok(r)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.order.weights
    }

    pub fn is_standard_graded(&self) -> bool {
        self.order.weights.iter().all(|&w| w == 1)
    }

    pub fn grading(&self) -> Option<&[Vec<i64>]> {
        self.grading.as_deref()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
