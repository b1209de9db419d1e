use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The functions `f_1, ..., f_n`, one value table per matrix row.
///
/// Tables are partial: a lookup outside a row's table is a
/// [`Error::MissingValue`], never an implicit zero.
#[derive(Clone, Debug)]
pub struct FunctionFamily<E> {
    rows: Vec<HashMap<E, Scalar>>,
}

impl<E: Clone + Eq + Hash> FunctionFamily<E> {
    pub fn from_rows(rows: Vec<HashMap<E, Scalar>>) -> Self {
        FunctionFamily { rows }
    }

    /// Row `i` maps `domain[k]` to `values[i][k]`.
    pub fn from_table(domain: &[E], values: Vec<Vec<Scalar>>) -> Result<Self> {
        let rows = values
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != domain.len() {
                    return Err(Error::Dimension(format!(
                        "f{} has {} values for {} elements",
                        i + 1,
                        row.len(),
                        domain.len()
                    )));
                }
                Ok(domain.iter().cloned().zip(row).collect())
            })
            .collect::<Result<_>>()?;
        Ok(FunctionFamily { rows })
    }

    /// Tabulates `f(i, e)` for `i in 0..n` over `domain`.
    pub fn from_fn(n: usize, domain: &[E], mut f: impl FnMut(usize, &E) -> Scalar) -> Self {
        let rows = (0..n).map(|i| domain.iter().map(|e| (e.clone(), f(i, e))).collect()).collect();
        FunctionFamily { rows }
    }

    /// The same function on every row.
    pub fn uniform(n: usize, domain: &[E], mut f: impl FnMut(&E) -> Scalar) -> Self {
        let row: HashMap<E, Scalar> = domain.iter().map(|e| (e.clone(), f(e))).collect();
        FunctionFamily { rows: vec![row; n] }
    }

    pub fn get(&self, row: usize, e: &E) -> Option<&Scalar> {
        self.rows.get(row)?.get(e)
    }

    /// `f_row(e)`; `label` names the element in the error.
    pub fn value(&self, row: usize, e: &E, label: impl FnOnce(&E) -> String) -> Result<&Scalar> {
        self.get(row, e).ok_or_else(|| Error::MissingValue { row: row + 1, element: label(e) })
    }

    pub fn set(&mut self, row: usize, e: E, v: Scalar) {
        self.rows[row].insert(e, v);
    }

}

impl<E> FunctionFamily<E> {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[HashMap<E, Scalar>] {
        &self.rows
    }
}
