//! The ordered subset `S`, its meet/join closures, and the 0/1 and Möbius
//! matrices attached to them.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::order::{stable_linear_extension, Mode, OrderBackend};
use crate::scalar::Scalar;

/// Distinct elements `x_1, ..., x_n` listed so that `x_i <= x_j` implies `i <= j`.
#[derive(Clone, Debug)]
pub struct SubsetSelection<O: OrderBackend> {
    backend: O,
    members: Vec<O::Elem>,
}

fn check_ordered<O: OrderBackend>(backend: &O, items: &[O::Elem], what: &str) -> Result<()> {
    if items.is_empty() {
        return Err(Error::InvalidSelection(format!("{what} is empty")));
    }
    let mut seen = HashSet::new();
    for x in items {
        if !backend.contains(x) {
            return Err(Error::UnknownElement(format!("{x:?}")));
        }
        if !seen.insert(x) {
            return Err(Error::InvalidSelection(format!("{what} repeats `{}`", backend.label(x))));
        }
    }
    for (i, a) in items.iter().enumerate() {
        for b in &items[..i] {
            if backend.lt(a, b) {
                return Err(Error::InvalidSelection(format!(
                    "{what} lists `{}` after `{}` although it lies below it",
                    backend.label(a),
                    backend.label(b)
                )));
            }
        }
    }
    Ok(())
}

impl<O: OrderBackend> SubsetSelection<O> {
    /// Takes `members` as given; they must already respect the order.
    pub fn new(backend: O, members: Vec<O::Elem>) -> Result<Self> {
        check_ordered(&backend, &members, "selection")?;
        Ok(SubsetSelection { backend, members })
    }

    /// Sorts `members` into a linear extension first (stable by input position).
    pub fn sorted(backend: O, members: Vec<O::Elem>) -> Result<Self> {
        let members = stable_linear_extension(&backend, &members);
        Self::new(backend, members)
    }

    pub fn backend(&self) -> &O {
        &self.backend
    }

    pub fn members(&self) -> &[O::Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|x| self.backend.label(x)).collect()
    }

    /// The minimal closure: all `x_i ∧ x_j` (or `x_i ∨ x_j`), sorted into a
    /// linear extension. Members of `S` count as appearing first, in their
    /// given order, followed by new elements in row-major pair order, so a
    /// closed `S` comes back unchanged.
    pub fn closure_set(&self, mode: Mode) -> Result<ClosureSet<'_, O>> {
        let mut seen: HashSet<O::Elem> = self.members.iter().cloned().collect();
        let mut items = self.members.clone();
        for a in &self.members {
            for b in &self.members {
                let c = self.backend.combine(mode, a, b)?;
                if seen.insert(c.clone()) {
                    items.push(c);
                }
            }
        }
        let elements = stable_linear_extension(&self.backend, &items);
        Ok(ClosureSet { selection: self, mode, elements })
    }

    pub fn is_closed(&self, mode: Mode) -> Result<bool> {
        Ok(self.closure_set(mode)?.len() == self.len())
    }

    /// `S` itself as a closure set; fails with `NotClosed` unless `S` is closed.
    pub fn as_closure(&self, mode: Mode) -> Result<ClosureSet<'_, O>> {
        if !self.is_closed(mode)? {
            return Err(Error::NotClosed(mode.name()));
        }
        Ok(ClosureSet { selection: self, mode, elements: self.members.clone() })
    }

    /// A caller-chosen closure set, checked for admissibility: ordered,
    /// distinct, and containing every pairwise meet (join) of `S`.
    pub fn closure_with(&self, mode: Mode, elements: Vec<O::Elem>) -> Result<ClosureSet<'_, O>> {
        check_ordered(&self.backend, &elements, "closure set")
            .map_err(|e| Error::NotAdmissible(e.to_string()))?;
        let present: HashSet<&O::Elem> = elements.iter().collect();
        for a in &self.members {
            for b in &self.members {
                let c = self.backend.combine(mode, a, b)?;
                if !present.contains(&c) {
                    return Err(Error::NotAdmissible(format!(
                        "missing {} of `{}` and `{}`",
                        mode.name(),
                        self.backend.label(a),
                        self.backend.label(b)
                    )));
                }
            }
        }
        Ok(ClosureSet { selection: self, mode, elements })
    }
}

/// An admissible `D` (meet mode) or `D'` (join mode) for a selection.
#[derive(Clone, Debug)]
pub struct ClosureSet<'s, O: OrderBackend> {
    selection: &'s SubsetSelection<O>,
    mode: Mode,
    elements: Vec<O::Elem>,
}

impl<'s, O: OrderBackend> ClosureSet<'s, O> {
    pub fn selection(&self) -> &'s SubsetSelection<O> {
        self.selection
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn elements(&self) -> &[O::Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        let b = self.selection.backend();
        self.elements.iter().map(|x| b.label(x)).collect()
    }

    /// `n x m` 0/1 matrix: `d_j <= x_i` in meet mode, `x_i <= d_j` in join mode.
    pub fn incidence_matrix(&self) -> Matrix {
        let b = self.selection.backend();
        let s = self.selection.members();
        Matrix::from_fn(s.len(), self.len(), |i, j| {
            let hit = match self.mode {
                Mode::Meet => b.leq(&self.elements[j], &s[i]),
                Mode::Join => b.leq(&s[i], &self.elements[j]),
            };
            if hit { Scalar::one() } else { Scalar::zero() }
        })
        .expect("selection and closure are non-empty")
    }

    /// `zeta(i, j) = 1` iff `d_i <= d_j`.
    pub fn zeta_matrix(&self) -> Matrix {
        let b = self.selection.backend();
        let d = &self.elements;
        Matrix::from_fn(d.len(), d.len(), |i, j| {
            if b.leq(&d[i], &d[j]) { Scalar::one() } else { Scalar::zero() }
        })
        .expect("closure is non-empty")
    }

    /// `mu_D(d_i, d_j)` via `mu(x,x) = 1`, `mu(x,y) = -sum_{x <= z < y} mu(x,z)`.
    pub fn mobius_matrix(&self) -> Matrix {
        mobius_of(self.selection.backend(), &self.elements)
    }
}

/// Möbius function of `items` (already in a linear extension) as an
/// upper-triangular integer matrix.
pub fn mobius_of<O: OrderBackend>(backend: &O, items: &[O::Elem]) -> Matrix {
    let m = items.len();
    let mut mu = vec![0i64; m * m];
    for i in 0..m {
        mu[i * m + i] = 1;
        for j in i + 1..m {
            if !backend.leq(&items[i], &items[j]) {
                continue;
            }
            let s: i64 = (i..j).filter(|&k| backend.leq(&items[k], &items[j])).map(|k| mu[i * m + k]).sum();
            mu[i * m + j] = -s;
        }
    }
    Matrix::from_fn(m, m, |i, j| Scalar::from_int(mu[i * m + j])).expect("non-empty item list")
}
