//! Order backends: something that can compare elements and form their
//! meets and joins.

mod divisor;
mod poset;

use std::fmt::Debug;
use std::hash::Hash;

pub use divisor::DivisorLattice;
pub use poset::{FinitePoset, PosetElem};

use crate::error::Result;

/// Which lattice operation a matrix is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Meet,
    Join,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Meet => "meet",
            Mode::Join => "join",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "meet" => Ok(Mode::Meet),
            "join" => Ok(Mode::Join),
            _ => Err(crate::Error::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

/// A partial order with (possibly partial) meet and join operations.
///
/// The ambient structure need not be a lattice: `meet`/`join` fail with
/// `NoMeet`/`NoJoin` for pairs lacking a greatest lower (least upper) bound.
pub trait OrderBackend {
    type Elem: Clone + Eq + Hash + Debug;

    fn contains(&self, a: &Self::Elem) -> bool;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    /// Human-readable identifier of an element.
    fn label(&self, a: &Self::Elem) -> String;

    /// Inverse of [`label`](Self::label); rejects identifiers outside the universe.
    fn parse_element(&self, s: &str) -> Result<Self::Elem>;

    fn lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a != b && self.leq(a, b)
    }

    fn combine(&self, mode: Mode, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        match mode {
            Mode::Meet => self.meet(a, b),
            Mode::Join => self.join(a, b),
        }
    }
}

impl<T: OrderBackend + ?Sized> OrderBackend for &T {
    type Elem = T::Elem;
    fn contains(&self, a: &Self::Elem) -> bool {
        (**self).contains(a)
    }
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).leq(a, b)
    }
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).meet(a, b)
    }
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        (**self).join(a, b)
    }
    fn label(&self, a: &Self::Elem) -> String {
        (**self).label(a)
    }
    fn parse_element(&self, s: &str) -> Result<Self::Elem> {
        (**self).parse_element(s)
    }
}

/// Stable topological sort of `items` under `backend`'s order: among the
/// currently minimal items, the one appearing first in `items` goes next.
pub(crate) fn stable_linear_extension<O: OrderBackend>(backend: &O, items: &[O::Elem]) -> Vec<O::Elem> {
    let n = items.len();
    let mut placed = vec![false; n];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let next = (0..n)
            .find(|&i| {
                !placed[i] && (0..n).all(|j| placed[j] || j == i || !backend.lt(&items[j], &items[i]))
            })
            .expect("partial order has a minimal element");
        placed[next] = true;
        out.push(items[next].clone());
    }
    out
}
