use std::collections::{BinaryHeap, HashMap, HashSet};
use std::cmp::Reverse;

use super::OrderBackend;
use crate::error::{Error, Result};

/// Handle to an element of a [`FinitePoset`]; the index is the element's
/// position in the poset's linear extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetElem(pub usize);

/// A finite poset given by its cover relation.
///
/// Elements are stored in a linear extension of the order, so
/// `leq(a, b)` with `a != b` implies `a.0 < b.0`. The extension keeps the
/// input order wherever the input order is already compatible.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
    meets: Vec<Option<usize>>,
    joins: Vec<Option<usize>>,
}

impl FinitePoset {
    /// Builds a poset over `elements` from `lower < upper` pairs.
    ///
    /// The pairs need not be a transitive reduction; [`covers`](Self::covers)
    /// always reports the Hasse diagram.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateElement(e.as_ref().to_string()));
            }
        }
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidSelection("poset has no elements".into()));
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.to_string()));
        let mut seen = HashSet::new();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for (a, b) in covers {
            let (ia, ib) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if !seen.insert((ia, ib)) {
                return Err(Error::DuplicateCover(a.as_ref().to_string(), b.as_ref().to_string()));
            }
            if ia == ib {
                return Err(Error::Cycle(a.as_ref().to_string()));
            }
            succ[ia].push(ib);
            indeg[ib] += 1;
        }

        // Kahn's algorithm, always releasing the earliest input element first.
        let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).expect("some element left");
            return Err(Error::Cycle(elements[stuck].as_ref().to_string()));
        }

        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let names: Vec<String> = order.iter().map(|&v| elements[v].as_ref().to_string()).collect();
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

        // Down-sets in topological order: leq[a*n + b] iff a <= b.
        let mut leq = vec![false; n * n];
        let mut preds = vec![Vec::new(); n];
        for (v, ws) in succ.iter().enumerate() {
            for &w in ws {
                preds[pos[w]].push(pos[v]);
            }
        }
        for b in 0..n {
            leq[b * n + b] = true;
            for &p in &preds[b] {
                for a in 0..=p {
                    if leq[a * n + p] {
                        leq[a * n + b] = true;
                    }
                }
            }
        }

        let lt = |a: usize, b: usize| a != b && leq[a * n + b];
        let mut hasse = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if lt(a, b) && !(a + 1..b).any(|c| lt(a, c) && lt(c, b)) {
                    hasse.push((a, b));
                }
            }
        }

        let mut poset = FinitePoset { names, index, leq, covers: hasse, meets: Vec::new(), joins: Vec::new() };
        poset.meets = (0..n * n).map(|k| poset.glb(k / n, k % n)).collect();
        poset.joins = (0..n * n).map(|k| poset.lub(k / n, k % n)).collect();
        Ok(poset)
    }

    /// Builds a poset whose element set is everything mentioned in `covers`,
    /// in order of first appearance.
    pub fn from_cover_pairs<S: AsRef<str>>(covers: &[(S, S)]) -> Result<Self> {
        let mut elements: Vec<&str> = Vec::new();
        for (a, b) in covers {
            for s in [a.as_ref(), b.as_ref()] {
                if !elements.contains(&s) {
                    elements.push(s);
                }
            }
        }
        let pairs: Vec<(&str, &str)> = covers.iter().map(|(a, b)| (a.as_ref(), b.as_ref())).collect();
        Self::from_covers(&elements, &pairs)
    }

    fn glb(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let lower: Vec<usize> = (0..n).filter(|&z| self.leq[z * n + a] && self.leq[z * n + b]).collect();
        lower.iter().copied().find(|&g| lower.iter().all(|&z| self.leq[z * n + g]))
    }

    fn lub(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let upper: Vec<usize> = (0..n).filter(|&z| self.leq[a * n + z] && self.leq[b * n + z]).collect();
        upper.iter().copied().find(|&g| upper.iter().all(|&z| self.leq[g * n + z]))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All elements in linear-extension order.
    pub fn elements(&self) -> impl Iterator<Item = PosetElem> + '_ {
        (0..self.len()).map(PosetElem)
    }

    pub fn name(&self, e: PosetElem) -> &str {
        &self.names[e.0]
    }

    pub fn element(&self, name: &str) -> Option<PosetElem> {
        self.index.get(name).copied().map(PosetElem)
    }

    /// Hasse diagram edges `(lower, upper)`.
    pub fn covers(&self) -> impl Iterator<Item = (PosetElem, PosetElem)> + '_ {
        self.covers.iter().map(|&(a, b)| (PosetElem(a), PosetElem(b)))
    }

    /// Number of pairs `(a, b)` with `a <= b`, reflexive pairs included.
    pub fn comparable_pairs(&self) -> usize {
        self.leq.iter().filter(|&&x| x).count()
    }

    /// True if every pair has both a meet and a join.
    pub fn is_lattice(&self) -> bool {
        self.meets.iter().chain(&self.joins).all(Option::is_some)
    }
}

impl OrderBackend for FinitePoset {
    type Elem = PosetElem;

    fn contains(&self, a: &PosetElem) -> bool {
        a.0 < self.len()
    }

    fn leq(&self, a: &PosetElem, b: &PosetElem) -> bool {
        self.leq[a.0 * self.len() + b.0]
    }

    fn meet(&self, a: &PosetElem, b: &PosetElem) -> Result<PosetElem> {
        self.meets[a.0 * self.len() + b.0]
            .map(PosetElem)
            .ok_or_else(|| Error::NoMeet(self.label(a), self.label(b)))
    }

    fn join(&self, a: &PosetElem, b: &PosetElem) -> Result<PosetElem> {
        self.joins[a.0 * self.len() + b.0]
            .map(PosetElem)
            .ok_or_else(|| Error::NoJoin(self.label(a), self.label(b)))
    }

    fn label(&self, a: &PosetElem) -> String {
        self.names.get(a.0).cloned().unwrap_or_else(|| format!("#{}", a.0))
    }

    fn parse_element(&self, s: &str) -> Result<PosetElem> {
        self.element(s).ok_or_else(|| Error::UnknownElement(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn n5() -> FinitePoset {
        FinitePoset::from_covers(
            &["x1", "x2", "x3", "x4", "x5"],
            &[("x1", "x2"), ("x1", "x3"), ("x3", "x4"), ("x4", "x5"), ("x2", "x5")],
        )
        .unwrap()
    }

    #[test]
    fn n5_structure() {
        let p = n5();
        // 8 strict pairs + 5 reflexive, from a reachability scan of the diagram
        assert_eq!(p.comparable_pairs(), 13);
        assert!(p.is_lattice());
        let e = |s| p.element(s).unwrap();
        assert_eq!(p.meet(&e("x2"), &e("x3")).unwrap(), e("x1"));
        assert_eq!(p.join(&e("x2"), &e("x3")).unwrap(), e("x5"));
        assert_eq!(p.meet(&e("x2"), &e("x4")).unwrap(), e("x1"));
        assert_eq!(p.meet(&e("x4"), &e("x4")).unwrap(), e("x4"));
        assert_eq!(p.covers().count(), 5);
        // input order already a linear extension, so it is kept
        let names: Vec<_> = p.elements().map(|x| p.name(x).to_string()).collect();
        assert_eq!(names, ["x1", "x2", "x3", "x4", "x5"]);
    }

    #[test]
    fn single_element() {
        let p = FinitePoset::from_covers::<&str>(&["a"], &[]).unwrap();
        assert_eq!(p.comparable_pairs(), 1);
        let a = p.element("a").unwrap();
        assert!(p.leq(&a, &a));
        assert_eq!(p.meet(&a, &a).unwrap(), a);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            FinitePoset::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::Cycle(_))
        ));
        assert!(matches!(FinitePoset::from_covers(&["a"], &[("a", "a")]), Err(Error::Cycle(_))));
        assert!(matches!(
            FinitePoset::from_covers(&["a", "b"], &[("a", "b"), ("a", "b")]),
            Err(Error::DuplicateCover(..))
        ));
        assert!(matches!(
            FinitePoset::from_covers(&["a"], &[("a", "z")]),
            Err(Error::UnknownElement(_))
        ));
        assert!(matches!(FinitePoset::from_covers(&["a", "a"], &[]), Err(Error::DuplicateElement(_))));
    }

    #[test]
    fn reorders_into_linear_extension() {
        let p = FinitePoset::from_covers(&["top", "mid", "bot", "side"], &[("mid", "top"), ("bot", "mid")]).unwrap();
        let names: Vec<_> = p.elements().map(|x| p.name(x)).collect();
        // `mid` and `top` precede `side` in the input, so they are released first
        assert_eq!(names, ["bot", "mid", "top", "side"]);
    }

    #[test]
    fn missing_meet_is_reported() {
        // two minimal elements below a common top: no meet
        let p = FinitePoset::from_cover_pairs(&[("a", "t"), ("b", "t")]).unwrap();
        let (a, b) = (p.element("a").unwrap(), p.element("b").unwrap());
        assert!(matches!(p.meet(&a, &b), Err(Error::NoMeet(..))));
        assert_eq!(p.join(&a, &b).unwrap(), p.element("t").unwrap());
        assert!(!p.is_lattice());
    }

    #[test]
    fn transitive_input_edges_are_reduced() {
        let p = FinitePoset::from_cover_pairs(&[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(p.covers().count(), 2);
        assert_eq!(p.comparable_pairs(), 6);
    }
}
