//! Row-adjusted meet and join matrices: the `Ψ` tables, the factorization
//! `M = Υ Eᵀ`, and the closed-form rank, determinant and inverse results
//! that hold when `S` is meet (join) closed.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::family::FunctionFamily;
use crate::matrix::Matrix;
use crate::order::{Mode, OrderBackend};
use crate::scalar::Scalar;
use crate::selection::{ClosureSet, SubsetSelection};

/// `Ψ_{D,f_i}(d_j)` (meet mode) or `Ψ'_{D',f_i}(d'_j)` (join mode) as an
/// `n x m` grid. This grid is the matrix `Ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiTable {
    pub mode: Mode,
    pub grid: Matrix,
}

impl PsiTable {
    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.grid[(row, col)]
    }
}

/// The pieces of `M = Υ Eᵀ` with `Υ = E ∘ Ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub e: Matrix,
    pub xi: Matrix,
    pub upsilon: Matrix,
    pub product: Matrix,
}

/// Output of [`rank_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankReport {
    /// Number of rows whose diagonal `Ψ` vanishes.
    pub k: usize,
    pub lower: usize,
    pub upper: usize,
    /// Rank from elimination.
    pub exact: usize,
}

/// `θ_kj` (lower triangular, meet mode) or `θ'_kj` (upper triangular, join
/// mode). Equal to `Υ⁻¹` (resp. `Υ'⁻¹`) on `D = S`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaTable {
    pub mode: Mode,
    pub grid: Matrix,
}

fn check_rows<E>(n: usize, fs: &FunctionFamily<E>) -> Result<()> {
    if fs.len() != n {
        return Err(Error::Dimension(format!("{} functions for {} rows", fs.len(), n)));
    }
    Ok(())
}

fn f_at<'f, O: OrderBackend>(
    backend: &O,
    fs: &'f FunctionFamily<O::Elem>,
    row: usize,
    e: &O::Elem,
) -> Result<&'f Scalar> {
    fs.value(row, e, |e| backend.label(e))
}

/// `Ψ` over `D` by the inductive definition: subtract the already-known
/// values below (meet) or above (join) each element.
pub fn psi_table<O: OrderBackend>(d: &ClosureSet<'_, O>, fs: &FunctionFamily<O::Elem>) -> Result<PsiTable> {
    let s = d.selection();
    check_rows(s.len(), fs)?;
    let b = s.backend();
    let de = d.elements();
    let m = de.len();
    let mut grid = Matrix::zeros(s.len(), m)?;
    for i in 0..s.len() {
        let order: Box<dyn Iterator<Item = usize>> = match d.mode() {
            Mode::Meet => Box::new(0..m),
            Mode::Join => Box::new((0..m).rev()),
        };
        for k in order {
            let mut v = f_at(b, fs, i, &de[k])?.clone();
            let done: Box<dyn Iterator<Item = usize>> = match d.mode() {
                Mode::Meet => Box::new((0..k).filter(|&u| b.lt(&de[u], &de[k]))),
                Mode::Join => Box::new((k + 1..m).filter(|&u| b.lt(&de[k], &de[u]))),
            };
            for u in done {
                v -= &grid[(i, u)];
            }
            grid[(i, k)] = v;
        }
    }
    Ok(PsiTable { mode: d.mode(), grid })
}

/// `Ψ` over `D` by Möbius inversion:
/// `Σ_{d_v <= d_k} f(d_v) μ_D(d_v, d_k)` in meet mode,
/// `Σ_{d_k <= d_v} f(d_v) μ_D(d_k, d_v)` in join mode.
pub fn psi_table_mobius<O: OrderBackend>(
    d: &ClosureSet<'_, O>,
    fs: &FunctionFamily<O::Elem>,
) -> Result<PsiTable> {
    let s = d.selection();
    check_rows(s.len(), fs)?;
    let b = s.backend();
    let de = d.elements();
    let mu = d.mobius_matrix();
    let m = de.len();
    let grid = Matrix::try_from_fn(s.len(), m, |i, k| {
        let mut acc = Scalar::zero();
        for v in 0..m {
            let w = match d.mode() {
                Mode::Meet => &mu[(v, k)],
                Mode::Join => &mu[(k, v)],
            };
            if !w.is_zero() {
                acc += &(f_at(b, fs, i, &de[v])? * w);
            }
        }
        Ok(acc)
    })?;
    Ok(PsiTable { mode: d.mode(), grid })
}

/// Checks `f_i(d_k) = Σ_{d_v <= d_k} Ψ(d_v)` (meet) or
/// `f_i(d_k) = Σ_{d_k <= d_v} Ψ'(d_v)` (join) for every row and element.
pub fn check_psi_reconstruction<O: OrderBackend>(
    d: &ClosureSet<'_, O>,
    fs: &FunctionFamily<O::Elem>,
    psi: &PsiTable,
) -> Result<()> {
    let s = d.selection();
    let b = s.backend();
    let de = d.elements();
    for i in 0..s.len() {
        for dk in de {
            let sum: Scalar = de
                .iter()
                .enumerate()
                .filter(|(_, dv)| match d.mode() {
                    Mode::Meet => b.leq(dv, dk),
                    Mode::Join => b.leq(dk, dv),
                })
                .map(|(v, _)| psi.get(i, v).clone())
                .sum();
            let f = f_at(b, fs, i, dk)?;
            if &sum != f {
                return Err(Error::Mismatch(format!(
                    "psi of f{} does not sum back to f at `{}`: {} != {}",
                    i + 1,
                    b.label(dk),
                    sum,
                    f
                )));
            }
        }
    }
    Ok(())
}

/// The `n x n` matrix with entries `f_i(x_i ∧ x_j)` or `f_i(x_i ∨ x_j)`.
pub fn build_matrix<O: OrderBackend>(
    s: &SubsetSelection<O>,
    fs: &FunctionFamily<O::Elem>,
    mode: Mode,
) -> Result<Matrix> {
    check_rows(s.len(), fs)?;
    let b = s.backend();
    let x = s.members();
    Matrix::try_from_fn(x.len(), x.len(), |i, j| {
        let c = b.combine(mode, &x[i], &x[j])?;
        f_at(b, fs, i, &c).cloned()
    })
}

/// [`build_matrix`], transposed when `column_adjusted` is set.
pub fn build_adjusted<O: OrderBackend>(
    s: &SubsetSelection<O>,
    fs: &FunctionFamily<O::Elem>,
    mode: Mode,
    column_adjusted: bool,
) -> Result<Matrix> {
    let m = build_matrix(s, fs, mode)?;
    Ok(if column_adjusted { m.transpose() } else { m })
}

/// `E`, `Ξ`, `Υ = E ∘ Ξ` and `Υ Eᵀ` for any admissible `D`.
pub fn factorize<O: OrderBackend>(d: &ClosureSet<'_, O>, fs: &FunctionFamily<O::Elem>) -> Result<Factorization> {
    let psi = psi_table(d, fs)?;
    let e = d.incidence_matrix();
    let upsilon = e.hadamard(&psi.grid)?;
    let product = upsilon.multiply(&e.transpose())?;
    Ok(Factorization { e, xi: psi.grid, upsilon, product })
}

/// Recovers `Υ` from a row-adjusted matrix on a closed `S` by multiplying
/// with the Möbius matrix of `S` (transposed in join mode). No elimination.
pub fn psi_from_matrix<O: OrderBackend>(m: &Matrix, s: &SubsetSelection<O>, mode: Mode) -> Result<Matrix> {
    let d = s.as_closure(mode)?;
    if m.rows() != s.len() || m.cols() != s.len() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix for a selection of {}",
            m.rows(),
            m.cols(),
            s.len()
        )));
    }
    let mu = d.mobius_matrix();
    match mode {
        Mode::Meet => m.multiply(&mu),
        Mode::Join => m.multiply(&mu.transpose()),
    }
}

/// `Ψ_{S,f_i}(x_i)` for each `i`; requires `S` closed in `mode`.
pub fn diagonal_psi<O: OrderBackend>(
    s: &SubsetSelection<O>,
    fs: &FunctionFamily<O::Elem>,
    mode: Mode,
) -> Result<Vec<Scalar>> {
    let d = s.as_closure(mode)?;
    let psi = psi_table(&d, fs)?;
    Ok(psi.grid.diagonal().cloned().collect())
}

/// Determinant of the row-adjusted matrix on a closed `S` as
/// `Π_i Ψ_{S,f_i}(x_i)`.
pub fn theorem_det<O: OrderBackend>(
    s: &SubsetSelection<O>,
    fs: &FunctionFamily<O::Elem>,
    mode: Mode,
) -> Result<Scalar> {
    Ok(diagonal_psi(s, fs, mode)?.into_iter().product())
}

/// Rank bounds from the count `k` of vanishing diagonal `Ψ`, together with
/// the exact rank. Fails with `Mismatch` if the exact rank escapes the bounds.
pub fn rank_report<O: OrderBackend>(
    s: &SubsetSelection<O>,
    fs: &FunctionFamily<O::Elem>,
    mode: Mode,
) -> Result<RankReport> {
    let n = s.len();
    let diag = diagonal_psi(s, fs, mode)?;
    let m = build_matrix(s, fs, mode)?;
    let k = diag.iter().filter(|v| v.is_zero()).count();
    let (lower, upper) = if m.is_zero() {
        (0, 0)
    } else if k == 0 {
        (n, n)
    } else {
        ((n - k).max(1), n - 1)
    };
    let exact = m.rank_oracle();
    if exact < lower || exact > upper {
        return Err(Error::Mismatch(format!("rank {exact} outside [{lower}, {upper}] with k={k}")));
    }
    Ok(RankReport { k, lower, upper, exact })
}

/// Rank `n - k` of the ordinary matrix `(S)_f` (or `[S]_f`) on a closed `S`,
/// where `k` counts the zeros of `Ψ_{S,f}` on `S`. Cross-checked by elimination.
pub fn ordinary_rank<O: OrderBackend>(
    s: &SubsetSelection<O>,
    f: &std::collections::HashMap<O::Elem, Scalar>,
    mode: Mode,
) -> Result<usize> {
    let fs = FunctionFamily::from_rows(vec![f.clone(); s.len()]);
    let k = diagonal_psi(s, &fs, mode)?.iter().filter(|v| v.is_zero()).count();
    let rank = s.len() - k;
    let exact = build_matrix(s, &fs, mode)?.rank_oracle();
    if rank != exact {
        return Err(Error::Mismatch(format!("n-k = {rank} but elimination gives {exact}")));
    }
    Ok(rank)
}

/// The `θ` recursion on a closed `S`.
///
/// Meet mode: `θ_jj = 1/Ψ_j(x_j)` and for `k > j`
/// `θ_kj = -(1/Ψ_k(x_k)) Σ_{u=j}^{k-1} e_ku Ψ_k(x_u) θ_uj`.
/// Join mode runs upward: for `k < j`
/// `θ'_kj = -(1/Ψ'_k(x_k)) Σ_{u=k+1}^{j} e'_ku Ψ'_k(x_u) θ'_uj`.
pub fn theta_table<O: OrderBackend>(
    s: &SubsetSelection<O>,
    fs: &FunctionFamily<O::Elem>,
    mode: Mode,
) -> Result<ThetaTable> {
    let d = s.as_closure(mode)?;
    let psi = psi_table(&d, fs)?.grid;
    let e = d.incidence_matrix();
    let n = s.len();
    let inv_diag = (0..n)
        .map(|i| psi[(i, i)].inv().ok_or(Error::SingularPsi(i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let mut theta = Matrix::zeros(n, n)?;
    for j in 0..n {
        theta[(j, j)] = inv_diag[j].clone();
        let rows: Box<dyn Iterator<Item = usize>> = match mode {
            Mode::Meet => Box::new(j + 1..n),
            Mode::Join => Box::new((0..j).rev()),
        };
        for k in rows {
            let span = match mode {
                Mode::Meet => j..k,
                Mode::Join => k + 1..j + 1,
            };
            let mut acc = Scalar::zero();
            for u in span {
                if e[(k, u)].is_one() && !theta[(u, j)].is_zero() {
                    acc += &(&psi[(k, u)] * &theta[(u, j)]);
                }
            }
            theta[(k, j)] = -(&acc * &inv_diag[k]);
        }
    }
    Ok(ThetaTable { mode, grid: theta })
}

/// Inverse of the row-adjusted matrix on a closed `S`, assembled as
/// `b_ij = Σ_{k>=j} μ_S(x_i, x_k) θ_kj` (meet) or
/// `b'_ij = Σ_{k<=j} μ_S(x_k, x_i) θ'_kj` (join).
pub fn theorem_inverse<O: OrderBackend>(
    s: &SubsetSelection<O>,
    fs: &FunctionFamily<O::Elem>,
    mode: Mode,
) -> Result<Matrix> {
    let theta = theta_table(s, fs, mode)?.grid;
    let mu = s.as_closure(mode)?.mobius_matrix();
    let n = s.len();
    Matrix::from_fn(n, n, |i, j| {
        let ks = match mode {
            Mode::Meet => j..n,
            Mode::Join => 0..j + 1,
        };
        let mut acc = Scalar::zero();
        for k in ks {
            let w = match mode {
                Mode::Meet => &mu[(i, k)],
                Mode::Join => &mu[(k, i)],
            };
            if !w.is_zero() {
                acc += &(w * &theta[(k, j)]);
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{DivisorLattice, FinitePoset};
    use std::collections::HashMap;

    fn n5_instance(p: &FinitePoset) -> (SubsetSelection<&FinitePoset>, FunctionFamily<crate::order::PosetElem>) {
        let s = SubsetSelection::new(p, p.elements().collect()).unwrap();
        let x = s.members().to_vec();
        let ones = [(2, 2), (3, 1), (3, 3), (4, 3), (4, 4), (5, 4), (5, 5)];
        let fs = FunctionFamily::from_fn(5, &x, |i, e| {
            let j = e.0 + 1;
            if ones.contains(&(i + 1, j)) { Scalar::one() } else { Scalar::zero() }
        });
        (s, fs)
    }

    fn n5() -> FinitePoset {
        FinitePoset::from_covers(
            &["x1", "x2", "x3", "x4", "x5"],
            &[("x1", "x2"), ("x1", "x3"), ("x3", "x4"), ("x4", "x5"), ("x2", "x5")],
        )
        .unwrap()
    }

    fn ident(n: usize, domain: &[u64]) -> FunctionFamily<u64> {
        FunctionFamily::uniform(n, domain, |&e| Scalar::from(e))
    }

    #[test]
    fn n5_worked_example() {
        let p = n5();
        let (s, fs) = n5_instance(&p);
        let m = build_matrix(&s, &fs, Mode::Meet).unwrap();
        assert_eq!(
            m,
            Matrix::from_ints(&[
                [0, 0, 0, 0, 0],
                [0, 1, 0, 0, 1],
                [1, 1, 1, 1, 1],
                [0, 0, 1, 1, 1],
                [0, 0, 0, 1, 1],
            ])
        );
        let diag = diagonal_psi(&s, &fs, Mode::Meet).unwrap();
        assert_eq!(diag, [0, 1, 0, 0, 0].map(Scalar::from_int));
        let d = s.closure_set(Mode::Meet).unwrap();
        assert_eq!(factorize(&d, &fs).unwrap().product, m);
        let ups = psi_from_matrix(&m, &s, Mode::Meet).unwrap();
        assert_eq!(ups.diagonal().cloned().collect::<Vec<_>>(), diag);
        assert_eq!(theorem_det(&s, &fs, Mode::Meet).unwrap(), Scalar::zero());
        assert_eq!(rank_report(&s, &fs, Mode::Meet).unwrap(), RankReport { k: 4, lower: 1, upper: 4, exact: 4 });
        assert_eq!(theorem_inverse(&s, &fs, Mode::Meet), Err(Error::SingularPsi(1)));
    }

    #[test]
    fn single_element_everything_is_scalar() {
        let s = SubsetSelection::new(DivisorLattice, vec![5]).unwrap();
        let fs = FunctionFamily::uniform(1, &[5], |_| Scalar::from_int(7));
        for mode in [Mode::Meet, Mode::Join] {
            let d = s.closure_set(mode).unwrap();
            let psi = psi_table(&d, &fs).unwrap();
            assert_eq!(psi.get(0, 0), &Scalar::from_int(7));
            let f = factorize(&d, &fs).unwrap();
            assert_eq!(f.e, Matrix::from_ints(&[[1]]));
            assert_eq!(f.upsilon, Matrix::from_ints(&[[7]]));
            assert_eq!(f.product, Matrix::from_ints(&[[7]]));
            assert_eq!(theorem_inverse(&s, &fs, mode).unwrap(), Matrix::from_rows(vec![vec![Scalar::ratio(1, 7)]]).unwrap());
        }
    }

    #[test]
    fn divisor_12_factorization() {
        let s = SubsetSelection::new(DivisorLattice, vec![1, 2]).unwrap();
        let fs = ident(2, &[1, 2]);
        let d = s.closure_set(Mode::Meet).unwrap();
        let f = factorize(&d, &fs).unwrap();
        assert_eq!(f.e, Matrix::from_ints(&[[1, 0], [1, 1]]));
        assert_eq!(f.upsilon, Matrix::from_ints(&[[1, 0], [1, 1]]));
        assert_eq!(f.product, Matrix::from_ints(&[[1, 1], [1, 2]]));
        let m = build_matrix(&s, &fs, Mode::Meet).unwrap();
        assert_eq!(psi_from_matrix(&m, &s, Mode::Meet).unwrap(), f.upsilon);
        assert_eq!(theorem_inverse(&s, &fs, Mode::Meet).unwrap(), Matrix::from_ints(&[[2, -1], [-1, 1]]));
        let zero = Matrix::zeros(2, 2).unwrap();
        assert_eq!(psi_from_matrix(&zero, &s, Mode::Meet).unwrap(), zero);
    }

    #[test]
    fn join_chain_2_4_8() {
        let s = SubsetSelection::new(DivisorLattice, vec![2, 4, 8]).unwrap();
        let fs = ident(3, &[2, 4, 8]);
        let m = build_matrix(&s, &fs, Mode::Join).unwrap();
        assert_eq!(m, Matrix::from_ints(&[[2, 4, 8], [4, 4, 8], [8, 8, 8]]));
        let d = s.closure_set(Mode::Join).unwrap();
        let psi = psi_table(&d, &fs).unwrap();
        // Ψ'(8)=8, Ψ'(4)=4-8, Ψ'(2)=2-(-4)-8
        assert_eq!(psi.grid.row(0), &[-2, -4, 8].map(Scalar::from_int));
        assert_eq!(psi_table_mobius(&d, &fs).unwrap(), psi);
        assert_eq!(theorem_det(&s, &fs, Mode::Join).unwrap(), Scalar::from_int(64));
        assert_eq!(m.det_oracle().unwrap(), Scalar::from_int(64));
        let inv = theorem_inverse(&s, &fs, Mode::Join).unwrap();
        assert_eq!(inv.multiply(&m).unwrap(), Matrix::identity(3).unwrap());
        assert_eq!(m.multiply(&inv).unwrap(), Matrix::identity(3).unwrap());
        let theta = theta_table(&s, &fs, Mode::Join).unwrap();
        assert!(theta.grid.is_upper_triangular());
        assert_eq!(factorize(&d, &fs).unwrap().product, m);
    }

    #[test]
    fn gcd_123() {
        let s = SubsetSelection::new(DivisorLattice, vec![1, 2, 3]).unwrap();
        let fs = ident(3, &[1, 2, 3]);
        let m = build_matrix(&s, &fs, Mode::Meet).unwrap();
        assert_eq!(m, Matrix::from_ints(&[[1, 1, 1], [1, 2, 1], [1, 1, 3]]));
        assert_eq!(theorem_det(&s, &fs, Mode::Meet).unwrap(), Scalar::from_int(2));
        let r = rank_report(&s, &fs, Mode::Meet).unwrap();
        assert_eq!((r.k, r.exact, r.lower, r.upper), (0, 3, 3, 3));
        let f: HashMap<u64, Scalar> = [1, 2, 3].into_iter().map(|e| (e, Scalar::from(e))).collect();
        assert_eq!(ordinary_rank(&s, &f, Mode::Meet).unwrap(), 3);
    }

    #[test]
    fn ordinary_rank_degenerate() {
        let s = SubsetSelection::new(DivisorLattice, vec![1, 2, 4]).unwrap();
        let c: HashMap<u64, Scalar> = [1, 2, 4].into_iter().map(|e| (e, Scalar::from_int(3))).collect();
        assert_eq!(ordinary_rank(&s, &c, Mode::Meet).unwrap(), 1);
        let z: HashMap<u64, Scalar> = [1, 2, 4].into_iter().map(|e| (e, Scalar::zero())).collect();
        assert_eq!(ordinary_rank(&s, &z, Mode::Meet).unwrap(), 0);
        let zf = FunctionFamily::from_rows(vec![z; 3]);
        assert_eq!(build_matrix(&s, &zf, Mode::Meet).unwrap(), Matrix::zeros(3, 3).unwrap());
        assert_eq!(rank_report(&s, &zf, Mode::Meet).unwrap(), RankReport { k: 3, lower: 0, upper: 0, exact: 0 });
    }

    #[test]
    fn theorems_reject_open_sets() {
        let s = SubsetSelection::new(DivisorLattice, vec![4, 6]).unwrap();
        let fs = ident(2, &[2, 4, 6, 12]);
        assert_eq!(theorem_det(&s, &fs, Mode::Meet), Err(Error::NotClosed("meet")));
        assert_eq!(theorem_inverse(&s, &fs, Mode::Join), Err(Error::NotClosed("join")));
        assert!(matches!(rank_report(&s, &fs, Mode::Meet), Err(Error::NotClosed(_))));
        // but the factorization holds for any admissible D
        for mode in [Mode::Meet, Mode::Join] {
            let d = s.closure_set(mode).unwrap();
            assert_eq!(factorize(&d, &fs).unwrap().product, build_matrix(&s, &fs, mode).unwrap());
        }
    }

    #[test]
    fn values_only_on_s_are_missing_on_d() {
        let s = SubsetSelection::new(DivisorLattice, vec![4, 6]).unwrap();
        let fs = ident(2, &[4, 6]);
        let d = s.closure_set(Mode::Meet).unwrap();
        assert!(matches!(psi_table(&d, &fs), Err(Error::MissingValue { row: 1, .. })));
        assert!(matches!(build_matrix(&s, &fs, Mode::Meet), Err(Error::MissingValue { .. })));
    }

    #[test]
    fn column_adjusted_is_transpose() {
        let s = SubsetSelection::new(DivisorLattice, vec![1, 2, 3, 6]).unwrap();
        let fs = FunctionFamily::from_fn(4, &[1, 2, 3, 6], |i, &e| Scalar::from((i as u64 + 1) * e));
        let row = build_adjusted(&s, &fs, Mode::Meet, false).unwrap();
        let col = build_adjusted(&s, &fs, Mode::Meet, true).unwrap();
        assert_eq!(col, row.transpose());
        assert_ne!(row, col);
    }
}
