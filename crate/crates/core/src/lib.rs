//! Exact row-adjusted meet and join matrices.
//!
//! Given an order backend (a finite poset or the divisor lattice), an ordered
//! subset `S = {x_1, ..., x_n}` and functions `f_1, ..., f_n`, the row-adjusted
//! meet matrix has entries `f_i(x_i ∧ x_j)` and the join matrix
//! `f_i(x_i ∨ x_j)`. This crate builds both, factors them as `Υ Eᵀ`, and
//! evaluates their rank bounds, determinant and inverse in closed form when
//! `S` is meet (join) closed. Every closed form has an elimination-based
//! counterpart in [`matrix`] to check it against.
//!
//! All arithmetic is over Gaussian rationals ([`Scalar`]); nothing rounds.

pub mod error;
pub mod family;
pub mod matrix;
pub mod numtheory;
pub mod order;
pub mod rowadj;
pub mod scalar;
pub mod selection;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use family::FunctionFamily;
pub use matrix::Matrix;
pub use order::{DivisorLattice, FinitePoset, Mode, OrderBackend, PosetElem};
pub use rowadj::{
    build_adjusted, build_matrix, check_psi_reconstruction, diagonal_psi, factorize, ordinary_rank,
    psi_from_matrix, psi_table, psi_table_mobius, rank_report, theorem_det, theorem_inverse, theta_table,
    Factorization, PsiTable, RankReport, ThetaTable,
};
pub use scalar::Scalar;
pub use selection::{ClosureSet, SubsetSelection};
