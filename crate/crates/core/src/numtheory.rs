//! The divisor-lattice specialization: number-theoretic Möbius function,
//! Dirichlet convolution, and row-adjusted GCD matrices on `{1, ..., n}`.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::family::FunctionFamily;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `μ(n)`: zero if a square divides `n`, else `(-1)^ω(n)`.
pub fn mobius_nt(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("mobius of 0".into()));
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len().is_multiple_of(2) { 1 } else { -1 })
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `(f ∗ g)(n) = Σ_{d | n} f(d) g(n/d)`. The arguments return `None` where
/// a table has no entry.
pub fn dirichlet<F, G>(f: F, g: G, n: u64) -> Result<Scalar>
where
    F: Fn(u64) -> Option<Scalar>,
    G: Fn(u64) -> Option<Scalar>,
{
    if n == 0 {
        return Err(Error::Domain("dirichlet convolution at 0".into()));
    }
    let missing = |m: u64| Error::MissingValue { row: 0, element: m.to_string() };
    let mut acc = Scalar::zero();
    for d in divisors(n) {
        let a = f(d).ok_or_else(|| missing(d))?;
        let b = g(n / d).ok_or_else(|| missing(n / d))?;
        acc += &(a * b);
    }
    Ok(acc)
}

/// `μ` as a scalar-valued function, for use with [`dirichlet`].
pub fn mobius_fn(m: u64) -> Option<Scalar> {
    mobius_nt(m).ok().map(Scalar::from_int)
}

/// `(f_i ∗ μ)(m)` with `f_i` taken from row `row` of `fs`.
pub fn row_times_mobius(fs: &FunctionFamily<u64>, row: usize, m: u64) -> Result<Scalar> {
    dirichlet(|d| fs.get(row, &d).cloned(), mobius_fn, m).map_err(|e| match e {
        Error::MissingValue { element, .. } => Error::MissingValue { row: row + 1, element },
        e => e,
    })
}

fn check_family(n: usize, fs: &FunctionFamily<u64>) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    if fs.len() != n {
        return Err(Error::Dimension(format!("{} functions for n = {n}", fs.len())));
    }
    Ok(())
}

/// The `n x n` matrix `f_i(gcd(i, j))`.
pub fn bege_matrix(n: usize, fs: &FunctionFamily<u64>) -> Result<Matrix> {
    check_family(n, fs)?;
    Matrix::try_from_fn(n, n, |i, j| {
        let g = (i as u64 + 1).gcd(&(j as u64 + 1));
        fs.value(i, &g, u64::to_string).cloned()
    })
}

/// `det (f_i(gcd(i, j))) = Π_i (f_i ∗ μ)(i)`.
pub fn bege_det(n: usize, fs: &FunctionFamily<u64>) -> Result<Scalar> {
    check_family(n, fs)?;
    (0..n).map(|i| row_times_mobius(fs, i, i as u64 + 1)).product()
}

/// Built-in arithmetical function families.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    /// `f_i(m) = m`
    Identity,
    /// `f_i(m) = c`
    Constant(Scalar),
    /// `f_i(m) = m^r`
    Power(i32),
}

impl FamilySpec {
    pub fn eval(&self, m: u64) -> Scalar {
        match self {
            FamilySpec::Identity => Scalar::from(m),
            FamilySpec::Constant(c) => c.clone(),
            FamilySpec::Power(r) => Scalar::from(m).powi(*r).expect("m is positive"),
        }
    }

    /// Tabulates the family for `n` rows over `domain`.
    pub fn tabulate(&self, n: usize, domain: &[u64]) -> FunctionFamily<u64> {
        FunctionFamily::uniform(n, domain, |&m| self.eval(m))
    }
}

impl std::str::FromStr for FamilySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "id" {
            return Ok(FamilySpec::Identity);
        }
        if let Some(c) = s.strip_prefix("const:") {
            return Ok(FamilySpec::Constant(c.parse()?));
        }
        if let Some(r) = s.strip_prefix("pow:") {
            return r
                .parse()
                .map(FamilySpec::Power)
                .map_err(|_| Error::Parse(format!("bad exponent `{r}`")));
        }
        Err(Error::Parse(format!("unknown family `{s}`")))
    }
}
