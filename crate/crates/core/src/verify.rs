//! Seeded random instances and the property suite run by `rowadj verify`
//! and the acceptance tests.
//!
//! Case `c` of a run with seed `s` draws from a ChaCha8 stream keyed by
//! `(s, c)`, so any case can be replayed on its own.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::family::FunctionFamily;
use crate::matrix::Matrix;
use crate::numtheory::divisors;
use crate::order::{DivisorLattice, FinitePoset, Mode, OrderBackend, PosetElem};
use crate::rowadj::{
    build_adjusted, build_matrix, check_psi_reconstruction, diagonal_psi, factorize, ordinary_rank, psi_from_matrix,
    psi_table, psi_table_mobius, rank_report, theorem_det, theorem_inverse,
};
use crate::scalar::Scalar;
use crate::selection::SubsetSelection;

/// Largest selection the generators produce.
pub const MAX_N: usize = 8;

const HIGHLY_COMPOSITE: [u64; 10] = [12, 24, 30, 36, 60, 72, 120, 180, 210, 360];

pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// A backend plus everything needed to build one row-adjusted matrix.
///
/// `family` is defined on the whole finite universe the instance lives in,
/// so any admissible closure set can be used. `extra` lists elements that
/// may be added to the minimal closure set.
#[derive(Clone, Debug)]
pub struct Instance<O: OrderBackend> {
    pub backend: O,
    pub mode: Mode,
    pub members: Vec<O::Elem>,
    pub family: FunctionFamily<O::Elem>,
    pub extra: Vec<O::Elem>,
}

#[derive(Clone, Debug)]
pub enum AnyInstance {
    Divisor(Instance<DivisorLattice>),
    Lattice(Instance<FinitePoset>),
}

impl<O: OrderBackend> Instance<O> {
    pub fn selection(&self) -> Result<SubsetSelection<&O>> {
        SubsetSelection::new(&self.backend, self.members.clone())
    }

    /// Multi-line dump for counterexample reports.
    pub fn describe(&self, backend_desc: &str) -> String {
        let b = &self.backend;
        let mut out = String::new();
        let _ = writeln!(out, "backend: {backend_desc}");
        let _ = writeln!(out, "mode: {}", self.mode.name());
        let labels: Vec<String> = self.members.iter().map(|x| b.label(x)).collect();
        let _ = writeln!(out, "set: {}", labels.join(" "));
        let mut domain: Vec<&O::Elem> = self.family.rows().first().map(|r| r.keys().collect()).unwrap_or_default();
        domain.sort_by_key(|e| b.label(e));
        let names: Vec<String> = domain.iter().map(|e| b.label(e)).collect();
        let _ = writeln!(out, "over: {}", names.join(" "));
        for i in 0..self.family.len() {
            let vals: Vec<String> = domain
                .iter()
                .map(|e| self.family.get(i, e).map_or_else(|| "?".into(), ToString::to_string))
                .collect();
            let _ = writeln!(out, "f{}: {}", i + 1, vals.join(" "));
        }
        out
    }
}

impl AnyInstance {
    pub fn describe(&self) -> String {
        match self {
            AnyInstance::Divisor(i) => i.describe("@divisors"),
            AnyInstance::Lattice(i) => {
                let p = &i.backend;
                let covers: Vec<String> = p.covers().map(|(a, b)| format!("{}<{}", p.name(a), p.name(b))).collect();
                let names: Vec<&str> = p.elements().map(|e| p.name(e)).collect();
                i.describe(&format!("elements: {} covers: {}", names.join(" "), covers.join(" ")))
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyInstance::Divisor(i) => i.members.len(),
            AnyInstance::Lattice(i) => i.members.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A random scalar. Small integers dominate so that vanishing `Ψ` values
/// and singular matrices occur regularly.
pub fn random_scalar(rng: &mut impl Rng, style: u8) -> Scalar {
    match style {
        0 => Scalar::from_int(rng.gen_range(-2..=2)),
        1 => Scalar::from_int(rng.gen_range(-9..=9)),
        2 => Scalar::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4)),
        _ => Scalar::gaussian(rng.gen_range(-3..=3), rng.gen_range(-2..=2)),
    }
}

fn random_family<E: Clone + Eq + std::hash::Hash>(rng: &mut impl Rng, n: usize, domain: &[E]) -> FunctionFamily<E> {
    let style = rng.gen_range(0..4u8);
    if rng.gen_bool(0.15) {
        // ordinary matrix: one shared function
        let row: Vec<Scalar> = domain.iter().map(|_| random_scalar(rng, style)).collect();
        return FunctionFamily::from_table(domain, vec![row; n]).expect("row width matches");
    }
    let rows = (0..n).map(|_| domain.iter().map(|_| random_scalar(rng, style)).collect()).collect();
    FunctionFamily::from_table(domain, rows).expect("row width matches")
}

/// A random lattice: a family of subsets of a small ground set, closed under
/// intersection, with the full set added, ordered by inclusion.
pub fn random_lattice(rng: &mut impl Rng) -> FinitePoset {
    let bits = rng.gen_range(2..=4u32);
    let full = (1u32 << bits) - 1;
    let mut sets = vec![full];
    for _ in 0..rng.gen_range(1..=6) {
        let s = rng.gen_range(0..=full);
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    loop {
        let mut grew = false;
        for i in 0..sets.len() {
            for j in 0..i {
                let c = sets[i] & sets[j];
                if !sets.contains(&c) {
                    sets.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    sets.sort_by_key(|s| (s.count_ones(), *s));
    let name = |s: u32| format!("s{s:0w$b}", w = bits as usize);
    let names: Vec<String> = sets.iter().map(|&s| name(s)).collect();
    let mut covers = Vec::new();
    for &a in &sets {
        for &b in &sets {
            if a != b && a & b == a {
                covers.push((name(a), name(b)));
            }
        }
    }
    FinitePoset::from_covers(&names, &covers).expect("inclusion order is acyclic")
}

/// A random poset on `n` elements (not necessarily a lattice), listed in a
/// shuffled order so the linear extension has work to do.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> FinitePoset {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let density = rng.gen_range(0.1..0.6);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                covers.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let mut listed = names.clone();
    listed.shuffle(rng);
    FinitePoset::from_covers(&listed, &covers).expect("edges go forward, so no cycle")
}

fn pick_subset<T: Clone>(rng: &mut impl Rng, universe: &[T], max: usize) -> Vec<usize> {
    let n = rng.gen_range(1..=max.min(universe.len()));
    let mut idx: Vec<usize> = (0..universe.len()).collect();
    idx.shuffle(rng);
    idx.truncate(n);
    idx.sort_unstable();
    idx
}

/// An arbitrary (usually not closed) instance with `n <= MAX_N`.
pub fn arbitrary_instance(rng: &mut impl Rng, mode: Mode) -> AnyInstance {
    if rng.gen_bool(0.5) {
        let top = *HIGHLY_COMPOSITE.choose(rng).expect("non-empty");
        let universe = divisors(top);
        let members: Vec<u64> = pick_subset(rng, &universe, MAX_N).into_iter().map(|i| universe[i]).collect();
        let family = random_family(rng, members.len(), &universe);
        let s = SubsetSelection::new(DivisorLattice, members.clone()).expect("ascending divisors");
        let d = s.closure_set(mode).expect("gcd/lcm always exist");
        let extra = universe.iter().copied().filter(|e| !d.elements().contains(e)).collect();
        AnyInstance::Divisor(Instance { backend: DivisorLattice, mode, members, family, extra })
    } else {
        let lattice = random_lattice(rng);
        let universe: Vec<PosetElem> = lattice.elements().collect();
        let members: Vec<PosetElem> =
            pick_subset(rng, &universe, MAX_N).into_iter().map(|i| universe[i]).collect();
        let family = random_family(rng, members.len(), &universe);
        let extra = {
            let s = SubsetSelection::new(&lattice, members.clone()).expect("indices follow the extension");
            let d = s.closure_set(mode).expect("lattice");
            universe.iter().copied().filter(|e| !d.elements().contains(e)).collect()
        };
        AnyInstance::Lattice(Instance { backend: lattice, mode, members, family, extra })
    }
}

/// An instance whose selection is closed in `mode`, `n <= MAX_N`.
pub fn closed_instance(rng: &mut impl Rng, mode: Mode) -> AnyInstance {
    fn close<O: OrderBackend>(inst: Instance<O>, rng: &mut impl Rng) -> Option<Instance<O>> {
        // pairwise closure is not closed in general; iterate to a fixpoint
        let mut d = inst.members.clone();
        loop {
            let s = SubsetSelection::new(&inst.backend, d.clone()).ok()?;
            let next = s.closure_set(inst.mode).ok()?.elements().to_vec();
            if next.len() > MAX_N {
                return None;
            }
            if next.len() == d.len() {
                break;
            }
            d = next;
        }
        let family = random_family(rng, d.len(), &d);
        Some(Instance { family, members: d, extra: Vec::new(), ..inst })
    }
    loop {
        let closed = match arbitrary_instance(rng, mode) {
            AnyInstance::Divisor(i) => close(i, rng).map(AnyInstance::Divisor),
            AnyInstance::Lattice(i) => close(i, rng).map(AnyInstance::Lattice),
        };
        if let Some(inst) = closed {
            return inst;
        }
    }
}

/// Named property checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Factorization,
    ClosureInvariance,
    PsiReconstruction,
    PsiRoutesAgree,
    Determinant,
    Inverse,
    InvertibleIff,
    RankTrichotomy,
    UpsilonFromMatrix,
    Specialization,
    TransposeDuality,
    OrdinaryRank,
    BoundsAttained,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Factorization => "factorization",
            Property::ClosureInvariance => "closure-invariance",
            Property::PsiReconstruction => "psi-reconstruction",
            Property::PsiRoutesAgree => "psi-routes-agree",
            Property::Determinant => "determinant",
            Property::Inverse => "inverse",
            Property::InvertibleIff => "invertible-iff",
            Property::RankTrichotomy => "rank-trichotomy",
            Property::UpsilonFromMatrix => "upsilon-from-matrix",
            Property::Specialization => "specialization",
            Property::TransposeDuality => "transpose-duality",
            Property::OrdinaryRank => "ordinary-rank",
            Property::BoundsAttained => "bounds-attained",
        }
    }
}

/// Deliberate defects for testing the harness itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct Faults {
    /// Flip the sign of every `Ψ` before forming `Υ`.
    pub negate_psi: bool,
}

pub type Check = (Property, std::result::Result<(), String>);

fn expect(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn err_str(e: crate::Error) -> String {
    e.to_string()
}

/// Factorization checks on an arbitrary selection: `Υ Eᵀ` against the
/// direct matrix for the minimal closure and one strict enlargement, both
/// `Ψ` routes, and the reconstruction identity.
pub fn check_arbitrary<O: OrderBackend>(inst: &Instance<O>, faults: Faults, rng: &mut impl Rng) -> Vec<Check> {
    let mut out = Vec::new();
    let mut run = || -> std::result::Result<Vec<Check>, String> {
        let mut out = Vec::new();
        let s = inst.selection().map_err(err_str)?;
        let fs = &inst.family;
        let direct = build_matrix(&s, fs, inst.mode).map_err(err_str)?;
        let d = s.closure_set(inst.mode).map_err(err_str)?;
        let mut fac = factorize(&d, fs).map_err(err_str)?;
        if faults.negate_psi {
            let neg = Matrix::from_fn(fac.xi.rows(), fac.xi.cols(), |i, j| -&fac.xi[(i, j)]).map_err(err_str)?;
            fac.upsilon = fac.e.hadamard(&neg).map_err(err_str)?;
            fac.product = fac.upsilon.multiply(&fac.e.transpose()).map_err(err_str)?;
        }
        out.push((
            Property::Factorization,
            expect(fac.product == direct, || format!("Υ·Eᵀ = {:?} but direct = {:?}", fac.product, direct)),
        ));

        let psi = psi_table(&d, fs).map_err(err_str)?;
        out.push((Property::PsiReconstruction, check_psi_reconstruction(&d, fs, &psi).map_err(err_str)));
        let psi_mu = psi_table_mobius(&d, fs).map_err(err_str)?;
        out.push((
            Property::PsiRoutesAgree,
            expect(psi_mu == psi, || format!("inductive {:?} vs möbius {:?}", psi.grid, psi_mu.grid)),
        ));

        if let Some(extra) = inst.extra.choose(rng) {
            let mut bigger = d.elements().to_vec();
            bigger.push(extra.clone());
            let bigger = crate::order::stable_linear_extension(&inst.backend, &bigger);
            let d2 = s.closure_with(inst.mode, bigger).map_err(err_str)?;
            let fac2 = factorize(&d2, fs).map_err(err_str)?;
            let psi2 = psi_table(&d2, fs).map_err(err_str)?;
            out.push((Property::PsiReconstruction, check_psi_reconstruction(&d2, fs, &psi2).map_err(err_str)));
            out.push((
                Property::ClosureInvariance,
                expect(fac2.product == fac.product && fac2.product == direct, || {
                    format!("enlarged D gives {:?}, minimal D gives {:?}", fac2.product, fac.product)
                }),
            ));
        }
        Ok(out)
    };
    match run() {
        Ok(v) => out.extend(v),
        Err(e) => out.push((Property::Factorization, Err(e))),
    }
    out
}

/// Facts about a closed instance, for coverage accounting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClosedStats {
    pub n: usize,
    pub k: usize,
    pub rank: usize,
    pub invertible: bool,
    pub zero_matrix: bool,
}

/// Checks on a selection closed in `inst.mode`: determinant, inverse (both
/// directions of the invertibility criterion), rank bounds, `Υ` recovery,
/// `Ψ` reconstruction, and the transpose/specialization identities.
pub fn check_closed<O: OrderBackend>(inst: &Instance<O>) -> (Vec<Check>, ClosedStats) {
    let mut stats = ClosedStats::default();
    let run = |stats: &mut ClosedStats| -> std::result::Result<Vec<Check>, String> {
        let mut out = Vec::new();
        let mode = inst.mode;
        let s = inst.selection().map_err(err_str)?;
        let fs = &inst.family;
        let n = s.len();
        let m = build_matrix(&s, fs, mode).map_err(err_str)?;
        let d = s.as_closure(mode).map_err(err_str)?;
        let psi = psi_table(&d, fs).map_err(err_str)?;
        out.push((Property::PsiReconstruction, check_psi_reconstruction(&d, fs, &psi).map_err(err_str)));
        let fac = factorize(&d, fs).map_err(err_str)?;
        out.push((
            Property::Factorization,
            expect(fac.product == m, || format!("Υ·Eᵀ = {:?} but direct = {:?}", fac.product, m)),
        ));

        let det = theorem_det(&s, fs, mode).map_err(err_str)?;
        let oracle = m.det_oracle().map_err(err_str)?;
        out.push((Property::Determinant, expect(det == oracle, || format!("product of Ψ = {det}, elimination = {oracle}"))));

        let diag = diagonal_psi(&s, fs, mode).map_err(err_str)?;
        let k = diag.iter().filter(|v| v.is_zero()).count();
        stats.n = n;
        stats.k = k;
        stats.invertible = k == 0;
        stats.zero_matrix = m.is_zero();
        match theorem_inverse(&s, fs, mode) {
            Ok(b) => {
                let eye = Matrix::identity(n).map_err(err_str)?;
                let left = b.multiply(&m).map_err(err_str)?;
                let right = m.multiply(&b).map_err(err_str)?;
                out.push((
                    Property::Inverse,
                    expect(left == eye && right == eye, || format!("B = {b:?} is not a two-sided inverse of {m:?}")),
                ));
                out.push((Property::InvertibleIff, expect(k == 0 && !oracle.is_zero(), || "inverse built with k > 0".into())));
            }
            Err(crate::Error::SingularPsi(i)) => {
                out.push((
                    Property::InvertibleIff,
                    expect(k > 0 && oracle.is_zero() && diag[i - 1].is_zero(), || {
                        format!("Ψ vanishes at {i} but elimination gives det {oracle}")
                    }),
                ));
            }
            Err(e) => return Err(e.to_string()),
        }

        let rank = m.rank_oracle();
        stats.rank = rank;
        let tri = if m.is_zero() {
            rank == 0
        } else if k == 0 {
            rank == n
        } else {
            n - k <= rank && rank < n
        };
        out.push((Property::RankTrichotomy, expect(tri && (rank == 0) == m.is_zero(), || format!("rank {rank} with n={n}, k={k}"))));
        out.push((Property::RankTrichotomy, rank_report(&s, fs, mode).map(|_| ()).map_err(err_str)));

        let ups = psi_from_matrix(&m, &s, mode).map_err(err_str)?;
        out.push((
            Property::UpsilonFromMatrix,
            expect(ups == fac.upsilon, || format!("M·μ = {ups:?}, Υ = {:?}", fac.upsilon)),
        ));

        let col = build_adjusted(&s, fs, mode, true).map_err(err_str)?;
        out.push((Property::TransposeDuality, expect(col == m.transpose(), || "column-adjusted != transpose".into())));

        // ordinary matrix with f = f_1 on every row
        let f1: HashMap<O::Elem, crate::Scalar> = fs.rows()[0].clone();
        let uniform = FunctionFamily::from_rows(vec![f1.clone(); n]);
        let ord = build_matrix(&s, &uniform, mode).map_err(err_str)?;
        out.push((Property::Specialization, expect(ord == ord.transpose(), || format!("ordinary matrix not symmetric: {ord:?}"))));
        out.push((Property::OrdinaryRank, ordinary_rank(&s, &f1, mode).map(|_| ()).map_err(err_str)));
        Ok(out)
    };
    match run(&mut stats) {
        Ok(v) => (v, stats),
        Err(e) => (vec![(Property::Determinant, Err(e))], stats),
    }
}

/// The pentagon `N5` with `x1 < x2 < x5` and `x1 < x3 < x4 < x5`.
pub fn n5_poset() -> FinitePoset {
    FinitePoset::from_covers(
        &["x1", "x2", "x3", "x4", "x5"],
        &[("x1", "x2"), ("x1", "x3"), ("x3", "x4"), ("x4", "x5"), ("x2", "x5")],
    )
    .expect("N5 is a valid poset")
}

/// `f_i(x_j) = 1` for `(i, j)` in {(2,2), (3,1), (3,3), (4,3), (4,4), (5,4), (5,5)}, else 0.
pub fn n5_family(p: &FinitePoset) -> FunctionFamily<PosetElem> {
    const ONES: [(usize, &str); 7] = [(2, "x2"), (3, "x1"), (3, "x3"), (4, "x3"), (4, "x4"), (5, "x4"), (5, "x5")];
    let domain: Vec<PosetElem> = p.elements().collect();
    FunctionFamily::from_fn(5, &domain, |i, e| {
        if ONES.contains(&(i + 1, p.name(*e))) { Scalar::one() } else { Scalar::zero() }
    })
}

const PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

/// `S = {1, p_1, ..., p_{n-1}}`: a bottom element under an antichain of
/// primes. Rows listed in `vanishing` (1-based, each > 1) get
/// `f_i(x_i) = f_i(x_1)`, so `Ψ_{S,f_i}(x_i) = 0`; the rank is then `n - k`.
pub fn antichain_over_bottom(n: usize, vanishing: &[usize]) -> Instance<DivisorLattice> {
    assert!((1..=PRIMES.len() + 1).contains(&n));
    assert!(vanishing.iter().all(|&i| i > 1 && i <= n));
    let members: Vec<u64> = std::iter::once(1).chain(PRIMES[..n - 1].iter().copied()).collect();
    let family = FunctionFamily::from_fn(n, &members, |i, &e| {
        let row = i as i64 + 1;
        let at_bottom = Scalar::from_int(row + 1);
        if e == 1 || (e == members[i] && vanishing.contains(&(i + 1))) {
            at_bottom
        } else if e == members[i] {
            Scalar::from_int(3 * row + 7)
        } else {
            Scalar::from_int(-row)
        }
    });
    Instance { backend: DivisorLattice, mode: Mode::Meet, members, family, extra: Vec::new() }
}

/// One failing check with the instance that triggered it.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub case: u64,
    pub property: Property,
    pub message: String,
    pub instance: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    /// (passed, failed) per property.
    pub tally: BTreeMap<Property, (usize, usize)>,
    pub first_failure: Option<Counterexample>,
    pub cases: u64,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.first_failure.is_none()
    }

    fn record(&mut self, case: u64, checks: Vec<Check>, describe: impl Fn() -> String) {
        for (prop, res) in checks {
            let slot = self.tally.entry(prop).or_default();
            match res {
                Ok(()) => slot.0 += 1,
                Err(message) => {
                    slot.1 += 1;
                    if self.first_failure.is_none() {
                        self.first_failure = Some(Counterexample { case, property: prop, message, instance: describe() });
                    }
                }
            }
        }
    }
}

fn check_any_arbitrary(inst: &AnyInstance, faults: Faults, rng: &mut impl Rng) -> Vec<Check> {
    match inst {
        AnyInstance::Divisor(i) => check_arbitrary(i, faults, rng),
        AnyInstance::Lattice(i) => check_arbitrary(i, faults, rng),
    }
}

pub fn check_any_closed(inst: &AnyInstance) -> (Vec<Check>, ClosedStats) {
    match inst {
        AnyInstance::Divisor(i) => check_closed(i),
        AnyInstance::Lattice(i) => check_closed(i),
    }
}

/// Deterministic checks that the two rank bounds are reached.
pub fn check_bounds_attained() -> Vec<Check> {
    let mut out = Vec::new();
    for (n, vanishing) in [(5usize, vec![2usize, 4]), (6, vec![2, 3, 4, 5, 6]), (4, vec![])] {
        let inst = antichain_over_bottom(n, &vanishing);
        let (checks, stats) = check_closed(&inst);
        out.extend(checks);
        out.push((
            Property::BoundsAttained,
            expect(stats.k == vanishing.len() && stats.rank == n - stats.k, || {
                format!("antichain n={n}: k={}, rank={}", stats.k, stats.rank)
            }),
        ));
    }
    let p = n5_poset();
    let inst = Instance {
        mode: Mode::Meet,
        members: p.elements().collect(),
        family: n5_family(&p),
        extra: Vec::new(),
        backend: p,
    };
    let (checks, stats) = check_closed(&inst);
    out.extend(checks);
    out.push((
        Property::BoundsAttained,
        expect(stats.k == 4 && stats.rank == 4, || format!("N5: k={}, rank={}", stats.k, stats.rank)),
    ));
    out
}

/// Runs `cases` random cases: each checks one arbitrary instance (random
/// backend and mode), one meet-closed and one join-closed instance.
pub fn run(seed: u64, cases: u64, faults: Faults) -> VerifyReport {
    let mut report = VerifyReport { cases, ..Default::default() };
    report.record(0, check_bounds_attained(), || "fixed rank-bound constructions".into());
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let mode = if rng.gen_bool(0.5) { Mode::Meet } else { Mode::Join };
        let inst = arbitrary_instance(&mut rng, mode);
        let checks = check_any_arbitrary(&inst, faults, &mut rng);
        report.record(case, checks, || inst.describe());
        for mode in [Mode::Meet, Mode::Join] {
            let inst = closed_instance(&mut rng, mode);
            let (checks, _) = check_any_closed(&inst);
            report.record(case, checks, || inst.describe());
        }
    }
    report
}
