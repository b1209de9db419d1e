//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p rowadj-cli --test acceptance`.

use std::collections::HashMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rowadj::numtheory::{bege_det, bege_matrix, divisors, mobius_nt, FamilySpec};
use rowadj::selection::mobius_of;
use rowadj::verify::{
    arbitrary_instance, case_rng, check_any_closed, check_arbitrary, check_bounds_attained, closed_instance,
    random_poset, random_scalar, AnyInstance, Check, ClosedStats, Faults, Property,
};
use rowadj::{theorem_det, DivisorLattice, FunctionFamily, Matrix, Mode, OrderBackend, Scalar, SubsetSelection};

const SEED: u64 = 20_110_907;
const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn failures(checks: &[Check], props: &[Property]) -> Vec<String> {
    checks
        .iter()
        .filter(|(p, r)| props.contains(p) && r.is_err())
        .map(|(p, r)| format!("{}: {}", p.name(), r.as_ref().unwrap_err()))
        .collect()
}

fn count(checks: &[Check], prop: Property) -> usize {
    checks.iter().filter(|(p, r)| *p == prop && r.is_ok()).count()
}

fn n5_regression() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_rowadj"))
        .args(["analyze", "--format", "machine", "--poset"])
        .arg(format!("{FIXTURES}/n5.poset"))
        .arg("--functions")
        .arg(format!("{FIXTURES}/n5.functions"))
        .output()
        .expect("run rowadj");
    if !out.status.success() {
        return outcome(false, format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let text = String::from_utf8(out.stdout).expect("utf8");
    let kv: HashMap<&str, &str> = text.lines().filter_map(|l| l.split_once('=')).collect();
    let expected_rows = ["0 0 0 0 0", "0 1 0 0 1", "1 1 1 1 1", "0 0 1 1 1", "0 0 0 1 1"];
    let rows_ok = (1..=5).all(|i| kv.get(format!("matrix.row.{i}").as_str()) == Some(&expected_rows[i - 1]));
    let ok = rows_ok && kv.get("k") == Some(&"4") && kv.get("rank.exact") == Some(&"4") && kv.get("det") == Some(&"0");
    outcome(ok, format!("matrix {}, k={:?}, rank={:?}, det={:?}", if rows_ok { "ok" } else { "WRONG" }, kv.get("k"), kv.get("rank.exact"), kv.get("det")))
}

fn factorization_property() -> (Outcome, Vec<Check>) {
    let mut all = Vec::new();
    let (mut divisor, mut lattice, mut enlarged) = (0, 0, 0);
    for case in 0..500u64 {
        let mut rng = case_rng(SEED, case);
        let mode = if case % 2 == 0 { Mode::Meet } else { Mode::Join };
        let inst = arbitrary_instance(&mut rng, mode);
        let checks = match &inst {
            AnyInstance::Divisor(i) => {
                divisor += 1;
                check_arbitrary(i, Faults::default(), &mut rng)
            }
            AnyInstance::Lattice(i) => {
                lattice += 1;
                check_arbitrary(i, Faults::default(), &mut rng)
            }
        };
        enlarged += count(&checks, Property::ClosureInvariance);
        all.extend(checks);
    }
    let bad = failures(&all, &[Property::Factorization, Property::ClosureInvariance, Property::PsiRoutesAgree]);
    let ok = bad.is_empty() && count(&all, Property::Factorization) == 500 && enlarged > 0 && divisor > 0 && lattice > 0;
    let detail = format!(
        "500 instances ({divisor} divisor, {lattice} lattice), {enlarged} with enlarged D, {} failures {}",
        bad.len(),
        bad.first().cloned().unwrap_or_default()
    );
    (outcome(ok, detail), all)
}

struct ClosedRun {
    checks: Vec<Check>,
    stats: Vec<ClosedStats>,
}

fn closed_instances() -> ClosedRun {
    let mut checks = Vec::new();
    let mut stats = Vec::new();
    for (offset, mode) in [(1_000u64, Mode::Meet), (2_000, Mode::Join)] {
        for case in 0..200 {
            let mut rng = case_rng(SEED, offset + case);
            let inst = closed_instance(&mut rng, mode);
            let (c, s) = check_any_closed(&inst);
            checks.extend(c);
            stats.push(s);
        }
    }
    ClosedRun { checks, stats }
}

fn determinant_theorem(run: &ClosedRun) -> Outcome {
    let bad = failures(&run.checks, &[Property::Determinant]);
    let n = count(&run.checks, Property::Determinant);
    outcome(bad.is_empty() && n == 400, format!("{n}/400 exact matches {}", bad.first().cloned().unwrap_or_default()))
}

fn inverse_theorem(run: &ClosedRun) -> Outcome {
    let bad = failures(&run.checks, &[Property::Inverse, Property::InvertibleIff]);
    let invertible = run.stats.iter().filter(|s| s.invertible).count();
    let singular = run.stats.len() - invertible;
    let ok = bad.is_empty()
        && count(&run.checks, Property::Inverse) == invertible
        && count(&run.checks, Property::InvertibleIff) == 400
        && invertible > 0
        && singular > 0;
    outcome(
        ok,
        format!("{invertible} invertible (B·M = M·B = I), {singular} with a vanishing Ψ (det 0) {}", bad.first().cloned().unwrap_or_default()),
    )
}

fn rank_trichotomy(run: &ClosedRun) -> Outcome {
    let bad = failures(&run.checks, &[Property::RankTrichotomy]);
    let iff = run.stats.iter().filter(|s| !s.zero_matrix).all(|s| (s.rank == s.n) == (s.k == 0));
    let bounds = run.stats.iter().filter(|s| s.k > 0 && !s.zero_matrix).all(|s| s.n - s.k <= s.rank && s.rank < s.n);
    let k_pos = run.stats.iter().filter(|s| s.k > 0).count();
    let attained = check_bounds_attained();
    let bad_attained = failures(&attained, &[Property::BoundsAttained, Property::RankTrichotomy]);
    let ok = bad.is_empty() && iff && bounds && k_pos > 0 && bad_attained.is_empty()
        && count(&attained, Property::BoundsAttained) == 4;
    outcome(
        ok,
        format!(
            "rank = n iff k = 0: {iff}; n-k <= rank <= n-1 on {k_pos} instances with k > 0: {bounds}; antichain and N5 bounds attained: {}",
            bad_attained.is_empty()
        ),
    )
}

fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64
}

fn smith_bege() -> Outcome {
    let id = |n: usize| FamilySpec::Identity.tabulate(n, &(1..=n as u64).collect::<Vec<_>>());
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, want) in [(3usize, 2i64), (6, 32)] {
        let brute = bege_matrix(n, &id(n)).and_then(|m| m.det_oracle()).expect("square");
        let phi: u64 = (1..=n as u64).map(totient).product();
        let formula = bege_det(n, &id(n)).expect("defined");
        let good = brute == Scalar::from_int(want) && Scalar::from(phi) == brute && formula == brute;
        ok &= good;
        notes.push(format!("n={n}: det={brute}"));
    }
    let mut rng = case_rng(SEED, 9_000);
    for n in 1..=12usize {
        let domain: Vec<u64> = (1..=n as u64).collect();
        let s = SubsetSelection::new(DivisorLattice, domain.clone()).expect("ascending");
        let families = [
            id(n),
            FamilySpec::Power(2).tabulate(n, &domain),
            FunctionFamily::from_fn(n, &domain, |_, _| random_scalar(&mut rng, 1)),
            FunctionFamily::from_fn(n, &domain, |_, _| random_scalar(&mut rng, 3)),
        ];
        for fs in &families {
            let a = bege_det(n, fs).expect("defined");
            let b = theorem_det(&s, fs, Mode::Meet).expect("closed");
            let c = bege_matrix(n, fs).and_then(|m| m.det_oracle()).expect("square");
            if a != b || b != c {
                ok = false;
                notes.push(format!("n={n}: bege {a}, theorem {b}, oracle {c}"));
            }
        }
    }
    notes.push("n<=12 three-way agreement checked on 4 families".into());
    outcome(ok, notes.join("; "))
}

fn mobius_zeta() -> Outcome {
    let mut ok = true;
    let mut sizes = Vec::new();
    for case in 0..100u64 {
        let mut rng = case_rng(SEED, 5_000 + case);
        let n = 1 + (case as usize % 10);
        let p = random_poset(&mut rng, n);
        let items: Vec<_> = p.elements().collect();
        let mu = mobius_of(&p, &items);
        let zeta = Matrix::from_fn(n, n, |i, j| if p.leq(&items[i], &items[j]) { Scalar::one() } else { Scalar::zero() }).expect("n >= 1");
        ok &= zeta.multiply(&mu).expect("square") == Matrix::identity(n).expect("n >= 1");
        sizes.push(n);
    }
    let mut chains = 0;
    let chain_sets: Vec<Vec<u64>> = [2u64, 3, 5, 7]
        .iter()
        .map(|&p| (0..6).map(|e| p.pow(e)).collect())
        .chain([12u64, 36, 60, 210, 360, 720].iter().map(|&n| divisors(n)))
        .collect();
    for d in &chain_sets {
        let mu = mobius_of(&DivisorLattice, d);
        for (i, a) in d.iter().enumerate() {
            for (j, b) in d.iter().enumerate() {
                let want = if b % a == 0 { mobius_nt(b / a).expect("positive") } else { 0 };
                ok &= mu[(i, j)] == Scalar::from_int(want);
            }
        }
        chains += 1;
    }
    outcome(ok, format!("100 random posets (1..=10 elements): zeta·mu = I; {chains} divisor chains/sets match mu(b/a)"))
}

fn psi_reconstruction(arbitrary: &[Check], closed: &ClosedRun) -> Outcome {
    let bad: Vec<String> = failures(arbitrary, &[Property::PsiReconstruction])
        .into_iter()
        .chain(failures(&closed.checks, &[Property::PsiReconstruction]))
        .collect();
    let n = count(arbitrary, Property::PsiReconstruction) + count(&closed.checks, Property::PsiReconstruction);
    outcome(bad.is_empty() && n >= 900, format!("{n} Ψ tables sum back to f {}", bad.first().cloned().unwrap_or_default()))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut report = |id: u32, name: &str, o: Outcome, elapsed: Duration, limit: Option<Duration>| {
        let in_time = limit.is_none_or(|l| elapsed < l);
        let ok = o.ok && in_time;
        all_ok &= ok;
        let limit_txt = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
        println!(
            "criterion {id} [{}] {name}: {} [{:.2?}{limit_txt}]",
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            elapsed
        );
    };

    let (o, t) = timed(n5_regression);
    report(1, "N5 regression", o, t, Some(Duration::from_secs(1)));

    let ((o, arbitrary), t) = timed(factorization_property);
    report(2, "factorization", o, t, Some(Duration::from_secs(30)));

    let (closed, t_closed) = timed(closed_instances);
    let (o, t) = timed(|| determinant_theorem(&closed));
    report(3, "determinant theorem", o, t_closed + t, Some(Duration::from_secs(30)));

    let (o, t) = timed(|| inverse_theorem(&closed));
    report(4, "inverse theorem", o, t, None);

    let (o, t) = timed(|| rank_trichotomy(&closed));
    report(5, "rank trichotomy", o, t, None);

    let (o, t) = timed(smith_bege);
    report(6, "Smith/Bege determinants", o, t, Some(Duration::from_secs(5)));

    let (o, t) = timed(mobius_zeta);
    report(7, "Möbius/zeta identity", o, t, None);

    let (o, t) = timed(|| psi_reconstruction(&arbitrary, &closed));
    report(8, "Ψ reconstruction", o, t, None);

    if all_ok {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
