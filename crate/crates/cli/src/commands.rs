use num_traits::Zero;
use rowadj::numtheory::FamilySpec;
use rowadj::text::Backend;
use rowadj::verify::{self, Faults};
use rowadj::{
    build_adjusted, build_matrix, diagonal_psi, rank_report, theorem_det, theorem_inverse, Error, FunctionFamily,
    Matrix, OrderBackend, Scalar, SubsetSelection,
};

use crate::config::{CliError, FamilySource, RunConfig, EXIT_MISMATCH, EXIT_PARSE};
use crate::output::{Format, Report};
use crate::{InputArgs, VerifyArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Matrix,
    Analyze,
    Closure,
    Mobius,
}

pub fn run_input(task: Task, args: &InputArgs) -> Result<String, CliError> {
    let cfg = RunConfig::load(args)?;
    let report = match &cfg.backend {
        Backend::Divisors => run(task, &rowadj::DivisorLattice, &cfg, |spec, m| Ok(spec.eval(*m)))?,
        Backend::Finite(p) => run(task, p, &cfg, |spec, _| match spec {
            FamilySpec::Constant(c) => Ok(c.clone()),
            other => Err(CliError::new(EXIT_PARSE, format!("family {other:?} needs the divisor backend"))),
        })?,
    };
    Ok(report.render(cfg.format))
}

fn mismatch(what: &str, theorem: impl std::fmt::Debug, oracle: impl std::fmt::Debug) -> CliError {
    CliError::new(EXIT_MISMATCH, format!("{what}: theorem gives {theorem:?}, elimination gives {oracle:?}"))
}

fn resolve_family<O: OrderBackend>(
    cfg: &RunConfig,
    s: &SubsetSelection<O>,
    eval: impl Fn(&FamilySpec, &O::Elem) -> Result<Scalar, CliError>,
) -> Result<FunctionFamily<O::Elem>, CliError> {
    let fs = match &cfg.family {
        None => return Err(CliError::new(EXIT_PARSE, "this command needs --family or --functions")),
        Some(FamilySource::Table(t)) => t.bind(s.backend())?,
        Some(FamilySource::Spec(spec)) => {
            let mut domain = s.members().to_vec();
            for e in s.closure_set(cfg.mode)?.elements() {
                if !domain.contains(e) {
                    domain.push(e.clone());
                }
            }
            let values = domain.iter().map(|e| eval(spec, e)).collect::<Result<Vec<_>, _>>()?;
            FunctionFamily::from_table(&domain, vec![values; s.len()])?
        }
    };
    if fs.len() != s.len() {
        return Err(CliError::new(EXIT_PARSE, format!("{} functions given for |S| = {}", fs.len(), s.len())));
    }
    Ok(fs)
}

fn run<O: OrderBackend>(
    task: Task,
    backend: &O,
    cfg: &RunConfig,
    eval: impl Fn(&FamilySpec, &O::Elem) -> Result<Scalar, CliError>,
) -> Result<Report, CliError> {
    let members = cfg.set.iter().map(|x| backend.parse_element(x)).collect::<Result<Vec<_>, _>>()?;
    let s = SubsetSelection::new(backend, members)?;
    let mut r = Report::default();
    r.value("mode", cfg.mode.name());
    r.value("n", s.len());
    r.value("set", s.labels().join(" "));
    match task {
        Task::Matrix => {
            let fs = resolve_family(cfg, &s, eval)?;
            let m = build_adjusted(&s, &fs, cfg.mode, cfg.column_adjusted)?;
            r.value("adjusted", if cfg.column_adjusted { "column" } else { "row" });
            r.matrix("matrix", &m);
        }
        Task::Closure => {
            let d = s.closure_set(cfg.mode)?;
            r.value("closed", d.len() == s.len());
            r.value("m", d.len());
            r.value("closure", d.labels().join(" "));
            r.matrix("incidence", &d.incidence_matrix());
        }
        Task::Mobius => {
            let d = s.closure_set(cfg.mode)?;
            r.value("elements", d.labels().join(" "));
            r.matrix("mobius", &d.mobius_matrix());
        }
        Task::Analyze => {
            let fs = resolve_family(cfg, &s, eval)?;
            analyze(&s, &fs, cfg, &mut r)?;
        }
    }
    Ok(r)
}

fn analyze<O: OrderBackend>(
    s: &SubsetSelection<O>,
    fs: &FunctionFamily<O::Elem>,
    cfg: &RunConfig,
    r: &mut Report,
) -> Result<(), CliError> {
    let mode = cfg.mode;
    let m = build_matrix(s, fs, mode)?;
    let shown = if cfg.column_adjusted { m.transpose() } else { m.clone() };
    r.value("adjusted", if cfg.column_adjusted { "column" } else { "row" });
    r.matrix("matrix", &shown);
    let det_oracle = m.det_oracle()?;
    let closed = s.is_closed(mode)?;
    r.value("closed", closed);
    if !closed {
        r.banner(format!("NOTCLOSED: S is not {} closed; values below come from elimination only", mode.name()));
        r.value("rank.exact", m.rank_oracle());
        r.value("det", &det_oracle);
        r.value("invertible", !det_oracle.is_zero());
        if let Ok(inv) = m.inverse_oracle() {
            r.matrix("inverse", &if cfg.column_adjusted { inv.transpose() } else { inv });
        }
        return Ok(());
    }

    let diag = diagonal_psi(s, fs, mode)?;
    r.value("psi.diag", diag.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    let rank = rank_report(s, fs, mode)?;
    r.value("k", rank.k);
    r.value("rank.lower", rank.lower);
    r.value("rank.upper", rank.upper);
    r.value("rank.exact", rank.exact);
    let det = theorem_det(s, fs, mode)?;
    if det != det_oracle {
        return Err(mismatch("determinant", det, det_oracle));
    }
    r.value("det", &det);
    match theorem_inverse(s, fs, mode) {
        Ok(b) => {
            let oracle = m.inverse_oracle()?;
            let eye = Matrix::identity(s.len())?;
            if b != oracle || b.multiply(&m)? != eye {
                return Err(mismatch("inverse", &b, &oracle));
            }
            r.value("invertible", true);
            r.matrix("inverse", &if cfg.column_adjusted { b.transpose() } else { b });
        }
        Err(Error::SingularPsi(i)) => {
            if !det_oracle.is_zero() {
                return Err(mismatch("invertibility", format!("psi vanishes at {i}"), det_oracle));
            }
            r.value("invertible", false);
            r.value("singular.index", i);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> Result<String, CliError> {
    let report = verify::run(args.seed, args.cases, Faults::default());
    let mut r = Report::default();
    r.value("seed", args.seed);
    r.value("cases", args.cases);
    for (prop, (pass, fail)) in &report.tally {
        r.value(&format!("{}.pass", prop.name()), pass);
        r.value(&format!("{}.fail", prop.name()), fail);
    }
    r.value("result", if report.all_passed() { "PASS" } else { "FAIL" });
    let Some(cx) = &report.first_failure else {
        return Ok(r.render(args.format));
    };
    r.value("counterexample.case", cx.case);
    r.value("counterexample.property", cx.property.name());
    r.value("counterexample.message", &cx.message);
    if args.format == Format::Human {
        r.banner(format!("counterexample instance:\n{}", cx.instance.trim_end()));
    } else {
        for (i, line) in cx.instance.lines().enumerate() {
            r.value(&format!("counterexample.instance.{}", i + 1), line);
        }
    }
    Err(CliError {
        code: EXIT_MISMATCH,
        message: format!("property `{}` failed in case {}", cx.property.name(), cx.case),
        output: Some(r.render(args.format)),
    })
}
