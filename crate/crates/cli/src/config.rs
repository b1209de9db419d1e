use std::fs;
use std::path::Path;

use rowadj::numtheory::FamilySpec;
use rowadj::text::{self, Backend, FunctionTable};
use rowadj::{Error, Mode};

use crate::output::Format;
use crate::InputArgs;

/// A failed command: exit code, message, and anything already rendered.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    pub output: Option<String>,
}

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_STRUCTURE: u8 = 3;
pub const EXIT_MISSING: u8 = 4;
pub const EXIT_MISMATCH: u8 = 5;

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into(), output: None }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_)
            | Error::UnknownElement(_)
            | Error::DuplicateElement(_)
            | Error::DuplicateCover(..)
            | Error::Dimension(_) => EXIT_PARSE,
            Error::Cycle(_)
            | Error::NoMeet(..)
            | Error::NoJoin(..)
            | Error::NotClosed(_)
            | Error::InvalidSelection(_)
            | Error::NotAdmissible(_)
            | Error::Domain(_)
            | Error::Singular
            | Error::SingularPsi(_) => EXIT_STRUCTURE,
            Error::MissingValue { .. } => EXIT_MISSING,
            Error::Mismatch(_) => EXIT_MISMATCH,
        };
        CliError::new(code, e.to_string())
    }
}

pub enum FamilySource {
    Spec(FamilySpec),
    Table(FunctionTable),
}

/// Everything a command needs, read from flags and files.
pub struct RunConfig {
    pub backend: Backend,
    pub set: Vec<String>,
    pub family: Option<FamilySource>,
    pub mode: Mode,
    pub column_adjusted: bool,
    pub format: Format,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn split_list(s: &str) -> Vec<String> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(str::to_string).collect()
}

impl RunConfig {
    pub fn load(args: &InputArgs) -> Result<Self, CliError> {
        let (backend, file_set) = match &args.poset {
            Some(path) => {
                let f = text::parse_poset(&read(path)?)?;
                (f.backend, f.set)
            }
            None => (Backend::Divisors, None),
        };
        let set = match (&args.set, file_set, &backend) {
            (Some(list), _, _) => split_list(list),
            (None, Some(s), _) => s,
            (None, None, Backend::Finite(p)) => p.elements().map(|e| p.name(e).to_string()).collect(),
            (None, None, Backend::Divisors) => {
                return Err(CliError::new(EXIT_PARSE, "the divisor backend needs --set or a `set:` line"));
            }
        };
        if set.is_empty() {
            return Err(CliError::new(EXIT_PARSE, "S is empty"));
        }
        let family = match (&args.family, &args.functions) {
            (Some(spec), _) => Some(match spec.strip_prefix("table:") {
                Some(path) => FamilySource::Table(text::parse_functions(&read(Path::new(path))?)?),
                None => FamilySource::Spec(spec.parse()?),
            }),
            (None, Some(path)) => Some(FamilySource::Table(text::parse_functions(&read(path)?)?)),
            (None, None) => None,
        };
        Ok(RunConfig {
            backend,
            set,
            family,
            mode: args.mode.parse()?,
            column_adjusted: args.column_adjusted,
            format: args.format,
        })
    }
}
