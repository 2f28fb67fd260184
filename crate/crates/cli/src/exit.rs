//! Process exit codes.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | completed (any verdict) |
//! | 1 | I/O failure |
//! | 2 | usage error |
//! | 3 | parse error in a spec, `.cay` file, catalog or experiment file |
//! | 4 | table fails the group axioms |
//! | 5 | memory budget exceeded |
//! | 6 | unsupported input (caps, parameters, not semisimple, ...) |
//! | 7 | oracle contradiction in an experiment |
//! | 8 | canonization left a class of size above one |

use std::fmt;

use wlgroup::Error;

pub const IO: u8 = 1;
pub const USAGE: u8 = 2;
pub const PARSE: u8 = 3;
pub const INVALID_GROUP: u8 = 4;
pub const BUDGET: u8 = 5;
pub const UNSUPPORTED: u8 = 6;
pub const CONTRADICTION: u8 = 7;
pub const NON_CANONICAL: u8 = 8;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Self {
        CliError { code, kind, message: message.into() }
    }

    pub fn io(context: impl fmt::Display, e: std::io::Error) -> Self {
        CliError::new(IO, "io", format!("{context}: {e}"))
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::new(USAGE, "usage", message)
    }

    pub fn in_context(mut self, context: impl fmt::Display) -> Self {
        self.message = format!("{context}: {}", self.message);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn kind_of(e: &Error) -> (u8, &'static str) {
    match e {
        Error::Parse { .. } => (PARSE, "parse"),
        Error::Malformed(_)
        | Error::EntryOutOfRange { .. }
        | Error::NoIdentity
        | Error::NoIdentityAtZero { .. }
        | Error::NotLatinSquare(_)
        | Error::NotAssociative(..)
        | Error::NoInverse(_) => (INVALID_GROUP, "invalid_group"),
        Error::MemoryBudget { .. } => (BUDGET, "memory_budget"),
        Error::NonCanonicalWarning { .. } => (NON_CANONICAL, "non_canonical"),
        _ => (UNSUPPORTED, "unsupported"),
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = kind_of(&e);
        CliError::new(code, kind, e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
