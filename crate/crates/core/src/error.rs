use alloc::string::String;

/// Errors raised by the invariant toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured maximum {max}")]
    Size {
        what: &'static str,
        value: u64,
        max: u64,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range [0, {bound})")]
    IndexOutOfRange { index: u64, bound: u64 },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("resource limit reached after {explored} steps ({classes} classes found so far)")]
    Resource { explored: u64, classes: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn check_size(what: &'static str, value: u64, max: u64) -> Result<()> {
    if value > max {
        Err(Error::Size { what, value, max })
    } else {
        Ok(())
    }
}
