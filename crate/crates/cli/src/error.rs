use stone_core::ErrorClass;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("syntax error at byte {offset}: expected one of {expected:?}, found {found}")]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("mixed characteristic at byte {offset}: F_{left} and F_{right}")]
    MixedCharacteristic {
        left: u32,
        right: u32,
        offset: usize,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] stone_core::Error),
}

impl CliError {
    /// 1 usage or parse error, 2 domain error, 3 cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::MixedCharacteristic { .. } | CliError::Usage(_) => {
                1
            }
            CliError::Core(e) => match e.class() {
                ErrorClass::Domain => 2,
                ErrorClass::Cap => 3,
            },
        }
    }
}
