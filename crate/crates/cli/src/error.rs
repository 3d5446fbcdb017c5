use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(metrized_tau::Error),
    Io(std::io::Error),
    Verification(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Library(metrized_tau::Error::TooLarge { vertices, limit, what }) => write!(
                f,
                "{vertices} vertices exceed the limit of {limit} for {what}; \
                 raise --size-limit, pass --allow-large, or use --method analytic for hexagonal tori"
            ),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Verification(failures) => {
                write!(f, "{} check(s) failed", failures.len())?;
                for line in failures {
                    write!(f, "\n  {line}")?;
                }
                Ok(())
            }
        }
    }
}

impl From<metrized_tau::Error> for CliError {
    fn from(e: metrized_tau::Error) -> Self {
        CliError::Library(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}
