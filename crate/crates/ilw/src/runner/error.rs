use std::fmt;

/// One problem found while reading a configuration document.
#[derive(Clone, Debug, PartialEq)]
pub enum ConfigProblem {
    Syntax { line: usize, column: usize, message: String },
    UnknownKey(String),
    Invalid { key: String, message: String },
}

impl fmt::Display for ConfigProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigProblem::Syntax { line, column, message } => {
                write!(f, "syntax error at line {line}, column {column}: {message}")
            }
            ConfigProblem::UnknownKey(key) => write!(f, "unknown key `{key}`"),
            ConfigProblem::Invalid { key, message } => write!(f, "`{key}`: {message}"),
        }
    }
}

/// Every problem found in a configuration document.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError {
    pub problems: Vec<ConfigProblem>,
}

impl ConfigError {
    pub fn single(problem: ConfigProblem) -> Self {
        Self { problems: vec![problem] }
    }

    pub fn invalid(key: impl Into<String>, message: impl Into<String>) -> Self {
        Self::single(ConfigProblem::Invalid { key: key.into(), message: message.into() })
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.problems.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  - {p}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}
