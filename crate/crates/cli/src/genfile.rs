//! Generator files: a `degree n` line, then one generator per line in cycle
//! notation. `#` starts a comment; blank lines are ignored.

use std::fmt;
use std::path::Path;

use sgs_core::perm::ParseCyclesError;
use sgs_core::{parse_cycles, GeneratorSet};

#[derive(Debug)]
pub enum GenFileError {
    Io(std::io::Error),
    MissingDegree,
    BadDegree {
        line: usize,
        text: String,
    },
    Generator {
        line: usize,
        source: ParseCyclesError,
    },
}

impl GenFileError {
    pub fn is_degree_violation(&self) -> bool {
        matches!(self, GenFileError::Generator { source, .. } if source.is_degree_violation())
    }
}

impl fmt::Display for GenFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenFileError::Io(e) => write!(f, "{e}"),
            GenFileError::MissingDegree => f.write_str("missing 'degree n' line"),
            GenFileError::BadDegree { line, text } => {
                write!(
                    f,
                    "line {line}: expected 'degree n' with n >= 1, found '{text}'"
                )
            }
            GenFileError::Generator { line, source } => write!(f, "line {line}: {source}"),
        }
    }
}

impl std::error::Error for GenFileError {}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

pub fn parse(text: &str, label: &str) -> Result<GeneratorSet, GenFileError> {
    let mut degree = None;
    let mut perms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        match degree {
            None => {
                let n = line
                    .strip_prefix("degree")
                    .and_then(|rest| rest.trim().parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| GenFileError::BadDegree {
                        line: lineno,
                        text: line.to_string(),
                    })?;
                degree = Some(n);
            }
            Some(n) => {
                let p = parse_cycles(line, n).map_err(|source| GenFileError::Generator {
                    line: lineno,
                    source,
                })?;
                perms.push(p);
            }
        }
    }
    let degree = degree.ok_or(GenFileError::MissingDegree)?;
    Ok(GeneratorSet::new(degree, perms, label).expect("generators parsed within degree"))
}

pub fn read(path: &Path) -> Result<GeneratorSet, GenFileError> {
    let text = std::fs::read_to_string(path).map_err(GenFileError::Io)?;
    parse(&text, &path.display().to_string())
}
