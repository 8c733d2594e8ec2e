//! Transition systems: an alphabet together with one {0,1}-matrix per
//! direction (rank 1 or 2 here) and an optional decoration map.

use thiserror::Error;

use crate::mat01::Mat01;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("a transition system needs at least one matrix")]
    NoMatrices,
    #[error("matrix {index} is {got}x{got}, expected {expected}x{expected}")]
    SizeMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("decoration targets letter {target} outside the alphabet of size {alphabet}")]
    DecorationOutOfRange { target: usize, alphabet: usize },
}

/// Decoration (D, delta): a set of admissible starts mapped into the
/// alphabet. K-theory does not depend on it; it is carried for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecorationMap {
    pub names: Vec<String>,
    pub targets: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct TransitionSystem {
    labels: Vec<String>,
    matrices: Vec<Mat01>,
    decoration: Option<DecorationMap>,
}

impl TransitionSystem {
    pub fn new(labels: Vec<String>, matrices: Vec<Mat01>) -> Result<Self, SystemError> {
        if matrices.is_empty() {
            return Err(SystemError::NoMatrices);
        }
        let n = labels.len();
        for (index, m) in matrices.iter().enumerate() {
            if m.n() != n {
                return Err(SystemError::SizeMismatch {
                    index,
                    expected: n,
                    got: m.n(),
                });
            }
        }
        Ok(TransitionSystem {
            labels,
            matrices,
            decoration: None,
        })
    }

    pub fn with_decoration(mut self, decoration: DecorationMap) -> Result<Self, SystemError> {
        let n = self.len();
        if let Some(&target) = decoration.targets.iter().find(|&&t| t >= n) {
            return Err(SystemError::DecorationOutOfRange {
                target,
                alphabet: n,
            });
        }
        self.decoration = Some(decoration);
        Ok(self)
    }

    /// Number of directions (1 or 2).
    pub fn rank(&self) -> usize {
        self.matrices.len()
    }

    /// Alphabet size.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self, direction: usize) -> &Mat01 {
        &self.matrices[direction]
    }

    pub fn matrices(&self) -> &[Mat01] {
        &self.matrices
    }

    pub fn decoration(&self) -> Option<&DecorationMap> {
        self.decoration.as_ref()
    }

    /// Serializes one matrix as sparse triplet text.
    pub fn export_matrix(&self, direction: usize, name: &str) -> String {
        let m = self.matrix(direction);
        let mut out = String::new();
        out.push_str("format 1\n");
        out.push_str(&format!("matrix {} {} {}\n", name, m.n(), m.n()));
        for r in 0..m.n() {
            for c in m.row_ones(r) {
                out.push_str(&format!("{r} {c} 1\n"));
            }
        }
        out
    }

    /// Letter table: one `letter <index> <label>` line per letter.
    pub fn export_letters(&self) -> String {
        let mut out = String::new();
        out.push_str("format 1\n");
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(&format!("letter {i} {label}\n"));
        }
        out
    }
}

/// Parses a single matrix from sparse triplet text.
pub fn parse_matrix(text: &str) -> Result<(String, Mat01), crate::textio::ParseError> {
    use crate::textio::{parse_usize, significant_lines, ParseError};
    let lines = significant_lines(text)?;
    let mut it = lines.iter();
    let header = it
        .next()
        .ok_or_else(|| ParseError::new(0, "empty matrix file"))?;
    if header.fields.len() != 4 || header.fields[0] != "matrix" {
        return Err(ParseError::new(
            header.number,
            "expected header `matrix <name> <n> <n>`",
        ));
    }
    let name = header.fields[1].to_string();
    let rows = parse_usize(header, header.fields[2])?;
    let cols = parse_usize(header, header.fields[3])?;
    if rows != cols {
        return Err(ParseError::new(
            header.number,
            format!("transition matrices are square, got {rows}x{cols}"),
        ));
    }
    let mut m = Mat01::zeros(rows);
    for line in it {
        if line.fields.len() != 3 {
            return Err(ParseError::new(
                line.number,
                "expected entry `<row> <col> 1`",
            ));
        }
        let r = parse_usize(line, line.fields[0])?;
        let c = parse_usize(line, line.fields[1])?;
        if line.fields[2] != "1" {
            return Err(ParseError::new(line.number, "entries must be 1"));
        }
        if r >= rows || c >= cols {
            return Err(ParseError::new(
                line.number,
                format!("entry ({r}, {c}) outside {rows}x{cols}"),
            ));
        }
        m.set(r, c, true);
    }
    Ok((name, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks_sizes() {
        let err = TransitionSystem::new(vec!["a".into()], vec![Mat01::zeros(2)]);
        assert!(matches!(err, Err(SystemError::SizeMismatch { .. })));
        assert!(matches!(
            TransitionSystem::new(vec![], vec![]),
            Err(SystemError::NoMatrices)
        ));
    }

    #[test]
    fn matrix_roundtrip() {
        let sys = TransitionSystem::new(
            vec!["a".into(), "b".into()],
            vec![Mat01::from_rows(&[vec![1, 0], vec![1, 1]])],
        )
        .unwrap();
        let text = sys.export_matrix(0, "M");
        let (name, m) = parse_matrix(&text).unwrap();
        assert_eq!(name, "M");
        assert_eq!(&m, sys.matrix(0));
    }

    #[test]
    fn matrix_parse_errors() {
        assert!(parse_matrix("format 1\nmatrix M 2 3\n").is_err());
        assert!(parse_matrix("matrix M 2 2\n0 0 2\n").is_err());
        assert!(parse_matrix("matrix M 2 2\n5 0 1\n").is_err());
    }
}
