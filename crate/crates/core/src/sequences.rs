//! Ferrers sequences: the diagonal cardinalities `(d_1, ..., d_l)` of a diagram.
//!
//! Sequences are not validated on construction because the recursions pass
//! raw intermediate lists around; use [`FerrersSequence::validate`] at the edges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FerrersSequence {
    sequence: Vec<usize>,
}

impl FerrersSequence {
    pub fn new(entries: Vec<usize>) -> Self {
        Self { sequence: entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.sequence
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// `d_i` with 1-based `i`; zero past the end.
    pub fn get(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.sequence.get(i - 1).copied().unwrap_or(0)
    }

    /// Σ d_i, the number of cells of any realization.
    pub fn total(&self) -> usize {
        self.sequence.iter().sum()
    }

    /// Number of odd entries; equals `|Ξ ∩ F|` for a symmetric realization.
    pub fn odd_count(&self) -> usize {
        self.sequence.iter().filter(|d| *d % 2 == 1).count()
    }

    /// Maximum entry, 0 for the empty sequence. No validity check.
    pub fn max_entry(&self) -> usize {
        self.sequence.iter().copied().max().unwrap_or(0)
    }

    pub fn normalized(&self) -> Self {
        normalize(&self.sequence)
    }

    pub fn is_valid(&self) -> bool {
        is_ferrers_sequence(&self.sequence)
    }

    pub fn validate(&self) -> Result<()> {
        validate_ferrers_sequence(&self.sequence)
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric_sequence(&self.sequence)
    }
}

impl From<Vec<usize>> for FerrersSequence {
    fn from(v: Vec<usize>) -> Self {
        Self::new(v)
    }
}

impl fmt::Display for FerrersSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sequence.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for FerrersSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let entries = s
            .split(',')
            .map(|part| {
                part.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidSequence(format!(
                        "'{}' is not a non-negative integer",
                        part.trim()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(entries))
    }
}

/// A sequence known to be realized by some symmetric diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SymmetricFerrersSequence(FerrersSequence);

impl SymmetricFerrersSequence {
    pub fn new(seq: FerrersSequence) -> Result<Self> {
        validate_symmetric_sequence(seq.entries())?;
        Ok(Self(seq))
    }

    pub fn as_sequence(&self) -> &FerrersSequence {
        &self.0
    }

    pub fn into_inner(self) -> FerrersSequence {
        self.0
    }
}

/// Strips leading and trailing zeros.
pub fn normalize(entries: &[usize]) -> FerrersSequence {
    let start = entries.iter().position(|d| *d != 0);
    match start {
        None => FerrersSequence::default(),
        Some(a) => {
            let b = entries.iter().rposition(|d| *d != 0).unwrap_or(a);
            FerrersSequence::new(entries[a..=b].to_vec())
        }
    }
}

/// Length of the initial staircase `1, 2, ..., r`.
fn staircase_len(entries: &[usize]) -> usize {
    entries
        .iter()
        .enumerate()
        .take_while(|(i, d)| **d == i + 1)
        .count()
}

/// Checks `normalize(entries)`, since zeros at either end do not change the diagram.
pub fn validate_ferrers_sequence(entries: &[usize]) -> Result<()> {
    let normalized = normalize(entries);
    let entries = normalized.entries();
    if entries.is_empty() {
        return Ok(());
    }
    if entries[0] != 1 {
        return Err(Error::InvalidSequence("d_1 must equal 1".into()));
    }
    let r = staircase_len(entries);
    for k in r..entries.len() {
        if entries[k] > entries[k - 1] {
            return Err(Error::InvalidSequence(format!(
                "d_{} = {} exceeds d_{} = {}; entries after the initial staircase 1..{} must be non-increasing",
                k + 1,
                entries[k],
                k,
                entries[k - 1],
                r
            )));
        }
    }
    Ok(())
}

pub fn is_ferrers_sequence(entries: &[usize]) -> bool {
    validate_ferrers_sequence(entries).is_ok()
}

/// Arithmetic test for symmetric realizability: a Ferrers sequence whose
/// even-indexed entries are all even and whose odd entries sit at an initial
/// run of odd indices `1, 3, ..., 2K-1`.
pub fn validate_symmetric_sequence(entries: &[usize]) -> Result<()> {
    validate_ferrers_sequence(entries)?;
    let normalized = normalize(entries);
    let entries = normalized.entries();
    let mut run_open = true;
    let mut last_even_odd_index = 0;
    for (k, d) in entries.iter().enumerate() {
        let i = k + 1;
        if i % 2 == 0 {
            if d % 2 == 1 {
                return Err(Error::InvalidSequence(format!(
                    "d_{i} = {d} must be even at even index {i} for a symmetric diagram"
                )));
            }
        } else if d % 2 == 1 {
            if !run_open {
                return Err(Error::InvalidSequence(format!(
                    "d_{i} = {d} is odd but d_{last_even_odd_index} is even; odd entries must occupy an initial run of odd indices"
                )));
            }
        } else if run_open {
            run_open = false;
            last_even_odd_index = i;
        }
    }
    Ok(())
}

pub fn is_symmetric_sequence(entries: &[usize]) -> bool {
    validate_symmetric_sequence(entries).is_ok()
}

pub fn sequence_degree(s: &FerrersSequence) -> Result<usize> {
    s.validate()?;
    Ok(s.max_entry())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ferrers_predicate() {
        assert!(is_ferrers_sequence(&[1, 2, 3, 3, 2]));
        assert!(is_ferrers_sequence(&[1, 1, 0]));
        assert!(!is_ferrers_sequence(&[2, 1]));
        assert!(is_ferrers_sequence(&[]));
        assert!(is_ferrers_sequence(&[0, 0]));
        assert!(!is_ferrers_sequence(&[1, 2, 1, 2]));
        assert!(is_ferrers_sequence(&[0, 1]));
    }

    #[test]
    fn named_rule_in_errors() {
        let err = validate_ferrers_sequence(&[2, 1]).unwrap_err();
        assert!(err.to_string().contains("d_1 must equal 1"));
        let err = validate_symmetric_sequence(&[1, 2, 3, 3]).unwrap_err();
        assert!(err.to_string().contains("even index 4"));
    }

    #[test]
    fn symmetric_predicate() {
        assert!(is_symmetric_sequence(&[1, 2, 3, 2, 1]));
        assert!(is_symmetric_sequence(&[1, 2, 2]));
        assert!(!is_symmetric_sequence(&[1, 2, 3, 3]));
        assert!(!is_symmetric_sequence(&[1, 2, 2, 2, 1]));
        assert!(is_symmetric_sequence(&[1, 2, 3, 4, 3, 2]));
        assert!(is_symmetric_sequence(&[]));
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize(&[0, 1, 2]).entries(), &[1, 2]);
        assert_eq!(normalize(&[1, 0]).entries(), &[1]);
        assert!(normalize(&[0, 0]).is_empty());
        assert_eq!(normalize(&[0, 1, 0, 2, 0]).entries(), &[1, 0, 2]);
    }

    #[test]
    fn degrees() {
        assert_eq!(
            sequence_degree(&FerrersSequence::new(vec![1, 2, 3, 4, 3])).unwrap(),
            4
        );
        assert_eq!(sequence_degree(&FerrersSequence::default()).unwrap(), 0);
        assert_eq!(
            sequence_degree(&FerrersSequence::new(vec![1, 2, 2, 2])).unwrap(),
            2
        );
        assert!(sequence_degree(&FerrersSequence::new(vec![2])).is_err());
    }

    #[test]
    fn text_and_json() {
        let s: FerrersSequence = "1,2,3,3,2".parse().unwrap();
        assert_eq!(s.to_string(), "1,2,3,3,2");
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"sequence":[1,2,3,3,2]}"#
        );
        assert!("".parse::<FerrersSequence>().unwrap().is_empty());
        assert!("1,x".parse::<FerrersSequence>().is_err());
    }
}
