//! Ferrers diagrams stored as non-increasing column lengths.
//!
//! Cells are 1-based `(row, col)`. The diagonal `Δ_i` holds the cells with
//! `row + col - 1 = i`, and `(Δ_i ∩ F)_j` is its `j`-th cell counted from the top.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sequences::{self, FerrersSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// Index `i` of the diagonal `Δ_i` containing this cell.
    pub fn diagonal(&self) -> usize {
        self.row + self.col - 1
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.col, self.row)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.row, self.col).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (row, col) = <(usize, usize)>::deserialize(d)?;
        if row == 0 || col == 0 {
            return Err(serde::de::Error::custom("cell coordinates are 1-based"));
        }
        Ok(Cell::new(row, col))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramRepr")]
pub struct FerrersDiagram {
    columns: Vec<usize>,
}

#[derive(Deserialize)]
struct DiagramRepr {
    columns: Vec<usize>,
}

impl TryFrom<DiagramRepr> for FerrersDiagram {
    type Error = Error;
    fn try_from(r: DiagramRepr) -> Result<Self> {
        FerrersDiagram::new(r.columns)
    }
}

impl FerrersDiagram {
    pub fn new(columns: Vec<usize>) -> Result<Self> {
        if let Some(k) = columns.iter().position(|c| *c == 0) {
            return Err(Error::InvalidDiagram(format!(
                "column {} has length 0; column lengths must be positive",
                k + 1
            )));
        }
        if let Some(k) = columns.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!(
                "column lengths must be non-increasing (c_{} = {} < c_{} = {})",
                k + 1,
                columns[k],
                k + 2,
                columns[k + 1]
            )));
        }
        Ok(Self { columns })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `n × m` rectangle.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if rows == 0 {
            return Self::empty();
        }
        Self {
            columns: vec![rows; cols],
        }
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn num_rows(&self) -> usize {
        self.columns.first().copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.columns.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1
            && cell.col >= 1
            && cell.col <= self.columns.len()
            && cell.row <= self.columns[cell.col - 1]
    }

    /// Row lengths, i.e. the conjugate partition.
    pub fn row_lengths(&self) -> Vec<usize> {
        (1..=self.num_rows())
            .map(|i| self.columns.iter().take_while(|c| **c >= i).count())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self {
            columns: self.row_lengths(),
        }
    }

    /// All cells in `(row, col)` order.
    pub fn cells(&self) -> Vec<Cell> {
        let rows = self.row_lengths();
        rows.iter()
            .enumerate()
            .flat_map(|(i, len)| (1..=*len).map(move |j| Cell::new(i + 1, j)))
            .collect()
    }

    /// Builds the diagram occupying exactly `cells`, failing if they are not a Ferrers shape.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self> {
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        let mut columns: Vec<usize> = Vec::new();
        for c in &set {
            if c.row == 0 || c.col == 0 {
                return Err(Error::InvalidDiagram(format!("cell {c} is not 1-based")));
            }
            if columns.len() < c.col {
                columns.resize(c.col, 0);
            }
            columns[c.col - 1] += 1;
        }
        let diagram = Self::new(columns).map_err(|e| {
            Error::InvalidDiagram(format!("cells do not form a Ferrers diagram: {e}"))
        })?;
        if diagram.size() != set.len() || !set.iter().all(|c| diagram.contains(*c)) {
            return Err(Error::InvalidDiagram(
                "cells do not form a Ferrers diagram: a column is not top-aligned".into(),
            ));
        }
        Ok(diagram)
    }

    /// `Δ_i ∩ F` from top to bottom.
    pub fn diagonal_cells(&self, i: usize) -> Vec<Cell> {
        (1..=i)
            .map(|r| Cell::new(r, i + 1 - r))
            .filter(|c| self.contains(*c))
            .collect()
    }

    /// `(Δ_i ∩ F)_j`.
    pub fn diagonal_cell(&self, i: usize, j: usize) -> Option<Cell> {
        if j == 0 {
            return None;
        }
        self.diagonal_cells(i).get(j - 1).copied()
    }

    /// `(i, j)` such that `cell = (Δ_i ∩ F)_j`.
    pub fn diagonal_position(&self, cell: Cell) -> Option<(usize, usize)> {
        if !self.contains(cell) {
            return None;
        }
        let i = cell.diagonal();
        let j = (1..=cell.row)
            .filter(|r| self.contains(Cell::new(*r, i + 1 - r)))
            .count();
        Some((i, j))
    }

    pub fn diagonal_sequence(&self) -> FerrersSequence {
        let len = self
            .columns
            .iter()
            .enumerate()
            .map(|(k, c)| k + c)
            .max()
            .unwrap_or(0);
        let mut d = vec![0usize; len];
        for (k, c) in self.columns.iter().enumerate() {
            for entry in &mut d[k..k + c] {
                *entry += 1;
            }
        }
        FerrersSequence::new(d)
    }

    pub fn degree(&self) -> usize {
        self.diagonal_sequence().max_entry()
    }

    pub fn is_symmetric(&self) -> bool {
        self.columns == self.row_lengths()
    }

    /// `Ξ ∩ F`: the cells `(k, k)` of the diagram.
    pub fn xi_cells(&self) -> Vec<Cell> {
        (1..=self.num_cols())
            .filter(|k| self.columns[k - 1] >= *k)
            .map(|k| Cell::new(k, k))
            .collect()
    }

    pub fn canonical_form(&self) -> Self {
        Self::from_sequence(&self.diagonal_sequence())
            .expect("the diagonal sequence of a diagram is a Ferrers sequence")
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_form()
    }

    /// Canonical (top-aligned) diagram with the given diagonal sequence.
    pub fn from_sequence(seq: &FerrersSequence) -> Result<Self> {
        seq.validate()?;
        let d = seq.normalized();
        let cells = d
            .entries()
            .iter()
            .enumerate()
            .flat_map(|(k, dk)| (1..=*dk).map(move |s| Cell::new(s, k + 2 - s)));
        let diagram = Self::from_cells(cells).map_err(|e| {
            Error::Internal(format!("top-aligned realization of {seq} failed: {e}"))
        })?;
        if diagram.diagonal_sequence() != d {
            return Err(Error::Internal(format!(
                "top-aligned realization of {seq} has the wrong sequence"
            )));
        }
        Ok(diagram)
    }

    /// Some symmetric diagram with the given diagonal sequence.
    ///
    /// Places each diagonal's cells centered on the principal diagonal and
    /// falls back to a search of the `l × l` board if that is not a Ferrers shape.
    pub fn symmetric_from_sequence(seq: &FerrersSequence) -> Result<Self> {
        sequences::validate_symmetric_sequence(seq.entries())?;
        let d = seq.normalized();
        if let Some(diagram) = centered_symmetric(&d) {
            return Ok(diagram);
        }
        let l = d.len();
        enumerate_diagrams(l, l)
            .into_iter()
            .find(|f| f.is_symmetric() && f.diagonal_sequence() == d)
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no symmetric realization of {seq} in the {l}x{l} board"
                ))
            })
    }

    /// One line per row, `#` per cell.
    pub fn render(&self) -> String {
        if self.is_empty() {
            return "(empty)\n".into();
        }
        let mut out = String::new();
        for len in self.row_lengths() {
            out.push_str(&"#".repeat(len));
            out.push('\n');
        }
        out
    }
}

fn centered_symmetric(d: &FerrersSequence) -> Option<FerrersDiagram> {
    let mut cells = Vec::new();
    for (k, dk) in d.entries().iter().enumerate() {
        let i = k + 1;
        let on = |r: usize| Cell::new(r, i + 1 - r);
        if i % 2 == 1 {
            let c = i.div_ceil(2);
            if dk % 2 == 1 {
                let h = (dk - 1) / 2;
                cells.extend((c - h..=c + h).map(on));
            } else {
                for t in 1..=dk / 2 {
                    cells.push(on(c - t));
                    cells.push(on(c + t));
                }
            }
        } else {
            if dk % 2 == 1 {
                return None;
            }
            for t in 1..=dk / 2 {
                cells.push(on(i / 2 + 1 - t));
                cells.push(on(i / 2 + t));
            }
        }
    }
    let f = FerrersDiagram::from_cells(cells).ok()?;
    (f.is_symmetric() && f.diagonal_sequence() == *d).then_some(f)
}

impl fmt::Display for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for FerrersDiagram {
    type Err = Error;

    /// Accepts `4,3,3,2,1`, optionally bracketed; the empty string is the empty diagram.
    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let columns = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<i64>()
                    .map_err(|_| Error::InvalidDiagram(format!("'{part}' is not an integer")))
                    .and_then(|v| {
                        if v <= 0 {
                            Err(Error::InvalidDiagram(format!(
                                "column length {v} is not positive"
                            )))
                        } else {
                            Ok(v as usize)
                        }
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(columns)
    }
}

/// All diagrams with at most `max_cols` columns of length at most `max_rows`,
/// in lexicographic order of their column vectors (the empty diagram first).
pub fn enumerate_diagrams(max_rows: usize, max_cols: usize) -> Vec<FerrersDiagram> {
    fn go(
        prefix: &mut Vec<usize>,
        max_rows: usize,
        max_cols: usize,
        out: &mut Vec<FerrersDiagram>,
    ) {
        out.push(FerrersDiagram {
            columns: prefix.clone(),
        });
        if prefix.len() == max_cols {
            return;
        }
        let cap = prefix.last().copied().unwrap_or(max_rows);
        for c in 1..=cap {
            prefix.push(c);
            go(prefix, max_rows, max_cols, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max_rows, max_cols, &mut out);
    out
}

/// Symmetric diagrams inside the `n × n` board, in the order of [`enumerate_diagrams`].
pub fn enumerate_symmetric_diagrams(n: usize) -> Vec<FerrersDiagram> {
    enumerate_diagrams(n, n)
        .into_iter()
        .filter(|f| f.is_symmetric())
        .collect()
}

/// Groups diagrams by diagonal sequence, preserving input order inside each class.
pub fn equivalence_classes(
    diagrams: &[FerrersDiagram],
) -> BTreeMap<FerrersSequence, Vec<FerrersDiagram>> {
    let mut classes: BTreeMap<FerrersSequence, Vec<FerrersDiagram>> = BTreeMap::new();
    for f in diagrams {
        classes
            .entry(f.diagonal_sequence())
            .or_default()
            .push(f.clone());
    }
    classes
}
