//! Non-attacking rook placements, `inv`, attack sets, puncturing and reductions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagrams::{Cell, FerrersDiagram};
use crate::error::{Error, Result};

/// Cells pairwise distinct in row and column, kept sorted by `(row, col)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "PlacementRepr")]
pub struct RookPlacement {
    cells: Vec<Cell>,
}

#[derive(Deserialize)]
struct PlacementRepr {
    cells: Vec<Cell>,
}

impl TryFrom<PlacementRepr> for RookPlacement {
    type Error = Error;
    fn try_from(r: PlacementRepr) -> Result<Self> {
        RookPlacement::new(r.cells)
    }
}

impl RookPlacement {
    pub fn new(mut cells: Vec<Cell>) -> Result<Self> {
        cells.sort();
        cells.dedup();
        let rows: BTreeSet<usize> = cells.iter().map(|c| c.row).collect();
        let cols: BTreeSet<usize> = cells.iter().map(|c| c.col).collect();
        if rows.len() != cells.len() || cols.len() != cells.len() {
            return Err(Error::InvalidPlacement(
                "two rooks share a row or a column".into(),
            ));
        }
        Ok(Self { cells })
    }

    fn from_sorted_unchecked(mut cells: Vec<Cell>) -> Self {
        cells.sort();
        Self { cells }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn is_inside(&self, f: &FerrersDiagram) -> bool {
        self.cells.iter().all(|c| f.contains(*c))
    }

    /// Off-diagonal rooks only, closed under transposition.
    pub fn is_alternating(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.row != c.col && self.contains(c.transpose()))
    }

    /// `(t, s)` if the placement splits as an alternating part of size `2t`
    /// plus `s` rooks on the principal diagonal.
    pub fn symmetric_split(&self) -> Option<(usize, usize)> {
        let s = self.cells.iter().filter(|c| c.row == c.col).count();
        let closed = self
            .cells
            .iter()
            .all(|c| c.row == c.col || self.contains(c.transpose()));
        closed.then(|| ((self.cells.len() - s) / 2, s))
    }

    pub fn satisfies(&self, kind: PlacementKind) -> bool {
        match kind {
            PlacementKind::General => true,
            PlacementKind::Alternating => self.is_alternating(),
            PlacementKind::Symmetric { t, s } => self.symmetric_split() == Some((t, s)),
        }
    }
}

impl fmt::Display for RookPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlacementKind {
    General,
    Alternating,
    Symmetric { t: usize, s: usize },
}

fn require_symmetric(f: &FerrersDiagram) -> Result<()> {
    if f.is_symmetric() {
        Ok(())
    } else {
        Err(Error::NotSymmetric(f.to_string()))
    }
}

/// `NAR(F, r)` in lexicographic order of the sorted cell lists.
pub fn enumerate_placements(f: &FerrersDiagram, r: usize) -> Vec<RookPlacement> {
    fn go(
        cols: &[usize],
        col: usize,
        left: usize,
        used: &mut Vec<bool>,
        acc: &mut Vec<Cell>,
        out: &mut Vec<RookPlacement>,
    ) {
        if left == 0 {
            out.push(RookPlacement::from_sorted_unchecked(acc.clone()));
            return;
        }
        if cols.len() - col < left {
            return;
        }
        for row in 1..=cols[col] {
            if !used[row] {
                used[row] = true;
                acc.push(Cell::new(row, col + 1));
                go(cols, col + 1, left - 1, used, acc, out);
                acc.pop();
                used[row] = false;
            }
        }
        go(cols, col + 1, left, used, acc, out);
    }
    let mut out = Vec::new();
    let mut used = vec![false; f.num_rows() + 1];
    go(f.columns(), 0, r, &mut used, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Union over rooks `(i, j)` of the column segment above and the row segment to the left.
pub fn atk(p: &RookPlacement) -> BTreeSet<Cell> {
    let mut out = BTreeSet::new();
    for c in p.cells() {
        out.extend((1..=c.row).map(|r| Cell::new(r, c.col)));
        out.extend((1..c.col).map(|k| Cell::new(c.row, k)));
    }
    out
}

pub fn inv(f: &FerrersDiagram, p: &RookPlacement) -> Result<usize> {
    if let Some(c) = p.cells().iter().find(|c| !f.contains(**c)) {
        return Err(Error::InvalidPlacement(format!(
            "rook {c} lies outside {f}"
        )));
    }
    Ok(f.size() - atk(p).len())
}

/// Vertex-disjoint transpose pairs `{(a,b),(b,a)}` with `a < b`, `k` pairs at a time.
fn pair_matchings(f: &FerrersDiagram, k: usize) -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> = f
        .cells()
        .into_iter()
        .filter(|c| c.row < c.col)
        .map(|c| (c.row, c.col))
        .collect();
    fn go(
        edges: &[(usize, usize)],
        from: usize,
        left: usize,
        used: &mut BTreeSet<usize>,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for e in from..edges.len() {
            let (a, b) = edges[e];
            if used.contains(&a) || used.contains(&b) {
                continue;
            }
            used.insert(a);
            used.insert(b);
            acc.push((a, b));
            go(edges, e + 1, left - 1, used, acc, out);
            acc.pop();
            used.remove(&a);
            used.remove(&b);
        }
    }
    let mut out = Vec::new();
    go(
        &edges,
        0,
        k,
        &mut BTreeSet::new(),
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn pairs_to_cells(pairs: &[(usize, usize)]) -> Vec<Cell> {
    pairs
        .iter()
        .flat_map(|(a, b)| [Cell::new(*a, *b), Cell::new(*b, *a)])
        .collect()
}

/// `NAR^alt(F, r)`; empty for odd `r`.
pub fn enumerate_alternating(f: &FerrersDiagram, r: usize) -> Result<Vec<RookPlacement>> {
    require_symmetric(f)?;
    if r % 2 == 1 {
        return Ok(Vec::new());
    }
    let mut out: Vec<RookPlacement> = pair_matchings(f, r / 2)
        .iter()
        .map(|m| RookPlacement::from_sorted_unchecked(pairs_to_cells(m)))
        .collect();
    out.sort();
    Ok(out)
}

/// `NAR^sym(F, t, s)`: an alternating part of size `2t` plus `s` rooks on `Ξ`.
pub fn enumerate_symmetric(f: &FerrersDiagram, t: usize, s: usize) -> Result<Vec<RookPlacement>> {
    require_symmetric(f)?;
    let xi: Vec<usize> = f.xi_cells().iter().map(|c| c.row).collect();
    let mut out = Vec::new();
    for m in pair_matchings(f, t) {
        let used: BTreeSet<usize> = m.iter().flat_map(|(a, b)| [*a, *b]).collect();
        let free: Vec<usize> = xi.iter().copied().filter(|k| !used.contains(k)).collect();
        for chosen in subsets(&free, s) {
            let mut cells = pairs_to_cells(&m);
            cells.extend(chosen.iter().map(|k| Cell::new(*k, *k)));
            out.push(RookPlacement::from_sorted_unchecked(cells));
        }
    }
    out.sort();
    Ok(out)
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (idx, x) in items.iter().enumerate() {
        for mut rest in subsets(&items[idx + 1..], k - 1) {
            rest.insert(0, *x);
            out.push(rest);
        }
    }
    out
}

/// Removes the last nonempty diagonal.
pub fn puncture(f: &FerrersDiagram) -> Result<FerrersDiagram> {
    if f.is_empty() {
        return Err(Error::InvalidDiagram(
            "cannot puncture the empty diagram".into(),
        ));
    }
    let last = f.diagonal_sequence().len();
    FerrersDiagram::from_cells(f.cells().into_iter().filter(|c| c.diagonal() < last))
}

/// Drops `removed`, pushes every column's survivors to the top, drops empty
/// columns and stably sorts the rest by decreasing length. Returns the new
/// diagram with the position of every surviving cell.
fn realign(f: &FerrersDiagram, removed: &BTreeSet<Cell>) -> (FerrersDiagram, BTreeMap<Cell, Cell>) {
    let mut survivors: Vec<(usize, Vec<usize>)> = Vec::new();
    for (k, len) in f.columns().iter().enumerate() {
        let col = k + 1;
        let rows: Vec<usize> = (1..=*len)
            .filter(|r| !removed.contains(&Cell::new(*r, col)))
            .collect();
        if !rows.is_empty() {
            survivors.push((col, rows));
        }
    }
    survivors.sort_by_key(|s| std::cmp::Reverse(s.1.len()));
    let mut map = BTreeMap::new();
    let mut columns = Vec::with_capacity(survivors.len());
    for (new_k, (old_col, rows)) in survivors.iter().enumerate() {
        for (new_r, old_r) in rows.iter().enumerate() {
            map.insert(Cell::new(*old_r, *old_col), Cell::new(new_r + 1, new_k + 1));
        }
        columns.push(rows.len());
    }
    let diagram = FerrersDiagram::new(columns).expect("sorted positive column lengths");
    (diagram, map)
}

fn reduction_removal(f: &FerrersDiagram, i: usize, j: usize) -> Result<BTreeSet<Cell>> {
    let cell = f
        .diagonal_cell(i, j)
        .ok_or_else(|| Error::OutOfRange(format!("no cell (Δ_{i} ∩ F)_{j} in {f}")))?;
    let mut removed = atk(&RookPlacement::from_sorted_unchecked(vec![cell]));
    for c in f.cells() {
        let (s, t) = f.diagonal_position(c).expect("cell of f");
        if (s, t) > (i, j) {
            removed.insert(c);
        }
    }
    Ok(removed)
}

fn reduce_with_map(
    f: &FerrersDiagram,
    i: usize,
    j: usize,
) -> Result<(FerrersDiagram, BTreeMap<Cell, Cell>)> {
    let removed = reduction_removal(f, i, j)?;
    Ok(realign(f, &removed))
}

/// `Π(F, i, j)`.
pub fn reduce(f: &FerrersDiagram, i: usize, j: usize) -> Result<FerrersDiagram> {
    reduce_with_map(f, i, j).map(|(d, _)| d)
}

/// `Π(F, P)`: reduce by the lexicographically greatest rook, carry the remaining
/// rooks into the realigned diagram and repeat.
pub fn reduce_placement(f: &FerrersDiagram, p: &RookPlacement) -> Result<FerrersDiagram> {
    if p.is_empty() {
        return Err(Error::InvalidPlacement(
            "reduction needs a nonempty placement".into(),
        ));
    }
    if !p.is_inside(f) {
        return Err(Error::InvalidPlacement(format!("{p} is not inside {f}")));
    }
    let mut diagram = f.clone();
    let mut rooks: Vec<Cell> = p.cells().to_vec();
    while !rooks.is_empty() {
        let (idx, (i, j)) = rooks
            .iter()
            .enumerate()
            .map(|(k, c)| {
                (
                    k,
                    diagram.diagonal_position(*c).expect("rook inside diagram"),
                )
            })
            .max_by_key(|(_, pos)| *pos)
            .expect("nonempty");
        rooks.swap_remove(idx);
        let (next, map) = reduce_with_map(&diagram, i, j)?;
        rooks = rooks
            .iter()
            .map(|c| {
                map.get(c).copied().ok_or_else(|| {
                    Error::Internal(format!(
                        "rook {c} did not survive the reduction at ({i},{j})"
                    ))
                })
            })
            .collect::<Result<_>>()?;
        diagram = next;
    }
    Ok(diagram)
}

/// `Π^sym(F, i, j)` for the transpose pair at positions `j` and `d_i + 1 - j` of `Δ_i ∩ F`.
pub fn reduce_symmetric(f: &FerrersDiagram, i: usize, j: usize) -> Result<FerrersDiagram> {
    require_symmetric(f)?;
    let diag = f.diagonal_cells(i);
    let d = diag.len();
    if j == 0 || j > d / 2 {
        return Err(Error::OutOfRange(format!(
            "symmetric reduction needs 1 ≤ j ≤ {} on Δ_{i} of {f}, got j = {j}",
            d / 2
        )));
    }
    let a = diag[j - 1];
    let b = diag[d - j];
    let mut removed = atk(&RookPlacement::from_sorted_unchecked(vec![a, b]));
    removed.extend(diag[j..d - j].iter().copied());
    removed.extend(f.cells().into_iter().filter(|c| c.diagonal() > i));
    Ok(realign(f, &removed).0)
}

pub fn inv_histogram(f: &FerrersDiagram, r: usize) -> BTreeMap<usize, u64> {
    histogram(f, &enumerate_placements(f, r))
}

pub fn alt_inv_histogram(f: &FerrersDiagram, r: usize) -> Result<BTreeMap<usize, u64>> {
    Ok(histogram(f, &enumerate_alternating(f, r)?))
}

pub fn sym_inv_histogram(f: &FerrersDiagram, t: usize, s: usize) -> Result<BTreeMap<usize, u64>> {
    Ok(histogram(f, &enumerate_symmetric(f, t, s)?))
}

fn histogram(f: &FerrersDiagram, ps: &[RookPlacement]) -> BTreeMap<usize, u64> {
    let mut h = BTreeMap::new();
    for p in ps {
        *h.entry(f.size() - atk(p).len()).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(cols: &[usize]) -> FerrersDiagram {
        FerrersDiagram::new(cols.to_vec()).unwrap()
    }

    fn rp(cells: &[(usize, usize)]) -> RookPlacement {
        RookPlacement::new(cells.iter().map(|(r, c)| Cell::new(*r, *c)).collect()).unwrap()
    }

    #[test]
    fn placements_of_two_by_two() {
        assert_eq!(
            enumerate_placements(&fd(&[2, 2]), 2),
            vec![rp(&[(1, 1), (2, 2)]), rp(&[(1, 2), (2, 1)])]
        );
        assert_eq!(
            enumerate_placements(&fd(&[4, 3, 3, 2, 1]), 0),
            vec![RookPlacement::empty()]
        );
        assert!(enumerate_placements(&fd(&[4, 3, 3, 2, 1]), 5).is_empty());
    }

    #[test]
    fn attacking_rooks_rejected() {
        assert!(RookPlacement::new(vec![Cell::new(1, 1), Cell::new(1, 2)]).is_err());
        assert!(inv(&fd(&[1]), &rp(&[(2, 1)])).is_err());
    }

    #[test]
    fn inv_values() {
        let f = fd(&[4, 3, 3, 2, 1]);
        let p = rp(&[(2, 4), (3, 2), (4, 1)]);
        assert_eq!(inv(&f, &p).unwrap(), 3);
        assert_eq!(inv(&fd(&[2, 2]), &rp(&[(2, 2)])).unwrap(), 1);
        assert_eq!(inv(&f, &RookPlacement::empty()).unwrap(), 13);
    }

    #[test]
    fn attack_set() {
        let p = rp(&[(2, 4), (3, 2), (4, 1)]);
        let expected: BTreeSet<Cell> = [
            (1, 1),
            (1, 2),
            (1, 4),
            (2, 1),
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 1),
            (3, 2),
            (4, 1),
        ]
        .iter()
        .map(|(r, c)| Cell::new(*r, *c))
        .collect();
        assert_eq!(atk(&p), expected);
        assert!(atk(&RookPlacement::empty()).is_empty());
        assert_eq!(atk(&rp(&[(1, 1)])).len(), 1);
    }

    #[test]
    fn alternating_and_symmetric() {
        assert_eq!(
            enumerate_alternating(&fd(&[2, 2]), 2).unwrap(),
            vec![rp(&[(1, 2), (2, 1)])]
        );
        assert!(enumerate_alternating(&fd(&[3, 3, 3]), 3)
            .unwrap()
            .is_empty());
        assert!(enumerate_alternating(&fd(&[1]), 2).unwrap().is_empty());
        assert_eq!(
            enumerate_alternating(&fd(&[3, 1]), 2),
            Err(Error::NotSymmetric("[3,1]".into()))
        );
        assert_eq!(
            enumerate_symmetric(&fd(&[2, 1]), 0, 1).unwrap(),
            vec![rp(&[(1, 1)])]
        );
        assert_eq!(
            enumerate_symmetric(&fd(&[2, 2]), 1, 0).unwrap(),
            vec![rp(&[(1, 2), (2, 1)])]
        );
        assert!(enumerate_symmetric(&fd(&[2, 2]), 1, 2).unwrap().is_empty());
        assert_eq!(
            rp(&[(1, 2), (2, 1), (3, 3)]).symmetric_split(),
            Some((1, 1))
        );
    }

    #[test]
    fn punctures() {
        let p = puncture(&fd(&[4, 3, 3, 2, 1])).unwrap();
        assert_eq!(p.diagonal_sequence().entries(), &[1, 2, 3, 4]);
        assert_eq!(p, fd(&[4, 3, 2, 1]));
        assert_eq!(puncture(&fd(&[1])).unwrap(), FerrersDiagram::empty());
        assert_eq!(puncture(&fd(&[2, 2])).unwrap(), fd(&[2, 1]));
        assert!(puncture(&FerrersDiagram::empty()).is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce(&fd(&[4, 3, 3, 2, 1]), 4, 2).unwrap(), fd(&[2, 1, 1]));
        assert_eq!(reduce(&fd(&[2, 2]), 3, 1).unwrap(), fd(&[1]));
        assert_eq!(reduce(&fd(&[1]), 1, 1).unwrap(), FerrersDiagram::empty());
        assert!(matches!(reduce(&fd(&[1]), 1, 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn iterated_reductions() {
        let f = fd(&[4, 3, 3, 2, 1]);
        let p = rp(&[(4, 1), (2, 3)]);
        assert_eq!(reduce_placement(&f, &p).unwrap(), fd(&[1, 1]));
        assert_eq!(
            reduce_placement(&f, &rp(&[(2, 3)])).unwrap(),
            reduce(&f, 4, 2).unwrap()
        );
        assert_eq!(
            reduce_placement(&fd(&[2, 2]), &rp(&[(1, 2), (2, 1)])).unwrap(),
            FerrersDiagram::empty()
        );
    }

    #[test]
    fn symmetric_reductions() {
        assert_eq!(
            reduce_symmetric(&fd(&[5, 5, 3, 2, 2]), 5, 2).unwrap(),
            fd(&[3, 1, 1])
        );
        assert_eq!(
            reduce_symmetric(&fd(&[2, 2]), 2, 1).unwrap(),
            FerrersDiagram::empty()
        );
        // The pair (1,3),(3,1) with the centre (2,2) and the later diagonals cover the board.
        assert_eq!(
            reduce_symmetric(&fd(&[3, 3, 3]), 3, 1).unwrap(),
            FerrersDiagram::empty()
        );
        assert!(reduce_symmetric(&fd(&[3, 1]), 2, 1).is_err());
        assert!(reduce_symmetric(&fd(&[2, 2]), 3, 1).is_err());
    }

    #[test]
    fn histograms() {
        assert_eq!(
            inv_histogram(&fd(&[2, 2]), 2),
            BTreeMap::from([(0, 1), (1, 1)])
        );
        assert_eq!(
            inv_histogram(&fd(&[4, 3, 3, 2, 1]), 0),
            BTreeMap::from([(13, 1)])
        );
        assert_eq!(
            inv_histogram(&fd(&[3, 1]), 2),
            BTreeMap::from([(0, 1), (1, 1)])
        );
    }

    #[test]
    fn placement_json() {
        let p = rp(&[(4, 1), (2, 4), (3, 2)]);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"cells":[[2,4],[3,2],[4,1]]}"#
        );
        assert!(serde_json::from_str::<RookPlacement>(r#"{"cells":[[1,1],[1,2]]}"#).is_err());
    }
}
