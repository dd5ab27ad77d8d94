//! q-rook polynomials and the rank distributions they produce.
//!
//! Every polynomial here depends on a diagram only through its diagonal
//! sequence, so the recursive forms work on sequences and memoize on them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::diagrams::{Cell, FerrersDiagram};
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::placements::{self, RookPlacement};
use crate::sequences::{self, normalize, FerrersSequence};

type Poly = LaurentPolynomial;

/// Matrix space supported on a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    General,
    Symmetric,
    Alternating,
}

impl MatrixKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MatrixKind::General => "general",
            MatrixKind::Symmetric => "symmetric",
            MatrixKind::Alternating => "alternating",
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" | "gen" => Ok(MatrixKind::General),
            "symmetric" | "sym" => Ok(MatrixKind::Symmetric),
            "alternating" | "alt" => Ok(MatrixKind::Alternating),
            other => Err(Error::OutOfRange(format!("unknown matrix kind '{other}'"))),
        }
    }
}

/// Number of free entries of a matrix in the space: `|F|`, the cells on or
/// above the principal diagonal, or the cells strictly above it.
pub fn free_cell_count(seq: &FerrersSequence, kind: MatrixKind) -> usize {
    let n = seq.total();
    let x = seq.odd_count();
    match kind {
        MatrixKind::General => n,
        MatrixKind::Symmetric => (n + x) / 2,
        MatrixKind::Alternating => (n - x) / 2,
    }
}

/// `W_r` for `r = 0..=∂` as polynomials in `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicRankDistribution {
    pub kind: MatrixKind,
    pub ranks: Vec<LaurentPolynomial>,
}

impl SymbolicRankDistribution {
    pub fn evaluate(&self, q: u32) -> Result<Vec<BigInt>> {
        let q = BigInt::from(q);
        self.ranks.iter().map(|p| p.evaluate_integer(&q)).collect()
    }

    pub fn total(&self) -> LaurentPolynomial {
        self.ranks.iter().fold(Poly::zero(), |acc, p| &acc + p)
    }
}

/// Memo tables for the diagonal recursions, keyed by normalized sequences.
#[derive(Debug, Default)]
pub struct QRookContext {
    general: HashMap<(Vec<usize>, usize), Poly>,
    alternating: HashMap<(Vec<usize>, usize), Poly>,
    symmetric: HashMap<(Vec<usize>, usize, usize), Poly>,
}

fn minus(entries: &[usize], k: usize) -> Vec<usize> {
    entries.iter().map(|d| d - k).collect()
}

impl QRookContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cached_entries(&self) -> usize {
        self.general.len() + self.alternating.len() + self.symmetric.len()
    }

    /// `R_r(d_1, ..., d_l)`.
    pub fn general(&mut self, seq: &FerrersSequence, r: usize) -> Result<Poly> {
        seq.validate()?;
        Ok(self.general_raw(seq.entries(), r))
    }

    /// `R^alt_r(d_1, ..., d_l)`.
    pub fn alternating(&mut self, seq: &FerrersSequence, r: usize) -> Result<Poly> {
        sequences::validate_symmetric_sequence(seq.entries())?;
        Ok(self.alternating_raw(seq.entries(), r))
    }

    /// `R^sym_{t,s}(d_1, ..., d_l)`.
    pub fn symmetric(&mut self, seq: &FerrersSequence, t: usize, s: usize) -> Result<Poly> {
        sequences::validate_symmetric_sequence(seq.entries())?;
        Ok(self.symmetric_raw(seq.entries(), t, s))
    }

    fn general_raw(&mut self, d: &[usize], r: usize) -> Poly {
        let d = normalize(d).into_entries();
        if r == 0 {
            return Poly::q_pow(d.iter().sum::<usize>() as i64);
        }
        if r > d.iter().copied().max().unwrap_or(0) {
            return Poly::zero();
        }
        let key = (d, r);
        if let Some(p) = self.general.get(&key) {
            return p.clone();
        }
        let d = &key.0;
        let l = d.len();
        let dl = d[l - 1];
        let mut acc = self.general_raw(&d[..l - 1], r).shift(dl as i64);
        let middle = if l >= 2 {
            minus(&d[1..l - 1], 1)
        } else {
            Vec::new()
        };
        for j in 1..=dl {
            let mut reduced = middle.clone();
            reduced.push(j - 1);
            acc += &self.general_raw(&reduced, r - 1).shift((dl - j) as i64);
        }
        self.general.insert(key, acc.clone());
        acc
    }

    fn alternating_raw(&mut self, d: &[usize], r: usize) -> Poly {
        let d = normalize(d).into_entries();
        if r % 2 == 1 {
            return Poly::zero();
        }
        if r == 0 {
            let odd = d.iter().filter(|x| *x % 2 == 1).count();
            return Poly::q_pow((d.iter().sum::<usize>() - odd) as i64);
        }
        if r > d.iter().copied().max().unwrap_or(0) {
            return Poly::zero();
        }
        let key = (d, r);
        if let Some(p) = self.alternating.get(&key) {
            return p.clone();
        }
        let d = &key.0;
        let l = d.len();
        let dl = d[l - 1];
        let a = dl % 2;
        let mut acc = self.alternating_raw(&d[..l - 1], r).shift((dl - a) as i64);
        let middle = if l >= 3 {
            minus(&d[2..l - 1], 2)
        } else {
            Vec::new()
        };
        for j in 1..=dl / 2 {
            let mut reduced = middle.clone();
            reduced.push(2 * j - 2);
            acc += &self
                .alternating_raw(&reduced, r - 2)
                .shift((dl - 2 * j - a) as i64);
        }
        self.alternating.insert(key, acc.clone());
        acc
    }

    fn symmetric_raw(&mut self, d: &[usize], t: usize, s: usize) -> Poly {
        let d = normalize(d).into_entries();
        if t == 0 && s == 0 {
            return Poly::q_pow(d.iter().sum::<usize>() as i64);
        }
        if 2 * t + s > d.iter().copied().max().unwrap_or(0) {
            return Poly::zero();
        }
        let key = (d, t, s);
        if let Some(p) = self.symmetric.get(&key) {
            return p.clone();
        }
        let d = &key.0;
        let l = d.len();
        let dl = d[l - 1];
        let mut acc = self.symmetric_raw(&d[..l - 1], t, s).shift(dl as i64);
        if dl % 2 == 1 && s >= 1 {
            acc += &self.symmetric_raw(&minus(&d[1..], 1), t, s - 1);
        }
        if t >= 1 {
            let middle = if l >= 3 {
                minus(&d[2..l - 1], 2)
            } else {
                Vec::new()
            };
            for j in 1..=dl / 2 {
                let mut reduced = middle.clone();
                reduced.push(2 * j - 2);
                acc += &self
                    .symmetric_raw(&reduced, t - 1, s)
                    .shift((dl - 2 * j) as i64);
            }
        }
        self.symmetric.insert(key, acc.clone());
        acc
    }

    /// `W_r(Mat[F]) = (q-1)^r q^{|F|-r} R_r(F; q^{-1})`.
    pub fn w_general(&mut self, seq: &FerrersSequence, r: usize) -> Result<Poly> {
        let rr = self.general(seq, r)?;
        let n = seq.total() as i64;
        let w =
            (&Poly::q_minus_one_pow(r as u32) * &rr.substitute_reciprocal()).shift(n - r as i64);
        check_polynomial(w)
    }

    /// `W_r(Alt[F]) = (q-1)^{r/2} q^{(|F|-|Ξ|-r)/2} R^alt_r(F; q^{-1/2})`, zero for odd `r`.
    pub fn w_alternating(&mut self, seq: &FerrersSequence, r: usize) -> Result<Poly> {
        let rr = self.alternating(seq, r)?;
        if r % 2 == 1 {
            return Ok(Poly::zero());
        }
        let n = seq.total() as i64;
        let x = seq.odd_count() as i64;
        let z = &Poly::q_minus_one_pow((r / 2) as u32).to_half_power_domain()
            * &rr.substitute_reciprocal();
        check_polynomial(z.shift(n - x - r as i64).from_half_power_domain()?)
    }

    /// `W_r(Sym[F]) = Σ_{2t+s=r} (q-1)^{t+s} q^{(|F|-t-s)/2} R^sym_{t,s}(F; q^{-1/2})`.
    pub fn w_symmetric(&mut self, seq: &FerrersSequence, r: usize) -> Result<Poly> {
        sequences::validate_symmetric_sequence(seq.entries())?;
        let n = seq.total() as i64;
        let mut z = Poly::zero();
        for t in 0..=r / 2 {
            let s = r - 2 * t;
            let rr = self.symmetric_raw(seq.entries(), t, s);
            if rr.is_zero() {
                continue;
            }
            let term = &Poly::q_minus_one_pow((t + s) as u32).to_half_power_domain()
                * &rr.substitute_reciprocal();
            z += &term.shift(n - (t + s) as i64);
        }
        check_polynomial(z.from_half_power_domain()?)
    }

    pub fn w(&mut self, seq: &FerrersSequence, kind: MatrixKind, r: usize) -> Result<Poly> {
        match kind {
            MatrixKind::General => self.w_general(seq, r),
            MatrixKind::Symmetric => self.w_symmetric(seq, r),
            MatrixKind::Alternating => self.w_alternating(seq, r),
        }
    }

    pub fn rank_distribution(
        &mut self,
        seq: &FerrersSequence,
        kind: MatrixKind,
    ) -> Result<SymbolicRankDistribution> {
        let degree = seq.max_entry();
        let ranks = (0..=degree)
            .map(|r| self.w(seq, kind, r))
            .collect::<Result<_>>()?;
        Ok(SymbolicRankDistribution { kind, ranks })
    }
}

fn check_polynomial(p: Poly) -> Result<Poly> {
    match p.trailing_degree() {
        Some(e) if e < 0 => Err(Error::NegativeExponent(e)),
        _ => Ok(p),
    }
}

fn require_symmetric(f: &FerrersDiagram) -> Result<()> {
    if f.is_symmetric() {
        Ok(())
    } else {
        Err(Error::NotSymmetric(f.to_string()))
    }
}

pub fn qrook_enumerative(f: &FerrersDiagram, r: usize) -> LaurentPolynomial {
    let n = f.size();
    placements::enumerate_placements(f, r)
        .iter()
        .fold(Poly::zero(), |acc, p| {
            &acc + &Poly::q_pow((n - placements::atk(p).len()) as i64)
        })
}

/// `Σ q^{inv + r/2 - |Ξ ∩ F|}` over alternating placements of size `r`.
pub fn qrook_alt_enumerative(f: &FerrersDiagram, r: usize) -> Result<LaurentPolynomial> {
    let ps = placements::enumerate_alternating(f, r)?;
    let n = f.size() as i64;
    let shift = (r / 2) as i64 - f.xi_cells().len() as i64;
    Ok(ps.iter().fold(Poly::zero(), |acc, p| {
        &acc + &Poly::q_pow(n - placements::atk(p).len() as i64 + shift)
    }))
}

pub fn qrook_sym_enumerative(f: &FerrersDiagram, t: usize, s: usize) -> Result<LaurentPolynomial> {
    let ps = placements::enumerate_symmetric(f, t, s)?;
    let n = f.size();
    Ok(ps.iter().fold(Poly::zero(), |acc, p| {
        &acc + &Poly::q_pow((n - placements::atk(p).len()) as i64)
    }))
}

pub fn qrook_recursive(seq: &FerrersSequence, r: usize) -> Result<LaurentPolynomial> {
    QRookContext::new().general(seq, r)
}

pub fn qrook_alt_recursive(seq: &FerrersSequence, r: usize) -> Result<LaurentPolynomial> {
    QRookContext::new().alternating(seq, r)
}

pub fn qrook_sym_recursive(seq: &FerrersSequence, t: usize, s: usize) -> Result<LaurentPolynomial> {
    QRookContext::new().symmetric(seq, t, s)
}

pub fn rank_distribution_general(f: &FerrersDiagram) -> Result<SymbolicRankDistribution> {
    QRookContext::new().rank_distribution(&f.diagonal_sequence(), MatrixKind::General)
}

pub fn rank_distribution_alternating(f: &FerrersDiagram) -> Result<SymbolicRankDistribution> {
    require_symmetric(f)?;
    QRookContext::new().rank_distribution(&f.diagonal_sequence(), MatrixKind::Alternating)
}

pub fn rank_distribution_symmetric(f: &FerrersDiagram) -> Result<SymbolicRankDistribution> {
    require_symmetric(f)?;
    QRookContext::new().rank_distribution(&f.diagonal_sequence(), MatrixKind::Symmetric)
}

/// `Σ_i max(0, d_i - r)` for `1 ≤ r ≤ ∂(F)`.
pub fn trailing_degree_closed_form(f: &FerrersDiagram, r: usize) -> Result<i64> {
    let d = f.diagonal_sequence();
    let degree = d.max_entry();
    if r == 0 || r > degree {
        return Err(Error::OutOfRange(format!(
            "r = {r} must lie in 1..={degree}"
        )));
    }
    Ok(d.entries().iter().map(|x| x.saturating_sub(r) as i64).sum())
}

/// Alternating analogue for `2 ≤ 2r ≤ ∂(F)`: odd-indexed diagonals lose `2r + 1`,
/// even-indexed ones lose `2r`.
pub fn trailing_degree_alt_closed_form(f: &FerrersDiagram, two_r: usize) -> Result<i64> {
    require_symmetric(f)?;
    let d = f.diagonal_sequence();
    let degree = d.max_entry();
    if two_r % 2 == 1 || two_r < 2 || two_r > degree {
        return Err(Error::OutOfRange(format!(
            "2r = {two_r} must be even with 2 ≤ 2r ≤ {degree}"
        )));
    }
    Ok(d.entries()
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let cut = if k % 2 == 0 { two_r + 1 } else { two_r };
            x.saturating_sub(cut) as i64
        })
        .sum())
}

/// `Σ_i 2 max(0, ⌊d_i/2⌋ - r)` for `0 ≤ 2r ≤ ∂(F)`.
///
/// Agrees with [`trailing_degree_alt_closed_form`] except when an odd-indexed
/// diagonal has even length above `2r`, where that form is one too small.
pub fn trailing_degree_alt_corrected(f: &FerrersDiagram, two_r: usize) -> Result<i64> {
    require_symmetric(f)?;
    let d = f.diagonal_sequence();
    let degree = d.max_entry();
    if two_r % 2 == 1 || two_r > degree {
        return Err(Error::OutOfRange(format!(
            "2r = {two_r} must be even with 0 ≤ 2r ≤ {degree}"
        )));
    }
    Ok(d.entries()
        .iter()
        .map(|x| 2 * (x / 2).saturating_sub(two_r / 2) as i64)
        .sum())
}

/// The rightmost cell of each of the top `r` rows, if those cells lie in distinct columns.
pub fn trailing_placement(f: &FerrersDiagram, r: usize) -> Option<RookPlacement> {
    let rows = f.row_lengths();
    if r > rows.len() {
        return None;
    }
    let cells: Vec<Cell> = rows[..r]
        .iter()
        .enumerate()
        .map(|(i, len)| Cell::new(i + 1, *len))
        .collect();
    RookPlacement::new(cells).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(cols: &[usize]) -> FerrersDiagram {
        FerrersDiagram::new(cols.to_vec()).unwrap()
    }

    fn seq(d: &[usize]) -> FerrersSequence {
        FerrersSequence::new(d.to_vec())
    }

    fn p(terms: &[(i64, i64)]) -> Poly {
        Poly::from_terms(terms.iter().copied())
    }

    #[test]
    fn enumerative_values() {
        assert_eq!(qrook_enumerative(&fd(&[2, 2]), 2), p(&[(0, 1), (1, 1)]));
        assert_eq!(
            qrook_enumerative(&fd(&[2, 2]), 1),
            p(&[(3, 1), (2, 2), (1, 1)])
        );
        assert_eq!(qrook_enumerative(&fd(&[4, 3, 3, 2, 1]), 0), Poly::q_pow(13));
        assert_eq!(qrook_enumerative(&fd(&[2, 2]), 3), Poly::zero());
    }

    #[test]
    fn first_rook_polynomial_is_diagonal_sum() {
        let f = fd(&[4, 3, 3, 2, 1]);
        let d = f.diagonal_sequence();
        let expected = d
            .entries()
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (k, di)| {
                &acc + &Poly::monomial(*di as i64, 13 - (k as i64 + 1))
            });
        assert_eq!(qrook_enumerative(&f, 1), expected);
    }

    #[test]
    fn recursive_values() {
        assert_eq!(
            qrook_recursive(&seq(&[1, 2, 1]), 2).unwrap(),
            p(&[(0, 1), (1, 1)])
        );
        assert_eq!(qrook_recursive(&seq(&[1, 2, 1]), 3).unwrap(), Poly::zero());
        assert!(qrook_recursive(&seq(&[2, 1]), 1).is_err());
        let s = seq(&[1, 2, 3, 3, 2]);
        for r in 0..=3 {
            let rec = qrook_recursive(&s, r).unwrap();
            for cols in [[5, 2, 2, 1, 1].as_slice(), &[4, 4, 3], &[3, 3, 2, 2, 1]] {
                assert_eq!(qrook_enumerative(&fd(cols), r), rec);
            }
        }
    }

    #[test]
    fn alternating_values() {
        assert_eq!(qrook_alt_enumerative(&fd(&[2, 2]), 2).unwrap(), Poly::one());
        assert_eq!(
            qrook_alt_recursive(&seq(&[1, 2, 1]), 2).unwrap(),
            Poly::one()
        );
        assert_eq!(
            qrook_alt_recursive(&seq(&[1, 2, 1]), 1).unwrap(),
            Poly::zero()
        );
        assert_eq!(
            qrook_alt_recursive(&seq(&[1, 2, 1]), 0).unwrap(),
            Poly::q_pow(2)
        );
        assert!(qrook_alt_enumerative(&fd(&[3, 1]), 2).is_err());
    }

    #[test]
    fn symmetric_values() {
        assert_eq!(qrook_sym_enumerative(&fd(&[1]), 0, 1).unwrap(), Poly::one());
        assert_eq!(qrook_sym_recursive(&seq(&[1]), 0, 1).unwrap(), Poly::one());
        assert_eq!(
            qrook_sym_enumerative(&fd(&[2, 2]), 1, 0).unwrap(),
            Poly::q_pow(1)
        );
        assert_eq!(
            qrook_sym_recursive(&seq(&[1, 2, 1]), 1, 0).unwrap(),
            Poly::q_pow(1)
        );
        assert_eq!(
            qrook_sym_recursive(&seq(&[1, 2, 1]), 1, 1).unwrap(),
            Poly::zero()
        );
    }

    #[test]
    fn general_distributions() {
        let d = rank_distribution_general(&fd(&[1])).unwrap();
        assert_eq!(d.ranks, vec![Poly::one(), p(&[(1, 1), (0, -1)])]);
        let d = rank_distribution_general(&fd(&[2, 2])).unwrap();
        assert_eq!(d.evaluate(2).unwrap(), vec![1.into(), 9.into(), 6.into()]);
        let d = rank_distribution_general(&fd(&[4, 3, 3, 2, 1])).unwrap();
        assert_eq!(
            d.evaluate(2).unwrap().iter().sum::<BigInt>(),
            BigInt::from(1u64 << 13)
        );
    }

    #[test]
    fn alternating_distributions() {
        let d = rank_distribution_alternating(&fd(&[2, 2])).unwrap();
        assert_eq!(d.ranks[2], p(&[(1, 1), (0, -1)]));
        assert_eq!(d.ranks[0], Poly::one());
        let mut ctx = QRookContext::new();
        assert_eq!(
            ctx.w_alternating(&seq(&[1, 2, 1]), 2).unwrap(),
            ctx.w_symmetric(&seq(&[1]), 1).unwrap()
        );
        assert!(rank_distribution_alternating(&fd(&[3, 1])).is_err());
    }

    #[test]
    fn symmetric_distributions() {
        let d = rank_distribution_symmetric(&fd(&[2, 1])).unwrap();
        assert_eq!(d.ranks[2], p(&[(2, 1), (1, -1)]));
        let d = rank_distribution_symmetric(&fd(&[1])).unwrap();
        assert_eq!(d.ranks[1], p(&[(1, 1), (0, -1)]));
        let d = rank_distribution_symmetric(&fd(&[3, 3, 3])).unwrap();
        assert_eq!(
            d.evaluate(2).unwrap().iter().sum::<BigInt>(),
            BigInt::from(64)
        );
    }

    #[test]
    fn trailing_closed_forms() {
        assert_eq!(trailing_degree_closed_form(&fd(&[2, 2]), 1).unwrap(), 1);
        assert_eq!(trailing_degree_closed_form(&fd(&[2, 2]), 2).unwrap(), 0);
        assert_eq!(
            trailing_degree_closed_form(&fd(&[4, 3, 3, 2, 1]), 4).unwrap(),
            0
        );
        assert!(trailing_degree_closed_form(&fd(&[2, 2]), 3).is_err());
        assert_eq!(trailing_degree_alt_closed_form(&fd(&[2, 2]), 2).unwrap(), 0);
        assert_eq!(
            trailing_degree_alt_closed_form(&fd(&[3, 3, 3]), 2).unwrap(),
            0
        );
        assert!(trailing_degree_alt_closed_form(&fd(&[3, 3, 3]), 0).is_err());
    }

    #[test]
    fn alternating_trailing_counterexample() {
        // Sequence (1,2,3,4,4): the fifth diagonal has even length 4.
        let f = fd(&[5, 4, 2, 2, 1]);
        let tau = qrook_alt_enumerative(&f, 2).unwrap().trailing_degree();
        assert_eq!(tau, Some(4));
        assert_eq!(trailing_degree_alt_closed_form(&f, 2).unwrap(), 3);
        assert_eq!(trailing_degree_alt_corrected(&f, 2).unwrap(), 4);
        assert_eq!(
            trailing_degree_alt_corrected(&fd(&[3, 1, 1]), 0).unwrap(),
            4
        );
    }

    #[test]
    fn kind_parsing() {
        assert_eq!(
            "alt".parse::<MatrixKind>().unwrap(),
            MatrixKind::Alternating
        );
        assert_eq!(
            "symmetric".parse::<MatrixKind>().unwrap(),
            MatrixKind::Symmetric
        );
        assert!("bogus".parse::<MatrixKind>().is_err());
        assert_eq!(
            serde_json::to_string(&MatrixKind::General).unwrap(),
            "\"general\""
        );
    }
}
