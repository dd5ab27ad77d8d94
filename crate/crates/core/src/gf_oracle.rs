//! Ground truth by exhaustion: small finite fields, matrix rank, and rank
//! tallies over every matrix supported on a diagram.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::diagrams::{Cell, FerrersDiagram};
use crate::error::{Error, Result};
use crate::qrook::MatrixKind;

/// Default cap on the number of matrices a single enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Field of order `q` with elements `0..q` and precomputed operation tables.
#[derive(Clone)]
pub struct FiniteField {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Builds GF(q) for primes below 256 and for q = 4, 8, 9.
pub fn make_field(q: u32) -> Result<FiniteField> {
    let qs = q as usize;
    let field = if is_prime(qs) && qs < 256 {
        FiniteField::prime(qs)
    } else {
        // Monic irreducible x^n + Σ m_k x^k, given by its low coefficients.
        match q {
            4 => FiniteField::extension(2, &[1, 1]),
            8 => FiniteField::extension(2, &[1, 1, 0]),
            9 => FiniteField::extension(3, &[1, 0]),
            _ => return Err(Error::UnsupportedFieldOrder(q)),
        }
    };
    field.check_axioms()?;
    Ok(field)
}

impl FiniteField {
    fn prime(p: usize) -> Self {
        let mut add = vec![0u8; p * p];
        let mut mul = vec![0u8; p * p];
        for a in 0..p {
            for b in 0..p {
                add[a * p + b] = ((a + b) % p) as u8;
                mul[a * p + b] = ((a * b) % p) as u8;
            }
        }
        Self::from_tables(p, p, add, mul)
    }

    fn extension(p: usize, modulus: &[usize]) -> Self {
        let n = modulus.len();
        let q = p.pow(n as u32);
        let digits = |mut x: usize| {
            let mut d = vec![0usize; n];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let index = |d: &[usize]| d.iter().rev().fold(0usize, |acc, x| acc * p + x);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index(&sum) as u8;
                let mut prod = vec![0usize; 2 * n - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // x^k = -Σ m_i x^{k-n+i} for k ≥ n
                for k in (n..2 * n - 1).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        let slot = k - n + i;
                        prod[slot] = (prod[slot] + (p - c) * m) % p;
                    }
                }
                mul[a * q + b] = index(&prod[..n]) as u8;
            }
        }
        Self::from_tables(q, p, add, mul)
    }

    fn from_tables(q: usize, p: usize, add: Vec<u8>, mul: Vec<u8>) -> Self {
        let neg = (0..q)
            .map(|a| (0..q).find(|b| add[a * q + b] == 0).unwrap_or(0) as u8)
            .collect();
        let inv = (0..q)
            .map(|a| (1..q).find(|b| mul[a * q + b] == 1).unwrap_or(0) as u8)
            .collect();
        Self {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        }
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.q;
        let bad = |what: &str| Err(Error::Internal(format!("GF({q}) table fails {what}")));
        for a in 0..q {
            let a8 = a as u8;
            if self.add(a8, 0) != a8 || self.mul(a8, 1) != a8 || self.add(a8, self.neg(a8)) != 0 {
                return bad("identities");
            }
            if a != 0 && self.mul(a8, self.inv[a]) != 1 {
                return bad("inverses");
            }
        }
        // Associativity and distributivity hold by construction for prime
        // tables; check them exhaustively where that is cheap.
        if q <= 16 {
            for a in 0..q as u8 {
                for b in 0..q as u8 {
                    if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                        return bad("commutativity");
                    }
                    for c in 0..q as u8 {
                        if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                            || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        {
                            return bad("associativity");
                        }
                        if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                            return bad("distributivity");
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }
}

/// Dense matrix of field-element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::OutOfRange("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * self.cols + j] = v;
    }

    /// Whether every nonzero entry lies in `f` (0-based entry `(i,j)` is cell `(i+1,j+1)`).
    pub fn is_supported_on(&self, f: &FerrersDiagram) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| self.get(i, j) == 0 || f.contains(Cell::new(i + 1, j + 1)))
        })
    }
}

pub fn rank(field: &FiniteField, m: &FieldMatrix) -> usize {
    let mut work = m.entries.clone();
    rank_in_place(field, &mut work, m.rows, m.cols)
}

/// Gaussian elimination on a row-major buffer, destroying it.
fn rank_in_place(field: &FiniteField, a: &mut [u8], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|r| a[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for k in col..cols {
                a.swap(pivot * cols + k, rank * cols + k);
            }
        }
        let inv = field.inv(a[rank * cols + col]).expect("nonzero pivot");
        for r in rank + 1..rows {
            let lead = a[r * cols + col];
            if lead == 0 {
                continue;
            }
            let factor = field.mul(lead, inv);
            for k in col..cols {
                let t = field.mul(factor, a[rank * cols + k]);
                a[r * cols + k] = field.sub(a[r * cols + k], t);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Exact number of matrices of each rank; `counts[r]` is `W_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDistribution {
    pub q: u32,
    pub kind: MatrixKind,
    pub counts: Vec<BigUint>,
}

impl RankDistribution {
    fn from_tally(q: u32, kind: MatrixKind, tally: &[u128]) -> Self {
        let len = tally.iter().rposition(|c| *c != 0).map_or(1, |k| k + 1);
        Self {
            q,
            kind,
            counts: tally[..len].iter().map(|c| BigUint::from(*c)).collect(),
        }
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn max_rank(&self) -> usize {
        self.counts
            .iter()
            .rposition(|c| *c != BigUint::default())
            .unwrap_or(0)
    }

    pub fn get(&self, r: usize) -> BigUint {
        self.counts.get(r).cloned().unwrap_or_default()
    }

    /// Rank-by-rank equality with `values`, treating missing entries as zero.
    pub fn matches(&self, values: &[BigInt]) -> bool {
        let len = self.counts.len().max(values.len());
        (0..len).all(|r| {
            let mine = BigInt::from(self.get(r));
            let theirs = values.get(r).cloned().unwrap_or_default();
            mine == theirs
        })
    }
}

impl Serialize for RankDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            q: u32,
            kind: MatrixKind,
            counts: Vec<String>,
        }
        Repr {
            q: self.q,
            kind: self.kind,
            counts: self.counts.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

/// Entries chosen freely for the given kind; the others are zero or mirrored.
pub fn free_cells(f: &FerrersDiagram, kind: MatrixKind) -> Vec<Cell> {
    f.cells()
        .into_iter()
        .filter(|c| match kind {
            MatrixKind::General => true,
            MatrixKind::Symmetric => c.row <= c.col,
            MatrixKind::Alternating => c.row < c.col,
        })
        .collect()
}

fn required_matrices(q: u32, free: usize) -> u128 {
    (q as u128).checked_pow(free as u32).unwrap_or(u128::MAX)
}

/// Tallies the rank of every matrix of the given kind supported on `f`.
pub fn brute_force_distribution(
    field: &FiniteField,
    f: &FerrersDiagram,
    kind: MatrixKind,
    budget: u128,
) -> Result<RankDistribution> {
    if kind != MatrixKind::General && !f.is_symmetric() {
        return Err(Error::NotSymmetric(f.to_string()));
    }
    let free = free_cells(f, kind);
    let required = required_matrices(field.order(), free.len());
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let tally = match kind {
        MatrixKind::General => general_by_rows(field, f),
        _ => enumerate_free_cells(field, f, kind, &free),
    };
    Ok(RankDistribution::from_tally(field.order(), kind, &tally))
}

/// Visits every general matrix row by row, keeping the rows seen so far in
/// echelon form so each new row costs one reduction.
fn general_by_rows(field: &FiniteField, f: &FerrersDiagram) -> Vec<u128> {
    let rows = f.row_lengths();
    let width = f.num_cols();
    let mut tally = vec![0u128; rows.len().min(width) + 1];
    if rows.is_empty() {
        tally[0] = 1;
        return tally;
    }
    let first = rows[0];
    let q = field.order() as usize;
    let vectors = q.pow(first as u32);
    let parts: Vec<Vec<u128>> = (0..vectors)
        .into_par_iter()
        .with_min_len(vectors.div_ceil(64).max(1))
        .map(|code| {
            let mut local = vec![0u128; tally.len()];
            let mut basis = Basis::new(width, rows.len());
            let mut v = vec![0u8; width];
            decode(code, q, &mut v[..first]);
            basis.insert(field, &v);
            rows_dfs(field, &rows, 1, width, &mut basis, &mut local);
            local
        })
        .collect();
    for part in parts {
        for (t, p) in tally.iter_mut().zip(part) {
            *t += p;
        }
    }
    tally
}

fn decode(mut code: usize, q: usize, out: &mut [u8]) {
    for slot in out.iter_mut() {
        *slot = (code % q) as u8;
        code /= q;
    }
}

/// Echelon rows: each stored row is reduced against the earlier ones and is 1 at its pivot.
struct Basis {
    width: usize,
    rows: Vec<u8>,
    pivots: Vec<usize>,
}

impl Basis {
    fn new(width: usize, capacity: usize) -> Self {
        Self {
            width,
            rows: Vec::with_capacity(width * capacity),
            pivots: Vec::with_capacity(capacity),
        }
    }

    fn len(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` and appends it if independent; returns whether the rank grew.
    fn insert(&mut self, field: &FiniteField, v: &[u8]) -> bool {
        let w = self.width;
        let mut r = v.to_vec();
        for (k, p) in self.pivots.iter().enumerate() {
            let c = r[*p];
            if c == 0 {
                continue;
            }
            let b = &self.rows[k * w..(k + 1) * w];
            for (x, y) in r.iter_mut().zip(b) {
                *x = field.sub(*x, field.mul(c, *y));
            }
        }
        let Some(p) = r.iter().position(|x| *x != 0) else {
            return false;
        };
        let inv = field.inv(r[p]).expect("nonzero");
        for x in r.iter_mut() {
            *x = field.mul(*x, inv);
        }
        self.rows.extend_from_slice(&r);
        self.pivots.push(p);
        true
    }

    fn pop(&mut self) {
        self.pivots.pop();
        self.rows.truncate(self.pivots.len() * self.width);
    }
}

fn rows_dfs(
    field: &FiniteField,
    rows: &[usize],
    row: usize,
    width: usize,
    basis: &mut Basis,
    tally: &mut [u128],
) {
    if row == rows.len() {
        tally[basis.len()] += 1;
        return;
    }
    let q = field.order() as usize;
    let len = rows[row];
    let mut v = vec![0u8; width];
    for code in 0..q.pow(len as u32) {
        decode(code, q, &mut v[..len]);
        if basis.insert(field, &v) {
            rows_dfs(field, rows, row + 1, width, basis, tally);
            basis.pop();
        } else {
            rows_dfs(field, rows, row + 1, width, basis, tally);
        }
    }
}

/// Mixed-radix sweep over the free cells, mirroring into a full matrix.
fn enumerate_free_cells(
    field: &FiniteField,
    f: &FerrersDiagram,
    kind: MatrixKind,
    free: &[Cell],
) -> Vec<u128> {
    let n = f.num_rows().max(f.num_cols());
    let q = field.order() as usize;
    let mut tally = vec![0u128; n + 1];
    if free.is_empty() {
        tally[0] = 1;
        return tally;
    }
    let (head, tail) = free.split_at(1);
    let parts: Vec<Vec<u128>> = (0..q as u8)
        .into_par_iter()
        .map(|first| {
            let mut local = vec![0u128; n + 1];
            let mut m = vec![0u8; n * n];
            let mut work = vec![0u8; n * n];
            put(field, &mut m, n, head[0], first, kind);
            let mut digits = vec![0u8; tail.len()];
            loop {
                work.copy_from_slice(&m);
                local[rank_in_place(field, &mut work, n, n)] += 1;
                // Increment the counter, updating only the entries that changed.
                let mut k = 0;
                while k < tail.len() {
                    digits[k] += 1;
                    if (digits[k] as usize) < q {
                        put(field, &mut m, n, tail[k], digits[k], kind);
                        break;
                    }
                    digits[k] = 0;
                    put(field, &mut m, n, tail[k], 0, kind);
                    k += 1;
                }
                if k == tail.len() {
                    break;
                }
            }
            local
        })
        .collect();
    for part in parts {
        for (t, p) in tally.iter_mut().zip(part) {
            *t += p;
        }
    }
    tally
}

fn put(field: &FiniteField, m: &mut [u8], n: usize, c: Cell, v: u8, kind: MatrixKind) {
    let (i, j) = (c.row - 1, c.col - 1);
    m[i * n + j] = v;
    if i != j {
        m[j * n + i] = match kind {
            MatrixKind::Alternating => field.neg(v),
            _ => v,
        };
    }
}

/// Reference enumeration: every assignment of the free cells, rank from scratch.
pub fn naive_distribution(
    field: &FiniteField,
    f: &FerrersDiagram,
    kind: MatrixKind,
) -> Result<RankDistribution> {
    if kind != MatrixKind::General && !f.is_symmetric() {
        return Err(Error::NotSymmetric(f.to_string()));
    }
    let free = free_cells(f, kind);
    let n = f.num_rows().max(f.num_cols());
    let q = field.order() as usize;
    let mut tally = vec![0u128; n + 1];
    let total = required_matrices(field.order(), free.len()) as usize;
    let mut digits = vec![0u8; free.len()];
    for code in 0..total {
        decode(code, q, &mut digits);
        let mut m = FieldMatrix::zeros(n, n);
        for (c, v) in free.iter().zip(&digits) {
            m.set(c.row - 1, c.col - 1, *v);
            if kind != MatrixKind::General && c.row != c.col {
                let mirrored = if kind == MatrixKind::Alternating {
                    field.neg(*v)
                } else {
                    *v
                };
                m.set(c.col - 1, c.row - 1, mirrored);
            }
        }
        tally[rank(field, &m)] += 1;
    }
    Ok(RankDistribution::from_tally(field.order(), kind, &tally))
}
