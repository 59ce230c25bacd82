//! Dense linear algebra over prime fields GF(q), q ≤ 251.
//!
//! Entries are stored one byte each, except over GF(2) where every row is a
//! packed [`BitVector`]. Row reduction, rank, row-space intersection and
//! subspace point enumeration are provided for both layouts; the binary
//! layout has its own elimination loop.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bits::BitVector;
use crate::error::{Error, Result};

/// A vector of residues mod q. Sorting a slice of points with the derived
/// `Ord` gives the canonical point order: base-q integers read with
/// coordinate 1 as the most significant digit.
pub type Point = Vec<u8>;

pub const MAX_MODULUS: u32 = 251;

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_modulus(q: u32) -> Result<u8> {
    if q <= MAX_MODULUS && is_prime(q) {
        Ok(q as u8)
    } else {
        Err(Error::InvalidModulus(q))
    }
}

#[inline]
pub(crate) fn add_mod(a: u8, b: u8, q: u8) -> u8 {
    ((a as u16 + b as u16) % q as u16) as u8
}

#[inline]
pub(crate) fn mul_mod(a: u8, b: u8, q: u8) -> u8 {
    ((a as u16 * b as u16) % q as u16) as u8
}

#[inline]
pub(crate) fn neg_mod(a: u8, q: u8) -> u8 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

/// Multiplicative inverse by Fermat: a^(q-2).
pub(crate) fn inv_mod(a: u8, q: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(q));
    let mut base = a as u32 % q as u32;
    let mut exp = q as u32 - 2;
    let mut acc = 1u32;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q as u32;
        }
        base = base * base % q as u32;
        exp >>= 1;
    }
    acc as u8
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Storage {
    Binary(Vec<BitVector>),
    Dense(Vec<u8>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeFieldMatrix {
    q: u8,
    rows: usize,
    cols: usize,
    data: Storage,
}

/// Reduced row-echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub matrix: PrimeFieldMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl RrefResult {
    /// The nonzero rows of the reduced matrix: a canonical basis of the row space.
    pub fn basis(&self) -> PrimeFieldMatrix {
        self.matrix.take_rows(self.rank)
    }
}

impl PrimeFieldMatrix {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> Result<Self> {
        let q = check_modulus(q)?;
        Ok(Self::zeros_unchecked(q, rows, cols))
    }

    fn zeros_unchecked(q: u8, rows: usize, cols: usize) -> Self {
        let data = if q == 2 {
            Storage::Binary(vec![BitVector::zeros(cols); rows])
        } else {
            Storage::Dense(vec![0; rows * cols])
        };
        Self {
            q,
            rows,
            cols,
            data,
        }
    }

    /// Row-major construction. Fails if `q` is not a small prime, if the
    /// entry count is not `rows * cols`, or if any entry is ≥ q.
    pub fn new(q: u32, rows: usize, cols: usize, entries: &[u32]) -> Result<Self> {
        let qq = check_modulus(q)?;
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut m = Self::zeros_unchecked(qq, rows, cols);
        for (i, &value) in entries.iter().enumerate() {
            if value >= q {
                return Err(Error::EntryOutOfRange { value, q: qq });
            }
            m.set(i / cols.max(1), i % cols.max(1), value as u8);
        }
        Ok(m)
    }

    pub fn from_rows(q: u32, cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut flat = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            flat.extend(row.iter().map(|&v| v as u32));
        }
        Self::new(q, rows.len(), cols, &flat)
    }

    /// Binary matrix from packed rows, all of length `cols`.
    pub fn from_bit_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "bit row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Self {
            q: 2,
            rows: rows.len(),
            cols,
            data: Storage::Binary(rows),
        })
    }

    pub fn identity(q: u32, n: usize) -> Result<Self> {
        let mut m = Self::zeros(q, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        match &self.data {
            Storage::Binary(rows) => rows[r].get(c) as u8,
            Storage::Dense(v) => v[r * self.cols + c],
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u8) {
        debug_assert!(value < self.q);
        match &mut self.data {
            Storage::Binary(rows) => rows[r].set(c, value == 1),
            Storage::Dense(v) => v[r * self.cols + c] = value,
        }
    }

    pub fn row(&self, r: usize) -> Vec<u8> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Packed rows, only for GF(2).
    pub fn bit_rows(&self) -> Option<&[BitVector]> {
        match &self.data {
            Storage::Binary(rows) => Some(rows),
            Storage::Dense(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Binary(rows) => rows.iter().all(BitVector::is_zero),
            Storage::Dense(v) => v.iter().all(|&e| e == 0),
        }
    }

    /// Number of nonzero entries in row `r`.
    pub fn row_weight(&self, r: usize) -> usize {
        match &self.data {
            Storage::Binary(rows) => rows[r].weight(),
            Storage::Dense(v) => v[r * self.cols..(r + 1) * self.cols]
                .iter()
                .filter(|&&e| e != 0)
                .count(),
        }
    }

    pub fn take_rows(&self, count: usize) -> Self {
        self.select_rows(&(0..count.min(self.rows)).collect::<Vec<_>>())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let data = match &self.data {
            Storage::Binary(rows) => {
                Storage::Binary(idx.iter().map(|&i| rows[i].clone()).collect())
            }
            Storage::Dense(v) => Storage::Dense(
                idx.iter()
                    .flat_map(|&i| v[i * self.cols..(i + 1) * self.cols].iter().copied())
                    .collect(),
            ),
        };
        Self {
            q: self.q,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros_unchecked(self.q, self.rows, idx.len());
        for r in 0..self.rows {
            for (new_c, &c) in idx.iter().enumerate() {
                out.set(r, new_c, self.get(r, c));
            }
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        self.select_rows(&rows.collect::<Vec<_>>())
            .select_columns(&cols.collect::<Vec<_>>())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros_unchecked(self.q, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::FieldMismatch(self.q, other.q));
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros_unchecked(self.q, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u32;
                for i in 0..self.cols {
                    acc += self.get(r, i) as u32 * other.get(i, c) as u32;
                }
                out.set(r, c, (acc % self.q as u32) as u8);
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::FieldMismatch(self.q, other.q));
        }
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let data = match (&self.data, &other.data) {
            (Storage::Binary(a), Storage::Binary(b)) => {
                Storage::Binary(a.iter().chain(b).cloned().collect())
            }
            (Storage::Dense(a), Storage::Dense(b)) => {
                Storage::Dense(a.iter().chain(b).copied().collect())
            }
            _ => unreachable!("storage follows q"),
        };
        Ok(Self {
            q: self.q,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::FieldMismatch(self.q, other.q));
        }
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "cannot join {} rows beside {}",
                other.rows, self.rows
            )));
        }
        let mut out = Self::zeros_unchecked(self.q, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn rref(&self) -> RrefResult {
        match &self.data {
            Storage::Binary(rows) => rref_binary(self.cols, rows.clone()),
            Storage::Dense(v) => rref_dense(self.q, self.rows, self.cols, v.clone()),
        }
    }

    /// Row reduction through the byte-per-entry path regardless of q. The
    /// result is returned in this matrix's own storage layout, so it is
    /// directly comparable with [`Self::rref`].
    pub fn rref_generic(&self) -> RrefResult {
        let flat: Vec<u8> = (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        let dense = rref_dense(self.q, self.rows, self.cols, flat);
        if self.q == 2 {
            let rows = dense
                .matrix
                .to_rows()
                .into_iter()
                .map(|r| BitVector::from_bits(r.into_iter().map(|e| e == 1)))
                .collect();
            RrefResult {
                matrix: Self::from_bit_rows(self.cols, rows).expect("widths agree"),
                rank: dense.rank,
                pivot_columns: dense.pivot_columns,
            }
        } else {
            dense
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel {x : M x = 0}, one vector per row.
    pub fn null_space(&self) -> Self {
        let red = self.rref();
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !red.pivot_columns.contains(c))
            .collect();
        let mut out = Self::zeros_unchecked(self.q, free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, 1);
            for (r, &p) in red.pivot_columns.iter().enumerate() {
                out.set(i, p, neg_mod(red.matrix.get(r, f), self.q));
            }
        }
        out
    }

    /// All q^rank points of the row space, in canonical point order.
    pub fn enumerate_points(&self) -> Vec<Point> {
        let basis = self.rref().basis();
        let q = self.q as usize;
        let dim = basis.rows();
        let rows = basis.to_rows();
        let total = q.pow(dim as u32);
        let mut points = Vec::with_capacity(total);
        let mut coeffs = vec![0usize; dim];
        for _ in 0..total {
            let mut p = vec![0u8; self.cols];
            for (row, &c) in rows.iter().zip(&coeffs) {
                if c != 0 {
                    for (e, &b) in p.iter_mut().zip(row) {
                        *e = add_mod(*e, mul_mod(b, c as u8, self.q), self.q);
                    }
                }
            }
            points.push(p);
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < q {
                    break;
                }
                *c = 0;
            }
        }
        points.sort_unstable();
        points
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[u8]) -> Result<bool> {
        let single = Self::from_rows(self.q as u32, self.cols, &[v.to_vec()])?;
        Ok(self.vstack(&single)?.rank() == self.rank())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.q);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u8::to_string).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let head: Vec<usize> = parse_numbers(header, 1)?;
        let [rows, cols, q] = head[..] else {
            return Err(Error::Parse {
                line: 1,
                msg: "header must be `rows cols q`".into(),
            });
        };
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (i, line) = lines.next().ok_or(Error::Parse {
                line: r + 2,
                msg: "missing row".into(),
            })?;
            let values = parse_numbers(line, i + 1)?;
            if values.len() != cols {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected {cols} entries, found {}", values.len()),
                });
            }
            entries.extend(values.into_iter().map(|v| v as u32));
        }
        Self::new(q as u32, rows, cols, &entries)
    }
}

fn parse_numbers(line: &str, line_no: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|e| Error::Parse {
                line: line_no,
                msg: format!("{t:?}: {e}"),
            })
        })
        .collect()
}

impl std::fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "PrimeFieldMatrix over GF({}) {}x{}",
            self.q, self.rows, self.cols
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Serialize for PrimeFieldMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

fn rref_binary(cols: usize, mut rows: Vec<BitVector>) -> RrefResult {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        next += 1;
    }
    RrefResult {
        rank: pivots.len(),
        pivot_columns: pivots,
        matrix: PrimeFieldMatrix::from_bit_rows(cols, rows).expect("widths preserved"),
    }
}

fn rref_dense(q: u8, n_rows: usize, cols: usize, mut v: Vec<u8>) -> RrefResult {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == n_rows {
            break;
        }
        let Some(p) = (next..n_rows).find(|&r| v[r * cols + c] != 0) else {
            continue;
        };
        if p != next {
            for k in 0..cols {
                v.swap(p * cols + k, next * cols + k);
            }
        }
        let inv = inv_mod(v[next * cols + c], q);
        for k in 0..cols {
            v[next * cols + k] = mul_mod(v[next * cols + k], inv, q);
        }
        for r in 0..n_rows {
            let factor = v[r * cols + c];
            if r == next || factor == 0 {
                continue;
            }
            let neg = neg_mod(factor, q);
            for k in 0..cols {
                let t = mul_mod(v[next * cols + k], neg, q);
                v[r * cols + k] = add_mod(v[r * cols + k], t, q);
            }
        }
        pivots.push(c);
        next += 1;
    }
    RrefResult {
        rank: pivots.len(),
        pivot_columns: pivots,
        matrix: PrimeFieldMatrix {
            q,
            rows: n_rows,
            cols,
            data: Storage::Dense(v),
        },
    }
}

/// Basis (as rows) of rowspace(a) ∩ rowspace(b), via the Zassenhaus
/// construction: reduce [a | a ; b | 0] and keep the right halves of rows
/// whose left half vanished.
pub fn intersect_row_spaces(
    a: &PrimeFieldMatrix,
    b: &PrimeFieldMatrix,
) -> Result<PrimeFieldMatrix> {
    if a.q != b.q {
        return Err(Error::FieldMismatch(a.q, b.q));
    }
    if a.cols != b.cols {
        return Err(Error::Shape(format!(
            "intersecting subspaces of GF({})^{} and GF({})^{}",
            a.q, a.cols, b.q, b.cols
        )));
    }
    let n = a.cols;
    let top = a.hstack(a)?;
    let bottom = b.hstack(&PrimeFieldMatrix::zeros_unchecked(b.q, b.rows, n))?;
    let red = top.vstack(&bottom)?.rref();
    let keep: Vec<usize> = (0..red.rank)
        .filter(|&r| (0..n).all(|c| red.matrix.get(r, c) == 0))
        .collect();
    let right = red
        .matrix
        .select_rows(&keep)
        .select_columns(&(n..2 * n).collect::<Vec<_>>());
    Ok(right.rref().basis())
}
