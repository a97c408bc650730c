//! Bit-packed vectors and matrices over GF(2).
//!
//! Vectors store bits little-endian inside `u64` words; bits at positions
//! `>= len` are always zero. Matrices are row-major lists of equal-length
//! vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.mask_tail();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector of length `len` with ones exactly at `indices`.
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    /// Builds a vector from the low `len` bits of `word` (bit 0 is position 0).
    pub fn from_u64(len: usize, word: u64) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 bits");
        let mut v = BitVec::zeros(len);
        if len > 0 {
            v.words[0] = word;
            v.mask_tail();
        }
        v
    }

    /// Low 64 bits as an integer. Only meaningful for `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight |v|.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    fn same_len(&self, other: &BitVec) -> Result<()> {
        if self.len != other.len {
            return Err(Error::dim(self.len, other.len));
        }
        Ok(())
    }

    /// Bitwise XOR (addition mod 2).
    pub fn xor(&self, other: &BitVec) -> Result<BitVec> {
        self.same_len(other)?;
        let mut out = self.clone();
        out.xor_assign_unchecked(other);
        Ok(out)
    }

    /// Bitwise AND, written `x·z` in the literature.
    pub fn and(&self, other: &BitVec) -> Result<BitVec> {
        self.same_len(other)?;
        let mut out = self.clone();
        out.and_assign_unchecked(other);
        Ok(out)
    }

    #[inline]
    pub(crate) fn xor_assign_unchecked(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[inline]
    pub(crate) fn and_assign_unchecked(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    #[inline]
    pub(crate) fn or_assign_unchecked(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Weight of the bitwise AND, |x·y|.
    pub fn and_weight(&self, other: &BitVec) -> Result<usize> {
        self.same_len(other)?;
        Ok(self.and_weight_unchecked(other))
    }

    #[inline]
    pub(crate) fn and_weight_unchecked(&self, other: &BitVec) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Parity of |x·y|, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> Result<bool> {
        Ok(self.and_weight(other)? % 2 == 1)
    }

    pub(crate) fn dot_unchecked(&self, other: &BitVec) -> bool {
        self.and_weight_unchecked(other) % 2 == 1
    }

    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Sub-vector of the given positions, in order.
    pub fn select(&self, positions: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(positions.len());
        for (dst, &src) in positions.iter().enumerate() {
            if self.get(src) {
                out.set(dst, true);
            }
        }
        out
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVec::zeros(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        column: i + 1,
                        message: format!("expected '0' or '1', found {other:?}"),
                    })
                }
            }
        }
        Ok(v)
    }
}

/// AND of all inputs. A single input is returned unchanged.
pub fn and_product(vs: &[BitVec]) -> Result<BitVec> {
    let (first, rest) = vs
        .split_first()
        .ok_or_else(|| Error::range("input list", "and_product needs at least one vector"))?;
    let mut out = first.clone();
    for v in rest {
        out.same_len(v)?;
        out.and_assign_unchecked(v);
    }
    Ok(out)
}

pub fn weight(v: &BitVec) -> usize {
    v.weight()
}

pub fn xor_add(a: &BitVec, b: &BitVec) -> Result<BitVec> {
    a.xor(b)
}

/// Dense GF(2) matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMat {
    cols: usize,
    rows: Vec<BitVec>,
}

/// Reduced row echelon form: nonzero rows only, with their pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<BitVec>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the echelon rows; the result is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn reduce_in_place(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign_unchecked(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coefficients expressing `v` in the echelon rows, if it lies in their span.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        let mut rest = v.clone();
        let mut coeffs = BitVec::zeros(self.rows.len());
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if rest.get(p) {
                rest.xor_assign_unchecked(row);
                coeffs.set(i, true);
            }
        }
        rest.is_zero().then_some(coeffs)
    }
}

impl BitMat {
    /// A matrix with no rows and `cols` columns.
    pub fn empty(cols: usize) -> Self {
        BitMat {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMat {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMat {
            cols: n,
            rows: (0..n).map(|i| BitVec::from_indices(n, &[i])).collect(),
        }
    }

    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::dim(cols, r.len()));
            }
        }
        Ok(BitMat { cols, rows })
    }

    /// Builds a matrix from row strings such as `["110", "011"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<BitVec> = rows.iter().map(|r| r.parse()).collect::<Result<_>>()?;
        let cols = parsed.first().map_or(0, BitVec::len);
        BitMat::from_rows(parsed, cols)
    }

    /// Builds an `m`-row matrix whose columns are the low `m` bits of each integer;
    /// bit `i` of a column value is the entry in row `i`.
    pub fn from_column_ints(m: usize, columns: &[u64]) -> Self {
        let mut out = BitMat::zeros(m, columns.len());
        for (j, &c) in columns.iter().enumerate() {
            for i in 0..m {
                if (c >> i) & 1 == 1 {
                    out.rows[i].set(j, true);
                }
            }
        }
        out
    }

    pub fn from_columns(columns: &[BitVec], m: usize) -> Result<Self> {
        let mut out = BitMat::zeros(m, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != m {
                return Err(Error::dim(m, c.len()));
            }
            for i in c.iter_ones() {
                out.rows[i].set(j, true);
            }
        }
        Ok(out)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::dim(self.cols, row.len()));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, j: usize) -> BitVec {
        let mut c = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn columns(&self) -> Vec<BitVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> BitMat {
        BitMat {
            cols: self.rows.len(),
            rows: self.columns(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &BitMat) -> Result<BitMat> {
        if self.nrows() != other.nrows() {
            return Err(Error::dim(self.nrows(), other.nrows()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect();
        Ok(BitMat {
            cols: self.cols + other.cols,
            rows,
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &BitMat) -> Result<BitMat> {
        if self.cols != other.cols {
            return Err(Error::dim(self.cols, other.cols));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMat {
            cols: self.cols,
            rows,
        })
    }

    pub fn select_columns(&self, columns: &[usize]) -> BitMat {
        BitMat {
            cols: columns.len(),
            rows: self.rows.iter().map(|r| r.select(columns)).collect(),
        }
    }

    pub fn permute_columns(&self, perm: &[usize]) -> BitMat {
        self.select_columns(perm)
    }

    /// `M·v` over GF(2): bit i is the parity of |row_i · v|.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::dim(self.cols, v.len()));
        }
        let mut out = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot_unchecked(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `self · other^T`, the matrix of pairwise row inner products.
    pub fn mul_transpose(&self, other: &BitMat) -> Result<BitMat> {
        if self.cols != other.cols {
            return Err(Error::dim(self.cols, other.cols));
        }
        let mut out = BitMat::zeros(self.nrows(), other.nrows());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot_unchecked(b) {
                    out.rows[i].set(j, true);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form with pivots chosen left to right.
    pub fn echelon(&self) -> Echelon {
        let mut work = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(found) = (next..work.len()).find(|&i| work[i].get(col)) else {
                continue;
            };
            work.swap(next, found);
            let pivot_row = work[next].clone();
            for (i, row) in work.iter_mut().enumerate() {
                if i != next && row.get(col) {
                    row.xor_assign_unchecked(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == work.len() {
                break;
            }
        }
        work.truncate(next);
        Echelon { rows: work, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn is_full_row_rank(&self) -> bool {
        self.rank() == self.nrows()
    }

    /// Basis of `{v : M·v = 0}`, one vector per free column.
    pub fn null_space(&self) -> BitMat {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - ech.rank());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BitMat {
            cols: self.cols,
            rows: basis,
        }
    }

    pub fn row_space_contains(&self, v: &BitVec) -> bool {
        v.len() == self.cols && self.echelon().contains(v)
    }

    pub fn same_row_space(&self, other: &BitMat) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let a = self.echelon();
        let b = other.echelon();
        a.rows == b.rows
    }

    /// All `2^rows` XOR-combinations of the rows; element `i` combines the rows
    /// selected by the set bits of `i`, so element 0 is the zero string.
    pub fn span_enumerate(&self) -> Vec<BitVec> {
        assert!(
            self.rows.len() < 40,
            "span of {} rows is too large to enumerate",
            self.rows.len()
        );
        let total = 1usize << self.rows.len();
        let mut out = Vec::with_capacity(total);
        out.push(BitVec::zeros(self.cols));
        for i in 1..total {
            let low = i.trailing_zeros() as usize;
            let mut v = out[i & (i - 1)].clone();
            v.xor_assign_unchecked(&self.rows[low]);
            out.push(v);
        }
        out
    }

    /// Number of columns with at least one 1 among the first `q` rows.
    pub fn covered_columns_count(&self, q: usize) -> Result<usize> {
        if q == 0 || q > self.rows.len() {
            return Err(Error::range(
                "row count q",
                format!("q = {q} must lie in 1..={}", self.rows.len()),
            ));
        }
        let mut union = BitVec::zeros(self.cols);
        for r in &self.rows[..q] {
            union.or_assign_unchecked(r);
        }
        Ok(union.weight())
    }

    /// Serializes to the `m n` header plus row-line text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.nrows(), self.cols);
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<BitMat> {
        let mut lines = text.lines().enumerate();
        let (header_idx, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| parse_err(1, 1, "missing \"m n\" header"))?;
        let mut fields = header.split_whitespace();
        let mut dim = |name: &str| -> Result<usize> {
            let tok = fields
                .next()
                .ok_or_else(|| parse_err(header_idx + 1, 1, format!("header is missing {name}")))?;
            tok.parse()
                .map_err(|_| parse_err(header_idx + 1, 1, format!("{name} is not a number: {tok:?}")))
        };
        let m = dim("row count")?;
        let n = dim("column count")?;
        if let Some(extra) = fields.next() {
            return Err(parse_err(
                header_idx + 1,
                1,
                format!("unexpected token {extra:?} in header"),
            ));
        }
        let mut rows = Vec::with_capacity(m);
        for (idx, line) in lines {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            if rows.len() == m {
                return Err(parse_err(idx + 1, 1, "more rows than the header declares"));
            }
            let mut row = BitVec::zeros(n);
            let mut count = 0;
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '0' | '1' if col < n => row.set(col, ch == '1'),
                    '0' | '1' => {
                        return Err(parse_err(idx + 1, col + 1, format!("row longer than {n} columns")))
                    }
                    other => {
                        return Err(parse_err(
                            idx + 1,
                            col + 1,
                            format!("expected '0' or '1', found {other:?}"),
                        ))
                    }
                }
                count += 1;
            }
            if count != n {
                return Err(parse_err(
                    idx + 1,
                    count + 1,
                    format!("row has {count} columns, expected {n}"),
                ));
            }
            rows.push(row);
        }
        if rows.len() != m {
            return Err(parse_err(
                text.lines().count() + 1,
                1,
                format!("expected {m} rows, found {}", rows.len()),
            ));
        }
        BitMat::from_rows(rows, n)
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl fmt::Display for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMat {}x{} [", self.nrows(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for BitMat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitMat::parse_text(s)
    }
}

pub fn rank(m: &BitMat) -> usize {
    m.rank()
}

pub fn null_space(m: &BitMat) -> BitMat {
    m.null_space()
}

pub fn span_enumerate(m: &BitMat) -> Vec<BitVec> {
    m.span_enumerate()
}

pub fn covered_columns_count(m: &BitMat, q: usize) -> Result<usize> {
    m.covered_columns_count(q)
}
