//! Hamming parity checks and the sub-dual Hamming CSS codes built on them.

use std::cmp::Ordering;

use crate::codes::StandardFormCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec};

/// Pieces of the layout `A_X = (I | c | V)`, `A_Z = (J | d | I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdualParts {
    /// The weight-2 column `(1, 1, 0, ..., 0)`.
    pub c: BitVec,
    /// Every column of weight at least 2 other than `c`.
    pub v: BitMat,
    /// `d_j = 1 + |V_j| mod 2`.
    pub d: BitVec,
    /// `J = V^T + d c^T mod 2`.
    pub j: BitMat,
}

/// Compares columns as row-0-first bit strings.
fn lex(a: &u64, b: &u64, m: usize) -> Ordering {
    for i in 0..m {
        let (x, y) = ((a >> i) & 1, (b >> i) & 1);
        if x != y {
            return x.cmp(&y);
        }
    }
    Ordering::Equal
}

fn column_value(bits: &[usize]) -> u64 {
    bits.iter().fold(0, |acc, &i| acc | (1 << i))
}

fn check_rows(m: usize, min: usize) -> Result<()> {
    if m < min {
        return Err(Error::range("row count m", format!("m = {m} must be at least {min}")));
    }
    if m > 20 {
        return Err(Error::range("row count m", format!("m = {m} is too large (limit 20)")));
    }
    Ok(())
}

/// Column values of V: weight >= 2, excluding c, by descending weight then lexicographically.
fn v_columns(m: usize) -> Vec<u64> {
    let c = column_value(&[0, 1]);
    let mut cols: Vec<u64> = (1u64..(1 << m))
        .filter(|v| v.count_ones() >= 2 && *v != c)
        .collect();
    cols.sort_by(|a, b| {
        b.count_ones()
            .cmp(&a.count_ones())
            .then_with(|| lex(a, b, m))
    });
    cols
}

/// The `m × (2^m − 1)` Hamming parity check with columns ordered identity block, `c`, then `V`.
pub fn hamming_parity_check(m: usize) -> Result<BitMat> {
    check_rows(m, 2)?;
    let mut cols: Vec<u64> = (0..m).map(|i| 1u64 << i).collect();
    cols.push(column_value(&[0, 1]));
    cols.extend(v_columns(m));
    Ok(BitMat::from_column_ints(m, &cols))
}

pub fn subdual_parts(m: usize) -> Result<SubdualParts> {
    check_rows(m, 3)?;
    let c = BitVec::from_indices(m, &[0, 1]);
    let v_cols = v_columns(m);
    let v = BitMat::from_column_ints(m, &v_cols);
    let d = BitVec::from_bools(&v_cols.iter().map(|c| c.count_ones() % 2 == 0).collect::<Vec<_>>());
    let j_rows = v_cols
        .iter()
        .zip(d.to_bools())
        .map(|(&col, dj)| {
            let mut row = BitVec::from_u64(m, col);
            if dj {
                row.xor_assign_unchecked(&c);
            }
            row
        })
        .collect();
    let j = BitMat::from_rows(j_rows, m)?;
    Ok(SubdualParts { c, v, d, j })
}

/// The `2^m − 1` qubit CSS code with `A_X` the Hamming parity check,
/// `A_Z = (J | d | I)` and `X_L = X^⊗n`, `Z_L = Z^⊗n`.
pub fn subdual_css(m: usize) -> Result<StandardFormCode> {
    let parts = subdual_parts(m)?;
    let n = (1usize << m) - 1;
    let a_x = hamming_parity_check(m)?;
    let rest = parts.v.ncols();
    let d_col = BitMat::from_rows(
        parts.d.to_bools().iter().map(|&b| BitVec::from_bools(&[b])).collect(),
        1,
    )?;
    let a_z = parts.j.hstack(&d_col)?.hstack(&BitMat::identity(rest))?;
    debug_assert_eq!(a_z.ncols(), n);
    StandardFormCode::css(a_x, a_z, BitVec::ones(n), BitVec::ones(n))
}

/// The minimal k-orthogonal matrix: the Hamming parity check on `k + 1` rows,
/// columns grouped by descending weight starting from the all-ones column.
/// Weight classes alternate between descending and ascending lexicographic
/// order, so that the top class drops rows last-to-first and the unit
/// vectors close the matrix as an identity block.
pub fn minimal_korth_matrix(k: usize) -> Result<BitMat> {
    if k < 1 {
        return Err(Error::range("orthogonality level k", "k must be at least 1"));
    }
    let m = k + 1;
    check_rows(m, 2)?;
    let mut cols = Vec::with_capacity((1 << m) - 1);
    for w in (1..=m as u32).rev() {
        let mut class: Vec<u64> = (1u64..(1 << m)).filter(|v| v.count_ones() == w).collect();
        class.sort_by(|a, b| lex(a, b, m));
        if (m as u32 - w) % 2 == 1 {
            class.reverse();
        }
        cols.extend(class);
    }
    Ok(BitMat::from_column_ints(m, &cols))
}
