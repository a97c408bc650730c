//! k-orthogonality of binary matrices.
//!
//! A matrix is k-orthogonal (with respect to a restriction `r`) when every
//! product of at most `k` rows has even weight on the support of `r`. Checks
//! run over subsets of generator rows: by parity multilinearity this agrees
//! with the definition over all elements of the row space.

use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMat, BitVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityWitness {
    /// Number of rows in the failing product.
    pub t: usize,
    /// Row indices, ascending.
    pub rows: Vec<usize>,
    #[serde(serialize_with = "crate::io::serialize_bits")]
    pub restriction: BitVec,
    /// Weight of the product restricted to `restriction`; always odd.
    pub product_weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub level_checked: usize,
    pub holds: bool,
    pub witness: Option<OrthogonalityWitness>,
}

/// Checks k-orthogonality of `a_x`, restricted to the support of `r` (all-ones by default).
///
/// On failure the witness is the first failing row subset, ordered by size and
/// then lexicographically.
pub fn is_k_orthogonal(a_x: &BitMat, k: usize, r: Option<&BitVec>) -> Result<OrthogonalityReport> {
    if k < 1 {
        return Err(Error::range("orthogonality level k", "k must be at least 1"));
    }
    let restriction = match r {
        Some(r) => {
            check_len(r, a_x.ncols())?;
            r.clone()
        }
        None => BitVec::ones(a_x.ncols()),
    };
    let max_t = k.min(a_x.nrows());
    for t in 1..=max_t {
        let mut chosen = Vec::with_capacity(t);
        if let Some(weight) = first_odd_product(a_x.rows(), t, 0, &restriction, &mut chosen) {
            return Ok(OrthogonalityReport {
                level_checked: k,
                holds: false,
                witness: Some(OrthogonalityWitness {
                    t,
                    rows: chosen,
                    restriction,
                    product_weight: weight,
                }),
            });
        }
    }
    Ok(OrthogonalityReport {
        level_checked: k,
        holds: true,
        witness: None,
    })
}

/// Depth-first search over `t`-subsets starting at `start`; returns the odd weight found.
fn first_odd_product(
    rows: &[BitVec],
    t: usize,
    start: usize,
    acc: &BitVec,
    chosen: &mut Vec<usize>,
) -> Option<usize> {
    if acc.is_zero() {
        return None;
    }
    let remaining = t - chosen.len();
    for i in start..=rows.len().saturating_sub(remaining) {
        let mut next = acc.clone();
        next.and_assign_unchecked(&rows[i]);
        chosen.push(i);
        if remaining == 1 {
            let w = next.weight();
            if w % 2 == 1 {
                return Some(w);
            }
        } else if let Some(w) = first_odd_product(rows, t, i + 1, &next, chosen) {
            return Some(w);
        }
        chosen.pop();
    }
    None
}

/// Largest `p <= rows` such that `a_x` is p-orthogonal; 0 when some row has odd weight.
pub fn max_orthogonality(a_x: &BitMat) -> usize {
    let ones = BitVec::ones(a_x.ncols());
    for t in 1..=a_x.nrows() {
        let mut chosen = Vec::new();
        if first_odd_product(a_x.rows(), t, 0, &ones, &mut chosen).is_some() {
            return t - 1;
        }
    }
    a_x.nrows()
}

/// Row operations making column `q` all-ones: every row with a 0 at `q` is
/// replaced by its sum with the first row that has a 1 there.
pub fn isolate_column(a_x: &BitMat, q: usize) -> Result<BitMat> {
    if q >= a_x.ncols() {
        return Err(Error::range(
            "column index",
            format!("{q} >= {} columns", a_x.ncols()),
        ));
    }
    let y = a_x
        .rows()
        .iter()
        .find(|row| row.get(q))
        .cloned()
        .ok_or(Error::NoSyndrome { column: q })?;
    let rows = a_x
        .rows()
        .iter()
        .map(|x| {
            if x.get(q) {
                x.clone()
            } else {
                let mut v = x.clone();
                v.xor_assign_unchecked(&y);
                v
            }
        })
        .collect();
    BitMat::from_rows(rows, a_x.ncols())
}
