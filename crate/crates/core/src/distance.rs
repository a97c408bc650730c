//! Exact X and Z distances of CSS codes.
//!
//! A Z-type logical is a vector in `null(A_X)` outside `span(A_Z)`; an X-type
//! logical is a vector in `null(A_Z)` outside `span(A_X)`. Two strategies are
//! used: full enumeration of the relevant null space when it is small, and a
//! search over supports of increasing weight otherwise.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMat, BitVec, Echelon};

/// Null-space dimension up to which full enumeration is used.
pub const ENUMERATION_LIMIT: usize = 26;

/// Default weight cap for the increasing-weight search.
pub const DEFAULT_WEIGHT_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    NullSpaceEnumeration,
    IncreasingWeight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypedDistance {
    /// Exact distance, or a lower bound when `exact` is false.
    pub distance: usize,
    pub exact: bool,
    #[serde(serialize_with = "crate::io::serialize_opt_bits")]
    pub witness: Option<BitVec>,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub d_z: TypedDistance,
    pub d_x: TypedDistance,
}

#[derive(Clone, Copy, Debug)]
pub struct DistanceOptions {
    pub enumeration_limit: usize,
    pub weight_cap: usize,
    pub force: Option<Method>,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            enumeration_limit: ENUMERATION_LIMIT,
            weight_cap: DEFAULT_WEIGHT_CAP,
            force: None,
        }
    }
}

/// Distances with the default strategy selection.
pub fn css_distances(a_x: &BitMat, a_z: &BitMat, r: &BitVec, s: &BitVec) -> Result<DistanceReport> {
    css_distances_with(a_x, a_z, r, s, DistanceOptions::default())
}

pub fn css_distances_with(
    a_x: &BitMat,
    a_z: &BitMat,
    r: &BitVec,
    s: &BitVec,
    opts: DistanceOptions,
) -> Result<DistanceReport> {
    let n = a_x.ncols();
    if a_z.ncols() != n {
        return Err(Error::dim(n, a_z.ncols()));
    }
    check_len(r, n)?;
    check_len(s, n)?;
    for (i, x) in a_x.rows().iter().enumerate() {
        for (j, z) in a_z.rows().iter().enumerate() {
            if x.dot_unchecked(z) {
                return Err(Error::NotCss { x_row: i, z_row: j });
            }
        }
    }
    if !a_x.mul_vec(r)?.is_zero() || a_z.row_space_contains(r) {
        return Err(Error::InvalidCode("Z_r is not a nontrivial Z-type logical".into()));
    }
    if !a_z.mul_vec(s)?.is_zero() || a_x.row_space_contains(s) {
        return Err(Error::InvalidCode("X_s is not a nontrivial X-type logical".into()));
    }
    Ok(DistanceReport {
        d_z: min_logical_weight(a_x, a_z, opts),
        d_x: min_logical_weight(a_z, a_x, opts),
    })
}

/// Minimum weight of `v` with `checks·v = 0` and `v ∉ span(stabilizers)`.
pub fn min_logical_weight(checks: &BitMat, stabilizers: &BitMat, opts: DistanceOptions) -> TypedDistance {
    let null_dim = checks.ncols() - checks.rank();
    let method = opts.force.unwrap_or(if null_dim <= opts.enumeration_limit {
        Method::NullSpaceEnumeration
    } else {
        Method::IncreasingWeight
    });
    match method {
        Method::NullSpaceEnumeration => enumerate_null_space(checks, stabilizers),
        Method::IncreasingWeight => increasing_weight(checks, stabilizers, opts.weight_cap),
    }
}

/// Null-space basis ordered as stabilizer part first, then a logical complement.
fn split_basis(checks: &BitMat, stabilizers: &BitMat) -> (Vec<BitVec>, usize) {
    let stab = stabilizers.echelon();
    let mut basis = stab.rows.clone();
    let stab_dim = basis.len();
    let mut grown = Echelon {
        rows: stab.rows.clone(),
        pivots: stab.pivots.clone(),
    };
    for v in checks.null_space().rows() {
        let reduced = grown.reduce(v);
        if reduced.is_zero() {
            continue;
        }
        basis.push(v.clone());
        let pivot = reduced.iter_ones().next().expect("nonzero");
        // Keep `grown` usable for reduction: rows need not be fully reduced,
        // only ordered so that each pivot is cleared once.
        grown.rows.push(reduced);
        grown.pivots.push(pivot);
    }
    (basis, stab_dim)
}

/// Gray-code walk over the null space, keeping elements with a nonzero logical part.
fn enumerate_null_space(checks: &BitMat, stabilizers: &BitMat) -> TypedDistance {
    let (basis, stab_dim) = split_basis(checks, stabilizers);
    let dim = basis.len();
    assert!(dim < 64, "null space of dimension {dim} cannot be enumerated");
    let logical_dim = dim - stab_dim;
    if logical_dim == 0 {
        return TypedDistance {
            distance: 0,
            exact: true,
            witness: None,
            method: Method::NullSpaceEnumeration,
        };
    }
    // Order: logical generators are the top bits of the combination index, so
    // split the walk into one chunk per nonzero logical part.
    let logical_parts: Vec<u64> = (1u64..(1 << logical_dim)).collect();
    let best = logical_parts
        .par_iter()
        .map(|&lp| {
            let mut current = BitVec::zeros(checks.ncols());
            for (i, b) in basis[stab_dim..].iter().enumerate() {
                if (lp >> i) & 1 == 1 {
                    current.xor_assign_unchecked(b);
                }
            }
            let mut best_w = current.weight();
            let mut best_code = 0u64;
            let mut gray_prev = 0u64;
            for i in 1u64..(1 << stab_dim) {
                let gray = i ^ (i >> 1);
                let flipped = (gray ^ gray_prev).trailing_zeros() as usize;
                gray_prev = gray;
                current.xor_assign_unchecked(&basis[flipped]);
                let w = current.weight();
                if w < best_w {
                    best_w = w;
                    best_code = gray;
                }
            }
            (best_w, lp, best_code)
        })
        .min()
        .expect("at least one logical part");
    let (weight, lp, code) = best;
    let mut witness = BitVec::zeros(checks.ncols());
    for (i, b) in basis[stab_dim..].iter().enumerate() {
        if (lp >> i) & 1 == 1 {
            witness.xor_assign_unchecked(b);
        }
    }
    for (i, b) in basis[..stab_dim].iter().enumerate() {
        if (code >> i) & 1 == 1 {
            witness.xor_assign_unchecked(b);
        }
    }
    TypedDistance {
        distance: weight,
        exact: true,
        witness: Some(witness),
        method: Method::NullSpaceEnumeration,
    }
}

/// Tries all supports of weight 1, 2, ... up to `cap`.
fn increasing_weight(checks: &BitMat, stabilizers: &BitMat, cap: usize) -> TypedDistance {
    let n = checks.ncols();
    let columns = checks.columns();
    let stab = stabilizers.echelon();
    for w in 1..=cap.min(n) {
        let found = (0..n).into_par_iter().find_map_first(|first| {
            let mut chosen = vec![first];
            let mut syndrome = columns[first].clone();
            search_weight(&columns, &stab, n, w, &mut chosen, &mut syndrome)
        });
        if let Some(support) = found {
            return TypedDistance {
                distance: w,
                exact: true,
                witness: Some(BitVec::from_indices(n, &support)),
                method: Method::IncreasingWeight,
            };
        }
    }
    TypedDistance {
        distance: cap.min(n) + 1,
        exact: false,
        witness: None,
        method: Method::IncreasingWeight,
    }
}

fn search_weight(
    columns: &[BitVec],
    stab: &Echelon,
    n: usize,
    w: usize,
    chosen: &mut Vec<usize>,
    syndrome: &mut BitVec,
) -> Option<Vec<usize>> {
    if chosen.len() == w {
        if syndrome.is_zero() {
            let v = BitVec::from_indices(n, chosen);
            if !stab.contains(&v) {
                return Some(chosen.clone());
            }
        }
        return None;
    }
    let last = *chosen.last().expect("nonempty");
    for next in (last + 1)..n {
        if n - next < w - chosen.len() {
            break;
        }
        chosen.push(next);
        syndrome.xor_assign_unchecked(&columns[next]);
        let hit = search_weight(columns, stab, n, w, chosen, syndrome);
        syndrome.xor_assign_unchecked(&columns[next]);
        chosen.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// All minimum-weight logicals found by enumeration (for small null spaces).
pub fn minimum_weight_logicals(checks: &BitMat, stabilizers: &BitMat) -> (usize, Vec<BitVec>) {
    let (basis, stab_dim) = split_basis(checks, stabilizers);
    let dim = basis.len();
    assert!(dim <= 30, "null space of dimension {dim} is too large to list");
    let mut best = usize::MAX;
    let mut found = Vec::new();
    let mut current = BitVec::zeros(checks.ncols());
    let mut prev = 0u64;
    for i in 1u64..(1 << dim) {
        let gray = i ^ (i >> 1);
        let flipped = (gray ^ prev).trailing_zeros() as usize;
        prev = gray;
        current.xor_assign_unchecked(&basis[flipped]);
        if gray >> stab_dim == 0 {
            continue;
        }
        let w = current.weight();
        if w < best {
            best = w;
            found.clear();
        }
        if w == best {
            found.push(current.clone());
        }
    }
    (best, found)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZDistanceFloor {
    /// Columns distinct and nonzero, so no Z error of weight below 3 is undetected.
    pub at_least_three: bool,
    /// First triple of columns (ascending) summing to zero, if any.
    pub triple: Option<[usize; 3]>,
}

/// Confirms distinct nonzero columns and looks for three columns with trivial sum.
pub fn z_distance_floor(a_x: &BitMat) -> ZDistanceFloor {
    let columns = a_x.columns();
    let partition = crate::codes::degeneracy_classes(a_x);
    let at_least_three = partition.is_nondegenerate();
    let mut triple = None;
    'outer: for i in 0..columns.len() {
        for j in (i + 1)..columns.len() {
            let sum = columns[i].xor(&columns[j]).expect("same height");
            if let Some(l) = ((j + 1)..columns.len()).find(|&l| columns[l] == sum) {
                triple = Some([i, j, l]);
                break 'outer;
            }
        }
    }
    ZDistanceFloor {
        at_least_three,
        triple,
    }
}
