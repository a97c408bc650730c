//! Stabilizer codes and their reduction to standard form
//!
//! ```text
//!     [ A_X | B   ]   m rows, A_X full rank, signs s_xy
//!     [ 0   | A_Z ]   n-1-m rows, all with + sign
//! ```
//!
//! with logical operators `Z_L = Z_r` and `X_L = X_s`.

use crate::error::{check_len, Error, Result};
use crate::gates::DyadicPhaseVector;
use crate::gf2::{BitMat, BitVec};
use crate::pauli::{Phase, PauliOp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliOp>,
    logical_x: Option<PauliOp>,
    logical_z: Option<PauliOp>,
}

impl StabilizerCode {
    /// Validates and builds a code. Generators must be Hermitian, pairwise
    /// commuting and independent; logicals, when given, must commute with every
    /// generator and anticommute with each other.
    pub fn new(
        n: usize,
        generators: Vec<PauliOp>,
        logical_x: Option<PauliOp>,
        logical_z: Option<PauliOp>,
    ) -> Result<Self> {
        for g in generators.iter().chain(logical_x.iter()).chain(logical_z.iter()) {
            if g.num_qubits() != n {
                return Err(Error::dim(n, g.num_qubits()));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.is_hermitian() {
                return Err(Error::InvalidCode(format!("generator {i} ({g}) is not Hermitian")));
            }
            if g.is_identity_up_to_phase() {
                return Err(Error::InvalidCode(format!("generator {i} is proportional to the identity")));
            }
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                if !g.commutes_unchecked(h) {
                    return Err(Error::InvalidCode(format!(
                        "generators {i} ({g}) and {j} ({h}) anticommute"
                    )));
                }
            }
        }
        let code = StabilizerCode {
            n,
            generators,
            logical_x,
            logical_z,
        };
        let rank = code.symplectic_matrix().rank();
        if rank != code.generators.len() {
            return Err(Error::InvalidCode(format!(
                "generators are dependent: {} given, symplectic rank {rank}",
                code.generators.len()
            )));
        }
        for (name, l) in [("logical_x", &code.logical_x), ("logical_z", &code.logical_z)] {
            let Some(l) = l else { continue };
            if !l.is_hermitian() {
                return Err(Error::InvalidCode(format!("{name} ({l}) is not Hermitian")));
            }
            if let Some(i) = code.generators.iter().position(|g| !g.commutes_unchecked(l)) {
                return Err(Error::InvalidCode(format!(
                    "{name} ({l}) anticommutes with generator {i}"
                )));
            }
        }
        if let (Some(x), Some(z)) = (&code.logical_x, &code.logical_z) {
            if x.commutes_unchecked(z) {
                return Err(Error::InvalidCode(
                    "logical_x and logical_z must anticommute".into(),
                ));
            }
        }
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    pub fn logical_x(&self) -> Option<&PauliOp> {
        self.logical_x.as_ref()
    }

    pub fn logical_z(&self) -> Option<&PauliOp> {
        self.logical_z.as_ref()
    }

    pub fn num_logical(&self) -> usize {
        self.n - self.generators.len()
    }

    /// Rows `(x | z)` of length `2n`, one per generator.
    pub fn symplectic_matrix(&self) -> BitMat {
        let rows = self
            .generators
            .iter()
            .map(|g| g.xbits().concat(g.zbits()))
            .collect();
        BitMat::from_rows(rows, 2 * self.n).expect("generator lengths validated")
    }

    /// Generator indices whose product equals `p` up to phase, if any.
    pub fn decompose(&self, p: &PauliOp) -> Option<Vec<usize>> {
        if p.num_qubits() != self.n {
            return None;
        }
        let g = self.generators.len();
        let rows: Vec<BitVec> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, gen)| {
                gen.xbits()
                    .concat(gen.zbits())
                    .concat(&BitVec::from_indices(g, &[i]))
            })
            .collect();
        let ech = BitMat::from_rows(rows, 2 * self.n + g)
            .expect("consistent widths")
            .echelon();
        let target = p.xbits().concat(p.zbits()).concat(&BitVec::zeros(g));
        let reduced = ech.reduce(&target);
        if (0..2 * self.n).any(|i| reduced.get(i)) {
            return None;
        }
        Some((0..g).filter(|&i| reduced.get(2 * self.n + i)).collect())
    }

    /// True iff `p`, including its phase, is an element of the stabilizer group.
    pub fn group_contains(&self, p: &PauliOp) -> bool {
        let Some(indices) = self.decompose(p) else {
            return false;
        };
        let product = indices
            .iter()
            .fold(PauliOp::identity(self.n), |acc, &i| acc.mul_unchecked(&self.generators[i]));
        product == *p
    }
}

/// A single-logical-qubit stabilizer code in standard form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormCode {
    n: usize,
    a_x: BitMat,
    b: BitMat,
    x_phases: Vec<Phase>,
    a_z: BitMat,
    r: BitVec,
    s: BitVec,
    sign_frame: BitVec,
    /// Logical X with any Z content; its X part is `s`.
    logical_x: PauliOp,
}

impl StandardFormCode {
    /// Builds a CSS code in standard form (`B = 0`, all signs `+`).
    pub fn css(a_x: BitMat, a_z: BitMat, r: BitVec, s: BitVec) -> Result<Self> {
        let n = a_x.ncols();
        let m = a_x.nrows();
        StandardFormCode::from_parts(
            a_x,
            BitMat::zeros(m, n),
            vec![Phase::ONE; m],
            a_z,
            r,
            s,
        )
    }

    /// Builds a standard-form code from its blocks, checking the structural invariants.
    pub fn from_parts(
        a_x: BitMat,
        b: BitMat,
        x_phases: Vec<Phase>,
        a_z: BitMat,
        r: BitVec,
        s: BitVec,
    ) -> Result<Self> {
        let n = a_x.ncols();
        for m in [&b, &a_z] {
            if m.ncols() != n {
                return Err(Error::dim(n, m.ncols()));
            }
        }
        if b.nrows() != a_x.nrows() {
            return Err(Error::dim(a_x.nrows(), b.nrows()));
        }
        if x_phases.len() != a_x.nrows() {
            return Err(Error::dim(a_x.nrows(), x_phases.len()));
        }
        check_len(&r, n)?;
        check_len(&s, n)?;
        if !a_x.is_full_row_rank() {
            return Err(Error::InvalidCode("A_X is not full rank".into()));
        }
        if !a_z.is_full_row_rank() {
            return Err(Error::InvalidCode("A_Z is not full rank".into()));
        }
        let sf = StandardFormCode {
            n,
            a_x,
            b,
            x_phases,
            a_z,
            logical_x: PauliOp::x_type(s.clone()),
            r,
            s,
            sign_frame: BitVec::zeros(n),
        };
        let stabs = sf.stabilizers();
        for (i, g) in stabs.iter().enumerate() {
            if !g.is_hermitian() {
                return Err(Error::InvalidCode(format!("row {i} ({g}) is not Hermitian")));
            }
            for (j, h) in stabs.iter().enumerate().skip(i + 1) {
                if !g.commutes_unchecked(h) {
                    return Err(Error::InvalidCode(format!("rows {i} and {j} anticommute")));
                }
            }
        }
        if stabs.len() + 1 != n {
            return Err(Error::NotSingleLogical {
                logical: n - stabs.len(),
            });
        }
        if !sf.a_x.mul_vec(&sf.r)?.is_zero() {
            return Err(Error::InvalidCode("Z_r anticommutes with an X-type row".into()));
        }
        if !sf.a_z.mul_vec(&sf.s)?.is_zero() {
            return Err(Error::InvalidCode("X_s anticommutes with a Z-type row".into()));
        }
        if !sf.r.dot(&sf.s)? {
            return Err(Error::InvalidCode("|r·s| must be odd so that X_L and Z_L anticommute".into()));
        }
        Ok(sf)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of X-carrying rows, `m`.
    pub fn m(&self) -> usize {
        self.a_x.nrows()
    }

    pub fn a_x(&self) -> &BitMat {
        &self.a_x
    }

    pub fn b(&self) -> &BitMat {
        &self.b
    }

    pub fn a_z(&self) -> &BitMat {
        &self.a_z
    }

    /// Signs `s_xy` of the X-carrying rows.
    pub fn x_phases(&self) -> &[Phase] {
        &self.x_phases
    }

    /// Support of `Z_L`.
    pub fn r(&self) -> &BitVec {
        &self.r
    }

    /// Support of `X_L`.
    pub fn s(&self) -> &BitVec {
        &self.s
    }

    /// The `X_y` used to make every Z-type row positive (zero if none was needed).
    pub fn sign_frame(&self) -> &BitVec {
        &self.sign_frame
    }

    /// False when the input logical X carried Z content that was dropped to obtain `X_s`.
    pub fn pure_x_logical(&self) -> bool {
        self.logical_x.zbits().is_zero()
    }

    /// The logical X operator; equals `X_s` exactly when `pure_x_logical` holds.
    pub fn logical_x(&self) -> &PauliOp {
        &self.logical_x
    }

    pub fn is_css(&self) -> bool {
        self.b.is_zero()
    }

    /// All stabilizer generators: the X-carrying rows, then the Z-type rows.
    pub fn stabilizers(&self) -> Vec<PauliOp> {
        let mut out: Vec<PauliOp> = self
            .a_x
            .rows()
            .iter()
            .zip(self.b.rows())
            .zip(&self.x_phases)
            .map(|((x, z), &ph)| PauliOp::new(x.clone(), z.clone(), ph).expect("equal widths"))
            .collect();
        out.extend(self.a_z.rows().iter().map(|z| PauliOp::z_type(z.clone())));
        out
    }

    pub fn to_stabilizer_code(&self) -> Result<StabilizerCode> {
        StabilizerCode::new(
            self.n,
            self.stabilizers(),
            Some(self.logical_x.clone()),
            Some(PauliOp::z_type(self.r.clone())),
        )
    }

    /// Terms of `|0_L>` up to normalization: each string of the span of `A_X`
    /// together with its fourth-root-of-unity amplitude.
    pub fn logical_zero_support(&self) -> Vec<(BitVec, Phase)> {
        let gens = &self.stabilizers()[..self.m()];
        let total = 1usize << gens.len();
        let mut ops = Vec::with_capacity(total);
        ops.push(PauliOp::identity(self.n));
        for i in 1..total {
            let low = i.trailing_zeros() as usize;
            let next = ops[i & (i - 1)].mul_unchecked(&gens[low]);
            ops.push(next);
        }
        // i^e X^x Z^z |0...0> = i^e |x>
        ops.into_iter()
            .map(|op| (op.xbits().clone(), op.phase()))
            .collect()
    }
}

pub fn is_css(sf: &StandardFormCode) -> bool {
    sf.is_css()
}

pub fn logical_zero_support(sf: &StandardFormCode) -> Vec<(BitVec, Phase)> {
    sf.logical_zero_support()
}

/// Reduces a single-logical-qubit stabilizer code to standard form.
///
/// X-carrying rows are row-reduced on their X part with pivots left to right,
/// the remaining Z-type rows are row-reduced, and the Z parts of the X rows
/// are cleared at the Z-pivot columns. Negative Z-type rows are then made
/// positive by conjugating everything with an `X_y` that anticommutes with
/// exactly those rows.
pub fn to_standard_form(code: &StabilizerCode) -> Result<StandardFormCode> {
    let n = code.n();
    if code.num_logical() != 1 {
        return Err(Error::NotSingleLogical {
            logical: code.num_logical(),
        });
    }
    let mut rows: Vec<PauliOp> = code.generators().to_vec();

    let mut next = 0;
    let mut x_pivots = Vec::new();
    for col in 0..n {
        let Some(found) = (next..rows.len()).find(|&i| rows[i].xbits().get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && row.xbits().get(col) {
                *row = row.mul_unchecked(&pivot);
            }
        }
        x_pivots.push(col);
        next += 1;
    }
    let m = next;
    let (x_rows, z_rows) = rows.split_at_mut(m);

    let mut znext = 0;
    let mut z_pivots = Vec::new();
    for col in 0..n {
        let Some(found) = (znext..z_rows.len()).find(|&i| z_rows[i].zbits().get(col)) else {
            continue;
        };
        z_rows.swap(znext, found);
        let pivot = z_rows[znext].clone();
        for (i, row) in z_rows.iter_mut().enumerate() {
            if i != znext && row.zbits().get(col) {
                *row = row.mul_unchecked(&pivot);
            }
        }
        for row in x_rows.iter_mut() {
            if row.zbits().get(col) {
                *row = row.mul_unchecked(&pivot);
            }
        }
        z_pivots.push(col);
        znext += 1;
    }

    // Z-type rows are Hermitian, so their phase is +1 or -1.
    let negative: Vec<bool> = z_rows.iter().map(|r| r.phase() == Phase::MINUS_ONE).collect();
    let mut frame = BitVec::zeros(n);
    for (&neg, &p) in negative.iter().zip(&z_pivots) {
        if neg {
            frame.set(p, true);
        }
    }
    let rows: Vec<PauliOp> = rows.iter().map(|r| r.conjugate_by_x(&frame)).collect();
    let (x_rows, z_rows) = rows.split_at(m);
    if let Some(bad) = z_rows.iter().position(|r| r.phase() != Phase::ONE) {
        let pattern: String = negative.iter().map(|&b| if b { '-' } else { '+' }).collect();
        return Err(Error::SignFixing {
            pattern: format!("{pattern} (row {bad})"),
        });
    }

    let a_x = BitMat::from_rows(x_rows.iter().map(|r| r.xbits().clone()).collect(), n)?;
    let b = BitMat::from_rows(x_rows.iter().map(|r| r.zbits().clone()).collect(), n)?;
    let x_phases = x_rows.iter().map(PauliOp::phase).collect();
    let a_z = BitMat::from_rows(z_rows.iter().map(|r| r.zbits().clone()).collect(), n)?;

    let logical_x = code.logical_x().map(|l| l.conjugate_by_x(&frame));
    let logical_z = code.logical_z().map(|l| l.conjugate_by_x(&frame));
    let r = diagonal_logical(x_rows, &x_pivots, &a_x, &a_z, logical_z.as_ref(), logical_x.as_ref())?;
    let conjugate = conjugate_logical(&rows, &r, logical_x.as_ref(), logical_z.as_ref())?;

    let mut sf = StandardFormCode::from_parts(a_x, b, x_phases, a_z, r, conjugate.xbits().clone())?;
    sf.sign_frame = frame;
    sf.logical_x = conjugate;
    Ok(sf)
}

/// Finds the support `r` of a pure-Z logical operator, preferring the given logicals.
fn diagonal_logical(
    x_rows: &[PauliOp],
    x_pivots: &[usize],
    a_x: &BitMat,
    a_z: &BitMat,
    preferred: Option<&PauliOp>,
    other: Option<&PauliOp>,
) -> Result<BitVec> {
    let z_ech = a_z.echelon();
    let mut candidates: Vec<PauliOp> = preferred.into_iter().chain(other).cloned().collect();
    if let (Some(a), Some(b)) = (preferred, other) {
        candidates.push(a.mul_unchecked(b));
    }
    for cand in candidates {
        let mut op = cand;
        for (row, &p) in x_rows.iter().zip(x_pivots) {
            if op.xbits().get(p) {
                op = op.mul_unchecked(row);
            }
        }
        if op.xbits().is_zero() && !z_ech.contains(op.zbits()) {
            return Ok(op.zbits().clone());
        }
    }
    // Pure-Z normalizer elements form null(A_X), which exceeds span(A_Z) by one dimension.
    a_x.null_space()
        .rows()
        .iter()
        .find(|v| !z_ech.contains(v))
        .cloned()
        .ok_or_else(|| Error::InvalidCode("no pure-Z logical operator exists".into()))
}

/// A Hermitian logical anticommuting with `Z_r`; its X part is `s`.
fn conjugate_logical(
    stabilizers: &[PauliOp],
    r: &BitVec,
    logical_x: Option<&PauliOp>,
    logical_z: Option<&PauliOp>,
) -> Result<PauliOp> {
    let z_l = PauliOp::z_type(r.clone());
    let mut candidates: Vec<PauliOp> = logical_x.into_iter().chain(logical_z).cloned().collect();
    if let (Some(a), Some(b)) = (logical_x, logical_z) {
        candidates.push(a.mul_unchecked(b));
    }
    if let Some(op) = candidates.into_iter().find(|c| !c.commutes_unchecked(&z_l)) {
        return Ok(op);
    }
    // Solve for (a | b) commuting with every stabilizer and anticommuting with Z_r:
    // g.x·b + g.z·a = 0 for each stabilizer, r·a = 1.
    let n = r.len();
    let mut rows: Vec<BitVec> = stabilizers
        .iter()
        .map(|g| g.zbits().concat(g.xbits()).concat(&BitVec::zeros(1)))
        .collect();
    rows.push(r.concat(&BitVec::zeros(n)).concat(&BitVec::from_indices(1, &[0])));
    let system = BitMat::from_rows(rows, 2 * n + 1)?;
    let sol = solve_affine(&system, 2 * n)
        .ok_or_else(|| Error::InvalidCode("no logical operator anticommutes with Z_r".into()))?;
    let a = sol.select(&(0..n).collect::<Vec<_>>());
    let b = sol.select(&(n..2 * n).collect::<Vec<_>>());
    let ys = a.and_weight(&b)?;
    PauliOp::new(a, b, Phase::from_exponent(ys as i64))
}

/// Solves `M[:, ..vars] · v = M[:, vars]` over GF(2), choosing free variables as zero.
fn solve_affine(augmented: &BitMat, vars: usize) -> Option<BitVec> {
    let ech = augmented.echelon();
    let mut v = BitVec::zeros(vars);
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        if p == vars {
            return None;
        }
        if row.get(vars) {
            v.set(p, true);
        }
    }
    Some(v)
}

/// Qubits grouped by identical columns of `A_X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyPartition {
    pub classes: Vec<Vec<usize>>,
    /// First member of each class.
    pub representatives: Vec<usize>,
    /// Index into `classes` of the all-zero column class, whose qubits have no syndrome.
    pub undetectable: Option<usize>,
}

impl DegeneracyPartition {
    pub fn is_nondegenerate(&self) -> bool {
        self.undetectable.is_none() && self.classes.iter().all(|c| c.len() == 1)
    }

    /// Class index of every qubit.
    pub fn class_of(&self) -> Vec<usize> {
        let n = self.classes.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (ci, class) in self.classes.iter().enumerate() {
            for &q in class {
                out[q] = ci;
            }
        }
        out
    }
}

pub fn degeneracy_classes(a_x: &BitMat) -> DegeneracyPartition {
    let columns = a_x.columns();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut keys: std::collections::HashMap<&BitVec, usize> = std::collections::HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        let idx = *keys.entry(col).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(j);
    }
    let undetectable = classes
        .iter()
        .position(|c| columns[c[0]].is_zero());
    DegeneracyPartition {
        representatives: classes.iter().map(|c| c[0]).collect(),
        classes,
        undetectable,
    }
}

/// Result of moving all phase within a degeneracy class onto one qubit.
#[derive(Clone, Debug)]
pub struct NondegenerateReduction {
    pub partition: DegeneracyPartition,
    /// Indicator of the class representatives.
    pub support: BitVec,
    /// Full-length phases: class sums on representatives, zero elsewhere.
    pub phases: DyadicPhaseVector,
    /// `A_X` restricted to the representative columns.
    pub reduced_a_x: BitMat,
}

pub fn nondegenerate_reduction(
    sf: &StandardFormCode,
    theta: &DyadicPhaseVector,
) -> Result<NondegenerateReduction> {
    if theta.len() != sf.n() {
        return Err(Error::dim(sf.n(), theta.len()));
    }
    let partition = degeneracy_classes(sf.a_x());
    let mut p = vec![0u64; sf.n()];
    for class in &partition.classes {
        let total = class
            .iter()
            .fold(0u64, |acc, &q| acc.wrapping_add(theta.numerators()[q]));
        p[class[0]] = total;
    }
    let phases = DyadicPhaseVector::new(theta.k(), p)?;
    let support = BitVec::from_indices(sf.n(), &partition.representatives);
    let reduced_a_x = sf.a_x().select_columns(&partition.representatives);
    Ok(NondegenerateReduction {
        partition,
        support,
        phases,
        reduced_a_x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ops(list: &[&str]) -> Vec<PauliOp> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    pub(crate) fn steane() -> StabilizerCode {
        StabilizerCode::new(
            7,
            ops(&[
                "+IIIXXXX", "+IXXIIXX", "+XIXIXIX", "+IIIZZZZ", "+IZZIIZZ", "+ZIZIZIZ",
            ]),
            Some("+XXXXXXX".parse().unwrap()),
            Some("+ZZZZZZZ".parse().unwrap()),
        )
        .unwrap()
    }

    pub(crate) fn five_qubit() -> StabilizerCode {
        StabilizerCode::new(
            5,
            ops(&["+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ"]),
            Some("+XXXXX".parse().unwrap()),
            Some("+ZZZZZ".parse().unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn validation_rejects_bad_codes() {
        assert!(matches!(
            StabilizerCode::new(2, ops(&["+XI", "+ZI"]), None, None),
            Err(Error::InvalidCode(_))
        ));
        assert!(matches!(
            StabilizerCode::new(3, ops(&["+ZZI", "+IZZ", "+ZIZ"]), None, None),
            Err(Error::InvalidCode(_))
        ));
        assert!(matches!(
            StabilizerCode::new(2, ops(&["+iZZ"]), None, None),
            Err(Error::InvalidCode(_))
        ));
        let two_logicals = StabilizerCode::new(3, ops(&["+ZZI"]), None, None).unwrap();
        assert!(matches!(
            to_standard_form(&two_logicals),
            Err(Error::NotSingleLogical { logical: 2 })
        ));
    }

    #[test]
    fn steane_reduces_to_css_hamming_form() {
        let sf = to_standard_form(&steane()).unwrap();
        assert!(sf.is_css());
        assert_eq!(sf.m(), 3);
        let h3 = BitMat::from_strs(&["0001111", "0110011", "1010101"]).unwrap();
        assert!(sf.a_x().same_row_space(&h3));
        assert!(sf.a_z().same_row_space(&h3));
        assert!(sf.sign_frame().is_zero());
    }

    #[test]
    fn generator_order_and_mixing_do_not_matter() {
        // Same Steane group, generators multiplied together and reordered.
        let mixed = StabilizerCode::new(
            7,
            ops(&[
                "+ZIZIZIZ",
                "+IIIYYYY",
                "+IXXIIXX",
                "+IZZIIZZ",
                "+XIXIXIX",
                "+IIIZZZZ",
            ]),
            None,
            None,
        )
        .unwrap();
        let a = to_standard_form(&mixed).unwrap();
        let b = to_standard_form(&steane()).unwrap();
        assert!(a.is_css());
        assert_eq!(a.a_x(), b.a_x());
        assert_eq!(a.a_z(), b.a_z());
    }

    #[test]
    fn five_qubit_code_is_not_css() {
        let sf = to_standard_form(&five_qubit()).unwrap();
        assert_eq!(sf.m(), 4);
        assert!(!sf.b().is_zero());
        assert!(!is_css(&sf));
        assert_eq!(sf.a_z().nrows(), 0);
        assert_eq!(sf.r(), &BitVec::ones(5));
    }

    #[test]
    fn negative_z_stabilizers_get_a_sign_frame() {
        let code = StabilizerCode::new(
            3,
            ops(&["-ZZI", "+IZZ"]),
            Some("+XXX".parse().unwrap()),
            Some("+ZII".parse().unwrap()),
        )
        .unwrap();
        let sf = to_standard_form(&code).unwrap();
        assert_eq!(sf.m(), 0);
        assert_eq!(sf.sign_frame(), &"100".parse::<BitVec>().unwrap());
        for g in sf.stabilizers() {
            assert_eq!(g.phase(), Phase::ONE);
            assert!(code.group_contains(&g.conjugate_by_x(sf.sign_frame())));
        }
    }

    #[test]
    fn logicals_are_derived_when_absent() {
        let bare = StabilizerCode::new(7, steane().generators().to_vec(), None, None).unwrap();
        let sf = to_standard_form(&bare).unwrap();
        assert!(sf.a_x().mul_vec(sf.r()).unwrap().is_zero());
        assert!(!sf.a_z().row_space_contains(sf.r()));
        assert!(sf.r().dot(sf.s()).unwrap());
    }

    #[test]
    fn logical_zero_support_examples() {
        let sf = to_standard_form(&steane()).unwrap();
        let support = sf.logical_zero_support();
        assert_eq!(support.len(), 8);
        assert!(support.iter().all(|(_, ph)| *ph == Phase::ONE));

        let trivial = StandardFormCode::css(
            BitMat::empty(1),
            BitMat::empty(1),
            BitVec::ones(1),
            BitVec::ones(1),
        )
        .unwrap();
        assert_eq!(
            trivial.logical_zero_support(),
            vec![(BitVec::zeros(1), Phase::ONE)]
        );
    }

    #[test]
    fn degeneracy_examples() {
        let dup = BitMat::from_strs(&["1100", "0110"]).unwrap();
        let part = degeneracy_classes(&dup);
        assert_eq!(part.classes, vec![vec![0], vec![1], vec![2], vec![3]]);
        let dup = BitMat::from_strs(&["1101", "0100"]).unwrap();
        let part = degeneracy_classes(&dup);
        assert_eq!(part.classes, vec![vec![0, 3], vec![1], vec![2]]);
        assert_eq!(part.undetectable, Some(2));
        assert!(!part.is_nondegenerate());
    }

    #[test]
    fn reduction_sums_phases_on_representatives() {
        // Qubits 0 and 1 share a column.
        let a_x = BitMat::from_strs(&["1111"]).unwrap();
        let a_z = BitMat::from_strs(&["1100", "0110"]).unwrap();
        let sf = StandardFormCode::css(a_x, a_z, BitVec::ones(4), "0001".parse().unwrap()).unwrap();
        let theta = DyadicPhaseVector::new(3, vec![1, 1, 0, 0]).unwrap();
        let red = nondegenerate_reduction(&sf, &theta).unwrap();
        assert_eq!(red.partition.classes, vec![vec![0, 1, 2, 3]]);
        assert_eq!(red.phases.numerators(), &[2, 0, 0, 0]);

        let identity = DyadicPhaseVector::new(3, vec![1, 2, 3, 4]).unwrap();
        let sf = to_standard_form(&steane()).unwrap();
        let red = nondegenerate_reduction(&sf, &DyadicPhaseVector::new(3, vec![1; 7]).unwrap()).unwrap();
        assert!(red.partition.is_nondegenerate());
        assert_eq!(red.phases.numerators(), &[1; 7]);
        assert!(nondegenerate_reduction(&sf, &identity).is_err());
    }
}
