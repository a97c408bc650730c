//! Transversal diagonal gates.
//!
//! A transversal phase gate applies `P(p_i·π/2^(k−1))` on qubit `i`. All
//! arithmetic is on the integers `p_i` modulo `2^k`; no floating point is
//! involved anywhere.

use std::fmt;

use serde::Serialize;

use crate::codes::StandardFormCode;
use crate::congruence::{solve_homogeneous, Ring2k, SolutionModule};
use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec};
use crate::orthogonality::{is_k_orthogonal, isolate_column, OrthogonalityReport};

/// Largest supported denominator exponent.
pub const MAX_K: u32 = 62;

fn check_k(k: u32) -> Result<()> {
    if !(1..=MAX_K).contains(&k) {
        return Err(Error::range("phase exponent k", format!("k = {k} must lie in 1..={MAX_K}")));
    }
    Ok(())
}

/// Per-qubit phases `θ_i = p_i·π/2^(k−1)` with `0 <= p_i < 2^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DyadicPhaseVector {
    k: u32,
    p: Vec<u64>,
}

impl DyadicPhaseVector {
    /// Numerators are reduced modulo `2^k`.
    pub fn new(k: u32, p: Vec<u64>) -> Result<Self> {
        check_k(k)?;
        let ring = Ring2k::new(k);
        Ok(DyadicPhaseVector {
            k,
            p: p.into_iter().map(|x| ring.reduce(x)).collect(),
        })
    }

    pub fn uniform(k: u32, n: usize, p: u64) -> Result<Self> {
        DyadicPhaseVector::new(k, vec![p; n])
    }

    pub fn zeros(k: u32, n: usize) -> Result<Self> {
        DyadicPhaseVector::new(k, vec![0; n])
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        1 << self.k
    }

    pub fn numerators(&self) -> &[u64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Qubits with odd `p_i`.
    pub fn parity_support(&self) -> BitVec {
        BitVec::from_bools(&self.p.iter().map(|x| x & 1 == 1).collect::<Vec<_>>())
    }

    /// `Σ_i v_i·p_i mod 2^k`.
    pub fn weighted_sum(&self, v: &BitVec) -> u64 {
        let ring = Ring2k::new(self.k);
        v.iter_ones().fold(0, |acc, i| ring.add(acc, self.p[i]))
    }

    /// Gate applied `times` times in a row.
    pub fn repeat(&self, times: u64) -> DyadicPhaseVector {
        let ring = Ring2k::new(self.k);
        DyadicPhaseVector {
            k: self.k,
            p: self.p.iter().map(|&x| ring.mul(x, times)).collect(),
        }
    }
}

/// The phase `numerator·π/2^exponent`, with `numerator < 2^(exponent+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LogicalPhase {
    pub numerator: u64,
    pub exponent: u32,
}

impl LogicalPhase {
    pub fn new(numerator: u64, exponent: u32) -> Self {
        let ring = Ring2k::new(exponent + 1);
        LogicalPhase {
            numerator: ring.reduce(numerator),
            exponent,
        }
    }

    /// Same phase with the fraction fully reduced.
    pub fn reduced(self) -> LogicalPhase {
        let mut out = self;
        while out.exponent > 0 && out.numerator % 2 == 0 {
            out.numerator /= 2;
            out.exponent -= 1;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }
}

impl fmt::Display for LogicalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        let num = match r.numerator {
            0 => return f.write_str("0"),
            1 => String::new(),
            n => n.to_string(),
        };
        if r.exponent == 0 {
            write!(f, "{num}π")
        } else {
            write!(f, "{num}π/{}", 1u128 << r.exponent)
        }
    }
}

/// Outcome of applying a transversal phase gate to the code space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhaseAction {
    /// The gate acts as the logical phase gate `P(phase)`.
    Logical(LogicalPhase),
    /// `|x>` with `x` in the span of `A_X` picks up a nonzero phase, so `|0_L>` is not preserved.
    BreaksZero { x: BitVec, residue: u64 },
    /// `|0_L>` is preserved but the terms of `|1_L> = X_s|0_L>` pick up different phases.
    BreaksOne { x: BitVec, residue: u64 },
}

impl PhaseAction {
    pub fn phase(&self) -> Option<LogicalPhase> {
        match self {
            PhaseAction::Logical(p) => Some(*p),
            _ => None,
        }
    }
}

/// Logical action of `⊗_i P(p_i·π/2^(k−1))`.
///
/// Every string `x` in the span of `A_X` must satisfy `Σ x_i p_i ≡ 0 (mod 2^k)`,
/// and every string of `x ⊕ s` must pick up the same phase `Σ s_i p_i`. The
/// amplitudes `s̃_x` of non-CSS codes play no role: the gate is diagonal, so
/// only the basis-state supports matter.
pub fn logical_phase_action(sf: &StandardFormCode, theta: &DyadicPhaseVector) -> Result<PhaseAction> {
    if theta.len() != sf.n() {
        return Err(Error::dim(sf.n(), theta.len()));
    }
    let ring = Ring2k::new(theta.k());
    let span = sf.a_x().span_enumerate();
    for x in &span {
        let residue = theta.weighted_sum(x);
        if residue != 0 {
            return Ok(PhaseAction::BreaksZero { x: x.clone(), residue });
        }
    }
    let base = theta.weighted_sum(sf.s());
    for x in &span {
        let shifted = x.xor(sf.s())?;
        let residue = ring.sub(theta.weighted_sum(&shifted), base);
        if residue != 0 {
            return Ok(PhaseAction::BreaksOne { x: x.clone(), residue });
        }
    }
    Ok(PhaseAction::Logical(LogicalPhase::new(base, theta.k() - 1)))
}

/// Exponent `e` such that every transversal phase `θ_i` is a multiple of `π/2^e`.
///
/// Each column is isolated by row operations; the product of all `m` rows then
/// picks out that single qubit, forcing `2^(m−1)·θ_i ≡ 0 (mod 2π)`, i.e. `e = m − 2`.
pub fn phase_quantization_exponent(sf: &StandardFormCode) -> Result<u32> {
    let a_x = sf.a_x();
    let m = a_x.nrows();
    if m < 2 {
        return Err(Error::range(
            "row count m",
            format!("phase quantization needs at least 2 rows of A_X, found {m}"),
        ));
    }
    let partition = crate::codes::degeneracy_classes(a_x);
    if let Some(z) = partition.undetectable {
        return Err(Error::NoSyndrome {
            column: partition.classes[z][0],
        });
    }
    if let Some(class) = partition.classes.iter().find(|c| c.len() > 1) {
        return Err(Error::Degenerate {
            first: class[0],
            second: class[1],
        });
    }
    for q in 0..a_x.ncols() {
        let isolated = isolate_column(a_x, q)?;
        let product = crate::gf2::and_product(isolated.rows())?;
        if product != BitVec::from_indices(a_x.ncols(), &[q]) {
            return Err(Error::InvalidCode(format!(
                "isolating column {q} left product {product}"
            )));
        }
    }
    Ok(m as u32 - 2)
}

/// All transversal phase vectors `p ∈ (Z/2^k)^n` acting as a logical phase gate.
#[derive(Clone, Debug)]
pub struct TransversalPhases {
    pub k: u32,
    module: SolutionModule,
    /// Generators of the solution set, each with its logical phase.
    pub generators: Vec<(DyadicPhaseVector, LogicalPhase)>,
    /// Smallest nonzero logical phase reachable, if any.
    pub finest_logical_phase: Option<LogicalPhase>,
}

impl TransversalPhases {
    pub fn log2_count(&self) -> u32 {
        self.module.log2_count()
    }

    pub fn contains(&self, p: &[u64]) -> bool {
        self.module.contains(p)
    }
}

/// Products of every row subset of size `1..=max_t`, with the subset size.
fn subset_products(a_x: &BitMat, max_t: usize) -> Vec<(usize, Vec<usize>, BitVec)> {
    fn walk(
        rows: &[BitVec],
        max_t: usize,
        start: usize,
        acc: Option<&BitVec>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<(usize, Vec<usize>, BitVec)>,
    ) {
        if chosen.len() == max_t {
            return;
        }
        for i in start..rows.len() {
            let mut next = rows[i].clone();
            if let Some(a) = acc {
                next.and_assign_unchecked(a);
            }
            chosen.push(i);
            out.push((chosen.len(), chosen.clone(), next.clone()));
            if !next.is_zero() {
                walk(rows, max_t, i + 1, Some(&next), chosen, out);
            }
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    walk(a_x.rows(), max_t, 0, None, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    out
}

/// Solves for every transversal phase gate at level `k`.
///
/// The conditions over the whole span of `A_X` are equivalent to graded
/// conditions on generator products: `2^(t−1)·Σ_i (x^1···x^t)_i p_i ≡ 0` and,
/// for the `|1_L>` branch, `2^t·Σ_i (x^1···x^t·s)_i p_i ≡ 0 (mod 2^k)`.
pub fn find_transversal_phases(sf: &StandardFormCode, k: u32) -> Result<TransversalPhases> {
    check_k(k)?;
    let n = sf.n();
    let ring = Ring2k::new(k);
    let mut rows = Vec::new();
    for (t, _, product) in subset_products(sf.a_x(), k as usize) {
        let zero_scale = 1u64 << (t - 1);
        rows.push(congruence_row(&product, zero_scale, ring));
        if (t as u32) < k {
            let one = product.and(sf.s())?;
            rows.push(congruence_row(&one, zero_scale << 1, ring));
        }
    }
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let module = solve_homogeneous(&rows, n, k);
    let mut generators = Vec::new();
    let mut finest: Option<u32> = None;
    for g in module.generators() {
        let theta = DyadicPhaseVector::new(k, g)?;
        let numerator = theta.weighted_sum(sf.s());
        if numerator != 0 {
            let v = numerator.trailing_zeros();
            finest = Some(finest.map_or(v, |f| f.min(v)));
        }
        generators.push((theta, LogicalPhase::new(numerator, k - 1)));
    }
    Ok(TransversalPhases {
        k,
        module,
        generators,
        finest_logical_phase: finest.map(|v| LogicalPhase::new(1 << v, k - 1)),
    })
}

fn congruence_row(support: &BitVec, scale: u64, ring: Ring2k) -> Vec<u64> {
    let mut row = vec![0u64; support.len()];
    for i in support.iter_ones() {
        row[i] = ring.reduce(scale);
    }
    row
}

/// One graded congruence `Σ_i (x^1···x^t)_i p_i ≡ 0 (mod 2^exp)` over all `t`-subsets of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedCheck {
    pub t: usize,
    /// Exponent of the modulus; zero means the condition is vacuous.
    pub modulus_exponent: u32,
    pub holds: bool,
    /// First failing row subset and its residue.
    pub witness: Option<(Vec<usize>, u64)>,
}

fn graded_checks(a_x: &BitMat, p: &DyadicPhaseVector, max_t: usize, exponent: impl Fn(usize) -> i64) -> Vec<GradedCheck> {
    let products = subset_products(a_x, max_t);
    (1..=max_t)
        .map(|t| {
            let e = exponent(t).max(0) as u32;
            let mask = if e == 0 { 0 } else { (1u64 << e) - 1 };
            let witness = products
                .iter()
                .filter(|(size, _, _)| *size == t)
                .map(|(_, rows, prod)| (rows, p.weighted_sum(prod) & mask))
                .find(|(_, residue)| *residue != 0)
                .map(|(rows, residue)| (rows.clone(), residue));
            GradedCheck {
                t,
                modulus_exponent: e,
                holds: witness.is_none(),
                witness,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NecessityReport {
    pub logical_phase: LogicalPhase,
    #[serde(serialize_with = "crate::io::serialize_bits")]
    pub restriction: BitVec,
    pub orthogonality: OrthogonalityReport,
    /// `Σ_i (x^1···x^q)_i p_i ≡ 0 (mod 2^(k−q+1))` for `q = 1..=k`.
    pub graded: Vec<GradedCheck>,
}

/// Checks that a transversal `P(pπ/2^(k−1))` with odd logical numerator forces
/// k-orthogonality on the support `r_i = p_i mod 2`.
pub fn verify_korth_necessity(sf: &StandardFormCode, theta: &DyadicPhaseVector) -> Result<NecessityReport> {
    let phase = match logical_phase_action(sf, theta)? {
        PhaseAction::Logical(p) => p,
        PhaseAction::BreaksZero { x, residue } => {
            return Err(Error::Precondition(format!(
                "Σ x_i p_i ≡ {residue} (mod 2^{}) for x = {x}: the gate does not preserve |0_L>",
                theta.k()
            )))
        }
        PhaseAction::BreaksOne { x, residue } => {
            return Err(Error::Precondition(format!(
                "terms of |1_L> differ in phase by {residue} (mod 2^{}) at x = {x}",
                theta.k()
            )))
        }
    };
    if phase.numerator % 2 == 0 {
        return Err(Error::Precondition(format!(
            "logical numerator Σ s_i p_i = {} is even; the gate is a power of a coarser phase",
            phase.numerator
        )));
    }
    let k = theta.k() as usize;
    let restriction = theta.parity_support();
    let orthogonality = is_k_orthogonal(sf.a_x(), k, Some(&restriction))?;
    let graded = graded_checks(sf.a_x(), theta, k, |q| k as i64 - q as i64 + 1);
    Ok(NecessityReport {
        logical_phase: phase,
        restriction,
        orthogonality,
        graded,
    })
}

/// A claimed transversal diagonal gate: `⊗_i c^q-P(p_i·π/2^(k−q−1))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateDescriptor {
    controls: u32,
    realized: DyadicPhaseVector,
}

impl GateDescriptor {
    /// Every `p_i` must be a power of the base gate `P(π/2^(k−q−1))`, i.e. `p_i < 2^(k−q)`.
    pub fn new(k: u32, controls: u32, p: Vec<u64>) -> Result<Self> {
        check_k(k)?;
        if controls >= k {
            return Err(Error::range(
                "control count",
                format!("q = {controls} must be below k = {k}"),
            ));
        }
        let period = 1u64 << (k - controls);
        if let Some((i, &bad)) = p.iter().enumerate().find(|(_, &x)| x >= period) {
            return Err(Error::range(
                "gate power",
                format!("p[{i}] = {bad} is not a power of the base gate below its period {period}"),
            ));
        }
        Ok(GateDescriptor {
            controls,
            realized: DyadicPhaseVector::new(k, p)?,
        })
    }

    pub fn k(&self) -> u32 {
        self.realized.k()
    }

    pub fn controls(&self) -> u32 {
        self.controls
    }

    pub fn realized(&self) -> &DyadicPhaseVector {
        &self.realized
    }

    /// Exponent `j` of the base gate `P(π/2^j)`.
    pub fn base_exponent(&self) -> u32 {
        self.k() - self.controls - 1
    }

    /// At least third level of the Clifford hierarchy.
    pub fn is_non_clifford(&self) -> bool {
        self.k() >= 3
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ControlledPhaseReport {
    pub holds: bool,
    pub controls: u32,
    pub k: u32,
    /// `Σ_i (x^1···x^t)_i p_i ≡ 0 (mod 2^(k−max(q,t−1)))` for `t = 1..=k`.
    pub conditions: Vec<GradedCheck>,
    /// Target phase on `|1_L>^(q+1)`: `Σ_i s_i p_i · π/2^(k−q−1)`.
    pub target_phase: LogicalPhase,
    #[serde(serialize_with = "crate::io::serialize_bits")]
    pub restriction: BitVec,
    pub restriction_weight: usize,
    pub non_clifford: bool,
    /// `|r| >= 2^(k+1) − 1`, checked when the gate passes and is non-Clifford.
    pub support_bound: Option<bool>,
}

/// Checks a transversal q-controlled phase gate across `q + 1` code blocks.
pub fn controlled_phase_action(sf: &StandardFormCode, gate: &GateDescriptor) -> Result<ControlledPhaseReport> {
    if !sf.is_css() {
        return Err(Error::Unsupported(
            "controlled-phase verification needs a CSS code".into(),
        ));
    }
    let theta = gate.realized();
    if theta.len() != sf.n() {
        return Err(Error::dim(sf.n(), theta.len()));
    }
    let k = gate.k() as i64;
    let q = gate.controls() as i64;
    let conditions = graded_checks(sf.a_x(), theta, k as usize, |t| k - q.max(t as i64 - 1));
    let holds = conditions.iter().all(|c| c.holds);
    let base = gate.base_exponent();
    let target_phase = LogicalPhase::new(theta.weighted_sum(sf.s()), base);
    let restriction = theta.parity_support();
    let restriction_weight = restriction.weight();
    let non_clifford = gate.is_non_clifford() && target_phase.numerator % 2 == 1;
    let support_bound = (holds && non_clifford)
        .then(|| restriction_weight as u128 >= (1u128 << (gate.k() + 1)) - 1);
    Ok(ControlledPhaseReport {
        holds,
        controls: gate.controls(),
        k: gate.k(),
        conditions,
        target_phase,
        restriction,
        restriction_weight,
        non_clifford,
        support_bound,
    })
}

/// CSS codes admit transversal CNOT between blocks.
pub fn transversal_cnot_check(sf: &StandardFormCode) -> bool {
    sf.is_css()
}
