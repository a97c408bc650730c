//! Randomized property suites shared by the property tests and the acceptance run.
//!
//! Each suite draws from a fixed seed and returns the number of cases checked,
//! or a description of the first counterexample.

#![allow(dead_code)]

use korthog::codes::nondegenerate_reduction;
use korthog::gates::find_transversal_phases;
use korthog::{
    is_k_orthogonal, logical_phase_action, to_standard_form, BitMat, BitVec, DyadicPhaseVector,
    PauliOp, PhaseAction, StabilizerCode, StandardFormCode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x6b6f7274;
pub const CASES: usize = 200;

pub type SuiteResult = Result<usize, String>;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

pub fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> BitVec {
    BitVec::from_bools(&(0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
}

pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> BitMat {
    BitMat::from_rows((0..m).map(|_| random_bits(rng, n)).collect(), n).unwrap()
}

fn letter(n: usize, q: usize, ch: char) -> PauliOp {
    let s: String = (0..n).map(|i| if i == q { ch } else { 'I' }).collect();
    s.parse().unwrap()
}

/// Images of `X_i` and `Z_i` under a Clifford; conjugation is a group automorphism.
struct Frame {
    x: Vec<PauliOp>,
    z: Vec<PauliOp>,
}

impl Frame {
    fn apply(&self, p: &PauliOp) -> PauliOp {
        let n = p.num_qubits();
        let mut out = PauliOp::identity(n).with_phase(p.phase());
        for i in 0..n {
            if p.xbits().get(i) {
                out = out.mul(&self.x[i]).unwrap();
            }
            if p.zbits().get(i) {
                out = out.mul(&self.z[i]).unwrap();
            }
        }
        out
    }
}

fn random_gate(rng: &mut ChaCha8Rng, n: usize) -> Frame {
    let mut x: Vec<PauliOp> = (0..n).map(|q| letter(n, q, 'X')).collect();
    let mut z: Vec<PauliOp> = (0..n).map(|q| letter(n, q, 'Z')).collect();
    let q = rng.gen_range(0..n);
    match rng.gen_range(0..3) {
        0 => std::mem::swap(&mut x[q], &mut z[q]),
        1 => x[q] = letter(n, q, 'Y'),
        _ => {
            let t = (q + rng.gen_range(1..n)) % n;
            x[q] = x[q].mul(&letter(n, t, 'X')).unwrap();
            z[t] = z[t].mul(&letter(n, q, 'Z')).unwrap();
        }
    }
    Frame { x, z }
}

/// A random single-logical-qubit stabilizer code on `n >= 2` qubits: a product
/// state scrambled by a random Clifford circuit, with generators remixed.
pub fn random_code(rng: &mut ChaCha8Rng, n: usize, with_logicals: bool) -> StabilizerCode {
    let mut gens: Vec<PauliOp> = (0..n - 1)
        .map(|q| {
            let z = letter(n, q, 'Z');
            if rng.gen_bool(0.5) {
                z.with_phase(korthog::Phase::MINUS_ONE)
            } else {
                z
            }
        })
        .collect();
    let mut lx = letter(n, n - 1, 'X');
    let mut lz = letter(n, n - 1, 'Z');
    for _ in 0..4 * n {
        let f = random_gate(rng, n);
        gens = gens.iter().map(|g| f.apply(g)).collect();
        lx = f.apply(&lx);
        lz = f.apply(&lz);
    }
    for _ in 0..n {
        if gens.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..gens.len());
        let j = (i + rng.gen_range(1..gens.len())) % gens.len();
        gens[i] = gens[i].mul(&gens[j]).unwrap();
    }
    let (lx, lz) = if with_logicals { (Some(lx), Some(lz)) } else { (None, None) };
    StabilizerCode::new(n, gens, lx, lz).unwrap()
}

fn and_all(rows: &[&BitVec], n: usize) -> BitVec {
    rows.iter().fold(BitVec::ones(n), |acc, r| acc.and(r).unwrap())
}

/// Parity of `|g_1···g_t|` for group elements equals the multilinear expansion over generators.
pub fn multilinearity() -> SuiteResult {
    let mut rng = rng(1);
    for case in 0..CASES {
        let m = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=20);
        let t = rng.gen_range(1..=3);
        let a = random_matrix(&mut rng, m, n);
        let subsets: Vec<Vec<usize>> = (0..t)
            .map(|_| (0..m).filter(|_| rng.gen_bool(0.5)).collect())
            .collect();
        let elems: Vec<BitVec> = subsets
            .iter()
            .map(|s| s.iter().fold(BitVec::zeros(n), |acc, &i| acc.xor(a.row(i)).unwrap()))
            .collect();
        let lhs = and_all(&elems.iter().collect::<Vec<_>>(), n).weight() % 2;
        let mut rhs = 0;
        let mut idx = vec![0usize; t];
        if subsets.iter().all(|s| !s.is_empty()) {
            loop {
                let rows: Vec<&BitVec> = (0..t).map(|j| a.row(subsets[j][idx[j]])).collect();
                rhs ^= and_all(&rows, n).weight() % 2;
                let mut j = 0;
                while j < t {
                    idx[j] += 1;
                    if idx[j] < subsets[j].len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == t {
                    break;
                }
            }
        }
        if lhs != rhs {
            return Err(format!("case {case}: parity {lhs} vs expansion {rhs} for {a:?}"));
        }
    }
    Ok(CASES)
}

/// Union count of the first `q` rows equals the inclusion–exclusion sum.
pub fn inclusion_exclusion() -> SuiteResult {
    let mut rng = rng(2);
    for case in 0..CASES {
        let m = rng.gen_range(1..=6);
        let n = rng.gen_range(1..=20);
        let a = random_matrix(&mut rng, m, n);
        let q = rng.gen_range(1..=m);
        let mut sum: i64 = 0;
        for mask in 1u32..(1 << q) {
            let rows: Vec<&BitVec> = (0..q).filter(|i| (mask >> i) & 1 == 1).map(|i| a.row(i)).collect();
            let w = and_all(&rows, n).weight() as i64;
            sum += if mask.count_ones() % 2 == 1 { w } else { -w };
        }
        let direct = a.covered_columns_count(q).unwrap() as i64;
        if direct != sum {
            return Err(format!("case {case}: direct {direct} vs inclusion-exclusion {sum}"));
        }
    }
    Ok(CASES)
}

/// Some nondecreasing `t`-tuple of span elements has an odd restricted product.
fn odd_tuple(span: &[BitVec], t: usize, start: usize, acc: &BitVec, restriction: &BitVec) -> bool {
    if t == 0 {
        return acc.and(restriction).unwrap().weight() % 2 == 1;
    }
    (start..span.len()).any(|i| odd_tuple(span, t - 1, i, &acc.and(&span[i]).unwrap(), restriction))
}

/// Generator-level k-orthogonality agrees with the check over all group-element tuples.
pub fn generator_vs_group() -> SuiteResult {
    let mut rng = rng(3);
    let mut outcomes = [0usize; 2];
    for case in 0..CASES {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=12);
        // Bias towards even structure so that both outcomes occur.
        let a = if rng.gen_bool(0.5) {
            random_matrix(&mut rng, m, n)
        } else {
            let half = random_matrix(&mut rng, m, n.div_ceil(2));
            let cols: Vec<BitVec> = half.columns().into_iter().flat_map(|c| [c.clone(), c]).take(n).collect();
            BitMat::from_columns(&cols, m).unwrap()
        };
        let k = rng.gen_range(1..=3);
        let r = rng.gen_bool(0.5).then(|| random_bits(&mut rng, n));
        let restriction = r.clone().unwrap_or_else(|| BitVec::ones(n));
        let span: Vec<BitVec> = a.span_enumerate();
        let holds = (1..=k).all(|t| !odd_tuple(&span, t, 0, &BitVec::ones(n), &restriction));
        outcomes[usize::from(holds)] += 1;
        let report = is_k_orthogonal(&a, k, r.as_ref()).unwrap();
        if report.holds != holds {
            return Err(format!("case {case}: generators say {}, group says {holds}", report.holds));
        }
        if let Some(w) = &report.witness {
            let rows: Vec<&BitVec> = w.rows.iter().map(|&i| a.row(i)).collect();
            if and_all(&rows, n).and(&restriction).unwrap().weight() % 2 != 1 {
                return Err(format!("case {case}: witness product has even weight"));
            }
        }
    }
    if outcomes.contains(&0) {
        return Err(format!("degenerate sample: {outcomes:?} (fails, holds)"));
    }
    Ok(CASES)
}

/// Standard form preserves the stabilizer group up to the recorded `X_y` frame and is idempotent.
pub fn standard_form_round_trip() -> SuiteResult {
    let mut rng = rng(4);
    for case in 0..CASES {
        let n = rng.gen_range(2..=10);
        let with_logicals = rng.gen_bool(0.7);
        let code = random_code(&mut rng, n, with_logicals);
        let sf = to_standard_form(&code).map_err(|e| format!("case {case}: {e}"))?;
        let out = sf.to_stabilizer_code().map_err(|e| format!("case {case}: {e}"))?;
        let frame = sf.sign_frame();
        for g in code.generators() {
            if !out.group_contains(&g.conjugate_by_x(frame)) {
                return Err(format!("case {case}: input generator {g} lost"));
            }
        }
        for g in out.generators() {
            if !code.group_contains(&g.conjugate_by_x(frame)) {
                return Err(format!("case {case}: output generator {g} not in the input group"));
            }
        }
        let z_l = PauliOp::z_type(sf.r().clone());
        if code.generators().iter().any(|g| !g.conjugate_by_x(frame).commutes(&z_l).unwrap())
            || code.group_contains(&z_l.conjugate_by_x(frame))
        {
            return Err(format!("case {case}: Z_r is not a logical operator"));
        }
        let again = to_standard_form(&out).map_err(|e| format!("case {case}: {e}"))?;
        if again.a_x() != sf.a_x() || again.a_z() != sf.a_z() || again.b() != sf.b() {
            return Err(format!("case {case}: standard form is not idempotent"));
        }
        if !again.sign_frame().is_zero() {
            return Err(format!("case {case}: second pass needed a sign frame"));
        }
    }
    Ok(CASES)
}

fn brute_logical(span: &[u64], s: u64, p: &[u64], k: u32) -> bool {
    let mask = (1u64 << k) - 1;
    let sum = |x: u64| -> u64 {
        (0..p.len()).filter(|i| (x >> i) & 1 == 1).map(|i| p[i]).sum::<u64>() & mask
    };
    let base = sum(s);
    span.iter().all(|&x| sum(x) == 0 && sum(x ^ s) == base)
}

/// The congruence solver matches enumeration of every `p` in `(Z/2^k)^n`.
pub fn solver_vs_brute_force() -> SuiteResult {
    let mut rng = rng(5);
    for case in 0..CASES {
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(1..=2u32);
        let sf = to_standard_form(&random_code(&mut rng, n, true)).unwrap();
        let span: Vec<u64> = sf.a_x().span_enumerate().iter().map(BitVec::to_u64).collect();
        let s = sf.s().to_u64();
        let solutions = find_transversal_phases(&sf, k).map_err(|e| format!("case {case}: {e}"))?;
        let q = 1u64 << k;
        let mut count = 0u64;
        let mut p = vec![0u64; n];
        for idx in 0..q.pow(n as u32) {
            let mut rest = idx;
            for v in p.iter_mut() {
                *v = rest % q;
                rest /= q;
            }
            let brute = brute_logical(&span, s, &p, k);
            count += u64::from(brute);
            if solutions.contains(&p) != brute {
                return Err(format!("case {case}: membership of {p:?} disagrees (brute {brute})"));
            }
            if idx % 97 == 0 {
                let theta = DyadicPhaseVector::new(k, p.clone()).unwrap();
                let action = logical_phase_action(&sf, &theta).unwrap();
                if matches!(action, PhaseAction::Logical(_)) != brute {
                    return Err(format!("case {case}: logical_phase_action disagrees on {p:?}"));
                }
            }
        }
        if count != 1u64 << solutions.log2_count() {
            return Err(format!(
                "case {case}: brute force found {count} solutions, solver 2^{}",
                solutions.log2_count()
            ));
        }
    }
    Ok(CASES)
}

/// A random CSS code whose `A_X` repeats columns.
pub fn random_degenerate_css(rng: &mut ChaCha8Rng) -> StandardFormCode {
    loop {
        let m = rng.gen_range(1..=4);
        let base_n = rng.gen_range(m + 1..=8);
        let base = random_matrix(rng, m, base_n);
        if base.rank() != m {
            continue;
        }
        let mut cols = base.columns();
        for _ in 0..rng.gen_range(1..=4) {
            let c = cols[rng.gen_range(0..cols.len())].clone();
            let at = rng.gen_range(0..=cols.len());
            cols.insert(at, c);
        }
        let a_x = BitMat::from_columns(&cols, m).unwrap();
        let n = a_x.ncols();
        let null = a_x.null_space();
        let Some(r) = null.rows().iter().find(|_| rng.gen_bool(0.5)).or(null.rows().first()).cloned() else {
            continue;
        };
        let a_z_rows: Vec<BitVec> = {
            let mut kept = Vec::new();
            let mut with_r = BitMat::from_rows(vec![r.clone()], n).unwrap();
            for v in null.rows() {
                if !with_r.row_space_contains(v) {
                    kept.push(v.clone());
                    with_r = with_r.vstack(&BitMat::from_rows(vec![v.clone()], n).unwrap()).unwrap();
                }
            }
            kept
        };
        let a_z = BitMat::from_rows(a_z_rows, n).unwrap();
        let Some(s) = a_z
            .null_space()
            .span_enumerate()
            .into_iter()
            .find(|v| v.dot(&r).unwrap())
        else {
            continue;
        };
        if let Ok(sf) = StandardFormCode::css(a_x, a_z, r, s) {
            return sf;
        }
    }
}

/// Aggregating phases on class representatives leaves `Σ x·θ` unchanged for every `x` in the span.
pub fn degeneracy_reduction() -> SuiteResult {
    let mut rng = rng(6);
    for case in 0..CASES {
        let sf = random_degenerate_css(&mut rng);
        let n = sf.n();
        let k = rng.gen_range(1..=4u32);
        let p: Vec<u64> = (0..n).map(|_| rng.gen_range(0..(1u64 << k))).collect();
        let theta = DyadicPhaseVector::new(k, p).unwrap();
        let red = nondegenerate_reduction(&sf, &theta).map_err(|e| format!("case {case}: {e}"))?;
        let reps = &red.partition.representatives;
        let reduced_cols = red.reduced_a_x.columns();
        for i in 0..reduced_cols.len() {
            for j in i + 1..reduced_cols.len() {
                if reduced_cols[i] == reduced_cols[j] {
                    return Err(format!("case {case}: reduced columns {i} and {j} coincide"));
                }
            }
        }
        for x in sf.a_x().span_enumerate() {
            if theta.weighted_sum(&x) != red.phases.weighted_sum(&x) {
                return Err(format!("case {case}: Σ x·θ changed at x = {x}"));
            }
            let restricted = x.select(reps);
            let on_reps = DyadicPhaseVector::new(k, reps.iter().map(|&i| red.phases.numerators()[i]).collect()).unwrap();
            if on_reps.weighted_sum(&restricted) != theta.weighted_sum(&x) {
                return Err(format!("case {case}: representative view disagrees at x = {x}"));
            }
        }
        let zero_broken = |a: &PhaseAction| matches!(a, PhaseAction::BreaksZero { .. });
        let before = logical_phase_action(&sf, &theta).unwrap();
        let after = logical_phase_action(&sf, &red.phases).unwrap();
        if zero_broken(&before) != zero_broken(&after) {
            return Err(format!("case {case}: |0_L> preservation changed"));
        }
        let class_of = red.partition.class_of();
        let s_constant = (0..n).all(|i| sf.s().get(i) == sf.s().get(reps[class_of[i]]));
        if s_constant && before != after {
            return Err(format!("case {case}: action changed although s is constant on classes"));
        }
    }
    Ok(CASES)
}

pub const SUITES: [(&str, fn() -> SuiteResult); 6] = [
    ("multilinearity parity identity", multilinearity),
    ("inclusion-exclusion N_q oracle", inclusion_exclusion),
    ("generator vs group orthogonality", generator_vs_group),
    ("standard-form round trip", standard_form_round_trip),
    ("transversal phases vs brute force", solver_vs_brute_force),
    ("degeneracy reduction equivalence", degeneracy_reduction),
];
