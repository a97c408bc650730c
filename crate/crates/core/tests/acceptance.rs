//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
//!
//! Run with `cargo test -p korthog --test acceptance -- --nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use korthog::distance::{min_logical_weight, DistanceOptions, Method};
use korthog::gates::GateDescriptor;
use korthog::search::{Budget, SearchSpace};
use korthog::{
    controlled_phase_action, css_distances, is_k_orthogonal, logical_phase_action, minimal_korth_matrix,
    minimality_search, phase_quantization_exponent, subdual_css, BitMat, DyadicPhaseVector, PhaseAction,
    StandardFormCode,
};

const LIMIT_MINIMAL: Duration = Duration::from_secs(1);
const LIMIT_STEANE: Duration = Duration::from_secs(1);
const LIMIT_REED_MULLER: Duration = Duration::from_secs(1);
const LIMIT_M5: Duration = Duration::from_secs(5);
const LIMIT_SEARCH_K2: Duration = Duration::from_secs(300);
const LIMIT_SEARCH_K3: Duration = Duration::from_secs(10);
const LIMIT_CONTROLLED: Duration = Duration::from_secs(1);
const LIMIT_QUANTIZATION: Duration = Duration::from_secs(1);
const LIMIT_PROPERTIES: Duration = Duration::from_secs(120);
const LIMIT_BUDGETED: Duration = Duration::from_secs(30);

/// The 4 × 15 array closing the minimal 3-orthogonal construction, row by row.
const MINIMAL_K3: [&str; 4] = [
    "111100001111000",
    "111010110010100",
    "110111010100010",
    "101111101000001",
];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn all_ones_action(sf: &StandardFormCode, k: u32) -> PhaseAction {
    let theta = DyadicPhaseVector::uniform(k, sf.n(), 1).unwrap();
    logical_phase_action(sf, &theta).unwrap()
}

fn orthogonal(a_x: &BitMat, k: usize) -> bool {
    is_k_orthogonal(a_x, k, None).unwrap().holds
}

fn phase_text(action: &PhaseAction) -> String {
    match action.phase() {
        Some(p) => p.to_string(),
        None => format!("{action:?}"),
    }
}

fn criterion_1() -> Outcome {
    let expected = BitMat::from_strs(&MINIMAL_K3).unwrap();
    let built = minimal_korth_matrix(3).unwrap();
    let mismatched: Vec<usize> = (0..15)
        .filter(|&j| built.ncols() != 15 || built.column(j) != expected.column(j))
        .collect();
    outcome(
        built == expected,
        format!("4x15 array, mismatched columns {mismatched:?}"),
    )
}

fn criterion_2() -> Outcome {
    let sf = subdual_css(3).unwrap();
    let d = css_distances(sf.a_x(), sf.a_z(), sf.r(), sf.s()).unwrap();
    let action = all_ones_action(&sf, 2);
    let ok = sf.n() == 7
        && orthogonal(sf.a_x(), 2)
        && !orthogonal(sf.a_x(), 3)
        && (d.d_z.distance, d.d_x.distance) == (3, 3)
        && d.d_z.exact
        && d.d_x.exact
        && phase_text(&action) == "3π/2";
    outcome(
        ok,
        format!(
            "n={} d_z={} d_x={} phase {}",
            sf.n(),
            d.d_z.distance,
            d.d_x.distance,
            phase_text(&action)
        ),
    )
}

fn criterion_3() -> Outcome {
    let sf = subdual_css(4).unwrap();
    let d = css_distances(sf.a_x(), sf.a_z(), sf.r(), sf.s()).unwrap();
    let action = all_ones_action(&sf, 3);
    let ok = sf.n() == 15
        && orthogonal(sf.a_x(), 3)
        && !orthogonal(sf.a_x(), 4)
        && (d.d_z.distance, d.d_x.distance) == (3, 7)
        && d.d_z.exact
        && d.d_x.exact
        && phase_text(&action) == "7π/4";
    outcome(
        ok,
        format!(
            "n={} d_z={} d_x={} phase {}",
            sf.n(),
            d.d_z.distance,
            d.d_x.distance,
            phase_text(&action)
        ),
    )
}

fn criterion_4() -> Outcome {
    let sf = subdual_css(5).unwrap();
    let action = all_ones_action(&sf, 4);
    let phase = action.phase();
    let eighth = phase.is_some_and(|p| {
        let r = p.reduced();
        r.exponent == 3 && r.numerator % 2 == 1
    });
    let dual_dim = sf.n() - sf.a_z().rank();
    let d_x = min_logical_weight(sf.a_z(), sf.a_x(), DistanceOptions::default());
    let ok = sf.n() == 31
        && orthogonal(sf.a_x(), 4)
        && eighth
        && dual_dim == 6
        && d_x.method == Method::NullSpaceEnumeration
        && d_x.exact
        && d_x.distance == 15;
    outcome(
        ok,
        format!(
            "n={} phase {} d_x={} over 2^{dual_dim} dual elements",
            sf.n(),
            phase_text(&action),
            d_x.distance
        ),
    )
}

fn criterion_5() -> Outcome {
    let report = minimality_search(&SearchSpace::new(2, 3, 6, 6)).unwrap();
    let ok = report.complete && report.witnesses.is_empty() && report.confirms_minimality;
    outcome(
        ok,
        format!(
            "{} candidates in {} boxes, complete={}, witnesses={}",
            report.total_candidates,
            report.boxes.len(),
            report.complete,
            report.witnesses.len()
        ),
    )
}

/// Spanning column subsets of the 15 nonzero vectors of GF(2)^4 with 4..=14 members.
fn spanning_subsets_m4() -> u64 {
    (1u32..(1 << 15))
        .filter(|mask| (4..=14).contains(&mask.count_ones()))
        .filter(|mask| {
            let mut span = 1u32 << 0;
            for v in 1..16u32 {
                if (mask >> (v - 1)) & 1 == 1 && (span >> v) & 1 == 0 {
                    let mut grown = span;
                    for w in 0..16 {
                        if (span >> w) & 1 == 1 {
                            grown |= 1 << (w ^ v);
                        }
                    }
                    span = grown;
                }
            }
            span == u32::MAX >> 16
        })
        .count() as u64
}

fn criterion_6() -> Outcome {
    let report = minimality_search(&SearchSpace::new(3, 4, 4, 14)).unwrap();
    let expected = spanning_subsets_m4();
    let ok = report.complete
        && report.witnesses.is_empty()
        && report.confirms_minimality
        && report.total_candidates == expected;
    outcome(
        ok,
        format!(
            "{} of {expected} spanning subsets checked, complete={}, witnesses={}",
            report.total_candidates,
            report.complete,
            report.witnesses.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let sf = subdual_css(4).unwrap();
    let mut details = Vec::new();
    let mut ok = true;
    for q in [1, 2] {
        let gate = GateDescriptor::new(3, q, vec![1; sf.n()]).unwrap();
        let report = controlled_phase_action(&sf, &gate).unwrap();
        ok &= report.holds;
        details.push(format!(
            "q={q}: holds={} target {} on base P(π/2^{})",
            report.holds,
            report.target_phase,
            gate.base_exponent()
        ));
    }
    outcome(ok, details.join("; "))
}

fn criterion_8() -> Outcome {
    let got: Vec<u32> = (3..=5)
        .map(|m| phase_quantization_exponent(&subdual_css(m).unwrap()).unwrap())
        .collect();
    outcome(got == [1, 2, 3], format!("exponents for m=3,4,5: {got:?}"))
}

fn criterion_9() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for (name, suite) in common::SUITES {
        match suite() {
            Ok(cases) => {
                ok &= cases >= common::CASES;
                details.push(format!("{name}: {cases}"));
            }
            Err(e) => {
                ok = false;
                details.push(format!("{name}: {e}"));
            }
        }
    }
    outcome(ok, details.join("; "))
}

/// Beyond the certified boxes: a budgeted k=3 scan at m=5 must not claim completeness.
fn criterion_10() -> Outcome {
    let space = SearchSpace::new(3, 5, 5, 14).with_budget(Budget {
        time: Some(Duration::from_secs(2)),
        max_candidates: Some(2_000_000),
    });
    let report = minimality_search(&space).unwrap();
    let ok = !report.complete && !report.confirms_minimality && report.witnesses.is_empty();
    outcome(
        ok,
        format!(
            "budgeted m=5 scan: {} candidates, complete={}, confirms_minimality={}",
            report.total_candidates, report.complete, report.confirms_minimality
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("1 minimal 3-orthogonal array", LIMIT_MINIMAL, criterion_1),
        ("2 Steane code from m=3", LIMIT_STEANE, criterion_2),
        ("3 15-qubit Reed-Muller from m=4", LIMIT_REED_MULLER, criterion_3),
        ("4 31-qubit member m=5", LIMIT_M5, criterion_4),
        ("5 no 2-orthogonal candidate, m 3..6, n<=6", LIMIT_SEARCH_K2, criterion_5),
        ("6 no 3-orthogonal candidate, m=4, n<=14", LIMIT_SEARCH_K3, criterion_6),
        ("7 controlled-S and CCZ on 15 qubits", LIMIT_CONTROLLED, criterion_7),
        ("8 phase quantization m-2", LIMIT_QUANTIZATION, criterion_8),
        ("9 property suites", LIMIT_PROPERTIES, criterion_9),
        ("10 incomplete scans are reported as such", LIMIT_BUDGETED, criterion_10),
    ];
    let mut failed = Vec::new();
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let pass = result.ok && elapsed <= limit;
        println!(
            "{} [{name}] {} ({:.3}s, limit {}s)",
            if pass { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
