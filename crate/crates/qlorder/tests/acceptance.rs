//! End-to-end acceptance gate: one test per numbered criterion, each
//! printing a single `criterion N ...: PASS` line (visible with
//! `--nocapture`).  Bounds and time budgets are pinned in the constants
//! below; every comparison is exact.

use std::time::{Duration, Instant};

use qlorder::base::{
    make_bs, make_free_hnn, make_int_lattice_hnn, make_int_lattice_span, HnnPresentation,
    IntLattice,
};
use qlorder::controlled::{height_map, kernel_checks, Extension};
use qlorder::hnn::enumerate_words;
use qlorder::oracle::{
    base_pair_bound_check, confluence_check, min_pair_agreement, order_agreement_suite,
};
use qlorder::report::{CheckReport, Verdict};
use qlorder::toeplitz::{
    build_basis, check_covariance, check_hk_invariance, check_isometry, check_matrix_units,
};

const CONFLUENCE_WORD_LEN: usize = 8;
const CONFLUENCE_ORDERS: usize = 200;
const CONFLUENCE_SEED: u64 = 2026;
const CONFLUENCE_BUDGET: Duration = Duration::from_secs(60);

const MIN_PAIR_BOUND: usize = 4;
const MIN_PAIR_FACTOR_BOUND: usize = 6;
const MIN_PAIR_BUDGET: Duration = Duration::from_secs(300);

const ORDER_WORD_BOUND: usize = 5;
const ORDER_SEARCH_BOUND: usize = 7;
const ORDER_BUDGET: Duration = Duration::from_secs(300);

const BASE_PAIR_ELEM_BOUND: usize = 6;
const BASE_PAIR_SEARCH_BOUND: usize = 6;

const CM_JOIN_BOUND: usize = 5;
const CM_MAX_LEVEL: i64 = 3;
const CM_COVER_BOUND: usize = 5;
const CM_STEM_BOUND: usize = 3;
const CM_SEARCH_BOUND: usize = 5;
const CM_BUDGET: Duration = Duration::from_secs(120);

const TRUNCATION: usize = 6;
const OPERATOR_ARG_BOUND: usize = 3;
const STEM_MAX_HEIGHT: usize = 2;
const STEM_BOUND: usize = 3;
const HK_STEM_BOUND: usize = 2;
const HK_ELEM_BOUND: usize = 2;
const TOEPLITZ_BUDGET: Duration = Duration::from_secs(120);

/// The four validated presentations every sweep runs over.
fn lattice_presentations() -> Vec<HnnPresentation<IntLattice>> {
    vec![
        make_bs(2, 3).unwrap(),
        make_bs(3, 2).unwrap(),
        make_int_lattice_hnn(2, 3, 3, 2).unwrap(),
    ]
}

fn free_presentation() -> HnnPresentation<qlorder::base::FreeGroup> {
    make_free_hnn(2, 2, 3, 1).unwrap()
}

fn assert_passed(check: &CheckReport, context: &str) {
    assert!(
        check.verdict.passed(),
        "{context}: {line}",
        line = check.line()
    );
    assert!(check.cases > 0, "{context}: vacuous check {}", check.name);
}

fn find<'a>(checks: &'a [CheckReport], name: &str) -> &'a CheckReport {
    checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("missing check {name}"))
}

#[test]
fn criterion_1_normal_form_confluence() {
    let started = Instant::now();
    let mut cases = 0usize;
    for pres in lattice_presentations() {
        let report =
            confluence_check(&pres, CONFLUENCE_WORD_LEN, CONFLUENCE_ORDERS, CONFLUENCE_SEED)
                .unwrap();
        assert_passed(&report, pres.name());
        cases += report.cases;
    }
    let free = free_presentation();
    let report =
        confluence_check(&free, CONFLUENCE_WORD_LEN, CONFLUENCE_ORDERS, CONFLUENCE_SEED).unwrap();
    assert_passed(&report, free.name());
    cases += report.cases;

    let elapsed = started.elapsed();
    assert!(
        elapsed < CONFLUENCE_BUDGET,
        "confluence sweep took {elapsed:?}"
    );
    println!(
        "criterion 1 (normal-form confluence, 4 presentations, len ≤ {CONFLUENCE_WORD_LEN}, \
         {CONFLUENCE_ORDERS} orders): PASS — {cases} rewrites in {} ms",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_2_minimal_pair_minimality() {
    let started = Instant::now();
    let pres = make_bs(2, 3).unwrap();
    let checks = min_pair_agreement(&pres, MIN_PAIR_BOUND, MIN_PAIR_FACTOR_BOUND).unwrap();
    let reproduces = find(&checks, "min-pair-reproduces-fraction");
    let divides = find(&checks, "min-pair-divides-factorizations");
    assert_passed(reproduces, pres.name());
    assert_passed(divides, pres.name());

    let elapsed = started.elapsed();
    assert!(elapsed < MIN_PAIR_BUDGET, "min-pair sweep took {elapsed:?}");
    println!(
        "criterion 2 (minimal pairs reproduce and divide, pairs ≤ {MIN_PAIR_BOUND}, factors ≤ \
         {MIN_PAIR_FACTOR_BOUND}): PASS — {} + {} cases in {} ms",
        reproduces.cases,
        divides.cases,
        elapsed.as_millis()
    );
}

#[test]
fn criteria_3_and_4_order_oracle_agreement_and_join_height() {
    let started = Instant::now();
    let mut order_cases = 0usize;
    let mut height_cases = 0usize;

    let mut run = |suite: Vec<CheckReport>, name: &str| {
        for check_name in [
            "leq-matches-division-oracle",
            "division-witnesses-multiply-back",
            "reducer-fixes-normal-forms",
            "join-agrees-with-bounded-search",
        ] {
            let check = find(&suite, check_name);
            assert_passed(check, name);
            order_cases += check.cases;
        }
        let height = find(&suite, "join-height-is-max");
        assert_passed(height, name);
        height_cases += height.cases;
    };

    for pres in lattice_presentations() {
        let suite = order_agreement_suite(&pres, ORDER_WORD_BOUND, ORDER_SEARCH_BOUND).unwrap();
        run(suite, pres.name());
    }
    let free = free_presentation();
    let suite = order_agreement_suite(&free, ORDER_WORD_BOUND, ORDER_SEARCH_BOUND).unwrap();
    run(suite, free.name());

    let elapsed = started.elapsed();
    assert!(elapsed < ORDER_BUDGET, "order sweep took {elapsed:?}");
    println!(
        "criterion 3 (order algorithms match brute force, words ≤ {ORDER_WORD_BOUND}, search ≤ \
         {ORDER_SEARCH_BOUND}, 4 presentations): PASS — {order_cases} cases in {} ms",
        elapsed.as_millis()
    );
    println!(
        "criterion 4 (finite join heights equal max of heights): PASS — {height_cases} joins"
    );
}

#[test]
fn criterion_5_bounded_base_pairs_join_in_base() {
    let mut cases = 0usize;
    for pres in lattice_presentations() {
        let check =
            base_pair_bound_check(&pres, BASE_PAIR_ELEM_BOUND, BASE_PAIR_SEARCH_BOUND).unwrap();
        assert_passed(&check, pres.name());
        cases += check.cases;
    }
    let free = free_presentation();
    let check =
        base_pair_bound_check(&free, BASE_PAIR_ELEM_BOUND, BASE_PAIR_SEARCH_BOUND).unwrap();
    assert_passed(&check, free.name());
    cases += check.cases;
    println!(
        "criterion 5 (base pairs bounded in the extension join in the base, size ≤ \
         {BASE_PAIR_ELEM_BOUND}, search ≤ {BASE_PAIR_SEARCH_BOUND}): PASS — {cases} pairs"
    );
}

#[test]
fn criterion_6_height_map_is_controlled() {
    let started = Instant::now();
    let pres = make_bs(2, 3).unwrap();
    let ext = Extension::new(&pres);
    let integers = IntLattice::new(1).unwrap();
    let candidate = height_map(&ext, &integers);

    let join_pres = candidate.check_join_preservation(CM_JOIN_BOUND).unwrap();
    assert_passed(&join_pres, "cm-1");
    let mut cover_cases = 0usize;
    let mut separation_cases = 0usize;
    for k in 0..=CM_MAX_LEVEL {
        let level = vec![k];
        let cover = candidate.check_level_cover(&level, CM_COVER_BOUND).unwrap();
        assert_passed(&cover, "cm-2");
        cover_cases += cover.cases;
        let separation = candidate
            .check_level_separation(&level, CM_STEM_BOUND, CM_SEARCH_BOUND)
            .unwrap();
        assert!(separation.verdict.passed(), "cm-3: {}", separation.line());
        separation_cases += separation.cases;
    }
    // level 0 has a single minimum, so only levels ≥ 1 contribute pairs
    assert!(separation_cases > 0, "cm-3 never compared a pair");

    // the zero level must be an embedded copy of the base cone
    for check in kernel_checks(&pres, CM_JOIN_BOUND).unwrap() {
        assert_passed(&check, "kernel");
    }

    let elapsed = started.elapsed();
    assert!(elapsed < CM_BUDGET, "controlled-map suite took {elapsed:?}");
    println!(
        "criterion 6 (height map satisfies cm-1/cm-2/cm-3, levels ≤ {CM_MAX_LEVEL}): PASS — \
         {} joins, {cover_cases} covers, {separation_cases} separations in {} ms",
        join_pres.cases,
        elapsed.as_millis()
    );
}

#[test]
fn criterion_7_hypothesis_validator_verdicts() {
    for pres in lattice_presentations() {
        assert!(
            pres.validate(12).passed(),
            "validator rejected {}",
            pres.name()
        );
    }
    let free = free_presentation();
    assert!(
        free.validate(12).passed(),
        "validator rejected {}",
        free.name()
    );

    // the spanned sublattice ⟨(1,2),(2,1)⟩ must be refuted: the coset
    // of (1,0) has no least positive representative
    let span = make_int_lattice_span([[1, 2], [2, 1]]).unwrap();
    let report = span.validate(12);
    assert!(!report.passed());
    let Verdict::Fail { witness } = &report.minimal_coset_reps else {
        panic!("minimal-coset-reps unexpectedly passed on {}", span.name());
    };

    // certify the witness mathematically.  (1,0) and (0,1) lie in the same
    // coset of A — their difference (1,-1) = (2,1) - (1,2) is in A — and
    // both are positive.  Any positive element below both is below their
    // componentwise meet (0,0) = e, and e is not in the coset because
    // (1,0) ∉ A.  So the coset (1,0)+A has positive members but no least
    // one: exactly what the validator must report.
    assert!(span.in_a(&vec![1, -1]));
    assert!(!span.in_a(&vec![1, 0]));
    assert!(
        witness.contains("(1,0)") || witness.contains("(0,1)"),
        "witness does not exhibit the offending coset: {witness}"
    );

    println!(
        "criterion 7 (validator passes 4 shipped presentations, refutes the spanned sublattice \
         with witness coset (1,0)+A): PASS — witness: {witness}"
    );
}

#[test]
fn criterion_8_truncated_operator_identities() {
    let started = Instant::now();
    let pres = make_bs(2, 3).unwrap();
    let basis = build_basis(&pres, TRUNCATION);
    let args = enumerate_words(&pres, OPERATOR_ARG_BOUND);
    assert!(args.len() > 1);

    let mut cases = 0usize;
    for p in &args {
        let check = check_isometry(&pres, &basis, p).unwrap();
        assert_passed(&check, "isometry");
        cases += check.cases;
    }
    for p in &args {
        for q in &args {
            let check = check_covariance(&pres, &basis, p, q).unwrap();
            assert_passed(&check, "covariance");
            cases += check.cases;
        }
    }
    for k in 0..=STEM_MAX_HEIGHT {
        let check = check_matrix_units(&pres, &basis, k, STEM_BOUND).unwrap();
        assert_passed(&check, "matrix-units");
        cases += check.cases;
        let check = check_hk_invariance(&pres, &basis, k, HK_STEM_BOUND, HK_ELEM_BOUND).unwrap();
        assert_passed(&check, "level-invariance");
        cases += check.cases;
    }

    let elapsed = started.elapsed();
    assert!(elapsed < TOEPLITZ_BUDGET, "operator sweep took {elapsed:?}");
    println!(
        "criterion 8 (isometry/covariance/matrix-unit/level identities exact on safe columns at \
         truncation {TRUNCATION}, {} operator arguments): PASS — {cases} safe-column \
         agreements in {} ms",
        args.len(),
        elapsed.as_millis()
    );
}

#[test]
fn criterion_9_verification_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(
        &config,
        r#"{ "version": 1, "presentation": { "kind": "baumslag_solitar", "c": 2, "d": 3 } }"#,
    )
    .unwrap();

    let run = |json_out: &std::path::Path| {
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_qlorder"))
            .args([
                "verify",
                "--config",
                config.to_str().unwrap(),
                "--json",
                json_out.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(output.status.success(), "verify run failed");
        let report = std::fs::read_to_string(json_out).unwrap();
        // keep only the canonical section: drop the wall-clock line
        let canonical: Vec<&str> = report
            .lines()
            .filter(|l| !l.contains("\"elapsed_ms\""))
            .collect();
        (output.stdout, canonical.join("\n"))
    };

    let (stdout_a, canonical_a) = run(&dir.path().join("a.json"));
    let (stdout_b, canonical_b) = run(&dir.path().join("b.json"));
    assert_eq!(stdout_a, stdout_b, "human-readable output differs");
    assert_eq!(
        canonical_a.as_bytes(),
        canonical_b.as_bytes(),
        "canonical report sections differ"
    );
    assert!(canonical_a.contains("\"outcome\": \"pass\""));

    println!(
        "criterion 9 (repeated verification reports byte-identical): PASS — {} canonical bytes",
        canonical_a.len()
    );
}
