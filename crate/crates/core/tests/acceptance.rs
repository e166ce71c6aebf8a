//! Acceptance suite: every criterion runs at its stated tolerance (all laws
//! here are exact; tolerances are zero) and prints one pass/fail line.
//!
//! Three criteria contain clauses that exhaustive computation disproves;
//! those clauses are asserted at their true outcome and flagged AMENDED on
//! the printed line, with the analysis recorded in the decisions ledger.
//! Everything else is asserted exactly as stated.

use std::time::{Duration, Instant};

use polymedial_core::bracket::{bracket_l0, bracket_tower_l, check_eps_jacobi, lie_bracket_eps};
use polymedial_core::coherence::{
    check_braid_relation, check_braiding_decagon, check_groupal_model, check_hexagon,
    check_medial_coherence, check_polygon, check_triangle_units, MedialingChoice,
    SkeletalGroupModel,
};
use polymedial_core::factor::{
    check_cocycle, check_commutation_factor, check_mediality_factor4, super_sign,
};
use polymedial_core::latin::for_each_quasigroup;
use polymedial_core::report::{LawStatus, RunConfig};
use polymedial_core::suite::{run_coherence, run_suite, Structure};
use polymedial_core::toyoda::{
    build_linear_quasigroup, toyoda_decompose, verify_theorem_ternary,
    verify_theorem_ternary_with_factor, BasisAut,
};
use polymedial_core::tree::reversal;
use polymedial_core::{docs, models};
use polymedial_core::{AbelianGroup, Budget, FactorMap, NaryOp, ScalarBackend, UnitScalar};

fn assert_runtime(criterion: &str, elapsed: Duration, limit: Duration) {
    assert!(
        elapsed <= limit,
        "{criterion}: runtime {elapsed:?} exceeds the stated limit {limit:?}"
    );
}

#[test]
fn criterion_1_mediality_predicate() {
    let start = Instant::now();
    let budget = Budget::default();

    let mut tables = 0usize;
    for phi in 1u64..=4 {
        for psi in 1u64..=4 {
            for c in 0u64..5 {
                let op = NaryOp::linear_mod(5, &[phi, psi], c).unwrap();
                let report = op.check_mediality(&budget, 1);
                assert!(report.passed(), "linear table ({phi},{psi},{c}) must be medial");
                assert_eq!(report.probes, 625);
                tables += 1;
            }
        }
    }
    assert_eq!(tables, 80);

    let s3 = models::s3_op();
    let report = s3.check_mediality(&budget, 1);
    assert_eq!(report.status, LawStatus::Fail);
    let witness = report.witness.unwrap();
    assert_eq!(witness.input, vec!["0", "1", "2", "0"]);
    assert_eq!(witness.lhs, "5");
    assert_eq!(witness.rhs, "4");

    let elapsed = start.elapsed();
    assert_runtime("criterion 1", elapsed, Duration::from_secs(1));
    println!(
        "criterion 1: PASS - 80 linear Z5 quasigroups medial (625 probes each); S3 fails at (e,(12),(13),e) [{elapsed:?}]"
    );
}

#[test]
fn criterion_2_toyoda_round_trip() {
    let start = Instant::now();
    let budget = Budget::default();

    // all 12 order-3 quasigroups decompose and rebuild exactly
    let mut order3 = Vec::new();
    for_each_quasigroup(3, 2, 1 << 24, &mut |t| {
        order3.push(t.to_vec());
        true
    })
    .unwrap();
    assert_eq!(order3.len(), 12);
    for table in &order3 {
        let op = NaryOp::new(2, 3, table.clone()).unwrap();
        let pres = toyoda_decompose(&op, 6, &budget)
            .unwrap()
            .expect("order-3 quasigroups are medial");
        let rebuilt = build_linear_quasigroup(&pres).unwrap();
        assert_eq!(rebuilt, op, "round trip must reproduce the table");
    }

    // order 4: the decomposer's success set equals the brute-force medial
    // filter over all 576 Latin squares (independent nested-loop oracle)
    let mut success = Vec::new();
    let mut oracle = Vec::new();
    let mut total = 0u32;
    for_each_quasigroup(4, 2, 1 << 26, &mut |t| {
        total += 1;
        let table = t.to_vec();
        let idx = |a: usize, b: usize| table[a * 4 + b];
        let mut medial = true;
        'scan: for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if idx(idx(a, b), idx(c, d)) != idx(idx(a, c), idx(b, d)) {
                            medial = false;
                            break 'scan;
                        }
                    }
                }
            }
        }
        if medial {
            oracle.push(table.clone());
        }
        let op = NaryOp::new(2, 4, table.clone()).unwrap();
        if toyoda_decompose(&op, 6, &budget).unwrap().is_some() {
            success.push(table);
        }
        true
    })
    .unwrap();
    assert_eq!(total, 576);
    assert_eq!(success, oracle, "decomposer success set != oracle medial set");

    let elapsed = start.elapsed();
    assert_runtime("criterion 2", elapsed, Duration::from_secs(30));
    println!(
        "criterion 2: PASS - 12/12 order-3 round trips; order-4 success set equals the oracle filter ({} medial of 576) [{elapsed:?}]",
        oracle.len()
    );
}

#[test]
fn criterion_3_factor_laws() {
    let start = Instant::now();
    let cfg = RunConfig::default();

    let mut checked = 0usize;
    let mut commutation_valid = 0usize;
    for orders in [vec![2u32], vec![3], vec![2, 2]] {
        let group = AbelianGroup::new(orders.clone()).unwrap();
        let m = orders.iter().fold(1u32, |a, &b| num_lcm(a, b));
        let backend = ScalarBackend::root_of_unity(m as u64).unwrap();
        let omega = UnitScalar::new(backend, 1).unwrap();
        let r = group.rank();
        let cells = r * r;
        for rank in 0..(m as usize).pow(cells as u32) {
            let mut e = vec![vec![0i64; r]; r];
            let mut acc = rank;
            for i in 0..r {
                for j in 0..r {
                    e[i][j] = (acc % m as usize) as i64;
                    acc /= m as usize;
                }
            }
            let f = FactorMap::bicharacter(group.clone(), e.clone(), omega).unwrap();
            checked += 1;

            // bilinearity always gives a cocycle
            assert!(check_cocycle(&f).unwrap().passed(), "E={e:?} on {orders:?}");

            // the commutation laws hold exactly when E + E^T vanishes mod m
            let antisym = (0..r)
                .all(|i| (0..r).all(|j| (e[i][j] + e[j][i]).rem_euclid(m as i64) == 0));
            let set = check_commutation_factor(&f).unwrap();
            assert_eq!(
                set.passed(),
                antisym,
                "commutation laws vs antisymmetry disagree for E={e:?} on {orders:?}"
            );
            if !antisym {
                continue;
            }
            commutation_valid += 1;

            // bridge evidence: the relational mediality laws hold for
            // rho(a,b,c,d) = eps(b,c); the all-equal normalization holds
            // exactly when eps has trivial diagonal (AMENDED: sign-valued
            // factors such as the grading sign violate raa by design)
            let bridge = FactorMap::bridge(f.clone()).unwrap();
            let set = check_mediality_factor4(&bridge, &cfg).unwrap();
            assert!(set.get("r01").unwrap().passed(), "E={e:?}");
            assert!(set.get("r02").unwrap().passed(), "E={e:?}");
            assert!(set.get("r03").unwrap().passed(), "E={e:?}");
            let diagonal_trivial =
                group.elements().all(|a| f.eval(&[a, a]).unwrap().is_one());
            assert_eq!(
                set.get("raa").unwrap().passed(),
                diagonal_trivial,
                "raa outcome vs diagonal of eps for E={e:?}"
            );
        }
    }
    assert_eq!(checked, 2 + 3 + 16);

    let elapsed = start.elapsed();
    assert_runtime("criterion 3", elapsed, Duration::from_secs(1));
    println!(
        "criterion 3: PASS (amended) - {checked} bicharacters: cocycle always, commutation iff antisymmetric exponents ({commutation_valid} valid), bridges pass r01/r02/r03, raa iff trivial diagonal [{elapsed:?}]"
    );
}

fn num_lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[test]
fn criterion_4_graded_algebra_theorems() {
    let start = Instant::now();
    let budget = Budget::default();
    let alg = models::grassmann_f3();
    let eps = super_sign(3).unwrap();

    assert!(alg.check_almost_commutative(&eps).unwrap().passed());

    let bridge = FactorMap::bridge(eps.clone()).unwrap();
    let medial = alg.check_almost_medial(&bridge, &budget).unwrap();
    assert!(medial.passed());
    assert_eq!(medial.probes, 256);

    // all homogeneous elements: spans of the even and odd components
    let mut homogeneous = Vec::new();
    for (span, grade) in [([0usize, 3], 0usize), ([1, 2], 1)] {
        for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                let mut elem = alg.zero_element();
                elem.coeffs[span[0]] = c0;
                elem.coeffs[span[1]] = c1;
                homogeneous.push(alg.as_homog(elem, grade).unwrap());
            }
        }
    }
    assert_eq!(homogeneous.len(), 18);

    // L0 vanishes identically and the twisted-bracket identity holds
    let swapped = eps.convert_eps0_eps().unwrap();
    for a in &homogeneous {
        for b in &homogeneous {
            let l0 = bracket_l0(&alg, &eps, a, b).unwrap();
            assert!(l0.elem.is_zero(), "L0 must vanish on the eps-commutative algebra");
            let lie = lie_bracket_eps(&alg, &swapped, a, b).unwrap();
            let factor = eps.eval(&[a.grade, b.grade]).unwrap();
            let rhs = alg.scale_unit(&lie.elem, &factor).unwrap();
            assert_eq!(l0.elem, rhs, "the ll identity must hold on all homogeneous pairs");
        }
    }

    assert!(check_eps_jacobi(&alg, &eps).unwrap().passed());

    // the level-1 bracket with eps1 = -(eps0^-1) vanishes identically, both
    // here and on a variant where L0 itself is nonzero
    for eps0 in [eps.clone(), FactorMap::one(alg.group().clone(), eps.backend(), 2)] {
        let eps1 = eps0.neg_inverse().unwrap();
        let factors = vec![eps0, eps1];
        for a in &homogeneous {
            for b in &homogeneous {
                let l1 = bracket_tower_l(&alg, &factors, 1, a, b).unwrap();
                assert!(l1.elem.is_zero(), "L1 must vanish identically");
            }
        }
    }

    let elapsed = start.elapsed();
    println!(
        "criterion 4: PASS - grassmann/F3: e0, bridge r2 (256 probes), L0 = 0, ll identity, j0/j1, L1 = 0; all exact [{elapsed:?}]"
    );
}

#[test]
fn criterion_5_ternary_theorem() {
    let start = Instant::now();
    let alg = models::grassmann_f3();
    let eps = super_sign(3).unwrap();
    let id = BasisAut::identity(4);
    let h = alg.homog_basis(0);
    let subbasis = [0usize, 1, 2];

    // as printed: the six-product factor is disproved by the scan
    let printed = FactorMap::ternary_r3_printed(eps.clone()).unwrap();
    let printed_report =
        verify_theorem_ternary_with_factor(&alg, &printed, [&id, &id, &id], &h, Some(&subbasis))
            .unwrap();
    assert_eq!(
        printed_report.status,
        LawStatus::Fail,
        "the printed six-product factor is expected to be disproved"
    );

    // completed factor: eps over all transposed-order index pairs
    let full = verify_theorem_ternary(&alg, &eps, [&id, &id, &id], &h, Some(&subbasis)).unwrap();
    assert!(full.passed(), "{:?}", full.witness);
    assert_eq!(full.probes, 19683);

    // dropping any one of the nine pairs breaks the law
    let mut pairs = FactorMap::transpose_inversion_pairs(3);
    pairs.pop();
    let mutated = FactorMap::pair_product(eps, 3, pairs).unwrap();
    let mutated_report =
        verify_theorem_ternary_with_factor(&alg, &mutated, [&id, &id, &id], &h, Some(&subbasis))
            .unwrap();
    assert_eq!(mutated_report.status, LawStatus::Fail);

    let elapsed = start.elapsed();
    assert_runtime("criterion 5", elapsed, Duration::from_secs(10));
    println!(
        "criterion 5: PASS (amended) - printed r3 factor disproved at {:?}; completed inversion-pair factor passes 19683 probes and its mutation fails [{elapsed:?}]",
        printed_report.witness.unwrap().input
    );
}

#[test]
fn criterion_6_coherence_suites() {
    let start = Instant::now();

    let p2 = check_polygon(2).unwrap();
    assert!(p2.passed());
    let d2 = p2.detail.unwrap();
    assert!(d2.contains("vertices=5") && d2.contains("length=5"), "{d2}");

    let p3 = check_polygon(3).unwrap();
    assert!(p3.passed());
    let d3 = p3.detail.unwrap();
    assert!(d3.contains("vertices=12") && d3.contains("length=10"), "{d3}");

    for n in [2usize, 3] {
        let set = check_triangle_units(n).unwrap();
        assert!(set.passed(), "triangle units n={n}: {:?}", set.first_failure());
        assert!(set.get("uu").is_some(), "normalization uu must be checked");
    }

    assert!(check_hexagon().unwrap().passed());
    assert!(check_braiding_decagon().unwrap().passed());

    let medial = check_medial_coherence(MedialingChoice::Transpose).unwrap();
    assert!(medial.passed(), "{:?}", medial.first_failure());
    let mutated = check_medial_coherence(MedialingChoice::RowSwap).unwrap();
    assert_eq!(mutated.get("diag16").unwrap().status, LawStatus::Fail);

    let elapsed = start.elapsed();
    assert_runtime("criterion 6", elapsed, Duration::from_secs(5));
    println!(
        "criterion 6: PASS - pentagon (5 vertices), decagon (12 vertices, cycle space), triangles with uu, hexagon, braiding decagon, medial coherence + mutation rejected [{elapsed:?}]"
    );
}

#[test]
fn criterion_7_braid_relations() {
    let start = Instant::now();
    let cases = [
        (2usize, vec![1usize, 0], 3usize),
        (3, reversal(3), 5),
        (4, reversal(4), 7),
    ];
    for (n, sigma, strands) in cases {
        let report = check_braid_relation(n, &sigma).unwrap();
        assert!(report.passed(), "braid relation n={n} must hold");
        let detail = report.detail.unwrap();
        let composite_len = detail
            .split("lhs=[")
            .nth(1)
            .unwrap()
            .split(']')
            .next()
            .unwrap()
            .split(',')
            .count();
        assert_eq!(composite_len, strands, "composite acts on {strands} strands");
    }
    let elapsed = start.elapsed();
    assert_runtime("criterion 7", elapsed, Duration::from_secs(1));
    println!(
        "criterion 7: PASS - braid relations for (2,swap), (3,reversal), (4,reversal) on 3/5/7 strands [{elapsed:?}]"
    );
}

#[test]
fn criterion_8_groupal_models() {
    let start = Instant::now();

    // additive ternary group mod 4 with querelement -g
    let op = NaryOp::linear_mod(4, &[1, 1, 1], 0).unwrap();
    let model = SkeletalGroupModel::new(op).unwrap();
    assert_eq!(model.quer(), &[0, 3, 2, 1]);
    let set = check_groupal_model(&model).unwrap();
    assert!(set.passed(), "{:?}", set.first_failure());
    for law in ["diag6", "diag7", "diag15", "diag19", "diag14"] {
        assert_eq!(set.get(law).unwrap().status, LawStatus::Pass, "{law}");
    }

    // a+b+c+1 mod 3: 2e+1 = 0 mod 3 has the solution e = 1, so honest unit
    // detection runs diag14 (AMENDED: the spec expected not-applicable)
    let shifted3 = NaryOp::linear_mod(3, &[1, 1, 1], 1).unwrap();
    let model3 = SkeletalGroupModel::new(shifted3).unwrap();
    assert_eq!(model3.units(), &[1], "e = 1 is a polyadic unit of a+b+c+1 mod 3");
    let set3 = check_groupal_model(&model3).unwrap();
    assert!(set3.passed(), "{:?}", set3.first_failure());
    assert_eq!(set3.get("diag14").unwrap().status, LawStatus::Pass);

    // a+b+c+1 mod 4 is genuinely unitless: diag14 reports not applicable
    let shifted4 = NaryOp::linear_mod(4, &[1, 1, 1], 1).unwrap();
    let model4 = SkeletalGroupModel::new(shifted4).unwrap();
    assert!(model4.units().is_empty());
    let set4 = check_groupal_model(&model4).unwrap();
    assert!(set4.passed(), "{:?}", set4.first_failure());
    assert_eq!(set4.get("diag14").unwrap().status, LawStatus::Skipped);

    let elapsed = start.elapsed();
    println!(
        "criterion 8: PASS (amended) - mod-4 model passes all diagrams; a+b+c+1 mod 3 has unit e=1 so diag14 runs and passes; a+b+c+1 mod 4 exercises the not-applicable path [{elapsed:?}]"
    );
}

#[test]
fn criterion_9_determinism() {
    let start = Instant::now();

    let full_run = || -> String {
        let mut out = String::new();
        let cfg = RunConfig {
            budget: Budget::new(1000),
            sample: 128,
            seed: 7,
            jobs: 1,
        };
        // operation, factor and algebra suites
        let s3 = Structure::Op(models::s3_op());
        for r in run_suite(&s3, "full", None, &RunConfig::default()).unwrap() {
            out.push_str(&serde_json::to_string(&r).unwrap());
        }
        let eps = super_sign(3).unwrap();
        let f = Structure::Factor(eps.clone());
        for r in run_suite(&f, "full", None, &RunConfig::default()).unwrap() {
            out.push_str(&serde_json::to_string(&r).unwrap());
        }
        let alg = Structure::Algebra(models::grassmann_f3());
        for r in run_suite(&alg, "full", Some(&eps), &RunConfig::default()).unwrap() {
            out.push_str(&serde_json::to_string(&r).unwrap());
        }
        // coherence for both diagrammed arities
        for n in [2usize, 3] {
            for r in run_coherence(n, "full", None, None, &RunConfig::default()).unwrap() {
                out.push_str(&serde_json::to_string(&r).unwrap());
            }
        }
        // a seeded sampled check (domain 3^9 over the reduced budget)
        let rho = FactorMap::transpose_inversions(
            FactorMap::one(
                AbelianGroup::cyclic(3),
                ScalarBackend::root_of_unity(3).unwrap(),
                2,
            ),
            3,
        )
        .unwrap();
        for r in polymedial_core::factor::check_nary_mediality_factor(&rho, 3, &cfg)
            .unwrap()
            .reports
        {
            out.push_str(&serde_json::to_string(&r).unwrap());
        }
        out
    };

    let first = full_run();
    let second = full_run();
    assert_eq!(first, second, "same seed must give byte-identical reports");
    assert!(first.contains("\"seed\":7"), "sampled check must record its seed");

    // parallel scans keep the lexicographically first counterexample
    let op = models::s3_op();
    let serial = serde_json::to_string(&op.check_mediality(&Budget::default(), 1)).unwrap();
    let parallel = serde_json::to_string(&op.check_mediality(&Budget::default(), 4)).unwrap();
    assert_eq!(serial, parallel);

    // and the operation document round-trips byte-exactly
    let doc1 = serde_json::to_string(&docs::op_to_doc(&op)).unwrap();
    let doc2 = serde_json::to_string(&docs::op_to_doc(
        &docs::op_from_doc(&serde_json::from_str(&doc1).unwrap()).unwrap(),
    ))
    .unwrap();
    assert_eq!(doc1, doc2);

    let elapsed = start.elapsed();
    println!("criterion 9: PASS - two full-suite runs with the same seed are byte-identical [{elapsed:?}]");
}
