//! Cross-checks against independent oracles: hand-rolled permutation
//! composition, a row-wise Latin square enumerator, direct nested-loop law
//! scans, and closed-form tree counts. The oracles deliberately avoid the
//! library code paths they validate.

use polymedial_core::coherence::check_braid_relation;
use polymedial_core::factor::{check_commutation_factor, super_sign};
use polymedial_core::latin::count_quasigroups;
use polymedial_core::models;
use polymedial_core::tree::{enumerate_bracketings, reversal};
use polymedial_core::{Budget, FactorMap, NaryOp};

/// Oracle: compose one-line permutations right-to-left.
fn perm_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

#[test]
fn s3_table_matches_permutation_oracle() {
    // independent labeling: the same six permutations, composed by hand
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let op = models::s3_op();
    for a in 0..6 {
        for b in 0..6 {
            let composite = perm_compose(&perms[a], &perms[b]);
            let label = perms.iter().position(|p| p[..] == composite[..]).unwrap();
            assert_eq!(op.eval(&[a, b]), label);
        }
    }
}

#[test]
fn s3_mediality_witness_matches_direct_scan() {
    // direct nested-loop scan, no library calls
    let op = models::s3_op();
    let t = |a: usize, b: usize| op.eval(&[a, b]);
    let mut first = None;
    'scan: for a in 0..6 {
        for b in 0..6 {
            for c in 0..6 {
                for d in 0..6 {
                    if t(t(a, b), t(c, d)) != t(t(a, c), t(b, d)) {
                        first = Some((a, b, c, d));
                        break 'scan;
                    }
                }
            }
        }
    }
    assert_eq!(first, Some((0, 1, 2, 0)));
    let report = op.check_mediality(&Budget::default(), 1);
    let witness = report.witness.unwrap();
    assert_eq!(witness.input, vec!["0", "1", "2", "0"]);
}

/// Oracle: build order-q Latin squares row by row from full permutations.
fn latin_squares_rowwise(q: usize) -> Vec<Vec<Vec<usize>>> {
    fn perms(q: usize) -> Vec<Vec<usize>> {
        if q == 1 {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        for shorter in perms(q - 1) {
            for slot in 0..q {
                let mut p = shorter.clone();
                p.insert(slot, q - 1);
                out.push(p);
            }
        }
        out
    }
    let all_rows = perms(q);
    let mut squares = Vec::new();
    fn fill(
        q: usize,
        rows: &mut Vec<Vec<usize>>,
        all_rows: &[Vec<usize>],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if rows.len() == q {
            out.push(rows.clone());
            return;
        }
        'candidate: for cand in all_rows {
            for col in 0..q {
                if rows.iter().any(|r| r[col] == cand[col]) {
                    continue 'candidate;
                }
            }
            rows.push(cand.clone());
            fill(q, rows, all_rows, out);
            rows.pop();
        }
    }
    let mut rows = Vec::new();
    fill(q, &mut rows, &all_rows, &mut squares);
    squares
}

#[test]
fn latin_counts_match_rowwise_oracle() {
    assert_eq!(latin_squares_rowwise(3).len(), 12);
    assert_eq!(latin_squares_rowwise(4).len(), 576);
    assert_eq!(count_quasigroups(3, 2, 1 << 24, |_| true).unwrap(), 12);
    assert_eq!(count_quasigroups(4, 2, 1 << 24, |_| true).unwrap(), 576);
}

#[test]
fn braid_relation_matches_permutation_oracle() {
    // oracle: embed sigma at an offset over 2n-1 strands and compose by hand
    fn embed(strands: usize, offset: usize, sigma: &[usize]) -> Vec<usize> {
        // one-line permutation sending source position p to target position
        let mut map: Vec<usize> = (0..strands).collect();
        for (j, &b) in sigma.iter().enumerate() {
            map[offset + b] = offset + j;
        }
        map
    }
    fn compose_maps(first: &[usize], second: &[usize]) -> Vec<usize> {
        first.iter().map(|&p| second[p]).collect()
    }
    for (n, sigma) in [
        (2usize, vec![1usize, 0]),
        (3, reversal(3)),
        (3, vec![1, 2, 0]),
        (4, reversal(4)),
    ] {
        let strands = 2 * n - 1;
        let mut lhs_offsets = vec![0usize];
        lhs_offsets.extend((1..n).rev());
        lhs_offsets.push(0);
        let mut rhs_offsets = vec![n - 1];
        rhs_offsets.extend((0..n - 1).rev());
        rhs_offsets.push(n - 1);
        let run = |offsets: &[usize]| {
            let mut acc: Vec<usize> = (0..strands).collect();
            for &o in offsets {
                acc = compose_maps(&acc, &embed(strands, o, &sigma));
            }
            acc
        };
        let oracle_equal = run(&lhs_offsets) == run(&rhs_offsets);
        let report = check_braid_relation(n, &sigma).unwrap();
        assert_eq!(
            report.passed(),
            oracle_equal,
            "n={n} sigma={sigma:?}: library and oracle disagree"
        );
        if n != 3 || sigma == reversal(3) {
            assert!(oracle_equal, "reversal braid relation must hold at n={n}");
        }
    }
}

#[test]
fn fuss_catalan_counts_match_formula() {
    fn binomial(n: u64, k: u64) -> u64 {
        let mut acc = 1u64;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }
    // k internal nodes of an n-ary tree give k(n-1)+1 leaves and
    // C(nk, k) / (k(n-1)+1) bracketings
    for (n, k) in [(2u64, 3u64), (3, 3), (4, 3), (2, 4)] {
        let leaves = (k * (n - 1) + 1) as usize;
        let expected = binomial(n * k, k) / (k * (n - 1) + 1);
        let got = enumerate_bracketings(n as usize, leaves).unwrap().len() as u64;
        assert_eq!(got, expected, "n={n} leaves={leaves}");
    }
}

#[test]
fn subtraction_mod_5_mediality_direct() {
    // (a-b)-(c-d) = (a-c)-(b-d): direct scan agrees with the checker
    let sub = |a: usize, b: usize| (a + 5 - b) % 5;
    let mut all_hold = true;
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    if sub(sub(a, b), sub(c, d)) != sub(sub(a, c), sub(b, d)) {
                        all_hold = false;
                    }
                }
            }
        }
    }
    assert!(all_hold);
    let op = NaryOp::from_fn(2, 5, |t| sub(t[0], t[1])).unwrap();
    assert!(op.check_mediality(&Budget::default(), 1).passed());
}

#[test]
fn bridge_theorem_instances() {
    // for every valid commutation bicharacter on Z2 and a matching
    // eps-commutative algebra, the bridge factor certifies almost mediality
    let budget = Budget::default();
    let trivial_eps = FactorMap::one(
        polymedial_core::AbelianGroup::cyclic(2),
        polymedial_core::ScalarBackend::prime_field(3).unwrap(),
        2,
    );
    let commutative = models::group_algebra_cyclic(2, 3);
    assert!(check_commutation_factor(&trivial_eps).unwrap().passed());
    assert!(commutative
        .check_almost_commutative(&trivial_eps)
        .unwrap()
        .passed());
    let rho = FactorMap::bridge(trivial_eps).unwrap();
    assert!(commutative
        .check_almost_medial(&rho, &budget)
        .unwrap()
        .passed());

    let sign = super_sign(3).unwrap();
    let grassmann = models::grassmann_f3();
    assert!(check_commutation_factor(&sign).unwrap().passed());
    assert!(grassmann.check_almost_commutative(&sign).unwrap().passed());
    let rho = FactorMap::bridge(sign).unwrap();
    assert!(grassmann.check_almost_medial(&rho, &budget).unwrap().passed());
}

#[test]
fn blockwise_composition_mediality_exhaustive() {
    // all total maps on lengths <= 2: assembling then composing equals
    // composing then assembling
    use polymedial_core::PosMap;
    fn all_maps(source: usize, target: usize) -> Vec<PosMap> {
        if source == 0 {
            return vec![PosMap::new(0, target, vec![]).unwrap()];
        }
        let mut out = Vec::new();
        let count = target.pow(source as u32);
        for rank in 0..count {
            let mut map = vec![0usize; source];
            let mut r = rank;
            for slot in map.iter_mut() {
                *slot = r % target;
                r /= target;
            }
            out.push(PosMap::new(source, target, map).unwrap());
        }
        out
    }
    for a in 0..=2usize {
        for b in 1..=2usize {
            for c in 1..=2usize {
                for x in 0..=2usize {
                    for y in 1..=2usize {
                        for z in 1..=2usize {
                            for f1 in all_maps(a, b) {
                                for f2 in all_maps(b, c) {
                                    for g1 in all_maps(x, y) {
                                        for g2 in all_maps(y, z) {
                                            let assembled = PosMap::tensor(&[&f1, &g1])
                                                .then(&PosMap::tensor(&[&f2, &g2]))
                                                .unwrap();
                                            let composed = PosMap::tensor(&[
                                                &f1.then(&f2).unwrap(),
                                                &g1.then(&g2).unwrap(),
                                            ]);
                                            assert_eq!(assembled, composed);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
