//! Canonical finite structures used across tests, the CLI demos and the
//! Python bindings.

use crate::algebra::GradedAlgebra;
use crate::group::AbelianGroup;
use crate::nary::NaryOp;

/// The symmetric group S3 with the fixed labeling
/// 0=e, 1=(12), 2=(13), 3=(23), 4=(123), 5=(132).
/// Composition is right-to-left: (s*t)(x) = s(t(x)).
pub const S3_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2], // e
    [1, 0, 2], // (12)
    [2, 1, 0], // (13)
    [0, 2, 1], // (23)
    [1, 2, 0], // (123)
    [2, 0, 1], // (132)
];

pub fn s3_compose(a: usize, b: usize) -> usize {
    let sa = S3_PERMS[a];
    let sb = S3_PERMS[b];
    let composite = [sa[sb[0]], sa[sb[1]], sa[sb[2]]];
    S3_PERMS
        .iter()
        .position(|p| *p == composite)
        .expect("composite is a permutation of three points")
}

pub fn s3_op() -> NaryOp {
    NaryOp::from_fn(2, 6, |t| s3_compose(t[0], t[1])).expect("S3 table is closed")
}

/// The Grassmann-type algebra on two generators over F_3: basis
/// (1, th1, th2, th12) with Z2 grades (0, 1, 1, 0), th_i^2 = 0 and
/// th2*th1 = -th1*th2.
pub fn grassmann_f3() -> GradedAlgebra {
    grassmann_f3_with_grades(vec![0, 1, 1, 0])
}

pub fn grassmann_f3_with_grades(grades: Vec<usize>) -> GradedAlgebra {
    let p = 3u64;
    let mut entries = Vec::new();
    for i in 0..4usize {
        entries.push((vec![0, i], vec![(i, 1)]));
        if i != 0 {
            entries.push((vec![i, 0], vec![(i, 1)]));
        }
    }
    entries.push((vec![1, 2], vec![(3, 1)]));
    entries.push((vec![2, 1], vec![(3, p - 1)]));
    GradedAlgebra::new(2, 4, p, AbelianGroup::cyclic(2), grades, entries, Some(0))
        .expect("grassmann table is well formed")
}

/// Group algebra F_p[Z_m] with grade i on basis e_i; commutative,
/// associative, unital and strongly graded.
pub fn group_algebra_cyclic(m: u32, p: u64) -> GradedAlgebra {
    let dim = m as usize;
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            entries.push((vec![i, j], vec![((i + j) % dim, 1)]));
        }
    }
    let grades = (0..dim).collect();
    GradedAlgebra::new(2, dim, p, AbelianGroup::cyclic(m), grades, entries, Some(0))
        .expect("group algebra table is well formed")
}

/// A two-dimensional non-associative toy algebra over F_3 with trivial
/// grading: e1*e1 = e0, e0*e1 = e1, all other products zero. Then
/// (e1 e1) e1 = e1 while e1 (e1 e1) = 0.
pub fn non_associative_toy_f3() -> GradedAlgebra {
    GradedAlgebra::new(
        2,
        2,
        3,
        AbelianGroup::trivial(),
        vec![0, 0],
        vec![
            (vec![1, 1], vec![(0, 1)]),
            (vec![0, 1], vec![(1, 1)]),
        ],
        None,
    )
    .expect("toy table is well formed")
}

/// A three-dimensional non-associative algebra over F_3 with a nonzero
/// Jacobiator: e0*e1 = e1 and e1*e2 = e0, all other products zero, so the
/// cyclic commutator sum at (e0,e1,e2) equals e0.
pub fn jacobiator_toy_f3() -> GradedAlgebra {
    GradedAlgebra::new(
        2,
        3,
        3,
        AbelianGroup::trivial(),
        vec![0, 0, 0],
        vec![
            (vec![0, 1], vec![(1, 1)]),
            (vec![1, 2], vec![(0, 1)]),
        ],
        None,
    )
    .expect("toy table is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_composition_convention() {
        // (12)(13) = (132) and (13)(12) = (123)
        assert_eq!(s3_compose(1, 2), 5);
        assert_eq!(s3_compose(2, 1), 4);
        for a in 0..6 {
            assert_eq!(s3_compose(0, a), a);
            assert_eq!(s3_compose(a, 0), a);
        }
    }

    #[test]
    fn grassmann_products() {
        let alg = grassmann_f3();
        assert_eq!(alg.basis_product(&[1, 1]), &vec![]);
        assert_eq!(alg.basis_product(&[1, 2]), &vec![(3, 1)]);
        assert_eq!(alg.basis_product(&[2, 1]), &vec![(3, 2)]);
        assert_eq!(alg.basis_product(&[3, 3]), &vec![]);
    }
}
