//! Property tests for the structural invariants: involutions, category laws
//! of position maps, factor conversions, and realization invariance.

use proptest::prelude::*;

use polymedial_core::factor::{check_cocycle, check_commutation_factor};
use polymedial_core::nary::{medial_twist, MatrixPolyad, NaryOp};
use polymedial_core::tree::{associator_move, enumerate_bracketings, PosMap};
use polymedial_core::{AbelianGroup, FactorMap, ScalarBackend, UnitScalar};

fn posmap_strategy(source: usize, target: usize) -> impl Strategy<Value = PosMap> {
    proptest::collection::vec(0..target.max(1), source)
        .prop_map(move |map| PosMap::new(source, target, map).expect("valid map"))
}

proptest! {
    #[test]
    fn medial_twist_is_an_involution(n in 2usize..4, seed in 0u64..10_000) {
        let nn = n * n;
        let entries: Vec<usize> = (0..nn).map(|i| ((seed >> i) & 3) as usize).collect();
        let m = MatrixPolyad::new(n, entries).unwrap();
        prop_assert_eq!(medial_twist(&medial_twist(&m)), m);
    }

    #[test]
    fn posmap_composition_is_associative(
        a in 0usize..4, b in 1usize..4, c in 1usize..4, d in 1usize..4,
        seed in 0u64..1000,
    ) {
        let _ = seed;
        let f = posmap_strategy(a, b);
        let g = posmap_strategy(b, c);
        let h = posmap_strategy(c, d);
        proptest!(|(f in f, g in g, h in h)| {
            let left = f.then(&g).unwrap().then(&h).unwrap();
            let right = f.then(&g.then(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        });
    }

    #[test]
    fn posmap_identity_laws(a in 0usize..5, b in 1usize..5) {
        proptest!(|(f in posmap_strategy(a, b))| {
            prop_assert_eq!(PosMap::identity(a).then(&f).unwrap(), f.clone());
            prop_assert_eq!(f.then(&PosMap::identity(b)).unwrap(), f);
        });
    }

    /// Blockwise composition equals composition of blockwise assemblies: the
    /// mediality property of position-map composition.
    #[test]
    fn tensor_assembly_is_functorial(
        a in 0usize..3, b in 1usize..3, c in 1usize..3,
        x in 0usize..3, y in 1usize..3, z in 1usize..3,
    ) {
        proptest!(|(
            f1 in posmap_strategy(a, b), f2 in posmap_strategy(b, c),
            g1 in posmap_strategy(x, y), g2 in posmap_strategy(y, z),
        )| {
            let assembled = PosMap::tensor(&[&f1, &g1])
                .then(&PosMap::tensor(&[&f2, &g2]))
                .unwrap();
            let composed = PosMap::tensor(&[&f1.then(&f2).unwrap(), &g1.then(&g2).unwrap()]);
            prop_assert_eq!(assembled, composed);
        });
    }

    #[test]
    fn factor_conversion_involutive_and_pass_preserving(values in proptest::collection::vec(1u64..5, 4)) {
        let backend = ScalarBackend::prime_field(5).unwrap();
        let f = FactorMap::from_table(AbelianGroup::cyclic(2), backend, 2, values).unwrap();
        let swapped = f.convert_eps0_eps().unwrap();
        let back = swapped.convert_eps0_eps().unwrap();
        for a in 0..2 {
            for b in 0..2 {
                prop_assert_eq!(f.eval(&[a, b]).unwrap(), back.eval(&[a, b]).unwrap());
            }
        }
        prop_assert_eq!(
            check_commutation_factor(&f).unwrap().passed(),
            check_commutation_factor(&swapped).unwrap().passed()
        );
    }

    /// Bilinearity of exponents makes every bicharacter a 2-cocycle.
    #[test]
    fn bicharacters_are_cocycles(e00 in 0i64..3, e01 in 0i64..3, e10 in 0i64..3, e11 in 0i64..3) {
        let backend = ScalarBackend::root_of_unity(3).unwrap();
        let omega = UnitScalar::new(backend, 1).unwrap();
        let group = AbelianGroup::new(vec![3, 3]).unwrap();
        let f = FactorMap::bicharacter(group, vec![vec![e00, e01], vec![e10, e11]], omega).unwrap();
        prop_assert!(check_cocycle(&f).unwrap().passed());
    }

    /// Every associator move keeps the flat leaf word.
    #[test]
    fn associator_moves_preserve_realization(
        len in prop::sample::select(vec![4usize, 5, 6]),
        pick in 0usize..14,
        i in 1usize..2,
    ) {
        let trees = enumerate_bracketings(2, len).unwrap();
        let tree = &trees[pick % trees.len()];
        if let Ok(moved) = associator_move(tree, &[], i) {
            prop_assert_eq!(tree.leaves(), moved.leaves());
        }
    }

    /// The querelement map of an additive ternary group is an involution.
    #[test]
    fn querelement_is_involutive(m in 2usize..8, shift in 0u64..8) {
        let op = NaryOp::linear_mod(m, &[1, 1, 1], shift % m as u64).unwrap();
        for g in 0..m {
            let q = op.querelement(g).unwrap();
            prop_assert_eq!(op.querelement(q).unwrap(), g);
        }
    }
}
