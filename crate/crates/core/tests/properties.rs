use gerbegw::cyclonum::rational;
use gerbegw::{
    builtin_theory, novikov_twist, twisted_invariant, AbelianGroup, CurveClass, CycNumber,
    GerbeSpec, TwistedInsertion,
};
use proptest::prelude::*;

fn cyc(level: u32) -> impl Strategy<Value = CycNumber> {
    proptest::collection::vec((-9i64..10, 1i64..5), level as usize).prop_map(move |terms| {
        terms
            .iter()
            .enumerate()
            .fold(CycNumber::zero(level), |acc, (k, &(p, q))| {
                acc + CycNumber::root_of_unity(k as i64, level).scale(&rational(p, q))
            })
    })
}

fn level() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(4), Just(5), Just(12)]
}

proptest! {
    #[test]
    fn ring_laws((a, b, c) in level().prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycNumber::zero(a.level()));
    }

    #[test]
    fn inverses(a in level().prop_flat_map(cyc)) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inv().unwrap(), CycNumber::one(a.level()));
    }

    #[test]
    fn novikov_twist_is_multiplicative(r in 1u32..7, l in -3i64..4, b1 in 0u32..5, b2 in 0u32..5, rho in 0i64..7) {
        let spec = GerbeSpec::root(r, vec![l]).unwrap();
        let rho = spec.group().character(&[rho]).unwrap();
        let (x, y) = (CurveClass::degree(b1), CurveClass::degree(b2));
        let lhs = novikov_twist(&spec, &rho, &x.add(&y)).unwrap();
        let rhs = novikov_twist(&spec, &rho, &x).unwrap() * novikov_twist(&spec, &rho, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_invariants_are_symmetric(
        residues in proptest::collection::vec(0i64..6, 5),
        shift in 1usize..5,
    ) {
        let p2 = builtin_theory("P2").unwrap();
        let spec = GerbeSpec::new(AbelianGroup::new(vec![2, 3]).unwrap(), vec![vec![1], vec![2]]).unwrap();
        let ins: Vec<TwistedInsertion> = residues
            .iter()
            .map(|&a| TwistedInsertion {
                sector: spec.group().element(&[a % 2, a % 3]).unwrap(),
                class_index: 2,
                psi_power: 0,
            })
            .collect();
        let mut rotated = ins.clone();
        rotated.rotate_left(shift);
        let beta = CurveClass::degree(2);
        prop_assert_eq!(
            twisted_invariant(&spec, &p2, &ins, &beta).unwrap(),
            twisted_invariant(&spec, &p2, &rotated, &beta).unwrap()
        );
    }
}
