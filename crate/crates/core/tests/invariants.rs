use proptest::prelude::*;
use twisted_conjugacy::chevalley::UnipotentGroup;
use twisted_conjugacy::field::Field;
use twisted_conjugacy::solvable::{witt_add, witt_mul, WittVector};

fn group(t: &str) -> UnipotentGroup {
    UnipotentGroup::build(t, Field::prime(11).unwrap()).unwrap()
}

fn coords(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0i64..11, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(t in prop::sample::select(vec!["A3", "B2", "G2", "C3"]), seed in any::<u64>()) {
        let g = group(t);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let (x, y, z) = (g.random(&mut rng), g.random(&mut rng), g.random(&mut rng));
        prop_assert_eq!(g.multiply(&g.multiply(&x, &y), &z), g.multiply(&x, &g.multiply(&y, &z)));
        prop_assert!(g.is_identity(&g.multiply(&x, &g.invert(&x))));
    }

    #[test]
    fn g2_coordinates_roundtrip(c in coords(6)) {
        let g = group("G2");
        let x = g.from_i64(&c).unwrap();
        let back = g.collect(&g.factors(&x)).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn extension_field_axioms(a in proptest::collection::vec(0u64..3, 3), b in proptest::collection::vec(0u64..3, 3)) {
        let f = Field::extension(3, 3).unwrap();
        let (x, y) = (f.from_coeffs(&a).unwrap(), f.from_coeffs(&b).unwrap());
        prop_assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
        prop_assert_eq!(f.sub(&f.add(&x, &y), &y), x.clone());
        if !f.is_zero(&x) {
            prop_assert!(f.is_one(&f.mul(&x, &f.inv(&x).unwrap())));
        }
        prop_assert_eq!(f.pow_u(&x, 27), x);
    }

    #[test]
    fn witt_distributes(a in proptest::collection::vec(0i64..7, 2), b in proptest::collection::vec(0i64..7, 2), c in proptest::collection::vec(0i64..7, 2)) {
        let w = |v: &[i64]| WittVector::from_i64(7, v).unwrap();
        let (a, b, c) = (w(&a), w(&b), w(&c));
        let lhs = witt_mul(&a, &witt_add(&b, &c).unwrap()).unwrap();
        let rhs = witt_add(&witt_mul(&a, &b).unwrap(), &witt_mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
