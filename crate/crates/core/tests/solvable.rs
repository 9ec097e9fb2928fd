use twisted_conjugacy::field::Field;
use twisted_conjugacy::linalg::Matrix;
use twisted_conjugacy::solvable::*;
use twisted_conjugacy::torus::TorusAutomorphism;
use twisted_conjugacy::Verdict;

fn theta1_auto(f: &Field, a: i64, b: i64) -> SemidirectAutomorphism {
    let group = SemidirectGroup::new(f.clone(), TorusActionOnVector::theta1());
    let l = VectorPart::from_matrix(&Matrix::from_i64(f, &[vec![0, a], vec![b, 0]]).unwrap());
    SemidirectAutomorphism::new(group, TorusAutomorphism::new(vec![vec![-1]]).unwrap(), l).unwrap()
}

#[test]
fn semidirect_counts_split_by_verdict() {
    for p in [5u64, 7] {
        let f = Field::prime(p).unwrap();
        for a in 1..p as i64 {
            for b in 1..p as i64 {
                let phi = theta1_auto(&f, a, b);
                let n = phi.orbit_count(2).unwrap();
                match phi.reidemeister().unwrap() {
                    // only the torus quotient F_q^x / squares survives
                    Verdict::One => assert_eq!(n, 2, "p={p} a={a} b={b}"),
                    Verdict::Infinite => assert!(n > 2, "p={p} a={a} b={b}"),
                }
                assert_eq!(phi.reidemeister().unwrap() == Verdict::Infinite, (a * b) % p as i64 == 1);
            }
        }
    }
}

#[test]
fn theta2_inversion_incompatible() {
    let f = Field::prime(7).unwrap();
    let group = SemidirectGroup::new(f.clone(), TorusActionOnVector::theta2());
    for m in [[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[2, 0], [0, 3]]] {
        let l = VectorPart::from_matrix(&Matrix::from_i64(&f, &[m[0].to_vec(), m[1].to_vec()]).unwrap());
        assert!(SemidirectAutomorphism::new(group.clone(), TorusAutomorphism::new(vec![vec![-1]]).unwrap(), l).is_err());
    }
}

#[test]
fn semidirect_map_is_homomorphism() {
    let f = Field::prime(5).unwrap();
    let phi = theta1_auto(&f, 2, 4);
    let g = SemidirectGroup::new(f.clone(), TorusActionOnVector::theta1());
    let t = |x: i64| vec![f.from_i64(x)];
    let v = |x: i64, y: i64| vec![f.from_i64(x), f.from_i64(y)];
    let xs = [
        SemidirectElement { t: t(2), v: v(1, 3) },
        SemidirectElement { t: t(3), v: v(4, 0) },
        SemidirectElement { t: t(4), v: v(2, 2) },
    ];
    for x in &xs {
        for y in &xs {
            let lhs = phi.apply(&g.multiply(x, y));
            let rhs = g.multiply(&phi.apply(x), &phi.apply(y));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn tga_weight_criterion() {
    for w in -3..=3 {
        let action = TorusActionOnVector::new(vec![vec![w]]).unwrap();
        assert_eq!(tga_has_rinf(&action).unwrap(), w != 0, "weight {w}");
    }
    assert!(tga_has_rinf(&TorusActionOnVector::theta1()).is_err());
}

#[test]
fn gan_verdict_is_fixed_subspace() {
    let q = Field::rational();
    let cases = [
        (vec![vec![2, 0], vec![0, 3]], Verdict::One),
        (vec![vec![1, 1], vec![0, 1]], Verdict::Infinite),
        (vec![vec![0, 1], vec![1, 0]], Verdict::Infinite),
        (vec![vec![0, -1], vec![1, 0]], Verdict::One),
    ];
    for (m, want) in cases {
        let l = LinearAutomorphism::new(&q, Matrix::from_i64(&q, &m).unwrap()).unwrap();
        assert_eq!(gan_reidemeister(&q, &l), want, "{m:?}");
    }
    assert!(LinearAutomorphism::new(&q, Matrix::from_i64(&q, &[vec![1, 1], vec![1, 1]]).unwrap()).is_err());
}

#[test]
fn witt_is_z_mod_p_squared() {
    for p in [2u64, 3, 5, 7] {
        assert!(witt_ring_axioms(p, 2).unwrap().is_none(), "p={p}");
        let one = WittVector::one(p, 2);
        let mut acc = WittVector::zero(p, 2);
        for k in 1..=p * p {
            acc = witt_add(&acc, &one).unwrap();
            assert_eq!(acc == WittVector::zero(p, 2), k == p * p, "p={p} k={k}");
        }
    }
}

#[test]
fn homothety_is_additive_and_fixes_only_zero() {
    let p = 5;
    for l in 1..p {
        for a in WittVector::all(p, 2) {
            for b in [WittVector::from_i64(p, &[1, 3]).unwrap(), WittVector::from_i64(p, &[4, 4]).unwrap()] {
                let lhs = witt_homothety(l, &witt_add(&a, &b).unwrap()).unwrap();
                let rhs = witt_add(&witt_homothety(l, &a).unwrap(), &witt_homothety(l, &b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let fixed = witt_fixed_points(p, 2, l).unwrap();
        if l == 1 {
            assert_eq!(fixed.len(), 25);
        } else {
            assert_eq!(fixed, vec![WittVector::zero(p, 2)]);
        }
        assert_eq!(witt_homothety_verdict(p, l).unwrap() == Verdict::One, l != 1);
    }
    assert!(witt_homothety(0, &WittVector::one(p, 2)).is_err());
}
