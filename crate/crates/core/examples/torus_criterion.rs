//! R(φ) for torus automorphisms, finite class counts and solving t⁻¹φ(t) = x.

use twisted_conjugacy::field::Field;
use twisted_conjugacy::torus::TorusAutomorphism;

fn main() {
    let cases = [
        vec![vec![2, 1], vec![1, 1]],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![-1, 0], vec![0, -1]],
        vec![vec![1, 1], vec![0, 1]],
    ];
    for a in cases {
        let phi = TorusAutomorphism::new(a.clone()).unwrap();
        let counts: Vec<String> = [5, 7, 11, 25]
            .iter()
            .map(|&q| format!("F_{q}: {}", phi.class_count_finite(q).unwrap()))
            .collect();
        println!("A = {a:?}  {}  smith {:?}  {}", phi.reidemeister(), phi.smith().invariants(), counts.join(", "));
    }

    // inversion: t⁻² = x has a root in F_7 only when x is a square
    let f = Field::prime(7).unwrap();
    let inv = TorusAutomorphism::new(vec![vec![-1]]).unwrap();
    for x in [4, 3] {
        let sol = inv.solve_twist(&f, &[f.from_i64(x)]).unwrap();
        println!(
            "t^-2 = {x}: t = {} in {} (degree {})",
            sol.field.format(&sol.t[0]),
            sol.field.spec(),
            sol.extension_degree
        );
    }

    // the closed form agrees with brute force
    let phi = TorusAutomorphism::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
    println!("swap over F_7: formula {} enumeration {}", phi.class_count_finite(7).unwrap(), phi.class_count_exhaustive(&f, 1).unwrap());
}
