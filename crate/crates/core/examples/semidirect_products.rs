//! G_m ⋉ G_a^2: the combined criterion, compatibility and finite models.

use twisted_conjugacy::field::Field;
use twisted_conjugacy::linalg::Matrix;
use twisted_conjugacy::solvable::*;
use twisted_conjugacy::torus::TorusAutomorphism;

fn main() {
    let f = Field::prime(7).unwrap();
    let inversion = TorusAutomorphism::new(vec![vec![-1]]).unwrap();

    // (t, (x, y)) -> (t^-1, (a y, b x)) on θ1 = diag(t, t^-1)
    for (a, b) in [(2, 3), (1, 1), (3, 5)] {
        let group = SemidirectGroup::new(f.clone(), TorusActionOnVector::theta1());
        let l = VectorPart::from_matrix(&Matrix::from_i64(&f, &[vec![0, a], vec![b, 0]]).unwrap());
        let phi = SemidirectAutomorphism::new(group, inversion.clone(), l).unwrap();
        println!(
            "a={a} b={b}: {}  F_7 classes {}",
            phi.reidemeister().unwrap(),
            phi.orbit_count(1).unwrap()
        );
    }

    // θ2 = diag(t, 1) admits no vector part compatible with inversion
    let group = SemidirectGroup::new(f.clone(), TorusActionOnVector::theta2());
    let l = VectorPart::from_matrix(&Matrix::from_i64(&f, &[vec![1, 0], vec![0, 1]]).unwrap());
    match SemidirectAutomorphism::new(group, inversion.clone(), l) {
        Ok(_) => println!("theta2: accepted"),
        Err(e) => println!("theta2: {e}"),
    }

    for w in [0, 1, -2] {
        let action = TorusActionOnVector::new(vec![vec![w]]).unwrap();
        println!("T x| G_a with weight {w}: R-infinity {}", tga_has_rinf(&action).unwrap());
    }

    let q = Field::rational();
    let l = LinearAutomorphism::new(&q, Matrix::from_i64(&q, &[vec![2, 0], vec![0, 2]]).unwrap()).unwrap();
    println!("G_a^2 over Q, L = 2I: {}", gan_reidemeister(&q, &l));
}
