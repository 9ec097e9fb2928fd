//! Arithmetic in W_n(F_p) through ghost components, and homotheties.

use twisted_conjugacy::solvable::*;

fn main() {
    let w = |c: &[i64]| WittVector::from_i64(5, c).unwrap();
    let (a, b) = (w(&[3, 1]), w(&[4, 2]));
    println!("{a} + {b} = {}", witt_add(&a, &b).unwrap());
    println!("{a} * {b} = {}", witt_mul(&a, &b).unwrap());
    println!("ghost of {a}: {:?}", a.ghost());

    // W_2(F_5) is Z/25: 1 + 1 + 1 + 1 + 1 = (0, 1)
    let one = WittVector::one(5, 2);
    let five = (0..4).fold(one.clone(), |acc, _| witt_add(&acc, &one).unwrap());
    println!("5 = {five}");

    let x = w(&[2, 3]);
    let inv = witt_inverse(&x).unwrap();
    println!("{x}^-1 = {inv}, check {}", witt_mul(&x, &inv).unwrap());
    println!("(0,1) invertible: {}", witt_invertible(&w(&[0, 1])));

    println!("[2] * (1,1) = {}", witt_homothety(2, &w(&[1, 1])).unwrap());
    for l in 1..5 {
        let fixed = witt_fixed_points(5, 2, l).unwrap();
        println!("lambda {l}: {} fixed points, {}", fixed.len(), witt_homothety_verdict(5, l).unwrap());
    }
    println!("ring axioms on W_2(F_5): {:?}", witt_ring_axioms(5, 2).unwrap().unwrap_or("all hold"));
}
