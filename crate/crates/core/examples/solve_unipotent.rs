//! Solving x⁻¹φ(x) = y height by height in G2 and C3.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twisted_conjugacy::chevalley::UnipotentGroup;
use twisted_conjugacy::field::Field;
use twisted_conjugacy::unipotent::UnipotentAutomorphism;
use twisted_conjugacy::Verdict;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in ["G2", "C3"] {
        let g = UnipotentGroup::build(t, Field::prime(11).unwrap()).unwrap();
        let phi = loop {
            let phi = UnipotentAutomorphism::random(&g, &mut rng).unwrap();
            if phi.reidemeister() == Verdict::One {
                break phi;
            }
        };
        let y = g.random(&mut rng);
        let x = phi.solve_twist(&y).unwrap();
        println!("{t}: y = {}", g.format(&y));
        println!("    x = {}", g.format(&x));
        println!("    x^-1 phi(x) == y: {}", phi.twisted_difference(&x) == y);
    }

    // a singular block has no solution for generic y
    let g = UnipotentGroup::build("A3", Field::prime(11).unwrap()).unwrap();
    let id = UnipotentAutomorphism::identity(&g).unwrap();
    println!("identity: {:?}", id.solve_twist(&g.from_i64(&[1, 0, 0, 0, 0, 0]).unwrap()).unwrap_err());
}
