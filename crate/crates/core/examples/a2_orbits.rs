//! Brute-force twisted classes of U(F_q) in type A2 against the matrix criterion.

use twisted_conjugacy::chevalley::UnipotentGroup;
use twisted_conjugacy::field::Field;
use twisted_conjugacy::unipotent::{CentralParams, Character, ExtremalParams, UnipotentAutomorphism};

fn main() {
    let f = Field::prime(5).unwrap();
    let g = UnipotentGroup::build("A2", f.clone()).unwrap();
    let rs = g.root_system();

    let id = UnipotentAutomorphism::identity(&g).unwrap();
    println!("identity: {} classes (q^2+q-1 = 29)", id.orbit_count(1).unwrap());

    println!("rho  chi    blocks      count");
    for rho in ["id", "swap"] {
        for (c1, c2) in [(2, 2), (2, 3), (1, 3), (4, 4), (2, 4)] {
            let phi = UnipotentAutomorphism::new(
                &g,
                rs.parse_symmetry(rho).unwrap(),
                Character::from_i64(&f, &[c1, c2]),
                ExtremalParams::zero(&f),
                CentralParams::zero(2),
                g.identity(),
            )
            .unwrap();
            let dets: Vec<String> = phi.twist_matrix().determinants(&f).iter().map(|d| f.format(d)).collect();
            println!("{rho:<4} ({c1},{c2})  dets {:<6} {:>3}  {}", dets.join(","), phi.orbit_count(1).unwrap(), phi.reidemeister());
        }
    }

    // the graph automorphism needs x_a3(t) -> x_a3(-t)
    let swap = rs.parse_symmetry("swap").unwrap();
    let phi = UnipotentAutomorphism::new(&g, swap, Character::trivial(&f, 2), ExtremalParams::zero(&f), CentralParams::zero(2), g.identity()).unwrap();
    println!("graph signs for swap: {:?}", phi.graph_signs());

    // u != 0 is rejected; the raw map fails the group law
    let raw = UnipotentAutomorphism::from_parts_unchecked(
        &g,
        rs.identity_symmetry(),
        Character::trivial(&f, 2),
        ExtremalParams { u: f.one(), u_prime: None },
        CentralParams::zero(2),
        g.identity(),
    )
    .unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
    println!("u = 1 is a homomorphism: {}", raw.homomorphism_defect(&mut rng, 20).is_none());
}
