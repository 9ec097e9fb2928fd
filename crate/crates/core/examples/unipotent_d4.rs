//! The block matrix M(U, φ) for the triality twist of D4 over F_7.

use twisted_conjugacy::chevalley::UnipotentGroup;
use twisted_conjugacy::field::Field;
use twisted_conjugacy::unipotent::{CentralParams, Character, ExtremalParams, UnipotentAutomorphism};

fn main() {
    let f = Field::prime(7).unwrap();
    let g = UnipotentGroup::build("D4", f.clone()).unwrap();
    let rs = g.root_system();
    let rho = rs.parse_symmetry("cycle134").unwrap();
    let chi = Character::from_i64(&f, &[2, 3, 2, 3]);
    let phi = UnipotentAutomorphism::new(&g, rho, chi, ExtremalParams::zero(&f), CentralParams::zero(4), g.identity()).unwrap();

    let m = phi.twist_matrix();
    let mut k = 0;
    for (h, b) in m.heights.iter().zip(&m.blocks) {
        let labels: Vec<String> = (k..k + b.rows).map(|i| rs.root(i).to_string()).collect();
        println!("M{h}  ({})  det {}", labels.join(", "), f.format(&b.det(&f)));
        for row in b.format(&f) {
            println!("    {}", row.join(" "));
        }
        k += b.rows;
    }
    println!("verdict: {}", phi.reidemeister());

    // χ = (2,3,2,2) avoids χ(β) = 1 on the height-4 root
    let chi = Character::from_i64(&f, &[2, 3, 2, 2]);
    let phi = UnipotentAutomorphism::new(&g, rs.parse_symmetry("cycle134").unwrap(), chi, ExtremalParams::zero(&f), CentralParams::zero(4), g.identity()).unwrap();
    println!("chi = (2,3,2,2): {}", phi.reidemeister());
}
