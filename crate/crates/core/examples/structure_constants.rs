//! Structure constants of G2 and the commutator formula in action.

use twisted_conjugacy::chevalley::UnipotentGroup;
use twisted_conjugacy::field::Field;

fn main() {
    let g = UnipotentGroup::build("G2", Field::prime(7).unwrap()).unwrap();
    let sc = g.structure_constants();
    let rs = g.root_system();
    let n = rs.num_positive();
    for a in 0..n {
        for b in a + 1..n {
            if let Some(s) = sc.sum_pos(a, b) {
                println!("N({}, {}) = {:>2}   sum {}", rs.root(a), rs.root(b), sc.n_pos(a, b), rs.root(s));
            }
        }
    }

    // [x_a1(t), x_a2(u)] has four factors in G2
    let f = g.field();
    let tail = g.commutator_tail(0, 1, &f.from_i64(2), &f.from_i64(3)).unwrap();
    println!("tail of x_a1(2), x_a2(3): {}", g.format_factors(&tail));

    // collection puts any word into canonical order
    let x = g.parse("x[2](1)*x[1](1)*x[2](5)").unwrap();
    println!("collected: {}", g.format(&x));
    let y = g.multiply(&x, &g.invert(&x));
    println!("x * x^-1 is identity: {}", g.is_identity(&y));
}
