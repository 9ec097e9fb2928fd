//! Positive roots in the working order, heights and diagram symmetries.

use twisted_conjugacy::rootsystem::RootSystem;

fn main() {
    for t in ["A3", "D4", "G2", "C3"] {
        let rs = RootSystem::parse(t).unwrap();
        println!("{t}: {} positive roots, highest {}", rs.num_positive(), rs.highest_root());
        for block in rs.height_blocks() {
            let h = rs.root(block.start).height();
            let names: Vec<String> = block.map(|i| rs.root(i).to_string()).collect();
            println!("  height {h}: {}", names.join("  "));
        }
        let syms: Vec<String> = rs.diagram_symmetries().iter().map(|d| d.describe()).collect();
        println!("  symmetries: {}", syms.join(" "));
    }
}
