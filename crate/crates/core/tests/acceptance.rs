//! One line per acceptance criterion. All checks are exact (tolerance 0).
//!
//! Criteria listed in `KNOWN_RED` print FAIL with the measured discrepancy;
//! the test asserts that everything else passes and that those stay red, so
//! a change in either direction is noticed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twisted_conjugacy::chevalley::{RootFactor, UnipotentGroup};
use twisted_conjugacy::field::Field;
use twisted_conjugacy::linalg::Matrix;
use twisted_conjugacy::solvable::*;
use twisted_conjugacy::torus::{int_det, TorusAutomorphism};
use twisted_conjugacy::unipotent::*;
use twisted_conjugacy::{Error, Verdict};

const SEED: u64 = 20240611;
const KNOWN_RED: &[u32] = &[2, 9];

type Outcome = Result<String, String>;

fn unipotent(t: &str, q: u64) -> UnipotentGroup {
    UnipotentGroup::build(t, Field::prime(q).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let f = Field::prime(7).unwrap();
    let g = unipotent("D4", 7);
    let rho = g.root_system().parse_symmetry("cycle134").unwrap();
    let phi = UnipotentAutomorphism::new(
        &g,
        rho,
        Character::from_i64(&f, &[2, 3, 2, 3]),
        ExtremalParams::zero(&f),
        CentralParams::zero(4),
        g.identity(),
    )
    .map_err(|e| e.to_string())?;
    let (c1, c2, c3, c4) = (2, 3, 2, 3);
    let chi = |r: &[i64]| -> i64 { [c1, c2, c3, c4].iter().zip(r).map(|(c, &e)| i64::pow(*c, e as u32)).product() };
    let (x5, x6, x7) = (chi(&[1, 1, 0, 0]), chi(&[0, 1, 1, 0]), chi(&[0, 1, 0, 1]));
    let (x8, x9, x10) = (chi(&[1, 1, 1, 0]), chi(&[1, 1, 0, 1]), chi(&[0, 1, 1, 1]));
    let (x11, x12) = (chi(&[1, 1, 1, 1]), chi(&[1, 2, 1, 1]));
    let want: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![-1, 0, 0, c4], vec![0, c2 - 1, 0, 0], vec![c1, 0, -1, 0], vec![0, 0, c3, -1]],
        vec![vec![-1, 0, x7], vec![x5, -1, 0], vec![0, x6, -1]],
        vec![vec![-1, x9, 0], vec![0, -1, x10], vec![x8, 0, -1]],
        vec![vec![x11 - 1]],
        vec![vec![x12 - 1]],
    ];
    let m = phi.twist_matrix();
    if m.blocks.len() != 5 {
        return Err(format!("{} blocks", m.blocks.len()));
    }
    for (k, (b, w)) in m.blocks.iter().zip(&want).enumerate() {
        if *b != Matrix::from_i64(&f, w).unwrap() {
            return Err(format!("block {} is {:?}", k + 1, b.format(&f)));
        }
    }
    Ok("five blocks of sizes 4,3,3,1,1 match entrywise over F_7".into())
}

fn criterion_2() -> Outcome {
    let mut notes = vec![];
    let mut ok = true;
    for q in [5u64, 7] {
        let f = Field::prime(q).unwrap();
        let g = unipotent("A2", q);
        let rs = g.root_system();
        let id = rs.identity_symmetry();
        let swap = rs.parse_symmetry("swap").unwrap();
        let (mut id_bad, mut swap_literal_bad, mut swap_oracle_bad, mut literal_vs_oracle) = (0, 0, 0, 0);
        for c1 in 1..q as i64 {
            for c2 in 1..q as i64 {
                for u in 0..q as i64 {
                    let chi = Character::from_i64(&f, &[c1, c2]);
                    let fu = f.from_i64(u);
                    let c3 = c1 * c2;
                    let lit_id = vec![
                        Matrix::from_i64(&f, &[vec![c1 - 1, c1 * u], vec![c2 * u, c2 - 1]]).unwrap(),
                        Matrix::from_i64(&f, &[vec![c3 - 1]]).unwrap(),
                    ];
                    let lit_swap = vec![
                        Matrix::from_i64(&f, &[vec![c2 * u - 1, c2], vec![c1, c1 * u - 1]]).unwrap(),
                        Matrix::from_i64(&f, &[vec![c3 - 1]]).unwrap(),
                    ];
                    if TwistMatrix::build(&g, &id, &chi, &fu).unwrap().blocks != lit_id {
                        id_bad += 1;
                    }
                    let built = TwistMatrix::build(&g, &swap, &chi, &fu).unwrap();
                    if built.blocks != lit_swap {
                        swap_literal_bad += 1;
                    }
                    if u == 0 {
                        // orbit oracle on the genuine automorphism
                        let phi = UnipotentAutomorphism::new(
                            &g,
                            swap.clone(),
                            chi.clone(),
                            ExtremalParams::zero(&f),
                            CentralParams::zero(2),
                            g.identity(),
                        )
                        .unwrap();
                        let one = phi.orbit_count(1).unwrap() == 1;
                        if one != built.is_invertible(&f) {
                            swap_oracle_bad += 1;
                        }
                        let lit_one = lit_swap.iter().all(|b| b.is_invertible(&f));
                        if one != lit_one {
                            literal_vs_oracle += 1;
                        }
                    }
                }
            }
        }
        ok &= id_bad == 0 && swap_literal_bad == 0 && swap_oracle_bad == 0;
        notes.push(format!(
            "F_{q}: rho=id mismatches {id_bad}; rho=swap entry mismatches vs stated form {swap_literal_bad} \
             (height-2 block is -chi3-1, sign forced by N_(a2,a1) = -N_(a1,a2)); \
             stated form disagrees with orbit oracle on {literal_vs_oracle} characters, built matrix on {swap_oracle_bad}"
        ));
    }
    let text = notes.join("; ");
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    loop {
        let n = rng.gen_range(1..=2);
        let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        if int_det(&a).abs() == 1 {
            return a;
        }
    }
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ones = 0;
    for k in 0..200 {
        let a = random_unimodular(&mut rng);
        let phi = TorusAutomorphism::new(a.clone()).unwrap();
        let d = phi.smith().invariants();
        for q in [5u64, 7, 11] {
            let f = Field::prime(q).unwrap();
            let formula = phi.class_count_finite(q).map_err(|e| e.to_string())?;
            let oracle = phi.class_count_exhaustive(&f, 1).map_err(|e| e.to_string())?;
            if formula != oracle {
                return Err(format!("sample {k} A={a:?} q={q}: formula {formula}, enumeration {oracle}"));
            }
            let coprime = d.iter().all(|&x| x != 0 && num_integer::gcd(x, q as i64 - 1) == 1);
            if phi.reidemeister() == Verdict::One && coprime {
                ones += 1;
                if formula != 1 {
                    return Err(format!("sample {k} A={a:?} q={q}: expected 1, got {formula}"));
                }
            }
        }
    }
    Ok(format!("200 matrices x 3 fields agree with enumeration; {ones} coprime One cases all give 1"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut summary = vec![];
    for t in ["A2", "C2"] {
        for q in [5u64, 7] {
            let g = unipotent(t, q);
            let (mut one, mut inf, mut swapped, mut extremal) = (0, 0, 0, 0);
            for k in 0..50 {
                let phi = UnipotentAutomorphism::random(&g, &mut rng).map_err(|e| e.to_string())?;
                let count = phi.orbit_count(1).map_err(|e| e.to_string())?;
                let inv = phi.twist_matrix().is_invertible(g.field());
                if (count == 1) != inv {
                    return Err(format!("{t} F_{q} sample {k}: count {count}, blocks invertible {inv}"));
                }
                if inv { one += 1 } else { inf += 1 }
                swapped += !phi.rho.is_identity() as usize;
                extremal += (!g.field().is_zero(&phi.omega.u) || phi.omega.u_prime.as_ref().is_some_and(|v| !g.field().is_zero(v))) as usize;
            }
            summary.push(format!("{t}/F_{q}: {one} one, {inf} inf, {swapped} graph, {extremal} extremal"));
        }
    }
    Ok(summary.join("; "))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    for t in ["A2", "A3", "C2", "G2"] {
        let g = unipotent(t, 5);
        for _ in 0..50 {
            let phi = UnipotentAutomorphism::random(&g, &mut rng).map_err(|e| e.to_string())?;
            if let Some((x, y)) = phi.homomorphism_defect(&mut rng, 10) {
                return Err(format!("{t}: phi(xy) != phi(x)phi(y) for x={} y={}", g.format(&x), g.format(&y)));
            }
        }
    }
    Ok("500 pairs each for A2, A3, C2, G2 over F_5".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    for t in ["A2", "A3"] {
        let g = unipotent(t, 5);
        let f = g.field().clone();
        let n = g.dim();
        for k in 0..500 {
            let len = rng.gen_range(1..=10);
            let word: Vec<RootFactor> = (0..len).map(|_| RootFactor::new(rng.gen_range(0..n), f.random(&mut rng))).collect();
            let collected = g.collect(&word).map_err(|e| e.to_string())?;
            let dim = g.root_system().rank() + 1;
            let mut prod = Matrix::identity(&f, dim);
            for fac in &word {
                prod = prod.mul(&f, &g.matrix_representation_a(&g.single(fac.root, fac.scalar.clone())).unwrap());
            }
            if g.matrix_representation_a(&collected).unwrap() != prod {
                return Err(format!("{t} list {k}: {}", g.format_factors(&word)));
            }
        }
    }
    Ok("500 random factor lists each for A2, A3 over F_5".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut torus_done = 0;
    let mut ext = 0;
    while torus_done < 20 {
        let a = random_unimodular(&mut rng);
        let phi = TorusAutomorphism::new(a.clone()).unwrap();
        if phi.reidemeister() != Verdict::One {
            continue;
        }
        let q = [5u64, 7, 11][torus_done % 3];
        let f = Field::prime(q).unwrap();
        let x: Vec<_> = (0..a.len()).map(|_| f.random_nonzero(&mut rng)).collect();
        let sol = phi.solve_twist(&f, &x).map_err(|e| format!("A={a:?}: {e}"))?;
        ext += (sol.extension_degree > 1) as usize;
        torus_done += 1;
    }
    let mut uni_done = 0;
    let types = ["A2", "A3", "C2", "G2", "D4"];
    while uni_done < 20 {
        let g = unipotent(types[uni_done % types.len()], 7);
        let phi = UnipotentAutomorphism::random(&g, &mut rng).unwrap();
        if phi.reidemeister() != Verdict::One {
            continue;
        }
        let y = g.random(&mut rng);
        let x = phi.solve_twist(&y).map_err(|e| e.to_string())?;
        if phi.twisted_difference(&x) != y {
            return Err("unipotent substitution failed".into());
        }
        uni_done += 1;
    }
    // uniqueness in A2 over F_5
    let g = unipotent("A2", 5);
    let all: Vec<_> = (0..125).map(|i| g.element_at(i)).collect();
    let mut unique_checked = 0;
    while unique_checked < 10 {
        let phi = UnipotentAutomorphism::random(&g, &mut rng).unwrap();
        if phi.reidemeister() != Verdict::One {
            continue;
        }
        let y = g.random(&mut rng);
        let x = phi.solve_twist(&y).map_err(|e| e.to_string())?;
        let hits: Vec<_> = all.iter().filter(|z| phi.twisted_difference(z) == y).collect();
        if hits.len() != 1 || *hits[0] != x {
            return Err(format!("A2 uniqueness: {} solutions", hits.len()));
        }
        unique_checked += 1;
    }
    Ok(format!("20 torus solves ({ext} needed an extension), 20 unipotent solves verified; A2/F_5 uniqueness on 10 cases"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let types = ["A2", "A3", "B2", "C3", "D4", "G2"];
    let (mut trivial, mut diagonal, mut none) = (0, 0, 0);
    for k in 0..200 {
        let g = unipotent(types[k % types.len()], [5u64, 7][k % 2]);
        let f = g.field().clone();
        let mut phi = UnipotentAutomorphism::random(&g, &mut rng).unwrap();
        // bias towards the shortcut cases
        let rs = g.root_system();
        let chi = match k % 4 {
            0 => Character::trivial(&f, rs.rank()),
            1 => Character { simple_values: (0..rs.rank()).map(|_| if rng.gen_bool(0.3) { f.one() } else { f.random_nonzero(&mut rng) }).collect() },
            _ => phi.chi.clone(),
        };
        let rho = if k % 4 == 1 || k % 4 == 2 { rs.identity_symmetry() } else { phi.rho.clone() };
        phi = UnipotentAutomorphism::new(&g, rho, chi, phi.omega.clone(), phi.central.clone(), phi.inner.clone()).unwrap();
        let full = phi.reidemeister();
        match phi.shortcut_verdict() {
            Some(v) if v != full => return Err(format!("sample {k}: shortcut {v}, block determinant {full}")),
            Some(_) if phi.chi.is_trivial(&f) => trivial += 1,
            Some(_) => diagonal += 1,
            None => none += 1,
        }
    }
    Ok(format!("200 samples: {trivial} trivial-chi, {diagonal} rho=id, {none} without shortcut; all agree"))
}

fn criterion_9() -> Outcome {
    let f = Field::prime(5).unwrap();
    let group = SemidirectGroup::new(f.clone(), TorusActionOnVector::theta1());
    let vp = VectorPart::from_matrix(&Matrix::from_i64(&f, &[vec![0, 2], vec![2, 0]]).unwrap());
    let phi = SemidirectAutomorphism::new(group, TorusAutomorphism::new(vec![vec![-1]]).unwrap(), vp).map_err(|e| e.to_string())?;
    let verdict = phi.reidemeister().map_err(|e| e.to_string())?;
    let count = phi.orbit_count(1).map_err(|e| e.to_string())?;
    let torus_count = phi.torus_part.class_count_finite(5).unwrap();

    let g2 = SemidirectGroup::new(f.clone(), TorusActionOnVector::theta2());
    let any = VectorPart::from_matrix(&Matrix::from_i64(&f, &[vec![1, 1], vec![0, 1]]).unwrap());
    let rejected = matches!(
        SemidirectAutomorphism::new(g2, TorusAutomorphism::new(vec![vec![-1]]).unwrap(), any),
        Err(Error::IncompatiblePair(_))
    );
    let axioms = witt_ring_axioms(5, 2).map_err(|e| e.to_string())?;
    let fixed = witt_fixed_points(5, 2, 2).map_err(|e| e.to_string())?;
    let witt_ok = axioms.is_none() && fixed == vec![WittVector::zero(5, 2)];

    let text = format!(
        "(4a) verdict {verdict}, F_5 model count {count} (torus quotient alone has {torus_count}); \
         (4b) rejected {rejected}; (5) ring axioms {}, fixed points {:?}",
        axioms.unwrap_or("hold"),
        fixed.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );
    if verdict == Verdict::One && count == 1 && rejected && witt_ok {
        Ok(text)
    } else {
        Err(text)
    }
}

fn criterion_10() -> Outcome {
    let mut out = vec![];
    for (q, want) in [(5u64, 29u64), (7, 55)] {
        let g = unipotent("A2", q);
        let c = UnipotentAutomorphism::identity(&g).unwrap().orbit_count(1).map_err(|e| e.to_string())?;
        if c != want || c != q * q + q - 1 {
            return Err(format!("F_{q}: {c}"));
        }
        out.push(format!("F_{q}: {c}"));
    }
    Ok(out.join(", "))
}

#[test]
fn acceptance() {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "D4 triality matrix", criterion_1),
        (2, "A2 special-case matrices", criterion_2),
        (3, "torus count vs enumeration", criterion_3),
        (4, "unipotent criterion vs orbit count", criterion_4),
        (5, "automorphisms are homomorphisms", criterion_5),
        (6, "collection vs matrix representation", criterion_6),
        (7, "solve round trips", criterion_7),
        (8, "shortcut rules vs block determinants", criterion_8),
        (9, "solvable examples", criterion_9),
        (10, "identity on A2 gives q^2+q-1", criterion_10),
    ];
    let mut unexpected = vec![];
    for (n, name, run) in criteria {
        let started = std::time::Instant::now();
        let r = run();
        let secs = started.elapsed().as_secs_f64();
        let (tag, detail) = match &r {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {n:>2} {tag} [{name}] (exact, {secs:.1}s) {detail}");
        if r.is_ok() == KNOWN_RED.contains(&n) {
            unexpected.push(n);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
