//! Automorphisms of split tori `T = G_m^n`, given by matrices in `GL_n(Z)`.
//!
//! `φ_A(t)_i = ∏_j t_j^{a_ij}`. The twisting map `t ↦ t⁻¹φ(t)` acts on the
//! character lattice by `A − I`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{Fe, Field, FieldSpec};
use crate::orbit::{check_size, count_orbits};
use crate::Verdict;

pub type IntMatrix = Vec<Vec<i64>>;

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, |x| x.len()));
    (0..r).map(|i| (0..c).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

/// Exact determinant (Bareiss).
pub fn int_det(m: &IntMatrix) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `U · M · V = D` with `U`, `V` unimodular and `d_1 | d_2 | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `D`, nonnegative, zeros last.
    pub fn invariants(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len()))).map(|i| self.d[i][i]).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut d = m.clone();
    let mut u = int_identity(rows);
    let mut v = int_identity(cols);

    fn swap_rows(x: &mut IntMatrix, i: usize, j: usize) {
        x.swap(i, j);
    }
    fn swap_cols(x: &mut IntMatrix, i: usize, j: usize) {
        for r in x.iter_mut() {
            r.swap(i, j);
        }
    }
    // row_i += k * row_j
    fn add_row(x: &mut IntMatrix, i: usize, j: usize, k: i64) {
        let rj = x[j].clone();
        for (a, b) in x[i].iter_mut().zip(rj) {
            *a += k * b;
        }
    }
    fn add_col(x: &mut IntMatrix, i: usize, j: usize, k: i64) {
        for r in x.iter_mut() {
            r[i] += k * r[j];
        }
    }

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero |entry| in the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j] != 0 && best.map_or(true, |(a, b)| d[i][j].abs() < d[a][b].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let k = Integer::div_floor(&d[i][t], &p);
                if k != 0 {
                    add_row(&mut d, i, t, -k);
                    add_row(&mut u, i, t, -k);
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..cols {
                let k = Integer::div_floor(&d[t][j], &p);
                if k != 0 {
                    add_col(&mut d, j, t, -k);
                    add_col(&mut v, j, t, -k);
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold a non-multiple into the pivot row
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| d[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    add_row(&mut d, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    SmithDecomposition { u, v, d }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAutomorphism {
    a: IntMatrix,
}

/// Solution of `t⁻¹φ(t) = x`, living in `field` (an extension of the input field).
#[derive(Clone, Debug)]
pub struct TorusSolution {
    pub field: Field,
    pub t: Vec<Fe>,
    /// `[F_{q^m} : F_q]`
    pub extension_degree: usize,
}

impl TorusAutomorphism {
    pub fn new(a: IntMatrix) -> Result<Self> {
        let n = a.len();
        if let Some(r) = a.iter().find(|r| r.len() != n) {
            return Err(Error::WrongDimension { expected: n, found: r.len() });
        }
        if int_det(&a).abs() != 1 {
            return Err(Error::NotInvertible);
        }
        Ok(TorusAutomorphism { a })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn minus_identity(&self) -> IntMatrix {
        let mut m = self.a.clone();
        for (i, r) in m.iter_mut().enumerate() {
            r[i] -= 1;
        }
        m
    }

    /// `s_i = ∏_j t_j^{a_ij}`.
    pub fn apply(&self, f: &Field, t: &[Fe]) -> Result<Vec<Fe>> {
        if t.len() != self.rank() {
            return Err(Error::WrongDimension { expected: self.rank(), found: t.len() });
        }
        for (i, x) in t.iter().enumerate() {
            f.check(x)?;
            if f.is_zero(x) {
                return Err(Error::ZeroEntry(i + 1));
            }
        }
        Ok(apply_exponents(f, &self.a, t))
    }

    pub fn reidemeister(&self) -> Verdict {
        if int_det(&self.minus_identity()) != 0 {
            Verdict::One
        } else {
            Verdict::Infinite
        }
    }

    pub fn smith(&self) -> SmithDecomposition {
        smith_normal_form(&self.minus_identity())
    }

    /// `∏ gcd(d_i, q − 1)` with `gcd(0, q − 1) = q − 1`.
    pub fn class_count_finite(&self, q: u64) -> Result<u64> {
        if q < 3 || !is_prime_power(q) {
            return Err(Error::Parse { what: "prime power q >= 3", input: q.to_string() });
        }
        let m = (q - 1) as i64;
        Ok(self.smith().invariants().iter().map(|&d| d.gcd(&m) as u64).product())
    }

    /// Number of twisted classes on `(F_q^×)^n` by union-find over all elements.
    pub fn class_count_exhaustive(&self, f: &Field, jobs: usize) -> Result<u64> {
        let q = f.order().ok_or_else(|| Error::Unsupported("exhaustive count needs a finite field".into()))?;
        let n = self.rank();
        let base = (q - 1) as usize;
        let total = check_size((base as u128).pow(n as u32))?;
        let g = f.primitive_element();
        let units: Vec<Fe> = f.nonzero_elements().collect();
        let pos = |x: &Fe| f.index_of(x) - 1;
        // generator moves x ↦ g_k · x · φ(g_k)⁻¹
        let shifts: Vec<Vec<Fe>> = (0..n)
            .map(|k| {
                let mut gk = vec![f.one(); n];
                gk[k] = g.clone();
                let img = apply_exponents(f, &self.a, &gk);
                gk.iter().zip(&img).map(|(a, b)| f.div(a, b).unwrap()).collect()
            })
            .collect();
        let ds = count_orbits(total, jobs, |idx| {
            let mut x = Vec::with_capacity(n);
            let mut r = idx;
            for _ in 0..n {
                x.push(&units[r % base]);
                r /= base;
            }
            shifts
                .iter()
                .map(|c| {
                    x.iter().zip(c).rev().fold(0usize, |acc, (xi, ci)| acc * base + pos(&f.mul(xi, ci)))
                })
                .collect()
        });
        Ok(ds.count() as u64)
    }

    /// Finds `t` with `t⁻¹φ(t) = x`, passing to the smallest extension of
    /// the field of `x` that holds the required roots.
    pub fn solve_twist(&self, f: &Field, x: &[Fe]) -> Result<TorusSolution> {
        let n = self.rank();
        if x.len() != n {
            return Err(Error::WrongDimension { expected: n, found: x.len() });
        }
        for (i, xi) in x.iter().enumerate() {
            f.check(xi)?;
            if f.is_zero(xi) {
                return Err(Error::ZeroEntry(i + 1));
            }
        }
        if self.reidemeister() == Verdict::Infinite {
            return Err(Error::SingularTwist);
        }
        let q = f.order().ok_or_else(|| Error::Unsupported("solving needs a finite field".into()))?;
        let smith = self.smith();
        let d = smith.invariants();
        // y = x^U, then s_l^{d_l} = y_l and t = s^V
        let y = apply_exponents(f, &smith.u, x);
        let m = (1..=12)
            .find(|&m| {
                let Some(big_q) = q.checked_pow(m as u32) else { return false };
                if big_q > 20_000_000 {
                    return false;
                }
                y.iter().zip(&d).all(|(yl, &dl)| {
                    let g = (dl.unsigned_abs()).gcd(&(big_q - 1));
                    f.is_one(&f.pow_u(yl, (big_q - 1) / g))
                })
            })
            .ok_or_else(|| Error::Unsupported("roots need an extension beyond the size limit".into()))?;
        let (big, embed) = extension_of(f, m)?;
        let big_q = big.order().unwrap();
        let gen = big.primitive_element();
        let s: Vec<Fe> = y
            .iter()
            .zip(&d)
            .map(|(yl, &dl)| nth_root(&big, &gen, big_q, &embed(yl), dl).expect("root exists by choice of m"))
            .collect();
        let t = apply_exponents(&big, &smith.v, &s);
        let xe: Vec<Fe> = x.iter().map(&embed).collect();
        let phi_t = apply_exponents(&big, &self.a, &t);
        let check: Vec<Fe> = t.iter().zip(&phi_t).map(|(a, b)| big.div(b, a).unwrap()).collect();
        if check != xe {
            return Err(Error::OracleMismatch("torus solution failed substitution".into()));
        }
        Ok(TorusSolution { field: big, t, extension_degree: m })
    }
}

/// `out_i = ∏_j t_j^{e_ij}` for nonzero `t`.
pub fn apply_exponents(f: &Field, e: &IntMatrix, t: &[Fe]) -> Vec<Fe> {
    e.iter()
        .map(|row| row.iter().zip(t).fold(f.one(), |acc, (&k, tj)| f.mul(&acc, &f.pow(tj, k).unwrap())))
        .collect()
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

/// `F_{q^m}` over the field `f` together with the embedding `f → F_{q^m}`.
pub fn extension_of(f: &Field, m: usize) -> Result<(Field, Box<dyn Fn(&Fe) -> Fe>)> {
    let p = f.characteristic();
    let k = f.degree();
    if m == 1 {
        let g = f.clone();
        return Ok((f.clone(), Box::new(move |x: &Fe| g.check(x).map(|_| x.clone()).unwrap())));
    }
    let big = Field::extension(p, k * m)?;
    match f.spec() {
        FieldSpec::Prime(_) => {
            let b = big.clone();
            Ok((big, Box::new(move |x: &Fe| b.from_i64(f_int(x)))))
        }
        FieldSpec::Extension { modulus, .. } => {
            // image of y: a root of the base modulus inside the big field
            let modulus = modulus.clone();
            let root = big
                .elements()
                .find(|z| {
                    let v = modulus.iter().rev().fold(big.zero(), |acc, &c| big.add(&big.mul(&acc, z), &big.from_i64(c as i64)));
                    big.is_zero(&v)
                })
                .ok_or_else(|| Error::Unsupported("no embedding found".into()))?;
            let b = big.clone();
            Ok((
                big,
                Box::new(move |x: &Fe| {
                    let coeffs = match x {
                        Fe::Poly(v) => v.clone(),
                        _ => panic!("expected an extension element"),
                    };
                    coeffs.iter().rev().fold(b.zero(), |acc, &c| b.add(&b.mul(&acc, &root), &b.from_i64(c as i64)))
                }),
            ))
        }
        FieldSpec::Rational => Err(Error::Unsupported("Q has no finite extensions here".into())),
    }
}

fn f_int(x: &Fe) -> i64 {
    match x {
        Fe::Int(v) => *v as i64,
        _ => panic!("expected a prime-field element"),
    }
}

/// Some `s` with `s^d = y` in a finite field with primitive element `g`.
fn nth_root(f: &Field, g: &Fe, q: u64, y: &Fe, d: i64) -> Option<Fe> {
    let order = q - 1;
    // discrete log by walking the cyclic group
    let mut acc = f.one();
    let mut log = None;
    for k in 0..order {
        if acc == *y {
            log = Some(k);
            break;
        }
        acc = f.mul(&acc, g);
    }
    let l = log? as i128;
    let n = order as i128;
    let dm = (d as i128).rem_euclid(n);
    let gg = dm.gcd(&n);
    if l % gg != 0 {
        return None;
    }
    let (dn, ln, nn) = (dm / gg, l / gg, n / gg);
    let k = if nn == 1 {
        0
    } else {
        let inv = dn.extended_gcd(&nn).x.rem_euclid(nn);
        (ln * inv).rem_euclid(nn)
    };
    Some(f.pow_u(g, k as u64))
}
