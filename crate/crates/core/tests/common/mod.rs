//! Adjoint-representation oracle: the Lie algebra on the Chevalley basis and
//! `x_α(t) = exp(t · ad e_α)` as a matrix.

#![allow(dead_code)]

use twisted_conjugacy::chevalley::{StructureConstants, UnipotentElement, UnipotentGroup};
use twisted_conjugacy::field::{Fe, Field};
use twisted_conjugacy::linalg::Matrix;
use twisted_conjugacy::rootsystem::Root;

/// Basis: positive roots, negative roots, then simple coroots `h_1..h_l`.
pub struct LieAlgebra<'a> {
    pub sc: &'a StructureConstants,
    pub roots: Vec<Root>,
    pub rank: usize,
}

impl<'a> LieAlgebra<'a> {
    pub fn new(sc: &'a StructureConstants) -> Self {
        let rs = sc.root_system();
        let mut roots: Vec<Root> = rs.positive_roots().to_vec();
        roots.extend(rs.positive_roots().iter().map(|r| r.neg()));
        LieAlgebra { sc, roots, rank: rs.rank() }
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.rank
    }

    fn root_index(&self, r: &Root) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    /// `[b_x, b_y]` as a dense integer vector.
    pub fn bracket(&self, x: usize, y: usize) -> Vec<i64> {
        let rs = self.sc.root_system();
        let nr = self.roots.len();
        let mut out = vec![0i64; self.dim()];
        match (x < nr, y < nr) {
            (true, true) => {
                let (r, s) = (&self.roots[x], &self.roots[y]);
                let sum = r.add(s);
                if sum.0.iter().all(|&c| c == 0) {
                    // h_r = r^∨ in the basis of simple coroots
                    let rr = rs.inner(r, r);
                    for i in 0..self.rank {
                        let ai = Root::simple(self.rank, i);
                        let num = r.0[i] * rs.inner(&ai, &ai);
                        assert_eq!(num % rr, 0);
                        out[nr + i] = num / rr;
                    }
                } else if let Some(k) = self.root_index(&sum) {
                    out[k] = self.sc.n(r, s);
                }
            }
            (false, true) => {
                let i = x - nr;
                let s = &self.roots[y];
                out[y] = rs.pairing(s, &Root::simple(self.rank, i)).unwrap();
            }
            (true, false) => {
                let i = y - nr;
                let r = &self.roots[x];
                out[x] = -rs.pairing(r, &Root::simple(self.rank, i)).unwrap();
            }
            (false, false) => {}
        }
        out
    }

    pub fn bracket_vec(&self, u: &[i64], y: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.dim()];
        for (x, &c) in u.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, v) in self.bracket(x, y).into_iter().enumerate() {
                out[k] += c * v;
            }
        }
        out
    }

    /// `ad e_α` for the positive root at position `a`, as a matrix acting on columns.
    pub fn ad(&self, f: &Field, a: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(f, d, d);
        for y in 0..d {
            for (k, v) in self.bracket(a, y).into_iter().enumerate() {
                if v != 0 {
                    m.set(k, y, f.from_i64(v));
                }
            }
        }
        m
    }

    /// `exp(t · ad e_α)`; needs `char ∉ {2, 3}` (nilpotency index ≤ 4).
    pub fn exp_ad(&self, f: &Field, a: usize, t: &Fe) -> Matrix {
        let ad = self.ad(f, a);
        let d = self.dim();
        let mut result = Matrix::identity(f, d);
        let mut term = Matrix::identity(f, d);
        for k in 1..=4i64 {
            term = term.mul(f, &ad);
            let scale = f.div(&f.pow_u(t, k as u64), &f.from_i64((1..=k).product())).unwrap();
            for (r, v) in result.data.iter_mut().zip(&term.data) {
                *r = f.add(r, &f.mul(&scale, v));
            }
        }
        // ad e_α is nilpotent of index at most 4
        assert!(term.mul(f, &ad).data.iter().all(|v| f.is_zero(v)));
        result
    }

    pub fn element_matrix(&self, g: &UnipotentGroup, x: &UnipotentElement) -> Matrix {
        let f = g.field();
        let mut m = Matrix::identity(f, self.dim());
        for (a, t) in x.coords.iter().enumerate() {
            if !f.is_zero(t) {
                m = m.mul(f, &self.exp_ad(f, a, t));
            }
        }
        m
    }
}
