//! Chevalley structure constants, the commutator formula, and the maximal
//! unipotent subgroup `U` in canonical coordinates.
//!
//! Commutator convention:
//! `x_α(t) x_β(u) = x_β(u) x_α(t) ∏ x_{iα+jβ}((−1)^{i+j} C_{ij,αβ} t^i u^j)`,
//! tail factors in the global root order, `C_{11,αβ} = N_{α,β}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::Matrix;
use crate::rootsystem::{Family, Root, RootSystem};

/// How the free signs on extraspecial pairs are fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SignConvention {
    /// Every extraspecial pair gets `N_{γ,δ} > 0`.
    #[default]
    ExtraspecialPositive,
    /// Every extraspecial pair gets `N_{γ,δ} < 0`.
    ExtraspecialNegative,
    /// Signs chosen in root order so that `N_{ρα,ρβ} = N_{α,β}` for every
    /// diagram symmetry `ρ` whenever that is possible (not in `A_{2n}`).
    DiagramInvariant,
}

impl SignConvention {
    /// Diagram-invariant for types D and E, extraspecial-positive otherwise.
    pub fn default_for(rs: &RootSystem) -> Self {
        match rs.root_type().family {
            Family::D | Family::E => SignConvention::DiagramInvariant,
            _ => SignConvention::ExtraspecialPositive,
        }
    }
}

impl std::str::FromStr for SignConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" | "extraspecial-positive" => Ok(SignConvention::ExtraspecialPositive),
            "negative" | "extraspecial-negative" => Ok(SignConvention::ExtraspecialNegative),
            "diagram" | "diagram-invariant" => Ok(SignConvention::DiagramInvariant),
            _ => Err(Error::Parse { what: "sign convention", input: s.into() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailTerm {
    pub i: u32,
    pub j: u32,
    pub target: usize,
    /// `(−1)^{i+j} C_{ij,αβ}`
    pub coeff: i64,
}

#[derive(Debug)]
pub struct StructureConstants {
    rs: RootSystem,
    convention: SignConvention,
    /// `N_{α,β}` on positions of positive roots; zero when `α+β ∉ Φ`.
    n_pos: Vec<Vec<i64>>,
    sum_pos: Vec<Vec<Option<usize>>>,
    c_table: HashMap<(u32, u32, usize, usize), i64>,
    tails: Vec<Vec<Vec<TailTerm>>>,
    extraspecial: Vec<(usize, usize, usize)>,
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

impl StructureConstants {
    pub fn new(rs: RootSystem) -> Self {
        let convention = SignConvention::default_for(&rs);
        StructureConstants::with_convention(rs, convention)
    }

    pub fn with_convention(rs: RootSystem, convention: SignConvention) -> Self {
        let n = rs.num_positive();
        let mut sum_pos = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                sum_pos[a][b] = rs.index_of(&rs.root(a).add(rs.root(b)));
            }
        }
        let mut sc = StructureConstants {
            rs,
            convention,
            n_pos: vec![vec![0; n]; n],
            sum_pos,
            c_table: HashMap::new(),
            tails: vec![],
            extraspecial: vec![],
        };
        sc.fill_n();
        sc.fill_c();
        sc
    }

    /// `|N_{α,β}| = p + 1`, `p` maximal with `β − pα ∈ Φ`.
    fn string_magnitude(&self, a: &Root, b: &Root) -> i64 {
        let mut p = 0;
        while self.rs.is_root(&b.comb(1, a, -(p + 1))) {
            p += 1;
        }
        p + 1
    }

    fn fill_n(&mut self) {
        let n = self.rs.num_positive();
        let symmetries = match self.convention {
            SignConvention::DiagramInvariant => self.rs.diagram_symmetries(),
            _ => vec![],
        };
        for xi in 0..n {
            // special pairs (α, β), α < β, α + β = ξ
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| self.sum_pos[a][b] == Some(xi))
                .collect();
            let Some(&(g, d)) = pairs.first() else { continue };
            self.extraspecial.push((xi, g, d));
            let sign = match self.convention {
                SignConvention::ExtraspecialNegative => -1,
                _ => 1,
            };
            let ng = sign * self.string_magnitude(self.rs.root(g), self.rs.root(d));
            self.n_pos[g][d] = ng;
            self.n_pos[d][g] = -ng;
            let xi_r = self.rs.root(xi).clone();
            let xi2 = self.rs.inner(&xi_r, &xi_r);
            let gam = self.rs.root(g).clone();
            let del = self.rs.root(d).clone();
            for &(a, b) in &pairs[1..] {
                let al = self.rs.root(a).clone();
                let be = self.rs.root(b).clone();
                // Jacobi-type identity for α + β − γ − δ = 0
                let mut num = 0i64;
                let mut den = 1i64;
                let add_term = |num: &mut i64, den: &mut i64, p: i64, q: i64| {
                    // num/den += p/q
                    *num = *num * q + p * *den;
                    *den *= q;
                };
                let bg = be.sub(&gam);
                if self.rs.is_root(&bg) {
                    let t = self.n(&be, &gam.neg()) * self.n(&al, &del.neg());
                    add_term(&mut num, &mut den, t, self.rs.inner(&bg, &bg));
                }
                let ag = al.sub(&gam);
                if self.rs.is_root(&ag) {
                    let t = self.n(&gam.neg(), &al) * self.n(&be, &del.neg());
                    add_term(&mut num, &mut den, t, self.rs.inner(&ag, &ag));
                }
                let value_num = xi2 * num;
                let value_den = ng * den;
                assert_eq!(value_num % value_den, 0, "non-integral structure constant");
                let v = value_num / value_den;
                assert_eq!(v.abs(), self.string_magnitude(&al, &be), "structure constant magnitude");
                self.n_pos[a][b] = v;
                self.n_pos[b][a] = -v;
            }
            if self.needs_flip(xi, &symmetries) {
                for &(a, b) in &pairs {
                    self.n_pos[a][b] = -self.n_pos[a][b];
                    self.n_pos[b][a] = -self.n_pos[b][a];
                }
            }
        }
    }

    /// Whether `ξ`'s constants disagree with an earlier image `ρξ`, compared on
    /// the decomposition `ξ = α_i + β` with the first simple `α_i`.
    fn needs_flip(&self, xi: usize, symmetries: &[crate::rootsystem::DiagramSymmetry]) -> bool {
        let rank = self.rs.rank();
        let Some((a, b)) = (0..rank).find_map(|a| (0..xi).find(|&b| self.sum_pos[a][b] == Some(xi)).map(|b| (a, b)))
        else {
            return false;
        };
        symmetries
            .iter()
            .find(|r| r.induced[xi] < xi)
            .is_some_and(|r| self.n_pos[r.induced[a]][r.induced[b]] != self.n_pos[a][b])
    }

    /// `N_{r,s}` for arbitrary roots (0 when `r + s ∉ Φ`).
    pub fn n(&self, r: &Root, s: &Root) -> i64 {
        let sum = r.add(s);
        if !self.rs.is_root(&sum) {
            return 0;
        }
        let rp = r.is_positive();
        let sp = s.is_positive();
        match (rp, sp) {
            (true, true) => {
                let a = self.rs.index_of(r).unwrap();
                let b = self.rs.index_of(s).unwrap();
                self.n_pos[a][b]
            }
            (false, false) => -self.n(&r.neg(), &s.neg()),
            _ => {
                // r + s + t = 0: N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s)
                let t = sum.neg();
                let tt = self.rs.inner(&t, &t);
                if t.is_positive() == rp {
                    let v = tt * self.n(&t, r);
                    let ss = self.rs.inner(s, s);
                    debug_assert_eq!(v % ss, 0);
                    v / ss
                } else {
                    let v = tt * self.n(s, &t);
                    let rr = self.rs.inner(r, r);
                    debug_assert_eq!(v % rr, 0);
                    v / rr
                }
            }
        }
    }

    /// `M_{r,s,i} = (1/i!) ∏_{k<i} N_{r, kr+s}`.
    fn m(&self, r: &Root, s: &Root, i: u32) -> i64 {
        let mut prod = 1i64;
        for k in 0..i as i64 {
            prod *= self.n(r, &s.comb(1, r, k));
        }
        let f = factorial(i);
        assert_eq!(prod % f, 0);
        prod / f
    }

    /// Constant in Carter's form `[x_s(u), x_r(t)] = ∏ x_{ir+js}(C_{ij,rs}(−t)^i u^j)`.
    fn carter_c(&self, i: u32, j: u32, r: &Root, s: &Root) -> i64 {
        match (i, j) {
            (i, 1) => self.m(r, s, i),
            (1, j) => {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * self.m(s, r, j)
            }
            (3, 2) => {
                let v = self.m(&r.add(s), r, 2);
                assert_eq!(v % 3, 0);
                v / 3
            }
            (2, 3) => {
                let v = -2 * self.m(&s.add(r), s, 2);
                assert_eq!(v % 3, 0);
                v / 3
            }
            _ => panic!("no commutator constant C_{i}{j}"),
        }
    }

    fn fill_c(&mut self) {
        let n = self.rs.num_positive();
        let mut tails = vec![vec![vec![]; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let al = self.rs.root(a).clone();
                let be = self.rs.root(b).clone();
                let mut terms = vec![];
                for i in 1..=3u32 {
                    for j in 1..=3u32 {
                        let r = al.comb(i as i64, &be, j as i64);
                        let Some(target) = self.rs.index_of(&r) else { continue };
                        let sign_i = if i % 2 == 0 { 1 } else { -1 };
                        let c = sign_i * self.carter_c(j, i, &be, &al);
                        assert!(c != 0 && c.abs() <= 3);
                        self.c_table.insert((i, j, a, b), c);
                        let sign_ij = if (i + j) % 2 == 0 { 1 } else { -1 };
                        terms.push(TailTerm { i, j, target, coeff: sign_ij * c });
                    }
                }
                terms.sort_by_key(|t| t.target);
                tails[a][b] = terms;
            }
        }
        self.tails = tails;
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    /// `N_{α,β}` for positive positions.
    pub fn n_pos(&self, a: usize, b: usize) -> i64 {
        self.n_pos[a][b]
    }

    pub fn sum_pos(&self, a: usize, b: usize) -> Option<usize> {
        self.sum_pos[a][b]
    }

    /// `C_{ij,αβ}` for positive positions, when `iα + jβ ∈ Φ`.
    pub fn c(&self, i: u32, j: u32, a: usize, b: usize) -> Option<i64> {
        self.c_table.get(&(i, j, a, b)).copied()
    }

    pub fn c_entries(&self) -> impl Iterator<Item = ((u32, u32, usize, usize), i64)> + '_ {
        self.c_table.iter().map(|(k, v)| (*k, *v))
    }

    pub fn tail_terms(&self, a: usize, b: usize) -> &[TailTerm] {
        &self.tails[a][b]
    }

    /// `(ξ, γ, δ)` for every non-simple positive `ξ`.
    pub fn extraspecial_pairs(&self) -> &[(usize, usize, usize)] {
        &self.extraspecial
    }
}

/// A factor `x_α(s)` with `α` given by its position among the positive roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFactor {
    pub root: usize,
    pub scalar: Fe,
}

impl RootFactor {
    pub fn new(root: usize, scalar: Fe) -> Self {
        RootFactor { root, scalar }
    }
}

/// `∏_{i=1}^N x_{α_i}(t_i)` in the fixed root order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnipotentElement {
    pub coords: Vec<Fe>,
}

/// `∏ h_{α_i}(t_i)` over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement {
    pub coords: Vec<Fe>,
}

/// `h · u` with `h` in the torus and `u` in `U`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BorelElement {
    pub torus: TorusElement,
    pub unipotent: UnipotentElement,
}

/// `U` over a given field; cheap to clone.
#[derive(Clone, Debug)]
pub struct UnipotentGroup {
    sc: Arc<StructureConstants>,
    field: Field,
    pairings: Arc<Vec<Vec<i64>>>,
}

impl UnipotentGroup {
    pub fn new(sc: Arc<StructureConstants>, field: Field) -> Self {
        let rs = sc.root_system();
        let pairings = (0..rs.num_positive())
            .map(|k| (0..rs.rank()).map(|i| rs.pairing(rs.root(k), &Root::simple(rs.rank(), i)).unwrap()).collect())
            .collect();
        UnipotentGroup { sc, field, pairings: Arc::new(pairings) }
    }

    /// Shorthand: type string and field, default sign convention.
    pub fn build(ty: &str, field: Field) -> Result<Self> {
        let rs = RootSystem::parse(ty)?;
        Ok(UnipotentGroup::new(Arc::new(StructureConstants::new(rs)), field))
    }

    pub fn structure_constants(&self) -> &Arc<StructureConstants> {
        &self.sc
    }

    pub fn root_system(&self) -> &RootSystem {
        self.sc.root_system()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `N = |Φ⁺|`.
    pub fn dim(&self) -> usize {
        self.root_system().num_positive()
    }

    pub fn identity(&self) -> UnipotentElement {
        UnipotentElement { coords: vec![self.field.zero(); self.dim()] }
    }

    pub fn element(&self, coords: Vec<Fe>) -> Result<UnipotentElement> {
        if coords.len() != self.dim() {
            return Err(Error::WrongDimension { expected: self.dim(), found: coords.len() });
        }
        for c in &coords {
            self.field.check(c)?;
        }
        Ok(UnipotentElement { coords })
    }

    pub fn from_i64(&self, coords: &[i64]) -> Result<UnipotentElement> {
        self.element(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    /// `x_α(s)` for the positive root at position `root`.
    pub fn single(&self, root: usize, s: Fe) -> UnipotentElement {
        let mut x = self.identity();
        x.coords[root] = s;
        x
    }

    pub fn check(&self, x: &UnipotentElement) -> Result<()> {
        if x.coords.len() != self.dim() {
            return Err(Error::WrongDimension { expected: self.dim(), found: x.coords.len() });
        }
        x.coords.iter().try_for_each(|c| self.field.check(c))
    }

    /// Tail of `x_α(t) x_β(u) = x_β(u) x_α(t) · tail`.
    pub fn commutator_tail(&self, a: usize, b: usize, t: &Fe, u: &Fe) -> Result<Vec<RootFactor>> {
        if a == b {
            return Err(Error::EqualOrOppositeRoots);
        }
        Ok(self.tail(a, b, t, u))
    }

    fn tail(&self, a: usize, b: usize, t: &Fe, u: &Fe) -> Vec<RootFactor> {
        let f = &self.field;
        self.sc
            .tail_terms(a, b)
            .iter()
            .map(|term| {
                let s = f.mul(
                    &f.from_i64(term.coeff),
                    &f.mul(&f.pow_u(t, term.i as u64), &f.pow_u(u, term.j as u64)),
                );
                RootFactor { root: term.target, scalar: s }
            })
            .filter(|rf| !f.is_zero(&rf.scalar))
            .collect()
    }

    /// Right-multiplies the canonical element in `c` by `x_{α_n}(s)`.
    fn right_mul(&self, c: &mut [Fe], n: usize, s: &Fe) {
        let f = &self.field;
        if f.is_zero(s) {
            return;
        }
        let mut word = vec![];
        for i in n + 1..c.len() {
            if f.is_zero(&c[i]) {
                continue;
            }
            let ci = std::mem::replace(&mut c[i], f.zero());
            let tail = self.tail(i, n, &ci, s);
            word.push(RootFactor { root: i, scalar: ci });
            word.extend(tail);
        }
        c[n] = f.add(&c[n], s);
        for rf in word {
            self.right_mul(c, rf.root, &rf.scalar);
        }
    }

    /// Canonical form of a product of positive-root factors.
    pub fn collect(&self, factors: &[RootFactor]) -> Result<UnipotentElement> {
        let mut c = self.identity().coords;
        for rf in factors {
            if rf.root >= self.dim() {
                return Err(Error::NonPositiveRoot(format!("position {}", rf.root + 1)));
            }
            self.field.check(&rf.scalar)?;
            self.right_mul(&mut c, rf.root, &rf.scalar);
        }
        Ok(UnipotentElement { coords: c })
    }

    /// Collects factors given as root vectors.
    pub fn collect_roots(&self, factors: &[(Root, Fe)]) -> Result<UnipotentElement> {
        let rs = self.root_system();
        let rf = factors
            .iter()
            .map(|(r, s)| {
                rs.index_of(r)
                    .map(|i| RootFactor::new(i, s.clone()))
                    .ok_or_else(|| Error::NonPositiveRoot(r.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.collect(&rf)
    }

    pub fn factors(&self, x: &UnipotentElement) -> Vec<RootFactor> {
        x.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| RootFactor::new(i, c.clone()))
            .collect()
    }

    pub fn multiply(&self, x: &UnipotentElement, y: &UnipotentElement) -> UnipotentElement {
        let mut c = x.coords.clone();
        for (i, s) in y.coords.iter().enumerate() {
            self.right_mul(&mut c, i, s);
        }
        UnipotentElement { coords: c }
    }

    pub fn multiply_checked(&self, x: &UnipotentElement, y: &UnipotentElement) -> Result<UnipotentElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.multiply(x, y))
    }

    pub fn invert(&self, x: &UnipotentElement) -> UnipotentElement {
        let mut c = self.identity().coords;
        for (i, s) in x.coords.iter().enumerate().rev() {
            self.right_mul(&mut c, i, &self.field.neg(s));
        }
        UnipotentElement { coords: c }
    }

    /// `g x g⁻¹`
    pub fn conjugate(&self, g: &UnipotentElement, x: &UnipotentElement) -> UnipotentElement {
        self.multiply(&self.multiply(g, x), &self.invert(g))
    }

    pub fn is_identity(&self, x: &UnipotentElement) -> bool {
        x.coords.iter().all(|c| self.field.is_zero(c))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> UnipotentElement {
        UnipotentElement { coords: (0..self.dim()).map(|_| self.field.random(rng)).collect() }
    }

    /// `|U| = q^N` for finite fields.
    pub fn order(&self) -> Option<u128> {
        let q = self.field.order()? as u128;
        q.checked_pow(self.dim() as u32)
    }

    /// Mixed-radix index (coordinate 1 least significant).
    pub fn index_of(&self, x: &UnipotentElement) -> usize {
        let q = self.field.order().unwrap() as usize;
        x.coords.iter().rev().fold(0, |acc, c| acc * q + self.field.index_of(c))
    }

    pub fn element_at(&self, mut idx: usize) -> UnipotentElement {
        let q = self.field.order().unwrap() as usize;
        let coords = (0..self.dim())
            .map(|_| {
                let c = self.field.element_at(idx % q);
                idx /= q;
                c
            })
            .collect();
        UnipotentElement { coords }
    }

    // ---- torus ----

    pub fn torus_element(&self, coords: Vec<Fe>) -> Result<TorusElement> {
        let l = self.root_system().rank();
        if coords.len() != l {
            return Err(Error::WrongDimension { expected: l, found: coords.len() });
        }
        for (i, c) in coords.iter().enumerate() {
            self.field.check(c)?;
            if self.field.is_zero(c) {
                return Err(Error::ZeroTorusCoordinate(i + 1));
            }
        }
        Ok(TorusElement { coords })
    }

    pub fn torus_identity(&self) -> TorusElement {
        TorusElement { coords: vec![self.field.one(); self.root_system().rank()] }
    }

    /// Scalar by which `h` acts on the root subgroup at position `k`.
    pub fn torus_character(&self, h: &TorusElement, k: usize) -> Fe {
        let f = &self.field;
        h.coords
            .iter()
            .zip(&self.pairings[k])
            .fold(f.one(), |acc, (t, &e)| f.mul(&acc, &f.pow(t, e).expect("nonzero torus coordinate")))
    }

    /// `h x h⁻¹`: the coordinate at `β` is scaled by `∏ t_i^{⟨β,α_i⟩}`.
    pub fn torus_conjugate(&self, h: &TorusElement, x: &UnipotentElement) -> UnipotentElement {
        let f = &self.field;
        UnipotentElement {
            coords: x.coords.iter().enumerate().map(|(k, c)| f.mul(c, &self.torus_character(h, k))).collect(),
        }
    }

    pub fn torus_multiply(&self, a: &TorusElement, b: &TorusElement) -> TorusElement {
        TorusElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| self.field.mul(x, y)).collect() }
    }

    pub fn torus_invert(&self, a: &TorusElement) -> TorusElement {
        TorusElement { coords: a.coords.iter().map(|x| self.field.inv(x).unwrap()).collect() }
    }

    // ---- Borel ----

    /// `(h₁,u₁)(h₂,u₂) = (h₁h₂, (h₂⁻¹ u₁ h₂) u₂)`
    pub fn borel_multiply(&self, a: &BorelElement, b: &BorelElement) -> BorelElement {
        let h2inv = self.torus_invert(&b.torus);
        BorelElement {
            torus: self.torus_multiply(&a.torus, &b.torus),
            unipotent: self.multiply(&self.torus_conjugate(&h2inv, &a.unipotent), &b.unipotent),
        }
    }

    pub fn borel_invert(&self, a: &BorelElement) -> BorelElement {
        BorelElement {
            torus: self.torus_invert(&a.torus),
            unipotent: self.torus_conjugate(&a.torus, &self.invert(&a.unipotent)),
        }
    }

    // ---- type A matrices ----

    /// `x_{α_{ij}}(t) ↦ I + σ t E_{ij}` with signs `σ` making this a
    /// homomorphism for the current structure constants.
    pub fn matrix_representation_a(&self, x: &UnipotentElement) -> Result<Matrix> {
        let rs = self.root_system();
        if rs.root_type().family != Family::A {
            return Err(Error::WrongType { expected: "type A".into(), found: rs.root_type().to_string() });
        }
        let f = &self.field;
        let l = rs.rank();
        let signs = self.type_a_signs();
        let mut m = Matrix::identity(f, l + 1);
        for (k, c) in x.coords.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let (i, j) = type_a_span(rs.root(k));
            let mut e = Matrix::identity(f, l + 1);
            e.set(i, j, f.mul(&f.from_i64(signs[k]), c));
            m = m.mul(f, &e);
        }
        Ok(m)
    }

    fn type_a_signs(&self) -> Vec<i64> {
        let rs = self.root_system();
        let n = rs.num_positive();
        let mut sigma = vec![0i64; n];
        for k in 0..n {
            let r = rs.root(k);
            if r.height() == 1 {
                sigma[k] = 1;
                continue;
            }
            let (i, j) = type_a_span(r);
            // r = E_{i,i+1} + E_{i+1,j}
            let a = rs.index_of(&Root::simple(rs.rank(), i)).unwrap();
            let b = (0..k).find(|&b| type_a_span(rs.root(b)) == (i + 1, j)).unwrap();
            sigma[k] = sigma[a] * sigma[b] * self.sc.n_pos(a, b);
        }
        sigma
    }

    // ---- text / JSON ----

    /// `x[3](2)*x[1](4)` with 1-based root positions.
    pub fn format_factors(&self, factors: &[RootFactor]) -> String {
        if factors.is_empty() {
            return "1".into();
        }
        factors
            .iter()
            .map(|rf| format!("x[{}]({})", rf.root + 1, self.field.format(&rf.scalar)))
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn format(&self, x: &UnipotentElement) -> String {
        self.format_factors(&self.factors(x))
    }

    pub fn parse_factors(&self, s: &str) -> Result<Vec<RootFactor>> {
        let bad = || Error::Parse { what: "unipotent word", input: s.to_string() };
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(vec![]);
        }
        s.split('*')
            .map(|tok| {
                let tok = tok.trim();
                let body = tok.strip_prefix("x[").ok_or_else(bad)?;
                let (idx, rest) = body.split_once(']').ok_or_else(bad)?;
                let idx: usize = idx.trim().parse().map_err(|_| bad())?;
                let scalar = rest.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                if idx == 0 || idx > self.dim() {
                    return Err(Error::NonPositiveRoot(format!("position {idx}")));
                }
                Ok(RootFactor::new(idx - 1, self.field.parse(scalar)?))
            })
            .collect()
    }

    pub fn parse(&self, s: &str) -> Result<UnipotentElement> {
        self.collect(&self.parse_factors(s)?)
    }

    pub fn to_json(&self, x: &UnipotentElement) -> Value {
        json!({
            "type": self.root_system().root_type().to_string(),
            "field": self.field.spec().to_string(),
            "coords": x.coords.iter().map(|c| fe_json(&self.field, c)).collect::<Vec<_>>(),
        })
    }
}

/// Numbers for prime fields, strings otherwise.
pub fn fe_json(f: &Field, x: &Fe) -> Value {
    match x {
        Fe::Int(v) => json!(v),
        _ => json!(f.format(x)),
    }
}

/// `(i, j)` with the type-A root equal to `E_{ij}` (0-based, `i < j`).
fn type_a_span(r: &Root) -> (usize, usize) {
    let i = r.0.iter().position(|&c| c != 0).unwrap();
    let j = r.0.iter().rposition(|&c| c != 0).unwrap() + 1;
    (i, j)
}

impl fmt::Display for RootFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{}]({:?})", self.root + 1, self.scalar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(t: &str, p: u64) -> UnipotentGroup {
        UnipotentGroup::build(t, Field::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn n_antisymmetric_with_string_magnitudes() {
        for t in ["A2", "A4", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let sc = StructureConstants::new(RootSystem::parse(t).unwrap());
            let rs = sc.root_system();
            let n = rs.num_positive();
            for a in 0..n {
                for b in 0..n {
                    let v = sc.n_pos(a, b);
                    assert_eq!(v, -sc.n_pos(b, a));
                    if sc.sum_pos(a, b).is_some() {
                        assert_eq!(v.abs(), sc.string_magnitude(rs.root(a), rs.root(b)), "{t}");
                    } else {
                        assert_eq!(v, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn c_table_spec_examples() {
        let sc = StructureConstants::new(RootSystem::parse("A2").unwrap());
        assert_eq!(sc.c(1, 1, 0, 1).map(i64::abs), Some(1));
        for t in ["A3", "D4", "E6"] {
            let sc = StructureConstants::new(RootSystem::parse(t).unwrap());
            assert!(sc.c_entries().all(|((i, j, ..), v)| i == 1 && j == 1 && v.abs() == 1));
        }
        let g2 = StructureConstants::new(RootSystem::parse("G2").unwrap());
        assert!(g2.c_entries().any(|(_, v)| v.abs() == 3));
        for ((i, j, a, b), v) in g2.c_entries() {
            if i == 1 && j == 1 {
                assert_eq!(v, g2.n_pos(a, b));
            }
        }
    }

    #[test]
    fn spec_examples_collect_and_torus() {
        let q = UnipotentGroup::build("A2", Field::rational()).unwrap();
        let f = q.field().clone();
        let (t, u) = (f.from_i64(3), f.from_i64(5));
        let x = q.collect(&[RootFactor::new(1, u.clone()), RootFactor::new(0, t.clone())]).unwrap();
        assert_eq!(x.coords, vec![t.clone(), u.clone(), f.neg(&f.mul(&t, &u))]);
        assert_eq!(q.collect(&q.factors(&x)).unwrap(), x);

        let half = f.from_ratio(1, 2).unwrap();
        let third = f.from_ratio(1, 3).unwrap();
        let y = q.collect(&[RootFactor::new(0, half), RootFactor::new(0, third)]).unwrap();
        assert_eq!(y.coords[0], f.from_ratio(5, 6).unwrap());

        let g = group("A2", 7);
        let f7 = g.field().clone();
        let h = g.torus_element(vec![f7.from_i64(2), f7.one()]).unwrap();
        let x2 = g.single(1, f7.one());
        assert_eq!(g.torus_conjugate(&h, &x2).coords[1], f7.from_i64(4));
        let x1 = g.single(0, f7.from_i64(3));
        assert_eq!(g.torus_conjugate(&h, &x1).coords[0], f7.from_i64(12));
        assert!(matches!(
            g.torus_element(vec![f7.zero(), f7.one()]),
            Err(Error::ZeroTorusCoordinate(1))
        ));
    }

    #[test]
    fn c2_tail_has_two_factors() {
        let g = group("C2", 5);
        let f = g.field();
        // α1 short, α2 long: α2 + α1 and α2 + 2α1
        let tail = g.commutator_tail(0, 1, &f.one(), &f.one()).unwrap();
        assert_eq!(tail.len(), 2);
        assert_eq!(tail.iter().map(|r| g.root_system().root(r.root).height()).collect::<Vec<_>>(), vec![2, 3]);
        assert!(g.commutator_tail(0, 0, &f.one(), &f.one()).is_err());
        let d4 = group("D4", 5);
        assert!(d4.commutator_tail(0, 2, &f.one(), &f.one()).unwrap().is_empty());
    }

    #[test]
    fn inverse_and_identity() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for t in ["A2", "C2", "G2", "B3"] {
            let g = group(t, 7);
            for _ in 0..50 {
                let x = g.random(&mut rng);
                assert!(g.is_identity(&g.multiply(&x, &g.invert(&x))));
                assert_eq!(g.multiply(&x, &g.identity()), x);
                assert_eq!(g.parse(&g.format(&x)).unwrap(), x);
            }
        }
    }

    #[test]
    fn matrix_rep_wrong_type() {
        let g = group("C2", 5);
        assert!(matches!(g.matrix_representation_a(&g.identity()), Err(Error::WrongType { .. })));
    }
}
