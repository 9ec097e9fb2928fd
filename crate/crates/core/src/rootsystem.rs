//! Irreducible reduced root systems, stored in simple-root coordinates.
//!
//! Positive roots are ordered by height; inside one height by descending
//! lexicographic order of the coefficient vector, so `a1+a2` comes before
//! `a2+a3`. For the C family (and B2) the root `α_N − 2α_i` is moved to the
//! end of its height, which makes the last three roots
//! `α_N − 2α_i, α_N − α_i, α_N`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(RootSystemType { family, rank })
        } else {
            Err(Error::InadmissibleRank { family: family_char(family), rank })
        }
    }
}

fn family_char(f: Family) -> char {
    match f {
        Family::A => 'A',
        Family::B => 'B',
        Family::C => 'C',
        Family::D => 'D',
        Family::E => 'E',
        Family::F => 'F',
        Family::G => 'G',
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", family_char(self.family), self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "root system type", input: s.to_string() };
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        RootSystemType::new(family, rank)
    }
}

/// A root as its coefficient vector over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| k * c).collect())
    }

    /// `i·self + j·other`
    pub fn comb(&self, i: i64, other: &Root, j: i64) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| i * a + j * b).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses `a1+2a2-a3` style text for a given rank.
pub fn parse_root(s: &str, rank: usize) -> Result<Root> {
    let bad = || Error::Parse { what: "root", input: s.to_string() };
    let mut v = vec![0i64; rank];
    let t = s.replace(' ', "").replace('-', "+-");
    for term in t.split('+').filter(|x| !x.is_empty()) {
        let (sign, term) = match term.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, term),
        };
        let k = term.find('a').ok_or_else(bad)?;
        let c: i64 = if k == 0 { 1 } else { term[..k].parse().map_err(|_| bad())? };
        let idx: usize = term[k + 1..].parse().map_err(|_| bad())?;
        if idx == 0 || idx > rank {
            return Err(bad());
        }
        v[idx - 1] += sign * c;
    }
    Ok(Root(v))
}

/// A Dynkin diagram automorphism with its action on positive-root positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSymmetry {
    /// `perm[i] = j` means `ρ(α_i) = α_j` (0-based).
    pub perm: Vec<usize>,
    /// Same, on positions of positive roots.
    pub induced: Vec<usize>,
}

impl DiagramSymmetry {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse_induced(&self) -> Vec<usize> {
        let mut inv = vec![0; self.induced.len()];
        for (i, &j) in self.induced.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }

    /// 1-based image list, e.g. `[3,2,4,1]`.
    pub fn describe(&self) -> String {
        if self.is_identity() {
            return "id".into();
        }
        format!("[{}]", self.perm.iter().map(|j| (j + 1).to_string()).join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: RootSystemType,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
    c_branch: bool,
}

fn gram_matrix(ty: RootSystemType) -> Vec<Vec<i64>> {
    let l = ty.rank;
    let mut g = vec![vec![0i64; l]; l];
    let edge = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match ty.family {
        Family::A => {
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 1..l {
                edge(&mut g, i - 1, i, -1);
            }
        }
        Family::B => {
            for i in 0..l {
                g[i][i] = if i + 1 == l { 2 } else { 4 };
            }
            for i in 1..l {
                edge(&mut g, i - 1, i, -2);
            }
        }
        Family::C => {
            for i in 0..l {
                g[i][i] = if i + 1 == l { 4 } else { 2 };
            }
            for i in 1..l {
                edge(&mut g, i - 1, i, if i + 1 == l { -2 } else { -1 });
            }
        }
        Family::D => {
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 1..l - 1 {
                edge(&mut g, i - 1, i, -1);
            }
            edge(&mut g, l - 3, l - 1, -1);
        }
        Family::E => {
            for i in 0..l {
                g[i][i] = 2;
            }
            edge(&mut g, 0, 2, -1);
            edge(&mut g, 1, 3, -1);
            for i in 3..l {
                edge(&mut g, i - 1, i, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            edge(&mut g, 0, 1, -2);
            edge(&mut g, 1, 2, -2);
            edge(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            edge(&mut g, 0, 1, -3);
        }
    }
    g
}

impl RootSystem {
    pub fn new(ty: RootSystemType) -> RootSystem {
        RootSystem::with_rank_two_c_branch(ty, true)
    }

    pub fn parse(s: &str) -> Result<RootSystem> {
        Ok(RootSystem::new(s.parse()?))
    }

    /// `c_branch_rank_two` decides whether C2 (= B2) uses the C-family
    /// extremal branch (with the extra `α_N − 2α_i` family).
    pub fn with_rank_two_c_branch(ty: RootSystemType, c_branch_rank_two: bool) -> RootSystem {
        let gram = gram_matrix(ty);
        let l = ty.rank;
        let cartan: Vec<Vec<i64>> =
            (0..l).map(|i| (0..l).map(|j| 2 * gram[i][j] / gram[j][j]).collect()).collect();

        let mut seen: HashSet<Root> = HashSet::new();
        let mut queue: VecDeque<Root> = (0..l).map(|i| Root::simple(l, i)).collect();
        while let Some(r) = queue.pop_front() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for i in 0..l {
                let ip: i64 = (0..l).map(|j| r.0[j] * gram[j][i]).sum();
                let k = 2 * ip / gram[i][i];
                let mut s = r.clone();
                s.0[i] -= k;
                if !seen.contains(&s) {
                    queue.push_back(s);
                }
            }
        }
        let mut positive: Vec<Root> = seen.into_iter().filter(|r| r.is_positive()).collect();
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));

        let mut rs = RootSystem { ty, gram, cartan, positive, index: HashMap::new(), c_branch: false };
        rs.reindex();

        let top = rs.highest_root().clone();
        let ext = rs.extremal_simple_roots();
        if ty.family != Family::A {
            let twice = top.sub(&Root::simple(l, ext[0]).scale(2));
            let is_rank_two = ty.rank == 2;
            if rs.index.contains_key(&twice) && (!is_rank_two || c_branch_rank_two) {
                rs.c_branch = true;
                let pos = rs.index[&twice];
                let h = twice.height();
                let end = rs.positive.iter().rposition(|r| r.height() == h).unwrap();
                let r = rs.positive.remove(pos);
                rs.positive.insert(end, r);
                rs.reindex();
            }
        }
        rs
    }

    fn reindex(&mut self) {
        self.index = self.positive.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    }

    pub fn root_type(&self) -> RootSystemType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// `N = |Φ⁺|`.
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.positive[i]
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn highest_root(&self) -> &Root {
        self.positive.last().unwrap()
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn positive_index(&self, r: &Root) -> Result<usize> {
        self.index_of(r).ok_or_else(|| Error::NotAPositiveRoot(r.to_string()))
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r) || self.index.contains_key(&r.neg())
    }

    pub fn check_root(&self, r: &Root) -> Result<()> {
        if r.0.len() == self.rank() && self.is_root(r) {
            Ok(())
        } else {
            Err(Error::NotARoot(r.to_string()))
        }
    }

    pub fn height(&self, r: &Root) -> Result<i64> {
        self.positive_index(r)?;
        Ok(r.height())
    }

    /// Symmetric bilinear form; short roots have squared length 2.
    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        let l = self.rank();
        let mut s = 0;
        for i in 0..l {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..l {
                s += a.0[i] * self.gram[i][j] * b.0[j];
            }
        }
        s
    }

    /// `⟨β, α⟩ = 2(β, α)/(α, α)`.
    pub fn pairing(&self, beta: &Root, alpha: &Root) -> Result<i64> {
        self.check_root(beta)?;
        self.check_root(alpha)?;
        Ok(2 * self.inner(beta, alpha) / self.inner(alpha, alpha))
    }

    pub fn root_sum(&self, a: &Root, b: &Root) -> Option<Root> {
        let s = a.add(b);
        self.is_root(&s).then_some(s)
    }

    /// Ranges of positions sharing one height, in increasing height.
    pub fn height_blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = vec![];
        let mut start = 0;
        for i in 1..=self.positive.len() {
            if i == self.positive.len() || self.positive[i].height() != self.positive[start].height() {
                out.push(start..i);
                start = i;
            }
        }
        out
    }

    /// Simple roots `α_i` with `α_N − α_i ∈ Φ⁺` (two in type `A_l`, `l ≥ 2`).
    pub fn extremal_simple_roots(&self) -> Vec<usize> {
        let top = self.highest_root();
        (0..self.rank())
            .filter(|&i| self.index.contains_key(&top.sub(&Root::simple(self.rank(), i))))
            .collect()
    }

    /// Whether the extra `α_N − 2α_i` extremal family is present (C_l, and C2/B2
    /// unless disabled).
    pub fn has_c_branch(&self) -> bool {
        self.c_branch
    }

    pub fn diagram_symmetries(&self) -> Vec<DiagramSymmetry> {
        let l = self.rank();
        (0..l)
            .permutations(l)
            .filter(|p| (0..l).all(|i| (0..l).all(|j| self.cartan[p[i]][p[j]] == self.cartan[i][j])))
            .map(|perm| self.symmetry_from_perm(perm).unwrap())
            .collect()
    }

    /// Builds a symmetry from simple-root images; fails when the Cartan
    /// matrix is not preserved.
    pub fn symmetry_from_perm(&self, perm: Vec<usize>) -> Result<DiagramSymmetry> {
        let l = self.rank();
        let mut sorted = perm.clone();
        sorted.sort();
        if perm.len() != l || sorted != (0..l).collect::<Vec<_>>() {
            return Err(Error::Parse { what: "diagram symmetry", input: format!("{perm:?}") });
        }
        if !(0..l).all(|i| (0..l).all(|j| self.cartan[perm[i]][perm[j]] == self.cartan[i][j])) {
            return Err(Error::Unsupported(format!("{perm:?} does not preserve the Cartan matrix")));
        }
        let induced = self
            .positive
            .iter()
            .map(|r| {
                let mut v = vec![0; l];
                for i in 0..l {
                    v[perm[i]] = r.0[i];
                }
                self.index[&Root(v)]
            })
            .collect();
        Ok(DiagramSymmetry { perm, induced })
    }

    pub fn identity_symmetry(&self) -> DiagramSymmetry {
        self.symmetry_from_perm((0..self.rank()).collect()).unwrap()
    }

    /// Parses `id`, a 1-based image list `[3,2,4,1]`, or cycle notation
    /// such as `cycle134` / `(1 3 4)`.
    pub fn parse_symmetry(&self, s: &str) -> Result<DiagramSymmetry> {
        let bad = || Error::Parse { what: "diagram symmetry", input: s.to_string() };
        let l = self.rank();
        let t = s.trim();
        if t == "id" || t.is_empty() {
            return Ok(self.identity_symmetry());
        }
        let mut perm: Vec<usize> = (0..l).collect();
        if t == "swap" || t == "flip" {
            let others: Vec<_> = self.diagram_symmetries().into_iter().filter(|d| !d.is_identity()).collect();
            if others.len() != 1 {
                return Err(bad());
            }
            return Ok(others[0].clone());
        } else if let Some(list) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            perm = list
                .split(',')
                .map(|x| x.trim().parse::<usize>().ok().filter(|&v| v >= 1 && v <= l).map(|v| v - 1))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
        } else {
            let body = t
                .strip_prefix("cycle")
                .or_else(|| t.strip_prefix('(').and_then(|x| x.strip_suffix(')')))
                .ok_or_else(bad)?;
            let cyc: Vec<usize> = if body.contains(' ') || body.contains(',') {
                body.split(|c| c == ' ' || c == ',')
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<_>>()?
            } else {
                body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
            };
            if cyc.iter().any(|&c| c == 0 || c > l) {
                return Err(bad());
            }
            for k in 0..cyc.len() {
                perm[cyc[k] - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        self.symmetry_from_perm(perm)
    }
}
