//! Exact coefficient fields: `F_p`, small extensions `F_p[y]/(f)`, and `Q`.
//!
//! A [`Field`] is a cheap-to-clone context; elements ([`Fe`]) are plain values
//! and every operation goes through the context that owns them.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    /// `modulus` is monic, listed low to high, of length `degree + 1`.
    Extension { p: u64, modulus: Vec<u64> },
    Rational,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Self {
        FieldSpec::Prime(p)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) | FieldSpec::Extension { p, .. } => *p,
            FieldSpec::Rational => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "Fq:p={p}"),
            FieldSpec::Extension { p, modulus } => {
                let m: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                write!(f, "Fq:p={p},deg={},mod=[{}]", modulus.len() - 1, m.join(","))
            }
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `Fq:p=5` and `Fq:p=5,deg=2,mod=[2,0,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "field", input: s.to_string() };
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rational);
        }
        let rest = s.strip_prefix("Fq:").ok_or_else(bad)?;
        let (head, modpart) = match rest.find(",mod=") {
            Some(k) => (&rest[..k], Some(&rest[k + 5..])),
            None => (rest, None),
        };
        let mut p = None;
        let mut deg = None;
        for kv in head.split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            let v: u64 = v.trim().parse().map_err(|_| bad())?;
            match k.trim() {
                "p" => p = Some(v),
                "deg" => deg = Some(v as usize),
                _ => return Err(bad()),
            }
        }
        let p = p.ok_or_else(bad)?;
        match (deg, modpart) {
            (None, None) | (Some(1), None) => Ok(FieldSpec::Prime(p)),
            (Some(d), Some(m)) => {
                let inner = m.trim().strip_prefix('[').and_then(|m| m.strip_suffix(']')).ok_or_else(bad)?;
                let modulus: Vec<u64> = inner
                    .split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<_>>()?;
                if modulus.len() != d + 1 {
                    return Err(bad());
                }
                Ok(FieldSpec::Extension { p, modulus })
            }
            _ => Err(bad()),
        }
    }
}

/// A field element. Residues for `F_p`, coefficient vectors (low to high,
/// length = degree) for extensions, reduced fractions for `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fe {
    Int(u64),
    Poly(Vec<u64>),
    Rat(BigRational),
}

#[derive(Debug)]
struct Inner {
    spec: FieldSpec,
    p: u64,
    degree: usize,
    modulus: Vec<u64>,
}

/// Field context. Clones share one immutable description.
#[derive(Clone, Debug)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

// ---- dense polynomials over F_p, low to high, no trailing zeros ----

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = invmod(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            r[k + i] = (r[k + i] + p - mulmod(c, mi, p)) % p;
        }
        r = trim(r);
    }
    r
}

/// Irreducibility of a monic polynomial by trial division with every monic
/// polynomial of degree at most half its degree.
pub fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let n = modulus.len() - 1;
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut cand = vec![0u64; d + 1];
            let mut k = idx;
            for c in cand.iter_mut().take(d) {
                *c = k % p;
                k /= p;
            }
            cand[d] = 1;
            if poly_rem(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of `degree` over `F_p` in
/// lexicographic order of the lower coefficients.
pub fn find_irreducible(p: u64, degree: usize) -> Vec<u64> {
    if degree == 1 {
        return vec![0, 1];
    }
    let count = p.pow(degree as u32);
    for idx in 0..count {
        let mut cand = vec![0u64; degree + 1];
        let mut k = idx;
        for c in cand.iter_mut().take(degree) {
            *c = k % p;
            k /= p;
        }
        cand[degree] = 1;
        if cand[0] != 0 && is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let (p, degree, modulus) = match &spec {
            FieldSpec::Prime(p) => {
                if !is_prime(*p) {
                    return Err(Error::NonPrimeModulus(*p));
                }
                (*p, 1, vec![0, 1])
            }
            FieldSpec::Extension { p, modulus } => {
                if !is_prime(*p) {
                    return Err(Error::NonPrimeModulus(*p));
                }
                let p = *p;
                if modulus.len() < 2
                    || modulus.last() != Some(&1)
                    || modulus.iter().any(|&c| c >= p)
                    || !is_irreducible(modulus, p)
                {
                    return Err(Error::ReducibleExtensionModulus(modulus.clone(), p));
                }
                (p, modulus.len() - 1, modulus.clone())
            }
            FieldSpec::Rational => (0, 1, vec![]),
        };
        Ok(Field(Arc::new(Inner { spec, p, degree, modulus })))
    }

    /// Same as [`Field::new`] but refuses characteristic 2 and 3.
    pub fn new_guarded(spec: FieldSpec) -> Result<Field> {
        let f = Field::new(spec)?;
        f.guard_char_2_3()?;
        Ok(f)
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(FieldSpec::Prime(p))
    }

    pub fn rational() -> Field {
        Field::new(FieldSpec::Rational).unwrap()
    }

    /// `F_{p^degree}` with the first irreducible modulus found.
    pub fn extension(p: u64, degree: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        if degree == 1 {
            return Field::prime(p);
        }
        Field::new(FieldSpec::Extension { p, modulus: find_irreducible(p, degree) })
    }

    pub fn guard_char_2_3(&self) -> Result<()> {
        match self.characteristic() {
            c @ (2 | 3) => Err(Error::CharacteristicTwoOrThreeRejected(c)),
            _ => Ok(()),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn is_finite(&self) -> bool {
        self.0.p != 0
    }

    /// Number of elements, `None` for `Q`.
    pub fn order(&self) -> Option<u64> {
        if self.is_finite() {
            Some(self.0.p.pow(self.0.degree as u32))
        } else {
            None
        }
    }

    fn is_ext(&self) -> bool {
        matches!(self.0.spec, FieldSpec::Extension { .. })
    }

    pub fn zero(&self) -> Fe {
        self.from_i64(0)
    }

    pub fn one(&self) -> Fe {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Fe {
        match self.0.spec {
            FieldSpec::Prime(p) => Fe::Int(n.rem_euclid(p as i64) as u64),
            FieldSpec::Extension { p, .. } => {
                let mut v = vec![0; self.0.degree];
                v[0] = n.rem_euclid(p as i64) as u64;
                Fe::Poly(v)
            }
            FieldSpec::Rational => Fe::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Fe {
        match self.0.spec {
            FieldSpec::Rational => Fe::Rat(BigRational::from_integer(n.clone())),
            _ => {
                let p = BigInt::from(self.0.p);
                self.from_i64(n.mod_floor(&p).to_i64().unwrap())
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Fe> {
        let d = self.from_i64(den);
        let d = self.inv(&d)?;
        Ok(self.mul(&self.from_i64(num), &d))
    }

    /// Element of an extension from its coefficient vector (low to high).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe> {
        let p = self.0.p;
        match self.0.spec {
            FieldSpec::Prime(_) if coeffs.len() == 1 => Ok(Fe::Int(coeffs[0] % p)),
            FieldSpec::Extension { .. } if coeffs.len() <= self.0.degree => {
                let mut v: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
                v.resize(self.0.degree, 0);
                Ok(Fe::Poly(v))
            }
            _ => Err(Error::WrongDimension { expected: self.0.degree, found: coeffs.len() }),
        }
    }

    /// The generator `y` of an extension (`None` for prime fields and `Q`).
    pub fn generator(&self) -> Option<Fe> {
        if self.is_ext() {
            let mut v = vec![0; self.0.degree];
            v[1] = 1;
            Some(Fe::Poly(v))
        } else {
            None
        }
    }

    /// Checks that `x` is a canonical element of this field.
    pub fn check(&self, x: &Fe) -> Result<()> {
        let ok = match (&self.0.spec, x) {
            (FieldSpec::Prime(p), Fe::Int(v)) => v < p,
            (FieldSpec::Extension { p, .. }, Fe::Poly(v)) => {
                v.len() == self.0.degree && v.iter().all(|c| c < p)
            }
            (FieldSpec::Rational, Fe::Rat(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SpecMismatch { expected: self.spec().to_string(), found: format!("{x:?}") })
        }
    }

    pub fn is_zero(&self, x: &Fe) -> bool {
        match x {
            Fe::Int(v) => *v == 0,
            Fe::Poly(v) => v.iter().all(|&c| c == 0),
            Fe::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, x: &Fe) -> bool {
        *x == self.one()
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.0.p;
        match (a, b) {
            (Fe::Int(x), Fe::Int(y)) => Fe::Int((x + y) % p),
            (Fe::Poly(x), Fe::Poly(y)) => Fe::Poly(x.iter().zip(y).map(|(a, b)| (a + b) % p).collect()),
            (Fe::Rat(x), Fe::Rat(y)) => Fe::Rat(x + y),
            _ => panic!("mixed field elements {a:?} and {b:?}"),
        }
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        let p = self.0.p;
        match a {
            Fe::Int(x) => Fe::Int((p - x) % p),
            Fe::Poly(x) => Fe::Poly(x.iter().map(|c| (p - c) % p).collect()),
            Fe::Rat(x) => Fe::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.0.p;
        match (a, b) {
            (Fe::Int(x), Fe::Int(y)) => Fe::Int(mulmod(*x, *y, p)),
            (Fe::Poly(x), Fe::Poly(y)) => {
                let mut prod = vec![0u64; x.len() + y.len() - 1];
                for (i, &xi) in x.iter().enumerate() {
                    if xi == 0 {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + mulmod(xi, yj, p)) % p;
                    }
                }
                let mut r = poly_rem(&prod, &self.0.modulus, p);
                r.resize(self.0.degree, 0);
                Fe::Poly(r)
            }
            (Fe::Rat(x), Fe::Rat(y)) => Fe::Rat(x * y),
            _ => panic!("mixed field elements {a:?} and {b:?}"),
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: &Fe) -> Result<Fe> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Fe::Int(x) => Fe::Int(invmod(*x, self.0.p).unwrap()),
            Fe::Poly(_) => self.pow_u(a, self.order().unwrap() - 2),
            Fe::Rat(x) => Fe::Rat(x.recip()),
        })
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Result<Fe> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow_u(&self, a: &Fe, mut e: u64) -> Fe {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        r
    }

    pub fn pow_big(&self, a: &Fe, e: &BigInt) -> Result<Fe> {
        if e.is_negative() {
            let ai = self.inv(a)?;
            return self.pow_big(&ai, &(-e));
        }
        let mut r = self.one();
        let mut base = a.clone();
        let mut e = e.clone();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                r = self.mul(&r, &base);
            }
            e /= &two;
            if !e.is_zero() {
                base = self.mul(&base, &base);
            }
        }
        Ok(r)
    }

    /// `a^e` for any integer `e`; negative exponents need `a != 0`.
    pub fn pow(&self, a: &Fe, e: i64) -> Result<Fe> {
        if e >= 0 {
            Ok(self.pow_u(a, e as u64))
        } else {
            Ok(self.pow_u(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// `x ↦ x^p`; identity on `Q`.
    pub fn frobenius(&self, a: &Fe) -> Fe {
        if self.is_finite() {
            self.pow_u(a, self.0.p)
        } else {
            a.clone()
        }
    }

    /// Position of `x` in [`Field::elements`].
    pub fn index_of(&self, x: &Fe) -> usize {
        let p = self.0.p as usize;
        match x {
            Fe::Int(v) => *v as usize,
            Fe::Poly(v) => v.iter().rev().fold(0, |acc, &c| acc * p + c as usize),
            Fe::Rat(_) => panic!("Q is not enumerable"),
        }
    }

    pub fn element_at(&self, mut idx: usize) -> Fe {
        let p = self.0.p as usize;
        if self.is_ext() {
            let mut v = vec![0; self.0.degree];
            for c in v.iter_mut() {
                *c = (idx % p) as u64;
                idx /= p;
            }
            Fe::Poly(v)
        } else {
            Fe::Int(idx as u64)
        }
    }

    /// All elements in index order (finite fields only).
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let n = self.order().expect("Q is not enumerable") as usize;
        (0..n).map(move |i| self.element_at(i))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + '_ {
        self.elements().skip(1)
    }

    /// An `F_p`-basis of the additive group: `1, y, .., y^{d-1}`.
    pub fn additive_basis(&self) -> Vec<Fe> {
        (0..self.0.degree)
            .map(|k| {
                if self.is_ext() {
                    let mut v = vec![0; self.0.degree];
                    v[k] = 1;
                    Fe::Poly(v)
                } else {
                    self.one()
                }
            })
            .collect()
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        let q = self.order().expect("finite field");
        let n = q - 1;
        let mut factors = vec![];
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        self.nonzero_elements()
            .find(|g| factors.iter().all(|&r| !self.is_one(&self.pow_u(g, n / r))))
            .expect("F_q^* is cyclic")
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &Fe) -> u64 {
        let n = self.order().expect("finite field") - 1;
        let mut best = n;
        for d in (1..=n).filter(|d| n % d == 0) {
            if self.is_one(&self.pow_u(a, d)) {
                best = d;
                break;
            }
        }
        best
    }

    /// Uniform element from a seeded generator. Over `Q` draws `a/b` with
    /// `|a| <= 20`, `1 <= b <= 20`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        match self.order() {
            Some(q) => self.element_at(rng.gen_range(0..q) as usize),
            None => {
                let a: i64 = rng.gen_range(-20..=20);
                let b: i64 = rng.gen_range(1..=20);
                Fe::Rat(BigRational::new(a.into(), b.into()))
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a Fe>) -> Fe {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Text form: `3`, `2+3y`, `-5/2`.
    pub fn format(&self, x: &Fe) -> String {
        match x {
            Fe::Int(v) => v.to_string(),
            Fe::Rat(r) => r.to_string(),
            Fe::Poly(v) => {
                let mut terms = vec![];
                for (k, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    terms.push(match (k, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "y".to_string(),
                        (1, c) => format!("{c}y"),
                        (k, 1) => format!("y^{k}"),
                        (k, c) => format!("{c}y^{k}"),
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
        }
    }

    /// Parses the output of [`Field::format`] (and plain signed integers).
    pub fn parse(&self, s: &str) -> Result<Fe> {
        let bad = || Error::Parse { what: "field element", input: s.to_string() };
        let s = s.trim();
        match self.0.spec {
            FieldSpec::Rational => {
                let r = match s.split_once('/') {
                    Some((a, b)) => {
                        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                        if b.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(a, b)
                    }
                    None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
                };
                Ok(Fe::Rat(r))
            }
            FieldSpec::Prime(_) => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
            FieldSpec::Extension { .. } => {
                let y = self.generator().unwrap();
                let mut acc = self.zero();
                for term in s.split('+') {
                    let term = term.trim();
                    let (coef, power) = match term.find('y') {
                        None => (term, 0u64),
                        Some(k) => {
                            let c = if k == 0 { "1" } else { &term[..k] };
                            let rest = &term[k + 1..];
                            let e = if rest.is_empty() {
                                1
                            } else {
                                rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                            };
                            (c, e)
                        }
                    };
                    let c: BigInt = coef.parse().map_err(|_| bad())?;
                    let t = self.mul(&self.from_bigint(&c), &self.pow_u(&y, power));
                    acc = self.add(&acc, &t);
                }
                Ok(acc)
            }
        }
    }

    /// Lift of an `F_p` or `Q`-integer element to `BigInt` (residue in `[0,p)`).
    pub fn to_bigint(&self, x: &Fe) -> Option<BigInt> {
        match x {
            Fe::Int(v) => Some(BigInt::from(*v)),
            Fe::Rat(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    /// Coefficient vector of an element (length = degree).
    pub fn coeffs(&self, x: &Fe) -> Vec<u64> {
        match x {
            Fe::Int(v) => vec![*v],
            Fe::Poly(v) => v.clone(),
            Fe::Rat(_) => panic!("Q has no coefficient vector"),
        }
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
}

/// Additive endomorphism `x ↦ Σ a_i x^{p^i}` (in characteristic 0 only `a_0 x`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveEndo {
    pub coefficients: Vec<Fe>,
}

impl AdditiveEndo {
    pub fn new(field: &Field, coefficients: Vec<Fe>) -> Result<Self> {
        for c in &coefficients {
            field.check(c)?;
        }
        if !field.is_finite() && coefficients.len() > 1 {
            return Err(Error::Unsupported("over Q an additive endomorphism is x -> a_0 x".into()));
        }
        Ok(AdditiveEndo { coefficients })
    }

    pub fn zero() -> Self {
        AdditiveEndo { coefficients: vec![] }
    }

    pub fn scalar(a: Fe) -> Self {
        AdditiveEndo { coefficients: vec![a] }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Result<Self> {
        AdditiveEndo::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn is_zero(&self, field: &Field) -> bool {
        self.coefficients.iter().all(|c| field.is_zero(c))
    }

    pub fn apply(&self, field: &Field, x: &Fe) -> Result<Fe> {
        field.check(x)?;
        Ok(self.apply_unchecked(field, x))
    }

    pub(crate) fn apply_unchecked(&self, field: &Field, x: &Fe) -> Fe {
        let mut acc = field.zero();
        let mut xp = x.clone();
        for (i, a) in self.coefficients.iter().enumerate() {
            if i > 0 {
                xp = field.frobenius(&xp);
            }
            if !field.is_zero(a) {
                acc = field.add(&acc, &field.mul(a, &xp));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.inv(&f5.from_i64(2)).unwrap(), f5.from_i64(3));
        let q = Field::rational();
        assert_eq!(q.inv(&q.from_ratio(2, 3).unwrap()).unwrap(), q.from_ratio(3, 2).unwrap());
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.frobenius(&f7.from_i64(3)), f7.from_i64(3));
        let fr = AdditiveEndo::from_ints(&f5, &[0, 1]).unwrap();
        assert_eq!(fr.apply(&f5, &f5.from_i64(2)).unwrap(), f5.from_i64(2));
        let id = AdditiveEndo::from_ints(&q, &[1]).unwrap();
        assert_eq!(id.apply(&q, &q.from_i64(7)).unwrap(), q.from_i64(7));
    }

    #[test]
    fn spec_text_round_trip() {
        for s in ["Fq:p=5", "Fq:p=5,deg=2,mod=[2,0,1]", "Q"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
        assert!("Fq:p=5,deg=3,mod=[2,0,1]".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::prime(9).unwrap_err(), Error::NonPrimeModulus(9));
        // y^2 + 1 = (y+2)(y+3) over F_5
        let bad = FieldSpec::Extension { p: 5, modulus: vec![1, 0, 1] };
        assert!(matches!(Field::new(bad), Err(Error::ReducibleExtensionModulus(..))));
        assert!(Field::new(FieldSpec::Extension { p: 5, modulus: vec![2, 0, 1] }).is_ok());
        assert!(Field::prime(3).is_ok());
        assert_eq!(
            Field::new_guarded(FieldSpec::Prime(3)).unwrap_err(),
            Error::CharacteristicTwoOrThreeRejected(3)
        );
    }

    #[test]
    fn field_axioms_exhaustive() {
        for spec in [
            FieldSpec::Prime(5),
            FieldSpec::Prime(7),
            FieldSpec::Extension { p: 5, modulus: vec![2, 0, 1] },
        ] {
            let f = Field::new(spec).unwrap();
            let els: Vec<Fe> = f.elements().collect();
            for a in &els {
                assert_eq!(f.add(a, &f.neg(a)), f.zero());
                if !f.is_zero(a) {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
                }
                for b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.frobenius(&f.add(a, b)), f.add(&f.frobenius(a), &f.frobenius(b)));
                    for c in els.iter().step_by(3) {
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn additive_endos_are_additive() {
        for p in [5, 7] {
            let f = Field::prime(p).unwrap();
            for coeffs in [[1i64, 1], [3, 0], [0, 2], [4, 6]] {
                let g = AdditiveEndo::from_ints(&f, &coeffs).unwrap();
                for x in f.elements() {
                    for y in f.elements() {
                        let lhs = g.apply(&f, &f.add(&x, &y)).unwrap();
                        let rhs = f.add(&g.apply(&f, &x).unwrap(), &g.apply(&f, &y).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn element_text_and_index() {
        let f = Field::extension(7, 2).unwrap();
        for x in f.elements() {
            assert_eq!(f.parse(&f.format(&x)).unwrap(), x);
            assert_eq!(f.element_at(f.index_of(&x)), x);
        }
        let g = f.primitive_element();
        assert_eq!(f.multiplicative_order(&g), 48);
        let q = Field::rational();
        assert_eq!(q.parse("-5/10").unwrap(), q.from_ratio(-1, 2).unwrap());
    }

    #[test]
    fn spec_mismatch_detected() {
        let f5 = Field::prime(5).unwrap();
        let q = Field::rational();
        let g = AdditiveEndo::from_ints(&f5, &[1]).unwrap();
        assert!(matches!(g.apply(&f5, &q.one()), Err(Error::SpecMismatch { .. })));
    }
}
