//! Base fields with exact arithmetic.
//!
//! Algorithms in this crate are generic over a [`Field`], a small context
//! object that knows how to build constants and find roots of polynomials,
//! while the element type implements [`Scalar`] for the arithmetic itself.
//! Two fields are provided: [`Rationals`] (arbitrary-precision fractions)
//! and [`PrimeField`] (residues modulo a runtime prime).

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::poly;

/// Default largest prime for which the exhaustive root scan is allowed.
pub const DEFAULT_SCAN_BOUND: u32 = 65521;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must fit in 31 bits)")]
    ModulusTooLarge(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("denominator of {0:?} is not invertible modulo {1}")]
    NotInvertible(String, u32),
    #[error("prime {p} exceeds the exhaustive scan bound {bound}")]
    ScanBoundExceeded { p: u32, bound: u32 },
    #[error("integer {0} is too large to factor by trial division")]
    FactorizationLimit(String),
}

/// Runtime description of a base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u32),
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) => *p as u64,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// Arithmetic on canonical field elements. Equality is structural, which is
/// only sound because every implementor keeps a unique canonical form.
pub trait Scalar: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Scalar;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// The image of `num / den`; fails when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem, FieldError>;
    /// Distinct roots lying in the field of a nonzero polynomial given by
    /// coefficients in increasing degree.
    fn roots(&self, poly: &[Self::Elem]) -> Result<Vec<Self::Elem>, FieldError>;

    fn characteristic(&self) -> u64 {
        self.descriptor().characteristic()
    }

    /// Parses a decimal integer or a `num/den` string.
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError> {
        let (num, den) = parse_ratio(s)?;
        self.from_ratio(&num, &den).map_err(|e| match e {
            FieldError::ZeroDenominator(_) => FieldError::ZeroDenominator(s.to_string()),
            FieldError::NotInvertible(_, p) => FieldError::NotInvertible(s.to_string(), p),
            other => other,
        })
    }
}

fn parse_ratio(s: &str) -> Result<(BigInt, BigInt), FieldError> {
    let t = s.trim();
    let bad = || FieldError::Parse(s.to_string());
    let parse_int = |x: &str| -> Result<BigInt, FieldError> {
        let x = x.trim();
        if x.is_empty() || !x.trim_start_matches(['-', '+']).chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        x.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(FieldError::ZeroDenominator(s.to_string()));
            }
            Ok((parse_int(n)?, den))
        }
        None => Ok((parse_int(t)?, BigInt::one())),
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator(format!("{num}/{den}")));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn roots(&self, poly: &[BigRational]) -> Result<Vec<BigRational>, FieldError> {
        rational_roots(poly)
    }
}

/// Rational roots via the rational root theorem applied to the primitive
/// integer form of the squarefree part.
fn rational_roots(poly: &[BigRational]) -> Result<Vec<BigRational>, FieldError> {
    let mut p = poly::trim(poly.to_vec());
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    let lowest = p.iter().position(|c| !Zero::is_zero(c)).unwrap_or(0);
    if lowest > 0 {
        roots.push(BigRational::zero());
        p.drain(..lowest);
    }
    if p.len() <= 1 {
        return Ok(roots);
    }
    let field = Rationals;
    let deriv = poly::derivative(&field, &p);
    let g = poly::gcd(&field, &p, &deriv);
    let (sqfree, _) = poly::div_rem(&field, &p, &g);
    let ints = primitive_integer(&sqfree);
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let nums = divisors(&a0)?;
    let dens = divisors(&an)?;
    let mut seen = std::collections::BTreeSet::new();
    for q in &dens {
        for pn in &nums {
            for sign in [1i32, -1] {
                let num = if sign > 0 { pn.clone() } else { -pn.clone() };
                let cand = BigRational::new(num, q.clone());
                if seen.insert(cand.clone()) && Zero::is_zero(&poly::eval(&field, &sqfree, &cand)) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn primitive_integer(p: &[BigRational]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 2_000_000;

/// All positive divisors of a nonzero integer, by trial division.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>, FieldError> {
    let mut rest = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_DIVISION_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let lim = BigInt::from(TRIAL_DIVISION_LIMIT);
        if rest > &lim * &lim {
            return Err(FieldError::FactorizationLimit(n.to_string()));
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let current = divs.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(current.iter().map(|x| x * &pk));
        }
    }
    divs.sort();
    Ok(divs)
}

// ---------------------------------------------------------------------------
// Prime fields

/// Residue modulo the prime carried alongside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue {
    value: u32,
    modulus: u32,
}

impl Residue {
    pub fn value(&self) -> u32 {
        self.value
    }
    pub fn modulus(&self) -> u32 {
        self.modulus
    }
    fn mk(&self, v: u64) -> Residue {
        Residue { value: (v % self.modulus as u64) as u32, modulus: self.modulus }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Scalar for Residue {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.mk(self.value as u64 + rhs.value as u64)
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.mk(self.value as u64 + self.modulus as u64 - rhs.value as u64)
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.mk(self.value as u64 * rhs.value as u64)
    }
    fn neg(&self) -> Self {
        self.mk(self.modulus as u64 - self.value as u64)
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut exp = p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(self.mk(acc))
    }
}

/// The prime field of residues modulo `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    scan_bound: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32, scan_bound: DEFAULT_SCAN_BOUND })
    }

    /// Overrides the largest prime for which root scans are permitted.
    pub fn with_scan_bound(mut self, bound: u32) -> Self {
        self.scan_bound = bound;
        self
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Residue {
        Residue { value: (v % self.p as u64) as u32, modulus: self.p }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = Residue;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::PrimeField(self.p)
    }
    fn zero(&self) -> Residue {
        self.elem(0)
    }
    fn one(&self) -> Residue {
        self.elem(1)
    }
    fn from_i64(&self, v: i64) -> Residue {
        self.elem(v.rem_euclid(self.p as i64) as u64)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Residue, FieldError> {
        let reduce = |x: &BigInt| -> Residue {
            let p = BigInt::from(self.p);
            let r = x.mod_floor(&p);
            self.elem(r.to_u64().expect("residue fits"))
        };
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator(format!("{num}/{den}")));
        }
        let d = reduce(den);
        match d.inv() {
            Some(di) => Ok(reduce(num).mul(&di)),
            None => Err(FieldError::NotInvertible(format!("{num}/{den}"), self.p)),
        }
    }
    fn roots(&self, poly: &[Residue]) -> Result<Vec<Residue>, FieldError> {
        if self.p > self.scan_bound {
            return Err(FieldError::ScanBoundExceeded { p: self.p, bound: self.scan_bound });
        }
        let p = poly::trim(poly.to_vec());
        if p.is_empty() {
            return Ok(Vec::new());
        }
        Ok((0..self.p as u64)
            .map(|v| self.elem(v))
            .filter(|x| poly::eval(self, &p, x).is_zero())
            .collect())
    }
}
