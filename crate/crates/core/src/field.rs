//! Exact coefficient arithmetic over `ℚ` and prime fields `𝔽_p`.
//!
//! Scalars are self-describing (`𝔽_p` residues carry their modulus), so mixing
//! coefficients from different fields is a programmer error and panics.
//! Generalized binomial coefficients `binom(a, k)` with arbitrary integer `a`
//! are computed exactly via falling factorials and only then reduced into the
//! target field; binomials are never evaluated through modular factorials.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A coefficient field: the rationals or `𝔽_p` for a prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum FieldCtx {
    Rationals,
    Prime(u64),
}

impl FieldCtx {
    /// Builds `𝔽_p`, checking that `p` is prime (and `2 ≤ p < 2^32`).
    pub fn prime(p: u64) -> Result<FieldCtx> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime modulus")));
        }
        Ok(FieldCtx::Prime(p))
    }

    /// Parses `"Q"` or `"F<p>"` (e.g. `"F2"`, `"F101"`).
    pub fn parse(s: &str) -> Result<FieldCtx> {
        if s == "Q" {
            return Ok(FieldCtx::Rationals);
        }
        if let Some(rest) = s.strip_prefix('F') {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidField(format!("cannot parse field {s:?}")))?;
            return FieldCtx::prime(p);
        }
        Err(Error::InvalidField(format!("cannot parse field {s:?} (expected Q or F<p>)")))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Rationals => 0,
            FieldCtx::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldCtx::Rationals => Scalar::Rat(BigRational::zero()),
            FieldCtx::Prime(p) => Scalar::Mod(0, *p),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldCtx::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            FieldCtx::Prime(p) => {
                let m = BigInt::from(*p);
                let mut r = v % &m;
                if r.is_negative() {
                    r += &m;
                }
                let (_, digits) = r.to_u64_digits();
                Scalar::Mod(digits.first().copied().unwrap_or(0), *p)
            }
        }
    }

    /// Exact rational `a/b` over `ℚ`; over `𝔽_p` reduces `a · b⁻¹` (error if `p | b`).
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Input("zero denominator".into()));
        }
        match self {
            FieldCtx::Rationals => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            FieldCtx::Prime(_) => {
                let d = self.from_bigint(den);
                let inv = d.inv().ok_or_else(|| {
                    Error::Input(format!("denominator {den} is divisible by the characteristic"))
                })?;
                Ok(self.from_bigint(num).mul(&inv))
            }
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rationals => write!(f, "Q"),
            FieldCtx::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|s| s <= p).unwrap_or(false) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. `Mod(r, p)` is the canonical residue `r ∈ [0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> FieldCtx {
        match self {
            Scalar::Rat(_) => FieldCtx::Rationals,
            Scalar::Mod(_, p) => FieldCtx::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => {
                Scalar::Mod(((*a as u128 + *b as u128) % *p as u128) as u64, *p)
            }
            _ => panic!("scalar arithmetic across different fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => {
                Scalar::Mod(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            _ => panic!("scalar arithmetic across different fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(0, p) => Scalar::Mod(0, *p),
            Scalar::Mod(a, p) => Scalar::Mod(p - a, *p),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Mod(0, _) => None,
            Scalar::Mod(a, p) => Some(Scalar::Mod(mod_inv(*a, *p), *p)),
        }
    }

    /// The unique rational this scalar denotes, when over `ℚ`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod(..) => None,
        }
    }

    /// Lifts an `𝔽_p` residue to its canonical integer representative in `[0, p)`;
    /// over `ℚ` requires an integer and returns it.
    pub fn lift_to_int(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    Some(r.to_integer())
                } else {
                    None
                }
            }
            Scalar::Mod(v, _) => Some(BigInt::from(*v)),
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); p prime, a != 0 mod p
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of non-unit");
    (t0.rem_euclid(p as i128)) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.to_integer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

/// Generalized binomial coefficient `binom(a, k)` for arbitrary integer `a`
/// and `k ≥ 0`, as an exact integer: `a(a−1)⋯(a−k+1)/k!`.
pub fn binom_int(a: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for t in 0..k as i64 {
        num *= BigInt::from(a - t);
    }
    let mut den = BigInt::one();
    for t in 2..=k as u64 {
        den *= BigInt::from(t);
    }
    // falling factorials of length k are always divisible by k!
    num / den
}
