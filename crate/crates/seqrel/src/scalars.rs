//! Exact coefficient arithmetic over a prime field `F_p` or the rationals,
//! with a multiplication counter.
//!
//! Every base-field multiplication and division performed by an algorithm is
//! counted through an [`OpCounter`] owned by that computation, including
//! products by 1 and the divisions used for monic normalization. Additions,
//! subtractions and negations are free.

use std::cell::Cell;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default prime modulus for randomized tests and benchmarks.
pub const DEFAULT_PRIME: u64 = 65521;

/// Coefficient domain selector, fixed per computation context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// Prime field `F_p`; the modulus must be prime.
    Fp(u64),
    /// Arbitrary-precision rationals.
    Rational,
}

impl Field {
    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Fp(p) => {
                let m = v.rem_euclid(*p as i64) as u64;
                Scalar::Fp { val: m, modulus: *p }
            }
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Builds `num/den`. In `F_p` this is a modular division.
    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            Field::Fp(_) => {
                let scratch = OpCounter::new();
                self.from_i64(num)
                    .div(&self.from_i64(den), &scratch)
                    .expect("nonzero denominator")
            }
            Field::Rational => {
                Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
        }
    }

    /// Parses `"fp:65521"` or `"rational"`.
    pub fn parse(s: &str) -> Result<Field, String> {
        if s == "rational" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p.parse().map_err(|_| format!("bad modulus in `{s}`"))?;
            if p < 2 || !is_prime(p) {
                return Err(format!("modulus {p} is not prime"));
            }
            return Ok(Field::Fp(p));
        }
        Err(format!("unknown field `{s}` (expected `fp:<prime>` or `rational`)"))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Fp(p) => write!(f, "fp:{p}"),
            Field::Rational => write!(f, "rational"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Counts base-field multiplications and divisions.
///
/// One counter belongs to exactly one computation; it is never global, so
/// concurrent runs do not interfere. Interior mutability keeps the arithmetic
/// call sites free of `&mut` plumbing.
#[derive(Debug, Default)]
pub struct OpCounter {
    muls: Cell<u64>,
}

impl OpCounter {
    pub fn new() -> Self {
        OpCounter { muls: Cell::new(0) }
    }

    pub fn mul_count(&self) -> u64 {
        self.muls.get()
    }

    #[inline]
    fn bump(&self) {
        self.muls.set(self.muls.get() + 1);
    }
}

/// Errors from scalar arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    DivisionByZero,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for ScalarError {}

/// An exact field element in canonical form: a residue in `[0, p)` or a
/// reduced fraction with positive denominator. Equality is structural.
///
/// Mixing elements of different fields (or different moduli) is a programming
/// error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { val: u64, modulus: u64 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { modulus, .. } => Field::Fp(*modulus),
            Scalar::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { val: a, modulus: p }, Scalar::Fp { val: b, modulus: q }) => {
                assert_eq!(p, q, "mismatched field contexts");
                Scalar::Fp { val: (a + b) % p, modulus: *p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => panic!("mismatched field contexts"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { val, modulus } => Scalar::Fp {
                val: if *val == 0 { 0 } else { modulus - val },
                modulus: *modulus,
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }

    /// Field product; increments the counter by one.
    pub fn mul(&self, rhs: &Scalar, counter: &OpCounter) -> Scalar {
        counter.bump();
        match (self, rhs) {
            (Scalar::Fp { val: a, modulus: p }, Scalar::Fp { val: b, modulus: q }) => {
                assert_eq!(p, q, "mismatched field contexts");
                Scalar::Fp {
                    val: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => panic!("mismatched field contexts"),
        }
    }

    /// Multiplicative inverse; increments the counter by one.
    pub fn inv(&self, counter: &OpCounter) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        counter.bump();
        Ok(match self {
            Scalar::Fp { val, modulus } => Scalar::Fp {
                val: mod_inverse(*val, *modulus),
                modulus: *modulus,
            },
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        })
    }

    /// Field quotient; increments the counter by one.
    pub fn div(&self, rhs: &Scalar, counter: &OpCounter) -> Result<Scalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        counter.bump();
        Ok(match (self, rhs) {
            (Scalar::Fp { val: a, modulus: p }, Scalar::Fp { val: b, modulus: q }) => {
                assert_eq!(p, q, "mismatched field contexts");
                let binv = mod_inverse(*b, *p);
                Scalar::Fp {
                    val: ((*a as u128 * binv as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a / b),
            _ => panic!("mismatched field contexts"),
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { val, .. } => write!(f, "{val}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", -r.numer(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Inverse of `a` modulo the prime `p`, via the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of a nonunit mod {p}");
    s0.rem_euclid(p as i128) as u64
}

/// Parses an integer, a fraction `a/b`, or (over `F_p`) a residue.
pub fn parse_scalar(s: &str, field: &Field) -> Result<Scalar, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| format!("bad numerator `{num}`"))?;
        let den: i64 = den.trim().parse().map_err(|_| format!("bad denominator `{den}`"))?;
        if den == 0 {
            return Err("zero denominator".into());
        }
        Ok(field.from_ratio(num, den))
    } else {
        let v: i64 = s.parse().map_err(|_| format!("bad coefficient `{s}`"))?;
        Ok(field.from_i64(v))
    }
}
