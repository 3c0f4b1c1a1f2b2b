//! Exact scalar arithmetic over the rationals and over prime fields GF(p).
//!
//! Every value is exact: rationals are arbitrary-precision fractions kept in
//! lowest terms with a positive denominator, prime-field elements are
//! canonical residues in `[0, p)`. No floating point appears anywhere in
//! this crate. Scalars carry their field with them, and arithmetic that
//! mixes two different fields is rejected rather than coerced.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use crate::error::Error;

/// The field a [`Scalar`] lives in: the rationals, or GF(p) for a prime p.
///
/// Construction is the only place the modulus is checked for primality, so
/// a `FieldSpec` in hand always describes an actual field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldSpec(Repr);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// The field of rational numbers.
    pub fn rational() -> Self {
        FieldSpec(Repr::Rational)
    }

    /// The prime field GF(p). Fails if `p` is not prime.
    pub fn prime_field(p: u64) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(FieldSpec(Repr::Prime(p)))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// True for the rational field.
    pub fn is_rational(&self) -> bool {
        matches!(self.0, Repr::Rational)
    }

    /// The characteristic p for GF(p), `None` for the rationals.
    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Repr::Rational => None,
            Repr::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Rational => write!(f, "Q"),
            Repr::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element together with the field it belongs to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    value: Value,
    field: FieldSpec,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Value {
    Rational(BigRational),
    Residue(u64),
}

impl Scalar {
    /// The additive identity of `field`.
    pub fn zero(field: FieldSpec) -> Self {
        match field.0 {
            Repr::Rational => Scalar {
                value: Value::Rational(BigRational::zero()),
                field,
            },
            Repr::Prime(_) => Scalar {
                value: Value::Residue(0),
                field,
            },
        }
    }

    /// The multiplicative identity of `field`.
    pub fn one(field: FieldSpec) -> Self {
        Scalar::from_integer(1, field)
    }

    /// The image of the integer `n` in `field`.
    pub fn from_integer(n: i64, field: FieldSpec) -> Self {
        match field.0 {
            Repr::Rational => Scalar {
                value: Value::Rational(BigRational::from_integer(BigInt::from(n))),
                field,
            },
            Repr::Prime(p) => Scalar {
                value: Value::Residue(reduce_i64(n, p)),
                field,
            },
        }
    }

    /// Reads a scalar from text: an optionally signed integer, or a
    /// fraction `numerator/denominator`.
    ///
    /// In GF(p) both parts are reduced modulo p and the fraction is resolved
    /// by modular inversion; a denominator divisible by p is rejected
    /// because the written value does not exist in that field.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self, Error> {
        let bad = |reason: &str| Error::ParseScalar {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(bad("empty string"));
        }
        let (num_text, den_text) = match trimmed.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (trimmed, None),
        };
        let numerator =
            BigInt::from_str(num_text).map_err(|_| bad("numerator is not an integer"))?;
        let denominator = match den_text {
            Some(d) => BigInt::from_str(d).map_err(|_| bad("denominator is not an integer"))?,
            None => BigInt::one(),
        };
        if denominator.is_zero() {
            return Err(bad("denominator is zero"));
        }
        match field.0 {
            Repr::Rational => Ok(Scalar {
                value: Value::Rational(BigRational::new(numerator, denominator)),
                field,
            }),
            Repr::Prime(p) => {
                let num = reduce_big(&numerator, p);
                let den = reduce_big(&denominator, p);
                if den == 0 {
                    return Err(bad(&format!("denominator is divisible by {p}")));
                }
                let inv = mod_inverse(den, p)
                    .ok_or_else(|| bad(&format!("denominator has no inverse modulo {p}")))?;
                Ok(Scalar {
                    value: Value::Residue(mul_mod(num, inv, p)),
                    field,
                })
            }
        }
    }

    /// The field this scalar belongs to.
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_zero(),
            Value::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_one(),
            Value::Residue(r) => *r == 1,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        self.check_field(rhs)?;
        Ok(self.raw_add(rhs))
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        self.check_field(rhs)?;
        Ok(self.raw_sub(rhs))
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        self.check_field(rhs)?;
        Ok(self.raw_mul(rhs))
    }

    /// Field division; rejects a zero divisor.
    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        self.check_field(rhs)?;
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.raw_div(rhs))
    }

    /// The additive inverse.
    pub fn neg(&self) -> Scalar {
        Scalar::zero(self.field).raw_sub(self)
    }

    /// The multiplicative inverse; rejects zero.
    pub fn inv(&self) -> Result<Scalar, Error> {
        Scalar::one(self.field).div(self)
    }

    /// Integer powers, with negative exponents via inversion.
    pub fn pow(&self, exponent: i64) -> Result<Scalar, Error> {
        let base = if exponent < 0 {
            self.inv()?
        } else {
            self.clone()
        };
        let mut result = Scalar::one(self.field);
        for _ in 0..exponent.unsigned_abs() {
            result = result.raw_mul(&base);
        }
        Ok(result)
    }

    fn check_field(&self, rhs: &Scalar) -> Result<(), Error> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: rhs.field.to_string(),
            })
        }
    }

    /// Arithmetic used internally once fields are known to agree. These
    /// panic on a mismatch, which the public entry points rule out.
    pub(crate) fn raw_add(&self, rhs: &Scalar) -> Scalar {
        match (&self.value, &rhs.value) {
            (Value::Rational(a), Value::Rational(b)) => Scalar {
                value: Value::Rational(a + b),
                field: self.field,
            },
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.modulus();
                Scalar {
                    value: Value::Residue(add_mod(*a, *b, p)),
                    field: self.field,
                }
            }
            _ => unreachable!("field agreement is checked before raw arithmetic"),
        }
    }

    pub(crate) fn raw_sub(&self, rhs: &Scalar) -> Scalar {
        match (&self.value, &rhs.value) {
            (Value::Rational(a), Value::Rational(b)) => Scalar {
                value: Value::Rational(a - b),
                field: self.field,
            },
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.modulus();
                Scalar {
                    value: Value::Residue(sub_mod(*a, *b, p)),
                    field: self.field,
                }
            }
            _ => unreachable!("field agreement is checked before raw arithmetic"),
        }
    }

    pub(crate) fn raw_mul(&self, rhs: &Scalar) -> Scalar {
        match (&self.value, &rhs.value) {
            (Value::Rational(a), Value::Rational(b)) => Scalar {
                value: Value::Rational(a * b),
                field: self.field,
            },
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.modulus();
                Scalar {
                    value: Value::Residue(mul_mod(*a, *b, p)),
                    field: self.field,
                }
            }
            _ => unreachable!("field agreement is checked before raw arithmetic"),
        }
    }

    pub(crate) fn raw_div(&self, rhs: &Scalar) -> Scalar {
        match (&self.value, &rhs.value) {
            (Value::Rational(a), Value::Rational(b)) => Scalar {
                value: Value::Rational(a / b),
                field: self.field,
            },
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.modulus();
                let inv = mod_inverse(*b, p).expect("nonzero divisor in a prime field");
                Scalar {
                    value: Value::Residue(mul_mod(*a, inv, p)),
                    field: self.field,
                }
            }
            _ => unreachable!("field agreement is checked before raw arithmetic"),
        }
    }

    fn modulus(&self) -> u64 {
        self.field
            .modulus()
            .expect("residue scalars always carry a prime modulus")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(r) => write!(f, "{r}"),
            Value::Residue(r) => write!(f, "{r}"),
        }
    }
}

fn reduce_i64(n: i64, p: u64) -> u64 {
    let r = (n as i128).rem_euclid(p as i128);
    r as u64
}

fn reduce_big(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = n.mod_floor(&m);
    // mod_floor of a positive modulus is in [0, p), so this conversion is safe.
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse by the extended Euclidean algorithm; `None` for zero.
fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    // old_r = gcd(a, p) = 1 because p is prime and a is a nonzero residue.
    Some(old_s.rem_euclid(p as i128) as u64)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test, exact for all `u64` inputs
/// with this fixed witness set.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    let trailing = (n - 1).trailing_zeros();
    let odd_part = (n - 1) >> trailing;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, odd_part, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..trailing {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
