use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// The ground field of an algebra: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    /// Parses `n`, `-n` or `n/d`. Over a prime field the fraction is reduced mod p.
    pub fn parse(self, text: &str) -> Option<Scalar> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num = BigInt::from_str(num).ok()?;
        let den = BigInt::from_str(den).ok()?;
        if den.is_zero() {
            return None;
        }
        match self {
            Field::Rational => Some(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = reduce_mod(&num, &pb);
                let d = reduce_mod(&den, &pb);
                if d == 0 {
                    return None;
                }
                let n = Scalar::Modular { value: n, modulus: p };
                let d = Scalar::Modular { value: d, modulus: p };
                Some(&n / &d)
            }
        }
    }

    /// The characteristic (0 for the rationals).
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn reduce_mod(n: &BigInt, p: &BigInt) -> u64 {
    let r = ((n % p) + p) % p;
    r.to_u64().expect("residue fits in u64")
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    /// Size used to prefer small coefficients in searches; not a valuation.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rational(r) => {
                let n = r.numer().abs().to_u64().unwrap_or(u64::MAX);
                let d = r.denom().to_u64().unwrap_or(u64::MAX);
                n.max(d)
            }
            Scalar::Modular { value, modulus } => (*value).min(modulus - value),
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn check_same(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "mixed prime fields in one operation");
    a
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $modular:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                        let p = check_same(*p, *q);
                        Scalar::Modular { value: $modular(*a, *b, p), modulus: p }
                    }
                    _ => panic!("mixed rational and modular scalars"),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| {
    ((a as u128 + b as u128) % p as u128) as u64
});
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
});
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul_mod);
binop!(
    Div,
    div,
    |a: &BigRational, b: &BigRational| {
        assert!(!b.is_zero(), "division by zero");
        a / b
    },
    |a: u64, b: u64, p: u64| {
        assert!(b != 0, "division by zero");
        mul_mod(a, pow_mod(b, p - 2, p), p)
    }
);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Deterministic primality test for the moduli accepted by the parser.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
