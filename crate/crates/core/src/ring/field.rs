//! Coefficient fields: the rationals and prime fields `F_p` with `p > 2^20`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest admissible characteristic. Random coefficients are drawn from a
/// window of size ~2·10^4, so collisions stay negligible above this bound.
pub const MIN_PRIME: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    PrimeField { p: u64 },
}

impl FieldSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if p <= MIN_PRIME {
            return Err(Error::InvalidField(format!(
                "characteristic {p} must exceed 2^20 = {MIN_PRIME}"
            )));
        }
        if p >= 1 << 62 {
            return Err(Error::InvalidField(format!("characteristic {p} is too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::PrimeField { p })
    }

    /// Results over `F_p` are only correct with high probability.
    pub fn is_probabilistic(&self) -> bool {
        matches!(self, FieldSpec::PrimeField { .. })
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match *self {
            FieldSpec::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField { p } => Coeff::Fp {
                v: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match *self {
            FieldSpec::Rationals => Coeff::Q(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField { p } => {
                let r = n.mod_floor(&BigInt::from(p));
                Coeff::Fp {
                    v: r.to_u64().expect("residue fits in u64"),
                    p,
                }
            }
        }
    }

    /// Maps a rational number into the field; fails when the denominator
    /// vanishes modulo `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Coeff> {
        match *self {
            FieldSpec::Rationals => Ok(Coeff::Q(q.clone())),
            FieldSpec::PrimeField { .. } => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                if den.is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "denominator of {q} vanishes in {self}"
                    )));
                }
                Ok(num.div(&den))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField { p } => write!(f, "Fp({p})"),
        }
    }
}

/// A field element. Prime-field elements carry their modulus; mixing the two
/// kinds (or two moduli) is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_one(),
            Coeff::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a + b),
            (Coeff::Fp { v: a, p }, Coeff::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                let s = a + b;
                Coeff::Fp {
                    v: if s >= *p { s - p } else { s },
                    p: *p,
                }
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::Fp { v, p } => Coeff::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            (Coeff::Fp { v: a, p }, Coeff::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Coeff::Fp {
                    v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn inv(&self) -> Coeff {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Coeff::Q(a) => Coeff::Q(a.recip()),
            Coeff::Fp { v, p } => Coeff::Fp {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        }
    }

    pub fn div(&self, other: &Coeff) -> Coeff {
        self.mul(&other.inv())
    }

    pub fn pow(&self, mut e: u64) -> Coeff {
        let mut base = self.clone();
        let mut acc = match self {
            Coeff::Q(_) => Coeff::Q(BigRational::one()),
            Coeff::Fp { p, .. } => Coeff::Fp { v: 1, p: *p },
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Balanced integer representative for `F_p`, exact value for `Q`.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Coeff::Q(q) => q.clone(),
            Coeff::Fp { v, p } => {
                let v = if *v > p / 2 {
                    -((p - v) as i64)
                } else {
                    *v as i64
                };
                BigRational::from_integer(BigInt::from(v))
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.to_rational().is_negative()
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.to_rational();
        if q.is_integer() {
            write!(f, "{}", q.numer())
        } else {
            write!(f, "{}/{}", q.numer(), q.denom())
        }
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}
