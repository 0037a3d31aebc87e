//! Exact field scalars: arbitrary-precision rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Largest admissible prime-field modulus. Products of two residues must
/// fit in a u64 without overflow, so the modulus stays below 2^31.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Default modulus for prime-field runs.
pub const DEFAULT_PRIME: u64 = 32003;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The coefficient field: the rationals or GF(p) for a prime p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// GF(p). Rejects composite or oversized moduli.
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if p >= MAX_MODULUS {
            return Err(Error::Field(format!("modulus {p} exceeds {MAX_MODULUS}")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn default_prime_field() -> Self {
        FieldSpec::PrimeField(DEFAULT_PRIME)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Scalar::Mod {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// num/den as a field element. In GF(p) the denominator must be a unit.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Parameter("zero denominator".into()));
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::PrimeField(p) => {
                let d = self.integer(den);
                if d.is_zero() {
                    return Err(Error::Parameter(format!(
                        "denominator {den} vanishes modulo {p}"
                    )));
                }
                Ok(self.integer(num).mul(&d.inv()))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF {p}"),
        }
    }
}

/// A field element. Rational values are kept reduced with positive
/// denominator (the representation `BigRational` maintains); modular values
/// are residues in [0, p).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p); a must be a nonzero residue.
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert!(r0 == 1, "attempted inverse of a non-unit residue");
    s0.rem_euclid(p as i128) as u64
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Mod { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "scalar field mismatch: {} vs {}",
            self.field(),
            other.field()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + p - b) % p,
                modulus: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: a * b % p,
                modulus: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "attempted inverse of zero");
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True when the printed form starts with a minus sign.
    pub fn prints_negative(&self) -> bool {
        match self {
            Scalar::Rational(a) => a.is_negative(),
            Scalar::Mod { value, modulus } => *value != 0 && 2 * value > *modulus,
        }
    }

    /// The scalar with the printed sign stripped: `s = ±s.abs_part()`.
    pub fn abs_part(&self) -> Scalar {
        if self.prints_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as reduced fractions. Modular values print balanced:
    /// residues above p/2 appear as small negative integers, so GF(p) output
    /// matches the rational output on small integer coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(a) => write!(f, "{a}"),
            Scalar::Mod { value, modulus } => {
                if *value != 0 && 2 * value > *modulus {
                    write!(f, "-{}", modulus - value)
                } else {
                    write!(f, "{value}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites_and_accepts_two() {
        assert!(FieldSpec::prime_field(4).is_err());
        assert!(FieldSpec::prime_field(1).is_err());
        assert!(FieldSpec::prime_field(0).is_err());
        assert!(FieldSpec::prime_field(2).is_ok());
        assert!(FieldSpec::prime_field(32003).is_ok());
        assert!(FieldSpec::prime_field((1 << 31) + 11).is_err());
    }

    #[test]
    fn rational_canonical_form() {
        let f = FieldSpec::rationals();
        let half = f.fraction(2, 4).unwrap();
        assert_eq!(half, f.fraction(1, 2).unwrap());
        assert_eq!(half.to_string(), "1/2");
        let neg = f.fraction(3, -6).unwrap();
        assert_eq!(neg.to_string(), "-1/2");
        assert_eq!(half.add(&neg), f.zero());
    }

    #[test]
    fn field_axioms_sampled_gf() {
        let f = FieldSpec::prime_field(7).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                let (x, y) = (f.integer(a), f.integer(b));
                assert_eq!(x.add(&y), y.add(&x));
                assert_eq!(x.mul(&y), y.mul(&x));
                assert_eq!(x.sub(&y), x.add(&y.neg()));
                if !y.is_zero() {
                    assert_eq!(x.div(&y).mul(&y), x);
                }
            }
        }
        for a in 1..7 {
            let x = f.integer(a);
            assert!(x.mul(&x.inv()).is_one());
        }
    }

    #[test]
    fn balanced_display_gf() {
        let f = FieldSpec::prime_field(32003).unwrap();
        assert_eq!(f.integer(-2).to_string(), "-2");
        assert_eq!(f.integer(5).to_string(), "5");
        assert_eq!(f.integer(0).to_string(), "0");
        assert_eq!(f.fraction(1, 2).unwrap().to_string(), "-16001");
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = FieldSpec::rationals();
        let x = f.fraction(-3, 2).unwrap();
        let mut acc = f.one();
        for e in 0..8 {
            assert_eq!(x.pow(e), acc);
            acc = acc.mul(&x);
        }
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let a = FieldSpec::rationals().one();
        let b = FieldSpec::prime_field(7).unwrap().one();
        let _ = a.add(&b);
    }

    #[test]
    fn fraction_with_vanishing_denominator_is_an_error() {
        let f = FieldSpec::prime_field(7).unwrap();
        assert!(f.fraction(1, 7).is_err());
        assert!(f.fraction(1, 14).is_err());
        assert_eq!(f.fraction(1, 2).unwrap(), f.integer(4));
    }
}
