//! Exact field scalars: arbitrary-precision rationals and prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::PolyError;

/// The coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl Field {
    /// A prime field of characteristic `p`.  Characteristic 3 is
    /// rejected: the cubic normal form needs 3 invertible.
    pub fn prime(p: u64) -> Result<Field, PolyError> {
        if !is_prime(p) {
            return Err(PolyError::NotPrime(p));
        }
        if p == 3 {
            return Err(PolyError::UnsupportedCharacteristic);
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        self.from_integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

/// An element of one of the supported fields.
///
/// Rationals are kept in lowest terms with positive denominator (the
/// backing type maintains this); prime-field values live in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> Option<u64> {
    // Extended Euclid; p need not be huge here.
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime");
    Some(s0.rem_euclid(p as i128) as u64)
}

impl Scalar {
    pub fn from_rational(num: i64, den: i64) -> Result<Scalar, PolyError> {
        if den == 0 {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Negative in the rational ordering; prime-field residues are
    /// never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Prime { .. } => false,
        }
    }

    fn check_same_field(&self, other: &Scalar) -> Result<(), PolyError> {
        if self.field() != other.field() {
            return Err(PolyError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, PolyError> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime { value: b, .. },
            ) => Scalar::Prime {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, PolyError> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime { value: b, .. },
            ) => Scalar::Prime {
                value: mulmod(*a, *b, *p),
                modulus: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn inverse(&self) -> Result<Scalar, PolyError> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() {
                    Err(PolyError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Prime { value, modulus } => invmod(*value, *modulus)
                .map(|v| Scalar::Prime {
                    value: v,
                    modulus: *modulus,
                })
                .ok_or(PolyError::DivisionByZero),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, PolyError> {
        self.check_same_field(other)?;
        self.mul(&other.inverse()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Cubes to one: the singularity test for the normal-form parameter.
    pub fn is_cube_root_of_unity(&self) -> bool {
        self.pow(3).is_one()
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Parses the canonical text form: `num` or `num/den` for rationals, a
/// decimal residue for prime fields.
pub fn parse_scalar(field: Field, text: &str) -> Result<Scalar, PolyError> {
    let text = text.trim();
    match field {
        Field::Rational => {
            let (num, den) = match text.split_once('/') {
                Some((n, d)) => (n, d),
                None => (text, "1"),
            };
            let num: BigInt = num.parse().map_err(|_| PolyError::BadScalar(text.into()))?;
            let den: BigInt = den.parse().map_err(|_| PolyError::BadScalar(text.into()))?;
            if den.is_zero() {
                return Err(PolyError::DivisionByZero);
            }
            Ok(Scalar::Rational(BigRational::new(num, den)))
        }
        Field::Prime(p) => {
            let v: i64 = text
                .parse()
                .map_err(|_| PolyError::BadScalar(text.into()))?;
            Ok(Scalar::Prime {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            })
        }
    }
}

/// Canonical text of a scalar; inverse of [`parse_scalar`] on canonical
/// input.
pub fn scalar_to_string(s: &Scalar) -> String {
    match s {
        Scalar::Rational(q) => {
            debug_assert!(q.denom().is_positive() || q.is_zero());
            s.to_string()
        }
        Scalar::Prime { .. } => s.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let a = Scalar::from_rational(1, 2).unwrap();
        let b = Scalar::from_rational(1, 3).unwrap();
        assert_eq!(a.add(&b).unwrap(), Scalar::from_rational(5, 6).unwrap());
        assert_eq!(a.mul(&b).unwrap(), Scalar::from_rational(1, 6).unwrap());
        assert_eq!(a.div(&b).unwrap(), Scalar::from_rational(3, 2).unwrap());
        assert_eq!(a.sub(&a).unwrap(), Field::Rational.zero());
        // Lowest terms, positive denominator.
        assert_eq!(Scalar::from_rational(2, -4).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_integer(5);
        let b = f.from_integer(4);
        assert_eq!(a.add(&b).unwrap(), f.from_integer(2));
        assert_eq!(a.mul(&b).unwrap(), f.from_integer(6));
        assert_eq!(a.neg(), f.from_integer(2));
        assert_eq!(a.inverse().unwrap(), f.from_integer(3)); // 5 * 3 = 15 = 1
        assert_eq!(f.from_integer(-9), f.from_integer(5));
        assert!(f.zero().inverse().is_err());
    }

    #[test]
    fn field_validation() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(13).is_ok());
        assert_eq!(Field::prime(6), Err(PolyError::NotPrime(6)));
        assert_eq!(Field::prime(3), Err(PolyError::UnsupportedCharacteristic));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Field::Rational.one();
        let b = Field::prime(7).unwrap().one();
        assert_eq!(a.add(&b), Err(PolyError::FieldMismatch));
        assert_eq!(a.mul(&b), Err(PolyError::FieldMismatch));
    }

    #[test]
    fn cube_root_detection() {
        assert!(Field::Rational.one().is_cube_root_of_unity());
        assert!(!Field::Rational.from_integer(2).is_cube_root_of_unity());
        let f7 = Field::prime(7).unwrap();
        // Cubes mod 7 land in {0, 1, 6}; 2^3 = 1 and 4^3 = 1.
        assert!(f7.from_integer(2).is_cube_root_of_unity());
        assert!(f7.from_integer(4).is_cube_root_of_unity());
        assert!(!f7.from_integer(3).is_cube_root_of_unity());
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "7", "-3", "5/9", "-11/4"] {
            let v = parse_scalar(Field::Rational, s).unwrap();
            assert_eq!(scalar_to_string(&v), s);
        }
        let f = Field::prime(11).unwrap();
        assert_eq!(parse_scalar(f, "8").unwrap(), f.from_integer(8));
        assert!(parse_scalar(Field::Rational, "x").is_err());
    }
}
