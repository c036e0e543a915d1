//! Exact coefficient arithmetic over the rationals and prime fields.
//!
//! A [`ScalarField`] is a small `Copy` handle; a [`Scalar`] carries enough
//! information (the modulus, for prime fields) to do arithmetic on its own, so
//! the usual operator traits are implemented directly on scalars. Mixing
//! scalars from different fields is a programming error and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field: either the rationals or `F_p` for a 64-bit prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarField {
    Rationals,
    Prime(u64),
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Lowest terms, positive denominator.
    Rational(BigRational),
    /// Residue in `[0, modulus)`.
    Modular { residue: u64, modulus: u64 },
}

impl ScalarField {
    pub fn rationals() -> Self {
        ScalarField::Rationals
    }

    /// `F_p`; rejects composite `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(ScalarField::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarField::Rationals => 0,
            ScalarField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            ScalarField::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            ScalarField::Prime(p) => Scalar::Modular {
                residue: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_usize(&self, n: usize) -> Scalar {
        match *self {
            ScalarField::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            ScalarField::Prime(p) => Scalar::Modular {
                residue: (n as u128 % p as u128) as u64,
                modulus: p,
            },
        }
    }

    /// Multiplicative inverse; zero (including integers divisible by the
    /// characteristic) is reported as "not a unit".
    pub fn inverse(&self, x: &Scalar) -> Result<Scalar> {
        self.check(x);
        if x.is_zero() {
            return Err(Error::NotAUnit(format!("{x} in {self}")));
        }
        Ok(match x {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        Ok(x * &self.inverse(y)?)
    }

    /// Parses the literal syntax: `a/b` (or `a`) for rationals, a bare
    /// integer for prime fields. Prime-field integers are reduced.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::ScalarParse(s.to_string());
        match *self {
            ScalarField::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num).map_err(|_| bad())?;
                let den = BigInt::from_str(den).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            ScalarField::Prime(p) => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                let residue: u64 = r.try_into().map_err(|_| bad())?;
                Ok(Scalar::Modular { residue, modulus: p })
            }
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        matches!(
            (self, x),
            (ScalarField::Rationals, Scalar::Rational(_))
                | (ScalarField::Prime(_), Scalar::Modular { .. })
        ) && match (self, x) {
            (ScalarField::Prime(p), Scalar::Modular { modulus, .. }) => p == modulus,
            _ => true,
        }
    }

    fn check(&self, x: &Scalar) {
        assert!(self.contains(x), "scalar {x} does not belong to {self}");
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rationals => write!(f, "rationals"),
            ScalarField::Prime(p) => write!(f, "prime({p})"),
        }
    }
}

impl FromStr for ScalarField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rationals" | "Q" | "QQ" => return Ok(ScalarField::Rationals),
            _ => {}
        }
        let inner = s
            .strip_prefix("prime(")
            .or_else(|| s.strip_prefix("prime_field("))
            .or_else(|| s.strip_prefix("GF("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
        ScalarField::prime(p)
    }
}

impl Scalar {
    pub fn field(&self) -> ScalarField {
        match self {
            Scalar::Rational(_) => ScalarField::Rationals,
            Scalar::Modular { modulus, .. } => ScalarField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { residue, .. } => *residue == 1,
        }
    }

    /// `-1`-style sign test used only for pretty printing.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {a} ({}) vs {b} ({})", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Modular { residue: a, modulus: p },
                Scalar::Modular { residue: b, modulus: q },
            ) if p == q => Scalar::Modular {
                residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Modular { residue: a, modulus: p },
                Scalar::Modular { residue: b, modulus: q },
            ) if p == q => Scalar::Modular {
                residue: mul_mod(*a, *b, *p),
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
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

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        ScalarField::Rationals.parse(s).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
        assert_eq!(q("2/4").to_string(), "1/2");
        assert_eq!(q("-3/-6").to_string(), "1/2");
        assert_eq!(q("4/-2").to_string(), "-2");
    }

    #[test]
    fn prime_field_multiplication() {
        let f5 = ScalarField::prime(5).unwrap();
        assert_eq!(&f5.from_i64(3) * &f5.from_i64(4), f5.from_i64(2));
        assert_eq!(f5.from_i64(-1).to_string(), "4");
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(ScalarField::prime(6), Err(Error::NotPrime(6)));
        assert_eq!(ScalarField::prime(1), Err(Error::NotPrime(1)));
        assert!(ScalarField::prime(18446744073709551557).is_ok());
        assert!("prime(9)".parse::<ScalarField>().is_err());
    }

    #[test]
    fn inverses() {
        let q = ScalarField::Rationals;
        assert_eq!(q.inverse(&q.from_i64(2)).unwrap(), q.parse("1/2").unwrap());
        let f3 = ScalarField::prime(3).unwrap();
        assert_eq!(f3.inverse(&f3.from_usize(2)).unwrap(), f3.from_i64(2));
        let f2 = ScalarField::prime(2).unwrap();
        assert!(matches!(f2.inverse(&f2.from_usize(2)), Err(Error::NotAUnit(_))));
        assert!(q.inverse(&q.zero()).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(ScalarField::Rationals.parse("1/0").is_err());
        assert!(ScalarField::Rationals.parse("x").is_err());
        assert!(ScalarField::Prime(7).parse("1/2").is_err());
    }

    #[test]
    fn field_descriptors() {
        assert_eq!("rationals".parse::<ScalarField>().unwrap(), ScalarField::Rationals);
        assert_eq!("prime(7)".parse::<ScalarField>().unwrap(), ScalarField::Prime(7));
        assert_eq!(ScalarField::Prime(7).to_string(), "prime(7)");
    }

    fn rational() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| {
            Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
        })
    }

    fn modular(p: u64) -> impl Strategy<Value = Scalar> {
        (0..p).prop_map(move |r| Scalar::Modular { residue: r, modulus: p })
    }

    fn check_axioms(field: ScalarField, a: &Scalar, b: &Scalar, c: &Scalar) {
        assert_eq!(&(a + b) + c, a + &(b + c));
        assert_eq!(&(a * b) * c, a * &(b * c));
        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        assert_eq!(a + b, b + a);
        assert_eq!(a * b, b * a);
        assert_eq!(a + &field.zero(), a.clone());
        assert_eq!(a * &field.one(), a.clone());
        assert!((a + &(-a)).is_zero());
        if !a.is_zero() {
            assert!((a * &field.inverse(a).unwrap()).is_one());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
            check_axioms(ScalarField::Rationals, &a, &b, &c);
        }

        #[test]
        fn prime_field_axioms(a in modular(101), b in modular(101), c in modular(101)) {
            check_axioms(ScalarField::Prime(101), &a, &b, &c);
        }

        #[test]
        fn large_prime_field_axioms(
            a in modular(18446744073709551557),
            b in modular(18446744073709551557),
            c in modular(18446744073709551557),
        ) {
            check_axioms(ScalarField::Prime(18446744073709551557), &a, &b, &c);
        }

        #[test]
        fn print_parse_roundtrip(a in rational(), r in modular(13)) {
            prop_assert_eq!(ScalarField::Rationals.parse(&a.to_string()).unwrap(), a);
            prop_assert_eq!(ScalarField::Prime(13).parse(&r.to_string()).unwrap(), r);
        }
    }

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
    }
}
