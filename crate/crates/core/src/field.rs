//! Exact scalars over the rationals or a prime field.
//!
//! Every `Scalar` knows its field; mixing fields in arithmetic is a
//! programming error and panics (the checked entry points on [`FieldSpec`]
//! return `Err` instead).  Prime moduli are limited to `p < 2^31` so that all
//! intermediate products fit in `u64`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 1 << 31;

/// The coefficient field: `Q` or `F_p` for a prime `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    Q,
    Fp(u32),
}

impl FieldSpec {
    /// Validates the modulus: `Fp(p)` requires `p` prime and `p < 2^31`.
    pub fn validate(self) -> Result<Self> {
        match self {
            FieldSpec::Q => Ok(self),
            FieldSpec::Fp(p) => {
                if (p as u64) >= MAX_MODULUS || !is_prime(p) {
                    Err(Error::BadModulus(p.to_string()))
                } else {
                    Ok(self)
                }
            }
        }
    }

    /// Parses `"Q"` or `"Fp:<p>"`.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldSpec::Q);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u32 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus {rest:?}")))?;
            return FieldSpec::Fp(p).validate();
        }
        Err(Error::Parse(format!("bad field {s:?} (expected Q or Fp:<p>)")))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Q => 0,
            FieldSpec::Fp(p) => p as u64,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::zero()),
            FieldSpec::Fp(p) => Scalar::Fp { p, v: 0 },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => Scalar::Fp { p, v: i64_mod(n, p) },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::from_integer(n.clone())),
            FieldSpec::Fp(p) => {
                let v = n.mod_floor(&BigInt::from(p));
                let (_, digits) = v.to_u64_digits();
                Scalar::Fp { p, v: digits.first().copied().unwrap_or(0) as u32 }
            }
        }
    }

    /// Builds `a/b`; fails on `b = 0` (or `b ≡ 0 mod p`).
    pub fn fraction(self, a: i64, b: i64) -> Result<Scalar> {
        let num = self.from_i64(a);
        let den = self.from_i64(b);
        num.div(&den)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An exact field element.  Rationals are kept reduced with positive
/// denominator (guaranteed by `BigRational`); residues satisfy `v < p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u32, v: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    fn check_same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ))
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Q(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Q(r.recip()))
                }
            }
            Scalar::Fp { p, v } => {
                let i = inv_mod(*v, *p).ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Fp { p: *p, v: i })
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field().one();
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Exact square root.  Over `Q` both numerator and denominator must be
    /// perfect squares; over `F_p` a Tonelli–Shanks witness is produced.
    pub fn sqrt(&self) -> Result<Scalar> {
        match self {
            Scalar::Q(r) => {
                if r.is_negative() {
                    return Err(Error::NotSquare);
                }
                let num = sqrt_exact(r.numer().magnitude()).ok_or(Error::NotSquare)?;
                let den = sqrt_exact(r.denom().magnitude()).ok_or(Error::NotSquare)?;
                Ok(Scalar::Q(BigRational::new(
                    BigInt::from_biguint(Sign::Plus, num),
                    BigInt::from_biguint(Sign::Plus, den),
                )))
            }
            Scalar::Fp { p, v } => {
                let w = sqrt_mod(*v, *p).ok_or(Error::NotSquare)?;
                Ok(Scalar::Fp { p: *p, v: w })
            }
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_ok()
    }

    /// The underlying rational, for `Q` scalars only.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u32> {
        match self {
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => Some(*v),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $qop:tt, $fpop:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a $qop b),
                    (Scalar::Fp { p: p1, v: a }, Scalar::Fp { p: p2, v: b }) if p1 == p2 => {
                        Scalar::Fp { p: *p1, v: $fpop(*a, *b, *p1) }
                    }
                    _ => panic!(
                        "field mismatch: {} vs {}",
                        self.field(),
                        rhs.field()
                    ),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

fn fp_add(a: u32, b: u32, p: u32) -> u32 {
    (((a as u64) + (b as u64)) % (p as u64)) as u32
}

fn fp_sub(a: u32, b: u32, p: u32) -> u32 {
    (((a as u64) + (p as u64) - (b as u64)) % (p as u64)) as u32
}

fn fp_mul(a: u32, b: u32, p: u32) -> u32 {
    (((a as u64) * (b as u64)) % (p as u64)) as u32
}

scalar_binop!(Add, add, +, fp_add);
scalar_binop!(Sub, sub, -, fp_sub);
scalar_binop!(Mul, mul, *, fp_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(-r),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: fp_sub(0, *v, *p) },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn i64_mod(n: i64, p: u32) -> u32 {
    n.rem_euclid(p as i64) as u32
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // Deterministic Miller–Rabin; these witnesses cover all n < 3.2e18.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = a % n as u64;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a as u32, d as u64, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = fp_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc: u32 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_mul(acc, base, p);
        }
        base = fp_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a == 0 {
        return None;
    }
    // Extended Euclid on (a, p); p is prime so gcd = 1.
    let (mut r0, mut r1) = (a as i64, p as i64);
    let (mut t0, mut t1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Some(t0.rem_euclid(p as i64) as u32)
}

/// Tonelli–Shanks square root mod an odd prime (trivial for `p = 2`).
fn sqrt_mod(a: u32, p: u32) -> Option<u32> {
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, ((p - 1) / 2) as u64, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, ((p + 1) / 4) as u64, p));
    }
    // Write p−1 = q·2^s with q odd and walk the 2-Sylow tower.
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, ((p - 1) / 2) as u64, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q as u64, p);
    let mut t = pow_mod(a, q as u64, p);
    let mut r = pow_mod(a, ((q + 1) / 2) as u64, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = fp_mul(tt, tt, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = fp_mul(b, b, p);
        }
        m = i;
        c = fp_mul(b, b, p);
        t = fp_mul(t, c, p);
        r = fp_mul(r, b, p);
    }
    Some(r)
}

fn sqrt_exact(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_validation() {
        assert!(FieldSpec::Fp(101).validate().is_ok());
        assert!(FieldSpec::Fp(2).validate().is_ok());
        assert!(FieldSpec::Fp(2147483647).validate().is_ok());
        assert!(FieldSpec::Fp(1).validate().is_err());
        assert!(FieldSpec::Fp(91).validate().is_err());
        assert!(FieldSpec::Fp(2147483648).validate().is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["Q", "Fp:101", "Fp:2"] {
            assert_eq!(FieldSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(FieldSpec::parse("Fp:91").is_err());
        assert!(FieldSpec::parse("R").is_err());
    }

    #[test]
    fn rational_arithmetic() {
        let f = FieldSpec::Q;
        let a = f.fraction(1, 2).unwrap();
        let b = f.fraction(1, 3).unwrap();
        assert_eq!(&a + &b, f.fraction(5, 6).unwrap());
        assert_eq!(&a * &b, f.fraction(1, 6).unwrap());
        assert_eq!(a.div(&b).unwrap(), f.fraction(3, 2).unwrap());
        assert_eq!(a.to_string(), "1/2");
        assert_eq!((-&a).to_string(), "-1/2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::Fp(101);
        let a = f.from_i64(-1);
        assert_eq!(a.as_residue(), Some(100));
        assert_eq!((&a * &a).as_residue(), Some(1));
        let b = f.from_i64(37);
        assert!((&b * &b.inv().unwrap()).is_one());
        assert!(f.zero().inv().is_err());
    }

    #[test]
    fn fraction_by_zero_denominator() {
        assert!(FieldSpec::Q.fraction(1, 0).is_err());
        // 5 ≡ 0 mod 5: the denominator vanishes in the target field.
        assert!(FieldSpec::Fp(5).fraction(1, 5).is_err());
    }

    #[test]
    fn square_roots_over_q() {
        let f = FieldSpec::Q;
        assert_eq!(f.fraction(9, 4).unwrap().sqrt().unwrap(), f.fraction(3, 2).unwrap());
        assert!(f.from_i64(2).sqrt().is_err());
        assert!(f.from_i64(-4).sqrt().is_err());
        assert_eq!(f.zero().sqrt().unwrap(), f.zero());
    }

    #[test]
    fn square_roots_mod_p() {
        // p ≡ 1 mod 4 exercises the full Tonelli–Shanks loop.
        for p in [2u32, 3, 101, 65537, 2147483647] {
            let f = FieldSpec::Fp(p);
            for v in 0..p.min(200) {
                let a = f.from_i64(v as i64);
                let sq = &a * &a;
                let w = sq.sqrt().expect("square of a square");
                assert_eq!(&w * &w, sq);
            }
        }
        // Exhaustive count over F_13: (p+1)/2 squares including zero.
        let f = FieldSpec::Fp(13);
        let count = (0..13).filter(|&v| f.from_i64(v).is_square()).count();
        assert_eq!(count, 7);
        assert!(!f.from_i64(2).is_square());
    }

    #[test]
    fn pow_with_negative_exponent() {
        let f = FieldSpec::Fp(101);
        let a = f.from_i64(3);
        let inv2 = a.pow(-2).unwrap();
        assert!((&inv2 * &a.pow(2).unwrap()).is_one());
        assert!(f.zero().pow(-1).is_err());
        assert!(f.zero().pow(0).unwrap().is_one());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn cross_field_panics() {
        let _ = &FieldSpec::Q.one() + &FieldSpec::Fp(7).one();
    }
}
