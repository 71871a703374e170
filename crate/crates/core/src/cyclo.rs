//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! A [`CycloNumber`] is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}`,
//! reduced modulo the N-th cyclotomic polynomial after every operation, so
//! two values of the same conductor are equal iff their coordinates agree.
//! Values of different conductors are compared and combined in the field of
//! the least common multiple.
//!
//! Internally the coordinates are integer numerators over one shared positive
//! denominator; [`CycloNumber::coeffs`] exposes them as rationals.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest number of decimal digits `to_complex` can honour with f64.
pub const MAX_FLOAT_DIGITS: u32 = 15;

static CYCLOTOMIC_CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();

/// Coefficients (constant term first) of the N-th cyclotomic polynomial.
///
/// Computed once per conductor by dividing `x^N - 1` by `Φ_d` for every
/// proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "conductor must be positive");
    let cache = CYCLOTOMIC_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_monic_division(&poly, &divisor);
        }
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(n, Arc::clone(&poly));
    poly
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(d).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division was not exact");
    quot
}

/// Euler's totient, the degree of Q(ζ_N) over Q.
pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// Reduce an integer polynomial modulo the monic polynomial `modulus`.
fn reduce_in_place(poly: &mut Vec<BigInt>, modulus: &[i64]) {
    let deg = modulus.len() - 1;
    if poly.len() <= deg {
        poly.resize(deg, BigInt::zero());
        return;
    }
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[i]);
        let base = i - deg;
        for (j, &m) in modulus[..deg].iter().enumerate() {
            if m != 0 {
                poly[base + j] -= &c * m;
            }
        }
    }
    poly.truncate(deg);
}

/// An exact element of a cyclotomic field Q(ζ_N).
#[derive(Clone)]
pub struct CycloNumber {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    fn from_parts(conductor: u32, mut num: Vec<BigInt>, den: BigInt) -> Self {
        let modulus = cyclotomic_polynomial(conductor);
        reduce_in_place(&mut num, &modulus);
        let mut out = CycloNumber { conductor, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(conductor: u32) -> Self {
        Self::from_integer(conductor, 0)
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_integer(conductor, 1)
    }

    pub fn from_integer(conductor: u32, value: i64) -> Self {
        let mut num = vec![BigInt::zero(); euler_phi(conductor)];
        num[0] = BigInt::from(value);
        CycloNumber { conductor, num, den: BigInt::one() }
    }

    pub fn from_rational(conductor: u32, value: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); euler_phi(conductor)];
        num[0] = value.numer().clone();
        let mut out = CycloNumber { conductor, num, den: value.denom().clone() };
        out.normalize();
        out
    }

    /// Builds a value from power-basis coordinates; the length must be φ(N).
    pub fn from_coeffs(conductor: u32, coeffs: &[BigRational]) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidConductor(conductor));
        }
        let phi = euler_phi(conductor);
        if coeffs.len() != phi {
            return Err(Error::CoefficientCount { expected: phi, found: coeffs.len() });
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut out = CycloNumber { conductor, num, den };
        out.normalize();
        Ok(out)
    }

    /// ζ_N^j in canonical form; `j` is taken modulo N.
    pub fn root_of_unity(conductor: u32, j: i64) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let e = j.rem_euclid(conductor as i64) as usize;
        let mut num = vec![BigInt::zero(); e.max(euler_phi(conductor)) + 1];
        num[e] = BigInt::one();
        Self::from_parts(conductor, num, BigInt::one())
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates as exact rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The same value in Q(ζ_M); requires N | M.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.conductor) {
            return Err(Error::IncompatibleConductor { from: self.conductor, to: target });
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let len = (self.num.len().saturating_sub(1)) * step + 1;
        let mut num = vec![BigInt::zero(); len.max(euler_phi(target))];
        for (i, c) in self.num.iter().enumerate() {
            num[i * step] = c.clone();
        }
        Ok(Self::from_parts(target, num, self.den.clone()))
    }

    fn unified(&self, other: &Self) -> (std::borrow::Cow<'_, Self>, u32) {
        if self.conductor == other.conductor {
            (std::borrow::Cow::Borrowed(self), self.conductor)
        } else {
            let m = self.conductor.lcm(&other.conductor);
            (std::borrow::Cow::Owned(self.embed(m).expect("lcm is a multiple")), m)
        }
    }

    fn lift(&self, m: u32) -> std::borrow::Cow<'_, Self> {
        if self.conductor == m {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.embed(m).expect("lcm is a multiple"))
        }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let (a, m) = self.unified(other);
        let b = other.lift(m);
        let num: Vec<BigInt> = if a.den == b.den {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if negate { x - y } else { x + y })
                .collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if a.den == b.den { a.den.clone() } else { &a.den * &b.den };
        let mut out = CycloNumber { conductor: m, num, den };
        out.normalize();
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let (a, m) = self.unified(other);
        let b = other.lift(m);
        if a.is_zero() || b.is_zero() {
            return Self::zero(m);
        }
        let n = a.num.len();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Self::from_parts(m, prod, &a.den * &b.den)
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, factor: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * factor.numer()).collect();
        let mut out = CycloNumber {
            conductor: self.conductor,
            num,
            den: &self.den * factor.denom(),
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(factor)))
    }

    /// Complex conjugation, ζ_N ↦ ζ_N^{N-1}.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut num = vec![BigInt::zero(); n.max(self.num.len())];
        for (i, c) in self.num.iter().enumerate() {
            num[(n - i) % n] += c;
        }
        Self::from_parts(self.conductor, num, self.den.clone())
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Multiplicative inverse by the extended Euclidean algorithm modulo Φ_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let a: Vec<BigRational> = self.coeffs();
        let (mut r0, mut r1) = (trim(modulus.clone()), trim(a));
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_N is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let den = s0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num: Vec<BigInt> = s0.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        let inv = Self::from_parts(self.conductor, num, den);
        Ok(inv.scale(&c.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents go through [`CycloNumber::inv`].
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.conductor);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Float embedding under ζ_N ↦ exp(2πi/N).
    pub fn to_c64(&self) -> Complex64 {
        let n = self.conductor as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let angle = std::f64::consts::TAU * i as f64 / n;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        Complex64::new(re, im)
    }

    /// Float embedding rounded to `precision` decimal digits (at most
    /// [`MAX_FLOAT_DIGITS`]).
    pub fn to_complex(&self, precision: u32) -> (f64, f64) {
        let z = self.to_c64();
        let digits = precision.min(MAX_FLOAT_DIGITS) as i32;
        let scale = 10f64.powi(digits);
        let round = |x: f64| {
            let r = (x * scale).round() / scale;
            if r == 0.0 {
                0.0
            } else {
                r
            }
        };
        (round(z.re), round(z.im))
    }

    /// `exp(rπi)` as an exact root of unity.
    pub fn exp_pi_i(r: &BigRational) -> Self {
        let r = reduce_mod_two(r);
        let order = 2 * r.denom().to_u32().expect("exponent denominator fits in u32");
        let j = r.numer().to_i64().expect("exponent numerator fits in i64");
        Self::root_of_unity(order, j)
    }

    /// If this value is a root of unity, its exponent `r` with value
    /// `exp(rπi)`, `r ∈ [0, 2)`.
    pub fn root_of_unity_exponent(&self) -> Option<BigRational> {
        let order = self.conductor.lcm(&2) as i64;
        let z = self.to_c64();
        if (z.norm() - 1.0).abs() > 1e-6 {
            return None;
        }
        let turns = z.arg() / std::f64::consts::TAU;
        let j = (turns * order as f64).round() as i64;
        if *self == Self::root_of_unity(order as u32, j) {
            let r = BigRational::new(BigInt::from(2 * j.rem_euclid(order)), BigInt::from(order));
            Some(r)
        } else {
            None
        }
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + b.len() - 1] / &lead;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= &c * y;
            }
        }
        quot[i] = c;
    }
    rem.truncate(b.len() - 1);
    (trim(quot), trim(rem))
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, m) = self.unified(other);
        let b = other.lift(m);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNumber {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                let f: fn(&CycloNumber, &CycloNumber) -> CycloNumber = $body;
                f(self, rhs)
            }
        }
        impl $trait<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})z^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " [z=ζ_{}]", self.conductor)
    }
}

/// The representative of `r` modulo 2 in `[0, 2)`.
pub fn reduce_mod_two(r: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let q = (r / &two).floor();
    r - q * two
}

/// Serde adapter writing exact rationals as `"p/q"` strings.
pub mod ratio_string {
    use num_rational::BigRational;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// [`ratio_string`] for optional values.
pub mod opt_ratio_string {
    use num_rational::BigRational;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.collect_str(r),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(D::Error::custom))
            .transpose()
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            conductor: self.conductor,
            coeffs: self.coeffs().iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycloNumber::from_coeffs(repr.conductor, &coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, j: i64) -> CycloNumber {
        CycloNumber::root_of_unity(n, j)
    }

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
        assert_eq!(euler_phi(105), 48);
    }

    #[test]
    fn exponent_constructor() {
        let r = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        assert_eq!(CycloNumber::exp_pi_i(&r(1, 2)), z(4, 1));
        assert_eq!(CycloNumber::exp_pi_i(&r(-7, 10)), CycloNumber::exp_pi_i(&r(13, 10)));
        assert_eq!(reduce_mod_two(&r(-7, 10)), r(13, 10));
        assert_eq!(reduce_mod_two(&r(5, 2)), r(1, 2));
        assert_eq!(reduce_mod_two(&r(2, 1)), r(0, 1));
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(z(1, 0), CycloNumber::one(1));
        assert_eq!(&z(3, 1) + &z(3, 2), CycloNumber::from_integer(3, -1));
        let (re, im) = z(4, 1).to_complex(12);
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
        let (re, im) = z(3, 1).to_complex(12);
        assert!((re + 0.5).abs() < 1e-12 && (im - 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert_eq!(z(7, -1), z(7, 6));
    }

    #[test]
    fn field_operation_examples() {
        assert_eq!(&z(8, 1).conj() * &z(8, 1), CycloNumber::one(8));
        assert_eq!(z(3, 1).embed(6).unwrap(), z(6, 2));
        assert_eq!(z(3, 1), z(6, 2));
        let vanishing = (0..5).fold(CycloNumber::zero(5), |acc, j| &acc + &z(5, j));
        assert!(vanishing.is_zero());
        let one = &vanishing + &CycloNumber::one(5);
        assert_eq!(one.inv().unwrap(), CycloNumber::one(5));
    }

    #[test]
    fn errors() {
        assert!(matches!(CycloNumber::zero(7).inv(), Err(Error::DivisionByZero)));
        assert_eq!(CycloNumber::zero(7).inv().unwrap_err().to_string(), "division by zero");
        let err = z(4, 1).embed(6).unwrap_err();
        assert!(err.to_string().contains("incompatible conductor"));
        assert!(CycloNumber::from_coeffs(5, &[BigRational::one()]).is_err());
    }

    #[test]
    fn inverse_of_generic_element() {
        let a = &(&z(15, 1) + &z(15, 4)).scale_int(3) - &CycloNumber::from_integer(15, 2);
        let b = a.inv().unwrap();
        assert_eq!(&a * &b, CycloNumber::one(15));
    }

    #[test]
    fn root_exponent_recovery() {
        let r = z(10, 3).root_of_unity_exponent().unwrap();
        assert_eq!(r, BigRational::new(3.into(), 5.into()));
        assert_eq!(CycloNumber::from_integer(3, -1).root_of_unity_exponent().unwrap(), BigRational::one());
        assert!(CycloNumber::from_integer(3, 2).root_of_unity_exponent().is_none());
    }

    #[test]
    fn serde_round_trip() {
        let a = (&z(12, 5) + &z(12, 2)).scale(&BigRational::new(3.into(), 7.into()));
        let json = serde_json::to_string(&a).unwrap();
        assert!(json.contains("\"conductor\":12"));
        let back: CycloNumber = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
    }
}
