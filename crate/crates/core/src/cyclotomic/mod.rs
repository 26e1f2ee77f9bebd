//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] is stored at its minimal conductor `e` as the `phi(e)`
//! coefficients of its residue modulo the `e`-th cyclotomic polynomial, in the
//! basis `1, z, ..., z^(phi(e)-1)` with `z = exp(2*pi*i/e)`. That form is
//! unique, so structural equality and hashing are value equality.

mod accum;
mod poly;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};

pub use accum::{exp_form_is_zero, AccInt, ExponentSum, IntTerms};
pub use poly::cyclotomic_polynomial;

/// Scalar field for the power-basis coefficients.
pub trait Coeff:
    Clone + fmt::Debug + Eq + Hash + Num + Signed + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;
    /// Numerator and positive denominator in lowest terms.
    fn to_ratio(&self) -> (BigInt, BigInt);
    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self>;

    fn is_integer(&self) -> bool {
        self.to_ratio().1.is_one()
    }
}

impl Coeff for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_ratio(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }

    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    }
}

impl Coeff for Ratio<i64> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v)
    }

    fn to_ratio(&self) -> (BigInt, BigInt) {
        (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self> {
        let (n, d) = (num.to_i64()?, den.to_i64()?);
        if d == 0 {
            return None;
        }
        Some(Ratio::new(n, d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic<T: Coeff> {
    conductor: u64,
    coeffs: Vec<T>,
}

impl<T: Coeff> Cyclotomic<T> {
    pub fn zero() -> Self {
        Self::from_rational(T::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(T::one())
    }

    pub fn from_rational(q: T) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(T::from_int(v))
    }

    /// The primitive root of unity `exp(2*pi*i/e)`.
    pub fn zeta(e: u64) -> Self {
        Self::zeta_pow(e, 1)
    }

    /// `exp(2*pi*i*j/e)`.
    pub fn zeta_pow(e: u64, j: i64) -> Self {
        Self::from_exponents(e, [(j, T::one())])
    }

    /// Builds `sum c * z_e^j` from exponent/coefficient pairs (exponents taken mod `e`).
    pub fn from_exponents<I>(e: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
    {
        let mut dense = vec![T::zero(); e as usize];
        for (j, c) in terms {
            let slot = &mut dense[j.rem_euclid(e as i64) as usize];
            *slot = slot.clone() + c;
        }
        Self::canonical(e, poly::reduce(e, dense))
    }

    /// Accepts a power-basis vector of length `phi(e)` at conductor `e` and minimizes it.
    pub fn from_power_basis(e: u64, coeffs: Vec<T>) -> Result<Self> {
        if e == 0 {
            return Err(Error::Malformed("conductor 0".into()));
        }
        let phi = crate::arith::euler_phi(e) as usize;
        if coeffs.len() != phi {
            return Err(Error::Malformed(format!(
                "conductor {e} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self::canonical(e, coeffs))
    }

    fn canonical(e: u64, coeffs: Vec<T>) -> Self {
        let (conductor, coeffs) = poly::minimize(e, coeffs);
        Cyclotomic { conductor, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs of the canonical form.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u64, c))
    }

    /// Power-basis coefficients of the same value at conductor `e`, a multiple of
    /// the current conductor.
    pub fn lift_to(&self, e: u64) -> Vec<T> {
        assert!(
            e % self.conductor == 0,
            "cannot lift conductor {} to {e}",
            self.conductor
        );
        let step = e / self.conductor;
        let mut dense = vec![T::zero(); e as usize];
        for (j, c) in self.terms() {
            dense[(j * step) as usize] = c.clone();
        }
        poly::reduce(e, dense)
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    /// The rational value, when the number lies in `Q`.
    pub fn is_rational(&self) -> Option<T> {
        (self.conductor == 1).then(|| self.coeffs[0].clone())
    }

    /// Image under the automorphism `z -> z^k`.
    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        let e = self.conductor;
        if gcd(k.unsigned_abs() % e.max(1), e) != 1 && e != 1 {
            return Err(Error::NotCoprime(k, e));
        }
        if e == 1 {
            return Ok(self.clone());
        }
        let k = k.rem_euclid(e as i64) as u64;
        let mut dense = vec![T::zero(); e as usize];
        for (j, c) in self.terms() {
            dense[((j * k) % e) as usize] = c.clone();
        }
        // The image generates the same field, so the conductor is unchanged.
        Ok(Cyclotomic {
            conductor: e,
            coeffs: poly::reduce(e, dense),
        })
    }

    pub fn conjugate(&self) -> Self {
        self.galois_apply(-1)
            .expect("-1 is a unit modulo every conductor")
    }

    /// `z * conjugate(z)`.
    pub fn abs_square(&self) -> Self {
        self * &self.conjugate()
    }

    /// Multiplicative inverse as the product of the other Galois conjugates over the norm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let e = self.conductor;
        let mut others = Self::one();
        for k in crate::arith::units(e) {
            if k == 1 % e {
                continue;
            }
            others = &others * &self.galois_apply(k as i64).unwrap();
        }
        let norm = (self * &others)
            .is_rational()
            .expect("the norm of a cyclotomic number is rational");
        let scale = Self::from_rational(T::one() / norm);
        Some(&others * &scale)
    }

    /// Complex approximation, for display and spot checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.conductor as f64;
        self.terms().fold((0.0, 0.0), |(re, im), (j, c)| {
            let (n, d) = c.to_ratio();
            let v = n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * j as f64 / e;
            (re + v * angle.cos(), im + v * angle.sin())
        })
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let e = lcm(self.conductor, other.conductor);
        let mut dense = vec![T::zero(); e as usize];
        let (sa, sb) = (e / self.conductor, e / other.conductor);
        for (j, c) in self.terms() {
            dense[(j * sa) as usize] = c.clone();
        }
        for (j, c) in other.terms() {
            let slot = &mut dense[(j * sb) as usize];
            *slot = if negate_other {
                slot.clone() - c.clone()
            } else {
                slot.clone() + c.clone()
            };
        }
        Self::canonical(e, poly::reduce(e, dense))
    }

    fn product(&self, other: &Self) -> Self {
        if let Some(q) = self.is_rational() {
            return other.scale(&q);
        }
        if let Some(q) = other.is_rational() {
            return self.scale(&q);
        }
        let e = lcm(self.conductor, other.conductor);
        let (sa, sb) = (e / self.conductor, e / other.conductor);
        let mut dense = vec![T::zero(); e as usize];
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let slot = &mut dense[((i * sa + j * sb) % e) as usize];
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        Self::canonical(e, poly::reduce(e, dense))
    }

    fn scale(&self, q: &T) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c.clone() * q.clone()).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<T: Coeff> $trait<&Cyclotomic<T>> for &Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $method(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
                let f: fn(&Cyclotomic<T>, &Cyclotomic<T>) -> Cyclotomic<T> = $body;
                f(self, rhs)
            }
        }
        impl<T: Coeff> $trait for Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $method(self, rhs: Cyclotomic<T>) -> Cyclotomic<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.combine(b, false));
forward_binop!(Sub, sub, |a, b| a.combine(b, true));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl<T: Coeff> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Coeff> Neg for Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        -&self
    }
}

fn fmt_ratio(n: &BigInt, d: &BigInt) -> String {
    if d.is_one() {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

impl<T: Coeff> Cyclotomic<T> {
    /// The polynomial part of the text rendering, without the conductor suffix.
    pub fn poly_string(&self) -> String {
        let mut out = String::new();
        for (j, c) in self.terms() {
            let (n, d) = c.to_ratio();
            let negative = n.is_negative();
            let abs = n.abs();
            let magnitude = if j == 0 {
                fmt_ratio(&abs, &d)
            } else {
                let power = if j == 1 {
                    "z".to_string()
                } else {
                    format!("z^{j}")
                };
                if abs.is_one() && d.is_one() {
                    power
                } else {
                    format!("{}*{power}", fmt_ratio(&abs, &d))
                }
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&magnitude);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<T: Coeff> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            write!(f, "{}", self.poly_string())
        } else {
            write!(f, "{} (conductor {})", self.poly_string(), self.conductor)
        }
    }
}

fn bigint_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::from(v.to_string()),
    }
}

fn json_bigint(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl<T: Coeff> Cyclotomic<T> {
    /// `{"e": conductor, "coeffs": [[num, den], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| {
                let (n, d) = c.to_ratio();
                serde_json::Value::Array(vec![bigint_json(&n), bigint_json(&d)])
            })
            .collect();
        serde_json::json!({ "e": self.conductor, "coeffs": coeffs })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Malformed(format!("cyclotomic value: {what}"));
        let e = v
            .get("e")
            .and_then(|e| e.as_u64())
            .ok_or_else(|| bad("missing `e`"))?;
        let coeffs = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| bad("missing `coeffs`"))?
            .iter()
            .map(|pair| {
                let pair = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| bad("coefficient pair"))?;
                let n = json_bigint(&pair[0]).ok_or_else(|| bad("numerator"))?;
                let d = json_bigint(&pair[1]).ok_or_else(|| bad("denominator"))?;
                T::from_ratio(n, d).ok_or_else(|| bad("coefficient out of range"))
            })
            .collect::<Result<Vec<T>>>()?;
        Self::from_power_basis(e, coeffs)
    }
}

impl<T: Coeff> Serialize for Cyclotomic<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de, T: Coeff> Deserialize<'de> for Cyclotomic<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Self::from_json(&v).map_err(D::Error::custom)
    }
}

/// Degree over `Q` of the field generated by `values`: the index in `(Z/c)^x` of the
/// stabilizer of every value, `c` the least common conductor.
pub fn field_index<T: Coeff>(values: &[Cyclotomic<T>]) -> u64 {
    let c = values.iter().fold(1, |acc, v| lcm(acc, v.conductor()));
    let units = crate::arith::units(c);
    let stabilizer = units
        .iter()
        .filter(|&&k| {
            values
                .iter()
                .all(|v| v.galois_apply(k as i64).map(|w| &w == v).unwrap_or(false))
        })
        .count() as u64;
    units.len() as u64 / stabilizer
}

/// Least common multiple of the conductors of `values`.
pub fn common_conductor<T: Coeff>(values: &[Cyclotomic<T>]) -> u64 {
    values.iter().fold(1, |acc, v| acc.lcm(&v.conductor()))
}
