//! Exact scalars and the integer sequences every other module leans on.
//!
//! `BigInt` and `Rational` come from `num`; rationals are always reduced with a
//! positive denominator, so structural equality is numeric equality. Textual
//! form is `"p/q"`, or `"p"` when `q = 1`.

use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Number of Sylvester terms precomputed in the shared table.
pub const SYLVESTER_TABLE_LEN: usize = 16;

fn sylvester_cache() -> &'static RwLock<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut table = Vec::with_capacity(SYLVESTER_TABLE_LEN);
        let mut s = BigInt::from(2);
        for _ in 0..SYLVESTER_TABLE_LEN {
            table.push(s.clone());
            s = next_sylvester(&s);
        }
        RwLock::new(table)
    })
}

fn next_sylvester(s: &BigInt) -> BigInt {
    s * (s - 1u32) + 1u32
}

/// The `n`-th Sylvester number: `s_1 = 2`, `s_{i+1} = s_1 ⋯ s_i + 1`.
/// Terms past the precomputed table are appended to it on first use.
pub fn sylvester(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let cache = sylvester_cache();
    {
        let table = cache.read().expect("sylvester cache poisoned");
        if n <= table.len() {
            return Ok(table[n - 1].clone());
        }
    }
    let mut table = cache.write().expect("sylvester cache poisoned");
    while table.len() < n {
        let next = next_sylvester(table.last().expect("nonempty"));
        table.push(next);
    }
    Ok(table[n - 1].clone())
}

/// Upper bound on the normalised dual volume of a canonical Fano `n`-simplex:
/// 9 in dimension two, `2(s_n − 1)²` otherwise.
pub fn bound_b(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    if n == 2 {
        return Ok(BigInt::from(9));
    }
    let s = sylvester(n)? - 1u32;
    Ok(&s * &s * 2u32)
}

/// `2(s_d − 1)² / d!`, the sharp bound on the relative dual volume.
pub fn dual_volume_bound(d: usize) -> Result<Rational> {
    if d == 0 {
        return Err(Error::ZeroIndex);
    }
    let s = sylvester(d)? - 1u32;
    Ok(Rational::new(&s * &s * 2u32, factorial(d)))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(Σ parts)! / Π parts_i!`.
pub fn multinomial(parts: &[usize]) -> BigInt {
    let mut total = 0usize;
    let mut acc = BigInt::one();
    for &p in parts {
        // running product of binomials C(total + p, p) keeps every step integral
        for k in 1..=p {
            total += 1;
            acc = acc * total / k;
        }
    }
    acc
}

/// `∫_{Δ_(a)} (1 − α_1 − ⋯ − α_a)^b dα = b! / (a + b)!`.
pub fn simplex_power_integral(a: usize, b: usize) -> Rational {
    Rational::new(factorial(b), factorial(a + b))
}

/// The Kollár–Miyaoka–Mori degree bound `(3(2^d − 1)(d + 1)^{(d+1)(2^d−1)})^d`.
pub fn kmm_bound(d: usize) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::ZeroIndex);
    }
    if d > 8 {
        log::warn!("kmm_bound({d}) is astronomically large");
    }
    let m = (BigInt::one() << d) - 1u32;
    let m_usize: usize = (1usize << d) - 1;
    let inner = BigInt::from(3u32) * &m * num_traits::pow(BigInt::from(d + 1), (d + 1) * m_usize);
    Ok(num_traits::pow(inner, d))
}

pub fn rational_from_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{t}: {e}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{t}: {e}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("{t}: zero denominator")));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(
            BigInt::from_str(t).map_err(|e| Error::Parse(format!("{t}: {e}")))?,
        ),
    };
    Ok(parsed)
}

pub fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))
}

/// Least common multiple of the denominators of `v`.
pub fn denominator_lcm<'a>(v: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    v.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Gcd of the absolute values; zero for an all-zero slice.
pub fn gcd_all<'a>(v: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    v.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Divides out the content of an integer vector; zero stays zero.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = gcd_all(v.iter());
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub fn floor_div(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil_div(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn abs_rational(q: &Rational) -> Rational {
    q.abs()
}

/// A rational that (de)serialises as its exact decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(pub Rational);

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumberOrString {
    Int(i64),
    Str(String),
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match NumberOrString::deserialize(deserializer)? {
            NumberOrString::Int(n) => Ok(ExactRational(rational_from_int(n))),
            NumberOrString::Str(s) => parse_rational(&s)
                .map(ExactRational)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// A big integer that (de)serialises as its decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactInt(pub BigInt);

impl Serialize for ExactInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match NumberOrString::deserialize(deserializer)? {
            NumberOrString::Int(n) => Ok(ExactInt(BigInt::from(n))),
            NumberOrString::Str(s) => parse_bigint(&s)
                .map(ExactInt)
                .map_err(serde::de::Error::custom),
        }
    }
}
