//! Exact rational weights and their text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;

use crate::error::{Error, Result};

pub type Weight = BigRational;

pub fn int(v: i64) -> Weight {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Weight {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn unit_weights(n: usize) -> Vec<Weight> {
    vec![Weight::one(); n]
}

pub fn sum(ws: &[Weight]) -> Weight {
    ws.iter().fold(Weight::zero(), |acc, w| acc + w)
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"0.34"`.
pub fn parse_rational(text: &str) -> Result<Weight> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 60 {
            return Err(bad());
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let joined = format!("{digits}{frac}");
        let mut num: BigInt = joined.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

pub fn format_rational(w: &Weight) -> String {
    if w.is_integer() {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

pub fn is_non_negative(w: &Weight) -> bool {
    !w.is_negative()
}

/// Smallest integer ≥ `w`.
pub fn ceil(w: &Weight) -> BigInt {
    w.ceil().to_integer()
}

pub fn to_f64(w: &Weight) -> f64 {
    use num_traits::ToPrimitive;
    w.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter: integers are written as JSON numbers, everything else as
/// `"p/q"` strings. Both forms are accepted on input.
pub mod serde_weight {
    use super::*;
    use num_traits::ToPrimitive;

    pub fn serialize<S: Serializer>(w: &Weight, s: S) -> std::result::Result<S::Ok, S::Error> {
        if w.is_integer() {
            if let Some(v) = w.numer().to_i64() {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&format_rational(w))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Weight, D::Error> {
        d.deserialize_any(WeightVisitor)
    }

    pub(super) struct WeightVisitor;

    impl Visitor<'_> for WeightVisitor {
        type Value = Weight;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("an integer or a rational string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Weight, E> {
            Ok(int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Weight, E> {
            Ok(BigRational::from_integer(BigInt::from(v)))
        }

        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Weight, E> {
            parse_rational(v).map_err(E::custom)
        }
    }
}

pub mod serde_weight_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Deserialize;

    #[derive(Deserialize)]
    struct Wrapped(#[serde(with = "super::serde_weight")] Weight);

    pub fn serialize<S: Serializer>(ws: &[Weight], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(ws.len()))?;
        for w in ws {
            seq.serialize_element(&Ser(w))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Weight>, D::Error> {
        let v: Vec<Wrapped> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }

    struct Ser<'a>(&'a Weight);

    impl serde::Serialize for Ser<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            super::serde_weight::serialize(self.0, s)
        }
    }
}

pub mod serde_weight_opt {
    use super::*;
    use serde::Deserialize;

    #[derive(Deserialize)]
    struct Wrapped(#[serde(with = "super::serde_weight")] Weight);

    pub fn serialize<S: Serializer>(
        w: &Option<Weight>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match w {
            Some(w) => super::serde_weight::serialize(w, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Weight>, D::Error> {
        let v: Option<Wrapped> = Option::deserialize(d)?;
        Ok(v.map(|w| w.0))
    }
}

pub fn one() -> Weight {
    Weight::one()
}


pub mod serde_weight_vec_opt {
    use super::*;
    use serde::Deserialize;

    #[derive(Deserialize)]
    struct Wrapped(#[serde(with = "super::serde_weight_vec")] Vec<Weight>);

    pub fn serialize<S: Serializer>(
        ws: &Option<Vec<Weight>>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match ws {
            Some(ws) => super::serde_weight_vec::serialize(ws, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Vec<Weight>>, D::Error> {
        let v: Option<Wrapped> = Option::deserialize(d)?;
        Ok(v.map(|w| w.0))
    }
}

/// Weights rescaled to integers over a common denominator, so hot loops
/// can add machine integers instead of rationals.
pub(crate) mod scaled {
    use super::*;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    pub(crate) trait Accum: Clone + Ord + Send + Sync + std::fmt::Debug {
        fn zero() -> Self;
        fn plus(&self, other: &Self) -> Self;
        fn minus(&self, other: &Self) -> Self;
        fn to_big(&self) -> BigInt;
    }

    impl Accum for i128 {
        fn zero() -> Self {
            0
        }
        fn plus(&self, other: &Self) -> Self {
            self + other
        }
        fn minus(&self, other: &Self) -> Self {
            self - other
        }
        fn to_big(&self) -> BigInt {
            BigInt::from(*self)
        }
    }

    impl Accum for BigInt {
        fn zero() -> Self {
            <BigInt as Zero>::zero()
        }
        fn plus(&self, other: &Self) -> Self {
            self + other
        }
        fn minus(&self, other: &Self) -> Self {
            self - other
        }
        fn to_big(&self) -> BigInt {
            self.clone()
        }
    }

    pub(crate) enum Scaled {
        Small(Vec<i128>),
        Big(Vec<BigInt>),
    }

    /// Integer numerators and their common denominator.
    pub(crate) fn scale(ws: &[Weight]) -> (Scaled, BigInt) {
        let den = ws.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let nums: Vec<BigInt> = ws.iter().map(|w| w.numer() * (&den / w.denom())).collect();
        let total: BigInt = nums.iter().map(|x| x.abs()).sum();
        let limit = BigInt::from(i128::MAX / 4);
        if total <= limit {
            (
                Scaled::Small(nums.iter().map(|x| x.to_i128().unwrap()).collect()),
                den,
            )
        } else {
            (Scaled::Big(nums), den)
        }
    }

    pub(crate) fn unscale<W: Accum>(total: &W, den: &BigInt) -> Weight {
        BigRational::new(total.to_big(), den.clone())
    }
}
