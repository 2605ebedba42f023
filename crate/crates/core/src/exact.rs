//! Exact rational helpers: JSON encoding and decimal rendering.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// JSON shape of an exact rational: decimal-string numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for FractionJson {
    fn from(r: &BigRational) -> Self {
        FractionJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl FractionJson {
    pub fn to_rational(&self) -> Result<BigRational, String> {
        let num: BigInt = self
            .num
            .trim()
            .parse()
            .map_err(|_| format!("numerator {:?} is not a decimal integer", self.num))?;
        let den: BigInt = self
            .den
            .trim()
            .parse()
            .map_err(|_| format!("denominator {:?} is not a decimal integer", self.den))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(num, den))
    }
}

/// `#[serde(with = ...)]` adapter for `BigRational` fields.
pub mod ratio_json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        FractionJson::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let f = FractionJson::deserialize(d)?;
        f.to_rational().map_err(serde::de::Error::custom)
    }
}

/// Same as [`ratio_json`] for `Option<BigRational>`, with `None` as `null`.
pub mod opt_ratio_json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(FractionJson::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        match Option::<FractionJson>::deserialize(d)? {
            None => Ok(None),
            Some(f) => f.to_rational().map(Some).map_err(serde::de::Error::custom),
        }
    }
}

/// Big integers as decimal strings.
pub mod int_string {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::fmt::Display;
    use std::str::FromStr;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        v.to_string().serialize(s)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.trim()
            .parse()
            .map_err(|_| serde::de::Error::custom(format!("{s:?} is not a decimal integer")))
    }
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn from_uints(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(
        BigInt::from_biguint(Sign::Plus, num.clone()),
        BigInt::from_biguint(Sign::Plus, den.clone()),
    )
}

/// `numer/denom` or just `numer` for integers.
pub fn fraction_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rounds `num/den` (den > 0) to the nearest integer, halves away from zero.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.abs().div_rem(den);
    let twice = &r * 2u32;
    let q = if &twice >= den { q + 1u32 } else { q };
    if num.is_negative() {
        -q
    } else {
        q
    }
}

/// Fixed-point rendering with exactly `places` digits after the point.
pub fn to_fixed(r: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = round_div(&(r.numer() * &scale), r.denom());
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Decimal rendering with `digits` significant digits, trailing zeros trimmed.
/// Switches to scientific notation outside `1e-6 ≤ |r| < 1e15`.
pub fn to_significant(r: &BigRational, digits: usize) -> String {
    assert!(digits >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10u32);
    // Decimal exponent e with 10^e <= a < 10^(e+1).
    let bits_diff = a.numer().bits() as i64 - a.denom().bits() as i64;
    let mut e = (bits_diff as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(ten.pow(k as u32))
        } else {
            BigRational::new(BigInt::one(), ten.pow((-k) as u32))
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled_r = &a * pow10(shift);
    let mut mant = round_div(scaled_r.numer(), scaled_r.denom());
    if mant == ten.pow(digits as u32) {
        mant /= 10u32;
        e += 1;
    }
    let mant = mant.to_string();
    let body = if (-6..15).contains(&e) {
        if e >= digits as i64 - 1 {
            format!("{mant}{}", "0".repeat((e - (digits as i64 - 1)) as usize))
        } else if e >= 0 {
            let (int, frac) = mant.split_at(e as usize + 1);
            trim_frac(int, frac)
        } else {
            let frac = format!("{}{}", "0".repeat((-e - 1) as usize), mant);
            trim_frac("0", &frac)
        }
    } else {
        let (lead, rest) = mant.split_at(1);
        let m = trim_frac(lead, rest);
        format!("{m}e{e}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_frac(int: &str, frac: &str) -> String {
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

/// Human form: exact fraction plus a 15-significant-digit decimal.
pub fn human(r: &BigRational) -> String {
    let frac = fraction_string(r);
    if r.denom().is_one() {
        frac
    } else {
        format!("{frac} (≈ {})", to_significant(r, 15))
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_rendering() {
        assert_eq!(to_fixed(&ratio(1, 9), 10), "0.1111111111");
        assert_eq!(to_fixed(&ratio(2, 3), 3), "0.667");
        assert_eq!(to_fixed(&ratio(-1, 6), 4), "-0.1667");
        assert_eq!(to_fixed(&ratio(7, 1), 2), "7.00");
        assert_eq!(to_fixed(&ratio(0, 1), 2), "0.00");
    }

    #[test]
    fn significant_rendering() {
        assert_eq!(to_significant(&ratio(1, 6), 15), "0.166666666666667");
        assert_eq!(to_significant(&ratio(1, 3), 3), "0.333");
        assert_eq!(to_significant(&ratio(5, 1), 15), "5");
        assert_eq!(to_significant(&ratio(-1, 8), 15), "-0.125");
        assert_eq!(to_significant(&ratio(999_999, 1_000_000), 3), "1");
        assert_eq!(to_significant(&ratio(1, 10_000_000), 2), "1e-7");
        assert_eq!(to_significant(&ratio(123_456, 1), 3), "123000");
    }

    #[test]
    fn fraction_json_roundtrip() {
        let r = ratio(-4, 6);
        let j = FractionJson::from(&r);
        assert_eq!(j.num, "-2");
        assert_eq!(j.den, "3");
        assert_eq!(j.to_rational().unwrap(), r);
        assert!(FractionJson { num: "1".into(), den: "0".into() }.to_rational().is_err());
    }
}
