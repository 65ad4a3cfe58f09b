//! Exact rational helpers: parsing, formatting, and the `{"num","den"}`
//! JSON encoding used by certificates and density reports.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Small nonnegative rational used for densities (`e(H)/v(H)` style values).
pub type Rat = Ratio<u64>;

/// Parses `"a/b"`, a plain integer, or a decimal like `"0.25"` into an exact
/// big rational. Decimals are exact (no float round-trip).
pub fn parse_big_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((a, b)) = s.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| format!("bad numerator {a:?}"))?;
        let den: BigInt = b.trim().parse().map_err(|_| format!("bad denominator {b:?}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| format!("bad integer part {int:?}"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad fractional part {frac:?}"));
        }
        let num: BigInt = frac.parse().unwrap();
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigRational::new(num, den);
        let int_part = BigRational::from_integer(int);
        return Ok(if neg { int_part - frac_part } else { int_part + frac_part });
    }
    let num: BigInt = s.parse().map_err(|_| format!("bad rational {s:?}"))?;
    Ok(BigRational::from_integer(num))
}

/// `{"num": "...", "den": "..."}` with decimal-string integers, so values far
/// beyond 64 bits survive JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RatioJson {
    fn from(r: &BigRational) -> Self {
        RatioJson { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl RatioJson {
    pub fn to_big_rational(&self) -> Result<BigRational, String> {
        let num: BigInt = self.num.parse().map_err(|_| format!("bad num {:?}", self.num))?;
        let den: BigInt = self.den.parse().map_err(|_| format!("bad den {:?}", self.den))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(num, den))
    }
}

/// Serde adapter: field of type `BigRational` encoded as [`RatioJson`].
pub mod big_rational_serde {
    use super::*;
    use serde::{Deserializer, Serializer, de::Error as _};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        RatioJson::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let rj = RatioJson::deserialize(d)?;
        rj.to_big_rational().map_err(D::Error::custom)
    }
}

/// Serde adapter: small nonnegative rational encoded as `{"num": n, "den": d}`
/// with plain JSON integers.
pub mod rat_serde {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serialize, Serializer, de::Error as _};

    #[derive(Serialize, Deserialize)]
    struct RatJson {
        num: u64,
        den: u64,
    }

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        RatJson { num: *r.numer(), den: *r.denom() }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let rj = RatJson::deserialize(d)?;
        if rj.den == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rat::new(rj.num, rj.den))
    }
}

/// Floor of a big rational as `i64` (errors if out of range).
pub fn floor_i64(r: &BigRational) -> Result<i64, String> {
    let f = r.floor();
    let int = f.numer(); // floor() has denominator 1
    i64::try_from(int.clone()).map_err(|_| format!("floor {int} out of i64 range"))
}

/// Formats a rational for human output, e.g. `3/2` or `7`.
pub fn display_big(r: &BigRational) -> String {
    if r.denom().abs() == BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_decimals() {
        assert_eq!(parse_big_rational("2/3").unwrap(), BigRational::new(2.into(), 3.into()));
        assert_eq!(parse_big_rational("7").unwrap(), BigRational::from_integer(7.into()));
        assert_eq!(parse_big_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_big_rational("-1.5").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert!(parse_big_rational("1/0").is_err());
        assert!(parse_big_rational("x").is_err());
    }

    #[test]
    fn ratio_json_round_trip() {
        let r = BigRational::new(409.into(), 410.into());
        let j = RatioJson::from(&r);
        assert_eq!(j.to_big_rational().unwrap(), r);
    }

    #[test]
    fn floor_matches_arithmetic() {
        let r = parse_big_rational("8/9").unwrap();
        assert_eq!(floor_i64(&r).unwrap(), 0);
        let r = parse_big_rational("-8/9").unwrap();
        assert_eq!(floor_i64(&r).unwrap(), -1);
    }
}
