use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. `Ratio` keeps values reduced with a positive denominator.
pub type Rational = Ratio<i128>;

pub fn rat(numer: i128, denom: i128) -> Rational {
    Ratio::new(numer, denom)
}

pub fn int(n: i64) -> Rational {
    Ratio::from_integer(n as i128)
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| Error::parse(format!("bad rational `{t}`")))?;
            let d: i128 = d.trim().parse().map_err(|_| Error::parse(format!("bad rational `{t}`")))?;
            if d == 0 {
                return Err(Error::parse(format!("zero denominator in `{t}`")));
            }
            Ratio::new(n, d)
        }
        None => Ratio::from_integer(
            t.parse::<i128>()
                .map_err(|_| Error::parse(format!("bad rational `{t}`")))?,
        ),
    };
    Ok(parsed)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// Representative of `r` modulo 1 in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn frac_vec(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(frac).collect()
}

pub fn is_integer_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i128 {
    values.into_iter().fold(1i128, |acc, x| acc.lcm(x.denom()))
}

/// `floor(sqrt(r))` for `r >= 0`, exact.
pub fn floor_sqrt(r: &Rational) -> i128 {
    debug_assert!(!r.is_negative());
    if r.is_zero() {
        return 0;
    }
    let (a, b) = (*r.numer(), *r.denom());
    // floor(sqrt(a/b)) = floor(isqrt(a*b) / b)
    num_integer::sqrt(a * b) / b
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn lift_int_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Serde helper writing a rational as its `"p/q"` string.
pub fn serialize<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["1/2", "-3/4", "0", "7", "2/4"] {
            let r = parse_rational(text).unwrap();
            assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
        }
        assert_eq!(parse_rational("2/4").unwrap().to_string(), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn floor_sqrt_is_exact() {
        assert_eq!(floor_sqrt(&rat(9, 4)), 1);
        assert_eq!(floor_sqrt(&rat(4, 1)), 2);
        assert_eq!(floor_sqrt(&rat(99, 100)), 0);
        assert_eq!(floor_sqrt(&rat(1, 1)), 1);
        for n in 0..200i128 {
            for d in 1..12i128 {
                let s = floor_sqrt(&rat(n, d));
                assert!(rat(s * s, 1) <= rat(n, d));
                assert!(rat((s + 1) * (s + 1), 1) > rat(n, d));
            }
        }
    }

    #[test]
    fn frac_is_in_unit_interval() {
        assert_eq!(frac(&rat(-1, 4)), rat(3, 4));
        assert_eq!(frac(&rat(5, 2)), rat(1, 2));
        assert_eq!(frac(&int(3)), int(0));
    }
}
