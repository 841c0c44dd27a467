//! Exact rational helpers on top of `num::BigRational`.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

/// Exact rational number used for every coordinate, weight and mass.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// Parse `p`, `p/q` or a finite decimal such as `-0.25`.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().ok()? };
        let digits: BigInt = fp.parse().ok()?;
        let scale = num::pow(BigInt::from(10), fp.len());
        let v = Q::new(whole * &scale + digits, scale);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Q::from_integer)
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vec(xs: &[Q]) -> String {
    xs.iter().map(fmt).collect::<Vec<_>>().join(",")
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rational enclosure `[lo, hi]` of `sqrt(x)` for `x >= 0`, with
/// `hi - lo <= 2^-bits`. Exact (`lo == hi`) when `x` is a perfect square.
pub fn sqrt_bounds(x: &Q, bits: u32) -> (Q, Q) {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if let Some(r) = exact_sqrt(x) {
        return (r.clone(), r);
    }
    // sqrt(n/d) = sqrt(n*d*4^bits) / (d*2^bits)
    let scale = BigInt::one() << bits;
    let d = x.denom().clone();
    let radicand = x.numer() * &d * &scale * &scale;
    let s = radicand.sqrt();
    let denom = d * scale;
    (Q::new(s.clone(), denom.clone()), Q::new(s + 1, denom))
}

/// `Some(sqrt(x))` when it is rational.
pub fn exact_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3/4"), Some(frac(3, 4)));
        assert_eq!(parse("-6/8"), Some(frac(-3, 4)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("-0.25"), Some(frac(-1, 4)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(fmt(&frac(6, 4)), "3/2");
        assert_eq!(fmt(&int(-2)), "-2");
    }

    #[test]
    fn sqrt_enclosure() {
        let (lo, hi) = sqrt_bounds(&int(2), 20);
        assert!(&lo * &lo <= int(2) && &hi * &hi >= int(2));
        assert!(hi - lo <= frac(1, 1 << 20));
        assert_eq!(sqrt_bounds(&frac(9, 4), 8), (frac(3, 2), frac(3, 2)));
    }
}
