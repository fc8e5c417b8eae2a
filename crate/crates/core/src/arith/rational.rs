use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `p`, `-p` or `p/q` with decimal integers.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Representative of `q mod 1` in `[0, 1)`.
pub fn frac_mod1(q: &Rational) -> Rational {
    let fl = q.floor();
    q - fl
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn denom_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Gcd of the numerators (non-negative; zero for an empty or all-zero input).
pub fn numer_gcd<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational("-6/8"), Some(rat(-3, 4)));
        assert_eq!(parse_rational("5"), Some(int(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(rat(-3, 4).to_string(), "-3/4");
        assert_eq!(int(7).to_string(), "7");
    }

    #[test]
    fn fractional_part() {
        assert_eq!(frac_mod1(&rat(-1, 2)), rat(1, 2));
        assert_eq!(frac_mod1(&int(3)), int(0));
        assert_eq!(frac_mod1(&rat(7, 3)), rat(1, 3));
    }
}
