use super::poly::MultiPoly;
use super::rational::Rational;
use super::ArithError;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// All rational roots of a univariate polynomial with their multiplicities,
/// sorted ascending.
///
/// Candidates are `±p/q` with `p` dividing the trailing and `q` the leading
/// coefficient of the integer-normalized polynomial; each hit is deflated
/// exactly.
pub fn rational_roots(p: &MultiPoly) -> Result<Vec<(Rational, usize)>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let support = p.support();
    if support.len() > 1 {
        return Err(ArithError::NotUnivariate(p.to_string()));
    }
    let var = support.first().copied().unwrap_or(0);
    let coeffs = p.primitive().univariate_coeffs(var).expect("univariate");
    let mut c: Vec<BigInt> = coeffs.iter().map(|q| q.numer().clone()).collect();

    let mut out = Vec::new();
    let low = c.iter().position(|x| !x.is_zero()).unwrap();
    if low > 0 {
        out.push((Rational::zero(), low));
        c.drain(..low);
    }
    if c.len() <= 1 {
        return Ok(out);
    }
    let lead_divs = divisors(c.last().unwrap());
    let trail_divs = divisors(&c[0]);
    let mut cands: Vec<Rational> = Vec::new();
    for p in &trail_divs {
        for q in &lead_divs {
            let r = Rational::new(p.clone(), q.clone());
            cands.push(r.clone());
            cands.push(-r);
        }
    }
    cands.sort();
    cands.dedup();
    for r in cands {
        let mut mult = 0;
        while c.len() > 1 {
            match deflate(&c, &r) {
                Some(q) => {
                    c = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Divides the integer polynomial (ascending coefficients) by `(q x - p)` where
/// `r = p/q`, returning the integer quotient if the division is exact.
fn deflate(c: &[BigInt], r: &Rational) -> Option<Vec<BigInt>> {
    let (p, q) = (r.numer(), r.denom());
    let n = c.len() - 1;
    // synthetic division by (q x - p) from the top
    let mut quot = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (1..=n).rev() {
        let cur = &c[k] + &carry;
        if !(&cur % q).is_zero() {
            return None;
        }
        let b = &cur / q;
        carry = &b * p;
        quot[k - 1] = b;
    }
    if (&c[0] + &carry).is_zero() {
        Some(quot)
    } else {
        None
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut d = BigInt::from(2u32);
    while &d * &d <= m {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1u32;
        if d.to_u64().map_or(true, |v| v > 10_000_000) {
            break;
        }
    }
    if !m.is_one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::var_names;
    use crate::arith::rational::{int, rat};

    fn s() -> MultiPoly {
        MultiPoly::var(var_names(&["s"]), 0)
    }

    #[test]
    fn two_simple_roots() {
        // 2s^2 + 3s + 1 = (s + 1)(2s + 1)
        let s = s();
        let p = &(&s.pow(2).scale(&int(2)) + &s.scale(&int(3))) + &MultiPoly::one(s.vars().clone());
        assert_eq!(rational_roots(&p).unwrap(), vec![(int(-1), 1), (rat(-1, 2), 1)]);
    }

    #[test]
    fn irreducible_quadratic() {
        let s = s();
        let p = &s.pow(2) + &MultiPoly::one(s.vars().clone());
        assert!(rational_roots(&p).unwrap().is_empty());
    }

    #[test]
    fn repeated_root() {
        let s = s();
        let p = (&s + &MultiPoly::one(s.vars().clone())).pow(2);
        assert_eq!(rational_roots(&p).unwrap(), vec![(int(-1), 2)]);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        let z = MultiPoly::zero(var_names(&["s"]));
        assert!(matches!(rational_roots(&z), Err(ArithError::ZeroPolynomial)));
    }

    #[test]
    fn zero_root_and_fractions() {
        let s = s();
        // s^2 (s + 2/3)
        let p = &s.pow(2) * &(&s + &MultiPoly::constant(s.vars().clone(), rat(2, 3)));
        assert_eq!(rational_roots(&p).unwrap(), vec![(rat(-2, 3), 1), (int(0), 2)]);
    }
}
