//! Exact rational scalars and dense univariate polynomials over them.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator, so equality is structural.
//! [`Poly`] keeps its coefficient vector trimmed of trailing zeros for the
//! same reason.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational literal {input:?}: expected \"p/q\" or \"p\"")]
pub struct ParseRationalError {
    pub input: String,
}

/// Parses `"p/q"` or `"p"` (optional leading sign, surrounding whitespace
/// ignored). A zero denominator is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        input: s.to_string(),
    };
    let trimmed = s.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Only reachable when numerator and denominator both overflow f64.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Polynomial `c[0] + c[1] x + c[2] x² + …` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c · x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial (degree −∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derive(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// `k`-fold derivative.
    pub fn derive_n(&self, k: usize) -> Poly {
        (0..k).fold(self.clone(), |p, _| p.derive())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x0: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x0 + c)
    }

    /// Double-precision Horner evaluation.
    pub fn eval_real(&self, x0: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x0 + rational_to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }
}

/// Horner evaluation of a coefficient slice already converted to `f64`.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[(i64, i64)]) -> Poly {
        Poly::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn add_examples() {
        assert!((Poly::from_i64(&[1, 1]) + Poly::from_i64(&[-1, -1])).is_zero());
        assert_eq!(
            Poly::from_i64(&[1]) + Poly::from_i64(&[0, 0, 1]),
            Poly::from_i64(&[1, 0, 1])
        );
        assert_eq!(
            p(&[(1, 2), (1, 1)]) + p(&[(1, 2)]),
            Poly::from_i64(&[1, 1])
        );
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            Poly::from_i64(&[1, 1]) * Poly::from_i64(&[1, -1]),
            Poly::from_i64(&[1, 0, -1])
        );
        assert!((Poly::zero() * Poly::from_i64(&[3, 4, 5])).is_zero());
        assert_eq!(
            Poly::from_i64(&[0, 2]) * Poly::from_i64(&[0, 0, 3]),
            Poly::from_i64(&[0, 0, 0, 6])
        );
    }

    #[test]
    fn derive_examples() {
        assert_eq!(Poly::from_i64(&[0, 0, 0, 1]).derive(), Poly::from_i64(&[0, 0, 3]));
        assert!(Poly::from_i64(&[5]).derive().is_zero());
        // 2βx + α with β = −1/2, α = 4/3
        assert_eq!(p(&[(4, 3), (-1, 1)]).derive(), Poly::from_i64(&[-1]));
    }

    #[test]
    fn eval_examples() {
        let alpha = rat(4, 3);
        let beta = rat(-1, 2);
        let lin = Poly::new(vec![alpha.clone(), int(2) * &beta]);
        assert_eq!(lin.eval(&int(0)), alpha);
        assert_eq!(Poly::from_i64(&[1, 0, -1]).eval(&int(1)), int(0));
        assert_eq!(p(&[(4, 3), (-1, 1)]).eval(&rat(4, 3)), int(0));
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::new(vec![int(0), int(0)]).degree(), None);
        assert_eq!(Poly::from_i64(&[0, 0, 7, 0]).degree(), Some(2));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("-16/15").unwrap(), rat(-16, 15));
        assert_eq!(parse_rational(" 3 ").unwrap(), int(3));
        assert_eq!(parse_rational("4/-6").unwrap(), rat(-2, 3));
        assert_eq!(rat(-16, 15).to_string(), "-16/15");
        assert_eq!(rat(10, 5).to_string(), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(arb_rational(), 0..6).prop_map(Poly::new)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) - &b, a.clone());
        }

        #[test]
        fn product_degree(a in arb_poly(), b in arb_poly()) {
            if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                prop_assert_eq!((&a * &b).degree(), Some(da + db));
            }
        }

        #[test]
        fn leibniz_rule(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).derive(), a.derive() * &b + &a * b.derive());
        }

        #[test]
        fn real_eval_matches_exact(a in arb_poly(), xn in -1000i64..=1000, xd in 1i64..=7) {
            let x = rat(xn, xd);
            let exact = rational_to_f64(&a.eval(&x));
            let approx = a.eval_real(rational_to_f64(&x));
            let scale: f64 = a.coeffs().iter().enumerate()
                .map(|(k, c)| rational_to_f64(c).abs() * rational_to_f64(&x).abs().powi(k as i32))
                .sum::<f64>()
                .max(f64::MIN_POSITIVE);
            prop_assert!((exact - approx).abs() <= 1e-12 * scale, "{} vs {}", exact, approx);
        }
    }
}
