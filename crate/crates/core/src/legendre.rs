//! Associated Legendre functions and `|Y_l^m|`.
//!
//! `P_l^{|m|}(θ) = sin^{|m|}θ · d^{|m|}P_l/dc^{|m|}(cos θ)` with no
//! Condon–Shortley phase, so `P_1^1 = +sin θ`. The functions here are
//! unnormalized; the `L²(S²)` constant only enters [`spherical_harmonic_abs`].

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exact::{horner, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("|m| = {m} exceeds l = {l}")]
pub struct OrderOutOfRange {
    pub l: usize,
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocLegendre {
    pub l: usize,
    pub m: i64,
    /// Polynomial in `c = cos θ` of degree `l − |m|`.
    pub polypart: Poly,
    pub sinpower: usize,
}

/// Legendre polynomial `P_l(c) = 1/(2^l l!) d^l/dc^l (c² − 1)^l`.
pub fn legendre_poly(l: usize) -> Poly {
    let base = Poly::from_i64(&[-1, 0, 1]).pow(l as u32);
    let denom: BigInt = (1..=l).fold(BigInt::one(), |acc, k| acc * BigInt::from(2 * k));
    base.derive_n(l)
        .scale(&Rational::new(BigInt::one(), denom))
}

pub fn assoc_legendre(l: usize, m: i64) -> Result<AssocLegendre, OrderOutOfRange> {
    let am = m.unsigned_abs() as usize;
    if am > l {
        return Err(OrderOutOfRange { l, m });
    }
    Ok(AssocLegendre {
        l,
        m,
        polypart: legendre_poly(l).derive_n(am),
        sinpower: am,
    })
}

impl AssocLegendre {
    pub fn abs_m(&self) -> usize {
        self.sinpower
    }

    pub fn eval(&self, theta: f64) -> f64 {
        eval_assoc_legendre(self, theta)
    }

    /// Evaluator with the coefficients converted to `f64` once.
    pub fn evaluator(&self) -> impl Fn(f64) -> f64 + Send + Sync + use<> {
        let coeffs = self.polypart.to_f64_coeffs();
        let power = self.sinpower as i32;
        move |theta: f64| theta.sin().powi(power) * horner(&coeffs, theta.cos())
    }

    /// `∫₀^π (P_l^m)² sin θ dθ = 2(l+m)!/((2l+1)(l−m)!)`, exact.
    pub fn norm_squared(&self) -> Rational {
        let l = self.l;
        let m = self.sinpower;
        let ratio: BigInt = ((l - m + 1)..=(l + m)).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
        Rational::new(BigInt::from(2) * ratio, BigInt::from(2 * l + 1))
    }
}

pub fn eval_assoc_legendre(p: &AssocLegendre, theta: f64) -> f64 {
    theta.sin().powi(p.sinpower as i32) * p.polypart.eval_real(theta.cos())
}

/// `N_{lm} = sqrt((2l+1)(l−|m|)! / (4π (l+|m|)!))`.
pub fn harmonic_norm(l: usize, m: i64) -> Result<f64, OrderOutOfRange> {
    let am = m.unsigned_abs() as usize;
    if am > l {
        return Err(OrderOutOfRange { l, m });
    }
    let ratio: f64 = ((l - am + 1)..=(l + am)).map(|k| k as f64).product();
    Ok(((2 * l + 1) as f64 / (4.0 * PI * ratio)).sqrt())
}

/// `|Y_l^m(θ, φ)|`, independent of φ.
pub fn spherical_harmonic_abs(l: usize, m: i64, theta: f64) -> Result<f64, OrderOutOfRange> {
    let norm = harmonic_norm(l, m)?;
    let p = assoc_legendre(l, m)?;
    Ok(norm * eval_assoc_legendre(&p, theta).abs())
}
