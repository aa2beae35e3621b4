//! Romanovski polynomials `R_n^{α,β}(x)`.
//!
//! Generated from the weight `ω(x) = (1+x²)^{β−1} exp(−α arccot x)` by the
//! Rodrigues formula `R_n = ω⁻¹ dⁿ/dxⁿ [(1+x²)ⁿ ω]`, symbolically and exactly.
//! They solve
//!
//! ```text
//! (1+x²) R″ + 2(α/2 + βx) R′ − n(2β+n−1) R = 0.
//! ```

use std::f64::consts::PI;

use num_bigint::BigInt;

use crate::exact::{int, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RomanovskiParams {
    pub n: usize,
    pub alpha: Rational,
    pub beta: Rational,
}

impl RomanovskiParams {
    pub fn new(n: usize, alpha: Rational, beta: Rational) -> Self {
        RomanovskiParams { n, alpha, beta }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RomanovskiPoly {
    pub params: RomanovskiParams,
    pub poly: Poly,
}

impl RomanovskiPoly {
    /// True when the leading coefficient cancelled and `degree < n`.
    pub fn is_degenerate(&self) -> bool {
        self.poly.degree().is_none_or(|d| d < self.params.n)
    }
}

/// Rodrigues formula in exact arithmetic.
///
/// Every intermediate derivative has the form `P(x)·(1+x²)^k·ω(x)`. With
/// `ω′/ω = (2(β−1)x + α)/(1+x²)` one differentiation maps
///
/// ```text
/// (P, k) ↦ (P′(1+x²) + P·((2k + 2β − 2)x + α), k − 1)
/// ```
///
/// so after `n` steps starting from `(1, n)` the factor `(1+x²)^0·ω` divides
/// out and `P` is the polynomial.
pub fn rodrigues(params: &RomanovskiParams) -> RomanovskiPoly {
    let one_plus_x2 = Poly::from_i64(&[1, 0, 1]);
    let mut p = Poly::one();
    for step in 0..params.n {
        let k = (params.n - step) as i64;
        let log_weight_part = Poly::new(vec![
            params.alpha.clone(),
            int(2 * k - 2) + int(2) * &params.beta,
        ]);
        p = p.derive() * &one_plus_x2 + &p * &log_weight_part;
    }
    RomanovskiPoly {
        params: params.clone(),
        poly: p,
    }
}

/// `(1+x²)R″ + (α + 2βx)R′ − n(2β+n−1)R`, exactly. Zero iff `rp.poly`
/// solves the hypergeometric equation for `rp.params`.
pub fn ode_residual(rp: &RomanovskiPoly) -> Poly {
    ode_residual_for(&rp.poly, &rp.params)
}

/// Residual of an arbitrary polynomial against the equation for `params`.
pub fn ode_residual_for(poly: &Poly, params: &RomanovskiParams) -> Poly {
    let n = Rational::from_integer(BigInt::from(params.n));
    let d1 = poly.derive();
    let d2 = d1.derive();
    let drift = Poly::new(vec![params.alpha.clone(), int(2) * &params.beta]);
    let eigen = &n * (int(2) * &params.beta + &n - int(1));
    d2 * Poly::from_i64(&[1, 0, 1]) + drift * d1 - poly.scale(&eigen)
}

/// `arccot` on the branch `(0, π)`, so that `arccot(cot θ) = θ` for
/// `θ ∈ (0, π)`.
pub fn arccot(x: f64) -> f64 {
    PI / 2.0 - x.atan()
}

/// `ω^{α,β}(x) = (1+x²)^{β−1} exp(−α arccot x)`.
pub fn weight_eval(alpha: f64, beta: f64, x: f64) -> f64 {
    (1.0 + x * x).powf(beta - 1.0) * (-alpha * arccot(x)).exp()
}
