//! The cotangent-hindered rigid rotator.
//!
//! The polar equation
//!
//! ```text
//! −[(1/sin θ) d/dθ sin θ d/dθ − m̃²/sin²θ] F − 2b cot θ F = ε F
//! ```
//!
//! has the closed-form spectrum `ε_t = t(t+1) − b²/(t(t+1) + 1/4)` with
//! `t = n + |m̃|`, and eigenfunctions
//!
//! ```text
//! F_t^{|m̃|}(θ) = N · e^{−bθ/(t+1/2)} · sin^t θ · R_n^{α,β}(cot θ),
//! α = 2b/(t+1/2),  β = 1/2 − t,
//! ```
//!
//! with `U = F·sqrt(sin θ)` the solution of the trigonometric Rosen–Morse
//! problem. Each `F` is a finite combination of `P_t^k`, `k = |m̃|..t`,
//! times the damping exponential; [`decompose`] finds it exactly.
//!
//! Conventions: `N` gives `∫₀^π F² sin θ dθ = 1`; the overall sign makes
//! the `P_t^{|m̃|}` coefficient positive. That coefficient does not depend
//! on `b`, so the sign is continuous down to the free rotator.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{int, rat, rational_to_f64, Poly, Rational};
use crate::legendre::{assoc_legendre, harmonic_norm, OrderOutOfRange};
use crate::oracle::{quadrature, DEFAULT_QUADRATURE_NODES};
use crate::romanovski::{rodrigues, RomanovskiParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RotatorError {
    #[error("invalid mode: |m̃| = {} exceeds t = {t}", .mtilde.unsigned_abs())]
    InvalidMode { t: usize, mtilde: i64 },
    #[error("level splitting needs t ≥ 1")]
    SplittingAtGround,
    #[error("Legendre decomposition system is singular for t={t}, m̃={mtilde}")]
    SingularSystem { t: usize, mtilde: i64 },
    #[error("function is not in the span of P_{t}^k, k = {kmin}..{t}")]
    NotInSpan { t: usize, kmin: usize },
    #[error("sin exponent 1/2 − β = {0} is not a non-negative integer covering the polynomial degree")]
    BadSinPower(Rational),
    #[error(transparent)]
    Order(#[from] OrderOutOfRange),
}

/// Quantum labels `(t, m̃, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotatorMode {
    pub t: usize,
    pub mtilde: i64,
    pub b: Rational,
}

impl RotatorMode {
    pub fn new(t: usize, mtilde: i64, b: Rational) -> Result<Self, RotatorError> {
        if mtilde.unsigned_abs() as usize > t {
            return Err(RotatorError::InvalidMode { t, mtilde });
        }
        Ok(RotatorMode { t, mtilde, b })
    }

    pub fn abs_m(&self) -> usize {
        self.mtilde.unsigned_abs() as usize
    }

    /// Romanovski order `n = t − |m̃|`.
    pub fn n(&self) -> usize {
        self.t - self.abs_m()
    }
}

/// `(t + 1/2)` as an exact rational.
fn t_half(t: usize) -> Rational {
    rat(2 * t as i64 + 1, 2)
}

fn t_t1(t: usize) -> Rational {
    Rational::from_integer(BigInt::from(t) * BigInt::from(t + 1))
}

/// `(n, α, β)` with `α = 2b/(t + 1/2)` and `β = 1/2 − t`.
pub fn params(mode: &RotatorMode) -> (usize, Rational, Rational) {
    let alpha = int(2) * &mode.b / t_half(mode.t);
    let beta = rat(1, 2) - int(mode.t as i64);
    (mode.n(), alpha, beta)
}

pub fn romanovski_params(mode: &RotatorMode) -> RomanovskiParams {
    let (n, alpha, beta) = params(mode);
    RomanovskiParams::new(n, alpha, beta)
}

/// Trigonometric Rosen–Morse form of one `m̃` sector:
/// `V(θ) = m̄(m̄+1)/sin²θ − 2b cot θ`, `m̄ = |m̃| − 1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RosenMorseParams {
    pub mbar: Rational,
    pub b: Rational,
    pub coupling: Rational,
}

impl RosenMorseParams {
    pub fn new(mtilde: i64, b: Rational) -> Self {
        let mbar = int(mtilde.abs()) - rat(1, 2);
        let coupling = &mbar * (&mbar + int(1));
        RosenMorseParams { mbar, b, coupling }
    }

    pub fn potential(&self, theta: f64) -> f64 {
        let s = theta.sin();
        rational_to_f64(&self.coupling) / (s * s) - 2.0 * rational_to_f64(&self.b) * theta.cos() / s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub t: usize,
    pub b: Rational,
    pub epsilon: Rational,
    pub degeneracy: usize,
}

/// `ε_t = t(t+1) − b²/(t(t+1) + 1/4)`, shared by all `2t+1` values of `m̃`.
pub fn energy(t: usize, b: &Rational) -> SpectrumEntry {
    let tt = t_t1(t);
    let epsilon = &tt - b * b / (&tt + rat(1, 4));
    SpectrumEntry {
        t,
        b: b.clone(),
        epsilon,
        degeneracy: 2 * t + 1,
    }
}

/// `E_t − E_{t−1} = 2t + 2t b²/(t² − 1/4)²`, evaluated from this closed form.
pub fn splitting(t: usize, b: &Rational) -> Result<Rational, RotatorError> {
    if t == 0 {
        return Err(RotatorError::SplittingAtGround);
    }
    let tr = int(t as i64);
    let denom = &tr * &tr - rat(1, 4);
    Ok(int(2) * &tr + int(2) * &tr * b * b / (&denom * &denom))
}

/// Eigenvalue of the algebraic Hamiltonian `H − 1/4 = L² − b²/(L² + 1/4)`
/// on `Y_l^m`: the operator function applied to the `L²` eigenvalue `l(l+1)`.
pub fn algebraic_energy(l: usize, b: &Rational) -> Rational {
    let casimir = t_t1(l);
    let shift = b * b / (&casimir + rat(1, 4));
    casimir - shift
}

/// Exact expansion of `sin^t θ · R_n(cot θ)` over `P_t^k(cos θ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub t: usize,
    pub mtilde: i64,
    pub b: Rational,
    /// Coefficient of `P_t^k` for every `k = |m̃|..t`.
    pub coeffs: BTreeMap<usize, Rational>,
}

impl Decomposition {
    pub fn nonzero_count(&self) -> usize {
        self.coeffs.values().filter(|c| !c.is_zero()).count()
    }

    /// Value of `Σ_k c_k P_t^k(θ)` (no damping, no normalization).
    pub fn eval_real(&self, theta: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&k, c)| {
                let p = assoc_legendre(self.t, k as i64).expect("k ≤ t by construction");
                rational_to_f64(c) * p.eval(theta)
            })
            .sum()
    }
}

/// Trigonometric polynomial `even(c) + sin θ · odd(c)` in `c = cos θ`, with
/// `sin² = 1 − c²` already eliminated. The representation is unique.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct TrigPoly {
    even: Poly,
    odd: Poly,
}

impl TrigPoly {
    /// `p(c) · sin^q θ`.
    fn from_sin_power(p: &Poly, q: usize) -> Self {
        let reduced = p * Poly::from_i64(&[1, 0, -1]).pow((q / 2) as u32);
        if q % 2 == 0 {
            TrigPoly {
                even: reduced,
                odd: Poly::zero(),
            }
        } else {
            TrigPoly {
                even: Poly::zero(),
                odd: reduced,
            }
        }
    }

    fn add_assign(&mut self, other: &TrigPoly) {
        self.even = &self.even + &other.even;
        self.odd = &self.odd + &other.odd;
    }

    fn scale(&self, c: &Rational) -> TrigPoly {
        TrigPoly {
            even: self.even.scale(c),
            odd: self.odd.scale(c),
        }
    }

    fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// Coefficient vector: even part first, then odd part, padded to `len`
    /// entries each.
    fn coefficient_vector(&self, len: usize) -> Vec<Rational> {
        (0..len)
            .map(|i| self.even.coeff(i))
            .chain((0..len).map(|i| self.odd.coeff(i)))
            .collect()
    }
}

/// `Σ_j r_j cos^j θ sin^{p−j} θ`, i.e. `sin^p θ · r(cot θ)`.
fn sin_power_times_cot_poly(r: &Poly, p: usize) -> TrigPoly {
    let mut out = TrigPoly::default();
    for (j, c) in r.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = TrigPoly::from_sin_power(&Poly::monomial(c.clone(), j), p - j);
        out.add_assign(&term);
    }
    out
}

/// Exact solve of the (overdetermined, consistent) system `A x = rhs` by
/// row reduction over the rationals.
fn solve_exact(
    mut a: Vec<Vec<Rational>>,
    mut rhs: Vec<Rational>,
    ncols: usize,
) -> Result<Vec<Rational>, LinearSolveError> {
    let nrows = a.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(ncols);
    for col in 0..ncols {
        let Some(sel) = (pivot_row..nrows).find(|&r| !a[r][col].is_zero()) else {
            return Err(LinearSolveError::Singular);
        };
        a.swap(pivot_row, sel);
        rhs.swap(pivot_row, sel);
        let inv = Rational::one() / &a[pivot_row][col];
        for c in col..ncols {
            a[pivot_row][c] = &a[pivot_row][c] * &inv;
        }
        rhs[pivot_row] = &rhs[pivot_row] * &inv;
        for r in 0..nrows {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..ncols {
                let delta = &factor * &a[pivot_row][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &rhs[pivot_row];
            rhs[r] -= delta;
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rhs[pivot_row..].iter().any(|v| !v.is_zero()) {
        return Err(LinearSolveError::Inconsistent);
    }
    Ok(pivots.into_iter().map(|r| rhs[r].clone()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LinearSolveError {
    Singular,
    Inconsistent,
}

/// Expands `sin^p θ · r(cot θ)` over `{P_t^k}`, `k = kmin..t`, and checks
/// the expansion by resubstitution.
fn decompose_trig(
    r: &Poly,
    p: usize,
    t: usize,
    kmin: usize,
    mtilde: i64,
) -> Result<BTreeMap<usize, Rational>, RotatorError> {
    let target = sin_power_times_cot_poly(r, p);
    let basis: Vec<TrigPoly> = (kmin..=t)
        .map(|k| {
            let pk = assoc_legendre(t, k as i64)?;
            Ok(TrigPoly::from_sin_power(&pk.polypart, pk.sinpower))
        })
        .collect::<Result<_, RotatorError>>()?;

    let len = [&target]
        .into_iter()
        .chain(basis.iter())
        .map(|tp| tp.even.coeffs().len().max(tp.odd.coeffs().len()))
        .max()
        .unwrap_or(0)
        .max(1);
    let columns: Vec<Vec<Rational>> = basis.iter().map(|b| b.coefficient_vector(len)).collect();
    let ncols = columns.len();
    let matrix: Vec<Vec<Rational>> = (0..2 * len)
        .map(|row| columns.iter().map(|col| col[row].clone()).collect())
        .collect();
    let solution = solve_exact(matrix, target.coefficient_vector(len), ncols).map_err(|e| match e {
        LinearSolveError::Singular => RotatorError::SingularSystem { t, mtilde },
        LinearSolveError::Inconsistent => RotatorError::NotInSpan { t, kmin },
    })?;

    let mut resub = TrigPoly::default();
    for (coef, b) in solution.iter().zip(&basis) {
        resub.add_assign(&b.scale(coef));
    }
    resub.add_assign(&target.scale(&int(-1)));
    if !resub.is_zero() {
        return Err(RotatorError::NotInSpan { t, kmin });
    }

    Ok((kmin..=t).zip(solution).collect())
}

/// Exact coefficients of `sin^t θ · R_n^{α,β}(cot θ)` on `P_t^k`,
/// `k = |m̃|..t` (no damping factor, no normalization).
pub fn decompose(mode: &RotatorMode) -> Result<Decomposition, RotatorError> {
    let rp = rodrigues(&romanovski_params(mode));
    let coeffs = decompose_trig(&rp.poly, mode.t, mode.t, mode.abs_m(), mode.mtilde)?;
    Ok(Decomposition {
        t: mode.t,
        mtilde: mode.mtilde,
        b: mode.b.clone(),
        coeffs,
    })
}

/// Normalized eigenfunction of one `(t, m̃, b)` state.
#[derive(Debug, Clone)]
pub struct Wavefunction {
    pub mode: RotatorMode,
    pub alpha: Rational,
    pub beta: Rational,
    /// Romanovski factor in `x = cot θ`.
    pub rpoly: Poly,
    pub norm: f64,
    pub signfix: f64,
    /// `1/2 − β`: exponent of `sin θ` in `F`.
    sin_power: usize,
    rcoeffs: Vec<f64>,
    half_alpha: f64,
}

impl Wavefunction {
    /// `F_t^{|m̃|}` with the canonical parameters.
    pub fn build(mode: &RotatorMode) -> Result<Self, RotatorError> {
        let (_, alpha, beta) = params(mode);
        Self::build_with(mode, alpha, beta)
    }

    /// Same assembly with explicit `(α, β)`; used for negative controls.
    /// `F = e^{−αθ/2} sin^{1/2−β}θ R_n^{α,β}(cot θ)`.
    pub fn build_with(
        mode: &RotatorMode,
        alpha: Rational,
        beta: Rational,
    ) -> Result<Self, RotatorError> {
        let rp = rodrigues(&RomanovskiParams::new(mode.n(), alpha.clone(), beta.clone()));
        let p_rat = rat(1, 2) - &beta;
        let sin_power = p_rat
            .is_integer()
            .then(|| p_rat.to_integer().to_usize())
            .flatten()
            .filter(|&p| rp.poly.degree().is_none_or(|d| d <= p))
            .ok_or_else(|| RotatorError::BadSinPower(p_rat.clone()))?;

        let mut w = Wavefunction {
            mode: mode.clone(),
            half_alpha: rational_to_f64(&alpha) / 2.0,
            alpha,
            beta,
            rcoeffs: rp.poly.to_f64_coeffs(),
            rpoly: rp.poly,
            norm: 1.0,
            signfix: 1.0,
            sin_power,
        };

        let norm_sq = quadrature(
            |th| {
                let f = w.eval_raw(th);
                f * f * th.sin()
            },
            0.0,
            PI,
            DEFAULT_QUADRATURE_NODES,
        );
        w.norm = 1.0 / norm_sq.sqrt();

        w.signfix = match decompose_trig(&w.rpoly, sin_power, mode.t, mode.abs_m(), mode.mtilde) {
            Ok(coeffs) => sign_from_coeffs(&coeffs, mode.abs_m()),
            Err(_) => 1.0,
        };
        Ok(w)
    }

    /// `e^{−αθ/2} Σ_j r_j cos^j θ sin^{p−j} θ`: `F` before normalization and
    /// sign. Free of `cot θ`, so finite on the closed interval.
    fn eval_raw(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let s = s.max(0.0);
        let p = self.sin_power;
        let mut acc = 0.0;
        let mut cpow = 1.0;
        for (j, r) in self.rcoeffs.iter().enumerate() {
            acc += r * cpow * s.powi((p - j) as i32);
            cpow *= c;
        }
        (-self.half_alpha * theta).exp() * acc
    }

    pub fn eval_f(&self, theta: f64) -> f64 {
        self.norm * self.signfix * self.eval_raw(theta)
    }

    pub fn eval_u(&self, theta: f64) -> f64 {
        self.eval_f(theta) * theta.sin().max(0.0).sqrt()
    }

    pub fn epsilon(&self) -> Rational {
        energy(self.mode.t, &self.mode.b).epsilon
    }
}

fn sign_from_coeffs(coeffs: &BTreeMap<usize, Rational>, kmin: usize) -> f64 {
    match coeffs.get(&kmin) {
        Some(c) if c.is_negative() => -1.0,
        _ => 1.0,
    }
}

/// Builds the normalized wavefunction for `mode`.
#[allow(non_snake_case)]
pub fn build_U(mode: &RotatorMode) -> Result<Wavefunction, RotatorError> {
    Wavefunction::build(mode)
}

pub fn eval_f(w: &Wavefunction, theta: f64) -> f64 {
    w.eval_f(theta)
}

pub fn eval_u(w: &Wavefunction, theta: f64) -> f64 {
    w.eval_u(theta)
}

/// `e^{−bθ/(t+1/2)}`.
pub fn damping_factor(t: usize, b: &Rational, theta: f64) -> f64 {
    (-rational_to_f64(b) * theta / (t as f64 + 0.5)).exp()
}

/// `|Ỹ_t^m(θ, φ)| = e^{−bθ/(t+1/2)} N_{tm} |P_t^{|m|}(θ)|`.
pub fn damped_harmonic(t: usize, m: i64, b: &Rational, theta: f64) -> Result<f64, RotatorError> {
    let norm = harmonic_norm(t, m)?;
    let p = assoc_legendre(t, m)?;
    Ok(damping_factor(t, b, theta) * norm * p.eval(theta).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    fn mode(t: usize, m: i64, b: Rational) -> RotatorMode {
        RotatorMode::new(t, m, b).unwrap()
    }

    fn coeffs(d: &Decomposition) -> Vec<(usize, Rational)> {
        d.coeffs.iter().map(|(k, c)| (*k, c.clone())).collect()
    }

    #[test]
    fn rejects_invalid_mode() {
        assert_eq!(
            RotatorMode::new(1, 2, int(0)),
            Err(RotatorError::InvalidMode { t: 1, mtilde: 2 })
        );
        assert!(RotatorMode::new(1, -2, int(0)).is_err());
        assert!(RotatorMode::new(2, -2, int(0)).is_ok());
    }

    #[test]
    fn params_examples() {
        assert_eq!(params(&mode(1, 0, int(1))), (1, rat(4, 3), rat(-1, 2)));
        let b = rat(7, 3);
        assert_eq!(params(&mode(2, 1, b.clone())), (1, rat(4, 5) * &b, rat(-3, 2)));
        assert_eq!(params(&mode(0, 0, b.clone())), (0, int(4) * &b, rat(1, 2)));
    }

    #[test]
    fn rosen_morse_coupling() {
        assert_eq!(RosenMorseParams::new(0, int(1)).coupling, rat(-1, 4));
        assert_eq!(RosenMorseParams::new(1, int(1)).coupling, rat(3, 4));
        assert_eq!(RosenMorseParams::new(-2, int(1)).coupling, rat(15, 4));
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(0, &int(1)).epsilon, int(-4));
        assert_eq!(energy(1, &int(1)).epsilon, rat(14, 9));
        assert_eq!(energy(2, &int(1)).epsilon, rat(146, 25));
        for t in 0..10 {
            let e = energy(t, &int(0));
            assert_eq!(e.epsilon, int((t * (t + 1)) as i64));
            assert_eq!(e.degeneracy, 2 * t + 1);
        }
        assert_eq!(energy(3, &rat(2, 5)).epsilon, energy(3, &rat(-2, 5)).epsilon);
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting(1, &int(1)).unwrap(), rat(50, 9));
        assert_eq!(splitting(2, &int(1)).unwrap(), rat(964, 225));
        assert_eq!(splitting(2, &int(1)).unwrap(), rat(146, 25) - rat(14, 9));
        assert_eq!(splitting(3, &int(0)).unwrap(), int(6));
        assert_eq!(splitting(0, &int(1)), Err(RotatorError::SplittingAtGround));
    }

    #[test]
    fn splitting_excess_decreases() {
        let b = rat(3, 2);
        let excess: Vec<Rational> = (2..40)
            .map(|t| splitting(t, &b).unwrap() - int(2 * t as i64))
            .collect();
        for w in excess.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn algebraic_examples() {
        assert_eq!(algebraic_energy(1, &int(1)), rat(14, 9));
        assert_eq!(algebraic_energy(0, &int(0)), int(0));
        assert_eq!(algebraic_energy(2, &int(1)), rat(146, 25));
    }

    #[test]
    fn decompose_closed_form_cases() {
        let b = rat(5, 7);
        let d1 = decompose(&mode(1, 0, b.clone())).unwrap();
        assert_eq!(coeffs(&d1), vec![(0, int(-1)), (1, rat(4, 3) * &b)]);

        let d2 = decompose(&mode(1, 1, b.clone())).unwrap();
        assert_eq!(coeffs(&d2), vec![(1, int(1))]);

        let d5 = decompose(&mode(2, 2, int(1))).unwrap();
        assert_eq!(coeffs(&d5), vec![(2, rat(1, 3))]);

        let d3 = decompose(&mode(2, 0, int(1))).unwrap();
        assert_eq!(coeffs(&d3), vec![(0, int(2)), (1, rat(-16, 15)), (2, rat(16, 75))]);

        // rpoly = −3x + 4b/5  ⇒  −P_2^1 + (4b/15) P_2^2
        let d4 = decompose(&mode(2, 1, b.clone())).unwrap();
        assert_eq!(coeffs(&d4), vec![(1, int(-1)), (2, rat(4, 15) * &b)]);
    }

    #[test]
    fn decomposition_reexpands_to_source() {
        for t in 0..6 {
            for m in 0..=t as i64 {
                let md = mode(t, m, rat(3, 4));
                let d = decompose(&md).unwrap();
                let w = Wavefunction::build(&md).unwrap();
                for i in 1..20 {
                    let th = PI * i as f64 / 20.0;
                    let lhs = d.eval_real(th);
                    let rhs = w.eval_raw(th) / (-w.half_alpha * th).exp();
                    assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()), "t={t} m={m}");
                }
            }
        }
    }

    #[test]
    fn free_rotator_reduces_to_single_legendre() {
        for t in 0..7 {
            for m in 0..=t as i64 {
                let d = decompose(&mode(t, m, int(0))).unwrap();
                assert_eq!(d.coeffs.len(), t - m as usize + 1);
                assert!(!d.coeffs[&(m as usize)].is_zero());
                assert_eq!(d.nonzero_count(), 1, "t={t} m={m}");
            }
        }
    }

    #[test]
    fn build_examples() {
        let w = Wavefunction::build(&mode(1, 1, int(1))).unwrap();
        assert_eq!(w.rpoly, Poly::one());
        let ratio = w.eval_u(1.1) / w.eval_u(0.4);
        let expected = (1.1f64.sin() / 0.4f64.sin()).powf(1.5) * (-2.0 * 0.7 / 3.0f64).exp();
        assert!((ratio - expected).abs() < 1e-12);
        assert_eq!(w.eval_u(0.0), 0.0);
        assert!(w.eval_u(PI).abs() < 1e-20);

        let w = Wavefunction::build(&mode(1, 0, int(1))).unwrap();
        assert_eq!(w.rpoly, Poly::new(vec![rat(4, 3), int(-1)]));

        let w = Wavefunction::build(&mode(0, 0, int(0))).unwrap();
        let c = 1.0 / 2f64.sqrt();
        for th in [0.0, 0.3, 1.7, PI] {
            assert!((w.eval_f(th) - c).abs() < 1e-12);
        }
    }

    #[test]
    fn free_p1_vanishes_at_equator() {
        let w = Wavefunction::build(&mode(1, 0, int(0))).unwrap();
        assert!(w.eval_f(PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn t1_m0_closed_form_and_node() {
        let w = Wavefunction::build(&mode(1, 0, int(1))).unwrap();
        let closed = |th: f64| (-2.0 * th / 3.0).exp() * (-th.cos() + 4.0 / 3.0 * th.sin());
        let ratio = w.eval_f(0.9) / closed(0.9);
        for i in 0..10 {
            let th = 0.1 + 0.3 * i as f64;
            assert!((w.eval_f(th) - ratio * closed(th)).abs() < 1e-12);
        }
        let node = (0.75f64).atan();
        assert!(w.eval_f(node).abs() < 1e-14);
    }

    #[test]
    fn wavefunctions_are_normalized() {
        for t in 0..6 {
            for m in 0..=t as i64 {
                let w = Wavefunction::build(&mode(t, m, rat(-2, 3))).unwrap();
                let n1 = quadrature(|th| w.eval_u(th).powi(2), 0.0, PI, 2048);
                assert!((n1 - 1.0).abs() < 1e-10, "t={t} m={m}");
            }
        }
    }

    #[test]
    fn sign_convention() {
        // raw expansions {−1, 4b/3} and {2, −16/15, 16/75}
        let w = Wavefunction::build(&mode(1, 0, int(1))).unwrap();
        assert_eq!(w.signfix, -1.0);
        let w = Wavefunction::build(&mode(2, 0, int(1))).unwrap();
        assert_eq!(w.signfix, 1.0);
        let w = Wavefunction::build(&mode(1, 0, int(0))).unwrap();
        assert_eq!(w.signfix, -1.0);
        assert!(w.eval_f(0.1) > 0.0);
        for t in 0..6 {
            for m in 0..=t as i64 {
                for b in [int(0), rat(1, 2), int(-3)] {
                    let d = decompose(&mode(t, m, b.clone())).unwrap();
                    let w = Wavefunction::build(&mode(t, m, b)).unwrap();
                    assert_eq!(w.signfix * rational_to_f64(&d.coeffs[&(m as usize)]).signum(), 1.0);
                }
            }
        }
    }

    #[test]
    fn coupling_sign_mirrors_theta() {
        for (t, m) in [(1, 0), (2, 1), (3, 0), (4, 2)] {
            let plus = Wavefunction::build(&mode(t, m, rat(5, 4))).unwrap();
            let minus = Wavefunction::build(&mode(t, m, rat(-5, 4))).unwrap();
            let s = plus.eval_f(0.8).signum() * minus.eval_f(PI - 0.8).signum();
            for i in 0..25 {
                let th = 0.05 + 0.12 * i as f64;
                assert!((plus.eval_f(th) - s * minus.eval_f(PI - th)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn inequivalent_to_harmonics_when_coupled() {
        for t in 1..=6 {
            for m in 0..t as i64 {
                let d = decompose(&mode(t, m, int(1))).unwrap();
                assert!(d.nonzero_count() >= 2, "t={t} m={m}");
            }
        }
    }

    #[test]
    fn coefficient_degree_in_b() {
        // coefficient of P_t^k is a polynomial in b of degree k − |m̃|:
        // fit by exact Lagrange interpolation through k−|m̃|+2 sample couplings.
        for t in 1..=4 {
            for m in 0..=t {
                for k in m..=t {
                    let samples: Vec<(Rational, Rational)> = (0..(k - m + 2))
                        .map(|i| {
                            let b = rat(i as i64 + 1, 3);
                            let c = decompose(&mode(t, m as i64, b.clone())).unwrap().coeffs[&k].clone();
                            (b, c)
                        })
                        .collect();
                    let poly = lagrange(&samples);
                    assert_eq!(poly.degree(), Some(k - m), "t={t} m={m} k={k}");
                }
            }
        }
    }

    fn lagrange(points: &[(Rational, Rational)]) -> Poly {
        let mut out = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Poly::constant(yi.clone());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    let factor = Poly::new(vec![-xj.clone(), int(1)]).scale(&(int(1) / (xi - xj)));
                    basis = basis * factor;
                }
            }
            out = out + basis;
        }
        out
    }

    #[test]
    fn damping_examples() {
        assert_eq!(damping_factor(3, &int(2), 0.0), 1.0);
        assert!((damping_factor(1, &int(1), PI) - (-2.0 * PI / 3.0).exp()).abs() < 1e-15);
        assert!((damping_factor(1, &int(1), PI) - 0.1231).abs() < 1e-4);
        let vals: Vec<f64> = (0..30).map(|t| damping_factor(t, &int(1), 1.3)).collect();
        for w in vals.windows(2) {
            assert!(w[1] > w[0] && w[1] < 1.0);
        }
    }

    #[test]
    fn damped_harmonic_examples() {
        for th in [0.0, 0.5, 2.5, PI] {
            let reg = crate::legendre::spherical_harmonic_abs(2, 1, th).unwrap();
            assert_eq!(damped_harmonic(2, 1, &int(0), th).unwrap(), reg);
        }
        let c = (3.0 / (4.0 * PI)).sqrt();
        assert!((damped_harmonic(1, 0, &int(1), 0.0).unwrap() - c).abs() < 1e-15);
        let at_pi = damped_harmonic(1, 0, &int(1), PI).unwrap();
        assert!((at_pi - c * (-2.0 * PI / 3.0).exp()).abs() < 1e-15);
        assert!((at_pi - 0.0601).abs() < 1e-4);
        assert!(damped_harmonic(1, 2, &int(1), 0.3).is_err());
    }
}
