//! Independent numerical checks for the closed-form results.
//!
//! The finite-difference solver discretizes the self-adjoint form of the
//! polar equation,
//!
//! ```text
//! −(sin θ F′)′ + [m̃²/sin θ − 2b cos θ] F = ε sin θ F,
//! ```
//!
//! in flux form on the cell-centered grid `θ_i = (i + 1/2)h`, `h = π/N`.
//! The face fluxes at `θ = 0, π` carry a factor `sin = 0`, so no row
//! touches the poles and no boundary condition is imposed by hand. The
//! generalized problem `A F = ε W F`, `W = diag(sin θ_i)`, is symmetrized to
//! `W^{−1/2} A W^{−1/2}` and solved by Sturm bisection.

pub mod tridiag;

use std::f64::consts::PI;

use thiserror::Error;

use crate::exact::{rational_to_f64, Rational};
use crate::legendre::assoc_legendre;
use crate::rotator::{romanovski_params, RotatorError, RotatorMode, Wavefunction};
use crate::romanovski::rodrigues;

/// Simpson node count for norms and overlaps.
pub const DEFAULT_QUADRATURE_NODES: usize = 2048;
pub const MIN_FD_GRID: usize = 500;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("bisection for eigenvalue #{index} stalled in [{lo}, {hi}]")]
    BisectionDiverged { index: usize, lo: f64, hi: f64 },
    #[error("grid size {0} below the minimum of {MIN_FD_GRID}")]
    GridTooSmall(usize),
    #[error("U-form solver needs |m̃| ≥ 1 (got {0})")]
    UFormNeedsNonzeroM(i64),
    #[error("|m| = {m} exceeds t = {t}")]
    InvalidOrder { t: usize, m: i64 },
    #[error(transparent)]
    Rotator(#[from] RotatorError),
}

/// Composite Simpson rule with `n` (even, ≥ 16) subintervals; error `O(h⁴)`.
pub fn quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n >= 16 && n % 2 == 0, "Simpson needs an even n ≥ 16, got {n}");
    let h = (b - a) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let v = f(a + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

/// Samples at cell centers `θ_i = thetamin + (i + 1/2)h`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub thetamin: f64,
    pub thetamax: f64,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn sample<F: Fn(f64) -> f64>(f: F, thetamin: f64, thetamax: f64, count: usize) -> Self {
        assert!(count >= 16, "grid functions need at least 16 nodes");
        let h = (thetamax - thetamin) / count as f64;
        let values = (0..count)
            .map(|i| f(thetamin + (i as f64 + 0.5) * h))
            .collect();
        GridFunction {
            thetamin,
            thetamax,
            values,
        }
    }

    pub fn step(&self) -> f64 {
        (self.thetamax - self.thetamin) / self.values.len() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.thetamin + (i as f64 + 0.5) * self.step()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|i| self.node(i))
    }

    /// Midpoint-rule `∫ f g sin θ dθ`.
    pub fn weighted_dot(&self, other: &GridFunction) -> f64 {
        assert_eq!(self.values.len(), other.values.len());
        let h = self.step();
        self.nodes()
            .zip(self.values.iter().zip(&other.values))
            .map(|(th, (a, b))| a * b * th.sin())
            .sum::<f64>()
            * h
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FdSpectrum {
    pub mtilde: i64,
    pub b: f64,
    pub gridsize: usize,
    /// Ascending estimates of `ε`.
    pub eigenvalues: Vec<f64>,
}

/// Symmetrized tridiagonal `(diag, off)` of the F-form operator for one
/// sector, plus the weights `sin θ_i`.
fn fform_matrix(mtilde: i64, b: f64, gridsize: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let h = PI / gridsize as f64;
    let h2 = h * h;
    let m2 = (mtilde * mtilde) as f64;
    let face = |j: usize| (j as f64 * h).sin();
    let center = |i: usize| (i as f64 + 0.5) * h;
    let weight: Vec<f64> = (0..gridsize).map(|i| center(i).sin()).collect();

    let diag = (0..gridsize)
        .map(|i| {
            let th = center(i);
            let a = (face(i) + face(i + 1)) / h2 + m2 / weight[i] - 2.0 * b * th.cos();
            a / weight[i]
        })
        .collect();
    let off = (0..gridsize - 1)
        .map(|i| -face(i + 1) / h2 / (weight[i] * weight[i + 1]).sqrt())
        .collect();
    (diag, off, weight)
}

/// Lowest `count` eigenvalues `ε` of the sector `(m̃, b)`.
pub fn fd_eigenvalues(mtilde: i64, b: f64, gridsize: usize, count: usize) -> Result<FdSpectrum, OracleError> {
    if gridsize < MIN_FD_GRID {
        return Err(OracleError::GridTooSmall(gridsize));
    }
    let (diag, off, _) = fform_matrix(mtilde, b, gridsize);
    let eigenvalues = tridiag::lowest_eigenvalues(&diag, &off, count)?;
    Ok(FdSpectrum {
        mtilde,
        b,
        gridsize,
        eigenvalues,
    })
}

/// Second route for `|m̃| ≥ 1`: `−U″ + V_RM U = (ε + 1/4) U` with Dirichlet
/// ends on the vertex grid `θ_i = i h`. Returned values are already `ε`.
pub fn fd_eigenvalues_uform(
    mtilde: i64,
    b: f64,
    gridsize: usize,
    count: usize,
) -> Result<FdSpectrum, OracleError> {
    if gridsize < MIN_FD_GRID {
        return Err(OracleError::GridTooSmall(gridsize));
    }
    if mtilde == 0 {
        return Err(OracleError::UFormNeedsNonzeroM(mtilde));
    }
    let h = PI / gridsize as f64;
    let h2 = h * h;
    let mbar = mtilde.abs() as f64 - 0.5;
    let coupling = mbar * (mbar + 1.0);
    let diag: Vec<f64> = (1..gridsize)
        .map(|i| {
            let th = i as f64 * h;
            let s = th.sin();
            2.0 / h2 + coupling / (s * s) - 2.0 * b * th.cos() / s
        })
        .collect();
    let off = vec![-1.0 / h2; gridsize - 2];
    let eigenvalues = tridiag::lowest_eigenvalues(&diag, &off, count)?
        .into_iter()
        .map(|e| e - 0.25)
        .collect();
    Ok(FdSpectrum {
        mtilde,
        b,
        gridsize,
        eigenvalues,
    })
}

/// The `index`-th FD eigenfunction of the sector as `F` samples on the
/// cell-centered grid, unit norm under weight `sin θ`, with eigenvalue.
pub fn fd_eigenfunction(
    mtilde: i64,
    b: f64,
    gridsize: usize,
    index: usize,
) -> Result<(f64, GridFunction), OracleError> {
    if gridsize < MIN_FD_GRID {
        return Err(OracleError::GridTooSmall(gridsize));
    }
    let (diag, off, weight) = fform_matrix(mtilde, b, gridsize);
    let lambda = tridiag::kth_eigenvalue(&diag, &off, index)?;
    let y = tridiag::eigenvector(&diag, &off, lambda);
    let h = PI / gridsize as f64;
    // y ∝ W^{1/2} F with Σ y² = 1; the 1/√h makes Σ F² sin θ_i h = 1.
    let values = y
        .iter()
        .zip(&weight)
        .map(|(v, w)| v / w.sqrt() / h.sqrt())
        .collect();
    Ok((
        lambda,
        GridFunction {
            thetamin: 0.0,
            thetamax: PI,
            values,
        },
    ))
}

/// `|⟨F_fd, F_closed⟩|` under weight `sin θ` with both unit-normalized, for
/// the state `mode` against FD eigenfunction number `t − |m̃|`.
pub fn eigenfunction_correlation(mode: &RotatorMode, gridsize: usize) -> Result<f64, OracleError> {
    let w = Wavefunction::build(mode)?;
    eigenfunction_correlation_with(&w, gridsize)
}

pub fn eigenfunction_correlation_with(w: &Wavefunction, gridsize: usize) -> Result<f64, OracleError> {
    let mode = &w.mode;
    let (_, fd) = fd_eigenfunction(mode.mtilde, rational_to_f64(&mode.b), gridsize, mode.n())?;
    let closed = GridFunction::sample(|th| w.eval_f(th), 0.0, PI, gridsize);
    let dot = fd.weighted_dot(&closed);
    let norms = (fd.weighted_dot(&fd) * closed.weighted_dot(&closed)).sqrt();
    Ok((dot / norms).abs())
}

/// `|⟨F_fd, P̂_t^{|m̃|}⟩|` from the FD eigenvector of the sector; a route to
/// [`overlap`] that never touches the closed form.
pub fn fd_overlap(mode: &RotatorMode, gridsize: usize) -> Result<f64, OracleError> {
    let (_, fd) = fd_eigenfunction(mode.mtilde, rational_to_f64(&mode.b), gridsize, mode.n())?;
    let p = assoc_legendre(mode.t, mode.mtilde).map_err(RotatorError::from)?;
    let pnorm = rational_to_f64(&p.norm_squared()).sqrt();
    let pf = p.evaluator();
    let phat = GridFunction::sample(|th| pf(th) / pnorm, 0.0, PI, gridsize);
    Ok(fd.weighted_dot(&phat).abs())
}

/// `⟨F̂, P̂⟩ = ∫ F̂_t^{|m̃|} P̂_t^{|m̃|} sin θ dθ` with both factors
/// unit-normalized and `F` carrying the sign convention of the build.
/// `P̂` is normalized with the same rule as `F`, so that quadrature error
/// cancels when `F = P̂` (the free rotor).
pub fn overlap(mode: &RotatorMode) -> Result<f64, OracleError> {
    let w = Wavefunction::build(mode)?;
    let p = assoc_legendre(mode.t, mode.mtilde).map_err(RotatorError::from)?;
    let pf = p.evaluator();
    let pnorm = quadrature(|th| pf(th) * pf(th) * th.sin(), 0.0, PI, DEFAULT_QUADRATURE_NODES).sqrt();
    Ok(quadrature(
        |th| w.eval_f(th) * pf(th) / pnorm * th.sin(),
        0.0,
        PI,
        DEFAULT_QUADRATURE_NODES,
    ))
}

/// Gram matrix `∫ F_t F_{t'} sin θ dθ` for `t, t' = |m̃|..tmax`.
pub fn orthogonality_matrix(mtilde: i64, b: &Rational, tmax: usize) -> Result<Vec<Vec<f64>>, OracleError> {
    let am = mtilde.unsigned_abs() as usize;
    let states: Vec<Wavefunction> = (am..=tmax)
        .map(|t| Wavefunction::build(&RotatorMode::new(t, mtilde, b.clone())?))
        .collect::<Result<_, RotatorError>>()?;
    Ok(gram(&states))
}

pub fn gram(states: &[Wavefunction]) -> Vec<Vec<f64>> {
    states
        .iter()
        .map(|a| {
            states
                .iter()
                .map(|c| {
                    quadrature(
                        |th| a.eval_f(th) * c.eval_f(th) * th.sin(),
                        0.0,
                        PI,
                        DEFAULT_QUADRATURE_NODES,
                    )
                })
                .collect()
        })
        .collect()
}

/// Rayleigh-quotient estimate of the eigenvalue of `e^{−αθ/2} L² e^{αθ/2}`
/// on the damped harmonic `Ỹ_t^m`, `α = 2b/(t+1/2)`.
///
/// The polar part of `L²`, `−(1/sin θ)(sin θ g′)′ + m²/sin²θ g`, is applied
/// by five-point central differences (fourth order) on the interior of the
/// cell-centered grid; the quotient uses weight `sin θ`.
pub fn similarity_check(t: usize, m: i64, b: &Rational, gridsize: usize) -> Result<f64, OracleError> {
    if gridsize < MIN_FD_GRID {
        return Err(OracleError::GridTooSmall(gridsize));
    }
    let p = assoc_legendre(t, m).map_err(|_| OracleError::InvalidOrder { t, m })?;
    let pf = p.evaluator();
    let half_alpha = rational_to_f64(b) / (t as f64 + 0.5);
    let damped = GridFunction::sample(|th| (-half_alpha * th).exp() * pf(th), 0.0, PI, gridsize);
    let h = damped.step();
    let undamped: Vec<f64> = damped
        .nodes()
        .zip(&damped.values)
        .map(|(th, y)| (half_alpha * th).exp() * y)
        .collect();
    let m2 = (m * m) as f64;

    let mut num = 0.0;
    let mut den = 0.0;
    let g = &undamped;
    for i in 2..gridsize - 2 {
        let th = damped.node(i);
        let (s, c) = th.sin_cos();
        let d1 = (-g[i + 2] + 8.0 * g[i + 1] - 8.0 * g[i - 1] + g[i - 2]) / (12.0 * h);
        let d2 = (-g[i + 2] + 16.0 * g[i + 1] - 30.0 * g[i] + 16.0 * g[i - 1] - g[i - 2])
            / (12.0 * h * h);
        let l2g = -(d2 + c / s * d1) + m2 / (s * s) * g[i];
        let op = (-half_alpha * th).exp() * l2g;
        num += damped.values[i] * op * s;
        den += damped.values[i] * damped.values[i] * s;
    }
    Ok(num / den)
}

/// Coefficients of `sin^t θ · R_n(cot θ)` on `P_t^k`, `k = |m̃|..t`,
/// recovered numerically: `f64` samples, Simpson inner products against
/// the normalized basis and a dense Gram solve. Independent of the exact
/// trigonometric reduction used by the closed-form decomposition.
pub fn projection_coefficients(mode: &RotatorMode) -> Result<Vec<(usize, f64)>, OracleError> {
    let rp = rodrigues(&romanovski_params(mode));
    let r = rp.poly.to_f64_coeffs();
    let t = mode.t;
    let target = |th: f64| {
        let (s, c) = th.sin_cos();
        r.iter()
            .enumerate()
            .map(|(j, rj)| rj * c.powi(j as i32) * s.max(0.0).powi((t - j) as i32))
            .sum::<f64>()
    };
    let ks: Vec<usize> = (mode.abs_m()..=t).collect();
    let basis: Vec<(f64, Box<dyn Fn(f64) -> f64>)> = ks
        .iter()
        .map(|&k| {
            let p = assoc_legendre(t, k as i64).expect("k ≤ t");
            let scale = rational_to_f64(&p.norm_squared()).sqrt();
            (scale, Box::new(p.evaluator()) as Box<dyn Fn(f64) -> f64>)
        })
        .collect();
    let inner = |f: &dyn Fn(f64) -> f64, g: &dyn Fn(f64) -> f64| {
        quadrature(|th| f(th) * g(th) * th.sin(), 0.0, PI, DEFAULT_QUADRATURE_NODES)
    };
    let n = ks.len();
    let mut a = vec![vec![0.0; n]; n];
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        let (si, fi) = &basis[i];
        for j in 0..n {
            let (sj, fj) = &basis[j];
            a[i][j] = inner(fi.as_ref(), fj.as_ref()) / (si * sj);
        }
        rhs[i] = inner(fi.as_ref(), &target) / si;
    }
    let x = dense_solve(a, rhs);
    Ok(ks
        .into_iter()
        .zip(x)
        .zip(&basis)
        .map(|((k, xk), (s, _))| (k, xk / s))
        .collect())
}

/// Gaussian elimination with partial pivoting.
fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty");
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= f * a[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Pointwise residual of the polar equation for a closed-form state,
/// `−F″ − cot θ F′ + m̃²/sin²θ F − 2b cot θ F − ε F`, with derivatives from
/// Richardson-extrapolated central differences of step `h` and `h/2`.
/// Returns `max |residual| / max |F|` over `samples` interior nodes.
pub fn master_equation_residual(w: &Wavefunction, samples: usize, h: f64) -> f64 {
    let f = |th: f64| w.eval_f(th);
    let d1 = |th: f64, h: f64| (f(th + h) - f(th - h)) / (2.0 * h);
    let d2 = |th: f64, h: f64| (f(th + h) - 2.0 * f(th) + f(th - h)) / (h * h);
    let eps = rational_to_f64(&w.epsilon());
    let b = rational_to_f64(&w.mode.b);
    let m2 = (w.mode.mtilde * w.mode.mtilde) as f64;
    let nodes: Vec<f64> = (1..=samples)
        .map(|i| PI * i as f64 / (samples + 1) as f64)
        .collect();
    let fmax = nodes.iter().map(|&th| f(th).abs()).fold(0.0, f64::max);
    nodes
        .iter()
        .map(|&th| {
            let p1 = (4.0 * d1(th, h / 2.0) - d1(th, h)) / 3.0;
            let p2 = (4.0 * d2(th, h / 2.0) - d2(th, h)) / 3.0;
            let (s, c) = th.sin_cos();
            let cot = c / s;
            (-p2 - cot * p1 + m2 / (s * s) * f(th) - 2.0 * b * cot * f(th) - eps * f(th)).abs()
        })
        .fold(0.0, f64::max)
        / fmax
}
