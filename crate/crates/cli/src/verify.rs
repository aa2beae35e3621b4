//! The verification report: every closed-form claim checked against its
//! exact identity or its numerical oracle, one record per check.

use rotor_core::exact::{int, rat};
use rotor_core::oracle::{
    self, eigenfunction_correlation_with, fd_eigenvalues, gram, master_equation_residual, overlap,
    projection_coefficients, similarity_check,
};
use rotor_core::romanovski::{ode_residual_for, RomanovskiParams};
use rotor_core::rotator::{
    algebraic_energy, decompose, energy, params, splitting, RotatorMode, Wavefunction,
};
use rotor_core::{rational_to_f64, Rational};
use serde::Serialize;

use crate::format::{fmt_rational, round12};

/// Eigenvalue tolerance at the default grid.
pub const FD_EIGENVALUE_TOL: f64 = 5e-3;
/// Looser eigenvalue tolerance for the `m̃ = 0`, `|b| ≥ 2` sector.
pub const FD_EIGENVALUE_TOL_STRONG: f64 = 2e-2;
pub const GRID_CONVERGENCE_MIN_RATIO: f64 = 3.0;
pub const GRAM_TOL: f64 = 1e-8;
pub const OVERLAP_FREE_TOL: f64 = 1e-10;
pub const PROJECTION_TOL: f64 = 1e-9;
pub const SIMILARITY_TOL: f64 = 1e-3;
pub const EIGENFUNCTION_MIN_CORRELATION: f64 = 0.9999;
pub const MASTER_RESIDUAL_TOL: f64 = 1e-6;
pub const MASTER_RESIDUAL_STEP: f64 = 1e-4;
/// Errors below this are roundoff; the convergence ratio is not meaningful.
const CONVERGED_FLOOR: f64 = 1e-8;
const SPLITTING_TMAX: usize = 50;
const OVERLAP_TMAX: usize = 10;
const SIMILARITY_TMAX: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Measure {
    Real(f64),
    Exact(String),
}

impl Measure {
    fn real(x: f64) -> Self {
        if x.is_finite() {
            Measure::Real(round12(x))
        } else {
            Measure::Exact(x.to_string())
        }
    }

    fn exact(r: &Rational) -> Self {
        Measure::Exact(fmt_rational(r))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    pub measured: Measure,
    pub expected: Measure,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl CheckRecord {
    fn new(name: impl Into<String>, pass: bool, measured: Measure, expected: Measure, tolerance: f64) -> Self {
        CheckRecord {
            name: name.into(),
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            measured,
            expected,
            tolerance,
            diagnostic: None,
        }
    }

    fn failure(name: impl Into<String>, diagnostic: String) -> Self {
        CheckRecord {
            name: name.into(),
            status: CheckStatus::Fail,
            measured: Measure::Exact("error".into()),
            expected: Measure::Exact("-".into()),
            tolerance: 0.0,
            diagnostic: Some(diagnostic),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub b: Rational,
    pub tmax: usize,
    pub gridsize: usize,
    /// Negative control: build wavefunctions with `β − 1` (the second
    /// superscript as printed for `t = 2`, read as `β`).
    pub misread_beta: bool,
}

impl VerifyOptions {
    pub fn new(b: Rational, tmax: usize) -> Self {
        VerifyOptions {
            b,
            tmax,
            gridsize: 4000,
            misread_beta: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub b: String,
    pub tmax: usize,
    pub grid: usize,
    pub misread_beta: bool,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

fn build_state(mode: &RotatorMode, misread_beta: bool) -> Result<Wavefunction, rotor_core::rotator::RotatorError> {
    if misread_beta {
        let (_, alpha, beta) = params(mode);
        Wavefunction::build_with(mode, alpha, beta - int(1))
    } else {
        Wavefunction::build(mode)
    }
}

fn eigen_tolerance(mtilde: i64, b: f64) -> f64 {
    if mtilde == 0 && b.abs() >= 2.0 {
        FD_EIGENVALUE_TOL_STRONG
    } else {
        FD_EIGENVALUE_TOL
    }
}

pub fn run(opts: &VerifyOptions) -> VerifyReport {
    let mut checks = Vec::new();
    let b = &opts.b;
    let bf = rational_to_f64(b);

    // E_1 − E_0 = 2 + 32b²/9
    let gap = splitting(1, b).expect("t = 1");
    let expected_gap = int(2) + rat(32, 9) * b * b;
    checks.push(CheckRecord::new(
        "anomalous_gap",
        gap == expected_gap,
        Measure::exact(&gap),
        Measure::exact(&expected_gap),
        0.0,
    ));

    let mismatches = (1..=SPLITTING_TMAX)
        .filter(|&t| splitting(t, b).expect("t ≥ 1") != energy(t, b).epsilon - energy(t - 1, b).epsilon)
        .count();
    checks.push(CheckRecord::new(
        format!("splitting_identity[t<={SPLITTING_TMAX}]"),
        mismatches == 0,
        Measure::Real(mismatches as f64),
        Measure::Real(0.0),
        0.0,
    ));

    let alg_mismatches = (0..=SPLITTING_TMAX)
        .filter(|&l| algebraic_energy(l, b) != energy(l, b).epsilon)
        .count();
    checks.push(CheckRecord::new(
        format!("algebraic_spectrum_equivalence[l<={SPLITTING_TMAX}]"),
        alg_mismatches == 0,
        Measure::Real(alg_mismatches as f64),
        Measure::Real(0.0),
        0.0,
    ));

    fd_checks(opts, bf, &mut checks);

    for t in 0..=opts.tmax {
        for m in 0..=t as i64 {
            let name = |what: &str| format!("{what}[t={t},m={m}]");
            let mode = RotatorMode::new(t, m, b.clone()).expect("|m| ≤ t");
            match build_state(&mode, opts.misread_beta) {
                Ok(w) => {
                    let (n, alpha, beta) = params(&mode);
                    let residual = ode_residual_for(&w.rpoly, &RomanovskiParams::new(n, alpha, beta));
                    checks.push(CheckRecord::new(
                        name("romanovski_ode_residual"),
                        residual.is_zero(),
                        Measure::Exact(residual.to_string()),
                        Measure::Exact("0".into()),
                        0.0,
                    ));
                    let r = master_equation_residual(&w, 100, MASTER_RESIDUAL_STEP);
                    checks.push(CheckRecord::new(
                        name("polar_equation_residual"),
                        r <= MASTER_RESIDUAL_TOL,
                        Measure::real(r),
                        Measure::Real(0.0),
                        MASTER_RESIDUAL_TOL,
                    ));
                    match eigenfunction_correlation_with(&w, opts.gridsize) {
                        Ok(c) => checks.push(CheckRecord::new(
                            name("fd_eigenfunction_correlation"),
                            c >= EIGENFUNCTION_MIN_CORRELATION,
                            Measure::real(c),
                            Measure::Real(1.0),
                            1.0 - EIGENFUNCTION_MIN_CORRELATION,
                        )),
                        Err(e) => checks.push(CheckRecord::failure(name("fd_eigenfunction_correlation"), e.to_string())),
                    }
                }
                Err(e) => checks.push(CheckRecord::failure(name("wavefunction"), e.to_string())),
            }
            decomposition_checks(&mode, &mut checks);
        }
    }

    free_rotator_checks(opts.tmax, &mut checks);
    overlap_checks(b, &mut checks);

    for t in 0..=opts.tmax.min(SIMILARITY_TMAX) {
        for m in 0..=t as i64 {
            let name = format!("similarity_identity[t={t},m={m}]");
            let expected = (t * (t + 1)) as f64;
            match similarity_check(t, m, b, opts.gridsize) {
                Ok(v) => checks.push(CheckRecord::new(
                    name,
                    (v - expected).abs() <= SIMILARITY_TOL,
                    Measure::real(v),
                    Measure::Real(expected),
                    SIMILARITY_TOL,
                )),
                Err(e) => checks.push(CheckRecord::failure(name, e.to_string())),
            }
        }
    }

    for m in 0..=opts.tmax.min(1) as i64 {
        let name = format!("orthogonality[m={m},t<={}]", opts.tmax);
        let states: Result<Vec<Wavefunction>, _> = (m as usize..=opts.tmax)
            .map(|t| build_state(&RotatorMode::new(t, m, b.clone()).expect("|m| ≤ t"), opts.misread_beta))
            .collect();
        match states {
            Ok(states) => {
                let g = gram(&states);
                let dev = g
                    .iter()
                    .enumerate()
                    .flat_map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(move |(j, v)| (v - if i == j { 1.0 } else { 0.0 }).abs())
                    })
                    .fold(0.0, f64::max);
                checks.push(CheckRecord::new(
                    name,
                    dev <= GRAM_TOL,
                    Measure::real(dev),
                    Measure::Real(0.0),
                    GRAM_TOL,
                ));
            }
            Err(e) => checks.push(CheckRecord::failure(name, e.to_string())),
        }
    }

    let failed = checks.iter().filter(|c| !c.passed()).count();
    VerifyReport {
        b: fmt_rational(b),
        tmax: opts.tmax,
        grid: opts.gridsize,
        misread_beta: opts.misread_beta,
        passed: checks.len() - failed,
        failed,
        checks,
    }
}

/// Degeneracy: every sector `m̃ = 0..t` contains `ε_t`; and second-order
/// convergence between `grid/2` and `grid`.
fn fd_checks(opts: &VerifyOptions, bf: f64, checks: &mut Vec<CheckRecord>) {
    for m in 0..=opts.tmax as i64 {
        let count = opts.tmax - m as usize + 1;
        let fine = fd_eigenvalues(m, bf, opts.gridsize, count);
        let coarse = fd_eigenvalues(m, bf, opts.gridsize / 2, count);
        let (fine, coarse) = match (fine, coarse) {
            (Ok(f), Ok(c)) => (f, c),
            (Err(e), _) | (_, Err(e)) => {
                checks.push(CheckRecord::failure(format!("fd_sector[m={m}]"), e.to_string()));
                continue;
            }
        };
        for (k, (&ef, &ec)) in fine.eigenvalues.iter().zip(&coarse.eigenvalues).enumerate() {
            let t = m as usize + k;
            let exact = rational_to_f64(&energy(t, &opts.b).epsilon);
            let tol = eigen_tolerance(m, bf);
            checks.push(CheckRecord::new(
                format!("fd_degeneracy[t={t},m={m}]"),
                (ef - exact).abs() <= tol,
                Measure::real(ef),
                Measure::real(exact),
                tol,
            ));
            let (err_f, err_c) = ((ef - exact).abs(), (ec - exact).abs());
            let ratio = if err_f < CONVERGED_FLOOR && err_c < CONVERGED_FLOOR {
                f64::INFINITY
            } else {
                err_c / err_f
            };
            checks.push(CheckRecord::new(
                format!("fd_grid_convergence[t={t},m={m}]"),
                ratio >= GRID_CONVERGENCE_MIN_RATIO,
                Measure::real(ratio),
                Measure::Real(4.0),
                GRID_CONVERGENCE_MIN_RATIO,
            ));
        }
    }
}

/// Structure of the exact expansion and agreement with quadrature projection.
fn decomposition_checks(mode: &RotatorMode, checks: &mut Vec<CheckRecord>) {
    let (t, m) = (mode.t, mode.mtilde);
    let name = |what: &str| format!("{what}[t={t},m={m}]");
    let d = match decompose(mode) {
        Ok(d) => d,
        Err(e) => {
            checks.push(CheckRecord::failure(name("decomposition"), e.to_string()));
            return;
        }
    };
    let keys_ok = d.coeffs.keys().copied().eq(mode.abs_m()..=t);
    checks.push(CheckRecord::new(
        name("decomposition_support"),
        keys_ok,
        Measure::Real(d.coeffs.len() as f64),
        Measure::Real((t - mode.abs_m() + 1) as f64),
        0.0,
    ));
    match projection_coefficients(mode) {
        Ok(proj) => {
            let dev = proj
                .iter()
                .map(|(k, v)| (v - rational_to_f64(&d.coeffs[k])).abs())
                .fold(0.0, f64::max);
            checks.push(CheckRecord::new(
                name("decomposition_vs_projection"),
                dev <= PROJECTION_TOL,
                Measure::real(dev),
                Measure::Real(0.0),
                PROJECTION_TOL,
            ));
        }
        Err(e) => checks.push(CheckRecord::failure(name("decomposition_vs_projection"), e.to_string())),
    }
    if !mode.b.is_zero_value() && mode.abs_m() < t {
        let nz = d.nonzero_count();
        checks.push(CheckRecord::new(
            name("eigenfunction_inequivalence"),
            nz >= 2,
            Measure::Real(nz as f64),
            Measure::Real(2.0),
            0.0,
        ));
    }
}

fn free_rotator_checks(tmax: usize, checks: &mut Vec<CheckRecord>) {
    for t in 0..=tmax {
        let eps = energy(t, &int(0)).epsilon;
        let expected = int((t * (t + 1)) as i64);
        checks.push(CheckRecord::new(
            format!("free_spectrum[t={t}]"),
            eps == expected,
            Measure::exact(&eps),
            Measure::exact(&expected),
            0.0,
        ));
        for m in 0..=t as i64 {
            let mode = RotatorMode::new(t, m, int(0)).expect("|m| ≤ t");
            let single = decompose(&mode).map(|d| d.nonzero_count() == 1 && !d.coeffs[&(m as usize)].is_zero_value())
                .unwrap_or(false);
            checks.push(CheckRecord::new(
                format!("free_single_legendre[t={t},m={m}]"),
                single,
                Measure::Real(if single { 1.0 } else { 0.0 }),
                Measure::Real(1.0),
                0.0,
            ));
            match overlap(&mode) {
                Ok(o) => checks.push(CheckRecord::new(
                    format!("free_overlap[t={t},m={m}]"),
                    (o - 1.0).abs() <= OVERLAP_FREE_TOL,
                    Measure::real(o),
                    Measure::Real(1.0),
                    OVERLAP_FREE_TOL,
                )),
                Err(e) => checks.push(CheckRecord::failure(format!("free_overlap[t={t},m={m}]"), e.to_string())),
            }
        }
    }
}

/// `overlap(t)` at `m̃ = 0`, `t = 1..10`: strictly increasing when `b ≠ 0`,
/// identically one when `b = 0`.
fn overlap_checks(b: &Rational, checks: &mut Vec<CheckRecord>) {
    let values: Result<Vec<f64>, oracle::OracleError> = (1..=OVERLAP_TMAX)
        .map(|t| overlap(&RotatorMode::new(t, 0, b.clone()).expect("m = 0")))
        .collect();
    let values = match values {
        Ok(v) => v,
        Err(e) => {
            checks.push(CheckRecord::failure("overlap_sequence", e.to_string()));
            return;
        }
    };
    if b.is_zero_value() {
        let dev = values.iter().map(|o| (o - 1.0).abs()).fold(0.0, f64::max);
        checks.push(CheckRecord::new(
            format!("overlap_sequence_free[t<={OVERLAP_TMAX}]"),
            dev <= OVERLAP_FREE_TOL,
            Measure::real(dev),
            Measure::Real(0.0),
            OVERLAP_FREE_TOL,
        ));
    } else {
        let min_step = values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        checks.push(CheckRecord::new(
            format!("overlap_strictly_increasing[t<={OVERLAP_TMAX}]"),
            min_step > 0.0,
            Measure::real(min_step),
            Measure::Real(0.0),
            0.0,
        ));
    }
}

trait IsZeroValue {
    fn is_zero_value(&self) -> bool;
}

impl IsZeroValue for Rational {
    fn is_zero_value(&self) -> bool {
        *self.numer() == 0.into()
    }
}
