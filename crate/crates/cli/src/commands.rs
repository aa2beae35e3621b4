//! CSV and JSON emitters. Every CSV has one header row, comma separators
//! and `.` decimals; reals carry 12 significant digits and rationals are
//! printed exactly.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rotor_core::legendre::spherical_harmonic_abs;
use rotor_core::rotator::{self, damped_harmonic, damping_factor, RotatorError, RotatorMode, Wavefunction};
use rotor_core::{parse_rational, rational_to_f64, Rational};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::format::{fmt_rational, fmt_real};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    BadRational(#[from] rotor_core::exact::ParseRationalError),
    #[error(transparent)]
    Rotator(#[from] RotatorError),
    #[error("{0}")]
    Usage(String),
}

pub fn parse_b(s: &str) -> Result<Rational, CommandError> {
    Ok(parse_rational(s)?)
}

/// `t,degeneracy,epsilon_exact,epsilon_float` for `t = 0..=tmax`.
pub fn spectrum(b: &Rational, tmax: usize) -> String {
    let mut out = String::from("t,degeneracy,epsilon_exact,epsilon_float\n");
    for t in 0..=tmax {
        let e = rotator::energy(t, b);
        let _ = writeln!(
            out,
            "{},{},{},{}",
            t,
            e.degeneracy,
            fmt_rational(&e.epsilon),
            fmt_real(rational_to_f64(&e.epsilon))
        );
    }
    out
}

/// `t,dE_perturbed_exact,dE_perturbed_float,dE_free_float` for `t = 1..=tmax`.
pub fn splittings(b: &Rational, tmax: usize) -> Result<String, CommandError> {
    if tmax < 1 {
        return Err(CommandError::Usage("splittings needs --tmax ≥ 1".into()));
    }
    let mut out = String::from("t,dE_perturbed_exact,dE_perturbed_float,dE_free_float\n");
    for t in 1..=tmax {
        let de = rotator::splitting(t, b)?;
        let _ = writeln!(
            out,
            "{},{},{},{}",
            t,
            fmt_rational(&de),
            fmt_real(rational_to_f64(&de)),
            fmt_real(2.0 * t as f64)
        );
    }
    Ok(out)
}

/// `theta,U,F` at `θ_i = π(i+1)/(samples+1)`, `i = 0..samples`.
pub fn wavefunction(t: usize, mtilde: i64, b: &Rational, samples: usize) -> Result<String, CommandError> {
    if samples < 2 {
        return Err(CommandError::Usage("--samples must be at least 2".into()));
    }
    let w = Wavefunction::build(&RotatorMode::new(t, mtilde, b.clone())?)?;
    let mut out = String::from("theta,U,F\n");
    for i in 0..samples {
        let th = PI * (i + 1) as f64 / (samples + 1) as f64;
        let _ = writeln!(out, "{},{},{}", fmt_real(th), fmt_real(w.eval_u(th)), fmt_real(w.eval_f(th)));
    }
    Ok(out)
}

/// `{"t", "mtilde", "b", "coeffs": {"k": "p/q"}}` with `k` ascending.
pub fn decompose_json(t: usize, mtilde: i64, b: &Rational) -> Result<Value, CommandError> {
    let d = rotator::decompose(&RotatorMode::new(t, mtilde, b.clone())?)?;
    let coeffs: Map<String, Value> = d
        .coeffs
        .iter()
        .map(|(k, c)| (k.to_string(), Value::String(fmt_rational(c))))
        .collect();
    Ok(json!({
        "t": t,
        "mtilde": mtilde,
        "b": fmt_rational(b),
        "coeffs": coeffs,
    }))
}

pub fn decompose(t: usize, mtilde: i64, b: &Rational) -> Result<String, CommandError> {
    let v = decompose_json(t, mtilde, b)?;
    Ok(serde_json::to_string_pretty(&v).expect("serializable") + "\n")
}

/// `θ_i = π i/(samples−1)`, endpoints included.
fn closed_grid(samples: usize) -> Result<Vec<f64>, CommandError> {
    if samples < 2 {
        return Err(CommandError::Usage("--samples must be at least 2".into()));
    }
    Ok((0..samples)
        .map(|i| {
            if i + 1 == samples {
                PI
            } else {
                PI * i as f64 / (samples - 1) as f64
            }
        })
        .collect())
}

/// `theta,factor_t<t>…` with columns in ascending `t` (duplicates dropped).
pub fn damping(b: &Rational, tlist: &[usize], samples: usize) -> Result<String, CommandError> {
    if tlist.is_empty() {
        return Err(CommandError::Usage("--t needs at least one value".into()));
    }
    let mut ts = tlist.to_vec();
    ts.sort_unstable();
    ts.dedup();
    let mut out = String::from("theta");
    for t in &ts {
        let _ = write!(out, ",factor_t{t}");
    }
    out.push('\n');
    for th in closed_grid(samples)? {
        out.push_str(&fmt_real(th));
        for &t in &ts {
            let _ = write!(out, ",{}", fmt_real(damping_factor(t, b, th)));
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum HarmonicKind {
    Regular,
    Damped,
}

/// `theta,absY`; `|Y|` does not depend on φ.
pub fn harmonic(
    t: usize,
    m: i64,
    b: &Rational,
    kind: HarmonicKind,
    samples: usize,
) -> Result<String, CommandError> {
    if m.unsigned_abs() as usize > t {
        return Err(RotatorError::InvalidMode { t, mtilde: m }.into());
    }
    let mut out = String::from("theta,absY\n");
    for th in closed_grid(samples)? {
        let v = match kind {
            HarmonicKind::Regular => spherical_harmonic_abs(t, m, th).map_err(RotatorError::from)?,
            HarmonicKind::Damped => damped_harmonic(t, m, b, th)?,
        };
        let _ = writeln!(out, "{},{}", fmt_real(th), fmt_real(v));
    }
    Ok(out)
}
