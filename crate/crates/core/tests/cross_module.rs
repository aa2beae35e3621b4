//! Cross-module consistency under randomized couplings: the exact spectrum,
//! the expansion `F ∝ e^{−αθ/2} Σ_k c_k P_t^k` and the finite-difference
//! oracle must agree.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotor_core::exact::rat;
use rotor_core::legendre::assoc_legendre;
use rotor_core::oracle::{fd_eigenvalues, fd_eigenvalues_uform};
use rotor_core::rotator::{decompose, energy, RotatorMode, Wavefunction};
use rotor_core::{rational_to_f64, Rational};

fn random_couplings(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| rat(rng.gen_range(-12..=12), rng.gen_range(1..=6)))
        .collect()
}

#[test]
fn fd_sectors_reproduce_exact_levels() {
    for b in random_couplings(11, 4) {
        let bf = rational_to_f64(&b);
        for m in 0..=2i64 {
            let fd = fd_eigenvalues(m, bf, 3000, 3).unwrap();
            for (k, ev) in fd.eigenvalues.iter().enumerate() {
                let exact = rational_to_f64(&energy(m as usize + k, &b).epsilon);
                let tol = 5e-3 * (1.0 + bf.abs());
                assert!((ev - exact).abs() < tol, "b={b} m={m} k={k}: {ev} vs {exact}");
            }
        }
    }
}

#[test]
fn uform_and_fform_agree_away_from_axis_sector() {
    for b in random_couplings(12, 3) {
        let bf = rational_to_f64(&b);
        for m in 1..=2i64 {
            let f = fd_eigenvalues(m, bf, 3000, 2).unwrap();
            let u = fd_eigenvalues_uform(m, bf, 3000, 2).unwrap();
            for (a, c) in f.eigenvalues.iter().zip(&u.eigenvalues) {
                assert!((a - c).abs() < 1e-2 * (1.0 + a.abs()), "b={b} m={m}: {a} vs {c}");
            }
        }
    }
}

#[test]
fn legendre_expansion_reassembles_wavefunction() {
    for b in random_couplings(13, 5) {
        for t in 0..=4usize {
            for m in -(t as i64)..=t as i64 {
                let mode = RotatorMode::new(t, m, b.clone()).unwrap();
                let d = decompose(&mode).unwrap();
                let w = Wavefunction::build(&mode).unwrap();
                let alpha = rational_to_f64(&w.alpha);
                let scale = (1..40)
                    .map(|i| PI * i as f64 / 40.0)
                    .find_map(|th| {
                        let raw = d.eval_real(th);
                        (raw.abs() > 1e-3).then(|| w.eval_f(th) / ((-alpha * th / 2.0).exp() * raw))
                    })
                    .unwrap();
                for i in 1..40 {
                    let th = PI * i as f64 / 40.0;
                    let series: f64 = d
                        .coeffs
                        .iter()
                        .map(|(k, c)| rational_to_f64(c) * assoc_legendre(t, *k as i64).unwrap().eval(th))
                        .sum();
                    let lhs = w.eval_f(th);
                    let rhs = scale * (-alpha * th / 2.0).exp() * series;
                    assert!((lhs - rhs).abs() < 1e-8 * (1.0 + lhs.abs()), "b={b} t={t} m={m} θ={th}");
                }
            }
        }
    }
}
