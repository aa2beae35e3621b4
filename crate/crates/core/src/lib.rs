//! Exact-plus-numerical toolkit for the rigid rotator hindered by a
//! cotangent potential `-2b cot θ`.
//!
//! * [`exact`]: rational scalars and univariate polynomials.
//! * [`romanovski`]: Romanovski polynomials from the Rodrigues formula.
//! * [`legendre`]: associated Legendre functions (no Condon–Shortley phase)
//!   and `|Y_l^m|`.
//! * [`rotator`]: spectrum, wavefunctions, Legendre decompositions, damped
//!   harmonics.
//! * [`oracle`]: quadrature, a finite-difference Sturm–Liouville eigensolver
//!   and the numerical cross-checks built on it.
//!
//! Energies are dimensionless, in units of `ħ²/2I`.

pub mod exact;
pub mod legendre;
pub mod oracle;
pub mod romanovski;
pub mod rotator;

pub use exact::{parse_rational, rational_to_f64, Poly, Rational};
pub use legendre::AssocLegendre;
pub use romanovski::{RomanovskiParams, RomanovskiPoly};
pub use rotator::{Decomposition, RotatorMode, SpectrumEntry, Wavefunction};
