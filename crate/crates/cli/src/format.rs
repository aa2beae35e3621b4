//! Locale-independent number formatting for CSV/JSON output.

use rotor_core::Rational;

/// `%.12g`: twelve significant digits, trailing zeros dropped, scientific
/// notation outside `1e-4 ≤ |x| < 1e12`.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        return format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (11 - exp) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Value rounded to twelve significant digits, for JSON numbers.
pub fn round12(x: f64) -> f64 {
    fmt_real(x).parse().unwrap_or(x)
}

/// `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_real(-4.0), "-4");
        assert_eq!(fmt_real(14.0 / 9.0), "1.55555555556");
        assert_eq!(fmt_real(5.84), "5.84");
        assert_eq!(fmt_real(0.0), "0");
        assert_eq!(fmt_real(-0.0), "0");
        assert_eq!(fmt_real(2.0e-3), "0.002");
        assert_eq!(fmt_real(1.234e-7), "1.234e-07");
        assert_eq!(fmt_real(9.999999999999995), "10");
        assert_eq!(fmt_real(123456789012345.0), "1.23456789012e+14");
        assert_eq!(fmt_real((-2.0 * std::f64::consts::PI / 3.0).exp()), "0.12314471107");
    }
}
