//! Locale-independent number rendering with 12 significant digits.

use num_complex::Complex64;

pub const SIG_DIGITS: i32 = 12;

/// Fixed notation with 12 significant digits for moderate magnitudes,
/// scientific notation otherwise. Never prints `-0`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..15).contains(&mag) {
        return format!("{:.*e}", (SIG_DIGITS - 1) as usize, x);
    }
    let decimals = (SIG_DIGITS - 1 - mag).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        return "0".to_string();
    }
    s
}

pub fn complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() && z.im != 0.0 { '-' } else { '+' };
    format!("{} {} {}i", num(z.re), sign, num(z.im.abs()))
}

pub fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(std::f64::consts::PI), "3.14159265359");
        assert_eq!(num(4.550624902367), "4.55062490237");
        assert_eq!(num(-0.5), "-0.500000000000");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(123456.0), "123456.000000");
        assert_eq!(num(1.5e-7), "1.50000000000e-7");
    }

    #[test]
    fn complex_rendering() {
        assert_eq!(complex(Complex64::new(1.0, -2.0)), "1.00000000000 - 2.00000000000i");
        assert_eq!(complex(Complex64::new(0.0, 0.5)), "0 + 0.500000000000i");
    }
}
