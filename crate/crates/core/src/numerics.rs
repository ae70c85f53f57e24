//! Shared numeric kernels: compensated accumulation, Gamma-family helpers and
//! the geometric constants that recur across every bound.

use std::f64::consts::PI;

/// Neumaier's variant of Kahan summation.
///
/// Accumulation order is the caller's iteration order, so summing the same
/// sequence always yields the same bits.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn csum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Volume of the unit ball in R^n, `pi^(n/2) / Gamma(1 + n/2)`.
pub fn unit_ball_volume(n: usize) -> f64 {
    let half = n as f64 / 2.0;
    PI.powf(half) / gamma(1.0 + half)
}

/// Riemannian volume of the unit sphere S^n (the boundary of the unit ball in R^(n+1)).
pub fn unit_sphere_volume(n: usize) -> f64 {
    let half = (n as f64 + 1.0) / 2.0;
    2.0 * PI.powf(half) / gamma(half)
}

/// `C_n = 4 pi^2 / omega_n^(2/n)`.
pub fn weyl_constant(n: usize) -> f64 {
    4.0 * PI * PI / unit_ball_volume(n).powf(2.0 / n as f64)
}

/// Semiclassical constant `Gamma(1 + rho) / ((4 pi)^(n/2) Gamma(1 + rho + n/2))`.
pub fn classical_constant(rho: f64, n: usize) -> f64 {
    let half = n as f64 / 2.0;
    (ln_gamma(1.0 + rho) - ln_gamma(1.0 + rho + half)).exp() / (4.0 * PI).powf(half)
}

/// `4 pi^2 k^(2/n) / (omega_n |Omega|)^(2/n)`, the Weyl/Polya leading term.
pub fn weyl_leading_term(n: usize, volume: f64, k: f64) -> f64 {
    let e = 2.0 / n as f64;
    4.0 * PI * PI * k.powf(e) / (unit_ball_volume(n) * volume).powf(e)
}

/// Upper incomplete Gamma `Gamma(a, x)` for `a` a positive integer or half-integer.
///
/// Built by upward recurrence from `Gamma(1, x)` or `Gamma(1/2, x)`; every term
/// is positive so there is no cancellation.
pub fn upper_incomplete_gamma_half_integer(a: f64, x: f64) -> f64 {
    let twice = (2.0 * a).round();
    debug_assert!((2.0 * a - twice).abs() < 1e-12 && twice >= 1.0);
    let (mut s, mut g) = if (twice as u64).is_multiple_of(2) {
        (1.0, (-x).exp())
    } else {
        (0.5, PI.sqrt() * libm::erfc(x.sqrt()))
    };
    while s < a - 0.25 {
        g = s * g + x.powf(s) * (-x).exp();
        s += 1.0;
    }
    g
}

/// Binomial coefficient with overflow detection.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Formats `x` rounded to 15 significant digits, in the shortest decimal form
/// that reproduces the rounded value.
pub fn fmt_sig15(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let rounded = round_sig15(x);
    let a = rounded.abs();
    if rounded == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Relative deviation `|value - reference| / |reference|` (absolute when the reference is 0).
pub fn relative_deviation(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value.abs()
    } else {
        (value - reference).abs() / reference.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ball_volumes_match_table() {
        assert_relative_eq!(unit_ball_volume(1), 2.0, max_relative = 1e-15);
        assert_relative_eq!(unit_ball_volume(2), PI, max_relative = 1e-15);
        assert_relative_eq!(unit_ball_volume(3), 4.0 * PI / 3.0, max_relative = 1e-15);
        assert_relative_eq!(unit_ball_volume(4), PI * PI / 2.0, max_relative = 1e-15);
    }

    #[test]
    fn sphere_volumes() {
        assert_relative_eq!(unit_sphere_volume(1), 2.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_volume(2), 4.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_volume(3), 2.0 * PI * PI, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_volume(4), 8.0 * PI * PI / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn classical_constant_values() {
        assert_relative_eq!(classical_constant(1.0, 2), 1.0 / (8.0 * PI), max_relative = 1e-14);
        assert_relative_eq!(classical_constant(0.0, 2), 1.0 / (4.0 * PI), max_relative = 1e-14);
        // L_{0,n} = omega_n / (2 pi)^n
        for n in 1..=6 {
            let alt = unit_ball_volume(n) / (2.0 * PI).powi(n as i32);
            assert_relative_eq!(classical_constant(0.0, n), alt, max_relative = 1e-13);
        }
    }

    #[test]
    fn incomplete_gamma_matches_closed_forms() {
        let x: f64 = 3.7;
        assert_relative_eq!(
            upper_incomplete_gamma_half_integer(1.0, x),
            (-x).exp(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            upper_incomplete_gamma_half_integer(2.0, x),
            (1.0 + x) * (-x).exp(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            upper_incomplete_gamma_half_integer(3.0, x),
            (2.0 + 2.0 * x + x * x) * (-x).exp(),
            max_relative = 1e-14
        );
        // Gamma(a, 0) = Gamma(a)
        assert_relative_eq!(
            upper_incomplete_gamma_half_integer(2.5, 0.0),
            gamma(2.5),
            max_relative = 1e-14
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(2, 5), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut v = vec![1.0e16];
        v.extend(std::iter::repeat_n(1.0, 1000));
        v.push(-1.0e16);
        assert_eq!(csum(v), 1000.0);
    }

    #[test]
    fn sig15_formatting() {
        assert_eq!(fmt_sig15(2.0), "2");
        assert_eq!(fmt_sig15(0.1 + 0.2), "0.3");
        assert_eq!(fmt_sig15(f64::INFINITY), "inf");
        assert_eq!(fmt_sig15(1.0e-20), "1e-20");
        assert_eq!(fmt_sig15(std::f64::consts::PI), "3.14159265358979");
    }
}
