//! The Cheng-Yang recursion and the explicit upper bounds for `lambda_{k+1}`
//! in terms of `lambda_1`.

use crate::bessel::{bessel_zero, BesselOrder};
use crate::error::{Error, Result};
use crate::numerics::csum;
use crate::report::{is_satisfied, Argument, BoundId, BoundReport, Status};
use crate::spectra::{Problem, Spectrum};
use crate::universal_bounds::{shifted_status, ShiftContext};
use std::f64::consts::PI;

/// Log base used in `a(m)`; recorded in report contexts.
pub const A_CONSTANT_LOG: &str = "natural";

/// Prefix statistics of a nondecreasing positive sequence `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyState {
    pub t: f64,
    pub k: usize,
    /// Mean of `mu_i`, `i <= k`.
    pub g: f64,
    /// Mean of `mu_i^2`, `i <= k`.
    pub t_mean: f64,
    /// `(1 + 2/t) G^2 - T`.
    pub f: f64,
}

fn validate(mus: &[f64], t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
    }
    for (i, &m) in mus.iter().enumerate() {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidParameter(format!("mu_{} = {m} is not positive", i + 1)));
        }
        if i > 0 && m < mus[i - 1] {
            return Err(Error::InvalidParameter(format!(
                "mu is not nondecreasing at index {} ({m} after {})",
                i + 1,
                mus[i - 1]
            )));
        }
    }
    Ok(())
}

fn need(mus: &[f64], count: usize) -> Result<()> {
    if count == 0 || count > mus.len() {
        return Err(Error::InsufficientPrefix {
            needed: count,
            available: mus.len(),
        });
    }
    Ok(())
}

fn state_unchecked(mus: &[f64], t: f64, k: usize) -> CyState {
    let kf = k as f64;
    let g = csum(mus[..k].iter().copied()) / kf;
    let t_mean = csum(mus[..k].iter().map(|m| m * m)) / kf;
    CyState {
        t,
        k,
        g,
        t_mean,
        f: (1.0 + 2.0 / t) * g * g - t_mean,
    }
}

pub fn cy_state(mus: &[f64], t: f64, k: usize) -> Result<CyState> {
    need(mus, k)?;
    validate(&mus[..k], t)?;
    Ok(state_unchecked(mus, t, k))
}

/// Verifies `sum_{i<=j} (mu_{j+1} - mu_i)^2 <= (4/t) sum_{i<=j} mu_i (mu_{j+1} - mu_i)`
/// for `j = 1..upto-1`, by direct summation.
pub fn check_yang_hypothesis(mus: &[f64], t: f64, upto: usize) -> Result<()> {
    need(mus, upto)?;
    for j in 1..upto {
        let next = mus[j];
        let lhs = csum(mus[..j].iter().map(|&m| (next - m) * (next - m)));
        let rhs = 4.0 / t * csum(mus[..j].iter().map(|&m| m * (next - m)));
        if !is_satisfied(rhs - lhs, rhs) {
            return Err(Error::YangHypothesis { index: j, lhs, rhs });
        }
    }
    Ok(())
}

fn recursion_report(mus: &[f64], t: f64, k: usize, l: usize) -> BoundReport {
    let e = 4.0 / t;
    let lhs = state_unchecked(mus, t, k + l).f / ((k + l) as f64).powf(e);
    let rhs = state_unchecked(mus, t, k).f / (k as f64).powf(e);
    BoundReport::new(
        BoundId::CyRecursion,
        Argument::K(k),
        lhs,
        rhs,
        Status::Theorem,
        format!("t={t}; l={l}"),
    )
}

/// `F_{k+l} / (k+l)^(4/t) <= F_k / k^(4/t)`, after verifying the hypothesis on
/// every prefix up to `k + l`.
pub fn cy_recursion_check(mus: &[f64], t: f64, k: usize, l: usize) -> Result<BoundReport> {
    if l == 0 {
        return Err(Error::InvalidParameter("l must be >= 1".into()));
    }
    need(mus, k + l)?;
    validate(&mus[..k + l], t)?;
    check_yang_hypothesis(mus, t, k + l)?;
    Ok(recursion_report(mus, t, k, l))
}

/// Single-step recursion reports for every `k < mus.len()`, with the hypothesis
/// verified once over the whole sequence.
pub fn cy_recursion_scan(mus: &[f64], t: f64) -> Result<Vec<BoundReport>> {
    validate(mus, t)?;
    check_yang_hypothesis(mus, t, mus.len())?;
    Ok((1..mus.len()).map(|k| recursion_report(mus, t, k, 1)).collect())
}

/// `a(1) = 2.64`, `a(m) = 2.2 - 4 ln(1 + (m - 3)/50)` for `m >= 2`.
pub fn a_constant(m: usize) -> Result<f64> {
    match m {
        0 => Err(Error::InvalidParameter("a(m) needs m >= 1".into())),
        1 => Ok(2.64),
        _ => Ok(2.2 - 4.0 * (1.0 + (m as f64 - 3.0) / 50.0).ln()),
    }
}

/// `C_0(n, 1) = j_{n/2,1}^2 / j_{n/2-1,1}^2` and `C_0(n, k) = 1 + a(min(n, k-1))/n`.
pub fn c0(n: usize, k: usize) -> Result<f64> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("C0 needs n >= 1 and k >= 1".into()));
    }
    if k == 1 {
        let p = n as f64 / 2.0;
        let upper = bessel_zero(BesselOrder::new(p)?, 1)?;
        // J_{-1/2} is a multiple of cos(x)/sqrt(x)
        let lower = if n == 1 {
            PI / 2.0
        } else {
            bessel_zero(BesselOrder::new(p - 1.0)?, 1)?
        };
        return Ok(upper * upper / (lower * lower));
    }
    Ok(1.0 + a_constant(n.min(k - 1))? / n as f64)
}

/// `C_0(n, k) k^(2/n) lambda_1`.
pub fn cy_upper_bound(lambda1: f64, n: usize, k: usize) -> Result<f64> {
    if !(lambda1.is_finite() && lambda1 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda_1 must be positive, got {lambda1}"
        )));
    }
    Ok(c0(n, k)? * (k as f64).powf(2.0 / n as f64) * lambda1)
}

/// `lambda_{k+1} <= C_0(n, k) k^(2/n) lambda_1`.
pub fn cy_upper_check(spectrum: &Spectrum, k: usize) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let n = spectrum.dimension();
    let next = spectrum.eigenvalue(k + 1)?;
    let l1 = spectrum.eigenvalue(1)?;
    let (rhs, status) = match spectrum.problem() {
        Problem::Dirichlet => (cy_upper_bound(l1, n, k)?, Status::Theorem),
        Problem::Closed => (0.0, Status::NotApplicable),
    };
    Ok(BoundReport::new(
        BoundId::CyUpper,
        Argument::K(k),
        next,
        rhs,
        status,
        format!("n={n}; C0={}; log={A_CONSTANT_LOG}", c0(n, k)?),
    ))
}

/// Upper bounds for `lambda_{k+1}` from the first `k` eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticBounds {
    /// Larger root of the quadratic in `mu_{k+1}`, shifted back to `lambda`.
    pub root: f64,
    /// `sqrt(t/2) (1 + 4/t) sqrt(F_k)`, shifted back to `lambda`.
    pub crude: f64,
}

/// `mu_{k+1} <= (1 + c/2) G + sqrt((1 + c/2)^2 G^2 - (1 + c) T)` on
/// `mu_i = lambda_i + sigma`, with `t = 4/c`.
pub fn yang_quadratic_upper(spectrum: &Spectrum, k: usize, shift: &ShiftContext) -> Result<QuadraticBounds> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let n = spectrum.dimension();
    let c = shift.coefficient(n)?;
    let sigma = shift.shift(n);
    let mu: Vec<f64> = spectrum.prefix(k)?.into_iter().map(|l| l + sigma).collect();
    let t = 4.0 / c;
    let st = state_unchecked(&mu, t, k);
    let a = 1.0 + c / 2.0;
    let disc = a * a * st.g * st.g - (1.0 + c) * st.t_mean;
    if disc < -1e-12 * (a * st.g).powi(2) {
        return Err(Error::NegativeDiscriminant { k, discriminant: disc });
    }
    let root = a * st.g + disc.max(0.0).sqrt();
    let crude = (t / 2.0).sqrt() * (1.0 + c) * st.f.max(0.0).sqrt();
    Ok(QuadraticBounds {
        root: root - sigma,
        crude: crude - sigma,
    })
}

/// Root and crude bounds as reports against `lambda_{k+1}`.
pub fn quadratic_check(spectrum: &Spectrum, k: usize, shift: &ShiftContext) -> Result<Vec<BoundReport>> {
    let b = yang_quadratic_upper(spectrum, k, shift)?;
    let next = spectrum.eigenvalue(k + 1)?;
    let status = shifted_status(spectrum, shift);
    let ctx = format!(
        "n={}; sigma={}",
        spectrum.dimension(),
        shift.shift(spectrum.dimension())
    );
    Ok(vec![
        BoundReport::new(
            BoundId::QuadraticUpper,
            Argument::K(k),
            next,
            b.root,
            status,
            ctx.clone(),
        ),
        BoundReport::new(BoundId::CrudeUpper, Argument::K(k), next, b.crude, status, ctx),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{ball_spectrum, box_spectrum};
    use approx::assert_relative_eq;

    #[test]
    fn state_examples() {
        let s = cy_state(&[1.0, 1.0, 1.0], 2.0, 3).unwrap();
        assert_eq!((s.g, s.t_mean, s.f), (1.0, 1.0, 1.0));
        let s = cy_state(&[2.0, 5.0], 2.0, 2).unwrap();
        assert_eq!((s.g, s.t_mean, s.f), (3.5, 14.5, 10.0));
        for t in [0.5, 2.0, 7.0] {
            let s = cy_state(&[3.0], t, 1).unwrap();
            assert_relative_eq!(s.f, 2.0 / t * 9.0, max_relative = 1e-15);
        }
        assert!(cy_state(&[2.0, 1.0], 2.0, 2).is_err());
        assert!(cy_state(&[0.0, 1.0], 2.0, 2).is_err());
        assert!(cy_state(&[1.0], 2.0, 2).is_err());
    }

    #[test]
    fn recursion_on_square_and_constants() {
        let sq = box_spectrum(&[PI, PI], 10).unwrap().prefix(10).unwrap();
        let r = cy_recursion_check(&sq, 2.0, 1, 1).unwrap();
        // F_1 = 4, F_2 = 2 * 3.5^2 - 14.5 = 10
        assert_eq!((r.lhs, r.rhs), (2.5, 4.0));
        let ones = vec![1.0; 50];
        let rs = cy_recursion_scan(&ones, 2.0).unwrap();
        assert!(rs.iter().all(|r| r.satisfied && r.margin > 0.0));
    }

    #[test]
    fn hypothesis_failure_names_index() {
        // 1, 100 violates (100-1)^2 <= 2 * 1 * 99 for t = 2
        assert!(matches!(
            cy_recursion_check(&[1.0, 100.0, 101.0], 2.0, 1, 1),
            Err(Error::YangHypothesis { index: 1, .. })
        ));
    }

    #[test]
    fn recursion_at_hypothesis_equality() {
        let t = 2.0;
        let mus = [1.0, 1.0 + 4.0 / t];
        let r = cy_recursion_check(&mus, t, 1, 1).unwrap();
        assert!(r.satisfied);
    }

    #[test]
    fn a_and_c0_values() {
        assert_eq!(a_constant(1).unwrap(), 2.64);
        assert_eq!(a_constant(3).unwrap(), 2.2);
        assert_relative_eq!(a_constant(2).unwrap(), 2.2 - 4.0 * 0.98f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(a_constant(2).unwrap(), 2.28081, max_relative = 1e-5);
        assert!(a_constant(0).is_err());
        assert_relative_eq!(c0(2, 1).unwrap(), 2.5387339670887563, max_relative = 1e-12);
        assert_relative_eq!(c0(2, 4).unwrap(), 2.14040, max_relative = 1e-5);
        assert_relative_eq!(c0(5, 2).unwrap(), 1.528, max_relative = 1e-15);
        assert_relative_eq!(c0(1, 1).unwrap(), 4.0, max_relative = 1e-12);
    }

    #[test]
    fn upper_bound_examples() {
        let sq = box_spectrum(&[PI, PI], 120).unwrap();
        let r = cy_upper_check(&sq, 1).unwrap();
        assert_relative_eq!(r.rhs, 2.0 * c0(2, 1).unwrap(), max_relative = 1e-15);
        assert!(r.satisfied);
        assert!(cy_upper_check(&sq, 100).unwrap().satisfied);
        let disk = ball_spectrum(2, 1.0, 5).unwrap();
        let r = cy_upper_check(&disk, 1).unwrap();
        assert!(r.margin.abs() / r.lhs < 1e-9);
        // interval: lambda_2 = 4 lambda_1
        let seg = box_spectrum(&[1.0], 3).unwrap();
        assert!(cy_upper_check(&seg, 1).unwrap().margin.abs() < 1e-9 * seg.eigenvalue(2).unwrap());
    }

    #[test]
    fn quadratic_examples() {
        let sq = box_spectrum(&[PI, PI], 20).unwrap();
        let b = yang_quadratic_upper(&sq, 1, &ShiftContext::euclidean()).unwrap();
        assert_relative_eq!(b.root, 6.0, max_relative = 1e-15);
        assert_relative_eq!(b.crude, 6.0, max_relative = 1e-15);
        assert!(quadratic_check(&sq, 5, &ShiftContext::euclidean())
            .unwrap()
            .iter()
            .all(|r| r.satisfied));
    }

    #[test]
    fn quadratic_tight_at_yang_equality() {
        use crate::spectra::{DomainKind, DomainSpec, Level};
        let d = DomainSpec::new(2, 1.0, "synthetic", DomainKind::UserSupplied).unwrap();
        // k = 1, n = 2: Yang-1 equality at lambda_2 = 3 lambda_1
        let s = Spectrum::complete(d, vec![Level::new(1.0, 1), Level::new(3.0, 1)], Problem::Dirichlet).unwrap();
        let b = yang_quadratic_upper(&s, 1, &ShiftContext::euclidean()).unwrap();
        assert_relative_eq!(b.root, 3.0, max_relative = 1e-15);
    }
}
