//! Universal eigenvalue inequalities and explicit sum lower bounds.
//!
//! Shifted forms evaluate the unshifted inequality on `mu_i = lambda_i + sigma`
//! with a leading coefficient `c` in place of `4/n`; both come from a
//! [`ShiftContext`].

use crate::error::{Error, Result};
use crate::numerics::{csum, weyl_constant};
use crate::report::{Argument, BoundId, BoundReport, Status};
use crate::spectra::{DomainKind, DomainSpec, Field, Problem, Spectrum, PROJECTIVE_NORMALIZATION};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    Euclidean,
    Sphere,
    Hyperbolic,
    Projective(Field),
    Abstract,
}

impl Ambient {
    pub fn name(self) -> &'static str {
        match self {
            Ambient::Euclidean => "euclidean",
            Ambient::Sphere => "sphere",
            Ambient::Hyperbolic => "hyperbolic",
            Ambient::Projective(_) => "projective",
            Ambient::Abstract => "abstract",
        }
    }
}

/// Ambient geometry and mean-curvature data entering the shifted inequalities.
///
/// `h0_sq` is always caller supplied; it is echoed in report contexts but never
/// estimated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftContext {
    h0_sq: f64,
    ambient: Ambient,
}

impl Default for ShiftContext {
    fn default() -> Self {
        Self::euclidean()
    }
}

impl ShiftContext {
    pub fn new(h0_sq: f64, ambient: Ambient) -> Result<Self> {
        if !(h0_sq.is_finite() && h0_sq >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "H0^2 must be finite and >= 0, got {h0_sq}"
            )));
        }
        Ok(Self { h0_sq, ambient })
    }

    /// Flat ambient with zero mean curvature: no shift, coefficient `4/n`.
    pub fn euclidean() -> Self {
        Self {
            h0_sq: 0.0,
            ambient: Ambient::Euclidean,
        }
    }

    pub fn sphere() -> Self {
        Self {
            h0_sq: 0.0,
            ambient: Ambient::Sphere,
        }
    }

    pub fn hyperbolic() -> Self {
        Self {
            h0_sq: 0.0,
            ambient: Ambient::Hyperbolic,
        }
    }

    /// Minimal submanifold of a projective space (`H0^2 = 0`).
    pub fn projective(field: Field) -> Self {
        Self {
            h0_sq: 0.0,
            ambient: Ambient::Projective(field),
        }
    }

    /// Builds a context from CLI-style parts, enforcing that a field dimension
    /// is present exactly for the projective ambient.
    pub fn from_parts(h0_sq: f64, ambient: &str, field_dim: Option<usize>) -> Result<Self> {
        let ambient = match (ambient, field_dim) {
            ("projective", Some(d)) => Ambient::Projective(
                Field::from_real_dimension(d)
                    .ok_or_else(|| Error::InvalidParameter(format!("field dimension must be 1, 2 or 4, got {d}")))?,
            ),
            ("projective", None) => return Err(Error::MissingFieldDim),
            (_, Some(_)) => {
                return Err(Error::InvalidParameter(
                    "a field dimension is only meaningful for the projective ambient".into(),
                ))
            }
            ("euclidean", None) => Ambient::Euclidean,
            ("sphere", None) => Ambient::Sphere,
            ("hyperbolic", None) => Ambient::Hyperbolic,
            ("abstract", None) => Ambient::Abstract,
            (other, None) => return Err(Error::InvalidParameter(format!("unknown ambient '{other}'"))),
        };
        Self::new(h0_sq, ambient)
    }

    pub fn h0_sq(&self) -> f64 {
        self.h0_sq
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn field(&self) -> Option<Field> {
        match self.ambient {
            Ambient::Projective(f) => Some(f),
            _ => None,
        }
    }

    /// Additive shift `sigma` in dimension `n`.
    pub fn shift(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self.ambient {
            Ambient::Euclidean | Ambient::Abstract => nf * nf * self.h0_sq / 4.0,
            Ambient::Sphere => nf * nf / 4.0,
            Ambient::Projective(f) => {
                let d = f.real_dimension() as f64;
                nf * nf / 4.0 * (self.h0_sq + 2.0 * (nf + d) / nf)
            }
            Ambient::Hyperbolic => -(nf - 1.0) * (nf - 1.0) / 4.0,
        }
    }

    /// Leading coefficient `c` replacing `4/n`.
    pub fn coefficient(&self, n: usize) -> Result<f64> {
        match self.ambient {
            Ambient::Hyperbolic if n < 2 => Err(Error::HyperbolicDimension),
            Ambient::Hyperbolic => Ok(4.0),
            _ => Ok(4.0 / n as f64),
        }
    }

    /// `c(n)` for closed minimal submanifolds: `n^2` in a sphere and
    /// `2n(n + d)` in a projective space. `c(n)/4` equals the shift.
    pub fn closed_minimal_constant(&self, n: usize) -> Option<f64> {
        let nf = n as f64;
        match self.ambient {
            Ambient::Sphere => Some(nf * nf),
            Ambient::Projective(f) => Some(2.0 * nf * (nf + f.real_dimension() as f64)),
            _ => None,
        }
    }

    fn describe(&self, n: usize) -> String {
        let mut s = format!(
            "n={n}; ambient={}; h0sq={}; sigma={}",
            self.ambient.name(),
            self.h0_sq,
            self.shift(n)
        );
        if let Some(f) = self.field() {
            s.push_str(&format!("; d={}", f.real_dimension()));
        }
        if let Ok(c) = self.coefficient(n) {
            s.push_str(&format!("; c={c}"));
        }
        s
    }
}

impl fmt::Display for ShiftContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(h0sq={})", self.ambient.name(), self.h0_sq)
    }
}

/// Whether a shifted inequality is a theorem for this spectrum and context.
pub(crate) fn shifted_status(spectrum: &Spectrum, shift: &ShiftContext) -> Status {
    match (spectrum.problem(), shift.ambient()) {
        (Problem::Closed, Ambient::Hyperbolic) => Status::NotApplicable,
        // a closed manifold cannot be minimal in Euclidean space
        (Problem::Closed, Ambient::Euclidean | Ambient::Abstract) if shift.h0_sq() == 0.0 => Status::NotApplicable,
        _ => Status::Theorem,
    }
}

fn dirichlet_status(spectrum: &Spectrum) -> Status {
    match spectrum.problem() {
        Problem::Dirichlet => Status::Theorem,
        Problem::Closed => Status::NotApplicable,
    }
}

/// `mu_i = lambda_i + sigma` for `i <= count`.
fn shifted_prefix(spectrum: &Spectrum, count: usize, sigma: f64) -> Result<Vec<f64>> {
    Ok(spectrum.prefix(count)?.into_iter().map(|l| l + sigma).collect())
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    Ok(())
}

// Core evaluators on a sequence `mu` of length >= k + 1 with coefficient `c`.

fn yang1_sides(mu: &[f64], k: usize, c: f64) -> (f64, f64) {
    let next = mu[k];
    let lhs = csum(mu[..k].iter().map(|&m| (next - m) * (next - m)));
    let rhs = c * csum(mu[..k].iter().map(|&m| (next - m) * m));
    (lhs, rhs)
}

fn yang2_sides(mu: &[f64], k: usize, c: f64) -> (f64, f64) {
    let mean = csum(mu[..k].iter().copied()) / k as f64;
    (mu[k], (1.0 + c) * mean)
}

fn hile_protter_sides(mu: &[f64], k: usize, c: f64, allow_infinite: bool) -> Result<(f64, f64)> {
    let next = mu[k];
    if let Some(i) = mu[..k].iter().position(|&m| m == next) {
        if !allow_infinite {
            return Err(Error::DegenerateGap {
                k,
                index: i + 1,
                next: k + 1,
            });
        }
        return Ok((k as f64 / c, f64::INFINITY));
    }
    Ok((k as f64 / c, csum(mu[..k].iter().map(|&m| m / (next - m)))))
}

fn ppw_sides(mu: &[f64], k: usize, c: f64) -> (f64, f64) {
    (mu[k] - mu[k - 1], c / k as f64 * csum(mu[..k].iter().copied()))
}

/// `lambda_{k+1} - lambda_k <= (4/(nk)) sum_{i<=k} lambda_i`.
pub fn ppw_check(spectrum: &Spectrum, k: usize) -> Result<BoundReport> {
    check_k(k)?;
    let n = spectrum.dimension();
    let mu = spectrum.prefix(k + 1)?;
    let (lhs, rhs) = ppw_sides(&mu, k, 4.0 / n as f64);
    Ok(BoundReport::new(
        BoundId::Ppw,
        Argument::K(k),
        lhs,
        rhs,
        dirichlet_status(spectrum),
        format!("n={n}"),
    ))
}

/// `nk/4 <= sum_{i<=k} lambda_i / (lambda_{k+1} - lambda_i)`.
///
/// A zero gap makes the sum infinite; that is an error unless
/// `allow_infinite` is set, in which case `rhs = +inf`.
pub fn hile_protter_check(spectrum: &Spectrum, k: usize, allow_infinite: bool) -> Result<BoundReport> {
    check_k(k)?;
    let n = spectrum.dimension();
    let mu = spectrum.prefix(k + 1)?;
    let (lhs, rhs) = hile_protter_sides(&mu, k, 4.0 / n as f64, allow_infinite)?;
    Ok(BoundReport::new(
        BoundId::HileProtter,
        Argument::K(k),
        lhs,
        rhs,
        dirichlet_status(spectrum),
        format!("n={n}"),
    ))
}

/// `sum (lambda_{k+1} - lambda_i)^2 <= c sum (lambda_{k+1} - lambda_i)(lambda_i + sigma)`.
pub fn yang1_check(spectrum: &Spectrum, k: usize, shift: &ShiftContext) -> Result<BoundReport> {
    check_k(k)?;
    let n = spectrum.dimension();
    let c = shift.coefficient(n)?;
    let mu = shifted_prefix(spectrum, k + 1, shift.shift(n))?;
    let (lhs, rhs) = yang1_sides(&mu, k, c);
    Ok(BoundReport::new(
        BoundId::Yang1,
        Argument::K(k),
        lhs,
        rhs,
        shifted_status(spectrum, shift),
        shift.describe(n),
    ))
}

/// `lambda_{k+1} <= (1 + c) mean(lambda_i + sigma) - sigma`.
pub fn yang2_bound(spectrum: &Spectrum, k: usize, shift: &ShiftContext) -> Result<BoundReport> {
    check_k(k)?;
    let n = spectrum.dimension();
    let c = shift.coefficient(n)?;
    let sigma = shift.shift(n);
    let mu = shifted_prefix(spectrum, k + 1, sigma)?;
    let (lhs, rhs) = yang2_sides(&mu, k, c);
    Ok(BoundReport::new(
        BoundId::Yang2,
        Argument::K(k),
        lhs - sigma,
        rhs - sigma,
        shifted_status(spectrum, shift),
        shift.describe(n),
    ))
}

/// Yang-1, Yang-2, Hile-Protter and PPW on the shifted sequence, in that order.
///
/// Errors with [`Error::ImplicationViolated`] when Yang-1 holds but a weaker
/// member fails. Zero gaps give Hile-Protter an infinite right-hand side.
pub fn implication_chain_check(spectrum: &Spectrum, k: usize, shift: &ShiftContext) -> Result<Vec<BoundReport>> {
    check_k(k)?;
    let n = spectrum.dimension();
    let c = shift.coefficient(n)?;
    let sigma = shift.shift(n);
    let mu = shifted_prefix(spectrum, k + 1, sigma)?;
    let status = shifted_status(spectrum, shift);
    let ctx = shift.describe(n);
    let mk = |id, (lhs, rhs): (f64, f64)| BoundReport::new(id, Argument::K(k), lhs, rhs, status, ctx.clone());

    let (y2l, y2r) = yang2_sides(&mu, k, c);
    let reports = vec![
        mk(BoundId::Yang1, yang1_sides(&mu, k, c)),
        mk(BoundId::Yang2, (y2l - sigma, y2r - sigma)),
        mk(BoundId::HileProtter, hile_protter_sides(&mu, k, c, true)?),
        mk(BoundId::Ppw, ppw_sides(&mu, k, c)),
    ];
    if reports[0].satisfied {
        if let Some(bad) = reports[1..].iter().find(|r| !r.satisfied) {
            return Err(Error::ImplicationViolated {
                k,
                failed: bad.bound_id.to_string(),
            });
        }
    }
    Ok(reports)
}

fn require_euclidean(spectrum: &Spectrum) -> Result<()> {
    if spectrum.problem() == Problem::Closed || spectrum.domain().kind() == DomainKind::ClosedManifold {
        return Err(Error::NonEuclideanDomain(format!(
            "{} ({})",
            spectrum.domain().label(),
            spectrum.domain().kind()
        )));
    }
    Ok(())
}

/// `(n/(n+2)) 4 pi^2 k^(2/n) / (omega_n |Omega|)^(2/n)`.
pub fn li_yau_sum_lower(domain: &DomainSpec, k: usize) -> Result<f64> {
    check_k(k)?;
    if domain.kind() == DomainKind::ClosedManifold {
        return Err(Error::NonEuclideanDomain(domain.label().to_string()));
    }
    let n = domain.dimension() as f64;
    Ok(n / (n + 2.0) * polya_reference(domain, k))
}

/// Mean form `bound <= (1/k) sum lambda_i` and individual form `bound <= lambda_k`.
pub fn li_yau_check(spectrum: &Spectrum, k: usize) -> Result<Vec<BoundReport>> {
    require_euclidean(spectrum)?;
    let bound = li_yau_sum_lower(spectrum.domain(), k)?;
    let mean = spectrum.prefix_sum(k)? / k as f64;
    let ctx = format!("n={}; volume={}", spectrum.dimension(), spectrum.domain().volume());
    Ok(vec![
        BoundReport::new(
            BoundId::LiYauMean,
            Argument::K(k),
            bound,
            mean,
            Status::Theorem,
            ctx.clone(),
        ),
        BoundReport::new(
            BoundId::LiYauIndividual,
            Argument::K(k),
            bound,
            spectrum.eigenvalue(k)?,
            Status::Theorem,
            ctx,
        ),
    ])
}

/// Weyl leading term `4 pi^2 k^(2/n) / (omega_n |Omega|)^(2/n)`.
pub fn polya_reference(domain: &DomainSpec, k: usize) -> f64 {
    crate::numerics::weyl_leading_term(domain.dimension(), domain.volume(), k as f64)
}

/// `polya_reference <= lambda_k`; a theorem for boxes and balls, open otherwise.
pub fn polya_check(spectrum: &Spectrum, k: usize) -> Result<BoundReport> {
    check_k(k)?;
    let status = if spectrum.problem() == Problem::Closed || spectrum.domain().kind() == DomainKind::ClosedManifold {
        Status::NotApplicable
    } else if spectrum.domain().polya_is_theorem() {
        Status::Theorem
    } else {
        Status::Conjecture
    };
    Ok(BoundReport::new(
        BoundId::Polya,
        Argument::K(k),
        polya_reference(spectrum.domain(), k),
        spectrum.eigenvalue(k)?,
        status,
        format!("n={}; label={}", spectrum.dimension(), spectrum.domain().label()),
    ))
}

/// `(n / sqrt((n+2)(n+4))) C_n k^(2/n) / |Omega|^(2/n)`.
pub fn cheng_yang_sum_rhs(domain: &DomainSpec, k: usize) -> f64 {
    let n = domain.dimension();
    let nf = n as f64;
    nf / ((nf + 2.0) * (nf + 4.0)).sqrt() * weyl_constant(n) * (k as f64 / domain.volume()).powf(2.0 / nf)
}

fn sum_lower_report(
    spectrum: &Spectrum,
    k: usize,
    shift: &ShiftContext,
    id: BoundId,
    status: Status,
) -> Result<BoundReport> {
    check_k(k)?;
    let n = spectrum.dimension();
    let lhs = cheng_yang_sum_rhs(spectrum.domain(), k);
    let rhs = spectrum.prefix_sum(k)? / k as f64 + shift.shift(n);
    Ok(BoundReport::new(
        id,
        Argument::K(k),
        lhs,
        rhs,
        status,
        shift.describe(n),
    ))
}

/// `(1/k) sum lambda_i + sigma >= (n/sqrt((n+2)(n+4))) C_n k^(2/n) / |Omega|^(2/n)`.
pub fn cheng_yang_sum_lower(spectrum: &Spectrum, k: usize, shift: &ShiftContext) -> Result<BoundReport> {
    let status = match shift.ambient() {
        Ambient::Hyperbolic => Status::NotApplicable,
        _ => shifted_status(spectrum, shift),
    };
    sum_lower_report(spectrum, k, shift, BoundId::ChengYangSum, status)
}

/// Sum lower bound for submanifolds of a projective space; with `H0^2 = 0`
/// the additive constant is `n(n + d)/2`.
pub fn projective_sum_lower(spectrum: &Spectrum, k: usize, shift: &ShiftContext) -> Result<BoundReport> {
    if shift.field().is_none() {
        return Err(Error::MissingFieldDim);
    }
    let mut r = sum_lower_report(spectrum, k, shift, BoundId::ProjectiveSum, Status::Theorem)?;
    r.context.push_str(&format!("; metric={PROJECTIVE_NORMALIZATION}"));
    Ok(r)
}

/// The two conjectured inequalities with a user-supplied constant `c`:
/// mean form against the Li-Yau term and individual form against the Weyl term.
pub fn conjecture_evaluator(spectrum: &Spectrum, k: usize, c: f64) -> Result<Vec<BoundReport>> {
    check_k(k)?;
    let d = spectrum.domain();
    let n = d.dimension() as f64;
    let weyl = polya_reference(d, k);
    let ctx = format!("CONJECTURE; n={}; c={c}", d.dimension());
    Ok(vec![
        BoundReport::new(
            BoundId::ConjectureMean,
            Argument::K(k),
            n / (n + 2.0) * weyl,
            spectrum.prefix_sum(k)? / k as f64 + c,
            Status::Conjecture,
            ctx.clone(),
        ),
        BoundReport::new(
            BoundId::ConjectureIndividual,
            Argument::K(k),
            weyl,
            spectrum.eigenvalue(k)? + c,
            Status::Conjecture,
            ctx,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{ball_spectrum, box_spectrum, sphere_spectrum, Level};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn square() -> Spectrum {
        box_spectrum(&[PI, PI], 120).unwrap()
    }

    fn synthetic(values: &[f64], n: usize) -> Spectrum {
        let mut levels: Vec<Level> = Vec::new();
        for &v in values {
            match levels.last_mut() {
                Some(l) if l.value == v => l.multiplicity += 1,
                _ => levels.push(Level::new(v, 1)),
            }
        }
        let d = DomainSpec::new(n, 1.0, "synthetic", DomainKind::UserSupplied).unwrap();
        Spectrum::complete(d, levels, Problem::Dirichlet).unwrap()
    }

    #[test]
    fn shift_table() {
        assert_eq!(ShiftContext::sphere().shift(2), 1.0);
        assert_eq!(ShiftContext::new(2.0, Ambient::Euclidean).unwrap().shift(3), 4.5);
        assert_eq!(ShiftContext::hyperbolic().shift(3), -1.0);
        assert_eq!(ShiftContext::hyperbolic().coefficient(3).unwrap(), 4.0);
        assert!(matches!(
            ShiftContext::hyperbolic().coefficient(1),
            Err(Error::HyperbolicDimension)
        ));
        // minimal in CP^1 (n=2, d=2): n(n+d)/2 = 4
        assert_eq!(ShiftContext::projective(Field::Complex).shift(2), 4.0);
        let p = ShiftContext::projective(Field::Real);
        assert_eq!(p.closed_minimal_constant(2).unwrap() / 4.0, p.shift(2));
        assert!(ShiftContext::new(-1.0, Ambient::Euclidean).is_err());
        assert!(matches!(
            ShiftContext::from_parts(0.0, "projective", None),
            Err(Error::MissingFieldDim)
        ));
        assert!(ShiftContext::from_parts(0.0, "sphere", Some(2)).is_err());
        assert_eq!(
            ShiftContext::from_parts(0.0, "projective", Some(4)).unwrap().field(),
            Some(Field::Quaternion)
        );
    }

    #[test]
    fn square_first_gap() {
        let s = square();
        let r = ppw_check(&s, 1).unwrap();
        assert_eq!((r.lhs, r.rhs, r.satisfied), (3.0, 4.0, true));
        let r = hile_protter_check(&s, 1, false).unwrap();
        assert_relative_eq!(r.lhs, 0.5);
        assert_relative_eq!(r.rhs, 2.0 / 3.0);
        let r = yang1_check(&s, 1, &ShiftContext::euclidean()).unwrap();
        assert_eq!((r.lhs, r.rhs), (9.0, 12.0));
        let r = yang2_bound(&s, 1, &ShiftContext::euclidean()).unwrap();
        assert_eq!((r.lhs, r.rhs), (5.0, 6.0));
    }

    #[test]
    fn degenerate_gap_is_explicit() {
        let s = square();
        // lambda_2 = lambda_3 = 5
        assert!(matches!(
            hile_protter_check(&s, 2, false),
            Err(Error::DegenerateGap {
                k: 2,
                index: 2,
                next: 3
            })
        ));
        let r = hile_protter_check(&s, 2, true).unwrap();
        assert!(r.rhs.is_infinite() && r.satisfied);
        let r = ppw_check(&s, 2).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.satisfied);
    }

    #[test]
    fn hile_protter_boundary_is_equality() {
        for n in 1..5 {
            let s = synthetic(&[1.0, 1.0 + 4.0 / n as f64], n);
            let r = hile_protter_check(&s, 1, false).unwrap();
            assert_relative_eq!(r.lhs, r.rhs, max_relative = 1e-15);
            assert!(r.satisfied);
        }
    }

    #[test]
    fn closed_spectra_are_not_dirichlet_data() {
        let s2 = sphere_spectrum(2, 5).unwrap();
        let r = hile_protter_check(&s2, 1, false).unwrap();
        assert_eq!(r.rhs, 0.0);
        assert!(!r.satisfied);
        assert_eq!(r.status, Status::NotApplicable);
        assert!(matches!(li_yau_check(&s2, 1), Err(Error::NonEuclideanDomain(_))));
    }

    #[test]
    fn sphere_yang1_is_equality() {
        let s2 = sphere_spectrum(2, 5).unwrap();
        let r = yang1_check(&s2, 1, &ShiftContext::sphere()).unwrap();
        assert_eq!((r.lhs, r.rhs), (4.0, 4.0));
        assert_eq!(r.status, Status::Theorem);
        let r = yang1_check(&s2, 1, &ShiftContext::euclidean()).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
    }

    #[test]
    fn disk_examples() {
        let d = ball_spectrum(2, 1.0, 10).unwrap();
        let j01: f64 = 2.404825557695773;
        let j11: f64 = 3.831705970207512;
        let r = ppw_check(&d, 1).unwrap();
        assert_relative_eq!(r.lhs, j11 * j11 - j01 * j01, max_relative = 1e-12);
        assert_relative_eq!(r.rhs, 2.0 * j01 * j01, max_relative = 1e-12);
        let r = yang2_bound(&d, 1, &ShiftContext::euclidean()).unwrap();
        assert_relative_eq!(r.rhs, 3.0 * j01 * j01, max_relative = 1e-12);
        let ly = li_yau_check(&d, 1).unwrap();
        assert_relative_eq!(ly[0].lhs, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn chain_on_square_and_zero_gap() {
        let s = square();
        for k in 1..100 {
            let rs = implication_chain_check(&s, k, &ShiftContext::euclidean()).unwrap();
            assert!(rs.iter().all(|r| r.satisfied), "k={k}");
        }
        let flat = synthetic(&[3.0, 3.0], 2);
        assert!(implication_chain_check(&flat, 1, &ShiftContext::euclidean())
            .unwrap()
            .iter()
            .all(|r| r.satisfied));
    }

    #[test]
    fn chain_at_yang_equality() {
        // (x - 1)^2 = c (x - 1) * 1 at x = 1 + c
        let n = 2;
        let s = synthetic(&[1.0, 1.0 + 4.0 / n as f64], n);
        let rs = implication_chain_check(&s, 1, &ShiftContext::euclidean()).unwrap();
        assert_relative_eq!(rs[0].margin, 0.0, epsilon = 1e-12);
        assert!(rs.iter().all(|r| r.satisfied));
    }

    #[test]
    fn li_yau_and_polya_constants() {
        let s = square();
        let ly = li_yau_check(&s, 1).unwrap();
        assert_relative_eq!(ly[0].lhs, 2.0 / PI, max_relative = 1e-14);
        assert_relative_eq!(polya_reference(s.domain(), 1), 4.0 / PI, max_relative = 1e-14);
        for k in [1, 7, 100] {
            let ratio = polya_reference(s.domain(), k) / li_yau_sum_lower(s.domain(), k).unwrap();
            assert_relative_eq!(ratio, 2.0, max_relative = 1e-15);
        }
        assert_eq!(polya_check(&s, 1).unwrap().status, Status::Theorem);
    }

    #[test]
    fn cheng_yang_sum_constant() {
        let s = square();
        let r = cheng_yang_sum_lower(&s, 1, &ShiftContext::euclidean()).unwrap();
        assert_relative_eq!(r.lhs, 2.0 / 24f64.sqrt() * 4.0 / PI, max_relative = 1e-14);
        for n in 1..8usize {
            let d = DomainSpec::new(n, 2.5, "x", DomainKind::UserSupplied).unwrap();
            let nf = n as f64;
            let ratio = cheng_yang_sum_rhs(&d, 3) / li_yau_sum_lower(&d, 3).unwrap();
            assert_relative_eq!(ratio, ((nf + 2.0) / (nf + 4.0)).sqrt(), max_relative = 1e-14);
        }
        let s2 = sphere_spectrum(2, 5).unwrap();
        assert!(cheng_yang_sum_lower(&s2, 2, &ShiftContext::sphere()).unwrap().satisfied);
    }

    #[test]
    fn projective_requires_field() {
        let s = square();
        assert!(matches!(
            projective_sum_lower(&s, 1, &ShiftContext::euclidean()),
            Err(Error::MissingFieldDim)
        ));
    }

    #[test]
    fn conjecture_monotone_in_c() {
        let s = square();
        for k in [1, 10, 100] {
            let rs = conjecture_evaluator(&s, k, 0.0).unwrap();
            assert!(rs.iter().all(|r| r.satisfied && r.status == Status::Conjecture));
        }
        let s2 = sphere_spectrum(2, 5).unwrap();
        let rs = conjecture_evaluator(&s2, 1, 1e6).unwrap();
        assert!(rs.iter().all(|r| r.satisfied));
    }
}
