//! Riesz means, counting functions and heat traces, with the Berezin, Kac and
//! Harrell-Stubbe checks built on them.

use crate::error::{Error, Result};
use crate::numerics::{classical_constant, csum, gamma, upper_incomplete_gamma_half_integer, CompensatedSum};
use crate::report::{Argument, BoundId, BoundReport, SeriesPoint, Status};
use crate::spectra::{DomainSpec, Level, Problem, Spectrum};
use crate::universal_bounds::{li_yau_sum_lower, shifted_status, ShiftContext};
use std::f64::consts::PI;

/// Agreement required between the two Riesz-iteration routes.
pub const ITERATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RieszQuery {
    pub rho: f64,
    pub z: f64,
}

impl RieszQuery {
    pub fn new(rho: f64, z: f64) -> Result<Self> {
        if !(rho.is_finite() && rho >= 0.0) {
            return Err(Error::InvalidParameter(format!("rho must be >= 0, got {rho}")));
        }
        if !(z.is_finite() && z >= 0.0) {
            return Err(Error::InvalidParameter(format!("z must be >= 0, got {z}")));
        }
        Ok(Self { rho, z })
    }
}

fn require_range(spectrum: &Spectrum, z: f64) -> Result<()> {
    let limit = spectrum.certified_limit();
    if z > limit {
        return Err(Error::OutOfCertifiedRange { z, limit });
    }
    Ok(())
}

/// `sum mult (z - (v + sigma))_+^rho`; for `rho = 0` counts levels with `v + sigma <= z`.
fn riesz_levels(levels: &[Level], sigma: f64, rho: f64, z: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    for l in levels {
        let d = z - (l.value + sigma);
        if rho == 0.0 {
            if d < 0.0 {
                break;
            }
            acc.add(l.multiplicity as f64);
        } else {
            if d <= 0.0 {
                break;
            }
            acc.add(l.multiplicity as f64 * d.powf(rho));
        }
    }
    acc.value()
}

/// `R_rho(z) = sum_k (z - lambda_k)_+^rho`, with `R_0 = N(z)` counting `lambda <= z`.
pub fn riesz_mean(spectrum: &Spectrum, q: RieszQuery) -> Result<f64> {
    require_range(spectrum, q.z)?;
    Ok(riesz_levels(spectrum.certified_levels(), 0.0, q.rho, q.z))
}

/// `L^cl_{rho,n} |Omega| z^(rho + n/2)`.
pub fn berezin_bound(domain: &DomainSpec, q: RieszQuery) -> f64 {
    let n = domain.dimension();
    classical_constant(q.rho, n) * domain.volume() * q.z.powf(q.rho + n as f64 / 2.0)
}

/// `((n+2)/n)^(n/2) L^cl_{0,n} |Omega|`, the coefficient of the counting bound.
pub fn counting_coefficient(domain: &DomainSpec) -> f64 {
    let n = domain.dimension() as f64;
    ((n + 2.0) / n).powf(n / 2.0) * classical_constant(0.0, domain.dimension()) * domain.volume()
}

/// `N(z) <= ((n+2)/n)^(n/2) L^cl_{0,n} |Omega| z^(n/2)`.
pub fn counting_check(spectrum: &Spectrum, z: f64) -> Result<BoundReport> {
    let q = RieszQuery::new(0.0, z)?;
    let n = spectrum.dimension();
    let status = match spectrum.problem() {
        Problem::Dirichlet => Status::Theorem,
        Problem::Closed => Status::NotApplicable,
    };
    Ok(BoundReport::new(
        BoundId::Counting,
        Argument::Z(z),
        riesz_mean(spectrum, q)?,
        counting_coefficient(spectrum.domain()) * z.powf(n as f64 / 2.0),
        status,
        format!("n={n}; rho=0"),
    ))
}

/// `R_rho(z) <= L^cl_{rho,n} |Omega| z^(rho+n/2)`; proven for `rho >= 1`.
/// `rho = 0` is evaluated in the counting form.
pub fn berezin_check(spectrum: &Spectrum, q: RieszQuery) -> Result<BoundReport> {
    if q.rho == 0.0 {
        return counting_check(spectrum, q.z);
    }
    let status = match spectrum.problem() {
        Problem::Closed => Status::NotApplicable,
        Problem::Dirichlet if q.rho < 1.0 => Status::OutsideRegime,
        Problem::Dirichlet => Status::Theorem,
    };
    Ok(BoundReport::new(
        BoundId::Berezin,
        Argument::Z(q.z),
        riesz_mean(spectrum, q)?,
        berezin_bound(spectrum.domain(), q),
        status,
        format!("n={}; rho={}", spectrum.dimension(), q.rho),
    ))
}

/// How the part of the heat trace beyond the certified prefix is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailPolicy {
    /// Bound the tail through the counting bound and require it to be small.
    Certified,
    /// The listed eigenvalues are the whole spectrum (synthetic data).
    ExactFinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatQuery {
    pub t: f64,
    pub truncation_eps: f64,
    pub shift: Option<ShiftContext>,
    pub tail: TailPolicy,
}

impl HeatQuery {
    pub fn new(t: f64, truncation_eps: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
        }
        if !(truncation_eps > 0.0 && truncation_eps < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "truncation_eps must lie in (0, 1), got {truncation_eps}"
            )));
        }
        Ok(Self {
            t,
            truncation_eps,
            shift: None,
            tail: TailPolicy::Certified,
        })
    }

    pub fn with_shift(mut self, shift: ShiftContext) -> Self {
        self.shift = Some(shift);
        self
    }

    pub fn with_tail(mut self, tail: TailPolicy) -> Self {
        self.tail = tail;
        self
    }

    fn at(self, t: f64) -> Self {
        Self { t, ..self }
    }
}

/// A heat trace: `partial <= Z(t) <= partial + tail_bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatTrace {
    pub partial: f64,
    pub tail_bound: f64,
    pub sigma: f64,
    /// The tail constant is heuristic (closed manifolds).
    pub heuristic_tail: bool,
}

impl HeatTrace {
    pub fn upper(&self) -> f64 {
        self.partial + self.tail_bound
    }
}

/// Rigorous tail `sum_{lambda > L} e^{-lambda t}` for `N(z) <= C z^(n/2)`:
/// integrating by parts gives `C t^(-n/2) Gamma(n/2 + 1, L t) - N(L) e^{-L t}`.
fn tail_bound(spectrum: &Spectrum, t: f64) -> (f64, bool) {
    let n = spectrum.dimension();
    let d = spectrum.domain();
    let (c, heuristic) = match spectrum.problem() {
        Problem::Dirichlet => (counting_coefficient(d), false),
        Problem::Closed => (2.0 * classical_constant(0.0, n) * d.volume(), true),
    };
    let lambda = spectrum.certified_limit();
    let a = n as f64 / 2.0 + 1.0;
    let x = lambda * t;
    let bound = c * t.powf(-(n as f64) / 2.0) * upper_incomplete_gamma_half_integer(a, x)
        - spectrum.complete_count() as f64 * (-x).exp();
    (bound.max(0.0), heuristic)
}

fn trace_unchecked(spectrum: &Spectrum, q: &HeatQuery) -> HeatTrace {
    let sigma = q.shift.map_or(0.0, |s| s.shift(spectrum.dimension()));
    let partial = csum(
        spectrum
            .certified_levels()
            .iter()
            .map(|l| l.multiplicity as f64 * (-(l.value + sigma) * q.t).exp()),
    );
    let (tail, heuristic) = match q.tail {
        TailPolicy::ExactFinite => (0.0, false),
        TailPolicy::Certified => {
            let (b, h) = tail_bound(spectrum, q.t);
            (b * (-sigma * q.t).exp(), h)
        }
    };
    HeatTrace {
        partial,
        tail_bound: tail,
        sigma,
        heuristic_tail: heuristic,
    }
}

fn certified(tr: &HeatTrace, eps: f64) -> bool {
    tr.tail_bound <= eps * tr.partial
}

/// `Z(t) = sum e^{-mu_i t}` with `mu_i = lambda_i + sigma`, over the certified
/// prefix, plus a tail bound no larger than `truncation_eps * partial`.
pub fn partition_function(spectrum: &Spectrum, q: &HeatQuery) -> Result<HeatTrace> {
    let tr = trace_unchecked(spectrum, q);
    if certified(&tr, q.truncation_eps) {
        return Ok(tr);
    }
    // smallest t at which the tail certifies, by doubling then bisection
    let ok = |t: f64| certified(&trace_unchecked(spectrum, &q.at(t)), q.truncation_eps);
    let mut lo = q.t;
    let mut hi = q.t;
    for _ in 0..200 {
        hi *= 2.0;
        if ok(hi) {
            break;
        }
        lo = hi;
    }
    if ok(hi) {
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    } else {
        hi = f64::INFINITY;
    }
    Err(Error::TailCertification { t: q.t, min_t: hi })
}

/// `Z(t) <= |Omega| / (4 pi t)^(n/2)` (or the shifted `Z_H`), using the
/// certified upper value of the trace.
pub fn kac_check(spectrum: &Spectrum, q: &HeatQuery) -> Result<BoundReport> {
    let tr = partition_function(spectrum, q)?;
    let n = spectrum.dimension() as f64;
    let rhs = spectrum.domain().volume() / (4.0 * PI * q.t).powf(n / 2.0);
    let status = match (spectrum.problem(), q.shift) {
        (Problem::Closed, _) => Status::Diagnostic,
        (Problem::Dirichlet, Some(s)) => shifted_status(spectrum, &s),
        (Problem::Dirichlet, None) => Status::Theorem,
    };
    Ok(BoundReport::new(
        BoundId::Kac,
        Argument::T(q.t),
        tr.upper(),
        rhs,
        status,
        format!(
            "n={}; sigma={}; partial={}; tail<={}{}",
            spectrum.dimension(),
            tr.sigma,
            tr.partial,
            tr.tail_bound,
            if tr.heuristic_tail { "; heuristic tail" } else { "" }
        ),
    ))
}

/// `t^(n/2) Z(t)` is nonincreasing: for consecutive grid points checks
/// `t_{j+1}^(n/2) Z_lower(t_{j+1}) <= t_j^(n/2) Z_upper(t_j)`.
pub fn hs_monotonicity_check(spectrum: &Spectrum, t_grid: &[f64], q: &HeatQuery) -> Result<Vec<BoundReport>> {
    check_grid(t_grid)?;
    let half = spectrum.dimension() as f64 / 2.0;
    let traces = t_grid
        .iter()
        .map(|&t| partition_function(spectrum, &q.at(t)))
        .collect::<Result<Vec<_>>>()?;
    let status = match spectrum.problem() {
        Problem::Dirichlet => Status::Theorem,
        Problem::Closed => Status::Diagnostic,
    };
    Ok(t_grid
        .windows(2)
        .zip(traces.windows(2))
        .map(|(ts, tr)| {
            BoundReport::new(
                BoundId::HsMonotonicity,
                Argument::T(ts[1]),
                ts[1].powf(half) * tr[1].partial,
                ts[0].powf(half) * tr[0].upper(),
                status,
                format!("previous t={}", ts[0]),
            )
        })
        .collect())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("grid is empty".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) || grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(
            "grid must be finite and strictly ascending".into(),
        ));
    }
    Ok(())
}

/// Tanh-sinh quadrature of `f(x, x - a, b - x)` over `[a, b]`; the distances
/// to the endpoints are passed exactly so endpoint singularities are resolved.
fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(a: f64, b: f64, f: F) -> f64 {
    let width = b - a;
    let half = width / 2.0;
    let node = |u: f64| -> (f64, f64) {
        let s = PI / 2.0 * u.sinh();
        let w = PI / 2.0 * u.cosh() / (s.cosh() * s.cosh());
        let eps = 2.0 / ((2.0 * s).exp() + 1.0);
        (w, half * eps)
    };
    let eval = |u: f64| -> f64 {
        let (w, d) = node(u);
        if w == 0.0 || d == 0.0 || !w.is_finite() {
            return 0.0;
        }
        let left = f(a + d, d, width - d);
        let right = f(b - d, width - d, d);
        w * (left + right)
    };
    const U_MAX: f64 = 6.5;
    let mut h = 0.5;
    let mut sum = CompensatedSum::new();
    sum.add(PI / 2.0 * f(a + half, half, half));
    let mut j = 1;
    while j as f64 * h <= U_MAX {
        sum.add(eval(j as f64 * h));
        j += 1;
    }
    let mut estimate = half * h * sum.value();
    for _ in 0..8 {
        h /= 2.0;
        let mut j = 1;
        while j as f64 * h <= U_MAX {
            sum.add(eval(j as f64 * h));
            j += 2;
        }
        let next = half * h * sum.value();
        let done = (next - estimate).abs() <= 1e-15 * next.abs();
        estimate = next;
        if done {
            break;
        }
    }
    estimate
}

fn integer_order(rho: f64) -> Option<u32> {
    (rho.fract() == 0.0 && rho <= 32.0).then_some(rho as u32)
}

/// `int_0^z (z - t)^(delta-1) R_rho(t) dt`, integrated piecewise between
/// consecutive eigenvalues.
fn iterated_integral(levels: &[Level], rho: f64, delta: f64, z: f64) -> f64 {
    let active: Vec<Level> = levels.iter().copied().filter(|l| l.value < z).collect();
    if active.is_empty() {
        return 0.0;
    }
    let mut total = CompensatedSum::new();
    if let Some(r) = integer_order(rho) {
        // On [a, b] with levels 0..=j active,
        // R_rho(t) = sum_m C(r, m) (-1)^m (z - t)^m P_{r-m},  P_q = sum mult (z - v)^q.
        let r = r as usize;
        let mut power_sums = vec![CompensatedSum::new(); r + 1];
        let mut binom = vec![1.0f64; r + 1];
        for m in 1..=r {
            binom[m] = binom[m - 1] * (r - m + 1) as f64 / m as f64;
        }
        for (j, l) in active.iter().enumerate() {
            let zl = z - l.value;
            for (q, ps) in power_sums.iter_mut().enumerate() {
                ps.add(l.multiplicity as f64 * zl.powi(q as i32));
            }
            let a = l.value;
            let b = active.get(j + 1).map_or(z, |n| n.value);
            let (za, zb) = (z - a, z - b);
            for m in 0..=r {
                let e = delta + m as f64;
                let seg = (za.powf(e) - if zb > 0.0 { zb.powf(e) } else { 0.0 }) / e;
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                total.add(sign * binom[m] * power_sums[r - m].value() * seg);
            }
        }
    } else {
        for (j, l) in active.iter().enumerate() {
            let a = l.value;
            let b = active.get(j + 1).map_or(z, |n| n.value);
            let prefix = &active[..=j];
            let seg = tanh_sinh(a, b, |_, da, db| {
                let mut r = CompensatedSum::new();
                for p in prefix {
                    r.add(p.multiplicity as f64 * ((a - p.value) + da).powf(rho));
                }
                ((z - b) + db).powf(delta - 1.0) * r.value()
            });
            total.add(seg);
        }
    }
    total.value()
}

/// Direct `R_{rho+delta}(z)` and the iterated form
/// `Gamma(rho+delta+1)/(Gamma(rho+1) Gamma(delta)) int_0^z (z-t)^(delta-1) R_rho(t) dt`.
///
/// Integer `rho` integrates exact polynomial pieces; other orders use
/// tanh-sinh on each piece. Disagreement beyond [`ITERATION_TOLERANCE`] is an error.
pub fn riesz_iteration(spectrum: &Spectrum, rho: f64, delta: f64, z: f64) -> Result<(f64, f64)> {
    RieszQuery::new(rho, z)?;
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidParameter(format!("delta must be positive, got {delta}")));
    }
    require_range(spectrum, z)?;
    let levels = spectrum.certified_levels();
    let direct = riesz_levels(levels, 0.0, rho + delta, z);
    let factor = (crate::numerics::ln_gamma(rho + delta + 1.0)
        - crate::numerics::ln_gamma(rho + 1.0)
        - crate::numerics::ln_gamma(delta))
    .exp();
    let iterated = factor * iterated_integral(levels, rho, delta, z);
    let scale = direct.abs().max(iterated.abs());
    if (direct - iterated).abs() > ITERATION_TOLERANCE * scale {
        return Err(Error::IterationMismatch { direct, iterated });
    }
    Ok((direct, iterated))
}

/// `sup_z (p z - R_1(z)) = sum_{i <= floor p} lambda_i + frac(p) lambda_{floor p + 1}`.
pub fn legendre_transform(spectrum: &Spectrum, p: f64) -> Result<f64> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::InvalidParameter(format!("p must be positive, got {p}")));
    }
    let whole = p.floor() as usize;
    let frac = p - whole as f64;
    let needed = if frac > 0.0 { whole + 1 } else { whole };
    spectrum.require(needed)?;
    let base = if whole == 0 { 0.0 } else { spectrum.prefix_sum(whole)? };
    Ok(if frac > 0.0 {
        base + frac * spectrum.eigenvalue(whole + 1)?
    } else {
        base
    })
}

/// `sup_{z >= 0} (p z - a z^gamma)` for `a > 0`, `gamma > 1`.
pub fn power_law_conjugate(a: f64, gamma: f64, p: f64) -> f64 {
    let z = (p / (a * gamma)).powf(1.0 / (gamma - 1.0));
    (gamma - 1.0) * a * z.powf(gamma)
}

/// The conjugate of the Berezin bound `L^cl_{1,n} |Omega| z^(1+n/2)` at `p = k`,
/// a lower bound for `sum_{i<=k} lambda_i`.
pub fn berezin_conjugate(domain: &DomainSpec, k: f64) -> f64 {
    let n = domain.dimension();
    power_law_conjugate(classical_constant(1.0, n) * domain.volume(), 1.0 + n as f64 / 2.0, k)
}

/// `conjugate(Berezin)(k) <= sum_{i<=k} lambda_i`, computed through the transform.
pub fn legendre_duality_check(spectrum: &Spectrum, k: usize) -> Result<BoundReport> {
    let status = match spectrum.problem() {
        Problem::Dirichlet => Status::Theorem,
        Problem::Closed => Status::NotApplicable,
    };
    Ok(BoundReport::new(
        BoundId::LegendreDuality,
        Argument::K(k),
        berezin_conjugate(spectrum.domain(), k as f64),
        legendre_transform(spectrum, k as f64)?,
        status,
        format!("n={}", spectrum.dimension()),
    ))
}

/// Relative difference between `k * li_yau_sum_lower(k)` and the Berezin conjugate.
pub fn duality_deviation(domain: &DomainSpec, k: usize) -> Result<f64> {
    let ly = k as f64 * li_yau_sum_lower(domain, k)?;
    Ok((berezin_conjugate(domain, k as f64) - ly).abs() / ly)
}

/// For each `z`, on `mu = lambda + sigma` with coefficient `c`:
/// `R_2(z) <= c sum (z - mu_i)_+ mu_i`,
/// `R_rho(z) <= rho/(rho + 2/c) z R_{rho-1}(z)`, and
/// `R_rho(z) / z^(rho + 2/c)` nondecreasing along the grid.
pub fn harrell_stubbe_checks(
    spectrum: &Spectrum,
    shift: &ShiftContext,
    rho: f64,
    z_grid: &[f64],
) -> Result<Vec<BoundReport>> {
    check_grid(z_grid)?;
    if !(rho.is_finite() && rho >= 1.0) {
        return Err(Error::InvalidParameter(format!("rho must be >= 1, got {rho}")));
    }
    let n = spectrum.dimension();
    let c = shift.coefficient(n)?;
    let sigma = shift.shift(n);
    let levels = spectrum.certified_levels();
    for &z in z_grid {
        require_range(spectrum, z - sigma)?;
    }
    let base = shifted_status(spectrum, shift);
    let step_status = if rho < 2.0 && base == Status::Theorem {
        Status::OutsideRegime
    } else {
        base
    };
    let exponent = rho + 2.0 / c;
    let ctx = format!("n={n}; sigma={sigma}; c={c}; rho={rho}");
    let mut out = Vec::new();
    let mut ratios = Vec::new();
    for &z in z_grid {
        let r2 = riesz_levels(levels, sigma, 2.0, z);
        let weighted = c * csum(levels.iter().map(|l| {
            let mu = l.value + sigma;
            l.multiplicity as f64 * (z - mu).max(0.0) * mu
        }));
        out.push(BoundReport::new(
            BoundId::HsQuadratic,
            Argument::Z(z),
            r2,
            weighted,
            base,
            ctx.clone(),
        ));
        let r = riesz_levels(levels, sigma, rho, z);
        let lower = riesz_levels(levels, sigma, rho - 1.0, z);
        out.push(BoundReport::new(
            BoundId::HsRieszStep,
            Argument::Z(z),
            r,
            rho / exponent * z * lower,
            step_status,
            ctx.clone(),
        ));
        ratios.push(if z > 0.0 { r / z.powf(exponent) } else { 0.0 });
    }
    for (w, zs) in ratios.windows(2).zip(z_grid.windows(2)) {
        out.push(BoundReport::new(
            BoundId::HsRatioMonotone,
            Argument::Z(zs[1]),
            w[0],
            w[1],
            base,
            format!("{ctx}; previous z={}", zs[0]),
        ));
    }
    Ok(out)
}

/// `Gamma(rho+1)/t^(rho+1) Z_H(t) <= L^cl_{rho,n} |Omega| Gamma(rho+1+n/2) / t^(rho+1+n/2)`.
pub fn laplace_consistency_check(spectrum: &Spectrum, rho: f64, q: &HeatQuery) -> Result<BoundReport> {
    let tr = partition_function(spectrum, q)?;
    let n = spectrum.dimension();
    let half = n as f64 / 2.0;
    let lhs = gamma(rho + 1.0) / q.t.powf(rho + 1.0) * tr.upper();
    let rhs =
        classical_constant(rho, n) * spectrum.domain().volume() * gamma(rho + 1.0 + half) / q.t.powf(rho + 1.0 + half);
    let status = match spectrum.problem() {
        Problem::Closed => Status::Diagnostic,
        Problem::Dirichlet => q.shift.map_or(Status::Theorem, |s| shifted_status(spectrum, &s)),
    };
    Ok(BoundReport::new(
        BoundId::LaplaceConsistency,
        Argument::T(q.t),
        lhs,
        rhs,
        status,
        format!("n={n}; rho={rho}; sigma={}", tr.sigma),
    ))
}

/// Convergence series toward the Weyl-type limits.
#[derive(Debug, Clone, PartialEq)]
pub struct KaramataSeries {
    /// `t^(n/2) Z(t)` toward `|Omega| / (4 pi)^(n/2)`.
    pub heat: Vec<SeriesPoint>,
    /// `N(z) / z^(n/2)` toward `L^cl_{0,n} |Omega|`.
    pub counting: Vec<SeriesPoint>,
    /// `R_rho(z) / z^(rho+n/2)` toward `L^cl_{rho,n} |Omega|`, per requested `rho`.
    pub riesz: Vec<(f64, Vec<SeriesPoint>)>,
    /// `|a / Gamma(n/2 + 1) - L^cl_{0,n} |Omega|| / (L^cl_{0,n} |Omega|)`.
    pub consistency: f64,
}

fn point(argument: f64, value: f64, limit: f64) -> SeriesPoint {
    SeriesPoint {
        argument,
        value,
        limit,
        relative_deviation: crate::numerics::relative_deviation(value, limit),
    }
}

/// Heat-trace limit `a = |Omega| / (4 pi)^(n/2)` and its counting-function
/// counterpart; returns their relative mismatch.
pub fn karamata_consistency(domain: &DomainSpec) -> f64 {
    let n = domain.dimension();
    let half = n as f64 / 2.0;
    let a = domain.volume() / (4.0 * PI).powf(half);
    let l0 = classical_constant(0.0, n) * domain.volume();
    crate::numerics::relative_deviation(a / gamma(half + 1.0), l0)
}

pub fn karamata_limit_check(
    spectrum: &Spectrum,
    t_grid: &[f64],
    z_grid: &[f64],
    rhos: &[f64],
    truncation_eps: f64,
) -> Result<KaramataSeries> {
    let d = spectrum.domain();
    let n = d.dimension();
    let half = n as f64 / 2.0;
    let mut heat = Vec::new();
    for &t in t_grid {
        let tr = partition_function(spectrum, &HeatQuery::new(t, truncation_eps)?)?;
        let value = t.powf(half) * (tr.partial + 0.5 * tr.tail_bound);
        heat.push(point(t, value, d.volume() / (4.0 * PI).powf(half)));
    }
    let series = |rho: f64| -> Result<Vec<SeriesPoint>> {
        z_grid
            .iter()
            .map(|&z| {
                let q = RieszQuery::new(rho, z)?;
                let v = riesz_mean(spectrum, q)? / z.powf(rho + half);
                Ok(point(z, v, classical_constant(rho, n) * d.volume()))
            })
            .collect()
    };
    let counting = series(0.0)?;
    let riesz = rhos
        .iter()
        .map(|&r| series(r).map(|s| (r, s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(KaramataSeries {
        heat,
        counting,
        riesz,
        consistency: karamata_consistency(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{box_spectrum, sphere_spectrum, DomainKind};
    use approx::assert_relative_eq;

    fn square(count: usize) -> Spectrum {
        box_spectrum(&[PI, PI], count).unwrap()
    }

    fn theta(t: f64) -> f64 {
        (1..200).map(|m| (-((m * m) as f64) * t).exp()).sum()
    }

    #[test]
    fn riesz_examples() {
        let s = square(200);
        assert_eq!(riesz_mean(&s, RieszQuery::new(0.0, 10.0).unwrap()).unwrap(), 6.0);
        assert_eq!(riesz_mean(&s, RieszQuery::new(1.0, 6.0).unwrap()).unwrap(), 6.0);
        assert_eq!(riesz_mean(&s, RieszQuery::new(2.0, 1.0).unwrap()).unwrap(), 0.0);
        assert!(matches!(
            riesz_mean(&s, RieszQuery::new(1.0, 1e6).unwrap()),
            Err(Error::OutOfCertifiedRange { .. })
        ));
    }

    #[test]
    fn berezin_examples() {
        assert_relative_eq!(classical_constant(1.0, 2), 1.0 / (8.0 * PI), max_relative = 1e-14);
        let s = square(200);
        let r = berezin_check(&s, RieszQuery::new(1.0, 6.0).unwrap()).unwrap();
        assert_relative_eq!(r.rhs, 4.5 * PI, max_relative = 1e-14);
        assert!(r.satisfied);
        let r = berezin_check(&s, RieszQuery::new(0.0, 10.0).unwrap()).unwrap();
        assert_eq!(r.bound_id, BoundId::Counting);
        assert_relative_eq!(r.rhs, 5.0 * PI, max_relative = 1e-14);
        let r = berezin_check(&s, RieszQuery::new(0.5, 10.0).unwrap()).unwrap();
        assert_eq!(r.status, Status::OutsideRegime);
    }

    #[test]
    fn heat_trace_matches_theta_series() {
        let s = square(3000);
        let q = HeatQuery::new(1.0, 1e-10).unwrap();
        let tr = partition_function(&s, &q).unwrap();
        assert_relative_eq!(tr.partial, theta(1.0).powi(2), max_relative = 1e-13);
        assert_relative_eq!(tr.partial, 0.14924, max_relative = 1e-4);
        let k = kac_check(&s, &q).unwrap();
        assert_relative_eq!(k.rhs, PI / 4.0, max_relative = 1e-14);
        assert!(k.satisfied);
    }

    #[test]
    fn tail_failure_names_usable_t() {
        let s = square(50);
        let q = HeatQuery::new(1e-3, 1e-8).unwrap();
        match partition_function(&s, &q) {
            Err(Error::TailCertification { t, min_t }) => {
                assert_eq!(t, 1e-3);
                assert!(partition_function(&s, &q.at(min_t * 1.0001)).is_ok());
                assert!(partition_function(&s, &q.at(min_t * 0.99)).is_err());
            }
            other => panic!("expected tail error, got {other:?}"),
        }
    }

    #[test]
    fn tail_bound_dominates_true_tail() {
        // square(pi) spectrum: truncated prefix vs the theta-series value
        let s = square(400);
        for t in [0.02, 0.05, 0.1] {
            let tr = trace_unchecked(&s, &HeatQuery::new(t, 0.5).unwrap());
            let exact = theta(t).powi(2);
            let slack = 1e-14 * exact;
            assert!(tr.partial <= exact + slack && exact <= tr.upper() + slack, "t={t}");
        }
    }

    #[test]
    fn shift_factorizes() {
        let s = square(3000);
        let shift = ShiftContext::new(0.7, crate::universal_bounds::Ambient::Euclidean).unwrap();
        let q = HeatQuery::new(0.3, 1e-10).unwrap();
        let plain = partition_function(&s, &q).unwrap();
        let shifted = partition_function(&s, &q.with_shift(shift)).unwrap();
        assert_relative_eq!(
            shifted.partial,
            (-0.7 * 0.3f64).exp() * plain.partial,
            max_relative = 1e-12
        );
    }

    #[test]
    fn sphere_kac_analog() {
        let s = sphere_spectrum(2, 80).unwrap();
        for t in [0.1, 0.5, 1.0, 2.0] {
            let q = HeatQuery::new(t, 1e-6).unwrap().with_shift(ShiftContext::sphere());
            let r = kac_check(&s, &q).unwrap();
            assert_relative_eq!(r.rhs, 1.0 / t, max_relative = 1e-14);
            assert!(r.satisfied);
            assert_eq!(r.status, Status::Diagnostic);
        }
    }

    #[test]
    fn monotonicity_and_negative_control() {
        let s = square(3000);
        let grid: Vec<f64> = (1..=20).map(|i| i as f64 / 10.0).collect();
        let q = HeatQuery::new(1.0, 1e-8).unwrap();
        assert!(hs_monotonicity_check(&s, &grid, &q)
            .unwrap()
            .iter()
            .all(|r| r.satisfied));
        assert!(hs_monotonicity_check(&s, &[0.5], &q).unwrap().is_empty());

        let d = DomainSpec::new(2, 1.0, "single", DomainKind::UserSupplied).unwrap();
        let one = Spectrum::complete(d, vec![Level::new(1.0, 1)], Problem::Dirichlet).unwrap();
        let q = q.with_tail(TailPolicy::ExactFinite);
        let rs = hs_monotonicity_check(&one, &grid, &q).unwrap();
        for r in &rs {
            let t = r.argument.value();
            assert_eq!(r.satisfied, t > 1.0 + 1e-12, "t={t}");
        }
    }

    #[test]
    fn riesz_iteration_examples() {
        let s = square(200);
        let (d, i) = riesz_iteration(&s, 1.0, 1.0, 6.0).unwrap();
        assert_eq!(d, 18.0);
        assert_relative_eq!(i, 18.0, max_relative = 1e-12);
        assert_eq!(riesz_iteration(&s, 1.0, 0.5, 1.5).unwrap(), (0.0, 0.0));
        riesz_iteration(&s, 0.0, 2.0, 10.0).unwrap();
        for rho in [0.0, 1.0, 2.0, 0.5, 1.7] {
            for delta in [0.5, 1.0, 2.0, 0.3] {
                riesz_iteration(&s, rho, delta, 47.3).unwrap();
            }
        }
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularities() {
        // int_0^1 x^{-1/2} (1-x)^{-1/2} dx = pi
        let v = tanh_sinh(0.0, 1.0, |_, da, db| da.powf(-0.5) * db.powf(-0.5));
        assert_relative_eq!(v, PI, max_relative = 1e-13);
        let v = tanh_sinh(2.0, 5.0, |x, _, _| x * x);
        assert_relative_eq!(v, 39.0, max_relative = 1e-14);
    }

    #[test]
    fn legendre_examples() {
        let s = square(200);
        assert_eq!(legendre_transform(&s, 2.0).unwrap(), 7.0);
        assert_eq!(legendre_transform(&s, 1.0).unwrap(), 2.0);
        assert_eq!(legendre_transform(&s, 0.5).unwrap(), 1.0);
        assert_eq!(legendre_transform(&s, 1.5).unwrap(), 4.5);
        // brute sup over a dense grid
        for p in [0.3, 1.0, 2.0, 2.5, 7.0, 11.2] {
            let mut best = f64::NEG_INFINITY;
            for i in 0..=40_000 {
                let z = i as f64 * 1e-3;
                let r1 = riesz_mean(&s, RieszQuery::new(1.0, z).unwrap()).unwrap();
                best = best.max(p * z - r1);
            }
            let exact = legendre_transform(&s, p).unwrap();
            assert!(
                (best - exact).abs() <= 1e-9 * exact.max(1.0),
                "p={p}: {best} vs {exact}"
            );
        }
        assert!(legendre_transform(&s, 1e9).is_err());
    }

    #[test]
    fn berezin_conjugate_is_li_yau() {
        for n in 1..6 {
            let d = DomainSpec::new(n, 1.7, "x", DomainKind::UserSupplied).unwrap();
            for k in [1, 5, 100] {
                assert!(duality_deviation(&d, k).unwrap() < 1e-10);
            }
        }
        assert!(legendre_duality_check(&square(200), 50).unwrap().satisfied);
    }

    #[test]
    fn harrell_stubbe_examples() {
        let s = square(400);
        let rs = harrell_stubbe_checks(&s, &ShiftContext::euclidean(), 2.0, &[1.0, 6.0]).unwrap();
        assert!(rs.iter().all(|r| r.satisfied));
        let step = rs
            .iter()
            .find(|r| r.bound_id == BoundId::HsRieszStep && r.argument.value() == 6.0)
            .unwrap();
        assert_eq!((step.lhs, step.rhs), (18.0, 24.0));
        let first = &rs[0];
        assert_eq!((first.lhs, first.rhs), (0.0, 0.0));
    }

    #[test]
    fn karamata_series_and_identity() {
        let s = square(2000);
        let k = karamata_limit_check(&s, &[0.05, 0.02], &[500.0, 1000.0], &[1.0], 1e-6).unwrap();
        assert!(k.consistency < 1e-14);
        assert!(k.counting[1].relative_deviation < k.counting[0].relative_deviation + 0.05);
        assert_eq!(k.riesz.len(), 1);
        let d = DomainSpec::new(2, 1.0, "x", DomainKind::UserSupplied).unwrap();
        assert!(karamata_consistency(&d) <= 1e-15);
    }

    #[test]
    fn laplace_consistency_holds() {
        let s = square(3000);
        for rho in [0.0, 1.0, 2.5] {
            for t in [0.05, 0.5, 2.0] {
                let r = laplace_consistency_check(&s, rho, &HeatQuery::new(t, 1e-8).unwrap()).unwrap();
                assert!(r.satisfied, "rho={rho} t={t}");
            }
        }
    }
}
