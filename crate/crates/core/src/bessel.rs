//! Bessel functions of the first kind `J_p(x)` for real order `p >= 0` and
//! their positive zeros `j_{p,k}`.
//!
//! Small arguments use the power series. Everywhere else `J_p` comes from
//! Miller's backward recurrence normalised with the Neumann sum
//! `(x/2)^v = sum_k (v + 2k) Gamma(v + k) / k! * J_{v+2k}(x)`, `v = p - floor(p)`.
//! Within `p <= MAX_ORDER`, `x <= MAX_ARGUMENT` the absolute error stays
//! below `1e-12`; requests outside that box are refused with a range error.

use crate::error::{Error, Result};
use crate::numerics::{ln_gamma, CompensatedSum};

pub const MAX_ORDER: f64 = 200.0;
pub const MAX_ARGUMENT: f64 = 1000.0;

/// Zeros of `J_p`, `p >= 0`, are separated by more than 3, so a sweep with
/// this step brackets each zero in its own cell.
const SWEEP_STEP: f64 = 1.0;

/// Order `p` of a Bessel function; finite and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Bessel order must be finite and >= 0, got {p}"
            )));
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `J_p(x)` for `x >= 0`.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    let p = order.0;
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Bessel argument must be finite and >= 0, got {x}"
        )));
    }
    if p > MAX_ORDER || x > MAX_ARGUMENT {
        return Err(Error::BesselRange {
            order: p,
            x,
            max_order: MAX_ORDER,
            max_x: MAX_ARGUMENT,
        });
    }
    if x == 0.0 {
        return Ok(if p == 0.0 { 1.0 } else { 0.0 });
    }
    if x <= 5.0 || x * x <= p + 1.0 {
        Ok(series(p, x))
    } else {
        Ok(miller(p, x))
    }
}

fn series(p: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = (p * half.ln() - ln_gamma(p + 1.0)).exp();
    if term == 0.0 {
        return 0.0;
    }
    let mut acc = CompensatedSum::new();
    acc.add(term);
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= -q / (m * (m + p));
        acc.add(term);
        if term.abs() <= 1e-18 * acc.value().abs() || m > 400.0 {
            break;
        }
    }
    acc.value()
}

fn miller(p: f64, x: f64) -> f64 {
    let n = p.floor() as usize;
    let nu = p - n as f64;
    let top = x.max(p);
    let mut start = top.ceil() as usize + 40 + (2.5 * top.sqrt()).ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }

    // h[i] = Gamma(nu + i) / i!, i >= 1
    let half_count = start / 2 + 1;
    let mut h = vec![0.0; half_count + 1];
    if half_count >= 1 {
        h[1] = (ln_gamma(nu + 1.0)).exp();
        for i in 1..half_count {
            h[i + 1] = h[i] * (nu + i as f64) / (i as f64 + 1.0);
        }
    }
    let weight = |k: usize| -> f64 {
        // weight of J_{nu+k} in the Neumann sum (only even k contribute)
        if k % 2 == 1 {
            0.0
        } else if k == 0 {
            h[1]
        } else {
            let i = k / 2;
            (nu + k as f64) * h[i]
        }
    };

    let mut above = 0.0;
    let mut current = 1e-30;
    let mut wanted = if start == n { current } else { 0.0 };
    let mut norm = CompensatedSum::new();
    norm.add(weight(start) * current);
    let mut k = start;
    while k > 0 {
        let below = 2.0 * (nu + k as f64) / x * current - above;
        above = current;
        current = below;
        k -= 1;
        if k == n {
            wanted = current;
        }
        norm.add(weight(k) * current);
        if current.abs() > 1e250 {
            let s = 1e-250;
            current *= s;
            above *= s;
            wanted *= s;
            let v = norm.value() * s;
            norm = CompensatedSum::new();
            norm.add(v);
        }
    }
    let scale = if nu == 0.0 { 1.0 } else { (0.5 * x).powf(nu) };
    wanted * scale / norm.value()
}

/// The `k`-th positive zero `j_{p,k}` (1-based).
pub fn bessel_zero(order: BesselOrder, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("zero index k must be >= 1".into()));
    }
    let zeros = bessel_zeros(order, k)?;
    Ok(zeros[k - 1])
}

/// The first `count` positive zeros of `J_p`, increasing.
pub fn bessel_zeros(order: BesselOrder, count: usize) -> Result<Vec<f64>> {
    let mut zeros = Vec::with_capacity(count);
    sweep(order, |found, _| found >= count, &mut zeros)?;
    if zeros.len() < count {
        return Err(Error::RootNotFound {
            order: order.0,
            k: zeros.len() + 1,
        });
    }
    zeros.truncate(count);
    Ok(zeros)
}

/// Every positive zero of `J_p` that is `<= limit`, increasing.
pub fn bessel_zeros_below(order: BesselOrder, limit: f64) -> Result<Vec<f64>> {
    if limit > MAX_ARGUMENT {
        return Err(Error::BesselRange {
            order: order.0,
            x: limit,
            max_order: MAX_ORDER,
            max_x: MAX_ARGUMENT,
        });
    }
    let mut zeros = Vec::new();
    sweep(order, |_, x| x >= limit, &mut zeros)?;
    zeros.retain(|&z| z <= limit);
    Ok(zeros)
}

/// Walks right from `max(p, 1/2)`, below which `J_p` has no zero
/// (`j_{p,1} > p`), refining every sign change. Stops once `done` holds.
fn sweep(order: BesselOrder, done: impl Fn(usize, f64) -> bool, zeros: &mut Vec<f64>) -> Result<()> {
    let p = order.0;
    let mut x0 = p.max(0.5);
    let mut f0 = bessel_j(order, x0)?;
    while !done(zeros.len(), x0) {
        let x1 = (x0 + SWEEP_STEP).min(MAX_ARGUMENT);
        if x1 <= x0 {
            return Err(Error::RootNotFound {
                order: p,
                k: zeros.len() + 1,
            });
        }
        let f1 = bessel_j(order, x1)?;
        if f1 == 0.0 {
            zeros.push(x1);
        } else if f0 != 0.0 && f0.signum() != f1.signum() {
            zeros.push(refine(order, x0, f0, x1, f1)?);
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(())
}

/// Bisection down to a narrow bracket, then an Illinois regula-falsi polish.
fn refine(order: BesselOrder, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64) -> Result<f64> {
    for _ in 0..200 {
        if b - a <= 1e-7 * b {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = bessel_j(order, m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    let mut last = 0.5 * (a + b);
    for _ in 0..100 {
        let c = (a * fb - b * fa) / (fb - fa);
        if !(c > a.min(b) && c < a.max(b)) {
            break;
        }
        let fc = bessel_j(order, c)?;
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            fa *= 0.5;
        } else {
            a = b;
            fa = fb;
        }
        b = c;
        fb = fc;
        let converged = (c - last).abs() <= 2.0 * f64::EPSILON * c.abs();
        last = c;
        if converged || (b - a).abs() <= 2.0 * f64::EPSILON * c.abs() {
            break;
        }
    }
    Ok(last)
}
