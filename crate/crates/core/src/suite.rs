//! Named batches of checks over a spectrum, as run by the command-line front end.

use crate::cheng_yang::{cy_recursion_scan, cy_upper_check, quadratic_check};
use crate::error::{Error, Result};
use crate::report::{Argument, BoundId, BoundReport, Status};
use crate::riesz_heat::{
    berezin_check, counting_check, harrell_stubbe_checks, hs_monotonicity_check, kac_check, laplace_consistency_check,
    legendre_duality_check, partition_function, riesz_iteration, HeatQuery, RieszQuery, ITERATION_TOLERANCE,
};
use crate::spectra::{Problem, Spectrum};
use crate::universal_bounds::{
    cheng_yang_sum_lower, conjecture_evaluator, hile_protter_check, implication_chain_check, li_yau_check, polya_check,
    ppw_check, projective_sum_lower, yang1_check, yang2_bound, Ambient, ShiftContext,
};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Ppw,
    HileProtter,
    Yang,
    Yang2,
    Chain,
    LiYau,
    Polya,
    ChengYangSum,
    Projective,
    Conjecture,
    CyRecursion,
    CyUpper,
    Quadratic,
    Berezin,
    Counting,
    Kac,
    HsMonotonicity,
    HarrellStubbe,
    Legendre,
    Laplace,
    RieszIteration,
    All,
}

impl Suite {
    pub const NAMES: &'static [(&'static str, Suite)] = &[
        ("ppw", Suite::Ppw),
        ("hile-protter", Suite::HileProtter),
        ("yang", Suite::Yang),
        ("yang2", Suite::Yang2),
        ("chain", Suite::Chain),
        ("li-yau", Suite::LiYau),
        ("polya", Suite::Polya),
        ("cheng-yang-sum", Suite::ChengYangSum),
        ("projective", Suite::Projective),
        ("conjecture", Suite::Conjecture),
        ("cy-recursion", Suite::CyRecursion),
        ("cy-upper", Suite::CyUpper),
        ("quadratic", Suite::Quadratic),
        ("berezin", Suite::Berezin),
        ("counting", Suite::Counting),
        ("kac", Suite::Kac),
        ("hs-monotonicity", Suite::HsMonotonicity),
        ("harrell-stubbe", Suite::HarrellStubbe),
        ("legendre", Suite::Legendre),
        ("laplace", Suite::Laplace),
        ("riesz-iteration", Suite::RieszIteration),
        ("all", Suite::All),
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Self::NAMES.iter().find(|(n, _)| *n == s).map(|&(_, v)| v)
    }

    pub fn name(self) -> &'static str {
        Self::NAMES
            .iter()
            .find(|(_, v)| *v == self)
            .map(|&(n, _)| n)
            .unwrap_or("?")
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub ks: Vec<usize>,
    pub z_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub shift: ShiftContext,
    pub berezin_rhos: Vec<f64>,
    pub hs_rho: f64,
    pub truncation_eps: f64,
    /// Constant for the conjectured inequalities; `None` skips them in `all`.
    pub conjecture_c: Option<f64>,
    pub hp_allow_infinite: bool,
}

/// Default maximum `k` for index-based checks.
pub const DEFAULT_MAX_K: usize = 1000;
const DEFAULT_GRID_POINTS: usize = 20;
pub const DEFAULT_TRUNCATION_EPS: f64 = 1e-8;

impl SuiteConfig {
    /// Defaults derived from the spectrum: `k = 1..min(K-1, 1000)`, 20 `z`
    /// points spanning the certified range, `t = 0.05, 0.1, .., 2` from the
    /// first value at which the heat-trace tail certifies, and the shift
    /// implied by the domain label.
    pub fn defaults_for(spectrum: &Spectrum) -> Self {
        let kmax = spectrum.complete_count().saturating_sub(1).min(DEFAULT_MAX_K);
        let lo = spectrum.eigenvalues().find(|&v| v > 0.0).unwrap_or(1.0);
        let hi = spectrum.certified_limit();
        let z_grid = if hi > lo {
            (0..DEFAULT_GRID_POINTS)
                .map(|i| lo + (hi - lo) * i as f64 / (DEFAULT_GRID_POINTS - 1) as f64)
                .collect()
        } else {
            vec![hi]
        };
        let shift = default_shift(spectrum);
        let probe = HeatQuery::new(0.05, DEFAULT_TRUNCATION_EPS).expect("valid constants");
        let t_min = match partition_function(spectrum, &probe.with_shift(shift)) {
            Ok(_) => 0.0,
            Err(Error::TailCertification { min_t, .. }) => min_t,
            Err(_) => f64::INFINITY,
        };
        let t_grid = (1..=40).map(|i| i as f64 * 0.05).filter(|&t| t >= t_min).collect();
        Self {
            ks: (1..=kmax).collect(),
            z_grid,
            t_grid,
            shift,
            berezin_rhos: vec![1.0, 2.0, 3.0],
            hs_rho: 2.0,
            truncation_eps: DEFAULT_TRUNCATION_EPS,
            conjecture_c: None,
            hp_allow_infinite: true,
        }
    }
}

/// Sphere and projective generators carry their ambient in the label.
pub fn default_shift(spectrum: &Spectrum) -> ShiftContext {
    if spectrum.problem() == Problem::Closed {
        let label = spectrum.domain().label();
        if label.starts_with("sphere(") {
            return ShiftContext::sphere();
        }
        if let Some(rest) = label.strip_prefix("projective(") {
            if let Some(f) = rest.split('P').next().and_then(crate::spectra::Field::parse) {
                return ShiftContext::projective(f);
            }
        }
    }
    ShiftContext::euclidean()
}

/// Reports from a batch, plus errors and skipped checks (with reasons).
#[derive(Debug, Default)]
pub struct SuiteOutcome {
    pub reports: Vec<BoundReport>,
    pub errors: Vec<String>,
    pub skipped: Vec<String>,
}

impl SuiteOutcome {
    fn push(&mut self, label: &str, r: Result<BoundReport>) {
        match r {
            Ok(r) => self.reports.push(r),
            Err(e) => self.errors.push(format!("{label}: {e}")),
        }
    }

    fn extend(&mut self, label: &str, r: Result<Vec<BoundReport>>) {
        match r {
            Ok(rs) => self.reports.extend(rs),
            Err(e) => self.errors.push(format!("{label}: {e}")),
        }
    }

    pub fn theorem_failures(&self) -> impl Iterator<Item = &BoundReport> {
        self.reports.iter().filter(|r| r.is_theorem_failure())
    }

    /// True when no theorem-status check failed and no check errored.
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.theorem_failures().next().is_none()
    }
}

fn z_label(z: f64) -> String {
    format!("z={z}")
}

fn run_one(spectrum: &Spectrum, suite: Suite, cfg: &SuiteConfig, out: &mut SuiteOutcome) {
    let closed = spectrum.problem() == Problem::Closed;
    let n = spectrum.dimension();
    let shift = &cfg.shift;
    let per_k = |out: &mut SuiteOutcome, f: &dyn Fn(usize) -> Result<BoundReport>| {
        for &k in &cfg.ks {
            out.push(&format!("{suite} k={k}"), f(k));
        }
    };
    let per_k_many = |out: &mut SuiteOutcome, f: &dyn Fn(usize) -> Result<Vec<BoundReport>>| {
        for &k in &cfg.ks {
            out.extend(&format!("{suite} k={k}"), f(k));
        }
    };
    match suite {
        Suite::Ppw => per_k(out, &|k| ppw_check(spectrum, k)),
        Suite::HileProtter => per_k(out, &|k| hile_protter_check(spectrum, k, cfg.hp_allow_infinite)),
        Suite::Yang => per_k(out, &|k| yang1_check(spectrum, k, shift)),
        Suite::Yang2 => per_k(out, &|k| yang2_bound(spectrum, k, shift)),
        Suite::Chain => per_k_many(out, &|k| implication_chain_check(spectrum, k, shift)),
        Suite::LiYau => {
            if closed {
                out.skipped.push("li-yau: closed spectrum".into());
            } else {
                per_k_many(out, &|k| li_yau_check(spectrum, k))
            }
        }
        Suite::Polya => {
            if closed {
                out.skipped.push("polya: closed spectrum".into());
            } else {
                per_k(out, &|k| polya_check(spectrum, k))
            }
        }
        Suite::ChengYangSum => per_k(out, &|k| cheng_yang_sum_lower(spectrum, k, shift)),
        Suite::Projective => {
            if shift.field().is_none() {
                out.skipped.push("projective: ambient is not projective".into());
            } else {
                per_k(out, &|k| projective_sum_lower(spectrum, k, shift))
            }
        }
        Suite::Conjecture => {
            let c = cfg.conjecture_c.unwrap_or(0.0);
            per_k_many(out, &|k| conjecture_evaluator(spectrum, k, c))
        }
        Suite::CyRecursion => {
            let kmax = cfg.ks.iter().copied().max().unwrap_or(0);
            let c = match shift.coefficient(n) {
                Ok(c) => c,
                Err(e) => {
                    out.errors.push(format!("{suite}: {e}"));
                    return;
                }
            };
            let sigma = shift.shift(n);
            match spectrum.prefix(kmax + 1) {
                Ok(prefix) => {
                    let mus: Vec<f64> = prefix.into_iter().map(|l| l + sigma).collect();
                    if mus[0] <= 0.0 {
                        out.skipped
                            .push("cy-recursion: shifted sequence is not positive".into());
                        return;
                    }
                    match cy_recursion_scan(&mus, 4.0 / c) {
                        Ok(rs) => out.reports.extend(
                            rs.into_iter()
                                .filter(|r| cfg.ks.contains(&(r.argument.value() as usize))),
                        ),
                        Err(e) => out.errors.push(format!("{suite}: {e}")),
                    }
                }
                Err(e) => out.errors.push(format!("{suite}: {e}")),
            }
        }
        Suite::CyUpper => {
            if closed {
                out.skipped.push("cy-upper: closed spectrum".into());
            } else {
                per_k(out, &|k| cy_upper_check(spectrum, k))
            }
        }
        Suite::Quadratic => {
            if spectrum.eigenvalue(1).map_or(true, |l| l + shift.shift(n) <= 0.0) {
                out.skipped.push("quadratic: shifted sequence is not positive".into());
            } else {
                per_k_many(out, &|k| quadratic_check(spectrum, k, shift))
            }
        }
        Suite::Berezin => {
            if closed {
                out.skipped.push("berezin: closed spectrum".into());
                return;
            }
            for &rho in &cfg.berezin_rhos {
                for &z in &cfg.z_grid {
                    let r = RieszQuery::new(rho, z).and_then(|q| berezin_check(spectrum, q));
                    out.push(&format!("berezin rho={rho} {}", z_label(z)), r);
                }
            }
        }
        Suite::Counting => {
            if closed {
                out.skipped.push("counting: closed spectrum".into());
                return;
            }
            for &z in &cfg.z_grid {
                out.push(&format!("counting {}", z_label(z)), counting_check(spectrum, z));
            }
        }
        Suite::Kac => {
            for &t in &cfg.t_grid {
                let r = HeatQuery::new(t, cfg.truncation_eps)
                    .and_then(|q| kac_check(spectrum, &heat_shift(q, spectrum, shift)));
                out.push(&format!("kac t={t}"), r);
            }
        }
        Suite::HsMonotonicity => {
            if closed {
                out.skipped.push("hs-monotonicity: closed spectrum".into());
                return;
            }
            if cfg.t_grid.is_empty() {
                out.skipped.push("hs-monotonicity: empty t grid".into());
                return;
            }
            let r = HeatQuery::new(cfg.t_grid[0], cfg.truncation_eps)
                .and_then(|q| hs_monotonicity_check(spectrum, &cfg.t_grid, &q));
            out.extend("hs-monotonicity", r);
        }
        Suite::HarrellStubbe => {
            let sigma = shift.shift(n);
            let grid: Vec<f64> = cfg.z_grid.iter().map(|z| z + sigma).filter(|&z| z > 0.0).collect();
            if grid.is_empty() {
                out.skipped.push("harrell-stubbe: empty z grid".into());
                return;
            }
            out.extend(
                "harrell-stubbe",
                harrell_stubbe_checks(spectrum, shift, cfg.hs_rho, &grid),
            );
        }
        Suite::Legendre => {
            if closed {
                out.skipped.push("legendre: closed spectrum".into());
            } else {
                per_k(out, &|k| legendre_duality_check(spectrum, k))
            }
        }
        Suite::Laplace => {
            for &rho in &[0.0, 1.0, 2.0] {
                for &t in &cfg.t_grid {
                    let r = HeatQuery::new(t, cfg.truncation_eps)
                        .and_then(|q| laplace_consistency_check(spectrum, rho, &heat_shift(q, spectrum, shift)));
                    out.push(&format!("laplace rho={rho} t={t}"), r);
                }
            }
        }
        Suite::RieszIteration => {
            let Some(&z) = cfg.z_grid.last() else {
                out.skipped.push("riesz-iteration: empty z grid".into());
                return;
            };
            for rho in [0.0, 1.0, 2.0] {
                for delta in [0.5, 1.0, 2.0] {
                    let r = riesz_iteration(spectrum, rho, delta, z).map(|(direct, iterated)| {
                        BoundReport::new(
                            BoundId::RieszIteration,
                            Argument::Z(z),
                            (direct - iterated).abs(),
                            ITERATION_TOLERANCE * direct.abs().max(iterated.abs()),
                            Status::Diagnostic,
                            format!("rho={rho}; delta={delta}; direct={direct}; iterated={iterated}"),
                        )
                    });
                    out.push(&format!("riesz-iteration rho={rho} delta={delta}"), r);
                }
            }
        }
        Suite::All => {
            for s in [
                Suite::Chain,
                Suite::LiYau,
                Suite::Polya,
                Suite::ChengYangSum,
                Suite::Projective,
                Suite::CyRecursion,
                Suite::CyUpper,
                Suite::Quadratic,
                Suite::Berezin,
                Suite::Counting,
                Suite::Kac,
                Suite::HsMonotonicity,
                Suite::HarrellStubbe,
                Suite::Legendre,
                Suite::Laplace,
                Suite::RieszIteration,
            ] {
                run_one(spectrum, s, cfg, out);
            }
            if cfg.conjecture_c.is_some() {
                run_one(spectrum, Suite::Conjecture, cfg, out);
            }
        }
    }
}

/// Heat checks on Dirichlet data use the shift only when it is nonzero.
fn heat_shift(q: HeatQuery, spectrum: &Spectrum, shift: &ShiftContext) -> HeatQuery {
    let trivial = shift.ambient() == Ambient::Euclidean && shift.h0_sq() == 0.0;
    if trivial && spectrum.problem() == Problem::Dirichlet {
        q
    } else {
        q.with_shift(*shift)
    }
}

pub fn run_suite(spectrum: &Spectrum, suite: Suite, cfg: &SuiteConfig) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    run_one(spectrum, suite, cfg, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{box_spectrum, projective_spectrum, sphere_spectrum, Field};
    use std::f64::consts::PI;

    #[test]
    fn names_round_trip() {
        for &(name, s) in Suite::NAMES {
            assert_eq!(Suite::parse(name), Some(s));
            assert_eq!(s.name(), name);
        }
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn square_passes_everything() {
        let s = box_spectrum(&[PI, PI], 300).unwrap();
        let cfg = SuiteConfig::defaults_for(&s);
        let out = run_suite(&s, Suite::All, &cfg);
        assert!(out.errors.is_empty(), "{:?}", out.errors);
        assert!(out.passed(), "{:?}", out.theorem_failures().collect::<Vec<_>>());
        assert!(out.reports.len() > 1000);
    }

    #[test]
    fn yang_suite_is_one_row_per_k() {
        let s = box_spectrum(&[PI, PI], 300).unwrap();
        let mut cfg = SuiteConfig::defaults_for(&s);
        cfg.ks = (1..=100).collect();
        let out = run_suite(&s, Suite::Yang, &cfg);
        assert_eq!(out.reports.len(), 100);
        assert!(out.reports.iter().all(|r| r.satisfied));
    }

    #[test]
    fn closed_spectra_pick_their_ambient() {
        let s = sphere_spectrum(3, 20).unwrap();
        assert_eq!(default_shift(&s), ShiftContext::sphere());
        let out = run_suite(&s, Suite::All, &SuiteConfig::defaults_for(&s));
        assert!(
            out.passed(),
            "{:?} {:?}",
            out.errors,
            out.theorem_failures().collect::<Vec<_>>()
        );
        let p = projective_spectrum(Field::Complex, 2, 12).unwrap();
        assert_eq!(default_shift(&p), ShiftContext::projective(Field::Complex));
        let out = run_suite(&p, Suite::All, &SuiteConfig::defaults_for(&p));
        assert!(
            out.passed(),
            "{:?} {:?}",
            out.errors,
            out.theorem_failures().collect::<Vec<_>>()
        );
        assert!(out.reports.iter().any(|r| r.bound_id == BoundId::ProjectiveSum));
    }
}
