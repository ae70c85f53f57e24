//! Exact spectra of model domains and manifolds, stored as run-length
//! `(eigenvalue, multiplicity)` levels with a completeness certificate.

mod generators;
mod io;

pub use generators::{
    ball_spectrum, box_spectrum, box_spectrum_with_budget, projective_spectrum, sphere_spectrum, Field,
    DEFAULT_LATTICE_BUDGET, PROJECTIVE_NORMALIZATION,
};
pub use io::{load_spectrum, parse_spectrum, save_spectrum, write_spectrum};

use crate::error::{Error, Result};
use crate::numerics::{unit_ball_volume, weyl_constant, weyl_leading_term, CompensatedSum};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    EuclideanDomain,
    ClosedManifold,
    UserSupplied,
}

impl DomainKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DomainKind::EuclideanDomain => "euclidean-domain",
            DomainKind::ClosedManifold => "closed-manifold",
            DomainKind::UserSupplied => "user-supplied",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "euclidean-domain" => Some(DomainKind::EuclideanDomain),
            "closed-manifold" => Some(DomainKind::ClosedManifold),
            "user-supplied" => Some(DomainKind::UserSupplied),
            _ => None,
        }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dimension, Riemannian volume and origin of the underlying domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    dimension: usize,
    volume: f64,
    label: String,
    kind: DomainKind,
}

impl DomainSpec {
    pub fn new(dimension: usize, volume: f64, label: impl Into<String>, kind: DomainKind) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidParameter("dimension must be >= 1".into()));
        }
        if !(volume.is_finite() && volume > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "volume must be positive, got {volume}"
            )));
        }
        Ok(Self {
            dimension,
            volume,
            label: label.into(),
            kind,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    /// `omega_n`, volume of the unit ball of the same dimension.
    pub fn unit_ball_volume(&self) -> f64 {
        unit_ball_volume(self.dimension)
    }

    /// `C_n = 4 pi^2 / omega_n^(2/n)`.
    pub fn weyl_constant(&self) -> f64 {
        weyl_constant(self.dimension)
    }

    /// Boxes tile space and balls are covered by the Filonov-Levitin-Polterovich-Sher
    /// result, so the Polya inequality is a theorem for generator-built boxes and balls.
    pub fn polya_is_theorem(&self) -> bool {
        self.kind != DomainKind::ClosedManifold && (self.label.starts_with("box[") || self.label.starts_with("ball("))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Dirichlet,
    Closed,
}

impl Problem {
    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Dirichlet => "dirichlet",
            Problem::Closed => "closed",
        }
    }
}

/// One distinct eigenvalue with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub value: f64,
    pub multiplicity: u64,
}

impl Level {
    pub fn new(value: f64, multiplicity: u64) -> Self {
        Self { value, multiplicity }
    }
}

/// A sorted, multiplicity-aware finite prefix of an eigenvalue sequence.
///
/// The first `complete_count` flattened eigenvalues are certified to be the
/// smallest ones with correct multiplicities. `complete_count` always ends on
/// a level boundary, so every eigenvalue `<= certified_limit()` is present.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    domain: DomainSpec,
    levels: Vec<Level>,
    problem: Problem,
    complete_count: usize,
    certified_levels: usize,
    /// `cumulative[j]` = number of eigenvalues in levels `0..=j`.
    cumulative: Vec<usize>,
    /// `level_sums[j]` = sum of all eigenvalues in levels `0..=j`.
    level_sums: Vec<f64>,
}

impl Spectrum {
    pub fn new(domain: DomainSpec, levels: Vec<Level>, problem: Problem, complete_count: usize) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidSpectrum("no eigenvalues".into()));
        }
        for (i, level) in levels.iter().enumerate() {
            if !(level.value.is_finite() && level.value >= 0.0) {
                return Err(Error::InvalidSpectrum(format!(
                    "eigenvalue #{} is not a finite nonnegative number: {}",
                    i + 1,
                    level.value
                )));
            }
            if level.multiplicity == 0 {
                return Err(Error::InvalidSpectrum(format!("level #{} has multiplicity 0", i + 1)));
            }
            if i > 0 && level.value <= levels[i - 1].value {
                return Err(Error::InvalidSpectrum(format!(
                    "levels not strictly increasing at #{} ({} after {})",
                    i + 1,
                    level.value,
                    levels[i - 1].value
                )));
            }
        }
        match problem {
            Problem::Dirichlet if levels[0].value <= 0.0 => {
                return Err(Error::InvalidSpectrum("Dirichlet eigenvalues must be positive".into()));
            }
            Problem::Closed if levels[0].value != 0.0 => {
                return Err(Error::InvalidSpectrum("closed spectra start at eigenvalue 0".into()));
            }
            _ => {}
        }

        let mut total = 0usize;
        let mut certified_levels = None;
        if complete_count == 0 {
            certified_levels = Some(0);
        }
        let mut cumulative = Vec::with_capacity(levels.len());
        let mut level_sums = Vec::with_capacity(levels.len());
        let mut running = CompensatedSum::new();
        for (i, level) in levels.iter().enumerate() {
            let mult = usize::try_from(level.multiplicity)
                .ok()
                .and_then(|m| total.checked_add(m))
                .ok_or_else(|| Error::InvalidSpectrum("total multiplicity overflows".into()))?;
            total = mult;
            cumulative.push(total);
            running.add(level.value * level.multiplicity as f64);
            level_sums.push(running.value());
            if total == complete_count {
                certified_levels = Some(i + 1);
            }
        }
        if complete_count > total {
            return Err(Error::InvalidSpectrum(format!(
                "complete_count {complete_count} exceeds stored multiplicity {total}"
            )));
        }
        let certified_levels = certified_levels.ok_or_else(|| {
            Error::InvalidSpectrum(format!(
                "complete_count {complete_count} splits a degenerate eigenvalue"
            ))
        })?;

        Ok(Self {
            domain,
            levels,
            problem,
            complete_count,
            certified_levels,
            cumulative,
            level_sums,
        })
    }

    /// Spectrum whose stored levels are all certified.
    pub fn complete(domain: DomainSpec, levels: Vec<Level>, problem: Problem) -> Result<Self> {
        let total = levels.iter().map(|l| l.multiplicity as usize).sum();
        Self::new(domain, levels, problem, total)
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn dimension(&self) -> usize {
        self.domain.dimension
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Levels covered by the completeness certificate.
    pub fn certified_levels(&self) -> &[Level] {
        &self.levels[..self.certified_levels]
    }

    pub fn complete_count(&self) -> usize {
        self.complete_count
    }

    pub fn total_multiplicity(&self) -> usize {
        self.cumulative.last().copied().unwrap_or(0)
    }

    /// Certified eigenvalues, repeated according to multiplicity.
    pub fn eigenvalues(&self) -> impl Iterator<Item = f64> + '_ {
        self.certified_levels()
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.value, l.multiplicity as usize))
    }

    /// The first `k` eigenvalues as a vector.
    pub fn prefix(&self, k: usize) -> Result<Vec<f64>> {
        self.require(k)?;
        Ok(self.eigenvalues().take(k).collect())
    }

    /// Largest certified eigenvalue; every eigenvalue up to it is listed.
    pub fn certified_limit(&self) -> f64 {
        self.certified_levels().last().map_or(0.0, |l| l.value)
    }

    /// Index of the level holding `lambda_i` (1-based `i`).
    fn level_of(&self, i: usize) -> usize {
        self.cumulative.partition_point(|&c| c < i)
    }

    /// `lambda_i`, 1-based.
    pub fn eigenvalue(&self, i: usize) -> Result<f64> {
        self.require(i)?;
        Ok(self.levels[self.level_of(i)].value)
    }

    pub fn require(&self, count: usize) -> Result<()> {
        if count == 0 || count > self.complete_count {
            return Err(Error::InsufficientPrefix {
                needed: count,
                available: self.complete_count,
            });
        }
        Ok(())
    }

    /// `sum_{i<=k} lambda_i`.
    pub fn prefix_sum(&self, k: usize) -> Result<f64> {
        self.require(k)?;
        let j = self.level_of(k);
        let (before_count, before_sum) = if j == 0 {
            (0, 0.0)
        } else {
            (self.cumulative[j - 1], self.level_sums[j - 1])
        };
        let partial = (k - before_count) as f64 * self.levels[j].value;
        Ok(before_sum + partial)
    }

    /// Counting function `N(z) = #{lambda_i <= z}` over the certified levels.
    pub fn count_at_most(&self, z: f64) -> usize {
        let j = self.certified_levels().partition_point(|l| l.value <= z);
        if j == 0 {
            0
        } else {
            self.cumulative[j - 1]
        }
    }

    /// `lambda_k (omega_n |Omega|)^(2/n) / (4 pi^2 k^(2/n))`, which tends to 1 by Weyl's law.
    pub fn weyl_ratio(&self, k: usize) -> Result<f64> {
        let lambda = self.eigenvalue(k)?;
        Ok(lambda / weyl_leading_term(self.dimension(), self.domain.volume, k as f64))
    }
}

/// Collapses sorted values into levels, merging neighbours within `rel_tol`
/// of the first value in the run.
pub(crate) fn merge_levels(sorted: impl IntoIterator<Item = (f64, u64)>, rel_tol: f64) -> Vec<Level> {
    let mut out: Vec<Level> = Vec::new();
    for (value, mult) in sorted {
        match out.last_mut() {
            Some(last) if value - last.value <= rel_tol * value.abs().max(last.value.abs()) => {
                last.multiplicity += mult;
            }
            _ => out.push(Level::new(value, mult)),
        }
    }
    out
}

/// Keeps the shortest level prefix holding at least `count` eigenvalues.
pub(crate) fn truncate_to_count(levels: &mut Vec<Level>, count: usize) -> bool {
    let mut total = 0usize;
    for (i, level) in levels.iter().enumerate() {
        total += level.multiplicity as usize;
        if total >= count {
            levels.truncate(i + 1);
            return true;
        }
    }
    false
}
