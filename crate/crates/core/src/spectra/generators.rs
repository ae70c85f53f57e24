use super::{merge_levels, truncate_to_count, DomainKind, DomainSpec, Level, Problem, Spectrum};
use crate::bessel::{bessel_zeros_below, BesselOrder, MAX_ORDER};
use crate::error::{Error, Result};
use crate::numerics::{binomial, gamma, unit_ball_volume, unit_sphere_volume, weyl_leading_term};
use std::f64::consts::PI;

/// Default cap on visited lattice points for [`box_spectrum`].
pub const DEFAULT_LATTICE_BUDGET: u64 = 50_000_000;

const CUTOFF_SAFETY: f64 = 1.1;
const MERGE_TOL: f64 = 1e-9;

/// Metric normalisation used for every projective-space spectrum.
pub const PROJECTIVE_NORMALIZATION: &str =
    "FP^m standard metric: sectional curvature 1 for RP^m, pinched in [1,4] for CP^m and QP^m";

/// Base field of a projective space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl Field {
    /// `d(F) = dim_R F`.
    pub fn real_dimension(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }

    pub fn from_real_dimension(d: usize) -> Option<Self> {
        match d {
            1 => Some(Field::Real),
            2 => Some(Field::Complex),
            4 => Some(Field::Quaternion),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "R" => Some(Field::Real),
            "C" => Some(Field::Complex),
            "Q" | "H" => Some(Field::Quaternion),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Field::Real => "R",
            Field::Complex => "C",
            Field::Quaternion => "Q",
        }
    }
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be >= 1".into()));
    }
    Ok(())
}

/// Dirichlet spectrum of the box `prod [0, L_i]`: `pi^2 sum (m_i / L_i)^2`, `m_i >= 1`.
pub fn box_spectrum(lengths: &[f64], count: usize) -> Result<Spectrum> {
    box_spectrum_with_budget(lengths, count, DEFAULT_LATTICE_BUDGET)
}

pub fn box_spectrum_with_budget(lengths: &[f64], count: usize, budget: u64) -> Result<Spectrum> {
    if lengths.is_empty() {
        return Err(Error::InvalidParameter("box needs at least one side length".into()));
    }
    if let Some(bad) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "box side lengths must be positive, got {bad}"
        )));
    }
    check_count(count)?;
    let n = lengths.len();
    let volume: f64 = lengths.iter().product();
    let inv_sq: Vec<f64> = lengths.iter().map(|l| 1.0 / (l * l)).collect();
    let ground = PI * PI * inv_sq.iter().sum::<f64>();
    let uniform = lengths.iter().all(|&l| l == lengths[0]);

    let mut cutoff = CUTOFF_SAFETY * weyl_leading_term(n, volume, count as f64).max(ground);
    loop {
        let mut levels = if uniform {
            enumerate_uniform_box(n, lengths[0], cutoff, budget)?
        } else {
            enumerate_box(&inv_sq, cutoff, budget)?
        };
        if truncate_to_count(&mut levels, count) {
            let label = format!(
                "box[{}]",
                lengths.iter().map(|l| format!("{l}")).collect::<Vec<_>>().join(",")
            );
            let domain = DomainSpec::new(n, volume, label, DomainKind::EuclideanDomain)?;
            return Spectrum::complete(domain, levels, Problem::Dirichlet);
        }
        cutoff *= CUTOFF_SAFETY * CUTOFF_SAFETY;
    }
}

/// Equal sides: the eigenvalue is `pi^2 / L^2` times the integer `sum m_i^2`,
/// so degeneracies are grouped exactly.
fn enumerate_uniform_box(n: usize, side: f64, cutoff: f64, budget: u64) -> Result<Vec<Level>> {
    let scale = PI * PI / (side * side);
    let max_key = (cutoff / scale).floor() as u64;
    let mut keys: Vec<u64> = Vec::new();
    let mut visited = 0u64;
    fn walk(dim: usize, remaining: u64, acc: u64, keys: &mut Vec<u64>, visited: &mut u64, budget: u64) -> bool {
        if dim == 0 {
            *visited += 1;
            if *visited > budget {
                return false;
            }
            keys.push(acc);
            return true;
        }
        let mut m = 1u64;
        while m * m <= remaining {
            if !walk(dim - 1, remaining - m * m, acc + m * m, keys, visited, budget) {
                return false;
            }
            m += 1;
        }
        true
    }
    if !walk(n, max_key, 0, &mut keys, &mut visited, budget) {
        return Err(Error::EnumerationBudget { budget, cutoff });
    }
    keys.sort_unstable();
    let mut levels: Vec<Level> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let mut j = i;
        while j < keys.len() && keys[j] == keys[i] {
            j += 1;
        }
        levels.push(Level::new(scale * keys[i] as f64, (j - i) as u64));
        i = j;
    }
    Ok(levels)
}

fn enumerate_box(inv_sq: &[f64], cutoff: f64, budget: u64) -> Result<Vec<Level>> {
    let target = cutoff / (PI * PI);
    let mut values: Vec<f64> = Vec::new();
    let mut visited = 0u64;
    fn walk(inv_sq: &[f64], acc: f64, target: f64, out: &mut Vec<f64>, visited: &mut u64, budget: u64) -> bool {
        let Some((&w, rest)) = inv_sq.split_first() else {
            *visited += 1;
            if *visited > budget {
                return false;
            }
            out.push(acc);
            return true;
        };
        // smallest possible contribution of the remaining coordinates
        let floor: f64 = rest.iter().sum();
        let mut m = 1u64;
        loop {
            let next = acc + w * (m * m) as f64;
            if next + floor > target {
                break;
            }
            if !walk(rest, next, target, out, visited, budget) {
                return false;
            }
            m += 1;
        }
        true
    }
    if !walk(inv_sq, 0.0, target, &mut values, &mut visited, budget) {
        return Err(Error::EnumerationBudget { budget, cutoff });
    }
    values.sort_by(f64::total_cmp);
    Ok(merge_levels(values.into_iter().map(|v| (PI * PI * v, 1)), MERGE_TOL))
}

/// Dimension of degree-`l` spherical harmonics on S^(d-1) (harmonic polynomials in `d` variables).
fn harmonic_dimension(d: u64, l: u64) -> Result<u64> {
    let overflow = || Error::InvalidParameter(format!("multiplicity overflow at degree {l}"));
    let full = binomial(l + d - 1, d - 1).ok_or_else(overflow)?;
    let lower = if l >= 2 {
        binomial(l + d - 3, d - 1).ok_or_else(overflow)?
    } else {
        0
    };
    Ok(full - lower)
}

/// Dirichlet spectrum of the ball of radius `R` in R^n: `(j_{l+n/2-1,k} / R)^2`
/// with the multiplicity of degree-`l` spherical harmonics on S^(n-1).
pub fn ball_spectrum(n: usize, radius: f64, count: usize) -> Result<Spectrum> {
    if n < 2 {
        return Err(Error::InvalidParameter("ball spectrum needs dimension n >= 2".into()));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radius must be positive, got {radius}"
        )));
    }
    check_count(count)?;
    let volume = unit_ball_volume(n) * radius.powi(n as i32);
    let mut cutoff = CUTOFF_SAFETY * weyl_leading_term(n, volume, count as f64);
    loop {
        let x_max = radius * cutoff.sqrt();
        let mut grid: Vec<(f64, usize, u64)> = Vec::new();
        for l in 0.. {
            let p = l as f64 + n as f64 / 2.0 - 1.0;
            if p > MAX_ORDER {
                return Err(Error::BesselRange {
                    order: p,
                    x: x_max,
                    max_order: MAX_ORDER,
                    max_x: crate::bessel::MAX_ARGUMENT,
                });
            }
            let zeros = bessel_zeros_below(BesselOrder::new(p)?, x_max)?;
            // j_{p,1} increases with p, so no higher l can contribute
            if zeros.is_empty() {
                break;
            }
            let mult = harmonic_dimension(n as u64, l as u64)?;
            grid.extend(zeros.into_iter().map(|z| ((z / radius).powi(2), l, mult)));
        }
        grid.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        // distinct (l, k) never share a zero, so only bit-identical values merge
        let mut levels = merge_levels(grid.into_iter().map(|(v, _, m)| (v, m)), 0.0);
        if truncate_to_count(&mut levels, count) {
            let label = format!("ball(n={n},R={radius})");
            let domain = DomainSpec::new(n, volume, label, DomainKind::EuclideanDomain)?;
            return Spectrum::complete(domain, levels, Problem::Dirichlet);
        }
        cutoff *= CUTOFF_SAFETY * CUTOFF_SAFETY;
    }
}

/// Closed spectrum of the unit sphere S^n: `l (l + n - 1)`, `l >= 0`.
///
/// `count` is the number of distinct eigenvalues returned.
pub fn sphere_spectrum(n: usize, count: usize) -> Result<Spectrum> {
    if n == 0 {
        return Err(Error::InvalidParameter("sphere dimension must be >= 1".into()));
    }
    check_count(count)?;
    let levels = (0..count as u64)
        .map(|l| {
            let value = (l * (l + n as u64 - 1)) as f64;
            Ok(Level::new(value, harmonic_dimension(n as u64 + 1, l)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let domain = DomainSpec::new(
        n,
        unit_sphere_volume(n),
        format!("sphere(n={n})"),
        DomainKind::ClosedManifold,
    )?;
    Spectrum::complete(domain, levels, Problem::Closed)
}

/// Closed spectrum of `FP^m` (real dimension `m d(F)`) in the standard metric:
///
/// * `RP^m`: `2l(2l + m - 1)`, even-degree harmonics of S^m, volume `vol(S^m)/2`;
/// * `CP^m`: `4l(l + m)`, volume `pi^m / m!`;
/// * `QP^m`: `4l(l + 2m + 1)`, volume `pi^(2m) / (2m+1)!`.
///
/// `count` is the number of distinct eigenvalues returned.
pub fn projective_spectrum(field: Field, m: usize, count: usize) -> Result<Spectrum> {
    if m == 0 {
        return Err(Error::InvalidParameter("projective dimension m must be >= 1".into()));
    }
    if field == Field::Real && m < 2 {
        return Err(Error::InvalidParameter("RP^m requires m >= 2".into()));
    }
    check_count(count)?;
    let mu = m as u64;
    let overflow = |l: u64| Error::InvalidParameter(format!("multiplicity overflow at l = {l}"));
    let mut levels = Vec::with_capacity(count);
    for l in 0..count as u64 {
        let (value, mult) = match field {
            Field::Real => ((2 * l * (2 * l + mu - 1)) as f64, harmonic_dimension(mu + 1, 2 * l)?),
            Field::Complex => {
                let c = binomial(l + mu - 1, l).ok_or_else(|| overflow(l))? as u128;
                let num = c * c * (2 * l + mu) as u128;
                debug_assert_eq!(num % mu as u128, 0);
                let mult = u64::try_from(num / mu as u128).map_err(|_| overflow(l))?;
                ((4 * l * (l + mu)) as f64, mult)
            }
            Field::Quaternion => {
                let a = binomial(l + 2 * mu, l).ok_or_else(|| overflow(l))? as u128;
                let b = binomial(l + 2 * mu - 1, l).ok_or_else(|| overflow(l))? as u128;
                let num = (2 * l + 2 * mu + 1) as u128 * a * b;
                let den = (2 * mu + 1) as u128 * (l + 1) as u128;
                debug_assert_eq!(num % den, 0);
                let mult = u64::try_from(num / den).map_err(|_| overflow(l))?;
                ((4 * l * (l + 2 * mu + 1)) as f64, mult)
            }
        };
        levels.push(Level::new(value, mult));
    }
    let dim = m * field.real_dimension();
    let volume = match field {
        Field::Real => unit_sphere_volume(m) / 2.0,
        Field::Complex => PI.powi(m as i32) / gamma(m as f64 + 1.0),
        Field::Quaternion => PI.powi(2 * m as i32) / gamma(2.0 * m as f64 + 2.0),
    };
    let label = format!("projective({}P^{m}; {PROJECTIVE_NORMALIZATION})", field.symbol());
    let domain = DomainSpec::new(dim, volume, label, DomainKind::ClosedManifold)?;
    Spectrum::complete(domain, levels, Problem::Closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn values(s: &Spectrum) -> Vec<(f64, u64)> {
        s.levels().iter().map(|l| (l.value, l.multiplicity)).collect()
    }

    #[test]
    fn square_box_first_six() {
        let s = box_spectrum(&[PI, PI], 6).unwrap();
        let got: Vec<(f64, u64)> = values(&s);
        let want = [(2.0, 1), (5.0, 2), (8.0, 1), (10.0, 2)];
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert_relative_eq!(g.0, w.0, max_relative = 1e-14);
            assert_eq!(g.1, w.1);
        }
        assert_eq!(s.complete_count(), 6);
        assert_relative_eq!(s.domain().volume(), PI * PI, max_relative = 1e-15);
    }

    #[test]
    fn interval_and_unit_square() {
        let s = box_spectrum(&[PI], 3).unwrap();
        let e = s.prefix(3).unwrap();
        assert_relative_eq!(e[0], 1.0, max_relative = 1e-14);
        assert_relative_eq!(e[1], 4.0, max_relative = 1e-14);
        assert_relative_eq!(e[2], 9.0, max_relative = 1e-14);
        let u = box_spectrum(&[1.0, 1.0], 1).unwrap();
        assert_relative_eq!(u.eigenvalue(1).unwrap(), 2.0 * PI * PI, max_relative = 1e-14);
    }

    #[test]
    fn unequal_box_groups_symmetric_values() {
        // [1, 2]: pi^2 (a^2 + b^2/4); (a, b) = (1, 4) and (2, 2) both give 5 pi^2
        let s = box_spectrum(&[1.0, 2.0], 30).unwrap();
        let target = 5.0 * PI * PI;
        let level = s
            .levels()
            .iter()
            .find(|l| (l.value - target).abs() < 1e-9 * target)
            .unwrap();
        assert_eq!(level.multiplicity, 2);
    }

    #[test]
    fn box_errors() {
        assert!(box_spectrum(&[PI, 0.0], 3).is_err());
        assert!(box_spectrum(&[PI, -1.0], 3).is_err());
        assert!(box_spectrum(&[PI], 0).is_err());
        assert!(box_spectrum(&[], 3).is_err());
        assert!(matches!(
            box_spectrum_with_budget(&[PI, PI], 1000, 100),
            Err(Error::EnumerationBudget { .. })
        ));
    }

    #[test]
    fn disk_first_levels() {
        let s = ball_spectrum(2, 1.0, 2).unwrap();
        let e = s.prefix(3).unwrap();
        assert_eq!(s.complete_count(), 3);
        assert_relative_eq!(e[0], 2.404825557695773f64.powi(2), max_relative = 1e-12);
        assert_relative_eq!(e[1], 3.831705970207512f64.powi(2), max_relative = 1e-12);
        assert_eq!(e[1], e[2]);
        let big = ball_spectrum(2, 2.0, 1).unwrap();
        assert_relative_eq!(big.eigenvalue(1).unwrap(), e[0] / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn three_ball_ground_state_is_pi_squared() {
        let s = ball_spectrum(3, 1.0, 1).unwrap();
        assert_relative_eq!(s.eigenvalue(1).unwrap(), PI * PI, max_relative = 1e-12);
        assert_relative_eq!(s.domain().volume(), 4.0 * PI / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn ball_errors() {
        assert!(ball_spectrum(1, 1.0, 3).is_err());
        assert!(ball_spectrum(2, 0.0, 3).is_err());
        assert!(ball_spectrum(2, 1.0, 0).is_err());
    }

    #[test]
    fn sphere_levels() {
        assert_eq!(
            values(&sphere_spectrum(2, 4).unwrap()),
            vec![(0.0, 1), (2.0, 3), (6.0, 5), (12.0, 7)]
        );
        assert_eq!(
            values(&sphere_spectrum(1, 3).unwrap()),
            vec![(0.0, 1), (1.0, 2), (4.0, 2)]
        );
        assert_eq!(sphere_spectrum(3, 2).unwrap().levels()[1].multiplicity, 4);
        assert!(sphere_spectrum(0, 2).is_err());
    }

    #[test]
    fn projective_low_dimensional_isometries() {
        // CP^1 = S^2(1/2), QP^1 = S^4(1/2): eigenvalues scale by 4
        for (field, sphere_dim) in [(Field::Complex, 2), (Field::Quaternion, 4)] {
            let p = projective_spectrum(field, 1, 12).unwrap();
            let s = sphere_spectrum(sphere_dim, 12).unwrap();
            for (a, b) in p.levels().iter().zip(s.levels()) {
                assert_eq!(a.value, 4.0 * b.value);
                assert_eq!(a.multiplicity, b.multiplicity);
            }
            let r = 0.5f64;
            assert_relative_eq!(
                p.domain().volume(),
                s.domain().volume() * r.powi(sphere_dim as i32),
                max_relative = 1e-14
            );
        }
        // RP^2: even-degree harmonics on S^2
        let p = projective_spectrum(Field::Real, 2, 10).unwrap();
        let s = sphere_spectrum(2, 20).unwrap();
        for (l, level) in p.levels().iter().enumerate() {
            assert_eq!(*level, s.levels()[2 * l]);
        }
        let e = projective_spectrum(Field::Complex, 1, 3).unwrap();
        assert_eq!(
            e.levels().iter().map(|l| l.value).collect::<Vec<_>>(),
            vec![0.0, 8.0, 24.0]
        );
        let q = projective_spectrum(Field::Quaternion, 1, 2).unwrap();
        assert_eq!(q.levels()[1].value, 16.0);
    }

    #[test]
    fn projective_first_eigenspace_matches_standard_embedding() {
        // first eigenspace = traceless Hermitian (m+1)x(m+1) matrices over F
        for m in 2..6usize {
            let herm = |d: usize| (m + 1) + d * m * (m + 1) / 2 - 1;
            assert_eq!(
                projective_spectrum(Field::Complex, m, 2).unwrap().levels()[1].multiplicity as usize,
                herm(2)
            );
            assert_eq!(
                projective_spectrum(Field::Quaternion, m, 2).unwrap().levels()[1].multiplicity as usize,
                herm(4)
            );
            assert_eq!(
                projective_spectrum(Field::Real, m, 2).unwrap().levels()[1].multiplicity as usize,
                herm(1)
            );
        }
    }

    #[test]
    fn projective_volumes_follow_weyl_law() {
        // N(lambda) / (L_{0,n} vol lambda^{n/2}) -> 1 pins the volume normalisation
        for (field, m) in [
            (Field::Real, 2),
            (Field::Real, 3),
            (Field::Complex, 2),
            (Field::Complex, 3),
            (Field::Quaternion, 2),
        ] {
            let s = projective_spectrum(field, m, 200).unwrap();
            let n = s.dimension();
            let top = s.certified_limit();
            let count = s.total_multiplicity() as f64;
            let weyl = crate::numerics::classical_constant(0.0, n) * s.domain().volume() * top.powf(n as f64 / 2.0);
            assert!((count / weyl - 1.0).abs() < 0.05, "{field:?} m={m}: {}", count / weyl);
        }
    }

    #[test]
    fn projective_errors() {
        assert!(projective_spectrum(Field::Real, 1, 3).is_err());
        assert!(projective_spectrum(Field::Complex, 0, 3).is_err());
        assert!(Field::parse("X").is_none());
    }
}
