use eigenbounds::report::{is_satisfied, Argument, BoundId, BoundReport, Status};
use eigenbounds::spectra::box_spectrum;
use eigenbounds::universal_bounds::{yang1_check, Ambient, ShiftContext};
use proptest::prelude::*;
use std::f64::consts::PI;

fn brute_box(lengths: &[f64], cutoff: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut idx = vec![1u64; lengths.len()];
    let max: Vec<u64> = lengths
        .iter()
        .map(|l| (cutoff.sqrt() * l / PI).floor() as u64 + 1)
        .collect();
    loop {
        let v: f64 = idx.iter().zip(lengths).map(|(&m, l)| (PI * m as f64 / l).powi(2)).sum();
        if v <= cutoff {
            out.push(v);
        }
        let mut d = 0;
        loop {
            if d == idx.len() {
                out.sort_by(|a, b| a.total_cmp(b));
                return out;
            }
            idx[d] += 1;
            if idx[d] <= max[d] {
                break;
            }
            idx[d] = 1;
            d += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn box_eigenvalues_scale_as_inverse_square(
        l1 in 0.5f64..3.0, l2 in 0.5f64..3.0, a in 0.2f64..5.0, count in 10usize..200,
    ) {
        let base = box_spectrum(&[l1, l2], count).unwrap();
        let scaled = box_spectrum(&[a * l1, a * l2], count).unwrap();
        let k = base.complete_count().min(scaled.complete_count());
        for (x, y) in base.prefix(k).unwrap().iter().zip(scaled.prefix(k).unwrap()) {
            prop_assert!((y * a * a - x).abs() <= 1e-12 * x);
        }
    }

    #[test]
    fn box_lattice_is_complete(
        lengths in prop::collection::vec(0.5f64..2.5, 1..=3), count in 5usize..300,
    ) {
        let s = box_spectrum(&lengths, count).unwrap();
        let k = s.complete_count();
        prop_assert!(k >= count);
        let cutoff = s.eigenvalue(k).unwrap();
        let brute = brute_box(&lengths, cutoff * (1.0 + 1e-12));
        let ours = s.prefix(k).unwrap();
        prop_assert_eq!(brute.len(), ours.len());
        for (b, o) in brute.iter().zip(&ours) {
            prop_assert!((b - o).abs() <= 1e-12 * b);
        }
    }

    #[test]
    fn shifted_yang_margin_grows_with_sigma(
        l1 in 0.5f64..3.0, l2 in 0.5f64..3.0, k in 1usize..150, h_lo in 0.0f64..2.0, dh in 0.0f64..2.0,
    ) {
        let s = box_spectrum(&[l1, l2], 200).unwrap();
        let lo = yang1_check(&s, k, &ShiftContext::new(h_lo, Ambient::Euclidean).unwrap()).unwrap();
        let hi = yang1_check(&s, k, &ShiftContext::new(h_lo + dh, Ambient::Euclidean).unwrap()).unwrap();
        prop_assert!(hi.margin >= lo.margin - 1e-9 * lo.rhs.abs().max(1.0));
    }

    #[test]
    fn satisfied_flag_follows_margin(lhs in -1e6f64..1e6, rhs in -1e6f64..1e6) {
        let r = BoundReport::new(BoundId::Yang1, Argument::K(1), lhs, rhs, Status::Theorem, String::new());
        prop_assert_eq!(r.margin, rhs - lhs);
        prop_assert_eq!(r.satisfied, r.margin >= -1e-9 * rhs.abs().max(1.0));
        prop_assert_eq!(r.satisfied, is_satisfied(r.margin, rhs));
    }
}

#[test]
fn counting_function_matches_brute_count() {
    use rand::{Rng, SeedableRng};
    let lengths = [1.0, 1.7];
    let s = box_spectrum(&lengths, 2000).unwrap();
    let limit = s.certified_limit();
    let brute = brute_box(&lengths, limit);
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..1000 {
        let z = rng.gen_range(0.0..limit);
        let expected = brute.partition_point(|&v| v <= z);
        assert_eq!(s.count_at_most(z), expected, "z = {z}");
    }
}
