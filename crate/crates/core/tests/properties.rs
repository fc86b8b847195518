use std::f64::consts::TAU;

use discgrowth::disc_zeros::{
    box_count_nu, carleson_sum, carleson_sup, counting_n, nu_max, CarlesonSquare, DiscPoint,
    ZeroSequence,
};
use discgrowth::products::{blaschke_log, exceptional_discs, kernel_K};
use num_complex::Complex64;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = DiscPoint> {
    (1e-4f64..0.999, 0.0..TAU).prop_map(|(depth, t)| DiscPoint::from_polar(1.0 - depth, t).unwrap())
}

fn sequence(max: usize) -> impl Strategy<Value = ZeroSequence> {
    prop::collection::vec(point(), 1..max).prop_map(ZeroSequence::explicit)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counting_is_monotone(zs in sequence(60), a in 0.0f64..0.999, b in 0.0f64..0.999) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(counting_n(&zs, lo).unwrap() <= counting_n(&zs, hi).unwrap());
    }

    #[test]
    fn carleson_sum_grows_with_delta(
        zs in sequence(60),
        phi in 0.0..TAU,
        d1 in 1e-3f64..1.0,
        d2 in 1e-3f64..1.0,
        s in 0u32..3,
    ) {
        let (small, large) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let a = carleson_sum(&zs, &CarlesonSquare::new(phi, small).unwrap(), s);
        let b = carleson_sum(&zs, &CarlesonSquare::new(phi, large).unwrap(), s);
        prop_assert!(a <= b * (1.0 + 1e-14));
    }

    #[test]
    fn unit_square_holds_everything(zs in sequence(60), phi in 0.0..TAU, s in 0u32..3) {
        let total: f64 = zs.depths().iter().map(|d| d.powi(s as i32 + 1)).sum();
        let got = carleson_sum(&zs, &CarlesonSquare::new(phi, 1.0).unwrap(), s);
        prop_assert!((got - total).abs() <= 1e-13 * total);
    }

    #[test]
    fn carleson_sup_dominates_dense_scan(zs in sequence(40), delta in 0.01f64..0.5) {
        let (phi, sup) = carleson_sup(&zs, delta, 0).unwrap();
        let again = carleson_sum(&zs, &CarlesonSquare::new(phi, delta).unwrap(), 0);
        prop_assert!((again - sup).abs() <= 1e-14 * sup.max(1e-300));
        let mut brute: f64 = 0.0;
        for k in 0..10_000 {
            let sq = CarlesonSquare::new(TAU * k as f64 / 1e4, delta).unwrap();
            brute = brute.max(carleson_sum(&zs, &sq, 0));
        }
        prop_assert!(brute <= sup * (1.0 + 1e-14));
    }

    #[test]
    fn box_count_below_its_maximum(zs in sequence(60), r in 0.0f64..0.99, phi in 0.0..TAU) {
        let best = nu_max(&zs, r).unwrap();
        prop_assert!(box_count_nu(&zs, r, phi).unwrap() <= best);
        let brute = (0..10_000)
            .map(|k| box_count_nu(&zs, r, TAU * k as f64 / 1e4).unwrap())
            .max()
            .unwrap();
        prop_assert!(brute <= best);
    }

    #[test]
    fn kernel_is_nonnegative(z in point(), zeta in point()) {
        prop_assume!(z != zeta);
        prop_assert!(kernel_K(z, zeta.to_complex()).unwrap() >= 0.0);
    }

    #[test]
    fn blaschke_products_are_bounded_by_one(zs in sequence(30), z in point()) {
        let v = blaschke_log(z, &zs, 1.0).unwrap().value;
        prop_assert!(v <= 0.0);
    }

    #[test]
    fn exceptional_discs_cover_their_zeros(zs in sequence(30), s in 0u32..3) {
        let discs = exceptional_discs(&zs, s);
        prop_assert_eq!(discs.len(), zs.len());
        for (d, p) in discs.iter().zip(zs.points()) {
            let m = p.modulus();
            let one_minus_sq = (1.0 - m) * (1.0 + m);
            let expected = one_minus_sq.powi(s as i32 + 4);
            // rounding of |z| alone moves 1-|z|² by a few ulp of 1
            let slack = 1e-12 + f64::from(s + 4) * 4.0 * f64::EPSILON / one_minus_sq;
            prop_assert!((d.radius - expected).abs() <= slack * expected);
            prop_assert!(d.contains(*p));
            prop_assert!(d.meets_circle(p.modulus()));
            let outside = p.to_complex() + Complex64::new(2.0 * d.radius, 0.0);
            // below an ulp of |z| the shift rounds away
            if outside.norm() < 1.0 && (outside - p.to_complex()).norm() > d.radius {
                prop_assert!(!d.contains(DiscPoint::new(outside.re, outside.im).unwrap()));
            }
        }
    }
}
