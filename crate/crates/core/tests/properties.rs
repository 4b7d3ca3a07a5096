use cone_walls::arith::ratio;
use cone_walls::cones::{
    enumerate_walls, exists_positive_decomposition, exists_spherical_obstruction, movable_boundary,
    validate_wall,
};
use cone_walls::lattice::{hilbert_classes, wall_ray_from_class, OrthogonalRay};
use cone_walls::nested::{
    eps_inf, is_nagata_submaximal, mds_obstructed, nagata_value_compare, MdsVerdict,
    NagataComparison, NestedSurface,
};
use cone_walls::pell::{pell_solutions, solve_two_term};
use cone_walls::seshadri::{
    best_bound, bound_at_n, bound_k3, check_observation, known_epsilon, ObservationVerdict,
    SurfaceSpec,
};
use cone_walls::MukaiVector;
use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use proptest::prelude::*;

fn vec3() -> impl Strategy<Value = MukaiVector> {
    (-1000i64..1000, -1000i64..1000, -1000i64..1000).prop_map(|(r, m, s)| MukaiVector::new(r, m, s))
}

fn lt_sqrt(q: &BigRational, h2: u64) -> bool {
    q.numer() * q.numer() < BigInt::from(h2) * q.denom() * q.denom()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pairing_symmetric(a in vec3(), b in vec3(), d in 1u64..500) {
        prop_assert_eq!(a.pairing(&b, d), b.pairing(&a, d));
    }

    #[test]
    fn pairing_bilinear(a in vec3(), b in vec3(), c in vec3(), k in -50i64..50, d in 1u64..500) {
        let lhs = (&a.scale(k) + &b).pairing(&c, d);
        let rhs = BigInt::from(k) * a.pairing(&c, d) + b.pairing(&c, d);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wall_ray_sign_invariant_and_orthogonal(a in vec3(), n in 2u64..10, d in 1u64..100) {
        let ray = wall_ray_from_class(&a, n, d).unwrap();
        prop_assert_eq!(&ray, &wall_ray_from_class(&-a.clone(), n, d).unwrap());
        if let OrthogonalRay::Ray(r) = ray {
            prop_assert_eq!(r.to_mukai(n).pairing(&a, d), BigInt::from(0));
            prop_assert_eq!(r.to_mukai(n).pairing(&hilbert_classes(n).unwrap().v, d), BigInt::from(0));
        }
    }

    #[test]
    fn mu_squared_at_most_ratio(n in 2u64..12, d in 1u64..400) {
        let mu = movable_boundary(n, d).unwrap().mu;
        prop_assert!(&mu * &mu <= ratio(d, n - 1));
    }

    #[test]
    fn bound_below_sqrt(h2 in 1u64..100_000, extra in 0u64..500) {
        let mut n = h2.sqrt();
        while n * n + n < h2 {
            n += 1;
        }
        let v = bound_at_n(h2, 0, n + extra).unwrap();
        prop_assert!(lt_sqrt(&v, h2));
    }

    #[test]
    fn submaximal_permutation_invariant(ch in 1u64..200, mut mults in prop::collection::vec(1u64..20, 1..12), h2 in 1u64..100, seed in any::<u64>()) {
        let before = is_nagata_submaximal(ch, &mults, h2).unwrap();
        let len = mults.len();
        mults.rotate_left((seed as usize) % len);
        mults.reverse();
        prop_assert_eq!(before, is_nagata_submaximal(ch, &mults, h2).unwrap());
    }

    #[test]
    fn two_term_solutions_verify(a in 1u64..200, b in 1u64..200) {
        if let Some(s) = solve_two_term(a, b).unwrap() {
            let (x, y) = (s.x(), s.y());
            prop_assert_eq!(BigInt::from(a) * x * x - BigInt::from(b) * y * y, BigInt::from(1));
        }
    }

    #[test]
    fn best_bound_dominates_k3(half in 1u64..5000) {
        let h2 = 2 * half;
        prop_assert!(best_bound(h2, 0).unwrap().value >= bound_k3(h2).unwrap().value);
    }
}

#[test]
fn pell_powers_increase() {
    for d in (2u64..300).filter(|d| d.sqrt().pow(2) != *d) {
        let sols = pell_solutions(d, 6).unwrap();
        for w in sols.windows(2) {
            assert!(w[1].x() > w[0].x());
            // y/x increases towards 1/√D
            assert!(w[1].y() * w[0].x() > w[0].y() * w[1].x());
        }
    }
}

#[test]
fn plane_eps_inf_times_r_is_one() {
    for r in 2..=1000u64 {
        let e = eps_inf(&NestedSurface::ProjectivePlane, r).unwrap();
        assert_eq!(e * BigRational::from_integer(r.into()), ratio(1, 1));
    }
}

#[test]
fn k3_eps_inf_below_nagata() {
    for h2 in (2..=40u64).step_by(2) {
        let k3 = NestedSurface::k3(h2).unwrap();
        for r in k3.min_r()..=100 {
            let e = eps_inf(&k3, r).unwrap();
            assert_eq!(
                nagata_value_compare(h2, r, &e).unwrap(),
                NagataComparison::Below
            );
        }
    }
}

#[test]
fn mds_not_obstructed_exactly_on_squares() {
    for h2 in 1..=60u64 {
        for r in 1..=60u64 {
            let square = (h2 * r).sqrt().pow(2) == h2 * r;
            let v = mds_obstructed(h2, r, false).unwrap().verdict;
            assert_eq!(v == MdsVerdict::NotObstructed, square, "H2={h2} r={r}");
        }
    }
}

#[test]
fn known_epsilon_at_most_sqrt() {
    for h2 in (2..=2000u64).step_by(2) {
        let rec = known_epsilon(&SurfaceSpec::k3(h2).unwrap(), None).unwrap();
        if let Some(e) = rec.value {
            assert!(&e * &e <= BigRational::from_integer(h2.into()), "H2={h2}");
        }
    }
}

#[test]
fn observation_hits_for_known_degrees() {
    let even_squares = (2..=20u64).map(|a| a * a).filter(|h| h % 2 == 0);
    for h2 in [2u64, 4, 6, 8].into_iter().chain(even_squares) {
        let v = check_observation(h2).unwrap().verdict;
        assert!(
            matches!(
                v,
                ObservationVerdict::OnBoundary | ObservationVerdict::OnInteriorWall
            ),
            "H2={h2}: {v}"
        );
    }
}

#[test]
fn square_degrees_have_no_flops() {
    for a in (4..=20u64).step_by(2) {
        let d = a * a / 2;
        assert!(
            enumerate_walls(3, d, None).unwrap().walls.is_empty(),
            "H2={}",
            a * a
        );
        assert!(exists_spherical_obstruction(3, d).unwrap().is_none());
        assert!(exists_positive_decomposition(3, d).unwrap().is_none());
    }
}

#[test]
fn walls_come_from_flop_obstructions() {
    for n in 2..=4u64 {
        for d in 1..=30u64 {
            let set = enumerate_walls(n, d, None).unwrap();
            for w in &set.walls {
                assert!(validate_wall(w, n, d).unwrap(), "n={n} d={d} {}", w.witness);
            }
            if !set.walls.is_empty() {
                let sph = exists_spherical_obstruction(n, d).unwrap();
                let dec = exists_positive_decomposition(n, d).unwrap();
                assert!(sph.is_some() || dec.is_some(), "n={n} d={d}");
            }
        }
    }
}
