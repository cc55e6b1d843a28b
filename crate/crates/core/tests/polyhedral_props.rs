mod common;

use crn_toric::polyhedral::{
    convex_hull_volume, enumerate_mixed_cells, minkowski_sum, mixed_volume_cells, mixed_volume_ie,
    PointConfiguration, Polytope,
};
use crn_toric::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_force_volume, q, to_rational_points, torus_root_lower_bound, Bipoly};

fn random_config(rng: &mut impl Rng, dim: usize, max_points: usize, bound: i64) -> PointConfiguration {
    let n = rng.random_range(1..=max_points);
    let points = (0..n).map(|_| (0..dim).map(|_| rng.random_range(0..=bound)).collect()).collect();
    PointConfiguration::new(points).unwrap()
}

#[test]
fn hull_volume_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..120 {
        let dim = rng.random_range(1..=4);
        let c = random_config(&mut rng, dim, dim + 4, 3);
        let expected = brute_force_volume(&to_rational_points(c.points()));
        assert_eq!(convex_hull_volume(&c).unwrap(), expected, "sample {i}: {:?}", c.points());
    }
}

#[test]
fn hull_vertices_and_facets_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..60 {
        let c = random_config(&mut rng, 3, 9, 3);
        let p = Polytope::hull(&c).unwrap();
        // every vertex is one of the input points and the hull of the vertices is the same
        assert!(p.vertices.iter().all(|v| c.points().contains(v)));
        let again = PointConfiguration::new(p.vertices.clone()).unwrap();
        assert_eq!(convex_hull_volume(&again).unwrap(), p.volume);
    }
}

#[test]
fn soc3_minkowski_sum_volume() {
    // A1 + A2 + A3 for the 3-cycle, frozen from the brute-force oracle
    let a1 = PointConfiguration::new(vec![vec![0, 1, 1], vec![1, 1, 0]]).unwrap();
    let a2 = PointConfiguration::new(vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
    let a3 = PointConfiguration::new(vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let sum = minkowski_sum(&minkowski_sum(&a1, &a2).unwrap(), &a3).unwrap();
    let oracle = brute_force_volume(&to_rational_points(&common::pointwise_sum(
        &common::pointwise_sum(a1.points(), a2.points()),
        a3.points(),
    )));
    assert_eq!(oracle, q(13) / q(6));
    assert_eq!(convex_hull_volume(&sum).unwrap(), oracle);
    assert_eq!(mixed_volume_ie(&[a1, a2, a3]).unwrap(), q(1));
}

#[test]
fn inclusion_exclusion_matches_cells() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for i in 0..110 {
        let r = rng.random_range(1..=5);
        let bound = if r >= 4 { 2 } else { 3 };
        let configs: Vec<_> = (0..r).map(|_| random_config(&mut rng, r, 4, bound)).collect();
        let ie = mixed_volume_ie(&configs).unwrap();
        let cells = mixed_volume_cells(&configs, i).unwrap();
        assert_eq!(ie, cells, "sample {i}: {:?}", configs.iter().map(|c| c.points()).collect::<Vec<_>>());
    }
}

#[test]
fn mixed_volume_of_equal_polytopes_is_normalized_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..30 {
        let r = rng.random_range(1..=3);
        let c = random_config(&mut rng, r, 6, 3);
        let factorial: i64 = (1..=r as i64).product();
        let configs = vec![c.clone(); r];
        assert_eq!(mixed_volume_ie(&configs).unwrap(), convex_hull_volume(&c).unwrap() * q(factorial));
    }
}

#[test]
fn translation_symmetry_and_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for i in 0..40 {
        let r = rng.random_range(2..=3);
        let configs: Vec<_> = (0..r).map(|_| random_config(&mut rng, r, 4, 3)).collect();
        let base = mixed_volume_ie(&configs).unwrap();

        let shifted: Vec<_> = configs
            .iter()
            .map(|c| c.translate(&(0..r).map(|_| rng.random_range(-3..=3)).collect::<Vec<_>>()).unwrap())
            .collect();
        assert_eq!(mixed_volume_ie(&shifted).unwrap(), base, "translation, sample {i}");

        let mut swapped = configs.clone();
        swapped.reverse();
        assert_eq!(mixed_volume_ie(&swapped).unwrap(), base, "symmetry, sample {i}");

        let mut grown = configs.clone();
        let mut extra = grown[0].points().to_vec();
        extra.push((0..r).map(|_| rng.random_range(0..=4)).collect());
        grown[0] = PointConfiguration::new(extra).unwrap();
        assert!(mixed_volume_ie(&grown).unwrap() >= base, "monotonicity, sample {i}");
    }
}

#[test]
fn root_counts_never_exceed_the_mixed_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 25 && attempts < 500 {
        attempts += 1;
        let mut poly = || -> Bipoly {
            let n = rng.random_range(2..=4);
            (0..n)
                .map(|_| {
                    let c = rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
                    (c, [rng.random_range(0..=3), rng.random_range(0..=3)])
                })
                .collect()
        };
        let (f, g) = (poly(), poly());
        let config = |p: &Bipoly| PointConfiguration::new(p.iter().map(|(_, e)| e.to_vec()).collect()).unwrap();
        let mv = mixed_volume_ie(&[config(&f), config(&g)]).unwrap();
        let Some(roots) = torus_root_lower_bound(&f, &g) else {
            continue;
        };
        assert!(q(roots as i64) <= mv, "f = {f:?}, g = {g:?}: {roots} roots, MV {mv}");
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} usable samples");
}

#[test]
fn univariate_count_is_exact() {
    // one-variable systems: MV is the width of the support
    let f = [(1, 1), (-3, 2), (2, 3)]; // x(1 - 3x + 2x^2) has torus roots 1 and 1/2
    assert_eq!(common::univariate_torus_roots(&f), 2);
    let c = PointConfiguration::new(vec![vec![1], vec![2], vec![3]]).unwrap();
    assert_eq!(mixed_volume_ie(&[c]).unwrap(), q(2));
}

#[test]
fn capability_and_dimension_errors() {
    let p = |d: usize| PointConfiguration::new(vec![vec![0; d], vec![1; d]]).unwrap();
    assert!(matches!(mixed_volume_ie(&vec![p(7); 7]), Err(Error::Capability(_))));
    assert!(matches!(enumerate_mixed_cells(&vec![p(9); 9], 0), Err(Error::Capability(_))));
    assert!(matches!(mixed_volume_ie(&[p(2), p(3)]), Err(Error::Dimension(_))));
    assert!(matches!(PointConfiguration::new(Vec::new()), Err(Error::Contract(_))));
}
