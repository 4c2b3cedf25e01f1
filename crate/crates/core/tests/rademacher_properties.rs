use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbound_core::rademacher::{rademacher_moment_coords, Method, NormedSpace, RandomConfig};

fn random_vectors(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()).collect()
}

fn refs(xs: &[Vec<f64>]) -> Vec<&[f64]> {
    xs.iter().map(|v| v.as_slice()).collect()
}

fn random_space(rng: &mut ChaCha8Rng, dim: usize) -> NormedSpace<f64> {
    let exps = [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY];
    NormedSpace::new(dim, exps[rng.random_range(0..exps.len())]).unwrap()
}

#[test]
fn kahane_khinchine_ordering_and_comparability() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let cfg = RandomConfig::default();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=12);
        let dim = rng.random_range(1..=4);
        let space = random_space(&mut rng, dim);
        let xs = random_vectors(&mut rng, n, dim);
        let (p, q) = {
            let a: f64 = rng.random_range(1.0..6.0);
            let b: f64 = rng.random_range(1.0..6.0);
            (a.min(b), a.max(b))
        };
        let mp = rademacher_moment_coords(&space, &refs(&xs), p, &cfg).unwrap().value;
        let mq = rademacher_moment_coords(&space, &refs(&xs), q, &cfg).unwrap().value;
        assert!(mp <= mq * (1.0 + 1e-12) + 1e-300, "p={p} q={q}: {mp} > {mq}");
        if mp > 0.0 {
            worst = worst.max(mq / mp);
        }
    }
    assert!(worst < 4.0, "moment ratio {worst}");
}

#[test]
fn contraction_principle_real_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let cfg = RandomConfig::default();
    for _ in 0..1000 {
        let n = rng.random_range(1..=10);
        let dim = rng.random_range(1..=4);
        let space = random_space(&mut rng, dim);
        let xs = random_vectors(&mut rng, n, dim);
        let p: f64 = rng.random_range(1.0..4.0);
        let shrunk: Vec<Vec<f64>> = xs
            .iter()
            .map(|x| {
                let a: f64 = rng.random_range(-1.0..1.0);
                x.iter().map(|v| a * v).collect()
            })
            .collect();
        let full = rademacher_moment_coords(&space, &refs(&xs), p, &cfg).unwrap().value;
        let small = rademacher_moment_coords(&space, &refs(&shrunk), p, &cfg).unwrap().value;
        assert!(small <= full + 1e-12, "{small} > {full}");
    }
}

#[test]
fn euclidean_second_moment_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let cfg = RandomConfig::default();
    for _ in 0..200 {
        let n = rng.random_range(1..=12);
        let dim = rng.random_range(1..=5);
        let weights: Vec<f64> = (0..dim).map(|_| rng.random_range(0.2..3.0)).collect();
        let space = NormedSpace::weighted(2.0, weights).unwrap();
        let xs = random_vectors(&mut rng, n, dim);
        let m = rademacher_moment_coords(&space, &refs(&xs), 2.0, &cfg).unwrap().value;
        let s: f64 = xs.iter().map(|x| space.norm(x).powi(2)).sum();
        assert!((m * m - s).abs() <= 1e-12 * s.max(1.0));
    }
}

#[test]
fn monte_carlo_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let trials = 200;
    let mut hits = 0;
    for t in 0..trials {
        let n = rng.random_range(2..=10);
        let dim = rng.random_range(1..=3);
        let space = random_space(&mut rng, dim);
        let xs = random_vectors(&mut rng, n, dim);
        let exact = rademacher_moment_coords(&space, &refs(&xs), 1.5, &RandomConfig::default()).unwrap();
        let mc_cfg = RandomConfig { seed: t, samples: 4000, exact_threshold: 0 };
        let mc = rademacher_moment_coords(&space, &refs(&xs), 1.5, &mc_cfg).unwrap();
        assert_eq!((exact.method, mc.method), (Method::Exact, Method::MonteCarlo));
        if (mc.value - exact.value).abs() <= 4.0 * mc.stderr {
            hits += 1;
        }
    }
    assert!(hits as f64 >= 0.99 * trials as f64, "{hits}/{trials}");
}

#[test]
fn resync_keeps_long_enumerations_exact() {
    // 2^17 patterns of unit basis vectors in ℓ²: every norm² is exactly n
    let n = 18;
    let space = NormedSpace::hilbert(n).unwrap();
    let xs: Vec<Vec<f64>> = (0..n).map(|i| space.standard_basis(i)).collect();
    let m = rademacher_moment_coords(&space, &refs(&xs), 3.0, &RandomConfig::default()).unwrap();
    assert!((m.value - (n as f64).sqrt()).abs() < 1e-12);
}
